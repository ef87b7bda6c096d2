//! Regular-expression syntax trees over numbered alphabets.
//!
//! Expressions use union, concatenation and Kleene star only. The alphabet
//! is `{1, ..., n}`; symbols are positive integers. Sub-expressions are held
//! behind [`Arc`] so builders can share repeated sub-terms; every traversal in
//! this crate treats a shared child as if it were a distinct copy, so the
//! logical tree is what is measured, matched and rendered.

mod parse;
mod render;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

pub use parse::{parse, ParseError};
pub use render::{render, render_to, RenderError, RenderFormat};

/// A symbol of the alphabet `{1, ..., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Symbol(u32);

impl Symbol {
    /// Returns `None` for 0, which is not a symbol.
    pub fn new(id: u32) -> Option<Symbol> {
        (id >= 1).then_some(Symbol(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Regular expression syntax tree.
///
/// `Union` and `Concat` are binary; n-ary sums are left-leaning chains.
#[derive(Debug, Clone, Eq)]
pub enum Regex {
    EmptySet,
    Epsilon,
    Sym(Symbol),
    Union(Arc<Regex>, Arc<Regex>),
    Concat(Arc<Regex>, Arc<Regex>),
    Star(Arc<Regex>),
}

impl PartialEq for Regex {
    fn eq(&self, other: &Self) -> bool {
        fn same(a: &Arc<Regex>, b: &Arc<Regex>) -> bool {
            Arc::ptr_eq(a, b) || **a == **b
        }
        match (self, other) {
            (Regex::EmptySet, Regex::EmptySet) | (Regex::Epsilon, Regex::Epsilon) => true,
            (Regex::Sym(a), Regex::Sym(b)) => a == b,
            (Regex::Union(a1, b1), Regex::Union(a2, b2))
            | (Regex::Concat(a1, b1), Regex::Concat(a2, b2)) => same(a1, a2) && same(b1, b2),
            (Regex::Star(a), Regex::Star(b)) => same(a, b),
            _ => false,
        }
    }
}

// Iterative teardown: union chains of parsed text can be far deeper than the
// thread stack allows for recursive drops.
impl Drop for Regex {
    fn drop(&mut self) {
        fn placeholder() -> Arc<Regex> {
            static LEAF: OnceLock<Arc<Regex>> = OnceLock::new();
            LEAF.get_or_init(|| Arc::new(Regex::Epsilon)).clone()
        }
        fn detach(node: &mut Regex, out: &mut Vec<Arc<Regex>>) {
            match node {
                Regex::Union(a, b) | Regex::Concat(a, b) => {
                    out.push(std::mem::replace(a, placeholder()));
                    out.push(std::mem::replace(b, placeholder()));
                }
                Regex::Star(a) => out.push(std::mem::replace(a, placeholder())),
                Regex::EmptySet | Regex::Epsilon | Regex::Sym(_) => {}
            }
        }
        if matches!(self, Regex::EmptySet | Regex::Epsilon | Regex::Sym(_)) {
            return;
        }
        let mut pending = Vec::new();
        detach(self, &mut pending);
        while let Some(child) = pending.pop() {
            if let Ok(mut node) = Arc::try_unwrap(child) {
                detach(&mut node, &mut pending);
            }
        }
    }
}

impl Regex {
    /// Symbol leaf. Panics on id 0.
    pub fn sym(id: u32) -> Arc<Regex> {
        Arc::new(Regex::Sym(Symbol::new(id).expect("symbol ids start at 1")))
    }

    pub fn union(a: Arc<Regex>, b: Arc<Regex>) -> Arc<Regex> {
        Arc::new(Regex::Union(a, b))
    }

    pub fn concat(a: Arc<Regex>, b: Arc<Regex>) -> Arc<Regex> {
        Arc::new(Regex::Concat(a, b))
    }

    pub fn star(a: Arc<Regex>) -> Arc<Regex> {
        Arc::new(Regex::Star(a))
    }

    /// Left-leaning union of `terms`; `None` when empty.
    pub fn union_all(terms: impl IntoIterator<Item = Arc<Regex>>) -> Option<Arc<Regex>> {
        terms.into_iter().reduce(Regex::union)
    }

    /// Left-leaning concatenation of `factors`; `None` when empty.
    pub fn concat_all(factors: impl IntoIterator<Item = Arc<Regex>>) -> Option<Arc<Regex>> {
        factors.into_iter().reduce(Regex::concat)
    }

    pub(crate) fn children(&self) -> Children<'_> {
        match self {
            Regex::EmptySet | Regex::Epsilon | Regex::Sym(_) => Children::None,
            Regex::Star(a) => Children::One(a),
            Regex::Union(a, b) | Regex::Concat(a, b) => Children::Two(a, b),
        }
    }

    /// Binding strength used for parenthesization: union < concat < star < atom.
    pub(crate) fn binding(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(_) => 2,
            Regex::EmptySet | Regex::Epsilon | Regex::Sym(_) => 3,
        }
    }

    /// Largest symbol id occurring in the tree, or 0 if there is none.
    pub fn max_symbol(&self) -> u32 {
        fold_shared(self, |node, kids: &[u32]| match node {
            Regex::Sym(s) => s.id(),
            _ => kids.iter().copied().max().unwrap_or(0),
        })
    }

    pub fn is_star_free(&self) -> bool {
        fold_shared(self, |node, kids: &[bool]| {
            !matches!(node, Regex::Star(_)) && kids.iter().all(|&k| k)
        })
    }
}

pub(crate) enum Children<'a> {
    None,
    One(&'a Arc<Regex>),
    Two(&'a Arc<Regex>, &'a Arc<Regex>),
}

impl<'a> Children<'a> {
    fn as_vec(&self) -> Vec<&'a Regex> {
        match *self {
            Children::None => Vec::new(),
            Children::One(a) => vec![&**a],
            Children::Two(a, b) => vec![&**a, &**b],
        }
    }
}

/// Post-order fold that evaluates each distinct shared node once.
///
/// Runs on an explicit stack, so long union chains do not recurse.
pub(crate) fn fold_shared<T: Clone>(root: &Regex, mut f: impl FnMut(&Regex, &[T]) -> T) -> T {
    let mut memo: HashMap<*const Regex, T> = HashMap::new();
    let mut stack: Vec<(&Regex, bool)> = vec![(root, false)];
    while let Some((node, expanded)) = stack.pop() {
        let key = node as *const Regex;
        if memo.contains_key(&key) {
            continue;
        }
        let kids = node.children().as_vec();
        if expanded {
            let vals: Vec<T> = kids
                .iter()
                .map(|k| memo[&(*k as *const Regex)].clone())
                .collect();
            let v = f(node, &vals);
            memo.insert(key, v);
        } else {
            stack.push((node, true));
            for k in kids.into_iter().rev() {
                if !memo.contains_key(&(k as *const Regex)) {
                    stack.push((k, false));
                }
            }
        }
    }
    memo.remove(&(root as *const Regex))
        .expect("root evaluated")
}

/// Post-order fold over the logical tree: shared nodes are visited once per
/// occurrence, and leaves are visited left to right.
pub(crate) fn fold_tree<T>(root: &Regex, mut f: impl FnMut(&Regex, Vec<T>) -> T) -> T {
    let mut values: Vec<T> = Vec::new();
    let mut stack: Vec<(&Regex, bool)> = vec![(root, false)];
    while let Some((node, expanded)) = stack.pop() {
        let kids = node.children().as_vec();
        if expanded {
            let args = values.split_off(values.len() - kids.len());
            values.push(f(node, args));
        } else {
            stack.push((node, true));
            for k in kids.into_iter().rev() {
                stack.push((k, false));
            }
        }
    }
    values.pop().expect("root evaluated")
}

/// Size measures of an expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegexMetrics {
    /// Occurrences of alphabet symbols; operators and parentheses are free.
    #[serde(with = "crate::bigser")]
    pub alphabetic_length: BigUint,
    #[serde(with = "crate::bigser")]
    pub node_count: BigUint,
    pub height: u64,
}

/// Number of symbol leaves in the logical tree.
pub fn alphabetic_length(expr: &Regex) -> BigUint {
    fold_shared(expr, |node, kids: &[BigUint]| match node {
        Regex::Sym(_) => BigUint::one(),
        _ => kids.iter().fold(BigUint::zero(), |acc, k| acc + k),
    })
}

pub fn metrics(expr: &Regex) -> RegexMetrics {
    let (alphabetic_length, node_count, height) =
        fold_shared(expr, |node, kids: &[(BigUint, BigUint, u64)]| {
            let leaf = BigUint::from(matches!(node, Regex::Sym(_)) as u8);
            kids.iter()
                .fold((leaf, BigUint::one(), 0), |(l, c, h), (kl, kc, kh)| {
                    (l + kl, c + kc, h.max(kh + 1))
                })
        });
    RegexMetrics {
        alphabetic_length,
        node_count,
        height,
    }
}
