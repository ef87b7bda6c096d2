//! Language certification by position automata.
//!
//! An expression is compiled to its Glushkov automaton (one state per symbol
//! occurrence) and simulated on every word of length at most `n` over the
//! alphabet `{1, ..., n}`. Together with a structural check that the
//! expression only denotes words of length exactly `n`, this decides whether
//! the language is the set of permutations of the alphabet.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::length::factorial;
use crate::regex::{fold_shared, fold_tree, Regex, Symbol};

pub const DEFAULT_EXHAUSTIVE_CAP: u32 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("exhaustive check over {n}^{n} words exceeds the cap n <= {cap}")]
    CapExceeded { n: u32, cap: u32 },
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
}

/// A word over the numbered alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Symbol>);

impl FromStr for Word {
    type Err = String;

    /// Parses digit strings such as `231`; each digit is one symbol.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .and_then(Symbol::new)
                    .ok_or_else(|| format!("`{c}` is not a symbol"))
            })
            .collect::<Result<_, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Glushkov position automaton.
///
/// State `p` stands for "the `p`-th symbol occurrence was just read"; an
/// implicit start state precedes all positions.
#[derive(Debug, Clone)]
pub struct PositionNfa {
    positions: Vec<Symbol>,
    first: Vec<u32>,
    last: Vec<u32>,
    follow: Vec<Vec<u32>>,
    accepts_epsilon: bool,
    alphabet: u32,
    // follow lists bucketed by target symbol: entries of position p for
    // symbol a live in targets[offsets[p * alphabet + a - 1]..offsets[... + 1]]
    offsets: Vec<u32>,
    targets: Vec<u32>,
    first_by_symbol: Vec<Vec<u32>>,
    last_set: FixedBitSet,
}

struct Partial {
    first: Vec<u32>,
    last: Vec<u32>,
    nullable: bool,
}

/// Builds the position automaton of `expr`.
pub fn glushkov(expr: &Regex) -> PositionNfa {
    let mut positions: Vec<Symbol> = Vec::new();
    let mut follow: Vec<Vec<u32>> = Vec::new();
    let root = fold_tree(expr, |node, kids: Vec<Partial>| match node {
        Regex::EmptySet => Partial {
            first: vec![],
            last: vec![],
            nullable: false,
        },
        Regex::Epsilon => Partial {
            first: vec![],
            last: vec![],
            nullable: true,
        },
        Regex::Sym(s) => {
            let p = positions.len() as u32;
            positions.push(*s);
            follow.push(Vec::new());
            Partial {
                first: vec![p],
                last: vec![p],
                nullable: false,
            }
        }
        Regex::Union(..) => {
            let mut it = kids.into_iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            Partial {
                first: [a.first, b.first].concat(),
                last: [a.last, b.last].concat(),
                nullable: a.nullable || b.nullable,
            }
        }
        Regex::Concat(..) => {
            let mut it = kids.into_iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            for &p in &a.last {
                follow[p as usize].extend_from_slice(&b.first);
            }
            let first = if a.nullable {
                [a.first, b.first.clone()].concat()
            } else {
                a.first
            };
            let last = if b.nullable {
                [a.last, b.last].concat()
            } else {
                b.last
            };
            Partial {
                first,
                last,
                nullable: a.nullable && b.nullable,
            }
        }
        Regex::Star(..) => {
            let a = kids.into_iter().next().unwrap();
            for &p in &a.last {
                follow[p as usize].extend_from_slice(&a.first);
            }
            Partial {
                nullable: true,
                ..a
            }
        }
    });
    for f in &mut follow {
        f.sort_unstable();
        f.dedup();
    }
    PositionNfa::index(positions, root, follow)
}

impl PositionNfa {
    fn index(positions: Vec<Symbol>, root: Partial, follow: Vec<Vec<u32>>) -> Self {
        let alphabet = positions.iter().map(|s| s.id()).max().unwrap_or(0);
        let width = alphabet as usize;
        let mut offsets = Vec::with_capacity(positions.len() * width + 1);
        let mut targets = Vec::with_capacity(follow.iter().map(Vec::len).sum());
        offsets.push(0);
        for f in &follow {
            for a in 1..=alphabet {
                targets.extend(
                    f.iter()
                        .copied()
                        .filter(|&q| positions[q as usize].id() == a),
                );
                offsets.push(targets.len() as u32);
            }
        }
        let mut first_by_symbol = vec![Vec::new(); width];
        for &p in &root.first {
            first_by_symbol[positions[p as usize].id() as usize - 1].push(p);
        }
        let mut last_set = FixedBitSet::with_capacity(positions.len());
        for &p in &root.last {
            last_set.insert(p as usize);
        }
        PositionNfa {
            first: root.first,
            last: root.last,
            accepts_epsilon: root.nullable,
            positions,
            follow,
            alphabet,
            offsets,
            targets,
            first_by_symbol,
            last_set,
        }
    }

    pub fn position_count(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[Symbol] {
        &self.positions
    }

    pub fn first(&self) -> &[u32] {
        &self.first
    }

    pub fn last(&self) -> &[u32] {
        &self.last
    }

    pub fn follow(&self, p: u32) -> &[u32] {
        &self.follow[p as usize]
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.accepts_epsilon
    }

    fn targets(&self, p: usize, a: Symbol) -> &[u32] {
        let slot = p * self.alphabet as usize + a.id() as usize - 1;
        &self.targets[self.offsets[slot] as usize..self.offsets[slot + 1] as usize]
    }

    fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.positions.len())
    }

    /// Successor state set. `from` is `None` for the start state.
    fn step(&self, from: Option<&FixedBitSet>, a: Symbol, into: &mut FixedBitSet) {
        into.clear();
        if a.id() == 0 || a.id() > self.alphabet {
            return;
        }
        match from {
            None => {
                for &q in &self.first_by_symbol[a.id() as usize - 1] {
                    into.insert(q as usize);
                }
            }
            Some(cur) => {
                for p in cur.ones() {
                    for &q in self.targets(p, a) {
                        into.insert(q as usize);
                    }
                }
            }
        }
    }

    fn is_accepting(&self, state: Option<&FixedBitSet>) -> bool {
        match state {
            None => self.accepts_epsilon,
            Some(s) => !s.is_disjoint(&self.last_set),
        }
    }

    /// Membership test by state-set simulation.
    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut cur = self.empty_set();
        let mut next = self.empty_set();
        for (i, &a) in w.iter().enumerate() {
            self.step((i > 0).then_some(&cur), a, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        self.is_accepting((!w.is_empty()).then_some(&cur))
    }
}

/// Length shared by every word of `expr`, when there is one.
///
/// Requires a star-free expression without `&` whose unions have branches of
/// equal uniform length. `e` has uniform length 0.
pub fn uniform_length(expr: &Regex) -> Option<u64> {
    fold_shared(expr, |node, kids: &[Option<u64>]| match node {
        Regex::Sym(_) => Some(1),
        Regex::Epsilon => Some(0),
        Regex::EmptySet | Regex::Star(_) => None,
        Regex::Union(..) => match (kids[0], kids[1]) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        },
        Regex::Concat(..) => kids[0]?.checked_add(kids[1]?),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest `n` for which all `n^n` words are enumerated.
    pub exhaustive_cap: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
        }
    }
}

/// Outcome of [`language_equals_permutations`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: u32,
    /// Words of length exactly `n` that were simulated (`n^n`).
    pub words_tested: u64,
    /// Accepted words of length `n`.
    pub accepted: u64,
    pub passed: bool,
    pub permutations_accepted: u64,
    pub non_permutations_accepted: u64,
    /// Words of length `0..n` that were simulated.
    pub shorter_words_tested: u64,
    pub shorter_words_accepted: u64,
    pub position_count: u64,
    pub uniform_length: Option<u64>,
    pub symbols_in_range: bool,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    accepted: u64,
    perms_accepted: u64,
    non_perms_accepted: u64,
    shorter_tested: u64,
    shorter_accepted: u64,
    full_tested: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            accepted: self.accepted + o.accepted,
            perms_accepted: self.perms_accepted + o.perms_accepted,
            non_perms_accepted: self.non_perms_accepted + o.non_perms_accepted,
            shorter_tested: self.shorter_tested + o.shorter_tested,
            shorter_accepted: self.shorter_accepted + o.shorter_accepted,
            full_tested: self.full_tested + o.full_tested,
        }
    }
}

/// Depth-first enumeration of every word of length at most `n` below a
/// fixed prefix, reusing the state set of each prefix. Depth is bounded by
/// `n`, so plain recursion is fine.
struct Walker<'a> {
    nfa: &'a PositionNfa,
    n: usize,
    sets: Vec<FixedBitSet>,
    occurrences: Vec<u32>,
    repeats: u32,
    tally: Tally,
}

impl Walker<'_> {
    fn push(&mut self, depth: usize, a: u32) {
        let (lo, hi) = self.sets.split_at_mut(depth + 1);
        let from = (depth > 0).then_some(&lo[depth]);
        self.nfa
            .step(from, Symbol::new(a).expect("a >= 1"), &mut hi[0]);
        self.occurrences[a as usize] += 1;
        if self.occurrences[a as usize] > 1 {
            self.repeats += 1;
        }
    }

    fn pop(&mut self, a: u32) {
        if self.occurrences[a as usize] > 1 {
            self.repeats -= 1;
        }
        self.occurrences[a as usize] -= 1;
    }

    fn visit(&mut self, depth: usize) {
        let accepted = self
            .nfa
            .is_accepting((depth > 0).then_some(&self.sets[depth]));
        if depth == self.n {
            self.tally.full_tested += 1;
            if accepted {
                self.tally.accepted += 1;
                if self.repeats == 0 {
                    self.tally.perms_accepted += 1;
                } else {
                    self.tally.non_perms_accepted += 1;
                }
            }
            return;
        }
        self.tally.shorter_tested += 1;
        self.tally.shorter_accepted += accepted as u64;
        for a in 1..=self.n as u32 {
            self.push(depth, a);
            self.visit(depth + 1);
            self.pop(a);
        }
    }
}

fn walk(nfa: &PositionNfa, n: u32, first: u32) -> Tally {
    let n = n as usize;
    let mut w = Walker {
        nfa,
        n,
        sets: (0..=n).map(|_| nfa.empty_set()).collect(),
        occurrences: vec![0; n + 1],
        repeats: 0,
        tally: Tally::default(),
    };
    w.push(0, first);
    w.visit(1);
    w.tally
}

/// Decides whether `L(expr)` is exactly the set of permutations of `{1..n}`.
///
/// All `n^n` words of length `n`, and all shorter words, are simulated on the
/// position automaton. Longer words are excluded structurally through
/// [`uniform_length`], which the certificate requires to equal `n`.
pub fn language_equals_permutations(
    expr: &Regex,
    n: u32,
    cfg: &VerifyConfig,
) -> Result<Certificate, VerifyError> {
    if n == 0 {
        return Err(VerifyError::EmptyAlphabet);
    }
    if n > cfg.exhaustive_cap {
        return Err(VerifyError::CapExceeded {
            n,
            cap: cfg.exhaustive_cap,
        });
    }
    let uniform = uniform_length(expr);
    let symbols_in_range = expr.max_symbol() <= n;
    let nfa = glushkov(expr);

    // the empty word, then one partition per first symbol
    let root = Tally {
        shorter_tested: 1,
        shorter_accepted: nfa.accepts_epsilon as u64,
        ..Tally::default()
    };
    let tally = (1..=n)
        .into_par_iter()
        .map(|a| walk(&nfa, n, a))
        .reduce(Tally::default, Tally::merge)
        .merge(root);

    let perms = u64::try_from(factorial(n as u64)).unwrap_or(u64::MAX);
    let passed = symbols_in_range
        && uniform == Some(n as u64)
        && tally.accepted == perms
        && tally.perms_accepted == perms
        && tally.non_perms_accepted == 0
        && tally.shorter_accepted == 0;
    Ok(Certificate {
        n,
        words_tested: tally.full_tested,
        accepted: tally.accepted,
        passed,
        permutations_accepted: tally.perms_accepted,
        non_permutations_accepted: tally.non_perms_accepted,
        shorter_words_tested: tally.shorter_tested,
        shorter_words_accepted: tally.shorter_accepted,
        position_count: nfa.position_count() as u64,
        uniform_length: uniform,
        symbols_in_range,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{AlphabetSet, BuildConfig, Builder};
    use crate::regex::parse;

    fn w(s: &str) -> Vec<Symbol> {
        s.parse::<Word>().unwrap().0
    }

    fn r(n: u32) -> std::sync::Arc<Regex> {
        Builder::DivideAndConquer
            .build(&AlphabetSet::sigma(n).unwrap(), &BuildConfig::default())
            .unwrap()
    }

    #[test]
    fn single_symbol_automaton() {
        let nfa = glushkov(&Regex::sym(1));
        assert_eq!(nfa.position_count(), 1);
        assert_eq!(nfa.first(), &[0]);
        assert_eq!(nfa.last(), &[0]);
        assert!(nfa.follow(0).is_empty());
        assert!(nfa.accepts(&w("1")));
        assert!(!nfa.accepts(&w("")));
        assert!(!nfa.accepts(&w("11")));
    }

    #[test]
    fn union_positions_are_initial_and_final() {
        let nfa = glushkov(&parse("1+2", 2).unwrap());
        assert_eq!(nfa.position_count(), 2);
        assert_eq!(nfa.first(), &[0, 1]);
        assert_eq!(nfa.last(), &[0, 1]);
    }

    #[test]
    fn star_and_epsilon() {
        let nfa = glushkov(&parse("(12)*+e", 2).unwrap());
        assert!(nfa.accepts_epsilon());
        assert!(nfa.accepts(&w("1212")));
        assert!(!nfa.accepts(&w("121")));
        let nfa = glushkov(&parse("&1", 1).unwrap());
        assert!(!nfa.accepts(&w("1")));
    }

    #[test]
    fn r3_membership() {
        let nfa = glushkov(&r(3));
        assert_eq!(nfa.position_count(), 15);
        assert!(nfa.accepts(&w("231")));
        assert!(!nfa.accepts(&w("221")));
        assert!(!nfa.accepts(&w("12")));
        assert!(!nfa.accepts(&w("1234")));
    }

    #[test]
    fn certificates_for_small_n() {
        let cfg = VerifyConfig::default();
        let c = language_equals_permutations(&r(3), 3, &cfg).unwrap();
        assert_eq!((c.words_tested, c.accepted, c.passed), (27, 6, true));
        assert_eq!(c.shorter_words_tested, 1 + 3 + 9);
        let c = language_equals_permutations(&r(5), 5, &cfg).unwrap();
        assert_eq!((c.words_tested, c.accepted, c.passed), (3125, 120, true));
        let flat = Builder::FlatUnion
            .build(&AlphabetSet::sigma(4).unwrap(), &BuildConfig::default())
            .unwrap();
        let c = language_equals_permutations(&flat, 4, &cfg).unwrap();
        assert_eq!((c.words_tested, c.accepted, c.passed), (256, 24, true));
    }

    #[test]
    fn wrong_languages_fail() {
        let cfg = VerifyConfig::default();
        // missing one permutation
        let c = language_equals_permutations(&parse("12", 2).unwrap(), 2, &cfg).unwrap();
        assert!(!c.passed);
        assert_eq!(c.accepted, 1);
        // extra non-permutation
        let c = language_equals_permutations(&parse("12+21+11", 2).unwrap(), 2, &cfg).unwrap();
        assert!(!c.passed);
        assert_eq!(c.non_permutations_accepted, 1);
        // a longer word sneaks in
        let c = language_equals_permutations(&parse("12+21+121", 2).unwrap(), 2, &cfg).unwrap();
        assert!(!c.passed && c.accepted == 2 && c.uniform_length.is_none());
        // symbol beyond the alphabet
        let c = language_equals_permutations(&parse("12+21+3", 3).unwrap(), 2, &cfg).unwrap();
        assert!(!c.passed && !c.symbols_in_range);
        // a shorter word
        let c = language_equals_permutations(&parse("12+21+1", 2).unwrap(), 2, &cfg).unwrap();
        assert_eq!(c.shorter_words_accepted, 1);
        assert!(!c.passed);
    }

    #[test]
    fn cap_enforced() {
        let cfg = VerifyConfig { exhaustive_cap: 4 };
        assert_eq!(
            language_equals_permutations(&r(5), 5, &cfg),
            Err(VerifyError::CapExceeded { n: 5, cap: 4 })
        );
    }

    #[test]
    fn uniform_length_rules() {
        assert_eq!(uniform_length(&parse("12+21", 2).unwrap()), Some(2));
        assert_eq!(uniform_length(&parse("1+21", 2).unwrap()), None);
        assert_eq!(uniform_length(&parse("1*", 1).unwrap()), None);
        assert_eq!(uniform_length(&parse("e1", 1).unwrap()), Some(1));
    }
}
