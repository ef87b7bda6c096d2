//! Regular expressions for the permutations of an alphabet.
//!
//! Three constructions are provided: the plain listing of every permutation,
//! the tail-recursive expansion `E(S) = sum_i i E(S - {i})`, and the
//! divide-and-conquer expression
//!
//! ```text
//! E(S) = sum over T subset of S, |T| = floor(|S|/2), of E(T) E(S - T)
//! ```
//!
//! whose alphabetic length is minimal. Union terms follow the colexicographic
//! order of the chosen subsets.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::length;
use crate::regex::{Regex, Symbol};

pub const DEFAULT_MAX_SYMBOLS: u64 = 10_000_000;
pub const DEFAULT_FLAT_CAP: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("subset size {k} is out of range for an alphabet of {n} symbols")]
    InvalidSize { k: usize, n: usize },
    #[error("refusing to build: predicted alphabetic length {predicted} exceeds the budget of {cap} symbols")]
    SizeCap { predicted: BigUint, cap: u64 },
    #[error("refusing to list {n}! permutations: flat-union cap is {cap}")]
    FlatCap { n: usize, cap: u64 },
}

/// A nonempty set of symbols, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphabetSet {
    members: Vec<Symbol>,
}

impl AlphabetSet {
    pub fn new(ids: impl IntoIterator<Item = u32>) -> Result<Self, ConstructError> {
        let mut members = ids
            .into_iter()
            .map(|id| {
                Symbol::new(id).ok_or_else(|| ConstructError::InvalidAlphabet("symbol 0".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        members.sort();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(ConstructError::InvalidAlphabet("repeated symbol".into()));
        }
        if members.is_empty() {
            return Err(ConstructError::InvalidAlphabet("empty alphabet".into()));
        }
        Ok(AlphabetSet { members })
    }

    /// The alphabet `{1, ..., n}`.
    pub fn sigma(n: u32) -> Result<Self, ConstructError> {
        Self::new(1..=n)
    }

    pub fn members(&self) -> &[Symbol] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn from_sorted(members: Vec<Symbol>) -> Self {
        debug_assert!(!members.is_empty() && members.windows(2).all(|w| w[0] < w[1]));
        AlphabetSet { members }
    }

    fn without(&self, other: &AlphabetSet) -> AlphabetSet {
        let rest = self
            .members
            .iter()
            .copied()
            .filter(|s| other.members.binary_search(s).is_err())
            .collect();
        AlphabetSet::from_sorted(rest)
    }
}

impl fmt::Display for AlphabetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.members.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

/// Iterator over the `k`-element subsets of an alphabet in colexicographic
/// order: subsets are compared by their largest differing element.
pub struct ColexSubsets<'a> {
    set: &'a AlphabetSet,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for ColexSubsets<'_> {
    type Item = AlphabetSet;

    fn next(&mut self) -> Option<AlphabetSet> {
        if self.done {
            return None;
        }
        let out = AlphabetSet::from_sorted(self.idx.iter().map(|&i| self.set.members[i]).collect());
        // advance: bump the lowest index that has room, reset those below it
        let n = self.set.len();
        let k = self.idx.len();
        let mut j = 0;
        while j < k {
            let limit = if j + 1 < k { self.idx[j + 1] } else { n };
            if self.idx[j] + 1 < limit {
                break;
            }
            j += 1;
        }
        if j == k {
            self.done = true;
        } else {
            self.idx[j] += 1;
            for (i, slot) in self.idx[..j].iter_mut().enumerate() {
                *slot = i;
            }
        }
        Some(out)
    }
}

pub fn subsets_of_size(s: &AlphabetSet, k: usize) -> Result<ColexSubsets<'_>, ConstructError> {
    if k == 0 || k > s.len() {
        return Err(ConstructError::InvalidSize { k, n: s.len() });
    }
    Ok(ColexSubsets {
        set: s,
        idx: (0..k).collect(),
        done: false,
    })
}

/// Size limits applied before any expression is materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildConfig {
    /// Largest alphabetic length a builder may produce.
    pub max_symbols: u64,
    /// Largest alphabet the flat listing accepts.
    pub flat_cap: u64,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            max_symbols: DEFAULT_MAX_SYMBOLS,
            flat_cap: DEFAULT_FLAT_CAP,
        }
    }
}

impl BuildConfig {
    fn admit(&self, predicted: BigUint) -> Result<(), ConstructError> {
        if predicted > BigUint::from(self.max_symbols) {
            return Err(ConstructError::SizeCap {
                predicted,
                cap: self.max_symbols,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builder {
    /// Divide and conquer; minimal alphabetic length.
    DivideAndConquer,
    TailRecursive,
    FlatUnion,
}

impl Builder {
    pub const ALL: [Builder; 3] = [
        Builder::FlatUnion,
        Builder::TailRecursive,
        Builder::DivideAndConquer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builder::DivideAndConquer => "dnc",
            Builder::TailRecursive => "tail",
            Builder::FlatUnion => "flat",
        }
    }

    /// Alphabetic length the builder produces for `n` symbols.
    pub fn predicted_length(self, n: u64) -> BigUint {
        let r = match self {
            Builder::DivideAndConquer => length::f(n),
            Builder::TailRecursive => length::t(n),
            Builder::FlatUnion => length::listing_length(n),
        };
        r.expect("alphabets are nonempty")
    }

    pub fn build(self, s: &AlphabetSet, cfg: &BuildConfig) -> Result<Arc<Regex>, ConstructError> {
        match self {
            Builder::DivideAndConquer => build_divide_and_conquer(s, cfg),
            Builder::TailRecursive => build_tail_recursive(s, cfg),
            Builder::FlatUnion => build_flat_union(s, cfg),
        }
    }
}

impl fmt::Display for Builder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dnc" => Ok(Builder::DivideAndConquer),
            "tail" => Ok(Builder::TailRecursive),
            "flat" => Ok(Builder::FlatUnion),
            other => Err(format!(
                "unknown builder `{other}` (expected dnc, tail or flat)"
            )),
        }
    }
}

/// The divide-and-conquer expression `E(s)`.
///
/// Sub-expressions for repeated subsets are shared; the result is still the
/// full logical tree, so its alphabetic length is `f(|s|)`.
pub fn build_divide_and_conquer(
    s: &AlphabetSet,
    cfg: &BuildConfig,
) -> Result<Arc<Regex>, ConstructError> {
    fn go(s: &AlphabetSet, memo: &mut HashMap<AlphabetSet, Arc<Regex>>) -> Arc<Regex> {
        if s.len() == 1 {
            return Arc::new(Regex::Sym(s.members[0]));
        }
        if let Some(e) = memo.get(s) {
            return e.clone();
        }
        let terms: Vec<Arc<Regex>> = subsets_of_size(s, s.len() / 2)
            .expect("1 <= floor(n/2) < n")
            .map(|t| {
                let rest = s.without(&t);
                Regex::concat(go(&t, memo), go(&rest, memo))
            })
            .collect();
        let e = Regex::union_all(terms).expect("at least one subset");
        memo.insert(s.clone(), e.clone());
        e
    }
    cfg.admit(Builder::DivideAndConquer.predicted_length(s.len() as u64))?;
    Ok(go(s, &mut HashMap::new()))
}

/// The tail-recursive expression `E(S) = sum_{i in S} i E(S - {i})`.
pub fn build_tail_recursive(
    s: &AlphabetSet,
    cfg: &BuildConfig,
) -> Result<Arc<Regex>, ConstructError> {
    fn go(s: &AlphabetSet, memo: &mut HashMap<AlphabetSet, Arc<Regex>>) -> Arc<Regex> {
        if s.len() == 1 {
            return Arc::new(Regex::Sym(s.members[0]));
        }
        if let Some(e) = memo.get(s) {
            return e.clone();
        }
        let terms: Vec<Arc<Regex>> = s
            .members
            .iter()
            .map(|&i| {
                let head = AlphabetSet::from_sorted(vec![i]);
                let rest = s.without(&head);
                Regex::concat(Arc::new(Regex::Sym(i)), go(&rest, memo))
            })
            .collect();
        let e = Regex::union_all(terms).expect("nonempty alphabet");
        memo.insert(s.clone(), e.clone());
        e
    }
    cfg.admit(Builder::TailRecursive.predicted_length(s.len() as u64))?;
    Ok(go(s, &mut HashMap::new()))
}

/// Union of every permutation of `s`, in lexicographic order.
pub fn build_flat_union(s: &AlphabetSet, cfg: &BuildConfig) -> Result<Arc<Regex>, ConstructError> {
    if s.len() as u64 > cfg.flat_cap {
        return Err(ConstructError::FlatCap {
            n: s.len(),
            cap: cfg.flat_cap,
        });
    }
    cfg.admit(Builder::FlatUnion.predicted_length(s.len() as u64))?;
    let leaves: Vec<Arc<Regex>> = s.members.iter().map(|&m| Arc::new(Regex::Sym(m))).collect();
    let mut order: Vec<usize> = (0..s.len()).collect();
    let mut words = Vec::new();
    loop {
        let word = Regex::concat_all(order.iter().map(|&i| leaves[i].clone())).expect("nonempty");
        words.push(word);
        if !next_permutation(&mut order) {
            break;
        }
    }
    Ok(Regex::union_all(words).expect("at least one permutation"))
}

/// Advances to the next permutation in lexicographic order; false after the last.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("v[i] qualifies");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::{alphabetic_length, render, RenderFormat};

    fn ids(s: &AlphabetSet) -> Vec<u32> {
        s.members().iter().map(|m| m.id()).collect()
    }

    #[test]
    fn colex_order_of_pairs() {
        let s = AlphabetSet::sigma(4).unwrap();
        let got: Vec<Vec<u32>> = subsets_of_size(&s, 2).unwrap().map(|t| ids(&t)).collect();
        assert_eq!(
            got,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 4],
                vec![2, 4],
                vec![3, 4]
            ]
        );
    }

    #[test]
    fn subsets_edge_cases() {
        let one = AlphabetSet::new([5]).unwrap();
        let got: Vec<Vec<u32>> = subsets_of_size(&one, 1).unwrap().map(|t| ids(&t)).collect();
        assert_eq!(got, vec![vec![5]]);
        let s = AlphabetSet::sigma(3).unwrap();
        assert!(subsets_of_size(&s, 0).is_err());
        assert!(subsets_of_size(&s, 4).is_err());
        let got: Vec<Vec<u32>> = subsets_of_size(&s, 3).unwrap().map(|t| ids(&t)).collect();
        assert_eq!(got, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn alphabet_validation() {
        assert!(AlphabetSet::new([]).is_err());
        assert!(AlphabetSet::new([0, 1]).is_err());
        assert!(AlphabetSet::new([2, 2]).is_err());
        assert_eq!(ids(&AlphabetSet::new([3, 1, 2]).unwrap()), vec![1, 2, 3]);
    }

    #[test]
    fn single_symbol_builders() {
        let s = AlphabetSet::sigma(1).unwrap();
        let cfg = BuildConfig::default();
        for b in Builder::ALL {
            assert_eq!(*b.build(&s, &cfg).unwrap(), *Regex::sym(1));
        }
    }

    #[test]
    fn lengths_match_predictions() {
        let cfg = BuildConfig::default();
        for n in 1..=6 {
            let s = AlphabetSet::sigma(n).unwrap();
            for b in Builder::ALL {
                let e = b.build(&s, &cfg).unwrap();
                assert_eq!(
                    alphabetic_length(&e),
                    b.predicted_length(n as u64),
                    "{b} n={n}"
                );
            }
        }
        let e = build_divide_and_conquer(&AlphabetSet::sigma(6).unwrap(), &cfg).unwrap();
        assert_eq!(alphabetic_length(&e), BigUint::from(600u32));
    }

    #[test]
    fn flat_three() {
        let e = build_flat_union(&AlphabetSet::sigma(3).unwrap(), &BuildConfig::default()).unwrap();
        assert_eq!(
            render(&e, RenderFormat::Compact).unwrap(),
            "123+132+213+231+312+321"
        );
        assert_eq!(alphabetic_length(&e), BigUint::from(18u32));
    }

    #[test]
    fn caps_refuse_before_building() {
        let cfg = BuildConfig {
            max_symbols: 47,
            flat_cap: 3,
        };
        let s4 = AlphabetSet::sigma(4).unwrap();
        assert!(matches!(
            build_divide_and_conquer(&s4, &cfg),
            Err(ConstructError::SizeCap { cap: 47, .. })
        ));
        assert!(matches!(
            build_flat_union(&s4, &cfg),
            Err(ConstructError::FlatCap { .. })
        ));
        let s3 = AlphabetSet::sigma(3).unwrap();
        assert!(build_divide_and_conquer(&s3, &cfg).is_ok());
        // default budget admits n = 13 (f = 4813380) but not n = 14
        let d = BuildConfig::default();
        assert!(d
            .admit(Builder::DivideAndConquer.predicted_length(13))
            .is_ok());
        assert!(d
            .admit(Builder::DivideAndConquer.predicted_length(14))
            .is_err());
    }

    #[test]
    fn arbitrary_alphabets() {
        let s = AlphabetSet::new([2, 7, 9]).unwrap();
        let e = build_divide_and_conquer(&s, &BuildConfig::default()).unwrap();
        assert_eq!(
            render(&e, RenderFormat::Compact).unwrap(),
            "2(79+97)+7(29+92)+9(27+72)"
        );
    }
}
