//! Brute-force minimal alphabetic lengths for sets of permutations.
//!
//! For tiny alphabets every nonempty set of distinct-symbol words fits in a
//! bitmask, so the cheapest star-free, epsilon-free expression for each set
//! can be found exhaustively. The costs are computed level by level: an
//! expression of cost `c` is a union or concatenation of two expressions whose
//! costs sum to `c`, so once all levels below `c` are final, level `c` is too.
//! Nothing here depends on the constructions in [`crate::construct`].

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::length;

/// Largest supported alphabet; `n = 4` would need `2^64` languages.
pub const MAX_ORACLE_N: u32 = 3;

/// Minimality is over expressions built from symbols, union and
/// concatenation only.
pub const SEMANTICS: &str = "star-free, epsilon-free";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle supports n <= {cap}, got n = {n}")]
    CapExceeded { n: u32, cap: u32 },
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
}

/// All nonempty words over `1..=n` with pairwise-distinct symbols, ordered by
/// length and then lexicographically.
#[derive(Debug, Clone)]
pub struct WordUniverse {
    n: u32,
    words: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl WordUniverse {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// The set of all full-length words, i.e. the permutations.
    pub fn permutations(&self) -> LanguageSet {
        let mut bits = 0u32;
        for (i, w) in self.words.iter().enumerate() {
            if w.len() == self.n as usize {
                bits |= 1 << i;
            }
        }
        LanguageSet(bits)
    }
}

pub fn build_universe(n: u32) -> Result<WordUniverse, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidArgs("n must be at least 1".into()));
    }
    if n > MAX_ORACLE_N {
        return Err(OracleError::CapExceeded {
            n,
            cap: MAX_ORACLE_N,
        });
    }
    let mut words: Vec<Vec<u8>> = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for s in 1..=n as u8 {
                if !w.contains(&s) {
                    let mut v = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let index = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    Ok(WordUniverse { n, words, index })
}

/// A set of universe words as a bitmask over their indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LanguageSet(pub u32);

impl LanguageSet {
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn is_subset(self, other: LanguageSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

/// Minimal cost of every nonempty language in the universe.
#[derive(Debug, Clone)]
pub struct CostTable {
    universe: WordUniverse,
    /// Indexed by mask; 0 marks a language with no expression.
    cost: Vec<u32>,
    concat: ConcatTable,
}

impl CostTable {
    pub fn universe(&self) -> &WordUniverse {
        &self.universe
    }

    pub fn cost(&self, lang: LanguageSet) -> Option<u32> {
        match self.cost.get(lang.0 as usize) {
            Some(&c) if c > 0 => Some(c),
            _ => None,
        }
    }

    pub fn expressible(&self) -> usize {
        self.cost.iter().filter(|&&c| c > 0).count()
    }

    /// Every `(mask, cost)` pair with an expression, ordered by mask.
    pub fn entries(&self) -> impl Iterator<Item = (LanguageSet, u32)> + '_ {
        self.cost
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(m, &c)| (LanguageSet(m as u32), c))
    }

    pub fn cost_of_permutations(&self) -> u32 {
        self.cost(self.universe.permutations())
            .expect("P_n is expressible")
    }
}

/// Word-level data for concatenating languages.
#[derive(Debug, Clone)]
struct ConcatTable {
    /// `pair[i][j]`: index of word `i` followed by word `j`, if distinct-symbol.
    pair: Vec<Vec<Option<usize>>>,
    /// Per mask: union of symbol bitsets and the longest word length.
    symbols: Vec<u8>,
    max_len: Vec<u8>,
    n: u32,
}

impl ConcatTable {
    fn new(u: &WordUniverse) -> Self {
        let word_syms: Vec<u8> = u
            .words
            .iter()
            .map(|w| w.iter().fold(0u8, |m, &s| m | 1 << s))
            .collect();
        let pair = u
            .words
            .iter()
            .map(|a| {
                u.words
                    .iter()
                    .map(|b| u.index_of(&[a.as_slice(), b.as_slice()].concat()))
                    .collect()
            })
            .collect();
        let size = 1usize << u.len();
        let mut symbols = vec![0u8; size];
        let mut max_len = vec![0u8; size];
        for m in 1..size {
            let low = m.trailing_zeros() as usize;
            let rest = m & (m - 1);
            symbols[m] = symbols[rest] | word_syms[low];
            max_len[m] = max_len[rest].max(u.words[low].len() as u8);
        }
        ConcatTable {
            pair,
            symbols,
            max_len,
            n: u.n,
        }
    }

    /// `A . B` when every concatenated word stays distinct-symbol. Words of
    /// `A` and `B` never share a symbol exactly when their symbol sets are
    /// disjoint.
    fn concat(&self, a: u32, b: u32) -> Option<u32> {
        let (ai, bi) = (a as usize, b as usize);
        if self.symbols[ai] & self.symbols[bi] != 0
            || (self.max_len[ai] + self.max_len[bi]) as u32 > self.n
        {
            return None;
        }
        let mut out = 0u32;
        for i in LanguageSet(a).indices() {
            for j in LanguageSet(b).indices() {
                out |= 1 << self.pair[i][j].expect("checked disjoint and short");
            }
        }
        Some(out)
    }

    fn concatenable(&self, m: u32) -> bool {
        (self.max_len[m as usize] as u32) < self.n
    }
}

/// Computes the least fixpoint of the cost relaxation.
pub fn minimal_cost_table(u: &WordUniverse) -> CostTable {
    let concat = ConcatTable::new(u);
    let size = 1usize << u.len();
    let mut cost = vec![0u32; size];
    // a language is at worst the union of its words, each spelled out
    let max_cost: u32 = u.words.iter().map(|w| w.len() as u32).sum();
    let mut levels: Vec<Vec<u32>> = vec![Vec::new(); max_cost as usize + 1];
    for (i, w) in u.words.iter().enumerate() {
        if w.len() == 1 {
            cost[1 << i] = 1;
            levels[1].push(1 << i);
        }
    }
    let mut assigned = levels[1].len();
    for c in 2..=max_cost as usize {
        if assigned == size - 1 {
            break;
        }
        let mut found = Vec::new();
        let mut settle = |m: u32, found: &mut Vec<u32>| {
            if cost[m as usize] == 0 {
                cost[m as usize] = c as u32;
                found.push(m);
            }
        };
        for i in 1..c {
            let j = c - i;
            let (la, lb) = (&levels[i], &levels[j]);
            if i <= j {
                for &a in la {
                    for &b in lb {
                        settle(a | b, &mut found);
                    }
                }
            }
            for &a in la.iter().filter(|&&a| concat.concatenable(a)) {
                for &b in lb.iter().filter(|&&b| concat.concatenable(b)) {
                    if let Some(m) = concat.concat(a, b) {
                        settle(m, &mut found);
                    }
                }
            }
        }
        assigned += found.len();
        levels[c] = found;
    }
    CostTable {
        universe: u.clone(),
        cost,
        concat,
    }
}

/// Runs one full relaxation sweep over all pairs of expressible languages
/// and reports whether any cost would decrease.
pub fn verify_fixpoint(table: &CostTable) -> bool {
    let live: Vec<(u32, u32)> = table.entries().map(|(m, c)| (m.0, c)).collect();
    let stable = |m: u32, c: u32| table.cost[m as usize] != 0 && table.cost[m as usize] <= c;
    for &(a, ca) in &live {
        for &(b, cb) in &live {
            if !stable(a | b, ca + cb) {
                return false;
            }
            if let Some(m) = table.concat.concat(a, b) {
                if !stable(m, ca + cb) {
                    return false;
                }
            }
        }
    }
    true
}

fn factorial_u32(n: u32) -> u32 {
    (1..=n).product()
}

/// `l(n, k)`: the cheapest language of at least `k` permutations.
pub fn ell(table: &CostTable, k: u32) -> Result<u32, OracleError> {
    let u = table.universe();
    let total = factorial_u32(u.n);
    if k == 0 || k > total {
        return Err(OracleError::InvalidArgs(format!(
            "k must be in 1..={total}, got {k}"
        )));
    }
    let perms = u.permutations();
    Ok(table
        .entries()
        .filter(|(m, _)| m.is_subset(perms) && m.len() >= k)
        .map(|(_, c)| c)
        .min()
        .expect("P_n itself qualifies"))
}

#[derive(Debug, Clone, Serialize)]
pub struct EllRow {
    pub k: u32,
    pub ell: u32,
    /// `l(n,k) / k` as `"p/q"`.
    pub ratio: String,
    /// `l(n,k) / k >= l(n,n!) / n!`.
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MainOptReport {
    pub n: u32,
    pub semantics: &'static str,
    pub f_n: u64,
    #[serde(rename = "cost_Pn")]
    pub cost_pn: u32,
    pub matches_f: bool,
    pub rows: Vec<EllRow>,
    /// `k` minimizing `l(n,k) / k` (the smallest such `k`).
    pub tightest_k: u32,
    pub ell_monotone: bool,
    pub fixpoint_stable: bool,
    pub passed: bool,
}

/// Builds the table for `n` and checks `l(n,k)/k >= l(n,n!)/n! >= f(n)/n!`
/// for every `k`.
pub fn check_main_opt(n: u32) -> Result<MainOptReport, OracleError> {
    Oracle::new(n)?.check_main_opt()
}

/// A cost table together with the queries on it.
#[derive(Debug, Clone)]
pub struct Oracle {
    table: CostTable,
}

impl Oracle {
    pub fn new(n: u32) -> Result<Self, OracleError> {
        let u = build_universe(n)?;
        Ok(Oracle {
            table: minimal_cost_table(&u),
        })
    }

    pub fn n(&self) -> u32 {
        self.table.universe.n
    }

    pub fn table(&self) -> &CostTable {
        &self.table
    }

    pub fn cost_of_permutations(&self) -> u32 {
        self.table.cost_of_permutations()
    }

    pub fn ell(&self, k: u32) -> Result<u32, OracleError> {
        ell(&self.table, k)
    }

    pub fn ell_row(&self) -> Vec<u32> {
        (1..=factorial_u32(self.n()))
            .map(|k| self.ell(k).expect("k in range"))
            .collect()
    }

    pub fn check_main_opt(&self) -> Result<MainOptReport, OracleError> {
        let n = self.n();
        let total = factorial_u32(n);
        let f_n: u64 = length::f(n as u64)
            .map_err(|e| OracleError::InvalidArgs(e.to_string()))?
            .try_into()
            .expect("f(3) is small");
        let ells = self.ell_row();
        let full = ells[total as usize - 1];
        let rows: Vec<EllRow> = ells
            .iter()
            .zip(1u32..)
            .map(|(&l, k)| EllRow {
                k,
                ell: l,
                ratio: format!("{l}/{k}"),
                ok: l as u64 * total as u64 >= full as u64 * k as u64,
            })
            .collect();
        let tightest_k = rows
            .iter()
            .min_by(|a, b| (a.ell as u64 * b.k as u64).cmp(&(b.ell as u64 * a.k as u64)))
            .map_or(1, |r| r.k);
        let cost_pn = self.cost_of_permutations();
        let ell_monotone = ells.windows(2).all(|w| w[0] <= w[1]);
        let fixpoint_stable = verify_fixpoint(&self.table);
        let passed =
            rows.iter().all(|r| r.ok) && full as u64 >= f_n && ell_monotone && fixpoint_stable;
        Ok(MainOptReport {
            n,
            semantics: SEMANTICS,
            f_n,
            cost_pn,
            matches_f: cost_pn as u64 == f_n,
            rows,
            tightest_k,
            ell_monotone,
            fixpoint_stable,
            passed,
        })
    }
}
