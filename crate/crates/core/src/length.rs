//! Exact alphabetic lengths and the combinatorial inequalities on them.
//!
//! Everything here is integer arithmetic: the inequalities checked below
//! have exact equality cases, so no floating point is involved.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LengthError {
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
}

fn need_positive(n: u64) -> Result<(), LengthError> {
    if n == 0 {
        return Err(LengthError::InvalidArgs("n must be at least 1".into()));
    }
    Ok(())
}

pub fn binomial(n: u64, k: u64) -> Result<BigUint, LengthError> {
    if k > n {
        return Err(LengthError::InvalidArgs(format!(
            "C({n}, {k}) needs 0 <= k <= n"
        )));
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    Ok(c)
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Alphabetic length of the divide-and-conquer expression for `n` symbols.
pub fn f(n: u64) -> Result<BigUint, LengthError> {
    fn go(n: u64, memo: &mut HashMap<u64, BigUint>) -> BigUint {
        if n == 1 {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&n) {
            return v.clone();
        }
        let lo = n / 2;
        let v = binomial(n, lo).expect("lo <= n") * (go(lo, memo) + go(n - lo, memo));
        memo.insert(n, v.clone());
        v
    }
    need_positive(n)?;
    Ok(go(n, &mut HashMap::new()))
}

/// Alphabetic length of the tail-recursive expression: `t(1) = 1`,
/// `t(n) = n (1 + t(n - 1))`.
pub fn t(n: u64) -> Result<BigUint, LengthError> {
    need_positive(n)?;
    Ok((2..=n).fold(BigUint::one(), |acc, i| (acc + 1u32) * i))
}

/// Alphabetic length of the plain listing of all permutations, `n * n!`.
pub fn listing_length(n: u64) -> Result<BigUint, LengthError> {
    need_positive(n)?;
    Ok(factorial(n) * n)
}

/// Dense table of `f(1..=max_n)`.
#[derive(Debug, Clone)]
pub struct FTable {
    values: Vec<BigUint>,
}

impl FTable {
    pub fn new(max_n: u64) -> Result<Self, LengthError> {
        need_positive(max_n)?;
        let mut values = vec![BigUint::zero(), BigUint::one()];
        for n in 2..=max_n {
            let lo = n / 2;
            let v = binomial(n, lo)? * (&values[lo as usize] + &values[(n - lo) as usize]);
            values.push(v);
        }
        Ok(FTable { values })
    }

    pub fn max_n(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// Panics if `n` is 0 or beyond the table.
    pub fn get(&self, n: u64) -> &BigUint {
        assert!(n >= 1 && n <= self.max_n(), "f({n}) is outside the table");
        &self.values[n as usize]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptChoiceEntry {
    pub k: u64,
    /// `C(n,k) (f(k) + f(n-k)) - f(n)`.
    #[serde(with = "crate::bigser::signed")]
    pub delta: BigInt,
    pub balanced: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptChoiceReport {
    pub n: u64,
    pub entries: Vec<OptChoiceEntry>,
    /// Split sizes `k` where the inequality or its equality case fails.
    pub violations: Vec<u64>,
    pub passed: bool,
}

/// Splitting `n` symbols into `k` and `n - k` never beats the balanced
/// split, and ties it only when `k` is `floor(n/2)` or `ceil(n/2)`.
pub fn check_opt_choice(n: u64) -> Result<OptChoiceReport, LengthError> {
    Ok(check_opt_choice_with(&FTable::new(n)?, n))
}

pub fn check_opt_choice_with(table: &FTable, n: u64) -> OptChoiceReport {
    let fnv = BigInt::from(table.get(n).clone());
    let mut binom = BigUint::one();
    let mut entries = Vec::with_capacity(n.saturating_sub(1) as usize);
    for k in 1..n {
        binom = binom * (n - k + 1) / k;
        let delta = BigInt::from(&binom * (table.get(k) + table.get(n - k))) - &fnv;
        let balanced = k == n / 2 || k == n.div_ceil(2);
        let ok = if balanced {
            delta.is_zero()
        } else {
            delta > BigInt::zero()
        };
        entries.push(OptChoiceEntry {
            k,
            delta,
            balanced,
            ok,
        });
    }
    let violations: Vec<u64> = entries.iter().filter(|e| !e.ok).map(|e| e.k).collect();
    OptChoiceReport {
        n,
        passed: violations.is_empty(),
        entries,
        violations,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptChoiceSweep {
    pub max_n: u64,
    pub pairs_checked: u64,
    /// `(n, k)` pairs that failed.
    pub violations: Vec<(u64, u64)>,
    pub passed: bool,
}

/// Runs [`check_opt_choice`] for every `1 <= n <= max_n`.
pub fn sweep_opt_choice(max_n: u64) -> Result<OptChoiceSweep, LengthError> {
    let table = FTable::new(max_n)?;
    let per_n: Vec<OptChoiceReport> = (1..=max_n)
        .into_par_iter()
        .map(|n| check_opt_choice_with(&table, n))
        .collect();
    let pairs_checked = per_n.iter().map(|r| r.entries.len() as u64).sum();
    let violations: Vec<(u64, u64)> = per_n
        .iter()
        .flat_map(|r| r.violations.iter().map(move |&k| (r.n, k)))
        .collect();
    Ok(OptChoiceSweep {
        max_n,
        pairs_checked,
        passed: violations.is_empty(),
        violations,
    })
}

/// The ratio `f(n+1) / f(n)`, kept as an exact fraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRatio {
    pub n: u64,
    #[serde(with = "crate::bigser")]
    pub numerator: BigUint,
    #[serde(with = "crate::bigser")]
    pub denominator: BigUint,
}

impl GrowthRatio {
    fn less_than(&self, other: &GrowthRatio) -> bool {
        &self.numerator * &other.denominator < &other.numerator * &self.denominator
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleGrowthReport {
    pub max_n: u64,
    pub checked: u64,
    pub min_ratio: Option<GrowthRatio>,
    pub violations: Vec<u64>,
    pub passed: bool,
}

/// Checks `f(n+1) >= 3 f(n)` for `1 <= n < max_n`.
pub fn check_triple_growth(max_n: u64) -> Result<TripleGrowthReport, LengthError> {
    let table = FTable::new(max_n)?;
    let mut min_ratio: Option<GrowthRatio> = None;
    let mut violations = Vec::new();
    for n in 1..max_n {
        let (cur, next) = (table.get(n), table.get(n + 1));
        if next < &(cur * 3u32) {
            violations.push(n);
        }
        let r = GrowthRatio {
            n,
            numerator: next.clone(),
            denominator: cur.clone(),
        };
        if min_ratio.as_ref().is_none_or(|m| r.less_than(m)) {
            min_ratio = Some(r);
        }
    }
    Ok(TripleGrowthReport {
        max_n,
        checked: max_n - 1,
        min_ratio,
        passed: violations.is_empty(),
        violations,
    })
}
