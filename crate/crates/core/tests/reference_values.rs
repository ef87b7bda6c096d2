//! Values computed outside this crate (Pascal's triangle, direct factorial
//! formulas, and 50-digit evaluations with an independent multiprecision
//! library) and frozen here.

#![allow(clippy::excessive_precision)]

use num_bigint::BigUint;
use num_traits::One;
use permrex::bounds::{self, BoundsConfig, ErrReal};
use permrex::construct::{subsets_of_size, AlphabetSet, BuildConfig, Builder};
use permrex::length::{self, FTable};
use permrex::oracle::{self, Oracle};
use permrex::verify::glushkov;
use permrex::{alphabetic_length, parse, render, RenderFormat};

const R4: &str =
    "(12+21)(34+43)+(13+31)(24+42)+(23+32)(14+41)+(14+41)(23+32)+(24+42)(13+31)+(34+43)(12+21)";
const TAIL4: &str = "1(2(34+43)+3(24+42)+4(23+32))+2(1(34+43)+3(14+41)+4(13+31))+3(1(24+42)+2(14+41)+4(12+21))+4(1(23+32)+2(13+31)+3(12+21))";

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn f_first_sixteen() {
    let want = [
        1u64, 4, 15, 48, 190, 600, 2205, 6720, 29988, 95760, 364980, 1108800, 4813380, 15135120,
        57432375, 172972800,
    ];
    let table = FTable::new(16).unwrap();
    for (n, &w) in (1u64..).zip(&want) {
        assert_eq!(table.get(n), &big(w), "f({n})");
    }
}

#[test]
fn f_1024_digits() {
    let s = length::f(1024).unwrap().to_string();
    assert_eq!(s.len(), 610);
    assert!(s.starts_with("35679217639720411941"));
    assert!(s.ends_with("13214626611200000000"));
}

#[test]
fn f_at_powers_of_two_matches_factorial_formula() {
    // f(2^m) = 2^m (2^m)! / ((2^(m-1))! (2^(m-2))! ... 2! 1!)
    for m in 1..=10u32 {
        let n = 1u64 << m;
        let mut den = BigUint::one();
        for j in 0..m {
            den *= length::factorial(1u64 << j);
        }
        let want = length::factorial(n) * n / den;
        assert_eq!(length::f(n).unwrap(), want, "m={m}");
    }
}

#[test]
fn binomial_against_pascal_triangle() {
    let mut row = vec![BigUint::one()];
    for n in 1..=40u64 {
        let mut next = vec![BigUint::one(); n as usize + 1];
        for k in 1..n as usize {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
        for (k, v) in row.iter().enumerate() {
            assert_eq!(&length::binomial(n, k as u64).unwrap(), v);
        }
    }
    assert_eq!(length::binomial(21, 10).unwrap(), big(352716));
}

#[test]
fn t_matches_factorial_sum() {
    // t(n) = sum_{0 <= i < n} n!/i!
    for n in 1..=30u64 {
        let want: BigUint = (0..n)
            .map(|i| length::factorial(n) / length::factorial(i))
            .sum();
        assert_eq!(length::t(n).unwrap(), want, "n={n}");
    }
}

#[test]
fn r4_string_and_parse() {
    let e = Builder::DivideAndConquer
        .build(&AlphabetSet::sigma(4).unwrap(), &BuildConfig::default())
        .unwrap();
    assert_eq!(render(&e, RenderFormat::Compact).unwrap(), R4);
    let parsed = parse(R4, 4).unwrap();
    assert_eq!(alphabetic_length(&parsed), big(48));
    assert_eq!(glushkov(&parsed).position_count(), 48);
    assert_eq!(*parsed, *e);
}

#[test]
fn tail_p4_string() {
    let e = Builder::TailRecursive
        .build(&AlphabetSet::sigma(4).unwrap(), &BuildConfig::default())
        .unwrap();
    assert_eq!(render(&e, RenderFormat::Compact).unwrap(), TAIL4);
    assert_eq!(alphabetic_length(&e), big(64));
}

#[test]
fn colex_order_of_r4_terms() {
    let s = AlphabetSet::sigma(4).unwrap();
    let got: Vec<String> = subsets_of_size(&s, 2)
        .unwrap()
        .map(|t| t.to_string())
        .collect();
    assert_eq!(got, ["{1,2}", "{1,3}", "{2,3}", "{1,4}", "{2,4}", "{3,4}"]);
}

#[test]
fn oracle_fixtures() {
    assert_eq!(Oracle::new(1).unwrap().ell_row(), vec![1]);
    assert_eq!(Oracle::new(2).unwrap().ell_row(), vec![2, 4]);
    let o = Oracle::new(3).unwrap();
    assert_eq!(o.ell_row(), vec![3, 5, 8, 10, 13, 15]);
    let r = o.check_main_opt().unwrap();
    assert!(r.passed && r.matches_f && r.fixpoint_stable && r.ell_monotone);
    assert_eq!(r.tightest_k, 2);
    assert_eq!(r.semantics, oracle::SEMANTICS);
    let r2 = oracle::check_main_opt(2).unwrap();
    assert_eq!(r2.tightest_k, 1);
}

fn close(x: &ErrReal, want: f64, rel: f64) {
    let got = x.to_f64();
    assert!(((got - want) / want).abs() <= rel, "{got} vs {want}");
}

const P: u32 = 200;

#[test]
fn analytic_functions() {
    close(
        &bounds::stirling_s(&ErrReal::from_i64(1, P)).unwrap(),
        0.9221370088957891,
        1e-15,
    );
    close(
        &bounds::stirling_s(&ErrReal::from_i64(10, P)).unwrap(),
        3598695.618741036,
        1e-15,
    );
    let al = bounds::alpha_low(P).unwrap();
    close(&al, 0.4242519352638406, 1e-15);
    close(&bounds::alpha_high(P).unwrap(), 0.7461800301512029, 1e-15);
    close(
        &bounds::g_alpha(&ErrReal::from_i64(2, P), &al).unwrap(),
        18.054066673528201,
        1e-15,
    );
    let s = al.mid().to_sci(20);
    assert!(s.starts_with("4.242519352638406009"), "{s}");
}

#[test]
fn growth_bound_margins() {
    // ln(f(n) / (0.195 g_low(n))) and ln(g_high(n) / (4 f(n)))
    let want = [
        (1u64, 0.2484613592984996311700181, 0.0),
        (2, 0.1276791216632544088244997, 0.3439257889494549781118135),
        (3, 0.1531492686814457860815234, 0.4489862517278233764940132),
        (10, 0.1767917954603821238593059, 0.8129363961417307020059447),
        (100, 0.3997239315533387569002915, 1.331271092352387263660191),
        (500, 0.4525356535032159435470029, 1.796582651391913515942417),
        (
            1024,
            0.003624040610014279856093323,
            2.476272831830582908976876,
        ),
    ];
    let r = bounds::check_fn_bounds(1024, &BoundsConfig::default()).unwrap();
    for (n, lo, up) in want {
        let m = |id: &str| {
            r.entries
                .iter()
                .find(|e| e.inequality == id && e.point == n.to_string())
                .and_then(|e| e.margin.clone())
                .unwrap()
                .to_f64()
        };
        assert!((m("fn.lower") - lo).abs() < 1e-14, "lower n={n}");
        assert!((m("fn.upper") - up).abs() < 1e-14, "upper n={n}");
    }
}

#[test]
fn estimate_ratios() {
    let want = [
        0.9610577570397792062159179,
        0.9033804552560103857102871,
        0.8756563411921138104235086,
        0.8620892768956636768812508,
        0.8553815313199926790324068,
        0.8520468501568325500871894,
        0.8503843371398718919958721,
        0.8495542911583719077311689,
    ];
    let r = bounds::estimate_power_of_two(8, &BoundsConfig::default()).unwrap();
    for (row, w) in r.rows.iter().zip(want) {
        assert!((row.ln_ratio.exp() - w).abs() < 1e-14, "m={}", row.m);
        let printed: f64 = row.ratio.mid.parse().unwrap();
        assert!((printed - w).abs() < 1e-14, "m={}", row.m);
    }
    assert_eq!(r.anomalies, 0);
}

#[test]
fn lemma_sa_at_1000() {
    let x = bounds::Rational::integer(1000);
    let r = bounds::check_lemma_sa(&[x], &BoundsConfig::default()).unwrap();
    let lower = &r.entries[0];
    assert_eq!(lower.precision_bits, 200);
    let m = lower.margin.as_ref().unwrap();
    assert!((m.to_f64() - 0.000249750197760542604254621).abs() < 1e-18);
    // margin radius below 1e-40
    assert!(m.rad().log2() < -40.0 * std::f64::consts::LOG2_10);
    assert!(r.passed());
}
