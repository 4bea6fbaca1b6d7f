//! Randomized property checks shared by the property tests and the
//! acceptance runner.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use qchar::borel::{chow_borel_poly, witt_borel_poly};
use qchar::bundles::VirtualBundle;
use qchar::gw::{gw_equal, Backend, GWElement};
use qchar::operations::{chi_chow, chi_from_series, chi_witt};
use qchar::parse::parse_bundle;
use qchar::poly::{AmbientSpec, TruncatedPoly};
use qchar::ring::Integers;

pub const PROPERTIES: [&str; 6] = [
    "Whitney multiplicativity",
    "chi~ additivity",
    "power-sum oracle",
    "channel parity",
    "specialization naturality",
    "square-class canonicalization",
];

/// Monomial shapes every channel supports, as expression templates over
/// indices a, b, c.
fn monomial() -> impl Strategy<Value = String> {
    let twist = prop_oneof![
        Just(""),
        Just("<-1>*"),
        Just("<2>*"),
        Just("<3>*"),
        Just("<-6>*")
    ];
    let idx = 1usize..=3;
    let shape = (0usize..7, idx.clone(), idx.clone(), idx).prop_map(|(s, a, b, c)| match s {
        0 => format!("U{a}"),
        1 => format!("U{a}*U{b}*U{c}"),
        2 => format!("Sym3(U{a})"),
        3 => format!("U{a}*H"),
        4 => format!("U{a}*U{b}"),
        5 => "H".to_string(),
        _ => format!("U{a}*U{b}*U{c}*H"),
    });
    (twist, shape).prop_map(|(t, s)| format!("{t}{s}"))
}

/// A short signed sum of monomials.
pub fn bundle_expr() -> impl Strategy<Value = String> {
    prop::collection::vec((-2i64..=2, monomial()), 1..=3).prop_map(|terms| {
        let mut out = String::new();
        for (i, (k, m)) in terms.into_iter().enumerate() {
            let sign = match (i, k < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(&format!("{sign}{}*{m}", k.abs()));
        }
        out
    })
}

fn bundle(expr: &str) -> Result<VirtualBundle, TestCaseError> {
    parse_bundle(expr).map_err(|e| TestCaseError::fail(format!("{expr}: {e}")))
}

fn inf3() -> Arc<AmbientSpec> {
    Arc::new(AmbientSpec::hp_power(None, 3).unwrap())
}

fn ok<T>(r: qchar::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

const DEGREE: usize = 4;

fn whitney(case: (String, String)) -> Result<(), TestCaseError> {
    let (v, w) = (bundle(&case.0)?, bundle(&case.1)?);
    let a = inf3();
    let sum = v.add(&w);
    let chow = ok(chow_borel_poly(&v, &a, DEGREE)?.mul(&ok(chow_borel_poly(&w, &a, DEGREE))?))?;
    prop_assert!(
        chow.equals(&ok(chow_borel_poly(&sum, &a, DEGREE))?),
        "Chow: {} and {}",
        case.0,
        case.1
    );
    let b = Backend::Q;
    let witt =
        ok(ok(witt_borel_poly(&v, &a, b, DEGREE))?.mul(&ok(witt_borel_poly(&w, &a, b, DEGREE))?))?;
    prop_assert!(
        witt.equals(&ok(witt_borel_poly(&sum, &a, b, DEGREE))?),
        "Witt: {} and {}",
        case.0,
        case.1
    );
    Ok(())
}

/// Additivity, checked against Newton's identities on the Whitney product
/// series of the whole sum.
fn additivity(case: (String, String, usize)) -> Result<(), TestCaseError> {
    let (v, w, n) = (bundle(&case.0)?, bundle(&case.1)?, case.2);
    let a = inf3();
    let sum = v.add(&w);
    let parts = ok(chi_chow(n, &v, &a))?
        .checked_add(&ok(chi_chow(n, &w, &a))?)
        .unwrap();
    let series = ok(chow_borel_poly(&sum, &a, n))?;
    let whole = ok(chi_from_series(series.poly_ring(), n, series.classes()))?;
    prop_assert!(
        parts.equals(&whole),
        "Chow chi~_{}: {} and {}",
        2 * n,
        case.0,
        case.1
    );
    let b = Backend::Q;
    let parts = ok(chi_witt(n, &v, &a, b))?
        .checked_add(&ok(chi_witt(n, &w, &a, b))?)
        .unwrap();
    let series = ok(witt_borel_poly(&sum, &a, b, n))?;
    let whole = ok(chi_from_series(series.poly_ring(), n, series.classes()))?;
    prop_assert!(
        parts.equals(&whole),
        "Witt chi~_{}: {} and {}",
        2 * n,
        case.0,
        case.1
    );
    Ok(())
}

/// Chern roots of a monomial written as a product of factors, each factor a
/// list of root multiples of its ξ.
fn roots(expr: &str) -> Vec<Vec<(usize, i64)>> {
    let mut out: Vec<Vec<(usize, i64)>> = vec![vec![]];
    for f in expr.split('*').filter(|f| !f.starts_with('<')) {
        let shifts: Vec<Option<(usize, i64)>> = if f == "H" {
            vec![None, None]
        } else if let Some(i) = f.strip_prefix("Sym3(U").and_then(|r| r.strip_suffix(')')) {
            let i = i.parse().unwrap();
            [3, 1, -1, -3].iter().map(|&c| Some((i, c))).collect()
        } else {
            let i = f[1..].parse().unwrap();
            vec![Some((i, 1)), Some((i, -1))]
        };
        out = out
            .iter()
            .flat_map(|r| {
                shifts
                    .iter()
                    .map(move |s| r.iter().copied().chain(*s).collect())
            })
            .collect();
    }
    out
}

fn eval(p: &TruncatedPoly<Integers>, u: &[BigInt]) -> BigInt {
    p.terms()
        .map(|(e, c)| {
            e.iter()
                .zip(u)
                .fold(c.clone(), |acc, (k, x)| acc * x.pow(*k))
        })
        .sum()
}

/// χ̃_{2n} of a monomial is half the sum of the 2n-th powers of its Chern
/// roots; checked at integer points ξ, with u_i = ξ_i^2.
fn power_sum(case: (String, usize, [i64; 3])) -> Result<(), TestCaseError> {
    let (expr, n, xi) = case;
    let a = inf3();
    let v = bundle(&expr)?;
    let chi = ok(chi_chow(n, &v, &a))?;
    let u: Vec<BigInt> = xi.iter().map(|x| BigInt::from(x * x)).collect();
    let mut want = BigInt::zero();
    for r in roots(&expr) {
        let rho: i64 = r.iter().map(|(i, c)| c * xi[i - 1]).sum();
        want += BigInt::from(rho).pow(2 * n as u32);
    }
    prop_assert_eq!(eval(&chi, &u) * 2, want, "{} at ξ = {:?}", expr, xi);
    Ok(())
}

/// Chow and Witt values of χ̃ agree mod 2, so they glue to a GW class.
fn parity(case: (String, usize)) -> Result<(), TestCaseError> {
    let a = inf3();
    let v = bundle(&case.0)?;
    let n = case.1;
    let chow = ok(chi_chow(n, &v, &a))?;
    let witt = ok(chi_witt(n, &v, &a, Backend::Q))?;
    for (e, c) in chow.terms() {
        let w = ok(witt.coefficient(e))?;
        prop_assert!(
            (c - w.rank()) % 2 == BigInt::zero(),
            "{}: u^{:?} has {} vs {}",
            case.0,
            e,
            c,
            w
        );
    }
    for (e, w) in witt.terms() {
        let c = ok(chow.coefficient(e))?;
        prop_assert!(
            (c - w.rank()) % 2 == BigInt::zero(),
            "{}: u^{:?}",
            case.0,
            e
        );
    }
    Ok(())
}

/// Pulling back along U3 -> U1 and U2 -> U1 (diagonals) commutes with
/// taking classes; this exercises the cube and mixed-index Witt rules.
fn naturality(case: (String, usize)) -> Result<(), TestCaseError> {
    let (expr, which) = case;
    let (from, to, assignment): (&str, &str, Vec<Option<usize>>) = match which {
        0 => ("U3", "U1", vec![Some(0), Some(1), Some(0)]),
        1 => ("U2", "U1", vec![Some(0), Some(0), Some(2)]),
        _ => ("U3", "U2", vec![Some(0), Some(1), Some(1)]),
    };
    let a = inf3();
    let v = bundle(&expr)?;
    let relabeled = bundle(&expr.replace(from, to))?;
    let chow = ok(ok(chow_borel_poly(&v, &a, DEGREE))?.specialize(&a, &assignment))?;
    prop_assert!(
        chow.equals(&ok(chow_borel_poly(&relabeled, &a, DEGREE))?),
        "Chow: {} with {} -> {}",
        expr,
        from,
        to
    );
    let witt = ok(ok(witt_borel_poly(&v, &a, Backend::Q, DEGREE))?.specialize(&a, &assignment))?;
    prop_assert!(
        witt.equals(&ok(witt_borel_poly(&relabeled, &a, Backend::Q, DEGREE))?),
        "Witt: {} with {} -> {}",
        expr,
        from,
        to
    );
    Ok(())
}

fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    ((-60i64..=60).prop_filter("unit", |n| *n != 0), 1i64..=12)
}

/// <a b^2> = <a>, and equal GW elements get identical normal forms.
fn canonicalization(
    case: ((i64, i64), (i64, i64), Vec<(i64, i64)>, u8),
) -> Result<(), TestCaseError> {
    let ((an, ad), (bn, bd), entries, backend_pick) = case;
    let backend = match backend_pick % 4 {
        0 | 1 => Backend::Q,
        2 => Backend::Fp(5),
        _ => Backend::Fp(7),
    };
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let (a, b) = (q(an, ad), q(bn, bd));
    let units_ok = |x: &BigRational| match backend {
        Backend::Fp(p) => {
            let p = BigInt::from(p);
            (x.numer() % &p) != BigInt::zero() && (x.denom() % &p) != BigInt::zero()
        }
        Backend::Q => true,
    };
    if !units_ok(&a) || !units_ok(&b) || entries.iter().any(|&(n, d)| !units_ok(&q(n, d))) {
        return Ok(());
    }
    let ca = ok(backend.square_class(&a))?;
    prop_assert_eq!(&ca, &ok(backend.square_class(&(&a * &b * &b)))?);
    let units: Vec<BigRational> = entries.iter().map(|&(n, d)| q(n, d)).collect();
    let x = ok(GWElement::from_diagonal(backend, &units))?;
    // <a> + <b> = <a+b> + <ab(a+b)> whenever a + b is a unit
    let s = &a + &b;
    if s.is_zero() || !units_ok(&s) {
        return Ok(());
    }
    let lhs = x
        .checked_add(&ok(GWElement::from_diagonal(
            backend,
            &[a.clone(), b.clone()],
        ))?)
        .unwrap();
    let rhs = x
        .checked_add(&ok(GWElement::from_diagonal(
            backend,
            &[s.clone(), &a * &b * &s],
        ))?)
        .unwrap();
    prop_assert!(ok(gw_equal(&lhs, &rhs))?);
    prop_assert_eq!(lhs.canonical(), rhs.canonical());
    prop_assert_eq!(lhs.to_string(), rhs.to_string());
    let shifted = lhs.checked_add(&GWElement::one(backend)).unwrap();
    prop_assert!(shifted.canonical() != lhs.canonical());
    prop_assert!(ok(gw_equal(&lhs.canonical(), &lhs))?);
    Ok(())
}

/// Runs one named property for `cases` random instances.
pub fn run_property(name: &str, cases: u32) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let r = match name {
        "Whitney multiplicativity" => runner
            .run(&(bundle_expr(), bundle_expr()), whitney)
            .map_err(|e| e.to_string()),
        "chi~ additivity" => runner
            .run(&(bundle_expr(), bundle_expr(), 1usize..=4), additivity)
            .map_err(|e| e.to_string()),
        "power-sum oracle" => runner
            .run(
                &(monomial(), 1usize..=5, [-4i64..=4, -4i64..=4, -4i64..=4]),
                power_sum,
            )
            .map_err(|e| e.to_string()),
        "channel parity" => runner
            .run(&(bundle_expr(), 1usize..=4), parity)
            .map_err(|e| e.to_string()),
        "specialization naturality" => runner
            .run(&(bundle_expr(), 0usize..3), naturality)
            .map_err(|e| e.to_string()),
        "square-class canonicalization" => runner
            .run(
                &(
                    small_rational(),
                    small_rational(),
                    prop::collection::vec(small_rational(), 0..4),
                    any::<u8>(),
                ),
                canonicalization,
            )
            .map_err(|e| e.to_string()),
        other => return Err(format!("unknown property {other}")),
    };
    r
}
