//! Named reproduction suites. Every check records its own failure instead of
//! aborting, so a report always lists the full suite.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::borel::{gw_borel_classes, Channel};
use crate::bundles::{tensor_expand, VirtualBundle};
use crate::error::{Error, Result};
use crate::gw::{gw_equal, witt_equal, Backend, GWElement, GwRing};
use crate::localization::{localize, normalization_factor};
use crate::operations::{
    alpha_closed_form, alpha_sequence, chern_chi_comparison, omega_s2, psi, Scalar,
};
use crate::poly::{AmbientSpec, TruncatedPoly};

pub const SUITES: [&str; 6] = [
    "borelclasses",
    "omega-table",
    "chi-comparison",
    "psi-localization",
    "gw-identities",
    "all",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from_result(name: String, r: Result<std::result::Result<(), String>>) -> Self {
        match r {
            Ok(Ok(())) => Check {
                name,
                passed: true,
                detail: String::new(),
            },
            Ok(Err(detail)) => Check {
                name,
                passed: false,
                detail,
            },
            Err(e) => Check {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        }
    }
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect();
        json!({ "suite": self.suite, "passed": self.passed(), "checks": checks })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name
            ));
            if !c.detail.is_empty() {
                out.push_str(&format!(" ({})", c.detail));
            }
            out.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.suite,
            self.checks.len(),
            failed
        ));
        out
    }
}

pub fn run_verify(suite: &str, backend: Backend) -> Result<Report> {
    let checks = match suite {
        "borelclasses" => borelclasses(backend),
        "omega-table" => omega_table(backend),
        "chi-comparison" => chi_comparison(),
        "psi-localization" => psi_localization(),
        "gw-identities" => gw_identities(),
        "all" => {
            let mut all = borelclasses(backend);
            all.extend(omega_table(backend));
            all.extend(chi_comparison());
            all.extend(psi_localization());
            all.extend(gw_identities());
            all
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(Report {
        suite: suite.to_string(),
        checks,
    })
}

/// Σ over distinct permutations of `e` of c·u^e, in three variables.
fn symmetric(
    ring: GwRing,
    ambient: &Arc<AmbientSpec>,
    e: [u32; 3],
    c: &GWElement,
) -> Result<TruncatedPoly<GwRing>> {
    let mut perms = vec![
        [e[0], e[1], e[2]],
        [e[0], e[2], e[1]],
        [e[1], e[0], e[2]],
        [e[1], e[2], e[0]],
        [e[2], e[0], e[1]],
        [e[2], e[1], e[0]],
    ];
    perms.sort();
    perms.dedup();
    let mut acc = TruncatedPoly::zero(ring, ambient.clone());
    for p in perms {
        acc = acc.checked_add(&TruncatedPoly::monomial(
            ring,
            ambient.clone(),
            p.to_vec(),
            c.clone(),
        ))?;
    }
    Ok(acc)
}

fn threefold_expected(
    backend: Backend,
    ambient: &Arc<AmbientSpec>,
) -> Result<Vec<TruncatedPoly<GwRing>>> {
    let ring = GwRing::new(backend);
    let h = |n: i64| GWElement::hyperbolic(backend, n);
    let m1 = |n: i64| GWElement::unit(backend, backend.minus_one()).scale(&BigInt::from(n));
    let one = GWElement::one(backend);
    let rows: [Vec<([u32; 3], GWElement)>; 4] = [
        vec![([1, 0, 0], h(2))],
        vec![([2, 0, 0], m1(2).checked_add(&h(2))?), ([1, 1, 0], h(2))],
        vec![
            ([3, 0, 0], h(2)),
            ([2, 1, 0], h(-2)),
            ([1, 1, 1], m1(8).checked_add(&h(16))?),
        ],
        vec![
            ([4, 0, 0], one),
            ([3, 1, 0], h(-2)),
            ([2, 2, 0], m1(2).checked_add(&h(2))?),
            ([2, 1, 1], h(2)),
        ],
    ];
    rows.iter()
        .map(|row| {
            let mut acc = TruncatedPoly::zero(ring, ambient.clone());
            for (e, c) in row {
                acc = acc.checked_add(&symmetric(ring, ambient, *e, c)?)?;
            }
            Ok(acc)
        })
        .collect()
}

fn gw_poly_equal(a: &TruncatedPoly<GwRing>, b: &TruncatedPoly<GwRing>) -> Result<bool> {
    let diff = a.checked_sub(b)?;
    for (_, c) in diff.terms() {
        if !gw_equal(c, &GWElement::zero(c.backend()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn borelclasses(backend: Backend) -> Vec<Check> {
    let v = tensor_expand(&[1, 2, 3].map(|i| VirtualBundle::taut(i).expect("index >= 1")));
    let computed: Result<Vec<_>> = [Some(5), None]
        .into_iter()
        .map(|bound| {
            let ambient = Arc::new(AmbientSpec::hp_power(bound, 3)?);
            let classes = gw_borel_classes(&v, &ambient, backend, 4)?;
            Ok((
                ambient.clone(),
                classes,
                threefold_expected(backend, &ambient)?,
            ))
        })
        .collect();
    let labels = [
        "2h(u1+u2+u3)",
        "(2<-1>+2h)Σu_i^2 + 2hΣu_iu_j",
        "2hΣu_i^3 - 2hΣu_i^2u_j + (8<-1>+16h)u1u2u3",
        "Σu_i^4 - 2hΣu_i^3u_j + (2<-1>+2h)Σu_i^2u_j^2 + 2hΣu_i^2u_ju_k",
    ];
    (1..=4)
        .map(|i| {
            let name = format!(
                "threefold product U1*U2*U3 over HP(5)^3 and HP(inf)^3: b{i} = {}",
                labels[i - 1]
            );
            let r = computed.as_ref().map_err(Clone::clone).and_then(|all| {
                for (ambient, classes, expected) in all {
                    let got = classes.class(i);
                    if !gw_poly_equal(&got, &expected[i - 1])? {
                        return Ok(Err(format!("over {ambient} got {}", got.to_text())));
                    }
                }
                Ok(Ok(()))
            });
            Check::from_result(name, r)
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn omega_expected(n: usize, channel: Channel, backend: Backend) -> Result<Scalar> {
    let m = n as u64;
    Ok(match channel {
        Channel::Chow => Scalar::Int(BigInt::from(
            (2 * m + 4) * (2 * m + 3) * (2 * m + 2) * (2 * m + 1),
        )),
        Channel::Witt if n.is_multiple_of(2) => Scalar::Witt(GWElement::zero(backend)),
        Channel::Witt => Scalar::Witt(GWElement::from_int(
            backend,
            -4 * (m as i64 + 2) * (m as i64 + 1),
        )),
        Channel::Gw if n.is_multiple_of(2) => {
            Scalar::Gw(GWElement::hyperbolic(backend, binomial(2 * m + 4, 4) * 12))
        }
        Channel::Gw => Scalar::Gw(psi(n, backend)?),
    })
}

fn scalar_matches(got: &Scalar, want: &Scalar) -> Result<bool> {
    Ok(match (got, want) {
        (Scalar::Int(a), Scalar::Int(b)) => a == b,
        (Scalar::Witt(a), Scalar::Witt(b)) => witt_equal(a, b)?,
        (Scalar::Gw(a), Scalar::Gw(b)) => gw_equal(a, b)?,
        _ => false,
    })
}

fn omega_table(backend: Backend) -> Vec<Check> {
    let cases: Vec<(usize, Channel)> = (0..=21)
        .flat_map(|n| [Channel::Chow, Channel::Witt, Channel::Gw].map(|c| (n, c)))
        .collect();
    let mut checks: Vec<Check> = cases
        .into_par_iter()
        .map(|(n, channel)| {
            let name = format!(
                "desuspension of chi~_{} along (U1-H)(U2-H), n = {n}, {channel} channel",
                2 * n + 4
            );
            let r = (|| {
                let got = omega_s2(n, channel, backend)?.value;
                let want = omega_expected(n, channel, backend)?;
                if !scalar_matches(&got, &want)? {
                    return Ok(Err(format!("got {got}, expected {want}")));
                }
                if let Scalar::Gw(g) = &got {
                    let rank = BigInt::from(
                        (2 * n as u64 + 4)
                            * (2 * n as u64 + 3)
                            * (2 * n as u64 + 2)
                            * (2 * n as u64 + 1),
                    );
                    if g.rank() != rank {
                        return Ok(Err(format!(
                            "rank {} differs from the Chow value {rank}",
                            g.rank()
                        )));
                    }
                }
                Ok(Ok(()))
            })();
            Check::from_result(name, r)
        })
        .collect();
    let alpha = (|| {
        for n in (1..=41).step_by(2) {
            let (rec, closed) = (alpha_sequence(n)?, alpha_closed_form(n));
            if rec != closed {
                return Ok(Err(format!(
                    "n = {n}: recurrence {rec}, closed form {closed}"
                )));
            }
        }
        Ok(Ok(()))
    })();
    checks.push(Check::from_result(
        "signature recurrence equals -4(n+2)(n+1) for odd n <= 41".into(),
        alpha,
    ));
    checks
}

fn chi_comparison() -> Vec<Check> {
    (1..=20usize)
        .into_par_iter()
        .map(|n| {
            let r = chern_chi_comparison(n).map(|ok| ensure(ok, || "polynomials differ".into()));
            Check::from_result(
                format!(
                    "2*chi~_{} equals chi_{} through Chern classes",
                    2 * n,
                    2 * n
                ),
                r,
            )
        })
        .collect()
}

fn factorial(m: u64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * k)
}

fn psi_localization() -> Vec<Check> {
    let q = Backend::Q;
    let mut checks = Vec::new();
    for n in (1..=15).step_by(2) {
        let r = (|| {
            let l = localize(&psi(n, q)?)?;
            Ok(ensure(
                !l.rank.is_zero() && l.sigs.values().all(|s| !s.is_zero()),
                || l.to_string(),
            ))
        })();
        checks.push(Check::from_result(
            format!("psi_{} has nonzero rank and signature", 2 * n + 4),
            r,
        ));
    }
    for n in (3..=15).step_by(2) {
        let r = (|| {
            let mut prod = BigInt::one();
            for m in (1..=n - 2).step_by(2) {
                prod *= psi(m, q)?.rank();
            }
            let want = factorial(2 * n as u64) / 2;
            let f = normalization_factor(n, q)?;
            let inv = BigRational::new(BigInt::from(2), factorial(2 * n as u64));
            Ok(ensure(prod == want && f.rank == inv, || {
                format!("rank {prod}, expected {want}; factor rank {}", f.rank)
            }))
        })();
        checks.push(Check::from_result(
            format!("rank of psi_6*...*psi_{} is ({})!/2", 2 * n, 2 * n),
            r,
        ));
    }
    let torsion = (|| {
        let mut samples = Vec::new();
        for a in [2i64, 3, 5, 6, 7] {
            samples.push(GWElement::angle(q, a)?.checked_sub(&GWElement::one(q))?);
        }
        samples.push(
            GWElement::from_diagonal_ints(q, &[2, -3])?
                .checked_sub(&GWElement::hyperbolic(q, 1))?,
        );
        for s in &samples {
            if !localize(s)?.is_zero() {
                return Ok(Err(format!("{s} does not localize to 0")));
            }
        }
        Ok(Ok(()))
    })();
    checks.push(Check::from_result(
        "rank-0 signature-0 forms localize to 0".into(),
        torsion,
    ));
    for p in [5u64, 7, 11] {
        let r = (|| {
            let b = Backend::fp(p)?;
            for n in (1..=15).step_by(2) {
                if !psi(n, b)?.is_zero_witt() {
                    return Ok(Err(format!("psi_{} is not hyperbolic", 2 * n + 4)));
                }
            }
            Ok(Ok(()))
        })();
        checks.push(Check::from_result(
            format!("psi is hyperbolic over F_{p}"),
            r,
        ));
    }
    checks
}

fn gw_identities() -> Vec<Check> {
    let mut checks = Vec::new();
    for b in [Some(Backend::Q), Backend::fp(5).ok(), Backend::fp(7).ok()] {
        let r = (|| {
            let b = b.ok_or_else(|| Error::InvalidPrime("backend".into()))?;
            let lhs = GWElement::from_diagonal_ints(b, &[-2, -6])?;
            let rhs = GWElement::from_int(b, -3).checked_add(&GWElement::angle(b, 3)?)?;
            Ok(ensure(witt_equal(&lhs, &rhs)?, || {
                format!("{lhs} vs {rhs}")
            }))
        })();
        let label = b.map(|b| b.to_string()).unwrap_or_default();
        checks.push(Check::from_result(
            format!("<-2> + <-6> = -3 + <3> in W over {label}"),
            r,
        ));
    }
    let r = (|| {
        let q = Backend::Q;
        let lhs = GWElement::angle(q, 3)?.scale(&BigInt::from(4));
        Ok(ensure(gw_equal(&lhs, &GWElement::from_int(q, 4))?, || {
            lhs.to_string()
        }))
    })();
    checks.push(Check::from_result("4<3> = 4 in GW(Q)".into(), r));
    let r = (|| {
        let q = Backend::Q;
        let h = GWElement::hyperbolic(q, 1);
        for a in [-1i64, 2, -3, 5, 6, -10, 7, 30, -42, 97] {
            let prod = h.checked_mul(&GWElement::angle(q, a)?)?;
            if !gw_equal(&prod, &h)? {
                return Ok(Err(format!("h*<{a}> = {prod}")));
            }
        }
        Ok(Ok(()))
    })();
    checks.push(Check::from_result("h<a> = h for sample units".into(), r));
    for p in [5u64, 7, 11] {
        let r = (|| {
            let b = Backend::fp(p)?;
            for a in 1..p as i64 {
                let x = GWElement::angle(b, a)?;
                if !x.scale(&BigInt::from(4)).is_zero_witt() {
                    return Ok(Err(format!("4<{a}> is not 0")));
                }
            }
            let x = GWElement::angle(b, 1)?;
            let two = x.scale(&BigInt::from(2));
            let order_four = p % 4 == 3;
            Ok(ensure(two.is_zero_witt() != order_four, || {
                format!("2<1> has the wrong order for p = {p}")
            }))
        })();
        checks.push(Check::from_result(
            format!(
                "W(F_{p}) is 4-torsion with <1> of order {}",
                if p % 4 == 3 { 4 } else { 2 }
            ),
            r,
        ));
    }
    checks
}
