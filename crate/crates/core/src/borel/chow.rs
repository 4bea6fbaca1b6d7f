//! Chow-valued Borel classes through formal Chern roots.
//!
//! Each factor U_i gets roots ±ξ_i with ξ_i^2 = u_i; the roots of a tensor
//! monomial are all sums of one root per factor. The total Chern class is
//! expanded in the ring of polynomials that are linear in every ξ_i.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{check_request, BorelPolynomial};
use crate::bundles::{var_index, Factor, Monomial, VirtualBundle};
use crate::error::{Error, Result};
use crate::poly::{AmbientSpec, PolyRing, TruncatedPoly};
use crate::ring::{Integers, Ring};

/// Z[u_1, ..., u_k][ξ_1, ..., ξ_k] / (ξ_i^2 - u_i), truncated like the ambient.
#[derive(Clone, Debug, PartialEq)]
pub struct RootRing {
    base: PolyRing<Integers>,
}

/// Element keyed by the set of ξ's present (bit i for ξ_i).
#[derive(Clone, Debug)]
pub struct RootElem {
    parts: BTreeMap<u64, TruncatedPoly<Integers>>,
}

impl RootRing {
    pub fn new(ambient: Arc<AmbientSpec>) -> Self {
        assert!(ambient.len() <= 64, "at most 64 root generators");
        RootRing {
            base: PolyRing::new(Integers, ambient),
        }
    }

    /// The ξ-free part of `x`, if nothing else is present.
    pub fn even_part(&self, x: &RootElem) -> Option<TruncatedPoly<Integers>> {
        if x.parts.keys().any(|m| *m != 0) {
            return None;
        }
        Some(x.parts.get(&0).cloned().unwrap_or_else(|| self.base.zero()))
    }

    /// Σ c_i ξ_i.
    pub fn linear(&self, form: &BTreeMap<usize, i64>) -> RootElem {
        let mut out = self.zero();
        for (&i, &c) in form {
            if c != 0 {
                let p = self.base.from_int(&BigInt::from(c));
                out = self.add(
                    &out,
                    &RootElem {
                        parts: BTreeMap::from([(1u64 << i, p)]),
                    },
                );
            }
        }
        out
    }

    fn accumulate(
        &self,
        parts: &mut BTreeMap<u64, TruncatedPoly<Integers>>,
        m: u64,
        p: TruncatedPoly<Integers>,
    ) {
        let entry = parts.entry(m).or_insert_with(|| self.base.zero());
        *entry = self.base.add(entry, &p);
        if entry.is_zero() {
            parts.remove(&m);
        }
    }
}

impl Ring for RootRing {
    type Elem = RootElem;

    fn zero(&self) -> RootElem {
        RootElem {
            parts: BTreeMap::new(),
        }
    }
    fn one(&self) -> RootElem {
        RootElem {
            parts: BTreeMap::from([(0, self.base.one())]),
        }
    }
    fn is_zero(&self, x: &RootElem) -> bool {
        x.parts.values().all(|p| p.is_zero())
    }
    fn add(&self, a: &RootElem, b: &RootElem) -> RootElem {
        let mut parts = a.parts.clone();
        for (m, p) in &b.parts {
            self.accumulate(&mut parts, *m, p.clone());
        }
        RootElem { parts }
    }
    fn neg(&self, a: &RootElem) -> RootElem {
        RootElem {
            parts: a.parts.iter().map(|(m, p)| (*m, p.neg())).collect(),
        }
    }
    fn mul(&self, a: &RootElem, b: &RootElem) -> RootElem {
        let mut parts = BTreeMap::new();
        for (m1, p1) in &a.parts {
            for (m2, p2) in &b.parts {
                let mut p = self.base.mul(p1, p2);
                let mut both = m1 & m2;
                while both != 0 && !p.is_zero() {
                    let i = both.trailing_zeros() as usize;
                    p = self.base.mul(&p, &self.base.var(i));
                    both &= both - 1;
                }
                if !p.is_zero() {
                    self.accumulate(&mut parts, m1 ^ m2, p);
                }
            }
        }
        RootElem { parts }
    }
    fn from_int(&self, n: &BigInt) -> RootElem {
        let mut out = self.zero();
        if !n.is_zero() {
            out.parts.insert(0, self.base.from_int(n));
        }
        out
    }
}

/// Chern roots of a monomial as linear forms in the ξ's.
fn roots(m: &Monomial) -> Vec<BTreeMap<usize, i64>> {
    let mut out = vec![BTreeMap::new()];
    for f in m.factors() {
        let shifts: Vec<(Option<usize>, i64)> = match *f {
            Factor::U(i) => vec![(Some(var_index(i)), 1), (Some(var_index(i)), -1)],
            Factor::H => vec![(None, 0), (None, 0)],
            Factor::Sym3(i) => [3, 1, -1, -3]
                .iter()
                .map(|&c| (Some(var_index(i)), c))
                .collect(),
        };
        let mut next = Vec::with_capacity(out.len() * shifts.len());
        for r in &out {
            for (var, c) in &shifts {
                let mut r = r.clone();
                if let Some(i) = var {
                    *r.entry(*i).or_insert(0) += c;
                }
                next.push(r);
            }
        }
        out = next;
    }
    out
}

/// Borel classes of one monomial; no precision check.
pub(crate) fn chow_monomial(
    m: &Monomial,
    ambient: &Arc<AmbientSpec>,
    max_degree: usize,
) -> Result<BorelPolynomial<Integers>> {
    let ring = RootRing::new(ambient.clone());
    let len = 2 * max_degree + 1;
    let mut c = vec![ring.zero(); len];
    c[0] = ring.one();
    for r in roots(m) {
        let r = ring.linear(&r);
        if ring.is_zero(&r) {
            continue;
        }
        for k in (1..len).rev() {
            if c[k - 1].parts.is_empty() {
                continue;
            }
            c[k] = ring.add(&c[k], &ring.mul(&r, &c[k - 1]));
        }
    }
    let mut classes = Vec::with_capacity(max_degree);
    for (k, ck) in c.iter().enumerate().skip(1) {
        let even = ring.even_part(ck).ok_or_else(|| {
            Error::DerivationInconsistent(format!("Chern class c{k} of {m} involves odd roots"))
        })?;
        if k % 2 == 1 {
            if !even.is_zero() {
                return Err(Error::DerivationInconsistent(format!(
                    "odd Chern class c{k} of {m} is nonzero"
                )));
            }
            continue;
        }
        let sign = if (k / 2) % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        classes.push(even.scale_int(&sign));
    }
    BorelPolynomial::from_classes(Integers, ambient.clone(), max_degree, classes)
}

/// Chow-valued Borel polynomial of a virtual bundle, through degree `max_degree`.
pub fn chow_borel_poly(
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    max_degree: usize,
) -> Result<BorelPolynomial<Integers>> {
    check_request(v, ambient, max_degree)?;
    let mut acc = BorelPolynomial::one(Integers, ambient.clone(), max_degree);
    for (m, n) in v.terms() {
        acc = acc.mul(&chow_monomial(m, ambient, max_degree)?.power(n)?)?;
    }
    Ok(acc)
}
