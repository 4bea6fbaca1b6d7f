//! GW(k) with the ψ's inverted, through its coordinates: the rank and one
//! signature per ordering, each a rational number.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gw::{Backend, GWElement, Ordering};
use crate::operations::psi;
use crate::poly::CoeffFormat;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalizedGW {
    pub rank: BigRational,
    pub sigs: BTreeMap<String, BigRational>,
}

impl LocalizedGW {
    pub fn from_int(orderings: &[Ordering], n: &BigInt) -> Self {
        let q = BigRational::from_integer(n.clone());
        LocalizedGW {
            rank: q.clone(),
            sigs: orderings
                .iter()
                .map(|o| (o.label.clone(), q.clone()))
                .collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        LocalizedGW {
            rank: f(&self.rank, &other.rank),
            sigs: self
                .sigs
                .iter()
                .map(|(k, v)| (k.clone(), f(v, other.sigs.get(k).expect("same orderings"))))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        LocalizedGW {
            rank: -&self.rank,
            sigs: self.sigs.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank.is_zero() && self.sigs.values().all(Zero::is_zero)
    }

    pub fn invert(&self) -> Result<Self> {
        if self.rank.is_zero() || self.sigs.values().any(Zero::is_zero) {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(LocalizedGW {
            rank: self.rank.recip(),
            sigs: self
                .sigs
                .iter()
                .map(|(k, v)| (k.clone(), v.recip()))
                .collect(),
        })
    }

    pub fn to_json(&self) -> Value {
        let sigs: Map<String, Value> = self
            .sigs
            .iter()
            .map(|(k, v)| (k.clone(), json!(v.to_string())))
            .collect();
        json!({ "rank": self.rank.to_string(), "sigs": sigs })
    }

    fn render(&self, latex: bool) -> String {
        let q = |x: &BigRational| {
            if latex && !x.is_integer() {
                let sign = if x < &BigRational::zero() { "-" } else { "" };
                format!(
                    "{sign}\\tfrac{{{}}}{{{}}}",
                    x.numer().magnitude(),
                    x.denom()
                )
            } else {
                x.to_string()
            }
        };
        let mut parts = vec![format!("rank {}", q(&self.rank))];
        for (k, v) in &self.sigs {
            parts.push(format!("{k} {}", q(v)));
        }
        format!("[{}]", parts.join("; "))
    }
}

impl fmt::Display for LocalizedGW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// (rank, signatures) of a GW element; needs at least one ordering.
pub fn localize(a: &GWElement) -> Result<LocalizedGW> {
    let orderings = a.backend().orderings();
    if orderings.is_empty() {
        return Err(Error::NoOrderings);
    }
    let mut sigs = BTreeMap::new();
    for o in &orderings {
        sigs.insert(o.label.clone(), BigRational::from_integer(a.signature(o)?));
    }
    Ok(LocalizedGW {
        rank: BigRational::from_integer(a.rank()),
        sigs,
    })
}

/// The localized ring as a coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedRing {
    orderings: Vec<Ordering>,
}

impl LocalizedRing {
    pub fn new(backend: Backend) -> Result<Self> {
        let orderings = backend.orderings();
        if orderings.is_empty() {
            return Err(Error::NoOrderings);
        }
        Ok(LocalizedRing { orderings })
    }

    pub fn from_rational(&self, q: &BigRational) -> LocalizedGW {
        LocalizedGW {
            rank: q.clone(),
            sigs: self
                .orderings
                .iter()
                .map(|o| (o.label.clone(), q.clone()))
                .collect(),
        }
    }
}

impl Ring for LocalizedRing {
    type Elem = LocalizedGW;

    fn zero(&self) -> LocalizedGW {
        LocalizedGW::from_int(&self.orderings, &BigInt::zero())
    }
    fn one(&self) -> LocalizedGW {
        LocalizedGW::from_int(&self.orderings, &BigInt::one())
    }
    fn is_zero(&self, x: &LocalizedGW) -> bool {
        x.is_zero()
    }
    fn add(&self, a: &LocalizedGW, b: &LocalizedGW) -> LocalizedGW {
        a.add(b)
    }
    fn neg(&self, a: &LocalizedGW) -> LocalizedGW {
        a.neg()
    }
    fn mul(&self, a: &LocalizedGW, b: &LocalizedGW) -> LocalizedGW {
        a.mul(b)
    }
    fn from_int(&self, n: &BigInt) -> LocalizedGW {
        LocalizedGW::from_int(&self.orderings, n)
    }
}

impl CoeffFormat for LocalizedRing {
    fn format(&self, x: &LocalizedGW, latex: bool) -> String {
        x.render(latex)
    }
    fn json(&self, x: &LocalizedGW) -> Value {
        x.to_json()
    }
}

/// Inverse of ψ_6 ψ_10 ... ψ_{2n} in the localized ring, for odd n ≥ 3; the
/// empty product for n = 1.
pub fn normalization_factor(n: usize, backend: Backend) -> Result<LocalizedGW> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidIndex(format!(
            "normalization is defined for odd n, got {n}"
        )));
    }
    let ring = LocalizedRing::new(backend)?;
    let mut acc = ring.one();
    for m in (1..n.saturating_sub(1)).step_by(2) {
        acc = acc.mul(&localize(&psi(m, backend)?)?);
    }
    acc.invert()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn basic_localizations() {
        let h = localize(&GWElement::hyperbolic(Backend::Q, 1)).unwrap();
        assert_eq!(h.rank, q(2, 1));
        assert_eq!(h.sigs["P0"], q(0, 1));
        assert!(h.invert().is_err());
        let p = localize(&psi(1, Backend::Q).unwrap()).unwrap();
        assert_eq!(p.to_json(), json!({"rank": "360", "sigs": {"P0": "-24"}}));
        let inv = p.invert().unwrap();
        assert_eq!(
            inv.to_json(),
            json!({"rank": "1/360", "sigs": {"P0": "-1/24"}})
        );
        assert!(matches!(
            localize(&GWElement::one(Backend::Fp(5))),
            Err(Error::NoOrderings)
        ));
    }

    #[test]
    fn normalization() {
        let f3 = normalization_factor(3, Backend::Q).unwrap();
        assert_eq!(f3.rank, q(1, 360));
        assert_eq!(f3.sigs["P0"], q(-1, 24));
        let f5 = normalization_factor(5, Backend::Q).unwrap();
        assert_eq!(f5.rank, q(2, 3_628_800));
        assert!(normalization_factor(4, Backend::Q).is_err());
        assert_eq!(normalization_factor(1, Backend::Q).unwrap().rank, q(1, 1));
    }
}
