//! Gluing Chow and Witt data into Grothendieck–Witt coefficients.
//!
//! A GW element is determined by its rank and its Witt class. Given an
//! integer n and a Witt class w with rank(w̃) ≡ n mod 2 for some lift w̃,
//! the unique GW element is w̃ + ((n - rank w̃)/2)·h.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::derive::tables;
use super::{check_request, chow_monomial, witt_monomial, BorelPolynomial};
use crate::bundles::VirtualBundle;
use crate::error::{Error, Result};
use crate::gw::{Backend, GWElement, GwRing, WittRing};
use crate::poly::{AmbientSpec, Exponent, TruncatedPoly};
use crate::ring::Integers;

pub fn lift_scalar(chow: &BigInt, witt: &GWElement) -> Result<GWElement> {
    let (half, rem) = (chow - witt.rank()).div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::ParityMismatch {
            chow: chow.to_string(),
            witt_rank: witt.rank().to_string(),
        });
    }
    witt.checked_add(&GWElement::hyperbolic(witt.backend(), half))
}

pub fn lift_poly(
    chow: &TruncatedPoly<Integers>,
    witt: &TruncatedPoly<WittRing>,
) -> Result<TruncatedPoly<GwRing>> {
    if chow.ambient() != witt.ambient() {
        return Err(Error::AmbientMismatch(format!(
            "{} vs {}",
            chow.ambient(),
            witt.ambient()
        )));
    }
    let backend = witt.ring().backend;
    let ring = GwRing::new(backend);
    let mut exps: Vec<&Exponent> = chow
        .terms()
        .map(|(e, _)| e)
        .chain(witt.terms().map(|(e, _)| e))
        .collect();
    exps.sort();
    exps.dedup();
    let mut out = TruncatedPoly::zero(ring, chow.ambient().clone());
    for e in exps {
        let c = lift_scalar(&chow.coefficient(e)?, &witt.coefficient(e)?)?;
        let m = TruncatedPoly::monomial(ring, chow.ambient().clone(), e.clone(), c);
        out = out.checked_add(&m)?;
    }
    Ok(out)
}

pub fn lift_to_gw(
    chow: &BorelPolynomial<Integers>,
    witt: &BorelPolynomial<WittRing>,
) -> Result<BorelPolynomial<GwRing>> {
    if chow.max_degree() != witt.max_degree() {
        return Err(Error::InvalidIndex(format!(
            "series lengths differ: {} and {}",
            chow.max_degree(),
            witt.max_degree()
        )));
    }
    let classes = chow
        .classes()
        .iter()
        .zip(witt.classes())
        .map(|(c, w)| lift_poly(c, w))
        .collect::<Result<Vec<_>>>()?;
    BorelPolynomial::from_classes(
        GwRing::new(witt.coeff_ring().backend),
        chow.ambient().clone(),
        chow.max_degree(),
        classes,
    )
}

/// Grothendieck–Witt-valued Borel polynomial, monomial by monomial.
pub fn gw_borel_classes(
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
    max_degree: usize,
) -> Result<BorelPolynomial<GwRing>> {
    check_request(v, ambient, max_degree)?;
    gw_unchecked(v, ambient, backend, max_degree)
}

pub(crate) fn gw_unchecked(
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
    max_degree: usize,
) -> Result<BorelPolynomial<GwRing>> {
    let t = tables(backend)?;
    let mut acc = BorelPolynomial::one(GwRing::new(backend), ambient.clone(), max_degree);
    for (m, n) in v.terms() {
        let c = chow_monomial(m, ambient, max_degree)?;
        let w = witt_monomial(m, ambient, backend, max_degree, Some(&t))?;
        acc = acc.mul(&lift_to_gw(&c, &w)?.power(n)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::gw_equal;

    #[test]
    fn scalar_lifts() {
        let q = Backend::Q;
        let h2 = GWElement::hyperbolic(q, 2);
        assert!(gw_equal(
            &lift_scalar(&BigInt::from(4), &GWElement::zero(q)).unwrap(),
            &h2
        )
        .unwrap());
        let w = GWElement::from_int(q, -8);
        let expect = GWElement::angle(q, -1)
            .unwrap()
            .scale(&BigInt::from(8))
            .checked_add(&GWElement::hyperbolic(q, 16))
            .unwrap();
        assert!(gw_equal(&lift_scalar(&BigInt::from(40), &w).unwrap(), &expect).unwrap());
        assert!(matches!(
            lift_scalar(&BigInt::from(3), &GWElement::zero(q)),
            Err(Error::ParityMismatch { .. })
        ));
    }
}
