//! Additive operations χ̃_{2n} from Newton's identities, their Chern-class
//! counterparts, and the desuspension along (U_1 - H)(U_2 - H).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::borel::{chow_monomial, witt_monomial, Channel, WittTables};
use crate::bundles::{tensor_expand, VirtualBundle};
use crate::error::{Error, Result};
use crate::gw::{gw_equal, int_json, Backend, GWElement, GwRing, WittRing};
use crate::poly::{AmbientSpec, PolyRing, TruncatedPoly};
use crate::ring::{Integers, Ring};

/// χ̃_2, ..., χ̃_{2n} from b_1, b_2, ... (`b[0]` is b_1; missing entries are 0):
/// χ̃_{2k} = Σ_{i<k} (-1)^(i-1) b_i χ̃_{2(k-i)} + (-1)^(k-1) k b_k.
pub fn newton_ladder<R: Ring>(ring: &R, n: usize, b: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if n == 0 {
        return Err(Error::InvalidIndex(
            "power operations start at index 1".into(),
        ));
    }
    let get = |i: usize| b.get(i - 1).filter(|x| !ring.is_zero(x));
    let mut chi: Vec<R::Elem> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = ring.zero();
        for i in 1..k {
            let Some(bi) = get(i) else { continue };
            let prev = &chi[k - i - 1];
            if ring.is_zero(prev) {
                continue;
            }
            let term = ring.mul(bi, prev);
            acc = if i % 2 == 1 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        if let Some(bk) = get(k) {
            let term = ring.scale(bk, &BigInt::from(k));
            acc = if k % 2 == 1 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        chi.push(acc);
    }
    Ok(chi)
}

/// The n-th Newton power sum of a series with coefficients `b`.
pub fn chi_from_series<R: Ring>(ring: &R, n: usize, b: &[R::Elem]) -> Result<R::Elem> {
    Ok(newton_ladder(ring, n, b)?.pop().expect("n >= 1"))
}

/// χ̃_{2n} in one of the three channels.
#[derive(Clone, Debug)]
pub enum ChannelPoly {
    Chow(TruncatedPoly<Integers>),
    Witt(TruncatedPoly<WittRing>),
    Gw(TruncatedPoly<GwRing>),
}

impl ChannelPoly {
    pub fn to_text(&self) -> String {
        match self {
            ChannelPoly::Chow(p) => p.to_text(),
            ChannelPoly::Witt(p) => p.to_text(),
            ChannelPoly::Gw(p) => p.to_text(),
        }
    }

    pub fn to_latex(&self) -> String {
        match self {
            ChannelPoly::Chow(p) => p.to_latex(),
            ChannelPoly::Witt(p) => p.to_latex(),
            ChannelPoly::Gw(p) => p.to_latex(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ChannelPoly::Chow(p) => p.to_json(),
            ChannelPoly::Witt(p) => p.to_json(),
            ChannelPoly::Gw(p) => p.to_json(),
        }
    }
}

fn additive<R: Ring>(
    coeffs: R,
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    per_monomial: impl Fn(&crate::bundles::Monomial) -> Result<TruncatedPoly<R>>,
) -> Result<TruncatedPoly<R>> {
    crate::borel::check_indices(v, ambient)?;
    let ring = PolyRing::new(coeffs, ambient.clone());
    let mut acc = ring.zero();
    for (m, k) in v.terms() {
        acc = ring.add(&acc, &ring.scale(&per_monomial(m)?, k));
    }
    Ok(acc)
}

pub fn chi_chow(
    n: usize,
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
) -> Result<TruncatedPoly<Integers>> {
    additive(Integers, v, ambient, |m| {
        let b = chow_monomial(m, ambient, n)?;
        chi_from_series(b.poly_ring(), n, b.classes())
    })
}

pub fn chi_witt(
    n: usize,
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
) -> Result<TruncatedPoly<WittRing>> {
    let t = witt_tables(backend)?;
    additive(WittRing::new(backend), v, ambient, |m| {
        let b = witt_monomial(m, ambient, backend, n, Some(&t))?;
        chi_from_series(b.poly_ring(), n, b.classes())
    })
}

/// GW channel as the lift of the Chow and Witt values of χ̃_{2n}.
pub fn chi_gw(
    n: usize,
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
) -> Result<TruncatedPoly<GwRing>> {
    crate::borel::lift_poly(
        &chi_chow(n, v, ambient)?,
        &chi_witt(n, v, ambient, backend)?,
    )
}

/// GW channel by Newton's identities applied to GW-valued Borel classes.
pub fn chi_gw_direct(
    n: usize,
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
) -> Result<TruncatedPoly<GwRing>> {
    additive(GwRing::new(backend), v, ambient, |m| {
        let single = VirtualBundle::from_monomial(m.clone());
        let b = crate::borel::gw_unchecked(&single, ambient, backend, n)?;
        chi_from_series(b.poly_ring(), n, b.classes())
    })
}

pub fn chi_eval(
    n: usize,
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    channel: Channel,
    backend: Backend,
) -> Result<ChannelPoly> {
    Ok(match channel {
        Channel::Chow => ChannelPoly::Chow(chi_chow(n, v, ambient)?),
        Channel::Witt => ChannelPoly::Witt(chi_witt(n, v, ambient, backend)?),
        Channel::Gw => ChannelPoly::Gw(chi_gw(n, v, ambient, backend)?),
    })
}

fn witt_tables(backend: Backend) -> Result<Arc<WittTables>> {
    crate::borel::derive::tables(backend)
}

/// Checks χ_{2n} = 2 χ̃_{2n} in Z[b_1, ..., b_n] with c_{2i} = (-1)^i b_i and
/// odd Chern classes zero.
pub fn chern_chi_comparison(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidIndex("comparison starts at n = 1".into()));
    }
    let ambient = Arc::new(AmbientSpec::new(
        (1..=n).map(|i| (format!("b{i}"), None)).collect(),
    )?);
    let ring = PolyRing::new(Integers, ambient);
    let b: Vec<_> = (0..n).map(|i| ring.var(i)).collect();
    let c: Vec<_> = (1..=2 * n)
        .map(|k| match (k % 2, (k / 2) % 2) {
            (1, _) => ring.zero(),
            (_, 0) => b[k / 2 - 1].clone(),
            _ => ring.neg(&b[k / 2 - 1]),
        })
        .collect();
    let chi = chi_from_series(&ring, 2 * n, &c)?;
    let chit = chi_from_series(&ring, n, &b)?;
    Ok(chi.equals(&ring.scale(&chit, &BigInt::from(2))))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Int(BigInt),
    Witt(GWElement),
    Gw(GWElement),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Witt(w) => write!(f, "{}", w.witt_reduced()),
            Scalar::Gw(g) => write!(f, "{g}"),
        }
    }
}

impl Scalar {
    pub fn to_latex(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Witt(w) => w.witt_reduced().to_latex(),
            Scalar::Gw(g) => g.to_latex(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Int(n) => int_json(n),
            Scalar::Witt(w) => w.witt_reduced().to_json(),
            Scalar::Gw(g) => g.to_json(),
        }
    }
}

/// The scalar by which the desuspended operation acts on χ̃_{2n}.
#[derive(Clone, Debug, PartialEq)]
pub struct StableCoefficient {
    pub n: usize,
    pub channel: Channel,
    pub value: Scalar,
}

impl StableCoefficient {
    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "channel": self.channel.to_string(), "value": self.value.to_json() })
    }
}

/// Ambient HP(1) x HP(1) x HP(n+3) and the bundle (U1 - H)(U2 - H)U3.
pub fn omega_setup(n: usize) -> Result<(Arc<AmbientSpec>, VirtualBundle)> {
    let m = u32::try_from(n + 3).map_err(|_| Error::InvalidIndex(n.to_string()))?;
    let ambient = Arc::new(AmbientSpec::hp_product(&[Some(1), Some(1), Some(m)])?);
    let h = VirtualBundle::hyperbolic();
    let v = tensor_expand(&[
        VirtualBundle::taut(1)?.sub(&h),
        VirtualBundle::taut(2)?.sub(&h),
        VirtualBundle::taut(3)?,
    ]);
    Ok((ambient, v))
}

/// Coefficient of u1 u2 u3^n, after checking the u1 u2 slice has no other terms.
fn extract<R: Ring>(p: &TruncatedPoly<R>, n: usize) -> Result<R::Elem> {
    for (e, c) in p.terms() {
        if e[0] == 1 && e[1] == 1 && e[2] as usize != n {
            return Err(Error::ProportionalityFailure(format!(
                "u1*u2*u3^{} has coefficient {:?}, only u3^{n} may appear",
                e[2], c
            )));
        }
    }
    p.coefficient(&[1, 1, n as u32])
}

pub fn omega_s2(n: usize, channel: Channel, backend: Backend) -> Result<StableCoefficient> {
    let (ambient, v) = omega_setup(n)?;
    let k = n + 2;
    let value = match channel {
        Channel::Chow => Scalar::Int(extract(&chi_chow(k, &v, &ambient)?, n)?),
        Channel::Witt => {
            Scalar::Witt(extract(&chi_witt(k, &v, &ambient, backend)?, n)?.witt_reduced())
        }
        Channel::Gw => {
            let direct = extract(&chi_gw_direct(k, &v, &ambient, backend)?, n)?;
            let chow = extract(&chi_chow(k, &v, &ambient)?, n)?;
            let witt = extract(&chi_witt(k, &v, &ambient, backend)?, n)?;
            let lifted = crate::borel::lift_scalar(&chow, &witt)?;
            if !gw_equal(&direct, &lifted)? {
                return Err(Error::RouteMismatch(format!(
                    "n = {n}: Newton over GW classes gives {direct}, the lift gives {lifted}"
                )));
            }
            Scalar::Gw(lifted)
        }
    };
    Ok(StableCoefficient { n, channel, value })
}

/// α_n by the recurrence α_n = 2α_{n-2} - α_{n-4} - 32, α_1 = -24, α_3 = -80.
pub fn alpha_sequence(n: usize) -> Result<BigInt> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidIndex(format!(
            "α is indexed by odd n, got {n}"
        )));
    }
    let (mut a, mut b) = (BigInt::from(-24), BigInt::from(-80));
    if n == 1 {
        return Ok(a);
    }
    for _ in (5..=n).step_by(2) {
        let next = &b * 2 - &a - 32;
        a = b;
        b = next;
    }
    Ok(b)
}

/// -4(n+2)(n+1).
pub fn alpha_closed_form(n: usize) -> BigInt {
    BigInt::from(-4) * (n + 2) * (n + 1)
}

/// ψ_{2n+4} = 4(n+2)(n+1)(<-1> + (2n^2+4n+1)h) for odd n.
pub fn psi(n: usize, backend: Backend) -> Result<GWElement> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidIndex(format!(
            "ψ is defined for odd n, got {n}"
        )));
    }
    let n_ = BigInt::from(n);
    let scale = BigInt::from(4) * (&n_ + 2) * (&n_ + 1);
    let inner = GWElement::unit(backend, backend.minus_one())
        .checked_add(&GWElement::hyperbolic(backend, &n_ * &n_ * 2 + &n_ * 4 + 1))?;
    Ok(inner.scale(&scale))
}

/// m!! = m (m-2) (m-4) ..., with 0!! = 1.
pub fn double_factorial(m: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = m;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::witt_equal;
    use crate::poly::int_poly;
    use num_traits::Zero;

    fn poly_ring(k: usize) -> PolyRing<Integers> {
        let a = AmbientSpec::new((1..=k).map(|i| (format!("b{i}"), None)).collect()).unwrap();
        PolyRing::new(Integers, Arc::new(a))
    }

    #[test]
    fn low_newton_polynomials() {
        let r = poly_ring(3);
        let b: Vec<_> = (0..3).map(|i| r.var(i)).collect();
        let a = r.ambient.clone();
        let chi4 = chi_from_series(&r, 2, &b).unwrap();
        assert!(chi4.equals(&int_poly(&a, &[(&[2, 0, 0], 1), (&[0, 1, 0], -2)])));
        let chi6 = chi_from_series(&r, 3, &b).unwrap();
        assert!(chi6.equals(&int_poly(
            &a,
            &[(&[3, 0, 0], 1), (&[1, 1, 0], -3), (&[0, 0, 1], 3)]
        )));
    }

    #[test]
    fn single_root_power_sums() {
        let x = BigInt::from(7);
        for n in 1..8 {
            assert_eq!(
                chi_from_series(&Integers, n, std::slice::from_ref(&x)).unwrap(),
                x.pow(n as u32)
            );
        }
        let b = [BigInt::zero(), BigInt::zero(), BigInt::from(5)];
        assert!(chi_from_series(&Integers, 2, &b).unwrap().is_zero());
        assert!(chi_from_series(&Integers, 0, &b).is_err());
    }

    #[test]
    fn chi_of_tautological() {
        let a = Arc::new(AmbientSpec::hp_power(Some(4), 1).unwrap());
        let u = VirtualBundle::taut(1).unwrap();
        assert!(chi_chow(1, &u, &a)
            .unwrap()
            .equals(&int_poly(&a, &[(&[1], 1)])));
        assert!(chi_chow(3, &u, &a)
            .unwrap()
            .equals(&int_poly(&a, &[(&[3], 1)])));
    }

    #[test]
    fn comparison_small() {
        for n in 1..=6 {
            assert!(chern_chi_comparison(n).unwrap());
        }
    }

    #[test]
    fn alpha_and_psi() {
        assert_eq!(alpha_sequence(1).unwrap(), BigInt::from(-24));
        assert_eq!(alpha_sequence(3).unwrap(), BigInt::from(-80));
        assert_eq!(alpha_sequence(5).unwrap(), BigInt::from(-168));
        assert!(alpha_sequence(4).is_err());
        let p = psi(1, Backend::Q).unwrap();
        assert_eq!(p.rank(), BigInt::from(360));
        assert_eq!(p.to_string(), "24*<-1> + 168*h");
        assert!(psi(2, Backend::Q).is_err());
        assert!(witt_equal(
            &psi(3, Backend::Fp(7)).unwrap(),
            &GWElement::zero(Backend::Fp(7))
        )
        .unwrap());
        assert_eq!(double_factorial(3), BigInt::from(3));
        assert_eq!(double_factorial(1), BigInt::from(1));
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(6), BigInt::from(48));
    }

    #[test]
    fn omega_first_values() {
        let c = omega_s2(1, Channel::Chow, Backend::Q).unwrap();
        assert_eq!(c.value, Scalar::Int(BigInt::from(360)));
        let w = omega_s2(1, Channel::Witt, Backend::Q).unwrap();
        let Scalar::Witt(w) = w.value else { panic!() };
        assert!(witt_equal(&w, &GWElement::from_int(Backend::Q, -24)).unwrap());
        let g = omega_s2(1, Channel::Gw, Backend::Q).unwrap();
        let Scalar::Gw(g) = g.value else { panic!() };
        assert!(gw_equal(&g, &psi(1, Backend::Q).unwrap()).unwrap());
        let w0 = omega_s2(0, Channel::Witt, Backend::Q).unwrap();
        let Scalar::Witt(w0) = w0.value else { panic!() };
        assert!(w0.is_zero_witt());
    }
}
