//! Witt-valued Borel classes by rewrite rules.
//!
//! A monomial with an even number of symplectic factors carries a symmetric
//! form; its classes are those of its hyperbolization, i.e. of the monomial
//! tensored once more with H. After that step every monomial is symplectic
//! and is reduced by:
//!
//! * X ⊗ H ⊗ H = X ⊗ <1,1,-1,-1>, so b(<a>X⊗H⊗H) = b(<a>X)^2 b(<-a>X)^2;
//! * a single U_i: 1 + u_i t;
//! * Sym3(U_i): the derived classes;
//! * three tautological factors: the derived cube or threefold classes;
//! * H alone: 1;
//! * U_a ⊗ U_b ⊗ H: b_2 = -2(x^2 + y^2), b_4 = (x^2 - y^2)^2 with x = u_a, y = u_b;
//! * twisting by <c> multiplies odd classes by <c>.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::derive::{tables, WittTables};
use super::{check_request, BorelPolynomial};
use crate::bundles::{var_index, Factor, Monomial, VirtualBundle};
use crate::error::{Error, Result};
use crate::gw::{Backend, SquareClass, WittRing};
use crate::poly::{AmbientSpec, PolyRing, TruncatedPoly};
use crate::ring::Ring;

struct Ctx<'a> {
    ambient: &'a Arc<AmbientSpec>,
    backend: Backend,
    max_degree: usize,
    tables: Option<&'a WittTables>,
    ring: WittRing,
}

impl Ctx<'_> {
    fn one(&self) -> BorelPolynomial<WittRing> {
        BorelPolynomial::one(self.ring, self.ambient.clone(), self.max_degree)
    }

    fn var(&self, i: usize) -> TruncatedPoly<WittRing> {
        TruncatedPoly::var(self.ring, self.ambient.clone(), var_index(i))
    }

    fn tables(&self, m: &Monomial) -> Result<&WittTables> {
        self.tables
            .ok_or_else(|| Error::UnsupportedBundle(format!("{m} needs derived classes")))
    }

    fn series(&self, classes: Vec<TruncatedPoly<WittRing>>) -> Result<BorelPolynomial<WittRing>> {
        BorelPolynomial::from_classes(self.ring, self.ambient.clone(), self.max_degree, classes)
    }

    /// Pull a universal series on HP(inf)^k back along factor i -> U index.
    fn pull(
        &self,
        universal: &BorelPolynomial<WittRing>,
        indices: &[usize],
    ) -> Result<BorelPolynomial<WittRing>> {
        let assignment: Vec<Option<usize>> = indices.iter().map(|&i| Some(var_index(i))).collect();
        Ok(universal
            .specialize(self.ambient, &assignment)?
            .with_max_degree(self.max_degree))
    }
}

fn twist_series(b: &BorelPolynomial<WittRing>, class: &SquareClass) -> BorelPolynomial<WittRing> {
    if class.is_one() {
        return b.clone();
    }
    let ring = *b.coeff_ring();
    b.map_classes(|i, c| {
        if i % 2 == 1 {
            c.map_coeffs(ring, |x| x.twist(class).witt_reduced())
        } else {
            c.clone()
        }
    })
}

fn symplectic(
    ctx: &Ctx,
    m: &Monomial,
    twist: &SquareClass,
    sym: &[Factor],
    j: usize,
) -> Result<BorelPolynomial<WittRing>> {
    if j >= 2 {
        let x = symplectic(ctx, m, twist, sym, j - 2)?;
        let minus = ctx.backend.mul_classes(twist, &ctx.backend.minus_one());
        let y = symplectic(ctx, m, &minus, sym, j - 2)?;
        return x.mul(&x)?.mul(&y)?.mul(&y);
    }
    let unsupported = || Error::UnsupportedBundle(format!("no Witt-channel rule for {m}"));
    let untwisted = match (j, sym) {
        (0, [Factor::U(i)]) => ctx.series(vec![ctx.var(*i)])?,
        (0, [Factor::Sym3(i)]) => ctx.pull(&ctx.tables(m)?.sym3, &[*i])?,
        (0, [Factor::U(a), Factor::U(b), Factor::U(c)]) => {
            let t = ctx.tables(m)?;
            if a == b && b == c {
                ctx.pull(&t.cube, &[*a])?
            } else {
                ctx.pull(&t.threefold, &[*a, *b, *c])?
            }
        }
        (1, []) => ctx.one(),
        (1, [Factor::U(a), Factor::U(b)]) => {
            let ring = PolyRing::new(ctx.ring, ctx.ambient.clone());
            let x2 = ring.pow(&ctx.var(*a), 2);
            let y2 = ring.pow(&ctx.var(*b), 2);
            let b2 = ring.scale(&ring.add(&x2, &y2), &BigInt::from(-2));
            let b4 = ring.pow(&ring.sub(&x2, &y2), 2);
            ctx.series(vec![ring.zero(), b2, ring.zero(), b4])?
        }
        _ => return Err(unsupported()),
    };
    Ok(twist_series(&untwisted, twist))
}

pub(crate) fn witt_monomial(
    m: &Monomial,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
    max_degree: usize,
    tables: Option<&WittTables>,
) -> Result<BorelPolynomial<WittRing>> {
    let ctx = Ctx {
        ambient,
        backend,
        max_degree,
        tables,
        ring: WittRing::new(backend),
    };
    let twist = backend.square_class(&BigRational::from_integer(m.twist().clone()))?;
    let sym: Vec<Factor> = m
        .factors()
        .iter()
        .copied()
        .filter(|f| *f != Factor::H)
        .collect();
    if sym.iter().any(|f| matches!(f, Factor::Sym3(_))) && sym.len() > 1 {
        return Err(Error::UnsupportedBundle(format!(
            "no Witt-channel rule for products involving Sym3: {m}"
        )));
    }
    let mut j = m.count_h();
    if (sym.len() + j).is_multiple_of(2) {
        j += 1;
    }
    symplectic(&ctx, m, &twist, &sym, j)
}

/// Witt-valued Borel polynomial of a virtual bundle, through degree `max_degree`.
pub fn witt_borel_poly(
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
    max_degree: usize,
) -> Result<BorelPolynomial<WittRing>> {
    check_request(v, ambient, max_degree)?;
    let t = tables(backend)?;
    let mut acc = BorelPolynomial::one(WittRing::new(backend), ambient.clone(), max_degree);
    for (m, n) in v.terms() {
        acc = acc.mul(&witt_monomial(m, ambient, backend, max_degree, Some(&t))?.power(n)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::tensor_expand;
    use crate::gw::GWElement;
    use crate::poly::int_poly;
    use crate::ring::Integers;

    fn u(i: usize) -> VirtualBundle {
        VirtualBundle::taut(i).unwrap()
    }

    fn witt(p: &TruncatedPoly<Integers>, b: Backend) -> TruncatedPoly<WittRing> {
        let r = WittRing::new(b);
        p.map_coeffs(r, |n| r.from_int(n))
    }

    #[test]
    fn tensor_pair() {
        let a = Arc::new(AmbientSpec::hp_power(None, 2).unwrap());
        let b = witt_borel_poly(&u(1).tensor(&u(2)), &a, Backend::Q, 6).unwrap();
        assert!(b.class(1).is_zero() && b.class(3).is_zero());
        assert!(b.class(2).equals(&witt(
            &int_poly(&a, &[(&[2, 0], -2), (&[0, 2], -2)]),
            Backend::Q
        )));
        let b4 = int_poly(&a, &[(&[4, 0], 1), (&[2, 2], -2), (&[0, 4], 1)]);
        assert!(b.class(4).equals(&witt(&b4, Backend::Q)));
        assert!(b.class(5).is_zero() && b.class(6).is_zero());
    }

    #[test]
    fn twisted_line() {
        let a = Arc::new(AmbientSpec::hp_power(None, 1).unwrap());
        let v = u(1).twist(&BigInt::from(2)).unwrap();
        let b = witt_borel_poly(&v, &a, Backend::Q, 2).unwrap();
        let two = GWElement::angle(Backend::Q, 2).unwrap();
        assert!(crate::gw::witt_equal(&b.class(1).coefficient(&[1]).unwrap(), &two).unwrap());
    }

    #[test]
    fn tensor_with_four_dim_hyperbolic() {
        let a = Arc::new(AmbientSpec::hp_power(None, 1).unwrap());
        let h = VirtualBundle::hyperbolic();
        let b = witt_borel_poly(&tensor_expand(&[u(1), h.clone(), h]), &a, Backend::Q, 4).unwrap();
        assert!(b.class(1).is_zero() && b.class(3).is_zero());
        assert!(b
            .class(2)
            .equals(&witt(&int_poly(&a, &[(&[2], -2)]), Backend::Q)));
        assert!(b
            .class(4)
            .equals(&witt(&int_poly(&a, &[(&[4], 1)]), Backend::Q)));
    }

    #[test]
    fn unsupported_patterns() {
        let a = Arc::new(AmbientSpec::hp_power(None, 5).unwrap());
        let five = tensor_expand(&[u(1), u(2), u(3), u(4), u(5)]);
        assert!(matches!(
            witt_borel_poly(&five, &a, Backend::Q, 2),
            Err(Error::UnsupportedBundle(_))
        ));
        let mixed = VirtualBundle::sym3(1).unwrap().tensor(&u(2));
        assert!(matches!(
            witt_borel_poly(&mixed, &a, Backend::Q, 2),
            Err(Error::UnsupportedBundle(_))
        ));
    }

    #[test]
    fn hyperbolic_inputs_have_no_odd_classes() {
        let a = Arc::new(AmbientSpec::hp_power(None, 3).unwrap());
        let h = VirtualBundle::hyperbolic();
        for v in [
            u(1).tensor(&h),
            tensor_expand(&[u(1), u(2), u(3), h.clone()]),
            VirtualBundle::sym3(2).unwrap().tensor(&h),
        ] {
            let b = witt_borel_poly(&v, &a, Backend::Q, 6).unwrap();
            for i in [1, 3, 5] {
                assert!(b.class(i).is_zero(), "{v}: b{i}");
            }
        }
    }
}
