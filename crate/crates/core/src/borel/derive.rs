//! Witt classes of Sym3(U), of the cube U⊗U⊗U and of U_1⊗U_2⊗U_3, found by
//! undetermined coefficients.
//!
//! Each b_k of the threefold product is an unknown combination of monomial
//! symmetric functions m_λ(x_1, x_2, x_3). Pulling back along x ↦ (x, 0, 0)
//! and (x, y) ↦ (x, y, 0) gives U⊗H⊗H and U_1⊗U_2⊗H, whose classes follow
//! from the basic rules. Pulling back along the diagonal gives the cube,
//! which splits as <2>U ⊕ <6>U ⊕ Sym3(U). Degrees 1 and 2 are fixed by the
//! first two pullbacks; their diagonal fixes the low classes of the cube and
//! hence those of Sym3(U), which in turn give the full cube and the diagonal
//! equations in degrees 3 and 4.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::witt::witt_monomial;
use super::BorelPolynomial;
use crate::bundles::{Factor, Monomial};
use crate::error::{Error, Result};
use crate::gw::{witt_equal, Backend, GWElement, Ordering, WittRing};
use crate::poly::{AmbientSpec, Exponent, PolyRing, TruncatedPoly};
use crate::ring::{Integers, Ring};

const DEGREE: usize = 4;

/// Universal Witt-channel series, each over HP(inf)^k for the right k.
#[derive(Clone, Debug)]
pub struct WittTables {
    pub backend: Backend,
    pub sym3: BorelPolynomial<WittRing>,
    pub cube: BorelPolynomial<WittRing>,
    pub threefold: BorelPolynomial<WittRing>,
}

fn cache() -> &'static Mutex<HashMap<Backend, Arc<WittTables>>> {
    static CACHE: OnceLock<Mutex<HashMap<Backend, Arc<WittTables>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn tables(backend: Backend) -> Result<Arc<WittTables>> {
    if let Some(t) = cache().lock().expect("table cache").get(&backend) {
        return Ok(t.clone());
    }
    let t = Arc::new(derive(backend)?);
    let mut guard = cache().lock().expect("table cache");
    Ok(guard.entry(backend).or_insert(t).clone())
}

fn single_factor(ambient: &Arc<AmbientSpec>, what: &str) -> Result<()> {
    if ambient.len() != 1 {
        return Err(Error::AmbientMismatch(format!(
            "{what} lives on one factor, got {ambient}"
        )));
    }
    Ok(())
}

/// Witt classes of Sym3(U) over the given one-factor ambient.
pub fn derive_sym3_classes(
    backend: Backend,
    ambient: &Arc<AmbientSpec>,
) -> Result<BorelPolynomial<WittRing>> {
    single_factor(ambient, "Sym3(U)")?;
    tables(backend)?.sym3.specialize(ambient, &[Some(0)])
}

/// Witt classes of U⊗U⊗U over the given one-factor ambient.
pub fn derive_cube_classes(
    backend: Backend,
    ambient: &Arc<AmbientSpec>,
) -> Result<BorelPolynomial<WittRing>> {
    single_factor(ambient, "U⊗U⊗U")?;
    tables(backend)?.cube.specialize(ambient, &[Some(0)])
}

/// Witt classes of U_1⊗U_2⊗U_3 over the given three-factor ambient.
pub fn derive_threefold_witt(
    backend: Backend,
    ambient: &Arc<AmbientSpec>,
) -> Result<BorelPolynomial<WittRing>> {
    if ambient.len() != 3 {
        return Err(Error::AmbientMismatch(format!(
            "U1⊗U2⊗U3 needs three factors, got {ambient}"
        )));
    }
    tables(backend)?
        .threefold
        .specialize(ambient, &[Some(0), Some(1), Some(2)])
}

/// Partitions of k into at most three parts, padded with zeros.
fn partitions(k: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in (1..=k).rev() {
        for b in (0..=a.min(k - a)).rev() {
            let c = k - a - b;
            if c <= b {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

fn monomial_symmetric(lambda: &[u32], ambient: &Arc<AmbientSpec>) -> TruncatedPoly<Integers> {
    let mut perms: Vec<Exponent> = Vec::new();
    for (i, j, k) in [
        (0, 1, 2),
        (0, 2, 1),
        (1, 0, 2),
        (1, 2, 0),
        (2, 0, 1),
        (2, 1, 0),
    ] {
        let e = vec![lambda[i], lambda[j], lambda[k]];
        if !perms.contains(&e) {
            perms.push(e);
        }
    }
    let ring = PolyRing::new(Integers, ambient.clone());
    perms.into_iter().fold(ring.zero(), |acc, e| {
        let m = TruncatedPoly::monomial(Integers, ambient.clone(), e, BigInt::from(1));
        ring.add(&acc, &m)
    })
}

/// x with 3x = r in W(k). The Witt rings at hand have 2-primary torsion, so
/// x is unique; over Q its signature is sign(r)/3, over F_p 3 acts as -1.
fn divide_by_three(r: &GWElement) -> Result<GWElement> {
    let backend = r.backend();
    let x = match backend {
        Backend::Q => {
            let s = r.signature(&Ordering::real())?;
            let (q, rem) = s.div_rem(&BigInt::from(3));
            if !rem.is_zero() {
                return Err(Error::DerivationInconsistent(format!(
                    "3x = {r} has no solution"
                )));
            }
            r.scale(&BigInt::from(3))
                .checked_sub(&GWElement::from_int(backend, q * 8))?
        }
        Backend::Fp(_) => r.scale(&BigInt::from(3)),
    };
    if !witt_equal(&x.scale(&BigInt::from(3)), r)? {
        return Err(Error::DerivationInconsistent(format!(
            "3x = {r} has no solution"
        )));
    }
    Ok(x.witt_reduced())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Pullback {
    OneFactor,
    TwoFactor,
    Diagonal,
}

struct Row {
    k: usize,
    pullback: Pullback,
    e: Exponent,
    rhs: GWElement,
}

struct System {
    ring: WittRing,
    inf3: Arc<AmbientSpec>,
    targets: HashMap<Pullback, (Arc<AmbientSpec>, Vec<Option<usize>>)>,
    unknowns: BTreeMap<(usize, Exponent), Option<GWElement>>,
    rows: Vec<Row>,
}

impl System {
    fn multiplier(&self, lambda: &[u32], p: Pullback, e: &[u32]) -> Result<i64> {
        let (amb, assign) = &self.targets[&p];
        let m = monomial_symmetric(lambda, &self.inf3).specialize(amb, assign)?;
        Ok(m.coefficient(e)?.to_i64().expect("small multiplier"))
    }

    fn add_rows(&mut self, p: Pullback, series: &BorelPolynomial<WittRing>, degrees: &[usize]) {
        for &k in degrees {
            let class = series.class(k);
            let amb = self.targets[&p].0.clone();
            // every monomial of degree k in the target, including those with zero coefficient
            for e in exponents_of_degree(amb.len(), k as u32) {
                let rhs = class.coefficient(&e).expect("exponent length matches");
                self.rows.push(Row {
                    k,
                    pullback: p,
                    e,
                    rhs,
                });
            }
        }
    }

    /// Σ mult·c over known unknowns, and the unknown ones with their multipliers.
    fn split(&self, row: &Row) -> Result<(GWElement, Vec<(Exponent, i64)>)> {
        let mut known = self.ring.zero();
        let mut open = Vec::new();
        for ((k, lambda), c) in &self.unknowns {
            if *k != row.k {
                continue;
            }
            let mult = self.multiplier(lambda, row.pullback, &row.e)?;
            if mult == 0 {
                continue;
            }
            match c {
                Some(c) => {
                    known = self
                        .ring
                        .add(&known, &self.ring.scale(c, &BigInt::from(mult)))
                }
                None => open.push((lambda.clone(), mult)),
            }
        }
        Ok((known, open))
    }

    fn solve(&mut self, degrees: &[usize]) -> Result<()> {
        loop {
            let mut progress = false;
            for idx in 0..self.rows.len() {
                if !degrees.contains(&self.rows[idx].k) {
                    continue;
                }
                let (known, open) = self.split(&self.rows[idx])?;
                let [(lambda, mult)] = open.as_slice() else {
                    continue;
                };
                let r = self.ring.sub(&self.rows[idx].rhs, &known);
                let r = if *mult < 0 { self.ring.neg(&r) } else { r };
                let c = match mult.abs() {
                    1 => r.witt_reduced(),
                    3 => divide_by_three(&r)?,
                    _ => continue,
                };
                self.unknowns
                    .insert((self.rows[idx].k, lambda.clone()), Some(c));
                progress = true;
            }
            if !progress {
                break;
            }
        }
        for ((k, lambda), c) in &self.unknowns {
            if degrees.contains(k) && c.is_none() {
                return Err(Error::DerivationInconsistent(format!(
                    "coefficient of m{lambda:?} in b{k} is undetermined"
                )));
            }
        }
        Ok(())
    }

    fn verify(&self) -> Result<()> {
        for row in &self.rows {
            let (known, open) = self.split(row)?;
            if !open.is_empty() || !witt_equal(&known, &row.rhs)? {
                return Err(Error::DerivationInconsistent(format!(
                    "b{} at {:?}: {} against {}",
                    row.k, row.e, known, row.rhs
                )));
            }
        }
        Ok(())
    }

    fn series(&self) -> Result<BorelPolynomial<WittRing>> {
        let ring = PolyRing::new(self.ring, self.inf3.clone());
        let mut classes = vec![ring.zero(); DEGREE];
        for ((k, lambda), c) in &self.unknowns {
            let Some(c) = c else { continue };
            let m = monomial_symmetric(lambda, &self.inf3)
                .map_coeffs(self.ring, |n| self.ring.scale(c, n));
            classes[k - 1] = ring.add(&classes[k - 1], &m);
        }
        BorelPolynomial::from_classes(self.ring, self.inf3.clone(), DEGREE, classes)
    }
}

fn exponents_of_degree(vars: usize, k: u32) -> Vec<Exponent> {
    if vars == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for a in (0..=k).rev() {
        for mut rest in exponents_of_degree(vars - 1, k - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn derive(backend: Backend) -> Result<WittTables> {
    let ring = WittRing::new(backend);
    let inf = |k| -> Result<Arc<AmbientSpec>> { Ok(Arc::new(AmbientSpec::hp_power(None, k)?)) };
    let (inf1, inf2, inf3) = (inf(1)?, inf(2)?, inf(3)?);
    let one = BigInt::from(1);
    let rule = |factors: Vec<Factor>, amb: &Arc<AmbientSpec>| {
        witt_monomial(&Monomial::new(&one, factors)?, amb, backend, DEGREE, None)
    };
    let one_factor = rule(vec![Factor::U(1), Factor::H, Factor::H], &inf1)?;
    let two_factor = rule(vec![Factor::U(1), Factor::U(2), Factor::H], &inf2)?;

    let mut sys = System {
        ring,
        inf3: inf3.clone(),
        targets: HashMap::from([
            (
                Pullback::OneFactor,
                (inf1.clone(), vec![Some(0), None, None]),
            ),
            (
                Pullback::TwoFactor,
                (inf2.clone(), vec![Some(0), Some(1), None]),
            ),
            (
                Pullback::Diagonal,
                (inf1.clone(), vec![Some(0), Some(0), Some(0)]),
            ),
        ]),
        unknowns: BTreeMap::new(),
        rows: Vec::new(),
    };
    for k in 1..=DEGREE {
        for lambda in partitions(k as u32) {
            sys.unknowns.insert((k, lambda), None);
        }
    }
    let all: Vec<usize> = (1..=DEGREE).collect();
    sys.add_rows(Pullback::OneFactor, &one_factor, &all);
    sys.add_rows(Pullback::TwoFactor, &two_factor, &all);
    sys.solve(&[1, 2])?;

    // low classes of the cube, then Sym3(U) from the splitting
    let low = sys
        .series()?
        .specialize(&inf1, &[Some(0), Some(0), Some(0)])?;
    let cube_b1 = low.class(1).coefficient(&[1])?;
    let cube_b2 = low.class(2).coefficient(&[2])?;
    let angle = |a: i64| GWElement::angle(backend, a);
    let (two, six) = (angle(2)?, angle(6)?);
    let alpha = ring.sub(&ring.sub(&cube_b1, &two), &six);
    let expected_alpha = GWElement::from_int(backend, -3).checked_add(&angle(3)?)?;
    if !witt_equal(&alpha, &expected_alpha)? {
        return Err(Error::DerivationInconsistent(format!(
            "first class of Sym3(U): {alpha} is not -3 + <3>"
        )));
    }
    let alpha = expected_alpha.witt_reduced();
    let beta = ring.sub(
        &ring.sub(&cube_b2, &ring.mul(&two, &six)),
        &ring.mul(&alpha, &ring.add(&two, &six)),
    );
    let p1 = PolyRing::new(ring, inf1.clone());
    let u = p1.var(0);
    let sym3 = BorelPolynomial::from_classes(
        ring,
        inf1.clone(),
        DEGREE,
        vec![u.scale(&alpha), p1.pow(&u, 2).scale(&beta.witt_reduced())],
    )?;
    let line =
        |c: &GWElement| BorelPolynomial::from_classes(ring, inf1.clone(), DEGREE, vec![u.scale(c)]);
    let cube = line(&two)?.mul(&line(&six)?)?.mul(&sym3)?;
    for k in [1, 2] {
        if !cube.class(k).equals(&low.class(k)) {
            return Err(Error::DerivationInconsistent(format!(
                "splitting of the cube disagrees with the threefold in degree {k}"
            )));
        }
    }

    sys.add_rows(Pullback::Diagonal, &cube, &all);
    sys.solve(&[3, 4])?;
    sys.verify()?;
    let threefold = sys.series()?;
    Ok(WittTables {
        backend,
        sym3,
        cube,
        threefold,
    })
}
