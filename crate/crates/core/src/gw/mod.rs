//! Grothendieck–Witt and Witt rings of Q and of prime fields F_p.
//!
//! Elements are formal integer combinations of square classes. The
//! representation is not unique; equality is decided from invariants. Over Q
//! the map to rank, signature and every second residue is injective on GW(Q).
//! Over F_p, rank and discriminant classify.

pub mod arith;
mod rings;
mod witt_fp;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use arith::{
    is_prime, is_square_mod, mod_u64, smallest_nonsquare, squarefree_part, squarefree_product,
};

pub use rings::{GwRing, WittRing};
pub use witt_fp::WittFp;

/// The base field of a GW computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    Q,
    Fp(u64),
}

impl Backend {
    /// F_p for an odd prime p other than 3.
    pub fn fp(p: u64) -> Result<Self> {
        if !is_prime(p) || p == 2 || p == 3 {
            return Err(Error::InvalidBackend(format!(
                "fp:{p} (need a prime different from 2 and 3)"
            )));
        }
        Ok(Backend::Fp(p))
    }

    pub fn orderings(&self) -> Vec<Ordering> {
        match self {
            Backend::Q => vec![Ordering::real()],
            Backend::Fp(_) => Vec::new(),
        }
    }

    /// Canonical square class of a nonzero rational.
    pub fn square_class(&self, a: &BigRational) -> Result<SquareClass> {
        if a.is_zero() {
            return Err(Error::InvalidUnit("0 is not a unit".into()));
        }
        match *self {
            Backend::Q => Ok(SquareClass(squarefree_part(&(a.numer() * a.denom())))),
            Backend::Fp(p) => {
                let num = mod_u64(a.numer(), p);
                let den = mod_u64(a.denom(), p);
                if num == 0 || den == 0 {
                    return Err(Error::InvalidUnit(format!("{a} is not a unit in F_{p}")));
                }
                let v = (num as u128 * den as u128 % p as u128) as u64;
                Ok(self.fp_class(v))
            }
        }
    }

    fn fp_class(&self, v: u64) -> SquareClass {
        let Backend::Fp(p) = *self else {
            unreachable!()
        };
        if is_square_mod(v, p) {
            SquareClass::one()
        } else {
            SquareClass(BigInt::from(smallest_nonsquare(p)))
        }
    }

    pub fn class_of_int(&self, a: i64) -> Result<SquareClass> {
        self.square_class(&BigRational::from_integer(BigInt::from(a)))
    }

    pub fn mul_classes(&self, a: &SquareClass, b: &SquareClass) -> SquareClass {
        match *self {
            Backend::Q => SquareClass(squarefree_product(&a.0, &b.0)),
            Backend::Fp(p) => {
                let v = (mod_u64(&a.0, p) as u128 * mod_u64(&b.0, p) as u128 % p as u128) as u64;
                self.fp_class(v)
            }
        }
    }

    pub fn minus_one(&self) -> SquareClass {
        self.class_of_int(-1).expect("-1 is a unit")
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Q => write!(f, "q"),
            Backend::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Backend::Q);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidBackend(s.to_string()))?;
            return Backend::fp(p);
        }
        Err(Error::InvalidBackend(s.to_string()))
    }
}

/// A square class, stored as its canonical representative: the squarefree
/// integer over Q, or 1 / the least non-square over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn one() -> Self {
        SquareClass(BigInt::one())
    }

    pub fn repr(&self) -> &BigInt {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// An ordering of the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordering {
    pub label: String,
}

impl Ordering {
    /// The unique ordering of Q.
    pub fn real() -> Self {
        Ordering { label: "P0".into() }
    }
}

/// A virtual quadratic form: sum of n_d <d> over square classes d.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GWElement {
    backend: Backend,
    terms: BTreeMap<SquareClass, BigInt>,
}

impl GWElement {
    pub fn zero(backend: Backend) -> Self {
        GWElement {
            backend,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_int(backend: Backend, n: impl Into<BigInt>) -> Self {
        Self::unit(backend, SquareClass::one()).scale(&n.into())
    }

    pub fn one(backend: Backend) -> Self {
        Self::from_int(backend, 1)
    }

    pub fn unit(backend: Backend, class: SquareClass) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(class, BigInt::one());
        GWElement { backend, terms }
    }

    /// The one-dimensional form <a> for an integer a.
    pub fn angle(backend: Backend, a: i64) -> Result<Self> {
        Ok(Self::unit(backend, backend.class_of_int(a)?))
    }

    /// The diagonal form <a_1, ..., a_n>.
    pub fn from_diagonal(backend: Backend, units: &[BigRational]) -> Result<Self> {
        let mut out = Self::zero(backend);
        for a in units {
            out.add_term(backend.square_class(a)?, BigInt::one());
        }
        Ok(out)
    }

    pub fn from_diagonal_ints(backend: Backend, units: &[i64]) -> Result<Self> {
        let units: Vec<BigRational> = units
            .iter()
            .map(|&a| BigRational::from_integer(a.into()))
            .collect();
        Self::from_diagonal(backend, &units)
    }

    /// n copies of the hyperbolic plane <1, -1>.
    pub fn hyperbolic(backend: Backend, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        let mut out = Self::zero(backend);
        out.add_term(SquareClass::one(), n.clone());
        out.add_term(backend.minus_one(), n);
        out
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SquareClass, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, class: SquareClass, n: BigInt) {
        if n.is_zero() {
            return;
        }
        let entry = self.terms.entry(class).or_insert_with(BigInt::zero);
        *entry += n;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn same_backend(&self, other: &Self) -> Result<()> {
        if self.backend != other.backend {
            return Err(Error::BackendMismatch(
                self.backend.to_string(),
                other.backend.to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_backend(other)?;
        let mut out = self.clone();
        for (c, n) in &other.terms {
            out.add_term(c.clone(), n.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_backend(other)?;
        let mut out = Self::zero(self.backend);
        for (c, n) in &self.terms {
            for (d, m) in &other.terms {
                out.add_term(self.backend.mul_classes(c, d), n * m);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GWElement {
            backend: self.backend,
            terms: self.terms.iter().map(|(c, n)| (c.clone(), -n)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.backend);
        }
        GWElement {
            backend: self.backend,
            terms: self.terms.iter().map(|(c, n)| (c.clone(), n * k)).collect(),
        }
    }

    /// Multiplication by the one-dimensional form <a>.
    pub fn twist(&self, class: &SquareClass) -> Self {
        let mut out = Self::zero(self.backend);
        for (c, n) in &self.terms {
            out.add_term(self.backend.mul_classes(c, class), n.clone());
        }
        out
    }

    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn signature(&self, ordering: &Ordering) -> Result<BigInt> {
        match self.backend {
            Backend::Q if *ordering == Ordering::real() => Ok(self.real_signature()),
            Backend::Q => Err(Error::InvalidIndex(format!(
                "unknown ordering {}",
                ordering.label
            ))),
            Backend::Fp(_) => Err(Error::NoOrderings),
        }
    }

    fn real_signature(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(c, n)| if c.0.is_negative() { -n } else { n.clone() })
            .sum()
    }

    /// Second residue at the prime p, with p itself as uniformizer.
    pub fn residue(&self, p: u64) -> Result<WittFp> {
        if self.backend != Backend::Q {
            return Err(Error::InvalidPrime(
                "residues are defined over Q only".into(),
            ));
        }
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p.to_string()));
        }
        let bp = BigInt::from(p);
        let mut acc = WittFp::zero(p);
        for (c, n) in &self.terms {
            let (q, r) = c.0.div_rem(&bp);
            if !r.is_zero() {
                continue;
            }
            let u = mod_u64(&q, p);
            let class = if p == 2 {
                WittFp::one(2)
            } else {
                WittFp::unit(p, is_square_mod(u, p))
            };
            acc = acc.add(&class.scale(n));
        }
        Ok(acc)
    }

    /// Image in W(F_p); only for the F_p backend.
    pub fn to_witt_fp(&self) -> Result<WittFp> {
        let Backend::Fp(p) = self.backend else {
            return Err(Error::InvalidBackend(
                "Witt class in W(F_p) needs an F_p backend".into(),
            ));
        };
        let mut acc = WittFp::zero(p);
        for (c, n) in &self.terms {
            acc = acc.add(&WittFp::unit(p, c.is_one()).scale(n));
        }
        Ok(acc)
    }

    /// Discriminant over F_p: whether the signed product of the entries is a square.
    fn fp_discriminant_is_square(&self) -> bool {
        let nonsquare_count: BigInt = self
            .terms
            .iter()
            .filter(|(c, _)| !c.is_one())
            .map(|(_, n)| n.clone())
            .sum();
        nonsquare_count.is_even()
    }

    fn primes_in_support(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = Vec::new();
        for c in self.terms.keys() {
            for (p, _) in arith::factor(c.0.magnitude()) {
                let p = p
                    .to_u64()
                    .expect("prime factor of a square-class representative fits in u64");
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        primes.sort_unstable();
        primes
    }

    fn witt_trivial(&self) -> bool {
        match self.backend {
            Backend::Q => {
                self.real_signature().is_zero()
                    && self
                        .primes_in_support()
                        .into_iter()
                        .all(|p| self.residue(p).map(|r| r.is_zero()).unwrap_or(false))
            }
            Backend::Fp(_) => self.to_witt_fp().map(|w| w.is_zero()).unwrap_or(false),
        }
    }

    pub fn is_zero_gw(&self) -> bool {
        match self.backend {
            Backend::Q => self.rank().is_zero() && self.witt_trivial(),
            Backend::Fp(_) => self.rank().is_zero() && self.fp_discriminant_is_square(),
        }
    }

    pub fn is_zero_witt(&self) -> bool {
        self.witt_trivial()
    }

    /// Over Q: a sum of <p>, <-p>, <p s>, <2> (positive multiplicities) with the
    /// same residues as `self` at every prime. Primes are cleared from the
    /// largest down, since lifting at p only adds residues at primes below p.
    fn residue_lifts(&self) -> GWElement {
        let mut lifts = Self::zero(Backend::Q);
        let mut rest = self.clone();
        loop {
            let odd = rest
                .primes_in_support()
                .into_iter()
                .rev()
                .filter(|&p| p != 2)
                .find_map(|p| {
                    rest.residue(p)
                        .ok()
                        .filter(|r| !r.is_zero())
                        .map(|r| (p, r))
                });
            let Some((p, r)) = odd else { break };
            let (ones, nons) = fp_decompose(p, &r);
            let bp = BigInt::from(p);
            let mut step = Self::zero(Backend::Q);
            match ones {
                -1 => step.add_term(SquareClass(-&bp), BigInt::one()),
                k => step.add_term(SquareClass(bp.clone()), BigInt::from(k)),
            }
            let s = squarefree_part(&(&bp * smallest_nonsquare(p)));
            step.add_term(SquareClass(s), BigInt::from(nons));
            rest = rest.checked_sub(&step).expect("same backend");
            lifts = lifts.checked_add(&step).expect("same backend");
        }
        if rest.residue(2).map(|r| !r.is_zero()).unwrap_or(false) {
            lifts.add_term(SquareClass(BigInt::from(2)), BigInt::one());
        }
        lifts
    }

    /// The normal form: determined by rank and Witt class alone, so equal
    /// elements of GW(k) get identical terms.
    pub fn canonical(&self) -> Self {
        match self.backend {
            Backend::Q => {
                let lifts = self.residue_lifts();
                let r = self.rank() - lifts.rank();
                let s = self.real_signature() - lifts.real_signature();
                let mut out = lifts;
                out.add_term(SquareClass::one(), (&r + &s) / 2);
                out.add_term(SquareClass(BigInt::from(-1)), (&r - &s) / 2);
                out
            }
            Backend::Fp(p) => {
                let r = self.rank();
                let mut out = Self::zero(self.backend);
                if self.fp_discriminant_is_square() {
                    out.add_term(SquareClass::one(), r);
                } else {
                    out.add_term(SquareClass::one(), r - 1);
                    out.add_term(
                        SquareClass(BigInt::from(smallest_nonsquare(p))),
                        BigInt::one(),
                    );
                }
                out
            }
        }
    }

    /// The normal form of the Witt class: equal elements of W(k) get
    /// identical terms.
    pub fn witt_reduced(&self) -> Self {
        match self.backend {
            Backend::Q => {
                let mut out = self.residue_lifts();
                let s = self.real_signature() - out.real_signature();
                out.add_term(SquareClass::one(), s);
                out
            }
            Backend::Fp(p) => {
                let (ones, nons) = fp_decompose(p, &self.to_witt_fp().expect("fp backend"));
                let mut out = Self::zero(self.backend);
                out.add_term(SquareClass::one(), BigInt::from(ones));
                out.add_term(
                    SquareClass(BigInt::from(smallest_nonsquare(p))),
                    BigInt::from(nons),
                );
                out
            }
        }
    }

    /// Split off the largest multiple k of <1,-1> with both multiplicities of
    /// the same sign; returns (k, remainder). Over F_p, k is always 0.
    pub fn split_hyperbolic(&self) -> (BigInt, GWElement) {
        if self.backend != Backend::Q {
            return (BigInt::zero(), self.clone());
        }
        let zero = BigInt::zero();
        let n1 = self.terms.get(&SquareClass::one()).unwrap_or(&zero);
        let nm = self
            .terms
            .get(&SquareClass(BigInt::from(-1)))
            .unwrap_or(&zero);
        if n1.is_zero() || nm.is_zero() || n1.signum() != nm.signum() {
            return (zero, self.clone());
        }
        let k = if n1.is_positive() {
            n1.min(nm).clone()
        } else {
            n1.max(nm).clone()
        };
        let rest = self
            .checked_sub(&Self::hyperbolic(Backend::Q, k.clone()))
            .unwrap();
        (k, rest)
    }

    fn render(&self, latex: bool) -> String {
        let (k, rest) = self.canonical().split_hyperbolic();
        let mut parts: Vec<(bool, String)> = Vec::new();
        let mut push = |coef: &BigInt, sym: Option<String>| {
            let neg = coef.is_negative();
            let mag = coef.abs();
            let s = match sym {
                None => mag.to_string(),
                Some(sym) if mag.is_one() => sym,
                Some(sym) if latex => format!("{mag}{sym}"),
                Some(sym) => format!("{mag}*{sym}"),
            };
            parts.push((neg, s));
        };
        let mut entries: Vec<(&SquareClass, &BigInt)> = rest.terms.iter().collect();
        entries.sort_by(|a, b| {
            let ka = (!a.0.is_one(), a.0 .0.abs(), a.0 .0.is_positive());
            let kb = (!b.0.is_one(), b.0 .0.abs(), b.0 .0.is_positive());
            ka.cmp(&kb)
        });
        for (c, n) in entries {
            if c.is_one() {
                push(n, None);
            } else if latex {
                push(n, Some(format!("\\langle {}\\rangle", c.0)));
            } else {
                push(n, Some(format!("<{}>", c.0)));
            }
        }
        if !k.is_zero() {
            push(&k, Some("h".into()));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, s)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, false) => out.push_str(&s),
                (0, true) => {
                    out.push('-');
                    out.push_str(&s)
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&s)
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&s)
                }
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(c, n)| json!({ "d": int_json(&c.0), "n": int_json(n) }))
            .collect();
        json!({ "backend": self.backend.to_string(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let backend: Backend = v
            .get("backend")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Json("missing backend".into()))?
            .parse()?;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing terms".into()))?;
        let mut out = Self::zero(backend);
        for t in terms {
            let d = json_int(
                t.get("d")
                    .ok_or_else(|| Error::Json("term without d".into()))?,
            )?;
            let n = json_int(
                t.get("n")
                    .ok_or_else(|| Error::Json("term without n".into()))?,
            )?;
            let class = backend.square_class(&BigRational::from_integer(d))?;
            out.add_term(class, n);
        }
        Ok(out)
    }
}

impl fmt::Display for GWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// w = ones*<1> + nons*<s> in W(F_p), s the least non-square. For p = 3 mod 4
/// only <1> is used, with ones in {-1, 0, 1, 2}; otherwise both lie in {0, 1}.
fn fp_decompose(p: u64, w: &WittFp) -> (i64, i64) {
    let one = WittFp::one(p);
    if p % 4 == 3 {
        let k = (0..4)
            .find(|k| one.scale(&BigInt::from(*k)) == *w)
            .expect("W(F_p) is cyclic of order 4");
        return (if k == 3 { -1 } else { k }, 0);
    }
    let non = WittFp::unit(p, false);
    for (ones, nons) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        if one
            .scale(&BigInt::from(ones))
            .add(&non.scale(&BigInt::from(nons)))
            == *w
        {
            return (ones, nons);
        }
    }
    unreachable!("W(F_p) has four elements")
}

/// Equality in GW(k).
pub fn gw_equal(a: &GWElement, b: &GWElement) -> Result<bool> {
    Ok(a.checked_sub(b)?.is_zero_gw())
}

/// Equality in W(k): rank is ignored.
pub fn witt_equal(a: &GWElement, b: &GWElement) -> Result<bool> {
    Ok(a.checked_sub(b)?.is_zero_witt())
}

/// Integers as JSON numbers when they fit in an i64, strings otherwise.
pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn json_int(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(s) = v.as_str() {
        return s
            .parse()
            .map_err(|_| Error::Json(format!("not an integer: {s}")));
    }
    Err(Error::Json(format!("not an integer: {v}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(units: &[i64]) -> GWElement {
        GWElement::from_diagonal_ints(Backend::Q, units).unwrap()
    }

    fn int(b: Backend, n: i64) -> GWElement {
        GWElement::from_int(b, n)
    }

    #[test]
    fn diagonal_constructor() {
        let h = q(&[1, -1]);
        assert_eq!(h.rank(), BigInt::from(2));
        assert_eq!(h, GWElement::hyperbolic(Backend::Q, 1));
        assert_eq!(q(&[4]), GWElement::one(Backend::Q));
        let r = GWElement::from_diagonal(
            Backend::Q,
            &[BigRational::new(BigInt::from(3), BigInt::from(4))],
        )
        .unwrap();
        assert_eq!(r, q(&[3]));
        assert_eq!(
            GWElement::from_diagonal_ints(Backend::Q, &[1, 0]),
            Err(Error::InvalidUnit("0 is not a unit".into()))
        );
        assert!(GWElement::from_diagonal_ints(Backend::Fp(5), &[10]).is_err());
    }

    #[test]
    fn sym3_identity_over_q_and_finite_fields() {
        for b in [Backend::Q, Backend::Fp(5), Backend::Fp(7)] {
            let lhs = GWElement::from_diagonal_ints(b, &[-2, -6]).unwrap();
            let rhs = int(b, -3)
                .checked_add(&GWElement::angle(b, 3).unwrap())
                .unwrap();
            assert!(witt_equal(&lhs, &rhs).unwrap(), "backend {b}");
            // ranks differ (2 vs -2), so not equal in GW
            assert!(!gw_equal(&lhs, &rhs).unwrap());
            let rhs2 = GWElement::angle(b, -1)
                .unwrap()
                .scale(&3.into())
                .checked_add(&GWElement::angle(b, 3).unwrap())
                .unwrap();
            assert!(witt_equal(&lhs, &rhs2).unwrap());
        }
    }

    #[test]
    fn squares_and_hyperbolic_absorption() {
        let three = q(&[3]);
        assert_eq!(
            three.checked_mul(&three).unwrap(),
            GWElement::one(Backend::Q)
        );
        let h = GWElement::hyperbolic(Backend::Q, 1);
        for a in [2, -5, 7, 30, -1] {
            let t = h.checked_mul(&q(&[a])).unwrap();
            assert!(gw_equal(&t, &h).unwrap());
        }
        assert!(gw_equal(&three.scale(&4.into()), &int(Backend::Q, 4)).unwrap());
        assert!(!gw_equal(&three.scale(&2.into()), &int(Backend::Q, 2)).unwrap());
        assert!(gw_equal(
            &h.checked_mul(&h).unwrap(),
            &GWElement::hyperbolic(Backend::Q, 2)
        )
        .unwrap());
    }

    #[test]
    fn one_and_two_differ_in_witt() {
        assert!(!witt_equal(&q(&[1]), &q(&[2])).unwrap());
        let d = q(&[1]).checked_sub(&q(&[2])).unwrap();
        assert!(!d.residue(2).unwrap().is_zero());
    }

    #[test]
    fn invariants() {
        let p0 = Ordering::real();
        assert_eq!(q(&[-1]).signature(&p0).unwrap(), BigInt::from(-1));
        assert!(q(&[3]).residue(3).unwrap() == WittFp::one(3));
        assert!(q(&[1]).residue(3).unwrap().is_zero());
        assert!(matches!(q(&[1]).residue(4), Err(Error::InvalidPrime(_))));
        assert_eq!(
            GWElement::one(Backend::Fp(5)).signature(&p0),
            Err(Error::NoOrderings)
        );
        let psi6 = q(&[-1])
            .scale(&24.into())
            .checked_add(&GWElement::hyperbolic(Backend::Q, 168))
            .unwrap();
        assert_eq!(psi6.rank(), BigInt::from(360));
        assert_eq!(psi6.signature(&p0).unwrap(), BigInt::from(-24));
    }

    #[test]
    fn hyperbolic_multiples() {
        let h1 = GWElement::hyperbolic(Backend::Q, 1);
        assert_eq!(h1.rank(), BigInt::from(2));
        assert_eq!(h1.signature(&Ordering::real()).unwrap(), BigInt::zero());
        assert!(GWElement::hyperbolic(Backend::Q, 0).is_formally_zero());
        assert_eq!(
            GWElement::hyperbolic(Backend::Q, 16).rank(),
            BigInt::from(32)
        );
    }

    #[test]
    fn backend_mismatch() {
        let a = GWElement::one(Backend::Q);
        let b = GWElement::one(Backend::Fp(5));
        assert!(matches!(a.checked_add(&b), Err(Error::BackendMismatch(..))));
        assert!(matches!(gw_equal(&a, &b), Err(Error::BackendMismatch(..))));
    }

    #[test]
    fn backends_parse() {
        assert_eq!("q".parse::<Backend>().unwrap(), Backend::Q);
        assert_eq!("fp:7".parse::<Backend>().unwrap(), Backend::Fp(7));
        assert!("fp:3".parse::<Backend>().is_err());
        assert!("fp:2".parse::<Backend>().is_err());
        assert!("fp:9".parse::<Backend>().is_err());
    }

    #[test]
    fn rendering() {
        let psi6 = q(&[-1])
            .scale(&24.into())
            .checked_add(&GWElement::hyperbolic(Backend::Q, 168))
            .unwrap();
        assert_eq!(psi6.to_string(), "24*<-1> + 168*h");
        let c = int(Backend::Q, -3).checked_add(&q(&[3])).unwrap();
        assert_eq!(c.to_string(), "-3 + <3>");
        assert_eq!(GWElement::zero(Backend::Q).to_string(), "0");
        assert_eq!(psi6.to_latex(), "24\\langle -1\\rangle + 168h");
    }

    #[test]
    fn json_roundtrip() {
        let psi6 = q(&[-1])
            .scale(&24.into())
            .checked_add(&GWElement::hyperbolic(Backend::Q, 168))
            .unwrap();
        let v = psi6.to_json();
        assert_eq!(v["backend"], "q");
        assert_eq!(GWElement::from_json(&v).unwrap(), psi6);
    }

    #[test]
    fn witt_reduction_preserves_class() {
        for b in [
            Backend::Q,
            Backend::Fp(5),
            Backend::Fp(7),
            Backend::Fp(11),
            Backend::Fp(13),
        ] {
            for units in [&[-2, -6][..], &[3, 3, -1], &[5, 2, -7, -1], &[1, 1, 1]] {
                let x = GWElement::from_diagonal_ints(b, units);
                let Ok(x) = x else { continue };
                let r = x.witt_reduced();
                assert!(witt_equal(&x, &r).unwrap(), "{b} {units:?}");
            }
        }
    }

    #[test]
    fn finite_field_four_torsion() {
        for p in [5, 7, 11] {
            let b = Backend::Fp(p);
            for units in [&[1][..], &[2], &[3, 5], &[-1, 2, 6]] {
                let Ok(x) = GWElement::from_diagonal_ints(b, units) else {
                    continue;
                };
                assert!(x.scale(&4.into()).is_zero_witt());
            }
        }
    }
}
