//! Truncated multivariate polynomials: the cohomology rings of products of
//! quaternionic projective spaces, over a pluggable coefficient ring.
//!
//! Each variable `u_i` has weight 2 and a truncation bound `n_i` (the ideal
//! `u_i^(n_i + 1) = 0`), or no bound at all for HP^infinity.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gw::{int_json, GWElement, GwRing, WittRing};
use crate::ring::{Integers, Rationals, Ring};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientSpec {
    factors: Vec<(String, Option<u32>)>,
}

impl AmbientSpec {
    pub fn new(factors: Vec<(String, Option<u32>)>) -> Result<Self> {
        for (i, (name, bound)) in factors.iter().enumerate() {
            if factors[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::AmbientMismatch(format!("duplicate variable {name}")));
            }
            if *bound == Some(0) {
                return Err(Error::AmbientMismatch(format!(
                    "{name} needs a bound of at least 1"
                )));
            }
        }
        Ok(AmbientSpec { factors })
    }

    /// HP(b_1) x ... x HP(b_k) with variables u1..uk; `None` is HP(infinity).
    pub fn hp_product(bounds: &[Option<u32>]) -> Result<Self> {
        Self::new(
            bounds
                .iter()
                .enumerate()
                .map(|(i, b)| (format!("u{}", i + 1), *b))
                .collect(),
        )
    }

    pub fn hp_power(bound: Option<u32>, k: usize) -> Result<Self> {
        Self::hp_product(&vec![bound; k])
    }

    /// Parses `HP(5)^3`, `HP(inf)`, or products such as `HP(1)xHP(1)xHP(4)`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::AmbientMismatch(format!("cannot parse ambient `{text}`: {m}"));
        let mut bounds = Vec::new();
        for part in text.split(['x', '*', '×']) {
            let part = part.trim();
            let (base, power) = match part.split_once('^') {
                Some((b, p)) => (
                    b.trim(),
                    p.trim().parse::<usize>().map_err(|_| bad("bad exponent"))?,
                ),
                None => (part, 1),
            };
            let inner = base
                .strip_prefix("HP(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| bad("expected HP(n)"))?
                .trim();
            let bound = if matches!(inner, "inf" | "infinity" | "oo" | "∞") {
                None
            } else {
                Some(inner.parse::<u32>().map_err(|_| bad("bad bound"))?)
            };
            bounds.extend(std::iter::repeat_n(bound, power));
        }
        if bounds.is_empty() {
            return Err(bad("no factors"));
        }
        Self::hp_product(&bounds)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.factors[i].0
    }

    pub fn bound(&self, i: usize) -> Option<u32> {
        self.factors[i].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.factors.iter().position(|(n, _)| n == name)
    }

    /// Largest nonvanishing total degree (in the u's), if every factor is bounded.
    pub fn max_total_degree(&self) -> Option<usize> {
        self.factors
            .iter()
            .map(|(_, b)| b.map(|b| b as usize))
            .sum()
    }

    fn admits(&self, e: &[u32]) -> bool {
        e.iter()
            .zip(&self.factors)
            .all(|(x, (_, b))| b.is_none_or(|b| *x <= b))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.factors
                .iter()
                .map(|(n, b)| json!([n, b.map_or(Value::Null, |b| json!(b))]))
                .collect(),
        )
    }
}

impl fmt::Display for AmbientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(_, b)| match b {
                Some(b) => format!("HP({b})"),
                None => "HP(inf)".into(),
            })
            .collect();
        f.write_str(&parts.join("x"))
    }
}

/// Sparse polynomial with coefficients in `R`, truncated by its ambient.
#[derive(Clone, Debug)]
pub struct TruncatedPoly<R: Ring> {
    ring: R,
    ambient: Arc<AmbientSpec>,
    terms: BTreeMap<Exponent, R::Elem>,
}

impl<R: Ring> TruncatedPoly<R> {
    pub fn zero(ring: R, ambient: Arc<AmbientSpec>) -> Self {
        TruncatedPoly {
            ring,
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, ambient: Arc<AmbientSpec>, c: R::Elem) -> Self {
        let e = vec![0; ambient.len()];
        Self::monomial(ring, ambient, e, c)
    }

    pub fn one(ring: R, ambient: Arc<AmbientSpec>) -> Self {
        let c = ring.one();
        Self::constant(ring, ambient, c)
    }

    /// c * u^e; zero if e exceeds a truncation bound.
    pub fn monomial(ring: R, ambient: Arc<AmbientSpec>, e: Exponent, c: R::Elem) -> Self {
        assert_eq!(
            e.len(),
            ambient.len(),
            "exponent length must match the ambient"
        );
        let mut out = Self::zero(ring, ambient);
        if out.ambient.admits(&e) && !out.ring.is_zero(&c) {
            out.terms.insert(e, c);
        }
        out
    }

    /// The variable u_i.
    pub fn var(ring: R, ambient: Arc<AmbientSpec>, i: usize) -> Self {
        let mut e = vec![0; ambient.len()];
        e[i] = 1;
        let c = ring.one();
        Self::monomial(ring, ambient, e, c)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn ambient(&self) -> &Arc<AmbientSpec> {
        &self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    fn accumulate(&mut self, e: Exponent, c: R::Elem) {
        match self.terms.get_mut(&e) {
            Some(old) => *old = self.ring.add(old, &c),
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn prune(mut self) -> Self {
        let ring = self.ring.clone();
        self.terms.retain(|_, c| !ring.is_zero(c));
        self
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out.prune())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.ring.clone(), self.ambient.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if !self.ambient.admits(&e) {
                    continue;
                }
                let c = self.ring.mul(c1, c2);
                out.accumulate(e, c);
            }
        }
        Ok(out.prune())
    }

    pub fn neg(&self) -> Self {
        TruncatedPoly {
            ring: self.ring.clone(),
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    /// Scalar action of the coefficient ring.
    pub fn scale(&self, k: &R::Elem) -> Self {
        let out = TruncatedPoly {
            ring: self.ring.clone(),
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.ring.mul(k, c)))
                .collect(),
        };
        out.prune()
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&self.ring.from_int(n))
    }

    pub fn pow(&self, n: u32) -> Self {
        let ring = PolyRing::new(self.ring.clone(), self.ambient.clone());
        ring.pow(self, n)
    }

    /// Coefficient of u^e, or zero.
    pub fn coefficient(&self, e: &[u32]) -> Result<R::Elem> {
        if e.len() != self.ambient.len() {
            return Err(Error::AmbientMismatch(format!(
                "monomial has {} exponents, ambient has {} variables",
                e.len(),
                self.ambient.len()
            )));
        }
        Ok(self
            .terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.ring.zero()))
    }

    /// Whether all coefficients agree under the ring's equality.
    pub fn equals(&self, other: &Self) -> bool {
        self.checked_sub(other)
            .map(|d| d.is_zero())
            .unwrap_or(false)
    }

    /// Substitution homomorphism into `target`: source variable i goes to
    /// target variable `assignment[i]`, or to 0 when `None`.
    pub fn specialize(
        &self,
        target: &Arc<AmbientSpec>,
        assignment: &[Option<usize>],
    ) -> Result<Self> {
        if assignment.len() != self.ambient.len() {
            return Err(Error::UnknownVariable(format!(
                "assignment covers {} of {} variables",
                assignment.len(),
                self.ambient.len()
            )));
        }
        if let Some(bad) = assignment.iter().flatten().find(|&&j| j >= target.len()) {
            return Err(Error::UnknownVariable(format!("target variable #{bad}")));
        }
        let mut out = Self::zero(self.ring.clone(), target.clone());
        'terms: for (e, c) in &self.terms {
            let mut f = vec![0u32; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match assignment[i] {
                    Some(j) => f[j] += x,
                    None => continue 'terms,
                }
            }
            if target.admits(&f) {
                out.accumulate(f, c.clone());
            }
        }
        Ok(out.prune())
    }

    /// `specialize` with variables named; source variables not mentioned go
    /// to the target variable of the same name.
    pub fn specialize_by_name(
        &self,
        target: &Arc<AmbientSpec>,
        map: &[(&str, Option<&str>)],
    ) -> Result<Self> {
        for (src, _) in map {
            if self.ambient.index_of(src).is_none() {
                return Err(Error::UnknownVariable(src.to_string()));
            }
        }
        let mut assignment = Vec::with_capacity(self.ambient.len());
        for i in 0..self.ambient.len() {
            let name = self.ambient.name(i);
            let dest = match map.iter().find(|(s, _)| *s == name) {
                Some((_, d)) => *d,
                None => Some(name),
            };
            let idx = match dest {
                None => None,
                Some(d) => Some(
                    target
                        .index_of(d)
                        .ok_or_else(|| Error::UnknownVariable(d.to_string()))?,
                ),
            };
            assignment.push(idx);
        }
        self.specialize(target, &assignment)
    }

    /// The part of total degree exactly `d` in the u's.
    pub fn homogeneous(&self, d: u32) -> Self {
        TruncatedPoly {
            ring: self.ring.clone(),
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<S: Ring>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> TruncatedPoly<S> {
        let out = TruncatedPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect(),
            ring,
            ambient: self.ambient.clone(),
        };
        out.prune()
    }

    pub fn try_map_coeffs<S: Ring>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem>,
    ) -> Result<TruncatedPoly<S>> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), f(c)?);
        }
        Ok(TruncatedPoly {
            terms,
            ring,
            ambient: self.ambient.clone(),
        }
        .prune())
    }

    /// Terms in graded-lex order: by total degree, then u1 before u2 ...
    fn graded_terms(&self) -> Vec<(&Exponent, &R::Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        v
    }
}

impl<R: CoeffFormat> TruncatedPoly<R> {
    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.graded_terms().into_iter().enumerate() {
            let mono = render_monomial(&self.ambient, e, latex);
            let cs = self.ring.format(c, latex);
            let atomic = !cs[1..].contains(" + ") && !cs[1..].contains(" - ");
            let (neg, body) = if atomic && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else {
                (false, cs)
            };
            let coef = if !atomic {
                if latex {
                    format!("\\left({body}\\right)")
                } else {
                    format!("({body})")
                }
            } else {
                body
            };
            let term = match (mono.is_empty(), coef.as_str()) {
                (true, _) => coef,
                (false, "1") => mono,
                (false, _) if latex => format!("{coef}{mono}"),
                (false, _) => format!("{coef}*{mono}"),
            };
            match (i, neg) {
                (0, false) => out.push_str(&term),
                (0, true) => {
                    out.push('-');
                    out.push_str(&term);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&term);
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .graded_terms()
            .into_iter()
            .map(|(e, c)| json!({ "e": e, "c": self.ring.json(c) }))
            .collect();
        json!({ "ambient": self.ambient.to_json(), "terms": terms })
    }
}

impl<R: CoeffFormat> fmt::Display for TruncatedPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn render_monomial(ambient: &AmbientSpec, e: &[u32], latex: bool) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let name = ambient.name(i);
        let name = if latex {
            match name.split_at(1) {
                (head, tail) if !tail.is_empty() => format!("{head}_{{{tail}}}"),
                _ => name.to_string(),
            }
        } else {
            name.to_string()
        };
        parts.push(match (x, latex) {
            (1, _) => name,
            (_, true) => format!("{name}^{{{x}}}"),
            (_, false) => format!("{name}^{x}"),
        });
    }
    parts.join(if latex { "" } else { "*" })
}

/// The ring of truncated polynomials over `R` in a fixed ambient.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    pub coeffs: R,
    pub ambient: Arc<AmbientSpec>,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(coeffs: R, ambient: Arc<AmbientSpec>) -> Self {
        PolyRing { coeffs, ambient }
    }

    pub fn var(&self, i: usize) -> TruncatedPoly<R> {
        TruncatedPoly::var(self.coeffs.clone(), self.ambient.clone(), i)
    }

    pub fn constant(&self, c: R::Elem) -> TruncatedPoly<R> {
        TruncatedPoly::constant(self.coeffs.clone(), self.ambient.clone(), c)
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = TruncatedPoly<R>;

    fn zero(&self) -> Self::Elem {
        TruncatedPoly::zero(self.coeffs.clone(), self.ambient.clone())
    }
    fn one(&self) -> Self::Elem {
        TruncatedPoly::one(self.coeffs.clone(), self.ambient.clone())
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.checked_add(b).expect("polynomials share an ambient")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.checked_mul(b).expect("polynomials share an ambient")
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.coeffs.from_int(n))
    }
}

/// Text, LaTeX and JSON rendering of ring elements.
pub trait CoeffFormat: Ring {
    fn format(&self, x: &Self::Elem, latex: bool) -> String;
    fn json(&self, x: &Self::Elem) -> Value;
}

impl CoeffFormat for Integers {
    fn format(&self, x: &BigInt, _latex: bool) -> String {
        x.to_string()
    }
    fn json(&self, x: &BigInt) -> Value {
        int_json(x)
    }
}

impl CoeffFormat for Rationals {
    fn format(&self, x: &BigRational, latex: bool) -> String {
        if x.is_integer() {
            return x.numer().to_string();
        }
        if latex {
            let sign = if x.is_negative() { "-" } else { "" };
            format!("{sign}\\frac{{{}}}{{{}}}", x.numer().abs(), x.denom())
        } else {
            x.to_string()
        }
    }
    fn json(&self, x: &BigRational) -> Value {
        json!(x.to_string())
    }
}

impl CoeffFormat for GwRing {
    fn format(&self, x: &GWElement, latex: bool) -> String {
        if latex {
            x.to_latex()
        } else {
            x.to_string()
        }
    }
    fn json(&self, x: &GWElement) -> Value {
        x.to_json()
    }
}

impl CoeffFormat for WittRing {
    fn format(&self, x: &GWElement, latex: bool) -> String {
        let r = x.witt_reduced();
        if latex {
            r.to_latex()
        } else {
            r.to_string()
        }
    }
    fn json(&self, x: &GWElement) -> Value {
        x.witt_reduced().to_json()
    }
}

/// Build an integer polynomial from (exponent, coefficient) pairs.
pub fn int_poly(ambient: &Arc<AmbientSpec>, terms: &[(&[u32], i64)]) -> TruncatedPoly<Integers> {
    let mut out = TruncatedPoly::zero(Integers, ambient.clone());
    for (e, c) in terms {
        let m = TruncatedPoly::monomial(Integers, ambient.clone(), e.to_vec(), BigInt::from(*c));
        out = out.checked_add(&m).unwrap();
    }
    out
}

impl<R: Ring> TruncatedPoly<R> {
    /// Constant term (all exponents zero).
    pub fn constant_term(&self) -> R::Elem {
        let e = vec![0; self.ambient.len()];
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_constant_one(&self) -> bool {
        self.terms.len() == 1 && {
            let c = self.constant_term();
            self.ring.equal(&c, &self.ring.one())
        }
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<TruncatedPoly<Integers>>();
    check::<TruncatedPoly<GwRing>>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn amb(bounds: &[Option<u32>]) -> Arc<AmbientSpec> {
        Arc::new(AmbientSpec::hp_product(bounds).unwrap())
    }

    #[test]
    fn truncation_kills_high_powers() {
        let a = amb(&[Some(1)]);
        let u = TruncatedPoly::var(Integers, a.clone(), 0);
        assert!(u.checked_mul(&u).unwrap().is_zero());
    }

    #[test]
    fn binomial_square() {
        let a = amb(&[None, None]);
        let r = PolyRing::new(Integers, a.clone());
        let s = r.add(&r.var(0), &r.var(1));
        let sq = r.mul(&s, &s);
        let expect = int_poly(&a, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        assert!(sq.equals(&expect));
        assert_eq!(sq.to_text(), "u1^2 + 2*u1*u2 + u2^2");
    }

    #[test]
    fn coefficient_lookup() {
        let a = amb(&[None, None, None]);
        let p = int_poly(&a, &[(&[1, 1, 1], -8)]);
        assert_eq!(p.coefficient(&[1, 1, 1]).unwrap(), BigInt::from(-8));
        assert_eq!(p.coefficient(&[2, 1, 1]).unwrap(), BigInt::zero());
        let z = TruncatedPoly::zero(Integers, a);
        assert_eq!(z.coefficient(&[0, 3, 0]).unwrap(), BigInt::zero());
        assert!(z.coefficient(&[0, 3]).is_err());
    }

    #[test]
    fn specialization() {
        let a = amb(&[None, None, None]);
        let b3 = int_poly(
            &a,
            &[
                (&[3, 0, 0], 4),
                (&[0, 3, 0], 4),
                (&[2, 1, 0], -4),
                (&[1, 1, 1], 40),
            ],
        );
        let one = amb(&[None]);
        let s = b3.specialize(&one, &[Some(0), None, None]).unwrap();
        assert!(s.equals(&int_poly(&one, &[(&[3], 4)])));
        let b2 = int_poly(&a, &[(&[2, 0, 0], -2), (&[0, 2, 0], -2), (&[0, 0, 2], -2)]);
        let d = b2.specialize(&one, &[Some(0), Some(0), Some(0)]).unwrap();
        assert!(d.equals(&int_poly(&one, &[(&[2], -6)])));
        let c = int_poly(&a, &[(&[0, 0, 0], 7), (&[1, 0, 0], 3)]);
        let zero_amb = amb(&[None]);
        let k = c.specialize(&zero_amb, &[None, None, None]).unwrap();
        assert!(k.equals(&int_poly(&zero_amb, &[(&[0], 7)])));
        assert!(matches!(
            b3.specialize(&one, &[Some(3), None, None]),
            Err(Error::UnknownVariable(_))
        ));
        assert!(b3.specialize_by_name(&one, &[("u9", None)]).is_err());
        let by_name = b3
            .specialize_by_name(&one, &[("u2", None), ("u3", None)])
            .unwrap();
        assert!(by_name.equals(&s));
    }

    #[test]
    fn ambient_mismatch() {
        let a = TruncatedPoly::var(Integers, amb(&[Some(2)]), 0);
        let b = TruncatedPoly::var(Integers, amb(&[Some(3)]), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn ambient_parse() {
        let a = AmbientSpec::parse("HP(5)^3").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.bound(2), Some(5));
        let b = AmbientSpec::parse("HP(1)xHP(1)xHP(inf)").unwrap();
        assert_eq!(b.bound(2), None);
        assert_eq!(b.to_string(), "HP(1)xHP(1)xHP(inf)");
        assert!(AmbientSpec::parse("P(3)").is_err());
        assert!(AmbientSpec::parse("HP(0)").is_err());
    }

    #[test]
    fn latex_and_json() {
        let a = amb(&[Some(5), Some(5)]);
        let p = int_poly(&a, &[(&[3, 0], 4), (&[1, 1], -2)]);
        assert_eq!(p.to_latex(), "-2u_{1}u_{2} + 4u_{1}^{3}");
        let j = p.to_json();
        assert_eq!(j["ambient"][0][0], "u1");
        assert_eq!(j["ambient"][0][1], 5);
        assert_eq!(j["terms"][1]["e"], json!([3, 0]));
        assert_eq!(j["terms"][1]["c"], 4);
    }
}
