//! Virtual symplectic bundles over products of quaternionic projective spaces.
//!
//! A tensor monomial is a twist by a one-dimensional form together with a
//! sorted multiset of basic factors; a virtual bundle is an integer
//! combination of monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gw::arith::{squarefree_part, squarefree_product};
use crate::gw::int_json;

/// A basic factor. `U(i)` is the tautological bundle of the i-th factor
/// (1-based), `Sym3(i)` its symmetric cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    U(usize),
    Sym3(usize),
    H,
}

impl Factor {
    pub fn rank(&self) -> u32 {
        match self {
            Factor::U(_) | Factor::H => 2,
            Factor::Sym3(_) => 4,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::U(i) => write!(f, "U{i}"),
            Factor::Sym3(i) => write!(f, "Sym3(U{i})"),
            Factor::H => f.write_str("H"),
        }
    }
}

/// `<twist> * F_1 * ... * F_k`; the twist is a squarefree integer and the
/// empty product is the trivial line bundle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    factors: Vec<Factor>,
    twist: BigInt,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial {
            factors: Vec::new(),
            twist: BigInt::one(),
        }
    }

    pub fn new(twist: &BigInt, mut factors: Vec<Factor>) -> Result<Self> {
        if twist.is_zero() {
            return Err(Error::InvalidUnit("twist by <0>".into()));
        }
        if factors
            .iter()
            .any(|f| matches!(f, Factor::U(0) | Factor::Sym3(0)))
        {
            return Err(Error::UnknownVariable("U0".into()));
        }
        factors.sort();
        Ok(Monomial {
            factors,
            twist: squarefree_part(twist),
        })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn twist(&self) -> &BigInt {
        &self.twist
    }

    pub fn rank(&self) -> u64 {
        self.factors.iter().map(|f| f.rank() as u64).product()
    }

    pub fn tensor(&self, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort();
        Monomial {
            factors,
            twist: squarefree_product(&self.twist, &other.twist),
        }
    }

    pub fn with_twist(&self, a: &BigInt) -> Monomial {
        Monomial {
            factors: self.factors.clone(),
            twist: squarefree_product(&self.twist, &squarefree_part(a)),
        }
    }

    pub fn untwisted(&self) -> Monomial {
        Monomial {
            factors: self.factors.clone(),
            twist: BigInt::one(),
        }
    }

    pub fn count_h(&self) -> usize {
        self.factors.iter().filter(|f| **f == Factor::H).count()
    }

    /// Largest factor index mentioned, 0 if none.
    pub fn max_index(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::U(i) | Factor::Sym3(i) => *i,
                Factor::H => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.twist.is_one() {
            parts.push(format!("<{}>", self.twist));
        }
        parts.extend(self.factors.iter().map(|x| x.to_string()));
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VirtualBundle {
    terms: BTreeMap<Monomial, BigInt>,
}

impl VirtualBundle {
    pub fn zero() -> Self {
        VirtualBundle {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::zero().plus_term(m, BigInt::one())
    }

    /// The trivial line bundle; unit for the tensor product.
    pub fn one() -> Self {
        Self::from_monomial(Monomial::unit())
    }

    pub fn taut(i: usize) -> Result<Self> {
        Ok(Self::from_monomial(Monomial::new(
            &BigInt::one(),
            vec![Factor::U(i)],
        )?))
    }

    pub fn hyperbolic() -> Self {
        Self::from_monomial(Monomial {
            factors: vec![Factor::H],
            twist: BigInt::one(),
        })
    }

    pub fn sym3(i: usize) -> Result<Self> {
        Ok(Self::from_monomial(Monomial::new(
            &BigInt::one(),
            vec![Factor::Sym3(i)],
        )?))
    }

    /// <a> * self.
    pub fn twist(&self, a: &BigInt) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidUnit("twist by <0>".into()));
        }
        let mut out = Self::zero();
        for (m, n) in &self.terms {
            out = out.plus_term(m.with_twist(a), n.clone());
        }
        Ok(out)
    }

    fn plus_term(mut self, m: Monomial, n: BigInt) -> Self {
        if n.is_zero() {
            return self;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *e += n;
        if e.is_zero() {
            self.terms.remove(&m);
        }
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, n) in &other.terms {
            out = out.plus_term(m.clone(), n.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        VirtualBundle {
            terms: self.terms.iter().map(|(m, n)| (m.clone(), -n)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (m, n) in &self.terms {
            out = out.plus_term(m.clone(), n * k);
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, n1) in &self.terms {
            for (m2, n2) in &other.terms {
                out = out.plus_term(m1.tensor(m2), n1 * n2);
            }
        }
        out
    }

    /// Largest factor index mentioned anywhere.
    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .map(Monomial::max_index)
            .max()
            .unwrap_or(0)
    }

    pub fn rank(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(m, n)| n * BigInt::from(m.rank()))
            .sum()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, n)| {
                json!({
                    "twist": int_json(&m.twist),
                    "factors": m.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "n": int_json(n),
                })
            })
            .collect();
        json!({ "terms": terms })
    }
}

/// Distribute the tensor product over the given factors; the empty list is
/// the trivial bundle.
pub fn tensor_expand(factors: &[VirtualBundle]) -> VirtualBundle {
    factors
        .iter()
        .fold(VirtualBundle::one(), |acc, f| acc.tensor(f))
}

impl fmt::Display for VirtualBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, n)) in self.terms.iter().enumerate() {
            let mag = n.abs();
            match (i, n.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{m}")?;
            } else if m.factors.is_empty() && m.twist.is_one() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Index of a U factor as a 0-based ambient variable.
pub(crate) fn var_index(i: usize) -> usize {
    i.checked_sub(1).expect("factor indices are 1-based")
}
