//! Borel polynomials b_t = 1 + b_1 t + b_2 t^2 + ... of virtual bundles, in
//! the Chow, Witt and Grothendieck–Witt channels.

mod chow;
pub(crate) mod derive;
mod lift;
mod witt;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::bundles::VirtualBundle;
use crate::error::{Error, Result};
use crate::gw::{Backend, GwRing, WittRing};
use crate::poly::{AmbientSpec, CoeffFormat, PolyRing, TruncatedPoly};
use crate::ring::{Integers, Ring};

pub use chow::{chow_borel_poly, RootElem, RootRing};
pub use derive::{derive_cube_classes, derive_sym3_classes, derive_threefold_witt, WittTables};
pub use lift::{gw_borel_classes, lift_poly, lift_scalar, lift_to_gw};
pub use witt::witt_borel_poly;

pub(crate) use chow::chow_monomial;
pub(crate) use lift::gw_unchecked;
pub(crate) use witt::witt_monomial;

/// Truncated series 1 + b_1 t + ... + b_D t^D with polynomial coefficients.
#[derive(Clone, Debug)]
pub struct BorelPolynomial<R: Ring> {
    ring: PolyRing<R>,
    classes: Vec<TruncatedPoly<R>>,
}

impl<R: Ring> BorelPolynomial<R> {
    pub fn one(coeffs: R, ambient: Arc<AmbientSpec>, max_degree: usize) -> Self {
        let ring = PolyRing::new(coeffs, ambient);
        let mut classes = vec![ring.zero(); max_degree + 1];
        classes[0] = ring.one();
        BorelPolynomial { ring, classes }
    }

    /// 1 + b_1 t + ...; `classes[0]` is b_1. Classes past `max_degree` are dropped.
    pub fn from_classes(
        coeffs: R,
        ambient: Arc<AmbientSpec>,
        max_degree: usize,
        classes: Vec<TruncatedPoly<R>>,
    ) -> Result<Self> {
        let mut out = Self::one(coeffs, ambient, max_degree);
        for (i, c) in classes.into_iter().enumerate() {
            if c.ambient() != &out.ring.ambient {
                return Err(Error::AmbientMismatch(format!(
                    "{} vs {}",
                    c.ambient(),
                    out.ring.ambient
                )));
            }
            if i < max_degree {
                out.classes[i + 1] = c;
            }
        }
        Ok(out)
    }

    pub fn ambient(&self) -> &Arc<AmbientSpec> {
        &self.ring.ambient
    }

    pub fn coeff_ring(&self) -> &R {
        &self.ring.coeffs
    }

    pub fn poly_ring(&self) -> &PolyRing<R> {
        &self.ring
    }

    pub fn max_degree(&self) -> usize {
        self.classes.len() - 1
    }

    /// b_i, zero beyond the series precision.
    pub fn class(&self, i: usize) -> TruncatedPoly<R> {
        self.classes
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// b_1, ..., b_D.
    pub fn classes(&self) -> &[TruncatedPoly<R>] {
        &self.classes[1..]
    }

    /// Same series at a different precision, padding with zeros.
    pub fn with_max_degree(&self, d: usize) -> Self {
        let mut classes = self.classes.clone();
        classes.resize(d + 1, self.ring.zero());
        BorelPolynomial {
            ring: self.ring.clone(),
            classes,
        }
    }

    /// Whitney product; precision is the smaller of the two.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring.ambient != other.ring.ambient {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {}",
                self.ring.ambient, other.ring.ambient
            )));
        }
        let d = self.max_degree().min(other.max_degree());
        let mut classes = vec![self.ring.zero(); d + 1];
        for (i, slot) in classes.iter_mut().enumerate() {
            for j in 0..=i {
                if self.classes[j].is_zero() || other.classes[i - j].is_zero() {
                    continue;
                }
                let p = self.ring.mul(&self.classes[j], &other.classes[i - j]);
                *slot = self.ring.add(slot, &p);
            }
        }
        Ok(BorelPolynomial {
            ring: self.ring.clone(),
            classes,
        })
    }

    /// Formal inverse series, for negative multiplicities.
    pub fn inverse(&self) -> Self {
        let d = self.max_degree();
        let mut inv = vec![self.ring.zero(); d + 1];
        inv[0] = self.ring.one();
        for k in 1..=d {
            let mut acc = self.ring.zero();
            for i in 1..=k {
                if self.classes[i].is_zero() || inv[k - i].is_zero() {
                    continue;
                }
                acc = self
                    .ring
                    .add(&acc, &self.ring.mul(&self.classes[i], &inv[k - i]));
            }
            inv[k] = self.ring.neg(&acc);
        }
        BorelPolynomial {
            ring: self.ring.clone(),
            classes: inv,
        }
    }

    /// b_t^n for any integer n.
    pub fn power(&self, n: &BigInt) -> Result<Self> {
        let base = if n.is_negative() {
            self.inverse()
        } else {
            self.clone()
        };
        let k = n
            .abs()
            .to_u64()
            .ok_or_else(|| Error::InvalidIndex(format!("multiplicity {n} is too large")))?;
        let mut acc = Self::one(
            self.ring.coeffs.clone(),
            self.ring.ambient.clone(),
            self.max_degree(),
        );
        for _ in 0..k {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn map_classes(&self, f: impl Fn(usize, &TruncatedPoly<R>) -> TruncatedPoly<R>) -> Self {
        let classes = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { c.clone() } else { f(i, c) })
            .collect();
        BorelPolynomial {
            ring: self.ring.clone(),
            classes,
        }
    }

    pub fn specialize(
        &self,
        target: &Arc<AmbientSpec>,
        assignment: &[Option<usize>],
    ) -> Result<Self> {
        let classes = self
            .classes
            .iter()
            .map(|c| c.specialize(target, assignment))
            .collect::<Result<Vec<_>>>()?;
        Ok(BorelPolynomial {
            ring: PolyRing::new(self.ring.coeffs.clone(), target.clone()),
            classes,
        })
    }

    pub fn equals(&self, other: &Self) -> bool {
        let d = self.max_degree().max(other.max_degree());
        (0..=d).all(|i| self.class(i).equals(&other.class(i)))
    }
}

impl<R: CoeffFormat> BorelPolynomial<R> {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.classes().iter().enumerate() {
            out.push_str(&format!("b{} = {}\n", i + 1, c.to_text()));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let lines: Vec<String> = self
            .classes()
            .iter()
            .enumerate()
            .map(|(i, c)| format!("b_{{{}}} &= {}", i + 1, c.to_latex()))
            .collect();
        format!(
            "\\begin{{aligned}}\n{}\n\\end{{aligned}}\n",
            lines.join(" \\\\\n")
        )
    }

    pub fn to_json(&self) -> Value {
        let mut classes = Map::new();
        for (i, c) in self.classes().iter().enumerate() {
            classes.insert((i + 1).to_string(), c.to_json()["terms"].clone());
        }
        json!({ "ambient": self.ring.ambient.to_json(), "classes": classes })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    Chow,
    Witt,
    Gw,
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Chow => "chow",
            Channel::Witt => "witt",
            Channel::Gw => "gw",
        })
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chow" | "ch" => Ok(Channel::Chow),
            "witt" | "w" => Ok(Channel::Witt),
            "gw" | "chow-witt" => Ok(Channel::Gw),
            other => Err(Error::InvalidBackend(format!("unknown channel {other}"))),
        }
    }
}

/// A Borel polynomial in whichever channel was requested.
#[derive(Clone, Debug)]
pub enum ChannelBorel {
    Chow(BorelPolynomial<Integers>),
    Witt(BorelPolynomial<WittRing>),
    Gw(BorelPolynomial<GwRing>),
}

impl ChannelBorel {
    pub fn to_text(&self) -> String {
        match self {
            ChannelBorel::Chow(b) => b.to_text(),
            ChannelBorel::Witt(b) => b.to_text(),
            ChannelBorel::Gw(b) => b.to_text(),
        }
    }

    pub fn to_latex(&self) -> String {
        match self {
            ChannelBorel::Chow(b) => b.to_latex(),
            ChannelBorel::Witt(b) => b.to_latex(),
            ChannelBorel::Gw(b) => b.to_latex(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ChannelBorel::Chow(b) => b.to_json(),
            ChannelBorel::Witt(b) => b.to_json(),
            ChannelBorel::Gw(b) => b.to_json(),
        }
    }
}

pub fn borel_classes(
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    channel: Channel,
    backend: Backend,
    max_degree: usize,
) -> Result<ChannelBorel> {
    Ok(match channel {
        Channel::Chow => ChannelBorel::Chow(chow_borel_poly(v, ambient, max_degree)?),
        Channel::Witt => ChannelBorel::Witt(witt_borel_poly(v, ambient, backend, max_degree)?),
        Channel::Gw => ChannelBorel::Gw(gw_borel_classes(v, ambient, backend, max_degree)?),
    })
}

/// Rejects series precisions the ambient cannot hold, and U indices it lacks.
pub(crate) fn check_request(
    v: &VirtualBundle,
    ambient: &AmbientSpec,
    max_degree: usize,
) -> Result<()> {
    if let Some(avail) = ambient.max_total_degree() {
        if max_degree > avail {
            return Err(Error::TruncationOverflow {
                requested: max_degree,
                available: avail,
            });
        }
    }
    check_indices(v, ambient)
}

pub(crate) fn check_indices(v: &VirtualBundle, ambient: &AmbientSpec) -> Result<()> {
    let k = v.max_index();
    if k > ambient.len() {
        return Err(Error::AmbientMismatch(format!(
            "bundle mentions U{k} but the ambient {ambient} has {} factors",
            ambient.len()
        )));
    }
    Ok(())
}
