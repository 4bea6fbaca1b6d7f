//! The Borel character evaluated on bundles: normalized components B_{2n}
//! with values in the localized GW ring, Chern character components, and the
//! square relating them through the rank and signature maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::borel::{chow_monomial, witt_borel_poly};
use crate::bundles::VirtualBundle;
use crate::error::{Error, Result};
use crate::gw::Backend;
use crate::localization::{localize, normalization_factor, LocalizedGW, LocalizedRing};
use crate::operations::{chi_from_series, chi_gw};
use crate::poly::{AmbientSpec, PolyRing, TruncatedPoly};
use crate::ring::{Integers, Rationals, Ring};

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::from(1), |acc, k| acc * k)
}

/// ch_m = χ_m / m!, with χ_m taken over the Chern classes c_{2i} = (-1)^i b_i.
pub fn chern_component(
    m: usize,
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
) -> Result<TruncatedPoly<Rationals>> {
    if m == 0 {
        return Err(Error::InvalidIndex(
            "Chern character components start at 1".into(),
        ));
    }
    crate::borel::check_indices(v, ambient)?;
    let ring = PolyRing::new(Integers, ambient.clone());
    let mut chi = ring.zero();
    for (mono, k) in v.terms() {
        let b = chow_monomial(mono, ambient, m / 2)?;
        let c: Vec<_> = (1..=m)
            .map(|j| match (j % 2, (j / 2) % 2) {
                (1, _) => ring.zero(),
                (_, 0) => b.class(j / 2),
                _ => ring.neg(&b.class(j / 2)),
            })
            .collect();
        chi = ring.add(&chi, &ring.scale(&chi_from_series(&ring, m, &c)?, k));
    }
    let denom = BigRational::from_integer(factorial(m));
    Ok(chi.map_coeffs(Rationals, |x| BigRational::from_integer(x.clone()) / &denom))
}

/// B_{2n} for n = 1 or odd n ≥ 3: the normalized localized χ̃_{2n}.
pub fn borel_component(
    n: usize,
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
) -> Result<TruncatedPoly<LocalizedRing>> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidIndex(format!(
            "B_{{2n}} is defined for n = 1 and odd n, got n = {n}"
        )));
    }
    let ring = LocalizedRing::new(backend)?;
    let factor = normalization_factor(n, backend)?;
    chi_gw(n, v, ambient, backend)?.try_map_coeffs(ring, |c| Ok(factor.mul(&localize(c)?)))
}

/// All components of total degree at most `max_degree`.
#[derive(Clone, Debug)]
pub struct BorelCharacterValue {
    pub bundle: VirtualBundle,
    pub ambient: Arc<AmbientSpec>,
    pub b_components: BTreeMap<usize, TruncatedPoly<LocalizedRing>>,
    pub ch_components: BTreeMap<usize, TruncatedPoly<Rationals>>,
    pub square_ok: bool,
}

impl BorelCharacterValue {
    pub fn to_json(&self) -> Value {
        let b: Map<String, Value> = self
            .b_components
            .iter()
            .map(|(d, p)| (d.to_string(), p.to_json()["terms"].clone()))
            .collect();
        let ch: Map<String, Value> = self
            .ch_components
            .iter()
            .map(|(d, p)| (d.to_string(), p.to_json()["terms"].clone()))
            .collect();
        json!({
            "bundle": self.bundle.to_string(),
            "ambient": self.ambient.to_json(),
            "B": b,
            "ch": ch,
            "square_ok": self.square_ok,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (d, p) in &self.b_components {
            out.push_str(&format!("B{d} = {}\n", p.to_text()));
        }
        for (d, p) in &self.ch_components {
            out.push_str(&format!("ch{d} = {}\n", p.to_text()));
        }
        out.push_str(&format!(
            "square: {}\n",
            if self.square_ok { "ok" } else { "FAILED" }
        ));
        out
    }

    pub fn to_latex(&self) -> String {
        let mut lines: Vec<String> = self
            .b_components
            .iter()
            .map(|(d, p)| format!("B_{{{d}}} &= {}", p.to_latex()))
            .collect();
        lines.extend(
            self.ch_components
                .iter()
                .map(|(d, p)| format!("\\mathrm{{ch}}_{{{d}}} &= {}", p.to_latex())),
        );
        format!(
            "\\begin{{aligned}}\n{}\n\\end{{aligned}}\n",
            lines.join(" \\\\\n")
        )
    }
}

fn degrees(max_degree: usize) -> Vec<usize> {
    (1..)
        .step_by(2)
        .take_while(|n| 2 * n <= max_degree)
        .collect()
}

type Components = (
    BTreeMap<usize, TruncatedPoly<LocalizedRing>>,
    BTreeMap<usize, TruncatedPoly<Rationals>>,
);

fn components(
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
    max_degree: usize,
) -> Result<Components> {
    let pairs = degrees(max_degree)
        .into_par_iter()
        .map(|n| {
            Ok((
                2 * n,
                borel_component(n, v, ambient, backend)?,
                chern_component(2 * n, v, ambient)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut b = BTreeMap::new();
    let mut ch = BTreeMap::new();
    for (d, bp, cp) in pairs {
        b.insert(d, bp);
        ch.insert(d, cp);
    }
    Ok((b, ch))
}

fn square_holds(
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
    (b, ch): &Components,
) -> Result<bool> {
    for (d, bp) in b {
        let rank = bp.map_coeffs(Rationals, |x: &LocalizedGW| x.rank.clone());
        if !rank.equals(&ch[d]) {
            return Ok(false);
        }
    }
    let Some(b2) = b.get(&2) else { return Ok(true) };
    let witt = witt_borel_poly(v, ambient, backend, 1)?.class(1);
    for o in backend.orderings() {
        let from_b = b2.map_coeffs(Rationals, |x: &LocalizedGW| x.sigs[&o.label].clone());
        let from_witt = witt.try_map_coeffs(Rationals, |w| {
            Ok(BigRational::from_integer(w.signature(&o)?))
        })?;
        if !from_b.equals(&from_witt) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn bo(
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
    max_degree: usize,
) -> Result<BorelCharacterValue> {
    let comps = components(v, ambient, backend, max_degree)?;
    let square_ok = square_holds(v, ambient, backend, &comps)?;
    let (b_components, ch_components) = comps;
    Ok(BorelCharacterValue {
        bundle: v.clone(),
        ambient: ambient.clone(),
        b_components,
        ch_components,
        square_ok,
    })
}

/// Whether rank(B_{2n}) = ch_{2n} in every computed degree and the
/// signatures of B_2 agree with those of the Witt-valued b_1.
pub fn check_square(
    v: &VirtualBundle,
    ambient: &Arc<AmbientSpec>,
    backend: Backend,
    max_degree: usize,
) -> Result<bool> {
    square_holds(
        v,
        ambient,
        backend,
        &components(v, ambient, backend, max_degree)?,
    )
}
