use num_bigint::BigInt;

use super::{Backend, GWElement};
use crate::ring::Ring;

/// GW(k) as a coefficient ring. Zero test is GW-equality with 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GwRing {
    pub backend: Backend,
}

impl GwRing {
    pub fn new(backend: Backend) -> Self {
        GwRing { backend }
    }
}

impl Ring for GwRing {
    type Elem = GWElement;

    fn zero(&self) -> GWElement {
        GWElement::zero(self.backend)
    }
    fn one(&self) -> GWElement {
        GWElement::one(self.backend)
    }
    fn is_zero(&self, x: &GWElement) -> bool {
        x.is_zero_gw()
    }
    fn add(&self, a: &GWElement, b: &GWElement) -> GWElement {
        a.checked_add(b).expect("GW ring elements share a backend")
    }
    fn neg(&self, a: &GWElement) -> GWElement {
        a.neg()
    }
    fn mul(&self, a: &GWElement, b: &GWElement) -> GWElement {
        a.checked_mul(b).expect("GW ring elements share a backend")
    }
    fn from_int(&self, n: &BigInt) -> GWElement {
        GWElement::from_int(self.backend, n.clone())
    }
}

/// W(k) as a coefficient ring, with GW elements as representatives.
/// Results are kept in witt-reduced form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WittRing {
    pub backend: Backend,
}

impl WittRing {
    pub fn new(backend: Backend) -> Self {
        WittRing { backend }
    }
}

impl Ring for WittRing {
    type Elem = GWElement;

    fn zero(&self) -> GWElement {
        GWElement::zero(self.backend)
    }
    fn one(&self) -> GWElement {
        GWElement::one(self.backend)
    }
    fn is_zero(&self, x: &GWElement) -> bool {
        x.is_zero_witt()
    }
    fn add(&self, a: &GWElement, b: &GWElement) -> GWElement {
        a.checked_add(b)
            .expect("Witt ring elements share a backend")
            .witt_reduced()
    }
    fn neg(&self, a: &GWElement) -> GWElement {
        a.neg()
    }
    fn mul(&self, a: &GWElement, b: &GWElement) -> GWElement {
        a.checked_mul(b)
            .expect("Witt ring elements share a backend")
            .witt_reduced()
    }
    fn from_int(&self, n: &BigInt) -> GWElement {
        GWElement::from_int(self.backend, n.clone()).witt_reduced()
    }
}
