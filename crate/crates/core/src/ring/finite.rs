//! Fully tabulated finite commutative rings.
//!
//! Every ring the library works with, whether built from a tower product or
//! obtained as a quotient, is lowered to a [`FiniteRing`]: elements are ids
//! `0..order` ordered canonically, `0` is the zero element, and addition and
//! multiplication are lookup tables.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::ring::local::LocalFactor;

pub type ElemId = usize;

/// Largest order whose ids fit the `u16` tables.
pub const TABLE_LIMIT: usize = 1 << 16;

/// Order, unit count and Möbius value of a quotient `R / Ann_R(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub order: usize,
    pub phi: u64,
    pub mu: i64,
}

pub struct FiniteRing {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    one: ElemId,
    characteristic: u64,
    labels: Vec<String>,
    units: OnceLock<Vec<bool>>,
    idempotents: OnceLock<Vec<ElemId>>,
    local: OnceLock<Result<Vec<LocalFactor>>>,
    ann_quotients: Mutex<HashMap<Vec<ElemId>, QuotientInvariants>>,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order)
            .field("characteristic", &self.characteristic)
            .finish_non_exhaustive()
    }
}

impl FiniteRing {
    /// Assembles a ring from row-major `order x order` tables. Id `0` must be
    /// the additive identity.
    pub(crate) fn from_tables(
        add: Vec<u16>,
        mul: Vec<u16>,
        neg: Vec<u16>,
        one: ElemId,
        labels: Vec<String>,
    ) -> Result<Self> {
        let order = labels.len();
        if order == 0 || order > TABLE_LIMIT {
            return Err(Error::Cap {
                what: "ring order",
                actual: order,
                limit: TABLE_LIMIT,
            });
        }
        if add.len() != order * order || mul.len() != order * order || neg.len() != order {
            return Err(Error::Structural(
                "table sizes do not match ring order".into(),
            ));
        }
        let mut ring = Self {
            order,
            add,
            mul,
            neg,
            one,
            characteristic: 0,
            labels,
            units: OnceLock::new(),
            idempotents: OnceLock::new(),
            local: OnceLock::new(),
            ann_quotients: Mutex::new(HashMap::new()),
        };
        let mut k = 1u64;
        let mut x = ring.one;
        while x != 0 {
            x = ring.add(x, ring.one);
            k += 1;
        }
        ring.characteristic = k;
        Ok(ring)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.order
    }

    pub fn zero(&self) -> ElemId {
        0
    }

    pub fn one(&self) -> ElemId {
        self.one
    }

    #[inline]
    pub fn add(&self, a: ElemId, b: ElemId) -> ElemId {
        self.add[a * self.order + b] as ElemId
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul[a * self.order + b] as ElemId
    }

    #[inline]
    pub fn neg(&self, a: ElemId) -> ElemId {
        self.neg[a] as ElemId
    }

    #[inline]
    pub fn sub(&self, a: ElemId, b: ElemId) -> ElemId {
        self.add(a, self.neg(b))
    }

    /// `k * a` for a non-negative integer `k`.
    pub fn scalar(&self, k: u64, a: ElemId) -> ElemId {
        let mut acc = 0;
        let mut base = a;
        let mut k = k % self.characteristic.max(1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Canonical serialization of an element.
    pub fn label(&self, a: ElemId) -> &str {
        &self.labels[a]
    }

    pub fn find_label(&self, label: &str) -> Option<ElemId> {
        self.labels.iter().position(|l| l == label)
    }

    fn unit_mask(&self) -> &[bool] {
        self.units.get_or_init(|| {
            let n = self.order;
            let mut unit = vec![false; n];
            for a in 0..n {
                if unit[a] {
                    continue;
                }
                for b in 0..n {
                    let p = self.mul(a, b);
                    if p == self.one {
                        unit[a] = true;
                        unit[b] = true;
                        break;
                    }
                    if p == 0 && b != 0 {
                        // zero divisor
                        break;
                    }
                }
            }
            unit
        })
    }

    /// Whether multiplication by `a` is invertible.
    pub fn is_unit(&self, a: ElemId) -> bool {
        self.unit_mask()[a]
    }

    pub fn units(&self) -> Vec<ElemId> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    /// Number of units.
    pub fn euler_phi(&self) -> u64 {
        self.unit_mask().iter().filter(|&&u| u).count() as u64
    }

    /// All `e` with `e * e = e`, in canonical order.
    pub fn idempotents(&self) -> &[ElemId] {
        self.idempotents
            .get_or_init(|| self.elements().filter(|&e| self.mul(e, e) == e).collect())
    }

    pub(crate) fn local_cache(&self) -> &OnceLock<Result<Vec<LocalFactor>>> {
        &self.local
    }

    /// `{u * a : u unit}`, sorted.
    pub fn unit_orbit(&self, a: ElemId) -> Vec<ElemId> {
        let mut orbit: Vec<ElemId> = self.units().into_iter().map(|u| self.mul(u, a)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    /// Partition of the ring into unit orbits, each sorted, ordered by their
    /// smallest element.
    pub fn unit_orbits(&self) -> Vec<Vec<ElemId>> {
        let units = self.units();
        let mut seen = vec![false; self.order];
        let mut orbits = Vec::new();
        for a in self.elements() {
            if seen[a] {
                continue;
            }
            let mut orbit: Vec<ElemId> = units.iter().map(|&u| self.mul(u, a)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &b in &orbit {
                seen[b] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Order, `phi` and `mu` of `R / Ann_R(y)`, memoized by the annihilator.
    pub fn annihilator_quotient(&self, y: ElemId) -> Result<QuotientInvariants> {
        let ann = self.annihilator(y);
        if let Some(inv) = self.ann_quotients.lock().unwrap().get(ann.elements()) {
            return Ok(*inv);
        }
        let (quotient, _, _) = self.quotient_parts(&ann)?;
        let inv = QuotientInvariants {
            order: quotient.order(),
            phi: quotient.euler_phi(),
            mu: quotient.moebius()?,
        };
        self.ann_quotients
            .lock()
            .unwrap()
            .insert(ann.elements().to_vec(), inv);
        Ok(inv)
    }
}
