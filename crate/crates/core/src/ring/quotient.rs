use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::finite::{ElemId, FiniteRing};
use crate::ring::ideal::Ideal;

/// `R / I`, with the canonical (smallest) representative of each coset.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    ambient: Arc<FiniteRing>,
    modulus: Ideal,
    reps: Vec<ElemId>,
    reduce: Vec<ElemId>,
    ring: Arc<FiniteRing>,
}

impl QuotientRing {
    pub fn new(ambient: &Arc<FiniteRing>, modulus: &Ideal) -> Result<Self> {
        let (ring, reps, reduce) = ambient.quotient_parts(modulus)?;
        Ok(Self {
            ambient: Arc::clone(ambient),
            modulus: modulus.clone(),
            reps,
            reduce,
            ring: Arc::new(ring),
        })
    }

    pub fn ambient(&self) -> &Arc<FiniteRing> {
        &self.ambient
    }

    pub fn modulus(&self) -> &Ideal {
        &self.modulus
    }

    /// The quotient as a ring in its own right; id `i` is the coset of `reps()[i]`.
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn reps(&self) -> &[ElemId] {
        &self.reps
    }

    /// Ambient element to coset id.
    pub fn reduce(&self, a: ElemId) -> ElemId {
        self.reduce[a]
    }

    /// Coset id to its canonical ambient representative.
    pub fn lift(&self, c: ElemId) -> ElemId {
        self.reps[c]
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }
}

impl FiniteRing {
    /// Builds the quotient ring tables plus the representative list and the
    /// reduction map. Fails if `ideal` is not an ideal.
    pub(crate) fn quotient_parts(
        &self,
        ideal: &Ideal,
    ) -> Result<(FiniteRing, Vec<ElemId>, Vec<ElemId>)> {
        self.check_ideal(ideal.elements())?;
        let n = self.order();
        let mut reduce = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(n / ideal.len());
        for a in self.elements() {
            if reduce[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for &i in ideal.elements() {
                reduce[self.add(a, i)] = c;
            }
        }
        let m = reps.len();
        if m * ideal.len() != n {
            return Err(Error::Invariant("cosets do not partition the ring".into()));
        }
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                add.push(reduce[self.add(a, b)] as u16);
                mul.push(reduce[self.mul(a, b)] as u16);
            }
        }
        let neg = reps.iter().map(|&a| reduce[self.neg(a)] as u16).collect();
        let labels = reps.iter().map(|&a| self.label(a).to_string()).collect();
        let ring = FiniteRing::from_tables(add, mul, neg, reduce[self.one()], labels)?;
        Ok((ring, reps, reduce))
    }
}
