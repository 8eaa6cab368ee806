//! Decomposition into local factors via primitive idempotents, and the
//! invariants derived from it: the Möbius value and the reduction onto the
//! residue fields equal to `F2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::finite::{ElemId, FiniteRing};

/// The local ring `eR` cut out by a primitive idempotent `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactor {
    pub idempotent: ElemId,
    /// `eR` as ambient ids, sorted. Its identity is `idempotent`.
    pub carrier: Vec<ElemId>,
    /// Non-units of `eR`, sorted.
    pub maximal_ideal: Vec<ElemId>,
    pub residue_field_size: usize,
}

impl LocalFactor {
    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_field(&self) -> bool {
        self.maximal_ideal.len() == 1
    }

    pub fn euler_phi(&self) -> u64 {
        (self.carrier.len() - self.maximal_ideal.len()) as u64
    }
}

impl FiniteRing {
    /// Local factors, one per primitive idempotent, in canonical order of
    /// their idempotents. Empty for the trivial ring.
    pub fn local_decomposition(&self) -> Result<&[LocalFactor]> {
        self.local_cache()
            .get_or_init(|| self.compute_local_decomposition())
            .as_deref()
            .map_err(Clone::clone)
    }

    fn compute_local_decomposition(&self) -> Result<Vec<LocalFactor>> {
        if self.order() == 1 {
            return Ok(Vec::new());
        }
        let idem = self.idempotents();
        // e is primitive iff no nonzero idempotent f != e lies below it (ef = f).
        let primitive: Vec<ElemId> = idem
            .iter()
            .copied()
            .filter(|&e| e != 0)
            .filter(|&e| {
                !idem
                    .iter()
                    .any(|&f| f != 0 && f != e && self.mul(e, f) == f)
            })
            .collect();

        let mut total = 0;
        for (i, &e) in primitive.iter().enumerate() {
            total = self.add(total, e);
            for &f in &primitive[i + 1..] {
                if self.mul(e, f) != 0 {
                    return Err(Error::Invariant(
                        "primitive idempotents not orthogonal".into(),
                    ));
                }
            }
        }
        if total != self.one() {
            return Err(Error::Invariant(
                "primitive idempotents do not sum to 1".into(),
            ));
        }

        let mut factors = Vec::with_capacity(primitive.len());
        for e in primitive {
            let mut carrier: Vec<ElemId> = self.elements().map(|a| self.mul(e, a)).collect();
            carrier.sort_unstable();
            carrier.dedup();
            let maximal_ideal: Vec<ElemId> = carrier
                .iter()
                .copied()
                .filter(|&u| !carrier.iter().any(|&v| self.mul(u, v) == e))
                .collect();
            for &a in &maximal_ideal {
                for &b in &maximal_ideal {
                    if maximal_ideal.binary_search(&self.add(a, b)).is_err() {
                        return Err(Error::Invariant(format!(
                            "factor with idempotent {} is not local",
                            self.label(e)
                        )));
                    }
                }
            }
            let residue = carrier.len() / maximal_ideal.len();
            if !carrier.len().is_multiple_of(maximal_ideal.len())
                || crate::arith::prime_power(residue as u64).is_none()
            {
                return Err(Error::Invariant(format!(
                    "residue field size {residue} is not a prime power"
                )));
            }
            factors.push(LocalFactor {
                idempotent: e,
                carrier,
                maximal_ideal,
                residue_field_size: residue,
            });
        }
        Ok(factors)
    }

    /// `1` for the trivial ring, `0` if some local factor is not a field,
    /// otherwise `(-1)^d` for `d` field factors.
    pub fn moebius(&self) -> Result<i64> {
        if self.order() == 1 {
            return Ok(1);
        }
        let factors = self.local_decomposition()?;
        if factors.iter().any(|f| !f.is_field()) {
            Ok(0)
        } else if factors.len() % 2 == 0 {
            Ok(1)
        } else {
            Ok(-1)
        }
    }

    /// The surjection `R -> F2^r` onto the product of the residue fields of
    /// size two.
    pub fn f2_reduction(&self) -> Result<F2Reduction> {
        let factors = self.local_decomposition()?;
        let selected: Vec<(ElemId, Vec<bool>)> = factors
            .iter()
            .filter(|f| f.residue_field_size == 2)
            .map(|f| {
                let mut unit = vec![false; self.order()];
                for &a in &f.carrier {
                    unit[a] = f.maximal_ideal.binary_search(&a).is_err();
                }
                (f.idempotent, unit)
            })
            .collect();
        if selected.len() > 31 {
            return Err(Error::Cap {
                what: "F2 reduction rank",
                actual: selected.len(),
                limit: 31,
            });
        }
        Ok(F2Reduction { factors: selected })
    }
}

/// Bit `i` of the image of `a` is `1` iff `a e_i` is a unit of the `i`-th
/// local factor with residue field `F2`.
#[derive(Clone, Debug)]
pub struct F2Reduction {
    factors: Vec<(ElemId, Vec<bool>)>,
}

impl F2Reduction {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn map(&self, ring: &FiniteRing, a: ElemId) -> u32 {
        self.factors
            .iter()
            .enumerate()
            .fold(0, |bits, (i, (e, is_unit))| {
                if is_unit[ring.mul(a, *e)] {
                    bits | (1 << i)
                } else {
                    bits
                }
            })
    }

    /// Idempotents of the selected factors.
    pub fn idempotents(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.factors.iter().map(|(e, _)| *e)
    }
}

/// Renders `bits` of rank `r` as a string, bit 0 first.
pub fn format_bits(bits: u32, r: usize) -> String {
    (0..r)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}
