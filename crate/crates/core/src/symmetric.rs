//! Z/n-linear functionals and the non-degeneracy certificate that makes a
//! ring a symmetric Z/n-algebra.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{ElemId, FiniteRing, QuotientRing, RingDescriptor};

/// Default cap on the number of functionals [`enumerate_functionals`] will list.
pub const FUNCTIONAL_CAP: usize = 512;

/// An additive map `R -> Z/n`, stored as a value table over element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearFunctional {
    modulus: u64,
    values: Vec<u64>,
}

impl LinearFunctional {
    /// Wraps a value table after checking it is additive mod `modulus`.
    pub fn from_values(ring: &FiniteRing, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if values.len() != ring.order() {
            return Err(Error::Argument(format!(
                "functional has {} values for a ring of order {}",
                values.len(),
                ring.order()
            )));
        }
        let psi = Self {
            modulus,
            values: values.into_iter().map(|v| v % modulus).collect(),
        };
        if !psi.is_additive(ring) {
            return Err(Error::Argument("value table is not additive".into()));
        }
        Ok(psi)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn value(&self, a: ElemId) -> u64 {
        self.values[a]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_additive(&self, ring: &FiniteRing) -> bool {
        let n = self.modulus;
        ring.elements().all(|a| {
            ring.elements()
                .all(|b| self.value(ring.add(a, b)) == (self.value(a) + self.value(b)) % n)
        })
    }
}

/// The top-coefficient functional: on each tower, the coefficient of the
/// highest monomial, embedded into `Z/n` by the factor `n / m`; summed over
/// the factors of a product.
pub fn canonical_functional(desc: &RingDescriptor) -> Result<LinearFunctional> {
    let ring = desc.finite();
    let n = desc.characteristic();
    let values = ring
        .elements()
        .map(|id| {
            let e = desc.from_index(id);
            desc.factors()
                .iter()
                .zip(e.coeffs())
                .map(|(t, c)| *c.last().unwrap() as u64 * (n / t.base_modulus() as u64))
                .sum::<u64>()
                % n
        })
        .collect();
    let psi = LinearFunctional { modulus: n, values };
    if !is_nondegenerate(ring, &psi) {
        return Err(Error::Invariant(format!(
            "top-coefficient functional on {desc} is degenerate"
        )));
    }
    Ok(psi)
}

/// True iff no nonzero ideal lies in `ker psi`. Every nonzero ideal
/// contains a nonzero principal ideal, so scanning `Ra` for `a != 0` suffices.
pub fn is_nondegenerate(ring: &FiniteRing, psi: &LinearFunctional) -> bool {
    ring.elements()
        .skip(1)
        .all(|a| ring.elements().any(|b| psi.value(ring.mul(b, a)) != 0))
}

/// `psi_x(a + Ann(x)) = psi(a x)` on `R / Ann_R(x)`.
pub fn induced_functional(
    ring: &Arc<FiniteRing>,
    psi: &LinearFunctional,
    x: ElemId,
) -> Result<(QuotientRing, LinearFunctional)> {
    let quotient = QuotientRing::new(ring, &ring.annihilator(x))?;
    let values: Vec<u64> = quotient
        .reps()
        .iter()
        .map(|&r| psi.value(ring.mul(r, x)))
        .collect();
    for a in ring.elements() {
        if values[quotient.reduce(a)] != psi.value(ring.mul(a, x)) {
            return Err(Error::Invariant(format!(
                "induced functional not constant on the coset of {}",
                ring.label(a)
            )));
        }
    }
    let induced = LinearFunctional {
        modulus: psi.modulus(),
        values,
    };
    Ok((quotient, induced))
}

/// One step of an additive generating chain `0 = H_0 < H_1 < ... < H_s = R`
/// with `H_{i+1} = H_i + <g>`.
struct ChainLevel {
    /// Smallest `k > 0` with `k g` in the previous subgroup.
    relative_order: u64,
    anchor: ElemId,
    /// `(h + j g, h, j)` for each new element.
    new: Vec<(ElemId, ElemId, u64)>,
}

fn additive_chain(ring: &FiniteRing) -> Vec<ChainLevel> {
    let mut in_h = vec![false; ring.order()];
    in_h[0] = true;
    let mut members = vec![0];
    let mut levels = Vec::new();
    while members.len() < ring.order() {
        let g = ring.elements().find(|&a| !in_h[a]).unwrap();
        let mut multiples = vec![0, g];
        while !in_h[*multiples.last().unwrap()] {
            let next = ring.add(*multiples.last().unwrap(), g);
            multiples.push(next);
        }
        let k = multiples.len() - 1;
        let anchor = multiples[k];
        let mut new = Vec::new();
        for &h in &members {
            for (j, &m) in multiples.iter().enumerate().take(k).skip(1) {
                new.push((ring.add(h, m), h, j as u64));
            }
        }
        for &(t, _, _) in &new {
            in_h[t] = true;
        }
        members.extend(new.iter().map(|&(t, _, _)| t));
        levels.push(ChainLevel {
            relative_order: k as u64,
            anchor,
            new,
        });
    }
    levels
}

fn check_modulus(ring: &FiniteRing, modulus: u64) -> Result<()> {
    if modulus == 0 || !modulus.is_multiple_of(ring.characteristic()) {
        return Err(Error::Argument(format!(
            "ring of characteristic {} is not a Z/{modulus}-algebra",
            ring.characteristic()
        )));
    }
    Ok(())
}

/// Number of additive maps `R -> Z/n`.
pub fn count_functionals(ring: &FiniteRing, modulus: u64) -> Result<u128> {
    check_modulus(ring, modulus)?;
    // Z/n is self-injective, so every level extends in gcd(k, n) ways.
    Ok(additive_chain(ring)
        .iter()
        .map(|l| crate::arith::gcd(l.relative_order, modulus) as u128)
        .product())
}

/// All additive maps `R -> Z/n`, built by extending along an additive
/// generating chain. Errors if there are more than `cap`.
pub fn enumerate_functionals(
    ring: &FiniteRing,
    modulus: u64,
    cap: usize,
) -> Result<Vec<LinearFunctional>> {
    let count = count_functionals(ring, modulus)?;
    if count > cap as u128 {
        return Err(Error::Argument(format!(
            "{count} functionals exceed the enumeration cap {cap}"
        )));
    }
    let levels = additive_chain(ring);
    let mut out = Vec::with_capacity(count as usize);
    let mut values = vec![0u64; ring.order()];
    extend_all(&levels, 0, modulus, &mut values, &mut out);
    Ok(out)
}

fn valid_values(level: &ChainLevel, modulus: u64, values: &[u64]) -> impl Iterator<Item = u64> {
    let k = level.relative_order;
    let target = values[level.anchor];
    (0..modulus).filter(move |&v| (k * v) % modulus == target)
}

fn apply_level(level: &ChainLevel, modulus: u64, v: u64, values: &mut [u64]) {
    for &(t, h, j) in &level.new {
        values[t] = (values[h] + j * v) % modulus;
    }
}

fn extend_all(
    levels: &[ChainLevel],
    depth: usize,
    modulus: u64,
    values: &mut Vec<u64>,
    out: &mut Vec<LinearFunctional>,
) {
    let Some(level) = levels.get(depth) else {
        out.push(LinearFunctional {
            modulus,
            values: values.clone(),
        });
        return;
    };
    let choices: Vec<u64> = valid_values(level, modulus, values).collect();
    for v in choices {
        apply_level(level, modulus, v, values);
        extend_all(levels, depth + 1, modulus, values, out);
    }
}

/// A uniformly random additive map `R -> Z/n`.
pub fn random_functional(
    ring: &FiniteRing,
    modulus: u64,
    rng: &mut impl Rng,
) -> Result<LinearFunctional> {
    check_modulus(ring, modulus)?;
    let mut values = vec![0u64; ring.order()];
    for level in additive_chain(ring) {
        let choices: Vec<u64> = valid_values(&level, modulus, &values).collect();
        let v = choices[rng.gen_range(0..choices.len())];
        apply_level(&level, modulus, v, &mut values);
    }
    Ok(LinearFunctional { modulus, values })
}

/// A random non-degenerate functional, or `None` after `attempts` misses.
pub fn random_nondegenerate(
    ring: &FiniteRing,
    modulus: u64,
    rng: &mut impl Rng,
    attempts: usize,
) -> Result<Option<LinearFunctional>> {
    for _ in 0..attempts {
        let psi = random_functional(ring, modulus, rng)?;
        if is_nondegenerate(ring, &psi) {
            return Ok(Some(psi));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn ring(spec: &str) -> RingDescriptor {
        RingDescriptor::parse(spec).unwrap()
    }

    #[test]
    fn canonical_on_cyclic_ring_is_identity() {
        let r = ring("Z/6");
        let psi = canonical_functional(&r).unwrap();
        assert_eq!(psi.values(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn canonical_on_dual_dual_numbers_reads_xy() {
        let r = ring("F2[x]/(x^2)[y]/(y^2)");
        let psi = canonical_functional(&r).unwrap();
        for id in r.finite().elements() {
            let e = r.from_index(id);
            assert_eq!(psi.value(id), e.coeffs()[0][3] as u64);
        }
        assert!(is_nondegenerate(r.finite(), &psi));
    }

    #[test]
    fn canonical_on_product_with_mixed_characteristic() {
        let r = ring("F3[x]/(x^2) x Z/2");
        let psi = canonical_functional(&r).unwrap();
        assert_eq!(psi.modulus(), 6);
        for id in r.finite().elements() {
            let c = r.from_index(id);
            let (b, cc) = (c.coeffs()[0][1] as u64, c.coeffs()[1][0] as u64);
            assert_eq!(psi.value(id), (2 * b + 3 * cc) % 6);
        }
    }

    #[test]
    fn quotient_by_square_of_maximal_ideal_is_not_symmetric() {
        let r = ring("F2[x]/(x^2)[y]/(y^2)");
        let f = r.finite();
        let xy = r.index_of(&r.parse_element("x*y").unwrap()).unwrap();
        let q = QuotientRing::new(f, &f.principal_ideal(xy)).unwrap();
        let all = enumerate_functionals(q.ring(), 2, FUNCTIONAL_CAP).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|psi| !is_nondegenerate(q.ring(), psi)));
        assert_eq!(
            all.iter().collect::<std::collections::HashSet<_>>().len(),
            8
        );
    }

    #[test]
    fn functional_counts() {
        let z2 = ring("Z/2");
        assert_eq!(
            enumerate_functionals(z2.finite(), 2, FUNCTIONAL_CAP)
                .unwrap()
                .len(),
            2
        );
        let z3 = ring("Z/3");
        let all = enumerate_functionals(z3.finite(), 3, FUNCTIONAL_CAP).unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(
            all.iter()
                .filter(|p| is_nondegenerate(z3.finite(), p))
                .count(),
            2
        );
        let big = ring("F2[x]/(x^2)[y]/(y^2) x Z/2 x Z/2 x Z/2 x Z/2 x Z/2 x Z/2");
        assert!(enumerate_functionals(big.finite(), 2, FUNCTIONAL_CAP).is_err());
        // Z/4 x Z/2 into Z/4: 4 * 2 maps
        let r = ring("Z/4 x Z/2");
        assert_eq!(count_functionals(r.finite(), 4).unwrap(), 8);
        assert!(count_functionals(r.finite(), 2).is_err());
    }

    #[test]
    fn zero_functional_is_degenerate() {
        let r = ring("Z/5");
        let zero = LinearFunctional::from_values(r.finite(), 5, vec![0; 5]).unwrap();
        assert!(!is_nondegenerate(r.finite(), &zero));
        assert!(LinearFunctional::from_values(r.finite(), 5, vec![0, 1, 1, 1, 1]).is_err());
    }

    #[test]
    fn induced_functional_examples() {
        let r = ring("Z/6");
        let f = r.finite();
        let psi = canonical_functional(&r).unwrap();
        let (q, psi1) = induced_functional(f, &psi, 1).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(psi1, psi);
        let (q, psi0) = induced_functional(f, &psi, 0).unwrap();
        assert_eq!(q.order(), 1);
        assert!(is_nondegenerate(q.ring(), &psi0));
        let (q, psi3) = induced_functional(f, &psi, 3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(psi3.values(), &[0, 3]);
        assert!(is_nondegenerate(q.ring(), &psi3));
    }

    #[test]
    fn random_functionals_are_additive() {
        let r = ring("GR(4,2) x Z/2");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let psi = random_functional(r.finite(), 4, &mut rng).unwrap();
            assert!(psi.is_additive(r.finite()));
        }
        assert!(random_nondegenerate(r.finite(), 4, &mut rng, 100)
            .unwrap()
            .is_some());
    }
}
