//! Generalized Ramanujan sums `c(g, R) = sum_{a in R^x} zeta_n^{psi(g a)}`.
//!
//! Two independent routes: the exact character sum in `Z[zeta_n]`, and the
//! closed form `phi(R) / phi(R/Ann(g)) * mu(R/Ann(g))` which needs no
//! functional at all.

use std::sync::Arc;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ring::{ElemId, FiniteRing, QuotientRing};
use crate::symmetric::{is_nondegenerate, LinearFunctional};

/// Exact character sum over the units.
pub fn ramanujan_sum_direct(
    ring: &FiniteRing,
    psi: &LinearFunctional,
    g: ElemId,
) -> Result<CycInt> {
    if !is_nondegenerate(ring, psi) {
        return Err(Error::Argument("functional is degenerate".into()));
    }
    Ok(ramanujan_sum_unchecked(ring, psi, g))
}

pub(crate) fn ramanujan_sum_unchecked(
    ring: &FiniteRing,
    psi: &LinearFunctional,
    g: ElemId,
) -> CycInt {
    let n = psi.modulus();
    let mut counts = vec![0i64; n as usize];
    for a in ring.units() {
        counts[psi.value(ring.mul(g, a)) as usize] += 1;
    }
    CycInt::from_exponent_counts(n, &counts)
}

/// `phi(R) / phi(R/Ann_R(g)) * mu(R/Ann_R(g))`.
pub fn ramanujan_sum_closed(ring: &FiniteRing, g: ElemId) -> Result<i64> {
    closed_form(ring.euler_phi(), ring, g)
}

/// `phi_top / phi(R/Ann(y)) * mu(R/Ann(y))`, checking the division is exact.
pub(crate) fn closed_form(phi_top: u64, ring: &FiniteRing, y: ElemId) -> Result<i64> {
    let inv = ring.annihilator_quotient(y)?;
    if !phi_top.is_multiple_of(inv.phi) {
        return Err(Error::Invariant(format!(
            "phi {} not divisible by phi(R/Ann) = {}",
            phi_top, inv.phi
        )));
    }
    Ok((phi_top / inv.phi) as i64 * inv.mu)
}

/// Classical Ramanujan sum `c_q(m) = mu(t) phi(q) / phi(t)` with
/// `t = q / gcd(q, m)`.
pub fn classical_ramanujan(m: i64, q: u64) -> i64 {
    assert!(q >= 1, "classical Ramanujan sum needs q >= 1");
    let r = m.rem_euclid(q as i64) as u64;
    let t = q / crate::arith::gcd(q, r);
    crate::arith::moebius(t) * (crate::arith::totient(q) / crate::arith::totient(t)) as i64
}

/// Checks the identification `R/Ann_R(g x) = R'/Ann_{R'}(g')` for
/// `R' = R/Ann_R(x)`: equal orders, and `c(g', R')` computed inside `R'`
/// equals `phi(R/Ann x) / phi(R/Ann gx) * mu(R/Ann gx)`.
pub fn quotient_compatibility_check(ring: &Arc<FiniteRing>, g: ElemId, x: ElemId) -> Result<bool> {
    let outer = QuotientRing::new(ring, &ring.annihilator(x))?;
    let rp = outer.ring();
    let gp = outer.reduce(g);
    let inner = QuotientRing::new(rp, &rp.annihilator(gp))?;
    let gx = ring.mul(g, x);
    let direct = ring.annihilator_quotient(gx)?;
    if inner.order() != direct.order {
        return Ok(false);
    }
    let in_quotient = ramanujan_sum_closed(rp, gp)?;
    let via_ambient = closed_form(ring.annihilator_quotient(x)?.phi, ring, gx)?;
    Ok(in_quotient == via_ambient)
}
