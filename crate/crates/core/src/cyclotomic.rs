//! Exact arithmetic in `Z[zeta_n]` as integer polynomials modulo `Phi_n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

static CYCLOTOMIC: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();

/// `Phi_n`, coefficients lowest degree first, from
/// `Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d`. Memoized.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    let cache = CYCLOTOMIC.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = div_exact_monic(&num, &cyclotomic_poly(d));
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, Arc::clone(&p));
    p
}

/// Quotient of `a` by the monic `b`; panics if the division is not exact.
fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// An element of `Z[zeta_n]` in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycInt {
    modulus: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(modulus: u64) -> Self {
        let deg = cyclotomic_poly(modulus).len() - 1;
        Self {
            modulus,
            coeffs: vec![BigInt::zero(); deg],
        }
    }

    pub fn from_integer(modulus: u64, k: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(modulus);
        z.coeffs[0] = k.into();
        z
    }

    /// `sum_e counts[e] * zeta_n^e` for `e` in `0..n`, reduced mod `Phi_n`.
    pub fn from_exponent_counts(modulus: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, modulus, "one count per exponent");
        let phi = cyclotomic_poly(modulus);
        let deg = phi.len() - 1;
        let mut poly: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        for top in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[top]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi[..deg].iter().enumerate() {
                if !pj.is_zero() {
                    poly[top - deg + j] -= &c * pj;
                }
            }
        }
        poly.truncate(deg);
        Self {
            modulus,
            coeffs: poly,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The rational integer this represents, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl std::ops::Add for &CycInt {
    type Output = CycInt;

    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.modulus, rhs.modulus);
        CycInt {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::fmt::Display for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(k) = self.as_integer() {
            return write!(f, "{k}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
