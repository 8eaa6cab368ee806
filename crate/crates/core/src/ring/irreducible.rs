//! Deterministic choice of irreducible moduli over prime fields.

/// Remainder of `a` modulo the monic polynomial `b` over `Z/p`
/// (coefficients lowest degree first, `b` includes its leading 1).
fn rem_monic(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let top = r.pop().unwrap() % p;
        if top == 0 {
            continue;
        }
        let shift = r.len() - db;
        for (j, &bj) in b[..db].iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - (top * bj) % p) % p;
        }
    }
    r
}

/// Monic polynomial of degree `d` whose non-leading coefficients are the
/// base-`p` digits of `index` (`c_0` least significant).
fn monic_from_index(mut index: u64, d: usize, p: u64) -> Vec<u64> {
    let mut poly = Vec::with_capacity(d + 1);
    for _ in 0..d {
        poly.push(index % p);
        index /= p;
    }
    poly.push(1);
    poly
}

pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let d = poly.len() - 1;
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        for index in 0..p.pow(k as u32) {
            let divisor = monic_from_index(index, k, p);
            if rem_monic(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Non-leading coefficients `c_0..c_{d-1}` of the smallest monic irreducible
/// polynomial of degree `d` over `Z/p`. Candidates are ordered by the integer
/// `sum c_j p^j`, i.e. lexicographically from the highest non-leading
/// coefficient down.
pub fn smallest_irreducible(p: u64, d: usize) -> Vec<u32> {
    (0..p.pow(d as u32))
        .map(|index| monic_from_index(index, d, p))
        .find(|poly| is_irreducible(poly, p))
        .map(|poly| poly[..d].iter().map(|&c| c as u32).collect())
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_small_fields() {
        // F4: x^2 + x + 1
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1]);
        // F8: x^3 + x + 1
        assert_eq!(smallest_irreducible(2, 3), vec![1, 1, 0]);
        // F9: x^2 + 1
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0]);
        // F16: x^4 + x + 1
        assert_eq!(smallest_irreducible(2, 4), vec![1, 1, 0, 0]);
    }

    #[test]
    fn reducible_detected() {
        // x^2 + 1 = (x+1)^2 over F2
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F2, no roots
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }
}
