//! Brute-force spectral oracles: dense adjacency matrices, exact
//! characteristic polynomials and a Jacobi eigensolver.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::GcdGraph;
use crate::spectrum::full_spectrum;

/// Largest matrix order `adjacency_matrix` will build.
pub const MATRIX_CAP: usize = 4096;
/// Largest order handled by `charpoly_exact`.
pub const EXACT_CAP: usize = 64;
pub const JACOBI_MAX_SWEEPS: usize = 50;
/// Off-diagonal Frobenius norm target, multiplied by the order.
pub const JACOBI_TOLERANCE: f64 = 1e-10;
/// Per-eigenvalue tolerance of the floating tier.
pub const FLOAT_MATCH_TOLERANCE: f64 = 1e-6;

/// Row-major square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl DenseMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![0; order * order],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::Argument("matrix rows must form a square".into()));
        }
        Ok(Self {
            order,
            entries: rows.concat(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }
}

/// Adjacency matrix indexed by canonical element order.
pub fn adjacency_matrix(graph: &GcdGraph) -> Result<DenseMatrix> {
    let n = graph.order();
    if n > MATRIX_CAP {
        return Err(Error::Argument(format!(
            "adjacency matrix of order {n} exceeds the cap {MATRIX_CAP}"
        )));
    }
    let mut m = DenseMatrix::zeros(n);
    for a in graph.ring().elements() {
        for b in graph.neighbors(a) {
            m.set(a, b, 1);
        }
    }
    Ok(m)
}

/// `det(xI - A)` by Faddeev-LeVerrier, coefficients lowest degree first.
pub fn charpoly_exact(a: &DenseMatrix) -> Result<Vec<BigInt>> {
    let n = a.order();
    if n > EXACT_CAP {
        return Err(Error::Argument(format!(
            "exact characteristic polynomial of order {n} exceeds the cap {EXACT_CAP}"
        )));
    }
    let support: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (j, v))
                .collect()
        })
        .collect();
    let mul_a = |m: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n * n];
        for (i, row) in support.iter().enumerate() {
            let dst = &mut out[i * n..(i + 1) * n];
            for &(k, v) in row {
                let src = &m[k * n..(k + 1) * n];
                for (d, s) in dst.iter_mut().zip(src) {
                    if v == 1 {
                        *d += s;
                    } else {
                        *d += s * v;
                    }
                }
            }
        }
        out
    };

    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I and c_{n-k} = -tr(A M_k) / k
        let mut next = mul_a(&m);
        for i in 0..n {
            next[i * n + i] += &coeffs[n - k + 1];
        }
        let am = mul_a(&next);
        let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        let kb = BigInt::from(k);
        let (q, r) = (-&trace / &kb, -trace % &kb);
        if !r.is_zero() {
            return Err(Error::Invariant(
                "inexact Faddeev-LeVerrier division".into(),
            ));
        }
        coeffs[n - k] = q;
        m = next;
    }
    Ok(coeffs)
}

/// `prod (x - r)`, coefficients lowest degree first.
pub fn poly_from_roots(roots: &[i64]) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for &r in roots {
        let mut next = vec![BigInt::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        p = next;
    }
    p
}

pub fn poly_eval(p: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn eigs_float(a: &DenseMatrix) -> Result<Vec<f64>> {
    let n = a.order();
    if n > MATRIX_CAP {
        return Err(Error::Argument(format!(
            "matrix order {n} exceeds the cap {MATRIX_CAP}"
        )));
    }
    if !a.is_symmetric() {
        return Err(Error::Argument("Jacobi needs a symmetric matrix".into()));
    }
    let mut m: Vec<f64> = a.entries.iter().map(|&v| v as f64).collect();
    let tol = JACOBI_TOLERANCE * n.max(1) as f64;
    let off_norm = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&m) < tol;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
        converged = off_norm(&m) < tol;
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMethod {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub method: OracleMethod,
    pub pass: bool,
    /// Exact tier: largest coefficient difference. Float tier: largest
    /// eigenvalue difference.
    pub max_deviation: f64,
    /// Adjacency characteristic polynomial, lowest degree first, as decimal
    /// strings (exact tier only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charpoly: Option<Vec<String>>,
}

/// Compares the closed-form spectrum with the adjacency matrix.
pub fn verify_spectrum(graph: &GcdGraph) -> Result<VerifyReport> {
    let predicted = full_spectrum(graph, true)?.lambdas();
    verify_predicted(graph, &predicted)
}

/// Compares an arbitrary predicted eigenvalue list with the adjacency matrix.
pub fn verify_predicted(graph: &GcdGraph, predicted: &[i64]) -> Result<VerifyReport> {
    let a = adjacency_matrix(graph)?;
    if a.order() <= EXACT_CAP {
        let actual = charpoly_exact(&a)?;
        let expected = poly_from_roots(predicted);
        let len = actual.len().max(expected.len());
        let zero = BigInt::zero();
        let max_diff = (0..len)
            .map(|i| (actual.get(i).unwrap_or(&zero) - expected.get(i).unwrap_or(&zero)).abs())
            .max()
            .unwrap_or_default();
        Ok(VerifyReport {
            method: OracleMethod::Exact,
            pass: max_diff.is_zero(),
            max_deviation: max_diff.to_f64().unwrap_or(f64::INFINITY),
            charpoly: Some(actual.iter().map(ToString::to_string).collect()),
        })
    } else {
        let eig = eigs_float(&a)?;
        let mut sorted = predicted.to_vec();
        sorted.sort_unstable();
        let max_dev = if sorted.len() == eig.len() {
            eig.iter()
                .zip(&sorted)
                .map(|(e, &p)| (e - p as f64).abs())
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        Ok(VerifyReport {
            method: OracleMethod::Float,
            pass: max_dev < FLOAT_MATCH_TOLERANCE,
            max_deviation: max_dev,
            charpoly: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn graph(spec: &str, gens: &str) -> GcdGraph {
        let r = RingDescriptor::parse(spec).unwrap();
        GcdGraph::from_elements(&r, &r.parse_elements(gens).unwrap()).unwrap()
    }

    #[test]
    fn small_charpolys() {
        let k3 = DenseMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(ints(&charpoly_exact(&k3).unwrap()), vec![-2, -3, 0, 1]);
        assert_eq!(
            ints(&charpoly_exact(&DenseMatrix::zeros(2)).unwrap()),
            vec![0, 0, 1]
        );
        let swap = DenseMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(ints(&charpoly_exact(&swap).unwrap()), vec![-1, 0, 1]);
        assert!(matches!(
            charpoly_exact(&DenseMatrix::zeros(65)),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn adjacency_of_k3() {
        let a = adjacency_matrix(&graph("Z/3", "1")).unwrap();
        assert_eq!(
            a,
            DenseMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap()
        );
        let a = adjacency_matrix(&graph("F3[x]/(x^2) x Z/2", "(1,1);(x,0)")).unwrap();
        assert_eq!(a.order(), 18);
        assert!(a.row_sums().iter().all(|&s| s == 8));
    }

    #[test]
    fn jacobi_small() {
        let swap = DenseMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let e = eigs_float(&swap).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12);
        let k5 = adjacency_matrix(&graph("Z/5", "1")).unwrap();
        let e = eigs_float(&k5).unwrap();
        for (x, y) in e.iter().zip([-1.0, -1.0, -1.0, -1.0, 4.0]) {
            assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn complete_graph_polynomial() {
        for p in [2u64, 3, 5, 7] {
            let g = graph(&format!("Z/{p}"), "1");
            let cp = charpoly_exact(&adjacency_matrix(&g).unwrap()).unwrap();
            let mut roots = vec![p as i64 - 1];
            roots.extend(std::iter::repeat_n(-1, p as usize - 1));
            assert_eq!(cp, poly_from_roots(&roots));
        }
    }

    #[test]
    fn verify_and_negative_control() {
        let g = graph("Z/12", "1;2");
        let rep = verify_spectrum(&g).unwrap();
        assert_eq!(rep.method, OracleMethod::Exact);
        assert!(rep.pass);
        let mut lambdas = full_spectrum(&g, true).unwrap().lambdas();
        lambdas[3] += 1;
        let bad = verify_predicted(&g, &lambdas).unwrap();
        assert!(!bad.pass);
        assert!(bad.max_deviation > 0.0);
    }

    #[test]
    fn float_tier() {
        let g = graph("Z/70", "1;5");
        let rep = verify_spectrum(&g).unwrap();
        assert_eq!(rep.method, OracleMethod::Float);
        assert!(rep.pass, "{rep:?}");
        let mut lambdas = full_spectrum(&g, true).unwrap().lambdas();
        lambdas[0] -= 1;
        assert!(!verify_predicted(&g, &lambdas).unwrap().pass);
    }

    #[test]
    fn charpoly_vanishes_at_eigenvalues() {
        let g = graph("F3[x]/(x^2) x Z/2", "(1,1);(x,0)");
        let cp = charpoly_exact(&adjacency_matrix(&g).unwrap()).unwrap();
        for l in full_spectrum(&g, true).unwrap().lambdas() {
            assert!(poly_eval(&cp, l).is_zero());
        }
    }
}
