//! Iterated monic quotients `Z/m[x_1]/(f_1)[x_2]/(f_2)...`.
//!
//! An element of the tower truncated at depth `k` is stored as a flat vector
//! of `dims[k]` residues mod `m`. At depth `k > 0` the flat vector is the
//! concatenation of the `deg f_k` coefficients (each a depth `k - 1` flat
//! vector) of the element viewed as a polynomial in `x_k`, lowest degree
//! first. Embedding depth `k` into depth `k + 1` pads with zeros.

use crate::error::{Error, Result};
use crate::ring::irreducible::smallest_irreducible;

/// How the base of a tower was written down. Only affects printing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// `Z/m`
    Integers,
    /// `Fq`: `Z/p` plus an implicit degree `d` extension when `q = p^d`, `d > 1`.
    Field { q: u64 },
    /// `GR(p^a, d)`: `Z/p^a` plus an implicit degree `d` extension.
    Galois { modulus: u64, degree: usize },
}

/// Monic modulus `x^d + c_{d-1} x^{d-1} + ... + c_0` of one tower layer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Extension {
    pub var: String,
    /// Non-leading coefficients `c_0, ..., c_{d-1}`, each a flat element of
    /// the tower below this layer.
    pub coeffs: Vec<Vec<u32>>,
    /// Generated by an `Fq` / `GR` base rather than written explicitly.
    pub implicit: bool,
}

impl Extension {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }
}

/// Name bound to the generator of the implicit extension of `Fq` and `GR`.
pub const IMPLICIT_GENERATOR: &str = "a";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerDescriptor {
    base_modulus: u32,
    kind: BaseKind,
    extensions: Vec<Extension>,
    dims: Vec<usize>,
}

impl TowerDescriptor {
    /// `Z/m`.
    pub fn integers(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Argument(format!(
                "base modulus must be at least 2, got {m}"
            )));
        }
        let m =
            u32::try_from(m).map_err(|_| Error::Argument(format!("base modulus {m} too large")))?;
        Ok(Self {
            base_modulus: m,
            kind: BaseKind::Integers,
            extensions: Vec::new(),
            dims: vec![1],
        })
    }

    /// The finite field with `q` elements. For `q = p^d` with `d > 1` the
    /// modulus is the smallest monic irreducible of degree `d` over `Z/p`.
    pub fn finite_field(q: u64) -> Result<Self> {
        let (p, d) = crate::arith::prime_power(q)
            .ok_or_else(|| Error::Argument(format!("F{q}: {q} is not a prime power")))?;
        let mut tower = Self::integers(p)?;
        tower.kind = BaseKind::Field { q };
        if d > 1 {
            let poly = smallest_irreducible(p, d as usize);
            tower.push_extension(IMPLICIT_GENERATOR, lift_scalars(&poly), true)?;
        }
        Ok(tower)
    }

    /// The Galois ring `GR(p^a, d)`: `Z/p^a` extended by a monic lift of the
    /// smallest irreducible degree `d` polynomial over `Z/p`.
    pub fn galois_ring(modulus: u64, degree: usize) -> Result<Self> {
        let (p, _) = crate::arith::prime_power(modulus).ok_or_else(|| {
            Error::Argument(format!(
                "GR({modulus},{degree}): {modulus} is not a prime power"
            ))
        })?;
        if degree == 0 {
            return Err(Error::Argument("GR degree must be at least 1".into()));
        }
        let mut tower = Self::integers(modulus)?;
        tower.kind = BaseKind::Galois { modulus, degree };
        if degree > 1 {
            let poly = smallest_irreducible(p, degree);
            tower.push_extension(IMPLICIT_GENERATOR, lift_scalars(&poly), true)?;
        }
        Ok(tower)
    }

    /// Adjoins `var` subject to the monic polynomial with the given
    /// non-leading coefficients (flat elements of the current tower).
    pub fn extend(mut self, var: &str, coeffs: Vec<Vec<u32>>) -> Result<Self> {
        self.push_extension(var, coeffs, false)?;
        Ok(self)
    }

    fn push_extension(&mut self, var: &str, coeffs: Vec<Vec<u32>>, implicit: bool) -> Result<()> {
        if coeffs.is_empty() {
            return Err(Error::Argument(format!(
                "extension by {var} must have degree at least 1"
            )));
        }
        if self.variables().any(|v| v == var) {
            return Err(Error::Argument(format!("variable {var} is already bound")));
        }
        let len = self.flat_len();
        for c in &coeffs {
            if c.len() != len || c.iter().any(|&v| v >= self.base_modulus) {
                return Err(Error::Structural(format!(
                    "coefficient {c:?} is not an element of the tower below {var}"
                )));
            }
        }
        self.dims.push(len * coeffs.len());
        self.extensions.push(Extension {
            var: var.to_string(),
            coeffs,
            implicit,
        });
        Ok(())
    }

    pub fn base_modulus(&self) -> u32 {
        self.base_modulus
    }

    pub fn kind(&self) -> &BaseKind {
        &self.kind
    }

    pub fn extensions(&self) -> &[Extension] {
        &self.extensions
    }

    pub fn depth(&self) -> usize {
        self.extensions.len()
    }

    /// Flat length at the full depth (product of extension degrees).
    pub fn flat_len(&self) -> usize {
        *self.dims.last().unwrap()
    }

    pub fn flat_len_at(&self, depth: usize) -> usize {
        self.dims[depth]
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.extensions.iter().map(|e| e.var.as_str())
    }

    /// `m^(flat_len)`, or `None` on overflow.
    pub fn cardinality(&self) -> Option<usize> {
        let mut acc: usize = 1;
        for _ in 0..self.flat_len() {
            acc = acc.checked_mul(self.base_modulus as usize)?;
        }
        Some(acc)
    }

    pub fn zero_at(&self, depth: usize) -> Vec<u32> {
        vec![0; self.dims[depth]]
    }

    pub fn constant_at(&self, depth: usize, c: u64) -> Vec<u32> {
        let mut v = self.zero_at(depth);
        v[0] = (c % self.base_modulus as u64) as u32;
        v
    }

    /// The generator of extension `index` (0-based) embedded at `depth`.
    pub fn variable_at(&self, depth: usize, index: usize) -> Vec<u32> {
        debug_assert!(index < depth);
        let mut v = self.zero_at(depth);
        // x_index sits at flat position dims[index] (coefficient 1 of x^1).
        v[self.dims[index]] = 1 % self.base_modulus;
        v
    }

    /// Pads a depth-`from` element to depth `to`.
    pub fn embed(&self, a: &[u32], to: usize) -> Vec<u32> {
        let mut v = a.to_vec();
        v.resize(self.dims[to], 0);
        v
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.base_modulus;
        a.iter().zip(b).map(|(&x, &y)| (x + y) % m).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.base_modulus;
        a.iter().zip(b).map(|(&x, &y)| (x + m - y) % m).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        let m = self.base_modulus;
        a.iter().map(|&x| (m - x) % m).collect()
    }

    pub fn scale(&self, a: &[u32], k: u64) -> Vec<u32> {
        let m = self.base_modulus as u64;
        let k = k % m;
        a.iter().map(|&x| ((x as u64 * k) % m) as u32).collect()
    }

    /// Product of two depth-`depth` elements, reducing modulo each layer's
    /// monic polynomial from the top down.
    pub fn mul_at(&self, depth: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
        if depth == 0 {
            let m = self.base_modulus as u64;
            return vec![((a[0] as u64 * b[0] as u64) % m) as u32];
        }
        let ext = &self.extensions[depth - 1];
        let d = ext.degree();
        let len = self.dims[depth - 1];
        let chunk = |v: &'_ [u32], i: usize| -> Vec<u32> { v[i * len..(i + 1) * len].to_vec() };
        let is_zero = |v: &[u32]| v.iter().all(|&x| x == 0);

        let mut prod = vec![vec![0u32; len]; 2 * d - 1];
        for i in 0..d {
            let ai = chunk(a, i);
            if is_zero(&ai) {
                continue;
            }
            for j in 0..d {
                let bj = chunk(b, j);
                if is_zero(&bj) {
                    continue;
                }
                let t = self.mul_at(depth - 1, &ai, &bj);
                prod[i + j] = self.add(&prod[i + j], &t);
            }
        }
        // x^d = -(c_0 + c_1 x + ... + c_{d-1} x^{d-1})
        for deg in (d..2 * d - 1).rev() {
            let top = std::mem::replace(&mut prod[deg], vec![0; len]);
            if is_zero(&top) {
                continue;
            }
            for (j, c) in ext.coeffs.iter().enumerate() {
                let t = self.mul_at(depth - 1, &top, c);
                let k = deg - d + j;
                prod[k] = self.sub(&prod[k], &t);
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.mul_at(self.depth(), a, b)
    }

    /// Renders a depth-`depth` element as a polynomial expression in the
    /// bound variables, e.g. `1 + 2*x + x*y`.
    pub fn format_expr(&self, depth: usize, a: &[u32]) -> String {
        let mut terms = Vec::new();
        for (pos, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut factors = Vec::new();
            let mut rest = pos;
            for ext in &self.extensions[..depth] {
                let d = ext.degree();
                let e = rest % d;
                rest /= d;
                match e {
                    0 => {}
                    1 => factors.push(ext.var.clone()),
                    _ => factors.push(format!("{}^{}", ext.var, e)),
                }
            }
            let term = match (c, factors.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => factors.join("*"),
                (_, false) => format!("{}*{}", c, factors.join("*")),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn lift_scalars(poly: &[u32]) -> Vec<Vec<u32>> {
    poly.iter().map(|&c| vec![c]).collect()
}
