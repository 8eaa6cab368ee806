use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::finite::{ElemId, FiniteRing};
use crate::ring::tower::{BaseKind, TowerDescriptor};

/// Default cap on ring cardinality.
pub const DEFAULT_MAX_CARD: usize = 4096;

/// A ring element as per-factor flat coefficient vectors. Ordering is
/// lexicographic on the concatenated coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coeffs: Vec<Vec<u32>>,
    ring: u64,
}

impl Element {
    pub fn coeffs(&self) -> &[Vec<u32>] {
        &self.coeffs
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coeffs(f, &self.coeffs)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

fn write_coeffs(f: &mut impl fmt::Write, coeffs: &[Vec<u32>]) -> fmt::Result {
    f.write_char('[')?;
    for (i, factor) in coeffs.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        f.write_char('[')?;
        for (j, c) in factor.iter().enumerate() {
            if j > 0 {
                f.write_char(',')?;
            }
            write!(f, "{c}")?;
        }
        f.write_char(']')?;
    }
    f.write_char(']')
}

/// A finite commutative ring presented as a product of towers.
#[derive(Clone)]
pub struct RingDescriptor {
    factors: Vec<TowerDescriptor>,
    cardinality: usize,
    characteristic: u64,
    fingerprint: u64,
    finite: OnceLock<Arc<FiniteRing>>,
}

impl fmt::Debug for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingDescriptor({self})")
    }
}

impl PartialEq for RingDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for RingDescriptor {}

impl RingDescriptor {
    pub fn new(factors: Vec<TowerDescriptor>, max_card: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Argument("a ring needs at least one factor".into()));
        }
        let mut cardinality: usize = 1;
        let mut characteristic = 1;
        for t in &factors {
            cardinality = cardinality.saturating_mul(t.cardinality().unwrap_or(usize::MAX));
            characteristic = crate::arith::lcm(characteristic, t.base_modulus() as u64);
        }
        if cardinality > max_card.min(crate::ring::TABLE_LIMIT) {
            return Err(Error::Cap {
                what: "ring cardinality",
                actual: cardinality,
                limit: max_card.min(crate::ring::TABLE_LIMIT),
            });
        }
        let mut ring = Self {
            factors,
            cardinality,
            characteristic,
            fingerprint: 0,
            finite: OnceLock::new(),
        };
        let mut h = DefaultHasher::new();
        ring.to_string().hash(&mut h);
        ring.fingerprint = h.finish();
        Ok(ring)
    }

    /// `Z/n`.
    pub fn zmod(n: u64) -> Result<Self> {
        Self::new(vec![TowerDescriptor::integers(n)?], DEFAULT_MAX_CARD)
    }

    /// Parses the ring-spec DSL with the default cardinality cap.
    pub fn parse(text: &str) -> Result<Self> {
        crate::dsl::parse_ring_spec(text, DEFAULT_MAX_CARD)
    }

    pub fn factors(&self) -> &[TowerDescriptor] {
        &self.factors
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    /// Additive order of `1`: the lcm of the factor characteristics.
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    fn check(&self, a: &Element) -> Result<()> {
        if a.ring != self.fingerprint {
            return Err(Error::Structural(format!(
                "element {a} does not belong to {self}"
            )));
        }
        Ok(())
    }

    /// Validates coefficients and wraps them as an element.
    pub fn element(&self, coeffs: Vec<Vec<u32>>) -> Result<Element> {
        if coeffs.len() != self.factors.len() {
            return Err(Error::Structural(format!(
                "expected {} factors, got {}",
                self.factors.len(),
                coeffs.len()
            )));
        }
        for (t, c) in self.factors.iter().zip(&coeffs) {
            if c.len() != t.flat_len() || c.iter().any(|&v| v >= t.base_modulus()) {
                return Err(Error::Structural(format!(
                    "coefficients {c:?} do not fit factor {}",
                    TowerDisplay(t)
                )));
            }
        }
        Ok(Element {
            coeffs,
            ring: self.fingerprint,
        })
    }

    pub fn zero(&self) -> Element {
        self.from_index(0)
    }

    pub fn one(&self) -> Element {
        Element {
            coeffs: self
                .factors
                .iter()
                .map(|t| t.constant_at(t.depth(), 1))
                .collect(),
            ring: self.fingerprint,
        }
    }

    fn zip_with(
        &self,
        a: &Element,
        b: &Element,
        op: impl Fn(&TowerDescriptor, &[u32], &[u32]) -> Vec<u32>,
    ) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(Element {
            coeffs: self
                .factors
                .iter()
                .zip(a.coeffs.iter().zip(&b.coeffs))
                .map(|(t, (x, y))| op(t, x, y))
                .collect(),
            ring: self.fingerprint,
        })
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.zip_with(a, b, |t, x, y| t.add(x, y))
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.zip_with(a, b, |t, x, y| t.sub(x, y))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.zip_with(a, b, |t, x, y| t.mul(x, y))
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.zip_with(a, a, |t, x, _| t.neg(x))
    }

    pub fn is_unit(&self, a: &Element) -> Result<bool> {
        Ok(self.finite().is_unit(self.index_of(a)?))
    }

    fn radices(&self) -> impl Iterator<Item = usize> + '_ {
        self.factors
            .iter()
            .flat_map(|t| std::iter::repeat_n(t.base_modulus() as usize, t.flat_len()))
    }

    /// Canonical id: the mixed-radix value of the concatenated
    /// coefficients, first coefficient most significant.
    pub fn index_of(&self, a: &Element) -> Result<ElemId> {
        self.check(a)?;
        Ok(a.coeffs
            .iter()
            .flatten()
            .zip(self.radices())
            .fold(0, |acc, (&c, m)| acc * m + c as usize))
    }

    pub fn from_index(&self, mut id: ElemId) -> Element {
        let radices: Vec<usize> = self.radices().collect();
        let mut digits = vec![0u32; radices.len()];
        for (d, &m) in digits.iter_mut().zip(&radices).rev() {
            *d = (id % m) as u32;
            id /= m;
        }
        let mut coeffs = Vec::with_capacity(self.factors.len());
        let mut rest = digits.as_slice();
        for t in &self.factors {
            let (head, tail) = rest.split_at(t.flat_len());
            coeffs.push(head.to_vec());
            rest = tail;
        }
        Element {
            coeffs,
            ring: self.fingerprint,
        }
    }

    /// Parses `(expr, expr, ...)` (or a bare expression for one factor).
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        crate::dsl::parse_element(self, text)
    }

    /// Parses a `;`-separated list of elements. Empty input yields no elements.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<Element>> {
        if text.trim().is_empty() {
            return Ok(Vec::new());
        }
        text.split(';').map(|s| self.parse_element(s)).collect()
    }

    /// Renders an element as a tuple of polynomial expressions, e.g. `(1 + 2*x, 1)`.
    pub fn format_element(&self, a: &Element) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .zip(&a.coeffs)
            .map(|(t, c)| t.format_expr(t.depth(), c))
            .collect();
        format!("({})", parts.join(", "))
    }

    /// The tabulated form of this ring, built on first use.
    pub fn finite(&self) -> &Arc<FiniteRing> {
        self.finite.get_or_init(|| Arc::new(self.build_tables()))
    }

    fn build_tables(&self) -> FiniteRing {
        let n = self.cardinality;
        let radices: Vec<usize> = self.radices().collect();
        let positions = radices.len();
        let mut place = vec![1usize; positions];
        for p in (0..positions.saturating_sub(1)).rev() {
            place[p] = place[p + 1] * radices[p + 1];
        }
        // succ[p][x] = x + e_p
        let succ: Vec<Vec<u16>> = (0..positions)
            .map(|p| {
                (0..n)
                    .map(|x| {
                        let digit = (x / place[p]) % radices[p];
                        if digit + 1 < radices[p] {
                            (x + place[p]) as u16
                        } else {
                            (x - digit * place[p]) as u16
                        }
                    })
                    .collect()
            })
            .collect();
        // Lowest-order nonzero position of each nonzero id.
        let low: Vec<usize> = (0..n)
            .map(|b| {
                (0..positions)
                    .rev()
                    .find(|&p| !(b / place[p]).is_multiple_of(radices[p]))
                    .unwrap_or(0)
            })
            .collect();

        let mut add = vec![0u16; n * n];
        for a in 0..n {
            let row = &mut add[a * n..(a + 1) * n];
            row[0] = a as u16;
            for b in 1..n {
                let p = low[b];
                row[b] = succ[p][row[b - place[p]] as usize];
            }
        }

        // a * b is additive in b: a*b = a*(b - e_p) + a*e_p.
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            let ea = self.from_index(a);
            let basis: Vec<usize> = (0..positions)
                .map(|p| {
                    let ep = self.from_index(place[p]);
                    self.index_of(&self.mul(&ea, &ep).unwrap()).unwrap()
                })
                .collect();
            for b in 1..n {
                let p = low[b];
                let prev = mul[a * n + b - place[p]] as usize;
                mul[a * n + b] = add[prev * n + basis[p]];
            }
        }

        let neg = (0..n)
            .map(|a| {
                let e = self.from_index(a);
                self.index_of(&self.neg(&e).unwrap()).unwrap() as u16
            })
            .collect();
        let labels = (0..n).map(|a| self.from_index(a).to_string()).collect();
        let one = self.index_of(&self.one()).unwrap();
        FiniteRing::from_tables(add, mul, neg, one, labels)
            .expect("descriptor cardinality is within the table limit")
    }
}

/// Canonical DSL rendering of one tower factor.
pub struct TowerDisplay<'a>(pub &'a TowerDescriptor);

impl fmt::Display for TowerDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.0;
        match t.kind() {
            BaseKind::Integers => write!(f, "Z/{}", t.base_modulus())?,
            BaseKind::Field { q } => write!(f, "F{q}")?,
            BaseKind::Galois { modulus, degree } => write!(f, "GR({modulus},{degree})")?,
        }
        for (depth, ext) in t.extensions().iter().enumerate() {
            if ext.implicit {
                continue;
            }
            let d = ext.degree();
            let mut terms = vec![power(&ext.var, d)];
            for j in (0..d).rev() {
                let c = &ext.coeffs[j];
                if c.iter().all(|&v| v == 0) {
                    continue;
                }
                let expr = t.format_expr(depth, c);
                let compound = expr.contains(' ');
                let term = match (j, expr.as_str(), compound) {
                    (0, _, _) => expr.clone(),
                    (_, "1", _) => power(&ext.var, j),
                    (_, _, true) => format!("({expr})*{}", power(&ext.var, j)),
                    (_, _, false) => format!("{expr}*{}", power(&ext.var, j)),
                };
                terms.push(term);
            }
            write!(f, "[{}]/({})", ext.var, terms.join(" + "))?;
        }
        Ok(())
    }
}

fn power(var: &str, e: usize) -> String {
    match e {
        0 => "1".into(),
        1 => var.into(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{}", TowerDisplay(t))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_addition_and_identity() {
        let r = RingDescriptor::zmod(6).unwrap();
        let four = r.element(vec![vec![4]]).unwrap();
        let five = r.element(vec![vec![5]]).unwrap();
        assert_eq!(
            r.add(&four, &five).unwrap(),
            r.element(vec![vec![3]]).unwrap()
        );
        assert_eq!(r.add(&four, &r.zero()).unwrap(), four);
        assert_eq!(r.mul(&four, &r.one()).unwrap(), four);
    }

    #[test]
    fn mismatched_ring_is_structural_error() {
        let r6 = RingDescriptor::zmod(6).unwrap();
        let r7 = RingDescriptor::zmod(7).unwrap();
        let a = r6.one();
        let b = r7.one();
        assert!(matches!(r6.add(&a, &b), Err(Error::Structural(_))));
        assert!(matches!(r7.mul(&a, &b), Err(Error::Structural(_))));
        assert!(r6.element(vec![vec![6]]).is_err());
        assert!(r6.element(vec![vec![1], vec![1]]).is_err());
    }

    #[test]
    fn units_in_small_rings() {
        let r = RingDescriptor::zmod(6).unwrap();
        assert!(r.is_unit(&r.element(vec![vec![5]]).unwrap()).unwrap());
        assert!(!r.is_unit(&r.element(vec![vec![3]]).unwrap()).unwrap());
        let r = RingDescriptor::parse("F3[x]/(x^2)").unwrap();
        assert!(r.is_unit(&r.parse_element("1 + x").unwrap()).unwrap());
        assert!(!r.is_unit(&r.parse_element("x").unwrap()).unwrap());
        assert_eq!(r.finite().units().len(), 6);
    }

    #[test]
    fn index_roundtrip_and_order() {
        let r = RingDescriptor::parse("F3[x]/(x^2) x Z/2").unwrap();
        assert_eq!(r.cardinality(), 18);
        assert_eq!(r.characteristic(), 6);
        let mut prev: Option<Element> = None;
        for id in 0..r.cardinality() {
            let e = r.from_index(id);
            assert_eq!(r.index_of(&e).unwrap(), id);
            if let Some(p) = prev {
                assert!(p < e);
            }
            prev = Some(e);
        }
        let e = r.parse_element("(1 + 2*x, 1)").unwrap();
        assert_eq!(e.to_string(), "[[1,2],[1]]");
    }

    #[test]
    fn tables_agree_with_direct_arithmetic() {
        for spec in ["Z/4[y]/(y^2+y+1)", "F2[x]/(x^2)[y]/(y^2) x Z/3", "F8"] {
            let r = RingDescriptor::parse(spec).unwrap();
            let f = r.finite();
            for a in f.elements() {
                for b in f.elements() {
                    let (ea, eb) = (r.from_index(a), r.from_index(b));
                    assert_eq!(f.add(a, b), r.index_of(&r.add(&ea, &eb).unwrap()).unwrap());
                    assert_eq!(f.mul(a, b), r.index_of(&r.mul(&ea, &eb).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn cardinality_cap() {
        let t = TowerDescriptor::integers(100).unwrap();
        assert!(matches!(
            RingDescriptor::new(vec![t.clone(), t], 4096),
            Err(Error::Cap { .. })
        ));
    }
}
