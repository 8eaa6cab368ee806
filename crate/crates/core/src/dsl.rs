//! Ring-spec and element syntax.
//!
//! ```text
//! spec  := term (("x" | "×") term)*
//! term  := base ext*
//! base  := "Z/" int | "F" int | "GR(" int "," int ")"
//! ext   := "[" ident "]/(" poly ")"
//! expr  := ["+"|"-"] prod (("+"|"-") prod)*
//! prod  := unary (["*"] unary)*
//! unary := "-" unary | atom ["^" int]
//! atom  := int | ident | "(" expr ")"
//! ```
//!
//! Whitespace is ignored. Extension polynomials are polynomials in the newly
//! bound variable with coefficients built from integers and the variables
//! bound earlier in the same term; they must be monic of degree at least 1.
//! `Fq` and `GR(p^a, d)` with `d > 1` bind their generator as `a`.

use crate::error::{Error, Result};
use crate::ring::{Element, RingDescriptor, TowerDescriptor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Var { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSpec {
    Integers(u64),
    Field(u64),
    Galois { modulus: u64, degree: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtSpec {
    pub var: String,
    pub poly: Expr,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerTerm {
    pub base: BaseSpec,
    pub base_pos: usize,
    pub exts: Vec<ExtSpec>,
}

/// Parsed, not yet evaluated, ring specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpecAst {
    pub terms: Vec<TowerTerm>,
}

struct Parser {
    src: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Self {
            src: text.chars().collect(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits: String = self.src[start..self.pos].iter().collect();
        digits.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("integer {digits} out of range"),
        })
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if !self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic() || *c == '_')
        {
            return self.err("expected an identifier");
        }
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        Ok(self.src[start..self.pos].iter().collect())
    }

    fn spec(&mut self) -> Result<RingSpecAst> {
        let mut terms = vec![self.term()?];
        while !self.at_end() {
            if self.eat('x') || self.eat('×') {
                terms.push(self.term()?);
            } else {
                return self.err("expected 'x' between factors or end of input");
            }
        }
        Ok(RingSpecAst { terms })
    }

    fn term(&mut self) -> Result<TowerTerm> {
        self.skip_ws();
        let base_pos = self.pos;
        let base = if self.eat('Z') {
            self.expect('/')?;
            BaseSpec::Integers(self.int()?)
        } else if self.eat('G') {
            self.expect('R')?;
            self.expect('(')?;
            let modulus = self.int()?;
            self.expect(',')?;
            let degree = self.int()?;
            self.expect(')')?;
            BaseSpec::Galois { modulus, degree }
        } else if self.eat('F') {
            BaseSpec::Field(self.int()?)
        } else {
            return self.err("expected a base ring: Z/m, Fq or GR(p^a,d)");
        };
        let mut exts = Vec::new();
        while self.peek() == Some('[') {
            let pos = self.pos;
            self.expect('[')?;
            let var = self.ident()?;
            self.expect(']')?;
            self.expect('/')?;
            self.expect('(')?;
            let poly = self.expr()?;
            self.expect(')')?;
            exts.push(ExtSpec { var, poly, pos });
        }
        Ok(TowerTerm {
            base,
            base_pos,
            exts,
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.prod()?))
        } else {
            self.eat('+');
            self.prod()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.prod()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.prod()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '(')
            {
                // implicit multiplication: 2x, x(1+x)
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let atom = self.atom()?;
        if self.eat('^') {
            let pos = self.pos;
            let e = self.int()?;
            let e = u32::try_from(e).map_err(|_| Error::Parse {
                pos,
                msg: "exponent too large".into(),
            })?;
            Ok(Expr::Pow(Box::new(atom), e))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.int()?)),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let pos = self.pos;
                Ok(Expr::Var {
                    name: self.ident()?,
                    pos,
                })
            }
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Values an [`Expr`] can be evaluated into.
trait Algebra {
    type V: Clone;
    fn int(&self, c: u64) -> Self::V;
    fn var(&self, name: &str, pos: usize) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
}

fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::V> {
    Ok(match e {
        Expr::Int(c) => alg.int(*c),
        Expr::Var { name, pos } => alg.var(name, *pos)?,
        Expr::Neg(a) => alg.neg(&eval(alg, a)?),
        Expr::Add(a, b) => alg.add(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Sub(a, b) => alg.add(&eval(alg, a)?, &alg.neg(&eval(alg, b)?)),
        Expr::Mul(a, b) => alg.mul(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Pow(a, k) => {
            let mut base = eval(alg, a)?;
            let mut acc = alg.int(1);
            let mut k = *k;
            while k > 0 {
                if k & 1 == 1 {
                    acc = alg.mul(&acc, &base);
                }
                base = alg.mul(&base, &base);
                k >>= 1;
            }
            acc
        }
    })
}

fn unbound(name: &str, pos: usize) -> Error {
    Error::Parse {
        pos,
        msg: format!("unbound variable {name}"),
    }
}

/// Elements of a full tower.
struct ElementAlgebra<'a> {
    tower: &'a TowerDescriptor,
}

impl Algebra for ElementAlgebra<'_> {
    type V = Vec<u32>;

    fn int(&self, c: u64) -> Vec<u32> {
        self.tower.constant_at(self.tower.depth(), c)
    }

    fn var(&self, name: &str, pos: usize) -> Result<Vec<u32>> {
        let idx = self
            .tower
            .variables()
            .position(|v| v == name)
            .ok_or_else(|| unbound(name, pos))?;
        Ok(self.tower.variable_at(self.tower.depth(), idx))
    }

    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        self.tower.add(a, b)
    }

    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        self.tower.neg(a)
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        self.tower.mul(a, b)
    }
}

/// Polynomials in a new variable over a tower (coefficients lowest first).
struct PolyAlgebra<'a> {
    tower: &'a TowerDescriptor,
    var: &'a str,
}

impl PolyAlgebra<'_> {
    fn depth(&self) -> usize {
        self.tower.depth()
    }
}

impl Algebra for PolyAlgebra<'_> {
    type V = Vec<Vec<u32>>;

    fn int(&self, c: u64) -> Self::V {
        vec![self.tower.constant_at(self.depth(), c)]
    }

    fn var(&self, name: &str, pos: usize) -> Result<Self::V> {
        if name == self.var {
            return Ok(vec![
                self.tower.zero_at(self.depth()),
                self.tower.constant_at(self.depth(), 1),
            ]);
        }
        let idx = self
            .tower
            .variables()
            .position(|v| v == name)
            .ok_or_else(|| unbound(name, pos))?;
        Ok(vec![self.tower.variable_at(self.depth(), idx)])
    }

    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V {
        let zero = self.tower.zero_at(self.depth());
        (0..a.len().max(b.len()))
            .map(|i| {
                self.tower
                    .add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))
            })
            .collect()
    }

    fn neg(&self, a: &Self::V) -> Self::V {
        a.iter().map(|c| self.tower.neg(c)).collect()
    }

    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V {
        let mut out = vec![self.tower.zero_at(self.depth()); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let t = self.tower.mul_at(self.depth(), x, y);
                out[i + j] = self.tower.add(&out[i + j], &t);
            }
        }
        out
    }
}

fn with_pos(e: Error, pos: usize) -> Error {
    match e {
        Error::Argument(msg) | Error::Structural(msg) => Error::Parse { pos, msg },
        other => other,
    }
}

impl RingSpecAst {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser::new(text);
        p.spec()
    }

    /// Evaluates the extension polynomials and assembles the ring.
    pub fn build(&self, max_card: usize) -> Result<RingDescriptor> {
        let mut factors = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            factors.push(build_tower(term, max_card)?);
        }
        RingDescriptor::new(factors, max_card)
    }
}

fn build_tower(term: &TowerTerm, max_card: usize) -> Result<TowerDescriptor> {
    let too_big = |actual: u64| Error::Cap {
        what: "ring cardinality",
        actual: usize::try_from(actual).unwrap_or(usize::MAX),
        limit: max_card,
    };
    let mut tower = match term.base {
        BaseSpec::Integers(m) => {
            if m > max_card as u64 {
                return Err(too_big(m));
            }
            TowerDescriptor::integers(m)
        }
        BaseSpec::Field(q) => {
            if q > max_card as u64 {
                return Err(too_big(q));
            }
            TowerDescriptor::finite_field(q)
        }
        BaseSpec::Galois { modulus, degree } => {
            let card = u32::try_from(degree)
                .ok()
                .and_then(|d| modulus.checked_pow(d))
                .unwrap_or(u64::MAX);
            if card > max_card as u64 {
                return Err(too_big(card));
            }
            TowerDescriptor::galois_ring(modulus, degree as usize)
        }
    }
    .map_err(|e| with_pos(e, term.base_pos))?;

    for ext in &term.exts {
        let alg = PolyAlgebra {
            tower: &tower,
            var: &ext.var,
        };
        let mut poly = eval(&alg, &ext.poly)?;
        while poly.len() > 1 && poly.last().unwrap().iter().all(|&c| c == 0) {
            poly.pop();
        }
        let d = poly.len() - 1;
        if d == 0 {
            return Err(Error::Parse {
                pos: ext.pos,
                msg: format!("modulus for {} must have degree at least 1", ext.var),
            });
        }
        if poly[d] != tower.constant_at(tower.depth(), 1) {
            return Err(Error::Parse {
                pos: ext.pos,
                msg: format!("polynomial for {} is not monic", ext.var),
            });
        }
        let card = tower
            .cardinality()
            .and_then(|c| c.checked_pow(d as u32))
            .unwrap_or(usize::MAX);
        if card > max_card {
            return Err(Error::Cap {
                what: "ring cardinality",
                actual: card,
                limit: max_card,
            });
        }
        poly.truncate(d);
        tower = tower
            .extend(&ext.var, poly)
            .map_err(|e| with_pos(e, ext.pos))?;
    }
    Ok(tower)
}

/// Parses and builds a ring, enforcing `max_card`.
pub fn parse_ring_spec(text: &str, max_card: usize) -> Result<RingDescriptor> {
    RingSpecAst::parse(text)?.build(max_card)
}

/// Parses `(expr, ..., expr)` with one entry per factor, or a bare
/// expression for a single-factor ring.
pub fn parse_element(ring: &RingDescriptor, text: &str) -> Result<Element> {
    let mut p = Parser::new(text);
    let exprs = if p.peek() == Some('(') && wraps_whole_input(&p.src, p.pos) {
        p.pos += 1;
        let mut exprs = vec![p.expr()?];
        while p.eat(',') {
            exprs.push(p.expr()?);
        }
        p.expect(')')?;
        exprs
    } else {
        vec![p.expr()?]
    };
    if !p.at_end() {
        return p.err("trailing input after element");
    }
    if exprs.len() != ring.factors().len() {
        return Err(Error::Parse {
            pos: 0,
            msg: format!(
                "element has {} components but the ring has {} factors",
                exprs.len(),
                ring.factors().len()
            ),
        });
    }
    let coeffs = ring
        .factors()
        .iter()
        .zip(&exprs)
        .map(|(tower, e)| eval(&ElementAlgebra { tower }, e))
        .collect::<Result<Vec<_>>>()?;
    ring.element(coeffs)
}

/// Whether the parenthesis at `open` closes at the last non-space character.
fn wraps_whole_input(src: &[char], open: usize) -> bool {
    let mut depth = 0usize;
    for (i, &c) in src.iter().enumerate().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return src[i + 1..].iter().all(|c| c.is_whitespace());
                }
            }
            _ => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_specs() {
        assert_eq!(RingDescriptor::parse("Z/6").unwrap().cardinality(), 6);
        let r18 = RingDescriptor::parse("F3[x]/(x^2) x Z/2").unwrap();
        assert_eq!(r18.cardinality(), 18);
        assert_eq!(r18.factors().len(), 2);
        let r = RingDescriptor::parse("F2[x]/(x^2)[y]/(y^2)").unwrap();
        assert_eq!(r.cardinality(), 16);
        assert_eq!(RingDescriptor::parse("GR(4,2)").unwrap().cardinality(), 16);
        assert_eq!(RingDescriptor::parse("F9").unwrap().cardinality(), 9);
        // whitespace-insensitive, including around the product separator
        assert_eq!(
            RingDescriptor::parse("F3[x]/(x^2)xZ/2").unwrap(),
            RingDescriptor::parse(" F3 [ x ] / ( x ^ 2 )  x  Z / 2 ").unwrap()
        );
    }

    #[test]
    fn galois_ring_matches_explicit_tower() {
        let gr = RingDescriptor::parse("GR(4,2)").unwrap();
        let explicit = RingDescriptor::parse("Z/4[y]/(y^2+y+1)").unwrap();
        assert_eq!(
            gr.factors()[0].extensions()[0].coeffs,
            explicit.factors()[0].extensions()[0].coeffs
        );
        let y = explicit.parse_element("y").unwrap();
        assert_eq!(
            explicit.mul(&y, &y).unwrap(),
            explicit.parse_element("3y + 3").unwrap()
        );
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(
            RingDescriptor::parse("Q/6"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("F6"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("Z/1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("F3[x]/(2x^2+1)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("F3[x]/(3x^2+1)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("F3[x]/(x^2)[y]/(z)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("F3[x]/(x^2)[x]/(x)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("Z/6 Z/2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("Z/100 x Z/100"),
            Err(Error::Cap { .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("F5000"),
            Err(Error::Cap { .. })
        ));
        assert!(matches!(
            RingDescriptor::parse("Z/6 x"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn elements() {
        let r18 = RingDescriptor::parse("F3[x]/(x^2) x Z/2").unwrap();
        assert_eq!(r18.parse_element("(1, 1)").unwrap(), r18.one());
        assert_eq!(
            r18.parse_element("(x,0)").unwrap().to_string(),
            "[[0,1],[0]]"
        );
        assert_eq!(
            r18.parse_element("(-x + 4, 3)").unwrap().to_string(),
            "[[1,2],[1]]"
        );
        assert!(r18.parse_element("(1)").is_err());
        assert!(r18.parse_element("(y, 0)").is_err());
        assert!(r18.parse_element("(1, x)").is_err());
        assert!(r18.parse_element("(1,").is_err());

        let z6 = RingDescriptor::zmod(6).unwrap();
        assert_eq!(z6.parse_element("(7)").unwrap().to_string(), "[[1]]");
        assert_eq!(z6.parse_element("7").unwrap().to_string(), "[[1]]");
        assert_eq!(z6.parse_element("(2)(5)").unwrap().to_string(), "[[4]]");

        let f9 = RingDescriptor::parse("F9").unwrap();
        // a^2 = -1
        assert_eq!(f9.parse_element("a^2").unwrap().to_string(), "[[2,0]]");
    }

    #[test]
    fn canonical_printing() {
        for (input, printed) in [
            ("Z/6", "Z/6"),
            ("F3[x]/(x^2)×Z/2", "F3[x]/(x^2) x Z/2"),
            ("Z/4[y]/(1+y+y^2)", "Z/4[y]/(y^2 + y + 1)"),
            (
                "F2[x]/(x^2)[y]/(y^2 - x*y + x + 1)",
                "F2[x]/(x^2)[y]/(y^2 + x*y + 1 + x)",
            ),
            ("F9 x GR(8,2)", "F9 x GR(8,2)"),
            ("Z/9[t]/((t+1)^2 - 1 - 2t + 3)", "Z/9[t]/(t^2 + 3)"),
        ] {
            let r = RingDescriptor::parse(input).unwrap();
            assert_eq!(r.to_string(), printed);
            assert_eq!(RingDescriptor::parse(&r.to_string()).unwrap(), r);
        }
    }
}
