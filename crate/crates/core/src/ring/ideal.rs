use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::finite::{ElemId, FiniteRing};

/// An ideal together with the generators it was built from and its full,
/// sorted element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ideal {
    generators: Vec<ElemId>,
    elements: Vec<ElemId>,
}

impl Ideal {
    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn elements(&self) -> &[ElemId] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: ElemId) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.elements == [0]
    }

    /// Same underlying set, regardless of generators.
    pub fn same_set(&self, other: &Ideal) -> bool {
        self.elements == other.elements
    }
}

fn sorted(mut v: Vec<ElemId>) -> Vec<ElemId> {
    v.sort_unstable();
    v.dedup();
    v
}

impl FiniteRing {
    /// `R x`.
    pub fn principal_ideal(&self, x: ElemId) -> Ideal {
        Ideal {
            generators: vec![x],
            elements: sorted(self.elements().map(|a| self.mul(a, x)).collect()),
        }
    }

    /// `{a : a x = 0}`.
    pub fn annihilator(&self, x: ElemId) -> Ideal {
        Ideal {
            generators: vec![x],
            elements: self.elements().filter(|&a| self.mul(a, x) == 0).collect(),
        }
    }

    /// The zero ideal and the unit ideal.
    pub fn zero_ideal(&self) -> Ideal {
        self.principal_ideal(0)
    }

    pub fn unit_ideal(&self) -> Ideal {
        self.principal_ideal(self.one())
    }

    /// Smallest ideal containing all inputs. Each input is already stable
    /// under multiplication, so the additive closure of the union suffices.
    pub fn ideal_sum(&self, ideals: &[Ideal]) -> Result<Ideal> {
        let (first, rest) = ideals
            .split_first()
            .ok_or_else(|| Error::Argument("ideal_sum needs at least one ideal".into()))?;
        let mut acc = first.elements.clone();
        for ideal in rest {
            let mut mask = vec![false; self.order()];
            for &a in &acc {
                for &b in &ideal.elements {
                    mask[self.add(a, b)] = true;
                }
            }
            acc = self.elements().filter(|&a| mask[a]).collect();
        }
        Ok(Ideal {
            generators: ideals
                .iter()
                .flat_map(|i| i.generators.iter().copied())
                .collect(),
            elements: acc,
        })
    }

    /// Ideal generated by arbitrary elements.
    pub fn ideal_generated_by(&self, gens: &[ElemId]) -> Result<Ideal> {
        let principal: Vec<Ideal> = gens.iter().map(|&g| self.principal_ideal(g)).collect();
        if principal.is_empty() {
            return Ok(self.zero_ideal());
        }
        self.ideal_sum(&principal)
    }

    /// Checks that `elements` is a nonempty subset containing `0`, closed
    /// under addition and under multiplication by every ring element.
    pub fn check_ideal(&self, elements: &[ElemId]) -> Result<()> {
        let mut mask = vec![false; self.order()];
        for &a in elements {
            if a >= self.order() {
                return Err(Error::Structural(format!("id {a} out of range")));
            }
            mask[a] = true;
        }
        if !mask[0] {
            return Err(Error::Structural("ideal does not contain 0".into()));
        }
        for &a in elements {
            for &b in elements {
                if !mask[self.add(a, b)] {
                    return Err(Error::Structural("subset not closed under addition".into()));
                }
            }
            for r in self.elements() {
                if !mask[self.mul(r, a)] {
                    return Err(Error::Structural(
                        "subset not closed under ring multiplication".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Wraps a validated element set as an ideal.
    pub fn ideal_from_elements(&self, elements: Vec<ElemId>) -> Result<Ideal> {
        let elements = sorted(elements);
        self.check_ideal(&elements)?;
        Ok(Ideal {
            generators: elements.clone(),
            elements,
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::ring::RingDescriptor;

    #[test]
    fn z6_ideals() {
        let r = RingDescriptor::zmod(6).unwrap();
        let f = r.finite();
        assert_eq!(f.principal_ideal(3).elements(), &[0, 3]);
        assert_eq!(f.annihilator(3).elements(), &[0, 2, 4]);
        assert_eq!(f.annihilator(0).len(), 6);
        assert_eq!(f.annihilator(5).elements(), &[0]);
        assert_eq!(f.principal_ideal(5).len(), 6);
        let sum = f
            .ideal_sum(&[f.principal_ideal(2), f.principal_ideal(3)])
            .unwrap();
        assert_eq!(sum.len(), 6);
        assert!(f.ideal_sum(&[]).is_err());
    }

    #[test]
    fn z12_sum_is_gcd() {
        let r = RingDescriptor::zmod(12).unwrap();
        let f = r.finite();
        let sum = f
            .ideal_sum(&[f.principal_ideal(4), f.principal_ideal(6)])
            .unwrap();
        assert_eq!(sum.elements(), &[0, 2, 4, 6, 8, 10]);
        let i = f.principal_ideal(4);
        assert!(f.ideal_sum(&[i.clone(), i.clone()]).unwrap().same_set(&i));
    }

    #[test]
    fn dual_numbers_principal() {
        let r = RingDescriptor::parse("F3[x]/(x^2)").unwrap();
        let f = r.finite();
        let x = r.parse_element("x").unwrap();
        let xi = r.index_of(&x).unwrap();
        let labels: Vec<&str> = f
            .principal_ideal(xi)
            .elements()
            .iter()
            .map(|&a| f.label(a))
            .collect();
        assert_eq!(labels, vec!["[[0,0]]", "[[0,1]]", "[[0,2]]"]);
        assert!(f.annihilator(xi).same_set(&f.principal_ideal(xi)));
    }

    #[test]
    fn non_ideal_rejected() {
        let r = RingDescriptor::zmod(6).unwrap();
        let f = r.finite();
        assert!(f.ideal_from_elements(vec![0, 1]).is_err());
        assert!(f.ideal_from_elements(vec![2, 4]).is_err());
        assert!(f.ideal_from_elements(vec![0, 2, 4]).is_ok());
    }
}
