//! Integer spectra of gcd-graphs via generalized Ramanujan sums.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::graph::GcdGraph;
use crate::ramanujan::{classical_ramanujan, closed_form};
use crate::ring::ElemId;
use crate::symmetric::{is_nondegenerate, LinearFunctional};

/// `lambda_g = sum_i phi(R/Ann x_i) / phi(R/Ann g x_i) * mu(R/Ann g x_i)`.
pub fn eigenvalue(graph: &GcdGraph, g: ElemId) -> Result<i64> {
    let ring = graph.ring();
    let mut total = 0i64;
    for &x in graph.divisors().generators() {
        let phi_x = ring.annihilator_quotient(x)?.phi;
        total += closed_form(phi_x, ring, ring.mul(g, x))?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    #[serde(skip)]
    pub id: ElemId,
    pub g: String,
    pub lambda: i64,
    pub orbit_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub lambda: i64,
    pub multiplicity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraceChecks {
    pub trace: i64,
    pub trace_sq: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub entries: Vec<SpectrumEntry>,
    pub multiset: Vec<Multiplicity>,
    pub checks: TraceChecks,
}

impl SpectrumReport {
    /// Eigenvalues in canonical element order.
    pub fn lambdas(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.lambda).collect()
    }

    pub fn multiplicity_map(&self) -> BTreeMap<i64, usize> {
        self.multiset
            .iter()
            .map(|m| (m.lambda, m.multiplicity))
            .collect()
    }
}

/// Full spectrum, one entry per element in canonical order. With
/// `orbit_first` the eigenvalue is evaluated once per unit orbit and copied;
/// without it every element is evaluated separately.
pub fn full_spectrum(graph: &GcdGraph, orbit_first: bool) -> Result<SpectrumReport> {
    let ring = graph.ring();
    let n = ring.order();
    let mut lambda = vec![0i64; n];
    let mut orbit_size = vec![0usize; n];
    for orbit in ring.unit_orbits() {
        let value = if orbit_first {
            Some(eigenvalue(graph, orbit[0])?)
        } else {
            None
        };
        for &g in &orbit {
            lambda[g] = match value {
                Some(v) => v,
                None => eigenvalue(graph, g)?,
            };
            orbit_size[g] = orbit.len();
        }
    }
    let entries: Vec<SpectrumEntry> = ring
        .elements()
        .map(|g| SpectrumEntry {
            id: g,
            g: ring.label(g).to_string(),
            lambda: lambda[g],
            orbit_size: orbit_size[g],
        })
        .collect();
    let mut counts = BTreeMap::new();
    for &l in &lambda {
        *counts.entry(l).or_insert(0usize) += 1;
    }
    let checks = TraceChecks {
        trace: lambda.iter().sum(),
        trace_sq: lambda.iter().map(|l| l * l).sum(),
    };
    let report = SpectrumReport {
        entries,
        multiset: counts
            .into_iter()
            .map(|(lambda, multiplicity)| Multiplicity {
                lambda,
                multiplicity,
            })
            .collect(),
        checks,
    };
    check_report(graph, &report)?;
    Ok(report)
}

fn check_report(graph: &GcdGraph, report: &SpectrumReport) -> Result<()> {
    let degree = graph.degree() as i64;
    let order = graph.order() as i64;
    if report.entries.first().map(|e| e.lambda) != Some(degree) {
        return Err(Error::Invariant("lambda_0 differs from the degree".into()));
    }
    if report.checks.trace != 0 {
        return Err(Error::Invariant(format!(
            "trace {} is nonzero",
            report.checks.trace
        )));
    }
    if report.checks.trace_sq != order * degree {
        return Err(Error::Invariant(format!(
            "sum of squares {} differs from |R||S| = {}",
            report.checks.trace_sq,
            order * degree
        )));
    }
    Ok(())
}

/// `lambda_m = sum_{d in D} c(m, n/d)` for `m = 0..n`.
pub fn classical_spectrum_zn(n: u64, divisors: &[u64]) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    if let Some(&d) = divisors
        .iter()
        .find(|&&d| d == 0 || !n.is_multiple_of(d) || d == n)
    {
        return Err(Error::Argument(format!(
            "{d} is not a proper divisor of {n}"
        )));
    }
    Ok((0..n as i64)
        .map(|m| {
            divisors
                .iter()
                .map(|&d| classical_ramanujan(m, n / d))
                .sum()
        })
        .collect())
}

/// Checks `sum_{s in S} zeta_n^{psi(g s)}` equals the closed-form eigenvalue.
pub fn character_eigen_check(graph: &GcdGraph, psi: &LinearFunctional, g: ElemId) -> Result<bool> {
    let ring = graph.ring();
    if !is_nondegenerate(ring, psi) {
        return Err(Error::Argument("functional is degenerate".into()));
    }
    let n = psi.modulus();
    let mut counts = vec![0i64; n as usize];
    for &s in graph.generating_set() {
        counts[psi.value(ring.mul(g, s)) as usize] += 1;
    }
    let sum = CycInt::from_exponent_counts(n, &counts);
    let expected = CycInt::from_integer(n, eigenvalue(graph, g)?);
    Ok(sum == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;
    use crate::symmetric::canonical_functional;

    fn graph(spec: &str, gens: &str) -> (RingDescriptor, GcdGraph) {
        let r = RingDescriptor::parse(spec).unwrap();
        let g = GcdGraph::from_elements(&r, &r.parse_elements(gens).unwrap()).unwrap();
        (r, g)
    }

    #[test]
    fn complete_graph_k5() {
        let (_, g) = graph("Z/5", "1");
        let rep = full_spectrum(&g, true).unwrap();
        assert_eq!(rep.lambdas(), vec![4, -1, -1, -1, -1]);
        assert_eq!(rep.multiplicity_map(), BTreeMap::from([(-1, 4), (4, 1)]));
    }

    #[test]
    fn edgeless_is_all_zero() {
        let (_, g) = graph("Z/6", "");
        assert!(full_spectrum(&g, true)
            .unwrap()
            .lambdas()
            .iter()
            .all(|&l| l == 0));
    }

    #[test]
    fn z6_orbits() {
        let (_, g) = graph("Z/6", "1");
        let rep = full_spectrum(&g, true).unwrap();
        let sizes: Vec<usize> = rep.entries.iter().map(|e| e.orbit_size).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1, 2, 2]);
        assert_eq!(rep.lambdas(), vec![2, 1, -1, -2, -1, 1]);
    }

    #[test]
    fn orbit_flag_does_not_change_result() {
        let (_, g) = graph("F3[x]/(x^2) x Z/2", "(1,1);(x,0)");
        assert_eq!(
            full_spectrum(&g, true).unwrap(),
            full_spectrum(&g, false).unwrap()
        );
    }

    #[test]
    fn classical_agreement() {
        let (_, g) = graph("Z/6", "1;2");
        assert_eq!(
            full_spectrum(&g, true).unwrap().lambdas(),
            classical_spectrum_zn(6, &[1, 2]).unwrap()
        );
        let (_, g) = graph("Z/12", "1;2");
        assert_eq!(
            full_spectrum(&g, true).unwrap().lambdas(),
            classical_spectrum_zn(12, &[1, 2]).unwrap()
        );
        assert!(matches!(
            classical_spectrum_zn(6, &[4]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            classical_spectrum_zn(6, &[6]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn character_sums_match() {
        let (r, g) = graph("F3[x]/(x^2) x Z/2", "(1,1);(x,0)");
        let psi = canonical_functional(&r).unwrap();
        for e in g.ring().elements() {
            assert!(character_eigen_check(&g, &psi, e).unwrap());
        }
    }

    #[test]
    fn report_json_shape() {
        let (_, g) = graph("Z/3", "1");
        let json = serde_json::to_string(&full_spectrum(&g, true).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"entries":[{"g":"[[0]]","lambda":2,"orbit_size":1},{"g":"[[1]]","lambda":-1,"orbit_size":2},{"g":"[[2]]","lambda":-1,"orbit_size":2}],"multiset":[{"lambda":-1,"multiplicity":2},{"lambda":2,"multiplicity":1}],"checks":{"trace":0,"trace_sq":6}}"#
        );
    }
}
