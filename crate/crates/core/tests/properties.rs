use proptest::prelude::*;

use gcdring::graph::{build_gcd_graph, GcdGraph};
use gcdring::oracle::verify_spectrum;
use gcdring::ramanujan::quotient_compatibility_check;
use gcdring::ring::RingDescriptor;
use gcdring::spectrum::{character_eigen_check, eigenvalue, full_spectrum};
use gcdring::symmetric::canonical_functional;

const FACTORS: &[&str] = &[
    "Z/2",
    "Z/3",
    "Z/4",
    "Z/5",
    "Z/8",
    "Z/9",
    "F4",
    "F2[x]/(x^2)",
    "F3[x]/(x^2)",
    "GR(4,2)",
];

/// A product of one to three small factors with at most 64 elements.
fn ring_spec() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(FACTORS), 1..=3)
        .prop_map(|fs| fs.join(" x "))
        .prop_filter("at most 64 elements", |s| {
            RingDescriptor::parse(s)
                .map(|r| r.cardinality() <= 64)
                .unwrap_or(false)
        })
}

fn ring_and_gens() -> impl Strategy<Value = (String, Vec<prop::sample::Index>)> {
    (
        ring_spec(),
        prop::collection::vec(any::<prop::sample::Index>(), 0..4),
    )
}

fn build(spec: &str, picks: &[prop::sample::Index]) -> GcdGraph {
    let r = RingDescriptor::parse(spec).unwrap();
    let f = r.finite();
    let gens: Vec<usize> = picks.iter().map(|i| 1 + i.index(f.order() - 1)).collect();
    build_gcd_graph(f, &gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_identities((spec, picks) in ring_and_gens()) {
        let g = build(&spec, &picks);
        let rep = full_spectrum(&g, true).unwrap();
        prop_assert_eq!(rep.checks.trace, 0);
        prop_assert_eq!(rep.checks.trace_sq, (g.order() * g.degree()) as i64);
        prop_assert_eq!(rep.entries[0].lambda, g.degree() as i64);
        prop_assert_eq!(rep.multiset.iter().map(|m| m.multiplicity).sum::<usize>(), g.order());
    }

    #[test]
    fn unit_orbit_invariance((spec, picks) in ring_and_gens()) {
        let g = build(&spec, &picks);
        let f = g.ring();
        for a in f.elements() {
            let base = eigenvalue(&g, a).unwrap();
            for u in f.units() {
                prop_assert_eq!(eigenvalue(&g, f.mul(u, a)).unwrap(), base);
            }
        }
        prop_assert_eq!(full_spectrum(&g, true).unwrap(), full_spectrum(&g, false).unwrap());
    }

    #[test]
    fn closed_form_matches_character_sum((spec, picks) in ring_and_gens()) {
        let r = RingDescriptor::parse(&spec).unwrap();
        let psi = canonical_functional(&r).unwrap();
        let g = build(&spec, &picks);
        for a in g.ring().elements() {
            prop_assert!(character_eigen_check(&g, &psi, a).unwrap());
        }
    }

    #[test]
    fn connectivity_prediction_matches_bfs((spec, picks) in ring_and_gens()) {
        let g = build(&spec, &picks);
        prop_assert_eq!(g.connectivity_predict().unwrap(), g.is_connected());
        if g.is_connected() {
            let d = g.diameter().finite().unwrap();
            let b = g.diameter_bounds().unwrap();
            prop_assert!(b.lower <= d && d <= b.upper);
        }
    }

    #[test]
    fn oracle_agrees((spec, picks) in ring_and_gens()) {
        let g = build(&spec, &picks);
        prop_assert!(verify_spectrum(&g).unwrap().pass);
    }

    #[test]
    fn annihilator_quotient_compatibility(spec in ring_spec(), seed in any::<u64>()) {
        let r = RingDescriptor::parse(&spec).unwrap();
        let f = r.finite();
        let n = f.order() as u64;
        let g = (seed % n) as usize;
        let x = ((seed / n) % n) as usize;
        prop_assert!(quotient_compatibility_check(f, g, x).unwrap());
    }

    #[test]
    fn parse_print_round_trip(spec in ring_spec()) {
        let once = RingDescriptor::parse(&spec).unwrap().to_string();
        let twice = RingDescriptor::parse(&once).unwrap().to_string();
        prop_assert_eq!(once, twice);
    }
}
