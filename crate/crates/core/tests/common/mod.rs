#![allow(dead_code)]

use gcdring::graph::GcdGraph;
use gcdring::ring::RingDescriptor;

/// A ring spec and a `;`-separated generator list.
#[derive(Clone, Copy, Debug)]
pub struct Case {
    pub ring: &'static str,
    pub gens: &'static str,
}

impl Case {
    pub fn build(&self) -> (RingDescriptor, GcdGraph) {
        let desc =
            RingDescriptor::parse(self.ring).unwrap_or_else(|e| panic!("{}: {e}", self.ring));
        let gens = desc
            .parse_elements(self.gens)
            .unwrap_or_else(|e| panic!("{} / {}: {e}", self.ring, self.gens));
        let graph = GcdGraph::from_elements(&desc, &gens).unwrap();
        (desc, graph)
    }
}

const fn case(ring: &'static str, gens: &'static str) -> Case {
    Case { ring, gens }
}

pub const SHARP_EXAMPLE: Case = case("F3[x]/(x^2) x Z/2", "(1,1);(x,0)");

/// Cyclic rings `Z/4 .. Z/30`.
const CYCLIC: &[Case] = &[
    case("Z/4", "1;2"),
    case("Z/5", "1"),
    case("Z/6", "2;3"),
    case("Z/7", "1"),
    case("Z/8", "1;4"),
    case("Z/9", "3"),
    case("Z/10", "1;5"),
    case("Z/11", "1"),
    case("Z/12", "1;2"),
    case("Z/13", "1"),
    case("Z/14", "2;7"),
    case("Z/15", "3;5"),
    case("Z/16", "2;4"),
    case("Z/17", "1"),
    case("Z/18", "1;6;9"),
    case("Z/19", "1"),
    case("Z/20", "1;4;10"),
    case("Z/21", "3;7"),
    case("Z/22", "1;11"),
    case("Z/23", "1"),
    case("Z/24", "3;8"),
    case("Z/25", "1;5"),
    case("Z/26", "2;13"),
    case("Z/27", "1;9"),
    case("Z/28", "4;7"),
    case("Z/29", "1"),
    case("Z/30", "6;10;15"),
];

const NONCYCLIC: &[Case] = &[
    case("F4", "1"),
    case("F8", "1"),
    case("F9", "1"),
    case("F16", "1"),
    case("F25", "1"),
    case("F27", "1"),
    case("F49", "1"),
    case("F3[x]/(x^2)", "1;x"),
    case("F3[x]/(x^2)", "x"),
    case("GR(4,2)", "1;2"),
    case("GR(4,2)", "2"),
    case("Z/4[y]/(y^2 + y + 1)", "1;2y"),
    case("F2[x]/(x^2)[y]/(y^2)", "1;x;x*y"),
    case("F2[x]/(x^2)[y]/(y^2)", "x;y"),
    case("F2[x]/(x^2)[y]/(y^2)", "1;x+y"),
    case("F2[x]/(x^3)", "1;x^2"),
    case("Z/4[x]/(x^2)", "1;2;x"),
    case("Z/4[x]/(x^2 + x + 1) x Z/3", "(1,1);(2,0)"),
    SHARP_EXAMPLE,
    case("F4 x Z/3", "(1,1);(a,0)"),
    case("F9 x Z/2", "(1,0);(0,1)"),
    case("F8 x Z/7", "(1,1)"),
    case("Z/5 x Z/5", "(1,0);(0,1)"),
    case("Z/3 x Z/3 x Z/3", "(1,1,1);(1,0,0)"),
    case("F4 x F4", "(1,1);(1,0)"),
    case("Z/7 x Z/9", "(1,3);(0,1)"),
];

/// Products with at least two residue fields equal to `F2`.
const MULTI_F2: &[Case] = &[
    case("Z/2 x Z/2", "(1,0);(0,1)"),
    case("Z/2 x Z/2", "(1,1)"),
    case("Z/2 x Z/2 x Z/2", "(1,1,0);(0,1,1)"),
    case("Z/2 x Z/2 x Z/2", "(1,1,1);(1,0,0);(0,1,0)"),
    case("Z/4 x Z/2", "(1,1);(2,1)"),
    case("Z/4 x Z/4", "(1,1);(1,0)"),
    case("F2[x]/(x^2) x Z/2", "(1,1);(x,1)"),
    case("F2[x]/(x^2) x Z/4", "(1,0);(0,1)"),
    case("Z/2 x Z/2 x Z/4", "(1,1,1)"),
    case("F2[x]/(x^2) x F2[x]/(x^2)", "(1,1);(x,1);(1,x)"),
    case(
        "Z/2 x Z/2 x Z/2 x Z/2",
        "(1,1,0,0);(0,0,1,1);(1,0,1,0);(0,1,0,1)",
    ),
    case(
        "Z/2 x Z/2 x Z/2 x Z/2",
        "(1,1,1,1);(1,0,0,0);(0,1,0,0);(0,0,1,0)",
    ),
    case("Z/6 x Z/2", "(1,1);(3,0)"),
    case("Z/4 x Z/2 x Z/2", "(2,1,1);(1,0,1)"),
    case("Z/8 x Z/8", "(1,1);(2,0)"),
    case("Z/2 x Z/2 x Z/3", "(1,0,1);(0,1,0)"),
];

/// Graphs with `64 < |R| <= 512`, verified by the floating tier.
pub const FLOAT: &[Case] = &[
    case("Z/70", "1;5"),
    case("Z/96", "1;3;8"),
    case("F3[x]/(x^2) x F9", "(1,1);(x,0)"),
    case("Z/2 x Z/2 x F4 x Z/5", "(1,1,1,1);(1,0,a,0)"),
    case("F2[x]/(x^2)[y]/(y^2) x Z/9", "(1,1);(x,3);(x*y,0)"),
    case("GR(8,2) x Z/3", "(1,1);(2,0)"),
    case("F128", "1"),
    case("F4 x Z/100", "(1,1);(0,5);(a,10)"),
];

/// Every graph with `|R| <= 64`.
pub fn exact_corpus() -> Vec<Case> {
    [CYCLIC, NONCYCLIC, MULTI_F2].concat()
}

pub fn multi_f2_corpus() -> &'static [Case] {
    MULTI_F2
}

pub fn full_corpus() -> Vec<Case> {
    [CYCLIC, NONCYCLIC, MULTI_F2, FLOAT].concat()
}

/// Distinct ring specs of the full corpus, in first-seen order.
pub fn corpus_rings() -> Vec<&'static str> {
    let mut seen = Vec::new();
    for c in full_corpus() {
        if !seen.contains(&c.ring) {
            seen.push(c.ring);
        }
    }
    seen
}
