//! Gcd-graphs `G_R(D)`: Cayley graphs whose generating set is the set of
//! generators of a list `D` of distinct nonzero principal ideals.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{format_bits, ElemId, Element, FiniteRing, Ideal, QuotientRing, RingDescriptor};

/// Largest `|D|` accepted by the cover-number search.
pub const MAX_COVER_DIVISORS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Infinite => None,
        }
    }
}

impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u64(*d as u64),
            Diameter::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl std::fmt::Display for Diameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("infinite"),
        }
    }
}

/// The generators `x_i` kept after deduplicating equal ideals, with their ideals.
#[derive(Clone, Debug)]
pub struct DivisorList {
    generators: Vec<ElemId>,
    ideals: Vec<Ideal>,
}

impl DivisorList {
    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct GcdGraph {
    ring: Arc<FiniteRing>,
    divisors: DivisorList,
    gen_set: Vec<ElemId>,
    in_set: Vec<bool>,
}

/// Rejects zero generators, drops generators whose ideal is already present,
/// and builds `S` as the union of unit orbits of the kept generators. The
/// result is cross-checked against the scan `{r : Rr in D}`.
pub fn build_gcd_graph(ring: &Arc<FiniteRing>, gens: &[ElemId]) -> Result<GcdGraph> {
    let mut generators = Vec::new();
    let mut ideals: Vec<Ideal> = Vec::new();
    for (index, &x) in gens.iter().enumerate() {
        if x >= ring.order() {
            return Err(Error::Generator {
                index,
                reason: format!("id {x} is not an element of the ring"),
            });
        }
        if x == 0 {
            return Err(Error::Generator {
                index,
                reason: "zero generates the zero ideal".into(),
            });
        }
        let ideal = ring.principal_ideal(x);
        if ideals.iter().any(|i| i.same_set(&ideal)) {
            continue;
        }
        generators.push(x);
        ideals.push(ideal);
    }

    let mut in_set = vec![false; ring.order()];
    for &x in &generators {
        for s in ring.unit_orbit(x) {
            in_set[s] = true;
        }
    }
    let targets: HashSet<&[ElemId]> = ideals.iter().map(|i| i.elements()).collect();
    for r in ring.elements() {
        let scanned = targets.contains(ring.principal_ideal(r).elements());
        if scanned != in_set[r] {
            return Err(Error::Invariant(format!(
                "unit orbits and ideal scan disagree at {}",
                ring.label(r)
            )));
        }
    }
    let gen_set = ring.elements().filter(|&r| in_set[r]).collect();
    Ok(GcdGraph {
        ring: Arc::clone(ring),
        divisors: DivisorList { generators, ideals },
        gen_set,
        in_set,
    })
}

/// `s = u1 + u2` with both units, or `None`.
pub fn sum_of_two_units(ring: &FiniteRing, a: ElemId) -> Option<(ElemId, ElemId)> {
    ring.units()
        .into_iter()
        .map(|u| (u, ring.sub(a, u)))
        .find(|&(_, v)| ring.is_unit(v))
}

/// Where `s` sits in `S`: `R s = R x_index` and `s = u x_index` for the unique
/// unit class `u` of `R / Ann_R(x_index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecomposition {
    pub index: usize,
    /// Id of `u` in the quotient `R / Ann_R(x_index)`.
    pub unit_class: ElemId,
    /// Canonical representative of `u` in `R`.
    pub unit_rep: ElemId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterBounds {
    pub lower: usize,
    pub upper: usize,
    /// `3 |D|`, reported when the unitary Cayley graph of `R` is connected.
    pub coarse: Option<usize>,
}

impl GcdGraph {
    pub fn from_elements(desc: &RingDescriptor, gens: &[Element]) -> Result<Self> {
        let ids = gens
            .iter()
            .map(|g| desc.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        build_gcd_graph(desc.finite(), &ids)
    }

    /// The unitary Cayley graph `G_R`, i.e. `D = {R}`.
    pub fn unitary(ring: &Arc<FiniteRing>) -> Result<Self> {
        build_gcd_graph(ring, &[ring.one()])
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn divisors(&self) -> &DivisorList {
        &self.divisors
    }

    /// `S`, sorted.
    pub fn generating_set(&self) -> &[ElemId] {
        &self.gen_set
    }

    pub fn in_generating_set(&self, a: ElemId) -> bool {
        self.in_set[a]
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }

    pub fn degree(&self) -> usize {
        self.gen_set.len()
    }

    pub fn is_adjacent(&self, a: ElemId, b: ElemId) -> bool {
        self.in_set[self.ring.sub(a, b)]
    }

    pub fn neighbors(&self, a: ElemId) -> impl Iterator<Item = ElemId> + '_ {
        self.gen_set.iter().map(move |&s| self.ring.add(a, s))
    }

    /// Edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (ElemId, ElemId)> + '_ {
        self.ring.elements().flat_map(move |a| {
            self.neighbors(a)
                .filter(move |&b| a < b)
                .map(move |b| (a, b))
        })
    }

    pub fn distances_from(&self, start: ElemId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for w in self.neighbors(v) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of vertices at each distance from `start`.
    pub fn layer_sizes(&self, start: ElemId) -> Vec<usize> {
        let mut sizes = Vec::new();
        for d in self.distances_from(start).into_iter().flatten() {
            if sizes.len() <= d {
                sizes.resize(d + 1, 0);
            }
            sizes[d] += 1;
        }
        sizes
    }

    /// Size of the component of `0`. Cayley graphs are vertex-transitive, so
    /// all components have this size.
    fn component_size(&self) -> usize {
        self.distances_from(0).iter().flatten().count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_size() == self.order()
    }

    pub fn components(&self) -> usize {
        self.order() / self.component_size()
    }

    /// Eccentricity of `0`, which by vertex-transitivity is the diameter.
    pub fn diameter(&self) -> Diameter {
        let dist = self.distances_from(0);
        if dist.iter().any(Option::is_none) {
            Diameter::Infinite
        } else {
            Diameter::Finite(dist.into_iter().flatten().max().unwrap_or(0))
        }
    }

    pub fn generating_set_decomposition(&self, s: ElemId) -> Result<GeneratorDecomposition> {
        if s >= self.order() || !self.in_set[s] {
            return Err(Error::Argument(format!("{s} is not in the generating set")));
        }
        let ideal = self.ring.principal_ideal(s);
        let index = self
            .divisors
            .ideals
            .iter()
            .position(|i| i.same_set(&ideal))
            .ok_or_else(|| Error::Invariant("element of S generates no ideal of D".into()))?;
        let x = self.divisors.generators[index];
        let quotient = QuotientRing::new(&self.ring, &self.ring.annihilator(x))?;
        let matches: Vec<ElemId> = quotient
            .ring()
            .units()
            .into_iter()
            .filter(|&u| self.ring.mul(quotient.lift(u), x) == s)
            .collect();
        match matches.as_slice() {
            [u] => Ok(GeneratorDecomposition {
                index,
                unit_class: *u,
                unit_rep: quotient.lift(*u),
            }),
            _ => Err(Error::Invariant(format!(
                "{} unit classes map {} to {}",
                matches.len(),
                self.ring.label(x),
                self.ring.label(s)
            ))),
        }
    }

    /// Whether `I_1 + ... + I_k = R`.
    pub fn ideals_cover_ring(&self) -> Result<bool> {
        if self.divisors.is_empty() {
            return Ok(self.order() == 1);
        }
        Ok(self.ring.ideal_sum(&self.divisors.ideals)?.len() == self.order())
    }

    /// Smallest number of ideals of `D` summing to `R`, if any.
    pub fn min_cover_t(&self) -> Result<Option<usize>> {
        let k = self.divisors.len();
        if k > MAX_COVER_DIVISORS {
            return Err(Error::Cap {
                what: "divisor list for cover search",
                actual: k,
                limit: MAX_COVER_DIVISORS,
            });
        }
        if self.order() == 1 {
            return Ok(Some(0));
        }
        if !self.ideals_cover_ring()? {
            return Ok(None);
        }
        for size in 1..=k {
            for subset in combinations(k, size) {
                let chosen: Vec<Ideal> = subset
                    .iter()
                    .map(|&i| self.divisors.ideals[i].clone())
                    .collect();
                if self.ring.ideal_sum(&chosen)?.len() == self.order() {
                    return Ok(Some(size));
                }
            }
        }
        Err(Error::Invariant(
            "full sum covers R but no subset does".into(),
        ))
    }

    /// Image of `D` in `F2^r`, zeros dropped and duplicates merged.
    pub fn cubelike_reduction(&self) -> Result<CubelikeGraph> {
        let red = self.ring.f2_reduction()?;
        let mut generators: Vec<u32> = self
            .divisors
            .generators
            .iter()
            .map(|&x| red.map(&self.ring, x))
            .filter(|&b| b != 0)
            .collect();
        generators.sort_unstable();
        generators.dedup();
        Ok(CubelikeGraph {
            dimension: red.rank(),
            generators,
        })
    }

    /// Connectivity predicted from the ideal sum and the cubelike reduction.
    pub fn connectivity_predict(&self) -> Result<bool> {
        Ok(self.ideals_cover_ring()? && self.cubelike_reduction()?.is_connected())
    }

    /// `(t, 2t + diam of the cubelike reduction)`, plus `3|D|` when the
    /// unitary graph is connected.
    pub fn diameter_bounds(&self) -> Result<DiameterBounds> {
        if !self.connectivity_predict()? {
            return Err(Error::Contract(
                "diameter bounds need a connected gcd-graph".into(),
            ));
        }
        let t = self
            .min_cover_t()?
            .ok_or_else(|| Error::Invariant("connected graph without ideal cover".into()))?;
        let cube = self
            .cubelike_reduction()?
            .diameter()
            .finite()
            .ok_or_else(|| {
                Error::Invariant("cubelike reduction of a connected graph is disconnected".into())
            })?;
        let coarse = if self.order() > 1 && GcdGraph::unitary(&self.ring)?.is_connected() {
            Some(3 * self.divisors.len())
        } else {
            None
        };
        Ok(DiameterBounds {
            lower: t,
            upper: 2 * t + cube,
            coarse,
        })
    }

    /// Checks that reduction modulo `ideal` maps `G_R(D)` onto edges or
    /// collapsed loops of `G_{R/I}(D')`, maps `S` into `S' + {0}`, and
    /// preserves connectivity.
    pub fn quotient_morphism_check(&self, ideal: &Ideal) -> Result<bool> {
        let quotient = QuotientRing::new(&self.ring, ideal)?;
        let images: Vec<ElemId> = self
            .divisors
            .generators
            .iter()
            .map(|&x| quotient.reduce(x))
            .filter(|&x| x != 0)
            .collect();
        let target = build_gcd_graph(quotient.ring(), &images)?;
        let qr = quotient.ring();
        for &s in &self.gen_set {
            let image = quotient.reduce(s);
            if image != 0 && !target.in_generating_set(image) {
                return Ok(false);
            }
        }
        for (a, b) in self.edges() {
            let d = qr.sub(quotient.reduce(a), quotient.reduce(b));
            if d != 0 && !target.in_generating_set(d) {
                return Ok(false);
            }
        }
        if self.is_connected() && !target.is_connected() {
            return Ok(false);
        }
        Ok(true)
    }

    /// Graphviz rendering; node ids are canonical element serializations.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for a in self.ring.elements() {
            let _ = writeln!(out, "  \"{}\";", self.ring.label(a));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                self.ring.label(a),
                self.ring.label(b)
            );
        }
        out.push_str("}\n");
        out
    }
}

/// All `size`-subsets of `0..k` in lexicographic order.
fn combinations(k: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (size <= k).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = size;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < k - size + i {
                next[i] += 1;
                for j in i + 1..size {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Cayley graph on `F2^r` with generating set `generators` (bit vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubelikeGraph {
    pub dimension: usize,
    pub generators: Vec<u32>,
}

impl CubelikeGraph {
    fn distances(&self) -> Vec<Option<usize>> {
        let n = 1usize << self.dimension;
        let mut dist = vec![None; n];
        dist[0] = Some(0);
        let mut queue = VecDeque::from([0u32]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize].unwrap();
            for &s in &self.generators {
                let w = v ^ s;
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances().iter().all(Option::is_some)
    }

    pub fn components(&self) -> usize {
        (1usize << self.dimension) / self.distances().iter().flatten().count()
    }

    pub fn diameter(&self) -> Diameter {
        let dist = self.distances();
        if dist.iter().any(Option::is_none) {
            Diameter::Infinite
        } else {
            Diameter::Finite(dist.into_iter().flatten().max().unwrap_or(0))
        }
    }

    pub fn generator_labels(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|&b| format_bits(b, self.dimension))
            .collect()
    }
}

/// JSON summary of a gcd-graph.
#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub ring: String,
    #[serde(rename = "D")]
    pub divisors: Vec<String>,
    #[serde(rename = "S_size")]
    pub generating_set_size: usize,
    pub connected: bool,
    pub components: usize,
    pub diameter: Diameter,
    pub t: Option<usize>,
    pub bounds: Option<DiameterBounds>,
    pub cubelike_rank: usize,
    pub cubelike_generators: Vec<String>,
    pub cubelike_diameter: Diameter,
    pub predicted_connected: bool,
    pub unitary_diameter: Option<Diameter>,
}

impl GraphSummary {
    pub fn new(ring_name: &str, graph: &GcdGraph) -> Result<Self> {
        let cube = graph.cubelike_reduction()?;
        let predicted = graph.connectivity_predict()?;
        let bounds = if predicted {
            Some(graph.diameter_bounds()?)
        } else {
            None
        };
        let unitary_diameter = if graph.order() > 1 {
            Some(GcdGraph::unitary(graph.ring())?.diameter())
        } else {
            None
        };
        Ok(Self {
            ring: ring_name.to_string(),
            divisors: graph
                .divisors()
                .generators()
                .iter()
                .map(|&x| graph.ring().label(x).to_string())
                .collect(),
            generating_set_size: graph.degree(),
            connected: graph.is_connected(),
            components: graph.components(),
            diameter: graph.diameter(),
            t: graph.min_cover_t()?,
            bounds,
            cubelike_rank: cube.dimension,
            cubelike_generators: cube.generator_labels(),
            cubelike_diameter: cube.diameter(),
            predicted_connected: predicted,
            unitary_diameter,
        })
    }
}
