use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use gcdring::graph::{Diameter, GcdGraph, GraphSummary};
use gcdring::oracle::verify_spectrum;
use gcdring::ramanujan::{ramanujan_sum_closed, ramanujan_sum_direct};
use gcdring::ring::RingDescriptor;
use gcdring::spectrum::full_spectrum;
use gcdring::symmetric::{canonical_functional, random_nondegenerate};
use gcdring::{dsl, Error};

use crate::{Cli, Command, Format, PsiChoice};

const RANDOM_PSI_ATTEMPTS: usize = 256;

pub enum Failure {
    /// An embedded check failed; the report has already been written.
    Check(String),
    Usage(String),
    Internal(String),
    Io(std::io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Check(m) => write!(f, "check failed: {m}"),
            Failure::Usage(m) | Failure::Internal(m) => f.write_str(m),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::Numeric(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Info { ring } => info(cli, ring),
        Command::Graph { ring, gens } => graph(cli, ring, gens),
        Command::Spectrum {
            ring,
            gens,
            no_orbits,
        } => spectrum(cli, ring, gens, !no_orbits),
        Command::Verify { ring, gens } => verify(cli, ring, gens),
        Command::Ramanujan { ring, psi } => ramanujan(cli, ring, *psi),
        Command::ExportDot { ring, gens, output } => {
            let (_, g) = load_graph(cli, ring, gens)?;
            std::fs::write(output, g.to_dot())?;
            Ok(())
        }
    }
}

fn load_ring(cli: &Cli, text: &str) -> Result<RingDescriptor, Failure> {
    Ok(dsl::parse_ring_spec(text, cli.max_card)?)
}

fn load_graph(cli: &Cli, ring: &str, gens: &str) -> Result<(RingDescriptor, GcdGraph), Failure> {
    let desc = load_ring(cli, ring)?;
    let elems = desc.parse_elements(gens)?;
    let graph = GcdGraph::from_elements(&desc, &elems)?;
    Ok((desc, graph))
}

fn emit_json<T: Serialize>(value: &T) -> Outcome {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn emit_csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Outcome {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct FactorInfo {
    idempotent: String,
    order: usize,
    residue_field: usize,
    is_field: bool,
}

#[derive(Serialize)]
struct InfoReport {
    ring: String,
    cardinality: usize,
    characteristic: u64,
    phi: u64,
    mu: i64,
    idempotents: Vec<String>,
    local_factors: Vec<FactorInfo>,
    f2_rank: usize,
}

fn info(cli: &Cli, text: &str) -> Outcome {
    let desc = load_ring(cli, text)?;
    let f = desc.finite();
    let factors: Vec<FactorInfo> = f
        .local_decomposition()?
        .iter()
        .map(|lf| FactorInfo {
            idempotent: f.label(lf.idempotent).to_string(),
            order: lf.order(),
            residue_field: lf.residue_field_size,
            is_field: lf.is_field(),
        })
        .collect();
    match cli.format {
        Format::Json => emit_json(&InfoReport {
            ring: desc.to_string(),
            cardinality: desc.cardinality(),
            characteristic: desc.characteristic(),
            phi: f.euler_phi(),
            mu: f.moebius()?,
            idempotents: f
                .idempotents()
                .iter()
                .map(|&e| f.label(e).to_string())
                .collect(),
            local_factors: factors,
            f2_rank: f.f2_reduction()?.rank(),
        }),
        Format::Csv => emit_csv(factors),
    }
}

#[derive(Serialize)]
struct GraphReport {
    #[serde(flatten)]
    summary: GraphSummary,
    #[serde(rename = "S")]
    generating_set: Vec<String>,
    degree: usize,
    checks: GraphChecks,
}

#[derive(Serialize)]
struct GraphChecks {
    connectivity_prediction: bool,
    diameter_within_bounds: bool,
}

#[derive(Serialize)]
struct EdgeRow<'a> {
    source: &'a str,
    target: &'a str,
}

fn graph(cli: &Cli, ring: &str, gens: &str) -> Outcome {
    let (desc, g) = load_graph(cli, ring, gens)?;
    let summary = GraphSummary::new(&desc.to_string(), &g)?;
    let connectivity_prediction = summary.predicted_connected == summary.connected;
    let diameter_within_bounds = match (summary.diameter, summary.bounds) {
        (Diameter::Finite(d), Some(b)) => {
            b.lower <= d && d <= b.upper && b.coarse.is_none_or(|c| d <= c)
        }
        (Diameter::Infinite, None) => true,
        _ => false,
    };
    let f = g.ring();
    match cli.format {
        Format::Json => emit_json(&GraphReport {
            generating_set: g
                .generating_set()
                .iter()
                .map(|&s| f.label(s).to_string())
                .collect(),
            degree: g.degree(),
            summary,
            checks: GraphChecks {
                connectivity_prediction,
                diameter_within_bounds,
            },
        })?,
        Format::Csv => emit_csv(g.edges().map(|(a, b)| EdgeRow {
            source: f.label(a),
            target: f.label(b),
        }))?,
    }
    if !connectivity_prediction {
        return Err(Failure::Check(
            "connectivity prediction disagrees with BFS".into(),
        ));
    }
    if !diameter_within_bounds {
        return Err(Failure::Check(
            "diameter outside the predicted bounds".into(),
        ));
    }
    Ok(())
}

fn spectrum(cli: &Cli, ring: &str, gens: &str, orbit_first: bool) -> Outcome {
    let (_, g) = load_graph(cli, ring, gens)?;
    let report = full_spectrum(&g, orbit_first)?;
    match cli.format {
        Format::Json => emit_json(&report),
        Format::Csv => emit_csv(&report.entries),
    }
}

fn verify(cli: &Cli, ring: &str, gens: &str) -> Outcome {
    let (_, g) = load_graph(cli, ring, gens)?;
    let report = verify_spectrum(&g)?;
    match cli.format {
        Format::Json => emit_json(&report)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                method: gcdring::oracle::OracleMethod,
                pass: bool,
                max_deviation: f64,
            }
            emit_csv([Row {
                method: report.method,
                pass: report.pass,
                max_deviation: report.max_deviation,
            }])?
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check(
            "spectrum does not match the adjacency matrix".into(),
        ))
    }
}

#[derive(Serialize)]
struct RamanujanRow {
    g: String,
    closed: i64,
    direct: String,
    agree: bool,
}

#[derive(Serialize)]
struct RamanujanReport {
    ring: String,
    psi: &'static str,
    modulus: u64,
    rows: Vec<RamanujanRow>,
}

fn ramanujan(cli: &Cli, text: &str, choice: PsiChoice) -> Outcome {
    let desc = load_ring(cli, text)?;
    let f = desc.finite();
    let psi = match choice {
        PsiChoice::Canonical => canonical_functional(&desc)?,
        PsiChoice::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            random_nondegenerate(f, desc.characteristic(), &mut rng, RANDOM_PSI_ATTEMPTS)?
                .ok_or_else(|| {
                    Failure::Check(format!(
                        "no non-degenerate functional found in {RANDOM_PSI_ATTEMPTS} draws"
                    ))
                })?
        }
    };
    let mut rows = Vec::with_capacity(f.order());
    for g in f.elements() {
        let closed = ramanujan_sum_closed(f, g)?;
        let direct = ramanujan_sum_direct(f, &psi, g)?;
        let agree = direct.as_integer().is_some_and(|k| *k == closed.into());
        rows.push(RamanujanRow {
            g: f.label(g).to_string(),
            closed,
            direct: direct.to_string(),
            agree,
        });
    }
    let all_agree = rows.iter().all(|r| r.agree);
    match cli.format {
        Format::Json => emit_json(&RamanujanReport {
            ring: desc.to_string(),
            psi: match choice {
                PsiChoice::Canonical => "canonical",
                PsiChoice::Random => "random",
            },
            modulus: psi.modulus(),
            rows,
        })?,
        Format::Csv => emit_csv(rows)?,
    }
    if all_agree {
        Ok(())
    } else {
        Err(Failure::Check(
            "character sum differs from the closed form".into(),
        ))
    }
}
