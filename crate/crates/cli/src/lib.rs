//! The commands behind the `pathdecomp` binary, as functions from input
//! text to output text and an exit status, so they can be driven in-process.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use pathdecomp::decompose::{decompose, replay, DecomposeError, ReductionTrace};
use pathdecomp::format::{
    parse_decomposition, parse_edge_list, write_decomposition, write_edge_list,
};
use pathdecomp::generate::{family, generate, GenSpec};
use pathdecomp::graph::connected_components;
use pathdecomp::verify::{minimum_decomposition, verify_decomposition};
use pathdecomp::{Decomposition, Graph, VertexId};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Exit statuses shared by every command.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ERROR: i32 = 1;
    /// Valid decomposition, but a triangle component puts it over the bound.
    pub const BOUND_UNMET: i32 = 2;
    pub const INVALID: i32 = 3;
    pub const FUZZ_FAILED: i32 = 4;
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: exit::OK,
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: exit::ERROR,
        }
    }
}

#[derive(Serialize)]
struct JsonStep<'a> {
    branch: &'a str,
    depth: usize,
    bindings: BTreeMap<String, VertexId>,
    counts: &'a BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct JsonDecomposition<'a> {
    paths: Vec<&'a [VertexId]>,
    bound: usize,
    met: bool,
    trace: Vec<JsonStep<'a>>,
}

fn to_json(d: &Decomposition, t: &ReductionTrace) -> String {
    let doc = JsonDecomposition {
        paths: d.paths.iter().map(|p| p.vertices()).collect(),
        bound: d.claimed_bound,
        met: d.bound_met,
        trace: t
            .steps
            .iter()
            .map(|s| JsonStep {
                branch: s.branch.tag(),
                depth: s.depth,
                bindings: s
                    .bindings
                    .iter()
                    .map(|(r, &v)| (r.to_string(), v))
                    .collect(),
                counts: &s.counts,
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    out.push('\n');
    out
}

/// Result of `decompose`: the certificate on stdout and the trace text for
/// an optional trace file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposeOutcome {
    pub outcome: Outcome,
    pub trace: String,
}

/// Decomposes an edge-list graph. Exit 0 when the bound is met, 2 when a
/// triangle component makes it unattainable, 1 on any error.
pub fn cmd_decompose(graph_text: &str, json: bool) -> DecomposeOutcome {
    let g = match parse_edge_list(graph_text) {
        Ok(g) => g,
        Err(e) => {
            return DecomposeOutcome {
                outcome: Outcome::error(e),
                trace: String::new(),
            }
        }
    };
    match decompose(&g) {
        Ok((d, t)) => {
            let stdout = if json {
                to_json(&d, &t)
            } else {
                write_decomposition(&d)
            };
            let mut outcome = Outcome::ok(stdout);
            if !d.bound_met {
                outcome.code = exit::BOUND_UNMET;
                outcome.stderr = format!(
                    "note: triangle component present; {} paths exceed the bound {}\n",
                    d.paths.len(),
                    d.claimed_bound
                );
            }
            DecomposeOutcome {
                outcome,
                trace: t.to_text(),
            }
        }
        Err(DecomposeError::InternalInvariantViolation { message, trace }) => DecomposeOutcome {
            outcome: Outcome::error(format!("internal invariant violated: {message}")),
            trace: trace.to_text(),
        },
        Err(e) => DecomposeOutcome {
            outcome: Outcome::error(e),
            trace: String::new(),
        },
    }
}

/// Checks a certificate against its graph. Exit 0 if valid, 3 if not, 1
/// when either file does not parse.
pub fn cmd_verify(graph_text: &str, decomposition_text: &str, json: bool) -> Outcome {
    let g = match parse_edge_list(graph_text) {
        Ok(g) => g,
        Err(e) => return Outcome::error(format!("graph: {e}")),
    };
    let d = match parse_decomposition(decomposition_text) {
        Ok(d) => d,
        Err(e) => return Outcome::error(format!("decomposition: {e}")),
    };
    let report = verify_decomposition(&g, &d);
    let stdout = if json {
        let mut s = serde_json::to_string_pretty(&report).expect("plain data serializes");
        s.push('\n');
        s
    } else {
        report.to_string()
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.valid {
            exit::OK
        } else {
            exit::INVALID
        },
    }
}

/// Writes the graph described by `spec` as an edge list.
pub fn cmd_gen(spec: &GenSpec) -> Outcome {
    match generate(spec) {
        Ok(g) => Outcome::ok(write_edge_list(&g)),
        Err(e) => Outcome::error(e),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzConfig {
    pub trials: u64,
    pub max_n: usize,
    pub seed: u64,
    /// Compare against the exact minimum when the graph has at most this
    /// many edges; 0 turns the oracle off.
    pub oracle_max_edges: usize,
    pub densify: bool,
    /// Run the named families before the random trials.
    pub families: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            max_n: 50,
            seed: 0,
            oracle_max_edges: 0,
            densify: false,
            families: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzFailure {
    pub trial: u64,
    pub seed: u64,
    pub spec: GenSpec,
    pub kind: String,
    pub detail: String,
    /// Shell line that regenerates and re-decomposes the failing graph.
    pub reproducer: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub trials: u64,
    pub failures: Vec<FuzzFailure>,
    pub branch_histogram: BTreeMap<String, usize>,
    pub max_n_seen: usize,
}

impl FuzzReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "trials {} failures {} max_n_seen {}\n",
            self.trials,
            self.failures.len(),
            self.max_n_seen
        );
        for (tag, count) in &self.branch_histogram {
            let _ = writeln!(out, "branch {tag} {count}");
        }
        for f in &self.failures {
            let _ = writeln!(
                out,
                "FAIL trial {} seed {} {}: {}",
                f.trial, f.seed, f.kind, f.detail
            );
            let _ = writeln!(out, "  reproduce: {}", f.reproducer);
        }
        out
    }
}

/// Generator spec of trial `i`: seed `seed + i`, and a size and density
/// drawn from that seed.
pub fn trial_spec(cfg: &FuzzConfig, i: u64) -> GenSpec {
    let seed = cfg.seed.wrapping_add(i);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=cfg.max_n.max(1));
    // Rounded so the reproducer line carries the exact value.
    let p2 = (rng.random::<f64>() * 1000.0).round() / 1000.0;
    GenSpec {
        n,
        seed,
        connect: true,
        p2,
        family: None,
        densify: cfg.densify,
    }
}

fn reproducer(spec: &GenSpec) -> String {
    match &spec.family {
        Some(name) => format!(
            "pathdecomp gen --family {name} --n {} | pathdecomp decompose -",
            spec.n
        ),
        None => format!(
            "pathdecomp gen --n {} --seed {} --p2 {} --connected{} | pathdecomp decompose -",
            spec.n,
            spec.seed,
            spec.p2,
            if spec.densify { " --densify" } else { "" }
        ),
    }
}

struct TrialResult {
    n: usize,
    histogram: BTreeMap<String, usize>,
    failure: Option<(String, String)>,
}

/// Decomposes, verifies, checks the bound per component, replays the
/// trace, and consults the oracle on small graphs.
fn check_graph(g: &Graph, oracle_max_edges: usize) -> TrialResult {
    let mut result = TrialResult {
        n: g.n(),
        histogram: BTreeMap::new(),
        failure: None,
    };
    let fail = |kind: &str, detail: String| Some((kind.to_string(), detail));
    let (d, t) = match decompose(g) {
        Ok(x) => x,
        Err(e @ DecomposeError::InternalInvariantViolation { .. }) => {
            result.failure = fail("InternalInvariantViolation", e.to_string());
            return result;
        }
        Err(e) => {
            result.failure = fail("DecomposeError", e.to_string());
            return result;
        }
    };
    for (b, c) in t.histogram() {
        *result.histogram.entry(b.tag().to_string()).or_insert(0) += c;
    }
    let report = verify_decomposition(g, &d);
    let budget: usize = connected_components(g)
        .iter()
        .filter(|c| c.edge_count > 0)
        .map(|c| if c.is_triangle() { 2 } else { c.order() / 2 })
        .sum();
    result.failure = if !report.valid {
        let kinds: Vec<String> = report.failures.iter().map(|f| f.kind.to_string()).collect();
        fail("Invalid", kinds.join(","))
    } else if d.paths.len() > budget {
        fail(
            "BoundExceeded",
            format!("{} paths, budget {budget}", d.paths.len()),
        )
    } else if let Err(e) = replay(&t) {
        fail("ReplayFailed", e.to_string())
    } else if oracle_max_edges > 0 && g.m() <= oracle_max_edges {
        match minimum_decomposition(g, oracle_max_edges) {
            Ok((min, _)) if min > d.paths.len() => fail(
                "OracleAboveOutput",
                format!("minimum {min} > {} paths", d.paths.len()),
            ),
            Ok(_) => None,
            Err(e) => fail("Oracle", e.to_string()),
        }
    } else {
        None
    };
    result
}

/// Families run before the random trials when `families` is set.
pub const SEED_FAMILIES: [&str; 9] = [
    "fig4a",
    "fig4b",
    "fig5a",
    "fig5b",
    "fig5c",
    "friendship",
    "theta",
    "cycle",
    "triangle-chain",
];

fn family_specs() -> Vec<GenSpec> {
    let mut out = Vec::new();
    for name in SEED_FAMILIES {
        let sizes: &[usize] = if name.starts_with("fig") {
            &[0]
        } else {
            &[4, 5, 6, 7, 8, 12]
        };
        for &n in sizes {
            out.push(GenSpec {
                n,
                seed: 0,
                connect: true,
                p2: 0.0,
                family: Some(name.to_string()),
                densify: false,
            });
        }
    }
    out
}

/// The fuzz loop. Trials run in parallel and are merged in trial order, so
/// the report depends only on the configuration.
pub fn run_fuzz(cfg: &FuzzConfig) -> FuzzReport {
    let mut specs: Vec<(u64, GenSpec)> = Vec::new();
    if cfg.families {
        specs.extend(family_specs().into_iter().map(|s| (u64::MAX, s)));
    }
    specs.extend((0..cfg.trials).map(|i| (i, trial_spec(cfg, i))));
    let results: Vec<(u64, GenSpec, TrialResult)> = specs
        .into_par_iter()
        .map(|(i, spec)| {
            let r = match family(spec.family.as_deref().unwrap_or(""), spec.n) {
                Ok(g) if spec.family.is_some() => check_graph(&g, cfg.oracle_max_edges),
                _ => match generate(&spec) {
                    Ok(g) => check_graph(&g, cfg.oracle_max_edges),
                    Err(e) => TrialResult {
                        n: spec.n,
                        histogram: BTreeMap::new(),
                        failure: Some(("GenError".into(), e.to_string())),
                    },
                },
            };
            (i, spec, r)
        })
        .collect();

    let mut report = FuzzReport {
        trials: cfg.trials,
        failures: Vec::new(),
        branch_histogram: BTreeMap::new(),
        max_n_seen: 0,
    };
    for (i, spec, r) in results {
        report.max_n_seen = report.max_n_seen.max(r.n);
        for (tag, c) in r.histogram {
            *report.branch_histogram.entry(tag).or_insert(0) += c;
        }
        if let Some((kind, detail)) = r.failure {
            report.failures.push(FuzzFailure {
                trial: i,
                seed: spec.seed,
                reproducer: reproducer(&spec),
                spec,
                kind,
                detail,
            });
        }
    }
    report
}

/// Runs the fuzz loop and renders its report. Exit 0 iff nothing failed.
pub fn cmd_fuzz(cfg: &FuzzConfig, json: bool) -> (Outcome, FuzzReport) {
    let report = run_fuzz(cfg);
    let stdout = if json {
        let mut s = serde_json::to_string_pretty(&report).expect("plain data serializes");
        s.push('\n');
        s
    } else {
        report.to_text()
    };
    let mut outcome = Outcome::ok(stdout);
    if !report.failures.is_empty() {
        outcome.code = exit::FUZZ_FAILED;
        for f in &report.failures {
            let _ = writeln!(outcome.stderr, "reproduce: {}", f.reproducer);
        }
    }
    (outcome, report)
}
