//! Batch benchmark over generated instances. Instances run on a rayon pool
//! and reports are collected in input order.

use std::collections::BTreeMap;
use std::time::Instant;

use graph_frechet::eps::{decide_eps, window_half_width, EpsParams};
use graph_frechet::exact::{exact_strong_detailed, exact_weak, Mode};
use graph_frechet::instances::{random_instance, InstanceConfig};
use graph_frechet::io::write_graph;
use graph_frechet::kappa::decide_kappa;
use graph_frechet::ovh::{gen_paths_instance, gen_walks_instance, OvVectors};
use graph_frechet::{DistanceOracle, ExactOracle, FrechetError, Scalar, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{sha256_hex, RunReport, RunStats};
use crate::Suite;

#[derive(Debug, Serialize)]
pub struct BenchOutput {
    pub reports: Vec<RunReport>,
    pub summary: Summary,
}

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    /// Instances whose engines returned an error.
    pub errors: usize,
    /// Instances violating a budget, sandwich or gap check.
    pub failed_checks: usize,
    /// Least-squares slope of κ-decision queries against `n + m`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub query_slope: Option<f64>,
    /// Largest ratio of κ-decision queries to `3(n+m)+1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_query_ratio: Option<f64>,
}

#[derive(Serialize)]
struct RandomResult {
    n: usize,
    m: usize,
    vertices: usize,
    exact_strong: Weight,
    exact_weak: Weight,
    cell_evaluations: u64,
    kappa_verdict: graph_frechet::Verdict,
    kappa_queries: u64,
    kappa_budget: u64,
    eps_verdict: graph_frechet::Verdict,
    eps_grid_size: usize,
    eps_grid_budget: usize,
    eps_compressed_len: usize,
    checks_ok: bool,
}

#[derive(Serialize)]
struct OvhResult {
    dimension: usize,
    size_a: usize,
    size_b: usize,
    exact_strong: Weight,
    threshold: Weight,
    ground_truth_orthogonal: bool,
    predicted_orthogonal: bool,
    checks_ok: bool,
}

fn instance_rng(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

fn run_random(rng: &mut ChaCha8Rng) -> (Result<RandomResult, FrechetError>, String, RunStats) {
    let inst = random_instance(rng, &InstanceConfig::medium());
    let graph_text = write_graph(&inst.graph);
    let o = ExactOracle::new(&inst.graph);
    let (p, q) = (&inst.p, &inst.q);
    let mut stats = RunStats::default();
    let result = (|| {
        let strong = exact_strong_detailed(&o, p, q, false)?;
        let weak = exact_weak(&o, p, q)?;
        let rho = strong.value;
        let kv = decide_kappa(&o, p, q, rho, Scalar::from_integer(1))?;
        let params = EpsParams::new(Scalar::from_integer(1), Scalar::new(1, 4), Scalar::new(1, 4))?;
        let vd = inst.graph.voronoi(p.vertices())?;
        let ev = decide_eps(&o, &vd, p, q, rho, &params, Mode::Strong)?;
        let (n, m) = (p.len(), q.len());
        let kappa_budget = 3 * (n + m) as u64 + 1;
        let h = window_half_width(params.kappa, params.beta)?;
        let eps_grid_budget = m * (2 * h + 1);
        let eps_grid_size = ev.stats.grid_size.unwrap_or(0);
        let checks_ok = strong.cell_evaluations == (n * m) as u64
            && weak <= strong.value
            && kv.consistent_with(strong.value)
            && ev.consistent_with(strong.value)
            && kv.stats.oracle_queries <= kappa_budget
            && eps_grid_size <= eps_grid_budget;
        stats.oracle_queries = kv.stats.oracle_queries;
        stats.iterations = kv.stats.iterations;
        Ok(RandomResult {
            n,
            m,
            vertices: inst.graph.vertex_count(),
            exact_strong: strong.value,
            exact_weak: weak,
            cell_evaluations: strong.cell_evaluations,
            kappa_verdict: kv.verdict,
            kappa_queries: kv.stats.oracle_queries,
            kappa_budget,
            eps_verdict: ev.verdict,
            eps_grid_size,
            eps_grid_budget,
            eps_compressed_len: ev.stats.compressed_len.unwrap_or(0),
            checks_ok,
        })
    })();
    stats.dijkstra_runs = o.stats().dijkstra_runs;
    (result, graph_text, stats)
}

fn run_ovh(rng: &mut ChaCha8Rng, suite: Suite) -> (Result<OvhResult, FrechetError>, String, RunStats) {
    let d = rng.gen_range(2..=4);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Vec<bool>> {
        let size = rng.gen_range(1..=4);
        (0..size).map(|_| (0..d).map(|_| rng.gen_bool(0.5)).collect()).collect()
    };
    let a = draw(rng);
    let b = draw(rng);
    let vs = OvVectors::new(a, b).expect("non-empty sets of equal dimension");
    let inst = match suite {
        Suite::OvhWalks => gen_walks_instance(&vs),
        _ => gen_paths_instance(&vs),
    };
    let graph_text = write_graph(&inst.graph);
    let o = ExactOracle::new(&inst.graph);
    let result = exact_strong_detailed(&o, &inst.p, &inst.q, false).map(|r| {
        let predicted = inst.predicts_orthogonal(r.value);
        OvhResult {
            dimension: d,
            size_a: vs.a.len(),
            size_b: vs.b.len(),
            exact_strong: r.value,
            threshold: inst.threshold,
            ground_truth_orthogonal: inst.ground_truth_orthogonal,
            predicted_orthogonal: predicted,
            checks_ok: predicted == inst.ground_truth_orthogonal,
        }
    });
    let s = o.stats();
    let stats = RunStats {
        oracle_queries: s.queries,
        dijkstra_runs: s.dijkstra_runs,
        iterations: result.as_ref().map_or(0, |_| (inst.p.len() * inst.q.len()) as u64),
        wall_time_ms: 0,
    };
    (result, graph_text, stats)
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Random => "random",
        Suite::OvhPaths => "ovh-paths",
        Suite::OvhWalks => "ovh-walks",
    }
}

fn finish<T: Serialize>(
    command: String,
    outcome: (Result<T, FrechetError>, String, RunStats),
    start: Instant,
) -> RunReport {
    let (result, graph_text, mut stats) = outcome;
    stats.wall_time_ms = start.elapsed().as_millis() as u64;
    let inputs = BTreeMap::from([("graph".to_string(), sha256_hex(graph_text.as_bytes()))]);
    match result {
        Ok(r) => RunReport::new(command, inputs, r, stats),
        Err(e) => RunReport::new(command, inputs, serde_json::json!({ "error": e.to_string() }), stats),
    }
}

fn slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn run(suite: Suite, seed: u64, count: usize) -> BenchOutput {
    let name = suite_name(suite);
    let reports: Vec<RunReport> = (0..count)
        .into_par_iter()
        .map(|k| {
            let start = Instant::now();
            let mut rng = instance_rng(seed, k);
            let command = format!("bench --suite {name} --seed {seed} #{k}");
            match suite {
                Suite::Random => finish(command, run_random(&mut rng), start),
                Suite::OvhPaths | Suite::OvhWalks => finish(command, run_ovh(&mut rng, suite), start),
            }
        })
        .collect();

    let mut summary = Summary {
        suite: name.into(),
        seed,
        count,
        ..Summary::default()
    };
    let mut points = Vec::new();
    let mut max_ratio: Option<f64> = None;
    for r in &reports {
        if r.result.get("error").is_some() {
            summary.errors += 1;
            continue;
        }
        if r.result["checks_ok"] != serde_json::Value::Bool(true) {
            summary.failed_checks += 1;
        }
        if suite == Suite::Random {
            let size = (r.result["n"].as_u64().unwrap_or(0) + r.result["m"].as_u64().unwrap_or(0)) as f64;
            let queries = r.result["kappa_queries"].as_f64().unwrap_or(0.0);
            let budget = r.result["kappa_budget"].as_f64().unwrap_or(1.0);
            points.push((size, queries));
            max_ratio = Some(max_ratio.unwrap_or(0.0).max(queries / budget));
        }
    }
    if suite == Suite::Random {
        summary.query_slope = slope(&points);
        summary.max_query_ratio = max_ratio;
    }
    BenchOutput { reports, summary }
}
