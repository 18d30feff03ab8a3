//! Subcommand implementations. Each returns a [`RunReport`].

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use graph_frechet::eps::{approx_value_eps_with, decide_eps, EpsParams};
use graph_frechet::exact::{exact_strong_detailed, exact_weak_detailed, Mode};
use graph_frechet::graph::verify_kappa_straight;
use graph_frechet::io::{parse_graph, parse_walk, write_dot, write_graph, write_walk};
use graph_frechet::kappa::{approx_value_kappa, decide_kappa};
use graph_frechet::oracle::validate_stretch;
use graph_frechet::ovh::{gen_paths_instance, gen_walks_instance, OvVectors, Variant};
use graph_frechet::weight::parse_scalar;
use graph_frechet::{
    ApproxInterval, DistanceOracle, ExactOracle, Graph, LandmarkOracle, Scalar, VerdictAtRho, Walk, Weight,
};
use serde::Serialize;

use crate::error::CliError;
use crate::report::{sha256_hex, RunReport, RunStats};
use crate::{ModeArg, OracleSpec, SharedArgs, VariantArg};

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strong => Mode::Strong,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Strong => "strong",
        Mode::Weak => "weak",
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Parsed inputs plus their digests.
struct Inputs {
    graph: Graph,
    p: Option<Walk>,
    q: Option<Walk>,
    digests: BTreeMap<String, String>,
}

impl Inputs {
    fn p(&self) -> Result<&Walk, CliError> {
        self.p.as_ref().ok_or_else(|| CliError::Usage("--walk-p is required".into()))
    }

    fn q(&self) -> Result<&Walk, CliError> {
        self.q.as_ref().ok_or_else(|| CliError::Usage("--walk-q is required".into()))
    }
}

fn load(shared: &SharedArgs) -> Result<Inputs, CliError> {
    let path = shared
        .graph
        .as_deref()
        .ok_or_else(|| CliError::Usage("--graph is required".into()))?;
    let text = read(path)?;
    let graph = parse_graph(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })?;
    let mut digests = BTreeMap::from([("graph".to_string(), sha256_hex(text.as_bytes()))]);
    let mut walk = |role: &str, path: Option<&Path>| -> Result<Option<Walk>, CliError> {
        let Some(path) = path else { return Ok(None) };
        let text = read(path)?;
        digests.insert(role.into(), sha256_hex(text.as_bytes()));
        parse_walk(&graph, &text)
            .map(Some)
            .map_err(|source| CliError::Parse {
                path: path.to_owned(),
                source,
            })
    };
    let p = walk("walk_p", shared.walk_p.as_deref())?;
    let q = walk("walk_q", shared.walk_q.as_deref())?;
    Ok(Inputs { graph, p, q, digests })
}

fn oracle<'g>(shared: &SharedArgs, graph: &'g Graph) -> Result<Box<dyn DistanceOracle + 'g>, CliError> {
    Ok(match shared.oracle {
        OracleSpec::Exact => Box::new(ExactOracle::new(graph)),
        OracleSpec::Landmark(k) => Box::new(LandmarkOracle::new(graph, k, shared.oracle_seed)?),
    })
}

fn scalar(s: &str) -> Result<Scalar, CliError> {
    Ok(parse_scalar(s)?)
}

fn weight(s: &str) -> Result<Weight, CliError> {
    Ok(s.parse()?)
}

fn stats(o: &dyn DistanceOracle, iterations: u64, start: Instant) -> RunStats {
    let s = o.stats();
    RunStats {
        oracle_queries: s.queries,
        dijkstra_runs: s.dijkstra_runs,
        iterations,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

fn echo(name: &str, shared: &SharedArgs) -> String {
    let oracle = match shared.oracle {
        OracleSpec::Exact => "exact".to_string(),
        OracleSpec::Landmark(k) => format!("landmark:{k}"),
    };
    format!("{name} --oracle {oracle} --oracle-seed {}", shared.oracle_seed)
}

fn ensure_straight(inputs: &Inputs, kappa: Scalar, trust: bool) -> Result<(), CliError> {
    if !trust && !verify_kappa_straight(&inputs.graph, inputs.p()?, kappa)? {
        return Err(CliError::NotStraight { kappa: kappa.to_string() });
    }
    Ok(())
}

pub fn exact(shared: &SharedArgs, mode: ModeArg, witness: bool) -> Result<RunReport, CliError> {
    let inputs = load(shared)?;
    let (p, q) = (inputs.p()?, inputs.q()?);
    let start = Instant::now();
    let o = oracle(shared, &inputs.graph)?;
    let result = match Mode::from(mode) {
        Mode::Strong => exact_strong_detailed(&*o, p, q, witness)?,
        Mode::Weak => exact_weak_detailed(&*o, p, q, witness)?,
    };
    let st = stats(&*o, result.cell_evaluations, start);
    let command = format!("{} --mode {}", echo("exact", shared), mode_name(result.mode));
    Ok(RunReport::new(command, inputs.digests, result, st))
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
enum Outcome {
    Verdict(VerdictAtRho),
    Interval(ApproxInterval),
}

impl Outcome {
    fn iterations(&self) -> u64 {
        match self {
            Outcome::Verdict(v) => v.stats.iterations,
            Outcome::Interval(iv) => iv.probes.iter().map(|p| p.stats.iterations).sum(),
        }
    }
}

pub fn kappa(
    shared: &SharedArgs,
    kappa: &str,
    rho: Option<&str>,
    eta: &str,
    trust_straight: bool,
) -> Result<RunReport, CliError> {
    let inputs = load(shared)?;
    let (p, q) = (inputs.p()?, inputs.q()?);
    let kappa = scalar(kappa)?;
    ensure_straight(&inputs, kappa, trust_straight)?;
    let start = Instant::now();
    let o = oracle(shared, &inputs.graph)?;
    let outcome = match rho {
        Some(r) => Outcome::Verdict(decide_kappa(&*o, p, q, weight(r)?, kappa)?),
        None => Outcome::Interval(approx_value_kappa(&*o, p, q, kappa, scalar(eta)?)?),
    };
    let st = stats(&*o, outcome.iterations(), start);
    let command = match rho {
        Some(r) => format!("{} --kappa {kappa} --rho {r}", echo("kappa", shared)),
        None => format!("{} --kappa {kappa} --value --eta {eta}", echo("kappa", shared)),
    };
    Ok(RunReport::new(command, inputs.digests, outcome, st))
}

pub struct EpsOptions {
    pub mode: ModeArg,
    pub epsilon: String,
    pub rho: Option<String>,
    pub alpha_beta: Option<(String, String)>,
    pub kappa: String,
    pub eta: String,
    pub trust_straight: bool,
}

#[derive(Serialize)]
struct EpsResult {
    mode: Mode,
    #[serde(serialize_with = "as_f64")]
    alpha: Scalar,
    #[serde(serialize_with = "as_f64")]
    beta: Scalar,
    #[serde(flatten)]
    outcome: Outcome,
}

fn as_f64<S: serde::Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(*x.numer() as f64 / *x.denom() as f64)
}

pub fn eps(shared: &SharedArgs, opts: &EpsOptions) -> Result<RunReport, CliError> {
    let inputs = load(shared)?;
    let (p, q) = (inputs.p()?, inputs.q()?);
    let kappa = scalar(&opts.kappa)?;
    let params = match &opts.alpha_beta {
        Some((a, b)) => EpsParams::new(kappa, scalar(a)?, scalar(b)?)?,
        None => EpsParams::from_epsilon(kappa, scalar(&opts.epsilon)?)?,
    };
    ensure_straight(&inputs, kappa, opts.trust_straight)?;
    let mode = Mode::from(opts.mode);
    let start = Instant::now();
    let o: Box<dyn DistanceOracle> = match shared.oracle {
        OracleSpec::Exact => Box::new(ExactOracle::new(&inputs.graph)),
        OracleSpec::Landmark(k) => {
            let lm = LandmarkOracle::new(&inputs.graph, k, shared.oracle_seed)?;
            let pairs: Vec<_> = p
                .vertices()
                .iter()
                .flat_map(|&a| q.vertices().iter().map(move |&b| (a, b)))
                .collect();
            let allowed = params.near_factor();
            let violations = validate_stretch(&lm, &inputs.graph, allowed, &pairs)?;
            if !violations.is_empty() {
                return Err(CliError::StretchValidation {
                    allowed: allowed.to_string(),
                    violations: violations.len(),
                    pairs: pairs.len(),
                });
            }
            Box::new(lm.with_declared_stretch(allowed))
        }
    };
    let outcome = match &opts.rho {
        Some(r) => {
            let vd = inputs.graph.voronoi(p.vertices())?;
            Outcome::Verdict(decide_eps(&*o, &vd, p, q, weight(r)?, &params, mode)?)
        }
        None => Outcome::Interval(approx_value_eps_with(&*o, p, q, &params, mode, scalar(&opts.eta)?)?),
    };
    let st = stats(&*o, outcome.iterations(), start);
    let mut command = format!(
        "{} --mode {} --kappa {kappa} --alpha {} --beta {}",
        echo("eps", shared),
        mode_name(mode),
        params.alpha,
        params.beta
    );
    match &opts.rho {
        Some(r) => command.push_str(&format!(" --rho {r}")),
        None => command.push_str(&format!(" --eta {}", opts.eta)),
    }
    let result = EpsResult {
        mode,
        alpha: params.alpha,
        beta: params.beta,
        outcome,
    };
    Ok(RunReport::new(command, inputs.digests, result, st))
}

pub fn voronoi(shared: &SharedArgs, sites: &[usize]) -> Result<RunReport, CliError> {
    let inputs = load(shared)?;
    let sites: Vec<usize> = if sites.is_empty() {
        inputs
            .p
            .as_ref()
            .ok_or_else(|| CliError::Usage("pass --sites or --walk-p".into()))?
            .vertices()
            .to_vec()
    } else {
        sites.to_vec()
    };
    let start = Instant::now();
    let vd = inputs.graph.voronoi(&sites)?;
    let st = RunStats {
        dijkstra_runs: 1,
        wall_time_ms: start.elapsed().as_millis() as u64,
        ..RunStats::default()
    };
    Ok(RunReport::new("voronoi", inputs.digests, vd, st))
}

pub fn verify_straight(shared: &SharedArgs, kappa: &str) -> Result<RunReport, CliError> {
    let inputs = load(shared)?;
    let kappa = scalar(kappa)?;
    let p = inputs.p()?;
    let start = Instant::now();
    let straight = verify_kappa_straight(&inputs.graph, p, kappa)?;
    let st = RunStats {
        dijkstra_runs: p.len() as u64,
        wall_time_ms: start.elapsed().as_millis() as u64,
        ..RunStats::default()
    };
    let result = serde_json::json!({ "straight": straight, "kappa": kappa.to_string() });
    Ok(RunReport::new(format!("verify-straight --kappa {kappa}"), inputs.digests, result, st))
}

#[derive(Serialize)]
struct GenOvhResult {
    variant: Variant,
    threshold: Weight,
    ground_truth_orthogonal: bool,
    vertices: usize,
    edges: usize,
    p_len: usize,
    q_len: usize,
    files: Vec<String>,
}

pub fn gen_ovh(variant: VariantArg, vectors: &Path, out: &Path, emit_dot: bool) -> Result<RunReport, CliError> {
    let text = read(vectors)?;
    let vs = OvVectors::parse(&text).map_err(|source| CliError::Vectors {
        path: vectors.to_owned(),
        source,
    })?;
    let start = Instant::now();
    let inst = match variant {
        VariantArg::Paths => gen_paths_instance(&vs),
        VariantArg::Walks => gen_walks_instance(&vs),
    };
    fs::create_dir_all(out).map_err(|source| CliError::Io {
        path: out.to_owned(),
        source,
    })?;
    let result = GenOvhResult {
        variant: inst.variant,
        threshold: inst.threshold,
        ground_truth_orthogonal: inst.ground_truth_orthogonal,
        vertices: inst.graph.vertex_count(),
        edges: inst.graph.edge_count(),
        p_len: inst.p.len(),
        q_len: inst.q.len(),
        files: Vec::new(),
    };
    let sidecar = serde_json::json!({
        "variant": result.variant,
        "threshold": result.threshold,
        "ground_truth_orthogonal": result.ground_truth_orthogonal,
    });
    let mut outputs = vec![
        ("graph.txt", write_graph(&inst.graph)),
        ("p.txt", write_walk(&inst.p)),
        ("q.txt", write_walk(&inst.q)),
        ("instance.json", format!("{sidecar:#}\n")),
    ];
    if emit_dot {
        outputs.push(("graph.dot", write_dot(&inst.graph)));
    }
    let mut files = Vec::new();
    for (name, contents) in &outputs {
        let path = out.join(name);
        write(&path, contents)?;
        files.push(path.display().to_string());
    }
    let digests = BTreeMap::from([("vectors".to_string(), sha256_hex(text.as_bytes()))]);
    let st = RunStats {
        wall_time_ms: start.elapsed().as_millis() as u64,
        ..RunStats::default()
    };
    let variant_name = match variant {
        VariantArg::Paths => "paths",
        VariantArg::Walks => "walks",
    };
    Ok(RunReport::new(
        format!("gen-ovh --variant {variant_name}"),
        digests,
        GenOvhResult { files, ..result },
        st,
    ))
}
