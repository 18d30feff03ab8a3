//! End-to-end acceptance checks. Runs every criterion, prints one
//! `PASS`/`FAIL` line each, and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use graph_frechet::eps::{
    approx_value_eps, build_windows, compress_path, decide_eps, materialize_beta, window_half_width, EpsParams,
};
use graph_frechet::exact::{brute_force, exact_strong, exact_weak, Mode};
use graph_frechet::fsm::FreeSpaceValue::{Far, Near};
use graph_frechet::instances::{random_connected_graph, random_instance, rho_sweep, InstanceConfig};
use graph_frechet::kappa::{approx_value_kappa, decide_kappa, materialize_kappa};
use graph_frechet::ovh::{
    all_vector_sets, gen_paths_instance, gen_walks_instance, label_distance_table, OvInstance,
    OvVectors, TABLE1, TABLE2,
};
use graph_frechet::{ExactOracle, Scalar, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn quarter() -> EpsParams {
    EpsParams::new(Scalar::from_integer(1), Scalar::new(1, 4), Scalar::new(1, 4)).unwrap()
}

fn ac01_exact_vs_brute_force() -> Outcome {
    let mut rng = rng(1);
    for k in 0..500 {
        let inst = random_instance(&mut rng, &InstanceConfig::small());
        let o = ExactOracle::new(&inst.graph);
        let (p, q) = (&inst.p, &inst.q);
        let strong = exact_strong(&o, p, q).map_err(|e| e.to_string())?;
        let weak = exact_weak(&o, p, q).map_err(|e| e.to_string())?;
        let bs = brute_force(&o, p, q, true).map_err(|e| e.to_string())?;
        let bw = brute_force(&o, p, q, false).map_err(|e| e.to_string())?;
        if strong != bs || weak != bw {
            return Err(format!("instance {k}: strong {strong} vs {bs}, weak {weak} vs {bw}"));
        }
    }
    Ok("500 instances".into())
}

fn ac02_voronoi() -> Outcome {
    let mut rng = rng(2);
    for k in 0..100 {
        let n = rng.gen_range(1..=200);
        let extra = rng.gen_range(0..=n);
        let g = random_connected_graph(&mut rng, n, extra, 1..=10_000);
        let sites: Vec<usize> = (0..rng.gen_range(1..=n.min(12))).map(|_| rng.gen_range(0..n)).collect();
        let vd = g.voronoi(&sites).map_err(|e| e.to_string())?;
        let tables: Vec<Vec<Weight>> = sites.iter().map(|&s| g.dijkstra(s).unwrap()).collect();
        for v in 0..n {
            let best = tables.iter().map(|t| t[v]).min().unwrap();
            let Some((site, dist)) = vd.nearest(v) else {
                return Err(format!("graph {k}: vertex {v} unassigned"));
            };
            let idx = sites.iter().position(|&s| s == site);
            if dist != best || idx.is_none_or(|i| tables[i][v] != best) {
                return Err(format!("graph {k}: vertex {v} got ({site}, {dist}), expected {best}"));
            }
        }
    }
    Ok("100 graphs".into())
}

/// Criteria 3 and 4 share the same runs.
fn ac03_ac04_kappa() -> (Outcome, Outcome) {
    let mut rng = rng(3);
    let kappa = Scalar::from_integer(1);
    let mut contradictions = Vec::new();
    let mut over_budget = Vec::new();
    let mut worst = 0.0f64;
    for k in 0..300 {
        let inst = random_instance(&mut rng, &InstanceConfig::medium());
        let o = ExactOracle::new(&inst.graph);
        let exact = exact_strong(&o, &inst.p, &inst.q).unwrap();
        let budget = 3 * (inst.p.len() + inst.q.len()) as u64 + 1;
        for rho in rho_sweep(exact) {
            let v = decide_kappa(&o, &inst.p, &inst.q, rho, kappa).unwrap();
            if !v.consistent_with(exact) {
                contradictions.push(format!("instance {k} rho {rho}: {:?} vs exact {exact}", v.verdict));
            }
            worst = worst.max(v.stats.oracle_queries as f64 / budget as f64);
            if v.stats.oracle_queries > budget {
                over_budget.push(format!("instance {k}: {} queries > {budget}", v.stats.oracle_queries));
            }
        }
    }
    let sandwich = match contradictions.first() {
        None => Ok("300 instances x 8 rho".into()),
        Some(e) => Err(format!("{} violations, first: {e}", contradictions.len())),
    };
    let budget = match over_budget.first() {
        None => Ok(format!("max queries / budget = {worst:.2}")),
        Some(e) => Err(format!("{} violations, first: {e}", over_budget.len())),
    };
    (sandwich, budget)
}

fn ac05_eps_sandwich() -> Outcome {
    let params = quarter();
    if params.gap_factor() != Scalar::new(15, 8) {
        return Err(format!("gap factor {} != 15/8", params.gap_factor()));
    }
    let h = window_half_width(params.kappa, params.beta).unwrap();
    for (seed, mode) in [(51, Mode::Strong), (52, Mode::Weak)] {
        let mut rng = rng(seed);
        for k in 0..300 {
            let inst = random_instance(&mut rng, &InstanceConfig::medium());
            let o = ExactOracle::new(&inst.graph);
            let exact = match mode {
                Mode::Strong => exact_strong(&o, &inst.p, &inst.q),
                Mode::Weak => exact_weak(&o, &inst.p, &inst.q),
            }
            .unwrap();
            let vd = inst.graph.voronoi(inst.p.vertices()).unwrap();
            for rho in rho_sweep(exact) {
                let v = decide_eps(&o, &vd, &inst.p, &inst.q, rho, &params, mode).unwrap();
                if !v.consistent_with(exact) {
                    return Err(format!("{mode:?} instance {k} rho {rho}: {:?} vs {exact}", v.verdict));
                }
                if v.stats.grid_size.unwrap_or(0) > inst.q.len() * (2 * h + 1) {
                    return Err(format!("{mode:?} instance {k}: grid {:?} too large", v.stats.grid_size));
                }
            }
        }
    }
    Ok("300 strong + 300 weak instances x 8 rho".into())
}

fn ac06_free_space_properties() -> Outcome {
    let mut rng = rng(6);
    let params = quarter();
    let h = window_half_width(params.kappa, params.beta).unwrap();
    let one = Scalar::from_integer(1);
    let mut checked = 0usize;
    let mut empty_with_near = 0usize;
    for k in 0..100 {
        let inst = random_instance(&mut rng, &InstanceConfig::medium());
        let (g, p, q) = (&inst.graph, &inst.p, &inst.q);
        let o = ExactOracle::new(g);
        let vd = g.voronoi(p.vertices()).unwrap();
        let exact = exact_strong(&o, p, q).unwrap();
        let mut rhos = rho_sweep(exact);
        rhos.push(Weight::from_milli(rng.gen_range(1..15_000)));
        for rho in rhos {
            let mk = materialize_kappa(&o, p, q, rho, one).unwrap();
            for j in 0..q.len() {
                let near: Vec<usize> = (0..p.len()).filter(|&i| mk[i][j] == Near).collect();
                if let (Some(&a), Some(&b)) = (near.first(), near.last()) {
                    if (a..=b).any(|i| mk[i][j] == Far) {
                        return Err(format!("instance {k} rho {rho}: Far between Nears in column {j}"));
                    }
                }
            }

            let mat = materialize_beta(&o, p, q, rho, &params).unwrap();
            let cp = compress_path(g, p, params.beta, rho).unwrap();
            let ws = build_windows(g, &vd, &cp, p, q, rho, params.kappa, params.beta).unwrap();
            let np = cp.len();
            for j in 0..q.len() {
                for i in 0..np {
                    let lo = if i == 0 { cp.pi[0] } else { cp.pi[i - 1] + 1 };
                    let hi = if i + 1 == np { cp.pi[i] } else { cp.pi[i + 1] - 1 };
                    if mat[cp.pi[i]][j] == Near && (lo..=hi).any(|x| mat[x][j] == Far) {
                        return Err(format!("instance {k} rho {rho}: projection fails at ({i}, {j})"));
                    }
                    if i + 1 < np
                        && (cp.pi[i] + 1..cp.pi[i + 1]).any(|x| mat[x][j] == Near)
                        && (mat[cp.pi[i]][j] == Far || mat[cp.pi[i + 1]][j] == Far)
                    {
                        return Err(format!("instance {k} rho {rho}: interior Near with Far anchor at ({i}, {j})"));
                    }
                    if (cp.pi[i]..=cp.pi[(i + 1).min(np - 1)]).any(|x| mat[x][j] == Near) {
                        let a = cp.pi[i.saturating_sub(h)];
                        let b = cp.pi[(i + h).min(np - 1)];
                        if (0..p.len()).any(|y| mat[y][j] == Near && !(a <= y && y <= b)) {
                            return Err(format!("instance {k} rho {rho}: Near outside window at ({i}, {j})"));
                        }
                    }
                }
                // An empty window only means every cell of the row exceeds rho.
                let has_near = (0..p.len()).any(|y| mat[y][j] == Near);
                if ws[j].range.is_none() {
                    empty_with_near += has_near as usize;
                    if ws[j].dist <= rho {
                        return Err(format!("instance {k} rho {rho}: window {j} empty at distance {}", ws[j].dist));
                    }
                }
                for y in 0..p.len() {
                    if ws[j].range.is_some() && mat[y][j] == Near && !ws[j].contains(cp.pred_index[y]) {
                        return Err(format!("instance {k} rho {rho}: window {j} misses row {y}"));
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("100 instances, {checked} columns, {empty_with_near} empty windows beside a Near cell"))
}

fn random_vectors(rng: &mut ChaCha8Rng, na: usize, nb: usize, d: usize) -> OvVectors {
    let mut draw = |n: usize| (0..n).map(|_| (0..d).map(|_| rng.gen_bool(0.5)).collect()).collect();
    let a = draw(na);
    let b = draw(nb);
    OvVectors::new(a, b).unwrap()
}

fn check_table(seed: u64, table: &[[u64; 8]; 6], generate: fn(&OvVectors) -> OvInstance) -> Outcome {
    let mut rng = rng(seed);
    let expected = table.map(|row| row.map(Weight::from_milli));
    for na in 1..=4 {
        for nb in 1..=4 {
            let d = rng.gen_range(1..=4);
            let inst = generate(&random_vectors(&mut rng, na, nb, d));
            let t = label_distance_table(&inst).map_err(|e| e.to_string())?;
            if t.min != expected || t.max != expected {
                return Err(format!("|A|={na}, |B|={nb}, d={d}: table mismatch"));
            }
        }
    }
    Ok("48 entries, |A|,|B| in 1..=4".into())
}

fn ac07_table1() -> Outcome {
    check_table(7, &TABLE1, gen_paths_instance)
}

fn ac08_table2() -> Outcome {
    check_table(8, &TABLE2, gen_walks_instance)
}

fn orthogonality_gap(generate: fn(&OvVectors) -> OvInstance, near_max: Weight) -> Outcome {
    let mut count = 0usize;
    let mut worst_near = Weight::ZERO;
    let mut best_far = Weight::INFINITY;
    for d in [2, 3] {
        let sets = all_vector_sets(d, 3);
        for a in &sets {
            for b in &sets {
                let inst = generate(&OvVectors::new(a.clone(), b.clone()).unwrap());
                let o = ExactOracle::new(&inst.graph);
                let value = exact_strong(&o, &inst.p, &inst.q).map_err(|e| e.to_string())?;
                let predicted = inst.predicts_orthogonal(value);
                if predicted != inst.ground_truth_orthogonal || (predicted && value > near_max) {
                    return Err(format!(
                        "d={d} A={a:?} B={b:?}: value {value}, orthogonal {}",
                        inst.ground_truth_orthogonal
                    ));
                }
                if predicted {
                    worst_near = worst_near.max(value);
                } else {
                    best_far = best_far.min(value);
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances, orthogonal max {worst_near}, otherwise min {best_far}"))
}

fn ac09_paths_gap() -> Outcome {
    orthogonality_gap(gen_paths_instance, Weight::from_milli(2960))
}

fn ac10_walks_gap() -> Outcome {
    orthogonality_gap(gen_walks_instance, Weight::from_milli(1900))
}

fn ac11_intervals() -> Outcome {
    let mut rng = rng(11);
    let kappa = Scalar::from_integer(1);
    let eta = Scalar::new(1, 10);
    for k in 0..200 {
        let inst = random_instance(&mut rng, &InstanceConfig::medium());
        let o = ExactOracle::new(&inst.graph);
        let (p, q) = (&inst.p, &inst.q);
        let strong = exact_strong(&o, p, q).unwrap();
        let weak = exact_weak(&o, p, q).unwrap();
        let runs = [
            ("kappa", approx_value_kappa(&o, p, q, kappa, eta), strong),
            ("eps strong", approx_value_eps(&o, p, q, kappa, Scalar::new(7, 8), Mode::Strong, eta), strong),
            ("eps weak", approx_value_eps(&o, p, q, kappa, Scalar::new(7, 8), Mode::Weak, eta), weak),
        ];
        for (name, interval, exact) in runs {
            let iv = interval.map_err(|e| format!("instance {k} {name}: {e}"))?;
            if !iv.contains(exact) || !iv.ratio_ok() {
                return Err(format!("instance {k} {name}: [{}, {}] factor {} vs exact {exact}", iv.lo, iv.hi, iv.factor));
            }
        }
    }
    Ok("200 instances x 3 engines".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let single: [Criterion; 9] = [
        ("ac01 exact engines match brute force", ac01_exact_vs_brute_force),
        ("ac02 voronoi matches per-site dijkstra", ac02_voronoi),
        ("ac05 eps verdict sandwich", ac05_eps_sandwich),
        ("ac06 free-space properties", ac06_free_space_properties),
        ("ac07 paths label distances", ac07_table1),
        ("ac08 walks label distances", ac08_table2),
        ("ac09 paths orthogonality gap", ac09_paths_gap),
        ("ac10 walks orthogonality gap", ac10_walks_gap),
        ("ac11 approximation intervals", ac11_intervals),
    ];
    let start = Instant::now();
    let (kappa, mut results) = std::thread::scope(|s| {
        let kappa = s.spawn(ac03_ac04_kappa);
        let handles: Vec<_> = single
            .iter()
            .map(|&(name, f)| (name, s.spawn(f)))
            .collect();
        let results: Vec<(&str, Outcome)> = handles
            .into_iter()
            .map(|(name, h)| (name, h.join().unwrap_or_else(|_| Err("panicked".into()))))
            .collect();
        (kappa.join(), results)
    });
    let (sandwich, budget) = kappa.unwrap_or_else(|_| (Err("panicked".into()), Err("panicked".into())));
    results.insert(2, ("ac03 kappa verdict sandwich", sandwich));
    results.insert(3, ("ac04 kappa query budget", budget));

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
