//! The eleven acceptance criteria, shared by `paley verify-all` and the
//! `acceptance` test target. Tolerances are fixed here.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use paley_core::census::{
    census_exhaustive, census_sampled, even_count_in_range, giant_lower_bound, reconstruct_nr, theta_set, weil_trials,
    DEFAULT_EXHAUSTIVE_BUDGET, DEFAULT_RECONSTRUCT_BUDGET,
};
use paley_core::mds::{
    coeven_pair_census, construct_self_dual, enumerate_omega, minimum_distance, omega_count_from_census, rank_fq,
    verify_self_dual, DEFAULT_OMEGA_BUDGET,
};
use paley_core::parity_core::{brute_force_coeven, count_coeven};
use paley_core::randmodel::{
    expected_digraph, expected_graph, monte_carlo, parity_sum, ModelKind, Probability, DEFAULT_MC_BUDGET,
};
use paley_core::subsets::draw_rng;
use paley_core::{FiniteField, PaleyStructure, SimpleGraph};

/// Relative tolerance on the sampled even fraction at `q = 10009, r = 5`.
pub const SAMPLED_RELATIVE_TOLERANCE: f64 = 0.10;
/// Standard errors allowed for the sampled even fraction.
pub const SAMPLED_STDERR_TOLERANCE: f64 = 4.0;
/// Standard errors allowed for Monte Carlo means against exact expectations.
pub const MC_STDERR_TOLERANCE: f64 = 3.0;
/// Interval required of `Σ_k C(r, k) (1 − 2p)^{k(r−k)}` at `p = 3/10`, `30 ≤ r ≤ 200`.
pub const PARITY_SUM_RANGE: ((i64, i64), (i64, i64)) = ((19, 10), (21, 10));

pub const SAMPLED_Q: u64 = 10009;
pub const SAMPLED_R: usize = 5;
pub const SAMPLED_DRAWS: u64 = 1_000_000;
pub const SAMPLED_SEED: u64 = 20240601;
pub const MC_TRIALS: u64 = 200_000;
pub const MC_SEED: u64 = 7;

/// Runs a command line (without the program name), returning exit code and stdout.
pub type Runner = dyn Fn(&[String]) -> (i32, Vec<u8>) + Sync;

pub fn in_process_runner(args: &[String]) -> (i32, Vec<u8>) {
    crate::run_captured(args.iter().cloned())
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type Check = fn(&Runner) -> Result<String, String>;

pub const CRITERIA: [(u32, &str, Check); 11] = [
    (1, "co-even counts of P_q by rank and by brute force", coeven_counts),
    (2, "2-rank of the Paley graph adjacency", two_rank),
    (3, "N_r from character sums equals the exhaustive even census", reconstruction),
    (4, "sampled even fraction at q = 10009, r = 5 near 2^(1-r)", sampled_fraction),
    (5, "Paley tournament parity exclusions", tournament_exclusions),
    (6, "self-dual MDS codes from every feasible evaluation set", self_dual_codes),
    (7, "complementary co-even pair family sizes", pair_family),
    (8, "random (di)graph expectations, Monte Carlo and the limiting sum", random_model),
    (9, "giant even subgraph lower bound on random graphs", giant_bound),
    (10, "Weil bound on random character sums", weil_bound),
    (11, "byte-identical output across reruns and worker counts", determinism),
];

pub fn run_one(id: u32, runner: &Runner) -> Outcome {
    let (id, title, check) = CRITERIA.iter().copied().find(|c| c.0 == id).expect("criterion id in 1..=11");
    let start = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| check(runner)))
        .unwrap_or_else(|_| Err("check panicked".to_string()));
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(detail) => Outcome { id, title, passed: true, detail, seconds },
        Err(detail) => Outcome { id, title, passed: false, detail, seconds },
    }
}

pub fn run_all(runner: &Runner) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run_one(c.0, runner)).collect()
}

fn field(q: u64) -> Result<Arc<FiniteField>, String> {
    FiniteField::with_order(q).map(Arc::new).map_err(|e| e.to_string())
}

fn paley(q: u64) -> Result<PaleyStructure, String> {
    Ok(PaleyStructure::new(field(q)?))
}

fn paley_graph(q: u64) -> Result<SimpleGraph, String> {
    SimpleGraph::from_paley(&paley(q)?).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coeven_counts(_: &Runner) -> Result<String, String> {
    for q in [5u64, 13, 29, 37, 9, 17, 25, 41] {
        let expected = if q % 8 == 5 { BigUint::from(2u32) } else { BigUint::one() << q.div_ceil(2) };
        let start = Instant::now();
        let got = count_coeven(&paley_graph(q)?).count;
        let secs = start.elapsed().as_secs_f64();
        ensure(got == expected, || format!("q = {q}: rank method gave {got}, want {expected}"))?;
        ensure(secs < 1.0, || format!("q = {q}: rank method took {secs:.3}s"))?;
    }
    for q in [5u64, 9, 13, 17] {
        let g = paley_graph(q)?;
        let brute = brute_force_coeven(&g).map_err(|e| e.to_string())?;
        let rank = count_coeven(&g).count;
        ensure(BigUint::from(brute) == rank, || format!("q = {q}: brute force {brute} vs rank {rank}"))?;
    }
    Ok("8 orders by rank, 4 cross-checked by brute force".into())
}

fn two_rank(_: &Runner) -> Result<String, String> {
    for q in [9u64, 17, 25, 41, 5, 13, 29, 37] {
        let rank = paley(q)?.adjacency().rank() as u64;
        let want = if q % 8 == 1 { (q - 1) / 2 } else { q - 1 };
        ensure(rank == want, || format!("q = {q}: rank {rank}, want {want}"))?;
    }
    Ok("8 orders".into())
}

fn reconstruction(_: &Runner) -> Result<String, String> {
    let mut checked = Vec::new();
    for q in [13u64, 17] {
        let f = field(q)?;
        let p = PaleyStructure::new(f.clone());
        for r in 1..=4 {
            let nr = reconstruct_nr(&f, r, DEFAULT_RECONSTRUCT_BUDGET).map_err(|e| e.to_string())?;
            let even = census_exhaustive(&p, r, DEFAULT_EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())?.counts.even;
            ensure(nr == BigUint::from(even), || format!("q = {q}, r = {r}: {nr} vs {even}"))?;
            checked.push(format!("N_{r}(P_{q})={even}"));
        }
    }
    Ok(checked.join(" "))
}

fn sampled_fraction(_: &Runner) -> Result<String, String> {
    let p = paley(SAMPLED_Q)?;
    let rep = census_sampled(&p, SAMPLED_R, SAMPLED_DRAWS, SAMPLED_SEED).map_err(|e| e.to_string())?;
    let est = rep.estimate.expect("sampled report has an estimate");
    let target = 2f64.powi(1 - SAMPLED_R as i32);
    let diff = (est.even_fraction - target).abs();
    let z = diff / est.even_stderr;
    let detail = format!(
        "fraction {:.6} target {target} rel.err {:.4} z {:.2} (stderr {:.2e})",
        est.even_fraction,
        diff / target,
        z,
        est.even_stderr
    );
    ensure(diff / target <= SAMPLED_RELATIVE_TOLERANCE && z <= SAMPLED_STDERR_TOLERANCE, || detail.clone())?;
    Ok(detail)
}

fn tournament_exclusions(_: &Runner) -> Result<String, String> {
    for q in [7u64, 11] {
        let p = paley(q)?;
        for r in 1..=7 {
            let c = census_exhaustive(&p, r, DEFAULT_EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())?.counts;
            if matches!(r % 4, 2 | 3) {
                ensure(c.even == 0, || format!("PT_{q}, r = {r}: {} even", c.even))?;
            }
            if matches!(r % 4, 1 | 2) {
                ensure(c.odd == 0, || format!("PT_{q}, r = {r}: {} odd", c.odd))?;
            }
        }
    }
    Ok("PT_7 and PT_11, r = 1..7".into())
}

fn self_dual_codes(_: &Runner) -> Result<String, String> {
    let mut summary = Vec::new();
    for (q, n) in [(13u64, 3usize), (13, 4), (13, 6), (17, 4)] {
        let f = field(q)?;
        let sets = enumerate_omega(&f, n, DEFAULT_OMEGA_BUDGET).map_err(|e| e.to_string())?;
        let predicted = omega_count_from_census(&PaleyStructure::new(f.clone()), n, DEFAULT_EXHAUSTIVE_BUDGET)
            .map_err(|e| e.to_string())?;
        ensure(sets.len() as u64 == predicted, || {
            format!("q = {q}, n = {n}: {} sets, census predicts {predicted}", sets.len())
        })?;
        ensure(!sets.is_empty(), || format!("q = {q}, n = {n}: no feasible sets"))?;
        for s in &sets {
            let code = construct_self_dual(s).map_err(|e| format!("q = {q}, set {:?}: {e}", s.indices()))?;
            ensure(verify_self_dual(&code), || format!("q = {q}, set {:?}: G G^T != 0", s.indices()))?;
            let dim = rank_fq(code.field(), code.generator());
            ensure(dim == code.length() / 2, || format!("q = {q}, set {:?}: dimension {dim}", s.indices()))?;
            let d = minimum_distance(&code).map_err(|e| e.to_string())?;
            ensure(d == code.length() / 2 + 1, || format!("q = {q}, set {:?}: distance {d}", s.indices()))?;
        }
        summary.push(format!("({q},{n}):{}", sets.len()));
    }
    Ok(format!("codes verified {}", summary.join(" ")))
}

fn pair_family(_: &Runner) -> Result<String, String> {
    let mut parts = Vec::new();
    for (q, want, scanned) in [(17u64, 255u64, true), (9, 15, true), (13, 0, false), (29, 0, false)] {
        let rep = coeven_pair_census(&field(q)?, 0).map_err(|e| e.to_string())?;
        ensure(rep.count == BigUint::from(want), || format!("q = {q}: {} want {want}", rep.count))?;
        if scanned {
            ensure(rep.scan_count == Some(want), || format!("q = {q}: scan gave {:?}", rep.scan_count))?;
        }
        parts.push(format!("q={q}:{}", rep.count));
    }
    Ok(parts.join(" "))
}

fn random_model(_: &Runner) -> Result<String, String> {
    let rat = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let half = Probability::new(1, 2).map_err(|e| e.to_string())?;
    let g = expected_graph(12, half, 4).map_err(|e| e.to_string())?;
    let d = expected_digraph(12, half, 4).map_err(|e| e.to_string())?;
    ensure(g == rat(495, 8), || format!("E X_4 = {g}"))?;
    ensure(d == rat(495, 16), || format!("E X~_4 = {d}"))?;
    let mut zs = Vec::new();
    for p in [half, Probability::new(3, 10).map_err(|e| e.to_string())?] {
        for kind in [ModelKind::Graph, ModelKind::Digraph] {
            let rep = monte_carlo(kind, 12, p, 4, MC_TRIALS, MC_SEED, DEFAULT_MC_BUDGET).map_err(|e| e.to_string())?;
            let z = rep.z_score();
            ensure(z <= MC_STDERR_TOLERANCE, || {
                format!("{kind:?} p = {p}: mean {} vs {} (z = {z:.2})", rep.mc_mean, rep.closed_form)
            })?;
            zs.push(format!("{z:.2}"));
        }
    }
    let point = Probability::new(3, 10).map_err(|e| e.to_string())?;
    let ((a, b), (c, d)) = PARITY_SUM_RANGE;
    let (lo, hi) = (rat(a, b), rat(c, d));
    for r in 30..=200 {
        let s = parity_sum(point, r);
        ensure(s >= lo && s <= hi, || format!("r = {r}: sum outside [1.9, 2.1]"))?;
    }
    Ok(format!("exact 495/8 and 495/16; Monte Carlo z = [{}]; sum in range for r = 30..200", zs.join(", ")))
}

fn giant_bound(_: &Runner) -> Result<String, String> {
    let bound = giant_lower_bound(12, 6).map_err(|e| e.to_string())?;
    ensure(bound.bound_value == BigRational::from_integer(BigInt::from(11)), || {
        format!("bound = {}", bound.bound_value)
    })?;
    let need = bound.ceil();
    let (mut min_even, mut min_theta) = (usize::MAX, usize::MAX);
    for i in 0..20 {
        let mut rng = draw_rng(9, i);
        let g = SimpleGraph::random(&mut rng, 12, 1, 2);
        let evens = even_count_in_range(&g, 3, 6, DEFAULT_EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())? as usize;
        let theta = theta_set(&g, 6, DEFAULT_EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())?.len();
        ensure(BigInt::from(evens) >= need && BigInt::from(theta) >= need, || {
            format!("graph {i}: {evens} even subgraphs, |Theta| = {theta}, bound {need}")
        })?;
        min_even = min_even.min(evens);
        min_theta = min_theta.min(theta);
    }
    Ok(format!("bound 11; min even count {min_even}, min |Theta| {min_theta} over 20 graphs"))
}

fn weil_bound(_: &Runner) -> Result<String, String> {
    let reports = weil_trials(None, None, 1000, 17).map_err(|e| e.to_string())?;
    ensure(reports.len() == 1000, || "wrong number of trials".into())?;
    for r in &reports {
        ensure(r.q <= 101 && (2..=6).contains(&r.w.len()) && r.n % 2 == 1 && r.n <= 5, || format!("bad case {r:?}"))?;
        ensure(r.ok, || format!("violated: {r:?}"))?;
    }
    let worst = reports.iter().map(|r| r.lhs as f64 / r.bound).fold(0.0, f64::max);
    Ok(format!("1000 cases, largest lhs/bound {worst:.3}"))
}

/// Command lines rerun for the determinism criterion.
pub fn determinism_commands(verify_file: &str) -> Vec<Vec<String>> {
    let lines: [&str; 14] = [
        "field-info --q 25 --element 7",
        "paley --q 13",
        "coeven --q 17",
        "coeven --q 13 --method brute",
        "census --q 13 --r-min 1 --r-max 4",
        "census --q 101 --r-min 4 --r-max 5 --mode sample --samples 20000 --seed 3",
        "bound --n 12 --theta 6",
        "weil --trials 200 --seed 4",
        "mds search --q 13 --n 4 --limit 25",
        "mds search --q 13 --n 3",
        "coeven-pairs --q 17",
        "random-expect --kind graph --n 12 --p 1/2 --r 4 --trials 20000 --seed 5",
        "random-expect --kind digraph --n 30 --p 3/10 --r 5 --trials 300 --seed 6",
        "mds verify --file",
    ];
    lines
        .iter()
        .map(|l| {
            let mut v: Vec<String> = l.split_whitespace().map(String::from).collect();
            if v[0] == "mds" && v[1] == "verify" {
                v.push(verify_file.to_string());
            }
            v
        })
        .collect()
}

fn determinism(runner: &Runner) -> Result<String, String> {
    let path = std::env::temp_dir().join(format!("paley-determinism-{}.jsonl", std::process::id()));
    let path_str = path.to_string_lossy().to_string();
    let commands = determinism_commands(&path_str);
    let mut total_bytes = 0;
    let result = (|| {
        for cmd in &commands {
            if cmd[0] == "mds" && cmd[1] == "verify" {
                let (code, bytes) = runner(&strings(&["mds", "search", "--q", "13", "--n", "6", "--limit", "30"]));
                ensure(code == 0, || "mds search for the verify input failed".into())?;
                std::fs::write(&path, bytes).map_err(|e| e.to_string())?;
            }
            let mut outputs = Vec::new();
            for workers in ["1", "8", "8", "1"] {
                let mut args = cmd.clone();
                args.extend(["--workers".to_string(), workers.to_string()]);
                outputs.push(runner(&args));
            }
            let (code, first) = &outputs[0];
            ensure(*code == 0, || format!("`{}` exited with {code}", cmd.join(" ")))?;
            ensure(!first.is_empty(), || format!("`{}` printed nothing", cmd.join(" ")))?;
            ensure(outputs.iter().all(|o| o == &outputs[0]), || {
                format!("`{}` output differs between runs", cmd.join(" "))
            })?;
            total_bytes += first.len();
        }
        Ok(())
    })();
    let _ = std::fs::remove_file(&path);
    result.map(|()| {
        format!("{} command lines x 4 runs (workers 1, 8, 8, 1), {total_bytes} bytes each set", commands.len())
    })
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}
