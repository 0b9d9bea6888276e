use std::fs;
use std::io::{BufRead, BufReader};
use std::sync::Arc;

use anyhow::Context;
use num_bigint::BigUint;
use num_traits::One;
use paley_core::census::{
    census_exhaustive, census_sampled, giant_lower_bound, weil_trials, CensusReport, DEFAULT_EXHAUSTIVE_BUDGET,
};
use paley_core::mds::{
    coeven_pair_census, construct_self_dual, enumerate_omega, feasibility, mds_strategy, minimum_distance, verify_mds,
    verify_self_dual, CodeRecord, GrsCode, MdsStrategy, DEFAULT_OMEGA_BUDGET,
};
use paley_core::parity_core::{brute_force_coeven, count_coeven};
use paley_core::randmodel::{
    expected_digraph, expected_graph, fraction_string, monte_carlo, to_decimal, ModelKind, Probability,
    DEFAULT_MC_BUDGET,
};
use paley_core::{FiniteField, PaleyKind, PaleyStructure, SimpleGraph};
use serde_json::{json, Value};

use crate::acceptance;
use crate::{budget_or, Cli, CliError, Command, Emitter, MdsCommand};
use crate::{
    BoundArgs, CensusArgs, CensusModeArg, CoevenArgs, CoevenMethod, CoevenPairsArgs, FieldInfoArgs, KindArg,
    MdsSearchArgs, MdsVerifyArgs, PaleyArgs, RandomExpectArgs, WeilArgs,
};

pub(crate) fn dispatch(cli: &Cli, out: &mut Emitter) -> anyhow::Result<()> {
    match &cli.command {
        Command::FieldInfo(a) => field_info(a, out),
        Command::Paley(a) => paley(a, out),
        Command::Coeven(a) => coeven(a, out),
        Command::Census(a) => census(cli, a, out),
        Command::Bound(a) => bound(a, out),
        Command::Weil(a) => weil(a, out),
        Command::Mds(MdsCommand::Search(a)) => mds_search(cli, a, out),
        Command::Mds(MdsCommand::Verify(a)) => mds_verify(a, out),
        Command::CoevenPairs(a) => coeven_pairs(a, out),
        Command::RandomExpect(a) => random_expect(cli, a, out),
        Command::VerifyAll(_) => verify_all(out),
    }
}

fn field(q: u64) -> anyhow::Result<Arc<FiniteField>> {
    Ok(Arc::new(FiniteField::with_order(q)?))
}

fn kind_name(kind: PaleyKind) -> &'static str {
    match kind {
        PaleyKind::Graph => "graph",
        PaleyKind::Tournament => "tournament",
    }
}

fn field_info(a: &FieldInfoArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let f = match &a.modulus {
        Some(m) => {
            let (p, e) = paley_core::ffield::prime_power(a.q).ok_or(paley_core::Error::NotPrimePower(a.q))?;
            FiniteField::new(p, e, Some(m.clone()))?
        }
        None => FiniteField::with_order(a.q)?,
    };
    let mut row = json!({
        "field": f.descriptor(),
        "q": f.q(),
        "paley_kind": if f.minus_one_is_square() { "graph" } else { "tournament" },
        "smallest_nonsquare": f.smallest_nonsquare(),
    });
    if let Some(idx) = a.element {
        let x = f.element(idx)?;
        row["element"] = json!({
            "index": x,
            "coeffs": f.coeffs(x),
            "eta": f.eta(x),
            "sqrt": f.sqrt(x).ok(),
            "inverse": f.inv(x).ok(),
        });
    }
    out.emit(row)
}

fn paley(a: &PaleyArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let p = PaleyStructure::new(field(a.q)?);
    if let Some(path) = &a.export {
        fs::write(path, p.edge_list()).with_context(|| format!("writing {}", path.display()))?;
    }
    let edges: usize =
        (0..p.q()).map(|v| p.degree(v)).sum::<usize>() / if p.kind() == PaleyKind::Graph { 2 } else { 1 };
    out.emit(json!({
        "q": a.q,
        "kind": kind_name(p.kind()),
        "degree": p.degree(0),
        "edges": edges.to_string(),
        "rank2": p.adjacency().rank(),
    }))
}

fn coeven(a: &CoevenArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let g = SimpleGraph::from_paley(&PaleyStructure::new(field(a.q)?))?;
    let (count, dimension) = match a.method {
        CoevenMethod::Rank => {
            let c = count_coeven(&g);
            (c.count, Some(c.dimension))
        }
        CoevenMethod::Brute => {
            let c = brute_force_coeven(&g)?;
            (BigUint::from(c), c.is_power_of_two().then(|| c.trailing_zeros() as usize))
        }
    };
    out.emit(json!({
        "q": a.q,
        "count": count.to_string(),
        "dimension": dimension,
        "method": a.method,
    }))
}

pub(crate) fn census_row(q: u64, kind: PaleyKind, rep: &CensusReport) -> Value {
    let mut row = json!({
        "q": q,
        "kind": kind_name(kind),
        "r": rep.r,
        "mode": rep.mode,
        "population": rep.population.to_string(),
        "even": rep.counts.even.to_string(),
        "odd": rep.counts.odd.to_string(),
        "mixed": rep.counts.mixed.to_string(),
        "truncated": rep.truncated,
    });
    if let Some(est) = &rep.estimate {
        row["samples"] = json!(rep.samples.map(|s| s.to_string()));
        row["seed"] = json!(rep.seed);
        row["estimate"] = json!(est);
    }
    row
}

fn census(cli: &Cli, a: &CensusArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let p = PaleyStructure::new(field(a.q)?);
    if a.r_min == 0 || a.r_min > a.r_max || a.r_max > p.q() {
        return Err(CliError::new("UsageError", format!("need 1 <= r-min <= r-max <= {}", a.q)).into());
    }
    for r in a.r_min..=a.r_max {
        let rep = match a.mode {
            CensusModeArg::Exhaustive => census_exhaustive(&p, r, budget_or(cli, DEFAULT_EXHAUSTIVE_BUDGET))?,
            CensusModeArg::Sample => census_sampled(&p, r, a.samples, a.seed)?,
        };
        out.emit(census_row(a.q, p.kind(), &rep))?;
    }
    Ok(())
}

fn bound(a: &BoundArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let b = giant_lower_bound(a.n, a.theta)?;
    out.emit(json!({
        "n": a.n,
        "theta": a.theta,
        "bound": fraction_string(&b.bound_value),
        "bound_ceil": b.ceil().to_string(),
        "bound_decimal": to_decimal(&b.bound_value, 6),
        "entropy_rhs": b.entropy_rhs,
    }))
}

fn weil(a: &WeilArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let reports = weil_trials(a.q, a.deg, a.trials, a.seed)?;
    for (i, r) in reports.iter().enumerate() {
        out.emit(json!({
            "trial": i,
            "q": r.q,
            "w": r.w,
            "n": r.n,
            "lhs": r.lhs,
            "bound": r.bound,
            "ok": r.ok,
        }))?;
    }
    out.emit(json!({
        "summary": true,
        "trials": a.trials,
        "all_ok": reports.iter().all(|r| r.ok),
    }))
}

fn mds_search(cli: &Cli, a: &MdsSearchArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let f = field(a.q)?;
    let sets = enumerate_omega(&f, a.n, budget_or(cli, DEFAULT_OMEGA_BUDGET))?;
    if let Some(dir) = &a.export_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let limit = a.limit.unwrap_or(usize::MAX);
    let mut emitted = 0usize;
    for (i, s) in sets.iter().enumerate().take(limit) {
        let code = construct_self_dual(s)?;
        let (mds, distance) = match mds_strategy(&code) {
            Ok(MdsStrategy::Codewords) => {
                let d = minimum_distance(&code)?;
                (Some(d == code.length() - code.k() + 1), Some(d))
            }
            Ok(MdsStrategy::ColumnSubsets) => (Some(verify_mds(&code)?), None),
            Err(_) => (None, None),
        };
        if let Some(dir) = &a.export_dir {
            let path = dir.join(format!("code-{i}.txt"));
            fs::write(&path, code.generator_text()).with_context(|| format!("writing {}", path.display()))?;
        }
        out.emit(json!({
            "index": i,
            "feasibility": feasibility(s)?,
            "code": code.to_record(),
            "self_dual": verify_self_dual(&code),
            "mds": mds,
            "min_distance": distance,
        }))?;
        emitted += 1;
    }
    out.emit(json!({
        "summary": true,
        "q": a.q,
        "n": a.n,
        "count": sets.len().to_string(),
        "emitted": emitted,
    }))
}

fn mds_verify(a: &MdsVerifyArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let file = fs::File::open(&a.file).with_context(|| format!("opening {}", a.file.display()))?;
    let mut failures = 0usize;
    let mut checked = 0usize;
    for (line_no, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(&line).with_context(|| format!("line {}", line_no + 1))?;
        let record = match value.get("code") {
            Some(code) => code.clone(),
            None if value.get("generator").is_some() => value,
            None => continue,
        };
        let record: CodeRecord = serde_json::from_value(record).with_context(|| format!("line {}", line_no + 1))?;
        let (self_dual, mds, reason) = match GrsCode::from_record(&record) {
            Ok(code) => {
                let mds = verify_mds(&code);
                let reason = mds.as_ref().err().map(|e| e.to_string());
                (verify_self_dual(&code), mds.unwrap_or(false), reason)
            }
            Err(e) => (false, false, Some(e.to_string())),
        };
        let ok = self_dual && mds;
        failures += usize::from(!ok);
        checked += 1;
        out.emit(json!({ "line": line_no + 1, "self_dual": self_dual, "mds": mds, "ok": ok, "reason": reason }))?;
    }
    out.emit(json!({ "summary": true, "checked": checked, "failures": failures }))?;
    if failures > 0 {
        return Err(
            CliError::new("VerificationFailed", format!("{failures} of {checked} codes failed verification")).into()
        );
    }
    Ok(())
}

fn coeven_pairs(a: &CoevenPairsArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let f = field(a.q)?;
    let rep = coeven_pair_census(&f, a.witnesses)?;
    let formula = if a.q % 8 == 1 { (BigUint::one() << ((a.q - 1) / 2)) - 1u32 } else { BigUint::default() };
    out.emit(json!({
        "q": a.q,
        "count": rep.count.to_string(),
        "scan_count": rep.scan_count.map(|c| c.to_string()),
        "formula": formula.to_string(),
        "witnesses": rep.witnesses,
    }))
}

fn random_expect(cli: &Cli, a: &RandomExpectArgs, out: &mut Emitter) -> anyhow::Result<()> {
    let p: Probability = a.p.parse()?;
    let kind = match a.kind {
        KindArg::Graph => ModelKind::Graph,
        KindArg::Digraph => ModelKind::Digraph,
    };
    if a.trials > 0 {
        let rep = monte_carlo(kind, a.n, p, a.r, a.trials, a.seed, budget_or(cli, DEFAULT_MC_BUDGET))?;
        let z = rep.z_score();
        let mut row = serde_json::to_value(&rep)?;
        row["z_score"] = json!(z);
        return out.emit(row);
    }
    let exact = match kind {
        ModelKind::Graph => expected_graph(a.n, p, a.r)?,
        ModelKind::Digraph => expected_digraph(a.n, p, a.r)?,
    };
    out.emit(json!({
        "kind": kind,
        "n": a.n,
        "r": a.r,
        "p": p.to_string(),
        "closed_form": fraction_string(&exact),
        "closed_form_decimal": to_decimal(&exact, 12),
    }))
}

fn verify_all(out: &mut Emitter) -> anyhow::Result<()> {
    let outcomes = acceptance::run_all(&acceptance::in_process_runner);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for o in &outcomes {
        out.emit(json!({ "criterion": o.id, "title": o.title, "passed": o.passed, "detail": o.detail }))?;
    }
    out.emit(json!({ "summary": true, "criteria": outcomes.len(), "failed": failed }))?;
    if failed > 0 {
        return Err(CliError::new("VerificationFailed", format!("{failed} acceptance criteria failed")).into());
    }
    Ok(())
}
