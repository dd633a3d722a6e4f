//! The subcommands. Each returns a JSON report, a text rendering and whether
//! every checked property held.

use std::fmt::Write as _;

use malcev_core::closure::{is_higher_congruence, theta, ClosureOptions, Route, Schedule};
use malcev_core::commutator::{
    commutator, oracle_commutator, CommutatorOptions, CommutatorResult, Kind,
};
use malcev_core::congruence;
use malcev_core::counterexample::{
    direct_tc_witness, eta_witness, glued_hyper_witness, search_polyk_violation, Family, Leaves,
    SearchConfig, SearchReport, Witness,
};
use malcev_core::relation::CubeRelation;
use malcev_core::{corpus, FiniteAlgebra, Partition};
use serde_json::{json, Map, Value};

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

pub type CmdResult = Result<Outcome, String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// Labels in `(γ_00, γ_10 / γ_01, γ_11)` form for squares, plain lists otherwise.
pub fn render_cube<T: ToString>(labels: &[T]) -> String {
    let l: Vec<String> = labels.iter().map(T::to_string).collect();
    if l.len() == 4 {
        format!("({}, {} / {}, {})", l[0], l[1], l[2], l[3])
    } else {
        format!("({})", l.join(", "))
    }
}

pub fn cg(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> CmdResult {
    let p = congruence::cg(alg, pairs).map_err(err)?;
    Ok(Outcome {
        json: json!({ "algebra": alg.name(), "pairs": pairs, "blocks": p }),
        text: format!("Cg{pairs:?} in {} = {p}\n", alg.name()),
        ok: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RouteArg {
    Both,
    Basic,
    Polyk,
}

pub fn theta_cmd(
    alg: &FiniteAlgebra,
    g: &CubeRelation<usize>,
    route: RouteArg,
    opts: &ClosureOptions,
) -> CmdResult {
    let routes = match route {
        RouteArg::Both => vec![Route::BasicOps, Route::PolK],
        RouteArg::Basic => vec![Route::BasicOps],
        RouteArg::Polyk => vec![Route::PolK],
    };
    let mut results = Vec::new();
    for r in &routes {
        results.push(theta(alg, g, *r, opts).map_err(err)?);
    }
    let (first, _) = &results[0];
    let is_congruence = is_higher_congruence(alg, first);
    let mut reports = Map::new();
    for (_, report) in &results {
        reports.insert(
            report.route.as_str().into(),
            serde_json::to_value(report).map_err(err)?,
        );
    }
    let mut out = Map::new();
    out.insert("algebra".into(), json!(alg.name()));
    out.insert(
        "theta".into(),
        serde_json::to_value(first.to_json_value()).map_err(err)?,
    );
    out.insert("size".into(), json!(first.len()));
    out.insert("is_congruence".into(), json!(is_congruence));
    out.insert("reports".into(), Value::Object(reports));
    let mut ok = is_congruence;
    let mut text = format!(
        "Θ in {} has {} cubes; higher congruence: {is_congruence}\n",
        alg.name(),
        first.len()
    );
    if results.len() == 2 {
        let equal = results[0].0 == results[1].0;
        out.insert("routes_equal".into(), json!(equal));
        if !equal {
            out.insert(
                "pol_k_theta".into(),
                serde_json::to_value(results[1].0.to_json_value()).map_err(err)?,
            );
        }
        ok &= equal;
        let _ = writeln!(text, "routes equal: {equal}");
    }
    for (rel, report) in &results {
        let _ = writeln!(
            text,
            "{}: {} cubes, rounds {:?}",
            report.route.as_str(),
            rel.len(),
            report.rounds
        );
    }
    if first.shape().dim() == 2 && first.len() <= 64 {
        for c in first.iter() {
            let _ = writeln!(text, "  {}", render_cube(c));
        }
    }
    Ok(Outcome {
        json: Value::Object(out),
        text,
        ok,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum KindArg {
    Tc,
    Hyper,
    Both,
}

pub struct CommutatorArgs {
    pub kind: KindArg,
    pub oracle: bool,
    pub oracle_max_size: usize,
    pub opts: CommutatorOptions,
}

pub fn commutator_cmd(alg: &FiniteAlgebra, thetas: &[Partition], a: &CommutatorArgs) -> CmdResult {
    let kinds: &[Kind] = match a.kind {
        KindArg::Tc => &[Kind::Tc],
        // the term condition value is needed for the comparison either way
        KindArg::Hyper | KindArg::Both => &[Kind::Tc, Kind::Hyper],
    };
    let mut results: Vec<CommutatorResult> = Vec::new();
    for &k in kinds {
        results.push(commutator(alg, thetas, k, &a.opts).map_err(err)?);
    }
    let mut ok = true;
    let mut text = String::new();
    let mut res = Map::new();
    for r in &results {
        if a.kind == KindArg::Hyper && r.kind == Kind::Tc {
            continue;
        }
        let _ = writeln!(
            text,
            "[{}]_{} = {} (|relation| = {}, {} trace steps)",
            thetas
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            r.kind.as_str(),
            r.value,
            r.relation_size,
            r.witness_trace.len()
        );
        for step in &r.witness_trace {
            let _ = writeln!(
                text,
                "  against {}: {} offends at line {}",
                step.delta,
                render_cube(&step.violation.cube),
                step.violation.offending_vertex
            );
        }
        res.insert(
            r.kind.as_str().into(),
            serde_json::to_value(r).map_err(err)?,
        );
    }
    let mut out = Map::new();
    out.insert("algebra".into(), json!(alg.name()));
    out.insert("arity".into(), json!(thetas.len()));
    out.insert("thetas".into(), json!(thetas));
    out.insert("results".into(), Value::Object(res));
    if results.len() == 2 {
        let leq = results[0].value.leq(&results[1].value);
        ok &= leq;
        out.insert("tc_leq_hyper".into(), json!(leq));
        let _ = writeln!(text, "tc <= hyper: {leq}");
    }
    if a.oracle {
        let mut oracle = Map::new();
        if alg.size() > a.oracle_max_size {
            oracle.insert(
                "skipped".into(),
                json!(format!(
                    "algebra size {} exceeds {}",
                    alg.size(),
                    a.oracle_max_size
                )),
            );
            let _ = writeln!(
                text,
                "oracle skipped: size {} > {}",
                alg.size(),
                a.oracle_max_size
            );
        } else {
            for r in &results {
                let v = oracle_commutator(alg, thetas, r.kind, &a.opts, a.oracle_max_size)
                    .map_err(err)?;
                let agrees = v == r.value;
                ok &= agrees;
                oracle.insert(
                    r.kind.as_str().into(),
                    json!({ "value": v, "agrees": agrees }),
                );
                let _ = writeln!(text, "oracle {}: {v} (agrees: {agrees})", r.kind.as_str());
            }
        }
        out.insert("oracle".into(), Value::Object(oracle));
    }
    Ok(Outcome {
        json: Value::Object(out),
        text,
        ok,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyArg {
    #[value(name = "C")]
    C,
    #[value(name = "Ck")]
    Ck,
}

pub struct CounterexampleArgs {
    pub family: FamilyArg,
    pub k: usize,
    pub depth: usize,
    pub seeds: Option<Vec<u32>>,
    pub leaves: Option<usize>,
}

fn witness_json(w: &Witness) -> Result<Value, String> {
    serde_json::to_value(w.report()).map_err(err)
}

fn search(cfg: SearchConfig, text: &mut String, label: &str) -> Result<SearchReport, String> {
    let r = search_polyk_violation(&cfg).map_err(err)?;
    let _ = writeln!(
        text,
        "{label}: {} leaf sets, depth {}, seeds {:?}, {} cubes examined, {} violations",
        r.leaf_sets, r.depth, r.seeds, r.examined, r.violations
    );
    if let Some(hit) = &r.first_violation {
        let _ = writeln!(text, "  first: {} = {}", hit.term, render_cube(&hit.cube));
    }
    Ok(r)
}

pub fn counterexample_cmd(a: &CounterexampleArgs) -> CmdResult {
    let family = match a.family {
        FamilyArg::C if a.k != 2 => {
            return Err(format!("family C is binary; --k must be 2, got {}", a.k))
        }
        FamilyArg::C => Family::C,
        FamilyArg::Ck => Family::new_ck(a.k).map_err(err)?,
    };
    let mut cfg = SearchConfig::new(family, a.depth);
    if let Some(s) = &a.seeds {
        cfg.seeds = s.clone();
    }
    if let Some(m) = a.leaves {
        cfg.leaves = Leaves::Any(m);
    }
    let mut out = Map::new();
    out.insert("family".into(), json!(family.name()));
    out.insert("k".into(), json!(a.k));
    let mut text = String::new();
    let mut ok = true;
    match family {
        Family::C => {
            match direct_tc_witness() {
                Ok(w) => {
                    out.insert("found_tc_violation".into(), json!(true));
                    out.insert("tc_witness".into(), witness_json(&w)?);
                    let _ = writeln!(
                        text,
                        "tc witness {} = {} breaks centrality in direction {}",
                        w.construction,
                        render_cube(&w.rendered()),
                        w.violation.direction
                    );
                }
                Err(e) => {
                    ok = false;
                    out.insert("found_tc_violation".into(), json!(false));
                    let _ = writeln!(text, "tc witness failed: {e}");
                }
            }
            match glued_hyper_witness() {
                Ok(w) => {
                    let shared = w.pieces[0].faces(0).map_err(err)?.1;
                    let shared = w.model.render_cube(&shared);
                    let mut h = witness_json(&w)?;
                    h["shared_face"] = json!(shared);
                    out.insert("hyper_witness".into(), h);
                    let _ = writeln!(text, "hyper witness squares:");
                    for p in &w.pieces[..2] {
                        let _ = writeln!(text, "  {}", render_cube(&w.model.render_cube(p)));
                    }
                    let _ = writeln!(text, "  shared face {}", shared.join(", "));
                    let _ = writeln!(
                        text,
                        "  glued {}, transposed {}",
                        render_cube(&w.model.render_cube(&w.pieces[2])),
                        render_cube(&w.rendered())
                    );
                }
                Err(e) => {
                    ok = false;
                    out.insert("hyper_witness".into(), Value::Null);
                    let _ = writeln!(text, "hyper witness failed: {e}");
                }
            }
        }
        Family::Ck(k) => {
            match eta_witness(k) {
                Ok(w) => {
                    let special = (k + 2).to_string();
                    let count = w.rendered().iter().filter(|l| **l == special).count();
                    let expected = (1usize << k) - 1;
                    ok &= count == expected;
                    let mut e = witness_json(&w)?;
                    e["special_vertices"] = json!(count);
                    out.insert("eta".into(), e);
                    let _ = writeln!(
                        text,
                        "eta = {}: {count}/{} vertices equal {special}, breaks centrality in direction {}",
                        render_cube(&w.rendered()),
                        1usize << k,
                        w.violation.direction
                    );
                }
                Err(e) => {
                    ok = false;
                    out.insert("eta".into(), Value::Null);
                    let _ = writeln!(text, "eta failed: {e}");
                }
            }
            let mut unrestricted = SearchConfig::new(family, 1);
            unrestricted.leaves = Leaves::Any(k + 1);
            unrestricted.stop_at_first = true;
            let r = search(unrestricted, &mut text, "arity k+1 search")?;
            ok &= r.first_violation.is_some();
            out.insert(
                "unrestricted_search".into(),
                serde_json::to_value(&r).map_err(err)?,
            );
        }
    }
    let r = search(cfg, &mut text, "polynomial search")?;
    // with more than k leaves the cubes are no longer k-ary polynomials
    if a.leaves.is_none_or(|m| m <= a.k) {
        ok &= r.violations == 0;
    }
    out.insert(
        "polyk_search".into(),
        serde_json::to_value(&r).map_err(err)?,
    );
    Ok(Outcome {
        json: Value::Object(out),
        text,
        ok,
    })
}

pub fn corpus_list() -> CmdResult {
    let algebras = corpus::bundled();
    let mut text = String::new();
    let list: Vec<Value> = algebras
        .iter()
        .map(|a| {
            let ops: Vec<Value> = a
                .operations()
                .iter()
                .map(|o| json!({ "name": o.name, "arity": o.arity }))
                .collect();
            let _ = writeln!(text, "{:<10} size {}", a.name(), a.size());
            json!({ "name": a.name(), "size": a.size(), "operations": ops })
        })
        .collect();
    Ok(Outcome {
        json: Value::Array(list),
        text,
        ok: true,
    })
}

pub fn corpus_export(dir: &std::path::Path) -> CmdResult {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut written = Vec::new();
    for a in corpus::bundled() {
        let path = dir.join(format!("{}.json", a.name()));
        let text = serde_json::to_string_pretty(&a).map_err(err)? + "\n";
        std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
        written.push(path.display().to_string());
    }
    Ok(Outcome {
        text: written.join("\n") + "\n",
        json: json!({ "written": written }),
        ok: true,
    })
}

pub fn schedule_of(eager: bool) -> Schedule {
    if eager {
        Schedule::Eager
    } else {
        Schedule::Rounds
    }
}
