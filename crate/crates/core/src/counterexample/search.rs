//! Bounded search for non-central polynomial cubes in ℂ and ℂ_k.
//!
//! A cube built from `k` pair-cube leaves (plus constants) by nested use of
//! the basic operation is checked for a violation of `(0, k-1)`-centrality:
//! exactly one of its lines in the last direction joins two distinct values.
//!
//! Only leaf sets with one leaf per direction are needed. A polynomial cube
//! that ignores coordinate `j` has equal faces in direction `j`, so its
//! last-direction lines are either all trivial (`j = k-1`) or come in equal
//! pairs, and then the number of non-trivial lines is even. Reversing a leaf
//! `cube_i(x, y)` to `cube_i(y, x)` reflects the whole cube in direction `i`,
//! which keeps violations, so `x < y` may be assumed.
//!
//! The outermost application is never materialized. Two values of the
//! operation agree exactly when their argument tuples agree or both lie in
//! the special domain, so each argument is reduced to bitmasks over the lines
//! and line endpoints, arguments with equal masks are grouped, and the
//! groups are combined depth-first with pruning.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::family::{Family, Model};
use super::free::FreeValue;
use crate::commutator::{cube_violation, Identity};
use crate::cube::{CubeShape, LabeledCube};
use crate::error::{Error, Result};

/// Largest pool of subterm cubes built per leaf set unless overridden.
pub const DEFAULT_MAX_POOL: usize = 1 << 20;
/// Largest number of leaf sets visited unless overridden.
pub const DEFAULT_MAX_LEAF_SETS: u64 = 1 << 24;
const MAX_DIM: usize = 5;

/// Which sets of pair-cube leaves are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leaves {
    /// One `cube_i(x, y)` with `x < y` for each direction `i`.
    PerDirection,
    /// Any `m` distinct non-constant pair cubes covering every direction.
    Any(usize),
}

impl Leaves {
    pub fn describe(self) -> String {
        match self {
            Leaves::PerDirection => "per_direction".into(),
            Leaves::Any(m) => format!("any_{m}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub family: Family,
    /// Nesting depth of the operation; 0 checks the leaves and constants.
    pub depth: usize,
    /// Naturals used for leaf endpoints and constant cubes.
    pub seeds: Vec<u32>,
    pub leaves: Leaves,
    /// Stop after the first leaf set with a violation.
    pub stop_at_first: bool,
    pub max_pool: usize,
    pub max_leaf_sets: u64,
}

impl SearchConfig {
    pub fn new(family: Family, depth: usize) -> Self {
        Self {
            family,
            depth,
            seeds: family.default_seeds(),
            leaves: Leaves::PerDirection,
            stop_at_first: false,
            max_pool: DEFAULT_MAX_POOL,
            max_leaf_sets: DEFAULT_MAX_LEAF_SETS,
        }
    }
}

/// A violating cube found by the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub leaves: Vec<String>,
    pub term: String,
    pub cube: Vec<String>,
    pub direction: usize,
    pub offending_vertex: usize,
    pub offending_pair: (String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub family: String,
    pub dimension: usize,
    pub depth: usize,
    pub seeds: Vec<u32>,
    pub leaf_mode: String,
    pub leaf_sets: u64,
    /// Cubes checked: the subterm pool plus every outermost argument tuple.
    pub examined: u128,
    pub violations: u128,
    pub largest_pool: usize,
    pub first_violation: Option<SearchHit>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Gen {
    dir: usize,
    x: u32,
    y: u32,
}

impl Gen {
    fn name(self) -> String {
        format!("cube_{}({},{})", self.dir, self.x, self.y)
    }
}

#[derive(Default)]
struct Outcome {
    examined: u128,
    violations: u128,
    pool: usize,
    hit: Option<SearchHit>,
}

/// Enumerate the configured polynomial cubes and count violations.
pub fn search_polyk_violation(cfg: &SearchConfig) -> Result<SearchReport> {
    let k = cfg.family.dimension();
    if !(2..=MAX_DIM).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "search supports dimensions 2..={MAX_DIM}, got {k}"
        )));
    }
    let mut seeds = cfg.seeds.clone();
    seeds.sort_unstable();
    seeds.dedup();
    if seeds.len() < 2 {
        return Err(Error::InvalidParameter(
            "search needs at least two seeds".into(),
        ));
    }
    let cfg = &SearchConfig {
        seeds: seeds.clone(),
        ..cfg.clone()
    };
    let mut report = SearchReport {
        family: cfg.family.name(),
        dimension: k,
        depth: cfg.depth,
        seeds: seeds.clone(),
        leaf_mode: cfg.leaves.describe(),
        leaf_sets: 0,
        examined: 0,
        violations: 0,
        largest_pool: 0,
        first_violation: None,
    };
    let absorb = |report: &mut SearchReport, o: Outcome| {
        report.leaf_sets += 1;
        report.examined += o.examined;
        report.violations += o.violations;
        report.largest_pool = report.largest_pool.max(o.pool);
        if report.first_violation.is_none() {
            report.first_violation = o.hit;
        }
    };
    match cfg.leaves {
        Leaves::PerDirection => {
            let pairs: Vec<(u32, u32)> = seeds
                .iter()
                .flat_map(|&x| seeds.iter().filter(move |&&y| x < y).map(move |&y| (x, y)))
                .collect();
            let total = (pairs.len() as u64)
                .checked_pow(k as u32)
                .filter(|&t| t <= cfg.max_leaf_sets)
                .ok_or_else(|| {
                    budget_error("leaf sets", pairs.len().pow(k as u32), cfg.max_leaf_sets)
                })?;
            let leaf_set = |idx: u64| -> Vec<Gen> {
                let mut rest = idx;
                (0..k)
                    .map(|dir| {
                        let p = pairs[(rest % pairs.len() as u64) as usize];
                        rest /= pairs.len() as u64;
                        Gen {
                            dir,
                            x: p.0,
                            y: p.1,
                        }
                    })
                    .collect()
            };
            if cfg.stop_at_first {
                for idx in 0..total {
                    let o = search_leaf_set(cfg, &leaf_set(idx))?;
                    let hit = o.hit.is_some();
                    absorb(&mut report, o);
                    if hit {
                        break;
                    }
                }
            } else {
                let outcomes: Vec<Outcome> = (0..total)
                    .into_par_iter()
                    .map(|idx| search_leaf_set(cfg, &leaf_set(idx)))
                    .collect::<Result<_>>()?;
                for o in outcomes {
                    absorb(&mut report, o);
                }
            }
        }
        Leaves::Any(m) => {
            if m < k {
                return Err(Error::InvalidParameter(format!(
                    "{m} leaves cannot cover {k} directions"
                )));
            }
            let seeds = &seeds;
            let gens: Vec<Gen> = (0..k)
                .flat_map(|dir| {
                    seeds.iter().flat_map(move |&x| {
                        seeds
                            .iter()
                            .filter(move |&&y| y != x)
                            .map(move |&y| Gen { dir, x, y })
                    })
                })
                .collect();
            let per_dir = gens.len() / k;
            let total = covering_count(k, m, per_dir);
            if !cfg.stop_at_first && total > cfg.max_leaf_sets as u128 {
                return Err(budget_error("leaf sets", total, cfg.max_leaf_sets));
            }
            let mut chosen = Vec::with_capacity(m);
            let mut failure = None;
            for_each_covering(&gens, k, m, 0, &mut chosen, &mut |set| {
                if report.leaf_sets >= cfg.max_leaf_sets {
                    failure = Some(budget_error(
                        "leaf sets",
                        report.leaf_sets + 1,
                        cfg.max_leaf_sets,
                    ));
                    return false;
                }
                match search_leaf_set(cfg, set) {
                    Ok(o) => {
                        let hit = o.hit.is_some();
                        absorb(&mut report, o);
                        !(hit && cfg.stop_at_first)
                    }
                    Err(e) => {
                        failure = Some(e);
                        false
                    }
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
        }
    }
    Ok(report)
}

fn budget_error(
    what: &str,
    needed: impl std::fmt::Display,
    limit: impl std::fmt::Display,
) -> Error {
    Error::SearchBudget(format!("{what}: {needed} exceeds the limit {limit}"))
}

/// Number of `m`-subsets of `k * per_dir` generators (grouped by direction)
/// that meet every direction.
fn covering_count(k: usize, m: usize, per_dir: usize) -> u128 {
    // ways[j][c]: subsets of size c drawn from the first j directions, each met
    let binom = |n: usize, r: usize| -> u128 {
        if r > n {
            return 0;
        }
        (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    };
    let mut ways = vec![0u128; m + 1];
    ways[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u128; m + 1];
        for (c, &w) in ways.iter().enumerate() {
            for take in 1..=m - c {
                next[c + take] += w * binom(per_dir, take);
            }
        }
        ways = next;
    }
    ways[m]
}

/// Visits the `m`-subsets of `gens` (sorted by direction) meeting all `k`
/// directions, in lexicographic order, until `visit` returns false.
fn for_each_covering(
    gens: &[Gen],
    k: usize,
    m: usize,
    from: usize,
    chosen: &mut Vec<Gen>,
    visit: &mut dyn FnMut(&[Gen]) -> bool,
) -> bool {
    if chosen.len() == m {
        return visit(chosen);
    }
    let last_dir = chosen.last().map(|g| g.dir);
    for i in from..gens.len() {
        let g = gens[i];
        // directions are met in order, so the next one may repeat or advance by one
        let allowed = match last_dir {
            None => g.dir == 0,
            Some(d) => g.dir <= d + 1,
        };
        if !allowed {
            break;
        }
        if m - chosen.len() - 1 < k - 1 - g.dir {
            continue;
        }
        chosen.push(g);
        let go_on = for_each_covering(gens, k, m, i + 1, chosen, visit);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug)]
enum Origin {
    Const(u32),
    Leaf(usize),
    App(Vec<u32>),
}

struct Pool {
    verts: usize,
    labels: Vec<FreeValue>,
    origin: Vec<Origin>,
    index: HashMap<Vec<FreeValue>, u32>,
}

impl Pool {
    fn len(&self) -> usize {
        self.origin.len()
    }

    fn get(&self, i: usize) -> &[FreeValue] {
        &self.labels[i * self.verts..(i + 1) * self.verts]
    }

    fn push(&mut self, labels: Vec<FreeValue>, origin: Origin) {
        if self.index.contains_key(&labels) {
            return;
        }
        self.index.insert(labels.clone(), self.origin.len() as u32);
        self.labels.extend_from_slice(&labels);
        self.origin.push(origin);
    }

    fn term(&self, i: usize, fam: Family, leaves: &[Gen]) -> String {
        match &self.origin[i] {
            Origin::Const(c) => c.to_string(),
            Origin::Leaf(j) => leaves[*j].name(),
            Origin::App(args) => apply_term(
                fam,
                args.iter().map(|&a| self.term(a as usize, fam, leaves)),
            ),
        }
    }
}

fn apply_term(fam: Family, args: impl Iterator<Item = String>) -> String {
    let sym = match fam {
        Family::C => "t".to_string(),
        Family::Ck(k) => format!("t_{k}"),
    };
    format!("{sym}({})", args.collect::<Vec<_>>().join(", "))
}

fn build_pool(cfg: &SearchConfig, model: &Model, leaves: &[Gen]) -> Result<Pool> {
    let k = cfg.family.dimension();
    let verts = 1usize << k;
    let arity = cfg.family.arity();
    let mut pool = Pool {
        verts,
        labels: Vec::new(),
        origin: Vec::new(),
        index: HashMap::new(),
    };
    for &c in &cfg.seeds {
        pool.push(vec![FreeValue::nat(c); verts], Origin::Const(c));
    }
    for (j, g) in leaves.iter().enumerate() {
        let labels = (0..verts)
            .map(|v| FreeValue::nat(if v >> g.dir & 1 == 1 { g.y } else { g.x }))
            .collect();
        pool.push(labels, Origin::Leaf(j));
    }
    let mut level_start = 0;
    for _ in 1..cfg.depth {
        let len = pool.len();
        let tuples = (len as u128).pow(arity as u32);
        if tuples + len as u128 > cfg.max_pool as u128 {
            return Err(budget_error(
                "subterm pool",
                tuples + len as u128,
                cfg.max_pool,
            ));
        }
        let mut idx = vec![0u32; arity];
        let mut args = vec![FreeValue::nat(0); arity];
        loop {
            if idx.iter().any(|&i| i as usize >= level_start) {
                let labels = (0..verts)
                    .map(|v| {
                        for (a, &i) in args.iter_mut().zip(&idx) {
                            *a = pool.labels[i as usize * verts + v];
                        }
                        model.eval_unchecked(&args)
                    })
                    .collect();
                pool.push(labels, Origin::App(idx.clone()));
            }
            let mut q = arity;
            loop {
                if q == 0 {
                    break;
                }
                q -= 1;
                idx[q] += 1;
                if (idx[q] as usize) < len {
                    break;
                }
                idx[q] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
        level_start = len;
    }
    Ok(pool)
}

/// Position of the one non-trivial line in direction `bit`, if exactly one.
fn single_bad_line(labels: &[FreeValue], bit: usize) -> Option<usize> {
    let top = 1 << bit;
    let mut bad = None;
    for g in 0..top {
        if labels[g] != labels[g | top] {
            if bad.is_some() {
                return None;
            }
            bad = Some(g);
        }
    }
    bad
}

#[derive(Clone, Copy)]
struct Group {
    eq: u32,
    z: u32,
    h: u32,
    count: u64,
    rep: u32,
}

#[derive(Clone, Copy)]
struct State {
    eq: u32,
    z0: u32,
    h0: u32,
    dom: u32,
    all_high: u32,
}

struct Grouped {
    groups: Vec<Vec<Group>>,
    lines: u32,
    line_mask: u32,
    exclude: bool,
}

#[derive(Default)]
struct Tally {
    violations: u128,
    first: Option<Vec<u32>>,
}

impl Grouped {
    /// Groups pool members per argument position by their line masks.
    ///
    /// Bit `g` of `eq` says line `g` is trivial; bits `g` and `g + lines` of
    /// `z` (resp. `h`) say the low and high endpoint of line `g` hold 0
    /// (resp. the position's non-zero admissible value).
    fn new(pool: &Pool, fam: Family, k: usize) -> Self {
        let lines = 1u32 << (k - 1);
        let top = lines as usize;
        let groups = (0..fam.arity())
            .map(|j| {
                let high = fam.high_value(j).map(FreeValue::nat);
                let mut by_key: HashMap<(u32, u32, u32), usize> = HashMap::new();
                let mut out: Vec<Group> = Vec::new();
                for i in 0..pool.len() {
                    let l = pool.get(i);
                    let (mut eq, mut z, mut h) = (0, 0, 0);
                    for g in 0..top {
                        let (lo, hi) = (l[g], l[g | top]);
                        eq |= ((lo == hi) as u32) << g;
                        z |= ((lo == FreeValue::nat(0)) as u32) << g
                            | ((hi == FreeValue::nat(0)) as u32) << (g + top);
                        if let Some(hv) = high {
                            h |= ((lo == hv) as u32) << g | ((hi == hv) as u32) << (g + top);
                        }
                    }
                    match by_key.get(&(eq, z, h)) {
                        Some(&gi) => out[gi].count += 1,
                        None => {
                            by_key.insert((eq, z, h), out.len());
                            out.push(Group {
                                eq,
                                z,
                                h,
                                count: 1,
                                rep: i as u32,
                            });
                        }
                    }
                }
                out
            })
            .collect();
        Self {
            groups,
            lines,
            line_mask: (1u32 << lines) - 1,
            exclude: fam.excludes_all_high(),
        }
    }

    fn both(&self, m: u32) -> u32 {
        m & (m >> self.lines) & self.line_mask
    }

    fn walk(&self, pos: usize, st: State, mult: u128, reps: &mut Vec<u32>, tally: &mut Tally) {
        if pos == self.groups.len() {
            let d = if self.exclude {
                st.dom & !st.all_high
            } else {
                st.dom
            };
            let bad = self.line_mask & !(st.eq | self.both(d));
            if bad.count_ones() == 1 {
                tally.violations += mult;
                if tally.first.is_none() {
                    tally.first = Some(reps.clone());
                }
            }
            return;
        }
        for g in &self.groups[pos] {
            let next = match pos {
                0 => State {
                    eq: g.eq,
                    z0: g.z,
                    h0: g.h,
                    dom: g.z | g.h,
                    all_high: u32::MAX,
                },
                1 => State {
                    eq: st.eq & g.eq,
                    dom: (st.z0 & g.z) | (st.h0 & g.h),
                    all_high: st.h0 & g.h,
                    ..st
                },
                _ => State {
                    eq: st.eq & g.eq,
                    dom: st.dom & (g.z | g.h),
                    all_high: st.all_high & g.h,
                    ..st
                },
            };
            // the domain only shrinks further, apart from the single excluded tuple
            let surely_bad = self.line_mask & !(next.eq | self.both(next.dom));
            if surely_bad.count_ones() >= 2 {
                continue;
            }
            reps.push(g.rep);
            self.walk(pos + 1, next, mult * g.count as u128, reps, tally);
            reps.pop();
        }
    }
}

fn search_leaf_set(cfg: &SearchConfig, leaves: &[Gen]) -> Result<Outcome> {
    let fam = cfg.family;
    let k = fam.dimension();
    let model = Model::new(fam)?;
    let pool = build_pool(cfg, &model, leaves)?;
    let mut out = Outcome {
        pool: pool.len(),
        ..Outcome::default()
    };
    let shape = CubeShape::normalized(k);
    let names: Vec<String> = leaves.iter().map(|g| g.name()).collect();
    let record = |cube: Vec<FreeValue>, term: String, out: &mut Outcome| -> Result<()> {
        let cube = LabeledCube::new(shape.clone(), cube)?;
        let v = cube_violation(&cube, &Identity, k - 1)?.ok_or_else(|| {
            Error::InvalidParameter(format!("grouped search reported a central cube for {term}"))
        })?;
        let st = model.store();
        out.hit = Some(SearchHit {
            leaves: names.clone(),
            term,
            cube: model.render_cube(&cube),
            direction: k - 1,
            offending_vertex: v.offending_vertex,
            offending_pair: (st.render(v.offending_pair.0), st.render(v.offending_pair.1)),
        });
        Ok(())
    };
    for i in 0..pool.len() {
        out.examined += 1;
        if single_bad_line(pool.get(i), k - 1).is_some() {
            out.violations += 1;
            if out.hit.is_none() {
                record(pool.get(i).to_vec(), pool.term(i, fam, leaves), &mut out)?;
            }
        }
    }
    if cfg.depth == 0 {
        return Ok(out);
    }
    out.examined += (pool.len() as u128).pow(fam.arity() as u32);
    let grouped = Grouped::new(&pool, fam, k);
    let mut tally = Tally::default();
    let init = State {
        eq: 0,
        z0: 0,
        h0: 0,
        dom: 0,
        all_high: 0,
    };
    grouped.walk(0, init, 1, &mut Vec::new(), &mut tally);
    out.violations += tally.violations;
    if let (None, Some(reps)) = (&out.hit, tally.first) {
        let verts = 1 << k;
        let mut args = vec![FreeValue::nat(0); reps.len()];
        let cube = (0..verts)
            .map(|v| {
                for (a, &r) in args.iter_mut().zip(&reps) {
                    *a = pool.get(r as usize)[v];
                }
                model.eval_unchecked(&args)
            })
            .collect();
        let term = apply_term(
            fam,
            reps.iter().map(|&r| pool.term(r as usize, fam, leaves)),
        );
        record(cube, term, &mut out)?;
    }
    Ok(out)
}
