//! Generation of higher-dimensional tolerances and congruences.
//!
//! `Θ_S(G)` is computed either as `tc(tol_S(G))`, closing the sym/refl
//! closure of `G` under the basic operations, or by closing it under the
//! `|S|`-ary polynomials with constants from the subalgebra generated by the
//! labels of `G`. Both routes finish with [`tc`].

mod checks;
mod codec;
mod engine;
mod polynomial;
mod transitive;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use checks::{
    check_compatible, check_higher_congruence, check_reflexive, check_symmetric, check_tolerance,
    check_transitive, is_higher_congruence, is_reflexive, is_symmetric, is_tolerance,
    is_transitive, CheckFailure,
};
pub use codec::{max_cubes, DEFAULT_MAX_CUBES, MAX_CUBES_ENV};
pub use engine::Schedule;
pub use transitive::{dtc, tc, tc_with_trace, TcTrace};

use crate::algebra::{subalgebra_generated, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::relation::CubeRelation;
use codec::Codec;
use engine::{Engine, Rules};

/// Which closure produces the tolerance before [`tc`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    #[default]
    BasicOps,
    PolK,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::BasicOps => "basic_ops",
            Route::PolK => "pol_k",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureOptions {
    pub schedule: Schedule,
    /// Direction order for [`tc`]; `None` means increasing coordinates.
    pub order: Option<Vec<usize>>,
    /// Cube-space guard; `None` reads [`MAX_CUBES_ENV`] or falls back to [`DEFAULT_MAX_CUBES`].
    pub max_cubes: Option<u64>,
    pub force: bool,
}

/// Rounds and relation sizes per closure phase.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub route: Route,
    pub rounds: BTreeMap<&'static str, usize>,
    pub sizes: BTreeMap<&'static str, Vec<usize>>,
}

impl ClosureReport {
    fn phase(&mut self, name: &'static str, rounds: usize, sizes: Vec<usize>) {
        self.rounds.insert(name, rounds);
        self.sizes.insert(name, sizes);
    }
}

fn codec_for(n: usize, r: &CubeRelation<usize>, opts: &ClosureOptions) -> Result<Codec> {
    r.check_labels(n)?;
    Codec::new(n, r.shape(), opts.max_cubes, opts.force)
}

fn to_relation(codec: &Codec, r: &CubeRelation<usize>, mut codes: Vec<u64>) -> CubeRelation<usize> {
    codes.sort_unstable();
    CubeRelation::from_label_vecs(
        r.shape().clone(),
        codes.into_iter().map(|c| codec.decode(c)),
    )
    .expect("decoded cubes fit the shape")
}

fn encode_all(codec: &Codec, r: &CubeRelation<usize>) -> Vec<u64> {
    r.iter().map(|c| codec.encode(c)).collect()
}

/// A carrier-free algebra with no operations, for sym/refl closure alone.
fn bare_algebra(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(
        "bare",
        n.max(1),
        vec![crate::algebra::OperationTable::new(
            "id",
            1,
            (0..n.max(1)).collect(),
        )],
    )
    .expect("identity table is valid")
}

/// Least superset of `r` closed under every `sym_i` and `refl_i^j`.
pub fn close_sym_refl(r: &CubeRelation<usize>) -> Result<CubeRelation<usize>> {
    let n = r.labels_used().last().map_or(1, |&m| m + 1);
    let opts = ClosureOptions {
        force: true,
        ..Default::default()
    };
    let alg = bare_algebra(n);
    let codec = codec_for(n, r, &opts)?;
    let closed = Engine::new(&codec, &alg).close(
        encode_all(&codec, r),
        Rules {
            sym_refl: true,
            ops: false,
        },
        Schedule::Rounds,
    );
    Ok(to_relation(&codec, r, closed.members))
}

/// Least superset of `r` closed under the basic operations and under sym/refl.
/// Applied to a sym/refl-closed set this is `tol_S(r)`.
pub fn close_under_ops(
    alg: &FiniteAlgebra,
    r: &CubeRelation<usize>,
    opts: &ClosureOptions,
) -> Result<CubeRelation<usize>> {
    close_under_ops_report(alg, r, opts).map(|(rel, _, _)| rel)
}

fn close_under_ops_report(
    alg: &FiniteAlgebra,
    r: &CubeRelation<usize>,
    opts: &ClosureOptions,
) -> Result<(CubeRelation<usize>, usize, Vec<usize>)> {
    let codec = codec_for(alg.size(), r, opts)?;
    let closed = Engine::new(&codec, alg).close(
        encode_all(&codec, r),
        Rules {
            sym_refl: true,
            ops: true,
        },
        opts.schedule,
    );
    Ok((
        to_relation(&codec, r, closed.members),
        closed.rounds,
        closed.sizes,
    ))
}

/// Closure under `Pol_k(C)`, `k = |S|`, where `C` is the subalgebra generated
/// by the labels of `r`. Includes every constant cube over `C`.
pub fn close_pol_k(
    alg: &FiniteAlgebra,
    r: &CubeRelation<usize>,
    opts: &ClosureOptions,
) -> Result<CubeRelation<usize>> {
    close_pol_k_report(alg, r, opts).map(|(rel, _)| rel)
}

fn close_pol_k_report(
    alg: &FiniteAlgebra,
    r: &CubeRelation<usize>,
    opts: &ClosureOptions,
) -> Result<(CubeRelation<usize>, usize)> {
    if r.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let codec = codec_for(alg.size(), r, opts)?;
    let labels: Vec<usize> = r.labels_used().into_iter().collect();
    let c = subalgebra_generated(alg, &labels)?;
    let consts: Vec<u64> = c.iter().map(|&x| codec.constant(x)).collect();
    let engine = Engine::new(&codec, alg);
    let (members, stats) = polynomial::pol_k_closure(
        &engine,
        &encode_all(&codec, r),
        &consts,
        r.shape().dim(),
        opts.schedule,
    );
    Ok((to_relation(&codec, r, members), stats.subuniverses))
}

/// `tol_S(G)`: the least tolerance containing `g`.
pub fn tolerance(
    alg: &FiniteAlgebra,
    g: &CubeRelation<usize>,
    opts: &ClosureOptions,
) -> Result<CubeRelation<usize>> {
    close_under_ops(alg, &close_sym_refl(g)?, opts)
}

/// `Θ_S(G)`, the least higher-dimensional congruence containing `g`, by the chosen route.
pub fn theta(
    alg: &FiniteAlgebra,
    g: &CubeRelation<usize>,
    route: Route,
    opts: &ClosureOptions,
) -> Result<(CubeRelation<usize>, ClosureReport)> {
    if route == Route::PolK && g.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    g.check_labels(alg.size())?;
    let mut report = ClosureReport {
        route,
        ..Default::default()
    };
    let sr = close_sym_refl(g)?;
    report.phase("sym_refl", 1, vec![g.len(), sr.len()]);
    let tol = match route {
        Route::BasicOps => {
            let (rel, rounds, sizes) = close_under_ops_report(alg, &sr, opts)?;
            report.phase("ops", rounds, sizes);
            rel
        }
        Route::PolK => {
            let (rel, subuniverses) = close_pol_k_report(alg, &sr, opts)?;
            report.phase("pol_k", subuniverses, vec![sr.len(), rel.len()]);
            rel
        }
    };
    let (out, trace) = tc_with_trace(&tol, opts.order.as_deref())?;
    report.phase("tc", trace.passes, trace.sizes);
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::cube::{CubeShape, LabeledCube};

    fn rel(k: usize, cubes: &[&[usize]]) -> CubeRelation<usize> {
        CubeRelation::from_label_vecs(CubeShape::normalized(k), cubes.iter().map(|c| c.to_vec()))
            .unwrap()
    }

    /// Brute-force sym/refl closure applying the six maps until nothing changes.
    fn naive_sym_refl(r: &CubeRelation<usize>) -> CubeRelation<usize> {
        let mut cur = r.clone();
        loop {
            let mut next = cur.clone();
            for c in cur.cubes() {
                for i in 0..c.dim() {
                    next.insert(c.sym(i).unwrap()).unwrap();
                    next.insert(c.refl(i, 0).unwrap()).unwrap();
                    next.insert(c.refl(i, 1).unwrap()).unwrap();
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    #[test]
    fn sym_refl_of_pair_cube() {
        let r = rel(2, &[&[0, 1, 0, 1]]);
        let c = close_sym_refl(&r).unwrap();
        assert_eq!(c, naive_sym_refl(&r));
        for cube in [[0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 0, 0], [1, 1, 1, 1]] {
            assert!(c.contains_labels(&cube));
        }
        assert_eq!(c.len(), 4);
        assert_eq!(close_sym_refl(&c).unwrap(), c);
        let constant = rel(2, &[&[2, 2, 2, 2]]);
        assert_eq!(close_sym_refl(&constant).unwrap(), constant);
    }

    #[test]
    fn tolerance_of_z2_pair_cubes() {
        let z2 = corpus::cyclic(2);
        let opts = ClosureOptions::default();
        let g = rel(2, &[&[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let t = tolerance(&z2, &g, &opts).unwrap();
        assert!(t.contains_labels(&[0, 1, 1, 0]));
        assert!(is_tolerance(&z2, &t));
        assert_eq!(close_under_ops(&z2, &t, &opts).unwrap(), t);
        assert!(close_under_ops(&z2, &rel(2, &[]), &opts)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn pol_k_uses_binary_polynomials() {
        let z2 = corpus::cyclic(2);
        let opts = ClosureOptions::default();
        let g = close_sym_refl(&rel(2, &[&[0, 1, 0, 1]])).unwrap();
        let p = close_pol_k(&z2, &g, &opts).unwrap();
        assert!(p.contains_labels(&[1, 0, 1, 0]));
        assert!(matches!(
            close_pol_k(&z2, &rel(2, &[]), &opts),
            Err(Error::EmptyGenerators)
        ));
        // x + y on cube_0(0,1) and cube_1(0,1)
        let g = close_sym_refl(&rel(2, &[&[0, 1, 0, 1], &[0, 0, 1, 1]])).unwrap();
        assert!(close_pol_k(&z2, &g, &opts)
            .unwrap()
            .contains_labels(&[0, 1, 1, 0]));
    }

    #[test]
    fn unary_polynomials_in_dimension_one() {
        // k = 1: closure under x ↦ x + c with c in the subalgebra {0, 2}
        let z4 = corpus::cyclic(4);
        let g = close_sym_refl(&rel(1, &[&[0, 2]])).unwrap();
        let p = close_pol_k(&z4, &g, &ClosureOptions::default()).unwrap();
        let got: Vec<Vec<usize>> = p.iter().cloned().collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]);
        let g = close_sym_refl(&rel(1, &[&[1, 3]])).unwrap();
        let p = close_pol_k(&z4, &g, &ClosureOptions::default()).unwrap();
        assert_eq!(p.len(), 8);
        assert!(p.contains_labels(&[0, 2]));
    }

    #[test]
    fn dtc_examples() {
        let r = close_sym_refl(&rel(1, &[&[0, 1], &[1, 2]])).unwrap();
        let d = dtc(&r, 0).unwrap();
        assert!(d.contains_labels(&[0, 2]));
        assert_eq!(tc(&r, None).unwrap().len(), 9);
        let unlinked = rel(2, &[&[0, 1, 2, 3]]);
        assert_eq!(dtc(&unlinked, 0).unwrap(), unlinked);
        assert!(dtc(&unlinked, 5).is_err());
    }

    #[test]
    fn theta_of_constant_cube() {
        let z4 = corpus::cyclic(4);
        let g = rel(2, &[&[2, 2, 2, 2]]);
        for route in [Route::BasicOps, Route::PolK] {
            let (t, report) = theta(&z4, &g, route, &ClosureOptions::default()).unwrap();
            let expect = rel(2, &[&[0, 0, 0, 0], &[2, 2, 2, 2]]);
            assert_eq!(t, expect);
            assert_eq!(report.route, route);
        }
        let (empty, _) = theta(
            &z4,
            &rel(2, &[]),
            Route::BasicOps,
            &ClosureOptions::default(),
        )
        .unwrap();
        assert!(empty.is_empty());
        assert!(theta(&z4, &rel(2, &[]), Route::PolK, &ClosureOptions::default()).is_err());
    }

    #[test]
    fn theta_routes_agree_on_z2() {
        let z2 = corpus::cyclic(2);
        let g = CubeRelation::from_cubes(
            CubeShape::normalized(2),
            [LabeledCube::from_pair(CubeShape::normalized(2), 0, 0, 1).unwrap()],
        )
        .unwrap();
        let opts = ClosureOptions::default();
        let (a, _) = theta(&z2, &g, Route::BasicOps, &opts).unwrap();
        let (b, _) = theta(&z2, &g, Route::PolK, &opts).unwrap();
        assert_eq!(a, b);
        assert!(is_higher_congruence(&z2, &a));
        assert!(g.is_subset(&a));
    }

    #[test]
    fn predicates_on_small_relations() {
        let z3 = corpus::cyclic(3);
        let full = CubeRelation::from_label_vecs(
            CubeShape::normalized(2),
            (0..81).map(|c: usize| (0..4).map(|v| c / 3usize.pow(v) % 3).collect()),
        )
        .unwrap();
        assert!(is_higher_congruence(&z3, &full));
        let single = rel(2, &[&[0, 1, 0, 1]]);
        let f = check_symmetric(&single).unwrap();
        assert_eq!(f.missing, vec![1, 0, 1, 0]);
        assert!(!is_reflexive(&single));
        let not_compatible = close_sym_refl(&single).unwrap();
        assert!(check_compatible(&z3, &not_compatible).is_some());
    }

    #[test]
    fn guard_rail() {
        let alg = corpus::cyclic(5);
        let g = rel(3, &[&[0, 1, 0, 1, 0, 1, 0, 1]]);
        let opts = ClosureOptions {
            max_cubes: Some(1000),
            ..Default::default()
        };
        assert!(matches!(
            theta(&alg, &g, Route::BasicOps, &opts),
            Err(Error::CubeSpaceTooLarge { .. })
        ));
    }
}
