//! Centrality, `M`, `Δ` and the two higher commutators.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::closure::{theta, tolerance, ClosureOptions, Route};
use crate::congruence::{all_congruences, cg_from, is_congruence};
use crate::cube::{line_pairs, CubeShape, LabeledCube};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::relation::CubeRelation;

/// Carrier size limit of [`oracle_commutator`] unless overridden.
pub const DEFAULT_ORACLE_MAX_SIZE: usize = 4;

/// A binary relation on labels, used as `δ` in centrality checks.
pub trait PairRelation<T> {
    fn related(&self, a: &T, b: &T) -> bool;
}

impl PairRelation<usize> for Partition {
    fn related(&self, a: &usize, b: &usize) -> bool {
        Partition::related(self, *a, *b)
    }
}

/// Equality, the identity relation on any carrier.
#[derive(Clone, Copy, Debug, Default)]
pub struct Identity;

impl<T: PartialEq> PairRelation<T> for Identity {
    fn related(&self, a: &T, b: &T) -> bool {
        a == b
    }
}

/// A cube with all but exactly one of its direction-`i` line pairs in `δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralityViolation<T> {
    pub coords: Vec<usize>,
    pub cube: Vec<T>,
    pub direction: usize,
    /// Vertices of the `(k-1)`-cube of lines whose pair lies in `δ`.
    pub delta_pairs: Vec<usize>,
    pub offending_vertex: usize,
    pub offending_pair: (T, T),
}

impl<T: Clone> CentralityViolation<T> {
    pub fn labeled_cube(&self) -> LabeledCube<T> {
        LabeledCube::new(
            CubeShape::new(self.coords.clone()).expect("coordinates come from a shape"),
            self.cube.clone(),
        )
        .expect("labels fit the shape")
    }
}

/// The violation carried by one cube, if any.
pub fn cube_violation<T: Clone, D: PairRelation<T>>(
    cube: &LabeledCube<T>,
    delta: &D,
    i: usize,
) -> Result<Option<CentralityViolation<T>>> {
    let bit = cube.shape().position(i)?;
    Ok(labels_violation(cube.shape(), cube.labels(), delta, i, bit))
}

fn labels_violation<T: Clone, D: PairRelation<T>>(
    shape: &CubeShape,
    labels: &[T],
    delta: &D,
    i: usize,
    bit: usize,
) -> Option<CentralityViolation<T>> {
    let mut inside = Vec::new();
    let mut outside = None;
    for (g, (a, b)) in line_pairs(labels, bit).enumerate() {
        if delta.related(a, b) {
            inside.push(g);
        } else if outside.is_some() {
            return None;
        } else {
            outside = Some((g, (a.clone(), b.clone())));
        }
    }
    let (offending_vertex, offending_pair) = outside?;
    Some(CentralityViolation {
        coords: shape.coords().to_vec(),
        cube: labels.to_vec(),
        direction: i,
        delta_pairs: inside,
        offending_vertex,
        offending_pair,
    })
}

/// First cube of `r`, in sorted order, violating `(δ, i)`-centrality.
pub fn check_centrality<T, D>(
    r: &CubeRelation<T>,
    delta: &D,
    i: usize,
) -> Result<Option<CentralityViolation<T>>>
where
    T: Ord + Clone + Send + Sync,
    D: PairRelation<T> + Sync,
{
    let bit = r.shape().position(i)?;
    let cubes: Vec<&Vec<T>> = r.iter().collect();
    Ok(cubes
        .par_iter()
        .find_map_first(|c| labels_violation(r.shape(), c, delta, i, bit)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// Term condition commutator, centrality over `M`.
    #[default]
    Tc,
    /// Hypercommutator, centrality over `Δ`.
    Hyper,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Tc => "tc",
            Kind::Hyper => "hyper",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommutatorOptions {
    pub closure: ClosureOptions,
    /// Route used for `Δ`.
    pub route: Route,
    /// Centrality direction; `None` means the greatest coordinate.
    pub direction: Option<usize>,
}

/// One step of the fixpoint: the violation found against `delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub delta: Partition,
    pub violation: CentralityViolation<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorResult {
    pub kind: Kind,
    pub value: Partition,
    pub direction: usize,
    pub relation_size: usize,
    pub witness_trace: Vec<TraceStep>,
}

fn validate(alg: &FiniteAlgebra, thetas: &[Partition]) -> Result<CubeShape> {
    if thetas.len() < 2 {
        return Err(Error::ArityTooSmall(thetas.len()));
    }
    for (j, t) in thetas.iter().enumerate() {
        if t.size() != alg.size() {
            return Err(Error::ShapeMismatch(format!(
                "argument {j} is a partition of {} elements, the algebra has {}",
                t.size(),
                alg.size()
            )));
        }
        if !is_congruence(alg, t) {
            return Err(Error::NotACongruence(format!("argument {j} = {t}")));
        }
    }
    Ok(CubeShape::normalized(thetas.len()))
}

fn generators(shape: &CubeShape, thetas: &[Partition]) -> CubeRelation<usize> {
    let mut g = CubeRelation::new(shape.clone());
    for (&i, t) in shape.coords().iter().zip(thetas) {
        for x in 0..t.size() {
            for y in 0..t.size() {
                if t.related(x, y) {
                    g.insert(
                        LabeledCube::from_pair(shape.clone(), i, x, y)
                            .expect("coordinate of the shape"),
                    )
                    .expect("shape matches");
                }
            }
        }
    }
    g
}

/// `M(θ_0, .., θ_{k-1})`: the tolerance generated by the cubes `cube_i(x, y)`, `(x, y) ∈ θ_i`.
pub fn matrices(
    alg: &FiniteAlgebra,
    thetas: &[Partition],
    opts: &ClosureOptions,
) -> Result<CubeRelation<usize>> {
    let shape = validate_shape(alg, thetas)?;
    tolerance(alg, &generators(&shape, thetas), opts)
}

/// `Δ(θ_0, .., θ_{k-1})`: the higher congruence generated by the same cubes.
pub fn delta(
    alg: &FiniteAlgebra,
    thetas: &[Partition],
    route: Route,
    opts: &ClosureOptions,
) -> Result<CubeRelation<usize>> {
    let shape = validate_shape(alg, thetas)?;
    theta(alg, &generators(&shape, thetas), route, opts).map(|(r, _)| r)
}

/// Like [`validate`] but also accepts a single argument, since `M` and `Δ`
/// make sense in dimension one.
fn validate_shape(alg: &FiniteAlgebra, thetas: &[Partition]) -> Result<CubeShape> {
    if thetas.is_empty() {
        return Err(Error::ArityTooSmall(0));
    }
    if thetas.len() == 1 {
        let mut two = thetas.to_vec();
        two.push(thetas[0].clone());
        validate(alg, &two)?;
        return Ok(CubeShape::normalized(1));
    }
    validate(alg, thetas)
}

fn relation_for(
    alg: &FiniteAlgebra,
    thetas: &[Partition],
    kind: Kind,
    opts: &CommutatorOptions,
) -> Result<(CubeRelation<usize>, usize)> {
    let shape = validate(alg, thetas)?;
    let direction = match opts.direction {
        Some(d) => {
            shape.position(d)?;
            d
        }
        None => shape.max_coord().expect("at least two coordinates"),
    };
    let r = match kind {
        Kind::Tc => matrices(alg, thetas, &opts.closure)?,
        Kind::Hyper => delta(alg, thetas, opts.route, &opts.closure)?,
    };
    Ok((r, direction))
}

/// Least `δ ∈ Con(alg)` such that `r` has `(δ, i)`-centrality.
///
/// Congruences with centrality are closed under meets, so starting from the
/// identity and merging each offending pair reaches the least one.
pub fn least_central(
    alg: &FiniteAlgebra,
    r: &CubeRelation<usize>,
    i: usize,
) -> Result<(Partition, Vec<TraceStep>)> {
    let mut delta = Partition::identity(alg.size());
    let mut trace = Vec::new();
    while let Some(v) = check_centrality(r, &delta, i)? {
        let (a, b) = v.offending_pair;
        let next = cg_from(alg, &delta, &[(a, b)])?;
        trace.push(TraceStep {
            delta,
            violation: v,
        });
        delta = next;
    }
    Ok((delta, trace))
}

/// `[θ_0, .., θ_{k-1}]` of the given kind, centrality taken in the greatest direction.
pub fn commutator(
    alg: &FiniteAlgebra,
    thetas: &[Partition],
    kind: Kind,
    opts: &CommutatorOptions,
) -> Result<CommutatorResult> {
    let (r, direction) = relation_for(alg, thetas, kind, opts)?;
    let (value, witness_trace) = least_central(alg, &r, direction)?;
    Ok(CommutatorResult {
        kind,
        value,
        direction,
        relation_size: r.len(),
        witness_trace,
    })
}

/// The commutator read literally: the meet of every congruence with centrality.
pub fn oracle_commutator(
    alg: &FiniteAlgebra,
    thetas: &[Partition],
    kind: Kind,
    opts: &CommutatorOptions,
    max_size: usize,
) -> Result<Partition> {
    if alg.size() > max_size {
        return Err(Error::SizeLimit {
            what: "commutator oracle",
            size: alg.size(),
            limit: max_size,
        });
    }
    let (r, direction) = relation_for(alg, thetas, kind, opts)?;
    let mut out = Partition::full(alg.size());
    for d in all_congruences(alg, max_size)? {
        if check_centrality(&r, &d, direction)?.is_none() {
            out = out.meet(&d)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn full_full(n: usize) -> Vec<Partition> {
        vec![Partition::full(n), Partition::full(n)]
    }

    #[test]
    fn constant_cube_is_central() {
        let r = CubeRelation::from_cubes(
            CubeShape::normalized(2),
            [LabeledCube::constant(CubeShape::normalized(2), 3)],
        )
        .unwrap();
        assert!(check_centrality(&r, &Identity, 1).unwrap().is_none());
        assert!(check_centrality(&r, &Identity, 4).is_err());
    }

    #[test]
    fn violation_fields() {
        let cube = LabeledCube::new(CubeShape::normalized(2), vec![3, 3, 7, 9]).unwrap();
        let v = cube_violation(&cube, &Identity, 0).unwrap().unwrap();
        assert_eq!(v.delta_pairs, vec![0]);
        assert_eq!(v.offending_pair, (7, 9));
        assert_eq!(v.offending_vertex, 1);
        assert!(cube_violation(&cube, &Identity, 1).unwrap().is_none());
    }

    #[test]
    fn z4_is_abelian() {
        let z4 = corpus::cyclic(4);
        let opts = CommutatorOptions::default();
        let r = commutator(&z4, &full_full(4), Kind::Tc, &opts).unwrap();
        assert!(r.value.is_identity());
        assert!(r.witness_trace.is_empty());
        assert!(oracle_commutator(&z4, &full_full(4), Kind::Tc, &opts, 4)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn s3_commutator_is_a3() {
        let s3 = corpus::s3();
        let opts = CommutatorOptions::default();
        for kind in [Kind::Tc, Kind::Hyper] {
            let r = commutator(&s3, &full_full(6), kind, &opts).unwrap();
            assert_eq!(r.value, corpus::s3_a3_cosets(), "{kind:?}");
            assert!(!r.witness_trace.is_empty());
        }
    }

    #[test]
    fn argument_validation() {
        let z4 = corpus::cyclic(4);
        let opts = CommutatorOptions::default();
        assert!(matches!(
            commutator(&z4, &[Partition::full(4)], Kind::Tc, &opts),
            Err(Error::ArityTooSmall(1))
        ));
        let bad = Partition::from_blocks(4, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            commutator(&z4, &[bad, Partition::full(4)], Kind::Tc, &opts),
            Err(Error::NotACongruence(_))
        ));
        assert!(oracle_commutator(&corpus::s3(), &full_full(6), Kind::Tc, &opts, 4).is_err());
        let wrong_dir = CommutatorOptions {
            direction: Some(5),
            ..Default::default()
        };
        assert!(commutator(&z4, &full_full(4), Kind::Tc, &wrong_dir).is_err());
    }

    #[test]
    fn one_element_algebra() {
        let one = FiniteAlgebra::new(
            "one",
            1,
            vec![crate::algebra::OperationTable::new("f", 2, vec![0])],
        )
        .unwrap();
        let opts = CommutatorOptions::default();
        for kind in [Kind::Tc, Kind::Hyper] {
            assert!(commutator(&one, &full_full(1), kind, &opts)
                .unwrap()
                .value
                .is_identity());
            assert!(oracle_commutator(&one, &full_full(1), kind, &opts, 4)
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn matrices_of_z2() {
        let z2 = corpus::cyclic(2);
        let m = matrices(&z2, &full_full(2), &ClosureOptions::default()).unwrap();
        assert!(m.contains_labels(&[0, 1, 1, 0]));
        let ids = vec![Partition::identity(2), Partition::identity(2)];
        let m = matrices(&z2, &ids, &ClosureOptions::default()).unwrap();
        assert!(m.iter().all(|c| c.iter().all(|&x| x == c[0])));
    }
}
