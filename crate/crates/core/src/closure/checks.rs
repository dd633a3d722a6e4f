//! Direct checks of the defining properties of higher-dimensional relations.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::cube::{face_labels, refl_labels, sym_labels, LabeledCube};
use crate::relation::CubeRelation;

/// Why a relation fails a property: the cubes in it that demand `missing`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckFailure<T> {
    pub property: &'static str,
    pub direction: Option<usize>,
    pub operation: Option<String>,
    pub witnesses: Vec<Vec<T>>,
    pub missing: Vec<T>,
}

impl<T: Ord + Clone> CheckFailure<T> {
    pub fn missing_cube(&self, r: &CubeRelation<T>) -> LabeledCube<T> {
        LabeledCube::new(r.shape().clone(), self.missing.clone())
            .expect("missing cube fits the shape")
    }
}

/// Quasireflexivity in every direction, i.e. closure under every `refl_i^j`.
pub fn check_reflexive<T: Ord + Clone>(r: &CubeRelation<T>) -> Option<CheckFailure<T>> {
    for (bit, &i) in r.shape().coords().iter().enumerate() {
        for c in r.iter() {
            for side in 0..2 {
                let img = refl_labels(c, bit, side);
                if !r.contains_labels(&img) {
                    return Some(CheckFailure {
                        property: "reflexive",
                        direction: Some(i),
                        operation: None,
                        witnesses: vec![c.clone()],
                        missing: img,
                    });
                }
            }
        }
    }
    None
}

pub fn check_symmetric<T: Ord + Clone>(r: &CubeRelation<T>) -> Option<CheckFailure<T>> {
    for (bit, &i) in r.shape().coords().iter().enumerate() {
        for c in r.iter() {
            let img = sym_labels(c, bit);
            if !r.contains_labels(&img) {
                return Some(CheckFailure {
                    property: "symmetric",
                    direction: Some(i),
                    operation: None,
                    witnesses: vec![c.clone()],
                    missing: img,
                });
            }
        }
    }
    None
}

pub fn check_transitive<T: Ord + Clone>(r: &CubeRelation<T>) -> Option<CheckFailure<T>> {
    for (bit, &i) in r.shape().coords().iter().enumerate() {
        let idx = r.face_index(i).expect("direction taken from the shape");
        for c in r.iter() {
            let a = face_labels(c, bit, 0);
            let b = face_labels(c, bit, 1);
            for d in idx.with_face0(&b) {
                let e = face_labels(d, bit, 1);
                let glued = r
                    .glue_pair(i, &a, &e)
                    .expect("direction taken from the shape");
                if !r.contains_labels(&glued) {
                    return Some(CheckFailure {
                        property: "transitive",
                        direction: Some(i),
                        operation: None,
                        witnesses: vec![c.clone(), d.clone()],
                        missing: glued,
                    });
                }
            }
        }
    }
    None
}

/// Closure under vertexwise application of every basic operation.
pub fn check_compatible(
    alg: &FiniteAlgebra,
    r: &CubeRelation<usize>,
) -> Option<CheckFailure<usize>> {
    if r.is_empty() {
        return None;
    }
    let cubes: Vec<&Vec<usize>> = r.iter().collect();
    let members: HashSet<&[usize]> = cubes.iter().map(|c| c.as_slice()).collect();
    let verts = r.shape().vertex_count();
    let n = alg.size();
    for op in alg.operations() {
        let a = op.arity;
        if a == 0 {
            let img = vec![alg.apply(op, &[]); verts];
            if !members.contains(img.as_slice()) {
                return Some(CheckFailure {
                    property: "compatible",
                    direction: None,
                    operation: Some(op.name.clone()),
                    witnesses: vec![],
                    missing: img,
                });
            }
            continue;
        }
        let rest = cubes.len().pow(a as u32 - 1);
        let found = (0..cubes.len()).into_par_iter().find_map_first(|first| {
            let mut img = vec![0; verts];
            let mut idx = vec![0; a];
            idx[0] = first;
            for mut t in 0..rest {
                for slot in idx[1..].iter_mut().rev() {
                    *slot = t % cubes.len();
                    t /= cubes.len();
                }
                for (v, x) in img.iter_mut().enumerate() {
                    *x = op.table[idx.iter().fold(0, |row, &i| row * n + cubes[i][v])];
                }
                if !members.contains(img.as_slice()) {
                    return Some((idx.clone(), img));
                }
            }
            None
        });
        if let Some((idx, img)) = found {
            return Some(CheckFailure {
                property: "compatible",
                direction: None,
                operation: Some(op.name.clone()),
                witnesses: idx.iter().map(|&i| cubes[i].clone()).collect(),
                missing: img,
            });
        }
    }
    None
}

/// Reflexive, symmetric and compatible.
pub fn check_tolerance(
    alg: &FiniteAlgebra,
    r: &CubeRelation<usize>,
) -> Option<CheckFailure<usize>> {
    check_reflexive(r)
        .or_else(|| check_symmetric(r))
        .or_else(|| check_compatible(alg, r))
}

/// A tolerance that is also transitive in every direction.
pub fn check_higher_congruence(
    alg: &FiniteAlgebra,
    r: &CubeRelation<usize>,
) -> Option<CheckFailure<usize>> {
    check_tolerance(alg, r).or_else(|| check_transitive(r))
}

pub fn is_reflexive<T: Ord + Clone>(r: &CubeRelation<T>) -> bool {
    check_reflexive(r).is_none()
}

pub fn is_symmetric<T: Ord + Clone>(r: &CubeRelation<T>) -> bool {
    check_symmetric(r).is_none()
}

pub fn is_transitive<T: Ord + Clone>(r: &CubeRelation<T>) -> bool {
    check_transitive(r).is_none()
}

pub fn is_tolerance(alg: &FiniteAlgebra, r: &CubeRelation<usize>) -> bool {
    check_tolerance(alg, r).is_none()
}

pub fn is_higher_congruence(alg: &FiniteAlgebra, r: &CubeRelation<usize>) -> bool {
    check_higher_congruence(alg, r).is_none()
}
