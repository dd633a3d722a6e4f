//! Explicit non-central cubes in the counterexample algebras.

use serde::Serialize;

use super::family::{Family, Model};
use super::free::FreeValue;
use crate::closure::dtc;
use crate::commutator::{cube_violation, CentralityViolation, Identity};
use crate::cube::{CubeShape, LabeledCube};
use crate::error::{Error, Result};
use crate::relation::CubeRelation;

/// A cube of the algebra's `M` or `Δ` whose lines in `direction` are all
/// equal but one.
pub struct Witness {
    pub model: Model,
    pub construction: String,
    pub cube: LabeledCube<FreeValue>,
    pub violation: CentralityViolation<FreeValue>,
    /// Cubes the witness was glued from, if any.
    pub pieces: Vec<LabeledCube<FreeValue>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub family: String,
    pub dimension: usize,
    pub construction: String,
    pub cube: Vec<String>,
    pub direction: usize,
    pub delta_pairs: Vec<usize>,
    pub offending_vertex: usize,
    pub offending_pair: (String, String),
    pub pieces: Vec<Vec<String>>,
}

impl Witness {
    fn new(
        model: Model,
        construction: String,
        cube: LabeledCube<FreeValue>,
        direction: usize,
    ) -> Result<Self> {
        let violation = cube_violation(&cube, &Identity, direction)?.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "{construction} = {:?} is central in direction {direction}",
                model.render_cube(&cube)
            ))
        })?;
        Ok(Self {
            model,
            construction,
            cube,
            violation,
            pieces: Vec::new(),
        })
    }

    pub fn report(&self) -> WitnessReport {
        let st = self.model.store();
        let (a, b) = self.violation.offending_pair;
        WitnessReport {
            family: self.model.family().name(),
            dimension: self.cube.dim(),
            construction: self.construction.clone(),
            cube: self.model.render_cube(&self.cube),
            direction: self.violation.direction,
            delta_pairs: self.violation.delta_pairs.clone(),
            offending_vertex: self.violation.offending_vertex,
            offending_pair: (st.render(a), st.render(b)),
            pieces: self
                .pieces
                .iter()
                .map(|p| self.model.render_cube(p))
                .collect(),
        }
    }

    pub fn rendered(&self) -> Vec<String> {
        self.model.render_cube(&self.cube)
    }
}

/// `t(cube_1(0,1), cube_1(0,2), cube_0(0,1))` in ℂ, an element of `M(1_ℂ, 1_ℂ)`
/// that fails `(0_ℂ, 1)`-centrality. Its transpose is the square
/// `(3, 3, s(0,0,1), s(1,2,1))`.
pub fn direct_tc_witness() -> Result<Witness> {
    let model = Model::new(Family::C)?;
    let args = [
        Model::pair_cube(2, 1, 0, 1)?,
        Model::pair_cube(2, 1, 0, 2)?,
        Model::pair_cube(2, 0, 0, 1)?,
    ];
    let cube = model.eval_cubes(&args)?;
    Witness::new(
        model,
        "t(cube_1(0,1), cube_1(0,2), cube_0(0,1))".into(),
        cube,
        1,
    )
}

/// `η = t_k(cube_0(0,1), cube_0(0,2), cube_1(0,3), .., cube_{k-1}(0,k+1))` in
/// ℂ_k: every vertex lands in the special domain except the all-ones vertex,
/// so exactly one line in direction `k-1` is not constant.
pub fn eta_witness(k: usize) -> Result<Witness> {
    let fam = Family::new_ck(k)?;
    let model = Model::new(fam)?;
    let mut args = vec![Model::pair_cube(k, 0, 0, 1)?, Model::pair_cube(k, 0, 0, 2)?];
    let mut parts = vec!["cube_0(0,1)".to_string(), "cube_0(0,2)".to_string()];
    for i in 1..k {
        args.push(Model::pair_cube(k, i, 0, i as u32 + 2)?);
        parts.push(format!("cube_{i}(0,{})", i + 2));
    }
    let cube = model.eval_cubes(&args)?;
    Witness::new(model, format!("t_{k}({})", parts.join(", ")), cube, k - 1)
}

/// A cube of `Δ(1_ℂ, 1_ℂ)` glued from two binary-polynomial squares of `M`:
/// `t(cube_0(0,1), 0, cube_1(0,1))` and `t(1, cube_0(0,2), cube_1(0,1))`
/// share a direction-0 face, so direction-0 transitivity joins their outer
/// faces into `(3, 3, s(0,0,1), s(1,2,1))`. Swapping the coordinates moves
/// the defect to direction 1.
pub fn glued_hyper_witness() -> Result<Witness> {
    let model = Model::new(Family::C)?;
    let shape = CubeShape::normalized(2);
    let konst = |v: u32| LabeledCube::constant(shape.clone(), FreeValue::nat(v));
    let square1 = model.eval_cubes(&[
        Model::pair_cube(2, 0, 0, 1)?,
        konst(0),
        Model::pair_cube(2, 1, 0, 1)?,
    ])?;
    let square2 = model.eval_cubes(&[
        konst(1),
        Model::pair_cube(2, 0, 0, 2)?,
        Model::pair_cube(2, 1, 0, 1)?,
    ])?;
    let (_, shared) = square1.faces(0)?;
    let (shared2, _) = square2.faces(0)?;
    if shared != shared2 {
        return Err(Error::InvalidParameter(
            "glued squares do not share a face".into(),
        ));
    }
    let (outer0, _) = square1.faces(0)?;
    let (_, outer1) = square2.faces(0)?;
    let glued = LabeledCube::glue_faces(&outer0, &outer1, 0)?;
    let pair = CubeRelation::from_cubes(shape, [square1.clone(), square2.clone()])?;
    if !dtc(&pair, 0)?.contains(&glued) {
        return Err(Error::InvalidParameter(
            "glued square missing from the transitive closure".into(),
        ));
    }
    let cube = glued.transpose(0, 1)?;
    let mut w = Witness::new(
        model,
        "transpose of the direction-0 composite of t(cube_0(0,1), 0, cube_1(0,1)) and t(1, cube_0(0,2), cube_1(0,1))"
            .into(),
        cube,
        1,
    )?;
    w.pieces = vec![square1, square2, glued];
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_witness_in_c() {
        let w = direct_tc_witness().unwrap();
        assert_eq!(w.rendered(), vec!["3", "(s 0 0 1)", "3", "(s 1 2 1)"]);
        let t = w.cube.transpose(0, 1).unwrap();
        assert_eq!(
            w.model.render_cube(&t),
            vec!["3", "3", "(s 0 0 1)", "(s 1 2 1)"]
        );
        // the transpose carries its defect in direction 0 instead
        assert!(cube_violation(&t, &Identity, 1).unwrap().is_none());
        assert!(cube_violation(&t, &Identity, 0).unwrap().is_some());
        let r = w.report();
        assert_eq!(r.direction, 1);
        assert_eq!(
            r.offending_pair,
            ("(s 0 0 1)".to_string(), "(s 1 2 1)".to_string())
        );
        assert_eq!(r.delta_pairs, vec![0]);
    }

    #[test]
    fn eta_for_small_k() {
        for k in 2..=5 {
            let w = eta_witness(k).unwrap();
            let labels = w.rendered();
            let special = (k + 2).to_string();
            let top = (1 << k) - 1;
            for (v, l) in labels.iter().enumerate() {
                if v == top {
                    assert!(l.starts_with(&format!("(t_{k} 1 2 3")), "{l}");
                } else {
                    assert_eq!(l, &special);
                }
            }
            assert_eq!(w.violation.direction, k - 1);
            assert_eq!(w.violation.delta_pairs.len(), (1 << (k - 1)) - 1);
            // a single odd vertex spoils exactly one line in every direction
            for i in 0..k {
                assert!(cube_violation(&w.cube, &Identity, i).unwrap().is_some());
            }
        }
        assert!(eta_witness(1).is_err());
    }

    #[test]
    fn glued_witness() {
        let w = glued_hyper_witness().unwrap();
        let pieces: Vec<Vec<String>> = w.pieces.iter().map(|p| w.model.render_cube(p)).collect();
        assert_eq!(pieces[0], vec!["3", "(s 1 0 0)", "(s 0 0 1)", "(s 1 0 1)"]);
        assert_eq!(pieces[1], vec!["(s 1 0 0)", "3", "(s 1 0 1)", "(s 1 2 1)"]);
        assert_eq!(pieces[2], vec!["3", "3", "(s 0 0 1)", "(s 1 2 1)"]);
        assert_eq!(w.rendered(), vec!["3", "(s 0 0 1)", "3", "(s 1 2 1)"]);
        assert_eq!(w.report().direction, 1);
        // neither piece violates centrality by itself
        for p in &w.pieces[..2] {
            for i in 0..2 {
                assert!(cube_violation(p, &Identity, i).unwrap().is_none());
            }
        }
    }
}
