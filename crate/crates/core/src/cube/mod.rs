//! Labeled cubes, rectangular complexes and coordinate operators.

mod complex;
mod labeled;
mod shape;

pub use complex::RectComplex;
pub use labeled::LabeledCube;
pub use shape::CubeShape;

pub(crate) use labeled::{face_labels, glue_labels, line_pairs, refl_labels, sym_labels};

use crate::algebra::{FiniteAlgebra, OperationTable};
use crate::error::{Error, Result};

/// Vertexwise `t(γ_0, .., γ_{n-1})`.
///
/// A nullary operation has no argument to take the shape from, so it is
/// applied through [`constant_op_cube`] instead.
pub fn apply_op_to_cubes(
    alg: &FiniteAlgebra,
    op_name: &str,
    cubes: &[LabeledCube<usize>],
) -> Result<LabeledCube<usize>> {
    let op = alg.operation(op_name)?;
    check_args(op, cubes.len())?;
    let Some(first) = cubes.first() else {
        return Err(Error::InvalidParameter(format!(
            "nullary operation `{op_name}` needs an explicit shape"
        )));
    };
    let shape = first.shape();
    if cubes.iter().any(|c| c.shape() != shape) {
        return Err(Error::ShapeMismatch(
            "argument cubes differ in shape".into(),
        ));
    }
    for c in cubes {
        for &l in c.labels() {
            alg.check_element(l)?;
        }
    }
    let mut args = vec![0; cubes.len()];
    let labels = (0..shape.vertex_count())
        .map(|v| {
            for (a, c) in args.iter_mut().zip(cubes) {
                *a = *c.get(v);
            }
            alg.apply(op, &args)
        })
        .collect();
    LabeledCube::new(shape.clone(), labels)
}

/// The constant cube of a nullary operation's value.
pub fn constant_op_cube(
    alg: &FiniteAlgebra,
    op_name: &str,
    shape: CubeShape,
) -> Result<LabeledCube<usize>> {
    let op = alg.operation(op_name)?;
    check_args(op, 0)?;
    Ok(LabeledCube::constant(shape, alg.apply(op, &[])))
}

/// Vertexwise application to rectangular complexes of one shape.
pub fn apply_op_to_complexes(
    alg: &FiniteAlgebra,
    op_name: &str,
    complexes: &[RectComplex<usize>],
) -> Result<RectComplex<usize>> {
    let op = alg.operation(op_name)?;
    check_args(op, complexes.len())?;
    let Some(first) = complexes.first() else {
        return Err(Error::InvalidParameter(format!(
            "nullary operation `{op_name}` needs an explicit shape"
        )));
    };
    if complexes
        .iter()
        .any(|c| c.dims() != first.dims() || c.shape() != first.shape())
    {
        return Err(Error::ShapeMismatch(
            "argument complexes differ in shape".into(),
        ));
    }
    let mut args = vec![0; complexes.len()];
    let labels = (0..first.labels().len())
        .map(|p| {
            for (a, c) in args.iter_mut().zip(complexes) {
                *a = c.labels()[p];
            }
            alg.apply(op, &args)
        })
        .collect();
    RectComplex::new(first.shape().clone(), first.dims().to_vec(), labels)
}

fn check_args(op: &OperationTable, found: usize) -> Result<()> {
    if op.arity != found {
        return Err(Error::ArityMismatch {
            op: op.name.clone(),
            expected: op.arity,
            found,
        });
    }
    Ok(())
}
