use super::labeled::LabeledCube;
use super::shape::CubeShape;
use crate::error::{Error, Result};

/// A labeled `k`-dimensional rectangular complex `γ ∈ A^{n_0 × .. × n_{k-1}}`.
///
/// Labels are stored with the first coordinate varying fastest, the same
/// convention as cube vertices, so a complex with every `n_j = 2` has
/// exactly the label array of the cube it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectComplex<T> {
    shape: CubeShape,
    dims: Vec<usize>,
    labels: Vec<T>,
}

impl<T> RectComplex<T> {
    pub fn new(shape: CubeShape, dims: Vec<usize>, labels: Vec<T>) -> Result<Self> {
        if dims.len() != shape.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions for a {}-dimensional shape",
                dims.len(),
                shape.dim()
            )));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidShape(format!("complex dimension {d} < 2")));
        }
        let len: usize = dims.iter().product();
        if labels.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for a complex with {len} points",
                labels.len()
            )));
        }
        Ok(Self {
            shape,
            dims,
            labels,
        })
    }

    pub fn from_fn(
        shape: CubeShape,
        dims: Vec<usize>,
        mut f: impl FnMut(&[usize]) -> T,
    ) -> Result<Self> {
        let len: usize = dims.iter().product();
        let mut point = vec![0; dims.len()];
        let mut labels = Vec::with_capacity(len);
        for mut off in 0..len {
            for (j, &n) in dims.iter().enumerate() {
                point[j] = off % n;
                off /= n;
            }
            labels.push(f(&point));
        }
        Self::new(shape, dims, labels)
    }

    pub fn shape(&self) -> &CubeShape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[T] {
        &self.labels
    }

    fn offset(&self, point: &[usize]) -> usize {
        let mut off = 0;
        let mut stride = 1;
        for (&p, &n) in point.iter().zip(&self.dims) {
            off += p * stride;
            stride *= n;
        }
        off
    }

    pub fn get(&self, point: &[usize]) -> Result<&T> {
        if point.len() != self.dims.len() || point.iter().zip(&self.dims).any(|(&p, &n)| p >= n) {
            return Err(Error::OutOfRange(format!(
                "point {point:?} in a complex with dimensions {:?}",
                self.dims
            )));
        }
        Ok(&self.labels[self.offset(point)])
    }

    /// Every offset `f ∈ (n_0-1) × .. × (n_{k-1}-1)` of a cell.
    pub fn cell_offsets(&self) -> Vec<Vec<usize>> {
        let cells: Vec<usize> = self.dims.iter().map(|n| n - 1).collect();
        let count: usize = cells.iter().product();
        (0..count)
            .map(|mut c| {
                cells
                    .iter()
                    .map(|&n| {
                        let x = c % n;
                        c /= n;
                        x
                    })
                    .collect()
            })
            .collect()
    }
}

impl<T: Clone> RectComplex<T> {
    /// `Cell_f(γ)`: the unit cube with lowest corner `f`.
    pub fn cell(&self, f: &[usize]) -> Result<LabeledCube<T>> {
        if f.len() != self.dims.len() || f.iter().zip(&self.dims).any(|(&p, &n)| p + 1 >= n) {
            return Err(Error::OutOfRange(format!(
                "cell {f:?} in a complex with dimensions {:?}",
                self.dims
            )));
        }
        let k = self.dims.len();
        let labels = (0..1usize << k)
            .map(|g| {
                let point: Vec<usize> = (0..k).map(|j| f[j] + (g >> j & 1)).collect();
                self.labels[self.offset(&point)].clone()
            })
            .collect();
        LabeledCube::new(self.shape.clone(), labels)
    }

    /// `Corners(γ)`: the labels at the extreme points `g_j·(n_j - 1)`.
    pub fn corners(&self) -> LabeledCube<T> {
        let k = self.dims.len();
        let labels = (0..1usize << k)
            .map(|g| {
                let point: Vec<usize> = (0..k).map(|j| (g >> j & 1) * (self.dims[j] - 1)).collect();
                self.labels[self.offset(&point)].clone()
            })
            .collect();
        LabeledCube::new(self.shape.clone(), labels).expect("corner count matches the shape")
    }

    /// `ζ_i(α)`: the `(n+1)^k` complex with `α` at `χ_{[i+1,∞)}` of each coordinate.
    pub fn expand_zeta(alpha: &LabeledCube<T>, i: usize, n: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::OutOfRange(format!("ζ index {i} for arity {n}")));
        }
        let k = alpha.dim();
        Self::from_fn(alpha.shape().clone(), vec![n + 1; k], |f| {
            let v = (0..k).fold(0, |acc, j| acc | (usize::from(f[j] > i) << j));
            alpha.get(v).clone()
        })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> RectComplex<U> {
        RectComplex {
            shape: self.shape.clone(),
            dims: self.dims.clone(),
            labels: self.labels.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_complex() {
        let c = RectComplex::new(CubeShape::normalized(1), vec![3], vec!['x', 'y', 'z']).unwrap();
        assert_eq!(c.cell(&[0]).unwrap().labels(), &['x', 'y']);
        assert_eq!(c.cell(&[1]).unwrap().labels(), &['y', 'z']);
        assert_eq!(c.corners().labels(), &['x', 'z']);
        assert!(c.cell(&[2]).is_err());
    }

    #[test]
    fn two_dimensional_corners() {
        let c =
            RectComplex::from_fn(CubeShape::normalized(2), vec![3, 2], |f| (f[0], f[1])).unwrap();
        assert_eq!(c.corners().labels(), &[(0, 0), (2, 0), (0, 1), (2, 1)]);
        let unit = RectComplex::from_fn(CubeShape::normalized(2), vec![2, 2], |f| f[0] + 2 * f[1])
            .unwrap();
        assert_eq!(unit.corners(), unit.cell(&[0, 0]).unwrap());
        assert!(RectComplex::new(CubeShape::normalized(1), vec![1], vec![0]).is_err());
    }

    #[test]
    fn zeta_examples() {
        let a = LabeledCube::new(CubeShape::normalized(1), vec!['x', 'y']).unwrap();
        assert_eq!(
            RectComplex::expand_zeta(&a, 0, 2).unwrap().labels(),
            &['x', 'y', 'y']
        );
        let sq = LabeledCube::new(CubeShape::normalized(2), vec!['a', 'b', 'c', 'd']).unwrap();
        let z = RectComplex::expand_zeta(&sq, 1, 2).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                let expect = match (p == 2, q == 2) {
                    (false, false) => 'a',
                    (true, false) => 'b',
                    (false, true) => 'c',
                    (true, true) => 'd',
                };
                assert_eq!(*z.get(&[p, q]).unwrap(), expect);
            }
        }
        for i in 0..2 {
            let z = RectComplex::expand_zeta(&sq, i, 2).unwrap();
            assert_eq!(z.corners(), sq);
            assert_eq!(z.cell(&[i, i]).unwrap(), sq);
        }
        assert!(RectComplex::expand_zeta(&sq, 2, 2).is_err());
    }
}
