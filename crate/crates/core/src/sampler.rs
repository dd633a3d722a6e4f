//! Random rectangular complexes whose cells all lie in a given relation.
//!
//! Used to test contraction: a higher congruence must contain the corners of
//! every such complex.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cube::{CubeShape, RectComplex};
use crate::error::Result;
use crate::relation::{CubeRelation, FaceIndex};

/// Backtracking steps allowed per complex before giving up.
pub const DEFAULT_BUDGET: usize = 20_000;

/// Fills complexes cell by cell, drawing candidates from the relation.
pub struct ComplexSampler<'a> {
    rel: &'a CubeRelation<usize>,
    all: Vec<Vec<usize>>,
    faces: Vec<FaceIndex<usize>>,
    dims: Vec<usize>,
    cells: Vec<Vec<usize>>,
    budget: usize,
    left: usize,
}

impl<'a> ComplexSampler<'a> {
    /// `dims[j]` is the number of points along coordinate `j`; the relation
    /// must have dimension `dims.len()`.
    pub fn new(rel: &'a CubeRelation<usize>, dims: Vec<usize>) -> Result<Self> {
        let k = dims.len();
        let faces = (0..k).map(|i| rel.face_index(i)).collect::<Result<_>>()?;
        let blank = RectComplex::new(
            CubeShape::normalized(k),
            dims.clone(),
            vec![0; dims.iter().product()],
        )?;
        Ok(Self {
            rel,
            all: rel.iter().cloned().collect(),
            faces,
            cells: blank.cell_offsets(),
            dims,
            budget: DEFAULT_BUDGET,
            left: 0,
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn relation(&self) -> &'a CubeRelation<usize> {
        self.rel
    }

    fn offset(&self, point: &[usize]) -> usize {
        point
            .iter()
            .zip(&self.dims)
            .rev()
            .fold(0, |acc, (&p, &n)| acc * n + p)
    }

    fn point(&self, f: &[usize], v: usize) -> usize {
        let p: Vec<usize> = f
            .iter()
            .enumerate()
            .map(|(j, &x)| x + (v >> j & 1))
            .collect();
        self.offset(&p)
    }

    /// A random complex with every cell in the relation, or `None` when the
    /// budget runs out first.
    pub fn sample<R: Rng>(&mut self, rng: &mut R) -> Option<RectComplex<usize>> {
        let mut labels: Vec<Option<usize>> = vec![None; self.dims.iter().product()];
        self.left = self.budget;
        if !self.fill(0, &mut labels, rng) {
            return None;
        }
        let labels = labels
            .into_iter()
            .map(|l| l.expect("every point lies in a cell"))
            .collect();
        RectComplex::new(
            CubeShape::normalized(self.dims.len()),
            self.dims.clone(),
            labels,
        )
        .ok()
    }

    fn fill<R: Rng>(&mut self, c: usize, labels: &mut [Option<usize>], rng: &mut R) -> bool {
        if c == self.cells.len() {
            return true;
        }
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        let f = self.cells[c].clone();
        let k = f.len();
        let verts = 1 << k;
        let pts: Vec<usize> = (0..verts).map(|v| self.point(&f, v)).collect();
        // a filled lower neighbour fixes a whole face; look candidates up by it
        let mut cands: Vec<&Vec<usize>> = match (0..k).find(|&j| f[j] > 0) {
            Some(j) => {
                let face: Vec<usize> = (0..verts)
                    .filter(|v| v >> j & 1 == 0)
                    .map(|v| labels[pts[v]].expect("lower neighbour filled"))
                    .collect();
                self.faces[j].with_face0(&face).iter().collect()
            }
            None => self.all.iter().collect(),
        };
        cands.retain(|cube| (0..verts).all(|v| labels[pts[v]].is_none_or(|l| l == cube[v])));
        cands.shuffle(rng);
        let cands: Vec<Vec<usize>> = cands.into_iter().cloned().collect();
        for cube in cands {
            let fresh: Vec<usize> = (0..verts).filter(|&v| labels[pts[v]].is_none()).collect();
            for &v in &fresh {
                labels[pts[v]] = Some(cube[v]);
            }
            if self.fill(c + 1, labels, rng) {
                return true;
            }
            for &v in &fresh {
                labels[pts[v]] = None;
            }
            if self.left == 0 {
                return false;
            }
        }
        false
    }
}
