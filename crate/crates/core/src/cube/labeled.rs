use std::collections::BTreeMap;
use std::fmt;

use super::shape::{deposit, insert_bit, CubeShape};
use crate::error::{Error, Result};

/// A labeling `γ ∈ A^{2^S}` of the vertices of a cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledCube<T> {
    shape: CubeShape,
    labels: Vec<T>,
}

impl<T> LabeledCube<T> {
    pub fn new(shape: CubeShape, labels: Vec<T>) -> Result<Self> {
        if labels.len() != shape.vertex_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for a cube with {} vertices",
                labels.len(),
                shape.vertex_count()
            )));
        }
        Ok(Self { shape, labels })
    }

    pub fn shape(&self) -> &CubeShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn labels(&self) -> &[T] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<T> {
        self.labels
    }

    /// Label at vertex index `v`.
    pub fn get(&self, v: usize) -> &T {
        &self.labels[v]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> LabeledCube<U> {
        LabeledCube {
            shape: self.shape.clone(),
            labels: self.labels.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> LabeledCube<T> {
    pub fn constant(shape: CubeShape, value: T) -> Self {
        let labels = vec![value; shape.vertex_count()];
        Self { shape, labels }
    }

    /// `cube_i(x, y)`: label `x` where `f_i = 0`, `y` where `f_i = 1`.
    pub fn from_pair(shape: CubeShape, i: usize, x: T, y: T) -> Result<Self> {
        let bit = shape.position(i)?;
        let labels = (0..shape.vertex_count())
            .map(|v| {
                if v >> bit & 1 == 0 {
                    x.clone()
                } else {
                    y.clone()
                }
            })
            .collect();
        Ok(Self { shape, labels })
    }

    /// `cut_Q`: the cube over `Q` whose vertex `f` carries the cube
    /// `g ↦ γ_{f ∪ g}` over `S ∖ Q`.
    pub fn cut(&self, q: &CubeShape) -> Result<LabeledCube<LabeledCube<T>>> {
        let rest = self.shape.difference(q)?;
        let qpos: Vec<usize> = q
            .coords()
            .iter()
            .map(|&c| self.shape.position(c))
            .collect::<Result<_>>()?;
        let rpos: Vec<usize> = rest
            .coords()
            .iter()
            .map(|&c| self.shape.position(c))
            .collect::<Result<_>>()?;
        let outer = (0..q.vertex_count())
            .map(|f| {
                let base = deposit(f, &qpos);
                LabeledCube {
                    shape: rest.clone(),
                    labels: (0..rest.vertex_count())
                        .map(|g| self.labels[base | deposit(g, &rpos)].clone())
                        .collect(),
                }
            })
            .collect();
        Ok(LabeledCube {
            shape: q.clone(),
            labels: outer,
        })
    }

    /// Inverse of [`LabeledCube::cut`].
    pub fn glue(outer: &LabeledCube<LabeledCube<T>>) -> Result<LabeledCube<T>> {
        let q = outer.shape();
        let rest = outer.labels[0].shape().clone();
        if outer.labels.iter().any(|c| c.shape() != &rest) {
            return Err(Error::ShapeMismatch("inner cubes differ in shape".into()));
        }
        let shape = q.union(&rest)?;
        let qpos: Vec<usize> = q
            .coords()
            .iter()
            .map(|&c| shape.position(c))
            .collect::<Result<_>>()?;
        let rpos: Vec<usize> = rest
            .coords()
            .iter()
            .map(|&c| shape.position(c))
            .collect::<Result<_>>()?;
        let mut labels: Vec<Option<T>> = vec![None; shape.vertex_count()];
        for (f, inner) in outer.labels.iter().enumerate() {
            let base = deposit(f, &qpos);
            for (g, label) in inner.labels.iter().enumerate() {
                labels[base | deposit(g, &rpos)] = Some(label.clone());
            }
        }
        Ok(LabeledCube {
            shape,
            labels: labels
                .into_iter()
                .map(|l| l.expect("every vertex is covered"))
                .collect(),
        })
    }

    /// `(faces_i^0(γ), faces_i^1(γ))`.
    pub fn faces(&self, i: usize) -> Result<(LabeledCube<T>, LabeledCube<T>)> {
        let bit = self.shape.position(i)?;
        let shape = self.shape.difference(&CubeShape::new(vec![i])?)?;
        Ok((
            LabeledCube {
                shape: shape.clone(),
                labels: face_labels(&self.labels, bit, 0),
            },
            LabeledCube {
                shape,
                labels: face_labels(&self.labels, bit, 1),
            },
        ))
    }

    /// `lines_i(γ)`: the cube over `S ∖ {i}` labeled by the pairs along direction `i`.
    pub fn lines(&self, i: usize) -> Result<LabeledCube<(T, T)>> {
        let bit = self.shape.position(i)?;
        let shape = self.shape.difference(&CubeShape::new(vec![i])?)?;
        let labels = line_pairs(&self.labels, bit)
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        Ok(LabeledCube { shape, labels })
    }

    /// Glues two `(k-1)`-cubes as `(face^0, face^1)` along new coordinate `i`.
    pub fn glue_faces(face0: &LabeledCube<T>, face1: &LabeledCube<T>, i: usize) -> Result<Self> {
        if face0.shape != face1.shape {
            return Err(Error::ShapeMismatch("faces differ in shape".into()));
        }
        let shape = face0.shape.union(&CubeShape::new(vec![i])?)?;
        let bit = shape.position(i)?;
        Ok(Self {
            labels: glue_labels(&face0.labels, &face1.labels, bit),
            shape,
        })
    }

    /// `refl_i^j`: both faces in direction `i` become face `j`.
    pub fn refl(&self, i: usize, j: usize) -> Result<Self> {
        if j > 1 {
            return Err(Error::OutOfRange(format!("face side {j}")));
        }
        let bit = self.shape.position(i)?;
        Ok(Self {
            shape: self.shape.clone(),
            labels: refl_labels(&self.labels, bit, j),
        })
    }

    /// `sym_i`: swaps the two faces in direction `i`.
    pub fn sym(&self, i: usize) -> Result<Self> {
        let bit = self.shape.position(i)?;
        Ok(Self {
            shape: self.shape.clone(),
            labels: sym_labels(&self.labels, bit),
        })
    }

    /// Relabels coordinates: the label at `f` becomes `γ_{f∘π}`. `pi` maps
    /// every coordinate of the shape to its image.
    pub fn permute_coords(&self, pi: &BTreeMap<usize, usize>) -> Result<Self> {
        let coords = self.shape.coords();
        if pi.len() != coords.len() || coords.iter().any(|c| !pi.contains_key(c)) {
            return Err(Error::InvalidPermutation(format!(
                "{pi:?} is not defined exactly on {coords:?}"
            )));
        }
        let mut images: Vec<usize> = pi.values().copied().collect();
        images.sort_unstable();
        if images != coords {
            return Err(Error::InvalidPermutation(format!(
                "{pi:?} is not a bijection of {coords:?}"
            )));
        }
        // bit j of the source vertex is bit pos(π(s_j)) of the target vertex
        let source_bit: Vec<usize> = coords
            .iter()
            .map(|c| self.shape.position(pi[c]))
            .collect::<Result<_>>()?;
        let labels = (0..self.shape.vertex_count())
            .map(|v| {
                let u = source_bit
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (j, &b)| acc | (((v >> b) & 1) << j));
                self.labels[u].clone()
            })
            .collect();
        Ok(Self {
            shape: self.shape.clone(),
            labels,
        })
    }

    /// Swaps coordinates `a` and `b`.
    pub fn transpose(&self, a: usize, b: usize) -> Result<Self> {
        let mut pi: BTreeMap<usize, usize> = self.shape.coords().iter().map(|&c| (c, c)).collect();
        self.shape.position(a)?;
        self.shape.position(b)?;
        pi.insert(a, b);
        pi.insert(b, a);
        self.permute_coords(&pi)
    }
}

impl<T: fmt::Display> fmt::Display for LabeledCube<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (v, l) in self.labels.iter().enumerate() {
            if v > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn face_labels<T: Clone>(labels: &[T], bit: usize, side: usize) -> Vec<T> {
    (0..labels.len() / 2)
        .map(|g| labels[insert_bit(g, bit, side)].clone())
        .collect()
}

pub(crate) fn glue_labels<T: Clone>(face0: &[T], face1: &[T], bit: usize) -> Vec<T> {
    (0..face0.len() * 2)
        .map(|v| {
            let g = ((v >> (bit + 1)) << bit) | (v & ((1 << bit) - 1));
            if v >> bit & 1 == 0 {
                face0[g].clone()
            } else {
                face1[g].clone()
            }
        })
        .collect()
}

pub(crate) fn sym_labels<T: Clone>(labels: &[T], bit: usize) -> Vec<T> {
    (0..labels.len())
        .map(|v| labels[v ^ (1 << bit)].clone())
        .collect()
}

pub(crate) fn refl_labels<T: Clone>(labels: &[T], bit: usize, side: usize) -> Vec<T> {
    (0..labels.len())
        .map(|v| labels[(v & !(1 << bit)) | (side << bit)].clone())
        .collect()
}

/// The pairs `(γ_{g,0}, γ_{g,1})` along bit `bit`, in face-vertex order.
pub(crate) fn line_pairs<T>(labels: &[T], bit: usize) -> impl Iterator<Item = (&T, &T)> + '_ {
    (0..labels.len() / 2).map(move |g| {
        (
            &labels[insert_bit(g, bit, 0)],
            &labels[insert_bit(g, bit, 1)],
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn square(l: [char; 4]) -> LabeledCube<char> {
        LabeledCube::new(CubeShape::normalized(2), l.to_vec()).unwrap()
    }

    fn s(q: &[usize]) -> CubeShape {
        CubeShape::new(q.to_vec()).unwrap()
    }

    #[test]
    fn cut_examples() {
        let g = square(['a', 'b', 'c', 'd']);
        let c = g.cut(&s(&[0])).unwrap();
        assert_eq!(c.labels()[0].labels(), &['a', 'c']);
        assert_eq!(c.labels()[1].labels(), &['b', 'd']);
        let c = g.cut(&s(&[])).unwrap();
        assert_eq!(c.labels().len(), 1);
        assert_eq!(c.labels()[0], g);
        let c = g.cut(&s(&[0, 1])).unwrap();
        assert_eq!(
            c.labels().iter().map(|x| x.labels()[0]).collect::<Vec<_>>(),
            vec!['a', 'b', 'c', 'd']
        );
        assert!(g.cut(&s(&[2])).is_err());
    }

    #[test]
    fn faces_and_lines() {
        let g = square(['a', 'b', 'c', 'd']);
        let (f0, f1) = g.faces(0).unwrap();
        assert_eq!(
            (f0.labels(), f1.labels()),
            (&['a', 'c'][..], &['b', 'd'][..])
        );
        let l = g.lines(1).unwrap();
        assert_eq!(l.labels(), &[('a', 'c'), ('b', 'd')]);
        // for squares, lines in direction 1 are the faces in direction 0
        let l0 = g.lines(0).unwrap();
        let (h0, h1) = g.faces(1).unwrap();
        assert_eq!(
            l0.labels(),
            &[
                (h0.labels()[0], h0.labels()[1]),
                (h1.labels()[0], h1.labels()[1])
            ]
        );
        assert!(g.faces(2).is_err());
    }

    #[test]
    fn refl_sym_examples() {
        let g = square(['a', 'b', 'c', 'd']);
        assert_eq!(g.refl(0, 0).unwrap(), square(['a', 'a', 'c', 'c']));
        assert_eq!(g.sym(0).unwrap(), square(['b', 'a', 'd', 'c']));
        assert_eq!(g.sym(1).unwrap().sym(1).unwrap(), g);
        assert!(g.refl(0, 2).is_err());
        assert!(g.sym(3).is_err());
    }

    #[test]
    fn pair_cubes() {
        let sh = CubeShape::normalized(2);
        assert_eq!(
            LabeledCube::from_pair(sh.clone(), 0, 0, 1)
                .unwrap()
                .labels(),
            &[0, 1, 0, 1]
        );
        assert_eq!(
            LabeledCube::from_pair(sh.clone(), 1, 0, 1)
                .unwrap()
                .labels(),
            &[0, 0, 1, 1]
        );
        assert_eq!(
            LabeledCube::from_pair(sh.clone(), 1, 7, 7).unwrap(),
            LabeledCube::constant(sh, 7)
        );
    }

    #[test]
    fn permutations() {
        let g = square(['a', 'b', 'c', 'd']);
        assert_eq!(g.transpose(0, 1).unwrap(), square(['a', 'c', 'b', 'd']));
        let id: BTreeMap<usize, usize> = [(0, 0), (1, 1)].into();
        assert_eq!(g.permute_coords(&id).unwrap(), g);
        assert_eq!(g.transpose(0, 1).unwrap().transpose(0, 1).unwrap(), g);
        let bad: BTreeMap<usize, usize> = [(0, 1), (1, 1)].into();
        assert!(g.permute_coords(&bad).is_err());
    }

    #[test]
    fn named_coordinates() {
        let sh = CubeShape::new(vec![3, 7]).unwrap();
        let g = LabeledCube::new(sh, vec!['a', 'b', 'c', 'd']).unwrap();
        let (f0, f1) = g.faces(7).unwrap();
        assert_eq!(f0.shape().coords(), &[3]);
        assert_eq!(
            (f0.labels(), f1.labels()),
            (&['a', 'b'][..], &['c', 'd'][..])
        );
        assert_eq!(LabeledCube::glue_faces(&f0, &f1, 7).unwrap(), g);
    }

    fn arb_cube(k: usize) -> impl Strategy<Value = LabeledCube<u8>> {
        proptest::collection::vec(0..5u8, 1 << k)
            .prop_map(move |l| LabeledCube::new(CubeShape::normalized(k), l).unwrap())
    }

    proptest! {
        #[test]
        fn glue_inverts_cut(k in 1usize..=3, seed in any::<u64>()) {
            let labels: Vec<u8> = (0..1usize << k).map(|v| ((seed >> (v * 3)) & 7) as u8).collect();
            let g = LabeledCube::new(CubeShape::normalized(k), labels).unwrap();
            for mask in 0..1usize << k {
                let q = s(&(0..k).filter(|j| mask >> j & 1 == 1).collect::<Vec<_>>());
                prop_assert_eq!(LabeledCube::glue(&g.cut(&q).unwrap()).unwrap(), g.clone());
            }
        }

        #[test]
        fn faces_reglue(g in arb_cube(3), i in 0usize..3) {
            let (f0, f1) = g.faces(i).unwrap();
            prop_assert_eq!(LabeledCube::glue_faces(&f0, &f1, i).unwrap(), g.clone());
            let r = g.refl(i, 1).unwrap();
            prop_assert_eq!(r.refl(i, 1).unwrap(), r.clone());
            let (r0, r1) = r.faces(i).unwrap();
            prop_assert_eq!(&r0, &r1);
            prop_assert_eq!(r1, f1);
        }
    }
}
