//! Finite sets of labeled cubes of one shape.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cube::{face_labels, glue_labels, CubeShape, LabeledCube};
use crate::error::{Error, Result};

/// A relation `R ⊆ A^{2^S}`, stored as a sorted set of label vectors.
///
/// Face indices are built on demand by [`CubeRelation::face_index`] rather
/// than kept in sync with every insertion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeRelation<T> {
    shape: CubeShape,
    cubes: BTreeSet<Vec<T>>,
}

/// Cubes having a face as `face^0` and as `face^1`.
pub type FaceCubes<T> = (Vec<Vec<T>>, Vec<Vec<T>>);

/// Cubes of a relation grouped by their faces in one direction.
#[derive(Clone, Debug)]
pub struct FaceIndex<T> {
    pub direction: usize,
    /// face label vector ↦ (cubes having it as `face^0`, cubes having it as `face^1`)
    pub by_face: BTreeMap<Vec<T>, FaceCubes<T>>,
}

impl<T: Ord + Clone> FaceIndex<T> {
    pub fn with_face0(&self, face: &[T]) -> &[Vec<T>] {
        self.by_face.get(face).map_or(&[], |e| &e.0)
    }

    pub fn with_face1(&self, face: &[T]) -> &[Vec<T>] {
        self.by_face.get(face).map_or(&[], |e| &e.1)
    }
}

impl<T: Ord + Clone> CubeRelation<T> {
    pub fn new(shape: CubeShape) -> Self {
        Self {
            shape,
            cubes: BTreeSet::new(),
        }
    }

    pub fn from_cubes(
        shape: CubeShape,
        cubes: impl IntoIterator<Item = LabeledCube<T>>,
    ) -> Result<Self> {
        let mut r = Self::new(shape);
        for c in cubes {
            r.insert(c)?;
        }
        Ok(r)
    }

    pub fn from_label_vecs(
        shape: CubeShape,
        cubes: impl IntoIterator<Item = Vec<T>>,
    ) -> Result<Self> {
        let mut r = Self::new(shape);
        for c in cubes {
            r.insert_labels(c)?;
        }
        Ok(r)
    }

    pub fn shape(&self) -> &CubeShape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn insert(&mut self, cube: LabeledCube<T>) -> Result<bool> {
        if cube.shape() != &self.shape {
            return Err(Error::ShapeMismatch(format!(
                "cube over {:?} inserted into a relation over {:?}",
                cube.shape(),
                self.shape
            )));
        }
        Ok(self.cubes.insert(cube.into_labels()))
    }

    pub fn insert_labels(&mut self, labels: Vec<T>) -> Result<bool> {
        if labels.len() != self.shape.vertex_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for a cube with {} vertices",
                labels.len(),
                self.shape.vertex_count()
            )));
        }
        Ok(self.cubes.insert(labels))
    }

    pub fn contains(&self, cube: &LabeledCube<T>) -> bool {
        cube.shape() == &self.shape && self.cubes.contains(cube.labels())
    }

    pub fn contains_labels(&self, labels: &[T]) -> bool {
        self.cubes.contains(labels)
    }

    /// Label vectors in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &Vec<T>> + '_ {
        self.cubes.iter()
    }

    pub fn cubes(&self) -> Vec<LabeledCube<T>> {
        self.cubes
            .iter()
            .map(|l| {
                LabeledCube::new(self.shape.clone(), l.clone()).expect("stored cubes fit the shape")
            })
            .collect()
    }

    pub fn labels_used(&self) -> BTreeSet<T> {
        self.cubes.iter().flatten().cloned().collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.shape == other.shape && self.cubes.is_subset(&other.cubes)
    }

    pub fn extend(&mut self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch("relations differ in shape".into()));
        }
        self.cubes.extend(other.cubes.iter().cloned());
        Ok(())
    }

    /// `faces_i(R)` as a set of (face^0, face^1) label pairs.
    pub fn face_pairs(&self, i: usize) -> Result<BTreeSet<(Vec<T>, Vec<T>)>> {
        let bit = self.shape.position(i)?;
        Ok(self
            .cubes
            .iter()
            .map(|c| (face_labels(c, bit, 0), face_labels(c, bit, 1)))
            .collect())
    }

    pub fn face_index(&self, i: usize) -> Result<FaceIndex<T>> {
        let bit = self.shape.position(i)?;
        let mut by_face: BTreeMap<Vec<T>, FaceCubes<T>> = BTreeMap::new();
        for c in &self.cubes {
            by_face
                .entry(face_labels(c, bit, 0))
                .or_default()
                .0
                .push(c.clone());
            by_face
                .entry(face_labels(c, bit, 1))
                .or_default()
                .1
                .push(c.clone());
        }
        Ok(FaceIndex {
            direction: i,
            by_face,
        })
    }

    /// Rebuilds a cube of this shape from two faces in direction `i`.
    pub fn glue_pair(&self, i: usize, face0: &[T], face1: &[T]) -> Result<Vec<T>> {
        let bit = self.shape.position(i)?;
        Ok(glue_labels(face0, face1, bit))
    }

    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> CubeRelation<U> {
        CubeRelation {
            shape: self.shape.clone(),
            cubes: self
                .cubes
                .iter()
                .map(|c| c.iter().map(&f).collect())
                .collect(),
        }
    }
}

/// Cube-set file layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeSetJson {
    pub dimension: usize,
    pub coords: Vec<usize>,
    pub cubes: Vec<Vec<usize>>,
}

impl CubeRelation<usize> {
    pub fn to_json_value(&self) -> CubeSetJson {
        CubeSetJson {
            dimension: self.shape.dim(),
            coords: self.shape.coords().to_vec(),
            cubes: self.cubes.iter().cloned().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("cube sets serialize")
    }

    pub fn from_json_value(v: CubeSetJson) -> Result<Self> {
        if v.coords.len() != v.dimension {
            return Err(Error::InvalidShape(format!(
                "dimension {} with {} coordinates",
                v.dimension,
                v.coords.len()
            )));
        }
        if v.coords.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidShape(format!(
                "coordinates {:?} must be strictly increasing",
                v.coords
            )));
        }
        Self::from_label_vecs(CubeShape::new(v.coords)?, v.cubes)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(serde_json::from_str(text)?)
    }

    /// Fails unless every label lies in `0..size`.
    pub fn check_labels(&self, size: usize) -> Result<()> {
        match self.cubes.iter().flatten().find(|&&l| l >= size) {
            Some(&element) => Err(Error::ElementOutOfRange { element, size }),
            None => Ok(()),
        }
    }
}
