use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of coordinate names `s_0 < .. < s_{k-1}`.
///
/// A vertex `f ∈ 2^S` is stored at index `Σ_j f(s_j)·2^j`, so coordinate
/// `s_j` is bit `j` of the vertex index. The empty shape describes a
/// single-vertex cube, which only shows up as the result of cutting.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CubeShape {
    coords: Vec<usize>,
}

impl TryFrom<Vec<usize>> for CubeShape {
    type Error = Error;

    fn try_from(coords: Vec<usize>) -> Result<Self> {
        CubeShape::new(coords)
    }
}

impl From<CubeShape> for Vec<usize> {
    fn from(shape: CubeShape) -> Self {
        shape.coords
    }
}

impl CubeShape {
    /// Sorts the coordinates; rejects duplicates.
    pub fn new(mut coords: Vec<usize>) -> Result<Self> {
        coords.sort_unstable();
        if coords.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidShape(format!(
                "duplicate coordinate in {coords:?}"
            )));
        }
        if coords.len() > 20 {
            return Err(Error::InvalidShape(format!(
                "{} coordinates is beyond what a cube can hold",
                coords.len()
            )));
        }
        Ok(Self { coords })
    }

    /// `{0, .., k-1}`.
    pub fn normalized(k: usize) -> Self {
        Self {
            coords: (0..k).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.coords.len()
    }

    pub fn contains(&self, coord: usize) -> bool {
        self.coords.binary_search(&coord).is_ok()
    }

    /// Bit position of `coord` in vertex indices.
    pub fn position(&self, coord: usize) -> Result<usize> {
        self.coords
            .binary_search(&coord)
            .map_err(|_| Error::UnknownCoordinate(coord))
    }

    pub fn max_coord(&self) -> Option<usize> {
        self.coords.last().copied()
    }

    pub fn is_normalized(&self) -> bool {
        self.coords.iter().enumerate().all(|(j, &c)| j == c)
    }

    /// `S ∖ q`, failing if `q ⊄ S`.
    pub fn difference(&self, q: &CubeShape) -> Result<CubeShape> {
        for &c in q.coords() {
            self.position(c)?;
        }
        Ok(Self {
            coords: self
                .coords
                .iter()
                .copied()
                .filter(|c| !q.contains(*c))
                .collect(),
        })
    }

    pub fn union(&self, other: &CubeShape) -> Result<CubeShape> {
        if let Some(&c) = other.coords.iter().find(|&&c| self.contains(c)) {
            return Err(Error::ShapeMismatch(format!(
                "coordinate {c} occurs in both shapes"
            )));
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        CubeShape::new(coords)
    }
}

impl fmt::Debug for CubeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{:?}", self.coords)
    }
}

/// Index of the vertex of the full cube obtained by inserting bit `side` at
/// position `bit` into the index `g` of a vertex of a face.
#[inline]
pub(crate) fn insert_bit(g: usize, bit: usize, side: usize) -> usize {
    let low = g & ((1 << bit) - 1);
    ((g >> bit) << (bit + 1)) | (side << bit) | low
}

/// Scatters the low bits of `value` to the bit positions listed in `positions`.
#[inline]
pub(crate) fn deposit(value: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &p)| acc | (((value >> j) & 1) << p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_basics() {
        let s = CubeShape::new(vec![5, 2]).unwrap();
        assert_eq!(s.coords(), &[2, 5]);
        assert_eq!(s.position(5).unwrap(), 1);
        assert!(s.position(3).is_err());
        assert!(CubeShape::new(vec![1, 1]).is_err());
        assert!(!s.is_normalized());
        assert!(CubeShape::normalized(3).is_normalized());
    }

    #[test]
    fn bit_helpers() {
        assert_eq!(insert_bit(0b11, 1, 0), 0b101);
        assert_eq!(insert_bit(0b11, 0, 0), 0b110);
        assert_eq!(insert_bit(0b11, 2, 1), 0b111);
        assert_eq!(deposit(0b11, &[0, 2]), 0b101);
    }
}
