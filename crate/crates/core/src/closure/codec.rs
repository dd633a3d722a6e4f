//! Cubes over `{0..n-1}` packed into integers: label `l_v` is digit `v` in base `n`.

use std::collections::HashSet;

use crate::cube::CubeShape;
use crate::error::{Error, Result};

/// Default cap on `n^(2^k)`, the number of cubes a closure may have to hold.
pub const DEFAULT_MAX_CUBES: u64 = 1 << 24;

/// Environment variable overriding [`DEFAULT_MAX_CUBES`].
pub const MAX_CUBES_ENV: &str = "MALCEV_MAX_CUBES";

/// Spaces up to this many cubes use a bitset for membership.
const BITSET_LIMIT: u64 = 1 << 28;

pub(crate) fn cube_count(n: usize, verts: usize) -> u128 {
    (0..verts)
        .try_fold(1u128, |acc, _| acc.checked_mul(n as u128))
        .unwrap_or(u128::MAX)
}

/// The guard value in force: an explicit limit, else the environment, else the default.
pub fn max_cubes(explicit: Option<u64>) -> u64 {
    explicit
        .or_else(|| {
            std::env::var(MAX_CUBES_ENV)
                .ok()
                .and_then(|v| v.trim().parse().ok())
        })
        .unwrap_or(DEFAULT_MAX_CUBES)
}

#[derive(Clone, Debug)]
pub(crate) struct Codec {
    pub n: usize,
    pub verts: usize,
    pub dim: usize,
    pow: Vec<u64>,
    pub space: u64,
}

impl Codec {
    pub fn new(n: usize, shape: &CubeShape, limit: Option<u64>, force: bool) -> Result<Self> {
        let verts = shape.vertex_count();
        let cubes = cube_count(n, verts);
        let limit = max_cubes(limit);
        if cubes > u64::MAX as u128 || (!force && cubes > limit as u128) {
            return Err(Error::CubeSpaceTooLarge { cubes, limit });
        }
        let mut pow = Vec::with_capacity(verts);
        let mut p = 1u64;
        for v in 0..verts {
            pow.push(p);
            if v + 1 < verts {
                p *= n as u64;
            }
        }
        Ok(Self {
            n,
            verts,
            dim: shape.dim(),
            pow,
            space: cubes as u64,
        })
    }

    #[inline]
    pub fn encode(&self, labels: &[usize]) -> u64 {
        labels
            .iter()
            .zip(&self.pow)
            .map(|(&l, &p)| l as u64 * p)
            .sum()
    }

    #[inline]
    pub fn decode_into(&self, mut code: u64, out: &mut [usize]) {
        let n = self.n as u64;
        for o in out.iter_mut() {
            *o = (code % n) as usize;
            code /= n;
        }
    }

    pub fn decode(&self, code: u64) -> Vec<usize> {
        let mut out = vec![0; self.verts];
        self.decode_into(code, &mut out);
        out
    }

    pub fn constant(&self, c: usize) -> u64 {
        self.pow.iter().map(|&p| c as u64 * p).sum()
    }

    pub fn is_constant(&self, labels: &[usize]) -> bool {
        labels.iter().all(|&l| l == labels[0])
    }

    /// Images under every `sym_i` and `refl_i^j`, pushed onto `out`.
    pub fn sym_refl_images(&self, labels: &[usize], scratch: &mut [usize], out: &mut Vec<u64>) {
        for bit in 0..self.dim {
            let m = 1 << bit;
            for v in 0..self.verts {
                scratch[v] = labels[v ^ m];
            }
            out.push(self.encode(scratch));
            for side in 0..2 {
                for v in 0..self.verts {
                    scratch[v] = labels[(v & !m) | (side << bit)];
                }
                out.push(self.encode(scratch));
            }
        }
    }
}

/// Membership set over cube codes.
pub(crate) enum CodeSet {
    Bits(Vec<u64>),
    Hash(HashSet<u64>),
}

impl CodeSet {
    pub fn new(space: u64) -> Self {
        if space <= BITSET_LIMIT {
            CodeSet::Bits(vec![0; space.div_ceil(64) as usize])
        } else {
            CodeSet::Hash(HashSet::new())
        }
    }

    #[inline]
    pub fn contains(&self, c: u64) -> bool {
        match self {
            CodeSet::Bits(b) => b[(c >> 6) as usize] >> (c & 63) & 1 == 1,
            CodeSet::Hash(h) => h.contains(&c),
        }
    }

    #[inline]
    pub fn insert(&mut self, c: u64) -> bool {
        match self {
            CodeSet::Bits(b) => {
                let w = &mut b[(c >> 6) as usize];
                let m = 1u64 << (c & 63);
                let fresh = *w & m == 0;
                *w |= m;
                fresh
            }
            CodeSet::Hash(h) => h.insert(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_images() {
        let c = Codec::new(3, &CubeShape::normalized(2), None, false).unwrap();
        assert_eq!(c.space, 81);
        let l = [0, 1, 2, 1];
        let code = c.encode(&l);
        assert_eq!(c.decode(code), l);
        assert_eq!(c.constant(2), c.encode(&[2, 2, 2, 2]));
        let mut out = Vec::new();
        let mut scratch = [0; 4];
        c.sym_refl_images(&l, &mut scratch, &mut out);
        let decoded: Vec<_> = out.iter().map(|&x| c.decode(x)).collect();
        assert_eq!(decoded[0], vec![1, 0, 1, 2]);
        assert_eq!(decoded[1], vec![0, 0, 2, 2]);
        assert_eq!(decoded[2], vec![1, 1, 1, 1]);
        assert_eq!(decoded[3], vec![2, 1, 0, 1]);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            Codec::new(5, &CubeShape::normalized(3), Some(1000), false),
            Err(Error::CubeSpaceTooLarge { .. })
        ));
        assert!(Codec::new(5, &CubeShape::normalized(3), Some(1000), true).is_ok());
        assert!(Codec::new(100, &CubeShape::normalized(4), None, true).is_err());
    }

    #[test]
    fn code_sets() {
        for mut s in [CodeSet::new(100), CodeSet::new(u64::MAX)] {
            assert!(s.insert(70));
            assert!(!s.insert(70));
            assert!(s.contains(70));
            assert!(!s.contains(71));
        }
    }
}
