//! The bundled test corpus of small algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FiniteAlgebra, OperationTable};
use crate::cube::{CubeShape, LabeledCube};
use crate::partition::Partition;
use crate::relation::CubeRelation;

/// Seeds of the three random 3-element groupoids.
pub const GROUPOID_SEEDS: [u64; 3] = [1, 2, 3];
/// Seed of the random 3-element ternary algebra.
pub const TERNARY_SEED: u64 = 11;

/// `Z_n` under addition, named `z{n}`.
pub fn cyclic(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(
        format!("z{n}"),
        n,
        vec![OperationTable::from_fn("add", 2, n, |a| (a[0] + a[1]) % n)],
    )
    .expect("cyclic group tables are valid")
}

pub fn klein4() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "klein4",
        4,
        vec![OperationTable::from_fn("add", 2, 4, |a| a[0] ^ a[1])],
    )
    .expect("valid table")
}

/// Permutations of `{0,1,2}` in lexicographic order of their image lists.
pub fn s3_elements() -> [[usize; 3]; 6] {
    [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

/// The symmetric group on three letters; `mul(p, q) = p ∘ q`.
pub fn s3() -> FiniteAlgebra {
    let elems = s3_elements();
    let index = |p: [usize; 3]| elems.iter().position(|&e| e == p).unwrap();
    FiniteAlgebra::new(
        "s3",
        6,
        vec![OperationTable::from_fn("mul", 2, 6, |a| {
            let (p, q) = (elems[a[0]], elems[a[1]]);
            index([p[q[0]], p[q[1]], p[q[2]]])
        })],
    )
    .expect("valid table")
}

/// Cosets of the alternating subgroup in [`s3`].
pub fn s3_a3_cosets() -> Partition {
    Partition::from_blocks(6, &[vec![0, 3, 4], vec![1, 2, 5]]).unwrap()
}

pub fn lattice2() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "lattice2",
        2,
        vec![
            OperationTable::from_fn("join", 2, 2, |a| a[0] | a[1]),
            OperationTable::from_fn("meet", 2, 2, |a| a[0] & a[1]),
        ],
    )
    .expect("valid table")
}

/// A random binary operation on three elements drawn from a fixed seed.
pub fn random_groupoid(seed: u64) -> FiniteAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = (0..9).map(|_| rng.gen_range(0..3)).collect();
    FiniteAlgebra::new(
        format!("groupoid{seed}"),
        3,
        vec![OperationTable::new("mul", 2, table)],
    )
    .expect("valid table")
}

/// The 2-element majority algebra.
pub fn majority2() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "majority2",
        2,
        vec![OperationTable::from_fn("maj", 3, 2, |a| {
            usize::from(a[0] + a[1] + a[2] >= 2)
        })],
    )
    .expect("valid table")
}

/// A random ternary operation on three elements drawn from a fixed seed.
pub fn random_ternary(seed: u64) -> FiniteAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = (0..27).map(|_| rng.gen_range(0..3)).collect();
    FiniteAlgebra::new(
        format!("ternary{seed}"),
        3,
        vec![OperationTable::new("t", 3, table)],
    )
    .expect("valid table")
}

/// Every bundled algebra, in a fixed order.
pub fn bundled() -> Vec<FiniteAlgebra> {
    let mut out = vec![cyclic(2), cyclic(3), cyclic(4), klein4(), s3(), lattice2()];
    out.extend(GROUPOID_SEEDS.iter().map(|&s| random_groupoid(s)));
    out.push(majority2());
    out.push(random_ternary(TERNARY_SEED));
    out
}

/// Bundled algebras of size at most `max_size`.
pub fn bundled_up_to(max_size: usize) -> Vec<FiniteAlgebra> {
    bundled()
        .into_iter()
        .filter(|a| a.size() <= max_size)
        .collect()
}

/// The bundled groups.
pub fn groups() -> Vec<FiniteAlgebra> {
    vec![cyclic(2), cyclic(3), cyclic(4), klein4(), s3()]
}

/// Fixed generator sets for closure runs in dimension `k`: pair cubes in
/// each direction, a constant cube, and two seeded random sets.
pub fn generator_sets(alg: &FiniteAlgebra, k: usize) -> Vec<CubeRelation<usize>> {
    let n = alg.size();
    let shape = CubeShape::normalized(k);
    let top = n - 1;
    let pair =
        |i: usize, x: usize, y: usize| LabeledCube::from_pair(shape.clone(), i, x, y).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64 ^ (k as u64) << 8);
    let mut random = |count: usize| -> Vec<LabeledCube<usize>> {
        (0..count)
            .map(|_| {
                let labels = (0..shape.vertex_count())
                    .map(|_| rng.gen_range(0..n))
                    .collect();
                LabeledCube::new(shape.clone(), labels).unwrap()
            })
            .collect()
    };
    let sets: Vec<Vec<LabeledCube<usize>>> = vec![
        vec![pair(0, 0, 1.min(top))],
        vec![pair(k - 1, 0, top)],
        (0..k).map(|i| pair(i, 0, 1.min(top))).collect(),
        vec![LabeledCube::constant(shape.clone(), top)],
        random(1),
        random(2),
    ];
    sets.into_iter()
        .map(|cubes| CubeRelation::from_cubes(shape.clone(), cubes).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_nonabelian_group() {
        let s3 = s3();
        let mul = s3.operation("mul").unwrap();
        for a in 0..6 {
            assert_eq!(s3.apply(mul, &[0, a]), a);
            assert_eq!(s3.apply(mul, &[a, 0]), a);
            assert!((0..6).any(|b| s3.apply(mul, &[a, b]) == 0));
            for b in 0..6 {
                for c in 0..6 {
                    let ab = s3.apply(mul, &[a, b]);
                    let bc = s3.apply(mul, &[b, c]);
                    assert_eq!(s3.apply(mul, &[ab, c]), s3.apply(mul, &[a, bc]));
                }
            }
        }
        assert_ne!(s3.apply(mul, &[1, 2]), s3.apply(mul, &[2, 1]));
    }

    #[test]
    fn corpus_is_deterministic() {
        assert_eq!(bundled(), bundled());
        let names: Vec<_> = bundled().iter().map(|a| a.name().to_string()).collect();
        assert_eq!(
            names,
            [
                "z2",
                "z3",
                "z4",
                "klein4",
                "s3",
                "lattice2",
                "groupoid1",
                "groupoid2",
                "groupoid3",
                "majority2",
                "ternary11"
            ]
        );
    }
}
