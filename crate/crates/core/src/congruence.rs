//! Ordinary (one-dimensional) congruences.

use std::collections::BTreeSet;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Default bound on the carrier size for [`all_congruences`].
pub const DEFAULT_MAX_LATTICE_SIZE: usize = 6;

/// Congruence generated by `pairs`.
pub fn cg(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Partition> {
    cg_from(alg, &Partition::identity(alg.size()), pairs)
}

/// Least congruence above `base` that also relates every pair in `pairs`.
///
/// Pairs that get merged are pushed through every basic translation
/// (one argument slot varies, all others constant) until nothing new merges.
pub fn cg_from(
    alg: &FiniteAlgebra,
    base: &Partition,
    pairs: &[(usize, usize)],
) -> Result<Partition> {
    let n = alg.size();
    if base.size() != n {
        return Err(Error::ShapeMismatch(format!(
            "partition on {} elements for an algebra of size {n}",
            base.size()
        )));
    }
    for &(a, b) in pairs {
        alg.check_element(a)?;
        alg.check_element(b)?;
    }
    let mut p = Partition::identity(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for x in 0..n {
        let r = base.find(x);
        if p.union(x, r) {
            work.push((x, r));
        }
    }
    for &(a, b) in pairs {
        if p.union(a, b) {
            work.push((a, b));
        }
    }
    let mut args = Vec::new();
    while let Some((a, b)) = work.pop() {
        for op in alg.operations().iter().filter(|op| op.arity > 0) {
            let others = n.pow(op.arity as u32 - 1);
            for slot in 0..op.arity {
                for mut rest in 0..others {
                    args.clear();
                    args.resize(op.arity, 0);
                    for pos in (0..op.arity).rev().filter(|&p| p != slot) {
                        args[pos] = rest % n;
                        rest /= n;
                    }
                    args[slot] = a;
                    let x = alg.apply(op, &args);
                    args[slot] = b;
                    let y = alg.apply(op, &args);
                    if p.union(x, y) {
                        work.push((x, y));
                    }
                }
            }
        }
    }
    Ok(p)
}

/// Whether `p` is preserved by every basic translation of `alg`, which for
/// an equivalence relation is the same as compatibility with the operations.
pub fn is_congruence(alg: &FiniteAlgebra, p: &Partition) -> bool {
    if p.size() != alg.size() {
        return false;
    }
    cg_from(alg, p, &[]).map(|q| q == *p).unwrap_or(false)
}

pub fn meet(p: &Partition, q: &Partition) -> Result<Partition> {
    p.meet(q)
}

/// Join inside `Con(alg)`: the transitive closure of the union.
pub fn join(alg: &FiniteAlgebra, p: &Partition, q: &Partition) -> Result<Partition> {
    if p.size() != alg.size() {
        return Err(Error::ShapeMismatch(format!(
            "partition on {} elements for an algebra of size {}",
            p.size(),
            alg.size()
        )));
    }
    p.join(q)
}

/// The whole congruence lattice, as the join closure of the principal
/// congruences plus the identity. Sorted by [`Partition`]'s listing order.
pub fn all_congruences(alg: &FiniteAlgebra, max_size: usize) -> Result<Vec<Partition>> {
    let n = alg.size();
    if n > max_size {
        return Err(Error::SizeLimit {
            what: "congruence lattice",
            size: n,
            limit: max_size,
        });
    }
    let mut principal = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            principal.insert(cg(alg, &[(a, b)])?);
        }
    }
    let mut all: BTreeSet<Partition> = principal.clone();
    all.insert(Partition::identity(n));
    let mut frontier: Vec<Partition> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for q in &principal {
                let j = p.join(q)?;
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(all.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn z4_principal_congruences() {
        let z4 = corpus::cyclic(4);
        assert_eq!(
            cg(&z4, &[(0, 2)]).unwrap().blocks(),
            vec![vec![0, 2], vec![1, 3]]
        );
        assert!(cg(&z4, &[(0, 1)]).unwrap().is_full());
        assert!(cg(&z4, &[]).unwrap().is_identity());
        assert!(cg(&z4, &[(0, 4)]).is_err());
    }

    #[test]
    fn small_lattices() {
        let z4 = corpus::cyclic(4);
        let con = all_congruences(&z4, DEFAULT_MAX_LATTICE_SIZE).unwrap();
        assert_eq!(con.len(), 3);
        let trivial = FiniteAlgebra::new(
            "one",
            1,
            vec![crate::algebra::OperationTable::new("f", 2, vec![0])],
        )
        .unwrap();
        assert_eq!(all_congruences(&trivial, 6).unwrap().len(), 1);
        let s3 = corpus::s3();
        let con = all_congruences(&s3, 6).unwrap();
        assert_eq!(con.len(), 3);
        assert!(con.contains(&corpus::s3_a3_cosets()));
    }

    #[test]
    fn size_guard() {
        let z7 = corpus::cyclic(7);
        assert!(matches!(
            all_congruences(&z7, DEFAULT_MAX_LATTICE_SIZE),
            Err(Error::SizeLimit { .. })
        ));
        assert_eq!(all_congruences(&z7, 7).unwrap().len(), 2);
    }

    #[test]
    fn cg_from_extends_the_base() {
        let z4 = corpus::cyclic(4);
        let half = cg(&z4, &[(0, 2)]).unwrap();
        assert_eq!(cg_from(&z4, &half, &[]).unwrap(), half);
        assert!(cg_from(&z4, &half, &[(1, 2)]).unwrap().is_full());
        assert!(is_congruence(&z4, &half));
        let bad = Partition::from_blocks(4, &[vec![0, 1]]).unwrap();
        assert!(!is_congruence(&z4, &bad));
    }
}
