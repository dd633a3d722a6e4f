//! Closure under the `k`-ary polynomials with constants from a subuniverse.

use std::collections::HashMap;

use itertools::Itertools;

use super::codec::CodeSet;
use super::engine::{Engine, Rules, Schedule};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct PolStats {
    pub subsets: usize,
    pub subuniverses: usize,
    pub closed_early: bool,
}

/// Least `P ⊇ start ∪ consts` such that `Sg(F ∪ consts) ⊆ P` for every set
/// `F` of at most `k` non-constant cubes of `P`.
///
/// Every value of a `k`-ary polynomial at cubes `γ_1..γ_k` lies in the
/// subuniverse generated by those cubes and the constant cubes, and every
/// element of that subuniverse is such a value. Subsets are visited by their
/// newest element, and a subset already inside a computed subuniverse is
/// skipped since its own subuniverse is contained in that one.
///
/// `P` only ever gains elements of some `Sg(F ∪ consts)` with `F ⊆ P`, so as
/// soon as `P` is closed under the basic operations it is the fixpoint. That
/// test is rerun whenever the subsets visited since the last one outnumber
/// the tuples it scans.
pub(crate) fn pol_k_closure(
    engine: &Engine,
    start: &[u64],
    consts: &[u64],
    k: usize,
    schedule: Schedule,
) -> (Vec<u64>, PolStats) {
    let codec = engine.codec;
    let mut set = CodeSet::new(codec.space);
    let mut members = Vec::new();
    let mut nonconst: Vec<u64> = Vec::new();
    let mut scratch = vec![0; codec.verts];
    let mut is_const = |c: u64| {
        codec.decode_into(c, &mut scratch);
        codec.is_constant(&scratch)
    };
    for &c in consts.iter().chain(start) {
        if set.insert(c) {
            members.push(c);
            if !is_const(c) {
                nonconst.push(c);
            }
        }
    }
    let mut inside: HashMap<u64, Vec<u32>> = HashMap::new();
    let mut stats = PolStats::default();
    let max_arity = engine.max_arity();
    let mut since_check = usize::MAX;
    let mut m = 0;
    while m < nonconst.len() {
        let cost = members.len().saturating_pow(max_arity as u32);
        if since_check >= cost {
            if engine.is_op_closed(&members, &set) {
                stats.closed_early = true;
                break;
            }
            since_check = 0;
        }
        for size in 0..k {
            for rest in (0..m).combinations(size) {
                stats.subsets += 1;
                since_check += 1;
                let newest = nonconst[m];
                if subsumed(&inside, rest.iter().map(|&i| nonconst[i]).chain([newest])) {
                    continue;
                }
                let gens = rest
                    .iter()
                    .map(|&i| nonconst[i])
                    .chain([newest])
                    .chain(consts.iter().copied());
                let u = engine.close(
                    gens,
                    Rules {
                        sym_refl: false,
                        ops: true,
                    },
                    schedule,
                );
                let uid = stats.subuniverses as u32;
                stats.subuniverses += 1;
                for c in u.members {
                    if is_const(c) {
                        continue;
                    }
                    inside.entry(c).or_default().push(uid);
                    if set.insert(c) {
                        members.push(c);
                        nonconst.push(c);
                    }
                }
            }
        }
        m += 1;
    }
    (members, stats)
}

/// Whether some recorded subuniverse contains every cube of `f`.
fn subsumed(inside: &HashMap<u64, Vec<u32>>, mut f: impl Iterator<Item = u64>) -> bool {
    let Some(first) = f.next() else {
        return false;
    };
    let Some(list) = inside.get(&first) else {
        return false;
    };
    let mut common: Vec<u32> = list.clone();
    for c in f {
        let Some(other) = inside.get(&c) else {
            return false;
        };
        common = intersect_sorted(&common, other);
        if common.is_empty() {
            return false;
        }
    }
    !common.is_empty()
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
