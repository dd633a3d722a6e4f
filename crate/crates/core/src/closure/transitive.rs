//! Directional transitive closures and their round-robin iteration.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::relation::CubeRelation;

/// `R^{∘_i}`: reads `faces_i(R)` as a digraph on `(k-1)`-cubes, closes it
/// transitively and glues every closed pair back into a cube.
pub fn dtc<T: Ord + Clone>(r: &CubeRelation<T>, i: usize) -> Result<CubeRelation<T>> {
    let pairs = r.face_pairs(i)?;
    let mut ids: BTreeMap<&Vec<T>, usize> = BTreeMap::new();
    for (a, b) in &pairs {
        let next = ids.len();
        ids.entry(a).or_insert(next);
        let next = ids.len();
        ids.entry(b).or_insert(next);
    }
    let mut faces: Vec<Option<&Vec<T>>> = vec![None; ids.len()];
    for (f, &id) in &ids {
        faces[id] = Some(f);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
    for (a, b) in &pairs {
        adj[ids[a]].push(ids[b]);
    }
    let mut out = r.clone();
    let mut seen = vec![usize::MAX; ids.len()];
    let mut stack = Vec::new();
    for u in 0..ids.len() {
        stack.extend(adj[u].iter().copied());
        while let Some(v) = stack.pop() {
            if seen[v] == u {
                continue;
            }
            seen[v] = u;
            let cube = r.glue_pair(
                i,
                faces[u].expect("every id names a face"),
                faces[v].expect("every id names a face"),
            )?;
            out.insert_labels(cube)?;
            stack.extend(adj[v].iter().copied().filter(|&w| seen[w] != u));
        }
    }
    Ok(out)
}

/// Per-direction pass counts and sizes of a [`tc_with_trace`] run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TcTrace {
    pub passes: usize,
    pub sizes: Vec<usize>,
}

/// Round-robin `dtc` over `order` (default: the shape's coordinates in
/// increasing order) until a full cycle changes nothing.
pub fn tc<T: Ord + Clone>(r: &CubeRelation<T>, order: Option<&[usize]>) -> Result<CubeRelation<T>> {
    tc_with_trace(r, order).map(|(rel, _)| rel)
}

pub fn tc_with_trace<T: Ord + Clone>(
    r: &CubeRelation<T>,
    order: Option<&[usize]>,
) -> Result<(CubeRelation<T>, TcTrace)> {
    let order = direction_order(r.shape().coords(), order)?;
    let mut cur = r.clone();
    let mut trace = TcTrace {
        passes: 0,
        sizes: vec![cur.len()],
    };
    let mut quiet = 0;
    let mut j = 0;
    while quiet < order.len() {
        let next = dtc(&cur, order[j % order.len()])?;
        trace.passes += 1;
        if next.len() == cur.len() {
            quiet += 1;
        } else {
            quiet = 1;
            cur = next;
        }
        trace.sizes.push(cur.len());
        j += 1;
    }
    Ok((cur, trace))
}

/// Validates a direction order: a permutation of `coords`.
pub(crate) fn direction_order(coords: &[usize], order: Option<&[usize]>) -> Result<Vec<usize>> {
    let Some(order) = order else {
        return Ok(coords.to_vec());
    };
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != coords {
        return Err(Error::InvalidPermutation(format!(
            "direction order {order:?} is not an ordering of {coords:?}"
        )));
    }
    Ok(order.to_vec())
}
