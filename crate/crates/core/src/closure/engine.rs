//! Semi-naive fixpoint over packed cubes: sym/refl maps and vertexwise operations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::codec::{CodeSet, Codec};
use crate::algebra::{for_each_tuple_touching, FiniteAlgebra, OperationTable};

/// Order in which new cubes are combined with old ones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    /// Whole frontiers per round, expanded in parallel and merged in sorted order.
    #[default]
    Rounds,
    /// One cube at a time, each new image inserted immediately.
    Eager,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Rules {
    pub sym_refl: bool,
    pub ops: bool,
}

pub(crate) struct Closed {
    pub members: Vec<u64>,
    pub rounds: usize,
    pub sizes: Vec<usize>,
}

pub(crate) struct Engine<'a> {
    pub codec: &'a Codec,
    alg: &'a FiniteAlgebra,
    ops: Vec<&'a OperationTable>,
    nullary: Vec<usize>,
}

struct Store {
    members: Vec<u64>,
    decoded: Vec<usize>,
    set: CodeSet,
}

impl Store {
    fn push(&mut self, codec: &Codec, c: u64) {
        if self.set.insert(c) {
            self.members.push(c);
            let start = self.decoded.len();
            self.decoded.resize(start + codec.verts, 0);
            codec.decode_into(c, &mut self.decoded[start..]);
        }
    }
}

impl<'a> Engine<'a> {
    pub fn new(codec: &'a Codec, alg: &'a FiniteAlgebra) -> Self {
        let ops = alg.operations().iter().filter(|op| op.arity > 0).collect();
        let nullary = alg
            .operations()
            .iter()
            .filter(|op| op.arity == 0)
            .map(|op| alg.apply(op, &[]))
            .collect();
        Self {
            codec,
            alg,
            ops,
            nullary,
        }
    }

    /// Least superset of `seeds` closed under the selected rules. Nullary
    /// operations contribute their constant cube once anything is present.
    pub fn close(
        &self,
        seeds: impl IntoIterator<Item = u64>,
        rules: Rules,
        schedule: Schedule,
    ) -> Closed {
        let mut store = Store {
            members: Vec::new(),
            decoded: Vec::new(),
            set: CodeSet::new(self.codec.space),
        };
        for c in seeds {
            store.push(self.codec, c);
        }
        if rules.ops && !store.members.is_empty() {
            for &c in &self.nullary {
                store.push(self.codec, self.codec.constant(c));
            }
        }
        let mut sizes = vec![store.members.len()];
        let rounds = match schedule {
            Schedule::Rounds => self.run_rounds(&mut store, rules, &mut sizes),
            Schedule::Eager => self.run_eager(&mut store, rules, &mut sizes),
        };
        Closed {
            members: store.members,
            rounds,
            sizes,
        }
    }

    fn run_rounds(&self, store: &mut Store, rules: Rules, sizes: &mut Vec<usize>) -> usize {
        let verts = self.codec.verts;
        let mut old = 0;
        let mut rounds = 0;
        while old < store.members.len() {
            let len = store.members.len();
            let (decoded, set) = (&store.decoded, &store.set);
            let mut cand: Vec<u64> = (old..len)
                .into_par_iter()
                .flat_map_iter(|f| {
                    let mut out = Vec::new();
                    let mut scratch = vec![0; verts];
                    if rules.sym_refl {
                        self.codec.sym_refl_images(
                            &decoded[f * verts..(f + 1) * verts],
                            &mut scratch,
                            &mut out,
                        );
                    }
                    if rules.ops {
                        for op in &self.ops {
                            for p in 0..op.arity {
                                self.frontier_tuples(
                                    op,
                                    p,
                                    f,
                                    old,
                                    len,
                                    decoded,
                                    &mut scratch,
                                    &mut out,
                                );
                            }
                        }
                    }
                    out.retain(|&c| !set.contains(c));
                    out
                })
                .collect();
            cand.sort_unstable();
            cand.dedup();
            for c in cand {
                store.push(self.codec, c);
            }
            old = len;
            rounds += 1;
            sizes.push(store.members.len());
        }
        rounds
    }

    /// Images of tuples whose first frontier position is `p`, holding frontier
    /// element `f`: earlier positions range over `0..old`, later ones over `0..len`.
    #[allow(clippy::too_many_arguments)]
    fn frontier_tuples(
        &self,
        op: &OperationTable,
        p: usize,
        f: usize,
        old: usize,
        len: usize,
        decoded: &[usize],
        scratch: &mut [usize],
        out: &mut Vec<u64>,
    ) {
        if p > 0 && old == 0 {
            return;
        }
        let a = op.arity;
        let bound = |q: usize| if q < p { old } else { len };
        let mut idx = vec![0usize; a];
        idx[p] = f;
        loop {
            out.push(self.image(op, &idx, decoded, scratch));
            let mut q = a;
            loop {
                if q == 0 {
                    return;
                }
                q -= 1;
                if q == p {
                    continue;
                }
                idx[q] += 1;
                if idx[q] < bound(q) {
                    break;
                }
                idx[q] = 0;
            }
        }
    }

    #[inline]
    fn image(
        &self,
        op: &OperationTable,
        idx: &[usize],
        decoded: &[usize],
        scratch: &mut [usize],
    ) -> u64 {
        let verts = self.codec.verts;
        let n = self.alg.size();
        for (v, s) in scratch.iter_mut().enumerate() {
            let mut row = 0;
            for &i in idx {
                row = row * n + decoded[i * verts + v];
            }
            *s = op.table[row];
        }
        self.codec.encode(scratch)
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|op| op.arity).max().unwrap_or(0)
    }

    /// Whether the cubes `members` (all present in `set`) are closed under
    /// every operation of positive arity.
    pub fn is_op_closed(&self, members: &[u64], set: &CodeSet) -> bool {
        let verts = self.codec.verts;
        let mut decoded = vec![0; members.len() * verts];
        for (j, &c) in members.iter().enumerate() {
            self.codec
                .decode_into(c, &mut decoded[j * verts..(j + 1) * verts]);
        }
        let len = members.len();
        self.ops.iter().all(|op| {
            (0..len).into_par_iter().all(|f| {
                let mut out = Vec::new();
                let mut scratch = vec![0; verts];
                // f in position 0, the rest ranging over everything
                self.frontier_tuples(op, 0, f, 0, len, &decoded, &mut scratch, &mut out);
                out.iter().all(|&c| set.contains(c))
            })
        })
    }

    fn run_eager(&self, store: &mut Store, rules: Rules, sizes: &mut Vec<usize>) -> usize {
        let verts = self.codec.verts;
        let mut scratch = vec![0; verts];
        let mut fresh = Vec::new();
        let mut i = 0;
        while i < store.members.len() {
            if rules.sym_refl {
                let labels = store.decoded[i * verts..(i + 1) * verts].to_vec();
                self.codec
                    .sym_refl_images(&labels, &mut scratch, &mut fresh);
                for c in fresh.drain(..) {
                    store.push(self.codec, c);
                }
            }
            if rules.ops {
                for op in &self.ops {
                    let decoded = &store.decoded;
                    for_each_tuple_touching(op.arity, i, |idx| {
                        fresh.push(self.image(op, idx, decoded, &mut scratch));
                    });
                    for c in fresh.drain(..) {
                        store.push(self.codec, c);
                    }
                }
            }
            i += 1;
            sizes.push(store.members.len());
        }
        i
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::cube::CubeShape;

    #[test]
    fn schedules_agree() {
        let shape = CubeShape::normalized(2);
        for alg in corpus::bundled_up_to(4) {
            let codec = Codec::new(alg.size(), &shape, None, false).unwrap();
            let e = Engine::new(&codec, &alg);
            let seed = codec.encode(&[0, 1, 0, 1]);
            for rules in [
                Rules {
                    sym_refl: true,
                    ops: true,
                },
                Rules {
                    sym_refl: false,
                    ops: true,
                },
                Rules {
                    sym_refl: true,
                    ops: false,
                },
            ] {
                let mut a = e.close([seed], rules, Schedule::Rounds).members;
                let mut b = e.close([seed], rules, Schedule::Eager).members;
                a.sort_unstable();
                b.sort_unstable();
                assert_eq!(a, b, "{}", alg.name());
            }
        }
    }

    #[test]
    fn empty_seed_stays_empty() {
        let alg = corpus::cyclic(3);
        let codec = Codec::new(3, &CubeShape::normalized(2), None, false).unwrap();
        let closed = Engine::new(&codec, &alg).close(
            [],
            Rules {
                sym_refl: true,
                ops: true,
            },
            Schedule::Rounds,
        );
        assert!(closed.members.is_empty());
    }
}
