//! Finite algebras as operation tables.
//!
//! The carrier of an algebra of size `n` is always `{0, .., n-1}`. An
//! operation of arity `m` is stored as a flat row-major table of length
//! `n^m`, so the value at `(a_0, .., a_{m-1})` sits at
//! `a_0 * n^(m-1) + .. + a_{m-1}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationTable {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl OperationTable {
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        Self {
            name: name.into(),
            arity,
            table,
        }
    }

    /// Tabulates `f` over all argument tuples of a carrier of size `size`.
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        size: usize,
        f: impl Fn(&[usize]) -> usize,
    ) -> Self {
        let len = size.pow(arity as u32);
        let mut args = vec![0; arity];
        let mut table = Vec::with_capacity(len);
        for mut idx in 0..len {
            for slot in args.iter_mut().rev() {
                *slot = idx % size;
                idx /= size;
            }
            table.push(f(&args));
        }
        Self::new(name, arity, table)
    }

    #[inline]
    pub fn index(&self, size: usize, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * size + a)
    }

    #[inline]
    pub fn apply(&self, size: usize, args: &[usize]) -> usize {
        self.table[self.index(size, args)]
    }
}

#[derive(Deserialize)]
struct RawAlgebra {
    name: String,
    size: usize,
    operations: Vec<OperationTable>,
}

/// A finite algebra on `{0, .., size-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebra")]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    operations: Vec<OperationTable>,
}

impl TryFrom<RawAlgebra> for FiniteAlgebra {
    type Error = Error;

    fn try_from(raw: RawAlgebra) -> Result<Self> {
        FiniteAlgebra::new(raw.name, raw.size, raw.operations)
    }
}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        size: usize,
        operations: Vec<OperationTable>,
    ) -> Result<Self> {
        let name = name.into();
        if size == 0 {
            return Err(Error::InvalidAlgebra(format!("{name}: empty carrier")));
        }
        if operations.is_empty() {
            return Err(Error::InvalidAlgebra(format!("{name}: no operations")));
        }
        let mut seen = BTreeSet::new();
        for op in &operations {
            if !seen.insert(op.name.as_str()) {
                return Err(Error::InvalidAlgebra(format!(
                    "{name}: duplicate operation `{}`",
                    op.name
                )));
            }
            let expected = size
                .checked_pow(op.arity as u32)
                .ok_or_else(|| Error::InvalidAlgebra(format!("{name}: table too large")))?;
            if op.table.len() != expected {
                return Err(Error::InvalidAlgebra(format!(
                    "{name}: operation `{}` of arity {} needs {expected} entries, has {}",
                    op.name,
                    op.arity,
                    op.table.len()
                )));
            }
            if let Some(&bad) = op.table.iter().find(|&&v| v >= size) {
                return Err(Error::InvalidAlgebra(format!(
                    "{name}: operation `{}` has entry {bad} outside the carrier",
                    op.name
                )));
            }
        }
        Ok(Self {
            name,
            size,
            operations,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra serialization is infallible")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[OperationTable] {
        &self.operations
    }

    pub fn operation(&self, name: &str) -> Result<&OperationTable> {
        self.operations
            .iter()
            .find(|op| op.name == name)
            .ok_or_else(|| Error::UnknownOperation(name.to_string()))
    }

    pub fn max_arity(&self) -> usize {
        self.operations.iter().map(|op| op.arity).max().unwrap_or(0)
    }

    #[inline]
    pub fn apply(&self, op: &OperationTable, args: &[usize]) -> usize {
        op.apply(self.size, args)
    }

    pub fn check_element(&self, element: usize) -> Result<()> {
        if element < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element,
                size: self.size,
            })
        }
    }
}

/// A term over operation names and variables `x0, x1, ..`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Op(String, Vec<Term>),
}

impl Term {
    pub fn var(index: usize) -> Self {
        Term::Var(index)
    }

    pub fn op(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Op(name.into(), args)
    }

    pub fn height(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(_, args) => 1 + args.iter().map(Term::height).max().unwrap_or(0),
        }
    }
}

pub fn eval_term(alg: &FiniteAlgebra, term: &Term, args: &[usize]) -> Result<usize> {
    for &a in args {
        alg.check_element(a)?;
    }
    eval_inner(alg, term, args)
}

fn eval_inner(alg: &FiniteAlgebra, term: &Term, args: &[usize]) -> Result<usize> {
    match term {
        Term::Var(index) => args.get(*index).copied().ok_or(Error::VariableOutOfRange {
            index: *index,
            len: args.len(),
        }),
        Term::Op(name, children) => {
            let op = alg.operation(name)?;
            if op.arity != children.len() {
                return Err(Error::ArityMismatch {
                    op: name.clone(),
                    expected: op.arity,
                    found: children.len(),
                });
            }
            let values = children
                .iter()
                .map(|c| eval_inner(alg, c, args))
                .collect::<Result<Vec<_>>>()?;
            Ok(alg.apply(op, &values))
        }
    }
}

/// Least subset containing `seed` and closed under every operation.
///
/// Nullary operations always contribute their value, so the empty seed
/// generates the closure of the nullary outputs.
pub fn subalgebra_generated(alg: &FiniteAlgebra, seed: &[usize]) -> Result<BTreeSet<usize>> {
    let n = alg.size();
    let mut member = vec![false; n];
    let mut elems = Vec::new();
    for &s in seed {
        alg.check_element(s)?;
        if !member[s] {
            member[s] = true;
            elems.push(s);
        }
    }
    for op in alg.operations().iter().filter(|op| op.arity == 0) {
        let v = op.table[0];
        if !member[v] {
            member[v] = true;
            elems.push(v);
        }
    }
    // every tuple is visited once, when its largest position is processed
    let mut next = 0;
    let mut args = Vec::new();
    while next < elems.len() {
        let newest = next;
        next += 1;
        for op in alg.operations().iter().filter(|op| op.arity > 0) {
            for_each_tuple_touching(op.arity, newest, |idx| {
                args.clear();
                args.extend(idx.iter().map(|&i| elems[i]));
                let v = alg.apply(op, &args);
                if !member[v] {
                    member[v] = true;
                    elems.push(v);
                }
            });
        }
    }
    Ok(elems.into_iter().collect())
}

/// Calls `f` on every index tuple of length `arity` over `0..=newest` that
/// contains `newest` at least once.
pub(crate) fn for_each_tuple_touching(arity: usize, newest: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; arity];
    let bound = newest + 1;
    loop {
        if idx.contains(&newest) {
            f(&idx);
        }
        let mut pos = arity;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < bound {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn z3_addition_term() {
        let z3 = corpus::cyclic(3);
        let t = Term::op("add", vec![Term::var(0), Term::var(1)]);
        assert_eq!(eval_term(&z3, &t, &[1, 2]).unwrap(), 0);
        let t = Term::op(
            "add",
            vec![
                Term::var(0),
                Term::op("add", vec![Term::var(0), Term::var(0)]),
            ],
        );
        assert_eq!(eval_term(&z3, &t, &[2]).unwrap(), 0);
        assert_eq!(t.height(), 2);
    }

    #[test]
    fn variable_term_is_identity() {
        for alg in corpus::bundled() {
            for c in 0..alg.size() {
                assert_eq!(eval_term(&alg, &Term::var(0), &[c]).unwrap(), c);
            }
        }
    }

    #[test]
    fn term_errors() {
        let z3 = corpus::cyclic(3);
        let unknown = Term::op("mul", vec![Term::var(0), Term::var(0)]);
        assert!(matches!(
            eval_term(&z3, &unknown, &[0]),
            Err(Error::UnknownOperation(_))
        ));
        let bad_arity = Term::op("add", vec![Term::var(0)]);
        assert!(matches!(
            eval_term(&z3, &bad_arity, &[0]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            eval_term(&z3, &Term::var(3), &[0, 1]),
            Err(Error::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn row_major_layout() {
        let op = OperationTable::from_fn("f", 2, 3, |a| a[0] * 3 + a[1]);
        assert_eq!(op.table, (0..9).collect::<Vec<_>>());
        assert_eq!(op.index(3, &[2, 1]), 7);
    }

    #[test]
    fn subalgebras_of_z4() {
        let z4 = corpus::cyclic(4);
        let s: Vec<_> = subalgebra_generated(&z4, &[2])
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(s, vec![0, 2]);
        let s: Vec<_> = subalgebra_generated(&z4, &[1])
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(s, vec![0, 1, 2, 3]);
        let all: Vec<_> = (0..4).collect();
        assert_eq!(
            subalgebra_generated(&z4, &all)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            all
        );
    }

    #[test]
    fn nullary_operations_seed_the_empty_closure() {
        let alg = FiniteAlgebra::new(
            "pointed",
            3,
            vec![
                OperationTable::new("e", 0, vec![1]),
                OperationTable::from_fn("s", 1, 3, |a| (a[0] + 1) % 3),
            ],
        )
        .unwrap();
        assert_eq!(subalgebra_generated(&alg, &[]).unwrap().len(), 3);
        let only_nullary =
            FiniteAlgebra::new("c", 2, vec![OperationTable::new("e", 0, vec![1])]).unwrap();
        assert_eq!(
            subalgebra_generated(&only_nullary, &[])
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![1]
        );
    }

    #[test]
    fn validation() {
        assert!(FiniteAlgebra::new("x", 2, vec![]).is_err());
        assert!(FiniteAlgebra::new("x", 2, vec![OperationTable::new("f", 1, vec![0])]).is_err());
        assert!(FiniteAlgebra::new("x", 2, vec![OperationTable::new("f", 1, vec![0, 2])]).is_err());
        let json =
            r#"{"name":"bad","size":2,"operations":[{"name":"f","arity":2,"table":[0,1,1]}]}"#;
        assert!(FiniteAlgebra::from_json(json).is_err());
    }

    #[test]
    fn json_layout_is_stable() {
        let z2 = corpus::cyclic(2);
        assert_eq!(
            z2.to_json(),
            r#"{"name":"z2","size":2,"operations":[{"name":"add","arity":2,"table":[0,1,1,0]}]}"#
        );
        assert_eq!(FiniteAlgebra::from_json(&z2.to_json()).unwrap(), z2);
    }
}
