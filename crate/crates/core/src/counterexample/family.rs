//! The algebras ℂ and ℂ_k over the free values.

use serde::Serialize;

use super::free::{FreeStore, FreeValue, Symbol};
use crate::cube::{CubeShape, LabeledCube};
use crate::error::{Error, Result};

/// Which counterexample algebra.
///
/// `C` has one ternary operation `t` with `t(0,0,0) = t(1,2,0) = 3`.
/// `Ck(k)` has one `(k+1)`-ary operation `t_k` whose special domain is
/// `{(0,0),(1,2)} × {0,3} × .. × {0,k+1}` minus `(1,2,3,..,k+1)`, sent to
/// `k+2`. Everywhere else both are injective into fresh elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    C,
    Ck(usize),
}

impl Family {
    pub fn new_ck(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "C_k needs k >= 2, got {k}"
            )));
        }
        Ok(Family::Ck(k))
    }

    pub fn name(self) -> String {
        match self {
            Family::C => "C".into(),
            Family::Ck(k) => format!("C_{k}"),
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::C => 3,
            Family::Ck(k) => k + 1,
        }
    }

    pub fn symbol(self) -> Symbol {
        match self {
            Family::C => Symbol::S,
            Family::Ck(k) => Symbol::T(k),
        }
    }

    /// The value on the special domain.
    pub fn special_value(self) -> u32 {
        match self {
            Family::C => 3,
            Family::Ck(k) => k as u32 + 2,
        }
    }

    /// Cube dimension at which the family separates the commutators.
    pub fn dimension(self) -> usize {
        match self {
            Family::C => 2,
            Family::Ck(k) => k,
        }
    }

    /// Naturals `0..=special_value`, enough to reach every special argument.
    pub fn default_seeds(self) -> Vec<u32> {
        (0..=self.special_value()).collect()
    }

    /// Non-zero admissible value at argument position `j`, if any.
    ///
    /// Position 0 admits `{0, 1}` and position 1 admits `{0, 2}` (coupled).
    /// Later positions admit `{0, j+1}` in ℂ_k and only `0` in ℂ.
    pub(crate) fn high_value(self, j: usize) -> Option<u32> {
        match (self, j) {
            (_, 0) => Some(1),
            (_, 1) => Some(2),
            (Family::C, _) => None,
            (Family::Ck(_), j) => Some(j as u32 + 1),
        }
    }

    /// Whether the last special tuple `(1,2,3,..)` is excluded.
    pub(crate) fn excludes_all_high(self) -> bool {
        matches!(self, Family::Ck(_))
    }

    /// Whether `args` lies in the special domain.
    pub fn in_domain(self, args: &[FreeValue]) -> bool {
        let nat = |j: usize| args[j].as_nat();
        let high = match (nat(0), nat(1)) {
            (Some(0), Some(0)) => false,
            (Some(1), Some(2)) => true,
            _ => return false,
        };
        let mut all_high = high;
        for j in 2..args.len() {
            match nat(j) {
                Some(0) => all_high = false,
                Some(v) if Some(v) == self.high_value(j) => {}
                _ => return false,
            }
        }
        !(self.excludes_all_high() && all_high)
    }
}

/// One counterexample algebra with its intern table.
pub struct Model {
    family: Family,
    store: FreeStore,
}

impl Model {
    pub fn new(family: Family) -> Result<Self> {
        if let Family::Ck(k) = family {
            Family::new_ck(k)?;
        }
        Ok(Self {
            family,
            store: FreeStore::new(),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn store(&self) -> &FreeStore {
        &self.store
    }

    pub fn eval(&self, args: &[FreeValue]) -> Result<FreeValue> {
        if args.len() != self.family.arity() {
            return Err(Error::ArityMismatch {
                op: self.family.symbol().to_string(),
                expected: self.family.arity(),
                found: args.len(),
            });
        }
        Ok(self.eval_unchecked(args))
    }

    pub(crate) fn eval_unchecked(&self, args: &[FreeValue]) -> FreeValue {
        if self.family.in_domain(args) {
            FreeValue::nat(self.family.special_value())
        } else {
            self.store.app(self.family.symbol(), args)
        }
    }

    /// Vertexwise application to cubes of one shape.
    pub fn eval_cubes(&self, cubes: &[LabeledCube<FreeValue>]) -> Result<LabeledCube<FreeValue>> {
        if cubes.len() != self.family.arity() {
            return Err(Error::ArityMismatch {
                op: self.family.symbol().to_string(),
                expected: self.family.arity(),
                found: cubes.len(),
            });
        }
        let shape = cubes[0].shape();
        if cubes.iter().any(|c| c.shape() != shape) {
            return Err(Error::ShapeMismatch(
                "argument cubes differ in shape".into(),
            ));
        }
        let mut args = vec![FreeValue::nat(0); cubes.len()];
        let labels = (0..shape.vertex_count())
            .map(|v| {
                for (a, c) in args.iter_mut().zip(cubes) {
                    *a = *c.get(v);
                }
                self.eval_unchecked(&args)
            })
            .collect();
        LabeledCube::new(shape.clone(), labels)
    }

    /// `cube_i(x, y)` on the normalized `dim`-cube.
    pub fn pair_cube(dim: usize, i: usize, x: u32, y: u32) -> Result<LabeledCube<FreeValue>> {
        LabeledCube::from_pair(
            CubeShape::normalized(dim),
            i,
            FreeValue::nat(x),
            FreeValue::nat(y),
        )
    }

    pub fn render_cube(&self, c: &LabeledCube<FreeValue>) -> Vec<String> {
        self.store.render_all(c.labels())
    }
}

/// `t(x, y, z)` in ℂ.
pub fn eval_c(store: &FreeStore, x: FreeValue, y: FreeValue, z: FreeValue) -> FreeValue {
    let args = [x, y, z];
    if Family::C.in_domain(&args) {
        FreeValue::nat(3)
    } else {
        store.app(Symbol::S, &args)
    }
}

/// `t_k(args)` in ℂ_k.
pub fn eval_ck(store: &FreeStore, k: usize, args: &[FreeValue]) -> Result<FreeValue> {
    let fam = Family::new_ck(k)?;
    if args.len() != fam.arity() {
        return Err(Error::ArityMismatch {
            op: fam.symbol().to_string(),
            expected: fam.arity(),
            found: args.len(),
        });
    }
    Ok(if fam.in_domain(args) {
        FreeValue::nat(fam.special_value())
    } else {
        store.app(fam.symbol(), args)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: &[u32]) -> Vec<FreeValue> {
        v.iter().map(|&m| FreeValue::nat(m)).collect()
    }

    #[test]
    fn c_table() {
        let st = FreeStore::new();
        let t = |v: &[u32]| {
            let a = n(v);
            eval_c(&st, a[0], a[1], a[2])
        };
        assert_eq!(t(&[0, 0, 0]), FreeValue::nat(3));
        assert_eq!(t(&[1, 2, 0]), FreeValue::nat(3));
        assert_eq!(st.render(t(&[0, 0, 1])), "(s 0 0 1)");
        assert_eq!(st.render(t(&[1, 2, 1])), "(s 1 2 1)");
        assert_ne!(t(&[0, 0, 1]), t(&[1, 2, 1]));
        // injective away from the special domain
        let mut seen = std::collections::HashSet::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let v = t(&[a, b, c]);
                    if v.is_app() {
                        assert!(seen.insert(v));
                    }
                }
            }
        }
        assert_eq!(seen.len(), 62);
    }

    #[test]
    fn ck_table() {
        let st = FreeStore::new();
        for k in 2..=5usize {
            let special = FreeValue::nat(k as u32 + 2);
            let mut specials = 0;
            // enumerate the full product {0,1}x{0,2}x{0,3}..{0,k+1} and its neighbours
            for mask in 0..1u32 << (k + 1) {
                let args: Vec<u32> = (0..=k)
                    .map(|j| if mask >> j & 1 == 1 { j as u32 + 1 } else { 0 })
                    .collect();
                let v = eval_ck(&st, k, &n(&args)).unwrap();
                let coupled = (args[0] == 0) == (args[1] == 0);
                let all_high = mask == (1 << (k + 1)) - 1;
                if coupled && !all_high {
                    assert_eq!(v, special, "k={k} {args:?}");
                    specials += 1;
                } else {
                    assert!(v.is_app(), "k={k} {args:?}");
                }
            }
            assert_eq!(specials, (1 << k) - 1);
        }
        assert!(eval_ck(&st, 1, &n(&[0, 0])).is_err());
        assert!(matches!(
            eval_ck(&st, 3, &n(&[0, 0, 0])),
            Err(Error::ArityMismatch { .. })
        ));
        assert_eq!(
            st.render(eval_ck(&st, 2, &n(&[1, 2, 3])).unwrap()),
            "(t_2 1 2 3)"
        );
    }

    #[test]
    fn model_matches_free_functions() {
        let m = Model::new(Family::C).unwrap();
        let st = FreeStore::new();
        for a in 0..3 {
            for b in 0..3 {
                let args = n(&[a, b, 0]);
                let x = m.eval(&args).unwrap();
                let y = eval_c(&st, args[0], args[1], args[2]);
                assert_eq!(m.store().render(x), st.render(y));
            }
        }
        assert!(m.eval(&n(&[0, 0])).is_err());
        assert!(Model::new(Family::Ck(1)).is_err());
        assert_eq!(Family::Ck(3).default_seeds(), vec![0, 1, 2, 3, 4, 5]);
    }
}
