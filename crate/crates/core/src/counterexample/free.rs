//! Hash-consed values of the infinite counterexample algebras.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use serde::{Serialize, Serializer};

const APP_BIT: u32 = 1 << 31;

/// A natural number below `2^31`, or an interned formal application.
///
/// Applications are interned in a [`FreeStore`], so two values are equal
/// exactly when they are built from equal parts.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeValue(u32);

impl FreeValue {
    pub const fn nat(m: u32) -> Self {
        assert!(m < APP_BIT, "natural too large for a free value");
        FreeValue(m)
    }

    pub fn as_nat(self) -> Option<u32> {
        (self.0 & APP_BIT == 0).then_some(self.0)
    }

    pub fn is_app(self) -> bool {
        self.0 & APP_BIT != 0
    }

    fn app_id(self) -> Option<usize> {
        self.is_app().then_some((self.0 & !APP_BIT) as usize)
    }
}

impl fmt::Debug for FreeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_nat() {
            Some(m) => write!(f, "{m}"),
            None => write!(f, "#{}", self.0 & !APP_BIT),
        }
    }
}

/// The formal operation symbol of an application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// The injection `s` of the algebra ℂ.
    S,
    /// The injective part of `t_k` in ℂ_k.
    T(usize),
}

impl Symbol {
    fn code(self) -> u32 {
        match self {
            Symbol::S => 0,
            Symbol::T(k) => k as u32,
        }
    }

    fn from_code(c: u32) -> Self {
        if c == 0 {
            Symbol::S
        } else {
            Symbol::T(c as usize)
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::S => write!(f, "s"),
            Symbol::T(k) => write!(f, "t_{k}"),
        }
    }
}

/// A decoded value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Nat(u32),
    App(Symbol, Vec<FreeValue>),
}

#[derive(Default)]
struct Inner {
    keys: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
}

/// Append-only intern table for applications. Safe to share between threads.
#[derive(Default)]
pub struct FreeStore {
    inner: RwLock<Inner>,
}

impl FreeStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// The interned value `sym(args..)`.
    pub fn app(&self, sym: Symbol, args: &[FreeValue]) -> FreeValue {
        let mut key = Vec::with_capacity(args.len() + 1);
        key.push(sym.code());
        key.extend(args.iter().map(|a| a.0));
        if let Some(&id) = self.inner.read().expect("store lock").index.get(&key) {
            return FreeValue(APP_BIT | id);
        }
        let mut inner = self.inner.write().expect("store lock");
        if let Some(&id) = inner.index.get(&key) {
            return FreeValue(APP_BIT | id);
        }
        let id = inner.keys.len() as u32;
        assert!(id < APP_BIT, "free store exhausted");
        inner.keys.push(key.clone());
        inner.index.insert(key, id);
        FreeValue(APP_BIT | id)
    }

    pub fn node(&self, v: FreeValue) -> Node {
        match v.app_id() {
            None => Node::Nat(v.0),
            Some(id) => {
                let inner = self.inner.read().expect("store lock");
                let key = &inner.keys[id];
                Node::App(
                    Symbol::from_code(key[0]),
                    key[1..].iter().map(|&a| FreeValue(a)).collect(),
                )
            }
        }
    }

    /// Number of interned applications.
    pub fn len(&self) -> usize {
        self.inner.read().expect("store lock").keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// S-expression such as `(s 0 0 1)`.
    pub fn render(&self, v: FreeValue) -> String {
        let mut out = String::new();
        self.render_into(v, &mut out);
        out
    }

    fn render_into(&self, v: FreeValue, out: &mut String) {
        match self.node(v) {
            Node::Nat(m) => out.push_str(&m.to_string()),
            Node::App(sym, args) => {
                out.push('(');
                out.push_str(&sym.to_string());
                for a in args {
                    out.push(' ');
                    self.render_into(a, out);
                }
                out.push(')');
            }
        }
    }

    pub fn render_all(&self, vs: &[FreeValue]) -> Vec<String> {
        vs.iter().map(|&v| self.render(v)).collect()
    }
}

/// A value paired with its store, for serialization as an S-expression.
pub struct Rendered<'a>(pub &'a FreeStore, pub FreeValue);

impl Serialize for Rendered<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.render(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning() {
        let st = FreeStore::new();
        let n = FreeValue::nat;
        let a = st.app(Symbol::S, &[n(0), n(0), n(1)]);
        let b = st.app(Symbol::S, &[n(0), n(0), n(1)]);
        let c = st.app(Symbol::S, &[n(1), n(2), n(1)]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(st.len(), 2);
        assert!(a.is_app() && a.as_nat().is_none());
        for m in 0..10 {
            assert_ne!(a, n(m));
        }
        assert_eq!(st.render(a), "(s 0 0 1)");
        let nested = st.app(Symbol::T(2), &[a, n(3), c]);
        assert_eq!(st.render(nested), "(t_2 (s 0 0 1) 3 (s 1 2 1))");
        assert_eq!(st.node(n(7)), Node::Nat(7));
        assert_eq!(st.node(c), Node::App(Symbol::S, vec![n(1), n(2), n(1)]));
    }

    #[test]
    fn concurrent_interning_is_consistent() {
        use rayon::prelude::*;
        let st = FreeStore::new();
        let ids: Vec<FreeValue> = (0..2000u32)
            .into_par_iter()
            .map(|i| {
                st.app(
                    Symbol::S,
                    &[FreeValue::nat(i % 50), FreeValue::nat(0), FreeValue::nat(0)],
                )
            })
            .collect();
        assert_eq!(st.len(), 50);
        for (i, v) in ids.iter().enumerate() {
            assert_eq!(*v, ids[i % 50]);
        }
    }
}
