//! The infinite algebras ℂ and ℂ_k, evaluated lazily over hash-consed
//! values, with their explicit witnesses and a bounded polynomial search.

mod family;
mod free;
mod search;
mod witness;

pub use family::{eval_c, eval_ck, Family, Model};
pub use free::{FreeStore, FreeValue, Node, Rendered, Symbol};
pub use search::{
    search_polyk_violation, Leaves, SearchConfig, SearchHit, SearchReport, DEFAULT_MAX_LEAF_SETS,
    DEFAULT_MAX_POOL,
};
pub use witness::{direct_tc_witness, eta_witness, glued_hyper_witness, Witness, WitnessReport};
