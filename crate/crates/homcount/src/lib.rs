//! Exact counting of graph homomorphisms.
//!
//! The centerpiece is a dynamic program over expressions that build the
//! target graph from labeled vertices: given such an expression, the number
//! of homomorphisms from any source graph is computed by lifting counting
//! tables through the expression's operators, without materializing the
//! target. Around it sit a searcher that finds expressions for small
//! targets, counters for two structured target families (subdivided cliques
//! and Kneser graphs) built on a weighted set-partition engine, and
//! brute-force oracles used to verify all of the above.
//!
//! All counts are exact, arbitrary-precision integers. All functions are
//! pure; nothing holds interior mutability, so values can be shared freely
//! across threads.

pub mod counters;
pub mod dp;
pub mod guide;
pub mod error;
pub mod expr;
pub mod gadget;
pub mod graph;
pub mod iso;
pub mod oracle;
pub mod partition;
pub mod synthesis;
pub mod verify;

pub use dp::{base_table, count_hom_via_expr, lift_beta, lift_connect, lift_relabel, HomTable, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use expr::{hypercube_expr, ClassicExpr, ExtExpr};
pub use counters::{
    count_hom_kneser, count_hom_subdivided, count_hom_subdivided_consistent, KneserInstance,
    SubdividedInstance,
};
pub use gadget::{gadget_reduce, GadgetInstance};
pub use iso::{graph_iso, labeled_iso};
pub use oracle::{brute_hom, brute_hom_labeled, brute_iso, brute_labeled_iso, brute_par};
pub use graph::{
    blowup, complement, gen_clique, gen_cycle, gen_hypercube, gen_kneser, gen_path,
    subdivide_clique, Graph, HomCount, LabeledGraph, PartialLabeling, SubdividedClique,
};
pub use partition::{count_colorings, par, SetFunction};
pub use synthesis::{synthesize, SynthTable, BETA_SEARCH_MAX_K};
pub use verify::{run_verification, SuiteResult, VerifyReport};
