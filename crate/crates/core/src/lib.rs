//! Exact computations on generalized Kneser hypergraphs with intersection
//! multiplicities.
//!
//! The crate covers four areas:
//!
//! * the data model ([`GroundContext`], [`SetSystem`], [`Hypergraph`],
//!   [`KneserInstance`]) and explicit construction of `KG^r_s(S)` (multiset
//!   edges allowed) and `kg^r_s(S)` (set edges only);
//! * exact and greedy hypergraph coloring ([`coloring`]), including an
//!   implicit mode that decides independence of a color class without ever
//!   materializing the Kneser edge set;
//! * the s-disjoint r-colorability defect with checkable certificates
//!   ([`defect`]);
//! * closed-form chromatic bounds ([`bounds`]) and the representability
//!   toolkit for up-monotone hypergraphs ([`representation`]).
//!
//! Ground elements are 1-based everywhere a user sees them (JSON, `Display`);
//! vertex indices inside hypergraphs are 0-based in the Rust API and 1-based
//! on the wire.

pub mod bounds;
pub mod coloring;
pub mod combinatorics;
pub mod defect;
mod error;
pub mod hypergraph;
pub mod kneser;
mod lp;
pub mod representation;
pub mod subset;
pub mod system;

pub use coloring::{
    chromatic_number, greedy_coloring, star_coloring_pairs, verify_coloring, ColorClassOracle,
    Coloring, OracleMode, SearchBudget, Verdict,
};
pub use defect::{colorability_defect, defect_pairs_formula, s_free_sets, DefectCertificate};
pub use error::{Error, Result};
pub use hypergraph::{complete_hypergraph, support, up_monotone_closure, Hypergraph, MultisetEdge};
pub use kneser::{
    build_kneser, build_kneser_with_cap, is_kneser_edge, is_s_disjoint, KneserInstance, Variant,
    DEFAULT_ENUMERATION_CAP,
};
pub use subset::Subset;
pub use system::{GroundContext, SetSystem};
