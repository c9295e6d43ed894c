//! Independent and `K_s`-free transversals in vertex-partitioned graphs.
//!
//! A graph comes with a partition of its vertices into parts. A transversal
//! picks one vertex from each part; it is independent when no two picks are
//! adjacent, and `K_s`-free when the picks span no clique of order `s`.
//!
//! ```
//! use transversal::generators::gen_random_local_sparse;
//! use transversal::lll::moser_tardos_it;
//!
//! let g = gen_random_local_sparse(20, 33, 6, 6, 1).unwrap();
//! let report = moser_tardos_it(&g, 7, 1_000_000).unwrap();
//! let t = report.transversal.unwrap();
//! assert!(g.is_independent_transversal(&t).unwrap());
//! ```

pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod ksfree;
pub mod lll;
pub mod nibble;
pub mod oracle;
pub mod reducer;
pub mod seed;

pub use error::{Error, Result, Stage};
pub use graph::{GraphStats, MultipartiteGraph, PartIndex, Transversal, VertexId};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/resampling.md")]
    mod resampling {}
    #[doc = include_str!("../../../book/src/degree-reduction.md")]
    mod degree_reduction {}
    #[doc = include_str!("../../../book/src/nibble.md")]
    mod nibble {}
    #[doc = include_str!("../../../book/src/clique-free.md")]
    mod clique_free {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
