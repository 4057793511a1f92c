//! Exact computations in graph products of cyclic groups.
//!
//! The crate works with groups given by a finite simplicial graph with a copy
//! of `Z` or `Z/n` on every vertex, where adjacent vertex groups commute. It
//! provides normal forms for elements, support and stable-support
//! computations, classification of regular and strongly irreducible elements,
//! searches for short elements with large support inside product sets `U^n`,
//! and enumeration of product sets for growth experiments.
//!
//! ```
//! use gpw_core::{fixtures, GroupElement, support};
//!
//! let ctx = fixtures::bipartite_context(3);
//! let g = GroupElement::parse(&ctx, "x1 x2 x3").unwrap();
//! assert!(support::classify(&g).strongly_irreducible);
//! ```

pub mod bass_serre;
pub mod coefficients;
pub mod context;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod growth;
pub mod oracles;
pub mod search;
pub mod support;
pub mod words;

pub use bass_serre::{ExceptionalExponentReport, TreeAction};
pub use coefficients::{Order, VertexGroup};
pub use context::{GroupContext, Syllable};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId, VertexSet};
pub use growth::{GrowthReport, SharpnessInstance};
pub use search::{Feasibility, FeasibilityReason, SearchCertificate, ShortSearch, Target};
pub use support::SupportReport;
pub use words::{CyclicReduction, GroupElement};
