//! Extremal problems for 3-uniform hypergraphs: constructions, detection of
//! small forbidden patterns, design-based packings, exact Turán search and
//! exact-arithmetic checks of the asymptotic formulas.

pub mod budget;
pub mod canon;
pub mod constructions;
pub mod designs;
pub mod detection;
pub mod error;
pub mod formulas;
pub mod gadgets;
pub mod hypergraph;
pub mod index;
pub mod io;
pub mod partition;
pub mod search;
pub mod triple;
pub mod value;

pub use budget::{Budget, Meter};
pub use canon::{canonical_form, CanonicalKey};
pub use detection::{contains_f5t, count_copies, find_embedding, Containment, Embedding};
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph3, PairSet};
pub use index::EdgeIndex;
pub use partition::Partition3;
pub use search::{ForbiddenFamily, SearchOutcome, SearchStatus};
pub use triple::{all_triples, Triple};
pub use value::ValueBound;
