//! Matched-tree plumbings of twisted annuli.
//!
//! A matched tree with a framing on its vertices and a plumbing sign on its
//! edges determines an arborescent Seifert surface. This crate computes,
//! exactly, the Seifert matrix of that surface, the induced pairing on the
//! homology of its complement, classical knot invariants, and decides which
//! plumbing labelings can give equivalent surfaces.
//!
//! ```
//! use arbor::form::{FramedPlumbing, Sign};
//! use arbor::tree::MatchedTree;
//! use arbor::classify::count_classes;
//!
//! let tree = MatchedTree::chain(2).unwrap();
//! let fp = FramedPlumbing::with_labels(
//!     tree,
//!     &[("w1", 3), ("b1", -2), ("w2", 5), ("b2", -4)],
//!     Sign::Plus,
//! )
//! .unwrap();
//! let count = count_classes(fp.tree(), fp.framing()).unwrap();
//! assert_eq!(count.classes, 8);
//! ```

pub mod classify;
pub mod cli;
pub mod form;
pub mod format;
pub mod linalg;
pub mod pairing;
pub mod tree;

pub use classify::{count_classes, surfaces_equivalent, EquivalenceReport, SpinCBox};
pub use form::{FramedPlumbing, Sign};
pub use format::{parse, serialize, TreeFile};
pub use linalg::{IntMatrix, IntPolynomial};
pub use tree::{Color, MatchedTree, VertexId};
