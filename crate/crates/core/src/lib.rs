//! Subtree mode queries on leaf-colored trees.
//!
//! Given a rooted ordered tree whose leaves carry colors, [`mode::scm_all_modes`]
//! reports for every node the most frequent leaf color below it in linear time.
//! The same machinery yields anti-modes, per-node top-k lists and the
//! node-colored variant. Around it sit three baseline constructions and a
//! brute-force oracle ([`baselines`]), a generalized suffix tree over document
//! collections ([`suffix`]) and the string applications built on top of it
//! ([`retrieval`]): top-1/top-k document retrieval, uniform pattern mining and
//! consistent q-gram counting. [`dag`] holds the descendant-mode problem on
//! DAGs and its reduction from boolean matrix multiplication.
//!
//! ```
//! use subtree_mode::{mode, LeafColoredTree};
//!
//! let t = LeafColoredTree::parse("0 -1\n1 0 2\n2 0 2\n3 0 1\n").unwrap();
//! let modes = mode::scm_all_modes(&t);
//! assert_eq!(modes.get(0), (2, 2));
//! ```

pub mod baselines;
pub mod dag;
pub mod error;
pub mod forest;
pub mod generate;
pub mod lca;
pub mod mode;
pub mod retrieval;
pub mod suffix;
pub mod tree;

pub use error::{Error, Result};
pub use tree::{ColorId, LeafColoredTree, NodeColoredTree, NodeId};
