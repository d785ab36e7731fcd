//! Stack sorting and revstack sorting of permutations.
//!
//! The crate computes sorting degrees, recognises the low-degree classes by
//! pattern avoidance and zigzags, evaluates the known closed forms for the
//! descent polynomials of sortable classes, isolates their real roots
//! exactly, and checks everything against exhaustive enumeration.
//!
//! ```
//! use permsort::Permutation;
//!
//! let pi: Permutation = "4 2 5 1 3".parse().unwrap();
//! assert_eq!(pi.revstack_sort().to_string(), "1 3 2 4 5");
//! assert_eq!(pi.stack_sort().to_string(), "2 4 1 3 5");
//! assert_eq!(pi.deg_revstack().value(), 3);
//! ```

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod patterns;
pub mod perm;
pub mod polyalg;
pub mod trees;
pub mod zigzag;

pub use error::{Error, Result};
pub use patterns::PatternSpec;
pub use perm::{Permutation, SortDegree, Sorter};
pub use polyalg::{IntPolynomial, RootReport};
pub use trees::DecreasingBinaryTree;
pub use zigzag::Zigzag;
