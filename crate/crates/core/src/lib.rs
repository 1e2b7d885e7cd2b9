//! Controlled character groups of combinatorial Hopf algebras.
//!
//! Exact rational implementations of rooted-tree, shuffle, Faà di Bruno and
//! binomial Hopf algebras, weighted norms and growth families, the
//! convolution group of characters, the evolution equation `γ' = γ⋆η`, and
//! B-, P- and word-series evaluation for polynomial vector fields.

pub mod control;
pub mod character;
pub mod error;
pub mod evolution;
pub mod graded;
pub mod growth;
pub mod hopf;
pub mod par;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use graded::{Generator, GradedVector, Monomial, MonoidKind, TensorVector};
pub use growth::{GrowthFamily, Weight};
pub use hopf::{AntipodeMethod, HopfAlgebra};
pub use scalar::{Rational, TargetAlgebra};
