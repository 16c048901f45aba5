//! Extension machinery for positive definite operator-valued functions on
//! finitely generated amenable groups.
//!
//! The pipeline: test chordality of the Cayley graph of (G, S) on a finite
//! window, complete the partially specified kernel k(x, y) = phi(x^{-1} y)
//! over the chordal pattern, then average the completed kernel over Folner
//! sets to approximate the invariant-mean step. Forced-entry derivations
//! certify the non-extendability counterexamples, and Caratheodory-Fejer
//! decomposition handles the scalar cross case.

pub mod caps;
pub mod cayley;
pub mod cmat;
pub mod completion;
pub mod error;
pub mod extend;
pub mod graphs;
pub mod groups;
pub mod par;

pub use caps::Caps;
pub use cmat::CMatrix;
pub use error::{Error, Result};
