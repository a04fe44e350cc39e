//! Finite crystal combinatorics for Lie types B and C, realized on
//! Kashiwara-Nakashima tableaux.
//!
//! The crate provides:
//!
//! - Cartan data, exact (half-)integral weights, signed-permutation Weyl
//!   groups with reduced words and Bruhat order ([`cartan`]);
//! - KN tableaux with admissibility checking, reading words, signature-rule
//!   crystal operators, and the column splitting map ([`tableau`]);
//! - a generic edge-colored crystal-graph engine: exploration, tensor
//!   products in the Kashiwara convention, Weyl action, Demazure subsets,
//!   the Lusztig-Schuetzenberger involution, and the commutor ([`graph`]);
//! - dilation into tensor powers, right/left key maps, Demazure atoms, and
//!   the combinatorial key test ([`keys`]);
//! - operator-lifted virtualization along the B/C Dynkin foldings and its
//!   identification with splitting ([`virt`]);
//! - symplectic jeu de taquin, rectification, reverse slides, insertion,
//!   and evacuation in both types ([`sjdt`]);
//! - named verification suites aggregating the library's invariants
//!   ([`verify`]).

pub mod cartan;
pub mod error;
pub mod graph;
pub mod keys;
pub mod sjdt;
pub mod tableau;
pub mod verify;
pub mod virt;

pub use cartan::{CartanType, DynkinEmbedding, Family, Weight, WeylElement};
pub use error::{Error, Result, Violation};
pub use graph::{CrystalGraph, CrystalVertex, TensorElement};
pub use tableau::{Column, Entry, KNTableau, SpinColumn, SpinShape};
