//! Exact solubilizer and nilpotentizer probabilities for finite permutation
//! groups and finite-quotient towers.
//!
//! For a group class `C` (abelian, nilpotent, soluble), `Ω_C(x, G)` is the set
//! of `g ∈ G` with `⟨x, g⟩ ∈ C` and `P_C(x, G) = |Ω_C(x, G)| / |G|`. The crate
//! computes these sets and probabilities exactly, the global intersections
//! `Ω_C(G)`, the graphs `Γ_C(G)` on `G ∖ Ω_C(G)`, and checks the identities
//! linking them to the center, the soluble radical and the hypercenter.

pub mod catalog;
pub mod chain;
pub mod classc;
pub mod error;
pub mod graphs;
pub mod group;
pub mod perm;
pub mod probability;
pub mod rational;
pub mod tower;
pub mod wreath;

pub use classc::{Classifier, GroupClass};
pub use error::{Error, Result};
pub use group::{ElementSet, FiniteGroup};
pub use perm::Permutation;
pub use rational::Rational;
