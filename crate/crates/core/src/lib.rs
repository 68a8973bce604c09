//! Finite-model toolkit for relativized cylindric-like algebras.
//!
//! Algebras are finite and atomic, stored through their atom structure
//! ([`bao`]). On top of that sit a term language and equation checker
//! ([`terms`]), the four axiom systems ([`axioms`]), concrete set algebras over
//! explicit units ([`setalg`]), networks and the representation game
//! ([`networks`], [`game`], [`represent`]) and frame duality ([`duality`]).

pub mod axioms;
pub mod bao;
pub mod cli;
pub mod config;
pub mod duality;
pub mod error;
pub mod game;
pub mod networks;
pub mod represent;
pub mod setalg;
pub mod terms;
pub mod transform;

pub use bao::{BaoParts, BaoViolation, Dimension, Element, FiniteBao, Op, Signature};
pub use config::Limits;
pub use error::{Error, Result};
pub use transform::{decompose, hat, substitution_word, FiniteTransformation, Generator, SubstWord};
