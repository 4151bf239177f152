//! Tense logic workbench: formulas over `⊥ → □ ◆`, finite Kripke and general frames,
//! bitsliced model checking, t-morphism search, frame constructions, and exact symbolic
//! models of two infinite ladder families.

#![allow(clippy::needless_range_loop)]

pub mod bits;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod formula;
pub mod frame;
pub mod families;
pub mod morphism;
pub mod semantics;
pub mod suites;
pub mod symbolic;

pub use bits::WorldSet;
pub use error::{Error, Result};
pub use formula::Formula;
pub use frame::{Frame, GeneralFrame};
