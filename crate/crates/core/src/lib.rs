//! Exact computations with strict ω-categories presented by based augmented
//! directed complexes.
//!
//! Cells are coherent Steiner arrays, Gray operations act on complexes, and
//! globular sums give the combinatorics of Θ.

pub mod adc;
pub mod chain;
pub mod colim;
pub mod error;
pub mod gray;
pub mod io;
pub mod linalg;
pub mod morphism;
pub mod omega;
pub mod theta;
pub mod twodim;
pub mod verify;

pub use adc::{atom, dual, is_loopfree, is_strong_steiner, is_unitary, BasedADC, BasisElement, Duality, Sign, SteinerArray, Verdict};
pub use chain::{Chain, Id};
pub use error::{Error, Result};
pub use morphism::{compose_morphism, is_quasirigid, ADCMorphism};
pub use omega::Cell;
pub use colim::{Square, Zigzag};
pub use gray::{PointedADC, Side};
pub use theta::{GlobularSum, ThetaMorphism};
pub use twodim::{Precedence, Support};
pub use verify::{CheckReport, Outcome};
