//! Exact construction and verification of the vector-valued differential
//! operators `D = Rest_{y=0} ∘ (D₁, D₂)` that intertwine twisted inversion on the
//! plane with inversion on the line, together with the Gegenbauer/Jacobi and
//! Rankin–Cohen machinery behind them and the matching sl(2) branching data.
//!
//! Everything is computed over Q or Q(i); checks are exact equalities.

pub mod diff_op;
pub mod error;
pub mod exact;
pub mod moebius;
pub mod special;
pub mod suite;
pub mod verma;

pub use error::{Error, Result};
