//! Exact computations around the nilpotent radical of a semisimple Lie algebra:
//! root data, Chevalley bases and highest-weight modules, Chevalley-Eilenberg
//! cohomology, the bar-Koszul complex, and graded dimension series over a
//! formal curve model.

pub mod cohomology_lab;
pub mod curve_factorization;
pub mod error;
pub mod koszul_engine;
pub mod lie_core;
pub mod linalg;
pub mod root_data;
pub mod series;

pub use error::{Error, Result};
pub use linalg::Q;
pub use root_data::{CartanMatrix, GradingVector, RootSystem, Weight, WeylElement};
