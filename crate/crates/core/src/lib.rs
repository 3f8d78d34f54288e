//! Critical groups, chip-firing divisors and arithmetical structures on
//! multigraphs, computed in exact arithmetic.

pub mod arith;
pub mod critgrp;
pub mod divisors;
pub mod error;
pub mod exactla;
pub mod graphs;
pub mod randomlab;
mod util;

pub use critgrp::{AbelianGroup, CokernelResult};
pub use divisors::Divisor;
pub use error::{Error, Result};
pub use exactla::IntMatrix;
pub use graphs::{DirectedMultigraph, Multigraph};
