//! Majority edge colourings: each colour may occupy at most `floor(d(v)/k)` of
//! the edges at any vertex `v`.

pub mod colouring;
pub mod error;
pub mod euler_split;
pub mod format;
pub mod graph;
pub mod instances;
pub mod reductions;
pub mod rounding;
pub mod schemes;

pub use colouring::{check_majority, EdgeColouring, MajorityVerdict, Witness};
pub use error::{Error, GraphError, Result};
pub use graph::Graph;
