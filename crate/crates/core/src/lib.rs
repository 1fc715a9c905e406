//! Capacity regions and achievable-rate regions for classical-quantum
//! network channels, closed-form bosonic interference-channel regions, and
//! exact small-blocklength simulation of typical-projector decoders.

// `!(x >= 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bosonic;
pub mod channels;
pub mod cli;
pub mod codesim;
pub mod entropic;
pub mod error;
pub mod network;
pub mod qstate;
pub mod random;
pub mod regions;

pub use channels::{builtin, CqChannel, Povm, Transition};
pub use entropic::{LabeledCqState, ProbDist};
pub use error::{Error, Result};
pub use qstate::DensityMatrix;
pub use regions::HalfspaceRegion;
