//! N-photon absorption fringes produced by an unseeded high-gain optical
//! parametric amplifier whose two outputs are recombined on a recording
//! medium.
//!
//! * [`optics`]: amplifier coefficients, intensity, geometry and the
//!   recording-plane field.
//! * [`moments`]: closed-form absorption rates, visibility, fringe scans.
//! * [`oracle`]: exact truncated-Fock-space evaluation of the same moments.
//! * [`cli`]: the `opa-litho` command-line front end.

pub mod cli;
pub mod error;
pub mod moments;
pub mod optics;
pub mod oracle;
pub mod svg;

pub use error::{Error, Result};
