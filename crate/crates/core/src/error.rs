use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("absorption order {0} outside supported range [1, {max}]", max = crate::moments::MAX_ORDER)]
    OrderOutOfRange(usize),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("Fock cutoff {0} exceeds the limit of {max}", max = crate::oracle::MAX_CUTOFF)]
    CutoffTooLarge(usize),

    #[error("no fringe: {0}")]
    NoFringe(String),

    #[error("oracle moment has imaginary residue {imag:e} against real part {real:e}")]
    ImaginaryResidue { real: f64, imag: f64 },

    #[error("nothing to plot")]
    EmptyData,

    #[error("usage: {0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
