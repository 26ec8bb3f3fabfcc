use thiserror::Error;

use crate::lattice::LatticeShape;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice extents {0:?}: every extent must be at least 2 and the site count must fit in usize")]
    InvalidShape(Vec<usize>),

    #[error("direction {0} is out of range 0..4")]
    InvalidDirection(usize),

    #[error("site {site:?} lies outside lattice {shape}")]
    SiteOutOfRange { site: [usize; 4], shape: LatticeShape },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: LatticeShape, right: LatticeShape },

    #[error("momentum {momentum:?} lies outside lattice {shape}")]
    InvalidMomentum { momentum: [usize; 4], shape: LatticeShape },

    #[error("unsupported projector family: {0}")]
    UnsupportedFamily(String),

    #[error("unknown {what} tag `{tag}`")]
    UnknownTag { what: &'static str, tag: String },

    #[error("eigen-solve failed: {0}")]
    Numeric(String),

    #[error("malformed form file at {location}: {message}")]
    Format { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn format(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format { location: location.into(), message: message.into() }
    }
}
