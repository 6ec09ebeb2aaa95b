//! Two classical constructions kept exact or numerically verified: the
//! contour-integral formula recovering roots of a complex polynomial from
//! the logarithmic derivative, and the 2×2 inverse over the rational
//! quaternions written through quasideterminants, together with the glueing
//! identity between its overlapping charts.

mod contour;
mod quaternion;

pub use contour::{root_contour, ComplexPoly};
pub use quaternion::{
    nc_identity_check, nc_inverse_2x2, ChartReport, NcMatrix2, Quaternion,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassicalError {
    #[error("cannot invert the zero quaternion")]
    ZeroInverse,
    #[error("matrix entry {entry} is zero, outside the generic chart")]
    ZeroEntry { entry: &'static str },
    #[error("quasideterminant {which} vanishes")]
    ZeroQuasideterminant { which: &'static str },
    #[error("a polynomial needs degree ≥ 1 and a nonzero leading coefficient")]
    BadPolynomial,
    #[error("contour radius must be positive and finite")]
    BadRadius,
    #[error("node count must be a power of two, at least 16")]
    BadNodes,
    #[error(
        "quadrature did not settle: doubling the nodes moved the result by {delta:e}, \
         which suggests a root near the contour"
    )]
    NoConvergence { delta: f64 },
    #[error("cannot parse {0:?} as a rational number")]
    BadRational(String),
    #[error("a quaternion serializes as four rational strings")]
    BadQuaternionJson,
}
