//! Exact analysis of irreducible plane curve germs over Q through towers of
//! toric charts.

pub mod equisig;
pub mod exactalg;
pub mod infinity;
pub mod invariants;
pub mod newton;
pub mod tower;
pub mod tschirn;

pub use exactalg::{BiPoly, Rat, TruncSeries, UPoly, XSeries, QT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("germ is reducible: {0}")]
    Reducible(String),
    #[error("face root is not rational: {0}")]
    NonRationalRoot(String),
    #[error("germ is smooth (multiplicity 1)")]
    SmoothGerm,
    #[error("not in Weierstrass form: {0}")]
    NotWeierstrass(String),
    #[error("precision exhausted after {retries} retries")]
    Precision { retries: u32 },
    #[error("coefficient x^{a} y^{b} lies outside the known box [{nx}, {ny}]")]
    OutOfBox { a: usize, b: usize, nx: usize, ny: usize },
    #[error("polynomial is not monic in y")]
    NotMonic,
    #[error("divisibility condition fails: {0}")]
    Divisibility(String),
    #[error("not a local coordinate")]
    NotLocalCoordinate,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
