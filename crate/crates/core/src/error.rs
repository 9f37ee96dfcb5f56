use thiserror::Error;

/// Errors raised by the numerical kernels and the state constructions built on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("overflow in {function}: {detail}")]
    Overflow {
        function: &'static str,
        detail: String,
    },

    #[error("series in {function} did not converge within {terms} terms (last term {tail:e})")]
    SeriesCap {
        function: &'static str,
        terms: usize,
        tail: f64,
    },

    #[error("quadrature in {function} failed: estimated error {error:e} exceeds tolerance {tolerance:e}")]
    Quadrature {
        function: &'static str,
        error: f64,
        tolerance: f64,
    },

    #[error("envelope became singular at t = {t}: rho = {rho:e}")]
    Singularity { t: f64, rho: f64 },

    #[error("step size underflow at t = {t} (h = {h:e})")]
    Stiffness { t: f64, h: f64 },

    #[error("time {t} lies outside the solved window [{start}, {end}]")]
    OutsideWindow { t: f64, start: f64, end: f64 },

    #[error("Bargmann indices differ: {0} vs {1}")]
    IndexMismatch(f64, f64),

    #[error("{quantity} is undefined: mean photon number {mean:e} is numerically zero")]
    UndefinedPoint { quantity: &'static str, mean: f64 },

    #[error("Mellin moment has a pole at s = {s}")]
    MellinPole { s: f64 },

    #[error("non-static frame (rho_dot = {rho_dot:e}) requires the experimental flag")]
    NonStaticFrame { rho_dot: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
