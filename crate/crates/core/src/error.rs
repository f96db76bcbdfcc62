use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid precision context: {0}")]
    InvalidPrecision(String),

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("cannot reach tolerance {tol:e} at {bits} bits: {detail}")]
    Precision { tol: f64, bits: u32, detail: String },

    #[error("divisor xi(s) vanishes to working accuracy at s = {at} (|zeta(s)| = {zeta_abs:e})")]
    NearZeroDivisor { at: String, zeta_abs: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("adaptive quadrature did not converge within {max_panels} panels (error estimate {estimate:e}, tolerance {tol:e})")]
    MaxPanelsExceeded { max_panels: usize, estimate: f64, tol: f64 },

    #[error("integrand failed at t = {t}: {source}")]
    NonFiniteIntegrand { t: f64, source: Box<Error> },

    #[error("contour Re s = {sigma} passes too close to a pole near t = {t}")]
    NearPoleOnContour { sigma: f64, t: f64 },

    #[error("tail model violated at sigma = {sigma}, t = {t}: sampled {sampled:e} > model {model:e}")]
    Calibration { sigma: f64, t: f64, sampled: f64, model: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("point outside the admissible domain: {0}")]
    Domain(String),

    #[error("circle around {center} has winding number {winding} instead of 1")]
    CircleContainsMultipleZeros { center: String, winding: i64 },

    #[error("no sign change of Xi(t) on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("scan step {step} too coarse near t = {t}")]
    StepTooCoarse { step: f64, t: f64 },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
