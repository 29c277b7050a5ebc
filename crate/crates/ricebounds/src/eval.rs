//! Common result and context types shared by every evaluation method.

use std::fmt;
use std::str::FromStr;

use crate::quad::QuadConfig;

/// How a value was computed. The labels double as the CLI method names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Quadrature,
    AltIntegral,
    Series3,
    Series4,
    Marcum5,
    Marcum6,
    Lemma1Rhs,
    ClosedForm,
    Series9,
    Series10,
    MarcumCase,
    BoundUpper,
    BoundLower,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::AltIntegral => "alt-integral",
            Method::Series3 => "series3",
            Method::Series4 => "series4",
            Method::Marcum5 => "marcum5",
            Method::Marcum6 => "marcum6",
            Method::Lemma1Rhs => "lemma1-rhs",
            Method::ClosedForm => "closed-form",
            Method::Series9 => "series9",
            Method::Series10 => "series10",
            Method::MarcumCase => "marcum-case",
            Method::BoundUpper => "bound-upper",
            Method::BoundLower => "bound-lower",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "quadrature" => Method::Quadrature,
            "alt-integral" => Method::AltIntegral,
            "series3" => Method::Series3,
            "series4" => Method::Series4,
            "marcum5" => Method::Marcum5,
            "marcum6" => Method::Marcum6,
            "lemma1-rhs" => Method::Lemma1Rhs,
            "closed-form" => Method::ClosedForm,
            "series9" => Method::Series9,
            "series10" => Method::Series10,
            "marcum-case" => Method::MarcumCase,
            "bound-upper" => Method::BoundUpper,
            "bound-lower" => Method::BoundLower,
            other => return Err(format!("unknown method '{other}'")),
        })
    }
}

/// A computed value, the method that produced it, and an error estimate.
///
/// `est_error == 0` only for exact closed forms evaluated in floating point
/// (no truncation error beyond rounding). Series carry the magnitude of the
/// last added term, a heuristic; quadrature carries the engine's bound.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult {
    pub value: f64,
    pub method: Method,
    pub est_error: f64,
}

impl EvalResult {
    pub fn exact(value: f64, method: Method) -> Self {
        EvalResult {
            value,
            method,
            est_error: 0.0,
        }
    }
}

/// Runtime knobs passed to every registered method: quadrature tolerances
/// and the series term budget.
#[derive(Clone, Copy, Debug)]
pub struct EvalContext {
    pub quad: QuadConfig,
    pub terms: usize,
}

impl Default for EvalContext {
    fn default() -> Self {
        EvalContext {
            quad: QuadConfig::default(),
            terms: 100,
        }
    }
}
