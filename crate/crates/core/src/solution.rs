//! Solved change-of-variable points and provenance tags.

use std::fmt;

use crate::precision::Real;
use crate::symbol::{g, g_minus, g_plus};

/// Which change of variables maps `theta` to the eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `lambda = g(theta)`, inside `(0, 4)`.
    Trig,
    /// `lambda = g_-(theta) < 0`.
    HyperBelow,
    /// `lambda = g_+(theta) > 4`.
    HyperAbove,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Trig => "trig",
            Branch::HyperBelow => "hyper_below",
            Branch::HyperAbove => "hyper_above",
        }
    }

    pub fn eigenvalue(&self, theta: &Real) -> Real {
        match self {
            Branch::Trig => g(theta),
            Branch::HyperBelow => g_minus(theta),
            Branch::HyperAbove => g_plus(theta),
        }
    }
}

/// How one eigenvalue was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    FixedPoint,
    Bisection,
    ClosedForm,
    Asymptotic,
    OracleJacobi,
    OracleBisection,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::FixedPoint => "fixed_point",
            Method::Bisection => "bisection",
            Method::ClosedForm => "closed_form",
            Method::Asymptotic => "asymptotic",
            Method::OracleJacobi => "oracle_jacobi",
            Method::OracleBisection => "oracle_bisection",
        }
    }

    /// The value comes from a convergent solve rather than an approximation formula.
    pub fn is_exact(&self) -> bool {
        !matches!(self, Method::Asymptotic)
    }

    pub fn is_oracle(&self) -> bool {
        matches!(self, Method::OracleJacobi | Method::OracleBisection)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct ThetaSolution {
    pub theta: Real,
    /// 1-based eigenvalue index.
    pub j: usize,
    pub branch: Branch,
    pub iterations: usize,
    /// Last fixed-point increment, or final bracket width for bisection.
    pub final_step: Real,
    pub method: Method,
}

impl ThetaSolution {
    pub fn eigenvalue(&self) -> Real {
        self.branch.eigenvalue(&self.theta)
    }
}
