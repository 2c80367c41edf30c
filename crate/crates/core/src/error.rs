use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series are expanded in different variables")]
    VariableMismatch,
    #[error("exp needs a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("operation is only defined for univariate series")]
    NotUnivariate,
    #[error("{0} is not a polynomial")]
    NotPolynomial(&'static str),
    #[error("jet of order {requested} requested, only {available} available")]
    InsufficientJetOrder { requested: usize, available: usize },
    #[error("taylor table is expanded at a different point")]
    TablePointMismatch,
    #[error("alpha and beta must be positive and different from 1")]
    InvalidParameter,
    #[error("psi is identically zero")]
    ZeroPsi,
    #[error("numeric evaluation needs numeric alpha and beta")]
    SymbolicParameter,
    #[error("identity requires psi = 1")]
    RequiresUnitPsi,
    #[error("ODE order must be at least 1")]
    ZeroOrder,
    #[error("closed forms exist for orders 2, 3 and 4 only, got {0}")]
    NoClosedForm(usize),
    #[error("deg phi2 = {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("coefficient a_{0} is zero")]
    ZeroCoefficient(usize),
    #[error("no coefficient a_{0} supplied")]
    MissingCoefficient(usize),
    #[error("omega table has no entry {0}")]
    TableIndex(usize),
    #[error("nu and p must be at least 1")]
    ZeroStep,
}
