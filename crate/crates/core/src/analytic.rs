//! Descriptors for φ1, φ2, ψ and the family parameters, plus Taylor jets.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{self, Rational};

use crate::series::TruncatedSeries;
use crate::symcoeff::SymCoeff;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinKind {
    Exp,
    Sin,
    Cos,
}

impl BuiltinKind {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinKind::Exp => "exp",
            BuiltinKind::Sin => "sin",
            BuiltinKind::Cos => "cos",
        }
    }
}

/// An analytic input function.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFunction {
    Polynomial(Poly<Rational>),
    /// `kind(scale · x)`
    Builtin { kind: BuiltinKind, scale: Rational },
    /// Taylor coefficients `f⁽ʲ⁾(at)/j!`; the declared order is `coeffs.len() − 1`.
    TaylorTable { at: Rational, coeffs: Vec<Rational> },
}

/// A Taylor jet, exact when every input allowed it.
#[derive(Debug, Clone, PartialEq)]
pub enum Jet {
    Exact(TruncatedSeries<SymCoeff>),
    Numeric(TruncatedSeries<f64>),
}

impl Jet {
    pub fn order(&self) -> usize {
        match self {
            Jet::Exact(s) => s.order(),
            Jet::Numeric(s) => s.order(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Jet::Exact(_))
    }

    /// Numeric coefficients with `Lα`, `Lβ` replaced by the given values.
    pub fn to_numeric(&self, la: f64, lb: f64) -> TruncatedSeries<f64> {
        match self {
            Jet::Exact(s) => s.map(|c| c.eval_f64(la, lb, 0.0)),
            Jet::Numeric(s) => s.clone(),
        }
    }

    pub fn exact(self) -> Option<TruncatedSeries<SymCoeff>> {
        match self {
            Jet::Exact(s) => Some(s),
            Jet::Numeric(_) => None,
        }
    }
}

impl AnalyticFunction {
    pub fn poly_ints(cs: &[i64]) -> Self {
        AnalyticFunction::Polynomial(Poly::from_ints(cs))
    }

    pub fn constant(c: i64) -> Self {
        Self::poly_ints(&[c])
    }

    pub fn as_rational_poly(&self) -> Option<&Poly<Rational>> {
        match self {
            AnalyticFunction::Polynomial(p) => Some(p),
            _ => None,
        }
    }

    /// Highest order for which a jet can be produced.
    pub fn available_order(&self) -> Option<usize> {
        match self {
            AnalyticFunction::TaylorTable { coeffs, .. } => Some(coeffs.len().saturating_sub(1)),
            _ => None,
        }
    }

    /// Whether the function is identically zero, as far as the data shows.
    pub fn is_zero(&self) -> bool {
        match self {
            AnalyticFunction::Polynomial(p) => p.is_zero(),
            AnalyticFunction::Builtin { kind, scale } => *kind == BuiltinKind::Sin && scale.is_zero(),
            AnalyticFunction::TaylorTable { coeffs, .. } => coeffs.iter().all(Zero::is_zero),
        }
    }

    /// Whether `f ≡ 1`.
    pub fn is_one(&self) -> bool {
        match self {
            AnalyticFunction::Polynomial(p) => *p == Poly::one(),
            AnalyticFunction::Builtin { kind, scale } => *kind != BuiltinKind::Sin && scale.is_zero(),
            AnalyticFunction::TaylorTable { .. } => false,
        }
    }
}

/// Embeds a polynomial input into `Poly<SymCoeff>`.
pub fn as_poly(f: &AnalyticFunction, which: &'static str) -> Result<Poly<SymCoeff>> {
    f.as_rational_poly()
        .map(Poly::from_rational_poly)
        .ok_or(Error::NotPolynomial(which))
}

/// `Σ_{j≤order} f⁽ʲ⁾(x0)/j! · tʲ`.
///
/// Polynomials are exact everywhere, builtins only at `x0 = 0`; elsewhere the
/// builtin jet is numeric.
pub fn jet_at(f: &AnalyticFunction, x0: &Rational, order: usize) -> Result<Jet> {
    match f {
        AnalyticFunction::Polynomial(p) => {
            let shifted = p.taylor_shift(order);
            Ok(Jet::Exact(shifted.map(|c| SymCoeff::constant(c.eval(x0)))))
        }
        AnalyticFunction::TaylorTable { at, coeffs } => {
            if at != x0 {
                return Err(Error::TablePointMismatch);
            }
            let available = coeffs.len().saturating_sub(1);
            if order > available {
                return Err(Error::InsufficientJetOrder { requested: order, available });
            }
            Ok(Jet::Exact(TruncatedSeries::from_fn(order, |j| {
                SymCoeff::constant(coeffs[j].clone())
            })))
        }
        AnalyticFunction::Builtin { kind, scale } => {
            let facts = rational::factorials(order);
            if x0.is_zero() {
                // kind(s·t) = Σ pattern_j sʲ tʲ / j!
                Ok(Jet::Exact(TruncatedSeries::from_fn(order, |j| {
                    let pattern = match kind {
                        BuiltinKind::Exp => 1,
                        BuiltinKind::Sin => [0, 1, 0, -1][j % 4],
                        BuiltinKind::Cos => [1, 0, -1, 0][j % 4],
                    };
                    let c = num_traits::pow(scale.clone(), j) * rational::int(pattern)
                        / Rational::from_integer(facts[j].clone());
                    SymCoeff::constant(c)
                })))
            } else {
                let s = rational::to_f64(scale);
                let arg = s * rational::to_f64(x0);
                Ok(Jet::Numeric(TruncatedSeries::from_fn(order, |j| {
                    let value = match kind {
                        BuiltinKind::Exp => libm::exp(arg),
                        BuiltinKind::Sin => libm::sin(arg + j as f64 * core::f64::consts::FRAC_PI_2),
                        BuiltinKind::Cos => libm::cos(arg + j as f64 * core::f64::consts::FRAC_PI_2),
                    };
                    value * libm::pow(s, j as f64) / rational::to_f64(&Rational::from_integer(facts[j].clone()))
                })))
            }
        }
    }
}

/// `α` or `β`: either the free symbol or a number in `(0, ∞) \ {1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Symbolic,
    Numeric(f64),
}

impl Param {
    fn validate(self) -> Result<()> {
        match self {
            Param::Symbolic => Ok(()),
            Param::Numeric(v) if v.is_finite() && v > 0.0 && v != 1.0 => Ok(()),
            Param::Numeric(_) => Err(Error::InvalidParameter),
        }
    }

    /// `ln` of the numeric value.
    pub fn log(self) -> Option<f64> {
        match self {
            Param::Symbolic => None,
            Param::Numeric(v) => Some(libm::log(v)),
        }
    }
}

/// The data `(φ1, φ2, ψ, α, β)` of one family.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    phi1: AnalyticFunction,
    phi2: AnalyticFunction,
    psi: AnalyticFunction,
    alpha: Param,
    beta: Param,
}

impl FamilySpec {
    pub fn new(
        phi1: AnalyticFunction,
        phi2: AnalyticFunction,
        psi: AnalyticFunction,
        alpha: Param,
        beta: Param,
    ) -> Result<Self> {
        alpha.validate()?;
        beta.validate()?;
        if psi.is_zero() {
            return Err(Error::ZeroPsi);
        }
        Ok(FamilySpec { phi1, phi2, psi, alpha, beta })
    }

    /// Family with polynomial data and symbolic `α, β`.
    pub fn polynomial(phi1: Poly<Rational>, phi2: Poly<Rational>, psi: Poly<Rational>) -> Result<Self> {
        Self::new(
            AnalyticFunction::Polynomial(phi1),
            AnalyticFunction::Polynomial(phi2),
            AnalyticFunction::Polynomial(psi),
            Param::Symbolic,
            Param::Symbolic,
        )
    }

    /// `φ1 = φ2 = x²`, `ψ = 1`: Θ_n = (−1)ⁿ Hₙ at `α = β = e`.
    pub fn hermite() -> Self {
        Self::polynomial(Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[0, 0, 1]), Poly::one())
            .expect("valid family")
    }

    /// `φ1 = φ2 = −x²`, `ψ = 1`: Θ_n(x/2) = Hₙ(x, 1) at `α = β = e`.
    pub fn kampe_de_feriet() -> Self {
        Self::polynomial(Poly::from_ints(&[0, 0, -1]), Poly::from_ints(&[0, 0, -1]), Poly::one())
            .expect("valid family")
    }

    /// `φ1 = φ2 = −x⁴`, `ψ = 1`: polynomials of degree 3n.
    pub fn quartic() -> Self {
        Self::polynomial(
            Poly::from_ints(&[0, 0, 0, 0, -1]),
            Poly::from_ints(&[0, 0, 0, 0, -1]),
            Poly::one(),
        )
        .expect("valid family")
    }

    pub fn with_params(mut self, alpha: Param, beta: Param) -> Result<Self> {
        alpha.validate()?;
        beta.validate()?;
        self.alpha = alpha;
        self.beta = beta;
        Ok(self)
    }

    pub fn phi1(&self) -> &AnalyticFunction {
        &self.phi1
    }

    pub fn phi2(&self) -> &AnalyticFunction {
        &self.phi2
    }

    pub fn psi(&self) -> &AnalyticFunction {
        &self.psi
    }

    pub fn alpha(&self) -> Param {
        self.alpha
    }

    pub fn beta(&self) -> Param {
        self.beta
    }

    pub fn is_polynomial(&self) -> bool {
        [&self.phi1, &self.phi2, &self.psi]
            .iter()
            .all(|f| matches!(f, AnalyticFunction::Polynomial(_)))
    }

    /// `(ln α, ln β)` when both are numeric.
    pub fn numeric_logs(&self) -> Result<(f64, f64)> {
        match (self.alpha.log(), self.beta.log()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::SymbolicParameter),
        }
    }
}
