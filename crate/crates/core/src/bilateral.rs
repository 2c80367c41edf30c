//! Bilateral and bilinear generating functions pairing Θ_n(x) with a second
//! family Ω_μ(y).
//!
//! With `Λ(y; z) = Σ_k a_k Ω_{μ+νk}(y) z^k` and
//! `Φ_n(x, y; ζ) = Σ_{k ≤ n/p} a_k/(n−pk)! q_{n−pk}(x) Ω_{μ+νk}(y) ζ^k`, the
//! identity checked is
//!
//! ```text
//! Σ_n Φ_n(x, y; η/t^p) tⁿ = ψ(x+t) exp(−Lβ(φ2(x+t) − φ2(x))) · Λ(y; η)
//! ```
//!
//! in reduced form. Substituting `ζ = η/t^p` and re-indexing `n − pk → n` turns
//! the left side into an ordinary double series in `(t, η)`, so no Laurent
//! series are needed.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::analytic::FamilySpec;
use crate::error::{Error, Result};
use crate::genfun::genfun_rhs;
use crate::kernel::PolyFamily;
use crate::poly::{write_poly, Poly};
use crate::rational::{self, Rational};
use crate::report::{Failure, VerificationReport};
use crate::series::TruncatedSeries;
use crate::symcoeff::SymCoeff;

type P = Poly<SymCoeff>;
/// Polynomial in `y` whose coefficients are polynomials in `x`.
pub type XyPoly = Poly<Poly<SymCoeff>>;

#[derive(Debug, Clone, PartialEq)]
pub enum OmegaFamily {
    /// `ℬ_n^{(order)}(y; λ)`
    ApostolBernoulli { order: u32, lambda: Rational },
    /// Reduced kernels `q_n(y)` of a polynomial family.
    Theta(Box<FamilySpec>),
    /// Explicit values `Ω_0, Ω_1, …` as polynomials in `y`.
    Table(Vec<P>),
}

impl OmegaFamily {
    /// `Ω_0(y), …, Ω_{up_to}(y)`.
    pub fn values(&self, up_to: usize) -> Result<Vec<P>> {
        match self {
            OmegaFamily::ApostolBernoulli { order, lambda } => {
                let g = apostol_bernoulli_generator(*order, lambda, up_to)?;
                Ok((0..=up_to)
                    .map(|n| {
                        let c = g.coeff(n).mul_coeff(&Rational::from_integer(rational::factorial(n)));
                        P::from_rational_poly(&c)
                    })
                    .collect())
            }
            OmegaFamily::Theta(f) => Ok(PolyFamily::from_spec(f)?.kernels(up_to)),
            OmegaFamily::Table(t) => {
                if up_to >= t.len() {
                    return Err(Error::TableIndex(up_to));
                }
                Ok(t[..=up_to].to_vec())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientRule {
    /// `a_k = 1/k!`
    InverseFactorial,
    Explicit(Vec<Rational>),
}

impl CoefficientRule {
    pub fn coeff(&self, k: usize) -> Result<Rational> {
        match self {
            CoefficientRule::InverseFactorial => {
                Ok(Rational::new(1.into(), rational::factorial(k)))
            }
            CoefficientRule::Explicit(v) => v.get(k).cloned().ok_or(Error::MissingCoefficient(k)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BilateralSpec {
    omega: OmegaFamily,
    a: CoefficientRule,
    mu: usize,
    nu: usize,
    p: usize,
}

impl BilateralSpec {
    pub fn new(omega: OmegaFamily, a: CoefficientRule, mu: usize, nu: usize, p: usize) -> Result<Self> {
        if nu == 0 || p == 0 {
            return Err(Error::ZeroStep);
        }
        if let CoefficientRule::Explicit(v) = &a {
            if let Some(k) = v.iter().position(Rational::is_zero) {
                return Err(Error::ZeroCoefficient(k));
            }
        }
        Ok(BilateralSpec { omega, a, mu, nu, p })
    }

    pub fn omega(&self) -> &OmegaFamily {
        &self.omega
    }

    pub fn a(&self) -> &CoefficientRule {
        &self.a
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn p(&self) -> usize {
        self.p
    }

    fn coeffs(&self, k_max: usize) -> Result<Vec<Rational>> {
        (0..=k_max).map(|k| self.a.coeff(k)).collect()
    }

    fn omega_values(&self, k_max: usize) -> Result<Vec<P>> {
        let vals = self.omega.values(self.mu + self.nu * k_max)?;
        Ok((0..=k_max).map(|k| vals[self.mu + self.nu * k].clone()).collect())
    }
}

/// `(t/(λeᵗ − 1))^order`, truncated at `tᴷ`.
fn apostol_bernoulli_base(order: u32, lambda: &Rational, k: usize) -> Result<TruncatedSeries<Rational>> {
    let base = if lambda.is_one() {
        // t/(eᵗ − 1) = 1 / Σ tʲ/(j+1)!
        TruncatedSeries::from_fn(k, |j| Rational::new(1.into(), rational::factorial(j + 1))).inverse()?
    } else {
        let denom = TruncatedSeries::from_fn(k, |j| {
            let c = lambda / Rational::from_integer(rational::factorial(j));
            if j == 0 {
                c - Rational::one()
            } else {
                c
            }
        });
        denom.inverse()?.shift(1)?
    };
    base.pow(order)
}

/// `(t/(λeᵗ − 1))^order · e^{yt}` with coefficients in `ℚ[y]`, truncated at `tᴷ`.
pub fn apostol_bernoulli_generator(
    order: u32,
    lambda: &Rational,
    k: usize,
) -> Result<TruncatedSeries<Poly<Rational>>> {
    let base = apostol_bernoulli_base(order, lambda, k)?.map(|c| Poly::constant(c.clone()));
    let exp_yt = TruncatedSeries::from_fn(k, |j| {
        Poly::monomial(Rational::new(1.into(), rational::factorial(j)), j)
    });
    base.mul(&exp_yt)
}

/// `ℬ_n^{(order)}(y; λ)`, the coefficient of `tⁿ/n!` in the generator.
pub fn apostol_bernoulli(n: usize, order: u32, lambda: &Rational) -> Result<Poly<Rational>> {
    let g = apostol_bernoulli_generator(order, lambda, n)?;
    Ok(g.coeff(n).mul_coeff(&Rational::from_integer(rational::factorial(n))))
}

/// `Σ_{k≤K} a_k Ω_{μ+νk}(y) zᵏ`
pub fn lambda_series(spec: &BilateralSpec, k_max: usize) -> Result<TruncatedSeries<P>> {
    let a = spec.coeffs(k_max)?;
    let omega = spec.omega_values(k_max)?;
    Ok(TruncatedSeries::from_fn(k_max, |k| omega[k].mul_coeff(&SymCoeff::constant(a[k].clone()))))
}

/// Λ in closed form when one is known: `a_k = 1/k!`, `μ = 0`, `ν = 1` and Ω
/// either Apostol–Bernoulli (its generator) or a polynomial Θ family (its
/// reduced generating function in `y`).
pub fn closed_lambda(spec: &BilateralSpec, k_max: usize) -> Result<Option<TruncatedSeries<P>>> {
    if spec.a != CoefficientRule::InverseFactorial || spec.mu != 0 || spec.nu != 1 {
        return Ok(None);
    }
    match &spec.omega {
        OmegaFamily::ApostolBernoulli { order, lambda } => Ok(Some(
            apostol_bernoulli_generator(*order, lambda, k_max)?.map(P::from_rational_poly),
        )),
        OmegaFamily::Theta(f) if f.is_polynomial() => Ok(Some(genfun_rhs(f, k_max)?)),
        _ => Ok(None),
    }
}

fn x_to_xy(p: &P) -> XyPoly {
    Poly::constant(p.clone())
}

fn y_to_xy(p: &P) -> XyPoly {
    p.map_coeffs(|c| Poly::constant(c.clone()))
}

/// `a_k/(n−pk)! · q_{n−pk}(x) Ω_{μ+νk}(y)`
fn phi_term(a: &Rational, q: &P, omega: &P, m: usize) -> XyPoly {
    let scale = SymCoeff::constant(a / Rational::from_integer(rational::factorial(m)));
    &x_to_xy(&q.mul_coeff(&scale)) * &y_to_xy(omega)
}

/// `Φ_n` as a polynomial in `ζ` with coefficients in `ℚ[Lα, Lβ, n̂][x, y]`.
pub fn phi_poly(spec: &BilateralSpec, family: &FamilySpec, n: usize) -> Result<Poly<XyPoly>> {
    let k_max = n / spec.p;
    let kernels = PolyFamily::from_spec(family)?.kernels(n);
    let a = spec.coeffs(k_max)?;
    let omega = spec.omega_values(k_max)?;
    Ok(Poly::new(
        (0..=k_max)
            .map(|k| {
                let m = n - spec.p * k;
                phi_term(&a[k], &kernels[m], &omega[k], m)
            })
            .collect(),
    ))
}

/// Left side re-indexed as a double series: the `tᵐ ηᵏ` coefficient is the
/// `ζᵏ` term of `Φ_{m+pk}`.
pub fn bilateral_lhs(
    spec: &BilateralSpec,
    family: &FamilySpec,
    n_max: usize,
    k_max: usize,
) -> Result<TruncatedSeries<XyPoly>> {
    let kernels = PolyFamily::from_spec(family)?.kernels(n_max);
    let a = spec.coeffs(k_max)?;
    let omega = spec.omega_values(k_max)?;
    Ok(TruncatedSeries::bivariate_from_fn(n_max, k_max, |m, k| {
        phi_term(&a[k], &kernels[m], &omega[k], m)
    }))
}

/// Closed-form right side, and whether Λ itself was in closed form.
fn bilateral_rhs(
    spec: &BilateralSpec,
    family: &FamilySpec,
    n_max: usize,
    k_max: usize,
) -> Result<(TruncatedSeries<XyPoly>, bool)> {
    let g = genfun_rhs(family, n_max)?.map(x_to_xy);
    let (lambda, closed) = match closed_lambda(spec, k_max)? {
        Some(l) => (l, true),
        None => (lambda_series(spec, k_max)?, false),
    };
    Ok((TruncatedSeries::outer(&g, &lambda.map(y_to_xy))?, closed))
}

struct XyDisplay<'a>(&'a XyPoly);

impl fmt::Display for XyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.0, "y")
    }
}

fn compare(
    identity: &str,
    lhs: &TruncatedSeries<XyPoly>,
    rhs: &TruncatedSeries<XyPoly>,
) -> Result<VerificationReport> {
    let order = lhs.order().min(rhs.order());
    Ok(match lhs.first_difference(rhs)? {
        None => VerificationReport::verified(identity, order),
        Some((j, k)) => {
            let r = lhs.coeff2(j, k) - rhs.coeff2(j, k);
            VerificationReport::failed(
                identity,
                order,
                Failure {
                    t_order: Some(j),
                    eta_order: Some(k),
                    residual: format!("{}", XyDisplay(&r)),
                    ..Default::default()
                },
            )
        }
    })
}

/// Checks the bilateral identity to `t^N η^K`.
pub fn verify_bilateral(
    spec: &BilateralSpec,
    family: &FamilySpec,
    n_max: usize,
    k_max: usize,
) -> Result<VerificationReport> {
    let lhs = bilateral_lhs(spec, family, n_max, k_max)?;
    let (rhs, closed) = bilateral_rhs(spec, family, n_max, k_max)?;
    let report = compare("bilateral", &lhs, &rhs)?;
    Ok(if closed { report.with_note("lambda compared in closed form") } else { report })
}

/// The bilinear case: Ω is the family itself, `a_k = 1/k!`, `μ = 0`, `ν = p = 1`,
/// and the right side is the product of the two reduced generating functions.
/// When `N = K` the double series must also be symmetric under
/// `(x, t) ↔ (y, η)`.
pub fn verify_bilinear(family: &FamilySpec, n_max: usize, k_max: usize) -> Result<VerificationReport> {
    let spec = BilateralSpec::new(
        OmegaFamily::Theta(Box::new(family.clone())),
        CoefficientRule::InverseFactorial,
        0,
        1,
        1,
    )?;
    let lhs = bilateral_lhs(&spec, family, n_max, k_max)?;
    let gx = genfun_rhs(family, n_max)?.map(x_to_xy);
    let gy = genfun_rhs(family, k_max)?.map(y_to_xy);
    let rhs = TruncatedSeries::outer(&gx, &gy)?;
    let report = compare("bilinear", &lhs, &rhs)?;
    if !report.is_verified() || n_max != k_max {
        return Ok(report);
    }
    let swapped = swap_xy(&lhs)?;
    Ok(match lhs.first_difference(&swapped)? {
        None => report.with_note("symmetric under (x, t) <-> (y, eta)"),
        Some((j, k)) => VerificationReport::failed(
            "bilinear",
            n_max,
            Failure {
                t_order: Some(j),
                eta_order: Some(k),
                residual: String::from("not symmetric under (x, t) <-> (y, eta)"),
                ..Default::default()
            },
        ),
    })
}

/// `(x, t) ↔ (y, η)` on a double series with coefficients in `ℚ[x, y]`.
pub fn swap_xy(s: &TruncatedSeries<XyPoly>) -> Result<TruncatedSeries<XyPoly>> {
    Ok(s.swap_vars()?.map(Poly::transpose))
}
