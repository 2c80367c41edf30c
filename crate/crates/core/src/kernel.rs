//! Reduced kernels `q_n = Θ_n / (α^{φ1} β^{−φ2})` and their evaluation.
//!
//! One differentiation of `ψ β^{−φ2}` gives the ladder
//! `q_{n+1} = q_n' − Lβ·φ2'·q_n` with `q_0 = ψ`.

use alloc::vec::Vec;

use crate::analytic::{as_poly, jet_at, FamilySpec, Jet};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::ring::Ring;
use num_traits::One;
use crate::series::TruncatedSeries;
use crate::symcoeff::SymCoeff;

/// `Θ_n(x) = α^{φ1(x)} β^{−φ2(x)} · q(x)`
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedKernel {
    pub n: usize,
    pub q: Poly<SymCoeff>,
}

/// A family whose three functions are polynomials, lifted into
/// `Poly<SymCoeff>` together with the derivatives the identities use.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFamily {
    pub phi1: Poly<SymCoeff>,
    pub phi2: Poly<SymCoeff>,
    pub psi: Poly<SymCoeff>,
    dphi1: Poly<SymCoeff>,
    dphi2: Poly<SymCoeff>,
    // Lα φ1' − Lβ φ2', the logarithmic derivative of the prefactor
    log_prefactor: Poly<SymCoeff>,
}

impl PolyFamily {
    pub fn from_spec(family: &FamilySpec) -> Result<Self> {
        Ok(Self::new(
            as_poly(family.phi1(), "phi1")?,
            as_poly(family.phi2(), "phi2")?,
            as_poly(family.psi(), "psi")?,
        ))
    }

    pub fn new(phi1: Poly<SymCoeff>, phi2: Poly<SymCoeff>, psi: Poly<SymCoeff>) -> Self {
        let dphi1 = phi1.derivative();
        let dphi2 = phi2.derivative();
        let log_prefactor = dphi1.mul_coeff(&SymCoeff::la()) - dphi2.mul_coeff(&SymCoeff::lb());
        PolyFamily { phi1, phi2, psi, dphi1, dphi2, log_prefactor }
    }

    pub fn dphi1(&self) -> &Poly<SymCoeff> {
        &self.dphi1
    }

    pub fn dphi2(&self) -> &Poly<SymCoeff> {
        &self.dphi2
    }

    /// `q ↦ q' − Lβ φ2' q`
    pub fn ladder_step(&self, q: &Poly<SymCoeff>) -> Poly<SymCoeff> {
        q.derivative() - (&self.dphi2 * q).mul_coeff(&SymCoeff::lb())
    }

    /// Derivative of `α^{φ1} β^{−φ2} q`, divided by the prefactor:
    /// `q' + (Lα φ1' − Lβ φ2') q`.
    pub fn reduced_derivative(&self, q: &Poly<SymCoeff>) -> Poly<SymCoeff> {
        q.derivative() + &self.log_prefactor * q
    }

    /// `q_0, …, q_{n_max}`.
    pub fn kernels(&self, n_max: usize) -> Vec<Poly<SymCoeff>> {
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(self.psi.clone());
        for n in 0..n_max {
            let next = self.ladder_step(&out[n]);
            out.push(next);
        }
        out
    }

    pub fn psi_is_one(&self) -> bool {
        self.psi == Poly::one()
    }
}

pub fn reduced_kernel(family: &FamilySpec, n: usize) -> Result<ReducedKernel> {
    let pf = PolyFamily::from_spec(family)?;
    let q = pf.kernels(n).pop().expect("at least q_0");
    Ok(ReducedKernel { n, q })
}

/// `Θ_n(x0)` in double precision, for numeric `α, β`.
pub fn theta_eval(family: &FamilySpec, n: usize, x0: f64) -> Result<f64> {
    let pf = PolyFamily::from_spec(family)?;
    let (la, lb) = family.numeric_logs()?;
    let q = pf.kernels(n).pop().expect("at least q_0");
    let exponent = la * pf.phi1.eval_f64(x0, la, lb, 0.0) - lb * pf.phi2.eval_f64(x0, la, lb, 0.0);
    Ok(libm::exp(exponent) * q.eval_f64(x0, la, lb, 0.0))
}

fn ladder_on_jets<C: Ring>(
    psi: TruncatedSeries<C>,
    dphi2: &TruncatedSeries<C>,
    lb: &C,
    n: usize,
) -> Result<TruncatedSeries<C>> {
    let mut q = psi;
    for _ in 0..n {
        q = q.derivative()?.sub(&dphi2.mul(&q)?.mul_coeff(lb))?;
    }
    Ok(q)
}

/// Taylor jet at `x0` of the reduced kernel `q_n`, obtained by running the
/// ladder on jets of ψ and φ2 of order `n + order`.
///
/// The result is exact when both input jets are; otherwise it is numeric and
/// needs a numeric β.
pub fn theta_jet(family: &FamilySpec, n: usize, x0: &Rational, order: usize) -> Result<Jet> {
    let need = n + order;
    let psi = jet_at(family.psi(), x0, need)?;
    let phi2 = jet_at(family.phi2(), x0, need)?;
    match (psi, phi2) {
        (Jet::Exact(psi), Jet::Exact(phi2)) => {
            let q = ladder_on_jets(psi, &phi2.derivative()?, &SymCoeff::lb(), n)?;
            Ok(Jet::Exact(q.truncate(order)?))
        }
        (psi, phi2) => {
            let lb = family.beta().log().ok_or(Error::SymbolicParameter)?;
            let psi = psi.to_numeric(0.0, lb);
            let dphi2 = phi2.to_numeric(0.0, lb).derivative()?;
            let q = ladder_on_jets(psi, &dphi2, &lb, n)?;
            Ok(Jet::Numeric(q.truncate(order)?))
        }
    }
}
