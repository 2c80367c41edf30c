//! The recurrences satisfied by Θ_n, checked on reduced kernels.
//!
//! Every `Θ_m` is replaced by `q_m`, and every `Θ'_m` by the reduced
//! derivative `q_m' + (Lα φ1' − Lβ φ2') q_m`, which is `Θ'_m` divided by the
//! common prefactor. Each identity then becomes a polynomial that must vanish.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::analytic::{jet_at, FamilySpec, Jet};
use crate::error::{Error, Result};
use crate::kernel::{theta_jet, PolyFamily};
use crate::poly::Poly;
use crate::rational::{self, Rational};
use crate::report::{Failure, VerificationReport};
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::symcoeff::SymCoeff;

type P = Poly<SymCoeff>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecurrenceId {
    /// `Σ C(n,p){Θ_{n−p+1}ψ⁽ᵖ⁾ − Θ_{n−p}ψ⁽ᵖ⁺¹⁾} = −ln β ΣΣ C(n,k)C(n−k,p) Θ_{n−p−k} ψ⁽ᵖ⁾ φ2⁽ᵏ⁺¹⁾`
    Aa9,
    /// Same right side, left side in `Θ'`.
    Aa10,
    /// Difference of the two above.
    Cor21,
    /// `Θ'_n = Θ_{n+1} + ln α φ1' Θ_n`
    Thm23,
    /// The mixed relation in `Θ` and `Θ'` with both logarithms.
    Aa11,
    /// `Θ_{n+1} = −ln β Σ C(n,k) φ2⁽ᵏ⁺¹⁾ Θ_{n−k}`, for ψ = 1 only.
    Cor22,
}

impl RecurrenceId {
    pub const ALL: [RecurrenceId; 6] = [
        RecurrenceId::Aa9,
        RecurrenceId::Aa10,
        RecurrenceId::Cor21,
        RecurrenceId::Thm23,
        RecurrenceId::Aa11,
        RecurrenceId::Cor22,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RecurrenceId::Aa9 => "aa9",
            RecurrenceId::Aa10 => "aa10",
            RecurrenceId::Cor21 => "cor21",
            RecurrenceId::Thm23 => "thm23",
            RecurrenceId::Aa11 => "aa11",
            RecurrenceId::Cor22 => "cor22",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.name().eq_ignore_ascii_case(s))
    }

    pub fn requires_unit_psi(self) -> bool {
        self == RecurrenceId::Cor22
    }
}

impl fmt::Display for RecurrenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    Rational::from_integer(rational::binomial(n, k))
}

struct Context<'a, B> {
    pf: &'a PolyFamily,
    kernels: &'a [P],
    psi_d: Vec<P>,
    phi2_d: Vec<P>,
    la_dphi1: P,
    binom: B,
}

impl<B: Fn(usize, usize) -> Rational> Context<'_, B> {
    fn q(&self, m: usize) -> &P {
        &self.kernels[m]
    }

    fn dq(&self, m: usize) -> P {
        self.pf.reduced_derivative(&self.kernels[m])
    }

    /// `q_m · small`, skipping the product when `small` vanishes.
    fn q_times(&self, m: usize, small: &P) -> P {
        if small.is_zero() {
            P::zero()
        } else {
            self.q(m) * small
        }
    }

    /// `D q_m · small`, skipping the derivative when `small` vanishes.
    fn dq_times(&self, m: usize, small: &P) -> P {
        if small.is_zero() {
            P::zero()
        } else {
            self.dq(m) * small
        }
    }

    /// `Σ_{k≤n} Σ_{p≤n−k} C(n,k) C(n−k,p) ψ⁽ᵖ⁾ φ2⁽ᵏ⁺¹⁾ · big(n−k−p)`, grouped by
    /// `j = k + p` so that each large factor is multiplied only once.
    fn double_sum(&self, n: usize, big: impl Fn(usize) -> P) -> P {
        let mut acc = P::zero();
        for j in 0..=n {
            let mut weight = P::zero();
            for k in 0..=j {
                let (phi2, psi) = (&self.phi2_d[k + 1], &self.psi_d[j - k]);
                if phi2.is_zero() || psi.is_zero() {
                    continue;
                }
                let c = (self.binom)(n, k) * (self.binom)(n - k, j - k);
                weight = weight + (phi2 * psi).scale(&c);
            }
            if !weight.is_zero() {
                acc = acc + big(n - j) * &weight;
            }
        }
        acc
    }

    fn single_sum(&self, n: usize, term: impl Fn(usize) -> P) -> P {
        (0..=n).fold(P::zero(), |acc, p| {
            let t = term(p);
            if t.is_zero() {
                acc
            } else {
                acc + t.scale(&(self.binom)(n, p))
            }
        })
    }

    fn residual(&self, id: RecurrenceId, n: usize) -> P {
        let lb = SymCoeff::lb();
        let la = SymCoeff::la();
        let psi = &self.psi_d;
        let phi2 = &self.phi2_d;
        match id {
            RecurrenceId::Aa9 => {
                let lhs = self.single_sum(n, |p| self.q_times(n - p + 1, &psi[p]) - self.q_times(n - p, &psi[p + 1]));
                let rhs = self.double_sum(n, |m| self.q(m).clone());
                lhs + rhs.mul_coeff(&lb)
            }
            RecurrenceId::Aa10 => {
                let lhs = self.single_sum(n, |p| {
                    self.dq_times(n - p, &psi[p])
                        - self.q_times(n - p, &(&self.la_dphi1 * &psi[p]))
                        - self.q_times(n - p, &psi[p + 1])
                });
                let rhs = self.double_sum(n, |m| self.q(m).clone());
                lhs + rhs.mul_coeff(&lb)
            }
            RecurrenceId::Cor21 => self.single_sum(n, |p| {
                self.q_times(n - p + 1, &psi[p]) - self.q_times(n - p, &psi[p + 1]) - self.dq_times(n - p, &psi[p])
                    + self.q_times(n - p, &(&self.la_dphi1 * &psi[p]))
                    + self.q_times(n - p, &psi[p + 1])
            }),
            RecurrenceId::Thm23 => self.dq(n) - self.q(n + 1).clone() - &self.la_dphi1 * self.q(n),
            RecurrenceId::Aa11 => {
                let first = self.single_sum(n, |p| {
                    self.q_times(n - p + 1, &(&psi[p] * self.pf.dphi1()).mul_coeff(&la))
                        + self.q_times(n - p + 1, &psi[p + 1])
                        - if psi[p + 1].is_zero() { P::zero() } else { self.dq(n - p) * &psi[p + 1] }
                });
                let second = self.double_sum(n, |m| self.dq(m) - self.q(m + 1));
                first + second.mul_coeff(&lb)
            }
            RecurrenceId::Cor22 => {
                let sum = (0..=n).fold(P::zero(), |acc, k| {
                    acc + (&phi2[k + 1] * self.q(n - k)).scale(&(self.binom)(n, k))
                });
                self.q(n + 1).clone() + sum.mul_coeff(&lb)
            }
        }
    }
}

fn context<'a, B>(pf: &'a PolyFamily, kernels: &'a [P], n: usize, binom: B) -> Context<'a, B> {
    let derivatives = |f: &P| {
        let mut out = Vec::with_capacity(n + 3);
        out.push(f.clone());
        for k in 0..n + 2 {
            let next = out[k].derivative();
            out.push(next);
        }
        out
    };
    Context {
        pf,
        kernels,
        psi_d: derivatives(&pf.psi),
        phi2_d: derivatives(&pf.phi2),
        la_dphi1: pf.dphi1().mul_coeff(&SymCoeff::la()),
        binom,
    }
}

/// Residual of `id` at index `n` for arbitrary kernel data `q_0 … q_{n+1}`.
///
/// # Panics
/// If fewer than `n + 2` kernels are supplied.
pub fn residual_with_kernels(id: RecurrenceId, pf: &PolyFamily, kernels: &[P], n: usize) -> Result<P> {
    residual_with_binomial(id, pf, kernels, n, binomial)
}

/// As [`residual_with_kernels`] but with a replacement binomial table; used to
/// check that the verifier notices a corrupted coefficient.
pub fn residual_with_binomial(
    id: RecurrenceId,
    pf: &PolyFamily,
    kernels: &[P],
    n: usize,
    binom: impl Fn(usize, usize) -> Rational,
) -> Result<P> {
    if id.requires_unit_psi() && !pf.psi_is_one() {
        return Err(Error::RequiresUnitPsi);
    }
    assert!(kernels.len() >= n + 2, "need kernels q_0..q_{}", n + 1);
    Ok(context(pf, kernels, n, binom).residual(id, n))
}

/// LHS − RHS of `id` at index `n`, every Θ replaced by its reduced kernel.
pub fn residual(id: RecurrenceId, family: &FamilySpec, n: usize) -> Result<P> {
    let pf = PolyFamily::from_spec(family)?;
    residual_with_kernels(id, &pf, &pf.kernels(n + 1), n)
}

fn failure_at(n: usize, r: &P) -> Failure {
    let (degree, coeff) = r
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .expect("nonzero residual");
    Failure {
        n: Some(n),
        x_degree: Some(degree),
        residual: coeff.to_string(),
        ..Default::default()
    }
}

/// Checks `id` for `n = 0..=n_max`, with a custom binomial table.
pub fn check_with_binomial(
    id: RecurrenceId,
    pf: &PolyFamily,
    kernels: &[P],
    n_max: usize,
    binom: impl Fn(usize, usize) -> Rational,
) -> Result<VerificationReport> {
    for n in 0..=n_max {
        let r = residual_with_binomial(id, pf, kernels, n, &binom)?;
        if !r.is_zero() {
            return Ok(VerificationReport::failed(id.name(), n_max, failure_at(n, &r)));
        }
    }
    let report = VerificationReport::verified(id.name(), n_max);
    Ok(if pf.dphi1().is_zero() {
        report.with_note("phi1 is constant")
    } else {
        report
    })
}

pub fn check(id: RecurrenceId, family: &FamilySpec, n_max: usize) -> Result<VerificationReport> {
    let pf = PolyFamily::from_spec(family)?;
    check_with_binomial(id, &pf, &pf.kernels(n_max + 1), n_max, binomial)
}

/// All applicable identities for `n ≤ n_max`; the ψ = 1 relation is skipped
/// for other ψ.
pub fn sweep(family: &FamilySpec, n_max: usize) -> Result<Vec<VerificationReport>> {
    let pf = PolyFamily::from_spec(family)?;
    let kernels = pf.kernels(n_max + 1);
    RecurrenceId::ALL
        .into_iter()
        .filter(|id| !id.requires_unit_psi() || pf.psi_is_one())
        .map(|id| check_with_binomial(id, &pf, &kernels, n_max, binomial))
        .collect()
}

fn thm23_on_jets<C: Ring>(
    q_n: &TruncatedSeries<C>,
    q_next: &TruncatedSeries<C>,
    phi1: &TruncatedSeries<C>,
    phi2: &TruncatedSeries<C>,
    la: &C,
    lb: &C,
) -> Result<TruncatedSeries<C>> {
    let dphi1 = phi1.derivative()?;
    let dphi2 = phi2.derivative()?;
    let log_prefactor = dphi1.mul_coeff(la).sub(&dphi2.mul_coeff(lb))?;
    let dq = q_n.derivative()?.add(&log_prefactor.mul(q_n)?)?;
    dq.sub(q_next)?.sub(&dphi1.mul_coeff(la).mul(q_n)?)
}

/// `Θ'_n − Θ_{n+1} − ln α φ1' Θ_n` on Taylor jets at `x0`, reduced by the
/// prefactor. Works for non-polynomial families; the result is numeric when
/// any input jet is.
pub fn thm23_jet_residual(family: &FamilySpec, n: usize, x0: &Rational, order: usize) -> Result<Jet> {
    let q_n = theta_jet(family, n, x0, order + 1)?;
    let q_next = theta_jet(family, n + 1, x0, order)?;
    let phi1 = jet_at(family.phi1(), x0, order + 1)?;
    let phi2 = jet_at(family.phi2(), x0, order + 1)?;
    match (q_n, q_next, phi1, phi2) {
        (Jet::Exact(a), Jet::Exact(b), Jet::Exact(c), Jet::Exact(d)) => Ok(Jet::Exact(thm23_on_jets(
            &a,
            &b,
            &c,
            &d,
            &SymCoeff::la(),
            &SymCoeff::lb(),
        )?)),
        (a, b, c, d) => {
            let (la, lb) = family.numeric_logs()?;
            let [a, b, c, d] = [a, b, c, d].map(|j| j.to_numeric(la, lb));
            Ok(Jet::Numeric(thm23_on_jets(&a, &b, &c, &d, &la, &lb)?))
        }
    }
}

/// `C(n, k)` with `delta` added at one position.
pub fn perturbed_binomial(at_n: usize, at_k: usize, delta: Rational) -> impl Fn(usize, usize) -> Rational {
    move |n, k| {
        let base = binomial(n, k);
        if n == at_n && k == at_k {
            base + delta.clone()
        } else {
            base
        }
    }
}
