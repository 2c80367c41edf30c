//! Linear ODEs annihilating Θ_n when ψ = 1 and φ2 is a polynomial of degree m.
//!
//! The general construction repeats `Θ_{n+1} = Θ'_n − ln α φ1' Θ_n` to express
//! `Θ_{n+j}` through `Θ_n, Θ'_n, …, Θ_n⁽ʲ⁾`, then substitutes these ladder
//! operators into the ψ = 1 recurrence taken at index `n + m − 1`:
//!
//! ```text
//! Θ_{n+m} + ln β Σ_{k<m} C(n+m−1, k) φ2⁽ᵏ⁺¹⁾ Θ_{n+m−1−k} = 0
//! ```
//!
//! The result is monic of order m with coefficients in ℚ[Lα, Lβ, n̂][x]; no
//! division is ever needed.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::analytic::{as_poly, FamilySpec};
use crate::error::{Error, Result};
use crate::kernel::PolyFamily;
use crate::poly::Poly;
use crate::rational::{frac, int};
use crate::report::{Failure, VerificationReport};
use crate::ring::Ring;
use crate::symcoeff::{Substitution, SymCoeff};

type P = Poly<SymCoeff>;

/// `Σ_j c_j(x) dʲ/dxʲ`, stored as `c_0 … c_m` with `c_m = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSpec {
    coeffs: Vec<P>,
}

impl OdeSpec {
    /// # Panics
    /// If the list is empty or the leading coefficient is not 1.
    pub fn new(coeffs: Vec<P>) -> Self {
        assert!(coeffs.last().is_some_and(|c| c.is_one()), "ODE must be monic");
        OdeSpec { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[P] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &P {
        &self.coeffs[j]
    }

    pub fn substitute(&self, s: &Substitution) -> OdeSpec {
        OdeSpec { coeffs: self.coeffs.iter().map(|c| c.substitute(s)).collect() }
    }

    /// Replaces the coefficient of `dʲ/dxʲ` (for mutation checks).
    pub fn with_coeff(mut self, j: usize, c: P) -> OdeSpec {
        self.coeffs[j] = c;
        self
    }
}

/// `Θ_{n+j} = Σ_i a_{j,i}(x) Θ_n⁽ⁱ⁾`
#[derive(Debug, Clone, PartialEq)]
pub struct LadderOperator {
    pub j: usize,
    pub coeffs: Vec<P>,
}

impl LadderOperator {
    pub fn identity() -> Self {
        LadderOperator { j: 0, coeffs: vec![P::one()] }
    }

    /// `a_{j+1,i} = a_{j,i−1} + a_{j,i}' − Lα φ1' a_{j,i}`
    pub fn next(&self, dphi1: &P) -> LadderOperator {
        let la_dphi1 = dphi1.mul_coeff(&SymCoeff::la());
        let coeffs = (0..=self.j + 1)
            .map(|i| {
                let shifted = if i > 0 { self.coeffs[i - 1].clone() } else { P::zero() };
                match self.coeffs.get(i) {
                    Some(a) => shifted + a.derivative() - &la_dphi1 * a,
                    None => shifted,
                }
            })
            .collect();
        LadderOperator { j: self.j + 1, coeffs }
    }

    pub fn coeff(&self, i: usize) -> P {
        self.coeffs.get(i).cloned().unwrap_or_else(P::zero)
    }
}

fn ladders(dphi1: &P, up_to: usize) -> Vec<LadderOperator> {
    let mut out = vec![LadderOperator::identity()];
    for j in 0..up_to {
        let next = out[j].next(dphi1);
        out.push(next);
    }
    out
}

pub fn ladder(family: &FamilySpec, j: usize) -> Result<LadderOperator> {
    let phi1 = as_poly(family.phi1(), "phi1")?;
    Ok(ladders(&phi1.derivative(), j).pop().expect("identity"))
}

fn require_ode_family(family: &FamilySpec, m: usize) -> Result<PolyFamily> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    let pf = PolyFamily::from_spec(family)?;
    if !pf.psi_is_one() {
        return Err(Error::RequiresUnitPsi);
    }
    match pf.phi2.degree() {
        Some(d) if d == m => Ok(pf),
        d => Err(Error::DegreeMismatch { expected: m, found: d.unwrap_or(0) }),
    }
}

/// Monic order-`m` operator annihilating every Θ_n, with `n` symbolic.
pub fn synthesize_ode(family: &FamilySpec, m: usize) -> Result<OdeSpec> {
    let pf = require_ode_family(family, m)?;
    let ops = ladders(pf.dphi1(), m);
    let lb = SymCoeff::lb();
    let mut coeffs = ops[m].coeffs.clone();
    let mut d = pf.phi2.clone();
    for k in 0..m {
        d = d.derivative(); // φ2^(k+1)
        let weight = SymCoeff::binomial_in_n(m as i64 - 1, k).mul_ref(&lb);
        let factor = d.mul_coeff(&weight);
        for (i, a) in ops[m - 1 - k].coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + &(&factor * a);
        }
    }
    Ok(OdeSpec::new(coeffs))
}

/// The closed-form coefficients for `m ∈ {2, 3, 4}`, with `n` symbolic.
///
/// For `m = 4` the `ln²α (φ1'')²` term of `y` carries `+3`; this is what the
/// ladder expansion of `Θ_{n+4}` produces and what the `−x⁴` example
/// requires.
pub fn closed_form_ode(family: &FamilySpec, m: usize) -> Result<OdeSpec> {
    if !(2..=4).contains(&m) {
        return Err(Error::NoClosedForm(m));
    }
    let pf = require_ode_family(family, m)?;
    let mut p1 = vec![pf.phi1.clone()];
    let mut p2 = vec![pf.phi2.clone()];
    for k in 0..4 {
        let (a, b) = (p1[k].derivative(), p2[k].derivative());
        p1.push(a);
        p2.push(b);
    }
    let a = SymCoeff::la();
    let b = SymCoeff::lb();
    let n = SymCoeff::n_hat();
    let c = |k: i64| SymCoeff::from_int(k);
    let np = |k: i64| n.add_ref(&c(k));
    // coefficient × product of derivative polynomials
    let t = |coef: SymCoeff, factors: &[&P]| -> P {
        factors.iter().fold(P::constant(coef), |acc, f| acc * *f)
    };
    let sum = |terms: Vec<P>| terms.into_iter().fold(P::zero(), |acc, x| acc + x);
    let (a2, a3, a4) = (a.pow(2), a.pow(3), a.pow(4));
    let ab = a.mul_ref(&b);
    let coeffs = match m {
        2 => vec![
            sum(vec![
                t(a2.clone(), &[&p1[1], &p1[1]]),
                t(a.neg_ref(), &[&p1[2]]),
                t(ab.neg_ref(), &[&p1[1], &p2[1]]),
                t(np(1).mul_ref(&b), &[&p2[2]]),
            ]),
            sum(vec![t(b.clone(), &[&p2[1]]), t(a.scale(&int(-2)), &[&p1[1]])]),
            P::one(),
        ],
        3 => vec![
            sum(vec![
                t(a3.neg_ref(), &[&p1[1], &p1[1], &p1[1]]),
                t(a2.mul_ref(&b), &[&p2[1], &p1[1], &p1[1]]),
                t(a2.scale(&int(3)), &[&p1[1], &p1[2]]),
                t(a.neg_ref(), &[&p1[3]]),
                t(ab.neg_ref(), &[&p1[2], &p2[1]]),
                t(np(2).mul_ref(&ab).neg_ref(), &[&p2[2], &p1[1]]),
                t(np(1).mul_ref(&np(2)).mul_ref(&b).scale(&frac(1, 2)), &[&p2[3]]),
            ]),
            sum(vec![
                t(np(2).mul_ref(&b), &[&p2[2]]),
                t(a.scale(&int(-3)), &[&p1[2]]),
                t(ab.scale(&int(-2)), &[&p1[1], &p2[1]]),
                t(a2.scale(&int(3)), &[&p1[1], &p1[1]]),
            ]),
            sum(vec![t(b.clone(), &[&p2[1]]), t(a.scale(&int(-3)), &[&p1[1]])]),
            P::one(),
        ],
        _ => vec![
            sum(vec![
                t(a4.clone(), &[&p1[1], &p1[1], &p1[1], &p1[1]]),
                t(a3.mul_ref(&b).neg_ref(), &[&p1[1], &p1[1], &p1[1], &p2[1]]),
                t(a3.scale(&int(-6)), &[&p1[1], &p1[1], &p1[2]]),
                t(a2.scale(&int(4)), &[&p1[1], &p1[3]]),
                t(a2.mul_ref(&b).scale(&int(3)), &[&p1[1], &p1[2], &p2[1]]),
                t(ab.neg_ref(), &[&p1[3], &p2[1]]),
                t(a2.scale(&int(3)), &[&p1[2], &p1[2]]),
                t(a.neg_ref(), &[&p1[4]]),
                t(np(3).mul_ref(&a2).mul_ref(&b), &[&p1[1], &p1[1], &p2[2]]),
                t(np(3).mul_ref(&ab).neg_ref(), &[&p1[2], &p2[2]]),
                t(np(2).mul_ref(&np(3)).mul_ref(&ab).scale(&frac(-1, 2)), &[&p1[1], &p2[3]]),
                t(
                    np(1).mul_ref(&np(2)).mul_ref(&np(3)).mul_ref(&b).scale(&frac(1, 6)),
                    &[&p2[4]],
                ),
            ]),
            sum(vec![
                t(a3.scale(&int(-4)), &[&p1[1], &p1[1], &p1[1]]),
                t(a2.mul_ref(&b).scale(&int(3)), &[&p2[1], &p1[1], &p1[1]]),
                t(a2.scale(&int(12)), &[&p1[1], &p1[2]]),
                t(a.scale(&int(-4)), &[&p1[3]]),
                t(ab.scale(&int(-3)), &[&p1[2], &p2[1]]),
                t(np(3).mul_ref(&ab).scale(&int(-2)), &[&p2[2], &p1[1]]),
                t(np(2).mul_ref(&np(3)).mul_ref(&b).scale(&frac(1, 2)), &[&p2[3]]),
            ]),
            sum(vec![
                t(a2.scale(&int(6)), &[&p1[1], &p1[1]]),
                t(ab.scale(&int(-3)), &[&p1[1], &p2[1]]),
                t(a.scale(&int(-6)), &[&p1[2]]),
                t(np(3).mul_ref(&b), &[&p2[2]]),
            ]),
            sum(vec![t(b.clone(), &[&p2[1]]), t(a.scale(&int(-4)), &[&p1[1]])]),
            P::one(),
        ],
    };
    Ok(OdeSpec::new(coeffs))
}

/// `Σ_j c_j(x)|_{n̂=n} · Dʲ q_n`, with `D q = q' + (Lα φ1' − Lβ φ2') q` the
/// reduced derivative. Zero iff the operator annihilates Θ_n.
pub fn ode_residual(ode: &OdeSpec, family: &FamilySpec, n: usize) -> Result<P> {
    let pf = PolyFamily::from_spec(family)?;
    let q = pf.kernels(n).pop().expect("q_0");
    Ok(residual_on_kernel(ode, &pf, &q, n))
}

fn residual_on_kernel(ode: &OdeSpec, pf: &PolyFamily, q: &P, n: usize) -> P {
    let s = Substitution::index(n);
    let mut acc = P::zero();
    let mut d = q.clone();
    for (j, c) in ode.coeffs.iter().enumerate() {
        if j > 0 {
            d = pf.reduced_derivative(&d);
        }
        acc = acc + c.substitute(&s) * &d;
    }
    acc
}

/// Residuals for `n = 0..=n_max`; the first nonzero one is reported.
pub fn check_ode(ode: &OdeSpec, family: &FamilySpec, n_max: usize) -> Result<VerificationReport> {
    let pf = PolyFamily::from_spec(family)?;
    let identity = alloc::format!("ode{}", ode.order());
    for (n, q) in pf.kernels(n_max).iter().enumerate() {
        let r = residual_on_kernel(ode, &pf, q, n);
        if let Some((deg, c)) = r.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()) {
            return Ok(VerificationReport::failed(
                identity,
                n_max,
                Failure {
                    n: Some(n),
                    x_degree: Some(deg),
                    residual: alloc::format!("{c}"),
                    ..Default::default()
                },
            ));
        }
    }
    let report = VerificationReport::verified(identity, n_max);
    Ok(if pf.dphi1().is_zero() {
        report.with_note("phi1 is constant; the equation still annihilates every kernel checked")
    } else {
        report
    })
}

/// `y'' − 2x y' + 2n y`
pub fn hermite_equation() -> OdeSpec {
    OdeSpec::new(vec![
        P::constant(SymCoeff::n_hat().scale(&int(2))),
        P::from_ints(&[0, -2]),
        P::one(),
    ])
}

/// The fourth-order equation printed for `φ1 = φ2 = −x⁴`, `α = β = e`.
pub fn quartic_example_equation() -> OdeSpec {
    let n = SymCoeff::n_hat();
    let poly_n = |cs: &[i64]| SymCoeff::poly_in_n(&cs.iter().map(|&c| int(c)).collect::<Vec<_>>());
    let mono = |c: SymCoeff, d: usize| P::monomial(c, d);
    OdeSpec::new(vec![
        // −192n x⁸ − 48(n² + 8n) x⁴ − 4n(n² + 6n + 11)
        mono(n.scale(&int(-192)), 8) + mono(poly_n(&[0, -384, -48]), 4) + mono(poly_n(&[0, -44, -24, -4]), 0),
        // 64x⁹ + (144 − 96n) x⁵ − 12(n² + 5n − 2) x
        mono(SymCoeff::from_int(64), 9) + mono(poly_n(&[144, -96]), 5) + mono(poly_n(&[24, -60, -12]), 1),
        // 48x⁶ − 12(n − 3) x²
        mono(SymCoeff::from_int(48), 6) + mono(poly_n(&[36, -12]), 2),
        mono(SymCoeff::from_int(12), 3),
        P::one(),
    ])
}
