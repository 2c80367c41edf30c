//! Seeded random families and bilateral specs for the verification suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rodrigues_core::bilateral::{BilateralSpec, CoefficientRule, OmegaFamily};
use rodrigues_core::rational::frac;
use rodrigues_core::{FamilySpec, One, Poly, Rational, Zero};

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Polynomial of exact degree `deg`.
pub fn poly_of_degree<R: Rng>(rng: &mut R, deg: usize) -> Poly<Rational> {
    let mut c: Vec<Rational> = (0..deg).map(|_| rational(rng)).collect();
    c.push(nonzero_rational(rng));
    Poly::new(c)
}

pub fn poly<R: Rng>(rng: &mut R, max_deg: usize) -> Poly<Rational> {
    let deg = rng.gen_range(0..=max_deg);
    poly_of_degree(rng, deg)
}

/// Polynomial family with symbolic `α, β`, nonconstant `φ1, φ2` of degree at
/// most `max_deg`, and `ψ = 1` when `unit_psi` is set.
pub fn family<R: Rng>(rng: &mut R, max_deg: usize, unit_psi: bool) -> FamilySpec {
    let psi = if unit_psi { Poly::one() } else { poly(rng, max_deg) };
    let d1 = rng.gen_range(1..=max_deg.max(1));
    let d2 = rng.gen_range(1..=max_deg.max(1));
    FamilySpec::polynomial(poly_of_degree(rng, d1), poly_of_degree(rng, d2), psi).expect("nonzero psi")
}

/// `ψ = 1`, `deg φ2 = m`, as the ODE construction needs.
pub fn ode_family<R: Rng>(rng: &mut R, m: usize, max_deg_phi1: usize) -> FamilySpec {
    FamilySpec::polynomial(poly(rng, max_deg_phi1), poly_of_degree(rng, m), Poly::one()).expect("nonzero psi")
}

pub const LAMBDAS: [(i64, i64); 3] = [(1, 1), (2, 1), (1, 3)];

pub fn omega<R: Rng>(rng: &mut R, max_deg: usize) -> OmegaFamily {
    if rng.gen_bool(0.5) {
        let (p, q) = *LAMBDAS.choose(rng).expect("nonempty");
        OmegaFamily::ApostolBernoulli { order: rng.gen_range(1..=2), lambda: frac(p, q) }
    } else {
        let unit_psi = rng.gen_bool(0.5);
        OmegaFamily::Theta(Box::new(family(rng, max_deg, unit_psi)))
    }
}

/// Random nonzero `a_0 … a_{k_max}`, `p ∈ {1, 2, 3}`, `μ ≤ 3`, `ν ∈ {1, 2}`.
pub fn bilateral_spec<R: Rng>(rng: &mut R, omega: OmegaFamily, k_max: usize) -> BilateralSpec {
    let a = (0..=k_max).map(|_| nonzero_rational(rng)).collect();
    BilateralSpec::new(
        omega,
        CoefficientRule::Explicit(a),
        rng.gen_range(0..=3),
        rng.gen_range(1..=2),
        rng.gen_range(1..=3),
    )
    .expect("valid spec")
}
