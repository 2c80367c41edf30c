//! The generating function `Σ Θ_n tⁿ/n! = α^{φ1(x)} ψ(x+t) β^{−φ2(x+t)}`,
//! checked after cancelling the prefactor `α^{φ1(x)} β^{−φ2(x)}`:
//!
//! ```text
//! Σ q_n(x) tⁿ/n!  =  ψ(x+t) · exp(−Lβ (φ2(x+t) − φ2(x)))
//! ```
//!
//! Both sides are formal series in `t`; no convergence condition is checked.

use alloc::format;

use num_traits::Zero;

use crate::analytic::FamilySpec;
use crate::error::Result;
use crate::kernel::PolyFamily;
use crate::poly::Poly;
use crate::rational::{self, Rational};
use crate::report::{Failure, VerificationReport};
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::symcoeff::SymCoeff;

pub type PolySeries = TruncatedSeries<Poly<SymCoeff>>;

pub const IDENTITY: &str = "genfun";

/// `Σ_{n≤order} q_n tⁿ/n!` from precomputed kernels.
pub fn lhs_from_kernels(kernels: &[Poly<SymCoeff>], order: usize) -> PolySeries {
    let facts = rational::factorials(order);
    TruncatedSeries::from_fn(order, |n| {
        kernels[n].scale(&Rational::from_integer(facts[n].clone()).recip())
    })
}

pub fn genfun_lhs(family: &FamilySpec, order: usize) -> Result<PolySeries> {
    let pf = PolyFamily::from_spec(family)?;
    Ok(lhs_from_kernels(&pf.kernels(order), order))
}

/// Reduced right-hand side for a polynomial family.
pub fn rhs_of(pf: &PolyFamily, order: usize) -> Result<PolySeries> {
    let shifted_psi = pf.psi.taylor_shift(order);
    // −Lβ (φ2(x+t) − φ2(x)); the constant term cancels exactly
    let minus_lb = SymCoeff::lb().neg_ref();
    let arg = pf.phi2.taylor_shift(order);
    let arg = TruncatedSeries::from_fn(order, |j| {
        if j == 0 {
            Poly::zero()
        } else {
            arg.coeff(j).mul_coeff(&minus_lb)
        }
    });
    shifted_psi.mul(&arg.exp()?)
}

pub fn genfun_rhs(family: &FamilySpec, order: usize) -> Result<PolySeries> {
    rhs_of(&PolyFamily::from_spec(family)?, order)
}

/// Compares two reduced series and reports the first differing `t` order.
pub fn compare(identity: &str, lhs: &PolySeries, rhs: &PolySeries) -> Result<VerificationReport> {
    let order = lhs.order().min(rhs.order());
    match lhs.first_difference(rhs)? {
        None => Ok(VerificationReport::verified(identity, order)),
        Some((j, _)) => {
            let residual = lhs.coeff(j) - rhs.coeff(j);
            Ok(VerificationReport::failed(
                identity,
                order,
                Failure {
                    t_order: Some(j),
                    x_degree: residual.degree(),
                    residual: format!("{residual}"),
                    ..Default::default()
                },
            ))
        }
    }
}

/// Checks the identity using caller-supplied kernels, so that corrupted
/// kernels can be fed to the checker.
pub fn verify_with_kernels(
    pf: &PolyFamily,
    kernels: &[Poly<SymCoeff>],
    order: usize,
) -> Result<VerificationReport> {
    compare(IDENTITY, &lhs_from_kernels(kernels, order), &rhs_of(pf, order)?)
}

pub fn verify_genfun(family: &FamilySpec, order: usize) -> Result<VerificationReport> {
    let pf = PolyFamily::from_spec(family)?;
    verify_with_kernels(&pf, &pf.kernels(order), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::report::Status;
    use crate::symcoeff::Substitution;
    use num_traits::One;

    fn unit_lb(s: &PolySeries) -> PolySeries {
        s.map(|p| p.substitute(&Substitution::logs(int(1), int(1))))
    }

    #[test]
    fn lhs_examples() {
        let h = FamilySpec::hermite();
        assert_eq!(genfun_lhs(&h, 0).unwrap().coeff(0), Poly::one());
        let l = unit_lb(&genfun_lhs(&h, 2).unwrap());
        assert_eq!(l.coeff(1), Poly::from_ints(&[0, -2]));
        assert_eq!(l.coeff(2), Poly::from_ints(&[-1, 0, 2]));
        // ψ = x, φ2 = 0 terminates after the linear term
        let f = FamilySpec::polynomial(Poly::zero(), Poly::zero(), Poly::from_ints(&[0, 1])).unwrap();
        let l = genfun_lhs(&f, 4).unwrap();
        assert_eq!(l.coeff(0), Poly::from_ints(&[0, 1]));
        assert_eq!(l.coeff(1), Poly::from_ints(&[1]));
        assert!((2..=4).all(|j| l.coeff(j).is_zero()));
    }

    #[test]
    fn rhs_examples() {
        let h = FamilySpec::hermite();
        let r = genfun_rhs(&h, 2).unwrap();
        let lb = SymCoeff::lb();
        assert_eq!(r.coeff(1), Poly::monomial(lb.scale(&int(-2)), 1));
        assert_eq!(
            r.coeff(2),
            Poly::monomial(lb.pow(2).scale(&int(2)), 2) - Poly::constant(lb.clone())
        );
        // φ2 = x gives exp(−Lβ t)
        let f = FamilySpec::polynomial(Poly::zero(), Poly::from_ints(&[0, 1]), Poly::from_ints(&[1])).unwrap();
        let r = genfun_rhs(&f, 5).unwrap();
        for n in 0..=5 {
            let expect = lb.neg_ref().pow(n as u32).scale(&Rational::from_integer(rational::factorial(n)).recip());
            assert_eq!(r.coeff(n), Poly::constant(expect));
        }
        // φ2 = 0 is a pure Taylor shift of ψ
        let f = FamilySpec::polynomial(Poly::zero(), Poly::zero(), Poly::from_ints(&[1, 0, 3])).unwrap();
        let r = genfun_rhs(&f, 3).unwrap();
        assert_eq!(r.coeff(1), Poly::from_ints(&[0, 6]));
        assert_eq!(r.coeff(2), Poly::from_ints(&[3]));
    }

    #[test]
    fn hermite_verified_and_mutation_detected() {
        let h = FamilySpec::hermite();
        assert!(verify_genfun(&h, 16).unwrap().is_verified());
        let pf = PolyFamily::from_spec(&h).unwrap();
        let mut ks = pf.kernels(8);
        ks[3] = &ks[3] + &Poly::monomial(SymCoeff::one(), 1);
        let r = verify_with_kernels(&pf, &ks, 8).unwrap();
        assert_eq!(r.status, Status::Failed);
        assert_eq!(r.first_failure.unwrap().t_order, Some(3));
    }
}
