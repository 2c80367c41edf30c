use rodrigues_core::analytic::{AnalyticFunction, BuiltinKind, Param};
use rodrigues_core::bilateral::apostol_bernoulli;
use rodrigues_core::kernel::{reduced_kernel, theta_jet};
use rodrigues_core::rational::{binomial, frac, int};
use rodrigues_core::{FamilySpec, Jet, Poly, Rational, Ring, Zero};

#[test]
fn bernoulli_numbers_satisfy_their_recurrence() {
    // Σ_{j<n} C(n, j) B_j = 0 for n ≥ 2, with B_j = ℬ_j(0).
    let b: Vec<Rational> = (0..=12).map(|n| apostol_bernoulli(n, 1, &int(1)).unwrap().coeff(0)).collect();
    assert_eq!(b[0], int(1));
    for n in 2..=12 {
        let s = (0..n).fold(Rational::zero(), |acc, j| acc + Rational::from_integer(binomial(n, j)) * &b[j]);
        assert!(s.is_zero(), "n = {n}");
    }
    assert_eq!(b[12], frac(-691, 2730));
}

#[test]
fn apostol_bernoulli_is_monic_of_degree_n() {
    for n in 0..=10 {
        let p = apostol_bernoulli(n, 1, &int(1)).unwrap();
        assert_eq!(p.degree(), Some(n));
        assert_eq!(p.leading_coeff(), Some(&int(1)));
    }
}

#[test]
fn apostol_bernoulli_appell_property() {
    // d/dy ℬ_n^{(a)}(y; λ) = n ℬ_{n−1}^{(a)}(y; λ)
    for lambda in [int(1), int(2), frac(1, 3)] {
        for n in 1..=8 {
            let d = apostol_bernoulli(n, 2, &lambda).unwrap().derivative();
            let prev = apostol_bernoulli(n - 1, 2, &lambda).unwrap().scale(&int(n as i64));
            assert_eq!(d, prev, "lambda = {lambda}, n = {n}");
        }
    }
}

#[test]
fn exact_jet_matches_taylor_shift_of_kernel() {
    let f = FamilySpec::polynomial(Poly::from_ints(&[1, 0, 2]), Poly::from_ints(&[0, -1, 0, 1]), Poly::from_ints(&[3, 1]))
        .unwrap();
    let x0 = frac(-2, 3);
    for n in 0..5 {
        let q = reduced_kernel(&f, n).unwrap().q;
        let jet = theta_jet(&f, n, &x0, 6).unwrap().exact().unwrap();
        let shifted = q.taylor_shift(6);
        let at = rodrigues_core::SymCoeff::constant(x0.clone());
        for j in 0..=6 {
            assert_eq!(jet.coeff(j), shifted.coeff(j).eval(&at), "n = {n}, j = {j}");
        }
    }
}

#[test]
fn jets_are_linear_in_psi() {
    let sym = Param::Symbolic;
    let make = |psi: AnalyticFunction| {
        FamilySpec::new(AnalyticFunction::poly_ints(&[0, 1]), AnalyticFunction::poly_ints(&[0, 0, 1]), psi, sym, sym)
            .unwrap()
    };
    let sin = AnalyticFunction::Builtin { kind: BuiltinKind::Sin, scale: int(2) };
    let cos = AnalyticFunction::Builtin { kind: BuiltinKind::Cos, scale: int(1) };
    let x0 = int(0);
    for n in 0..4 {
        let a = theta_jet(&make(sin.clone()), n, &x0, 5).unwrap().exact().unwrap();
        let b = theta_jet(&make(cos.clone()), n, &x0, 5).unwrap().exact().unwrap();
        let table = |f: &AnalyticFunction| match rodrigues_core::analytic::jet_at(f, &x0, 12).unwrap() {
            Jet::Exact(s) => s.coeffs().iter().map(|c| c.as_rational().unwrap()).collect::<Vec<_>>(),
            Jet::Numeric(_) => unreachable!(),
        };
        let sum: Vec<Rational> = table(&sin).iter().zip(table(&cos)).map(|(x, y)| x + y).collect();
        let c = theta_jet(&make(AnalyticFunction::TaylorTable { at: x0.clone(), coeffs: sum }), n, &x0, 5)
            .unwrap()
            .exact()
            .unwrap();
        assert_eq!(a.add(&b).unwrap(), c, "n = {n}");
    }
}
