//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rodrigues::random;
use rodrigues_core::bilateral::{
    apostol_bernoulli, verify_bilateral, verify_bilinear, BilateralSpec, CoefficientRule, OmegaFamily,
};
use rodrigues_core::genfun::{compare, genfun_rhs, lhs_from_kernels};
use rodrigues_core::kernel::{theta_eval, theta_jet, PolyFamily};
use rodrigues_core::ode::{check_ode, closed_form_ode, ode_residual, synthesize_ode};
use rodrigues_core::rational::{factorial, frac, int, to_f64};
use rodrigues_core::recurrence::{self, RecurrenceId};
use rodrigues_core::symcoeff::Substitution;
use rodrigues_core::{
    genfun, FamilySpec, Monomial, One, Param, Poly, Rational, Ring, SymCoeff, TruncatedSeries, Zero,
};

const SEED: u64 = 20_241_016;

type Outcome = Result<String, String>;
type P = Poly<SymCoeff>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: rodrigues_core::Error) -> String {
    e.to_string()
}

fn unit_logs() -> Substitution {
    Substitution::logs(int(1), int(1))
}

fn rational_poly(p: &P, s: &Substitution) -> Poly<Rational> {
    p.substitute(s).to_rational_poly().expect("all symbols substituted")
}

/// Twenty families of degree ≤ 5; even-indexed ones have ψ = 1.
fn families_deg5() -> Vec<FamilySpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..20).map(|i| random::family(&mut rng, 5, i % 2 == 0)).collect()
}

fn criterion_1(families: &[FamilySpec]) -> Outcome {
    let mut mutations = 0usize;
    for (i, f) in families.iter().enumerate() {
        let pf = PolyFamily::from_spec(f).map_err(err)?;
        let kernels = pf.kernels(16);
        let rhs = genfun_rhs(f, 16).map_err(err)?;
        let report = compare(genfun::IDENTITY, &lhs_from_kernels(&kernels, 16), &rhs).map_err(err)?;
        ensure(report.is_verified(), || format!("family {i}: {report:?}"))?;

        let q3 = &kernels[3];
        let top = q3.degree().unwrap_or(0) + 1;
        let mut corruptions: Vec<P> = (0..=top).map(|d| P::monomial(SymCoeff::one(), d)).collect();
        for (d, c) in q3.coeffs().iter().enumerate() {
            for (m, r) in c.terms() {
                corruptions.push(P::monomial(SymCoeff::term(*m, r.clone()), d));
            }
            corruptions.push(P::monomial(SymCoeff::term(Monomial::new(0, 1, 0), int(1)), d));
        }
        for delta in corruptions {
            let mut bad = kernels.clone();
            bad[3] = &bad[3] + &delta;
            let r = compare(genfun::IDENTITY, &lhs_from_kernels(&bad, 16), &rhs).map_err(err)?;
            let at = r.first_failure.as_ref().and_then(|f| f.t_order);
            ensure(at == Some(3), || format!("family {i}: corruption {delta} reported at {at:?}"))?;
            mutations += 1;
        }
    }
    Ok(format!("20 families to t^16 exact; {mutations} corruptions of q_3 all caught at t^3"))
}

fn criterion_2(families: &[FamilySpec]) -> Outcome {
    let mut checks = 0;
    for (i, f) in families.iter().enumerate() {
        let unit = PolyFamily::from_spec(f).map_err(err)?.psi_is_one();
        for id in RecurrenceId::ALL {
            if id.requires_unit_psi() && !unit {
                continue;
            }
            let r = recurrence::check(id, f, 12).map_err(err)?;
            ensure(r.is_verified(), || format!("family {i}: {r:?}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} identity checks, n <= 12, all residuals zero (cor22 on the 10 families with psi = 1)"))
}

fn criterion_3() -> Outcome {
    let h = FamilySpec::hermite();
    let q: Vec<_> =
        PolyFamily::from_spec(&h).map_err(err)?.kernels(15).iter().map(|p| rational_poly(p, &unit_logs())).collect();
    // Hₙ₊₁ = 2x Hₙ − 2n Hₙ₋₁
    let mut oracle = vec![Poly::<Rational>::one(), Poly::from_ints(&[0, 2])];
    for n in 1..15 {
        let next = &Poly::from_ints(&[0, 2]) * &oracle[n] - oracle[n - 1].scale(&int(2 * n as i64));
        oracle.push(next);
    }
    for n in 0..=15 {
        let expect = if n % 2 == 0 { oracle[n].clone() } else { -oracle[n].clone() };
        ensure(q[n] == expect, || format!("q_{n} = {} but (-1)^n H_n = {expect}", q[n]))?;
    }
    let ode = synthesize_ode(&h, 2).map_err(err)?.substitute(&unit_logs());
    let printed = [
        P::constant(SymCoeff::n_hat().scale(&int(2))),
        P::from_ints(&[0, -2]),
        P::one(),
    ];
    ensure(ode.coeffs() == printed, || format!("ODE coefficients {:?}", ode.coeffs()))?;
    Ok("q_n = (-1)^n H_n for n <= 15; ODE y'' - 2x y' + 2n y".into())
}

fn criterion_4() -> Outcome {
    let f = FamilySpec::quartic();
    let ode = synthesize_ode(&f, 4).map_err(err)?;
    let unit = ode.substitute(&unit_logs());
    let n = || SymCoeff::n_hat();
    let c = |v: i64| SymCoeff::from_int(v);
    let mono = |k: SymCoeff, d: usize| P::monomial(k, d);
    // coefficients as printed, n written symbolically
    let printed = [
        mono(n().scale(&int(-192)), 8)
            + mono((n() * n() + n().scale(&int(8))).scale(&int(-48)), 4)
            + mono((n() * (n() * n() + n().scale(&int(6)) + c(11))).scale(&int(-4)), 0),
        mono(c(64), 9)
            + mono(c(144) - n().scale(&int(96)), 5)
            + mono((n() * n() + n().scale(&int(5)) - c(2)).scale(&int(-12)), 1),
        mono(c(48), 6) + mono((n() - c(3)).scale(&int(-12)), 2),
        mono(c(12), 3),
        P::one(),
    ];
    for (j, want) in printed.iter().enumerate() {
        ensure(unit.coeff(j) == want, || format!("y^({j}): got {}, printed {want}", unit.coeff(j)))?;
    }
    for k in 0..=10 {
        let r = ode_residual(&ode, &f, k).map_err(err)?;
        ensure(r.is_zero(), || format!("residual at n = {k}: {r}"))?;
    }
    Ok(format!("y''' coefficient {}, y'' coefficient {}; residual 0 for n <= 10", unit.coeff(3), unit.coeff(2)))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for m in 2..=4 {
        for i in 0..10 {
            let f = random::ode_family(&mut rng, m, 4);
            let synth = synthesize_ode(&f, m).map_err(err)?;
            let closed = closed_form_ode(&f, m).map_err(err)?;
            ensure(synth == closed, || format!("m = {m}, family {i}: closed form differs"))?;
        }
    }
    for m in 1..=6 {
        for i in 0..3 {
            let f = random::ode_family(&mut rng, m, 3);
            let ode = synthesize_ode(&f, m).map_err(err)?;
            let r = check_ode(&ode, &f, 8).map_err(err)?;
            ensure(r.is_verified(), || format!("m = {m}, family {i}: {r:?}"))?;
        }
    }
    Ok("closed = synthesized for m = 2, 3, 4 on 10 families each; residual 0 for m <= 6, n <= 8".into())
}

fn criterion_6() -> Outcome {
    let f = FamilySpec::kampe_de_feriet();
    let kernels = PolyFamily::from_spec(&f).map_err(err)?.kernels(10);
    let half = Poly::from_rationals(&[int(0), frac(1, 2)]);
    // exp(xt + t²) with coefficients in ℚ[x]
    let g = TruncatedSeries::univariate(vec![Poly::zero(), Poly::from_ints(&[0, 1]), Poly::one()], 10)
        .exp()
        .map_err(err)?;
    for (n, kernel) in kernels.iter().enumerate() {
        let q = rational_poly(kernel, &unit_logs()).compose(&half);
        // Hₙ(x, 1) = n! Σ_k x^{n−2k} / (k! (n−2k)!)
        let explicit = Poly::new(
            (0..=n)
                .map(|d| {
                    if d % 2 != n % 2 {
                        return Rational::zero();
                    }
                    let k = (n - d) / 2;
                    Rational::new(factorial(n), factorial(k) * factorial(d))
                })
                .collect(),
        );
        let from_series = g.coeff(n).scale(&Rational::from_integer(factorial(n)));
        ensure(explicit == from_series, || format!("oracles disagree at n = {n}"))?;
        ensure(q == explicit, || format!("q_{n}(x/2) = {q}, H_n(x, 1) = {explicit}"))?;
    }
    Ok("q_n(x/2) = H_n(x, 1) for n <= 10".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut lines = Vec::new();
    for i in 0..10 {
        let omega = if i % 2 == 0 {
            let (p, q) = random::LAMBDAS[(i / 2) % 3];
            OmegaFamily::ApostolBernoulli { order: rng.gen_range(1..=2), lambda: frac(p, q) }
        } else {
            OmegaFamily::Theta(Box::new(random::family(&mut rng, 3, false)))
        };
        let spec = random::bilateral_spec(&mut rng, omega, 8);
        let f = random::family(&mut rng, 3, false);
        let r = verify_bilateral(&spec, &f, 8, 8).map_err(err)?;
        ensure(r.is_verified(), || format!("random spec {i}: {r:?}"))?;
    }
    lines.push("10 random specs");
    for (p, q) in random::LAMBDAS {
        let spec = BilateralSpec::new(
            OmegaFamily::ApostolBernoulli { order: 1, lambda: frac(p, q) },
            CoefficientRule::InverseFactorial,
            0,
            1,
            1,
        )
        .map_err(err)?;
        let f = random::family(&mut rng, 3, false);
        let r = verify_bilateral(&spec, &f, 8, 8).map_err(err)?;
        ensure(r.is_verified() && !r.notes.is_empty(), || format!("closed-form lambda {p}/{q}: {r:?}"))?;
    }
    lines.push("Apostol-Bernoulli generator for lambda = 1, 2, 1/3");
    for f in [FamilySpec::hermite(), random::family(&mut rng, 3, false)] {
        let r = verify_bilinear(&f, 8, 8).map_err(err)?;
        ensure(r.is_verified(), || format!("bilinear: {r:?}"))?;
    }
    lines.push("bilinear and symmetric");
    let b1 = apostol_bernoulli(1, 1, &int(1)).map_err(err)?;
    let b2 = apostol_bernoulli(2, 1, &int(1)).map_err(err)?;
    ensure(b1 == Poly::from_rationals(&[frac(-1, 2), int(1)]), || format!("B_1 = {b1}"))?;
    ensure(b2 == Poly::from_rationals(&[frac(1, 6), int(-1), int(1)]), || format!("B_2 = {b2}"))?;
    lines.push("B_1, B_2");
    Ok(format!("{} (N = K = 8)", lines.join("; ")))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut worst = 0.0f64;
    for i in 0..5 {
        let alpha = rng.gen_range(1.5..3.5);
        let beta = rng.gen_range(1.5..3.5);
        let f = random::family(&mut rng, 3, i % 2 == 0)
            .with_params(Param::Numeric(alpha), Param::Numeric(beta))
            .map_err(err)?;
        let (la, lb) = f.numeric_logs().map_err(err)?;
        let pf = PolyFamily::from_spec(&f).map_err(err)?;
        let kernels = pf.kernels(6);
        let logs = Substitution::logs(
            Rational::from_float(la).expect("finite"),
            Rational::from_float(lb).expect("finite"),
        );
        for _ in 0..20 {
            let x0: f64 = rng.gen_range(-1.0..1.0);
            let xr = Rational::from_float(x0).expect("finite");
            let prefactor = (la * to_f64(&rational_poly(&pf.phi1, &logs).eval(&xr))
                - lb * to_f64(&rational_poly(&pf.phi2, &logs).eval(&xr)))
            .exp();
            for (n, q) in kernels.iter().enumerate() {
                let exact = prefactor * to_f64(&rational_poly(q, &logs).eval(&xr));
                let numeric = theta_eval(&f, n, x0).map_err(err)?;
                let rel = (numeric - exact).abs() / exact.abs().max(f64::MIN_POSITIVE);
                worst = worst.max(rel);
                ensure(rel <= 1e-10, || format!("family {i}, n = {n}, x = {x0}: {numeric} vs {exact}"))?;
            }
        }
    }
    for i in 0..5 {
        let f = random::family(&mut rng, 4, false);
        let kernels = PolyFamily::from_spec(&f).map_err(err)?.kernels(6);
        let x0 = frac(rng.gen_range(-7..=7), rng.gen_range(1..=4));
        let at = SymCoeff::constant(x0.clone());
        for (n, q) in kernels.iter().enumerate() {
            let jet = theta_jet(&f, n, &x0, 8).map_err(err)?.exact().ok_or("jet not exact")?;
            let shifted = q.taylor_shift(8);
            for j in 0..=8 {
                ensure(jet.coeff(j) == shifted.coeff(j).eval(&at), || {
                    format!("family {i}, n = {n}: jet coefficient {j} differs at x0 = {x0}")
                })?;
            }
        }
    }
    Ok(format!("100 points x 7 indices, worst relative error {worst:.1e}; exact jets match kernels"))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let families = families_deg5();
    let criteria: [Criterion; 8] = [
        ("generating function", Box::new(|| criterion_1(&families))),
        ("recurrence suite", Box::new(|| criterion_2(&families))),
        ("Hermite reduction", Box::new(criterion_3)),
        ("x^4 example", Box::new(criterion_4)),
        ("closed-form vs general ODE", Box::new(criterion_5)),
        ("Kampe de Feriet reduction", Box::new(criterion_6)),
        ("bilateral machinery", Box::new(criterion_7)),
        ("numeric/exact coherence", Box::new(criterion_8)),
    ];
    println!("acceptance suite, seed {SEED}");
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {why}", i + 1);
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
