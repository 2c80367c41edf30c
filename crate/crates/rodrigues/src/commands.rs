//! Subcommand bodies. Each returns the text to print and the exit code; input
//! problems surface as errors and map to exit code 2.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rodrigues_core::analytic::{jet_at, AnalyticFunction};
use rodrigues_core::kernel::{theta_eval, theta_jet, PolyFamily};
use rodrigues_core::ode::{self, OdeSpec};
use rodrigues_core::recurrence::{self, RecurrenceId};
use rodrigues_core::symcoeff::Substitution;
use rodrigues_core::{bilateral, genfun, rational, FamilySpec, Failure, Jet, Rational, VerificationReport, Zero};
use serde_json::{json, Value};

use crate::cache::KernelCache;
use crate::json::{self, family_to_json, ode_to_json, poly_to_json, report_to_json};
use crate::random;

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Largest `n` accepted without `--allow-large`.
pub const N_MAX_GUARD: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Pretty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

pub fn load_family(path: &Path) -> Result<FamilySpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    json::parse_family(&text).with_context(|| format!("in {}", path.display()))
}

pub fn load_bilateral(path: &Path) -> Result<bilateral::BilateralSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    json::parse_bilateral(&text).with_context(|| format!("in {}", path.display()))
}

pub fn check_guard(n: usize, allow_large: bool) -> Result<()> {
    if n > N_MAX_GUARD && !allow_large {
        bail!("n = {n} exceeds {N_MAX_GUARD}; pass --allow-large to proceed");
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `q_0 … q_n` in exact mode.
pub fn compute_exact(family: &FamilySpec, n: usize, format: Format, cache: &KernelCache) -> Result<Outcome> {
    let ks = cache.kernels(family, n)?;
    let mut out = String::new();
    match format {
        Format::Json => {
            let rows: Vec<Value> =
                ks.iter().enumerate().map(|(k, q)| json!({"n": k, "poly": poly_to_json(q)})).collect();
            out = serde_json::to_string_pretty(&json!({ "kernels": rows }))?;
        }
        Format::Csv => {
            out.push_str("n,q\n");
            for (k, q) in ks.iter().enumerate() {
                writeln!(out, "{k},{}", csv_field(&q.to_string()))?;
            }
        }
        Format::Pretty => {
            for (k, q) in ks.iter().enumerate() {
                writeln!(out, "q_{k} = {q}")?;
            }
        }
    }
    Ok(Outcome { code: EXIT_VERIFIED, output: out })
}

/// `Θ_k(x0)` for non-polynomial data: ladder on numeric jets, times the
/// prefactor.
fn theta_value_by_jets(family: &FamilySpec, k: usize, x0: f64) -> Result<f64> {
    let (la, lb) = family.numeric_logs()?;
    let at = Rational::from_float(x0).context("point is not finite")?;
    let q = theta_jet(family, k, &at, 0)?.to_numeric(la, lb).coeff(0);
    let value = |f: &AnalyticFunction| -> Result<f64> { Ok(jet_at(f, &at, 0)?.to_numeric(la, lb).coeff(0)) };
    Ok((la * value(family.phi1())? - lb * value(family.phi2())?).exp() * q)
}

/// `Θ_0(x) … Θ_n(x)` at each point; needs numeric `α, β`.
pub fn compute_numeric(family: &FamilySpec, n: usize, points: &[f64], format: Format) -> Result<Outcome> {
    family.numeric_logs().context("numeric mode needs decimal alpha and beta")?;
    let mut rows = Vec::new();
    for &x in points {
        for k in 0..=n {
            let v = if family.is_polynomial() { theta_eval(family, k, x)? } else { theta_value_by_jets(family, k, x)? };
            rows.push((k, x, v));
        }
    }
    let out = match format {
        Format::Json => serde_json::to_string_pretty(
            &rows.iter().map(|(k, x, v)| json!({"n": k, "x": x, "theta": v})).collect::<Vec<_>>(),
        )?,
        Format::Csv => {
            let mut s = String::from("n,x,theta\n");
            for (k, x, v) in &rows {
                writeln!(s, "{k},{x:?},{v:e}")?;
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for (k, x, v) in &rows {
                writeln!(s, "Theta_{k}({x}) = {v:.15e}")?;
            }
            s
        }
    };
    Ok(Outcome { code: EXIT_VERIFIED, output: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Genfun,
    Recurrences,
    One(RecurrenceId),
    Ode,
    Bilinear,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "all" => Suite::All,
            "genfun" => Suite::Genfun,
            "recurrences" => Suite::Recurrences,
            "ode" => Suite::Ode,
            "bilinear" => Suite::Bilinear,
            other => match RecurrenceId::parse(other) {
                Some(id) => Suite::One(id),
                None => bail!(
                    "unknown suite {other:?}; expected all, genfun, recurrences, ode, bilinear, aa9, aa10, cor21, thm23, aa11 or cor22"
                ),
            },
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub n_max: usize,
    pub order_t: usize,
    pub m: Option<usize>,
}

fn printed_example(family: &FamilySpec) -> Option<(&'static str, OdeSpec)> {
    let same = |g: &FamilySpec| g.phi1() == family.phi1() && g.phi2() == family.phi2() && g.psi() == family.psi();
    if same(&FamilySpec::hermite()) {
        Some(("hermite", ode::hermite_equation()))
    } else if same(&FamilySpec::quartic()) {
        Some(("quartic", ode::quartic_example_equation()))
    } else {
        None
    }
}

fn ode_reports(family: &FamilySpec, m: usize, n_max: usize) -> Result<Vec<VerificationReport>> {
    let synth = ode::synthesize_ode(family, m)?;
    let mut reports = vec![ode::check_ode(&synth, family, n_max)?];
    if (2..=4).contains(&m) {
        let closed = ode::closed_form_ode(family, m)?;
        let mismatch = (0..=m).find(|&j| closed.coeff(j) != synth.coeff(j));
        reports.push(match mismatch {
            None => VerificationReport::verified("ode-closed-form", m),
            Some(j) => VerificationReport::failed(
                "ode-closed-form",
                m,
                Failure { residual: format!("coefficient of y^({j}) differs"), ..Default::default() },
            ),
        });
    }
    if let Some((name, printed)) = printed_example(family) {
        let unit = synth.substitute(&Substitution::logs(rational::int(1), rational::int(1)));
        let identity = format!("ode-printed-{name}");
        let mut report = VerificationReport::verified(identity.clone(), m);
        for j in (0..=printed.order()).rev() {
            let ok = unit.order() == printed.order() && unit.coeff(j) == printed.coeff(j);
            let line = format!("y^({j}) coefficient {}: {}", if ok { "matches" } else { "differs" }, printed.coeff(j));
            report = if ok || !report.is_verified() {
                report.with_note(line)
            } else {
                VerificationReport::failed(identity.clone(), m, Failure { residual: line.clone(), ..Default::default() })
                    .with_note(line)
            };
        }
        reports.push(report);
    }
    Ok(reports)
}

/// Exact check of `Θ'_n = Θ_{n+1} + ln α φ1' Θ_n` on jets at 0, for data that
/// is not polynomial.
fn thm23_jet_report(family: &FamilySpec, n_max: usize, order: usize) -> Result<VerificationReport> {
    let x0 = rational::int(0);
    for n in 0..=n_max {
        let jet = recurrence::thm23_jet_residual(family, n, &x0, order)?;
        let bad = match &jet {
            Jet::Exact(s) => s.coeffs().iter().position(|c| !c.is_empty()).map(|j| (j, s.coeff(j).to_string())),
            Jet::Numeric(s) => s.coeffs().iter().position(|c| c.abs() > 1e-9).map(|j| (j, format!("{:e}", s.coeff(j)))),
        };
        if let Some((j, residual)) = bad {
            return Ok(VerificationReport::failed(
                "thm23-jet",
                n_max,
                Failure { n: Some(n), t_order: Some(j), residual, ..Default::default() },
            ));
        }
    }
    Ok(VerificationReport::verified("thm23-jet", n_max))
}

/// Every report the suite asks for on one family.
pub fn verify_family(family: &FamilySpec, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    if !family.is_polynomial() {
        return match opts.suite {
            Suite::All | Suite::One(RecurrenceId::Thm23) => Ok(vec![thm23_jet_report(family, opts.n_max, 8)?
                .with_note("non-polynomial data: only the jet form of thm23 is checked")]),
            _ => Err(rodrigues_core::Error::NotPolynomial("family data").into()),
        };
    }
    let pf = PolyFamily::from_spec(family)?;
    let unit = pf.psi_is_one();
    let mut reports = Vec::new();
    let recurrences = |ids: &[RecurrenceId], reports: &mut Vec<VerificationReport>| -> Result<()> {
        for &id in ids {
            reports.push(recurrence::check(id, family, opts.n_max)?);
        }
        Ok(())
    };
    match opts.suite {
        Suite::Genfun => reports.push(genfun::verify_genfun(family, opts.order_t)?),
        Suite::One(id) => recurrences(&[id], &mut reports)?,
        Suite::Recurrences => reports.extend(recurrence::sweep(family, opts.n_max)?),
        Suite::Ode => {
            let m = match opts.m {
                Some(m) => m,
                None => pf.phi2.degree().unwrap_or(0),
            };
            reports.extend(ode_reports(family, m, opts.n_max)?);
        }
        Suite::Bilinear => reports.push(bilateral::verify_bilinear(family, opts.order_t, opts.order_t)?),
        Suite::All => {
            reports.push(genfun::verify_genfun(family, opts.order_t)?);
            reports.extend(recurrence::sweep(family, opts.n_max)?);
            let m = pf.phi2.degree().unwrap_or(0);
            if unit && m >= 1 {
                reports.extend(ode_reports(family, m, opts.n_max)?);
            }
            if !unit {
                if let Some(r) = reports.last_mut() {
                    r.notes.push("cor22 and ode skipped: psi is not 1".to_string());
                }
            }
        }
    }
    Ok(reports)
}

pub fn render_reports(items: &[(Option<u64>, Option<usize>, VerificationReport)], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(
            &items
                .iter()
                .map(|(seed, family, r)| {
                    let mut v = report_to_json(r, *seed);
                    if let Some(i) = family {
                        v["family_index"] = json!(i);
                    }
                    v
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Csv => {
            let mut s = String::from("seed,family,identity,status,order,n,t_order,eta_order,x_degree,residual\n");
            let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
            for (seed, family, r) in items {
                let f = r.first_failure.clone().unwrap_or_default();
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{}",
                    seed.map(|v| v.to_string()).unwrap_or_default(),
                    opt(*family),
                    r.identity,
                    r.status.as_str(),
                    r.order,
                    opt(f.n),
                    opt(f.t_order),
                    opt(f.eta_order),
                    opt(f.x_degree),
                    csv_field(&f.residual)
                )?;
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            if let Some((Some(seed), _, _)) = items.first() {
                writeln!(s, "seed {seed}")?;
            }
            for (_, family, r) in items {
                let prefix = family.map(|i| format!("[family {i}] ")).unwrap_or_default();
                write!(s, "{prefix}{:<20} {:<9} order {}", r.identity, r.status.as_str(), r.order)?;
                if let Some(f) = &r.first_failure {
                    let mut at = Vec::new();
                    if let Some(n) = f.n {
                        at.push(format!("n = {n}"));
                    }
                    if let Some(j) = f.t_order {
                        at.push(format!("t^{j}"));
                    }
                    if let Some(k) = f.eta_order {
                        at.push(format!("eta^{k}"));
                    }
                    if let Some(d) = f.x_degree {
                        at.push(format!("x^{d}"));
                    }
                    write!(s, "  first failure at {}: {}", at.join(", "), f.residual)?;
                }
                writeln!(s)?;
                for note in &r.notes {
                    writeln!(s, "    {note}")?;
                }
            }
            s
        }
    })
}

fn exit_code(reports: &[(Option<u64>, Option<usize>, VerificationReport)]) -> i32 {
    if reports.iter().all(|(_, _, r)| r.is_verified()) {
        EXIT_VERIFIED
    } else {
        EXIT_VIOLATED
    }
}

pub fn verify(family: Option<&FamilySpec>, opts: &VerifyOptions, seed: u64, count: usize, format: Format) -> Result<Outcome> {
    let items = match family {
        Some(f) => verify_family(f, opts)?.into_iter().map(|r| (None, None, r)).collect::<Vec<_>>(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let families: Vec<FamilySpec> = (0..count)
                .map(|i| match opts.suite {
                    Suite::Ode => random::ode_family(&mut rng, opts.m.unwrap_or(2).max(1), 3),
                    Suite::One(RecurrenceId::Cor22) => random::family(&mut rng, 3, true),
                    _ => random::family(&mut rng, 3, i % 2 == 0),
                })
                .collect();
            let per_family: Vec<Vec<VerificationReport>> =
                families.par_iter().map(|f| verify_family(f, opts)).collect::<Result<_>>()?;
            per_family
                .into_iter()
                .enumerate()
                .flat_map(|(i, rs)| rs.into_iter().map(move |r| (Some(seed), Some(i), r)))
                .collect()
        }
    };
    Ok(Outcome { code: exit_code(&items), output: render_reports(&items, format)? })
}

/// Checks a user-supplied operator against the family's kernels.
pub fn verify_ode_file(family: &FamilySpec, path: &Path, n_max: usize, format: Format) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let j: json::OdeJson = serde_json::from_str(&text).with_context(|| format!("malformed ODE in {}", path.display()))?;
    let ode = json::ode_from_json(&j)?;
    let items = vec![(None, None, ode::check_ode(&ode, family, n_max)?)];
    Ok(Outcome { code: exit_code(&items), output: render_reports(&items, format)? })
}

pub fn ode_command(family: &FamilySpec, m: Option<usize>, format: Format) -> Result<Outcome> {
    let pf = PolyFamily::from_spec(family)?;
    let m = m.unwrap_or_else(|| pf.phi2.degree().unwrap_or(0));
    let synth = ode::synthesize_ode(family, m)?;
    let output = match format {
        Format::Json => serde_json::to_string_pretty(&ode_to_json(&synth))?,
        Format::Csv => {
            let mut s = String::from("j,coefficient\n");
            for (j, c) in synth.coeffs().iter().enumerate() {
                writeln!(s, "{j},{}", csv_field(&c.to_string()))?;
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for j in (0..=m).rev() {
                writeln!(s, "y^({j}): {}", synth.coeff(j))?;
            }
            if pf.dphi1().is_zero() {
                writeln!(s, "note: phi1 is constant")?;
            }
            s
        }
    };
    Ok(Outcome { code: EXIT_VERIFIED, output })
}

pub fn genfun_command(family: &FamilySpec, order_t: usize, format: Format) -> Result<Outcome> {
    let r = genfun::verify_genfun(family, order_t)?;
    let items = vec![(None, None, r)];
    Ok(Outcome { code: exit_code(&items), output: render_reports(&items, format)? })
}

pub fn bilateral_command(
    spec: Option<&bilateral::BilateralSpec>,
    family: Option<&FamilySpec>,
    order_t: usize,
    order_eta: usize,
    seed: u64,
    count: usize,
    format: Format,
) -> Result<Outcome> {
    let items: Vec<_> = match (spec, family) {
        (Some(s), Some(f)) => vec![(None, None, bilateral::verify_bilateral(s, f, order_t, order_eta)?)],
        (None, Some(f)) => vec![(None, None, bilateral::verify_bilinear(f, order_t, order_eta)?)],
        (Some(s), None) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let families: Vec<_> = (0..count).map(|_| random::family(&mut rng, 3, false)).collect();
            families
                .par_iter()
                .map(|f| bilateral::verify_bilateral(s, f, order_t, order_eta))
                .collect::<rodrigues_core::Result<Vec<_>>>()?
                .into_iter()
                .enumerate()
                .map(|(i, r)| (Some(seed), Some(i), r))
                .collect()
        }
        (None, None) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let jobs: Vec<_> = (0..count)
                .map(|_| {
                    let omega = random::omega(&mut rng, 3);
                    (random::bilateral_spec(&mut rng, omega, order_eta), random::family(&mut rng, 3, false))
                })
                .collect();
            jobs.par_iter()
                .map(|(s, f)| bilateral::verify_bilateral(s, f, order_t, order_eta))
                .collect::<rodrigues_core::Result<Vec<_>>>()?
                .into_iter()
                .enumerate()
                .map(|(i, r)| (Some(seed), Some(i), r))
                .collect()
        }
    };
    Ok(Outcome { code: exit_code(&items), output: render_reports(&items, format)? })
}

/// Family spec as canonical JSON, for echoing generated families.
pub fn family_json(family: &FamilySpec) -> String {
    family_to_json(family).to_string()
}
