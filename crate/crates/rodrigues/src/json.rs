//! JSON forms of families, polynomials, ODEs, bilateral specs and reports.

use anyhow::{anyhow, bail, Context, Result};
use rodrigues_core::analytic::{AnalyticFunction, BuiltinKind, FamilySpec, Param};
use rodrigues_core::bilateral::{BilateralSpec, CoefficientRule, OmegaFamily};
use rodrigues_core::ode::OdeSpec;
use rodrigues_core::rational;
use rodrigues_core::{Failure, Monomial, Poly, Rational, SymCoeff, VerificationReport, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// A rational written either as an integer or as a `"p/q"` string.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Str(String),
}

impl RatJson {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RatJson::Int(v) => Ok(rational::int(*v)),
            RatJson::Str(s) => rational::parse(s).ok_or_else(|| anyhow!("not a rational: {s:?}")),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        RatJson::Str(rational::format(r))
    }
}

fn rationals(v: &[RatJson]) -> Result<Vec<Rational>> {
    v.iter().map(RatJson::to_rational).collect()
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TaylorJson {
    pub at: RatJson,
    pub coeffs: Vec<RatJson>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<RatJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<RatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taylor: Option<TaylorJson>,
}

impl FunctionJson {
    pub fn to_function(&self, key: &str) -> Result<AnalyticFunction> {
        match (&self.poly, &self.builtin, &self.taylor) {
            (Some(p), None, None) if self.scale.is_none() => {
                Ok(AnalyticFunction::Polynomial(Poly::new(rationals(p)?)))
            }
            (None, Some(name), None) => {
                let kind = match name.as_str() {
                    "exp" => BuiltinKind::Exp,
                    "sin" => BuiltinKind::Sin,
                    "cos" => BuiltinKind::Cos,
                    other => bail!("{key}: unknown builtin {other:?} (expected exp, sin or cos)"),
                };
                let scale = match &self.scale {
                    Some(s) => s.to_rational()?,
                    None => rational::int(1),
                };
                Ok(AnalyticFunction::Builtin { kind, scale })
            }
            (None, None, Some(t)) if self.scale.is_none() => Ok(AnalyticFunction::TaylorTable {
                at: t.at.to_rational()?,
                coeffs: rationals(&t.coeffs)?,
            }),
            _ => bail!("{key}: expected exactly one of \"poly\", \"builtin\" (with optional \"scale\") or \"taylor\""),
        }
    }

    pub fn from_function(f: &AnalyticFunction) -> Self {
        match f {
            AnalyticFunction::Polynomial(p) => FunctionJson {
                poly: Some(p.coeffs().iter().map(RatJson::from_rational).collect()),
                ..Default::default()
            },
            AnalyticFunction::Builtin { kind, scale } => FunctionJson {
                builtin: Some(kind.name().to_string()),
                scale: Some(RatJson::from_rational(scale)),
                ..Default::default()
            },
            AnalyticFunction::TaylorTable { at, coeffs } => FunctionJson {
                taylor: Some(TaylorJson {
                    at: RatJson::from_rational(at),
                    coeffs: coeffs.iter().map(RatJson::from_rational).collect(),
                }),
                ..Default::default()
            },
        }
    }
}

fn symbolic() -> String {
    "symbolic".to_string()
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub phi1: FunctionJson,
    pub phi2: FunctionJson,
    pub psi: FunctionJson,
    #[serde(default = "symbolic")]
    pub alpha: String,
    #[serde(default = "symbolic")]
    pub beta: String,
}

fn param(s: &str, key: &str) -> Result<Param> {
    if s == "symbolic" {
        return Ok(Param::Symbolic);
    }
    let v: f64 = s.trim().parse().with_context(|| format!("{key}: expected \"symbolic\" or a decimal, got {s:?}"))?;
    Ok(Param::Numeric(v))
}

fn param_string(p: Param) -> String {
    match p {
        Param::Symbolic => symbolic(),
        Param::Numeric(v) => format!("{v:?}"),
    }
}

impl FamilyJson {
    pub fn to_family(&self) -> Result<FamilySpec> {
        let family = FamilySpec::new(
            self.phi1.to_function("phi1")?,
            self.phi2.to_function("phi2")?,
            self.psi.to_function("psi")?,
            param(&self.alpha, "alpha")?,
            param(&self.beta, "beta")?,
        )?;
        Ok(family)
    }

    pub fn from_family(f: &FamilySpec) -> Self {
        FamilyJson {
            phi1: FunctionJson::from_function(f.phi1()),
            phi2: FunctionJson::from_function(f.phi2()),
            psi: FunctionJson::from_function(f.psi()),
            alpha: param_string(f.alpha()),
            beta: param_string(f.beta()),
        }
    }
}

pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let j: FamilyJson = serde_json::from_str(text).context("malformed family spec")?;
    j.to_family()
}

pub fn family_to_json(f: &FamilySpec) -> Value {
    serde_json::to_value(FamilyJson::from_family(f)).expect("serializable")
}

/// `{"La": e1, "Lb": e2, "n": e3, "coef": "p/q"}`
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(rename = "La")]
    pub la: u32,
    #[serde(rename = "Lb")]
    pub lb: u32,
    pub n: u32,
    pub coef: String,
}

pub fn symcoeff_to_json(c: &SymCoeff) -> Vec<TermJson> {
    c.terms()
        .map(|(m, r)| TermJson { la: m.la, lb: m.lb, n: m.n, coef: rational::format(r) })
        .collect()
}

pub fn symcoeff_from_json(terms: &[TermJson]) -> Result<SymCoeff> {
    let mut acc = SymCoeff::default();
    for t in terms {
        let r = rational::parse(&t.coef).ok_or_else(|| anyhow!("not a rational: {:?}", t.coef))?;
        acc = acc + SymCoeff::term(Monomial::new(t.la, t.lb, t.n), r);
    }
    Ok(acc)
}

/// One list of terms per power of `x`, lowest first.
pub type PolyJson = Vec<Vec<TermJson>>;

pub fn poly_to_json(p: &Poly<SymCoeff>) -> PolyJson {
    p.coeffs().iter().map(symcoeff_to_json).collect()
}

pub fn poly_from_json(p: &[Vec<TermJson>]) -> Result<Poly<SymCoeff>> {
    Ok(Poly::new(p.iter().map(|c| symcoeff_from_json(c)).collect::<Result<_>>()?))
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OdeCoeffJson {
    pub j: usize,
    pub poly: PolyJson,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OdeJson {
    pub order: usize,
    pub coeffs: Vec<OdeCoeffJson>,
}

pub fn ode_to_json(ode: &OdeSpec) -> OdeJson {
    OdeJson {
        order: ode.order(),
        coeffs: ode
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| OdeCoeffJson { j, poly: poly_to_json(c) })
            .collect(),
    }
}

pub fn ode_from_json(o: &OdeJson) -> Result<OdeSpec> {
    let mut coeffs = vec![Poly::zero(); o.order + 1];
    for c in &o.coeffs {
        if c.j > o.order {
            bail!("coefficient index {} exceeds order {}", c.j, o.order);
        }
        coeffs[c.j] = poly_from_json(&c.poly)?;
    }
    if coeffs[o.order] != Poly::constant(SymCoeff::constant(rational::int(1))) {
        bail!("leading coefficient must be 1");
    }
    Ok(OdeSpec::new(coeffs))
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ApostolBernoulliJson {
    pub order: u32,
    pub lambda: RatJson,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OmegaJson {
    ApostolBernoulli(ApostolBernoulliJson),
    Theta(Box<FamilyJson>),
    /// Each entry a polynomial in `y`, coefficients lowest first.
    Table(Vec<Vec<RatJson>>),
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum CoeffRuleJson {
    Named(String),
    List(Vec<RatJson>),
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BilateralJson {
    pub omega: OmegaJson,
    pub a: CoeffRuleJson,
    pub mu: usize,
    pub nu: usize,
    pub p: usize,
}

impl BilateralJson {
    pub fn to_spec(&self) -> Result<BilateralSpec> {
        let omega = match &self.omega {
            OmegaJson::ApostolBernoulli(ab) => {
                OmegaFamily::ApostolBernoulli { order: ab.order, lambda: ab.lambda.to_rational()? }
            }
            OmegaJson::Theta(f) => OmegaFamily::Theta(Box::new(f.to_family()?)),
            OmegaJson::Table(t) => OmegaFamily::Table(
                t.iter()
                    .map(|p| Ok(Poly::from_rational_poly(&Poly::new(rationals(p)?))))
                    .collect::<Result<_>>()?,
            ),
        };
        let a = match &self.a {
            CoeffRuleJson::Named(s) if s == "inverse_factorial" => CoefficientRule::InverseFactorial,
            CoeffRuleJson::Named(s) => bail!("unknown coefficient rule {s:?}"),
            CoeffRuleJson::List(v) => CoefficientRule::Explicit(rationals(v)?),
        };
        Ok(BilateralSpec::new(omega, a, self.mu, self.nu, self.p)?)
    }
}

pub fn parse_bilateral(text: &str) -> Result<BilateralSpec> {
    let j: BilateralJson = serde_json::from_str(text).context("malformed bilateral spec")?;
    j.to_spec()
}

fn failure_to_json(f: &Failure) -> Value {
    json!({
        "n": f.n,
        "t_order": f.t_order,
        "eta_order": f.eta_order,
        "x_degree": f.x_degree,
        "residual": f.residual,
    })
}

pub fn report_to_json(r: &VerificationReport, seed: Option<u64>) -> Value {
    let mut v = json!({
        "identity": r.identity,
        "status": r.status.as_str(),
        "order": r.order,
        "first_failure": r.first_failure.as_ref().map(failure_to_json),
    });
    if !r.notes.is_empty() {
        v["notes"] = json!(r.notes);
    }
    if let Some(s) = seed {
        v["seed"] = json!(s);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rodrigues_core::ode::synthesize_ode;

    #[test]
    fn family_round_trip() {
        let text = r#"{"phi1": {"poly": [0, "1/2", -3]}, "phi2": {"builtin": "sin", "scale": "2"},
                       "psi": {"taylor": {"at": "1/3", "coeffs": [1, 2]}}, "alpha": "2.5", "beta": "symbolic"}"#;
        let f = parse_family(text).unwrap();
        assert_eq!(f.alpha(), Param::Numeric(2.5));
        let again = parse_family(&family_to_json(&f).to_string()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"phi1": {"poly": [1]}, "phi2": {"poly": [1]}, "psi": {"poly": [1]}, "gamma": "1"}"#;
        assert!(parse_family(text).is_err());
        let text = r#"{"phi1": {"poly": [1], "builtin": "exp"}, "phi2": {"poly": [1]}, "psi": {"poly": [1]}}"#;
        assert!(parse_family(text).is_err());
        let text = r#"{"phi1": {"poly": [1]}, "phi2": {"poly": [1]}, "psi": {"poly": [0]}}"#;
        assert!(parse_family(text).is_err());
    }

    #[test]
    fn ode_round_trip() {
        let ode = synthesize_ode(&FamilySpec::quartic(), 4).unwrap();
        let text = serde_json::to_string(&ode_to_json(&ode)).unwrap();
        let back: OdeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ode_from_json(&back).unwrap(), ode);
    }

    #[test]
    fn bilateral_spec_parses() {
        let text = r#"{"omega": {"apostol_bernoulli": {"order": 1, "lambda": "1"}}, "a": "inverse_factorial", "mu": 0, "nu": 1, "p": 2}"#;
        let s = parse_bilateral(text).unwrap();
        assert_eq!(s.p(), 2);
        let text = r#"{"omega": {"table": [[1], [0, 1]]}, "a": ["1", "0"], "mu": 0, "nu": 1, "p": 1}"#;
        assert!(parse_bilateral(text).is_err());
    }
}
