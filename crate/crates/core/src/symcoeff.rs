//! The coefficient ring ℚ[Lα, Lβ, n̂].
//!
//! `Lα` and `Lβ` stand for `ln α` and `ln β`; `n̂` is the family index kept
//! symbolic so that ODE coefficients can be compared as polynomials in n.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};
use crate::ring::Ring;

/// Exponents of `Lα^la · Lβ^lb · n̂^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub la: u32,
    pub lb: u32,
    pub n: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { la: 0, lb: 0, n: 0 };

    pub fn new(la: u32, lb: u32, n: u32) -> Self {
        Monomial { la, lb, n }
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            la: self.la + other.la,
            lb: self.lb + other.lb,
            n: self.n + other.n,
        }
    }
}

/// Sparse polynomial in `Lα, Lβ, n̂` with rational coefficients. Zero terms are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SymCoeff {
    terms: BTreeMap<Monomial, Rational>,
}

/// Values substituted for the symbols. `None` leaves the symbol in place.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Substitution {
    pub la: Option<Rational>,
    pub lb: Option<Rational>,
    pub n: Option<Rational>,
}

impl Substitution {
    pub fn logs(la: Rational, lb: Rational) -> Self {
        Substitution { la: Some(la), lb: Some(lb), n: None }
    }

    pub fn index(n: usize) -> Self {
        Substitution { n: Some(rational::int(n as i64)), ..Default::default() }
    }
}

impl SymCoeff {
    pub fn constant(r: Rational) -> Self {
        Self::term(Monomial::ONE, r)
    }

    pub fn term(m: Monomial, r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(m, r);
        }
        SymCoeff { terms }
    }

    /// `ln α`
    pub fn la() -> Self {
        Self::term(Monomial::new(1, 0, 0), Rational::one())
    }

    /// `ln β`
    pub fn lb() -> Self {
        Self::term(Monomial::new(0, 1, 0), Rational::one())
    }

    /// The symbolic index `n̂`.
    pub fn n_hat() -> Self {
        Self::term(Monomial::new(0, 0, 1), Rational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if no symbol occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn mentions_la(&self) -> bool {
        self.terms.keys().any(|m| m.la > 0)
    }

    pub fn mentions_lb(&self) -> bool {
        self.terms.keys().any(|m| m.lb > 0)
    }

    pub fn mentions_n(&self) -> bool {
        self.terms.keys().any(|m| m.n > 0)
    }

    fn insert_add(&mut self, m: Monomial, r: Rational) {
        if r.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += r;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn substitute(&self, s: &Substitution) -> SymCoeff {
        let mut out = SymCoeff::default();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = *m;
            for (value, exp) in [(&s.la, &mut rest.la), (&s.lb, &mut rest.lb), (&s.n, &mut rest.n)] {
                if let Some(v) = value {
                    coef *= num_traits::pow(v.clone(), *exp as usize);
                    *exp = 0;
                }
            }
            out.insert_add(rest, coef);
        }
        out
    }

    pub fn eval_f64(&self, la: f64, lb: f64, n: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                rational::to_f64(c)
                    * libm::pow(la, m.la as f64)
                    * libm::pow(lb, m.lb as f64)
                    * libm::pow(n, m.n as f64)
            })
            .sum()
    }

    /// Polynomial in n̂ from its rational coefficients, lowest power first.
    pub fn poly_in_n(coeffs: &[Rational]) -> SymCoeff {
        let mut out = SymCoeff::default();
        for (k, c) in coeffs.iter().enumerate() {
            out.insert_add(Monomial::new(0, 0, k as u32), c.clone());
        }
        out
    }

    /// `C(n̂ + shift, k)` expanded as a polynomial in n̂. Evaluates to the
    /// ordinary binomial coefficient at every integer `n ≥ −shift`.
    pub fn binomial_in_n(shift: i64, k: usize) -> SymCoeff {
        let mut acc = SymCoeff::one();
        for i in 0..k {
            let factor = SymCoeff::n_hat().add_ref(&SymCoeff::from_int(shift - i as i64));
            acc = acc.mul_ref(&factor);
        }
        acc.scale(&Rational::from_integer(rational::factorial(k)).recip())
    }
}

impl Zero for SymCoeff {
    fn zero() -> Self {
        SymCoeff::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymCoeff {
    fn one() -> Self {
        SymCoeff::constant(Rational::one())
    }
}

impl Ring for SymCoeff {
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, -c);
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = SymCoeff::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.times(*mb), ca * cb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        SymCoeff {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return SymCoeff::default();
        }
        SymCoeff {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }
    fn try_inverse(&self) -> Option<Self> {
        let r = self.as_rational()?;
        (!r.is_zero()).then(|| SymCoeff::constant(r.recip()))
    }
    fn from_rational(r: &Rational) -> Self {
        SymCoeff::constant(r.clone())
    }
}

crate::impl_ring_ops!([] SymCoeff);

impl From<Rational> for SymCoeff {
    fn from(r: Rational) -> Self {
        SymCoeff::constant(r)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("La", m.la), ("Lb", m.lb), ("n", m.n)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for SymCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first reads more naturally
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl SymCoeff {
    pub fn to_display_string(&self) -> String {
        alloc::format!("{self}")
    }
}
