//! Dense univariate polynomials over any [`Ring`].
//!
//! Nesting gives multivariate polynomials: `Poly<Poly<SymCoeff>>` is used for
//! polynomials in two variables by the bilateral machinery.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::rational::{self, Rational};
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::symcoeff::{Substitution, SymCoeff};

/// Coefficients lowest degree first; the highest stored coefficient is never
/// zero, so the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Default for Poly<C> {
    fn default() -> Self {
        Poly { coeffs: Vec::new() }
    }
}

impl<C: Ring> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^d`
    pub fn monomial(c: C, d: usize) -> Self {
        let mut coeffs = vec![C::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn from_rationals(cs: &[Rational]) -> Self {
        Self::new(cs.iter().map(C::from_rational).collect())
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| C::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&rational::int(i as i64)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Poly<C>) -> Poly<C> {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.mul_ref(inner).add_ref(&Poly::constant(c.clone())))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl FnMut(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// `p(x + t)` as a series in `t`: the coefficient of `tʲ` is `p⁽ʲ⁾(x)/j!`.
    pub fn taylor_shift(&self, order: usize) -> TruncatedSeries<Poly<C>> {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut d = self.clone();
        let mut fact = Rational::from_integer(1.into());
        for j in 0..=order {
            if j > 0 {
                d = d.derivative();
                fact *= rational::int(j as i64);
            }
            coeffs.push(d.scale(&fact.recip()));
        }
        TruncatedSeries::univariate(coeffs, order)
    }
}

impl<C: Ring> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for Poly<C> {
    fn one() -> Self {
        Poly::constant(C::one())
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add_ref(&other.coeff(i))).collect())
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub_ref(&other.coeff(i))).collect())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }
    fn neg_ref(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(Ring::neg_ref).collect() }
    }
    fn scale(&self, r: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.coeffs.len() != 1 {
            return None;
        }
        self.coeffs[0].try_inverse().map(Poly::constant)
    }
    fn from_rational(r: &Rational) -> Self {
        Poly::constant(C::from_rational(r))
    }
}

crate::impl_ring_ops!([C: Ring] Poly<C>);

impl Poly<SymCoeff> {
    pub fn substitute(&self, s: &Substitution) -> Self {
        self.map_coeffs(|c| c.substitute(s))
    }

    pub fn mentions_la(&self) -> bool {
        self.coeffs.iter().any(SymCoeff::mentions_la)
    }

    pub fn eval_f64(&self, x: f64, la: f64, lb: f64, n: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.eval_f64(la, lb, n))
    }

    /// Embeds a rational polynomial.
    pub fn from_rational_poly(p: &Poly<Rational>) -> Self {
        p.map_coeffs(|c| SymCoeff::constant(c.clone()))
    }

    /// The rational polynomial, if no symbol occurs.
    pub fn to_rational_poly(&self) -> Option<Poly<Rational>> {
        let cs: Option<Vec<_>> = self.coeffs.iter().map(SymCoeff::as_rational).collect();
        cs.map(Poly::new)
    }
}

impl<C: Ring> Poly<Poly<C>> {
    /// Swaps the inner and outer variable.
    pub fn transpose(&self) -> Poly<Poly<C>> {
        let inner_len = self.coeffs.iter().map(|p| p.coeffs.len()).max().unwrap_or(0);
        Poly::new(
            (0..inner_len)
                .map(|j| Poly::new(self.coeffs.iter().map(|p| p.coeff(j)).collect()))
                .collect(),
        )
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, "x")
    }
}

/// Writes `p` using `var` as the variable name.
pub fn write_poly<C: Ring + fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    p: &Poly<C>,
    var: &str,
) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let text = alloc::format!("{c}");
        let compound = text[1..].contains(" + ") || text[1..].contains(" - ");
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) if !compound => (true, rest),
            _ => (false, text.as_str()),
        };
        let leading = first;
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        match (i, compound) {
            (0, true) if !leading => write!(f, "({text})")?,
            (0, _) => f.write_str(body)?,
            (_, true) => write!(f, "({text})*")?,
            (_, false) if body == "1" => {}
            (_, false) => write!(f, "{body}*")?,
        }
        match i {
            0 => {}
            1 => f.write_str(var)?,
            _ => write!(f, "{var}^{i}")?,
        }
    }
    Ok(())
}
