//! Truncated formal power series in `t`, or in `(t, η)`.
//!
//! A series of order `N` knows the coefficients of `t⁰ … t^N`. Bivariate series
//! carry an order per variable and truncate to the box `j ≤ N, k ≤ K`; the box
//! is closed under multiplication, so every stored coefficient is exact.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vars {
    /// `t` only.
    T,
    /// `t` and `η`.
    TEta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    vars: Vars,
    order_t: usize,
    order_eta: usize,
    // row-major: coefficient of t^j η^k at j * (order_eta + 1) + k
    coeffs: Vec<C>,
}

impl<C: Ring> TruncatedSeries<C> {
    /// Univariate series; missing coefficients are zero, extra ones dropped.
    pub fn univariate(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { vars: Vars::T, order_t: order, order_eta: 0, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::univariate(Vec::new(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::univariate(alloc::vec![c], order)
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Self::univariate((0..=order).map(f).collect(), order)
    }

    pub fn bivariate_from_fn(
        order_t: usize,
        order_eta: usize,
        mut f: impl FnMut(usize, usize) -> C,
    ) -> Self {
        let mut coeffs = Vec::with_capacity((order_t + 1) * (order_eta + 1));
        for j in 0..=order_t {
            for k in 0..=order_eta {
                coeffs.push(f(j, k));
            }
        }
        TruncatedSeries { vars: Vars::TEta, order_t, order_eta, coeffs }
    }

    /// `a(t) · b(η)`, both univariate.
    pub fn outer(a: &Self, b: &Self) -> Result<Self> {
        if a.vars != Vars::T || b.vars != Vars::T {
            return Err(Error::NotUnivariate);
        }
        Ok(Self::bivariate_from_fn(a.order_t, b.order_t, |j, k| {
            a.coeffs[j].mul_ref(&b.coeffs[k])
        }))
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    /// Truncation order in `t`.
    pub fn order(&self) -> usize {
        self.order_t
    }

    /// Truncation order in `η`; zero for univariate series.
    pub fn order_eta(&self) -> usize {
        self.order_eta
    }

    fn index(&self, j: usize, k: usize) -> usize {
        j * (self.order_eta + 1) + k
    }

    /// Coefficient of `tʲ` (of `tʲ η⁰` for bivariate series); zero past the
    /// truncation order.
    pub fn coeff(&self, j: usize) -> C {
        self.coeff2(j, 0)
    }

    /// Coefficient of `tʲ ηᵏ`.
    pub fn coeff2(&self, j: usize, k: usize) -> C {
        if j > self.order_t || k > self.order_eta {
            return C::zero();
        }
        self.coeffs[self.index(j, k)].clone()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self> {
        self.check_vars(other)?;
        let ot = self.order_t.min(other.order_t);
        let oe = self.order_eta.min(other.order_eta);
        let mut out = Self::bivariate_from_fn(ot, oe, |j, k| {
            f(&self.coeffs[self.index(j, k)], &other.coeffs[other.index(j, k)])
        });
        out.vars = self.vars;
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, C::add_ref)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, C::sub_ref)
    }

    /// Cauchy product, truncated to the smaller orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let ot = self.order_t.min(other.order_t);
        let oe = self.order_eta.min(other.order_eta);
        let mut out = Self::bivariate_from_fn(ot, oe, |_, _| C::zero());
        out.vars = self.vars;
        for j1 in 0..=ot {
            for k1 in 0..=oe {
                let a = &self.coeffs[self.index(j1, k1)];
                if a.is_zero() {
                    continue;
                }
                for j2 in 0..=ot - j1 {
                    for k2 in 0..=oe - k1 {
                        let b = &other.coeffs[other.index(j2, k2)];
                        if b.is_zero() {
                            continue;
                        }
                        let idx = out.index(j1 + j2, k1 + k2);
                        out.coeffs[idx] = out.coeffs[idx].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg_ref)
    }

    /// Applies `f` to every coefficient.
    pub fn map<D: Ring>(&self, f: impl FnMut(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            vars: self.vars,
            order_t: self.order_t,
            order_eta: self.order_eta,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn require_univariate(&self) -> Result<()> {
        match self.vars {
            Vars::T => Ok(()),
            Vars::TEta => Err(Error::NotUnivariate),
        }
    }

    /// `exp(u)` through `E' = u'·E`, i.e. `k·E_k = Σ_{j=1..k} j·u_j·E_{k−j}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_univariate()?;
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order_t;
        let mut e: Vec<C> = Vec::with_capacity(n + 1);
        e.push(C::one());
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let term = self.coeffs[j].mul_ref(&e[k - j]).scale(&rational::int(j as i64));
                acc = acc.add_ref(&term);
            }
            e.push(acc.scale(&rational::frac(1, k as i64)));
        }
        Ok(Self::univariate(e, n))
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        self.require_univariate()?;
        let inv0 = self.coeffs[0].try_inverse().ok_or(Error::NotInvertible)?;
        let n = self.order_t;
        let mut v: Vec<C> = Vec::with_capacity(n + 1);
        v.push(inv0.clone());
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc.add_ref(&self.coeffs[j].mul_ref(&v[k - j]));
            }
            v.push(acc.mul_ref(&inv0).neg_ref());
        }
        Ok(Self::univariate(v, n))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(C::one(), self.order_t);
        acc.vars = self.vars;
        acc.order_eta = self.order_eta;
        acc.coeffs.resize((self.order_t + 1) * (self.order_eta + 1), C::zero());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `d/dt`; the order drops by one (a series of order 0 stays at order 0
    /// and becomes zero).
    pub fn derivative(&self) -> Result<Self> {
        self.require_univariate()?;
        let n = self.order_t.saturating_sub(1);
        Ok(Self::from_fn(n, |j| {
            self.coeffs
                .get(j + 1)
                .map(|c| c.scale(&rational::int(j as i64 + 1)))
                .unwrap_or_else(C::zero)
        }))
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.require_univariate()?;
        Ok(Self::univariate(self.coeffs[..=order.min(self.order_t)].to_vec(), order.min(self.order_t)))
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Result<Self> {
        self.require_univariate()?;
        Ok(Self::from_fn(self.order_t, |j| {
            if j < k {
                C::zero()
            } else {
                self.coeffs[j - k].clone()
            }
        }))
    }

    /// Sum of `c_j · aʲ` over the stored coefficients.
    pub fn eval_t(&self, a: &C) -> Result<C> {
        self.require_univariate()?;
        Ok(self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc.mul_ref(a).add_ref(c)))
    }

    /// Exchanges `t` and `η` of a bivariate series.
    pub fn swap_vars(&self) -> Result<Self> {
        if self.vars != Vars::TEta {
            return Err(Error::NotUnivariate);
        }
        Ok(Self::bivariate_from_fn(self.order_eta, self.order_t, |j, k| self.coeff2(k, j)))
    }

    /// First `(t, η)` position, in graded order, where the two series differ
    /// within their common truncation box.
    pub fn first_difference(&self, other: &Self) -> Result<Option<(usize, usize)>> {
        self.check_vars(other)?;
        let ot = self.order_t.min(other.order_t);
        let oe = self.order_eta.min(other.order_eta);
        for total in 0..=ot + oe {
            for j in (0..=total.min(ot)).rev() {
                let k = total - j;
                if k > oe {
                    continue;
                }
                if self.coeffs[self.index(j, k)] != other.coeffs[other.index(j, k)] {
                    return Ok(Some((j, k)));
                }
            }
        }
        Ok(None)
    }
}
