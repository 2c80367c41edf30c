//! The commutative-ring interface shared by every coefficient type.

use core::fmt::Debug;

use num_traits::{One, Zero};

use crate::rational::{self, Rational};

/// Commutative ring with a ℚ-algebra structure.
///
/// Operations take references so that big-integer backed values are never
/// moved just to be combined.
pub trait Ring: Clone + PartialEq + Debug + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplication by an element of ℚ.
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse, when `self` is a unit.
    fn try_inverse(&self) -> Option<Self>;

    fn from_rational(r: &Rational) -> Self {
        Self::one().scale(r)
    }

    fn from_int(v: i64) -> Self {
        Self::from_rational(&rational::int(v))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Ring for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// Double precision numbers, for the numeric pipeline.
impl Ring for f64 {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * rational::to_f64(r)
    }
    fn try_inverse(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}

/// Implements `+ - * neg` on values and references by delegating to [`Ring`].
#[macro_export]
#[doc(hidden)]
macro_rules! impl_ring_ops {
    ([$($gen:tt)*] $ty:ty) => {
        impl<$($gen)*> core::ops::Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty { $crate::ring::Ring::add_ref(self, rhs) }
        }
        impl<$($gen)*> core::ops::Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty { $crate::ring::Ring::add_ref(&self, &rhs) }
        }
        impl<$($gen)*> core::ops::Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty { $crate::ring::Ring::sub_ref(self, rhs) }
        }
        impl<$($gen)*> core::ops::Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty { $crate::ring::Ring::sub_ref(&self, &rhs) }
        }
        impl<$($gen)*> core::ops::Mul<&$ty> for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty { $crate::ring::Ring::mul_ref(self, rhs) }
        }
        impl<$($gen)*> core::ops::Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty { $crate::ring::Ring::mul_ref(&self, &rhs) }
        }
        impl<$($gen)*> core::ops::Add<&$ty> for $ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty { $crate::ring::Ring::add_ref(&self, rhs) }
        }
        impl<$($gen)*> core::ops::Sub<&$ty> for $ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty { $crate::ring::Ring::sub_ref(&self, rhs) }
        }
        impl<$($gen)*> core::ops::Mul<&$ty> for $ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty { $crate::ring::Ring::mul_ref(&self, rhs) }
        }
        impl<$($gen)*> core::ops::Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty { $crate::ring::Ring::neg_ref(self) }
        }
        impl<$($gen)*> core::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty { $crate::ring::Ring::neg_ref(&self) }
        }
    };
}
