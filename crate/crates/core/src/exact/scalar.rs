use std::fmt;
use std::ops::{Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Commutative ring of coefficients with a conjugation involution.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + 'static
{
    fn conj(&self) -> Self;

    /// Rendering used inside form expressions such as `1/2*f14`; compound
    /// values are parenthesized.
    fn coefficient_text(&self) -> String;

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

/// A [`Scalar`] in which every nonzero element is invertible.
pub trait Field: Scalar + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Implements the four reference/owned combinations of a binary operator by
/// delegating to the owned-owned implementation.
macro_rules! forward_ref_binop {
    ($ty:ty, $trait:ident, $method:ident) => {
        impl<'a> std::ops::$trait<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                std::ops::$trait::$method(self, rhs.clone())
            }
        }
        impl<'a> std::ops::$trait<$ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                std::ops::$trait::$method(self.clone(), rhs)
            }
        }
        impl<'a, 'b> std::ops::$trait<&'b $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'b $ty) -> $ty {
                std::ops::$trait::$method(self.clone(), rhs.clone())
            }
        }
    };
}

pub(crate) use forward_ref_binop;
