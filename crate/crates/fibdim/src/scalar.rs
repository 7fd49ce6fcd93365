//! Scalar traits for exact elimination.
//!
//! The linear-algebra layer is generic over the scalar type: ranks and
//! determinants are computed by fraction-free (Bareiss-style) elimination,
//! which works over any integral domain once exact division is available.
//! The three instantiations used in this crate are arbitrary-precision
//! integers, rationals, and multivariate polynomials over ℚ.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use crate::Rat;

/// Commutative-ring scalar: the operations every elimination step needs.
///
/// Blanket-implemented; `Zero`/`One` come from num-traits and bring the
/// `Add`/`Mul` bounds with them.
pub trait RingScalar:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> RingScalar for T where
    T: Clone + PartialEq + Debug + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Integral domain with exact division, as required by fraction-free
/// elimination: every division performed by the algorithm is exact by the
/// Sylvester determinant identity, so `exact_div` is only ever called on
/// exact quotients.  Implementations may panic on inexact input — such a
/// call is a bug in the caller, never a data condition.
pub trait IntegralDomain: RingScalar {
    /// Exact quotient `self / rhs`; `rhs` is nonzero and divides `self`.
    fn exact_div(&self, rhs: &Self) -> Self;

    /// Pivot preference: elimination picks a nonzero entry of smallest
    /// weight.  Polynomials report their total degree so that generic-rank
    /// computations pivot on the lowest-degree entry.
    fn pivot_weight(&self) -> u64 {
        0
    }
}

impl IntegralDomain for BigInt {
    fn exact_div(&self, rhs: &Self) -> Self {
        let q = self / rhs;
        debug_assert!(&q * rhs == *self, "inexact integer division");
        q
    }

    fn pivot_weight(&self) -> u64 {
        self.bits()
    }
}

impl IntegralDomain for Rat {
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

/// Field scalar: division by any nonzero element, used by reduced row
/// echelon form, solving, and row-space canonicalization.
pub trait FieldScalar: IntegralDomain + Div<Output = Self> {}

impl FieldScalar for Rat {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_exact_div_is_exact() {
        let a = BigInt::from(-42);
        let b = BigInt::from(7);
        assert_eq!(a.exact_div(&b), BigInt::from(-6));
    }

    #[test]
    fn rational_exact_div_is_plain_division() {
        let a = Rat::new(BigInt::from(3), BigInt::from(4));
        let b = Rat::new(BigInt::from(2), BigInt::from(1));
        assert_eq!(a.exact_div(&b), Rat::new(BigInt::from(3), BigInt::from(8)));
    }

    #[test]
    fn pivot_weight_prefers_small_integers() {
        assert!(BigInt::from(2).pivot_weight() < BigInt::from(1_000_000).pivot_weight());
    }
}
