use std::fmt;

use num_rational::BigRational;

/// Exact scalar ring used by the noncommutative and commutative engines.
///
/// Every implementor is a commutative ring in which the elements reported by
/// [`Scalar::is_unit`] can be inverted. For the cyclotomic fields every nonzero
/// element is a unit; for the ħ-local ring only elements with nonzero
/// constant term are.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn is_unit(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Inverse in the ring, `None` when the element is not a unit.
    fn try_inv(&self) -> Option<Self>;

    fn add_assign(&mut self, rhs: &Self) {
        *self = Scalar::add(self, rhs);
    }
    fn sub_assign(&mut self, rhs: &Self) {
        *self = Scalar::sub(self, rhs);
    }
    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul(b);
        self.add_assign(&p);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact quotient `self / rhs` when it exists in the ring.
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().map(|i| self.mul(&i))
    }

    /// Order of a nonzero element at the ring's uniformizer. Fields report 0.
    fn order(&self) -> u32 {
        0
    }

    /// Divide by the k-th power of the uniformizer. Only called with
    /// k ≤ `order()`; fields are never asked for k > 0.
    fn div_uniformizer(&self, k: u32) -> Self {
        debug_assert_eq!(k, 0);
        self.clone()
    }
}
