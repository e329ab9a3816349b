use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational numbers.
pub type Q = BigRational;

/// Rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"`.
pub fn q_from_str(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A commutative ring that is also a `Q`-algebra.
///
/// Determinants and Pfaffians are methods so that fields can use
/// elimination while polynomial rings fall back to division-free algorithms.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplication by a rational constant.
    fn scale(&self, c: &Q) -> Self;

    /// Embeds a rational constant.
    fn from_q(c: &Q) -> Self;

    /// Determinant of a square matrix given row-major.
    fn det_of(n: usize, data: &[Self]) -> Self;

    /// Pfaffian of a skew-symmetric matrix given row-major. Odd size gives zero.
    fn pf_of(n: usize, data: &[Self]) -> Self;
}

impl Scalar for Q {
    fn scale(&self, c: &Q) -> Self {
        self * c
    }

    fn from_q(c: &Q) -> Self {
        c.clone()
    }

    fn det_of(n: usize, data: &[Self]) -> Self {
        crate::matrix::det_field(n, data.to_vec())
    }

    fn pf_of(n: usize, data: &[Self]) -> Self {
        crate::matrix::pf_field(n, data.to_vec())
    }
}
