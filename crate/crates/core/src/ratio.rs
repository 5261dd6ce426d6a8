//! Scalar type used everywhere: arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;

/// `n` as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as an exact rational. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// (-1)^k as a rational, for alternating sums.
pub fn neg_one_pow(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}
