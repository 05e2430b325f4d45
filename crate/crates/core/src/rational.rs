//! Exact rational thresholds.
//!
//! All threshold comparisons (`|X| <= η|V|`, `count >= γ|Y|`, ...) are made
//! on exact fractions so boundary cases are decided without rounding.

use num_traits::{One, Zero};

pub type Rational = num_rational::Ratio<i64>;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn int(v: usize) -> Rational {
    Rational::from_integer(v as i64)
}

/// `factor * count`
pub fn scaled(factor: Rational, count: usize) -> Rational {
    factor * int(count)
}

pub fn is_probability(r: &Rational) -> bool {
    *r >= Rational::zero() && *r <= Rational::one()
}

/// Smallest integer `>= r`.
pub fn ceil(r: Rational) -> i64 {
    r.ceil().to_integer()
}
