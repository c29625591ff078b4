//! `F = 1 + xF/(1 - xF²)` solved by iteration, and the explicit binomial sum
//! for its coefficients.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::SeriesError;
use crate::series::RationalSeries;

/// Iterates `F ↦ 1 + xF/(1 - xF²)` from `F = 1` until the first `order`
/// coefficients stop changing. Each pass fixes at least one more coefficient.
pub fn fixed_point(order: usize) -> Result<RationalSeries, SeriesError> {
    let one = RationalSeries::one(order);
    let x = RationalSeries::monomial(1, order);
    let mut f = one.clone();
    for _ in 0..=order {
        let xf = x.mul(&f);
        let den = one.sub(&xf.mul(&f));
        let next = one.add(&xf.div(&den)?);
        if next == f {
            return Ok(f);
        }
        f = next;
    }
    Err(SeriesError::NoFixedPoint(order + 1))
}

/// `Σ_{i=1}^{n} (1/i)·C(n-1, i-1)·C(2n-i, i-1)`, which must be an integer.
pub fn sum(n: usize) -> Result<BigUint, SeriesError> {
    let mut total = BigRational::zero();
    for i in 1..=n {
        let term = binomial(BigUint::from(n - 1), BigUint::from(i - 1))
            * binomial(BigUint::from(2 * n - i), BigUint::from(i - 1));
        total += BigRational::new(BigInt::from(term), BigInt::from(i));
    }
    if !total.is_integer() {
        return Err(SeriesError::NonInteger {
            index: n,
            value: total.to_string(),
        });
    }
    Ok(total.to_integer().to_biguint().expect("sum of positive terms"))
}

/// The series whose coefficients are `1, sum(1), sum(2), …`.
pub fn sum_series(order: usize) -> Result<RationalSeries, SeriesError> {
    let mut coeffs = Vec::with_capacity(order);
    for n in 0..order {
        let c = if n == 0 { BigUint::one() } else { sum(n)? };
        coeffs.push(BigRational::from_integer(BigInt::from(c)));
    }
    Ok(RationalSeries::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms() {
        assert_eq!(fixed_point(6).unwrap().to_i64s().unwrap(), vec![1, 1, 2, 6, 21, 80]);
        assert_eq!(sum(1).unwrap(), BigUint::from(1u32));
        assert_eq!(sum(4).unwrap(), BigUint::from(21u32));
        assert_eq!(sum(5).unwrap(), BigUint::from(80u32));
    }

    #[test]
    fn residual_vanishes() {
        let n = 24;
        let f = fixed_point(n).unwrap();
        let one = RationalSeries::one(n);
        let xf = f.shift_up(1);
        let rhs = one.add(&xf.div(&one.sub(&xf.mul(&f))).unwrap());
        assert!(f.sub(&rhs).is_zero());
    }

    #[test]
    fn sum_agrees_with_fixed_point() {
        assert_eq!(sum_series(24).unwrap(), fixed_point(24).unwrap());
    }

    #[test]
    fn sum_is_integral_up_to_thirty() {
        for n in 1..=30 {
            sum(n).unwrap();
        }
    }
}
