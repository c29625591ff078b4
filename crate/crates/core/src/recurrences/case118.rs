//! Series-valued recurrence for avoiders of {1234, 1423, 3412} whose
//! right-left maxima form a final block of length `m`.

use crate::error::SeriesError;
use crate::series::expr::{int, p, x, xp};
use crate::series::RationalSeries;

/// `J_1 = x·F` where `F` counts {123, 3412}-avoiders.
fn j1(order: usize) -> Result<RationalSeries, SeriesError> {
    let f = int(1) + x() * p(&[1, -4, 7, -5, 2]) / (p(&[1, -1]).pow(4) * p(&[1, -2]));
    (x() * f).eval(order, None)
}

/// `Σ_{m=2}^{m_max} J_m`, where
/// `(1-x)J_m = (2x-x²)J_{m-1} - x²J_{m-2} + x^{m+2}/((1-x)^{m-1}(1-2x)) + x^{m+3}/((1-x)²(1-2x))`.
pub fn j_sum(order: usize, m_max: usize) -> Result<RationalSeries, SeriesError> {
    let mut prev2 = RationalSeries::one(order);
    let mut prev1 = j1(order)?;
    let mut total = RationalSeries::zero(order);
    let a = p(&[0, 2, -1]).eval(order, None)?;
    let b = xp(2).eval(order, None)?;
    let one_minus_x = p(&[1, -1]).eval(order, None)?;
    let tail2 = (xp(1) / (p(&[1, -1]).pow(2) * p(&[1, -2]))).eval(order, None)?;
    for m in 2..=m_max {
        let m32 = m as u32;
        let first = (xp(m32 + 2) / (p(&[1, -1]).pow(m32 - 1) * p(&[1, -2]))).eval(order, None)?;
        let second = tail2.shift_up(m + 2);
        let rhs = a.mul(&prev1).sub(&b.mul(&prev2)).add(&first).add(&second);
        let jm = rhs.div(&one_minus_x)?;
        total = total.add(&jm);
        prev2 = prev1;
        prev1 = jm;
    }
    Ok(total)
}

/// The recurrence run long enough that every retained coefficient is final.
pub fn j_sum_stable(order: usize) -> Result<RationalSeries, SeriesError> {
    j_sum(order, order + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_sums_stabilize() {
        let order = 14;
        let full = j_sum_stable(order).unwrap();
        for m_max in 2..order {
            let partial = j_sum(order, m_max).unwrap();
            for n in 0..=m_max {
                assert_eq!(partial.coeff(n), full.coeff(n), "m_max {m_max}, n {n}");
            }
        }
        assert_eq!(full.to_i64s().unwrap()[2], 1);
    }
}
