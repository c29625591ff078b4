//! `T = {3124, 4123, 1243}` counted by the first two letters.

use num_bigint::BigInt;

use super::table::{catalan_number, sum, Ctx, Line, Pending, TableSpec, Val};
use crate::error::Result;
use crate::series::{rational_expand, Polynomial};

/// Coefficients of `H(x) = 1 + x(1-x)^2/(1-2x)^2`, avoiders of `{132, 3124, 4123}`.
pub fn h(order: usize) -> Result<Vec<BigInt>> {
    let num = Polynomial::from_i64s(&[1, -3, 2, 1]);
    let den = Polynomial::from_i64s(&[1, -4, 4]);
    Ok(rational_expand(&num, &den, order)?.to_integers()?)
}

fn first_one(n: usize) -> Val {
    let mut s = h(n).map_err(|e| Pending::Bad(e.to_string()))?;
    Ok(s.swap_remove(n - 1))
}

/// `b(m;k) = a(m;k,k+1)`, zero at `k = m`.
fn b(c: &Ctx, m: usize, k: usize) -> Val {
    if k == m {
        Ok(BigInt::from(0))
    } else {
        c.a(m, k, k + 1)
    }
}

fn lines(n: usize) -> Vec<Line> {
    let p = n - 1;
    let mut out = Vec::new();
    for i in 2..=n - 2 {
        out.push(Line::entry("last-two", i, n, move |c: &Ctx| c.a(n, i, n - 1)));
    }
    // row 1 runs the same equation the other way, from b'(n;1) = 2^{n-3}
    out.push(Line::entry("last-two", 1, n - 1, move |c: &Ctx| c.a(n, 1, n)));
    out.push(Line::entry("b'", 1, n, move |_: &Ctx| Ok(BigInt::from(1) << (n - 3))));
    for i in 2..=n - 1 {
        for j in i + 1..=n - 1 {
            let line = Line::entry("ascent", i, j, move |c: &Ctx| {
                Ok(c.a(p, i, j)? + c.a(p, i, j - 1)? + b(c, n, i - 1)?)
            });
            out.push(if j == i + 1 { line.check() } else { line });
        }
    }
    for i in 3..=n - 1 {
        for j in 1..i - 1 {
            out.push(Line::entry("descent", i, j, move |c: &Ctx| c.a_sum_j(p, i - 1, 1, j)));
        }
    }
    for i in 2..=n {
        out.push(Line::entry("step-down", i, i - 1, move |c: &Ctx| c.row(p, i - 1)));
    }
    for i in 1..=n - 1 {
        out.push(Line::entry("b", i, i + 1, move |c: &Ctx| {
            sum((1..=i).map(|k| b(c, p, k)))
        }));
    }
    out.push(Line::row("first-one", 1, move |_: &Ctx| first_one(n)));
    // starting with n or n-1 forces 123-avoidance and nothing more
    out.push(Line::row("second-max", n - 1, move |_: &Ctx| Ok(catalan_number(n - 1))).check());
    out.push(Line::row("first-max", n, move |_: &Ctx| Ok(catalan_number(n - 1))));
    out
}

pub(crate) static SPEC: TableSpec = TableSpec {
    name: "table",
    patterns: "3124,4123,1243",
    lines,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count_avoiders;

    #[test]
    fn h_counts_avoiders() {
        let t = "132,3124,4123".parse().unwrap();
        let want = count_avoiders(&t, 8);
        let got: Vec<_> = h(9).unwrap().iter().map(|c| c.to_biguint().unwrap()).collect();
        assert_eq!(got, want.counts());
    }
}
