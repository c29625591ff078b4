//! `T = {2134, 1423, 2341}` counted by the first two letters.

use num_bigint::BigInt;

use super::table::{Ctx, Line, Pending, TableSpec, Val};
use crate::error::Result;
use crate::series::{rational_expand, Polynomial};

/// `ℓ_i = 2^i - i`, avoiders of `{213, 1423, 2341}`.
pub fn ell(i: usize) -> BigInt {
    (BigInt::from(1) << i) - BigInt::from(i)
}

/// `g(x)`, whose coefficient of `x^m` is the number of avoiders of length
/// `m + 1` starting with 1.
pub fn g(order: usize) -> Result<Vec<BigInt>> {
    let num = Polynomial::from_i64s(&[1, -3, 4, -1, 1]);
    let den = Polynomial::from_i64s(&[1, -4, 6, -4, 1]);
    Ok(rational_expand(&num, &den, order)?.to_integers()?)
}

fn first_is_one(n: usize) -> Val {
    let mut s = g(n).map_err(|e| Pending::Bad(e.to_string()))?;
    Ok(s.swap_remove(n - 1))
}

fn lines(n: usize) -> Vec<Line> {
    let p = n - 1;
    let mut out = Vec::new();
    for i in 2..=n - 2 {
        for j in i + 1..=n - 2 {
            out.push(Line::entry("ascent", i, j, move |c: &Ctx| c.a(p, i, j)));
        }
    }
    for i in 2..=n - 1 {
        for j in 1..i {
            if i == n - 1 && j != n - 2 {
                continue;
            }
            let line = Line::entry("descent", i, j, move |c: &Ctx| {
                Ok(c.a(p, i, j)? + c.a_sum_j(p, j, 1, j - 1)?)
            });
            out.push(if i == n - 1 { line.check() } else { line });
        }
    }
    for i in 1..=n - 1 {
        out.push(Line::entry("first-max", n, i, move |c: &Ctx| c.row(p, i)));
    }
    for i in 1..=n - 2 {
        out.push(Line::entry("b", i, n - 1, move |c: &Ctx| {
            Ok(c.a(p, i, n - 2)? + ell(i - 1))
        }));
    }
    for i in 1..=n - 1 {
        let line = Line::entry("b'", i, n, move |c: &Ctx| {
            Ok(c.a(p, i, n - 1)? + c.a_sum_j(p, i, 1, i - 1)?)
        });
        out.push(if i == n - 1 { line.check() } else { line });
    }
    out.push(Line::entry("second-max", n - 1, n, move |c: &Ctx| c.total(n - 2)));
    // the first letter n-1 behaves like n: what follows is any avoider
    for j in 1..=n - 2 {
        out.push(Line::entry("second-max", n - 1, j, move |c: &Ctx| c.row(p, j)));
    }
    out.push(Line::row("first-one", 1, move |_: &Ctx| first_is_one(n)));
    out
}

pub(crate) static SPEC: TableSpec = TableSpec {
    name: "table",
    patterns: "2134,1423,2341",
    lines,
};
