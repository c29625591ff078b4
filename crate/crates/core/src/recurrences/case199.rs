//! `T = {1243, 1423, 2341}` counted by the first two letters.

use num_bigint::BigInt;

use super::table::{binom, sum, Ctx, Line, TableSpec, Val};

/// `w_{n,j} = w_{n-1,j} + w_{n-1,j-1} + 1` with `w_{0,j} = [j = 0]`; rows `0..=n_max`.
pub fn w_triangle(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::from(1)]];
    for n in 1..=n_max {
        let prev: &Vec<BigInt> = &rows[n - 1];
        let row = (0..=n)
            .map(|j| {
                let a = prev.get(j).cloned().unwrap_or_default();
                let b = if j > 0 { prev[j - 1].clone() } else { BigInt::from(0) };
                a + b + 1
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn w(n: usize, j: usize) -> BigInt {
    w_triangle(n).pop().unwrap().swap_remove(j)
}

/// `b'(m;k) = a(m;k,m)`, zero at `k = m`.
fn bp(c: &Ctx, m: usize, k: usize) -> Val {
    c.a(m, k, m)
}

fn lines(n: usize) -> Vec<Line> {
    let p = n - 1;
    let mut out = Vec::new();
    out.push(Line::row("first-one", 1, move |_: &Ctx| Ok(binom(n - 1, 2) + 1)).check());
    for i in 1..=n - 2 {
        for j in i + 1..=n - 2 {
            out.push(Line::entry("ascent", i, j, move |c: &Ctx| c.a(p, i, j)));
        }
    }
    for j in 1..=n - 2 {
        out.push(Line::entry("second-max", n - 1, j, move |c: &Ctx| c.row(p, j)));
    }
    for i in 2..=n {
        let line = Line::entry("step-down", i, i - 1, move |c: &Ctx| c.row(p, i - 1));
        out.push(if i >= n - 1 { line.check() } else { line });
    }
    for i in 1..=n - 1 {
        out.push(Line::entry("step-up", i, i + 1, move |c: &Ctx| c.total(i - 1)).check());
    }
    for i in 3..=n - 2 {
        for j in 1..=i - 2 {
            out.push(Line::entry("shift", i, j, move |c: &Ctx| {
                Ok(c.a(n, i + 1, j)? - w(i - 3, j - 1))
            }));
        }
    }
    out.push(Line::entry("second-max-last", n - 1, n, move |c: &Ctx| c.total(n - 2)));
    for j in 1..n {
        out.push(Line::entry("first-max", n, j, move |c: &Ctx| c.row(p, j)));
    }
    for i in 1..=n - 3 {
        out.push(Line::entry(
            "b'",
            i,
            n,
            move |c: &Ctx| sum((1..=i).map(|j| bp(c, p, j))),
        ));
    }
    out.push(Line::entry("b'-top", n - 2, n, move |c: &Ctx| c.total(n - 2)));
    out.push(Line::entry("b'-top", n - 1, n, move |c: &Ctx| c.total(n - 2)).check());
    for i in 1..=n - 2 {
        out.push(Line::entry("b", i, n - 1, move |c: &Ctx| {
            Ok(bp(c, p, i)? + binom(n - 3, i))
        }));
    }
    out
}

pub(crate) static SPEC: TableSpec = TableSpec {
    name: "table",
    patterns: "1243,1423,2341",
    lines,
};
