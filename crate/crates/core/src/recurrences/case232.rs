//! `T = {1234, 1342, 2341}` counted by the first two letters.

use num_bigint::BigInt;

use super::table::{Ctx, Line, TableSpec};

/// `c(n;i)` for `n = 0..=n_max`: avoiders of 123 of length `n` starting
/// with `i`, as `rows[n][i - 1]`. Each row is the running sum of the last.
pub fn ballot(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(), vec![BigInt::from(1)]];
    for n in 2..=n_max {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n);
        let mut acc = BigInt::from(0);
        for i in 0..n {
            if i < prev.len() {
                acc += &prev[i];
            }
            row.push(acc.clone());
        }
        rows.push(row);
    }
    rows.truncate(n_max + 1);
    rows
}

fn lines(n: usize) -> Vec<Line> {
    let p = n - 1;
    let c = ballot(n);
    let mut out = Vec::new();
    for i in 2..=n {
        for j in 1..i {
            out.push(Line::entry("descent", i, j, move |cx: &Ctx| cx.row(p, j)));
        }
    }
    for i in 1..=n - 2 {
        for j in i + 1..=n - 1 {
            let v = c[j - 1][i - 1].clone();
            out.push(Line::entry("ascent", i, j, move |_: &Ctx| Ok(v.clone())));
        }
    }
    for i in 1..n {
        out.push(Line::entry("second-max", i, n, move |cx: &Ctx| cx.row(p, i)));
    }
    out.push(Line::row("first-max", n, move |cx: &Ctx| cx.total(p)).check());
    out.push(Line::row("first-second-max", n - 1, move |cx: &Ctx| cx.total(p)).check());
    out
}

pub(crate) static SPEC: TableSpec = TableSpec {
    name: "table",
    patterns: "1234,1342,2341",
    lines,
};
