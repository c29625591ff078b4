//! `T = {1432, 2431, 3214}` counted by the first two letters.

use num_bigint::BigInt;
use num_integer::Integer;

use super::table::{binom, Ctx, Line, Pending, TableSpec, Val};

/// `a(n;1,j) = (j-1)/(n-1) binom(2n-2-j, n-2)`, the Catalan triangle.
pub(crate) fn first_one(n: usize, j: usize) -> Val {
    let top = BigInt::from(j - 1) * binom(2 * n - 2 - j, n - 2);
    let (q, r) = top.div_rem(&BigInt::from(n - 1));
    if r != BigInt::from(0) {
        return Err(Pending::Bad(format!("({j}-1)/({n}-1) binom term is not integral")));
    }
    Ok(q)
}

/// `2^{i-2} + 1 - i`, the avoiders `i1...` with a 321 starting at `i`.
pub fn b(i: usize) -> BigInt {
    (BigInt::from(1) << (i - 2)) + 1 - BigInt::from(i)
}

fn lines(n: usize) -> Vec<Line> {
    let p = n - 1;
    let mut out = Vec::new();
    for j in 2..=n {
        out.push(Line::entry("first-one", 1, j, move |_: &Ctx| first_one(n, j)));
    }
    for i in 2..n {
        out.push(Line::entry("next", i, i + 1, move |c: &Ctx| c.row(p, i)));
        if i + 2 <= n {
            out.push(Line::entry("skip-one", i, i + 2, move |c: &Ctx| c.a(n, i - 1, i + 2)));
        }
        for j in i + 3..=n {
            out.push(Line::entry("far", i, j, move |c: &Ctx| c.a_sum_j(p, i, j - 1, n - 1)));
        }
    }
    for i in 2..n {
        out.push(Line::entry("second-one", i, 1, move |c: &Ctx| Ok(c.a(n, 1, i)? + b(i))));
    }
    for i in 3..=n - 2 {
        for j in 2..i {
            out.push(Line::entry("low", i, j, move |c: &Ctx| c.a(p, i, j)));
        }
    }
    for j in 2..=n - 3 {
        out.push(Line::entry("second-last", n - 1, j, move |c: &Ctx| {
            Ok(c.a(p, n - 2, j)? + (BigInt::from(1) << (n - 3 - j)))
        }));
    }
    out.push(Line::entry("second-last-top", n - 1, n - 2, move |c: &Ctx| {
        c.total(n - 3)
    }));
    for j in 1..n {
        out.push(Line::entry("first-max", n, j, move |c: &Ctx| c.row(p, j)));
    }
    out
}

pub(crate) static SPEC: TableSpec = TableSpec {
    name: "table",
    patterns: "1432,2431,3214",
    lines,
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_triangle_entry() {
        assert_eq!(first_one(5, 3).unwrap(), BigInt::from(5));
        assert_eq!(first_one(5, 5).unwrap(), BigInt::from(1));
    }

    #[test]
    fn correction_term() {
        let got: Vec<_> = (2..7).map(b).collect();
        let want: Vec<BigInt> = [0, 0, 1, 4, 11].into_iter().map(BigInt::from).collect();
        assert_eq!(got, want);
    }
}
