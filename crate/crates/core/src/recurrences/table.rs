//! Tables of `a(n;i,j)`, the number of avoiders of length `n` whose first two
//! letters are `i` and `j`, filled level by level from a list of lines.
//!
//! Every off-diagonal entry must be the target of exactly one defining line,
//! unless its row has a total line, in which case entries left uncovered are
//! resolved as a group from that total. Check lines restate entries that a
//! defining line already owns and must agree with it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::enumerate::{fold_avoiders, CountTable};
use crate::error::{Error, Result};
use crate::perm::PatternSet;

/// Why a line could not produce a value yet.
#[derive(Debug)]
pub(crate) enum Pending {
    NotReady,
    Bad(String),
}

pub(crate) type Val = std::result::Result<BigInt, Pending>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Target {
    Entry(usize, usize),
    Row(usize),
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Entry(i, j) => write!(f, "({i},{j})"),
            Target::Row(i) => write!(f, "({i})"),
        }
    }
}

type LineFn = Box<dyn Fn(&Ctx) -> Val>;

pub(crate) struct Line {
    rule: &'static str,
    target: Target,
    check: bool,
    f: LineFn,
}

impl Line {
    pub fn entry(rule: &'static str, i: usize, j: usize, f: impl Fn(&Ctx) -> Val + 'static) -> Self {
        Line {
            rule,
            target: Target::Entry(i, j),
            check: false,
            f: Box::new(f),
        }
    }

    pub fn row(rule: &'static str, i: usize, f: impl Fn(&Ctx) -> Val + 'static) -> Self {
        Line {
            rule,
            target: Target::Row(i),
            check: false,
            f: Box::new(f),
        }
    }

    /// Demotes the line to a cross-check.
    pub fn check(mut self) -> Self {
        self.check = true;
        self
    }
}

/// One level of the table. Entries are `None` only when they belong to an
/// aggregate that was resolved through its row total.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    n: usize,
    entries: Vec<Option<BigInt>>,
    rows: Vec<Option<BigInt>>,
}

impl Level {
    fn empty(n: usize) -> Self {
        Level {
            n,
            entries: vec![None; n * n],
            rows: vec![None; n],
        }
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    fn entry(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.entries[self.idx(i, j)].as_ref()
    }

    fn set_entry(&mut self, i: usize, j: usize, v: BigInt) {
        let k = self.idx(i, j);
        self.entries[k] = Some(v);
    }

    pub fn total(&self) -> BigInt {
        if self.n == 0 {
            return BigInt::from(1);
        }
        self.rows.iter().map(|r| r.clone().unwrap_or_default()).sum()
    }
}

/// Read access for lines: finished levels below `n` and the level being filled.
pub(crate) struct Ctx<'a> {
    pub n: usize,
    levels: &'a [Level],
    cur: &'a Level,
}

impl Ctx<'_> {
    fn level(&self, m: usize) -> std::result::Result<&Level, Pending> {
        if m == self.n {
            Ok(self.cur)
        } else if m < self.n {
            Ok(&self.levels[m])
        } else {
            Err(Pending::Bad(format!("level {m} above {}", self.n)))
        }
    }

    /// `a(m;i,j)`, zero on the diagonal.
    pub fn a(&self, m: usize, i: usize, j: usize) -> Val {
        if i == 0 || j == 0 || i > m || j > m {
            return Err(Pending::Bad(format!("a({m};{i},{j}) out of range")));
        }
        if i == j {
            return Ok(BigInt::zero());
        }
        let lvl = self.level(m)?;
        match lvl.entry(i, j) {
            Some(v) => Ok(v.clone()),
            None if m < self.n => Err(Pending::Bad(format!("a({m};{i},{j}) was only known in aggregate"))),
            None => Err(Pending::NotReady),
        }
    }

    /// `a(m;i)`.
    pub fn row(&self, m: usize, i: usize) -> Val {
        if i == 0 || i > m {
            return Err(Pending::Bad(format!("a({m};{i}) out of range")));
        }
        self.level(m)?.rows[i - 1].clone().ok_or(Pending::NotReady)
    }

    /// `a(m)` for a finished level.
    pub fn total(&self, m: usize) -> Val {
        if m >= self.n {
            return Err(Pending::Bad(format!("a({m}) is not below the current level")));
        }
        Ok(self.levels[m].total())
    }

    /// Sum of `a(m;i,k)` over `k` in `lo..=hi`.
    pub fn a_sum_j(&self, m: usize, i: usize, lo: usize, hi: usize) -> Val {
        sum((lo..=hi).map(|k| self.a(m, i, k)))
    }
}

pub(crate) fn sum(vals: impl IntoIterator<Item = Val>) -> Val {
    let mut s = BigInt::zero();
    for v in vals {
        s += v?;
    }
    Ok(s)
}

pub(crate) fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::from(1), |acc, t| acc * (n - t) / (t + 1))
}

pub(crate) fn catalan_number(m: usize) -> BigInt {
    binom(2 * m, m) / (m + 1)
}

/// A table engine: patterns plus the lines defining level `n >= SEED + 1`.
pub(crate) struct TableSpec {
    pub name: &'static str,
    pub patterns: &'static str,
    pub lines: fn(usize) -> Vec<Line>,
}

/// Levels up to this one are taken from enumeration.
const SEED: usize = 4;

fn engine_err(name: &'static str, n: usize, message: String) -> Error {
    Error::Engine {
        engine: name,
        n,
        message,
    }
}

/// `a(n;i,j)` and `a(n;i)` for `n = 0..=n_max` by enumeration.
pub(crate) fn brute_levels(t: &PatternSet, n_max: usize) -> Vec<Level> {
    let flat = fold_avoiders(
        t,
        n_max,
        || (0..=n_max).map(|n| vec![0u64; n * n + n]).collect::<Vec<_>>(),
        |acc, p| {
            let n = p.len();
            if n == 0 {
                return;
            }
            let i = p[0] as usize;
            acc[n][n * n + i - 1] += 1;
            if n >= 2 {
                acc[n][(i - 1) * n + p[1] as usize - 1] += 1;
            }
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                for (u, v) in x.iter_mut().zip(y) {
                    *u += v;
                }
            }
            a
        },
    );
    flat.into_iter()
        .enumerate()
        .map(|(n, v)| {
            let mut lvl = Level::empty(n);
            for i in 1..=n {
                lvl.rows[i - 1] = Some(BigInt::from(v[n * n + i - 1]));
                for j in 1..=n {
                    // with one letter there is no second letter to record
                    if i != j && n >= 2 {
                        lvl.set_entry(i, j, BigInt::from(v[(i - 1) * n + j - 1]));
                    }
                }
            }
            lvl
        })
        .collect()
}

fn pattern_set(spec: &TableSpec) -> PatternSet {
    spec.patterns.parse().expect("static pattern set")
}

/// Which lines own which targets at level `n`; rejects double and missing coverage.
fn coverage(spec: &TableSpec, n: usize, lines: &[Line]) -> Result<BTreeMap<Target, usize>> {
    let mut owner: BTreeMap<Target, usize> = BTreeMap::new();
    for (k, l) in lines.iter().enumerate() {
        let in_range = match l.target {
            Target::Entry(i, j) => i != j && (1..=n).contains(&i) && (1..=n).contains(&j),
            Target::Row(i) => (1..=n).contains(&i),
        };
        if !in_range {
            return Err(engine_err(
                spec.name,
                n,
                format!("rule {} targets {} outside the table", l.rule, l.target),
            ));
        }
        if l.check {
            continue;
        }
        if let Some(prev) = owner.insert(l.target, k) {
            return Err(engine_err(
                spec.name,
                n,
                format!("{} is defined by both {} and {}", l.target, lines[prev].rule, l.rule),
            ));
        }
    }
    for i in 1..=n {
        if owner.contains_key(&Target::Row(i)) {
            continue;
        }
        for j in (1..=n).filter(|&j| j != i) {
            if !owner.contains_key(&Target::Entry(i, j)) {
                return Err(engine_err(
                    spec.name,
                    n,
                    format!("({i},{j}) is not covered by any rule and row {i} has no total"),
                ));
            }
        }
    }
    Ok(owner)
}

fn store(spec: &TableSpec, cur: &mut Level, line: &Line, v: BigInt) -> Result<()> {
    let n = cur.n;
    if v.is_negative() {
        return Err(engine_err(
            spec.name,
            n,
            format!("rule {} gives {} = {v}", line.rule, line.target),
        ));
    }
    let slot = match line.target {
        Target::Entry(i, j) => {
            let k = cur.idx(i, j);
            &mut cur.entries[k]
        }
        Target::Row(i) => &mut cur.rows[i - 1],
    };
    match slot {
        Some(old) if *old != v => Err(engine_err(
            spec.name,
            n,
            format!("rule {} gives {} = {v}, already {old}", line.rule, line.target),
        )),
        Some(_) => Ok(()),
        None => {
            *slot = Some(v);
            Ok(())
        }
    }
}

/// Completes rows: totals from full rows, a single missing uncovered entry
/// from its total.
fn settle_rows(spec: &TableSpec, cur: &mut Level, owner: &BTreeMap<Target, usize>) -> Result<bool> {
    let n = cur.n;
    let mut progress = false;
    for i in 1..=n {
        let missing: Vec<usize> = (1..=n).filter(|&j| j != i && cur.entry(i, j).is_none()).collect();
        let known: BigInt = (1..=n).filter_map(|j| cur.entry(i, j).cloned()).sum();
        match (&cur.rows[i - 1], missing.as_slice()) {
            (None, []) if !owner.contains_key(&Target::Row(i)) => {
                cur.rows[i - 1] = Some(known);
                progress = true;
            }
            (Some(total), [j]) if !owner.contains_key(&Target::Entry(i, *j)) => {
                let v = total - &known;
                if v.is_negative() {
                    return Err(engine_err(
                        spec.name,
                        n,
                        format!("row {i} total {total} is below its entries"),
                    ));
                }
                cur.set_entry(i, *j, v);
                progress = true;
            }
            _ => {}
        }
    }
    Ok(progress)
}

fn fill_level(spec: &TableSpec, levels: &[Level]) -> Result<Level> {
    let n = levels.len();
    let lines = (spec.lines)(n);
    let owner = coverage(spec, n, &lines)?;
    let mut cur = Level::empty(n);
    let mut done = vec![false; lines.len()];
    loop {
        let mut progress = false;
        for (k, l) in lines.iter().enumerate() {
            if done[k] {
                continue;
            }
            let ctx = Ctx { n, levels, cur: &cur };
            match (l.f)(&ctx) {
                Ok(v) => {
                    store(spec, &mut cur, l, v)?;
                    done[k] = true;
                    progress = true;
                }
                Err(Pending::NotReady) => {}
                Err(Pending::Bad(msg)) => {
                    return Err(engine_err(
                        spec.name,
                        n,
                        format!("rule {} at {}: {msg}", l.rule, l.target),
                    ));
                }
            }
        }
        progress |= settle_rows(spec, &mut cur, &owner)?;
        if !progress {
            break;
        }
    }
    if let Some(k) = done.iter().position(|d| !d) {
        return Err(engine_err(
            spec.name,
            n,
            format!("rule {} at {} never became computable", lines[k].rule, lines[k].target),
        ));
    }
    for i in 1..=n {
        let Some(total) = &cur.rows[i - 1] else {
            return Err(engine_err(spec.name, n, format!("row {i} was left open")));
        };
        let known: BigInt = (1..=n).filter_map(|j| cur.entry(i, j).cloned()).sum();
        if known > *total {
            return Err(engine_err(
                spec.name,
                n,
                format!("row {i} total {total} is below its entries"),
            ));
        }
        let full = (1..=n).all(|j| j == i || cur.entry(i, j).is_some());
        if full && known != *total {
            return Err(engine_err(
                spec.name,
                n,
                format!("row {i} sums to {known}, total line says {total}"),
            ));
        }
    }
    Ok(cur)
}

fn to_table(spec: &TableSpec, levels: &[Level]) -> Result<CountTable> {
    levels
        .iter()
        .map(|l| {
            l.total()
                .to_biguint()
                .ok_or_else(|| engine_err(spec.name, l.n, "negative total".into()))
        })
        .collect::<Result<Vec<_>>>()
        .map(CountTable::new)
}

/// `a(n)` for `n = 0..=n_max` from the lines, seeded by enumeration.
pub(crate) fn run(spec: &TableSpec, n_max: usize) -> Result<CountTable> {
    let mut levels = brute_levels(&pattern_set(spec), n_max.min(SEED));
    while levels.len() <= n_max {
        let next = fill_level(spec, &levels)?;
        levels.push(next);
    }
    to_table(spec, &levels)
}

/// Every line evaluated on enumerated tables, reporting each disagreement by rule.
pub(crate) fn audit(spec: &TableSpec, n_max: usize) -> Result<()> {
    let levels = brute_levels(&pattern_set(spec), n_max);
    let mut bad = Vec::new();
    for n in SEED + 1..=n_max {
        let lines = (spec.lines)(n);
        coverage(spec, n, &lines)?;
        let ctx = Ctx {
            n,
            levels: &levels[..n],
            cur: &levels[n],
        };
        for l in &lines {
            let want = match l.target {
                Target::Entry(i, j) => levels[n].entry(i, j).cloned(),
                Target::Row(i) => levels[n].rows[i - 1].clone(),
            };
            match (l.f)(&ctx) {
                Ok(v) if Some(&v) == want.as_ref() => {}
                Ok(v) => bad.push(format!(
                    "n={n} {} at {}: got {v}, enumeration {}",
                    l.rule,
                    l.target,
                    want.unwrap_or_default()
                )),
                Err(Pending::NotReady) => bad.push(format!("n={n} {} at {}: not computable", l.rule, l.target)),
                Err(Pending::Bad(m)) => bad.push(format!("n={n} {} at {}: {m}", l.rule, l.target)),
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        let shown: Vec<_> = bad.iter().take(8).cloned().collect();
        Err(engine_err(
            spec.name,
            n_max,
            format!("{} line evaluations disagree: {}", bad.len(), shown.join("; ")),
        ))
    }
}
