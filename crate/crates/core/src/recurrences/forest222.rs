//! Label dynamics of the generating forest for `T = {3412, 3421, 1342}`.
//!
//! A label is a number `k` of active sites together with a family: plain,
//! bar or double bar.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::enumerate::{avoiders, fold_avoiders, CountTable};
use crate::error::{Error, Result};
use crate::perm::PatternSet;

pub const PATTERNS: &str = "3412,3421,1342";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Plain,
    Bar,
    DoubleBar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub family: Family,
    pub k: usize,
}

impl Label {
    pub fn new(family: Family, k: usize) -> Self {
        Label { family, k }
    }

    /// The labels of the children, one per active site.
    pub fn children(self) -> Vec<Label> {
        use Family::*;
        let k = self.k;
        let mut out = Vec::with_capacity(k);
        match self.family {
            Plain => {
                out.extend((3..=k + 1).map(|j| Label::new(Plain, j)));
            }
            Bar => {
                out.push(Label::new(Bar, 3));
                out.extend((3..=k).map(|j| Label::new(DoubleBar, j)));
            }
            DoubleBar => {
                out.extend((2..=k).map(|j| Label::new(DoubleBar, j)));
            }
        }
        out.push(Label::new(Bar, k + 1));
        out
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = match self.family {
            Family::Plain => "",
            Family::Bar => "'",
            Family::DoubleBar => "''",
        };
        write!(f, "{}{mark}", self.k)
    }
}

/// Label counts at one level of the forest.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelVector {
    pub n: usize,
    pub counts: BTreeMap<Label, BigUint>,
}

impl LabelVector {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Number of children the level produces, `Σ k · count`.
    pub fn offspring(&self) -> BigUint {
        self.counts.iter().map(|(l, c)| c * l.k).sum()
    }

    fn step(&self) -> LabelVector {
        let mut counts: BTreeMap<Label, BigUint> = BTreeMap::new();
        for (l, c) in &self.counts {
            for child in l.children() {
                *counts.entry(child).or_insert_with(BigUint::zero) += c;
            }
        }
        LabelVector { n: self.n + 1, counts }
    }
}

/// Levels `2..=n_max` of the forest, starting from the roots `3` and `3'`.
pub fn forest(n_max: usize) -> Result<Vec<LabelVector>> {
    let mut level = LabelVector {
        n: 2,
        counts: [(Label::new(Family::Plain, 3), 1u32), (Label::new(Family::Bar, 3), 1)]
            .into_iter()
            .map(|(l, c)| (l, BigUint::from(c)))
            .collect(),
    };
    let mut out = Vec::new();
    while level.n <= n_max {
        let next = level.step();
        if next.total() != level.offspring() {
            return Err(Error::Engine {
                engine: "forest",
                n: next.n,
                message: format!("{} children expected, level holds {}", level.offspring(), next.total()),
            });
        }
        out.push(level);
        level = next;
    }
    Ok(out)
}

pub fn counts(n_max: usize) -> Result<CountTable> {
    let mut c = vec![BigUint::from(1u32); n_max.min(1) + 1];
    c.extend(forest(n_max)?.iter().map(LabelVector::total));
    Ok(CountTable::new(c))
}

fn patterns() -> PatternSet {
    PATTERNS.parse().expect("static pattern set")
}

/// Sites `1..=n+1` where inserting `n+1` keeps `p` an avoider; site `s` puts
/// the new letter before position `s`.
pub fn active_sites(t: &PatternSet, p: &[u8]) -> Vec<usize> {
    let top = p.len() as u8 + 1;
    (1..=p.len() + 1)
        .filter(|&s| {
            let mut q = p.to_vec();
            q.insert(s - 1, top);
            crate::perm::Permutation::new(q)
                .expect("insertion keeps a permutation")
                .avoids(t)
        })
        .collect()
}

/// `p = n(n-1)...(j+1) p' j` for some `2 <= j <= n`.
pub fn is_special(p: &[u8]) -> bool {
    let n = p.len();
    let Some(&last) = p.last() else { return false };
    let j = last as usize;
    if j < 2 {
        return false;
    }
    let head = n - j;
    head < n && p[..head].iter().enumerate().all(|(t, &v)| v as usize == n - t)
}

/// The label the forest assigns to an avoider of length at least 2.
pub fn classify(t: &PatternSet, p: &[u8]) -> Label {
    let n = p.len();
    let sites = active_sites(t, p);
    let family = if !sites.contains(&n) {
        Family::DoubleBar
    } else if is_special(p) {
        Family::Bar
    } else {
        Family::Plain
    };
    Label::new(family, sites.len())
}

/// Label vectors obtained by classifying every avoider directly.
pub fn classified(n_max: usize) -> Vec<LabelVector> {
    let t = patterns();
    (2..=n_max)
        .map(|n| {
            let mut counts: BTreeMap<Label, BigUint> = BTreeMap::new();
            for p in avoiders(&t, n) {
                *counts.entry(classify(&t, p.values())).or_insert_with(BigUint::zero) += 1u32;
            }
            LabelVector { n, counts }
        })
        .collect()
}

/// Compares the forest with classified avoiders, level by level.
pub fn audit(n_max: usize) -> Result<()> {
    let limit = n_max.min(8);
    let grown = forest(limit)?;
    let seen = classified(limit);
    for (g, s) in grown.iter().zip(&seen) {
        if g != s {
            let diff: Vec<String> = g
                .counts
                .keys()
                .chain(s.counts.keys())
                .filter(|l| g.counts.get(l) != s.counts.get(l))
                .map(|l| {
                    let show = |v: &LabelVector| v.counts.get(l).map_or("0".into(), BigUint::to_string);
                    format!("{l}: forest {} avoiders {}", show(g), show(s))
                })
                .collect();
            return Err(Error::Engine {
                engine: "forest",
                n: g.n,
                message: diff.join(", "),
            });
        }
    }
    // offspring of the last classified level against the next level's size
    let sizes = fold_avoiders(
        &patterns(),
        limit + 1,
        || vec![0u64; limit + 2],
        |a, p| a[p.len()] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    if let Some(last) = seen.last() {
        if last.offspring() != BigUint::from(sizes[limit + 1]) {
            return Err(Error::Engine {
                engine: "forest",
                n: limit + 1,
                message: format!(
                    "classified offspring {} vs {} avoiders",
                    last.offspring(),
                    sizes[limit + 1]
                ),
            });
        }
    }
    Ok(())
}
