//! Permutations in one-line notation, classical pattern containment, the
//! eight symmetries of the permutation matrix, and the structural statistics
//! used to refine avoider counts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::PermError;

/// A permutation of `{1, …, n}` in one-line notation.
///
/// Lengths are capped at 255 so that entries fit in a byte; nothing in this
/// crate comes close to that bound.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation {
    values: Vec<u8>,
}

impl Permutation {
    pub const MAX_LEN: usize = 255;

    /// Builds a permutation after checking that `values` is a bijection of `1..=n`.
    pub fn new(values: Vec<u8>) -> Result<Self, PermError> {
        let n = values.len();
        if n > Self::MAX_LEN {
            return Err(PermError::TooLong(n));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotABijection(format!("{values:?}")));
            }
            seen[v] = true;
        }
        Ok(Self { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_vec_unchecked((1..=n as u8).collect())
    }

    /// Order-isomorphic relabelling of distinct values onto `1..=k`.
    pub fn standardize<T: Ord + Copy>(word: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..word.len()).collect();
        idx.sort_by_key(|&i| word[i]);
        let mut values = vec![0u8; word.len()];
        for (rank, &i) in idx.iter().enumerate() {
            values[i] = (rank + 1) as u8;
        }
        Self::from_vec_unchecked(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Entry at 1-based position `k`.
    pub fn at(&self, k: usize) -> Option<u8> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self { values }
    }

    pub fn complement(&self) -> Self {
        let n = self.len() as u8;
        Self {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut values = vec![0u8; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize - 1] = (i + 1) as u8;
        }
        Self { values }
    }

    /// Deletes the entry at 0-based index `i` and standardizes the rest.
    pub fn delete(&self, i: usize) -> Self {
        let removed = self.values[i];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Self { values }
    }

    /// Inserts the new maximum `n + 1` before 0-based index `site`.
    pub fn insert_max(&self, site: usize) -> Self {
        let mut values = self.values.clone();
        values.insert(site, self.len() as u8 + 1);
        Self { values }
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains_slice(&self.values, &pattern.values)
    }

    pub fn avoids(&self, set: &PatternSet) -> bool {
        set.patterns().iter().all(|q| !self.contains(q))
    }

    pub fn eval(&self, stat: Statistic) -> Result<i64, PermError> {
        stat.eval_slice(&self.values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts `"1342"` (single digits) or `"1,3,10,2,…"` (comma separated).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let values: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u8>()
                        .map_err(|_| PermError::BadToken(tok.to_string()))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| PermError::BadToken(s.to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values).map_err(|e| match e {
            PermError::NotABijection(_) => PermError::NotABijection(s.to_string()),
            other => other,
        })
    }
}

/// True iff `text` has a subsequence order-isomorphic to `pattern`.
pub fn contains_slice(text: &[u8], pattern: &[u8]) -> bool {
    let mut chosen = vec![0usize; pattern.len()];
    match_from(text, pattern, 0, 0, None, &mut chosen)
}

/// Containment restricted to occurrences in which pattern index `qpos` is
/// matched to text index `tpos`.
pub fn contains_through(text: &[u8], pattern: &[u8], tpos: usize, qpos: usize) -> bool {
    let mut chosen = vec![0usize; pattern.len()];
    match_from(text, pattern, 0, 0, Some((qpos, tpos)), &mut chosen)
}

fn match_from(
    text: &[u8],
    pattern: &[u8],
    a: usize,
    start: usize,
    pin: Option<(usize, usize)>,
    chosen: &mut [usize],
) -> bool {
    let k = pattern.len();
    if a == k {
        return true;
    }
    let remaining = k - a;
    if text.len() < start + remaining {
        return false;
    }
    let (lo, hi) = match pin {
        Some((qpos, tpos)) if a == qpos => {
            if tpos < start {
                return false;
            }
            (tpos, tpos)
        }
        Some((qpos, tpos)) if a < qpos => (start, tpos.saturating_sub(qpos - a)),
        _ => (start, text.len() - remaining),
    };
    let mut t = lo;
    while t <= hi && t < text.len() {
        let tv = text[t];
        let qa = pattern[a];
        let consistent = (0..a).all(|b| (text[chosen[b]] < tv) == (pattern[b] < qa));
        if consistent {
            chosen[a] = t;
            if match_from(text, pattern, a + 1, t + 1, pin, chosen) {
                return true;
            }
        }
        t += 1;
    }
    false
}

/// A nonempty set of forbidden patterns kept in lexicographic order of
/// their one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self, PermError> {
        let set: BTreeSet<Permutation> = patterns.into_iter().collect();
        if set.is_empty() {
            return Err(PermError::EmptyPatternSet);
        }
        if set.iter().any(|p| p.is_empty()) {
            return Err(PermError::EmptyPattern);
        }
        let mut patterns: Vec<Permutation> = set.into_iter().collect();
        patterns.sort_by(|a, b| a.values.cmp(&b.values));
        Ok(Self { patterns })
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn min_pattern_len(&self) -> usize {
        self.patterns.iter().map(Permutation::len).min().unwrap_or(0)
    }

    pub fn contains_pattern(&self, p: &Permutation) -> bool {
        self.patterns.contains(p)
    }

    /// Applies `f` to every pattern and re-canonicalizes.
    pub fn map(&self, f: impl Fn(&Permutation) -> Permutation) -> Self {
        Self::new(self.patterns.iter().map(f)).expect("symmetries preserve nonempty sets")
    }

    /// The orbit under simultaneous reverse, complement and inverse.
    pub fn symmetry_class(&self) -> BTreeSet<PatternSet> {
        Symmetry::ALL.iter().map(|s| self.map(|p| s.apply(p))).collect()
    }

    /// Lexicographically least member of the symmetry class.
    pub fn class_representative(&self) -> PatternSet {
        self.symmetry_class()
            .into_iter()
            .min_by(|a, b| a.to_string().cmp(&b.to_string()))
            .expect("orbit contains self")
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PatternSet {
    type Err = PermError;

    /// Comma-joined digit strings, e.g. `"1342,2143,3412"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let patterns = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok.is_empty() || !tok.chars().all(|c| c.is_ascii_digit()) {
                    return Err(PermError::BadToken(tok.to_string()));
                }
                tok.parse::<Permutation>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PatternSet::new(patterns)
    }
}

/// One of the eight symmetries of the square, written as
/// `inverse^a ∘ reverse^b ∘ complement^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub inverse: bool,
    pub reverse: bool,
    pub complement: bool,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = {
        let mut all = [Symmetry {
            inverse: false,
            reverse: false,
            complement: false,
        }; 8];
        let mut k = 0;
        while k < 8 {
            all[k] = Symmetry {
                inverse: k & 4 != 0,
                reverse: k & 2 != 0,
                complement: k & 1 != 0,
            };
            k += 1;
        }
        all
    };

    pub fn apply(&self, p: &Permutation) -> Permutation {
        let mut q = p.clone();
        if self.complement {
            q = q.complement();
        }
        if self.reverse {
            q = q.reverse();
        }
        if self.inverse {
            q = q.inverse();
        }
        q
    }
}

/// Structural statistics of a permutation. Positions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    LRMaxCount,
    RLMaxCount,
    ValueAtFromStart(usize),
    ValueAtFromEnd(usize),
    /// 1 iff the left-right maxima are exactly `n-m+1, …, n`.
    LRMaxValuesAreTopInterval,
    /// 1 iff `p_n = n`; undefined on the empty permutation.
    LastPositionHoldsMax,
    /// 1 iff `n >= 2` and `p_1 > p_2`.
    InitialDescent,
    /// 1 iff the right-left maxima occupy the final positions.
    RLMaxFormSuffix,
    /// With left-right maxima `i_1 < i_2 < … < i_m = n` (`m >= 2`): 1 iff some
    /// entry after `n` lies strictly between `i_1` and `i_2`.
    FinalSegmentHitsFirstGap,
}

impl Statistic {
    /// Smallest length at which the statistic is defined.
    pub fn min_len(&self) -> usize {
        match self {
            Statistic::ValueAtFromStart(k) | Statistic::ValueAtFromEnd(k) => (*k).max(1),
            Statistic::LastPositionHoldsMax => 1,
            _ => 0,
        }
    }

    pub fn eval_slice(&self, p: &[u8]) -> Result<i64, PermError> {
        let n = p.len();
        let out_of_range = |k: usize| PermError::PositionOutOfRange { position: k, len: n };
        Ok(match *self {
            Statistic::LRMaxCount => lr_maxima(p).len() as i64,
            Statistic::RLMaxCount => rl_maxima(p).len() as i64,
            Statistic::ValueAtFromStart(k) => {
                if k == 0 || k > n {
                    return Err(out_of_range(k));
                }
                p[k - 1] as i64
            }
            Statistic::ValueAtFromEnd(k) => {
                if k == 0 || k > n {
                    return Err(out_of_range(k));
                }
                p[n - k] as i64
            }
            Statistic::LRMaxValuesAreTopInterval => {
                let maxima = lr_maxima(p);
                let m = maxima.len();
                maxima
                    .iter()
                    .enumerate()
                    .all(|(idx, &pos)| p[pos] as usize == n - m + 1 + idx) as i64
            }
            Statistic::LastPositionHoldsMax => {
                if n == 0 {
                    return Err(out_of_range(1));
                }
                (p[n - 1] as usize == n) as i64
            }
            Statistic::InitialDescent => (n >= 2 && p[0] > p[1]) as i64,
            Statistic::RLMaxFormSuffix => {
                let maxima = rl_maxima(p);
                let m = maxima.len();
                maxima.iter().all(|&pos| pos >= n - m) as i64
            }
            Statistic::FinalSegmentHitsFirstGap => {
                let maxima = lr_maxima(p);
                if maxima.len() < 2 {
                    0
                } else {
                    let (lo, hi) = (p[maxima[0]], p[maxima[1]]);
                    let last = *maxima.last().unwrap();
                    p[last + 1..].iter().any(|&v| lo < v && v < hi) as i64
                }
            }
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::LRMaxCount => f.write_str("lrmax"),
            Statistic::RLMaxCount => f.write_str("rlmax"),
            Statistic::ValueAtFromStart(k) => write!(f, "start{k}"),
            Statistic::ValueAtFromEnd(k) => write!(f, "end{k}"),
            Statistic::LRMaxValuesAreTopInterval => f.write_str("lrmax-top"),
            Statistic::LastPositionHoldsMax => f.write_str("last-is-max"),
            Statistic::InitialDescent => f.write_str("initial-descent"),
            Statistic::RLMaxFormSuffix => f.write_str("rlmax-suffix"),
            Statistic::FinalSegmentHitsFirstGap => f.write_str("final-gap"),
        }
    }
}

impl FromStr for Statistic {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let position = |rest: &str| -> Result<usize, PermError> {
            rest.parse::<usize>()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| PermError::UnknownStatistic(s.to_string()))
        };
        Ok(match s {
            "lrmax" => Statistic::LRMaxCount,
            "rlmax" => Statistic::RLMaxCount,
            "lrmax-top" => Statistic::LRMaxValuesAreTopInterval,
            "last-is-max" => Statistic::LastPositionHoldsMax,
            "initial-descent" => Statistic::InitialDescent,
            "rlmax-suffix" => Statistic::RLMaxFormSuffix,
            "final-gap" => Statistic::FinalSegmentHitsFirstGap,
            _ if s.starts_with("start") => Statistic::ValueAtFromStart(position(&s[5..])?),
            _ if s.starts_with("end") => Statistic::ValueAtFromEnd(position(&s[3..])?),
            _ => return Err(PermError::UnknownStatistic(s.to_string())),
        })
    }
}

/// 0-based positions of the left-right maxima.
pub fn lr_maxima(p: &[u8]) -> Vec<usize> {
    let mut best = 0u8;
    let mut out = Vec::new();
    for (i, &v) in p.iter().enumerate() {
        if v > best {
            best = v;
            out.push(i);
        }
    }
    out
}

/// 0-based positions of the right-left maxima, in left-to-right order.
pub fn rl_maxima(p: &[u8]) -> Vec<usize> {
    let mut best = 0u8;
    let mut out = Vec::new();
    for (i, &v) in p.iter().enumerate().rev() {
        if v > best {
            best = v;
            out.push(i);
        }
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL_NAMED: [Statistic; 9] = [
        Statistic::LRMaxCount,
        Statistic::RLMaxCount,
        Statistic::ValueAtFromStart(2),
        Statistic::ValueAtFromEnd(1),
        Statistic::LRMaxValuesAreTopInterval,
        Statistic::LastPositionHoldsMax,
        Statistic::InitialDescent,
        Statistic::RLMaxFormSuffix,
        Statistic::FinalSegmentHitsFirstGap,
    ];

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    fn brute_contains(p: &Permutation, q: &Permutation) -> bool {
        let (n, k) = (p.len(), q.len());
        if k > n {
            return false;
        }
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|mask| {
            let sub: Vec<u8> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| p.values()[i]).collect();
            Permutation::standardize(&sub) == *q
        })
    }

    #[test]
    fn containment_examples() {
        assert!(!perm("2413").contains(&perm("2143")));
        assert!(perm("1342").contains(&perm("1342")));
        assert!(perm("564132").contains(&perm("132")));
        assert!(perm("2413").contains(&Permutation::empty()));
    }

    #[test]
    fn avoidance_examples() {
        let t = set("1342,2143,3412");
        assert!(!perm("3412").avoids(&t));
        assert!(perm("123").avoids(&t));
        assert!(perm("2413").avoids(&t));
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(perm("1342").reverse(), perm("2431"));
        assert_eq!(perm("1342").complement(), perm("4213"));
        assert_eq!(perm("2413").inverse(), perm("3142"));
        let orbit = set("12").symmetry_class();
        assert_eq!(orbit, [set("12"), set("21")].into_iter().collect());
    }

    #[test]
    fn orbit_of_case_106_triple() {
        let t = set("1342,2143,3412");
        let orbit = t.symmetry_class();
        assert!(orbit.contains(&t));
        assert_eq!(8 % orbit.len(), 0);
        // every member holds an image of 1342 under some symmetry
        let target = perm("1342");
        for member in &orbit {
            assert!(member
                .patterns()
                .iter()
                .any(|q| Symmetry::ALL.iter().any(|s| s.apply(q) == target)));
        }
    }

    #[test]
    fn statistic_examples() {
        assert_eq!(perm("13254").eval(Statistic::LRMaxCount).unwrap(), 3);
        assert_eq!(Permutation::identity(7).eval(Statistic::LRMaxCount).unwrap(), 7);
        assert_eq!(perm("13254").eval(Statistic::ValueAtFromEnd(1)).unwrap(), 4);
        assert_eq!(perm("13254").eval(Statistic::RLMaxCount).unwrap(), 2);
        assert_eq!(Permutation::empty().eval(Statistic::LRMaxCount).unwrap(), 0);
        assert!(matches!(
            perm("132").eval(Statistic::ValueAtFromStart(4)),
            Err(PermError::PositionOutOfRange { position: 4, len: 3 })
        ));
        assert!(Permutation::empty().eval(Statistic::LastPositionHoldsMax).is_err());
        assert_eq!(perm("3412").eval(Statistic::LRMaxValuesAreTopInterval).unwrap(), 1);
        assert_eq!(perm("2413").eval(Statistic::LRMaxValuesAreTopInterval).unwrap(), 0);
        assert_eq!(perm("1432").eval(Statistic::RLMaxFormSuffix).unwrap(), 1);
        assert_eq!(perm("4132").eval(Statistic::RLMaxFormSuffix).unwrap(), 0);
        // maxima 2, 5; after 5 the entry 3 sits between 2 and 5
        assert_eq!(perm("21534").eval(Statistic::FinalSegmentHitsFirstGap).unwrap(), 1);
        assert_eq!(perm("42513").eval(Statistic::FinalSegmentHitsFirstGap).unwrap(), 0);
    }

    #[test]
    fn parsing() {
        assert_eq!(perm("1,3,2").values(), &[1, 3, 2]);
        let long: Permutation = "1,2,3,4,5,6,7,8,10,9".parse().unwrap();
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,10,9");
        assert!("1341".parse::<Permutation>().is_err());
        assert!("13a2".parse::<Permutation>().is_err());
        assert_eq!(set("3412,1342,2143").to_string(), "1342,2143,3412");
        assert!(matches!("1342,21x3".parse::<PatternSet>(), Err(PermError::BadToken(t)) if t == "21x3"));
        for s in ALL_NAMED {
            assert_eq!(s.to_string().parse::<Statistic>().unwrap(), s);
        }
    }

    #[test]
    fn through_matches_agree_with_full_search() {
        // every occurrence in a permutation whose max was just inserted must use the max
        let q = perm("2413");
        for p in ["35142", "52413", "24153", "314265"] {
            let p = perm(p);
            let pos = p.values().iter().position(|&v| v as usize == p.len()).unwrap();
            let qpos = q.values().iter().position(|&v| v as usize == q.len()).unwrap();
            let without = p.delete(pos);
            let expect = brute_contains(&p, &q) && !brute_contains(&without, &q);
            let got = contains_through(p.values(), q.values(), pos, qpos) && !without.contains(&q);
            assert_eq!(expect, got, "{p}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
            (0..=max)
                .prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<_>>()).prop_shuffle())
                .prop_map(|v| Permutation::new(v).unwrap())
        }

        proptest! {
            #[test]
            fn matcher_agrees_with_subset_search(p in arb_perm(8), q in arb_perm(4)) {
                prop_assert_eq!(p.contains(&q), brute_contains(&p, &q));
            }

            #[test]
            fn containment_is_symmetry_invariant(p in arb_perm(8), q in arb_perm(4)) {
                let base = p.contains(&q);
                for s in Symmetry::ALL {
                    prop_assert_eq!(s.apply(&p).contains(&s.apply(&q)), base);
                }
            }

            #[test]
            fn symmetries_are_involutions(p in arb_perm(9)) {
                prop_assert_eq!(p.reverse().reverse(), p.clone());
                prop_assert_eq!(p.complement().complement(), p.clone());
                prop_assert_eq!(p.inverse().inverse(), p.clone());
            }

            #[test]
            fn deletion_closure(p in arb_perm(8), q in arb_perm(4)) {
                prop_assume!(!q.is_empty());
                let t = PatternSet::new([q]).unwrap();
                if p.avoids(&t) {
                    for i in 0..p.len() {
                        prop_assert!(p.delete(i).avoids(&t));
                    }
                }
            }

            #[test]
            fn orbit_is_closed(a in arb_perm(4), b in arb_perm(4)) {
                prop_assume!(!a.is_empty() && !b.is_empty());
                let t = PatternSet::new([a, b]).unwrap();
                let orbit = t.symmetry_class();
                prop_assert!(orbit.contains(&t));
                prop_assert_eq!(8 % orbit.len(), 0);
                for member in &orbit {
                    prop_assert_eq!(&member.symmetry_class(), &orbit);
                }
            }

            #[test]
            fn display_round_trip(p in arb_perm(12)) {
                prop_assume!(!p.is_empty());
                prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
            }
        }
    }
}
