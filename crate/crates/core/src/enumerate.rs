//! Brute-force oracle. Avoiders are generated by a tree rooted at the empty
//! permutation whose children insert the new maximum into every site; a
//! child is pruned as soon as it contains a forbidden pattern.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, PermError, Result};
use crate::perm::{contains_through, PatternSet, Permutation, Statistic};

/// Exact counts indexed by length `0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CountTable {
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn new(counts: Vec<BigUint>) -> Self {
        Self { counts }
    }

    pub fn zeros(n_max: usize) -> Self {
        Self {
            counts: vec![BigUint::zero(); n_max + 1],
        }
    }

    pub fn from_u64s(values: &[u64]) -> Self {
        Self::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn n_max(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.counts.iter().map(ToPrimitive::to_u64).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }

    #[cfg(test)]
    fn add_assign(&mut self, other: &CountTable) {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), BigUint::zero());
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for CountTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.counts.len()))?;
        for (n, c) in self.counts.iter().enumerate() {
            map.serialize_entry(&n.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CountTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TableVisitor;

        impl<'de> Visitor<'de> for TableVisitor {
            type Value = CountTable;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from length to decimal count")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<CountTable, A::Error> {
                let mut entries = BTreeMap::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let n: usize = k.parse().map_err(de::Error::custom)?;
                    let c: BigUint = v.parse().map_err(de::Error::custom)?;
                    entries.insert(n, c);
                }
                let len = entries.keys().next_back().map_or(0, |&n| n + 1);
                if entries.len() != len {
                    return Err(de::Error::custom("lengths must be contiguous from 0"));
                }
                Ok(CountTable::new(entries.into_values().collect()))
            }
        }

        deserializer.deserialize_map(TableVisitor)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Le,
    Ge,
}

impl Cmp {
    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Cmp::Eq => lhs == rhs,
            Cmp::Le => lhs <= rhs,
            Cmp::Ge => lhs >= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "=",
            Cmp::Le => "<=",
            Cmp::Ge => ">=",
        }
    }
}

/// Right-hand side of a clause; `RelN(d)` means `n + d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Const(i64),
    RelN(i64),
}

impl Target {
    pub fn resolve(self, n: usize) -> i64 {
        match self {
            Target::Const(c) => c,
            Target::RelN(d) => n as i64 + d,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Target::Const(c) => write!(f, "{c}"),
            Target::RelN(0) => f.write_str("n"),
            Target::RelN(d) if d < 0 => write!(f, "n-{}", -d),
            Target::RelN(d) => write!(f, "n+{d}"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadFilter(s.to_string());
        if let Some(rest) = s.strip_prefix('n') {
            let rest = rest.trim();
            if rest.is_empty() {
                return Ok(Target::RelN(0));
            }
            let (sign, digits) = match rest.split_at(1) {
                ("-", d) => (-1, d),
                ("+", d) => (1, d),
                _ => return Err(bad()),
            };
            let d: i64 = digits.trim().parse().map_err(|_| bad())?;
            Ok(Target::RelN(sign * d))
        } else {
            s.parse().map(Target::Const).map_err(|_| bad())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Clause {
    pub stat: Statistic,
    pub cmp: Cmp,
    pub target: Target,
}

impl Clause {
    pub fn new(stat: Statistic, cmp: Cmp, target: Target) -> Self {
        Self { stat, cmp, target }
    }

    pub fn eq(stat: Statistic, target: Target) -> Self {
        Self::new(stat, Cmp::Eq, target)
    }

    fn test(&self, p: &[u8]) -> Result<bool, PermError> {
        let v = self.stat.eval_slice(p)?;
        Ok(self.cmp.holds(v, self.target.resolve(p.len())))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.stat, self.cmp.symbol(), self.target)
    }
}

impl FromStr for Clause {
    type Err = Error;

    /// `name=value`, `name<=value` or `name>=value`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, cmp, value) = if let Some((a, b)) = s.split_once("<=") {
            (a, Cmp::Le, b)
        } else if let Some((a, b)) = s.split_once(">=") {
            (a, Cmp::Ge, b)
        } else if let Some((a, b)) = s.split_once("==") {
            (a, Cmp::Eq, b)
        } else if let Some((a, b)) = s.split_once('=') {
            (a, Cmp::Eq, b)
        } else {
            return Err(Error::BadFilter(s.to_string()));
        };
        let stat = name.parse::<Statistic>()?;
        Ok(Clause::new(stat, cmp, value.parse()?))
    }
}

/// A conjunction of clauses together with the first length at which it is
/// applied. Lengths below `from_len` count zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterSpec {
    clauses: Vec<Clause>,
    from_len: usize,
}

impl FilterSpec {
    /// Uses the smallest length at which every clause is defined.
    pub fn new(clauses: Vec<Clause>) -> Self {
        let from_len = clauses.iter().map(|c| c.stat.min_len()).max().unwrap_or(0);
        Self { clauses, from_len }
    }

    pub fn with_from_len(mut self, from_len: usize) -> Self {
        self.from_len = from_len;
        self
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn from_len(&self) -> usize {
        self.from_len
    }

    fn accepts(&self, p: &[u8]) -> Result<bool> {
        let n = p.len();
        if n < self.from_len {
            return Ok(false);
        }
        for clause in &self.clauses {
            let ok = clause.test(p).map_err(|source| Error::Clause {
                clause: clause.to_string(),
                n,
                source,
            })?;
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.clauses.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" & "))
    }
}

impl FromStr for FilterSpec {
    type Err = Error;

    /// Clauses separated by `,` or `&`.
    fn from_str(s: &str) -> Result<Self> {
        let clauses = s
            .split([',', '&'])
            .filter(|c| !c.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Clause>>>()?;
        if clauses.is_empty() {
            return Err(Error::BadFilter(s.to_string()));
        }
        Ok(FilterSpec::new(clauses))
    }
}

/// Patterns prepared for the pruning test: values plus the index of the
/// maximum, which is the only role the newly inserted entry can play.
struct Pruner {
    patterns: Vec<(Vec<u8>, usize)>,
}

impl Pruner {
    fn new(t: &PatternSet) -> Self {
        let patterns = t
            .patterns()
            .iter()
            .map(|q| {
                let vals = q.values().to_vec();
                let top = vals.iter().position(|&v| v as usize == vals.len()).unwrap();
                (vals, top)
            })
            .collect();
        Self { patterns }
    }

    /// `child` has its maximum at `site` and its parent avoids every pattern.
    fn admits(&self, child: &[u8], site: usize) -> bool {
        self.patterns
            .iter()
            .all(|(q, top)| q.len() > child.len() || !contains_through(child, q, site, *top))
    }
}

/// Level at which the tree is cut into independently processed subtrees.
const SPLIT_DEPTH: usize = 5;

/// Folds `visit` over every avoider of length `0..=n_max`.
///
/// Subtrees below the split depth are processed in parallel and merged with
/// `merge`, which must be commutative and associative for the result to be
/// independent of scheduling.
pub fn fold_avoiders<A, I, V, M>(t: &PatternSet, n_max: usize, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[u8]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let pruner = Pruner::new(t);
    let split = SPLIT_DEPTH.min(n_max);
    let mut frontier: Vec<Vec<u8>> = vec![Vec::new()];
    let mut shallow = init();
    for _ in 0..split {
        let mut next = Vec::new();
        for p in &frontier {
            visit(&mut shallow, p);
            next.extend(children(&pruner, p));
        }
        frontier = next;
    }
    let deep = frontier
        .into_par_iter()
        .fold(&init, |mut acc, mut p| {
            walk(&pruner, &mut p, n_max, &mut acc, &visit);
            acc
        })
        .reduce(&init, &merge);
    merge(shallow, deep)
}

fn children<'a>(pruner: &'a Pruner, p: &'a [u8]) -> impl Iterator<Item = Vec<u8>> + 'a {
    let top = p.len() as u8 + 1;
    (0..=p.len()).filter_map(move |site| {
        let mut c = p.to_vec();
        c.insert(site, top);
        pruner.admits(&c, site).then_some(c)
    })
}

fn walk<A, V: Fn(&mut A, &[u8])>(pruner: &Pruner, p: &mut Vec<u8>, n_max: usize, acc: &mut A, visit: &V) {
    visit(acc, p);
    if p.len() == n_max {
        return;
    }
    let top = p.len() as u8 + 1;
    for site in 0..=p.len() {
        p.insert(site, top);
        if pruner.admits(p, site) {
            walk(pruner, p, n_max, acc, visit);
        }
        p.remove(site);
    }
}

fn sum_vecs(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn table_from_u64(v: Vec<u64>) -> CountTable {
    CountTable::new(v.into_iter().map(BigUint::from).collect())
}

/// `counts[n] = |S_n(t)|` for `n = 0..=n_max`.
pub fn count_avoiders(t: &PatternSet, n_max: usize) -> CountTable {
    let counts = fold_avoiders(t, n_max, || vec![0u64; n_max + 1], |acc, p| acc[p.len()] += 1, sum_vecs);
    table_from_u64(counts)
}

/// Counts of avoiders satisfying every clause of `f`.
pub fn count_filtered(t: &PatternSet, n_max: usize, f: &FilterSpec) -> Result<CountTable> {
    let counts = fold_avoiders(
        t,
        n_max,
        || Ok(vec![0u64; n_max + 1]),
        |acc: &mut Result<Vec<u64>>, p| {
            if let Ok(v) = acc {
                match f.accepts(p) {
                    Ok(true) => v[p.len()] += 1,
                    Ok(false) => {}
                    Err(e) => *acc = Err(e),
                }
            }
        },
        |a, b| match (a, b) {
            (Ok(a), Ok(b)) => Ok(sum_vecs(a, b)),
            (Err(e), Ok(_)) | (Ok(_), Err(e)) => Err(e),
            // keep the error from the shorter permutation so the report is stable
            (Err(a), Err(b)) => Err(if clause_len(&a) <= clause_len(&b) { a } else { b }),
        },
    )?;
    Ok(table_from_u64(counts))
}

/// Counts for several filters in a single walk of the tree.
pub fn count_filtered_many(t: &PatternSet, n_max: usize, filters: &[FilterSpec]) -> Result<Vec<CountTable>> {
    let k = filters.len();
    let counts = fold_avoiders(
        t,
        n_max,
        || Ok(vec![vec![0u64; n_max + 1]; k]),
        |acc: &mut Result<Vec<Vec<u64>>>, p| {
            if let Ok(v) = acc {
                for (i, f) in filters.iter().enumerate() {
                    match f.accepts(p) {
                        Ok(true) => v[i][p.len()] += 1,
                        Ok(false) => {}
                        Err(e) => {
                            *acc = Err(e);
                            return;
                        }
                    }
                }
            }
        },
        |a, b| match (a, b) {
            (Ok(a), Ok(b)) => Ok(a.into_iter().zip(b).map(|(x, y)| sum_vecs(x, y)).collect()),
            (Err(e), Ok(_)) | (Ok(_), Err(e)) => Err(e),
            (Err(a), Err(b)) => Err(if clause_len(&a) <= clause_len(&b) { a } else { b }),
        },
    )?;
    Ok(counts.into_iter().map(table_from_u64).collect())
}

fn clause_len(e: &Error) -> usize {
    match e {
        Error::Clause { n, .. } => *n,
        _ => usize::MAX,
    }
}

/// Partition of the avoiders by the value of `s`.
pub fn count_by_statistic(t: &PatternSet, n_max: usize, s: Statistic) -> BTreeMap<i64, CountTable> {
    let min = s.min_len();
    let partial = fold_avoiders(
        t,
        n_max,
        BTreeMap::<i64, Vec<u64>>::new,
        |acc, p| {
            if p.len() >= min {
                let v = s.eval_slice(p).expect("defined above min_len");
                acc.entry(v).or_insert_with(|| vec![0; n_max + 1])[p.len()] += 1;
            }
        },
        |mut a, b| {
            for (k, v) in b {
                match a.remove(&k) {
                    Some(w) => a.insert(k, sum_vecs(w, v)),
                    None => a.insert(k, v),
                };
            }
            a
        },
    );
    partial.into_iter().map(|(k, v)| (k, table_from_u64(v))).collect()
}

/// All avoiders of length exactly `n`, in lexicographic order.
pub fn avoiders(t: &PatternSet, n: usize) -> Vec<Permutation> {
    let mut all = fold_avoiders(
        t,
        n,
        Vec::new,
        |acc: &mut Vec<Vec<u8>>, p| {
            if p.len() == n {
                acc.push(p.to_vec());
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    all.sort();
    all.into_iter().map(Permutation::from_vec_unchecked).collect()
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    fn naive_counts(t: &PatternSet, n_max: usize) -> Vec<u64> {
        (0..=n_max)
            .map(|n| {
                let mut count = 0;
                let mut v: Vec<u8> = (1..=n as u8).collect();
                permute(&mut v, 0, &mut |p| {
                    if Permutation::new(p.to_vec()).unwrap().avoids(t) {
                        count += 1;
                    }
                });
                count
            })
            .collect()
    }

    fn permute(v: &mut Vec<u8>, k: usize, f: &mut impl FnMut(&[u8])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn spec_examples() {
        let t = set("1342,2143,2314");
        assert_eq!(count_avoiders(&t, 4).get(4), Some(&BigUint::from(21u32)));
        assert_eq!(count_avoiders(&t, 6).to_u64s().unwrap(), vec![1, 1, 2, 6, 21, 74, 255]);
        assert_eq!(
            count_avoiders(&set("1234,4321,2143"), 3).to_u64s().unwrap(),
            vec![1, 1, 2, 6]
        );
        assert_eq!(
            count_avoiders(&set("123"), 5).to_u64s().unwrap(),
            vec![1, 1, 2, 5, 14, 42]
        );
    }

    #[test]
    fn tree_matches_exhaustive_search() {
        for t in ["1342,2143,3412", "2413,3142", "132,3412", "12", "1", "321,1234"] {
            let t = set(t);
            assert_eq!(count_avoiders(&t, 7).to_u64s().unwrap(), naive_counts(&t, 7), "{t}");
        }
    }

    #[test]
    fn filtered_second_letter_is_max() {
        let t = set("1342,2143,3412");
        let f: FilterSpec = "start2=n".parse().unwrap();
        let got = count_filtered(&t, 4, &f).unwrap();
        assert_eq!(got.to_u64s().unwrap(), vec![0, 0, 1, 2, 5]);
    }

    #[test]
    fn lrmax_one_is_shifted_total() {
        let t = set("1243,2314,3412");
        let f: FilterSpec = "lrmax=1".parse().unwrap();
        let all = count_avoiders(&t, 8).to_u64s().unwrap();
        let one = count_filtered(&t, 8, &f).unwrap().to_u64s().unwrap();
        assert_eq!(one[0], 0);
        for n in 1..=8 {
            assert_eq!(one[n], all[n - 1]);
        }
    }

    #[test]
    fn unevaluable_clause_is_reported() {
        let t = set("1342,2143,3412");
        let f = FilterSpec::new(vec![Clause::eq(Statistic::ValueAtFromStart(3), Target::RelN(0))]).with_from_len(0);
        match count_filtered(&t, 5, &f) {
            Err(Error::Clause { clause, n, .. }) => {
                assert_eq!(clause, "start3=n");
                assert_eq!(n, 0);
            }
            other => panic!("expected clause error, got {other:?}"),
        }
        let natural = FilterSpec::new(f.clauses().to_vec());
        assert_eq!(natural.from_len(), 3);
        assert!(count_filtered(&t, 5, &natural).is_ok());
    }

    #[test]
    fn many_filters_match_single_runs() {
        let t = set("1243,2314,3412");
        let filters: Vec<FilterSpec> = ["start1=n-1", "lrmax=2,start1<=n-2", "lrmax>=3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let many = count_filtered_many(&t, 8, &filters).unwrap();
        for (f, got) in filters.iter().zip(&many) {
            assert_eq!(got, &count_filtered(&t, 8, f).unwrap());
        }
    }

    #[test]
    fn partition_sums_to_total() {
        let t = set("3412,3421,1342");
        let total = count_avoiders(&t, 8);
        let parts = count_by_statistic(&t, 8, Statistic::LRMaxCount);
        let mut sum = CountTable::zeros(8);
        for table in parts.values() {
            sum.add_assign(table);
        }
        assert_eq!(sum, total);
        let one = count_by_statistic(&t, 1, Statistic::LRMaxCount);
        assert_eq!(one[&1].get(1), Some(&BigUint::one()));
    }

    #[test]
    fn filter_parsing() {
        let f: FilterSpec = "start1=n-1,lrmax<=2".parse().unwrap();
        assert_eq!(f.to_string(), "start1=n-1 & lrmax<=2");
        assert!("bogus=3".parse::<FilterSpec>().is_err());
        assert!("lrmax=n*2".parse::<FilterSpec>().is_err());
        assert!("lrmax".parse::<FilterSpec>().is_err());
    }

    #[test]
    fn json_and_csv() {
        let table = CountTable::from_u64s(&[1, 1, 2, 6, 21, 74, 255, 1, 2, 3, 4, 5]);
        let json = serde_json::to_string(&table).unwrap();
        assert!(json.starts_with(r#"{"0":"1","1":"1","2":"2""#));
        let back: CountTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
        assert!(table.to_csv().starts_with("n,count\n0,1\n1,1\n"));
    }

    #[test]
    fn avoider_listing_is_sound() {
        let t = set("1342,2431,3412");
        for n in 0..=7 {
            let list = avoiders(&t, n);
            assert_eq!(list.len() as u64, count_avoiders(&t, n).to_u64s().unwrap()[n]);
            for p in list.iter().step_by(7) {
                assert!(p.avoids(&t));
                for i in 0..n {
                    assert!(p.delete(i).avoids(&t));
                }
            }
        }
    }

    mod props {
        use super::*;
        use crate::perm::Symmetry;
        use proptest::prelude::*;

        fn arb_triple() -> impl Strategy<Value = PatternSet> {
            proptest::collection::btree_set(Just((1..=4u8).collect::<Vec<_>>()).prop_shuffle(), 3)
                .prop_map(|s| PatternSet::new(s.into_iter().map(|v| Permutation::new(v).unwrap())).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn counts_are_symmetry_invariant(t in arb_triple(), k in 0usize..8) {
                let s = Symmetry::ALL[k];
                let image = t.map(|p| s.apply(p));
                prop_assert_eq!(count_avoiders(&t, 7), count_avoiders(&image, 7));
            }

            #[test]
            fn counts_obey_basic_bounds(t in arb_triple()) {
                let c = count_avoiders(&t, 8);
                prop_assert_eq!(c.get(0).unwrap(), &BigUint::one());
                for n in 0..=3 {
                    prop_assert_eq!(c.get(n).unwrap(), &factorial(n));
                }
                prop_assert_eq!(c.get(4).unwrap(), &BigUint::from(21u32));
                for n in 1..=8 {
                    prop_assert!(c.get(n).unwrap() <= &(c.get(n - 1).unwrap() * BigUint::from(n + 1)));
                }
            }

            #[test]
            fn filtered_never_exceeds_total(t in arb_triple(), m in 1i64..4) {
                let f = FilterSpec::new(vec![Clause::new(Statistic::LRMaxCount, Cmp::Ge, Target::Const(m))]);
                let all = count_avoiders(&t, 7);
                let some = count_filtered(&t, 7, &f).unwrap();
                for n in 0..=7 {
                    prop_assert!(some.get(n) <= all.get(n));
                }
            }
        }
    }
}
