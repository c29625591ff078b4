//! Registry of the solved triples: each entry binds a case number to its
//! patterns, a builder for `F_T(x)` and the auxiliary series that refine it.

mod cases;
mod verify;

pub use verify::{verify_all, verify_case, verify_spec, verify_specs, Divergence, Row, Section, VerifyReport};

use std::sync::OnceLock;

use crate::enumerate::FilterSpec;
use crate::error::{Error, Result, SeriesError};
use crate::perm::PatternSet;
use crate::series::{Builder, RationalSeries};

/// A series that counts a filtered subset of the case's avoiders.
#[derive(Clone, Debug)]
pub struct Auxiliary {
    pub name: &'static str,
    pub builder: Builder,
    pub filter: FilterSpec,
    /// Independent builders that must agree with `builder`.
    pub alternates: Vec<Builder>,
}

impl Auxiliary {
    pub fn new(name: &'static str, builder: Builder, filter: FilterSpec) -> Self {
        Self {
            name,
            builder,
            filter,
            alternates: Vec::new(),
        }
    }

    pub fn alternate(mut self, b: Builder) -> Self {
        self.alternates.push(b);
        self
    }
}

#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub id: u32,
    pub patterns: PatternSet,
    pub main: Builder,
    pub alternates: Vec<Builder>,
    pub auxiliaries: Vec<Auxiliary>,
}

impl CaseSpec {
    pub fn new(id: u32, triple: &str, main: Builder) -> Self {
        Self {
            id,
            patterns: triple.parse().expect("static triple"),
            main,
            alternates: Vec::new(),
            auxiliaries: Vec::new(),
        }
    }

    pub fn alternate(mut self, b: Builder) -> Self {
        self.alternates.push(b);
        self
    }

    pub fn with_aux(mut self, a: Auxiliary) -> Self {
        self.auxiliaries.push(a);
        self
    }

    pub fn eval_main(&self, order: usize) -> Result<RationalSeries, SeriesError> {
        self.main.eval(order, None)
    }

    pub fn eval_with(&self, b: &Builder, order: usize) -> Result<RationalSeries, SeriesError> {
        let own = |n: usize| self.eval_main(n);
        b.eval(order, Some(&own))
    }

    pub fn auxiliary(&self, name: &str) -> Result<&Auxiliary> {
        self.auxiliaries
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::UnknownAuxiliary {
                case: self.id,
                name: name.to_string(),
                available: self.auxiliaries.iter().map(|a| a.name).collect::<Vec<_>>().join(", "),
            })
    }

    /// Copy of this entry with one coefficient of one polynomial leaf of the
    /// main closed form shifted by `delta`. `None` if there is no such leaf.
    pub fn corrupted(&self, leaf: usize, index: usize, delta: i64) -> Option<CaseSpec> {
        let e = self.main.as_expr()?.corrupt(leaf, index, delta)?;
        let mut out = self.clone();
        out.main = Builder::Expr(e);
        Some(out)
    }
}

pub fn registry() -> &'static [CaseSpec] {
    static REGISTRY: OnceLock<Vec<CaseSpec>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut all = cases::all();
        all.sort_by_key(|c| c.id);
        all
    })
}

pub fn case_ids() -> Vec<u32> {
    registry().iter().map(|c| c.id).collect()
}

pub fn lookup(id: u32) -> Result<&'static CaseSpec> {
    registry()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase {
            id,
            registered: case_ids().iter().map(u32::to_string).collect::<Vec<_>>().join(", "),
        })
}

/// `F_T(x)` for the case, to `order` coefficients.
pub fn evaluate_case(id: u32, order: usize) -> Result<RationalSeries> {
    Ok(lookup(id)?.eval_main(order)?)
}

/// An auxiliary series together with the filter its coefficients count.
pub fn evaluate_auxiliary(id: u32, name: &str, order: usize) -> Result<(RationalSeries, FilterSpec)> {
    let case = lookup(id)?;
    let a = case.auxiliary(name)?;
    Ok((case.eval_with(&a.builder, order)?, a.filter.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_every_case_once() {
        let ids = case_ids();
        assert_eq!(ids.len(), 35);
        let mut dedup = ids.clone();
        dedup.dedup();
        assert_eq!(dedup, ids);
        assert!(matches!(lookup(9999), Err(Error::UnknownCase { id: 9999, .. })));
    }

    #[test]
    fn case_133_expands() {
        let s = evaluate_case(133, 7).unwrap();
        assert_eq!(s.to_i64s().unwrap(), vec![1, 1, 2, 6, 21, 74, 255]);
        let s = evaluate_case(242, 6).unwrap();
        assert_eq!(s.to_i64s().unwrap(), vec![1, 1, 2, 6, 21, 80]);
    }

    #[test]
    fn auxiliary_lookup() {
        let (j, f) = evaluate_auxiliary(106, "J", 5).unwrap();
        assert_eq!(j.to_i64s().unwrap(), vec![0, 0, 1, 2, 5]);
        assert_eq!(f.to_string(), "start2=n");
        let (h, _) = evaluate_auxiliary(182, "H", 8).unwrap();
        assert_eq!(h.to_i64s().unwrap(), vec![0, 0, 1, 2, 5, 14, 42, 132]);
        assert!(matches!(
            evaluate_auxiliary(106, "Q", 5),
            Err(Error::UnknownAuxiliary { case: 106, .. })
        ));
    }

    #[test]
    fn corruption_changes_the_series() {
        let c = lookup(133).unwrap();
        let bad = c.corrupted(0, 1, 1).unwrap();
        assert_ne!(bad.eval_main(8).unwrap(), c.eval_main(8).unwrap());
        assert!(lookup(242).unwrap().corrupted(0, 0, 1).is_none());
    }
}
