//! Coefficient-by-coefficient comparison of catalog series and engines with
//! the brute-force counts.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lookup, registry, CaseSpec};
use crate::enumerate::{count_avoiders, count_filtered_many, CountTable};
use crate::error::Result;
use crate::recurrences;
use crate::series::{Builder, RationalSeries};

/// One compared coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

/// A named group of rows, with what produced the `got` column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<String>,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ok: bool,
}

impl Section {
    fn compare(source: String, filter: Option<String>, oracle: &CountTable, got: Result<Vec<String>>) -> Self {
        match got {
            Ok(got) => {
                let rows: Vec<Row> = oracle
                    .counts()
                    .iter()
                    .enumerate()
                    .map(|(n, e)| {
                        let expected = e.to_string();
                        let g = got.get(n).cloned().unwrap_or_else(|| "missing".into());
                        Row {
                            n,
                            ok: g == expected,
                            expected,
                            got: g,
                        }
                    })
                    .collect();
                let ok = rows.iter().all(|r| r.ok);
                Section {
                    source,
                    filter,
                    rows,
                    error: None,
                    ok,
                }
            }
            Err(e) => Section {
                source,
                filter,
                rows: Vec::new(),
                error: Some(e.to_string()),
                ok: false,
            },
        }
    }

    fn first_bad(&self) -> Option<usize> {
        if self.error.is_some() {
            return Some(0);
        }
        self.rows.iter().find(|r| !r.ok).map(|r| r.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    pub section: String,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub case_id: u32,
    pub patterns: String,
    pub n_max: usize,
    pub main: Vec<Row>,
    /// Present when the main builder failed outright.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub main_error: Option<String>,
    /// First coefficient below the default order that is not a nonnegative integer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_integral: Option<String>,
    pub alternates: BTreeMap<String, Section>,
    pub auxiliaries: BTreeMap<String, Section>,
    pub engines: BTreeMap<String, Section>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_divergence: Option<Divergence>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

fn coeff_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn series_strings(s: &RationalSeries) -> Vec<String> {
    s.coeffs().iter().map(coeff_string).collect()
}

fn table_strings(t: &CountTable) -> Vec<String> {
    t.counts().iter().map(BigUint::to_string).collect()
}

fn builder_section(case: &CaseSpec, b: &Builder, oracle: &CountTable, filter: Option<String>) -> Section {
    let got = case
        .eval_with(b, oracle.n_max() + 1)
        .map(|s| series_strings(&s))
        .map_err(Into::into);
    Section::compare(b.describe(), filter, oracle, got)
}

/// Compares everything registered for `case` with the oracle up to `n_max`.
pub fn verify_spec(case: &CaseSpec, n_max: usize) -> Result<VerifyReport> {
    let order = n_max + 1;
    let oracle = count_avoiders(&case.patterns, n_max);
    let main = builder_section(case, &case.main, &oracle, None);

    let non_integral = match case.eval_main(crate::DEFAULT_ORDER.max(order)) {
        Ok(s) => s.to_counts().err().map(|e| e.to_string()),
        Err(e) => Some(e.to_string()),
    };

    let mut alternates = BTreeMap::new();
    for b in &case.alternates {
        alternates.insert(b.describe(), builder_section(case, b, &oracle, None));
    }

    let filters: Vec<_> = case.auxiliaries.iter().map(|a| a.filter.clone()).collect();
    let filtered = count_filtered_many(&case.patterns, n_max, &filters)?;
    let mut auxiliaries = BTreeMap::new();
    for (a, counts) in case.auxiliaries.iter().zip(&filtered) {
        let filter = Some(a.filter.to_string());
        auxiliaries.insert(
            a.name.to_string(),
            builder_section(case, &a.builder, counts, filter.clone()),
        );
        for (k, b) in a.alternates.iter().enumerate() {
            let key = format!("{}/alt{}", a.name, k + 1);
            auxiliaries.insert(key, builder_section(case, b, counts, filter.clone()));
        }
    }

    let mut engines = BTreeMap::new();
    for e in recurrences::engines_for(case.id) {
        let got = (e.run)(n_max).map(|t| table_strings(&t));
        engines.insert(
            e.name.to_string(),
            Section::compare(e.name.to_string(), None, &oracle, got),
        );
        if let Some(audit) = e.audit {
            let got = audit(n_max).map(|_| table_strings(&oracle));
            let key = format!("{}/audit", e.name);
            engines.insert(key.clone(), Section::compare(key, None, &oracle, got));
        }
    }

    let mut first_divergence = main.first_bad().map(|n| Divergence {
        section: "main".into(),
        n,
    });
    for (group, map) in [
        ("alternates", &alternates),
        ("auxiliaries", &auxiliaries),
        ("engines", &engines),
    ] {
        for (name, s) in map {
            if first_divergence.is_none() {
                first_divergence = s.first_bad().map(|n| Divergence {
                    section: format!("{group}.{name}"),
                    n,
                });
            }
        }
    }
    if first_divergence.is_none() && non_integral.is_some() {
        first_divergence = Some(Divergence {
            section: "integrality".into(),
            n: order,
        });
    }

    let verdict = if first_divergence.is_none() { "pass" } else { "fail" };
    Ok(VerifyReport {
        case_id: case.id,
        patterns: case.patterns.to_string(),
        n_max,
        main: main.rows,
        main_error: main.error,
        non_integral,
        alternates,
        auxiliaries,
        engines,
        verdict: verdict.into(),
        first_divergence,
    })
}

pub fn verify_case(id: u32, n_max: usize) -> Result<VerifyReport> {
    verify_spec(lookup(id)?, n_max)
}

/// Every registered case, in case order; cases run concurrently.
pub fn verify_all(n_max: usize) -> Result<Vec<VerifyReport>> {
    verify_specs(registry(), n_max)
}

pub fn verify_specs(cases: &[CaseSpec], n_max: usize) -> Result<Vec<VerifyReport>> {
    let mut out: Vec<VerifyReport> = cases.par_iter().map(|c| verify_spec(c, n_max)).collect::<Result<_>>()?;
    out.sort_by_key(|r| r.case_id);
    Ok(out)
}
