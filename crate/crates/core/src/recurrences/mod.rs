//! Independent polynomial-time engines that recount specific cases without
//! touching the closed forms.

pub mod case118;
pub mod case131;
pub mod case164;
pub mod case194;
pub mod case199;
pub mod case232;
pub mod case242;
pub mod forest222;
mod table;

use crate::enumerate::CountTable;
use crate::error::Result;
use crate::series::RationalSeries;

/// A recount of one case's avoiders.
pub struct Engine {
    pub name: &'static str,
    pub case_id: u32,
    pub run: fn(usize) -> Result<CountTable>,
    /// Optional internal consistency check against brute force.
    pub audit: Option<fn(usize) -> Result<()>>,
}

fn series_counts(s: RationalSeries) -> Result<CountTable> {
    Ok(CountTable::new(s.to_counts()?))
}

fn run242_fixed(n_max: usize) -> Result<CountTable> {
    series_counts(case242::fixed_point(n_max + 1)?)
}

fn run242_sum(n_max: usize) -> Result<CountTable> {
    series_counts(case242::sum_series(n_max + 1)?)
}

macro_rules! table_engine {
    ($spec:path, $run:ident, $audit:ident) => {
        fn $run(n_max: usize) -> Result<CountTable> {
            table::run(&$spec, n_max)
        }
        fn $audit(n_max: usize) -> Result<()> {
            table::audit(&$spec, n_max)
        }
    };
}

table_engine!(case131::SPEC, run131, audit131);
table_engine!(case164::SPEC, run164, audit164);
table_engine!(case194::SPEC, run194, audit194);
table_engine!(case199::SPEC, run199, audit199);
table_engine!(case232::SPEC, run232, audit232);

fn run222(n_max: usize) -> Result<CountTable> {
    forest222::counts(n_max)
}

pub static ENGINES: &[Engine] = &[
    Engine {
        name: "forest",
        case_id: 222,
        run: run222,
        audit: Some(forest222::audit),
    },
    Engine {
        name: "table",
        case_id: 131,
        run: run131,
        audit: Some(audit131),
    },
    Engine {
        name: "table",
        case_id: 164,
        run: run164,
        audit: Some(audit164),
    },
    Engine {
        name: "table",
        case_id: 194,
        run: run194,
        audit: Some(audit194),
    },
    Engine {
        name: "table",
        case_id: 199,
        run: run199,
        audit: Some(audit199),
    },
    Engine {
        name: "table",
        case_id: 232,
        run: run232,
        audit: Some(audit232),
    },
    Engine {
        name: "fixed-point",
        case_id: 242,
        run: run242_fixed,
        audit: None,
    },
    Engine {
        name: "sum",
        case_id: 242,
        run: run242_sum,
        audit: None,
    },
];

pub fn engines_for(case_id: u32) -> impl Iterator<Item = &'static Engine> {
    ENGINES.iter().filter(move |e| e.case_id == case_id)
}
