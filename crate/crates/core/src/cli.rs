//! Command-line front end. Every subcommand builds a [`Report`] and prints
//! it as text, CSV or JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, verify_specs, CaseSpec, Section, VerifyReport};
use crate::enumerate::{count_avoiders, count_filtered, CountTable, FilterSpec};
use crate::error::{Error, Result};
use crate::perm::{PatternSet, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "permavoid",
    version,
    about = "Count pattern-avoiding permutations and check generating functions"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count avoiders of lengths 0..=n, optionally restricted by a filter.
    Count {
        #[arg(long)]
        patterns: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Clauses such as `lrmax=2` or `start1<=n-2`, joined by `,` or `&`.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Compare registered series and engines with enumeration.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        case: Option<u32>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// CASE[:LEAF:INDEX:DELTA], shifts one polynomial coefficient of a
        /// closed form before verifying.
        #[arg(long, hide = true)]
        corrupt: Vec<String>,
    },
    /// Print the first coefficients of a registered series.
    Series {
        #[arg(long)]
        case: u32,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// An auxiliary series of the case instead of the main one.
        #[arg(long)]
        aux: Option<String>,
    },
    /// Print the orbit of a pattern set under the eight symmetries.
    Symmetry {
        #[arg(long)]
        patterns: String,
    },
    /// Group triples of 4-letter patterns containing 1342 by their counts.
    WilfScan {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

/// What every subcommand prints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: T,
    pub verdict: String,
    pub duration_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub patterns: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<String>,
    pub counts: CountTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub case_id: u32,
    pub patterns: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub auxiliary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<String>,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryResult {
    pub input: String,
    pub representative: String,
    pub orbit: Vec<String>,
    /// Registered case whose triple lies in the orbit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case_id: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilfClass {
    pub counts: Vec<String>,
    pub members: Vec<String>,
    pub cases: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilfScan {
    pub n: usize,
    pub triples: usize,
    pub classes: Vec<WilfClass>,
    /// Registered cases with no orbit member containing 1342.
    pub outside: Vec<u32>,
    pub flagged: Vec<String>,
}

fn verdict(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.to_string()
}

fn inputs<const K: usize>(pairs: [(&str, String); K]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Exit status for a library error: 2 for bad input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Perm(_)
        | Error::BadFilter(_)
        | Error::Clause { .. }
        | Error::UnknownCase { .. }
        | Error::UnknownAuxiliary { .. } => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(ok) => i32::from(!ok),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed command; `Ok(false)` means a comparison failed.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let start = Instant::now();
    let ms = |s: Instant| s.elapsed().as_millis() as u64;
    match &cli.command {
        Command::Count { patterns, n, filter } => {
            let t: PatternSet = patterns.parse()?;
            let spec = filter.as_deref().map(str::parse::<FilterSpec>).transpose()?;
            let counts = match &spec {
                Some(f) => count_filtered(&t, *n, f)?,
                None => count_avoiders(&t, *n),
            };
            let report = Report {
                command: "count".into(),
                inputs: inputs([
                    ("patterns", t.to_string()),
                    ("n", n.to_string()),
                    ("filter", spec.as_ref().map(ToString::to_string).unwrap_or_default()),
                ]),
                results: CountResult {
                    patterns: t.to_string(),
                    filter: spec.map(|f| f.to_string()),
                    counts,
                },
                verdict: verdict(true),
                duration_ms: ms(start),
            };
            emit(out, cli.format, &report, count_text, |r| r.results.counts.to_csv())?;
            Ok(true)
        }
        Command::Verify { case, all, n, corrupt } => {
            let mut specs: Vec<CaseSpec> = if *all {
                catalog::registry().to_vec()
            } else {
                vec![catalog::lookup(case.expect("clap requires --case or --all"))?.clone()]
            };
            for c in corrupt {
                apply_corruption(&mut specs, c)?;
            }
            let reports = verify_specs(&specs, *n)?;
            let ok = reports.iter().all(VerifyReport::passed);
            let report = Report {
                command: "verify".into(),
                inputs: inputs([
                    (
                        "case",
                        if *all {
                            "all".into()
                        } else {
                            case.map(|c| c.to_string()).unwrap_or_default()
                        },
                    ),
                    ("n", n.to_string()),
                    ("corrupt", corrupt.join(" ")),
                ]),
                results: reports,
                verdict: verdict(ok),
                duration_ms: ms(start),
            };
            emit(out, cli.format, &report, verify_text, verify_csv)?;
            Ok(ok)
        }
        Command::Series { case, terms, aux } => {
            let spec = catalog::lookup(*case)?;
            let (series, filter) = match aux {
                Some(name) => {
                    let (s, f) = catalog::evaluate_auxiliary(*case, name, *terms)?;
                    (s, Some(f.to_string()))
                }
                None => (spec.eval_main(*terms)?, None),
            };
            let report = Report {
                command: "series".into(),
                inputs: inputs([
                    ("case", case.to_string()),
                    ("terms", terms.to_string()),
                    ("aux", aux.clone().unwrap_or_default()),
                ]),
                results: SeriesResult {
                    case_id: *case,
                    patterns: spec.patterns.to_string(),
                    auxiliary: aux.clone(),
                    filter,
                    coefficients: series.coeffs().iter().map(|c| c.to_string()).collect(),
                },
                verdict: verdict(true),
                duration_ms: ms(start),
            };
            emit(
                out,
                cli.format,
                &report,
                |r| r.results.coefficients.join(" "),
                series_csv,
            )?;
            Ok(true)
        }
        Command::Symmetry { patterns } => {
            let t: PatternSet = patterns.parse()?;
            let orbit = t.symmetry_class();
            let case_id = catalog::registry()
                .iter()
                .find(|c| orbit.contains(&c.patterns))
                .map(|c| c.id);
            let report = Report {
                command: "symmetry".into(),
                inputs: inputs([("patterns", t.to_string())]),
                results: SymmetryResult {
                    input: t.to_string(),
                    representative: t.class_representative().to_string(),
                    orbit: orbit.iter().map(ToString::to_string).collect(),
                    case_id,
                },
                verdict: verdict(true),
                duration_ms: ms(start),
            };
            emit(out, cli.format, &report, symmetry_text, |r| {
                let mut s = String::from("pattern_set\n");
                for o in &r.results.orbit {
                    s.push_str(&format!("\"{o}\"\n"));
                }
                s
            })?;
            Ok(true)
        }
        Command::WilfScan { n } => {
            let scan = wilf_scan(*n)?;
            let ok = scan.flagged.is_empty() && scan.outside.is_empty();
            let report = Report {
                command: "wilf-scan".into(),
                inputs: inputs([("n", n.to_string())]),
                results: scan,
                verdict: verdict(ok),
                duration_ms: ms(start),
            };
            emit(out, cli.format, &report, wilf_text, wilf_csv)?;
            Ok(ok)
        }
    }
}

fn apply_corruption(specs: &mut [CaseSpec], arg: &str) -> Result<()> {
    let bad = || Error::BadFilter(format!("corruption `{arg}` is not CASE[:LEAF:INDEX:DELTA]"));
    let parts: Vec<&str> = arg.split(':').collect();
    let num =
        |k: usize, default: i64| -> Result<i64> { parts.get(k).map_or(Ok(default), |s| s.parse().map_err(|_| bad())) };
    if parts.len() != 1 && parts.len() != 4 {
        return Err(bad());
    }
    let id: u32 = parts[0].parse().map_err(|_| bad())?;
    let (leaf, index, delta) = (num(1, 0)?, num(2, 0)?, num(3, 1)?);
    catalog::lookup(id)?;
    if let Some(slot) = specs.iter_mut().find(|c| c.id == id) {
        *slot = slot
            .corrupted(leaf as usize, index as usize, delta)
            .ok_or_else(|| Error::BadFilter(format!("case {id} has no polynomial leaf {leaf} with index {index}")))?;
    }
    Ok(())
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    format: Format,
    report: &Report<T>,
    text: impl Fn(&Report<T>) -> String,
    csv: impl Fn(&Report<T>) -> String,
) -> Result<()> {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Csv => csv(report),
        Format::Text => {
            let mut s = text(report);
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    };
    out.write_all(body.as_bytes()).map_err(|e| Error::Engine {
        engine: "output",
        n: 0,
        message: e.to_string(),
    })
}

fn count_text(r: &Report<CountResult>) -> String {
    let res = &r.results;
    match &res.filter {
        Some(f) => format!("# {} with {f}\n{}", res.patterns, res.counts),
        None => format!("# {}\n{}", res.patterns, res.counts),
    }
}

fn series_csv(r: &Report<SeriesResult>) -> String {
    let mut s = String::from("n,count\n");
    for (n, c) in r.results.coefficients.iter().enumerate() {
        s.push_str(&format!("{n},{c}\n"));
    }
    s
}

fn symmetry_text(r: &Report<SymmetryResult>) -> String {
    let res = &r.results;
    let mut s = format!("orbit of {} ({} members)\n", res.input, res.orbit.len());
    for o in &res.orbit {
        let mark = if *o == res.representative { "  *" } else { "" };
        s.push_str(&format!("  {o}{mark}\n"));
    }
    if let Some(id) = res.case_id {
        s.push_str(&format!("registered as case {id}\n"));
    }
    s
}

/// Where the report first goes wrong, with the numbers involved.
pub fn describe_divergence(r: &VerifyReport) -> Option<String> {
    let d = r.first_divergence.as_ref()?;
    let row_in = |rows: &[crate::catalog::Row]| {
        rows.iter()
            .find(|row| row.n == d.n)
            .map(|row| format!("expected {}, got {}", row.expected, row.got))
    };
    let section = |group: &BTreeMap<String, Section>, key: &str| {
        group.get(key).map(|s| match &s.error {
            Some(e) => e.clone(),
            None => row_in(&s.rows).unwrap_or_default(),
        })
    };
    let detail = match d.section.split_once('.') {
        None if d.section == "main" => r.main_error.clone().or_else(|| row_in(&r.main)),
        None => r.non_integral.clone(),
        Some(("alternates", k)) => section(&r.alternates, k),
        Some(("auxiliaries", k)) => section(&r.auxiliaries, k),
        Some(("engines", k)) => section(&r.engines, k),
        Some(_) => None,
    };
    Some(format!("{} at n={}: {}", d.section, d.n, detail.unwrap_or_default()))
}

fn verify_text(r: &Report<Vec<VerifyReport>>) -> String {
    let mut s = String::new();
    for v in &r.results {
        let extra = v.alternates.len() + v.auxiliaries.len() + v.engines.len();
        s.push_str(&format!(
            "case {:>3}  {:<16} {}  (+{extra} checks)\n",
            v.case_id, v.patterns, v.verdict
        ));
        if let Some(d) = describe_divergence(v) {
            s.push_str(&format!("          first divergence: {d}\n"));
        }
        for (group, map) in [
            ("alternates", &v.alternates),
            ("auxiliaries", &v.auxiliaries),
            ("engines", &v.engines),
        ] {
            for k in map.iter().filter(|(_, sec)| !sec.ok).map(|(k, _)| k) {
                s.push_str(&format!("          failing: {group}.{k}\n"));
            }
        }
        if r.results.len() == 1 {
            let names: Vec<&str> = v.engines.keys().map(String::as_str).collect();
            if !names.is_empty() {
                s.push_str(&format!("          engines: oracle, catalog, {}\n", names.join(", ")));
            }
        }
    }
    let passed = r.results.iter().filter(|v| v.passed()).count();
    s.push_str(&format!("{passed}/{} pass\n", r.results.len()));
    s
}

fn verify_csv(r: &Report<Vec<VerifyReport>>) -> String {
    let mut s = String::from("case,patterns,verdict,section,n\n");
    for v in &r.results {
        let (sec, n) = v
            .first_divergence
            .as_ref()
            .map_or((String::new(), String::new()), |d| (d.section.clone(), d.n.to_string()));
        s.push_str(&format!("{},\"{}\",{},{sec},{n}\n", v.case_id, v.patterns, v.verdict));
    }
    s
}

fn wilf_text(r: &Report<WilfScan>) -> String {
    let res = &r.results;
    let mut s = format!(
        "{} triples containing 1342, {} classes by |S_5|..|S_{}|\n",
        res.triples,
        res.classes.len(),
        res.n
    );
    for c in &res.classes {
        let cases = if c.cases.is_empty() {
            String::new()
        } else {
            format!("  cases {:?}", c.cases)
        };
        s.push_str(&format!("{:>3}  {}{cases}\n", c.members.len(), c.counts.join(",")));
    }
    for f in &res.flagged {
        s.push_str(&format!("flagged: {f}\n"));
    }
    for id in &res.outside {
        s.push_str(&format!("case {id} has no orbit member containing 1342\n"));
    }
    s
}

fn wilf_csv(r: &Report<WilfScan>) -> String {
    let mut s = String::from("class,size,counts,cases\n");
    for (k, c) in r.results.classes.iter().enumerate() {
        let cases: Vec<String> = c.cases.iter().map(u32::to_string).collect();
        s.push_str(&format!(
            "{k},{},\"{}\",\"{}\"\n",
            c.members.len(),
            c.counts.join(","),
            cases.join(",")
        ));
    }
    s
}

/// All sets `{1342, p, q}` of distinct 4-letter patterns.
pub fn triples_with_1342() -> Vec<PatternSet> {
    let base: Permutation = "1342".parse().expect("static pattern");
    let others: Vec<Permutation> = all_perms(4).into_iter().filter(|p| *p != base).collect();
    let mut out = Vec::new();
    for a in 0..others.len() {
        for b in a + 1..others.len() {
            out.push(PatternSet::new([base.clone(), others[a].clone(), others[b].clone()]).expect("nonempty"));
        }
    }
    out
}

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut out = vec![Permutation::empty()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|p| (0..=p.len()).map(move |s| p.insert_max(s)))
            .collect();
    }
    out.sort();
    out
}

/// Groups the triples by `(|S_5|, ..., |S_n|)` and checks the registry against the grouping.
pub fn wilf_scan(n: usize) -> Result<WilfScan> {
    let n = n.max(5);
    let triples = triples_with_1342();
    let vectors: Vec<Vec<String>> = triples
        .par_iter()
        .map(|t| {
            count_avoiders(t, n).counts()[5..]
                .iter()
                .map(ToString::to_string)
                .collect()
        })
        .collect();
    let mut groups: BTreeMap<Vec<String>, Vec<usize>> = BTreeMap::new();
    for (k, v) in vectors.iter().enumerate() {
        groups.entry(v.clone()).or_default().push(k);
    }
    let index: BTreeMap<&PatternSet, usize> = triples.iter().enumerate().map(|(k, t)| (t, k)).collect();

    let mut outside = Vec::new();
    let mut flagged = Vec::new();
    let mut case_vec: BTreeMap<u32, &Vec<String>> = BTreeMap::new();
    for c in catalog::registry() {
        let orbit: BTreeSet<PatternSet> = c.patterns.symmetry_class();
        let Some(k) = orbit.iter().find_map(|o| index.get(o)) else {
            outside.push(c.id);
            continue;
        };
        let v = &vectors[*k];
        case_vec.insert(c.id, v);
        let series = c.eval_main(n + 1)?;
        let mine: Vec<String> = series.coeffs()[5..].iter().map(ToString::to_string).collect();
        if &mine != v {
            flagged.push(format!(
                "case {} series {} differs from its scan class {}",
                c.id,
                mine.join(","),
                v.join(",")
            ));
        }
    }
    let ids: Vec<u32> = case_vec.keys().copied().collect();
    for (a, ia) in ids.iter().enumerate() {
        for ib in &ids[a + 1..] {
            if case_vec[ia] == case_vec[ib] {
                let sa = catalog::evaluate_case(*ia, n + 1)?;
                let sb = catalog::evaluate_case(*ib, n + 1)?;
                if sa != sb {
                    flagged.push(format!(
                        "cases {ia} and {ib} share a scan class but their series differ"
                    ));
                }
            }
        }
    }

    let mut classes: Vec<WilfClass> = groups
        .into_iter()
        .map(|(counts, members)| {
            let member_sets: BTreeSet<&PatternSet> = members.iter().map(|&k| &triples[k]).collect();
            let cases = catalog::registry()
                .iter()
                .filter(|c| c.patterns.symmetry_class().iter().any(|o| member_sets.contains(o)))
                .map(|c| c.id)
                .collect();
            WilfClass {
                counts,
                members: members.iter().map(|&k| triples[k].to_string()).collect(),
                cases,
            }
        })
        .collect();
    classes.sort_by(|a, b| {
        b.members
            .len()
            .cmp(&a.members.len())
            .then_with(|| a.counts.cmp(&b.counts))
    });
    Ok(WilfScan {
        n,
        triples: triples.len(),
        classes,
        outside,
        flagged,
    })
}
