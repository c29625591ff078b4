//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigUint;
use num_rational::BigRational;
use permavoid::catalog::{self, verify_specs};
use permavoid::enumerate::{count_avoiders, count_filtered, factorial};
use permavoid::recurrences::{self, case118};
use permavoid::series::{catalan, rat, RationalSeries};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const ORACLE_N: usize = 9;

fn ints(s: &RationalSeries) -> Vec<String> {
    s.coeffs().iter().map(ToString::to_string).collect()
}

fn strs(v: &[BigUint]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn oracle_agreement() -> Check {
    for c in catalog::registry() {
        let want = strs(count_avoiders(&c.patterns, ORACLE_N).counts());
        let got = ints(&c.eval_main(ORACLE_N + 1).map_err(|e| format!("case {}: {e}", c.id))?);
        if got != want {
            let n = got.iter().zip(&want).position(|(a, b)| a != b).unwrap_or(0);
            return Err(format!("case {} differs at n={n}: {} vs {}", c.id, got[n], want[n]));
        }
    }
    Ok(format!("{} cases, n <= {ORACLE_N}", catalog::registry().len()))
}

fn small_n() -> Check {
    for c in catalog::registry() {
        let t = count_avoiders(&c.patterns, 4);
        for n in 0..=3 {
            if t.counts()[n] != factorial(n) {
                return Err(format!("case {}: a({n}) = {}", c.id, t.counts()[n]));
            }
        }
        if t.counts()[4] != BigUint::from(21u32) {
            return Err(format!("case {}: a(4) = {}", c.id, t.counts()[4]));
        }
    }
    Ok("a(n) = n! for n <= 3 and a(4) = 21 on every triple".into())
}

fn engines() -> Check {
    let want_ids = [131, 164, 194, 199, 222, 232, 242];
    let mut ran = Vec::new();
    for e in recurrences::ENGINES {
        let case = catalog::lookup(e.case_id).map_err(|x| x.to_string())?;
        let oracle = strs(count_avoiders(&case.patterns, ORACLE_N).counts());
        let cat = ints(&case.eval_main(ORACLE_N + 1).map_err(|x| x.to_string())?);
        let got = strs((e.run)(ORACLE_N).map_err(|x| x.to_string())?.counts());
        if got != oracle || cat != oracle {
            return Err(format!(
                "{} {}: engine {:?}, oracle {:?}",
                e.case_id, e.name, got, oracle
            ));
        }
        if let Some(audit) = e.audit {
            audit(ORACLE_N).map_err(|x| x.to_string())?;
        }
        ran.push(format!("{}/{}", e.case_id, e.name));
    }
    for id in want_ids {
        if !recurrences::engines_for(id).any(|_| true) {
            return Err(format!("no engine for case {id}"));
        }
    }
    Ok(ran.join(" "))
}

fn anchors() -> Check {
    let order = 7;
    let div = |num: &[i64], den: &[i64]| -> Vec<String> {
        let n = RationalSeries::from_i64s(num).truncate(order);
        let d = RationalSeries::from_i64s(den);
        let pad = |s: RationalSeries| {
            let mut c = s.coeffs().to_vec();
            c.resize(order, rat(0));
            RationalSeries::new(c)
        };
        ints(&pad(n).div(&pad(d)).unwrap())
    };
    let expect = |got: Vec<String>, want: &[i64], what: &str| -> std::result::Result<(), String> {
        let want: Vec<String> = want.iter().map(ToString::to_string).collect();
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: {got:?}"))
        }
    };
    expect(
        div(&[1, -2], &[1, -3, 1]),
        &[1, 1, 2, 5, 13, 34, 89],
        "(1-2x)/(1-3x+x^2)",
    )?;
    expect(div(&[1, -1], &[1, -2]), &[1, 1, 2, 4, 8, 16, 32], "(1-x)/(1-2x)")?;
    expect(ints(&catalan(6)), &[1, 1, 2, 5, 14, 42], "Catalan")?;
    Ok("odd Fibonacci, powers of two, Catalan prefixes".into())
}

fn auxiliary_filters() -> Check {
    let checks = [(106, "J"), (77, "H"), (163, "H"), (182, "G2"), (214, "G2"), (103, "G2")];
    let n = 8;
    let mut done = Vec::new();
    for (id, name) in checks {
        let case = catalog::lookup(id).map_err(|e| e.to_string())?;
        let (s, f) = catalog::evaluate_auxiliary(id, name, n + 1).map_err(|e| e.to_string())?;
        let want = strs(
            count_filtered(&case.patterns, n, &f)
                .map_err(|e| e.to_string())?
                .counts(),
        );
        if ints(&s) != want {
            return Err(format!("{id} {name} ({f}): {:?} vs {want:?}", ints(&s)));
        }
        done.push(format!("{id} {name} [{f}]"));
    }
    Ok(done.join("; "))
}

const ORDER: usize = 24;

fn arb_coeff() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn arb_series() -> impl Strategy<Value = RationalSeries> {
    prop::collection::vec(arb_coeff(), ORDER).prop_map(RationalSeries::new)
}

fn arb_unit() -> impl Strategy<Value = RationalSeries> {
    (arb_series(), prop_oneof![1i64..=4, -4i64..=-1]).prop_map(|(s, c)| {
        let mut v = s.coeffs().to_vec();
        v[0] = rat(c);
        RationalSeries::new(v)
    })
}

fn with_constant(s: RationalSeries, c: i64) -> RationalSeries {
    let mut v = s.coeffs().to_vec();
    v[0] = rat(c);
    RationalSeries::new(v)
}

fn run_prop<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> std::result::Result<(), TestCaseError>,
) -> std::result::Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 100,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn series_properties() -> Check {
    run_prop("ring laws", (arb_series(), arb_series(), arb_series()), |(a, b, c)| {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&RationalSeries::one(ORDER)), a);
        Ok(())
    })?;
    run_prop("div/mul round trip", (arb_series(), arb_unit()), |(a, b)| {
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
        prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
        Ok(())
    })?;
    run_prop("sqrt/square round trip", arb_series(), |b| {
        let b = with_constant(b, 1);
        let sq = b.mul(&b);
        prop_assert_eq!(sq.sqrt().unwrap(), b.clone());
        let r = b.sqrt().unwrap();
        prop_assert_eq!(r.mul(&r), b);
        Ok(())
    })?;
    run_prop("compose identity", (arb_series(), arb_series()), |(a, b)| {
        let x = RationalSeries::monomial(1, ORDER);
        prop_assert_eq!(a.compose(&x).unwrap(), a.clone());
        let b0 = with_constant(b, 0);
        prop_assert_eq!(x.compose(&b0).unwrap(), b0);
        Ok(())
    })?;
    run_prop("C = 1 + xC^2", 1usize..=ORDER, |order| {
        let c = catalan(order);
        let rhs = RationalSeries::one(order).add(&c.mul(&c).shift_up(1));
        prop_assert_eq!(c, rhs);
        Ok(())
    })?;
    Ok(format!("5 suites x 100 instances at order {ORDER}"))
}

fn recurrence_118() -> Check {
    let order = 20;
    let sum = case118::j_sum_stable(order).map_err(|e| e.to_string())?;
    let (closed, _) = catalog::evaluate_auxiliary(118, "J", order).map_err(|e| e.to_string())?;
    if sum != closed {
        return Err(format!("{:?} vs {:?}", ints(&sum), ints(&closed)));
    }
    Ok(format!("stabilized sum equals the closed form to order {order}"))
}

fn negative_control() -> Check {
    let ids = [90, 133, 164, 175, 199];
    let mut localized = 0;
    for id in ids {
        let case = catalog::lookup(id).map_err(|e| e.to_string())?;
        let leaves = case.main.as_expr().map_or(0, |e| e.poly_leaves());
        for leaf in 0..leaves {
            let bad = case.corrupted(leaf, 0, 1).ok_or("no such leaf")?;
            let mut specs = catalog::registry().to_vec();
            let slot = specs.iter_mut().find(|c| c.id == id).unwrap();
            *slot = bad;
            let reports = verify_specs(&specs, 8).map_err(|e| e.to_string())?;
            let failing: Vec<u32> = reports.iter().filter(|r| !r.passed()).map(|r| r.case_id).collect();
            if failing != [id] {
                return Err(format!("corrupting case {id} leaf {leaf} fails {failing:?}"));
            }
            let r = reports.iter().find(|r| r.case_id == id).unwrap();
            let d = permavoid::cli::describe_divergence(r).ok_or("no divergence reported")?;
            if !d.contains("at n=") {
                return Err(format!("report not localized: {d}"));
            }
            localized += 1;
        }
    }
    let args = [
        "permavoid",
        "verify",
        "--all",
        "--n",
        "8",
        "--corrupt",
        "133",
        "--corrupt",
        "164",
        "--corrupt",
        "90:1:1:-1",
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = permavoid::cli::run(args, &mut out, &mut err);
    let text = String::from_utf8_lossy(&out);
    if code != 1 || !text.contains("32/35 pass") || text.matches("first divergence").count() != 3 {
        return Err(format!("cli exit {code}:\n{text}"));
    }
    Ok(format!(
        "{localized} single-coefficient mutations on {} cases all caught and localized",
        ids.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("full-suite oracle agreement", oracle_agreement),
        ("universal small-n counts", small_n),
        ("recurrence engines vs oracle and catalog", engines),
        ("known-sequence anchors", anchors),
        ("filtered auxiliary series", auxiliary_filters),
        ("series algebra properties", series_properties),
        ("series-valued recurrence vs closed form", recurrence_118),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", k + 1);
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
