use permavoid::catalog;
use permavoid::enumerate::count_avoiders;
use permavoid::recurrences::{self, forest222, ENGINES};
use permavoid::PatternSet;

fn catalog_counts(id: u32, n: usize) -> Vec<String> {
    let s = catalog::lookup(id).unwrap().eval_main(n + 1).unwrap();
    s.coeffs().iter().map(ToString::to_string).collect()
}

fn strs(t: &permavoid::CountTable) -> Vec<String> {
    t.counts().iter().map(ToString::to_string).collect()
}

#[test]
fn engines_match_enumeration() {
    for e in ENGINES {
        let t: PatternSet = catalog::lookup(e.case_id).unwrap().patterns.clone();
        let got = (e.run)(10).unwrap();
        assert_eq!(got, count_avoiders(&t, 10), "{} {}", e.case_id, e.name);
    }
}

#[test]
fn engines_match_catalog_beyond_enumeration() {
    for e in ENGINES {
        let got = strs(&(e.run)(16).unwrap());
        assert_eq!(got, catalog_counts(e.case_id, 16), "{} {}", e.case_id, e.name);
    }
}

#[test]
fn every_engine_audits_clean() {
    for e in ENGINES {
        if let Some(audit) = e.audit {
            audit(9).unwrap_or_else(|err| panic!("{} {}: {err}", e.case_id, e.name));
        }
    }
}

#[test]
fn engine_case_ids_are_registered() {
    for id in [131, 164, 194, 199, 222, 232, 242] {
        assert!(recurrences::engines_for(id).next().is_some(), "{id}");
    }
    assert_eq!(recurrences::engines_for(242).count(), 2);
    assert!(recurrences::engines_for(133).next().is_none());
}

#[test]
fn forest_levels_match_classified_avoiders() {
    let grown = forest222::forest(8).unwrap();
    let seen = forest222::classified(8);
    assert_eq!(grown.len(), seen.len());
    for (g, s) in grown.iter().zip(&seen) {
        assert_eq!(g.n, s.n);
        assert_eq!(g.counts, s.counts, "level {}", g.n);
    }
}

#[test]
fn forest_offspring_feed_next_level() {
    let levels = forest222::forest(12).unwrap();
    for w in levels.windows(2) {
        assert_eq!(w[0].offspring(), w[1].total());
    }
}

#[test]
fn forest_patterns_are_case_222() {
    let t: PatternSet = forest222::PATTERNS.parse().unwrap();
    assert!(t.symmetry_class().contains(&catalog::lookup(222).unwrap().patterns));
}
