//! A small seeded search for counterexamples to the agreement of the
//! socle/parameter conditions.

use socle_lab::cli::{random_search, SearchConfig, SearchTarget};
use socle_lab::FieldSpec;

fn main() {
    for (field, target) in [
        (FieldSpec::prime(5).unwrap(), SearchTarget::Spc),
        (FieldSpec::Rationals, SearchTarget::Spc),
        (FieldSpec::prime(5).unwrap(), SearchTarget::Split),
    ] {
        let config = SearchConfig {
            seed: 7,
            count: 40,
            field,
            vars: 3,
            target,
            ..SearchConfig::default()
        };
        let report = random_search(&config);
        let s = &report.document.summary;
        println!(
            "{field} {:?}: {} checked, {} skipped, {} counterexamples",
            target,
            s.tasks,
            report.skipped,
            report.counterexamples.len()
        );
    }
}
