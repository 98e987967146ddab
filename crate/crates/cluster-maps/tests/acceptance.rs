//! Acceptance criteria. Every check is an exact equality; one line is printed per criterion.

use std::process::ExitCode;
use std::time::Instant;

use cluster_maps::report::{Report, SuiteSummary};
use cluster_maps::suites::{
    shifted_monomial_suite, annulus_formulas_suite, flip_transport_suite, lowest_term_reports, matrix_reports,
    pointedness_reports, positivity_suite, ptolemy_reports, spanning_report, square_suite, trace_cut_suite,
    triangle_anchor_reports, tropical_reports,
};
use cluster_maps::SuiteConfig;

struct Outcome {
    cases: usize,
    failures: Vec<Report>,
    notes: Vec<String>,
}

impl From<Vec<Report>> for Outcome {
    fn from(reports: Vec<Report>) -> Self {
        let cases = reports.len();
        Outcome { cases, failures: reports.into_iter().filter(|r| !r.equal).collect(), notes: vec![] }
    }
}

impl From<SuiteSummary> for Outcome {
    fn from(s: SuiteSummary) -> Self {
        Outcome { cases: s.cases, failures: s.failures, notes: s.notes }
    }
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("triangle anchor", Box::new(|| triangle_anchor_reports().into())),
        ("matrix mutation and compatibility identities on D4..D6", Box::new(|| matrix_reports(&[4, 5, 6]).into())),
        ("tropical coordinates under flips on D5 and A11", Box::new(|| tropical_reports(&SuiteConfig::default(), 100).into())),
        ("quantum trace flip compatibility", Box::new(|| flip_transport_suite().into())),
        ("lowest term of duality_A", Box::new(|| lowest_term_reports(&SuiteConfig::default()).into())),
        ("pointedness of duality_X", Box::new(|| pointedness_reports(&SuiteConfig::default()).into())),
        ("main commutative square", Box::new(|| square_suite(&SuiteConfig::default()).into())),
        ("trace-cut square", Box::new(|| trace_cut_suite(&SuiteConfig::default()).into())),
        ("annulus closed forms", Box::new(|| annulus_formulas_suite(&SuiteConfig::default()).into())),
        ("positivity of structure constants", Box::new(|| positivity_suite(&SuiteConfig::default()).into())),
        ("quantum exchange against cut on D4 and D5", Box::new(|| ptolemy_reports(&[4, 5]).into())),
        ("comparison with shifted arc monomials on D5", Box::new(|| shifted_monomial_suite(&SuiteConfig::default()).into())),
        ("independence and spanning on D4", Box::new(|| vec![spanning_report(2)].into())),
    ];
    println!("acceptance: seed {}", cfg.seed);
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let ok = o.failures.is_empty() && o.cases > 0;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({} cases, {} failed, {:.1}s)",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            o.cases,
            o.failures.len(),
            t.elapsed().as_secs_f64()
        );
        for n in &o.notes {
            println!("    note: {n}");
        }
        for f in o.failures.iter().take(3) {
            println!("    failure: {}", serde_json::to_string(f).unwrap_or_default());
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
