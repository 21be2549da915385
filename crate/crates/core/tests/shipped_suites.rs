use std::time::Instant;

use mvw::catalog;
use mvw::suites::{run, Outcome, Suite};
use mvw::Limits;

#[test]
fn every_shipped_example_passes_every_applicable_check() {
    let mut failures = Vec::new();
    for s in catalog::shipped() {
        let t = Instant::now();
        let results = run(&s, &Suite::ALL, &Limits::default());
        let skipped = results.iter().filter(|r| matches!(r.outcome, Outcome::Skipped(_))).count();
        println!("{:<16} {:>3} checks, {:>2} skipped, {:?}", s.name(), results.len(), skipped, t.elapsed());
        for r in results {
            if let Outcome::Fail(w) = &r.outcome {
                failures.push(format!("{} {}/{}: {w}", s.name(), r.suite, r.name));
            }
        }
    }
    // The closed forms of generated and principal P-filters, and the
    // identities built on them, lean on ab = ba. The 2×2 Boolean matrices
    // are the one non-commutative example and break exactly those.
    let expected: Vec<String> = ["pfilter-formula", "principal-meet", "principal-join", "mixed-exponents"]
        .iter()
        .map(|n| format!("M2(Z1) locale/{n}"))
        .collect();
    let names: Vec<String> = failures.iter().map(|f| f.split(':').next().unwrap().to_string()).collect();
    assert_eq!(names, expected, "{}", failures.join("\n"));
}
