//! Acceptance run: one PASS or FAIL line per criterion. Exits non-zero
//! when any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use mvw::axioms::{check_all, check_mv};
use mvw::builders::{build_luk_mv, direct_product};
use mvw::ideals::{
    chang_embedding, enumerate_homomorphisms, enumerate_ideals, first_iso, ideal_correspondence, maximal_ideals,
    nilradical, radical, radical_via_primes, Homomorphism,
};
use mvw::locale::finite_subcover;
use mvw::spectrum::spec;
use mvw::suites::{self, Outcome, Suite};
use mvw::{catalog, ElemSet, Error, Limits, MvAlgebra, MvwRig, Structure};
use mvw_dsl::elaborate::ElabError;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn limits() -> Limits {
    Limits::default()
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// Runs the named suite checks and fails on the first FAIL outcome.
fn suite_checks(s: &Structure, suite: Suite, names: &[&str]) -> Result<usize, String> {
    let mut passed = 0;
    for r in suites::run(s, &[suite], &limits()) {
        if !names.is_empty() && !names.contains(&r.name) {
            continue;
        }
        match r.outcome {
            Outcome::Pass => passed += 1,
            Outcome::Fail(w) => return Err(format!("{}: {}/{}: {w}", s.name(), r.suite, r.name)),
            Outcome::Skipped(_) => {}
        }
    }
    Ok(passed)
}

fn commutative_unital(r: &MvwRig) -> bool {
    r.is_commutative() && r.unit().is_some()
}

// Oracles computed straight from the tables, without the library's
// ideal or spectrum code.

fn leq(r: &MvwRig, x: usize, y: usize) -> bool {
    r.add(r.neg(x), y) == r.top()
}

fn brute_ideal(r: &MvwRig, s: &[bool]) -> bool {
    let n = r.size();
    s[r.zero()]
        && (0..n).all(|a| {
            !s[a]
                || (0..n).all(|b| {
                    (!leq(r, b, a) || s[b]) && (!s[b] || s[r.add(a, b)]) && s[r.mul(a, b)] && s[r.mul(b, a)]
                })
        })
}

fn brute_proper_primes(r: &MvwRig) -> Vec<Vec<usize>> {
    let n = r.size();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let s: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        if s.iter().all(|&b| b) || !brute_ideal(r, &s) {
            continue;
        }
        if (0..n).all(|a| (0..n).all(|b| !s[r.mul(a, b)] || s[a] || s[b])) {
            out.push((0..n).filter(|&i| s[i]).collect());
        }
    }
    out
}

fn brute_mv_primes(mv: &MvAlgebra) -> Vec<ElemSet> {
    let n = mv.size();
    let le = |x: usize, y: usize| mv.add(mv.neg(x), y) == mv.top();
    let meet = |x: usize, y: usize| (0..n).filter(|&z| le(z, x) && le(z, y)).find(|&z| (0..n).all(|w| !(le(w, x) && le(w, y)) || le(w, z))).unwrap();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let s: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        let ideal = s[mv.zero()]
            && (0..n).all(|a| !s[a] || (0..n).all(|b| (!le(b, a) || s[b]) && (!s[b] || s[mv.add(a, b)])));
        let proper = s.iter().any(|&b| !b);
        if ideal && proper && (0..n).all(|a| (0..n).all(|b| !s[meet(a, b)] || s[a] || s[b])) {
            out.push(ElemSet::from_elems(n, (0..n).filter(|&i| s[i])));
        }
    }
    out
}

fn axiom_suite() -> Verdict {
    let start = Instant::now();
    let families = catalog::axiom_families();
    let mut checked = 0;
    for r in &families {
        let report = check_all(r);
        if !report.passed() {
            return Err(format!("{} fails {}", r.name(), report.witnesses()[0].axiom));
        }
        checked += 1;
    }
    for i in 0..families.len() {
        for j in i..families.len() {
            if families[i].size() * families[j].size() > 4096 {
                continue;
            }
            let p = direct_product(&[&families[i], &families[j]], &limits()).map_err(|e| e.to_string())?;
            let report = check_all(&p);
            if !report.passed() {
                return Err(format!("{} fails {}", p.name(), report.witnesses()[0].axiom));
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("{checked} rigs in {elapsed:.2?}"))
}

fn closure_diagnostic() -> Verdict {
    for (n, w) in [(3, ["1/2", "1/2", "1/4"]), (4, ["1/3", "1/3", "1/9"])] {
        // Directly from the chain ...
        match build_luk_mv(n).unwrap().attach_real_product() {
            Err(Error::ClosureViolation { op: "mul", inputs, value }) if inputs == w[..2] && value == w[2] => {}
            other => return Err(format!("L{n} real product: {other:?}")),
        }
        // ... and through the text format.
        let text = std::fs::read_to_string(root().join(format!("algebras/luk{n}_realprod.mvw"))).unwrap();
        match mvw_dsl::load(&text, &limits()) {
            Err(ElabError::Invalid(d)) if d.0[0].witness.as_deref() == Some(&w.map(String::from)[..]) => {}
            other => return Err(format!("luk{n}_realprod.mvw: {other:?}")),
        }
    }
    Ok("L3 at (1/2, 1/2) -> 1/4, L4 at (1/3, 1/3) -> 1/9".into())
}

fn law_suites() -> Verdict {
    let mut total = 0;
    let mut examples = 0;
    for s in catalog::shipped() {
        if s.mv().size() > 16 {
            continue;
        }
        total += suite_checks(&s, Suite::Core, &[])?;
        examples += 1;
    }
    Ok(format!("{total} checks on {examples} examples"))
}

fn ideal_theory() -> Verdict {
    let lim = limits();
    let rigs = catalog::shipped_rigs();
    for s in catalog::shipped() {
        suite_checks(&s, Suite::Ideals, &["ideal-congruence", "quotient"])?;
    }
    let mut homs = 0;
    for a in rigs.iter().filter(|r| r.size() <= 4) {
        for b in &rigs {
            for map in enumerate_homomorphisms(a, b) {
                let f = Homomorphism::new(a, b, map).map_err(|e| e.to_string())?;
                first_iso(&f).map_err(|e| format!("{} -> {}: {e}", a.name(), b.name()))?;
                homs += 1;
            }
        }
    }
    let mut corr = 0;
    for r in rigs.iter().filter(|r| r.size() <= 9) {
        for i in enumerate_ideals(r, &lim).map_err(|e| e.to_string())? {
            ideal_correspondence(r, &i, &lim).map_err(|e| format!("{}: {e}", r.name()))?;
            corr += 1;
        }
    }
    for r in rigs.iter().filter(|r| r.is_commutative()) {
        for i in enumerate_ideals(r, &lim).map_err(|e| e.to_string())? {
            let by_def = radical(r, &i).map_err(|e| e.to_string())?;
            if by_def != radical_via_primes(r, &i, &lim).map_err(|e| e.to_string())? {
                return Err(format!("{}: radical of {:?}", r.name(), i.to_vec()));
            }
        }
        suite_checks(&Structure::Rig(r.clone()), Suite::Ideals, &["nilradical"])?;
    }
    let t3 = catalog::by_name("T3").unwrap();
    let t3 = t3.rig().unwrap();
    let n = nilradical(t3).map_err(|e| e.to_string())?;
    let sp = spec(t3, &lim).map_err(|e| e.to_string())?;
    if !n.is_full() || sp.num_points() != 0 || !brute_proper_primes(t3).is_empty() {
        return Err("T3 should have N = A and an empty spectrum".into());
    }
    Ok(format!("{homs} homomorphisms, {corr} correspondences; T3 has N = A, Spec = {{}}"))
}

fn spectrum() -> Verdict {
    let lim = limits();
    let mut n = 0;
    for r in catalog::shipped_rigs().iter().filter(|r| r.is_commutative()) {
        let s = Structure::Rig(r.clone());
        let sp = spec(r, &lim).map_err(|e| e.to_string())?;
        let oracle = brute_proper_primes(r);
        let found: Vec<Vec<usize>> = sp.points().iter().map(ElemSet::to_vec).collect();
        let mut oracle_sorted = oracle.clone();
        oracle_sorted.sort();
        let mut found_sorted = found.clone();
        found_sorted.sort();
        if oracle_sorted != found_sorted {
            return Err(format!("{}: points {found:?}, oracle {oracle:?}", r.name()));
        }
        suite_checks(&s, Suite::Spectrum, &["t0", "specialization", "topology", "set-closure"])?;
        if commutative_unital(r) {
            suite_checks(&s, Suite::Spectrum, &["base-laws", "nilpotent-open", "irreducible"])?;
            // The trivial rig has no maximal ideals at all.
            let maximal = match maximal_ideals(r, &lim) {
                Err(Error::Trivial) => Vec::new(),
                other => other.map_err(|e| e.to_string())?,
            };
            let unique_max = maximal.len() == 1;
            if sp.is_irreducible() != unique_max {
                return Err(format!("{}: irreducible {} but unique maximal {unique_max}", r.name(), sp.is_irreducible()));
            }
        }
        n += 1;
    }
    let count = |name: &str| brute_proper_primes(catalog::by_name(name).unwrap().rig().unwrap()).len();
    let golden = |name: &str| {
        std::fs::read_to_string(root().join(format!("crates/cli/tests/golden/spec_{name}.dot")))
            .unwrap()
            .lines()
            .filter(|l| l.contains("[label="))
            .count()
    };
    if count("Z3") != 1 || count("Z1xZ1") != 2 || golden("z3") != 1 || golden("z1xz1") != 2 {
        return Err("Spec(Z3) must have 1 point and Spec(Z1xZ1) 2".into());
    }
    Ok(format!("{n} commutative examples; |Spec(Z3)| = 1, |Spec(Z1xZ1)| = 2"))
}

fn locale() -> Verdict {
    let mut n = 0;
    for r in catalog::shipped_rigs().iter().filter(|r| commutative_unital(r) && r.size() <= 9) {
        let s = Structure::Rig(r.clone());
        let passed = suite_checks(
            &s,
            Suite::Locale,
            &["theta", "principal-meet", "principal-join", "mixed-exponents", "distributive", "pfilter-formula"],
        )?;
        if passed != 6 {
            return Err(format!("{}: only {passed} of 6 locale checks ran", r.name()));
        }
        n += 1;
    }
    for s in catalog::shipped() {
        if s.rig().is_some_and(commutative_unital) {
            suite_checks(&s, Suite::Spectrum, &["compact"])?;
        }
    }
    let z = catalog::by_name("Z1xZ1").unwrap();
    let z = z.rig().unwrap();
    let (a, b) = (z.carrier().find("(0,1)").unwrap(), z.carrier().find("(1,0)").unwrap());
    let sp = spec(z, &limits()).map_err(|e| e.to_string())?;
    if !sp.basic_open(a).union(sp.basic_open(b)).is_full() {
        return Err("V((0,1)) and V((1,0)) should cover Spec(Z1xZ1)".into());
    }
    let sub = finite_subcover(z, &[a, b]).map_err(|e| e.to_string())?;
    let covered = sub.iter().fold(ElemSet::empty(sp.num_points()), |u, &g| u.union(sp.basic_open(g)));
    if !covered.is_full() || sub.iter().any(|g| ![a, b].contains(g)) {
        return Err(format!("bad subcover {sub:?}"));
    }
    Ok(format!("{n} examples; two-generator cover of Spec(Z1xZ1) reduces to {} open(s)", sub.len()))
}

fn chang() -> Verdict {
    let lim = limits();
    let mut mvs: Vec<MvAlgebra> = catalog::shipped_rigs().into_iter().map(MvwRig::into_mv).collect();
    mvs.extend(catalog::shipped_mv());
    let mut n = 0;
    for mv in mvs.iter().filter(|m| m.size() > 1 && m.size() <= 9) {
        let e = chang_embedding(mv, &lim).map_err(|e| format!("{}: {e}", mv.name()))?;
        let oracle = brute_mv_primes(mv);
        let mut primes = e.primes.clone();
        primes.sort();
        let mut sorted = oracle.clone();
        sorted.sort();
        if primes != sorted {
            return Err(format!("{}: MV-primes differ from the oracle", mv.name()));
        }
        // Injective: only 0 lies in every MV-prime.
        let common = oracle.iter().fold(ElemSet::full(mv.size()), |acc, p| acc.intersection(p));
        if common.to_vec() != vec![mv.zero()] || e.factors.iter().any(|q| !q.is_chain()) {
            return Err(format!("{}: embedding fails", mv.name()));
        }
        if !check_mv(mv).passed() {
            return Err(format!("{} is not an MV-algebra", mv.name()));
        }
        n += 1;
    }
    Ok(format!("{n} MV-algebras"))
}

fn cli_contract() -> Verdict {
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_mvw"))
            .args(args)
            .current_dir(root())
            .env_remove("MVW_SIZE_BOUND")
            .output()
            .unwrap();
        (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
    };
    let golden = |f: &str| std::fs::read_to_string(root().join("crates/cli/tests/golden").join(f)).unwrap();
    let tmp = std::env::temp_dir().join(format!("mvw-acceptance-{}.dot", std::process::id()));
    for a in ["z3", "z1xz1"] {
        let file = format!("algebras/{a}.mvw");
        let (code, out) = run(&["check", &file]);
        if code != 0 || out != golden(&format!("check_{a}.txt")) {
            return Err(format!("check {a}"));
        }
        let (code, _) = run(&["spec", &file, "--dot", tmp.to_str().unwrap()]);
        if code != 0 || std::fs::read_to_string(&tmp).unwrap() != golden(&format!("spec_{a}.dot")) {
            return Err(format!("spec --dot {a}"));
        }
        let (code, out) = run(&["verify", &file, "--suite", "all"]);
        if code != 0 || out != golden(&format!("verify_{a}.txt")) {
            return Err(format!("verify {a}"));
        }
    }
    let _ = std::fs::remove_file(&tmp);
    let (code, out) = run(&["check", "algebras/z3_corrupt.mvw"]);
    if code != 1 || !out.contains("witness (3)") {
        return Err(format!("corrupted table exited {code}"));
    }
    let (code, _) = run(&["check", "algebras/luk3_realprod.mvw"]);
    if code != 2 {
        return Err(format!("closure violation exited {code}"));
    }
    Ok("goldens match; corrupted table exits 1 with a witness".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("axiom suite", axiom_suite),
        ("closure diagnostic", closure_diagnostic),
        ("exhaustive law suites", law_suites),
        ("ideal theory", ideal_theory),
        ("spectrum", spectrum),
        ("locale", locale),
        ("Chang embedding", chang),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
