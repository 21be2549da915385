//! `mvw`: check, explore and export finite MV-algebras and MVW-rigs
//! described in `.mvw` files.
//!
//! Exit status is 0 when everything checked holds, 1 when a property
//! fails (a witness is printed), and 2 for unreadable or invalid input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mvw::axioms::{check_all, check_mv, AxiomReport};
use mvw::ideals::{check_ideal, check_mv_ideal, quotient, quotient_mv, IdealViolation};
use mvw::locale::{frame, principal_pfilter};
use mvw::spectrum::spec;
use mvw::suites::{self, Suite};
use mvw::{ElemSet, Limits, MvAlgebra, MvwRig, Structure};
use mvw_dsl::elaborate::{elaborate, elaborate_unchecked, Env};
use mvw_dsl::json::{self, to_canonical};
use mvw_dsl::{parse, ElabError};

#[derive(Parser)]
#[command(name = "mvw", version, about = "Finite MV-algebras and MVW-rigs: axioms, ideals, spectra and P-filters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// A `.mvw` source file.
    file: PathBuf,
    /// Which algebra of the file to use; defaults to the last one.
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the MV-algebra and MVW-rig axioms exhaustively.
    Check {
        #[command(flatten)]
        input: Input,
        /// Check only the MV-algebra axioms, ignoring any product.
        #[arg(long)]
        mv_only: bool,
    },
    /// List the ideals with their classification.
    Ideals {
        #[command(flatten)]
        input: Input,
        /// Only proper prime ideals.
        #[arg(long, group = "kind")]
        prime: bool,
        /// Only proper MV-prime ideals.
        #[arg(long, group = "kind")]
        mv_prime: bool,
        /// Only maximal proper ideals.
        #[arg(long, group = "kind")]
        maximal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Form the quotient by an ideal.
    Quotient {
        #[command(flatten)]
        input: Input,
        /// Comma-separated element names, e.g. `0,1` or `(0,0),(1,0)`.
        #[arg(long)]
        ideal: String,
        /// Write the quotient as a JSON document.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The prime spectrum and its topology.
    Spec {
        #[command(flatten)]
        input: Input,
        /// Write the specialization order as DOT (`-` for standard output).
        #[arg(long, conflicts_with = "json")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// P-filters and the frame they form.
    Filters {
        #[command(flatten)]
        input: Input,
        /// Only the principal P-filter of this element.
        #[arg(long, conflicts_with = "frame")]
        principal: Option<String>,
        /// Also print the covering relation of the frame.
        #[arg(long)]
        frame: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the property suites.
    Verify {
        /// Not needed with `--list`.
        file: Option<PathBuf>,
        #[arg(long)]
        algebra: Option<String>,
        /// `core`, `ideals`, `spectrum`, `locale` or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Print each check with the statement it verifies instead of running.
        #[arg(long)]
        list: bool,
    },
    /// Parse a file and print it in canonical form.
    Parse {
        #[command(flatten)]
        input: Input,
        /// Print the elaborated algebra as JSON instead.
        #[arg(long)]
        emit_json: bool,
    },
}

/// Why a command stopped early, with the exit status to report.
enum Stop {
    /// A property failed; the report is already printed.
    Failed,
    /// The input could not be used.
    Input(String),
}

impl From<std::io::Error> for Stop {
    fn from(e: std::io::Error) -> Self {
        input_error(e.to_string())
    }
}

type Outcome = Result<(), Stop>;

fn input_error(msg: impl Into<String>) -> Stop {
    Stop::Input(format!("error: {}", msg.into()))
}

/// Splits on commas that are not inside parentheses, so that names of
/// product elements such as `(0,1)` stay whole.
fn split_names(list: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0usize;
    for ch in list.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().unwrap().push(ch);
    }
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn tuple(mv: &MvAlgebra, xs: &[usize]) -> String {
    let names: Vec<&str> = xs.iter().map(|&x| mv.elem_name(x)).collect();
    format!("({})", names.join(", "))
}

fn set(mv: &MvAlgebra, s: &ElemSet) -> String {
    let names: Vec<&str> = s.iter().map(|x| mv.elem_name(x)).collect();
    format!("{{{}}}", names.join(", "))
}

fn kind(s: &Structure) -> &'static str {
    if s.rig().is_some() {
        "MVW-rig"
    } else {
        "MV-algebra"
    }
}

fn report_text(mv: &MvAlgebra, report: &AxiomReport) -> String {
    let mut out = String::new();
    for &axiom in report.checked() {
        match report.witness(axiom) {
            None => writeln!(out, "  PASS  {:<13} {}", axiom.label(), axiom.statement()),
            Some(w) => writeln!(
                out,
                "  FAIL  {:<13} {}  witness {}",
                axiom.label(),
                axiom.statement(),
                tuple(mv, &w.tuple)
            ),
        }
        .unwrap();
    }
    out
}

/// Reads the file and elaborates the chosen algebra. Earlier algebras are
/// elaborated with full checks since later ones may build on them.
fn load_source(input: &Input, limits: &Limits) -> Result<(String, mvw_dsl::ast::Algebra, Env), Stop> {
    let text = std::fs::read_to_string(&input.file).map_err(|e| input_error(format!("{}: {e}", input.file.display())))?;
    let file = parse(&text).map_err(|d| located(&input.file, &d.to_string()))?;
    let target = match &input.algebra {
        Some(name) => file
            .algebras
            .iter()
            .position(|a| &a.name == name)
            .ok_or_else(|| input_error(format!("{}: no algebra named {name}", input.file.display())))?,
        None => file.algebras.len() - 1,
    };
    let mut env = Env::new();
    for a in &file.algebras[..target] {
        let s = elaborate(a, &env, limits).map_err(|e| elab_stop(&input.file, e))?;
        env.insert(a.name.clone(), s);
    }
    Ok((text, file.algebras[target].clone(), env))
}

/// Diagnostics already say `error:`; prefix each line with the file.
fn located(path: &Path, diagnostics: &str) -> Stop {
    Stop::Input(diagnostics.lines().map(|l| format!("{}:{l}", path.display())).collect::<Vec<_>>().join("\n"))
}

fn elab_stop(path: &Path, e: ElabError) -> Stop {
    match e {
        ElabError::Invalid(d) => located(path, &d.to_string()),
        ElabError::Axioms { structure, report } => {
            print!("{} ({}, {} elements) is not valid:\n{}", structure.name(), kind(&structure), structure.mv().size(), report_text(structure.mv(), &report));
            Stop::Failed
        }
    }
}

fn load(input: &Input, limits: &Limits) -> Result<Structure, Stop> {
    let (_, alg, env) = load_source(input, limits)?;
    elaborate(&alg, &env, limits).map_err(|e| elab_stop(&input.file, e))
}

fn need_rig(s: &Structure) -> Result<&MvwRig, Stop> {
    s.rig().ok_or_else(|| input_error(format!("{} is an MV-algebra without a product", s.name())))
}

fn element(mv: &MvAlgebra, name: &str) -> Result<usize, Stop> {
    mv.carrier().find(name.trim()).ok_or_else(|| input_error(format!("{} has no element {name}", mv.name())))
}

fn cmd_check(input: &Input, mv_only: bool, limits: &Limits) -> Outcome {
    let (_, alg, env) = load_source(input, limits)?;
    let s = elaborate_unchecked(&alg, &env, limits).map_err(|e| elab_stop(&input.file, e))?;
    let report = match (s.rig(), mv_only) {
        (Some(r), false) => check_all(r),
        _ => check_mv(s.mv()),
    };
    let what = if mv_only { "MV-algebra" } else { kind(&s) };
    println!("{} ({what}, {} elements)", s.name(), s.mv().size());
    print!("{}", report_text(s.mv(), &report));
    let failed = report.witnesses().len();
    if failed == 0 {
        println!("result: PASS");
        Ok(())
    } else {
        println!("result: FAIL ({failed} of {} axioms)", report.checked().len());
        Err(Stop::Failed)
    }
}

fn cmd_ideals(input: &Input, prime: bool, mv_prime: bool, maximal: bool, as_json: bool, limits: &Limits) -> Outcome {
    let s = load(input, limits)?;
    if prime {
        need_rig(&s)?;
    }
    let mut doc = json::ideals_doc(&s, limits).map_err(|e| input_error(e.to_string()))?;
    doc.ideals.retain(|e| {
        (!prime || (e.proper && e.prime == Some(true)))
            && (!mv_prime || (e.proper && e.mv_prime))
            && (!maximal || (e.proper && e.maximal))
    });
    if as_json {
        print!("{}", to_canonical(&doc));
        return Ok(());
    }
    let mv = s.mv();
    let which = if prime {
        "prime ideals"
    } else if mv_prime {
        "MV-prime ideals"
    } else if maximal {
        "maximal ideals"
    } else if s.rig().is_some() {
        "ideals"
    } else {
        "MV-ideals"
    };
    println!("{}: {} {which}", s.name(), doc.ideals.len());
    let rows: Vec<(String, String)> = doc
        .ideals
        .iter()
        .map(|e| {
            let members = set(mv, &ElemSet::from_elems(mv.size(), e.members.iter().copied()));
            let mut tags = Vec::new();
            if !e.proper {
                tags.push("improper");
            } else {
                if e.prime == Some(true) {
                    tags.push("prime");
                }
                if e.mv_prime {
                    tags.push("mv-prime");
                }
                if e.maximal {
                    tags.push("maximal");
                }
            }
            (members, tags.join(" "))
        })
        .collect();
    let width = rows.iter().map(|(m, _)| m.chars().count()).max().unwrap_or(0);
    for (m, tags) in rows {
        println!("  {m:<width$}  {tags}");
    }
    Ok(())
}

fn violation(mv: &MvAlgebra, v: &IdealViolation) -> String {
    format!("not an ideal: {} fails at {}", v.clause, tuple(mv, &v.witness))
}

fn cmd_quotient(input: &Input, ideal: &str, output: Option<&Path>, limits: &Limits) -> Outcome {
    let s = load(input, limits)?;
    let mv = s.mv();
    let elems = split_names(ideal).iter().map(|n| element(mv, n)).collect::<Result<Vec<_>, _>>()?;
    let i = ElemSet::from_elems(mv.size(), elems);
    let (q, classes, report) = match s.rig() {
        Some(r) => {
            if let Some(v) = check_ideal(r, &i) {
                println!("{}", violation(mv, &v));
                return Err(Stop::Failed);
            }
            let q = quotient(r, &i).map_err(|e| input_error(e.to_string()))?;
            let report = check_all(&q.rig);
            (Structure::Rig(q.rig), q.congruence.classes(), report)
        }
        None => {
            if let Some(v) = check_mv_ideal(mv, &i) {
                println!("{}", violation(mv, &v));
                return Err(Stop::Failed);
            }
            let (q, c) = quotient_mv(mv, &i).map_err(|e| input_error(e.to_string()))?;
            let report = check_mv(&q);
            (Structure::Mv(q), c.classes(), report)
        }
    };
    println!("{}: {} classes", q.name(), classes.len());
    for (k, class) in classes.iter().enumerate() {
        println!("  {} = {}", q.mv().elem_name(k), set(mv, &ElemSet::from_elems(mv.size(), class.iter().copied())));
    }
    if let Some(path) = output {
        std::fs::write(path, to_canonical(&json::rig_doc(&q)))?;
    }
    if report.passed() {
        Ok(())
    } else {
        print!("the quotient breaks an axiom:\n{}", report_text(q.mv(), &report));
        Err(Stop::Failed)
    }
}

fn cmd_spec(input: &Input, dot: Option<&Path>, as_json: bool, limits: &Limits) -> Outcome {
    let s = load(input, limits)?;
    let r = need_rig(&s)?;
    if !r.is_commutative() {
        return Err(input_error(format!("{}: the spectrum needs a commutative product", r.name())));
    }
    let sp = spec(r, limits).map_err(|e| input_error(e.to_string()))?;
    if as_json {
        print!("{}", to_canonical(&json::spec_doc(&sp, r)));
        return Ok(());
    }
    if let Some(path) = dot {
        let text = sp.to_dot(r);
        if path == Path::new("-") {
            print!("{text}");
        } else {
            std::fs::write(path, text)?;
        }
        return Ok(());
    }
    let n = sp.num_points();
    println!("Spec({}): {n} point{}", r.name(), if n == 1 { "" } else { "s" });
    for (i, p) in sp.points().iter().enumerate() {
        println!("  p{i} = {}", set(r, p));
    }
    let points = |u: &ElemSet| -> String {
        let names: Vec<String> = u.iter().map(|p| format!("p{p}")).collect();
        format!("{{{}}}", names.join(", "))
    };
    println!("basic opens:");
    for a in r.elements() {
        println!("  V({}) = {}", r.elem_name(a), points(sp.basic_open(a)));
    }
    println!("{} open sets", sp.opens().len());
    Ok(())
}

fn cmd_filters(input: &Input, principal: Option<&str>, show_frame: bool, as_json: bool, limits: &Limits) -> Outcome {
    let s = load(input, limits)?;
    let r = need_rig(&s)?;
    if let Some(name) = principal {
        let a = element(r, name)?;
        let f = principal_pfilter(r, a);
        if as_json {
            print!("{}", to_canonical(&json::PrincipalDoc { algebra: r.name().to_string(), element: name.trim().to_string(), members: f.to_vec() }));
        } else {
            println!("F_{} = {}", r.elem_name(a), set(r, &f));
        }
        return Ok(());
    }
    let fr = frame(r, limits).map_err(|e| input_error(e.to_string()))?;
    if as_json {
        print!("{}", to_canonical(&json::frame_doc(&fr, r)));
        return Ok(());
    }
    println!("{}: {} P-filters", r.name(), fr.len());
    for (i, f) in fr.filters().iter().enumerate() {
        let gens: Vec<&str> = r.elements().filter(|&a| fr.principal(a) == i).map(|a| r.elem_name(a)).collect();
        if gens.is_empty() {
            println!("  F{i} = {}", set(r, f));
        } else {
            println!("  F{i} = {}  principal for {}", set(r, f), gens.join(", "));
        }
    }
    if show_frame {
        println!("covering pairs:");
        for (i, j) in fr.hasse() {
            println!("  F{i} < F{j}");
        }
    }
    Ok(())
}

fn cmd_verify(file: Option<&Path>, algebra: Option<String>, suite: &str, list: bool, limits: &Limits) -> Outcome {
    let chosen = Suite::parse(suite).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        input_error(format!("unknown suite {suite}; expected one of {}, all", names.join(", ")))
    })?;
    if list {
        for c in suites::checks_in(&chosen) {
            println!("{:<30} {}", format!("{}/{}", c.suite, c.name), c.statement);
        }
        return Ok(());
    }
    let file = file.ok_or_else(|| input_error("verify needs a file unless --list is given"))?;
    let s = load(&Input { file: file.to_path_buf(), algebra }, limits)?;
    let results = suites::run(&s, &chosen, limits);
    println!("{} ({}, {} elements)", s.name(), kind(&s), s.mv().size());
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for r in &results {
        let label = format!("{}/{}", r.suite, r.name);
        match &r.outcome {
            suites::Outcome::Pass => {
                pass += 1;
                println!("  PASS     {label}");
            }
            suites::Outcome::Fail(w) => {
                fail += 1;
                println!("  FAIL     {label}: {w}");
            }
            suites::Outcome::Skipped(why) => {
                skip += 1;
                println!("  SKIPPED  {label}: {why}");
            }
        }
    }
    println!("summary: {pass} passed, {fail} failed, {skip} skipped");
    if fail == 0 {
        Ok(())
    } else {
        Err(Stop::Failed)
    }
}

fn cmd_parse(input: &Input, emit_json: bool, limits: &Limits) -> Outcome {
    if !emit_json {
        let text = std::fs::read_to_string(&input.file).map_err(|e| input_error(format!("{}: {e}", input.file.display())))?;
        let file = parse(&text).map_err(|d| located(&input.file, &d.to_string()))?;
        print!("{}", mvw_dsl::pretty::print_file(&file));
        return Ok(());
    }
    let (_, alg, env) = load_source(input, limits)?;
    let s = elaborate_unchecked(&alg, &env, limits).map_err(|e| elab_stop(&input.file, e))?;
    print!("{}", to_canonical(&json::rig_doc(&s)));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    let outcome = match &cli.command {
        Command::Check { input, mv_only } => cmd_check(input, *mv_only, &limits),
        Command::Ideals { input, prime, mv_prime, maximal, json } => {
            cmd_ideals(input, *prime, *mv_prime, *maximal, *json, &limits)
        }
        Command::Quotient { input, ideal, output } => cmd_quotient(input, ideal, output.as_deref(), &limits),
        Command::Spec { input, dot, json } => cmd_spec(input, dot.as_deref(), *json, &limits),
        Command::Filters { input, principal, frame, json } => {
            cmd_filters(input, principal.as_deref(), *frame, *json, &limits)
        }
        Command::Verify { file, algebra, suite, list } => cmd_verify(file.as_deref(), algebra.clone(), suite, *list, &limits),
        Command::Parse { input, emit_json } => cmd_parse(input, *emit_json, &limits),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Stop::Failed) => ExitCode::from(1),
        Err(Stop::Input(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
