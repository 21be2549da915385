//! The shipped `.mvw` files: they parse, survive the pretty-printer, and
//! elaborate to the structures the builders produce directly.

use std::path::PathBuf;

use mvw::builders::build_zn;
use mvw::{catalog, Limits, Structure};
use mvw_dsl::ast::{Algebra, Decl, DeclKind, Expr, Op, OpDef, SourceFile};
use mvw_dsl::elaborate::ElabError;
use mvw_dsl::pretty::print_file;
use mvw_dsl::{load, parse, Span};
use proptest::prelude::*;

fn algebras_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../algebras")
}

fn source(name: &str) -> String {
    std::fs::read_to_string(algebras_dir().join(name)).unwrap()
}

fn last(name: &str) -> Result<Structure, ElabError> {
    load(&source(name), &Limits::default()).map(|mut v| v.pop().unwrap())
}

/// Same carrier names and tables; the structure names may differ.
fn same_tables(a: &Structure, b: &Structure) -> bool {
    let (x, y) = (a.mv(), b.mv());
    x.carrier() == y.carrier()
        && x.neg_table() == y.neg_table()
        && x.add_table() == y.add_table()
        && a.rig().map(|r| r.mul_table()) == b.rig().map(|r| r.mul_table())
}

#[test]
fn every_source_round_trips_through_the_printer() {
    let mut count = 0;
    for entry in std::fs::read_dir(algebras_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("mvw") {
            continue;
        }
        let mut ast = parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let printed = print_file(&ast);
        let mut again = parse(&printed).unwrap();
        ast.erase_spans();
        again.erase_spans();
        assert_eq!(ast, again, "{}", path.display());
        // Printing is idempotent.
        assert_eq!(print_file(&again), printed);
        count += 1;
    }
    assert!(count >= 10);
}

#[test]
fn sources_match_the_builders() {
    let z3 = last("z3.mvw").unwrap();
    assert_eq!(z3.rig().unwrap(), &build_zn(3).unwrap());
    assert!(same_tables(&last("boolean.mvw").unwrap(), &Structure::Rig(build_zn(1).unwrap())));
    for (file, name) in [
        ("z1xz1.mvw", "Z1xZ1"),
        ("t3.mvw", "T3"),
        ("m2z1.mvw", "M2(Z1)"),
        ("gamma11.mvw", "Gamma(1,1)"),
        ("trivial.mvw", "Trivial"),
        ("z6.mvw", "Z6"),
    ] {
        let s = last(file).unwrap();
        let expected = catalog::by_name(name).unwrap();
        assert!(same_tables(&s, &expected), "{file}: {:?} vs {:?}", s.mv().carrier().names(), expected.mv().carrier().names());
    }
    assert_eq!(last("sub_z3.mvw").unwrap().mv().size(), 2);
    let l3 = last("luk3.mvw").unwrap();
    assert!(l3.rig().is_none());
    assert!(same_tables(&l3, &catalog::by_name("L3").unwrap()));
}

#[test]
fn real_products_are_rejected_with_their_witness() {
    for (file, w) in [("luk3_realprod.mvw", ["1/2", "1/2", "1/4"]), ("luk4_realprod.mvw", ["1/3", "1/3", "1/9"])] {
        let Err(ElabError::Invalid(d)) = last(file) else { panic!("{file} should not elaborate") };
        let d = &d.0[0];
        assert_eq!(d.witness.as_deref(), Some(&w.map(String::from)[..]));
        // The diagnostic points at the mul definition.
        let line = source(file).lines().position(|l| l.trim_start().starts_with("mul")).unwrap() + 1;
        assert_eq!(d.span, Span::new(line, 3));
    }
}

#[test]
fn corrupted_table_fails_an_axiom() {
    let Err(ElabError::Axioms { structure, report }) = last("z3_corrupt.mvw") else { panic!() };
    assert_eq!(structure.name(), "Z3Corrupt");
    assert!(!report.passed());
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    use mvw_dsl::ast::Atom;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let leaf = prop_oneof![
        prop_oneof![Just("x"), Just("y")].prop_map(|s| Expr::Atom(Atom::Ident(s.into()))),
        (0i64..20).prop_map(|n| Expr::Atom(Atom::Int(BigInt::from(n)))),
        (1i64..9, 2i64..9)
            .prop_filter("proper fraction", |(p, q)| p % q != 0)
            .prop_map(|(p, q)| Expr::Atom(Atom::Rational(BigRational::new(p.into(), q.into())))),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Min),
            prop::collection::vec(inner, 2..4).prop_map(Expr::Max),
        ]
    })
}

proptest! {
    #[test]
    fn printed_formulas_parse_back(body in expr_strategy()) {
        let decl = Decl {
            kind: DeclKind::Op(Op::Add, OpDef::Formula { params: vec!["x".into(), "y".into()], body }),
            span: Span::default(),
        };
        let file = SourceFile { algebras: vec![Algebra { name: "A".into(), span: Span::default(), decls: vec![decl] }] };
        let mut back = parse(&print_file(&file)).unwrap();
        back.erase_spans();
        prop_assert_eq!(back, file);
    }

    #[test]
    fn zn_formulas_elaborate_to_build_zn(n in 1usize..9) {
        let text = format!(
            "algebra Z{n} {{ elements: 0..{n} zero: 0 neg(x) = {n} - x add(x, y) = min({n}, x + y) mul(x, y) = min({n}, x * y) }}"
        );
        let s = load(&text, &Limits::default()).unwrap().pop().unwrap();
        prop_assert_eq!(s.rig().unwrap(), &build_zn(n).unwrap());
    }
}
