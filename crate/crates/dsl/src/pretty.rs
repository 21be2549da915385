//! Canonical text rendering of a parsed file. Parsing the output gives
//! back the same tree, up to spans.

use std::fmt::Write as _;

use crate::ast::{Algebra, Arg, Atom, BuilderExpr, CarrierDecl, DeclKind, Expr, OpDef, SourceFile, TableItem};

pub fn print_file(f: &SourceFile) -> String {
    let mut out = String::new();
    for (i, a) in f.algebras.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&print_algebra(a));
    }
    out
}

pub fn print_algebra(a: &Algebra) -> String {
    let mut out = format!("algebra {} {{\n", a.name);
    for d in &a.decls {
        out.push_str("  ");
        match &d.kind {
            DeclKind::Elements(CarrierDecl::Range(lo, hi)) => write!(out, "elements: {lo}..{hi}").unwrap(),
            DeclKind::Elements(CarrierDecl::List(xs)) => write!(out, "elements: {}", list(xs)).unwrap(),
            DeclKind::Zero(z) => write!(out, "zero: {z}").unwrap(),
            DeclKind::Builder(b) => write!(out, "builder: {}", builder(b)).unwrap(),
            DeclKind::Op(op, OpDef::Formula { params, body }) => {
                write!(out, "{}({}) = {}", op.keyword(), params.join(", "), expr(body)).unwrap()
            }
            DeclKind::Op(op, OpDef::Table(items)) => {
                let items: Vec<String> = items
                    .iter()
                    .map(|it| match it {
                        TableItem::Atom(a) => a.to_string(),
                        TableItem::Row(r) => list(r),
                    })
                    .collect();
                write!(out, "{}: [{}]", op.keyword(), items.join(", ")).unwrap()
            }
        }
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

fn list(xs: &[Atom]) -> String {
    let parts: Vec<String> = xs.iter().map(Atom::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn builder(b: &BuilderExpr) -> String {
    let args: Vec<String> = b
        .args
        .iter()
        .map(|a| match a {
            Arg::Int(n) => n.to_string(),
            Arg::Ident(s) => s.clone(),
            Arg::Call(c) => builder(c),
            Arg::List(xs) => list(xs),
        })
        .collect();
    format!("{}({})", b.name, args.join(", "))
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(_) => 3,
        // A negative literal prints with its sign, so it binds like `-x`.
        Expr::Atom(Atom::Int(n)) if n.sign() == num_bigint::Sign::Minus => 3,
        Expr::Atom(Atom::Rational(q)) if *q < num_rational::BigRational::from_integer(0.into()) => 3,
        Expr::Atom(_) | Expr::Min(_) | Expr::Max(_) => 4,
    }
}

fn wrap(e: &Expr, parens: bool) -> String {
    if parens {
        format!("({})", expr(e))
    } else {
        expr(e)
    }
}

pub fn expr(e: &Expr) -> String {
    let bin = |l: &Expr, r: &Expr, op: &str, p: u8| {
        // Operators associate to the left, so a right operand of equal
        // precedence needs parentheses.
        format!("{} {op} {}", wrap(l, prec(l) < p), wrap(r, prec(r) <= p))
    };
    match e {
        Expr::Atom(a) => a.to_string(),
        Expr::Neg(x) => format!("-{}", wrap(x, prec(x) < 3)),
        Expr::Add(l, r) => bin(l, r, "+", 1),
        Expr::Sub(l, r) => bin(l, r, "-", 1),
        Expr::Mul(l, r) => bin(l, r, "*", 2),
        Expr::Min(args) | Expr::Max(args) => {
            let name = if matches!(e, Expr::Min(_)) { "min" } else { "max" };
            let parts: Vec<String> = args.iter().map(expr).collect();
            format!("{name}({})", parts.join(", "))
        }
    }
}
