//! Turns parsed algebras into checked structures.
//!
//! Formulas are evaluated over the whole carrier with exact rational
//! arithmetic; a value outside the carrier is reported with the inputs
//! that produced it. Tables are indexed in declaration order. The declared
//! zero is moved to index 0 before the tables are handed to the core.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use mvw::axioms::{check_all, check_mv, AxiomReport};
use mvw::builders::BuildRecipe;
use mvw::{Carrier, Elem, Error, Limits, MvAlgebra, MvwRig, Structure};

use crate::ast::{Algebra, Arg, Atom, BuilderExpr, CarrierDecl, Decl, DeclKind, Expr, Op, OpDef, SourceFile, TableItem};
use crate::diagnostic::{Diagnostic, Diagnostics, Span};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElabError {
    #[error("{0}")]
    Invalid(Diagnostics),
    /// The tables describe a structure, but it breaks an axiom.
    #[error("{} fails {}", structure.name(), report.witnesses()[0].axiom)]
    Axioms { structure: Box<Structure>, report: AxiomReport },
}

impl From<Diagnostic> for ElabError {
    fn from(d: Diagnostic) -> Self {
        ElabError::Invalid(d.into())
    }
}

/// A carrier element as written in the source.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Num(BigRational),
    Sym(String),
}

impl Value {
    fn name(&self) -> String {
        match self {
            Value::Num(q) if q.is_integer() => q.numer().to_string(),
            Value::Num(q) => q.to_string(),
            Value::Sym(s) => s.clone(),
        }
    }
}

fn atom_value(a: &Atom) -> Value {
    match a {
        Atom::Ident(s) => Value::Sym(s.clone()),
        Atom::Int(n) => Value::Num(BigRational::from_integer(n.clone())),
        Atom::Rational(q) => Value::Num(q.clone()),
    }
}

struct Elements {
    values: Vec<Value>,
    index: HashMap<Value, usize>,
}

impl Elements {
    fn find(&self, v: &Value) -> Option<usize> {
        self.index.get(v).copied()
    }
}

fn elements(decl: &CarrierDecl, span: Span, limits: &Limits) -> Result<Elements, Diagnostic> {
    let values: Vec<Value> = match decl {
        CarrierDecl::Range(lo, hi) => {
            if lo > hi {
                return Err(Diagnostic::error(span, format!("empty range {lo}..{hi}")));
            }
            let len = (hi - lo + BigInt::from(1)).to_usize().unwrap_or(usize::MAX);
            limits.check_carrier(len).map_err(|e| Diagnostic::error(span, e.to_string()))?;
            (0..len).map(|k| Value::Num(BigRational::from_integer(lo + BigInt::from(k)))).collect()
        }
        CarrierDecl::List(atoms) => {
            limits.check_carrier(atoms.len()).map_err(|e| Diagnostic::error(span, e.to_string()))?;
            atoms.iter().map(atom_value).collect()
        }
    };
    let mut index = HashMap::new();
    for (i, v) in values.iter().enumerate() {
        if index.insert(v.clone(), i).is_some() {
            return Err(Diagnostic::error(span, format!("element {} is listed twice", v.name())));
        }
    }
    Ok(Elements { values, index })
}

fn eval(e: &Expr, env: &[(&str, &Value)], els: &Elements) -> Result<Value, String> {
    let num = |e: &Expr| -> Result<BigRational, String> {
        match eval(e, env, els)? {
            Value::Num(q) => Ok(q),
            Value::Sym(s) => Err(format!("no arithmetic on the symbolic element `{s}`")),
        }
    };
    Ok(match e {
        Expr::Atom(Atom::Ident(s)) => match env.iter().find(|(p, _)| p == s) {
            Some((_, v)) => (*v).clone(),
            None if els.index.contains_key(&Value::Sym(s.clone())) => Value::Sym(s.clone()),
            None => return Err(format!("unknown name `{s}`")),
        },
        Expr::Atom(a) => atom_value(a),
        Expr::Neg(x) => Value::Num(-num(x)?),
        Expr::Add(l, r) => Value::Num(num(l)? + num(r)?),
        Expr::Sub(l, r) => Value::Num(num(l)? - num(r)?),
        Expr::Mul(l, r) => Value::Num(num(l)? * num(r)?),
        Expr::Min(args) | Expr::Max(args) => {
            let vals = args.iter().map(num).collect::<Result<Vec<_>, _>>()?;
            let v = if matches!(e, Expr::Min(_)) { vals.into_iter().min() } else { vals.into_iter().max() };
            Value::Num(v.expect("min and max take at least two arguments"))
        }
    })
}

/// Tabulates one operation in declaration order.
fn op_table(op: Op, def: &OpDef, span: Span, els: &Elements) -> Result<Vec<Elem>, Diagnostic> {
    let n = els.values.len();
    let entry = |a: &Atom, at: String| {
        els.find(&atom_value(a))
            .ok_or_else(|| Diagnostic::error(span, format!("{} table entry {at} is {a}, not an element", op.keyword())))
    };
    match def {
        OpDef::Formula { params, body } => {
            if params.len() != op.arity() {
                return Err(Diagnostic::error(
                    span,
                    format!("{} takes {} argument(s), {} given", op.keyword(), op.arity(), params.len()),
                ));
            }
            let inputs: Vec<Vec<usize>> = if op.arity() == 1 {
                (0..n).map(|x| vec![x]).collect()
            } else {
                (0..n).flat_map(|x| (0..n).map(move |y| vec![x, y])).collect()
            };
            let mut out = Vec::with_capacity(inputs.len());
            for args in inputs {
                let env: Vec<(&str, &Value)> =
                    params.iter().map(String::as_str).zip(args.iter().map(|&i| &els.values[i])).collect();
                let v = eval(body, &env, els).map_err(|m| Diagnostic::error(span, m))?;
                match els.find(&v) {
                    Some(i) => out.push(i),
                    None => {
                        let inputs: Vec<String> = args.iter().map(|&i| els.values[i].name()).collect();
                        let err = Error::ClosureViolation { op: op.keyword(), inputs: inputs.clone(), value: v.name() };
                        let mut witness = inputs;
                        witness.push(v.name());
                        return Err(Diagnostic::error(span, err.to_string()).with_witness(witness));
                    }
                }
            }
            Ok(out)
        }
        OpDef::Table(items) => {
            let shape = || {
                Diagnostic::error(
                    span,
                    if op.arity() == 1 {
                        format!("{} table needs {n} entries", op.keyword())
                    } else {
                        format!("{} table needs {n} rows of {n} entries", op.keyword())
                    },
                )
            };
            if items.len() != n {
                return Err(shape());
            }
            let mut out = Vec::with_capacity(n.pow(op.arity() as u32));
            for (i, item) in items.iter().enumerate() {
                match (op.arity(), item) {
                    (1, TableItem::Atom(a)) => out.push(entry(a, format!("{i}"))?),
                    (2, TableItem::Row(row)) if row.len() == n => {
                        for (j, a) in row.iter().enumerate() {
                            out.push(entry(a, format!("({i}, {j})"))?);
                        }
                    }
                    _ => return Err(shape()),
                }
            }
            Ok(out)
        }
    }
}

/// Algebras already elaborated earlier in the same file, by name.
pub type Env = HashMap<String, Structure>;

fn rename(s: Structure, name: &str) -> Structure {
    match s {
        Structure::Mv(mut m) => {
            m.set_name(name);
            Structure::Mv(m)
        }
        Structure::Rig(mut r) => {
            r.set_name(name);
            Structure::Rig(r)
        }
    }
}

fn usize_arg(a: &Arg, what: &str, span: Span) -> Result<usize, Diagnostic> {
    match a {
        Arg::Int(n) => n.to_usize().ok_or_else(|| Diagnostic::error(span, format!("{what} must be a small non-negative integer"))),
        _ => Err(Diagnostic::error(span, format!("{what} must be an integer"))),
    }
}

fn recipe(b: &BuilderExpr, env: &Env, span: Span, limits: &Limits) -> Result<BuildRecipe, Diagnostic> {
    let arity = |k: usize| {
        if b.args.len() == k {
            Ok(())
        } else {
            Err(Diagnostic::error(span, format!("{} takes {k} argument(s), {} given", b.name, b.args.len())))
        }
    };
    let sub = |a: &Arg| -> Result<BuildRecipe, Diagnostic> {
        match a {
            Arg::Call(c) => recipe(c, env, span, limits),
            Arg::Ident(s) => env
                .get(s)
                .map(|x| BuildRecipe::Given(Box::new(x.clone())))
                .ok_or_else(|| Diagnostic::error(span, format!("unknown algebra `{s}`"))),
            _ => Err(Diagnostic::error(span, format!("{} expects an algebra argument", b.name))),
        }
    };
    Ok(match b.name.as_str() {
        "zn" => {
            arity(1)?;
            BuildRecipe::Zn(usize_arg(&b.args[0], "n", span)?)
        }
        "luk" => {
            arity(1)?;
            BuildRecipe::LukMv(usize_arg(&b.args[0], "n", span)?)
        }
        "trivial" => {
            arity(1)?;
            BuildRecipe::TrivialProduct(Box::new(sub(&b.args[0])?))
        }
        "matrix" => {
            arity(2)?;
            BuildRecipe::Matrix { base: Box::new(sub(&b.args[0])?), dim: usize_arg(&b.args[1], "dimension", span)? }
        }
        "product" => {
            if b.args.is_empty() {
                return Err(Diagnostic::error(span, "product needs at least one factor"));
            }
            BuildRecipe::DirectProduct(b.args.iter().map(sub).collect::<Result<_, _>>()?)
        }
        "gamma" => {
            arity(2)?;
            let k = usize_arg(&b.args[0], "k", span)?;
            let Arg::List(u) = &b.args[1] else {
                return Err(Diagnostic::error(span, "gamma expects a unit vector such as [1, 1]"));
            };
            if u.len() != k {
                return Err(Diagnostic::error(span, format!("unit vector has {} entries, expected {k}", u.len())));
            }
            let u = u
                .iter()
                .map(|a| match a {
                    Atom::Int(n) => n.to_i64().ok_or_else(|| Diagnostic::error(span, format!("unit entry {n} is too large"))),
                    other => Err(Diagnostic::error(span, format!("unit entry {other} is not an integer"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            BuildRecipe::GammaZk(u)
        }
        "sub" => {
            arity(2)?;
            let base = sub(&b.args[0])?.build(limits).map_err(|e| Diagnostic::error(span, e.to_string()))?;
            let Arg::List(seed) = &b.args[1] else {
                return Err(Diagnostic::error(span, "sub expects a list of generators"));
            };
            let seed = seed
                .iter()
                .map(|a| {
                    base.mv()
                        .carrier()
                        .find(&a.to_string())
                        .ok_or_else(|| Diagnostic::error(span, format!("{a} is not an element of {}", base.name())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            BuildRecipe::Subalgebra { base: Box::new(BuildRecipe::Given(Box::new(base))), seed }
        }
        other => {
            return Err(Diagnostic::error(span, format!("unknown builder `{other}`")).with_expected(
                ["zn", "luk", "trivial", "matrix", "product", "gamma", "sub"].iter().map(|s| format!("`{s}`")).collect(),
            ))
        }
    })
}

fn checked(s: Structure) -> Result<Structure, ElabError> {
    let report = match &s {
        Structure::Mv(m) => check_mv(m),
        Structure::Rig(r) => check_all(r),
    };
    if report.passed() {
        Ok(s)
    } else {
        Err(ElabError::Axioms { structure: Box::new(s), report })
    }
}

/// Elaborates one algebra. Builder references resolve against `env`.
pub fn elaborate(alg: &Algebra, env: &Env, limits: &Limits) -> Result<Structure, ElabError> {
    let built = elaborate_unchecked(alg, env, limits)?;
    checked(built)
}

/// Like [`elaborate`] but skips the axiom check, for reporting on
/// structures that are expected to fail it.
pub fn elaborate_unchecked(alg: &Algebra, env: &Env, limits: &Limits) -> Result<Structure, ElabError> {
    let mut builder: Option<&Decl> = None;
    let mut carrier: Option<&Decl> = None;
    let mut zero: Option<&Decl> = None;
    let mut ops: HashMap<Op, &Decl> = HashMap::new();
    let mut errors = Vec::new();
    for d in &alg.decls {
        let (slot, what) = match &d.kind {
            DeclKind::Builder(_) => (&mut builder, "builder".to_string()),
            DeclKind::Elements(_) => (&mut carrier, "elements".to_string()),
            DeclKind::Zero(_) => (&mut zero, "zero".to_string()),
            DeclKind::Op(op, _) => {
                if ops.insert(*op, d).is_some() {
                    errors.push(Diagnostic::error(d.span, format!("duplicate `{}` definition", op.keyword())));
                }
                continue;
            }
        };
        if slot.replace(d).is_some() {
            errors.push(Diagnostic::error(d.span, format!("duplicate `{what}` declaration")));
        }
    }
    if !errors.is_empty() {
        return Err(ElabError::Invalid(Diagnostics(errors)));
    }

    if let Some(b) = builder {
        if alg.decls.len() > 1 {
            return Err(Diagnostic::error(b.span, "a builder algebra takes no other declarations").into());
        }
        let DeclKind::Builder(expr) = &b.kind else { unreachable!() };
        let s = recipe(expr, env, b.span, limits)?
            .build(limits)
            .map_err(|e| Diagnostic::error(b.span, e.to_string()))?;
        return Ok(rename(s, &alg.name));
    }

    let missing = |what: &str| Diagnostic::error(alg.span, format!("missing `{what}` declaration"));
    let carrier = carrier.ok_or_else(|| missing("elements"))?;
    let zero = zero.ok_or_else(|| missing("zero"))?;
    let neg = ops.get(&Op::Neg).ok_or_else(|| missing("neg"))?;
    let add = ops.get(&Op::Add).ok_or_else(|| missing("add"))?;

    let DeclKind::Elements(cd) = &carrier.kind else { unreachable!() };
    let els = elements(cd, carrier.span, limits)?;
    let DeclKind::Zero(z) = &zero.kind else { unreachable!() };
    let z_val = atom_value(z);
    let z = els.find(&z_val).ok_or_else(|| Diagnostic::error(zero.span, format!("zero {} is not an element", z_val.name())))?;
    if let Value::Num(zq) = &z_val {
        if let Some(smaller) = els.values.iter().find(|v| matches!(v, Value::Num(q) if q < zq)) {
            return Err(Diagnostic::error(
                zero.span,
                format!("zero must be the least element, but {} < {}", smaller.name(), z_val.name()),
            )
            .into());
        }
    }

    let table = |d: &Decl| match &d.kind {
        DeclKind::Op(op, def) => op_table(*op, def, d.span, &els),
        _ => unreachable!(),
    };
    let neg_t = table(neg)?;
    let add_t = table(add)?;
    let mul_t = ops.get(&Op::Mul).map(|d| table(d)).transpose()?;

    let n = els.values.len();
    if let Some(x) = (0..n).find(|&x| add_t[x * n + z] != x) {
        return Err(Diagnostic::error(
            zero.span,
            format!(
                "zero must be the least element, but add({}, {}) = {}",
                els.values[x].name(),
                els.values[z].name(),
                els.values[add_t[x * n + z]].name()
            ),
        )
        .with_witness(vec![els.values[x].name(), els.values[z].name()])
        .into());
    }

    // Declared position -> index with the zero first.
    let mut order: Vec<usize> = vec![z];
    order.extend((0..n).filter(|&i| i != z));
    let mut pos = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let names: Vec<String> = order.iter().map(|&i| els.values[i].name()).collect();
    let unary: Vec<Elem> = order.iter().map(|&x| pos[neg_t[x]]).collect();
    let pos = &pos;
    let binary = |t: &[Elem]| -> Vec<Elem> {
        order.iter().flat_map(|&x| order.iter().map(move |&y| pos[t[x * n + y]])).collect()
    };
    let derive_err = |e: mvw::DeriveError| ElabError::from(Diagnostic::error(alg.span, e.to_string()));
    let carrier = Carrier::new(names).map_err(derive_err)?;
    let mv = MvAlgebra::derive(alg.name.clone(), carrier, &unary, &binary(&add_t)).map_err(derive_err)?;
    Ok(match mul_t {
        None => Structure::Mv(mv),
        Some(m) => Structure::Rig(MvwRig::with_product(mv, &binary(&m)).map_err(derive_err)?),
    })
}

/// Elaborates every algebra of a file in order; later algebras may refer
/// to earlier ones by name.
pub fn elaborate_file(file: &SourceFile, limits: &Limits) -> Result<Vec<Structure>, ElabError> {
    let mut env = Env::new();
    let mut out = Vec::with_capacity(file.algebras.len());
    for a in &file.algebras {
        let s = elaborate(a, &env, limits)?;
        env.insert(a.name.clone(), s.clone());
        out.push(s);
    }
    Ok(out)
}

/// Like [`elaborate_file`], keeping structures that fail the axioms.
pub fn elaborate_file_unchecked(file: &SourceFile, limits: &Limits) -> Result<Vec<Structure>, ElabError> {
    let mut env = Env::new();
    let mut out = Vec::with_capacity(file.algebras.len());
    for a in &file.algebras {
        let s = elaborate_unchecked(a, &env, limits)?;
        env.insert(a.name.clone(), s.clone());
        out.push(s);
    }
    Ok(out)
}
