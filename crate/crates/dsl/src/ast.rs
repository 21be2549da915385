use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::diagnostic::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub algebras: Vec<Algebra>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    pub span: Span,
    pub decls: Vec<Decl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub kind: DeclKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclKind {
    Elements(CarrierDecl),
    Zero(Atom),
    Op(Op, OpDef),
    Builder(BuilderExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarrierDecl {
    /// `lo..hi`, both ends included.
    Range(BigInt, BigInt),
    List(Vec<Atom>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Ident(String),
    Int(BigInt),
    Rational(BigRational),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Ident(s) => f.write_str(s),
            Atom::Int(n) => write!(f, "{n}"),
            Atom::Rational(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Neg,
    Add,
    Mul,
}

impl Op {
    pub fn keyword(self) -> &'static str {
        match self {
            Op::Neg => "neg",
            Op::Add => "add",
            Op::Mul => "mul",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Op::Neg => 1,
            Op::Add | Op::Mul => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpDef {
    Formula { params: Vec<String>, body: Expr },
    Table(Vec<TableItem>),
}

/// One entry of a table literal: a bare atom (unary tables) or a row
/// (binary tables).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableItem {
    Atom(Atom),
    Row(Vec<Atom>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Min(Vec<Expr>),
    Max(Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuilderExpr {
    pub name: String,
    pub args: Vec<Arg>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Int(BigInt),
    /// Another algebra defined earlier in the same file.
    Ident(String),
    Call(BuilderExpr),
    List(Vec<Atom>),
}

impl SourceFile {
    /// Resets every span, so that trees can be compared structurally.
    pub fn erase_spans(&mut self) {
        for a in &mut self.algebras {
            a.span = Span::default();
            for d in &mut a.decls {
                d.span = Span::default();
            }
        }
    }

    pub fn algebra(&self, name: &str) -> Option<&Algebra> {
        self.algebras.iter().find(|a| a.name == name)
    }
}
