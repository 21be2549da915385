//! Recursive-descent parser for `.mvw` files.
//!
//! ```text
//! file        := algebra+
//! algebra     := "algebra" IDENT "{" decl+ "}"
//! decl        := "elements" ":" carrier | "zero" ":" atom | opdef | "builder" ":" builderexpr
//! carrier     := INT ".." INT | "[" atom ("," atom)* "]"
//! opdef       := ("neg"|"add"|"mul") ( "(" IDENT ("," IDENT)? ")" "=" expr | ":" tablelit )
//! expr        := term (("+" | "-") term)*
//! term        := unary ("*" unary)*
//! unary       := "-" unary | atom | "(" expr ")" | ("min" | "max") "(" expr ("," expr)+ ")"
//! tablelit    := "[" item ("," item)* "]"    item := atom | "[" atom ("," atom)* "]"
//! builderexpr := IDENT "(" arg ("," arg)* ")"
//! arg         := INT | IDENT | builderexpr | "[" atom ("," atom)* "]"
//! ```
//!
//! A syntax error inside one algebra is recorded and parsing resumes at the
//! next `algebra` keyword, so one run reports an error per broken block.

use num_bigint::BigInt;

use crate::ast::{Algebra, Arg, Atom, BuilderExpr, CarrierDecl, Decl, DeclKind, Expr, Op, OpDef, SourceFile, TableItem};
use crate::diagnostic::{Diagnostic, Diagnostics, Span};
use crate::lexer::{lex, Tok, Token};

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Diagnostic {
        Diagnostic::error(self.span(), format!("unexpected {}", self.peek()))
            .with_expected(expected.iter().map(|s| s.to_string()).collect())
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&[&tok.to_string()]))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn file(&mut self) -> Result<SourceFile, Diagnostics> {
        let mut algebras = Vec::new();
        let mut errors = Vec::new();
        if *self.peek() == Tok::Eof {
            errors.push(self.unexpected(&["`algebra`"]));
        }
        while *self.peek() != Tok::Eof {
            match self.algebra() {
                Ok(a) => algebras.push(a),
                Err(e) => {
                    errors.push(e);
                    self.recover();
                }
            }
        }
        if errors.is_empty() {
            Ok(SourceFile { algebras })
        } else {
            Err(Diagnostics(errors))
        }
    }

    /// Skips to the next `algebra` keyword.
    fn recover(&mut self) {
        self.bump();
        while *self.peek() != Tok::Eof && !self.is_keyword("algebra") {
            self.bump();
        }
    }

    fn algebra(&mut self) -> PResult<Algebra> {
        if !self.is_keyword("algebra") {
            return Err(self.unexpected(&["`algebra`"]));
        }
        self.bump();
        let span = self.span();
        let name = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut decls = vec![self.decl()?];
        while *self.peek() != Tok::RBrace {
            decls.push(self.decl()?);
        }
        self.bump();
        Ok(Algebra { name, span, decls })
    }

    fn decl(&mut self) -> PResult<Decl> {
        const DECLS: [&str; 6] = ["`elements`", "`zero`", "`neg`", "`add`", "`mul`", "`builder`"];
        let span = self.span();
        let Tok::Ident(kw) = self.peek().clone() else {
            return Err(self.unexpected(&DECLS));
        };
        let kind = match kw.as_str() {
            "elements" => {
                self.bump();
                self.expect(Tok::Colon)?;
                DeclKind::Elements(self.carrier()?)
            }
            "zero" => {
                self.bump();
                self.expect(Tok::Colon)?;
                DeclKind::Zero(self.atom()?)
            }
            "builder" => {
                self.bump();
                self.expect(Tok::Colon)?;
                DeclKind::Builder(self.builder()?)
            }
            "neg" | "add" | "mul" => {
                self.bump();
                let op = match kw.as_str() {
                    "neg" => Op::Neg,
                    "add" => Op::Add,
                    _ => Op::Mul,
                };
                DeclKind::Op(op, self.opdef()?)
            }
            _ => return Err(self.unexpected(&DECLS)),
        };
        Ok(Decl { kind, span })
    }

    fn carrier(&mut self) -> PResult<CarrierDecl> {
        if *self.peek() == Tok::LBracket {
            return Ok(CarrierDecl::List(self.atom_list()?));
        }
        let lo = self.int()?;
        self.expect(Tok::DotDot)?;
        let hi = self.int()?;
        Ok(CarrierDecl::Range(lo, hi))
    }

    fn int(&mut self) -> PResult<BigInt> {
        let neg = self.eat(&Tok::Minus);
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    /// An atom in a list position, where a leading `-` negates a literal.
    fn atom(&mut self) -> PResult<Atom> {
        let neg = self.eat(&Tok::Minus);
        let a = match self.peek().clone() {
            Tok::Int(n) => Atom::Int(if neg { -n } else { n }),
            Tok::Rational(q) => Atom::Rational(if neg { -q } else { q }),
            Tok::Ident(s) if !neg => Atom::Ident(s),
            _ => return Err(self.unexpected(&["element"])),
        };
        self.bump();
        Ok(a)
    }

    fn atom_list(&mut self) -> PResult<Vec<Atom>> {
        self.expect(Tok::LBracket)?;
        let mut out = vec![self.atom()?];
        while self.eat(&Tok::Comma) {
            out.push(self.atom()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn opdef(&mut self) -> PResult<OpDef> {
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let mut params = vec![self.ident()?];
                if self.eat(&Tok::Comma) {
                    params.push(self.ident()?);
                }
                self.expect(Tok::RParen)?;
                self.expect(Tok::Eq)?;
                Ok(OpDef::Formula { params, body: self.expr()? })
            }
            Tok::Colon => {
                self.bump();
                self.expect(Tok::LBracket)?;
                let mut items = vec![self.table_item()?];
                while self.eat(&Tok::Comma) {
                    items.push(self.table_item()?);
                }
                self.expect(Tok::RBracket)?;
                Ok(OpDef::Table(items))
            }
            _ => Err(self.unexpected(&["`(`", "`:`"])),
        }
    }

    fn table_item(&mut self) -> PResult<TableItem> {
        if *self.peek() == Tok::LBracket {
            Ok(TableItem::Row(self.atom_list()?))
        } else {
            Ok(TableItem::Atom(self.atom()?))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(s) if (s == "min" || s == "max") && *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let mut args = vec![self.expr()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.expr()?);
                }
                if args.len() < 2 {
                    return Err(self.unexpected(&["`,`"]));
                }
                self.expect(Tok::RParen)?;
                Ok(if s == "min" { Expr::Min(args) } else { Expr::Max(args) })
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Atom(Atom::Ident(s)))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Atom(Atom::Int(n)))
            }
            Tok::Rational(q) => {
                self.bump();
                Ok(Expr::Atom(Atom::Rational(q)))
            }
            _ => Err(self.unexpected(&["expression"])),
        }
    }

    fn builder(&mut self) -> PResult<BuilderExpr> {
        let name = self.ident()?;
        self.expect(Tok::LParen)?;
        let mut args = vec![self.arg()?];
        while self.eat(&Tok::Comma) {
            args.push(self.arg()?);
        }
        self.expect(Tok::RParen)?;
        Ok(BuilderExpr { name, args })
    }

    fn arg(&mut self) -> PResult<Arg> {
        match self.peek().clone() {
            Tok::LBracket => Ok(Arg::List(self.atom_list()?)),
            Tok::Int(_) | Tok::Minus => Ok(Arg::Int(self.int()?)),
            Tok::Ident(s) => {
                if *self.peek_at(1) == Tok::LParen {
                    Ok(Arg::Call(self.builder()?))
                } else {
                    self.bump();
                    Ok(Arg::Ident(s))
                }
            }
            _ => Err(self.unexpected(&["integer", "identifier", "builder call", "`[`"])),
        }
    }
}

/// Parses a whole file. On failure every collected diagnostic is returned
/// and no tree is produced.
pub fn parse(text: &str) -> Result<SourceFile, Diagnostics> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.file()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z3: &str = "algebra Z3 { elements: 0..3  zero: 0  neg(x) = 3 - x  add(x,y) = min(3, x + y)  mul(x,y) = min(3, x * y) }";

    #[test]
    fn z3_formulas() {
        let f = parse(Z3).unwrap();
        let a = &f.algebras[0];
        assert_eq!(a.name, "Z3");
        assert_eq!(a.decls.len(), 5);
        assert_eq!(a.decls[0].kind, DeclKind::Elements(CarrierDecl::Range(0.into(), 3.into())));
        let DeclKind::Op(Op::Add, OpDef::Formula { params, body }) = &a.decls[3].kind else { panic!() };
        assert_eq!(params, &["x", "y"]);
        assert!(matches!(body, Expr::Min(args) if args.len() == 2));
    }

    #[test]
    fn trivial_tables() {
        let f = parse("algebra T { elements: [o] zero: o neg: [o] add: [[o]] mul: [[o]] }").unwrap();
        let a = &f.algebras[0];
        assert_eq!(a.decls[0].kind, DeclKind::Elements(CarrierDecl::List(vec![Atom::Ident("o".into())])));
        assert_eq!(a.decls[3].kind, DeclKind::Op(Op::Add, OpDef::Table(vec![TableItem::Row(vec![Atom::Ident("o".into())])])));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse("algebra A { neg(x) = 1 - x - 2 * x * -x }").unwrap();
        let DeclKind::Op(_, OpDef::Formula { body, .. }) = &f.algebras[0].decls[0].kind else { panic!() };
        let x = || Box::new(Expr::Atom(Atom::Ident("x".into())));
        let expected = Expr::Sub(
            Box::new(Expr::Sub(Box::new(Expr::Atom(Atom::Int(1.into()))), x())),
            Box::new(Expr::Mul(
                Box::new(Expr::Mul(Box::new(Expr::Atom(Atom::Int(2.into()))), x())),
                Box::new(Expr::Neg(x())),
            )),
        );
        assert_eq!(body, &expected);
    }

    #[test]
    fn builders_nest() {
        let f = parse("algebra P { builder: product(zn(1), trivial(luk(3))) } algebra G { builder: gamma(2, [1, -1]) }").unwrap();
        let DeclKind::Builder(b) = &f.algebras[0].decls[0].kind else { panic!() };
        assert_eq!(b.name, "product");
        assert!(matches!(&b.args[1], Arg::Call(c) if c.name == "trivial"));
        let DeclKind::Builder(g) = &f.algebras[1].decls[0].kind else { panic!() };
        assert_eq!(g.args[1], Arg::List(vec![Atom::Int(1.into()), Atom::Int((-1).into())]));
    }

    #[test]
    fn errors_carry_spans_and_expected_tokens() {
        let e = parse("algebra A {\n  elements 0..3\n}").unwrap_err();
        assert_eq!(e.0.len(), 1);
        assert_eq!(e.0[0].span, Span::new(2, 12));
        assert_eq!(e.0[0].expected, vec!["`:`"]);

        let e = parse("algebra A { wat: 1 }").unwrap_err();
        assert!(e.0[0].expected.contains(&"`elements`".to_string()));
        assert!(parse("").is_err());
    }

    #[test]
    fn one_error_per_broken_block() {
        let e = parse("algebra A { zero: } algebra B { zero: 0 } algebra C { neg(x) = }").unwrap_err();
        assert_eq!(e.0.len(), 2);
        assert_eq!(e.0[0].span.col, 19);
    }
}
