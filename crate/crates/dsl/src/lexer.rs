use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::diagnostic::{Diagnostic, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    /// `p/q` written without spaces.
    Rational(BigRational),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Eq,
    DotDot,
    Plus,
    Minus,
    Star,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Rational(q) => write!(f, "`{q}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::DotDot => f.write_str("`..`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    col: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits `text` into tokens. `#` starts a comment that runs to the end
/// of the line. The final token is always [`Tok::Eof`].
pub fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor { chars: text.char_indices().peekable(), line: 1, col: 1 };
    let mut out = Vec::new();
    loop {
        let span = Span::new(cur.line, cur.col);
        let Some(c) = cur.peek() else {
            out.push(Token { tok: Tok::Eof, span });
            return Ok(out);
        };
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let num: BigInt = cur.digits().parse().expect("ascii digits");
            if cur.peek() == Some('/') {
                cur.bump();
                let den = cur.digits();
                if den.is_empty() {
                    return Err(Diagnostic::error(span, "expected a denominator after `/`"));
                }
                let den: BigInt = den.parse().expect("ascii digits");
                if den == BigInt::from(0) {
                    return Err(Diagnostic::error(span, "zero denominator"));
                }
                let q = BigRational::new(num, den);
                if q.is_integer() {
                    Tok::Int(q.to_integer())
                } else {
                    Tok::Rational(q)
                }
            } else {
                Tok::Int(num)
            }
        } else if is_ident_start(c) {
            let mut s = String::new();
            while let Some(c) = cur.peek().filter(|&c| is_ident_char(c)) {
                s.push(c);
                cur.bump();
            }
            Tok::Ident(s)
        } else {
            cur.bump();
            match c {
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '=' => Tok::Eq,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' | '·' => Tok::Star,
                '.' if cur.peek() == Some('.') => {
                    cur.bump();
                    Tok::DotDot
                }
                other => return Err(Diagnostic::error(span, format!("unexpected character `{other}`"))),
            }
        };
        out.push(Token { tok, span });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn ranges_and_rationals() {
        assert_eq!(
            toks("0..3 1/2 4/2"),
            vec![
                Tok::Int(0.into()),
                Tok::DotDot,
                Tok::Int(3.into()),
                Tok::Rational(BigRational::new(1.into(), 2.into())),
                Tok::Int(2.into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_and_spans() {
        let ts = lex("# header\n  add(x,y)").unwrap();
        assert_eq!(ts[0].tok, Tok::Ident("add".into()));
        assert_eq!(ts[0].span, Span::new(2, 3));
        assert_eq!(ts[2].span, Span::new(2, 7));
    }

    #[test]
    fn bad_characters_are_located() {
        let e = lex("zero: 0\n  $").unwrap_err();
        assert_eq!(e.span, Span::new(2, 3));
        assert!(lex("1/0").is_err());
    }
}
