//! Recursive-descent parser for the formula grammar:
//!
//! ```text
//! formula := iff
//! iff     := cyc ( ("<->" | "->") cyc )*          left-assoc
//! cyc     := disj ( "~>" cyc )?                   right-assoc
//! disj    := conj ( "\/" conj )*
//! conj    := unary ( "/\" unary )*
//! unary   := "~" unary | postfix
//! postfix := atom "*"*
//! atom    := "0" | "bot" | "1" | "top" | var | "(" formula ")"
//!          | "t(" f ")" | "t^" int "(" f ")" | "nabla(" f ")" | "tri(" f ")"
//!          | "o(" f ")" | "delta(" f "," f ")"
//! ```

use super::ast::*;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Tilde,
    Star,
    Caret,
    And,
    Or,
    CycImp,
    Arrow,
    Iff,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::CycImp => "`~>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let take = |n: usize, tok: Tok, out: &mut Vec<Spanned>| {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            n
        };
        let next = chars.get(i + 1).copied();
        let n = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '(' => take(1, Tok::LParen, &mut out),
            ')' => take(1, Tok::RParen, &mut out),
            ',' => take(1, Tok::Comma, &mut out),
            '*' => take(1, Tok::Star, &mut out),
            '^' => take(1, Tok::Caret, &mut out),
            '~' if next == Some('>') => take(2, Tok::CycImp, &mut out),
            '~' => take(1, Tok::Tilde, &mut out),
            '/' if next == Some('\\') => take(2, Tok::And, &mut out),
            '\\' if next == Some('/') => take(2, Tok::Or, &mut out),
            '-' if next == Some('>') => take(2, Tok::Arrow, &mut out),
            '<' if next == Some('-') && chars.get(i + 2) == Some(&'>') => {
                take(3, Tok::Iff, &mut out)
            }
            c if c.is_ascii_digit() => {
                let end = (i..chars.len())
                    .find(|&j| !chars[j].is_ascii_digit())
                    .unwrap_or(chars.len());
                let s: String = chars[i..end].iter().collect();
                let v = s
                    .parse::<u64>()
                    .map_err(|_| syntax(l0, c0, format!("integer `{s}` is too large")))?;
                take(end - i, Tok::Int(v), &mut out)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let end = (i..chars.len())
                    .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                    .unwrap_or(chars.len());
                let s: String = chars[i..end].iter().collect();
                take(end - i, Tok::Ident(s), &mut out)
            }
            c => return Err(syntax(l0, c0, format!("unexpected character `{c}`"))),
        };
        i += n;
        col += n;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.column)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(syntax(l, c, message))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut f = self.cyc()?;
        loop {
            match self.peek() {
                Tok::Iff => {
                    self.bump();
                    f = iff(f, self.cyc()?);
                }
                Tok::Arrow => {
                    self.bump();
                    f = arrow(f, self.cyc()?);
                }
                _ => return Ok(f),
            }
        }
    }

    fn cyc(&mut self) -> Result<Formula> {
        let f = self.disj()?;
        if *self.peek() == Tok::CycImp {
            self.bump();
            return Ok(cyc_imp(f, self.cyc()?));
        }
        Ok(f)
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut f = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            return Ok(neg(self.unary()?));
        }
        let mut f = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            f = star(f);
        }
        Ok(f)
    }

    /// Parenthesised argument list of exactly `arity` formulas.
    fn args(&mut self, name: &str, arity: usize) -> Result<Vec<Formula>> {
        if *self.peek() != Tok::LParen {
            return self.fail(format!("`{name}` must be applied to an argument list"));
        }
        self.bump();
        let mut out = vec![self.iff()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.iff()?);
        }
        if out.len() != arity && *self.peek() == Tok::RParen {
            return self.fail(format!(
                "`{name}` takes {arity} argument(s), got {}",
                out.len()
            ));
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Formula> {
        let (line, column) = self.here();
        match self.bump() {
            Tok::Int(0) => Ok(Formula::Bot),
            Tok::Int(1) => Ok(Formula::Top),
            Tok::Int(n) => Err(syntax(
                line,
                column,
                format!("`{n}` is not a constant; use 0 or 1"),
            )),
            Tok::LParen => {
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => self.named(name, line, column),
            other => Err(syntax(
                line,
                column,
                format!("expected a formula, found {}", other.describe()),
            )),
        }
    }

    fn named(&mut self, name: String, line: usize, column: usize) -> Result<Formula> {
        let one =
            |p: &mut Parser, name: &str| -> Result<Formula> { Ok(p.args(name, 1)?.remove(0)) };
        match name.as_str() {
            "bot" => Ok(Formula::Bot),
            "top" => Ok(Formula::Top),
            "t" if *self.peek() == Tok::Caret => {
                self.bump();
                let (l, c) = self.here();
                let Tok::Int(power) = self.bump() else {
                    return Err(syntax(l, c, "expected an exponent after `t^`"));
                };
                Ok(tpow(power, one(self, "t^n")?))
            }
            "t" => Ok(t(one(self, "t")?)),
            "nabla" => Ok(nabla(one(self, "nabla")?)),
            "tri" => Ok(tri(one(self, "tri")?)),
            "o" => Ok(circ(one(self, "o")?)),
            "delta" => {
                let mut a = self.args("delta", 2)?;
                let r = a.pop().unwrap();
                Ok(delta(a.pop().unwrap(), r))
            }
            _ if *self.peek() == Tok::LParen => {
                Err(syntax(line, column, format!("unknown identifier `{name}`")))
            }
            _ if is_valid_var(&name) => Ok(var(&name)),
            _ => Err(syntax(
                line,
                column,
                format!("`{name}` is not a valid variable name"),
            )),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.iff()?;
    if *p.peek() != Tok::End {
        return p.fail(format!("unexpected {} after formula", p.peek().describe()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spec_examples() {
        assert_eq!(parse("p /\\ ~p").unwrap(), and(var("p"), neg(var("p"))));
        assert_eq!(parse("delta(p,q)").unwrap(), delta(var("p"), var("q")));
        assert_eq!(parse("t^3(p)*").unwrap(), star(tpow(3, var("p"))));
    }

    #[test]
    fn precedence() {
        let (p, q, r) = (var("p"), var("q"), var("r"));
        assert_eq!(
            parse("p ~> q ~> r").unwrap(),
            cyc_imp(p.clone(), cyc_imp(q.clone(), r.clone()))
        );
        assert_eq!(
            parse("p \\/ q /\\ r").unwrap(),
            or(p.clone(), and(q.clone(), r.clone()))
        );
        assert_eq!(
            parse("p -> q <-> r").unwrap(),
            iff(arrow(p.clone(), q.clone()), r.clone())
        );
        assert_eq!(parse("~p*").unwrap(), neg(star(p.clone())));
        assert_eq!(
            parse("p \\/ q ~> r").unwrap(),
            cyc_imp(or(p.clone(), q.clone()), r.clone())
        );
        assert_eq!(parse("0 /\\ top").unwrap(), and(Formula::Bot, Formula::Top));
    }

    #[test]
    fn errors() {
        let pos = |s: &str| match parse(s) {
            Err(Error::Syntax {
                line,
                column,
                message,
            }) => (line, column, message),
            other => panic!("expected syntax error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos("p /\\").0, 1);
        assert_eq!(pos("p /\\").1, 5);
        let (l, c, _) = pos("p\n  /\\ ?");
        assert_eq!((l, c), (2, 6));
        assert!(pos("foo(p)").2.contains("unknown identifier"));
        assert!(pos("delta(p)").2.contains("2 argument"));
        assert!(pos("t(p, q)").2.contains("1 argument"));
        assert!(pos("t").2.contains("argument list"));
        assert!(pos("2").2.contains("not a constant"));
        assert!(pos("(p").2.contains("expected `)`"));
        assert!(pos("P").2.contains("not a valid variable"));
    }

    #[test]
    fn round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let f = random_formula(&mut rng, &["p", "q", "r"], 8, true);
            let printed = f.to_string();
            assert_eq!(parse(&printed).unwrap(), f, "{printed}");
        }
    }
}
