//! Text syntax for divisor classes.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | '(' expr ')' | number | atom
//! atom   := kappa | lambda | psi | psi(i) | Dirr | Dnod | Dsec
//!         | D(j;{i,...}) | Dsec(i,j)
//! ```
//!
//! `psi`, `Dnod` and `Dsec` are the sums over all markings, nodal divisors and
//! coincident-section divisors. Products must stay linear: at most one factor
//! of a product may be a class. `D(0;{i})` and the other conventionally-zero
//! names parse to `0`; names of strata that do not exist are errors.
//! [`DivisorClass`]'s `Display` output is accepted.

use std::iter::Peekable;
use std::str::CharIndices;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::class::{aggregate_classes, DivisorClass};
use crate::error::{Error, Result};
use crate::generator::{normalize_nodal_index, Generator};
use crate::marks::Marks;
use crate::rational::Rational;
use crate::space::ModuliSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(BigInt),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut it: Peekable<CharIndices> = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, c)) = it
                .peek()
                .filter(|(_, c)| c.is_ascii_alphanumeric() || *c == '_')
            {
                s.push(c);
                it.next();
            }
            out.push((pos, Token::Ident(s)));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_ascii_digit()) {
                s.push(c);
                it.next();
            }
            out.push((pos, Token::Number(s.parse().expect("digits"))));
        } else if "+-*/();,{}".contains(c) || c == '\u{2212}' {
            out.push((pos, Token::Sym(if c == '\u{2212}' { '-' } else { c })));
            it.next();
        } else {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} at offset {pos}"
            )));
        }
    }
    Ok(out)
}

/// Intermediate value: a scalar or a class.
enum Value {
    Scalar(Rational),
    Class(DivisorClass),
}

struct Parser<'a> {
    space: &'a ModuliSpace,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.offset()))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Token::Number(_)) => match self.next() {
                Some(Token::Number(n)) => Ok(n),
                _ => unreachable!(),
            },
            _ => Err(self.error("expected a number")),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.offset();
        let n = self.number()?;
        usize::try_from(n).map_err(|_| Error::Parse(format!("index too large at offset {at}")))
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let sign = if self.eat('+') {
                Rational::from_integer(1.into())
            } else if self.eat('-') {
                Rational::from_integer((-1).into())
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            acc = match (acc, rhs) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a + sign * b),
                (Value::Class(mut a), Value::Class(b)) => {
                    a.add_scaled(&b, &sign);
                    Value::Class(a)
                }
                // a bare zero is the zero class
                (Value::Class(a), Value::Scalar(b)) if b.is_zero() => Value::Class(a),
                (Value::Scalar(b), Value::Class(a)) if b.is_zero() => Value::Class(a.scale(&sign)),
                _ => return Err(self.error("cannot add a scalar to a class")),
            };
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('/') {
                let at = self.offset();
                acc = match self.factor()? {
                    Value::Scalar(d) if d.is_zero() => {
                        return Err(Error::Parse(format!("division by zero at offset {at}")))
                    }
                    Value::Scalar(d) => match acc {
                        Value::Scalar(a) => Value::Scalar(a / d),
                        Value::Class(c) => Value::Class(c.scale(&d.recip())),
                    },
                    Value::Class(_) => {
                        return Err(Error::Parse(format!("division by a class at offset {at}")))
                    }
                };
                continue;
            }
            if !self.eat('*') {
                break;
            }
            let rhs = self.factor()?;
            acc = match (acc, rhs) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a * b),
                (Value::Scalar(k), Value::Class(c)) | (Value::Class(c), Value::Scalar(k)) => {
                    Value::Class(c.scale(&k))
                }
                (Value::Class(_), Value::Class(_)) => {
                    return Err(self.error("product of two classes is not a divisor class"))
                }
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        if self.eat('-') {
            return Ok(match self.factor()? {
                Value::Scalar(a) => Value::Scalar(-a),
                Value::Class(c) => Value::Class(-c),
            });
        }
        if self.eat('+') {
            return self.factor();
        }
        if self.eat('(') {
            let v = self.expr()?;
            self.expect(')')?;
            return Ok(v);
        }
        match self.peek() {
            Some(Token::Number(_)) => Ok(Value::Scalar(Rational::from_integer(self.number()?))),
            Some(Token::Ident(_)) => {
                let at = self.offset();
                let Some(Token::Ident(name)) = self.next() else {
                    unreachable!()
                };
                self.atom(&name, at).map(Value::Class)
            }
            _ => Err(self.error("expected a number, a generator or '('")),
        }
    }

    fn atom(&mut self, name: &str, at: usize) -> Result<DivisorClass> {
        let space = self.space;
        let unit = |g: Generator| DivisorClass::generator(space, g);
        match name {
            "kappa" => unit(Generator::Kappa),
            "lambda" => unit(Generator::Lambda),
            "Dirr" => unit(Generator::Dirr),
            "Dnod" => Ok(aggregate_classes(space).d_nod),
            "psi" if self.eat('(') => {
                let i = self.index()?;
                self.expect(')')?;
                unit(space.psi(i)?)
            }
            "psi" => Ok(aggregate_classes(space).psi),
            "Dsec" if self.eat('(') => {
                let i = self.index()?;
                self.expect(',')?;
                let j = self.index()?;
                self.expect(')')?;
                unit(space.sec(i, j)?)
            }
            "Dsec" => Ok(aggregate_classes(space).d_sec),
            "D" => {
                self.expect('(')?;
                let part = self.number()?;
                let part = u32::try_from(part)
                    .map_err(|_| Error::Parse(format!("genus too large at offset {at}")))?;
                self.expect(';')?;
                self.expect('{')?;
                let mut ix = Vec::new();
                if !self.eat('}') {
                    loop {
                        ix.push(self.index()?);
                        if self.eat('}') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                self.expect(')')?;
                let marks = Marks::from_indices(&ix, space.n())?;
                match normalize_nodal_index(space, part, marks)? {
                    Some(g) => unit(g),
                    None => Ok(DivisorClass::zero(space)),
                }
            }
            _ => Err(Error::Parse(format!(
                "unknown generator '{name}' at offset {at}"
            ))),
        }
    }
}

/// Parses `text` as a divisor class on `space`.
pub fn parse_class(space: &ModuliSpace, text: &str) -> Result<DivisorClass> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty class expression".into()));
    }
    let mut p = Parser {
        space,
        tokens,
        pos: 0,
        len: text.len(),
    };
    let v = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(p.error("unexpected trailing input"));
    }
    match v {
        Value::Class(c) => Ok(c),
        Value::Scalar(k) if k.is_zero() => Ok(DivisorClass::zero(space)),
        Value::Scalar(k) => Err(Error::Parse(format!(
            "expression is the scalar {k}, not a class"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::mumford_kappa;
    use crate::rational::{int, rat};
    use crate::space::make_space;

    fn halves() -> ModuliSpace {
        make_space(1, vec![rat(1, 2), rat(1, 2)]).unwrap()
    }

    #[test]
    fn display_round_trips() {
        let s = make_space(2, vec![rat(1, 2), rat(1, 3), int(1)]).unwrap();
        let c = mumford_kappa(&s);
        assert_eq!(parse_class(&s, &c.to_string()).unwrap(), c);
        let text = "2*kappa + 3/2*psi(1) + 3/2*psi(2) + Dsec(1,2)";
        assert_eq!(parse_class(&halves(), text).unwrap().to_string(), text);
    }

    #[test]
    fn aggregates_and_arithmetic() {
        let s = halves();
        let c = parse_class(&s, "2*(psi - psi(2)) - Dsec/2 + 0").unwrap();
        assert_eq!(c.to_string(), "2*psi(1) - 1/2*Dsec(1,2)");
        let c = parse_class(&s, "-(kappa) * 3/4 + lambda*2").unwrap();
        assert_eq!(c.to_string(), "-3/4*kappa + 2*lambda");
        assert!(parse_class(&s, "kappa - kappa").unwrap().is_zero());
        assert!(parse_class(&s, "0").unwrap().is_zero());
    }

    #[test]
    fn nodal_names() {
        let s = make_space(2, vec![int(1), int(1)]).unwrap();
        assert_eq!(parse_class(&s, "D(1;{2})").unwrap().to_string(), "D(1;{1})");
        assert!(parse_class(&s, "D(0;{1})").unwrap().is_zero());
        assert!(parse_class(&s, "D(3;{})").is_err());
        let s = halves();
        assert!(matches!(
            parse_class(&s, "D(0;{1,2})"),
            Err(Error::AbsentStratum { .. })
        ));
    }

    #[test]
    fn rejections() {
        let s = halves();
        for bad in [
            "",
            "kappa*psi(1)",
            "kappa + 1",
            "psi(3)",
            "Dirr(",
            "foo",
            "1/0*kappa",
            "kappa kappa",
            "2",
            "Dsec(1,1)",
        ] {
            assert!(parse_class(&s, bad).is_err(), "{bad:?}");
        }
        let heavy = make_space(1, vec![int(1), int(1)]).unwrap();
        assert!(parse_class(&heavy, "Dsec(1,2)").is_err());
        let g0 = make_space(0, vec![int(1); 3]).unwrap();
        assert!(parse_class(&g0, "Dirr").is_err());
    }
}
