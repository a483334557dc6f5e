use num_bigint::BigInt;

use super::{Field, FieldElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let k = self.field;
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = k.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = k.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let k = self.field;
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = k.mul(&acc, &self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = k
                    .div(&acc, &d)
                    .map_err(|_| Error::Parse("division by zero".into()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElement> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.field.neg(&v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.clone(),
                _ => return Err(Error::Parse("expected integer exponent".into())),
            };
            self.pos += 1;
            let e: i64 = e
                .try_into()
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            let e = if neg { -e } else { e };
            return self
                .field
                .pow(&base, e)
                .map_err(|_| Error::Parse("negative power of zero".into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.field.from_bigint(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.field.var(&name)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub(super) fn parse_element(field: &Field, s: &str) -> Result<FieldElement> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        field,
        toks,
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::super::Field;

    #[test]
    fn parses_rationals_and_residues() {
        let q = Field::rationals();
        assert_eq!(q.parse("3/6").unwrap(), q.ratio(1, 2).unwrap());
        assert_eq!(q.parse("-7").unwrap(), q.int(-7));
        let g = Field::prime(7).unwrap();
        assert_eq!(g.parse("10").unwrap(), g.int(3));
        assert_eq!(g.parse("1/3").unwrap(), g.int(5));
    }

    #[test]
    fn parses_rational_functions() {
        let k = Field::rational_functions(&["q", "r"]).unwrap();
        let q = k.var("q").unwrap();
        let r = k.var("r").unwrap();
        let e = k.parse("(q^2 - 1)/(q + 1) * r^-1").unwrap();
        let want = k.div(&k.sub(&q, &k.one()), &r).unwrap();
        assert_eq!(e, want);
        assert!(k.parse("s").is_err());
        assert!(k.parse("q +").is_err());
        assert!(k.parse("1/0").is_err());
    }

    #[test]
    fn round_trips_through_format() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let e = k.parse("(3*q^3 - q + 2)/(q^2 + 5)").unwrap();
        assert_eq!(k.parse(&k.format(&e)).unwrap(), e);
    }
}
