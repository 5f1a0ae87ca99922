use crate::algebra::{Rational, RationalFunction};
use crate::error::{Error, Result};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(Rational),
    Name(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        let err = |message: String| Error::Parse { line: l0, column: c0, message };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            if matches!(chars.peek(), Some('.') | Some('e') | Some('E')) {
                return Err(err(format!("`{digits}` continues as a decimal; write exact rationals p/q")));
            }
            let n: num_bigint::BigInt = digits.parse().expect("ascii digits");
            out.push(Spanned { tok: Tok::Int(Rational::from_integer(n)), line: l0, column: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                name.push(d);
                chars.next();
                column += 1;
            }
            out.push(Spanned { tok: Tok::Name(name), line: l0, column: c0 });
            continue;
        }
        if "+-*/^()".contains(c) {
            chars.next();
            column += 1;
            out.push(Spanned { tok: Tok::Op(c), line: l0, column: c0 });
            continue;
        }
        return Err(err(format!("unexpected character `{c}`")));
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [&'a str],
    params: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        Error::Parse { line: t.line, column: t.column, message: message.into() }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.peek().tok == Tok::Op(op) {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{op}`")))
        }
    }

    fn sum(&mut self) -> Result<RationalFunction> {
        let mut acc = self.product()?;
        loop {
            match self.peek().tok {
                Tok::Op('+') => {
                    self.next();
                    acc = &acc + &self.product()?;
                }
                Tok::Op('-') => {
                    self.next();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Op('*') => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    let at = self.next();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|_| Error::Parse {
                        line: at.line,
                        column: at.column,
                        message: "division by zero".into(),
                    })?;
                }
                Tok::Name(_) | Tok::Int(_) | Tok::Op('(') => {
                    return Err(self.error_here("implicit multiplication is not allowed; write `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek().tok == Tok::Op('-') {
            self.next();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Op('^') {
            self.next();
            let k = self.exponent()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    /// Nonnegative integer, right associative: `2^3^2 = 2^9`.
    fn exponent(&mut self) -> Result<u32> {
        let at = self.peek().clone();
        let value = match at.tok {
            Tok::Int(ref n) => {
                self.next();
                n.clone()
            }
            Tok::Op('(') => {
                self.next();
                let e = self.sum()?;
                self.expect(')')?;
                e.constant_value().ok_or_else(|| Error::Parse {
                    line: at.line,
                    column: at.column,
                    message: "exponent must be a constant".into(),
                })?
            }
            Tok::Op('-') => return Err(self.error_here("negative exponents are not allowed")),
            _ => return Err(self.error_here("expected a nonnegative integer exponent")),
        };
        let bad = |message: &str| Error::Parse { line: at.line, column: at.column, message: message.into() };
        if !value.is_integer() || value < Rational::from_integer(0.into()) {
            return Err(bad("exponent must be a nonnegative integer"));
        }
        let mut k: u32 = value
            .to_integer()
            .try_into()
            .ok()
            .filter(|&k| k <= MAX_EXPONENT)
            .ok_or_else(|| bad("exponent too large"))?;
        if self.peek().tok == Tok::Op('^') {
            self.next();
            let e = self.exponent()?;
            k = k
                .checked_pow(e)
                .filter(|&k| k <= MAX_EXPONENT)
                .ok_or_else(|| bad("exponent too large"))?;
        }
        Ok(k)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(RationalFunction::constant(n)),
            Tok::Name(name) => {
                if self.vars.contains(&name.as_str()) || self.params.contains(&name.as_str()) {
                    Ok(RationalFunction::var(&name))
                } else {
                    Err(Error::UnknownIdentifier(name))
                }
            }
            Tok::Op('(') => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => Err(Error::Parse { line: t.line, column: t.column, message: "unexpected end of input".into() }),
            Tok::Op(c) => Err(Error::Parse { line: t.line, column: t.column, message: format!("unexpected `{c}`") }),
        }
    }
}

/// Parses `text` into an exact rational function.
///
/// Integers, names from `vars` or `params`, `+ - * / ^` and parentheses.
/// `^` binds tightest and takes a nonnegative integer; unary minus comes
/// next, then `*` and `/`, then `+` and `-`. Multiplication is explicit.
pub fn parse_expression(text: &str, vars: &[&str], params: &[&str]) -> Result<RationalFunction> {
    let mut p = Parser { toks: lex(text)?, pos: 0, vars, params };
    let e = p.sum()?;
    if p.peek().tok != Tok::End {
        return Err(p.error_here("trailing input"));
    }
    Ok(e)
}

/// Parses a constant expression such as `-3/4` or `2^10`.
pub fn parse_constant(text: &str) -> Result<Rational> {
    let e = parse_expression(text, &[], &[])?;
    e.constant_value().ok_or_else(|| Error::Parse { line: 1, column: 1, message: format!("`{text}` is not constant") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    const XY: &[&str] = &["x", "y"];

    fn parse(t: &str) -> RationalFunction {
        parse_expression(t, XY, &["b", "c"]).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-x^2").to_string(), "-x^2");
        assert_eq!(parse("2^3^2"), RationalFunction::constant(int(512)));
        assert_eq!(parse("1 - 2 - 3"), RationalFunction::constant(int(-4)));
        assert_eq!(parse("3/4*x").to_string(), "3/4*x");
        assert_eq!(parse("12/2/3"), RationalFunction::constant(int(2)));
        assert_eq!(parse("--x"), parse("x"));
    }

    #[test]
    fn example_fields() {
        let q = parse("-x + (b^2 - x^2)*y");
        assert_eq!(q.to_string(), "b^2*y - x^2*y - x");
        let f = parse("x*(1 - c*x^2)/(1 + c*x^2)");
        assert_eq!(f.num().to_string(), "-c*x^3 + x");
        assert_eq!(parse_constant("-3/4").unwrap(), rat(-3, 4));
    }

    #[test]
    fn rejects() {
        let parse_err = |t: &str| parse_expression(t, XY, &[]).unwrap_err();
        assert!(matches!(parse_err("x^-1"), Error::Parse { column: 3, .. }));
        assert!(matches!(parse_err("0.5*x"), Error::Parse { .. }));
        assert!(matches!(parse_err("2 x"), Error::Parse { .. }));
        assert!(matches!(parse_err("x^(1/2)"), Error::Parse { .. }));
        assert!(matches!(parse_err("x/0"), Error::Parse { .. }));
        assert!(matches!(parse_err("(x + 1"), Error::Parse { .. }));
        assert_eq!(parse_err("z + 1"), Error::UnknownIdentifier("z".into()));
        assert!(matches!(parse_err("x +\n  # 1"), Error::Parse { line: 2, column: 3, .. }));
    }
}
