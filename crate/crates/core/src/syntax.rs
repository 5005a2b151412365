//! Text syntax for polynomials and tensor fields.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' (INT | atom))*
//! atom    := NUMBER | IDENT | 'd/d' IDENT | 'd' IDENT | '(' expr ')'
//! NUMBER  := DIGITS ('/' DIGITS)?
//! ```
//!
//! `^` followed by an integer literal is a power of a polynomial; between two
//! tensor operands it is the wedge product. `d/dx` is the coordinate vector
//! field of `x` and `dx` its differential, unless `dx` is itself a variable.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarContext};
use crate::scalar::Scalar;
use crate::tensor::{Form, Multivector};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(String, Option<String>),
    Ident(String),
    VectorBasis(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let ident_end = |mut j: usize| {
        while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let num = text[i..j].to_string();
                let mut den = None;
                if j + 1 < bytes.len() && bytes[j] == b'/' && bytes[j + 1].is_ascii_digit() {
                    let mut k = j + 1;
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    den = Some(text[j + 1..k].to_string());
                    j = k;
                }
                out.push((start, Tok::Number(num, den)));
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let j = ident_end(i);
                let word = &text[i..j];
                if word == "d" && j < bytes.len() && bytes[j] == b'/' {
                    if j + 1 < bytes.len() && bytes[j + 1] == b'd' {
                        let k = ident_end(j + 2);
                        if k > j + 2 {
                            out.push((start, Tok::VectorBasis(text[j + 2..k].to_string())));
                            i = k;
                            continue;
                        }
                    }
                    return Err(Error::Parse {
                        pos: j,
                        msg: "expected `d/d<variable>`".into(),
                    });
                }
                out.push((start, Tok::Ident(word.to_string())));
                i = j;
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", text[start..].chars().next().unwrap()),
                })
            }
        }
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// Value of a parsed expression: a function or a homogeneous tensor.
enum Value<F: Scalar> {
    Poly(Polynomial<F>),
    Vector(Multivector<F>),
    Form(Form<F>),
}

impl<F: Scalar> Value<F> {
    fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Vector(_) => "multivector",
            Value::Form(_) => "form",
        }
    }
}

struct Parser<'a, F: Scalar> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: &'a VarContext,
    _f: std::marker::PhantomData<F>,
}

impl<'a, F: Scalar> Parser<'a, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: at,
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Value<F>> {
        let mut acc = self.term()?;
        loop {
            let at = self.offset();
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.term()?;
            acc = self.add(acc, rhs, negate, at)?;
        }
    }

    fn add(&self, a: Value<F>, b: Value<F>, negate: bool, at: usize) -> Result<Value<F>> {
        let mismatch = |e: Error| match e {
            Error::WrongGrade { expected, got } => Error::Parse {
                pos: at,
                msg: format!("cannot add grade {expected} and grade {got} terms"),
            },
            other => other,
        };
        Ok(match (a, b) {
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(if negate { &x - &y } else { &x + &y }),
            (Value::Vector(x), Value::Vector(y)) => Value::Vector(
                if negate { x.checked_sub(&y) } else { x.checked_add(&y) }.map_err(mismatch)?,
            ),
            (Value::Form(x), Value::Form(y)) => Value::Form(
                if negate { x.checked_sub(&y) } else { x.checked_add(&y) }.map_err(mismatch)?,
            ),
            // a bare polynomial next to grade-0 tensors
            (Value::Vector(x), Value::Poly(y)) if x.grade() == 0 => {
                self.add(Value::Vector(x), Value::Vector(Multivector::scalar(y)), negate, at)?
            }
            (Value::Poly(x), Value::Vector(y)) if y.grade() == 0 => {
                self.add(Value::Vector(Multivector::scalar(x)), Value::Vector(y), negate, at)?
            }
            (a, b) => return self.err(at, format!("cannot add {} and {}", a.kind(), b.kind())),
        })
    }

    fn term(&mut self) -> Result<Value<F>> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            let at = self.offset();
            self.bump();
            let rhs = self.unary()?;
            acc = match (acc, rhs) {
                (Value::Poly(x), Value::Poly(y)) => Value::Poly(&x * &y),
                (Value::Poly(x), Value::Vector(t)) | (Value::Vector(t), Value::Poly(x)) => {
                    Value::Vector(t.mul_poly(&x))
                }
                (Value::Poly(x), Value::Form(t)) | (Value::Form(t), Value::Poly(x)) => {
                    Value::Form(t.mul_poly(&x))
                }
                _ => return self.err(at, "use `^` for the product of two tensors"),
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value<F>> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(match self.unary()? {
                Value::Poly(p) => Value::Poly(-p),
                Value::Vector(t) => Value::Vector(-&t),
                Value::Form(t) => Value::Form(-&t),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value<F>> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Caret {
            let at = self.offset();
            self.bump();
            acc = match (acc, self.peek().clone()) {
                (Value::Poly(p), Tok::Number(digits, None)) => {
                    let at_exp = self.offset();
                    self.bump();
                    let e: u32 = match digits.parse() {
                        Ok(e) => e,
                        Err(_) => return self.err(at_exp, "exponent too large"),
                    };
                    Value::Poly(p.pow(e))
                }
                (Value::Poly(_), _) => {
                    return self.err(at, "`^` after a polynomial needs a non-negative integer exponent")
                }
                (lhs, _) => {
                    let rhs = self.atom()?;
                    match (lhs, rhs) {
                        (Value::Vector(a), Value::Vector(b)) => Value::Vector(a.wedge(&b)?),
                        (Value::Form(a), Value::Form(b)) => Value::Form(a.wedge(&b)?),
                        (a, b) => {
                            return self.err(at, format!("cannot wedge {} with {}", a.kind(), b.kind()))
                        }
                    }
                }
            };
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value<F>> {
        let at = self.offset();
        match self.bump() {
            Tok::Number(num, den) => {
                let n = F::from_decimal(&num).ok_or(Error::Parse {
                    pos: at,
                    msg: "bad number".into(),
                })?;
                let value = match den {
                    None => n,
                    Some(d) => {
                        let d = F::from_decimal(&d).ok_or(Error::Parse {
                            pos: at,
                            msg: "bad number".into(),
                        })?;
                        if d.is_zero() {
                            return self.err(at, "zero denominator");
                        }
                        n / d
                    }
                };
                Ok(Value::Poly(Polynomial::constant(self.ctx, value)))
            }
            Tok::Ident(name) => {
                if let Some(i) = self.ctx.index_of(&name) {
                    return Ok(Value::Poly(Polynomial::var(self.ctx, i)));
                }
                if let Some(i) = name.strip_prefix('d').and_then(|v| self.ctx.index_of(v)) {
                    return Ok(Value::Form(Form::coordinate(self.ctx, i)));
                }
                Err(Error::UnknownIdentifier(name))
            }
            Tok::VectorBasis(name) => {
                let i = self.ctx.require(&name)?;
                Ok(Value::Vector(Multivector::coordinate(self.ctx, i)))
            }
            Tok::LParen => {
                let v = self.expr()?;
                if self.bump() != Tok::RParen {
                    return self.err(self.toks[self.pos.saturating_sub(1)].0, "expected `)`");
                }
                Ok(v)
            }
            Tok::End => self.err(at, "unexpected end of input"),
            t => self.err(at, format!("unexpected token {t:?}")),
        }
    }
}

fn parse_value<F: Scalar>(text: &str, ctx: &VarContext) -> Result<Value<F>> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        ctx,
        _f: std::marker::PhantomData,
    };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err(p.offset(), "unexpected trailing input");
    }
    Ok(v)
}

/// Parses a polynomial such as `"x^2 - 3/2*x*y + 1"`.
pub fn parse_polynomial<F: Scalar>(text: &str, ctx: &VarContext) -> Result<Polynomial<F>> {
    match parse_value(text, ctx)? {
        Value::Poly(p) => Ok(p),
        Value::Vector(t) if t.grade() == 0 => Ok(t.as_scalar()),
        v => Err(Error::Parse {
            pos: 0,
            msg: format!("expected a polynomial, found a {}", v.kind()),
        }),
    }
}

/// Parses a multivector such as `"x * d/dx ^ d/dy"`; a bare polynomial is a
/// grade-0 field.
pub fn parse_multivector<F: Scalar>(text: &str, ctx: &VarContext) -> Result<Multivector<F>> {
    match parse_value(text, ctx)? {
        Value::Poly(p) => Ok(Multivector::scalar(p)),
        Value::Vector(t) => Ok(t),
        Value::Form(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected a multivector, found a form".into(),
        }),
    }
}

/// Parses a differential form such as `"x^2 * dx ^ dy"`; a bare polynomial is
/// a grade-0 form.
pub fn parse_form<F: Scalar>(text: &str, ctx: &VarContext) -> Result<Form<F>> {
    match parse_value(text, ctx)? {
        Value::Poly(p) => Ok(Form::scalar(p)),
        Value::Form(t) => Ok(t),
        Value::Vector(t) if t.grade() == 0 => Ok(Form::scalar(t.as_scalar())),
        Value::Vector(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected a form, found a multivector".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::Rational;

    fn ctx() -> VarContext {
        VarContext::new(["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Polynomial<Rational> {
        parse_polynomial(s, &ctx()).unwrap()
    }

    #[test]
    fn basic_examples() {
        assert!(p("0").is_zero());
        let q = p("x^2 + y");
        assert_eq!(q.num_terms(), 2);
        assert_eq!(
            q.coefficient(&Monomial::from_exponents(vec![2, 0])),
            Rational::from_int(1)
        );
        assert_eq!(
            q.coefficient(&Monomial::from_exponents(vec![0, 1])),
            Rational::from_int(1)
        );
        assert_eq!(p("(x+y)*(x-y)"), p("x^2 - y^2"));
    }

    #[test]
    fn precedence() {
        // ^ binds tighter than unary minus, which binds tighter than *
        assert_eq!(p("-x^2"), -p("x^2"));
        assert_eq!(p("2*x^2"), p("x^2 + x^2"));
        assert_eq!(p("x - y - x"), p("-y"));
        assert_eq!(p("x^2^3"), p("x^6"));
        assert_eq!(p("3/6*x"), p("1/2*x"));
        assert_eq!(p("--x"), p("x"));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial::<Rational>("x + z", &ctx()),
            Err(Error::UnknownIdentifier("z".into()))
        );
        assert!(matches!(
            parse_polynomial::<Rational>("x + * y", &ctx()),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial::<Rational>("(x + y", &ctx()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial::<Rational>("x ^ y", &ctx()),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial::<Rational>("x $ y", &ctx()),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial::<Rational>("1/0", &ctx()),
            Err(Error::Parse { .. })
        ));
        assert!(parse_polynomial::<Rational>("d/dx", &ctx()).is_err());
    }

    #[test]
    fn tensors() {
        let c = ctx();
        let pi: Multivector<Rational> = parse_multivector("x * d/dx ^ d/dy", &c).unwrap();
        assert_eq!(pi.grade(), 2);
        assert_eq!(pi.to_string(), "x * d/dx ^ d/dy");
        let w: Form<Rational> = parse_form("x^2*y*dx + x^3*dy", &c).unwrap();
        assert_eq!(w.grade(), 1);
        assert_eq!(w.to_string(), "x^2*y * dx + x^3 * dy");
        assert!(parse_multivector::<Rational>("d/dx + d/dx ^ d/dy", &c).is_err());
        assert!(parse_multivector::<Rational>("d/dx * d/dy", &c).is_err());
        assert!(parse_form::<Rational>("d/dx", &c).is_err());
        let neg: Multivector<Rational> = parse_multivector("-(x+y) * d/dy - d/dx", &c).unwrap();
        assert_eq!(neg.to_string(), "-d/dx + (-x - y) * d/dy");
    }

    #[test]
    fn variable_named_like_a_differential() {
        let c = VarContext::new(["x", "dx"]).unwrap();
        let q: Polynomial<Rational> = parse_polynomial("dx*x", &c).unwrap();
        assert_eq!(q.to_string(), "x*dx");
    }
}
