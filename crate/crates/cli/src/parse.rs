//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-'? factor
//! factor := base ('^' natural)?
//! base   := 'z'natural | 'w' | 'i' | integer ('/' natural)? | '(' expr ')' | 'conj' '(' expr ')'
//! ```
//! `conj(...)` is only accepted by [`parse_mixed`].

use std::fmt;

use quadmap_core::exactalg::{GaussianRational, HermPoly, HoloPoly, Poly, Rational, VariableSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    space: VariableSpace,
    allow_conj: bool,
    src: &'a str,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        let c = b[k] as char;
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let s = k;
            while k < b.len() && b[k].is_ascii_digit() {
                k += 1;
            }
            out.push((s, Tok::Int(src[s..k].to_string())));
        } else if c.is_ascii_alphabetic() {
            let s = k;
            while k < b.len() && b[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((s, Tok::Ident(src[s..k].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((k, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(ParseError {
                pos: k,
                msg: format!(
                    "unexpected character {:?}",
                    src[k..].chars().next().unwrap()
                ),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        2 * self.space.n()
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == &Tok::Sym('*') {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if self.peek() == &Tok::Sym('-') {
            self.bump();
            return Ok(-self.factor()?);
        }
        self.factor()
    }

    fn natural(&mut self, what: &str) -> Result<(usize, String), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(s) => Ok((pos, s)),
            _ => Err(ParseError {
                pos,
                msg: format!("expected a natural number {what}"),
            }),
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let (pos, e) = self.natural("as exponent")?;
        let e: u32 = e.parse().ok().filter(|&e| e <= 255).ok_or(ParseError {
            pos,
            msg: format!("exponent {e} is too large"),
        })?;
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        let pos = self.pos();
        let nv = self.nvars();
        let n = self.space.n();
        match self.bump() {
            Tok::Int(num) => {
                let mut r: Rational = num.parse().expect("digits");
                if self.peek() == &Tok::Sym('/') {
                    self.bump();
                    let (dpos, den) = self.natural("as denominator")?;
                    let d: Rational = den.parse().expect("digits");
                    if d.is_zero() {
                        return Err(ParseError {
                            pos: dpos,
                            msg: "zero denominator".into(),
                        });
                    }
                    r = &r / &d;
                }
                Ok(Poly::constant(nv, GaussianRational::from(r)))
            }
            Tok::Ident(id) => match id.as_str() {
                "i" => Ok(Poly::constant(nv, GaussianRational::i())),
                "w" => Ok(Poly::var(nv, n - 1)),
                "conj" => {
                    if !self.allow_conj {
                        return Err(ParseError {
                            pos,
                            msg: "conj(...) is not allowed in a holomorphic expression".into(),
                        });
                    }
                    self.expect('(')?;
                    let inner = self.expr()?;
                    self.expect(')')?;
                    Ok(conj_swap(&inner, n))
                }
                _ => {
                    let idx = id
                        .strip_prefix('z')
                        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
                    let Some(d) = idx else {
                        return Err(ParseError {
                            pos,
                            msg: format!("unknown identifier '{id}'"),
                        });
                    };
                    match d.parse::<usize>() {
                        Ok(j) if (1..n).contains(&j) => Ok(Poly::var(nv, j - 1)),
                        _ => Err(ParseError {
                            pos,
                            msg: format!("unknown variable '{id}': this space has z1..z{}", n - 1),
                        }),
                    }
                }
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => Err(ParseError {
                pos,
                msg: "unexpected end of input".into(),
            }),
            Tok::Sym(c) => Err(ParseError {
                pos,
                msg: format!("unexpected '{c}'"),
            }),
        }
    }
}

fn conj_swap(p: &Poly, n: usize) -> Poly {
    let map: Vec<usize> = (0..2 * n)
        .map(|i| if i < n { i + n } else { i - n })
        .collect();
    p.remap_vars(2 * n, &map).conj_coeffs()
}

fn run(text: &str, space: VariableSpace, allow_conj: bool) -> Result<Poly, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        space,
        allow_conj,
        src: text,
    };
    let out = p.expr()?;
    if p.peek() != &Tok::End {
        let rest = &p.src[p.pos()..];
        return p.err(format!("unexpected trailing input '{rest}'"));
    }
    Ok(out)
}

/// Parses a holomorphic polynomial in `z_1..z_{n−1}, w`.
pub fn parse_expression(text: &str, space: VariableSpace) -> Result<HoloPoly, ParseError> {
    let p = run(text, space, false)?;
    let n = space.n();
    // no conj, so only the first n variables occur
    let back: Vec<usize> = (0..2 * n).map(|i| i % n).collect();
    Ok(HoloPoly::from_poly(space, p.remap_vars(n, &back)))
}

/// Parses a polynomial in `z, w, conj(z), conj(w)`, laid out as `2n` variables.
pub fn parse_mixed(text: &str, space: VariableSpace) -> Result<Poly, ParseError> {
    run(text, space, true)
}

/// Parses a real-valued polynomial such as `z1 + conj(z1)`.
pub fn parse_herm(text: &str, space: VariableSpace) -> Result<HermPoly, ParseError> {
    let p = parse_mixed(text, space)?;
    HermPoly::new(space, p).map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })
}

/// Comma-separated expression list; the empty string is the empty list.
pub fn parse_list(text: &str, space: VariableSpace) -> Result<Vec<HoloPoly>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        out.push(parse_expression(part, space).map_err(|e| ParseError {
            pos: e.pos + offset,
            msg: e.msg,
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Comma-separated Gaussian rationals, e.g. `1, 0, -i`.
pub fn parse_point(text: &str) -> Result<Vec<GaussianRational>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let v = part
            .trim()
            .parse::<GaussianRational>()
            .map_err(|_| ParseError {
                pos: offset,
                msg: format!("'{}' is not a Gaussian rational", part.trim()),
            })?;
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}
