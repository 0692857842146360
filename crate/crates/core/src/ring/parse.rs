//! Text grammar for forms and ideals.
//!
//! ```text
//! form   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer | variable | '(' form ')'
//! ideal  := ['ideal:'] form (',' form)* ['+' 'm^' integer]
//! ```
//! Variables are `x y z w` for forms and `X Y Z X4` for dual forms; `m^t`
//! may also appear as a list item.

use std::collections::{BTreeMap, BTreeSet};

use super::form::{Form, Ring};
use super::ideal::GradedIdeal;
use super::monomial::{dual_variable_names, monomial_basis, variable_names, Monomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Var(usize, String),
    Max,
    Plus,
    Minus,
    Star,
    Caret,
    Comma,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Int(s) | Tok::Var(_, s) => s.clone(),
            Tok::Max => "m".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Caret => "^".into(),
            Tok::Comma => ",".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn parse_err(token: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        token: token.into(),
        message: message.into(),
    }
}

fn tokenize(text: &str, names: &[String], allow_max: bool) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Int(chars[start..i].iter().collect()));
            }
            a if a.is_ascii_alphabetic() => {
                // longest variable name matching here (handles `X4`)
                let rest: String = chars[i..].iter().collect();
                let best = names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_str()))
                    .max_by_key(|(_, n)| n.len());
                if let Some((k, n)) = best {
                    out.push(Tok::Var(k, n.clone()));
                    i += n.chars().count();
                } else if allow_max && a == 'm' {
                    out.push(Tok::Max);
                    i += 1;
                } else {
                    let end = (i..chars.len())
                        .find(|&j| !chars[j].is_ascii_alphanumeric())
                        .unwrap_or(chars.len());
                    let word: String = chars[i..end].iter().collect();
                    return Err(parse_err(word, "unknown variable"));
                }
            }
            other => return Err(parse_err(other.to_string(), "unexpected character")),
        }
    }
    Ok(out)
}

fn int_mod(s: &str, p: u64) -> u64 {
    s.bytes()
        .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p)
}

fn small_int(tok: &Tok) -> Result<u16> {
    match tok {
        Tok::Int(s) => s
            .parse::<u16>()
            .map_err(|_| parse_err(s.clone(), "exponent too large")),
        other => Err(parse_err(other.text(), "expected an integer exponent")),
    }
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos)
    }
    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }
}

/// Sparse, possibly inhomogeneous polynomial used while parsing.
type Poly = BTreeMap<Vec<u16>, u64>;

struct PolyParser<'a> {
    p: Parser<'a>,
    ring: Ring,
}

impl PolyParser<'_> {
    fn constant(&self, c: u64) -> Poly {
        let mut out = Poly::new();
        if c != 0 {
            out.insert(vec![0; self.ring.nvars], c);
        }
        out
    }

    fn add_into(&self, acc: &mut Poly, other: Poly, negate: bool) {
        let f = self.ring.field;
        for (m, c) in other {
            let c = if negate { f.neg(c) } else { c };
            let slot = acc.entry(m).or_insert(0);
            *slot = f.add(*slot, c);
        }
        acc.retain(|_, c| *c != 0);
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let f = self.ring.field;
        let mut out = Poly::new();
        for (ma, &ca) in a {
            for (mb, &cb) in b {
                let m: Vec<u16> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let slot = out.entry(m).or_insert(0);
                *slot = f.mul_add(*slot, ca, cb);
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut acc = Poly::new();
        let mut first = true;
        loop {
            let negate = match self.p.peek() {
                Some(Tok::Plus) => {
                    self.p.next();
                    false
                }
                Some(Tok::Minus) => {
                    self.p.next();
                    true
                }
                Some(t) if !first && *t != Tok::RParen => {
                    return Err(parse_err(t.text(), "expected `+` or `-`"))
                }
                _ if !first => return Ok(acc),
                _ => false,
            };
            first = false;
            let term = self.product()?;
            self.add_into(&mut acc, term, negate);
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.p.peek() {
                Some(Tok::Star) => {
                    self.p.next();
                }
                Some(Tok::Var(..)) | Some(Tok::LParen) => {}
                Some(Tok::Int(s)) => {
                    return Err(parse_err(s.clone(), "coefficient must precede variables"))
                }
                _ => return Ok(acc),
            }
            let next = self.power()?;
            acc = self.mul(&acc, &next);
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.p.peek() {
            self.p.next();
            let t = self
                .p
                .next()
                .ok_or_else(|| parse_err("^", "dangling `^`"))?;
            let e = small_int(t)?;
            let mut out = self.constant(1);
            for _ in 0..e {
                out = self.mul(&out, &base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.p.next() {
            Some(Tok::Int(s)) => Ok(self.constant(int_mod(s, self.ring.field.modulus()))),
            Some(Tok::Var(k, _)) => {
                let mut e = vec![0u16; self.ring.nvars];
                e[*k] = 1;
                Ok(Poly::from([(e, 1)]))
            }
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                match self.p.next() {
                    Some(Tok::RParen) => Ok(inner),
                    other => Err(parse_err(
                        other.map_or("<end>".into(), |t| t.text()),
                        "expected `)`",
                    )),
                }
            }
            other => Err(parse_err(
                other.map_or("<end>".into(), |t| t.text()),
                "expected a term",
            )),
        }
    }
}

/// Top-level terms of a token list, split at `+`/`-` outside parentheses.
fn top_level_terms(toks: &[Tok]) -> Vec<&[Tok]> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, t) in toks.iter().enumerate() {
        match t {
            Tok::LParen => depth += 1,
            Tok::RParen => depth -= 1,
            Tok::Plus | Tok::Minus if depth == 0 && i > start => {
                out.push(&toks[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    out.push(&toks[start..]);
    out
}

fn label(toks: &[Tok]) -> String {
    let s: String = toks.iter().map(Tok::text).collect();
    s.trim_start_matches(['+', '-']).to_string()
}

/// Parses one homogeneous polynomial from `toks` into `(degree, coeffs)`.
fn parse_poly(ring: Ring, toks: &[Tok], context: &str) -> Result<(usize, Vec<u64>)> {
    if toks.is_empty() {
        return Err(parse_err("<empty>", format!("empty {context}")));
    }
    // each top-level term must be homogeneous of a common degree
    let mut degree: Option<usize> = None;
    for term in top_level_terms(toks) {
        let mut pp = PolyParser {
            p: Parser { toks: term, pos: 0 },
            ring,
        };
        let poly = pp.sum()?;
        if let Some(t) = pp.p.peek() {
            return Err(parse_err(t.text(), "unexpected token"));
        }
        let degrees: BTreeSet<usize> = poly
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .collect();
        for d in degrees {
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 == d => {}
                Some(_) => {
                    return Err(parse_err(
                        label(term),
                        format!("{context} is not homogeneous"),
                    ))
                }
            }
        }
    }
    let mut pp = PolyParser {
        p: Parser { toks, pos: 0 },
        ring,
    };
    let poly = pp.sum()?;
    if let Some(t) = pp.p.peek() {
        return Err(parse_err(t.text(), "unexpected token"));
    }
    let degree = degree.unwrap_or(0);
    let basis = monomial_basis(ring.nvars, degree);
    let mut coeffs = vec![0; basis.len()];
    for (m, c) in poly {
        let idx = basis.index_of(&Monomial(m)).unwrap();
        coeffs[idx] = c;
    }
    Ok((degree, coeffs))
}

pub fn parse_form(ring: Ring, text: &str) -> Result<Form> {
    let toks = tokenize(text, &variable_names(ring.nvars), false)?;
    let (d, coeffs) = parse_poly(ring, &toks, "form")?;
    Form::from_coeffs(ring, d, coeffs)
}

/// Dual forms use the uppercase names; returns `(degree, coefficients)`.
pub fn parse_dual_coeffs(ring: Ring, text: &str) -> Result<(usize, Vec<u64>)> {
    let toks = tokenize(text, &dual_variable_names(ring.nvars), false)?;
    parse_poly(ring, &toks, "dual form")
}

pub fn parse_ideal(ring: Ring, text: &str) -> Result<GradedIdeal> {
    let body = text.trim();
    let body = body.strip_prefix("ideal:").unwrap_or(body);
    let toks = tokenize(body, &variable_names(ring.nvars), true)?;
    let mut truncation: Option<usize> = None;
    let mut gens = Vec::new();
    for item in toks.split(|t| *t == Tok::Comma) {
        let mut item = item;
        // `m^t` as an item or as a `+ m^t` suffix of the last item
        if let Some(i) = item.iter().position(|t| *t == Tok::Max) {
            let tail = &item[i..];
            let ok_shape = tail.len() == 3 && tail[1] == Tok::Caret;
            let ok_prefix = i == 0 || (i >= 2 && item[i - 1] == Tok::Plus);
            if !ok_shape || !ok_prefix {
                return Err(parse_err("m", "truncation must be written `m^t`"));
            }
            let t = small_int(&tail[2])? as usize;
            truncation = Some(truncation.map_or(t, |s| s.min(t)));
            item = if i == 0 { &item[..0] } else { &item[..i - 1] };
            if item.is_empty() {
                continue;
            }
        }
        if item.is_empty() {
            return Err(parse_err(",", "empty generator"));
        }
        let (d, coeffs) = parse_poly(ring, item, "generator")?;
        gens.push(Form::from_coeffs(ring, d, coeffs)?);
    }
    GradedIdeal::new(ring, gens, truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn r3() -> Ring {
        Ring::new(3, PrimeField::new(32003).unwrap())
    }

    #[test]
    fn parses_witness_ideal() {
        let i = parse_ideal(r3(), "ideal: x^2, x*y, z^3, y^4, y^2*z^2, y^3*z").unwrap();
        assert_eq!(i.generators().len(), 6);
        assert_eq!(i.truncation(), None);
        assert_eq!(i.hilbert_function(5).trimmed(), vec![1, 3, 4, 4]);
    }

    #[test]
    fn truncation_suffix_and_item() {
        let a = parse_ideal(r3(), "x^2, y^2 + m^4").unwrap();
        let b = parse_ideal(r3(), "x^2, y^2, m^4").unwrap();
        assert_eq!(a.truncation(), Some(4));
        assert_eq!(b.truncation(), Some(4));
        assert_eq!(a.hilbert_function(5).values, vec![1, 3, 4, 4, 0, 0]);
    }

    #[test]
    fn optional_star_and_coefficients() {
        let f = parse_form(r3(), "2xy - 3 y^2 + z*x").unwrap();
        let g = parse_form(r3(), "2*x*y - 3*y^2 + x*z").unwrap();
        assert_eq!(f, g);
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn errors_name_the_token() {
        let e = parse_form(r3(), "x^2 + w^2").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                token: "w".into(),
                message: "unknown variable".into()
            }
        );
        let e = parse_form(r3(), "x^2 + y").unwrap_err();
        assert!(matches!(e, Error::Parse { token, .. } if token == "y"));
    }

    #[test]
    fn parentheses_and_powers() {
        let f = parse_form(r3(), "z*(x + y)^2 - 2x(y z)").unwrap();
        let g = parse_form(r3(), "x^2*z + y^2*z").unwrap();
        assert_eq!(f, g);
        let e = parse_form(r3(), "x*(y + 1)").unwrap_err();
        assert!(matches!(e, Error::Parse { message, .. } if message.contains("homogeneous")));
        assert!(parse_form(r3(), "(x + y").is_err());
    }

    #[test]
    fn dual_names() {
        let r4 = Ring::new(4, PrimeField::new(32003).unwrap());
        let (d, c) = parse_dual_coeffs(r4, "X^2*X4 + Y^3").unwrap();
        assert_eq!(d, 3);
        assert_eq!(c.iter().filter(|&&a| a != 0).count(), 2);
    }
}
