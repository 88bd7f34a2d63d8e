//! Text syntax for scalars and homogeneous forms.
//!
//! Scalars: integers, fractions `p/q`, `w` for the primitive cube root of
//! unity, and `r` for the quadratic generator when a tower declares one.
//! Forms: `x0`, `x1`, `x2` combined with `^`, `*`, `+`, `-` and parentheses,
//! e.g. `x0^2*x2 + x1^3 - 3*w*x0*x1*x2`.

use crate::forms::TernaryForm;
use crate::scalar::{FieldTower, Rat, Scalar};
use crate::stability::CubicLinePair;
use crate::Error;

use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    W,
    R,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Tok>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            'w' => {
                out.push(Tok::W);
                i += 1;
            }
            'r' => {
                out.push(Tok::R);
                i += 1;
            }
            'x' => {
                i += 1;
                let d = chars
                    .get(i)
                    .and_then(|c| c.to_digit(10))
                    .ok_or_else(|| Error::Parse("expected digit after x".into()))?;
                if d > 2 {
                    return Err(Error::Parse(format!("variable x{d} out of range")));
                }
                out.push(Tok::Var(d as usize));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer {text}")))?;
                out.push(Tok::Num(n));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

/// A parsed expression value: a scalar coefficient together with exponents
/// of x0, x1, x2 per monomial.
#[derive(Clone, Debug)]
struct Expr {
    /// (coefficient, [e0, e1, e2]) terms.
    terms: Vec<(Scalar, [u8; 3])>,
}

impl Expr {
    fn scalar(s: Scalar) -> Expr {
        Expr {
            terms: vec![(s, [0, 0, 0])],
        }
    }

    fn var(i: usize) -> Expr {
        let mut e = [0u8; 3];
        e[i] = 1;
        Expr {
            terms: vec![(Scalar::one(), e)],
        }
    }

    fn add(&self, rhs: &Expr) -> Expr {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        Expr { terms }.collect()
    }

    fn neg(&self) -> Expr {
        Expr {
            terms: self.terms.iter().map(|(c, e)| (-c, *e)).collect(),
        }
    }

    fn mul(&self, rhs: &Expr) -> Result<Expr, Error> {
        let mut terms = Vec::new();
        for (ca, ea) in &self.terms {
            for (cb, eb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                if e.iter().sum::<u8>() > 3 {
                    return Err(Error::Parse("monomial degree exceeds 3".into()));
                }
                terms.push((ca * cb, e));
            }
        }
        Ok(Expr { terms }.collect())
    }

    fn collect(self) -> Expr {
        let mut out: Vec<(Scalar, [u8; 3])> = Vec::new();
        for (c, e) in self.terms {
            if let Some(slot) = out.iter_mut().find(|(_, ee)| *ee == e) {
                slot.0 = &slot.0 + &c;
            } else {
                out.push((c, e));
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        Expr { terms: out }
    }

    fn pow(&self, e: u32) -> Result<Expr, Error> {
        let mut acc = Expr::scalar(Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    tower: &'a FieldTower,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            negate = true;
        } else if matches!(self.peek(), Some(Tok::Plus)) {
            self.next();
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t.neg());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                Some(Tok::Slash) => {
                    self.next();
                    let f = self.factor()?;
                    if f.terms.len() != 1 || f.terms[0].1 != [0, 0, 0] {
                        return Err(Error::Parse("can only divide by a scalar".into()));
                    }
                    let inv = f.terms[0]
                        .0
                        .inv()
                        .ok_or_else(|| Error::Parse("division by zero".into()))?;
                    acc = acc.mul(&Expr::scalar(inv))?;
                }
                // Implicit multiplication for adjacent atoms.
                Some(Tok::Var(_)) | Some(Tok::W) | Some(Tok::R) | Some(Tok::LParen)
                | Some(Tok::Num(_)) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, Error> {
        let base = match self.next() {
            Some(Tok::Num(n)) => Expr::scalar(Scalar::from_rat(Rat::from_integer(n))),
            Some(Tok::W) => Expr::scalar(Scalar::zeta()),
            Some(Tok::R) => {
                let r = self
                    .tower
                    .generator()
                    .ok_or_else(|| Error::Parse("no quadratic generator declared".into()))?;
                Expr::scalar(r)
            }
            Some(Tok::Var(i)) => Expr::var(i),
            Some(Tok::Minus) => {
                let f = self.factor()?;
                f.neg()
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => e,
                    _ => return Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e = u32::try_from(n).map_err(|_| Error::Parse("bad exponent".into()))?;
                    return base.pow(e);
                }
                _ => return Err(Error::Parse("expected exponent".into())),
            }
        }
        Ok(base)
    }
}

fn parse_expr(input: &str, tower: &FieldTower) -> Result<Expr, Error> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        tower,
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(e)
}

/// Parse a scalar expression (no variables allowed).
pub fn parse_scalar(input: &str, tower: &FieldTower) -> Result<Scalar, Error> {
    let e = parse_expr(input, tower)?;
    let mut acc = Scalar::zero();
    for (c, exps) in e.terms {
        if exps != [0, 0, 0] {
            return Err(Error::Parse("expected a scalar, found variables".into()));
        }
        acc = &acc + &c;
    }
    Ok(acc.normalize())
}

/// Parse a homogeneous form; the degree is inferred and must be uniform.
pub fn parse_form(input: &str, tower: &FieldTower) -> Result<TernaryForm, Error> {
    let e = parse_expr(input, tower)?;
    if e.terms.is_empty() {
        return Err(Error::Parse("zero form".into()));
    }
    let degree = e.terms[0].1.iter().sum::<u8>();
    if degree == 0 || degree > 3 {
        return Err(Error::Parse(format!("form degree {degree} out of range")));
    }
    for (_, exps) in &e.terms {
        if exps.iter().sum::<u8>() != degree {
            return Err(Error::Parse("form is not homogeneous".into()));
        }
    }
    let terms: Vec<((u8, u8, u8), Scalar)> = e
        .terms
        .into_iter()
        .map(|(c, e)| ((e[0], e[1], e[2]), c))
        .collect();
    Ok(TernaryForm::from_terms(degree, &terms))
}

/// Parse a pair "cubic; line".
pub fn parse_pair(cubic: &str, line: &str, tower: &FieldTower) -> Result<CubicLinePair, Error> {
    let c = parse_form(cubic, tower)?;
    let l = parse_form(line, tower)?;
    if c.degree != 3 {
        return Err(Error::Parse("first form must be a cubic".into()));
    }
    if l.degree != 1 {
        return Err(Error::Parse("second form must be a line".into()));
    }
    CubicLinePair::new(c, l)
}

/// Parse an input file: optional header `tower: r^2 + <c1>*r + <c0>` or
/// `tower: r^2 - <d>` (coefficients in w-syntax), then one pair per line as
/// `cubic; line`. Lines starting with `#` are comments.
pub fn parse_pair_file(text: &str) -> Result<(FieldTower, Vec<CubicLinePair>), Error> {
    let mut tower = FieldTower::base();
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(decl) = line.strip_prefix("tower:") {
            tower = parse_tower_decl(decl.trim())?;
            continue;
        }
        let Some((c, l)) = line.split_once(';') else {
            return Err(Error::Parse(format!(
                "line {}: expected `cubic; line`",
                lineno + 1
            )));
        };
        pairs.push(parse_pair(c.trim(), l.trim(), &tower)?);
    }
    Ok((tower, pairs))
}

/// `r^2 + c1*r + c0` with c1, c0 scalar expressions (in `w`), or the common
/// shorthand `r^2 - d`.
fn parse_tower_decl(decl: &str) -> Result<FieldTower, Error> {
    let decl = decl.replace(' ', "");
    let Some(rest) = decl.strip_prefix("r^2") else {
        return Err(Error::Parse("tower declaration must start with r^2".into()));
    };
    let base = FieldTower::base();
    if rest.is_empty() {
        return Err(Error::Parse("tower declaration needs coefficients".into()));
    }
    // Split on the `*r` marker if present: "+ c1*r + c0" or just "+ c0".
    if let Some(idx) = rest.find("*r") {
        let c1_text = &rest[..idx];
        let c0_text = &rest[idx + 2..];
        let c1 = parse_scalar(c1_text, &base)?;
        let c0 = parse_scalar(c0_text, &base)?;
        base.adjoin_quadratic(&c1, &c0)
    } else {
        let c0 = parse_scalar(rest, &base)?;
        base.adjoin_quadratic(&Scalar::zero(), &c0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_syntax() {
        let t = FieldTower::base();
        assert_eq!(parse_scalar("2/4", &t).unwrap(), Scalar::from_ratio(1, 2));
        // w^2 normalizes to -1 - w.
        assert_eq!(
            parse_scalar("w^2", &t).unwrap(),
            Scalar::zeta_sq()
        );
        assert_eq!(parse_scalar("w + w^2", &t).unwrap(), Scalar::from_int(-1));
        assert_eq!(parse_scalar("w^3", &t).unwrap(), Scalar::one());
        assert_eq!(
            parse_scalar("1+2w", &t).unwrap(),
            Scalar::from_parts(crate::scalar::rat(1), crate::scalar::rat(2))
        );
    }

    #[test]
    fn form_syntax() {
        let t = FieldTower::base();
        let f = parse_form("x0^2*x2 + x1^3 - 3*w*x0*x1*x2", &t).unwrap();
        assert_eq!(f.degree, 3);
        assert_eq!(f.a(0, 1), Scalar::one());
        assert_eq!(f.a(3, 0), Scalar::one());
        assert_eq!(f.a(1, 1), -&(&Scalar::from_int(3) * &Scalar::zeta()));
        assert!(parse_form("x0^2 + x1^3", &t).is_err());
        assert!(parse_form("x0 - x0", &t).is_err());
    }

    #[test]
    fn pair_file() {
        let text = "# demo\ntower: r^2 - 2\nx0^3 + x1^3 + x2^3; x0 + r*x1 + x2\n";
        let (tower, pairs) = parse_pair_file(text).unwrap();
        assert!(tower.quad().is_some());
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].line.b(1).level(), 4);
    }

    #[test]
    fn quadratic_generator_requires_tower() {
        let t = FieldTower::base();
        assert!(parse_scalar("r", &t).is_err());
        let t2 = t
            .adjoin_quadratic(&Scalar::zero(), &Scalar::from_int(-2))
            .unwrap();
        let r = parse_scalar("r", &t2).unwrap();
        assert_eq!(&r * &r, Scalar::from_int(2));
    }
}
