//! The constructor mini-language used inside workspace documents.
//!
//! ```text
//! functor := "constant" ring "over" group
//!          | "fixedpoint" ring "over" group ("frobenius" | "trivial")
//!          | "burnside-c2-mod" INT
//!          | "product" NAME NAME
//!          | "quotient" NAME "by" NAME
//!          | "zero" "over" group
//! ring    := "zmod" INT | "gf" INT | "polyquot" ring RELATION | NAME
//! ```
//!
//! A relation such as `t2=2t+1` reads `t^2 = 2t + 1`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    Zmod(usize),
    Gf(usize),
    /// `base[t] / (t^2 - c1 t - c0)`.
    PolyQuot {
        base: Box<RingExpr>,
        c0: usize,
        c1: usize,
    },
    Named(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Frobenius,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorExpr {
    Constant { ring: RingExpr, group: String },
    FixedPoint { ring: RingExpr, group: String, action: Action },
    Burnside(usize),
    Product(String, String),
    Quotient { functor: String, ideal: String },
    Zero { group: String },
}

/// A syntax error, with the 1-based column in the constructor string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    end: usize,
}

impl<'a> Tokens<'a> {
    fn new(src: &'a str) -> Self {
        let mut items = Vec::new();
        let mut start = None;
        for (i, c) in src.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    items.push((s, &src[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            items.push((s, &src[s..]));
        }
        Tokens { items, pos: 0, end: src.len() }
    }

    fn column(&self) -> usize {
        self.items.get(self.pos).map_or(self.end, |t| t.0) + 1
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { column: self.column(), message: message.into() })
    }

    fn next(&mut self, what: &str) -> Result<&'a str, SyntaxError> {
        match self.items.get(self.pos) {
            Some(&(_, t)) => {
                self.pos += 1;
                Ok(t)
            }
            None => self.err(format!("expected {what}, found end of input")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        let col = self.column();
        let t = self.next(&format!("'{kw}'"))?;
        if t == kw {
            Ok(())
        } else {
            Err(SyntaxError { column: col, message: format!("expected '{kw}', found '{t}'") })
        }
    }

    fn int(&mut self) -> Result<usize, SyntaxError> {
        let col = self.column();
        let t = self.next("an integer")?;
        t.parse().map_err(|_| SyntaxError { column: col, message: format!("expected an integer, found '{t}'") })
    }

    fn name(&mut self, what: &str) -> Result<String, SyntaxError> {
        self.next(what).map(str::to_string)
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        match self.items.get(self.pos) {
            None => Ok(()),
            Some(&(_, t)) => self.err(format!("unexpected trailing '{t}'")),
        }
    }
}

const RING_KEYWORDS: [&str; 3] = ["zmod", "gf", "polyquot"];

pub fn is_reserved_ring_name(name: &str) -> bool {
    RING_KEYWORDS.contains(&name)
}

fn ring(tokens: &mut Tokens) -> Result<RingExpr, SyntaxError> {
    let head = tokens.next("a ring")?;
    Ok(match head {
        "zmod" => RingExpr::Zmod(tokens.int()?),
        "gf" => RingExpr::Gf(tokens.int()?),
        "polyquot" => {
            let base = Box::new(ring(tokens)?);
            let col = tokens.column();
            let rel = tokens.next("a relation like t2=2t+1")?;
            let (c0, c1) = relation(rel).map_err(|message| SyntaxError { column: col, message })?;
            RingExpr::PolyQuot { base, c0, c1 }
        }
        name => RingExpr::Named(name.to_string()),
    })
}

/// Parses `t2=<c1>t+<c0>` into `(c0, c1)`; either term may be absent.
fn relation(rel: &str) -> Result<(usize, usize), String> {
    let rhs = rel.strip_prefix("t2=").ok_or_else(|| format!("relation '{rel}' must start with 't2='"))?;
    let (mut c0, mut c1) = (0, 0);
    for term in rhs.split('+') {
        let bad = || format!("bad term '{term}' in relation '{rel}'");
        if let Some(coef) = term.strip_suffix('t') {
            c1 += if coef.is_empty() { 1 } else { coef.parse::<usize>().map_err(|_| bad())? };
        } else {
            c0 += term.parse::<usize>().map_err(|_| bad())?;
        }
    }
    Ok((c0, c1))
}

pub fn parse_ring(src: &str) -> Result<RingExpr, SyntaxError> {
    let mut tokens = Tokens::new(src);
    let r = ring(&mut tokens)?;
    tokens.finish()?;
    Ok(r)
}

pub fn parse_functor(src: &str) -> Result<FunctorExpr, SyntaxError> {
    let mut t = Tokens::new(src);
    let col = t.column();
    let head = t.next("a constructor")?;
    let expr = match head {
        "constant" => {
            let ring = ring(&mut t)?;
            t.keyword("over")?;
            FunctorExpr::Constant { ring, group: t.name("a group")? }
        }
        "fixedpoint" => {
            let ring = ring(&mut t)?;
            t.keyword("over")?;
            let group = t.name("a group")?;
            let col = t.column();
            let action = match t.next("'frobenius' or 'trivial'")? {
                "frobenius" => Action::Frobenius,
                "trivial" => Action::Trivial,
                other => {
                    return Err(SyntaxError { column: col, message: format!("unknown action '{other}'") });
                }
            };
            FunctorExpr::FixedPoint { ring, group, action }
        }
        "burnside-c2-mod" => FunctorExpr::Burnside(t.int()?),
        "product" => FunctorExpr::Product(t.name("a functor name")?, t.name("a functor name")?),
        "quotient" => {
            let functor = t.name("a functor name")?;
            t.keyword("by")?;
            FunctorExpr::Quotient { functor, ideal: t.name("an ideal name")? }
        }
        "zero" => {
            t.keyword("over")?;
            FunctorExpr::Zero { group: t.name("a group")? }
        }
        other => return Err(SyntaxError { column: col, message: format!("unknown constructor '{other}'") }),
    };
    t.finish()?;
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        assert_eq!(
            parse_functor("constant zmod 6 over C2").unwrap(),
            FunctorExpr::Constant { ring: RingExpr::Zmod(6), group: "C2".into() }
        );
        assert_eq!(
            parse_functor("fixedpoint gf 4 over C2 frobenius").unwrap(),
            FunctorExpr::FixedPoint { ring: RingExpr::Gf(4), group: "C2".into(), action: Action::Frobenius }
        );
        assert_eq!(parse_functor("burnside-c2-mod 9").unwrap(), FunctorExpr::Burnside(9));
        assert_eq!(parse_functor("  product  A B ").unwrap(), FunctorExpr::Product("A".into(), "B".into()));
        assert_eq!(
            parse_functor("quotient A by I").unwrap(),
            FunctorExpr::Quotient { functor: "A".into(), ideal: "I".into() }
        );
    }

    #[test]
    fn rings() {
        assert_eq!(
            parse_ring("polyquot zmod 4 t2=2t").unwrap(),
            RingExpr::PolyQuot { base: Box::new(RingExpr::Zmod(4)), c0: 0, c1: 2 }
        );
        assert_eq!(
            parse_ring("polyquot gf 2 t2=t+1").unwrap(),
            RingExpr::PolyQuot { base: Box::new(RingExpr::Gf(2)), c0: 1, c1: 1 }
        );
        assert_eq!(parse_ring("R").unwrap(), RingExpr::Named("R".into()));
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_functor("constant zmod 6 under C2").unwrap_err();
        assert_eq!(e.column, 17);
        let e = parse_functor("constant zmod six over C2").unwrap_err();
        assert_eq!(e.column, 15);
        let e = parse_functor("constant zmod 6 over").unwrap_err();
        assert_eq!(e.column, 21);
        let e = parse_functor("burnside-c2-mod 9 extra").unwrap_err();
        assert_eq!(e.column, 19);
        assert!(parse_ring("polyquot zmod 4 t3=1").is_err());
        assert!(parse_functor("").is_err());
    }
}
