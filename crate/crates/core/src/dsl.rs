//! The ring recipe language.
//!
//! ```text
//! spec  := ring
//! ring  := "zmod(" nat ")" | "gf(" nat ["," nat] ")" | "prod(" ring {"," ring} ")"
//!        | "mat(" ring "," nat ")" | "tri(" field ";" nat ";" dsrc ")"
//!        | "trimat(" ring "," ring ")" | "idealize(" field "," nat ")"
//! field := "gf(" nat ["," nat] ")"
//! dsrc  := "gen" (matrix | "[" matrix {"," matrix} "]") | "companion" poly
//!        | "scalars" | "full"
//! ```
//!
//! Matrix entries and polynomial coefficients are field element codes
//! (`0..p^k`); polynomials list coefficients low degree first.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::is_prime;

pub const MAX_INPUT: usize = 64 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DivisionSource {
    /// Subring generated by the listed matrices.
    Gen(Vec<Vec<Vec<u64>>>),
    /// Span of the powers of the companion matrix of a monic polynomial.
    Companion(Vec<u64>),
    /// Scalar matrices.
    Scalars,
    /// The field itself as a 1x1 block.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zmod(u64),
    Gf(FieldSpec),
    Prod(Vec<RingSpec>),
    Mat(Box<RingSpec>, u32),
    Tri {
        field: FieldSpec,
        n: u32,
        source: DivisionSource,
    },
    Trimat(Box<RingSpec>, Box<RingSpec>),
    Idealize {
        field: FieldSpec,
        dim: u32,
    },
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "gf({})", self.p)
        } else {
            write!(f, "gf({},{})", self.p, self.k)
        }
    }
}

fn write_list<T>(
    f: &mut fmt::Formatter<'_>,
    items: &[T],
    each: impl Fn(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        each(f, x)?;
    }
    f.write_str("]")
}

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &Vec<Vec<u64>>) -> fmt::Result {
    write_list(f, m, |f, row| write_list(f, row, |f, x| write!(f, "{x}")))
}

impl fmt::Display for DivisionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisionSource::Gen(mats) if mats.len() == 1 => {
                f.write_str("gen")?;
                write_matrix(f, &mats[0])
            }
            DivisionSource::Gen(mats) => {
                f.write_str("gen")?;
                write_list(f, mats, write_matrix)
            }
            DivisionSource::Companion(p) => {
                f.write_str("companion")?;
                write_list(f, p, |f, x| write!(f, "{x}"))
            }
            DivisionSource::Scalars => f.write_str("scalars"),
            DivisionSource::Full => f.write_str("full"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "zmod({n})"),
            RingSpec::Gf(fs) => write!(f, "{fs}"),
            RingSpec::Prod(parts) => {
                f.write_str("prod(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            RingSpec::Mat(base, k) => write!(f, "mat({base},{k})"),
            RingSpec::Tri { field, n, source } => write!(f, "tri({field};{n};{source})"),
            RingSpec::Trimat(a, b) => write!(f, "trimat({a},{b})"),
            RingSpec::Idealize { field, dim } => write!(f, "idealize({field},{dim})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a keyword");
        }
        Ok((start, std::str::from_utf8(&self.src[start..self.pos]).unwrap()))
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("number too large")
            })
    }

    fn small(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.nat()?;
        u32::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect(b'[')?;
        let mut out = vec![item(self)?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(item(self)?);
        }
        self.expect(b']')?;
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<u64>>> {
        self.list(|p| p.list(Self::nat))
    }

    fn field(&mut self) -> Result<FieldSpec> {
        let (start, kw) = self.ident()?;
        if kw != "gf" {
            self.pos = start;
            return self.err(format!("expected a field 'gf(...)', found '{kw}'"));
        }
        self.gf_args()
    }

    fn gf_args(&mut self) -> Result<FieldSpec> {
        self.expect(b'(')?;
        let p = self.nat()?;
        let k = if self.peek() == Some(b',') {
            self.pos += 1;
            self.small()?
        } else {
            1
        };
        self.expect(b')')?;
        Ok(FieldSpec { p, k })
    }

    fn source(&mut self) -> Result<DivisionSource> {
        let (start, kw) = self.ident()?;
        match kw {
            "gen" => {
                self.skip_ws();
                let depth = self.src[self.pos..]
                    .iter()
                    .filter(|c| !c.is_ascii_whitespace())
                    .take_while(|&&c| c == b'[')
                    .count();
                if depth >= 3 {
                    Ok(DivisionSource::Gen(self.list(Self::matrix)?))
                } else {
                    Ok(DivisionSource::Gen(vec![self.matrix()?]))
                }
            }
            "companion" => Ok(DivisionSource::Companion(self.list(Self::nat)?)),
            "scalars" => Ok(DivisionSource::Scalars),
            "full" => Ok(DivisionSource::Full),
            other => {
                self.pos = start;
                self.err(format!(
                    "unknown division-ring source '{other}' (expected gen, companion, scalars or full)"
                ))
            }
        }
    }

    fn ring(&mut self) -> Result<RingSpec> {
        let (start, kw) = self.ident()?;
        let spec = match kw {
            "zmod" => {
                self.expect(b'(')?;
                let n = self.nat()?;
                self.expect(b')')?;
                RingSpec::Zmod(n)
            }
            "gf" => RingSpec::Gf(self.gf_args()?),
            "prod" => {
                self.expect(b'(')?;
                let mut parts = vec![self.ring()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    parts.push(self.ring()?);
                }
                self.expect(b')')?;
                RingSpec::Prod(parts)
            }
            "mat" => {
                self.expect(b'(')?;
                let base = self.ring()?;
                self.expect(b',')?;
                let k = self.small()?;
                self.expect(b')')?;
                RingSpec::Mat(Box::new(base), k)
            }
            "tri" => {
                self.expect(b'(')?;
                let field = self.field()?;
                self.expect(b';')?;
                let n = self.small()?;
                self.expect(b';')?;
                let source = self.source()?;
                self.expect(b')')?;
                RingSpec::Tri { field, n, source }
            }
            "trimat" => {
                self.expect(b'(')?;
                let a = self.ring()?;
                self.expect(b',')?;
                let b = self.ring()?;
                self.expect(b')')?;
                RingSpec::Trimat(Box::new(a), Box::new(b))
            }
            "idealize" => {
                self.expect(b'(')?;
                let field = self.field()?;
                self.expect(b',')?;
                let dim = self.small()?;
                self.expect(b')')?;
                RingSpec::Idealize { field, dim }
            }
            other => {
                self.pos = start;
                return self.err(format!("unknown ring constructor '{other}'"));
            }
        };
        Ok(spec)
    }
}

/// Parses and semantically validates a ring recipe.
pub fn parse_spec(input: &str) -> Result<RingSpec> {
    if input.len() > MAX_INPUT {
        return Err(Error::Syntax {
            pos: MAX_INPUT,
            msg: "input exceeds 64 KiB".into(),
        });
    }
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let spec = p.ring()?;
    if let Some(c) = p.peek() {
        return p.err(format!("unexpected trailing '{}'", c as char));
    }
    validate(&spec)?;
    Ok(spec)
}

fn validate_field(f: &FieldSpec) -> Result<u64> {
    if !is_prime(f.p) {
        return Err(Error::Semantic(format!("gf base {} is not prime", f.p)));
    }
    if f.k == 0 {
        return Err(Error::Semantic("gf degree must be at least 1".into()));
    }
    f.p.checked_pow(f.k)
        .filter(|q| *q <= u16::MAX as u64)
        .ok_or_else(|| Error::Semantic(format!("field {f} is too large")))
}

fn validate(spec: &RingSpec) -> Result<()> {
    match spec {
        RingSpec::Zmod(n) => {
            if *n < 2 {
                return Err(Error::Semantic(format!("zmod({n}) is not a nonzero ring")));
            }
        }
        RingSpec::Gf(f) => {
            validate_field(f)?;
        }
        RingSpec::Prod(parts) => parts.iter().try_for_each(validate)?,
        RingSpec::Mat(base, k) => {
            validate(base)?;
            if *k == 0 {
                return Err(Error::Semantic("mat size must be at least 1".into()));
            }
        }
        RingSpec::Tri { field, n, source } => {
            let q = validate_field(field)?;
            let n = *n as usize;
            if n == 0 {
                return Err(Error::Semantic("tri block size must be at least 1".into()));
            }
            let entry = |x: &u64| {
                if *x < q {
                    Ok(())
                } else {
                    Err(Error::Semantic(format!("entry {x} is not an element of {field}")))
                }
            };
            match source {
                DivisionSource::Gen(mats) => {
                    for m in mats {
                        if m.len() != n || m.iter().any(|r| r.len() != n) {
                            return Err(Error::Semantic(format!(
                                "generator is not a {n}x{n} matrix"
                            )));
                        }
                        m.iter().flatten().try_for_each(entry)?;
                    }
                }
                DivisionSource::Companion(poly) => {
                    poly.iter().try_for_each(entry)?;
                    if poly.last() != Some(&1) {
                        return Err(Error::Semantic("companion polynomial must be monic".into()));
                    }
                    if poly.len() != n + 1 {
                        return Err(Error::Semantic(format!(
                            "companion polynomial must have degree {n}"
                        )));
                    }
                }
                DivisionSource::Scalars => {}
                DivisionSource::Full => {
                    if n != 1 {
                        return Err(Error::Semantic("'full' requires block size 1".into()));
                    }
                }
            }
        }
        RingSpec::Trimat(a, b) => {
            validate(a)?;
            validate(b)?;
        }
        RingSpec::Idealize { field, dim } => {
            validate_field(field)?;
            if *dim == 0 {
                return Err(Error::Semantic("idealize dimension must be at least 1".into()));
            }
        }
    }
    Ok(())
}
