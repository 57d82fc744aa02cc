//! Group-expression language.
//!
//! ```text
//! expr    := term ("x" term)*          direct product
//! term    := power ("*" power)*        central product, binds tighter than "x"
//! power   := primary ("^" INT)?        repeated direct factor
//! primary := atom | "(" expr ")"
//! atom    := Z m | D n | Q n | SD n | M n | ES+ n | ES- n | AES n
//!          | Dih "(" expr ")" | Dic "(" expr ["," INT] ")"
//! ```
//!
//! Family subscripts are total group orders (`D16` has order 16). Numeric
//! parameters may be written bare (`Z4`) or parenthesized (`AES(16)`).
//! Atom names are case-insensitive and whitespace is ignored.

use std::fmt;

use crate::error::{GroupError, Result};
use crate::group::{self, Group, HARD_ORDER_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Descriptor {
    Cyclic(u64),
    CyclicPower(u64, u32),
    Dihedral(u64),
    Quaternion(u64),
    QuasiDihedral(u64),
    Modular(u64),
    ExtraspecialPlus(u64),
    ExtraspecialMinus(u64),
    AlmostExtraspecial(u64),
    GenDihedral(Box<Descriptor>),
    /// Base group and the position of `gamma^2` among the base's
    /// involutions in canonical order; `None` picks the involution of a
    /// largest cyclic factor.
    GenDicyclic(Box<Descriptor>, Option<usize>),
    Direct(Vec<Descriptor>),
    Central(Vec<Descriptor>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownAtom(String),
    MalformedParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub kind: ParseErrorKind,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax => write!(f, "syntax error at byte {}", self.offset)?,
            ParseErrorKind::UnknownAtom(name) => {
                write!(f, "unknown atom {name:?} at byte {}", self.offset)?
            }
            ParseErrorKind::MalformedParameter(msg) => {
                write!(f, "malformed parameter at byte {}: {msg}", self.offset)?
            }
        }
        if !self.expected.is_empty() {
            write!(f, "; expected one of: {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const ATOM_NAMES: &[&str] = &[
    "Z", "D", "Q", "SD", "M", "ES+", "ES-", "AES", "Dih", "Dic", "(",
];

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&self, offset: usize, kind: ParseErrorKind, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset,
            kind,
            expected: expected.to_vec(),
        }
    }

    fn expect_char(&mut self, want: char, label: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            Ok(())
        } else {
            Err(self.error(self.pos, ParseErrorKind::Syntax, &[label]))
        }
    }

    fn integer(&mut self) -> Result<(u64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits: &str = {
            let rest = &self.src[self.pos..];
            let len = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            &rest[..len]
        };
        if digits.is_empty() {
            return Err(self.error(start, ParseErrorKind::Syntax, &["integer"]));
        }
        self.pos += digits.len();
        let v = digits.parse::<u64>().map_err(|_| {
            self.error(
                start,
                ParseErrorKind::MalformedParameter(format!("{digits} is too large")),
                &[],
            )
        })?;
        Ok((v, start))
    }

    fn parse_expr(&mut self) -> Result<Descriptor, ParseError> {
        let mut operands = vec![self.parse_term()?];
        while matches!(self.peek(), Some('x' | 'X' | '×')) {
            self.pos += self.peek().expect("peeked").len_utf8();
            operands.push(self.parse_term()?);
        }
        Ok(if operands.len() == 1 {
            operands.pop().expect("one operand")
        } else {
            Descriptor::Direct(operands)
        })
    }

    fn parse_term(&mut self) -> Result<Descriptor, ParseError> {
        let mut operands = vec![self.parse_power()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            operands.push(self.parse_power()?);
        }
        Ok(if operands.len() == 1 {
            operands.pop().expect("one operand")
        } else {
            Descriptor::Central(operands)
        })
    }

    fn parse_power(&mut self) -> Result<Descriptor, ParseError> {
        let base = self.parse_primary()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let (k, at) = self.integer()?;
        if k == 0 || k > 64 {
            return Err(self.error(
                at,
                ParseErrorKind::MalformedParameter(format!("exponent {k} must be in 1..=64")),
                &[],
            ));
        }
        Ok(match base {
            Descriptor::Cyclic(m) => Descriptor::CyclicPower(m, k as u32),
            other => Descriptor::Direct(vec![other; k as usize]),
        })
    }

    fn parse_primary(&mut self) -> Result<Descriptor, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.expect_char(')', ")")?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => self.parse_atom(),
            _ => Err(self.error(self.pos, ParseErrorKind::Syntax, ATOM_NAMES)),
        }
    }

    /// Numeric parameter written bare or in parentheses.
    fn atom_parameter(&mut self) -> Result<(u64, usize), ParseError> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let v = self.integer()?;
            self.expect_char(')', ")")?;
            Ok(v)
        } else {
            self.integer()
        }
    }

    fn parse_atom(&mut self) -> Result<Descriptor, ParseError> {
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        let mut name = rest[..len].to_ascii_uppercase();
        self.pos += len;
        if name == "ES" {
            match self.src[self.pos..].chars().next() {
                Some(sign @ ('+' | '-')) => {
                    name.push(sign);
                    self.pos += 1;
                }
                _ => return Err(self.error(self.pos, ParseErrorKind::Syntax, &["+", "-"])),
            }
        }
        let malformed = |p: &Parser, at: usize, msg: String| {
            p.error(at, ParseErrorKind::MalformedParameter(msg), &[])
        };
        match name.as_str() {
            "DIH" | "DIC" => {
                self.expect_char('(', "(")?;
                let inner = self.parse_expr()?;
                let mut index = None;
                if name == "DIC" && self.peek() == Some(',') {
                    self.pos += 1;
                    index = Some(self.integer()?.0 as usize);
                }
                self.expect_char(')', if name == "DIC" { ", or )" } else { ")" })?;
                Ok(if name == "DIH" {
                    Descriptor::GenDihedral(Box::new(inner))
                } else {
                    Descriptor::GenDicyclic(Box::new(inner), index)
                })
            }
            "Z" | "D" | "Q" | "SD" | "M" | "ES+" | "ES-" | "AES" => {
                let (v, at) = self.atom_parameter()?;
                let pow2 = v.is_power_of_two();
                let log = v.trailing_zeros();
                let check = |ok: bool, what: &str| {
                    if ok {
                        Ok(())
                    } else {
                        Err(malformed(self, at, format!("{name}{v}: {what}")))
                    }
                };
                let d = match name.as_str() {
                    "Z" => {
                        check(v >= 1, "order must be positive")?;
                        Descriptor::Cyclic(v)
                    }
                    "D" => {
                        check(v >= 4 && v % 2 == 0, "order must be even and at least 4")?;
                        Descriptor::Dihedral(v)
                    }
                    "Q" => {
                        check(pow2 && v >= 8, "order must be a power of two, at least 8")?;
                        Descriptor::Quaternion(v)
                    }
                    "SD" => {
                        check(pow2 && v >= 16, "order must be a power of two, at least 16")?;
                        Descriptor::QuasiDihedral(v)
                    }
                    "M" => {
                        check(pow2 && v >= 16, "order must be a power of two, at least 16")?;
                        Descriptor::Modular(v)
                    }
                    "ES+" | "ES-" => {
                        check(
                            pow2 && log >= 3 && log % 2 == 1,
                            "order must be 2^(2r+1) with r >= 1",
                        )?;
                        if name == "ES+" {
                            Descriptor::ExtraspecialPlus(v)
                        } else {
                            Descriptor::ExtraspecialMinus(v)
                        }
                    }
                    _ => {
                        check(
                            pow2 && log >= 4 && log % 2 == 0,
                            "order must be 2^(2r+2) with r >= 1",
                        )?;
                        Descriptor::AlmostExtraspecial(v)
                    }
                };
                Ok(d)
            }
            _ => Err(self.error(
                start,
                ParseErrorKind::UnknownAtom(rest[..len].to_string()),
                ATOM_NAMES,
            )),
        }
    }
}

pub fn parse_descriptor(text: &str) -> Result<Descriptor, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let d = p.parse_expr()?;
    if p.peek().is_some() {
        return Err(p.error(
            p.pos,
            ParseErrorKind::Syntax,
            &["x", "*", "^", "end of input"],
        ));
    }
    Ok(d)
}

impl std::str::FromStr for Descriptor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_descriptor(s)
    }
}

impl Descriptor {
    fn is_abelian_atom(&self) -> bool {
        matches!(self, Descriptor::Cyclic(_) | Descriptor::CyclicPower(..))
    }

    /// Normal form: nested direct products flattened and sorted by their
    /// printed form, left-nested central products flattened.
    pub fn canonical(&self) -> Descriptor {
        match self {
            Descriptor::GenDihedral(inner) => Descriptor::GenDihedral(Box::new(inner.canonical())),
            Descriptor::GenDicyclic(inner, z) => {
                Descriptor::GenDicyclic(Box::new(inner.canonical()), *z)
            }
            Descriptor::Direct(ops) => {
                let mut flat = Vec::new();
                for op in ops {
                    match op.canonical() {
                        Descriptor::Direct(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                let mut keyed: Vec<(String, Descriptor)> =
                    flat.into_iter().map(|d| (d.to_string(), d)).collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                let mut flat: Vec<Descriptor> = keyed.into_iter().map(|(_, d)| d).collect();
                if flat.len() == 1 {
                    flat.pop().expect("one operand")
                } else {
                    Descriptor::Direct(flat)
                }
            }
            Descriptor::Central(ops) => {
                let mut flat = Vec::new();
                for (i, op) in ops.iter().enumerate() {
                    match op.canonical() {
                        Descriptor::Central(inner) if i == 0 => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                if flat.len() == 1 {
                    flat.pop().expect("one operand")
                } else {
                    Descriptor::Central(flat)
                }
            }
            atom => atom.clone(),
        }
    }

    pub fn canonical_string(&self) -> String {
        self.canonical().to_string()
    }

    /// Order of the group this descriptor builds, without building it.
    pub fn predicted_order(&self) -> u128 {
        let sat = |a: u128, b: u128| a.saturating_mul(b);
        match self {
            Descriptor::Cyclic(m) => *m as u128,
            Descriptor::CyclicPower(m, k) => (0..*k).fold(1u128, |acc, _| sat(acc, *m as u128)),
            Descriptor::Dihedral(n)
            | Descriptor::Quaternion(n)
            | Descriptor::QuasiDihedral(n)
            | Descriptor::Modular(n)
            | Descriptor::ExtraspecialPlus(n)
            | Descriptor::ExtraspecialMinus(n)
            | Descriptor::AlmostExtraspecial(n) => *n as u128,
            Descriptor::GenDihedral(inner) | Descriptor::GenDicyclic(inner, _) => {
                sat(2, inner.predicted_order())
            }
            Descriptor::Direct(ops) => ops
                .iter()
                .fold(1u128, |acc, d| sat(acc, d.predicted_order())),
            Descriptor::Central(ops) => {
                let prod = ops
                    .iter()
                    .fold(1u128, |acc, d| sat(acc, d.predicted_order()));
                if prod == u128::MAX {
                    prod
                } else {
                    prod >> (ops.len() - 1)
                }
            }
        }
    }

    /// Construct the group, after canonicalizing.
    pub fn build(&self) -> Result<Group> {
        let order = self.predicted_order();
        if order > HARD_ORDER_CAP as u128 {
            return Err(GroupError::CapExceeded {
                order,
                cap: HARD_ORDER_CAP,
            });
        }
        self.canonical().build_canonical()
    }

    fn build_canonical(&self) -> Result<Group> {
        match self {
            Descriptor::Cyclic(m) => group::cyclic(*m),
            Descriptor::CyclicPower(m, k) => group::abelian(&vec![*m; *k as usize]),
            Descriptor::Dihedral(n) => group::dihedral(*n),
            Descriptor::Quaternion(n) => group::quaternion(*n),
            Descriptor::QuasiDihedral(n) => group::quasi_dihedral(*n),
            Descriptor::Modular(n) => group::modular(*n),
            Descriptor::ExtraspecialPlus(n) => group::extraspecial_plus(*n),
            Descriptor::ExtraspecialMinus(n) => group::extraspecial_minus(*n),
            Descriptor::AlmostExtraspecial(n) => group::almost_extraspecial(*n),
            Descriptor::GenDihedral(inner) => {
                group::generalized_dihedral(&inner.build_canonical()?)
            }
            Descriptor::GenDicyclic(inner, index) => {
                let base = inner.build_canonical()?;
                if !base.is_abelian() {
                    return Err(GroupError::InvalidParameter(
                        "generalized dicyclic group needs an abelian base".into(),
                    ));
                }
                let square = match index {
                    None => group::default_dicyclic_square(&base)?,
                    Some(i) => {
                        let inv = base.involutions();
                        inv.get(*i).cloned().ok_or_else(|| {
                            GroupError::InvalidParameter(format!(
                                "involution index {i} out of range (base has {})",
                                inv.len()
                            ))
                        })?
                    }
                };
                group::generalized_dicyclic(&base, &square)
            }
            Descriptor::Direct(ops) => {
                // cyclic atoms merge into one abelian block, moduli ascending
                let mut moduli: Vec<u64> = Vec::new();
                let mut others = Vec::new();
                for op in ops {
                    match op {
                        Descriptor::Cyclic(m) => moduli.push(*m),
                        Descriptor::CyclicPower(m, k) => {
                            moduli.extend(std::iter::repeat_n(*m, *k as usize))
                        }
                        other => others.push(other.build_canonical()?),
                    }
                }
                moduli.sort_unstable();
                if !moduli.is_empty() {
                    others.push(group::abelian(&moduli)?);
                }
                let (first, rest) = others.split_first().expect("nonempty product");
                rest.iter()
                    .try_fold(first.clone(), |acc, g| group::direct_product(&acc, g))
            }
            Descriptor::Central(ops) => {
                let factors = ops
                    .iter()
                    .map(|d| d.build_canonical())
                    .collect::<Result<Vec<_>>>()?;
                group::central_product_all(&factors)
            }
        }
    }

    /// True when every leaf is a cyclic atom combined by direct products.
    pub fn is_plainly_abelian(&self) -> bool {
        match self {
            Descriptor::Direct(ops) => ops.iter().all(Descriptor::is_plainly_abelian),
            d => d.is_abelian_atom(),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Cyclic(m) => write!(f, "Z{m}"),
            Descriptor::CyclicPower(m, k) => write!(f, "Z{m}^{k}"),
            Descriptor::Dihedral(n) => write!(f, "D{n}"),
            Descriptor::Quaternion(n) => write!(f, "Q{n}"),
            Descriptor::QuasiDihedral(n) => write!(f, "SD{n}"),
            Descriptor::Modular(n) => write!(f, "M{n}"),
            Descriptor::ExtraspecialPlus(n) => write!(f, "ES+({n})"),
            Descriptor::ExtraspecialMinus(n) => write!(f, "ES-({n})"),
            Descriptor::AlmostExtraspecial(n) => write!(f, "AES({n})"),
            Descriptor::GenDihedral(inner) => write!(f, "Dih({inner})"),
            Descriptor::GenDicyclic(inner, None) => write!(f, "Dic({inner})"),
            Descriptor::GenDicyclic(inner, Some(i)) => write!(f, "Dic({inner}, {i})"),
            Descriptor::Direct(ops) => {
                for (i, op) in ops.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    match op {
                        Descriptor::Direct(_) => write!(f, "({op})")?,
                        _ => write!(f, "{op}")?,
                    }
                }
                Ok(())
            }
            Descriptor::Central(ops) => {
                for (i, op) in ops.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    match op {
                        Descriptor::Direct(_) | Descriptor::Central(_) => write!(f, "({op})")?,
                        _ => write!(f, "{op}")?,
                    }
                }
                Ok(())
            }
        }
    }
}
