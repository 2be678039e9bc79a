//! Symbolic cell labels: atoms plus the constructors produced by the
//! excision moves, with a total sort discipline (2-cell / 1-cell / 0-cell).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("cannot parse label {0:?}: {1}")]
    Parse(String, String),
    #[error("sort error in {0}: {1}")]
    Sort(String, String),
}

/// The dimension of the cell a label may sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    Cell2,
    Cell1,
    Cell0,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Cell2 => write!(f, "2-cell"),
            Sort::Cell1 => write!(f, "1-cell"),
            Sort::Cell0 => write!(f, "0-cell"),
        }
    }
}

/// A cell label: an atom by library name, or a constructor term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelExpr {
    Atom(String),
    /// Relative tensor of two 2-cell labels over the ambient base.
    RelProd(Box<LabelExpr>, Box<LabelExpr>),
    /// Reversed braiding of a 2-cell label.
    Rev(Box<LabelExpr>),
    /// Conjugate braiding of a 2-cell label.
    Conj(Box<LabelExpr>),
    /// Center over the base of a 1-cell label.
    CenterE(Box<LabelExpr>),
    /// `M (x)_D N`: two 1-cells fused across the 2-cell between them.
    BimodTensor(Box<LabelExpr>, Box<LabelExpr>, Box<LabelExpr>),
    /// `P (x)_L Q`: two 0-cells joined along the contracted 1-cell L.
    VFuse(Box<LabelExpr>, Box<LabelExpr>, Box<LabelExpr>),
    /// `K (x)_A L`: two parallel 1-cells merged across the bigon A.
    EMerge(Box<LabelExpr>, Box<LabelExpr>, Box<LabelExpr>),
    /// A 2-cell algebra seen as a 1-disk algebra.
    Forget1(Box<LabelExpr>),
    /// A 1-cell algebra seen as a 0-disk algebra.
    Forget0(Box<LabelExpr>),
    /// Endofunctor algebra of a 0-cell over the base.
    FunE(Box<LabelExpr>, Box<LabelExpr>),
    /// Canonical coend class of a 2-cell label; produced by genus cuts.
    Coend(Box<LabelExpr>),
}

impl LabelExpr {
    pub fn atom(name: &str) -> Self {
        LabelExpr::Atom(name.to_string())
    }

    pub fn forget1(inner: LabelExpr) -> Self {
        LabelExpr::Forget1(Box::new(inner))
    }

    pub fn forget0(inner: LabelExpr) -> Self {
        LabelExpr::Forget0(Box::new(inner))
    }

    pub fn coend(inner: LabelExpr) -> Self {
        LabelExpr::Coend(Box::new(inner))
    }

    /// Sort of the expression; atoms are classified by name shape: metric
    /// group and static modular-data names are 2-cells, pointed fusion
    /// names (`vec-*`) are 1-cells, anything else is an opaque 0-cell.
    pub fn sort(&self) -> Result<Sort, LabelError> {
        let want = |e: &LabelExpr, s: Sort| -> Result<(), LabelError> {
            let got = e.sort()?;
            if got == s {
                Ok(())
            } else {
                Err(LabelError::Sort(
                    e.to_string(),
                    format!("expected a {s}, found a {got}"),
                ))
            }
        };
        match self {
            LabelExpr::Atom(name) => {
                if crate::metricgrp::library(name).is_some() || name.starts_with("ising-") {
                    Ok(Sort::Cell2)
                } else if name.starts_with("vec-") {
                    Ok(Sort::Cell1)
                } else {
                    Ok(Sort::Cell0)
                }
            }
            LabelExpr::RelProd(a, b) => {
                want(a, Sort::Cell2)?;
                want(b, Sort::Cell2)?;
                Ok(Sort::Cell2)
            }
            LabelExpr::Rev(a) | LabelExpr::Conj(a) => {
                want(a, Sort::Cell2)?;
                Ok(Sort::Cell2)
            }
            LabelExpr::CenterE(m) => {
                want(m, Sort::Cell1)?;
                Ok(Sort::Cell2)
            }
            LabelExpr::BimodTensor(m, d, n) => {
                want(m, Sort::Cell1)?;
                want(d, Sort::Cell2)?;
                want(n, Sort::Cell1)?;
                Ok(Sort::Cell1)
            }
            LabelExpr::VFuse(p, l, q) => {
                want(p, Sort::Cell0)?;
                want(l, Sort::Cell1)?;
                want(q, Sort::Cell0)?;
                Ok(Sort::Cell0)
            }
            LabelExpr::EMerge(k, a, l) => {
                want(k, Sort::Cell1)?;
                want(a, Sort::Cell2)?;
                want(l, Sort::Cell1)?;
                Ok(Sort::Cell1)
            }
            LabelExpr::Forget1(c) => {
                want(c, Sort::Cell2)?;
                Ok(Sort::Cell1)
            }
            LabelExpr::Forget0(m) => {
                want(m, Sort::Cell1)?;
                Ok(Sort::Cell0)
            }
            LabelExpr::FunE(p, q) => {
                want(p, Sort::Cell0)?;
                want(q, Sort::Cell0)?;
                Ok(Sort::Cell1)
            }
            LabelExpr::Coend(c) => {
                want(c, Sort::Cell2)?;
                Ok(Sort::Cell0)
            }
        }
    }
}

impl fmt::Display for LabelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelExpr::Atom(name) => write!(f, "{name}"),
            LabelExpr::RelProd(a, b) => write!(f, "RelProd({a},{b})"),
            LabelExpr::Rev(a) => write!(f, "Rev({a})"),
            LabelExpr::Conj(a) => write!(f, "Conj({a})"),
            LabelExpr::CenterE(a) => write!(f, "CenterE({a})"),
            LabelExpr::BimodTensor(m, d, n) => write!(f, "BimodTensor({m},{d},{n})"),
            LabelExpr::VFuse(p, l, q) => write!(f, "VFuse({p},{l},{q})"),
            LabelExpr::EMerge(k, a, l) => write!(f, "EMerge({k},{a},{l})"),
            LabelExpr::Forget1(c) => write!(f, "Forget1({c})"),
            LabelExpr::Forget0(m) => write!(f, "Forget0({m})"),
            LabelExpr::FunE(p, q) => write!(f, "FunE({p},{q})"),
            LabelExpr::Coend(c) => write!(f, "Coend({c})"),
        }
    }
}

impl std::str::FromStr for LabelExpr {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, LabelError> {
        let mut parser = Parser {
            input: s,
            pos: 0,
        };
        let expr = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.input.len() {
            return Err(LabelError::Parse(
                s.into(),
                format!("trailing input at byte {}", parser.pos),
            ));
        }
        Ok(expr)
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.input[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<LabelExpr, LabelError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.input[self.pos..];
        let head_len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '_'))
            .unwrap_or(rest.len());
        if head_len == 0 {
            return Err(LabelError::Parse(
                self.input.into(),
                format!("expected a name at byte {start}"),
            ));
        }
        let head = &rest[..head_len];
        self.pos += head_len;
        self.skip_ws();
        if !self.input[self.pos..].starts_with('(') {
            return Ok(LabelExpr::Atom(head.to_string()));
        }
        self.pos += 1;
        let mut args = Vec::new();
        loop {
            args.push(self.expr()?);
            self.skip_ws();
            if self.input[self.pos..].starts_with(',') {
                self.pos += 1;
                continue;
            }
            if self.input[self.pos..].starts_with(')') {
                self.pos += 1;
                break;
            }
            return Err(LabelError::Parse(
                self.input.into(),
                format!("expected ',' or ')' at byte {}", self.pos),
            ));
        }
        let wrong_arity = |n: usize| {
            LabelError::Parse(
                self.input.into(),
                format!("{head} expects {n} arguments"),
            )
        };
        let mut it = args.into_iter();
        let mut next = || it.next().map(Box::new);
        let expr = match head {
            "RelProd" => LabelExpr::RelProd(
                next().ok_or_else(|| wrong_arity(2))?,
                next().ok_or_else(|| wrong_arity(2))?,
            ),
            "Rev" => LabelExpr::Rev(next().ok_or_else(|| wrong_arity(1))?),
            "Conj" => LabelExpr::Conj(next().ok_or_else(|| wrong_arity(1))?),
            "CenterE" => LabelExpr::CenterE(next().ok_or_else(|| wrong_arity(1))?),
            "BimodTensor" => LabelExpr::BimodTensor(
                next().ok_or_else(|| wrong_arity(3))?,
                next().ok_or_else(|| wrong_arity(3))?,
                next().ok_or_else(|| wrong_arity(3))?,
            ),
            "VFuse" => LabelExpr::VFuse(
                next().ok_or_else(|| wrong_arity(3))?,
                next().ok_or_else(|| wrong_arity(3))?,
                next().ok_or_else(|| wrong_arity(3))?,
            ),
            "EMerge" => LabelExpr::EMerge(
                next().ok_or_else(|| wrong_arity(3))?,
                next().ok_or_else(|| wrong_arity(3))?,
                next().ok_or_else(|| wrong_arity(3))?,
            ),
            "Forget1" => LabelExpr::Forget1(next().ok_or_else(|| wrong_arity(1))?),
            "Forget0" => LabelExpr::Forget0(next().ok_or_else(|| wrong_arity(1))?),
            "FunE" => LabelExpr::FunE(
                next().ok_or_else(|| wrong_arity(2))?,
                next().ok_or_else(|| wrong_arity(2))?,
            ),
            "Coend" => LabelExpr::Coend(next().ok_or_else(|| wrong_arity(1))?),
            _ => {
                return Err(LabelError::Parse(
                    self.input.into(),
                    format!("unknown constructor {head:?}"),
                ))
            }
        };
        if it.next().is_some() {
            return Err(LabelError::Parse(
                self.input.into(),
                format!("too many arguments for {head}"),
            ));
        }
        Ok(expr)
    }
}
