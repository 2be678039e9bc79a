//! Backend resolution of labels, the anomaly-free checker, and evaluation
//! of a surface to a pair `(E, u_Sigma)`.
//!
//! 2-cell labels resolve to braided modules over the surface's base (or to
//! static modular data for the non-pointed library entries); 1-cell labels
//! to pointed fusion categories over the base where possible; 0-cell labels
//! to multiplicity classes over the final face's carrier. The value of the
//! fully reduced sphere is the restriction along the base embedding of the
//! convolution product of all floating classes.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::braidedmod::{BraidedEModule, BraidedModError};
use crate::centerfun::{center_over_e, CenterError, FusionOverE};
use crate::exactnum::RationalMod1;
use crate::metricgrp::{library, GroupElement, MetricError, MetricGroup};
use crate::moddata::{ising, ModDataError, ModularData};

use super::labels::LabelExpr;
use super::moves::MoveError;
use super::reduce::reduce_fully;
use super::{StratifiedSurface, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unknown base {0:?}")]
    UnknownBase(String),
    #[error("symbolic residue: no backend data for {0}")]
    SymbolicResidue(String),
    #[error("anomaly check failed: {0}")]
    Anomalous(String),
    #[error("the final face must resolve to pointed data, found {0}")]
    NonPointedFace(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Braided(#[from] BraidedModError),
    #[error(transparent)]
    Center(#[from] CenterError),
    #[error(transparent)]
    ModData(#[from] ModDataError),
}

/// Backend content of a 2-cell label.
pub enum Backend2 {
    Pointed(BraidedEModule),
    Static(ModularData),
}

pub fn resolve_base(name: &str) -> Result<MetricGroup, EvalError> {
    library(name).ok_or_else(|| EvalError::UnknownBase(name.to_string()))
}

/// Resolve a 2-cell expression over the base. Pointed atoms take the first
/// base embedding in lexicographic order.
pub fn eval2(expr: &LabelExpr, base: &MetricGroup) -> Result<Backend2, EvalError> {
    match expr {
        LabelExpr::Atom(name) => {
            if let Some(mg) = library(name) {
                let embed = base
                    .metric_embeddings_into(&mg)
                    .into_iter()
                    .next()
                    .ok_or_else(|| {
                        EvalError::Anomalous(format!(
                            "the base does not embed into the 2-cell atom {name}"
                        ))
                    })?;
                Ok(Backend2::Pointed(BraidedEModule::double_braiding(
                    base.clone(),
                    mg,
                    embed,
                )?))
            } else if let Some(nu) = name.strip_prefix("ising-") {
                let nu: u64 = nu
                    .parse()
                    .map_err(|_| EvalError::SymbolicResidue(expr.to_string()))?;
                Ok(Backend2::Static(ising(nu)?))
            } else {
                Err(EvalError::SymbolicResidue(expr.to_string()))
            }
        }
        LabelExpr::RelProd(a, b) => {
            let (Backend2::Pointed(ma), Backend2::Pointed(mb)) =
                (eval2(a, base)?, eval2(b, base)?)
            else {
                return Err(EvalError::SymbolicResidue(expr.to_string()));
            };
            Ok(Backend2::Pointed(ma.relative_tensor(&mb)?))
        }
        // At the double-braiding level reversing the braiding and
        // conjugating it coincide: both negate the quadratic form.
        LabelExpr::Rev(a) | LabelExpr::Conj(a) => match eval2(a, base)? {
            Backend2::Pointed(m) => Ok(Backend2::Pointed(m.conjugate_carrier()?)),
            Backend2::Static(_) => Err(EvalError::SymbolicResidue(expr.to_string())),
        },
        LabelExpr::CenterE(m) => {
            let f = eval1(m, base)?
                .ok_or_else(|| EvalError::SymbolicResidue(expr.to_string()))?;
            Ok(Backend2::Pointed(center_over_e(&f)?.module))
        }
        _ => Err(EvalError::SymbolicResidue(expr.to_string())),
    }
}

/// Resolve a 1-cell expression over the base; `None` means the label has
/// no backend data (composites produced by moves) and is only handled
/// symbolically.
pub fn eval1(expr: &LabelExpr, base: &MetricGroup) -> Result<Option<FusionOverE>, EvalError> {
    match expr {
        LabelExpr::Atom(name) => Ok(crate::centerfun::fusion_cat(name, base)),
        LabelExpr::Forget1(inner) => match eval2(inner, base)? {
            Backend2::Pointed(m) => fusion_of_braided(&m),
            Backend2::Static(_) => Ok(None),
        },
        _ => Ok(None),
    }
}

/// A braided 2-cell backend seen as a fusion category over the base: the
/// carrier group with the canonical central lift `chi_e = b(embed e, -)`.
/// Only available when the quadratic form splits off a bilinear diagonal
/// (`n_i q(g_i) = 0` on the invariant-factor generators); otherwise the
/// underlying fusion category carries a nontrivial associator, which is out
/// of scope, and `None` signals "no backend data".
fn fusion_of_braided(m: &BraidedEModule) -> Result<Option<FusionOverE>, EvalError> {
    for (g, &n) in m
        .carrier()
        .group()
        .generators()
        .iter()
        .zip(m.carrier().group().invariant_factors())
    {
        if !m.carrier().q(g).times(n as i64).is_zero() {
            return Ok(None);
        }
    }
    let carrier = m.carrier().group().clone();
    let base = m.base().clone();
    let t: Vec<GroupElement> = base
        .group()
        .elements()
        .iter()
        .map(|e| m.embed().apply(e))
        .collect();
    let chi: Vec<GroupElement> = base
        .group()
        .elements()
        .iter()
        .map(|e| {
            let ie = m.embed().apply(e);
            let tuple: Vec<u64> = carrier
                .generators()
                .iter()
                .zip(carrier.invariant_factors())
                .map(|(g, &n)| {
                    let v = m.carrier().b(&ie, g);
                    let scaled = v.value() * crate::exactnum::Rational::from_integer(n as i64);
                    scaled.to_integer().rem_euclid(n as i64) as u64
                })
                .collect();
            GroupElement::new(tuple)
        })
        .collect();
    Ok(Some(FusionOverE::new(carrier, base, t, chi)?))
}

/// Anomaly-free report: hard failures and assumptions.
#[derive(Debug, Clone, Default)]
pub struct AnomalyReport {
    pub failures: Vec<String>,
    pub assumed: Vec<String>,
}

impl AnomalyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for AnomalyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() && self.assumed.is_empty() {
            writeln!(f, "anomaly-free")?;
        }
        for line in &self.failures {
            writeln!(f, "FAIL {line}")?;
        }
        for line in &self.assumed {
            writeln!(f, "assumed anomaly-free: {line}")?;
        }
        Ok(())
    }
}

/// Check the anomaly-free conditions cell by cell: 2-cells must be
/// nondegenerate over the base (Mueger center equal to the base image);
/// 1-cells with backend data must have their center over the base
/// equivalent to `Conj(left) boxdot right`; labels without backend data
/// are recorded as assumptions.
pub fn check_anomaly_free(s: &StratifiedSurface) -> Result<AnomalyReport, EvalError> {
    let base = resolve_base(&s.base)?;
    let mut report = AnomalyReport::default();
    let mut face_backends: BTreeMap<usize, Option<BraidedEModule>> = BTreeMap::new();
    let face_items: Vec<(Option<usize>, LabelExpr)> = s
        .faces_with_keys()
        .into_iter()
        .map(|(k, l)| (Some(k), l))
        .chain(s.sole_face_label().map(|l| (None, l.clone())))
        .collect();
    for (key, label) in face_items {
        match eval2(&label, &base) {
            Ok(Backend2::Pointed(m)) => {
                if m.carrier().radical() != m.embed().image() {
                    report.failures.push(format!(
                        "2-cell {label}: transparent part differs from the base image"
                    ));
                }
                if let Some(k) = key {
                    face_backends.insert(k, Some(m));
                }
            }
            Ok(Backend2::Static(md)) => {
                let all: Vec<usize> = (0..md.rank()).collect();
                let center = md.mueger_centralizer(&all)?;
                let center_twists: Vec<RationalMod1> =
                    center.iter().map(|&i| md.t[i]).collect();
                let mut base_twists: Vec<RationalMod1> =
                    base.q_table().to_vec();
                base_twists.sort();
                let mut got = center_twists.clone();
                got.sort();
                if got != base_twists {
                    report.failures.push(format!(
                        "2-cell {label}: transparent part does not match the base"
                    ));
                }
                if let Some(k) = key {
                    face_backends.insert(k, None);
                }
            }
            Err(EvalError::SymbolicResidue(what)) => {
                report.assumed.push(format!("2-cell {what}"));
                if let Some(k) = key {
                    face_backends.insert(k, None);
                }
            }
            Err(e) => {
                report.failures.push(format!("2-cell {label}: {e}"));
                if let Some(k) = key {
                    face_backends.insert(k, None);
                }
            }
        }
    }
    for (key, data) in s.edges_with_keys() {
        match eval1(&data.label, &base)? {
            Some(f) => {
                let left = face_backends
                    .get(&s.left_face_key(key))
                    .cloned()
                    .flatten();
                let right = face_backends
                    .get(&s.right_face_key(key))
                    .cloned()
                    .flatten();
                let (Some(left), Some(right)) = (left, right) else {
                    report.assumed.push(format!(
                        "1-cell {}: side faces carry no pointed backend",
                        data.label
                    ));
                    continue;
                };
                let z = center_over_e(&f)?;
                let target = left.conjugate_carrier()?.relative_tensor(&right)?;
                let pins: Vec<(GroupElement, GroupElement)> = base
                    .group()
                    .elements()
                    .iter()
                    .map(|e| (z.module.embed().apply(e), target.embed().apply(e)))
                    .collect();
                if z.module
                    .carrier()
                    .isometry_constrained(target.carrier(), &pins)
                    .is_none()
                {
                    report.failures.push(format!(
                        "1-cell {}: center over the base is not Conj(left) boxdot right",
                        data.label
                    ));
                }
            }
            None => report.assumed.push(format!("1-cell {}", data.label)),
        }
    }
    // 0-cells are sort-checked by validation; no further backend condition
    // is available at this level.
    Ok(report)
}

/// The class of `u_Sigma` over the base, with its two dimension readings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationResult {
    pub base: String,
    /// Multiplicity of each base simple in `u_Sigma`, keyed by element.
    pub multiplicities: BTreeMap<String, u64>,
    /// Multiplicity of the tensor unit.
    pub gsd_unit: u64,
    /// Total dimension of the class.
    pub total_dim: u64,
}

impl fmt::Display for EvaluationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base {}", self.base)?;
        for (elem, mult) in &self.multiplicities {
            writeln!(f, "u {elem} : {mult}")?;
        }
        writeln!(f, "gsd {}", self.gsd_unit)?;
        writeln!(f, "total {}", self.total_dim)
    }
}

/// Class of a 0-cell expression over the final face's carrier, as a
/// multiplicity vector in element order.
fn eval0(
    expr: &LabelExpr,
    face: &BraidedEModule,
    base: &MetricGroup,
) -> Result<Vec<u64>, EvalError> {
    let order = face.carrier().order() as usize;
    let unit = face
        .carrier()
        .group()
        .index_of(&face.carrier().group().zero());
    match expr {
        // Forgetting a 1-disk algebra points it at its regular module: the
        // unit class.
        LabelExpr::Forget0(_) => {
            let mut v = vec![0u64; order];
            v[unit] = 1;
            Ok(v)
        }
        LabelExpr::VFuse(p, _, q) => {
            let a = eval0(p, face, base)?;
            let b = eval0(q, face, base)?;
            Ok(convolve(face, &a, &b))
        }
        LabelExpr::Coend(inner) => {
            let Backend2::Pointed(m) = eval2(inner, base)? else {
                return Err(EvalError::SymbolicResidue(expr.to_string()));
            };
            if m.carrier() != face.carrier() || m.embed() != face.embed() {
                return Err(EvalError::SymbolicResidue(format!(
                    "coend of {inner} does not live in the final face"
                )));
            }
            let g = face.carrier().group();
            let mut v = vec![0u64; order];
            for x in g.elements() {
                let pair = g.add(x, &g.neg(x));
                v[g.index_of(&pair)] += 1;
            }
            Ok(v)
        }
        _ => Err(EvalError::SymbolicResidue(expr.to_string())),
    }
}

fn convolve(face: &BraidedEModule, a: &[u64], b: &[u64]) -> Vec<u64> {
    let g = face.carrier().group();
    let elems = g.elements();
    let mut out = vec![0u64; a.len()];
    for (i, x) in elems.iter().enumerate() {
        if a[i] == 0 {
            continue;
        }
        for (j, y) in elems.iter().enumerate() {
            if b[j] == 0 {
                continue;
            }
            out[g.index_of(&g.add(x, y))] += a[i] * b[j];
        }
    }
    out
}

/// Evaluate a closed stratified surface: check anomalies, cut handles,
/// reduce to points and read off the class of `u_Sigma`.
pub fn evaluate(s: &StratifiedSurface) -> Result<EvaluationResult, EvalError> {
    s.validate()?;
    let anomaly = check_anomaly_free(s)?;
    if !anomaly.passed() {
        return Err(EvalError::Anomalous(anomaly.failures.join("; ")));
    }
    let base = resolve_base(&s.base)?;
    let (reduced, _trace) = reduce_fully(s)?;
    let face_expr = reduced
        .sole_face_label()
        .cloned()
        .expect("a fully reduced surface has a single face");
    let face = match eval2(&face_expr, &base)? {
        Backend2::Pointed(m) => m,
        Backend2::Static(_) => {
            return Err(EvalError::NonPointedFace(face_expr.to_string()))
        }
    };
    let g = face.carrier().group();
    let mut total = vec![0u64; g.order() as usize];
    total[g.index_of(&g.zero())] = 1;
    for label in &reduced.floating {
        let cls = eval0(label, &face, &base)?;
        total = convolve(&face, &total, &cls);
    }
    // Restrict along the base embedding.
    let mut multiplicities = BTreeMap::new();
    let mut gsd_unit = 0;
    let mut total_dim = 0;
    for e in base.group().elements() {
        let m = total[g.index_of(&face.embed().apply(e))];
        if e.is_zero() {
            gsd_unit = m;
        }
        total_dim += m;
        multiplicities.insert(e.to_string(), m);
    }
    Ok(EvaluationResult {
        base: s.base.clone(),
        multiplicities,
        gsd_unit,
        total_dim,
    })
}
