//! Decategorified (pre)modular data: labels, fusion coefficients, S/T
//! matrices, quantum dimensions.
//!
//! The stored S is the unitary one (`S conj(S) = 1`); centralizer tests use
//! the unnormalised pairing `s~ = D S`, with `D = +sqrt(sum d_i^2)` realised
//! exactly as a cyclotomic number. Pointed data bridges to [`crate::metricgrp`]
//! in both directions, which is what lets group-like condensation here be
//! cross-checked bit-exactly against metric-group condensation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::exactnum::{CyclotomicNumber, ExactError, Rational, RationalMod1};
use crate::metricgrp::{canonicalize_abstract, GroupElement, MetricGroup, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModDataError {
    #[error("unsupported condensation: {0}")]
    UnsupportedCondensation(String),
    #[error("oracle inconsistency: {0}")]
    OracleInconsistency(String),
    #[error("invalid modular data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Grothendieck-ring data of a fusion category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRingData {
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    /// Sparse fusion coefficients; absent keys are zero.
    pub n: BTreeMap<(usize, usize, usize), u64>,
}

impl FusionRingData {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn n_of(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n.get(&(i, j, k)).copied().unwrap_or(0)
    }

    /// The unique `k` with `N(i,j,k) = 1` when `i` or `j` is invertible.
    pub fn fuse_invertible(&self, i: usize, j: usize) -> Option<usize> {
        let mut out = None;
        for k in 0..self.rank() {
            match self.n_of(i, j, k) {
                0 => {}
                1 if out.is_none() => out = Some(k),
                _ => return None,
            }
        }
        out
    }
}

/// Modular (or premodular) data on top of a fusion ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularData {
    pub ring: FusionRingData,
    /// Unitary S matrix.
    pub s: Vec<Vec<CyclotomicNumber>>,
    /// Twist exponents: `theta_i = e^{2 pi i t_i}`.
    pub t: Vec<RationalMod1>,
    pub dims: Vec<CyclotomicNumber>,
    /// `D^2 = sum d_i^2` as an exact rational.
    pub global_dim: Rational,
}

impl ModularData {
    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    /// `D = +sqrt(global_dim)`, exact.
    pub fn d_total(&self) -> Result<CyclotomicNumber, ModDataError> {
        if !self.global_dim.denom().is_one() || self.global_dim.is_negative() {
            return Err(ModDataError::Invalid(format!(
                "global dimension {} is not a nonnegative integer",
                self.global_dim
            )));
        }
        Ok(CyclotomicNumber::sqrt_integer(*self.global_dim.numer() as u64)?)
    }

    /// Unnormalised pairing `s~_{ij} = D * S_{ij}`.
    pub fn s_tilde(&self, i: usize, j: usize) -> Result<CyclotomicNumber, ModDataError> {
        Ok(self.d_total()?.mul(&self.s[i][j])?)
    }

    /// Decategorified data of a pointed metric group:
    /// `S_{xy} = e^{2 pi i b(x,y)} / sqrt(|G|)`, `T_x = q(x)`, all `d = 1`.
    pub fn from_metric_group(mg: &MetricGroup) -> Result<ModularData, ModDataError> {
        let elems = mg.group().elements();
        let rank = elems.len();
        let labels: Vec<String> = elems.iter().map(|x| x.to_string()).collect();
        let unit = mg.group().index_of(&mg.group().zero());
        let dual: Vec<usize> = elems
            .iter()
            .map(|x| mg.group().index_of(&mg.group().neg(x)))
            .collect();
        let mut n = BTreeMap::new();
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let k = mg.group().index_of(&mg.group().add(x, y));
                n.insert((i, j, k), 1);
            }
        }
        let inv_root = CyclotomicNumber::sqrt_integer(rank as u64)?.recip()?;
        let mut s = Vec::with_capacity(rank);
        for x in elems {
            let mut row = Vec::with_capacity(rank);
            for y in elems {
                let phase = CyclotomicNumber::root_of_unity(mg.b(x, y))?;
                row.push(phase.mul(&inv_root)?);
            }
            s.push(row);
        }
        let t: Vec<RationalMod1> = elems.iter().map(|x| mg.q(x)).collect();
        Ok(ModularData {
            ring: FusionRingData {
                labels,
                unit,
                dual,
                n,
            },
            s,
            t,
            dims: vec![CyclotomicNumber::one(); rank],
            global_dim: Rational::from_integer(rank as i64),
        })
    }

    /// Recognise pointed data: every label invertible. Returns the metric
    /// group together with the label-to-element dictionary.
    pub fn as_pointed(&self) -> Option<PointedView> {
        let rank = self.rank();
        if !self.dims.iter().all(|d| *d == CyclotomicNumber::one()) {
            return None;
        }
        let mut table = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut row = Vec::with_capacity(rank);
            for j in 0..rank {
                row.push(self.ring.fuse_invertible(i, j)?);
            }
            table.push(row);
        }
        let indices: Vec<usize> = (0..rank).collect();
        let add = |a: &usize, b: &usize| table[*a][*b];
        let (group, iso) = canonicalize_abstract(&indices, add, self.ring.unit);
        let mut q = vec![RationalMod1::ZERO; rank];
        for i in 0..rank {
            q[group.index_of(&iso[&i])] = self.t[i];
        }
        let mg = MetricGroup::new(group, q).ok()?;
        let element_of: Vec<GroupElement> = (0..rank).map(|i| iso[&i].clone()).collect();
        Some(PointedView { mg, element_of })
    }

    /// Verlinde-type dimension `sum_i (D / d_i)^{2g - 2}`, which must
    /// canonicalise to a nonnegative integer.
    pub fn verlinde_genus_dim(&self, genus: u64) -> Result<u64, ModDataError> {
        let d2 = CyclotomicNumber::from_rational(self.global_dim);
        let mut acc = CyclotomicNumber::zero();
        for d in &self.dims {
            let term = if genus == 0 {
                // (D/d_i)^{-2} = d_i^2 / D^2
                d.mul(d)?.div(&d2)?
            } else {
                // (D^2)^{g-1} / d_i^{2g-2}
                let num = d2.pow(genus - 1)?;
                let den = d.pow(2 * genus - 2)?;
                num.div(&den)?
            };
            acc = acc.add(&term)?;
        }
        match acc.as_integer() {
            Some(v) if v >= 0 => Ok(v as u64),
            _ => Err(ModDataError::OracleInconsistency(format!(
                "genus-{genus} dimension {acc} is not a nonnegative integer"
            ))),
        }
    }

    /// Labels transparent to every member of `a`:
    /// `{x : s~_{xa} = d_x d_a for all a}`.
    pub fn mueger_centralizer(&self, a: &[usize]) -> Result<Vec<usize>, ModDataError> {
        let mut out = Vec::new();
        for x in 0..self.rank() {
            let mut transparent = true;
            for &m in a {
                let lhs = self.s_tilde(x, m)?;
                let rhs = self.dims[x].mul(&self.dims[m])?;
                if lhs != rhs {
                    transparent = false;
                    break;
                }
            }
            if transparent {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Componentwise Deligne product.
    pub fn deligne_product(&self, other: &ModularData) -> Result<ModularData, ModDataError> {
        let (ra, rb) = (self.rank(), other.rank());
        let idx = |i: usize, j: usize| i * rb + j;
        let labels: Vec<String> = (0..ra)
            .flat_map(|i| {
                (0..rb).map(move |j| format!("{}*{}", self.ring.labels[i], other.ring.labels[j]))
            })
            .collect();
        let unit = idx(self.ring.unit, other.ring.unit);
        let dual: Vec<usize> = (0..ra)
            .flat_map(|i| (0..rb).map(move |j| idx(self.ring.dual[i], other.ring.dual[j])))
            .collect();
        let mut n = BTreeMap::new();
        for (&(i1, j1, k1), &m1) in &self.ring.n {
            for (&(i2, j2, k2), &m2) in &other.ring.n {
                n.insert((idx(i1, i2), idx(j1, j2), idx(k1, k2)), m1 * m2);
            }
        }
        let mut s = vec![vec![CyclotomicNumber::zero(); ra * rb]; ra * rb];
        let mut t = vec![RationalMod1::ZERO; ra * rb];
        let mut dims = vec![CyclotomicNumber::zero(); ra * rb];
        for i1 in 0..ra {
            for i2 in 0..rb {
                t[idx(i1, i2)] = self.t[i1].add(&other.t[i2]);
                dims[idx(i1, i2)] = self.dims[i1].mul(&other.dims[i2])?;
                for j1 in 0..ra {
                    for j2 in 0..rb {
                        s[idx(i1, i2)][idx(j1, j2)] = self.s[i1][j1].mul(&other.s[i2][j2])?;
                    }
                }
            }
        }
        Ok(ModularData {
            ring: FusionRingData {
                labels,
                unit,
                dual,
                n,
            },
            s,
            t,
            dims,
            global_dim: self.global_dim * other.global_dim,
        })
    }

    /// Condensation by a group-like algebra: restrict to local labels, then
    /// pass to orbits under fusion with the algebra members.
    pub fn condense_grouplike(&self, a: &GroupLikeAlgebra) -> Result<ModularData, ModDataError> {
        self.check_grouplike(a)?;
        let members = &a.members;
        let local = self.mueger_centralizer(members)?;
        // Orbits of local labels under fusion with members.
        let mut orbit_rep: BTreeMap<usize, usize> = BTreeMap::new();
        let mut reps: Vec<usize> = Vec::new();
        for &x in &local {
            if orbit_rep.contains_key(&x) {
                continue;
            }
            let mut orbit: Vec<usize> = members
                .iter()
                .map(|&m| {
                    self.ring.fuse_invertible(x, m).ok_or_else(|| {
                        ModDataError::UnsupportedCondensation(
                            "orbit leaves the invertible range".into(),
                        )
                    })
                })
                .collect::<Result<_, _>>()?;
            orbit.sort_unstable();
            orbit.dedup();
            if orbit.len() != members.len() {
                return Err(ModDataError::UnsupportedCondensation(
                    "algebra members act with fixed points".into(),
                ));
            }
            let rep = orbit[0];
            for y in orbit {
                orbit_rep.insert(y, rep);
            }
            reps.push(rep);
        }
        reps.sort_unstable();
        let new_index: BTreeMap<usize, usize> =
            reps.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let rank = reps.len();
        let labels: Vec<String> = reps.iter().map(|&r| self.ring.labels[r].clone()).collect();
        let unit = new_index[&orbit_rep[&self.ring.unit]];
        let dual: Vec<usize> = reps
            .iter()
            .map(|&r| new_index[&orbit_rep[&self.ring.dual[r]]])
            .collect();
        // N'([x],[y],[z]) = sum over the z-orbit of the original
        // coefficients at fixed representatives of [x] and [y].
        let mut n = BTreeMap::new();
        for (ki, &ri) in reps.iter().enumerate() {
            for (kj, &rj) in reps.iter().enumerate() {
                for (kk, &rk) in reps.iter().enumerate() {
                    let mut total = 0;
                    for &m in members {
                        let zk = self.ring.fuse_invertible(rk, m).unwrap();
                        total += self.ring.n_of(ri, rj, zk);
                    }
                    if total > 0 {
                        n.insert((ki, kj, kk), total);
                    }
                }
            }
        }
        let mut t = vec![RationalMod1::ZERO; rank];
        let mut dims = vec![CyclotomicNumber::zero(); rank];
        for (ki, &ri) in reps.iter().enumerate() {
            t[ki] = self.t[ri];
            dims[ki] = self.dims[ri].clone();
        }
        // Renormalise S by D/D' so the descended matrix is unitary again.
        // For nondegenerate input this factor is exactly |A|; for degenerate
        // input locality removes less, and only this form keeps the output
        // in sync with the metric-group route.
        let mut new_global_c = CyclotomicNumber::zero();
        for d in &dims {
            new_global_c = new_global_c.add(&d.mul(d)?)?;
        }
        let new_global = new_global_c.as_rational().ok_or_else(|| {
            ModDataError::Invalid("condensed global dimension is not rational".into())
        })?;
        if !new_global.denom().is_one() {
            return Err(ModDataError::Invalid(
                "condensed global dimension is not an integer".into(),
            ));
        }
        let scale = self
            .d_total()?
            .div(&CyclotomicNumber::sqrt_integer(*new_global.numer() as u64)?)?;
        let mut s = vec![vec![CyclotomicNumber::zero(); rank]; rank];
        for (ki, &ri) in reps.iter().enumerate() {
            for (kj, &rj) in reps.iter().enumerate() {
                s[ki][kj] = self.s[ri][rj].mul(&scale)?;
            }
        }
        Ok(ModularData {
            ring: FusionRingData {
                labels,
                unit,
                dual,
                n,
            },
            s,
            t,
            dims,
            global_dim: new_global,
        })
    }

    fn check_grouplike(&self, a: &GroupLikeAlgebra) -> Result<(), ModDataError> {
        let members = &a.members;
        if !members.contains(&self.ring.unit) {
            return Err(ModDataError::UnsupportedCondensation(
                "algebra must contain the unit".into(),
            ));
        }
        for &m in members {
            if self.dims[m] != CyclotomicNumber::one() {
                return Err(ModDataError::UnsupportedCondensation(format!(
                    "member {} is not invertible",
                    self.ring.labels[m]
                )));
            }
            if !self.t[m].is_zero() {
                return Err(ModDataError::UnsupportedCondensation(format!(
                    "member {} has nontrivial twist",
                    self.ring.labels[m]
                )));
            }
            for &k in members {
                let fused = self.ring.fuse_invertible(m, k).ok_or_else(|| {
                    ModDataError::UnsupportedCondensation("members do not fuse freely".into())
                })?;
                if !members.contains(&fused) {
                    return Err(ModDataError::UnsupportedCondensation(
                        "carrier not closed under fusion".into(),
                    ));
                }
                // Mutual transparency.
                let lhs = self.s_tilde(m, k)?;
                if lhs != CyclotomicNumber::one() {
                    return Err(ModDataError::UnsupportedCondensation(format!(
                        "members {} and {} are not mutually transparent",
                        self.ring.labels[m], self.ring.labels[k]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A pointed modular datum seen as a metric group.
#[derive(Debug, Clone)]
pub struct PointedView {
    pub mg: MetricGroup,
    /// Group element of the i-th label.
    pub element_of: Vec<GroupElement>,
}

/// A set of invertible, twistless, mutually transparent labels closed under
/// fusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLikeAlgebra {
    pub members: Vec<usize>,
}

impl GroupLikeAlgebra {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        GroupLikeAlgebra { members }
    }

    /// The algebra carried by an isotropic subgroup of a pointed datum.
    pub fn from_subgroup(view: &PointedView, h: &Subgroup) -> Self {
        let members = view
            .element_of
            .iter()
            .enumerate()
            .filter(|(_, e)| h.contains(e))
            .map(|(i, _)| i)
            .collect();
        GroupLikeAlgebra::new(members)
    }
}

/// Outcome of checking the modular-data identities; empty means all pass.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            writeln!(f, "all identities hold")
        } else {
            for line in &self.failures {
                writeln!(f, "FAIL {line}")?;
            }
            Ok(())
        }
    }
}

/// Check every stored identity of the data; failures are reported, not
/// raised. Gatekeeper for library entries and condensation outputs.
pub fn verify_modular_axioms(md: &ModularData) -> AxiomReport {
    let mut failures = Vec::new();
    let rank = md.rank();
    let ring = &md.ring;
    if ring.dual.len() != rank || md.t.len() != rank || md.dims.len() != rank {
        failures.push("table sizes disagree with the rank".into());
        return AxiomReport { failures };
    }
    for i in 0..rank {
        for k in 0..rank {
            let expect = u64::from(i == k);
            if ring.n_of(i, ring.unit, k) != expect || ring.n_of(ring.unit, i, k) != expect {
                failures.push(format!("unit row at ({i}, {k})"));
            }
        }
        if ring.dual[ring.dual[i]] != i {
            failures.push(format!("dual not involutive at {i}"));
        }
        for j in 0..rank {
            let expect = u64::from(j == ring.dual[i]);
            if ring.n_of(i, j, ring.unit) != expect {
                failures.push(format!("rigidity at ({i}, {j})"));
            }
        }
    }
    'comm: for i in 0..rank {
        for j in 0..rank {
            for k in 0..rank {
                if ring.n_of(i, j, k) != ring.n_of(j, i, k) {
                    failures.push(format!("commutativity at ({i}, {j}, {k})"));
                    break 'comm;
                }
            }
        }
    }
    'assoc: for i in 0..rank {
        for j in 0..rank {
            for l in 0..rank {
                for m in 0..rank {
                    let lhs: u64 = (0..rank)
                        .map(|k| ring.n_of(i, j, k) * ring.n_of(k, l, m))
                        .sum();
                    let rhs: u64 = (0..rank)
                        .map(|k| ring.n_of(j, l, k) * ring.n_of(i, k, m))
                        .sum();
                    if lhs != rhs {
                        failures.push(format!("associativity at ({i}, {j}, {l}, {m})"));
                        break 'assoc;
                    }
                }
            }
        }
    }
    // Exact checks on S, T, dims.
    let run = || -> Result<Vec<String>, ModDataError> {
        let mut fails = Vec::new();
        let d2: CyclotomicNumber = {
            let mut acc = CyclotomicNumber::zero();
            for d in &md.dims {
                acc = acc.add(&d.mul(d)?)?;
            }
            acc
        };
        if d2 != CyclotomicNumber::from_rational(md.global_dim) {
            fails.push(format!(
                "global dimension: sum d_i^2 = {d2} != {}",
                md.global_dim
            ));
        }
        for (i, d) in md.dims.iter().enumerate() {
            if d.conj() != *d {
                fails.push(format!("dimension {i} not totally real"));
            }
        }
        if !md.t[ring.unit].is_zero() {
            fails.push("unit twist not 1".into());
        }
        for i in 0..rank {
            for j in 0..rank {
                if md.s[i][j] != md.s[j][i] {
                    fails.push(format!("S not symmetric at ({i}, {j})"));
                }
            }
        }
        for j in 0..rank {
            if md.s_tilde(ring.unit, j)? != md.dims[j] {
                fails.push(format!("first row of s~ disagrees with d_{j}"));
            }
        }
        // Unitarity: S conj(S) = identity.
        for i in 0..rank {
            for j in 0..rank {
                let mut acc = CyclotomicNumber::zero();
                for k in 0..rank {
                    acc = acc.add(&md.s[i][k].mul(&md.s[j][k].conj())?)?;
                }
                let expect = if i == j {
                    CyclotomicNumber::one()
                } else {
                    CyclotomicNumber::zero()
                };
                if acc != expect {
                    fails.push(format!("S conj(S) differs from identity at ({i}, {j})"));
                }
            }
        }
        // Verlinde reconstruction.
        'verl: for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    let mut acc = CyclotomicNumber::zero();
                    for m in 0..rank {
                        let term = md.s[i][m]
                            .mul(&md.s[j][m])?
                            .mul(&md.s[k][m].conj())?
                            .div(&md.s[ring.unit][m])?;
                        acc = acc.add(&term)?;
                    }
                    if acc != CyclotomicNumber::from_integer(ring.n_of(i, j, k) as i64) {
                        fails.push(format!(
                            "Verlinde reconstruction at ({i}, {j}, {k}): got {acc}, stored {}",
                            ring.n_of(i, j, k)
                        ));
                        break 'verl;
                    }
                }
            }
        }
        Ok(fails)
    };
    match run() {
        Ok(mut fails) => failures.append(&mut fails),
        Err(e) => failures.push(format!("exact arithmetic failed: {e}")),
    }
    AxiomReport { failures }
}

/// Label bijection under which two data sets agree entrywise, when both are
/// pointed: routed through the metric-group isometry search.
pub fn pointed_label_bijection(a: &ModularData, b: &ModularData) -> Option<Vec<usize>> {
    let va = a.as_pointed()?;
    let vb = b.as_pointed()?;
    let iso = va.mg.isometry(&vb.mg)?;
    // bij[i] = label of b matching label i of a.
    let index_of_b: BTreeMap<&GroupElement, usize> = vb
        .element_of
        .iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let bij: Vec<usize> = va
        .element_of
        .iter()
        .map(|e| index_of_b[&iso.apply(va.mg.group(), e)])
        .collect();
    for i in 0..a.rank() {
        if a.t[i] != b.t[bij[i]] {
            return None;
        }
        for j in 0..a.rank() {
            if a.s[i][j] != b.s[bij[i]][bij[j]] {
                return None;
            }
            for k in 0..a.rank() {
                if a.ring.n_of(i, j, k) != b.ring.n_of(bij[i], bij[j], bij[k]) {
                    return None;
                }
            }
        }
    }
    Some(bij)
}

/// The rank-3 Ising-type datum with twist `theta_sigma = e^{2 pi i nu/16}`;
/// `nu` must be odd. Labels: `1, sigma, psi`.
pub fn ising(nu: u64) -> Result<ModularData, ModDataError> {
    if nu % 2 == 0 {
        return Err(ModDataError::Invalid(
            "Ising-type data exists for odd indices only".into(),
        ));
    }
    let half = Rational::new(1, 2);
    let sqrt2 = CyclotomicNumber::sqrt_integer(2)?;
    let s2_over_2 = sqrt2.scale(half);
    let h = CyclotomicNumber::from_rational(half);
    let s = vec![
        vec![h.clone(), s2_over_2.clone(), h.clone()],
        vec![s2_over_2.clone(), CyclotomicNumber::zero(), s2_over_2.neg()],
        vec![h.clone(), s2_over_2.neg(), h.clone()],
    ];
    let mut n = BTreeMap::new();
    let (unit, sigma, psi) = (0usize, 1usize, 2usize);
    for i in 0..3 {
        n.insert((unit, i, i), 1);
        n.insert((i, unit, i), 1);
    }
    n.remove(&(unit, unit, unit));
    n.insert((unit, unit, unit), 1);
    n.insert((sigma, sigma, unit), 1);
    n.insert((sigma, sigma, psi), 1);
    n.insert((sigma, psi, sigma), 1);
    n.insert((psi, sigma, sigma), 1);
    n.insert((psi, psi, unit), 1);
    Ok(ModularData {
        ring: FusionRingData {
            labels: vec!["1".into(), "sigma".into(), "psi".into()],
            unit,
            dual: vec![0, 1, 2],
            n,
        },
        s,
        t: vec![
            RationalMod1::ZERO,
            RationalMod1::from_parts(nu as i64, 16),
            RationalMod1::HALF,
        ],
        dims: vec![CyclotomicNumber::one(), sqrt2, CyclotomicNumber::one()],
        global_dim: Rational::from_integer(4),
    })
}

/// Serialise in the text format accepted by [`parse_modular_data`].
pub fn format_modular_data(md: &ModularData) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "modulardata").unwrap();
    writeln!(out, "rank {}", md.rank()).unwrap();
    writeln!(out, "labels {}", md.ring.labels.join(" ")).unwrap();
    writeln!(out, "unit {}", md.ring.unit).unwrap();
    writeln!(
        out,
        "dual {}",
        md.ring
            .dual
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    )
    .unwrap();
    for (&(i, j, k), &m) in &md.ring.n {
        writeln!(out, "N {i} {j} {k} {m}").unwrap();
    }
    for i in 0..md.rank() {
        for j in 0..md.rank() {
            if !md.s[i][j].is_zero() {
                writeln!(out, "S {i} {j} {}", md.s[i][j]).unwrap();
            }
        }
    }
    for (i, t) in md.t.iter().enumerate() {
        writeln!(out, "T {i} {t}").unwrap();
    }
    out
}

/// Parse the `modulardata` text format. Dimensions and the global dimension
/// are reconstructed from the first S row.
pub fn parse_modular_data(text: &str) -> Result<ModularData, ModDataError> {
    let mut rank: Option<usize> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut unit = 0usize;
    let mut dual: Vec<usize> = Vec::new();
    let mut n = BTreeMap::new();
    let mut s_entries: Vec<(usize, usize, CyclotomicNumber)> = Vec::new();
    let mut t_entries: Vec<(usize, RationalMod1)> = Vec::new();
    let mut seen_header = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let tag = it.next().unwrap();
        let rest: Vec<&str> = it.collect();
        let bad = |what: &str| ModDataError::Invalid(format!("bad {what} line: {line:?}"));
        match tag {
            "modulardata" => seen_header = true,
            "rank" => {
                rank = Some(
                    rest.first()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| bad("rank"))?,
                )
            }
            "labels" => labels = rest.iter().map(|s| s.to_string()).collect(),
            "unit" => {
                unit = rest
                    .first()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad("unit"))?
            }
            "dual" => {
                dual = rest
                    .iter()
                    .map(|v| v.parse().map_err(|_| bad("dual")))
                    .collect::<Result<_, _>>()?
            }
            "N" => {
                if rest.len() != 4 {
                    return Err(bad("N"));
                }
                let vals: Vec<u64> = rest
                    .iter()
                    .map(|v| v.parse().map_err(|_| bad("N")))
                    .collect::<Result<_, _>>()?;
                n.insert(
                    (vals[0] as usize, vals[1] as usize, vals[2] as usize),
                    vals[3],
                );
            }
            "S" => {
                if rest.len() < 3 {
                    return Err(bad("S"));
                }
                let i: usize = rest[0].parse().map_err(|_| bad("S"))?;
                let j: usize = rest[1].parse().map_err(|_| bad("S"))?;
                let value: CyclotomicNumber = rest[2..].join(" ").parse()?;
                s_entries.push((i, j, value));
            }
            "T" => {
                if rest.len() != 2 {
                    return Err(bad("T"));
                }
                let i: usize = rest[0].parse().map_err(|_| bad("T"))?;
                let v: RationalMod1 = rest[1].parse()?;
                t_entries.push((i, v));
            }
            _ => return Err(bad("unknown")),
        }
    }
    if !seen_header {
        return Err(ModDataError::Invalid("missing `modulardata` header".into()));
    }
    let rank = rank.ok_or_else(|| ModDataError::Invalid("missing rank".into()))?;
    if labels.len() != rank || dual.len() != rank {
        return Err(ModDataError::Invalid(
            "labels/dual length disagrees with rank".into(),
        ));
    }
    if unit >= rank
        || dual.iter().any(|&d| d >= rank)
        || n.keys()
            .any(|&(i, j, k)| i >= rank || j >= rank || k >= rank)
        || s_entries.iter().any(|&(i, j, _)| i >= rank || j >= rank)
        || t_entries.iter().any(|&(i, _)| i >= rank)
    {
        return Err(ModDataError::Invalid("index out of range".into()));
    }
    let mut s = vec![vec![CyclotomicNumber::zero(); rank]; rank];
    for (i, j, v) in s_entries {
        s[i][j] = v;
    }
    let mut t = vec![RationalMod1::ZERO; rank];
    for (i, v) in t_entries {
        t[i] = v;
    }
    // d_j = S_{unit j} / S_{unit unit}; D = 1 / S_{unit unit}.
    let s00 = s[unit][unit].clone();
    if s00.is_zero() {
        return Err(ModDataError::Invalid(
            "S entry at (unit, unit) must be nonzero".into(),
        ));
    }
    let dims: Vec<CyclotomicNumber> = (0..rank)
        .map(|j| s[unit][j].div(&s00))
        .collect::<Result<_, _>>()?;
    let dtot = s00.recip()?;
    let d2 = dtot.mul(&dtot)?;
    let global_dim = d2.as_rational().ok_or_else(|| {
        ModDataError::Invalid("1/S_00^2 is not rational; refusing the normalisation".into())
    })?;
    Ok(ModularData {
        ring: FusionRingData {
            labels,
            unit,
            dual,
            n,
        },
        s,
        t,
        dims,
        global_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricgrp::library;

    fn md_of(name: &str) -> ModularData {
        ModularData::from_metric_group(&library(name).unwrap()).unwrap()
    }

    #[test]
    fn metric_group_bridge_examples() {
        // rep-z2: singular S with constant entries 1/sqrt(2).
        let rep = md_of("rep-z2");
        assert_eq!(rep.rank(), 2);
        let inv_root2 = CyclotomicNumber::sqrt_integer(2).unwrap().recip().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(rep.s[i][j], inv_root2);
            }
        }
        let report = verify_modular_axioms(&rep);
        assert!(
            report.failures.iter().any(|f| f.contains("identity")),
            "degenerate data must fail unitarity: {report}"
        );

        // Toric code: entries +-1/2, invertible, all axioms pass.
        let tc = md_of("toric-code");
        let half = CyclotomicNumber::from_rational(Rational::new(1, 2));
        for i in 0..4 {
            for j in 0..4 {
                assert!(tc.s[i][j] == half || tc.s[i][j] == half.neg());
            }
        }
        assert!(verify_modular_axioms(&tc).passed());

        // Semion: S = (1/sqrt2) [[1,1],[1,-1]], T = diag(1, i).
        let sm = md_of("semion");
        assert_eq!(sm.s[1][1], inv_root2.neg());
        assert_eq!(sm.t[1], RationalMod1::from_parts(1, 4));
        assert!(verify_modular_axioms(&sm).passed());
    }

    #[test]
    fn perturbed_entry_fails_verlinde() {
        let mut tc = md_of("toric-code");
        tc.s[1][2] = tc.s[1][2].neg();
        let report = verify_modular_axioms(&tc);
        assert!(!report.passed());
    }

    #[test]
    fn ising_entries_are_verified_modular_data() {
        for nu in [1u64, 3, 5, 7, 9, 11, 13, 15] {
            let md = ising(nu).unwrap();
            let report = verify_modular_axioms(&md);
            assert!(report.passed(), "nu = {nu}: {report}");
        }
        assert!(ising(2).is_err());
    }

    #[test]
    fn mueger_centralizer_examples() {
        let tc = md_of("toric-code");
        // A = {1, e} for e = (1,0): the centralizer is {1, e} again.
        let unit = tc.ring.unit;
        let e = tc.ring.labels.iter().position(|l| l == "(1,0)").unwrap();
        let cz = tc.mueger_centralizer(&[unit, e]).unwrap();
        assert_eq!(cz, vec![unit, e]);
        // A = {unit}: everything.
        assert_eq!(tc.mueger_centralizer(&[unit]).unwrap().len(), 4);
        // Ising: trivial Mueger center.
        let is = ising(1).unwrap();
        let all: Vec<usize> = (0..3).collect();
        assert_eq!(is.mueger_centralizer(&all).unwrap(), vec![0]);
    }

    #[test]
    fn deligne_product_examples() {
        let trivial = md_of("trivial");
        let tc = md_of("toric-code");
        let p = trivial.deligne_product(&tc).unwrap();
        assert!(pointed_label_bijection(&p, &tc).is_some());

        let ds = md_of("semion")
            .deligne_product(&md_of("anti-semion"))
            .unwrap();
        assert!(pointed_label_bijection(&ds, &md_of("double-semion")).is_some());

        assert_eq!(tc.deligne_product(&tc).unwrap().rank(), 16);
    }

    #[test]
    fn condense_grouplike_examples() {
        let tc = md_of("toric-code");
        let view = tc.as_pointed().unwrap();
        let e_sub = Subgroup::from_sorted(vec![
            GroupElement::new(vec![0, 0]),
            GroupElement::new(vec![1, 0]),
        ]);
        let a = GroupLikeAlgebra::from_subgroup(&view, &e_sub);
        let out = tc.condense_grouplike(&a).unwrap();
        assert_eq!(out.rank(), 1);

        let unit_only = GroupLikeAlgebra::new(vec![tc.ring.unit]);
        assert_eq!(tc.condense_grouplike(&unit_only).unwrap(), tc);

        // The fermion algebra is rejected: nontrivial twist.
        let f = tc.ring.labels.iter().position(|l| l == "(1,1)").unwrap();
        let bad = GroupLikeAlgebra::new(vec![tc.ring.unit, f]);
        assert!(matches!(
            tc.condense_grouplike(&bad),
            Err(ModDataError::UnsupportedCondensation(_))
        ));
    }

    #[test]
    fn condensation_routes_agree_on_all_builtins() {
        // Metric route vs modular route, compared through a label bijection.
        for name in crate::metricgrp::library_names() {
            let mg = library(name).unwrap();
            let md = ModularData::from_metric_group(&mg).unwrap();
            let view = md.as_pointed().unwrap();
            for h in mg.isotropic_subgroups() {
                let metric_route =
                    ModularData::from_metric_group(&mg.condense(&h).unwrap().quotient).unwrap();
                let algebra = GroupLikeAlgebra::from_subgroup(&view, &h);
                let modular_route = md.condense_grouplike(&algebra).unwrap();
                assert!(
                    pointed_label_bijection(&metric_route, &modular_route).is_some(),
                    "{name} with |H| = {}",
                    h.order()
                );
                if mg.is_nondegenerate() {
                    assert!(
                        verify_modular_axioms(&modular_route).passed(),
                        "{name}: condensation output fails axioms"
                    );
                }
            }
        }
    }

    #[test]
    fn antidiagonal_condensation_of_toric_square_is_toric() {
        // The canonical base algebra of rep-z2 embedded as {1, e} in each
        // factor: A = {(x, -x) : x in {0, e}}. Condensing toric x toric by
        // it realises Z(E) boxdot_E M = M at the data level.
        let tc = md_of("toric-code");
        let prod = tc.deligne_product(&tc).unwrap();
        let mgtc = library("toric-code").unwrap();
        let members: Vec<usize> = mgtc
            .group()
            .elements()
            .iter()
            .filter(|x| x.is_zero() || x.coords() == [1, 0])
            .map(|x| {
                let i = mgtc.group().index_of(x);
                let j = mgtc.group().index_of(&mgtc.group().neg(x));
                i * 4 + j
            })
            .collect();
        let out = prod
            .condense_grouplike(&GroupLikeAlgebra::new(members))
            .unwrap();
        assert_eq!(out.rank(), 4);
        assert!(pointed_label_bijection(&out, &tc).is_some());
    }

    #[test]
    fn verlinde_examples() {
        let tc = md_of("toric-code");
        assert_eq!(tc.verlinde_genus_dim(1).unwrap(), 4);
        assert_eq!(tc.verlinde_genus_dim(2).unwrap(), 16);
        assert_eq!(tc.verlinde_genus_dim(0).unwrap(), 1);
        let sm = md_of("semion");
        assert_eq!(sm.verlinde_genus_dim(1).unwrap(), 2);
        // Rank at genus 1 for any nondegenerate datum.
        let is = ising(3).unwrap();
        assert_eq!(is.verlinde_genus_dim(1).unwrap(), 3);
        assert_eq!(is.verlinde_genus_dim(2).unwrap(), 10);
    }

    #[test]
    fn verlinde_multiplicativity() {
        let a = md_of("toric-code");
        let b = md_of("semion");
        let p = a.deligne_product(&b).unwrap();
        for g in 0..3 {
            assert_eq!(
                p.verlinde_genus_dim(g).unwrap(),
                a.verlinde_genus_dim(g).unwrap() * b.verlinde_genus_dim(g).unwrap()
            );
        }
    }

    #[test]
    fn double_centralizer_closes_subgroups() {
        for name in ["toric-code", "double-semion", "z4-1"] {
            let md = md_of(name);
            let view = md.as_pointed().unwrap();
            for h in view.mg.group().all_subgroups() {
                let a: Vec<usize> = view
                    .element_of
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| h.contains(e))
                    .map(|(i, _)| i)
                    .collect();
                let cz = md.mueger_centralizer(&a).unwrap();
                let back = md.mueger_centralizer(&cz).unwrap();
                assert_eq!(back, a, "{name}: double centralizer returns the subgroup");
            }
        }
    }

    #[test]
    fn text_format_round_trips() {
        for md in [md_of("toric-code"), md_of("semion"), ising(1).unwrap()] {
            let text = format_modular_data(&md);
            let back = parse_modular_data(&text).unwrap();
            assert_eq!(back, md);
            assert_eq!(format_modular_data(&back), text);
        }
    }
}
