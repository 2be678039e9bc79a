//! The modular-extension group of a symmetric pointed base.
//!
//! A modular extension of `C` over `E` is a nondegenerate `M` with an
//! embedding of `C` whose centralized part over the embedded base is
//! exactly the image of `C`. Extensions multiply through the relative
//! tensor product, the unit is the pointed double of the base, and
//! conjugation inverts. `enumerate` brute-forces every quadratic form on
//! every abelian group of the right order, filters by the defining
//! predicate, and quotients by embedding-compatible equivalence; the
//! search over forms is data-parallel under the `parallel` feature and
//! merged canonically so results never depend on scheduling.

use std::fmt;

use thiserror::Error;

use crate::braidedmod::{BraidedEModule, BraidedModError};
use crate::exactnum::{CyclotomicNumber, RationalMod1};
use crate::limits;
use crate::metricgrp::{
    abelian_groups_of_order, FiniteAbelianGroup, GroupElement, MetricEmbedding, MetricError,
    MetricGroup, Subgroup,
};
use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MextError {
    #[error("base mismatch")]
    BaseMismatch,
    #[error("search space overflow: order {0} exceeds the bound {1}")]
    SearchOverflow(u64, u64),
    #[error("candidate is not a modular extension: {0}")]
    NotAnExtension(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Braided(#[from] BraidedModError),
}

/// A candidate modular extension `(M, iota: C -> M)` of `C` over the
/// symmetric base `E` embedded via `iota_base: E -> C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularExtension {
    pub base: MetricGroup,
    pub inner: MetricGroup,
    pub extension: MetricGroup,
    pub iota: MetricEmbedding,
    pub iota_base: MetricEmbedding,
}

/// Verification outcome; an empty failure list is a pass.
#[derive(Debug, Clone, Default)]
pub struct MextReport {
    pub failures: Vec<String>,
}

impl MextReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for MextReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            writeln!(f, "modular extension: pass")
        } else {
            for line in &self.failures {
                writeln!(f, "FAIL {line}")?;
            }
            Ok(())
        }
    }
}

impl ModularExtension {
    pub fn new(
        base: MetricGroup,
        inner: MetricGroup,
        extension: MetricGroup,
        iota: MetricEmbedding,
        iota_base: MetricEmbedding,
    ) -> Result<Self, MextError> {
        if iota_base.source != base
            || iota_base.target != inner
            || iota.source != inner
            || iota.target != extension
        {
            return Err(MextError::BaseMismatch);
        }
        Ok(ModularExtension {
            base,
            inner,
            extension,
            iota,
            iota_base,
        })
    }

    /// Check the defining predicate: the ambient category is nondegenerate
    /// and the base-centralized part is exactly the inner image.
    pub fn verify(&self) -> MextReport {
        let mut failures = Vec::new();
        if !self.extension.is_nondegenerate() {
            failures.push("ambient category is degenerate".into());
        }
        let base_in_m = match self.iota_base.compose(&self.iota) {
            Ok(e) => e,
            Err(err) => {
                failures.push(format!("embeddings do not compose: {err}"));
                return MextReport { failures };
            }
        };
        let complement = self.extension.orthogonal_complement(&base_in_m.image());
        let inner_image = self.iota.image();
        if complement != inner_image {
            failures.push(format!(
                "centralizer of the base has order {}, inner image has order {}",
                complement.order(),
                inner_image.order()
            ));
        }
        MextReport { failures }
    }

    /// Product extension through the relative tensor product.
    pub fn mul(&self, other: &ModularExtension) -> Result<ModularExtension, MextError> {
        if self.base != other.base {
            return Err(MextError::BaseMismatch);
        }
        let m_a = BraidedEModule::double_braiding(
            self.base.clone(),
            self.extension.clone(),
            self.iota_base.compose(&self.iota)?,
        )?;
        let m_b = BraidedEModule::double_braiding(
            other.base.clone(),
            other.extension.clone(),
            other.iota_base.compose(&other.iota)?,
        )?;
        let m_ab = m_a.relative_tensor(&m_b)?;

        let c_a = BraidedEModule::double_braiding(
            self.base.clone(),
            self.inner.clone(),
            self.iota_base.clone(),
        )?;
        let c_b = BraidedEModule::double_braiding(
            other.base.clone(),
            other.inner.clone(),
            other.iota_base.clone(),
        )?;
        let c_ab = c_a.relative_tensor(&c_b)?;

        // iota on the product: [c, c'] -> [iota c, iota c']. Build it on a
        // section of the inner condensation.
        let inner_sum = self.inner.direct_sum(&other.inner);
        let ext_sum = self.extension.direct_sum(&other.extension);
        let inner_anti: Vec<GroupElement> = self
            .base
            .group()
            .elements()
            .iter()
            .map(|e| {
                inner_sum.sum.group().add(
                    &inner_sum.include_left(&self.iota_base.apply(e)),
                    &inner_sum
                        .include_right(&other.inner.group().neg(&other.iota_base.apply(e))),
                )
            })
            .collect();
        let inner_cond = inner_sum.sum.condense(&Subgroup::from_sorted(inner_anti))?;
        let ext_anti: Vec<GroupElement> = self
            .base
            .group()
            .elements()
            .iter()
            .map(|e| {
                ext_sum.sum.group().add(
                    &ext_sum.include_left(&self.iota.apply(&self.iota_base.apply(e))),
                    &ext_sum.include_right(
                        &other
                            .extension
                            .group()
                            .neg(&other.iota.apply(&other.iota_base.apply(e))),
                    ),
                )
            })
            .collect();
        let ext_cond = ext_sum.sum.condense(&Subgroup::from_sorted(ext_anti))?;

        // Section: least preimage of each class of the inner condensation.
        let mut section: std::collections::BTreeMap<GroupElement, GroupElement> =
            Default::default();
        for (pre, class) in &inner_cond.project {
            section.entry(class.clone()).or_insert_with(|| pre.clone());
        }
        let map: Vec<GroupElement> = c_ab
            .carrier()
            .group()
            .elements()
            .iter()
            .map(|class| {
                let pre = &section[class];
                let (xa, xb) = split_pair(&inner_sum, pre, self.inner.group(), other.inner.group());
                let lifted = ext_sum.sum.group().add(
                    &ext_sum.include_left(&self.iota.apply(&xa)),
                    &ext_sum.include_right(&other.iota.apply(&xb)),
                );
                ext_cond.project[&lifted].clone()
            })
            .collect();
        let iota = MetricEmbedding::new(c_ab.carrier().clone(), m_ab.carrier().clone(), map)?;
        let iota_base = MetricEmbedding::new(
            self.base.clone(),
            c_ab.carrier().clone(),
            self.base
                .group()
                .elements()
                .iter()
                .map(|e| c_ab.embed().apply(e))
                .collect(),
        )?;
        ModularExtension::new(
            self.base.clone(),
            c_ab.carrier().clone(),
            m_ab.carrier().clone(),
            iota,
            iota_base,
        )
    }

    /// Conjugate extension: all quadratic forms negated. The symmetric base
    /// is fixed by conjugation, so this stays over the same base.
    pub fn inverse(&self) -> ModularExtension {
        ModularExtension {
            base: self.base.clone(),
            inner: self.inner.conjugate(),
            extension: self.extension.conjugate(),
            iota: MetricEmbedding {
                source: self.inner.conjugate(),
                target: self.extension.conjugate(),
                map: self.iota.map.clone(),
            },
            iota_base: MetricEmbedding {
                source: self.base.clone(),
                target: self.inner.conjugate(),
                map: self.iota_base.map.clone(),
            },
        }
    }

    /// Embedding-compatible equivalence: an isometry of ambients matching
    /// the inner embeddings up to an automorphism of the inner category
    /// fixing the embedded base pointwise.
    pub fn equivalent(&self, other: &ModularExtension) -> bool {
        if self.base != other.base || self.inner.order() != other.inner.order() {
            return false;
        }
        let pins: Vec<(GroupElement, GroupElement)> = self
            .base
            .group()
            .elements()
            .iter()
            .map(|e| (self.iota_base.apply(e), other.iota_base.apply(e)))
            .collect();
        for psi in self.inner.all_isometries_constrained(&other.inner, &pins) {
            let pins_m: Vec<(GroupElement, GroupElement)> = self
                .inner
                .group()
                .elements()
                .iter()
                .map(|c| {
                    (
                        self.iota.apply(c),
                        other.iota.apply(&psi.apply(self.inner.group(), c)),
                    )
                })
                .collect();
            if self
                .extension
                .isometry_constrained(&other.extension, &pins_m)
                .is_some()
            {
                return true;
            }
        }
        false
    }
}

/// Recover the two components of an element of a direct sum.
fn split_pair(
    sum: &crate::metricgrp::DirectSum,
    x: &GroupElement,
    left_group: &FiniteAbelianGroup,
    right_group: &FiniteAbelianGroup,
) -> (GroupElement, GroupElement) {
    for a in left_group.elements() {
        for b in right_group.elements() {
            let candidate = sum
                .sum
                .group()
                .add(&sum.include_left(a), &sum.include_right(b));
            if &candidate == x {
                return (a.clone(), b.clone());
            }
        }
    }
    unreachable!("element not in the direct sum");
}

/// The unit extension: the pointed double `(G x G^, q(g, chi) = q(g) + chi(g))`
/// of the base, with the base included in the first coordinate.
pub fn mext_unit(base: &MetricGroup) -> Result<ModularExtension, MextError> {
    if !base.is_symmetric() {
        return Err(MextError::NotAnExtension("base is not symmetric".into()));
    }
    let g = base.group().clone();
    let (double, left, right) = g.product(&g);
    let mut q = vec![RationalMod1::ZERO; double.order() as usize];
    for (i, x) in g.elements().iter().enumerate() {
        for (j, chi) in g.elements().iter().enumerate() {
            let spot = double.add(&left[i], &right[j]);
            q[double.index_of(&spot)] = base.q(x).add(&g.character_value(chi, x));
        }
    }
    let m = MetricGroup::new(double, q)?;
    let images: Vec<GroupElement> = g
        .generators()
        .iter()
        .map(|e| left[g.index_of(e)].clone())
        .collect();
    let iota = MetricEmbedding::from_generator_images(base.clone(), m.clone(), &images)?;
    let ext = ModularExtension::new(
        base.clone(),
        base.clone(),
        m,
        iota,
        MetricEmbedding::identity(base),
    )?;
    let report = ext.verify();
    if !report.passed() {
        return Err(MextError::NotAnExtension(report.failures.join("; ")));
    }
    Ok(ext)
}

/// All equivalence classes of modular extensions of `(C, iota_base)` over
/// the base, together with the Cayley table of the product.
#[derive(Debug, Clone)]
pub struct MextClasses {
    pub base: MetricGroup,
    pub representatives: Vec<ModularExtension>,
    pub cayley: Vec<Vec<usize>>,
}

impl MextClasses {
    pub fn class_of(&self, candidate: &ModularExtension) -> Option<usize> {
        self.representatives
            .iter()
            .position(|rep| rep.equivalent(candidate))
    }

    /// Group-axiom check on the emitted table: associativity, commutativity,
    /// a unit class matching `mext_unit`, and inverse classes matching
    /// `inverse`. Returns human-readable failures.
    pub fn group_axiom_failures(&self) -> Vec<String> {
        let n = self.representatives.len();
        let t = &self.cayley;
        let mut fails = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if t[i][j] != t[j][i] {
                    fails.push(format!("commutativity at ({i}, {j})"));
                }
                for k in 0..n {
                    if t[t[i][j]][k] != t[i][t[j][k]] {
                        fails.push(format!("associativity at ({i}, {j}, {k})"));
                    }
                }
            }
            let row: std::collections::BTreeSet<usize> = t[i].iter().copied().collect();
            if row.len() != n {
                fails.push(format!("row {i} is not a permutation"));
            }
        }
        match mext_unit(&self.base) {
            Ok(unit) => match self.class_of(&unit) {
                Some(u) => {
                    for i in 0..n {
                        if t[u][i] != i || t[i][u] != i {
                            fails.push(format!("class {u} is not a unit at {i}"));
                        }
                        let inv = self.representatives[i].inverse();
                        match self.class_of(&inv) {
                            Some(j) if t[i][j] == u => {}
                            Some(j) => fails.push(format!(
                                "inverse class {j} of {i} does not multiply to the unit"
                            )),
                            None => fails.push(format!("inverse of class {i} not enumerated")),
                        }
                    }
                }
                None => fails.push("unit extension not found among the classes".into()),
            },
            Err(e) => fails.push(format!("unit extension failed to build: {e}")),
        }
        fails
    }

    /// Gauss-sum character of each class: the normalised phase
    /// `g / sqrt(|G_M|)` of the ambient Gauss sum (the modulus is
    /// `sqrt(|G_M|)` for nondegenerate forms), an isometry invariant that
    /// is multiplicative across the product.
    pub fn gauss_characters(&self) -> Result<Vec<CyclotomicNumber>, MextError> {
        self.representatives
            .iter()
            .map(|rep| {
                let g = rep.extension.gauss_sum().map_err(MetricError::Exact)?;
                let root = CyclotomicNumber::sqrt_integer(rep.extension.order())
                    .map_err(MetricError::Exact)?;
                Ok(g.div(&root).map_err(MetricError::Exact)?)
            })
            .collect()
    }
}

/// Enumerate the modular extensions of `(inner, iota_base)` over `base` by
/// brute force over all quadratic forms on all abelian groups of order
/// `|base| * |inner|`. The form filter runs in parallel under the
/// `parallel` feature; the result is schedule-independent.
pub fn enumerate(
    base: &MetricGroup,
    inner: &MetricGroup,
    iota_base: &MetricEmbedding,
) -> Result<MextClasses, MextError> {
    enumerate_impl(base, inner, iota_base, false)
}

/// Single-threaded twin of [`enumerate`], kept available so benchmarks can
/// compare the two code paths within one build.
pub fn enumerate_sequential(
    base: &MetricGroup,
    inner: &MetricGroup,
    iota_base: &MetricEmbedding,
) -> Result<MextClasses, MextError> {
    enumerate_impl(base, inner, iota_base, true)
}

fn enumerate_impl(
    base: &MetricGroup,
    inner: &MetricGroup,
    iota_base: &MetricEmbedding,
    force_sequential: bool,
) -> Result<MextClasses, MextError> {
    if !base.is_symmetric() {
        return Err(MextError::NotAnExtension("base is not symmetric".into()));
    }
    let target_order = base.order() * inner.order();
    let bound = limits::max_order();
    if target_order > bound {
        return Err(MextError::SearchOverflow(target_order, bound));
    }
    let mut jobs: Vec<MetricGroup> = Vec::new();
    for group in abelian_groups_of_order(target_order) {
        for q in quadratic_forms(&group) {
            if let Ok(mg) = MetricGroup::new(group.clone(), q) {
                if mg.is_nondegenerate() {
                    jobs.push(mg);
                }
            }
        }
    }
    let base = base.clone();
    let inner = inner.clone();
    let iota_base = iota_base.clone();
    let mut candidates: Vec<ModularExtension> = {
        let base = &base;
        let inner = &inner;
        let iota_base = &iota_base;
        let sieve = move |m: MetricGroup| {
            let mut found = Vec::new();
            for iota in inner.metric_embeddings_into(&m) {
                let ext = ModularExtension::new(
                    base.clone(),
                    inner.clone(),
                    m.clone(),
                    iota,
                    iota_base.clone(),
                )
                .ok()?;
                if ext.verify().passed() {
                    found.push(ext);
                }
            }
            if found.is_empty() {
                None
            } else {
                Some(found)
            }
        };
        let nested = if force_sequential {
            par::filter_map_collect_seq(jobs, sieve)
        } else {
            par::filter_map_collect(jobs, sieve)
        };
        nested.into_iter().flatten().collect()
    };
    // Canonical order, then greedy classification: deterministic whatever
    // the parallel schedule was.
    candidates.sort_by(candidate_order);
    let mut representatives: Vec<ModularExtension> = Vec::new();
    for cand in candidates {
        if !representatives.iter().any(|rep| rep.equivalent(&cand)) {
            representatives.push(cand);
        }
    }
    let mut cayley = vec![vec![0usize; representatives.len()]; representatives.len()];
    for (i, a) in representatives.iter().enumerate() {
        for (j, b) in representatives.iter().enumerate() {
            let prod = a.mul(b)?;
            // The product's inner category is the condensed square; rebase
            // it to the enumerated inner before classifying.
            let rebased = rebase_inner(&prod, &inner, &iota_base)?;
            let class = representatives
                .iter()
                .position(|rep| rep.equivalent(&rebased))
                .ok_or_else(|| {
                    MextError::NotAnExtension(format!(
                        "product of classes {i} and {j} left the enumerated set"
                    ))
                })?;
            cayley[i][j] = class;
        }
    }
    Ok(MextClasses {
        base,
        representatives,
        cayley,
    })
}

/// Express an extension of an isometric copy of `inner` as an extension of
/// `inner` itself, composing with a base-fixing isometry of the inners.
fn rebase_inner(
    ext: &ModularExtension,
    inner: &MetricGroup,
    iota_base: &MetricEmbedding,
) -> Result<ModularExtension, MextError> {
    let pins: Vec<(GroupElement, GroupElement)> = ext
        .base
        .group()
        .elements()
        .iter()
        .map(|e| (iota_base.apply(e), ext.iota_base.apply(e)))
        .collect();
    let psi = inner
        .isometry_constrained(&ext.inner, &pins)
        .ok_or_else(|| {
            MextError::NotAnExtension("product inner category is not the expected one".into())
        })?;
    let map: Vec<GroupElement> = inner
        .group()
        .elements()
        .iter()
        .map(|c| ext.iota.apply(&psi.apply(inner.group(), c)))
        .collect();
    let iota = MetricEmbedding::new(inner.clone(), ext.extension.clone(), map)?;
    ModularExtension::new(
        ext.base.clone(),
        inner.clone(),
        ext.extension.clone(),
        iota,
        iota_base.clone(),
    )
}

fn candidate_order(a: &ModularExtension, b: &ModularExtension) -> std::cmp::Ordering {
    (
        a.extension.group().invariant_factors(),
        a.extension.q_table(),
        &a.iota.map,
    )
        .cmp(&(
            b.extension.group().invariant_factors(),
            b.extension.q_table(),
            &b.iota.map,
        ))
}

/// Every quadratic form on the group: free choices of `q` on the
/// generators (denominator `2 n_i` for even `n_i`, else `n_i`) and of the
/// pairings `b` between distinct generators (denominator `gcd(n_i, n_j)`).
pub fn quadratic_forms(group: &FiniteAbelianGroup) -> Vec<Vec<RationalMod1>> {
    let factors = group.invariant_factors().to_vec();
    let r = factors.len();
    if r == 0 {
        return vec![vec![RationalMod1::ZERO]];
    }
    let mut axes: Vec<u64> = Vec::new();
    for &n in &factors {
        axes.push(if n % 2 == 0 { 2 * n } else { n });
    }
    let mut pair_index = Vec::new();
    for i in 0..r {
        for j in (i + 1)..r {
            axes.push(gcd(factors[i], factors[j]));
            pair_index.push((i, j));
        }
    }
    let mut forms = Vec::new();
    let mut choice: Vec<u64> = vec![0; axes.len()];
    loop {
        let qgen: Vec<RationalMod1> = (0..r)
            .map(|i| RationalMod1::from_parts(choice[i] as i64, axes[i] as i64))
            .collect();
        let mut bpair = vec![vec![RationalMod1::ZERO; r]; r];
        for (k, &(i, j)) in pair_index.iter().enumerate() {
            let v = RationalMod1::from_parts(choice[r + k] as i64, axes[r + k] as i64);
            bpair[i][j] = v;
            bpair[j][i] = v;
        }
        let q: Vec<RationalMod1> = group
            .elements()
            .iter()
            .map(|x| {
                let mut acc = RationalMod1::ZERO;
                for (i, &a) in x.coords().iter().enumerate() {
                    acc = acc.add(&qgen[i].times((a * a) as i64));
                    for (j, &b) in x.coords().iter().enumerate().skip(i + 1) {
                        acc = acc.add(&bpair[i][j].times((a * b) as i64));
                    }
                }
                acc
            })
            .collect();
        forms.push(q);
        let mut i = axes.len();
        loop {
            if i == 0 {
                return forms;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < axes[i] {
                break;
            }
            choice[i] = 0;
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricgrp::library;

    fn elem(coords: &[u64]) -> GroupElement {
        GroupElement::new(coords.to_vec())
    }

    fn extension_of(
        base_name: &str,
        m_name: &str,
        iota_gen: &[u64],
    ) -> Result<ModularExtension, MextError> {
        let base = library(base_name).unwrap();
        let m = library(m_name).unwrap();
        let iota =
            MetricEmbedding::from_generator_images(base.clone(), m.clone(), &[elem(iota_gen)])?;
        ModularExtension::new(
            base.clone(),
            base.clone(),
            m,
            iota,
            MetricEmbedding::identity(&base),
        )
    }

    #[test]
    fn verification_examples() {
        // Toric code with 1 -> e extends rep-z2.
        let tc = extension_of("rep-z2", "toric-code", &[1, 0]).unwrap();
        assert!(tc.verify().passed());
        // Double semion with 1 -> the boson (1,1) extends rep-z2.
        let ds = extension_of("rep-z2", "double-semion", &[1, 1]).unwrap();
        assert!(ds.verify().passed());
        // 1 -> f is not even a metric embedding.
        assert!(matches!(
            extension_of("rep-z2", "toric-code", &[1, 1]),
            Err(MextError::Metric(MetricError::InvalidEmbedding(_)))
        ));
    }

    #[test]
    fn unit_examples() {
        let unit = mext_unit(&library("rep-z2").unwrap()).unwrap();
        assert!(unit
            .extension
            .isometry(&library("toric-code").unwrap())
            .is_some());

        let trivial = mext_unit(&library("trivial").unwrap()).unwrap();
        assert_eq!(trivial.extension.order(), 1);

        // sVec unit: the 4-entry table q(g, chi) = q(g) + chi(g); the base
        // sits on a fermion.
        let sv = mext_unit(&library("svec").unwrap()).unwrap();
        assert!(sv.extension.is_nondegenerate());
        assert_eq!(
            sv.extension.q(&sv.iota.apply(&elem(&[1]))),
            RationalMod1::HALF
        );
        assert!(sv.verify().passed());
    }

    #[test]
    fn unit_absorbs() {
        let unit = mext_unit(&library("rep-z2").unwrap()).unwrap();
        let ds = extension_of("rep-z2", "double-semion", &[1, 1]).unwrap();
        let prod = unit.mul(&ds).unwrap();
        assert!(prod.verify().passed());
        assert!(prod
            .extension
            .isometry(&library("double-semion").unwrap())
            .is_some());
    }

    #[test]
    fn conjugate_multiplies_to_the_unit() {
        let ds = extension_of("rep-z2", "double-semion", &[1, 1]).unwrap();
        let prod = ds.mul(&ds.inverse()).unwrap();
        assert!(prod.verify().passed());
        // The unit of rep-z2 is the toric code.
        assert!(prod
            .extension
            .isometry(&library("toric-code").unwrap())
            .is_some());
        // Double semion is its own inverse here.
        assert!(ds.inverse().equivalent(&ds));
        let unit = mext_unit(&library("rep-z2").unwrap()).unwrap();
        assert!(unit.inverse().equivalent(&unit));
    }

    #[test]
    fn product_commutes() {
        let tc = extension_of("rep-z2", "toric-code", &[1, 0]).unwrap();
        let ds = extension_of("rep-z2", "double-semion", &[1, 1]).unwrap();
        let ab = tc.mul(&ds).unwrap();
        let ba = ds.mul(&tc).unwrap();
        assert!(ab.verify().passed());
        assert!(ab.extension.isometry(&ba.extension).is_some());
    }

    #[test]
    fn enumerate_trivial_base() {
        let trivial = library("trivial").unwrap();
        let classes = enumerate(&trivial, &trivial, &MetricEmbedding::identity(&trivial)).unwrap();
        assert_eq!(classes.representatives.len(), 1);
        assert!(classes.group_axiom_failures().is_empty());
    }

    #[test]
    fn enumerate_rep_z2() {
        // Honest count: the extensions of rep-z2 are the toric code and the
        // double semion, a group of order 2.
        let base = library("rep-z2").unwrap();
        let classes = enumerate(&base, &base, &MetricEmbedding::identity(&base)).unwrap();
        assert_eq!(classes.representatives.len(), 2);
        let tc = library("toric-code").unwrap();
        let ds = library("double-semion").unwrap();
        assert!(classes.representatives[0].extension.isometry(&tc).is_some());
        assert!(classes.representatives[1].extension.isometry(&ds).is_some());
        assert!(classes.group_axiom_failures().is_empty());
        // Z/2 structure: double semion squares to the unit class.
        assert_eq!(classes.cayley, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn enumerate_svec_is_cyclic_of_order_8() {
        let base = library("svec").unwrap();
        let classes = enumerate(&base, &base, &MetricEmbedding::identity(&base)).unwrap();
        assert_eq!(classes.representatives.len(), 8);
        assert!(classes.group_axiom_failures().is_empty());
        // Cyclic: some class generates all eight.
        let n = 8;
        let has_generator = (0..n).any(|g| {
            let mut seen = std::collections::BTreeSet::new();
            let mut cur = g;
            for _ in 0..n {
                seen.insert(cur);
                cur = classes.cayley[cur][g];
            }
            seen.len() == n
        });
        assert!(has_generator, "table is not cyclic: {:?}", classes.cayley);
        // Representatives: four odd forms on Z4 plus four Z2 x Z2 forms.
        let z4_count = classes
            .representatives
            .iter()
            .filter(|r| r.extension.group().invariant_factors() == [4])
            .count();
        assert_eq!(z4_count, 4);
    }

    #[test]
    fn gauss_characters_separate_svec_classes() {
        let base = library("svec").unwrap();
        let classes = enumerate(&base, &base, &MetricEmbedding::identity(&base)).unwrap();
        let chars = classes.gauss_characters().unwrap();
        let mut sorted = chars.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8, "characters separate the classes");
        // Multiplicative across the table.
        for i in 0..8 {
            for j in 0..8 {
                let prod = chars[i].mul(&chars[j]).unwrap();
                assert_eq!(prod, chars[classes.cayley[i][j]]);
            }
        }
    }

    #[test]
    fn gauss_characters_on_rep_z2() {
        // Both classes have Gauss phase 1: constant on classes and
        // multiplicative, though not separating for this base.
        let base = library("rep-z2").unwrap();
        let classes = enumerate(&base, &base, &MetricEmbedding::identity(&base)).unwrap();
        let chars = classes.gauss_characters().unwrap();
        for c in &chars {
            assert_eq!(*c, CyclotomicNumber::one());
        }
    }

    #[test]
    fn every_class_inverts_into_the_unit() {
        for name in ["rep-z2", "svec"] {
            let base = library(name).unwrap();
            let classes = enumerate(&base, &base, &MetricEmbedding::identity(&base)).unwrap();
            let unit_class = classes.class_of(&mext_unit(&base).unwrap()).unwrap();
            for (i, rep) in classes.representatives.iter().enumerate() {
                let j = classes.class_of(&rep.inverse()).unwrap();
                assert_eq!(classes.cayley[i][j], unit_class, "{name} class {i}");
            }
        }
    }

    #[test]
    fn search_bound_is_enforced() {
        // (Z2)^4 over itself targets order 256 > 64: refused, not attempted.
        let big = MetricGroup::from_fn(
            FiniteAbelianGroup::new(vec![2, 2, 2, 2]).unwrap(),
            |_| RationalMod1::ZERO,
        )
        .unwrap();
        let err = enumerate(&big, &big, &MetricEmbedding::identity(&big)).unwrap_err();
        assert!(matches!(err, MextError::SearchOverflow(256, _)));
    }
}
