//! Finite abelian metric groups `(G, q)`: the skeletal model of pointed
//! braided fusion categories.
//!
//! `q: G -> Q/Z` is stored as a full table, so invariant checks are
//! exhaustive. The associated bicharacter `b(x, y) = q(x+y) - q(x) - q(y)`
//! plays the role of the double braiding; transparency, centralizers,
//! condensation and equivalence are all decided through `q` and `b` and
//! never through a choice of square root of the braiding.

mod group;
mod library;

pub use group::{
    abelian_groups_of_order, canonicalize_abstract, FiniteAbelianGroup, GroupElement, Subgroup,
};
pub use library::{library, library_names, parse_metric_group};

use std::fmt;

use thiserror::Error;

use crate::exactnum::{CyclotomicNumber, ExactError, RationalMod1};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("non-isotropic condensation")]
    NonIsotropicCondensation,
    #[error("invalid metric group: {0}")]
    InvalidMetric(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("element does not belong to the group")]
    BadElement,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// How a metric group sits relative to the symmetric/Tannakian hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricClass {
    Tannakian,
    SuperTannakian,
    NotSymmetric,
}

impl fmt::Display for SymmetricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetricClass::Tannakian => write!(f, "Tannakian"),
            SymmetricClass::SuperTannakian => write!(f, "super-Tannakian"),
            SymmetricClass::NotSymmetric => write!(f, "not-symmetric"),
        }
    }
}

/// A finite abelian group with a quadratic form, `q` tabulated on every
/// element in the canonical element order of the group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetricGroup {
    group: FiniteAbelianGroup,
    q: Vec<RationalMod1>,
}

impl MetricGroup {
    /// Build and validate: `q(-x) = q(x)` and biadditivity of `b`.
    pub fn new(group: FiniteAbelianGroup, q: Vec<RationalMod1>) -> Result<Self, MetricError> {
        if q.len() != group.order() as usize {
            return Err(MetricError::InvalidMetric(format!(
                "q table has {} entries for a group of order {}",
                q.len(),
                group.order()
            )));
        }
        let mg = MetricGroup { group, q };
        mg.validate()?;
        Ok(mg)
    }

    /// Construct from a function on elements.
    pub fn from_fn(
        group: FiniteAbelianGroup,
        f: impl Fn(&GroupElement) -> RationalMod1,
    ) -> Result<Self, MetricError> {
        let q = group.elements().iter().map(&f).collect();
        Self::new(group, q)
    }

    fn validate(&self) -> Result<(), MetricError> {
        if !self.q[self.group.index_of(&self.group.zero())].is_zero() {
            return Err(MetricError::InvalidMetric("q(0) != 0".into()));
        }
        let elems = self.group.elements();
        for x in elems {
            let neg = self.group.neg(x);
            if self.q(x) != self.q(&neg) {
                return Err(MetricError::InvalidMetric(format!(
                    "q(-x) != q(x) at x = {x}"
                )));
            }
        }
        // b(x + g, z) = b(x, z) + b(g, z) along generator steps; full
        // biadditivity follows by induction on coordinates.
        for g in self.group.generators() {
            for x in elems {
                let xg = self.group.add(x, &g);
                for z in elems {
                    let lhs = self.b(&xg, z);
                    let rhs = self.b(x, z).add(&self.b(&g, z));
                    if lhs != rhs {
                        return Err(MetricError::InvalidMetric(format!(
                            "b not biadditive at ({x}, {g}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn q(&self, x: &GroupElement) -> RationalMod1 {
        self.q[self.group.index_of(x)]
    }

    pub fn q_table(&self) -> &[RationalMod1] {
        &self.q
    }

    /// The symmetric bicharacter `b(x, y) = q(x+y) - q(x) - q(y)` mod 1.
    pub fn b(&self, x: &GroupElement, y: &GroupElement) -> RationalMod1 {
        let sum = self.group.add(x, y);
        self.q(&sum).sub(&self.q(x)).sub(&self.q(y))
    }

    /// Full bicharacter table in element order.
    pub fn bicharacter(&self) -> Vec<Vec<RationalMod1>> {
        let elems = self.group.elements();
        elems
            .iter()
            .map(|x| elems.iter().map(|y| self.b(x, y)).collect())
            .collect()
    }

    /// Transparent elements: `{x : b(x, .) = 0}`. The group is nondegenerate
    /// iff this is trivial.
    pub fn radical(&self) -> Subgroup {
        let elems = self.group.elements();
        let members: Vec<GroupElement> = elems
            .iter()
            .filter(|x| elems.iter().all(|y| self.b(x, y).is_zero()))
            .cloned()
            .collect();
        Subgroup::from_sorted(members)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().order() == 1
    }

    /// Tannakian iff `q = 0`; super-Tannakian iff `b = 0` with some
    /// `q(x) = 1/2`; not symmetric iff `b != 0`.
    pub fn classify_symmetric(&self) -> SymmetricClass {
        if self.radical().order() != self.order() {
            return SymmetricClass::NotSymmetric;
        }
        if self.q.iter().all(|v| v.is_zero()) {
            SymmetricClass::Tannakian
        } else {
            SymmetricClass::SuperTannakian
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.classify_symmetric() != SymmetricClass::NotSymmetric
    }

    /// `H^perp = {x : b(x, h) = 0 for all h in H}`.
    pub fn orthogonal_complement(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<GroupElement> = self
            .group
            .elements()
            .iter()
            .filter(|x| h.elements().iter().all(|y| self.b(x, y).is_zero()))
            .cloned()
            .collect();
        Subgroup::from_sorted(members)
    }

    /// All subgroups `H` with `q` vanishing on `H`, canonically sorted.
    /// These are the group-like connected etale algebras.
    pub fn isotropic_subgroups(&self) -> Vec<Subgroup> {
        self.group
            .all_subgroups()
            .into_iter()
            .filter(|h| h.elements().iter().all(|x| self.q(x).is_zero()))
            .collect()
    }

    pub fn is_isotropic(&self, h: &Subgroup) -> bool {
        h.elements().iter().all(|x| self.q(x).is_zero())
    }

    /// Condensation by an isotropic subgroup: `(H^perp / H, induced q)`.
    pub fn condense(&self, h: &Subgroup) -> Result<Condensation, MetricError> {
        if !h.is_subgroup_of(&self.group) {
            return Err(MetricError::BadElement);
        }
        if !self.is_isotropic(h) {
            return Err(MetricError::NonIsotropicCondensation);
        }
        let perp = self.orthogonal_complement(h);
        // Cosets of H inside H^perp, each named by its least member.
        let mut reps: Vec<GroupElement> = Vec::new();
        let mut coset_of: std::collections::BTreeMap<GroupElement, GroupElement> =
            std::collections::BTreeMap::new();
        for x in perp.elements() {
            if coset_of.contains_key(x) {
                continue;
            }
            let mut coset: Vec<GroupElement> = h
                .elements()
                .iter()
                .map(|k| self.group.add(x, k))
                .collect();
            coset.sort();
            let rep = coset[0].clone();
            for m in coset {
                coset_of.insert(m, rep.clone());
            }
            reps.push(rep);
        }
        reps.sort();
        let add = |a: &GroupElement, b: &GroupElement| coset_of[&self.group.add(a, b)].clone();
        let (quot_group, iso) = canonicalize_abstract(&reps, add, coset_of[&self.group.zero()].clone());
        let mut q = vec![RationalMod1::ZERO; quot_group.order() as usize];
        for rep in &reps {
            // Well-defined: q is constant on cosets of an isotropic H
            // intersected with H^perp.
            q[quot_group.index_of(&iso[rep])] = self.q(rep);
        }
        let quotient = MetricGroup::new(quot_group, q)?;
        let mut project = std::collections::BTreeMap::new();
        for x in perp.elements() {
            project.insert(x.clone(), iso[&coset_of[x]].clone());
        }
        Ok(Condensation { quotient, project })
    }

    /// Orthogonal direct sum; tracks the two canonical inclusions.
    pub fn direct_sum(&self, other: &MetricGroup) -> DirectSum {
        let (group, left, right) = self.group.product(&other.group);
        let mut q = vec![RationalMod1::ZERO; group.order() as usize];
        for (i, x) in self.group.elements().iter().enumerate() {
            for (j, y) in other.group.elements().iter().enumerate() {
                let img = group.add(&left[i], &right[j]);
                q[group.index_of(&img)] = self.q(x).add(&other.q(y));
            }
        }
        let sum = MetricGroup { group, q };
        debug_assert!(sum.validate().is_ok());
        DirectSum {
            sum,
            left,
            right,
            left_source: self.group.clone(),
            right_source: other.group.clone(),
        }
    }

    /// Same group with `q` negated; models reversing the braiding.
    pub fn conjugate(&self) -> MetricGroup {
        MetricGroup {
            group: self.group.clone(),
            q: self.q.iter().map(|v| v.neg()).collect(),
        }
    }

    /// Exact Gauss sum `sum_x e^{2 pi i q(x)}`.
    pub fn gauss_sum(&self) -> Result<CyclotomicNumber, ExactError> {
        let mut acc = CyclotomicNumber::zero();
        for x in self.group.elements() {
            acc = acc.add(&CyclotomicNumber::root_of_unity(self.q(x))?)?;
        }
        Ok(acc)
    }

    /// First isometry `phi: self -> other` in lexicographic search order,
    /// or `None`. Deterministic.
    pub fn isometry(&self, other: &MetricGroup) -> Option<Isometry> {
        self.isometry_constrained(other, &[])
    }

    /// Isometry search with forced images (used for embedding-compatible
    /// equivalence tests). Each `(x, y)` pin requires `phi(x) = y`.
    pub fn isometry_constrained(
        &self,
        other: &MetricGroup,
        pins: &[(GroupElement, GroupElement)],
    ) -> Option<Isometry> {
        if self.order() != other.order() {
            return None;
        }
        if self.group.invariant_factors() != other.group.invariant_factors() {
            return None;
        }
        // Cheap invariant: multiset of (q-value, element order) must match.
        let mut sig_a: Vec<(RationalMod1, u64)> = self
            .group
            .elements()
            .iter()
            .map(|x| (self.q(x), self.group.order_of(x)))
            .collect();
        let mut sig_b: Vec<(RationalMod1, u64)> = other
            .group
            .elements()
            .iter()
            .map(|x| (other.q(x), other.group.order_of(x)))
            .collect();
        sig_a.sort();
        sig_b.sort();
        if sig_a != sig_b {
            return None;
        }
        let gens = self.group.generators();
        let mut images: Vec<GroupElement> = Vec::new();
        if self.search_isometry(other, &gens, &mut images, pins) {
            let map = self.build_hom(other, &gens, &images);
            Some(Isometry { map })
        } else {
            None
        }
    }

    /// Every isometry `self -> other` honouring the pins, in lexicographic
    /// order of generator images.
    pub fn all_isometries_constrained(
        &self,
        other: &MetricGroup,
        pins: &[(GroupElement, GroupElement)],
    ) -> Vec<Isometry> {
        if self.order() != other.order()
            || self.group.invariant_factors() != other.group.invariant_factors()
        {
            return Vec::new();
        }
        let gens = self.group.generators();
        let mut out = Vec::new();
        let mut images = Vec::new();
        self.collect_isometries(other, &gens, &mut images, pins, &mut out);
        out
    }

    fn collect_isometries(
        &self,
        other: &MetricGroup,
        gens: &[GroupElement],
        images: &mut Vec<GroupElement>,
        pins: &[(GroupElement, GroupElement)],
        out: &mut Vec<Isometry>,
    ) {
        let level = images.len();
        if level == gens.len() {
            let map = self.build_hom(other, gens, images);
            let mut seen: Vec<&GroupElement> = map.iter().collect();
            seen.sort();
            seen.dedup();
            if seen.len() == map.len()
                && pins
                    .iter()
                    .all(|(x, y)| &map[self.group.index_of(x)] == y)
            {
                out.push(Isometry { map });
            }
            return;
        }
        let g = &gens[level];
        for cand in self.generator_image_candidates(other, gens, images, level, g) {
            images.push(cand);
            self.collect_isometries(other, gens, images, pins, out);
            images.pop();
        }
    }

    /// Candidate images for the next generator in an injective search:
    /// exact order match, matching `q`, matching pairings against earlier
    /// images, and joint injectivity of the partial map.
    fn generator_image_candidates(
        &self,
        other: &MetricGroup,
        gens: &[GroupElement],
        images: &[GroupElement],
        level: usize,
        g: &GroupElement,
    ) -> Vec<GroupElement> {
        let span_size: u64 = self.group.invariant_factors()[..=level].iter().product();
        other
            .group
            .elements()
            .iter()
            .filter(|cand| {
                other.group.order_of(cand) == self.group.order_of(g)
                    && other.q(cand) == self.q(g)
                    && (0..level).all(|j| other.b(&images[j], cand) == self.b(&gens[j], g))
            })
            .filter(|cand| {
                let mut partial: Vec<GroupElement> = images.to_vec();
                partial.push((*cand).clone());
                other.group.generated_subgroup(&partial).order() == span_size
            })
            .cloned()
            .collect()
    }

    /// Every metric embedding of `self` into `target`, in lexicographic
    /// order of generator images.
    pub fn metric_embeddings_into(&self, target: &MetricGroup) -> Vec<MetricEmbedding> {
        if target.order() % self.order() != 0 {
            return Vec::new();
        }
        let gens = self.group.generators();
        let mut images = Vec::new();
        let mut out = Vec::new();
        self.collect_embeddings(target, &gens, &mut images, &mut out);
        out
    }

    fn collect_embeddings(
        &self,
        target: &MetricGroup,
        gens: &[GroupElement],
        images: &mut Vec<GroupElement>,
        out: &mut Vec<MetricEmbedding>,
    ) {
        let level = images.len();
        if level == gens.len() {
            let map = self.build_hom(target, gens, images);
            let mut seen: Vec<&GroupElement> = map.iter().collect();
            seen.sort();
            seen.dedup();
            if seen.len() == map.len() {
                out.push(MetricEmbedding {
                    source: self.clone(),
                    target: target.clone(),
                    map,
                });
            }
            return;
        }
        let g = &gens[level];
        for cand in self.generator_image_candidates(target, gens, images, level, g) {
            images.push(cand);
            self.collect_embeddings(target, gens, images, out);
            images.pop();
        }
    }

    fn search_isometry(
        &self,
        other: &MetricGroup,
        gens: &[GroupElement],
        images: &mut Vec<GroupElement>,
        pins: &[(GroupElement, GroupElement)],
    ) -> bool {
        let level = images.len();
        if level == gens.len() {
            let map = self.build_hom(other, gens, images);
            // Bijectivity: image must exhaust the target.
            let mut seen: Vec<&GroupElement> = map.iter().collect();
            seen.sort();
            seen.dedup();
            if seen.len() != map.len() {
                return false;
            }
            for (x, y) in pins {
                if &map[self.group.index_of(x)] != y {
                    return false;
                }
            }
            return true;
        }
        let g = &gens[level];
        for cand in self.generator_image_candidates(other, gens, images, level, g) {
            images.push(cand);
            if self.search_isometry(other, gens, images, pins) {
                return true;
            }
            images.pop();
        }
        false
    }

    fn build_hom(
        &self,
        other: &MetricGroup,
        gens: &[GroupElement],
        images: &[GroupElement],
    ) -> Vec<GroupElement> {
        debug_assert_eq!(gens.len(), images.len());
        self.group
            .elements()
            .iter()
            .map(|x| {
                let mut acc = other.group.zero();
                for (i, coeff) in x.coords().iter().enumerate() {
                    let part = other.group.scalar_mul(*coeff as i64, &images[i]);
                    acc = other.group.add(&acc, &part);
                }
                acc
            })
            .collect()
    }

    /// Restrict `q` to a subgroup, canonicalising the carrier.
    pub fn restrict(&self, h: &Subgroup) -> (MetricGroup, std::collections::BTreeMap<GroupElement, GroupElement>) {
        let elems: Vec<GroupElement> = h.elements().to_vec();
        let add = |a: &GroupElement, b: &GroupElement| self.group.add(a, b);
        let (sub_group, iso) = canonicalize_abstract(&elems, add, self.group.zero());
        let mut q = vec![RationalMod1::ZERO; sub_group.order() as usize];
        for x in &elems {
            q[sub_group.index_of(&iso[x])] = self.q(x);
        }
        let mg = MetricGroup {
            group: sub_group,
            q,
        };
        debug_assert!(mg.validate().is_ok());
        (mg, iso)
    }
}

/// A metric group isometry, tabulated on every source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    /// Image of the i-th source element (source element order).
    pub map: Vec<GroupElement>,
}

impl Isometry {
    pub fn apply(&self, source: &FiniteAbelianGroup, x: &GroupElement) -> GroupElement {
        self.map[source.index_of(x)].clone()
    }
}

/// Result of condensing by an isotropic subgroup.
#[derive(Debug, Clone)]
pub struct Condensation {
    pub quotient: MetricGroup,
    /// Projection `H^perp -> quotient` (only defined on `H^perp`).
    pub project: std::collections::BTreeMap<GroupElement, GroupElement>,
}

/// Orthogonal direct sum together with the two inclusions.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub sum: MetricGroup,
    left: Vec<GroupElement>,
    right: Vec<GroupElement>,
    left_source: FiniteAbelianGroup,
    right_source: FiniteAbelianGroup,
}

impl DirectSum {
    pub fn include_left(&self, x: &GroupElement) -> GroupElement {
        self.left[self.left_source.index_of(x)].clone()
    }

    pub fn include_right(&self, x: &GroupElement) -> GroupElement {
        self.right[self.right_source.index_of(x)].clone()
    }
}

/// An injective, `q`-preserving homomorphism between metric groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricEmbedding {
    pub source: MetricGroup,
    pub target: MetricGroup,
    /// Image of the i-th source element.
    pub map: Vec<GroupElement>,
}

impl MetricEmbedding {
    pub fn new(
        source: MetricGroup,
        target: MetricGroup,
        map: Vec<GroupElement>,
    ) -> Result<Self, MetricError> {
        let e = MetricEmbedding {
            source,
            target,
            map,
        };
        e.validate()?;
        Ok(e)
    }

    /// Embedding defined by generator images.
    pub fn from_generator_images(
        source: MetricGroup,
        target: MetricGroup,
        images: &[GroupElement],
    ) -> Result<Self, MetricError> {
        let gens = source.group().generators();
        if gens.len() != images.len() {
            return Err(MetricError::InvalidEmbedding(
                "wrong number of generator images".into(),
            ));
        }
        let map = source
            .group()
            .elements()
            .iter()
            .map(|x| {
                let mut acc = target.group().zero();
                for (i, coeff) in x.coords().iter().enumerate() {
                    let part = target.group().scalar_mul(*coeff as i64, &images[i]);
                    acc = target.group().add(&acc, &part);
                }
                acc
            })
            .collect();
        Self::new(source, target, map)
    }

    /// The identity embedding of a metric group into itself.
    pub fn identity(mg: &MetricGroup) -> Self {
        MetricEmbedding {
            source: mg.clone(),
            target: mg.clone(),
            map: mg.group().elements().to_vec(),
        }
    }

    fn validate(&self) -> Result<(), MetricError> {
        if self.map.len() != self.source.order() as usize {
            return Err(MetricError::InvalidEmbedding("map size mismatch".into()));
        }
        let elems = self.source.group().elements();
        // Homomorphism.
        for (i, x) in elems.iter().enumerate() {
            for y in elems {
                let lhs = self.apply(&self.source.group().add(x, y));
                let rhs = self
                    .target
                    .group()
                    .add(&self.map[i], &self.apply(y));
                if lhs != rhs {
                    return Err(MetricError::InvalidEmbedding(format!(
                        "not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        // Injectivity.
        let mut imgs = self.map.clone();
        imgs.sort();
        imgs.dedup();
        if imgs.len() != self.map.len() {
            return Err(MetricError::InvalidEmbedding("not injective".into()));
        }
        // q preserved.
        for (i, x) in elems.iter().enumerate() {
            if self.source.q(x) != self.target.q(&self.map[i]) {
                return Err(MetricError::InvalidEmbedding(format!(
                    "q not preserved at {x}"
                )));
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.map[self.source.group().index_of(x)].clone()
    }

    /// Image of the whole source as a subgroup of the target.
    pub fn image(&self) -> Subgroup {
        let mut v = self.map.clone();
        v.sort();
        Subgroup::from_sorted(v)
    }

    /// Composite `other . self`; `self: A -> B`, `other: B -> C`.
    pub fn compose(&self, other: &MetricEmbedding) -> Result<MetricEmbedding, MetricError> {
        if self.target != other.source {
            return Err(MetricError::InvalidEmbedding(
                "composition endpoints do not match".into(),
            ));
        }
        let map = self.map.iter().map(|x| other.apply(x)).collect();
        MetricEmbedding::new(self.source.clone(), other.target.clone(), map)
    }
}

impl fmt::Display for MetricGroup {
    /// Text format: a `factors` line, then one `element : q-value` line per
    /// element in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "factors")?;
        for n in self.group.invariant_factors() {
            write!(f, " {n}")?;
        }
        writeln!(f)?;
        for x in self.group.elements() {
            writeln!(f, "{} : {}", x, self.q(x))?;
        }
        Ok(())
    }
}
