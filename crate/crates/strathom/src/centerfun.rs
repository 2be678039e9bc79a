//! Centers over a base and their functoriality, at the skeletal level.
//!
//! A pointed fusion category over the base is a carrier group (trivial
//! associator) together with central lift data `(t, chi)` making the base
//! embed into the pointed double `(G x G^, q(g, chi) = chi(g))`. The center
//! over the base is the orthogonal complement of that image in the double,
//! which carries the base again: a braided module. Monoidality of the
//! center, the Morita criterion and the cylinder identity are verified as
//! isometries with base-compatible witnesses and as exact rank equalities.
//!
//! Module categories over the carrier are pairs `(H, psi)` of a subgroup
//! with an alternating bicharacter; functor-category ranks come from the
//! coset/stabilizer formula, with `psi` entering through the radical of the
//! difference form on the intersection.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::braidedmod::{BraidedEModule, BraidedModError};
use crate::exactnum::RationalMod1;
use crate::metricgrp::{
    canonicalize_abstract, FiniteAbelianGroup, GroupElement, Isometry, MetricEmbedding,
    MetricError, MetricGroup, Subgroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CenterError {
    #[error("not a category over the base: {0}")]
    NotOverBase(String),
    #[error("bases do not match")]
    BaseMismatch,
    #[error("invalid module category: {0}")]
    InvalidModule(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Braided(#[from] BraidedModError),
}

/// The pointed double `(G x G^, q(g, chi) = chi(g))` with its two factor
/// inclusions kept around for pairing and unpairing.
#[derive(Debug, Clone)]
pub struct PointedDouble {
    pub center: MetricGroup,
    carrier: FiniteAbelianGroup,
    left: Vec<GroupElement>,
    right: Vec<GroupElement>,
    unpair_table: BTreeMap<GroupElement, (GroupElement, GroupElement)>,
}

impl PointedDouble {
    pub fn new(g: &FiniteAbelianGroup) -> Self {
        let (double, left, right) = g.product(g);
        let mut q = vec![RationalMod1::ZERO; double.order() as usize];
        let mut unpair_table = BTreeMap::new();
        for (i, x) in g.elements().iter().enumerate() {
            for (j, chi) in g.elements().iter().enumerate() {
                let spot = double.add(&left[i], &right[j]);
                q[double.index_of(&spot)] = g.character_value(chi, x);
                unpair_table.insert(spot, (x.clone(), chi.clone()));
            }
        }
        let center = MetricGroup::new(double, q).expect("the pointed double is a metric group");
        PointedDouble {
            center,
            carrier: g.clone(),
            left,
            right,
            unpair_table,
        }
    }

    /// Image of the pair `(g, chi)` inside the double.
    pub fn pair(&self, g: &GroupElement, chi: &GroupElement) -> GroupElement {
        self.center.group().add(
            &self.left[self.carrier.index_of(g)],
            &self.right[self.carrier.index_of(chi)],
        )
    }

    /// Decompose a double element into its `(g, chi)` parts.
    pub fn unpair(&self, x: &GroupElement) -> (GroupElement, GroupElement) {
        self.unpair_table[x].clone()
    }
}

/// The Drinfeld center of a pointed fusion category with trivial
/// associator: the hyperbolic metric group on `G x G^`.
pub fn drinfeld_center_pointed(g: &FiniteAbelianGroup) -> MetricGroup {
    PointedDouble::new(g).center
}

/// A pointed fusion category over a symmetric base: carrier group plus the
/// central lift `e -> (t(e), chi(e))` into the double.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionOverE {
    pub carrier: FiniteAbelianGroup,
    pub base: MetricGroup,
    /// `t` tabulated on base elements.
    pub t: Vec<GroupElement>,
    /// Character part of the lift, tabulated on base elements; each entry
    /// is a character tuple of the carrier.
    pub chi: Vec<GroupElement>,
}

impl FusionOverE {
    pub fn new(
        carrier: FiniteAbelianGroup,
        base: MetricGroup,
        t: Vec<GroupElement>,
        chi: Vec<GroupElement>,
    ) -> Result<Self, CenterError> {
        if !base.is_symmetric() {
            return Err(CenterError::NotOverBase("base is not symmetric".into()));
        }
        let n = base.order() as usize;
        if t.len() != n || chi.len() != n {
            return Err(CenterError::NotOverBase(
                "lift tables have wrong size".into(),
            ));
        }
        let cat = FusionOverE {
            carrier,
            base,
            t,
            chi,
        };
        // Full faithfulness: t injective.
        let mut imgs = cat.t.clone();
        imgs.sort();
        imgs.dedup();
        if imgs.len() != cat.t.len() {
            return Err(CenterError::NotOverBase(
                "central functor is not fully faithful".into(),
            ));
        }
        // The lift must be a metric embedding into the double; this checks
        // the homomorphism property, injectivity and q-compatibility.
        cat.central_embedding()?;
        Ok(cat)
    }

    /// Build from generator images.
    pub fn from_generators(
        carrier: FiniteAbelianGroup,
        base: MetricGroup,
        t_gens: &[GroupElement],
        chi_gens: &[GroupElement],
    ) -> Result<Self, CenterError> {
        let gens = base.group().generators();
        if t_gens.len() != gens.len() || chi_gens.len() != gens.len() {
            return Err(CenterError::NotOverBase(
                "wrong number of generator images".into(),
            ));
        }
        let expand = |images: &[GroupElement]| -> Vec<GroupElement> {
            base.group()
                .elements()
                .iter()
                .map(|e| {
                    let mut acc = carrier.zero();
                    for (i, &c) in e.coords().iter().enumerate() {
                        acc = carrier.add(&acc, &carrier.scalar_mul(c as i64, &images[i]));
                    }
                    acc
                })
                .collect()
        };
        let t = expand(t_gens);
        let chi = expand(chi_gens);
        FusionOverE::new(carrier.clone(), base, t, chi)
    }

    pub fn t_of(&self, e: &GroupElement) -> GroupElement {
        self.t[self.base.group().index_of(e)].clone()
    }

    pub fn chi_of(&self, e: &GroupElement) -> GroupElement {
        self.chi[self.base.group().index_of(e)].clone()
    }

    /// The braided lift `E -> Z(Vec_G)` as a metric embedding.
    pub fn central_embedding(&self) -> Result<(PointedDouble, MetricEmbedding), CenterError> {
        let double = PointedDouble::new(&self.carrier);
        let map: Vec<GroupElement> = self
            .base
            .group()
            .elements()
            .iter()
            .map(|e| double.pair(&self.t_of(e), &self.chi_of(e)))
            .collect();
        let embed = MetricEmbedding::new(self.base.clone(), double.center.clone(), map)
            .map_err(|e| CenterError::NotOverBase(e.to_string()))?;
        Ok((double, embed))
    }
}

/// A center over the base: a braided module together with the `(g, chi)`
/// coordinates of each carrier element inside the double.
#[derive(Debug, Clone)]
pub struct CenterOverE {
    pub module: BraidedEModule,
    pub pairs: Vec<(GroupElement, GroupElement)>,
}

/// Centralizer of the embedded base inside the pointed double, with the
/// induced base embedding. The Mueger center of the result must be exactly
/// the base image.
pub fn center_over_e(cat: &FusionOverE) -> Result<CenterOverE, CenterError> {
    let (double, embed) = cat.central_embedding()?;
    let complement = double.center.orthogonal_complement(&embed.image());
    let (restricted, rename) = double.center.restrict(&complement);
    let base_images: Vec<GroupElement> = cat
        .base
        .group()
        .generators()
        .iter()
        .map(|e| rename[&embed.apply(e)].clone())
        .collect();
    let base_embed =
        MetricEmbedding::from_generator_images(cat.base.clone(), restricted.clone(), &base_images)?;
    // Nondegeneracy over the base.
    if restricted.radical() != base_embed.image() {
        return Err(CenterError::NotOverBase(
            "center over the base has Mueger center different from the base".into(),
        ));
    }
    // Record the double coordinates of each canonical carrier element.
    let mut unrename: BTreeMap<&GroupElement, &GroupElement> = BTreeMap::new();
    for (orig, canon) in &rename {
        unrename.insert(canon, orig);
    }
    let pairs: Vec<(GroupElement, GroupElement)> = restricted
        .group()
        .elements()
        .iter()
        .map(|x| double.unpair(unrename[x]))
        .collect();
    let module = BraidedEModule::double_braiding(cat.base.clone(), restricted, base_embed)?;
    Ok(CenterOverE { module, pairs })
}

/// The balanced product of two pointed categories over the same base:
/// carrier `(G_C x G_D) / {(t_C e, -t_D e)}` with the induced lift.
pub fn relative_product(c: &FusionOverE, d: &FusionOverE) -> Result<FusionOverE, CenterError> {
    if c.base != d.base {
        return Err(CenterError::BaseMismatch);
    }
    let pairs: Vec<(GroupElement, GroupElement)> = c
        .carrier
        .elements()
        .iter()
        .flat_map(|x| {
            d.carrier
                .elements()
                .iter()
                .map(move |y| (x.clone(), y.clone()))
        })
        .collect();
    let add = |a: &(GroupElement, GroupElement), b: &(GroupElement, GroupElement)| {
        (c.carrier.add(&a.0, &b.0), d.carrier.add(&a.1, &b.1))
    };
    let mut n_set: std::collections::BTreeSet<(GroupElement, GroupElement)> = Default::default();
    for e in c.base.group().elements() {
        n_set.insert((c.t_of(e), d.carrier.neg(&d.t_of(e))));
    }
    // Cosets named by least member.
    let mut coset_rep: BTreeMap<(GroupElement, GroupElement), (GroupElement, GroupElement)> =
        BTreeMap::new();
    let mut reps = Vec::new();
    for p in &pairs {
        if coset_rep.contains_key(p) {
            continue;
        }
        let mut coset: Vec<(GroupElement, GroupElement)> =
            n_set.iter().map(|k| add(p, k)).collect();
        coset.sort();
        let rep = coset[0].clone();
        for m in coset {
            coset_rep.insert(m, rep.clone());
        }
        reps.push(rep);
    }
    reps.sort();
    let zero = coset_rep[&(c.carrier.zero(), d.carrier.zero())].clone();
    let (quotient, iso) = canonicalize_abstract(&reps, |a, b| coset_rep[&add(a, b)].clone(), zero);
    // Inverse of the canonicalisation on representatives.
    let mut rep_of: BTreeMap<GroupElement, &(GroupElement, GroupElement)> = BTreeMap::new();
    for r in &reps {
        rep_of.insert(iso[r].clone(), r);
    }
    // Induced t.
    let t: Vec<GroupElement> = c
        .base
        .group()
        .elements()
        .iter()
        .map(|e| iso[&coset_rep[&(c.t_of(e), d.carrier.zero())]].clone())
        .collect();
    // Induced chi: the pair of characters must be constant along the
    // identified directions, then re-expressed as a character tuple of the
    // quotient.
    let mut chi = Vec::with_capacity(c.base.order() as usize);
    for e in c.base.group().elements() {
        let chi_c = c.chi_of(e);
        let chi_d = d.chi_of(e);
        for e2 in c.base.group().elements() {
            let lhs = c.carrier.character_value(&chi_c, &c.t_of(e2));
            let rhs = d.carrier.character_value(&chi_d, &d.t_of(e2));
            if lhs != rhs {
                return Err(CenterError::NotOverBase(format!(
                    "central characters do not descend to the balanced product at ({e}, {e2})"
                )));
            }
        }
        let mut tuple = Vec::new();
        for (k, gen) in quotient.generators().iter().enumerate() {
            let m = quotient.invariant_factors()[k] as i64;
            let rep = rep_of[gen];
            let v = c
                .carrier
                .character_value(&chi_c, &rep.0)
                .add(&d.carrier.character_value(&chi_d, &rep.1));
            // A character of the quotient takes values in (1/m) Z on an
            // order-m generator.
            if !v.times(m).is_zero() {
                return Err(CenterError::NotOverBase(
                    "descended character is not a character of the quotient".into(),
                ));
            }
            let j = (v.value() * crate::exactnum::Rational::from_integer(m)).to_integer();
            tuple.push(j.rem_euclid(m) as u64);
        }
        chi.push(GroupElement::new(tuple));
    }
    FusionOverE::new(quotient, c.base.clone(), t, chi)
}

/// Outcome of the center-monoidality check.
#[derive(Debug, Clone)]
pub struct CenterMonoidalReport {
    pub left_order: u64,
    pub right_order: u64,
    pub witness: Option<Isometry>,
}

impl CenterMonoidalReport {
    pub fn passed(&self) -> bool {
        self.witness.is_some()
    }
}

/// Compare `Z(C,E) boxdot_E Z(D,E)` with `Z(C boxtimes_E D, E)` through a
/// base-compatible isometry.
pub fn check_center_monoidal(
    c: &FusionOverE,
    d: &FusionOverE,
) -> Result<CenterMonoidalReport, CenterError> {
    if c.base != d.base {
        return Err(CenterError::BaseMismatch);
    }
    let zc = center_over_e(c)?;
    let zd = center_over_e(d)?;
    let left = zc.module.relative_tensor(&zd.module)?;
    let product = relative_product(c, d)?;
    let right = center_over_e(&product)?;
    let pins: Vec<(GroupElement, GroupElement)> = c
        .base
        .group()
        .elements()
        .iter()
        .map(|e| (left.embed().apply(e), right.module.embed().apply(e)))
        .collect();
    let witness = left
        .carrier()
        .isometry_constrained(right.module.carrier(), &pins);
    Ok(CenterMonoidalReport {
        left_order: left.carrier().order(),
        right_order: right.module.carrier().order(),
        witness,
    })
}

/// Morita criterion: equivalent centers over the base, base-compatibly.
pub fn morita_test(c: &FusionOverE, d: &FusionOverE) -> Result<bool, CenterError> {
    if c.base != d.base {
        return Err(CenterError::BaseMismatch);
    }
    let zc = center_over_e(c)?;
    let zd = center_over_e(d)?;
    let pins: Vec<(GroupElement, GroupElement)> = c
        .base
        .group()
        .elements()
        .iter()
        .map(|e| (zc.module.embed().apply(e), zd.module.embed().apply(e)))
        .collect();
    Ok(zc
        .module
        .carrier()
        .isometry_constrained(zd.module.carrier(), &pins)
        .is_some())
}

/// A module category over the pointed carrier: a subgroup with an
/// alternating bicharacter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleCatOverPointed {
    pub subgroup: Subgroup,
    /// Sparse alternating bicharacter on the subgroup; missing pairs are 0.
    pub psi: BTreeMap<(GroupElement, GroupElement), RationalMod1>,
}

impl ModuleCatOverPointed {
    pub fn new(
        ambient: &FiniteAbelianGroup,
        subgroup: Subgroup,
        psi: BTreeMap<(GroupElement, GroupElement), RationalMod1>,
    ) -> Result<Self, CenterError> {
        if !subgroup.is_subgroup_of(ambient) {
            return Err(CenterError::InvalidModule("not a subgroup".into()));
        }
        let m = ModuleCatOverPointed { subgroup, psi };
        for h in m.subgroup.elements() {
            if !m.psi_of(h, h).is_zero() {
                return Err(CenterError::InvalidModule(format!(
                    "psi not alternating at {h}"
                )));
            }
            for k in m.subgroup.elements() {
                for l in m.subgroup.elements() {
                    let lhs = m.psi_of(&ambient.add(h, k), l);
                    let rhs = m.psi_of(h, l).add(&m.psi_of(k, l));
                    if lhs != rhs {
                        return Err(CenterError::InvalidModule(format!(
                            "psi not biadditive at ({h}, {k}, {l})"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The regular module: trivial stabilizer subgroup.
    pub fn regular(ambient: &FiniteAbelianGroup) -> Self {
        ModuleCatOverPointed {
            subgroup: Subgroup::from_sorted(vec![ambient.zero()]),
            psi: BTreeMap::new(),
        }
    }

    /// The rank-one module: the whole group as the stabilizer.
    pub fn trivial(ambient: &FiniteAbelianGroup) -> Self {
        ModuleCatOverPointed {
            subgroup: Subgroup::from_sorted(ambient.elements().to_vec()),
            psi: BTreeMap::new(),
        }
    }

    pub fn psi_of(&self, h: &GroupElement, k: &GroupElement) -> RationalMod1 {
        self.psi
            .get(&(h.clone(), k.clone()))
            .copied()
            .unwrap_or(RationalMod1::ZERO)
    }

    /// Rank of the module category itself.
    pub fn rank(&self, ambient: &FiniteAbelianGroup) -> u64 {
        ambient.order() / self.subgroup.order()
    }
}

/// Rank of the category of module functors between `(H, psi_M)` and
/// `(K, psi_N)` over the pointed carrier: `[G : H + K]` cosets, each
/// contributing the number of irreducibles of the twisted group algebra on
/// `H meet K`, i.e. the order of the radical of the difference form.
pub fn fun_cat_rank(
    cat: &FusionOverE,
    m: &ModuleCatOverPointed,
    n: &ModuleCatOverPointed,
) -> Result<u64, CenterError> {
    let g = &cat.carrier;
    let sum = g.generated_subgroup(
        &m.subgroup
            .elements()
            .iter()
            .chain(n.subgroup.elements())
            .cloned()
            .collect::<Vec<_>>(),
    );
    let inter: Vec<GroupElement> = m
        .subgroup
        .elements()
        .iter()
        .filter(|x| n.subgroup.contains(x))
        .cloned()
        .collect();
    let radical = inter
        .iter()
        .filter(|h| inter.iter().all(|k| m.psi_of(h, k).sub(&n.psi_of(h, k)).is_zero()))
        .count() as u64;
    Ok((g.order() / sum.order()) * radical)
}

/// Cylinder identity at rank level. The left side is computed from the
/// orbit/stabilizer data of the carrier and of its endofunctor category,
/// both as module categories over the center; the right from the base
/// action alone. The two formulas are independent.
#[derive(Debug, Clone)]
pub struct CylinderReport {
    pub lhs: u64,
    pub rhs: u64,
}

impl CylinderReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn verify_cylinder(
    cat: &FusionOverE,
    n: &ModuleCatOverPointed,
) -> Result<CylinderReport, CenterError> {
    let ce = center_over_e(cat)?;
    let a = ce.module.carrier();
    let g = &cat.carrier;
    let k = &n.subgroup;
    // The carrier as a module over its center: stabilizer = elements of the
    // center with trivial object part; orbits = cosets of the projection.
    let h1: Vec<GroupElement> = a
        .group()
        .elements()
        .iter()
        .enumerate()
        .filter(|(i, _)| ce.pairs[*i].0.is_zero())
        .map(|(_, x)| x.clone())
        .collect();
    let h1 = Subgroup::from_sorted(h1);
    let orbits_x1 = g.order() / (a.order() / h1.order());
    // The endofunctor category of N: points are (coset of K, character of
    // K); the stabilizer asks the object part to lie in K and the character
    // part to restrict trivially to K.
    let h2: Vec<GroupElement> = a
        .group()
        .elements()
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let (obj, chr) = &ce.pairs[*i];
            k.contains(obj)
                && k.elements()
                    .iter()
                    .all(|h| g.character_value(chr, h).is_zero())
        })
        .map(|(_, x)| x.clone())
        .collect();
    let h2 = Subgroup::from_sorted(h2);
    let x2_size = g.order(); // |G/K| * |K^|
    let orbits_x2 = x2_size / (a.order() / h2.order());
    let joined = a.group().generated_subgroup(
        &h1.elements()
            .iter()
            .chain(h2.elements())
            .cloned()
            .collect::<Vec<_>>(),
    );
    let meet = h1.elements().iter().filter(|x| h2.contains(x)).count() as u64;
    let lhs = orbits_x1 * orbits_x2 * (a.order() / joined.order()) * meet;
    // Right side: the base acts on the cosets G/K through t; stabilizer is
    // the preimage of K.
    let e_group = cat.base.group();
    let s: Vec<GroupElement> = e_group
        .elements()
        .iter()
        .filter(|e| k.contains(&cat.t_of(e)))
        .cloned()
        .collect();
    let s = Subgroup::from_sorted(s);
    let orbits_y = (g.order() / k.order()) / (e_group.order() / s.order());
    let rhs = orbits_y * orbits_y * (e_group.order() / s.order()) * s.order();
    Ok(CylinderReport { lhs, rhs })
}

/// Built-in pointed categories over a named base, with canonical central
/// lifts (least valid generator images in lexicographic order).
pub fn fusion_library(base: &MetricGroup) -> Vec<(String, FusionOverE)> {
    let carriers: Vec<(&str, FiniteAbelianGroup)> = vec![
        ("vec-z1", FiniteAbelianGroup::trivial()),
        ("vec-z2", FiniteAbelianGroup::cyclic(2)),
        ("vec-z3", FiniteAbelianGroup::cyclic(3)),
        ("vec-z4", FiniteAbelianGroup::cyclic(4)),
        ("vec-z2z2", FiniteAbelianGroup::new(vec![2, 2]).unwrap()),
    ];
    let mut out = Vec::new();
    for (name, carrier) in carriers {
        if let Some(cat) = canonical_lift(&carrier, base) {
            out.push((name.to_string(), cat));
        }
    }
    out
}

/// Look up one library entry.
pub fn fusion_cat(name: &str, base: &MetricGroup) -> Option<FusionOverE> {
    fusion_library(base)
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, c)| c)
}

/// First valid `(t, chi)` generator assignment in lexicographic order.
fn canonical_lift(carrier: &FiniteAbelianGroup, base: &MetricGroup) -> Option<FusionOverE> {
    fn search(
        carrier: &FiniteAbelianGroup,
        base: &MetricGroup,
        count: usize,
        t_images: &mut Vec<GroupElement>,
        chi_images: &mut Vec<GroupElement>,
    ) -> Option<FusionOverE> {
        if t_images.len() == count {
            return FusionOverE::from_generators(
                carrier.clone(),
                base.clone(),
                t_images,
                chi_images,
            )
            .ok();
        }
        for t in carrier.elements() {
            for chi in carrier.elements() {
                t_images.push(t.clone());
                chi_images.push(chi.clone());
                if let Some(found) = search(carrier, base, count, t_images, chi_images) {
                    return Some(found);
                }
                t_images.pop();
                chi_images.pop();
            }
        }
        None
    }
    let count = base.group().rank();
    search(carrier, base, count, &mut Vec::new(), &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricgrp::library;

    fn elem(coords: &[u64]) -> GroupElement {
        GroupElement::new(coords.to_vec())
    }

    #[test]
    fn drinfeld_center_examples() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        let dz2 = drinfeld_center_pointed(&z2);
        assert!(dz2.isometry(&library("toric-code").unwrap()).is_some());

        let trivial = drinfeld_center_pointed(&FiniteAbelianGroup::trivial());
        assert_eq!(trivial.order(), 1);

        let z4 = FiniteAbelianGroup::cyclic(4);
        let double = PointedDouble::new(&z4);
        assert_eq!(double.center.order(), 16);
        // q((1, chi_1)) = chi_1(1) = 1/4.
        let spot = double.pair(&elem(&[1]), &elem(&[1]));
        assert_eq!(double.center.q(&spot), RationalMod1::from_parts(1, 4));
        assert!(double.center.is_nondegenerate());
        // Vec_G sits inside as an isotropic Lagrangian {(g, 0)}.
        let lagr: Vec<GroupElement> = z4
            .elements()
            .iter()
            .map(|g| double.pair(g, &z4.zero()))
            .collect();
        let lagr = Subgroup::from_sorted(lagr);
        assert!(double.center.is_isotropic(&lagr));
        assert_eq!(double.center.orthogonal_complement(&lagr), lagr);
    }

    #[test]
    fn center_over_trivial_base_is_the_full_center() {
        let trivial = library("trivial").unwrap();
        let c = fusion_cat("vec-z2", &trivial).unwrap();
        let z = center_over_e(&c).unwrap();
        assert!(z
            .module
            .carrier()
            .isometry(&library("toric-code").unwrap())
            .is_some());
    }

    #[test]
    fn center_of_base_over_itself_is_the_base() {
        let base = library("rep-z2").unwrap();
        let c = fusion_cat("vec-z2", &base).unwrap();
        let z = center_over_e(&c).unwrap();
        assert_eq!(z.module.carrier().order(), 2);
        assert!(z.module.carrier().isometry(&base).is_some());
    }

    #[test]
    fn center_of_vec_z4_over_rep_z2() {
        let base = library("rep-z2").unwrap();
        let c = fusion_cat("vec-z4", &base).unwrap();
        assert_eq!(c.t_of(&elem(&[1])), elem(&[2]));
        let z = center_over_e(&c).unwrap();
        // Carrier order |G|^2 / |E|; base-orbit count |G|^2 / |E|^2.
        assert_eq!(z.module.carrier().order(), 8);
        assert_eq!(z.module.carrier().order() / z.module.base().order(), 4);
    }

    #[test]
    fn center_mueger_core_is_the_base_image() {
        for base_name in ["trivial", "rep-z2", "svec"] {
            let base = library(base_name).unwrap();
            for (name, cat) in fusion_library(&base) {
                let z = center_over_e(&cat).unwrap();
                let radical = z.module.carrier().radical();
                assert_eq!(radical, z.module.embed().image(), "{base_name}/{name}");
                assert_eq!(
                    z.module.carrier().order(),
                    cat.carrier.order() * cat.carrier.order() / base.order(),
                    "{base_name}/{name}: carrier order |G_C|^2/|G_E|"
                );
                assert_eq!(
                    z.module.carrier().order() / base.order(),
                    cat.carrier.order() * cat.carrier.order() / (base.order() * base.order()),
                    "{base_name}/{name}: orbit count |G_C|^2/|G_E|^2"
                );
            }
        }
    }

    #[test]
    fn center_monoidal_examples() {
        // C = D = E: both sides are the base itself.
        let base = library("rep-z2").unwrap();
        let e_cat = fusion_cat("vec-z2", &base).unwrap();
        let report = check_center_monoidal(&e_cat, &e_cat).unwrap();
        assert!(report.passed());
        assert_eq!(report.left_order, 2);
        assert_eq!(report.right_order, 2);

        // Over the trivial base both sides are toric x toric.
        let trivial = library("trivial").unwrap();
        let vz2 = fusion_cat("vec-z2", &trivial).unwrap();
        let report = check_center_monoidal(&vz2, &vz2).unwrap();
        assert!(report.passed());
        assert_eq!(report.left_order, 16);
    }

    #[test]
    fn center_monoidal_over_all_bases_and_pairs() {
        for base_name in ["trivial", "rep-z2", "svec"] {
            let base = library(base_name).unwrap();
            let cats = fusion_library(&base);
            for (na, a) in &cats {
                for (nb, b) in &cats {
                    let report = check_center_monoidal(a, b).unwrap();
                    assert!(
                        report.passed(),
                        "{base_name}: ({na}, {nb}) orders {} vs {}",
                        report.left_order,
                        report.right_order
                    );
                }
            }
        }
    }

    #[test]
    fn morita_examples() {
        let trivial = library("trivial").unwrap();
        let vz2 = fusion_cat("vec-z2", &trivial).unwrap();
        let vz3 = fusion_cat("vec-z3", &trivial).unwrap();
        let vz4 = fusion_cat("vec-z4", &trivial).unwrap();
        let vz22 = fusion_cat("vec-z2z2", &trivial).unwrap();
        assert!(morita_test(&vz2, &vz2).unwrap());
        assert!(!morita_test(&vz2, &vz3).unwrap(), "orders 4 vs 9");
        // The doubles of Z4 and Z2 x Z2 are non-isomorphic groups.
        assert!(!morita_test(&vz4, &vz22).unwrap());
        // Reflexivity across the library.
        for base_name in ["trivial", "rep-z2", "svec"] {
            let base = library(base_name).unwrap();
            for (name, cat) in fusion_library(&base) {
                assert!(morita_test(&cat, &cat).unwrap(), "{base_name}/{name}");
            }
        }
    }

    #[test]
    fn fun_cat_rank_examples() {
        let trivial = library("trivial").unwrap();
        let vz2 = fusion_cat("vec-z2", &trivial).unwrap();
        let regular = ModuleCatOverPointed::regular(&vz2.carrier);
        assert_eq!(fun_cat_rank(&vz2, &regular, &regular).unwrap(), 2);

        let vz4 = fusion_cat("vec-z4", &trivial).unwrap();
        let reg4 = ModuleCatOverPointed::regular(&vz4.carrier);
        assert_eq!(fun_cat_rank(&vz4, &reg4, &reg4).unwrap(), 4);

        // Rank-one module: Fun is the dual group algebra, rank |G| again.
        let triv4 = ModuleCatOverPointed::trivial(&vz4.carrier);
        assert_eq!(fun_cat_rank(&vz4, &triv4, &triv4).unwrap(), 4);
        // Mixed: rank 1.
        assert_eq!(fun_cat_rank(&vz4, &reg4, &triv4).unwrap(), 1);
        // Symmetry for trivial psi.
        assert_eq!(
            fun_cat_rank(&vz4, &triv4, &reg4).unwrap(),
            fun_cat_rank(&vz4, &reg4, &triv4).unwrap()
        );

        // Intermediate subgroup {0, 2} of Z4.
        let mid = ModuleCatOverPointed::new(
            &vz4.carrier,
            Subgroup::from_sorted(vec![elem(&[0]), elem(&[2])]),
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(fun_cat_rank(&vz4, &mid, &mid).unwrap(), 4);
        assert_eq!(fun_cat_rank(&vz4, &mid, &reg4).unwrap(), 2);
    }

    #[test]
    fn fun_cat_rank_with_nontrivial_psi() {
        // On (Z2)^2 the symplectic form has trivial radical: the twisted
        // algebra has a single irreducible.
        let trivial = library("trivial").unwrap();
        let v22 = fusion_cat("vec-z2z2", &trivial).unwrap();
        let g = v22.carrier.clone();
        let whole = Subgroup::from_sorted(g.elements().to_vec());
        let mut psi = BTreeMap::new();
        for x in g.elements() {
            for y in g.elements() {
                // psi((a,b),(c,d)) = (ad - bc)/2.
                let v = RationalMod1::from_parts(
                    (x.coords()[0] * y.coords()[1]) as i64
                        - (x.coords()[1] * y.coords()[0]) as i64,
                    2,
                );
                if !v.is_zero() {
                    psi.insert((x.clone(), y.clone()), v);
                }
            }
        }
        let twisted = ModuleCatOverPointed::new(&g, whole, psi).unwrap();
        assert_eq!(fun_cat_rank(&v22, &twisted, &twisted).unwrap(), 4);
        let plain = ModuleCatOverPointed::trivial(&g);
        // Difference form is the symplectic one: radical trivial, rank 1.
        assert_eq!(fun_cat_rank(&v22, &twisted, &plain).unwrap(), 1);
    }

    #[test]
    fn cylinder_identity_instances() {
        let trivial = library("trivial").unwrap();
        let repz2 = library("rep-z2").unwrap();

        let vz2 = fusion_cat("vec-z2", &trivial).unwrap();
        let r = verify_cylinder(&vz2, &ModuleCatOverPointed::regular(&vz2.carrier)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.lhs, 4);

        let vz4 = fusion_cat("vec-z4", &trivial).unwrap();
        let mid = ModuleCatOverPointed::new(
            &vz4.carrier,
            Subgroup::from_sorted(vec![elem(&[0]), elem(&[2])]),
            BTreeMap::new(),
        )
        .unwrap();
        let r = verify_cylinder(&vz4, &mid).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.lhs, 4);

        let vz4e = fusion_cat("vec-z4", &repz2).unwrap();
        let r = verify_cylinder(&vz4e, &ModuleCatOverPointed::regular(&vz4e.carrier)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.lhs, 8);

        // A few more spread over bases and modules.
        for base_name in ["trivial", "rep-z2", "svec"] {
            let base = library(base_name).unwrap();
            for (name, cat) in fusion_library(&base) {
                for n in [
                    ModuleCatOverPointed::regular(&cat.carrier),
                    ModuleCatOverPointed::trivial(&cat.carrier),
                ] {
                    let r = verify_cylinder(&cat, &n).unwrap();
                    assert!(r.passed(), "{base_name}/{name}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn library_lifts_are_canonical_and_valid() {
        let trivial = library("trivial").unwrap();
        assert_eq!(fusion_library(&trivial).len(), 5);
        let repz2 = library("rep-z2").unwrap();
        let names: Vec<String> = fusion_library(&repz2).into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["vec-z2", "vec-z4", "vec-z2z2"]);
        let svec = library("svec").unwrap();
        // Over sVec the character part of the lift is forced nontrivial.
        let c = fusion_cat("vec-z2", &svec).unwrap();
        assert_eq!(c.chi_of(&elem(&[1])), elem(&[1]));
    }
}
