//! Finite abelian groups in invariant-factor form, their elements,
//! subgroups, and canonicalisation of abstractly presented groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// An element as a tuple of residues, one per invariant factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z_{n_1} x ... x Z_{n_r}` with the divisibility chain `n_1 | ... | n_r`.
/// The trivial group has no factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
    elements: Vec<GroupElement>,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self, String> {
        for w in invariant_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(format!(
                    "invariant factors {invariant_factors:?} violate the divisibility chain"
                ));
            }
        }
        if invariant_factors.iter().any(|&n| n < 2) {
            return Err("invariant factors must be >= 2".into());
        }
        let mut elements = Vec::new();
        let mut cur = vec![0u64; invariant_factors.len()];
        loop {
            elements.push(GroupElement(cur.clone()));
            // Lexicographic successor.
            let mut i = invariant_factors.len();
            loop {
                if i == 0 {
                    return Ok(FiniteAbelianGroup {
                        invariant_factors,
                        elements,
                    });
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < invariant_factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new()).unwrap()
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 1 {
            Self::trivial()
        } else {
            Self::new(vec![n]).unwrap()
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.invariant_factors.len()])
    }

    /// All elements in lexicographic order. This order defines element
    /// indices throughout the crate.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, x: &GroupElement) -> usize {
        debug_assert_eq!(x.0.len(), self.invariant_factors.len());
        let mut idx = 0usize;
        for (c, n) in x.0.iter().zip(&self.invariant_factors) {
            debug_assert!(c < n);
            idx = idx * (*n as usize) + *c as usize;
        }
        idx
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.invariant_factors)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.invariant_factors)
                .map(|(a, n)| (n - a) % n)
                .collect(),
        )
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn scalar_mul(&self, k: i64, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.invariant_factors)
                .map(|(a, n)| {
                    let m = (k.rem_euclid(*n as i64)) as u64;
                    (a * m) % n
                })
                .collect(),
        )
    }

    pub fn order_of(&self, x: &GroupElement) -> u64 {
        x.0.iter()
            .zip(&self.invariant_factors)
            .map(|(a, n)| {
                if *a == 0 {
                    1
                } else {
                    n / gcd(*a, *n)
                }
            })
            .fold(1, lcm)
    }

    /// The exponent-`n_i` unit vectors; every element is the evident
    /// combination of these with its coordinates.
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.invariant_factors.len())
            .map(|i| {
                let mut v = vec![0; self.invariant_factors.len()];
                v[i] = 1;
                GroupElement(v)
            })
            .collect()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.invariant_factors.len()
            && x.0.iter().zip(&self.invariant_factors).all(|(a, n)| a < n)
    }

    /// Closure of a generating set.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> Subgroup {
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(self.zero());
        let mut frontier: Vec<GroupElement> = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Subgroup::from_sorted(seen.into_iter().collect())
    }

    /// Every subgroup, canonically sorted by (order, element list).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
        let trivial = self.generated_subgroup(&[]);
        found.insert(trivial.elements().to_vec());
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for x in self.elements() {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.elements().to_vec();
                gens.push(x.clone());
                let bigger = self.generated_subgroup(&gens);
                if found.insert(bigger.elements().to_vec()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found
            .into_iter()
            .map(Subgroup::from_sorted)
            .collect();
        subs.sort_by(|a, b| {
            (a.order(), a.elements()).cmp(&(b.order(), b.elements()))
        });
        subs
    }

    /// Product group in canonical invariant-factor form, with the images of
    /// the two factors' elements.
    pub fn product(&self, other: &FiniteAbelianGroup) -> (FiniteAbelianGroup, Vec<GroupElement>, Vec<GroupElement>) {
        // Abstract product canonicalised through the generic machinery;
        // orders stay desk-scale so the quadratic cost is irrelevant.
        let pairs: Vec<(GroupElement, GroupElement)> = self
            .elements()
            .iter()
            .flat_map(|x| other.elements().iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        let add = |a: &(GroupElement, GroupElement), b: &(GroupElement, GroupElement)| {
            (self.add(&a.0, &b.0), other.add(&a.1, &b.1))
        };
        let zero = (self.zero(), other.zero());
        let (group, iso) = canonicalize_abstract(&pairs, add, zero);
        let left = self
            .elements()
            .iter()
            .map(|x| iso[&(x.clone(), other.zero())].clone())
            .collect();
        let right = other
            .elements()
            .iter()
            .map(|y| iso[&(self.zero(), y.clone())].clone())
            .collect();
        (group, left, right)
    }

    /// The character group, with evaluation `chi(x)`. Characters are
    /// indexed by the same tuple space as elements: the tuple `(c_i)` is
    /// the character `x -> sum c_i x_i / n_i`.
    pub fn character_value(
        &self,
        chi: &GroupElement,
        x: &GroupElement,
    ) -> crate::exactnum::RationalMod1 {
        let mut acc = crate::exactnum::RationalMod1::ZERO;
        for ((c, a), n) in chi.0.iter().zip(&x.0).zip(&self.invariant_factors) {
            acc = acc.add(&crate::exactnum::RationalMod1::from_parts(
                (c * a) as i64,
                *n as i64,
            ));
        }
        acc
    }
}

/// Every abelian group of a given order, via partitions of the prime
/// exponents, in a canonical order.
pub fn abelian_groups_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
    if n == 1 {
        return vec![FiniteAbelianGroup::trivial()];
    }
    let mut facs: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            facs.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        facs.push((m, 1));
    }
    let per_prime: Vec<Vec<Vec<u32>>> = facs.iter().map(|&(_, e)| partitions(e)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; facs.len()];
    loop {
        // k-th largest invariant factor = product over primes of p^{e_k}
        // with each partition sorted descending.
        let depth = facs
            .iter()
            .enumerate()
            .map(|(i, _)| per_prime[i][choice[i]].len())
            .max()
            .unwrap();
        let mut factors: Vec<u64> = (0..depth)
            .map(|k| {
                facs.iter()
                    .enumerate()
                    .map(|(i, &(p, _))| {
                        per_prime[i][choice[i]]
                            .get(k)
                            .map_or(1, |&e| p.pow(e))
                    })
                    .product()
            })
            .collect();
        factors.reverse();
        out.push(FiniteAbelianGroup::new(factors).unwrap());
        // Next choice tuple.
        let mut i = facs.len();
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.invariant_factors().cmp(b.invariant_factors()));
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < per_prime[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Partitions of `e` as descending sequences.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for next in (1..=remaining.min(max)).rev() {
            prefix.push(next);
            go(remaining - next, next, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A subgroup, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn from_sorted(mut elements: Vec<GroupElement>) -> Self {
        elements.sort();
        elements.dedup();
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_subgroup_of(&self, g: &FiniteAbelianGroup) -> bool {
        self.elements.iter().all(|x| g.contains(x))
            && self
                .elements
                .iter()
                .all(|x| self.elements.iter().all(|y| self.contains(&g.add(x, y))))
            && self.contains(&g.zero())
    }
}

/// Canonicalise an abstractly presented finite abelian group: find the
/// invariant-factor form and an explicit isomorphism onto it.
///
/// Classic basis-lifting: take a least element of maximal order, recurse on
/// the quotient, lift the quotient generators adjusting so their order is
/// preserved.
pub fn canonicalize_abstract<T: Ord + Clone>(
    elements: &[T],
    add: impl Fn(&T, &T) -> T,
    zero: T,
) -> (FiniteAbelianGroup, BTreeMap<T, GroupElement>) {
    let add = &add as &dyn Fn(&T, &T) -> T;
    let gens = abstract_generators(elements, add, zero.clone());
    let factors: Vec<u64> = gens.iter().map(|(_, o)| *o).collect();
    let group = FiniteAbelianGroup::new(factors).expect("canonical factors form a chain");
    debug_assert_eq!(group.order() as usize, elements.len());
    // Tabulate sum_i a_i g_i over all coefficient tuples.
    let mut iso: BTreeMap<T, GroupElement> = BTreeMap::new();
    for tuple in group.elements() {
        let mut acc = zero.clone();
        for (coeff, (g, order)) in tuple.coords().iter().zip(&gens) {
            let mut c = *coeff % *order;
            let mut power = g.clone();
            // Repeated doubling is overkill at this scale.
            while c > 0 {
                acc = add(&acc, &power);
                c -= 1;
                power = g.clone();
            }
        }
        let prev = iso.insert(acc, tuple.clone());
        debug_assert!(prev.is_none(), "generator decomposition not free");
    }
    (group, iso)
}

/// Generators realising the invariant-factor decomposition, as
/// `(element, order)` pairs ordered by the ascending divisibility chain.
fn abstract_generators<T: Ord + Clone>(
    elements: &[T],
    add: &dyn Fn(&T, &T) -> T,
    zero: T,
) -> Vec<(T, u64)> {
    if elements.len() <= 1 {
        return Vec::new();
    }
    let order_of = |x: &T| -> u64 {
        let mut acc = x.clone();
        let mut n = 1u64;
        while acc != zero {
            acc = add(&acc, x);
            n += 1;
        }
        n
    };
    // Least element of maximal order.
    let mut best: Option<(&T, u64)> = None;
    for x in elements {
        let o = order_of(x);
        match &best {
            Some((bx, bo)) if *bo > o || (*bo == o && *bx <= x) => {}
            _ => best = Some((x, o)),
        }
    }
    let (g1, n1) = best.map(|(x, o)| (x.clone(), o)).unwrap();
    // Quotient by <g1>: name each coset by its least member.
    let mut cyclic = Vec::with_capacity(n1 as usize);
    let mut acc = zero.clone();
    for _ in 0..n1 {
        cyclic.push(acc.clone());
        acc = add(&acc, &g1);
    }
    cyclic.sort();
    let mut coset_rep: BTreeMap<T, T> = BTreeMap::new();
    let mut reps: Vec<T> = Vec::new();
    for x in elements {
        if coset_rep.contains_key(x) {
            continue;
        }
        let mut coset: Vec<T> = cyclic.iter().map(|c| add(x, c)).collect();
        coset.sort();
        let rep = coset[0].clone();
        for m in coset {
            coset_rep.insert(m, rep.clone());
        }
        reps.push(rep);
    }
    reps.sort();
    let qadd = |a: &T, b: &T| coset_rep[&add(a, b)].clone();
    let qzero = coset_rep[&zero].clone();
    let sub_gens = abstract_generators(&reps, &qadd, qzero);
    // Lift: if m*h = t*g1 in G with m the order of h's coset, then m | t and
    // h - (t/m)*g1 has exact order m.
    let mut lifted: Vec<(T, u64)> = Vec::new();
    for (hbar, m) in sub_gens {
        let h = hbar.clone();
        let mut mh = zero.clone();
        for _ in 0..m {
            mh = add(&mh, &h);
        }
        // Find t with mh = t*g1.
        let mut t = 0u64;
        let mut acc = zero.clone();
        while acc != mh {
            acc = add(&acc, &g1);
            t += 1;
            debug_assert!(t <= n1);
        }
        debug_assert_eq!(t % m, 0);
        let s = t / m;
        // h' = h - s*g1 = h + (n1 - s)*g1.
        let mut hprime = h;
        for _ in 0..(n1 - s) % n1 {
            hprime = add(&hprime, &g1);
        }
        debug_assert_eq!(order_of(&hprime), m);
        lifted.push((hprime, m));
    }
    lifted.push((g1, n1));
    lifted
}
