//! Exact arithmetic in cyclotomic fields `Q(zeta_N)` and rationals mod 1.
//!
//! A [`CyclotomicNumber`] is stored as a sparse coefficient map on the
//! exponent basis `zeta_N^k`, canonicalised by reduction against the `N`-th
//! cyclotomic polynomial and by descent to the minimal conductor. Canonical
//! forms are unique, so derived `Eq`/`Ord` are the only equality and order
//! used anywhere in the crate. `zeta_N` always denotes `exp(2*pi*i/N)`.
//!
//! Conductors are capped (default 720, see [`crate::limits`]); exceeding the
//! cap is a hard error instead of a silent blowup.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::limits;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("conductor {0} exceeds the configured cap {1}")]
    ConductorOverflow(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as {1}")]
    Parse(String, &'static str),
}

/// A rational number reduced modulo 1, always in `[0, 1)`.
///
/// Houses values of quadratic forms, bicharacters and braiding phase
/// exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RationalMod1(Rational);

impl RationalMod1 {
    pub fn new(r: Rational) -> Self {
        RationalMod1(r - r.floor())
    }

    pub fn from_parts(numer: i64, denom: i64) -> Self {
        Self::new(Rational::new(numer, denom))
    }

    pub const ZERO: RationalMod1 = RationalMod1(Rational::new_raw(0, 1));
    pub const HALF: RationalMod1 = RationalMod1(Rational::new_raw(1, 2));

    pub fn value(&self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn add(&self, other: &RationalMod1) -> RationalMod1 {
        RationalMod1::new(self.0 + other.0)
    }

    pub fn sub(&self, other: &RationalMod1) -> RationalMod1 {
        RationalMod1::new(self.0 - other.0)
    }

    pub fn neg(&self) -> RationalMod1 {
        RationalMod1::new(-self.0)
    }

    /// Integer multiple `k * self` mod 1.
    pub fn times(&self, k: i64) -> RationalMod1 {
        RationalMod1::new(self.0 * Rational::from_integer(k))
    }
}

impl fmt::Display for RationalMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for RationalMod1 {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, ExactError> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| ExactError::Parse(s.into(), "rational p/q"))?;
        let n: i64 = n
            .trim()
            .parse()
            .map_err(|_| ExactError::Parse(s.into(), "rational p/q"))?;
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| ExactError::Parse(s.into(), "rational p/q"))?;
        if d == 0 {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RationalMod1::from_parts(n, d))
    }
}

/// Exact element of `Q(zeta_N)`: `sum c_k zeta_N^k` in canonical form.
///
/// Canonical means: exponents reduced against the `N`-th cyclotomic
/// polynomial (so all exponents are `< phi(N)`), zero coefficients dropped
/// (zero is the empty map), and the conductor minimal. The derived equality
/// of canonical forms is the only equality test.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclotomicNumber {
    conductor: u64,
    coeffs: BTreeMap<u64, Rational>,
}

// Cyclotomic polynomials Phi_N, cached as dense monic coefficient vectors.
static PHI_CACHE: Mutex<BTreeMap<u64, Vec<Rational>>> = Mutex::new(BTreeMap::new());

fn cyclotomic_polynomial(n: u64) -> Vec<Rational> {
    if let Some(p) = PHI_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![-Rational::one(), Rational::one()]
    } else {
        // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
        let mut num = vec![Rational::zero(); n as usize + 1];
        num[0] = -Rational::one();
        num[n as usize] = Rational::one();
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                num = poly_div_exact(&num, &phi_d);
            }
        }
        num
    };
    PHI_CACHE.lock().unwrap().insert(n, poly.clone());
    poly
}

/// Exact division of polynomials known to divide evenly. Divisor monic.
fn poly_div_exact(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let mut rem: Vec<Rational> = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c;
        for j in 0..=dd {
            let t = den[j] * c;
            rem[i - dd + j] -= t;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    while quot.len() > 1 && quot.last().unwrap().is_zero() {
        quot.pop();
    }
    quot
}

/// Remainder of a sparse exponent map modulo Phi_n; result has exponents
/// below phi(n).
fn reduce_mod_phi(n: u64, coeffs: &BTreeMap<u64, Rational>) -> BTreeMap<u64, Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let max_exp = coeffs.keys().next_back().copied().unwrap_or(0);
    let mut dense = vec![Rational::zero(); (max_exp as usize + 1).max(deg)];
    for (&k, &c) in coeffs {
        dense[(k % n) as usize] += c;
    }
    for i in (deg..dense.len()).rev() {
        let c = dense[i];
        if c.is_zero() {
            continue;
        }
        dense[i] = Rational::zero();
        for j in 0..deg {
            let t = phi[j] * c;
            dense[i - deg + j] -= t;
        }
    }
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u64, c))
        .collect()
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber {
            conductor: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        CyclotomicNumber {
            conductor: 1,
            coeffs,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    /// `exp(2*pi*i*r)` as an exact root of unity in canonical form.
    pub fn root_of_unity(r: RationalMod1) -> Result<Self, ExactError> {
        let q = r.denom() as u64;
        let p = r.numer() as u64;
        check_conductor(q)?;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(p % q, Rational::one());
        Ok(CyclotomicNumber {
            conductor: q,
            coeffs,
        }
        .normalized())
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &BTreeMap<u64, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.conductor == 1 {
            Some(
                self.coeffs
                    .get(&0)
                    .copied()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    /// The integer value if the element is a rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if r.denom().is_one() {
            Some(*r.numer())
        } else {
            None
        }
    }

    /// Re-canonicalise. Idempotent by construction; exposed for parsing and
    /// as the canonicalisation entry point.
    pub fn normalized(&self) -> Self {
        let reduced = reduce_mod_phi(self.conductor, &self.coeffs);
        let mut out = CyclotomicNumber {
            conductor: self.conductor,
            coeffs: reduced,
        };
        out.descend_conductor();
        out
    }

    /// Repeatedly rewrite over `Q(zeta_{N/p})` while the element lies there.
    fn descend_conductor(&mut self) {
        if self.coeffs.is_empty() {
            self.conductor = 1;
            return;
        }
        'outer: loop {
            if self.conductor == 1 {
                return;
            }
            for p in prime_factors(self.conductor) {
                let target = self.conductor / p;
                if self.fixed_by_subgroup(target) {
                    if let Some(down) = self.rewrite_over(target) {
                        self.conductor = target;
                        self.coeffs = down;
                        continue 'outer;
                    }
                }
            }
            return;
        }
    }

    /// True when every Galois automorphism fixing `Q(zeta_target)` fixes the
    /// element, i.e. the element lies in the subfield.
    fn fixed_by_subgroup(&self, target: u64) -> bool {
        let n = self.conductor;
        for k in 1..n {
            if k.gcd(&n) == 1 && k % target == 1 && k != 1 {
                let image: BTreeMap<u64, Rational> = self
                    .coeffs
                    .iter()
                    .map(|(&e, &c)| ((e * k) % n, c))
                    .collect();
                if reduce_mod_phi(n, &image) != self.coeffs {
                    return false;
                }
            }
        }
        true
    }

    /// Solve for coefficients over the power basis of `Q(zeta_target)`
    /// embedded via `zeta_target = zeta_N^{N/target}`.
    fn rewrite_over(&self, target: u64) -> Option<BTreeMap<u64, Rational>> {
        let n = self.conductor;
        let step = n / target;
        let dim_big = euler_phi(n) as usize;
        let dim_small = euler_phi(target) as usize;
        // Column j = canonical form of zeta_N^{step*j}.
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(dim_small);
        for j in 0..dim_small as u64 {
            let mut m = BTreeMap::new();
            m.insert((step * j) % n, Rational::one());
            let red = reduce_mod_phi(n, &m);
            let mut col = vec![Rational::zero(); dim_big];
            for (e, c) in red {
                col[e as usize] = c;
            }
            cols.push(col);
        }
        let mut rhs = vec![Rational::zero(); dim_big];
        for (&e, &c) in &self.coeffs {
            rhs[e as usize] = c;
        }
        solve_linear(&cols, &rhs).map(|solution| {
            solution
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as u64, c))
                .collect()
        })
    }

    fn lift_to(&self, conductor: u64) -> BTreeMap<u64, Rational> {
        let factor = conductor / self.conductor;
        self.coeffs
            .iter()
            .map(|(&e, &c)| (e * factor, c))
            .collect()
    }

    pub fn add(&self, other: &CyclotomicNumber) -> Result<CyclotomicNumber, ExactError> {
        let n = self.conductor.lcm(&other.conductor);
        check_conductor(n)?;
        let mut coeffs = self.lift_to(n);
        for (e, c) in other.lift_to(n) {
            let entry = coeffs.entry(e).or_insert_with(Rational::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(CyclotomicNumber {
            conductor: n,
            coeffs,
        }
        .normalized())
    }

    pub fn sub(&self, other: &CyclotomicNumber) -> Result<CyclotomicNumber, ExactError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &CyclotomicNumber) -> Result<CyclotomicNumber, ExactError> {
        let n = self.conductor.lcm(&other.conductor);
        check_conductor(n)?;
        let a = self.lift_to(n);
        let b = other.lift_to(n);
        let mut coeffs: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&ea, &ca) in &a {
            for (&eb, &cb) in &b {
                let e = (ea + eb) % n;
                let entry = coeffs.entry(e).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(CyclotomicNumber {
            conductor: n,
            coeffs,
        }
        .normalized())
    }

    pub fn scale(&self, r: Rational) -> CyclotomicNumber {
        if r.is_zero() {
            return CyclotomicNumber::zero();
        }
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, c * r)).collect(),
        }
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> CyclotomicNumber {
        let n = self.conductor;
        let coeffs: BTreeMap<u64, Rational> = self
            .coeffs
            .iter()
            .map(|(&e, &c)| (if e == 0 { 0 } else { n - e }, c))
            .collect();
        CyclotomicNumber {
            conductor: n,
            coeffs,
        }
        .normalized()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x]` modulo the (irreducible) cyclotomic polynomial.
    pub fn recip(&self) -> Result<CyclotomicNumber, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CyclotomicNumber::from_rational(r.recip()));
        }
        let n = self.conductor;
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut a = vec![Rational::zero(); deg];
        for (&e, &c) in &self.coeffs {
            a[e as usize] = c;
        }
        // Bezout: u*a + v*phi = 1, so u is the inverse mod phi.
        let u = poly_bezout_inverse(&a, &phi);
        let coeffs: BTreeMap<u64, Rational> = u
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, c))
            .collect();
        Ok(CyclotomicNumber {
            conductor: n,
            coeffs,
        }
        .normalized())
    }

    pub fn div(&self, other: &CyclotomicNumber) -> Result<CyclotomicNumber, ExactError> {
        self.mul(&other.recip()?)
    }

    pub fn pow(&self, mut k: u64) -> Result<CyclotomicNumber, ExactError> {
        let mut base = self.clone();
        let mut acc = CyclotomicNumber::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact positive square root of a nonnegative integer, expressed in a
    /// cyclotomic field via quadratic Gauss sums.
    pub fn sqrt_integer(n: u64) -> Result<CyclotomicNumber, ExactError> {
        if n == 0 {
            return Ok(CyclotomicNumber::zero());
        }
        let mut square_part: u64 = 1;
        let mut squarefree: Vec<u64> = Vec::new();
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                square_part *= p.pow(e / 2);
                if e % 2 == 1 {
                    squarefree.push(p);
                }
            }
            p += 1;
        }
        if m > 1 {
            squarefree.push(m);
        }
        let mut acc = CyclotomicNumber::from_integer(square_part as i64);
        for p in squarefree {
            acc = acc.mul(&sqrt_prime(p)?)?;
        }
        Ok(acc)
    }

    /// Numeric evaluation as `(re, im)`. Diagnostic only: every contract in
    /// this crate is decided by exact canonical forms.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (&e, &c) in &self.coeffs {
            let angle = 2.0 * std::f64::consts::PI * (e as f64) / n;
            let cf = (*c.numer() as f64) / (*c.denom() as f64);
            re += cf * angle.cos();
            im += cf * angle.sin();
        }
        (re, im)
    }
}

fn check_conductor(n: u64) -> Result<(), ExactError> {
    let cap = limits::max_conductor();
    if n > cap {
        Err(ExactError::ConductorOverflow(n, cap))
    } else {
        Ok(())
    }
}

/// `sqrt(p)` for a prime, from the quadratic Gauss sum
/// `g = sum_k legendre(k, p) zeta_p^k` (`g = sqrt(p)` for `p = 1 mod 4`,
/// `g = i sqrt(p)` for `p = 3 mod 4`, and `sqrt(2) = zeta_8 + zeta_8^-1`).
fn sqrt_prime(p: u64) -> Result<CyclotomicNumber, ExactError> {
    if p == 2 {
        check_conductor(8)?;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(1, Rational::one());
        coeffs.insert(7, Rational::one());
        return Ok(CyclotomicNumber {
            conductor: 8,
            coeffs,
        }
        .normalized());
    }
    check_conductor(if p % 4 == 1 { p } else { 4 * p })?;
    let mut coeffs = BTreeMap::new();
    for k in 1..p {
        let sym = legendre(k, p);
        if sym != 0 {
            coeffs.insert(k, Rational::from_integer(sym));
        }
    }
    let g = CyclotomicNumber {
        conductor: p,
        coeffs,
    }
    .normalized();
    if p % 4 == 1 {
        Ok(g)
    } else {
        // g = i*sqrt(p): multiply by -i = zeta_4^3.
        let minus_i = CyclotomicNumber::root_of_unity(RationalMod1::from_parts(3, 4))?;
        g.mul(&minus_i)
    }
}

fn legendre(mut a: u64, p: u64) -> i64 {
    a %= p;
    if a == 0 {
        return 0;
    }
    // Euler's criterion by fast exponentiation mod p.
    let mut result: u64 = 1;
    let mut base = a % p;
    let mut exp = (p - 1) / 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// Inverse of `a` modulo the irreducible monic `m` in `Q[x]`.
fn poly_bezout_inverse(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    // Extended Euclid on (m, a); gcd is a nonzero constant.
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = trim(a.to_vec());
    let mut s0: Vec<Rational> = vec![Rational::zero()];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while poly_deg(&r1) > 0 {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let c = r1[0];
    debug_assert!(!c.is_zero());
    s1.iter().map(|x| *x / c).collect()
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn poly_deg(p: &[Rational]) -> usize {
    p.len() - 1
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    let dd = poly_deg(den);
    let lead = den[dd];
    if poly_deg(&rem) < dd {
        return (vec![Rational::zero()], trim(rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i] / lead;
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c;
        for j in 0..=dd {
            let t = den[j] * c;
            rem[i - dd + j] -= t;
        }
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Solve `cols * x = rhs` exactly; `cols` are the matrix columns.
fn solve_linear(cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let ncols = cols.len();
    // Augmented row-major matrix.
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i]).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..=ncols {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for row in m.iter().skip(r) {
        if row[..ncols].iter().all(|v| v.is_zero()) && !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (k, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[k][ncols];
    }
    // Verify (free variables set to zero must still satisfy the system).
    for i in 0..rows {
        let mut acc = Rational::zero();
        for (j, col) in cols.iter().enumerate() {
            acc += col[i] * x[j];
        }
        if acc != rhs[i] {
            return None;
        }
    }
    Some(x)
}

impl fmt::Display for CyclotomicNumber {
    /// `[N; (k,p/q), (k,p/q), ...]` with exponents ascending; zero is
    /// `[1;]`. Round-trips bit-exactly through the `FromStr` parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.conductor)?;
        let mut first = true;
        for (e, c) in &self.coeffs {
            if first {
                write!(f, " ")?;
                first = false;
            } else {
                write!(f, ", ")?;
            }
            write!(f, "({},{}/{})", e, c.numer(), c.denom())?;
        }
        write!(f, "]")
    }
}

impl FromStr for CyclotomicNumber {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, ExactError> {
        let bad = || ExactError::Parse(s.into(), "cyclotomic [N; (k,p/q), ...]");
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (nstr, rest) = inner.split_once(';').ok_or_else(bad)?;
        let conductor: u64 = nstr.trim().parse().map_err(|_| bad())?;
        if conductor == 0 {
            return Err(bad());
        }
        check_conductor(conductor)?;
        let mut coeffs = BTreeMap::new();
        for part in rest.split(',').collect::<Vec<_>>().chunks(2) {
            let joined = part.join(",");
            let t = joined.trim();
            if t.is_empty() {
                continue;
            }
            let t = t
                .strip_prefix('(')
                .and_then(|u| u.strip_suffix(')'))
                .ok_or_else(bad)?;
            let (estr, cstr) = t.split_once(',').ok_or_else(bad)?;
            let e: u64 = estr.trim().parse().map_err(|_| bad())?;
            let (p, q) = cstr.split_once('/').ok_or_else(bad)?;
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(ExactError::DivisionByZero);
            }
            coeffs.insert(e % conductor, Rational::new(p, q));
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(CyclotomicNumber { conductor, coeffs }.normalized())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u64, k: u64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(RationalMod1::from_parts(k as i64, n as i64)).unwrap()
    }

    fn assert_close(x: &CyclotomicNumber, re: f64, im: f64) {
        let (r, i) = x.approx();
        assert!(
            (r - re).abs() < 1e-12 && (i - im).abs() < 1e-12,
            "{x} evaluates to ({r}, {i}), expected ({re}, {im})"
        );
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = zeta(4, 1);
        assert_eq!(i.mul(&i).unwrap(), CyclotomicNumber::from_integer(-1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let sum = CyclotomicNumber::one()
            .add(&zeta(3, 1))
            .unwrap()
            .add(&zeta(3, 2))
            .unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn zeta8_squared_reduces_conductor() {
        // Oracle: numeric evaluation of both sides to 1e-12.
        let prod = zeta(8, 1).mul(&zeta(8, 1)).unwrap();
        let (re, im) = zeta(8, 1).approx();
        assert_close(&prod, re * re - im * im, 2.0 * re * im);
        assert_eq!(prod, zeta(4, 1));
        assert_eq!(prod.conductor(), 4);
    }

    #[test]
    fn root_of_unity_basics() {
        assert_eq!(
            CyclotomicNumber::root_of_unity(RationalMod1::ZERO).unwrap(),
            CyclotomicNumber::one()
        );
        assert_eq!(
            CyclotomicNumber::root_of_unity(RationalMod1::HALF).unwrap(),
            CyclotomicNumber::from_integer(-1)
        );
        let e8 = CyclotomicNumber::root_of_unity(RationalMod1::from_parts(1, 8)).unwrap();
        assert_eq!(e8.conductor(), 8);
        assert_eq!(e8.coefficients().len(), 1);
    }

    #[test]
    fn sqrt2_squares_to_two() {
        // (zeta_8 + zeta_8^-1)^2 = 2, numeric oracle for the value itself.
        let s = zeta(8, 1).add(&zeta(8, 7)).unwrap();
        assert_close(&s, std::f64::consts::SQRT_2, 0.0);
        assert_eq!(s.mul(&s).unwrap(), CyclotomicNumber::from_integer(2));
    }

    #[test]
    fn conj_of_zeta3() {
        assert_eq!(zeta(3, 1).conj(), zeta(3, 2));
    }

    #[test]
    fn additive_identity() {
        let x = zeta(12, 5).add(&CyclotomicNumber::from_rational(Rational::new(3, 7)))
            .unwrap();
        assert_eq!(x.add(&CyclotomicNumber::zero()).unwrap(), x);
    }

    #[test]
    fn normalization_idempotent() {
        let x = zeta(8, 3).add(&zeta(12, 7)).unwrap();
        assert_eq!(x.normalized(), x);
        assert_eq!(x.normalized().normalized(), x);
    }

    #[test]
    fn recip_and_division() {
        let x = zeta(8, 1).add(&CyclotomicNumber::from_integer(2)).unwrap();
        let inv = x.recip().unwrap();
        assert_eq!(x.mul(&inv).unwrap(), CyclotomicNumber::one());
        assert_eq!(
            CyclotomicNumber::zero().recip(),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn sqrt_integer_values() {
        for n in [1u64, 2, 3, 4, 5, 6, 8, 9, 12, 16, 75] {
            let s = CyclotomicNumber::sqrt_integer(n).unwrap();
            assert_eq!(
                s.mul(&s).unwrap(),
                CyclotomicNumber::from_integer(n as i64),
                "sqrt({n}) squared"
            );
            assert_close(&s, (n as f64).sqrt(), 0.0);
        }
    }

    #[test]
    fn conductor_cap_is_enforced() {
        let r = CyclotomicNumber::root_of_unity(RationalMod1::from_parts(1, 1021));
        assert!(matches!(r, Err(ExactError::ConductorOverflow(1021, _))));
    }

    #[test]
    fn display_round_trip() {
        let samples = [
            CyclotomicNumber::zero(),
            CyclotomicNumber::from_rational(Rational::new(-7, 3)),
            zeta(8, 1).add(&zeta(12, 7)).unwrap(),
            CyclotomicNumber::sqrt_integer(2).unwrap(),
        ];
        for x in &samples {
            let s = x.to_string();
            let back: CyclotomicNumber = s.parse().unwrap();
            assert_eq!(&back, x, "round trip through {s:?}");
            assert_eq!(back.to_string(), s);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyc() -> impl Strategy<Value = CyclotomicNumber> {
            // Conductors divide 24 so lcm over several drawn values stays
            // under the cap.
            (
                prop::collection::vec((0u64..24, -4i64..=4, 1i64..=4), 0..4),
                prop::sample::select(vec![1u64, 2, 3, 4, 6, 8, 12, 24]),
            )
                .prop_map(|(terms, n)| {
                    let mut acc = CyclotomicNumber::zero();
                    for (e, p, q) in terms {
                        let term = CyclotomicNumber::root_of_unity(RationalMod1::from_parts(
                            e as i64, n as i64,
                        ))
                        .unwrap()
                        .scale(Rational::new(p, q));
                        acc = acc.add(&term).unwrap();
                    }
                    acc
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn add_commutes(a in arb_cyc(), b in arb_cyc()) {
                prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            }

            #[test]
            fn mul_commutes_and_associates(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
            }

            #[test]
            fn conj_is_involutive_automorphism(a in arb_cyc(), b in arb_cyc()) {
                prop_assert_eq!(a.conj().conj(), a.clone());
                prop_assert_eq!(
                    a.mul(&b).unwrap().conj(),
                    a.conj().mul(&b.conj()).unwrap()
                );
                prop_assert_eq!(
                    a.add(&b).unwrap().conj(),
                    a.conj().add(&b.conj()).unwrap()
                );
            }

            #[test]
            fn roots_of_unity_multiply_additively(
                p1 in 0i64..24, q1 in 1i64..=24, p2 in 0i64..24, q2 in 1i64..=24
            ) {
                let a = RationalMod1::from_parts(p1, q1);
                let b = RationalMod1::from_parts(p2, q2);
                let lhs = CyclotomicNumber::root_of_unity(a).unwrap()
                    .mul(&CyclotomicNumber::root_of_unity(b).unwrap()).unwrap();
                let rhs = CyclotomicNumber::root_of_unity(a.add(&b)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn canonicalization_is_confluent(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
                // Two different association orders must produce identical
                // canonical coefficient maps.
                let left = a.add(&b).unwrap().add(&c).unwrap();
                let right = a.add(&b.add(&c).unwrap()).unwrap();
                prop_assert_eq!(left.conductor(), right.conductor());
                prop_assert_eq!(left.coefficients(), right.coefficients());
            }

            #[test]
            fn distributivity(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
