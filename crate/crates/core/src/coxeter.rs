//! Coxeter elements of `S̃_n` and the exact root-system arithmetic around them.
//!
//! A Coxeter element is recorded by which of the points `1..=n` sit on the
//! outer boundary of the annulus. Vectors in `V` are written in the simple-root
//! basis `α_1, …, α_n`; covectors in the fundamental-weight basis
//! `ρ_1, …, ρ_n`. The orbit vectors `e_j` are converted to roots through
//! [`weight_pairing`], which realizes the quotient by `e_1 + ⋯ + e_n`.
//!
//! ```
//! use affnc::coxeter::{rat, CoxeterElement};
//! let c = CoxeterElement::from_word(7, &[6, 5, 2, 1, 3, 4, 7]).unwrap();
//! assert_eq!(c.outer_points(), vec![3, 4, 7]);
//! let (_, height) = c.project(3);
//! assert_eq!(height, rat(-8, 7));
//! ```

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::perm::{residue, Generator, PeriodicPermutation, PermError};

pub type Rational = BigRational;

/// The rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("n must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("point {0} is not in 1..=n")]
    OutOfRange(i64),
    #[error("outer and inner points must both be nonempty")]
    OneSided,
    #[error("word is not a permutation of 1..={0}")]
    BadWord(usize),
    #[error("{i} must be an outer point and {j} an inner point")]
    NotOuterInner { i: i64, j: i64 },
    #[error("scheme constants must sum to 1")]
    SchemeSum,
    #[error("vector is not a factor vector of the scheme")]
    NotFactor,
    #[error("permutation is not affine")]
    NotAffine,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The simple reflection `s_i = (i i+1)_n`, `1 ≤ i ≤ n`.
pub fn simple_reflection(n: usize, i: usize) -> PeriodicPermutation {
    PeriodicPermutation::reflection(n, i as i64, i as i64 + 1).expect("n >= 2")
}

/// The product `s_{w_1} s_{w_2} ⋯ s_{w_k}`, acting right to left.
pub fn word_product(n: usize, word: &[usize]) -> PeriodicPermutation {
    word.iter()
        .fold(PeriodicPermutation::identity(n), |acc, &i| &acc * &simple_reflection(n, i))
}

/// A Coxeter element of `S̃_n`, given by its outer points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterElement {
    n: usize,
    outer: Vec<bool>,
}

impl CoxeterElement {
    pub fn new(n: usize, outer: &[i64]) -> Result<Self, CoxeterError> {
        if n < 2 {
            return Err(CoxeterError::TooSmall(n));
        }
        let mut flags = vec![false; n];
        for &i in outer {
            if !(1..=n as i64).contains(&i) {
                return Err(CoxeterError::OutOfRange(i));
            }
            flags[(i - 1) as usize] = true;
        }
        if flags.iter().all(|&b| b) || flags.iter().all(|&b| !b) {
            return Err(CoxeterError::OneSided);
        }
        Ok(Self { n, outer: flags })
    }

    /// Reads the outer points off a reduced word `s_{w_1} ⋯ s_{w_n}`: `i` is
    /// outer exactly when `s_{i-1}` comes before `s_i`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self, CoxeterError> {
        if n < 2 {
            return Err(CoxeterError::TooSmall(n));
        }
        let mut pos = vec![usize::MAX; n + 1];
        if word.len() != n {
            return Err(CoxeterError::BadWord(n));
        }
        for (k, &w) in word.iter().enumerate() {
            if w == 0 || w > n || pos[w] != usize::MAX {
                return Err(CoxeterError::BadWord(n));
            }
            pos[w] = k;
        }
        let outer: Vec<i64> = (1..=n)
            .filter(|&i| {
                let prev = if i == 1 { n } else { i - 1 };
                pos[prev] < pos[i]
            })
            .map(|i| i as i64)
            .collect();
        Self::new(n, &outer)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the residue of `i` is an outer point.
    pub fn is_outer(&self, i: i64) -> bool {
        self.outer[(residue(i, self.n) - 1) as usize]
    }

    pub fn outer_points(&self) -> Vec<i64> {
        (1..=self.n as i64).filter(|&i| self.is_outer(i)).collect()
    }

    pub fn inner_points(&self) -> Vec<i64> {
        (1..=self.n as i64).filter(|&i| !self.is_outer(i)).collect()
    }

    pub fn n_out(&self) -> usize {
        self.outer.iter().filter(|&&b| b).count()
    }

    pub fn n_inn(&self) -> usize {
        self.n - self.n_out()
    }

    /// Every Coxeter element of `S̃_n`.
    pub fn all(n: usize) -> Vec<Self> {
        (1..(1u64 << n) - 1)
            .map(|mask| {
                let outer: Vec<i64> =
                    (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b as i64 + 1).collect();
                Self::new(n, &outer).expect("proper nonempty subset")
            })
            .collect()
    }

    /// Whether `s_i` comes before `s_j` for adjacent `i`, `j` (indices mod `n`).
    pub fn precedes(&self, i: usize, j: usize) -> Option<bool> {
        let n = self.n;
        let next = |k: usize| k % n + 1;
        if next(i) == j {
            Some(self.is_outer(j as i64))
        } else if next(j) == i {
            Some(!self.is_outer(i as i64))
        } else {
            None
        }
    }

    /// A reduced word for `c`, obtained by sorting the orientation topologically.
    pub fn word(&self) -> Vec<usize> {
        let n = self.n;
        let mut indeg = vec![0usize; n + 1];
        let mut succ = vec![Vec::new(); n + 1];
        for k in 1..=n {
            let prev = if k == 1 { n } else { k - 1 };
            let (a, b) = if self.is_outer(k as i64) { (prev, k) } else { (k, prev) };
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (1..=n).filter(|&k| indeg[k] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(&k) = ready.iter().next() {
            ready.remove(&k);
            out.push(k);
            for &b in &succ[k] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
        out
    }

    /// The element itself: outer points climb by `+n`, inner points descend by `-n`.
    pub fn to_permutation(&self) -> PeriodicPermutation {
        let n = self.n as i64;
        let outer = self.outer_points();
        let mut inner = self.inner_points();
        inner.reverse();
        let mut window = vec![0; self.n];
        for (k, &a) in outer.iter().enumerate() {
            window[(a - 1) as usize] = outer.get(k + 1).copied().unwrap_or(outer[0] + n);
        }
        for (k, &b) in inner.iter().enumerate() {
            window[(b - 1) as usize] = inner.get(k + 1).copied().unwrap_or(inner[0] - n);
        }
        PeriodicPermutation::new(self.n, window).expect("valid window")
    }

    /// `ω_c(α_i, α_j)` as an integer matrix, indexed from zero.
    pub fn omega_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut m = vec![vec![0i64; n]; n];
        for k in 0..n {
            let prev = (k + n - 1) % n;
            let s = if self.outer[k] { 1 } else { -1 };
            m[prev][k] += s;
            m[k][prev] -= s;
        }
        m
    }

    /// `ω_c(x, y)` for `x`, `y` in simple-root coordinates.
    pub fn omega(&self, x: &RationalVector, y: &RationalVector) -> Rational {
        assert!(x.basis == Basis::Roots && y.basis == Basis::Roots);
        let m = self.omega_matrix();
        let mut acc = Rational::zero();
        for (i, row) in m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    acc += &x.coords[i] * &y.coords[j] * int(v);
                }
            }
        }
        acc
    }

    /// `ω_c(δ, e_j)`.
    pub fn omega_delta(&self, j: i64) -> Rational {
        self.omega(&delta(self.n), &e_vector(self.n, j))
    }

    /// `½ ω_c(δ, ·)` in fundamental-weight coordinates, read from the matrix.
    pub fn half_omega_delta(&self) -> RationalVector {
        let m = self.omega_matrix();
        let coords =
            (0..self.n).map(|i| rat((0..self.n).map(|k| m[k][i]).sum::<i64>(), 2)).collect();
        RationalVector::weights(coords)
    }

    /// Three closed forms for `½ ω_c(δ, ·)`: the sum of `σ_i` over outer `i`, minus
    /// the sum over inner `i`, and the signed sum over boundary transitions.
    pub fn half_omega_delta_forms(&self) -> [RationalVector; 3] {
        let n = self.n;
        let mut out_sum = RationalVector::zero(Basis::Weights, n);
        let mut inn_sum = RationalVector::zero(Basis::Weights, n);
        let mut trans = RationalVector::zero(Basis::Weights, n);
        for i in 1..=n as i64 {
            if self.is_outer(i) {
                out_sum = out_sum.add(&sigma(n, i));
                if !self.is_outer(i + 1) {
                    trans.coords[(i - 1) as usize] += int(1);
                }
            } else {
                inn_sum = inn_sum.sub(&sigma(n, i));
                if self.is_outer(i + 1) {
                    trans.coords[(i - 1) as usize] -= int(1);
                }
            }
        }
        [out_sum, inn_sum, trans]
    }

    /// `γ_c` in simple-root coordinates, from the counting formula for `b_k`.
    pub fn gamma(&self) -> RationalVector {
        let n = self.n;
        let (tot_out, tot_inn) = (self.n_out() as i64, self.n_inn() as i64);
        let mut coords = Vec::with_capacity(n);
        let (mut out_le, mut inn_le) = (0i64, 0i64);
        for k in 1..=n as i64 {
            if self.is_outer(k) {
                out_le += 1;
            } else {
                inn_le += 1;
            }
            let b = inn_le * (tot_out - out_le) - (tot_inn - inn_le) * out_le;
            coords.push(rat(b, n as i64));
        }
        RationalVector::roots(coords)
    }

    /// `γ_c` from its expression in the orbit vectors `e_i`.
    pub fn gamma_ambient(&self) -> RationalVector {
        let n = self.n;
        let mut v = RationalVector::zero(Basis::Roots, n);
        for i in 1..=n as i64 {
            let w = if self.is_outer(i) { self.n_inn() as i64 } else { -(self.n_out() as i64) };
            v = v.add(&e_vector(n, i).scale(&int(w)));
        }
        v.scale(&rat(1, n as i64))
    }

    /// Coordinates `(ω_c(γ_c, e_j), ω_c(δ, e_j))` of `e_j` in the Coxeter plane.
    pub fn project(&self, j: i64) -> (Rational, Rational) {
        let e = e_vector(self.n, j);
        (self.omega(&self.gamma(), &e), self.omega(&delta(self.n), &e))
    }

    /// Tab-separated rows `j`, `ω_c(γ_c, e_j)`, `ω_c(δ, e_j)`.
    pub fn projection_table(&self, js: impl IntoIterator<Item = i64>) -> String {
        let mut s = String::new();
        for j in js {
            let (x, y) = self.project(j);
            s.push_str(&format!("{j}\t{x}\t{y}\n"));
        }
        s
    }

    /// A reflection is horizontal when its endpoints are both outer or both inner.
    pub fn is_horizontal(&self, g: &Generator) -> bool {
        match *g {
            Generator::Reflection { i, j } => self.is_outer(i) == self.is_outer(j),
            Generator::Loop { .. } => false,
        }
    }

    /// The horizontal reflections below `c`: `(i j)_n` and `(i j−n)_n` for
    /// `1 ≤ i < j ≤ n` on the same boundary.
    pub fn horizontal_interval_reflections(&self) -> Vec<Generator> {
        let n = self.n as i64;
        let mut out = BTreeSet::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if self.is_outer(i) == self.is_outer(j) {
                    out.insert(Generator::reflection(self.n, i, j).expect("distinct residues"));
                    out.insert(Generator::reflection(self.n, i, j - n).expect("distinct residues"));
                }
            }
        }
        out.into_iter().collect()
    }

    /// The translations `ℓ_i ℓ_j⁻¹` below `c`, `i` outer and `j` inner, with
    /// their vectors `σ_i − σ_j`.
    pub fn interval_translations(&self) -> Vec<IntervalTranslation> {
        let n = self.n;
        let mut out = Vec::new();
        for i in self.outer_points() {
            for j in self.inner_points() {
                let perm = &PeriodicPermutation::loop_at(n, i, 1) * &PeriodicPermutation::loop_at(n, j, -1);
                out.push(IntervalTranslation { outer: i, inner: j, perm, vector: sigma(n, i).sub(&sigma(n, j)) });
            }
        }
        out
    }
}

impl fmt::Display for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} outer={:?} inner={:?}", self.n, self.outer_points(), self.inner_points())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalTranslation {
    pub outer: i64,
    pub inner: i64,
    pub perm: PeriodicPermutation,
    pub vector: RationalVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Simple roots `α_1, …, α_n`.
    Roots,
    /// Fundamental weights `ρ_1, …, ρ_n`.
    Weights,
}

/// A vector of exact rationals tagged with its basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    pub basis: Basis,
    pub coords: Vec<Rational>,
}

impl RationalVector {
    pub fn roots(coords: Vec<Rational>) -> Self {
        Self { basis: Basis::Roots, coords }
    }

    pub fn weights(coords: Vec<Rational>) -> Self {
        Self { basis: Basis::Weights, coords }
    }

    pub fn zero(basis: Basis, n: usize) -> Self {
        Self { basis, coords: vec![Rational::zero(); n] }
    }

    pub fn unit(basis: Basis, n: usize, i: usize) -> Self {
        let mut v = Self::zero(basis, n);
        v.coords[i - 1] = Rational::one();
        v
    }

    pub fn from_ints(basis: Basis, xs: &[i64]) -> Self {
        Self { basis, coords: xs.iter().map(|&x| int(x)).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Self { basis: self.basis, coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Self { basis: self.basis, coords }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { basis: self.basis, coords: self.coords.iter().map(|a| a * k).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|a| a.is_integer())
    }

    /// Pairs a covector (weights) with a vector (roots).
    pub fn pair(&self, v: &Self) -> Rational {
        assert!(self.basis == Basis::Weights && v.basis == Basis::Roots);
        self.coords.iter().zip(&v.coords).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.basis {
            Basis::Roots => "alpha",
            Basis::Weights => "rho",
        };
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{tag}[{}]", parts.join(", "))
    }
}

/// The Cartan matrix of `Ã_{n−1}`, indexed from zero.
pub fn cartan(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for k in 0..n {
        a[k][k] += 2;
        let prev = (k + n - 1) % n;
        a[k][prev] -= 1;
        a[prev][k] -= 1;
    }
    a
}

/// The symmetric form `K(x, y)` on simple-root coordinates.
pub fn cartan_form(x: &RationalVector, y: &RationalVector) -> Rational {
    let n = x.len();
    let a = cartan(n);
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] != 0 {
                acc += &x.coords[i] * &y.coords[j] * int(a[i][j]);
            }
        }
    }
    acc
}

/// `⟨ρ_i, e_j⟩ = i/n + ⌊(j − i − 1)/n⌋`.
pub fn weight_pairing(n: usize, i: i64, j: i64) -> Rational {
    let n64 = n as i64;
    rat(i, n64) + int((j - i - 1).div_euclid(n64))
}

/// `e_j` in simple-root coordinates.
pub fn e_vector(n: usize, j: i64) -> RationalVector {
    RationalVector::roots((1..=n as i64).map(|i| weight_pairing(n, i, j)).collect())
}

/// `δ = α_1 + ⋯ + α_n`.
pub fn delta(n: usize) -> RationalVector {
    RationalVector::from_ints(Basis::Roots, &vec![1; n])
}

/// `σ_i = ρ_i − ρ_{i−1}`, indices mod `n`.
pub fn sigma(n: usize, i: i64) -> RationalVector {
    let r = residue(i, n) as usize;
    let prev = residue(i - 1, n) as usize;
    RationalVector::unit(Basis::Weights, n, r).sub(&RationalVector::unit(Basis::Weights, n, prev))
}

/// The linear action of an affine permutation on `V`, in simple-root coordinates.
pub fn act_on_roots(p: &PeriodicPermutation, v: &RationalVector) -> Result<RationalVector, CoxeterError> {
    if !p.is_affine() {
        return Err(CoxeterError::NotAffine);
    }
    assert_eq!(v.basis, Basis::Roots);
    let n = p.n();
    let mut out = RationalVector::zero(Basis::Roots, n);
    for (k, x) in v.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let i = k as i64 + 1;
        let img = e_vector(n, p.apply(i + 1)).sub(&e_vector(n, p.apply(i)));
        out = out.add(&img.scale(x));
    }
    Ok(out)
}

/// The dual action `x ↦ x ∘ p⁻¹` on covectors in weight coordinates.
pub fn act_on_weights(p: &PeriodicPermutation, x: &RationalVector) -> Result<RationalVector, CoxeterError> {
    assert_eq!(x.basis, Basis::Weights);
    let inv = p.inverse();
    let n = p.n();
    let mut coords = Vec::with_capacity(n);
    for m in 1..=n {
        let img = act_on_roots(&inv, &RationalVector::unit(Basis::Roots, n, m))?;
        coords.push(x.pair(&img));
    }
    Ok(RationalVector::weights(coords))
}

/// The translation vector of `p` on the level-one plane, if `p` acts there by
/// a translation.
pub fn translation_vector(p: &PeriodicPermutation) -> Result<Option<RationalVector>, CoxeterError> {
    let n = p.n();
    let mut found: Option<RationalVector> = None;
    for k in 1..=n {
        let rho = RationalVector::unit(Basis::Weights, n, k);
        let d = act_on_weights(p, &rho)?.sub(&rho);
        match &found {
            Some(v) if *v != d => return Ok(None),
            Some(_) => {}
            None => found = Some(d),
        }
    }
    Ok(found)
}

/// The finite simple reflection `s_i`, `1 ≤ i < n`, acting on weight coordinates.
pub fn reflect_weights(i: usize, x: &RationalVector) -> RationalVector {
    let n = x.len();
    let a = cartan(n);
    let xi = x.coords[i - 1].clone();
    let coords = x.coords.iter().enumerate().map(|(m, v)| v - &xi * int(a[i - 1][m])).collect();
    RationalVector::weights(coords)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Outer,
    Inner,
}

/// Constants `q_out + q_inn = 1` splitting the Coxeter-axis component of a
/// translation between its two factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorScheme {
    pub q_out: Rational,
    pub q_inn: Rational,
}

impl FactorScheme {
    pub fn new(q_out: Rational, q_inn: Rational) -> Result<Self, CoxeterError> {
        if &q_out + &q_inn != Rational::one() {
            return Err(CoxeterError::SchemeSum);
        }
        Ok(Self { q_out, q_inn })
    }

    pub fn from_q_out(q_out: Rational) -> Self {
        let q_inn = Rational::one() - &q_out;
        Self { q_out, q_inn }
    }

    /// `q_out = #inn/n`, `q_inn = #out/n`.
    pub fn canonical(c: &CoxeterElement) -> Self {
        Self::from_q_out(rat(c.n_inn() as i64, c.n as i64))
    }

    pub fn q(&self, side: Side) -> &Rational {
        match side {
            Side::Outer => &self.q_out,
            Side::Inner => &self.q_inn,
        }
    }
}

/// `λ_0 = (1/#out + 1/#inn)·a` with `a = ½ ω_c(δ, ·)`.
pub fn lambda0(c: &CoxeterElement) -> RationalVector {
    let k = rat(1, c.n_out() as i64) + rat(1, c.n_inn() as i64);
    c.half_omega_delta().scale(&k)
}

/// The factor vector attached to a point on the given side.
pub fn factor_vector(c: &CoxeterElement, scheme: &FactorScheme, side: Side, point: i64) -> RationalVector {
    let n = c.n;
    let a = c.half_omega_delta();
    let (base, count) = match side {
        Side::Outer => (sigma(n, point), c.n_out()),
        Side::Inner => (sigma(n, point).neg(), c.n_inn()),
    };
    base.sub(&a.scale(&rat(1, count as i64))).add(&lambda0(c).scale(scheme.q(side)))
}

/// Splits the vector `σ_i − σ_j` of `ℓ_i ℓ_j⁻¹` into its outer and inner factors.
pub fn factor_translation(
    c: &CoxeterElement,
    scheme: &FactorScheme,
    i: i64,
    j: i64,
) -> Result<(RationalVector, RationalVector), CoxeterError> {
    if !c.is_outer(i) || c.is_outer(j) {
        return Err(CoxeterError::NotOuterInner { i, j });
    }
    Ok((factor_vector(c, scheme, Side::Outer, i), factor_vector(c, scheme, Side::Inner, j)))
}

/// All factor vectors of a scheme, tagged by side and point.
pub fn factor_vectors(c: &CoxeterElement, scheme: &FactorScheme) -> Vec<(Side, i64, RationalVector)> {
    let mut out = Vec::new();
    for i in c.outer_points() {
        out.push((Side::Outer, i, factor_vector(c, scheme, Side::Outer, i)));
    }
    for j in c.inner_points() {
        out.push((Side::Inner, j, factor_vector(c, scheme, Side::Inner, j)));
    }
    out
}

/// Why a scheme's factored translations fail to be closed under conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureWitness {
    /// A factor vector with a non-integral weight coordinate.
    NonIntegral(RationalVector),
    /// A finite simple reflection sending `vector` outside `±` the factor vectors.
    NotPermuted { reflection: usize, vector: RationalVector, image: RationalVector },
}

impl fmt::Display for ClosureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureWitness::NonIntegral(v) => write!(f, "non-integral factor vector {v}"),
            ClosureWitness::NotPermuted { reflection, vector, image } => {
                write!(f, "s{reflection} sends {vector} to {image}, not a factor vector")
            }
        }
    }
}

/// Checks that the factor vectors are integral and that `±` them is permuted
/// by every finite simple reflection.
pub fn closure_check(c: &CoxeterElement, scheme: &FactorScheme) -> Result<(), ClosureWitness> {
    let mut set = BTreeSet::new();
    let vectors: Vec<RationalVector> = factor_vectors(c, scheme).into_iter().map(|(_, _, v)| v).collect();
    for v in &vectors {
        if !v.is_integral() {
            return Err(ClosureWitness::NonIntegral(v.clone()));
        }
        set.insert(v.coords.clone());
        set.insert(v.neg().coords);
    }
    for v in vectors.iter().flat_map(|v| [v.clone(), v.neg()]) {
        for s in 1..c.n {
            let image = reflect_weights(s, &v);
            if !set.contains(&image.coords) {
                return Err(ClosureWitness::NotPermuted { reflection: s, vector: v, image });
            }
        }
    }
    Ok(())
}

/// Sends a factor vector of `from` to the factor vector of `to` on the same
/// side and at the same point.
pub fn scheme_relabel(
    c: &CoxeterElement,
    from: &FactorScheme,
    to: &FactorScheme,
    v: &RationalVector,
) -> Result<RationalVector, CoxeterError> {
    factor_vectors(c, from)
        .into_iter()
        .find(|(_, _, w)| w == v)
        .map(|(side, point, _)| factor_vector(c, to, side, point))
        .ok_or(CoxeterError::NotFactor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use num_traits::Signed;

    fn running() -> CoxeterElement {
        CoxeterElement::from_word(7, &[6, 5, 2, 1, 3, 4, 7]).unwrap()
    }

    #[test]
    fn words_and_orientations() {
        let c = running();
        assert_eq!(c.outer_points(), vec![3, 4, 7]);
        assert_eq!(c.inner_points(), vec![1, 2, 5, 6]);
        assert_eq!(c.to_permutation().window(), &[-1, 1, 4, 7, 2, 5, 10]);
        let c4 = CoxeterElement::from_word(4, &[4, 3, 1, 2]).unwrap();
        assert_eq!(c4.outer_points(), vec![1, 2]);
        assert_eq!(c4.to_permutation().window(), &[2, 5, 0, 3]);
        assert!(CoxeterElement::from_word(3, &[1, 1, 2]).is_err());
        assert!(CoxeterElement::new(3, &[1, 2, 3]).is_err());
        assert!(CoxeterElement::new(3, &[]).is_err());
    }

    #[test]
    fn standard_words_put_an_initial_run_outside() {
        for n in 2..=7usize {
            for k in 1..n {
                let mut w: Vec<usize> = (k + 1..=n).rev().collect();
                w.extend(1..=k);
                let c = CoxeterElement::from_word(n, &w).unwrap();
                assert_eq!(c.outer_points(), (1..=k as i64).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn words_multiply_out_to_the_cycle_form() {
        for n in 2..=7 {
            for c in CoxeterElement::all(n) {
                let w = c.word();
                assert_eq!(CoxeterElement::from_word(n, &w).unwrap(), c);
                assert_eq!(word_product(n, &w), c.to_permutation(), "{c}");
                let p = c.to_permutation();
                assert_eq!(p.finite_class_count(), 0);
                assert_eq!(p.annular_length().unwrap(), n);
            }
        }
    }

    #[test]
    fn weight_pairing_values() {
        assert_eq!(weight_pairing(7, 2, 9), rat(2, 7));
        for i in 1..=5 {
            assert_eq!(weight_pairing(5, i, 6), rat(i, 5));
            assert_eq!(weight_pairing(5, i, 13) - weight_pairing(5, i, 8), int(1));
        }
        assert_eq!(e_vector(4, 5).sub(&e_vector(4, 1)), delta(4));
        let sum = (1..=6).fold(RationalVector::zero(Basis::Roots, 6), |acc, j| acc.add(&e_vector(6, j)));
        assert!(sum.is_zero());
    }

    #[test]
    fn simple_roots_are_differences_of_orbit_vectors() {
        let n = 5;
        for i in 1..=n {
            let a = e_vector(n, i as i64 + 1).sub(&e_vector(n, i as i64));
            assert_eq!(a, RationalVector::unit(Basis::Roots, n, i));
        }
    }

    #[test]
    fn omega_is_skew_and_matches_the_cartan_pattern() {
        for n in 2..=6 {
            for c in CoxeterElement::all(n) {
                let m = c.omega_matrix();
                let a = cartan(n);
                for i in 0..n {
                    for j in 0..n {
                        assert_eq!(m[i][j], -m[j][i]);
                        assert!(m[i][j].abs() <= a[i][j].abs());
                    }
                }
            }
        }
    }

    #[test]
    fn omega_is_invariant_under_c() {
        for n in 2..=5 {
            for c in CoxeterElement::all(n) {
                let p = c.to_permutation();
                for i in 1..=n {
                    for j in 1..=n {
                        let (x, y) = (RationalVector::unit(Basis::Roots, n, i), RationalVector::unit(Basis::Roots, n, j));
                        let (cx, cy) = (act_on_roots(&p, &x).unwrap(), act_on_roots(&p, &y).unwrap());
                        assert_eq!(c.omega(&cx, &cy), c.omega(&x, &y));
                    }
                }
            }
        }
    }

    #[test]
    fn half_omega_delta_closed_forms_agree() {
        for n in 2..=8 {
            for c in CoxeterElement::all(n) {
                let a = c.half_omega_delta();
                for form in c.half_omega_delta_forms() {
                    assert_eq!(form, a, "{c}");
                }
            }
        }
    }

    #[test]
    fn running_example_heights() {
        let c = running();
        for j in -14..=14 {
            let h = c.omega_delta(j);
            if c.is_outer(j) {
                assert_eq!(h, rat(-8, 7));
            } else {
                assert_eq!(h, rat(6, 7));
            }
            let a = c.half_omega_delta();
            assert_eq!(a.pair(&e_vector(7, j)) * int(7), if c.is_outer(j) { int(-4) } else { int(3) });
        }
    }

    #[test]
    fn running_example_gamma() {
        let c = running();
        assert_eq!(c.gamma(), c.gamma_ambient());
        let got: Vec<Rational> = (1..=7).map(|j| c.project(j).0 * int(7)).collect();
        let want: Vec<Rational> = [-9, -3, -8, 0, 3, 9, 8].iter().map(|&v| int(v)).collect();
        assert_eq!(got, want);
        for j in -7..=7 {
            assert_eq!(c.project(j + 7).0 - c.project(j).0, rat(24, 7));
        }
    }

    #[test]
    fn gamma_is_a_generalized_eigenvector() {
        for n in 2..=8 {
            for c in CoxeterElement::all(n) {
                let g = c.gamma();
                assert_eq!(g, c.gamma_ambient());
                let cg = act_on_roots(&c.to_permutation(), &g).unwrap();
                assert_eq!(cg.sub(&g), delta(n), "{c}");
            }
        }
        let c = CoxeterElement::new(2, &[1]).unwrap();
        assert_eq!(c.gamma(), e_vector(2, 1).sub(&e_vector(2, 2)).scale(&rat(1, 2)));
    }

    #[test]
    fn projection_properties_hold() {
        for n in 2..=8 {
            for c in CoxeterElement::all(n) {
                let gd = c.omega(&c.gamma(), &delta(n));
                let n64 = n as i64;
                for j in -3 * n64..=3 * n64 {
                    let (x, y) = c.project(j);
                    assert_eq!(c.project(j + n64).0, &x + &gd);
                    if c.is_outer(j) {
                        assert!(y.is_negative());
                    } else {
                        assert!(y.is_positive());
                    }
                    let next = (j + 1..).find(|&k| c.is_outer(k) == c.is_outer(j)).unwrap();
                    let (x2, y2) = c.project(next);
                    assert_eq!(y2, y);
                    assert!(x2 > x);
                    assert_eq!(x2 - &x, y.abs());
                }
            }
        }
    }

    #[test]
    fn horizontal_reflections_of_the_running_example() {
        let c = running();
        let h = c.horizontal_interval_reflections();
        assert!(h.contains(&Generator::reflection(7, 3, 4).unwrap()));
        assert!(h.contains(&Generator::reflection(7, 3, -3).unwrap()));
        assert!(!c.is_horizontal(&Generator::reflection(7, 3, 5).unwrap()));
        assert!(c.is_horizontal(&Generator::reflection(7, 3, 11).unwrap()));
        assert!(!h.contains(&Generator::reflection(7, 3, 11).unwrap()));
        let (o, i) = (c.n_out(), c.n_inn());
        assert_eq!(h.len(), o * (o - 1) + i * (i - 1));
    }

    #[test]
    fn translation_vectors_by_dual_action() {
        for n in 2..=6 {
            for c in CoxeterElement::all(n) {
                let ts = c.interval_translations();
                assert_eq!(ts.len(), c.n_out() * c.n_inn());
                for t in ts {
                    assert_eq!(translation_vector(&t.perm).unwrap(), Some(t.vector.clone()));
                }
            }
        }
        let c = running();
        let t = c.interval_translations().into_iter().find(|t| t.outer == 3 && t.inner == 5).unwrap();
        assert_eq!(t.vector, RationalVector::from_ints(Basis::Weights, &[0, -1, 1, 1, -1, 0, 0]));
        assert_eq!(translation_vector(&simple_reflection(4, 2)).unwrap(), None);
    }

    #[test]
    fn weight_reflections_match_the_permutation_action() {
        let n = 5;
        for s in 1..n {
            let p = simple_reflection(n, s);
            for k in 1..=n {
                let x = RationalVector::unit(Basis::Weights, n, k).sub(&RationalVector::unit(Basis::Weights, n, 1));
                assert_eq!(reflect_weights(s, &x), act_on_weights(&p, &x).unwrap());
            }
        }
    }

    #[test]
    fn canonical_factors_are_signed_sigmas() {
        for n in 2..=8 {
            for c in CoxeterElement::all(n) {
                let sch = FactorScheme::canonical(&c);
                for t in c.interval_translations() {
                    let (f, g) = factor_translation(&c, &sch, t.outer, t.inner).unwrap();
                    assert_eq!(f, sigma(n, t.outer));
                    assert_eq!(g, sigma(n, t.inner).neg());
                }
                assert_eq!(closure_check(&c, &sch), Ok(()));
            }
        }
    }

    #[test]
    fn equal_split_fails_for_the_running_example() {
        let c = running();
        let half = FactorScheme::from_q_out(rat(1, 2));
        assert!(matches!(closure_check(&c, &half), Err(ClosureWitness::NonIntegral(_))));
        assert!(factor_translation(&c, &half, 1, 3).is_err());
    }

    #[test]
    fn relabeling_shifts_by_the_axis_component() {
        let c = running();
        let can = FactorScheme::canonical(&c);
        let half = FactorScheme::from_q_out(rat(1, 2));
        let s3 = sigma(7, 3);
        let moved = scheme_relabel(&c, &can, &half, &s3).unwrap();
        assert_eq!(moved, s3.add(&lambda0(&c).scale(&(rat(1, 2) - rat(4, 7)))));
        assert_eq!(scheme_relabel(&c, &half, &can, &moved).unwrap(), s3);
        assert_eq!(scheme_relabel(&c, &can, &can, &s3).unwrap(), s3);
        assert_eq!(scheme_relabel(&c, &can, &half, &sigma(7, 1)), Err(CoxeterError::NotFactor));
    }

    fn arb_coxeter() -> impl Strategy<Value = CoxeterElement> {
        (2usize..=8).prop_flat_map(|n| {
            (Just(n), 1u64..(1u64 << n) - 1).prop_map(|(n, mask)| {
                let outer: Vec<i64> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b as i64 + 1).collect();
                CoxeterElement::new(n, &outer).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn factor_sums_telescope(c in arb_coxeter(), num in -12i64..12, den in 1i64..9) {
            let sch = FactorScheme::from_q_out(rat(num, den));
            for t in c.interval_translations() {
                let (f, g) = factor_translation(&c, &sch, t.outer, t.inner).unwrap();
                prop_assert_eq!(f.add(&g), t.vector);
            }
        }

        #[test]
        fn perturbed_schemes_fail_when_sides_differ(c in arb_coxeter(), num in -12i64..12, den in 1i64..9) {
            let sch = FactorScheme::from_q_out(rat(num, den));
            prop_assume!(c.n_out() != c.n_inn());
            prop_assume!(sch != FactorScheme::canonical(&c));
            prop_assert!(closure_check(&c, &sch).is_err());
        }

        #[test]
        fn integral_perturbations_fail_on_a_reflection(c in arb_coxeter(), k in 1i64..4) {
            prop_assume!(c.n_out() != c.n_inn());
            let step = rat((c.n_out() * c.n_inn()) as i64, c.n() as i64);
            let sch = FactorScheme::from_q_out(FactorScheme::canonical(&c).q_out + step * int(k));
            let is_reflection_witness = matches!(closure_check(&c, &sch), Err(ClosureWitness::NotPermuted { .. }));
            prop_assert!(is_reflection_witness);
        }
    }
}
