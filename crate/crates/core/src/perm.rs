//! Periodic permutations of the integers.
//!
//! A periodic permutation with period `n` is a bijection `π` of `Z` with
//! `π(i + n) = π(i) + n`. It is stored by its window `π(1), …, π(n)`.
//! The affine permutations are exactly those whose shift is zero.
//!
//! The generating set used throughout the crate is `T ∪ L`: the reflections
//! `(i j)_n` and the loops `ℓ_i^{±1}`. The [`Generator`] type names them, and
//! [`ascent_generators`] lists the generators that split off one more mod-`n`
//! class of finite cycles.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// Errors raised while building or manipulating periodic permutations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("window has length {found}, expected {expected}")]
    WindowLength { expected: usize, found: usize },
    #[error("window entries do not form a complete residue system mod {0}")]
    NotBijective(usize),
    #[error("period mismatch: {left} vs {right}")]
    PeriodMismatch { left: usize, right: usize },
    #[error("{a} and {b} are congruent mod {n}; no reflection exchanges them")]
    DegenerateReflection { a: i64, b: i64, n: usize },
    #[error("loop base point {0} is not in 1..=n")]
    LoopBase(i64),
    #[error("permutation is not annular")]
    NotAnnular,
    #[error("malformed cycle notation at byte {pos}: {msg}")]
    Malformed { pos: usize, msg: String },
    #[error("residue {0} appears in more than one cycle")]
    RepeatedResidue(i64),
    #[error("inconsistent drift in infinite cycle: {0}")]
    Drift(String),
    #[error("period suffix {found} does not match n = {expected}")]
    SuffixMismatch { expected: usize, found: usize },
}

/// The representative of `x` mod `n` in `1..=n`.
pub fn residue(x: i64, n: usize) -> i64 {
    (x - 1).rem_euclid(n as i64) + 1
}

/// A bijection of the integers commuting with translation by `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicPermutation {
    n: usize,
    window: Vec<i64>,
}

impl PeriodicPermutation {
    /// Builds a permutation from its window `π(1), …, π(n)`.
    ///
    /// ```
    /// use affnc::perm::PeriodicPermutation;
    /// let l1 = PeriodicPermutation::new(3, vec![4, 2, 3]).unwrap();
    /// assert_eq!(l1.shift(), 1);
    /// assert!(PeriodicPermutation::new(3, vec![1, 1, 3]).is_err());
    /// ```
    pub fn new(n: usize, window: Vec<i64>) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::ZeroPeriod);
        }
        if window.len() != n {
            return Err(PermError::WindowLength { expected: n, found: window.len() });
        }
        let mut seen = vec![false; n];
        for &v in &window {
            let r = (residue(v, n) - 1) as usize;
            if seen[r] {
                return Err(PermError::NotBijective(n));
            }
            seen[r] = true;
        }
        Ok(Self { n, window })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "period must be positive");
        Self { n, window: (1..=n as i64).collect() }
    }

    /// Builds the permutation agreeing with `f` on `1..=n`.
    pub fn from_fn(n: usize, f: impl Fn(i64) -> i64) -> Result<Self, PermError> {
        Self::new(n, (1..=n as i64).map(f).collect())
    }

    /// The reflection `(a b)_n`, swapping `a + kn` and `b + kn` for every `k`.
    pub fn reflection(n: usize, a: i64, b: i64) -> Result<Self, PermError> {
        Ok(Generator::reflection(n, a, b)?.to_perm(n))
    }

    /// The loop `ℓ_i` (sign `+1`) or its inverse (sign `-1`); `i` may be any integer.
    pub fn loop_at(n: usize, i: i64, sign: i64) -> Self {
        let r = residue(i, n);
        let mut window: Vec<i64> = (1..=n as i64).collect();
        window[(r - 1) as usize] = r + sign.signum() * n as i64;
        Self { n, window }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// Evaluates the permutation at an arbitrary integer.
    pub fn apply(&self, x: i64) -> i64 {
        let r = residue(x, self.n);
        self.window[(r - 1) as usize] + (x - r)
    }

    /// `a.compose(b)` is the map `i ↦ a(b(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.n != other.n {
            return Err(PermError::PeriodMismatch { left: self.n, right: other.n });
        }
        let window = other.window.iter().map(|&x| self.apply(x)).collect();
        Ok(Self { n: self.n, window })
    }

    pub fn inverse(&self) -> Self {
        let n = self.n;
        let mut window = vec![0; n];
        for (k, &v) in self.window.iter().enumerate() {
            let r = residue(v, n);
            window[(r - 1) as usize] = (k as i64 + 1) - (v - r);
        }
        Self { n, window }
    }

    /// `(Σ window − n(n+1)/2) / n`, a homomorphism onto `Z` whose kernel is the
    /// affine symmetric group.
    pub fn shift(&self) -> i64 {
        let n = self.n as i64;
        let sum: i64 = self.window.iter().sum();
        (sum - n * (n + 1) / 2) / n
    }

    pub fn is_affine(&self) -> bool {
        self.shift() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &v)| v == k as i64 + 1)
    }

    /// Cycle structure, with canonical lifts.
    pub fn decompose(&self) -> CycleDecomposition {
        let n = self.n;
        let mut visited = vec![false; n];
        let mut finite = Vec::new();
        let mut infinite = Vec::new();
        for r in 1..=n as i64 {
            if visited[(r - 1) as usize] {
                continue;
            }
            visited[(r - 1) as usize] = true;
            let mut entries = vec![r];
            let mut x = self.apply(r);
            while residue(x, n) != r {
                visited[(residue(x, n) - 1) as usize] = true;
                entries.push(x);
                x = self.apply(x);
            }
            let drift = (x - r) / n as i64;
            if drift == 0 {
                finite.push(entries);
            } else {
                infinite.push(InfiniteCycle { entries, drift });
            }
        }
        CycleDecomposition { n, finite, infinite }
    }

    /// Number of mod-`n` classes of finite cycles, fixed points included.
    pub fn finite_class_count(&self) -> usize {
        self.decompose().finite.len()
    }

    pub fn is_annular(&self) -> bool {
        self.decompose().is_annular()
    }

    /// `n` minus the number of finite classes; the `T ∪ L` length of an annular
    /// permutation.
    pub fn annular_length(&self) -> Result<usize, PermError> {
        let d = self.decompose();
        if !d.is_annular() {
            return Err(PermError::NotAnnular);
        }
        Ok(self.n - d.finite.len())
    }

    /// Largest number of full periods any point is moved: `max ⌊|π(i) − i| / n⌋`.
    pub fn winding(&self) -> u64 {
        let n = self.n as i64;
        self.window
            .iter()
            .enumerate()
            .map(|(k, &v)| ((v - (k as i64 + 1)).abs() / n) as u64)
            .max()
            .unwrap_or(0)
    }

    /// Conjugate `self⁻¹ · x · self`.
    pub fn conjugate_by(&self, x: &Self) -> Self {
        &(&self.inverse() * x) * self
    }
}

impl Mul for &PeriodicPermutation {
    type Output = PeriodicPermutation;

    /// Composition `a * b = a ∘ b`.
    ///
    /// # Panics
    /// Panics if the periods differ; use [`PeriodicPermutation::compose`] to
    /// get an error instead.
    fn mul(self, rhs: Self) -> PeriodicPermutation {
        self.compose(rhs).expect("period mismatch in composition")
    }
}

impl fmt::Display for PeriodicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::print_cycles(self))
    }
}

/// An infinite cycle `(⋯ a_1 ⋯ a_k a_1+qn ⋯)`.
///
/// The record stands for all of its mod-`n` translates; when `|q| > 1` these
/// are `|q|` distinct cycles of the integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfiniteCycle {
    pub entries: Vec<i64>,
    pub drift: i64,
}

impl InfiniteCycle {
    pub fn residues(&self, n: usize) -> Vec<i64> {
        self.entries.iter().map(|&x| residue(x, n)).collect()
    }

    /// Drift `±1` and entries strictly monotone in the direction of the drift.
    pub fn is_monotone(&self, n: usize) -> bool {
        self.drift.abs() == 1
            && self.closed_entries(n).windows(2).all(|w| (w[1] - w[0]).signum() == self.drift)
    }

    pub fn is_increasing(&self) -> bool {
        self.drift > 0
    }

    /// Entries over one period followed by `a_1 + qn`.
    pub fn closed_entries(&self, n: usize) -> Vec<i64> {
        let mut v = self.entries.clone();
        v.push(self.entries[0] + self.drift * n as i64);
        v
    }
}

/// Cycle structure of a periodic permutation.
///
/// Finite classes start at their minimum residue, placed in `1..=n`; infinite
/// cycles start in `1..=n` and list one period of entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub n: usize,
    pub finite: Vec<Vec<i64>>,
    pub infinite: Vec<InfiniteCycle>,
}

impl CycleDecomposition {
    /// At most two infinite cycles, each monotone, and one increasing and one
    /// decreasing when there are two.
    pub fn is_annular(&self) -> bool {
        let n = self.n;
        match self.infinite.as_slice() {
            [] => true,
            [a] => a.is_monotone(n),
            [a, b] => a.is_monotone(n) && b.is_monotone(n) && b.drift == -a.drift,
            _ => false,
        }
    }

    pub fn increasing(&self) -> Option<&InfiniteCycle> {
        self.infinite.iter().find(|c| c.drift > 0)
    }

    pub fn decreasing(&self) -> Option<&InfiniteCycle> {
        self.infinite.iter().find(|c| c.drift < 0)
    }

    /// Nontrivial finite classes, fixed points omitted.
    pub fn nontrivial_finite(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.finite.iter().filter(|c| c.len() > 1)
    }

    /// Rebuilds the permutation from its cycles.
    pub fn recompose(&self) -> Result<PeriodicPermutation, PermError> {
        let n = self.n;
        let mut window = vec![None; n];
        let mut set = |x: i64, y: i64| -> Result<(), PermError> {
            let r = residue(x, n);
            let slot = &mut window[(r - 1) as usize];
            if slot.is_some() {
                return Err(PermError::RepeatedResidue(r));
            }
            *slot = Some(y - (x - r));
            Ok(())
        };
        for cyc in &self.finite {
            for (k, &x) in cyc.iter().enumerate() {
                set(x, cyc[(k + 1) % cyc.len()])?;
            }
        }
        for cyc in &self.infinite {
            let closed = cyc.closed_entries(n);
            for w in closed.windows(2) {
                set(w[0], w[1])?;
            }
        }
        let window: Vec<i64> = window
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.unwrap_or(k as i64 + 1))
            .collect();
        PeriodicPermutation::new(n, window)
    }
}

/// A generator in `T ∪ L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `(i j)_n` with `i ∈ 1..=n`, `i < j`, `i ≢ j`.
    Reflection { i: i64, j: i64 },
    /// `ℓ_i^{sign}` with `i ∈ 1..=n`.
    Loop { i: i64, sign: i64 },
}

impl Generator {
    /// The reflection `(a b)_n` in canonical form.
    ///
    /// ```
    /// use affnc::perm::Generator;
    /// assert_eq!(Generator::reflection(7, 3, -3).unwrap(), Generator::Reflection { i: 4, j: 10 });
    /// ```
    pub fn reflection(n: usize, a: i64, b: i64) -> Result<Self, PermError> {
        if residue(a, n) == residue(b, n) {
            return Err(PermError::DegenerateReflection { a, b, n });
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let i = residue(lo, n);
        Ok(Generator::Reflection { i, j: hi + (i - lo) })
    }

    pub fn loop_at(n: usize, i: i64, sign: i64) -> Result<Self, PermError> {
        if !(1..=n as i64).contains(&i) || sign.abs() != 1 {
            return Err(PermError::LoopBase(i));
        }
        Ok(Generator::Loop { i, sign })
    }

    pub fn to_perm(&self, n: usize) -> PeriodicPermutation {
        match *self {
            Generator::Reflection { i, j } => {
                let mut window: Vec<i64> = (1..=n as i64).collect();
                let rj = residue(j, n);
                window[(i - 1) as usize] = j;
                window[(rj - 1) as usize] = i - (j - rj);
                PeriodicPermutation { n, window }
            }
            Generator::Loop { i, sign } => PeriodicPermutation::loop_at(n, i, sign),
        }
    }

    /// Recognizes a reflection or loop.
    pub fn from_perm(p: &PeriodicPermutation) -> Option<Self> {
        let n = p.n();
        let d = p.decompose();
        let nontrivial: Vec<_> = d.nontrivial_finite().collect();
        match (nontrivial.as_slice(), d.infinite.as_slice()) {
            ([c], []) if c.len() == 2 => Generator::reflection(n, c[0], c[1]).ok(),
            ([], [inf]) if inf.entries.len() == 1 && inf.drift.abs() == 1 => {
                Some(Generator::Loop { i: inf.entries[0], sign: inf.drift })
            }
            _ => None,
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            Generator::Loop { i, sign } => Generator::Loop { i, sign: -sign },
            g => g,
        }
    }

    /// Number of full periods spanned: `⌊(j − 1)/n⌋` for a reflection, `0` for a loop.
    pub fn winding(&self, n: usize) -> u64 {
        match *self {
            Generator::Reflection { j, .. } => (j - 1).div_euclid(n as i64) as u64,
            Generator::Loop { .. } => 0,
        }
    }

    pub fn is_reflection(&self) -> bool {
        matches!(self, Generator::Reflection { .. })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Reflection { i, j } => write!(f, "({i} {j})"),
            Generator::Loop { i, sign: 1 } => write!(f, "l{i}"),
            Generator::Loop { i, .. } => write!(f, "l{i}^-1"),
        }
    }
}

/// Every reflection of winding at most `bound` together with all `2n` loops.
pub fn generators_within(n: usize, bound: u64) -> Vec<Generator> {
    let n64 = n as i64;
    let top = (bound as i64 + 1) * n64;
    let mut out = Vec::new();
    for i in 1..=n64 {
        for j in (i + 1)..=top {
            if residue(j, n) != i {
                out.push(Generator::Reflection { i, j });
            }
        }
    }
    for i in 1..=n64 {
        out.push(Generator::Loop { i, sign: 1 });
        out.push(Generator::Loop { i, sign: -1 });
    }
    out
}

/// Result `g ∘ p` together with the change in the number of finite classes.
pub fn apply_generator(g: &Generator, p: &PeriodicPermutation) -> (PeriodicPermutation, i64) {
    let q = &g.to_perm(p.n()) * p;
    let delta = q.finite_class_count() as i64 - p.finite_class_count() as i64;
    (q, delta)
}

/// Which of the five ways of splitting off a finite class applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AscentKind {
    /// Reflection between two entries of one finite cycle.
    SameFinite,
    /// Reflection between entries of one infinite cycle less than `n` apart.
    SameInfinite,
    /// Reflection between the increasing and the decreasing infinite cycle.
    AcrossInfinite,
    /// `ℓ_a` with `a` on the decreasing cycle.
    LoopOnDecreasing,
    /// `ℓ_a⁻¹` with `a` on the increasing cycle.
    InverseLoopOnIncreasing,
}

fn cycle_of(d: &CycleDecomposition, r: i64) -> (Option<usize>, Option<usize>) {
    let n = d.n;
    let f = d.finite.iter().position(|c| c.iter().any(|&x| residue(x, n) == r));
    let i = d.infinite.iter().position(|c| c.entries.iter().any(|&x| residue(x, n) == r));
    (f, i)
}

/// Classifies `g` against the five ascent patterns for the annular `p`.
pub fn classify_ascent(g: &Generator, p: &PeriodicPermutation) -> Option<AscentKind> {
    let n = p.n();
    let d = p.decompose();
    match *g {
        Generator::Loop { i, sign } => {
            let (_, inf) = cycle_of(&d, i);
            let drift = d.infinite[inf?].drift;
            match (sign, drift) {
                (1, -1) => Some(AscentKind::LoopOnDecreasing),
                (-1, 1) => Some(AscentKind::InverseLoopOnIncreasing),
                _ => None,
            }
        }
        Generator::Reflection { i, j } => {
            let (fi, ii) = cycle_of(&d, i);
            let (fj, ij) = cycle_of(&d, residue(j, n));
            if let (Some(a), Some(b)) = (fi, fj) {
                if a != b {
                    return None;
                }
                let cyc = &d.finite[a];
                let xi = cyc.iter().copied().find(|&x| residue(x, n) == i)?;
                let xj = cyc.iter().copied().find(|&x| residue(x, n) == residue(j, n))?;
                return (xj - xi == j - i).then_some(AscentKind::SameFinite);
            }
            match (ii, ij) {
                (Some(a), Some(b)) if a == b => {
                    let drift = d.infinite[a].drift;
                    (drift.abs() == 1 && j - i < n as i64).then_some(AscentKind::SameInfinite)
                }
                (Some(a), Some(b)) => {
                    let (da, db) = (d.infinite[a].drift, d.infinite[b].drift);
                    (da.abs() == 1 && db == -da).then_some(AscentKind::AcrossInfinite)
                }
                _ => None,
            }
        }
    }
}

/// Default winding bound for `p`: the largest lift in its window plus one period,
/// measured in periods.
pub fn default_winding_bound(p: &PeriodicPermutation) -> u64 {
    let n = p.n() as i64;
    let m = p.window().iter().map(|v| v.abs()).max().unwrap_or(0);
    ((m + n + n - 1) / n) as u64
}

/// All generators `g` with `g ∘ p` having one more finite class than `p`.
///
/// Reflections across the two infinite cycles are listed only up to winding
/// `bound`; every other pattern yields finitely many generators.
///
/// ```
/// use affnc::perm::{ascent_generators, PeriodicPermutation};
/// assert!(ascent_generators(&PeriodicPermutation::identity(4), 1).unwrap().is_empty());
/// ```
pub fn ascent_generators(p: &PeriodicPermutation, bound: u64) -> Result<Vec<Generator>, PermError> {
    let n = p.n();
    let n64 = n as i64;
    let d = p.decompose();
    if !d.is_annular() {
        return Err(PermError::NotAnnular);
    }
    let mut out = BTreeSet::new();
    for cyc in d.nontrivial_finite() {
        for (k, &a) in cyc.iter().enumerate() {
            for &b in &cyc[k + 1..] {
                out.insert(Generator::reflection(n, a, b)?);
            }
        }
    }
    for cyc in &d.infinite {
        let residues = cyc.residues(n);
        for &a in &residues {
            for &b in &residues {
                if a != b {
                    let lift = b + n64 * (a - b).div_euclid(n64) + n64;
                    out.insert(Generator::reflection(n, a, lift)?);
                }
            }
            let sign = -cyc.drift.signum();
            out.insert(Generator::Loop { i: a, sign });
        }
    }
    if let (Some(inc), Some(dec)) = (d.increasing(), d.decreasing()) {
        let span = bound as i64 + 2;
        for a in inc.residues(n) {
            for b in dec.residues(n) {
                for m in -span..=span {
                    let g = Generator::reflection(n, a, b + m * n64)?;
                    if g.winding(n) <= bound {
                        out.insert(g);
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize, w: &[i64]) -> PeriodicPermutation {
        PeriodicPermutation::new(n, w.to_vec()).unwrap()
    }

    #[test]
    fn window_validation() {
        assert!(PeriodicPermutation::new(3, vec![1, 2]).is_err());
        assert!(PeriodicPermutation::new(3, vec![1, 4, 3]).is_err());
        assert!(PeriodicPermutation::new(3, vec![3, 1, 2]).is_ok());
    }

    #[test]
    fn compose_small_cases() {
        let id = PeriodicPermutation::identity(3);
        assert_eq!(&id * &id, id);
        let t = PeriodicPermutation::reflection(3, 1, 2).unwrap();
        assert_eq!(&t * &t, id);
        let l = PeriodicPermutation::loop_at(3, 1, 1);
        assert_eq!(&l * &PeriodicPermutation::loop_at(3, 1, -1), id);
        assert!(id.compose(&PeriodicPermutation::identity(4)).is_err());
    }

    #[test]
    fn shift_values() {
        assert_eq!(PeriodicPermutation::identity(5).shift(), 0);
        let l1 = PeriodicPermutation::loop_at(3, 1, 1);
        assert_eq!(l1.window(), &[4, 2, 3]);
        assert_eq!(l1.shift(), 1);
        assert_eq!(PeriodicPermutation::reflection(3, 1, 2).unwrap().shift(), 0);
    }

    #[test]
    fn loop_decomposition() {
        let l5 = PeriodicPermutation::loop_at(7, 5, 1);
        let d = l5.decompose();
        assert_eq!(d.infinite, vec![InfiniteCycle { entries: vec![5], drift: 1 }]);
        assert_eq!(d.finite.len(), 6);
    }

    #[test]
    fn identity_decomposition() {
        let d = PeriodicPermutation::identity(3).decompose();
        assert_eq!(d.finite, vec![vec![1], vec![2], vec![3]]);
        assert!(d.infinite.is_empty());
    }

    #[test]
    fn canonical_reflection_forms() {
        assert_eq!(Generator::reflection(7, 4, 3).unwrap(), Generator::Reflection { i: 3, j: 4 });
        assert_eq!(Generator::reflection(7, 10, 12).unwrap(), Generator::Reflection { i: 3, j: 5 });
        assert!(Generator::reflection(7, 1, 8).is_err());
        let g = Generator::reflection(7, 3, -3).unwrap();
        assert_eq!(g, Generator::Reflection { i: 4, j: 10 });
        assert_eq!(Generator::from_perm(&g.to_perm(7)), Some(g));
    }

    #[test]
    fn apply_generator_deltas() {
        let id = PeriodicPermutation::identity(3);
        let t = Generator::reflection(3, 1, 2).unwrap();
        assert_eq!(apply_generator(&t, &id).1, -1);
        let l = Generator::Loop { i: 1, sign: 1 };
        assert_eq!(apply_generator(&l, &id).1, -1);
        // splitting (1 2 3)_4 with (1 3)_4
        let p = perm(4, &[2, 3, 1, 4]);
        let g = Generator::reflection(4, 1, 3).unwrap();
        let (q, delta) = apply_generator(&g, &p);
        assert_eq!(delta, 1);
        assert_eq!(q.finite_class_count(), 3);
    }

    #[test]
    fn losing_classes() {
        // two classes merge
        let p = perm(4, &[2, 1, 4, 3]);
        let g = Generator::reflection(4, 2, 7).unwrap();
        assert_eq!(apply_generator(&g, &p).1, -1);
        // one class turns infinite
        let g = Generator::reflection(4, 1, 6).unwrap();
        let (q, delta) = apply_generator(&g, &p);
        assert_eq!(delta, -1);
        assert!(!q.decompose().infinite.is_empty());
    }

    #[test]
    fn monotonicity_is_required() {
        let p = crate::notation::parse_cycles("(... 1 8 15 17 9 -4 ...)", 5).unwrap();
        assert_eq!(p.decompose().infinite[0].drift, -1);
        assert!(!p.is_annular());
        assert!(PeriodicPermutation::loop_at(5, 2, 1).is_annular());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = PeriodicPermutation> {
        let order = Just((1..=n as i64).collect::<Vec<_>>()).prop_shuffle();
        (order, prop::collection::vec(-2i64..=2, n)).prop_map(move |(order, lifts)| {
            let w = order.iter().zip(&lifts).map(|(&r, &m)| r + m * n as i64).collect();
            PeriodicPermutation::new(n, w).unwrap()
        })
    }

    /// Annular permutations: an optional increasing and decreasing cycle on
    /// sorted residues, and finite cycles with arbitrary lifts on the rest.
    fn arb_annular(n: usize) -> impl Strategy<Value = PeriodicPermutation> {
        let order = Just((1..=n as i64).collect::<Vec<_>>()).prop_shuffle();
        let cuts = prop::collection::vec(0..=n, 2);
        let lifts = prop::collection::vec(-2i64..=2, n);
        let breaks = prop::collection::vec(any::<bool>(), n);
        (order, cuts, lifts, breaks).prop_map(move |(order, mut cuts, lifts, breaks)| {
            cuts.sort();
            let (inc, rest) = order.split_at(cuts[0]);
            let (dec, fin) = rest.split_at(cuts[1] - cuts[0]);
            let mut infinite = Vec::new();
            if !inc.is_empty() {
                let mut e = inc.to_vec();
                e.sort();
                infinite.push(InfiniteCycle { entries: e, drift: 1 });
            }
            if !dec.is_empty() {
                let mut e = dec.to_vec();
                e.sort();
                e.reverse();
                infinite.push(InfiniteCycle { entries: e, drift: -1 });
            }
            let mut finite: Vec<Vec<i64>> = Vec::new();
            for (k, &r) in fin.iter().enumerate() {
                let x = r + lifts[k] * n as i64;
                match finite.last_mut() {
                    Some(cyc) if !breaks[k] => cyc.push(x),
                    _ => finite.push(vec![x]),
                }
            }
            CycleDecomposition { n, finite, infinite }.recompose().unwrap()
        })
    }

    fn arb_any() -> impl Strategy<Value = PeriodicPermutation> {
        (1usize..=6).prop_flat_map(arb_perm)
    }

    fn arb_pair() -> impl Strategy<Value = (PeriodicPermutation, PeriodicPermutation)> {
        (1usize..=6).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))
    }

    fn arb_generator(n: usize) -> impl Strategy<Value = Generator> {
        let n64 = n as i64;
        prop_oneof![
            (1..=n64, -12i64..=12)
                .prop_filter("distinct residues", move |(a, b)| residue(*a, n) != residue(*b, n))
                .prop_map(move |(a, b)| Generator::reflection(n, a, b).unwrap()),
            (1..=n64, prop_oneof![Just(1i64), Just(-1i64)]).prop_map(|(i, sign)| Generator::Loop { i, sign }),
        ]
    }

    proptest! {
        #[test]
        fn recompose_round_trip(p in arb_any()) {
            prop_assert_eq!(p.decompose().recompose().unwrap(), p);
        }

        #[test]
        fn shift_is_homomorphism((a, b) in arb_pair()) {
            prop_assert_eq!((&a * &b).shift(), a.shift() + b.shift());
            prop_assert_eq!(a.inverse().shift(), -a.shift());
            prop_assert!((&a * &a.inverse()).is_identity());
        }

        #[test]
        fn reflection_products_are_affine(gens in prop::collection::vec(arb_generator(5), 0..6)) {
            let p = gens.iter().filter(|g| g.is_reflection()).fold(PeriodicPermutation::identity(5), |acc, g| &g.to_perm(5) * &acc);
            prop_assert_eq!(p.shift(), 0);
        }

        #[test]
        fn at_most_one_more_class(p in arb_perm(5), g in arb_generator(5)) {
            let (_, delta) = apply_generator(&g, &p);
            prop_assert!(delta <= 1);
            prop_assert!(delta >= -2);
        }

        #[test]
        fn ascent_patterns_are_exactly_the_splits(p in arb_annular(5), g in arb_generator(5)) {
            prop_assert!(p.is_annular());
            let (q, delta) = apply_generator(&g, &p);
            let kind = classify_ascent(&g, &p);
            prop_assert_eq!(delta == 1, kind.is_some(), "g={} p={} delta={}", g, p, delta);
            if kind.is_some() {
                prop_assert!(q.is_annular());
                let listed = ascent_generators(&p, g.winding(5)).unwrap();
                prop_assert!(listed.contains(&g));
            }
        }

        #[test]
        fn conjugation_preserves_generators(g in arb_generator(4), word in prop::collection::vec(arb_generator(4), 0..4)) {
            let x = word.iter().fold(PeriodicPermutation::identity(4), |acc, h| &h.to_perm(4) * &acc);
            let conj = &(&x * &g.to_perm(4)) * &x.inverse();
            prop_assert!(Generator::from_perm(&conj).is_some());
        }
    }

    #[test]
    fn ascent_list_is_sound() {
        let p = perm(4, &[2, 5, 0, 3]);
        for g in ascent_generators(&p, 2).unwrap() {
            let (q, delta) = apply_generator(&g, &p);
            assert_eq!(delta, 1, "{g}");
            assert!(q.is_annular());
        }
    }
}
