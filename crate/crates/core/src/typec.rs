//! Type C̃ by folding.
//!
//! For `n ≥ 3`, the group `C̃_{n−1}` is realized as the period-`2n` periodic
//! permutations that fix every multiple of `n` and commute with
//! `φ(π)(i) = −π(−i)`. Deleting the multiples of `n` and renumbering
//! ([`fold_index`]) identifies the ambient group with `S̃_{2n−2}`, where the
//! type Ã machinery applies. Intervals below a Coxeter element are the
//! `φ`-fixed part of the folded interval, and block diagrams are read on the
//! quotient of the symmetric annulus by `φ`: a disk with two orbifold points.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::coxeter::CoxeterElement;
use crate::diagram::{AnnularDiagram, Block, DiagramError};
use crate::interval;
use crate::perm::{residue, PeriodicPermutation, PermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeCError {
    #[error("type C needs n >= 3, got {0}")]
    TooSmall(usize),
    #[error("expected period {expected}, found {found}")]
    Period { expected: usize, found: usize },
    #[error("invalid signing: {0}")]
    BadSigning(String),
    #[error("word is not a permutation of 0..{0}")]
    BadWord(usize),
    #[error("permutation moves a multiple of n")]
    MovesMultiple,
    #[error("permutation is not fixed by phi")]
    NotSymmetric,
    #[error("{0} is not in the interval below c")]
    NotMember(String),
    #[error("word is not reduced below c")]
    NotReduced,
    #[error("not a reflection of the type C group")]
    NotReflection,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A choice of sign for each of `1, …, n−1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signing {
    n: usize,
    signs: Vec<i64>,
}

impl Signing {
    /// `signs[k]` is the sign of `k + 1`.
    pub fn new(n: usize, signs: &[i64]) -> Result<Self, TypeCError> {
        if n < 3 {
            return Err(TypeCError::TooSmall(n));
        }
        if signs.len() != n - 1 || signs.iter().any(|s| s.abs() != 1) {
            return Err(TypeCError::BadSigning(format!("{signs:?}")));
        }
        Ok(Self { n, signs: signs.to_vec() })
    }

    /// From the signed elements, e.g. `[-6, -4, -3, 1, 2, 5]`.
    pub fn from_elements(n: usize, elems: &[i64]) -> Result<Self, TypeCError> {
        let mut signs = vec![0; n.saturating_sub(1)];
        for &e in elems {
            let k = e.unsigned_abs() as usize;
            if k == 0 || k >= n || signs[k - 1] != 0 {
                return Err(TypeCError::BadSigning(format!("{elems:?}")));
            }
            signs[k - 1] = e.signum();
        }
        Self::new(n, &signs)
    }

    /// Reads the signing off a word in `s_0, …, s_{n−1}`: `+i` exactly when
    /// `s_{i−1}` comes before `s_i`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self, TypeCError> {
        if n < 3 {
            return Err(TypeCError::TooSmall(n));
        }
        let mut pos = vec![usize::MAX; n];
        if word.len() != n {
            return Err(TypeCError::BadWord(n));
        }
        for (k, &w) in word.iter().enumerate() {
            if w >= n || pos[w] != usize::MAX {
                return Err(TypeCError::BadWord(n));
            }
            pos[w] = k;
        }
        let signs: Vec<i64> = (1..n).map(|i| if pos[i - 1] < pos[i] { 1 } else { -1 }).collect();
        Self::new(n, &signs)
    }

    /// Every signing for this `n`.
    pub fn all(n: usize) -> Vec<Self> {
        (0..1u64 << (n - 1))
            .map(|mask| {
                let signs: Vec<i64> = (0..n - 1).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect();
                Self::new(n, &signs).expect("valid signs")
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self, i: usize) -> i64 {
        self.signs[i - 1]
    }

    /// The signed elements in increasing order.
    pub fn elements(&self) -> Vec<i64> {
        let mut e: Vec<i64> = (1..self.n).map(|i| self.signs[i - 1] * i as i64).collect();
        e.sort_unstable();
        e
    }

    /// A word for the Coxeter element: `s_{i−1}` is placed before `s_i` exactly
    /// when `i` is positive.
    pub fn word(&self) -> Vec<usize> {
        let n = self.n;
        let mut indeg = vec![0usize; n];
        let mut succ = vec![Vec::new(); n];
        for i in 1..n {
            let (a, b) = if self.signs[i - 1] > 0 { (i - 1, i) } else { (i, i - 1) };
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&k| indeg[k] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(k) = ready.pop_first() {
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

    /// The Coxeter element, with period `2n`.
    pub fn coxeter(&self) -> PeriodicPermutation {
        let n2 = 2 * self.n as i64;
        let a = self.elements();
        let mut next: BTreeMap<i64, i64> = BTreeMap::new();
        for (k, &x) in a.iter().enumerate() {
            let y = a.get(k + 1).copied().unwrap_or(a[0] + n2);
            next.insert(x, y);
            next.insert(-x, -y);
        }
        PeriodicPermutation::from_fn(2 * self.n, |i| {
            let r = residue(i, 2 * self.n);
            let (base, off) = if r > self.n as i64 { (r - n2, i - r + n2) } else { (r, i - r) };
            next.get(&base).map(|&y| y + off).unwrap_or(i)
        })
        .expect("valid window")
    }

    /// The folded Coxeter element of `S̃_{2n−2}`; its outer points are the
    /// folded signed elements.
    pub fn folded(&self) -> CoxeterElement {
        let outer: Vec<i64> = self.elements().iter().map(|&x| residue(fold(x, self.n), 2 * self.n - 2)).collect();
        CoxeterElement::new(2 * self.n - 2, &outer).expect("signing is a proper subset")
    }
}

/// `φ(π)(i) = −π(−i)`.
pub fn phi(p: &PeriodicPermutation) -> Result<PeriodicPermutation, TypeCError> {
    let n2 = p.n();
    if n2 % 2 != 0 {
        return Err(TypeCError::Period { expected: n2 + 1, found: n2 });
    }
    let n = (n2 / 2) as i64;
    if (1..=2).any(|k| p.apply(k * n) != k * n) {
        return Err(TypeCError::MovesMultiple);
    }
    Ok(PeriodicPermutation::from_fn(n2, |i| -p.apply(-i))?)
}

/// Whether `p` is an affine signed permutation: fixes multiples of `n`, `φ`-fixed.
pub fn is_signed(p: &PeriodicPermutation) -> bool {
    matches!(phi(p), Ok(q) if q == *p) && p.is_affine()
}

/// `s_0 = (−1 1)`, `s_i = ((i i+1))`, `s_{n−1} = (n−1 n+1)`, all with period `2n`.
pub fn simple_reflection_c(n: usize, i: usize) -> PeriodicPermutation {
    let n2 = 2 * n;
    let i64_ = i as i64;
    if i == 0 {
        PeriodicPermutation::reflection(n2, -1, 1).expect("n >= 3")
    } else if i == n - 1 {
        PeriodicPermutation::reflection(n2, i64_, i64_ + 2).expect("n >= 3")
    } else {
        let a = PeriodicPermutation::reflection(n2, i64_, i64_ + 1).expect("n >= 3");
        let b = PeriodicPermutation::reflection(n2, -i64_, -i64_ - 1).expect("n >= 3");
        &a * &b
    }
}

/// `s_{w_1} ⋯ s_{w_k}` in type C̃.
pub fn word_product_c(n: usize, word: &[usize]) -> PeriodicPermutation {
    word.iter()
        .fold(PeriodicPermutation::identity(2 * n), |acc, &i| &acc * &simple_reflection_c(n, i))
}

/// Order-preserving renumbering of the non-multiples of `n` onto `Z`.
pub fn fold(x: i64, n: usize) -> i64 {
    let n = n as i64;
    let (q, r) = (x.div_euclid(n), x.rem_euclid(n));
    assert!(r != 0, "multiples of n have no folded index");
    q * (n - 1) + r
}

/// Inverse of [`fold`].
pub fn unfold(k: i64, n: usize) -> i64 {
    let m = n as i64 - 1;
    let (q, r) = ((k - 1).div_euclid(m), (k - 1).rem_euclid(m) + 1);
    q * (n as i64) + r
}

/// The element of `S̃_{2n−2}` obtained by deleting the multiples of `n`.
pub fn fold_index(w: &PeriodicPermutation) -> Result<PeriodicPermutation, TypeCError> {
    let n = w.n() / 2;
    if w.n() % 2 != 0 || n < 3 {
        return Err(TypeCError::Period { expected: 2 * n.max(3), found: w.n() });
    }
    if (1..=2).any(|k| w.apply(k * n as i64) != k as i64 * n as i64) {
        return Err(TypeCError::MovesMultiple);
    }
    Ok(PeriodicPermutation::from_fn(2 * n - 2, |k| fold(w.apply(unfold(k, n)), n))?)
}

/// Inverse of [`fold_index`].
pub fn unfold_index(v: &PeriodicPermutation) -> Result<PeriodicPermutation, TypeCError> {
    let n = v.n() / 2 + 1;
    if v.n() % 2 != 0 || n < 3 {
        return Err(TypeCError::Period { expected: 4, found: v.n() });
    }
    Ok(PeriodicPermutation::from_fn(2 * n, |x| {
        if x.rem_euclid(n as i64) == 0 {
            x
        } else {
            unfold(v.apply(fold(x, n)), n)
        }
    })?)
}

/// Membership in the type C̃ interval below the Coxeter element of `s`.
pub fn is_member_c(w: &PeriodicPermutation, s: &Signing) -> bool {
    w.n() == 2 * s.n
        && is_signed(w)
        && fold_index(w).map(|f| interval::is_member(&f, &s.folded(), true)).unwrap_or(false)
}

/// `w ↦ w⁻¹ c`.
pub fn kreweras_c(w: &PeriodicPermutation, s: &Signing) -> PeriodicPermutation {
    &w.inverse() * &s.coxeter()
}

/// A reflection of C̃ with the reflections of the ambient group whose product it is.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CReflection {
    pub perm: PeriodicPermutation,
    pub orbit: Vec<PeriodicPermutation>,
}

impl CReflection {
    pub fn multiplicity(&self) -> usize {
        self.orbit.len()
    }
}

/// The `φ`-orbit of an ambient reflection `(a b)_{2n}` between non-multiples of `n`.
pub fn phi_orbit(t: &PeriodicPermutation) -> Result<Vec<PeriodicPermutation>, TypeCError> {
    let u = phi(t)?;
    Ok(if u == *t { vec![t.clone()] } else { vec![t.clone(), u] })
}

/// Recognizes a type C̃ reflection and returns its orbit decomposition.
pub fn as_reflection_c(p: &PeriodicPermutation) -> Result<CReflection, TypeCError> {
    if !is_signed(p) {
        return Err(TypeCError::NotReflection);
    }
    let d = p.decompose();
    let moved: Vec<&Vec<i64>> = d.nontrivial_finite().collect();
    if !d.infinite.is_empty() || moved.iter().any(|c| c.len() != 2) || moved.is_empty() || moved.len() > 2 {
        return Err(TypeCError::NotReflection);
    }
    let t = PeriodicPermutation::reflection(p.n(), moved[0][0], moved[0][1])?;
    let orbit = phi_orbit(&t)?;
    if orbit.len() != moved.len() {
        return Err(TypeCError::NotReflection);
    }
    Ok(CReflection { perm: p.clone(), orbit })
}

/// All reflections of C̃ exchanging lifts in `[−bound, bound]`.
pub fn reflections_c(n: usize, bound: i64) -> Vec<CReflection> {
    let n2 = 2 * n;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in (a + 1)..=bound {
            if a.rem_euclid(n as i64) == 0 || b.rem_euclid(n as i64) == 0 || residue(a, n2) == residue(b, n2) {
                continue;
            }
            let t = PeriodicPermutation::reflection(n2, a, b).expect("distinct residues");
            let orbit = phi_orbit(&t).expect("fixes multiples");
            let perm = orbit.iter().fold(PeriodicPermutation::identity(n2), |acc, x| &acc * x);
            if seen.insert(perm.clone()) {
                out.push(CReflection { perm, orbit });
            }
        }
    }
    out
}

/// Replaces each letter of a reduced word below `c` by its `φ`-orbit.
pub fn fold_lift_word(word: &[PeriodicPermutation], s: &Signing) -> Result<Vec<PeriodicPermutation>, TypeCError> {
    let mut lifted = Vec::new();
    for t in word {
        lifted.extend(as_reflection_c(t)?.orbit);
    }
    let prod = lifted.iter().fold(PeriodicPermutation::identity(2 * s.n), |acc, x| &acc * x);
    if !is_member_c(&prod, s) {
        return Err(TypeCError::NotReduced);
    }
    let len = fold_index(&prod)?.annular_length()?;
    if len != lifted.len() || rank_c(&prod, s)? != word.len() {
        return Err(TypeCError::NotReduced);
    }
    Ok(lifted)
}

/// A block of a noncrossing partition of the two-orbifold disk, stored as the
/// blocks of its preimage on the symmetric annulus (folded coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbifoldBlock {
    pub upstairs: Vec<Block>,
    pub orbifold_points: u8,
}

impl OrbifoldBlock {
    /// The enclosed orbifold points: `0` for the point at `0`, `1` for the point at `n`.
    pub fn enclosed(&self, n: usize) -> BTreeSet<u8> {
        match (self.orbifold_points, &self.upstairs[0]) {
            (2, _) => BTreeSet::from([0, 1]),
            (1, Block::Disk { lifts }) => {
                let sum: i64 = lifts.iter().map(|&k| unfold(k, n)).sum();
                let centre = sum / lifts.len() as i64;
                BTreeSet::from([(centre / n as i64).rem_euclid(2) as u8])
            }
            _ => BTreeSet::new(),
        }
    }

    /// Absolute values of the points in the block, in `1..n−1`.
    pub fn points(&self, n: usize) -> BTreeSet<i64> {
        let m = 2 * n - 2;
        self.upstairs
            .iter()
            .flat_map(|b| b.residues(m))
            .map(|k| {
                let x = residue(unfold(k, n), 2 * n);
                if x > n as i64 {
                    2 * n as i64 - x
                } else {
                    x
                }
            })
            .collect()
    }
}

/// A noncrossing partition of the two-orbifold disk.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbifoldDiagram {
    signing: Signing,
    blocks: Vec<OrbifoldBlock>,
}

fn phi_folded_block(c: &CoxeterElement, b: &Block) -> Block {
    match b {
        Block::Disk { lifts } => Block::disk(c, &lifts.iter().map(|&k| 1 - k).collect::<Vec<_>>()),
        Block::Annular { outer, inner } => {
            Block::annular(c, &outer.iter().chain(inner).map(|&k| 1 - k).collect::<Vec<_>>())
        }
    }
}

impl OrbifoldDiagram {
    /// Decodes a member by unfolding to the symmetric annulus and pairing
    /// blocks under `φ`.
    pub fn decode(w: &PeriodicPermutation, s: &Signing) -> Result<Self, TypeCError> {
        if !is_member_c(w, s) {
            return Err(TypeCError::NotMember(w.to_string()));
        }
        let fc = s.folded();
        let d = AnnularDiagram::decode(&fold_index(w)?, &fc)?;
        let mut used = BTreeSet::new();
        let mut blocks = Vec::new();
        for b in d.blocks() {
            if used.contains(b) {
                continue;
            }
            let image = phi_folded_block(&fc, b);
            used.insert(b.clone());
            used.insert(image.clone());
            let block = if image == *b {
                OrbifoldBlock { upstairs: vec![b.clone()], orbifold_points: if b.is_annular() { 2 } else { 1 } }
            } else {
                let mut up = vec![b.clone(), image];
                up.sort();
                OrbifoldBlock { upstairs: up, orbifold_points: 0 }
            };
            blocks.push(block);
        }
        blocks.sort();
        Ok(Self { signing: s.clone(), blocks })
    }

    pub fn blocks(&self) -> &[OrbifoldBlock] {
        &self.blocks
    }

    pub fn enclosed(&self) -> BTreeSet<u8> {
        self.blocks.iter().flat_map(|b| b.enclosed(self.signing.n)).collect()
    }

    pub fn orbifold_points(&self) -> usize {
        self.blocks.iter().map(|b| b.orbifold_points as usize).sum()
    }

    /// `(n−1) − #blocks + #orbifold points enclosed`.
    pub fn rank(&self) -> usize {
        self.signing.n - 1 - self.blocks.len() + self.orbifold_points()
    }

    /// The symmetric annular diagram upstairs.
    pub fn unfold(&self) -> Result<AnnularDiagram, TypeCError> {
        let blocks = self.blocks.iter().flat_map(|b| b.upstairs.iter().cloned()).collect();
        Ok(AnnularDiagram::from_blocks(&self.signing.folded(), blocks)?)
    }

    /// The signed permutation of the diagram.
    pub fn perm_c(&self) -> Result<PeriodicPermutation, TypeCError> {
        unfold_index(&self.unfold()?.encode())
    }
}

pub fn rank_c(w: &PeriodicPermutation, s: &Signing) -> Result<usize, TypeCError> {
    Ok(OrbifoldDiagram::decode(w, s)?.rank())
}

/// `ν_i = ((⋯ i i+2n ⋯))` for `i` in the signing.
pub fn translations_c(s: &Signing) -> Vec<PeriodicPermutation> {
    s.elements().iter().map(|&i| nu(s.n, i)).collect()
}

/// The translation `((⋯ i i+2n ⋯))`.
pub fn nu(n: usize, i: i64) -> PeriodicPermutation {
    &PeriodicPermutation::loop_at(2 * n, i, 1) * &PeriodicPermutation::loop_at(2 * n, -i, -1)
}

type Key = u128;

/// Reflection length in C̃ by breadth-first search over reflections with
/// lifts in a fixed window, met in the middle.
///
/// Lengths are upper bounds on the true reflection length; they are exact
/// whenever some reduced word uses only reflections inside the window. Lengths
/// up to `2·radius − 1` are found.
pub struct DirectLength {
    n: usize,
    gens: Vec<Vec<i64>>,
    ball: HashMap<Key, u8>,
    radius: u8,
    spheres: Vec<Vec<Key>>,
}

impl DirectLength {
    /// Precomputes the ball of radius `radius` over reflections with lifts in
    /// `[−bound, bound]`.
    pub fn new(n: usize, bound: i64, radius: u8) -> Self {
        let gens: Vec<Vec<i64>> = reflections_c(n, bound).iter().map(|r| Self::window(&r.perm)).collect();
        let id: Vec<i64> = (1..n as i64).collect();
        let mut ball = HashMap::new();
        ball.insert(Self::key(&id), 0u8);
        let mut spheres = vec![vec![Self::key(&id)]];
        for d in 1..=radius {
            let mut next = Vec::new();
            for &x in &spheres[d as usize - 1] {
                let x = Self::unkey(n, x);
                for g in &gens {
                    let k = Self::key(&Self::compose(n, g, &x));
                    if let std::collections::hash_map::Entry::Vacant(e) = ball.entry(k) {
                        e.insert(d);
                        next.push(k);
                    }
                }
            }
            if d < radius {
                spheres.push(next);
            }
        }
        Self { n, gens, ball, radius, spheres }
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn ball_size(&self) -> usize {
        self.ball.len()
    }

    fn window(p: &PeriodicPermutation) -> Vec<i64> {
        p.window()[..p.n() / 2 - 1].to_vec()
    }

    fn key(w: &[i64]) -> Key {
        w.iter().fold(0u128, |acc, &v| (acc << 16) | (v as i16 as u16) as u128)
    }

    fn unkey(n: usize, k: Key) -> Vec<i64> {
        (0..n - 1).rev().map(|b| (k >> (16 * b)) as u16 as i16 as i64).collect()
    }

    fn apply(n: usize, w: &[i64], x: i64) -> i64 {
        let (n64, n2) = (n as i64, 2 * n as i64);
        let r = x.rem_euclid(n2);
        let base = x - r;
        if r == 0 || r == n64 {
            x
        } else if r < n64 {
            base + w[(r - 1) as usize]
        } else {
            base + n2 - w[(n2 - r - 1) as usize]
        }
    }

    fn compose(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
        b.iter().map(|&x| Self::apply(n, a, x)).collect()
    }

    fn inverse(n: usize, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0; n - 1];
        let n2 = 2 * n as i64;
        for (k, &v) in a.iter().enumerate() {
            let i = k as i64 + 1;
            let r = v.rem_euclid(n2);
            let base = v - r;
            if (r as usize) < n {
                out[(r - 1) as usize] = i - base;
            } else {
                out[(n2 - r - 1) as usize] = n2 - i + base;
            }
        }
        out
    }

    /// The length of `w`, or `None` if it exceeds `max`.
    pub fn length(&self, w: &PeriodicPermutation, max: u8) -> Option<u8> {
        let ww = Self::window(w);
        if let Some(&d) = self.ball.get(&Self::key(&ww)) {
            return (d <= max).then_some(d);
        }
        for extra in 1..=max.saturating_sub(self.radius) {
            let Some(sphere) = self.spheres.get(extra as usize) else { break };
            for &x in sphere {
                let y = Self::compose(self.n, &Self::inverse(self.n, &Self::unkey(self.n, x)), &ww);
                if self.ball.contains_key(&Self::key(&y)) {
                    return Some(self.radius + extra);
                }
            }
        }
        None
    }

    /// Length additivity along `w`, `w⁻¹ c`.
    pub fn is_member(&self, w: &PeriodicPermutation, s: &Signing) -> bool {
        if !is_signed(w) {
            return false;
        }
        let n = s.n as u8;
        let rest = &w.inverse() * &s.coxeter();
        match self.length(w, n) {
            Some(a) => self.length(&rest, n - a) == Some(n - a),
            None => false,
        }
    }
}

/// Orbifold point counts read directly from the cycle structure with period
/// `2n`: a pair of distinct classes encloses none, a class equal to its own
/// negative encloses one, and the pair of infinite cycles encloses two.
pub fn orbifold_counts_from_cycles(w: &PeriodicPermutation) -> Vec<u8> {
    let n2 = w.n();
    let n = n2 / 2;
    let d = w.decompose();
    let mut out = Vec::new();
    let mut seen: HashSet<BTreeSet<i64>> = HashSet::new();
    for cyc in &d.finite {
        let res: BTreeSet<i64> = cyc.iter().map(|&x| residue(x, n2)).collect();
        if res.iter().any(|&r| r % n as i64 == 0) || seen.contains(&res) {
            continue;
        }
        let neg: BTreeSet<i64> = cyc.iter().map(|&x| residue(-x, n2)).collect();
        out.push(if neg == res { 1 } else { 0 });
        seen.insert(res);
        seen.insert(neg);
    }
    if !d.infinite.is_empty() {
        out.push(2);
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_cycles;

    fn running() -> Signing {
        Signing::from_word(7, &[6, 4, 3, 0, 1, 2, 5]).unwrap()
    }

    #[test]
    fn signing_of_the_running_example() {
        let s = running();
        assert_eq!(s.elements(), vec![-6, -4, -3, 1, 2, 5]);
        let c = s.coxeter();
        assert_eq!(c, parse_cycles("((... -6 -4 -3 1 2 5 8 ...))", 14).unwrap());
        assert_eq!(c, word_product_c(7, &[6, 4, 3, 0, 1, 2, 5]));
        assert!(is_signed(&c));
    }

    #[test]
    fn coxeter_elements_from_words() {
        for n in 3..=6 {
            for s in Signing::all(n) {
                let w = s.word();
                assert_eq!(Signing::from_word(n, &w).unwrap(), s);
                assert_eq!(word_product_c(n, &w), s.coxeter());
                assert_eq!(fold_index(&s.coxeter()).unwrap(), s.folded().to_permutation());
            }
        }
        let plus = Signing::new(5, &[1, 1, 1, 1]).unwrap();
        assert_eq!(plus.coxeter(), parse_cycles("((... 1 2 3 4 11 ...))", 10).unwrap());
    }

    #[test]
    fn phi_basics() {
        let id = PeriodicPermutation::identity(14);
        assert_eq!(phi(&id).unwrap(), id);
        let t = PeriodicPermutation::reflection(14, 1, 2).unwrap();
        assert_eq!(phi(&t).unwrap(), PeriodicPermutation::reflection(14, -1, -2).unwrap());
        assert_eq!(phi(&phi(&t).unwrap()).unwrap(), t);
        assert!(phi(&PeriodicPermutation::reflection(14, 1, 7).unwrap()).is_err());
    }

    #[test]
    fn folding_round_trip() {
        for x in -30..30 {
            if x % 7 != 0 {
                assert_eq!(unfold(fold(x, 7), 7), x);
            }
        }
        assert_eq!(fold_index(&PeriodicPermutation::identity(14)).unwrap(), PeriodicPermutation::identity(12));
        let s6 = simple_reflection_c(7, 6);
        assert_eq!(fold_index(&s6).unwrap(), PeriodicPermutation::reflection(12, 6, 7).unwrap());
        let c = running().coxeter();
        assert_eq!(unfold_index(&fold_index(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn example_elements_are_members() {
        let s = running();
        let cases = [
            ("((... 1 5 11 15 ...)) ((2))_14 ((4 6))_14", 5, vec![0, 0, 2]),
            ("(1 -1)_14 (2 8 12 6)_14 ((3 4))_14 ((5))_14", 4, vec![0, 0, 1, 1]),
            ("((1 -2))_14 ((5 8 4 3))_14", 4, vec![0, 0]),
            ("((1 2))_14 ((3))_14 ((4 33))_14 ((6 36))_14", 3, vec![0, 0, 0, 1]),
        ];
        for (text, r, counts) in cases {
            let w = parse_cycles(text, 14).unwrap();
            assert!(is_member_c(&w, &s), "{text}");
            let d = OrbifoldDiagram::decode(&w, &s).unwrap();
            assert_eq!(d.rank(), r, "{text}");
            let mut got: Vec<u8> = d.blocks().iter().map(|b| b.orbifold_points).collect();
            got.sort_unstable();
            assert_eq!(got, counts, "{text}");
            assert_eq!(orbifold_counts_from_cycles(&w), counts);
            assert_eq!(d.perm_c().unwrap(), w);
        }
        let p2 = parse_cycles("(1 -1)_14 (2 8 12 6)_14 ((3 4))_14 ((5))_14", 14).unwrap();
        assert_eq!(fold_index(&p2).unwrap().annular_length().unwrap(), 6);
        assert!(!is_member_c(&PeriodicPermutation::reflection(14, 1, 2).unwrap(), &s));
    }

    #[test]
    fn kreweras_swaps_enclosed_points() {
        let s = running();
        let p2 = parse_cycles("(1 -1)_14 (2 8 12 6)_14 ((3 4))_14 ((5))_14", 14).unwrap();
        let d = OrbifoldDiagram::decode(&p2, &s).unwrap();
        assert_eq!(d.enclosed(), BTreeSet::from([0, 1]));
        let one = parse_cycles("(1 -1)_14", 14).unwrap();
        assert_eq!(OrbifoldDiagram::decode(&one, &s).unwrap().enclosed(), BTreeSet::from([0]));
        let k = kreweras_c(&one, &s);
        assert_eq!(OrbifoldDiagram::decode(&k, &s).unwrap().enclosed(), BTreeSet::from([1]));
    }

    #[test]
    fn top_and_bottom_ranks() {
        let s = running();
        assert_eq!(rank_c(&PeriodicPermutation::identity(14), &s).unwrap(), 0);
        assert_eq!(rank_c(&s.coxeter(), &s).unwrap(), 7);
    }

    #[test]
    fn translations() {
        let s = running();
        let ts = translations_c(&s);
        assert_eq!(ts.len(), 6);
        for (t, i) in ts.iter().zip(s.elements()) {
            assert!(is_signed(t));
            assert!(is_member_c(t, &s), "{i}");
            assert_eq!(rank_c(t, &s).unwrap(), 2);
            assert!(!is_member_c(&nu(7, -i), &s));
        }
    }

    #[test]
    fn reflection_families() {
        let s0 = as_reflection_c(&simple_reflection_c(7, 0)).unwrap();
        assert_eq!(s0.multiplicity(), 1);
        let s1 = as_reflection_c(&simple_reflection_c(7, 1)).unwrap();
        assert_eq!(s1.multiplicity(), 2);
        assert_eq!(s1.perm, parse_cycles("((1 2))_14", 14).unwrap());
        for r in reflections_c(5, 10) {
            assert!(is_signed(&r.perm));
            assert!((&r.perm * &r.perm).is_identity());
            assert_eq!(as_reflection_c(&r.perm).unwrap(), r);
        }
    }

    #[test]
    fn lifting_simple_letters() {
        let s = running();
        assert_eq!(fold_lift_word(&[simple_reflection_c(7, 0)], &s).unwrap().len(), 1);
        assert_eq!(fold_lift_word(&[simple_reflection_c(7, 1)], &s).unwrap().len(), 2);
        let word: Vec<PeriodicPermutation> = [6, 4, 3, 0, 1, 2, 5].iter().map(|&i| simple_reflection_c(7, i)).collect();
        assert_eq!(fold_lift_word(&word, &s).unwrap().len(), 12);
        let bad = vec![simple_reflection_c(7, 1), simple_reflection_c(7, 1)];
        assert!(fold_lift_word(&bad, &s).is_err());
    }

    #[test]
    fn direct_length_small_cases() {
        let s = Signing::new(4, &[1, -1, 1]).unwrap();
        let oracle = DirectLength::new(4, 8, 3);
        assert_eq!(oracle.length(&PeriodicPermutation::identity(8), 4), Some(0));
        assert_eq!(oracle.length(&simple_reflection_c(4, 2), 4), Some(1));
        assert_eq!(oracle.length(&s.coxeter(), 4), Some(4));
        assert!(oracle.is_member(&s.coxeter(), &s));
        assert!(oracle.is_member(&simple_reflection_c(4, 0), &s));
    }
}
