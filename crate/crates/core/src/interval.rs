//! The intervals `[1, c]_{T∪L}` and `[1, c]_T`.
//!
//! Membership and rank come from the cycle structure: for annular `p`, the
//! `T ∪ L`-length is `n` minus the number of finite classes. Order and meet go
//! through block diagrams; join is reduced to meet by the Kreweras complement.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::coxeter::CoxeterElement;
use crate::diagram::{curve_subset, meet_reconstruct, AnnularDiagram, DiagramError};
use crate::perm::{ascent_generators, PeriodicPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("{0} is not in the interval below c")]
    NotMember(String),
    #[error("enumeration exceeded its budget of {0} elements")]
    Budget(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn length(p: &PeriodicPermutation) -> Option<usize> {
    p.annular_length().ok()
}

/// Membership in `[1, c]_{T∪L}`, or in `[1, c]_T` when `restricted`.
pub fn is_member(p: &PeriodicPermutation, c: &CoxeterElement, restricted: bool) -> bool {
    if p.n() != c.n() {
        return false;
    }
    let k = kreweras(p, c);
    let full = matches!((length(p), length(&k)), (Some(a), Some(b)) if a + b == c.n());
    if !full || !restricted {
        return full;
    }
    // an annular block is dangling exactly when it has a single infinite cycle
    p.decompose().infinite.len() != 1
}

fn require(p: &PeriodicPermutation, c: &CoxeterElement) -> Result<(), IntervalError> {
    if is_member(p, c, false) {
        Ok(())
    } else {
        Err(IntervalError::NotMember(p.to_string()))
    }
}

pub fn rank(p: &PeriodicPermutation, c: &CoxeterElement) -> Result<usize, IntervalError> {
    require(p, c)?;
    Ok(c.n() - p.finite_class_count())
}

/// `p ↦ p⁻¹ c`.
pub fn kreweras(p: &PeriodicPermutation, c: &CoxeterElement) -> PeriodicPermutation {
    &p.inverse() * &c.to_permutation()
}

/// `p ↦ c p⁻¹`, the inverse of [`kreweras`].
pub fn kreweras_inv(p: &PeriodicPermutation, c: &CoxeterElement) -> PeriodicPermutation {
    &c.to_permutation() * &p.inverse()
}

/// Order by containment of curve sets.
pub fn leq(u: &PeriodicPermutation, w: &PeriodicPermutation, c: &CoxeterElement) -> Result<bool, IntervalError> {
    let du = AnnularDiagram::decode(u, c)?;
    let dw = AnnularDiagram::decode(w, c)?;
    Ok(curve_subset(&du, &dw))
}

/// Order by additivity of `T ∪ L`-length along `u`, `u⁻¹w`.
pub fn leq_by_length(u: &PeriodicPermutation, w: &PeriodicPermutation) -> bool {
    let d = &u.inverse() * w;
    matches!((length(u), length(&d), length(w)), (Some(a), Some(b), Some(x)) if a + b == x)
}

pub fn meet(u: &PeriodicPermutation, w: &PeriodicPermutation, c: &CoxeterElement) -> Result<PeriodicPermutation, IntervalError> {
    let du = AnnularDiagram::decode(u, c)?;
    let dw = AnnularDiagram::decode(w, c)?;
    Ok(meet_reconstruct(&du, &dw)?.encode())
}

pub fn join(u: &PeriodicPermutation, w: &PeriodicPermutation, c: &CoxeterElement) -> Result<PeriodicPermutation, IntervalError> {
    let m = meet(&kreweras(u, c), &kreweras(w, c), c)?;
    Ok(kreweras_inv(&m, c))
}

/// Elements covered by `w`, using generators of winding at most `bound`.
pub fn covers_down(w: &PeriodicPermutation, c: &CoxeterElement, bound: u64) -> Result<Vec<PeriodicPermutation>, IntervalError> {
    require(w, c)?;
    let gens = ascent_generators(w, bound).map_err(|_| IntervalError::NotMember(w.to_string()))?;
    Ok(gens.iter().map(|g| &g.to_perm(c.n()) * w).collect())
}

/// Elements covering `u` inside the interval, via the Kreweras complement.
pub fn covers_up(u: &PeriodicPermutation, c: &CoxeterElement, bound: u64) -> Result<Vec<PeriodicPermutation>, IntervalError> {
    Ok(covers_down(&kreweras(u, c), c, bound)?.iter().map(|x| kreweras_inv(x, c)).collect())
}

/// All members of winding at most `winding`, found by walking covers in both
/// directions from the identity.
///
/// Fails once more than `budget` elements have been found.
pub fn bounded_universe(
    c: &CoxeterElement,
    winding: u64,
    budget: usize,
) -> Result<BTreeSet<PeriodicPermutation>, IntervalError> {
    let id = PeriodicPermutation::identity(c.n());
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        let mut next = covers_down(&w, c, winding + 2)?;
        next.extend(covers_up(&w, c, winding + 2)?);
        for u in next {
            if u.winding() <= winding && seen.insert(u.clone()) {
                if seen.len() > budget {
                    return Err(IntervalError::Budget(budget));
                }
                queue.push_back(u);
            }
        }
    }
    Ok(seen)
}

fn minimal(set: &[PeriodicPermutation]) -> Vec<PeriodicPermutation> {
    set.iter()
        .filter(|m| !set.iter().any(|x| x != *m && leq_by_length(x, m)))
        .cloned()
        .collect()
}

fn maximal(set: &[PeriodicPermutation]) -> Vec<PeriodicPermutation> {
    set.iter()
        .filter(|m| !set.iter().any(|x| x != *m && leq_by_length(m, x)))
        .cloned()
        .collect()
}

/// Minimal common upper bounds of `u` and `w` among members of `universe`
/// lying in `[1, c]_T`.
pub fn minimal_upper_bounds_restricted<'a>(
    u: &PeriodicPermutation,
    w: &PeriodicPermutation,
    c: &CoxeterElement,
    universe: impl IntoIterator<Item = &'a PeriodicPermutation>,
) -> Vec<PeriodicPermutation> {
    let ups: Vec<PeriodicPermutation> = universe
        .into_iter()
        .filter(|m| is_member(m, c, true) && leq_by_length(u, m) && leq_by_length(w, m))
        .cloned()
        .collect();
    minimal(&ups)
}

/// Maximal common lower bounds of `u` and `w` among members of `universe`.
pub fn maximal_lower_bounds<'a>(
    u: &PeriodicPermutation,
    w: &PeriodicPermutation,
    universe: impl IntoIterator<Item = &'a PeriodicPermutation>,
) -> Vec<PeriodicPermutation> {
    let downs: Vec<PeriodicPermutation> =
        universe.into_iter().filter(|m| leq_by_length(m, u) && leq_by_length(m, w)).cloned().collect();
    maximal(&downs)
}

/// Rank-one members whose generator has winding at most `bound`.
pub fn atoms(c: &CoxeterElement, bound: u64) -> Vec<PeriodicPermutation> {
    crate::perm::generators_within(c.n(), bound)
        .iter()
        .map(|g| g.to_perm(c.n()))
        .filter(|p| is_member(p, c, false))
        .collect()
}
