//! Cycle notation for periodic permutations.
//!
//! Grammar, whitespace separated:
//!
//! - `(a1 a2 … ak)_n`: the finite cycle and all of its mod-`n` translates. The
//!   suffix may be written `_n` or `_{n}` and may be omitted.
//! - `(... a1 a2 … ak ...)`: an infinite cycle. The drift is read from a listed
//!   entry congruent to `a1`, or else inferred from the monotone direction of
//!   the listed entries.
//! - `((…))`: the cycle together with its negation, for signed permutations.
//! - `()` or an empty string: the identity.
//!
//! `...`, `⋯` and `…` are interchangeable, as are `-` and `−`.

use crate::perm::{residue, CycleDecomposition, PeriodicPermutation, PermError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Dots,
    Int(i64),
    Suffix(usize),
}

fn malformed(pos: usize, msg: impl Into<String>) -> PermError {
    PermError::Malformed { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PermError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = chars[k];
        match ch {
            c if c.is_whitespace() || c == ',' => k += 1,
            '(' => {
                out.push((pos, Tok::Open));
                k += 1;
            }
            ')' => {
                out.push((pos, Tok::Close));
                k += 1;
            }
            '⋯' | '…' => {
                out.push((pos, Tok::Dots));
                k += 1;
            }
            '.' => {
                let mut m = k;
                while m < chars.len() && chars[m].1 == '.' {
                    m += 1;
                }
                if m - k < 2 {
                    return Err(malformed(pos, "stray '.'"));
                }
                out.push((pos, Tok::Dots));
                k = m;
            }
            '_' => {
                k += 1;
                let braced = k < chars.len() && chars[k].1 == '{';
                if braced {
                    k += 1;
                }
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    k += 1;
                }
                if start == k {
                    return Err(malformed(pos, "expected period after '_'"));
                }
                let digits: String = chars[start..k].iter().map(|c| c.1).collect();
                if braced {
                    if k >= chars.len() || chars[k].1 != '}' {
                        return Err(malformed(pos, "unclosed '{' in period suffix"));
                    }
                    k += 1;
                }
                let value = digits.parse().map_err(|_| malformed(pos, "period out of range"))?;
                out.push((pos, Tok::Suffix(value)));
            }
            '-' | '−' | '+' | '0'..='9' => {
                let negative = ch == '-' || ch == '−';
                let signed = ch != '+' && !ch.is_ascii_digit();
                if signed || ch == '+' {
                    k += 1;
                }
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    k += 1;
                }
                if start == k {
                    return Err(malformed(pos, "sign without digits"));
                }
                let digits: String = chars[start..k].iter().map(|c| c.1).collect();
                let v: i64 = digits.parse().map_err(|_| malformed(pos, "integer out of range"))?;
                out.push((pos, Tok::Int(if negative { -v } else { v })));
            }
            _ => return Err(malformed(pos, format!("unexpected character {ch:?}"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum RawCycle {
    Finite(Vec<i64>),
    Infinite(Vec<i64>, i64),
}

#[derive(Debug)]
struct Group {
    cycle: RawCycle,
    doubled: bool,
}

fn infinite_from_listing(listing: &[i64], n: usize, pos: usize) -> Result<RawCycle, PermError> {
    let n64 = n as i64;
    let first = *listing.first().ok_or_else(|| malformed(pos, "empty infinite cycle"))?;
    let r0 = residue(first, n);
    if let Some(k) = listing.iter().skip(1).position(|&x| residue(x, n) == r0).map(|k| k + 1) {
        let drift = (listing[k] - first) / n64;
        if drift == 0 {
            return Err(PermError::Drift(format!("entry {first} repeats with no drift")));
        }
        for (t, &x) in listing.iter().enumerate().skip(k) {
            if x != listing[t - k] + drift * n64 {
                return Err(PermError::Drift(format!("entry {x} breaks the period")));
            }
        }
        return Ok(RawCycle::Infinite(listing[..k].to_vec(), drift));
    }
    let last = *listing.last().unwrap();
    let increasing = listing.windows(2).all(|w| w[0] < w[1]);
    let decreasing = listing.windows(2).all(|w| w[0] > w[1]);
    if listing.len() < 2 || (!increasing && !decreasing) {
        return Err(PermError::Drift(format!("cannot infer the entry following {last}")));
    }
    let next = if increasing {
        first + n64 * ((last - first).div_euclid(n64) + 1)
    } else {
        first - n64 * ((first - last).div_euclid(n64) + 1)
    };
    Ok(RawCycle::Infinite(listing.to_vec(), (next - first) / n64))
}

fn parse_groups(text: &str, n: usize) -> Result<Vec<Group>, PermError> {
    let toks = tokenize(text)?;
    let mut groups = Vec::new();
    let mut k = 0;
    while k < toks.len() {
        let (pos, ref t) = toks[k];
        if *t != Tok::Open {
            return Err(malformed(pos, "expected '('"));
        }
        k += 1;
        let doubled = matches!(toks.get(k), Some((_, Tok::Open)));
        if doubled {
            k += 1;
        }
        let mut ints = Vec::new();
        let mut dots = Vec::new();
        while let Some((p, t)) = toks.get(k) {
            match t {
                Tok::Int(v) => ints.push(*v),
                Tok::Dots => dots.push((*p, ints.len())),
                _ => break,
            }
            k += 1;
        }
        for _ in 0..(1 + doubled as usize) {
            match toks.get(k) {
                Some((_, Tok::Close)) => k += 1,
                _ => return Err(malformed(pos, "unclosed cycle")),
            }
        }
        if let Some((p, Tok::Suffix(m))) = toks.get(k) {
            if *m != n {
                return Err(PermError::SuffixMismatch { expected: n, found: *m });
            }
            let _ = p;
            k += 1;
        }
        let cycle = match dots.as_slice() {
            [] => RawCycle::Finite(ints),
            [(_, 0), (_, end)] if *end == ints.len() => infinite_from_listing(&ints, n, pos)?,
            _ => return Err(malformed(pos, "'...' must open and close an infinite cycle")),
        };
        if let RawCycle::Finite(v) = &cycle {
            if v.is_empty() && doubled {
                return Err(malformed(pos, "empty double cycle"));
            }
        }
        groups.push(Group { cycle, doubled });
    }
    Ok(groups)
}

fn negate(cycle: &RawCycle) -> RawCycle {
    match cycle {
        RawCycle::Finite(v) => RawCycle::Finite(v.iter().map(|x| -x).collect()),
        RawCycle::Infinite(v, q) => RawCycle::Infinite(v.iter().map(|x| -x).collect(), -q),
    }
}

/// Residue-level map `r ↦ π(r)` contributed by one cycle.
fn cycle_map(cycle: &RawCycle, n: usize) -> Result<Vec<(i64, i64)>, PermError> {
    let n64 = n as i64;
    let (entries, next_first) = match cycle {
        RawCycle::Finite(v) => (v.clone(), v.first().copied().unwrap_or(0)),
        RawCycle::Infinite(v, q) => (v.clone(), v[0] + q * n64),
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (k, &x) in entries.iter().enumerate() {
        let r = residue(x, n);
        if !seen.insert(r) {
            return Err(PermError::RepeatedResidue(r));
        }
        let y = if k + 1 < entries.len() { entries[k + 1] } else { next_first };
        out.push((r, y - (x - r)));
    }
    Ok(out)
}

/// Parses cycle notation with period `n`.
///
/// ```
/// use affnc::notation::{parse_cycles, print_cycles};
/// let c = parse_cycles("(... 3 4 7 10 ...)(... 6 5 2 1 -1 ...)", 7).unwrap();
/// assert_eq!(c.window(), &[-1, 1, 4, 7, 2, 5, 10]);
/// assert_eq!(parse_cycles(&print_cycles(&c), 7).unwrap(), c);
/// ```
pub fn parse_cycles(text: &str, n: usize) -> Result<PeriodicPermutation, PermError> {
    if n == 0 {
        return Err(PermError::ZeroPeriod);
    }
    let mut window: Vec<Option<i64>> = vec![None; n];
    for g in parse_groups(text, n)? {
        let mut maps = vec![cycle_map(&g.cycle, n)?];
        if g.doubled {
            let neg = cycle_map(&negate(&g.cycle), n)?;
            let mut a = maps[0].clone();
            let mut b = neg.clone();
            a.sort();
            b.sort();
            if a != b {
                maps.push(neg);
            }
        }
        for m in maps {
            for (r, y) in m {
                let slot = &mut window[(r - 1) as usize];
                if slot.is_some() {
                    return Err(PermError::RepeatedResidue(r));
                }
                *slot = Some(y);
            }
        }
    }
    let window = window.into_iter().enumerate().map(|(k, v)| v.unwrap_or(k as i64 + 1)).collect();
    PeriodicPermutation::new(n, window)
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Prints the nontrivial cycles of a decomposition; the identity prints as `()`.
pub fn print_decomposition(d: &CycleDecomposition) -> String {
    let mut parts = Vec::new();
    for cyc in &d.infinite {
        parts.push(format!("(... {} ...)", join(&cyc.closed_entries(d.n))));
    }
    for cyc in d.nontrivial_finite() {
        parts.push(format!("({})_{}", join(cyc), d.n));
    }
    if parts.is_empty() {
        "()".to_string()
    } else {
        parts.join(" ")
    }
}

/// Canonical cycle notation; `parse_cycles(&print_cycles(p), n) == p`.
pub fn print_cycles(p: &PeriodicPermutation) -> String {
    print_decomposition(&p.decompose())
}

/// Cycle notation for period `2n`, writing each pair of cycles exchanged by
/// `i ↦ −i` once, as `((⋯))`.
pub fn print_signed(p: &PeriodicPermutation) -> String {
    let d = p.decompose();
    let n = d.n;
    let negated = |v: &[i64]| -> Vec<i64> {
        let mut r: Vec<i64> = v.iter().map(|&x| residue(-x, n)).collect();
        r.sort_unstable();
        r
    };
    let residues = |v: &[i64]| -> Vec<i64> {
        let mut r: Vec<i64> = v.iter().map(|&x| residue(x, n)).collect();
        r.sort_unstable();
        r
    };
    let mut parts = Vec::new();
    let mut done: Vec<Vec<i64>> = Vec::new();
    let infinite: Vec<Vec<i64>> = d.infinite.iter().map(|c| c.closed_entries(n)).collect();
    for (entries, cyc) in infinite.iter().zip(&d.infinite) {
        let own = residues(&cyc.entries);
        if done.contains(&own) {
            continue;
        }
        let neg = negated(&cyc.entries);
        if neg != own && d.infinite.iter().any(|o| residues(&o.entries) == neg) {
            done.push(neg);
            parts.push(format!("((... {} ...))", join(entries)));
        } else {
            parts.push(format!("(... {} ...)", join(entries)));
        }
        done.push(own);
    }
    for cyc in d.nontrivial_finite() {
        let own = residues(cyc);
        if done.contains(&own) {
            continue;
        }
        let neg = negated(cyc);
        if neg != own {
            done.push(neg);
            parts.push(format!("(({}))_{}", join(cyc), n));
        } else {
            parts.push(format!("({})_{}", join(cyc), n));
        }
        done.push(own);
    }
    if parts.is_empty() {
        "()".to_string()
    } else {
        parts.join(" ")
    }
}
