//! Block diagrams on the annulus.
//!
//! An element of `[1, c]_{T∪L}` is decoded into blocks: a finite cycle becomes a
//! disk given by its integer lifts, and the infinite cycles become a single
//! annular block given by its residues. Curves (arcs, boundary segments and
//! loops around the core) are recorded through integer lifts of their endpoints,
//! so winding is carried by lift differences.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::coxeter::CoxeterElement;
use crate::interval;
use crate::perm::{residue, Generator, PeriodicPermutation, PermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{0} is not in the interval below c")]
    NotMember(String),
    #[error("inconsistent lifts between residues {x} and {y}")]
    Inconsistent { x: i64, y: i64 },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("not a simple connector: {0}")]
    NotSimpleConnector(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Trivial,
    ArcOrSegment,
    Disk,
    DanglingAnnular,
    NonDanglingAnnular,
}

impl BlockKind {
    pub fn name(&self) -> &'static str {
        match self {
            BlockKind::Trivial => "trivial",
            BlockKind::ArcOrSegment => "arc",
            BlockKind::Disk => "disk",
            BlockKind::DanglingAnnular => "dangling-annular",
            BlockKind::NonDanglingAnnular => "annular",
        }
    }
}

/// One block of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// Lifts in boundary order: outer lifts ascending, then inner lifts
    /// descending. Rotated and translated so the smallest residue comes first
    /// and lies in `1..=n`.
    Disk { lifts: Vec<i64> },
    /// Residues on the outer and inner boundary, each sorted ascending.
    Annular { outer: Vec<i64>, inner: Vec<i64> },
}

impl Block {
    /// Builds a disk from a set of lifts with pairwise distinct residues.
    pub fn disk(c: &CoxeterElement, lifts: &[i64]) -> Self {
        let n = c.n();
        let mut outer: Vec<i64> = lifts.iter().copied().filter(|&x| c.is_outer(x)).collect();
        let mut inner: Vec<i64> = lifts.iter().copied().filter(|&x| !c.is_outer(x)).collect();
        outer.sort_unstable();
        inner.sort_unstable_by(|a, b| b.cmp(a));
        let mut order = outer;
        order.extend(inner);
        let start = (0..order.len()).min_by_key(|&k| residue(order[k], n)).unwrap_or(0);
        order.rotate_left(start);
        if let Some(&first) = order.first() {
            let t = residue(first, n) - first;
            order.iter_mut().for_each(|x| *x += t);
        }
        Block::Disk { lifts: order }
    }

    pub fn annular(c: &CoxeterElement, residues: &[i64]) -> Self {
        let set: BTreeSet<i64> = residues.iter().map(|&r| residue(r, c.n())).collect();
        let (outer, inner) = set.into_iter().partition(|&r| c.is_outer(r));
        Block::Annular { outer, inner }
    }

    pub fn kind(&self) -> BlockKind {
        match self {
            Block::Disk { lifts } => match lifts.len() {
                0 | 1 => BlockKind::Trivial,
                2 => BlockKind::ArcOrSegment,
                _ => BlockKind::Disk,
            },
            Block::Annular { outer, inner } => {
                if outer.is_empty() || inner.is_empty() {
                    BlockKind::DanglingAnnular
                } else {
                    BlockKind::NonDanglingAnnular
                }
            }
        }
    }

    pub fn is_annular(&self) -> bool {
        matches!(self, Block::Annular { .. })
    }

    /// Residues in `1..=n` occupied by the block.
    pub fn residues(&self, n: usize) -> BTreeSet<i64> {
        match self {
            Block::Disk { lifts } => lifts.iter().map(|&x| residue(x, n)).collect(),
            Block::Annular { outer, inner } => outer.iter().chain(inner).copied().collect(),
        }
    }

    /// Lift of residue `r` inside a disk block.
    fn lift_of(&self, r: i64, n: usize) -> Option<i64> {
        match self {
            Block::Disk { lifts } => lifts.iter().copied().find(|&x| residue(x, n) == r),
            Block::Annular { .. } => None,
        }
    }

    /// The lift lists of the block: one list for a disk, the outer and inner
    /// residues for an annular block.
    pub fn lift_lists(&self) -> Vec<Vec<i64>> {
        match self {
            Block::Disk { lifts } => vec![lifts.clone()],
            Block::Annular { outer, inner } => vec![outer.clone(), inner.clone()],
        }
    }
}

/// An arc or boundary segment between two lifts, or the loop around the core
/// based at a residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    /// `a ∈ 1..=n`, `a < b`, distinct residues.
    Chord { a: i64, b: i64 },
    SelfLoop { r: i64 },
}

impl Curve {
    pub fn chord(n: usize, a: i64, b: i64) -> Result<Self, DiagramError> {
        match Generator::reflection(n, a, b)? {
            Generator::Reflection { i, j } => Ok(Curve::Chord { a: i, b: j }),
            Generator::Loop { .. } => unreachable!(),
        }
    }

    pub fn self_loop(n: usize, r: i64) -> Self {
        Curve::SelfLoop { r: residue(r, n) }
    }

    /// Whether the curve can be drawn without self-crossing for this `c`.
    pub fn is_valid(&self, c: &CoxeterElement) -> bool {
        match *self {
            Curve::Chord { a, b } => c.is_outer(a) != c.is_outer(b) || b - a < c.n() as i64,
            Curve::SelfLoop { .. } => true,
        }
    }

    /// The rank-one element of the interval carried by the curve.
    pub fn element(&self, c: &CoxeterElement) -> PeriodicPermutation {
        let n = c.n();
        match *self {
            Curve::Chord { a, b } => Generator::Reflection { i: a, j: b }.to_perm(n),
            Curve::SelfLoop { r } => PeriodicPermutation::loop_at(n, r, if c.is_outer(r) { 1 } else { -1 }),
        }
    }

    /// Reads a curve back from a rank-one element.
    pub fn from_element(p: &PeriodicPermutation) -> Option<Self> {
        match Generator::from_perm(p)? {
            Generator::Reflection { i, j } => Some(Curve::Chord { a: i, b: j }),
            Generator::Loop { i, .. } => Some(Curve::SelfLoop { r: i }),
        }
    }
}

impl std::fmt::Display for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Curve::Chord { a, b } => write!(f, "chord({a},{b})"),
            Curve::SelfLoop { r } => write!(f, "loop({r})"),
        }
    }
}

/// Whether `curve` lies in `block`.
pub fn curve_contains(c: &CoxeterElement, block: &Block, curve: &Curve) -> bool {
    let n = c.n();
    let n64 = n as i64;
    match (block, *curve) {
        (Block::Disk { .. }, Curve::SelfLoop { .. }) => false,
        (Block::Disk { lifts }, Curve::Chord { a, b }) => lifts.iter().any(|&x| {
            residue(x, n) == a && {
                let shift = x - a;
                lifts.contains(&(b + shift))
            }
        }),
        (Block::Annular { .. }, Curve::SelfLoop { r }) => block.residues(n).contains(&r),
        (Block::Annular { .. }, Curve::Chord { a, b }) => {
            let res = block.residues(n);
            res.contains(&a) && res.contains(&residue(b, n)) && (c.is_outer(a) != c.is_outer(b) || b - a < n64)
        }
    }
}

/// A small set of curves of the block whose join recovers the block.
pub fn generating_curves(c: &CoxeterElement, block: &Block) -> Vec<Curve> {
    let n = c.n();
    match block {
        Block::Disk { lifts } if lifts.len() >= 2 => {
            let k = lifts.len();
            let mut out: BTreeSet<Curve> = BTreeSet::new();
            for t in 0..k {
                let (x, y) = (lifts[t], lifts[(t + 1) % k]);
                out.insert(Curve::chord(n, x, y).expect("distinct residues"));
            }
            out.into_iter().collect()
        }
        Block::Disk { .. } => Vec::new(),
        Block::Annular { outer, inner } => outer.iter().chain(inner).map(|&r| Curve::SelfLoop { r }).collect(),
    }
}

/// The block decomposition of an interval element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnularDiagram {
    c: CoxeterElement,
    blocks: Vec<Block>,
}

impl AnnularDiagram {
    /// Assembles a diagram from blocks, which must cover `1..=n` exactly once.
    pub fn from_blocks(c: &CoxeterElement, mut blocks: Vec<Block>) -> Result<Self, DiagramError> {
        let n = c.n();
        let mut seen = BTreeSet::new();
        let mut annular = 0;
        for b in &blocks {
            annular += b.is_annular() as usize;
            for r in b.residues(n) {
                if !seen.insert(r) {
                    return Err(DiagramError::InvalidCurve(format!("residue {r} in two blocks")));
                }
            }
        }
        if seen.len() != n || annular > 1 {
            return Err(DiagramError::InvalidCurve("blocks do not partition the points".into()));
        }
        blocks.sort();
        Ok(Self { c: c.clone(), blocks })
    }

    /// Decodes an element of `[1, c]_{T∪L}`.
    pub fn decode(p: &PeriodicPermutation, c: &CoxeterElement) -> Result<Self, DiagramError> {
        if !interval::is_member(p, c, false) {
            return Err(DiagramError::NotMember(p.to_string()));
        }
        let d = p.decompose();
        let mut blocks: Vec<Block> = d.finite.iter().map(|cyc| Block::disk(c, cyc)).collect();
        if !d.infinite.is_empty() {
            let res: Vec<i64> = d.infinite.iter().flat_map(|i| i.residues(c.n())).collect();
            blocks.push(Block::annular(c, &res));
        }
        Self::from_blocks(c, blocks)
    }

    pub fn coxeter(&self) -> &CoxeterElement {
        &self.c
    }

    pub fn n(&self) -> usize {
        self.c.n()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn annular_block(&self) -> Option<&Block> {
        self.blocks.iter().find(|b| b.is_annular())
    }

    pub fn has_dangling(&self) -> bool {
        self.blocks.iter().any(|b| b.kind() == BlockKind::DanglingAnnular)
    }

    /// `n` minus the number of non-annular blocks.
    pub fn rank(&self) -> usize {
        self.n() - self.blocks.iter().filter(|b| !b.is_annular()).count()
    }

    fn block_of(&self, r: i64) -> &Block {
        let n = self.n();
        self.blocks.iter().find(|b| b.residues(n).contains(&residue(r, n))).expect("blocks cover all residues")
    }

    /// Rebuilds the permutation: disks become finite cycles in boundary order,
    /// outer residues of the annular block an increasing cycle and inner
    /// residues a decreasing one.
    pub fn encode(&self) -> PeriodicPermutation {
        let n = self.n();
        let n64 = n as i64;
        let mut window: Vec<i64> = (1..=n64).collect();
        let mut set = |x: i64, y: i64| {
            let r = residue(x, n);
            window[(r - 1) as usize] = y - (x - r);
        };
        for b in &self.blocks {
            match b {
                Block::Disk { lifts } => {
                    for t in 0..lifts.len() {
                        set(lifts[t], lifts[(t + 1) % lifts.len()]);
                    }
                }
                Block::Annular { outer, inner } => {
                    for (t, &x) in outer.iter().enumerate() {
                        set(x, outer.get(t + 1).copied().unwrap_or(outer[0] + n64));
                    }
                    let desc: Vec<i64> = inner.iter().rev().copied().collect();
                    for (t, &x) in desc.iter().enumerate() {
                        set(x, desc.get(t + 1).copied().unwrap_or(desc[0] - n64));
                    }
                }
            }
        }
        PeriodicPermutation::new(n, window).expect("blocks partition the residues")
    }

    pub fn contains_curve(&self, curve: &Curve) -> bool {
        self.blocks.iter().any(|b| curve_contains(&self.c, b, curve))
    }

    /// Generating curves of all blocks.
    pub fn generating_curves(&self) -> Vec<Curve> {
        self.blocks.iter().flat_map(|b| generating_curves(&self.c, b)).collect()
    }

    /// Every curve of the diagram whose lift difference is at most `max_diff`.
    pub fn curves_within(&self, max_diff: i64) -> BTreeSet<Curve> {
        all_curves(&self.c, max_diff).into_iter().filter(|k| self.contains_curve(k)).collect()
    }

    /// JSON rendering `{"n": .., "blocks": [{"kind": .., "lifts": [[..], ..]}, ..]}`.
    pub fn to_json(&self) -> String {
        let mut s = format!("{{\"n\": {}, \"blocks\": [", self.n());
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let lists: Vec<String> = b
                .lift_lists()
                .iter()
                .map(|l| format!("[{}]", l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            let _ = write!(s, "{{\"kind\": \"{}\", \"lifts\": [{}]}}", b.kind().name(), lists.join(","));
        }
        s.push_str("]}");
        s
    }
}

/// All valid curves with lift difference at most `max_diff`.
pub fn all_curves(c: &CoxeterElement, max_diff: i64) -> Vec<Curve> {
    let n = c.n() as i64;
    let mut out: Vec<Curve> = (1..=n).map(|r| Curve::SelfLoop { r }).collect();
    for a in 1..=n {
        for b in (a + 1)..=(a + max_diff) {
            if residue(b, c.n()) != a {
                let k = Curve::Chord { a, b };
                if k.is_valid(c) {
                    out.push(k);
                }
            }
        }
    }
    out
}

/// Whether every curve of `d1` is a curve of `d2`.
pub fn curve_subset(d1: &AnnularDiagram, d2: &AnnularDiagram) -> bool {
    d1.blocks.iter().all(|b| {
        let gens = generating_curves(&d1.c, b);
        gens.is_empty() || d2.blocks.iter().any(|b2| gens.iter().all(|k| curve_contains(&d2.c, b2, k)))
    })
}

/// Lift offset of `y` relative to `x` forced by a disk containing both.
fn disk_offset(b: &Block, x: i64, y: i64, n: usize) -> Option<i64> {
    Some((b.lift_of(y, n)? - y) - (b.lift_of(x, n)? - x))
}

/// The diagram whose curve set is the intersection of the two curve sets.
pub fn meet_reconstruct(d1: &AnnularDiagram, d2: &AnnularDiagram) -> Result<AnnularDiagram, DiagramError> {
    let c = &d1.c;
    let n = c.n();
    let n64 = n as i64;
    let ann = |d: &AnnularDiagram| d.annular_block().map(|b| b.residues(n)).unwrap_or_default();
    let (r1, r2) = (ann(d1), ann(d2));
    let core: Vec<i64> = r1.intersection(&r2).copied().collect();
    let rest: Vec<i64> = (1..=n64).filter(|r| !core.contains(r)).collect();

    let allowed = |b: &Block, x: i64, y: i64, off: i64| match b {
        Block::Disk { .. } => disk_offset(b, x, y, n) == Some(off),
        Block::Annular { .. } => c.is_outer(x) != c.is_outer(y) || (y + off - x).abs() < n64,
    };

    // union-find with offsets: lift(y) - y = lift(x) - x + rel
    let mut parent: BTreeMap<i64, (i64, i64)> = rest.iter().map(|&r| (r, (r, 0))).collect();
    fn find(p: &mut BTreeMap<i64, (i64, i64)>, x: i64) -> (i64, i64) {
        let (q, off) = p[&x];
        if q == x {
            return (x, 0);
        }
        let (root, o2) = find(p, q);
        p.insert(x, (root, off + o2));
        (root, off + o2)
    }
    for (k, &x) in rest.iter().enumerate() {
        for &y in &rest[k + 1..] {
            let (b1, b2) = (d1.block_of(x), d2.block_of(x));
            if b1 != d1.block_of(y) || b2 != d2.block_of(y) {
                continue;
            }
            let off = match (disk_offset(b1, x, y, n), disk_offset(b2, x, y, n)) {
                (Some(o), _) | (None, Some(o)) => o,
                (None, None) => return Err(DiagramError::Inconsistent { x, y }),
            };
            if !allowed(b1, x, y, off) || !allowed(b2, x, y, off) {
                continue;
            }
            let (rx, ox) = find(&mut parent, x);
            let (ry, oy) = find(&mut parent, y);
            if rx == ry {
                if oy - ox != off {
                    return Err(DiagramError::Inconsistent { x, y });
                }
            } else {
                parent.insert(ry, (rx, ox + off - oy));
            }
        }
    }
    let mut comps: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for &x in &rest {
        let (root, off) = find(&mut parent, x);
        comps.entry(root).or_default().push(x + off);
    }
    let mut blocks: Vec<Block> = comps.values().map(|lifts| Block::disk(c, lifts)).collect();
    if !core.is_empty() {
        blocks.push(Block::annular(c, &core));
    }
    AnnularDiagram::from_blocks(c, blocks)
}

/// Adds the curve `kappa` to `d`: the smallest diagram above `d` containing
/// it, which must cover `d`.
pub fn simple_connector_augment(d: &AnnularDiagram, kappa: &Curve) -> Result<AnnularDiagram, DiagramError> {
    let c = &d.c;
    if !kappa.is_valid(c) {
        return Err(DiagramError::InvalidCurve(kappa.to_string()));
    }
    if d.contains_curve(kappa) {
        return Err(DiagramError::NotSimpleConnector(format!("{kappa} already lies in a block")));
    }
    let p = d.encode();
    let joined = interval::join(&p, &kappa.element(c), c).map_err(|e| DiagramError::NotMember(e.to_string()))?;
    let out = AnnularDiagram::decode(&joined, c)?;
    if out.rank() != d.rank() + 1 {
        return Err(DiagramError::NotSimpleConnector(format!(
            "{kappa} raises the rank from {} to {}",
            d.rank(),
            out.rank()
        )));
    }
    debug_assert!(Generator::from_perm(&(&joined * &p.inverse())).is_some());
    Ok(out)
}

/// Options for [`render_svg`].
#[derive(Debug, Clone)]
pub struct SvgOptions {
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub margin: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self { outer_radius: 100.0, inner_radius: 40.0, margin: 20.0 }
    }
}

/// Draws the diagram: numbered points on two concentric circles, disks as
/// closed curved paths, the annular block as a band around the hole.
pub fn render_svg(d: &AnnularDiagram, opts: &SvgOptions) -> String {
    let c = &d.c;
    let n = c.n();
    let size = 2.0 * (opts.outer_radius + opts.margin);
    let mid = size / 2.0;
    let pos = |x: i64| -> (f64, f64) {
        let r = residue(x, n);
        let rad = if c.is_outer(r) { opts.outer_radius } else { opts.inner_radius };
        let t = 2.0 * std::f64::consts::PI * (r - 1) as f64 / n as f64;
        (mid + rad * t.sin(), mid - rad * t.cos())
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size:.0}\" height=\"{size:.0}\" viewBox=\"0 0 {size:.0} {size:.0}\">"
    );
    for r in [opts.outer_radius, opts.inner_radius] {
        let _ = writeln!(
            s,
            "  <circle class=\"boundary\" cx=\"{mid:.2}\" cy=\"{mid:.2}\" r=\"{r:.2}\" fill=\"none\" stroke=\"black\"/>"
        );
    }
    let band = (opts.outer_radius + opts.inner_radius) / 2.0;
    let toward_band = |(x, y): (f64, f64)| {
        let (dx, dy) = (x - mid, y - mid);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        (mid + dx / len * band, mid + dy / len * band)
    };
    for b in &d.blocks {
        match b {
            Block::Disk { lifts } if lifts.len() >= 2 => {
                let pts: Vec<(f64, f64)> = lifts.iter().map(|&x| pos(x)).collect();
                let mut path = format!("M {:.2} {:.2}", pts[0].0, pts[0].1);
                for k in 0..pts.len() {
                    let (a, e) = (pts[k], pts[(k + 1) % pts.len()]);
                    let (ca, ce) = (toward_band(a), toward_band(e));
                    let _ = write!(path, " C {:.2} {:.2} {:.2} {:.2} {:.2} {:.2}", ca.0, ca.1, ce.0, ce.1, e.0, e.1);
                }
                let _ = writeln!(
                    s,
                    "  <path class=\"block {}\" d=\"{path} Z\" fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"#3182bd\"/>",
                    b.kind().name()
                );
            }
            Block::Disk { .. } => {}
            Block::Annular { outer, inner } => {
                let _ = writeln!(
                    s,
                    "  <circle class=\"block {}\" cx=\"{mid:.2}\" cy=\"{mid:.2}\" r=\"{band:.2}\" fill=\"none\" stroke=\"#e6550d\" stroke-width=\"8\" stroke-opacity=\"0.6\"/>",
                    b.kind().name()
                );
                for &r in outer.iter().chain(inner) {
                    let (p, q) = (pos(r), toward_band(pos(r)));
                    let _ = writeln!(
                        s,
                        "  <line class=\"spoke\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#e6550d\" stroke-width=\"4\"/>",
                        p.0, p.1, q.0, q.1
                    );
                }
            }
        }
    }
    for r in 1..=n as i64 {
        let (x, y) = pos(r);
        let _ = writeln!(s, "  <circle class=\"point\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>");
        let _ = writeln!(
            s,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"middle\">{r}</text>",
            x,
            y - 6.0
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_cycles;

    fn running() -> CoxeterElement {
        CoxeterElement::new(7, &[3, 4, 7]).unwrap()
    }

    fn p(text: &str) -> PeriodicPermutation {
        parse_cycles(text, 7).unwrap()
    }

    #[test]
    fn decode_examples() {
        let c = running();
        let p2 = p("(... 1 -5 -6 ...)(... 3 4 7 10 ...)(5 6)_7");
        let d2 = AnnularDiagram::decode(&p2, &c).unwrap();
        assert_eq!(d2.annular_block(), Some(&Block::Annular { outer: vec![3, 4, 7], inner: vec![1, 2] }));
        assert!(d2.blocks().contains(&Block::Disk { lifts: vec![5, 6] }));
        assert!(!d2.has_dangling());
        assert_eq!(d2.encode(), p2);

        let p3 = p("(1 -1 -2)_7 (2)_7 (3)_7 (... 4 7 11 ...)");
        let d3 = AnnularDiagram::decode(&p3, &c).unwrap();
        assert!(d3.has_dangling());
        assert_eq!(d3.annular_block().unwrap().kind(), BlockKind::DanglingAnnular);
        assert_eq!(d3.encode(), p3);

        let id = AnnularDiagram::decode(&PeriodicPermutation::identity(7), &c).unwrap();
        assert!(id.blocks().iter().all(|b| b.kind() == BlockKind::Trivial));
        assert!(!id.has_dangling());
    }

    #[test]
    fn disk_contains_its_chords() {
        let c = running();
        let p1 = p("(1 -7 -4)_7 (2 -3)_7 (5)_7 (6)_7");
        let d1 = AnnularDiagram::decode(&p1, &c).unwrap();
        assert!(d1.contains_curve(&Curve::chord(7, 1, -7).unwrap()));
        assert!(d1.contains_curve(&Curve::chord(7, 8, 0).unwrap()));
        assert!(!d1.contains_curve(&Curve::chord(7, 1, 0).unwrap()));
        assert!(!d1.contains_curve(&Curve::self_loop(7, 1)));
        assert_eq!(d1.encode(), p1);
        let trivial = Block::Disk { lifts: vec![5] };
        assert!(all_curves(&c, 14).iter().all(|k| !curve_contains(&c, &trivial, k)));
    }

    #[test]
    fn annular_block_contains_cross_chords_at_every_winding() {
        let c = running();
        let d2 = AnnularDiagram::decode(&p("(... 1 -5 -6 ...)(... 3 4 7 10 ...)(5 6)_7"), &c).unwrap();
        assert!(d2.contains_curve(&Curve::self_loop(7, 3)));
        for k in -4..=4 {
            assert!(d2.contains_curve(&Curve::chord(7, 3, 1 + 7 * k).unwrap()));
        }
        assert!(d2.contains_curve(&Curve::chord(7, 3, 7).unwrap()));
        assert!(!d2.contains_curve(&Curve::chord(7, 3, 14).unwrap()));
    }

    #[test]
    fn curve_order_of_the_examples() {
        let c = running();
        let d1 = AnnularDiagram::decode(&p("(1 -7 -4)_7 (2 -3)_7 (5)_7 (6)_7"), &c).unwrap();
        let d2 = AnnularDiagram::decode(&p("(... 1 -5 -6 ...)(... 3 4 7 10 ...)(5 6)_7"), &c).unwrap();
        let d3 = AnnularDiagram::decode(&p("(1 -1 -2)_7 (2)_7 (3)_7 (... 4 7 11 ...)"), &c).unwrap();
        assert!(curve_subset(&d1, &d2));
        assert!(!curve_subset(&d2, &d1));
        for (a, b) in [(&d1, &d3), (&d3, &d1), (&d2, &d3), (&d3, &d2)] {
            assert!(!curve_subset(a, b));
        }
        for d in [&d1, &d2, &d3] {
            assert!(curve_subset(d, d));
            assert_eq!(meet_reconstruct(d, d).unwrap(), *d);
        }
    }

    #[test]
    fn augmenting_the_trivial_diagram() {
        let c = running();
        let id = AnnularDiagram::decode(&PeriodicPermutation::identity(7), &c).unwrap();
        let arc = simple_connector_augment(&id, &Curve::chord(7, 1, 3).unwrap()).unwrap();
        assert_eq!(arc.encode(), PeriodicPermutation::reflection(7, 1, 3).unwrap());
        let lp = simple_connector_augment(&id, &Curve::self_loop(7, 3)).unwrap();
        assert_eq!(lp.encode(), PeriodicPermutation::loop_at(7, 3, 1));
        assert!(lp.has_dangling());
        assert!(simple_connector_augment(&arc, &Curve::chord(7, 1, 3).unwrap()).is_err());
    }

    #[test]
    fn svg_is_deterministic_and_counts_blocks() {
        let c = running();
        let d3 = AnnularDiagram::decode(&p("(1 -1 -2)_7 (2)_7 (3)_7 (... 4 7 11 ...)"), &c).unwrap();
        let a = render_svg(&d3, &SvgOptions::default());
        assert_eq!(a, render_svg(&d3, &SvgOptions::default()));
        assert_eq!(a.matches("class=\"block dangling-annular\"").count(), 1);
        assert_eq!(a.matches("class=\"block disk\"").count(), 1);
        assert_eq!(a.matches("class=\"point\"").count(), 7);
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        let id = AnnularDiagram::decode(&PeriodicPermutation::identity(7), &c).unwrap();
        let s = render_svg(&id, &SvgOptions::default());
        assert_eq!(s.matches("class=\"boundary\"").count(), 2);
        assert_eq!(s.matches("class=\"block").count(), 0);
    }
}
