//! Periodic repeats represented by pairs of same-root runs.
//!
//! For runs `r' = [b1, e1]` and `r'' = [b2, e2]` of period `p` with
//! `b1 < b2` and `|r'| <= |r''|`, the represented repeats have periods in
//! one residue class mod `p`, and a repeat of period `P` has copy length
//! `c(P) = min(|r'|, P - D, M - P)` with `D = b2 - e1 - 1`, `M = e2 - b1 + 1`.
//! The three terms are the first-, second- and third-type phases of the
//! sequence. Pairs with `|r'| > |r''|` are handled in the reversed word.

use crate::error::{Error, Result};
use crate::repeats::{generated_repeats, AnnotatedRepeat, MaxRepeat, PositionLists, Provenance, RepeatType};
use crate::runs::{Run, RunSet};
use crate::word::{RationalDelta, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Left,
    Right,
}

/// A text frame: the word or its reversal, with the runs seen in it.
#[derive(Debug, Clone, Copy)]
pub struct Frame<'a> {
    pub text: &'a [Symbol],
    pub set: &'a RunSet,
    pub reversed: bool,
}

/// Shape of the sequence for one pair, for inspection and branch tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiSegment {
    /// Leftmost non-prefix root of `r'` equal to the prefix root of `r''`.
    pub f_prime: i64,
    /// Period of the first member.
    pub first_period: u32,
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
    /// Index range of the alpha-gapped members, 1-based, if any.
    pub alpha_range: Option<(u32, u32)>,
    /// Whether the first member is overlapped.
    pub first_overlapped: bool,
}

#[derive(Debug, Clone, Copy)]
struct Geometry {
    p: i64,
    b1: i64,
    e1: i64,
    b2: i64,
    e2: i64,
    l1: i64,
    d: i64,
    m: i64,
    p1: i64,
    phi: i64,
}

impl Geometry {
    fn copy(&self, big: i64) -> i64 {
        self.l1.min(big - self.d).min(self.m - big)
    }

    fn beg(&self, big: i64) -> i64 {
        self.b1.max(self.b2 - big)
    }

    /// Least member period `>= x`.
    fn up(&self, x: i64) -> i64 {
        x + (self.p1 - x).rem_euclid(self.p)
    }

    fn index(&self, big: i64) -> u32 {
        ((big - self.p1) / self.p + 1) as u32
    }

    /// Members with periods in `lo..=hi`.
    fn span(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> {
        let start = self.up(lo.max(self.p1));
        let hi = hi.min(self.phi);
        let step = self.p as usize;
        (start..=hi).step_by(step)
    }

    fn count(&self, lo: i64, hi: i64) -> u32 {
        let start = self.up(lo.max(self.p1));
        let hi = hi.min(self.phi);
        if start > hi {
            0
        } else {
            ((hi - start) / self.p + 1) as u32
        }
    }

    fn dominating(&self) -> i64 {
        self.up((self.e2 - self.e1).max(self.p1))
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// Two runs of one root class, `beg(r') < beg(r'')` and `|r'| <= |r''|` in
/// the context's frame.
#[derive(Debug, Clone, Copy)]
pub struct PairContext<'a> {
    text: &'a [Symbol],
    first: Run,
    second: Run,
    a1: u32,
    a2: u32,
    reversed: bool,
}

impl<'a> PairContext<'a> {
    pub fn new(frame: &Frame<'a>, id1: usize, id2: usize) -> Result<Self> {
        let set = frame.set;
        let (r1, r2) = (set.runs[id1], set.runs[id2]);
        if set.group_of(id1) != set.group_of(id2) || r1.period != r2.period {
            return Err(Error::PairMismatch("different root classes"));
        }
        if r1.beg >= r2.beg {
            return Err(Error::PairMismatch("first run must start before the second"));
        }
        if r1.len() > r2.len() {
            return Err(Error::PairMismatch("first run is longer; use the reversed frame"));
        }
        Ok(PairContext {
            text: frame.text,
            first: r1,
            second: r2,
            a1: set.offsets[id1],
            a2: set.offsets[id2],
            reversed: frame.reversed,
        })
    }

    /// `Left` for a left pair of the word, `Right` when this context lives
    /// in the reversed word.
    pub fn orientation(&self) -> Orientation {
        if self.reversed {
            Orientation::Right
        } else {
            Orientation::Left
        }
    }

    pub fn runs(&self) -> (Run, Run) {
        (self.first, self.second)
    }

    fn geometry(&self) -> Option<Geometry> {
        let p = i64::from(self.first.period);
        let (b1, e1) = (i64::from(self.first.beg), i64::from(self.first.end));
        let (b2, e2) = (i64::from(self.second.beg), i64::from(self.second.end));
        let l1 = e1 - b1 + 1;
        if l1 < 3 * p {
            return None;
        }
        let d = b2 - e1 - 1;
        let m = e2 - b1 + 1;
        let rho = ((b2 + i64::from(self.a2)) - (b1 + i64::from(self.a1))).rem_euclid(p);
        let lo = (d + 3 * p).max(1);
        let p1 = lo + (rho - lo).rem_euclid(p);
        let phi = m - 3 * p;
        if p1 > phi {
            return None;
        }
        Some(Geometry { p, b1, e1, b2, e2, l1, d, m, p1, phi })
    }

    /// Only the two boundary-aligned members can fail to be maximal: copies
    /// starting at `(b1, b2)` or ending at `(e1, e2)` may extend outside
    /// both runs at once.
    fn is_maximal(&self, g: &Geometry, big: i64) -> bool {
        let t = self.text;
        let n = t.len() as i64;
        let beg = g.beg(big);
        if beg == g.b1 && g.b1 + big == g.b2 && g.b1 > 1 && t[(g.b1 - 2) as usize] == t[(g.b2 - 2) as usize] {
            return false;
        }
        let last = beg + g.copy(big) - 1;
        if last == g.e1 && last + big == g.e2 && g.e2 < n && t[g.e1 as usize] == t[g.e2 as usize] {
            return false;
        }
        true
    }

    fn member(&self, g: &Geometry, big: i64) -> AnnotatedRepeat {
        let kind = if big < g.b2 - g.b1 {
            RepeatType::First
        } else if big < g.e2 - g.e1 {
            RepeatType::Second
        } else if big == g.dominating() {
            RepeatType::ThirdDominating
        } else {
            RepeatType::ThirdNondominating
        };
        let mut repeat = MaxRepeat::new(g.beg(big) as u32, big as u32, g.copy(big) as u32);
        let provenance = if self.reversed {
            repeat = repeat.reversed(self.text.len() as u32);
            Provenance::RightPair
        } else {
            Provenance::LeftPair
        };
        AnnotatedRepeat { repeat, q: Some(self.first.period), provenance, kind: Some(kind) }
    }

    fn emit(&self, g: &Geometry, lo: i64, hi: i64, out: &mut Vec<AnnotatedRepeat>) {
        for big in g.span(lo, hi) {
            if self.is_maximal(g, big) {
                out.push(self.member(g, big));
            }
        }
    }

    /// Period bounds of the alpha-gapped gapped members, one per phase.
    fn alpha_ranges(&self, g: &Geometry, delta: &RationalDelta) -> [(i64, i64); 3] {
        let (num, den) = (i128::from(delta.num()), i128::from(delta.den()));
        let split_b = g.b2 - g.b1;
        let split_e = g.e2 - g.e1;
        // c = P - D: gapped iff D > 0, then P * num <= (P - D) * den.
        let first = if g.d > 0 {
            let lo = ceil_div(i128::from(g.d) * den, den - num) as i64;
            (lo, split_b - 1)
        } else {
            (1, 0)
        };
        // c = |r'|: gapped iff P > |r'|, alpha-gapped iff P * num <= |r'| * den.
        let hi2 = (i128::from(g.l1) * den / num) as i64;
        let second = ((g.l1 + 1).max(split_b), hi2.min(split_e - 1));
        // c = M - P: gapped iff 2P > M, alpha-gapped iff P (num + den) <= M den.
        let hi3 = (i128::from(g.m) * den / (num + den)) as i64;
        let third = ((g.m / 2 + 1).max(split_e), hi3);
        [first, second, third]
    }

    /// Shape of the full sequence, before the maximality check.
    pub fn segment(&self, delta: &RationalDelta) -> Option<PsiSegment> {
        let g = self.geometry()?;
        let p = g.p;
        let f_prime = {
            let (b1, a1, a2) = (g.b1, i64::from(self.a1), i64::from(self.a2));
            if a1 > a2 {
                b1 + a1 - a2
            } else {
                b1 + a1 - a2 + p
            }
        };
        let split_b = g.b2 - g.b1;
        let split_e = g.e2 - g.e1;
        let k1 = g.count(g.p1, split_b - 1);
        let k2 = g.count(split_b, split_e - 1);
        let k3 = g.count(split_e, g.phi);
        let mut alpha_range: Option<(u32, u32)> = None;
        for (lo, hi) in self.alpha_ranges(&g, delta) {
            let start = g.up(lo.max(g.p1));
            let hi = hi.min(g.phi);
            if start <= hi {
                let last = start + (hi - start) / p * p;
                let (i, j) = (g.index(start), g.index(last));
                alpha_range = Some(match alpha_range {
                    None => (i, j),
                    Some((a, b)) => (a.min(i), b.max(j)),
                });
            }
        }
        Some(PsiSegment {
            f_prime,
            first_period: g.p1 as u32,
            k1,
            k2,
            k3,
            alpha_range,
            first_overlapped: g.copy(g.p1) >= g.p1,
        })
    }

    /// Every maximal represented repeat, in sequence order.
    pub fn psi_members(&self) -> Vec<AnnotatedRepeat> {
        let mut out = Vec::new();
        if let Some(g) = self.geometry() {
            self.emit(&g, g.p1, g.phi, &mut out);
        }
        out
    }

    /// The maximal alpha-gapped (hence gapped) represented repeats.
    pub fn psi_enumerate(&self, delta: &RationalDelta) -> Vec<AnnotatedRepeat> {
        let mut out = Vec::new();
        if let Some(g) = self.geometry() {
            for (lo, hi) in self.alpha_ranges(&g, delta) {
                self.emit(&g, lo, hi, &mut out);
            }
        }
        out
    }

    /// The alpha-gapped third-type members after the dominating slot.
    pub fn psi_nondominating(&self, delta: &RationalDelta) -> Vec<AnnotatedRepeat> {
        let mut out = Vec::new();
        if let Some(g) = self.geometry() {
            let (lo, hi) = self.alpha_ranges(&g, delta)[2];
            self.emit(&g, lo.max(g.dominating() + 1), hi, &mut out);
        }
        out
    }

    /// Members with `c >= P`; `c - P` never increases along the sequence.
    pub fn psi_overlapped(&self) -> Vec<AnnotatedRepeat> {
        let mut out = Vec::new();
        if let Some(g) = self.geometry() {
            let mut big = g.p1;
            while big <= g.phi && g.copy(big) >= big {
                if self.is_maximal(&g, big) {
                    out.push(self.member(&g, big));
                }
                big += g.p;
            }
        }
        out
    }
}

/// `beg* = n - end + 1`; period and copy length are unchanged.
pub fn reverse_map(r: &MaxRepeat, n: u32) -> MaxRepeat {
    r.reversed(n)
}

/// Calls `visit(r', r'')` for every pair of one class with `beg(r') <
/// beg(r'')`, `|r'| <= |r''|` and `beg(r'') - beg(r') <= alpha |r'|`.
/// Runs are taken in LRSR order and unlinked from their PRSR list once
/// processed, so each remaining successor is at least as long. Returns the
/// largest number of alpha-close successors seen for one run.
pub fn for_alpha_close_pairs(
    set: &RunSet,
    delta: &RationalDelta,
    strict: bool,
    mut visit: impl FnMut(usize, usize),
) -> usize {
    const NIL: u32 = u32::MAX;
    let groups = &set.groups;
    let mut next = vec![NIL; set.runs.len()];
    let mut prev = vec![NIL; set.runs.len()];
    for g in 0..groups.count() {
        for pair in groups.prsr(g).windows(2) {
            next[pair[0] as usize] = pair[1];
            prev[pair[1] as usize] = pair[0];
        }
    }
    let mut widest = 0;
    for g in 0..groups.count() {
        if groups.prsr(g).len() < 2 {
            continue;
        }
        for &id in groups.lrsr(g) {
            let r1 = set.runs[id as usize];
            let mut cur = next[id as usize];
            let mut close = 0;
            while cur != NIL {
                let r2 = set.runs[cur as usize];
                if !delta.alpha_close(r2.beg - r1.beg, r1.len()) {
                    break;
                }
                close += 1;
                if !(strict && r1.len() == r2.len()) {
                    visit(id as usize, cur as usize);
                }
                cur = next[cur as usize];
            }
            widest = widest.max(close);
            let (a, b) = (prev[id as usize], next[id as usize]);
            if a != NIL {
                next[a as usize] = b;
            }
            if b != NIL {
                prev[b as usize] = a;
            }
        }
    }
    widest
}

/// Repeats collected from the alpha-close pairs of both frames.
#[derive(Debug, Clone, Default)]
pub struct PairScan {
    /// Alpha-gapped periodic birepresented repeats.
    pub periodic: Vec<AnnotatedRepeat>,
    /// The nondominating third-type subset of `periodic`.
    pub banr: Vec<AnnotatedRepeat>,
    /// Largest alpha-close successor count observed.
    pub max_alpha_close: usize,
}

/// Scans one frame. In the reversed frame, equal-length pairs are skipped:
/// they are left pairs of the word and were seen in the forward frame.
pub fn scan_pairs(frame: &Frame, delta: &RationalDelta, out: &mut PairScan) -> Result<()> {
    let mut err = None;
    let widest = for_alpha_close_pairs(frame.set, delta, frame.reversed, |a, b| match PairContext::new(frame, a, b) {
        Ok(ctx) => {
            let members = ctx.psi_enumerate(delta);
            out.banr.extend(members.iter().filter(|m| m.kind == Some(RepeatType::ThirdNondominating)));
            out.periodic.extend(members);
        }
        Err(e) => err = Some(e),
    });
    out.max_alpha_close = out.max_alpha_close.max(widest);
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Alpha-gapped periodic repeats represented by pairs of one orientation.
pub fn birepresented_periodic(frame: &Frame, delta: &RationalDelta) -> Result<Vec<AnnotatedRepeat>> {
    let mut scan = PairScan::default();
    scan_pairs(frame, delta, &mut scan)?;
    Ok(scan.periodic)
}

/// The nondominating third-type alpha-gapped repeats of both orientations.
pub fn compute_banr(fwd: &Frame, bwd: &Frame, delta: &RationalDelta) -> Result<Vec<AnnotatedRepeat>> {
    let mut scan = PairScan::default();
    scan_pairs(fwd, delta, &mut scan)?;
    scan_pairs(bwd, delta, &mut scan)?;
    Ok(scan.banr)
}

/// Left and right birepresented repeats plus the generated repeats with
/// `3 p(r) <= c`: every maximal alpha-gapped periodic repeat.
pub fn all_periodic_gapped(fwd: &Frame, bwd: &Frame, delta: &RationalDelta) -> Result<Vec<AnnotatedRepeat>> {
    let mut out = birepresented_periodic(fwd, delta)?;
    out.extend(birepresented_periodic(bwd, delta)?);
    for r in &fwd.set.runs {
        out.extend(generated_repeats(r, delta).into_iter().filter(|g| g.is_periodic()));
    }
    Ok(out)
}

/// Overlapped represented repeats. Only PRSR neighbours can overlap or
/// touch, so only those pairs are inspected, each in the frame where it
/// is a left pair.
pub fn overlapped_birepresented(fwd: &Frame, bwd: &Frame) -> Result<Vec<AnnotatedRepeat>> {
    let mut out = Vec::new();
    for frame in [fwd, bwd] {
        let set = frame.set;
        for g in 0..set.groups.count() {
            for pair in set.groups.prsr(g).windows(2) {
                let (a, b) = (pair[0] as usize, pair[1] as usize);
                let (r1, r2) = (set.runs[a], set.runs[b]);
                if r2.beg > r1.end + 1 {
                    continue;
                }
                if r1.len() > r2.len() || (frame.reversed && r1.len() == r2.len()) {
                    continue;
                }
                out.extend(PairContext::new(frame, a, b)?.psi_overlapped());
            }
        }
    }
    Ok(out)
}

/// Splits the reprincipal repeats into the alpha-periodic ones (those that
/// are alpha-periodic overlapped birepresented repeats) and the rest.
pub fn alpha_periodic_reprincipal(
    pr: &PositionLists<AnnotatedRepeat>,
    overlapped: &[AnnotatedRepeat],
    delta: &RationalDelta,
) -> Result<(PositionLists<AnnotatedRepeat>, PositionLists<AnnotatedRepeat>)> {
    let periodic: Vec<AnnotatedRepeat> = overlapped.iter().filter(|r| r.is_alpha_periodic(delta)).copied().collect();
    let periodic = PositionLists::build(pr.n(), periodic)?;
    Ok((pr.intersection(&periodic), pr.difference(&periodic)))
}
