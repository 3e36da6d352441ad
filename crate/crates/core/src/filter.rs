//! Three-stage filtering of the gapped repeats down to principal ones, and
//! the end-to-end search.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::lce::LceIndex;
use crate::pairs::{self, Frame, PairScan};
use crate::repeats::{
    compute_gapped_repeats, generated_repeats, reprincipal_repeats, AnnotatedRepeat, MaxRepeat, PositionLists,
    Provenance,
};
use crate::runs::{Run, RunSet};
use crate::word::{RationalDelta, Word};

/// Maximal δ-subrepetition `w[beg..=end]` with minimal period `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subrepetition {
    pub beg: u32,
    pub end: u32,
    pub period: u32,
}

impl Subrepetition {
    pub fn new(beg: u32, end: u32, period: u32) -> Self {
        Subrepetition { beg, end, period }
    }

    pub fn len(&self) -> u32 {
        self.end - self.beg + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Exponent `len / period` as a reduced fraction.
    pub fn exponent(&self) -> (u32, u32) {
        let (mut a, mut b) = (self.len(), self.period);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        (self.len() / a, self.period / a)
    }
}

/// Class of a period: `floor(log2 p)`, starting at 0 for `p = 1`.
pub fn class_of(period: u32) -> usize {
    (u32::BITS - 1 - period.leading_zeros()) as usize
}

/// Per-class staircases of `(period, end)` (ends strictly increase with
/// periods) and the running maxima `lep_i` of ends inserted into classes
/// `i - span ..= i - 1`.
#[derive(Debug, Clone)]
pub struct SweepState {
    trees: Vec<VecDeque<(u32, u32)>>,
    lep: Vec<u32>,
    span: usize,
    max_tree: usize,
}

impl SweepState {
    pub fn new(n: usize, delta: &RationalDelta) -> Self {
        let classes = class_of(n.max(1) as u32) + 1;
        let span = delta.ceil_log2_alpha() as usize;
        SweepState { trees: vec![VecDeque::new(); classes], lep: vec![0; classes + span + 1], span, max_tree: 0 }
    }

    /// Largest staircase size seen so far.
    pub fn max_tree(&self) -> usize {
        self.max_tree
    }

    pub fn tree(&self, class: usize) -> &VecDeque<(u32, u32)> {
        &self.trees[class]
    }

    pub fn lep(&self, class: usize) -> u32 {
        self.lep[class]
    }

    /// Drops entries ending at or before `t`; they sit at the front.
    pub fn expire(&mut self, t: u32) {
        for tree in &mut self.trees {
            while tree.front().is_some_and(|e| e.1 <= t) {
                tree.pop_front();
            }
        }
    }

    /// Whether a repeat starting at the current position with this period
    /// and end is covered by an inserted one.
    pub fn covered(&self, period: u32, end: u32) -> bool {
        let class = class_of(period);
        if end <= self.lep[class] {
            return true;
        }
        let tree = &self.trees[class];
        let i = tree.partition_point(|e| e.0 < period);
        i > 0 && tree[i - 1].1 >= end
    }

    pub fn insert(&mut self, period: u32, end: u32) -> Result<()> {
        let class = class_of(period);
        let tree = &mut self.trees[class];
        let i = tree.partition_point(|e| e.0 < period);
        if i > 0 && tree[i - 1].1 >= end {
            return Err(Error::InternalInvariant(format!(
                "insert of dominated entry (period {period}, end {end}) into class {class}"
            )));
        }
        while i < tree.len() && tree[i].1 <= end {
            tree.remove(i);
        }
        if i < tree.len() && tree[i].0 <= period {
            return Err(Error::InternalInvariant(format!(
                "staircase order broken at period {period}, end {end} in class {class}"
            )));
        }
        tree.insert(i, (period, end));
        self.max_tree = self.max_tree.max(tree.len());
        for lep in &mut self.lep[class + 1..=class + self.span] {
            *lep = (*lep).max(end);
        }
        Ok(())
    }
}

/// `GR' = GR \ CR`, `CR` the repeats generated by runs.
pub fn stage1_remove_generated(
    gr: &PositionLists<MaxRepeat>,
    runs: &[Run],
    delta: &RationalDelta,
) -> Result<PositionLists<MaxRepeat>> {
    let cr: Vec<AnnotatedRepeat> = runs.iter().flat_map(|r| generated_repeats(r, delta)).collect();
    let cr = PositionLists::build(gr.n(), cr)?;
    Ok(gr.difference(&cr))
}

/// Sweeps start positions left to right. Reprincipal repeats and surviving
/// alpha-nonperiodic gapped repeats enter the staircases; a gapped repeat
/// covered by an entry is dropped. `alpha_periodic[k]` marks entry `k` of
/// `gr`. Returns the survivors and the largest staircase size.
pub fn stage2_sweep(
    gr: &PositionLists<MaxRepeat>,
    alpha_periodic: &[bool],
    npr: &PositionLists<AnnotatedRepeat>,
    delta: &RationalDelta,
) -> Result<(PositionLists<MaxRepeat>, usize)> {
    let n = gr.n();
    let mut state = SweepState::new(n, delta);
    let mut kept = Vec::with_capacity(gr.len());
    let mut offset = 0;
    for t in 1..=n {
        state.expire(t as u32);
        let gapped = gr.bucket(t);
        let marks = &alpha_periodic[offset..offset + gapped.len()];
        offset += gapped.len();
        let repr = npr.bucket(t);
        let (mut i, mut j) = (0, 0);
        while i < gapped.len() || j < repr.len() {
            let take_repr = i == gapped.len() || (j < repr.len() && repr[j].repeat.period < gapped[i].period);
            if take_repr {
                let r = repr[j].repeat;
                state.insert(r.period, r.end())?;
                j += 1;
            } else {
                let r = gapped[i];
                if !state.covered(r.period, r.end()) {
                    kept.push(r);
                    if !marks[i] {
                        state.insert(r.period, r.end())?;
                    }
                }
                i += 1;
            }
        }
    }
    Ok((PositionLists::build(n, kept)?, state.max_tree()))
}

/// `GR* = GR'' \ BANR`.
pub fn stage3_remove_banr(gr: &PositionLists<MaxRepeat>, banr: &[AnnotatedRepeat]) -> Result<PositionLists<MaxRepeat>> {
    let banr = PositionLists::build(gr.n(), banr.to_vec())?;
    Ok(gr.difference(&banr))
}

pub fn to_subrepetitions(gr: &PositionLists<MaxRepeat>) -> Vec<Subrepetition> {
    gr.as_slice().iter().map(|r| Subrepetition::new(r.beg, r.end(), r.period)).collect()
}

/// Counters and timings of one search.
#[derive(Debug, Clone, Default)]
pub struct Stats {
    pub n: usize,
    pub runs: usize,
    pub gapped: usize,
    pub stage1: usize,
    pub alpha_periodic: usize,
    pub banr: usize,
    pub output: usize,
    pub max_tree: usize,
    pub max_alpha_close: usize,
    pub t_prepare: Duration,
    pub t_gapped: Duration,
    pub t_stage1: Duration,
    pub t_pairs: Duration,
    pub t_stage2: Duration,
    pub t_stage3: Duration,
}

/// Delta-independent precomputation for one word: LCE index, runs in both
/// frames, reprincipal and overlapped pair-represented repeats.
pub struct Finder {
    word: Word,
    rev: Word,
    idx: LceIndex,
    set: RunSet,
    rset: RunSet,
    pr: PositionLists<AnnotatedRepeat>,
    overlapped: Vec<AnnotatedRepeat>,
    t_prepare: Duration,
}

impl Finder {
    pub fn new(w: &Word) -> Result<Self> {
        let start = Instant::now();
        let idx = LceIndex::new(w);
        let set = RunSet::compute(w, &idx);
        let rev = w.reversed();
        let rset = set.reversed(&rev);
        let pr = PositionLists::build(w.len(), reprincipal_repeats(&set.runs))?;
        let overlapped = {
            let fwd = Frame { text: w.symbols(), set: &set, reversed: false };
            let bwd = Frame { text: rev.symbols(), set: &rset, reversed: true };
            pairs::overlapped_birepresented(&fwd, &bwd)?
        };
        Ok(Finder { word: w.clone(), rev, idx, set, rset, pr, overlapped, t_prepare: start.elapsed() })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn index(&self) -> &LceIndex {
        &self.idx
    }

    pub fn run_set(&self) -> &RunSet {
        &self.set
    }

    pub fn runs(&self) -> &[Run] {
        &self.set.runs
    }

    pub fn frames(&self) -> (Frame<'_>, Frame<'_>) {
        (
            Frame { text: self.word.symbols(), set: &self.set, reversed: false },
            Frame { text: self.rev.symbols(), set: &self.rset, reversed: true },
        )
    }

    /// The set `GR` for `delta`.
    pub fn gapped_repeats(&self, delta: &RationalDelta) -> Vec<MaxRepeat> {
        compute_gapped_repeats(&self.word, &self.idx, delta)
    }

    pub fn find(&self, delta: &RationalDelta) -> Result<Vec<Subrepetition>> {
        Ok(self.find_with_stats(delta)?.0)
    }

    pub fn find_with_stats(&self, delta: &RationalDelta) -> Result<(Vec<Subrepetition>, Stats)> {
        let n = self.word.len();
        let mut stats = Stats { n, runs: self.set.runs.len(), t_prepare: self.t_prepare, ..Stats::default() };

        let clock = Instant::now();
        let gr = PositionLists::build(n, self.gapped_repeats(delta))?;
        stats.gapped = gr.len();
        stats.t_gapped = clock.elapsed();

        let clock = Instant::now();
        let gr1 = stage1_remove_generated(&gr, &self.set.runs, delta)?;
        stats.stage1 = gr1.len();
        stats.t_stage1 = clock.elapsed();

        let clock = Instant::now();
        let (fwd, bwd) = self.frames();
        let mut scan = PairScan::default();
        pairs::scan_pairs(&fwd, delta, &mut scan)?;
        pairs::scan_pairs(&bwd, delta, &mut scan)?;
        stats.max_alpha_close = scan.max_alpha_close;
        // Generated repeats are gone after stage 1, so only pair-represented
        // ones can mark entries of GR'.
        let agr: Vec<AnnotatedRepeat> = scan.periodic.iter().filter(|r| r.is_alpha_periodic(delta)).copied().collect();
        stats.alpha_periodic = agr.len();
        let agr = PositionLists::build(n, agr)?;
        let marks = gr1.mark(&agr);
        let (_apr, npr) = pairs::alpha_periodic_reprincipal(&self.pr, &self.overlapped, delta)?;
        stats.t_pairs = clock.elapsed();

        let clock = Instant::now();
        let (gr2, max_tree) = stage2_sweep(&gr1, &marks, &npr, delta)?;
        stats.max_tree = max_tree;
        stats.t_stage2 = clock.elapsed();

        let clock = Instant::now();
        stats.banr = scan.banr.len();
        let gr3 = stage3_remove_banr(&gr2, &scan.banr)?;
        let out = to_subrepetitions(&gr3);
        stats.output = out.len();
        stats.t_stage3 = clock.elapsed();
        Ok((out, stats))
    }
}

/// All maximal δ-subrepetitions of `w`, sorted by `(beg, period)`.
pub fn find_subrepetitions(w: &Word, delta: &RationalDelta) -> Result<Vec<Subrepetition>> {
    Finder::new(w)?.find(delta)
}

/// As [`find_subrepetitions`], with `delta = num / den` checked first.
pub fn find_subrepetitions_ratio(w: &Word, num: u64, den: u64) -> Result<Vec<Subrepetition>> {
    find_subrepetitions(w, &RationalDelta::new(num, den)?)
}

/// Which provenance produced an annotated repeat; kept for reporting.
pub fn provenance_label(p: Provenance) -> &'static str {
    match p {
        Provenance::Generated => "generated",
        Provenance::LeftPair => "left-pair",
        Provenance::RightPair => "right-pair",
        Provenance::Reprincipal => "reprincipal",
    }
}
