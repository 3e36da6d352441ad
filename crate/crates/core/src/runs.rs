//! Maximal repetitions (runs), Lyndon offsets and same-root groups.
//!
//! Runs come from Lyndon arrays under both symbol orders: every run has a
//! Lyndon root that is the longest Lyndon word starting at its position for
//! one of the two orders, so extending each such candidate with LCE queries
//! finds all of them.

use crate::lce::{inverse, suffix_array, LceIndex};
use crate::word::{Symbol, Word};

/// A run `w[beg..=end]` with minimal period `period`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Run {
    pub beg: u32,
    pub end: u32,
    pub period: u32,
}

impl Run {
    pub fn new(beg: u32, end: u32, period: u32) -> Self {
        Run { beg, end, period }
    }

    pub fn len(&self) -> u32 {
        self.end - self.beg + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn exponent(&self) -> f64 {
        f64::from(self.len()) / f64::from(self.period)
    }
}

/// Runs of a word sorted by `(beg, end)`, computed without offsets or groups.
pub fn compute_runs(w: &Word, idx: &LceIndex) -> Vec<Run> {
    let s = w.symbols();
    let n = s.len();
    if n < 2 {
        return Vec::new();
    }
    let mut cands: Vec<Run> = Vec::new();
    collect_candidates(idx, idx.isa(), &mut cands);
    let max_sym = *s.iter().max().unwrap();
    let inverted: Vec<Symbol> = s.iter().map(|&c| max_sym - c).collect();
    let inv_isa = inverse(&suffix_array(&inverted));
    collect_candidates(idx, &inv_isa, &mut cands);
    cands.sort_unstable();
    cands.dedup();
    cands
}

fn collect_candidates(idx: &LceIndex, isa: &[u32], out: &mut Vec<Run>) {
    let n = isa.len();
    // nsv[i]: next j > i with a smaller suffix, i.e. i + |longest Lyndon prefix|.
    let mut nsv = vec![n as u32; n];
    let mut stack: Vec<u32> = Vec::new();
    for i in (0..n).rev() {
        while let Some(&top) = stack.last() {
            if isa[top as usize] > isa[i] {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = stack.last() {
            nsv[i] = top;
        }
        stack.push(i as u32);
    }
    for (i, &j) in nsv.iter().enumerate() {
        let j = j as usize;
        let p = j - i;
        let right = if j < n { idx.fwd(i, j) } else { 0 };
        if right >= p {
            // the candidate is not the leftmost root of its run
            continue;
        }
        let left = if i > 0 { idx.bwd(i - 1, j - 1) } else { 0 };
        if left + right >= p {
            let beg = i - left;
            let end = j + right - 1;
            out.push(Run::new(beg as u32 + 1, end as u32 + 1, p as u32));
        }
    }
}

/// Booth's algorithm: least index of a lexicographically least rotation.
pub fn least_rotation(s: &[Symbol]) -> usize {
    let n = s.len();
    if n <= 1 {
        return 0;
    }
    let mut fail = vec![-1i64; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != s[k % n] {
            if sj < s[k % n] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

/// Offset of the leftmost Lyndon root of `r` from `beg(r)`.
pub fn lyndon_offset(r: &Run, w: &Word) -> u32 {
    least_rotation(w.factor(r.beg as usize, (r.beg + r.period - 1) as usize)) as u32
}

/// Same-root classes. Group `g` owns `prsr[starts[g]..starts[g+1]]` (run ids
/// by increasing `beg`) and the same slice of `lrsr` (by `(len, beg)`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunGroups {
    pub group_of: Vec<u32>,
    pub starts: Vec<u32>,
    pub prsr: Vec<u32>,
    pub lrsr: Vec<u32>,
}

impl RunGroups {
    pub fn count(&self) -> usize {
        self.starts.len().saturating_sub(1)
    }

    fn range(&self, g: usize) -> std::ops::Range<usize> {
        self.starts[g] as usize..self.starts[g + 1] as usize
    }

    pub fn prsr(&self, g: usize) -> &[u32] {
        &self.prsr[self.range(g)]
    }

    pub fn lrsr(&self, g: usize) -> &[u32] {
        &self.lrsr[self.range(g)]
    }

    /// Builds PRSR/LRSR from `group_of`; `runs` must be sorted by `beg`.
    fn from_labels(runs: &[Run], group_of: Vec<u32>, groups: usize) -> Self {
        let mut starts = vec![0u32; groups + 1];
        for &g in &group_of {
            starts[g as usize + 1] += 1;
        }
        for g in 0..groups {
            starts[g + 1] += starts[g];
        }
        let mut fill = starts.clone();
        let mut prsr = vec![0u32; runs.len()];
        for (id, &g) in group_of.iter().enumerate() {
            prsr[fill[g as usize] as usize] = id as u32;
            fill[g as usize] += 1;
        }
        // Bucket sort by length, stable over the beg order.
        let max_len = runs.iter().map(|r| r.len()).max().unwrap_or(0) as usize;
        let mut count = vec![0u32; max_len + 2];
        for r in runs {
            count[r.len() as usize + 1] += 1;
        }
        for i in 1..count.len() {
            count[i] += count[i - 1];
        }
        let mut by_len = vec![0u32; runs.len()];
        for (id, r) in runs.iter().enumerate() {
            by_len[count[r.len() as usize] as usize] = id as u32;
            count[r.len() as usize] += 1;
        }
        let mut fill = starts.clone();
        let mut lrsr = vec![0u32; runs.len()];
        for id in by_len {
            let g = group_of[id as usize] as usize;
            lrsr[fill[g] as usize] = id;
            fill[g] += 1;
        }
        RunGroups { group_of, starts, prsr, lrsr }
    }
}

/// Runs with Lyndon offsets and groups, in one text frame.
#[derive(Debug, Clone, Default)]
pub struct RunSet {
    pub n: u32,
    pub runs: Vec<Run>,
    pub offsets: Vec<u32>,
    pub groups: RunGroups,
}

impl RunSet {
    pub fn compute(w: &Word, idx: &LceIndex) -> Self {
        let runs = compute_runs(w, idx);
        let offsets: Vec<u32> = runs.iter().map(|r| lyndon_offset(r, w)).collect();
        let (group_of, count) = group_labels(&runs, &offsets, idx);
        let groups = RunGroups::from_labels(&runs, group_of, count);
        RunSet { n: w.len() as u32, runs, offsets, groups }
    }

    /// The same runs seen in the reversed word `rev`, keeping group ids.
    pub fn reversed(&self, rev: &Word) -> Self {
        let n = self.n;
        let mut order: Vec<(Run, u32)> = self
            .runs
            .iter()
            .zip(&self.groups.group_of)
            .map(|(r, &g)| (Run::new(n - r.end + 1, n - r.beg + 1, r.period), g))
            .collect();
        order.sort_unstable();
        let runs: Vec<Run> = order.iter().map(|x| x.0).collect();
        let group_of: Vec<u32> = order.iter().map(|x| x.1).collect();
        let offsets: Vec<u32> = runs.iter().map(|r| lyndon_offset(r, rev)).collect();
        let groups = RunGroups::from_labels(&runs, group_of, self.groups.count());
        RunSet { n, runs, offsets, groups }
    }

    pub fn group_of(&self, id: usize) -> u32 {
        self.groups.group_of[id]
    }
}

/// Sorts runs by `(p, rank of the Lyndon root)` and merges neighbours whose
/// roots are equal.
fn group_labels(runs: &[Run], offsets: &[u32], idx: &LceIndex) -> (Vec<u32>, usize) {
    let isa = idx.isa();
    let root = |id: usize| (runs[id].beg + offsets[id] - 1) as usize;
    let mut order: Vec<u32> = (0..runs.len() as u32).collect();
    order.sort_unstable_by_key(|&id| (runs[id as usize].period, isa[root(id as usize)]));
    let mut labels = vec![0u32; runs.len()];
    let mut g = 0u32;
    for k in 0..order.len() {
        let id = order[k] as usize;
        if k > 0 {
            let prev = order[k - 1] as usize;
            let p = runs[id].period;
            let same = runs[prev].period == p && idx.fwd(root(prev), root(id)) >= p as usize;
            if !same {
                g += 1;
            }
        }
        labels[id] = g;
    }
    let count = if runs.is_empty() { 0 } else { g as usize + 1 };
    (labels, count)
}
