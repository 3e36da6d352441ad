//! Maximal repeats: the gapped set `GR`, repeats generated by runs, the
//! reprincipal repeats, and start-position lists keyed by `(beg, period)`.

use crate::error::{Error, Result};
use crate::lce::LceIndex;
use crate::runs::Run;
use crate::word::{RationalDelta, Word};

/// Maximal repeat with copies `w[beg..beg+copy-1]` and
/// `w[beg+period..beg+period+copy-1]`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MaxRepeat {
    pub beg: u32,
    pub period: u32,
    pub copy: u32,
}

impl MaxRepeat {
    pub fn new(beg: u32, period: u32, copy: u32) -> Self {
        MaxRepeat { beg, period, copy }
    }

    pub fn end(&self) -> u32 {
        self.beg + self.period + self.copy - 1
    }

    pub fn is_gapped(&self) -> bool {
        self.copy < self.period
    }

    pub fn key(&self) -> (u32, u32) {
        (self.beg, self.period)
    }

    /// Coordinates of the same repeat in the reversed word of length `n`.
    pub fn reversed(&self, n: u32) -> Self {
        MaxRepeat { beg: n - self.end() + 1, ..*self }
    }

    /// `true` if `self` is covered by `other`: smaller period, fact contains ours.
    pub fn covered_by(&self, other: &MaxRepeat) -> bool {
        other.period < self.period && other.beg <= self.beg && other.end() >= self.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Generated,
    LeftPair,
    RightPair,
    Reprincipal,
}

/// Position of a pair-represented repeat in its sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepeatType {
    First,
    Second,
    ThirdDominating,
    ThirdNondominating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AnnotatedRepeat {
    pub repeat: MaxRepeat,
    /// Minimal period of the copies, when known.
    pub q: Option<u32>,
    pub provenance: Provenance,
    pub kind: Option<RepeatType>,
}

impl AnnotatedRepeat {
    pub fn is_periodic(&self) -> bool {
        self.q.is_some_and(|q| 3 * q <= self.repeat.copy)
    }

    pub fn is_alpha_periodic(&self, delta: &RationalDelta) -> bool {
        self.q.is_some_and(|q| delta.alpha_periodic(q, self.repeat.period))
    }
}

pub trait Keyed {
    fn key(&self) -> (u32, u32);
}

impl Keyed for MaxRepeat {
    fn key(&self) -> (u32, u32) {
        MaxRepeat::key(self)
    }
}

impl Keyed for AnnotatedRepeat {
    fn key(&self) -> (u32, u32) {
        self.repeat.key()
    }
}

/// All maximal alpha-gapped repeats (`c < p <= alpha * c`), sorted by
/// `(beg, period)`.
///
/// For each period the left copy of any repeat with `c >= L`, `L` the least
/// alpha-gapped copy length, contains a multiple of `L`; those anchors are
/// extended in both directions.
pub fn compute_gapped_repeats(w: &Word, idx: &LceIndex, delta: &RationalDelta) -> Vec<MaxRepeat> {
    let s = w.symbols();
    let n = s.len();
    let mut out = Vec::new();
    for p in 1..n {
        let l = delta.min_copy(p as u32) as usize;
        if l > n - p {
            // p grows faster than l
            break;
        }
        let mut q = 0usize;
        while q + p < n {
            if s[q] != s[q + p] {
                q += l;
                continue;
            }
            let right = idx.fwd(q, q + p);
            if right < p {
                let left = if q > 0 { idx.bwd(q - 1, q + p - 1) } else { 0 };
                let c = left + right;
                if c < p && delta.alpha_gapped(p as u32, c as u32) {
                    out.push(MaxRepeat::new((q - left + 1) as u32, p as u32, c as u32));
                }
            }
            q = ((q + right) / l + 1) * l;
        }
    }
    sort_by_key_radix(&mut out, n);
    out
}

fn sort_by_key_radix<T: Keyed + Copy>(items: &mut [T], n: usize) {
    if items.len() < 2 {
        return;
    }
    let buckets = n + 2;
    let mut tmp = items.to_vec();
    counting_pass(items, &mut tmp, buckets, |x| x.key().1);
    counting_pass(&tmp, items, buckets, |x| x.key().0);
}

fn counting_pass<T: Copy>(src: &[T], dst: &mut [T], buckets: usize, key: impl Fn(&T) -> u32) {
    let mut count = vec![0usize; buckets + 1];
    for x in src {
        count[key(x) as usize + 1] += 1;
    }
    for i in 1..count.len() {
        count[i] += count[i - 1];
    }
    for x in src {
        let k = key(x) as usize;
        dst[count[k]] = *x;
        count[k] += 1;
    }
}

/// Gapped alpha-gapped repeats spanning `r` with periods `j * p(r)`.
pub fn generated_repeats(r: &Run, delta: &RationalDelta) -> Vec<AnnotatedRepeat> {
    let mut out = Vec::new();
    let len = r.len();
    let mut period = r.period;
    while period < len {
        let copy = len - period;
        if copy < period && delta.alpha_gapped(period, copy) {
            out.push(AnnotatedRepeat {
                repeat: MaxRepeat::new(r.beg, period, copy),
                q: Some(r.period),
                provenance: Provenance::Generated,
                kind: None,
            });
        }
        period += r.period;
    }
    out
}

/// One overlapped repeat `(beg(r), p(r), |r| - p(r))` per run.
pub fn reprincipal_repeats(runs: &[Run]) -> Vec<AnnotatedRepeat> {
    runs.iter()
        .map(|r| AnnotatedRepeat {
            repeat: MaxRepeat::new(r.beg, r.period, r.len() - r.period),
            q: None,
            provenance: Provenance::Reprincipal,
            kind: None,
        })
        .collect()
}

/// Repeats bucketed by start position, periods strictly increasing within a
/// bucket. Stored flat in `(beg, period)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionLists<T> {
    n: usize,
    items: Vec<T>,
    starts: Vec<u32>,
}

impl<T: Keyed + Copy> PositionLists<T> {
    /// Two-pass bucket sort; `n` bounds every start position.
    pub fn build(n: usize, mut items: Vec<T>) -> Result<Self> {
        sort_by_key_radix(&mut items, n);
        Self::from_sorted(n, items)
    }

    fn from_sorted(n: usize, items: Vec<T>) -> Result<Self> {
        for pair in items.windows(2) {
            if pair[0].key() == pair[1].key() {
                let (beg, period) = pair[0].key();
                return Err(Error::DuplicateRepeat { beg, period });
            }
        }
        let mut starts = vec![0u32; n + 2];
        for x in &items {
            starts[x.key().0 as usize + 1] += 1;
        }
        for t in 1..starts.len() {
            starts[t] += starts[t - 1];
        }
        Ok(PositionLists { n, items, starts })
    }

    pub fn empty(n: usize) -> Self {
        PositionLists { n, items: Vec::new(), starts: vec![0; n + 2] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Repeats starting at `t` (1-based), by increasing period.
    pub fn bucket(&self, t: usize) -> &[T] {
        &self.items[self.starts[t] as usize..self.starts[t + 1] as usize]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.items
    }

    pub fn into_vec(self) -> Vec<T> {
        self.items
    }

    /// Entries of `self` whose key is absent from `other`.
    pub fn difference<U: Keyed>(&self, other: &PositionLists<U>) -> Self {
        let flags = self.mark(other);
        let items = self.items.iter().zip(flags).filter(|(_, f)| !f).map(|(x, _)| *x).collect();
        Self::from_sorted(self.n, items).expect("subset of a valid list")
    }

    /// Entries of `self` whose key is present in `other`.
    pub fn intersection<U: Keyed>(&self, other: &PositionLists<U>) -> Self {
        let flags = self.mark(other);
        let items = self.items.iter().zip(flags).filter(|(_, f)| *f).map(|(x, _)| *x).collect();
        Self::from_sorted(self.n, items).expect("subset of a valid list")
    }

    /// For each entry of `self`, whether `other` holds the same key.
    pub fn mark<U: Keyed>(&self, other: &PositionLists<U>) -> Vec<bool> {
        let mut flags = Vec::with_capacity(self.items.len());
        let b = &other.items;
        let mut j = 0;
        for x in &self.items {
            let k = x.key();
            while j < b.len() && b[j].key() < k {
                j += 1;
            }
            flags.push(j < b.len() && b[j].key() == k);
        }
        flags
    }

    /// Merged lists; for a key present in both, the entry of `self` is kept.
    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (&self.items, &other.items);
        let mut items = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].key() <= b[j].key()) {
                if j < b.len() && a[i].key() == b[j].key() {
                    j += 1;
                }
                items.push(a[i]);
                i += 1;
            } else {
                items.push(b[j]);
                j += 1;
            }
        }
        Self::from_sorted(self.n.max(other.n), items).expect("merge of valid lists")
    }
}
