//! Longest common extensions through suffix arrays, LCP and a sparse-table
//! RMQ, built over the word and over its reversal.

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// Suffix array by prefix doubling with counting sorts, `O(n log n)`.
/// A proper prefix sorts before its extensions.
pub fn suffix_array(s: &[Symbol]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let max_sym = *s.iter().max().unwrap() as usize;
    let mut sa: Vec<u32> = Vec::with_capacity(n);
    let mut rank: Vec<u32> = vec![0; n];
    {
        let mut count = vec![0u32; max_sym + 2];
        for &c in s {
            count[c as usize + 1] += 1;
        }
        for i in 1..count.len() {
            count[i] += count[i - 1];
        }
        sa.resize(n, 0);
        let mut pos = count.clone();
        for (i, &c) in s.iter().enumerate() {
            sa[pos[c as usize] as usize] = i as u32;
            pos[c as usize] += 1;
        }
        let mut r = 0u32;
        for k in 0..n {
            if k > 0 && s[sa[k] as usize] != s[sa[k - 1] as usize] {
                r += 1;
            }
            rank[sa[k] as usize] = r;
        }
        if r as usize == n - 1 {
            return sa;
        }
    }

    let mut tmp: Vec<u32> = vec![0; n];
    let mut new_rank: Vec<u32> = vec![0; n];
    let mut count: Vec<u32> = vec![0; n + 1];
    let mut k = 1usize;
    loop {
        // Order by the second key: suffixes with no second half first, then
        // the rest in the order of their second half.
        let mut t = 0;
        for i in n.saturating_sub(k)..n {
            tmp[t] = i as u32;
            t += 1;
        }
        for &p in sa.iter() {
            if p as usize >= k {
                tmp[t] = p - k as u32;
                t += 1;
            }
        }
        // Stable counting sort by the first key.
        count.iter_mut().for_each(|c| *c = 0);
        for &r in rank.iter() {
            count[r as usize + 1] += 1;
        }
        for i in 1..=n {
            count[i] += count[i - 1];
        }
        for &p in tmp.iter() {
            let r = rank[p as usize] as usize;
            sa[count[r] as usize] = p;
            count[r] += 1;
        }
        let key = |i: usize| -> (u32, i64) {
            let second = if i + k < n { i64::from(rank[i + k]) } else { -1 };
            (rank[i], second)
        };
        let mut r = 0u32;
        new_rank[sa[0] as usize] = 0;
        for j in 1..n {
            if key(sa[j] as usize) != key(sa[j - 1] as usize) {
                r += 1;
            }
            new_rank[sa[j] as usize] = r;
        }
        std::mem::swap(&mut rank, &mut new_rank);
        if r as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

pub fn inverse(sa: &[u32]) -> Vec<u32> {
    let mut isa = vec![0u32; sa.len()];
    for (r, &p) in sa.iter().enumerate() {
        isa[p as usize] = r as u32;
    }
    isa
}

/// Kasai et al.: `lcp[r]` is the LCP of suffixes `sa[r-1]` and `sa[r]`,
/// `lcp[0] = 0`.
pub fn lcp_array(s: &[Symbol], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = isa[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

struct SparseTable {
    levels: Vec<Vec<u32>>,
}

impl SparseTable {
    fn new(base: Vec<u32>) -> Self {
        let n = base.len();
        let mut levels = vec![base];
        let mut width = 1;
        while 2 * width <= n {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=n - 2 * width).map(|i| prev[i].min(prev[i + width])).collect();
            levels.push(next);
            width *= 2;
        }
        SparseTable { levels }
    }

    /// Minimum over `lo..=hi`.
    #[inline]
    fn min(&self, lo: usize, hi: usize) -> u32 {
        let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let level = &self.levels[k];
        level[lo].min(level[hi + 1 - (1 << k)])
    }
}

struct Side {
    text: Vec<Symbol>,
    sa: Vec<u32>,
    isa: Vec<u32>,
    rmq: SparseTable,
}

impl Side {
    fn new(text: Vec<Symbol>) -> Self {
        let sa = suffix_array(&text);
        let isa = inverse(&sa);
        let lcp = lcp_array(&text, &sa, &isa);
        Side { text, sa, isa, rmq: SparseTable::new(lcp) }
    }

    #[inline]
    fn lce(&self, i: usize, j: usize) -> usize {
        let n = self.text.len();
        if i == j {
            return n - i;
        }
        // Most extensions in practice are short; scan a few symbols first.
        let lim = (n - i.max(j)).min(16);
        let t = &self.text;
        let mut k = 0;
        while k < lim {
            if t[i + k] != t[j + k] {
                return k;
            }
            k += 1;
        }
        if k == n - i.max(j) {
            return k;
        }
        let (a, b) = (self.isa[i] as usize, self.isa[j] as usize);
        let (lo, hi) = if a < b { (a + 1, b) } else { (b + 1, a) };
        self.rmq.min(lo, hi) as usize
    }
}

/// LCE index over `w` and its reversal.
pub struct LceIndex {
    fwd: Side,
    bwd: Side,
}

impl LceIndex {
    pub fn new(w: &Word) -> Self {
        let fwd = Side::new(w.symbols().to_vec());
        let bwd = Side::new(w.reversed().symbols().to_vec());
        LceIndex { fwd, bwd }
    }

    pub fn len(&self) -> usize {
        self.fwd.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fwd.text.is_empty()
    }

    pub fn text(&self) -> &[Symbol] {
        &self.fwd.text
    }

    /// Suffix array of `w`, 0-based.
    pub fn sa(&self) -> &[u32] {
        &self.fwd.sa
    }

    /// Inverse suffix array of `w`, 0-based.
    pub fn isa(&self) -> &[u32] {
        &self.fwd.isa
    }

    /// Forward extension at 0-based `i`, `j`.
    #[inline]
    pub fn fwd(&self, i: usize, j: usize) -> usize {
        self.fwd.lce(i, j)
    }

    /// Backward extension ending at 0-based `i`, `j`.
    #[inline]
    pub fn bwd(&self, i: usize, j: usize) -> usize {
        let n = self.len();
        self.bwd.lce(n - 1 - i, n - 1 - j)
    }

    fn check(&self, pos: usize) -> Result<()> {
        if pos == 0 || pos > self.len() {
            return Err(Error::Position { pos, len: self.len() });
        }
        Ok(())
    }

    /// Largest `k` with `w[i..i+k-1] = w[j..j+k-1]`, 1-based.
    pub fn lce_forward(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.fwd(i - 1, j - 1))
    }

    /// Largest `k` with `w[i-k+1..i] = w[j-k+1..j]`, 1-based.
    pub fn lce_backward(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.bwd(i - 1, j - 1))
    }
}
