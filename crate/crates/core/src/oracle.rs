//! Brute-force reference implementations. Nothing here touches the LCE
//! index or the fast-path modules; only the shared result types and the
//! border-array period computation are reused.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::filter::Subrepetition;
use crate::repeats::{MaxRepeat, RepeatType};
use crate::runs::Run;
use crate::word::{border_array, min_period, RationalDelta, Symbol, Word};

pub const DEFAULT_CAP: usize = 2048;
pub const CAP_ENV: &str = "SUBREP_ORACLE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// Every periodic repeat represented by the pair.
    Periodic,
    /// The represented repeats with `c >= p`.
    Overlapped,
    /// Third-type repeats other than the dominating one.
    NondominatingThird,
}

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    /// Cap from `SUBREP_ORACLE_CAP`, falling back to the default.
    pub fn from_env() -> Self {
        let cap = std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP);
        Oracle { cap }
    }

    fn check(&self, w: &Word) -> Result<()> {
        if w.len() > self.cap {
            return Err(Error::OracleSize { len: w.len(), cap: self.cap });
        }
        Ok(())
    }

    /// Scans every factor with a per-start failure function.
    pub fn brute_subrepetitions(&self, w: &Word, delta: &RationalDelta) -> Result<Vec<Subrepetition>> {
        self.check(w)?;
        let s = w.symbols();
        let n = s.len();
        let (num, den) = (delta.num() as u128, delta.den() as u128);
        let mut out = Vec::new();
        for i in 0..n {
            let border = border_array(&s[i..]);
            for (k, &b) in border.iter().enumerate() {
                let len = k + 1;
                let p = len - b;
                let j = i + k;
                if len >= 2 * p || (len as u128) * den < (p as u128) * (den + num) {
                    continue;
                }
                if i > 0 && s[i - 1] == s[i - 1 + p] {
                    continue;
                }
                if j + 1 < n && s[j + 1] == s[j + 1 - p] {
                    continue;
                }
                out.push(Subrepetition::new(i as u32 + 1, j as u32 + 1, p as u32));
            }
        }
        out.sort_by_key(|r| (r.beg, r.period));
        Ok(out)
    }

    /// Second, independently coded route: principal maximal gapped repeats
    /// with `p <= alpha * c`, converted to factors.
    pub fn brute_subrepetitions_by_repeats(&self, w: &Word, delta: &RationalDelta) -> Result<Vec<Subrepetition>> {
        let n = w.len() as u32;
        let mut out = Vec::new();
        if n < 2 {
            return Ok(out);
        }
        for r in self.brute_max_repeats(w, 1..=n - 1)? {
            if r.is_gapped() && delta.alpha_gapped(r.period, r.copy) && brute_principal(w, &r) {
                out.push(Subrepetition::new(r.beg, r.end(), r.period));
            }
        }
        out.sort_by_key(|r| (r.beg, r.period));
        Ok(out)
    }

    /// For each period, maximal intervals of `x` with `w[x] = w[x+p]`.
    pub fn brute_max_repeats(&self, w: &Word, periods: RangeInclusive<u32>) -> Result<Vec<MaxRepeat>> {
        self.check(w)?;
        let s = w.symbols();
        let n = s.len();
        let mut out = Vec::new();
        for p in periods {
            let p = p as usize;
            if p == 0 || p >= n {
                continue;
            }
            let mut x = 0;
            while x + p < n {
                if s[x] != s[x + p] {
                    x += 1;
                    continue;
                }
                let start = x;
                while x + p < n && s[x] == s[x + p] {
                    x += 1;
                }
                out.push(MaxRepeat::new(start as u32 + 1, p as u32, (x - start) as u32));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Overlapped maximal repeats whose fact has minimal period `p`.
    pub fn brute_runs(&self, w: &Word) -> Result<Vec<Run>> {
        let n = w.len() as u32;
        if n < 2 {
            self.check(w)?;
            return Ok(Vec::new());
        }
        let mut out: Vec<Run> = self
            .brute_max_repeats(w, 1..=n - 1)?
            .into_iter()
            .filter(|r| r.copy >= r.period)
            .filter(|r| min_period(w.factor(r.beg as usize, r.end() as usize)).ok() == Some(r.period as usize))
            .map(|r| Run::new(r.beg, r.end(), r.period))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Repeats represented by the same-root runs `r1`, `r2` (`beg(r1) <
    /// beg(r2)`): copies inside `r1` and `r2`, of minimal period `p` and
    /// length at least `3p`, classified by which run ends they touch.
    pub fn brute_pair_repeats(
        &self,
        w: &Word,
        r1: &Run,
        r2: &Run,
        mode: PairMode,
    ) -> Result<Vec<(MaxRepeat, RepeatType)>> {
        let n = w.len() as u32;
        let p = r1.period;
        if n < 2 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for r in self.brute_max_repeats(w, 1..=n - 1)? {
            let (s, t) = (r.beg, r.beg + r.copy - 1);
            if s < r1.beg || t > r1.end || s + r.period < r2.beg || t + r.period > r2.end || r.copy < 3 * p {
                continue;
            }
            if min_period(w.factor(s as usize, t as usize)).ok() != Some(p as usize) {
                continue;
            }
            let kind = if s > r1.beg && t == r1.end && s + r.period == r2.beg {
                RepeatType::First
            } else if s == r1.beg && t == r1.end && t + r.period < r2.end {
                RepeatType::Second
            } else if s == r1.beg && t + r.period == r2.end {
                let dominating = third_type_slot(w, r1, r2) == Some(r.period);
                if dominating {
                    RepeatType::ThirdDominating
                } else {
                    RepeatType::ThirdNondominating
                }
            } else {
                return Err(Error::InternalInvariant(format!("unclassified pair repeat {r:?}")));
            };
            let keep = match mode {
                PairMode::Periodic => true,
                PairMode::Overlapped => r.copy >= r.period,
                PairMode::NondominatingThird => kind == RepeatType::ThirdNondominating,
            };
            if keep {
                out.push((r, kind));
            }
        }
        Ok(out)
    }
}

/// The least period `P` at which `w[beg(r1)..end(r2)-P]` and
/// `w[beg(r1)+P..end(r2)]` agree as copies lying in `r1` and `r2`, with
/// minimal period `p` and length at least `3p`. Maximality is not required.
fn third_type_slot(w: &Word, r1: &Run, r2: &Run) -> Option<u32> {
    let p = r1.period;
    (1..w.len() as u32).find(|&big| {
        if r2.end < big + r1.beg {
            return false;
        }
        let t = r2.end - big;
        if t > r1.end || r1.beg + big < r2.beg || t + 1 < r1.beg + 3 * p {
            return false;
        }
        let left = w.factor(r1.beg as usize, t as usize);
        let right = w.factor((r1.beg + big) as usize, r2.end as usize);
        left == right && min_period(left).ok() == Some(p as usize)
    })
}

/// `true` iff the fact of `r` has minimal period `p(r)`.
pub fn brute_principal(w: &Word, r: &MaxRepeat) -> bool {
    min_period(w.factor(r.beg as usize, r.end() as usize)).ok() == Some(r.period as usize)
}

/// Offset of the least rotation of the run's prefix root, by enumerating
/// all rotations.
pub fn brute_lyndon_offset(w: &Word, r: &Run) -> u32 {
    let root: Vec<Symbol> = w.factor(r.beg as usize, (r.beg + r.period - 1) as usize).to_vec();
    let p = root.len();
    let rot = |a: usize| -> Vec<Symbol> { root[a..].iter().chain(&root[..a]).copied().collect() };
    (0..p).min_by(|&a, &b| rot(a).cmp(&rot(b)).then(a.cmp(&b))).unwrap_or(0) as u32
}

/// The Lyndon root of `r` as a symbol vector.
pub fn brute_lyndon_root(w: &Word, r: &Run) -> Vec<Symbol> {
    let a = (r.beg + brute_lyndon_offset(w, r)) as usize;
    w.factor(a, a + r.period as usize - 1).to_vec()
}

/// Maximal repeats with a smaller period whose fact contains the fact of `r`.
pub fn brute_coverers<'a>(all: &'a [MaxRepeat], r: &MaxRepeat) -> impl Iterator<Item = &'a MaxRepeat> + 'a {
    let r = *r;
    all.iter().filter(move |o| r.covered_by(o))
}
