#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use subrep_core::oracle::PairMode;
use subrep_core::pairs::PairContext;
use subrep_core::repeats::{AnnotatedRepeat, MaxRepeat, RepeatType};
use subrep_core::{min_period, Finder, Oracle, RationalDelta, Subrepetition, Word};

/// Every word of length `n` over `0..sigma`.
pub fn all_words(sigma: u32, n: usize) -> impl Iterator<Item = Word> {
    let total = (sigma as usize).pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push((k % sigma as usize) as u32);
            k /= sigma as usize;
        }
        Word::new(v).unwrap()
    })
}

/// Powers of short random blocks, concatenated, with a few point mutations.
pub fn structured_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let sigma = rng.gen_range(2..=3);
    let mut v = Vec::new();
    let pieces = rng.gen_range(1..=5);
    for _ in 0..pieces {
        let block: Vec<u32> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..sigma)).collect();
        let reps = rng.gen_range(1..=10);
        v.extend(block.iter().copied().cycle().take(block.len() * reps));
    }
    v.truncate(max_len);
    let n = v.len();
    for _ in 0..rng.gen_range(0..=2) {
        let i = rng.gen_range(0..n);
        v[i] = rng.gen_range(0..sigma);
    }
    Word::new(v).unwrap()
}

/// Uniform `num/den` in `(lo, hi)` with `den <= 1000`.
pub fn random_delta(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> RationalDelta {
    loop {
        let den = rng.gen_range(20u64..=1000);
        let num = rng.gen_range(1..den);
        let x = num as f64 / den as f64;
        if x > lo && x < hi {
            return RationalDelta::new(num, den).unwrap();
        }
    }
}

pub fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// Period, exponent and both maximality conditions of one emitted triple.
pub fn validate_output(w: &Word, delta: &RationalDelta, s: &Subrepetition) -> Result<(), String> {
    let n = w.len() as u32;
    if s.beg == 0 || s.end > n || s.beg > s.end {
        return Err(format!("{s:?} out of range"));
    }
    let p = min_period(w.factor(s.beg as usize, s.end as usize)).map_err(|e| e.to_string())? as u32;
    if p != s.period {
        return Err(format!("{s:?}: minimal period is {p}"));
    }
    let len = u128::from(s.len());
    let (num, den) = (u128::from(delta.num()), u128::from(delta.den()));
    if len * den < u128::from(p) * (num + den) || s.len() >= 2 * p {
        return Err(format!("{s:?}: exponent out of [1+delta, 2)"));
    }
    if s.beg > 1 && w.at(s.beg as usize - 1) == w.at((s.beg + p) as usize - 1) {
        return Err(format!("{s:?}: extends to the left"));
    }
    if s.end < n && w.at(s.end as usize + 1) == w.at((s.end + 1 - p) as usize) {
        return Err(format!("{s:?}: extends to the right"));
    }
    Ok(())
}

/// Which branches of the pair-represented sequence were exercised.
#[derive(Debug, Default, Clone)]
pub struct PairTally {
    pub pairs: usize,
    pub nonempty: usize,
    pub k1_positive: usize,
    pub k1_zero: usize,
    pub k2_positive: usize,
    pub k3_at_most_one: usize,
    pub first_overlapped: usize,
    pub degenerate: usize,
    pub right: usize,
    pub with_nondominating: usize,
}

impl PairTally {
    pub fn add(&mut self, o: &PairTally) {
        self.pairs += o.pairs;
        self.nonempty += o.nonempty;
        self.k1_positive += o.k1_positive;
        self.k1_zero += o.k1_zero;
        self.k2_positive += o.k2_positive;
        self.k3_at_most_one += o.k3_at_most_one;
        self.first_overlapped += o.first_overlapped;
        self.degenerate += o.degenerate;
        self.right += o.right;
        self.with_nondominating += o.with_nondominating;
    }
}

fn typed(v: Vec<AnnotatedRepeat>) -> Vec<(MaxRepeat, RepeatType)> {
    sorted(v.into_iter().map(|a| (a.repeat, a.kind.unwrap())).collect())
}

/// Checks every same-class pair of `w`, in the frame where it is a left
/// pair, against the brute-force pair oracle.
pub fn check_pairs(w: &Word, delta: &RationalDelta, oracle: &Oracle) -> Result<PairTally, String> {
    let finder = Finder::new(w).map_err(|e| e.to_string())?;
    let rev = w.reversed();
    let n = w.len() as u32;
    let (fwd, bwd) = finder.frames();
    let mut tally = PairTally::default();
    for (frame, text) in [(&fwd, w), (&bwd, &rev)] {
        let set = frame.set;
        for g in 0..set.groups.count() {
            let ids = set.groups.prsr(g);
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    let (r1, r2) = (set.runs[a as usize], set.runs[b as usize]);
                    if r1.len() > r2.len() || (frame.reversed && r1.len() == r2.len()) {
                        continue;
                    }
                    let ctx = PairContext::new(frame, a as usize, b as usize).map_err(|e| e.to_string())?;
                    let brute = |mode| -> Result<Vec<(MaxRepeat, RepeatType)>, String> {
                        let v = oracle.brute_pair_repeats(text, &r1, &r2, mode).map_err(|e| e.to_string())?;
                        Ok(sorted(
                            v.into_iter().map(|(r, k)| (if frame.reversed { r.reversed(n) } else { r }, k)).collect(),
                        ))
                    };
                    let all = brute(PairMode::Periodic)?;
                    let fast = typed(ctx.psi_members());
                    let ctx_name = format!("word {w} runs {r1:?} {r2:?} reversed {}", frame.reversed);
                    if fast != all {
                        return Err(format!("{ctx_name}: members {fast:?} vs {all:?}"));
                    }
                    let gapped: Vec<_> = all
                        .iter()
                        .filter(|(r, _)| r.is_gapped() && delta.alpha_gapped(r.period, r.copy))
                        .copied()
                        .collect();
                    let fast = typed(ctx.psi_enumerate(delta));
                    if fast != gapped {
                        return Err(format!("{ctx_name}: alpha-gapped {fast:?} vs {gapped:?}"));
                    }
                    let nondom: Vec<_> =
                        gapped.iter().filter(|(_, k)| *k == RepeatType::ThirdNondominating).copied().collect();
                    let brute_nondom: Vec<_> = brute(PairMode::NondominatingThird)?
                        .into_iter()
                        .filter(|(r, _)| r.is_gapped() && delta.alpha_gapped(r.period, r.copy))
                        .collect();
                    let fast = typed(ctx.psi_nondominating(delta));
                    if fast != nondom || fast != brute_nondom {
                        return Err(format!("{ctx_name}: nondominating {fast:?} vs {brute_nondom:?}"));
                    }
                    let over = brute(PairMode::Overlapped)?;
                    let fast = typed(ctx.psi_overlapped());
                    if fast != over {
                        return Err(format!("{ctx_name}: overlapped {fast:?} vs {over:?}"));
                    }

                    tally.pairs += 1;
                    tally.right += usize::from(frame.reversed);
                    if let Some(seg) = ctx.segment(delta) {
                        tally.nonempty += 1;
                        tally.k1_positive += usize::from(seg.k1 > 0);
                        tally.k1_zero += usize::from(seg.k1 == 0);
                        tally.k2_positive += usize::from(seg.k2 > 0);
                        tally.k3_at_most_one += usize::from(seg.k3 <= 1);
                        tally.first_overlapped += usize::from(seg.first_overlapped);
                        let full = (seg.k1 + seg.k2 + seg.k3) as usize;
                        tally.degenerate += usize::from(all.len() < full);
                        tally.with_nondominating += usize::from(!nondom.is_empty());
                    }
                }
            }
        }
    }
    Ok(tally)
}
