//! Fast path against the brute-force oracles.

use std::io::Write;

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subrep_core::{generate, Finder, GenKind, Oracle, RationalDelta, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
}

pub struct Config {
    pub mode: Mode,
    pub sigma: u32,
    pub max_n: usize,
    pub count: usize,
    pub seed: u64,
    pub deltas: Vec<RationalDelta>,
    pub verbose: bool,
    pub inject_fault: bool,
}

/// Words to check, shortest first.
fn corpus(cfg: &Config) -> Result<Vec<Word>> {
    let mut words = Vec::new();
    match cfg.mode {
        Mode::Exhaustive => {
            for n in 0..=cfg.max_n {
                let total = (cfg.sigma as u64).checked_pow(n as u32).filter(|&t| t <= 1 << 26);
                let total = total.ok_or_else(|| anyhow::anyhow!("sigma^n too large for exhaustive mode"))?;
                for mut k in 0..total {
                    let mut v = Vec::with_capacity(n);
                    for _ in 0..n {
                        v.push((k % u64::from(cfg.sigma)) as u32);
                        k /= u64::from(cfg.sigma);
                    }
                    words.push(Word::new(v)?);
                }
            }
        }
        Mode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.count {
                let n = rng.gen_range(1..=cfg.max_n.max(1));
                words.push(generate(GenKind::Random, n, cfg.sigma, rng.gen())?);
            }
        }
    }
    Ok(words)
}

/// First disagreement between the fast path and an oracle, if any.
fn mismatch(w: &Word, delta: &RationalDelta, oracle: &Oracle, inject: bool) -> Result<Option<String>> {
    let finder = Finder::new(w)?;
    let runs = oracle.brute_runs(w)?;
    if finder.runs() != runs.as_slice() {
        return Ok(Some(format!("runs: fast {:?}, oracle {:?}", finder.runs(), runs)));
    }
    let n = w.len() as u32;
    let mut gapped = finder.gapped_repeats(delta);
    gapped.sort();
    let want: Vec<_> = if n < 2 {
        Vec::new()
    } else {
        oracle
            .brute_max_repeats(w, 1..=n - 1)?
            .into_iter()
            .filter(|r| r.is_gapped() && delta.alpha_gapped(r.period, r.copy))
            .collect()
    };
    if gapped != want {
        return Ok(Some(format!("gapped repeats: fast {gapped:?}, oracle {want:?}")));
    }
    let mut got = finder.find(delta)?;
    if inject {
        got.pop();
    }
    got.sort();
    let mut want = oracle.brute_subrepetitions(w, delta)?;
    want.sort();
    if got != want {
        return Ok(Some(format!("subrepetitions: fast {got:?}, oracle {want:?}")));
    }
    Ok(None)
}

/// Greedily deletes symbols while the mismatch persists.
fn shrink(mut w: Word, delta: &RationalDelta, oracle: &Oracle, inject: bool) -> Result<(Word, String)> {
    let mut why = mismatch(&w, delta, oracle, inject)?.unwrap_or_default();
    'outer: loop {
        for i in 0..w.len() {
            let mut v = w.symbols().to_vec();
            v.remove(i);
            let candidate = Word::new(v)?;
            if let Some(reason) = mismatch(&candidate, delta, oracle, inject)? {
                w = candidate;
                why = reason;
                continue 'outer;
            }
        }
        return Ok((w, why));
    }
}

/// Returns `true` iff every word matched.
pub fn run(cfg: &Config, out: &mut impl Write) -> Result<bool> {
    let oracle = Oracle::from_env();
    let words = corpus(cfg)?;
    if let Some(w) = words.iter().find(|w| w.len() > oracle.cap) {
        anyhow::bail!("word of length {} exceeds the oracle cap {}", w.len(), oracle.cap);
    }
    let mut checks = 0;
    for w in &words {
        for delta in &cfg.deltas {
            checks += 1;
            if mismatch(w, delta, &oracle, cfg.inject_fault)?.is_some() {
                if cfg.verbose {
                    writeln!(out, "FAIL\t{w}\t{delta}")?;
                }
                let (small, why) = shrink(w.clone(), delta, &oracle, cfg.inject_fault)?;
                writeln!(out, "mismatch on word \"{w}\" delta {delta}")?;
                writeln!(out, "minimal failing word \"{small}\" (n={}) delta {delta}", small.len())?;
                writeln!(out, "{why}")?;
                return Ok(false);
            }
            if cfg.verbose {
                writeln!(out, "PASS\t{w}\t{delta}")?;
            }
        }
    }
    writeln!(out, "ok: {} words, {checks} checks, all equal to the oracles", words.len())?;
    Ok(true)
}
