//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL
//! line each, then fails if any criterion failed.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::{all_words, check_pairs, random_delta, sorted, structured_word, validate_output, PairTally};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subrep_core::runs::compute_runs;
use subrep_core::{generate, Finder, GenKind, LceIndex, Oracle, RationalDelta, Stats, Word};

type Outcome = Result<String, String>;

/// Bound checks and the sweep monitor, accumulated over every search.
#[derive(Default)]
struct Monitor {
    searches: usize,
    violations: Vec<String>,
    max_tree: usize,
    tree_failures: Vec<String>,
}

impl Monitor {
    fn record(&mut self, finder: &Finder, delta: &RationalDelta, stats: &Stats) {
        self.searches += 1;
        let n = finder.word().len();
        let (num, den) = (u128::from(delta.num()), u128::from(delta.den()));
        self.max_tree = self.max_tree.max(stats.max_tree);
        if stats.max_tree as u128 * num > 64 * den && self.tree_failures.len() < 5 {
            self.tree_failures.push(format!("n={n} delta={delta}: tree size {}", stats.max_tree));
        }
        if n == 0 {
            return;
        }
        let runs = finder.runs();
        let exps: f64 = runs.iter().map(|r| r.exponent()).sum();
        let mut bad = Vec::new();
        if runs.len() >= n {
            bad.push(format!("|runs| = {}", runs.len()));
        }
        if exps >= 3.0 * n as f64 {
            bad.push(format!("sum of exponents {exps:.2}"));
        }
        if stats.gapped as u128 * num > 18 * den * n as u128 {
            bad.push(format!("|GR| = {}", stats.gapped));
        }
        if stats.output as u128 * num > 18 * den * n as u128 {
            bad.push(format!("|output| = {}", stats.output));
        }
        if !bad.is_empty() && self.violations.len() < 5 {
            self.violations.push(format!("n={n} delta={delta}: {}", bad.join(", ")));
        }
    }

    fn search(&mut self, finder: &Finder, delta: &RationalDelta, oracle: &Oracle) -> Result<(), String> {
        let (got, stats) = finder.find_with_stats(delta).map_err(|e| e.to_string())?;
        self.record(finder, delta, &stats);
        let want = oracle.brute_subrepetitions(finder.word(), delta).map_err(|e| e.to_string())?;
        if sorted(got.clone()) != sorted(want.clone()) {
            return Err(format!("word {} delta {delta}: got {got:?}, want {want:?}", finder.word()));
        }
        Ok(())
    }
}

fn d(num: u64, den: u64) -> RationalDelta {
    RationalDelta::new(num, den).unwrap()
}

fn secs(t: Duration) -> String {
    format!("{:.2}s", t.as_secs_f64())
}

fn runs_example() -> Outcome {
    let start = Instant::now();
    let w = Word::from("ababaabaaababab");
    let runs = compute_runs(&w, &LceIndex::new(&w));
    let elapsed = start.elapsed();
    let mut got: Vec<String> = runs
        .iter()
        .map(|r| {
            String::from_utf8(w.factor(r.beg as usize, r.end as usize).iter().map(|&c| c as u8).collect()).unwrap()
        })
        .collect();
    got.sort();
    let mut want = vec!["ababa", "abaabaa", "aabaaaba", "aa", "aaa", "ababab"];
    want.sort();
    if got != want {
        return Err(format!("runs {got:?}"));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {}", secs(elapsed)));
    }
    Ok(format!("6 runs in {:?}", elapsed))
}

fn exhaustive(monitor: &mut Monitor) -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::default();
    let deltas = [d(1, 10), d(1, 3), d(1, 2), d(3, 4)];
    let mut words = 0;
    for (sigma, max_n) in [(2, 16), (3, 11)] {
        for n in 0..=max_n {
            for w in all_words(sigma, n) {
                let finder = Finder::new(&w).map_err(|e| e.to_string())?;
                for delta in &deltas {
                    monitor.search(&finder, delta, &oracle)?;
                }
                words += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        return Err(format!("{words} words took {}", secs(elapsed)));
    }
    Ok(format!("{words} words x 4 deltas equal to brute force in {}", secs(elapsed)))
}

fn random_corpus() -> Vec<(Word, RationalDelta)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..1000)
        .map(|i| {
            let sigma = rng.gen_range(2..=4);
            let n = rng.gen_range(1..=512);
            let w = generate(GenKind::Random, n, sigma, 1000 + i).unwrap();
            (w, random_delta(&mut rng, 0.05, 0.95))
        })
        .collect()
}

fn randomized(corpus: &[(Word, RationalDelta)], monitor: &mut Monitor) -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::default();
    let mut total = 0;
    for (w, delta) in corpus {
        let finder = Finder::new(w).map_err(|e| e.to_string())?;
        monitor.search(&finder, delta, &oracle)?;
        let first = sorted(oracle.brute_subrepetitions(w, delta).map_err(|e| e.to_string())?);
        let second = sorted(oracle.brute_subrepetitions_by_repeats(w, delta).map_err(|e| e.to_string())?);
        if first != second {
            return Err(format!("oracle routes disagree on {w} delta {delta}"));
        }
        total += first.len();
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {}", secs(elapsed)));
    }
    Ok(format!("{} words, {total} subrepetitions, both oracle routes agree, {}", corpus.len(), secs(elapsed)))
}

fn sub_oracles(corpus: &[(Word, RationalDelta)]) -> Outcome {
    let oracle = Oracle::default();
    let (mut runs, mut gapped) = (0, 0);
    for (w, delta) in corpus {
        let finder = Finder::new(w).map_err(|e| e.to_string())?;
        let want = oracle.brute_runs(w).map_err(|e| e.to_string())?;
        if finder.runs() != want.as_slice() {
            return Err(format!("runs differ on {w}"));
        }
        runs += want.len();
        let n = w.len() as u32;
        let want: Vec<_> = if n < 2 {
            Vec::new()
        } else {
            oracle
                .brute_max_repeats(w, 1..=n - 1)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|r| r.is_gapped() && delta.alpha_gapped(r.period, r.copy))
                .collect()
        };
        if sorted(finder.gapped_repeats(delta)) != want {
            return Err(format!("gapped repeats differ on {w} delta {delta}"));
        }
        gapped += want.len();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut tally = PairTally::default();
    let deltas = [d(1, 2), d(1, 5), d(9, 10), d(1, 3)];
    let mut i = 0;
    while tally.nonempty < 200 || tally.with_nondominating < 20 || tally.right < 50 {
        let w = structured_word(&mut rng, 120);
        tally.add(&check_pairs(&w, &deltas[i % deltas.len()], &oracle)?);
        i += 1;
    }
    Ok(format!(
        "{runs} runs, {gapped} gapped repeats; {} pairs ({} with nonempty sequence, {} right, {} degenerate, {} with nondominating)",
        tally.pairs, tally.nonempty, tally.right, tally.degenerate, tally.with_nondominating
    ))
}

fn bounds(monitor: &Monitor) -> Outcome {
    if monitor.violations.is_empty() {
        Ok(format!("0 violations over {} searches", monitor.searches))
    } else {
        Err(monitor.violations.join("; "))
    }
}

fn at_scale(monitor: &mut Monitor) -> Outcome {
    let n = 1_000_000;
    let delta = d(1, 2);
    let w = generate(GenKind::Random, n, 2, 99).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let finder = Finder::new(&w).map_err(|e| e.to_string())?;
    let (out, stats) = finder.find_with_stats(&delta).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    monitor.record(&finder, &delta, &stats);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sample: Vec<usize> = if out.len() <= 10_000 {
        (0..out.len()).collect()
    } else {
        (0..10_000).map(|_| rng.gen_range(0..out.len())).collect()
    };
    for &k in &sample {
        validate_output(&w, &delta, &out[k])?;
    }
    Ok(format!("{} outputs in {}, {} validated", out.len(), secs(elapsed), sample.len()))
}

fn sweep_monitor(monitor: &Monitor) -> Outcome {
    if monitor.tree_failures.is_empty() {
        Ok(format!("max staircase size {} over {} searches", monitor.max_tree, monitor.searches))
    } else {
        Err(monitor.tree_failures.join("; "))
    }
}

fn scaling(monitor: &mut Monitor) -> Outcome {
    let delta = d(1, 2);
    let mut times = Vec::new();
    for e in 16..=20 {
        let w = generate(GenKind::Random, 1 << e, 2, e as u64).map_err(|e| e.to_string())?;
        let mut best = Duration::MAX;
        for _ in 0..3 {
            let start = Instant::now();
            let finder = Finder::new(&w).map_err(|e| e.to_string())?;
            let (_, stats) = finder.find_with_stats(&delta).map_err(|e| e.to_string())?;
            best = best.min(start.elapsed());
            monitor.record(&finder, &delta, &stats);
        }
        times.push(best);
    }
    let ratios: Vec<f64> = times.windows(2).map(|t| t[1].as_secs_f64() / t[0].as_secs_f64()).collect();
    let line = format!(
        "times {}; ratios {}",
        times.iter().map(|t| secs(*t)).collect::<Vec<_>>().join(" "),
        ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>().join(" ")
    );
    if ratios.iter().any(|&r| r > 3.0) || times[4] >= Duration::from_secs(60) {
        Err(line)
    } else {
        Ok(line)
    }
}

#[test]
fn acceptance() {
    let mut monitor = Monitor::default();
    let corpus = random_corpus();
    let c1 = runs_example();
    let c2 = exhaustive(&mut monitor);
    let c3 = randomized(&corpus, &mut monitor);
    let c4 = sub_oracles(&corpus);
    let c6 = at_scale(&mut monitor);
    let c8 = scaling(&mut monitor);
    let results = [
        ("runs example", c1),
        ("exhaustive oracle equivalence", c2),
        ("randomized oracle equivalence", c3),
        ("sub-oracle equivalence", c4),
        ("bound properties", bounds(&monitor)),
        ("per-output validity at scale", c6),
        ("sweep monitor", sweep_monitor(&monitor)),
        ("scaling", c8),
    ];

    // Written to the raw handle so the lines show up without --nocapture.
    let mut stdout = std::io::stdout().lock();
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => writeln!(stdout, "PASS {}. {name}: {detail}", i + 1).unwrap(),
            Err(detail) => {
                failed += 1;
                writeln!(stdout, "FAIL {}. {name}: {detail}", i + 1).unwrap();
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
