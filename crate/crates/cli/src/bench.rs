//! Timing table as CSV.

use std::io::Write;
use std::time::{Duration, Instant};

use anyhow::Result;
use subrep_core::{generate, Finder, GenKind, RationalDelta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Gen {
    Random,
    Fibonacci,
    ThueMorse,
}

impl From<Gen> for GenKind {
    fn from(g: Gen) -> Self {
        match g {
            Gen::Random => GenKind::Random,
            Gen::Fibonacci => GenKind::Fibonacci,
            Gen::ThueMorse => GenKind::ThueMorse,
        }
    }
}

pub const HEADER: &str = "n,delta,gen,t_prepare,t_gapped,t_stage1,t_pairs,t_stage2,t_stage3,t_total,runs,runs_lt_n,gr,gr_star,max_lqt,max_alpha_close";

/// Accepts plain integers and `2^k`.
pub fn parse_len(text: &str) -> Result<usize, String> {
    let text = text.trim();
    if let Some(exp) = text.strip_prefix("2^") {
        let e: u32 = exp.parse().map_err(|_| format!("bad length {text:?}"))?;
        return 1usize.checked_shl(e).ok_or_else(|| format!("length {text} too large"));
    }
    text.parse().map_err(|_| format!("bad length {text:?}"))
}

fn s(t: Duration) -> String {
    format!("{:.6}", t.as_secs_f64())
}

pub fn run(lens: &[usize], delta: &RationalDelta, gen: Gen, sigma: u32, seed: u64, out: &mut impl Write) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    for &n in lens.iter().filter(|&&n| n > 0) {
        let w = generate(gen.into(), n, sigma, seed)?;
        let start = Instant::now();
        let finder = Finder::new(&w)?;
        let (_, st) = finder.find_with_stats(delta)?;
        let total = start.elapsed();
        let name = format!("{gen:?}").to_lowercase();
        writeln!(
            out,
            "{n},{delta},{name},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            s(st.t_prepare),
            s(st.t_gapped),
            s(st.t_stage1),
            s(st.t_pairs),
            s(st.t_stage2),
            s(st.t_stage3),
            s(total),
            st.runs,
            st.runs < n,
            st.gapped,
            st.output,
            st.max_tree,
            st.max_alpha_close,
        )?;
        out.flush()?;
    }
    Ok(())
}
