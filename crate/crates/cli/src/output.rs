//! TSV and JSON renderings. Both list records in the same order.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;
use subrep_core::{MaxRepeat, Run, Subrepetition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

/// A subrepetition or run: a factor with its period and exact exponent.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FactorRecord {
    pub beg: u32,
    pub end: u32,
    pub period: u32,
    pub exponent_num: u32,
    pub exponent_den: u32,
}

impl FactorRecord {
    fn new(beg: u32, end: u32, period: u32) -> Self {
        let len = end - beg + 1;
        let g = gcd(len, period);
        FactorRecord { beg, end, period, exponent_num: len / g, exponent_den: period / g }
    }

    /// Decimal exponent with six fractional digits, computed exactly.
    pub fn exponent(&self) -> String {
        let (num, den) = (u64::from(self.exponent_num), u64::from(self.exponent_den));
        let scaled = (num * 1_000_000 * 2 + den) / (2 * den);
        format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
    }
}

impl From<&Subrepetition> for FactorRecord {
    fn from(s: &Subrepetition) -> Self {
        FactorRecord::new(s.beg, s.end, s.period)
    }
}

impl From<&Run> for FactorRecord {
    fn from(r: &Run) -> Self {
        FactorRecord::new(r.beg, r.end, r.period)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RepeatRecord {
    pub beg: u32,
    pub period: u32,
    pub copy: u32,
    pub end: u32,
    pub gapped: bool,
}

impl From<&MaxRepeat> for RepeatRecord {
    fn from(r: &MaxRepeat) -> Self {
        RepeatRecord { beg: r.beg, period: r.period, copy: r.copy, end: r.end(), gapped: r.is_gapped() }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

pub fn write_factors(out: &mut impl Write, records: &[FactorRecord], format: Format) -> Result<()> {
    match format {
        Format::Tsv => {
            for r in records {
                writeln!(out, "{}\t{}\t{}\t{}", r.beg, r.end, r.period, r.exponent())?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, records)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn write_repeats(out: &mut impl Write, records: &[RepeatRecord], format: Format) -> Result<()> {
    match format {
        Format::Tsv => {
            for r in records {
                writeln!(out, "{}\t{}\t{}\t{}\t{}", r.beg, r.period, r.copy, r.end, u8::from(r.gapped))?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, records)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
