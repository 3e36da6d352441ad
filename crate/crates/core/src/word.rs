//! Words over a bounded integer alphabet, the exact rational `delta`, input
//! loading and deterministic test-corpus generators.
//!
//! Position convention: every public type in this crate (runs, repeats,
//! subrepetitions, LCE queries) addresses symbols with 1-based inclusive
//! positions, `1..=n`. Internally symbol slices are 0-based, so `w[pos]`
//! in the 1-based sense is `symbols()[pos - 1]`. Conversions happen only at
//! module boundaries.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Symbol = u32;

/// Immutable sequence of non-negative integer symbols.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    symbols: Vec<Symbol>,
}

impl Word {
    /// Builds a word, checking the alphabet bound `max(255, n)`.
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        let bound = alphabet_bound(symbols.len());
        if let Some((index, &s)) = symbols.iter().enumerate().find(|(_, &s)| u64::from(s) > bound) {
            return Err(Error::Alphabet { index, symbol: u64::from(s), bound });
        }
        Ok(Word { symbols })
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Word { symbols: bytes.iter().map(|&b| Symbol::from(b)).collect() }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Symbol at 1-based position `pos`.
    #[inline]
    pub fn at(&self, pos: usize) -> Symbol {
        self.symbols[pos - 1]
    }

    /// The factor `w[beg..=end]`, 1-based inclusive.
    pub fn factor(&self, beg: usize, end: usize) -> &[Symbol] {
        &self.symbols[beg - 1..end]
    }

    pub fn reversed(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word { symbols }
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word::from_bytes(s.as_bytes())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let printable = self.symbols.iter().all(|&s| (0x21..0x7f).contains(&s));
        if printable {
            for &s in &self.symbols {
                write!(f, "{}", char::from(s as u8))?;
            }
            Ok(())
        } else {
            let mut first = true;
            for s in &self.symbols {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{s}")?;
            }
            Ok(())
        }
    }
}

fn alphabet_bound(n: usize) -> u64 {
    (n as u64).max(255)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputMode {
    /// One line of raw bytes; a trailing `\n` or `\r\n` is dropped.
    Bytes,
    /// Whitespace-separated decimal integers.
    Ints,
}

pub fn load_word(raw: &[u8], mode: InputMode) -> Result<Word> {
    match mode {
        InputMode::Bytes => {
            let mut line = raw;
            if let Some(rest) = line.strip_suffix(b"\n") {
                line = rest.strip_suffix(b"\r").unwrap_or(rest);
            }
            Ok(Word::from_bytes(line))
        }
        InputMode::Ints => {
            let text = String::from_utf8_lossy(raw);
            let tokens: Vec<&str> = text.split_ascii_whitespace().collect();
            let bound = alphabet_bound(tokens.len());
            let mut symbols = Vec::with_capacity(tokens.len());
            for (index, tok) in tokens.iter().enumerate() {
                let value: u64 = tok.parse().map_err(|_| Error::Parse { index, token: tok.to_string() })?;
                if value > bound {
                    return Err(Error::Alphabet { index, symbol: value, bound });
                }
                symbols.push(value as Symbol);
            }
            Ok(Word { symbols })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Fibonacci,
    ThueMorse,
    Random,
}

/// Deterministic test words. Binary kinds use the letters `a`/`b`; random
/// words use `a`.. for `sigma <= 26` and raw integers `0..sigma` beyond that.
pub fn generate(kind: GenKind, n: usize, sigma: u32, seed: u64) -> Result<Word> {
    let symbols = match kind {
        GenKind::Fibonacci => fibonacci_prefix(n),
        GenKind::ThueMorse => (0..n)
            .map(|i| if (i as u64).count_ones().is_multiple_of(2) { u32::from(b'a') } else { u32::from(b'b') })
            .collect(),
        GenKind::Random => {
            if sigma == 0 {
                return Err(Error::Generator("random words need sigma >= 1"));
            }
            let base = if sigma <= 26 { u32::from(b'a') } else { 0 };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| base + rng.gen_range(0..sigma)).collect()
        }
    };
    Word::new(symbols)
}

fn fibonacci_prefix(n: usize) -> Vec<Symbol> {
    // a -> ab, b -> a, iterated until long enough.
    let (a, b) = (u32::from(b'a'), u32::from(b'b'));
    let mut cur = vec![a];
    while cur.len() < n {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for &s in &cur {
            if s == a {
                next.extend_from_slice(&[a, b]);
            } else {
                next.push(a);
            }
        }
        cur = next;
    }
    cur.truncate(n);
    cur
}

/// Border (failure function) array: `border[i]` is the length of the longest
/// proper border of `s[..=i]`.
pub fn border_array(s: &[Symbol]) -> Vec<usize> {
    let mut border = vec![0usize; s.len()];
    for i in 1..s.len() {
        let mut b = border[i - 1];
        while b > 0 && s[i] != s[b] {
            b = border[b - 1];
        }
        if s[i] == s[b] {
            b += 1;
        }
        border[i] = b;
    }
    border
}

/// Smallest period of a non-empty factor: its length minus its longest border.
pub fn min_period(factor: &[Symbol]) -> Result<usize> {
    match border_array(factor).last() {
        None => Err(Error::EmptyFactor),
        Some(&b) => Ok(factor.len() - b),
    }
}

/// `delta = num / den` with `0 < delta < 1`, kept exact. `alpha = 1 / delta`
/// appears only through integer cross-multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalDelta {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalDelta {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::DeltaRange(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(RationalDelta { num: num / g, den: den / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `period <= alpha * copy`.
    #[inline]
    pub fn alpha_gapped(&self, period: u32, copy: u32) -> bool {
        u128::from(period) * u128::from(self.num) <= u128::from(copy) * u128::from(self.den)
    }

    /// `copy_period <= period / (3 * alpha)`.
    #[inline]
    pub fn alpha_periodic(&self, copy_period: u32, period: u32) -> bool {
        3 * u128::from(copy_period) * u128::from(self.den) <= u128::from(period) * u128::from(self.num)
    }

    /// `distance <= alpha * len`.
    #[inline]
    pub fn alpha_close(&self, distance: u32, len: u32) -> bool {
        u128::from(distance) * u128::from(self.num) <= u128::from(len) * u128::from(self.den)
    }

    /// `ceil(log2(alpha))`: the least `k` with `num * 2^k >= den`.
    pub fn ceil_log2_alpha(&self) -> u32 {
        let mut k = 0;
        while (u128::from(self.num) << k) < u128::from(self.den) {
            k += 1;
        }
        k
    }

    /// Smallest copy length an alpha-gapped repeat of `period` can have.
    #[inline]
    pub fn min_copy(&self, period: u32) -> u32 {
        let num = u64::from(period) * self.num;
        (num.div_ceil(self.den) as u32).max(1)
    }

    /// Parses `num/den` or a decimal such as `0.25`.
    pub fn parse(text: &str) -> Result<Self> {
        let (num, den) = parse_ratio(text).ok_or_else(|| Error::DeltaRange(text.to_string()))?;
        RationalDelta::new(num, den).map_err(|_| Error::DeltaRange(text.to_string()))
    }

    /// Parses `alpha` (fraction or decimal, strictly greater than 1) and
    /// inverts it.
    pub fn parse_alpha(text: &str) -> Result<Self> {
        let (num, den) = parse_ratio(text).ok_or_else(|| Error::DeltaRange(text.to_string()))?;
        RationalDelta::new(den, num).map_err(|_| Error::DeltaRange(format!("1/({text})")))
    }
}

impl fmt::Display for RationalDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn parse_ratio(text: &str) -> Option<(u64, u64)> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        return Some((n.trim().parse().ok()?, d.trim().parse().ok()?));
    }
    let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) || frac_part.len() > 18 {
        return None;
    }
    let den = 10u64.checked_pow(frac_part.len() as u32)?;
    let int: u64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let frac: u64 = if frac_part.is_empty() { 0 } else { frac_part.parse().ok()? };
    Some((int.checked_mul(den)?.checked_add(frac)?, den))
}
