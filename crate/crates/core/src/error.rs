use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {symbol} at token {index} exceeds alphabet bound {bound}")]
    Alphabet { index: usize, symbol: u64, bound: u64 },

    #[error("malformed integer token {token:?} at index {index}")]
    Parse { index: usize, token: String },

    #[error("minimal period of an empty factor is undefined")]
    EmptyFactor,

    #[error("position {pos} outside 1..={len}")]
    Position { pos: usize, len: usize },

    #[error("duplicate repeat key (beg={beg}, period={period})")]
    DuplicateRepeat { beg: u32, period: u32 },

    #[error("runs do not form a pair of one root class: {0}")]
    PairMismatch(&'static str),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("delta must satisfy 0 < delta < 1, got {0}")]
    DeltaRange(String),

    #[error("word length {len} exceeds oracle cap {cap}")]
    OracleSize { len: usize, cap: usize },

    #[error("invalid generator argument: {0}")]
    Generator(&'static str),
}
