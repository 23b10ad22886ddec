use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects of different rank were combined.
    RankMismatch { left: usize, right: usize },
    /// Matrix dimensions do not fit the requested operation.
    SizeMismatch { expected: (usize, usize), found: (usize, usize) },
    NotAPermutation(String),
    NotAnAffinePermutation(String),
    NotARoot(String),
    IndexOutOfRange { index: usize, bound: usize },
    NotReduced(String),
    NotMinimalCosetRep(String),
    NotInQP(String),
    /// A coweight entry sum is nonzero.
    CoweightSum(i64),
    /// `⟨α_i, λ⟩` has the wrong sign/zero pattern for `J` (names the simple root index).
    IncompatibleCoweight { root: usize, pairing: i64 },
    /// Input is outside the supported rank range.
    RankCap { n: usize, max: usize },
    Singular,
    /// A factorization or membership precondition failed.
    Precondition(String),
    /// An elimination step met an impossible pivot; indicates a convention bug.
    PivotFailure(String),
    NotADivisor(String),
    Parse(String),
    /// Stratum detection returned no label or more than one.
    Ambiguous(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankMismatch { left, right } => write!(f, "rank mismatch: {left} vs {right}"),
            Error::SizeMismatch { expected, found } => write!(
                f,
                "size mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotAPermutation(s) => write!(f, "not a permutation: {s}"),
            Error::NotAnAffinePermutation(s) => write!(f, "not an affine permutation: {s}"),
            Error::NotARoot(s) => write!(f, "not a root: {s}"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range 1..={bound}")
            }
            Error::NotReduced(s) => write!(f, "word is not reduced: {s}"),
            Error::NotMinimalCosetRep(s) => write!(f, "{s} is not a minimal coset representative"),
            Error::NotInQP(s) => write!(f, "not an element of Q_P: {s}"),
            Error::CoweightSum(s) => write!(f, "coweight entries sum to {s}, expected 0"),
            Error::IncompatibleCoweight { root, pairing } => write!(
                f,
                "coweight incompatible with J at simple root alpha_{root} (pairing {pairing})"
            ),
            Error::RankCap { n, max } => write!(f, "rank n={n} exceeds supported maximum {max}"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::PivotFailure(s) => write!(f, "pivot failure: {s}"),
            Error::NotADivisor(s) => write!(f, "not a divisor label: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::Ambiguous(s) => write!(f, "ambiguous stratum: {s}"),
        }
    }
}

impl core::error::Error for Error {}
