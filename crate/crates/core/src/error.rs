//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building or running a torsion
/// computation. Variants are grouped roughly by pipeline stage; the CLI
/// maps them onto its exit-code contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("zero denominator in rational-function value")]
    ZeroDenominator,

    #[error("modulus {p} is not prime")]
    NotPrime { p: u64 },

    #[error("invalid scalar literal `{text}` for {domain}")]
    InvalidScalar { text: String, domain: String },

    #[error("invalid Laurent-polynomial literal `{text}`: {reason}")]
    InvalidLaurent { text: String, reason: String },

    #[error("unknown generator `{name}`")]
    UnknownGenerator { name: String },

    #[error("duplicate generator name `{name}`")]
    DuplicateGenerator { name: String },

    #[error("invalid generator name `{name}`: names start with a letter and use letters, digits, or underscores")]
    InvalidGeneratorName { name: String },

    #[error("invalid word token `{token}`")]
    InvalidWordToken { token: String },

    #[error("word references generator index {index} but only {count} generators exist")]
    GeneratorIndexOutOfRange { index: usize, count: usize },

    #[error("phi assigns {got} values but the presentation has {expected} generators")]
    PhiLengthMismatch { got: usize, expected: usize },

    #[error("phi is not a homomorphism: relator {index} (`{relator}`) has weighted exponent sum {sum}")]
    PhiNotHomomorphism {
        index: usize,
        relator: String,
        sum: i64,
    },

    #[error("representation assigns {got} images but {expected} generators exist")]
    ImageCountMismatch { got: usize, expected: usize },

    #[error("image of generator `{name}` is {rows}x{cols}, expected {k}x{k}")]
    ImageDimensionMismatch {
        name: String,
        rows: usize,
        cols: usize,
        k: usize,
    },

    #[error("image of generator `{name}` is not invertible over {domain} (determinant {det})")]
    NonInvertibleImage {
        name: String,
        domain: String,
        det: String,
    },

    #[error("relator {index} (`{relator}`) does not map to the identity matrix")]
    RelatorImageNotIdentity { index: usize, relator: String },

    #[error(
        "presentation has {generators} generators and {relators} relators; \
         the Wada engine needs deficiency 1 with at least 2 generators"
    )]
    WrongDeficiency { generators: usize, relators: usize },

    #[error("chain-complex dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },

    #[error("boundary maps do not compose to zero: ({product})[{row},{col}] = {entry}")]
    CompositionFailure {
        product: String,
        row: usize,
        col: usize,
        entry: String,
    },

    #[error("invalid selection: {detail}")]
    InvalidSelection { detail: String },

    #[error("monodromy rank {rank} is too small; at least 2 fiber generators are required")]
    RankTooSmall { rank: usize },

    #[error("monodromy images are not an automorphism candidate: abelianized determinant {det}")]
    NotAutomorphism { det: i64 },
}
