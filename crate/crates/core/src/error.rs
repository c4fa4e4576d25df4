use thiserror::Error;

/// Failures of the mathematical operations.
///
/// Every variant corresponds to a violated precondition; none of them signal
/// an internal bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rows of the pencil are linearly dependent in k^2 (x) V")]
    DegenerateRows,
    #[error("the pencil lies in Z_G (phi = 0); a one-parameter family is needed to lift it")]
    InZG,
    #[error("the point lies in the closure of G.Z_R (pairwise wedges of phi vanish); a family is needed to lift it")]
    InGzrClosure,
    #[error("det(A) is identically zero")]
    DetZero,
    #[error("the determinant conic is smooth, so no triangular form exists")]
    DetSmooth,
    #[error("the point is not semistable: {0}")]
    Unstable(String),
    #[error("phi is the zero triple")]
    ZeroPhi,
    #[error("a second quadratic extension would be required (have sqrt({have}), need sqrt({need}))")]
    NestedExtension { have: i64, need: i64 },
    #[error("square root of an element of Q(sqrt {0}) that is not a square there")]
    NonSquareInExtension(i64),
    #[error("integer too large to extract its square-free part: {0}")]
    TooLarge(String),
    #[error("ambient spaces of the quadratic forms differ")]
    AmbientMismatch,
    #[error("matrix entry ({row}, {col}) is not divisible by section {section}")]
    Indivisible {
        row: usize,
        col: usize,
        section: String,
    },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("ill-posed family: {0}")]
    IllPosedFamily(String),
    #[error("family is not of the required degeneration type: {0}")]
    WrongType(String),
    #[error("enumeration bound exceeded: charge {charge} > bound {bound}")]
    BoundExceeded { charge: u32, bound: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
