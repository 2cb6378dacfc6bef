use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not hermitian")]
    NotHermitian,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid *-homomorphism: {0}")]
    InvalidHom(String),

    #[error("not an order-two automorphism: {0}")]
    NotAutomorphism(String),

    #[error("classification requires an irreducible input")]
    Reducible,

    #[error("no corner decomposition in Type 1")]
    NoCornerDecomposition,

    #[error("lambda must have unit modulus (|lambda| = {0})")]
    NonUnitLambda(f64),

    #[error("non-unital *-homomorphism")]
    NonUnital,

    #[error("flip undefined: -1 is not an n-th root of unity for odd n (n = {0})")]
    FlipOddN(usize),

    #[error("unknown case: {0}")]
    UnknownCase(String),

    /// A check that holds mathematically failed under the tolerance policy.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for errors caused by the numerical tolerance rather than by the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}

pub type Result<T> = core::result::Result<T, Error>;
