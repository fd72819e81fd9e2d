use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("unsupported dimension {0}: expected an even dimension (4 or 6 for symbol work)")]
    UnsupportedDimension(usize),
    #[error("indeterminate {0} is not part of the dimension-{1} ring")]
    ForeignIndeterminate(String, usize),
    #[error("polynomial is not in sphere normal form (xi_1 exponent {0} >= 2)")]
    NotNormalForm(u32),
    #[error("function has a nonzero polynomial part; pi+ is defined on proper functions only")]
    PolynomialPart,
    #[error("integrand does not decay: numerator degree {numerator} > {limit}")]
    NoDecay { numerator: usize, limit: usize },
    #[error("symbol {0} carries no x_n-jet; its normal derivative is not modelled")]
    MissingJet(String),
    #[error("pairing {pairing} is not defined in dimension {n}")]
    UnsupportedPairing { pairing: String, n: usize },
    #[error("tuple {0:?} violates the order constraint")]
    InadmissibleTuple((i32, i32, u32, u32, u32)),
    #[error("polynomial `{0}` is not a combination of the interior brace terms")]
    Unexpressible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
