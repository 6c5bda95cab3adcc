use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported (diagonalization and Hessians need p != 2)")]
    EvenCharacteristic,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("field F_{p}^{m} exceeds the table limit")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("substitution component {0} has a nonzero constant term")]
    ConstantTerm(usize),
    #[error("quadratic form is degenerate")]
    DegenerateQuadric,
    #[error("origin is not a singular point of the chart equation")]
    CenterNotSingular,
    #[error("singular locus of the chart is not the isolated point at the origin")]
    SingularLocusNotIsolated,
    #[error("Groebner computation exceeded its bound of {0} S-pairs or degree")]
    GroebnerBoundExhausted(usize),
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("map is undefined at the point (all forms vanish)")]
    Undefined,
    #[error("cocycle check failed between charts {0} and {1}")]
    CocycleMismatch(usize, usize),
    #[error("section is a p-th power; the cover would be non-reduced (root: {0})")]
    PthPower(String),
    #[error("points {0:?} are not in general position")]
    GeneralPosition(Vec<usize>),
    #[error("cubic is singular (4a^3 + 27b^2 = 0)")]
    SingularCubic,
    #[error("j-invariant formula needs p >= 5, got p = {0}")]
    SmallCharacteristic(u32),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("parameter error: {0}")]
    Param(String),
}
