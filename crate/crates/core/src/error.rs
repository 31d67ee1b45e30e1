use thiserror::Error;

/// Failures reported by the algebra, spectral, Gelfand, state and box-model
/// operations. Variant names double as the stable identifiers printed by the
/// command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NotHermitian: ‖m − m*‖ = {residual:.3e} exceeds tolerance")]
    NotHermitian { residual: f64 },
    #[error("Singular: smallest singular value {sigma_min:.3e} is below tolerance")]
    Singular { sigma_min: f64 },
    #[error("NoConvergence: {0}")]
    NoConvergence(&'static str),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("NonFinite: matrix contains NaN or infinite entries")]
    NonFinite,
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    #[error("NotInAlgebra: projection residual {residual:.3e} exceeds tolerance")]
    NotInAlgebra { residual: f64 },
    #[error("NotClosed: span is not closed under multiplication (residual {residual:.3e})")]
    NotClosed { residual: f64 },
    #[error("NotSubspace: the given set does not lie in the algebra")]
    NotSubspace,
    #[error("NotTwoSided: subspace is not a two-sided ideal")]
    NotTwoSided,
    #[error("NotProper: ideal equals the whole algebra")]
    NotProper,
    #[error("BudgetExceeded: minimizer did not stabilize within {evaluations} evaluations")]
    BudgetExceeded { evaluations: usize },
    #[error("NotRealAlgebra: algebra is not flagged real or has non-real entries")]
    NotRealAlgebra,
    #[error("SingularResolvent: z lies within {distance:.3e} of the spectrum")]
    SingularResolvent { distance: f64 },
    #[error("Overflow: power norms left the floating range after {} trace entries", partial.len())]
    Overflow { partial: Vec<(u64, f64)> },
    #[error("NotContractive: ‖a‖ = {norm} is not below 1")]
    NotContractive { norm: f64 },
    #[error("NotPositive: {0}")]
    NotPositive(String),
    #[error("NotNormal: ‖aa* − a*a‖ = {residual:.3e} exceeds tolerance")]
    NotNormal { residual: f64 },
    #[error("NonAbelian: commutator norm {residual:.3e} exceeds tolerance")]
    NonAbelian { residual: f64 },
    #[error("WitnessNotFound: no invertible kernel element after {attempts} attempts")]
    WitnessNotFound { attempts: usize },
    #[error("NotUnitVector: ‖x‖ = {norm}")]
    NotUnitVector { norm: f64 },
    #[error("NotUnital: the algebra has no identity")]
    NotUnital,
    #[error("NotNormalized: f(1) = {value}, expected 1")]
    NotNormalized { value: f64 },
    #[error("NotStarClosed: the algebra is not closed under the adjoint")]
    NotStarClosed,
    #[error("AlgebraMismatch: operands belong to different algebras")]
    AlgebraMismatch,
    #[error("LevelOutOfRange: level {level} outside 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("InvalidGrid: {0}")]
    InvalidGrid(String),
}

impl Error {
    /// Short identifier, e.g. `"NotPositive"`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::Singular { .. } => "Singular",
            Error::NoConvergence(_) => "NoConvergence",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NonFinite => "NonFinite",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NotInAlgebra { .. } => "NotInAlgebra",
            Error::NotClosed { .. } => "NotClosed",
            Error::NotSubspace => "NotSubspace",
            Error::NotTwoSided => "NotTwoSided",
            Error::NotProper => "NotProper",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotRealAlgebra => "NotRealAlgebra",
            Error::SingularResolvent { .. } => "SingularResolvent",
            Error::Overflow { .. } => "Overflow",
            Error::NotContractive { .. } => "NotContractive",
            Error::NotPositive(_) => "NotPositive",
            Error::NotNormal { .. } => "NotNormal",
            Error::NonAbelian { .. } => "NonAbelian",
            Error::WitnessNotFound { .. } => "WitnessNotFound",
            Error::NotUnitVector { .. } => "NotUnitVector",
            Error::NotUnital => "NotUnital",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::NotStarClosed => "NotStarClosed",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::LevelOutOfRange { .. } => "LevelOutOfRange",
            Error::InvalidGrid(_) => "InvalidGrid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
