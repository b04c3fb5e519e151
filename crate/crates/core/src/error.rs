use thiserror::Error;

use crate::lie::{SimpleType, Weight};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid simple type {series}{rank}")]
    InvalidType { series: char, rank: usize },

    #[error("Weyl group of {ty} has more than {cap} elements")]
    GroupTooLarge { ty: SimpleType, cap: usize },

    #[error("expected a vector of length {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("weight {0} is not integral")]
    NotIntegral(Weight),

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {weight} is not in the level-{level} alcove")]
    NotInAlcove { weight: Weight, level: u32 },

    #[error("point {0} lands on the boundary of the Weyl-orbit of the alcove")]
    OnBoundary(Weight),

    #[error("affine root {0} is imaginary")]
    ImaginaryRoot(String),

    #[error(
        "Verlinde sum for {what} has residual {residual:.3e} (imaginary part {imaginary:.3e}), \
         above the {tolerance:.1e} rounding tolerance"
    )]
    ResidualTooLarge {
        what: String,
        residual: f64,
        imaginary: f64,
        tolerance: f64,
    },

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("torus point {tau} is not regular: root {root} pairs to an integer")]
    RegularityError { tau: Weight, root: Weight },

    #[error("identity violated: {0}")]
    IdentityViolated(String),
}
