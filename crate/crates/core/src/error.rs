use thiserror::Error;

/// Errors raised by the library. Each variant maps to one CLI exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the reduced polynomial is identically zero")]
    AllZero,
    #[error("a root coincides with the collision point u = {0}")]
    DegenerateAtCollision(&'static str),
    #[error("parameters lie on the discriminant set: double root near u = {0}")]
    OnDiscriminant(f64),
    #[error("parameter point lies on a region boundary: {0}")]
    Boundary(String),
    #[error("the transformed chart is undefined (third coupling slot is zero)")]
    ChartUndefined,
    #[error("u = {0} is not a cusp parameter of the discriminant curve")]
    NotACusp(f64),
    #[error("u = {0} is a collision point")]
    CollisionPoint(f64),
    #[error("collinear reconstruction requested at collision point u = {0}")]
    CollisionInput(f64),
    #[error("configuration is not central: residual {0:e}")]
    NotACentralConfiguration(f64),
    #[error("distances do not form a triangle")]
    NotRealizable,
    #[error("multiplier {0} is not positive")]
    NonpositiveMultiplier(f64),
    #[error("two bodies collide")]
    Collision,
    #[error("no such root: {0}")]
    NoSuchRoot(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::AllZero => "AllZero",
            Error::DegenerateAtCollision(_) => "DegenerateAtCollision",
            Error::OnDiscriminant(_) => "OnDiscriminant",
            Error::Boundary(_) => "Boundary",
            Error::ChartUndefined => "ChartUndefined",
            Error::NotACusp(_) => "NotACusp",
            Error::CollisionPoint(_) => "CollisionPoint",
            Error::CollisionInput(_) => "CollisionInput",
            Error::NotACentralConfiguration(_) => "NotACentralConfiguration",
            Error::NotRealizable => "NotRealizable",
            Error::NonpositiveMultiplier(_) => "NonpositiveMultiplier",
            Error::Collision => "Collision",
            Error::NoSuchRoot(_) => "NoSuchRoot",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// 2 for bad input, 3 for numerical degeneracy.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::ChartUndefined
            | Error::CollisionInput(_)
            | Error::CollisionPoint(_)
            | Error::NotACusp(_)
            | Error::NotRealizable
            | Error::NoSuchRoot(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
