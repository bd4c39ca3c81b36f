use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("price must be strictly positive, got {0}")]
    NonPositivePrice(f64),
    #[error("gamma = 1 (logarithmic utility) is not supported")]
    GammaEqualsOne,
    #[error("gamma must exceed 1 for the polynomial reduction, got {0}")]
    GammaOutOfRange(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid economy: {0}")]
    InvalidEconomy(String),
    #[error("index t = {t} outside [1, {max}]")]
    IndexOutOfRange { t: usize, max: usize },
    #[error("cannot approximate epsilon = {0} by m/n with 0 < m < n")]
    EpsilonNotRepresentable(String),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("leading coefficient of the cubic is zero")]
    DegenerateLeadingCoefficient,
    #[error("certificate requires exactly two types, economy has {0}")]
    WrongArity(usize),
    #[error("certificate requires gamma = 3, economy has gamma = {0}")]
    UnsupportedGamma(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invalid scan range [{0}, {1}]")]
    RangeInvalid(f64, f64),
    #[error("config error: {0}")]
    ConfigParse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
