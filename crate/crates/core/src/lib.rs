//! Equilibrium prices of two-good exchange economies whose impatience types
//! share a HARA Bernoulli utility.
//!
//! The aggregate excess demand is reduced to a sparse polynomial in
//! `q = p^(1/n)` whose coefficients are built from elementary symmetric sums of
//! the type weights. Positive roots are counted exactly (by the rule of signs
//! when it is decisive, by Sturm sequences otherwise), closed-form uniqueness
//! certificates are checked against that count, and an
//! independent sign-scan on the excess demand itself cross-checks every price.

pub mod bracket;
pub mod certify;
pub mod cli;
pub mod error;
pub mod model;
pub mod num;
pub mod oracle;
pub mod polynomial;
pub mod reduction;
pub mod roots;
pub mod sympoly;

pub use certify::{
    certify, classify_crra_symmetric, direct_count, Certificate, CrraSymmetricSpec, DirectCount, Rule, Verdict,
};
pub use error::{Error, Result};
pub use model::{demand, excess_demand_x, excess_demand_y, Bundle, ConsumerType, Economy, HaraParams};
pub use num::{Rational, Scalar, Value};
pub use oracle::{agree, scan, Agreement, OracleResult};
pub use polynomial::SparsePolynomial;
pub use reduction::{approximate_epsilon, build_reduced_z, theorem1_exponent_check, RationalExponent};
pub use roots::{
    cubic_discriminant, descartes_sign_changes, isolate_positive_roots, prices_from_roots, Classification,
    IsolatePositiveRoots, RootReport,
};
