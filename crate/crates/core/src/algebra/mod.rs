//! Coefficient domains: rationals, polynomials, rational functions, dual
//! numbers, and small matrices over any of them.

pub mod dual;
pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod roots;
pub mod scalar;

pub use dual::Dual;
pub use matrix::Matrix;
pub use poly::{MultiPoly, Var};
pub use ratfun::RationalFunction;
pub use roots::{polynomial_roots, RootReport};
pub use scalar::{
    f64_to_rational, format_rational, int, parse_rational, rat, rational_to_f64, Field, Rational,
    Scalar,
};

pub use num_traits::{One, Zero};

/// Complex value used by zero analysis and partial fractions.
pub type ComplexVal = num_complex::Complex64;
