//! Exact arithmetic for matrix differential operators on a trivial vector
//! bundle over affine space, their graded symbol algebra, and a randomized
//! property harness.

pub mod compute;
pub mod diffop;
pub mod error;
pub mod gl;
pub mod json;
pub mod matrix;
pub mod morphism;
pub mod poly;
pub mod rational;
pub mod symbol;

pub use diffop::{DifferentialOperator, Order, Section};
pub use error::{Error, NonInvertibleReason, Result};
pub use gl::GlSymbol;
pub use json::Json;
pub use matrix::{MatrixPolynomial, PhaseMatrix, RatMatrix};
pub use morphism::{InducedMap, InducedPair, MorphismSpec, SymbolMap};
pub use poly::{MultiIndex, PhasePolynomial, Polynomial};
pub use rational::Rational;
pub use symbol::{GradedComponent, SymbolElement};

pub mod harness {
    //! Randomized property checking over the algebraic laws.
    pub mod config;
    pub mod oracles;
    pub mod random;
    pub mod report;
    pub mod suites;
}
