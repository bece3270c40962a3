//! Exact symbolic engine for free-field vertex superalgebras (bc-βγ systems).
//!
//! The crate builds the quantum Lichnerowicz operator of a polynomial Poisson
//! bivector, verifies its nilpotency and its compatibility with the chiral
//! de Rham operator, and computes classical and quantum Lichnerowicz–Poisson
//! cohomology in finite graded truncations. An appendix module verifies
//! Nambu-Poisson brackets (Jacobian determinants, Filippov–Jacobi identity,
//! Takhtajan tensor conditions) and bridges even-order tensors back to the
//! quantum operator.
//!
//! Layering, bottom up:
//! - [`coeff`]: exact ℚ[ħ] coefficients;
//! - [`algebra`]: canonically ordered supercommutative words and states;
//! - [`ope`]: Wick-contraction OPEs and the residue bracket;
//! - [`poly`], [`poisson`]: classical polynomial multivector calculus;
//! - [`quantum`]: the quantum Lichnerowicz and chiral de Rham operators,
//!   nilpotency checks and graded cohomology;
//! - [`nambu`]: n-ary Nambu-Poisson verification;
//! - [`parse`], [`render`], [`report`], [`cli`]: the text interface.

pub mod algebra;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod linalg;
pub mod nambu;
pub mod ope;
pub mod parse;
pub mod poisson;
pub mod poly;
pub mod quantum;
pub mod render;
pub mod report;

pub use algebra::{enumerate_basis, is_total_derivative, Bidegree, Generator, Kind, State, Word};
pub use coeff::{HbarPoly, Rat};
pub use error::{AlgebraError, ParseError};
pub use ope::{contraction_kernel, hbar_component, ope, IntegratedOperator, OpeConvention};
pub use poisson::{
    jacobi_check, lichnerowicz_d, lp_cohomology, schouten, Multivector, PoissonTensor,
};
pub use poly::Poly;
pub use quantum::{
    build_chiral, build_generator, quantum_cohomology, BPairing, ChiralDeRham, QuantumGenerator,
};
pub use render::render_state;
