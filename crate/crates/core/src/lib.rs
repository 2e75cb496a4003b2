//! Exact quantum Schubert calculus for the complete flag variety and for its
//! smooth Schubert divisor `X` (the classes `w` with `w(n) != 1`).
//!
//! The crate computes in the small quantum cohomology rings of both spaces by
//! two independent routes that verify each other:
//!
//! * combinatorial product formulas ([`qprod`]): the quantum Monk formula,
//!   the quantum Monk-Chevalley formula for `X`, and general products via the
//!   transition recursion;
//! * quotient-ring presentations ([`qring`]): exact reduction of products of
//!   quantum Schubert polynomials modulo the presentation ideals.
//!
//! Supporting layers: symmetric-group combinatorics ([`perm`]), sparse exact
//! polynomial arithmetic ([`poly`], [`matrix`]), and Schubert polynomials with
//! their quantization ([`schubert`]).

pub mod linalg;
pub mod matrix;
pub mod perm;
pub mod poly;
pub mod qprod;
pub mod qring;
pub mod schubert;

pub use matrix::{build_matrix, MatrixKind, NamedPolys, PolyMatrix};
pub use perm::{
    curve_neighborhood, z_d, CurveDegree, GradingConfig, PermError, Permutation, Space,
};
pub use poly::{Monomial, PolyError, Polynomial, Var};
pub use qprod::{
    chevalley_x, general_product, monk_fl, multiplication_table, ProdError, ProductCtx,
    ProductTable,
};
pub use qring::{
    verify_lefschetz_hom, LefschetzReport, Presentation, RingError, SchubertExpansion,
};
pub use schubert::{
    divided_difference, e_expansion, quantum_schubert_poly, quantum_schubert_via_transition,
    schubert_poly, transition_expand, EBasis, SchubertError,
};
