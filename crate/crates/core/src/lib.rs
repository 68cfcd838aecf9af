//! Exact refinement masks for polynomials.
//!
//! A polynomial `p` of degree `n` satisfies a finite refinement identity
//!
//! ```text
//! p(x) = sum_i mask_i * p(a*x - shift_i)
//! ```
//!
//! for any `n + 1` distinct integer shifts and any nonzero dilation `a`. The
//! mask is the unique solution of the factored linear system
//! `p = D_a * C * V * mask`, where `D_a` is diagonal in the powers of `a`, `C`
//! is upper triangular in the coefficients of `p`, and `V` is a Vandermonde
//! matrix in the negated shifts. Everything is computed over exact rationals.
//!
//! ```
//! use polyrefine::{compute_mask, verify_refinement, Polynomial, RefinementProblem, Rational};
//!
//! let p = Polynomial::from_integers(&[1, 0, 1]).unwrap();
//! let problem = RefinementProblem::new(p.clone(), vec![0, 1, 2], Rational::from_integer(2.into())).unwrap();
//! let mask = compute_mask(&problem).unwrap();
//! assert_eq!(mask.to_string(), "[5/8, -3/4, 3/8]");
//! assert!(verify_refinement(&p, &[0, 1, 2], problem.dilation(), &mask).unwrap());
//! ```

pub mod algebra;
pub mod cli;
mod error;
pub mod linalg;
pub mod refinement;

pub use algebra::{parse_rational, poly_linear_combination, Polynomial, Rational};
pub use error::{Error, Result};
pub use linalg::{
    build_coefficient_matrix, build_dilation_matrix, build_vandermonde_matrix, mat_vec_mul,
    solve_dual_vandermonde, solve_exact, solve_upper_triangular, Matrix, Vector,
};
pub use refinement::{
    compute_mask, compute_mask_oracle, expand_refinement, verify_refinement, Mask,
    RefinementProblem,
};
