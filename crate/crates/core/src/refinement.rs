//! Refinement masks of polynomials.
//!
//! For a polynomial `p` of degree `n`, shifts `l_0..l_n` and dilation `a`,
//! the mask `m` satisfies `p(x) = sum_i m_i p(a x - l_i)`. Comparing monomial
//! coefficients gives the square system `p = D_a * C * V * m`, which
//! [`compute_mask`] inverts factor by factor.

use std::fmt;

use num_traits::{Inv, Zero};

use crate::algebra::{poly_linear_combination, rational_pow, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::linalg::{
    build_coefficient_matrix, build_dilation_matrix, build_vandermonde_matrix,
    check_distinct_shifts, shift_nodes, solve_dual_vandermonde, solve_exact,
    solve_upper_triangular,
};

/// A validated refinement problem: `degree + 1` distinct integer shifts and a
/// nonzero rational dilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementProblem {
    poly: Polynomial,
    shifts: Vec<i64>,
    dilation: Rational,
}

impl RefinementProblem {
    pub fn new(poly: Polynomial, shifts: Vec<i64>, dilation: Rational) -> Result<Self> {
        if dilation.is_zero() {
            return Err(Error::ZeroDilation);
        }
        check_distinct_shifts(&shifts)?;
        let expected = poly.degree() + 1;
        if shifts.len() != expected {
            return Err(Error::ShiftCountMismatch {
                expected,
                actual: shifts.len(),
            });
        }
        Ok(RefinementProblem {
            poly,
            shifts,
            dilation,
        })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn dilation(&self) -> &Rational {
        &self.dilation
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }
}

/// Mask entries aligned index by index with the problem's shifts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mask(Vec<Rational>);

impl Mask {
    pub fn new(entries: Vec<Rational>) -> Self {
        Mask(entries)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all entries. Equals `a^(-n)` for any mask of a degree `n` polynomial.
    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl From<Vec<Rational>> for Mask {
    fn from(entries: Vec<Rational>) -> Self {
        Mask(entries)
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Computes the unique mask with `D_a * C * V * m = p`.
///
/// Each factor is inverted by its own structure: the diagonal by dividing by
/// `a^i`, `C` by back substitution and `V` by the O(n^2) dual Vandermonde
/// solver on the nodes `-l_j`.
pub fn compute_mask(problem: &RefinementProblem) -> Result<Mask> {
    let p = problem.poly();
    let a_inv = problem.dilation().inv();
    let scaled: Vec<Rational> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, pi)| pi * rational_pow(&a_inv, i))
        .collect();
    let c = build_coefficient_matrix(p);
    let w = solve_upper_triangular(&c, &scaled)?;
    let m = solve_dual_vandermonde(&shift_nodes(problem.shifts()), &w)?;
    Ok(Mask(m))
}

/// Dense route: assembles `D_a * C * V` and solves it by Gaussian elimination.
pub fn compute_mask_oracle(problem: &RefinementProblem) -> Result<Mask> {
    let p = problem.poly();
    let d = build_dilation_matrix(problem.dilation(), p.degree())?;
    let c = build_coefficient_matrix(p);
    let v = build_vandermonde_matrix(problem.shifts())?;
    let system = d.mul(&c)?.mul(&v)?;
    solve_exact(&system, p.coeffs()).map(Mask)
}

/// Right-hand side of the refinement identity, `sum_i mask_i * p(a x - shifts_i)`.
///
/// `None` means every term cancelled.
pub fn expand_refinement(
    p: &Polynomial,
    shifts: &[i64],
    a: &Rational,
    mask: &Mask,
) -> Result<Option<Polynomial>> {
    if mask.len() != shifts.len() {
        return Err(Error::DimensionMismatch {
            expected: shifts.len(),
            actual: mask.len(),
        });
    }
    let composed = shifts
        .iter()
        .map(|&l| p.affine_compose(a, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(poly_linear_combination(
        mask.entries().iter().zip(&composed),
    ))
}

/// True iff the refinement identity holds coefficient by coefficient.
pub fn verify_refinement(
    p: &Polynomial,
    shifts: &[i64],
    a: &Rational,
    mask: &Mask,
) -> Result<bool> {
    Ok(expand_refinement(p, shifts, a, mask)?.as_ref() == Some(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn worked() -> RefinementProblem {
        RefinementProblem::new(
            Polynomial::from_integers(&[1, 0, 1]).unwrap(),
            vec![0, 1, 2],
            int(2),
        )
        .unwrap()
    }

    #[test]
    fn problem_validation() {
        let p = Polynomial::from_integers(&[1, 0, 1]).unwrap();
        assert_eq!(
            RefinementProblem::new(p.clone(), vec![0, 1, 2], int(0)),
            Err(Error::ZeroDilation)
        );
        assert_eq!(
            RefinementProblem::new(p.clone(), vec![0, 0, 1], int(2)),
            Err(Error::DuplicateShifts(0))
        );
        assert_eq!(
            RefinementProblem::new(p.clone(), vec![0, 1, 2, 3], int(2)),
            Err(Error::ShiftCountMismatch {
                expected: 3,
                actual: 4
            })
        );
        assert_eq!(
            RefinementProblem::new(p, vec![0, 1], int(2)),
            Err(Error::ShiftCountMismatch {
                expected: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn worked_example_both_routes() {
        let expected = Mask::new(vec![q(5, 8), q(-3, 4), q(3, 8)]);
        assert_eq!(compute_mask(&worked()).unwrap(), expected);
        assert_eq!(compute_mask_oracle(&worked()).unwrap(), expected);
        assert_eq!(expected.sum(), q(1, 4));
    }

    #[test]
    fn monomial_mask_concentrates_at_zero() {
        for n in 0..6 {
            let mut shifts: Vec<i64> = (1..=n as i64)
                .map(|s| if s % 2 == 0 { s } else { -3 * s })
                .collect();
            shifts.insert(n / 2, 0);
            let a = q(-3, 5);
            let problem =
                RefinementProblem::new(Polynomial::monomial(n), shifts.clone(), a.clone()).unwrap();
            let mask = compute_mask(&problem).unwrap();
            for (s, m) in shifts.iter().zip(mask.entries()) {
                if *s == 0 {
                    assert_eq!(m, &rational_pow(&a.clone().inv(), n));
                } else {
                    assert!(m.is_zero());
                }
            }
        }
    }

    #[test]
    fn linear_with_negative_dilation() {
        let problem = RefinementProblem::new(Polynomial::monomial(1), vec![0, 1], int(-1)).unwrap();
        assert_eq!(
            compute_mask(&problem).unwrap(),
            Mask::new(vec![int(-1), int(0)])
        );
    }

    #[test]
    fn constant_has_unit_mask() {
        let problem = RefinementProblem::new(
            Polynomial::from_coeffs(vec![q(-5, 3)]).unwrap(),
            vec![17],
            q(7, 2),
        )
        .unwrap();
        let mask = compute_mask(&problem).unwrap();
        assert_eq!(mask, Mask::new(vec![int(1)]));
        assert!(verify_refinement(problem.poly(), &[-4], &int(9), &mask).unwrap());
    }

    #[test]
    fn expand_refinement_examples() {
        let p = Polynomial::from_integers(&[1, 0, 1]).unwrap();
        let a = int(2);
        let mask = Mask::new(vec![q(5, 8), q(-3, 4), q(3, 8)]);
        assert_eq!(
            expand_refinement(&p, &[0, 1, 2], &a, &mask).unwrap(),
            Some(p.clone())
        );

        let zeros = Mask::new(vec![int(0); 3]);
        assert_eq!(expand_refinement(&p, &[0, 1, 2], &a, &zeros).unwrap(), None);

        let x2 = Polynomial::monomial(2);
        let conc = Mask::new(vec![q(1, 4), int(0), int(0)]);
        assert_eq!(
            expand_refinement(&x2, &[0, 1, 2], &a, &conc).unwrap(),
            Some(x2)
        );

        assert!(matches!(
            expand_refinement(&p, &[0, 1, 2], &a, &Mask::new(vec![int(1)])),
            Err(Error::DimensionMismatch {
                expected: 3,
                actual: 1
            })
        ));
    }

    #[test]
    fn verify_detects_perturbation() {
        let p = Polynomial::from_integers(&[1, 0, 1]).unwrap();
        let a = int(2);
        let good = Mask::new(vec![q(5, 8), q(-3, 4), q(3, 8)]);
        assert!(verify_refinement(&p, &[0, 1, 2], &a, &good).unwrap());
        let bad = Mask::new(vec![q(1, 2), q(-3, 4), q(3, 8)]);
        assert!(!verify_refinement(&p, &[0, 1, 2], &a, &bad).unwrap());
    }

    /// The alternative `C` with `binom(n-j+i, j)` breaks the identity on the
    /// worked example, while the row-indexed form satisfies it.
    #[test]
    fn column_indexed_binomial_fails_identity() {
        use crate::algebra::binomial;
        use crate::linalg::Matrix;

        let problem = worked();
        let p = problem.poly();
        let n = p.degree();
        let mut alt = Matrix::zeros(n + 1);
        for i in 0..=n {
            for j in i..=n {
                let k = n - j + i;
                alt.set(
                    i,
                    j,
                    &p.coeffs()[k] * Rational::from_integer(binomial(k, j)),
                );
            }
        }
        assert_ne!(alt, build_coefficient_matrix(p));
        let system = build_dilation_matrix(problem.dilation(), n)
            .unwrap()
            .mul(&alt)
            .unwrap()
            .mul(&build_vandermonde_matrix(problem.shifts()).unwrap())
            .unwrap();
        match solve_exact(&system, p.coeffs()) {
            Ok(m) => assert!(
                !verify_refinement(p, problem.shifts(), problem.dilation(), &Mask(m)).unwrap()
            ),
            Err(e) => assert_eq!(e.name(), "SingularMatrix"),
        }
    }
}
