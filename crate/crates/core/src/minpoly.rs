//! Minimal polynomial by power-vector dependence.
//!
//! # Algorithm
//!
//! A matrix of size N lives in the N^2-dimensional vector space of matrices,
//! so the powers E, M, M^2, ... must become linearly dependent by power N at
//! the latest. Vectorize each power, orthogonalize it against the previously
//! accepted powers, and the first power whose residual vanishes is dependent;
//! the coefficients of that dependence are the minimal polynomial. The
//! characteristic polynomial is never formed.
//!
//! Float mode scales each power vector to unit norm before orthogonalizing
//! (powers of matrices with norm > 1 grow geometrically and would drown the
//! dependence test), runs modified Gram-Schmidt with one reorthogonalization
//! pass, and calls a residual at or below `rank_tol` dependent. Exact mode
//! runs unnormalized Gram-Schmidt (no square roots) and tests residuals for
//! exact zero.
//!
//! The dependence coefficients are recovered by back-substitution through
//! the triangular factor accumulated during orthogonalization, not by
//! re-inverting a Gram matrix.

use crate::matrix::{frobenius_inner, vectorize, Matrix, Vector};
use crate::poly::MonicPoly;
use crate::scalar::Scalar;
use num_complex::Complex64;

/// Outcome of the power-dependence search.
#[derive(Clone, Debug)]
pub struct MinPolyResult<S> {
    /// The monic minimal polynomial; its degree equals `dependence_degree`.
    pub minimal: MonicPoly<S>,
    /// First power that is linearly dependent on the lower powers.
    pub dependence_degree: usize,
    /// Per-power orthogonalization residual norms, powers 0..=dependence_degree.
    /// In float mode all but the last exceed the rank threshold.
    pub residuals: Vec<f64>,
    /// Coefficients b_j expressing M^k as sum of b_j M^j over j < k.
    pub combination: Vec<S>,
}

/// Construct the minimal polynomial of `m` from the first linear dependence
/// among its vectorized powers. Terminates by power N (Cayley-Hamilton); if
/// float noise keeps every residual above `rank_tol`, power N is forced
/// dependent and the oversized residual is visible in `residuals`.
pub fn minimal_polynomial<S: Scalar>(m: &Matrix<S>, rank_tol: f64) -> MinPolyResult<S> {
    let n = m.dim();
    let mut basis: Vec<Vector<S>> = Vec::with_capacity(n + 1);
    // Exact mode keeps unnormalized basis vectors and divides projections by
    // their stored norm-squares; float mode normalizes.
    let mut basis_norm2: Vec<S> = Vec::with_capacity(n + 1);
    // rcols[j] = column of the triangular factor for accepted power j:
    // entries over basis 0..j, then the diagonal.
    let mut rcols: Vec<Vec<S>> = Vec::with_capacity(n + 1);
    let mut scales: Vec<f64> = Vec::with_capacity(n + 1);
    let mut residuals: Vec<f64> = Vec::with_capacity(n + 1);

    let mut power = Matrix::identity(n);
    for k in 0..=n {
        if k > 0 {
            power = power.mul(m).expect("dimensions agree");
        }
        let scale = if S::EXACT { 1.0 } else { 1.0 / power.frob_norm().max(1.0) };
        let mut w = if S::EXACT {
            vectorize(&power)
        } else {
            vectorize(&power).scale(&S::from_c64(Complex64::new(scale, 0.0)))
        };
        scales.push(scale);

        let mut coeffs = vec![S::zero(); basis.len()];
        let passes = if S::EXACT { 1 } else { 2 };
        for _ in 0..passes {
            for (i, q) in basis.iter().enumerate() {
                let mut c = frobenius_inner(q, &w).expect("equal lengths");
                if S::EXACT {
                    c = c / basis_norm2[i].clone();
                }
                w.axpy_sub(&c, q);
                coeffs[i] = coeffs[i].clone() + c;
            }
        }
        let residual = w.norm();
        residuals.push(residual);

        let dependent = if S::EXACT { w.is_exactly_zero() } else { residual <= rank_tol || k == n };
        if dependent {
            // Solve R a = coeffs by back-substitution, then unscale.
            let mut a = vec![S::zero(); k];
            for j in (0..k).rev() {
                let mut s = coeffs[j].clone();
                for (t, at) in a.iter().enumerate().skip(j + 1) {
                    s = s - rcols[t][j].clone() * at.clone();
                }
                a[j] = s / rcols[j][j].clone();
            }
            let combination: Vec<S> = a
                .iter()
                .enumerate()
                .map(|(j, aj)| {
                    if S::EXACT {
                        aj.clone()
                    } else {
                        aj.clone() * S::from_c64(Complex64::new(scales[j] / scales[k], 0.0))
                    }
                })
                .collect();
            let minimal =
                MonicPoly::from_low_coeffs(combination.iter().map(|b| -b.clone()).collect());
            return MinPolyResult { minimal, dependence_degree: k, residuals, combination };
        }

        // Accept the power as a new basis direction.
        if S::EXACT {
            let norm2 = frobenius_inner(&w, &w).expect("equal lengths");
            basis.push(w);
            basis_norm2.push(norm2);
            coeffs.push(S::one());
        } else {
            basis.push(w.scale(&S::from_c64(Complex64::new(1.0 / residual, 0.0))));
            basis_norm2.push(S::one());
            coeffs.push(S::from_c64(Complex64::new(residual, 0.0)));
        }
        rcols.push(coeffs);
    }
    unreachable!("dependence is forced at power N");
}

/// The minimal polynomial is also the characteristic polynomial exactly when
/// its degree reaches the dimension: there is only one monic polynomial of
/// degree N annihilating the matrix. Below that the method alone cannot
/// recover the characteristic polynomial, so `None` is returned.
pub fn characteristic_from_minimal<S: Scalar>(
    result: &MinPolyResult<S>,
    n: usize,
) -> Option<MonicPoly<S>> {
    if result.dependence_degree == n {
        Some(result.minimal.clone())
    } else {
        None
    }
}
