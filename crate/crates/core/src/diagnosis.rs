//! Diagonalizability verdicts.
//!
//! A matrix is diagonalizable exactly when its minimal polynomial has only
//! simple roots, i.e. when gcd(m, m') is constant. The report combines that
//! criterion with the root structure of the minimal polynomial and, per
//! eigenvalue, the kernel of the shifted matrix (geometric multiplicity and
//! eigenvector witnesses).
//!
//! `oracle_minimal_polynomial` is the independent cross-check: it expands
//! det(xE - M) over polynomials, finds the roots, and searches exponent
//! patterns for the smallest product annihilating M. Exact minor expansion
//! is exponential in the dimension, so it sits behind a size bound; it
//! exists for trust, not throughput.

use crate::config::{ToleranceConfig, BORDERLINE_RESIDUAL_FACTOR, NEAR_EXCEPTIONAL_DISC_TOL};
use crate::error::Error;
use crate::matrix::{kernel_basis, mat_power, Matrix, Vector};
use crate::minpoly::{minimal_polynomial, MinPolyResult};
use crate::poly::{derivative, discriminant, gcd, MonicPoly, Poly};
use crate::roots::{roots, Root};
use crate::scalar::Scalar;
use num_complex::Complex64;
use std::collections::HashMap;
use std::fmt;

/// Root of the minimal polynomial with its multiplicities and eigenvector
/// witnesses. Eigen data is always float: root finding leaves the exact
/// field, and exactness claims never rest on it.
#[derive(Clone, Debug)]
pub struct EigenEntry {
    pub value: Complex64,
    pub minpoly_multiplicity: usize,
    pub geometric_multiplicity: usize,
    pub eigenvectors: Vec<Vector<Complex64>>,
}

/// Full diagonalizability report.
#[derive(Clone, Debug)]
pub struct DiagnosisReport<S> {
    pub diagonalizable: bool,
    pub minpoly: MonicPoly<S>,
    pub gcd_with_derivative: MonicPoly<S>,
    pub eigen_entries: Vec<EigenEntry>,
    pub condition_flags: Vec<String>,
}

/// Root-finding failure carrying the verdict computed so far (minimal
/// polynomial, GCD and flags, with empty eigen entries).
#[derive(Debug)]
pub struct DiagnoseError<S> {
    pub partial: Box<DiagnosisReport<S>>,
    pub source: Error,
}

impl<S: Scalar> fmt::Display for DiagnoseError<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diagnosis incomplete: {}", self.source)
    }
}

impl<S: Scalar + fmt::Debug> std::error::Error for DiagnoseError<S> {}

/// Decide diagonalizability of `m` and assemble the full report.
///
/// The verdict comes from the degree of gcd(m, m') alone; eigen entries are
/// computed only at roots of the minimal polynomial.
pub fn diagnose<S: Scalar>(
    m: &Matrix<S>,
    tols: &ToleranceConfig,
) -> Result<DiagnosisReport<S>, DiagnoseError<S>> {
    let result = minimal_polynomial(m, tols.rank_tol);
    let mut flags = Vec::new();
    if has_borderline_residuals(&result, tols.rank_tol) {
        flags.push("borderline-rank-residual".to_string());
    }

    let minpoly = result.minimal.clone();
    let deriv = derivative(&minpoly).expect("minimal polynomial has degree >= 1");
    let gcd_with_derivative =
        gcd(&minpoly.to_poly(), &deriv, tols.trunc_tol).expect("inputs not both zero");
    let diagonalizable = gcd_with_derivative.degree() == 0;

    if diagonalizable && minpoly.degree() >= 2 {
        // A clean verdict with a vanishing discriminant means the input sits
        // next to an exceptional point; the boolean stays decisive and the
        // flag carries the ambiguity.
        let disc = discriminant(&minpoly, tols).expect("degree >= 2");
        let scale = minpoly.coeff_norm().max(1.0).powi(2 * minpoly.degree() as i32 - 2);
        if disc.abs() < NEAR_EXCEPTIONAL_DISC_TOL * scale {
            flags.push("near-exceptional".to_string());
        }
    }

    let eigen_entries = match eigen_analysis(m, &minpoly, tols) {
        Ok(entries) => entries,
        Err(source) => {
            return Err(DiagnoseError {
                partial: Box::new(DiagnosisReport {
                    diagonalizable,
                    minpoly,
                    gcd_with_derivative,
                    eigen_entries: Vec::new(),
                    condition_flags: flags,
                }),
                source,
            })
        }
    };

    Ok(DiagnosisReport {
        diagonalizable,
        minpoly,
        gcd_with_derivative,
        eigen_entries,
        condition_flags: flags,
    })
}

fn has_borderline_residuals<S: Scalar>(result: &MinPolyResult<S>, rank_tol: f64) -> bool {
    if S::EXACT {
        return false;
    }
    result.residuals.iter().any(|&r| {
        r > rank_tol / BORDERLINE_RESIDUAL_FACTOR && r <= rank_tol * BORDERLINE_RESIDUAL_FACTOR
    })
}

fn eigen_analysis<S: Scalar>(
    m: &Matrix<S>,
    minpoly: &MonicPoly<S>,
    tols: &ToleranceConfig,
) -> Result<Vec<EigenEntry>, Error> {
    let m_f = m.to_c64();
    let root_list = roots(&minpoly.to_c64(), tols)?;
    let mut entries = Vec::with_capacity(root_list.len());
    for Root { value, multiplicity } in root_list {
        let shifted = m_f.shifted(&value);
        let mut vectors = kernel_basis(&shifted, tols.kernel_tol);
        if vectors.is_empty() {
            // Root uncertainty of a merged cluster can exceed the pivot
            // threshold; retry once with a relaxed threshold so the witness
            // count survives.
            vectors = kernel_basis(&shifted, tols.kernel_tol * 1e3);
        }
        entries.push(EigenEntry {
            value,
            minpoly_multiplicity: multiplicity,
            geometric_multiplicity: vectors.len(),
            eigenvectors: vectors,
        });
    }
    entries.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .expect("finite eigenvalues")
    });
    Ok(entries)
}

/// Characteristic polynomial det(xE - M), expanded exactly over polynomials
/// by minor expansion with memoization on column subsets. Exponential in the
/// dimension; exact in rational mode.
pub fn characteristic_polynomial<S: Scalar>(m: &Matrix<S>) -> MonicPoly<S> {
    let n = m.dim();
    // Degree-1 entries of xE - M.
    let entry = |i: usize, j: usize| -> Poly<S> {
        let mut coeffs = vec![-m.at(i, j).clone()];
        if i == j {
            coeffs.push(S::one());
        }
        Poly::from_coeffs(coeffs)
    };
    let full_mask: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, Poly<S>> = HashMap::new();

    fn det_rec<S: Scalar>(
        row: usize,
        mask: u64,
        n: usize,
        entry: &dyn Fn(usize, usize) -> Poly<S>,
        memo: &mut HashMap<u64, Poly<S>>,
    ) -> Poly<S> {
        if row == n {
            return Poly::one();
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let mut acc = Poly::zero();
        let mut sign_flip = false;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let e = entry(row, j);
            if !e.is_zero() {
                let sub = det_rec(row + 1, mask & !(1 << j), n, entry, memo);
                let term = e.mul(&sub);
                acc = if sign_flip { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_flip = !sign_flip;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    let p = det_rec(0, full_mask, n, &entry, &mut memo);
    MonicPoly::from_poly(&p).expect("det(xE - M) is monic of degree n")
}

/// Cross-check oracle: the route through the characteristic polynomial.
///
/// Finds the roots of det(xE - M), then determines each root's multiplicity
/// in the minimal polynomial as the smallest exponent pattern whose product
/// of shifted factors annihilates M, trying patterns in order of total
/// degree. Falls back to the full Cayley-Hamilton pattern if none passes the
/// annihilation threshold.
pub fn oracle_minimal_polynomial(
    m: &Matrix<Complex64>,
    tols: &ToleranceConfig,
) -> Result<MonicPoly<Complex64>, Error> {
    let n = m.dim();
    if n > tols.oracle_dim_bound {
        return Err(Error::OracleBoundExceeded { dim: n, bound: tols.oracle_dim_bound });
    }
    let char_poly = characteristic_polynomial(m);
    let root_list = roots(&char_poly, tols)?;
    if root_list.is_empty() {
        return Ok(MonicPoly::one());
    }

    // Shifted factors and their norms, reused across patterns.
    let factors: Vec<Matrix<Complex64>> =
        root_list.iter().map(|r| m.shifted(&r.value)).collect();
    let factor_norms: Vec<f64> = factors.iter().map(|f| f.frob_norm().max(1.0)).collect();

    let mut patterns = exponent_patterns(&root_list);
    patterns.sort_by_key(|p| p.iter().sum::<usize>());

    for pattern in &patterns {
        let mut product = Matrix::<Complex64>::identity(n);
        let mut scale = 1.0;
        for (idx, &e) in pattern.iter().enumerate() {
            for _ in 0..e {
                product = product.mul(&factors[idx]).expect("dimensions agree");
                scale *= factor_norms[idx];
            }
        }
        if product.frob_norm() <= tols.oracle_tol * scale {
            return Ok(expand_pattern(&root_list, pattern));
        }
    }
    // Cayley-Hamilton guarantees the full pattern annihilates.
    let full: Vec<usize> = root_list.iter().map(|r| r.multiplicity).collect();
    Ok(expand_pattern(&root_list, &full))
}

fn exponent_patterns(roots: &[Root]) -> Vec<Vec<usize>> {
    let mut patterns = vec![Vec::new()];
    for r in roots {
        let mut next = Vec::new();
        for p in &patterns {
            for e in 1..=r.multiplicity {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        patterns = next;
    }
    patterns
}

fn expand_pattern(roots: &[Root], pattern: &[usize]) -> MonicPoly<Complex64> {
    let mut p = Poly::from_coeffs(vec![Complex64::new(1.0, 0.0)]);
    for (r, &e) in roots.iter().zip(pattern) {
        let factor = Poly::from_coeffs(vec![-r.value, Complex64::new(1.0, 0.0)]);
        for _ in 0..e {
            p = p.mul(&factor);
        }
    }
    MonicPoly::from_poly(&p).expect("product of monic factors is monic")
}

/// True when P conj(M) P = M within tolerance, with P the anti-diagonal
/// permutation: entry (i, j) maps to conj(M[n-1-i][n-1-j]). Exact mode tests
/// equality exactly.
pub fn pt_symmetry_check<S: Scalar>(m: &Matrix<S>, tol: f64) -> bool {
    let n = m.dim();
    let mut reflected = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            reflected.set(i, j, m.at(n - 1 - i, n - 1 - j).conj());
        }
    }
    let diff = reflected.sub(m).expect("same dimension");
    if S::EXACT {
        diff.frob_norm() == 0.0
    } else {
        diff.frob_norm() <= tol * m.frob_norm().max(1.0)
    }
}

/// Annihilation residual |p(M)|_F, for tests and diagnostics.
pub fn annihilation_residual<S: Scalar>(m: &Matrix<S>, p: &MonicPoly<S>) -> f64 {
    let poly = p.to_poly();
    let n = m.dim();
    let mut acc = Matrix::zeros(n);
    for (k, coeff) in poly.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        acc = acc.add(&mat_power(m, k).scale(coeff)).expect("same dimension");
    }
    acc.frob_norm()
}
