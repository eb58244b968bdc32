//! The discretized PT-symmetric square well as a one-parameter matrix family.
//!
//! A particle in a box with a piece-wise constant imaginary potential
//! (-iZ on the left half, 0 at the center, +iZ on the right), discretized to
//! an odd number of interior grid points, reduces to
//!
//! ```text
//! H = (i xi  1    0  )
//!     (1     0    1  )      xi = Z / eta,
//!     (0     1  -i xi)
//! ```
//!
//! for three points, with the kinetic constant absorbed into H0 = 2E - H.
//! The general odd-n matrix keeps off-diagonal entries 1 and continues the
//! diagonal pattern +i xi (left half), 0 (center), -i xi (right half); three
//! points reproduce the display above exactly.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use num_complex::Complex64;
use std::fmt;

/// Which matrix the builder returns: the reduced H or H0 = 2E - H. Shifting
/// and negating preserves Jordan structure, so both carry the same verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    H,
    H0,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convention::H => write!(f, "H"),
            Convention::H0 => write!(f, "H0"),
        }
    }
}

/// Configuration of the well: dimensionless coupling, number of interior
/// grid points (odd, so the zero-potential center point exists), and the
/// matrix convention.
#[derive(Clone, Debug)]
pub struct PtWellConfig<S> {
    /// Dimensionless coupling xi = Z / eta; must be real.
    pub xi: S,
    /// Odd number of interior grid points; 3 reproduces the 3x3 display.
    pub interior_points: usize,
    pub convention: Convention,
}

/// Build the well matrix for the given configuration.
pub fn build_ptwell<S: Scalar>(cfg: &PtWellConfig<S>) -> Result<Matrix<S>, Error> {
    let n = cfg.interior_points;
    if n.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "interior_points must be odd and positive, got {n}"
        )));
    }
    if !cfg.xi.is_real() {
        return Err(Error::InvalidConfig("coupling xi must be real".into()));
    }
    let center = n / 2;
    let i_xi = S::imag_unit() * cfg.xi.clone();
    let mut h = Matrix::zeros(n);
    for k in 0..n {
        if k < center {
            h.set(k, k, i_xi.clone());
        } else if k > center {
            h.set(k, k, -i_xi.clone());
        }
        if k + 1 < n {
            h.set(k, k + 1, S::one());
            h.set(k + 1, k, S::one());
        }
    }
    match cfg.convention {
        Convention::H => Ok(h),
        Convention::H0 => {
            let two_e = Matrix::identity(n).scale(&S::from_i64(2));
            two_e.sub(&h)
        }
    }
}

/// A one-parameter matrix family: a pure map from the real parameter to a
/// matrix, evaluated in float mode.
pub trait MatrixFamily: Sync {
    fn dim(&self) -> usize;
    fn label(&self) -> &str;
    fn evaluate(&self, param: f64) -> Matrix<Complex64>;
}

/// The well family with the coupling as the parameter.
pub struct PtWellFamily {
    interior_points: usize,
    convention: Convention,
    label: String,
}

/// Package the well as a family for sweeping.
pub fn ptwell_family(
    interior_points: usize,
    convention: Convention,
) -> Result<PtWellFamily, Error> {
    if interior_points.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "interior_points must be odd and positive, got {interior_points}"
        )));
    }
    let label = format!("ptwell(n={interior_points}, convention={convention})");
    Ok(PtWellFamily { interior_points, convention, label })
}

impl MatrixFamily for PtWellFamily {
    fn dim(&self) -> usize {
        self.interior_points
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn evaluate(&self, param: f64) -> Matrix<Complex64> {
        let cfg = PtWellConfig {
            xi: Complex64::new(param, 0.0),
            interior_points: self.interior_points,
            convention: self.convention,
        };
        build_ptwell(&cfg).expect("validated at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ToleranceConfig;
    use crate::diagnosis::{diagnose, pt_symmetry_check};
    use crate::matrix::{mat_power, mat_vec, vectorize, Vector};
    use crate::minpoly::minimal_polynomial;
    use crate::roots::roots;
    use crate::scalar::GaussRational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn float_cfg(xi: f64, n: usize, convention: Convention) -> PtWellConfig<Complex64> {
        PtWellConfig { xi: c(xi, 0.0), interior_points: n, convention }
    }

    #[test]
    fn three_point_matrix_matches_the_display() {
        let xi = 0.8;
        let h = build_ptwell(&float_cfg(xi, 3, Convention::H)).unwrap();
        let v = vectorize(&h);
        let want = [
            c(0.0, xi),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, -xi),
        ];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(v.at(k), w);
        }
    }

    #[test]
    fn h0_is_two_e_minus_h() {
        let xi = 1.3;
        let h = build_ptwell(&float_cfg(xi, 3, Convention::H)).unwrap();
        let h0 = build_ptwell(&float_cfg(xi, 3, Convention::H0)).unwrap();
        let two_e = Matrix::identity(3).scale(&c(2.0, 0.0));
        assert_eq!(h0, two_e.sub(&h).unwrap());
    }

    #[test]
    fn free_particle_spectrum() {
        // xi = 0: the hopping matrix; eigenvalues 0, +-sqrt(2) are the roots
        // of x^3 - 2x.
        let h = build_ptwell(&float_cfg(0.0, 3, Convention::H)).unwrap();
        assert!(pt_symmetry_check(&h, 1e-12));
        // Real symmetric at xi = 0.
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(h.at(i, j).im, 0.0);
                assert_eq!(h.at(i, j), h.at(j, i));
            }
        }
        let mp = minimal_polynomial(&h, 1e-9).minimal;
        let rs = roots(&mp, &ToleranceConfig::default()).unwrap();
        assert_eq!(rs.len(), 3);
        let want = [-(2f64.sqrt()), 0.0, 2f64.sqrt()];
        for (r, w) in rs.iter().zip(&want) {
            assert!((r.value - c(*w, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn even_point_count_is_rejected() {
        assert!(build_ptwell(&float_cfg(1.0, 4, Convention::H)).is_err());
        assert!(ptwell_family(4, Convention::H).is_err());
        assert!(build_ptwell(&float_cfg(1.0, 0, Convention::H)).is_err());
    }

    #[test]
    fn complex_coupling_is_rejected() {
        let cfg = PtWellConfig { xi: c(1.0, 0.5), interior_points: 3, convention: Convention::H };
        assert!(build_ptwell(&cfg).is_err());
    }

    #[test]
    fn family_evaluation_is_pure_and_labelled() {
        let family = ptwell_family(3, Convention::H).unwrap();
        assert_eq!(family.dim(), 3);
        assert_eq!(family.label(), "ptwell(n=3, convention=H)");
        let xi = 2f64.sqrt();
        assert_eq!(family.evaluate(xi), family.evaluate(xi));
        // The critical matrix is the non-diagonalizable one.
        let report = diagnose(&family.evaluate(xi), &ToleranceConfig::default()).unwrap();
        assert!(!report.diagonalizable);
    }

    #[test]
    fn every_size_is_pt_symmetric() {
        for n in [1, 3, 5, 7, 9] {
            for xi in [0.0, 0.7, 2f64.sqrt(), 2.9] {
                for convention in [Convention::H, Convention::H0] {
                    let m = build_ptwell(&float_cfg(xi, n, convention)).unwrap();
                    assert!(pt_symmetry_check(&m, 1e-12), "n={n}, xi={xi}, {convention}");
                }
            }
        }
    }

    #[test]
    fn rational_power_identity() {
        // H^3 = (2 - xi^2) H exactly over the rationals.
        let xi = GaussRational::from_ratios(6, 5, 0, 1);
        let cfg = PtWellConfig { xi: xi.clone(), interior_points: 3, convention: Convention::H };
        let h = build_ptwell(&cfg).unwrap();
        let h3 = mat_power(&h, 3);
        let factor = GaussRational::from_ints(2, 0) - xi.clone() * xi;
        let rhs = h.scale(&factor);
        assert_eq!(h3, rhs);
    }

    #[test]
    fn zero_mode_for_every_coupling() {
        // (1, -i xi, -1) is annihilated by H for every xi, including the
        // critical couplings.
        for xi in [0.0, 1.0, 2f64.sqrt(), 2.2] {
            let h = build_ptwell(&float_cfg(xi, 3, Convention::H)).unwrap();
            let v = Vector::from_vec(vec![c(1.0, 0.0), c(0.0, -xi), c(-1.0, 0.0)]);
            let hv = mat_vec(&h, &v).unwrap();
            assert!(hv.norm() < 1e-14, "xi = {xi}");
        }
    }

    #[test]
    fn pt_symmetry_forces_real_minpoly_coefficients() {
        // Eigenvalues of a PT-symmetric matrix pair under conjugation, so
        // the minimal polynomial has real coefficients up to rounding.
        for n in [3, 5] {
            for xi in [0.3, 1.0, 2f64.sqrt(), 2.4] {
                let h = build_ptwell(&float_cfg(xi, n, Convention::H)).unwrap();
                let mp = minimal_polynomial(&h, 1e-9).minimal;
                for coeff in mp.low_coeffs() {
                    assert!(
                        coeff.im.abs() <= 1e-10 * mp.coeff_norm().max(1.0),
                        "n={n}, xi={xi}: coefficient {coeff}"
                    );
                }
            }
        }
    }

    #[test]
    fn h_and_h0_verdicts_agree() {
        let tols = ToleranceConfig::default();
        for xi in [1.0, 2f64.sqrt(), 2.0] {
            let h = build_ptwell(&float_cfg(xi, 3, Convention::H)).unwrap();
            let h0 = build_ptwell(&float_cfg(xi, 3, Convention::H0)).unwrap();
            let a = diagnose(&h, &tols).unwrap().diagonalizable;
            let b = diagnose(&h0, &tols).unwrap().diagonalizable;
            assert_eq!(a, b, "xi = {xi}");
        }
    }

    #[test]
    fn five_point_family_is_consistent() {
        let family = ptwell_family(5, Convention::H).unwrap();
        let m = family.evaluate(0.9);
        assert!(pt_symmetry_check(&m, 1e-12));
        assert_eq!(m.dim(), 5);
        // Diagonal pattern: +i xi, +i xi, 0, -i xi, -i xi.
        assert_eq!(*m.at(0, 0), c(0.0, 0.9));
        assert_eq!(*m.at(1, 1), c(0.0, 0.9));
        assert_eq!(*m.at(2, 2), c(0.0, 0.0));
        assert_eq!(*m.at(3, 3), c(0.0, -0.9));
        assert_eq!(*m.at(4, 4), c(0.0, -0.9));
    }
}
