//! Complex root finding with multiplicities.
//!
//! # Algorithm
//!
//! 1. Split off the square-free part p / gcd(p, p') and run simultaneous
//!    (Durand-Kerner) iteration on it: every root there is simple, which is
//!    where the iteration behaves.
//! 2. Recover multiplicities from the derivative-GCD chain: gcd(p, p')
//!    contains each root of p with multiplicity one less, so its roots
//!    (computed recursively) bump the counts of the matching roots of p.
//! 3. Refine each root on the original polynomial with (multiplicity-aware)
//!    Newton steps and merge anything closer than the cluster tolerance.
//!
//! The GCD-based multiplicity recovery means a pair of roots closer than the
//! remainder-truncation scale is reported as one multiple root; near an
//! exceptional point that is the verdict the rest of the crate wants.

use crate::config::ToleranceConfig;
use crate::error::Error;
use crate::poly::{divmod, gcd, MonicPoly, Poly};
use num_complex::Complex64;

/// A root with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All complex roots of a monic polynomial, with multiplicities, sorted by
/// real part then imaginary part.
pub fn roots(p: &MonicPoly<Complex64>, tols: &ToleranceConfig) -> Result<Vec<Root>, Error> {
    let mut found = roots_by_chain(p, tols)?;
    let pp = p.to_poly();
    let dp = pp.derivative();
    for r in &mut found {
        r.value = refine(&pp, &dp, r.value, r.multiplicity);
    }
    // Refinement can pull merged clusters together; re-merge and sort.
    let mut merged: Vec<Root> = Vec::new();
    for r in found {
        match merged
            .iter_mut()
            .find(|m| (m.value - r.value).norm() <= tols.cluster_tol * m.value.norm().max(1.0))
        {
            Some(m) => m.multiplicity += r.multiplicity,
            None => merged.push(r),
        }
    }
    merged.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .expect("finite roots")
    });
    Ok(merged)
}

fn roots_by_chain(p: &MonicPoly<Complex64>, tols: &ToleranceConfig) -> Result<Vec<Root>, Error> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let pp = p.to_poly();
    let dp = pp.derivative();
    let chain = gcd(&pp, &dp, tols.trunc_tol)?;

    let square_free = if chain.degree() == 0 {
        p.clone()
    } else {
        let (q, _) = divmod(&pp, &chain.to_poly(), tols.trunc_tol)?;
        MonicPoly::from_poly(&q)?
    };

    let simple = durand_kerner(&square_free, tols)?;
    let mut clusters = cluster(simple, tols.cluster_tol);

    if chain.degree() > 0 {
        // Each root of gcd(p, p') carries multiplicity (m - 1); matching it
        // to the nearest root of p raises that root's count.
        for sub in roots_by_chain(&chain, tols)? {
            let nearest = clusters
                .iter_mut()
                .min_by(|a, b| {
                    let da = (a.value - sub.value).norm();
                    let db = (b.value - sub.value).norm();
                    da.partial_cmp(&db).expect("finite distances")
                })
                .expect("square-free part has at least one root");
            nearest.multiplicity += sub.multiplicity;
        }
    }
    Ok(clusters)
}

/// Simultaneous iteration on a square-free monic polynomial; returns one
/// approximation per root.
fn durand_kerner(p: &MonicPoly<Complex64>, tols: &ToleranceConfig) -> Result<Vec<Complex64>, Error> {
    let d = p.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        return Ok(vec![-p.low_coeffs()[0]]);
    }
    let pp = p.to_poly();
    // Cauchy-style radius; the phase offset breaks root-set symmetries.
    let radius = 1.0 + p.low_coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, angle)
        })
        .collect();

    // Horner evaluation noise floor: once |p(z)| sits below it, the
    // coefficients cannot determine the root any better.
    let eval_floor = |x: &Complex64| -> f64 {
        let mut acc = 1.0; // leading coefficient
        for c in p.low_coeffs().iter().rev() {
            acc = acc * x.norm() + c.norm();
        }
        8.0 * d as f64 * f64::EPSILON * acc
    };

    for _ in 0..tols.max_root_iters {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // Collided iterates: nudge and retry next sweep.
                let nudge = 1e-12 * (1.0 + z[i].norm());
                z[i] += Complex64::new(nudge, 0.0);
                max_step = f64::MAX;
                continue;
            }
            let step = pp.eval(&z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step <= 1e-14 || z.iter().all(|x| pp.eval(x).norm() <= eval_floor(x)) {
            return Ok(z);
        }
    }
    Err(Error::RootsNoConvergence { best: z })
}

/// Greedy proximity clustering; each cluster contributes its size as
/// multiplicity and its centroid as the value.
fn cluster(mut zs: Vec<Complex64>, cluster_tol: f64) -> Vec<Root> {
    zs.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite roots"));
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for z in zs {
        match out
            .iter_mut()
            .find(|(v, _)| (*v - z).norm() <= cluster_tol * v.norm().max(1.0))
        {
            Some((v, count)) => {
                // Running centroid.
                let k = *count as f64;
                *v = (*v * k + z) / (k + 1.0);
                *count += 1;
            }
            None => out.push((z, 1)),
        }
    }
    out.into_iter().map(|(value, multiplicity)| Root { value, multiplicity }).collect()
}

/// Newton refinement on the original polynomial; the multiplicity-aware step
/// z -= m p(z)/p'(z) restores quadratic convergence at multiple roots. Steps
/// that do not decrease |p| are rejected.
fn refine(p: &Poly<Complex64>, dp: &Poly<Complex64>, start: Complex64, mult: usize) -> Complex64 {
    let mut z = start;
    let mut best = p.eval(&z).norm();
    for _ in 0..4 {
        let deriv = dp.eval(&z);
        if deriv.norm() == 0.0 {
            break;
        }
        let candidate = z - p.eval(&z) / deriv * mult as f64;
        let val = p.eval(&candidate).norm();
        if val < best {
            z = candidate;
            best = val;
        } else {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tols() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn sorted_values(rs: &[Root]) -> Vec<Complex64> {
        rs.iter().map(|r| r.value).collect()
    }

    #[test]
    fn linear_root() {
        let p = MonicPoly::from_low_coeffs(vec![c(-5.0, 0.0)]);
        let rs = roots(&p, &tols()).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].multiplicity, 1);
        assert!((rs[0].value - c(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cubic_with_three_simple_roots() {
        // x^3 - x = x (x-1) (x+1).
        let p = MonicPoly::from_low_coeffs(vec![c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]);
        let rs = roots(&p, &tols()).unwrap();
        assert_eq!(rs.len(), 3);
        let vals = sorted_values(&rs);
        assert!((vals[0] - c(-1.0, 0.0)).norm() < 1e-10);
        assert!(vals[1].norm() < 1e-10);
        assert!((vals[2] - c(1.0, 0.0)).norm() < 1e-10);
        assert!(rs.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn triple_root_at_zero() {
        // x^3: the critical-coupling case.
        let p = MonicPoly::from_low_coeffs(vec![c(0.0, 0.0); 3]);
        let rs = roots(&p, &tols()).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].multiplicity, 3);
        assert!(rs[0].value.norm() < 1e-10);
    }

    #[test]
    fn near_triple_root_is_merged() {
        // x^3 + c x with tiny c: roots 0 and +-sqrt(-c) sit below the
        // truncation scale and must be reported as one triple root near 0.
        let p = MonicPoly::from_low_coeffs(vec![c(0.0, 0.0), c(-2.8e-9, 0.0), c(0.0, 0.0)]);
        let rs = roots(&p, &tols()).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].multiplicity, 3);
        assert!(rs[0].value.norm() < 1e-6);
    }

    #[test]
    fn mixed_multiplicities() {
        // (x-1)^2 (x+2)^3 (x - i).
        let mut p = Poly::from_coeffs(vec![c(1.0, 0.0)]);
        for (root, m) in [(c(1.0, 0.0), 2), (c(-2.0, 0.0), 3), (c(0.0, 1.0), 1)] {
            for _ in 0..m {
                p = p.mul(&Poly::from_coeffs(vec![-root, c(1.0, 0.0)]));
            }
        }
        let mp = MonicPoly::from_poly(&p).unwrap();
        let rs = roots(&mp, &tols()).unwrap();
        assert_eq!(rs.len(), 3);
        let total: usize = rs.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 6);
        for r in &rs {
            let (want, m) = if (r.value - c(1.0, 0.0)).norm() < 1e-6 {
                (c(1.0, 0.0), 2)
            } else if (r.value - c(-2.0, 0.0)).norm() < 1e-6 {
                (c(-2.0, 0.0), 3)
            } else {
                (c(0.0, 1.0), 1)
            };
            assert_eq!(r.multiplicity, m, "root {}", r.value);
            assert!((r.value - want).norm() < 1e-8);
        }
    }

    #[test]
    fn degree_zero_has_no_roots() {
        let p = MonicPoly::<Complex64>::one();
        assert!(roots(&p, &tols()).unwrap().is_empty());
    }

    #[test]
    fn non_convergence_carries_best_iterates() {
        let mut cfg = tols();
        cfg.max_root_iters = 1;
        let p = MonicPoly::from_low_coeffs(vec![c(1.0, 0.0), c(0.0, 0.0)]); // x^2 + 1
        match roots(&p, &cfg) {
            Err(crate::error::Error::RootsNoConvergence { best }) => assert_eq!(best.len(), 2),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn gcd_degree_counts_multiplicity_excess() {
        // deg gcd(p, p') = sum (mult - 1) over distinct roots, checked on
        // products of known linear factors with integer-separated roots.
        use crate::poly::gcd;
        let cases: Vec<Vec<(f64, usize)>> = vec![
            vec![(0.0, 1), (1.0, 1), (-1.0, 1)],
            vec![(1.0, 2), (-2.0, 3)],
            vec![(0.0, 3)],
            vec![(2.0, 2), (-1.0, 2), (3.0, 1)],
            vec![(-3.0, 4), (1.0, 1), (2.0, 2)],
        ];
        for factors in cases {
            let mut p = Poly::from_coeffs(vec![c(1.0, 0.0)]);
            for &(r, m) in &factors {
                for _ in 0..m {
                    p = p.mul(&Poly::from_coeffs(vec![c(-r, 0.0), c(1.0, 0.0)]));
                }
            }
            let excess: usize = factors.iter().map(|&(_, m)| m - 1).sum();
            let g = gcd(&p, &p.derivative(), tols().trunc_tol).unwrap();
            assert_eq!(g.degree(), excess, "factors {factors:?}");

            // And roots() reproduces the multiplicities.
            let mp = MonicPoly::from_poly(&p).unwrap();
            let rs = roots(&mp, &tols()).unwrap();
            assert_eq!(rs.len(), factors.len());
            let found_excess: usize = rs.iter().map(|r| r.multiplicity - 1).sum();
            assert_eq!(found_excess, excess);
        }
    }

    #[test]
    fn wilkinson_like_product_is_recovered() {
        // Product of ten distinct linear factors; roots must come back
        // within the cluster tolerance.
        let want: Vec<f64> = (1..=10).map(|k| k as f64 / 2.0).collect();
        let mut p = Poly::from_coeffs(vec![c(1.0, 0.0)]);
        for &r in &want {
            p = p.mul(&Poly::from_coeffs(vec![c(-r, 0.0), c(1.0, 0.0)]));
        }
        let mp = MonicPoly::from_poly(&p).unwrap();
        let rs = roots(&mp, &tols()).unwrap();
        assert_eq!(rs.len(), 10);
        for (r, w) in rs.iter().zip(&want) {
            assert_eq!(r.multiplicity, 1);
            assert!((r.value - c(*w, 0.0)).norm() < 1e-7, "{} vs {w}", r.value);
        }
    }
}
