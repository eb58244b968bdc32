//! Exceptional-point location for one-parameter matrix families.
//!
//! The default detector bisects sign changes of the (real) minimal-polynomial
//! discriminant over a uniform parameter grid. The GCD-degree detector is the
//! fallback for families whose minimal-polynomial coefficients are genuinely
//! complex: it watches the degree of gcd(m, m') directly and refines isolated
//! dips of the Euclidean chain's final remainder, which vanishes exactly
//! where the gcd degree jumps.
//!
//! Every located candidate is re-diagnosed and kept only if the gcd degree
//! there is at least one, so a reported point always carries a
//! non-diagonalizable verdict.

use crate::config::{ToleranceConfig, NODE_HIT_DISC_TOL};
use crate::diagnosis::{diagnose, DiagnosisReport};
use crate::error::Error;
use crate::minpoly::minimal_polynomial;
use crate::poly::{derivative, discriminant, divmod, gcd, MonicPoly};
use crate::ptwell::MatrixFamily;
use crate::roots::roots;
use num_complex::Complex64;

/// Which zero locator drives the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detector {
    /// Bisect sign changes of the real discriminant (default; requires real
    /// minimal-polynomial coefficients, which PT-symmetric families have).
    Discriminant,
    /// Watch deg gcd(m, m') directly; works for complex coefficients too.
    GcdDegree,
}

/// Sweep parameters.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub param_min: f64,
    pub param_max: f64,
    pub grid_steps: usize,
    /// Target bracket width for refinement.
    pub refine_tol: f64,
    pub detector: Detector,
}

/// A located exceptional point.
#[derive(Debug)]
pub struct ExceptionalPoint {
    /// Parameter value, accurate to `refine_tol`.
    pub parameter: f64,
    /// Final bracket; its width is at most `refine_tol`.
    pub bracket: (f64, f64),
    /// The multiple root at the located point.
    pub coalescing_value: Complex64,
    /// deg gcd(m, m') at the located point; at least 1.
    pub gcd_degree_at_point: usize,
    pub report: DiagnosisReport<Complex64>,
}

/// One grid node of the sweep, as dumped to CSV.
#[derive(Clone, Debug)]
pub struct GridSample {
    pub parameter: f64,
    pub discriminant: Complex64,
    pub gcd_degree: usize,
}

/// Locate the exceptional points of `family` inside the configured range.
pub fn sweep(
    family: &dyn MatrixFamily,
    cfg: &SweepConfig,
    tols: &ToleranceConfig,
) -> Result<Vec<ExceptionalPoint>, Error> {
    sweep_with_grid(family, cfg, tols).map(|(points, _)| points)
}

/// Like [`sweep`], also returning the grid samples (emitted to CSV even when
/// no point is found, so the "no result" case stays inspectable).
pub fn sweep_with_grid(
    family: &dyn MatrixFamily,
    cfg: &SweepConfig,
    tols: &ToleranceConfig,
) -> Result<(Vec<ExceptionalPoint>, Vec<GridSample>), Error> {
    if cfg.param_min.partial_cmp(&cfg.param_max) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidConfig(format!(
            "param_min {} must be below param_max {}",
            cfg.param_min, cfg.param_max
        )));
    }
    if cfg.grid_steps == 0 {
        return Err(Error::InvalidConfig("grid_steps must be positive".into()));
    }
    if cfg.refine_tol.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidConfig("refine_tol must be positive".into()));
    }

    let spacing = (cfg.param_max - cfg.param_min) / cfg.grid_steps as f64;
    let params: Vec<f64> =
        (0..=cfg.grid_steps).map(|k| cfg.param_min + k as f64 * spacing).collect();
    let nodes: Vec<NodeData> = params.iter().map(|&x| eval_node(family, x, tols)).collect();
    let grid: Vec<GridSample> = params
        .iter()
        .zip(&nodes)
        .map(|(&parameter, node)| GridSample {
            parameter,
            discriminant: node.disc,
            gcd_degree: node.gcd_degree,
        })
        .collect();

    let candidates = match cfg.detector {
        Detector::Discriminant => discriminant_candidates(family, cfg, tols, &params, &nodes)?,
        Detector::GcdDegree => gcd_degree_candidates(family, cfg, tols, &params, &nodes),
    };

    let mut points = Vec::new();
    for (parameter, bracket) in candidates {
        // Deduplicate against already-accepted points.
        if points
            .iter()
            .any(|p: &ExceptionalPoint| (p.parameter - parameter).abs() <= 2.0 * cfg.refine_tol)
        {
            continue;
        }
        let node = eval_node(family, parameter, tols);
        if node.gcd_degree == 0 {
            continue;
        }
        let report = match diagnose(&family.evaluate(parameter), tols) {
            Ok(r) => r,
            Err(e) => return Err(e.source),
        };
        let coalescing_value = coalescing_root(&node, &report, tols);
        points.push(ExceptionalPoint {
            parameter,
            bracket,
            coalescing_value,
            gcd_degree_at_point: node.gcd_degree,
            report,
        });
    }
    points.sort_by(|a, b| a.parameter.partial_cmp(&b.parameter).expect("finite parameters"));
    Ok((points, grid))
}

struct NodeData {
    minpoly: MonicPoly<Complex64>,
    disc: Complex64,
    gcd_degree: usize,
    /// Norm of the final remainder of the full (unflushed) Euclidean chain
    /// of (m, m'), relative to the input norms; vanishes at an exceptional
    /// point and is sign-free, so it also serves complex coefficients.
    defect: f64,
}

fn eval_node(family: &dyn MatrixFamily, param: f64, tols: &ToleranceConfig) -> NodeData {
    let m = family.evaluate(param);
    let minpoly = minimal_polynomial(&m, tols.rank_tol).minimal;
    let (gcd_degree, defect) = chain_diagnostics(&minpoly, tols);
    let disc = if minpoly.degree() >= 2 {
        discriminant(&minpoly, tols).expect("degree checked")
    } else {
        // No root pair can coalesce.
        Complex64::new(1.0, 0.0)
    };
    NodeData { minpoly, disc, gcd_degree, defect }
}

fn chain_diagnostics(minpoly: &MonicPoly<Complex64>, tols: &ToleranceConfig) -> (usize, f64) {
    let p = minpoly.to_poly();
    let dp = derivative(minpoly).expect("degree >= 1");
    let gcd_degree = gcd(&p, &dp, tols.trunc_tol).map(|g| g.degree()).unwrap_or(0);
    if minpoly.degree() < 2 {
        // No root pair can coalesce.
        return (gcd_degree, 1.0);
    }

    // Full chain without flushing, remainders rescaled to unit norm as in
    // the gcd: the defect is the last remainder's norm relative to the pair
    // that produced it. It vanishes where the gcd degree jumps and stays
    // continuous in between.
    let mut x = p;
    let mut y = dp;
    let last;
    loop {
        let pair_scale = x.coeff_norm().max(y.coeff_norm()).max(1.0);
        let (_, r) = divmod(&x, &y, 0.0).expect("nonzero divisor");
        if r.is_zero() {
            // Chain terminated with y a nontrivial common factor.
            last = 0.0;
            break;
        }
        if r.deg() == Some(0) {
            last = r.coeff_norm() / pair_scale;
            break;
        }
        x = y;
        let norm = r.coeff_norm();
        y = r.scale(&Complex64::new(1.0 / norm, 0.0));
    }
    (gcd_degree, last)
}

type Candidate = (f64, (f64, f64));

fn discriminant_candidates(
    family: &dyn MatrixFamily,
    cfg: &SweepConfig,
    tols: &ToleranceConfig,
    params: &[f64],
    nodes: &[NodeData],
) -> Result<Vec<Candidate>, Error> {
    // The detector needs real coefficients; PT-symmetric families have them
    // because eigenvalues pair under conjugation.
    let mut max_imag: f64 = 0.0;
    for node in nodes {
        let norm = node.minpoly.coeff_norm().max(1.0);
        for c in node.minpoly.low_coeffs() {
            max_imag = max_imag.max(c.im.abs() / norm);
        }
    }
    if max_imag > 1e-8 {
        return Err(Error::NonRealCoefficients { max_imag });
    }

    let grid_scale =
        nodes.iter().map(|n| n.disc.re.abs()).fold(0.0f64, f64::max).max(1.0);
    let node_hit = NODE_HIT_DISC_TOL * grid_scale;
    let g = |x: f64| eval_node(family, x, tols).disc.re;

    let mut candidates = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        // A point sitting on a grid node is reported directly; bisection
        // would produce a zero-width bracket.
        if node.disc.re.abs() <= node_hit {
            candidates.push((params[i], (params[i], params[i])));
        }
    }
    for i in 0..nodes.len() - 1 {
        let (a, b) = (nodes[i].disc.re, nodes[i + 1].disc.re);
        if a.abs() <= node_hit || b.abs() <= node_hit {
            continue;
        }
        if a.signum() * b.signum() < 0.0 {
            let (lo, hi) = bisect_sign_change(&g, params[i], params[i + 1], a, cfg.refine_tol);
            candidates.push((0.5 * (lo + hi), (lo, hi)));
        }
    }
    Ok(candidates)
}

fn bisect_sign_change(
    g: &dyn Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    mut g_lo: f64,
    refine_tol: f64,
) -> (f64, f64) {
    while hi - lo > refine_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // parameter resolution exhausted
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            let half = 0.25 * refine_tol;
            return (mid - half, mid + half);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn gcd_degree_candidates(
    family: &dyn MatrixFamily,
    cfg: &SweepConfig,
    tols: &ToleranceConfig,
    params: &[f64],
    nodes: &[NodeData],
) -> Vec<Candidate> {
    let mut candidates = Vec::new();

    // Nodes already inside the degenerate window.
    for (i, node) in nodes.iter().enumerate() {
        if node.gcd_degree >= 1 {
            candidates.push((params[i], (params[i], params[i])));
        }
    }

    // Onset bisection where the degree changes between adjacent nodes.
    let deg_at = |x: f64| eval_node(family, x, tols).gcd_degree;
    for i in 0..nodes.len() - 1 {
        let (da, db) = (nodes[i].gcd_degree, nodes[i + 1].gcd_degree);
        if da == db {
            continue;
        }
        let (mut lo, mut hi) = (params[i], params[i + 1]);
        while hi - lo > cfg.refine_tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            // Chase the boundary of the lo-side degree.
            if deg_at(mid) == da {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        candidates.push((0.5 * (lo + hi), (lo, hi)));
    }

    // Isolated dips: the degenerate window is usually far narrower than the
    // grid, so the degree never changes between nodes; the chain defect
    // still dips to zero there. Minimize it on V-shaped node triples and
    // keep the result only if the degree fires at the minimizer (verified by
    // the caller).
    let defect = |x: f64| eval_node(family, x, tols).defect;
    let d: Vec<f64> = nodes.iter().map(|n| n.defect).collect();
    for i in 0..nodes.len() {
        let is_v = if i == 0 {
            nodes.len() > 1 && d[0] < d[1]
        } else if i == nodes.len() - 1 {
            d[i] < d[i - 1]
        } else {
            d[i] < d[i - 1] && d[i] < d[i + 1]
        };
        if !is_v || nodes[i].gcd_degree >= 1 {
            continue;
        }
        let lo = if i == 0 { params[0] } else { params[i - 1] };
        let hi = if i == nodes.len() - 1 { params[i] } else { params[i + 1] };
        let (a, b) = golden_min(&defect, lo, hi, cfg.refine_tol);
        candidates.push((0.5 * (a + b), (a, b)));
    }
    candidates
}

/// Golden-section minimization; returns the final bracket.
fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, refine_tol: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > refine_tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            if x1 <= lo || x1 >= hi {
                break;
            }
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            if x2 <= lo || x2 >= hi {
                break;
            }
            f2 = f(x2);
        }
    }
    (lo, hi)
}

fn coalescing_root(
    node: &NodeData,
    report: &DiagnosisReport<Complex64>,
    tols: &ToleranceConfig,
) -> Complex64 {
    if let Some(entry) = report
        .eigen_entries
        .iter()
        .filter(|e| e.minpoly_multiplicity > 1)
        .max_by_key(|e| e.minpoly_multiplicity)
    {
        return entry.value;
    }
    // Fall back to a root of the gcd itself.
    let p = node.minpoly.to_poly();
    let dp = p.derivative();
    if let Ok(g) = gcd(&p, &dp, tols.trunc_tol) {
        if g.degree() >= 1 {
            if let Ok(rs) = roots(&g, tols) {
                if let Some(first) = rs.first() {
                    return first.value;
                }
            }
        }
    }
    Complex64::new(f64::NAN, f64::NAN)
}
