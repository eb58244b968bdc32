//! Monic and general polynomial arithmetic over the scalar field.
//!
//! Coefficients are stored lowest degree first. [`MonicPoly`] keeps the
//! leading 1 implicit; [`Poly`] carries an arbitrary leading coefficient and
//! houses derivatives and Euclidean remainders. The float-mode Euclidean
//! algorithm flushes remainder coefficients below a truncation threshold so
//! that structural zeros survive rounding; exact mode runs the identical
//! code with exact zero tests.

use crate::config::ToleranceConfig;
use crate::error::Error;
use crate::matrix::{determinant, Matrix};
use crate::scalar::Scalar;
use num_complex::Complex64;
use num_traits::Zero;

/// General polynomial, lowest degree first; the trailing stored coefficient
/// is nonzero unless the polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

/// Monic polynomial of degree d: stores c_0..c_{d-1} with the leading 1
/// implicit, so p(x) = x^d + c_{d-1} x^{d-1} + ... + c_0.
#[derive(Clone, PartialEq, Debug)]
pub struct MonicPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// Build from coefficients (lowest first), trimming trailing exact zeros.
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Euclidean (l2) norm of the coefficient vector as f64.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(Scalar::abs2).sum::<f64>().sqrt()
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) - other.coeff(k));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| S::from_i64(k as i64) * c.clone())
            .collect();
        Poly::from_coeffs(out)
    }

    pub fn to_c64(&self) -> Poly<Complex64> {
        Poly { coeffs: self.coeffs.iter().map(Scalar::to_c64).collect() }
    }
}

impl<S: Scalar> MonicPoly<S> {
    /// The constant polynomial 1 (degree 0).
    pub fn one() -> Self {
        MonicPoly { coeffs: Vec::new() }
    }

    /// x^d + c_{d-1} x^{d-1} + ... + c_0 from the non-leading coefficients.
    pub fn from_low_coeffs(coeffs: Vec<S>) -> Self {
        MonicPoly { coeffs }
    }

    /// Normalize a nonzero polynomial by its leading coefficient.
    pub fn from_poly(p: &Poly<S>) -> Result<Self, Error> {
        let lead = p.leading().ok_or(Error::DivisionByZeroPoly)?.clone();
        let d = p.deg().unwrap();
        let coeffs = p.coeffs()[..d].iter().map(|c| c.clone() / lead.clone()).collect();
        Ok(MonicPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Non-leading coefficients c_0..c_{d-1}, lowest first.
    pub fn low_coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly<S> {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(S::one());
        Poly { coeffs }
    }

    pub fn eval(&self, x: &S) -> S {
        self.to_poly().eval(x)
    }

    pub fn coeff_norm(&self) -> f64 {
        self.to_poly().coeff_norm()
    }

    pub fn to_c64(&self) -> MonicPoly<Complex64> {
        MonicPoly { coeffs: self.coeffs.iter().map(Scalar::to_c64).collect() }
    }

    /// Largest coefficient deviation from another monic polynomial of the
    /// same degree, as f64 (float diagnostics).
    pub fn coeff_distance(&self, other: &Self) -> f64 {
        if self.degree() != other.degree() {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a.clone() - b.clone()).abs())
            .fold(0.0, f64::max)
    }
}

/// Formal derivative of a monic polynomial; the result has leading
/// coefficient equal to the degree, hence is not monic.
///
/// Degree 0 is rejected: its derivative is the zero polynomial, which must
/// not enter a GCD.
pub fn derivative<S: Scalar>(p: &MonicPoly<S>) -> Result<Poly<S>, Error> {
    if p.degree() == 0 {
        return Err(Error::ConstantDerivative);
    }
    Ok(p.to_poly().derivative())
}

/// Division with remainder: a = q * b + r with deg r < deg b.
///
/// Float mode flushes remainder coefficients with magnitude below
/// `trunc_tol * (|a| + |b|)` to zero; exact mode is exact and ignores
/// `trunc_tol`.
pub fn divmod<S: Scalar>(
    a: &Poly<S>,
    b: &Poly<S>,
    trunc_tol: f64,
) -> Result<(Poly<S>, Poly<S>), Error> {
    let db = b.deg().ok_or(Error::DivisionByZeroPoly)?;
    let lead = b.leading().unwrap().clone();
    let mut rem: Vec<S> = a.coeffs().to_vec();
    let da = match a.deg() {
        Some(d) if d >= db => d,
        _ => return Ok((Poly::zero(), a.clone())),
    };
    let mut quot = vec![S::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let top = rem[k + db].clone();
        if top.is_zero() {
            continue;
        }
        let q = top / lead.clone();
        // The leading term cancels structurally; only the lower entries are
        // updated.
        for i in 0..db {
            rem[k + i] = rem[k + i].clone() - q.clone() * b.coeff(i);
        }
        rem[k + db] = S::zero();
        quot[k] = q;
    }
    rem.truncate(db);
    let mut r = Poly::from_coeffs(rem);
    if !S::EXACT && trunc_tol > 0.0 {
        let flush = trunc_tol * (a.coeff_norm() + b.coeff_norm());
        let flushed: Vec<S> = r
            .coeffs()
            .iter()
            .map(|c| if c.abs() < flush { S::zero() } else { c.clone() })
            .collect();
        r = Poly::from_coeffs(flushed);
    }
    Ok((Poly::from_coeffs(quot), r))
}

/// Monic greatest common divisor by the Euclidean remainder sequence.
///
/// Float mode truncates each remainder as in [`divmod`], rescales every
/// surviving remainder to unit coefficient norm, and calls a remainder zero
/// when its norm falls below `trunc_tol` times the norm scale of the pair
/// that produced it. Without the rescaling the plain remainder sequence can
/// shrink a legitimate remainder through the absolute threshold and stop a
/// step early. The result is the last nonvanishing remainder, normalized
/// monic.
pub fn gcd<S: Scalar>(a: &Poly<S>, b: &Poly<S>, trunc_tol: f64) -> Result<MonicPoly<S>, Error> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeroPair);
    }
    let vanished = |p: &Poly<S>, pair_scale: f64| {
        p.is_zero() || (!S::EXACT && p.coeff_norm() <= trunc_tol * pair_scale)
    };
    let unit = |p: Poly<S>| {
        if S::EXACT || p.is_zero() {
            p
        } else {
            let norm = p.coeff_norm();
            p.scale(&S::from_c64(Complex64::new(1.0 / norm, 0.0)))
        }
    };

    let (mut x, mut y) = (a.clone(), b.clone());
    let input_scale = x.coeff_norm().max(y.coeff_norm());
    if vanished(&y, input_scale) {
        return MonicPoly::from_poly(&x);
    }
    if vanished(&x, input_scale) {
        return MonicPoly::from_poly(&y);
    }
    loop {
        let pair_scale = x.coeff_norm().max(y.coeff_norm());
        let (_, r) = divmod(&x, &y, trunc_tol)?;
        if vanished(&r, pair_scale) {
            return MonicPoly::from_poly(&y);
        }
        x = y;
        y = unit(r);
    }
}

/// Resultant via the Euclidean remainder chain,
/// Res(a, b) = lc(b)^(deg a - deg r) * (-1)^(deg a * deg b) * Res(b, r).
///
/// The chain carries a vanishing resultant multiplicatively instead of
/// through additive cancellation, so the float-mode sign stays reliable
/// arbitrarily close to a zero. No remainder flushing is applied.
pub(crate) fn prs_resultant<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> S {
    let mut x = a.clone();
    let mut y = b.clone();
    let mut acc = S::one();
    loop {
        let dx = match x.deg() {
            Some(d) => d,
            None => return S::zero(),
        };
        let dy = match y.deg() {
            Some(d) => d,
            None => return S::zero(),
        };
        if dy == 0 {
            // Res(x, const c) = c^(deg x).
            let c = y.leading().unwrap().clone();
            let mut pow = S::one();
            for _ in 0..dx {
                pow = pow * c.clone();
            }
            return acc * pow;
        }
        let (_, r) = divmod(&x, &y, 0.0).expect("nonzero divisor");
        let dr = r.deg();
        let lead = y.leading().unwrap().clone();
        let drop = dx - dr.unwrap_or(0);
        let mut pow = S::one();
        for _ in 0..drop {
            pow = pow * lead.clone();
        }
        if !(dx * dy).is_multiple_of(2) {
            pow = -pow;
        }
        acc = acc * pow;
        if r.is_zero() {
            return S::zero();
        }
        x = y;
        y = r;
    }
}

/// Resultant via the Sylvester matrix determinant (used in exact mode).
pub(crate) fn sylvester_resultant<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> S {
    let da = match a.deg() {
        Some(d) => d,
        None => return S::zero(),
    };
    let db = match b.deg() {
        Some(d) => d,
        None => return S::zero(),
    };
    let n = da + db;
    if n == 0 {
        return S::one();
    }
    let mut m = Matrix::zeros(n);
    // db rows of a's coefficients (highest first), then da rows of b's.
    for row in 0..db {
        for (k, idx) in (0..=da).rev().enumerate() {
            m.set(row, row + k, a.coeff(idx));
        }
    }
    for row in 0..da {
        for (k, idx) in (0..=db).rev().enumerate() {
            m.set(db + row, row + k, b.coeff(idx));
        }
    }
    determinant(&m)
}

/// Discriminant of a monic polynomial: zero exactly when a multiple root
/// exists. Sign convention: (-1)^(d(d-1)/2) * Res(p, p').
///
/// Exact mode uses the Sylvester resultant. Float mode uses the remainder
/// chain resultant up to degree 8 (sign-stable near a vanishing
/// discriminant) and a product over root pairs beyond that, where dense
/// resultant conditioning degrades.
pub fn discriminant<S: Scalar>(p: &MonicPoly<S>, tols: &ToleranceConfig) -> Result<S, Error> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, required: 2 });
    }
    let pp = p.to_poly();
    let dp = pp.derivative();
    let res = if S::EXACT {
        sylvester_resultant(&pp, &dp)
    } else if d <= 8 {
        prs_resultant(&pp, &dp)
    } else {
        let roots = crate::roots::roots(&p.to_c64(), tols)?;
        let mut expanded = Vec::with_capacity(d);
        for r in &roots {
            for _ in 0..r.multiplicity {
                expanded.push(r.value);
            }
        }
        let mut prod = Complex64::new(1.0, 0.0);
        for i in 0..expanded.len() {
            for j in (i + 1)..expanded.len() {
                let diff = expanded[i] - expanded[j];
                prod *= diff * diff;
            }
        }
        // disc = lc^(2d-2) * prod = prod for monic p; the pair product
        // already carries the resultant sign, so return it directly.
        return Ok(S::from_c64(prod));
    };
    let sign = if (d * (d - 1) / 2).is_multiple_of(2) { S::one() } else { -S::one() };
    Ok(sign * res)
}
