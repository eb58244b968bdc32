//! Dense square matrices and flat vectors over a [`Scalar`] field.
//!
//! The vectorization fixes a row-major layout: an N x N matrix corresponds
//! one-to-one to a vector of length N^2 with components
//! (M_00, M_01, ..., M_0{N-1}; M_10, ...). Kernel computation is a
//! complete-pivot row reduction so that the same code serves both scalar
//! modes: exact zero tests in rational mode, a pivot threshold relative to
//! the Frobenius norm in float mode.

use crate::error::Error;
use crate::scalar::Scalar;
use num_complex::Complex64;

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

/// Flat vector over the scalar field; carries both N^2 vectorized matrices
/// and N-dimensional kernel vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct Vector<S> {
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, Error> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
        }
        Ok(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![S::zero(); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Matrix { n: self.n, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Matrix { n: self.n, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.at(i, j).clone() + a.clone() * other.at(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// M - lambda * E.
    pub fn shifted(&self, lambda: &S) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            let v = out.at(i, i).clone() - lambda.clone();
            out.set(i, i, v);
        }
        out
    }

    pub fn conj(&self) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(Scalar::abs2).sum::<f64>().sqrt()
    }

    pub fn to_c64(&self) -> Matrix<Complex64> {
        Matrix { n: self.n, data: self.data.iter().map(Scalar::to_c64).collect() }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.n.max(1))
    }

    fn check_dim(&self, other: &Self) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }
}

impl<S: Scalar> Vector<S> {
    pub fn from_vec(data: Vec<S>) -> Self {
        Vector { data }
    }

    pub fn zeros(len: usize) -> Self {
        Vector { data: vec![S::zero(); len] }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn at(&self, i: usize) -> &S {
        &self.data[i]
    }

    pub fn set(&mut self, i: usize, v: S) {
        self.data[i] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(Scalar::abs2).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: &S) -> Self {
        Vector { data: self.data.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// self -= c * other (in place).
    pub fn axpy_sub(&mut self, c: &S, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = a.clone() - c.clone() * b.clone();
        }
    }

    /// Structurally zero in every component (exact test).
    pub fn is_exactly_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn to_c64(&self) -> Vector<Complex64> {
        Vector { data: self.data.iter().map(Scalar::to_c64).collect() }
    }
}

/// Row-major vectorization: components[j*N + k] = entries[j][k].
pub fn vectorize<S: Scalar>(m: &Matrix<S>) -> Vector<S> {
    Vector { data: m.data.clone() }
}

/// Inverse of [`vectorize`]; the length must be a perfect square.
pub fn devectorize<S: Scalar>(v: &Vector<S>) -> Result<Matrix<S>, Error> {
    let len = v.len();
    let n = (len as f64).sqrt().round() as usize;
    if n * n != len {
        return Err(Error::DimensionMismatch { expected: n * n, got: len });
    }
    Ok(Matrix { n, data: v.data.clone() })
}

/// M^n with M^0 the identity of matching dimension and scalar mode.
pub fn mat_power<S: Scalar>(m: &Matrix<S>, n: usize) -> Matrix<S> {
    let mut out = Matrix::identity(m.dim());
    for _ in 0..n {
        out = out.mul(m).expect("dimensions agree by construction");
    }
    out
}

/// Conjugate-sesquilinear inner product: sum of conj(a_i) * b_i.
pub fn frobenius_inner<S: Scalar>(a: &Vector<S>, b: &Vector<S>) -> Result<S, Error> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    let mut acc = S::zero();
    for (x, y) in a.data.iter().zip(&b.data) {
        acc = acc + x.conj() * y.clone();
    }
    Ok(acc)
}

/// Basis of the null space of `m`, detected by complete-pivot row reduction.
///
/// Float mode treats pivots with magnitude at most `tol * frob_norm(m)` as
/// zero and returns an orthonormal basis; exact mode ignores `tol`, tests
/// for exact zeros, and returns the raw exact basis vectors.
pub fn kernel_basis<S: Scalar>(m: &Matrix<S>, tol: f64) -> Vec<Vector<S>> {
    let n = m.dim();
    if n == 0 {
        return Vec::new();
    }
    let threshold = if S::EXACT { 0.0 } else { tol * m.frob_norm() };
    let mut a = m.clone();
    // col_origin[t] = original column currently stored at working column t.
    let mut col_origin: Vec<usize> = (0..n).collect();
    let mut rank = 0;

    for step in 0..n {
        // Complete pivoting: best remaining entry by magnitude.
        let mut best: Option<(usize, usize, f64)> = None;
        for i in step..n {
            for j in step..n {
                let entry = a.at(i, j);
                if S::EXACT && entry.is_zero() {
                    continue;
                }
                let mag = entry.abs2();
                if best.is_none_or(|(_, _, bm)| mag > bm) {
                    best = Some((i, j, mag));
                }
            }
        }
        let (pi, pj) = match best {
            Some((i, j, mag)) if S::EXACT || mag.sqrt() > threshold => (i, j),
            _ => break,
        };
        // Swap pivot into place.
        if pi != step {
            for j in 0..n {
                let tmp = a.at(step, j).clone();
                a.set(step, j, a.at(pi, j).clone());
                a.set(pi, j, tmp);
            }
        }
        if pj != step {
            for i in 0..n {
                let tmp = a.at(i, step).clone();
                a.set(i, step, a.at(i, pj).clone());
                a.set(i, pj, tmp);
            }
            col_origin.swap(step, pj);
        }
        // Normalize the pivot row, then eliminate the pivot column everywhere
        // else (Gauss-Jordan).
        let pivot = a.at(step, step).clone();
        for j in step..n {
            let v = a.at(step, j).clone() / pivot.clone();
            a.set(step, j, v);
        }
        for i in 0..n {
            if i == step {
                continue;
            }
            let factor = a.at(i, step).clone();
            if factor.is_zero() {
                continue;
            }
            for j in step..n {
                let v = a.at(i, j).clone() - factor.clone() * a.at(step, j).clone();
                a.set(i, j, v);
            }
            a.set(i, step, S::zero());
        }
        rank = step + 1;
    }

    // Free working columns rank..n span the kernel: x[origin(t)] = 1,
    // x[origin(j)] = -a[j][t] for pivot rows j.
    let mut basis = Vec::with_capacity(n - rank);
    for t in rank..n {
        let mut x = Vector::zeros(n);
        x.set(col_origin[t], S::one());
        for (j, &col) in col_origin[..rank].iter().enumerate() {
            x.set(col, -a.at(j, t).clone());
        }
        basis.push(x);
    }

    if !S::EXACT && !basis.is_empty() {
        // Normalization needs square roots, so this path is float-only; the
        // conversion through Complex64 is the identity there.
        let ortho = mgs_orthonormalize(basis.iter().map(Vector::to_c64).collect());
        basis = ortho
            .into_iter()
            .map(|v| Vector::from_vec(v.iter().map(|z| S::from_c64(*z)).collect()))
            .collect();
    }
    basis
}

/// Modified Gram-Schmidt orthonormalization of independent float vectors.
pub(crate) fn mgs_orthonormalize(vectors: Vec<Vector<Complex64>>) -> Vec<Vector<Complex64>> {
    let mut out: Vec<Vector<Complex64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v;
        for q in &out {
            let c = frobenius_inner(q, &w).expect("equal lengths");
            w.axpy_sub(&c, q);
        }
        let norm = w.norm();
        if norm > 0.0 {
            out.push(w.scale(&Complex64::new(1.0 / norm, 0.0)));
        }
    }
    out
}

/// Determinant by row reduction with partial pivoting (exact over the
/// rationals, standard floating pivoting otherwise).
pub(crate) fn determinant<S: Scalar>(m: &Matrix<S>) -> S {
    let n = m.dim();
    let mut a = m.clone();
    let mut det = S::one();
    for step in 0..n {
        let mut best: Option<(usize, f64)> = None;
        for i in step..n {
            let entry = a.at(i, step);
            if S::EXACT && entry.is_zero() {
                continue;
            }
            let mag = entry.abs2();
            if best.is_none_or(|(_, bm)| mag > bm) {
                best = Some((i, mag));
            }
        }
        let pi = match best {
            Some((i, mag)) if S::EXACT || mag > 0.0 => i,
            _ => return S::zero(),
        };
        if pi != step {
            for j in 0..n {
                let tmp = a.at(step, j).clone();
                a.set(step, j, a.at(pi, j).clone());
                a.set(pi, j, tmp);
            }
            det = -det;
        }
        let pivot = a.at(step, step).clone();
        det = det * pivot.clone();
        for i in (step + 1)..n {
            let factor = a.at(i, step).clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for j in step..n {
                let v = a.at(i, j).clone() - factor.clone() * a.at(step, j).clone();
                a.set(i, j, v);
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan with partial pivoting; `None` when singular
/// (exactly singular in rational mode, pivot exactly zero in float mode).
pub(crate) fn invert<S: Scalar>(m: &Matrix<S>) -> Option<Matrix<S>> {
    let n = m.dim();
    let mut a = m.clone();
    let mut inv = Matrix::<S>::identity(n);
    for step in 0..n {
        let mut best: Option<(usize, f64)> = None;
        for i in step..n {
            let entry = a.at(i, step);
            if S::EXACT && entry.is_zero() {
                continue;
            }
            let mag = entry.abs2();
            if best.is_none_or(|(_, bm)| mag > bm) {
                best = Some((i, mag));
            }
        }
        let pi = match best {
            Some((i, mag)) if S::EXACT || mag > 0.0 => i,
            _ => return None,
        };
        if pi != step {
            for j in 0..n {
                let tmp = a.at(step, j).clone();
                a.set(step, j, a.at(pi, j).clone());
                a.set(pi, j, tmp);
                let tmp = inv.at(step, j).clone();
                inv.set(step, j, inv.at(pi, j).clone());
                inv.set(pi, j, tmp);
            }
        }
        let pivot = a.at(step, step).clone();
        for j in 0..n {
            let v = a.at(step, j).clone() / pivot.clone();
            a.set(step, j, v);
            let v = inv.at(step, j).clone() / pivot.clone();
            inv.set(step, j, v);
        }
        for i in 0..n {
            if i == step {
                continue;
            }
            let factor = a.at(i, step).clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = a.at(i, j).clone() - factor.clone() * a.at(step, j).clone();
                a.set(i, j, v);
                let v = inv.at(i, j).clone() - factor.clone() * inv.at(step, j).clone();
                inv.set(i, j, v);
            }
        }
    }
    Some(inv)
}

/// Matrix-vector product.
pub fn mat_vec<S: Scalar>(m: &Matrix<S>, v: &Vector<S>) -> Result<Vector<S>, Error> {
    if m.dim() != v.len() {
        return Err(Error::DimensionMismatch { expected: m.dim(), got: v.len() });
    }
    let n = m.dim();
    let mut out = Vector::zeros(n);
    for i in 0..n {
        let mut acc = S::zero();
        for j in 0..n {
            acc = acc + m.at(i, j).clone() * v.at(j).clone();
        }
        out.set(i, acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The 3x3 PT-well matrix (i xi, 1, 0; 1, 0, 1; 0, 1, -i xi), float mode.
    fn h_matrix(xi: f64) -> Matrix<Complex64> {
        Matrix::from_rows(vec![
            vec![c(0.0, xi), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, -xi)],
        ])
        .unwrap()
    }

    #[test]
    fn vectorize_identity_pattern() {
        let e = Matrix::<Complex64>::identity(3);
        let v = vectorize(&e);
        let expected = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(v.at(i), &c(*want, 0.0));
        }
    }

    #[test]
    fn vectorize_h_pattern() {
        // (i xi, 1, 0; 1, 0, 1; 0, 1, -i xi) row-major.
        let xi = 0.75;
        let v = vectorize(&h_matrix(xi));
        assert_eq!(v.at(0), &c(0.0, xi));
        assert_eq!(v.at(1), &c(1.0, 0.0));
        assert_eq!(v.at(4), &c(0.0, 0.0));
        assert_eq!(v.at(8), &c(0.0, -xi));
    }

    #[test]
    fn vectorize_zero_matrix() {
        let z = Matrix::<Complex64>::zeros(4);
        assert!(vectorize(&z).is_exactly_zero());
    }

    #[test]
    fn power_identities_for_h() {
        let xi = 0.6;
        let h = h_matrix(xi);
        let h2 = mat_power(&h, 2);
        // Direct multiplication of the displayed matrix gives
        // (1-xi^2, i xi, 1; i xi, 2, -i xi; 1, -i xi, 1-xi^2).
        let want = [
            c(1.0 - xi * xi, 0.0),
            c(0.0, xi),
            c(1.0, 0.0),
            c(0.0, xi),
            c(2.0, 0.0),
            c(0.0, -xi),
            c(1.0, 0.0),
            c(0.0, -xi),
            c(1.0 - xi * xi, 0.0),
        ];
        let v2 = vectorize(&h2);
        for (i, w) in want.iter().enumerate() {
            assert!((v2.at(i) - w).norm() < 1e-14, "entry {i}: {} vs {w}", v2.at(i));
        }

        // H^3 = (2 - xi^2) H.
        let h3 = mat_power(&h, 3);
        let scaled = h.scale(&c(2.0 - xi * xi, 0.0));
        assert!(h3.sub(&scaled).unwrap().frob_norm() < 1e-13);
    }

    #[test]
    fn power_zero_is_identity() {
        let h = h_matrix(1.3);
        assert_eq!(mat_power(&h, 0), Matrix::identity(3));
    }

    #[test]
    fn frobenius_inner_examples() {
        let e = Matrix::<Complex64>::identity(3);
        let ve = vectorize(&e);
        assert_eq!(frobenius_inner(&ve, &ve).unwrap(), c(3.0, 0.0));

        // Independent 9-term conjugate sum against vec(H): the only nonzero
        // diagonal contributions are conj(1)*(i xi) and conj(1)*(-i xi).
        let xi = 1.1;
        let vh = vectorize(&h_matrix(xi));
        let mut direct = c(0.0, 0.0);
        for k in 0..9 {
            direct += ve.at(k).conj() * vh.at(k);
        }
        assert_eq!(direct, c(0.0, 0.0));
        assert_eq!(frobenius_inner(&ve, &vh).unwrap(), direct);

        let zero = Vector::zeros(9);
        assert_eq!(frobenius_inner(&vh, &zero).unwrap(), c(0.0, 0.0));

        let short = Vector::zeros(3);
        assert!(frobenius_inner(&vh, &short).is_err());
    }

    #[test]
    fn kernel_of_h_at_critical_coupling() {
        // (1, -i xi, -1) spans the kernel; at xi = sqrt(2) the dimension is 1.
        let xi = 2f64.sqrt();
        let h = h_matrix(xi);
        let basis = kernel_basis(&h, 1e-10);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        // Residual bound.
        let hv = mat_vec(&h, v).unwrap();
        assert!(hv.norm() <= 1e-10 * h.frob_norm() * v.norm());
        // Direction: proportional to (1, -i xi, -1).
        let reference = Vector::from_vec(vec![c(1.0, 0.0), c(0.0, -xi), c(-1.0, 0.0)]);
        let overlap = frobenius_inner(&reference, v).unwrap().norm();
        assert!((overlap - reference.norm() * v.norm()).abs() < 1e-10);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let e = Matrix::<Complex64>::identity(3);
        assert!(kernel_basis(&e, 1e-10).is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let z = Matrix::<Complex64>::zeros(3);
        let basis = kernel_basis(&z, 1e-10);
        assert_eq!(basis.len(), 3);
        // Orthonormal in float mode.
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let ip = frobenius_inner(u, v).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_kernel_is_exact() {
        // Rank-1 rational matrix [[1,2],[2,4]] has kernel spanned by (-2,1).
        let g = |n: i64| GaussRational::from_ints(n, 0);
        let m = Matrix::from_rows(vec![vec![g(1), g(2)], vec![g(2), g(4)]]).unwrap();
        let basis = kernel_basis(&m, 0.0);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        let mv = mat_vec(&m, v).unwrap();
        assert!(mv.is_exactly_zero());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!((determinant(&m) - c(1.0, 0.0)).norm() < 1e-14);
        let inv = invert(&m).unwrap();
        let prod = m.mul(&inv).unwrap();
        assert!(prod.sub(&Matrix::identity(2)).unwrap().frob_norm() < 1e-13);

        // det H = 0 for every coupling: zero is always an eigenvalue.
        assert!(determinant(&h_matrix(0.37)).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn devectorize_roundtrip(entries in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 9)) {
            let rows: Vec<Vec<Complex64>> = entries
                .chunks(3)
                .map(|ch| ch.iter().map(|&(re, im)| c(re, im)).collect())
                .collect();
            let m = Matrix::from_rows(rows).unwrap();
            let back = devectorize(&vectorize(&m)).unwrap();
            prop_assert_eq!(back, m);
        }

        #[test]
        fn power_additivity(a in 0usize..3, b in 0usize..3,
                            entries in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9)) {
            let rows: Vec<Vec<Complex64>> = entries
                .chunks(3)
                .map(|ch| ch.iter().map(|&(re, im)| c(re, im)).collect())
                .collect();
            let m = Matrix::from_rows(rows).unwrap();
            let lhs = mat_power(&m, a + b);
            let rhs = mat_power(&m, a).mul(&mat_power(&m, b)).unwrap();
            let scale = m.frob_norm().max(1.0).powi((a + b) as i32);
            prop_assert!(lhs.sub(&rhs).unwrap().frob_norm() <= 1e-12 * scale);
        }

        #[test]
        fn inner_product_positivity(entries in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 6)) {
            let v = Vector::from_vec(entries.iter().map(|&(re, im)| c(re, im)).collect());
            let ip = frobenius_inner(&v, &v).unwrap();
            prop_assert!(ip.im.abs() < 1e-12);
            prop_assert!(ip.re >= 0.0);
            prop_assert_eq!(ip.re == 0.0, v.is_exactly_zero());
        }
    }
}
