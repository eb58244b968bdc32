//! Seeded random test-matrix generators: dense, hermitean, and matrices with
//! prescribed Jordan structure under well-conditioned similarity transforms.

use crate::matrix::{invert, mgs_orthonormalize, Matrix, Vector};
use crate::poly::{MonicPoly, Poly};
use num_complex::Complex64;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense matrix with entries uniform in [-1, 1] x [-1, 1]i.
pub fn random_dense<R: Rng>(n: usize, rng: &mut R) -> Matrix<Complex64> {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
    }
    m
}

/// Hermitean matrix (A + A*)/2 from a random dense A.
pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> Matrix<Complex64> {
    let a = random_dense(n, rng);
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let v = (*a.at(i, j) + a.at(j, i).conj()) * 0.5;
            m.set(i, j, v);
        }
    }
    m
}

/// Jordan structure: eigenvalue and block size per block. Several blocks may
/// share an eigenvalue; the minimal polynomial takes the largest block.
#[derive(Clone, Debug)]
pub struct JordanForm {
    pub blocks: Vec<(Complex64, usize)>,
}

impl JordanForm {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|&(_, k)| k).sum()
    }

    /// The block-diagonal Jordan matrix.
    pub fn matrix(&self) -> Matrix<Complex64> {
        let n = self.dim();
        let mut m = Matrix::zeros(n);
        let mut offset = 0;
        for &(lambda, k) in &self.blocks {
            for t in 0..k {
                m.set(offset + t, offset + t, lambda);
                if t + 1 < k {
                    m.set(offset + t, offset + t + 1, c(1.0, 0.0));
                }
            }
            offset += k;
        }
        m
    }

    /// Ground-truth minimal polynomial: product over distinct eigenvalues of
    /// (x - lambda)^(largest block size).
    pub fn minimal_polynomial(&self) -> MonicPoly<Complex64> {
        let mut largest: Vec<(Complex64, usize)> = Vec::new();
        for &(lambda, k) in &self.blocks {
            match largest.iter_mut().find(|(l, _)| (*l - lambda).norm() == 0.0) {
                Some((_, max_k)) => *max_k = (*max_k).max(k),
                None => largest.push((lambda, k)),
            }
        }
        let mut p = Poly::from_coeffs(vec![c(1.0, 0.0)]);
        for (lambda, k) in largest {
            let factor = Poly::from_coeffs(vec![-lambda, c(1.0, 0.0)]);
            for _ in 0..k {
                p = p.mul(&factor);
            }
        }
        MonicPoly::from_poly(&p).expect("monic product")
    }

    /// True when every block has size 1.
    pub fn is_diagonalizable(&self) -> bool {
        self.blocks.iter().all(|&(_, k)| k == 1)
    }
}

/// Random Jordan structure of total size `n`: a random composition of n into
/// block sizes, with eigenvalues drawn from [-2, 2]^2 at pairwise separation
/// at least 0.5 so the structure is numerically unambiguous.
pub fn random_jordan_form<R: Rng>(n: usize, rng: &mut R) -> JordanForm {
    // Composition of n.
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let k = rng.gen_range(1..=left.min(3));
        sizes.push(k);
        left -= k;
    }
    // Distinct eigenvalue pool with separation.
    let pool_size = rng.gen_range(1..=sizes.len());
    let mut pool: Vec<Complex64> = Vec::with_capacity(pool_size);
    while pool.len() < pool_size {
        let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if pool.iter().all(|p| (*p - z).norm() >= 0.5) {
            pool.push(z);
        }
    }
    // Every pool eigenvalue appears at least once.
    let mut blocks = Vec::with_capacity(sizes.len());
    for (idx, &k) in sizes.iter().enumerate() {
        let lambda =
            if idx < pool.len() { pool[idx] } else { pool[rng.gen_range(0..pool.len())] };
        blocks.push((lambda, k));
    }
    JordanForm { blocks }
}

/// Similarity transform S = U1 D U2 with unitary factors and diagonal D
/// spread over [1, max_cond], so cond(S) <= max_cond.
pub fn random_similarity<R: Rng>(n: usize, max_cond: f64, rng: &mut R) -> Matrix<Complex64> {
    let u1 = random_unitary(n, rng);
    let u2 = random_unitary(n, rng);
    let mut d = Matrix::zeros(n);
    for i in 0..n {
        let t: f64 = rng.gen_range(0.0..1.0);
        d.set(i, i, c(max_cond.powf(t), 0.0));
    }
    u1.mul(&d).unwrap().mul(&u2).unwrap()
}

fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> Matrix<Complex64> {
    loop {
        let cols: Vec<Vector<Complex64>> = (0..n)
            .map(|_| {
                Vector::from_vec(
                    (0..n)
                        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect(),
                )
            })
            .collect();
        let ortho = mgs_orthonormalize(cols);
        if ortho.len() == n {
            let mut u = Matrix::zeros(n);
            for (j, col) in ortho.iter().enumerate() {
                for i in 0..n {
                    u.set(i, j, *col.at(i));
                }
            }
            return u;
        }
    }
}

/// S J S^{-1}.
pub fn conjugated(j: &Matrix<Complex64>, s: &Matrix<Complex64>) -> Matrix<Complex64> {
    let s_inv = invert(s).expect("similarity transforms are invertible");
    s.mul(j).unwrap().mul(&s_inv).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn jordan_matrix_layout() {
        let form = JordanForm { blocks: vec![(c(2.0, 0.0), 2), (c(-1.0, 0.0), 1)] };
        let m = form.matrix();
        assert_eq!(m.dim(), 3);
        assert_eq!(*m.at(0, 1), c(1.0, 0.0));
        assert_eq!(*m.at(1, 1), c(2.0, 0.0));
        assert_eq!(*m.at(2, 2), c(-1.0, 0.0));
        assert_eq!(*m.at(1, 2), c(0.0, 0.0));
    }

    #[test]
    fn ground_truth_minpoly_takes_largest_block() {
        let lambda = c(1.0, -1.0);
        let form = JordanForm { blocks: vec![(lambda, 3), (lambda, 1), (c(0.0, 0.0), 1)] };
        let p = form.minimal_polynomial();
        // (x - lambda)^3 * x has degree 4.
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn similarity_is_well_conditioned() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let s = random_similarity(4, 10.0, &mut rng);
            let s_inv = invert(&s).unwrap();
            // Frobenius bound: cond_F <= |S| |S^-1| <= n * cond_2 here.
            let cond_proxy = s.frob_norm() * s_inv.frob_norm();
            assert!(cond_proxy < 4.0 * 10.0 + 1.0, "cond proxy {cond_proxy}");
            let e = s.mul(&s_inv).unwrap();
            assert!(e.sub(&Matrix::identity(4)).unwrap().frob_norm() < 1e-10);
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let a = random_dense(3, &mut ChaCha8Rng::seed_from_u64(42));
        let b = random_dense(3, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);

        let h = random_hermitian(4, &mut ChaCha8Rng::seed_from_u64(9));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*h.at(i, j), h.at(j, i).conj());
            }
        }
    }

    #[test]
    fn jordan_form_respects_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..=5 {
            for _ in 0..20 {
                let form = random_jordan_form(n, &mut rng);
                assert_eq!(form.dim(), n);
                assert!(form.minimal_polynomial().degree() <= n);
            }
        }
    }
}
