//! Spectral primitives built on the Hermitian eigensolver: operator norm,
//! matrix absolute value, PSD square root and the spectral radius of a
//! product of positive matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::eig::{check_hermitian, eigenvalues_hermitian, hermitian_eig, HermitianEig};
use crate::linalg::matrix::ComplexMatrix;

/// Eigenvalues below `-PSD_GATE * ||P||` make a matrix NotPsd.
const PSD_GATE: f64 = 1e-8;

/// Operator norm: largest singular value, via sqrt(lambda_max(A* A)).
pub fn op_norm(a: &ComplexMatrix) -> f64 {
    let gram = a.adjoint().matmul(a).expect("square operands");
    let eig = eigenvalues_hermitian(&gram).expect("Jacobi converges on Gram matrices");
    eig.last().unwrap().max(0.0).sqrt()
}

/// |A| = (A* A)^{1/2}, the positive part of A.
pub fn matrix_abs(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let gram = a.adjoint().matmul(a)?;
    let eig = hermitian_eig(&gram)?;
    Ok(rebuild_sqrt(&eig))
}

/// PSD square root with clamping of numerically negative eigenvalues.
pub fn psd_sqrt(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_hermitian(p)?;
    let eig = hermitian_eig(p)?;
    validate_psd(&eig)?;
    Ok(rebuild_sqrt(&eig))
}

/// Spectral radius r(PQ) for PSD operands, computed as
/// lambda_max(Q^{1/2} P Q^{1/2}) so no nonsymmetric eigensolver is needed.
pub fn spectral_radius_psd_product(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimMismatch { left: p.dim(), right: q.dim() });
    }
    check_hermitian(p)?;
    let p_eig = hermitian_eig(p)?;
    validate_psd(&p_eig)?;
    let q_half = psd_sqrt(q)?;
    let sym = q_half.matmul(p)?.matmul(&q_half)?;
    let values = eigenvalues_hermitian(&sym)?;
    Ok(values.last().unwrap().max(0.0))
}

fn validate_psd(eig: &HermitianEig) -> Result<()> {
    let norm = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let gate = PSD_GATE * norm;
    if eig.min() < -gate {
        return Err(Error::NotPsd { min_eig: eig.min(), gate: -gate });
    }
    Ok(())
}

fn rebuild_sqrt(eig: &HermitianEig) -> ComplexMatrix {
    let n = eig.values.len();
    let roots: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0).sqrt()).collect();
    let v = &eig.vectors;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                acc += v[(i, k)] * roots[k] * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    // Exact Hermitian symmetry for downstream prechecks.
    out.real_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ComplexMatrix::from_fn(n, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        })
    }

    fn random_unit(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = crate::linalg::matrix::vec_norm(&v);
        v.into_iter().map(|z| z / norm).collect()
    }

    #[test]
    fn op_norm_of_diagonal_sum() {
        // diag(4,0) + diag(1,2) = diag(5,2)
        let m = ComplexMatrix::diag(&[5.0, 2.0]);
        assert!((op_norm(&m) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn op_norm_of_unitary_is_one() {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::from_entries(
            2,
            vec![
                Complex64::new(c, 0.0),
                Complex64::new(0.0, c),
                Complex64::new(0.0, c),
                Complex64::new(c, 0.0),
            ],
        )
        .unwrap();
        assert!((op_norm(&u) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn op_norm_dominates_sampled_vectors() {
        // Sampling unit vectors can only produce a lower bound on ||A||.
        let a = random_matrix(2, 5);
        let norm = op_norm(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut best = 0.0f64;
        for _ in 0..10_000 {
            let x = random_unit(2, &mut rng);
            best = best.max(crate::linalg::matrix::vec_norm(&a.matvec(&x)));
        }
        assert!(best <= norm + 1e-12, "sampled {best} above norm {norm}");
        assert!(best >= norm - 1e-3, "sampling too far below norm: {best} vs {norm}");
    }

    #[test]
    fn abs_of_nilpotent_unit() {
        let e12 = ComplexMatrix::unit(2, 0, 1);
        let abs = matrix_abs(&e12).unwrap();
        let expect = ComplexMatrix::diag(&[0.0, 1.0]);
        assert!(abs.sub(&expect).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn abs_fixes_psd() {
        let g = random_matrix(3, 11);
        let p = g.adjoint().matmul(&g).unwrap().real_part();
        let abs = matrix_abs(&p).unwrap();
        assert!(abs.sub(&p).unwrap().frobenius_norm() <= 1e-9 * (1.0 + p.frobenius_norm()));
    }

    #[test]
    fn abs_squares_back() {
        for seed in 0..6 {
            let a = random_matrix(4, seed);
            let abs = matrix_abs(&a).unwrap();
            let gram = a.adjoint().matmul(&a).unwrap();
            let diff = abs.matmul(&abs).unwrap().sub(&gram).unwrap().frobenius_norm();
            assert!(diff <= 1e-9 * (1.0 + gram.frobenius_norm()));
        }
    }

    #[test]
    fn abs_preserves_norm() {
        let a = random_matrix(5, 23);
        let abs = matrix_abs(&a).unwrap();
        let na = op_norm(&a);
        assert!((op_norm(&abs) - na).abs() <= 1e-9 * (1.0 + na));
    }

    #[test]
    fn sqrt_of_diagonal() {
        let s = psd_sqrt(&ComplexMatrix::diag(&[4.0, 9.0])).unwrap();
        assert!(s.sub(&ComplexMatrix::diag(&[2.0, 3.0])).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn sqrt_of_zero() {
        let z = ComplexMatrix::zeros(3);
        assert_eq!(psd_sqrt(&z).unwrap(), z);
    }

    #[test]
    fn sqrt_squares_back() {
        let g = random_matrix(4, 31);
        let p = g.adjoint().matmul(&g).unwrap().real_part();
        let s = psd_sqrt(&p).unwrap();
        let diff = s.matmul(&s).unwrap().sub(&p).unwrap().frobenius_norm();
        assert!(diff <= 1e-9 * (1.0 + p.frobenius_norm()));
    }

    #[test]
    fn sqrt_rejects_indefinite() {
        let m = ComplexMatrix::diag(&[1.0, -1.0]);
        assert!(matches!(psd_sqrt(&m), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn psd_product_radius_diagonal() {
        let p = ComplexMatrix::diag(&[1.0, 4.0]);
        let q = ComplexMatrix::diag(&[9.0, 1.0]);
        assert!((spectral_radius_psd_product(&p, &q).unwrap() - 9.0).abs() < 1e-10);
    }

    #[test]
    fn psd_product_radius_zero() {
        let p = ComplexMatrix::zeros(2);
        let q = ComplexMatrix::diag(&[3.0, 1.0]);
        assert_eq!(spectral_radius_psd_product(&p, &q).unwrap(), 0.0);
    }

    #[test]
    fn psd_product_matches_half_power_identity() {
        // r(PQ) = ||P^{1/2} Q^{1/2}||^2 for positive P, Q.
        for seed in 0..6 {
            let g = random_matrix(3, 100 + seed);
            let h = random_matrix(3, 200 + seed);
            let p = g.adjoint().matmul(&g).unwrap().real_part();
            let q = h.adjoint().matmul(&h).unwrap().real_part();
            let r = spectral_radius_psd_product(&p, &q).unwrap();
            let cross = op_norm(&psd_sqrt(&p).unwrap().matmul(&psd_sqrt(&q).unwrap()).unwrap());
            assert!((r - cross * cross).abs() <= 1e-9 * (1.0 + r.abs()));
        }
    }
}
