//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Deterministic and accurate at desk scale (dim up to ~64). Inputs are
//! symmetrized before iteration so that floating-point drift in products
//! like A*A never leaks into the decomposition.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;

/// Relative Frobenius bound under which a matrix is accepted as Hermitian.
pub const HERMITIAN_PRECHECK: f64 = 1e-8;
/// Off-diagonal convergence threshold, relative to the Frobenius norm.
const OFF_DIAG_THRESHOLD: f64 = 1e-13;
/// Sweep budget per unit of dimension.
const SWEEPS_PER_DIM: usize = 100;

/// Eigendecomposition of a Hermitian matrix: `M = V diag(values) V*`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose k-th column is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("dim >= 1")
    }

    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }
}

/// Decompose a (numerically) Hermitian matrix.
///
/// Precondition: ||M - M*||_F <= 1e-8 (1 + ||M||_F); the input is then
/// symmetrized to (M + M*)/2 before the Jacobi iteration.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    check_hermitian(m)?;
    let (values, vectors) = jacobi(m.real_part(), true)?;
    Ok(HermitianEig { values, vectors: vectors.expect("vectors requested") })
}

/// Largest eigenvalue of a Hermitian matrix, skipping eigenvector accumulation.
pub(crate) fn lambda_max_hermitian(m: &ComplexMatrix) -> Result<f64> {
    let (values, _) = jacobi(m.real_part(), false)?;
    Ok(*values.last().expect("dim >= 1"))
}

/// All eigenvalues of a Hermitian matrix, ascending, without eigenvectors.
pub(crate) fn eigenvalues_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let (values, _) = jacobi(m.real_part(), false)?;
    Ok(values)
}

pub(crate) fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    let deviation = m.hermitian_deviation();
    let bound = HERMITIAN_PRECHECK * (1.0 + m.frobenius_norm());
    if deviation > bound {
        return Err(Error::NotHermitian { deviation, bound });
    }
    Ok(())
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(mut a: ComplexMatrix, with_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = a.dim();
    let mut v = with_vectors.then(|| ComplexMatrix::identity(n));

    if n > 1 {
        let threshold = OFF_DIAG_THRESHOLD * a.frobenius_norm();
        let budget = SWEEPS_PER_DIM * n;
        let mut converged = off_diagonal_norm(&a) <= threshold;
        let mut sweeps = 0;
        while !converged {
            if sweeps == budget {
                return Err(Error::NoConvergence { sweeps });
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, v.as_mut(), p, q);
                }
            }
            sweeps += 1;
            converged = off_diagonal_norm(&a) <= threshold;
        }
    }

    // Sort ascending; ties keep original column order for determinism.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap().then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = v.map(|v| ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]));
    Ok((values, vectors))
}

/// One complex Jacobi rotation annihilating the (p, q) entry.
fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let h = apq.norm();
    if h == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * h);
    // Smaller root of t^2 + 2 tau t - 1 = 0, for a rotation angle <= pi/4.
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = (apq / h) * (t * c);

    let n = a.dim();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * c - akq * s.conj();
        let new_kq = akp * s + akq * c;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp.conj();
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = Complex64::new(app - t * h, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * h, 0.0);
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - vkq * s.conj();
            v[(k, q)] = vkp * s + vkq * c;
        }
    }
}
