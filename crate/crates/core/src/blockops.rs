//! 2x2 block operator matrices: construction and the block radius/norm
//! identities used throughout the bound catalog.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::spectral::{op_norm, psd_sqrt};
use crate::numradius::scaled_radius_value;

/// The off-diagonal operator matrix [[0, B], [C, 0]].
#[derive(Debug, Clone)]
pub struct OffDiagBlock {
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    pub assembled: ComplexMatrix,
}

/// The full operator matrix [[A, B], [C, D]].
#[derive(Debug, Clone)]
pub struct FullBlock {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    pub d: ComplexMatrix,
    pub assembled: ComplexMatrix,
}

fn check_dims(blocks: &[&ComplexMatrix]) -> Result<usize> {
    let n = blocks[0].dim();
    for m in blocks.iter().skip(1) {
        if m.dim() != n {
            return Err(Error::DimMismatch { left: n, right: m.dim() });
        }
    }
    Ok(n)
}

/// Assemble [[0, B], [C, 0]] into dense 2n x 2n storage.
pub fn make_offdiag(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<OffDiagBlock> {
    let n = check_dims(&[b, c])?;
    let assembled = ComplexMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, false) => b[(i, j - n)],
        (false, true) => c[(i - n, j)],
        _ => Complex64::ZERO,
    });
    Ok(OffDiagBlock { b: b.clone(), c: c.clone(), assembled })
}

/// Assemble [[A, B], [C, D]].
pub fn make_full(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
) -> Result<FullBlock> {
    let n = check_dims(&[a, b, c, d])?;
    let assembled = ComplexMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (true, false) => b[(i, j - n)],
        (false, true) => c[(i - n, j)],
        (false, false) => d[(i - n, j - n)],
    });
    Ok(FullBlock { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone(), assembled })
}

/// Block-diagonal radius identity: w([[A,0],[0,D]]) vs max{w(A), w(D)}.
/// Returns both sides; the caller decides pass/fail under its tolerance.
pub fn check_block_diag_radius(
    a: &ComplexMatrix,
    d: &ComplexMatrix,
    tol: f64,
) -> Result<(f64, f64)> {
    let n = check_dims(&[a, d])?;
    let zero = ComplexMatrix::zeros(n);
    let block = make_full(a, &zero, &zero, d)?;
    let lhs = scaled_radius_value(&block.assembled, tol)?;
    let rhs = scaled_radius_value(a, tol)?.max(scaled_radius_value(d, tol)?);
    Ok((lhs, rhs))
}

/// Pinched radius identity: w([[A,B],[B,A]]) vs max{w(A+B), w(A-B)}.
pub fn check_pinched_radius(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: f64,
) -> Result<(f64, f64)> {
    check_dims(&[a, b])?;
    let block = make_full(a, b, b, a)?;
    let lhs = scaled_radius_value(&block.assembled, tol)?;
    let rhs = scaled_radius_value(&a.add(b)?, tol)?
        .max(scaled_radius_value(&a.sub(b)?, tol)?);
    Ok((lhs, rhs))
}

/// Block norm identity: both the diagonal and anti-diagonal embeddings of
/// (A, D) have norm max{||A||, ||D||}. Returns (diag, anti, max).
pub fn check_block_norms(a: &ComplexMatrix, d: &ComplexMatrix) -> Result<(f64, f64, f64)> {
    let n = check_dims(&[a, d])?;
    let zero = ComplexMatrix::zeros(n);
    let diag = make_full(a, &zero, &zero, d)?;
    let anti = make_offdiag(a, d)?;
    Ok((op_norm(&diag.assembled), op_norm(&anti.assembled), op_norm(a).max(op_norm(d))))
}

/// For positive B, C: w([[0,B],[C,0]]) = ||B + C|| / 2.
/// Returns (radius, half sum norm).
pub fn positive_offdiag_radius(
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    tol: f64,
) -> Result<(f64, f64)> {
    check_dims(&[b, c])?;
    // PSD gates, reusing the square-root validation.
    psd_sqrt(b)?;
    psd_sqrt(c)?;
    let block = make_offdiag(b, c)?;
    let w = scaled_radius_value(&block.assembled, tol)?;
    Ok((w, 0.5 * op_norm(&b.add(c)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numradius::numerical_radius_value;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ComplexMatrix::from_fn(n, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        })
    }

    #[test]
    fn zero_blocks_assemble_to_zero() {
        let z = ComplexMatrix::zeros(2);
        let block = make_offdiag(&z, &z).unwrap();
        assert_eq!(block.assembled, ComplexMatrix::zeros(4));
    }

    #[test]
    fn unit_blocks_land_on_expected_entries() {
        // B = E12, C = E21 (n = 2) assembles to E14 + E41 in the 4x4 matrix.
        let b = ComplexMatrix::unit(2, 0, 1);
        let c = ComplexMatrix::unit(2, 1, 0);
        let block = make_offdiag(&b, &c).unwrap();
        let expect = ComplexMatrix::unit(4, 0, 3)
            .add(&ComplexMatrix::unit(4, 3, 0))
            .unwrap();
        assert_eq!(block.assembled, expect);
    }

    #[test]
    fn identity_swap_has_unit_radius() {
        let id = ComplexMatrix::identity(2);
        let block = make_offdiag(&id, &id).unwrap();
        let w = numerical_radius_value(&block.assembled, 1e-10).unwrap();
        assert!((w - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn dim_mismatch_is_rejected() {
        let a = ComplexMatrix::zeros(2);
        let b = ComplexMatrix::zeros(3);
        assert!(matches!(make_offdiag(&a, &b), Err(Error::DimMismatch { .. })));
    }

    #[test]
    fn full_block_with_zero_corners_matches_offdiag() {
        let b = random_matrix(2, 1);
        let c = random_matrix(2, 2);
        let z = ComplexMatrix::zeros(2);
        let full = make_full(&z, &b, &c, &z).unwrap();
        let off = make_offdiag(&b, &c).unwrap();
        assert_eq!(full.assembled, off.assembled);
    }

    #[test]
    fn diagonal_blocks_assemble_diagonally() {
        let a = ComplexMatrix::diag(&[1.0]);
        let d = ComplexMatrix::diag(&[5.0]);
        let z = ComplexMatrix::zeros(1);
        let full = make_full(&a, &z, &z, &d).unwrap();
        assert_eq!(full.assembled, ComplexMatrix::diag(&[1.0, 5.0]));
    }

    #[test]
    fn block_adjoint_identity() {
        let (a, b, c, d) = (
            random_matrix(2, 10),
            random_matrix(2, 11),
            random_matrix(2, 12),
            random_matrix(2, 13),
        );
        let full = make_full(&a, &b, &c, &d).unwrap();
        let swapped = make_full(&a.adjoint(), &c.adjoint(), &b.adjoint(), &d.adjoint()).unwrap();
        assert_eq!(full.assembled.adjoint(), swapped.assembled);
    }

    #[test]
    fn offdiag_adjoint_swaps_conjugated_blocks() {
        let b = random_matrix(3, 20);
        let c = random_matrix(3, 21);
        let adj = make_offdiag(&b, &c).unwrap().assembled.adjoint();
        let direct = make_offdiag(&c.adjoint(), &b.adjoint()).unwrap().assembled;
        assert_eq!(adj, direct);
    }

    #[test]
    fn block_diag_radius_equal_blocks() {
        let a = random_matrix(2, 31);
        let (lhs, rhs) = check_block_diag_radius(&a, &a, 1e-10).unwrap();
        assert!((lhs - rhs).abs() <= 2e-10 * (1.0 + rhs));
    }

    #[test]
    fn block_diag_radius_diagonal_case() {
        let a = ComplexMatrix::diag(&[3.0]);
        let d = ComplexMatrix::diag(&[1.0]);
        let (lhs, rhs) = check_block_diag_radius(&a, &d, 1e-10).unwrap();
        assert!((lhs - 3.0).abs() <= 1e-9);
        assert!((rhs - 3.0).abs() <= 1e-9);
    }

    #[test]
    fn pinched_radius_with_zero_diagonal() {
        // w([[0,B],[B,0]]) = w(B).
        let b = random_matrix(2, 44);
        let zero = ComplexMatrix::zeros(2);
        let (lhs, rhs) = check_pinched_radius(&zero, &b, 1e-10).unwrap();
        let wb = numerical_radius_value(&b, 1e-10).unwrap();
        assert!((lhs - wb).abs() <= 2e-9 * (1.0 + wb));
        assert!((rhs - wb).abs() <= 2e-9 * (1.0 + wb));
    }

    #[test]
    fn pinched_radius_random_pair() {
        let a = random_matrix(2, 50);
        let b = random_matrix(2, 51);
        let (lhs, rhs) = check_pinched_radius(&a, &b, 1e-10).unwrap();
        assert!((lhs - rhs).abs() <= 2e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn block_norms_identity_and_scaled() {
        let id = ComplexMatrix::identity(2);
        let (d, a, m) = check_block_norms(&id, &id).unwrap();
        assert!((d - 1.0).abs() <= 1e-10 && (a - 1.0).abs() <= 1e-10 && (m - 1.0).abs() <= 1e-10);

        let two = id.scale(Complex64::new(2.0, 0.0));
        let zero = ComplexMatrix::zeros(2);
        let (d, a, m) = check_block_norms(&two, &zero).unwrap();
        assert!((d - 2.0).abs() <= 1e-10 && (a - 2.0).abs() <= 1e-10 && (m - 2.0).abs() <= 1e-10);
    }

    #[test]
    fn block_norms_random_three_way() {
        let a = random_matrix(3, 61);
        let d = random_matrix(3, 62);
        let (nd, na, m) = check_block_norms(&a, &d).unwrap();
        assert!((nd - m).abs() <= 1e-9 * (1.0 + m));
        assert!((na - m).abs() <= 1e-9 * (1.0 + m));
    }

    #[test]
    fn positive_offdiag_identity_blocks() {
        let id = ComplexMatrix::identity(2);
        let (w, half) = positive_offdiag_radius(&id, &id, 1e-10).unwrap();
        assert!((w - 1.0).abs() <= 1e-9);
        assert!((half - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn positive_offdiag_paper_operands() {
        let b = ComplexMatrix::diag(&[4.0, 0.0]);
        let c = ComplexMatrix::diag(&[1.0, 2.0]);
        let (w, half) = positive_offdiag_radius(&b, &c, 1e-10).unwrap();
        assert!((w - 2.5).abs() <= 1e-9);
        assert!((half - 2.5).abs() <= 1e-12);
    }

    #[test]
    fn positive_offdiag_rejects_indefinite() {
        let b = ComplexMatrix::diag(&[1.0, -1.0]);
        let c = ComplexMatrix::identity(2);
        assert!(matches!(
            positive_offdiag_radius(&b, &c, 1e-9),
            Err(Error::NotPsd { .. })
        ));
    }
}
