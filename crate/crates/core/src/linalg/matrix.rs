//! Dense square complex matrices, the universal operand of the workbench.
//!
//! Storage is row-major `Vec<Complex64>`. Construction validates shape and
//! finiteness, so downstream code can assume well-formed operands.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries. Rejects empty, non-square or non-finite data.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dim must be >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for dim {}, got {}",
                dim * dim,
                dim,
                entries.len()
            )));
        }
        if let Some(z) = entries.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!("non-finite entry {z}")));
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex64::ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j { Complex64::new(values[i], 0.0) } else { Complex64::ZERO }
        })
    }

    /// Matrix unit E_{ij} (1-based indices are NOT used; i, j are 0-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = Complex64::ONE;
        m
    }

    /// Build from row-major real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_entries(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Hermitian part (A + A*)/2.
    pub fn real_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Skew part mapped to a Hermitian matrix, (A - A*)/(2i).
    pub fn imag_part(&self) -> Self {
        let half_over_i = Complex64::new(0.0, -0.5);
        Self::from_fn(self.dim, |i, j| (self[(i, j)] - self[(j, i)].conj()) * half_over_i)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "vector length must match matrix dim");
        let n = self.dim;
        let mut out = vec![Complex64::ZERO; n];
        for i in 0..n {
            let mut acc = Complex64::ZERO;
            for j in 0..n {
                acc += self[(i, j)] * x[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance to the adjoint, used by Hermitian prechecks.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// FNV-1a over the dimension and raw entry bits; stable across runs.
    pub fn digest(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(&(self.dim as u64).to_le_bytes());
        for z in &self.entries {
            eat(&z.re.to_bits().to_le_bytes());
            eat(&z.im.to_bits().to_le_bytes());
        }
        h
    }

    /// Parse the shared matrix JSON format `{"dim": n, "entries": [[re,im], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MatrixJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidMatrix(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        let raw = MatrixJson {
            dim: self.dim,
            entries: self.entries.iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string(&raw).expect("matrix serializes")
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;
    fn try_from(raw: MatrixJson) -> Result<Self> {
        ComplexMatrix::from_entries(
            raw.dim,
            raw.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
        )
    }
}

/// ⟨x, y⟩ = Σ x_i conj(y_i), linear in the first argument.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_identity_is_identity() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(id.adjoint(), id);
    }

    #[test]
    fn adjoint_transposes_real_unit() {
        let e12 = ComplexMatrix::unit(2, 0, 1);
        assert_eq!(e12.adjoint(), ComplexMatrix::unit(2, 1, 0));
    }

    #[test]
    fn adjoint_conjugates() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        let a = m.adjoint();
        assert_eq!(a[(1, 0)], Complex64::new(0.0, -1.0));
    }

    #[test]
    fn real_part_of_unit() {
        let e12 = ComplexMatrix::unit(2, 0, 1);
        let re = e12.real_part();
        assert_eq!(re[(0, 1)], Complex64::new(0.5, 0.0));
        assert_eq!(re[(1, 0)], Complex64::new(0.5, 0.0));
    }

    #[test]
    fn hermitian_splits_as_h_plus_zero() {
        let h = ComplexMatrix::from_fn(2, |i, j| {
            if i == j {
                Complex64::new(1.0 + i as f64, 0.0)
            } else {
                Complex64::new(2.0, if i < j { 3.0 } else { -3.0 })
            }
        });
        assert!(h.real_part().sub(&h).unwrap().frobenius_norm() < 1e-15);
        assert!(h.imag_part().frobenius_norm() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let m = ComplexMatrix::from_entries(
            2,
            vec![
                Complex64::new(1.0, -2.0),
                Complex64::new(0.5, 0.0),
                Complex64::ZERO,
                Complex64::new(-1.25, 1e-3),
            ],
        )
        .unwrap();
        let back = ComplexMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn json_rejects_bad_shapes() {
        assert!(ComplexMatrix::from_json("{\"dim\":2,\"entries\":[[1,0]]}").is_err());
        assert!(ComplexMatrix::from_json("not json").is_err());
        assert!(ComplexMatrix::from_json("{\"dim\":0,\"entries\":[]}").is_err());
    }

    #[test]
    fn rejects_non_finite() {
        let bad = vec![Complex64::new(f64::NAN, 0.0)];
        assert!(ComplexMatrix::from_entries(1, bad).is_err());
    }

    #[test]
    fn digest_changes_with_entries() {
        let a = ComplexMatrix::identity(2);
        let mut b = a.clone();
        b[(0, 0)] = Complex64::new(1.0 + 1e-15, 0.0);
        assert_ne!(a.digest(), b.digest());
        assert_eq!(a.digest(), a.clone().digest());
    }
}
