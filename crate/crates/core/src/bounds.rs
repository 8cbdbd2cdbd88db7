//! The bound catalog: one operation per numerical-radius bound, each
//! mapping operand matrices to a `BoundReport` carrying the value and the
//! labeled intermediate quantities it was assembled from.
//!
//! Notation used in names: for the off-diagonal operator matrix
//! S = [[0, B], [C, 0]], upper bounds cap w(S)^k and lower bounds floor it,
//! with k the report's `exponent`. Absolute values are |X| = (X* X)^{1/2};
//! squared and fourth powers are formed directly from Gram products, never
//! through a square root.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::eig::check_hermitian;
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::spectral::{matrix_abs, op_norm, psd_sqrt, spectral_radius_psd_product};
use crate::linalg::{inequality_slack, leq_within};
use crate::numradius::scaled_radius_value;

/// Which side of w(S)^exponent the bound sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Upper,
    Lower,
}

/// One evaluated bound with its intermediate quantities.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub name: &'static str,
    pub kind: BoundKind,
    /// Power of w being bounded: 1, 2 or 4.
    pub exponent: u32,
    pub value: f64,
    /// Present iff the bound is alpha-parametrized.
    pub alpha: Option<f64>,
    pub components: BTreeMap<&'static str, f64>,
}

impl BoundReport {
    fn new(name: &'static str, kind: BoundKind, exponent: u32, value: f64) -> Self {
        Self { name, kind, exponent, value, alpha: None, components: BTreeMap::new() }
    }

    fn with(mut self, key: &'static str, value: f64) -> Self {
        self.components.insert(key, value);
        self
    }
}

fn check_pair(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<()> {
    if b.dim() != c.dim() {
        return Err(Error::DimMismatch { left: b.dim(), right: c.dim() });
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    Ok(())
}

/// ||B + C*|| and ||B - C*||.
fn cross_norms(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<(f64, f64)> {
    let c_star = c.adjoint();
    Ok((op_norm(&b.add(&c_star)?), op_norm(&b.sub(&c_star)?)))
}

/// max{ |||B|^2 + |C*|^2||, |||B*|^2 + |C|^2|| } from direct Gram products.
fn squared_abs_max(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<f64> {
    let b_sq = b.adjoint().matmul(b)?; // |B|^2
    let bs_sq = b.matmul(&b.adjoint())?; // |B*|^2
    let c_sq = c.adjoint().matmul(c)?; // |C|^2
    let cs_sq = c.matmul(&c.adjoint())?; // |C*|^2
    Ok(op_norm(&b_sq.add(&cs_sq)?).max(op_norm(&bs_sq.add(&c_sq)?)))
}

/// max{ |||B|^4 + |C*|^4||, |||B*|^4 + |C|^4|| }, powers as squared Grams.
fn fourth_abs_max(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<f64> {
    let b_sq = b.adjoint().matmul(b)?;
    let bs_sq = b.matmul(&b.adjoint())?;
    let c_sq = c.adjoint().matmul(c)?;
    let cs_sq = c.matmul(&c.adjoint())?;
    let b_4 = b_sq.matmul(&b_sq)?;
    let bs_4 = bs_sq.matmul(&bs_sq)?;
    let c_4 = c_sq.matmul(&c_sq)?;
    let cs_4 = cs_sq.matmul(&cs_sq)?;
    Ok(op_norm(&b_4.add(&cs_4)?).max(op_norm(&bs_4.add(&c_4)?)))
}

/// w(S) <= 1/2 max{||B||,||C||} + 1/2 max{r^{1/2}(|B||C*|), r^{1/2}(|B*||C|)}.
pub fn bound_th1_upper(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<BoundReport> {
    check_pair(b, c)?;
    let norm_b = op_norm(b);
    let norm_c = op_norm(c);
    let r_b_cstar = spectral_radius_psd_product(&matrix_abs(b)?, &matrix_abs(&c.adjoint())?)?;
    let r_bstar_c = spectral_radius_psd_product(&matrix_abs(&b.adjoint())?, &matrix_abs(c)?)?;
    let value = 0.5 * norm_b.max(norm_c) + 0.5 * r_b_cstar.sqrt().max(r_bstar_c.sqrt());
    Ok(BoundReport::new("th1_upper", BoundKind::Upper, 1, value)
        .with("norm_b", norm_b)
        .with("norm_c", norm_c)
        .with("r_abs_b_abs_cstar", r_b_cstar)
        .with("r_abs_bstar_abs_c", r_bstar_c))
}

/// The intermediate inequality of the same proof:
/// w(S) <= 1/2 max{ |||C| + |B*|||, |||B| + |C*||| }.
pub fn bound_th1eqn_upper(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<BoundReport> {
    check_pair(b, c)?;
    let left = op_norm(&matrix_abs(c)?.add(&matrix_abs(&b.adjoint())?)?);
    let right = op_norm(&matrix_abs(b)?.add(&matrix_abs(&c.adjoint())?)?);
    let value = 0.5 * left.max(right);
    Ok(BoundReport::new("th1eqn_upper", BoundKind::Upper, 1, value)
        .with("norm_abs_c_plus_abs_bstar", left)
        .with("norm_abs_b_plus_abs_cstar", right))
}

/// w(S) >= 1/2 max{||B||,||C||} + 1/4 | ||B+C*|| - ||B-C*|| |.
pub fn bound_th5_lower(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<BoundReport> {
    check_pair(b, c)?;
    let norm_b = op_norm(b);
    let norm_c = op_norm(c);
    let (plus, minus) = cross_norms(b, c)?;
    let value = 0.5 * norm_b.max(norm_c) + 0.25 * (plus - minus).abs();
    Ok(BoundReport::new("th5_lower", BoundKind::Lower, 1, value)
        .with("norm_b", norm_b)
        .with("norm_c", norm_c)
        .with("norm_b_plus_cstar", plus)
        .with("norm_b_minus_cstar", minus))
}

/// w(S)^2 <= 1/4 max{...squares...} + 1/2 max{w(|B||C*|), w(|C||B*|)}.
pub fn bound_th2_upper_sq(
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    inner_tol: f64,
) -> Result<BoundReport> {
    check_pair(b, c)?;
    let quarter = 0.25 * squared_abs_max(b, c)?;
    let w_b_cstar =
        scaled_radius_value(&matrix_abs(b)?.matmul(&matrix_abs(&c.adjoint())?)?, inner_tol)?;
    let w_c_bstar =
        scaled_radius_value(&matrix_abs(c)?.matmul(&matrix_abs(&b.adjoint())?)?, inner_tol)?;
    let value = quarter + 0.5 * w_b_cstar.max(w_c_bstar);
    Ok(BoundReport::new("th2_upper_sq", BoundKind::Upper, 2, value)
        .with("quarter_max_squares", quarter)
        .with("w_abs_b_abs_cstar", w_b_cstar)
        .with("w_abs_c_abs_bstar", w_c_bstar))
}

/// w(S)^2 >= 1/4 max{...squares...} + 1/8 | ||B+C*||^2 - ||B-C*||^2 |.
pub fn bound_th6_lower_sq(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<BoundReport> {
    check_pair(b, c)?;
    let quarter = 0.25 * squared_abs_max(b, c)?;
    let (plus, minus) = cross_norms(b, c)?;
    let value = quarter + 0.125 * (plus * plus - minus * minus).abs();
    Ok(BoundReport::new("th6_lower_sq", BoundKind::Lower, 2, value)
        .with("quarter_max_squares", quarter)
        .with("norm_b_plus_cstar", plus)
        .with("norm_b_minus_cstar", minus))
}

/// Both lines of the chain
/// w(S)^2 >= 1/8 [max{n+^2, n-^2} + n+ n-] >= 1/4 max{...squares...}.
pub fn bound_th3_chain(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<(f64, f64)> {
    check_pair(b, c)?;
    let (plus, minus) = cross_norms(b, c)?;
    let first = 0.125 * ((plus * plus).max(minus * minus) + plus * minus);
    let second = 0.25 * squared_abs_max(b, c)?;
    Ok((first, second))
}

pub fn bound_th3_lower_sq(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<BoundReport> {
    let (first, second) = bound_th3_chain(b, c)?;
    let (plus, minus) = cross_norms(b, c)?;
    Ok(BoundReport::new("th3_lower_sq", BoundKind::Lower, 2, first)
        .with("chain_second", second)
        .with("norm_b_plus_cstar", plus)
        .with("norm_b_minus_cstar", minus))
}

/// Both lines of the chain
/// w(S)^2 >= (1/(4 sqrt 2)) [n+^4 + n-^4]^{1/2} >= 1/4 max{...squares...}.
pub fn bound_th4_chain(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<(f64, f64)> {
    check_pair(b, c)?;
    let (plus, minus) = cross_norms(b, c)?;
    let first = (plus.powi(4) + minus.powi(4)).sqrt() / (4.0 * 2.0f64.sqrt());
    let second = 0.25 * squared_abs_max(b, c)?;
    Ok((first, second))
}

pub fn bound_th4_lower_sq(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<BoundReport> {
    let (first, second) = bound_th4_chain(b, c)?;
    let (plus, minus) = cross_norms(b, c)?;
    Ok(BoundReport::new("th4_lower_sq", BoundKind::Lower, 2, first)
        .with("chain_second", second)
        .with("norm_b_plus_cstar", plus)
        .with("norm_b_minus_cstar", minus))
}

/// Reusable pieces of the fourth-power upper bounds, so an alpha grid can
/// be evaluated with a single pair of interior radius computations.
#[derive(Debug, Clone, Copy)]
pub struct FourthPowerParts {
    pub squared_max: f64,
    pub fourth_max: f64,
    pub w_bc: f64,
    pub w_cb: f64,
}

pub fn fourth_power_parts(
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    inner_tol: f64,
) -> Result<FourthPowerParts> {
    check_pair(b, c)?;
    Ok(FourthPowerParts {
        squared_max: squared_abs_max(b, c)?,
        fourth_max: fourth_abs_max(b, c)?,
        w_bc: scaled_radius_value(&b.matmul(c)?, inner_tol)?,
        w_cb: scaled_radius_value(&c.matmul(b)?, inner_tol)?,
    })
}

/// Assemble the th-7 value for one alpha from precomputed parts.
pub fn th7_value(parts: &FourthPowerParts, alpha: f64) -> f64 {
    let w_max = parts.w_bc.max(parts.w_cb);
    (1.0 + alpha) / 8.0 * parts.fourth_max
        + (1.0 - alpha) / 4.0 * w_max * w_max
        + 0.25 * parts.squared_max * w_max
}

/// w(S)^4 <= (1+a)/8 max{...fourth...} + (1-a)/4 max{w^2(BC), w^2(CB)}
///           + 1/4 max{...squares...} max{w(BC), w(CB)}.
pub fn bound_th7_upper_4(
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    alpha: f64,
    inner_tol: f64,
) -> Result<BoundReport> {
    check_alpha(alpha)?;
    let parts = fourth_power_parts(b, c, inner_tol)?;
    let mut report =
        BoundReport::new("th7_upper_4", BoundKind::Upper, 4, th7_value(&parts, alpha))
            .with("max_squares", parts.squared_max)
            .with("max_fourth", parts.fourth_max)
            .with("w_bc", parts.w_bc)
            .with("w_cb", parts.w_cb);
    report.alpha = Some(alpha);
    Ok(report)
}

/// th-25 value for one alpha: the th-7 terms scaled by 8 plus the diagonal
/// head 8 max{w^4(A), w^4(D)}.
pub fn th25_value(parts: &FourthPowerParts, w4_diag_max: f64, alpha: f64) -> f64 {
    let w_max = parts.w_bc.max(parts.w_cb);
    8.0 * w4_diag_max
        + (1.0 + alpha) * parts.fourth_max
        + 2.0 * (1.0 - alpha) * w_max * w_max
        + 2.0 * parts.squared_max * w_max
}

/// Comparison bound that th-25 strengthens: the last two terms get replaced
/// by (3 - a) max{...squares...} max{w(BC), w(CB)}.
pub fn bk21_value(parts: &FourthPowerParts, w4_diag_max: f64, alpha: f64) -> f64 {
    let w_max = parts.w_bc.max(parts.w_cb);
    8.0 * w4_diag_max
        + (1.0 + alpha) * parts.fourth_max
        + (3.0 - alpha) * parts.squared_max * w_max
}

fn full_block_parts(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
    inner_tol: f64,
) -> Result<(FourthPowerParts, f64)> {
    check_pair(a, b)?;
    check_pair(b, c)?;
    check_pair(c, d)?;
    let parts = fourth_power_parts(b, c, inner_tol)?;
    let w_a = scaled_radius_value(a, inner_tol)?;
    let w_d = scaled_radius_value(d, inner_tol)?;
    Ok((parts, w_a.powi(4).max(w_d.powi(4))))
}

pub fn bound_th25_upper_4(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
    alpha: f64,
    inner_tol: f64,
) -> Result<BoundReport> {
    check_alpha(alpha)?;
    let (parts, w4_diag) = full_block_parts(a, b, c, d, inner_tol)?;
    let mut report =
        BoundReport::new("th25_upper_4", BoundKind::Upper, 4, th25_value(&parts, w4_diag, alpha))
            .with("max_squares", parts.squared_max)
            .with("max_fourth", parts.fourth_max)
            .with("w_bc", parts.w_bc)
            .with("w_cb", parts.w_cb)
            .with("w4_diag_max", w4_diag);
    report.alpha = Some(alpha);
    Ok(report)
}

pub fn bound_bk21_upper_4(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
    alpha: f64,
    inner_tol: f64,
) -> Result<BoundReport> {
    check_alpha(alpha)?;
    let (parts, w4_diag) = full_block_parts(a, b, c, d, inner_tol)?;
    let mut report =
        BoundReport::new("bk21_upper_4", BoundKind::Upper, 4, bk21_value(&parts, w4_diag, alpha))
            .with("max_squares", parts.squared_max)
            .with("max_fourth", parts.fourth_max)
            .with("w_bc", parts.w_bc)
            .with("w_cb", parts.w_cb)
            .with("w4_diag_max", w4_diag);
    report.alpha = Some(alpha);
    Ok(report)
}

/// Singleton specialization of th-7:
/// w^4(B) <= (1+a)/8 |||B|^4+|B*|^4|| + (1-a)/4 w^2(B^2)
///           + 1/4 |||B|^2+|B*|^2|| w(B^2).
#[derive(Debug, Clone, Copy)]
pub struct Cor1Parts {
    pub squared_norm: f64,
    pub fourth_norm: f64,
    pub w_b_squared: f64,
}

pub fn cor1_parts(b: &ComplexMatrix, inner_tol: f64) -> Result<Cor1Parts> {
    let b_sq = b.adjoint().matmul(b)?;
    let bs_sq = b.matmul(&b.adjoint())?;
    let squared_norm = op_norm(&b_sq.add(&bs_sq)?);
    let fourth_norm = op_norm(&b_sq.matmul(&b_sq)?.add(&bs_sq.matmul(&bs_sq)?)?);
    let w_b_squared = scaled_radius_value(&b.matmul(b)?, inner_tol)?;
    Ok(Cor1Parts { squared_norm, fourth_norm, w_b_squared })
}

pub fn cor1_value(parts: &Cor1Parts, alpha: f64) -> f64 {
    (1.0 + alpha) / 8.0 * parts.fourth_norm
        + (1.0 - alpha) / 4.0 * parts.w_b_squared * parts.w_b_squared
        + 0.25 * parts.squared_norm * parts.w_b_squared
}

pub fn bound_cor1_upper_4(b: &ComplexMatrix, alpha: f64, inner_tol: f64) -> Result<BoundReport> {
    check_alpha(alpha)?;
    let parts = cor1_parts(b, inner_tol)?;
    let mut report =
        BoundReport::new("cor1_upper_4", BoundKind::Upper, 4, cor1_value(&parts, alpha))
            .with("norm_squares", parts.squared_norm)
            .with("norm_fourth", parts.fourth_norm)
            .with("w_b_squared", parts.w_b_squared);
    report.alpha = Some(alpha);
    Ok(report)
}

/// For self-adjoint B, C:
/// max{||B+C||^2, ||B-C||^2} <= ||B^2 + C^2|| + 2 w(|B||C|).
pub fn bound_prop33(
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    inner_tol: f64,
) -> Result<BoundReport> {
    check_pair(b, c)?;
    check_hermitian(b)?;
    check_hermitian(c)?;
    let sum_squares = op_norm(&b.matmul(b)?.add(&c.matmul(c)?)?);
    let w_abs = scaled_radius_value(&matrix_abs(b)?.matmul(&matrix_abs(c)?)?, inner_tol)?;
    let value = sum_squares + 2.0 * w_abs;
    Ok(BoundReport::new("prop33_upper_sq", BoundKind::Upper, 2, value)
        .with("norm_b2_plus_c2", sum_squares)
        .with("w_abs_b_abs_c", w_abs))
}

/// Kittaneh's 2002 comparison bound for positive B, C:
/// ||B+C|| <= 1/2 [ ||B|| + ||C|| + sqrt((||B||-||C||)^2 + 4||B^{1/2}C^{1/2}||^2) ].
pub fn kittaneh2002_bound(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<f64> {
    check_pair(b, c)?;
    let b_half = psd_sqrt(b)?;
    let c_half = psd_sqrt(c)?;
    let norm_b = op_norm(b);
    let norm_c = op_norm(c);
    let cross = op_norm(&b_half.matmul(&c_half)?);
    Ok(0.5 * (norm_b + norm_c + ((norm_b - norm_c).powi(2) + 4.0 * cross * cross).sqrt()))
}

/// Equality-condition record for w(S)^2 = 1/4 max{...squares...}:
/// the sufficient condition |B||C*| = |B*||C| = 0 and the necessary
/// condition ||B+C*|| = ||B-C*||.
#[derive(Debug, Clone)]
pub struct EqualityConditions {
    pub w_sq: f64,
    pub quarter_max: f64,
    /// w^2 equals the quarter-max within the tolerance policy.
    pub equality_holds: bool,
    pub norm_plus: f64,
    pub norm_minus: f64,
    pub norms_equal: bool,
    pub product_b_cstar_norm: f64,
    pub product_bstar_c_norm: f64,
    /// Both product norms below 1e-10.
    pub sufficient_holds: bool,
}

pub fn check_equality_conditions(
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    tol: f64,
) -> Result<EqualityConditions> {
    check_pair(b, c)?;
    let s = crate::blockops::make_offdiag(b, c)?;
    let w = scaled_radius_value(&s.assembled, tol / 10.0)?;
    let w_sq = w * w;
    let quarter_max = 0.25 * squared_abs_max(b, c)?;
    let (norm_plus, norm_minus) = cross_norms(b, c)?;
    let product_b_cstar_norm = op_norm(&matrix_abs(b)?.matmul(&matrix_abs(&c.adjoint())?)?);
    let product_bstar_c_norm = op_norm(&matrix_abs(&b.adjoint())?.matmul(&matrix_abs(c)?)?);
    Ok(EqualityConditions {
        w_sq,
        quarter_max,
        equality_holds: (w_sq - quarter_max).abs() <= inequality_slack(w_sq, quarter_max, tol),
        norm_plus,
        norm_minus,
        norms_equal: (norm_plus - norm_minus).abs()
            <= inequality_slack(norm_plus, norm_minus, tol),
        product_b_cstar_norm,
        product_bstar_c_norm,
        sufficient_holds: product_b_cstar_norm < 1e-10 && product_bstar_c_norm < 1e-10,
    })
}

/// Both inequalities of the positive-operator proposition:
/// (i) ||B-C|| <= ||B+C|| and (ii) max{||B||,||C||} <= ||B+C||/2 + ||B-C||/2.
#[derive(Debug, Clone)]
pub struct Prop31Record {
    pub sum_norm: f64,
    pub diff_norm: f64,
    pub max_norm: f64,
    pub holds_diff_le_sum: bool,
    pub holds_max_le_average: bool,
}

pub fn check_prop31(b: &ComplexMatrix, c: &ComplexMatrix, tol: f64) -> Result<Prop31Record> {
    check_pair(b, c)?;
    psd_sqrt(b)?;
    psd_sqrt(c)?;
    let sum_norm = op_norm(&b.add(c)?);
    let diff_norm = op_norm(&b.sub(c)?);
    let max_norm = op_norm(b).max(op_norm(c));
    Ok(Prop31Record {
        sum_norm,
        diff_norm,
        max_norm,
        holds_diff_le_sum: leq_within(diff_norm, sum_norm, tol),
        holds_max_le_average: leq_within(max_norm, 0.5 * (sum_norm + diff_norm), tol),
    })
}
