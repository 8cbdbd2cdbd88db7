//! The inequality check registry: every verifiable statement of the bound
//! catalog as a named check over ensemble samples.
//!
//! Gap conventions per record:
//!   upper checks    gap = rhs - lhs   (lhs <= rhs expected)
//!   lower checks    gap = lhs - rhs   (lhs >= rhs expected)
//!   equalities      gap = -|lhs - rhs|
//!   sandwiches      gap = the smaller of the two one-sided gaps
//! A record passes iff gap >= -tol (1 + max(|lhs|, |rhs|)).

use crate::bounds::{
    bound_prop33, bound_th1_upper, bound_th1eqn_upper, bound_th2_upper_sq, bound_th3_chain,
    bound_th4_chain, bound_th5_lower, bound_th6_lower_sq, bk21_value, cor1_parts, cor1_value,
    fourth_power_parts, kittaneh2002_bound, th25_value, th7_value, Cor1Parts, FourthPowerParts,
};
use crate::blockops::{make_full, make_offdiag};
use crate::error::{Error, Result};
use crate::harness::ensemble::EnsembleKind;
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::spectral::{matrix_abs, op_norm};
use crate::linalg::inequality_slack;
use crate::numradius::{scaled_radius_value, spectral_radius_general};

/// Alpha grid used by every alpha-parametrized check.
pub const ALPHA_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Arity {
    One,
    Two,
    Four,
}

pub struct CheckDef {
    pub name: &'static str,
    pub(crate) arity: Arity,
    pub(crate) applies: fn(EnsembleKind) -> bool,
}

fn every(_: EnsembleKind) -> bool {
    true
}

fn psd_only(kind: EnsembleKind) -> bool {
    kind == EnsembleKind::Psd
}

fn self_adjoint(kind: EnsembleKind) -> bool {
    matches!(kind, EnsembleKind::Hermitian | EnsembleKind::Psd)
}

fn nilpotent_only(kind: EnsembleKind) -> bool {
    kind == EnsembleKind::Nilpotent2
}

pub const ALL_CHECKS: &[CheckDef] = &[
    CheckDef { name: "eqv_sandwich", arity: Arity::One, applies: every },
    CheckDef { name: "spectral_le_numerical", arity: Arity::One, applies: every },
    CheckDef { name: "nilpotent_half_norm", arity: Arity::One, applies: nilpotent_only },
    CheckDef { name: "cor1_upper", arity: Arity::One, applies: every },
    CheckDef { name: "cor1_cap", arity: Arity::One, applies: every },
    CheckDef { name: "th1_upper", arity: Arity::Two, applies: every },
    CheckDef { name: "th1eqn_upper", arity: Arity::Two, applies: every },
    CheckDef { name: "th5_lower", arity: Arity::Two, applies: every },
    CheckDef { name: "th2_upper", arity: Arity::Two, applies: every },
    CheckDef { name: "th6_lower", arity: Arity::Two, applies: every },
    CheckDef { name: "th3_lower", arity: Arity::Two, applies: every },
    CheckDef { name: "th3_chain", arity: Arity::Two, applies: every },
    CheckDef { name: "th4_lower", arity: Arity::Two, applies: every },
    CheckDef { name: "th4_chain", arity: Arity::Two, applies: every },
    CheckDef { name: "th7_upper", arity: Arity::Two, applies: every },
    CheckDef { name: "lemma21_diag", arity: Arity::Two, applies: every },
    CheckDef { name: "lemma21_pinched", arity: Arity::Two, applies: every },
    CheckDef { name: "lemma22_norms", arity: Arity::Two, applies: every },
    CheckDef { name: "equality_sufficient", arity: Arity::Two, applies: every },
    CheckDef { name: "equality_necessary", arity: Arity::Two, applies: every },
    CheckDef { name: "positive_offdiag", arity: Arity::Two, applies: psd_only },
    CheckDef { name: "prop31", arity: Arity::Two, applies: psd_only },
    CheckDef { name: "prop33", arity: Arity::Two, applies: self_adjoint },
    CheckDef { name: "kittaneh2002", arity: Arity::Two, applies: psd_only },
    CheckDef { name: "norm_sum_implication", arity: Arity::Two, applies: self_adjoint },
    CheckDef { name: "th25_upper", arity: Arity::Four, applies: every },
    CheckDef { name: "th25_le_bk21", arity: Arity::Four, applies: every },
];

pub fn all_check_names() -> Vec<&'static str> {
    ALL_CHECKS.iter().map(|c| c.name).collect()
}

pub(crate) fn find_check(name: &str) -> Result<&'static CheckDef> {
    ALL_CHECKS
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownCheck { name: name.to_string() })
}

/// One evaluated inequality instance, before it becomes a record.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Outcome {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

impl Outcome {
    fn upper(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, gap: rhs - lhs }
    }

    fn lower(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, gap: lhs - rhs }
    }

    fn equality(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, gap: -(lhs - rhs).abs() }
    }

    fn vacuous() -> Self {
        Self { lhs: 0.0, rhs: 0.0, gap: 0.0 }
    }
}

/// Lazily shared quantities for single-operand checks.
pub(crate) struct UnaryCtx<'a> {
    pub a: &'a ComplexMatrix,
    w_tol: f64,
    w: Option<f64>,
    cor1: Option<Cor1Parts>,
}

impl<'a> UnaryCtx<'a> {
    pub fn new(a: &'a ComplexMatrix, w_tol: f64) -> Self {
        Self { a, w_tol, w: None, cor1: None }
    }

    fn w(&mut self) -> Result<f64> {
        if self.w.is_none() {
            self.w = Some(scaled_radius_value(self.a, self.w_tol)?);
        }
        Ok(self.w.unwrap())
    }

    fn cor1(&mut self) -> Result<Cor1Parts> {
        if self.cor1.is_none() {
            self.cor1 = Some(cor1_parts(self.a, self.w_tol)?);
        }
        Ok(self.cor1.unwrap())
    }
}

pub(crate) fn eval_unary(name: &str, ctx: &mut UnaryCtx) -> Result<Outcome> {
    match name {
        "eqv_sandwich" => {
            let w = ctx.w()?;
            let norm = op_norm(ctx.a);
            let gap = (w - 0.5 * norm).min(norm - w);
            Ok(Outcome { lhs: w, rhs: norm, gap })
        }
        "spectral_le_numerical" => {
            let r = spectral_radius_general(ctx.a)?;
            Ok(Outcome::upper(r, ctx.w()?))
        }
        "nilpotent_half_norm" => Ok(Outcome::equality(ctx.w()?, 0.5 * op_norm(ctx.a))),
        "cor1_upper" => {
            let parts = ctx.cor1()?;
            let w4 = ctx.w()?.powi(4);
            let tightest =
                ALPHA_GRID.iter().map(|&a| cor1_value(&parts, a)).fold(f64::INFINITY, f64::min);
            Ok(Outcome::upper(w4, tightest))
        }
        "cor1_cap" => {
            let parts = ctx.cor1()?;
            let loosest =
                ALPHA_GRID.iter().map(|&a| cor1_value(&parts, a)).fold(f64::NEG_INFINITY, f64::max);
            Ok(Outcome::upper(loosest, 0.5 * parts.fourth_norm))
        }
        other => Err(Error::UnknownCheck { name: other.to_string() }),
    }
}

/// Lazily shared quantities for operand pairs (B, C).
pub(crate) struct PairCtx<'a> {
    pub b: &'a ComplexMatrix,
    pub c: &'a ComplexMatrix,
    w_tol: f64,
    w_s: Option<f64>,
    w_b: Option<f64>,
    w_c: Option<f64>,
}

impl<'a> PairCtx<'a> {
    pub fn new(b: &'a ComplexMatrix, c: &'a ComplexMatrix, w_tol: f64) -> Self {
        Self { b, c, w_tol, w_s: None, w_b: None, w_c: None }
    }

    /// w of the off-diagonal operator matrix [[0,B],[C,0]].
    fn w_s(&mut self) -> Result<f64> {
        if self.w_s.is_none() {
            let s = make_offdiag(self.b, self.c)?;
            self.w_s = Some(scaled_radius_value(&s.assembled, self.w_tol)?);
        }
        Ok(self.w_s.unwrap())
    }

    fn w_b(&mut self) -> Result<f64> {
        if self.w_b.is_none() {
            self.w_b = Some(scaled_radius_value(self.b, self.w_tol)?);
        }
        Ok(self.w_b.unwrap())
    }

    fn w_c(&mut self) -> Result<f64> {
        if self.w_c.is_none() {
            self.w_c = Some(scaled_radius_value(self.c, self.w_tol)?);
        }
        Ok(self.w_c.unwrap())
    }
}

pub(crate) fn eval_pair(name: &str, ctx: &mut PairCtx, tol: f64) -> Result<Outcome> {
    let (b, c) = (ctx.b, ctx.c);
    match name {
        "th1_upper" => Ok(Outcome::upper(ctx.w_s()?, bound_th1_upper(b, c)?.value)),
        "th1eqn_upper" => Ok(Outcome::upper(ctx.w_s()?, bound_th1eqn_upper(b, c)?.value)),
        "th5_lower" => Ok(Outcome::lower(ctx.w_s()?, bound_th5_lower(b, c)?.value)),
        "th2_upper" => {
            let w = ctx.w_s()?;
            Ok(Outcome::upper(w * w, bound_th2_upper_sq(b, c, ctx.w_tol)?.value))
        }
        "th6_lower" => {
            let w = ctx.w_s()?;
            Ok(Outcome::lower(w * w, bound_th6_lower_sq(b, c)?.value))
        }
        "th3_lower" => {
            let w = ctx.w_s()?;
            Ok(Outcome::lower(w * w, bound_th3_chain(b, c)?.0))
        }
        "th3_chain" => {
            let (first, second) = bound_th3_chain(b, c)?;
            Ok(Outcome::lower(first, second))
        }
        "th4_lower" => {
            let w = ctx.w_s()?;
            Ok(Outcome::lower(w * w, bound_th4_chain(b, c)?.0))
        }
        "th4_chain" => {
            let (first, second) = bound_th4_chain(b, c)?;
            Ok(Outcome::lower(first, second))
        }
        "th7_upper" => {
            let parts = fourth_power_parts(b, c, ctx.w_tol)?;
            let w4 = ctx.w_s()?.powi(4);
            let tightest =
                ALPHA_GRID.iter().map(|&a| th7_value(&parts, a)).fold(f64::INFINITY, f64::min);
            Ok(Outcome::upper(w4, tightest))
        }
        "lemma21_diag" => {
            let zero = ComplexMatrix::zeros(b.dim());
            let block = make_full(b, &zero, &zero, c)?;
            let lhs = scaled_radius_value(&block.assembled, ctx.w_tol)?;
            let rhs = ctx.w_b()?.max(ctx.w_c()?);
            Ok(Outcome::equality(lhs, rhs))
        }
        "lemma21_pinched" => {
            let block = make_full(b, c, c, b)?;
            let lhs = scaled_radius_value(&block.assembled, ctx.w_tol)?;
            let rhs = scaled_radius_value(&b.add(c)?, ctx.w_tol)?
                .max(scaled_radius_value(&b.sub(c)?, ctx.w_tol)?);
            Ok(Outcome::equality(lhs, rhs))
        }
        "lemma22_norms" => {
            let zero = ComplexMatrix::zeros(b.dim());
            let diag = op_norm(&make_full(b, &zero, &zero, c)?.assembled);
            let anti = op_norm(&make_offdiag(b, c)?.assembled);
            let both = op_norm(b).max(op_norm(c));
            let gap = -(diag - both).abs().max((anti - both).abs());
            Ok(Outcome { lhs: diag, rhs: both, gap })
        }
        "equality_sufficient" => {
            let product_b_cstar = op_norm(&matrix_abs(b)?.matmul(&matrix_abs(&c.adjoint())?)?);
            let product_bstar_c = op_norm(&matrix_abs(&b.adjoint())?.matmul(&matrix_abs(c)?)?);
            if product_b_cstar >= 1e-10 || product_bstar_c >= 1e-10 {
                return Ok(Outcome::vacuous());
            }
            let w_sq = ctx.w_s()?.powi(2);
            let quarter = 0.25 * quarter_max_base(b, c)?;
            Ok(Outcome::equality(w_sq, quarter))
        }
        "equality_necessary" => {
            let w_sq = ctx.w_s()?.powi(2);
            let quarter = 0.25 * quarter_max_base(b, c)?;
            if (w_sq - quarter).abs() > inequality_slack(w_sq, quarter, tol) {
                return Ok(Outcome::vacuous());
            }
            let c_star = c.adjoint();
            let plus = op_norm(&b.add(&c_star)?);
            let minus = op_norm(&b.sub(&c_star)?);
            // Quantitative form of the necessary condition (it is the
            // th-6 inequality rearranged): |n+^2 - n-^2| <= 8 (w^2 - q),
            // so the antecedent margin is a legitimate cushion.
            let cushion = 8.0 * (w_sq - quarter).max(0.0) / (plus + minus).max(1e-6);
            let violation = ((plus - minus).abs() - cushion).max(0.0);
            Ok(Outcome { lhs: plus, rhs: minus, gap: -violation })
        }
        "positive_offdiag" => {
            let rhs = 0.5 * op_norm(&b.add(c)?);
            Ok(Outcome::equality(ctx.w_s()?, rhs))
        }
        "prop31" => {
            let sum = op_norm(&b.add(c)?);
            let diff = op_norm(&b.sub(c)?);
            let max_norm = op_norm(b).max(op_norm(c));
            let gap = (sum - diff).min(0.5 * (sum + diff) - max_norm);
            Ok(Outcome { lhs: diff, rhs: sum, gap })
        }
        "prop33" => {
            let report = bound_prop33(b, c, ctx.w_tol)?;
            let sum = op_norm(&b.add(c)?);
            let diff = op_norm(&b.sub(c)?);
            let lhs = (sum * sum).max(diff * diff);
            Ok(Outcome::upper(lhs, report.value))
        }
        "kittaneh2002" => {
            let lhs = op_norm(&b.add(c)?);
            Ok(Outcome::upper(lhs, kittaneh2002_bound(b, c)?))
        }
        "norm_sum_implication" => {
            let norm_b = op_norm(b);
            let norm_c = op_norm(c);
            let norm_sum = op_norm(&b.add(c)?);
            if norm_sum < norm_b + norm_c - 1e-9 {
                return Ok(Outcome::vacuous());
            }
            let squares = op_norm(&b.matmul(b)?.add(&c.matmul(c)?)?);
            let w_abs = scaled_radius_value(
                &matrix_abs(b)?.matmul(&matrix_abs(c)?)?,
                ctx.w_tol,
            )?;
            let bc = b.matmul(c)?;
            let w_bc = scaled_radius_value(&bc, ctx.w_tol)?;
            let product = norm_b * norm_c;
            let deviation = (squares - (norm_b * norm_b + norm_c * norm_c))
                .abs()
                .max((w_abs - product).abs())
                .max((op_norm(&bc) - product).abs())
                .max((w_bc - product).abs());
            Ok(Outcome { lhs: norm_sum, rhs: norm_b + norm_c, gap: -deviation })
        }
        other => Err(Error::UnknownCheck { name: other.to_string() }),
    }
}

/// max{ |||B|^2 + |C*|^2||, |||B*|^2 + |C|^2|| }.
fn quarter_max_base(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<f64> {
    let b_sq = b.adjoint().matmul(b)?;
    let bs_sq = b.matmul(&b.adjoint())?;
    let c_sq = c.adjoint().matmul(c)?;
    let cs_sq = c.matmul(&c.adjoint())?;
    Ok(op_norm(&b_sq.add(&cs_sq)?).max(op_norm(&bs_sq.add(&c_sq)?)))
}

/// Lazily shared quantities for operand quadruples (A, B, C, D).
pub(crate) struct QuadCtx<'a> {
    pub a: &'a ComplexMatrix,
    pub b: &'a ComplexMatrix,
    pub c: &'a ComplexMatrix,
    pub d: &'a ComplexMatrix,
    w_tol: f64,
    parts: Option<(FourthPowerParts, f64)>,
}

impl<'a> QuadCtx<'a> {
    pub fn new(
        a: &'a ComplexMatrix,
        b: &'a ComplexMatrix,
        c: &'a ComplexMatrix,
        d: &'a ComplexMatrix,
        w_tol: f64,
    ) -> Self {
        Self { a, b, c, d, w_tol, parts: None }
    }

    fn parts(&mut self) -> Result<(FourthPowerParts, f64)> {
        if self.parts.is_none() {
            let parts = fourth_power_parts(self.b, self.c, self.w_tol)?;
            let w_a = scaled_radius_value(self.a, self.w_tol)?;
            let w_d = scaled_radius_value(self.d, self.w_tol)?;
            self.parts = Some((parts, w_a.powi(4).max(w_d.powi(4))));
        }
        Ok(self.parts.unwrap())
    }
}

pub(crate) fn eval_quad(name: &str, ctx: &mut QuadCtx) -> Result<Outcome> {
    match name {
        "th25_upper" => {
            let (parts, w4_diag) = ctx.parts()?;
            let full = make_full(ctx.a, ctx.b, ctx.c, ctx.d)?;
            let w4 = scaled_radius_value(&full.assembled, ctx.w_tol)?.powi(4);
            let tightest = ALPHA_GRID
                .iter()
                .map(|&alpha| th25_value(&parts, w4_diag, alpha))
                .fold(f64::INFINITY, f64::min);
            Ok(Outcome::upper(w4, tightest))
        }
        "th25_le_bk21" => {
            let (parts, w4_diag) = ctx.parts()?;
            let mut worst: Option<Outcome> = None;
            for &alpha in &ALPHA_GRID {
                let th25 = th25_value(&parts, w4_diag, alpha);
                let bk21 = bk21_value(&parts, w4_diag, alpha);
                let outcome = Outcome::upper(th25, bk21);
                if worst.map_or(true, |w| outcome.gap < w.gap) {
                    worst = Some(outcome);
                }
            }
            Ok(worst.expect("alpha grid is nonempty"))
        }
        other => Err(Error::UnknownCheck { name: other.to_string() }),
    }
}
