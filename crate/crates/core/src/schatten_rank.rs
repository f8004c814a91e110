//! Numerical rank and the analytic lower bounds that certify it.
//!
//! Every bound here is computable from data: Schatten norm ratios, the
//! coherence of a set of atoms, and Schur complements of Gram matrices. The numerical
//! rank (count of singular values above `sigma_max * max(rows, cols) * eps`)
//! is the ground truth they are checked against.

use std::fmt;

use nalgebra::Cholesky;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::dictionary::{AtomSet, Dictionary};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{CMatrix, Real};

/// Order `p` of a Schatten norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SchattenOrder<R> {
    Finite(R),
    Infinity,
}

impl<R: Real> SchattenOrder<R> {
    pub fn finite(p: f64) -> Self {
        Self::Finite(R::lit(p))
    }

    fn validate(self) -> Result<Self> {
        match self {
            Self::Finite(p) if !(p >= R::one()) => Err(Error::InvalidSchattenOrder(p.as_f64())),
            other => Ok(other),
        }
    }

    fn as_f64(self) -> f64 {
        match self {
            Self::Finite(p) => p.as_f64(),
            Self::Infinity => f64::INFINITY,
        }
    }
}

impl<R: Real> fmt::Display for SchattenOrder<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

// JSON has no infinity: finite orders are numbers, the spectral order is "inf".
impl<R: Real> Serialize for SchattenOrder<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(p) => p.serialize(s),
            Self::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de, R: Real> Deserialize<'de> for SchattenOrder<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Ok(Self::Finite(R::lit(p))),
            Raw::Str(s) if s == "inf" => Ok(Self::Infinity),
            Raw::Str(s) => Err(de::Error::custom(format!("invalid Schatten order {s:?}"))),
        }
    }
}

/// `l_p` norm of a nonnegative vector, scaled by its maximum to avoid overflow.
fn lp_norm<R: Real>(values: &[R], p: SchattenOrder<R>) -> R {
    let top = values.iter().copied().fold(R::zero(), |m, v| if v > m { v } else { m });
    if top == R::zero() {
        return R::zero();
    }
    match p {
        SchattenOrder::Infinity => top,
        SchattenOrder::Finite(p) => {
            let sum = values.iter().fold(R::zero(), |acc, &v| acc + (v / top).powf(p));
            top * sum.powf(R::one() / p)
        }
    }
}

/// `||sigma(A)||_p`.
pub fn schatten_norm<R: Real>(a: &CMatrix<R>, p: SchattenOrder<R>) -> Result<R> {
    let p = p.validate()?;
    Ok(lp_norm(&linalg::singular_values(a), p))
}

/// Frobenius norm computed entrywise, without a decomposition.
pub fn frobenius_norm<R: Real>(a: &CMatrix<R>) -> R {
    linalg::frobenius_norm_sq(a).sqrt()
}

/// Count of singular values above `tol`; `tol` defaults to
/// `sigma_max * max(rows, cols) * eps`.
pub fn numerical_rank<R: Real>(a: &CMatrix<R>, tol: Option<R>) -> usize {
    linalg::rank_and_tolerance(a, tol).0
}

fn norm_ratio_from_singular_values<R: Real>(sv: &[R], p: SchattenOrder<R>, q: SchattenOrder<R>) -> Result<R> {
    let p = p.validate()?;
    let q = q.validate()?;
    let p_val = match p {
        SchattenOrder::Finite(p) => p,
        SchattenOrder::Infinity => return Err(Error::InvalidNormPair { p: f64::INFINITY, q: q.as_f64() }),
    };
    if let SchattenOrder::Finite(q_val) = q {
        if !(p_val < q_val) {
            return Err(Error::InvalidNormPair { p: p_val.as_f64(), q: q_val.as_f64() });
        }
    }
    let (np, nq) = (lp_norm(sv, p), lp_norm(sv, q));
    if nq == R::zero() {
        return Ok(R::zero());
    }
    let exponent = match q {
        // limit of pq/(q-p) as q -> infinity
        SchattenOrder::Infinity => p_val,
        SchattenOrder::Finite(q_val) => p_val * q_val / (q_val - p_val),
    };
    Ok((np / nq).powf(exponent))
}

/// `(||A||_{S_p} / ||A||_{S_q})^{pq/(q-p)}` for `1 <= p < q <= inf`, a lower
/// bound on the rank. Zero for the zero matrix.
pub fn rank_lb_norm_ratio<R: Real>(a: &CMatrix<R>, p: SchattenOrder<R>, q: SchattenOrder<R>) -> Result<R> {
    norm_ratio_from_singular_values(&linalg::singular_values(a), p, q)
}

/// Checks that `a` is square, Hermitian and positive semidefinite. Returns
/// its eigenvalues in ascending order.
fn psd_eigenvalues<R: Real>(a: &CMatrix<R>) -> Result<Vec<R>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    let ev = linalg::hermitian_eigenvalues(a);
    let scale = ev.iter().fold(R::zero(), |m, v| if v.abs() > m { v.abs() } else { m });
    let defect = linalg::hermitian_defect(a);
    if defect > R::tol(1e-10) * scale.max(R::one()) {
        return Err(Error::InvalidParameter(format!("matrix is not Hermitian (defect {defect:e})")));
    }
    if let Some(&lowest) = ev.first() {
        if lowest < -(R::tol(1e-8) * scale) {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: lowest.as_f64() });
        }
    }
    Ok(ev)
}

/// `trace(A)^2 / ||A||_F^2` for a psd matrix; zero for the zero matrix.
pub fn rank_lb_trace_frobenius<R: Real>(a: &CMatrix<R>) -> Result<R> {
    psd_eigenvalues(a)?;
    let trace = a.diagonal().iter().fold(R::zero(), |acc, z| acc + z.re);
    let fro_sq = linalg::frobenius_norm_sq(a);
    if fro_sq == R::zero() {
        return Ok(R::zero());
    }
    Ok(trace * trace / fro_sq)
}

/// `||A||_F^2 / ||A||^2`.
pub fn rank_lb_frobenius_spectral<R: Real>(a: &CMatrix<R>) -> Result<R> {
    let fro_sq = linalg::frobenius_norm_sq(a);
    if fro_sq == R::zero() {
        return Err(Error::ZeroMatrix);
    }
    let top = linalg::spectral_norm(a);
    Ok(fro_sq / (top * top))
}

/// `r / (1 + (r - 1) mu^2)`: rank lower bound for any `r` atoms of a
/// dictionary with coherence `mu`.
pub fn rank_lb_coherence<R: Real>(r: usize, mu: R) -> Result<R> {
    if r == 0 {
        return Err(Error::InvalidParameter("rank_lb_coherence needs r >= 1".into()));
    }
    if mu < R::zero() || mu > R::one() + R::tol(1e-12) {
        return Err(Error::InvalidParameter(format!("coherence must lie in [0, 1], got {mu}")));
    }
    let r = R::from_count(r);
    Ok(r / (R::one() + (r - R::one()) * mu * mu))
}

/// Relative nonsingularity gate for the leading block of a Schur complement.
pub const LEADING_BLOCK_GATE: f64 = 1e-10;

struct SchurParts<R: Real> {
    complement: CMatrix<R>,
    leading_min_eigenvalue: R,
    scale: R,
}

fn schur_parts<R: Real>(x: &CMatrix<R>, k: usize) -> Result<SchurParts<R>> {
    let ev = psd_eigenvalues(x)?;
    let n = x.nrows();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("split {k} outside 1..={n}")));
    }
    let scale = ev.last().copied().unwrap_or_else(R::zero);
    let a = x.view((0, 0), (k, k)).into_owned();
    let b = x.view((0, k), (k, n - k)).into_owned();
    let c = x.view((k, k), (n - k, n - k)).into_owned();
    let leading_min_eigenvalue = linalg::hermitian_eigenvalues(&a)[0];
    let threshold = R::lit(LEADING_BLOCK_GATE) * scale;
    let singular = || Error::SingularLeadingBlock {
        min_eigenvalue: leading_min_eigenvalue.as_f64(),
        threshold: threshold.as_f64(),
    };
    if !(leading_min_eigenvalue > threshold) {
        return Err(singular());
    }
    let chol = Cholesky::new(a).ok_or_else(singular)?;
    let solved = chol.solve(&b); // A^{-1} B
    let raw = c - b.adjoint() * solved;
    let half = crate::scalar::cx(R::lit(0.5));
    let complement = (&raw + raw.adjoint()) * half;
    Ok(SchurParts { complement, leading_min_eigenvalue, scale })
}

/// `X/A = C - B^* A^{-1} B` for the leading `k x k` block `A` of a psd `X`
/// partitioned as `[[A, B], [B^*, C]]`.
///
/// The leading block must have smallest eigenvalue above
/// [`LEADING_BLOCK_GATE`] times the largest eigenvalue of `X`.
pub fn schur_complement<R: Real>(x: &CMatrix<R>, k: usize) -> Result<CMatrix<R>> {
    Ok(schur_parts(x, k)?.complement)
}

/// Ranks on both sides of `rank(X) = rank(A) + rank(X/A)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchurRankCheck<R> {
    pub n: usize,
    pub k: usize,
    pub rank_x: usize,
    pub rank_leading: usize,
    pub rank_complement: usize,
    /// Cutoff for `X` and `A`.
    pub tolerance: R,
    /// Cutoff for `X/A`, widened by the conditioning of `A`.
    pub tolerance_complement: R,
    pub holds: bool,
}

/// Evaluates the Schur rank identity with a cutoff tied to the scale of `X`.
///
/// `X` and its leading block share the cutoff `n * eps * ||X||`. Forming the
/// complement amplifies rounding by up to `||X|| / lambda_min(A)`, so its
/// cutoff is widened by that factor.
pub fn verify_schur_rank_identity<R: Real>(x: &CMatrix<R>, k: usize) -> Result<SchurRankCheck<R>> {
    let parts = schur_parts(x, k)?;
    let n = x.nrows();
    let tolerance = linalg::default_rank_tolerance(parts.scale, n, n);
    let amplification = R::one() + parts.scale / parts.leading_min_eigenvalue;
    let tolerance_complement = tolerance * amplification;
    let rank_x = numerical_rank(x, Some(tolerance));
    let rank_leading = numerical_rank(&x.view((0, 0), (k, k)).into_owned(), Some(tolerance));
    let rank_complement = numerical_rank(&parts.complement, Some(tolerance_complement));
    Ok(SchurRankCheck {
        n,
        k,
        rank_x,
        rank_leading,
        rank_complement,
        tolerance,
        tolerance_complement,
        holds: rank_x == rank_leading + rank_complement,
    })
}

pub(crate) fn require_independent<R: Real>(dict: &Dictionary<R>, s: &AtomSet) -> Result<Vec<R>> {
    let sv = linalg::singular_values(&dict.subdictionary(s));
    let tol = linalg::default_rank_tolerance(sv.first().copied().unwrap_or_else(R::zero), dict.m(), s.len());
    let rank = linalg::count_above(&sv, tol);
    if rank != s.len() {
        return Err(Error::DependentSet { size: s.len(), rank });
    }
    Ok(sv)
}

fn require_disjoint(s: &AtomSet, v: &AtomSet) -> Result<()> {
    match s.overlap(v) {
        0 => Ok(()),
        overlap => Err(Error::OverlappingSets { overlap }),
    }
}

/// Both sides of `rank(Phi_R) = |S| + rank((I - P_S) Phi_V)`, `R = S ∪ V`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectedRankDecomposition<R> {
    pub s_len: usize,
    pub v_len: usize,
    pub projected_rank: usize,
    pub rank_r: usize,
    pub tolerance_r: R,
    pub tolerance_projected: R,
    pub holds: bool,
}

impl<R> ProjectedRankDecomposition<R> {
    pub fn sum(&self) -> usize {
        self.s_len + self.projected_rank
    }
}

/// Decomposes the rank of `Phi_{S ∪ V}` through the projection onto the
/// orthogonal complement of `range(Phi_S)`.
///
/// `S` must be linearly independent and disjoint from `V`. The projected
/// block's cutoff is tied to the scale of `Phi_R` and widened by the
/// condition number of `Phi_S`, which bounds the error of the computed
/// projector.
pub fn rank_decompose_projected<R: Real>(
    dict: &Dictionary<R>,
    s: &AtomSet,
    v: &AtomSet,
) -> Result<ProjectedRankDecomposition<R>> {
    require_disjoint(s, v)?;
    let s_sv = require_independent(dict, s)?;
    let r_set = s.union(v);
    let phi_r = dict.subdictionary(&r_set);
    let (rank_r, tolerance_r) = linalg::rank_and_tolerance(&phi_r, None);
    let (basis, _) = linalg::range_basis(&dict.subdictionary(s), None);
    let projected = linalg::project_out_matrix(&basis, &dict.subdictionary(v));
    let condition = match (s_sv.first(), s_sv.last()) {
        (Some(&hi), Some(&lo)) => hi / lo,
        _ => R::one(),
    };
    let tolerance_projected = tolerance_r * (R::one() + condition);
    let projected_rank = numerical_rank(&projected, Some(tolerance_projected));
    Ok(ProjectedRankDecomposition {
        s_len: s.len(),
        v_len: v.len(),
        projected_rank,
        rank_r,
        tolerance_r,
        tolerance_projected,
        holds: rank_r == s.len() + projected_rank,
    })
}

/// Ingredients of the projected-block rank bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakRankBound<R> {
    /// `rho^{-1} |V| (1 - ||Phi_S^+||^2 max_{v not in S} ||Phi_S^* phi_v||^2)`,
    /// clamped at zero.
    pub bound: R,
    pub redundancy: R,
    pub v_len: usize,
    /// `||Phi_S^+|| = 1 / sigma_min(Phi_S)`.
    pub pinv_norm: R,
    /// `max_{v not in S} ||Phi_S^* phi_v||^2` over every atom outside `S`.
    pub max_cross_sq: R,
}

/// Largest `||Phi_S^* phi_v||^2` over atoms `v` outside `S`; zero if none.
pub(crate) fn max_cross_correlation_sq<R: Real>(dict: &Dictionary<R>, s: &AtomSet) -> R {
    let outside = s.complement(dict.n_atoms());
    if outside.is_empty() || s.is_empty() {
        return R::zero();
    }
    let cross = dict.subdictionary(s).adjoint() * dict.subdictionary(&outside);
    cross
        .column_iter()
        .map(|c| c.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr()))
        .fold(R::zero(), |m, v| if v > m { v } else { m })
}

pub fn rank_lb_weak_parts<R: Real>(dict: &Dictionary<R>, s: &AtomSet, v: &AtomSet) -> Result<WeakRankBound<R>> {
    require_disjoint(s, v)?;
    let s_sv = require_independent(dict, s)?;
    let pinv_norm = match s_sv.last() {
        Some(&lo) => R::one() / lo,
        None => R::zero(),
    };
    let max_cross_sq = max_cross_correlation_sq(dict, s);
    let redundancy = dict.redundancy();
    let raw = R::from_count(v.len()) / redundancy * (R::one() - pinv_norm * pinv_norm * max_cross_sq);
    Ok(WeakRankBound {
        bound: raw.max(R::zero()),
        redundancy,
        v_len: v.len(),
        pinv_norm,
        max_cross_sq,
    })
}

/// Lower bound on `rank((I - P_S) Phi_V)` from the redundancy, the
/// pseudoinverse norm of `Phi_S`, and the cross-correlation of `S` with the
/// rest of the dictionary.
pub fn rank_lb_weak<R: Real>(dict: &Dictionary<R>, s: &AtomSet, v: &AtomSet) -> Result<R> {
    Ok(rank_lb_weak_parts(dict, s, v)?.bound)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "R: Real", deserialize = "R: Real"))]
pub struct NormRatioBound<R> {
    pub p: SchattenOrder<R>,
    pub q: SchattenOrder<R>,
    pub value: R,
}

/// `(p, q)` pairs tabulated in every [`RankReport`].
pub fn default_norm_pairs<R: Real>() -> Vec<(SchattenOrder<R>, SchattenOrder<R>)> {
    vec![
        (SchattenOrder::finite(1.0), SchattenOrder::finite(2.0)),
        (SchattenOrder::finite(1.0), SchattenOrder::Infinity),
        (SchattenOrder::finite(2.0), SchattenOrder::Infinity),
    ]
}

/// Numerical rank of one matrix next to every analytic lower bound that
/// applies to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "R: Real", deserialize = "R: Real"))]
pub struct RankReport<R> {
    pub rows: usize,
    pub cols: usize,
    pub exact_rank: usize,
    pub tolerance_used: R,
    /// `||A||_{S_1}^2 / ||A||_F^2`.
    pub lb_trace_frobenius: R,
    /// `||A||_F^2 / ||A||^2`.
    pub lb_frobenius_spectral: R,
    pub lb_norm_ratio: Vec<NormRatioBound<R>>,
    /// `r / (1 + (r - 1) mu^2)`, present when the matrix is a subdictionary.
    pub lb_coherence: Option<R>,
    pub singular_values: Vec<R>,
}

impl<R: Real> RankReport<R> {
    pub fn new(a: &CMatrix<R>) -> Self {
        let sv = linalg::singular_values(a);
        let top = sv.first().copied().unwrap_or_else(R::zero);
        let tolerance_used = linalg::default_rank_tolerance(top, a.nrows(), a.ncols());
        let exact_rank = linalg::count_above(&sv, tolerance_used);
        let s1 = lp_norm(&sv, SchattenOrder::finite(1.0));
        let s2 = lp_norm(&sv, SchattenOrder::finite(2.0));
        let (lb_trace_frobenius, lb_frobenius_spectral) = if top == R::zero() {
            (R::zero(), R::zero())
        } else {
            let fro_sq = linalg::frobenius_norm_sq(a);
            (s1 * s1 / (s2 * s2), fro_sq / (top * top))
        };
        let lb_norm_ratio = default_norm_pairs()
            .into_iter()
            .map(|(p, q)| NormRatioBound {
                p,
                q,
                value: norm_ratio_from_singular_values(&sv, p, q).expect("default pairs are valid"),
            })
            .collect();
        Self {
            rows: a.nrows(),
            cols: a.ncols(),
            exact_rank,
            tolerance_used,
            lb_trace_frobenius,
            lb_frobenius_spectral,
            lb_norm_ratio,
            lb_coherence: None,
            singular_values: sv,
        }
    }

    /// Report for `Phi_R`, including the coherence bound.
    pub fn for_subdictionary(dict: &Dictionary<R>, set: &AtomSet) -> Self {
        let mut report = Self::new(&dict.subdictionary(set));
        if !set.is_empty() {
            report.lb_coherence = rank_lb_coherence(set.len(), dict.coherence().min(R::one())).ok();
        }
        report
    }

    /// Every lower bound in the report.
    pub fn lower_bounds(&self) -> Vec<R> {
        let mut all = vec![self.lb_trace_frobenius, self.lb_frobenius_spectral];
        all.extend(self.lb_norm_ratio.iter().map(|b| b.value));
        all.extend(self.lb_coherence);
        all
    }

    /// Whether every bound is at most `exact_rank + slack`.
    pub fn bounds_dominated(&self, slack: R) -> bool {
        let cap = R::from_count(self.exact_rank) + slack;
        self.lower_bounds().into_iter().all(|b| b <= cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use nalgebra::Complex;

    fn diag(values: &[f64]) -> CMatrix<f64> {
        let n = values.len();
        CMatrix::from_fn(n, n, |i, j| if i == j { cx(values[i]) } else { cx(0.0) })
    }

    fn one() -> SchattenOrder<f64> {
        SchattenOrder::finite(1.0)
    }
    fn two() -> SchattenOrder<f64> {
        SchattenOrder::finite(2.0)
    }
    const INF: SchattenOrder<f64> = SchattenOrder::Infinity;

    #[test]
    fn identity_norms() {
        let i = CMatrix::<f64>::identity(6, 6);
        assert!((schatten_norm(&i, one()).unwrap() - 6.0).abs() < 1e-12);
        assert!((schatten_norm(&i, two()).unwrap() - 6f64.sqrt()).abs() < 1e-12);
        assert!((schatten_norm(&i, INF).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(schatten_norm(&i, SchattenOrder::finite(0.5)), Err(Error::InvalidSchattenOrder(_))));
    }

    #[test]
    fn identity_bounds_are_tight() {
        let i = CMatrix::<f64>::identity(5, 5);
        assert_eq!(numerical_rank(&i, None), 5);
        assert!((rank_lb_norm_ratio(&i, one(), two()).unwrap() - 5.0).abs() < 1e-10);
        assert!((rank_lb_trace_frobenius(&i).unwrap() - 5.0).abs() < 1e-12);
        assert!((rank_lb_frobenius_spectral(&i).unwrap() - 5.0).abs() < 1e-10);
    }

    #[test]
    fn rank_one_bounds() {
        let u = CMatrix::from_column_slice(3, 1, &[cx(1.0), Complex::new(0.0, 2.0), cx(-1.0)]);
        let v = CMatrix::from_column_slice(4, 1, &[cx(0.5), cx(1.0), cx(0.0), Complex::new(1.0, 1.0)]);
        let a = &u * v.adjoint();
        assert_eq!(numerical_rank(&a, None), 1);
        for (p, q) in default_norm_pairs::<f64>() {
            assert!((rank_lb_norm_ratio(&a, p, q).unwrap() - 1.0).abs() < 1e-10);
        }
        assert!((rank_lb_frobenius_spectral(&a).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn diagonal_examples() {
        let d = diag(&[1.0, 0.5]);
        let lb = rank_lb_norm_ratio(&d, one(), INF).unwrap();
        assert!((lb - 1.5).abs() < 1e-12);
        assert!(lb <= 2.0);
        assert!((rank_lb_trace_frobenius(&diag(&[1.0, 1.0, 0.0])).unwrap() - 2.0).abs() < 1e-12);
        assert!((rank_lb_frobenius_spectral(&diag(&[2.0, 1.0])).unwrap() - 1.25).abs() < 1e-12);
    }

    #[test]
    fn invalid_inputs() {
        let d = diag(&[1.0, -1.0]);
        assert!(matches!(rank_lb_trace_frobenius(&d), Err(Error::NotPositiveSemidefinite { .. })));
        assert!(matches!(rank_lb_frobenius_spectral(&diag(&[0.0, 0.0])), Err(Error::ZeroMatrix)));
        assert!(matches!(rank_lb_norm_ratio(&d, two(), one()), Err(Error::InvalidNormPair { .. })));
        assert!(matches!(rank_lb_norm_ratio(&d, INF, INF), Err(Error::InvalidNormPair { .. })));
    }

    #[test]
    fn coherence_bound_values() {
        assert_eq!(rank_lb_coherence(1, 0.7).unwrap(), 1.0);
        assert_eq!(rank_lb_coherence(9, 0.0).unwrap(), 9.0);
        let b: f64 = rank_lb_coherence(16, 0.25).unwrap();
        assert!((b - 16.0 / (1.0 + 15.0 / 16.0)).abs() < 1e-12);
        assert!((b - 8.258).abs() < 1e-3);
        assert!(rank_lb_coherence::<f64>(0, 0.1).is_err());
        assert!(rank_lb_coherence(3, 1.5).is_err());
    }

    #[test]
    fn schur_of_block_diagonal_is_trailing_block() {
        let x = diag(&[2.0, 3.0, 5.0, 7.0]);
        let c = schur_complement(&x, 2).unwrap();
        assert_eq!(c, diag(&[5.0, 7.0]));
    }

    #[test]
    fn schur_two_by_two_closed_form() {
        let c = Complex::new(0.3f64, -0.4);
        let x = CMatrix::from_row_slice(2, 2, &[cx(1.0), c, c.conj(), cx(1.0)]);
        let s = schur_complement(&x, 1).unwrap();
        assert!((s[(0, 0)].re - (1.0 - c.norm_sqr())).abs() < 1e-15);
    }

    #[test]
    fn schur_singular_leading_block() {
        let x = diag(&[0.0, 1.0]);
        match schur_complement(&x, 1) {
            Err(Error::SingularLeadingBlock { min_eigenvalue, .. }) => assert_eq!(min_eigenvalue, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schur_identity_on_identity() {
        let i = CMatrix::<f64>::identity(5, 5);
        for k in 1..=5 {
            let check = verify_schur_rank_identity(&i, k).unwrap();
            assert_eq!((check.rank_x, check.rank_leading, check.rank_complement), (5, k, 5 - k));
            assert!(check.holds);
        }
    }

    #[test]
    fn schatten_order_json() {
        let v = serde_json::to_string(&vec![SchattenOrder::finite(2.0), SchattenOrder::<f64>::Infinity]).unwrap();
        assert_eq!(v, "[2.0,\"inf\"]");
        let back: Vec<SchattenOrder<f64>> = serde_json::from_str(&v).unwrap();
        assert_eq!(back[1], SchattenOrder::Infinity);
    }
}
