//! Closed-form uncertainty-principle thresholds.
//!
//! Each function returns the right-hand side of one sufficient condition on
//! the sizes `s = |S|`, `t = |T|` and overlap `delta = |S ∩ T|` of two atom
//! sets. The caller compares integers against the returned real with the
//! comparison each condition prescribes (see [`Comparison`]).
//!
//! | function                      | condition                                               |
//! |-------------------------------|---------------------------------------------------------|
//! | [`donoho_elad_threshold`]     | `s + t > 1/mu`                                          |
//! | [`strong_gap_threshold`]      | `s + t > sqrt(s)/mu` (disjoint sets)                    |
//! | [`overlap_condition`]         | `delta < s - (t-1) t mu^2 / (1 - t mu^2)`               |
//! | [`t_threshold_given_overlap`] | `t < k [sqrt((1 + 1/k) mu^-2 / k + 1/4) - 1]`, `k = s-delta-1` |
//! | [`generic_up_threshold`]      | `s + t > delta + sqrt(s - delta)/mu`                    |
//! | [`weak_gap_threshold`]        | `t < (s - 2 delta m/N) / (1 - 2m/N)`                    |
//! | [`weak_gap_simplified`]       | `t <= s + 2 (s - delta) m/N`                            |

use serde::{Deserialize, Serialize};

use crate::dictionary::{AtomSet, Dictionary};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// How an integer is compared against a threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `value < threshold`
    StrictlyBelow,
    /// `value <= threshold`
    AtMost,
    /// `value > threshold`
    StrictlyAbove,
}

impl Comparison {
    pub fn holds<R: Real>(self, value: R, threshold: R) -> bool {
        match self {
            Self::StrictlyBelow => value < threshold,
            Self::AtMost => value <= threshold,
            Self::StrictlyAbove => value > threshold,
        }
    }
}

fn check_coherence<R: Real>(mu: R) -> Result<()> {
    if !(mu >= R::zero()) || mu > R::one() {
        return Err(Error::InvalidParameter(format!("coherence must lie in [0, 1], got {mu}")));
    }
    Ok(())
}

fn positive_coherence<R: Real>(mu: R) -> Result<R> {
    check_coherence(mu)?;
    if mu == R::zero() {
        return Err(Error::NoFiniteThreshold);
    }
    Ok(mu)
}

fn check_overlap(s: usize, delta: usize) -> Result<()> {
    if delta > s {
        return Err(Error::InvalidParameter(format!("overlap {delta} exceeds s = {s}")));
    }
    Ok(())
}

/// `1/mu`: two distinct representations need `s + t > 1/mu` atoms in total.
pub fn donoho_elad_threshold<R: Real>(mu: R) -> Result<R> {
    Ok(R::one() / positive_coherence(mu)?)
}

/// `sqrt(s)/mu`: a generic signal over `s` atoms has no disjoint
/// representation over `t` atoms unless `s + t` exceeds this.
pub fn strong_gap_threshold<R: Real>(s: usize, mu: R) -> Result<R> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    Ok(R::from_count(s).sqrt() / positive_coherence(mu)?)
}

/// Outcome of [`overlap_condition`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapDecision<R> {
    pub s: usize,
    pub t: usize,
    pub delta: usize,
    pub mu: R,
    /// `s [1 - ((t-1)/s) t mu^2 / (1 - t mu^2)]`.
    pub rhs: R,
    pub comparison: Comparison,
    /// `delta < rhs`: a generic signal over `S` is almost surely not
    /// representable over `T`.
    pub holds: bool,
}

/// Overlap condition for two atom sets. Vacuous (an error) when
/// `t mu^2 >= 1`, where the denominator is nonpositive.
pub fn overlap_condition<R: Real>(s: usize, t: usize, delta: usize, mu: R) -> Result<OverlapDecision<R>> {
    check_coherence(mu)?;
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    if delta > s.min(t) {
        return Err(Error::InvalidParameter(format!("overlap {delta} exceeds min(s, t) = {}", s.min(t))));
    }
    let tf = R::from_count(t);
    let t_mu_sq = tf * mu * mu;
    if t_mu_sq >= R::one() {
        return Err(Error::VacuousCondition { t_mu_sq: t_mu_sq.as_f64() });
    }
    // s [1 - ((t-1)/s) x] = s - (t-1) x, and t - 1 = -1 only when x = 0
    let penalty = if t == 0 { R::zero() } else { (tf - R::one()) * t_mu_sq / (R::one() - t_mu_sq) };
    let rhs = R::from_count(s) - penalty;
    let comparison = Comparison::StrictlyBelow;
    Ok(OverlapDecision {
        s,
        t,
        delta,
        mu,
        rhs,
        comparison,
        holds: comparison.holds(R::from_count(delta), rhs),
    })
}

/// Largest `t` (strictly below the returned value) for which the overlap
/// condition is guaranteed, obtained by reverting its quadratic in `t`.
/// Requires `s - delta >= 2`.
pub fn t_threshold_given_overlap<R: Real>(s: usize, delta: usize, mu: R) -> Result<R> {
    check_overlap(s, delta)?;
    let mu = positive_coherence(mu)?;
    if s - delta < 2 {
        return Err(Error::FormulaInapplicable { s_minus_delta: (s - delta) as i64 });
    }
    let k = R::from_count(s - delta - 1);
    let inv_mu_sq = R::one() / (mu * mu);
    let inner = (R::one() + R::one() / k) * inv_mu_sq / k + R::lit(0.25);
    Ok(k * (inner.sqrt() - R::one()))
}

/// `delta + sqrt(s - delta)/mu`: a generic signal over `S` has no
/// representation over `T` unless `s + t` exceeds this.
pub fn generic_up_threshold<R: Real>(s: usize, delta: usize, mu: R) -> Result<R> {
    check_overlap(s, delta)?;
    let mu = positive_coherence(mu)?;
    Ok(R::from_count(delta) + R::from_count(s - delta).sqrt() / mu)
}

fn check_weak_hypothesis(s: usize, delta: usize, m: usize, n_atoms: usize) -> Result<()> {
    check_overlap(s, delta)?;
    if m == 0 || n_atoms <= 2 * m {
        return Err(Error::HypothesisViolated(format!("requires N > 2m, got m = {m}, N = {n_atoms}")));
    }
    Ok(())
}

/// `(s - 2 delta m/N) (1 - 2m/N)^{-1}`, compared strictly against `t`.
/// Requires `N > 2m`.
pub fn weak_gap_threshold<R: Real>(s: usize, delta: usize, m: usize, n_atoms: usize) -> Result<R> {
    check_weak_hypothesis(s, delta, m, n_atoms)?;
    let a = R::lit(2.0) * R::from_count(m) / R::from_count(n_atoms);
    Ok((R::from_count(s) - R::from_count(delta) * a) / (R::one() - a))
}

/// `s + 2 (s - delta) m/N`, compared weakly against `t`. A further sufficient
/// condition for [`weak_gap_threshold`]; at `delta = 0` it is `(1 + 2/rho) s`
/// with `rho = N/m`.
pub fn weak_gap_simplified<R: Real>(s: usize, delta: usize, m: usize, n_atoms: usize) -> Result<R> {
    check_weak_hypothesis(s, delta, m, n_atoms)?;
    let a = R::lit(2.0) * R::from_count(m) / R::from_count(n_atoms);
    Ok(R::from_count(s) + R::from_count(s - delta) * a)
}

/// Every threshold evaluated at one parameter point.
///
/// A threshold that does not apply at this point (vacuous regime, violated
/// hypothesis, zero coherence) is `None` with the reason recorded in `flags`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapThresholds<R> {
    pub s: usize,
    pub t: usize,
    pub delta: usize,
    pub mu: R,
    pub m: usize,
    pub n_atoms: usize,
    /// `s + t`, the left side of the Donoho-Elad condition.
    pub donoho_elad_lhs: usize,
    pub donoho_elad_rhs: Option<R>,
    pub strong_gap_rhs: Option<R>,
    pub overlap_rhs: Option<R>,
    pub overlap_holds: Option<bool>,
    pub t_threshold: Option<R>,
    pub generic_up_rhs: Option<R>,
    pub weak_gap_rhs: Option<R>,
    pub weak_gap_simplified_rhs: Option<R>,
    pub flags: Vec<String>,
}

impl<R: Real> GapThresholds<R> {
    /// Evaluates every threshold. Fails only for inconsistent set sizes
    /// (`delta > min(s, t)`) or an out-of-range coherence.
    pub fn evaluate(s: usize, t: usize, delta: usize, mu: R, m: usize, n_atoms: usize) -> Result<Self> {
        if delta > s.min(t) {
            return Err(Error::InvalidParameter(format!(
                "overlap {delta} exceeds min(s, t) = {}",
                s.min(t)
            )));
        }
        check_coherence(mu)?;
        let mut flags = Vec::new();
        let mut keep = |name: &str, r: Result<R>| match r {
            Ok(v) => Some(v),
            Err(e) => {
                flags.push(format!("{name}: {e}"));
                None
            }
        };
        let donoho_elad_rhs = keep("donoho_elad", donoho_elad_threshold(mu));
        let strong_gap_rhs = keep("strong_gap", strong_gap_threshold(s, mu));
        let t_threshold = keep("t_threshold", t_threshold_given_overlap(s, delta, mu));
        let generic_up_rhs = keep("generic_up", generic_up_threshold(s, delta, mu));
        let weak_gap_rhs = keep("weak_gap", weak_gap_threshold(s, delta, m, n_atoms));
        let weak_gap_simplified_rhs = keep("weak_gap_simplified", weak_gap_simplified(s, delta, m, n_atoms));
        let (overlap_rhs, overlap_holds) = match overlap_condition(s, t, delta, mu) {
            Ok(d) => (Some(d.rhs), Some(d.holds)),
            Err(e) => {
                flags.push(format!("overlap: {e}"));
                (None, None)
            }
        };
        Ok(Self {
            s,
            t,
            delta,
            mu,
            m,
            n_atoms,
            donoho_elad_lhs: s + t,
            donoho_elad_rhs,
            strong_gap_rhs,
            overlap_rhs,
            overlap_holds,
            t_threshold,
            generic_up_rhs,
            weak_gap_rhs,
            weak_gap_simplified_rhs,
            flags,
        })
    }

    /// Thresholds for two concrete atom sets; the overlap is counted from the
    /// sets themselves.
    pub fn for_sets(dict: &Dictionary<R>, s: &AtomSet, t: &AtomSet) -> Result<Self> {
        Self::evaluate(
            s.len(),
            t.len(),
            s.overlap(t),
            dict.coherence().min(R::one()),
            dict.m(),
            dict.n_atoms(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn donoho_elad_values() {
        assert_eq!(donoho_elad_threshold(0.25).unwrap(), 4.0);
        assert_eq!(donoho_elad_threshold(1.0).unwrap(), 1.0);
        assert!(matches!(donoho_elad_threshold(0.0), Err(Error::NoFiniteThreshold)));
    }

    #[test]
    fn strong_gap_values() {
        assert_eq!(strong_gap_threshold(1, 0.25).unwrap(), donoho_elad_threshold(0.25).unwrap());
        assert_eq!(strong_gap_threshold(16, 0.125).unwrap(), 32.0);
        assert_eq!(strong_gap_threshold(4, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn overlap_values() {
        let d = overlap_condition(4, 4, 0, 0.1f64).unwrap();
        assert!((d.rhs - 3.875).abs() < 1e-12);
        assert!(d.holds);
        assert_eq!(d.comparison, Comparison::StrictlyBelow);
        // orthonormal limit reads delta < s
        let d = overlap_condition(5, 7, 4, 0.0).unwrap();
        assert_eq!(d.rhs, 5.0);
        assert!(d.holds);
        assert!(!overlap_condition(5, 5, 5, 0.0).unwrap().holds);
        // s = t = 16, mu = 1/8: 16 - 15 (1/4) / (3/4) = 11
        assert!((overlap_condition(16, 16, 0, 0.125f64).unwrap().rhs - 11.0).abs() < 1e-12);
    }

    #[test]
    fn overlap_vacuous_regime_is_reported() {
        match overlap_condition(8, 8, 0, 0.5) {
            Err(Error::VacuousCondition { t_mu_sq }) => assert_eq!(t_mu_sq, 2.0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(overlap_condition(3, 2, 3, 0.1).is_err());
    }

    #[test]
    fn t_threshold_values() {
        let v: f64 = t_threshold_given_overlap(2, 0, 0.1).unwrap();
        assert!((v - (200.25f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((v - 13.151).abs() < 1e-3);
        let mu: f64 = 0.3;
        let v = t_threshold_given_overlap(9, 7, mu).unwrap();
        assert!((v - ((2.0 / (mu * mu) + 0.25).sqrt() - 1.0)).abs() < 1e-12);
        assert!(matches!(
            t_threshold_given_overlap(5, 4, 0.1),
            Err(Error::FormulaInapplicable { s_minus_delta: 1 })
        ));
    }

    #[test]
    fn generic_up_values() {
        assert_eq!(generic_up_threshold(9, 0, 0.5).unwrap(), strong_gap_threshold(9, 0.5).unwrap());
        assert_eq!(generic_up_threshold(6, 6, 0.3).unwrap(), 6.0);
        let v: f64 = generic_up_threshold(16, 4, 0.125).unwrap();
        assert!((v - (4.0 + 8.0 * 12f64.sqrt())).abs() < 1e-12);
        assert!((v - 31.71).abs() < 5e-3);
    }

    #[test]
    fn weak_gap_values() {
        let s = 10;
        let m = 16;
        assert!((weak_gap_threshold::<f64>(s, 0, m, 4 * m).unwrap() - 20.0).abs() < 1e-12);
        assert!((weak_gap_threshold::<f64>(s, s, m, 3 * m).unwrap() - 10.0).abs() < 1e-12);
        assert!((weak_gap_simplified::<f64>(s, s, m, 3 * m).unwrap() - 10.0).abs() < 1e-12);
        assert!((weak_gap_simplified::<f64>(8, 0, 32, 128).unwrap() - 12.0).abs() < 1e-12);
        assert!((weak_gap_simplified::<f64>(20, 5, 32, 128).unwrap() - 27.5).abs() < 1e-12);
        assert!(matches!(weak_gap_threshold::<f64>(4, 0, 8, 16), Err(Error::HypothesisViolated(_))));
        assert!(matches!(weak_gap_simplified::<f64>(4, 0, 8, 16), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn table_row_flags_inapplicable_entries() {
        let g = GapThresholds::evaluate(8, 8, 0, 0.5f64, 16, 32).unwrap();
        assert!(g.overlap_rhs.is_none());
        assert!(g.weak_gap_rhs.is_none());
        assert_eq!(g.flags.len(), 3);
        assert_eq!(g.generic_up_rhs, g.strong_gap_rhs);
        assert!(GapThresholds::evaluate(2, 4, 3, 0.5f64, 16, 32).is_err());
    }

    #[test]
    fn for_sets_counts_overlap() {
        let d = Dictionary::<f64>::spikes_sines(16).unwrap();
        let s = AtomSet::new([0, 1, 2, 3], 32).unwrap();
        let t = AtomSet::new([2, 3, 20, 21], 32).unwrap();
        let g = GapThresholds::for_sets(&d, &s, &t).unwrap();
        assert_eq!(g.delta, 2);
        assert_eq!(g.mu, d.coherence());
    }
}
