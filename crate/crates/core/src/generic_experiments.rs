//! Monte Carlo checks of generic-signal representability.
//!
//! A generic signal is `u = Phi_S x` with `S` linearly independent and `x`
//! standard complex Gaussian. Whether `u` also lies in `range(Phi_T)` is
//! decided numerically from the relative least-squares residual, with a
//! two-threshold policy that leaves a band of inconclusive values between a
//! "representable" ceiling and a "not representable" floor.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dictionary::{AtomSet, Dictionary, Provenance};
use crate::error::{Error, Result};
use crate::gap_bounds;
use crate::linalg;
use crate::random_sets::{sample_from, sample_subset};
use crate::rng;
use crate::scalar::{CMatrix, CVector, Real};
use crate::schatten_rank::{require_independent, RankReport};

/// Redraw cap when sampling a linearly independent `S` or a well-conditioned `T`.
pub const REDRAW_CAP: usize = 100;
/// `T` is redrawn when the effective condition number of `Phi_T` exceeds this.
pub const MAX_CONDITION_NUMBER: f64 = 1e6;

/// Residual thresholds. Residuals at or below `ceiling` count as
/// representable, residuals above `floor` as not representable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualPolicy {
    pub ceiling: f64,
    pub floor: f64,
}

impl Default for ResidualPolicy {
    fn default() -> Self {
        Self { ceiling: 1e-10, floor: 1e-6 }
    }
}

impl ResidualPolicy {
    pub fn new(ceiling: f64, floor: f64) -> Result<Self> {
        if !(ceiling >= 0.0 && floor > ceiling && floor.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "residual thresholds need 0 <= ceiling < floor, got ceiling = {ceiling}, floor = {floor}"
            )));
        }
        Ok(Self { ceiling, floor })
    }

    pub fn classify(&self, residual: f64) -> Verdict {
        if residual > self.floor {
            Verdict::NotRepresentable
        } else if residual <= self.ceiling {
            Verdict::Representable
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NotRepresentable,
    Representable,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NotRepresentable => "NOT_REPRESENTABLE",
            Self::Representable => "REPRESENTABLE",
            Self::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// `u = Phi_S x` together with its natural representation `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericSignal<R: Real> {
    pub support: AtomSet,
    pub coefficients: CVector<R>,
    pub signal: CVector<R>,
    pub rng_seed: u64,
}

fn signal_over<R: Real>(phi_s: &CMatrix<R>, support: &AtomSet, seed: u64) -> GenericSignal<R> {
    let coefficients = rng::complex_gaussian_vector(&mut rng::rng_from_seed(seed), support.len());
    GenericSignal { support: support.clone(), signal: phi_s * &coefficients, coefficients, rng_seed: seed }
}

/// Draws `u = Phi_S x` with i.i.d. standard complex Gaussian `x`.
pub fn draw_generic_signal<R: Real>(dict: &Dictionary<R>, s: &AtomSet, seed: u64) -> Result<GenericSignal<R>> {
    if s.is_empty() {
        return Err(Error::InvalidAtomSet("generic signal needs a nonempty support".into()));
    }
    require_independent(dict, s)?;
    Ok(signal_over(&dict.subdictionary(s), s, seed))
}

/// `|T| < rank(Phi_{S ∪ T})` with the full rank report of `Phi_{S ∪ T}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "R: Real", deserialize = "R: Real"))]
pub struct RankCondition<R> {
    pub holds: bool,
    pub t_len: usize,
    pub rank_r: usize,
    pub report: RankReport<R>,
}

pub fn rank_condition<R: Real>(dict: &Dictionary<R>, s: &AtomSet, t: &AtomSet) -> Result<RankCondition<R>> {
    require_independent(dict, s)?;
    let report = RankReport::for_subdictionary(dict, &s.union(t));
    Ok(RankCondition { holds: t.len() < report.exact_rank, t_len: t.len(), rank_r: report.exact_rank, report })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentabilityVerdict {
    /// Known only when the signal's support is known.
    pub rank_condition_holds: Option<bool>,
    /// `||u - P_T u|| / ||u||`.
    pub residual: f64,
    pub verdict: Verdict,
}

/// Orthonormal basis of `range(Phi_T)`.
fn range_of<R: Real>(dict: &Dictionary<R>, t: &AtomSet) -> CMatrix<R> {
    linalg::range_basis(&dict.subdictionary(t), None).0
}

fn relative_residual<R: Real>(basis: &CMatrix<R>, u: &CVector<R>) -> Result<f64> {
    let norm = linalg::vector_norm(u);
    if norm == R::zero() {
        return Err(Error::ZeroSignal);
    }
    Ok((linalg::vector_norm(&linalg::project_out(basis, u)) / norm).as_f64())
}

/// Classifies `u` against `range(Phi_T)` by its relative residual.
pub fn test_representability<R: Real>(
    dict: &Dictionary<R>,
    t: &AtomSet,
    u: &CVector<R>,
    policy: &ResidualPolicy,
) -> Result<RepresentabilityVerdict> {
    if t.is_empty() {
        return Err(Error::InvalidAtomSet("representability needs a nonempty T".into()));
    }
    if u.len() != dict.m() {
        return Err(Error::InvalidParameter(format!("signal has length {}, expected {}", u.len(), dict.m())));
    }
    let residual = relative_residual(&range_of(dict, t), u)?;
    Ok(RepresentabilityVerdict { rank_condition_holds: None, residual, verdict: policy.classify(residual) })
}

/// [`test_representability`] for a generic signal, with the rank condition filled in.
pub fn assess_generic_signal<R: Real>(
    dict: &Dictionary<R>,
    signal: &GenericSignal<R>,
    t: &AtomSet,
    policy: &ResidualPolicy,
) -> Result<RepresentabilityVerdict> {
    let mut verdict = test_representability(dict, t, &signal.signal, policy)?;
    verdict.rank_condition_holds = Some(rank_condition(dict, &signal.support, t)?.holds);
    Ok(verdict)
}

/// Spike and sine positions of the Dirac comb in `spikes_sines(m)`, for
/// perfect-square `m`: spikes at multiples of `sqrt(m)` and the sines of the
/// same frequencies (atom indices offset by `m`).
pub fn dirac_comb_sets(m: usize) -> Result<(AtomSet, AtomSet)> {
    let root = (1..=m).find(|r| r * r >= m).unwrap_or(0);
    if m < 4 || root * root != m {
        return Err(Error::InvalidParameter(format!("Dirac comb needs a perfect square m >= 4, got {m}")));
    }
    let spikes = AtomSet::new((0..root).map(|k| k * root), 2 * m)?;
    let sines = AtomSet::new((0..root).map(|k| m + k * root), 2 * m)?;
    Ok((spikes, sines))
}

/// The comb itself: equal coefficients on the comb spikes.
pub fn dirac_comb_signal<R: Real>(m: usize) -> Result<CVector<R>> {
    let (spikes, _) = dirac_comb_sets(m)?;
    let mut u = CVector::<R>::zeros(m);
    for j in spikes.iter() {
        u[j] = crate::scalar::cx(R::one());
    }
    Ok(u)
}

/// One `(S, T)` pair of an experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub pair: usize,
    pub seed: u64,
    pub s_set: AtomSet,
    pub t_set: AtomSet,
    pub overlap: usize,
    pub rank_r: usize,
    pub rank_t: usize,
    /// `|T| < rank(Phi_{S ∪ T})`.
    pub rank_condition: bool,
    /// `rank(Phi_{S ∪ T}) = rank(Phi_T)`, i.e. `range(Phi_S)` lies in `range(Phi_T)`.
    pub containment: bool,
    pub condition_number_t: f64,
    /// Whether the coherence-based overlap condition rules out a
    /// representation; `None` when it is vacuous or not evaluated.
    pub predicted_unrepresentable: Option<bool>,
    /// `t` below the weak-incoherence threshold; `None` unless the dictionary
    /// is a tight frame with `N > 2m`. Holds only with high probability.
    pub weak_gap_predicted: Option<bool>,
    pub s_redraws: usize,
    pub t_redraws: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub pair: usize,
    pub trial: usize,
    pub seed: u64,
    pub residual: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub pairs: usize,
    pub trials: usize,
    pub not_representable: usize,
    pub representable: usize,
    pub inconclusive: usize,
    /// Rank condition true but residual at or below the ceiling.
    pub soundness_violations: usize,
    /// Range containment but residual above the ceiling.
    pub completeness_violations: usize,
    /// Overlap condition satisfied but a representable verdict.
    pub prediction_violations: usize,
    pub vacuous_pairs: usize,
    /// Pairs where `|T| >= rank(Phi_{S ∪ T})`.
    pub rank_condition_failures: usize,
    /// Weak-gap prediction satisfied but a representable verdict. Not part
    /// of `consistent`: that prediction is probabilistic.
    pub weak_gap_violations: usize,
    pub t_redraws: usize,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "snake_case")]
pub enum ExperimentParameters {
    Equivalence {
        s_set: AtomSet,
        t_set: AtomSet,
        trials: usize,
        master_seed: u64,
    },
    Gap {
        s: usize,
        t: usize,
        delta: usize,
        pairs: usize,
        trials_per_pair: usize,
        master_seed: u64,
        /// Right-hand side of the overlap condition at the dictionary's coherence.
        overlap_rhs: Option<f64>,
        /// Weak-incoherence threshold on `t`, for tight frames with `N > 2m`.
        weak_gap_rhs: Option<f64>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub dictionary: Provenance,
    pub coherence: f64,
    pub policy: ResidualPolicy,
    pub parameters: ExperimentParameters,
    pub notes: Vec<String>,
    pub pairs: Vec<PairRecord>,
    pub trials: Vec<TrialRecord>,
    pub summary: ExperimentSummary,
}

const POLICY_NOTE: &str = "membership in range(Phi_T) is decided by a residual threshold policy chosen for \
                           this tool (ceiling/floor above); it is a numerical surrogate, not an exact test";

/// Column order of [`ExperimentReport::write_csv`].
pub const EXPERIMENT_CSV_COLUMNS: [&str; 11] = [
    "pair",
    "trial",
    "seed",
    "s",
    "t",
    "overlap",
    "residual",
    "verdict",
    "rank_condition",
    "containment",
    "predicted_unrepresentable",
];

impl ExperimentReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(EXPERIMENT_CSV_COLUMNS)?;
        for t in &self.trials {
            let p = &self.pairs[t.pair];
            w.write_record([
                t.pair.to_string(),
                t.trial.to_string(),
                t.seed.to_string(),
                p.s_set.len().to_string(),
                p.t_set.len().to_string(),
                p.overlap.to_string(),
                t.residual.to_string(),
                t.verdict.as_str().to_string(),
                p.rank_condition.to_string(),
                p.containment.to_string(),
                p.predicted_unrepresentable.map(|b| b.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    fn summarize(&mut self) {
        let mut s = ExperimentSummary {
            pairs: self.pairs.len(),
            trials: self.trials.len(),
            vacuous_pairs: self.pairs.iter().filter(|p| p.predicted_unrepresentable.is_none()).count(),
            rank_condition_failures: self.pairs.iter().filter(|p| !p.rank_condition).count(),
            t_redraws: self.pairs.iter().map(|p| p.t_redraws).sum(),
            ..Default::default()
        };
        for t in &self.trials {
            let p = &self.pairs[t.pair];
            match t.verdict {
                Verdict::NotRepresentable => s.not_representable += 1,
                Verdict::Representable => s.representable += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
            }
            let at_most_ceiling = t.residual <= self.policy.ceiling;
            s.soundness_violations += (p.rank_condition && at_most_ceiling) as usize;
            s.completeness_violations += (p.containment && !at_most_ceiling) as usize;
            s.prediction_violations +=
                (p.predicted_unrepresentable == Some(true) && t.verdict == Verdict::Representable) as usize;
            s.weak_gap_violations +=
                (p.weak_gap_predicted == Some(true) && t.verdict == Verdict::Representable) as usize;
        }
        s.consistent = s.inconclusive == 0
            && s.soundness_violations == 0
            && s.completeness_violations == 0
            && s.prediction_violations == 0;
        self.summary = s;
    }
}

/// Everything about a fixed `(S, T)` pair that the trials share.
struct PreparedPair<R: Real> {
    phi_s: CMatrix<R>,
    range_t: CMatrix<R>,
    record: PairRecord,
}

fn prepare_pair<R: Real>(
    dict: &Dictionary<R>,
    pair: usize,
    seed: u64,
    s_set: AtomSet,
    t_set: AtomSet,
    predicted_unrepresentable: Option<bool>,
) -> PreparedPair<R> {
    let phi_t = dict.subdictionary(&t_set);
    let rank_t = if t_set.is_empty() { 0 } else { linalg::rank_and_tolerance(&phi_t, None).0 };
    let rank_r = linalg::rank_and_tolerance(&dict.subdictionary(&s_set.union(&t_set)), None).0;
    let record = PairRecord {
        pair,
        seed,
        overlap: s_set.overlap(&t_set),
        rank_r,
        rank_t,
        rank_condition: t_set.len() < rank_r,
        containment: rank_r == rank_t,
        condition_number_t: linalg::effective_condition_number(&phi_t).as_f64(),
        predicted_unrepresentable,
        weak_gap_predicted: None,
        s_redraws: 0,
        t_redraws: 0,
        s_set,
        t_set,
    };
    PreparedPair { phi_s: dict.subdictionary(&record.s_set), range_t: range_of(dict, &record.t_set), record }
}

fn run_trials<R: Real>(
    prepared: &PreparedPair<R>,
    trials: usize,
    master_seed: u64,
    policy: &ResidualPolicy,
) -> Result<Vec<TrialRecord>> {
    let pair = prepared.record.pair;
    (0..trials)
        .map(|trial| {
            let seed = rng::derive_seed(master_seed, &[pair as u64, trial as u64]);
            let u = signal_over(&prepared.phi_s, &prepared.record.s_set, seed);
            let residual = relative_residual(&prepared.range_t, &u.signal)?;
            Ok(TrialRecord { pair, trial, seed, residual, verdict: policy.classify(residual) })
        })
        .collect()
}

/// Draws `trials` generic signals over the fixed set `S` and classifies each
/// against `range(Phi_T)`, next to the rank condition and the containment
/// check for the pair.
pub fn equivalence_experiment<R: Real>(
    dict: &Dictionary<R>,
    s: &AtomSet,
    t: &AtomSet,
    trials: usize,
    master_seed: u64,
    policy: &ResidualPolicy,
) -> Result<ExperimentReport> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::InvalidAtomSet("equivalence experiment needs nonempty S and T".into()));
    }
    for set in [s, t] {
        AtomSet::new(set.iter(), dict.n_atoms())?;
    }
    require_independent(dict, s)?;
    let prepared = prepare_pair(dict, 0, master_seed, s.clone(), t.clone(), None);
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let seed = rng::derive_seed(master_seed, &[0, trial as u64]);
            let u = signal_over(&prepared.phi_s, s, seed);
            let residual = relative_residual(&prepared.range_t, &u.signal)?;
            Ok(TrialRecord { pair: 0, trial, seed, residual, verdict: policy.classify(residual) })
        })
        .collect::<Result<_>>()?;
    let mut report = ExperimentReport {
        dictionary: dict.provenance().clone(),
        coherence: dict.coherence().as_f64(),
        policy: *policy,
        parameters: ExperimentParameters::Equivalence {
            s_set: s.clone(),
            t_set: t.clone(),
            trials,
            master_seed,
        },
        notes: vec![POLICY_NOTE.into()],
        pairs: vec![prepared.record],
        trials: records,
        summary: ExperimentSummary::default(),
    };
    report.summarize();
    Ok(report)
}

/// Parameters of [`gap_experiment`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapExperimentConfig {
    pub s: usize,
    pub t: usize,
    pub delta: usize,
    pub pairs: usize,
    pub trials_per_pair: usize,
    pub master_seed: u64,
}

/// Draws `S` uniformly (redrawing until independent) and then `T` as
/// `delta` elements of `S` plus `t - delta` elements outside it, redrawing
/// `T` while `Phi_T` is ill-conditioned.
fn sample_pair<R: Real, G: Rng + ?Sized>(
    dict: &Dictionary<R>,
    g: &mut G,
    config: &GapExperimentConfig,
) -> Result<(AtomSet, AtomSet, usize, usize)> {
    let n = dict.n_atoms();
    let cap_error = |what| Error::RedrawCapExceeded {
        what,
        dictionary: dict.provenance().to_string(),
        s: config.s,
        attempts: REDRAW_CAP,
    };
    let mut s_set = None;
    let mut s_redraws = 0;
    for attempt in 0..REDRAW_CAP {
        let candidate = sample_subset(g, n, config.s)?;
        if require_independent(dict, &candidate).is_ok() {
            s_set = Some(candidate);
            s_redraws = attempt;
            break;
        }
    }
    let s_set = s_set.ok_or_else(|| cap_error("a linearly independent S"))?;
    let outside = s_set.complement(n);
    for t_redraws in 0..REDRAW_CAP {
        let mut t_idx = sample_from(g, &s_set, config.delta)?;
        t_idx.extend(sample_from(g, &outside, config.t - config.delta)?);
        let t_set = AtomSet::new(t_idx, n)?;
        let cond = linalg::effective_condition_number(&dict.subdictionary(&t_set)).as_f64();
        if cond <= MAX_CONDITION_NUMBER {
            return Ok((s_set, t_set, s_redraws, t_redraws));
        }
    }
    Err(cap_error("a well-conditioned T"))
}

/// Samples random pairs with `|S| = s`, `|T| = t`, `|S ∩ T| = delta`, runs
/// generic-signal trials on each and tallies the verdicts against the
/// coherence-based overlap condition.
pub fn gap_experiment<R: Real>(
    dict: &Dictionary<R>,
    config: &GapExperimentConfig,
    policy: &ResidualPolicy,
) -> Result<ExperimentReport> {
    let GapExperimentConfig { s, t, delta, .. } = *config;
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    if delta > s.min(t) {
        return Err(Error::InvalidParameter(format!("overlap {delta} exceeds min(s, t) = {}", s.min(t))));
    }
    if s + t - delta > dict.n_atoms() {
        return Err(Error::InvalidParameter(format!(
            "s + t - delta = {} exceeds N = {}",
            s + t - delta,
            dict.n_atoms()
        )));
    }
    let mut notes = vec![POLICY_NOTE.to_string()];
    let overlap_rhs = match gap_bounds::overlap_condition(s, t, delta, dict.coherence()) {
        Ok(d) => Some(d),
        Err(Error::VacuousCondition { t_mu_sq }) => {
            notes.push(format!("overlap condition vacuous: t mu^2 = {t_mu_sq} >= 1"));
            None
        }
        Err(e) => return Err(e),
    };
    let predicted = overlap_rhs.as_ref().map(|d| d.holds);
    let weak_gap_rhs = if dict.is_tight_frame() {
        gap_bounds::weak_gap_threshold::<f64>(s, delta, dict.m(), dict.n_atoms()).ok()
    } else {
        None
    };
    let weak_predicted = weak_gap_rhs.map(|rhs| (t as f64) < rhs);
    let mut report = ExperimentReport {
        dictionary: dict.provenance().clone(),
        coherence: dict.coherence().as_f64(),
        policy: *policy,
        parameters: ExperimentParameters::Gap {
            s,
            t,
            delta,
            pairs: config.pairs,
            trials_per_pair: config.trials_per_pair,
            master_seed: config.master_seed,
            overlap_rhs: overlap_rhs.map(|d| d.rhs.as_f64()),
            weak_gap_rhs,
        },
        notes,
        pairs: Vec::new(),
        trials: Vec::new(),
        summary: ExperimentSummary::default(),
    };
    if t == 0 {
        report.notes.push("t = 0: no set to represent over, no trials run".into());
        report.summarize();
        return Ok(report);
    }

    let outcomes: Vec<(PairRecord, Vec<TrialRecord>)> = (0..config.pairs)
        .into_par_iter()
        .map(|pair| {
            let seed = rng::derive_seed(config.master_seed, &[pair as u64]);
            let (s_set, t_set, s_redraws, t_redraws) = sample_pair(dict, &mut rng::rng_from_seed(seed), config)?;
            let mut prepared = prepare_pair(dict, pair, seed, s_set, t_set, predicted);
            prepared.record.s_redraws = s_redraws;
            prepared.record.t_redraws = t_redraws;
            prepared.record.weak_gap_predicted = weak_predicted;
            let trials = run_trials(&prepared, config.trials_per_pair, config.master_seed, policy)?;
            Ok((prepared.record, trials))
        })
        .collect::<Result<_>>()?;
    for (record, trials) in outcomes {
        if record.t_redraws > 0 {
            report.notes.push(format!(
                "pair {}: T redrawn {} time(s) for condition number above {MAX_CONDITION_NUMBER:e}",
                record.pair, record.t_redraws
            ));
        }
        report.pairs.push(record);
        report.trials.extend(trials);
    }
    report.summarize();
    Ok(report)
}

/// Every support of the smallest size `k <= max_size` over which `u` is
/// representable, by exhaustive enumeration. Empty when there is none.
pub fn sparsest_supports<R: Real>(
    dict: &Dictionary<R>,
    u: &CVector<R>,
    max_size: usize,
    policy: &ResidualPolicy,
) -> Result<Vec<AtomSet>> {
    for k in 1..=max_size.min(dict.n_atoms()) {
        let mut found = Vec::new();
        for t in AtomSet::all_of_size(dict.n_atoms(), k) {
            if test_representability(dict, &t, u, policy)?.verdict == Verdict::Representable {
                found.push(t);
            }
        }
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Ok(Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn policy() -> ResidualPolicy {
        ResidualPolicy::default()
    }

    #[test]
    fn policy_bands() {
        let p = policy();
        assert_eq!(p.classify(0.0), Verdict::Representable);
        assert_eq!(p.classify(1e-10), Verdict::Representable);
        assert_eq!(p.classify(1e-8), Verdict::Inconclusive);
        assert_eq!(p.classify(1e-6), Verdict::Inconclusive);
        assert_eq!(p.classify(2e-6), Verdict::NotRepresentable);
        assert!(ResidualPolicy::new(1e-6, 1e-10).is_err());
        assert!(ResidualPolicy::new(1e-6, 1e-6).is_err());
    }

    #[test]
    fn signal_is_deterministic_and_consistent() {
        let d = Dictionary::<f64>::random_unit_norm(8, 20, 1).unwrap();
        let s = AtomSet::new([1, 5, 9], 20).unwrap();
        let a = draw_generic_signal(&d, &s, 42).unwrap();
        assert_eq!(a, draw_generic_signal(&d, &s, 42).unwrap());
        let direct = d.subdictionary(&s) * &a.coefficients;
        assert!((&direct - &a.signal).norm() <= 1e-12 * a.signal.norm());
    }

    #[test]
    fn single_spike_signal() {
        let d = Dictionary::<f64>::spikes_sines(4).unwrap();
        let u = draw_generic_signal(&d, &AtomSet::new([2], 8).unwrap(), 7).unwrap();
        for i in [0, 1, 3] {
            assert_eq!(u.signal[i], cx(0.0));
        }
        assert_eq!(u.signal[2], u.coefficients[0]);
    }

    #[test]
    fn dependent_support_is_rejected() {
        let d = Dictionary::<f64>::spikes_sines(4).unwrap();
        assert!(matches!(
            draw_generic_signal(&d, &AtomSet::range(0..5), 0),
            Err(Error::DependentSet { .. })
        ));
    }

    #[test]
    fn rank_condition_trivial_cases() {
        let d = Dictionary::<f64>::identity(6).unwrap();
        let s = AtomSet::new([0, 1], 6).unwrap();
        let same = rank_condition(&d, &s, &s).unwrap();
        assert!(!same.holds);
        assert_eq!(same.rank_r, 2);
        let t = AtomSet::new([3, 4, 5], 6).unwrap();
        let disjoint = rank_condition(&d, &s, &t).unwrap();
        assert!(disjoint.holds);
        assert_eq!(disjoint.rank_r, 5);
    }

    #[test]
    fn dirac_comb_pair_is_not_contained() {
        // The comb is the only common direction of the two ranges.
        let d = Dictionary::<f64>::spikes_sines(16).unwrap();
        let (spikes, sines) = dirac_comb_sets(16).unwrap();
        assert_eq!(spikes.indices(), &[0, 4, 8, 12]);
        assert_eq!(sines.indices(), &[16, 20, 24, 28]);
        let rc = rank_condition(&d, &spikes, &sines).unwrap();
        assert_eq!(rc.rank_r, 7);
        assert!(rc.holds);

        let comb = test_representability(&d, &sines, &dirac_comb_signal::<f64>(16).unwrap(), &policy()).unwrap();
        assert!(comb.residual <= 1e-10, "{}", comb.residual);
        assert_eq!(comb.verdict, Verdict::Representable);

        let generic = draw_generic_signal(&d, &spikes, 3).unwrap();
        let v = assess_generic_signal(&d, &generic, &sines, &policy()).unwrap();
        assert_eq!(v.rank_condition_holds, Some(true));
        assert_eq!(v.verdict, Verdict::NotRepresentable);
    }

    #[test]
    fn superset_is_representable() {
        let d = Dictionary::<f64>::random_unit_norm(8, 20, 4).unwrap();
        let s = AtomSet::new([2, 7], 20).unwrap();
        let t = AtomSet::new([2, 3, 7, 11], 20).unwrap();
        let u = draw_generic_signal(&d, &s, 0).unwrap();
        let v = assess_generic_signal(&d, &u, &t, &policy()).unwrap();
        assert!(v.residual <= 1e-10);
        assert_eq!(v.verdict, Verdict::Representable);
        assert_eq!(v.rank_condition_holds, Some(false));
    }

    #[test]
    fn zero_signal_and_empty_t() {
        let d = Dictionary::<f64>::identity(3).unwrap();
        let t = AtomSet::new([0], 3).unwrap();
        assert!(matches!(
            test_representability(&d, &t, &CVector::zeros(3), &policy()),
            Err(Error::ZeroSignal)
        ));
        assert!(test_representability(&d, &AtomSet::empty(), &CVector::zeros(3), &policy()).is_err());
    }

    #[test]
    fn equivalence_orthonormal_and_superset() {
        let d = Dictionary::<f64>::identity(8).unwrap();
        let s = AtomSet::new([0, 1, 2], 8).unwrap();
        let r = equivalence_experiment(&d, &s, &AtomSet::new([4, 5], 8).unwrap(), 100, 9, &policy()).unwrap();
        assert_eq!(r.summary.not_representable, 100);
        assert!(r.summary.consistent);
        let r = equivalence_experiment(&d, &s, &AtomSet::new([0, 1, 2, 6], 8).unwrap(), 100, 9, &policy()).unwrap();
        assert_eq!(r.summary.representable, 100);
        assert!(r.pairs[0].containment);
        assert!(r.summary.consistent);
    }

    #[test]
    fn sparsest_support_of_a_spike_sum() {
        let d = Dictionary::<f64>::spikes_sines(4).unwrap();
        let s = AtomSet::new([1, 6], 8).unwrap();
        let u = draw_generic_signal(&d, &s, 5).unwrap();
        assert_eq!(sparsest_supports(&d, &u.signal, 3, &policy()).unwrap(), vec![s]);
        // the 2-comb in C^4 has two 2-term representations
        let comb = dirac_comb_signal::<f64>(4).unwrap();
        assert_eq!(sparsest_supports(&d, &comb, 2, &policy()).unwrap().len(), 2);
    }

    #[test]
    fn gap_experiment_with_empty_t_is_vacuous() {
        let d = Dictionary::<f64>::spikes_sines(8).unwrap();
        let cfg = GapExperimentConfig { s: 2, t: 0, delta: 0, pairs: 5, trials_per_pair: 5, master_seed: 0 };
        let r = gap_experiment(&d, &cfg, &policy()).unwrap();
        assert_eq!(r.summary.trials, 0);
        assert!(r.pairs.is_empty());
    }

    #[test]
    fn gap_experiment_respects_overlap_and_is_deterministic() {
        let d = Dictionary::<f64>::spikes_sines(16).unwrap();
        let cfg = GapExperimentConfig { s: 3, t: 3, delta: 1, pairs: 6, trials_per_pair: 4, master_seed: 11 };
        let a = gap_experiment(&d, &cfg, &policy()).unwrap();
        assert!(a.pairs.iter().all(|p| p.overlap == 1 && p.s_set.len() == 3 && p.t_set.len() == 3));
        assert_eq!(a.summary.trials, 24);
        assert_eq!(a, gap_experiment(&d, &cfg, &policy()).unwrap());
        assert!(a.summary.consistent);
    }
}
