//! Statistics of uniformly random atom sets: cross-correlation with the rest
//! of the dictionary, Gram-matrix deviation from the identity and the
//! pseudoinverse norm, plus the weak-incoherence rank bound they feed.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dictionary::{AtomSet, Dictionary, Provenance};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rng;
use crate::scalar::{CMatrix, Real};
use crate::schatten_rank::{self, max_cross_correlation_sq};

/// Good-event thresholds: `max_{v not in S} ||Phi_S^* phi_v|| <= 1/2` and
/// `||Phi_S^+|| <= sqrt(2)`.
pub const CROSS_GATE: f64 = 0.5;
pub const PINV_GATE: f64 = std::f64::consts::SQRT_2;

/// Moves a uniformly random `k`-subset of `pool` to its front
/// (Fisher-Yates prefix) and returns it.
pub fn partial_shuffle<'a, G: Rng + ?Sized>(rng: &mut G, pool: &'a mut [usize], k: usize) -> &'a [usize] {
    let n = pool.len();
    for i in 0..k.min(n) {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    &pool[..k.min(n)]
}

/// Uniformly random `s`-subset of `0..n_atoms` drawn from `rng`.
pub fn sample_subset<G: Rng + ?Sized>(rng: &mut G, n_atoms: usize, s: usize) -> Result<AtomSet> {
    if s > n_atoms {
        return Err(Error::InvalidParameter(format!("cannot draw {s} of {n_atoms} atoms")));
    }
    let mut pool: Vec<usize> = (0..n_atoms).collect();
    AtomSet::new(partial_shuffle(rng, &mut pool, s).iter().copied(), n_atoms)
}

/// Uniformly random `s`-subset of `0..n_atoms`, deterministic in `seed`.
pub fn sample_uniform_subset(n_atoms: usize, s: usize, seed: u64) -> Result<AtomSet> {
    if s == 0 {
        return Err(Error::InvalidParameter("subset size must be at least 1".into()));
    }
    sample_subset(&mut rng::rng_from_seed(seed), n_atoms, s)
}

/// Uniformly random `k` elements of `from`.
pub fn sample_from<G: Rng + ?Sized>(rng: &mut G, from: &AtomSet, k: usize) -> Result<Vec<usize>> {
    if k > from.len() {
        return Err(Error::InvalidParameter(format!("cannot draw {k} of {} atoms", from.len())));
    }
    let mut pool: Vec<usize> = from.iter().collect();
    Ok(partial_shuffle(rng, &mut pool, k).to_vec())
}

/// The three random-set statistics for one set `S`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetStatistics<R> {
    pub s: usize,
    pub seed: Option<u64>,
    /// `max_{v not in S} ||Phi_S^* phi_v||`.
    pub max_cross_correlation: R,
    /// `||Phi_S^* Phi_S - I||`.
    pub gram_deviation: R,
    /// `||Phi_S^+|| = 1/sigma_min(Phi_S)`; `None` when `S` is numerically dependent.
    pub pinv_norm: Option<R>,
}

impl<R: Real> SubsetStatistics<R> {
    pub fn cross_gate_ok(&self) -> bool {
        self.max_cross_correlation <= R::lit(CROSS_GATE)
    }

    pub fn pinv_gate_ok(&self) -> bool {
        self.pinv_norm.is_some_and(|p| p <= R::lit(PINV_GATE))
    }
}

pub fn subset_statistics<R: Real>(dict: &Dictionary<R>, s: &AtomSet) -> Result<SubsetStatistics<R>> {
    if s.is_empty() {
        return Err(Error::InvalidAtomSet("statistics need a nonempty set".into()));
    }
    let phi_s = dict.subdictionary(s);
    let gram = phi_s.adjoint() * &phi_s;
    let deviation = gram - CMatrix::<R>::identity(s.len(), s.len());
    let gram_deviation = linalg::hermitian_eigenvalues(&deviation)
        .into_iter()
        .fold(R::zero(), |m, e| if e.abs() > m { e.abs() } else { m });
    let sv = linalg::singular_values(&phi_s);
    let rank = linalg::count_above(&sv, linalg::default_rank_tolerance(sv[0], phi_s.nrows(), phi_s.ncols()));
    let pinv_norm = (rank == s.len()).then(|| R::one() / sv[sv.len() - 1]);
    Ok(SubsetStatistics {
        s: s.len(),
        seed: None,
        max_cross_correlation: max_cross_correlation_sq(dict, s).sqrt(),
        gram_deviation,
        pinv_norm,
    })
}

/// Empirical quantile with linear interpolation between order statistics.
/// `values` must be sorted ascending and nonempty.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    let h = (values.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    values[lo] + (h - lo as f64) * (values[hi] - values[lo])
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// Parameters of [`statistics_sweep`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub s_values: Vec<usize>,
    pub trials_per_s: usize,
    /// Upper quantiles are reported at level `1 - N^{-beta}`.
    #[serde(default = "default_beta")]
    pub beta: f64,
    pub master_seed: u64,
    /// Constant `c` of the sparsity regime `s <= c m / ln N`.
    #[serde(default)]
    pub c_sparsity: Option<f64>,
    /// Whether the sweep claims to lie in the weak-incoherence regime; if so
    /// the dictionary and every `s` are checked against `c_sparsity`.
    #[serde(default)]
    pub in_regime: bool,
}

fn default_beta() -> f64 {
    1.0
}

/// Whether `s <= c m / ln N`.
pub fn sparsity_in_regime(s: usize, c: f64, m: usize, n_atoms: usize) -> bool {
    (s as f64) <= c * m as f64 / (n_atoms as f64).ln()
}

impl SweepConfig {
    pub fn validate<R: Real>(&self, dict: &Dictionary<R>) -> Result<()> {
        if self.s_values.is_empty() || self.trials_per_s == 0 {
            return Err(Error::InvalidParameter("sweep needs s values and at least one trial".into()));
        }
        if !(self.beta >= 1.0) {
            return Err(Error::InvalidParameter(format!("beta must be >= 1, got {}", self.beta)));
        }
        if let Some(&bad) = self.s_values.iter().find(|&&s| s == 0 || s > dict.n_atoms()) {
            return Err(Error::InvalidParameter(format!("s = {bad} outside 1..={}", dict.n_atoms())));
        }
        if self.in_regime {
            let c = self
                .c_sparsity
                .ok_or_else(|| Error::InvalidParameter("in-regime sweep needs c_sparsity".into()))?;
            let check = dict.check_weak_incoherence(R::lit(c))?;
            if !check.passes {
                return Err(Error::HypothesisViolated(format!(
                    "dictionary is not a weakly incoherent tight frame for c = {c}"
                )));
            }
            if let Some(&s) = self.s_values.iter().find(|&&s| !sparsity_in_regime(s, c, dict.m(), dict.n_atoms())) {
                return Err(Error::HypothesisViolated(format!("s = {s} exceeds c m / ln N")));
            }
        }
        Ok(())
    }
}

/// One row of a sweep: the statistics of one random set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTrial {
    pub s: usize,
    pub trial: usize,
    pub seed: u64,
    pub max_cross_correlation: f64,
    pub gram_deviation: f64,
    pub pinv_norm: Option<f64>,
    pub cross_gate_ok: bool,
    pub pinv_gate_ok: bool,
}

/// Quantiles of one sparsity level. A quantile that lands on a dependent set
/// (infinite pseudoinverse norm) is `None`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepLevel {
    pub s: usize,
    pub trials: usize,
    pub quantile_level: f64,
    pub median_max_cross_correlation: f64,
    pub median_gram_deviation: f64,
    pub median_pinv_norm: Option<f64>,
    pub upper_max_cross_correlation: f64,
    pub upper_gram_deviation: f64,
    pub upper_pinv_norm: Option<f64>,
    /// Fraction of trials failing either good-event gate.
    pub gate_violation_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub dictionary: Provenance,
    pub coherence: f64,
    pub redundancy: f64,
    pub config: SweepConfig,
    pub levels: Vec<SweepLevel>,
    pub trials: Vec<SweepTrial>,
}

/// Column order of [`SweepReport::write_csv`].
pub const SWEEP_CSV_COLUMNS: [&str; 8] = [
    "s",
    "trial",
    "seed",
    "max_cross_correlation",
    "gram_deviation",
    "pinv_norm",
    "cross_gate_ok",
    "pinv_gate_ok",
];

impl SweepReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SWEEP_CSV_COLUMNS)?;
        for t in &self.trials {
            w.write_record([
                t.s.to_string(),
                t.trial.to_string(),
                t.seed.to_string(),
                t.max_cross_correlation.to_string(),
                t.gram_deviation.to_string(),
                t.pinv_norm.map(|p| p.to_string()).unwrap_or_default(),
                t.cross_gate_ok.to_string(),
                t.pinv_gate_ok.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Measures the random-set statistics over `trials_per_s` uniformly random
/// sets at each sparsity level. Trials run in parallel; each draws its set
/// from the seed derived from `(master_seed, s, trial)`.
pub fn statistics_sweep<R: Real>(dict: &Dictionary<R>, config: &SweepConfig) -> Result<SweepReport> {
    config.validate(dict)?;
    let jobs: Vec<(usize, usize)> = config
        .s_values
        .iter()
        .flat_map(|&s| (0..config.trials_per_s).map(move |k| (s, k)))
        .collect();
    let trials: Vec<SweepTrial> = jobs
        .par_iter()
        .map(|&(s, trial)| {
            let seed = rng::derive_seed(config.master_seed, &[s as u64, trial as u64]);
            let set = sample_uniform_subset(dict.n_atoms(), s, seed)?;
            let stats = subset_statistics(dict, &set)?;
            Ok(SweepTrial {
                s,
                trial,
                seed,
                max_cross_correlation: stats.max_cross_correlation.as_f64(),
                gram_deviation: stats.gram_deviation.as_f64(),
                pinv_norm: stats.pinv_norm.map(Real::as_f64),
                cross_gate_ok: stats.cross_gate_ok(),
                pinv_gate_ok: stats.pinv_gate_ok(),
            })
        })
        .collect::<Result<_>>()?;

    let quantile_level = 1.0 - (dict.n_atoms() as f64).powf(-config.beta);
    let levels = config
        .s_values
        .iter()
        .map(|&s| {
            let rows: Vec<&SweepTrial> = trials.iter().filter(|t| t.s == s).collect();
            let cross = sorted(rows.iter().map(|t| t.max_cross_correlation).collect());
            let gram = sorted(rows.iter().map(|t| t.gram_deviation).collect());
            let pinv = sorted(rows.iter().map(|t| t.pinv_norm.unwrap_or(f64::INFINITY)).collect());
            let finite = |v: f64| v.is_finite().then_some(v);
            let violations = rows.iter().filter(|t| !(t.cross_gate_ok && t.pinv_gate_ok)).count();
            SweepLevel {
                s,
                trials: rows.len(),
                quantile_level,
                median_max_cross_correlation: quantile(&cross, 0.5),
                median_gram_deviation: quantile(&gram, 0.5),
                median_pinv_norm: finite(quantile(&pinv, 0.5)),
                upper_max_cross_correlation: quantile(&cross, quantile_level),
                upper_gram_deviation: quantile(&gram, quantile_level),
                upper_pinv_norm: finite(quantile(&pinv, quantile_level)),
                gate_violation_fraction: violations as f64 / rows.len() as f64,
            }
        })
        .collect();
    Ok(SweepReport {
        dictionary: dict.provenance().clone(),
        coherence: dict.coherence().as_f64(),
        redundancy: dict.redundancy().as_f64(),
        config: config.clone(),
        levels,
        trials,
    })
}

/// Parameters of [`weak_rank_bound_experiment`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakRankConfig {
    pub s: usize,
    pub v_size: usize,
    pub trials: usize,
    pub master_seed: u64,
    /// When present, `s` must satisfy `s <= c m / ln N`.
    #[serde(default)]
    pub c_sparsity: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakRankTrial {
    pub trial: usize,
    pub seed: u64,
    pub s_set: AtomSet,
    pub v_set: AtomSet,
    pub rank_r: usize,
    pub max_cross_correlation: f64,
    pub pinv_norm: Option<f64>,
    pub gated: bool,
    /// `|S| + 2m|V|/N`.
    pub stated_bound: f64,
    /// `|S| + m|V|/(2N)`: the projected-block bound with the gate values
    /// substituted.
    pub gate_substituted_bound: f64,
    /// `|S|` plus the projected-block bound evaluated on this instance.
    pub instance_bound: Option<f64>,
    pub stated_violated: bool,
    pub gate_substituted_violated: bool,
    pub instance_violated: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeakRankSummary {
    pub trials: usize,
    pub gated_trials: usize,
    pub stated_violations_gated: usize,
    pub stated_violations_ungated: usize,
    pub gate_substituted_violations_gated: usize,
    pub gate_substituted_violations_ungated: usize,
    pub instance_violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakRankReport {
    pub dictionary: Provenance,
    pub config: WeakRankConfig,
    pub trials: Vec<WeakRankTrial>,
    pub summary: WeakRankSummary,
}

/// Column order of [`WeakRankReport::write_csv`].
pub const WEAK_RANK_CSV_COLUMNS: [&str; 13] = [
    "trial",
    "seed",
    "s",
    "v_size",
    "rank_r",
    "max_cross_correlation",
    "pinv_norm",
    "gated",
    "stated_bound",
    "gate_substituted_bound",
    "instance_bound",
    "stated_violated",
    "gate_substituted_violated",
];

impl WeakRankReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(WEAK_RANK_CSV_COLUMNS)?;
        for t in &self.trials {
            w.write_record([
                t.trial.to_string(),
                t.seed.to_string(),
                t.s_set.len().to_string(),
                t.v_set.len().to_string(),
                t.rank_r.to_string(),
                t.max_cross_correlation.to_string(),
                t.pinv_norm.map(|p| p.to_string()).unwrap_or_default(),
                t.gated.to_string(),
                t.stated_bound.to_string(),
                t.gate_substituted_bound.to_string(),
                t.instance_bound.map(|p| p.to_string()).unwrap_or_default(),
                t.stated_violated.to_string(),
                t.gate_substituted_violated.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Compares `rank(Phi_{S ∪ V})` for random disjoint `S`, `V` against the
/// weak-incoherence rank bound, separately on and off the good event.
///
/// Two constants are checked: `|S| + 2m|V|/N` as stated for the good event,
/// and `|S| + m|V|/(2N)`, which is what substituting the gate values
/// (`1/2`, `sqrt(2)`) into the projected-block bound actually yields.
pub fn weak_rank_bound_experiment<R: Real>(dict: &Dictionary<R>, config: &WeakRankConfig) -> Result<WeakRankReport> {
    let (m, n) = (dict.m(), dict.n_atoms());
    if !dict.is_tight_frame() {
        return Err(Error::HypothesisViolated("dictionary is not a tight frame".into()));
    }
    if n <= 2 * m {
        return Err(Error::HypothesisViolated(format!("requires N > 2m, got m = {m}, N = {n}")));
    }
    if config.s == 0 || config.s + config.v_size > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= s and s + |V| <= N, got s = {}, |V| = {}",
            config.s, config.v_size
        )));
    }
    if let Some(c) = config.c_sparsity {
        if !sparsity_in_regime(config.s, c, m, n) {
            return Err(Error::HypothesisViolated(format!("s = {} exceeds c m / ln N", config.s)));
        }
    }
    let slack = 1e-9;
    let v_len = config.v_size as f64;
    let stated_bound = config.s as f64 + 2.0 * m as f64 * v_len / n as f64;
    let gate_substituted_bound = config.s as f64 + m as f64 * v_len / (2.0 * n as f64);

    let trials: Vec<WeakRankTrial> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = rng::derive_seed(config.master_seed, &[trial as u64]);
            let mut g = rng::rng_from_seed(seed);
            let s_set = sample_subset(&mut g, n, config.s)?;
            let v_set = AtomSet::new(sample_from(&mut g, &s_set.complement(n), config.v_size)?, n)?;
            let stats = subset_statistics(dict, &s_set)?;
            let rank_r = schatten_rank::numerical_rank(&dict.subdictionary(&s_set.union(&v_set)), None);
            let instance_bound = match schatten_rank::rank_lb_weak(dict, &s_set, &v_set) {
                Ok(b) => Some(config.s as f64 + b.as_f64()),
                Err(Error::DependentSet { .. }) => None,
                Err(e) => return Err(e),
            };
            let rank = rank_r as f64;
            Ok(WeakRankTrial {
                trial,
                seed,
                s_set,
                v_set,
                rank_r,
                max_cross_correlation: stats.max_cross_correlation.as_f64(),
                pinv_norm: stats.pinv_norm.map(Real::as_f64),
                gated: stats.cross_gate_ok() && stats.pinv_gate_ok(),
                stated_bound,
                gate_substituted_bound,
                instance_bound,
                stated_violated: rank + slack < stated_bound,
                gate_substituted_violated: rank + slack < gate_substituted_bound,
                instance_violated: instance_bound.is_some_and(|b| rank + slack < b),
            })
        })
        .collect::<Result<_>>()?;

    let mut summary = WeakRankSummary { trials: trials.len(), ..Default::default() };
    for t in &trials {
        summary.gated_trials += t.gated as usize;
        let (stated, substituted) = if t.gated {
            (&mut summary.stated_violations_gated, &mut summary.gate_substituted_violations_gated)
        } else {
            (&mut summary.stated_violations_ungated, &mut summary.gate_substituted_violations_ungated)
        };
        *stated += t.stated_violated as usize;
        *substituted += t.gate_substituted_violated as usize;
        summary.instance_violations += t.instance_violated as usize;
    }
    Ok(WeakRankReport { dictionary: dict.provenance().clone(), config: config.clone(), trials, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_subset_and_determinism() {
        assert_eq!(sample_uniform_subset(7, 7, 3).unwrap(), AtomSet::range(0..7));
        assert_eq!(sample_uniform_subset(50, 9, 3).unwrap(), sample_uniform_subset(50, 9, 3).unwrap());
        assert!(sample_uniform_subset(5, 6, 0).is_err());
        assert!(sample_uniform_subset(5, 0, 0).is_err());
    }

    #[test]
    fn orthonormal_statistics() {
        let d = Dictionary::<f64>::identity(6).unwrap();
        let st = subset_statistics(&d, &AtomSet::new([1, 4], 6).unwrap()).unwrap();
        assert_eq!(st.max_cross_correlation, 0.0);
        assert!(st.gram_deviation < 1e-15);
        assert!((st.pinv_norm.unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spikes_sines_four_spikes() {
        let d = Dictionary::<f64>::spikes_sines(16).unwrap();
        let st = subset_statistics(&d, &AtomSet::range(0..4)).unwrap();
        assert!((st.max_cross_correlation - 0.5).abs() < 1e-12);
        assert!(st.gram_deviation < 1e-15);
        assert!((st.pinv_norm.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn duplicated_atom_is_dependent() {
        use crate::dictionary::{DictionaryKind, Provenance};
        use crate::scalar::cx;
        let atoms = CMatrix::from_column_slice(2, 3, &[cx(1.0), cx(0.0), cx(1.0), cx(0.0), cx(0.0), cx(1.0)]);
        let d = Dictionary::from_matrix(atoms, Provenance::new(DictionaryKind::Custom, 2, 3)).unwrap();
        let st = subset_statistics(&d, &AtomSet::new([0, 1], 3).unwrap()).unwrap();
        assert!(st.gram_deviation >= 1.0 - 1e-12);
        assert!(st.pinv_norm.is_none());
        assert!(!st.pinv_gate_ok());
    }

    #[test]
    fn quantile_interpolates() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.0), 1.0);
        assert_eq!(quantile(&v, 1.0), 4.0);
        assert_eq!(quantile(&v, 0.5), 2.5);
    }

    #[test]
    fn orthonormal_sweep_is_constant() {
        let d = Dictionary::<f64>::identity(8).unwrap();
        let cfg = SweepConfig {
            s_values: vec![1, 3],
            trials_per_s: 10,
            beta: 1.0,
            master_seed: 5,
            c_sparsity: None,
            in_regime: false,
        };
        let r = statistics_sweep(&d, &cfg).unwrap();
        for t in &r.trials {
            assert_eq!(t.max_cross_correlation, 0.0);
            assert!(t.gram_deviation < 1e-15);
            assert!((t.pinv_norm.unwrap() - 1.0).abs() < 1e-14);
        }
        assert!(r.levels.iter().all(|l| l.gate_violation_fraction == 0.0));
    }

    #[test]
    fn sweep_s_one_bounded_by_coherence() {
        let d = Dictionary::<f64>::random_unit_norm(6, 20, 2).unwrap();
        let cfg = SweepConfig {
            s_values: vec![1],
            trials_per_s: 30,
            beta: 1.0,
            master_seed: 1,
            c_sparsity: None,
            in_regime: false,
        };
        let r = statistics_sweep(&d, &cfg).unwrap();
        assert!(r.trials.iter().all(|t| t.max_cross_correlation <= d.coherence() + 1e-12));
    }

    #[test]
    fn in_regime_sweep_checks_hypotheses() {
        let d = Dictionary::<f64>::random_unit_norm(6, 20, 2).unwrap();
        let cfg = SweepConfig {
            s_values: vec![1],
            trials_per_s: 3,
            beta: 1.0,
            master_seed: 1,
            c_sparsity: Some(1.0),
            in_regime: true,
        };
        assert!(matches!(statistics_sweep(&d, &cfg), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn weak_rank_requires_n_above_2m() {
        let d = Dictionary::<f64>::spikes_sines(8).unwrap();
        let cfg = WeakRankConfig { s: 2, v_size: 2, trials: 1, master_seed: 0, c_sparsity: None };
        assert!(matches!(weak_rank_bound_experiment(&d, &cfg), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn weak_rank_empty_v_reduces_to_s() {
        let d = Dictionary::<f64>::random_tight_frame(6, 16, 4).unwrap();
        let cfg = WeakRankConfig { s: 3, v_size: 0, trials: 20, master_seed: 2, c_sparsity: None };
        let r = weak_rank_bound_experiment(&d, &cfg).unwrap();
        assert!(r.trials.iter().all(|t| t.rank_r == 3 && t.stated_bound == 3.0 && !t.stated_violated));
    }
}
