//! Experiment configuration schema.
//!
//! A config file holds one experiment object or `{"runs": [...]}`. Each
//! experiment object is tagged by `"experiment"`; unknown keys are rejected
//! before anything is computed.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sparsity_gap::dictionary::io;
use sparsity_gap::generic_experiments::ResidualPolicy;
use sparsity_gap::{Dictionary64, DictionaryKind};

/// Either a dictionary file or construction parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DictionarySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<DictionaryKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl DictionarySpec {
    pub fn build(&self) -> Result<Dictionary64, String> {
        if let Some(path) = &self.path {
            if self.kind.is_some() || self.m.is_some() || self.n.is_some() || self.seed.is_some() {
                return Err("dictionary: give either a path or construction parameters, not both".into());
            }
            return io::read(path).map_err(|e| format!("{}: {e}", path.display()));
        }
        let kind = self.kind.ok_or("dictionary: missing kind (or path)")?;
        let m = self.m.ok_or("dictionary: missing m")?;
        build_dictionary(kind, m, self.n, self.seed)
    }
}

pub fn build_dictionary(kind: DictionaryKind, m: usize, n: Option<usize>, seed: Option<u64>) -> Result<Dictionary64, String> {
    let need_n = || n.ok_or_else(|| format!("{kind} needs n"));
    let seed = seed.unwrap_or(0);
    let fixed_n = |expected: usize| match n {
        Some(n) if n != expected => Err(format!("{kind} has N = {expected}, got n = {n}")),
        _ => Ok(()),
    };
    let built = match kind {
        DictionaryKind::SpikesSines => {
            fixed_n(2 * m)?;
            Dictionary64::spikes_sines(m)
        }
        DictionaryKind::Identity => {
            fixed_n(m)?;
            Dictionary64::identity(m)
        }
        DictionaryKind::RandomUnitNorm => Dictionary64::random_unit_norm(m, need_n()?, seed),
        DictionaryKind::RandomTightFrame => Dictionary64::random_tight_frame(m, need_n()?, seed),
        DictionaryKind::Custom => return Err("custom dictionaries are loaded from a path".into()),
    };
    built.map_err(|e| e.to_string())
}

fn default_beta() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExperimentSpec {
    Gap {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        dictionary: DictionarySpec,
        seed: u64,
        s: usize,
        t: usize,
        #[serde(default)]
        delta: usize,
        pairs: usize,
        trials_per_pair: usize,
        #[serde(default)]
        policy: ResidualPolicy,
    },
    Equivalence {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        dictionary: DictionarySpec,
        seed: u64,
        s_set: Vec<usize>,
        t_set: Vec<usize>,
        trials: usize,
        #[serde(default)]
        policy: ResidualPolicy,
    },
    Sweep {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        dictionary: DictionarySpec,
        seed: u64,
        s_values: Vec<usize>,
        trials_per_s: usize,
        #[serde(default = "default_beta")]
        beta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c_sparsity: Option<f64>,
        #[serde(default)]
        in_regime: bool,
    },
    WeakRank {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        dictionary: DictionarySpec,
        seed: u64,
        s: usize,
        v_size: usize,
        trials: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c_sparsity: Option<f64>,
    },
}

impl ExperimentSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Gap { .. } => "gap",
            Self::Equivalence { .. } => "equivalence",
            Self::Sweep { .. } => "sweep",
            Self::WeakRank { .. } => "weak-rank",
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Self::Gap { name, .. }
            | Self::Equivalence { name, .. }
            | Self::Sweep { name, .. }
            | Self::WeakRank { name, .. } => name.as_deref(),
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Self::Gap { seed, .. }
            | Self::Equivalence { seed, .. }
            | Self::Sweep { seed, .. }
            | Self::WeakRank { seed, .. } => *seed,
        }
    }

    pub fn dictionary(&self) -> &DictionarySpec {
        match self {
            Self::Gap { dictionary, .. }
            | Self::Equivalence { dictionary, .. }
            | Self::Sweep { dictionary, .. }
            | Self::WeakRank { dictionary, .. } => dictionary,
        }
    }

    /// Checks that do not need the dictionary.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            Self::Gap { policy, .. } | Self::Equivalence { policy, .. } => {
                ResidualPolicy::new(policy.ceiling, policy.floor).map(|_| ()).map_err(|e| e.to_string())
            }
            Self::Sweep { beta, .. } if !(*beta >= 1.0) => Err(format!("beta must be >= 1, got {beta}")),
            _ => Ok(()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteFile {
    runs: Vec<Value>,
}

/// Splits a config document into its experiment objects.
pub fn split_runs(doc: Value) -> Result<Vec<Value>, String> {
    match &doc {
        Value::Object(map) if map.contains_key("runs") => {
            let suite: SuiteFile = serde_json::from_value(doc).map_err(|e| format!("config: {e}"))?;
            if suite.runs.is_empty() {
                return Err("config: empty runs list".into());
            }
            Ok(suite.runs)
        }
        Value::Object(_) => Ok(vec![doc]),
        _ => Err("config: expected a JSON object".into()),
    }
}

/// Overlays `overrides` onto `base`, recursing into nested objects.
pub fn merge(base: &mut Value, overrides: &Value) {
    match (base, overrides) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(k) {
                    Some(existing) if existing.is_object() && v.is_object() => merge(existing, v),
                    _ => {
                        b.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        (b, o) => *b = o.clone(),
    }
}

/// Parses and validates one experiment object.
pub fn parse_spec(value: Value) -> Result<ExperimentSpec, String> {
    let spec: ExperimentSpec = serde_json::from_value(value).map_err(|e| format!("config: {e}"))?;
    spec.validate().map_err(|e| format!("config: {e}"))?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_gap_with_defaults() {
        let spec = parse_spec(json!({
            "experiment": "gap",
            "dictionary": {"kind": "spikes-sines", "m": 16},
            "seed": 1, "s": 2, "t": 2, "pairs": 3, "trials_per_pair": 4
        }))
        .unwrap();
        match spec {
            ExperimentSpec::Gap { delta, policy, .. } => {
                assert_eq!(delta, 0);
                assert_eq!(policy, ResidualPolicy::default());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_names_and_keys() {
        assert!(parse_spec(json!({"experiment": "bogus", "seed": 1})).is_err());
        let err = parse_spec(json!({
            "experiment": "weak-rank",
            "dictionary": {"kind": "identity", "m": 4},
            "seed": 1, "s": 1, "v_size": 1, "trials": 1, "colour": "red"
        }))
        .unwrap_err();
        assert!(err.contains("colour"), "{err}");
        assert!(parse_spec(json!({
            "experiment": "gap",
            "dictionary": {"kind": "identity", "m": 4},
            "seed": 1, "s": 1, "t": 1, "pairs": 1, "trials_per_pair": 1,
            "policy": {"ceiling": 1e-3, "floor": 1e-6}
        }))
        .is_err());
    }

    #[test]
    fn merge_overrides_nested() {
        let mut base = json!({"seed": 1, "dictionary": {"kind": "identity", "m": 4}});
        merge(&mut base, &json!({"seed": 2, "dictionary": {"m": 8}}));
        assert_eq!(base, json!({"seed": 2, "dictionary": {"kind": "identity", "m": 8}}));
    }

    #[test]
    fn suites_split() {
        let runs = split_runs(json!({"runs": [{"a": 1}, {"b": 2}]})).unwrap();
        assert_eq!(runs.len(), 2);
        assert_eq!(split_runs(json!({"experiment": "gap"})).unwrap().len(), 1);
        assert!(split_runs(json!([1])).is_err());
        assert!(split_runs(json!({"runs": [], "extra": 1})).is_err());
    }

    #[test]
    fn dictionary_spec_checks() {
        let spec = DictionarySpec { path: None, kind: Some(DictionaryKind::SpikesSines), m: Some(1), n: None, seed: None };
        assert!(spec.build().is_err());
        let spec = DictionarySpec { kind: Some(DictionaryKind::RandomTightFrame), m: Some(4), ..spec };
        assert!(spec.build().unwrap_err().contains("needs n"));
    }
}
