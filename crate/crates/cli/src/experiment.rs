//! `sgap experiment`: run configured experiments and write their reports.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sparsity_gap::generic_experiments::{
    equivalence_experiment, gap_experiment, ExperimentReport, GapExperimentConfig,
};
use sparsity_gap::random_sets::{
    statistics_sweep, weak_rank_bound_experiment, SweepConfig, SweepReport, WeakRankConfig, WeakRankReport,
};
use sparsity_gap::{AtomSet, DictionaryKind, Provenance};

use crate::bounds::parse_list;
use crate::config::{merge, parse_spec, split_runs, ExperimentSpec};
use crate::dict::parse_kind;
use crate::manifest::{payload_bytes, render, ReportFile, RunManifest};
use crate::output::{emit, Format};
use crate::{CliResult, UsageError, EXIT_OK, EXIT_VIOLATION};

#[derive(Args, Debug, Clone, Default)]
pub struct ExperimentArgs {
    /// JSON config: one experiment object or `{"runs": [...]}`. Flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Re-run the configuration embedded in a report file and compare digests.
    #[arg(long, conflicts_with = "config")]
    pub replay: Option<PathBuf>,
    /// Experiment: gap, equivalence, sweep or weak-rank.
    #[arg(long)]
    pub experiment: Option<String>,
    /// Report name (file stem).
    #[arg(long)]
    pub name: Option<String>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Dictionary file.
    #[arg(long)]
    pub dict: Option<PathBuf>,
    /// Dictionary family to build instead of loading a file.
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<DictionaryKind>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed of a random dictionary.
    #[arg(long)]
    pub dict_seed: Option<u64>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub delta: Option<usize>,
    /// Number of sampled (S, T) pairs (gap).
    #[arg(long)]
    pub pairs: Option<usize>,
    /// Trials per pair (gap), per level (sweep) or in total.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Explicit S, e.g. `0,4,8,12` (equivalence).
    #[arg(long)]
    pub s_set: Option<String>,
    /// Explicit T (equivalence).
    #[arg(long)]
    pub t_set: Option<String>,
    /// Sparsity levels (sweep), e.g. `4,8,16`.
    #[arg(long)]
    pub s_values: Option<String>,
    #[arg(long)]
    pub v_size: Option<usize>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Sparsity constant `c` in `s <= c m / ln N`.
    #[arg(long)]
    pub c: Option<f64>,
    /// Check the weak-incoherence hypotheses before a sweep.
    #[arg(long)]
    pub in_regime: bool,
    /// Residual at or below which a signal counts as representable.
    #[arg(long)]
    pub ceiling: Option<f64>,
    /// Residual above which a signal counts as not representable.
    #[arg(long)]
    pub floor: Option<f64>,
    /// Output directory for `<name>.json` and `<name>.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write only this format (both by default).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl ExperimentArgs {
    /// Flag overrides as a partial experiment object. `trials` is mapped once
    /// the experiment kind is known.
    fn overrides(&self) -> CliResult<Map<String, Value>> {
        let mut o = Map::new();
        let mut put = |k: &str, v: Value| {
            o.insert(k.to_string(), v);
        };
        if let Some(v) = &self.experiment {
            put("experiment", json!(v));
        }
        if let Some(v) = &self.name {
            put("name", json!(v));
        }
        if let Some(v) = self.seed {
            put("seed", json!(v));
        }
        let mut dict = Map::new();
        if let Some(p) = &self.dict {
            dict.insert("path".into(), json!(p));
        }
        if let Some(k) = self.kind {
            dict.insert("kind".into(), serde_json::to_value(k)?);
        }
        if let Some(v) = self.m {
            dict.insert("m".into(), json!(v));
        }
        if let Some(v) = self.n {
            dict.insert("n".into(), json!(v));
        }
        if let Some(v) = self.dict_seed {
            dict.insert("seed".into(), json!(v));
        }
        if !dict.is_empty() {
            put("dictionary", Value::Object(dict));
        }
        for (k, v) in [("s", self.s), ("t", self.t), ("delta", self.delta), ("pairs", self.pairs), ("v_size", self.v_size)] {
            if let Some(v) = v {
                put(k, json!(v));
            }
        }
        if let Some(v) = self.trials {
            put("trials", json!(v));
        }
        for (k, v) in [("s_set", &self.s_set), ("t_set", &self.t_set), ("s_values", &self.s_values)] {
            if let Some(v) = v {
                put(k, json!(parse_list(v)?));
            }
        }
        if let Some(v) = self.beta {
            put("beta", json!(v));
        }
        if let Some(v) = self.c {
            put("c_sparsity", json!(v));
        }
        if self.in_regime {
            put("in_regime", json!(true));
        }
        let mut policy = Map::new();
        if let Some(v) = self.ceiling {
            policy.insert("ceiling".into(), json!(v));
        }
        if let Some(v) = self.floor {
            policy.insert("floor".into(), json!(v));
        }
        if !policy.is_empty() {
            put("policy", Value::Object(policy));
        }
        Ok(o)
    }
}

/// Resolves the config file and flags into validated experiment objects.
/// Every schema error surfaces here, before any computation.
pub fn resolve(args: &ExperimentArgs) -> CliResult<Vec<(Value, ExperimentSpec)>> {
    let docs = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            let doc: Value = serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            split_runs(doc)?
        }
        None => vec![json!({})],
    };
    let overrides = args.overrides()?;
    let suite = docs.len() > 1;
    if suite && overrides.keys().any(|k| k != "seed") {
        return Err("only --seed may override a multi-run config".into());
    }
    let mut resolved = Vec::new();
    for mut run in docs {
        let mut ov = overrides.clone();
        let tag = ov.get("experiment").or_else(|| run.get("experiment")).and_then(Value::as_str).map(str::to_owned);
        let alias = match tag.as_deref() {
            Some("gap") => Some("trials_per_pair"),
            Some("sweep") => Some("trials_per_s"),
            _ => None,
        };
        if let Some(key) = alias {
            if let Some(v) = ov.remove("trials") {
                ov.insert(key.to_string(), v);
            }
        }
        merge(&mut run, &Value::Object(ov));
        let spec = parse_spec(run.clone())?;
        resolved.push((run, spec));
    }
    Ok(resolved)
}

/// The report of any experiment kind; serializes as the inner report.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Experiment(ExperimentReport),
    Sweep(SweepReport),
    WeakRank(WeakRankReport),
}

/// A finished run: the report, its serialized bytes and the verdict on its
/// invariants.
pub struct RunOutput {
    pub name: String,
    pub report: Payload,
    pub provenance: Provenance,
    pub seed: u64,
    pub payload: Vec<u8>,
    pub csv: Vec<u8>,
    pub violated: bool,
    pub summary: String,
}

fn experiment_summary(kind: &str, r: &ExperimentReport) -> (bool, String) {
    let s = &r.summary;
    let violated = s.soundness_violations > 0 || s.inconclusive > 0;
    let line = format!(
        "{kind} {} pairs, {} trials: {} not representable, {} representable, {} inconclusive; \
         soundness violations {}, completeness violations {}, prediction violations {}, rank-condition failures {}",
        s.pairs,
        s.trials,
        s.not_representable,
        s.representable,
        s.inconclusive,
        s.soundness_violations,
        s.completeness_violations,
        s.prediction_violations,
        s.rank_condition_failures,
    );
    (violated, line)
}

fn set(indices: &[usize], n: usize) -> CliResult<AtomSet> {
    Ok(AtomSet::new(indices.iter().copied(), n)?)
}

/// Runs one experiment.
pub fn execute(spec: &ExperimentSpec, name: String) -> CliResult<RunOutput> {
    let dict = spec.dictionary().build()?;
    let mut csv = Vec::new();
    let (report, violated, summary) = match spec {
        ExperimentSpec::Gap { seed, s, t, delta, pairs, trials_per_pair, policy, .. } => {
            let cfg = GapExperimentConfig {
                s: *s,
                t: *t,
                delta: *delta,
                pairs: *pairs,
                trials_per_pair: *trials_per_pair,
                master_seed: *seed,
            };
            let r = gap_experiment(&dict, &cfg, policy)?;
            r.write_csv(&mut csv)?;
            let (v, line) = experiment_summary("gap", &r);
            (Payload::Experiment(r), v, line)
        }
        ExperimentSpec::Equivalence { seed, s_set, t_set, trials, policy, .. } => {
            let (s, t) = (set(s_set, dict.n_atoms())?, set(t_set, dict.n_atoms())?);
            let r = equivalence_experiment(&dict, &s, &t, *trials, *seed, policy)?;
            r.write_csv(&mut csv)?;
            let (v, line) = experiment_summary("equivalence", &r);
            (Payload::Experiment(r), v, line)
        }
        ExperimentSpec::Sweep { seed, s_values, trials_per_s, beta, c_sparsity, in_regime, .. } => {
            let cfg = SweepConfig {
                s_values: s_values.clone(),
                trials_per_s: *trials_per_s,
                beta: *beta,
                master_seed: *seed,
                c_sparsity: *c_sparsity,
                in_regime: *in_regime,
            };
            let r = statistics_sweep(&dict, &cfg)?;
            r.write_csv(&mut csv)?;
            let levels: Vec<String> = r
                .levels
                .iter()
                .map(|l| format!("s={} gate violations {:.3}", l.s, l.gate_violation_fraction))
                .collect();
            (Payload::Sweep(r), false, format!("sweep {}", levels.join(", ")))
        }
        ExperimentSpec::WeakRank { seed, s, v_size, trials, c_sparsity, .. } => {
            let cfg = WeakRankConfig { s: *s, v_size: *v_size, trials: *trials, master_seed: *seed, c_sparsity: *c_sparsity };
            let r = weak_rank_bound_experiment(&dict, &cfg)?;
            r.write_csv(&mut csv)?;
            let m = &r.summary;
            let line = format!(
                "weak-rank {} trials ({} gated); stated-bound violations {} gated / {} ungated; \
                 gate-substituted violations {} gated / {} ungated; instance-bound violations {}",
                m.trials,
                m.gated_trials,
                m.stated_violations_gated,
                m.stated_violations_ungated,
                m.gate_substituted_violations_gated,
                m.gate_substituted_violations_ungated,
                m.instance_violations
            );
            let violated = m.instance_violations > 0;
            (Payload::WeakRank(r), violated, line)
        }
    };
    Ok(RunOutput {
        name,
        payload: payload_bytes(&report)?,
        report,
        provenance: dict.provenance().clone(),
        seed: spec.seed(),
        csv,
        violated,
        summary,
    })
}

fn write_outputs(dir: &Path, out: &RunOutput, manifest: &RunManifest, format: Option<Format>) -> CliResult<()> {
    fs::create_dir_all(dir)?;
    if format != Some(Format::Csv) {
        let text = render(manifest, &out.report)?;
        fs::write(dir.join(format!("{}.json", out.name)), text)?;
    }
    if format != Some(Format::Json) {
        fs::write(dir.join(format!("{}.csv", out.name)), &out.csv)?;
    }
    Ok(())
}

fn default_name(spec: &ExperimentSpec, index: usize, suite: bool) -> String {
    match spec.name() {
        Some(n) => n.to_string(),
        None if suite => format!("{index:02}-{}", spec.kind()),
        None => spec.kind().to_string(),
    }
}

/// Entry point. Returns the process exit status.
pub fn run(args: &ExperimentArgs, command_line: Vec<String>) -> CliResult<u8> {
    if let Some(path) = &args.replay {
        return replay(path, args, command_line);
    }
    let resolved = resolve(args)?;
    let suite = resolved.len() > 1;
    let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let mut status = EXIT_OK;
    for (index, (value, spec)) in resolved.iter().enumerate() {
        let out = execute(spec, default_name(spec, index, suite))?;
        let manifest = RunManifest::new(
            command_line.clone(),
            value.clone(),
            Some(out.provenance.clone()),
            Some(out.seed),
            &out.payload,
            Some(&out.csv),
        );
        write_outputs(&dir, &out, &manifest, args.format)?;
        let mark = if out.violated { "VIOLATION" } else { "ok" };
        emit(None, format!("[{mark}] {}: {}\n", out.name, out.summary).as_bytes())?;
        if out.violated {
            status = EXIT_VIOLATION;
        }
    }
    Ok(status)
}

fn replay(path: &Path, args: &ExperimentArgs, command_line: Vec<String>) -> CliResult<u8> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let file: ReportFile<Value> = serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let spec = parse_spec(file.manifest.config.clone())?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("replay").to_string();
    let out = execute(&spec, name)?;
    let manifest = RunManifest::new(
        command_line,
        file.manifest.config.clone(),
        Some(out.provenance.clone()),
        Some(out.seed),
        &out.payload,
        Some(&out.csv),
    );
    if let Some(dir) = &args.out {
        write_outputs(dir, &out, &manifest, args.format)?;
    }
    let json_ok = manifest.payload_sha256 == file.manifest.payload_sha256;
    let csv_ok = file.manifest.csv_sha256.as_ref().is_none_or(|d| Some(d) == manifest.csv_sha256.as_ref());
    let line = format!(
        "replay {}: payload {} ({}), csv {}\n",
        path.display(),
        if json_ok { "identical" } else { "DIFFERS" },
        manifest.payload_sha256,
        if csv_ok { "identical" } else { "DIFFERS" },
    );
    emit(None, line.as_bytes())?;
    Ok(if json_ok && csv_ok && !out.violated { EXIT_OK } else { EXIT_VIOLATION })
}
