//! `sgap dict`: build, save and inspect dictionaries.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use sparsity_gap::dictionary::io;
use sparsity_gap::dictionary::WeakIncoherenceCheck;
use sparsity_gap::{Dictionary64, DictionaryKind, Provenance};

use crate::config::build_dictionary;
use crate::output::{emit, human, Format};
use crate::{CliResult, UsageError};

#[derive(Args, Debug, Clone)]
pub struct DictArgs {
    /// Dictionary family to build.
    #[arg(long, value_parser = parse_kind, required_unless_present = "inspect")]
    pub kind: Option<DictionaryKind>,
    /// Signal dimension.
    #[arg(long, required_unless_present = "inspect")]
    pub m: Option<usize>,
    /// Number of atoms (random families only).
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed for random families.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the dictionary here (sgdict-1 metadata; payload goes to `<out>.bin`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Load an existing dictionary file instead of building one.
    #[arg(long, conflicts_with_all = ["kind", "m", "n", "seed", "out"])]
    pub inspect: Option<PathBuf>,
    /// Constant `c` of the weak-incoherence check `mu <= c / ln N`.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Print the summary as JSON instead of text.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

pub fn parse_kind(s: &str) -> Result<DictionaryKind, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
        format!("unknown kind {s:?}; expected spikes-sines, random-unit-norm, random-tight-frame or identity")
    })
}

#[derive(Debug, Serialize)]
pub struct DictSummary {
    pub provenance: Provenance,
    pub m: usize,
    pub n_atoms: usize,
    pub coherence: f64,
    pub redundancy: f64,
    pub welch_bound: f64,
    pub tightness_residual: f64,
    pub weak_incoherence: WeakIncoherenceCheck<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
}

pub fn summarize(dict: &Dictionary64, c: f64, file: Option<PathBuf>) -> CliResult<DictSummary> {
    Ok(DictSummary {
        provenance: dict.provenance().clone(),
        m: dict.m(),
        n_atoms: dict.n_atoms(),
        coherence: dict.coherence(),
        redundancy: dict.redundancy(),
        welch_bound: dict.welch_bound(),
        tightness_residual: dict.tightness_residual(),
        weak_incoherence: dict.check_weak_incoherence(c)?,
        file,
    })
}

pub fn render_text(s: &DictSummary) -> String {
    let w = &s.weak_incoherence;
    let mut out = String::new();
    let _ = writeln!(out, "dictionary {}", s.provenance);
    if let Some(f) = &s.file {
        let _ = writeln!(out, "file       {}", f.display());
    }
    let _ = writeln!(out, "mu = {}", human(s.coherence));
    let _ = writeln!(out, "rho = {}", human(s.redundancy));
    let _ = writeln!(out, "welch_bound = {}", human(s.welch_bound));
    let _ = writeln!(out, "tight_frame = {} (| ||Phi||^2 - N/m | = {:.3e})", w.tight, s.tightness_residual.abs());
    let _ = writeln!(
        out,
        "weakly_incoherent(c = {}) = {} (mu <= c/ln N = {})",
        human(w.c),
        w.passes,
        human(w.coherence_limit)
    );
    out
}

pub fn run(args: &DictArgs) -> CliResult<()> {
    let (dict, file) = match &args.inspect {
        Some(path) => (io::read::<f64>(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?, Some(path.clone())),
        None => {
            let kind = args.kind.ok_or("--kind is required")?;
            let m = args.m.ok_or("--m is required")?;
            let dict = build_dictionary(kind, m, args.n, args.seed)?;
            if let Some(out) = &args.out {
                io::write(&dict, out)?;
            }
            (dict, args.out.clone())
        }
    };
    let summary = summarize(&dict, args.c, file)?;
    let text = match args.format {
        Some(Format::Json) => serde_json::to_string_pretty(&summary)? + "\n",
        Some(Format::Csv) => return Err("dict prints text or json".into()),
        None => render_text(&summary),
    };
    emit(None, text.as_bytes())
}
