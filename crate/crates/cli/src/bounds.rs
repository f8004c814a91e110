//! `sgap bounds`: tabulate every threshold over a parameter grid.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use serde_json::json;
use sparsity_gap::dictionary::io;
use sparsity_gap::gap_bounds::GapThresholds;

use crate::manifest::{payload_bytes, render, RunManifest};
use crate::output::{emit, opt, Format};
use crate::{CliResult, UsageError};

#[derive(Args, Debug, Clone)]
pub struct BoundsArgs {
    /// Sparsity levels: `4`, `1,2,8` or an inclusive range `1..=16`.
    #[arg(long)]
    pub s: String,
    /// Sizes of the competing set, same syntax. Defaults to `t = s` per row.
    #[arg(long)]
    pub t: Option<String>,
    /// Overlaps `|S ∩ T|`, same syntax.
    #[arg(long, default_value = "0")]
    pub delta: String,
    /// Coherence. Taken from `--dict` when absent.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Dictionary file supplying mu, m and N.
    #[arg(long)]
    pub dict: Option<PathBuf>,
    /// Signal dimension for the weak-incoherence thresholds.
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of atoms for the weak-incoherence thresholds.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `4`, `1,2,8`, `1..=16` or `1..16` (exclusive), or a comma list of those.
pub fn parse_list(spec: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad number {x:?} in {spec:?}"));
        if let Some((a, b)) = part.split_once("..=") {
            out.extend(num(a)?..=num(b)?);
        } else if let Some((a, b)) = part.split_once("..") {
            out.extend(num(a)?..num(b)?);
        } else {
            out.push(num(part)?);
        }
    }
    if out.is_empty() {
        return Err(format!("empty list {spec:?}"));
    }
    Ok(out)
}

/// One grid point. Thresholds that do not apply are empty; `flags` says why.
/// A row whose parameters are inconsistent carries `error` instead.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRow {
    pub s: usize,
    pub t: usize,
    pub delta: usize,
    pub mu: f64,
    pub m: Option<usize>,
    pub n_atoms: Option<usize>,
    pub donoho_elad_lhs: usize,
    pub donoho_elad_rhs: Option<f64>,
    pub strong_gap_rhs: Option<f64>,
    pub overlap_rhs: Option<f64>,
    pub overlap_holds: Option<bool>,
    pub t_threshold: Option<f64>,
    pub generic_up_rhs: Option<f64>,
    pub weak_gap_rhs: Option<f64>,
    pub weak_gap_simplified_rhs: Option<f64>,
    pub flags: Vec<String>,
    pub error: Option<String>,
}

pub const BOUNDS_CSV_COLUMNS: [&str; 17] = [
    "s",
    "t",
    "delta",
    "mu",
    "m",
    "n_atoms",
    "donoho_elad_lhs",
    "donoho_elad_rhs",
    "strong_gap_rhs",
    "overlap_rhs",
    "overlap_holds",
    "t_threshold",
    "generic_up_rhs",
    "weak_gap_rhs",
    "weak_gap_simplified_rhs",
    "flags",
    "error",
];

#[derive(Debug, Serialize)]
pub struct BoundsTable {
    pub rows: Vec<BoundsRow>,
}

pub fn table(s_list: &[usize], t_list: Option<&[usize]>, deltas: &[usize], mu: f64, m: Option<usize>, n: Option<usize>) -> BoundsTable {
    let mut rows = Vec::new();
    for &s in s_list {
        let ts = t_list.map(<[usize]>::to_vec).unwrap_or_else(|| vec![s]);
        for &t in &ts {
            for &delta in deltas {
                let row = match GapThresholds::<f64>::evaluate(s, t, delta, mu, m.unwrap_or(0), n.unwrap_or(0)) {
                    Ok(g) => BoundsRow {
                        s,
                        t,
                        delta,
                        mu,
                        m,
                        n_atoms: n,
                        donoho_elad_lhs: g.donoho_elad_lhs,
                        donoho_elad_rhs: g.donoho_elad_rhs,
                        strong_gap_rhs: g.strong_gap_rhs,
                        overlap_rhs: g.overlap_rhs,
                        overlap_holds: g.overlap_holds,
                        t_threshold: g.t_threshold,
                        generic_up_rhs: g.generic_up_rhs,
                        weak_gap_rhs: g.weak_gap_rhs,
                        weak_gap_simplified_rhs: g.weak_gap_simplified_rhs,
                        flags: g.flags,
                        error: None,
                    },
                    Err(e) => BoundsRow {
                        s,
                        t,
                        delta,
                        mu,
                        m,
                        n_atoms: n,
                        donoho_elad_lhs: s + t,
                        donoho_elad_rhs: None,
                        strong_gap_rhs: None,
                        overlap_rhs: None,
                        overlap_holds: None,
                        t_threshold: None,
                        generic_up_rhs: None,
                        weak_gap_rhs: None,
                        weak_gap_simplified_rhs: None,
                        flags: Vec::new(),
                        error: Some(e.to_string()),
                    },
                };
                rows.push(row);
            }
        }
    }
    BoundsTable { rows }
}

impl BoundsTable {
    pub fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| UsageError(e.to_string());
        w.write_record(BOUNDS_CSV_COLUMNS).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                r.s.to_string(),
                r.t.to_string(),
                r.delta.to_string(),
                r.mu.to_string(),
                opt(r.m),
                opt(r.n_atoms),
                r.donoho_elad_lhs.to_string(),
                opt(r.donoho_elad_rhs),
                opt(r.strong_gap_rhs),
                opt(r.overlap_rhs),
                opt(r.overlap_holds),
                opt(r.t_threshold),
                opt(r.generic_up_rhs),
                opt(r.weak_gap_rhs),
                opt(r.weak_gap_simplified_rhs),
                r.flags.join("; "),
                opt(r.error.as_ref()),
            ])
            .map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| UsageError(e.to_string()))
    }
}

pub fn run(args: &BoundsArgs, command_line: Vec<String>) -> CliResult<()> {
    let (mut mu, mut m, mut n) = (args.mu, args.m, args.n);
    let mut provenance = None;
    if let Some(path) = &args.dict {
        let d = io::read::<f64>(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        mu = mu.or(Some(d.coherence()));
        m = m.or(Some(d.m()));
        n = n.or(Some(d.n_atoms()));
        provenance = Some(d.provenance().clone());
    }
    let mu = mu.ok_or("give --mu or --dict")?;
    let s_list = parse_list(&args.s)?;
    let t_list = args.t.as_deref().map(parse_list).transpose()?;
    let deltas = parse_list(&args.delta)?;
    let table = table(&s_list, t_list.as_deref(), &deltas, mu, m, n);
    let bytes = match args.format {
        Format::Csv => table.to_csv()?,
        Format::Json => {
            let config = json!({
                "s": s_list, "t": t_list, "delta": deltas, "mu": mu, "m": m, "n": n,
                "dict": args.dict.as_ref().map(|p| p.display().to_string()),
            });
            let manifest =
                RunManifest::new(command_line, config, provenance, None, &payload_bytes(&table)?, Some(&table.to_csv()?));
            render(&manifest, &table)?.into_bytes()
        }
    };
    emit(args.out.as_deref(), &bytes)
}
