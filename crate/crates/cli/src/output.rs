use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;

use crate::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Writes to `path`, or to stdout when `path` is `None` or `-`.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) if p != Path::new("-") => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(p, bytes)?;
        }
        _ => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

/// Rounds to 12 significant digits for human-readable output, so that
/// `0.25000000000000006` prints as `0.25`.
pub fn human(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    format!("{x:.11e}").parse::<f64>().map(|r| r.to_string()).unwrap_or_else(|_| x.to_string())
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_rounding() {
        assert_eq!(human(0.25000000000000006), "0.25");
        assert_eq!(human(13.150971698084906), "13.1509716981");
        assert_eq!(human(f64::INFINITY), "inf");
        assert_eq!(human(2.0), "2");
    }
}
