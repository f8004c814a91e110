//! `sgdict-1` dictionary files.
//!
//! A dictionary is stored as two files:
//!
//! * `<name>`: JSON metadata (`format`, `m`, `n_atoms`, `provenance`, cached
//!   metrics, payload file name and its SHA-256);
//! * `<name>.bin`: the matrix, column-major, each entry written as real then
//!   imaginary part, both little-endian `f64`.
//!
//! Reading recomputes coherence and redundancy from the payload and rejects
//! files whose cached metrics disagree.

use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::Complex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Dictionary, Provenance};
use crate::error::{Error, Result};
use crate::scalar::{CMatrix, Real};

pub const FORMAT_VERSION: &str = "sgdict-1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DictionaryMetadata {
    pub format: String,
    pub m: usize,
    pub n_atoms: usize,
    pub provenance: Provenance,
    pub coherence: f64,
    pub redundancy: f64,
    pub welch_bound: f64,
    pub payload: String,
    pub payload_sha256: String,
}

pub fn payload_path(metadata_path: &Path) -> PathBuf {
    let mut name = metadata_path.file_name().unwrap_or_default().to_os_string();
    name.push(".bin");
    metadata_path.with_file_name(name)
}

pub fn encode_payload<R: Real>(atoms: &CMatrix<R>) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 * atoms.len());
    // nalgebra storage is column-major already
    for z in atoms.iter() {
        out.extend_from_slice(&z.re.as_f64().to_le_bytes());
        out.extend_from_slice(&z.im.as_f64().to_le_bytes());
    }
    out
}

pub fn decode_payload<R: Real>(bytes: &[u8], m: usize, n_atoms: usize) -> Result<CMatrix<R>> {
    let expected = 16 * m * n_atoms;
    if bytes.len() != expected {
        return Err(Error::Format(format!("payload has {} bytes, expected {expected}", bytes.len())));
    }
    let entries: Vec<Complex<R>> = bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8-byte chunk"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8-byte chunk"));
            Complex::new(R::lit(re), R::lit(im))
        })
        .collect();
    Ok(CMatrix::from_column_slice(m, n_atoms, &entries))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

pub fn metadata<R: Real>(dict: &Dictionary<R>, payload_name: &str, payload: &[u8]) -> DictionaryMetadata {
    DictionaryMetadata {
        format: FORMAT_VERSION.to_string(),
        m: dict.m(),
        n_atoms: dict.n_atoms(),
        provenance: dict.provenance().clone(),
        coherence: dict.coherence().as_f64(),
        redundancy: dict.redundancy().as_f64(),
        welch_bound: dict.welch_bound().as_f64(),
        payload: payload_name.to_string(),
        payload_sha256: hex(&Sha256::digest(payload)),
    }
}

/// Writes `path` and its `.bin` payload. Returns the metadata written.
pub fn write<R: Real>(dict: &Dictionary<R>, path: &Path) -> Result<DictionaryMetadata> {
    let payload = encode_payload(dict.atoms());
    let bin = payload_path(path);
    let name = bin
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Format(format!("unusable path {}", path.display())))?
        .to_string();
    let meta = metadata(dict, &name, &payload);
    fs::write(&bin, &payload)?;
    fs::write(path, serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(meta)
}

pub fn read_metadata(path: &Path) -> Result<DictionaryMetadata> {
    let meta: DictionaryMetadata = serde_json::from_slice(&fs::read(path)?)?;
    if meta.format != FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported format {:?}", meta.format)));
    }
    if meta.provenance.m != meta.m || meta.provenance.n_atoms != meta.n_atoms {
        return Err(Error::Format("provenance dimensions disagree with header".into()));
    }
    Ok(meta)
}

/// Loads a dictionary, verifying the payload checksum and cached metrics.
pub fn read<R: Real>(path: &Path) -> Result<Dictionary<R>> {
    let meta = read_metadata(path)?;
    let bin = path.with_file_name(&meta.payload);
    let payload = fs::read(&bin)?;
    let digest = hex(&Sha256::digest(&payload));
    if digest != meta.payload_sha256 {
        return Err(Error::Format(format!("payload checksum mismatch for {}", bin.display())));
    }
    let atoms = decode_payload::<R>(&payload, meta.m, meta.n_atoms)?;
    let dict = Dictionary::from_matrix(atoms, meta.provenance.clone())?;
    let tol = R::tol(1e-12).as_f64();
    let agree = |cached: f64, fresh: f64| (cached - fresh).abs() <= tol * cached.abs().max(1.0);
    if !agree(meta.coherence, dict.coherence().as_f64()) || !agree(meta.redundancy, dict.redundancy().as_f64()) {
        return Err(Error::Format("cached metrics disagree with payload".into()));
    }
    Ok(dict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payload_layout_is_column_major_interleaved() {
        let atoms = CMatrix::from_column_slice(
            2,
            1,
            &[Complex::new(0.6f64, 0.0), Complex::new(0.0, 0.8)],
        );
        let bytes = encode_payload(&atoms);
        assert_eq!(bytes.len(), 32);
        assert_eq!(&bytes[..8], &0.6f64.to_le_bytes());
        assert_eq!(&bytes[8..16], &0.0f64.to_le_bytes());
        assert_eq!(&bytes[16..24], &0.0f64.to_le_bytes());
        assert_eq!(&bytes[24..], &0.8f64.to_le_bytes());
        let back: CMatrix<f64> = decode_payload(&bytes, 2, 1).unwrap();
        assert_eq!(back, atoms);
    }

    #[test]
    fn round_trip_preserves_metrics() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.sgdict");
        let d = Dictionary::<f64>::random_unit_norm(6, 10, 4).unwrap();
        write(&d, &path).unwrap();
        assert!(payload_path(&path).exists());
        let back = read::<f64>(&path).unwrap();
        assert_eq!(back.atoms(), d.atoms());
        assert_eq!(back.coherence(), d.coherence());
        assert_eq!(back.redundancy(), d.redundancy());
        assert_eq!(back.provenance(), d.provenance());
    }

    #[test]
    fn corrupted_payload_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.sgdict");
        let d = Dictionary::<f64>::spikes_sines(4).unwrap();
        write(&d, &path).unwrap();
        let bin = payload_path(&path);
        let mut bytes = fs::read(&bin).unwrap();
        bytes[3] ^= 0x40;
        fs::write(&bin, bytes).unwrap();
        assert!(matches!(read::<f64>(&path), Err(Error::Format(_))));
    }

    #[test]
    fn wrong_version_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.sgdict");
        let d = Dictionary::<f64>::spikes_sines(4).unwrap();
        write(&d, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("sgdict-1", "sgdict-9");
        fs::write(&path, text).unwrap();
        assert!(matches!(read::<f64>(&path), Err(Error::Format(_))));
    }
}
