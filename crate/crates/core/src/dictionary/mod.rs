//! Dictionaries of unit-norm atoms and their two geometric invariants,
//! redundancy and coherence.

mod atom_set;
mod build;
pub mod io;

use std::fmt;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

pub use atom_set::AtomSet;
pub use build::TightFrameOptions;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{CMatrix, Real};

/// Column-norm tolerance at double precision.
pub const UNIT_NORM_TOL: f64 = 1e-12;
/// Tightness tolerance `|rho - N/m|` at double precision.
pub const TIGHTNESS_TOL: f64 = 1e-8;
/// Slack allowed on the analytic inequalities `rho >= N/m` and the Welch bound.
const INEQUALITY_SLACK: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DictionaryKind {
    /// Identity concatenated with the unitary DFT basis.
    SpikesSines,
    /// Independent uniform draws on the complex unit sphere.
    RandomUnitNorm,
    /// Unit-norm tight frame from alternating projections.
    RandomTightFrame,
    /// The standard orthonormal basis.
    Identity,
    /// Caller-supplied matrix.
    Custom,
}

impl fmt::Display for DictionaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::SpikesSines => "spikes-sines",
            Self::RandomUnitNorm => "random-unit-norm",
            Self::RandomTightFrame => "random-tight-frame",
            Self::Identity => "identity",
            Self::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// How a dictionary was built. Enough to rebuild it bit-for-bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: DictionaryKind,
    pub m: usize,
    pub n_atoms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Alternating-projection iterations, for tight frames.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

impl Provenance {
    pub fn new(kind: DictionaryKind, m: usize, n_atoms: usize) -> Self {
        Self { kind, m, n_atoms, seed: None, iterations: None }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(m={}, N={}", self.kind, self.m, self.n_atoms)?;
        if let Some(seed) = self.seed {
            write!(f, ", seed={seed}")?;
        }
        write!(f, ")")
    }
}

/// An `m x N` complex matrix with unit-norm columns spanning `C^m`.
///
/// Immutable after construction; coherence and redundancy are computed once.
#[derive(Clone, Debug)]
pub struct Dictionary<R: Real> {
    atoms: CMatrix<R>,
    coherence: R,
    redundancy: R,
    provenance: Provenance,
}

impl<R: Real> Dictionary<R> {
    /// Validates `atoms` and caches its metrics.
    ///
    /// Rejects non-unit columns (tolerance [`UNIT_NORM_TOL`]) and matrices
    /// whose columns do not span the ambient space.
    pub fn from_matrix(atoms: CMatrix<R>, mut provenance: Provenance) -> Result<Self> {
        let (m, n) = atoms.shape();
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter(format!("empty dictionary ({m}x{n})")));
        }
        let tol = R::tol(UNIT_NORM_TOL);
        for (j, col) in atoms.column_iter().enumerate() {
            let norm = col.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
            if (norm - R::one()).abs() > tol {
                return Err(Error::NotUnitNorm { column: j, norm: norm.as_f64() });
            }
        }
        let sv = linalg::singular_values(&atoms);
        let rank = linalg::count_above(&sv, linalg::default_rank_tolerance(sv[0], m, n));
        if rank != m {
            return Err(Error::NotSpanning { rank, m });
        }
        provenance.m = m;
        provenance.n_atoms = n;
        let redundancy = sv[0] * sv[0];
        let coherence = coherence(&atoms);
        Ok(Self { atoms, coherence, redundancy, provenance })
    }

    pub fn m(&self) -> usize {
        self.atoms.nrows()
    }

    pub fn n_atoms(&self) -> usize {
        self.atoms.ncols()
    }

    pub fn atoms(&self) -> &CMatrix<R> {
        &self.atoms
    }

    /// Coherence `max_{j != k} |<phi_j, phi_k>|`.
    pub fn coherence(&self) -> R {
        self.coherence
    }

    /// Redundancy `||Phi||^2`.
    pub fn redundancy(&self) -> R {
        self.redundancy
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `N / m`, the redundancy of a tight frame with these dimensions.
    pub fn aspect_ratio(&self) -> R {
        R::from_count(self.n_atoms()) / R::from_count(self.m())
    }

    pub fn welch_bound(&self) -> R {
        welch_lower_bound(self.m(), self.n_atoms())
    }

    /// `rho - N/m`; nonnegative up to rounding, zero for tight frames.
    pub fn tightness_residual(&self) -> R {
        self.redundancy - self.aspect_ratio()
    }

    pub fn is_tight_frame(&self) -> bool {
        self.tightness_residual().abs() <= R::tol(TIGHTNESS_TOL)
    }

    /// Column submatrix `Phi_S`.
    pub fn subdictionary(&self, set: &AtomSet) -> CMatrix<R> {
        self.atoms.select_columns(set.indices())
    }

    /// Gram matrix `Phi_S^* Phi_S`.
    pub fn gram(&self, set: &AtomSet) -> CMatrix<R> {
        let sub = self.subdictionary(set);
        sub.adjoint() * sub
    }

    pub fn inner_product(&self, j: usize, k: usize) -> Complex<R> {
        self.atoms.column(j).dotc(&self.atoms.column(k))
    }

    /// Checks the structural invariants every dictionary must satisfy:
    /// `rho >= N/m` and, for `N > m`, coherence at least the Welch bound.
    pub fn check_invariants(&self) -> Result<()> {
        let slack = R::tol(INEQUALITY_SLACK);
        if self.redundancy < self.aspect_ratio() - slack {
            return Err(Error::HypothesisViolated(format!(
                "redundancy {} below N/m = {}",
                self.redundancy,
                self.aspect_ratio()
            )));
        }
        if self.n_atoms() > self.m() && self.coherence < self.welch_bound() - slack {
            return Err(Error::HypothesisViolated(format!(
                "coherence {} below Welch bound {}",
                self.coherence,
                self.welch_bound()
            )));
        }
        if self.coherence > R::one() + slack {
            return Err(Error::HypothesisViolated(format!("coherence {} exceeds 1", self.coherence)));
        }
        Ok(())
    }

    /// Tests the weak-incoherence tight-frame condition `||Phi||^2 = N/m`
    /// and `mu <= c / ln N`.
    pub fn check_weak_incoherence(&self, c: R) -> Result<WeakIncoherenceCheck<R>> {
        if c <= R::zero() {
            return Err(Error::InvalidParameter(format!("constant c must be positive, got {c}")));
        }
        if self.n_atoms() < 2 {
            return Err(Error::InvalidParameter("weak incoherence needs N >= 2".into()));
        }
        let tightness_residual = self.tightness_residual();
        let tightness_tolerance = R::tol(TIGHTNESS_TOL);
        let coherence_limit = c / R::from_count(self.n_atoms()).ln();
        let tight = tightness_residual.abs() <= tightness_tolerance;
        let incoherent = self.coherence <= coherence_limit;
        Ok(WeakIncoherenceCheck {
            c,
            tight,
            tightness_residual,
            tightness_margin: tightness_tolerance - tightness_residual.abs(),
            coherence: self.coherence,
            coherence_limit,
            coherence_margin: coherence_limit - self.coherence,
            incoherent,
            passes: tight && incoherent,
        })
    }
}

/// Outcome of [`Dictionary::check_weak_incoherence`]. Margins are positive
/// when the corresponding sub-check passes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakIncoherenceCheck<R> {
    pub c: R,
    pub tight: bool,
    pub tightness_residual: R,
    pub tightness_margin: R,
    pub coherence: R,
    pub coherence_limit: R,
    pub coherence_margin: R,
    pub incoherent: bool,
    pub passes: bool,
}

/// Largest off-diagonal Gram magnitude over all column pairs. Zero for a
/// single column.
pub fn coherence<R: Real>(atoms: &CMatrix<R>) -> R {
    let gram = atoms.adjoint() * atoms;
    let n = gram.ncols();
    let mut worst = R::zero();
    for k in 0..n {
        for j in 0..k {
            let v = gram[(j, k)].norm_sqr();
            if v > worst {
                worst = v;
            }
        }
    }
    worst.sqrt()
}

/// Squared largest singular value.
pub fn redundancy<R: Real>(atoms: &CMatrix<R>) -> R {
    let s = linalg::spectral_norm(atoms);
    s * s
}

/// Welch lower bound on the coherence of `N` unit vectors in `C^m`:
/// `sqrt((N - m) / (m (N - 1)))`, and zero when `N <= m`.
pub fn welch_lower_bound<R: Real>(m: usize, n_atoms: usize) -> R {
    if n_atoms <= m || m == 0 {
        return R::zero();
    }
    let (m, n) = (R::from_count(m), R::from_count(n_atoms));
    ((n - m) / (m * (n - R::one()))).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use nalgebra::Complex;

    #[test]
    fn welch_values() {
        assert_eq!(welch_lower_bound::<f64>(5, 5), 0.0);
        assert!((welch_lower_bound::<f64>(4, 8) - (4.0f64 / 28.0).sqrt()).abs() < 1e-15);
        assert!((welch_lower_bound::<f64>(4, 8) - 0.377964).abs() < 1e-6);
        assert!((welch_lower_bound::<f64>(8, 32) - 0.311086).abs() < 1e-6);
    }

    #[test]
    fn duplicated_atom_has_coherence_one() {
        let e0 = [cx(1.0), cx(0.0)];
        let e1 = [cx(0.0), cx(1.0)];
        let data: Vec<Complex<f64>> = e0.iter().chain(&e0).chain(&e1).copied().collect();
        let atoms = CMatrix::from_column_slice(2, 3, &data);
        let d = Dictionary::from_matrix(atoms, Provenance::new(DictionaryKind::Custom, 2, 3)).unwrap();
        assert!((d.coherence() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_unit_columns() {
        let atoms = CMatrix::from_column_slice(2, 2, &[cx(2.0), cx(0.0), cx(0.0), cx(1.0)]);
        let err = Dictionary::<f64>::from_matrix(atoms, Provenance::new(DictionaryKind::Custom, 2, 2));
        assert!(matches!(err, Err(Error::NotUnitNorm { column: 0, .. })));
    }

    #[test]
    fn rejects_non_spanning() {
        let atoms = CMatrix::from_column_slice(2, 2, &[cx(1.0), cx(0.0), cx(-1.0), cx(0.0)]);
        let err = Dictionary::<f64>::from_matrix(atoms, Provenance::new(DictionaryKind::Custom, 2, 2));
        assert!(matches!(err, Err(Error::NotSpanning { rank: 1, m: 2 })));
    }
}
