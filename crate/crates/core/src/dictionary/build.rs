use nalgebra::{Complex, SVD};

use super::{Dictionary, DictionaryKind, Provenance, TIGHTNESS_TOL};
use crate::error::{Error, Result};
use crate::rng;
use crate::scalar::{cx, CMatrix, Real};

/// Stopping rule for [`Dictionary::random_tight_frame_with`].
#[derive(Clone, Copy, Debug)]
pub struct TightFrameOptions {
    pub max_iterations: usize,
    /// Bound on `|rho - N/m|` (double-precision reference value).
    pub rho_tol: f64,
    /// Bound on the deviation of column norms from 1 after the tightening step.
    pub norm_tol: f64,
}

impl Default for TightFrameOptions {
    fn default() -> Self {
        Self { max_iterations: 10_000, rho_tol: TIGHTNESS_TOL, norm_tol: TIGHTNESS_TOL }
    }
}

fn normalize_columns<R: Real>(a: &mut CMatrix<R>) -> R {
    let mut worst = R::zero();
    for mut col in a.column_iter_mut() {
        let norm = col.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        let dev = (norm - R::one()).abs();
        if dev > worst {
            worst = dev;
        }
        let inv = cx(R::one() / norm);
        col *= inv;
    }
    worst
}

fn gaussian_matrix<R: Real>(m: usize, n: usize, seed: u64) -> CMatrix<R> {
    let mut rng = rng::rng_from_seed(seed);
    // column-major fill so column j depends only on draws for columns <= j
    let data: Vec<Complex<R>> = (0..m * n).map(|_| rng::complex_gaussian(&mut rng)).collect();
    CMatrix::from_column_slice(m, n, &data)
}

impl<R: Real> Dictionary<R> {
    /// The `m x m` identity, an orthonormal basis.
    pub fn identity(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        Self::from_matrix(CMatrix::identity(m, m), Provenance::new(DictionaryKind::Identity, m, m))
    }

    /// Identity concatenated with the unitary DFT basis with entries
    /// `exp(-2 pi i j k / m) / sqrt(m)`; `N = 2m`, coherence `1/sqrt(m)`.
    pub fn spikes_sines(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("spikes-sines needs m >= 2, got {m}")));
        }
        let scale = 1.0 / (m as f64).sqrt();
        let atoms = CMatrix::from_fn(m, 2 * m, |j, k| {
            if k < m {
                if j == k { cx(R::one()) } else { cx(R::zero()) }
            } else {
                // reduce j*k mod m before forming the angle to keep it exact
                let phase = ((j * (k - m)) % m) as f64;
                let angle = -2.0 * std::f64::consts::PI * phase / m as f64;
                Complex::new(R::lit(angle.cos() * scale), R::lit(angle.sin() * scale))
            }
        });
        Self::from_matrix(atoms, Provenance::new(DictionaryKind::SpikesSines, m, 2 * m))
    }

    /// Independent columns uniformly distributed on the complex unit sphere.
    pub fn random_unit_norm(m: usize, n_atoms: usize, seed: u64) -> Result<Self> {
        if m == 0 || n_atoms < m {
            return Err(Error::InvalidParameter(format!(
                "random unit-norm dictionary needs n_atoms >= m >= 1, got m = {m}, N = {n_atoms}"
            )));
        }
        let mut atoms = gaussian_matrix::<R>(m, n_atoms, seed);
        normalize_columns(&mut atoms);
        let mut provenance = Provenance::new(DictionaryKind::RandomUnitNorm, m, n_atoms);
        provenance.seed = Some(seed);
        Self::from_matrix(atoms, provenance)
    }

    pub fn random_tight_frame(m: usize, n_atoms: usize, seed: u64) -> Result<Self> {
        Self::random_tight_frame_with(m, n_atoms, seed, TightFrameOptions::default())
    }

    /// Unit-norm tight frame by alternating projections: replace the matrix
    /// by `sqrt(N/m)` times its polar factor, then renormalize the columns,
    /// until `|rho - N/m|` and the column-norm deviation both meet tolerance.
    pub fn random_tight_frame_with(
        m: usize,
        n_atoms: usize,
        seed: u64,
        options: TightFrameOptions,
    ) -> Result<Self> {
        if m == 0 || n_atoms <= m {
            return Err(Error::InvalidParameter(format!(
                "tight frame needs n_atoms > m >= 1, got m = {m}, N = {n_atoms}"
            )));
        }
        let target = R::from_count(n_atoms) / R::from_count(m);
        let scale = cx(target.sqrt());
        let (rho_tol, norm_tol) = (R::tol(options.rho_tol), R::tol(options.norm_tol));

        let mut atoms = gaussian_matrix::<R>(m, n_atoms, seed);
        normalize_columns(&mut atoms);
        let mut norm_residual = R::max_value().unwrap_or_else(R::one);
        let mut rho_residual = R::max_value().unwrap_or_else(R::one);
        for iteration in 0..=options.max_iterations {
            let svd = SVD::new(atoms.clone(), true, true);
            let sigma_max = svd.singular_values.iter().copied().fold(R::zero(), |a, s| if s > a { s } else { a });
            rho_residual = (sigma_max * sigma_max - target).abs();
            if rho_residual <= rho_tol && norm_residual <= norm_tol {
                let mut provenance = Provenance::new(DictionaryKind::RandomTightFrame, m, n_atoms);
                provenance.seed = Some(seed);
                provenance.iterations = Some(iteration);
                return Self::from_matrix(atoms, provenance);
            }
            if iteration == options.max_iterations {
                break;
            }
            let u = svd.u.expect("left singular vectors requested");
            let v_t = svd.v_t.expect("right singular vectors requested");
            atoms = (u * v_t) * scale;
            norm_residual = normalize_columns(&mut atoms);
        }
        Err(Error::TightFrameNotConverged {
            iterations: options.max_iterations,
            rho_residual: rho_residual.as_f64(),
            norm_residual: norm_residual.as_f64(),
        })
    }
}
