//! Dense complex linear-algebra helpers shared by the rank machinery and the
//! experiments. Decompositions are delegated to nalgebra.

use nalgebra::{Complex, SymmetricEigen, SVD};

use crate::scalar::{CMatrix, CVector, Real};

/// Singular values in weakly decreasing order. Empty for a matrix with a zero
/// dimension.
pub fn singular_values<R: Real>(a: &CMatrix<R>) -> Vec<R> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let svd = SVD::new(a.clone(), false, false);
    let mut sv: Vec<R> = svd.singular_values.iter().copied().collect();
    sort_descending(&mut sv);
    sv
}

fn sort_descending<R: Real>(v: &mut [R]) {
    v.sort_by(|x, y| y.partial_cmp(x).expect("singular values are finite"));
}

/// Backward-stable rank cutoff `sigma_max * max(rows, cols) * eps`.
pub fn default_rank_tolerance<R: Real>(sigma_max: R, rows: usize, cols: usize) -> R {
    sigma_max * R::from_count(rows.max(cols)) * R::machine_epsilon()
}

/// Number of entries of a descending singular-value list strictly above `tol`.
pub fn count_above<R: Real>(sv: &[R], tol: R) -> usize {
    sv.iter().take_while(|&&s| s > tol).count()
}

/// Rank of `a`, with `tol` defaulting to [`default_rank_tolerance`].
/// Returns the rank and the cutoff used.
pub fn rank_and_tolerance<R: Real>(a: &CMatrix<R>, tol: Option<R>) -> (usize, R) {
    let sv = singular_values(a);
    let tol = tol.unwrap_or_else(|| {
        default_rank_tolerance(sv.first().copied().unwrap_or_else(R::zero), a.nrows(), a.ncols())
    });
    (count_above(&sv, tol), tol)
}

/// Squared Frobenius norm from the entries.
pub fn frobenius_norm_sq<R: Real>(a: &CMatrix<R>) -> R {
    a.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr())
}

pub fn spectral_norm<R: Real>(a: &CMatrix<R>) -> R {
    singular_values(a).first().copied().unwrap_or_else(R::zero)
}

pub fn vector_norm<R: Real>(v: &CVector<R>) -> R {
    v.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Largest entrywise deviation of `a` from its conjugate transpose.
pub fn hermitian_defect<R: Real>(a: &CMatrix<R>) -> R {
    let mut worst = R::zero();
    for j in 0..a.ncols() {
        for i in 0..=j.min(a.nrows().saturating_sub(1)) {
            let d = (a[(i, j)] - a[(j, i)].conj()).norm_sqr().sqrt();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Eigenvalues of the Hermitian part of a square matrix, ascending.
pub fn hermitian_eigenvalues<R: Real>(a: &CMatrix<R>) -> Vec<R> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let half = Complex::new(R::lit(0.5), R::zero());
    let sym = (a + a.adjoint()) * half;
    let mut ev: Vec<R> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    ev
}

/// Orthonormal basis of the numerical range of `a`: the left singular vectors
/// whose singular values exceed the cutoff. Returns the basis and the cutoff.
pub fn range_basis<R: Real>(a: &CMatrix<R>, tol: Option<R>) -> (CMatrix<R>, R) {
    if a.ncols() == 0 {
        return (CMatrix::zeros(a.nrows(), 0), R::zero());
    }
    let svd = SVD::new(a.clone(), true, false);
    let u = svd.u.expect("left singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(R::zero(), |m, s| if s > m { s } else { m });
    let tol = tol.unwrap_or_else(|| default_rank_tolerance(sigma_max, a.nrows(), a.ncols()));
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > tol)
        .collect();
    (u.select_columns(keep.iter()), tol)
}

/// `v - Q Q* v` for a matrix `q` with orthonormal columns.
pub fn project_out<R: Real>(q: &CMatrix<R>, v: &CVector<R>) -> CVector<R> {
    if q.ncols() == 0 {
        return v.clone();
    }
    let coeffs = q.adjoint() * v;
    v - q * coeffs
}

/// `(I - Q Q*) A` for a matrix `q` with orthonormal columns.
pub fn project_out_matrix<R: Real>(q: &CMatrix<R>, a: &CMatrix<R>) -> CMatrix<R> {
    if q.ncols() == 0 {
        return a.clone();
    }
    a - q * (q.adjoint() * a)
}

/// Effective condition number over the singular values above the rank cutoff.
pub fn effective_condition_number<R: Real>(a: &CMatrix<R>) -> R {
    let sv = singular_values(a);
    let Some(&top) = sv.first() else {
        return R::one();
    };
    let tol = default_rank_tolerance(top, a.nrows(), a.ncols());
    match sv.iter().rev().find(|&&s| s > tol) {
        Some(&smallest) => top / smallest,
        None => R::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> CMatrix<f64> {
        CMatrix::from_row_slice(rows, cols, &data.iter().map(|&x| cx(x)).collect::<Vec<_>>())
    }

    #[test]
    fn singular_values_are_sorted() {
        let a = real_matrix(3, 3, &[1.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 2.0]);
        assert_eq!(singular_values(&a).len(), 3);
        let sv = singular_values(&a);
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 2.0).abs() < 1e-14 && (sv[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn range_basis_of_rank_one() {
        let a = real_matrix(3, 2, &[1.0, 2.0, 1.0, 2.0, 0.0, 0.0]);
        let (q, _) = range_basis(&a, None);
        assert_eq!(q.ncols(), 1);
        let v = CVector::from_vec(vec![cx(1.0), cx(1.0), cx(0.0)]);
        assert!(vector_norm(&project_out(&q, &v)) < 1e-14);
    }

    #[test]
    fn empty_matrix_has_no_singular_values() {
        let a: CMatrix<f64> = CMatrix::zeros(4, 0);
        assert!(singular_values(&a).is_empty());
        assert_eq!(rank_and_tolerance(&a, None).0, 0);
    }
}
