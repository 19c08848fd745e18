//! Dense complex linear algebra with explicit rank tolerances.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Rank tolerance relative to the largest singular value.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("expected {expected} vectors, got {actual}")]
    CountMismatch { expected: usize, actual: usize },
    #[error("reference vectors are linearly dependent")]
    DependentReference,
    #[error("vector {index} lies outside the reference span (relative residual {residual:.3e})")]
    OutsideSpan { index: usize, residual: f64 },
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Singular values in decreasing order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Numerical rank: number of singular values above `tol·σ_max`.
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&smax) if smax > 0.0 => s.iter().filter(|&&v| v > tol * smax).count(),
        _ => 0,
    }
}

/// Orthonormal basis of the null space of `m`.
pub fn kernel_basis(m: &CMatrix, tol: f64) -> Vec<CVector> {
    let n = m.ncols();
    if n == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 || max_abs(m) == 0.0 {
        return (0..n).map(|j| unit(n, j)).collect();
    }
    // Pad with zero rows so the SVD returns a full n×n right factor.
    let rows = m.nrows().max(n);
    let mut padded = CMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    (0..n)
        .filter(|&i| svd.singular_values[i] <= tol * smax)
        .map(|i| v_t.row(i).adjoint())
        .collect()
}

pub fn unit(n: usize, j: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[j] = c(1.0, 0.0);
    v
}

/// Column indices spanning the column space of `m`, chosen greedily by largest
/// residual norm after projecting out earlier choices. Ties go to the lowest index.
/// The number of pivots equals the SVD rank.
pub fn image_pivots(m: &CMatrix, tol: f64) -> (Vec<usize>, Vec<CVector>) {
    let r = rank(m, tol);
    let mut residual: Vec<CVector> = (0..m.ncols()).map(|j| m.column(j).into_owned()).collect();
    let mut pivots = Vec::with_capacity(r);
    let mut q: Vec<CVector> = Vec::with_capacity(r);
    for _ in 0..r {
        let mut best: Option<(usize, f64)> = None;
        for (j, col) in residual.iter().enumerate() {
            if pivots.contains(&j) {
                continue;
            }
            let nrm = col.norm();
            // Strictly larger wins, up to a relative slack, so ties keep the lowest index.
            if best.is_none_or(|(_, bn)| nrm > bn * (1.0 + 1e-12)) {
                best = Some((j, nrm));
            }
        }
        let (j, nrm) = best.expect("rank bounded by column count");
        let e = &residual[j] / c(nrm, 0.0);
        for col in residual.iter_mut() {
            for _ in 0..2 {
                let proj = e.dotc(col);
                *col -= &e * proj;
            }
        }
        pivots.push(j);
        q.push(e);
    }
    let basis = pivots.iter().map(|&j| m.column(j).into_owned()).collect();
    (pivots, basis)
}

pub fn from_columns(cols: &[CVector], nrows: usize) -> CMatrix {
    let mut m = CMatrix::zeros(nrows, cols.len());
    for (j, v) in cols.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

pub fn det(m: &CMatrix) -> C64 {
    if m.nrows() == 0 {
        return c(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

/// Least-squares solution of `a·x = b` together with the residual `‖ax−b‖/max(‖b‖, 1)`.
pub fn least_squares(a: &CMatrix, b: &CVector, tol: f64) -> (CVector, f64) {
    let scale = b.norm().max(1.0);
    if a.ncols() == 0 {
        return (CVector::zeros(0), b.norm() / scale);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let x = svd
        .solve(b, tol * smax)
        .expect("both singular factors computed");
    let res = (a * &x - b).norm();
    (x, res / scale)
}

/// Determinant of the coordinate matrix of `candidate` in terms of `reference`.
pub fn basis_change_det(
    reference: &[CVector],
    candidate: &[CVector],
    tol: f64,
) -> Result<C64, LinalgError> {
    if reference.len() != candidate.len() {
        return Err(LinalgError::CountMismatch {
            expected: reference.len(),
            actual: candidate.len(),
        });
    }
    let k = reference.len();
    if k == 0 {
        return Ok(c(1.0, 0.0));
    }
    let n = reference[0].len();
    if reference.iter().chain(candidate).any(|v| v.len() != n) {
        return Err(LinalgError::Shape("vectors of unequal length".into()));
    }
    let r = from_columns(reference, n);
    if rank(&r, tol) < k {
        return Err(LinalgError::DependentReference);
    }
    let mut coords = CMatrix::zeros(k, k);
    for (j, v) in candidate.iter().enumerate() {
        let (x, residual) = least_squares(&r, v, tol);
        if residual > tol.sqrt() {
            return Err(LinalgError::OutsideSpan { index: j, residual });
        }
        coords.set_column(j, &x);
    }
    Ok(det(&coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
        CMatrix::from_row_iterator(rows, cols, data.iter().map(|v| c(*v, 0.0)))
    }

    #[test]
    fn kernel_of_zero_matrix() {
        assert_eq!(kernel_basis(&CMatrix::zeros(3, 3), 1e-9).len(), 3);
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let m = real(1, 3, &[1.0, 1.0, 0.0]);
        let k = kernel_basis(&m, 1e-9);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&m * v).norm() < 1e-12);
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rank_one_outer_product_has_one_pivot() {
        let u = CVector::from_vec(vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0)]);
        let v = CVector::from_vec(vec![c(0.5, 0.0), c(-1.0, 2.0), c(3.0, 0.0)]);
        let m = &u * v.transpose();
        let (piv, basis) = image_pivots(&m, 1e-9);
        assert_eq!(piv.len(), 1);
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn identity_pivots_are_all_columns_in_order() {
        let (piv, _) = image_pivots(&CMatrix::identity(4, 4), 1e-9);
        assert_eq!(piv, vec![0, 1, 2, 3]);
    }

    #[test]
    fn basis_change_examples() {
        let e: Vec<CVector> = (0..2).map(|j| unit(2, j)).collect();
        assert!((basis_change_det(&e, &e, 1e-9).unwrap() - 1.0).norm() < 1e-14);
        let swapped = vec![e[1].clone(), e[0].clone()];
        assert!((basis_change_det(&e, &swapped, 1e-9).unwrap() + 1.0).norm() < 1e-14);
        let scaled = vec![&e[0] * c(2.0, 0.0), &e[1] * c(3.0, 0.0)];
        assert!((basis_change_det(&e, &scaled, 1e-9).unwrap() - 6.0).norm() < 1e-12);
    }

    #[test]
    fn basis_change_rejects_vectors_outside_span() {
        let reference = vec![unit(3, 0), unit(3, 1)];
        let candidate = vec![unit(3, 0), unit(3, 2)];
        assert!(matches!(
            basis_change_det(&reference, &candidate, 1e-9),
            Err(LinalgError::OutsideSpan { index: 1, .. })
        ));
    }

    #[test]
    fn determinant_of_triangular() {
        let m = real(3, 3, &[2.0, 1.0, 5.0, 0.0, 3.0, 1.0, 0.0, 0.0, -1.0]);
        assert!((det(&m) + 6.0).norm() < 1e-12);
    }
}
