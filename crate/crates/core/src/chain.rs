//! Twisted chain complexes of presentation 2-complexes and of the boundary torus,
//! homology dimensions and coordinates of cycles in chosen homology bases.

use serde_json::{json, Value};
use thiserror::Error;

use crate::fox::{fox_derivative, Word};
use crate::linalg::{self, CMatrix, CVector};
use crate::presentation::Presentation;
use crate::representation::{Evaluator, Mat3, RepError, Representation, Vec3};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("relators fail under the representation (worst deviation {0:.3e})")]
    Relations(f64),
    #[error("peripheral matrices do not commute (residual {0:.3e})")]
    NonCommuting(f64),
    #[error("composite of boundaries {degree}∘{next} is not zero (relative {residual:.3e})")]
    NotAComplex {
        degree: usize,
        next: usize,
        residual: f64,
    },
    #[error("degree {degree}: chain of length {len} expected {expected}")]
    Shape {
        degree: usize,
        len: usize,
        expected: usize,
    },
    #[error("degree {degree}: vector is not a cycle (relative {residual:.3e})")]
    NotACycle { degree: usize, residual: f64 },
    #[error(
        "degree {degree}: cycle not in the span of lifts and boundaries (relative {residual:.3e})"
    )]
    NotInSpan { degree: usize, residual: f64 },
    #[error("degree {degree}: lifts are dependent modulo boundaries")]
    DependentLifts { degree: usize },
}

/// Chain complex over ℂ with the standard (geometric) basis in every degree.
///
/// `boundaries[i]` is the matrix of `∂_{i+1}: C_{i+1} → C_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<CMatrix>,
    /// Basis labels per degree, e.g. `"p⊗E"`.
    pub labels: Vec<Vec<String>>,
}

/// Representatives of a basis of `H_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomologyLift {
    pub degree: usize,
    pub chains: Vec<CVector>,
}

impl HomologyLift {
    pub fn new(degree: usize, chains: Vec<CVector>) -> Self {
        HomologyLift { degree, chains }
    }
}

/// Dimensions of cycles, boundaries and homology in each degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyDims {
    pub cycles: Vec<usize>,
    pub boundaries: Vec<usize>,
    pub homology: Vec<usize>,
}

const SL2_LABELS: [&str; 3] = ["E", "H", "F"];

fn tensor_labels(cells: &[String]) -> Vec<String> {
    cells
        .iter()
        .flat_map(|cell| SL2_LABELS.iter().map(move |e| format!("{cell}⊗{e}")))
        .collect()
}

fn put_block(m: &mut CMatrix, row: usize, col: usize, block: &Mat3) {
    for i in 0..3 {
        for j in 0..3 {
            m[(3 * row + i, 3 * col + j)] = block[(i, j)];
        }
    }
}

pub fn vec3_to_cvector(v: &Vec3) -> CVector {
    CVector::from_iterator(3, v.iter().copied())
}

/// Concatenates 3-vectors into a chain on consecutive cells.
pub fn blocks(vs: &[Vec3]) -> CVector {
    CVector::from_iterator(3 * vs.len(), vs.iter().flat_map(|v| v.iter().copied()))
}

/// A chain supported on one cell.
pub fn cell_chain(cells: usize, cell: usize, v: &Vec3) -> CVector {
    let mut out = CVector::zeros(3 * cells);
    for i in 0..3 {
        out[3 * cell + i] = v[i];
    }
    out
}

impl ChainComplex {
    /// Builds a complex and checks `∂∘∂ = 0`.
    pub fn new(
        dims: Vec<usize>,
        boundaries: Vec<CMatrix>,
        labels: Vec<Vec<String>>,
        tol: f64,
    ) -> Result<Self, ChainError> {
        let cx = ChainComplex {
            dims,
            boundaries,
            labels,
        };
        for (i, d) in cx.boundaries.iter().enumerate() {
            assert_eq!(d.nrows(), cx.dims[i], "boundary {} rows", i + 1);
            assert_eq!(d.ncols(), cx.dims[i + 1], "boundary {} columns", i + 1);
        }
        cx.check_square_zero(tol)?;
        Ok(cx)
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// `∂_i: C_i → C_{i−1}`; zero maps at the ends.
    pub fn boundary(&self, i: usize) -> CMatrix {
        if i == 0 {
            CMatrix::zeros(0, self.dims[0])
        } else if i > self.top() {
            CMatrix::zeros(self.dims[self.top()], 0)
        } else {
            self.boundaries[i - 1].clone()
        }
    }

    /// Largest relative residual of `∂_i ∂_{i+1}` over all degrees.
    pub fn square_zero_residual(&self) -> f64 {
        self.boundaries
            .windows(2)
            .map(|w| {
                let prod = &w[0] * &w[1];
                let scale = (linalg::max_abs(&w[0]) * linalg::max_abs(&w[1])).max(1.0);
                linalg::max_abs(&prod) / scale
            })
            .fold(0.0, f64::max)
    }

    fn check_square_zero(&self, tol: f64) -> Result<(), ChainError> {
        for (i, w) in self.boundaries.windows(2).enumerate() {
            let prod = &w[0] * &w[1];
            let scale = (linalg::max_abs(&w[0]) * linalg::max_abs(&w[1])).max(1.0);
            let residual = linalg::max_abs(&prod) / scale;
            if residual > tol {
                return Err(ChainError::NotAComplex {
                    degree: i + 1,
                    next: i + 2,
                    residual,
                });
            }
        }
        Ok(())
    }

    pub fn homology(&self, tol: f64) -> HomologyDims {
        let n = self.dims.len();
        let ranks: Vec<usize> = (0..=n)
            .map(|i| linalg::rank(&self.boundary(i), tol))
            .collect();
        let cycles: Vec<usize> = (0..n).map(|i| self.dims[i] - ranks[i]).collect();
        let boundaries: Vec<usize> = (0..n).map(|i| ranks[i + 1]).collect();
        let homology = (0..n).map(|i| cycles[i] - boundaries[i]).collect();
        HomologyDims {
            cycles,
            boundaries,
            homology,
        }
    }

    /// Relative size of `∂v` for a chain `v` in degree `degree`.
    pub fn cycle_residual(&self, degree: usize, v: &CVector) -> f64 {
        let d = self.boundary(degree);
        if d.nrows() == 0 {
            return 0.0;
        }
        let scale = (linalg::max_abs(&d) * v.norm().max(1.0)).max(f64::MIN_POSITIVE);
        (&d * v).norm() / scale
    }

    /// Coordinates of a cycle in the basis given by `lifts`, modulo boundaries.
    pub fn class_coordinates(
        &self,
        cycle: &CVector,
        lifts: &HomologyLift,
        tol: f64,
    ) -> Result<Vec<linalg::C64>, ChainError> {
        let degree = lifts.degree;
        let dim = self.dims[degree];
        for v in std::iter::once(cycle).chain(&lifts.chains) {
            if v.len() != dim {
                return Err(ChainError::Shape {
                    degree,
                    len: v.len(),
                    expected: dim,
                });
            }
        }
        let residual = self.cycle_residual(degree, cycle);
        if residual > tol.sqrt() {
            return Err(ChainError::NotACycle { degree, residual });
        }
        let (_, bdry) = linalg::image_pivots(&self.boundary(degree + 1), tol);
        let k = lifts.chains.len();
        let mut cols = lifts.chains.clone();
        cols.extend(bdry);
        let system = linalg::from_columns(&cols, dim);
        if linalg::rank(&system, tol) < cols.len() {
            return Err(ChainError::DependentLifts { degree });
        }
        let (x, residual) = linalg::least_squares(&system, cycle, tol);
        if residual > tol.sqrt() {
            return Err(ChainError::NotInSpan { degree, residual });
        }
        Ok(x.iter().take(k).copied().collect())
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &CMatrix| -> Value {
            Value::Array(
                (0..m.nrows())
                    .map(|i| {
                        Value::Array(
                            (0..m.ncols())
                                .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        json!({
            "dims": self.dims,
            "labels": self.labels,
            "boundaries": self
                .boundaries
                .iter()
                .enumerate()
                .map(|(i, m)| json!({"degree": i + 1, "matrix": mat(m)}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Twisted chain complex of the presentation 2-complex of `p`.
///
/// Block `(i, j)` of `∂_2` is `Ad ρ(∂r_j/∂x_i)`; block `i` of `∂_1` is `Ad ρ(x_i) − I`.
pub fn presentation_complex(
    p: &Presentation,
    rep: &Representation,
    tol: f64,
) -> Result<ChainComplex, ChainError> {
    let report =
        crate::representation::verify_relations(p, rep, crate::representation::RELATION_TOL)?;
    if !report.passed() {
        return Err(ChainError::Relations(report.max_deviation()));
    }
    let images = rep.assignment(p)?;
    let ev = Evaluator::new(&images);
    let n = p.num_generators();
    let m = p.relators.len();
    let mut d2 = CMatrix::zeros(3 * n, 3 * m);
    for (j, r) in p.relators.iter().enumerate() {
        for i in 0..n {
            put_block(&mut d2, i, j, &ev.ring(&fox_derivative(r, i)));
        }
    }
    let mut d1 = CMatrix::zeros(3, 3 * n);
    for i in 0..n {
        let block = ev.adjoint(&Word::gen(i)) - Mat3::identity();
        put_block(&mut d1, 0, i, &block);
    }
    let relator_cells: Vec<String> = (0..m).map(|j| format!("r{}", j + 1)).collect();
    let labels = vec![
        tensor_labels(&["v".to_string()]),
        tensor_labels(&p.generators),
        tensor_labels(&relator_cells),
    ];
    ChainComplex::new(vec![3, 3 * n, 3 * m], vec![d1, d2], labels, tol)
}

/// Twisted chain complex of the torus with one 0-cell, cells `μ, λ` and one 2-cell.
pub fn torus_complex(
    meridian: &Mat3,
    longitude: &Mat3,
    tol: f64,
) -> Result<ChainComplex, ChainError> {
    let comm = meridian * longitude - longitude * meridian;
    let scale = (meridian.norm() * longitude.norm()).max(1.0);
    let residual = comm.iter().map(|z| z.norm()).fold(0.0, f64::max) / scale;
    if residual > tol {
        return Err(ChainError::NonCommuting(residual));
    }
    let id = Mat3::identity();
    let mut d2 = CMatrix::zeros(6, 3);
    put_block(&mut d2, 0, 0, &(id - longitude));
    put_block(&mut d2, 1, 0, &(meridian - id));
    let mut d1 = CMatrix::zeros(3, 6);
    put_block(&mut d1, 0, 0, &(meridian - id));
    put_block(&mut d1, 0, 1, &(longitude - id));
    let labels = vec![
        tensor_labels(&["v".to_string()]),
        tensor_labels(&["mu".to_string(), "lambda".to_string()]),
        tensor_labels(&["S".to_string()]),
    ];
    ChainComplex::new(vec![3, 6, 3], vec![d1, d2], labels, tol)
}

/// The 1-chain carried by the loop `w`: block `i` is `Ad ρ(∂w/∂x_i)·v`.
pub fn chain_of_loop(
    w: &Word,
    v: &Vec3,
    rep: &Representation,
    p: &Presentation,
) -> Result<CVector, ChainError> {
    let images = rep.assignment(p)?;
    let ev = Evaluator::new(&images);
    let parts: Vec<Vec3> = (0..p.num_generators())
        .map(|i| ev.ring(&fox_derivative(w, i)) * v)
        .collect();
    Ok(blocks(&parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_RANK_TOL as TOL;
    use crate::presentation::{pattern_piece_presentation, torus_piece_presentation, MU_C};
    use crate::representation::{
        adjoint_matrix, diag2, invariant_vector, rep_build, Family, RepIndex, VectorCase, C64,
    };

    fn xi() -> C64 {
        C64::new(0.3, 0.1)
    }

    #[test]
    fn trefoil_abelian_shapes() {
        let (p, _) = torus_piece_presentation(1).unwrap();
        let rep = Representation::meridional_abelian(&p, xi()).unwrap();
        let cx = presentation_complex(&p, &rep, TOL).unwrap();
        assert_eq!((cx.boundaries[1].nrows(), cx.boundaries[1].ncols()), (6, 3));
        assert_eq!((cx.boundaries[0].nrows(), cx.boundaries[0].ncols()), (3, 6));
        assert_eq!(linalg::rank(&cx.boundaries[0], TOL), 2);
        assert_eq!(cx.homology(TOL).homology, vec![1, 1, 0]);
    }

    #[test]
    fn torus_homology() {
        let m = adjoint_matrix(&diag2(C64::new(1.2, 0.3)));
        let l = adjoint_matrix(&diag2(C64::new(0.4, -0.9)));
        let cx = torus_complex(&m, &l, TOL).unwrap();
        assert_eq!(cx.homology(TOL).homology, vec![1, 2, 1]);
        let k = linalg::kernel_basis(&cx.boundaries[1], TOL);
        assert_eq!(k.len(), 1);
        assert!(k[0][0].norm() < 1e-12 && k[0][2].norm() < 1e-12);
        let id = Mat3::identity();
        let trivial = torus_complex(&id, &id, TOL).unwrap();
        assert_eq!(trivial.homology(TOL).homology, vec![3, 6, 3]);
    }

    #[test]
    fn torus_rejects_non_commuting() {
        let (p, _) = pattern_piece_presentation(6).unwrap();
        let rep = rep_build(Family::AN, xi(), 1, 6, RepIndex::J(0)).unwrap();
        let pm = rep.word_adjoint(&p, &Word::gen(0)).unwrap();
        let tm = rep.word_adjoint(&p, &Word::gen(1)).unwrap();
        assert!(matches!(
            torus_complex(&pm, &tm, TOL),
            Err(ChainError::NonCommuting(_))
        ));
    }

    #[test]
    fn piece_homology_tables() {
        let (c, _) = torus_piece_presentation(1).unwrap();
        let (d, _) = pattern_piece_presentation(6).unwrap();
        let an = rep_build(Family::AN, xi(), 1, 6, RepIndex::J(0)).unwrap();
        let na = rep_build(Family::NA, xi(), 1, 6, RepIndex::K(0)).unwrap();
        let h = |p: &Presentation, r: &Representation| {
            presentation_complex(p, r, TOL)
                .unwrap()
                .homology(TOL)
                .homology
        };
        assert_eq!(h(&d, &an), vec![0, 2, 2]);
        assert_eq!(h(&c, &an), vec![1, 1, 0]);
        assert_eq!(h(&c, &na), vec![0, 1, 1]);
        assert_eq!(h(&d, &na), vec![1, 2, 1]);
    }

    #[test]
    fn pattern_boundary_matches_fox_display() {
        let (d, _) = pattern_piece_presentation(6).unwrap();
        let rep = rep_build(Family::AN, xi(), 1, 6, RepIndex::J(1)).unwrap();
        let cx = presentation_complex(&d, &rep, TOL).unwrap();
        let pm = rep.word_adjoint(&d, &Word::gen(0)).unwrap();
        let tm = rep.word_adjoint(&d, &Word::gen(1)).unwrap();
        let id = Mat3::identity();
        // Block for p: I + TP − TPT − T (the last two terms collapse via the relator).
        let dp = id + tm * pm - tm * pm * tm - tm;
        let got = cx.boundaries[1].view((0, 0), (3, 3)).into_owned();
        let scale = 1.0 + dp.norm();
        let diff = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (got[(i, j)] - dp[(i, j)]).norm())
            .fold(0.0, f64::max);
        assert!(diff / scale < 1e-10, "{diff}");
    }

    #[test]
    fn meridian_loop_in_pattern_piece() {
        let (d, per) = pattern_piece_presentation(6).unwrap();
        let rep = rep_build(Family::AN, xi(), 1, 6, RepIndex::J(0)).unwrap();
        let u = invariant_vector(VectorCase::U, &rep).unwrap();
        let v = invariant_vector(VectorCase::V, &rep).unwrap();
        let chain = chain_of_loop(per.get(MU_C).unwrap(), &u, &rep, &d).unwrap();
        let pm = rep.word_adjoint(&d, &Word::gen(0)).unwrap();
        let tm = rep.word_adjoint(&d, &Word::gen(1)).unwrap();
        let expected_p = (Mat3::identity() + tm * pm) * u;
        for i in 0..3 {
            assert!((chain[i] - expected_p[i]).norm() < 1e-10);
        }
        let cx = presentation_complex(&d, &rep, TOL).unwrap();
        let lifts = HomologyLift::new(1, vec![cell_chain(2, 0, &v), cell_chain(2, 1, &u)]);
        let coords = cx.class_coordinates(&chain, &lifts, TOL).unwrap();
        assert!(coords[0].norm() < 1e-8);
        assert!((coords[1] + 2.0).norm() < 1e-8);
    }

    #[test]
    fn class_coordinates_of_a_lift() {
        let (d, _) = pattern_piece_presentation(6).unwrap();
        let rep = rep_build(Family::AN, xi(), 1, 6, RepIndex::J(0)).unwrap();
        let u = invariant_vector(VectorCase::U, &rep).unwrap();
        let v = invariant_vector(VectorCase::V, &rep).unwrap();
        let cx = presentation_complex(&d, &rep, TOL).unwrap();
        let lifts = HomologyLift::new(1, vec![cell_chain(2, 0, &v), cell_chain(2, 1, &u)]);
        let coords = cx.class_coordinates(&lifts.chains[0], &lifts, TOL).unwrap();
        assert!((coords[0] - 1.0).norm() < 1e-10 && coords[1].norm() < 1e-10);
    }
}
