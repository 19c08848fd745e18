//! Reidemeister torsion of a based chain complex with chosen homology lifts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::chain::{ChainComplex, HomologyLift};
use crate::linalg::{self, c, CVector, LinalgError, C64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TorsionError {
    #[error("degree {degree}: {given} homology lifts given, homology has dimension {expected}")]
    LiftCount {
        degree: usize,
        given: usize,
        expected: usize,
    },
    #[error("degree {degree}: lift {index} is not a cycle (relative residual {residual:.3e})")]
    NotACycle {
        degree: usize,
        index: usize,
        residual: f64,
    },
    #[error(
        "degree {degree}: lift {index} has length {len}, chain group has dimension {expected}"
    )]
    LiftShape {
        degree: usize,
        index: usize,
        len: usize,
        expected: usize,
    },
    #[error("degree {degree}: assembled basis is singular even with relaxed tolerance")]
    SingularBasis { degree: usize },
    #[error("degree {degree}: {source}")]
    Linalg {
        degree: usize,
        #[source]
        source: LinalgError,
    },
}

/// A nonzero complex number defined up to sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorsionValue(pub C64);

impl TorsionValue {
    pub fn value(self) -> C64 {
        self.0
    }

    pub fn equal(self, other: C64, rel_tol: f64) -> bool {
        torsion_equal(self.0, other, rel_tol)
    }

    pub fn inv(self) -> TorsionValue {
        TorsionValue(self.0.inv())
    }
}

/// `min(|x − y|, |x + y|) ≤ rel_tol·|y|`.
pub fn torsion_equal(x: C64, y: C64, rel_tol: f64) -> bool {
    (x - y).norm().min((x + y).norm()) <= rel_tol * y.norm()
}

/// Relative distance of `x` from `±y`.
pub fn sign_class_distance(x: C64, y: C64) -> f64 {
    (x - y).norm().min((x + y).norm()) / y.norm()
}

/// How the vectors `b_i` (whose boundaries span `B_{i−1}`) are picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BChoice {
    /// Standard basis vectors at the pivot columns of `∂_i`.
    Pivots,
    /// Random complex vectors from a seeded generator.
    Random(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorsionOptions {
    pub tol: f64,
    pub b_choice: BChoice,
}

impl Default for TorsionOptions {
    fn default() -> Self {
        TorsionOptions {
            tol: linalg::DEFAULT_RANK_TOL,
            b_choice: BChoice::Pivots,
        }
    }
}

impl TorsionOptions {
    pub fn with_tol(tol: f64) -> Self {
        TorsionOptions {
            tol,
            ..Default::default()
        }
    }
}

/// Torsion together with the per-degree determinants it was assembled from.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionReport {
    pub value: TorsionValue,
    pub determinants: Vec<C64>,
    /// Set when the computation only succeeded with the relaxed tolerance.
    pub relaxed: bool,
}

fn choose_b(cx: &ChainComplex, degree: usize, opts: &TorsionOptions) -> Vec<CVector> {
    let d = cx.boundary(degree);
    let dim = cx.dims[degree];
    let (pivots, _) = linalg::image_pivots(&d, opts.tol);
    match opts.b_choice {
        BChoice::Pivots => pivots.iter().map(|&j| linalg::unit(dim, j)).collect(),
        BChoice::Random(seed) => {
            let r = pivots.len();
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1009).wrapping_add(degree as u64));
            loop {
                let vs: Vec<CVector> = (0..r)
                    .map(|_| {
                        CVector::from_fn(dim, |_, _| {
                            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                        })
                    })
                    .collect();
                let images: Vec<CVector> = vs.iter().map(|v| &d * v).collect();
                if r == 0 || linalg::rank(&linalg::from_columns(&images, d.nrows()), opts.tol) == r
                {
                    return vs;
                }
            }
        }
    }
}

fn lifts_in_degree(lifts: &[HomologyLift], degree: usize) -> Vec<CVector> {
    lifts
        .iter()
        .filter(|l| l.degree == degree)
        .flat_map(|l| l.chains.iter().cloned())
        .collect()
}

fn attempt(
    cx: &ChainComplex,
    lifts: &[HomologyLift],
    opts: &TorsionOptions,
) -> Result<TorsionReport, TorsionError> {
    let n = cx.dims.len();
    let hom = cx.homology(opts.tol);
    let bs: Vec<Vec<CVector>> = (0..n).map(|i| choose_b(cx, i, opts)).collect();
    let mut value = c(1.0, 0.0);
    let mut determinants = Vec::with_capacity(n);
    for i in 0..n {
        let h = lifts_in_degree(lifts, i);
        if h.len() != hom.homology[i] {
            return Err(TorsionError::LiftCount {
                degree: i,
                given: h.len(),
                expected: hom.homology[i],
            });
        }
        for (k, v) in h.iter().enumerate() {
            if v.len() != cx.dims[i] {
                return Err(TorsionError::LiftShape {
                    degree: i,
                    index: k,
                    len: v.len(),
                    expected: cx.dims[i],
                });
            }
            let residual = cx.cycle_residual(i, v);
            if residual > opts.tol.sqrt() {
                return Err(TorsionError::NotACycle {
                    degree: i,
                    index: k,
                    residual,
                });
            }
        }
        let mut basis: Vec<CVector> = Vec::with_capacity(cx.dims[i]);
        if i + 1 < n {
            let d = cx.boundary(i + 1);
            basis.extend(bs[i + 1].iter().map(|b| &d * b));
        }
        basis.extend(h);
        basis.extend(bs[i].iter().cloned());
        let dim = cx.dims[i];
        if linalg::rank(&linalg::from_columns(&basis, dim), opts.tol) < basis.len()
            || basis.len() != dim
        {
            return Err(TorsionError::SingularBasis { degree: i });
        }
        let reference: Vec<CVector> = (0..dim).map(|j| linalg::unit(dim, j)).collect();
        let det = linalg::basis_change_det(&reference, &basis, opts.tol)
            .map_err(|source| TorsionError::Linalg { degree: i, source })?;
        determinants.push(det);
        value *= if i % 2 == 1 { det } else { det.inv() };
    }
    Ok(TorsionReport {
        value: TorsionValue(value),
        determinants,
        relaxed: false,
    })
}

/// `Π_i [∂_{i+1}(b_{i+1}) ∪ h̃_i ∪ b_i | c_i]^{(−1)^{i+1}}`.
///
/// A singular assembled basis triggers one retry with the tolerance relaxed tenfold.
pub fn reidemeister_torsion_report(
    cx: &ChainComplex,
    lifts: &[HomologyLift],
    opts: &TorsionOptions,
) -> Result<TorsionReport, TorsionError> {
    match attempt(cx, lifts, opts) {
        Err(TorsionError::SingularBasis { .. }) => {
            let relaxed = TorsionOptions {
                tol: opts.tol * 10.0,
                ..*opts
            };
            let mut report = attempt(cx, lifts, &relaxed)?;
            report.relaxed = true;
            Ok(report)
        }
        other => other,
    }
}

pub fn reidemeister_torsion(
    cx: &ChainComplex,
    lifts: &[HomologyLift],
    opts: &TorsionOptions,
) -> Result<TorsionValue, TorsionError> {
    reidemeister_torsion_report(cx, lifts, opts).map(|r| r.value)
}
