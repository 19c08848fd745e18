//! SL(2, ℂ) representations of the cable-knot group, the adjoint action on sl(2, ℂ)
//! and evaluation of group-ring elements.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use thiserror::Error;

use crate::fox::{GroupRingElement, Word};
use crate::presentation::{cable_exterior_presentation, Presentation, PresentationError};

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Mat3 = Matrix3<C64>;
pub type Vec3 = Vector3<C64>;

/// Relator tolerance used when building representations.
pub const RELATION_TOL: f64 = 1e-10;
/// Lower bound on `|Re ξ|`.
pub const XI_GUARD: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("generator `{0}` has no assigned matrix")]
    Unassigned(String),
    #[error("index {name}={value} out of range 0..={max}")]
    IndexOutOfRange {
        name: &'static str,
        value: i64,
        max: i64,
    },
    #[error("family {family} needs index {expected}")]
    WrongIndex {
        family: Family,
        expected: &'static str,
    },
    #[error("degenerate xi = {re}+{im}i: |Re xi| must be at least {guard}")]
    DegenerateXi { re: f64, im: f64, guard: f64 },
    #[error("relator {relator} evaluates {deviation:.3e} away from the identity")]
    RelationFailure { relator: usize, deviation: f64 },
    #[error("vector {case:?} is not defined for family {family}")]
    IncompatibleVector { case: VectorCase, family: Family },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    AA,
    AN,
    NA,
    NN,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::AA => "AA",
            Family::AN => "AN",
            Family::NA => "NA",
            Family::NN => "NN",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "AA" => Ok(Family::AA),
            "AN" => Ok(Family::AN),
            "NA" => Ok(Family::NA),
            "NN" => Ok(Family::NN),
            _ => Err(format!("unknown family `{s}` (expected AA, AN, NA or NN)")),
        }
    }
}

/// Discrete parameter selecting the root of unity of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepIndex {
    None,
    J(i64),
    K(i64),
    LM { l: i64, m: i64 },
}

impl RepIndex {
    pub fn pair(self) -> (Option<i64>, Option<i64>) {
        match self {
            RepIndex::None => (None, None),
            RepIndex::J(j) => (Some(j), None),
            RepIndex::K(k) => (Some(k), None),
            RepIndex::LM { l, m } => (Some(l), Some(m)),
        }
    }
}

/// Invariant vectors used to base twisted homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VectorCase {
    H,
    U,
    V,
    W,
    UTilde,
    VTilde,
}

/// `exp(iπ(2n+1)/denominator)`.
pub fn root_of_minus_one(n: i64, denominator: i64) -> C64 {
    C64::from_polar(1.0, PI * (2 * n + 1) as f64 / denominator as f64)
}

pub fn mat2(a: C64, b: C64, c: C64, d: C64) -> Mat2 {
    Mat2::new(a, b, c, d)
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

pub fn diag2(z: C64) -> Mat2 {
    mat2(z, zero(), zero(), z.inv())
}

/// Inverse of a 2×2 matrix through its adjugate.
pub fn inv2(m: &Mat2) -> Mat2 {
    let d = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    mat2(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / d
}

pub fn pow2(m: &Mat2, n: i64) -> Mat2 {
    let base = if n < 0 { inv2(m) } else { *m };
    let mut out = Mat2::identity();
    for _ in 0..n.unsigned_abs() {
        out *= base;
    }
    out
}

pub fn pow3(m: &Mat3, n: i64) -> Mat3 {
    let base = if n < 0 {
        m.try_inverse().expect("adjoint matrices are invertible")
    } else {
        *m
    };
    let mut out = Mat3::identity();
    for _ in 0..n.unsigned_abs() {
        out *= base;
    }
    out
}

/// Coordinates of a traceless 2×2 matrix in the basis `E, H, F`.
fn sl2_coords(m: &Mat2) -> Vec3 {
    Vec3::new(m[(0, 1)], m[(0, 0)], m[(1, 0)])
}

/// Matrix of `X ↦ m⁻¹ X m` on sl(2, ℂ) in the basis
/// `E = [[0,1],[0,0]]`, `H = [[1,0],[0,-1]]`, `F = [[0,0],[1,0]]`.
pub fn adjoint_matrix(m: &Mat2) -> Mat3 {
    let mi = inv2(m);
    let basis = [
        mat2(zero(), one(), zero(), zero()),
        mat2(one(), zero(), zero(), -one()),
        mat2(zero(), zero(), one(), zero()),
    ];
    let mut out = Mat3::zeros();
    for (j, e) in basis.iter().enumerate() {
        out.set_column(j, &sl2_coords(&(mi * e * m)));
    }
    out
}

/// Per-relator deviations of `ρ(r)` from the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    /// Max-entry norm of `ρ(r) − I`.
    pub deviations: Vec<f64>,
    /// Largest entry met among partial products, used to scale the tolerance.
    pub scales: Vec<f64>,
    pub tol: f64,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<usize> {
        self.deviations
            .iter()
            .zip(&self.scales)
            .enumerate()
            .filter(|(_, (d, s))| **d > self.tol * s.max(1.0) || d.is_nan())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().copied().fold(0.0, f64::max)
    }
}

/// A representation of the cable-knot group, stored by generator name.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub family: Family,
    pub xi: C64,
    pub a: i64,
    pub b: i64,
    pub index: RepIndex,
    /// `e^{ξ/2}`, the eigenvalue of the meridian.
    pub z: C64,
    pub omega1: Option<C64>,
    pub omega2: Option<C64>,
    pub omega3: Option<C64>,
    images: BTreeMap<String, Mat2>,
}

impl Representation {
    pub fn image(&self, name: &str) -> Option<&Mat2> {
        self.images.get(name)
    }

    pub fn images(&self) -> &BTreeMap<String, Mat2> {
        &self.images
    }

    /// Replaces the matrix assigned to one generator.
    pub fn with_image(mut self, name: &str, m: Mat2) -> Self {
        self.images.insert(name.to_string(), m);
        self
    }

    /// Every generator of `p` sent to `diag(e^{ξ/2}, e^{-ξ/2})`.
    pub fn meridional_abelian(p: &Presentation, xi: C64) -> Result<Self, RepError> {
        check_xi(xi)?;
        let z = (xi / 2.0).exp();
        let images = p.generators.iter().map(|g| (g.clone(), diag2(z))).collect();
        Ok(Representation {
            family: Family::AA,
            xi,
            a: 0,
            b: 0,
            index: RepIndex::None,
            z,
            omega1: None,
            omega2: None,
            omega3: None,
            images,
        })
    }

    /// Matrices aligned with the generator order of `p`.
    pub fn assignment(&self, p: &Presentation) -> Result<Vec<Mat2>, RepError> {
        p.generators
            .iter()
            .map(|g| {
                self.images
                    .get(g)
                    .copied()
                    .ok_or_else(|| RepError::Unassigned(g.clone()))
            })
            .collect()
    }

    /// `ρ(w)` as an SL(2, ℂ) matrix (a homomorphism in `w`).
    pub fn word_matrix(&self, p: &Presentation, w: &Word) -> Result<Mat2, RepError> {
        let images = self.assignment(p)?;
        Ok(eval_sl2(&Evaluator::new(&images), w))
    }

    /// Adjoint matrix of `ρ(w)`; anti-multiplicative in `w`.
    pub fn word_adjoint(&self, p: &Presentation, w: &Word) -> Result<Mat3, RepError> {
        Ok(adjoint_matrix(&self.word_matrix(p, w)?))
    }

    /// ℤ-linear extension of `w ↦ Ad ρ(w)`.
    pub fn evaluate_ring(&self, p: &Presentation, e: &GroupRingElement) -> Result<Mat3, RepError> {
        let images = self.assignment(p)?;
        Ok(Evaluator::new(&images).ring(e))
    }
}

/// Cached generator matrices and inverses for repeated word evaluation.
pub struct Evaluator {
    gens: Vec<Mat2>,
    invs: Vec<Mat2>,
}

impl Evaluator {
    pub fn new(images: &[Mat2]) -> Self {
        Evaluator {
            gens: images.to_vec(),
            invs: images.iter().map(inv2).collect(),
        }
    }

    pub fn word(&self, w: &Word) -> Mat2 {
        eval_sl2(self, w)
    }

    pub fn adjoint(&self, w: &Word) -> Mat3 {
        adjoint_matrix(&self.word(w))
    }

    pub fn ring(&self, e: &GroupRingElement) -> Mat3 {
        let mut out = Mat3::zeros();
        for (w, coeff) in e.terms() {
            out += self.adjoint(w) * C64::new(coeff as f64, 0.0);
        }
        out
    }
}

fn eval_sl2(ev: &Evaluator, w: &Word) -> Mat2 {
    let mut m = Mat2::identity();
    for l in w.letters() {
        let g = if l.inverse {
            &ev.invs[l.generator]
        } else {
            &ev.gens[l.generator]
        };
        m *= g;
    }
    m
}

fn max_entry(m: &Mat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Evaluates every relator of `p` under `ρ`.
pub fn verify_relations(
    p: &Presentation,
    rep: &Representation,
    tol: f64,
) -> Result<RelationReport, RepError> {
    let images = rep.assignment(p)?;
    let ev = Evaluator::new(&images);
    let mut deviations = Vec::new();
    let mut scales = Vec::new();
    for r in &p.relators {
        let mut m = Mat2::identity();
        let mut scale: f64 = 1.0;
        for l in r.letters() {
            m *= if l.inverse {
                ev.invs[l.generator]
            } else {
                ev.gens[l.generator]
            };
            scale = scale.max(max_entry(&m));
        }
        deviations.push(max_entry(&(m - Mat2::identity())));
        scales.push(scale);
    }
    Ok(RelationReport {
        deviations,
        scales,
        tol,
    })
}

fn check_xi(xi: C64) -> Result<(), RepError> {
    if xi.re.abs() < XI_GUARD || !xi.re.is_finite() || !xi.im.is_finite() {
        return Err(RepError::DegenerateXi {
            re: xi.re,
            im: xi.im,
            guard: XI_GUARD,
        });
    }
    Ok(())
}

fn check_range(name: &'static str, value: i64, count: i64) -> Result<(), RepError> {
    if value < 0 || value >= count {
        return Err(RepError::IndexOutOfRange {
            name,
            value,
            max: count - 1,
        });
    }
    Ok(())
}

/// Builds the representation of family `family` on `{x, y, p, t}` and checks every
/// relator of the cable presentation.
pub fn rep_build(
    family: Family,
    xi: C64,
    a: i64,
    b: i64,
    index: RepIndex,
) -> Result<Representation, RepError> {
    let (pres, _) = cable_exterior_presentation(a, b)?;
    check_xi(xi)?;
    let z = (xi / 2.0).exp();
    let zi = z.inv();
    let z2 = z * z;
    let (mut omega1, mut omega2, mut omega3) = (None, None, None);
    let (x, y, p, t) = match (family, index) {
        (Family::AA, RepIndex::None) => {
            let p = diag2(z);
            let x = diag2(z2);
            (x, x, p, pow2(&x, b))
        }
        (Family::AN, RepIndex::J(j)) => {
            check_range("j", j, b)?;
            let w2 = root_of_minus_one(j, 2 * b + 1);
            omega2 = Some(w2);
            let p = mat2(z, one(), zero(), zi);
            let q = mat2(z, zero(), w2 + w2.inv() - z2 - z2.inv(), zi);
            let x = p * q;
            (x, x, p, pow2(&x, b))
        }
        (Family::NA, RepIndex::K(k)) => {
            check_range("k", k, a)?;
            let w1 = root_of_minus_one(k, 2 * a + 1);
            omega1 = Some(w1);
            let p = mat2(z, (z + zi).inv(), zero(), zi);
            let x = mat2(z2, one(), zero(), z2.inv());
            let z4 = z2 * z2;
            let y = mat2(z2, zero(), w1 + w1.inv() - z4 - z4.inv(), z2.inv());
            let t = -pow2(&p, -8 * a + 2 * b - 4);
            (x, y, p, t)
        }
        (Family::NN, RepIndex::LM { l, m }) => {
            let d3 = 2 * b + 1 - 4 * (2 * a + 1);
            check_range("m", m, a)?;
            check_range("l", l, (d3 - 1) / 2)?;
            let w1 = root_of_minus_one(m, 2 * a + 1);
            let w3 = root_of_minus_one(l, d3);
            omega1 = Some(w1);
            omega3 = Some(w3);
            let p = mat2(z, one(), zero(), zi);
            let q = mat2(z, zero(), w3 + w3.inv() - z2 - z2.inv(), zi);
            let x = p * q;
            // Conjugating by diag(z^{1/2}, z^{-1/2}) only rescales off-diagonal entries,
            // so the half-integer powers are folded into the lower-left entry.
            let theta = mat2(one(), zero(), w3.inv() * z - zi, one());
            let theta_inv = inv2(&theta);
            let y_core = mat2(
                w3,
                zero(),
                (w1 + w1.inv() - w3 * w3 - (w3 * w3).inv()) * z,
                w3.inv(),
            );
            let y = theta_inv * y_core * theta;
            let e = 4 * a - b + 1;
            let (we, wie) = (w3.powi(e as i32), w3.powi(-e as i32));
            let t_core = mat2(we, (we - wie) / (w3 - w3.inv()) * zi, zero(), wie);
            let t = theta_inv * t_core * theta;
            (x, y, p, t)
        }
        (family, _) => {
            let expected = match family {
                Family::AA => "none",
                Family::AN => "j",
                Family::NA => "k",
                Family::NN => "(l, m)",
            };
            return Err(RepError::WrongIndex { family, expected });
        }
    };
    let mut images = BTreeMap::new();
    images.insert("x".to_string(), x);
    images.insert("y".to_string(), y);
    images.insert("p".to_string(), p);
    images.insert("t".to_string(), t);
    let rep = Representation {
        family,
        xi,
        a,
        b,
        index,
        z,
        omega1,
        omega2,
        omega3,
        images,
    };
    let report = verify_relations(&pres, &rep, RELATION_TOL)?;
    if let Some(&k) = report.failures().first() {
        return Err(RepError::RelationFailure {
            relator: k,
            deviation: report.deviations[k],
        });
    }
    Ok(rep)
}

/// `Θ(2, (ω − ω⁻¹)z, 0)ᵀ` written out: `(2, z(ω+ω⁻¹) − 2z⁻¹, 2(ω+ω⁻¹−z²−z⁻²))`.
fn u_vector(z: C64, w: C64) -> Vec3 {
    let s = w + w.inv();
    Vec3::new(
        C64::new(2.0, 0.0),
        z * s - z.inv() * 2.0,
        (s - z * z - (z * z).inv()) * 2.0,
    )
}

/// The normalized invariant vectors attached to each family.
pub fn invariant_vector(case: VectorCase, rep: &Representation) -> Result<Vec3, RepError> {
    let z = rep.z;
    let two = C64::new(2.0, 0.0);
    let incompatible = || RepError::IncompatibleVector {
        case,
        family: rep.family,
    };
    match (case, rep.family) {
        (VectorCase::H, Family::AA) => Ok(Vec3::new(zero(), one(), zero())),
        (VectorCase::U, Family::AN) => Ok(u_vector(z, rep.omega2.ok_or_else(incompatible)?)),
        (VectorCase::UTilde, Family::NN) => Ok(u_vector(z, rep.omega3.ok_or_else(incompatible)?)),
        (VectorCase::V, Family::AN) | (VectorCase::VTilde, Family::NN) => {
            Ok(Vec3::new(two, z - z.inv(), zero()))
        }
        (VectorCase::W, Family::NA) => Ok(Vec3::new(two, z * z - (z * z).inv(), zero())),
        _ => Err(incompatible()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{LAMBDA, LAMBDA_C, MU_C};

    fn close2(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        max_entry(&(a - b)) <= tol
    }

    fn close3(a: &Mat3, b: &Mat3, tol: f64) -> bool {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max) <= tol
    }

    fn xi() -> C64 {
        C64::new(0.3, 0.1)
    }

    #[test]
    fn adjoint_of_diagonal() {
        let z = C64::new(1.3, 0.4);
        let a = adjoint_matrix(&diag2(z));
        let expected = Mat3::from_diagonal(&Vec3::new(z.powi(-2), one(), z.powi(2)));
        assert!(close3(&a, &expected, 1e-14));
        assert!(close3(
            &adjoint_matrix(&Mat2::identity()),
            &Mat3::identity(),
            0.0
        ));
    }

    #[test]
    fn adjoint_of_upper_triangular() {
        let (w, cc) = (C64::new(0.7, 0.2), C64::new(-0.4, 1.1));
        let a = adjoint_matrix(&mat2(w, cc, zero(), w.inv()));
        let wi = w.inv();
        let expected = Mat3::new(
            wi * wi,
            wi * cc * 2.0,
            -cc * cc,
            zero(),
            one(),
            -w * cc,
            zero(),
            zero(),
            w * w,
        );
        assert!(close3(&a, &expected, 1e-13));
    }

    #[test]
    fn families_build_and_satisfy_relators() {
        for (a, b) in [(1, 6), (1, 7), (2, 10)] {
            rep_build(Family::AA, xi(), a, b, RepIndex::None).unwrap();
            for j in 0..b {
                rep_build(Family::AN, xi(), a, b, RepIndex::J(j)).unwrap();
            }
            for k in 0..a {
                rep_build(Family::NA, xi(), a, b, RepIndex::K(k)).unwrap();
            }
            for m in 0..a {
                for l in 0..=(b - 4 * a - 3) {
                    rep_build(Family::NN, xi(), a, b, RepIndex::LM { l, m }).unwrap();
                }
            }
        }
    }

    #[test]
    fn aa_images() {
        let rep = rep_build(Family::AA, xi(), 1, 6, RepIndex::None).unwrap();
        let e = xi().exp();
        assert!(close2(
            rep.image("p").unwrap(),
            &diag2((xi() / 2.0).exp()),
            1e-14
        ));
        assert!(close2(rep.image("x").unwrap(), &diag2(e), 1e-13));
        assert!(close2(
            rep.image("t").unwrap(),
            &diag2((xi() * 6.0).exp()),
            1e-10
        ));
    }

    #[test]
    fn na_longitude_is_power_of_p() {
        let (pres, per) = cable_exterior_presentation(1, 6).unwrap();
        let rep = rep_build(Family::NA, xi(), 1, 6, RepIndex::K(0)).unwrap();
        let lc = rep.word_matrix(&pres, per.get(LAMBDA_C).unwrap()).unwrap();
        let expected = -pow2(rep.image("p").unwrap(), -12);
        assert!(close2(&lc, &expected, 1e-10));
    }

    #[test]
    fn nn_longitude_is_upper_triangular() {
        for (a, b) in [(1, 7), (1, 9), (2, 12)] {
            let (pres, per) = cable_exterior_presentation(a, b).unwrap();
            let rep = rep_build(Family::NN, xi(), a, b, RepIndex::LM { l: 0, m: 0 }).unwrap();
            let lam = rep.word_matrix(&pres, per.get(LAMBDA).unwrap()).unwrap();
            let z = rep.z;
            let scale = max_entry(&lam);
            assert!(lam[(1, 0)].norm() <= 1e-10 * scale);
            assert!((lam[(0, 0)] + z.powi(-4 * b as i32 - 2)).norm() <= 1e-10 * scale);
            assert!((lam[(1, 1)] + z.powi(4 * b as i32 + 2)).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn an_x_matches_conjugated_form() {
        let rep = rep_build(Family::AN, xi(), 1, 6, RepIndex::J(2)).unwrap();
        let (z, w2) = (rep.z, rep.omega2.unwrap());
        let theta = mat2(one(), zero(), w2.inv() * z - z.inv(), one());
        let x = inv2(&theta) * mat2(w2, z.inv(), zero(), w2.inv()) * theta;
        assert!(close2(rep.image("x").unwrap(), &x, 1e-12));
    }

    #[test]
    fn nn_t_agrees_with_relator_consequence() {
        let (pres, per) = cable_exterior_presentation(2, 12).unwrap();
        let rep = rep_build(Family::NN, xi(), 2, 12, RepIndex::LM { l: 1, m: 1 }).unwrap();
        let lc = rep.word_matrix(&pres, per.get(LAMBDA_C).unwrap()).unwrap();
        let t = lc * pow2(rep.image("x").unwrap(), 12);
        assert!(close2(rep.image("t").unwrap(), &t, 1e-9));
    }

    #[test]
    fn x_equals_pq_in_all_families() {
        let (pres, _) = cable_exterior_presentation(1, 7).unwrap();
        let q = pres.word("t p t^-1").unwrap();
        for (family, index) in [
            (Family::AA, RepIndex::None),
            (Family::AN, RepIndex::J(3)),
            (Family::NA, RepIndex::K(0)),
            (Family::NN, RepIndex::LM { l: 0, m: 0 }),
        ] {
            let rep = rep_build(family, xi(), 1, 7, index).unwrap();
            let pq = rep.image("p").unwrap() * rep.word_matrix(&pres, &q).unwrap();
            assert!(close2(rep.image("x").unwrap(), &pq, 1e-10), "{family}");
        }
    }

    #[test]
    fn perturbed_root_fails_relations() {
        let (pres, _) = cable_exterior_presentation(1, 6).unwrap();
        let rep = rep_build(Family::NA, xi(), 1, 6, RepIndex::K(0)).unwrap();
        let w1 = rep.omega1.unwrap() * C64::from_polar(1.0, 1e-3);
        let z2 = rep.z * rep.z;
        let z4 = z2 * z2;
        let y = mat2(z2, zero(), w1 + w1.inv() - z4 - z4.inv(), z2.inv());
        let bad = rep.with_image("y", y);
        assert!(!verify_relations(&pres, &bad, RELATION_TOL)
            .unwrap()
            .passed());
    }

    #[test]
    fn invariant_vectors_are_fixed() {
        let (pres, per) = cable_exterior_presentation(1, 7).unwrap();
        let cases = [
            (
                Family::AN,
                RepIndex::J(1),
                VectorCase::U,
                vec![MU_C, LAMBDA_C],
            ),
            (
                Family::AN,
                RepIndex::J(1),
                VectorCase::V,
                vec!["mu", "lambda"],
            ),
            (
                Family::NA,
                RepIndex::K(0),
                VectorCase::W,
                vec![MU_C, LAMBDA_C, "mu", "lambda"],
            ),
            (
                Family::NN,
                RepIndex::LM { l: 0, m: 0 },
                VectorCase::UTilde,
                vec![MU_C, LAMBDA_C],
            ),
            (
                Family::NN,
                RepIndex::LM { l: 0, m: 0 },
                VectorCase::VTilde,
                vec!["mu", "lambda"],
            ),
        ];
        for (family, index, case, words) in cases {
            let rep = rep_build(family, xi(), 1, 7, index).unwrap();
            let v = invariant_vector(case, &rep).unwrap();
            for name in words {
                let ad = rep.word_adjoint(&pres, per.get(name).unwrap()).unwrap();
                let r = (ad * v - v).norm() / (1.0 + ad.norm());
                assert!(r < 1e-9, "{family} {case:?} {name}: {r}");
            }
        }
        let rep = rep_build(Family::NA, xi(), 1, 6, RepIndex::K(0)).unwrap();
        assert!(invariant_vector(VectorCase::U, &rep).is_err());
    }

    #[test]
    fn u_vector_matches_conjugated_form() {
        let rep = rep_build(Family::AN, xi(), 1, 6, RepIndex::J(0)).unwrap();
        let (z, w) = (rep.z, rep.omega2.unwrap());
        let s = w.inv() * z - z.inv();
        let theta = Mat3::new(
            one(),
            zero(),
            zero(),
            s,
            one(),
            zero(),
            -s * s,
            -s * 2.0,
            one(),
        );
        let u = theta * Vec3::new(C64::new(2.0, 0.0), (w - w.inv()) * z, zero());
        assert!((u - invariant_vector(VectorCase::U, &rep).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn index_and_xi_guards() {
        assert!(matches!(
            rep_build(Family::AN, xi(), 1, 6, RepIndex::J(6)),
            Err(RepError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            rep_build(Family::NA, C64::new(0.0, 1.0), 1, 6, RepIndex::K(0)),
            Err(RepError::DegenerateXi { .. })
        ));
        assert!(rep_build(Family::NN, xi(), 1, 6, RepIndex::LM { l: 0, m: 0 }).is_err());
        assert!(rep_build(Family::NN, xi(), 1, 7, RepIndex::LM { l: 1, m: 0 }).is_err());
        assert!(rep_build(Family::NA, xi(), 1, 5, RepIndex::K(0)).is_err());
        assert!(rep_build(Family::NA, xi(), 1, 6, RepIndex::J(0)).is_err());
    }
}
