//! Torsion of the cable exterior `E = C ∪_S D` from the torsions of the torus-knot piece `C`,
//! the pattern piece `D`, the splitting torus `S` and the long exact sequence in homology.

use thiserror::Error;

use crate::chain::{
    cell_chain, chain_of_loop, presentation_complex, torus_complex, vec3_to_cvector, ChainComplex,
    ChainError, HomologyLift,
};
use crate::fox::Word;
use crate::linalg::{self, c, CMatrix, CVector, C64};
use crate::presentation::{
    pattern_piece_presentation, torus_piece_presentation, PeripheralSystem, Presentation,
    PresentationError, LAMBDA_C, MU_C,
};
use crate::representation::{
    invariant_vector, rep_build, Family, Mat3, RepError, RepIndex, Representation, Vec3, VectorCase,
};
use crate::torsion::{reidemeister_torsion, TorsionError, TorsionOptions, TorsionValue};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MvError {
    #[error("family AA has no splitting computation; use the direct abelian route")]
    AbelianFamily,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("{piece}: {source}")]
    Chain {
        piece: &'static str,
        #[source]
        source: ChainError,
    },
    #[error("{piece}: {source}")]
    Torsion {
        piece: &'static str,
        #[source]
        source: TorsionError,
    },
    #[error("{piece}: homology dimensions {got:?}, expected {expected:?}")]
    HomologyDims {
        piece: &'static str,
        got: Vec<usize>,
        expected: Vec<usize>,
    },
    #[error("H_{degree}: designated classes do not complete the image of the inclusion map")]
    Designated { degree: usize },
    #[error(
        "sequence not exact at slot {slot} (homology dimension {dim}, residual {residual:.3e})"
    )]
    NotExact {
        slot: usize,
        dim: usize,
        residual: f64,
    },
}

/// A piece complex with its homology basis and torsion.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub complex: ChainComplex,
    pub lifts: Vec<HomologyLift>,
    pub torsion: TorsionValue,
}

impl Piece {
    fn lift(&self, degree: usize) -> HomologyLift {
        self.lifts
            .iter()
            .find(|l| l.degree == degree)
            .cloned()
            .unwrap_or_else(|| HomologyLift::new(degree, Vec::new()))
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        (0..3).map(|i| self.lift(i).chains.len()).collect()
    }
}

/// Everything the gluing needs for one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct MvData {
    pub family: Family,
    pub rep: Representation,
    pub torus_piece: (Presentation, PeripheralSystem),
    pub pattern_piece: (Presentation, PeripheralSystem),
    /// Invariant vector used on the splitting torus.
    pub torus_vector: Vec3,
    pub c: Piece,
    pub d: Piece,
    pub s: Piece,
}

/// Matrices of `H_k(S) → H_k(C) ⊕ H_k(D)` for `k = 2, 1, 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedMaps {
    pub phi2: CMatrix,
    pub phi1: CMatrix,
    pub phi0: CMatrix,
}

/// The long exact sequence as an acyclic complex with nine slots, slot `3k` holding
/// `H_k(E)`, slot `3k+1` holding `H_k(C) ⊕ H_k(D)` and slot `3k+2` holding `H_k(S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MvSequence {
    pub complex: ChainComplex,
    pub psi: [CMatrix; 3],
    pub delta: [CMatrix; 2],
    pub exactness_residual: f64,
}

/// Result of the gluing computation.
#[derive(Debug, Clone, PartialEq)]
pub struct GluedTorsion {
    pub value: TorsionValue,
    pub tor_c: TorsionValue,
    pub tor_d: TorsionValue,
    pub tor_s: TorsionValue,
    pub tor_sequence: TorsionValue,
    pub maps: InducedMaps,
    pub sequence: MvSequence,
    pub data: MvData,
}

fn chain_err(piece: &'static str) -> impl Fn(ChainError) -> MvError {
    move |source| MvError::Chain { piece, source }
}

fn piece(
    name: &'static str,
    complex: ChainComplex,
    lifts: Vec<HomologyLift>,
    expected: [usize; 3],
    opts: &TorsionOptions,
) -> Result<Piece, MvError> {
    let got = complex.homology(opts.tol).homology;
    if got != expected {
        return Err(MvError::HomologyDims {
            piece: name,
            got,
            expected: expected.to_vec(),
        });
    }
    let torsion =
        reidemeister_torsion(&complex, &lifts, opts).map_err(|source| MvError::Torsion {
            piece: name,
            source,
        })?;
    Ok(Piece {
        complex,
        lifts,
        torsion,
    })
}

fn word(per: &PeripheralSystem, name: &str) -> Word {
    per.get(name).cloned().expect("built-in peripheral word")
}

/// `(I − Ad ρ(y(xy)^a))·v` on the 2-cell of the torus-knot piece: the image of the
/// torus fundamental class, whose attaching word is the relator times a conjugate of its inverse.
pub fn torus_class_in_torus_piece(
    rep: &Representation,
    torus: &Presentation,
    a: i64,
    v: &Vec3,
) -> Result<Vec3, RepError> {
    let x = Word::gen(0);
    let y = Word::gen(1);
    let conj = &y * &(&x * &y).pow(a);
    let ad = rep.word_adjoint(torus, &conj)?;
    Ok((Mat3::identity() - ad) * v)
}

/// Builds the three piece complexes with the homology bases attached to `family`.
pub fn mv_data(rep: &Representation, opts: &TorsionOptions) -> Result<MvData, MvError> {
    let family = rep.family;
    let (a, b) = (rep.a, rep.b);
    let (cp, cper) = torus_piece_presentation(a)?;
    let (dp, dper) = pattern_piece_presentation(b)?;
    let cx_c = presentation_complex(&cp, rep, opts.tol).map_err(chain_err("C"))?;
    let cx_d = presentation_complex(&dp, rep, opts.tol).map_err(chain_err("D"))?;
    let meridian = rep.word_adjoint(&cp, &word(&cper, MU_C))?;
    let longitude = rep.word_adjoint(&cp, &word(&cper, LAMBDA_C))?;
    let cx_s = torus_complex(&meridian, &longitude, opts.tol).map_err(chain_err("S"))?;

    let on = |cells: usize, cell: usize, v: &Vec3| cell_chain(cells, cell, v);
    let (v, c_lifts, d_lifts, c_dims, d_dims) = match family {
        Family::AA => return Err(MvError::AbelianFamily),
        Family::AN => {
            let u = invariant_vector(VectorCase::U, rep)?;
            let vv = invariant_vector(VectorCase::V, rep)?;
            let c_lifts = vec![
                HomologyLift::new(1, vec![on(2, 0, &u)]),
                HomologyLift::new(0, vec![vec3_to_cvector(&u)]),
            ];
            let d_lifts = vec![
                HomologyLift::new(2, vec![vec3_to_cvector(&u), vec3_to_cvector(&vv)]),
                HomologyLift::new(1, vec![on(2, 0, &vv), on(2, 1, &u)]),
            ];
            (u, c_lifts, d_lifts, [1, 1, 0], [0, 2, 2])
        }
        Family::NA => {
            let w = invariant_vector(VectorCase::W, rep)?;
            let f = torus_class_in_torus_piece(rep, &cp, a, &w)?;
            let c_lifts = vec![
                HomologyLift::new(2, vec![vec3_to_cvector(&f)]),
                HomologyLift::new(1, vec![on(2, 0, &w)]),
            ];
            let d_lifts = vec![
                HomologyLift::new(2, vec![vec3_to_cvector(&w)]),
                HomologyLift::new(1, vec![on(2, 0, &w), on(2, 1, &w)]),
                HomologyLift::new(0, vec![vec3_to_cvector(&w)]),
            ];
            (w, c_lifts, d_lifts, [0, 1, 1], [1, 2, 1])
        }
        Family::NN => {
            let u = invariant_vector(VectorCase::UTilde, rep)?;
            let vv = invariant_vector(VectorCase::VTilde, rep)?;
            let f = torus_class_in_torus_piece(rep, &cp, a, &u)?;
            let c_lifts = vec![
                HomologyLift::new(2, vec![vec3_to_cvector(&f)]),
                HomologyLift::new(1, vec![on(2, 0, &u)]),
            ];
            let d_lifts = vec![
                HomologyLift::new(2, vec![vec3_to_cvector(&u), vec3_to_cvector(&vv)]),
                HomologyLift::new(1, vec![on(2, 0, &vv), on(2, 1, &u)]),
            ];
            (u, c_lifts, d_lifts, [0, 1, 1], [0, 2, 2])
        }
    };
    let s_lifts = vec![
        HomologyLift::new(2, vec![vec3_to_cvector(&v)]),
        HomologyLift::new(1, vec![on(2, 0, &v), on(2, 1, &v)]),
        HomologyLift::new(0, vec![vec3_to_cvector(&v)]),
    ];
    let c = piece("C", cx_c, c_lifts, c_dims, opts)?;
    let d = piece("D", cx_d, d_lifts, d_dims, opts)?;
    let s = piece("S", cx_s, s_lifts, [1, 2, 1], opts)?;
    Ok(MvData {
        family,
        rep: rep.clone(),
        torus_piece: (cp, cper),
        pattern_piece: (dp, dper),
        torus_vector: v,
        c,
        d,
        s,
    })
}

fn stack_coords(top: Vec<C64>, bottom: Vec<C64>) -> Vec<C64> {
    top.into_iter().chain(bottom).collect()
}

fn columns_to_matrix(cols: &[Vec<C64>], rows: usize) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    m
}

/// Images of the torus homology basis in the bases of `H_*(C) ⊕ H_*(D)`.
pub fn induced_maps(data: &MvData, tol: f64) -> Result<InducedMaps, MvError> {
    let rep = &data.rep;
    let v = data.torus_vector;
    let (cp, cper) = &data.torus_piece;
    let (dp, dper) = &data.pattern_piece;
    let rows = |k: usize| data.c.lift(k).chains.len() + data.d.lift(k).chains.len();

    // H_2: the fundamental class of S lands on the 2-cell of each piece.
    let f_c = torus_class_in_torus_piece(rep, cp, rep.a, &v)?;
    let c2 = data
        .c
        .complex
        .class_coordinates(&vec3_to_cvector(&f_c), &data.c.lift(2), tol)
        .map_err(chain_err("C"))?;
    let d2 = data
        .d
        .complex
        .class_coordinates(&vec3_to_cvector(&v), &data.d.lift(2), tol)
        .map_err(chain_err("D"))?;
    let phi2 = columns_to_matrix(&[stack_coords(c2, d2)], rows(2));

    // H_1: meridian and longitude of S pushed into each piece.
    let mut cols1 = Vec::new();
    for name in [MU_C, LAMBDA_C] {
        let cc = chain_of_loop(&word(cper, name), &v, rep, cp).map_err(chain_err("C"))?;
        let dc = chain_of_loop(&word(dper, name), &v, rep, dp).map_err(chain_err("D"))?;
        let a = data
            .c
            .complex
            .class_coordinates(&cc, &data.c.lift(1), tol)
            .map_err(chain_err("C"))?;
        let b = data
            .d
            .complex
            .class_coordinates(&dc, &data.d.lift(1), tol)
            .map_err(chain_err("D"))?;
        cols1.push(stack_coords(a, b));
    }
    let phi1 = columns_to_matrix(&cols1, rows(1));

    // H_0: the vertex of S goes to the vertex of each piece.
    let v0 = vec3_to_cvector(&v);
    let c0 = data
        .c
        .complex
        .class_coordinates(&v0, &data.c.lift(0), tol)
        .map_err(chain_err("C"))?;
    let d0 = data
        .d
        .complex
        .class_coordinates(&v0, &data.d.lift(0), tol)
        .map_err(chain_err("D"))?;
    let phi0 = columns_to_matrix(&[stack_coords(c0, d0)], rows(0));
    Ok(InducedMaps { phi2, phi1, phi0 })
}

/// Basis of `H_k(E)` for one degree: classes of `H_k(C) ⊕ H_k(D)` (by index) whose images
/// complete `im φ_k`, then extra classes specified only through their image in `H_{k−1}(S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeBasis {
    pub designated: Vec<usize>,
    pub connecting_images: Vec<CVector>,
}

/// Bases of `H_2(E), H_1(E), H_0(E)` per family.
pub fn exterior_bases(family: Family) -> [DegreeBasis; 3] {
    let none = || DegreeBasis {
        designated: vec![],
        connecting_images: vec![],
    };
    match family {
        Family::AN | Family::NA => [
            DegreeBasis {
                designated: vec![1],
                connecting_images: vec![],
            },
            DegreeBasis {
                designated: vec![1],
                connecting_images: vec![],
            },
            none(),
        ],
        Family::NN => [
            DegreeBasis {
                designated: vec![1, 2],
                connecting_images: vec![],
            },
            DegreeBasis {
                designated: vec![1],
                connecting_images: vec![linalg::unit(1, 0)],
            },
            none(),
        ],
        Family::AA => [none(), none(), none()],
    }
}

/// Row functionals vanishing on `im φ` and dual to the designated classes.
fn quotient_map(
    phi: &CMatrix,
    designated: &[usize],
    degree: usize,
    tol: f64,
) -> Result<CMatrix, MvError> {
    let m = phi.nrows();
    let (_, image) = linalg::image_pivots(phi, tol);
    let mut cols = image;
    cols.extend(designated.iter().map(|&i| linalg::unit(m, i)));
    if cols.len() != m {
        return Err(MvError::Designated { degree });
    }
    let basis = linalg::from_columns(&cols, m);
    if linalg::rank(&basis, tol) < m {
        return Err(MvError::Designated { degree });
    }
    let inv = basis.try_inverse().ok_or(MvError::Designated { degree })?;
    let r = designated.len();
    Ok(inv.rows(m - r, r).into_owned())
}

/// Assembles the exact sequence from the induced maps.
pub fn build_mv_sequence(
    family: Family,
    maps: &InducedMaps,
    tol: f64,
) -> Result<MvSequence, MvError> {
    let bases = exterior_bases(family);
    let phis = [&maps.phi2, &maps.phi1, &maps.phi0];
    let mut psi: Vec<CMatrix> = Vec::new();
    let mut delta: Vec<CMatrix> = Vec::new();
    for (slot, (basis, phi)) in bases.iter().zip(phis).enumerate() {
        let degree = 2 - slot;
        let q = quotient_map(phi, &basis.designated, degree, tol)?;
        let e_dim = basis.designated.len() + basis.connecting_images.len();
        let mut p = CMatrix::zeros(e_dim, phi.nrows());
        p.rows_mut(0, q.nrows()).copy_from(&q);
        psi.push(p);
        if degree > 0 {
            let s_dim = phis[slot + 1].ncols();
            let mut d = CMatrix::zeros(s_dim, e_dim);
            for (k, img) in basis.connecting_images.iter().enumerate() {
                d.set_column(basis.designated.len() + k, img);
            }
            delta.push(d);
        }
    }
    let [psi2, psi1, psi0]: [CMatrix; 3] = psi.try_into().expect("three degrees");
    let [delta2, delta1]: [CMatrix; 2] = delta.try_into().expect("two connecting maps");
    let dims = vec![
        psi0.nrows(),
        maps.phi0.nrows(),
        maps.phi0.ncols(),
        psi1.nrows(),
        maps.phi1.nrows(),
        maps.phi1.ncols(),
        psi2.nrows(),
        maps.phi2.nrows(),
        maps.phi2.ncols(),
    ];
    let boundaries = vec![
        psi0.clone(),
        maps.phi0.clone(),
        delta1.clone(),
        psi1.clone(),
        maps.phi1.clone(),
        delta2.clone(),
        psi2.clone(),
        maps.phi2.clone(),
    ];
    let names = [
        "H0(E)",
        "H0(C)+H0(D)",
        "H0(S)",
        "H1(E)",
        "H1(C)+H1(D)",
        "H1(S)",
        "H2(E)",
        "H2(C)+H2(D)",
        "H2(S)",
    ];
    let labels = dims
        .iter()
        .zip(names)
        .map(|(d, n)| (0..*d).map(|i| format!("{n}[{i}]")).collect())
        .collect();
    let complex = ChainComplex::new(dims, boundaries, labels, tol.sqrt()).map_err(|e| match e {
        ChainError::NotAComplex {
            degree, residual, ..
        } => MvError::NotExact {
            slot: degree,
            dim: 0,
            residual,
        },
        other => MvError::Chain {
            piece: "sequence",
            source: other,
        },
    })?;
    let residual = complex.square_zero_residual();
    let hom = complex.homology(tol);
    if let Some((slot, &dim)) = hom.homology.iter().enumerate().find(|(_, d)| **d != 0) {
        return Err(MvError::NotExact {
            slot,
            dim,
            residual,
        });
    }
    Ok(MvSequence {
        complex,
        psi: [psi2, psi1, psi0],
        delta: [delta2, delta1],
        exactness_residual: residual,
    })
}

pub fn mv_torsion(seq: &MvSequence, opts: &TorsionOptions) -> Result<TorsionValue, MvError> {
    reidemeister_torsion(&seq.complex, &[], opts).map_err(|source| MvError::Torsion {
        piece: "sequence",
        source,
    })
}

/// `Tor(E) = Tor(C)·Tor(D) / (Tor(S)·Tor(ℋ))` for a non-abelian family.
pub fn glue(rep: &Representation, opts: &TorsionOptions) -> Result<GluedTorsion, MvError> {
    if rep.family == Family::AA {
        return Err(MvError::AbelianFamily);
    }
    let data = mv_data(rep, opts)?;
    let maps = induced_maps(&data, opts.tol)?;
    let sequence = build_mv_sequence(rep.family, &maps, opts.tol)?;
    let tor_sequence = mv_torsion(&sequence, opts)?;
    let (tc, td, ts) = (data.c.torsion, data.d.torsion, data.s.torsion);
    let value = TorsionValue(tc.value() * td.value() / (ts.value() * tor_sequence.value()));
    Ok(GluedTorsion {
        value,
        tor_c: tc,
        tor_d: td,
        tor_s: ts,
        tor_sequence,
        maps,
        sequence,
        data,
    })
}

pub fn tor_e(
    family: Family,
    a: i64,
    b: i64,
    index: RepIndex,
    xi: C64,
    opts: &TorsionOptions,
) -> Result<GluedTorsion, MvError> {
    let rep = rep_build(family, xi, a, b, index)?;
    glue(&rep, opts)
}

/// Torsion of a presentation complex under the abelian representation sending every
/// generator's meridian to `diag(e^{ξ/2}, e^{-ξ/2})`, based by the meridian loop and
/// the vertex, both tensored with `H`.
pub fn direct_abelian_torsion(
    p: &Presentation,
    rep: &Representation,
    meridian: &Word,
    opts: &TorsionOptions,
) -> Result<TorsionValue, MvError> {
    let cx = presentation_complex(p, rep, opts.tol).map_err(chain_err("exterior"))?;
    let h = Vec3::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
    let loop_chain = chain_of_loop(meridian, &h, rep, p).map_err(chain_err("exterior"))?;
    let lifts = vec![
        HomologyLift::new(1, vec![loop_chain]),
        HomologyLift::new(0, vec![vec3_to_cvector(&h)]),
    ];
    reidemeister_torsion(&cx, &lifts, opts).map_err(|source| MvError::Torsion {
        piece: "exterior",
        source,
    })
}
