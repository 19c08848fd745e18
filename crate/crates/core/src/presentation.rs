//! Presentations of the torus-knot piece, the pattern piece and the cable exterior.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fox::{Word, WordError};

pub const MU_C: &str = "mu_C";
pub const LAMBDA_C: &str = "lambda_C";
pub const MU: &str = "mu";
pub const LAMBDA: &str = "lambda";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("parameter a must be at least 1, got {0}")]
    BadA(i64),
    #[error("parameter b must be at least 1, got {0}")]
    BadB(i64),
    #[error("cable parameters need 2b+1 > 4(2a+1), got a={a}, b={b}")]
    CableRange { a: i64, b: i64 },
    #[error("relator {relator} uses generator index {index} outside the presentation")]
    ForeignGenerator { relator: usize, index: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub label: String,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

/// Named peripheral words over a presentation's generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PeripheralSystem {
    pub words: BTreeMap<String, Word>,
    /// Twist parameter of the pattern, when the words depend on it.
    pub b: Option<i64>,
}

impl PeripheralSystem {
    pub fn get(&self, name: &str) -> Option<&Word> {
        self.words.get(name)
    }
}

impl Presentation {
    pub fn new(
        label: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        let p = Presentation {
            label: label.into(),
            generators,
            relators,
        };
        for (k, r) in p.relators.iter().enumerate() {
            if let Some(m) = r.max_generator() {
                if m >= p.generators.len() {
                    return Err(PresentationError::ForeignGenerator {
                        relator: k,
                        index: m,
                    });
                }
            }
        }
        Ok(p)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn word(&self, text: &str) -> Result<Word, WordError> {
        Word::parse(text, &self.generators)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.generators)
    }

    /// Primitive integer vector `e` with `Σ_i e_i·expsum(r, x_i) = 0` for every relator,
    /// i.e. the image of each generator in `H_1 = ℤ`. First nonzero entry positive.
    ///
    /// Only meaningful for deficiency-one presentations of knot groups.
    pub fn abelianization(&self) -> Vec<i64> {
        let n = self.generators.len();
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| (0..n).map(|g| r.exponent_sum(g)).collect())
            .collect();
        if rows.is_empty() {
            return vec![1; n];
        }
        // Signed maximal minors span the kernel of an (n-1)×n integer matrix of full rank.
        let mut e: Vec<i64> = (0..n)
            .map(|skip| {
                let minor: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != skip)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                sign * integer_det(&minor)
            })
            .collect();
        let g = e.iter().fold(0i64, |acc, v| gcd(acc, v.abs()));
        if g > 0 {
            for v in e.iter_mut() {
                *v /= g;
            }
        }
        if e.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
            for v in e.iter_mut() {
                *v = -*v;
            }
        }
        e
    }

    pub fn to_doc(&self, peripheral: &PeripheralSystem) -> PresentationDoc {
        PresentationDoc {
            label: self.label.clone(),
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.format_word(r)).collect(),
            peripheral: peripheral
                .words
                .iter()
                .map(|(k, w)| (k.clone(), self.format_word(w)))
                .collect(),
        }
    }

    pub fn from_doc(
        doc: &PresentationDoc,
    ) -> Result<(Presentation, PeripheralSystem), PresentationError> {
        let relators = doc
            .relators
            .iter()
            .map(|r| Word::parse(r, &doc.generators))
            .collect::<Result<Vec<_>, _>>()?;
        let p = Presentation::new(doc.label.clone(), doc.generators.clone(), relators)?;
        let mut words = BTreeMap::new();
        for (k, v) in &doc.peripheral {
            words.insert(k.clone(), Word::parse(v, &doc.generators)?);
        }
        Ok((p, PeripheralSystem { words, b: None }))
    }
}

/// Serialized form used by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub label: String,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub peripheral: BTreeMap<String, String>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub(crate) fn integer_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|v| *v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// `⟨x, y | (xy)^a x (xy)^{-a} y^{-1}⟩` with `μ_C = x`, `λ_C = y(xy)^{2a}x^{-4a-1}`.
pub fn torus_piece_presentation(
    a: i64,
) -> Result<(Presentation, PeripheralSystem), PresentationError> {
    if a < 1 {
        return Err(PresentationError::BadA(a));
    }
    let x = Word::gen(0);
    let y = Word::gen(1);
    let xy = &x * &y;
    let relator = &(&(&xy.pow(a) * &x) * &xy.pow(-a)) * &y.inverse();
    let longitude = &(&y * &xy.pow(2 * a)) * &x.pow(-4 * a - 1);
    let p = Presentation::new(
        format!("torus piece T(2,{})", 2 * a + 1),
        names(&["x", "y"]),
        vec![relator],
    )?;
    let mut words = BTreeMap::new();
    words.insert(MU_C.to_string(), x);
    words.insert(LAMBDA_C.to_string(), longitude);
    Ok((p, PeripheralSystem { words, b: None }))
}

/// Words over `{p, t}` used by the pattern piece: `q = tpt⁻¹` and `r = t(pq)^{-b}`.
fn pattern_words(b: i64) -> (Word, Word, Word, Word) {
    let p = Word::gen(0);
    let t = Word::gen(1);
    let q = &(&t * &p) * &t.inverse();
    let pq = &p * &q;
    let r = &t * &pq.pow(-b);
    (p, t, q, r)
}

/// `⟨p, t | ptpt p⁻¹t⁻¹p⁻¹t⁻¹⟩` with peripheral words depending on `b`.
pub fn pattern_piece_presentation(
    b: i64,
) -> Result<(Presentation, PeripheralSystem), PresentationError> {
    if b < 1 {
        return Err(PresentationError::BadB(b));
    }
    let (p, t, q, r) = pattern_words(b);
    let ptpt_inv = &(&(&p * &t) * &p) * &t.inverse();
    let pt = &p * &t;
    let tp = &t * &p;
    let relator = &(&pt * &pt) * &(&tp * &tp).inverse();
    let pq = &p * &q;
    let r_pq_b = &r * &pq.pow(b);
    let longitude = &(&(&(&r_pq_b * &p) * &q.pow(-b)) * &r_pq_b) * &p.pow(-3 * b - 1);
    let pres = Presentation::new("pattern piece", names(&["p", "t"]), vec![relator])?;
    let mut words = BTreeMap::new();
    words.insert(MU_C.to_string(), ptpt_inv.clone());
    words.insert(LAMBDA_C.to_string(), &t * &ptpt_inv.pow(-b));
    words.insert(MU.to_string(), p);
    words.insert(LAMBDA.to_string(), longitude);
    Ok((pres, PeripheralSystem { words, b: Some(b) }))
}

/// Deficiency-one presentation of the exterior of the `(2, 2b+1)` cable of `T(2, 2a+1)`
/// on generators `{x, y, p, t}`.
pub fn cable_exterior_presentation(
    a: i64,
    b: i64,
) -> Result<(Presentation, PeripheralSystem), PresentationError> {
    if a < 1 {
        return Err(PresentationError::BadA(a));
    }
    if b < 1 {
        return Err(PresentationError::BadB(b));
    }
    // The two sides have different parity, so they are never equal.
    if 2 * b + 1 < 4 * (2 * a + 1) {
        return Err(PresentationError::CableRange { a, b });
    }
    let (x, y) = (Word::gen(0), Word::gen(1));
    let (p, t) = (Word::gen(2), Word::gen(3));
    let xy = &x * &y;
    let r1 = &(&(&xy.pow(a) * &x) * &xy.pow(-a)) * &y.inverse();
    let lambda_c_xy = &(&y * &xy.pow(2 * a)) * &x.pow(-4 * a - 1);
    let ptpt_inv = &(&(&p * &t) * &p) * &t.inverse();
    let lambda_c_pt = &t * &ptpt_inv.pow(-b);
    let r2 = &lambda_c_xy * &lambda_c_pt.inverse();
    let r3 = &x * &ptpt_inv.inverse();

    let q = &(&t * &p) * &t.inverse();
    let pq = &p * &q;
    let r_pq_b = &(&t * &pq.pow(-b)) * &pq.pow(b);
    let longitude = &(&(&(&r_pq_b * &p) * &q.pow(-b)) * &r_pq_b) * &p.pow(-3 * b - 1);

    let pres = Presentation::new(
        format!("cable T(2,{})^(2,{})", 2 * a + 1, 2 * b + 1),
        names(&["x", "y", "p", "t"]),
        vec![r1, r2, r3],
    )?;
    let mut words = BTreeMap::new();
    words.insert(MU_C.to_string(), x);
    words.insert(LAMBDA_C.to_string(), lambda_c_xy);
    words.insert(MU.to_string(), p);
    words.insert(LAMBDA.to_string(), longitude);
    Ok((pres, PeripheralSystem { words, b: Some(b) }))
}
