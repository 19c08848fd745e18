//! Scalar reference formulas: asymptotic torsion and phase terms, torus-knot terms,
//! Alexander polynomials, and the closed forms of the glued torsions.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

use crate::fox::fox_derivative;
use crate::linalg::{c, C64};
use crate::presentation::{
    cable_exterior_presentation, torus_piece_presentation, Presentation, PresentationError,
};
use crate::representation::{root_of_minus_one, Family, RepIndex};

/// Denominators below this magnitude are treated as zero.
pub const VANISHING_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("{formula}: denominator `{factor}` vanishes")]
    Vanishing {
        formula: &'static str,
        factor: &'static str,
    },
    #[error("{formula}: index {index:?} is not admissible for (a, b) = ({a}, {b})")]
    Index {
        formula: &'static str,
        index: RepIndex,
        a: i64,
        b: i64,
    },
    #[error("Alexander polynomial: {0}")]
    Alexander(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Integer Laurent polynomial `t^{shift_halves/2} · Σ_k coeffs[k]·t^{low+k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    pub low: i64,
    pub coeffs: Vec<i64>,
    pub shift_halves: i64,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            low: 0,
            coeffs: Vec::new(),
            shift_halves: 0,
        }
    }

    /// `Σ_k coeffs[k]·t^{low+k}` with zero end coefficients stripped.
    pub fn new(low: i64, coeffs: Vec<i64>) -> Self {
        Laurent {
            low,
            coeffs,
            shift_halves: 0,
        }
        .trimmed()
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        Laurent {
            low: exp,
            coeffs: vec![coeff],
            shift_halves: 0,
        }
        .trimmed()
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        terms.iter().fold(Laurent::zero(), |acc, &(coeff, exp)| {
            acc.add(&Laurent::monomial(coeff, exp))
        })
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|v| **v == 0).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest minus lowest exponent.
    pub fn span(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coefficient(&self, exp: i64) -> i64 {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[k as usize]
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        assert_eq!(
            self.shift_halves, other.shift_halves,
            "half-shifts must agree"
        );
        if self.is_zero() {
            return other.clone().trimmed();
        }
        if other.is_zero() {
            return self.clone().trimmed();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.span()).max(other.low + other.span());
        let coeffs = (low..=high)
            .map(|e| self.coefficient(e) + other.coefficient(e))
            .collect();
        Laurent {
            low,
            coeffs,
            shift_halves: self.shift_halves,
        }
        .trimmed()
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            coeffs: self.coeffs.iter().map(|v| -v).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent {
            low: self.low + other.low,
            coeffs,
            shift_halves: self.shift_halves + other.shift_halves,
        }
        .trimmed()
    }

    /// Exact quotient by `divisor`, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Laurent) -> Option<Laurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let mut rem = self.coeffs.clone();
        let d = &divisor.coeffs;
        let lead = *d.last().expect("nonzero divisor");
        if rem.len() < d.len() {
            return None;
        }
        let mut quot = vec![0i64; rem.len() - d.len() + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + d.len() - 1];
            if top % lead != 0 {
                return None;
            }
            let q = top / lead;
            quot[k] = q;
            for (i, dv) in d.iter().enumerate() {
                rem[k + i] -= q * dv;
            }
        }
        if rem.iter().any(|v| *v != 0) {
            return None;
        }
        Some(
            Laurent {
                low: self.low - divisor.low,
                coeffs: quot,
                shift_halves: self.shift_halves - divisor.shift_halves,
            }
            .trimmed(),
        )
    }

    /// Value at `t`, with `t^{1/2}` taken on the principal branch.
    pub fn eval(&self, t: C64) -> C64 {
        let poly = self
            .coeffs
            .iter()
            .rev()
            .fold(c(0.0, 0.0), |acc, v| acc * t + c(*v as f64, 0.0));
        let half = t.sqrt().powi(self.shift_halves as i32);
        poly * t.powi(self.low as i32) * half
    }

    /// Sum of the coefficients.
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Multiplies by a monomial so the exponents are centred on zero.
    pub fn symmetrized(&self) -> Laurent {
        if self.is_zero() {
            return self.clone();
        }
        let total_halves = 2 * self.low + self.shift_halves + self.span();
        // Target: 2·low' + shift' = −span, so the centre of the exponent range is 0.
        let shift = -total_halves;
        let low_shift = shift.div_euclid(2);
        Laurent {
            low: self.low + low_shift,
            coeffs: self.coeffs.clone(),
            shift_halves: self.shift_halves + shift.rem_euclid(2),
        }
    }

    /// Exponent range is centred on zero.
    pub fn is_centred(&self) -> bool {
        self.is_zero() || 2 * self.low + self.shift_halves + self.span() == 0
    }

    /// `f(t) = f(t⁻¹)`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.coeffs.len();
        self.is_centred() && (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, v) in self.coeffs.iter().enumerate().rev() {
            if *v == 0 {
                continue;
            }
            let halves = 2 * (self.low + k as i64) + self.shift_halves;
            let sign = if *v < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = v.abs();
            let var = match halves {
                0 => String::new(),
                2 => "t".into(),
                h if h % 2 == 0 => format!("t^{}", h / 2),
                h => format!("t^({h}/2)"),
            };
            let body = if var.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                var
            } else {
                format!("{mag}{var}")
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// `1 + t + ⋯ + t^{|e|−1}`, which equals `(t^e − 1)/(t − 1)` up to a unit.
fn geometric(e: i64) -> Laurent {
    Laurent {
        low: 0,
        coeffs: vec![1; e.unsigned_abs() as usize],
        shift_halves: 0,
    }
}

fn poly_det(m: &[Vec<Laurent>]) -> Laurent {
    match m.len() {
        0 => Laurent::monomial(1, 0),
        1 => m[0][0].clone(),
        n => (0..n).fold(Laurent::zero(), |acc, j| {
            if m[0][j].is_zero() {
                return acc;
            }
            let minor: Vec<Vec<Laurent>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = m[0][j].mul(&poly_det(&minor));
            acc.add(&if j % 2 == 0 { term } else { term.neg() })
        }),
    }
}

/// Alexander polynomial of a deficiency-one knot-group presentation from its abelianized
/// Fox matrix, symmetrized with `Δ(1) = 1`.
pub fn alexander_polynomial(p: &Presentation) -> Result<Laurent, ClosedFormError> {
    let n = p.num_generators();
    if p.relators.len() + 1 != n {
        return Err(ClosedFormError::Alexander(format!(
            "presentation has {} generators and {} relators; deficiency one required",
            n,
            p.relators.len()
        )));
    }
    let ab = p.abelianization();
    let Some(skip) = ab.iter().position(|e| *e != 0) else {
        return Err(ClosedFormError::Alexander(
            "abelianization is trivial".into(),
        ));
    };
    let matrix: Vec<Vec<Laurent>> = p
        .relators
        .iter()
        .map(|r| {
            (0..n)
                .filter(|g| *g != skip)
                .map(|g| {
                    fox_derivative(r, g)
                        .terms()
                        .fold(Laurent::zero(), |acc, (w, k)| {
                            let exp: i64 = (0..n).map(|h| ab[h] * w.exponent_sum(h)).sum();
                            acc.add(&Laurent::monomial(k, exp))
                        })
                })
                .collect()
        })
        .collect();
    let det = poly_det(&matrix);
    let delta = det.exact_div(&geometric(ab[skip])).ok_or_else(|| {
        ClosedFormError::Alexander(format!(
            "Fox minor {det} is not divisible by the generator factor"
        ))
    })?;
    let delta = delta.symmetrized();
    match delta.at_one() {
        1 => Ok(delta),
        -1 => Ok(delta.neg()),
        v => Err(ClosedFormError::Alexander(format!(
            "polynomial {delta} has value {v} at t = 1"
        ))),
    }
}

/// Which knot an Alexander polynomial is requested for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlexanderSource {
    /// Closed form for `T(2, 2a+1)`.
    Torus { a: i64 },
    /// Fox route on the torus-knot piece presentation.
    TorusFox { a: i64 },
    /// Fox route on the cable exterior presentation.
    Cable { a: i64, b: i64 },
}

/// `Δ(T(2,2a+1); t)` in terms of `s = t^{1/2}` and `n = 2a+1`. The quotient
/// `(s^{2n} − s^{−2n})(s − s⁻¹)/((s² − s⁻²)(s^n − s^{−n}))` is evaluated in its cancelled
/// form `(s^n + s^{−n})/(s + s⁻¹)`, which has no removable zeros at roots of unity.
pub fn torus_alexander(a: i64, t: C64) -> Result<C64, ClosedFormError> {
    let n = (2 * a + 1) as i32;
    let s = t.sqrt();
    let si = s.inv();
    let den = nonzero(s + si, "torus Alexander polynomial", "t^(1/2) + t^(-1/2)")?;
    Ok((s.powi(n) + si.powi(n)) / den)
}

pub fn alexander(source: AlexanderSource, t: C64) -> Result<C64, ClosedFormError> {
    match source {
        AlexanderSource::Torus { a } => torus_alexander(a, t),
        AlexanderSource::TorusFox { a } => {
            let (p, _) = torus_piece_presentation(a)?;
            Ok(alexander_polynomial(&p)?.eval(t))
        }
        AlexanderSource::Cable { a, b } => {
            let (p, _) = cable_exterior_presentation(a, b)?;
            Ok(alexander_polynomial(&p)?.eval(t))
        }
    }
}

/// Identifies a scalar formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    Tau0,
    Tau1,
    Tau2,
    Tau3,
    S1,
    S2,
    S3,
    TorusTau,
    TorusPhase,
    ExteriorAN,
    ExteriorNA,
    ExteriorNN,
}

/// A formula value with the parameters it was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarFormulaResult {
    pub value: C64,
    pub formula: Formula,
    pub xi: C64,
    pub a: i64,
    pub b: i64,
    pub index: RepIndex,
}

fn result(
    formula: Formula,
    value: C64,
    xi: C64,
    a: i64,
    b: i64,
    index: RepIndex,
) -> ScalarFormulaResult {
    ScalarFormulaResult {
        value,
        formula,
        xi,
        a,
        b,
        index,
    }
}

fn nonzero(
    value: C64,
    formula: &'static str,
    factor: &'static str,
) -> Result<C64, ClosedFormError> {
    if value.norm() < VANISHING_TOL {
        Err(ClosedFormError::Vanishing { formula, factor })
    } else {
        Ok(value)
    }
}

fn sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `2b+1 − 4(2a+1)`.
pub fn pattern_gap(a: i64, b: i64) -> i64 {
    2 * b + 1 - 4 * (2 * a + 1)
}

fn bad_index(formula: &'static str, index: RepIndex, a: i64, b: i64) -> ClosedFormError {
    ClosedFormError::Index {
        formula,
        index,
        a,
        b,
    }
}

fn j_index(formula: &'static str, index: RepIndex, a: i64, b: i64) -> Result<i64, ClosedFormError> {
    match index {
        RepIndex::J(j) if (0..b).contains(&j) => Ok(j),
        _ => Err(bad_index(formula, index, a, b)),
    }
}

fn k_index(formula: &'static str, index: RepIndex, a: i64, b: i64) -> Result<i64, ClosedFormError> {
    match index {
        RepIndex::K(k) if (0..a).contains(&k) => Ok(k),
        _ => Err(bad_index(formula, index, a, b)),
    }
}

fn lm_index(
    formula: &'static str,
    index: RepIndex,
    a: i64,
    b: i64,
) -> Result<(i64, i64), ClosedFormError> {
    let gap = pattern_gap(a, b);
    match index {
        RepIndex::LM { l, m } if (0..(gap - 1) / 2).contains(&l) && (0..a).contains(&m) => {
            Ok((l, m))
        }
        _ => Err(bad_index(formula, index, a, b)),
    }
}

/// Asymptotic torsion terms `τ₀, …, τ₃`.
pub fn tau(
    which: u8,
    xi: C64,
    a: i64,
    b: i64,
    index: RepIndex,
) -> Result<ScalarFormulaResult, ClosedFormError> {
    let (af, bf) = ((2 * a + 1) as f64, (2 * b + 1) as f64);
    let gap = pattern_gap(a, b) as f64;
    match which {
        0 => {
            let delta = alexander(AlexanderSource::Cable { a, b }, xi.exp())?;
            let delta = nonzero(delta, "tau0", "Delta(cable; e^xi)")?;
            Ok(result(
                Formula::Tau0,
                (xi / 2.0).sinh() * 2.0 / delta,
                xi,
                a,
                b,
                index,
            ))
        }
        1 => {
            let j = j_index("tau1", index, a, b)?;
            let jj = (2 * j + 1) as f64;
            let den = nonzero(
                c((jj * af * PI / bf).cos(), 0.0),
                "tau1",
                "cos((2j+1)(2a+1)pi/(2b+1))",
            )?;
            let v = sign(j) * (2.0 / bf).sqrt() * (2.0 * jj * PI / bf).sin();
            Ok(result(Formula::Tau1, c(v, 0.0) / den, xi, a, b, index))
        }
        2 => {
            let k = k_index("tau2", index, a, b)?;
            let kk = (2 * k + 1) as f64;
            let den = nonzero((xi * gap / 2.0).cosh(), "tau2", "cosh((2b+1-4(2a+1))xi/2)")?;
            let v = sign(k + 1) * (2.0 / af).sqrt() * (kk * PI / af).sin();
            Ok(result(Formula::Tau2, c(v, 0.0) / den, xi, a, b, index))
        }
        3 => {
            let (l, m) = lm_index("tau3", index, a, b)?;
            let mm = (2 * m + 1) as f64;
            let v = sign(l + m) * 4.0 / (af * gap).sqrt() * (mm * PI / af).sin();
            Ok(result(Formula::Tau3, c(v, 0.0), xi, a, b, index))
        }
        _ => Err(bad_index("tau", index, a, b)),
    }
}

/// Phase terms of the asymptotic expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    S1,
    S2,
    S3,
}

pub fn phase(
    which: Phase,
    xi: C64,
    a: i64,
    b: i64,
    index: RepIndex,
) -> Result<ScalarFormulaResult, ClosedFormError> {
    let i = c(0.0, 1.0);
    let (af, bf) = ((2 * a + 1) as f64, (2 * b + 1) as f64);
    let pi2 = PI * PI;
    match which {
        Phase::S1 => {
            let jj = (2 * j_index("S1", index, a, b)? + 1) as f64;
            let v = xi * i * (jj * PI) - xi * xi * (bf / 2.0) + jj * jj * pi2 / (2.0 * bf);
            Ok(result(Formula::S1, v, xi, a, b, index))
        }
        Phase::S2 => {
            let kk = (2 * k_index("S2", index, a, b)? + 1) as f64;
            let v = xi * i * (2.0 * kk * PI) - xi * xi * (2.0 * af) + kk * kk * pi2 / (2.0 * af);
            Ok(result(Formula::S2, v, xi, a, b, index))
        }
        Phase::S3 => {
            let (l, m) = lm_index("S3", index, a, b)?;
            let (ll, mm) = ((2 * l + 1) as f64, (2 * m + 1) as f64);
            let gap = pattern_gap(a, b) as f64;
            let num = ll * ll * af + mm * mm * bf - 4.0 * ll * mm * af;
            let v = xi * i * (ll * PI) - xi * xi * (bf / 2.0) + pi2 * num / (2.0 * af * gap);
            Ok(result(Formula::S3, v, xi, a, b, index))
        }
    }
}

/// `τ(k) = (−1)^{k+1}·4 sin(kπ/c) sin(kπ/d)/√(cd)` for `T(c, d)`.
pub fn torus_tau(c_: i64, d: i64, k: i64) -> ScalarFormulaResult {
    let (cf, df, kf) = (c_ as f64, d as f64, k as f64);
    let v = sign(k + 1) * 4.0 * (kf * PI / cf).sin() * (kf * PI / df).sin() / (cf * df).sqrt();
    result(
        Formula::TorusTau,
        c(v, 0.0),
        c(0.0, 0.0),
        c_,
        d,
        RepIndex::K(k),
    )
}

/// `S(ξ; k) = −(2kπi − cdξ)²/(4cd)` for `T(c, d)`.
pub fn torus_phase(xi: C64, c_: i64, d: i64, k: i64) -> ScalarFormulaResult {
    let cd = (c_ * d) as f64;
    let u = c(0.0, 2.0 * k as f64 * PI) - xi * cd;
    result(
        Formula::TorusPhase,
        -(u * u) / (4.0 * cd),
        xi,
        c_,
        d,
        RepIndex::K(k),
    )
}

/// Roots of unity attached to an index, in the same convention as the representations.
pub fn omega1(a: i64, n: i64) -> C64 {
    root_of_minus_one(n, 2 * a + 1)
}

pub fn omega2(b: i64, j: i64) -> C64 {
    root_of_minus_one(j, 2 * b + 1)
}

pub fn omega3(a: i64, b: i64, l: i64) -> C64 {
    root_of_minus_one(l, pattern_gap(a, b))
}

/// Closed-form torsion of the cable exterior for a non-abelian family.
pub fn exterior_torsion(
    family: Family,
    a: i64,
    b: i64,
    index: RepIndex,
    xi: C64,
) -> Result<ScalarFormulaResult, ClosedFormError> {
    let (af, bf) = ((2 * a + 1) as f64, (2 * b + 1) as f64);
    let n = (2 * a + 1) as i32;
    match family {
        Family::AN => {
            let j = j_index("exterior AN", index, a, b)?;
            let w = omega2(b, j);
            let num = w.powi(n) + w.powi(-n);
            let den = nonzero(w * w - (w * w).inv(), "exterior AN", "omega2^2 - omega2^-2")?;
            let v = num * num * bf / (den * den * 2.0);
            Ok(result(Formula::ExteriorAN, v, xi, a, b, index))
        }
        Family::NA => {
            let k = k_index("exterior NA", index, a, b)?;
            let w = omega1(a, k);
            let z = (xi / 2.0).exp();
            let e = (8 * a - 2 * b + 3) as i32;
            let den = nonzero(w - w.inv(), "exterior NA", "omega1 - omega1^-1")?;
            let q = (z.powi(e) + z.powi(-e)) / den;
            Ok(result(
                Formula::ExteriorNA,
                q * q * (af / 2.0),
                xi,
                a,
                b,
                index,
            ))
        }
        Family::NN => {
            let (_, m) = lm_index("exterior NN", index, a, b)?;
            let w = omega1(a, m);
            let den = nonzero(w - w.inv(), "exterior NN", "omega1 - omega1^-1")?;
            let v = c(af * (4.0 * af - bf), 0.0) / (den * den * 4.0);
            Ok(result(Formula::ExteriorNN, v, xi, a, b, index))
        }
        Family::AA => Err(bad_index("exterior", index, a, b)),
    }
}

/// Closed forms of the torsion of the torus-knot piece.
pub fn torus_piece_torsion(
    family: Family,
    a: i64,
    b: i64,
    index: RepIndex,
) -> Result<C64, ClosedFormError> {
    match family {
        Family::AN => {
            let w = omega2(b, j_index("torus piece", index, a, b)?);
            let q = torus_alexander(a, w * w)?
                / nonzero(w - w.inv(), "torus piece", "omega2 - omega2^-1")?;
            Ok(q * q)
        }
        Family::NA | Family::NN => {
            let n = match index {
                RepIndex::K(_) => k_index("torus piece", index, a, b)?,
                _ => lm_index("torus piece", index, a, b)?.1,
            };
            let w = omega1(a, n);
            let den = nonzero(w - w.inv(), "torus piece", "omega1 - omega1^-1")?;
            Ok(c((2 * a + 1) as f64, 0.0) / (den * den * 2.0))
        }
        Family::AA => Err(bad_index("torus piece", index, a, b)),
    }
}

/// Closed forms of the torsion of the pattern piece.
pub fn pattern_piece_torsion(
    family: Family,
    a: i64,
    b: i64,
    index: RepIndex,
    xi: C64,
) -> Result<C64, ClosedFormError> {
    match family {
        Family::AN | Family::NN => Ok(c(0.5, 0.0)),
        Family::NA => {
            k_index("pattern piece", index, a, b)?;
            let z = (xi / 2.0).exp();
            let e = (8 * a - 2 * b + 3) as i32;
            let s = z.powi(e) + z.powi(-e);
            Ok(s * s)
        }
        Family::AA => Err(bad_index("pattern piece", index, a, b)),
    }
}

/// Torsion of the long exact sequence of the splitting.
pub fn sequence_torsion(family: Family, a: i64, b: i64) -> Result<C64, ClosedFormError> {
    match family {
        Family::AN => Ok(c(1.0 / (2 * b + 1) as f64, 0.0)),
        Family::NA => Ok(c(1.0, 0.0)),
        Family::NN => Ok(c(1.0 / pattern_gap(a, b) as f64, 0.0)),
        Family::AA => Err(bad_index("sequence", RepIndex::None, a, b)),
    }
}

/// `(Δ(K; z²)/(z − z⁻¹))²`, the torsion of a knot exterior at the abelian representation.
pub fn abelian_torsion(delta_at_z2: C64, xi: C64) -> Result<C64, ClosedFormError> {
    let z = (xi / 2.0).exp();
    let q = delta_at_z2 / nonzero(z - z.inv(), "abelian torsion", "z - z^-1")?;
    Ok(q * q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: C64, y: C64, tol: f64) -> bool {
        (x - y).norm() <= tol * y.norm().max(1.0)
    }

    #[test]
    fn trefoil_by_fox_route() {
        let (p, _) = torus_piece_presentation(1).unwrap();
        let d = alexander_polynomial(&p).unwrap();
        assert_eq!(d, Laurent::from_terms(&[(1, -1), (-1, 0), (1, 1)]));
        assert_eq!(d.to_string(), "t - 1 + t^-1");
    }

    #[test]
    fn torus_closed_form_matches_fox_route() {
        for a in 1..=4 {
            let (p, _) = torus_piece_presentation(a).unwrap();
            let d = alexander_polynomial(&p).unwrap();
            assert!(d.is_symmetric());
            for t in [c(0.3, 0.7), c(-1.4, 0.2), c(2.5, -0.5)] {
                assert!(close(d.eval(t), torus_alexander(a, t).unwrap(), 1e-10));
            }
        }
    }

    /// Test-only oracle for winding-number-two cables: `Δ_{T(2,q)}(t)·Δ_{companion}(t²)`.
    fn satellite_oracle(a: i64, q: i64, t: C64) -> C64 {
        let s = t.sqrt();
        let q = q.abs() as i32;
        let pattern = (s.powi(q) + s.powi(-q)) / (s + s.inv());
        pattern * torus_alexander(a, t * t).unwrap()
    }

    #[test]
    fn cable_alexander_is_symmetric_and_matches_satellite_oracle() {
        for (a, b) in [(1, 6), (1, 7), (2, 10)] {
            let (p, _) = cable_exterior_presentation(a, b).unwrap();
            let d = alexander_polynomial(&p).unwrap();
            assert!(d.is_symmetric());
            assert_eq!(d.at_one(), 1);
            for t in [c(0.4, 0.9), c(1.3, -0.2)] {
                assert!(close(d.eval(t), satellite_oracle(a, 2 * b + 1, t), 1e-9));
            }
        }
    }

    #[test]
    fn torus_closed_form_equals_uncancelled_quotient() {
        for a in 1..=3 {
            let n = (2 * a + 1) as i32;
            for t in [c(0.3, 0.7), c(-1.4, 0.2)] {
                let (s, si) = (t.sqrt(), t.sqrt().inv());
                let q = (s.powi(2 * n) - si.powi(2 * n)) * (s - si)
                    / ((s * s - si * si) * (s.powi(n) - si.powi(n)));
                assert!(close(torus_alexander(a, t).unwrap(), q, 1e-12));
            }
        }
    }

    #[test]
    fn laurent_division_and_symmetrization() {
        let p = Laurent::from_terms(&[(1, 2), (-1, 0)]);
        let q = p.exact_div(&geometric(2)).unwrap();
        assert_eq!(q, Laurent::from_terms(&[(1, 1), (-1, 0)]));
        assert!(p
            .exact_div(&Laurent::from_terms(&[(1, 0), (1, 2)]))
            .is_none());
        let s = q.symmetrized();
        assert_eq!(s.shift_halves, 1);
        assert!(s.is_centred());
        let t = c(0.7, 0.4);
        assert!(close(s.eval(t), t.sqrt() - t.sqrt().inv(), 1e-12));
    }

    #[test]
    fn tau1_inverse_square_closed_form() {
        let (a, b) = (1, 6);
        for j in 0..b {
            let t = tau(1, c(0.3, 0.1), a, b, RepIndex::J(j)).unwrap().value;
            let jj = (2 * j + 1) as f64;
            let bf = 13.0;
            let expected =
                bf / 2.0 * (3.0 * jj * PI / bf).cos().powi(2) / (2.0 * jj * PI / bf).sin().powi(2);
            assert!(close(t.inv() * t.inv(), c(expected, 0.0), 1e-12));
        }
    }

    #[test]
    fn s2_at_first_index() {
        let xi = c(0.3, -0.2);
        let s = phase(Phase::S2, xi, 1, 6, RepIndex::K(0)).unwrap().value;
        let expected = xi * c(0.0, 2.0 * PI) - xi * xi * 6.0 + PI * PI / 6.0;
        assert!(close(s, expected, 1e-14));
    }

    #[test]
    fn s1_at_zero_is_constant_term() {
        let s = phase(Phase::S1, c(0.0, 0.0), 1, 6, RepIndex::J(2))
            .unwrap()
            .value;
        assert!(close(s, c(25.0 * PI * PI / 26.0, 0.0), 1e-14));
    }

    #[test]
    fn torus_phase_at_two_pi_i() {
        // −(2πi − 12πi)²/24 = 100π²/24.
        let s = torus_phase(c(0.0, 2.0 * PI), 2, 3, 1).value;
        assert!(close(s, c(100.0 * PI * PI / 24.0, 0.0), 1e-13));
    }

    #[test]
    fn tau3_literal_value() {
        // (1,7,0,0): 4/√(3·3)·sin(π/3).
        let t = tau(3, c(0.3, 0.0), 1, 7, RepIndex::LM { l: 0, m: 0 })
            .unwrap()
            .value;
        assert!(close(t, c(4.0 / 3.0 * (PI / 3.0).sin(), 0.0), 1e-14));
    }

    #[test]
    fn exterior_an_instance() {
        let w = C64::from_polar(1.0, PI / 13.0);
        let expected =
            (w.powi(3) + w.powi(-3)).powi(2) * 13.0 / ((w * w - w.powi(-2)).powi(2) * 2.0);
        let got = exterior_torsion(Family::AN, 1, 6, RepIndex::J(0), c(0.3, 0.1))
            .unwrap()
            .value;
        assert!(close(got, expected, 1e-13));
    }

    #[test]
    fn exterior_nn_is_negative_multiple() {
        let w = C64::from_polar(1.0, PI / 3.0);
        let got = exterior_torsion(Family::NN, 1, 7, RepIndex::LM { l: 0, m: 0 }, c(0.3, 0.1))
            .unwrap()
            .value;
        let expected = c(3.0 * (12.0 - 15.0), 0.0) / ((w - w.inv()).powi(2) * 4.0);
        assert!(close(got, expected, 1e-13));
    }

    #[test]
    fn torus_piece_an_is_delta_form() {
        let (a, b) = (2, 10);
        for j in 0..b {
            let w = omega2(b, j);
            let explicit =
                ((w.powi(5) + w.powi(-5)) / (w + w.inv())).powi(2) / (w - w.inv()).powi(2);
            let got = torus_piece_torsion(Family::AN, a, b, RepIndex::J(j)).unwrap();
            assert!(close(got, explicit, 1e-10));
        }
    }

    #[test]
    fn inadmissible_indices_are_rejected() {
        assert!(tau(1, c(0.3, 0.0), 1, 6, RepIndex::J(6)).is_err());
        assert!(tau(3, c(0.3, 0.0), 1, 6, RepIndex::LM { l: 0, m: 0 }).is_err());
        assert!(exterior_torsion(Family::NA, 1, 6, RepIndex::J(0), c(0.3, 0.0)).is_err());
    }
}
