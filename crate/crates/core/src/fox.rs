//! Free-group words, the integral group ring of a free group and Fox derivatives.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed exponent in token `{0}`")]
    BadExponent(String),
}

/// A generator of a presentation: position in the generator list plus a display name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub name: String,
}

/// One signed letter `g^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter {
            generator,
            inverse: exponent < 0,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word from letters, reducing eagerly.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// `g^exponent` for a single generator.
    pub fn generator_power(generator: usize, exponent: i64) -> Self {
        let sign = if exponent < 0 { -1 } else { 1 };
        Word {
            letters: (0..exponent.unsigned_abs())
                .map(|_| Letter::new(generator, sign))
                .collect(),
        }
    }

    pub fn gen(generator: usize) -> Self {
        Self::generator_power(generator, 1)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `w^n`; negative powers expand as `(w^{-1})^{|n|}`.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Sum of exponents of `generator` in the word.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| l.exponent())
            .sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Parses whitespace-separated tokens such as `p t p^-1 t^2`.
    pub fn parse(text: &str, names: &[String]) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exponent) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| WordError::BadExponent(token.to_string()))?;
                    (n, e)
                }
                None => (token, 1),
            };
            let index = names
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            let sign = if exponent < 0 { -1 } else { 1 };
            letters.extend((0..exponent.unsigned_abs()).map(|_| Letter::new(index, sign)));
        }
        Ok(Word::from_letters(letters))
    }

    /// Renders with run-length exponents, e.g. `p t p^-1`.
    pub fn format(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let e = run as i64 * l.exponent();
            let name = names
                .get(l.generator)
                .cloned()
                .unwrap_or_else(|| format!("g{}", l.generator));
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i += run;
        }
        parts.join(" ")
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(rhs.letters.iter()).copied())
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|i| format!("g{i}"))
            .collect();
        f.write_str(&self.format(&names))
    }
}

/// Element of ℤ[F]: a finite integer combination of reduced words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_terms([(w, 1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if *v == 0 {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let body = w.format(names);
            let sign = if *c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            if k > 0 {
                s.push(' ');
            }
            s.push_str(sign);
            if mag != 1 {
                s.push_str(&format!("{mag}·"));
            }
            s.push_str(&body);
        }
        s
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement::from_terms(self.terms().map(|(w, c)| (w.clone(), -c)))
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u * v, a * b);
            }
        }
        out
    }
}

/// Left multiplication of a group-ring element by a word.
impl Mul<&GroupRingElement> for &Word {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        GroupRingElement::from_terms(rhs.terms().map(|(w, c)| (self * w, c)))
    }
}

/// The Fox derivative ∂w/∂g.
///
/// Walks the word left to right: a letter `g` at prefix `u` contributes `u`,
/// a letter `g⁻¹` contributes `−u g⁻¹`.
pub fn fox_derivative(w: &Word, generator: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.generator == generator {
            if l.inverse {
                out.add_term(&prefix * &Word::from_letters([l]), -1);
            } else {
                out.add_term(prefix.clone(), 1);
            }
        }
        prefix = &prefix * &Word::from_letters([l]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["p", "t"].iter().map(|s| s.to_string()).collect()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, &names()).unwrap()
    }

    #[test]
    fn reduction_on_construction() {
        assert_eq!(w("p t t^-1 p^-1"), Word::identity());
        assert_eq!(w("p^2 p^-1").len(), 1);
        assert_eq!(w("p^3").format(&names()), "p^3");
    }

    #[test]
    fn basic_rules() {
        let x = Word::gen(0);
        assert_eq!(fox_derivative(&x, 0), GroupRingElement::one());
        assert!(fox_derivative(&x, 1).is_zero());
        let xinv_y = &x.inverse() * &Word::gen(1);
        assert_eq!(
            fox_derivative(&xinv_y, 0),
            GroupRingElement::from_terms([(x.inverse(), -1)])
        );
    }

    #[test]
    fn pattern_relator_derivatives() {
        let r = w("p t p t p^-1 t^-1 p^-1 t^-1");
        assert_eq!(r.len(), 8);
        let dp = GroupRingElement::from_terms([
            (w("1"), 1),
            (w("p t"), 1),
            (w("p t p t p^-1"), -1),
            (w("p t p t p^-1 t^-1 p^-1"), -1),
        ]);
        assert_eq!(fox_derivative(&r, 0), dp);
        let dt = GroupRingElement::from_terms([
            (w("p"), 1),
            (w("p t p"), 1),
            (w("p t p t p^-1 t^-1"), -1),
            (w("p t p t p^-1 t^-1 p^-1 t^-1"), -1),
        ]);
        assert_eq!(fox_derivative(&r, 1), dt);
    }

    #[test]
    fn negative_power_expands_inverse() {
        let x = Word::gen(0);
        let d = fox_derivative(&x.pow(-3), 0);
        let expected = GroupRingElement::from_terms((1..=3).map(|k| (x.pow(-k), -1)));
        assert_eq!(d, expected);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let r = w("p t^2 p^-1 t^-3");
        assert_eq!(Word::parse(&r.format(&names()), &names()).unwrap(), r);
        assert!(matches!(
            Word::parse("q", &names()),
            Err(WordError::UnknownGenerator(_))
        ));
    }
}
