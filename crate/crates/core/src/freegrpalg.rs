//! The coefficient ring of the homogeneous representation.
//!
//! Elements are integer combinations of reduced words in the free group on
//! `{R, L}`. The coefficient variables are interpreted through
//! `X₁ = L⁻¹`, `X₂ = R`, `X₃ = −L R⁻¹`, under which the cyclic relations
//! `X₃X₂X₁ = X₂X₁X₃ = X₁X₃X₂ = −1` hold and every X-monomial normalizes to a
//! signed reduced word.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::s3::{S3Element, S3Generator};

/// A letter of the free group on `{R, L}`. The derived order
/// `R < R⁻¹ < L < L⁻¹` is the printing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    R,
    RInv,
    L,
    LInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::R => Letter::RInv,
            Letter::RInv => Letter::R,
            Letter::L => Letter::LInv,
            Letter::LInv => Letter::L,
        }
    }

    fn base(self) -> &'static str {
        match self {
            Letter::R | Letter::RInv => "R",
            Letter::L | Letter::LInv => "L",
        }
    }

    fn exponent(self) -> i64 {
        match self {
            Letter::R | Letter::L => 1,
            Letter::RInv | Letter::LInv => -1,
        }
    }
}

/// A freely reduced word in `R^{±1}, L^{±1}`; the empty word is the identity.
///
/// Ordered shortlex, letters compared as `R < R⁻¹ < L < L⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord(Vec::new())
    }

    pub fn letter(l: Letter) -> GroupWord {
        GroupWord(vec![l])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> GroupWord {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord::reduce(self.0.iter().chain(other.0.iter()).copied())
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for GroupWord {
    /// Space-separated powers, e.g. `R L^-1 R`, `L^2 R^-1`; `1` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let power = (j - i) as i64 * l.exponent();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if power == 1 {
                write!(f, "{}", l.base())?;
            } else {
                write!(f, "{}^{}", l.base(), power)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// `±word`, a unit of the group algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    pub negative: bool,
    pub word: GroupWord,
}

impl SignedWord {
    pub fn one() -> SignedWord {
        SignedWord {
            negative: false,
            word: GroupWord::identity(),
        }
    }

    pub fn times(&self, other: &SignedWord) -> SignedWord {
        SignedWord {
            negative: self.negative != other.negative,
            word: self.word.concat(&other.word),
        }
    }

    pub fn inverse(&self) -> SignedWord {
        SignedWord {
            negative: self.negative,
            word: self.word.inverse(),
        }
    }

    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn to_element(&self) -> AlgebraElement {
        AlgebraElement::monomial(self.sign(), self.word.clone())
    }
}

/// A finite integer combination of reduced words; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<GroupWord, i64>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn one() -> AlgebraElement {
        AlgebraElement::monomial(1, GroupWord::identity())
    }

    pub fn monomial(coefficient: i64, word: GroupWord) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        if coefficient != 0 {
            terms.insert(word, coefficient);
        }
        AlgebraElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in shortlex order of their words.
    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, word: &GroupWord) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, coefficient: i64, word: GroupWord) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: i64) -> AlgebraElement {
        if k == 0 {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), c * k)).collect(),
        }
    }

    /// `self · u` for a unit `u = ±w`.
    pub fn mul_unit_right(&self, u: &SignedWord) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, &c) in &self.terms {
            out.add_term(c * u.sign(), w.concat(&u.word));
        }
        out
    }

    /// Applies the triality automorphism `g` (see [`act`]).
    pub fn act(&self, g: S3Element) -> AlgebraElement {
        act(g, self)
    }

    /// Machine-readable form: `[[coefficient, "word"], …]` in shortlex order.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.terms.iter().map(|(w, &c)| (c, w.to_string())).collect()
    }
}

impl fmt::Display for AlgebraElement {
    /// `c1*w1 + c2*w2 - c3*w3`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            if i == 0 {
                write!(f, "{c}*{w}")?;
            } else if c < 0 {
                write!(f, " - {}*{w}", -c)?;
            } else {
                write!(f, " + {c}*{w}")?;
            }
        }
        Ok(())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, &c) in &rhs.terms {
            out.add_term(c, w.clone());
        }
        out
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(-1)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(-1)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w1, &c1) in &self.terms {
            for (w2, &c2) in &rhs.terms {
                out.add_term(c1 * c2, w1.concat(w2));
            }
        }
        out
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        &self * &rhs
    }
}

pub fn add(p: &AlgebraElement, q: &AlgebraElement) -> AlgebraElement {
    p + q
}

pub fn mul(p: &AlgebraElement, q: &AlgebraElement) -> AlgebraElement {
    p * q
}

/// A coefficient variable `X_i^{±1}`, `i ∈ {1, 2, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XLetter {
    index: u8,
    inverse: bool,
}

impl XLetter {
    /// `X_i`, with the index taken modulo 3 into `{1, 2, 3}`.
    pub fn x(index: i64) -> XLetter {
        XLetter {
            index: (index - 1).rem_euclid(3) as u8 + 1,
            inverse: false,
        }
    }

    /// `X_i⁻¹`, index modulo 3.
    pub fn x_inv(index: i64) -> XLetter {
        XLetter::x(index).inverse()
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> XLetter {
        XLetter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    /// The unit this variable stands for in `ℤ⟨R, L⟩`.
    pub fn substitute(self) -> SignedWord {
        use Letter::*;
        let (negative, letters): (bool, &[Letter]) = match (self.index, self.inverse) {
            (1, false) => (false, &[LInv]),
            (1, true) => (false, &[L]),
            (2, false) => (false, &[R]),
            (2, true) => (false, &[RInv]),
            (3, false) => (true, &[L, RInv]),
            (3, true) => (true, &[R, LInv]),
            _ => unreachable!("coefficient variable index is 1, 2 or 3"),
        };
        SignedWord {
            negative,
            word: GroupWord(letters.to_vec()),
        }
    }

    /// Image under one of the generating substitutions:
    /// `(1 2): X₁ ↦ X₂⁻¹, X₂ ↦ X₁⁻¹, X₃ ↦ X₃⁻¹` and
    /// `(2 3): X₁ ↦ X₁⁻¹, X₂ ↦ X₃⁻¹, X₃ ↦ X₂⁻¹`.
    pub fn substitute_generator(self, g: S3Generator) -> XLetter {
        let index = match (g, self.index) {
            (S3Generator::Sigma, 1) => 2,
            (S3Generator::Sigma, 2) => 1,
            (S3Generator::Sigma, i) => i,
            (S3Generator::Tau, 2) => 3,
            (S3Generator::Tau, 3) => 2,
            (S3Generator::Tau, i) => i,
        };
        XLetter {
            index,
            inverse: !self.inverse,
        }
    }

    /// Image under `g`, composing the generator substitutions left to right
    /// along the word of `g`.
    pub fn act(self, g: S3Element) -> XLetter {
        g.word()
            .into_iter()
            .fold(self, |x, gen| x.substitute_generator(gen))
    }
}

impl fmt::Display for XLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "X{}^-1", self.index)
        } else {
            write!(f, "X{}", self.index)
        }
    }
}

/// `±` a freely reduced word in the coefficient variables. The cyclic
/// relations are not applied at this level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct XMonomial {
    negative: bool,
    letters: Vec<XLetter>,
}

impl XMonomial {
    pub fn one() -> XMonomial {
        XMonomial::default()
    }

    pub fn new<I: IntoIterator<Item = XLetter>>(negative: bool, letters: I) -> XMonomial {
        let mut out: Vec<XLetter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        XMonomial {
            negative,
            letters: out,
        }
    }

    pub fn from_letters<I: IntoIterator<Item = XLetter>>(letters: I) -> XMonomial {
        XMonomial::new(false, letters)
    }

    pub fn letter(l: XLetter) -> XMonomial {
        XMonomial::new(false, [l])
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn letters(&self) -> &[XLetter] {
        &self.letters
    }

    pub fn times(&self, other: &XMonomial) -> XMonomial {
        XMonomial::new(
            self.negative != other.negative,
            self.letters.iter().chain(other.letters.iter()).copied(),
        )
    }

    pub fn inverse(&self) -> XMonomial {
        XMonomial::new(self.negative, self.letters.iter().rev().map(|l| l.inverse()))
    }

    /// Letter-wise image under the triality automorphism `g`.
    pub fn act(&self, g: S3Element) -> XMonomial {
        XMonomial::new(self.negative, self.letters.iter().map(|l| l.act(g)))
    }

    /// The signed reduced word obtained by substituting for each variable.
    pub fn to_unit(&self) -> SignedWord {
        let mut acc = SignedWord {
            negative: self.negative,
            word: GroupWord::identity(),
        };
        for l in &self.letters {
            acc = acc.times(&l.substitute());
        }
        acc
    }
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Substitutes `X₁ = L⁻¹`, `X₂ = R`, `X₃ = −L R⁻¹` and reduces.
pub fn normalize(m: &XMonomial) -> AlgebraElement {
    m.to_unit().to_element()
}

/// Images of `R` and `L` under the automorphism `g`, derived from the
/// substitutions on the coefficient variables (`R = X₂`, `L = X₁⁻¹`).
pub fn letter_images(g: S3Element) -> [SignedWord; 2] {
    [
        XMonomial::letter(XLetter::x(2)).act(g).to_unit(),
        XMonomial::letter(XLetter::x_inv(1)).act(g).to_unit(),
    ]
}

fn apply_images(images: &[SignedWord; 2], p: &AlgebraElement) -> AlgebraElement {
    let image_of = |l: Letter| -> SignedWord {
        match l {
            Letter::R => images[0].clone(),
            Letter::RInv => images[0].inverse(),
            Letter::L => images[1].clone(),
            Letter::LInv => images[1].inverse(),
        }
    };
    let mut out = AlgebraElement::zero();
    for (w, c) in p.terms() {
        let mut u = SignedWord::one();
        for &l in w.letters() {
            u = u.times(&image_of(l));
        }
        out.add_term(c * u.sign(), u.word);
    }
    out
}

/// The triality automorphism of the coefficient ring. Composition is left to
/// right: `act(g·h, p) = act(h, act(g, p))`.
pub fn act(g: S3Element, p: &AlgebraElement) -> AlgebraElement {
    apply_images(&letter_images(g), p)
}

/// An automorphism of `ℤ⟨R, L⟩` given by the images of `R` and `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct S3CoeffAction {
    pub element: S3Element,
    images: [SignedWord; 2],
}

impl S3CoeffAction {
    pub fn new(element: S3Element) -> S3CoeffAction {
        S3CoeffAction {
            element,
            images: letter_images(element),
        }
    }

    pub fn images(&self) -> &[SignedWord; 2] {
        &self.images
    }

    pub fn apply(&self, p: &AlgebraElement) -> AlgebraElement {
        apply_images(&self.images, p)
    }
}

/// Outcome of [`check_cyclic_relations`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicRelationReport {
    /// `(product, normal form)` for `X₃X₂X₁`, `X₂X₁X₃`, `X₁X₃X₂`.
    pub direct: Vec<(String, String)>,
    /// The same products derived from `X₃X₂X₁ = −1` by conjugation with an
    /// invertible variable.
    pub derived: Vec<(String, String)>,
    pub all_minus_one: bool,
}

/// Verifies the three cyclic relations directly and by conjugating the
/// first one.
pub fn check_cyclic_relations() -> CyclicRelationReport {
    let x = |i| XMonomial::letter(XLetter::x(i));
    let minus_one = AlgebraElement::one().scale(-1);
    let products = [[3, 2, 1], [2, 1, 3], [1, 3, 2]];
    let direct: Vec<(XMonomial, AlgebraElement)> = products
        .iter()
        .map(|p| {
            let m = XMonomial::from_letters(p.iter().map(|&i| XLetter::x(i)));
            let n = normalize(&m);
            (m, n)
        })
        .collect();
    let base = normalize(&XMonomial::from_letters([3, 2, 1].map(XLetter::x)));
    // X₂X₁X₃ = X₃⁻¹(X₃X₂X₁)X₃ and X₁X₃X₂ = (X₃X₂)⁻¹(X₃X₂X₁)(X₃X₂)
    let conj = |c: &XMonomial| -> AlgebraElement {
        &(&normalize(&c.inverse()) * &base) * &normalize(c)
    };
    let derived_values = [base.clone(), conj(&x(3)), conj(&x(3).times(&x(2)))];
    let all_minus_one = direct.iter().all(|(_, n)| *n == minus_one)
        && derived_values.iter().all(|n| *n == minus_one);
    CyclicRelationReport {
        direct: direct
            .iter()
            .map(|(m, n)| (m.to_string(), n.to_string()))
            .collect(),
        derived: direct
            .iter()
            .zip(&derived_values)
            .map(|((m, _), n)| (m.to_string(), n.to_string()))
            .collect(),
        all_minus_one,
    }
}
