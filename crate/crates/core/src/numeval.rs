//! Exact evaluation in the 2×2 matrix model over `ℚ(√2, √5)`.
//!
//! The model takes
//!
//! ```text
//! X₁ = [[1, 0], [−√5, 1]]   X₂ = [[1, √5], [0, 1]]   X₃ = [[−1, √5], [−√5, 4]]
//! ```
//!
//! with `X₃X₂X₁ = −1`, so that `R = X₂` and `L = X₁⁻¹` make `ℚ(√2, √5)²` a
//! right module over `ℤ⟨R, L⟩`. Representations are evaluated exactly and
//! converted to floats only for output.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::freegrpalg::{GroupWord, Letter};
use crate::homrep::{EnumerationError, OpSet, Representation, WordEnumerator};
use crate::par::{self, Execution};

/// `q₀ + q₁√2 + q₂√5 + q₃√10` with rational `qᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement(pub [BigRational; 4]);

impl FieldElement {
    pub fn new(q0: BigRational, q1: BigRational, q2: BigRational, q3: BigRational) -> Self {
        FieldElement([q0, q1, q2, q3])
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        FieldElement(c.map(|v| BigRational::from_integer(v.into())))
    }

    pub fn integer(v: i64) -> Self {
        Self::from_ints([v, 0, 0, 0])
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn sqrt2() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    pub fn sqrt5() -> Self {
        Self::from_ints([0, 0, 1, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The automorphism `√2 ↦ −√2` (`s2`) and/or `√5 ↦ −√5` (`s5`).
    fn conjugate(&self, s2: bool, s5: bool) -> Self {
        let [a, b, c, d] = self.0.clone();
        let flip = |v: BigRational, f: bool| if f { -v } else { v };
        FieldElement([a, flip(b, s2), flip(c, s5), flip(d, s2 != s5)])
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // The product of all four conjugates is rational.
        let others = self.conjugate(true, false) * self.conjugate(false, true) * self.conjugate(true, true);
        let norm = self * &others;
        debug_assert!(norm.0[1..].iter().all(Zero::is_zero));
        let n = norm.0[0].clone();
        Some(FieldElement(others.0.map(|v| v / &n)))
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        FieldElement(self.0.clone().map(|v| v * &k))
    }

    /// Nearest `f64`, computed from the exact components.
    pub fn to_f64(&self) -> f64 {
        let roots = [1.0, std::f64::consts::SQRT_2, 5f64.sqrt(), 10f64.sqrt()];
        self.0
            .iter()
            .zip(roots)
            .map(|(q, r)| q.to_f64().unwrap_or(f64::NAN) * r)
            .sum()
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    /// Uses `√2·√5 = √10`, `√2·√10 = 2√5`, `√5·√10 = 5√2`, `√10² = 10`.
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let [a0, a1, a2, a3] = &self.0;
        let [b0, b1, b2, b3] = &rhs.0;
        let k = |v: i64| BigRational::from_integer(v.into());
        FieldElement([
            a0 * b0 + k(2) * a1 * b1 + k(5) * a2 * b2 + k(10) * a3 * b3,
            a0 * b1 + a1 * b0 + k(5) * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + k(2) * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ])
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl fmt::Display for FieldElement {
    /// E.g. `2√2 + 2√5`, `-1`, `1/2√10`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, root) in self.0.iter().zip(["", "√2", "√5", "√10"]) {
            if q.is_zero() {
                continue;
            }
            let sign = if q.is_negative() { "-" } else { "+" };
            if first {
                if q.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = q.abs();
            if a.is_one() && !root.is_empty() {
                f.write_str(root)?;
            } else {
                write!(f, "{a}{root}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A 2×2 matrix over `ℚ(√2, √5)`, acting on row vectors from the right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix2(pub [[FieldElement; 2]; 2]);

impl Matrix2 {
    pub fn identity() -> Self {
        Self::scalar(1)
    }

    pub fn scalar(c: i64) -> Self {
        Matrix2([
            [FieldElement::integer(c), FieldElement::zero()],
            [FieldElement::zero(), FieldElement::integer(c)],
        ])
    }

    pub fn det(&self) -> FieldElement {
        let [[a, b], [c, d]] = &self.0;
        &(a * d) - &(b * c)
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.det().inverse()?;
        let [[a, b], [c, d]] = &self.0;
        Some(Matrix2([[d * &inv, -&(b * &inv)], [-&(c * &inv), a * &inv]]))
    }
}

impl Mul for &Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: &Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        Matrix2(std::array::from_fn(|i| {
            std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]))
        }))
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// A row vector `[x y]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Point2(pub [FieldElement; 2]);

impl Point2 {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Point2([x, y])
    }

    pub fn zero() -> Self {
        Point2([FieldElement::zero(), FieldElement::zero()])
    }

    pub fn times(&self, m: &Matrix2) -> Point2 {
        let [x, y] = &self.0;
        let c = |j: usize| &(x * &m.0[0][j]) + &(y * &m.0[1][j]);
        Point2([c(0), c(1)])
    }

    pub fn scale(&self, k: i64) -> Point2 {
        Point2([self.0[0].scale(k), self.0[1].scale(k)])
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.0[0].to_f64(), self.0[1].to_f64())
    }
}

impl Add for &Point2 {
    type Output = Point2;

    fn add(self, rhs: &Point2) -> Point2 {
        Point2([&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1]])
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.0[0], self.0[1])
    }
}

/// `(X₁, X₂, X₃)`.
pub fn model_matrices() -> [Matrix2; 3] {
    let fe = FieldElement::integer;
    let s5 = FieldElement::sqrt5;
    [
        Matrix2([[fe(1), fe(0)], [-s5(), fe(1)]]),
        Matrix2([[fe(1), s5()], [fe(0), fe(1)]]),
        Matrix2([[fe(-1), s5()], [-s5(), fe(4)]]),
    ]
}

/// Matrices of `R = X₂`, `R⁻¹`, `L = X₁⁻¹`, `L⁻¹ = X₁`.
fn letter_matrices() -> [Matrix2; 4] {
    let [x1, x2, _] = model_matrices();
    let x2_inv = x2.inverse().expect("X₂ is unimodular");
    let x1_inv = x1.inverse().expect("X₁ is unimodular");
    [x2, x2_inv, x1_inv, x1]
}

pub fn word_matrix(w: &GroupWord) -> Matrix2 {
    let m = letter_matrices();
    w.letters().iter().fold(Matrix2::identity(), |acc, l| {
        let i = match l {
            Letter::R => 0,
            Letter::RInv => 1,
            Letter::L => 2,
            Letter::LInv => 3,
        };
        &acc * &m[i]
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumevalError {
    #[error("generator {0:?} has no assigned point")]
    Missing(String),
    #[error("words {first:?} and {second:?} evaluate to the same point")]
    Collapse { first: String, second: String },
    #[error("count must be at least 1")]
    EmptyPlot,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// `Σ_g p_g · M(rep_g)`, where `M` sends `R ↦ X₂` and `L ↦ X₁⁻¹`.
pub fn evaluate(rep: &Representation, assignment: &BTreeMap<String, Point2>) -> Result<Point2, NumevalError> {
    let mut total = Point2::zero();
    for (g, coefficient) in rep.iter() {
        let p = assignment.get(g).ok_or_else(|| NumevalError::Missing(g.clone()))?;
        for (w, c) in coefficient.terms() {
            total = &total + &p.times(&word_matrix(w)).scale(c);
        }
    }
    Ok(total)
}

/// The point `a = [√2, 2]`.
pub fn base_point() -> Point2 {
    Point2::new(FieldElement::sqrt2(), FieldElement::integer(2))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotRow {
    pub word: String,
    pub representation: Representation,
    pub point: Point2,
    pub x: f64,
    pub y: f64,
}

/// The shortest one-generator words with their images of `a = [√2, 2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WordPlot {
    pub rows: Vec<PlotRow>,
}

/// Enumerates word classes in `a` by increasing leaf count until `count`
/// exist, evaluates the first `count` at `a`, and checks that no two
/// classes land on the same point.
pub fn shortest_words_plot(count: usize) -> Result<WordPlot, NumevalError> {
    shortest_words_plot_with(count, Execution::default())
}

pub fn shortest_words_plot_with(count: usize, exec: Execution) -> Result<WordPlot, NumevalError> {
    if count == 0 {
        return Err(NumevalError::EmptyPlot);
    }
    let mut e = WordEnumerator::new(&["a"], OpSet::Basic)?.with_execution(exec);
    let mut leaves = 1;
    loop {
        e.extend_to(leaves)?;
        if e.class_count() >= count {
            break;
        }
        leaves += 1;
    }
    let classes: Vec<_> = e.classes().take(count).collect();
    let assignment = BTreeMap::from([("a".to_string(), base_point())]);
    let rows = par::map_slice(exec, &classes, |c| {
        let point = evaluate(&c.representation, &assignment).expect("only `a` occurs");
        let (x, y) = point.to_f64();
        PlotRow {
            word: c.text.clone(),
            representation: c.representation.clone(),
            point,
            x,
            y,
        }
    });
    let mut seen: BTreeMap<&Point2, &str> = BTreeMap::new();
    for r in &rows {
        if let Some(first) = seen.insert(&r.point, &r.word) {
            return Err(NumevalError::Collapse {
                first: first.to_string(),
                second: r.word.clone(),
            });
        }
    }
    Ok(WordPlot { rows })
}

impl PartialOrd for Point2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point2 {
    /// An arbitrary total order on exact coordinates, for deduplication.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |p: &Point2| p.0.iter().flat_map(|f| f.0.iter().cloned()).collect::<Vec<_>>();
        key(self).cmp(&key(other))
    }
}

impl WordPlot {
    /// `word,x,y` with coordinates to 12 decimal places.
    pub fn csv(&self) -> String {
        let mut out = String::from("word,x,y\n");
        for r in &self.rows {
            writeln!(out, "{},{:.12},{:.12}", r.word, r.x, r.y).expect("writing to a String");
        }
        out
    }

    /// A self-contained SVG 1.1 scatter plot with labelled points.
    pub fn svg(&self) -> String {
        let xs = self.rows.iter().map(|r| r.x);
        let ys = self.rows.iter().map(|r| r.y);
        let (min_x, max_x) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        let (min_y, max_y) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        // Scale so the larger span is 1000 user units; y grows upwards.
        let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
        let s = 1000.0 / span;
        let (w, h) = ((max_x - min_x) * s, (max_y - min_y) * s);
        let (mx, my) = (0.05 * w.max(1.0), 0.05 * h.max(1.0));
        let (vx, vy) = (min_x * s - mx, -max_y * s - my);
        let (vw, vh) = (w + 2.0 * mx, h + 2.0 * my);
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vx:.3} {vy:.3} {vw:.3} {vh:.3}">"#
        );
        let _ = writeln!(out, r#"<rect x="{vx:.3}" y="{vy:.3}" width="{vw:.3}" height="{vh:.3}" fill="white"/>"#);
        for r in &self.rows {
            let (cx, cy) = (r.x * s, -r.y * s);
            let _ = writeln!(out, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="3" fill="black"/>"#);
            let _ = writeln!(
                out,
                r#"<text x="{:.3}" y="{:.3}" font-family="monospace" font-size="12">{}</text>"#,
                cx + 5.0,
                cy - 5.0,
                escape_xml(&r.word)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Exact rational approximation of `√m` with `digits` decimal digits, for
/// checking float output.
pub fn sqrt_approx(m: u32, digits: u32) -> BigRational {
    let scale = BigInt::from(10).pow(digits);
    let root = (BigInt::from(m) * &scale * &scale).sqrt();
    BigRational::new(root, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homrep::represent;
    use crate::term::{parse, random_term, OpSymbol};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(c: [i64; 4]) -> FieldElement {
        FieldElement::from_ints(c)
    }

    #[test]
    fn multiplication_table_of_roots() {
        let r2 = fe([0, 1, 0, 0]);
        let r5 = fe([0, 0, 1, 0]);
        let r10 = fe([0, 0, 0, 1]);
        assert_eq!(&r2 * &r5, r10);
        assert_eq!(&r2 * &r10, fe([0, 0, 2, 0]));
        assert_eq!(&r5 * &r10, fe([0, 5, 0, 0]));
        assert_eq!(&r10 * &r10, fe([10, 0, 0, 0]));
    }

    #[test]
    fn inverse() {
        let x = fe([3, -1, 2, 5]);
        assert_eq!(&x * &x.inverse().unwrap(), FieldElement::one());
        assert!(FieldElement::zero().inverse().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(fe([0, 2, 2, 0]).to_string(), "2√2 + 2√5");
        assert_eq!(fe([4, 0, 0, 1]).to_string(), "4 + √10");
        assert_eq!(fe([-1, 0, 0, -3]).to_string(), "-1 - 3√10");
        assert_eq!(FieldElement::zero().to_string(), "0");
    }

    #[test]
    fn model_relations() {
        let [x1, x2, x3] = model_matrices();
        let minus_one = Matrix2::scalar(-1);
        let s5 = FieldElement::sqrt5;
        assert_eq!(
            &x3 * &x2,
            Matrix2([[FieldElement::integer(-1), FieldElement::zero()], [-s5(), FieldElement::integer(-1)]])
        );
        assert_eq!(&(&x3 * &x2) * &x1, minus_one);
        assert_eq!(&(&x2 * &x1) * &x3, minus_one);
        assert_eq!(&(&x1 * &x3) * &x2, minus_one);
        for x in [&x1, &x2, &x3] {
            assert_eq!(x.det(), FieldElement::one());
        }
    }

    #[test]
    fn x3_matches_its_substitution() {
        // X₃ = −LR⁻¹ = −X₁⁻¹X₂⁻¹
        let [x1, x2, x3] = model_matrices();
        let lr = &x1.inverse().unwrap() * &x2.inverse().unwrap();
        assert_eq!(&lr * &Matrix2::scalar(-1), x3);
    }

    #[test]
    fn evaluate_examples() {
        let a = BTreeMap::from([("a".to_string(), base_point())]);
        assert_eq!(evaluate(&represent(&parse("a").unwrap()), &a).unwrap(), base_point());
        let aa = evaluate(&represent(&parse("a*a").unwrap()), &a).unwrap();
        assert_eq!(aa, Point2::new(fe([0, 2, 2, 0]), fe([4, 0, 0, 1])));
        let (x, y) = aa.to_f64();
        assert!((x - 7.300563079746).abs() < 1e-11, "{x}");
        assert!((y - 7.162277660168).abs() < 1e-11, "{y}");
        assert_eq!(
            evaluate(&represent(&parse("a*b").unwrap()), &a),
            Err(NumevalError::Missing("b".into()))
        );
    }

    fn random_point(rng: &mut impl Rng) -> Point2 {
        let mut c = || fe(std::array::from_fn(|_| rng.gen_range(-5..=5)));
        Point2::new(c(), c())
    }

    #[test]
    fn two_equal_words_agree() {
        let left = represent(&parse("((a0/a1)*(a2*a3))/(a4\\a0)").unwrap());
        let right = represent(&parse("(a4*(a2*a3))/a1").unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let env = (0..5).map(|i| (format!("a{i}"), random_point(&mut rng))).collect();
            assert_eq!(evaluate(&left, &env).unwrap(), evaluate(&right, &env).unwrap());
        }
    }

    #[test]
    fn equal_terms_evaluate_equally() {
        // Pairs made equal by construction: t versus t relabelled twice by σ,
        // and t versus x\(x·t).
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let env: BTreeMap<String, Point2> = ["a", "b", "c"].iter().map(|g| (g.to_string(), random_point(&mut rng))).collect();
        for _ in 0..100 {
            let t = random_term(&mut rng, &["a", "b", "c"], &OpSymbol::ALL, 6, 0.0);
            let u = parse(&format!("b\\(b*({t}))")).unwrap();
            assert!(crate::homrep::equal(&t, &u));
            assert_eq!(evaluate(&represent(&t), &env).unwrap(), evaluate(&represent(&u), &env).unwrap());
        }
    }

    #[test]
    fn evaluation_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let env: BTreeMap<String, Point2> = ["a", "b"].iter().map(|g| (g.to_string(), random_point(&mut rng))).collect();
        for _ in 0..50 {
            let r1 = represent(&random_term(&mut rng, &["a", "b"], &OpSymbol::ALL, 5, 0.1));
            let r2 = represent(&random_term(&mut rng, &["a", "b"], &OpSymbol::ALL, 5, 0.1));
            let sum = evaluate(&r1.add(&r2), &env).unwrap();
            assert_eq!(sum, &evaluate(&r1, &env).unwrap() + &evaluate(&r2, &env).unwrap());
        }
    }

    #[test]
    fn sixteen_word_plot() {
        let plot = shortest_words_plot(16).unwrap();
        assert_eq!(plot.rows.len(), 16);
        let csv = plot.csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[0], "word,x,y");
        assert_eq!(lines[1], "a,1.414213562373,2.000000000000");
        assert!(lines[2].starts_with("a*a,7.300563079746,7.162277660168"), "{}", lines[2]);
        let svg = plot.svg();
        assert!(svg.contains("viewBox=\""));
        assert_eq!(svg.matches("<circle").count(), 16);
        assert!(svg.contains(">a\\(a\\a)</text>"));
    }

    #[test]
    fn float_rendering_is_accurate() {
        let plot = shortest_words_plot(16).unwrap();
        let roots = [
            BigRational::one(),
            sqrt_approx(2, 40),
            sqrt_approx(5, 40),
            sqrt_approx(10, 40),
        ];
        let exact = |f: &FieldElement| -> BigRational { f.0.iter().zip(&roots).map(|(q, r)| q * r).sum() };
        for r in &plot.rows {
            for (v, e) in [(r.x, &r.point.0[0]), (r.y, &r.point.0[1])] {
                let diff = (BigRational::from_float(v).unwrap() - exact(e)).abs();
                assert!(diff < BigRational::new(1.into(), BigInt::from(10).pow(12)), "{}", r.word);
            }
        }
    }

    #[test]
    fn zero_count_rejected() {
        assert_eq!(shortest_words_plot(0), Err(NumevalError::EmptyPlot));
    }

    fn arb_fe() -> impl Strategy<Value = FieldElement> {
        proptest::array::uniform4((-20i64..=20, 1i64..=6)).prop_map(|c| {
            FieldElement(c.map(|(p, q)| BigRational::new(p.into(), q.into())))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]

        #[test]
        fn field_axioms(p in arb_fe(), q in arb_fe(), r in arb_fe()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            if let Some(inv) = p.inverse() {
                prop_assert_eq!(&p * &inv, FieldElement::one());
            }
        }
    }
}
