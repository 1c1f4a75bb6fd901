//! Homogeneous representation of central pique and quasigroup words.
//!
//! Each internal node of a parsing tree labels its two edges with coefficient
//! variables (see [`EdgeLabelScheme`]). Reading the labels from a leaf down to
//! the root gives that leaf's monomial; normalizing and summing the monomials
//! per generator gives a [`Representation`]. Two words are equal in the free
//! central pique exactly when their representations agree.
//!
//! [`equal`] uses this as the equality test for central *quasigroup* words
//! too. That the two notions coincide on `@e`-free words is assumed here,
//! not proved.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::freegrpalg::{normalize, AlgebraElement, SignedWord, XLetter, XMonomial};
use crate::par::{self, Execution};
use crate::s3::S3Element;
use crate::term::{OpSymbol, Term, TreePath};

/// Ordered pair of edge labels `(left, right)` for each operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabelScheme {
    labels: [(XLetter, XLetter); 6],
}

impl EdgeLabelScheme {
    /// `x·y = xX₂ + yX₁⁻¹`, `x/y = xX₂⁻¹ + yX₃`, `x\y = xX₃⁻¹ + yX₁`,
    /// `x∘y = xX₁⁻¹ + yX₂`, `x//y = xX₃ + yX₂⁻¹`, `x\\y = xX₁ + yX₃⁻¹`.
    pub fn standard() -> EdgeLabelScheme {
        let (x, xi) = (XLetter::x, XLetter::x_inv);
        let mut labels = [(x(1), x(1)); 6];
        for op in OpSymbol::ALL {
            labels[Self::slot(op)] = match op {
                OpSymbol::Mul => (x(2), xi(1)),
                OpSymbol::RDiv => (xi(2), x(3)),
                OpSymbol::LDiv => (xi(3), x(1)),
                OpSymbol::Opp => (xi(1), x(2)),
                OpSymbol::RRDiv => (x(3), xi(2)),
                OpSymbol::LLDiv => (x(1), xi(3)),
            };
        }
        EdgeLabelScheme { labels }
    }

    /// The scheme obtained by transporting the labels of `·` along the
    /// triality action: `μ^g` gets `(X₂, X₁⁻¹)` acted on by `g`.
    pub fn from_triality() -> EdgeLabelScheme {
        let mut labels = [(XLetter::x(1), XLetter::x(1)); 6];
        for op in OpSymbol::ALL {
            let g = op.s3();
            labels[Self::slot(op)] = (XLetter::x(2).act(g), XLetter::x_inv(1).act(g));
        }
        EdgeLabelScheme { labels }
    }

    fn slot(op: OpSymbol) -> usize {
        OpSymbol::ALL.iter().position(|&o| o == op).expect("known op")
    }

    pub fn labels(&self, op: OpSymbol) -> (XLetter, XLetter) {
        self.labels[Self::slot(op)]
    }

    pub fn label(&self, op: OpSymbol, right: bool) -> XLetter {
        let (l, r) = self.labels(op);
        if right {
            r
        } else {
            l
        }
    }
}

fn unit_labels() -> &'static [(SignedWord, SignedWord); 6] {
    static LABELS: OnceLock<[(SignedWord, SignedWord); 6]> = OnceLock::new();
    LABELS.get_or_init(|| {
        let scheme = EdgeLabelScheme::standard();
        OpSymbol::ALL.map(|op| {
            let (l, r) = scheme.labels(op);
            (l.substitute(), r.substitute())
        })
    })
}

/// A map from generators to coefficients; generators with zero coefficient
/// are absent and iteration is in lexicographic generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Representation(BTreeMap<String, AlgebraElement>);

impl Representation {
    pub fn zero() -> Representation {
        Representation::default()
    }

    pub fn generator(name: &str) -> Representation {
        let mut map = BTreeMap::new();
        map.insert(name.to_string(), AlgebraElement::one());
        Representation(map)
    }

    pub fn get(&self, generator: &str) -> Option<&AlgebraElement> {
        self.0.get(generator)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &AlgebraElement)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn add_to(&mut self, generator: &str, value: &AlgebraElement) {
        let entry = self.0.entry(generator.to_string()).or_default();
        *entry = &*entry + value;
        if entry.is_zero() {
            self.0.remove(generator);
        }
    }

    pub fn add(&self, other: &Representation) -> Representation {
        let mut out = self.clone();
        for (g, v) in &other.0 {
            out.add_to(g, v);
        }
        out
    }

    fn mul_unit_right(&self, u: &SignedWord) -> Representation {
        Representation(
            self.0
                .iter()
                .map(|(g, v)| (g.clone(), v.mul_unit_right(u)))
                .collect(),
        )
    }

    /// Representation of `left op right` from the representations of its operands.
    pub fn combine(op: OpSymbol, left: &Representation, right: &Representation) -> Representation {
        let labels = &unit_labels()[OpSymbol::ALL.iter().position(|&o| o == op).expect("known op")];
        left.mul_unit_right(&labels.0)
            .add(&right.mul_unit_right(&labels.1))
    }

    /// Applies the triality automorphism to every coefficient.
    pub fn act(&self, g: S3Element) -> Representation {
        let mut out = Representation::zero();
        for (gen, v) in &self.0 {
            out.add_to(gen, &v.act(g));
        }
        out
    }

    /// `{generator: [[coefficient, "word"], …]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .0
            .iter()
            .map(|(g, v)| {
                let pairs: Vec<serde_json::Value> = v
                    .to_pairs()
                    .into_iter()
                    .map(|(c, w)| serde_json::json!([c, w]))
                    .collect();
                (g.clone(), serde_json::Value::Array(pairs))
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for Representation {
    /// One `generator: element` line per generator; `0` for the zero representation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{g}: {v}")?;
        }
        Ok(())
    }
}

/// One `(generator, monomial)` pair per generator leaf, in left-to-right leaf order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawForm(pub Vec<(String, XMonomial)>);

impl RawForm {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, XMonomial)> {
        self.0.iter()
    }
}

impl fmt::Display for RawForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, m)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{g}·{m}")?;
        }
        Ok(())
    }
}

/// Edge labels along `path` read from the deepest edge up to the root.
fn path_monomial(t: &Term, path: &[bool], scheme: &EdgeLabelScheme) -> XMonomial {
    let mut labels = Vec::with_capacity(path.len());
    let mut cur = t;
    for &right in path {
        let Term::Node(op, l, r) = cur else {
            unreachable!("path stays inside the tree")
        };
        labels.push(scheme.label(*op, right));
        cur = if right { r } else { l };
    }
    labels.reverse();
    XMonomial::from_letters(labels)
}

/// Leaf monomials read from each leaf down to the root, leaf-nearest label
/// leftmost. `@e` leaves contribute nothing.
pub fn raw_form(t: &Term) -> RawForm {
    let scheme = EdgeLabelScheme::standard();
    let mut out = Vec::new();
    t.visit_leaves(&mut Vec::new(), &mut |leaf, path| {
        if let Term::Gen(name) = leaf {
            out.push((name.clone(), path_monomial(t, path, &scheme)));
        }
    });
    RawForm(out)
}

/// Normalizes every raw-form monomial and sums per generator.
pub fn represent(t: &Term) -> Representation {
    let mut out = Representation::zero();
    for (g, m) in raw_form(t).0 {
        out.add_to(&g, &normalize(&m));
    }
    out
}

/// Equality in the free central pique on the generators.
pub fn equal(t1: &Term, t2: &Term) -> bool {
    represent(t1) == represent(t2)
}

/// Generators occurring in `t` whose total coefficient vanishes.
pub fn eliminated_arguments(t: &Term) -> BTreeSet<String> {
    let rep = represent(t);
    t.generators()
        .into_iter()
        .filter(|g| rep.get(g).is_none())
        .collect()
}

/// Which of the two elimination shapes a cancelling pair matches after free
/// reduction of its two paths (indices modulo 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "i")]
pub enum PatternKind {
    /// `X_i⁻¹` against `X_{i−1} X_{i+1}`.
    Left(u8),
    /// `X_i` against `X_{i+1}⁻¹ X_{i−1}⁻¹`.
    Right(u8),
    /// Cancels in the coefficient ring without matching either shape literally.
    Other,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::Left(i) => write!(f, "left pattern, i={i}"),
            PatternKind::Right(i) => write!(f, "right pattern, i={i}"),
            PatternKind::Other => f.write_str("other"),
        }
    }
}

fn classify(a: &XMonomial, b: &XMonomial) -> PatternKind {
    let one_way = |p: &XMonomial, q: &XMonomial| -> Option<PatternKind> {
        if p.is_negative() || q.is_negative() {
            return None;
        }
        let (&[single], &[q1, q2]) = (p.letters(), q.letters()) else {
            return None;
        };
        let i = single.index() as i64;
        if single.is_inverse() && q1 == XLetter::x(i - 1) && q2 == XLetter::x(i + 1) {
            return Some(PatternKind::Left(i as u8));
        }
        if !single.is_inverse() && q1 == XLetter::x_inv(i + 1) && q2 == XLetter::x_inv(i - 1) {
            return Some(PatternKind::Right(i as u8));
        }
        None
    };
    one_way(a, b)
        .or_else(|| one_way(b, a))
        .unwrap_or(PatternKind::Other)
}

/// A pair of leaf occurrences of one generator whose contributions cancel at
/// their meeting node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationHit {
    pub generator: String,
    pub first: TreePath,
    pub second: TreePath,
    pub meet: TreePath,
    /// Label product from the first leaf to the meeting node.
    pub first_path: XMonomial,
    /// Label product from the second leaf to the meeting node.
    pub second_path: XMonomial,
    pub kind: PatternKind,
}

fn path_string(p: &[bool]) -> String {
    if p.is_empty() {
        return "root".into();
    }
    p.iter().map(|&r| if r { 'R' } else { 'L' }).collect()
}

impl EliminationHit {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generator": self.generator,
            "first": path_string(&self.first),
            "second": path_string(&self.second),
            "meet": path_string(&self.meet),
            "first_path": self.first_path.to_string(),
            "second_path": self.second_path.to_string(),
            "pattern": self.kind,
        })
    }
}

impl fmt::Display for EliminationHit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: leaves {} and {} meet at {}; paths {} vs {}; {}",
            self.generator,
            path_string(&self.first),
            path_string(&self.second),
            path_string(&self.meet),
            self.first_path,
            self.second_path,
            self.kind
        )
    }
}

/// All pairs of same-generator leaves whose leaf-to-meet label products
/// `m₁, m₂` satisfy `m₁ = −m₂` in the coefficient ring.
///
/// Paths are written as `L`/`R` branch choices from the root.
pub fn find_elimination_patterns(t: &Term) -> Vec<EliminationHit> {
    let scheme = EdgeLabelScheme::standard();
    let mut leaves: Vec<(String, TreePath)> = Vec::new();
    t.visit_leaves(&mut Vec::new(), &mut |leaf, path| {
        if let Term::Gen(name) = leaf {
            leaves.push((name.clone(), path.clone()));
        }
    });
    let mut hits = Vec::new();
    for (i, (g1, p1)) in leaves.iter().enumerate() {
        for (g2, p2) in &leaves[i + 1..] {
            if g1 != g2 {
                continue;
            }
            let common = p1.iter().zip(p2).take_while(|(a, b)| a == b).count();
            let meet = &p1[..common];
            let Some(meet_node) = t.subterm(meet) else {
                continue;
            };
            let m1 = path_monomial(meet_node, &p1[common..], &scheme);
            let m2 = path_monomial(meet_node, &p2[common..], &scheme);
            if (&normalize(&m1) + &normalize(&m2)).is_zero() {
                hits.push(EliminationHit {
                    generator: g1.clone(),
                    first: p1.clone(),
                    second: p2.clone(),
                    meet: meet.to_vec(),
                    kind: classify(&m1, &m2),
                    first_path: m1,
                    second_path: m2,
                });
            }
        }
    }
    hits
}

/// Which operations the enumeration combines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OpSet {
    /// `*`, `/`, `\`.
    #[default]
    Basic,
    /// All six operations, including the opposites.
    AllSix,
}

impl OpSet {
    pub fn ops(self) -> &'static [OpSymbol] {
        match self {
            OpSet::Basic => &OpSymbol::BASIC,
            OpSet::AllSix => &OpSymbol::ALL,
        }
    }
}

pub const DEFAULT_RAW_TERM_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("max_leaves must be at least 1")]
    NoLeaves,
    #[error("{count} raw terms up to {max_leaves} leaves exceed the cap of {cap}")]
    TooManyTerms {
        count: u128,
        max_leaves: usize,
        cap: u128,
    },
    #[error("invalid generator name {0:?}")]
    BadGenerator(String),
}

/// One equality class of words: its representative, rendered text and representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordClass {
    pub term: Term,
    pub text: String,
    pub leaves: usize,
    pub representation: Representation,
}

/// Number of raw terms with exactly `leaves` leaves.
fn raw_count_at(leaves: usize, generators: u128, ops: u128) -> u128 {
    // Catalan(leaves - 1) shapes
    let n = leaves as u128 - 1;
    let mut catalan: u128 = 1;
    for k in 0..n {
        catalan = catalan.saturating_mul(2 * (2 * k + 1)) / (k + 2);
    }
    catalan
        .saturating_mul(ops.saturating_pow(n as u32))
        .saturating_mul(generators.saturating_pow(leaves as u32))
}

/// Number of raw terms with at most `max_leaves` leaves.
pub fn raw_term_count(generators: usize, max_leaves: usize, ops: OpSet) -> u128 {
    (1..=max_leaves)
        .map(|n| raw_count_at(n, generators as u128, ops.ops().len() as u128))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Incremental enumeration of word classes by leaf count.
///
/// Classes are found level by level: a class whose shortest words have `n`
/// leaves is always reached by combining classes first seen at smaller
/// levels, and its representative is minimal under `(leaf count, text)`.
pub struct WordEnumerator {
    ops: OpSet,
    cap: u128,
    exec: Execution,
    generators: Vec<String>,
    levels: Vec<Vec<WordClass>>,
    seen: HashMap<Representation, ()>,
}

impl WordEnumerator {
    pub fn new(generators: &[&str], ops: OpSet) -> Result<WordEnumerator, EnumerationError> {
        if generators.is_empty() {
            return Err(EnumerationError::NoGenerators);
        }
        let mut gens: Vec<String> = Vec::new();
        for g in generators {
            match crate::term::parse(g) {
                Ok(Term::Gen(name)) if name == *g => gens.push(name),
                _ => return Err(EnumerationError::BadGenerator(g.to_string())),
            }
        }
        gens.sort();
        gens.dedup();
        Ok(WordEnumerator {
            ops,
            cap: DEFAULT_RAW_TERM_CAP,
            exec: Execution::default(),
            generators: gens,
            levels: Vec::new(),
            seen: HashMap::new(),
        })
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn max_leaves(&self) -> usize {
        self.levels.len()
    }

    /// All classes found so far, ordered by `(leaf count, text)`.
    pub fn classes(&self) -> impl Iterator<Item = &WordClass> {
        self.levels.iter().flatten()
    }

    pub fn class_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Extends the enumeration to words with up to `max_leaves` leaves.
    pub fn extend_to(&mut self, max_leaves: usize) -> Result<(), EnumerationError> {
        if max_leaves == 0 {
            return Err(EnumerationError::NoLeaves);
        }
        let count = raw_term_count(self.generators.len(), max_leaves, self.ops);
        if count > self.cap {
            return Err(EnumerationError::TooManyTerms {
                count,
                max_leaves,
                cap: self.cap,
            });
        }
        while self.levels.len() < max_leaves {
            self.next_level();
        }
        Ok(())
    }

    fn next_level(&mut self) {
        let n = self.levels.len() + 1;
        if n == 1 {
            let level: Vec<WordClass> = self
                .generators
                .iter()
                .map(|g| WordClass {
                    term: Term::gen(g.clone()),
                    text: g.clone(),
                    leaves: 1,
                    representation: Representation::generator(g),
                })
                .collect();
            for c in &level {
                self.seen.insert(c.representation.clone(), ());
            }
            self.levels.push(level);
            return;
        }
        // (left size, left index) work items
        let items: Vec<(usize, usize)> = (1..n)
            .flat_map(|i| (0..self.levels[i - 1].len()).map(move |k| (i, k)))
            .collect();
        let levels = &self.levels;
        let seen = &self.seen;
        let ops = self.ops.ops();
        let candidates: Vec<Vec<(Representation, String, Term)>> =
            par::map_slice(self.exec, &items, |&(i, k)| {
                let left = &levels[i - 1][k];
                let mut out = Vec::new();
                for right in &levels[n - i - 1] {
                    for &op in ops {
                        let rep = Representation::combine(op, &left.representation, &right.representation);
                        if seen.contains_key(&rep) {
                            continue;
                        }
                        let term = Term::node(op, left.term.clone(), right.term.clone());
                        out.push((rep, term.to_string(), term));
                    }
                }
                out
            });
        let mut best: HashMap<Representation, (String, Term)> = HashMap::new();
        for (rep, text, term) in candidates.into_iter().flatten() {
            match best.get(&rep) {
                Some((t, _)) if *t <= text => {}
                _ => {
                    best.insert(rep, (text, term));
                }
            }
        }
        let mut level: Vec<WordClass> = best
            .into_iter()
            .map(|(rep, (text, term))| WordClass {
                term,
                text,
                leaves: n,
                representation: rep,
            })
            .collect();
        level.sort_by(|a, b| a.text.cmp(&b.text));
        for c in &level {
            self.seen.insert(c.representation.clone(), ());
        }
        self.levels.push(level);
    }
}

/// One representative per equality class of words with at most `max_leaves`
/// leaves, ordered by `(leaf count, text)`.
pub fn enumerate_words(
    generators: &[&str],
    max_leaves: usize,
    ops: OpSet,
) -> Result<Vec<WordClass>, EnumerationError> {
    let mut e = WordEnumerator::new(generators, ops)?;
    e.extend_to(max_leaves)?;
    Ok(e.classes().cloned().collect())
}

/// The term `x (x y μ^{τg}) μ^g` over formal leaves `x`, `y`.
pub fn hypercancellation_term(g: S3Element) -> Term {
    let inner_op = OpSymbol::from_s3(S3Element::TAU * g);
    let outer_op = OpSymbol::from_s3(g);
    Term::node(
        outer_op,
        Term::gen("x"),
        Term::node(inner_op, Term::gen("x"), Term::gen("y")),
    )
}

/// Checks that `x (x y μ^{τg}) μ^g` represents exactly `y`.
pub fn rep_identity_check(g: S3Element) -> bool {
    represent(&hypercancellation_term(g)) == Representation::generator("y")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrpalg::{GroupWord, Letter::*};
    use crate::term::parse;

    const LEFT: &str = "((a0/a1)*(a2*a3))/(a4\\a0)";
    const RIGHT: &str = "(a4*(a2*a3))/a1";

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn xm(pairs: &[(i64, bool)]) -> XMonomial {
        XMonomial::from_letters(
            pairs.iter()
                .map(|&(i, inv)| if inv { XLetter::x_inv(i) } else { XLetter::x(i) }),
        )
    }

    fn el(c: i64, letters: &[crate::freegrpalg::Letter]) -> AlgebraElement {
        AlgebraElement::monomial(c, GroupWord::reduce(letters.iter().copied()))
    }

    #[test]
    fn scheme_matches_triality() {
        assert_eq!(EdgeLabelScheme::standard(), EdgeLabelScheme::from_triality());
        let s = EdgeLabelScheme::standard();
        assert_eq!(s.labels(OpSymbol::LDiv), (XLetter::x_inv(3), XLetter::x(1)));
    }

    #[test]
    fn raw_form_of_left_word() {
        let raw = raw_form(&t(LEFT));
        let expected = vec![
            ("a0", xm(&[(2, true)])),
            ("a1", xm(&[(3, false)])),
            ("a2", xm(&[(2, false), (1, true), (2, true)])),
            ("a3", xm(&[(1, true), (1, true), (2, true)])),
            ("a4", XMonomial::one()),
            ("a0", xm(&[(1, false), (3, false)])),
        ];
        assert_eq!(raw.len(), 6);
        for ((g, m), (eg, em)) in raw.iter().zip(expected) {
            assert_eq!(g, eg);
            assert_eq!(m, &em);
        }
        assert_eq!(raw_form(&t("a")).0, vec![("a".to_string(), XMonomial::one())]);
    }

    #[test]
    fn raw_form_of_right_word() {
        let raw = raw_form(&t(RIGHT));
        let shown: Vec<String> = raw.iter().map(|(g, m)| format!("{g}:{m}")).collect();
        assert_eq!(shown, ["a4:1", "a2:X2 X1^-1 X2^-1", "a3:X1^-1 X1^-1 X2^-1", "a1:X3"]);
    }

    #[test]
    fn represents_two_words() {
        let rep = represent(&t(LEFT));
        assert_eq!(rep, represent(&t(RIGHT)));
        assert!(rep.get("a0").is_none());
        assert_eq!(rep.get("a1"), Some(&el(-1, &[L, RInv])));
        assert_eq!(rep.get("a2"), Some(&el(1, &[R, L, RInv])));
        assert_eq!(rep.get("a3"), Some(&el(1, &[L, L, RInv])));
        assert_eq!(rep.get("a4"), Some(&AlgebraElement::one()));
        assert_eq!(
            rep.to_string(),
            "a1: -1*L R^-1\na2: 1*R L R^-1\na3: 1*L^2 R^-1\na4: 1*1"
        );
    }

    #[test]
    fn small_representations() {
        let ab = represent(&t("a*b"));
        assert_eq!(ab.get("a"), Some(&el(1, &[R])));
        assert_eq!(ab.get("b"), Some(&el(1, &[L])));
        assert!(represent(&t("@e")).is_zero());
        assert_eq!(represent(&t("a*@e")).to_string(), "a: 1*R");
    }

    #[test]
    fn equality_examples() {
        assert!(equal(&t(LEFT), &t(RIGHT)));
        assert!(!equal(&t("a*b"), &t("b*a")));
        assert!(equal(&t(LEFT), &t(LEFT)));
        assert!(equal(&t("a o b"), &t("b*a")));
    }

    #[test]
    fn eliminated_argument_examples() {
        assert_eq!(eliminated_arguments(&t(LEFT)), BTreeSet::from(["a0".to_string()]));
        assert!(eliminated_arguments(&t("a*b")).is_empty());
        assert_eq!(eliminated_arguments(&t("a\\(a*b)")), BTreeSet::from(["a".to_string()]));
        assert!(equal(&t("a\\(a*b)"), &t("b")));
    }

    #[test]
    fn left_pattern_in_left_word() {
        let hits = find_elimination_patterns(&t(LEFT));
        assert_eq!(hits.len(), 1);
        let h = &hits[0];
        assert_eq!(h.generator, "a0");
        assert_eq!(h.kind, PatternKind::Left(2));
        assert!(h.meet.is_empty());
        assert_eq!(h.first_path, xm(&[(2, true)]));
        assert_eq!(h.second_path, xm(&[(1, false), (3, false)]));
        assert!(find_elimination_patterns(&t("a*b")).is_empty());
    }

    #[test]
    fn right_pattern_with_i_1() {
        // paths X₂⁻¹X₃⁻¹ and X₁ meet at the root
        let hits = find_elimination_patterns(&t("(a/b)\\a"));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].kind, PatternKind::Right(1));
        assert_eq!(eliminated_arguments(&t("(a/b)\\a")), BTreeSet::from(["a".to_string()]));
    }

    #[test]
    fn patterns_below_the_root() {
        let hits = find_elimination_patterns(&t("c*(a\\(a*b))"));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].meet, vec![true]);
        assert_eq!(hits[0].kind, PatternKind::Left(3));
    }

    #[test]
    fn enumeration_two_leaves() {
        let classes = enumerate_words(&["a"], 2, OpSet::Basic).unwrap();
        let texts: Vec<&str> = classes.iter().map(|c| c.text.as_str()).collect();
        assert_eq!(texts, ["a", "a*a", "a/a", "a\\a"]);
        assert_eq!(enumerate_words(&["a"], 1, OpSet::Basic).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_errors() {
        assert_eq!(enumerate_words(&[], 2, OpSet::Basic), Err(EnumerationError::NoGenerators));
        assert_eq!(enumerate_words(&["a"], 0, OpSet::Basic), Err(EnumerationError::NoLeaves));
        assert!(matches!(
            enumerate_words(&["a", "b"], 20, OpSet::Basic),
            Err(EnumerationError::TooManyTerms { .. })
        ));
        assert!(matches!(
            enumerate_words(&["o"], 2, OpSet::Basic),
            Err(EnumerationError::BadGenerator(_))
        ));
    }

    #[test]
    fn raw_counts() {
        assert_eq!(raw_term_count(1, 3, OpSet::Basic), 1 + 3 + 18);
        assert_eq!(raw_term_count(2, 2, OpSet::AllSix), 2 + 6 * 4);
    }

    #[test]
    fn hypercancellation_identities() {
        for g in S3Element::all() {
            assert!(rep_identity_check(g), "g = {g}");
        }
        assert_eq!(hypercancellation_term(S3Element::IDENTITY).to_string(), "x*(x\\y)");
        assert_eq!(hypercancellation_term(S3Element::TAU).to_string(), "x\\(x*y)");
        let sts = S3Element::SIGMA * S3Element::TAU * S3Element::SIGMA;
        assert_eq!(hypercancellation_term(sts).to_string(), "x/(x\\\\y)");
    }

    #[test]
    fn opposite_law() {
        for g in S3Element::all() {
            let lhs = Term::node(OpSymbol::from_s3(S3Element::SIGMA * g), Term::gen("x"), Term::gen("y"));
            let rhs = Term::node(OpSymbol::from_s3(g), Term::gen("y"), Term::gen("x"));
            assert!(equal(&lhs, &rhs));
        }
    }

    #[test]
    fn json_export() {
        let json = represent(&t("a/b")).to_json();
        assert_eq!(json, serde_json::json!({"a": [[1, "R^-1"]], "b": [[-1, "L R^-1"]]}));
    }
}
