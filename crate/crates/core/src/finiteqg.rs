//! Finite quasigroups given by Cayley tables.
//!
//! Elements are indices `0..n` into a list of names. The multiplication table
//! is validated as a Latin square; both divisions are derived from it. The
//! six conjugates, semisymmetrization, homotopies and the monoid of binary
//! operations all work on these index tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::{self, Execution};
use crate::s3::S3Element;
use crate::term::{OpSymbol, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuasigroupError {
    #[error("table has {rows} rows but there are {elements} elements")]
    RowCount { rows: usize, elements: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is not an element index (order {order})")]
    OutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("row {row} repeats {value} (columns {first} and {second})")]
    RowRepeat { row: usize, value: usize, first: usize, second: usize },
    #[error("column {col} repeats {value} (rows {first} and {second})")]
    ColumnRepeat { col: usize, value: usize, first: usize, second: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
}

/// A validated finite quasigroup with its derived division tables.
#[derive(Debug, Clone)]
pub struct FiniteQuasigroup {
    elements: Arc<[String]>,
    mul: Vec<usize>,
    rdiv: Vec<usize>,
    ldiv: Vec<usize>,
}

impl PartialEq for FiniteQuasigroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.mul == other.mul
    }
}

impl Eq for FiniteQuasigroup {}

/// Cayley JSON: `{"elements": [names…], "mul": [[row-major indices]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    pub elements: Vec<String>,
    pub mul: Vec<Vec<usize>>,
}

impl FiniteQuasigroup {
    /// Validates a Latin square over `elements` and derives `x/y = xR(y)⁻¹`
    /// and `x\y = yL(x)⁻¹`.
    pub fn validate(elements: Vec<String>, table: &[Vec<usize>]) -> Result<Self, QuasigroupError> {
        let n = elements.len();
        if table.len() != n {
            return Err(QuasigroupError::RowCount {
                rows: table.len(),
                elements: n,
            });
        }
        let mut seen_names = HashMap::new();
        for name in &elements {
            if seen_names.insert(name.as_str(), ()).is_some() {
                return Err(QuasigroupError::DuplicateName(name.clone()));
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(QuasigroupError::RowLength {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(QuasigroupError::OutOfRange {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
            }
            mul.extend_from_slice(r);
        }
        Self::from_flat(elements.into(), mul)
    }

    /// Validates a row-major flat table whose elements are named `0..n`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, QuasigroupError> {
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let value = f(x, y);
                if value >= n {
                    return Err(QuasigroupError::OutOfRange {
                        row: x,
                        col: y,
                        value,
                        order: n,
                    });
                }
                mul.push(value);
            }
        }
        Self::from_flat(default_names(n), mul)
    }

    fn from_flat(elements: Arc<[String]>, mul: Vec<usize>) -> Result<Self, QuasigroupError> {
        let n = elements.len();
        const UNSET: usize = usize::MAX;
        let mut rdiv = vec![UNSET; n * n];
        let mut ldiv = vec![UNSET; n * n];
        // Rows first, so a repeated row entry is reported as such.
        for x in 0..n {
            for y in 0..n {
                let z = mul[x * n + y];
                let l = &mut ldiv[x * n + z];
                if *l != UNSET {
                    return Err(QuasigroupError::RowRepeat {
                        row: x,
                        value: z,
                        first: *l,
                        second: y,
                    });
                }
                // x·y = z gives x\z = y and z/y = x.
                *l = y;
            }
        }
        for y in 0..n {
            for x in 0..n {
                let z = mul[x * n + y];
                let r = &mut rdiv[z * n + y];
                if *r != UNSET {
                    return Err(QuasigroupError::ColumnRepeat {
                        col: y,
                        value: z,
                        first: *r,
                        second: x,
                    });
                }
                *r = x;
            }
        }
        Ok(FiniteQuasigroup {
            elements,
            mul,
            rdiv,
            ldiv,
        })
    }

    pub fn from_cayley(table: &CayleyTable) -> Result<Self, QuasigroupError> {
        Self::validate(table.elements.clone(), &table.mul)
    }

    pub fn to_cayley(&self) -> CayleyTable {
        let n = self.order();
        CayleyTable {
            elements: self.elements.to_vec(),
            mul: (0..n).map(|x| self.mul[x * n..(x + 1) * n].to_vec()).collect(),
        }
    }

    /// `(ℤₙ, x + y)`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |x, y| (x + y) % n).expect("cyclic group table is a Latin square")
    }

    /// `(ℤₙ, f(x, y) mod n)` for an affine `f`; panics if not a Latin square.
    pub fn affine(n: usize, a: i64, b: i64) -> Self {
        let m = n as i64;
        Self::from_fn(n, |x, y| (a * x as i64 + b * y as i64).rem_euclid(m) as usize)
            .expect("affine table with unit coefficients")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn carrier(&self) -> &Arc<[String]> {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order() + y]
    }

    pub fn rdiv(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.order() + y]
    }

    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.order() + y]
    }

    /// Any of the six operations; `x//y = y/x`, `x\\y = y\x`, `x∘y = y·x`.
    pub fn op(&self, op: OpSymbol, x: usize, y: usize) -> usize {
        match op {
            OpSymbol::Mul => self.mul(x, y),
            OpSymbol::RDiv => self.rdiv(x, y),
            OpSymbol::LDiv => self.ldiv(x, y),
            OpSymbol::Opp => self.mul(y, x),
            OpSymbol::RRDiv => self.rdiv(y, x),
            OpSymbol::LLDiv => self.ldiv(y, x),
        }
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    /// Checks (SL), (SR), (IL), (IR) exhaustively.
    pub fn check_identities(&self) -> Result<(), IdentityViolation> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let checks = [
                    ("SL", self.mul(x, self.ldiv(x, y)) == y),
                    ("SR", self.mul(self.rdiv(y, x), x) == y),
                    ("IL", self.ldiv(x, self.mul(x, y)) == y),
                    ("IR", self.rdiv(self.mul(y, x), x) == y),
                ];
                if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
                    return Err(IdentityViolation { identity: name, x, y });
                }
            }
        }
        Ok(())
    }

    /// `(Q, μ^g)`: whenever `x₁·x₂ = x₃`, the conjugate sends
    /// `(x_{1g}, x_{2g})` to `x_{3g}`.
    pub fn conjugate(&self, g: S3Element) -> FiniteQuasigroup {
        let n = self.order();
        let mut table = vec![0; n * n];
        for x1 in 0..n {
            for x2 in 0..n {
                let x = [x1, x2, self.mul(x1, x2)];
                table[x[g.apply0(0)] * n + x[g.apply0(1)]] = x[g.apply0(2)];
            }
        }
        Self::from_flat(self.elements.clone(), table).expect("conjugates of a quasigroup are quasigroups")
    }

    /// True iff `x·(y·x) = y` and `R(x) = L(x)⁻¹` for all `x, y`.
    pub fn is_semisymmetric(&self) -> bool {
        self.is_semisymmetric_with(Execution::default())
    }

    pub fn is_semisymmetric_with(&self, exec: Execution) -> bool {
        self.semisymmetry_violation(exec).is_none()
    }

    /// First `(x, y)` with `x·(y·x) ≠ y` or `yR(x)L(x) ≠ y`.
    pub fn semisymmetry_violation(&self, exec: Execution) -> Option<(usize, usize)> {
        let n = self.order();
        par::find_first(exec, n, |x| {
            (0..n)
                .find(|&y| {
                    // yR(x) = y·x must equal yL(x)⁻¹ = x\y.
                    self.mul(x, self.mul(y, x)) != y || self.mul(y, x) != self.ldiv(x, y)
                })
                .map(|y| (x, y))
        })
    }

    /// The semisymmetrization on `Q³`:
    /// `(x₁,x₂,x₃)·(y₁,y₂,y₃) = (x₂//y₃, x₃\\y₁, x₁·y₂)`.
    ///
    /// Triples are encoded as `x₁n² + x₂n + x₃`.
    pub fn semisymmetrize(&self) -> FiniteQuasigroup {
        self.semisymmetrize_with(Execution::default())
    }

    pub fn semisymmetrize_with(&self, exec: Execution) -> FiniteQuasigroup {
        let n = self.order();
        let m = n * n * n;
        let rows = par::map_range(exec, m, |x| {
            let [x1, x2, x3] = triple(n, x);
            (0..m)
                .map(|y| {
                    let [y1, y2, y3] = triple(n, y);
                    encode(
                        n,
                        [
                            self.op(OpSymbol::RRDiv, x2, y3),
                            self.op(OpSymbol::LLDiv, x3, y1),
                            self.mul(x1, y2),
                        ],
                    )
                })
                .collect::<Vec<_>>()
        });
        let names: Vec<String> = (0..m)
            .map(|i| {
                let [a, b, c] = triple(n, i);
                format!("({},{},{})", self.elements[a], self.elements[b], self.elements[c])
            })
            .collect();
        Self::from_flat(names.into(), rows.concat()).expect("semisymmetrization is a quasigroup")
    }

    /// Evaluates a term; `idempotent` interprets `@e` and must satisfy `e·e = e`.
    pub fn eval(
        &self,
        t: &Term,
        assignment: &HashMap<String, usize>,
        idempotent: Option<usize>,
    ) -> Result<usize, EvalError> {
        match t {
            Term::Gen(g) => assignment
                .get(g)
                .copied()
                .filter(|&v| v < self.order())
                .ok_or_else(|| EvalError::Unassigned(g.clone())),
            Term::Idempotent => match idempotent {
                Some(e) if e < self.order() && self.mul(e, e) == e => Ok(e),
                Some(e) => Err(EvalError::NotIdempotent(e)),
                None => Err(EvalError::NoIdempotent),
            },
            Term::Node(op, l, r) => {
                let x = self.eval(l, assignment, idempotent)?;
                let y = self.eval(r, assignment, idempotent)?;
                Ok(self.op(*op, x, y))
            }
        }
    }
}

impl fmt::Display for FiniteQuasigroup {
    /// Cayley table with a header row of element names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let w = self.elements.iter().map(|e| e.len()).max().unwrap_or(1);
        write!(f, "{:>w$} |", "·")?;
        for e in self.elements.iter() {
            write!(f, " {e:>w$}")?;
        }
        writeln!(f)?;
        for x in 0..n {
            write!(f, "{:>w$} |", self.elements[x])?;
            for y in 0..n {
                write!(f, " {:>w$}", self.elements[self.mul(x, y)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn default_names(n: usize) -> Arc<[String]> {
    (0..n).map(|i| i.to_string()).collect::<Vec<_>>().into()
}

pub(crate) fn triple(n: usize, i: usize) -> [usize; 3] {
    [i / (n * n), (i / n) % n, i % n]
}

pub(crate) fn encode(n: usize, t: [usize; 3]) -> usize {
    (t[0] * n + t[1]) * n + t[2]
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("({identity}) fails at x = {x}, y = {y}")]
pub struct IdentityViolation {
    pub identity: &'static str,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("generator {0:?} has no value")]
    Unassigned(String),
    #[error("term contains @e but no idempotent was supplied")]
    NoIdempotent,
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
}

// ---------------------------------------------------------------------------
// Homotopies

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("map f{index} has length {len}, expected {expected}")]
    Length { index: usize, len: usize, expected: usize },
    #[error("map f{index} sends {x} to {value}, outside the target of order {order}")]
    OutOfRange { index: usize, x: usize, value: usize, order: usize },
    #[error("x = {x}, y = {y}: xf1·yf2 = {lhs} but (x·y)f3 = {rhs}")]
    Equation { x: usize, y: usize, lhs: usize, rhs: usize },
    #[error("components differ: f1, f2, f3 are not all equal")]
    UnequalComponents,
}

/// A triple `(f₁, f₂, f₃)` of index maps between two quasigroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    pub source: FiniteQuasigroup,
    pub target: FiniteQuasigroup,
    pub maps: [Vec<usize>; 3],
}

impl Homotopy {
    pub fn check(&self) -> Result<(), HomotopyError> {
        check_homotopy(&self.source, &self.target, &self.maps, Execution::default())
    }

    pub fn is_homotopy(&self) -> bool {
        self.check().is_ok()
    }

    pub fn is_homomorphism(&self) -> bool {
        is_homomorphism(&self.source, &self.target, &self.maps)
    }
}

/// Exhaustively checks `xf₁·yf₂ = (x·y)f₃`, reporting the first failure.
pub fn check_homotopy(
    source: &FiniteQuasigroup,
    target: &FiniteQuasigroup,
    maps: &[Vec<usize>; 3],
    exec: Execution,
) -> Result<(), HomotopyError> {
    let n = source.order();
    for (i, f) in maps.iter().enumerate() {
        if f.len() != n {
            return Err(HomotopyError::Length {
                index: i + 1,
                len: f.len(),
                expected: n,
            });
        }
        if let Some((x, &value)) = f.iter().enumerate().find(|(_, &v)| v >= target.order()) {
            return Err(HomotopyError::OutOfRange {
                index: i + 1,
                x,
                value,
                order: target.order(),
            });
        }
    }
    let [f1, f2, f3] = maps;
    let bad = par::find_first(exec, n, |x| {
        (0..n).find_map(|y| {
            let lhs = target.mul(f1[x], f2[y]);
            let rhs = f3[source.mul(x, y)];
            (lhs != rhs).then_some(HomotopyError::Equation { x, y, lhs, rhs })
        })
    });
    bad.map_or(Ok(()), Err)
}

pub fn is_homotopy(source: &FiniteQuasigroup, target: &FiniteQuasigroup, maps: &[Vec<usize>; 3]) -> bool {
    check_homotopy(source, target, maps, Execution::default()).is_ok()
}

/// A homotopy with equal components.
pub fn is_homomorphism(source: &FiniteQuasigroup, target: &FiniteQuasigroup, maps: &[Vec<usize>; 3]) -> bool {
    maps[0] == maps[1] && maps[1] == maps[2] && is_homotopy(source, target, maps)
}

/// The projections `Q³ → Q` as a homotopy from the semisymmetrization.
pub fn counit(q: &FiniteQuasigroup) -> [Vec<usize>; 3] {
    let n = q.order();
    let m = n * n * n;
    [0, 1, 2].map(|i| (0..m).map(|x| triple(n, x)[i]).collect())
}

/// The diagonal `x ↦ (x, x, x)`, as an index map into the semisymmetrization.
pub fn unit(q: &FiniteQuasigroup) -> Vec<usize> {
    let n = q.order();
    (0..n).map(|x| encode(n, [x, x, x])).collect()
}

/// The componentwise map `(x₁,x₂,x₃) ↦ (x₁f₁, x₂f₂, x₃f₃)` between
/// semisymmetrizations induced by a triple of maps.
pub fn delta(source_order: usize, target_order: usize, maps: &[Vec<usize>; 3]) -> Vec<usize> {
    let m = source_order.pow(3);
    (0..m)
        .map(|x| {
            let [a, b, c] = triple(source_order, x);
            encode(target_order, [maps[0][a], maps[1][b], maps[2][c]])
        })
        .collect()
}

/// Homotopy JSON: `{"source": cayley, "target": cayley, "f1": [..], "f2": [..], "f3": [..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomotopyFile {
    pub source: CayleyTable,
    pub target: CayleyTable,
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
    pub f3: Vec<usize>,
}

impl HomotopyFile {
    pub fn into_homotopy(self) -> Result<Homotopy, QuasigroupError> {
        Ok(Homotopy {
            source: FiniteQuasigroup::from_cayley(&self.source)?,
            target: FiniteQuasigroup::from_cayley(&self.target)?,
            maps: [self.f1, self.f2, self.f3],
        })
    }
}

// ---------------------------------------------------------------------------
// The monoid of binary operations

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("binary operations live on different carriers")]
pub struct CarrierMismatch;

/// An arbitrary binary operation on the carrier of a quasigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryOpTable {
    carrier: Arc<[String]>,
    table: Vec<usize>,
}

impl BinaryOpTable {
    /// Panics unless `table` has `n²` entries below `n`.
    pub fn new(carrier: Arc<[String]>, table: Vec<usize>) -> Self {
        let n = carrier.len();
        assert_eq!(table.len(), n * n, "binary operation table shape");
        assert!(table.iter().all(|&v| v < n), "binary operation value out of range");
        BinaryOpTable { carrier, table }
    }

    pub fn from_quasigroup(q: &FiniteQuasigroup) -> Self {
        BinaryOpTable {
            carrier: q.carrier().clone(),
            table: q.mul.clone(),
        }
    }

    /// The multiplication of `conjugate(q, g)`.
    pub fn conjugate_of(q: &FiniteQuasigroup, g: S3Element) -> Self {
        Self::from_quasigroup(&q.conjugate(g))
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order() + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

/// `(α * β)(x, y) = β(x, α(x, y))`.
pub fn binop_mul(alpha: &BinaryOpTable, beta: &BinaryOpTable) -> Result<BinaryOpTable, CarrierMismatch> {
    if alpha.carrier != beta.carrier {
        return Err(CarrierMismatch);
    }
    let n = alpha.order();
    let table = (0..n * n).map(|i| beta.get(i / n, alpha.table[i])).collect();
    Ok(BinaryOpTable {
        carrier: alpha.carrier.clone(),
        table,
    })
}

/// The right projection `ε(x, y) = y`.
pub fn binop_identity(q: &FiniteQuasigroup) -> BinaryOpTable {
    let n = q.order();
    BinaryOpTable {
        carrier: q.carrier().clone(),
        table: (0..n * n).map(|i| i % n).collect(),
    }
}

/// Whether `μ^{τg}` and `μ^g` are mutually inverse for one `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialityUnit {
    #[serde(serialize_with = "crate::finiteqg::ser_display")]
    pub g: S3Element,
    /// `μ^{τg} * μ^g = ε`
    pub left: bool,
    /// `μ^g * μ^{τg} = ε`
    pub right: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialityReport {
    pub units: Vec<TrialityUnit>,
}

impl TrialityReport {
    pub fn all_pass(&self) -> bool {
        self.units.iter().all(|u| u.left && u.right)
    }
}

pub fn check_triality_units(q: &FiniteQuasigroup) -> TrialityReport {
    let eps = binop_identity(q);
    let units = S3Element::all()
        .into_iter()
        .map(|g| {
            let a = BinaryOpTable::conjugate_of(q, S3Element::TAU * g);
            let b = BinaryOpTable::conjugate_of(q, g);
            TrialityUnit {
                g,
                left: binop_mul(&a, &b).expect("same carrier") == eps,
                right: binop_mul(&b, &a).expect("same carrier") == eps,
            }
        })
        .collect();
    TrialityReport { units }
}

pub(crate) fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

// ---------------------------------------------------------------------------
// Latin squares

/// Every Latin square of order `n` over `0..n`, in lexicographic order of
/// their row-major tables. There are 1, 1, 2, 12, 576, 161280 of them for
/// n = 0..=5.
pub fn all_latin_squares(n: usize) -> Vec<FiniteQuasigroup> {
    let mut out = Vec::new();
    let mut cells = vec![usize::MAX; n * n];
    fill(n, 0, &mut cells, &mut |cells| {
        out.push(FiniteQuasigroup::from_fn(n, |x, y| cells[x * n + y]).expect("filled square is Latin"));
        true
    }, &mut |_, c| c);
    out
}

/// A random Latin square of order `n` by randomized backtracking.
pub fn random_latin_square<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FiniteQuasigroup {
    let mut cells = vec![usize::MAX; n * n];
    let mut found = None;
    fill(n, 0, &mut cells, &mut |cells| {
        found = Some(cells.to_vec());
        false
    }, &mut |_, mut c: Vec<usize>| {
        c.shuffle(rng);
        c
    });
    let cells = found.expect("a Latin square of every order exists");
    FiniteQuasigroup::from_fn(n, |x, y| cells[x * n + y]).expect("filled square is Latin")
}

/// Backtracking cell by cell; `done` returns whether to keep searching and
/// `order` permutes the candidate values of a cell.
fn fill(
    n: usize,
    pos: usize,
    cells: &mut [usize],
    done: &mut dyn FnMut(&[usize]) -> bool,
    order: &mut dyn FnMut(usize, Vec<usize>) -> Vec<usize>,
) -> bool {
    if pos == n * n {
        return done(cells);
    }
    let (r, c) = (pos / n, pos % n);
    let candidates: Vec<usize> = (0..n)
        .filter(|&v| (0..c).all(|j| cells[r * n + j] != v) && (0..r).all(|i| cells[i * n + c] != v))
        .collect();
    for v in order(pos, candidates) {
        cells[pos] = v;
        if !fill(n, pos + 1, cells, done, order) {
            return false;
        }
    }
    cells[pos] = usize::MAX;
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s3(word: &str) -> S3Element {
        word.parse().unwrap()
    }

    #[test]
    fn cyclic_divisions() {
        let q = FiniteQuasigroup::cyclic(3);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(q.rdiv(x, y), (x + 3 - y) % 3);
                assert_eq!(q.ldiv(x, y), (y + 3 - x) % 3);
            }
        }
        assert!(q.check_identities().is_ok());
    }

    #[test]
    fn repeated_row_rejected() {
        let err = FiniteQuasigroup::validate(vec!["0".into(), "1".into()], &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, QuasigroupError::RowRepeat { row: 1, value: 1, .. }), "{err}");
    }

    #[test]
    fn repeated_column_rejected() {
        let err = FiniteQuasigroup::validate(vec!["0".into(), "1".into()], &[vec![0, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, QuasigroupError::ColumnRepeat { col: 0, value: 0, .. }), "{err}");
    }

    #[test]
    fn shape_errors() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(matches!(
            FiniteQuasigroup::validate(names.clone(), &[vec![0, 1]]),
            Err(QuasigroupError::RowCount { .. })
        ));
        assert!(matches!(
            FiniteQuasigroup::validate(names.clone(), &[vec![0, 1], vec![1]]),
            Err(QuasigroupError::RowLength { row: 1, .. })
        ));
        assert!(matches!(
            FiniteQuasigroup::validate(names, &[vec![0, 2], vec![1, 0]]),
            Err(QuasigroupError::OutOfRange { value: 2, .. })
        ));
        assert!(matches!(
            FiniteQuasigroup::validate(vec!["a".into(), "a".into()], &[vec![0, 1], vec![1, 0]]),
            Err(QuasigroupError::DuplicateName(_))
        ));
    }

    #[test]
    fn empty_quasigroup() {
        let q = FiniteQuasigroup::validate(vec![], &[]).unwrap();
        assert_eq!(q.order(), 0);
        assert!(q.is_semisymmetric());
        assert!(q.check_identities().is_ok());
        assert_eq!(q.semisymmetrize().order(), 0);
        assert!(check_triality_units(&q).all_pass());
    }

    #[test]
    fn conjugates_of_cyclic_group() {
        let q = FiniteQuasigroup::cyclic(3);
        let sub = q.conjugate(s3("sts"));
        let ldiv = q.conjugate(s3("t"));
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(sub.mul(x, y), (x + 3 - y) % 3);
                assert_eq!(ldiv.mul(x, y), (y + 3 - x) % 3);
            }
        }
        assert_eq!(q.conjugate(S3Element::IDENTITY), q);
        let s = S3Element::SIGMA;
        assert_eq!(q.conjugate(s).conjugate(s), q);
    }

    #[test]
    fn conjugates_match_named_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = random_latin_square(&mut rng, 5);
        for op in OpSymbol::ALL {
            let c = q.conjugate(op.s3());
            for x in 0..5 {
                for y in 0..5 {
                    assert_eq!(c.mul(x, y), q.op(op, x, y), "{op:?}");
                }
            }
        }
    }

    #[test]
    fn iterated_conjugates() {
        // The h-conjugate of μ^g is μ^{hg}: relabelling a term by g and
        // evaluating in q is evaluating the term in the g-conjugate.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let q = random_latin_square(&mut rng, 4);
        for g in S3Element::all() {
            for h in S3Element::all() {
                assert_eq!(q.conjugate(g).conjugate(h), q.conjugate(h * g));
            }
        }
        let t = parse("(a/b)\\\\(b o (a*b))").unwrap();
        for g in S3Element::all() {
            let c = q.conjugate(g);
            for x in 0..4 {
                for y in 0..4 {
                    let env = HashMap::from([("a".to_string(), x), ("b".to_string(), y)]);
                    assert_eq!(q.eval(&t.relabel_ops(g), &env, None), c.eval(&t, &env, None));
                }
            }
        }
    }

    #[test]
    fn semisymmetry_examples() {
        assert!(FiniteQuasigroup::affine(3, -1, -1).is_semisymmetric());
        let add = FiniteQuasigroup::cyclic(3);
        assert!(!add.is_semisymmetric());
        // 1·(0·1) = 2 ≠ 0
        assert_eq!(add.mul(1, add.mul(0, 1)), 2);
        assert!(FiniteQuasigroup::cyclic(1).is_semisymmetric());
    }

    #[test]
    fn semisymmetrization_of_z2() {
        let q = FiniteQuasigroup::cyclic(2);
        let p = q.semisymmetrize();
        assert_eq!(p.order(), 8);
        for x in 0..8 {
            for y in 0..8 {
                let [x1, x2, x3] = triple(2, x);
                let [y1, y2, y3] = triple(2, y);
                assert_eq!(triple(2, p.mul(x, y)), [(x2 + y3) % 2, (x3 + y1) % 2, (x1 + y2) % 2]);
            }
        }
        assert!(p.is_semisymmetric());
        assert_eq!(p.elements()[5], "(1,0,1)");
    }

    #[test]
    fn unit_counit_delta() {
        let p = FiniteQuasigroup::affine(5, -1, -1);
        let pp = p.semisymmetrize();
        let eta = unit(&p);
        assert!(is_homomorphism(&p, &pp, &[eta.clone(), eta.clone(), eta]));

        let q = FiniteQuasigroup::cyclic(2);
        let qq = q.semisymmetrize();
        assert!(is_homotopy(&qq, &q, &counit(&q)));

        let id: Vec<usize> = (0..3).collect();
        let z3 = FiniteQuasigroup::cyclic(3);
        assert!(is_homomorphism(&z3, &z3, &[id.clone(), id.clone(), id]));

        // x ↦ x + 1, y ↦ y + 1, z ↦ z + 2 is a homotopy of ℤ₃ to itself.
        let maps = [vec![1, 2, 0], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(is_homotopy(&z3, &z3, &maps));
        assert!(!is_homomorphism(&z3, &z3, &maps));
        let d = delta(3, 3, &maps);
        let ss = z3.semisymmetrize();
        assert!(is_homomorphism(&ss, &ss, &[d.clone(), d.clone(), d]));
    }

    #[test]
    fn homotopy_failure_reports_witness() {
        let z3 = FiniteQuasigroup::cyclic(3);
        let maps = [vec![1, 2, 0], vec![0, 1, 2], vec![0, 1, 2]];
        let err = check_homotopy(&z3, &z3, &maps, Execution::Sequential).unwrap_err();
        assert_eq!(err, HomotopyError::Equation { x: 0, y: 0, lhs: 1, rhs: 0 });
    }

    #[test]
    fn binop_monoid() {
        let q = FiniteQuasigroup::cyclic(3);
        let eps = binop_identity(&q);
        let mu = BinaryOpTable::from_quasigroup(&q);
        let mu_t = BinaryOpTable::conjugate_of(&q, S3Element::TAU);
        assert_eq!(binop_mul(&eps, &mu).unwrap(), mu);
        assert_eq!(binop_mul(&mu, &eps).unwrap(), mu);
        assert_eq!(binop_mul(&mu, &mu_t).unwrap(), eps);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let carrier = q.carrier().clone();
        let mut random = || BinaryOpTable::new(carrier.clone(), (0..9).map(|_| rng.gen_range(0..3)).collect());
        let (a, b, c) = (random(), random(), random());
        let ab_c = binop_mul(&binop_mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = binop_mul(&a, &binop_mul(&b, &c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);

        let other = BinaryOpTable::from_quasigroup(&FiniteQuasigroup::cyclic(2));
        assert_eq!(binop_mul(&mu, &other), Err(CarrierMismatch));
    }

    #[test]
    fn triality_units_on_z3_and_random() {
        assert!(check_triality_units(&FiniteQuasigroup::cyclic(3)).all_pass());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let report = check_triality_units(&random_latin_square(&mut rng, 5));
        assert_eq!(report.units.len(), 6);
        assert!(report.all_pass());
    }

    #[test]
    fn triality_unit_at_identity_is_il_sl() {
        // g = 1 pairs μ^τ = \ with μ: x\(x·y) = y and x·(x\y) = y.
        let q = FiniteQuasigroup::cyclic(4);
        let report = check_triality_units(&q);
        assert_eq!(report.units[0].g, S3Element::IDENTITY);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(q.ldiv(x, q.mul(x, y)), y);
                assert_eq!(q.mul(x, q.ldiv(x, y)), y);
            }
        }
    }

    #[test]
    fn latin_square_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_latin_squares(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 12, 576]);
    }

    #[test]
    fn random_squares_are_latin() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..=8 {
            let q = random_latin_square(&mut rng, n);
            assert_eq!(q.order(), n);
            assert!(q.check_identities().is_ok());
        }
    }

    #[test]
    fn opposite_law_through_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let q = random_latin_square(&mut rng, 4);
        for g in S3Element::all() {
            let direct = Term::node(OpSymbol::from_s3(g), Term::gen("b"), Term::gen("a"));
            let opposite = OpSymbol::from_s3(S3Element::SIGMA * g);
            let relabelled = parse(&format!("a {} b", opposite.token())).unwrap();
            for x in 0..4 {
                for y in 0..4 {
                    let env = HashMap::from([("a".to_string(), x), ("b".to_string(), y)]);
                    assert_eq!(q.eval(&relabelled, &env, None), q.eval(&direct, &env, None));
                }
            }
        }
    }

    #[test]
    fn eval_errors() {
        let q = FiniteQuasigroup::cyclic(3);
        let env = HashMap::new();
        assert_eq!(q.eval(&Term::gen("a"), &env, None), Err(EvalError::Unassigned("a".into())));
        assert_eq!(q.eval(&Term::Idempotent, &env, None), Err(EvalError::NoIdempotent));
        assert_eq!(q.eval(&Term::Idempotent, &env, Some(1)), Err(EvalError::NotIdempotent(1)));
        assert_eq!(q.eval(&Term::Idempotent, &env, Some(0)), Ok(0));
    }

    #[test]
    fn cayley_round_trip() {
        let q = FiniteQuasigroup::affine(5, 2, 3);
        let json = serde_json::to_string(&q.to_cayley()).unwrap();
        let back: CayleyTable = serde_json::from_str(&json).unwrap();
        assert_eq!(FiniteQuasigroup::from_cayley(&back).unwrap(), q);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let q = FiniteQuasigroup::affine(3, 2, 1);
        assert_eq!(
            q.semisymmetrize_with(Execution::Sequential),
            q.semisymmetrize_with(Execution::Parallel)
        );
        let p = q.semisymmetrize();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert!(p.is_semisymmetric_with(exec));
            assert_eq!(q.semisymmetry_violation(exec), Some((0, 1)));
        }
    }
}
