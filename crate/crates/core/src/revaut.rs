//! Reversible automata of quasigroup type.
//!
//! An automaton has three state spaces `S1, S2, S3` and operations
//! `· : S1×S2 → S3`, `/ : S3×S2 → S1`, `\ : S1×S3 → S2` satisfying
//!
//! ```text
//! (ILA) x1\(x1·x2) = x2     (IRA) (x1·x2)/x2 = x1
//! (SLA) x1·(x1\x3) = x3     (SRA) (x3/x2)·x2 = x3
//! ```
//!
//! Automata with two or three empty state spaces are valid but degenerate;
//! every other valid automaton is pure and comes from a quasigroup.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finiteqg::{check_homotopy, FiniteQuasigroup, HomotopyError};
use crate::par::{self, Execution};

/// Automaton JSON, with row-major index tables. A table whose rows would all
/// be empty may also be given as `[]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    #[serde(rename = "S1")]
    pub s1: Vec<String>,
    #[serde(rename = "S2")]
    pub s2: Vec<String>,
    #[serde(rename = "S3")]
    pub s3: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub rdiv: Vec<Vec<usize>>,
    pub ldiv: Vec<Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("{table} table has {rows} rows, expected {expected}")]
    RowCount { table: &'static str, rows: usize, expected: usize },
    #[error("{table} table row {row} has length {len}, expected {expected}")]
    RowLength { table: &'static str, row: usize, len: usize, expected: usize },
    #[error("{table} table entry ({row}, {col}) = {value} is outside S{space} of size {size}")]
    OutOfRange { table: &'static str, row: usize, col: usize, value: usize, space: usize, size: usize },
    #[error("({identity}) fails at {first_name} = {first}, {second_name} = {second}")]
    Identity {
        identity: &'static str,
        first_name: &'static str,
        first: String,
        second_name: &'static str,
        second: String,
    },
}

/// A validated reversible automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibleAutomaton {
    spaces: [Vec<String>; 3],
    mul: Vec<usize>,
    rdiv: Vec<usize>,
    ldiv: Vec<usize>,
}

impl ReversibleAutomaton {
    pub fn size(&self, space: usize) -> usize {
        self.spaces[space - 1].len()
    }

    pub fn space(&self, space: usize) -> &[String] {
        &self.spaces[space - 1]
    }

    /// `x1·x2 ∈ S3`
    pub fn mul(&self, x1: usize, x2: usize) -> usize {
        self.mul[x1 * self.size(2) + x2]
    }

    /// `x3/x2 ∈ S1`
    pub fn rdiv(&self, x3: usize, x2: usize) -> usize {
        self.rdiv[x3 * self.size(2) + x2]
    }

    /// `x1\x3 ∈ S2`
    pub fn ldiv(&self, x1: usize, x3: usize) -> usize {
        self.ldiv[x1 * self.size(3) + x3]
    }

    pub fn to_file(&self) -> AutomatonFile {
        let rows = |t: &[usize], r: usize, c: usize| (0..r).map(|i| t[i * c..(i + 1) * c].to_vec()).collect();
        let [n1, n2, n3] = [1, 2, 3].map(|i| self.size(i));
        AutomatonFile {
            s1: self.spaces[0].clone(),
            s2: self.spaces[1].clone(),
            s3: self.spaces[2].clone(),
            mul: rows(&self.mul, n1, n2),
            rdiv: rows(&self.rdiv, n3, n2),
            ldiv: rows(&self.ldiv, n1, n3),
        }
    }
}

impl fmt::Display for ReversibleAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "automaton |S1| = {}, |S2| = {}, |S3| = {}", self.size(1), self.size(2), self.size(3))
    }
}

/// Checks table shapes, ranges and the four identities exhaustively.
pub fn validate_automaton(file: &AutomatonFile) -> Result<ReversibleAutomaton, AutomatonError> {
    validate_automaton_with(file, Execution::default())
}

pub fn validate_automaton_with(file: &AutomatonFile, exec: Execution) -> Result<ReversibleAutomaton, AutomatonError> {
    let sizes = [file.s1.len(), file.s2.len(), file.s3.len()];
    // (table, rows space, columns space, values space)
    let mul = flatten("mul", &file.mul, sizes, [1, 2, 3])?;
    let rdiv = flatten("rdiv", &file.rdiv, sizes, [3, 2, 1])?;
    let ldiv = flatten("ldiv", &file.ldiv, sizes, [1, 3, 2])?;
    let a = ReversibleAutomaton {
        spaces: [file.s1.clone(), file.s2.clone(), file.s3.clone()],
        mul,
        rdiv,
        ldiv,
    };
    check_identities(&a, exec)?;
    Ok(a)
}

fn flatten(
    table: &'static str,
    rows: &[Vec<usize>],
    sizes: [usize; 3],
    [r, c, v]: [usize; 3],
) -> Result<Vec<usize>, AutomatonError> {
    let (nr, nc, nv) = (sizes[r - 1], sizes[c - 1], sizes[v - 1]);
    if nc == 0 && rows.is_empty() {
        return Ok(Vec::new());
    }
    if rows.len() != nr {
        return Err(AutomatonError::RowCount {
            table,
            rows: rows.len(),
            expected: nr,
        });
    }
    let mut out = Vec::with_capacity(nr * nc);
    for (row, entries) in rows.iter().enumerate() {
        if entries.len() != nc {
            return Err(AutomatonError::RowLength {
                table,
                row,
                len: entries.len(),
                expected: nc,
            });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= nv {
                return Err(AutomatonError::OutOfRange {
                    table,
                    row,
                    col,
                    value,
                    space: v,
                    size: nv,
                });
            }
        }
        out.extend_from_slice(entries);
    }
    Ok(out)
}

fn check_identities(a: &ReversibleAutomaton, exec: Execution) -> Result<(), AutomatonError> {
    let [n1, n2, n3] = [1, 2, 3].map(|i| a.size(i));
    let fail = |identity, first_name, i: usize, x: usize, second_name, j: usize, y: usize| AutomatonError::Identity {
        identity,
        first_name,
        first: a.space(i)[x].clone(),
        second_name,
        second: a.space(j)[y].clone(),
    };
    let over_s1_s2 = par::find_first(exec, n1, |x1| {
        (0..n2).find_map(|x2| {
            let x3 = a.mul(x1, x2);
            if a.ldiv(x1, x3) != x2 {
                Some(fail("ILA", "x1", 1, x1, "x2", 2, x2))
            } else if a.rdiv(x3, x2) != x1 {
                Some(fail("IRA", "x1", 1, x1, "x2", 2, x2))
            } else {
                None
            }
        })
    });
    if let Some(e) = over_s1_s2 {
        return Err(e);
    }
    let sla = par::find_first(exec, n1, |x1| {
        (0..n3)
            .find(|&x3| a.mul(x1, a.ldiv(x1, x3)) != x3)
            .map(|x3| fail("SLA", "x1", 1, x1, "x3", 3, x3))
    });
    if let Some(e) = sla {
        return Err(e);
    }
    let sra = par::find_first(exec, n3, |x3| {
        (0..n2)
            .find(|&x2| a.mul(a.rdiv(x3, x2), x2) != x3)
            .map(|x2| fail("SRA", "x3", 3, x3, "x2", 2, x2))
    });
    sra.map_or(Ok(()), Err)
}

/// `(Q, Q, Q)` with the three operations of `q`.
pub fn from_quasigroup(q: &FiniteQuasigroup) -> ReversibleAutomaton {
    let n = q.order();
    let table = |f: &dyn Fn(usize, usize) -> usize| (0..n * n).map(|i| f(i / n, i % n)).collect();
    let names = q.elements().to_vec();
    ReversibleAutomaton {
        spaces: [names.clone(), names.clone(), names],
        mul: table(&|x, y| q.mul(x, y)),
        rdiv: table(&|x, y| q.rdiv(x, y)),
        ldiv: table(&|x, y| q.ldiv(x, y)),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("map {index} has length {len}, expected {expected}")]
    Length { index: usize, len: usize, expected: usize },
    #[error("map {index} is not a bijection onto a set of size {size}")]
    NotBijective { index: usize, size: usize },
}

fn inverse_permutation(index: usize, f: &[usize], size: usize) -> Result<Vec<usize>, MapError> {
    if f.len() != size {
        return Err(MapError::Length {
            index,
            len: f.len(),
            expected: size,
        });
    }
    let mut inv = vec![usize::MAX; size];
    for (x, &y) in f.iter().enumerate() {
        if y >= size || inv[y] != usize::MAX {
            return Err(MapError::NotBijective { index, size });
        }
        inv[y] = x;
    }
    Ok(inv)
}

/// Relabels the state spaces along bijections `pᵢ : Sᵢ → Sᵢ'`, so that
/// `(p₁, p₂, p₃)` becomes an isomorphism onto the result.
pub fn transport(
    a: &ReversibleAutomaton,
    maps: &[Vec<usize>; 3],
    names: [Vec<String>; 3],
) -> Result<ReversibleAutomaton, MapError> {
    let mut inv: [Vec<usize>; 3] = Default::default();
    for i in 0..3 {
        if names[i].len() != a.size(i + 1) {
            return Err(MapError::NotBijective {
                index: i + 1,
                size: names[i].len(),
            });
        }
        inv[i] = inverse_permutation(i + 1, &maps[i], a.size(i + 1))?;
    }
    let [n1, n2, n3] = [1, 2, 3].map(|i| a.size(i));
    let [p1, p2, p3] = maps;
    let mul = (0..n1 * n2).map(|i| p3[a.mul(inv[0][i / n2], inv[1][i % n2])]).collect();
    let rdiv = (0..n3 * n2).map(|i| p1[a.rdiv(inv[2][i / n2], inv[1][i % n2])]).collect();
    let ldiv = (0..n1 * n3).map(|i| p2[a.ldiv(inv[0][i / n3], inv[2][i % n3])]).collect();
    Ok(ReversibleAutomaton {
        spaces: names,
        mul,
        rdiv,
        ldiv,
    })
}

/// Classification of a valid automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Purity {
    /// All three state spaces are nonempty and isomorphic. With `s1 ∈ S1` and
    /// `s2 ∈ S2` fixed, `x1 ↦ x1·s2` and `x2 ↦ s1·x2` are bijections onto
    /// `S3`, inverted by `x3 ↦ x3/s2` and `x3 ↦ s1\x3`.
    Pure {
        s1: usize,
        s2: usize,
        s1_to_s3: Vec<usize>,
        s3_to_s1: Vec<usize>,
        s2_to_s3: Vec<usize>,
        s3_to_s2: Vec<usize>,
    },
    /// Two or three state spaces are empty; `empty` lists them (1-based).
    Degenerate { empty: Vec<usize> },
}

impl Purity {
    pub fn is_pure(&self) -> bool {
        matches!(self, Purity::Pure { .. })
    }

    /// Bijections `lᵢ : S3 → Sᵢ` presenting the automaton over the carrier `S3`.
    pub fn carrier_maps(&self) -> Option<[Vec<usize>; 3]> {
        match self {
            Purity::Pure { s3_to_s1, s3_to_s2, .. } => {
                let id = (0..s3_to_s1.len()).collect();
                Some([s3_to_s1.clone(), s3_to_s2.clone(), id])
            }
            Purity::Degenerate { .. } => None,
        }
    }
}

pub fn purity_analysis(a: &ReversibleAutomaton) -> Purity {
    let empty: Vec<usize> = (1..=3).filter(|&i| a.size(i) == 0).collect();
    if empty.len() >= 2 {
        return Purity::Degenerate { empty };
    }
    // A valid automaton with at most one empty space has none: an empty S2
    // would need S1 or S3 empty for \ to exist, and so on.
    debug_assert!(empty.is_empty());
    let (s1, s2) = (0, 0);
    Purity::Pure {
        s1,
        s2,
        s1_to_s3: (0..a.size(1)).map(|x1| a.mul(x1, s2)).collect(),
        s3_to_s1: (0..a.size(3)).map(|x3| a.rdiv(x3, s2)).collect(),
        s2_to_s3: (0..a.size(2)).map(|x2| a.mul(s1, x2)).collect(),
        s3_to_s2: (0..a.size(3)).map(|x3| a.ldiv(s1, x3)).collect(),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("automaton is degenerate")]
    Degenerate,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// The quasigroup on `Q = 0..|S3|` with
/// `x·y = (x^{l₁}·y^{l₂})l₃⁻¹`, where `lᵢ : Q → Sᵢ` are bijections.
/// Elements are named after their images in `S1`.
pub fn extract_quasigroup(a: &ReversibleAutomaton, l: &[Vec<usize>; 3]) -> Result<FiniteQuasigroup, ExtractError> {
    let n = a.size(3);
    if [1, 2].iter().any(|&i| a.size(i) != n) || (n == 0 && l.iter().any(|f| !f.is_empty())) {
        return Err(ExtractError::Degenerate);
    }
    for (i, f) in l.iter().enumerate() {
        inverse_permutation(i + 1, f, n)?;
    }
    let l3_inv = inverse_permutation(3, &l[2], n)?;
    let names = (0..n).map(|x| a.space(1)[l[0][x]].clone()).collect();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| l3_inv[a.mul(l[0][x], l[1][y])]).collect())
        .collect();
    Ok(FiniteQuasigroup::validate(names, &rows).expect("a pure automaton yields a Latin square"))
}

/// The extracted divisions `x/y = (x^{l₃}/y^{l₂})l₁⁻¹` and
/// `x\y = (x^{l₁}\y^{l₃})l₂⁻¹`, for comparison with the Latin-square ones.
pub fn extracted_divisions(a: &ReversibleAutomaton, l: &[Vec<usize>; 3]) -> Result<(Vec<usize>, Vec<usize>), ExtractError> {
    let n = a.size(3);
    let l1_inv = inverse_permutation(1, &l[0], n)?;
    let l2_inv = inverse_permutation(2, &l[1], n)?;
    let rdiv = (0..n * n).map(|i| l1_inv[a.rdiv(l[2][i / n], l[1][i % n])]).collect();
    let ldiv = (0..n * n).map(|i| l2_inv[a.ldiv(l[0][i / n], l[2][i % n])]).collect();
    Ok((rdiv, ldiv))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomomorphismError {
    #[error("map f{index} has length {len}, expected {expected}")]
    Length { index: usize, len: usize, expected: usize },
    #[error("map f{index} sends {x} outside the target")]
    OutOfRange { index: usize, x: usize },
    #[error("{equation} fails at ({x}, {y})")]
    Equation { equation: &'static str, x: usize, y: usize },
}

/// Checks the three equations
/// `x1f1·x2f2 = (x1·x2)f3`, `x3f3/x2f2 = (x3/x2)f1`, `x1f1\x3f3 = (x1\x3)f2`.
pub fn check_automaton_homomorphism(
    source: &ReversibleAutomaton,
    target: &ReversibleAutomaton,
    f: &[Vec<usize>; 3],
) -> Result<(), HomomorphismError> {
    for (i, fi) in f.iter().enumerate() {
        if fi.len() != source.size(i + 1) {
            return Err(HomomorphismError::Length {
                index: i + 1,
                len: fi.len(),
                expected: source.size(i + 1),
            });
        }
        if let Some(x) = fi.iter().position(|&v| v >= target.size(i + 1)) {
            return Err(HomomorphismError::OutOfRange { index: i + 1, x });
        }
    }
    let [n1, n2, n3] = [1, 2, 3].map(|i| source.size(i));
    let [f1, f2, f3] = f;
    let bad = |equation, x, y| Err(HomomorphismError::Equation { equation, x, y });
    for x1 in 0..n1 {
        for x2 in 0..n2 {
            if target.mul(f1[x1], f2[x2]) != f3[source.mul(x1, x2)] {
                return bad("x1f1·x2f2 = (x1·x2)f3", x1, x2);
            }
        }
    }
    for x3 in 0..n3 {
        for x2 in 0..n2 {
            if target.rdiv(f3[x3], f2[x2]) != f1[source.rdiv(x3, x2)] {
                return bad("x3f3/x2f2 = (x3/x2)f1", x3, x2);
            }
        }
    }
    for x1 in 0..n1 {
        for x3 in 0..n3 {
            if target.ldiv(f1[x1], f3[x3]) != f2[source.ldiv(x1, x3)] {
                return bad("x1f1\\x3f3 = (x1\\x3)f2", x1, x3);
            }
        }
    }
    Ok(())
}

pub fn is_automaton_homomorphism(
    source: &ReversibleAutomaton,
    target: &ReversibleAutomaton,
    f: &[Vec<usize>; 3],
) -> bool {
    check_automaton_homomorphism(source, target, f).is_ok()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsotopyError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}

/// Given isomorphisms `p : Q^at → A` and `l : Q'^at → A`, the composites
/// `pᵢlᵢ⁻¹ : Q → Q'` form an isotopy; returns it after checking it.
pub fn isotopy_through(
    q: &FiniteQuasigroup,
    q_prime: &FiniteQuasigroup,
    p: &[Vec<usize>; 3],
    l: &[Vec<usize>; 3],
) -> Result<[Vec<usize>; 3], IsotopyError> {
    let mut f: [Vec<usize>; 3] = Default::default();
    for i in 0..3 {
        let l_inv = inverse_permutation(i + 1, &l[i], q_prime.order())?;
        inverse_permutation(i + 1, &p[i], q.order())?;
        f[i] = p[i].iter().map(|&s| l_inv[s]).collect();
    }
    check_isotopy(q, q_prime, &f)?;
    Ok(f)
}

/// A homotopy whose components are bijections.
pub fn check_isotopy(q: &FiniteQuasigroup, q_prime: &FiniteQuasigroup, f: &[Vec<usize>; 3]) -> Result<(), IsotopyError> {
    for (i, fi) in f.iter().enumerate() {
        inverse_permutation(i + 1, fi, q_prime.order())?;
    }
    check_homotopy(q, q_prime, f, Execution::default())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finiteqg::{counit, random_latin_square};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn identity(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn from_z2_validates() {
        let a = from_quasigroup(&FiniteQuasigroup::cyclic(2));
        let v = validate_automaton(&a.to_file()).unwrap();
        assert_eq!(v, a);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(a.mul(x, y), x ^ y);
                assert_eq!(a.rdiv(x, y), x ^ y);
                assert_eq!(a.ldiv(x, y), x ^ y);
            }
        }
    }

    #[test]
    fn degenerate_automata() {
        let s = vec!["p".to_string(), "q".to_string()];
        let empty = Vec::<String>::new();
        let cases = [
            (empty.clone(), empty.clone(), s.clone()),
            (s.clone(), empty.clone(), empty.clone()),
            (empty.clone(), s.clone(), empty.clone()),
            (empty.clone(), empty.clone(), empty.clone()),
        ];
        for (s1, s2, s3) in cases {
            let file = AutomatonFile {
                s1,
                s2,
                s3,
                mul: vec![],
                rdiv: vec![],
                ldiv: vec![],
            };
            let a = validate_automaton(&file).unwrap();
            assert!(!purity_analysis(&a).is_pure());
        }
        // Explicit empty rows are accepted too.
        let file = AutomatonFile {
            s1: vec![],
            s2: vec![],
            s3: s.clone(),
            mul: vec![],
            rdiv: vec![vec![], vec![]],
            ldiv: vec![],
        };
        let a = validate_automaton(&file).unwrap();
        assert_eq!(purity_analysis(&a), Purity::Degenerate { empty: vec![1, 2] });
    }

    #[test]
    fn one_empty_space_cannot_validate() {
        // S1 empty forces / : S3×S2 → ∅ on a nonempty domain.
        let file = AutomatonFile {
            s1: vec![],
            s2: vec!["a".into()],
            s3: vec!["b".into()],
            mul: vec![],
            rdiv: vec![vec![0]],
            ldiv: vec![],
        };
        assert!(matches!(
            validate_automaton(&file),
            Err(AutomatonError::OutOfRange { table: "rdiv", space: 1, .. })
        ));
    }

    #[test]
    fn non_cancellative_row_fails_ila() {
        let s = names("s", 2);
        let file = AutomatonFile {
            s1: s.clone(),
            s2: s.clone(),
            s3: s.clone(),
            mul: vec![vec![0, 0], vec![1, 0]],
            rdiv: vec![vec![0, 1], vec![1, 0]],
            ldiv: vec![vec![0, 1], vec![1, 0]],
        };
        let err = validate_automaton(&file).unwrap_err();
        assert_eq!(
            err,
            AutomatonError::Identity {
                identity: "ILA",
                first_name: "x1",
                first: "s0".into(),
                second_name: "x2",
                second: "s1".into(),
            }
        );
    }

    #[test]
    fn homotopies_become_homomorphisms() {
        let q = FiniteQuasigroup::cyclic(2);
        let qq = q.semisymmetrize();
        let (a, b) = (from_quasigroup(&qq), from_quasigroup(&q));
        assert!(is_automaton_homomorphism(&a, &b, &counit(&q)));
        let id = identity(2);
        assert!(is_automaton_homomorphism(&b, &b, &[id.clone(), id.clone(), id]));
        // x ↦ x + 1 on all three components of ℤ₃ is not a homotopy.
        let z3 = from_quasigroup(&FiniteQuasigroup::cyclic(3));
        let shift = vec![1, 2, 0];
        let err = check_automaton_homomorphism(&z3, &z3, &[shift.clone(), shift.clone(), shift]).unwrap_err();
        assert!(matches!(err, HomomorphismError::Equation { x: 0, y: 0, .. }), "{err}");
    }

    #[test]
    fn pure_cyclic_group() {
        let a = from_quasigroup(&FiniteQuasigroup::cyclic(3));
        match purity_analysis(&a) {
            Purity::Pure { s1_to_s3, s3_to_s1, s2_to_s3, s3_to_s2, .. } => {
                assert_eq!(s1_to_s3, identity(3));
                assert_eq!(s3_to_s1, identity(3));
                assert_eq!(s2_to_s3, identity(3));
                assert_eq!(s3_to_s2, identity(3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scrambled_z2() {
        let a = from_quasigroup(&FiniteQuasigroup::cyclic(2));
        let maps = [vec![1, 0], vec![0, 1], vec![0, 1]];
        let b = transport(&a, &maps, [names("u", 2), names("v", 2), names("w", 2)]).unwrap();
        let b = validate_automaton(&b.to_file()).unwrap();
        assert!(is_automaton_homomorphism(&a, &b, &maps));
        let purity = purity_analysis(&b);
        let Purity::Pure { s1_to_s3, s3_to_s1, .. } = &purity else { panic!() };
        assert_eq!(s1_to_s3, &vec![1, 0]);
        assert_eq!(s3_to_s1, &vec![1, 0]);
        let l = purity.carrier_maps().unwrap();
        let q = extract_quasigroup(&b, &l).unwrap();
        assert_eq!(q.order(), 2);
        isotopy_through(&FiniteQuasigroup::cyclic(2), &q, &maps, &l).unwrap();
    }

    #[test]
    fn extraction_with_identity_maps_recovers_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_latin_square(&mut rng, 4);
        let a = from_quasigroup(&q);
        let id = identity(4);
        let l = [id.clone(), id.clone(), id];
        assert_eq!(extract_quasigroup(&a, &l).unwrap(), q);
    }

    #[test]
    fn nontrivial_l2_gives_an_isotope() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let q = random_latin_square(&mut rng, 4);
        let a = from_quasigroup(&q);
        let id = identity(4);
        let l_id = [id.clone(), id.clone(), id.clone()];
        let l = [id.clone(), vec![2, 0, 3, 1], id];
        let q2 = extract_quasigroup(&a, &l).unwrap();
        assert_ne!(q2, q);
        let f = isotopy_through(&q, &q2, &l_id, &l).unwrap();
        assert_eq!(f[1], vec![1, 3, 0, 2]);
        // (l₁, l₂, l₃) is an isomorphism Q'^at → A.
        assert!(is_automaton_homomorphism(&from_quasigroup(&q2), &a, &l));
        let (rdiv, ldiv) = extracted_divisions(&a, &l).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(rdiv[x * 4 + y], q2.rdiv(x, y));
                assert_eq!(ldiv[x * 4 + y], q2.ldiv(x, y));
            }
        }
    }

    #[test]
    fn extraction_rejects_non_bijections() {
        let a = from_quasigroup(&FiniteQuasigroup::cyclic(3));
        let l = [vec![0, 0, 1], identity(3), identity(3)];
        assert_eq!(
            extract_quasigroup(&a, &l),
            Err(ExtractError::Map(MapError::NotBijective { index: 1, size: 3 }))
        );
    }

    #[test]
    fn purity_witnesses_are_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            let q = random_latin_square(&mut rng, n);
            let mut perms: [Vec<usize>; 3] = Default::default();
            for p in perms.iter_mut() {
                *p = identity(n);
                p.shuffle(&mut rng);
            }
            let a = transport(&from_quasigroup(&q), &perms, [names("a", n), names("b", n), names("c", n)]).unwrap();
            let Purity::Pure { s1_to_s3, s3_to_s1, s2_to_s3, s3_to_s2, .. } = purity_analysis(&a) else {
                panic!()
            };
            for x in 0..n {
                assert_eq!(s3_to_s1[s1_to_s3[x]], x);
                assert_eq!(s1_to_s3[s3_to_s1[x]], x);
                assert_eq!(s3_to_s2[s2_to_s3[x]], x);
                assert_eq!(s2_to_s3[s3_to_s2[x]], x);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let a = from_quasigroup(&FiniteQuasigroup::cyclic(3));
        let json = serde_json::to_string(&a.to_file()).unwrap();
        assert!(json.starts_with("{\"S1\":[\"0\",\"1\",\"2\"],\"S2\""));
        let file: AutomatonFile = serde_json::from_str(&json).unwrap();
        assert_eq!(validate_automaton(&file).unwrap(), a);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut file = from_quasigroup(&FiniteQuasigroup::cyclic(4)).to_file();
        file.ldiv[2][1] = 0;
        let seq = validate_automaton_with(&file, Execution::Sequential);
        let par = validate_automaton_with(&file, Execution::Parallel);
        assert!(seq.is_err());
        assert_eq!(seq, par);
    }
}
