//! Linear semisymmetrized algebras on `P = ℤₙᵏ`.
//!
//! Endomorphisms are `k×k` matrices mod `n` acting on row vectors, so `xM`
//! is a vector-matrix product and `MN` means "first `M`, then `N`". An
//! algebra is given by `ρ` and three idempotents `a₁, a₂, a₃`; `λ = ρ⁻¹` is
//! always derived. The operations are
//!
//! ```text
//! x·y = xρ + yλ        (x₁, x₂, x₃)α = x₁a₁ + x₂a₂ + x₃a₃
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finiteqg::{self, FiniteQuasigroup};
use crate::par::{self, Execution};
use crate::revaut::{self, AutomatonError, AutomatonFile, ExtractError, ReversibleAutomaton};

/// Largest `nᵏ` for which operations are materialized.
pub const MAX_ORDER: usize = 4096;

/// Sample count for identities checked by random substitution.
pub const SAMPLES: usize = 10_000;

/// Substitution count below which identities are checked exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinSSError {
    #[error("modulus must be at least 2, got {0}")]
    Modulus(i64),
    #[error("dimension must be at least 1")]
    Dimension,
    #[error("{name} must be {k}×{k}")]
    Shape { name: String, k: usize },
    #[error("rho is not invertible mod {modulus} (det = {det})")]
    NotInvertible { modulus: i64, det: String },
    #[error("{identity} fails: {detail}")]
    Condition { identity: String, detail: String },
    #[error("n^k = {order} exceeds the cap of {MAX_ORDER} elements")]
    TooLarge { order: u128 },
    #[error("block structure violated: {0}")]
    Blocks(String),
    #[error("automaton: {0}")]
    Automaton(#[from] AutomatonError),
    #[error("extraction: {0}")]
    Extract(#[from] ExtractError),
}

/// A square matrix over `ℤₙ` with entries in `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    modulus: i64,
    k: usize,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn new(modulus: i64, rows: &[Vec<i64>]) -> Self {
        let k = rows.len();
        let data = rows.iter().flat_map(|r| r.iter().map(|v| v.rem_euclid(modulus))).collect();
        ModMatrix { modulus, k, data }
    }

    pub fn identity(modulus: i64, k: usize) -> Self {
        Self::scalar(modulus, k, 1)
    }

    pub fn zero(modulus: i64, k: usize) -> Self {
        Self::scalar(modulus, k, 0)
    }

    pub fn scalar(modulus: i64, k: usize, c: i64) -> Self {
        let mut m = ModMatrix {
            modulus,
            k,
            data: vec![0; k * k],
        };
        for i in 0..k {
            m.data[i * k + i] = c.rem_euclid(modulus);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.k + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.k.max(1)).map(<[i64]>::to_vec).take(self.k).collect()
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        let k = self.k;
        let mut data = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                data[i * k + j] = (0..k).fold(0, |acc, l| (acc + self.get(i, l) * other.get(l, j)) % self.modulus);
            }
        }
        ModMatrix { data, ..*self }
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % self.modulus).collect();
        ModMatrix { data, ..*self }
    }

    pub fn neg(&self) -> ModMatrix {
        let data = self.data.iter().map(|a| (self.modulus - a) % self.modulus).collect();
        ModMatrix { data, ..*self }
    }

    pub fn pow(&self, e: u32) -> ModMatrix {
        (0..e).fold(Self::identity(self.modulus, self.k), |acc, _| acc.mul(self))
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.k)
            .map(|j| (0..self.k).fold(0, |acc, i| (acc + x[i] * self.get(i, j)) % self.modulus))
            .collect()
    }

    /// The inverse mod `n`, via the integer adjugate: `M⁻¹ = det⁻¹·adj(M)`.
    pub fn inverse(&self) -> Result<ModMatrix, LinSSError> {
        let k = self.k;
        let n = BigInt::from(self.modulus);
        let not_invertible = |det: &BigInt| LinSSError::NotInvertible {
            modulus: self.modulus,
            det: det.to_string(),
        };
        // Gauss–Jordan over ℚ on [M | I].
        let mut a: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                (0..2 * k)
                    .map(|j| {
                        let v = if j < k { self.get(i, j) } else { i64::from(j - k == i) };
                        BigRational::from_integer(v.into())
                    })
                    .collect()
            })
            .collect();
        let mut det = BigRational::from_integer(1.into());
        for c in 0..k {
            let Some(p) = (c..k).find(|&r| a[r][c] != BigRational::from_integer(0.into())) else {
                return Err(not_invertible(&BigInt::from(0)));
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for v in a[c].iter_mut() {
                *v /= &pivot;
            }
            for r in 0..k {
                if r != c && a[r][c] != BigRational::from_integer(0.into()) {
                    let f = a[r][c].clone();
                    let pivot_row = a[c].clone();
                    for (v, p) in a[r].iter_mut().zip(&pivot_row) {
                        *v -= &f * p;
                    }
                }
            }
        }
        let det_int = det.to_integer();
        let det_inv = det_int.modinv(&n).ok_or_else(|| not_invertible(&det_int))?;
        let mut data = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let adj = (&a[i][k + j] * &det).to_integer();
                let v: BigInt = (adj * &det_inv % &n + &n) % &n;
                data[i * k + j] = i64::try_from(v).expect("reduced mod n");
            }
        }
        Ok(ModMatrix { data, ..*self })
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// linss JSON: `{"modulus": n, "dim": k, "rho": [[..]], "idempotents": [[[..]],[[..]],[[..]]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinSSCandidate {
    pub modulus: i64,
    pub dim: usize,
    pub rho: Vec<Vec<i64>>,
    pub idempotents: [Vec<Vec<i64>>; 3],
}

impl LinSSCandidate {
    /// `k = 3`, coordinate projections, and `ρ` with 1×1 blocks
    /// `[x₁ x₂ x₃]ρ = [x₂θ₂ x₃θ₃ x₁θ₁]`.
    pub fn scalar_blocks(modulus: i64, theta: [i64; 3]) -> Self {
        let proj = |i: usize| (0..3).map(|r| (0..3).map(|c| i64::from(r == i && c == i)).collect()).collect();
        LinSSCandidate {
            modulus,
            dim: 3,
            rho: vec![vec![0, 0, theta[0]], vec![theta[1], 0, 0], vec![0, theta[2], 0]],
            idempotents: [proj(0), proj(1), proj(2)],
        }
    }

    fn matrices(&self) -> Result<(ModMatrix, [ModMatrix; 3]), LinSSError> {
        if self.modulus < 2 {
            return Err(LinSSError::Modulus(self.modulus));
        }
        if self.dim == 0 {
            return Err(LinSSError::Dimension);
        }
        let k = self.dim;
        let square = |name: &str, m: &[Vec<i64>]| {
            if m.len() == k && m.iter().all(|r| r.len() == k) {
                Ok(ModMatrix::new(self.modulus, m))
            } else {
                Err(LinSSError::Shape { name: name.into(), k })
            }
        };
        let rho = square("rho", &self.rho)?;
        let a = [
            square("a1", &self.idempotents[0])?,
            square("a2", &self.idempotents[1])?,
            square("a3", &self.idempotents[2])?,
        ];
        Ok((rho, a))
    }
}

/// A candidate satisfying every condition for `(P, ·, α)` to be a
/// semisymmetrized algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinSSAlgebra {
    pub rho: ModMatrix,
    pub lambda: ModMatrix,
    pub a: [ModMatrix; 3],
}

impl LinSSAlgebra {
    pub fn modulus(&self) -> i64 {
        self.rho.modulus
    }

    pub fn dim(&self) -> usize {
        self.rho.k
    }
}

/// Verifies, by exact matrix arithmetic: `a₁+a₂+a₃ = 1`, `aᵢaⱼ = δᵢⱼaᵢ`,
/// `ρλ = λρ = 1 = −ρ³`, and `ρa₁ = a₂ρ`, `ρa₂ = a₃ρ`, `ρa₃ = a₁ρ`.
pub fn check_conditions(candidate: &LinSSCandidate) -> Result<LinSSAlgebra, LinSSError> {
    let (rho, a) = candidate.matrices()?;
    let (n, k) = (candidate.modulus, candidate.dim);
    let lambda = rho.inverse()?;
    let one = ModMatrix::identity(n, k);
    let zero = ModMatrix::zero(n, k);
    let require = |identity: String, lhs: &ModMatrix, rhs: &ModMatrix| {
        if lhs == rhs {
            Ok(())
        } else {
            Err(LinSSError::Condition {
                identity,
                detail: format!("left side is {lhs}, right side is {rhs}"),
            })
        }
    };
    require("a1 + a2 + a3 = 1".into(), &a[0].add(&a[1]).add(&a[2]), &one)?;
    for i in 0..3 {
        for j in 0..3 {
            let expected = if i == j { &a[i] } else { &zero };
            require(format!("a{}·a{} = {}", i + 1, j + 1, if i == j { format!("a{}", i + 1) } else { "0".into() }), &a[i].mul(&a[j]), expected)?;
        }
    }
    require("rho·lambda = 1".into(), &rho.mul(&lambda), &one)?;
    require("lambda·rho = 1".into(), &lambda.mul(&rho), &one)?;
    require("rho³ = -1".into(), &rho.pow(3), &one.neg())?;
    for i in 0..3 {
        let j = (i + 1) % 3;
        require(format!("rho·a{} = a{}·rho", i + 1, j + 1), &rho.mul(&a[i]), &a[j].mul(&rho))?;
    }
    Ok(LinSSAlgebra { rho, lambda, a })
}

// ---------------------------------------------------------------------------
// Element-level operations

/// `P = ℤₙᵏ` with elements encoded as base-`n` integers (first coordinate
/// most significant) and the images of every element under `ρ`, `λ`, `aᵢ`.
#[derive(Debug, Clone)]
pub struct LinSSOps {
    modulus: i64,
    k: usize,
    vectors: Vec<Vec<i64>>,
    rho: Vec<usize>,
    lambda: Vec<usize>,
    a: [Vec<usize>; 3],
}

/// Materializes `x·y = xρ + yλ` and `α` for a valid algebra.
pub fn build_operations(alg: &LinSSAlgebra) -> Result<LinSSOps, LinSSError> {
    LinSSOps::new(&alg.rho, &alg.lambda, &alg.a)
}

impl LinSSOps {
    fn new(rho: &ModMatrix, lambda: &ModMatrix, a: &[ModMatrix; 3]) -> Result<Self, LinSSError> {
        let (n, k) = (rho.modulus, rho.k);
        let order = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if order > MAX_ORDER as u128 {
            return Err(LinSSError::TooLarge { order });
        }
        let order = order as usize;
        let vectors: Vec<Vec<i64>> = (0..order).map(|i| decode(n, k, i)).collect();
        let image = |m: &ModMatrix| vectors.iter().map(|v| encode(n, &m.apply(v))).collect::<Vec<_>>();
        Ok(LinSSOps {
            modulus: n,
            k,
            rho: image(rho),
            lambda: image(lambda),
            a: [image(&a[0]), image(&a[1]), image(&a[2])],
            vectors,
        })
    }

    pub fn order(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, x: usize) -> &[i64] {
        &self.vectors[x]
    }

    pub fn index(&self, v: &[i64]) -> usize {
        encode(self.modulus, v)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (u, v) = (&self.vectors[x], &self.vectors[y]);
        let n = self.modulus;
        (0..self.k).fold(0, |acc, i| acc * n as usize + ((u[i] + v[i]) % n) as usize)
    }

    pub fn neg(&self, x: usize) -> usize {
        let n = self.modulus;
        self.vectors[x].iter().fold(0, |acc, &c| acc * n as usize + ((n - c) % n) as usize)
    }

    pub fn rho(&self, x: usize) -> usize {
        self.rho[x]
    }

    pub fn lambda(&self, x: usize) -> usize {
        self.lambda[x]
    }

    /// `xaᵢ` for `i ∈ {1, 2, 3}`.
    pub fn project(&self, i: usize, x: usize) -> usize {
        self.a[i - 1][x]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.add(self.rho[x], self.lambda[y])
    }

    pub fn alpha(&self, x1: usize, x2: usize, x3: usize) -> usize {
        self.add(self.add(self.a[0][x1], self.a[1][x2]), self.a[2][x3])
    }

    pub fn name(&self, x: usize) -> String {
        let parts: Vec<String> = self.vectors[x].iter().map(i64::to_string).collect();
        format!("[{}]", parts.join(" "))
    }

    /// The `·` table as a validated quasigroup.
    pub fn to_quasigroup(&self) -> Result<FiniteQuasigroup, finiteqg::QuasigroupError> {
        let n = self.order();
        let names = (0..n).map(|x| self.name(x)).collect();
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| self.mul(x, y)).collect()).collect();
        FiniteQuasigroup::validate(names, &rows)
    }

    /// The standard generators `e_j` of `ℤₙᵏ`.
    fn generators(&self) -> Vec<usize> {
        (0..self.k)
            .map(|j| {
                let mut v = vec![0; self.k];
                v[j] = 1;
                self.index(&v)
            })
            .collect()
    }
}

fn decode(n: i64, k: usize, mut i: usize) -> Vec<i64> {
    let mut v = vec![0; k];
    for slot in v.iter_mut().rev() {
        *slot = (i % n as usize) as i64;
        i /= n as usize;
    }
    v
}

fn encode(n: i64, v: &[i64]) -> usize {
    v.iter().fold(0, |acc, &c| acc * n as usize + c.rem_euclid(n) as usize)
}

// ---------------------------------------------------------------------------
// Axiom verification

/// How an identity was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    /// Every substitution of one standard generator into one variable (exact
    /// for these multilinear identities), plus random substitutions.
    GeneratorsAndSamples,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub method: Method,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.axiom, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks the semisymmetrized-algebra axioms directly on the operations of a
/// candidate (which need not satisfy [`check_conditions`]).
pub fn verify_semisymmetrized_axioms(candidate: &LinSSCandidate) -> Result<AxiomReport, LinSSError> {
    verify_semisymmetrized_axioms_with(candidate, Execution::default())
}

pub fn verify_semisymmetrized_axioms_with(candidate: &LinSSCandidate, exec: Execution) -> Result<AxiomReport, LinSSError> {
    let (rho, a) = candidate.matrices()?;
    let lambda = rho.inverse()?;
    let ops = LinSSOps::new(&rho, &lambda, &a)?;
    let n = ops.order();
    let exhaustive = |vars: u32| (n as u64).checked_pow(vars).is_some_and(|c| c <= EXHAUSTIVE_LIMIT);
    let mut checks = Vec::new();
    let mut push = |axiom, method, witness: Option<String>| {
        checks.push(AxiomCheck {
            axiom,
            passed: witness.is_none(),
            method,
            witness,
        })
    };

    // (a) (P, ·) is a semisymmetric quasigroup.
    let latin = par::find_first(exec, n, |x| {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for y in 0..n {
            let (r, c) = (ops.mul(x, y), ops.mul(y, x));
            if row[r] {
                return Some(format!("row {} repeats {}", ops.name(x), ops.name(r)));
            }
            if col[c] {
                return Some(format!("column {} repeats {}", ops.name(x), ops.name(c)));
            }
            row[r] = true;
            col[c] = true;
        }
        None
    });
    push("quasigroup", Method::Exhaustive, latin);
    let semisym = par::find_first(exec, n, |x| {
        (0..n)
            .find(|&y| ops.mul(x, ops.mul(y, x)) != y)
            .map(|y| format!("x = {}, y = {}: x·(y·x) ≠ y", ops.name(x), ops.name(y)))
    });
    push("semisymmetry", Method::Exhaustive, semisym);
    // ρ = R(0) = L(0)⁻¹: x·0 = xρ and 0·(xρ) = x.
    let zero = 0;
    let r0 = (0..n).find_map(|x| {
        (ops.mul(x, zero) != ops.rho(x)).then(|| format!("R(0) ≠ rho at {}", ops.name(x)))
            .or_else(|| (ops.mul(zero, ops.rho(x)) != x).then(|| format!("L(0)⁻¹ ≠ rho at {}", ops.name(x))))
    });
    push("rho = R(0) = L(0)^-1", Method::Exhaustive, r0);

    // (b) Diagonal algebra.
    let idem = (0..n).find(|&x| ops.alpha(x, x, x) != x).map(|x| format!("x = {}", ops.name(x)));
    push("idempotence", Method::Exhaustive, idem);
    let diagonal = |x: &[usize; 9]| {
        let rows = [0, 1, 2].map(|i| ops.alpha(x[3 * i], x[3 * i + 1], x[3 * i + 2]));
        ops.alpha(rows[0], rows[1], rows[2]) == ops.alpha(x[0], x[4], x[8])
    };
    let (method, witness) = check_multilinear(&ops, exec, exhaustive(9), diagonal);
    push("diagonal identity", method, witness);
    let orthogonal = (0..n).find_map(|x| {
        (0..3).find_map(|i| {
            (0..3).find_map(|j| {
                let xij = ops.project(j + 1, ops.project(i + 1, x));
                let expected = if i == j { ops.project(i + 1, x) } else { 0 };
                (xij != expected).then(|| format!("x = {}: x·a{}·a{} wrong", ops.name(x), i + 1, j + 1))
            })
        })
    });
    push("orthogonal idempotents", Method::Exhaustive, orthogonal);

    // (c) (x₁y₁, x₂y₂, x₃y₃)α = (x₃, x₁, x₂)α · (y₂, y₃, y₁)α
    let compatibility = |v: &[usize; 6]| {
        let [x1, x2, x3, y1, y2, y3] = *v;
        let lhs = ops.alpha(ops.mul(x1, y1), ops.mul(x2, y2), ops.mul(x3, y3));
        let rhs = ops.mul(ops.alpha(x3, x1, x2), ops.alpha(y2, y3, y1));
        lhs == rhs
    };
    let (method, witness) = check_multilinear(&ops, exec, exhaustive(6), compatibility);
    push("compatibility", method, witness);

    Ok(AxiomReport { checks })
}

/// Checks an identity in `V` variables over `P`, either over all of `Pⱽ` or
/// on generator placements plus [`SAMPLES`] seeded random substitutions.
fn check_multilinear<const V: usize>(
    ops: &LinSSOps,
    exec: Execution,
    exhaustive: bool,
    holds: impl Fn(&[usize; V]) -> bool + Sync + Send,
) -> (Method, Option<String>) {
    let n = ops.order();
    let show = |v: &[usize; V]| v.iter().map(|&x| ops.name(x)).collect::<Vec<_>>().join(", ");
    if exhaustive {
        let total = n.pow(V as u32);
        let chunk = n.max(1);
        let witness = par::find_first(exec, total.div_ceil(chunk), |c| {
            (c * chunk..((c + 1) * chunk).min(total)).find_map(|mut i| {
                let mut v = [0; V];
                for slot in v.iter_mut().rev() {
                    *slot = i % n;
                    i /= n;
                }
                (!holds(&v)).then(|| show(&v))
            })
        });
        return (Method::Exhaustive, witness);
    }
    let mut cases = Vec::new();
    for var in 0..V {
        for &g in &ops.generators() {
            let mut v = [0; V];
            v[var] = g;
            cases.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    cases.extend((0..SAMPLES).map(|_| std::array::from_fn(|_| rng.gen_range(0..n))));
    let witness = par::find_first_in(exec, &cases, |v| (!holds(v)).then(|| show(v)));
    (Method::GeneratorsAndSamples, witness)
}

// ---------------------------------------------------------------------------
// θ-decomposition

/// The biproduct `P = S₁ ⊕ S₂ ⊕ S₃` with `Sᵢ = Im aᵢ`, and the isomorphisms
/// `θ₁: S₁ → S₃`, `θ₂: S₂ → S₁`, `θ₃: S₃ → S₂` read off `ρ`.
#[derive(Debug, Clone)]
pub struct ThetaDecomposition {
    pub ops: LinSSOps,
    /// Elements of each `Sᵢ`, as indices into `P`, in increasing order.
    pub spaces: [Vec<usize>; 3],
    /// `θᵢ` as index maps between the lists in `spaces`.
    pub theta: [Vec<usize>; 3],
    pub theta_inv: [Vec<usize>; 3],
    /// Echelon bases of the `Sᵢ` and the matrices of the `θᵢ` in them;
    /// available when `n` is prime.
    pub bases: Option<[Vec<Vec<i64>>; 3]>,
    pub blocks: Option<[Vec<Vec<i64>>; 3]>,
}

/// Source and target spaces of `θᵢ` (0-based).
const THETA_ENDS: [(usize, usize); 3] = [(0, 2), (1, 0), (2, 1)];

impl ThetaDecomposition {
    /// Position of a `P`-element within `Sᵢ` (`i` 0-based).
    pub fn position(&self, i: usize, x: usize) -> Option<usize> {
        self.spaces[i].binary_search(&x).ok()
    }

    /// The scalars `(θ₁, θ₂, θ₃)` when every block is 1×1, in `(-n/2, n/2]`.
    pub fn block_scalars(&self) -> Option<[i64; 3]> {
        let blocks = self.blocks.as_ref()?;
        let n = self.ops.modulus;
        let mut out = [0; 3];
        for (slot, b) in out.iter_mut().zip(blocks) {
            if b.len() != 1 || b[0].len() != 1 {
                return None;
            }
            let v = b[0][0];
            *slot = if v > n / 2 { v - n } else { v };
        }
        Some(out)
    }

    /// The block form of `ρ`, with `θ`s off the diagonal when bases exist.
    pub fn block_form(&self) -> Option<String> {
        let b = self.blocks.as_ref()?;
        let show = |m: &Vec<Vec<i64>>| format!("{m:?}");
        Some(format!("[[0, 0, {}], [{}, 0, 0], [0, {}, 0]]", show(&b[0]), show(&b[1]), show(&b[2])))
    }

    fn compose(&self, maps: &[usize]) -> Vec<usize> {
        // maps lists θ indices applied left to right, starting at THETA_ENDS[maps[0]].0.
        let start = THETA_ENDS[maps[0]].0;
        (0..self.spaces[start].len())
            .map(|x| maps.iter().fold(x, |acc, &m| self.theta[m][acc]))
            .collect()
    }

    /// Whether `θ₁θ₃θ₂ = −1` on `S₁`, `θ₂θ₁θ₃ = −1` on `S₂`, `θ₃θ₂θ₁ = −1` on `S₃`.
    pub fn cyclic_products(&self) -> [bool; 3] {
        let orders = [[0, 2, 1], [1, 0, 2], [2, 1, 0]];
        orders.map(|o| {
            let space = THETA_ENDS[o[0]].0;
            let product = self.compose(&o);
            product.iter().enumerate().all(|(x, &y)| {
                self.spaces[space][y] == self.ops.neg(self.spaces[space][x])
            })
        })
    }
}

pub fn extract_thetas(alg: &LinSSAlgebra) -> Result<ThetaDecomposition, LinSSError> {
    let ops = build_operations(alg)?;
    let n = ops.order();
    let spaces: [Vec<usize>; 3] = [1, 2, 3].map(|i| {
        let mut s: Vec<usize> = (0..n).map(|x| ops.project(i, x)).collect();
        s.sort_unstable();
        s.dedup();
        s
    });
    let position = |i: usize, x: usize| spaces[i].binary_search(&x).ok();
    let mut theta: [Vec<usize>; 3] = Default::default();
    let mut theta_inv: [Vec<usize>; 3] = Default::default();
    for (t, &(from, to)) in THETA_ENDS.iter().enumerate() {
        let mut map = Vec::with_capacity(spaces[from].len());
        for &x in &spaces[from] {
            let y = ops.rho(x);
            let p = position(to, y).ok_or_else(|| {
                LinSSError::Blocks(format!("{}·rho = {} is not in S{}", ops.name(x), ops.name(y), to + 1))
            })?;
            map.push(p);
        }
        let mut inv = vec![usize::MAX; spaces[to].len()];
        for (x, &y) in map.iter().enumerate() {
            inv[y] = x;
        }
        if inv.contains(&usize::MAX) || map.len() != spaces[to].len() {
            return Err(LinSSError::Blocks(format!("theta{} is not a bijection", t + 1)));
        }
        theta[t] = map;
        theta_inv[t] = inv;
    }
    let (bases, blocks) = match is_prime(alg.modulus()) {
        true => {
            let bases = alg.a.clone().map(|a| echelon_basis(&a));
            let blocks = std::array::from_fn(|t| {
                let (from, to) = THETA_ENDS[t];
                theta_block(&alg.rho, &bases[from], &bases[to])
            });
            (Some(bases), Some(blocks))
        }
        false => (None, None),
    };
    let dec = ThetaDecomposition {
        ops,
        spaces,
        theta,
        theta_inv,
        bases,
        blocks,
    };
    if dec.cyclic_products() != [true; 3] {
        return Err(LinSSError::Blocks("a cyclic theta product is not -1".into()));
    }
    Ok(dec)
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Reduced row-echelon basis of the row space of `m` over the field `ℤₚ`.
fn echelon_basis(m: &ModMatrix) -> Vec<Vec<i64>> {
    let p = m.modulus;
    let mut rows = m.rows();
    let k = m.k;
    let mut r = 0;
    for c in 0..k {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = i64::try_from(BigInt::from(rows[r][c]).modinv(&BigInt::from(p)).expect("field")).expect("small");
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot_row = rows[r].clone();
                for (v, q) in rows[i].iter_mut().zip(&pivot_row) {
                    *v = (*v - f * q).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Coordinates of `bρ` for each `b` in `from`, in the echelon basis `to`
/// (read off at the pivot columns).
fn theta_block(rho: &ModMatrix, from: &[Vec<i64>], to: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let pivots: Vec<usize> = to
        .iter()
        .map(|b| b.iter().position(|&v| v != 0).expect("basis vectors are nonzero"))
        .collect();
    from.iter()
        .map(|b| {
            let image = rho.apply(b);
            pivots.iter().map(|&c| image[c]).collect()
        })
        .collect()
}

/// The automaton on `(S₁, S₂, S₃)` with
/// `y₃/x₂ = y₃θ₁⁻¹ + x₂θ₂`, `y₁\x₃ = y₁θ₂⁻¹ + x₃θ₃`, `x₁·y₂ = x₁θ₁ + y₂θ₃⁻¹`,
/// validated.
pub fn to_automaton(dec: &ThetaDecomposition) -> Result<ReversibleAutomaton, LinSSError> {
    Ok(revaut::validate_automaton(&automaton_file(dec))?)
}

pub fn automaton_file(dec: &ThetaDecomposition) -> AutomatonFile {
    let ops = &dec.ops;
    let el = |i: usize, x: usize| dec.spaces[i][x];
    let sum_in = |i: usize, u: usize, v: usize| dec.position(i, ops.add(u, v)).expect("Sᵢ is a subgroup");
    let (t, ti) = (&dec.theta, &dec.theta_inv);
    let names = |i: usize| dec.spaces[i].iter().map(|&x| ops.name(x)).collect::<Vec<_>>();
    let [n1, n2, n3] = [0, 1, 2].map(|i| dec.spaces[i].len());
    // θ₁⁻¹: S₃ → S₁ is theta_inv[0], θ₂: S₂ → S₁ is theta[1], and so on.
    let rdiv = (0..n3)
        .map(|y3| (0..n2).map(|x2| sum_in(0, el(0, ti[0][y3]), el(0, t[1][x2]))).collect())
        .collect();
    let ldiv = (0..n1)
        .map(|y1| (0..n3).map(|x3| sum_in(1, el(1, ti[1][y1]), el(1, t[2][x3]))).collect())
        .collect();
    let mul = (0..n1)
        .map(|x1| (0..n2).map(|y2| sum_in(2, el(2, t[0][x1]), el(2, ti[2][y2]))).collect())
        .collect();
    AutomatonFile {
        s1: names(0),
        s2: names(1),
        s3: names(2),
        mul,
        rdiv,
        ldiv,
    }
}

/// Outcome of identifying `(P, ·)` with the semisymmetrization of the
/// quasigroup extracted from the automaton on `(S₁, S₂, S₃)`.
#[derive(Debug, Clone, Serialize)]
pub struct IdentificationReport {
    /// `|A| = |S₁|`.
    pub order: usize,
    /// `l₃ = l₂θ₃⁻¹` agrees with `−θ₁`.
    pub l3_is_minus_theta1: bool,
    /// The extracted multiplication is `x·y = −x + y` on `A`.
    pub opposed_subtraction: bool,
    /// `φ: P → A³` is a bijective homomorphism onto the semisymmetrization.
    pub isomorphism: bool,
    pub witness: Option<String>,
    #[serde(skip)]
    pub quasigroup: FiniteQuasigroup,
    /// `φ` as an index map `P → A³` (triples encoded as `x₁|A|² + x₂|A| + x₃`).
    #[serde(skip)]
    pub phi: Vec<usize>,
}

impl IdentificationReport {
    pub fn all_pass(&self) -> bool {
        self.l3_is_minus_theta1 && self.opposed_subtraction && self.isomorphism
    }
}

/// With `A = S₁`, `l₁ = 1`, `l₂ = θ₂⁻¹`, `l₃ = l₂θ₃⁻¹`, extracts the quasigroup
/// from the automaton and checks that `p ↦ (pa₁l₁⁻¹, pa₂l₂⁻¹, pa₃l₃⁻¹)` is an
/// isomorphism of `(P, ·)` onto its semisymmetrization.
pub fn identify_semisymmetrization(alg: &LinSSAlgebra) -> Result<IdentificationReport, LinSSError> {
    identify_semisymmetrization_with(alg, Execution::default())
}

pub fn identify_semisymmetrization_with(alg: &LinSSAlgebra, exec: Execution) -> Result<IdentificationReport, LinSSError> {
    let dec = extract_thetas(alg)?;
    let automaton = to_automaton(&dec)?;
    let ops = &dec.ops;
    let m = dec.spaces[0].len();
    let l1: Vec<usize> = (0..m).collect();
    let l2: Vec<usize> = dec.theta_inv[1].clone();
    let l3: Vec<usize> = l2.iter().map(|&x| dec.theta_inv[2][x]).collect();
    let minus_theta1: Vec<usize> = dec.theta[0]
        .iter()
        .map(|&y| dec.position(2, ops.neg(dec.spaces[2][y])).expect("S₃ is a subgroup"))
        .collect();
    let l = [l1, l2, l3];
    let q = revaut::extract_quasigroup(&automaton, &l)?;

    let a = |x: usize| dec.spaces[0][x];
    let mut witness = None;
    let opposed_subtraction = (0..m).all(|x| {
        (0..m).all(|y| {
            let expected = dec.position(0, ops.add(ops.neg(a(x)), a(y))).expect("S₁ is a subgroup");
            let ok = q.mul(x, y) == expected;
            if !ok && witness.is_none() {
                witness = Some(format!("x·y ≠ -x+y at x = {}, y = {}", ops.name(a(x)), ops.name(a(y))));
            }
            ok
        })
    });

    let inverses: Vec<Vec<usize>> = l
        .iter()
        .map(|f| {
            let mut inv = vec![0; f.len()];
            for (x, &y) in f.iter().enumerate() {
                inv[y] = x;
            }
            inv
        })
        .collect();
    let n = ops.order();
    let phi: Vec<usize> = (0..n)
        .map(|p| {
            let c = [0, 1, 2].map(|i| inverses[i][dec.position(i, ops.project(i + 1, p)).expect("image of aᵢ")]);
            finiteqg::encode(m, c)
        })
        .collect();
    let mut hit = vec![false; m * m * m];
    let bijective = phi.len() == hit.len()
        && phi.iter().all(|&t| !std::mem::replace(&mut hit[t], true));
    // (x₁,x₂,x₃)·(y₁,y₂,y₃) = (y₃/x₂, y₁\x₃, x₁·y₂) in the semisymmetrization.
    let ss = |x: usize, y: usize| {
        let [x1, x2, x3] = finiteqg::triple(m, x);
        let [y1, y2, y3] = finiteqg::triple(m, y);
        finiteqg::encode(m, [q.rdiv(y3, x2), q.ldiv(y1, x3), q.mul(x1, y2)])
    };
    let hom_failure = par::find_first(exec, n, |x| {
        (0..n)
            .find(|&y| phi[ops.mul(x, y)] != ss(phi[x], phi[y]))
            .map(|y| format!("phi(x·y) ≠ phi(x)·phi(y) at x = {}, y = {}", ops.name(x), ops.name(y)))
    });
    if witness.is_none() {
        witness = hom_failure.clone().or_else(|| (!bijective).then(|| "phi is not bijective".to_string()));
    }
    Ok(IdentificationReport {
        order: m,
        l3_is_minus_theta1: l[2] == minus_theta1,
        opposed_subtraction,
        isomorphism: bijective && hom_failure.is_none(),
        witness,
        quasigroup: q,
        phi,
    })
}
