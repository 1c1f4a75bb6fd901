//! The symmetric group on three letters, written as words in the
//! transpositions σ = (1 2) and τ = (2 3).
//!
//! Permutations act on the right and products compose left to right:
//! `i(gh) = (ig)h`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One of the two Coxeter generators of S₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum S3Generator {
    /// σ = (1 2)
    Sigma,
    /// τ = (2 3)
    Tau,
}

/// A permutation of `{1, 2, 3}`, stored as its image list (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct S3Element {
    images: [u8; 3],
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid S3 word {word:?}: expected a word over 's' and 't', or '1'")]
pub struct S3ParseError {
    pub word: String,
}

impl S3Element {
    pub const IDENTITY: S3Element = S3Element { images: [0, 1, 2] };
    pub const SIGMA: S3Element = S3Element { images: [1, 0, 2] };
    pub const TAU: S3Element = S3Element { images: [0, 2, 1] };

    /// All six elements in Cayley-diagram order: 1, σ, τ, στ, τσ, στσ.
    pub fn all() -> [S3Element; 6] {
        let (s, t) = (Self::SIGMA, Self::TAU);
        [Self::IDENTITY, s, t, s * t, t * s, s * t * s]
    }

    pub fn generator(g: S3Generator) -> S3Element {
        match g {
            S3Generator::Sigma => Self::SIGMA,
            S3Generator::Tau => Self::TAU,
        }
    }

    pub fn from_generators(word: &[S3Generator]) -> S3Element {
        word.iter()
            .fold(Self::IDENTITY, |acc, &g| acc * Self::generator(g))
    }

    /// Image of the point `i` (1-based).
    pub fn apply(self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// Image of the point `i` (0-based).
    pub fn apply0(self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn inverse(self) -> S3Element {
        let mut images = [0u8; 3];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        S3Element { images }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    /// The shortest word in σ, τ for this element, choosing the word listed by
    /// [`S3Element::all`] (so στσ rather than τστ).
    pub fn word(self) -> Vec<S3Generator> {
        use S3Generator::{Sigma as S, Tau as T};
        let all = Self::all();
        let words: [&[S3Generator]; 6] = [&[], &[S], &[T], &[S, T], &[T, S], &[S, T, S]];
        let pos = all.iter().position(|&e| e == self).expect("S3 has six elements");
        words[pos].to_vec()
    }

    /// Index of this element in [`S3Element::all`].
    pub fn index(self) -> usize {
        Self::all().iter().position(|&e| e == self).expect("S3 has six elements")
    }
}

impl std::ops::Mul for S3Element {
    type Output = S3Element;

    fn mul(self, rhs: S3Element) -> S3Element {
        let mut images = [0u8; 3];
        for (i, slot) in images.iter_mut().enumerate() {
            *slot = rhs.images[self.images[i] as usize];
        }
        S3Element { images }
    }
}

impl fmt::Display for S3Element {
    /// ASCII word: `1`, `s`, `t`, `st`, `ts`, `sts`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.word();
        if word.is_empty() {
            return f.write_str("1");
        }
        for g in word {
            f.write_str(match g {
                S3Generator::Sigma => "s",
                S3Generator::Tau => "t",
            })?;
        }
        Ok(())
    }
}

impl FromStr for S3Element {
    type Err = S3ParseError;

    /// Parses any word over `s`/`σ` and `t`/`τ`; `1`, `e` and the empty string
    /// denote the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if matches!(trimmed, "" | "1" | "e") {
            return Ok(Self::IDENTITY);
        }
        let mut acc = Self::IDENTITY;
        for c in trimmed.chars() {
            acc = acc
                * match c {
                    's' | 'σ' => Self::SIGMA,
                    't' | 'τ' => Self::TAU,
                    '*' | '.' | ' ' => continue,
                    _ => {
                        return Err(S3ParseError {
                            word: s.to_string(),
                        })
                    }
                };
        }
        Ok(acc)
    }
}
