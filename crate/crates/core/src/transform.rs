//! Finite transformations of `n = {0..n-1}`, generator words and the hat map.
//!
//! A transformation `τ` acts on tuples by `τ|y = (k ↦ y(τ(k)))`, and the
//! composite `τ|λ` is `k ↦ λ(τ(k))`, so `(τ|λ)|y = τ|(λ|y)`. The generator
//! `[i|j]` sends `i` to `j` (it overwrites coordinate `i` with `y_j`); `[i,j]`
//! exchanges `i` and `j`.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteTransformation(Vec<usize>);

impl FiniteTransformation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if let Some(&bad) = map.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { index: bad, dim: n });
        }
        Ok(FiniteTransformation(map))
    }

    pub fn identity(n: usize) -> Self {
        FiniteTransformation((0..n).collect())
    }

    /// `[i|j]`.
    pub fn sub(n: usize, i: usize, j: usize) -> Self {
        let mut m: Vec<usize> = (0..n).collect();
        m[i] = j;
        FiniteTransformation(m)
    }

    /// `[i,j]`.
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut m: Vec<usize> = (0..n).collect();
        m.swap(i, j);
        FiniteTransformation(m)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| k == v)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.n()];
        self.0.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_permutation() {
            return None;
        }
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v] = k;
        }
        Some(FiniteTransformation(inv))
    }

    /// `self|other`: first `self`, then `other` on the result.
    pub fn then(&self, other: &FiniteTransformation) -> Self {
        debug_assert_eq!(self.n(), other.n());
        FiniteTransformation(self.0.iter().map(|&v| other.0[v]).collect())
    }

    /// `τ|y`.
    pub fn act<T: Clone>(&self, y: &[T]) -> Vec<T> {
        self.0.iter().map(|&v| y[v].clone()).collect()
    }

    /// Every map `n → n`, in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = FiniteTransformation> {
        let total = n.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut m = vec![0; n];
            for k in (0..n).rev() {
                m[k] = code % n;
                code /= n;
            }
            FiniteTransformation(m)
        })
    }
}

impl fmt::Display for FiniteTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{k}↦{v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `[i|j]`
    Sub(usize, usize),
    /// `[i,j]`
    Swap(usize, usize),
}

impl Generator {
    pub fn transformation(self, n: usize) -> FiniteTransformation {
        match self {
            Generator::Sub(i, j) => FiniteTransformation::sub(n, i, j),
            Generator::Swap(i, j) => FiniteTransformation::swap(n, i, j),
        }
    }

    pub fn indices(self) -> (usize, usize) {
        match self {
            Generator::Sub(i, j) | Generator::Swap(i, j) => (i, j),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sub(i, j) => write!(f, "[{i}|{j}]"),
            Generator::Swap(i, j) => write!(f, "[{i},{j}]"),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (tag, (i, j)) = match self {
            Generator::Sub(..) => ("sub", self.indices()),
            Generator::Swap(..) => ("swap", self.indices()),
        };
        (tag, i, j).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (tag, i, j) = <(String, usize, usize)>::deserialize(d)?;
        match tag.as_str() {
            "sub" => Ok(Generator::Sub(i, j)),
            "swap" => Ok(Generator::Swap(i, j)),
            other => Err(D::Error::custom(format!("unknown generator tag {other:?}"))),
        }
    }
}

/// A word over the generators `[i|j]` and `[i,j]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubstWord(pub Vec<Generator>);

impl SubstWord {
    pub fn empty() -> Self {
        SubstWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Generator> {
        self.0.iter()
    }

    pub fn concat(&self, other: &SubstWord) -> SubstWord {
        SubstWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn check(&self, n: usize) -> Result<()> {
        for g in &self.0 {
            let (i, j) = g.indices();
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, dim: n });
                }
            }
        }
        Ok(())
    }

    pub fn uses_swap(&self) -> bool {
        self.0.iter().any(|g| matches!(g, Generator::Swap(..)))
    }
}

impl fmt::Display for SubstWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

/// `ĝ1|ĝ2|…|ĝm`; the empty word gives the identity.
pub fn hat(word: &SubstWord, n: usize) -> FiniteTransformation {
    word.iter().fold(FiniteTransformation::identity(n), |acc, g| {
        acc.then(&g.transformation(n))
    })
}

/// A word whose hat is `tau`. Permutations use transpositions only, peeling
/// off the smallest moved point each step; other maps use `[i|j]` only.
pub fn decompose(tau: &FiniteTransformation) -> SubstWord {
    if tau.is_permutation() {
        let mut pi = tau.clone();
        let mut word = Vec::new();
        while let Some(k) = (0..pi.n()).find(|&k| pi.get(k) != k) {
            let m = (0..pi.n()).find(|&m| pi.get(m) == k).expect("permutation");
            word.push(Generator::Swap(k.min(m), k.max(m)));
            let g = FiniteTransformation::swap(pi.n(), k, m);
            pi = g.then(&pi);
        }
        SubstWord(word)
    } else {
        substitution_word(tau).expect("non-injective maps are reachable by substitutions")
    }
}

/// A word of `[i|j]` generators whose hat is `rho`, or `None` when `rho` is a
/// non-identity permutation (substitutions alone cannot reach it).
///
/// Works backwards as register copying: starting from the identity tuple,
/// each step `u_i := u_j` is the action of `[i|j]`, and the word lists the
/// steps in reverse order of application.
pub fn substitution_word(rho: &FiniteTransformation) -> Option<SubstWord> {
    if rho.is_identity() {
        return Some(SubstWord::empty());
    }
    if rho.is_permutation() {
        return None;
    }
    let n = rho.n();
    let target = rho.as_slice();
    let mut u: Vec<usize> = (0..n).collect();
    let mut applied = Vec::new();
    let needed = |v: usize| target.contains(&v);
    let count = |u: &[usize], v: usize| u.iter().filter(|&&w| w == v).count();
    let limit = 4 * n * n + 4;
    while u != target {
        if applied.len() > limit {
            return None;
        }
        let safe = (0..n).find(|&i| {
            u[i] != target[i] && (!needed(u[i]) || count(&u, u[i]) > 1)
        });
        let i = match safe {
            Some(i) => i,
            None => {
                // Every unsatisfied slot holds the only copy of a needed value:
                // park one of them in a satisfied slot whose value is duplicated.
                let i = (0..n).find(|&i| u[i] != target[i])?;
                let p = (0..n).find(|&p| u[p] == target[p] && count(&u, u[p]) > 1)?;
                u[p] = u[i];
                applied.push(Generator::Sub(p, i));
                i
            }
        };
        let j = u.iter().position(|&v| v == target[i])?;
        u[i] = u[j];
        applied.push(Generator::Sub(i, j));
    }
    applied.reverse();
    let word = SubstWord(applied);
    (hat(&word, n) == *rho).then_some(word)
}
