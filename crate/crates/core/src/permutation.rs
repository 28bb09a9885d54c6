//! Permutations with finite support, Lehmer codes and reduced words.
//!
//! A permutation is stored in one-line notation with trailing fixed points
//! removed, so `[2, 1]` and `[2, 1, 3, 4]` are the same value.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Permutation {
    one_line: Vec<u32>,
}

/// Lehmer code `c_i = #{j > i : s_j < s_i}`, trailing zeros removed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", from = "Vec<u32>")]
pub struct Code {
    entries: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermClass {
    /// Weakly decreasing code (includes the identity).
    Dominant,
    /// Exactly one descent, at position `r`.
    Grassmannian(usize),
    General,
}

impl Code {
    pub fn new(mut entries: Vec<u32>) -> Code {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Code { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.entries.clone();
        if v.len() < n {
            v.resize(n, 0);
        }
        v
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|&c| c as u64).sum()
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }
}

impl From<Vec<u32>> for Code {
    fn from(v: Vec<u32>) -> Code {
        Code::new(v)
    }
}

impl From<Code> for Vec<u32> {
    fn from(c: Code) -> Vec<u32> {
        c.entries
    }
}

impl Permutation {
    /// Validates that `one_line` is a bijection of `{1..n}`.
    pub fn new(one_line: Vec<u32>) -> Result<Permutation> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &v in &one_line {
            let idx = v as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(Error::NotAPermutation(one_line));
            }
            seen[idx - 1] = true;
        }
        let mut p = Permutation { one_line };
        p.trim();
        Ok(p)
    }

    pub fn identity() -> Permutation {
        Permutation::default()
    }

    /// The maximal permutation `[n, ..., 1]` of the symmetric group on `n` letters.
    pub fn longest(n: usize) -> Permutation {
        Permutation::new((1..=n as u32).rev().collect()).expect("valid")
    }

    fn trim(&mut self) {
        while let Some(&last) = self.one_line.last() {
            if last as usize == self.one_line.len() {
                self.one_line.pop();
            } else {
                break;
            }
        }
    }

    /// Size of the trimmed support; 0 for the identity.
    pub fn support(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[u32] {
        &self.one_line
    }

    /// One-line notation padded with fixed points up to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.one_line.clone();
        for k in v.len()..n {
            v.push(k as u32 + 1);
        }
        v
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.is_empty()
    }

    /// Image of `i` (1-based); fixed outside the support.
    pub fn apply(&self, i: u32) -> u32 {
        self.one_line.get(i as usize - 1).copied().unwrap_or(i)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.one_line.len()];
        for (pos, &v) in self.one_line.iter().enumerate() {
            inv[v as usize - 1] = pos as u32 + 1;
        }
        Permutation { one_line: inv }
    }

    /// `self ∘ other`, i.e. `k -> self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.support().max(other.support());
        let one_line = (1..=n as u32).map(|k| self.apply(other.apply(k))).collect();
        let mut p = Permutation { one_line };
        p.trim();
        p
    }

    /// `self · s_i`: exchanges the entries in positions `i` and `i+1`.
    pub fn times_simple(&self, i: u32) -> Permutation {
        let mut v = self.padded(i as usize + 1);
        v.swap(i as usize - 1, i as usize);
        let mut p = Permutation { one_line: v };
        p.trim();
        p
    }

    /// The product `s_{w_1} s_{w_2} ... s_{w_k}`.
    pub fn from_word(word: &[u32]) -> Permutation {
        word.iter()
            .fold(Permutation::identity(), |p, &i| p.times_simple(i))
    }

    pub fn code(&self) -> Code {
        let v = &self.one_line;
        let entries = (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&w| w < v[i]).count() as u32)
            .collect();
        Code::new(entries)
    }

    /// Inverse of [`Permutation::code`]; `c_i` must not exceed `n - i`
    /// after padding the code with zeros.
    pub fn from_code(code: &Code) -> Result<Permutation> {
        let c = code.entries();
        let n = c
            .iter()
            .enumerate()
            .map(|(i, &ci)| i + 1 + ci as usize)
            .max()
            .unwrap_or(0)
            .max(c.len());
        let mut available: Vec<u32> = (1..=n as u32).collect();
        let mut one_line = Vec::with_capacity(n);
        for &ci in c {
            if ci as usize >= available.len() {
                return Err(Error::InvalidCode(c.to_vec()));
            }
            one_line.push(available.remove(ci as usize));
        }
        one_line.extend(available);
        Permutation::new(one_line)
    }

    /// Number of inversions.
    pub fn length(&self) -> u64 {
        self.code().sum()
    }

    /// Positions `i` with `s_i > s_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        self.one_line
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Lexicographically smallest reduced word `[i_1, ..., i_l]` with
    /// `self = s_{i_1} ... s_{i_l}`.
    ///
    /// Any left descent can start a reduced word, so taking the smallest one
    /// at each step yields the lex-min word.
    pub fn reduced_word(&self) -> Vec<u32> {
        let mut word = Vec::new();
        let mut current = self.clone();
        while !current.is_identity() {
            let inv = current.inverse();
            // left descent at i: i+1 appears before i in one-line notation
            let i = (1..inv.support() as u32)
                .find(|&i| inv.apply(i) > inv.apply(i + 1))
                .expect("non-identity permutation has a left descent");
            word.push(i);
            // s_i * current exchanges the values i and i+1
            let one_line = current
                .one_line
                .iter()
                .map(|&v| {
                    if v == i {
                        i + 1
                    } else if v == i + 1 {
                        i
                    } else {
                        v
                    }
                })
                .collect();
            current = Permutation { one_line };
            current.trim();
        }
        word
    }

    pub fn classify(&self) -> PermClass {
        if self.code().is_weakly_decreasing() {
            return PermClass::Dominant;
        }
        match self.descents().as_slice() {
            [r] => PermClass::Grassmannian(*r),
            _ => PermClass::General,
        }
    }

    /// True iff the entries in positions `1..=r` increase and so do those after `r`.
    pub fn has_descent_at_most_at(&self, r: usize) -> bool {
        self.descents().iter().all(|&d| d == r)
    }

    /// The permutation `[a..., b...]` built from two increasing blocks
    /// whose union is `{1..n}`.
    pub fn concat(a: &[u32], b: &[u32]) -> Result<Permutation> {
        let mut v = a.to_vec();
        v.extend_from_slice(b);
        let increasing = |s: &[u32]| s.windows(2).all(|w| w[0] < w[1]);
        if !increasing(a) || !increasing(b) {
            return Err(Error::NotAPermutation(v));
        }
        Permutation::new(v)
    }

    /// All permutations of `{1..n}` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Permutation::new(current.clone()).expect("valid"));
            // next permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..n)
                .rev()
                .find(|&j| current[j] > current[i])
                .expect("exists");
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.one_line.is_empty() {
            return f.write_str("[1]");
        }
        let parts: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Permutation> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.one_line
    }
}
