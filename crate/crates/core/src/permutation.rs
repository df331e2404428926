//! Permutations in one-line notation and the two actions of the adjacent
//! transpositions on them.
//!
//! Positions, values and generator indices are 1-based throughout the public
//! API, matching the usual conventions: `w.at(i)` is `w(i)`, and `σ_i` swaps
//! `i` and `i+1`. Products are composition of maps, so `σ_i·w` exchanges the
//! positions of the values `i` and `i+1` while `w·σ_j` exchanges the entries in
//! positions `j` and `j+1`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1..n}` stored in one-line notation.
///
/// Rank 0 is allowed and is the (empty) identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<u8>,
}

impl Permutation {
    pub const MAX_RANK: usize = 255;

    pub fn from_one_line<I: IntoIterator<Item = usize>>(seq: I) -> Result<Self> {
        let seq: Vec<usize> = seq.into_iter().collect();
        let n = seq.len();
        if n > Self::MAX_RANK {
            return Err(Error::RankTooLarge(n));
        }
        let mut seen = vec![false; n + 1];
        for &v in &seq {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation { len: n, seq });
            }
            seen[v] = true;
        }
        Ok(Permutation { values: seq.iter().map(|&v| v as u8).collect() })
    }

    pub(crate) fn from_values_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Permutation::from_one_line(values.iter().map(|&v| v as usize)).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= Self::MAX_RANK, "rank {n} too large");
        Permutation { values: (1..=n as u8).collect() }
    }

    /// The decreasing permutation `n⋯21`.
    pub fn longest(n: usize) -> Self {
        assert!(n <= Self::MAX_RANK, "rank {n} too large");
        Permutation { values: (1..=n as u8).rev().collect() }
    }

    /// The permutation order-isomorphic to a sequence of distinct integers.
    pub fn standardize<T: Ord>(seq: &[T]) -> Self {
        let mut order: Vec<usize> = (0..seq.len()).collect();
        order.sort_by(|&a, &b| seq[a].cmp(&seq[b]));
        let mut values = vec![0u8; seq.len()];
        for (rank, &idx) in order.iter().enumerate() {
            values[idx] = (rank + 1) as u8;
        }
        Permutation { values }
    }

    /// All permutations of rank `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n as u8)
            .permutations(n)
            .map(|values| Permutation { values })
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.values.iter().map(|&v| v as usize).collect()
    }

    /// `w(pos)` for a 1-based position.
    pub fn at(&self, pos: usize) -> usize {
        self.values[pos - 1] as usize
    }

    /// `w⁻¹(value)`, 1-based.
    pub fn position_of(&self, value: usize) -> usize {
        self.values.iter().position(|&v| v as usize == value).expect("value in range") + 1
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.rank()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { values: inv }
    }

    /// The product `self·other` as maps: `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        Permutation { values: other.values.iter().map(|&x| self.values[x as usize - 1]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Number of inversions, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let v = &self.values;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    fn check_generator(&self, index: usize) -> Result<()> {
        if index == 0 || index >= self.rank() {
            return Err(Error::IndexOutOfRange { index, rank: self.rank() });
        }
        Ok(())
    }

    /// `σ_i·w`: exchange the positions of the values `i` and `i+1`.
    pub fn apply_left(&self, i: usize) -> Result<Self> {
        self.check_generator(i)?;
        let mut out = self.clone();
        out.swap_values(i);
        Ok(out)
    }

    /// `w·σ_j`: exchange the entries in positions `j` and `j+1`.
    pub fn apply_right(&self, j: usize) -> Result<Self> {
        self.check_generator(j)?;
        let mut out = self.clone();
        out.swap_positions(j);
        Ok(out)
    }

    /// In-place `w ↦ w·σ_j` (1-based `j`, unchecked beyond the slice bounds).
    pub(crate) fn swap_positions(&mut self, j: usize) {
        self.values.swap(j - 1, j);
    }

    /// In-place `w ↦ σ_i·w`.
    pub(crate) fn swap_values(&mut self, i: usize) {
        let (a, b) = (i as u8, i as u8 + 1);
        for v in self.values.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    /// `ℓ(w·σ_j) < ℓ(w)`.
    pub fn has_right_descent(&self, j: usize) -> bool {
        self.values[j - 1] > self.values[j]
    }

    /// `ℓ(σ_i·w) < ℓ(w)`, i.e. `i+1` appears to the left of `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.position_of(i + 1) < self.position_of(i)
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.rank()).filter(|&j| self.has_right_descent(j)).collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    pub fn reverse(&self) -> Self {
        Permutation { values: self.values.iter().rev().copied().collect() }
    }

    pub fn complement(&self) -> Self {
        let n = self.rank() as u8;
        Permutation { values: self.values.iter().map(|&v| n + 1 - v).collect() }
    }

    pub fn reverse_complement(&self) -> Self {
        self.reverse().complement()
    }

    /// Space separated one-line notation, used when the compact form is ambiguous.
    pub fn spaced(&self) -> String {
        self.values.iter().join(" ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 0 {
            f.write_str("e")
        } else if self.rank() <= 9 {
            write!(f, "{}", self.values.iter().join(""))
        } else {
            f.write_str(&self.spaced())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Splits text into integers: separated by spaces and/or commas, or a compact
/// run of single digits.
pub(crate) fn parse_integers(s: &str) -> Result<Vec<usize>> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    let bad = || Error::Parse(s.to_string());
    if t.contains([' ', ',']) {
        t.split([' ', ','])
            .filter(|part| !part.is_empty())
            .map(|part| part.parse::<usize>().map_err(|_| bad()))
            .collect()
    } else {
        t.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect()
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::from_one_line(parse_integers(s)?)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(seq: Vec<usize>) -> Result<Self> {
        Permutation::from_one_line(seq)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.to_vec()
    }
}
