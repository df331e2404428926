//! Words in the adjacent transpositions, and the reduced words `R(w)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::{parse_integers, Permutation};

/// Default cap on the number of words any single enumeration may produce.
pub const DEFAULT_MAX_WORDS: u128 = 10_000_000;

/// A word `i_1⋯i_ℓ` in the generators `σ_1..σ_{n-1}` of the symmetric group of
/// rank `n`. Reducedness is a property checked by [`ReducedWord::is_reduced`];
/// the type itself only guarantees the letters are in range.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedWord {
    #[serde(rename = "word")]
    letters: Vec<u8>,
    rank: usize,
}

impl ReducedWord {
    pub fn new<I: IntoIterator<Item = usize>>(letters: I, rank: usize) -> Result<Self> {
        let letters: Vec<usize> = letters.into_iter().collect();
        if rank > Permutation::MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i >= rank) {
            return Err(Error::IndexOutOfRange { index: bad, rank });
        }
        Ok(ReducedWord { letters: letters.into_iter().map(|i| i as u8).collect(), rank })
    }

    pub(crate) fn from_raw(letters: Vec<u8>, rank: usize) -> Self {
        debug_assert!(letters.iter().all(|&i| i >= 1 && (i as usize) < rank));
        ReducedWord { letters, rank }
    }

    pub fn empty(rank: usize) -> Self {
        ReducedWord { letters: Vec::new(), rank }
    }

    /// Parses `"2 1 2 3"`, `"2,1,2,3"` or the compact `"2123"`.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        ReducedWord::new(parse_integers(text)?, rank)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.letters.iter().map(|&i| i as usize).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product `σ_{i_1}⋯σ_{i_ℓ}`.
    pub fn evaluate(&self) -> Permutation {
        let mut w = Permutation::identity(self.rank);
        for &j in &self.letters {
            w.swap_positions(j as usize);
        }
        w
    }

    pub fn is_reduced(&self) -> bool {
        let mut w = Permutation::identity(self.rank);
        for &j in &self.letters {
            if w.has_right_descent(j as usize) {
                return false;
            }
            w.swap_positions(j as usize);
        }
        true
    }

    pub fn letter_sum(&self) -> usize {
        self.letters.iter().map(|&i| i as usize).sum()
    }

    pub fn distinct_letters(&self) -> BTreeSet<usize> {
        self.letters.iter().map(|&i| i as usize).collect()
    }

    /// Adds `x` to every letter and embeds the result in rank `rank`.
    pub fn shifted(&self, x: usize, rank: usize) -> Result<Self> {
        ReducedWord::new(self.letters.iter().map(|&i| i as usize + x), rank)
    }

    pub fn slice(&self, start: usize, end: usize) -> ReducedWord {
        ReducedWord { letters: self.letters[start..end].to_vec(), rank: self.rank }
    }

    pub fn concat(&self, other: &ReducedWord) -> ReducedWord {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        ReducedWord { letters, rank: self.rank }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&i| i <= 9) {
            write!(f, "{}", self.letters.iter().join(""))
        } else {
            write!(f, "{}", self.letters.iter().join(" "))
        }
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedWord({self}; rank {})", self.rank)
    }
}

/// `|R(w)|`, by the recursion `|R(w)| = Σ_{j ∈ Des_R(w)} |R(wσ_j)|`.
pub fn count_reduced_words(w: &Permutation) -> u128 {
    fn rec(w: &Permutation, memo: &mut HashMap<Permutation, u128>) -> u128 {
        if w.length() <= 1 {
            return 1;
        }
        if let Some(&c) = memo.get(w) {
            return c;
        }
        let mut total = 0;
        let mut v = w.clone();
        for j in w.right_descents() {
            v.swap_positions(j);
            total += rec(&v, memo);
            v.swap_positions(j);
        }
        memo.insert(w.clone(), total);
        total
    }
    rec(w, &mut HashMap::new())
}

pub(crate) fn check_cap(what: impl FnOnce() -> String, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        return Err(Error::TooLarge { what: what(), needed, cap });
    }
    Ok(())
}

/// `R(w)` in lexicographic order, refusing when it exceeds [`DEFAULT_MAX_WORDS`].
pub fn enumerate_reduced_words(w: &Permutation) -> Result<Vec<ReducedWord>> {
    enumerate_reduced_words_capped(w, DEFAULT_MAX_WORDS)
}

pub fn enumerate_reduced_words_capped(w: &Permutation, cap: u128) -> Result<Vec<ReducedWord>> {
    check_cap(|| format!("R({w})"), count_reduced_words(w), cap)?;
    let ell = w.length();
    let mut out: Vec<Vec<u8>> = Vec::new();
    let mut suffix: Vec<u8> = vec![0; ell];

    // Peel right descents; the letter removed at depth d is the (ℓ-d)th letter.
    fn rec(w: &mut Permutation, depth: usize, suffix: &mut [u8], out: &mut Vec<Vec<u8>>) {
        let ell = suffix.len();
        if depth == ell {
            out.push(suffix.to_vec());
            return;
        }
        for j in 1..w.rank() {
            if w.has_right_descent(j) {
                suffix[ell - 1 - depth] = j as u8;
                w.swap_positions(j);
                rec(w, depth + 1, suffix, out);
                w.swap_positions(j);
            }
        }
    }
    rec(&mut w.clone(), 0, &mut suffix, &mut out);
    out.sort_unstable();
    Ok(out.into_iter().map(|letters| ReducedWord { letters, rank: w.rank() }).collect())
}

/// Lexicographically least element of `R(w)`: repeatedly strip the smallest
/// left descent.
pub fn lex_least_reduced_word(w: &Permutation) -> ReducedWord {
    greedy_left(w, |descents| descents.first().copied())
}

/// Lexicographically greatest element of `R(w)`.
pub fn lex_greatest_reduced_word(w: &Permutation) -> ReducedWord {
    greedy_left(w, |descents| descents.last().copied())
}

fn greedy_left(w: &Permutation, pick: impl Fn(&[usize]) -> Option<usize>) -> ReducedWord {
    let mut v = w.clone();
    let mut letters = Vec::with_capacity(w.length());
    while let Some(i) = pick(&v.left_descents()) {
        letters.push(i as u8);
        v.swap_values(i);
    }
    ReducedWord { letters, rank: w.rank() }
}

/// The letters used by every reduced word of `w`: `i` is present exactly when
/// `w` does not map `{1..i}` to itself.
pub fn support(w: &Permutation) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut running_max = 0;
    for i in 1..w.rank() {
        running_max = running_max.max(w.at(i));
        if running_max > i {
            out.insert(i);
        }
    }
    out
}

/// `|R(w)| = 1`, decided by shape: outside an interval `[m, m']` the
/// permutation is fixed, and inside it every entry is shifted by the same
/// `ε = ±1`, cyclically.
pub fn has_unique_reduced_word(w: &Permutation) -> bool {
    let moved: Vec<usize> = (1..=w.rank()).filter(|&i| w.at(i) != i).collect();
    let (Some(&m), Some(&m2)) = (moved.first(), moved.last()) else {
        return true;
    };
    let cyclic = |eps: isize| {
        (m..=m2).all(|i| {
            let target = i as isize + eps;
            let target = if target > m2 as isize {
                m as isize
            } else if target < m as isize {
                m2 as isize
            } else {
                target
            };
            w.at(i) as isize == target
        })
    };
    cyclic(1) || cyclic(-1)
}

/// Every `u` with `w = u·y` and `ℓ(w) = ℓ(u) + ℓ(y)`, i.e. the lower interval
/// below `w` in right weak order, sorted.
pub fn prefixes(w: &Permutation) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::from([w.clone()]);
    let mut frontier = vec![w.clone()];
    while let Some(u) = frontier.pop() {
        for j in u.right_descents() {
            let mut v = u.clone();
            v.swap_positions(j);
            if seen.insert(v.clone()) {
                frontier.push(v);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    out
}
