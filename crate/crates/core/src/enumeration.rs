//! Pattern avoidance by length: partitions, the antidiagonal reading word,
//! the sets 𝔖(p; ℓ, d), Catalan refinements and 231 counts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::avoids;
use crate::permutation::{parse_integers, Permutation};
use crate::word::{lex_greatest_reduced_word, support, ReducedWord};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Parse(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Cell-wise containment in the staircase `δ_d = (d-1, …, 1)`; `δ_0`
    /// contains nothing, not even the empty shape.
    pub fn fits_staircase(&self, d: usize) -> bool {
        d > 0 && self.parts.iter().enumerate().all(|(i, &part)| i + 1 < d && part <= d - 1 - i)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.chars().all(|c| c.is_ascii_digit()) && trimmed.len() > 1 {
            return Err(Error::Parse(format!("ambiguous partition {s:?}; separate parts with commas")));
        }
        Partition::new(parse_integers(trimmed)?)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_with_k_parts(n: usize, k: usize) -> Vec<Partition> {
    partitions(n).into_iter().filter(|p| p.len() == k).collect()
}

/// `𝔭(n)` by the pentagonal recurrence, independent of [`partitions`].
pub fn partition_count(n: usize) -> u128 {
    let mut p = vec![0i128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i128;
        for k in 1.. {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            total += sign * p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[m - g2];
            }
        }
        p[m] = total;
    }
    p[n] as u128
}

/// Rows of the antidiagonal filling read bottom to top, each left to right;
/// row `r`, column `c` holds `r + c - 1`.
pub fn reading_word(lambda: &Partition) -> ReducedWord {
    let rank = lambda.parts.iter().enumerate().map(|(i, &part)| i + part + 1).max().unwrap_or(0);
    let letters = lambda
        .parts
        .iter()
        .enumerate()
        .rev()
        .flat_map(|(i, &part)| (0..part).map(move |c| i + 1 + c));
    ReducedWord::new(letters, rank).expect("letters stay below the rank")
}

pub fn pi_of_partition(lambda: &Partition) -> Permutation {
    reading_word(lambda).evaluate()
}

/// Inverse of [`pi_of_partition`] on 𝔖(132): the maximal runs of
/// consecutive increasing letters in the lex-greatest reduced word, last
/// run first.
pub fn partition_of_perm(w: &Permutation) -> Result<Partition> {
    let n = w.rank();
    if !avoids(w, &Permutation::from_values_unchecked(vec![1, 3, 2])) {
        return Err(Error::Not132Avoiding(w.to_string()));
    }
    if n > 0 && w.at(n) == n {
        return Err(Error::SuppressionViolated(format!("{w} ends in the fixed point {n}")));
    }
    let s = lex_greatest_reduced_word(w);
    let mut runs: Vec<usize> = Vec::new();
    let mut prev: Option<u8> = None;
    for &letter in s.letters() {
        match prev {
            Some(q) if letter == q + 1 => *runs.last_mut().unwrap() += 1,
            _ => runs.push(1),
        }
        prev = Some(letter);
    }
    runs.reverse();
    let lambda = Partition::new(runs).map_err(|e| Error::InconsistentInput(e.to_string()))?;
    debug_assert_eq!(pi_of_partition(&lambda), *w);
    Ok(lambda)
}

fn pattern_ends(p: &Permutation) -> (bool, bool) {
    let k = p.rank();
    (k > 0 && p.at(1) != 1, k > 0 && p.at(k) != k)
}

/// Whether `w` is in 𝔖(p): avoids `p`, and drops the fixed points at the ends
/// that would otherwise be counted once per rank.
pub fn in_suppressed_class(w: &Permutation, p: &Permutation) -> bool {
    let n = w.rank();
    let (first_rule, last_rule) = pattern_ends(p);
    if n > 0 && ((last_rule && w.at(n) == n) || (first_rule && w.at(1) == 1)) {
        return false;
    }
    avoids(w, p)
}

/// Largest rank an element of 𝔖(p; ℓ) can have, or `None` when the set is
/// infinite.
pub fn rank_bound(p: &Permutation, length: usize) -> Option<usize> {
    match p.to_vec().as_slice() {
        // no fixed point at the suppressed end forces an inversion per position
        [1, 3, 2] | [2, 1, 3] => Some(length + 1),
        // two decreasing runs of sizes a + b = n carry at least C(a,2) + C(b,2) inversions
        [1, 2, 3] => (0..)
            .take_while(|&n: &usize| {
                let (a, b) = (n.div_ceil(2), n / 2);
                a * a.saturating_sub(1) / 2 + b * b.saturating_sub(1) / 2 <= length
            })
            .last(),
        _ => None,
    }
}

/// 𝔖(p; ℓ) by brute force, over ranks up to the finite bound or `rank_cap`.
pub fn enumerate_avoiders(p: &Permutation, length: usize, rank_cap: Option<usize>) -> Result<BTreeSet<Permutation>> {
    if p.rank() != 3 {
        return Err(Error::InconsistentInput(format!("{p} is not a pattern of rank 3")));
    }
    let max_rank = match (rank_bound(p, length), rank_cap) {
        (Some(b), Some(c)) => b.min(c),
        (Some(b), None) => b,
        (None, Some(c)) => c,
        (None, None) => return Err(Error::InfiniteWithoutCap(format!("𝔖({p};{length})"))),
    };
    let mut out = BTreeSet::new();
    for n in 0..=max_rank {
        if n * n.saturating_sub(1) / 2 < length {
            continue;
        }
        for w in Permutation::all(n) {
            if w.length() == length && in_suppressed_class(&w, p) {
                out.insert(w);
            }
        }
    }
    Ok(out)
}

/// The support size `d` of `w`: how many distinct letters its reduced words use.
pub fn support_size(w: &Permutation) -> usize {
    support(w).len()
}

/// `|𝔖(132; ℓ, d)|` through partitions: `λ ⊢ ℓ` fitting `δ_{d+1}` but not `δ_d`.
pub fn count_132_cell(length: usize, d: usize) -> u128 {
    partitions(length).iter().filter(|l| l.fits_staircase(d + 1) && !l.fits_staircase(d)).count() as u128
}

/// `table[d][ℓ] = |𝔖(132; ℓ, d)|`.
pub fn table_132(l_max: usize, d_max: usize) -> Vec<Vec<u128>> {
    let mut table = vec![vec![0u128; l_max + 1]; d_max + 1];
    for (l, column) in (0..=l_max).map(|l| (l, partitions(l))) {
        for lambda in column {
            if let Some(d) = (0..=d_max).find(|&d| lambda.fits_staircase(d + 1)) {
                if !lambda.fits_staircase(d) {
                    table[d][l] += 1;
                }
            }
        }
    }
    table
}

/// The same table by enumerating permutations of each length.
pub fn table_132_brute(l_max: usize, d_max: usize) -> Vec<Vec<u128>> {
    let p = Permutation::from_values_unchecked(vec![1, 3, 2]);
    let mut table = vec![vec![0u128; l_max + 1]; d_max + 1];
    for (l, column) in table_columns(l_max).into_iter().enumerate() {
        for w in column.iter().filter(|w| in_suppressed_class(w, &p)) {
            let d = support_size(w);
            if d <= d_max {
                table[d][l] += 1;
            }
        }
    }
    table
}

/// Every permutation of rank at most `l_max + 1`, bucketed by length `≤ l_max`.
fn table_columns(l_max: usize) -> Vec<Vec<Permutation>> {
    let mut columns = vec![Vec::new(); l_max + 1];
    for n in 0..=l_max + 1 {
        for w in Permutation::all(n) {
            let l = w.length();
            if l <= l_max {
                columns[l].push(w);
            }
        }
    }
    columns
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub d: usize,
    pub l: usize,
    pub count: u128,
}

pub fn table_cells(table: &[Vec<u128>]) -> Vec<TableCell> {
    table
        .iter()
        .enumerate()
        .flat_map(|(d, row)| row.iter().enumerate().map(move |(l, &count)| TableCell { d, l, count }))
        .collect()
}

/// Rows `d`, columns `ℓ`.
pub fn render_table(table: &[Vec<u128>]) -> String {
    let l_max = table.first().map_or(0, |r| r.len().saturating_sub(1));
    let width = table.iter().flatten().map(|c| c.to_string().len()).max().unwrap_or(1).max(2);
    let mut out = format!("{:>5} |", "d\\l");
    for l in 0..=l_max {
        out += &format!(" {l:>width$}");
    }
    out.push('\n');
    out += &format!("{}+{}\n", "-".repeat(6), "-".repeat((width + 1) * (l_max + 1)));
    for (d, row) in table.iter().enumerate() {
        out += &format!("{d:>5} |");
        for c in row {
            out += &format!(" {c:>width$}");
        }
        out.push('\n');
    }
    out
}

pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

pub fn catalan(n: usize) -> u128 {
    (binomial(2 * n as i64, n as i64) / (n as i128 + 1)) as u128
}

/// Rows `d < n` of the table restricted to `ℓ ≤ C(n,2)`.
pub fn catalan_refinement(n: usize) -> Vec<Vec<u128>> {
    let l_max = n * n.saturating_sub(1) / 2;
    let mut table = table_132(l_max, n.saturating_sub(1));
    table.truncate(n);
    table
}

pub fn catalan_refinement_check(n: usize) -> bool {
    catalan_refinement(n).iter().flatten().sum::<u128>() == catalan(n)
}

/// The nonzero summands row by row, e.g. `(1) + (1) + (2 + 1) + …`.
pub fn catalan_summands(n: usize) -> String {
    catalan_refinement(n)
        .iter()
        .map(|row| {
            let terms: Vec<String> = row.iter().filter(|&&c| c > 0).map(|c| c.to_string()).collect();
            format!("({})", terms.join(" + "))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Brute-force count of 231-avoiders in 𝔖_n of the given length.
pub fn count_231_by_length(n: usize, length: usize) -> u128 {
    let p = Permutation::from_values_unchecked(vec![2, 3, 1]);
    Permutation::all(n).filter(|w| w.length() == length && avoids(w, &p)).count() as u128
}

/// Closed forms for the number of 231-avoiders in 𝔖_n of length 1 to 5.
pub fn formula_231(n: usize, length: usize) -> Result<i128> {
    let n = n as i64;
    let b = binomial;
    Ok(match length {
        1 => (n - 1) as i128,
        2 => b(n - 1, 2),
        3 => b(n - 1, 3) + (n - 2) as i128,
        4 => b(n - 1, 4) + ((n - 2) * (n - 3)) as i128,
        5 => b(n - 1, 5) + (n - 2) as i128 * b(n - 3, 2) + (n - 3) as i128,
        _ => return Err(Error::FormulaUndefined(length)),
    })
}
