//! Shifted reduced words of a pattern appearing as isolated factors in
//! reduced words of a larger permutation.
//!
//! A factor `b` of `s = abc ∈ R(w)` is isolated on `[m, m']` when `m' < n`,
//! every letter of `b` lies in `[m, m']`, and for every `i` in that interval
//! `u = a` gains length under `u·σ_i` while `v = c` gains length under `σ_i·v`.
//! Elements of `R(p)` shifted by `x` count as isolated when isolated on
//! `[x+1, x+k-1]`, `k` the rank of `p`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{occurrences, spreads_contained, Occurrence};
use crate::permutation::Permutation;
use crate::word::{
    enumerate_reduced_words_capped, lex_least_reduced_word, prefixes, ReducedWord,
    DEFAULT_MAX_WORDS,
};

/// A factor `letters[start..end]` of a word together with an interval of
/// generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolationSpan {
    pub word: ReducedWord,
    pub start: usize,
    pub end: usize,
    /// `(m, m')`; empty when `m = m' + 1`.
    pub interval: (usize, usize),
}

impl IsolationSpan {
    pub fn factor(&self) -> ReducedWord {
        self.word.slice(self.start, self.end)
    }
}

pub fn is_isolated(span: &IsolationSpan) -> Result<bool> {
    let IsolationSpan { word, start, end, interval: (m, m2) } = span;
    let (start, end, m, m2) = (*start, *end, *m, *m2);
    if start > end || end > word.len() {
        return Err(Error::MalformedSpan(format!("factor {start}..{end} of a word of length {}", word.len())));
    }
    if m == 0 || m > m2 + 1 {
        return Err(Error::MalformedSpan(format!("interval [{m}, {m2}]")));
    }
    if !word.is_reduced() {
        return Err(Error::MalformedSpan(format!("{word} is not reduced")));
    }
    if m2 >= word.rank() {
        return Ok(false);
    }
    let letters = word.letters();
    if letters[start..end].iter().any(|&i| (i as usize) < m || (i as usize) > m2) {
        return Ok(false);
    }
    let u = word.slice(0, start).evaluate();
    let v = word.slice(end, word.len()).evaluate();
    Ok((m..=m2).all(|i| !u.has_right_descent(i) && !v.has_left_descent(i)))
}

/// How far an occurrence is from using consecutive positions and values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapMeasure {
    pub gap_pos: usize,
    pub gap_val: usize,
    pub total: usize,
    pub occurrence: Occurrence,
}

impl GapMeasure {
    pub fn of(occurrence: &Occurrence) -> Self {
        let k = occurrence.len();
        let first = occurrence.positions[0];
        let last = occurrence.positions[k - 1];
        let lo = *occurrence.values.iter().min().unwrap();
        let hi = *occurrence.values.iter().max().unwrap();
        let gap_pos = last - first + 1 - k;
        let gap_val = hi - lo + 1 - k;
        GapMeasure { gap_pos, gap_val, total: gap_pos + gap_val, occurrence: occurrence.clone() }
    }
}

/// `gap(p, w)`: the minimum of `gap_pos + gap_val` over occurrences, attained
/// at the occurrence with lexicographically least positions among minimizers.
pub fn gap(p: &Permutation, w: &Permutation) -> Result<GapMeasure> {
    if p.rank() == 0 {
        return Err(Error::InconsistentInput("empty pattern".into()));
    }
    occurrences(p, w)
        .iter()
        .map(GapMeasure::of)
        .min_by_key(|g| g.total)
        .ok_or_else(|| Error::NotContained { pattern: p.to_string(), host: w.to_string() })
}

/// A reduced word of the host with a shifted reduced word of the pattern as an
/// isolated factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedEmbedding {
    pub word: ReducedWord,
    pub shift: usize,
    pub start: usize,
    pub end: usize,
    pub interval: (usize, usize),
}

impl IsolatedEmbedding {
    pub fn span(&self) -> IsolationSpan {
        IsolationSpan {
            word: self.word.clone(),
            start: self.start,
            end: self.end,
            interval: self.interval,
        }
    }

    pub fn factor(&self) -> ReducedWord {
        self.word.slice(self.start, self.end)
    }

    /// Checks every claim of the witness against `p` and `w`.
    pub fn verify(&self, p: &Permutation, w: &Permutation) -> bool {
        let k = p.rank();
        self.word.is_reduced()
            && self.word.evaluate() == *w
            && self.interval == (self.shift + 1, self.shift + k - 1)
            && self.end - self.start == p.length()
            && self.factor_pattern() == Some(p.clone())
            && is_isolated(&self.span()).unwrap_or(false)
    }

    /// The pattern whose shifted reduced word is the factor.
    pub fn factor_pattern(&self) -> Option<Permutation> {
        let k = self.interval.1 + 2 - self.interval.0;
        let letters: Option<Vec<usize>> = self.word.letters()[self.start..self.end]
            .iter()
            .map(|&i| (i as usize).checked_sub(self.shift).filter(|&j| j >= 1 && j < k))
            .collect();
        Some(ReducedWord::new(letters?, k).ok()?.evaluate())
    }
}

fn require_pattern(p: &Permutation) -> Result<()> {
    if p.rank() == 0 {
        return Err(Error::InconsistentInput("empty pattern".into()));
    }
    Ok(())
}

/// Brute force over `R(w)`: the first word (lexicographically), then factor
/// start, then shift, at which a shifted element of `R(p)` sits isolated.
pub fn find_isolated_embedding(p: &Permutation, w: &Permutation) -> Result<Option<IsolatedEmbedding>> {
    find_isolated_embedding_capped(p, w, DEFAULT_MAX_WORDS)
}

pub fn find_isolated_embedding_capped(
    p: &Permutation,
    w: &Permutation,
    cap: u128,
) -> Result<Option<IsolatedEmbedding>> {
    require_pattern(p)?;
    let (k, n) = (p.rank(), w.rank());
    if k > n {
        return Ok(None);
    }
    let len_p = p.length();
    if len_p > w.length() {
        return Ok(None);
    }
    for s in enumerate_reduced_words_capped(w, cap)? {
        let letters = s.letters();
        let mut u = Permutation::identity(n);
        for start in 0..=letters.len() - len_p {
            if start > 0 {
                u.swap_positions(letters[start - 1] as usize);
            }
            let factor = &letters[start..start + len_p];
            let lo = factor.iter().min().map_or(1, |&i| i as usize);
            let hi = factor.iter().max().map_or(0, |&i| i as usize);
            let v = s.slice(start + len_p, letters.len()).evaluate();
            for x in 0..=n - k {
                let (m, m2) = (x + 1, x + k - 1);
                if !factor.is_empty() && (lo < m || hi > m2) {
                    continue;
                }
                let unshifted = ReducedWord::new(factor.iter().map(|&i| i as usize - x), k)?;
                if unshifted.evaluate() != *p {
                    continue;
                }
                if (m..=m2).all(|i| !u.has_right_descent(i) && !v.has_left_descent(i)) {
                    return Ok(Some(IsolatedEmbedding {
                        word: s.clone(),
                        shift: x,
                        start,
                        end: start + len_p,
                        interval: (m, m2),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The pattern realized by the window `[x+1, x+k]` of the factorization
/// `w = u·y`: reading the values of that window in `y` left to right.
fn window_pattern(y: &Permutation, x: usize, k: usize) -> Permutation {
    let seq: Vec<u8> = y.values().iter().copied().filter(|&v| (v as usize) > x && (v as usize) <= x + k).collect();
    Permutation::standardize(&seq)
}

/// Every pattern of rank `1..=max_rank` with an isolated shifted factor in
/// some element of `R(w)`.
///
/// Scans factorizations instead of words: `b` isolated on `J = [x+1, x+k-1]`
/// in `abc` means `w = u·g·v` with lengths adding, `g` in the parabolic
/// subgroup of `J`, `u` without right descents in `J` and `v` without left
/// descents in `J`. Given `u`, such `g` and `v` exist exactly when they are the
/// parabolic factorization of `u⁻¹w`, so it is enough to run over prefixes
/// `u` and windows.
pub fn embeddable_patterns(w: &Permutation, max_rank: usize) -> BTreeSet<Permutation> {
    let n = w.rank();
    let mut out = BTreeSet::new();
    for u in prefixes(w) {
        let y = u.inverse().compose(w);
        for k in 1..=max_rank.min(n) {
            for x in 0..=n - k {
                if (x + 1..x + k).all(|i| !u.has_right_descent(i)) {
                    out.insert(window_pattern(&y, x, k));
                }
            }
        }
    }
    out
}

/// A witness found by the factorization scan of [`embeddable_patterns`].
pub fn embedding_by_factorization(p: &Permutation, w: &Permutation) -> Result<Option<IsolatedEmbedding>> {
    require_pattern(p)?;
    let (k, n) = (p.rank(), w.rank());
    if k > n {
        return Ok(None);
    }
    for u in prefixes(w) {
        let y = u.inverse().compose(w);
        for x in 0..=n - k {
            if (x + 1..x + k).any(|i| u.has_right_descent(i)) || window_pattern(&y, x, k) != *p {
                continue;
            }
            let g = shift_into(p, x, n);
            let v = g.inverse().compose(&y);
            let a = lex_least_reduced_word(&u);
            let b = lex_least_reduced_word(p).shifted(x, n)?;
            let c = lex_least_reduced_word(&v);
            let start = a.len();
            let word = a.concat(&b).concat(&c);
            return Ok(Some(IsolatedEmbedding {
                end: start + b.len(),
                word,
                shift: x,
                start,
                interval: (x + 1, x + k - 1),
            }));
        }
    }
    Ok(None)
}

/// `p` acting on `{x+1..x+k}` inside rank `n`, fixing everything else.
fn shift_into(p: &Permutation, x: usize, n: usize) -> Permutation {
    let mut values: Vec<usize> = (1..=n).collect();
    for j in 1..=p.rank() {
        values[x + j - 1] = p.at(j) + x;
    }
    Permutation::from_one_line(values).expect("shifted pattern")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    /// `w ↦ w·σ_j`
    Right(usize),
    /// `w ↦ σ_i·w`
    Left(usize),
}

/// The host shrinking towards a consecutive occurrence, with the moves that
/// undo the shrinking.
#[derive(Clone)]
struct Reduction {
    current: Permutation,
    /// 1-based positions of the tracked occurrence in `current`.
    occ: Vec<usize>,
    moves: Vec<Move>,
}

fn contradiction(msg: impl Into<String>) -> Error {
    Error::InternalContradiction(msg.into())
}

impl Reduction {
    fn n(&self) -> usize {
        self.current.rank()
    }

    fn values(&self) -> Vec<usize> {
        self.occ.iter().map(|&i| self.current.at(i)).collect()
    }

    fn is_entry_value(&self, v: usize) -> bool {
        self.occ.iter().any(|&i| self.current.at(i) == v)
    }

    fn right(&mut self, j: usize) -> Result<()> {
        if !self.current.has_right_descent(j) {
            return Err(contradiction(format!("w·σ_{j} would lengthen {}", self.current)));
        }
        let a = self.occ.iter().position(|&i| i == j);
        let b = self.occ.iter().position(|&i| i == j + 1);
        match (a, b) {
            (Some(_), Some(_)) => return Err(contradiction(format!("σ_{j} swaps two pattern entries"))),
            (Some(t), None) => self.occ[t] = j + 1,
            (None, Some(t)) => self.occ[t] = j,
            (None, None) => {}
        }
        self.current.swap_positions(j);
        self.moves.push(Move::Right(j));
        Ok(())
    }

    fn left(&mut self, i: usize) -> Result<()> {
        if !self.current.has_left_descent(i) {
            return Err(contradiction(format!("σ_{i}·w would lengthen {}", self.current)));
        }
        if self.is_entry_value(i) && self.is_entry_value(i + 1) {
            return Err(contradiction(format!("σ_{i} swaps two pattern values")));
        }
        self.current.swap_values(i);
        self.moves.push(Move::Left(i));
        Ok(())
    }

    /// Positions strictly inside the occurrence's span that it does not use.
    fn position_gaps(&self) -> Vec<usize> {
        let (first, last) = (self.occ[0], *self.occ.last().unwrap());
        (first + 1..last).filter(|i| !self.occ.contains(i)).collect()
    }

    /// Slide the entry at `from` leftward until it sits at `to`.
    fn slide_left(&mut self, from: usize, to: usize) -> Result<()> {
        for q in (to..from).rev() {
            self.right(q)?;
        }
        Ok(())
    }

    fn slide_right(&mut self, from: usize, to: usize) -> Result<()> {
        for q in from..to {
            self.right(q)?;
        }
        Ok(())
    }

    /// Sort the values `lo..=hi` into increasing order of position using
    /// left multiplications only.
    fn sort_values(&mut self, lo: usize, hi: usize) -> Result<()> {
        loop {
            let mut changed = false;
            for i in lo..hi {
                if self.current.has_left_descent(i) {
                    self.left(i)?;
                    changed = true;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// One round for the position gap sitting at `gap_pos`: either slide it out
    /// past the front of the occurrence, or run one pass of the exchange loop
    /// against the largest entry below it.
    fn step_for_gap(&mut self, gap_pos: usize) -> Result<()> {
        let x = self.current.at(gap_pos);
        let left_entries: Vec<usize> = self.occ.iter().copied().filter(|&i| i < gap_pos).collect();
        if left_entries.iter().all(|&i| self.current.at(i) > x) {
            let first = self.occ[0];
            self.slide_left(gap_pos, first)?;
            return Ok(());
        }
        let values = self.values();
        let (t, &y) = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < x)
            .max_by_key(|(_, &v)| v)
            .expect("an entry below the gap exists");
        let y_pos = self.occ[t];
        if y_pos < gap_pos {
            // Everything strictly between y and x is larger than x.
            self.slide_left(gap_pos, y_pos + 1)?;
            self.occ[t] = y_pos + 1;
            debug_assert_eq!(self.current.at(y_pos + 1), x);
        } else {
            // Only y among y..=x is an entry, so its slot keeps the pattern.
            self.sort_values(y, x)?;
        }
        Ok(())
    }

    fn reverse_complement(&self) -> Reduction {
        let n = self.n();
        let mut occ: Vec<usize> = self.occ.iter().map(|&i| n + 1 - i).collect();
        occ.reverse();
        Reduction { current: self.current.reverse_complement(), occ, moves: Vec::new() }
    }

    /// Apply a round computed on the reverse-complement back to `self`.
    fn absorb_mirror(&mut self, mirror: Reduction) {
        let n = self.n();
        self.current = mirror.current.reverse_complement();
        let mut occ: Vec<usize> = mirror.occ.iter().map(|&i| n + 1 - i).collect();
        occ.reverse();
        self.occ = occ;
        self.moves.extend(mirror.moves.into_iter().map(|m| match m {
            Move::Right(j) => Move::Right(n - j),
            Move::Left(i) => Move::Left(n - i),
        }));
    }

    fn is_increasing(&self, positions: &[usize]) -> bool {
        positions.windows(2).all(|p| self.current.at(p[0]) < self.current.at(p[1]))
    }

    /// One round of the induction. Returns `false` once the occurrence sits in
    /// consecutive positions or uses consecutive values.
    fn round(&mut self) -> Result<bool> {
        let m = GapMeasure::of(&Occurrence::from_positions(&self.current, self.occ.clone()));
        if m.gap_pos == 0 || m.gap_val == 0 {
            return Ok(false);
        }
        let gaps = self.position_gaps();
        let &gap_x = gaps.iter().min_by_key(|&&i| self.current.at(i)).expect("gap_pos > 0");
        let x = self.current.at(gap_x);
        let left: Vec<usize> = self.occ.iter().copied().filter(|&i| i < gap_x).collect();
        let right: Vec<usize> = self.occ.iter().copied().filter(|&i| i > gap_x).collect();

        if left.iter().all(|&i| self.current.at(i) > x) {
            self.slide_left(gap_x, self.occ[0])?;
            return Ok(true);
        }
        if right.iter().all(|&i| self.current.at(i) < x) {
            // every position gap exceeds these entries; push the last gap out
            let &last_gap = gaps.last().unwrap();
            let last = *self.occ.last().unwrap();
            self.slide_right(last_gap, last)?;
            return Ok(true);
        }
        let smaller_left: Vec<usize> = left.iter().copied().filter(|&i| self.current.at(i) < x).collect();
        let larger_right: Vec<usize> = right.iter().copied().filter(|&i| self.current.at(i) > x).collect();
        if self.is_increasing(&smaller_left) {
            self.step_for_gap(gap_x)?;
            return Ok(true);
        }
        if self.is_increasing(&larger_right) {
            let &gap_x2 = gaps
                .iter()
                .filter(|&&i| i >= gap_x)
                .max_by_key(|&&i| self.current.at(i))
                .expect("x itself qualifies");
            let mut mirror = self.reverse_complement();
            mirror.step_for_gap(self.n() + 1 - gap_x2)?;
            self.absorb_mirror(mirror);
            return Ok(true);
        }
        Err(contradiction(format!(
            "occurrence {:?} of {} widens into 21354 around {x}",
            self.values(),
            self.current
        )))
    }
}

/// Builds an element of `R(w)` containing a shifted copy of the lexicographically
/// least reduced word of `p` as an isolated factor, without enumerating `R(w)`.
///
/// Starting from the occurrence of least `gap`, the host is shortened by
/// position swaps (and value swaps where unavoidable) that never exchange two
/// pattern entries, until the tracked occurrence uses consecutive positions or
/// consecutive values. There the embedding is immediate, and replaying the
/// swaps in reverse rebuilds `w` while keeping the factor isolated.
pub fn construct_isolated_embedding(p: &Permutation, w: &Permutation) -> Result<IsolatedEmbedding> {
    construct_isolated_embedding_with(p, w, &lex_least_reduced_word(p))
}

/// As [`construct_isolated_embedding`], with a chosen element of `R(p)` as the
/// factor.
pub fn construct_isolated_embedding_with(
    p: &Permutation,
    w: &Permutation,
    factor: &ReducedWord,
) -> Result<IsolatedEmbedding> {
    require_pattern(p)?;
    if factor.rank() != p.rank() || factor.evaluate() != *p || factor.len() != p.length() {
        return Err(Error::InconsistentInput(format!("{factor} is not a reduced word of {p}")));
    }
    if !spreads_contained(p, w) {
        return Err(Error::SpreadsNotContained { pattern: p.to_string(), host: w.to_string() });
    }
    let mut candidates: Vec<GapMeasure> = occurrences(p, w).iter().map(GapMeasure::of).collect();
    candidates.sort_by(|a, b| (a.total, &a.occurrence.positions).cmp(&(b.total, &b.occurrence.positions)));
    let mut last_err = None;
    for start in candidates {
        match reduce_from(p, w, factor, start.occurrence.positions) {
            Ok(e) => return Ok(e),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("spreads contained implies an occurrence"))
}

/// Runs the reduction from one starting occurrence and assembles the word.
fn reduce_from(p: &Permutation, w: &Permutation, factor: &ReducedWord, start: Vec<usize>) -> Result<IsolatedEmbedding> {
    let mut state = Reduction { current: w.clone(), occ: start, moves: Vec::new() };
    let mut seen: HashSet<(Permutation, Vec<usize>)> = HashSet::new();
    while state.round()? {
        if !seen.insert((state.current.clone(), state.occ.clone())) {
            return Err(contradiction(format!("reduction of {w} revisits a state")));
        }
    }

    let k = p.rank();
    let n = w.rank();
    let cur = &state.current;
    let m = GapMeasure::of(&Occurrence::from_positions(cur, state.occ.clone()));
    let (core, shift, offset) = if m.gap_pos == 0 {
        // cur = w'·p' with p' acting on consecutive positions
        let x = state.occ[0] - 1;
        let mut sorted = cur.to_vec();
        sorted[x..x + k].sort_unstable();
        let rest = Permutation::from_one_line(sorted)?;
        let t = lex_least_reduced_word(&rest);
        let b = factor.shifted(x, n)?;
        (t.concat(&b), x, t.len())
    } else {
        // cur = p'·w'' with p' acting on consecutive values
        let x = m.occurrence.values.iter().min().unwrap() - 1;
        let mut rest = cur.to_vec();
        let mut next = x + 1;
        for v in rest.iter_mut() {
            if *v > x && *v <= x + k {
                *v = next;
                next += 1;
            }
        }
        let rest = Permutation::from_one_line(rest)?;
        let t = lex_least_reduced_word(&rest);
        let b = factor.shifted(x, n)?;
        (b.concat(&t), x, 0)
    };

    let mut prefix: Vec<usize> = Vec::new();
    let mut suffix: Vec<usize> = Vec::new();
    for mv in &state.moves {
        match *mv {
            Move::Left(i) => prefix.push(i),
            Move::Right(j) => suffix.push(j),
        }
    }
    suffix.reverse();
    let start = prefix.len() + offset;
    let letters = prefix.into_iter().chain(core.to_vec()).chain(suffix);
    let embedding = IsolatedEmbedding {
        word: ReducedWord::new(letters, n)?,
        shift,
        start,
        end: start + factor.len(),
        interval: (shift + 1, shift + k - 1),
    };
    if !embedding.verify(p, w) {
        return Err(contradiction(format!("constructed word {} fails verification", embedding.word)));
    }
    Ok(embedding)
}

/// A factorization `w = w'·v` with lengths adding in which `w'` carries the
/// pattern in consecutive positions `window_start+1..=window_start+k`, and the
/// values of that window still form an occurrence of the pattern in `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueStableWitness {
    pub prefix: Permutation,
    pub suffix: Permutation,
    pub window_start: usize,
    /// Where the window's values sit in `w`.
    pub occurrence: Occurrence,
}

impl ValueStableWitness {
    /// No rhombus to the right of the window can rest on two of its edges:
    /// `v` has no left descent inside the window.
    pub fn is_isolated(&self) -> bool {
        let k = self.occurrence.len();
        (self.window_start + 1..self.window_start + k).all(|i| !self.suffix.has_left_descent(i))
    }
}

/// All value-stable factorizations, ordered by occurrence positions in `w`,
/// then prefix, then window.
pub fn value_stable_witnesses(p: &Permutation, w: &Permutation) -> Vec<ValueStableWitness> {
    let k = p.rank();
    let n = w.rank();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for prefix in prefixes(w) {
        for x in 0..=n - k {
            let window = &prefix.values()[x..x + k];
            if Permutation::standardize(window) != *p {
                continue;
            }
            let mut positions: Vec<usize> = window.iter().map(|&v| w.position_of(v as usize)).collect();
            positions.sort_unstable();
            let occurrence = Occurrence::from_positions(w, positions);
            if occurrence.validate(p, w).is_err() {
                continue;
            }
            let suffix = prefix.inverse().compose(w);
            out.push(ValueStableWitness { prefix: prefix.clone(), suffix, window_start: x, occurrence });
        }
    }
    out.sort_by(|a, b| {
        (&a.occurrence.positions, &a.prefix, a.window_start).cmp(&(&b.occurrence.positions, &b.prefix, b.window_start))
    });
    out
}

/// The value-stable occurrence with lexicographically least positions in `w`,
/// or `None` when `(p, w)` is not value-stable.
pub fn is_value_stable(p: &Permutation, w: &Permutation) -> Option<Occurrence> {
    value_stable_witnesses(p, w).into_iter().next().map(|v| v.occurrence)
}
