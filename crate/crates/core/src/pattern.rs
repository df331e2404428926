//! Classical and barred pattern containment, and the spreads of a pattern.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// An occurrence of a pattern in a host: strictly increasing 1-based positions
/// together with the host values found there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Occurrence {
    pub positions: Vec<usize>,
    pub values: Vec<usize>,
}

impl Occurrence {
    pub fn from_positions(host: &Permutation, positions: Vec<usize>) -> Self {
        let values = positions.iter().map(|&i| host.at(i)).collect();
        Occurrence { positions, values }
    }

    /// `⟨p(j)⟩`, the host value playing the role of `p(j)`.
    pub fn value_at(&self, j: usize) -> usize {
        self.values[j - 1]
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Checks that these positions carry a `p`-pattern in `host`.
    pub fn validate(&self, pattern: &Permutation, host: &Permutation) -> Result<()> {
        let err = || Error::NotAnOccurrence {
            pattern: pattern.to_string(),
            host: host.to_string(),
            positions: self.positions.clone(),
        };
        if self.positions.len() != pattern.rank()
            || self.positions.windows(2).any(|w| w[0] >= w[1])
            || self.positions.iter().any(|&i| i == 0 || i > host.rank())
        {
            return Err(err());
        }
        let values: Vec<usize> = self.positions.iter().map(|&i| host.at(i)).collect();
        if values != self.values || Permutation::standardize(&values) != *pattern {
            return Err(err());
        }
        Ok(())
    }
}

/// Depth-first search over pattern occurrences in lexicographic order of
/// positions, pruning on partial order-isomorphism.
fn search<F>(p: &Permutation, w: &Permutation, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let k = p.rank();
    let n = w.rank();
    if k > n {
        return ControlFlow::Continue(());
    }
    let pv = p.values();
    let wv = w.values();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);

    fn rec<F>(
        pv: &[u8],
        wv: &[u8],
        start: usize,
        chosen: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let t = chosen.len();
        if t == pv.len() {
            let positions: Vec<usize> = chosen.iter().map(|&i| i + 1).collect();
            return visit(&positions);
        }
        let remaining = pv.len() - t;
        for i in start..=wv.len() - remaining {
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(s, &ci)| (pv[s] < pv[t]) == (wv[ci] < wv[i]));
            if consistent {
                chosen.push(i);
                rec(pv, wv, i + 1, chosen, visit)?;
                chosen.pop();
            }
        }
        ControlFlow::Continue(())
    }

    rec(pv, wv, 0, &mut chosen, visit)
}

/// All occurrences of `p` in `w`, in lexicographic order of positions.
pub fn occurrences(p: &Permutation, w: &Permutation) -> Vec<Occurrence> {
    let mut out = Vec::new();
    let _ = search(p, w, &mut |pos| {
        out.push(Occurrence::from_positions(w, pos.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

pub fn count_pattern(p: &Permutation, w: &Permutation) -> usize {
    let mut count = 0;
    let _ = search(p, w, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// `p ≺ w`.
pub fn contains(p: &Permutation, w: &Permutation) -> bool {
    search(p, w, &mut |_| ControlFlow::Break(())).is_break()
}

pub fn avoids(w: &Permutation, p: &Permutation) -> bool {
    !contains(p, w)
}

/// A permutation with some of its positions decorated by bars.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BarredPattern {
    pub full: Permutation,
    /// 1-based positions of the barred letters in `full`.
    pub barred: BTreeSet<usize>,
}

impl BarredPattern {
    pub fn new(full: Permutation, barred: BTreeSet<usize>) -> Result<Self> {
        if barred.iter().any(|&i| i == 0 || i > full.rank()) {
            return Err(Error::InconsistentInput(format!(
                "barred positions {barred:?} outside 1..{}",
                full.rank()
            )));
        }
        Ok(BarredPattern { full, barred })
    }

    pub fn unbarred(p: Permutation) -> Self {
        BarredPattern { full: p, barred: BTreeSet::new() }
    }

    fn kept_indices(&self) -> Vec<usize> {
        (1..=self.full.rank()).filter(|i| !self.barred.contains(i)).collect()
    }

    /// The pattern formed by the undecorated letters, renumbered.
    pub fn undecorated(&self) -> Permutation {
        let kept: Vec<usize> = self.kept_indices().iter().map(|&i| self.full.at(i)).collect();
        Permutation::standardize(&kept)
    }
}

impl fmt::Display for BarredPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = (1..=self.full.rank()).map(|i| {
            let marker = if self.barred.contains(&i) { "*" } else { "" };
            format!("{}{marker}", self.full.at(i))
        });
        write!(f, "{}", letters.format(" "))
    }
}

impl fmt::Debug for BarredPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BarredPattern({self})")
    }
}

impl FromStr for BarredPattern {
    type Err = Error;

    /// Accepts `"3 2* 1 4"`, `"3,2*,1,4"` or the compact `"32*14"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let tokens: Vec<String> = if s.contains([' ', ',']) {
            s.split([' ', ',']).filter(|t| !t.is_empty()).map(str::to_string).collect()
        } else {
            let mut tokens: Vec<String> = Vec::new();
            for c in s.trim().chars() {
                if c == '*' {
                    tokens.last_mut().ok_or_else(bad)?.push('*');
                } else {
                    tokens.push(c.to_string());
                }
            }
            tokens
        };
        let mut values = Vec::new();
        let mut barred = BTreeSet::new();
        for (i, tok) in tokens.iter().enumerate() {
            let digits = tok.strip_suffix('*');
            if digits.is_some() {
                barred.insert(i + 1);
            }
            values.push(digits.unwrap_or(tok).parse::<usize>().map_err(|_| bad())?);
        }
        BarredPattern::new(Permutation::from_one_line(values)?, barred)
    }
}

/// `q̄ ≺ w`: some occurrence of the undecorated portion extends to no
/// occurrence of the full pattern with the barred letters in their designated
/// relative positions and values.
pub fn contains_barred(qbar: &BarredPattern, w: &Permutation) -> bool {
    let base = qbar.undecorated();
    if qbar.barred.is_empty() {
        return contains(&base, w);
    }
    let kept: Vec<usize> = qbar.kept_indices().iter().map(|&i| i - 1).collect();
    let mut extended: HashSet<Vec<usize>> = HashSet::new();
    let _ = search(&qbar.full, w, &mut |pos| {
        extended.insert(kept.iter().map(|&t| pos[t]).collect());
        ControlFlow::Continue(())
    });
    search(&base, w, &mut |pos| {
        if extended.contains(pos) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    })
    .is_break()
}

/// The set `p⁺`: every way of widening a 2143-pattern of `p` into 21354 by a
/// barred letter placed between the `1` and the `4` in position and between the
/// `2` and the `3` in value. A 2143-avoiding `p` is its own only spread.
pub fn spreads(p: &Permutation) -> BTreeSet<BarredPattern> {
    let pattern_2143 = Permutation::from_values_unchecked(vec![2, 1, 4, 3]);
    let mut out = BTreeSet::new();
    for occ in occurrences(&pattern_2143, p) {
        let (pos_1, pos_4) = (occ.positions[1], occ.positions[2]);
        let (val_2, val_3) = (occ.values[0], occ.values[3]);
        // the new letter goes in front of position `slot` and takes value `v + 1`
        // after every value above `v` is raised by one
        for slot in pos_1 + 1..=pos_4 {
            for v in val_2..val_3 {
                let mut seq: Vec<usize> =
                    p.to_vec().into_iter().map(|x| if x > v { x + 1 } else { x }).collect();
                seq.insert(slot - 1, v + 1);
                let full = Permutation::from_one_line(seq).expect("insertion keeps a bijection");
                out.insert(BarredPattern { full, barred: BTreeSet::from([slot]) });
            }
        }
    }
    if out.is_empty() {
        out.insert(BarredPattern::unbarred(p.clone()));
    }
    out
}

/// `p⁺ ⪷ w`.
pub fn spreads_contained(p: &Permutation, w: &Permutation) -> bool {
    spreads(p).iter().all(|q| contains_barred(q, w))
}
