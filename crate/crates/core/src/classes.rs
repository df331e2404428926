//! Commutation classes `C(w)` and the braid graph `G(w)` on them.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::permutation::Permutation;
use crate::word::{enumerate_reduced_words_capped, ReducedWord, DEFAULT_MAX_WORDS};

/// A class of reduced words closed under commutations `σ_iσ_j = σ_jσ_i`,
/// `|i-j| > 1`, named by its lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CommutationClass {
    pub canonical: ReducedWord,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<ReducedWord>>,
}

impl CommutationClass {
    pub fn contains(&self, word: &ReducedWord) -> bool {
        match &self.members {
            Some(m) => m.binary_search(word).is_ok(),
            None => class_of_word(word).canonical == self.canonical,
        }
    }
}

/// Words reachable from `letters` by one commutation.
pub(crate) fn commutation_neighbors(letters: &[u8]) -> impl Iterator<Item = Vec<u8>> + '_ {
    (0..letters.len().saturating_sub(1))
        .filter(move |&t| letters[t].abs_diff(letters[t + 1]) > 1)
        .map(move |t| {
            let mut v = letters.to_vec();
            v.swap(t, t + 1);
            v
        })
}

/// Words reachable from `letters` by one braid move `i(i+1)i ↔ (i+1)i(i+1)`.
pub(crate) fn braid_neighbors(letters: &[u8]) -> impl Iterator<Item = Vec<u8>> + '_ {
    (0..letters.len().saturating_sub(2))
        .filter(move |&t| letters[t] == letters[t + 2] && letters[t].abs_diff(letters[t + 1]) == 1)
        .map(move |t| {
            let mut v = letters.to_vec();
            let (a, b) = (letters[t], letters[t + 1]);
            v[t] = b;
            v[t + 1] = a;
            v[t + 2] = b;
            v
        })
}

/// The commutation class of a single word, by breadth-first closure.
pub fn class_of_word(word: &ReducedWord) -> CommutationClass {
    let start = word.letters().to_vec();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for t in commutation_neighbors(&s) {
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let members: Vec<ReducedWord> =
        seen.into_iter().map(|l| ReducedWord::from_raw(l, word.rank())).collect();
    CommutationClass { canonical: members[0].clone(), size: members.len(), members: Some(members) }
}

struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra as usize].cmp(&self.rank[rb as usize]) {
            std::cmp::Ordering::Less => self.parent[ra as usize] = rb,
            std::cmp::Ordering::Greater => self.parent[rb as usize] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb as usize] = ra;
                self.rank[ra as usize] += 1;
            }
        }
    }
}

/// `R(w)` split into commutation classes, plus the class index of every word
/// (words in lexicographic order).
struct Partitioned {
    words: Vec<ReducedWord>,
    class_of: Vec<usize>,
    classes: Vec<CommutationClass>,
}

fn partition_words(w: &Permutation, cap: u128) -> Result<Partitioned> {
    let words = enumerate_reduced_words_capped(w, cap)?;
    let index: HashMap<&[u8], u32> =
        words.iter().enumerate().map(|(i, s)| (s.letters(), i as u32)).collect();
    let mut uf = UnionFind::new(words.len());
    for (i, s) in words.iter().enumerate() {
        for t in commutation_neighbors(s.letters()) {
            uf.union(i as u32, index[t.as_slice()]);
        }
    }
    // Words are sorted, so the first word met in each component is its minimum
    // and classes come out ordered by canonical word.
    let mut root_to_class: HashMap<u32, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(words.len());
    let mut groups: Vec<Vec<ReducedWord>> = Vec::new();
    for (i, s) in words.iter().enumerate() {
        let root = uf.find(i as u32);
        let c = *root_to_class.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[c].push(s.clone());
        class_of.push(c);
    }
    let classes = groups
        .into_iter()
        .map(|members| CommutationClass {
            canonical: members[0].clone(),
            size: members.len(),
            members: Some(members),
        })
        .collect();
    Ok(Partitioned { words, class_of, classes })
}

/// `C(w)`, ordered by canonical word, with members materialized.
pub fn commutation_classes(w: &Permutation) -> Result<Vec<CommutationClass>> {
    commutation_classes_capped(w, DEFAULT_MAX_WORDS)
}

pub fn commutation_classes_capped(w: &Permutation, cap: u128) -> Result<Vec<CommutationClass>> {
    Ok(partition_words(w, cap)?.classes)
}

/// `|C(w)|` without enumerating words, by counting Cartier–Foata normal forms:
/// sequences of nonempty sets of pairwise commuting letters in which each
/// letter of a step is equal or adjacent to some letter of the previous step.
pub fn count_commutation_classes(w: &Permutation) -> u128 {
    fn rec(w: &Permutation, prev: u64, memo: &mut HashMap<(Permutation, u64), u128>) -> u128 {
        if w.is_identity() {
            return 1;
        }
        if let Some(&c) = memo.get(&(w.clone(), prev)) {
            return c;
        }
        let allowed: Vec<usize> = w
            .left_descents()
            .into_iter()
            .filter(|&i| prev == u64::MAX || prev & (0b111 << (i - 1)) != 0)
            .collect();
        let mut total = 0;
        // every nonempty subset of `allowed` with no two adjacent letters
        for mask in 1u64..(1 << allowed.len()) {
            let set: Vec<usize> =
                (0..allowed.len()).filter(|b| mask >> b & 1 == 1).map(|b| allowed[b]).collect();
            if set.windows(2).any(|p| p[1] - p[0] < 2) {
                continue;
            }
            let mut v = w.clone();
            let mut step = 0u64;
            for &i in &set {
                v.swap_values(i);
                step |= 1 << i;
            }
            total += rec(&v, step, memo);
        }
        memo.insert((w.clone(), prev), total);
        total
    }
    rec(w, u64::MAX, &mut HashMap::new())
}

/// `G(w)`: one vertex per commutation class, an edge whenever some members of
/// two classes differ by one braid move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidGraph {
    pub vertices: Vec<CommutationClass>,
    /// Pairs of vertex indices, smaller index first.
    pub edges: BTreeSet<(usize, usize)>,
}

impl BraidGraph {
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let adjacency: Vec<Vec<usize>> = (0..n).map(|v| self.neighbors(v)).collect();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Bipartite with sides given by the parity of the letter sum.
    pub fn is_bipartite(&self) -> bool {
        self.edges.iter().all(|&(a, b)| {
            self.vertices[a].canonical.letter_sum() % 2 != self.vertices[b].canonical.letter_sum() % 2
        })
    }

    /// One line per vertex: `canonical: neighbor neighbor ...`.
    pub fn adjacency_text(&self) -> String {
        let mut out = String::new();
        for (v, class) in self.vertices.iter().enumerate() {
            let nbrs = self.neighbors(v).iter().map(|&u| self.vertices[u].canonical.to_string()).join(" ");
            let _ = writeln!(out, "{}: {}", class.canonical, nbrs);
        }
        out
    }
}

pub fn braid_graph(w: &Permutation) -> Result<BraidGraph> {
    braid_graph_capped(w, DEFAULT_MAX_WORDS)
}

pub fn braid_graph_capped(w: &Permutation, cap: u128) -> Result<BraidGraph> {
    let Partitioned { words, class_of, classes } = partition_words(w, cap)?;
    let index: HashMap<&[u8], usize> =
        words.iter().enumerate().map(|(i, s)| (s.letters(), i)).collect();
    let mut edges = BTreeSet::new();
    for (i, s) in words.iter().enumerate() {
        for t in braid_neighbors(s.letters()) {
            let (a, b) = (class_of[i], class_of[index[t.as_slice()]]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Ok(BraidGraph { vertices: classes, edges })
}
