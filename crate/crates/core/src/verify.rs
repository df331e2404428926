//! Exhaustive verification suites over all permutations up to a rank.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{braid_graph, commutation_classes, count_commutation_classes};
use crate::elnitsky::{hexagon_flips, mono, mono_word, tiling_to_class, tilings, Tiling};
use crate::embedding::{construct_isolated_embedding, embeddable_patterns};
use crate::enumeration::{
    catalan_refinement_check, catalan_summands, count_231_by_length, enumerate_avoiders, formula_231,
    in_suppressed_class, partition_count, partition_of_perm, partitions, pi_of_partition, reading_word, table_132,
    table_132_brute,
};
use crate::error::{Error, Result};
use crate::pattern::{count_pattern, occurrences, spreads_contained, Occurrence};
use crate::permutation::Permutation;
use crate::word::{count_reduced_words, enumerate_reduced_words, has_unique_reduced_word};

pub const EXPECTED_132_TABLE: [[u128; 12]; 12] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 2, 3, 3, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 2, 2, 6, 7, 6, 4, 1, 0],
    [0, 0, 0, 0, 0, 2, 2, 4, 8, 12, 15, 17],
    [0, 0, 0, 0, 0, 0, 2, 2, 4, 6, 12, 15],
    [0, 0, 0, 0, 0, 0, 0, 2, 2, 4, 6, 10],
    [0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 4, 6],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2],
];

const MAX_EXAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    TheoremMain,
    RMono,
    CMono,
    EqualR,
    EqualC,
    Elnitsky,
    Bijection132,
    Table1,
    Catalan,
    S6231,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::TheoremMain,
        Suite::RMono,
        Suite::CMono,
        Suite::EqualR,
        Suite::EqualC,
        Suite::Elnitsky,
        Suite::Bijection132,
        Suite::Table1,
        Suite::Catalan,
        Suite::S6231,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremMain => "theorem-main",
            Suite::RMono => "r-mono",
            Suite::CMono => "c-mono",
            Suite::EqualR => "equal-r",
            Suite::EqualC => "equal-c",
            Suite::Elnitsky => "elnitsky",
            Suite::Bijection132 => "bijection-132",
            Suite::Table1 => "table1",
            Suite::Catalan => "catalan",
            Suite::S6231 => "s6-231",
        }
    }

    pub fn run(self, max_n: usize) -> SuiteReport {
        let tally = match self {
            Suite::TheoremMain => theorem_main(max_n),
            Suite::RMono => r_monotone(max_n),
            Suite::CMono => c_monotone(max_n),
            Suite::EqualR => equal_r(max_n),
            Suite::EqualC => equal_c(max_n),
            Suite::Elnitsky => elnitsky(max_n),
            Suite::Bijection132 => bijection_132(),
            Suite::Table1 => table1(),
            Suite::Catalan => catalan_suite(),
            Suite::S6231 => s6_231(),
        };
        tally.report(self.name(), max_n)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Suites named on the command line; `all` expands to every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        s.split(',').map(str::parse).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_n: usize,
    pub checked: u64,
    pub violations: u64,
    pub examples: Vec<String>,
    pub passed: bool,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} (max-n {}): {} checks, {} violations",
            self.suite, self.max_n, self.checked, self.violations
        )?;
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    violations: u64,
    examples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations += other.violations;
        let room = MAX_EXAMPLES - self.examples.len();
        self.examples.extend(other.examples.into_iter().take(room));
        self
    }

    fn report(self, suite: &str, max_n: usize) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            max_n,
            checked: self.checked,
            violations: self.violations,
            passed: self.violations == 0,
            examples: self.examples,
        }
    }
}

fn hosts(max_n: usize) -> Vec<Permutation> {
    (1..=max_n).flat_map(Permutation::all).collect()
}

/// Runs `f` on every host of rank `1..=max_n` in parallel; merging follows host order.
fn over_hosts(max_n: usize, f: impl Fn(&Permutation, &mut Tally) + Sync) -> Tally {
    hosts(max_n)
        .par_iter()
        .map(|w| {
            let mut t = Tally::default();
            f(w, &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

/// Every pattern of rank at least 1 contained in `w`.
pub fn contained_patterns(w: &Permutation) -> BTreeSet<Permutation> {
    let n = w.rank();
    (1u32..1 << n)
        .map(|mask| {
            let seq: Vec<u8> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| w.values()[i]).collect();
            Permutation::standardize(&seq)
        })
        .collect()
}

#[derive(Clone, Copy)]
struct Stats {
    words: u128,
    classes: u128,
    three_two_one: usize,
}

fn stats_table(max_n: usize) -> HashMap<Permutation, Stats> {
    let three_two_one = Permutation::from_values_unchecked(vec![3, 2, 1]);
    hosts(max_n)
        .into_par_iter()
        .map(|w| {
            let s = Stats {
                words: count_reduced_words(&w),
                classes: count_commutation_classes(&w),
                three_two_one: count_pattern(&three_two_one, &w),
            };
            (w, s)
        })
        .collect()
}

fn over_pairs(max_n: usize, f: impl Fn(&Permutation, &Stats, &Permutation, &Stats, &mut Tally) + Sync) -> Tally {
    let stats = stats_table(max_n);
    over_hosts(max_n, |w, t| {
        let sw = &stats[w];
        for p in contained_patterns(w) {
            f(&p, &stats[&p], w, sw, t);
        }
    })
}

fn r_monotone(max_n: usize) -> Tally {
    over_pairs(max_n, |p, sp, w, sw, t| {
        t.check(sp.words <= sw.words, || format!("|R({p})| = {} > |R({w})| = {}", sp.words, sw.words));
    })
}

fn c_monotone(max_n: usize) -> Tally {
    over_pairs(max_n, |p, sp, w, sw, t| {
        t.check(sp.classes <= sw.classes, || format!("|C({p})| = {} > |C({w})| = {}", sp.classes, sw.classes));
    })
}

/// Whether `w` has a `p`-occurrence cut by the fixed points outside it into
/// blocks of consecutive values, with every letter outside it fixed.
pub fn has_block_occurrence(p: &Permutation, w: &Permutation) -> bool {
    occurrences(p, w).iter().any(|occ| is_block_occurrence(occ, w))
}

fn is_block_occurrence(occ: &Occurrence, w: &Permutation) -> bool {
    (1..=w.rank()).filter(|i| !occ.positions.contains(i)).all(|f| {
        w.at(f) == f
            && occ
                .positions
                .iter()
                .zip(&occ.values)
                .all(|(&pos, &val)| (pos < f) == (val < f))
    })
}

fn equal_r(max_n: usize) -> Tally {
    let mut tally = over_pairs(max_n, |p, sp, w, sw, t| {
        let same_length = p.length() == w.length();
        if sw.words > 1 {
            t.check((sp.words == sw.words) == same_length, || {
                format!("{p} ≺ {w}: |R| {} vs {}, lengths {} vs {}", sp.words, sw.words, p.length(), w.length())
            });
        }
        if same_length {
            t.check(sp.words == sw.words, || format!("{p} ≺ {w}: equal lengths but |R| {} vs {}", sp.words, sw.words));
        }
        t.check(has_block_occurrence(p, w) == same_length, || format!("{p} ≺ {w}: block characterization"));
    });
    for w in hosts(max_n) {
        let unique = count_reduced_words(&w) == 1;
        tally.check(has_unique_reduced_word(&w) == unique, || format!("{w}: unique-word shape test"));
    }
    tally
}

fn equal_c(max_n: usize) -> Tally {
    over_pairs(max_n, |p, sp, w, sw, t| {
        t.check((sp.classes == sw.classes) == (sp.three_two_one == sw.three_two_one), || {
            format!(
                "{p} ≺ {w}: |C| {} vs {}, 321-counts {} vs {}",
                sp.classes, sw.classes, sp.three_two_one, sw.three_two_one
            )
        });
    })
}

fn theorem_main(max_n: usize) -> Tally {
    let patterns = hosts(max_n.min(4));
    over_hosts(max_n, |w, t| {
        let embeddable = embeddable_patterns(w, 4);
        for p in patterns.iter().filter(|p| p.rank() <= w.rank()) {
            let has_factor = embeddable.contains(p);
            let spreads = spreads_contained(p, w);
            t.check(has_factor == spreads, || {
                if has_factor {
                    format!("{p} in {w}: isolated factor without spreads")
                } else {
                    format!("{p} in {w}: spreads contained but no isolated factor")
                }
            });
            if spreads {
                let built = construct_isolated_embedding(p, w);
                t.check(built.as_ref().is_ok_and(|e| e.verify(p, w)), || match built {
                    Ok(_) => format!("{p} in {w}: constructed witness fails verification"),
                    Err(e) => format!("{p} in {w}: construction failed: {e}"),
                });
            }
        }
    })
}

fn elnitsky(max_n: usize) -> Tally {
    let mut tally = over_hosts(max_n, |w, t| {
        let (Ok(classes), Ok(ts), Ok(g)) = (commutation_classes(w), tilings(w), braid_graph(w)) else {
            t.check(false, || format!("{w}: enumeration failed"));
            return;
        };
        let distinct: BTreeSet<&Tiling> = ts.iter().collect();
        t.check(ts.len() == classes.len() && distinct.len() == ts.len(), || {
            format!("{w}: {} tilings, {} classes", ts.len(), classes.len())
        });
        for (c, tiling) in classes.iter().zip(&ts) {
            let back = tiling_to_class(tiling);
            t.check(back.is_ok_and(|b| b.canonical == c.canonical), || format!("{w}: tiling of {} round trip", c.canonical));
        }
        let mut edges = BTreeSet::new();
        for (i, tiling) in ts.iter().enumerate() {
            for f in hexagon_flips(tiling) {
                if let Some(j) = ts.iter().position(|x| *x == f) {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
        t.check(edges == g.edges, || format!("{w}: flip graph differs from the braid graph"));
        for p in contained_patterns(w) {
            let (Ok(rp), Ok(tp)) = (enumerate_reduced_words(&p), tilings(&p)) else { continue };
            for occ in occurrences(&p, w) {
                mono_checks(&p, w, &occ, &rp, &tp, t);
            }
        }
    });
    let (p, w) = (Permutation::from_values_unchecked(vec![5, 2, 1, 4, 3]), Permutation::from_values_unchecked(vec![6, 2, 1, 3, 5, 7, 4]));
    let occ = Occurrence::from_positions(&w, vec![1, 2, 3, 5, 7]);
    for tp in tilings(&p).unwrap_or_default() {
        let image = mono(&p, &w, &occ, &tp);
        tally.check(
            image.as_ref().is_ok_and(|i| i.len() == w.length() && tiling_to_class(i).is_ok_and(|c| c.canonical.evaluate() == w)),
            || format!("{p} ≺ {w}: MONO image is not a tiling of X({w})"),
        );
    }
    tally
}

fn mono_checks(
    p: &Permutation,
    w: &Permutation,
    occ: &Occurrence,
    rp: &[crate::word::ReducedWord],
    tp: &[Tiling],
    t: &mut Tally,
) {
    let mut words = BTreeSet::new();
    for s in rp {
        match mono_word(p, w, occ, s) {
            Ok(out) => {
                t.check(out.is_reduced() && out.evaluate() == *w, || format!("{p} ≺ {w} via {s}: not a reduced word of {w}"));
                words.insert(out);
            }
            Err(e) => t.check(false, || format!("{p} ≺ {w} via {s}: {e}")),
        }
    }
    t.check(words.len() == rp.len(), || format!("{p} ≺ {w} at {:?}: MONO not injective on words", occ.positions));
    let images: BTreeSet<Tiling> = tp.iter().filter_map(|tiling| mono(p, w, occ, tiling).ok()).collect();
    t.check(images.len() == tp.len(), || format!("{p} ≺ {w} at {:?}: MONO not injective on tilings", occ.positions));
}

fn bijection_132() -> Tally {
    let mut t = Tally::default();
    let p132 = Permutation::from_values_unchecked(vec![1, 3, 2]);
    let p213 = Permutation::from_values_unchecked(vec![2, 1, 3]);
    for l in 0..=12 {
        let lambdas = partitions(l);
        let images: BTreeSet<Permutation> = lambdas.iter().map(pi_of_partition).collect();
        t.check(images.len() == lambdas.len(), || format!("π not injective on partitions of {l}"));
        t.check(images.len() as u128 == partition_count(l), || format!("|𝔖(132;{l})| ≠ 𝔭({l})"));
        for lambda in &lambdas {
            let w = pi_of_partition(lambda);
            t.check(w.length() == l && in_suppressed_class(&w, &p132), || format!("π{lambda} = {w} is not in 𝔖(132;{l})"));
            t.check(partition_of_perm(&w).as_ref() == Ok(lambda), || format!("round trip fails at {lambda}"));
        }
        if l <= 10 {
            for k in 0..=l {
                let with_k = images.iter().filter(|w| w.rank() > 0 && w.at(1) == k + 1).count();
                let expected = lambdas.iter().filter(|x| x.len() == k).count();
                let with_k = if l == 0 && k == 0 { 1 } else { with_k };
                t.check(with_k == expected, || format!("𝔭_{k}({l}) = {expected} but {with_k} avoiders start with {}", k + 1));
            }
        }
        if l <= 7 {
            let brute = enumerate_avoiders(&p132, l, None).unwrap_or_default();
            t.check(brute == images, || format!("brute-force 𝔖(132;{l}) differs from the image of π"));
            let mirror = enumerate_avoiders(&p213, l, None).unwrap_or_default();
            t.check(mirror.len() == brute.len(), || format!("|𝔖(213;{l})| = {} ≠ {}", mirror.len(), brute.len()));
        }
        if l <= 6 {
            let beyond = Permutation::all(l + 2).filter(|w| w.length() == l && in_suppressed_class(w, &p132)).count();
            t.check(beyond == 0, || format!("𝔖(132;{l}) has members of rank {}", l + 2));
        }
    }
    for l in 0..=15 {
        for lambda in partitions(l) {
            t.check(reading_word(&lambda).is_reduced(), || format!("read{lambda} is not reduced"));
        }
    }
    t
}

fn table1() -> Tally {
    let mut t = Tally::default();
    let table = table_132(11, 11);
    let brute = table_132_brute(7, 11);
    for d in 0..=11 {
        for l in 0..=11 {
            let expected = EXPECTED_132_TABLE[d][l];
            t.check(table[d][l] == expected, || format!("cell d={d}, ℓ={l}: {} ≠ {expected}", table[d][l]));
            if l <= 7 {
                t.check(brute[d][l] == expected, || format!("brute cell d={d}, ℓ={l}: {} ≠ {expected}", brute[d][l]));
            }
        }
    }
    t
}

fn catalan_suite() -> Tally {
    let mut t = Tally::default();
    for n in 1..=10 {
        t.check(catalan_refinement_check(n), || format!("refinement sum ≠ C_{n}"));
    }
    let summands = catalan_summands(4);
    t.check(summands == "(1) + (1) + (2 + 1) + (2 + 3 + 3 + 1)", || format!("n = 4 summands {summands}"));
    t
}

fn s6_231() -> Tally {
    let cases: Vec<(usize, usize)> = (4..=8).flat_map(|n| (1..=5).map(move |l| (n, l))).collect();
    cases
        .par_iter()
        .map(|&(n, l)| {
            let mut t = Tally::default();
            let brute = count_231_by_length(n, l) as i128;
            let formula = formula_231(n, l);
            t.check(formula == Ok(brute), || format!("n={n}, ℓ={l}: brute {brute}, formula {formula:?}"));
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

pub fn check_r_monotone(n_max: usize) -> SuiteReport {
    Suite::RMono.run(n_max)
}

pub fn check_c_monotone(n_max: usize) -> SuiteReport {
    Suite::CMono.run(n_max)
}

/// Both equality theorems and the block characterization, as one report.
pub fn check_equality_theorems(n_max: usize) -> SuiteReport {
    equal_r(n_max).merge(equal_c(n_max)).report("equality", n_max)
}
