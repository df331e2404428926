//! Elnitsky's polygon `X(w)`, its rhombic tilings, and paw tilings.
//!
//! A rhombus is stored combinatorially: its two side labels and the set of
//! labels on any path from the top vertex of `X(w)` to its top vertex. That
//! triple does not depend on how the tiling was labeled, so a tiling is a set
//! of tiles and equality of tilings is equality of sets.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classes::{class_of_word, commutation_classes_capped, CommutationClass};
use crate::embedding::value_stable_witnesses;
use crate::error::{Error, Result};
use crate::pattern::Occurrence;
use crate::permutation::Permutation;
use crate::word::{lex_least_reduced_word, ReducedWord, DEFAULT_MAX_WORDS};

/// Direction of a side labeled `v` in `X(w)` for `w` of rank `n`, y pointing up.
pub fn direction(v: usize, n: usize) -> (f64, f64) {
    let angle = -std::f64::consts::PI + (v as f64 - 0.5) * std::f64::consts::PI / n as f64;
    (angle.cos(), angle.sin())
}

fn path_point(labels: impl IntoIterator<Item = usize>, n: usize) -> (f64, f64) {
    labels.into_iter().fold((0.0, 0.0), |(x, y), v| {
        let (dx, dy) = direction(v, n);
        (x + dx, y + dy)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub host: Permutation,
    /// Labels down the left boundary: `1..=n`.
    pub left_labels: Vec<usize>,
    /// Labels down the right boundary: `w(1), …, w(n)`.
    pub right_labels: Vec<usize>,
    pub left_vertices: Vec<(f64, f64)>,
    pub right_vertices: Vec<(f64, f64)>,
}

pub fn polygon(w: &Permutation) -> Polygon {
    let n = w.rank();
    let left_labels: Vec<usize> = (1..=n).collect();
    let right_labels = w.to_vec();
    let vertices = |labels: &[usize]| (0..=n).map(|i| path_point(labels[..i].iter().copied(), n)).collect();
    Polygon {
        host: w.clone(),
        left_vertices: vertices(&left_labels),
        right_vertices: vertices(&right_labels),
        left_labels,
        right_labels,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub high: usize,
    pub low: usize,
    pub anchor: BTreeSet<usize>,
}

impl Tile {
    pub fn vertices(&self, n: usize) -> [(f64, f64); 4] {
        let top = path_point(self.anchor.iter().copied(), n);
        let (hx, hy) = direction(self.high, n);
        let (lx, ly) = direction(self.low, n);
        [top, (top.0 + hx, top.1 + hy), (top.0 + hx + lx, top.1 + hy + ly), (top.0 + lx, top.1 + ly)]
    }
}

/// A tile with its place in one labeling: `label` counts from the right
/// border and `position` is the generator the tile contributes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledTile {
    pub label: usize,
    pub position: usize,
    pub tile: Tile,
}

/// Tiles of the tiling attached to `word`, labeled from the right border.
pub fn labeled_tiles(word: &ReducedWord) -> Vec<LabeledTile> {
    let mut cur = word.evaluate();
    let mut out = Vec::with_capacity(word.len());
    for (label, &j) in word.letters().iter().rev().enumerate() {
        let j = j as usize;
        out.push(LabeledTile {
            label: label + 1,
            position: j,
            tile: Tile { high: cur.at(j), low: cur.at(j + 1), anchor: (1..j).map(|i| cur.at(i)).collect() },
        });
        cur.swap_positions(j);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tiling {
    pub host: Permutation,
    pub tiles: BTreeSet<Tile>,
}

impl Tiling {
    pub fn from_word(word: &ReducedWord) -> Tiling {
        Tiling { host: word.evaluate(), tiles: labeled_tiles(word).into_iter().map(|t| t.tile).collect() }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Some reduced word read off a labeling; errors if the tiles do not tile
    /// `X(host)`.
    pub fn some_word(&self) -> Result<ReducedWord> {
        let n = self.host.rank();
        let mut cur = self.host.clone();
        let mut remaining: HashSet<&Tile> = self.tiles.iter().collect();
        let mut letters = Vec::with_capacity(self.tiles.len());
        while !remaining.is_empty() {
            let found = (1..n).find(|&j| {
                cur.at(j) > cur.at(j + 1)
                    && remaining.contains(&Tile {
                        high: cur.at(j),
                        low: cur.at(j + 1),
                        anchor: (1..j).map(|i| cur.at(i)).collect(),
                    })
            });
            let Some(j) = found else {
                return Err(Error::InconsistentInput(format!(
                    "no tile can be labeled next along the border {}",
                    cur
                )));
            };
            let tile = Tile { high: cur.at(j), low: cur.at(j + 1), anchor: (1..j).map(|i| cur.at(i)).collect() };
            remaining.remove(&tile);
            letters.push(j);
            cur.swap_positions(j);
        }
        if !cur.is_identity() {
            return Err(Error::InconsistentInput(format!("tiles leave {} uncovered", cur)));
        }
        letters.reverse();
        ReducedWord::new(letters, n)
    }

    /// The labeling that reads off the canonical word of the tiling's class.
    pub fn labeled(&self) -> Result<Vec<LabeledTile>> {
        Ok(labeled_tiles(&tiling_to_class(self)?.canonical))
    }
}

pub fn tiling_to_class(t: &Tiling) -> Result<CommutationClass> {
    Ok(class_of_word(&t.some_word()?))
}

pub fn class_to_tiling(c: &CommutationClass) -> Tiling {
    Tiling::from_word(&c.canonical)
}

/// One tiling per commutation class, in the order of the classes' canonical words.
pub fn tilings(w: &Permutation) -> Result<Vec<Tiling>> {
    tilings_capped(w, DEFAULT_MAX_WORDS)
}

pub fn tilings_capped(w: &Permutation, cap: u128) -> Result<Vec<Tiling>> {
    Ok(commutation_classes_capped(w, cap)?.iter().map(class_to_tiling).collect())
}

fn with(set: &BTreeSet<usize>, v: usize) -> BTreeSet<usize> {
    let mut s = set.clone();
    s.insert(v);
    s
}

/// Tilings obtained by retiling one sub-hexagon.
///
/// For labels `a > b > c` and anchor `M` the two tilings of the hexagon are
/// `{ab@M, ac@M+b, bc@M}` and `{bc@M+a, ac@M, ab@M+c}`.
pub fn hexagon_flips(t: &Tiling) -> Vec<Tiling> {
    let n = t.host.rank();
    let tile = |high, low, anchor| Tile { high, low, anchor };
    let mut out = BTreeSet::new();
    for ab in &t.tiles {
        let (a, m) = (ab.high, &ab.anchor);
        // ab@M starts the first form, ac@M the second
        for c in 1..=n {
            let b = ab.low;
            if c < b {
                let first = [ab.clone(), tile(a, c, with(m, b)), tile(b, c, m.clone())];
                if first[1..].iter().all(|x| t.tiles.contains(x)) {
                    let second = [tile(b, c, with(m, a)), tile(a, c, m.clone()), tile(a, b, with(m, c))];
                    out.insert(replace(t, &first, &second));
                }
            }
            let (lo, mid) = (ab.low, c);
            if lo < mid && mid < a {
                let second = [tile(mid, lo, with(m, a)), ab.clone(), tile(a, mid, with(m, lo))];
                if t.tiles.contains(&second[0]) && t.tiles.contains(&second[2]) {
                    let first = [tile(a, mid, m.clone()), tile(a, lo, with(m, mid)), tile(mid, lo, m.clone())];
                    out.insert(replace(t, &second, &first));
                }
            }
        }
    }
    out.into_iter().collect()
}

fn replace(t: &Tiling, old: &[Tile], new: &[Tile]) -> Tiling {
    let mut tiles = t.tiles.clone();
    for x in old {
        tiles.remove(x);
    }
    tiles.extend(new.iter().cloned());
    Tiling { host: t.host.clone(), tiles }
}

/// What MONO did for one labeling: the paws it cut off, in order, and the
/// permutation left once the pattern became the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoTrace {
    /// `(q, r)`: the paw `X(q)` along positions `r+1..=r+rank(q)`.
    pub paws: Vec<(Permutation, usize)>,
    pub remainder: Permutation,
    pub word: ReducedWord,
}

/// The word-level form of MONO: the labeling of a tiling of `X(p)` given by
/// `s ∈ R(p)` is carried to a reduced word of `w`.
///
/// Tile `i` of the labeling (the `i`-th letter of `s` from the right) swaps
/// two adjacent pattern entries; the stretch of `w_i` between them is sorted,
/// the removed paw `X(q)` is filled with the canonical tiling of `q`, and once
/// the pattern is the identity the rest is filled with the canonical tiling.
pub fn mono_word(p: &Permutation, w: &Permutation, occ: &Occurrence, s: &ReducedWord) -> Result<ReducedWord> {
    Ok(mono_trace(p, w, occ, s)?.word)
}

pub fn mono_trace(p: &Permutation, w: &Permutation, occ: &Occurrence, s: &ReducedWord) -> Result<MonoTrace> {
    occ.validate(p, w)?;
    if s.rank() != p.rank() || s.evaluate() != *p || !s.is_reduced() {
        return Err(Error::InconsistentInput(format!("{s} is not a reduced word of {p}")));
    }
    let n = w.rank();
    let values: BTreeSet<usize> = occ.values.iter().copied().collect();
    let mut cur = w.clone();
    let mut paws = Vec::with_capacity(s.len());
    for &j in s.letters().iter().rev() {
        let j = j as usize;
        let entries: Vec<usize> = (1..=n).filter(|&i| values.contains(&cur.at(i))).collect();
        let (r, t) = (entries[j - 1], entries[j]);
        debug_assert!(cur.at(r) > cur.at(t));
        let mut seq = cur.to_vec();
        let q = Permutation::standardize(&seq[r - 1..t]);
        seq[r - 1..t].sort_unstable();
        cur = Permutation::from_one_line(seq)?;
        paws.push((q, r - 1));
    }
    let mut word = lex_least_reduced_word(&cur);
    for (q, r) in paws.iter().rev() {
        word = word.concat(&lex_least_reduced_word(q).shifted(*r, n)?);
    }
    debug_assert_eq!(word.evaluate(), *w);
    Ok(MonoTrace { paws, remainder: cur, word })
}

/// MONO on tilings, through the canonical labeling of `t`.
pub fn mono(p: &Permutation, w: &Permutation, occ: &Occurrence, t: &Tiling) -> Result<Tiling> {
    if t.host != *p {
        return Err(Error::InconsistentInput(format!("tiling of X({}) given for X({p})", t.host)));
    }
    let s = tiling_to_class(t)?.canonical;
    Ok(Tiling::from_word(&mono_word(p, w, occ, &s)?))
}

/// A paw `X(pattern)` placed inside `X(host)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Paw {
    pub pattern: Permutation,
    /// Labels on a path from the top of `X(host)` to the paw's top vertex.
    pub anchor: BTreeSet<usize>,
    /// Labels down the paw's right side.
    pub right_labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PawTilingWitness {
    pub host: Permutation,
    pub pattern: Permutation,
    pub edges: BTreeSet<usize>,
    pub paw: Paw,
    pub rhombi: Vec<Tile>,
    pub isolated: bool,
}

/// A tiling of `X(w)` by one `X(p)`-paw and rhombi, built from a value-stable
/// factorization `w = w'·v`, preferring one in which the paw is isolated.
pub fn paw_witness(p: &Permutation, w: &Permutation) -> Option<PawTilingWitness> {
    let witnesses = value_stable_witnesses(p, w);
    let chosen = witnesses.iter().find(|v| v.is_isolated()).or_else(|| witnesses.first())?;
    let k = p.rank();
    let x = chosen.window_start;

    // rhombi right of the paw: tiles of v, read against the border of w
    let v_word = lex_least_reduced_word(&chosen.suffix);
    let mut cur = w.clone();
    let mut rhombi = Vec::new();
    for &j in v_word.letters().iter().rev() {
        let j = j as usize;
        rhombi.push(Tile { high: cur.at(j), low: cur.at(j + 1), anchor: (1..j).map(|i| cur.at(i)).collect() });
        cur.swap_positions(j);
    }
    debug_assert_eq!(cur, chosen.prefix);
    let paw = Paw {
        pattern: p.clone(),
        anchor: (1..=x).map(|i| cur.at(i)).collect(),
        right_labels: (x + 1..=x + k).map(|i| cur.at(i)).collect(),
    };
    let mut sorted = cur.to_vec();
    sorted[x..x + k].sort_unstable();
    let rest = Permutation::from_one_line(sorted).expect("window sort");
    rhombi.extend(labeled_tiles(&lex_least_reduced_word(&rest)).into_iter().map(|t| t.tile));
    Some(PawTilingWitness {
        host: w.clone(),
        pattern: p.clone(),
        edges: chosen.occurrence.values.iter().copied().collect(),
        paw,
        rhombi,
        isolated: chosen.is_isolated(),
    })
}

const SCALE: f64 = 40.0;

struct Canvas {
    body: String,
    min: (f64, f64),
    max: (f64, f64),
}

impl Canvas {
    fn new() -> Self {
        Canvas { body: String::new(), min: (0.0, 0.0), max: (0.0, 0.0) }
    }

    fn point(&mut self, (x, y): (f64, f64)) -> String {
        let (sx, sy) = (x * SCALE, -y * SCALE);
        self.min = (self.min.0.min(sx), self.min.1.min(sy));
        self.max = (self.max.0.max(sx), self.max.1.max(sy));
        format!("{sx:.2},{sy:.2}")
    }

    fn polygon(&mut self, points: &[(f64, f64)], style: &str) {
        let pts: Vec<String> = points.iter().map(|&p| self.point(p)).collect();
        let _ = writeln!(self.body, r#"  <polygon points="{}" {style}/>"#, pts.join(" "));
    }

    fn text(&mut self, (x, y): (f64, f64), label: &str, size: u32) {
        let (sx, sy) = (x * SCALE, -y * SCALE);
        let _ = writeln!(
            self.body,
            r#"  <text x="{sx:.2}" y="{sy:.2}" font-size="{size}" text-anchor="middle" dominant-baseline="central">{label}</text>"#
        );
    }

    fn finish(self) -> String {
        let pad = 20.0;
        let (x0, y0) = (self.min.0 - pad, self.min.1 - pad);
        let (w, h) = (self.max.0 - self.min.0 + 2.0 * pad, self.max.1 - self.min.1 + 2.0 * pad);
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{x0:.2} {y0:.2} {w:.2} {h:.2}\" width=\"{w:.0}\" height=\"{h:.0}\">\n{}</svg>\n",
            self.body
        )
    }
}

fn midpoint(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
}

fn draw_outline(canvas: &mut Canvas, w: &Permutation) {
    let poly = polygon(w);
    let n = w.rank();
    let mut outline = poly.left_vertices.clone();
    outline.extend(poly.right_vertices.iter().rev().skip(1).take(n.saturating_sub(1)));
    canvas.polygon(&outline, r#"fill="none" stroke="black" stroke-width="2""#);
    for (side, (verts, labels)) in [(&poly.left_vertices, &poly.left_labels), (&poly.right_vertices, &poly.right_labels)]
        .into_iter()
        .enumerate()
    {
        let offset = if side == 0 { -0.3 } else { 0.3 };
        for i in 0..n {
            let (mx, my) = midpoint(verts[i], verts[i + 1]);
            canvas.text((mx + offset, my), &labels[i].to_string(), 12);
        }
    }
}

/// SVG of a rhombic tiling with tiles numbered by the canonical labeling.
pub fn render_tiling_svg(t: &Tiling, numbered: bool) -> String {
    let n = t.host.rank();
    let mut canvas = Canvas::new();
    let labeled = t.labeled().unwrap_or_default();
    for lt in &labeled {
        let v = lt.tile.vertices(n);
        canvas.polygon(&v, r##"fill="#dde6f0" stroke="#333" stroke-width="1""##);
        if numbered {
            let c = midpoint(v[0], v[2]);
            canvas.text(c, &lt.label.to_string(), 11);
        }
    }
    draw_outline(&mut canvas, &t.host);
    canvas.finish()
}

/// SVG of a paw tiling: the paw shaded, its edge labels listed inside.
pub fn render_paw_svg(witness: &PawTilingWitness) -> String {
    let n = witness.host.rank();
    let mut canvas = Canvas::new();
    for tile in &witness.rhombi {
        canvas.polygon(&tile.vertices(n), r##"fill="#dde6f0" stroke="#333" stroke-width="1""##);
    }
    let top = path_point(witness.paw.anchor.iter().copied(), n);
    let mut left: Vec<usize> = witness.paw.right_labels.clone();
    left.sort_unstable();
    let walk = |labels: &[usize]| {
        let mut pts = vec![top];
        for &v in labels {
            let (x, y) = *pts.last().unwrap();
            let (dx, dy) = direction(v, n);
            pts.push((x + dx, y + dy));
        }
        pts
    };
    let lp = walk(&left);
    let rp = walk(&witness.paw.right_labels);
    let mut outline = lp.clone();
    outline.extend(rp.iter().rev().skip(1).take(rp.len().saturating_sub(2)));
    let fill = if witness.isolated { "#f4c27a" } else { "#e89a9a" };
    canvas.polygon(&outline, &format!(r##"fill="{fill}" stroke="#222" stroke-width="1.5""##));
    let center = outline.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
    let center = (center.0 / outline.len() as f64, center.1 / outline.len() as f64);
    canvas.text(center, &format!("X({})", witness.pattern), 11);
    draw_outline(&mut canvas, &witness.host);
    canvas.finish()
}
