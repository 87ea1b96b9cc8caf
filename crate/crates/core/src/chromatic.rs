//! Chromatic labeled complexes: output complexes of languages, input
//! complexes of communication complexes, and surjective chromatic maps
//! between them.

use std::collections::{BTreeSet, HashMap};

use crate::complex::{vertex_list, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lang::{splits_along, Language};
use crate::procedure::for_each_tuple;

/// Largest number of simplices built for an input complex.
pub const MAX_INPUT_SIMPLICES: u128 = 1_000_000;

/// A complex whose vertices are (color, label) pairs and whose simplices
/// hold exactly one vertex of every color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticComplex {
    colors: usize,
    /// Sorted by (color, label).
    vertices: Vec<(usize, u64)>,
    label_text: Vec<String>,
    /// Vertex indices ordered by color, sorted and deduplicated.
    simplices: Vec<Vec<u32>>,
}

impl ChromaticComplex {
    /// Builds the complex from facets given as one label per color.
    fn from_facets(colors: usize, facets: Vec<Vec<u64>>, text: impl Fn(usize, u64) -> String) -> Self {
        let set: BTreeSet<(usize, u64)> = facets
            .iter()
            .flat_map(|f| f.iter().enumerate().map(|(c, &l)| (c, l)))
            .collect();
        let vertices: Vec<(usize, u64)> = set.into_iter().collect();
        let index: HashMap<(usize, u64), u32> =
            vertices.iter().enumerate().map(|(k, &v)| (v, k as u32)).collect();
        let mut simplices: Vec<Vec<u32>> = facets
            .iter()
            .map(|f| f.iter().enumerate().map(|(c, &l)| index[&(c, l)]).collect())
            .collect();
        simplices.sort();
        simplices.dedup();
        let label_text = vertices.iter().map(|&(c, l)| text(c, l)).collect();
        let out = ChromaticComplex { colors, vertices, label_text, simplices };
        debug_assert!(out.properly_colored());
        out
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    /// `(color, label)` of vertex `v`.
    pub fn vertex(&self, v: usize) -> (usize, u64) {
        self.vertices[v]
    }

    pub fn label_text(&self, v: usize) -> &str {
        &self.label_text[v]
    }

    pub fn simplices(&self) -> &[Vec<u32>] {
        &self.simplices
    }

    /// Every simplex has one vertex per color, in color order, and every
    /// vertex lies in some simplex.
    pub fn properly_colored(&self) -> bool {
        let mut used = vec![false; self.vertices.len()];
        let ok = self.simplices.iter().all(|s| {
            s.len() == self.colors
                && s.iter().enumerate().all(|(c, &v)| {
                    used[v as usize] = true;
                    self.vertices[v as usize].0 == c
                })
        });
        ok && used.iter().all(|&u| u)
    }

    /// Connectivity of the underlying complex.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for s in &self.simplices {
            for w in s.windows(2) {
                let (a, b) = (find(&mut parent, w[0] as usize), find(&mut parent, w[1] as usize));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (1..n).all(|v| find(&mut parent, v) == root)
    }

    /// True when the simplices are exactly the unions of a facet seen on
    /// the colors in `part` and one seen on the other colors.
    pub fn is_join_along(&self, part: &[usize]) -> bool {
        let side = |s: &Vec<u32>, inside: bool| -> Vec<u32> {
            s.iter()
                .enumerate()
                .filter(|(c, _)| part.contains(c) == inside)
                .map(|(_, &v)| v)
                .collect()
        };
        let left: BTreeSet<Vec<u32>> = self.simplices.iter().map(|s| side(s, true)).collect();
        let right: BTreeSet<Vec<u32>> = self.simplices.iter().map(|s| side(s, false)).collect();
        left.len() * right.len() == self.simplices.len()
    }
}

/// One simplex `{(i, y_i)}` per word `y`.
pub fn output_complex(l: &Language) -> ChromaticComplex {
    let facets = l
        .words()
        .iter()
        .map(|w| w.iter().map(|&a| a as u64).collect())
        .collect();
    let alphabet = l.alphabet().clone();
    ChromaticComplex::from_facets(l.n(), facets, move |_, a| alphabet.name(a as u16))
}

/// One simplex per input `x` in `B^J` (J the non-empty maximal simplices
/// of `k`); position `i` is labelled by the restriction of `x` to the
/// simplices containing `i`, encoded as a little-endian class index.
pub fn input_complex(k: &SimplicialComplex, b: usize) -> Result<ChromaticComplex> {
    if b == 0 {
        return Err(Error::InvalidParameter("input alphabet must be non-empty".into()));
    }
    let cells: Vec<u32> = k.maximal().iter().copied().filter(|&s| s != 0).collect();
    let count = (b as u128).checked_pow(cells.len() as u32).unwrap_or(u128::MAX);
    if count > MAX_INPUT_SIMPLICES {
        return Err(Error::BoundExceeded {
            what: "input complex simplices",
            value: count,
            limit: MAX_INPUT_SIMPLICES,
        });
    }
    let windows: Vec<Vec<usize>> = (0..k.n())
        .map(|i| (0..cells.len()).filter(|&c| cells[c] >> i & 1 == 1).collect())
        .collect();
    let mut facets = Vec::with_capacity(count as usize);
    for_each_tuple(&vec![b; cells.len()], |x| {
        facets.push(
            windows
                .iter()
                .map(|w| w.iter().rev().fold(0u64, |acc, &c| acc * b as u64 + x[c] as u64))
                .collect(),
        );
    });
    let text_windows = windows.clone();
    let m = cells.len();
    Ok(ChromaticComplex::from_facets(k.n(), facets, move |i, mut label| {
        let mut out = vec!['_'; m];
        for &c in &text_windows[i] {
            out[c] = char::from_digit((label % b as u64) as u32, 36).unwrap_or('?');
            label /= b as u64;
        }
        out.into_iter().collect()
    }))
}

/// A color-preserving vertex map `src -> dst` sending every simplex onto a
/// simplex, hitting every simplex of `dst` when `surjective` is set. The
/// result gives a `dst` vertex per `src` vertex.
pub fn find_chromatic_map(
    src: &ChromaticComplex,
    dst: &ChromaticComplex,
    surjective: bool,
) -> Result<Option<Vec<u32>>> {
    if src.colors != dst.colors {
        return Err(Error::SizeMismatch("color sets differ".into()));
    }
    if dst.simplices.len() > 64 {
        return Err(Error::BoundExceeded {
            what: "target simplices",
            value: dst.simplices.len() as u128,
            limit: 64,
        });
    }
    let mut by_color: Vec<Vec<u32>> = vec![Vec::new(); dst.colors];
    for (v, &(c, _)) in dst.vertices.iter().enumerate() {
        by_color[c].push(v as u32);
    }
    if by_color.iter().any(|c| c.len() > 64) {
        return Err(Error::BoundExceeded { what: "target labels per color", value: 65, limit: 64 });
    }
    // compat[c][a]: target simplices whose color-c vertex is the a-th of that color
    let mut compat = vec![Vec::new(); dst.colors];
    for c in 0..dst.colors {
        compat[c] = by_color[c]
            .iter()
            .map(|&v| {
                dst.simplices
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s[c] == v)
                    .fold(0u64, |m, (t, _)| m | 1 << t)
            })
            .collect();
    }
    let mut incident = vec![Vec::new(); src.vertices.len()];
    for (s, simplex) in src.simplices.iter().enumerate() {
        for &v in simplex {
            incident[v as usize].push(s);
        }
    }
    let mut order: Vec<usize> = (0..src.vertices.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(incident[v].len()), v));
    let full_dom = |c: usize| -> u64 {
        let k = by_color[c].len();
        if k == 64 {
            u64::MAX
        } else {
            (1u64 << k) - 1
        }
    };
    let all_targets = if dst.simplices.len() == 64 {
        u64::MAX
    } else {
        (1u64 << dst.simplices.len()) - 1
    };
    let mut search = MapSearch {
        src,
        compat,
        incident,
        dom: src.vertices.iter().map(|&(c, _)| full_dom(c)).collect(),
        mask: vec![all_targets; src.simplices.len()],
        support: vec![src.simplices.len(); dst.simplices.len()],
        surjective,
        trail: Vec::new(),
    };
    if surjective && src.simplices.len() < dst.simplices.len() {
        return Ok(None);
    }
    if !search.dfs(&order) {
        return Ok(None);
    }
    Ok(Some(
        search
            .dom
            .iter()
            .zip(&src.vertices)
            .map(|(d, &(c, _))| by_color[c][d.trailing_zeros() as usize])
            .collect(),
    ))
}

enum Undo {
    Dom(usize, u64),
    Mask(usize, u64),
}

struct MapSearch<'a> {
    src: &'a ChromaticComplex,
    compat: Vec<Vec<u64>>,
    incident: Vec<Vec<usize>>,
    dom: Vec<u64>,
    mask: Vec<u64>,
    support: Vec<usize>,
    surjective: bool,
    trail: Vec<Undo>,
}

impl MapSearch<'_> {
    fn color(&self, v: usize) -> usize {
        self.src.vertices[v].0
    }

    fn allowed(&self, v: usize) -> u64 {
        let c = self.color(v);
        let mut d = self.dom[v];
        let mut m = 0;
        while d != 0 {
            m |= self.compat[c][d.trailing_zeros() as usize];
            d &= d - 1;
        }
        m
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("non-empty") {
                Undo::Dom(v, old) => self.dom[v] = old,
                Undo::Mask(s, old) => {
                    let mut gone = old & !self.mask[s];
                    while gone != 0 {
                        self.support[gone.trailing_zeros() as usize] += 1;
                        gone &= gone - 1;
                    }
                    self.mask[s] = old;
                }
            }
        }
    }

    fn propagate(&mut self, start: usize) -> bool {
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            let allowed = self.allowed(v);
            for k in 0..self.incident[v].len() {
                let s = self.incident[v][k];
                let new = self.mask[s] & allowed;
                if new == self.mask[s] {
                    continue;
                }
                if new == 0 {
                    return false;
                }
                let mut gone = self.mask[s] & !new;
                self.trail.push(Undo::Mask(s, self.mask[s]));
                self.mask[s] = new;
                while gone != 0 {
                    let t = gone.trailing_zeros() as usize;
                    self.support[t] -= 1;
                    if self.surjective && self.support[t] == 0 {
                        return false;
                    }
                    gone &= gone - 1;
                }
                for &u in &self.src.simplices[s] {
                    let u = u as usize;
                    if u == v {
                        continue;
                    }
                    let c = self.color(u);
                    let mut d = self.dom[u];
                    let mut keep = 0;
                    while d != 0 {
                        let a = d.trailing_zeros() as usize;
                        if self.compat[c][a] & new != 0 {
                            keep |= 1 << a;
                        }
                        d &= d - 1;
                    }
                    if keep != self.dom[u] {
                        if keep == 0 {
                            return false;
                        }
                        self.trail.push(Undo::Dom(u, self.dom[u]));
                        self.dom[u] = keep;
                        queue.push(u);
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, order: &[usize]) -> bool {
        let Some(&v) = order.iter().find(|&&v| self.dom[v].count_ones() > 1) else {
            return true;
        };
        let mut d = self.dom[v];
        while d != 0 {
            let a = d.trailing_zeros();
            d &= d - 1;
            let mark = self.trail.len();
            self.trail.push(Undo::Dom(v, self.dom[v]));
            self.dom[v] = 1 << a;
            if self.propagate(v) && self.dfs(order) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Verdict of the chromatic formulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticDecision {
    pub generates: bool,
    /// Smallest input alphabet size admitting a surjective map.
    pub alphabet_size: Option<usize>,
    pub map: Option<Vec<u32>>,
}

/// Looks for a surjective chromatic map `I_K(B) -> O_L` for `|B|` from 1 up
/// to `max_b` (default `|L|`, which always suffices).
pub fn chromatic_decides(
    l: &Language,
    k: &SimplicialComplex,
    max_b: Option<usize>,
) -> Result<ChromaticDecision> {
    if l.n() != k.n() {
        return Err(Error::SizeMismatch("complex and language sizes differ".into()));
    }
    let out = output_complex(l);
    for b in 1..=max_b.unwrap_or(l.len()) {
        let input = input_complex(k, b)?;
        if let Some(map) = find_chromatic_map(&input, &out, true)? {
            return Ok(ChromaticDecision { generates: true, alphabet_size: Some(b), map: Some(map) });
        }
    }
    Ok(ChromaticDecision { generates: false, alphabet_size: None, map: None })
}

/// One bipartition `part | rest` of the colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinRow {
    pub part: Vec<usize>,
    /// The language is the product along the split, or the complex has no
    /// simplex meeting both sides.
    pub splits: bool,
    /// The chromatic complex is the join along the split.
    pub join: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinReport {
    pub rows: Vec<JoinRow>,
}

impl JoinReport {
    /// Splitting and joining coincide on every bipartition.
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.splits == r.join)
    }

    /// Some non-trivial join decomposition exists.
    pub fn decomposes(&self) -> bool {
        self.rows.iter().any(|r| r.join)
    }
}

fn bipartitions(n: usize) -> Vec<Vec<usize>> {
    if n < 2 {
        return Vec::new();
    }
    // subsets containing 0, excluding the whole set
    (1u32..1 << n)
        .filter(|&m| m & 1 == 1 && m != (1 << n) - 1)
        .map(vertex_list)
        .collect()
}

/// `L` splits along a bipartition exactly when `O_L` is the join there.
pub fn language_join_checks(l: &Language) -> JoinReport {
    let o = output_complex(l);
    let rows = bipartitions(l.n())
        .into_iter()
        .map(|part| JoinRow { splits: splits_along(l, &part), join: o.is_join_along(&part), part })
        .collect();
    JoinReport { rows }
}

/// `K` has no simplex meeting both sides of a bipartition exactly when
/// `I_K(B)` is the join there (for `|B| >= 2`).
pub fn complex_join_checks(k: &SimplicialComplex, b: usize) -> Result<JoinReport> {
    let input = input_complex(k, b)?;
    let rows = bipartitions(k.n())
        .into_iter()
        .map(|part| {
            let m = crate::complex::mask_of(&part);
            let splits = k.maximal().iter().all(|&s| s & m == 0 || s & !m == 0);
            JoinRow { splits, join: input.is_join_along(&part), part }
        })
        .collect();
    Ok(JoinReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn output_counts() {
        let o = output_complex(&families::card_le(3, 1).unwrap());
        assert_eq!((o.vertex_count(), o.simplex_count()), (6, 4));
        let o = output_complex(&families::unique(3).unwrap());
        assert_eq!((o.vertex_count(), o.simplex_count()), (6, 3));
        let o = output_complex(&families::constants(3, 2).unwrap());
        assert!(!o.is_connected());
        assert!(o.properly_colored());
    }

    #[test]
    fn input_counts() {
        let i = input_complex(&SimplicialComplex::complete_graph(3), 2).unwrap();
        assert_eq!((i.vertex_count(), i.simplex_count()), (12, 8));
        assert!(i.is_connected());
        let i = input_complex(&SimplicialComplex::full(3), 2).unwrap();
        assert_eq!(i.simplex_count(), 2);
        assert!(!i.is_connected());
    }

    #[test]
    fn table_entries() {
        let k3 = SimplicialComplex::complete_graph(3);
        let g = SimplicialComplex::from_maximal(3, &[0b011, 0b110]).unwrap();
        let card = families::card_le(3, 1).unwrap();
        let u3 = families::unique(3).unwrap();
        let r = chromatic_decides(&card, &k3, None).unwrap();
        assert_eq!((r.generates, r.alphabet_size), (true, Some(2)));
        assert!(!chromatic_decides(&u3, &k3, None).unwrap().generates);
        assert!(!chromatic_decides(&card, &g, None).unwrap().generates);
        assert!(!chromatic_decides(&u3, &g, None).unwrap().generates);
    }

    #[test]
    fn joins() {
        let k = SimplicialComplex::from_maximal(4, &[0b0011, 0b1100]).unwrap();
        let r = complex_join_checks(&k, 2).unwrap();
        assert!(r.holds() && r.decomposes());
        let r = language_join_checks(&families::ev(3).unwrap());
        assert!(r.holds() && !r.decomposes());
    }
}
