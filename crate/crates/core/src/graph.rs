//! Simple undirected graphs on `{0, .., n-1}` and the connectivity notions
//! used by the closure characterizations.

use std::fmt;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::lang::{is_downwards_closed, is_upwards_closed, Language, Letter};

/// Adjacency stored as one bitmask per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let all = ((1u64 << n) - 1) as u32;
        Graph {
            n,
            adj: (0..n).map(|v| all & !(1 << v)).collect(),
        }
    }

    /// The path `0 - 1 - .. - n-1`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges plus a singleton for every isolated vertex.
    pub fn to_complex(&self) -> SimplicialComplex {
        let mut sets: Vec<u32> = self.edges().iter().map(|&(u, v)| 1 << u | 1 << v).collect();
        sets.extend((0..self.n).filter(|&v| self.adj[v] == 0).map(|v| 1u32 << v));
        SimplicialComplex::from_maximal(self.n, &sets).expect("graph vertices are in range")
    }

    /// Whether the subgraph induced on `mask` is connected (vacuously so when
    /// `mask` is empty).
    pub fn is_connected_on(&self, mask: u32) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = self.adj[v] & mask & !seen;
            seen |= next;
            frontier |= next;
        }
        seen == mask
    }

    fn all_mask(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(self.all_mask())
    }

    pub fn is_spanning_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// True iff deleting any set of fewer than `k` vertices leaves a connected
    /// graph. Deleting every vertex leaves the empty graph, counted as connected.
    pub fn vertex_connectivity_at_least(&self, k: usize) -> bool {
        let all = self.all_mask();
        let limit = k.saturating_sub(1).min(self.n);
        subsets_up_to(self.n, limit).all(|s| self.is_connected_on(all & !s))
    }

    /// Every graph on `n` vertices, by edge bitmask over the lexicographic
    /// edge list.
    pub fn all(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let count = 1u64 << pairs.len();
        (0..count).map(move |bits| {
            let mut g = Graph::empty(n);
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            g
        })
    }

    /// Text form such as `0-1,1-2`.
    pub fn edge_string(&self) -> String {
        let parts: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        parts.join(",")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [{}])", self.n, self.edge_string())
    }
}

/// Vertex masks of size at most `k` over `n` vertices.
fn subsets_up_to(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..(1u64 << n) as u32).filter(move |s| s.count_ones() as usize <= k)
}

/// All `n^(n-2)` labelled trees on `n` vertices, decoded from Prüfer sequences.
pub fn spanning_trees(n: usize) -> Vec<Graph> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Graph::empty(1)],
        2 => return vec![Graph::complete(2)],
        _ => {}
    }
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        out.push(prufer_decode(n, &seq));
        let mut pos = seq.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if seq[pos] + 1 < n {
                seq[pos] += 1;
                for x in &mut seq[pos + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

fn prufer_decode(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut g = Graph::empty(n);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        g.add_edge(leaf, s);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]);
    g
}

fn word_mask(w: &[Letter]) -> u32 {
    w.iter()
        .enumerate()
        .filter(|(_, &l)| l == 1)
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// Maximal sets outside `l` (as masks), for an upwards-closed binary `l`.
pub fn maximal_non_members(l: &Language) -> Vec<u32> {
    extremal_non_members(l, true)
}

/// Minimal sets outside `l` (as masks), for a downwards-closed binary `l`.
pub fn minimal_non_members(l: &Language) -> Vec<u32> {
    extremal_non_members(l, false)
}

fn extremal_non_members(l: &Language, maximal: bool) -> Vec<u32> {
    let n = l.n();
    let members: std::collections::HashSet<u32> =
        l.words().iter().map(|w| word_mask(w)).collect();
    (0u32..(1u64 << n) as u32)
        .filter(|s| !members.contains(s))
        .filter(|&s| {
            (0..n).all(|i| {
                let bit = 1 << i;
                let moved = if maximal { s | bit } else { s & !bit };
                moved == s || members.contains(&moved)
            })
        })
        .collect()
}

fn check_graph_language(g: &Graph, l: &Language) -> Result<()> {
    if g.n() != l.n() {
        return Err(Error::SizeMismatch(format!(
            "graph on {} vertices, language on {} positions",
            g.n(),
            l.n()
        )));
    }
    Ok(())
}

/// For every maximal `W ∉ L`, deleting `W` from `g` leaves a connected graph.
pub fn is_l_connected(g: &Graph, l: &Language) -> Result<bool> {
    check_graph_language(g, l)?;
    if !is_upwards_closed(l)? {
        return Err(Error::NotClosed("upwards closed"));
    }
    let all = g.all_mask();
    Ok(maximal_non_members(l)
        .into_iter()
        .all(|w| g.is_connected_on(all & !w)))
}

/// For every minimal `W ∉ L`, the subgraph induced on `W` is connected.
pub fn downwards_criterion(g: &Graph, l: &Language) -> Result<bool> {
    check_graph_language(g, l)?;
    if !is_downwards_closed(l)? {
        return Err(Error::NotClosed("downwards closed"));
    }
    Ok(minimal_non_members(l)
        .into_iter()
        .all(|w| g.is_connected_on(w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::lang::Alphabet;

    #[test]
    fn tree_counts() {
        assert_eq!(spanning_trees(2).len(), 1);
        assert_eq!(spanning_trees(3).len(), 3);
        assert_eq!(spanning_trees(4).len(), 16);
        assert_eq!(spanning_trees(5).len(), 125);
        let mut trees = spanning_trees(5);
        assert!(trees.iter().all(|t| t.is_spanning_tree()));
        trees.sort();
        trees.dedup();
        assert_eq!(trees.len(), 125);
    }

    #[test]
    fn connectivity_levels() {
        assert!(Graph::complete(4).vertex_connectivity_at_least(3));
        assert!(!Graph::path(4).vertex_connectivity_at_least(2));
        assert!(Graph::empty(1).vertex_connectivity_at_least(1));
        let cycle = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(cycle.vertex_connectivity_at_least(2));
        assert!(!cycle.vertex_connectivity_at_least(3));
    }

    #[test]
    fn l_connected_remark() {
        // sets containing 0 or 1
        let l = Language::from_predicate(3, Alphabet::binary(), |w| w[0] == 1 || w[1] == 1)
            .unwrap();
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(is_l_connected(&g, &l).unwrap());
        assert!(!g.is_connected());
        let h = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert!(!is_l_connected(&h, &l).unwrap());
    }

    #[test]
    fn card_ge_is_k_connectivity() {
        for n in 3..=5 {
            for k in 1..n {
                let l = families::card_ge(n, k).unwrap();
                for g in Graph::all(n) {
                    assert_eq!(
                        is_l_connected(&g, &l).unwrap(),
                        g.vertex_connectivity_at_least(k),
                        "n={n} k={k} {g:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn downwards_examples() {
        let l = families::card_le(4, 1).unwrap();
        for g in Graph::all(4) {
            assert_eq!(downwards_criterion(&g, &l).unwrap(), g == Graph::complete(4));
        }
        let g0 = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let lg = families::graph_independent(&g0).unwrap();
        for g in Graph::all(3) {
            let contains = g0.edges().iter().all(|&(u, v)| g.has_edge(u, v));
            assert_eq!(downwards_criterion(&g, &lg).unwrap(), contains);
        }
        assert!(downwards_criterion(&g0, &families::unique(3).unwrap()).is_err());
    }
}
