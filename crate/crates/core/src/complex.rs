//! Simplicial complexes over `{0, .., n-1}` stored by their maximal simplices.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lang::Permutation;

/// Simplices are vertex bitmasks; this bounds the vertex count.
pub const MAX_VERTICES: usize = 24;

/// A downward-closed family of subsets of `{0, .., n-1}`.
///
/// The complex with no simplices and the complex `{∅}` are distinct: the
/// former has no maximal simplex, the latter has the single maximal simplex 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    n: usize,
    maximal: Vec<u32>,
}

pub(crate) fn vertex_list(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub(crate) fn mask_of(vertices: &[usize]) -> u32 {
    vertices.iter().fold(0, |m, &v| m | 1 << v)
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::BoundExceeded {
            what: "vertices",
            value: n as u128,
            limit: MAX_VERTICES as u128,
        });
    }
    Ok(())
}

/// Keeps only the inclusion-maximal masks, sorted ascending.
fn antichain(mut sets: Vec<u32>) -> Vec<u32> {
    sets.sort_unstable_by_key(|s| std::cmp::Reverse(s.count_ones()));
    let mut kept: Vec<u32> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&m| s & m == s) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

impl SimplicialComplex {
    /// The complex generated by `sets`; contained sets are absorbed.
    pub fn from_maximal(n: usize, sets: &[u32]) -> Result<Self> {
        check_n(n)?;
        let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        if let Some(&bad) = sets.iter().find(|&&s| s & !all != 0) {
            return Err(Error::VertexOutOfRange {
                vertex: 31 - (bad & !all).leading_zeros() as usize,
                n,
            });
        }
        Ok(SimplicialComplex {
            n,
            maximal: antichain(sets.to_vec()),
        })
    }

    /// Like [`from_maximal`](Self::from_maximal) with vertex lists.
    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        for s in sets {
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        let masks: Vec<u32> = sets.iter().map(|s| mask_of(s)).collect();
        Self::from_maximal(n, &masks)
    }

    /// No simplices at all.
    pub fn empty(n: usize) -> Self {
        SimplicialComplex {
            n,
            maximal: Vec::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty_simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            maximal: vec![0],
        }
    }

    /// The full simplex on all vertices.
    pub fn full(n: usize) -> Self {
        SimplicialComplex {
            n,
            maximal: vec![((1u64 << n) - 1) as u32],
        }
    }

    /// All proper subsets of the vertex set.
    pub fn boundary(n: usize) -> Self {
        let all = ((1u64 << n) - 1) as u32;
        let sets: Vec<u32> = (0..n).map(|i| all & !(1 << i)).collect();
        SimplicialComplex {
            n,
            maximal: antichain(sets),
        }
    }

    /// Every vertex, no edges.
    pub fn singletons(n: usize) -> Self {
        SimplicialComplex {
            n,
            maximal: (0..n).map(|i| 1 << i).collect(),
        }
    }

    /// All edges (the vertex alone when `n = 1`).
    pub fn complete_graph(n: usize) -> Self {
        Graph::complete(n).to_complex()
    }

    /// The cone with apex `a` over the complete graph on the other vertices.
    pub fn k_a(n: usize, a: usize) -> Result<Self> {
        if a >= n {
            return Err(Error::VertexOutOfRange { vertex: a, n });
        }
        let rest: Vec<usize> = (0..n).filter(|&v| v != a).collect();
        let base = Self::complete_graph(rest.len()).embed(n, &rest)?;
        Ok(base.cone_at(a))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn maximal(&self) -> &[u32] {
        &self.maximal
    }

    /// Maximal simplices as vertex lists.
    pub fn maximal_sets(&self) -> Vec<Vec<usize>> {
        self.maximal.iter().map(|&m| vertex_list(m)).collect()
    }

    pub fn has_no_simplex(&self) -> bool {
        self.maximal.is_empty()
    }

    /// True when the only simplex, if any, is `∅`.
    pub fn has_no_vertex(&self) -> bool {
        self.maximal.iter().all(|&m| m == 0)
    }

    pub fn contains(&self, simplex: u32) -> bool {
        self.maximal.iter().any(|&m| simplex & m == simplex)
    }

    pub fn contains_set(&self, simplex: &[usize]) -> Result<bool> {
        if let Some(&v) = simplex.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.contains(mask_of(simplex)))
    }

    pub fn is_subcomplex(&self, other: &SimplicialComplex) -> bool {
        self.maximal.iter().all(|&m| other.contains(m))
    }

    /// Vertices lying in some simplex.
    pub fn vertex_mask(&self) -> u32 {
        self.maximal.iter().fold(0, |a, &m| a | m)
    }

    pub fn is_full(&self) -> bool {
        self.contains(((1u64 << self.n) - 1) as u32)
    }

    /// All non-empty simplices, ordered by size then bit pattern.
    pub fn nonempty_simplices(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for &m in &self.maximal {
            let mut sub = m;
            while sub != 0 {
                out.push(sub);
                sub = (sub - 1) & m;
            }
        }
        out.sort_unstable_by_key(|&s| (s.count_ones(), s));
        out.dedup();
        out
    }

    /// Number of simplices including `∅` (0 for the empty complex).
    pub fn simplex_count(&self) -> usize {
        if self.maximal.is_empty() {
            0
        } else {
            self.nonempty_simplices().len() + 1
        }
    }

    /// The subcomplex of simplices inside `positions` (strictly increasing),
    /// reindexed as `0..positions.len()`.
    pub fn restrict(&self, positions: &[usize]) -> Result<SimplicialComplex> {
        for (k, &p) in positions.iter().enumerate() {
            if p >= self.n {
                return Err(Error::VertexOutOfRange { vertex: p, n: self.n });
            }
            if k > 0 && positions[k - 1] >= p {
                return Err(Error::InvalidParameter(
                    "positions must be strictly increasing".into(),
                ));
            }
        }
        let sets: Vec<u32> = self
            .maximal
            .iter()
            .map(|&m| {
                positions
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| m >> p & 1 == 1)
                    .fold(0u32, |a, (k, _)| a | 1 << k)
            })
            .collect();
        Self::from_maximal(positions.len(), &sets)
    }

    /// Relabels vertex `i` as `positions[i]` inside a complex over `n` vertices.
    pub fn embed(&self, n: usize, positions: &[usize]) -> Result<SimplicialComplex> {
        if positions.len() != self.n {
            return Err(Error::SizeMismatch(format!(
                "{} positions for a complex over {} vertices",
                positions.len(),
                self.n
            )));
        }
        if let Some(&v) = positions.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let sets: Vec<u32> = self
            .maximal
            .iter()
            .map(|&m| {
                vertex_list(m)
                    .into_iter()
                    .fold(0u32, |a, v| a | 1 << positions[v])
            })
            .collect();
        Self::from_maximal(n, &sets)
    }

    pub fn skeleton1(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for &m in &self.maximal {
            let vs = vertex_list(m);
            for (k, &u) in vs.iter().enumerate() {
                for &v in &vs[k + 1..] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// `K0 ⋆ K1` with the vertices of `k1` placed after those of `k0`.
    pub fn join(k0: &SimplicialComplex, k1: &SimplicialComplex) -> Result<SimplicialComplex> {
        let n = k0.n + k1.n;
        check_n(n)?;
        let mut sets = Vec::new();
        for &a in &k0.maximal {
            for &b in &k1.maximal {
                sets.push(a | b << k0.n);
            }
        }
        Self::from_maximal(n, &sets)
    }

    /// Join with a fresh apex, which becomes vertex 0.
    pub fn cone(&self) -> Result<SimplicialComplex> {
        Self::join(&Self::full(1), self)
    }

    /// Adds vertex `a` to every maximal simplex (an existing vertex).
    pub fn cone_at(&self, a: usize) -> SimplicialComplex {
        let sets: Vec<u32> = if self.maximal.is_empty() {
            vec![1 << a]
        } else {
            self.maximal.iter().map(|&m| m | 1 << a).collect()
        };
        SimplicialComplex {
            n: self.n,
            maximal: antichain(sets),
        }
    }

    /// Union of simplex families over the same vertex set.
    pub fn union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if self.n != other.n {
            return Err(Error::SizeMismatch("complexes over different vertex sets".into()));
        }
        let mut sets = self.maximal.clone();
        sets.extend_from_slice(&other.maximal);
        Self::from_maximal(self.n, &sets)
    }

    /// Connected components as vertex masks; uncovered vertices are their own
    /// components. Ordered by smallest vertex.
    pub fn components(&self) -> Vec<u32> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &m in &self.maximal {
            let vs = vertex_list(m);
            for w in vs.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut comps: Vec<u32> = Vec::new();
        let mut root_slot = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if root_slot[r] == usize::MAX {
                root_slot[r] = comps.len();
                comps.push(0);
            }
            comps[root_slot[r]] |= 1 << v;
        }
        comps
    }

    /// True unless some non-trivial bipartition of the vertices separates
    /// every simplex.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `g·K`.
    pub fn permute(&self, g: &Permutation) -> Result<SimplicialComplex> {
        if g.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "permutation of {} points acting on {} vertices",
                g.n(),
                self.n
            )));
        }
        let sets: Vec<u32> = self.maximal.iter().map(|&m| g.act_on_mask(m)).collect();
        Ok(SimplicialComplex {
            n: self.n,
            maximal: antichain(sets),
        })
    }

    /// Maximal simplices containing vertex `i`, as indices into
    /// [`maximal`](Self::maximal).
    pub fn incident_maximal(&self, i: usize) -> Vec<usize> {
        (0..self.maximal.len())
            .filter(|&k| self.maximal[k] >> i & 1 == 1)
            .collect()
    }

    /// Short text form such as `{01,12}`, or `{{0,1},{1,2}}` for `n > 10`.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self
            .maximal
            .iter()
            .map(|&m| {
                let vs = vertex_list(m);
                if m == 0 {
                    "∅".to_string()
                } else if self.n <= 10 {
                    vs.iter().map(|v| v.to_string()).collect()
                } else {
                    let s: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                    format!("{{{}}}", s.join(","))
                }
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Serialization used for cache keys.
    pub fn canonical_string(&self) -> String {
        let parts: Vec<String> = self.maximal.iter().map(|m| m.to_string()).collect();
        format!("n={};{}", self.n, parts.join(","))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(n={}, {})", self.n, self.compact())
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

/// Three spanning trees on four vertices that separate the behaviours of
/// equal-neighbour languages over three letters.
pub mod named {
    use super::SimplicialComplex;

    fn tree(edges: &[(usize, usize)]) -> SimplicialComplex {
        let sets: Vec<u32> = edges.iter().map(|&(a, b)| 1 << a | 1 << b).collect();
        SimplicialComplex::from_maximal(4, &sets).expect("edges are in range")
    }

    /// Tree with edges 03, 13, 02; does not generate.
    pub fn fig2() -> SimplicialComplex {
        tree(&[(0, 3), (1, 3), (0, 2)])
    }

    /// Tree with edges 01, 02, 13; does not generate.
    pub fn fig3() -> SimplicialComplex {
        tree(&[(0, 1), (0, 2), (1, 3)])
    }

    /// Tree with edges 02, 12, 13; generates.
    pub fn fig4() -> SimplicialComplex {
        tree(&[(0, 2), (1, 2), (1, 3)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, sets: &[&[usize]]) -> SimplicialComplex {
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        SimplicialComplex::from_sets(n, &sets).unwrap()
    }

    #[test]
    fn absorption() {
        assert_eq!(c(3, &[&[0, 1], &[0, 1, 2]]), SimplicialComplex::full(3));
        assert!(c(3, &[]).has_no_simplex());
        assert_eq!(c(4, &[&[0, 1], &[1, 2], &[2, 3]]).maximal().len(), 3);
        assert!(SimplicialComplex::from_sets(2, &[vec![2]]).is_err());
        assert_ne!(SimplicialComplex::empty(2), SimplicialComplex::empty_simplex(2));
        assert_eq!(
            SimplicialComplex::from_maximal(2, &[0, 1]).unwrap(),
            SimplicialComplex::from_maximal(2, &[1]).unwrap()
        );
    }

    #[test]
    fn membership_and_restriction() {
        let k = c(3, &[&[0, 1], &[1, 2]]);
        assert!(!k.contains_set(&[0, 2]).unwrap());
        assert!(k.contains_set(&[]).unwrap());
        assert!(!SimplicialComplex::empty(3).contains(0));
        assert_eq!(
            SimplicialComplex::full(4).restrict(&[0, 1]).unwrap(),
            SimplicialComplex::full(2)
        );
        assert_eq!(
            SimplicialComplex::full(3).skeleton1(),
            Graph::complete(3)
        );
    }

    #[test]
    fn joins_and_cones() {
        let tri = SimplicialComplex::complete_graph(3);
        let cone = tri.cone().unwrap();
        assert_eq!(cone, SimplicialComplex::k_a(4, 0).unwrap());
        assert_eq!(cone.maximal().len(), 3);
        let two_points = SimplicialComplex::singletons(2);
        let susp = SimplicialComplex::join(&two_points, &tri).unwrap();
        assert_eq!(susp.maximal().len(), 6);
        assert_eq!(susp.restrict(&[0, 1]).unwrap(), two_points);
        assert_eq!(
            SimplicialComplex::k_a(4, 2).unwrap(),
            c(4, &[&[0, 1, 2], &[0, 2, 3], &[1, 2, 3]])
        );
    }

    #[test]
    fn connectivity() {
        assert!(c(4, &[&[0, 1], &[1, 2], &[2, 3]]).is_connected());
        assert!(!c(4, &[&[0, 1], &[2, 3]]).is_connected());
        assert!(SimplicialComplex::empty(1).is_connected());
        assert!(!SimplicialComplex::empty(2).is_connected());
        assert!(!c(3, &[&[0, 1]]).is_connected());
        assert_eq!(c(4, &[&[0, 2], &[1]]).components(), vec![0b101, 0b10, 0b1000]);
    }

    #[test]
    fn boundary_and_counts() {
        let b = SimplicialComplex::boundary(3);
        assert_eq!(b, SimplicialComplex::complete_graph(3));
        assert_eq!(b.simplex_count(), 7);
        assert_eq!(SimplicialComplex::boundary(1), SimplicialComplex::empty_simplex(1));
        assert_eq!(SimplicialComplex::full(3).nonempty_simplices().len(), 7);
    }

    #[test]
    fn permutation_action() {
        let k = named::fig3();
        let g = Permutation::from_vec(vec![3, 2, 1, 0]).unwrap();
        assert_eq!(k.permute(&g).unwrap(), c(4, &[&[3, 2], &[3, 1], &[2, 0]]));
    }
}
