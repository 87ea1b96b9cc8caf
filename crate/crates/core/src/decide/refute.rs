//! Necessary conditions for generation, each producing a re-checkable
//! certificate when it fails.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chromatic::output_complex;
use crate::complex::{vertex_list, SimplicialComplex};
use crate::error::Result;
use crate::graph::{maximal_non_members, minimal_non_members};
use crate::lang::{
    complement, independent_pair, is_downwards_closed, is_upwards_closed, project,
    projection_size, Alphabet, Language, Letter, Word,
};

use super::{csp, decide_generates, DecideOptions, Verdict};

/// Why a complex cannot generate a language.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// The language varies at a position that is not a vertex of the complex.
    UncoveredPosition { position: usize },
    /// The complex splits into these blocks but the language is not the
    /// product of its projections onto them.
    Disconnected { blocks: Vec<Vec<usize>> },
    /// `{i, j}` is not a simplex and the two positions are not independent.
    DependentPair { i: usize, j: usize },
    /// The map `x -> (x_a, x_b, max of the rest)` sends the language to a
    /// language on three positions that the pushed-forward complex does not
    /// generate.
    MergedTriple { a: usize, b: usize },
    /// `positions` is not a simplex, yet the output complex of the
    /// projection onto it is disconnected (input complexes of non-full
    /// complexes are connected).
    DisconnectedOutput { positions: Vec<usize> },
    /// The restriction to `positions` does not generate the projection.
    Projection { positions: Vec<usize>, inner: Box<Certificate> },
    /// Upwards closed language: deleting the maximal non-member `removed`
    /// disconnects the 1-skeleton.
    UpwardsClosed { removed: Vec<usize> },
    /// Downwards closed language: the 1-skeleton induced on the minimal
    /// non-member `set` is disconnected.
    DownwardsClosed { set: Vec<usize> },
    /// The canonical search space is empty.
    SearchExhausted { nodes: u64 },
    /// Generalized decision: base word `index` extends to no upper word.
    Uncoverable { index: usize },
    /// No valid sequence exists on the given position set.
    NoValidSequence,
}

impl Certificate {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::UncoveredPosition { .. } => "uncovered-position",
            Certificate::Disconnected { .. } => "disconnected",
            Certificate::DependentPair { .. } => "dependent-pair",
            Certificate::MergedTriple { .. } => "merged-triple",
            Certificate::DisconnectedOutput { .. } => "disconnected-output",
            Certificate::Projection { .. } => "projection",
            Certificate::UpwardsClosed { .. } => "upwards-closed",
            Certificate::DownwardsClosed { .. } => "downwards-closed",
            Certificate::SearchExhausted { .. } => "search-exhausted",
            Certificate::Uncoverable { .. } => "uncoverable",
            Certificate::NoValidSequence => "no-valid-sequence",
        }
    }

    /// Re-validates the certificate against `(l, k)` without trusting the
    /// code that produced it. Search certificates re-run the search.
    pub fn recheck(&self, l: &Language, k: &SimplicialComplex) -> Result<bool> {
        Ok(match self {
            Certificate::UncoveredPosition { position } => {
                k.vertex_mask() >> position & 1 == 0 && l.letters_at(*position).len() > 1
            }
            Certificate::Disconnected { blocks } => {
                let covered: usize = blocks.iter().map(|b| b.len()).sum();
                covered == l.n()
                    && blocks.iter().all(|b| {
                        let m = crate::complex::mask_of(b);
                        k.maximal().iter().all(|&s| s & m == 0 || s & !m == 0)
                    })
                    && blocks
                        .iter()
                        .map(|b| projection_size(l, b) as u128)
                        .product::<u128>()
                        != l.len() as u128
            }
            Certificate::DependentPair { i, j } => {
                !k.contains(1 << i | 1 << j) && !independent_pair(l, *i, *j)?
            }
            Certificate::MergedTriple { a, b } => {
                let (image, pushed) = merged_triple(l, k, *a, *b)?;
                !generates_by_search(&image, &pushed)?
            }
            Certificate::DisconnectedOutput { positions } => {
                !k.contains(crate::complex::mask_of(positions))
                    && !output_complex(&project(l, positions)?).is_connected()
            }
            Certificate::Projection { positions, inner } => {
                let pl = project(l, positions)?;
                let pk = k.restrict(positions)?;
                inner.recheck(&pl, &pk)?
            }
            Certificate::UpwardsClosed { removed } => {
                let w = crate::complex::mask_of(removed);
                let g = k.skeleton1();
                let all = ((1u64 << l.n()) - 1) as u32;
                is_upwards_closed(l)?
                    && maximal_non_members(l).contains(&w)
                    && !g.is_connected_on(all & !w)
            }
            Certificate::DownwardsClosed { set } => {
                let w = crate::complex::mask_of(set);
                is_downwards_closed(l)?
                    && minimal_non_members(l).contains(&w)
                    && !k.skeleton1().is_connected_on(w)
            }
            Certificate::SearchExhausted { .. } => !generates_by_search(l, k)?,
            Certificate::Uncoverable { .. } | Certificate::NoValidSequence => false,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        match self {
            Certificate::UncoveredPosition { position } => {
                write!(f, "uncovered-position {position}")
            }
            Certificate::Disconnected { blocks } => {
                let parts: Vec<String> = blocks.iter().map(|b| list(b)).collect();
                write!(f, "disconnected {}", parts.join("|"))
            }
            Certificate::DependentPair { i, j } => write!(f, "dependent-pair {i},{j}"),
            Certificate::MergedTriple { a, b } => write!(f, "merged-triple {a},{b}"),
            Certificate::DisconnectedOutput { positions } => {
                write!(f, "disconnected-output {}", list(positions))
            }
            Certificate::Projection { positions, inner } => {
                write!(f, "projection {} [{inner}]", list(positions))
            }
            Certificate::UpwardsClosed { removed } => {
                write!(f, "upwards-closed removed={}", list(removed))
            }
            Certificate::DownwardsClosed { set } => write!(f, "downwards-closed set={}", list(set)),
            Certificate::SearchExhausted { nodes } => write!(f, "search-exhausted nodes={nodes}"),
            Certificate::Uncoverable { index } => write!(f, "uncoverable base={index}"),
            Certificate::NoValidSequence => write!(f, "no-valid-sequence"),
        }
    }
}

fn generates_by_search(l: &Language, k: &SimplicialComplex) -> Result<bool> {
    let c = csp::CanonicalCsp::build(l, k, csp::DEFAULT_MAX_TUPLES)?;
    Ok(matches!(
        csp::solve(&c, csp::SolveLimits::default()).0,
        csp::SolveOutcome::Satisfiable(_)
    ))
}

/// Positions where `l` takes more than one letter but `k` has no vertex.
pub fn uncovered_position(l: &Language, k: &SimplicialComplex) -> Option<Certificate> {
    let vertices = k.vertex_mask();
    (0..l.n())
        .find(|&i| vertices >> i & 1 == 0 && l.letters_at(i).len() > 1)
        .map(|position| Certificate::UncoveredPosition { position })
}

/// Connected components of `k` along which `l` does not factor.
pub fn disconnection(l: &Language, k: &SimplicialComplex) -> Option<Certificate> {
    let comps = k.components();
    if comps.len() < 2 {
        return None;
    }
    let blocks: Vec<Vec<usize>> = comps.iter().map(|&m| vertex_list(m)).collect();
    let product: u128 = blocks.iter().map(|b| projection_size(l, b) as u128).product();
    (product != l.len() as u128).then_some(Certificate::Disconnected { blocks })
}

/// A missing edge between dependent positions.
pub fn dependent_pair(l: &Language, k: &SimplicialComplex) -> Option<Certificate> {
    for i in 0..l.n() {
        for j in i + 1..l.n() {
            if !k.contains(1 << i | 1 << j) && !independent_pair(l, i, j).unwrap_or(true) {
                return Some(Certificate::DependentPair { i, j });
            }
        }
    }
    None
}

/// The image of a binary `l` under `x -> (x_a, x_b, max_{c ∉ {a,b}} x_c)`
/// and the pushforward of `k` along that map.
pub fn merged_triple(
    l: &Language,
    k: &SimplicialComplex,
    a: usize,
    b: usize,
) -> Result<(Language, SimplicialComplex)> {
    let words: Vec<Word> = l
        .words()
        .iter()
        .map(|w| {
            let rest = (0..l.n())
                .filter(|&c| c != a && c != b)
                .any(|c| w[c] != 0);
            vec![w[a], w[b], rest as Letter]
        })
        .collect();
    let image = Language::new(3, Alphabet::binary(), words)?;
    let rest_mask = !(1u32 << a | 1 << b);
    let sets: Vec<u32> = k
        .maximal()
        .iter()
        .map(|&s| {
            (s >> a & 1) | (s >> b & 1) << 1 | ((s & rest_mask != 0) as u32) << 2
        })
        .filter(|&m| m != 0)
        .collect();
    Ok((image, SimplicialComplex::from_maximal(3, &sets)?))
}

/// For binary `l` on at least three positions: some pair whose merged
/// image is not generated by the pushed-forward complex.
pub fn triangle_refuter(l: &Language, k: &SimplicialComplex) -> Result<Option<Certificate>> {
    if !l.is_binary() || l.n() < 3 {
        return Ok(None);
    }
    for a in 0..l.n() {
        for b in a + 1..l.n() {
            let (image, pushed) = merged_triple(l, k, a, b)?;
            if pushed.is_full() || image.len() == 1 {
                continue;
            }
            if !generates_by_search(&image, &pushed)? {
                return Ok(Some(Certificate::MergedTriple { a, b }));
            }
        }
    }
    Ok(None)
}

/// Largest `n` for which every non-face is scanned.
const OUTPUT_SCAN_MAX_N: usize = 10;

/// A non-face whose projected output complex is disconnected.
pub fn disconnected_output(l: &Language, k: &SimplicialComplex) -> Result<Option<Certificate>> {
    if l.n() > OUTPUT_SCAN_MAX_N {
        return Ok(None);
    }
    let mut faces: Vec<u32> = (1u32..1 << l.n())
        .filter(|&s| s.count_ones() >= 2 && !k.contains(s))
        .collect();
    faces.sort_by_key(|s| (s.count_ones(), *s));
    for s in faces {
        let positions = vertex_list(s);
        if !output_complex(&project(l, &positions)?).is_connected() {
            return Ok(Some(Certificate::DisconnectedOutput { positions }));
        }
    }
    Ok(None)
}

/// Largest projection recursively decided by [`projection_refuter`].
pub const PROJECTION_MAX: usize = 3;

/// Some proper projection onto at most three positions not generated by the
/// restriction.
pub fn projection_refuter(
    l: &Language,
    k: &SimplicialComplex,
    opts: &DecideOptions,
) -> Result<Option<Certificate>> {
    let n = l.n();
    if n <= 2 {
        return Ok(None);
    }
    let top = PROJECTION_MAX.min(n - 1);
    let mut subsets: Vec<u32> = (1u32..1 << n)
        .filter(|s| (2..=top).contains(&(s.count_ones() as usize)))
        .collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        let positions = vertex_list(s);
        let pl = project(l, &positions)?;
        let pk = k.restrict(&positions)?;
        if pk.is_full() {
            continue;
        }
        let inner_opts = DecideOptions { factorize: true, ..opts.clone() };
        let r = decide_generates(&pl, &pk, &inner_opts)?;
        if r.verdict == Verdict::DoesNotGenerate {
            if let Some(c) = r.certificate {
                return Ok(Some(Certificate::Projection {
                    positions,
                    inner: Box::new(c),
                }));
            }
        }
    }
    Ok(None)
}

/// Runs the refuters in order: uncovered position, disconnection,
/// dependent pair, merged triple, disconnected output, projections.
pub fn refute_necessary(
    l: &Language,
    k: &SimplicialComplex,
    opts: &DecideOptions,
) -> Result<Option<Certificate>> {
    if let Some(c) = uncovered_position(l, k) {
        return Ok(Some(c));
    }
    if let Some(c) = disconnection(l, k) {
        return Ok(Some(c));
    }
    if let Some(c) = dependent_pair(l, k) {
        return Ok(Some(c));
    }
    if let Some(c) = triangle_refuter(l, k)? {
        return Ok(Some(c));
    }
    if let Some(c) = disconnected_output(l, k)? {
        return Ok(Some(c));
    }
    projection_refuter(l, k, opts)
}

/// Fast-path certificate for an upwards closed `l`.
pub(crate) fn upwards_certificate(l: &Language, k: &SimplicialComplex) -> Option<Certificate> {
    let g = k.skeleton1();
    let all = ((1u64 << l.n()) - 1) as u32;
    maximal_non_members(l)
        .into_iter()
        .find(|&w| !g.is_connected_on(all & !w))
        .map(|w| Certificate::UpwardsClosed { removed: vertex_list(w) })
}

/// Fast-path certificate for a downwards closed `l`.
pub(crate) fn downwards_certificate(l: &Language, k: &SimplicialComplex) -> Option<Certificate> {
    let g = k.skeleton1();
    minimal_non_members(l)
        .into_iter()
        .find(|&w| !g.is_connected_on(w))
        .map(|w| Certificate::DownwardsClosed { set: vertex_list(w) })
}

/// Used by the downwards fast path: `c(L)` is upwards closed.
pub(crate) fn complement_language(l: &Language) -> Result<Language> {
    complement(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn ev_on_two_edges() {
        let l = families::ev(4).unwrap();
        let k = SimplicialComplex::from_maximal(4, &[0b0011, 0b1100]).unwrap();
        let c = disconnection(&l, &k).unwrap();
        assert_eq!(c, Certificate::Disconnected { blocks: vec![vec![0, 1], vec![2, 3]] });
        assert!(c.recheck(&l, &k).unwrap());
    }

    #[test]
    fn unique_on_complete_graph() {
        let l = families::unique(4).unwrap();
        let k = SimplicialComplex::complete_graph(4);
        let c = triangle_refuter(&l, &k).unwrap().unwrap();
        assert!(matches!(c, Certificate::MergedTriple { .. }));
        assert!(c.recheck(&l, &k).unwrap());
        assert!(triangle_refuter(&l, &SimplicialComplex::k_a(4, 0).unwrap()).unwrap().is_none());
    }

    #[test]
    fn full_language_on_singletons() {
        let l = families::full(3, 2).unwrap();
        let k = SimplicialComplex::singletons(3);
        let opts = DecideOptions::default();
        assert_eq!(refute_necessary(&l, &k, &opts).unwrap(), None);
    }

    #[test]
    fn constants_output_disconnected() {
        let l = families::constants(3, 2).unwrap();
        let k = SimplicialComplex::boundary(3);
        let c = disconnected_output(&l, &k).unwrap().unwrap();
        assert!(c.recheck(&l, &k).unwrap());
    }
}
