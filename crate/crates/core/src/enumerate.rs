//! Exhaustive enumeration of simplicial complexes with orbit reduction.

use std::collections::BTreeSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::lang::Permutation;

/// Largest vertex count accepted by [`enumerate_complexes`].
pub const MAX_ENUMERATION_N: usize = 5;

/// Every complex over `n` vertices (including the empty complex and `{∅}`),
/// ordered by number of maximal simplices, then by the sorted masks.
pub fn enumerate_complexes(n: usize) -> Result<Vec<SimplicialComplex>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::BoundExceeded {
            what: "vertices for complex enumeration",
            value: n as u128,
            limit: MAX_ENUMERATION_N as u128,
        });
    }
    let subsets: Vec<u32> = (0u32..1 << n).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    antichains(&subsets, 0, &mut chosen, &mut out);
    let mut complexes: Vec<SimplicialComplex> = out
        .into_iter()
        .map(|sets| SimplicialComplex::from_maximal(n, &sets).expect("in range"))
        .collect();
    complexes.sort_by(|a, b| {
        (a.maximal().len(), a.maximal()).cmp(&(b.maximal().len(), b.maximal()))
    });
    Ok(complexes)
}

fn antichains(subsets: &[u32], from: usize, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    out.push(chosen.clone());
    for k in from..subsets.len() {
        let s = subsets[k];
        if chosen.iter().all(|&c| c & s != c && c & s != s) {
            chosen.push(s);
            antichains(subsets, k + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// The lexicographically least image of `k` under `group`.
pub fn canonical_form(k: &SimplicialComplex, group: &[Permutation]) -> Result<SimplicialComplex> {
    let mut best = k.clone();
    for g in group {
        let image = k.permute(g)?;
        if image.maximal() < best.maximal() {
            best = image;
        }
    }
    Ok(best)
}

/// The orbit of `k` under `group` (which must contain the identity for `k`
/// itself to appear).
pub fn orbit(k: &SimplicialComplex, group: &[Permutation]) -> Result<Vec<SimplicialComplex>> {
    let mut set = BTreeSet::new();
    set.insert(k.clone());
    for g in group {
        set.insert(k.permute(g)?);
    }
    Ok(set.into_iter().collect())
}

/// One representative per orbit, keeping the enumeration order of `complexes`.
pub fn orbit_representatives(
    complexes: &[SimplicialComplex],
    group: &[Permutation],
) -> Result<Vec<SimplicialComplex>> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for k in complexes {
        let c = canonical_form(k, group)?;
        if seen.insert(c) {
            reps.push(k.clone());
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::spanning_trees;

    #[test]
    fn dedekind_counts() {
        assert_eq!(enumerate_complexes(0).unwrap().len(), 2);
        assert_eq!(enumerate_complexes(1).unwrap().len(), 3);
        assert_eq!(enumerate_complexes(2).unwrap().len(), 6);
        assert_eq!(enumerate_complexes(3).unwrap().len(), 20);
        assert_eq!(enumerate_complexes(4).unwrap().len(), 168);
        assert!(enumerate_complexes(6).is_err());
    }

    #[test]
    fn two_vertices_up_to_swap() {
        let all = enumerate_complexes(2).unwrap();
        let reps = orbit_representatives(&all, &Permutation::all(2)).unwrap();
        assert_eq!(reps.len(), 5);
    }

    #[test]
    fn orbits_reexpand() {
        let all = enumerate_complexes(3).unwrap();
        let group = Permutation::all(3);
        let reps = orbit_representatives(&all, &group).unwrap();
        assert!(reps.len() < all.len());
        let mut union = BTreeSet::new();
        for r in &reps {
            union.extend(orbit(r, &group).unwrap());
        }
        assert_eq!(union.len(), 20);
    }

    #[test]
    fn spanning_trees_share_form() {
        let group = Permutation::all(3);
        let forms: BTreeSet<_> = spanning_trees(3)
            .iter()
            .map(|t| canonical_form(&t.to_complex(), &group).unwrap())
            .collect();
        assert_eq!(forms.len(), 1);
        let k = spanning_trees(3)[0].to_complex();
        assert_eq!(canonical_form(&k, &[Permutation::identity(3)]).unwrap(), k);
    }
}
