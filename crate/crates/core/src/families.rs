//! Named language families.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lang::{Alphabet, Language, Letter, Word};

fn positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    Ok(())
}

fn weight(w: &[Letter]) -> usize {
    w.iter().filter(|&&l| l == 1).count()
}

fn binary(n: usize, keep: impl FnMut(&[Letter]) -> bool) -> Result<Language> {
    positive(n)?;
    Language::from_predicate(n, Alphabet::binary(), keep)
}

/// Binary words with an even number of 1's.
pub fn ev(n: usize) -> Result<Language> {
    binary(n, |w| weight(w).is_multiple_of(2))
}

/// Binary words with an odd number of 1's.
pub fn od(n: usize) -> Result<Language> {
    binary(n, |w| weight(w) % 2 == 1)
}

/// Non-decreasing words over `{0, .., k-1}`.
pub fn nd(n: usize, k: usize) -> Result<Language> {
    positive(n)?;
    Language::from_predicate(n, Alphabet::new(k)?, |w| w.windows(2).all(|p| p[0] <= p[1]))
}

/// Non-constant words over `{0, .., k-1}`.
pub fn nc(n: usize, k: usize) -> Result<Language> {
    positive(n)?;
    Language::from_predicate(n, Alphabet::new(k)?, |w| w.iter().any(|&l| l != w[0]))
}

/// Binary words with at least `k` ones.
pub fn card_ge(n: usize, k: usize) -> Result<Language> {
    binary(n, |w| weight(w) >= k)
}

/// Binary words with at most `k` ones.
pub fn card_le(n: usize, k: usize) -> Result<Language> {
    binary(n, |w| weight(w) <= k)
}

/// Binary words with exactly one 1.
pub fn unique(n: usize) -> Result<Language> {
    binary(n, |w| weight(w) == 1)
}

/// Binary words with one 1 or all ones.
pub fn one_or_all(n: usize) -> Result<Language> {
    binary(n, |w| {
        let c = weight(w);
        c == 1 || c == n
    })
}

/// Binary words with zero, one or `n` ones.
pub fn one_or_all_or_zero(n: usize) -> Result<Language> {
    binary(n, |w| {
        let c = weight(w);
        c <= 1 || c == n
    })
}

/// Words over `{0, .., k-1}` with two equal consecutive letters.
pub fn eq(n: usize, k: usize) -> Result<Language> {
    positive(n)?;
    Language::from_predicate(n, Alphabet::new(k)?, |w| w.windows(2).any(|p| p[0] == p[1]))
}

/// Independent sets of `g`, as characteristic vectors.
pub fn graph_independent(g: &Graph) -> Result<Language> {
    positive(g.n())?;
    binary(g.n(), |w| {
        g.edges()
            .into_iter()
            .all(|(u, v)| !(w[u] == 1 && w[v] == 1))
    })
}

/// The `k` constant words of length `n`.
pub fn constants(n: usize, k: usize) -> Result<Language> {
    positive(n)?;
    let alphabet = Alphabet::new(k)?;
    let words = (0..k).map(|a| vec![a as Letter; n]);
    Language::new(n, alphabet, words)
}

/// All of `{0, .., k-1}^n`.
pub fn full(n: usize, k: usize) -> Result<Language> {
    positive(n)?;
    Language::from_predicate(n, Alphabet::new(k)?, |_| true)
}

/// Largest number of non-empty simplices accepted by [`realizer`].
pub const REALIZER_MAX_SIMPLICES: usize = 15;

/// A language whose generating complexes are exactly those containing `k`.
///
/// Letters are bitmasks over the non-empty simplices of `k` (in
/// [`SimplicialComplex::nonempty_simplices`] order). For every assignment
/// `h` of a bit to each simplex, position `i` receives `h` restricted to the
/// simplices containing `i`.
pub fn realizer(k: &SimplicialComplex) -> Result<Language> {
    positive(k.n())?;
    let simplices = k.nonempty_simplices();
    let m = simplices.len();
    if m > REALIZER_MAX_SIMPLICES {
        return Err(Error::BoundExceeded {
            what: "simplices in realizer",
            value: m as u128,
            limit: REALIZER_MAX_SIMPLICES as u128,
        });
    }
    let masks: Vec<u32> = (0..k.n())
        .map(|i| {
            simplices
                .iter()
                .enumerate()
                .filter(|(_, &s)| s >> i & 1 == 1)
                .fold(0u32, |acc, (b, _)| acc | 1 << b)
        })
        .collect();
    let words = (0u32..1 << m).map(|h| {
        masks
            .iter()
            .map(|&mask| (h & mask) as Letter)
            .collect::<Word>()
    });
    Language::new(k.n(), Alphabet::new(1 << m)?, words)
}

/// Looks up a family by name. `k` is the alphabet size or threshold, where
/// the family takes one.
pub fn by_name(name: &str, n: usize, k: Option<usize>) -> Result<Language> {
    let need = |what: &str| {
        k.ok_or_else(|| Error::InvalidParameter(format!("family {name} needs {what}")))
    };
    match name {
        "ev" => ev(n),
        "od" => od(n),
        "nd" => nd(n, k.unwrap_or(2)),
        "nc" => nc(n, k.unwrap_or(2)),
        "card-ge" | "card_ge" => card_ge(n, need("a threshold")?),
        "card-le" | "card_le" => card_le(n, need("a threshold")?),
        "unique" => unique(n),
        "one-or-all" | "one_or_all" => one_or_all(n),
        "one-or-all-or-zero" | "one_or_all_or_zero" => one_or_all_or_zero(n),
        "eq" => eq(n, k.unwrap_or(2)),
        "constants" => constants(n, k.unwrap_or(2)),
        "full" => full(n, k.unwrap_or(2)),
        _ => Err(Error::InvalidParameter(format!("unknown family {name}"))),
    }
}

/// Names accepted by [`by_name`].
pub const FAMILY_NAMES: &[&str] = &[
    "ev",
    "od",
    "nd",
    "nc",
    "card-ge",
    "card-le",
    "unique",
    "one-or-all",
    "one-or-all-or-zero",
    "eq",
    "constants",
    "full",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::for_each_word;

    fn strings(l: &Language) -> Vec<String> {
        l.words().iter().map(|w| l.format_word(w)).collect()
    }

    #[test]
    fn small_families() {
        assert_eq!(strings(&ev(3).unwrap()), ["000", "011", "101", "110"]);
        assert_eq!(strings(&unique(3).unwrap()), ["001", "010", "100"]);
        assert_eq!(strings(&card_le(3, 1).unwrap()), ["000", "001", "010", "100"]);
        assert_eq!(strings(&nd(3, 2).unwrap()), ["000", "001", "011", "111"]);
        assert_eq!(strings(&one_or_all(3).unwrap()), ["001", "010", "100", "111"]);
        assert_eq!(
            strings(&one_or_all_or_zero(3).unwrap()),
            ["000", "001", "010", "100", "111"]
        );
        assert_eq!(strings(&constants(2, 3).unwrap()), ["00", "11", "22"]);
    }

    #[test]
    fn eq_count() {
        // 81 words minus 3·2·2·2 with no equal neighbours
        assert_eq!(eq(4, 3).unwrap().len(), 57);
        assert_eq!(eq(4, 2).unwrap().len(), 16 - 2);
    }

    #[test]
    fn nc_and_nd_sizes() {
        assert_eq!(nc(3, 3).unwrap().len(), 27 - 3);
        // multisets of size 3 from 3 letters
        assert_eq!(nd(3, 3).unwrap().len(), 10);
        assert!(nc(1, 2).is_err());
        assert!(card_ge(2, 3).is_err());
    }

    #[test]
    fn graph_independent_path() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            strings(&graph_independent(&g).unwrap()),
            ["000", "001", "010", "100", "101"]
        );
    }

    #[test]
    fn realizer_of_small_complexes() {
        let edge = SimplicialComplex::from_maximal(2, &[0b11]).unwrap();
        // simplices {0},{1},{0,1}
        let r = realizer(&edge).unwrap();
        assert_eq!(r.alphabet().size(), 8);
        assert_eq!(r.len(), 8);
        let empty = SimplicialComplex::empty(3);
        assert_eq!(realizer(&empty).unwrap().len(), 1);
    }

    #[test]
    fn realizer_letters_are_local() {
        let k = SimplicialComplex::from_maximal(3, &[0b011, 0b110]).unwrap();
        let simplices = k.nonempty_simplices();
        let r = realizer(&k).unwrap();
        for w in r.words() {
            for (i, &l) in w.iter().enumerate() {
                for (b, &s) in simplices.iter().enumerate() {
                    if s >> i & 1 == 0 {
                        assert_eq!(l >> b & 1, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn predicates_recheck() {
        let l = eq(4, 3).unwrap();
        for_each_word(4, 3, |w| {
            assert_eq!(l.contains(w), w.windows(2).any(|p| p[0] == p[1]));
        });
    }
}
