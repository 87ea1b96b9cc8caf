//! Finite languages of fixed-length words and the language-level operations
//! used by the decision engine: projection, images, the symmetric-group
//! action, closure tests and factorization into irreducible components.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::procedure::Procedure;

/// A letter is a dense index into an [`Alphabet`].
pub type Letter = u16;

/// A word over some alphabet, one letter per position.
pub type Word = Vec<Letter>;

/// Largest alphabet a [`Language`] may use.
pub const MAX_ALPHABET: usize = 1 << 15;

/// A finite alphabet `{0, .., size-1}` with optional display names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
    names: Option<Vec<String>>,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("alphabet size must be >= 1".into()));
        }
        if size > MAX_ALPHABET {
            return Err(Error::BoundExceeded {
                what: "alphabet size",
                value: size as u128,
                limit: MAX_ALPHABET as u128,
            });
        }
        Ok(Alphabet { size, names: None })
    }

    pub fn binary() -> Self {
        Alphabet {
            size: 2,
            names: None,
        }
    }

    pub fn with_names(names: Vec<String>) -> Result<Self> {
        let mut alphabet = Alphabet::new(names.len())?;
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::InvalidParameter(
                "alphabet names must be distinct".into(),
            ));
        }
        alphabet.names = Some(names);
        Ok(alphabet)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of a letter; defaults to its decimal index.
    pub fn name(&self, letter: Letter) -> String {
        match &self.names {
            Some(names) => names[letter as usize].clone(),
            None => letter.to_string(),
        }
    }

    /// True when every letter renders as a single character, so words can be
    /// written as plain strings.
    pub fn is_compact(&self) -> bool {
        match &self.names {
            Some(names) => names.iter().all(|s| s.chars().count() == 1),
            None => self.size <= 10,
        }
    }

    /// Looks up a letter by display name.
    pub fn parse_letter(&self, name: &str) -> Option<Letter> {
        match &self.names {
            Some(names) => names.iter().position(|s| s == name).map(|i| i as Letter),
            None => name
                .parse::<usize>()
                .ok()
                .filter(|&v| v < self.size)
                .map(|v| v as Letter),
        }
    }
}

/// A non-empty finite set of words of length `n` over an alphabet, stored in
/// lexicographic order with a hash index for membership.
#[derive(Clone)]
pub struct Language {
    n: usize,
    alphabet: Alphabet,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    origin: Vec<usize>,
}

impl Language {
    /// Builds a language, sorting and deduplicating the words.
    pub fn new(n: usize, alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        for (k, w) in words.iter().enumerate() {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    word: k,
                    expected: n,
                    found: w.len(),
                });
            }
            if let Some(&l) = w.iter().find(|&&l| l as usize >= alphabet.size()) {
                return Err(Error::LetterOutOfRange {
                    letter: l as usize,
                    size: alphabet.size(),
                });
            }
        }
        if words.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        words.sort_unstable();
        words.dedup();
        Ok(Self::from_sorted(n, alphabet, words, (0..n).collect()))
    }

    pub(crate) fn from_sorted(
        n: usize,
        alphabet: Alphabet,
        words: Vec<Word>,
        origin: Vec<usize>,
    ) -> Self {
        let index = words
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();
        Language {
            n,
            alphabet,
            words,
            index,
            origin,
        }
    }

    /// Every word of `A^n` satisfying `keep`.
    pub fn from_predicate(
        n: usize,
        alphabet: Alphabet,
        mut keep: impl FnMut(&[Letter]) -> bool,
    ) -> Result<Self> {
        let total = (alphabet.size() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > 10_000_000 {
            return Err(Error::BoundExceeded {
                what: "words enumerated",
                value: total,
                limit: 10_000_000,
            });
        }
        let mut words = Vec::new();
        for_each_word(n, alphabet.size(), |w| {
            if keep(w) {
                words.push(w.to_vec());
            }
        });
        if words.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        // odometer order is lexicographic already
        Ok(Self::from_sorted(n, alphabet, words, (0..n).collect()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, word: &[Letter]) -> bool {
        self.index.contains_key(word)
    }

    pub fn index_of(&self, word: &[Letter]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Original position indices, as recorded by [`project`].
    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    pub fn is_binary(&self) -> bool {
        self.alphabet.size() == 2
    }

    /// Distinct letters used at position `i`.
    pub fn letters_at(&self, i: usize) -> BTreeSet<Letter> {
        self.words.iter().map(|w| w[i]).collect()
    }

    /// Renders a word using the alphabet's display names.
    pub fn format_word(&self, word: &[Letter]) -> String {
        format_word(&self.alphabet, word)
    }

    /// A serialization independent of display names, used for cache keys.
    pub fn canonical_string(&self) -> String {
        let mut s = format!("n={};a={};", self.n, self.alphabet.size());
        for w in &self.words {
            for (k, l) in w.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                s.push_str(&l.to_string());
            }
            s.push(';');
        }
        s
    }

    /// Returns a copy with a different alphabet (same size), e.g. to attach names.
    pub fn with_alphabet(mut self, alphabet: Alphabet) -> Result<Self> {
        if alphabet.size() != self.alphabet.size() {
            return Err(Error::SizeMismatch("alphabet size differs".into()));
        }
        self.alphabet = alphabet;
        Ok(self)
    }
}

impl PartialEq for Language {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.alphabet.size() == other.alphabet.size()
            && self.words == other.words
    }
}

impl Eq for Language {}

impl fmt::Debug for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Language(n={}, {{", self.n)?;
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.format_word(w))?;
        }
        write!(f, "}})")
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.format_word(w))?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn format_word(alphabet: &Alphabet, word: &[Letter]) -> String {
    if alphabet.is_compact() {
        word.iter().map(|&l| alphabet.name(l)).collect()
    } else {
        let parts: Vec<String> = word.iter().map(|&l| alphabet.name(l)).collect();
        format!("({})", parts.join(" "))
    }
}

/// Calls `f` on every word of `{0..k-1}^n` in lexicographic order.
pub fn for_each_word(n: usize, k: usize, mut f: impl FnMut(&[Letter])) {
    let mut w = vec![0 as Letter; n];
    loop {
        f(&w);
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if (w[pos] as usize) + 1 < k {
                w[pos] += 1;
                for x in &mut w[pos + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Restricts every word to `positions` (strictly increasing) and reindexes
/// them as `0..positions.len()`, recording the original indices.
pub fn project(lang: &Language, positions: &[usize]) -> Result<Language> {
    if positions.is_empty() {
        return Err(Error::InvalidParameter("projection onto no positions".into()));
    }
    check_positions(positions, lang.n())?;
    let mut words: Vec<Word> = lang
        .words()
        .iter()
        .map(|w| positions.iter().map(|&p| w[p]).collect())
        .collect();
    words.sort_unstable();
    words.dedup();
    let origin = positions.iter().map(|&p| lang.origin()[p]).collect();
    Ok(Language::from_sorted(
        positions.len(),
        lang.alphabet().clone(),
        words,
        origin,
    ))
}

/// Number of distinct restrictions of the words to `positions`; cheaper than
/// building the projection.
pub fn projection_size(lang: &Language, positions: &[usize]) -> usize {
    let set: std::collections::HashSet<Vec<Letter>> = lang
        .words()
        .iter()
        .map(|w| positions.iter().map(|&p| w[p]).collect())
        .collect();
    set.len()
}

fn check_positions(positions: &[usize], n: usize) -> Result<()> {
    for (k, &p) in positions.iter().enumerate() {
        if p >= n {
            return Err(Error::VertexOutOfRange { vertex: p, n });
        }
        if k > 0 && positions[k - 1] >= p {
            return Err(Error::InvalidParameter(
                "positions must be strictly increasing".into(),
            ));
        }
    }
    Ok(())
}

/// `{ m(x) : x in L }` where the map is given by rule tables reading the
/// positions of `L` as input cells.
pub fn image_under_map(lang: &Language, map: &Procedure) -> Result<Language> {
    if map.input_count() != lang.n() {
        return Err(Error::SizeMismatch(format!(
            "map reads {} cells, language has {} positions",
            map.input_count(),
            lang.n()
        )));
    }
    if let Some(j) = (0..map.input_count()).find(|&j| map.input_size(j) < lang.alphabet().size())
    {
        return Err(Error::SizeMismatch(format!(
            "input cell {j} has alphabet {} smaller than the language alphabet {}",
            map.input_size(j),
            lang.alphabet().size()
        )));
    }
    let mut input = vec![0usize; lang.n()];
    let words = lang.words().iter().map(|w| {
        for (slot, &l) in input.iter_mut().zip(w) {
            *slot = l as usize;
        }
        map.eval(&input)
    });
    let words: Vec<Word> = words.collect::<Result<_>>()?;
    Language::new(map.output_n(), map.output_alphabet().clone(), words)
}

/// A permutation of `0..n`, acting on positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn from_vec(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::InvalidParameter(format!(
                    "{map:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    /// The transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.map.swap(a, b);
        p
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &g) in self.map.iter().enumerate() {
            inv[g] = i;
        }
        Permutation { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &g)| i == g)
    }

    /// Acts on a word: `(g·x)_{g(i)} = x_i`.
    pub fn act_on_word<T: Copy>(&self, word: &[T]) -> Vec<T> {
        let mut out = word.to_vec();
        for (i, &x) in word.iter().enumerate() {
            out[self.map[i]] = x;
        }
        out
    }

    /// Image of a vertex bitmask.
    pub fn act_on_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out |= 1 << self.map[i];
            m &= m - 1;
        }
        out
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { map: p.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
            p.swap(i - 1, j);
            p[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// `{ g·x : x in L }`.
pub fn act(g: &Permutation, lang: &Language) -> Result<Language> {
    if g.n() != lang.n() {
        return Err(Error::SizeMismatch(format!(
            "permutation of {} points acting on {} positions",
            g.n(),
            lang.n()
        )));
    }
    let mut words: Vec<Word> = lang.words().iter().map(|w| g.act_on_word(w)).collect();
    words.sort_unstable();
    Ok(Language::from_sorted(
        lang.n(),
        lang.alphabet().clone(),
        words,
        lang.origin().to_vec(),
    ))
}

/// Default bound on `n` for [`automorphisms`].
pub const AUTOMORPHISM_BOUND: usize = 8;

/// All position permutations leaving `L` invariant, by brute force.
pub fn automorphisms(lang: &Language) -> Result<Vec<Permutation>> {
    automorphisms_bounded(lang, AUTOMORPHISM_BOUND)
}

pub fn automorphisms_bounded(lang: &Language, bound: usize) -> Result<Vec<Permutation>> {
    if lang.n() > bound {
        return Err(Error::BoundExceeded {
            what: "positions for automorphism search",
            value: lang.n() as u128,
            limit: bound as u128,
        });
    }
    Ok(Permutation::all(lang.n())
        .into_iter()
        .filter(|g| lang.words().iter().all(|w| lang.contains(&g.act_on_word(w))))
        .collect())
}

fn require_binary(lang: &Language) -> Result<()> {
    if lang.alphabet().size() != 2 {
        return Err(Error::NotBinary(lang.alphabet().size()));
    }
    Ok(())
}

/// Closed under turning a 0 into a 1.
pub fn is_upwards_closed(lang: &Language) -> Result<bool> {
    require_binary(lang)?;
    Ok(flips_stay_inside(lang, 0))
}

/// Closed under turning a 1 into a 0.
pub fn is_downwards_closed(lang: &Language) -> Result<bool> {
    require_binary(lang)?;
    Ok(flips_stay_inside(lang, 1))
}

fn flips_stay_inside(lang: &Language, from: Letter) -> bool {
    let mut buf = vec![0; lang.n()];
    lang.words().iter().all(|w| {
        buf.copy_from_slice(w);
        (0..w.len()).all(|i| {
            if buf[i] != from {
                return true;
            }
            buf[i] = 1 - from;
            let ok = lang.contains(&buf);
            buf[i] = from;
            ok
        })
    })
}

/// Binary complement `x -> 1 - x` applied letterwise.
pub fn complement(lang: &Language) -> Result<Language> {
    require_binary(lang)?;
    let words = lang
        .words()
        .iter()
        .map(|w| w.iter().map(|&l| 1 - l).collect());
    Language::new(lang.n(), lang.alphabet().clone(), words)
}

/// Irreducible factorization: the finest partition of the positions into
/// blocks with `L` equal to the product of its block projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Blocks of original positions, each sorted, ordered by smallest element.
    pub blocks: Vec<Vec<usize>>,
    /// `factors[k]` is the projection of `L` onto `blocks[k]`.
    pub factors: Vec<Language>,
}

impl Factorization {
    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Reassembles the product of the factors on the original positions.
    pub fn product(&self, n: usize) -> Result<Language> {
        let alphabet = self.factors[0].alphabet().clone();
        let mut words: Vec<Word> = vec![vec![0; n]];
        for (block, factor) in self.blocks.iter().zip(&self.factors) {
            let mut next = Vec::with_capacity(words.len() * factor.len());
            for w in &words {
                for f in factor.words() {
                    let mut x = w.clone();
                    for (&p, &l) in block.iter().zip(f) {
                        x[p] = l;
                    }
                    next.push(x);
                }
            }
            words = next;
        }
        Language::new(n, alphabet, words)
    }
}

/// True when `L = π_{part}(L) × π_{rest}(L)`, tested by cardinality.
pub fn splits_along(lang: &Language, part: &[usize]) -> bool {
    let rest: Vec<usize> = (0..lang.n()).filter(|p| !part.contains(p)).collect();
    if part.is_empty() || rest.is_empty() {
        return true;
    }
    projection_size(lang, part) * projection_size(lang, &rest) == lang.len()
}

pub fn irreducible_factorization(lang: &Language) -> Factorization {
    let mut pending: Vec<Vec<usize>> = vec![(0..lang.n()).collect()];
    let mut done: Vec<Vec<usize>> = Vec::new();
    while let Some(block) = pending.pop() {
        match smallest_split(lang, &block) {
            Some((a, b)) => {
                pending.push(a);
                pending.push(b);
            }
            None => done.push(block),
        }
    }
    done.sort();
    let factors = done
        .iter()
        .map(|b| project(lang, b).expect("blocks are non-empty and sorted"))
        .collect();
    Factorization {
        blocks: done,
        factors,
    }
}

/// Smallest part containing the block's first position along which the
/// block's projection splits.
fn smallest_split(lang: &Language, block: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let m = block.len();
    if m < 2 {
        return None;
    }
    let sub = project(lang, block).ok()?;
    let mut candidates: Vec<u32> = (0u32..(1 << (m - 1))).map(|s| (s << 1) | 1).collect();
    candidates.pop(); // the whole block
    candidates.sort_by_key(|s| (s.count_ones(), *s));
    for s in candidates {
        let part: Vec<usize> = (0..m).filter(|&k| s >> k & 1 == 1).collect();
        if splits_along(&sub, &part) {
            let a = part.iter().map(|&k| block[k]).collect();
            let b = (0..m).filter(|&k| s >> k & 1 == 0).map(|k| block[k]).collect();
            return Some((a, b));
        }
    }
    None
}

pub fn is_irreducible(lang: &Language) -> bool {
    lang.n() <= 1 || smallest_split(lang, &(0..lang.n()).collect::<Vec<_>>()).is_none()
}

/// Positions `i` and `j` are independent when `π_{ij}(L) = π_i(L) × π_j(L)`.
pub fn independent_pair(lang: &Language, i: usize, j: usize) -> Result<bool> {
    if i == j {
        return Err(Error::InvalidParameter("independence needs distinct positions".into()));
    }
    for p in [i, j] {
        if p >= lang.n() {
            return Err(Error::VertexOutOfRange { vertex: p, n: lang.n() });
        }
    }
    let pair = projection_size(lang, &[i.min(j), i.max(j)]);
    Ok(pair == lang.letters_at(i).len() * lang.letters_at(j).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn bin(n: usize, words: &[&str]) -> Language {
        Language::new(
            n,
            Alphabet::binary(),
            words
                .iter()
                .map(|s| s.bytes().map(|b| (b - b'0') as Letter).collect()),
        )
        .unwrap()
    }

    #[test]
    fn make_language_dedups() {
        let l = bin(2, &["01", "10", "01"]);
        assert_eq!(l.len(), 2);
        assert_eq!(l.to_string(), "{01,10}");
        let single = bin(1, &["1"]);
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn make_language_errors() {
        let err = Language::new(3, Alphabet::binary(), vec![vec![0, 1, 0, 1]]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
        let err = Language::new(2, Alphabet::binary(), vec![vec![0, 2]]).unwrap_err();
        assert!(matches!(err, Error::LetterOutOfRange { .. }));
        let err = Language::new(2, Alphabet::binary(), Vec::<Word>::new()).unwrap_err();
        assert_eq!(err, Error::EmptyLanguage);
    }

    #[test]
    fn projection_examples() {
        let nd = families::nd(3, 2).unwrap();
        assert_eq!(project(&nd, &[0, 2]).unwrap(), bin(2, &["00", "01", "11"]));
        let u4 = families::unique(4).unwrap();
        assert_eq!(
            project(&u4, &[0, 1, 2]).unwrap(),
            families::card_le(3, 1).unwrap()
        );
        assert_eq!(project(&nd, &[0, 1, 2]).unwrap(), nd);
        assert_eq!(project(&nd, &[1, 2]).unwrap().origin(), &[1, 2]);
        assert!(project(&nd, &[]).is_err());
    }

    #[test]
    fn action_examples() {
        let nd2 = families::nd(2, 2).unwrap();
        let swapped = act(&Permutation::swap(2, 0, 1), &nd2).unwrap();
        assert_eq!(swapped, bin(2, &["00", "10", "11"]));
        let ev = families::ev(4).unwrap();
        for g in Permutation::all(4) {
            assert_eq!(act(&g, &ev).unwrap(), ev);
        }
        assert_eq!(act(&Permutation::identity(2), &nd2).unwrap(), nd2);
        assert!(act(&Permutation::identity(3), &nd2).is_err());
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphisms(&families::card_le(3, 1).unwrap()).unwrap().len(), 6);
        let nd = automorphisms(&families::nd(3, 2).unwrap()).unwrap();
        assert_eq!(nd, vec![Permutation::identity(3)]);
        assert_eq!(automorphisms(&families::eq(3, 2).unwrap()).unwrap().len(), 2);
        let big = families::full(9, 2).unwrap();
        assert!(automorphisms(&big).is_err());
    }

    #[test]
    fn closure_examples() {
        assert!(is_upwards_closed(&families::card_ge(4, 2).unwrap()).unwrap());
        assert!(is_downwards_closed(&families::card_le(4, 2).unwrap()).unwrap());
        let u3 = families::unique(3).unwrap();
        assert!(!is_upwards_closed(&u3).unwrap());
        assert!(!is_downwards_closed(&u3).unwrap());
        assert!(is_upwards_closed(&families::eq(3, 3).unwrap()).is_err());
    }

    #[test]
    fn factorization_examples() {
        let ev = families::ev(3).unwrap();
        assert_eq!(irreducible_factorization(&ev).blocks, vec![vec![0, 1, 2]]);
        let full = families::full(3, 2).unwrap();
        assert_eq!(
            irreducible_factorization(&full).blocks,
            vec![vec![0], vec![1], vec![2]]
        );
        // ev(2) followed by a constant 1
        let cat = bin(3, &["001", "111"]);
        let f = irreducible_factorization(&cat);
        assert_eq!(f.blocks, vec![vec![0, 1], vec![2]]);
        assert_eq!(f.product(3).unwrap(), cat);
    }

    #[test]
    fn independence_examples() {
        let ooa = families::one_or_all(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(independent_pair(&ooa, i, j).unwrap());
                }
            }
        }
        assert!(!independent_pair(&families::unique(3).unwrap(), 0, 1).unwrap());
        assert!(!independent_pair(&families::one_or_all(2).unwrap(), 0, 1).unwrap());
        assert!(independent_pair(&ooa, 1, 1).is_err());
    }

    #[test]
    fn permutations_enumerate() {
        assert_eq!(Permutation::all(4).len(), 24);
        let g = Permutation::from_vec(vec![2, 0, 1]).unwrap();
        assert!(g.compose(&g.inverse()).is_identity());
        assert!(Permutation::from_vec(vec![0, 0]).is_err());
    }
}
