//! Deciding whether a complex generates a language.

pub mod cnf;
pub mod csp;
pub mod refute;

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::enumerate::{enumerate_complexes, orbit, orbit_representatives, MAX_ENUMERATION_N};
use crate::error::{Error, Result};
use crate::generators::{drop_constant_positions, proc_constant, proc_product, proc_upclosed_edges};
use crate::lang::{
    automorphisms, for_each_word, irreducible_factorization, is_downwards_closed,
    is_upwards_closed, Alphabet, Language, Permutation, Word,
};
use crate::procedure::{verify_generates, Procedure};

pub use csp::{CanonicalCsp, SolveLimits, SolveOutcome, SolveStats};
pub use refute::{refute_necessary, Certificate};

/// Tag mixed into cache keys and reports; bump when verdict logic changes.
pub const ENGINE_VERSION: &str = "commplex-engine/1";

#[derive(Clone, Debug)]
pub struct DecideOptions {
    /// Use the closed-language characterizations when they apply.
    pub fast_paths: bool,
    /// Try the necessary conditions before searching.
    pub refuters: bool,
    /// Decide each irreducible factor separately.
    pub factorize: bool,
    pub timeout: Option<Duration>,
    pub node_limit: Option<u64>,
    /// Largest number of full input tuples in a canonical instance.
    pub max_tuples: u128,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            fast_paths: true,
            refuters: true,
            factorize: true,
            timeout: None,
            node_limit: None,
            max_tuples: csp::DEFAULT_MAX_TUPLES,
        }
    }
}

impl DecideOptions {
    /// Only the canonical search, nothing else.
    pub fn search_only() -> Self {
        DecideOptions { fast_paths: false, refuters: false, factorize: false, ..Default::default() }
    }

    fn limits(&self) -> SolveLimits {
        SolveLimits { timeout: self.timeout, node_limit: self.node_limit }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Generates,
    DoesNotGenerate,
    /// A time or node limit was reached first.
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Generates => "generates",
            Verdict::DoesNotGenerate => "does-not-generate",
            Verdict::Undecided => "undecided",
        })
    }
}

/// Which stage of the pipeline settled the query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    SingleWord,
    UpwardsClosed,
    DownwardsClosed,
    Refuter,
    Factorization,
    Search,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::SingleWord => "single-word",
            Method::UpwardsClosed => "upwards-closed",
            Method::DownwardsClosed => "downwards-closed",
            Method::Refuter => "refuter",
            Method::Factorization => "factorization",
            Method::Search => "search",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecisionStats {
    pub nodes: u64,
    pub backtracks: u64,
    pub variables: usize,
    pub tuples: usize,
    pub elapsed_ms: u128,
}

impl DecisionStats {
    fn absorb(&mut self, s: &DecisionStats) {
        self.nodes += s.nodes;
        self.backtracks += s.backtracks;
        self.variables += s.variables;
        self.tuples += s.tuples;
    }
}

#[derive(Clone, Debug)]
pub struct DecisionResult {
    pub verdict: Verdict,
    pub method: Method,
    /// A verified generation procedure, for positive verdicts.
    pub witness: Option<Procedure>,
    pub certificate: Option<Certificate>,
    pub stats: DecisionStats,
}

impl DecisionResult {
    pub fn generates(&self) -> bool {
        self.verdict == Verdict::Generates
    }

    fn positive(method: Method, witness: Procedure) -> Self {
        DecisionResult {
            verdict: Verdict::Generates,
            method,
            witness: Some(witness),
            certificate: None,
            stats: DecisionStats::default(),
        }
    }

    fn negative(method: Method, certificate: Certificate) -> Self {
        DecisionResult {
            verdict: Verdict::DoesNotGenerate,
            method,
            witness: None,
            certificate: Some(certificate),
            stats: DecisionStats::default(),
        }
    }

    fn undecided(method: Method) -> Self {
        DecisionResult {
            verdict: Verdict::Undecided,
            method,
            witness: None,
            certificate: None,
            stats: DecisionStats::default(),
        }
    }
}

fn checked(p: Procedure, l: &Language, k: &SimplicialComplex, method: Method) -> Result<DecisionResult> {
    if !verify_generates(&p, l, k)? {
        return Err(Error::Precondition(format!("{method} witness failed verification")));
    }
    Ok(DecisionResult::positive(method, p))
}

fn flip_outputs(p: &Procedure) -> Result<Procedure> {
    let windows = (0..p.output_n()).map(|i| p.declared_window(i).to_vec()).collect();
    let rules = (0..p.output_n())
        .map(|i| p.rule_table(i).iter().map(|&a| 1 - a).collect())
        .collect();
    Procedure::new(p.input_sizes().to_vec(), p.output_alphabet().clone(), windows, rules)
}

/// Does `k` generate `l`? Positive answers carry a verified witness and
/// negative ones a certificate.
pub fn decide_generates(
    l: &Language,
    k: &SimplicialComplex,
    opts: &DecideOptions,
) -> Result<DecisionResult> {
    let start = Instant::now();
    let mut r = decide_inner(l, k, opts)?;
    r.stats.elapsed_ms = start.elapsed().as_millis();
    Ok(r)
}

fn decide_inner(l: &Language, k: &SimplicialComplex, opts: &DecideOptions) -> Result<DecisionResult> {
    if k.n() != l.n() {
        return Err(Error::SizeMismatch(format!(
            "complex has {} vertices, language has {} positions",
            k.n(),
            l.n()
        )));
    }
    if l.len() == 1 {
        let p = proc_constant(l.alphabet(), &l.words()[0])?;
        return checked(p, l, k, Method::SingleWord);
    }
    if opts.fast_paths && l.is_binary() {
        if let Some(r) = fast_path(l, k)? {
            return Ok(r);
        }
    }
    if opts.refuters {
        if let Some(c) = refute_necessary(l, k, opts)? {
            return Ok(DecisionResult::negative(Method::Refuter, c));
        }
    }
    if opts.factorize {
        let f = irreducible_factorization(l);
        if !f.is_trivial() {
            return decide_factors(l, k, &f.blocks, &f.factors, opts);
        }
    }
    search(l, k, opts)
}

fn fast_path(l: &Language, k: &SimplicialComplex) -> Result<Option<DecisionResult>> {
    let up = is_upwards_closed(l)?;
    let down = !up && is_downwards_closed(l)?;
    if !up && !down {
        return Ok(None);
    }
    let method = if up { Method::UpwardsClosed } else { Method::DownwardsClosed };
    if let Some(c) = refute::uncovered_position(l, k) {
        return Ok(Some(DecisionResult::negative(method, c)));
    }
    let g = k.skeleton1();
    if up {
        if let Some(c) = refute::upwards_certificate(l, k) {
            return Ok(Some(DecisionResult::negative(method, c)));
        }
        let p = drop_constant_positions(&proc_upclosed_edges(&g, l)?, l)?;
        return checked(p, l, k, method).map(Some);
    }
    if let Some(c) = refute::downwards_certificate(l, k) {
        return Ok(Some(DecisionResult::negative(method, c)));
    }
    let c = refute::complement_language(l)?;
    let p = flip_outputs(&proc_upclosed_edges(&g, &c)?)?;
    let p = drop_constant_positions(&p, l)?;
    checked(p, l, k, method).map(Some)
}

fn decide_factors(
    l: &Language,
    k: &SimplicialComplex,
    blocks: &[Vec<usize>],
    factors: &[Language],
    opts: &DecideOptions,
) -> Result<DecisionResult> {
    let mut parts = Vec::with_capacity(blocks.len());
    let mut stats = DecisionStats::default();
    for (block, factor) in blocks.iter().zip(factors) {
        let sub = k.restrict(block)?;
        let r = decide_inner(factor, &sub, opts)?;
        stats.absorb(&r.stats);
        match r.verdict {
            Verdict::Generates => {
                parts.push((block.clone(), r.witness.expect("positive results carry witnesses")))
            }
            Verdict::DoesNotGenerate => {
                let inner = r.certificate.expect("negative results carry certificates");
                let mut out = DecisionResult::negative(
                    Method::Factorization,
                    Certificate::Projection { positions: block.clone(), inner: Box::new(inner) },
                );
                out.stats = stats;
                return Ok(out);
            }
            Verdict::Undecided => {
                let mut out = DecisionResult::undecided(Method::Factorization);
                out.stats = stats;
                return Ok(out);
            }
        }
    }
    let p = proc_product(l.n(), l.alphabet(), &parts)?;
    let mut out = checked(p, l, k, Method::Factorization)?;
    out.stats = stats;
    Ok(out)
}

fn search(l: &Language, k: &SimplicialComplex, opts: &DecideOptions) -> Result<DecisionResult> {
    let c = CanonicalCsp::build(l, k, opts.max_tuples)?;
    let (outcome, s) = csp::solve(&c, opts.limits());
    let stats = DecisionStats {
        nodes: s.nodes,
        backtracks: s.backtracks,
        variables: c.variable_count(),
        tuples: c.tuple_count(),
        elapsed_ms: 0,
    };
    let mut out = match outcome {
        SolveOutcome::Satisfiable(a) => {
            let p = c.extract(&a, l.alphabet())?;
            checked(p, l, k, Method::Search)?
        }
        SolveOutcome::Unsatisfiable => {
            DecisionResult::negative(Method::Search, Certificate::SearchExhausted { nodes: s.nodes })
        }
        SolveOutcome::Unknown => DecisionResult::undecided(Method::Search),
    };
    out.stats = stats;
    Ok(out)
}

/// Outcome of a minimal-complex enumeration.
#[derive(Clone, Debug)]
pub struct MinimalComplexes {
    /// Inclusion-minimal generating complexes, in enumeration order.
    pub minimal: Vec<SimplicialComplex>,
    /// Number of decision queries actually run.
    pub decisions: usize,
    /// Complexes whose query hit a limit; when non-empty the list of
    /// minimal complexes may be incomplete.
    pub undecided: Vec<SimplicialComplex>,
}

impl MinimalComplexes {
    pub fn is_complete(&self) -> bool {
        self.undecided.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct MinimalOptions {
    /// Decide one complex per orbit of the automorphism group of `L`.
    pub symmetry: bool,
    /// Allow five positions (slow).
    pub allow_five: bool,
    pub decide: DecideOptions,
}

impl Default for MinimalOptions {
    fn default() -> Self {
        MinimalOptions { symmetry: true, allow_five: false, decide: DecideOptions::default() }
    }
}

/// All inclusion-minimal complexes generating `l`.
///
/// Complexes are visited by increasing number of simplices; one that
/// contains an already found minimal complex generates and is skipped, so
/// every complex that is decided positively is minimal.
pub fn minimal_complexes(l: &Language, opts: &MinimalOptions) -> Result<MinimalComplexes> {
    let n = l.n();
    let limit = if opts.allow_five { MAX_ENUMERATION_N } else { 4 };
    if n > limit {
        return Err(Error::BoundExceeded {
            what: "positions for minimal-complex enumeration",
            value: n as u128,
            limit: limit as u128,
        });
    }
    let group: Vec<Permutation> = if opts.symmetry {
        automorphisms(l)?
    } else {
        vec![Permutation::identity(n)]
    };
    let all = enumerate_complexes(n)?;
    let reps = orbit_representatives(&all, &group)?;
    let mut levels: Vec<Vec<SimplicialComplex>> = Vec::new();
    for k in reps {
        let c = k.simplex_count();
        if levels.len() <= c {
            levels.resize(c + 1, Vec::new());
        }
        levels[c].push(k);
    }
    let mut minimal: BTreeSet<SimplicialComplex> = BTreeSet::new();
    let mut undecided = Vec::new();
    let mut decisions = 0;
    for level in levels {
        let pending: Vec<SimplicialComplex> = level
            .into_iter()
            .filter(|k| !minimal.iter().any(|m| m.is_subcomplex(k)))
            .collect();
        decisions += pending.len();
        let verdicts: Vec<Result<Verdict>> = pending
            .par_iter()
            .map(|k| decide_generates(l, k, &opts.decide).map(|r| r.verdict))
            .collect();
        for (k, v) in pending.into_iter().zip(verdicts) {
            match v? {
                Verdict::Generates => minimal.extend(orbit(&k, &group)?),
                Verdict::DoesNotGenerate => {}
                Verdict::Undecided => undecided.push(k),
            }
        }
    }
    let mut minimal: Vec<SimplicialComplex> = minimal.into_iter().collect();
    minimal.sort_by(|a, b| (a.maximal().len(), a.maximal()).cmp(&(b.maximal().len(), b.maximal())));
    Ok(MinimalComplexes { minimal, decisions, undecided })
}

/// True when `p` over `k` only produces words of `upper` and every word of
/// `base` is the restriction to `positions` of some output.
pub fn verify_generalized(
    p: &Procedure,
    upper: &Language,
    positions: &[usize],
    base: &[Word],
    k: &SimplicialComplex,
) -> Result<bool> {
    if p.output_n() != upper.n() || k.n() != upper.n() {
        return Ok(false);
    }
    let image = p.image()?;
    if !image.words().iter().all(|w| upper.contains(w)) {
        return Ok(false);
    }
    let produced: BTreeSet<Word> = image
        .words()
        .iter()
        .map(|w| positions.iter().map(|&i| w[i]).collect())
        .collect();
    Ok(base.iter().all(|d| produced.contains(d)) && p.comm_complex()?.is_subcomplex(k))
}

/// Is there a procedure over `k` producing only words of `upper` whose
/// outputs restricted to `positions` include every word of `base`?
pub fn decide_generalized(
    upper: &Language,
    positions: &[usize],
    base: &[Word],
    k: &SimplicialComplex,
    opts: &DecideOptions,
) -> Result<DecisionResult> {
    let start = Instant::now();
    if k.n() != upper.n() {
        return Err(Error::SizeMismatch("complex and language sizes differ".into()));
    }
    if positions.iter().any(|&i| i >= upper.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: *positions.iter().max().expect("non-empty"),
            n: upper.n(),
        });
    }
    if let Some(word) = base.iter().position(|d| d.len() != positions.len()) {
        return Err(Error::LengthMismatch {
            word,
            expected: positions.len(),
            found: base[word].len(),
        });
    }
    let extendable: BTreeSet<Word> = upper
        .words()
        .iter()
        .map(|w| positions.iter().map(|&i| w[i]).collect())
        .collect();
    if let Some(index) = base.iter().position(|d| !extendable.contains(d)) {
        return Ok(DecisionResult::negative(Method::Refuter, Certificate::Uncoverable { index }));
    }
    let c = CanonicalCsp::build_generalized(upper, positions, base, k, opts.max_tuples)?;
    let (outcome, s) = csp::solve(&c, opts.limits());
    let mut out = match outcome {
        SolveOutcome::Satisfiable(a) => {
            let p = c.extract(&a, upper.alphabet())?;
            if !verify_generalized(&p, upper, positions, base, k)? {
                return Err(Error::Precondition("generalized witness failed verification".into()));
            }
            DecisionResult::positive(Method::Search, p)
        }
        SolveOutcome::Unsatisfiable => {
            DecisionResult::negative(Method::Search, Certificate::SearchExhausted { nodes: s.nodes })
        }
        SolveOutcome::Unknown => DecisionResult::undecided(Method::Search),
    };
    out.stats = DecisionStats {
        nodes: s.nodes,
        backtracks: s.backtracks,
        variables: c.variable_count(),
        tuples: c.tuple_count(),
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok(out)
}

/// Valid sequences on the sorted position set `v_set`: words with equal
/// letters at two positions `p`, `p + 1` that both belong to the set.
pub fn valid_sequences(v_set: &[usize], letters: usize) -> Result<Option<Language>> {
    let pairs: Vec<usize> = (0..v_set.len().saturating_sub(1))
        .filter(|&t| v_set[t] + 1 == v_set[t + 1])
        .collect();
    let mut words = Vec::new();
    for_each_word(v_set.len(), letters, |w| {
        if pairs.iter().any(|&t| w[t] == w[t + 1]) {
            words.push(w.to_vec());
        }
    });
    if words.is_empty() {
        return Ok(None);
    }
    Language::new(v_set.len(), Alphabet::new(letters)?, words).map(Some)
}

/// Is the complex `t` (over the sorted position set `v_set`, vertex `p` of
/// `t` standing for `v_set[p]`) good at `v`: some procedure produces only
/// valid sequences and covers every sequence on the other positions?
pub fn is_v_good(
    t: &SimplicialComplex,
    v_set: &[usize],
    v: usize,
    letters: usize,
    opts: &DecideOptions,
) -> Result<DecisionResult> {
    if t.n() != v_set.len() || v_set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("position set must be sorted and match the complex".into()));
    }
    let Some(local) = v_set.iter().position(|&x| x == v) else {
        return Err(Error::InvalidParameter(format!("{v} is not in the position set")));
    };
    let Some(upper) = valid_sequences(v_set, letters)? else {
        return Ok(DecisionResult::negative(Method::Refuter, Certificate::NoValidSequence));
    };
    let positions: Vec<usize> = (0..v_set.len()).filter(|&p| p != local).collect();
    let mut base: Vec<Word> = Vec::new();
    for_each_word(positions.len(), letters, |w| base.push(w.to_vec()));
    base.sort();
    decide_generalized(&upper, &positions, &base, t, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Graph;

    #[test]
    fn ev_on_path() {
        let l = families::ev(3).unwrap();
        let k = Graph::path(3).to_complex();
        let r = decide_generates(&l, &k, &DecideOptions::default()).unwrap();
        assert!(r.generates());
        assert!(verify_generates(r.witness.as_ref().unwrap(), &l, &k).unwrap());
    }

    #[test]
    fn unique3_needs_triangle() {
        let l = families::unique(3).unwrap();
        for k in enumerate_complexes(3).unwrap() {
            let r = decide_generates(&l, &k, &DecideOptions::default()).unwrap();
            assert_eq!(r.generates(), k.is_full(), "{}", k.compact());
            if let Some(c) = &r.certificate {
                assert!(c.recheck(&l, &k).unwrap(), "{c}");
            }
        }
    }

    #[test]
    fn card_ge2_wheel_like() {
        let l = families::card_ge(4, 2).unwrap();
        let cycle = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let path = Graph::path(4);
        let opts = DecideOptions::default();
        assert!(decide_generates(&l, &cycle.to_complex(), &opts).unwrap().generates());
        let r = decide_generates(&l, &path.to_complex(), &opts).unwrap();
        assert_eq!(r.method, Method::UpwardsClosed);
        assert!(!r.generates());
    }

    #[test]
    fn down_closed_witness() {
        let l = families::card_le(3, 1).unwrap();
        let r = decide_generates(&l, &SimplicialComplex::complete_graph(3), &DecideOptions::default())
            .unwrap();
        assert_eq!(r.method, Method::DownwardsClosed);
        assert!(r.generates());
    }

    #[test]
    fn factors_combine() {
        let ev2 = families::ev(2).unwrap();
        let words = ev2.words().iter().flat_map(|w| {
            ev2.words().iter().map(move |u| [w.as_slice(), u.as_slice()].concat())
        });
        let l = Language::new(4, Alphabet::binary(), words).unwrap();
        let k = SimplicialComplex::from_maximal(4, &[0b0011, 0b1100]).unwrap();
        let r = decide_generates(&l, &k, &DecideOptions::default()).unwrap();
        assert_eq!(r.method, Method::Factorization);
        assert!(r.generates());
        let r = decide_generates(&l, &SimplicialComplex::from_maximal(4, &[0b0011, 0b0100, 0b1000]).unwrap(), &DecideOptions::default()).unwrap();
        assert!(!r.generates());
    }

    #[test]
    fn minimal_ev3_trees() {
        let m = minimal_complexes(&families::ev(3).unwrap(), &MinimalOptions::default()).unwrap();
        assert!(m.is_complete());
        assert_eq!(m.minimal.len(), 3);
        assert!(m.minimal.iter().all(|k| k.skeleton1().is_spanning_tree()));
    }

    #[test]
    fn generalized_matches_standard() {
        let l = families::ev(3).unwrap();
        let k = Graph::path(3).to_complex();
        let r = decide_generalized(&l, &[0, 1, 2], l.words(), &k, &DecideOptions::default()).unwrap();
        assert!(r.generates());
        let r = decide_generalized(&l, &[0], &[vec![0], vec![1]], &SimplicialComplex::empty(3), &DecideOptions::default()).unwrap();
        assert!(!r.generates());
        let r = decide_generalized(&families::unique(3).unwrap(), &[0, 1], &[vec![1, 1]], &k, &DecideOptions::default()).unwrap();
        assert_eq!(r.certificate, Some(Certificate::Uncoverable { index: 0 }));
    }

    #[test]
    fn no_consecutive_pair() {
        let t = SimplicialComplex::full(2);
        let r = is_v_good(&t, &[0, 2], 0, 2, &DecideOptions::default()).unwrap();
        assert_eq!(r.certificate, Some(Certificate::NoValidSequence));
    }
}
