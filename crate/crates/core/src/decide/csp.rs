//! The canonical constraint instance: one input cell per maximal simplex
//! holding a base word, one variable per (output position, restriction
//! class), diagonal pins, and a membership constraint per full tuple.

use std::time::{Duration, Instant};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::lang::{Alphabet, Language, Letter, Word};
use crate::procedure::Procedure;

/// Default bound on `|D|^|J|`, the number of membership constraints.
pub const DEFAULT_MAX_TUPLES: u128 = 4_000_000;

/// Largest number of distinct letters a single position may take.
pub const MAX_LOCAL_LETTERS: usize = 128;

/// A constraint instance whose solutions are exactly the canonical
/// procedures: procedures with one input cell per maximal simplex, each
/// holding an index into the base words, such that every output lies in the
/// upper language and the all-`d` input restricts to `d` on the pinned
/// positions.
#[derive(Clone, Debug)]
pub struct CanonicalCsp {
    n: usize,
    upper: Language,
    pinned_positions: Vec<usize>,
    base: Vec<Word>,
    cells: Vec<u32>,
    cell_windows: Vec<Vec<usize>>,
    class_counts: Vec<usize>,
    var_offsets: Vec<usize>,
    var_position: Vec<u32>,
    letters: Vec<Vec<Letter>>,
    initial: Vec<u128>,
    pinned: Vec<bool>,
    conflict: Option<String>,
    tuple_count: usize,
    tuple_vars: Vec<u32>,
    var_tuple_start: Vec<usize>,
    var_tuples: Vec<u32>,
    /// `masks[i][a]`: words of the upper language with local letter `a` at `i`.
    masks: Vec<Vec<Vec<u64>>>,
    chunks: usize,
}

fn pow_bound(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

impl CanonicalCsp {
    /// The standard instance for "does `k` generate `l`": the upper language
    /// and the base words are both `l`, and every position is pinned.
    pub fn build(l: &Language, k: &SimplicialComplex, max_tuples: u128) -> Result<Self> {
        let positions: Vec<usize> = (0..l.n()).collect();
        Self::build_generalized(l, &positions, l.words(), k, max_tuples)
    }

    /// The instance for: some procedure over `k` produces only words of
    /// `upper`, and for every `d` in `base` (a word over `pinned_positions`)
    /// produces a word restricting to `d`.
    pub fn build_generalized(
        upper: &Language,
        pinned_positions: &[usize],
        base: &[Word],
        k: &SimplicialComplex,
        max_tuples: u128,
    ) -> Result<Self> {
        let n = upper.n();
        if k.n() != n {
            return Err(Error::SizeMismatch(format!(
                "complex over {} vertices, language over {n} positions",
                k.n()
            )));
        }
        for (idx, &p) in pinned_positions.iter().enumerate() {
            if p >= n {
                return Err(Error::VertexOutOfRange { vertex: p, n });
            }
            if idx > 0 && pinned_positions[idx - 1] >= p {
                return Err(Error::InvalidParameter("pinned positions must increase".into()));
            }
        }
        if base.is_empty() {
            return Err(Error::InvalidParameter("no base words".into()));
        }
        for d in base {
            if d.len() != pinned_positions.len() {
                return Err(Error::SizeMismatch("base word length".into()));
            }
        }
        let dsize = base.len();
        let cells: Vec<u32> = k.maximal().iter().copied().filter(|&m| m != 0).collect();
        let tuples = pow_bound(dsize, cells.len());
        if tuples > max_tuples {
            return Err(Error::BoundExceeded {
                what: "membership constraints",
                value: tuples,
                limit: max_tuples,
            });
        }
        let tuple_count = tuples as usize;
        let cell_windows: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..cells.len()).filter(|&c| cells[c] >> i & 1 == 1).collect())
            .collect();
        let class_counts: Vec<usize> = cell_windows
            .iter()
            .map(|w| dsize.pow(w.len() as u32))
            .collect();
        let mut var_offsets = Vec::with_capacity(n + 1);
        let mut total = 0usize;
        for &c in &class_counts {
            var_offsets.push(total);
            total += c;
        }
        var_offsets.push(total);
        let var_position: Vec<u32> = (0..n)
            .flat_map(|i| std::iter::repeat_n(i as u32, class_counts[i]))
            .collect();

        let letters: Vec<Vec<Letter>> = (0..n)
            .map(|i| upper.letters_at(i).into_iter().collect())
            .collect();
        if let Some(i) = (0..n).find(|&i| letters[i].len() > MAX_LOCAL_LETTERS) {
            return Err(Error::BoundExceeded {
                what: "distinct letters at one position",
                value: letters[i].len() as u128,
                limit: MAX_LOCAL_LETTERS as u128,
            });
        }
        let chunks = upper.len().div_ceil(64);
        let masks: Vec<Vec<Vec<u64>>> = (0..n)
            .map(|i| {
                letters[i]
                    .iter()
                    .map(|&a| {
                        let mut m = vec![0u64; chunks];
                        for (w, word) in upper.words().iter().enumerate() {
                            if word[i] == a {
                                m[w / 64] |= 1 << (w % 64);
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();

        let full_dom = |i: usize| -> u128 {
            let c = letters[i].len();
            if c == 128 {
                u128::MAX
            } else {
                (1u128 << c) - 1
            }
        };
        let mut initial: Vec<u128> = (0..total).map(|v| full_dom(var_position[v] as usize)).collect();
        let mut pinned = vec![false; total];
        let mut conflict = None;
        for (r, d) in base.iter().enumerate() {
            for (p, &i) in pinned_positions.iter().enumerate() {
                // class of the all-r restriction at i
                let class = (0..cell_windows[i].len()).fold(0usize, |acc, _| acc * dsize + r);
                let var = var_offsets[i] + class;
                let bit = match letters[i].iter().position(|&a| a == d[p]) {
                    Some(b) => 1u128 << b,
                    None => 0,
                };
                initial[var] &= bit;
                pinned[var] = true;
                if initial[var] == 0 && conflict.is_none() {
                    conflict = Some(format!(
                        "diagonal pins at position {i} cannot be met (base word {r})"
                    ));
                }
            }
        }

        let mut tuple_vars = Vec::with_capacity(tuple_count * n);
        let mut digits = vec![0usize; cells.len()];
        for _ in 0..tuple_count {
            for i in 0..n {
                let mut class = 0;
                for &c in cell_windows[i].iter().rev() {
                    class = class * dsize + digits[c];
                }
                tuple_vars.push((var_offsets[i] + class) as u32);
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < dsize {
                    break;
                }
                *d = 0;
            }
        }
        let mut counts = vec![0usize; total + 1];
        for &v in &tuple_vars {
            counts[v as usize + 1] += 1;
        }
        for v in 0..total {
            counts[v + 1] += counts[v];
        }
        let var_tuple_start = counts.clone();
        let mut fill = counts;
        let mut var_tuples = vec![0u32; tuple_vars.len()];
        for (t, chunk) in tuple_vars.chunks(n.max(1)).enumerate() {
            for &v in chunk {
                var_tuples[fill[v as usize]] = t as u32;
                fill[v as usize] += 1;
            }
        }

        Ok(CanonicalCsp {
            n,
            upper: upper.clone(),
            pinned_positions: pinned_positions.to_vec(),
            base: base.to_vec(),
            cells,
            cell_windows,
            class_counts,
            var_offsets,
            var_position,
            letters,
            initial,
            pinned,
            conflict,
            tuple_count,
            tuple_vars,
            var_tuple_start,
            var_tuples,
            masks,
            chunks,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> &Language {
        &self.upper
    }

    pub fn base(&self) -> &[Word] {
        &self.base
    }

    pub fn pinned_positions(&self) -> &[usize] {
        &self.pinned_positions
    }

    /// Maximal simplices used as input cells.
    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    /// Input cells read by position `i`.
    pub fn cell_window(&self, i: usize) -> &[usize] {
        &self.cell_windows[i]
    }

    pub fn class_count(&self, i: usize) -> usize {
        self.class_counts[i]
    }

    pub fn variable_count(&self) -> usize {
        self.initial.len()
    }

    pub fn tuple_count(&self) -> usize {
        self.tuple_count
    }

    /// Variable of position `i`, restriction class `class`.
    pub fn var(&self, i: usize, class: usize) -> usize {
        self.var_offsets[i] + class
    }

    pub fn var_position(&self, v: usize) -> usize {
        self.var_position[v] as usize
    }

    /// Letters position `i` may take, indexed by local letter.
    pub fn local_letters(&self, i: usize) -> &[Letter] {
        &self.letters[i]
    }

    /// Domain of `v` after the pins, as a bitmask over local letters.
    pub fn initial_domain(&self, v: usize) -> u128 {
        self.initial[v]
    }

    pub fn is_pinned(&self, v: usize) -> bool {
        self.pinned[v]
    }

    /// Set when the pins alone are contradictory.
    pub fn pin_conflict(&self) -> Option<&str> {
        self.conflict.as_deref()
    }

    /// Variables of tuple `t`, one per position.
    pub fn tuple(&self, t: usize) -> &[u32] {
        &self.tuple_vars[t * self.n..(t + 1) * self.n]
    }

    fn tuples_of(&self, v: usize) -> &[u32] {
        &self.var_tuples[self.var_tuple_start[v]..self.var_tuple_start[v + 1]]
    }

    /// Number of constraints mentioning `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.var_tuple_start[v + 1] - self.var_tuple_start[v]
    }

    /// True when a full assignment (local letter per variable) satisfies
    /// every pin and membership constraint.
    pub fn check(&self, assignment: &[u8]) -> bool {
        if assignment.len() != self.variable_count() {
            return false;
        }
        if (0..assignment.len()).any(|v| self.initial[v] >> assignment[v] & 1 == 0) {
            return false;
        }
        let mut word = vec![0 as Letter; self.n];
        (0..self.tuple_count).all(|t| {
            for (i, &v) in self.tuple(t).iter().enumerate() {
                word[i] = self.letters[i][assignment[v as usize] as usize];
            }
            self.upper.contains(&word)
        })
    }

    /// The canonical procedure defined by a solution.
    pub fn extract(&self, assignment: &[u8], alphabet: &Alphabet) -> Result<Procedure> {
        let rules: Vec<Vec<Letter>> = (0..self.n)
            .map(|i| {
                (0..self.class_counts[i])
                    .map(|c| self.letters[i][assignment[self.var(i, c)] as usize])
                    .collect()
            })
            .collect();
        Procedure::new(
            vec![self.base.len(); self.cells.len()],
            alphabet.clone(),
            self.cell_windows.clone(),
            rules,
        )
    }

    /// Words of the upper language allowed by a domain of position `i`.
    fn allowed(&self, i: usize, dom: u128, out: &mut [u64]) {
        out.iter_mut().for_each(|x| *x = 0);
        let mut d = dom;
        while d != 0 {
            let a = d.trailing_zeros() as usize;
            d &= d - 1;
            for (o, m) in out.iter_mut().zip(&self.masks[i][a]) {
                *o |= m;
            }
        }
    }
}

/// Limits on one solve.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveLimits {
    pub timeout: Option<Duration>,
    pub node_limit: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub backtracks: u64,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Local letter index per variable.
    Satisfiable(Vec<u8>),
    Unsatisfiable,
    /// A limit was hit before a verdict.
    Unknown,
}

struct State<'a> {
    csp: &'a CanonicalCsp,
    dom: Vec<u128>,
    residual: Vec<u64>,
    dom_trail: Vec<(u32, u128)>,
    res_trail: Vec<(u32, u64)>,
    queue: Vec<u32>,
    queued: Vec<bool>,
    scratch: Vec<u64>,
}

impl<'a> State<'a> {
    fn new(csp: &'a CanonicalCsp) -> Self {
        State {
            csp,
            dom: csp.initial.clone(),
            residual: Vec::new(),
            dom_trail: Vec::new(),
            res_trail: Vec::new(),
            queue: Vec::new(),
            queued: vec![false; csp.initial.len()],
            scratch: vec![0; csp.chunks],
        }
    }

    fn set_dom(&mut self, v: usize, d: u128) {
        self.dom_trail.push((v as u32, self.dom[v]));
        self.dom[v] = d;
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push(v as u32);
        }
    }

    /// Establishes the residual words of every tuple and filters all
    /// domains once. Returns false on a wipe-out.
    fn initialise(&mut self) -> bool {
        let csp = self.csp;
        let n = csp.n;
        let chunks = csp.chunks;
        let full_last = if csp.upper.len().is_multiple_of(64) {
            u64::MAX
        } else {
            (1u64 << (csp.upper.len() % 64)) - 1
        };
        self.residual = vec![u64::MAX; csp.tuple_count * chunks];
        for t in 0..csp.tuple_count {
            let r = &mut self.residual[t * chunks..(t + 1) * chunks];
            r[chunks - 1] = full_last;
        }
        let mut allowed = vec![0u64; chunks];
        for t in 0..csp.tuple_count {
            for i in 0..n {
                let v = csp.tuple_vars[t * n + i] as usize;
                if csp.initial[v] != full_mask(csp.letters[i].len()) {
                    csp.allowed(i, self.dom[v], &mut allowed);
                    let r = &mut self.residual[t * chunks..(t + 1) * chunks];
                    for (x, a) in r.iter_mut().zip(&allowed) {
                        *x &= a;
                    }
                }
            }
            if !self.revise_tuple(t, usize::MAX) {
                return false;
            }
        }
        self.propagate()
    }

    /// Shrinks the domains of the tuple's variables (except `skip`) to the
    /// letters still supported by its residual words.
    fn revise_tuple(&mut self, t: usize, skip: usize) -> bool {
        let csp = self.csp;
        let n = csp.n;
        let chunks = csp.chunks;
        let base = t * chunks;
        if self.residual[base..base + chunks].iter().all(|&x| x == 0) {
            return false;
        }
        for i in 0..n {
            let u = csp.tuple_vars[t * n + i] as usize;
            if u == skip {
                continue;
            }
            let d = self.dom[u];
            if d.count_ones() == 1 && skip != usize::MAX {
                continue;
            }
            let mut supported = 0u128;
            let mut rest = d;
            while rest != 0 {
                let a = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let m = &csp.masks[i][a];
                if (0..chunks).any(|c| self.residual[base + c] & m[c] != 0) {
                    supported |= 1 << a;
                }
            }
            if supported != d {
                if supported == 0 {
                    return false;
                }
                self.set_dom(u, supported);
            }
        }
        true
    }

    fn propagate(&mut self) -> bool {
        let csp = self.csp;
        let chunks = csp.chunks;
        while let Some(v) = self.queue.pop() {
            let v = v as usize;
            self.queued[v] = false;
            let i = csp.var_position[v] as usize;
            let mut allowed = std::mem::take(&mut self.scratch);
            csp.allowed(i, self.dom[v], &mut allowed);
            let mut ok = true;
            for &t in csp.tuples_of(v) {
                let t = t as usize;
                let base = t * chunks;
                let mut changed = false;
                for c in 0..chunks {
                    let old = self.residual[base + c];
                    let new = old & allowed[c];
                    if new != old {
                        self.res_trail.push(((base + c) as u32, old));
                        self.residual[base + c] = new;
                        changed = true;
                    }
                }
                if changed && !self.revise_tuple(t, v) {
                    ok = false;
                    break;
                }
            }
            self.scratch = allowed;
            if !ok {
                for &u in &self.queue {
                    self.queued[u as usize] = false;
                }
                self.queue.clear();
                return false;
            }
        }
        true
    }

    fn mark(&self) -> (usize, usize) {
        (self.dom_trail.len(), self.res_trail.len())
    }

    fn undo(&mut self, mark: (usize, usize)) {
        while self.dom_trail.len() > mark.0 {
            let (v, d) = self.dom_trail.pop().expect("non-empty");
            self.dom[v as usize] = d;
        }
        while self.res_trail.len() > mark.1 {
            let (idx, r) = self.res_trail.pop().expect("non-empty");
            self.residual[idx as usize] = r;
        }
    }

    /// Smallest domain above one, then most constraints, then lowest index.
    fn choose(&self) -> Option<usize> {
        let mut best: Option<(u32, std::cmp::Reverse<usize>, usize)> = None;
        for (v, &d) in self.dom.iter().enumerate() {
            let size = d.count_ones();
            if size > 1 {
                let key = (size, std::cmp::Reverse(self.csp.degree(v)), v);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|b| b.2)
    }
}

fn full_mask(count: usize) -> u128 {
    if count >= 128 {
        u128::MAX
    } else {
        (1u128 << count) - 1
    }
}

struct Frame {
    var: usize,
    remaining: u128,
    mark: (usize, usize),
}

/// Backtracking search with generalized arc consistency on the membership
/// constraints. Deterministic for a given instance.
pub fn solve(csp: &CanonicalCsp, limits: SolveLimits) -> (SolveOutcome, SolveStats) {
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let finish = |outcome, mut stats: SolveStats| {
        stats.elapsed_ms = start.elapsed().as_millis();
        (outcome, stats)
    };
    if csp.conflict.is_some() {
        return finish(SolveOutcome::Unsatisfiable, stats);
    }
    let mut state = State::new(csp);
    if !state.initialise() {
        return finish(SolveOutcome::Unsatisfiable, stats);
    }
    let mut stack: Vec<Frame> = Vec::new();
    let mut descend = true;
    loop {
        if descend {
            match state.choose() {
                None => {
                    let assignment = state.dom.iter().map(|d| d.trailing_zeros() as u8).collect();
                    return finish(SolveOutcome::Satisfiable(assignment), stats);
                }
                Some(v) => stack.push(Frame {
                    var: v,
                    remaining: state.dom[v],
                    mark: state.mark(),
                }),
            }
        }
        let Some(frame) = stack.last_mut() else {
            return finish(SolveOutcome::Unsatisfiable, stats);
        };
        if frame.remaining == 0 {
            let mark = frame.mark;
            stack.pop();
            state.undo(mark);
            stats.backtracks += 1;
            descend = false;
            continue;
        }
        let a = frame.remaining.trailing_zeros();
        frame.remaining &= frame.remaining - 1;
        let (var, mark) = (frame.var, frame.mark);
        state.undo(mark);
        stats.nodes += 1;
        if stats.nodes % 256 == 0
            && (limits.node_limit.is_some_and(|l| stats.nodes >= l)
                || limits.timeout.is_some_and(|t| start.elapsed() >= t))
            {
                return finish(SolveOutcome::Unknown, stats);
            }
        state.set_dom(var, 1u128 << a);
        descend = state.propagate();
        if !descend {
            state.undo(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::procedure::verify_generates;

    fn path3() -> SimplicialComplex {
        SimplicialComplex::from_maximal(3, &[0b011, 0b110]).unwrap()
    }

    #[test]
    fn variable_count_ev_path() {
        let csp = CanonicalCsp::build(&families::ev(3).unwrap(), &path3(), DEFAULT_MAX_TUPLES).unwrap();
        assert_eq!(csp.variable_count(), 4 + 16 + 4);
        assert_eq!(csp.tuple_count(), 16);
        let (out, _) = solve(&csp, SolveLimits::default());
        let SolveOutcome::Satisfiable(a) = out else { panic!("expected a solution") };
        assert!(csp.check(&a));
        let p = csp.extract(&a, &Alphabet::binary()).unwrap();
        assert!(verify_generates(&p, &families::ev(3).unwrap(), &path3()).unwrap());
        for w in families::ev(3).unwrap().words() {
            let r = families::ev(3).unwrap().index_of(w).unwrap();
            assert_eq!(&p.eval(&[r, r]).unwrap(), w);
        }
    }

    #[test]
    fn singleton_and_empty_complex() {
        let l = Language::new(2, Alphabet::binary(), vec![vec![1, 0]]).unwrap();
        let csp = CanonicalCsp::build(&l, &SimplicialComplex::empty(2), 10).unwrap();
        assert_eq!(csp.tuple_count(), 1);
        assert!(matches!(solve(&csp, SolveLimits::default()).0, SolveOutcome::Satisfiable(_)));
    }

    #[test]
    fn constants_need_the_full_simplex() {
        let l = families::constants(2, 2).unwrap();
        let csp = CanonicalCsp::build(&l, &SimplicialComplex::singletons(2), 100).unwrap();
        assert_eq!(solve(&csp, SolveLimits::default()).0, SolveOutcome::Unsatisfiable);
        let csp = CanonicalCsp::build(&l, &SimplicialComplex::full(2), 100).unwrap();
        assert!(matches!(solve(&csp, SolveLimits::default()).0, SolveOutcome::Satisfiable(_)));
        let csp = CanonicalCsp::build(&l, &SimplicialComplex::empty(2), 100).unwrap();
        assert!(csp.pin_conflict().is_some());
    }

    #[test]
    fn nd_boundary_unsat() {
        let l = families::nd(3, 2).unwrap();
        let csp = CanonicalCsp::build(&l, &SimplicialComplex::boundary(3), DEFAULT_MAX_TUPLES).unwrap();
        assert_eq!(solve(&csp, SolveLimits::default()).0, SolveOutcome::Unsatisfiable);
    }

    #[test]
    fn unique4_on_cone() {
        let l = families::unique(4).unwrap();
        let k = SimplicialComplex::k_a(4, 0).unwrap();
        let csp = CanonicalCsp::build(&l, &k, DEFAULT_MAX_TUPLES).unwrap();
        let (out, _) = solve(&csp, SolveLimits::default());
        let SolveOutcome::Satisfiable(a) = out else { panic!("expected a solution") };
        let p = csp.extract(&a, l.alphabet()).unwrap();
        assert!(verify_generates(&p, &l, &k).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let l = families::eq(4, 3).unwrap();
        let k = SimplicialComplex::complete_graph(4);
        assert!(matches!(
            CanonicalCsp::build(&l, &k, DEFAULT_MAX_TUPLES),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
