//! Reproducible checks of the characterization results at small sizes,
//! grouped by topic. Used by the acceptance suite and the command line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chromatic::{chromatic_decides, input_complex};
use crate::complex::{named, SimplicialComplex};
use crate::decide::refute::triangle_refuter;
use crate::decide::{
    decide_generates, is_v_good, minimal_complexes, DecideOptions, MinimalOptions, Verdict,
};
use crate::enumerate::enumerate_complexes;
use crate::error::{Error, Result};
use crate::families;
use crate::generators::{
    descendant_condition_root, proc_eq_binary_tree, proc_eq_descendant_tree, proc_eq_fig4,
    proc_fig1, proc_join_extend, proc_nc_tree, proc_parity_tree,
};
use crate::graph::{is_l_connected, spanning_trees, Graph};
use crate::lang::{automorphisms, project, Alphabet, Language, Letter, Permutation, Word};
use crate::procedure::{verify_generates, Procedure};

/// One verified statement inside a check.
#[derive(Clone, Debug)]
pub struct Item {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Default)]
struct Findings {
    items: Vec<Item>,
}

impl Findings {
    fn item(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(Item { label: label.into(), passed, detail: detail.into() });
    }
}

/// A named group of statements with a time budget.
pub struct Check {
    pub id: usize,
    pub name: &'static str,
    /// Other selectors accepted for this check (section-style numbers).
    pub aliases: &'static [&'static str],
    pub title: &'static str,
    pub budget: Duration,
    run: fn(&mut Findings) -> Result<()>,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub title: &'static str,
    pub items: Vec<Item>,
    pub error: Option<String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CheckOutcome {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.within_budget() && self.items.iter().all(|i| i.passed)
    }

    /// `PASS  5 closed-languages (12.3s / 600s)` style summary line.
    pub fn line(&self) -> String {
        let failing: Vec<&str> = self
            .items
            .iter()
            .filter(|i| !i.passed)
            .map(|i| i.label.as_str())
            .collect();
        let mut s = format!(
            "{} {:>2} {} ({:.1}s / {}s, {} items)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.items.len()
        );
        if let Some(e) = &self.error {
            let _ = write!(s, " error: {e}");
        }
        if !self.within_budget() {
            s.push_str(" over budget");
        }
        if !failing.is_empty() {
            let _ = write!(s, " failing: {}", failing.join("; "));
        }
        s
    }
}

pub const CHECKS: &[Check] = &[
    Check {
        id: 1,
        name: "windows",
        aliases: &["2.1", "2.2"],
        title: "input and dual windows of the four-input example",
        budget: Duration::from_secs(1),
        run: check_windows,
    },
    Check {
        id: 2,
        name: "parity",
        aliases: &["3.1"],
        title: "minimal complexes of even and odd parity are the spanning trees",
        budget: Duration::from_secs(60),
        run: check_parity,
    },
    Check {
        id: 3,
        name: "non-decreasing",
        aliases: &["3.2"],
        title: "non-decreasing sequences need the full simplex",
        budget: Duration::from_secs(300),
        run: check_non_decreasing,
    },
    Check {
        id: 4,
        name: "non-constant",
        aliases: &["3.3"],
        title: "spanning trees generate non-constant sequences; disconnected complexes do not",
        budget: Duration::from_secs(60),
        run: check_non_constant,
    },
    Check {
        id: 5,
        name: "closed-languages",
        aliases: &["3.4"],
        title: "connectivity criteria for upwards and downwards closed languages",
        budget: Duration::from_secs(600),
        run: check_closed,
    },
    Check {
        id: 6,
        name: "one-or-all",
        aliases: &["3.5"],
        title: "minimal complexes of one-or-all languages",
        budget: Duration::from_secs(300),
        run: check_one_or_all,
    },
    Check {
        id: 7,
        name: "unique-one",
        aliases: &["4.1"],
        title: "unique occurrence of 1: triangles and cones",
        budget: Duration::from_secs(1800),
        run: check_unique,
    },
    Check {
        id: 8,
        name: "equal-neighbours",
        aliases: &["4.2", "4.2.1", "4.2.3", "4.2.4"],
        title: "sequences with two equal consecutive letters on trees",
        budget: Duration::from_secs(7200),
        run: check_equal_neighbours,
    },
    Check {
        id: 9,
        name: "v-goodness",
        aliases: &["4.2", "4.2.5"],
        title: "v-goodness against brute force on small paths",
        budget: Duration::from_secs(600),
        run: check_v_goodness,
    },
    Check {
        id: 10,
        name: "realizer",
        aliases: &["2.6"],
        title: "realizer languages are generated exactly by the supercomplexes",
        budget: Duration::from_secs(600),
        run: check_realizer,
    },
    Check {
        id: 11,
        name: "chromatic",
        aliases: &["5", "5.2", "5.3", "5.4"],
        title: "surjective chromatic maps decide generation",
        budget: Duration::from_secs(900),
        run: check_chromatic,
    },
    Check {
        id: 12,
        name: "properties",
        aliases: &["2.3", "2.5", "2.7"],
        title: "randomized structural properties",
        budget: Duration::from_secs(900),
        run: check_properties,
    },
];

/// Checks matching `selector`: `all`, a check name, or a section-style
/// alias (several checks may share one).
pub fn select(selector: &str) -> Result<Vec<&'static Check>> {
    let s = selector.trim();
    let picked: Vec<&Check> = CHECKS
        .iter()
        .filter(|c| {
            s == "all" || c.name == s || c.aliases.contains(&s)
        })
        .collect();
    if picked.is_empty() {
        return Err(Error::InvalidParameter(format!("no check matches {selector:?}")));
    }
    Ok(picked)
}

pub fn run_check(check: &Check) -> CheckOutcome {
    let start = Instant::now();
    let mut f = Findings::default();
    let error = (check.run)(&mut f).err().map(|e| e.to_string());
    CheckOutcome {
        id: check.id,
        name: check.name,
        title: check.title,
        items: f.items,
        error,
        elapsed: start.elapsed(),
        budget: check.budget,
    }
}

fn complex_set(v: &[SimplicialComplex]) -> BTreeSet<SimplicialComplex> {
    v.iter().cloned().collect()
}

fn list(set: &BTreeSet<SimplicialComplex>) -> String {
    set.iter().map(|k| k.compact()).collect::<Vec<_>>().join(" ")
}

fn tree_complexes(n: usize) -> BTreeSet<SimplicialComplex> {
    spanning_trees(n).iter().map(|t| t.to_complex()).collect()
}

fn minimal_item(f: &mut Findings, label: String, l: &Language, expected: &BTreeSet<SimplicialComplex>) -> Result<()> {
    let m = minimal_complexes(l, &MinimalOptions::default())?;
    let got = complex_set(&m.minimal);
    let ok = m.is_complete() && &got == expected;
    let detail = if ok {
        format!("{} complexes, {} decisions", got.len(), m.decisions)
    } else {
        format!("got [{}], expected [{}], undecided {}", list(&got), list(expected), m.undecided.len())
    };
    f.item(label, ok, detail);
    Ok(())
}

fn check_windows(f: &mut Findings) -> Result<()> {
    let p = proc_fig1();
    let names = |v: &[usize], out: bool| -> String {
        v.iter()
            .map(|&x| if out { p.output_name(x) } else { p.input_name(x) })
            .collect::<Vec<_>>()
            .join("")
    };
    let windows: Vec<String> = p.input_windows().iter().map(|w| names(w, false)).collect();
    f.item("input windows A,B,C", windows == ["ab", "bc", "cd"], windows.join(","));
    let duals: Vec<String> = p.dual_windows().iter().map(|w| names(w, true)).collect();
    f.item("dual windows a,b,c,d", duals == ["A", "AB", "BC", "C"], duals.join(","));
    let up = p.up_set(&[0, 1]);
    f.item("up-set of AB", up == [1], names(&up, false));
    f.item("up-set of nothing", p.up_set(&[]) == [0, 1, 2, 3], "");
    let k = p.comm_complex()?;
    let expected = SimplicialComplex::from_maximal(3, &[0b011, 0b110])?;
    f.item("communication complex", k == expected && p.comm_complex_by_intersection()? == k, k.compact());
    let diagram = p.visibility().render();
    f.item(
        "visibility diagram",
        diagram == "  a b c d\nA # # . .\nB . # # .\nC . . # #\n",
        diagram.replace('\n', "/"),
    );
    let out = p.eval(&[1, 1, 0, 1])?;
    f.item("evaluation on 1101", out == [1, 0, 0], format!("{out:?}"));
    Ok(())
}

fn check_parity(f: &mut Findings) -> Result<()> {
    for n in [3, 4] {
        let trees = tree_complexes(n);
        minimal_item(f, format!("ev({n}) minimal = {} spanning trees", trees.len()), &families::ev(n)?, &trees)?;
        minimal_item(f, format!("od({n}) minimal = {} spanning trees", trees.len()), &families::od(n)?, &trees)?;
        let ev = families::ev(n)?;
        let mut ok = true;
        for t in spanning_trees(n) {
            ok &= verify_generates(&proc_parity_tree(&t)?, &ev, &t.to_complex())?;
        }
        f.item(format!("parity procedures on all trees, n={n}"), ok, "");
    }
    Ok(())
}

fn check_non_decreasing(f: &mut Findings) -> Result<()> {
    for (n, k) in [(3, 2), (4, 2), (3, 3)] {
        let l = families::nd(n, k)?;
        let boundary = SimplicialComplex::boundary(n);
        let r = decide_generates(&l, &boundary, &DecideOptions::default())?;
        let s = decide_generates(&l, &boundary, &DecideOptions::search_only())?;
        let full = decide_generates(&l, &SimplicialComplex::full(n), &DecideOptions::default())?;
        let ok = r.verdict == Verdict::DoesNotGenerate
            && s.verdict == Verdict::DoesNotGenerate
            && full.generates();
        let cert = r.certificate.map(|c| c.to_string()).unwrap_or_default();
        f.item(
            format!("nd({n}, {k} letters) not generated by the boundary; full generates"),
            ok,
            format!("{cert}; search nodes {}", s.stats.nodes),
        );
    }
    Ok(())
}

fn check_non_constant(f: &mut Findings) -> Result<()> {
    for n in [3, 4] {
        for k in [2, 3] {
            let l = families::nc(n, k)?;
            let mut ok = true;
            for t in spanning_trees(n) {
                ok &= verify_generates(&proc_nc_tree(&t, k)?, &l, &t.to_complex())?;
            }
            f.item(format!("nc({n}, {k} letters) on every spanning tree"), ok, "");
            let mut refuted = 0;
            let mut total = 0;
            for c in enumerate_complexes(n)?.into_iter().filter(|c| !c.is_connected()) {
                total += 1;
                let r = decide_generates(&l, &c, &DecideOptions::default())?;
                if r.verdict == Verdict::DoesNotGenerate
                    && r.certificate.as_ref().is_some_and(|x| x.recheck(&l, &c).unwrap_or(false))
                {
                    refuted += 1;
                }
            }
            f.item(
                format!("nc({n}, {k} letters) refuted on disconnected complexes"),
                refuted == total,
                format!("{refuted}/{total}"),
            );
        }
    }
    Ok(())
}

/// Every non-empty upwards closed binary language over `n` positions.
pub fn upwards_closed_languages(n: usize) -> Result<Vec<Language>> {
    let words = 1usize << n;
    let mut out = Vec::new();
    for set in 1u64..1 << words {
        let closed = (0..words).all(|w| {
            set >> w & 1 == 0 || (0..n).all(|i| set >> (w | 1 << i) & 1 == 1)
        });
        if closed {
            let ws = (0..words)
                .filter(|&w| set >> w & 1 == 1)
                .map(|w| (0..n).map(|i| (w >> i & 1) as Letter).collect());
            out.push(Language::new(n, Alphabet::binary(), ws)?);
        }
    }
    Ok(out)
}

fn check_closed(f: &mut Findings) -> Result<()> {
    let search = DecideOptions { fast_paths: false, refuters: false, ..DecideOptions::default() };
    for n in 1..=4usize {
        let langs = upwards_closed_languages(n)?;
        let graphs: Vec<Graph> = Graph::all(n).collect();
        let mut order: Vec<usize> = (0..graphs.len()).collect();
        order.sort_by_key(|&b| (b.count_ones(), b));
        let results: Vec<Result<(usize, usize, Vec<String>)>> = langs
            .par_iter()
            .map(|l| {
                let mut verdict = vec![false; graphs.len()];
                let (mut searched, mut mismatches) = (0, Vec::new());
                for &b in &order {
                    let inferred = (0..usize::BITS).any(|e| b >> e & 1 == 1 && verdict[b & !(1 << e)]);
                    verdict[b] = inferred || {
                        searched += 1;
                        decide_generates(l, &graphs[b].to_complex(), &search)?.generates()
                    };
                    if verdict[b] != is_l_connected(&graphs[b], l)? {
                        mismatches.push(format!("{} on {}", l, graphs[b].edge_string()));
                    }
                }
                Ok((graphs.len(), searched, mismatches))
            })
            .collect();
        let (mut pairs, mut searched, mut bad) = (0, 0, Vec::new());
        for r in results {
            let (p, s, m) = r?;
            pairs += p;
            searched += s;
            bad.extend(m);
        }
        f.item(
            format!("L-connectivity equals search, n={n}"),
            bad.is_empty(),
            format!(
                "{} languages, {pairs} pairs, {searched} searches{}",
                langs.len(),
                if bad.is_empty() { String::new() } else { format!(", mismatches {}", bad.join("; ")) }
            ),
        );
    }
    let opts = DecideOptions::default();
    for n in 3..=4usize {
        let mut bad = Vec::new();
        for k in 1..=n {
            let l = families::card_ge(n, k)?;
            for g in Graph::all(n) {
                let expected = k == n || g.vertex_connectivity_at_least(k);
                if decide_generates(&l, &g.to_complex(), &opts)?.generates() != expected {
                    bad.push(format!("k={k} {}", g.edge_string()));
                }
            }
        }
        f.item(format!("card_ge(n={n}, k) iff k-connected"), bad.is_empty(), bad.join("; "));
        let mut bad = Vec::new();
        for k in 0..n {
            let l = families::card_le(n, k)?;
            for g in Graph::all(n) {
                let expected = (0u32..1 << n)
                    .filter(|s| s.count_ones() as usize == k + 1)
                    .all(|s| g.is_connected_on(s));
                if decide_generates(&l, &g.to_complex(), &opts)?.generates() != expected {
                    bad.push(format!("k={k} {}", g.edge_string()));
                }
            }
        }
        f.item(
            format!("card_le(n={n}, k) iff induced (k+1)-subgraphs connected"),
            bad.is_empty(),
            bad.join("; "),
        );
    }
    minimal_item(
        f,
        "card_le(3, 1) minimal = complete graph".into(),
        &families::card_le(3, 1)?,
        &complex_set(&[SimplicialComplex::complete_graph(3)]),
    )?;
    for g in Graph::all(3) {
        let l = families::graph_independent(&g)?;
        minimal_item(
            f,
            format!("independent sets of [{}] minimal = the graph", g.edge_string()),
            &l,
            &complex_set(&[g.to_complex()]),
        )?;
    }
    Ok(())
}

fn check_one_or_all(f: &mut Findings) -> Result<()> {
    for n in [3, 4] {
        let all = (1u32 << n) - 1;
        let mut expected = BTreeSet::new();
        for a in 0..n {
            for b in a + 1..n {
                expected.insert(SimplicialComplex::from_maximal(n, &[all & !(1 << a), all & !(1 << b)])?);
            }
        }
        minimal_item(f, format!("one_or_all({n})"), &families::one_or_all(n)?, &expected)?;
        minimal_item(f, format!("one_or_all_or_zero({n})"), &families::one_or_all_or_zero(n)?, &expected)?;
    }
    Ok(())
}

fn check_unique(f: &mut Findings) -> Result<()> {
    let u3 = families::unique(3)?;
    let mut bad = Vec::new();
    for k in enumerate_complexes(3)? {
        let r = decide_generates(&u3, &k, &DecideOptions::default())?;
        if r.generates() != k.is_full() {
            bad.push(k.compact());
        }
    }
    f.item("unique(3): only the full simplex generates", bad.is_empty(), bad.join(" "));
    let cones: Vec<SimplicialComplex> =
        (0..4).map(|a| SimplicialComplex::k_a(4, a)).collect::<Result<_>>()?;
    minimal_item(f, "unique(4) minimal = the four cones".into(), &families::unique(4)?, &complex_set(&cones))?;
    for n in [3, 4] {
        let l = families::unique(n)?;
        let mut total = 0;
        let mut missed = Vec::new();
        for k in enumerate_complexes(n)? {
            if k.maximal().iter().all(|m| m.count_ones() <= 2) {
                total += 1;
                if triangle_refuter(&l, &k)?.is_none() {
                    missed.push(k.compact());
                }
            }
        }
        f.item(
            format!("triangle refuter fires on all {total} graph complexes, n={n}"),
            missed.is_empty(),
            missed.join(" "),
        );
    }
    Ok(())
}

const REFUTATION_BUDGET: Duration = Duration::from_secs(3600);
const CONFIRMATION_BUDGET: Duration = Duration::from_secs(1);

fn over(elapsed: Duration, budget: Duration) -> String {
    if elapsed < budget {
        String::new()
    } else {
        format!(" (took {:.1}s, budget {}s)", elapsed.as_secs_f64(), budget.as_secs())
    }
}

fn check_equal_neighbours(f: &mut Findings) -> Result<()> {
    for n in [4, 5] {
        let l = families::eq(n, 2)?;
        let trees = spanning_trees(n);
        let mut ok = 0;
        for t in &trees {
            if verify_generates(&proc_eq_binary_tree(t)?, &l, &t.to_complex())? {
                ok += 1;
            }
        }
        f.item(
            format!("two letters, n={n}: parity procedures on all trees"),
            ok == trees.len(),
            format!("{ok}/{}", trees.len()),
        );
    }
    let l = families::eq(4, 3)?;
    for k in [named::fig2(), named::fig3()] {
        let start = Instant::now();
        let r = decide_generates(&l, &k, &DecideOptions::search_only())?;
        let elapsed = start.elapsed();
        f.item(
            format!("tree {} refuted by search", k.compact()),
            r.verdict == Verdict::DoesNotGenerate && elapsed < REFUTATION_BUDGET,
            format!("{} variables, {} nodes{}", r.stats.variables, r.stats.nodes, over(elapsed, REFUTATION_BUDGET)),
        );
    }
    let start = Instant::now();
    let ok = verify_generates(&proc_eq_fig4(3)?, &l, &named::fig4())?;
    let elapsed = start.elapsed();
    f.item(
        format!("tree {} confirmed by its procedure", named::fig4().compact()),
        ok && elapsed < CONFIRMATION_BUDGET,
        over(elapsed, CONFIRMATION_BUDGET),
    );
    let figures = complex_set(&[named::fig2(), named::fig3(), named::fig4()]);
    let rest: Vec<Graph> = spanning_trees(4)
        .into_iter()
        .filter(|t| !figures.contains(&t.to_complex()))
        .collect();
    let mut confirmed = 0;
    let mut slowest = Duration::ZERO;
    let mut failures = Vec::new();
    for t in &rest {
        let start = Instant::now();
        let ok = match descendant_condition_root(t) {
            Some(root) => verify_generates(&proc_eq_descendant_tree(t, root, 3)?, &l, &t.to_complex())?,
            None => false,
        };
        slowest = slowest.max(start.elapsed());
        match ok {
            true => confirmed += 1,
            false => {
                let r = decide_generates(&l, &t.to_complex(), &DecideOptions::search_only())?;
                failures.push(format!("{} has no admissible root (search: {})", t.to_complex().compact(), r.verdict));
            }
        }
    }
    f.item(
        format!("all {} remaining trees confirmed by descendant procedures", rest.len()),
        failures.is_empty() && slowest < CONFIRMATION_BUDGET,
        format!("{confirmed}/{} confirmed{}; {}", rest.len(), over(slowest, CONFIRMATION_BUDGET), failures.join("; ")),
    );
    Ok(())
}

/// Independent brute force for v-goodness of a complex in which some
/// vertex reads every cell: enumerates the rules of the other vertices,
/// then chooses the letters of that vertex input by input. Input cells
/// carry as many values as there are sequences to cover.
pub fn brute_force_v_good(t: &SimplicialComplex, v_set: &[usize], v: usize, letters: usize) -> Result<bool> {
    let m = v_set.len();
    let local = v_set
        .iter()
        .position(|&x| x == v)
        .ok_or_else(|| Error::InvalidParameter("v outside the position set".into()))?;
    let valid = |w: &[usize]| (0..m.saturating_sub(1)).any(|p| v_set[p] + 1 == v_set[p + 1] && w[p] == w[p + 1]);
    let others: Vec<usize> = (0..m).filter(|&p| p != local).collect();
    let targets = letters.pow(others.len() as u32);
    let b = targets;
    let cells: Vec<u32> = t.maximal().iter().copied().filter(|&s| s != 0).collect();
    let windows: Vec<Vec<usize>> =
        (0..m).map(|p| (0..cells.len()).filter(|&c| cells[c] >> p & 1 == 1).collect()).collect();
    let hub = (0..m)
        .find(|&p| windows[p].len() == cells.len())
        .ok_or_else(|| Error::Precondition("no vertex reads every cell".into()))?;
    let inputs = b.pow(cells.len() as u32);
    let digits = |x: usize| -> Vec<usize> { (0..cells.len()).map(|c| x / b.pow(c as u32) % b).collect() };
    let table_index = |p: usize, x: &[usize]| -> usize {
        windows[p].iter().rev().fold(0, |acc, &c| acc * b + x[c])
    };
    let ruled: Vec<usize> = (0..m).filter(|&p| p != hub).collect();
    let rule_counts: Vec<usize> =
        ruled.iter().map(|&p| letters.pow(b.pow(windows[p].len() as u32) as u32)).collect();
    let target_index = |w: &[usize]| others.iter().fold(0, |acc, &p| acc * letters + w[p]);
    let full: u64 = if targets == 64 { u64::MAX } else { (1u64 << targets) - 1 };
    let mut choice = vec![0usize; ruled.len()];
    loop {
        // outputs of the ruled vertices on every input, then the hub's options
        let mut options: Vec<Vec<u64>> = Vec::with_capacity(inputs);
        let mut feasible = true;
        for x in 0..inputs {
            let xd = digits(x);
            let mut w = vec![0usize; m];
            for (k, &p) in ruled.iter().enumerate() {
                let e = table_index(p, &xd);
                w[p] = choice[k] / letters.pow(e as u32) % letters;
            }
            let mut opts = Vec::new();
            for a in 0..letters {
                w[hub] = a;
                if valid(&w) {
                    opts.push(1u64 << target_index(&w));
                }
            }
            if opts.is_empty() {
                feasible = false;
                break;
            }
            options.push(opts);
        }
        if feasible {
            let mut failed = BTreeSet::new();
            if cover(&options, 0, 0, full, &mut failed) {
                return Ok(true);
            }
        }
        let mut k = 0;
        loop {
            if k == ruled.len() {
                return Ok(false);
            }
            choice[k] += 1;
            if choice[k] < rule_counts[k] {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn cover(options: &[Vec<u64>], x: usize, covered: u64, full: u64, failed: &mut BTreeSet<(usize, u64)>) -> bool {
    if covered == full {
        return true;
    }
    if x == options.len() || failed.contains(&(x, covered)) {
        return false;
    }
    for &o in &options[x] {
        if cover(options, x + 1, covered | o, full, failed) {
            return true;
        }
    }
    failed.insert((x, covered));
    false
}

/// Positions, path complex over their local indices, vertex order.
type PathCase = (Vec<usize>, SimplicialComplex, Vec<usize>);

/// Path complexes over every position set of size 1 to 3 inside `0..4`,
/// with the vertex order of the path.
fn small_paths() -> Result<Vec<PathCase>> {
    let mut out = Vec::new();
    for mask in 1u32..16 {
        let v_set: Vec<usize> = (0..4).filter(|&i| mask >> i & 1 == 1).collect();
        match v_set.len() {
            1 => out.push((v_set, SimplicialComplex::full(1), vec![0])),
            2 => out.push((v_set, SimplicialComplex::full(2), vec![0, 1])),
            3 => {
                for middle in 0..3 {
                    let ends: Vec<usize> = (0..3).filter(|&p| p != middle).collect();
                    let k = SimplicialComplex::from_maximal(3, &[1 << ends[0] | 1 << middle, 1 << middle | 1 << ends[1]])?;
                    out.push((v_set.clone(), k, vec![ends[0], middle, ends[1]]));
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

fn check_v_goodness(f: &mut Findings) -> Result<()> {
    let opts = DecideOptions::default();
    let mut agree = 0;
    let mut total = 0;
    let mut bad = Vec::new();
    let mut good: BTreeMap<(Vec<usize>, SimplicialComplex, usize), bool> = BTreeMap::new();
    for (v_set, t, _) in small_paths()? {
        for &v in &v_set {
            total += 1;
            let engine = is_v_good(&t, &v_set, v, 2, &opts)?;
            let brute = brute_force_v_good(&t, &v_set, v, 2)?;
            if engine.verdict != Verdict::Undecided && engine.generates() == brute {
                agree += 1;
            } else {
                bad.push(format!("V={v_set:?} T={} v={v}", t.compact()));
            }
            good.insert((v_set.clone(), t.clone(), v), engine.generates());
        }
    }
    f.item("engine agrees with brute force", bad.is_empty(), format!("{agree}/{total} {}", bad.join("; ")));
    let mut checked = 0;
    let mut violations = Vec::new();
    for (v_set, t, order) in small_paths()? {
        if order.len() < 2 {
            continue;
        }
        let g = t.skeleton1();
        for p in 0..v_set.len() {
            if g.degree(p) != 1 {
                continue;
            }
            let q = (0..v_set.len()).find(|&q| g.has_edge(p, q)).expect("leaf has a neighbour");
            let (v, u) = (v_set[p], v_set[q]);
            checked += 1;
            if good[&(v_set.clone(), t.clone(), v)] && !good[&(v_set.clone(), t.clone(), u)] {
                violations.push(format!("V={v_set:?} T={} v={v} u={u}", t.compact()));
            }
        }
    }
    f.item(
        "a leaf-good path is good at the leaf's neighbour",
        violations.is_empty(),
        format!("{checked} leaf instances {}", violations.join("; ")),
    );
    let path = Graph::path(3).to_complex();
    let gen = decide_generates(&families::eq(3, 2)?, &path, &opts)?.generates();
    let all_good = (0..3).map(|v| is_v_good(&path, &[0, 1, 2], v, 2, &opts)).collect::<Result<Vec<_>>>()?;
    f.item(
        "the path generating eq(3, 2 letters) is good at every vertex",
        gen && all_good.iter().all(|r| r.generates()),
        "",
    );
    let none = is_v_good(&SimplicialComplex::full(2), &[0, 2], 0, 2, &opts)?;
    f.item("no consecutive pair: never good", !none.generates(), "");
    Ok(())
}

fn check_realizer(f: &mut Findings) -> Result<()> {
    let complexes = enumerate_complexes(3)?;
    let pairs: Vec<(usize, usize)> = (0..complexes.len())
        .flat_map(|a| (0..complexes.len()).map(move |b| (a, b)))
        .collect();
    let langs: Vec<Language> = complexes.iter().map(families::realizer).collect::<Result<_>>()?;
    let results: Vec<Result<Option<String>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let r = decide_generates(&langs[a], &complexes[b], &DecideOptions::default())?;
            // the empty simplex alone and the void complex have the same realizer
            let expected = complexes[a].nonempty_simplices().iter().all(|&s| complexes[b].contains(s));
            Ok((r.verdict == Verdict::Undecided || r.generates() != expected)
                .then(|| format!("{} on {}", complexes[a].compact(), complexes[b].compact())))
        })
        .collect();
    let mut bad = Vec::new();
    for r in results {
        bad.extend(r?);
    }
    f.item(
        "generators of each realizer contain exactly its non-empty simplices",
        bad.is_empty(),
        format!("{} pairs {}", pairs.len(), bad.join("; ")),
    );
    Ok(())
}

fn check_chromatic(f: &mut Findings) -> Result<()> {
    let complexes = enumerate_complexes(3)?;
    let mut langs = Vec::new();
    for set in 1u32..256 {
        if set.count_ones() <= 4 {
            let words = (0..8)
                .filter(|w| set >> w & 1 == 1)
                .map(|w| (0..3).map(|i| (w >> i & 1) as Letter).collect::<Word>());
            langs.push(Language::new(3, Alphabet::binary(), words)?);
        }
    }
    let results: Vec<Result<Vec<String>>> = langs
        .par_iter()
        .map(|l| {
            let mut bad = Vec::new();
            for k in &complexes {
                let c = chromatic_decides(l, k, None)?;
                let d = decide_generates(l, k, &DecideOptions::default())?;
                if c.generates != d.generates() {
                    bad.push(format!("{l} on {}", k.compact()));
                }
            }
            Ok(bad)
        })
        .collect();
    let mut bad = Vec::new();
    for r in results {
        bad.extend(r?);
    }
    f.item(
        "chromatic maps agree with the decision engine",
        bad.is_empty(),
        format!("{} languages x {} complexes {}", langs.len(), complexes.len(), bad.join("; ")),
    );
    let k3 = SimplicialComplex::complete_graph(3);
    let g = SimplicialComplex::from_maximal(3, &[0b011, 0b110])?;
    let card = families::card_le(3, 1)?;
    let u3 = families::unique(3)?;
    let mut table = String::new();
    let mut ok = true;
    for (kname, k, row) in [("K3", &k3, [true, false]), ("G", &g, [false, false])] {
        let _ = write!(table, "{kname}:");
        for (l, expected) in [&card, &u3].into_iter().zip(row) {
            let c = chromatic_decides(l, k, None)?;
            let d = decide_generates(l, k, &DecideOptions::default())?.generates();
            ok &= c.generates == expected && d == expected;
            let _ = write!(table, " {}", if c.generates { "yes" } else { "no" });
        }
        table.push(' ');
    }
    f.item("table: K3 generates Card<=1 only; G generates neither", ok, table.trim_end().to_string());
    let c = chromatic_decides(&card, &k3, None)?;
    f.item("K3 reaches Card<=1 with two input letters", c.alphabet_size == Some(2), format!("{:?}", c.alphabet_size));
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 1..=3 {
        for k in enumerate_complexes(n)? {
            for b in [2, 3] {
                count += 1;
                if input_complex(&k, b)?.is_connected() == k.is_full() {
                    bad.push(format!("n={n} {} |B|={b}", k.compact()));
                }
            }
        }
    }
    f.item(
        "input complex connected iff the complex is not full",
        bad.is_empty(),
        format!("{count} cases {}", bad.join("; ")),
    );
    Ok(())
}

/// Number of random cases per structural property.
pub const PROPERTY_CASES: usize = 1000;

fn random_language(rng: &mut ChaCha8Rng) -> Result<Language> {
    let (n, k, max) = match rng.gen_range(0..10) {
        0..=5 => (3, 2, 8),
        6 => (2, 3, 6),
        7 => (3, 3, 6),
        8 => (4, 2, 6),
        _ => (2, 2, 4),
    };
    let size = rng.gen_range(1..=max);
    let words: Vec<Word> = (0..size)
        .map(|_| (0..n).map(|_| rng.gen_range(0..k) as Letter).collect())
        .collect();
    Language::new(n, Alphabet::new(k)?, words)
}

fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> Result<SimplicialComplex> {
    let count = rng.gen_range(0..=3);
    let sets: Vec<u32> = (0..count).map(|_| rng.gen_range(0..1u32 << n)).collect();
    SimplicialComplex::from_maximal(n, &sets)
}

fn random_procedure(rng: &mut ChaCha8Rng, sizes: Vec<usize>, outputs: usize, letters: usize) -> Result<Procedure> {
    let windows: Vec<Vec<usize>> = (0..outputs)
        .map(|_| (0..sizes.len()).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    let rules: Vec<Vec<Letter>> = windows
        .iter()
        .map(|w| {
            let cells: usize = w.iter().map(|&j| sizes[j]).product();
            (0..cells).map(|_| rng.gen_range(0..letters) as Letter).collect()
        })
        .collect();
    Procedure::new(sizes, Alphabet::new(letters)?, windows, rules)
}

/// A language invariant under a random permutation: the closure of random
/// words under its powers.
fn random_invariant_language(rng: &mut ChaCha8Rng) -> Result<(Language, Permutation)> {
    let n = rng.gen_range(2..=4);
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    let g = Permutation::from_vec(map)?;
    let mut words = BTreeSet::new();
    for _ in 0..rng.gen_range(1..=2) {
        let mut w: Word = (0..n).map(|_| rng.gen_range(0..2)).collect();
        for _ in 0..24 {
            words.insert(w.clone());
            w = g.act_on_word(&w);
        }
    }
    Ok((Language::new(n, Alphabet::binary(), words)?, g))
}

fn check_properties(f: &mut Findings) -> Result<()> {
    let opts = DecideOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    let mut violations = 0;
    for _ in 0..PROPERTY_CASES {
        let inner_sizes: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=3)).collect();
        let mid = rng.gen_range(1..=3);
        let letters = rng.gen_range(2..=3);
        let g = random_procedure(&mut rng, inner_sizes, mid, letters)?;
        let outputs = rng.gen_range(1..=3);
        let outer = random_procedure(&mut rng, vec![letters; mid], outputs, 2)?;
        let composed = outer.compose(&g)?;
        if !composed.comm_complex()?.is_subcomplex(&outer.pushforward(&g.comm_complex()?)?) {
            violations += 1;
        }
    }
    f.item("composition stays inside the pushforward", violations == 0, format!("{PROPERTY_CASES} cases, {violations} violations"));

    let (mut premises, mut violations) = (0, 0);
    for _ in 0..PROPERTY_CASES {
        let l = random_language(&mut rng)?;
        let k = random_complex(&mut rng, l.n())?;
        let j: Vec<usize> = loop {
            let m = rng.gen_range(1..1u32 << l.n());
            if m.count_ones() as usize != l.n() {
                break (0..l.n()).filter(|&i| m >> i & 1 == 1).collect();
            }
        };
        if decide_generates(&l, &k, &opts)?.generates() {
            premises += 1;
            if !decide_generates(&project(&l, &j)?, &k.restrict(&j)?, &opts)?.generates() {
                violations += 1;
            }
        }
    }
    f.item("restrictions generate projections", violations == 0, format!("{PROPERTY_CASES} cases, {premises} generating, {violations} violations"));

    let (mut premises, mut violations) = (0, 0);
    for _ in 0..PROPERTY_CASES {
        let l = random_language(&mut rng)?;
        let n = l.n();
        let apex = rng.gen_range(0..n);
        let j: Vec<usize> = (0..n).filter(|&i| i != apex).collect();
        let sub = random_complex(&mut rng, j.len())?;
        let r = decide_generates(&project(&l, &j)?, &sub, &opts)?;
        if let Some(p) = r.witness {
            premises += 1;
            let cone = sub.embed(n, &j)?.cone_at(apex);
            let q = proc_join_extend(&p, &l, &j)?;
            if !verify_generates(&q, &l, &cone)? {
                violations += 1;
            }
        }
    }
    f.item("cone over a generator of a projection generates", violations == 0, format!("{PROPERTY_CASES} cases, {premises} extended, {violations} violations"));

    let mut violations = 0;
    for _ in 0..PROPERTY_CASES {
        let (l, g) = random_invariant_language(&mut rng)?;
        let auts = automorphisms(&l)?;
        let h = if rng.gen_bool(0.5) { g } else { auts[rng.gen_range(0..auts.len())].clone() };
        let k = random_complex(&mut rng, l.n())?;
        let a = decide_generates(&l, &k, &opts)?.verdict;
        let b = decide_generates(&l, &k.permute(&h)?, &opts)?.verdict;
        if a != b || !auts.contains(&h) {
            violations += 1;
        }
    }
    f.item("verdicts are invariant under automorphisms", violations == 0, format!("{PROPERTY_CASES} cases, {violations} violations"));

    let (mut premises, mut violations) = (0, 0);
    for _ in 0..PROPERTY_CASES {
        let l = random_language(&mut rng)?;
        let k = random_complex(&mut rng, l.n())?;
        let bigger = k.union(&SimplicialComplex::from_maximal(l.n(), &[rng.gen_range(0..1u32 << l.n())])?)?;
        if decide_generates(&l, &k, &opts)?.generates() {
            premises += 1;
            if !decide_generates(&l, &bigger, &opts)?.generates() {
                violations += 1;
            }
        }
    }
    f.item("generation is monotone in the complex", violations == 0, format!("{PROPERTY_CASES} cases, {premises} generating, {violations} violations"));

    let (mut positives, mut violations) = (0, 0);
    for _ in 0..PROPERTY_CASES {
        let l = random_language(&mut rng)?;
        let k = random_complex(&mut rng, l.n())?;
        let r = decide_generates(&l, &k, &opts)?;
        let ok = match (&r.witness, &r.certificate) {
            (Some(p), None) => {
                positives += 1;
                verify_generates(p, &l, &k)?
            }
            (None, Some(c)) => c.recheck(&l, &k)?,
            _ => false,
        };
        if !ok {
            violations += 1;
        }
    }
    f.item(
        "witnesses re-verify and certificates re-check",
        violations == 0,
        format!("{PROPERTY_CASES} cases, {positives} positive, {violations} violations"),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(select("4.2").unwrap().len(), 2);
        assert_eq!(select("windows").unwrap()[0].id, 1);
        assert_eq!(select("4.1").unwrap()[0].name, "unique-one");
        assert_eq!(select("5").unwrap()[0].name, "chromatic");
        assert_eq!(select("all").unwrap().len(), CHECKS.len());
        assert!(select("9.9").is_err());
    }

    #[test]
    fn upwards_closed_counts() {
        // non-empty up-sets of the boolean lattice: Dedekind numbers minus one
        assert_eq!(upwards_closed_languages(1).unwrap().len(), 2);
        assert_eq!(upwards_closed_languages(2).unwrap().len(), 5);
        assert_eq!(upwards_closed_languages(3).unwrap().len(), 19);
    }

    #[test]
    fn brute_force_small() {
        let edge = SimplicialComplex::full(2);
        assert!(brute_force_v_good(&edge, &[0, 1], 0, 2).unwrap());
        assert!(!brute_force_v_good(&edge, &[0, 2], 0, 2).unwrap());
        assert!(!brute_force_v_good(&SimplicialComplex::full(1), &[1], 1, 2).unwrap());
    }

    #[test]
    fn windows_check_passes() {
        let out = run_check(&CHECKS[0]);
        assert!(out.items.iter().all(|i| i.passed), "{:?}", out.items);
    }
}
