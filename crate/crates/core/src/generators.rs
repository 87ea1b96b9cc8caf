//! Explicit generation procedures for the language families.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::families;
use crate::graph::Graph;
use crate::lang::{is_upwards_closed, project, Alphabet, Language, Letter, Word};
use crate::procedure::Procedure;

fn edge_names(edges: &[(usize, usize)]) -> Vec<String> {
    edges.iter().map(|(u, v)| format!("{u}-{v}")).collect()
}

fn require_tree(t: &Graph) -> Result<()> {
    if !t.is_spanning_tree() {
        return Err(Error::Precondition("graph is not a spanning tree".into()));
    }
    Ok(())
}

/// Indices of the edges incident to each vertex.
fn incident_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        inc[u].push(e);
        inc[v].push(e);
    }
    inc
}

/// `f(a, b, c, d) = (a·b, b·c, c·d)` over bits, with inputs named `a..d` and
/// outputs `A..C`.
pub fn proc_fig1() -> Procedure {
    Procedure::from_fn(
        vec![2; 4],
        Alphabet::binary(),
        vec![vec![0, 1], vec![1, 2], vec![2, 3]],
        |_, t| (t[0] * t[1]) as Letter,
    )
    .and_then(|p| p.with_input_names(["a", "b", "c", "d"].map(String::from).to_vec()))
    .and_then(|p| p.with_output_names(["A", "B", "C"].map(String::from).to_vec()))
    .expect("fixed example is well formed")
}

/// One input cell holding a word of `l`, read by every output.
pub fn proc_trivial(l: &Language) -> Result<Procedure> {
    let words = l.words().to_vec();
    Procedure::from_fn(
        vec![l.len()],
        l.alphabet().clone(),
        vec![vec![0]; l.n()],
        |i, t| words[t[0]][i],
    )
}

/// Outputs `word` and reads nothing.
pub fn proc_constant(alphabet: &Alphabet, word: &[Letter]) -> Result<Procedure> {
    let word = word.to_vec();
    Procedure::from_fn(vec![], alphabet.clone(), vec![vec![]; word.len()], |i, _| word[i])
}

/// A bit per edge; each vertex outputs the parity of its incident edges.
pub fn proc_parity_tree(t: &Graph) -> Result<Procedure> {
    require_tree(t)?;
    let edges = t.edges();
    let inc = incident_edges(t.n(), &edges);
    Procedure::from_fn(vec![2; edges.len()], Alphabet::binary(), inc, |_, w| {
        (w.iter().sum::<usize>() % 2) as Letter
    })?
    .with_input_names(edge_names(&edges))
}

/// Parent of every vertex when rooting `t` at `root` (`None` at the root).
pub fn parents(t: &Graph, root: usize) -> Vec<Option<usize>> {
    let n = t.n();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if t.has_edge(u, v) && !seen[u] {
                seen[u] = true;
                parent[u] = Some(v);
                stack.push(u);
            }
        }
    }
    parent
}

fn children(parent: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut ch = vec![Vec::new(); parent.len()];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            ch[*p].push(v);
        }
    }
    ch
}

fn edge_index(edges: &[(usize, usize)], a: usize, b: usize) -> usize {
    let key = (a.min(b), a.max(b));
    edges.iter().position(|&e| e == key).expect("edge of the tree")
}

/// Every edge carries a word of `L`; a vertex seeing one word `x` on all its
/// edges outputs `x_i`, otherwise it outputs `rule(i, words, position of the
/// deciding edge among i's incident edges)`.
fn agreement_procedure(
    t: &Graph,
    lang: &Language,
    deciding: impl Fn(usize) -> Option<usize>,
    mut fallback: impl FnMut(usize, &Word) -> Letter,
) -> Result<Procedure> {
    let edges = t.edges();
    let inc = incident_edges(t.n(), &edges);
    let words = lang.words().to_vec();
    let pos: Vec<Option<usize>> = (0..t.n())
        .map(|i| deciding(i).map(|e| inc[i].iter().position(|&x| x == e).expect("incident")))
        .collect();
    Procedure::from_fn(vec![lang.len(); edges.len()], lang.alphabet().clone(), inc, |i, w| {
        if w.iter().all(|&x| x == w[0]) {
            return words[w[0]][i];
        }
        let k = pos[i].expect("a vertex with two distinct edge values has a deciding edge");
        fallback(i, &words[w[k]])
    })?
    .with_input_names(edge_names(&edges))
}

/// Rooted at 0, every edge holds a non-constant word; a vertex that sees
/// disagreement outputs `h(x_j) = x_j + 1 mod k` for its lowest-index child `j`.
pub fn proc_nc_tree(t: &Graph, k: usize) -> Result<Procedure> {
    require_tree(t)?;
    let lang = families::nc(t.n(), k)?;
    let edges = t.edges();
    let ch = children(&parents(t, 0));
    let child: Vec<Option<usize>> = ch.iter().map(|c| c.first().copied()).collect();
    agreement_procedure(
        t,
        &lang,
        |i| child[i].map(|j| edge_index(&edges, i, j)),
        |i, x| {
            let j = child[i].expect("internal vertex");
            ((x[j] as usize + 1) % k) as Letter
        },
    )
}

/// Rooted at 0, every edge holds a binary word with two equal neighbours; a
/// vertex seeing disagreement outputs `w_j + i + j + 1 mod 2` for its
/// lowest-index child `j`.
pub fn proc_eq_binary_tree(t: &Graph) -> Result<Procedure> {
    require_tree(t)?;
    let lang = families::eq(t.n(), 2)?;
    let edges = t.edges();
    let ch = children(&parents(t, 0));
    let child: Vec<Option<usize>> = ch.iter().map(|c| c.first().copied()).collect();
    agreement_procedure(
        t,
        &lang,
        |i| child[i].map(|j| edge_index(&edges, i, j)),
        |i, x| {
            let j = child[i].expect("internal vertex");
            ((x[j] as usize + i + j + 1) % 2) as Letter
        },
    )
}

/// For each vertex with children, a neighbour position `i-1` or `i+1` among
/// its descendants (the lower one when both are), or `None` if the condition
/// fails somewhere.
fn consecutive_descendants(t: &Graph, root: usize) -> Option<Vec<Option<usize>>> {
    let parent = parents(t, root);
    let ch = children(&parent);
    let is_descendant = |d: usize, a: usize| {
        let mut v = parent[d];
        while let Some(p) = v {
            if p == a {
                return true;
            }
            v = parent[p];
        }
        false
    };
    let mut out = vec![None; t.n()];
    for i in 0..t.n() {
        if ch[i].is_empty() {
            continue;
        }
        let candidates = [i.checked_sub(1), Some(i + 1)];
        let j = candidates
            .into_iter()
            .flatten()
            .find(|&j| j < t.n() && is_descendant(j, i))?;
        out[i] = Some(j);
    }
    Some(out)
}

/// Smallest root for which every vertex with children has `i-1` or `i+1`
/// among its descendants.
pub fn descendant_condition_root(t: &Graph) -> Option<usize> {
    (0..t.n()).find(|&r| consecutive_descendants(t, r).is_some())
}

/// Every edge holds a word with two equal neighbours; a vertex seeing
/// disagreement copies the letter `w_j` of its consecutive descendant `j`
/// from the edge leading towards `j`.
pub fn proc_eq_descendant_tree(t: &Graph, root: usize, k: usize) -> Result<Procedure> {
    require_tree(t)?;
    if root >= t.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: t.n() });
    }
    let Some(target) = consecutive_descendants(t, root) else {
        return Err(Error::Precondition(format!(
            "rooted at {root}, some vertex has no consecutive descendant"
        )));
    };
    let lang = families::eq(t.n(), k)?;
    let edges = t.edges();
    let parent = parents(t, root);
    // the child of i on the path down to j
    let towards = |i: usize, j: usize| {
        let mut v = j;
        while parent[v] != Some(i) {
            v = parent[v].expect("j descends from i");
        }
        v
    };
    let step: Vec<Option<usize>> = (0..t.n())
        .map(|i| target[i].map(|j| towards(i, j)))
        .collect();
    agreement_procedure(
        t,
        &lang,
        |i| step[i].map(|c| edge_index(&edges, i, c)),
        |i, x| x[target[i].expect("internal vertex")],
    )
}

/// Index of `(u, v, w)` in the middle cell of [`proc_eq_fig4`], `w ∈ {1, 2}`.
pub fn fig4_middle_index(k: usize, u: usize, v: usize, w: usize) -> usize {
    u + k * v + k * k * (w - 1)
}

/// The generator of words with two equal neighbours on the tree with edges
/// 02, 12, 13. Cells: `x` on 02, `y = (u, v, w)` on 12, `z` on 13.
pub fn proc_eq_fig4(k: usize) -> Result<Procedure> {
    let alphabet = Alphabet::new(k)?;
    Procedure::from_fn(
        vec![k, 2 * k * k, k],
        alphabet,
        vec![vec![0], vec![1, 2], vec![0, 1], vec![2]],
        |i, t| {
            let l = match i {
                0 => t[0],
                1 => {
                    let (y, z) = (t[0], t[1]);
                    let (u, v, w) = (y % k, (y / k) % k, y / (k * k) + 1);
                    if w == 1 && v != z {
                        v
                    } else {
                        u
                    }
                }
                2 => {
                    let (x, y) = (t[0], t[1]);
                    let (u, v, w) = (y % k, (y / k) % k, y / (k * k) + 1);
                    if w == 2 && u != x {
                        u
                    } else {
                        v
                    }
                }
                _ => t[0],
            };
            l as Letter
        },
    )?
    .with_input_names(vec!["x".into(), "y".into(), "z".into()])
}

/// Every cell (edge, or isolated vertex) of `g` holds a word of the upwards
/// closed `l`; a vertex seeing one word `U` outputs `U(i)`, otherwise 1.
pub fn proc_upclosed_edges(g: &Graph, l: &Language) -> Result<Procedure> {
    if g.n() != l.n() {
        return Err(Error::SizeMismatch("graph and language sizes differ".into()));
    }
    if !is_upwards_closed(l)? {
        return Err(Error::NotClosed("upwards closed"));
    }
    let cells = g.to_complex();
    let cell_masks = cells.maximal().to_vec();
    let windows: Vec<Vec<usize>> = (0..g.n())
        .map(|i| (0..cell_masks.len()).filter(|&c| cell_masks[c] >> i & 1 == 1).collect())
        .collect();
    let words = l.words().to_vec();
    let names: Vec<String> = cells
        .maximal_sets()
        .iter()
        .map(|s| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-"))
        .collect();
    Procedure::from_fn(vec![l.len(); cell_masks.len()], Alphabet::binary(), windows, |i, w| {
        if w.iter().all(|&x| x == w[0]) {
            words[w[0]][i]
        } else {
            1
        }
    })?
    .with_input_names(names)
}

/// The complete graph with a bit per edge choosing one endpoint; a vertex
/// outputs 1 iff every incident edge chose it.
pub fn proc_card_le1(n: usize) -> Result<Procedure> {
    if n < 3 {
        // on a single edge some endpoint is always chosen, so 00 is missed
        return Err(Error::Precondition("needs at least three vertices".into()));
    }
    let g = Graph::complete(n);
    let edges = g.edges();
    let inc = incident_edges(n, &edges);
    let inc_for_rule = inc.clone();
    Procedure::from_fn(vec![2; edges.len()], Alphabet::binary(), inc, |i, w| {
        let chosen = inc_for_rule[i].iter().zip(w).all(|(&e, &bit)| {
            let (u, v) = edges[e];
            (if bit == 0 { u } else { v }) == i
        });
        chosen as Letter
    })?
    .with_input_names(edge_names(&Graph::complete(n).edges()))
}

/// Extends a generator `p` of `π_J(l)` (positions of `J` reindexed in order)
/// to a generator of `l`: a selector cell picks, for every word `y` produced
/// on `J`, one of the extensions of `y` in `l`, and the positions outside `J`
/// read everything `p` reads plus the selector.
pub fn proc_join_extend(p: &Procedure, l: &Language, j: &[usize]) -> Result<Procedure> {
    let pj = project(l, j)?;
    if p.output_n() != j.len() || p.image()? != pj {
        return Err(Error::Precondition(
            "procedure does not generate the projection".into(),
        ));
    }
    let n = l.n();
    let mut extensions: std::collections::HashMap<Word, Vec<Word>> = Default::default();
    for w in l.words() {
        let y: Word = j.iter().map(|&p| w[p]).collect();
        extensions.entry(y).or_default().push(w.clone());
    }
    let selector_size = extensions.values().map(|v| v.len()).max().unwrap_or(1);
    let selector = p.input_count();
    let mut sizes = p.input_sizes().to_vec();
    sizes.push(selector_size);
    let used: Vec<usize> = {
        let set: std::collections::BTreeSet<usize> =
            (0..p.output_n()).flat_map(|i| p.input_window(i)).collect();
        set.into_iter().collect()
    };
    let slot_of: Vec<Option<usize>> = (0..n).map(|i| j.iter().position(|&x| x == i)).collect();
    let windows: Vec<Vec<usize>> = (0..n)
        .map(|i| match slot_of[i] {
            Some(t) => p.declared_window(t).to_vec(),
            None => used.iter().copied().chain([selector]).collect(),
        })
        .collect();
    let windows_for_rule = windows.clone();
    let mut input = vec![0usize; p.input_count()];
    Procedure::from_fn(sizes, l.alphabet().clone(), windows, |i, t| {
        for (k, &c) in windows_for_rule[i].iter().enumerate() {
            if c < selector {
                input[c] = t[k];
            }
        }
        match slot_of[i] {
            Some(slot) => p.eval_unchecked(&input)[slot],
            None => {
                let y = p.eval_unchecked(&input);
                let ext = &extensions[&y];
                let c = *t.last().expect("selector is read");
                ext[c % ext.len()][i]
            }
        }
    })
}

/// Runs independent procedures side by side: `parts[k]` generates the
/// positions `blocks[k]` (in order) and gets its own input cells.
pub fn proc_product(
    n: usize,
    alphabet: &Alphabet,
    parts: &[(Vec<usize>, Procedure)],
) -> Result<Procedure> {
    let mut sizes = Vec::new();
    let mut windows = vec![Vec::new(); n];
    let mut owner = vec![None; n];
    let mut offsets = Vec::new();
    for (k, (block, p)) in parts.iter().enumerate() {
        if block.len() != p.output_n() {
            return Err(Error::SizeMismatch("block and procedure sizes differ".into()));
        }
        let off = sizes.len();
        offsets.push(off);
        sizes.extend_from_slice(p.input_sizes());
        for (slot, &pos) in block.iter().enumerate() {
            if pos >= n || owner[pos].is_some() {
                return Err(Error::InvalidParameter("blocks must partition the positions".into()));
            }
            owner[pos] = Some((k, slot));
            windows[pos] = p.declared_window(slot).iter().map(|&c| c + off).collect();
        }
    }
    if owner.iter().any(|o| o.is_none()) {
        return Err(Error::InvalidParameter("blocks must cover the positions".into()));
    }
    let rules: Vec<Vec<Letter>> = (0..n)
        .map(|pos| {
            let (k, slot) = owner[pos].expect("covered");
            parts[k].1.rule_table(slot).to_vec()
        })
        .collect();
    Procedure::new(sizes, alphabet.clone(), windows, rules)
}

/// Replaces the rule of every position on which `l` is constant by that
/// constant. Leaves the image unchanged whenever `p` generates `l`, and can
/// only shrink the communication complex.
pub fn drop_constant_positions(p: &Procedure, l: &Language) -> Result<Procedure> {
    let constant: Vec<Option<Letter>> = (0..l.n())
        .map(|i| {
            let s = l.letters_at(i);
            (s.len() == 1).then(|| *s.iter().next().expect("non-empty"))
        })
        .collect();
    let windows = (0..p.output_n())
        .map(|i| if constant[i].is_some() { vec![] } else { p.declared_window(i).to_vec() })
        .collect();
    let rules = (0..p.output_n())
        .map(|i| match constant[i] {
            Some(c) => vec![c],
            None => p.rule_table(i).to_vec(),
        })
        .collect();
    Procedure::new(p.input_sizes().to_vec(), p.output_alphabet().clone(), windows, rules)
}

/// The procedure whose communication complex is exactly `k`: a bit per
/// non-empty simplex; position `i` outputs the bits of the simplices
/// containing it, as a letter of [`families::realizer`].
pub fn proc_realizer(k: &SimplicialComplex) -> Result<Procedure> {
    let simplices = k.nonempty_simplices();
    let m = simplices.len();
    if m > families::REALIZER_MAX_SIMPLICES {
        return Err(Error::BoundExceeded {
            what: "simplices in realizer",
            value: m as u128,
            limit: families::REALIZER_MAX_SIMPLICES as u128,
        });
    }
    let windows: Vec<Vec<usize>> = (0..k.n())
        .map(|i| (0..m).filter(|&b| simplices[b] >> i & 1 == 1).collect())
        .collect();
    let windows_for_rule = windows.clone();
    Procedure::from_fn(vec![2; m], Alphabet::new(1 << m)?, windows, |i, t| {
        windows_for_rule[i]
            .iter()
            .zip(t)
            .fold(0usize, |acc, (&b, &bit)| acc | bit << b) as Letter
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::named;
    use crate::graph::spanning_trees;
    use crate::procedure::verify_generates;

    #[test]
    fn parity_trees_generate_ev() {
        for n in 2..=5 {
            let ev = families::ev(n).unwrap();
            let ev_eq = families::eq(n, 2).unwrap();
            for t in spanning_trees(n) {
                let p = proc_parity_tree(&t).unwrap();
                assert!(verify_generates(&p, &ev, &t.to_complex()).unwrap());
                assert!(!verify_generates(&p, &families::od(n).unwrap(), &t.to_complex()).unwrap());
                if n >= 2 {
                    let q = proc_eq_binary_tree(&t).unwrap();
                    assert!(verify_generates(&q, &ev_eq, &t.to_complex()).unwrap(), "{t:?}");
                }
            }
        }
    }

    #[test]
    fn nc_trees() {
        for n in 2..=4 {
            for k in 2..=3 {
                let nc = families::nc(n, k).unwrap();
                for t in spanning_trees(n) {
                    let p = proc_nc_tree(&t, k).unwrap();
                    assert!(verify_generates(&p, &nc, &t.to_complex()).unwrap());
                }
            }
        }
    }

    #[test]
    fn card_le1_complete_graph() {
        for n in 3..=5 {
            let p = proc_card_le1(n).unwrap();
            assert!(verify_generates(
                &p,
                &families::card_le(n, 1).unwrap(),
                &SimplicialComplex::complete_graph(n)
            )
            .unwrap());
        }
        assert!(proc_card_le1(2).is_err());
    }

    #[test]
    fn fig4_cases() {
        let p = proc_eq_fig4(3).unwrap();
        let (a, b, c) = (0, 1, 2);
        let y = fig4_middle_index(3, b, c, 1);
        assert_eq!(p.eval(&[a, y, c]).unwrap(), vec![0, 1, 2, 2]);
        for k in 2..=4 {
            let q = proc_eq_fig4(k).unwrap();
            assert!(verify_generates(&q, &families::eq(4, k).unwrap(), &named::fig4()).unwrap());
        }
    }

    #[test]
    fn descendant_roots_on_four_vertices() {
        let trees = spanning_trees(4);
        let failing: Vec<Graph> = trees
            .iter()
            .filter(|t| descendant_condition_root(t).is_none())
            .cloned()
            .collect();
        let as_complexes: Vec<SimplicialComplex> = failing.iter().map(|t| t.to_complex()).collect();
        assert_eq!(failing.len(), 4);
        assert!(as_complexes.contains(&named::fig2()));
        assert!(as_complexes.contains(&named::fig3()));
        assert!(as_complexes.contains(&named::fig4()));
        for t in trees.iter().filter(|t| descendant_condition_root(t).is_some()) {
            let root = descendant_condition_root(t).unwrap();
            let p = proc_eq_descendant_tree(t, root, 3).unwrap();
            assert!(verify_generates(&p, &families::eq(4, 3).unwrap(), &t.to_complex()).unwrap());
        }
    }

    #[test]
    fn upclosed_edges_on_complete_graph() {
        let l = families::card_ge(4, 2).unwrap();
        let g = Graph::complete(4);
        let p = proc_upclosed_edges(&g, &l).unwrap();
        assert!(verify_generates(&p, &l, &g.to_complex()).unwrap());
    }

    #[test]
    fn join_extend_makes_a_cone() {
        let l = families::unique(4).unwrap();
        let j = [1, 2, 3];
        let inner = proc_card_le1(3).unwrap();
        let p = proc_join_extend(&inner, &l, &j).unwrap();
        let cone = SimplicialComplex::complete_graph(3).embed(4, &j).unwrap().cone_at(0);
        assert!(verify_generates(&p, &l, &cone).unwrap());
    }

    #[test]
    fn trivial_and_realizer() {
        let l = families::eq(3, 3).unwrap();
        let p = proc_trivial(&l).unwrap();
        assert!(verify_generates(&p, &l, &SimplicialComplex::full(3)).unwrap());
        let k = named::fig3();
        let r = proc_realizer(&k).unwrap();
        assert_eq!(r.comm_complex().unwrap(), k);
        assert_eq!(r.image().unwrap(), families::realizer(&k).unwrap());
    }

    #[test]
    fn product_of_parts() {
        let ev2 = families::ev(2).unwrap();
        let one = Language::new(1, Alphabet::binary(), vec![vec![1]]).unwrap();
        let a = proc_parity_tree(&Graph::complete(2)).unwrap();
        let b = proc_constant(&Alphabet::binary(), &[1]).unwrap();
        let p = proc_product(3, &Alphabet::binary(), &[(vec![0, 2], a), (vec![1], b)]).unwrap();
        let img = p.image().unwrap();
        assert_eq!(img.len(), ev2.len() * one.len());
        assert!(img.contains(&[0, 1, 0]) && img.contains(&[1, 1, 1]));
    }
}
