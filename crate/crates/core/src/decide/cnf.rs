//! DIMACS export of canonical instances.

use std::fmt::Write as _;
use std::path::Path;

use super::csp::CanonicalCsp;
use crate::error::Result;

/// Recorded in the header of every exported file.
pub const ENCODING_VERSION: &str = "one-hot/selector v1";

/// A CNF formula with 1-based variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

/// Variable numbering of an encoded instance.
#[derive(Clone, Debug)]
pub struct CnfLayout {
    /// `letter_var[v][a]`: the variable stating that CSP variable `v` takes
    /// local letter `a`.
    pub letter_var: Vec<Vec<i32>>,
    /// First selector variable of each tuple; selectors follow in word order.
    pub selector_start: Vec<i32>,
}

/// One-hot letters per CSP variable (at-least-one plus pairwise
/// at-most-one), pins as unit clauses, and per membership tuple a selector
/// per upper word with channeling clauses `s -> letter`.
pub fn encode(csp: &CanonicalCsp) -> (Cnf, CnfLayout) {
    let mut next = 1i32;
    let mut clauses = Vec::new();
    let mut letter_var = Vec::with_capacity(csp.variable_count());
    for v in 0..csp.variable_count() {
        let i = csp.var_position(v);
        let count = csp.local_letters(i).len();
        let vars: Vec<i32> = (0..count).map(|a| next + a as i32).collect();
        next += count as i32;
        clauses.push(vars.clone());
        for a in 0..count {
            for b in a + 1..count {
                clauses.push(vec![-vars[a], -vars[b]]);
            }
            if csp.initial_domain(v) >> a & 1 == 0 {
                clauses.push(vec![-vars[a]]);
            }
        }
        letter_var.push(vars);
    }
    let upper = csp.upper();
    let local: Vec<Vec<usize>> = upper
        .words()
        .iter()
        .map(|w| {
            w.iter()
                .enumerate()
                .map(|(i, l)| {
                    csp.local_letters(i).iter().position(|x| x == l).expect("letter occurs")
                })
                .collect()
        })
        .collect();
    let mut selector_start = Vec::with_capacity(csp.tuple_count());
    for t in 0..csp.tuple_count() {
        let first = next;
        selector_start.push(first);
        next += upper.len() as i32;
        clauses.push((0..upper.len() as i32).map(|w| first + w).collect());
        let vars = csp.tuple(t);
        for (w, letters) in local.iter().enumerate() {
            let s = first + w as i32;
            for (i, &a) in letters.iter().enumerate() {
                clauses.push(vec![-s, letter_var[vars[i] as usize][a]]);
            }
        }
    }
    (Cnf { num_vars: (next - 1) as usize, clauses }, CnfLayout { letter_var, selector_start })
}

impl CnfLayout {
    /// Reads a CSP assignment back from a satisfying model, given as the set
    /// of true variables.
    pub fn decode(&self, is_true: impl Fn(i32) -> bool) -> Vec<u8> {
        self.letter_var
            .iter()
            .map(|vars| vars.iter().position(|&x| is_true(x)).unwrap_or(0) as u8)
            .collect()
    }
}

impl Cnf {
    /// DIMACS text with the given comment lines first.
    pub fn to_dimacs(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Writes the encoding of `csp` to `path`, recording the query in the header.
pub fn export_cnf(csp: &CanonicalCsp, query: &str, path: &Path) -> Result<()> {
    let (cnf, _) = encode(csp);
    let comments = vec![
        format!("encoding {ENCODING_VERSION}"),
        format!("query {query}"),
        format!(
            "csp variables {} tuples {}",
            csp.variable_count(),
            csp.tuple_count()
        ),
    ];
    std::fs::write(path, cnf.to_dimacs(&comments))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::csp::DEFAULT_MAX_TUPLES;
    use crate::{families, SimplicialComplex};

    #[test]
    fn singleton_base_is_all_pinned() {
        let l = families::unique(3).unwrap();
        let l = crate::lang::project(&l, &[0, 1, 2]).unwrap();
        let one = crate::Language::new(3, l.alphabet().clone(), vec![l.words()[0].clone()]).unwrap();
        let csp = CanonicalCsp::build(&one, &SimplicialComplex::full(3), DEFAULT_MAX_TUPLES).unwrap();
        let (cnf, layout) = encode(&csp);
        assert_eq!(layout.selector_start.len(), 1);
        assert!(cnf.clauses.iter().any(|c| c.len() == 1));
    }

    #[test]
    fn header_and_counts() {
        let l = families::ev(3).unwrap();
        let k = crate::Graph::path(3).to_complex();
        let csp = CanonicalCsp::build(&l, &k, DEFAULT_MAX_TUPLES).unwrap();
        let (cnf, _) = encode(&csp);
        let text = cnf.to_dimacs(&["hello".into()]);
        assert!(text.starts_with("c hello\np cnf "));
        assert_eq!(text.lines().count(), cnf.clauses.len() + 2);
    }
}
