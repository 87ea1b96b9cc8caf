//! File formats: JSON languages and complexes, complex specifications in
//! short text form, and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chromatic::ChromaticComplex;
use crate::complex::{named, vertex_list, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lang::{Alphabet, Language, Letter, Word};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AlphabetField {
    Size(usize),
    Names(Vec<String>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WordField {
    Text(String),
    Letters(Vec<String>),
}

#[derive(Serialize, Deserialize)]
struct LanguageFile {
    n: usize,
    alphabet: AlphabetField,
    words: Vec<WordField>,
}

/// Reads `{"n": 3, "alphabet": ["0","1"], "words": ["010","001"]}`. The
/// alphabet may also be a size, in which case letters are digits; a word
/// may be an array of letter names instead of a string.
pub fn language_from_json(text: &str) -> Result<Language> {
    let file: LanguageFile = serde_json::from_str(text)?;
    let alphabet = match file.alphabet {
        AlphabetField::Size(k) => Alphabet::new(k)?,
        AlphabetField::Names(names) => Alphabet::with_names(names)?,
    };
    let parse = |name: &str| -> Result<Letter> {
        alphabet
            .parse_letter(name)
            .ok_or_else(|| Error::Parse(format!("unknown letter {name:?}")))
    };
    let mut words = Vec::with_capacity(file.words.len());
    for w in &file.words {
        let word: Word = match w {
            WordField::Text(s) => s.chars().map(|c| parse(&c.to_string())).collect::<Result<_>>()?,
            WordField::Letters(v) => v.iter().map(|s| parse(s)).collect::<Result<_>>()?,
        };
        words.push(word);
    }
    Language::new(file.n, alphabet, words)
}

/// Inverse of [`language_from_json`]; words are strings when every letter
/// name is a single character.
pub fn language_to_json(l: &Language) -> Result<String> {
    let a = l.alphabet();
    let names: Vec<String> = (0..a.size()).map(|x| a.name(x as Letter)).collect();
    let short = names.iter().all(|s| s.chars().count() == 1);
    let words = l
        .words()
        .iter()
        .map(|w| {
            if short {
                WordField::Text(w.iter().map(|&x| names[x as usize].as_str()).collect())
            } else {
                WordField::Letters(w.iter().map(|&x| names[x as usize].clone()).collect())
            }
        })
        .collect();
    let file = LanguageFile { n: l.n(), alphabet: AlphabetField::Names(names), words };
    Ok(serde_json::to_string_pretty(&file)?)
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    n: usize,
    maximal: Vec<Vec<usize>>,
}

/// Reads `{"n": 4, "maximal": [[0,1],[1,2],[2,3]]}`.
pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile = serde_json::from_str(text)?;
    SimplicialComplex::from_sets(file.n, &file.maximal)
}

pub fn complex_to_json(k: &SimplicialComplex) -> Result<String> {
    let file = ComplexFile { n: k.n(), maximal: k.maximal_sets() };
    Ok(serde_json::to_string(&file)?)
}

fn parse_vertex(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex {s:?}")))
}

fn parse_edges(spec: &str) -> Result<Vec<(usize, usize)>> {
    spec.split(',')
        .filter(|e| !e.trim().is_empty())
        .map(|e| {
            let parts: Vec<&str> = e.split('-').collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("bad edge {e:?}")));
            }
            Ok((parse_vertex(parts[0])?, parse_vertex(parts[1])?))
        })
        .collect()
}

/// Parses a complex over `n` vertices from a short specification:
/// `full`, `boundary`, `empty`, `empty-simplex`, `singletons`,
/// `complete-graph`, `path` (0-1-..-(n-1)), `path:0-2-1`, `tree:0-1,1-2`,
/// `graph:0-1,2-3`, `simplices:012,13` (or `simplices:0-1-2,1-3`), `ka:A`,
/// `fig2`, `fig3`, `fig4`.
pub fn parse_complex_spec(spec: &str, n: usize) -> Result<SimplicialComplex> {
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    let fixed4 = |k: SimplicialComplex| {
        if n == 4 {
            Ok(k)
        } else {
            Err(Error::InvalidParameter(format!("{head} is a complex over 4 vertices")))
        }
    };
    match (head, arg) {
        ("full", None) => Ok(SimplicialComplex::full(n)),
        ("boundary", None) => Ok(SimplicialComplex::boundary(n)),
        ("empty", None) => Ok(SimplicialComplex::empty(n)),
        ("empty-simplex", None) => Ok(SimplicialComplex::empty_simplex(n)),
        ("singletons", None) => Ok(SimplicialComplex::singletons(n)),
        ("complete-graph", None) => Ok(SimplicialComplex::complete_graph(n)),
        ("path", None) => Ok(Graph::path(n).to_complex()),
        ("path", Some(a)) => {
            let vs: Vec<usize> = a.split('-').map(parse_vertex).collect::<Result<_>>()?;
            let edges: Vec<(usize, usize)> = vs.windows(2).map(|w| (w[0], w[1])).collect();
            Ok(Graph::from_edges(n, &edges)?.to_complex())
        }
        ("tree", Some(a)) => {
            let g = Graph::from_edges(n, &parse_edges(a)?)?;
            if !g.is_spanning_tree() {
                return Err(Error::InvalidParameter(format!("{a} is not a spanning tree")));
            }
            Ok(g.to_complex())
        }
        ("graph", Some(a)) => Ok(Graph::from_edges(n, &parse_edges(a)?)?.to_complex()),
        ("simplices", Some(a)) => {
            let sets: Vec<Vec<usize>> = a
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    if s.contains('-') {
                        s.split('-').map(parse_vertex).collect()
                    } else {
                        s.chars().map(|c| parse_vertex(&c.to_string())).collect()
                    }
                })
                .collect::<Result<_>>()?;
            SimplicialComplex::from_sets(n, &sets)
        }
        ("ka", Some(a)) => SimplicialComplex::k_a(n, parse_vertex(a)?),
        ("fig2", None) => fixed4(named::fig2()),
        ("fig3", None) => fixed4(named::fig3()),
        ("fig4", None) => fixed4(named::fig4()),
        _ => Err(Error::Parse(format!("unknown complex specification {spec:?}"))),
    }
}

/// DOT graph of the 1-skeleton. Edges carry a `simplices` attribute
/// listing the maximal simplices of size at least three containing them;
/// vertices in no simplex are dashed.
pub fn complex_to_dot(k: &SimplicialComplex) -> String {
    let mut out = String::from("graph complex {\n");
    let covered = k.vertex_mask();
    for v in 0..k.n() {
        let style = if covered >> v & 1 == 1 { "" } else { " [style=dashed]" };
        let _ = writeln!(out, "  {v}{style};");
    }
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for &m in k.maximal() {
        let vs = vertex_list(m);
        let tag: String = vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-");
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                let entry = edges.entry((vs[a], vs[b])).or_default();
                if vs.len() >= 3 {
                    entry.push(tag.clone());
                }
            }
        }
    }
    for ((a, b), tags) in edges {
        if tags.is_empty() {
            let _ = writeln!(out, "  {a} -- {b};");
        } else {
            let _ = writeln!(out, "  {a} -- {b} [simplices=\"{}\"];", tags.join(" "));
        }
    }
    out.push_str("}\n");
    out
}

const PALETTE: &[&str] = &["white", "gray40", "lightblue", "gold", "palegreen", "salmon", "plum", "tan"];
const SHAPES: &[&str] = &["circle", "box", "diamond", "hexagon", "triangle", "octagon", "house", "egg"];

/// DOT graph of a chromatic complex: one node per vertex, filled and shaped
/// by color and labelled by its label text; edges from the simplices.
pub fn chromatic_to_dot(c: &ChromaticComplex, name: &str) -> String {
    let mut out = format!("graph {name} {{\n  node [style=filled];\n");
    for v in 0..c.vertex_count() {
        let (color, _) = c.vertex(v);
        let _ = writeln!(
            out,
            "  v{v} [label=\"{}\", color_index={color}, fillcolor={}, shape={}];",
            c.label_text(v),
            PALETTE[color % PALETTE.len()],
            SHAPES[color % SHAPES.len()]
        );
    }
    let mut edges = std::collections::BTreeSet::new();
    for s in c.simplices() {
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                edges.insert((s[a], s[b]));
            }
        }
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn language_round_trip() {
        let l = language_from_json(r#"{"n": 3, "alphabet": ["0","1"], "words": ["010","001"]}"#).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(language_from_json(&language_to_json(&l).unwrap()).unwrap(), l);
        let e = families::eq(3, 3).unwrap();
        assert_eq!(language_from_json(&language_to_json(&e).unwrap()).unwrap(), e);
        let l = language_from_json(r#"{"n": 2, "alphabet": ["ab","cd"], "words": [["ab","cd"]]}"#).unwrap();
        assert_eq!(l.words(), &[vec![0, 1]]);
        assert!(language_from_json(r#"{"n": 2, "alphabet": 2, "words": ["012"]}"#).is_err());
    }

    #[test]
    fn complex_specs() {
        let k = complex_from_json(r#"{"n": 4, "maximal": [[0,1],[1,2],[2,3]]}"#).unwrap();
        assert_eq!(parse_complex_spec("path", 4).unwrap(), k);
        assert_eq!(parse_complex_spec("path:0-1-2-3", 4).unwrap(), k);
        assert_eq!(parse_complex_spec("tree:0-1,1-2,2-3", 4).unwrap(), k);
        assert_eq!(parse_complex_spec("simplices:01,12,23", 4).unwrap(), k);
        assert_eq!(complex_from_json(&complex_to_json(&k).unwrap()).unwrap(), k);
        assert!(parse_complex_spec("tree:0-1", 4).is_err());
        assert!(parse_complex_spec("fig2", 3).is_err());
        assert_eq!(parse_complex_spec("ka:0", 4).unwrap(), SimplicialComplex::k_a(4, 0).unwrap());
    }

    #[test]
    fn dot_annotations() {
        let k = SimplicialComplex::from_maximal(4, &[0b0111, 0b1000]).unwrap();
        let d = complex_to_dot(&k);
        assert!(d.contains("0 -- 1 [simplices=\"0-1-2\"]"));
        assert!(d.contains("  3;"));
        let d = complex_to_dot(&SimplicialComplex::from_maximal(3, &[0b011]).unwrap());
        assert!(d.contains("2 [style=dashed]"));
    }
}
