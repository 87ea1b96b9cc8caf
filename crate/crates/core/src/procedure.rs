//! Generation procedures given by rule tables, with their input windows,
//! dual windows and communication complexes.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{mask_of, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lang::{Alphabet, Language, Letter, Word};

/// Default bound on enumerated input tuples and on rule-table sizes.
pub const DEFAULT_INPUT_BOUND: u128 = 10_000_000;

/// A map `∏_j B_j → A^I`: output cell `i` reads the input cells of its
/// declared window and looks its letter up in a dense table.
///
/// Table index of a window tuple `(x_{w_0}, x_{w_1}, ..)` is
/// `x_{w_0} + B_{w_0}·(x_{w_1} + B_{w_1}·(..))`, little-endian in window order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Procedure {
    input_sizes: Vec<usize>,
    input_names: Option<Vec<String>>,
    output_alphabet: Alphabet,
    output_names: Option<Vec<String>>,
    windows: Vec<Vec<usize>>,
    rules: Vec<Vec<Letter>>,
}

fn table_size(sizes: &[usize], window: &[usize]) -> Result<usize> {
    let mut total: u128 = 1;
    for &j in window {
        total *= sizes[j] as u128;
        if total > DEFAULT_INPUT_BOUND {
            return Err(Error::BoundExceeded {
                what: "rule table size",
                value: total,
                limit: DEFAULT_INPUT_BOUND,
            });
        }
    }
    Ok(total as usize)
}

/// Calls `f` with every tuple of the mixed-radix space `sizes`, first
/// coordinate fastest.
pub(crate) fn for_each_tuple(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut t = vec![0usize; sizes.len()];
    loop {
        f(&t);
        let mut k = 0;
        loop {
            if k == sizes.len() {
                return;
            }
            t[k] += 1;
            if t[k] < sizes[k] {
                break;
            }
            t[k] = 0;
            k += 1;
        }
    }
}

impl Procedure {
    pub fn new(
        input_sizes: Vec<usize>,
        output_alphabet: Alphabet,
        windows: Vec<Vec<usize>>,
        rules: Vec<Vec<Letter>>,
    ) -> Result<Self> {
        if let Some(j) = input_sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidParameter(format!("input cell {j} has an empty alphabet")));
        }
        if windows.len() != rules.len() {
            return Err(Error::SizeMismatch(format!(
                "{} windows but {} rule tables",
                windows.len(),
                rules.len()
            )));
        }
        for (i, w) in windows.iter().enumerate() {
            for (k, &j) in w.iter().enumerate() {
                if j >= input_sizes.len() {
                    return Err(Error::VertexOutOfRange { vertex: j, n: input_sizes.len() });
                }
                if k > 0 && w[k - 1] >= j {
                    return Err(Error::InvalidParameter(format!(
                        "window of output {i} is not strictly increasing"
                    )));
                }
            }
            let size = table_size(&input_sizes, w)?;
            if rules[i].len() != size {
                return Err(Error::SizeMismatch(format!(
                    "rule table of output {i} has {} entries, expected {size}",
                    rules[i].len()
                )));
            }
            if let Some(&l) = rules[i].iter().find(|&&l| l as usize >= output_alphabet.size()) {
                return Err(Error::LetterOutOfRange {
                    letter: l as usize,
                    size: output_alphabet.size(),
                });
            }
        }
        Ok(Procedure {
            input_sizes,
            input_names: None,
            output_alphabet,
            output_names: None,
            windows,
            rules,
        })
    }

    /// Tabulates `rule(i, tuple)` where `tuple` lists the values of the cells
    /// of window `i` in window order. Windows are sorted and deduplicated.
    pub fn from_fn(
        input_sizes: Vec<usize>,
        output_alphabet: Alphabet,
        windows: Vec<Vec<usize>>,
        mut rule: impl FnMut(usize, &[usize]) -> Letter,
    ) -> Result<Self> {
        let windows: Vec<Vec<usize>> = windows
            .into_iter()
            .map(|w| {
                let set: BTreeSet<usize> = w.into_iter().collect();
                set.into_iter().collect()
            })
            .collect();
        let mut rules = Vec::with_capacity(windows.len());
        for (i, w) in windows.iter().enumerate() {
            if let Some(&j) = w.iter().find(|&&j| j >= input_sizes.len()) {
                return Err(Error::VertexOutOfRange { vertex: j, n: input_sizes.len() });
            }
            let size = table_size(&input_sizes, w)?;
            let sizes: Vec<usize> = w.iter().map(|&j| input_sizes[j]).collect();
            let mut table = Vec::with_capacity(size);
            for_each_tuple(&sizes, |t| table.push(rule(i, t)));
            rules.push(table);
        }
        Self::new(input_sizes, output_alphabet, windows, rules)
    }

    pub fn with_input_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.input_sizes.len() {
            return Err(Error::SizeMismatch("input name count".into()));
        }
        self.input_names = Some(names);
        Ok(self)
    }

    pub fn with_output_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.windows.len() {
            return Err(Error::SizeMismatch("output name count".into()));
        }
        self.output_names = Some(names);
        Ok(self)
    }

    pub fn input_count(&self) -> usize {
        self.input_sizes.len()
    }

    pub fn input_size(&self, j: usize) -> usize {
        self.input_sizes[j]
    }

    pub fn input_sizes(&self) -> &[usize] {
        &self.input_sizes
    }

    pub fn output_n(&self) -> usize {
        self.windows.len()
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output_alphabet
    }

    pub fn declared_window(&self, i: usize) -> &[usize] {
        &self.windows[i]
    }

    pub fn rule_table(&self, i: usize) -> &[Letter] {
        &self.rules[i]
    }

    pub fn input_name(&self, j: usize) -> String {
        match &self.input_names {
            Some(names) => names[j].clone(),
            None => j.to_string(),
        }
    }

    pub fn output_name(&self, i: usize) -> String {
        match &self.output_names {
            Some(names) => names[i].clone(),
            None => i.to_string(),
        }
    }

    fn table_index(&self, i: usize, input: &[usize]) -> usize {
        let mut idx = 0;
        for &j in self.windows[i].iter().rev() {
            idx = idx * self.input_sizes[j] + input[j];
        }
        idx
    }

    /// Applies every rule to `input`.
    pub fn eval(&self, input: &[usize]) -> Result<Word> {
        if input.len() != self.input_sizes.len() {
            return Err(Error::SizeMismatch(format!(
                "input has {} cells, procedure reads {}",
                input.len(),
                self.input_sizes.len()
            )));
        }
        if let Some(j) = (0..input.len()).find(|&j| input[j] >= self.input_sizes[j]) {
            return Err(Error::LetterOutOfRange {
                letter: input[j],
                size: self.input_sizes[j],
            });
        }
        Ok(self.eval_unchecked(input))
    }

    pub(crate) fn eval_unchecked(&self, input: &[usize]) -> Word {
        (0..self.windows.len())
            .map(|i| self.rules[i][self.table_index(i, input)])
            .collect()
    }

    /// Cells read by at least one declared window.
    fn used_cells(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.windows.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// `im f`. Small input spaces are enumerated directly over the cells
    /// some rule reads; larger ones cell by cell, keeping only the letters
    /// of finished outputs and the values of cells still to be read.
    pub fn image(&self) -> Result<Language> {
        let used = self.used_cells();
        let total = used
            .iter()
            .fold(1u128, |acc, &j| acc.saturating_mul(self.input_sizes[j] as u128));
        if total > DEFAULT_INPUT_BOUND {
            return self.image_by_frontier(&used);
        }
        let sizes: Vec<usize> = used.iter().map(|&j| self.input_sizes[j]).collect();
        let mut input = vec![0usize; self.input_sizes.len()];
        let mut words: BTreeSet<Word> = BTreeSet::new();
        for_each_tuple(&sizes, |t| {
            for (k, &j) in used.iter().enumerate() {
                input[j] = t[k];
            }
            words.insert(self.eval_unchecked(&input));
        });
        Language::new(self.output_n(), self.output_alphabet.clone(), words)
    }

    fn image_by_frontier(&self, used: &[usize]) -> Result<Language> {
        let n = self.output_n();
        let mut rank = vec![usize::MAX; self.input_sizes.len()];
        for (r, &j) in used.iter().enumerate() {
            rank[j] = r;
        }
        // output i is known once the cell of rank finish[i] is assigned
        let finish: Vec<Option<usize>> =
            self.windows.iter().map(|w| w.iter().map(|&j| rank[j]).max()).collect();
        let mut last_read = vec![0usize; used.len()];
        for (i, w) in self.windows.iter().enumerate() {
            for &j in w {
                let f = finish[i].expect("window is non-empty");
                last_read[rank[j]] = last_read[rank[j]].max(f);
            }
        }
        let mut start: Word = vec![0; n];
        for i in 0..n {
            if finish[i].is_none() {
                start[i] = self.rules[i][0];
            }
        }
        let mut states: HashSet<(Word, Vec<usize>)> = HashSet::new();
        states.insert((start, vec![0; self.input_sizes.len()]));
        for (r, &j) in used.iter().enumerate() {
            let finishing: Vec<usize> = (0..n).filter(|&i| finish[i] == Some(r)).collect();
            let dropping: Vec<usize> = used.iter().copied().filter(|&c| last_read[rank[c]] == r).collect();
            let mut next = HashSet::new();
            for (word, input) in &states {
                for v in 0..self.input_sizes[j] {
                    let mut input = input.clone();
                    input[j] = v;
                    let mut word = word.clone();
                    for &i in &finishing {
                        word[i] = self.rules[i][self.table_index(i, &input)];
                    }
                    for &c in &dropping {
                        input[c] = 0;
                    }
                    next.insert((word, input));
                }
            }
            if next.len() as u128 > DEFAULT_INPUT_BOUND {
                return Err(Error::BoundExceeded {
                    what: "partial states enumerated for image",
                    value: next.len() as u128,
                    limit: DEFAULT_INPUT_BOUND,
                });
            }
            states = next;
        }
        let words: BTreeSet<Word> = states.into_iter().map(|(w, _)| w).collect();
        Language::new(n, self.output_alphabet.clone(), words)
    }

    /// The smallest set of input cells determining output `i`: the cells `j`
    /// of the declared window for which two tuples differing only at `j` get
    /// different letters.
    pub fn input_window(&self, i: usize) -> Vec<usize> {
        let w = &self.windows[i];
        let sizes: Vec<usize> = w.iter().map(|&j| self.input_sizes[j]).collect();
        let table = &self.rules[i];
        let mut out = Vec::new();
        let mut stride = 1;
        for (k, &j) in w.iter().enumerate() {
            let b = sizes[k];
            let essential = b > 1
                && (0..table.len()).any(|idx| {
                    let digit = (idx / stride) % b;
                    digit == 0
                        && (1..b).any(|v| table[idx + v * stride] != table[idx])
                });
            if essential {
                out.push(j);
            }
            stride *= b;
        }
        out
    }

    /// True windows of all outputs.
    pub fn input_windows(&self) -> Vec<Vec<usize>> {
        (0..self.output_n()).map(|i| self.input_window(i)).collect()
    }

    /// Outputs whose true window contains `j`.
    pub fn dual_window(&self, j: usize) -> Vec<usize> {
        let windows = self.input_windows();
        dual_from(&windows, j)
    }

    pub fn dual_windows(&self) -> Vec<Vec<usize>> {
        let windows = self.input_windows();
        (0..self.input_count()).map(|j| dual_from(&windows, j)).collect()
    }

    /// Input cells visible to every output in `outputs`; all cells when
    /// `outputs` is empty.
    pub fn up_set(&self, outputs: &[usize]) -> Vec<usize> {
        let windows = self.input_windows();
        (0..self.input_count())
            .filter(|j| outputs.iter().all(|&i| windows[i].contains(j)))
            .collect()
    }

    pub fn visibility(&self) -> VisibilityDiagram {
        let windows = self.input_windows();
        VisibilityDiagram {
            output_names: (0..self.output_n()).map(|i| self.output_name(i)).collect(),
            input_names: (0..self.input_count()).map(|j| self.input_name(j)).collect(),
            visible: (0..self.output_n())
                .map(|i| (0..self.input_count()).map(|j| windows[i].contains(&j)).collect())
                .collect(),
        }
    }

    /// The complex induced by the non-empty dual windows.
    pub fn comm_complex(&self) -> Result<SimplicialComplex> {
        let sets: Vec<u32> = self
            .dual_windows()
            .iter()
            .filter(|d| !d.is_empty())
            .map(|d| mask_of(d))
            .collect();
        SimplicialComplex::from_maximal(self.output_n(), &sets)
    }

    /// The communication complex from its definition: a non-empty set of
    /// outputs is a simplex when their true windows share a cell.
    pub fn comm_complex_by_intersection(&self) -> Result<SimplicialComplex> {
        let n = self.output_n();
        if n > 16 {
            return Err(Error::BoundExceeded {
                what: "outputs for subset scan",
                value: n as u128,
                limit: 16,
            });
        }
        let windows: Vec<BTreeSet<usize>> = self
            .input_windows()
            .into_iter()
            .map(|w| w.into_iter().collect())
            .collect();
        let mut sets = Vec::new();
        for s in 1u32..1 << n {
            let mut common: Option<BTreeSet<usize>> = None;
            for (i, w) in windows.iter().enumerate() {
                if s >> i & 1 == 1 {
                    common = Some(match common {
                        None => w.clone(),
                        Some(c) => c.intersection(w).copied().collect(),
                    });
                }
            }
            if common.is_some_and(|c| !c.is_empty()) {
                sets.push(s);
            }
        }
        SimplicialComplex::from_maximal(n, &sets)
    }

    /// `f_*(K)`: the complex induced by `⋃_{j∈S} W^f(j)` over the maximal
    /// simplices `S` of `k`, keeping only non-empty images.
    pub fn pushforward(&self, k: &SimplicialComplex) -> Result<SimplicialComplex> {
        if k.n() != self.input_count() {
            return Err(Error::SizeMismatch(format!(
                "complex over {} vertices, procedure has {} input cells",
                k.n(),
                self.input_count()
            )));
        }
        let duals: Vec<u32> = self.dual_windows().iter().map(|d| mask_of(d)).collect();
        let sets: Vec<u32> = k
            .maximal()
            .iter()
            .map(|&s| {
                (0..k.n())
                    .filter(|&j| s >> j & 1 == 1)
                    .fold(0u32, |a, j| a | duals[j])
            })
            .filter(|&m| m != 0)
            .collect();
        SimplicialComplex::from_maximal(self.output_n(), &sets)
    }

    /// `self ∘ inner`: the outputs of `inner` feed the input cells of `self`.
    pub fn compose(&self, inner: &Procedure) -> Result<Procedure> {
        if inner.output_n() != self.input_count() {
            return Err(Error::SizeMismatch(format!(
                "inner procedure has {} outputs, outer reads {} cells",
                inner.output_n(),
                self.input_count()
            )));
        }
        if let Some(j) =
            (0..self.input_count()).find(|&j| self.input_sizes[j] < inner.output_alphabet.size())
        {
            return Err(Error::SizeMismatch(format!(
                "input cell {j} cannot hold the inner output alphabet"
            )));
        }
        let windows: Vec<Vec<usize>> = self
            .windows
            .iter()
            .map(|w| {
                let set: BTreeSet<usize> =
                    w.iter().flat_map(|&j| inner.windows[j].iter().copied()).collect();
                set.into_iter().collect()
            })
            .collect();
        let mut input = vec![0usize; inner.input_count()];
        let mut mid = vec![0usize; self.input_count()];
        let windows_for_rule = windows.clone();
        Procedure::from_fn(
            inner.input_sizes.clone(),
            self.output_alphabet.clone(),
            windows,
            |i, t| {
                for (k, &c) in windows_for_rule[i].iter().enumerate() {
                    input[c] = t[k];
                }
                for &j in &self.windows[i] {
                    mid[j] = inner.rules[j][inner.table_index(j, &input)] as usize;
                }
                self.rules[i][self.table_index(i, &mid)]
            },
        )
    }

    /// Outputs fixed by a partial input: those whose true window lies inside
    /// its domain, with their letters.
    pub fn determined_outputs(&self, partial: &PartialInput) -> Result<Vec<(usize, Letter)>> {
        partial.check(self)?;
        let mut input = vec![0usize; self.input_count()];
        for (&j, &v) in partial.domain.iter().zip(&partial.values) {
            input[j] = v;
        }
        Ok((0..self.output_n())
            .filter(|&i| self.input_window(i).iter().all(|j| partial.domain.contains(j)))
            .map(|i| (i, self.rules[i][self.table_index(i, &input)]))
            .collect())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ProcedureFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProcedureFile = serde_json::from_str(text)?;
        file.into_procedure()
    }
}

fn dual_from(windows: &[Vec<usize>], j: usize) -> Vec<usize> {
    (0..windows.len()).filter(|&i| windows[i].contains(&j)).collect()
}

/// `im f = L` and `K_f ⊆ K`.
pub fn verify_generates(p: &Procedure, l: &Language, k: &SimplicialComplex) -> Result<bool> {
    if p.output_n() != l.n() || k.n() != l.n() {
        return Err(Error::SizeMismatch("procedure, language and complex sizes differ".into()));
    }
    if p.output_alphabet().size() != l.alphabet().size() {
        return Ok(false);
    }
    Ok(p.image()? == *l && p.comm_complex()?.is_subcomplex(k))
}

/// Values on a subset of the input cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialInput {
    pub domain: Vec<usize>,
    pub values: Vec<usize>,
}

impl PartialInput {
    fn check(&self, p: &Procedure) -> Result<()> {
        if self.domain.len() != self.values.len() {
            return Err(Error::SizeMismatch("partial input domain and values differ".into()));
        }
        for (&j, &v) in self.domain.iter().zip(&self.values) {
            if j >= p.input_count() {
                return Err(Error::VertexOutOfRange { vertex: j, n: p.input_count() });
            }
            if v >= p.input_size(j) {
                return Err(Error::LetterOutOfRange { letter: v, size: p.input_size(j) });
            }
        }
        Ok(())
    }
}

/// Which input cells each output reads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityDiagram {
    pub output_names: Vec<String>,
    pub input_names: Vec<String>,
    /// `visible[i][j]` iff input `j` is in the true window of output `i`.
    pub visible: Vec<Vec<bool>>,
}

impl VisibilityDiagram {
    /// One row per output cell, one column per input cell, `#` where visible.
    pub fn render(&self) -> String {
        let width = self
            .input_names
            .iter()
            .chain(&self.output_names)
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        let _ = write!(out, "{:width$}", "");
        for name in &self.input_names {
            let _ = write!(out, " {name:>width$}");
        }
        out.push('\n');
        for (i, row) in self.visible.iter().enumerate() {
            let _ = write!(out, "{:>width$}", self.output_names[i]);
            for &v in row {
                let _ = write!(out, " {:>width$}", if v { "#" } else { "." });
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct InputCellFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    size: usize,
}

#[derive(Serialize, Deserialize)]
struct OutputCellFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    window: Vec<usize>,
    rule: Vec<Letter>,
}

/// On-disk form of a procedure. Rule tables are flat arrays in mixed-radix
/// order, little-endian by position in the window.
#[derive(Serialize, Deserialize)]
struct ProcedureFile {
    inputs: Vec<InputCellFile>,
    output_alphabet: OutputAlphabetFile,
    outputs: Vec<OutputCellFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OutputAlphabetFile {
    Size(usize),
    Names(Vec<String>),
}

impl From<&Procedure> for ProcedureFile {
    fn from(p: &Procedure) -> Self {
        ProcedureFile {
            inputs: (0..p.input_count())
                .map(|j| InputCellFile {
                    name: p.input_names.as_ref().map(|n| n[j].clone()),
                    size: p.input_sizes[j],
                })
                .collect(),
            output_alphabet: match p.output_alphabet.names() {
                Some(names) => OutputAlphabetFile::Names(names.to_vec()),
                None => OutputAlphabetFile::Size(p.output_alphabet.size()),
            },
            outputs: (0..p.output_n())
                .map(|i| OutputCellFile {
                    name: p.output_names.as_ref().map(|n| n[i].clone()),
                    window: p.windows[i].clone(),
                    rule: p.rules[i].clone(),
                })
                .collect(),
        }
    }
}

impl ProcedureFile {
    fn into_procedure(self) -> Result<Procedure> {
        let alphabet = match self.output_alphabet {
            OutputAlphabetFile::Size(s) => Alphabet::new(s)?,
            OutputAlphabetFile::Names(names) => Alphabet::with_names(names)?,
        };
        let input_names: Option<Vec<String>> =
            self.inputs.iter().map(|c| c.name.clone()).collect();
        let output_names: Option<Vec<String>> =
            self.outputs.iter().map(|c| c.name.clone()).collect();
        let sizes = self.inputs.iter().map(|c| c.size).collect();
        let (windows, rules) = self.outputs.into_iter().map(|c| (c.window, c.rule)).unzip();
        let mut p = Procedure::new(sizes, alphabet, windows, rules)?;
        if let Some(names) = input_names {
            p = p.with_input_names(names)?;
        }
        if let Some(names) = output_names {
            p = p.with_output_names(names)?;
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::proc_fig1;

    #[test]
    fn fig1_windows() {
        let p = proc_fig1();
        assert_eq!(p.eval(&[1, 1, 0, 1]).unwrap(), vec![1, 0, 0]);
        assert_eq!(p.input_window(0), vec![0, 1]);
        assert_eq!(p.dual_window(1), vec![0, 1]);
        assert_eq!(p.dual_window(3), vec![2]);
        assert_eq!(p.up_set(&[0, 1]), vec![1]);
        assert_eq!(p.up_set(&[]), vec![0, 1, 2, 3]);
        let k = p.comm_complex().unwrap();
        assert_eq!(k, SimplicialComplex::from_maximal(3, &[0b011, 0b110]).unwrap());
        assert_eq!(k, p.comm_complex_by_intersection().unwrap());
        let text = p.visibility().render();
        assert_eq!(text, "  a b c d\nA # # . .\nB . # # .\nC . . # #\n");
    }

    #[test]
    fn true_window_can_shrink() {
        // output reads cell 1 but ignores it
        let p = Procedure::from_fn(vec![2, 3], Alphabet::binary(), vec![vec![0, 1]], |_, t| {
            t[0] as Letter
        })
        .unwrap();
        assert_eq!(p.input_window(0), vec![0]);
    }

    #[test]
    fn constant_and_identity() {
        let c = Procedure::from_fn(vec![2, 2], Alphabet::binary(), vec![vec![], vec![]], |_, _| 1)
            .unwrap();
        assert_eq!(c.image().unwrap().len(), 1);
        assert!(c.comm_complex().unwrap().has_no_simplex());
        let id = Procedure::from_fn(vec![2; 3], Alphabet::binary(), vec![vec![0], vec![1], vec![2]], |_, t| {
            t[0] as Letter
        })
        .unwrap();
        assert_eq!(id.image().unwrap().len(), 8);
        assert_eq!(id.comm_complex().unwrap(), SimplicialComplex::singletons(3));
        assert_eq!(id.input_window(1), vec![1]);
    }

    #[test]
    fn json_round_trip() {
        let p = proc_fig1();
        let back = Procedure::from_json(&p.to_json().unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn partial_inputs() {
        let p = proc_fig1();
        let alpha = PartialInput { domain: vec![0, 1], values: vec![1, 1] };
        assert_eq!(p.determined_outputs(&alpha).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn malformed() {
        assert!(Procedure::new(vec![2], Alphabet::binary(), vec![vec![0]], vec![vec![0]]).is_err());
        assert!(Procedure::new(vec![2], Alphabet::binary(), vec![vec![1]], vec![vec![0, 1]]).is_err());
        let p = proc_fig1();
        assert!(p.eval(&[0, 0, 0]).is_err());
        assert!(p.eval(&[0, 0, 0, 2]).is_err());
    }

    #[test]
    fn frontier_image_matches_enumeration() {
        use crate::generators::proc_upclosed_edges;
        use crate::{families, Graph};
        for n in 3..=4 {
            let l = families::card_ge(n, 1).unwrap();
            for g in [Graph::path(n), Graph::complete(n)] {
                let p = proc_upclosed_edges(&g, &l).unwrap();
                let used = p.used_cells();
                assert_eq!(p.image_by_frontier(&used).unwrap(), l);
            }
        }
        let p = proc_fig1();
        assert_eq!(p.image_by_frontier(&p.used_cells()).unwrap(), p.image().unwrap());
    }
}
