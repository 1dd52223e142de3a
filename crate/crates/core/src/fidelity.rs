//! Checking `K` against direct simulation on concrete words.

use std::fmt::Write as _;

use crate::acceptance::{bounded_run_search, SearchConfig};
use crate::error::{Error, Result};
use crate::reductions::{compile_k, decode_rows, lift_word, word_letters};
use crate::sweep::{self, Exec};
use crate::turing::{render_cells, tm_run_bounded, ConfigCell, SymId, TraceEnd, TuringMachine};
use crate::verdict::Category;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub search: u64,
    pub traces: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            search: crate::acceptance::DEFAULT_NODE_BUDGET,
            traces: crate::turing::DEFAULT_TRACE_BUDGET,
        }
    }
}

/// Outcome of running both pipelines on one `(machine, word, depth)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FidelityReport {
    pub machine: String,
    /// The word actually used: the input padded with `a` (or cut) to `depth` letters.
    pub word: String,
    pub depth: usize,
    /// `CertifiedNo` when no chain of `depth` steps stays in `F`, otherwise `Unknown`.
    pub oracle: Category,
    pub oracle_chains: usize,
    pub compiled: Category,
    pub compiled_accepting: usize,
    /// Decoded rows of the compiled witness run, rendered.
    pub rows: Vec<String>,
    pub rows_match: bool,
    pub agreement: bool,
}

impl FidelityReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "machine: {}", self.machine);
        let _ = writeln!(s, "word: {}", self.word);
        let _ = writeln!(s, "depth: {}", self.depth);
        let _ = writeln!(
            s,
            "oracle: {} ({} chains in F)",
            self.oracle, self.oracle_chains
        );
        let _ = writeln!(
            s,
            "compiled: {} ({} accepting cells)",
            self.compiled, self.compiled_accepting
        );
        for (j, r) in self.rows.iter().enumerate() {
            let _ = writeln!(s, "row {j}: {r}");
        }
        let _ = writeln!(s, "rows match: {}", self.rows_match);
        let _ = writeln!(s, "agreement: {}", self.agreement);
        s
    }

    pub fn to_record(&self) -> String {
        format!(
            "machine={} word={} depth={} oracle={} chains={} compiled={} accepting={} rows={} rows_match={} agreement={}",
            self.machine,
            self.word,
            self.depth,
            self.oracle,
            self.oracle_chains,
            self.compiled,
            self.compiled_accepting,
            self.rows.len(),
            self.rows_match,
            self.agreement
        )
    }
}

fn filler_symbol(m: &TuringMachine) -> SymId {
    m.symbol_id("a")
        .filter(|s| m.input().contains(s))
        .unwrap_or(m.input()[0])
}

/// Runs the machine directly and through `K(m)` on the depth-`depth` window
/// of `word^a` and compares.
///
/// The two sides agree when both or neither refute, and, when a run exists,
/// its decoded rows are the configurations of some chain that stays in `F`.
pub fn verify_reduction(
    m: &TuringMachine,
    word: &[SymId],
    depth: usize,
    budgets: Budgets,
) -> Result<FidelityReport> {
    if depth == 0 {
        return Err(Error::NonPositive);
    }
    let mut w: Vec<SymId> = word.iter().copied().take(depth).collect();
    w.resize(depth, filler_symbol(m));

    let traces = tm_run_bounded(m, &w, depth, budgets.traces)?;
    let chains: Vec<Vec<Vec<ConfigCell>>> = traces
        .iter()
        .filter(|t| t.end == TraceEnd::Completed && t.all_accepting())
        .map(|t| t.steps.iter().map(|c| c.render(&w, depth + 1)).collect())
        .collect();
    let oracle = if chains.is_empty() {
        Category::CertifiedNo
    } else {
        Category::Unknown
    };

    let k = compile_k(m);
    let p = lift_word(k.system.alphabet(), &word_letters(m, &w)?, depth)?;
    let v = bounded_run_search(
        &k.system,
        &p,
        &k.condition(),
        SearchConfig {
            budget: budgets.search,
        },
    )?;
    let compiled = v.category();
    let (rows, rows_match) = match &v.evidence.witness {
        Some(wit) => {
            let decoded = decode_rows(m, &k.system, &wit.run)?;
            let rendered = decoded.iter().map(|r| render_cells(m, r)).collect();
            (rendered, chains.contains(&decoded))
        }
        None => (Vec::new(), true),
    };
    let refuted_both = (oracle == Category::CertifiedNo) == (compiled == Category::CertifiedNo);
    Ok(FidelityReport {
        machine: m.name.clone(),
        word: m.word_string(&w),
        depth,
        oracle,
        oracle_chains: chains.len(),
        compiled,
        compiled_accepting: v.evidence.accepting,
        rows,
        rows_match,
        agreement: refuted_both && rows_match,
    })
}

/// One verification case.
#[derive(Clone, Debug)]
pub struct Case<'a> {
    pub machine: &'a TuringMachine,
    pub word: Vec<SymId>,
    pub depth: usize,
}

/// Verifies independent cases, in input order.
pub fn verify_batch(
    cases: &[Case<'_>],
    budgets: Budgets,
    exec: Exec,
) -> Vec<Result<FidelityReport>> {
    sweep::map(exec, cases, |c| {
        verify_reduction(c.machine, &c.word, c.depth, budgets)
    })
}

/// All words over the machine's input alphabet of length `0..=max_len`,
/// shortest first, then in alphabet order.
pub fn all_words(m: &TuringMachine, max_len: usize) -> Vec<Vec<SymId>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<SymId>| {
                m.input().iter().map(move |&s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
