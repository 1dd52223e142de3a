use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::grid::{PictureWindow, RunAssignment, State, TilingSystem, WindowKind};
use crate::verdict::{BoundedVerdict, Outcome};

/// Where acceptance is read off: every cell, or only the diagonal `(i, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Global,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionKind {
    /// Every cell in scope carries a state of `F`.
    A(BTreeSet<State>),
    /// Some cell in scope carries a state of `F`.
    E(BTreeSet<State>),
    /// Infinitely many cells in scope carry a state of `F`.
    Buchi(BTreeSet<State>),
    /// The set of states seen infinitely often is a member of the table.
    Muller(Vec<BTreeSet<State>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptanceCondition {
    pub kind: ConditionKind,
    pub mode: Mode,
}

impl AcceptanceCondition {
    pub fn new(kind: ConditionKind, mode: Mode) -> Self {
        AcceptanceCondition { kind, mode }
    }

    pub fn buchi(f: impl IntoIterator<Item = State>) -> Self {
        Self::new(ConditionKind::Buchi(f.into_iter().collect()), Mode::Global)
    }

    pub fn a(f: impl IntoIterator<Item = State>) -> Self {
        Self::new(ConditionKind::A(f.into_iter().collect()), Mode::Global)
    }

    pub fn e(f: impl IntoIterator<Item = State>) -> Self {
        Self::new(ConditionKind::E(f.into_iter().collect()), Mode::Global)
    }

    pub fn diagonal(mut self) -> Self {
        self.mode = Mode::Diagonal;
        self
    }

    /// Checks `F ⊆ Q` (or each table member `⊆ Q`) against a system.
    pub fn check_states(&self, ts: &TilingSystem) -> Result<()> {
        let n = ts.num_states();
        let bad = |s: &BTreeSet<State>| s.iter().any(|q| q.0 as usize >= n);
        let invalid = match &self.kind {
            ConditionKind::A(f) | ConditionKind::E(f) | ConditionKind::Buchi(f) => bad(f),
            ConditionKind::Muller(table) => table.iter().any(bad),
        };
        if invalid {
            return Err(Error::Invariant(
                "acceptance condition names a state outside Q".into(),
            ));
        }
        Ok(())
    }

    /// Interior cells count; on the diagonal only `(i, i)` with `i ≥ 1`.
    pub(crate) fn in_scope(&self, p: &PictureWindow, i: usize, j: usize) -> bool {
        !p.is_border(i, j) && (self.mode == Mode::Global || i == j)
    }

    /// Membership in `F` for the set-based conditions.
    pub(crate) fn accepting(&self, q: State) -> bool {
        match &self.kind {
            ConditionKind::A(f) | ConditionKind::E(f) | ConditionKind::Buchi(f) => f.contains(&q),
            ConditionKind::Muller(_) => false,
        }
    }

    pub(crate) fn is_muller(&self) -> bool {
        matches!(self.kind, ConditionKind::Muller(_))
    }
}

/// Finite approximation of `Inf(ρ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InfApproximation {
    /// Occurrences of each state over the interior of the window.
    pub seen: BTreeMap<State, usize>,
    /// Occurrences on the interior diagonal.
    pub diagonal_seen: BTreeMap<State, usize>,
    /// States in scope occurring in the outer half of the window.
    pub outer: BTreeSet<State>,
}

/// A picture window together with a valid run on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub picture: PictureWindow,
    pub run: RunAssignment,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunEvidence {
    pub approx: InfApproximation,
    /// Cells in scope whose state lies in `F`.
    pub accepting: usize,
    /// Number of cells in scope.
    pub scope_cells: usize,
    /// Indices of Muller table members contained in the outer-half states.
    pub muller_subsets: Vec<usize>,
    /// Indices of Muller table members equal to the outer-half states.
    pub muller_exact: Vec<usize>,
    pub witness: Option<Witness>,
}

impl RunEvidence {
    /// Ordering key used when searching for the most convincing run.
    pub fn score(&self, cond: &AcceptanceCondition) -> u64 {
        if cond.is_muller() {
            let width = match &cond.kind {
                ConditionKind::Muller(t) => t.len() as u64 + 1,
                _ => unreachable!(),
            };
            self.muller_exact.len() as u64 * width + self.muller_subsets.len() as u64
        } else {
            self.accepting as u64
        }
    }
}

fn outer_threshold(p: &PictureWindow) -> usize {
    match p.kind() {
        WindowKind::OmegaPrefix { n } => n / 2,
        WindowKind::Finite { m, n } => m.max(n) / 2,
    }
}

pub(crate) fn collect_evidence(
    run: &RunAssignment,
    cond: &AcceptanceCondition,
    p: &PictureWindow,
) -> RunEvidence {
    let mut ev = RunEvidence::default();
    let half = outer_threshold(p);
    for j in 0..run.rows() {
        for i in 0..run.cols() {
            if p.is_border(i, j) {
                continue;
            }
            let q = *run.get(i, j);
            *ev.approx.seen.entry(q).or_default() += 1;
            if i == j {
                *ev.approx.diagonal_seen.entry(q).or_default() += 1;
            }
            if cond.in_scope(p, i, j) {
                ev.scope_cells += 1;
                if cond.accepting(q) {
                    ev.accepting += 1;
                }
                if i.max(j) > half {
                    ev.approx.outer.insert(q);
                }
            }
        }
    }
    if let ConditionKind::Muller(table) = &cond.kind {
        for (k, member) in table.iter().enumerate() {
            if member.is_subset(&ev.approx.outer) {
                ev.muller_subsets.push(k);
            }
            if *member == ev.approx.outer {
                ev.muller_exact.push(k);
            }
        }
    }
    ev
}

pub(crate) fn window_depth(p: &PictureWindow) -> usize {
    match p.kind() {
        WindowKind::OmegaPrefix { n } => n,
        WindowKind::Finite { n, .. } => n,
    }
}

/// Reads an acceptance condition off a run restricted to a window.
pub fn evaluate_acceptance(
    run: &RunAssignment,
    cond: &AcceptanceCondition,
    window: &PictureWindow,
) -> Result<BoundedVerdict<RunEvidence>> {
    if !window.grid().same_shape(run) {
        return Err(Error::DomainMismatch(format!(
            "window is {}x{}, run is {}x{}",
            window.grid().cols(),
            window.grid().rows(),
            run.cols(),
            run.rows()
        )));
    }
    let ev = collect_evidence(run, cond, window);
    let depth = window_depth(window);
    let unknown = Outcome::Unknown { depth };
    let (outcome, note) = match &cond.kind {
        ConditionKind::A(_) => {
            if ev.accepting < ev.scope_cells {
                (
                    Outcome::CertifiedNo,
                    "A violated by a cell in scope".to_string(),
                )
            } else {
                (unknown, "A holds on window".to_string())
            }
        }
        ConditionKind::E(_) => {
            if ev.accepting > 0 {
                (
                    Outcome::WitnessYesAtDepth { depth },
                    format!("E witnessed by {} accepting cells", ev.accepting),
                )
            } else {
                (unknown, "no accepting cell in scope yet".to_string())
            }
        }
        ConditionKind::Buchi(_) => (
            unknown,
            format!("{} accepting occurrences in scope", ev.accepting),
        ),
        ConditionKind::Muller(_) => (
            unknown,
            format!(
                "outer-half states {:?}; table members contained: {:?}; equal: {:?}",
                ev.approx.outer.iter().map(|q| q.0).collect::<Vec<_>>(),
                ev.muller_subsets,
                ev.muller_exact
            ),
        ),
    };
    Ok(BoundedVerdict {
        outcome,
        evidence: ev,
        notes: vec![note],
    })
}
