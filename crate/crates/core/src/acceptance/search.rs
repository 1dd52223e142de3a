use std::collections::{HashMap, HashSet};

use super::evaluate::{
    collect_evidence, evaluate_acceptance, window_depth, AcceptanceCondition, ConditionKind,
    RunEvidence, Witness,
};
use crate::error::{Error, Result};
use crate::grid::{Cell, Grid, Letter, PictureWindow, State, TilingSystem, WindowKind};
use crate::verdict::{BoundedVerdict, Outcome};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of cell assignments tried per call.
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Lookup tables over `Δ` for partial-square pruning. Every candidate list
/// is sorted so that the first complete assignment found is the
/// lexicographically smallest in search order.
struct TileIndex {
    by_three: HashMap<(Cell, Cell, Cell), Vec<Cell>>,
    bl_br: HashMap<Cell, Vec<Cell>>,
    bl_tl: HashMap<Cell, Vec<Cell>>,
    bl_tl_pairs: HashSet<(Cell, Cell)>,
    bl_any: Vec<Cell>,
}

impl TileIndex {
    fn new(ts: &TilingSystem) -> Self {
        let mut by_three: HashMap<_, Vec<Cell>> = HashMap::new();
        let mut bl_br: HashMap<_, Vec<Cell>> = HashMap::new();
        let mut bl_tl: HashMap<_, Vec<Cell>> = HashMap::new();
        let mut bl_any = Vec::new();
        for t in ts.tiles() {
            by_three.entry((t.bl, t.br, t.tl)).or_default().push(t.tr);
            bl_br.entry(t.bl).or_default().push(t.br);
            bl_tl.entry(t.bl).or_default().push(t.tl);
            bl_any.push(t.bl);
        }
        for v in by_three
            .values_mut()
            .chain(bl_br.values_mut())
            .chain(bl_tl.values_mut())
        {
            v.sort_unstable();
            v.dedup();
        }
        bl_any.sort_unstable();
        bl_any.dedup();
        let bl_tl_pairs = bl_tl
            .iter()
            .flat_map(|(&bl, tls)| tls.iter().map(move |&tl| (bl, tl)))
            .collect();
        TileIndex {
            by_three,
            bl_br,
            bl_tl,
            bl_tl_pairs,
            bl_any,
        }
    }
}

/// Letters allowed at a cell: fixed by a picture, or free subject to the border convention.
enum LetterRule<'a> {
    Fixed(&'a PictureWindow),
    Free(WindowKind),
}

impl LetterRule<'_> {
    fn allows(&self, i: usize, j: usize, l: Letter) -> bool {
        match self {
            LetterRule::Fixed(p) => p.get(i, j) == l,
            LetterRule::Free(kind) => {
                let border = match *kind {
                    WindowKind::OmegaPrefix { .. } => i == 0 || j == 0,
                    WindowKind::Finite { m, n } => i == 0 || j == 0 || i == m + 1 || j == n + 1,
                };
                border == l.is_border()
            }
        }
    }
}

/// Cells in anti-diagonal order: by `i + j`, then by column.
fn anti_diagonal_order(cols: usize, rows: usize) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(cols * rows);
    for s in 0..(cols + rows - 1) {
        for i in s.saturating_sub(rows - 1)..=s.min(cols - 1) {
            order.push((i, s - i));
        }
    }
    order
}

/// Scoring applied at the leaves of a search.
enum Goal<'a> {
    /// Stop at the first complete assignment.
    First,
    /// Maximize evidence for a condition; ties keep the first found.
    Best {
        cond: &'a AcceptanceCondition,
        picture: &'a PictureWindow,
    },
}

struct Searcher<'a> {
    index: TileIndex,
    letters: LetterRule<'a>,
    order: Vec<(usize, usize)>,
    /// `scope_left[k]`: in-scope cells at positions `k..` of `order`.
    scope_left: Vec<usize>,
    cols: usize,
    rows: usize,
    nodes: u64,
    budget: u64,
    goal: Goal<'a>,
    config: Grid<Option<Cell>>,
    best: Option<(u64, Grid<Cell>)>,
    max_score: Option<u64>,
}

impl<'a> Searcher<'a> {
    fn new(
        ts: &TilingSystem,
        cols: usize,
        rows: usize,
        letters: LetterRule<'a>,
        goal: Goal<'a>,
        budget: u64,
    ) -> Self {
        let order = anti_diagonal_order(cols, rows);
        let mut scope_left = vec![0; order.len() + 1];
        let mut max_score = None;
        if let Goal::Best { cond, picture } = &goal {
            for k in (0..order.len()).rev() {
                let (i, j) = order[k];
                scope_left[k] = scope_left[k + 1] + usize::from(cond.in_scope(picture, i, j));
            }
            if !cond.is_muller() {
                max_score = Some(scope_left[0] as u64);
            }
        }
        Searcher {
            index: TileIndex::new(ts),
            letters,
            order,
            scope_left,
            cols,
            rows,
            nodes: 0,
            budget,
            goal,
            config: Grid::filled(cols, rows, None),
            best: None,
            max_score,
        }
    }

    fn at(&self, i: usize, j: usize) -> Cell {
        self.config
            .get(i, j)
            .expect("cell assigned earlier in anti-diagonal order")
    }

    fn candidates(&self, i: usize, j: usize) -> Vec<Cell> {
        let idx = &self.index;
        let base: Vec<Cell> = match (i, j) {
            (0, 0) => idx.bl_any.clone(),
            (_, 0) => idx
                .bl_br
                .get(&self.at(i - 1, 0))
                .cloned()
                .unwrap_or_default(),
            (0, _) => idx
                .bl_tl
                .get(&self.at(0, j - 1))
                .cloned()
                .unwrap_or_default(),
            _ => idx
                .by_three
                .get(&(self.at(i - 1, j - 1), self.at(i, j - 1), self.at(i - 1, j)))
                .cloned()
                .unwrap_or_default(),
        };
        base.into_iter()
            .filter(|&c| self.letters.allows(i, j, c.0) && self.consistent(i, j, c))
            .collect()
    }

    /// Partial checks on squares touching `(i, j)` whose other cells are known.
    fn consistent(&self, i: usize, j: usize, c: Cell) -> bool {
        let idx = &self.index;
        // square at (i-1, j): bl, br = c, tl are known
        if i >= 1
            && j + 1 < self.rows
            && !idx
                .by_three
                .contains_key(&(self.at(i - 1, j), c, self.at(i - 1, j + 1)))
        {
            return false;
        }
        // square at (i, j-1): bl and tl = c are known
        if j >= 1 && i + 1 < self.cols && !idx.bl_tl_pairs.contains(&(self.at(i, j - 1), c)) {
            return false;
        }
        // square at (i, j): only bl = c is known
        if i + 1 < self.cols && j + 1 < self.rows && idx.bl_any.binary_search(&c).is_err() {
            return false;
        }
        true
    }

    fn assigned(&self) -> Grid<Cell> {
        Grid::from_fn(self.cols, self.rows, |i, j| self.at(i, j))
    }

    /// Returns true when the search can stop.
    fn descend(&mut self, k: usize, score: u64) -> Result<bool> {
        if k == self.order.len() {
            return Ok(self.leaf());
        }
        if let (Some((best, _)), Goal::Best { cond, .. }) = (&self.best, &self.goal) {
            if !cond.is_muller() && score + self.scope_left[k] as u64 <= *best {
                return Ok(false);
            }
        }
        let (i, j) = self.order[k];
        for c in self.candidates(i, j) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget { nodes: self.budget });
            }
            let gain = match &self.goal {
                Goal::Best { cond, picture } => {
                    u64::from(cond.in_scope(picture, i, j) && cond.accepting(c.1))
                }
                Goal::First => 0,
            };
            self.config.set(i, j, Some(c));
            if self.descend(k + 1, score + gain)? {
                return Ok(true);
            }
        }
        self.config.set(i, j, None);
        Ok(false)
    }

    fn leaf(&mut self) -> bool {
        let grid = self.assigned();
        match &self.goal {
            Goal::First => {
                self.best = Some((0, grid));
                true
            }
            Goal::Best { cond, picture } => {
                let run = Grid::from_fn(self.cols, self.rows, |i, j| grid.get(i, j).1);
                let score = collect_evidence(&run, cond, picture).score(cond);
                if self.best.as_ref().is_none_or(|(b, _)| score > *b) {
                    self.best = Some((score, grid));
                }
                Some(score) == self.max_score
            }
        }
    }
}

fn split(grid: &Grid<Cell>) -> (Grid<Letter>, Grid<State>) {
    (
        Grid::from_fn(grid.cols(), grid.rows(), |i, j| grid.get(i, j).0),
        Grid::from_fn(grid.cols(), grid.rows(), |i, j| grid.get(i, j).1),
    )
}

/// Searches the runs of `ts` on `p` for the one with the strongest
/// acceptance evidence.
///
/// `CertifiedNo` means no valid run exists on the window (or, for the
/// A-condition, every valid run already violates it); by restriction this
/// refutes every extension. Büchi and Muller are never certified no; a run
/// with accepting occurrences (or an exactly matched Muller set) in the
/// window is reported as `WitnessYesAtDepth`, which is bounded evidence only.
pub fn bounded_run_search(
    ts: &TilingSystem,
    p: &PictureWindow,
    cond: &AcceptanceCondition,
    config: SearchConfig,
) -> Result<BoundedVerdict<RunEvidence>> {
    cond.check_states(ts)?;
    if p.grid().cols() > 0 && p.get(0, 0) != Letter::BORDER {
        return Err(Error::InvalidPicture(
            "origin must be the border letter".into(),
        ));
    }
    let finite = matches!(p.kind(), WindowKind::Finite { .. });
    let goal = if finite {
        Goal::First
    } else {
        Goal::Best { cond, picture: p }
    };
    let mut s = Searcher::new(
        ts,
        p.grid().cols(),
        p.grid().rows(),
        LetterRule::Fixed(p),
        goal,
        config.budget,
    );
    s.descend(0, 0)?;
    let depth = window_depth(p);
    let nodes = s.nodes;
    let Some((_, grid)) = s.best else {
        return Ok(BoundedVerdict {
            outcome: Outcome::CertifiedNo,
            evidence: RunEvidence::default(),
            notes: vec![format!("no valid run on window ({nodes} nodes)")],
        });
    };
    let (_, run) = split(&grid);
    let mut verdict = evaluate_acceptance(&run, cond, p)?;
    if finite {
        verdict.outcome = Outcome::WitnessYesAtDepth { depth };
        verdict.notes = vec!["finite picture recognized: a run exists".into()];
    } else if verdict.outcome == Outcome::CertifiedNo {
        debug_assert!(matches!(cond.kind, ConditionKind::A(_)));
        verdict.notes = vec!["every valid run violates A on window".into()];
    } else {
        // bounded evidence only: the run exists and already shows accepting behaviour
        let shown = match cond.kind {
            ConditionKind::Buchi(_) => verdict.evidence.accepting > 0,
            ConditionKind::Muller(_) => !verdict.evidence.muller_exact.is_empty(),
            _ => false,
        };
        if shown {
            verdict.outcome = Outcome::WitnessYesAtDepth { depth };
        }
    }
    verdict.notes.push(format!("{nodes} nodes"));
    verdict.evidence.witness = Some(Witness {
        picture: p.clone(),
        run,
    });
    Ok(verdict)
}

/// Searches letters and states together for any locally consistent depth-`n`
/// corner. `CertifiedNo` means no ω-picture admits any run at all.
pub fn emptiness_at_depth(
    ts: &TilingSystem,
    n: usize,
    config: SearchConfig,
) -> Result<BoundedVerdict<Option<Witness>>> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    let kind = WindowKind::OmegaPrefix { n };
    let mut s = Searcher::new(
        ts,
        n + 1,
        n + 1,
        LetterRule::Free(kind),
        Goal::First,
        config.budget,
    );
    s.descend(0, 0)?;
    let nodes = s.nodes;
    match s.best {
        None => Ok(BoundedVerdict {
            outcome: Outcome::CertifiedNo,
            evidence: None,
            notes: vec![format!("no consistent depth-{n} corner ({nodes} nodes)")],
        }),
        Some((_, grid)) => {
            let (letters, run) = split(&grid);
            let picture = PictureWindow::from_grid(kind, letters)?;
            Ok(BoundedVerdict {
                outcome: Outcome::WitnessYesAtDepth { depth: n },
                evidence: Some(Witness { picture, run }),
                notes: vec![format!("consistent corner found ({nodes} nodes)")],
            })
        }
    }
}
