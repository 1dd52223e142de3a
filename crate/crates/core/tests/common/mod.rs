//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use omegatile::acceptance::{AcceptanceCondition, ConditionKind, Mode};
use omegatile::grid::{Alphabet, Cell, Grid, Letter, PictureWindow, Square, State, TilingSystem};
use omegatile::verdict::Category;
use rand::Rng;

pub fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

/// A random tiling system over `{a, b}`: each square of `Σ̂ × Q` is kept
/// with probability `density`.
pub fn random_system(rng: &mut impl Rng, states: usize, density: f64) -> TilingSystem {
    let names = (0..states).map(|k| format!("q{k}")).collect();
    let ts = TilingSystem::new(names, ab(), []).unwrap();
    let gamma = ts.gamma();
    let mut tiles = Vec::new();
    for &a in &gamma {
        for &b in &gamma {
            for &c in &gamma {
                for &d in &gamma {
                    if rng.gen_bool(density) {
                        tiles.push(Square::new(a, b, c, d));
                    }
                }
            }
        }
    }
    ts.with_tiles(tiles).unwrap()
}

pub fn random_window(rng: &mut impl Rng, n: usize) -> PictureWindow {
    let rows: Vec<Vec<Letter>> = (0..n)
        .map(|_| (0..n).map(|_| Letter(rng.gen_range(1..=2))).collect())
        .collect();
    PictureWindow::omega_prefix(n, &rows).unwrap()
}

pub fn random_subset(rng: &mut impl Rng, states: usize) -> BTreeSet<State> {
    (0..states as u16)
        .filter(|_| rng.gen_bool(0.5))
        .map(State)
        .collect()
}

fn all_squares_present(tiles: &HashSet<Square<Cell>>, cells: &Grid<Cell>) -> bool {
    for j in 0..cells.rows() - 1 {
        for i in 0..cells.cols() - 1 {
            let s = Square::new(
                *cells.get(i, j),
                *cells.get(i + 1, j),
                *cells.get(i, j + 1),
                *cells.get(i + 1, j + 1),
            );
            if !tiles.contains(&s) {
                return false;
            }
        }
    }
    true
}

/// Every valid run of `ts` on `p`, by plain enumeration of `|Q|^cells`
/// assignments.
pub fn brute_force_runs(ts: &TilingSystem, p: &PictureWindow) -> Vec<Grid<State>> {
    let tiles: HashSet<Square<Cell>> = ts.tiles().iter().copied().collect();
    let (cols, rows) = (p.grid().cols(), p.grid().rows());
    let q = ts.num_states();
    let cells = cols * rows;
    let total = (q as u64).pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let run = Grid::from_fn(cols, rows, |_, _| {
            let s = State((c % q as u64) as u16);
            c /= q as u64;
            s
        });
        let zipped = Grid::from_fn(cols, rows, |i, j| (p.get(i, j), *run.get(i, j)));
        if all_squares_present(&tiles, &zipped) {
            out.push(run);
        }
    }
    out
}

fn in_scope(mode: Mode, i: usize, j: usize) -> bool {
    i >= 1 && j >= 1 && (mode == Mode::Global || i == j)
}

/// `(category, best accepting count)` the search is expected to report,
/// computed from the complete list of valid runs.
pub fn expected_verdict(
    runs: &[Grid<State>],
    cond: &AcceptanceCondition,
    depth: usize,
) -> (Category, usize) {
    if runs.is_empty() {
        return (Category::CertifiedNo, 0);
    }
    let scope: Vec<(usize, usize)> = (0..=depth)
        .flat_map(|j| (0..=depth).map(move |i| (i, j)))
        .filter(|&(i, j)| in_scope(cond.mode, i, j))
        .collect();
    let f = match &cond.kind {
        ConditionKind::A(f) | ConditionKind::E(f) | ConditionKind::Buchi(f) => f.clone(),
        ConditionKind::Muller(_) => BTreeSet::new(),
    };
    let counts: Vec<usize> = runs
        .iter()
        .map(|r| {
            scope
                .iter()
                .filter(|&&(i, j)| f.contains(r.get(i, j)))
                .count()
        })
        .collect();
    let best = *counts.iter().max().unwrap();
    let cat = match &cond.kind {
        ConditionKind::A(_) => {
            if best == scope.len() {
                Category::Unknown
            } else {
                Category::CertifiedNo
            }
        }
        ConditionKind::E(_) | ConditionKind::Buchi(_) => {
            if best > 0 {
                Category::WitnessYes
            } else {
                Category::Unknown
            }
        }
        ConditionKind::Muller(table) => {
            let exact = runs.iter().any(|r| {
                let outer: BTreeSet<State> = scope
                    .iter()
                    .filter(|&&(i, j)| i.max(j) > depth / 2)
                    .map(|&(i, j)| *r.get(i, j))
                    .collect();
                table.contains(&outer)
            });
            if exact {
                Category::WitnessYes
            } else {
                Category::Unknown
            }
        }
    };
    (cat, best)
}

/// Existence of a valid run by row-major backtracking, checking each square
/// (or its bottom edge, or its left edge) as soon as those cells are set.
pub fn exists_run(ts: &TilingSystem, p: &PictureWindow) -> bool {
    let tiles: HashSet<Square<Cell>> = ts.tiles().iter().copied().collect();
    let bottoms: HashSet<(Cell, Cell)> = tiles.iter().map(|t| (t.bl, t.br)).collect();
    let lefts: HashSet<(Cell, Cell)> = tiles.iter().map(|t| (t.bl, t.tl)).collect();
    let (cols, rows) = (p.grid().cols(), p.grid().rows());
    let states: Vec<State> = ts.states().collect();
    let mut grid: Vec<Cell> = vec![(Letter::BORDER, State(0)); cols * rows];

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        cols: usize,
        rows: usize,
        p: &PictureWindow,
        states: &[State],
        grid: &mut Vec<Cell>,
        tiles: &HashSet<Square<Cell>>,
        bottoms: &HashSet<(Cell, Cell)>,
        lefts: &HashSet<(Cell, Cell)>,
    ) -> bool {
        if k == cols * rows {
            return true;
        }
        let (i, j) = (k % cols, k / cols);
        for &q in states {
            let c = (p.get(i, j), q);
            let ok = match (i, j) {
                (0, 0) => true,
                (_, 0) => bottoms.contains(&(grid[k - 1], c)),
                (0, _) => lefts.contains(&(grid[k - cols], c)),
                _ => tiles.contains(&Square::new(
                    grid[k - cols - 1],
                    grid[k - cols],
                    grid[k - 1],
                    c,
                )),
            };
            if ok {
                grid[k] = c;
                if go(k + 1, cols, rows, p, states, grid, tiles, bottoms, lefts) {
                    return true;
                }
            }
        }
        false
    }
    go(
        0, cols, rows, p, &states, &mut grid, &tiles, &bottoms, &lefts,
    )
}
