//! Pictures, tiles and tiling systems.
//!
//! Coordinates are always `(column, row)`: `(i, j)` names the cell in column
//! `i` of row `j`, with row 0 at the bottom. A square anchored at `(i, j)`
//! covers `(i, j)`, `(i+1, j)`, `(i, j+1)` and `(i+1, j+1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// The reserved border letter.
pub const BORDER: &str = "#";

/// Default bound on `|Γ|⁴` for [`forbidden_complement`].
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 24;

/// Index into an alphabet extended with the border; `Letter(0)` is `#`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    pub const BORDER: Letter = Letter(0);

    pub fn is_border(self) -> bool {
        self.0 == 0
    }
}

/// Index into the state set of a tiling system.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(pub u16);

/// A letter paired with a state: one entry of `Γ = Σ̂ × Q`.
pub type Cell = (Letter, State);

/// True for names usable in the text formats.
pub(crate) fn valid_token(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || "(),/#".contains(c))
}

/// A picture alphabet `Σ`. The border `#` is implicit and never a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::Invariant("alphabet must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for l in &letters {
            if !valid_token(l) {
                return Err(Error::Invariant(format!("invalid letter {l:?}")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::Invariant(format!("duplicate letter {l}")));
            }
        }
        if letters.len() >= u16::MAX as usize {
            return Err(Error::Invariant("alphabet too large".into()));
        }
        Ok(Alphabet { letters })
    }

    /// `|Σ|`, not counting the border.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters of `Σ` in declaration order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (1..=self.letters.len() as u16).map(Letter)
    }

    /// Letters of `Σ̂ = Σ ∪ {#}`, border first.
    pub fn hat(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..=self.letters.len() as u16).map(Letter)
    }

    pub fn name(&self, l: Letter) -> &str {
        if l.is_border() {
            BORDER
        } else {
            &self.letters[l.0 as usize - 1]
        }
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        if name == BORDER {
            return Some(Letter::BORDER);
        }
        self.letters
            .iter()
            .position(|l| l == name)
            .map(|k| Letter(k as u16 + 1))
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }
}

/// A 2×2 block, displayed as `tl tr / bl br`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square<T> {
    pub bl: T,
    pub br: T,
    pub tl: T,
    pub tr: T,
}

impl<T> Square<T> {
    pub fn new(bl: T, br: T, tl: T, tr: T) -> Self {
        Square { bl, br, tl, tr }
    }

    /// Entries in the order `b1, b2, b3, b4`.
    pub fn entries(&self) -> [&T; 4] {
        [&self.bl, &self.br, &self.tl, &self.tr]
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Square<U> {
        Square {
            bl: f(&self.bl),
            br: f(&self.br),
            tl: f(&self.tl),
            tr: f(&self.tr),
        }
    }
}

impl<T: Copy> Square<T> {
    pub fn constant(v: T) -> Self {
        Square::new(v, v, v, v)
    }
}

/// Positionwise pairing of two squares.
pub fn combine<A: Clone, B: Clone>(s: &Square<A>, t: &Square<B>) -> Square<(A, B)> {
    Square {
        bl: (s.bl.clone(), t.bl.clone()),
        br: (s.br.clone(), t.br.clone()),
        tl: (s.tl.clone(), t.tl.clone()),
        tr: (s.tr.clone(), t.tr.clone()),
    }
}

/// Inverse of [`combine`].
pub fn unzip<A: Clone, B: Clone>(s: &Square<(A, B)>) -> (Square<A>, Square<B>) {
    (s.map(|(a, _)| a.clone()), s.map(|(_, b)| b.clone()))
}

/// Dense rectangular array indexed by `(column, row)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid<T> {
    cols: usize,
    rows: usize,
    cells: Vec<T>,
}

impl<T: Clone> Grid<T> {
    pub fn filled(cols: usize, rows: usize, value: T) -> Self {
        Grid {
            cols,
            rows,
            cells: vec![value; cols * rows],
        }
    }

    pub fn from_fn(cols: usize, rows: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut cells = Vec::with_capacity(cols * rows);
        for j in 0..rows {
            for i in 0..cols {
                cells.push(f(i, j));
            }
        }
        Grid { cols, rows, cells }
    }

    /// Square anchored at `(i, j)`. Panics if it is not fully contained.
    pub fn square_at(&self, i: usize, j: usize) -> Square<T> {
        Square::new(
            self.get(i, j).clone(),
            self.get(i + 1, j).clone(),
            self.get(i, j + 1).clone(),
            self.get(i + 1, j + 1).clone(),
        )
    }

    /// Restriction to the `cols × rows` corner at the origin.
    pub fn restrict(&self, cols: usize, rows: usize) -> Grid<T> {
        assert!(cols <= self.cols && rows <= self.rows);
        Grid::from_fn(cols, rows, |i, j| self.get(i, j).clone())
    }
}

impl<T> Grid<T> {
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(i < self.cols && j < self.rows, "({i},{j}) outside grid");
        &self.cells[j * self.cols + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.cols && j < self.rows, "({i},{j}) outside grid");
        self.cells[j * self.cols + i] = v;
    }

    pub fn same_shape<U>(&self, other: &Grid<U>) -> bool {
        self.cols == other.cols && self.rows == other.rows
    }

    /// Anchors of all fully contained squares, row-major.
    pub fn square_anchors(&self) -> impl Iterator<Item = (usize, usize)> {
        let (c, r) = (self.cols.saturating_sub(1), self.rows.saturating_sub(1));
        (0..r).flat_map(move |j| (0..c).map(move |i| (i, j)))
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    /// Rows bottom-to-top.
    pub fn row(&self, j: usize) -> &[T] {
        &self.cells[j * self.cols..(j + 1) * self.cols]
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum WindowKind {
    /// A finite picture of size `(m, n)`, border on all four sides.
    Finite { m: usize, n: usize },
    /// The corner `{0..n} × {0..n}` of an ω-picture.
    OmegaPrefix { n: usize },
}

/// A finite picture or a finite corner of an ω-picture, border included.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PictureWindow {
    kind: WindowKind,
    grid: Grid<Letter>,
}

impl PictureWindow {
    /// Builds a finite picture from its `n` interior rows (bottom to top).
    pub fn finite(m: usize, n: usize, rows: &[Vec<Letter>]) -> Result<Self> {
        if (m == 0) != (n == 0) {
            return Err(Error::InvalidPicture(format!(
                "size ({m}, {n}) is not defined; only the empty picture has a zero side"
            )));
        }
        check_rows(rows, m, n)?;
        let grid = Grid::from_fn(m + 2, n + 2, |i, j| {
            if i == 0 || j == 0 || i == m + 1 || j == n + 1 {
                Letter::BORDER
            } else {
                rows[j - 1][i - 1]
            }
        });
        Ok(PictureWindow {
            kind: WindowKind::Finite { m, n },
            grid,
        })
    }

    /// Builds a depth-`n` ω-picture corner from its `n` interior rows.
    pub fn omega_prefix(n: usize, rows: &[Vec<Letter>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPicture("depth must be at least 1".into()));
        }
        check_rows(rows, n, n)?;
        let grid = Grid::from_fn(n + 1, n + 1, |i, j| {
            if i == 0 || j == 0 {
                Letter::BORDER
            } else {
                rows[j - 1][i - 1]
            }
        });
        Ok(PictureWindow {
            kind: WindowKind::OmegaPrefix { n },
            grid,
        })
    }

    /// Wraps a full grid (border included), checking the border convention.
    pub fn from_grid(kind: WindowKind, grid: Grid<Letter>) -> Result<Self> {
        let (cols, rows) = match kind {
            WindowKind::Finite { m, n } => {
                if (m == 0) != (n == 0) {
                    return Err(Error::InvalidPicture(format!(
                        "size ({m}, {n}) is not defined"
                    )));
                }
                (m + 2, n + 2)
            }
            WindowKind::OmegaPrefix { n } => {
                if n == 0 {
                    return Err(Error::InvalidPicture("depth must be at least 1".into()));
                }
                (n + 1, n + 1)
            }
        };
        if grid.cols() != cols || grid.rows() != rows {
            return Err(Error::InvalidPicture(format!(
                "grid is {}x{}, expected {cols}x{rows}",
                grid.cols(),
                grid.rows()
            )));
        }
        for j in 0..rows {
            for i in 0..cols {
                let border = match kind {
                    WindowKind::Finite { .. } => i == 0 || j == 0 || i == cols - 1 || j == rows - 1,
                    WindowKind::OmegaPrefix { .. } => i == 0 || j == 0,
                };
                if border != grid.get(i, j).is_border() {
                    return Err(Error::InvalidPicture(format!(
                        "cell ({i},{j}) violates the border convention"
                    )));
                }
            }
        }
        Ok(PictureWindow { kind, grid })
    }

    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    pub fn grid(&self) -> &Grid<Letter> {
        &self.grid
    }

    pub fn get(&self, i: usize, j: usize) -> Letter {
        *self.grid.get(i, j)
    }

    /// Depth of an ω-prefix window; `None` for finite pictures.
    pub fn depth(&self) -> Option<usize> {
        match self.kind {
            WindowKind::OmegaPrefix { n } => Some(n),
            WindowKind::Finite { .. } => None,
        }
    }

    /// Interior rows bottom-to-top, i.e. the rows that were given to the constructor.
    pub fn interior_rows(&self) -> Vec<Vec<Letter>> {
        let (c, r) = match self.kind {
            WindowKind::Finite { m, n } => (m, n),
            WindowKind::OmegaPrefix { n } => (n, n),
        };
        (1..=r)
            .map(|j| (1..=c).map(|i| self.get(i, j)).collect())
            .collect()
    }

    /// True when `(i, j)` is a border cell.
    pub fn is_border(&self, i: usize, j: usize) -> bool {
        match self.kind {
            WindowKind::Finite { m, n } => i == 0 || j == 0 || i == m + 1 || j == n + 1,
            WindowKind::OmegaPrefix { .. } => i == 0 || j == 0,
        }
    }
}

fn check_rows(rows: &[Vec<Letter>], m: usize, n: usize) -> Result<()> {
    if rows.len() != n {
        return Err(Error::InvalidPicture(format!(
            "expected {n} rows, got {}",
            rows.len()
        )));
    }
    for (j, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(Error::InvalidPicture(format!(
                "row {} has {} letters, expected {m}",
                j + 1,
                row.len()
            )));
        }
        if row.iter().any(|l| l.is_border()) {
            return Err(Error::InvalidPicture(format!(
                "row {} contains the border letter",
                j + 1
            )));
        }
    }
    Ok(())
}

/// A state assignment over a window's full domain.
pub type RunAssignment = Grid<State>;

/// A tiling system `(Q, Σ, Δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingSystem {
    states: Vec<String>,
    alphabet: Alphabet,
    tiles: BTreeSet<Square<Cell>>,
}

impl TilingSystem {
    pub fn new(
        states: Vec<String>,
        alphabet: Alphabet,
        tiles: impl IntoIterator<Item = Square<Cell>>,
    ) -> Result<Self> {
        if states.len() >= u16::MAX as usize {
            return Err(Error::Invariant("too many states".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &states {
            if !valid_token(s) {
                return Err(Error::Invariant(format!("invalid state name {s:?}")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::Invariant(format!("duplicate state {s}")));
            }
        }
        let tiles: BTreeSet<_> = tiles.into_iter().collect();
        for t in &tiles {
            for (l, q) in t.entries() {
                if l.0 as usize > alphabet.len() {
                    return Err(Error::Invariant(format!(
                        "tile letter index {} outside alphabet",
                        l.0
                    )));
                }
                if q.0 as usize >= states.len() {
                    return Err(Error::Invariant(format!(
                        "tile state index {} outside state set",
                        q.0
                    )));
                }
            }
        }
        Ok(TilingSystem {
            states,
            alphabet,
            tiles,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> impl Iterator<Item = State> + Clone {
        (0..self.states.len() as u16).map(State)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: State) -> &str {
        &self.states[q.0 as usize]
    }

    pub fn state(&self, name: &str) -> Option<State> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(|k| State(k as u16))
    }

    pub fn tiles(&self) -> &BTreeSet<Square<Cell>> {
        &self.tiles
    }

    pub fn contains(&self, tile: &Square<Cell>) -> bool {
        self.tiles.contains(tile)
    }

    /// `|Γ|` with `Γ = Σ̂ × Q`.
    pub fn gamma_size(&self) -> usize {
        (self.alphabet.len() + 1) * self.states.len()
    }

    /// All of `Γ` in `(letter, state)` order.
    pub fn gamma(&self) -> Vec<Cell> {
        let states: Vec<State> = self.states().collect();
        self.alphabet
            .hat()
            .flat_map(|l| states.iter().map(move |&q| (l, q)))
            .collect()
    }

    pub fn with_tiles(&self, tiles: impl IntoIterator<Item = Square<Cell>>) -> Result<Self> {
        TilingSystem::new(self.states.clone(), self.alphabet.clone(), tiles)
    }

    pub fn display_tile(&self, t: &Square<Cell>) -> String {
        let c = |(l, q): &Cell| format!("({},{})", self.alphabet.name(*l), self.state_name(*q));
        format!("{} {} / {} {}", c(&t.tl), c(&t.tr), c(&t.bl), c(&t.br))
    }
}

/// Pairs a picture with a state assignment of the same shape.
pub fn zip(p: &PictureWindow, run: &RunAssignment) -> Result<Grid<Cell>> {
    if !p.grid().same_shape(run) {
        return Err(Error::DomainMismatch(format!(
            "picture is {}x{}, run is {}x{}",
            p.grid().cols(),
            p.grid().rows(),
            run.cols(),
            run.rows()
        )));
    }
    Ok(Grid::from_fn(run.cols(), run.rows(), |i, j| {
        (p.get(i, j), *run.get(i, j))
    }))
}

/// True iff every square fully contained in the window lies in `Δ`.
pub fn validate_run(ts: &TilingSystem, p: &PictureWindow, run: &RunAssignment) -> Result<bool> {
    if !p.grid().same_shape(run) {
        return Err(Error::DomainMismatch(format!(
            "picture is {}x{}, run is {}x{}",
            p.grid().cols(),
            p.grid().rows(),
            run.cols(),
            run.rows()
        )));
    }
    Ok(run
        .square_anchors()
        .all(|(i, j)| ts.contains(&combine(&p.grid().square_at(i, j), &run.square_at(i, j)))))
}

/// Forbidden-pattern view: true iff no fully contained square of `c` lies outside `tiles`.
pub fn check_configuration(c: &Grid<Cell>, tiles: &BTreeSet<Square<Cell>>) -> bool {
    c.square_anchors()
        .all(|(i, j)| tiles.contains(&c.square_at(i, j)))
}

/// `Δ⁻ = Γ⁴ ∖ Δ`, materialized when `|Γ|⁴ ≤ bound`.
pub fn forbidden_complement(ts: &TilingSystem, bound: u128) -> Result<BTreeSet<Square<Cell>>> {
    let g = ts.gamma_size() as u128;
    let count = g.pow(4);
    if count > bound {
        return Err(Error::SizeOverflow { count, bound });
    }
    let gamma = ts.gamma();
    let mut out = BTreeSet::new();
    for &bl in &gamma {
        for &br in &gamma {
            for &tl in &gamma {
                for &tr in &gamma {
                    let sq = Square::new(bl, br, tl, tr);
                    if !ts.contains(&sq) {
                        out.insert(sq);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Determinism of a tiling system: at most one origin tile per corner
/// letter pattern, the top-right state a function of the other three cells,
/// and border states propagated functionally along row 0 and column 0.
pub fn is_deterministic(ts: &TilingSystem) -> bool {
    determinism_conflict(ts).is_none()
}

/// Two tiles that together break [`is_deterministic`], if any.
pub fn determinism_conflict(ts: &TilingSystem) -> Option<(Square<Cell>, Square<Cell>)> {
    type Key = (Square<Letter>, State, State, State);
    let mut origin: BTreeMap<Square<Letter>, &Square<Cell>> = BTreeMap::new();
    let mut inner: BTreeMap<Key, &Square<Cell>> = BTreeMap::new();
    let mut left: BTreeMap<(Square<Letter>, State), &Square<Cell>> = BTreeMap::new();
    let mut bottom: BTreeMap<(Square<Letter>, State), &Square<Cell>> = BTreeMap::new();

    for t in ts.tiles() {
        let letters = t.map(|c| c.0);
        if letters.bl.is_border() && letters.br.is_border() && letters.tl.is_border() {
            if let Some(prev) = origin.insert(letters, t) {
                return Some((*prev, *t));
            }
        }
        let prev = *inner.entry((letters, t.bl.1, t.br.1, t.tl.1)).or_insert(t);
        if prev.tr.1 != t.tr.1 {
            return Some((*prev, *t));
        }
        if letters.bl.is_border() && letters.tl.is_border() {
            let prev = *left.entry((letters, t.bl.1)).or_insert(t);
            if prev.tl.1 != t.tl.1 {
                return Some((*prev, *t));
            }
        }
        if letters.bl.is_border() && letters.br.is_border() {
            let prev = *bottom.entry((letters, t.bl.1)).or_insert(t);
            if prev.br.1 != t.br.1 {
                return Some((*prev, *t));
            }
        }
    }
    None
}

impl fmt::Display for Square<Letter> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} {} / {} {})",
            self.tl.0, self.tr.0, self.bl.0, self.br.0
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn full_system(alphabet: Alphabet, states: &[&str]) -> TilingSystem {
        let ts = TilingSystem::new(states.iter().map(|s| s.to_string()).collect(), alphabet, [])
            .unwrap();
        let gamma = ts.gamma();
        let mut tiles = Vec::new();
        for &a in &gamma {
            for &b in &gamma {
                for &c in &gamma {
                    for &d in &gamma {
                        tiles.push(Square::new(a, b, c, d));
                    }
                }
            }
        }
        ts.with_tiles(tiles).unwrap()
    }

    #[test]
    fn combine_constant_squares() {
        let a = Letter(1);
        let q = State(0);
        assert_eq!(
            combine(&Square::constant(a), &Square::constant(q)),
            Square::constant((a, q))
        );
    }

    #[test]
    fn combine_is_positionwise() {
        let s = Square::new(1, 2, 3, 4);
        let t = Square::new('w', 'x', 'y', 'z');
        let c = combine(&s, &t);
        assert_eq!(c.bl, (1, 'w'));
        assert_eq!(c.br, (2, 'x'));
        assert_eq!(c.tl, (3, 'y'));
        assert_eq!(c.tr, (4, 'z'));
        assert_eq!(unzip(&c), (s, t));
    }

    #[test]
    fn zero_sided_pictures_rejected() {
        assert!(PictureWindow::finite(0, 0, &[]).is_ok());
        assert!(PictureWindow::finite(2, 0, &[]).is_err());
        assert!(PictureWindow::finite(0, 1, &[vec![]]).is_err());
        assert!(PictureWindow::omega_prefix(0, &[]).is_err());
    }

    #[test]
    fn border_letter_rejected_inside() {
        let rows = vec![vec![Letter::BORDER]];
        assert!(PictureWindow::omega_prefix(1, &rows).is_err());
    }

    #[test]
    fn coordinates_are_column_then_row() {
        let a = Letter(1);
        let b = Letter(2);
        // row 1 = a b, row 2 = b b
        let p = PictureWindow::omega_prefix(2, &[vec![a, b], vec![b, b]]).unwrap();
        assert_eq!(p.get(2, 1), b);
        assert_eq!(p.get(1, 1), a);
        assert_eq!(p.get(0, 2), Letter::BORDER);
        assert_eq!(p.get(2, 0), Letter::BORDER);
    }

    #[test]
    fn full_and_empty_tile_sets() {
        let full = full_system(Alphabet::new(["a"]).unwrap(), &["q"]);
        let p = PictureWindow::omega_prefix(2, &[vec![Letter(1); 2], vec![Letter(1); 2]]).unwrap();
        let run = Grid::filled(3, 3, State(0));
        assert!(validate_run(&full, &p, &run).unwrap());
        let empty = full.with_tiles([]).unwrap();
        assert!(!validate_run(&empty, &p, &run).unwrap());
    }

    #[test]
    fn one_by_one_picture_needs_its_four_squares() {
        let a = Letter(1);
        let q = State(0);
        let h = Letter::BORDER;
        let p = PictureWindow::finite(1, 1, &[vec![a]]).unwrap();
        let run = Grid::filled(3, 3, q);
        // squares anchored at (0,0), (1,0), (0,1), (1,1)
        let required = [
            Square::new((h, q), (h, q), (h, q), (a, q)),
            Square::new((h, q), (h, q), (a, q), (h, q)),
            Square::new((h, q), (a, q), (h, q), (h, q)),
            Square::new((a, q), (h, q), (h, q), (h, q)),
        ];
        let ts =
            TilingSystem::new(vec!["q".into()], Alphabet::new(["a"]).unwrap(), required).unwrap();
        assert!(validate_run(&ts, &p, &run).unwrap());
        for skip in 0..4 {
            let fewer = required
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, t)| *t);
            let ts2 = ts.with_tiles(fewer).unwrap();
            assert!(!validate_run(&ts2, &p, &run).unwrap());
        }
    }

    #[test]
    fn domain_mismatch_reported() {
        let ts = full_system(ab(), &["q"]);
        let p = PictureWindow::omega_prefix(1, &[vec![Letter(1)]]).unwrap();
        let run = Grid::filled(3, 3, State(0));
        assert!(matches!(
            validate_run(&ts, &p, &run),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn forbidden_complement_counts() {
        let ts = full_system(Alphabet::new(["a"]).unwrap(), &["q"]);
        assert!(forbidden_complement(&ts, DEFAULT_ENUMERATION_BOUND)
            .unwrap()
            .is_empty());
        let empty = ts.with_tiles([]).unwrap();
        assert_eq!(
            forbidden_complement(&empty, DEFAULT_ENUMERATION_BOUND)
                .unwrap()
                .len(),
            16
        );
        assert!(matches!(
            forbidden_complement(&empty, 15),
            Err(Error::SizeOverflow {
                count: 16,
                bound: 15
            })
        ));
    }

    #[test]
    fn forbidden_complement_of_hundred_tiles() {
        let full = full_system(ab(), &["p", "q"]);
        let hundred: Vec<_> = full.tiles().iter().step_by(7).take(100).copied().collect();
        let ts = full.with_tiles(hundred.clone()).unwrap();
        let minus = forbidden_complement(&ts, DEFAULT_ENUMERATION_BOUND).unwrap();
        // counted by enumeration: 6^4 squares over Γ, 100 of them allowed
        let total = full.tiles().len();
        assert_eq!(total, 1296);
        assert_eq!(minus.len(), 1196);
        assert!(hundred.iter().all(|t| !minus.contains(t)));
    }

    #[test]
    fn determinism_basics() {
        let ab = ab();
        let ts = TilingSystem::new(vec!["p".into(), "q".into()], ab, []).unwrap();
        assert!(is_deterministic(&ts));
        let a = Letter(1);
        let t1 = Square::new((a, State(0)), (a, State(0)), (a, State(0)), (a, State(0)));
        let t2 = Square {
            tr: (a, State(1)),
            ..t1
        };
        assert!(is_deterministic(&ts.with_tiles([t1]).unwrap()));
        assert!(!is_deterministic(&ts.with_tiles([t1, t2]).unwrap()));
    }

    #[test]
    fn tile_with_undeclared_state_rejected() {
        let t = Square::constant((Letter(1), State(3)));
        assert!(TilingSystem::new(vec!["q".into()], ab(), [t]).is_err());
    }
}
