//! Compiling a Turing machine into a tiling system whose runs on `σ^a`
//! spell out the machine's configurations row by row.
//!
//! Row `j` of a run holds `α_j = u.q.v`: every cell carries a tape symbol
//! marked as left or right of the head, except one cell carrying the state.
//! Row 0 is `q₀.σ`, copied from the letters of row 1. A tile relates two
//! horizontally adjacent cells of one configuration to the same two cells
//! of its successor. Only transitions into `F` are compiled, so runs exist
//! exactly along chains that stay in `F`.

use std::collections::{BTreeSet, HashMap};

use super::{filler, CompiledSystem};
use crate::error::{Error, Result};
use crate::grid::{Alphabet, Cell, Letter, RunAssignment, Square, State, TilingSystem};
use crate::turing::{Action, ConfigCell, Move, StateId, SymId, TuringMachine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Side {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum KState {
    /// A tape symbol; right-hand symbols may carry the left move that put
    /// them there, so the two tiles sharing that cell agree on it.
    Sym {
        sym: SymId,
        side: Side,
        ann: Option<usize>,
    },
    Head(StateId),
}

use KState::{Head, Sym};

fn l(sym: SymId) -> KState {
    Sym {
        sym,
        side: Side::L,
        ann: None,
    }
}

fn r(sym: SymId) -> KState {
    Sym {
        sym,
        side: Side::R,
        ann: None,
    }
}

fn r_at(sym: SymId, t: usize) -> KState {
    Sym {
        sym,
        side: Side::R,
        ann: Some(t),
    }
}

/// `Σ` of a machine as a picture alphabet.
pub fn machine_alphabet(m: &TuringMachine) -> Alphabet {
    Alphabet::new(m.input_names()).expect("machine input names are valid letters")
}

/// Maps a word over the machine's input to picture letters.
pub fn word_letters(m: &TuringMachine, w: &[SymId]) -> Result<Vec<Letter>> {
    w.iter()
        .map(|s| {
            m.input()
                .iter()
                .position(|x| x == s)
                .map(|k| Letter(k as u16 + 1))
                .ok_or_else(|| {
                    Error::Invariant(format!(
                        "symbol {} is not an input letter",
                        m.tape_symbols()[*s]
                    ))
                })
        })
        .collect()
}

struct Rules<'a> {
    m: &'a TuringMachine,
    /// Transitions into `F` as `(from, read, action)`.
    live: Vec<(StateId, SymId, Action)>,
    /// Ids of left moves: index into `live`.
    left_ids: HashMap<usize, usize>,
}

impl<'a> Rules<'a> {
    fn new(m: &'a TuringMachine) -> Self {
        let live: Vec<_> = m
            .transitions()
            .filter(|(_, _, a)| m.is_accepting(a.to))
            .collect();
        let left_ids = live
            .iter()
            .enumerate()
            .filter(|(_, (_, _, a))| a.mv == Move::L)
            .enumerate()
            .map(|(id, (k, _))| (k, id))
            .collect();
        Rules { m, live, left_ids }
    }

    fn from(&self, q: StateId) -> impl Iterator<Item = (usize, SymId, Action)> + '_ {
        self.live
            .iter()
            .enumerate()
            .filter(move |(_, (p, _, _))| *p == q)
            .map(|(k, &(_, y, a))| (k, y, a))
    }

    fn targets(&self, mv: Move) -> BTreeSet<StateId> {
        self.live
            .iter()
            .filter(|(_, _, a)| a.mv == mv)
            .map(|(_, _, a)| a.to)
            .collect()
    }

    fn states(&self) -> Vec<KState> {
        let mut v = Vec::new();
        for s in 0..self.m.tape_symbols().len() {
            v.push(l(s));
            v.push(r(s));
            let mut ids: Vec<usize> = self.left_ids.values().copied().collect();
            ids.sort_unstable();
            v.extend(ids.into_iter().map(|t| r_at(s, t)));
        }
        v.extend((0..self.m.states().len()).map(Head));
        v
    }

    /// Successor pairs for two adjacent cells of a configuration.
    fn next(&self, old: (KState, KState), col0: bool) -> BTreeSet<(KState, KState)> {
        let gamma = self.m.tape_symbols().len();
        let mut out = BTreeSet::new();
        match old {
            // the head and the symbol it scans
            (
                Head(q),
                Sym {
                    sym: y,
                    side: Side::R,
                    ..
                },
            ) => {
                for (k, read, a) in self.from(q) {
                    if read != y {
                        continue;
                    }
                    match a.mv {
                        Move::R => {
                            out.insert((l(a.write), Head(a.to)));
                        }
                        Move::S => {
                            out.insert((Head(a.to), r(a.write)));
                        }
                        Move::L if !col0 => {
                            let t = self.left_ids[&k];
                            for x in 0..gamma {
                                out.insert((r_at(x, t), r(a.write)));
                            }
                        }
                        Move::L => {}
                    }
                }
            }
            // the symbol left of the head, and the head
            (
                Sym {
                    sym: x,
                    side: Side::L,
                    ..
                },
                Head(q),
            ) => {
                for (k, _, a) in self.from(q) {
                    match a.mv {
                        Move::R => out.insert((l(x), l(a.write))),
                        Move::S => out.insert((l(x), Head(a.to))),
                        Move::L => out.insert((Head(a.to), r_at(x, self.left_ids[&k]))),
                    };
                }
            }
            (
                Sym {
                    sym: x,
                    side: Side::L,
                    ..
                },
                Sym {
                    sym: w,
                    side: Side::L,
                    ..
                },
            ) => {
                out.insert((l(x), l(w)));
                for q in self.targets(Move::L) {
                    out.insert((l(x), Head(q)));
                }
            }
            (
                Sym { side: Side::R, .. },
                Sym {
                    sym: z,
                    side: Side::R,
                    ..
                },
            ) if !col0 => {
                for g in 0..gamma {
                    out.insert((r(g), r(z)));
                }
                for q in self.targets(Move::R) {
                    out.insert((Head(q), r(z)));
                }
            }
            _ => {}
        }
        out
    }
}

fn state_name(m: &TuringMachine, s: KState) -> String {
    let g = m.tape_symbols();
    match s {
        Sym {
            sym, side: Side::L, ..
        } => format!("L.{}", g[sym]),
        Sym {
            sym,
            side: Side::R,
            ann: None,
        } => format!("R.{}", g[sym]),
        Sym {
            sym,
            side: Side::R,
            ann: Some(t),
        } => format!("R.{}@{t}", g[sym]),
        Head(q) => format!("Q.{}", m.states()[q]),
    }
}

/// The compiled system `K(m)` with Büchi set `{Q.q | q ∈ F}`.
pub fn compile_k(m: &TuringMachine) -> CompiledSystem {
    let rules = Rules::new(m);
    let kstates = rules.states();
    let index: HashMap<KState, State> = kstates
        .iter()
        .enumerate()
        .map(|(k, &s)| (s, State(k as u16)))
        .collect();
    let names: Vec<String> = kstates.iter().map(|&s| state_name(m, s)).collect();
    let sigma = machine_alphabet(m);
    let a = filler(&sigma);
    let hash = Letter::BORDER;
    let st = |s: KState| index[&s];
    let input_sym = |x: Letter| m.input()[x.0 as usize - 1];

    let mut tiles = BTreeSet::new();
    let mut emit = |letters: Square<Letter>, old: (KState, KState), col0: bool| {
        for (tl, tr) in rules.next(old, col0) {
            let cells: Square<Cell> = Square::new(
                (letters.bl, st(old.0)),
                (letters.br, st(old.1)),
                (letters.tl, st(tl)),
                (letters.tr, st(tr)),
            );
            tiles.insert(cells);
        }
    };

    if m.is_accepting(m.initial()) {
        for x in sigma.letters() {
            let old = (Head(m.initial()), r(input_sym(x)));
            emit(Square::new(hash, hash, hash, x), old, true);
        }
    }
    for x in sigma.letters() {
        for y in sigma.letters() {
            emit(
                Square::new(hash, hash, x, y),
                (r(input_sym(x)), r(input_sym(y))),
                false,
            );
        }
    }
    for &s0 in &kstates {
        for &s1 in &kstates {
            for x in sigma.letters() {
                emit(Square::new(hash, x, hash, a), (s0, s1), true);
                for y in sigma.letters() {
                    emit(Square::new(x, y, a, a), (s0, s1), false);
                }
            }
        }
    }

    let accepting = m.accepting().iter().map(|&q| st(Head(q))).collect();
    let system =
        TilingSystem::new(names, sigma, tiles).expect("compiled tiles use declared states");
    CompiledSystem::new(system, accepting, format!("K({})", m.name))
}

fn decode_cell(m: &TuringMachine, name: &str) -> Option<ConfigCell> {
    let name = name.strip_prefix("1|").unwrap_or(name);
    if let Some(q) = name.strip_prefix("Q.") {
        return m.state_id(q).map(ConfigCell::Head);
    }
    let body = name
        .strip_prefix("L.")
        .or_else(|| name.strip_prefix("R."))?;
    let sym = match body.rsplit_once('@') {
        Some((s, t)) if t.parse::<usize>().is_ok() && m.symbol_id(body).is_none() => s,
        _ => body,
    };
    m.symbol_id(sym).map(ConfigCell::Tape)
}

/// Reads the configurations back off a run of `K(m)` (or of the first
/// branch of `H(m)`), one per row.
pub fn decode_rows(
    m: &TuringMachine,
    ts: &TilingSystem,
    run: &RunAssignment,
) -> Result<Vec<Vec<ConfigCell>>> {
    (0..run.rows())
        .map(|j| {
            run.row(j)
                .iter()
                .map(|&q| {
                    let name = ts.state_name(q);
                    decode_cell(m, name).ok_or_else(|| {
                        Error::Invariant(format!(
                            "state {name} does not encode a configuration cell"
                        ))
                    })
                })
                .collect()
        })
        .collect()
}
