//! Plain-text file formats for machines, tiling systems, pictures and runs.
//!
//! All formats are line based. Blank lines and lines starting with `//` are
//! skipped. Grid rows are listed bottom to top.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::encodings::RunCode;
use crate::error::{Error, Result};
use crate::grid::{
    Alphabet, Cell, Grid, Letter, PictureWindow, RunAssignment, Square, State, TilingSystem,
    WindowKind,
};
use crate::turing::{Move, NamedTransition, TuringMachine};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Meaningful lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with("//"))
}

fn header<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>, expected: &str) -> Result<()> {
    match it.next() {
        Some((_, l)) if l == expected => Ok(()),
        Some((n, l)) => Err(parse_err(
            n,
            format!("expected header {expected:?}, found {l:?}"),
        )),
        None => Err(parse_err(0, format!("empty input, expected {expected:?}"))),
    }
}

fn field<'a>(line: (usize, &'a str), key: &str) -> Result<&'a str> {
    let (n, l) = line;
    l.strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .map(str::trim)
        .ok_or_else(|| parse_err(n, format!("expected field {key}:")))
}

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

pub fn parse_machine(text: &str) -> Result<TuringMachine> {
    let mut it = lines(text).peekable();
    header(&mut it, "turing-machine v1")?;
    let mut next = |key: &str| -> Result<(usize, String)> {
        let l = it
            .next()
            .ok_or_else(|| parse_err(0, format!("missing field {key}:")))?;
        Ok((l.0, field(l, key)?.to_string()))
    };
    let (_, name) = next("name")?;
    let (_, states) = next("states")?;
    let (_, input) = next("input")?;
    let (_, tape) = next("tape")?;
    let (_, initial) = next("initial")?;
    let (_, accepting) = next("accepting")?;
    let mut transitions = Vec::new();
    for (n, l) in it {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 6 || t[2] != "->" {
            return Err(parse_err(n, "expected `state symbol -> state symbol move`"));
        }
        let mv =
            Move::parse(t[5]).ok_or_else(|| parse_err(n, format!("unknown move {:?}", t[5])))?;
        transitions.push(NamedTransition::new(t[0], t[1], t[3], t[4], mv));
    }
    TuringMachine::new(
        &name,
        words(&states),
        words(&input),
        words(&tape),
        &initial,
        &words(&accepting),
        &transitions,
    )
}

pub fn write_machine(m: &TuringMachine) -> String {
    let mut s = String::from("turing-machine v1\n");
    let acc: Vec<&str> = m
        .accepting()
        .iter()
        .map(|&q| m.states()[q].as_str())
        .collect();
    let _ = writeln!(s, "name: {}", m.name);
    let _ = writeln!(s, "states: {}", m.states().join(" "));
    let _ = writeln!(s, "input: {}", m.input_names().join(" "));
    let _ = writeln!(s, "tape: {}", m.tape_symbols().join(" "));
    let _ = writeln!(s, "initial: {}", m.states()[m.initial()]);
    let _ = writeln!(s, "accepting: {}", acc.join(" "));
    for (q, a, act) in m.transitions() {
        let _ = writeln!(
            s,
            "{} {} -> {} {} {}",
            m.states()[q],
            m.tape_symbols()[a],
            m.states()[act.to],
            m.tape_symbols()[act.write],
            act.mv
        );
    }
    s
}

/// A tiling system as stored on disk, with optional acceptance data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingFile {
    pub system: TilingSystem,
    pub accepting: Option<BTreeSet<State>>,
    pub provenance: Option<String>,
}

fn parse_cell(ts_states: &[String], sigma: &Alphabet, tok: &str, n: usize) -> Result<Cell> {
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| parse_err(n, format!("expected (letter,state), found {tok:?}")))?;
    let (l, q) = inner
        .split_once(',')
        .ok_or_else(|| parse_err(n, format!("expected (letter,state), found {tok:?}")))?;
    let letter = sigma
        .letter(l.trim())
        .ok_or_else(|| parse_err(n, format!("unknown letter {l:?}")))?;
    let state = ts_states
        .iter()
        .position(|s| s == q.trim())
        .ok_or_else(|| Error::Invariant(format!("line {n}: tile uses undeclared state {q:?}")))?;
    Ok((letter, State(state as u16)))
}

fn state_set(states: &[String], names: &str, n: usize) -> Result<BTreeSet<State>> {
    names
        .split_whitespace()
        .map(|q| {
            states
                .iter()
                .position(|s| s == q)
                .map(|k| State(k as u16))
                .ok_or_else(|| parse_err(n, format!("unknown state {q:?}")))
        })
        .collect()
}

pub fn parse_tiling(text: &str) -> Result<TilingFile> {
    let mut it = lines(text).peekable();
    header(&mut it, "tiling-system v1")?;
    let l = it.next().ok_or_else(|| parse_err(0, "missing states:"))?;
    let states = words(field(l, "states")?);
    let l = it.next().ok_or_else(|| parse_err(0, "missing alphabet:"))?;
    let sigma = Alphabet::new(words(field(l, "alphabet")?))?;
    let mut accepting = None;
    let mut provenance = None;
    let mut tiles = Vec::new();
    for (n, l) in it {
        if let Some(rest) = l.strip_prefix("accepting:") {
            accepting = Some(state_set(&states, rest, n)?);
        } else if let Some(rest) = l.strip_prefix("provenance:") {
            provenance = Some(rest.trim().to_string());
        } else if let Some(rest) = l.strip_prefix("tile ") {
            let (top, bottom) = rest
                .split_once('/')
                .ok_or_else(|| parse_err(n, "expected `tile tl tr / bl br`"))?;
            let cells = |s: &str| -> Result<Vec<Cell>> {
                s.split_whitespace()
                    .map(|t| parse_cell(&states, &sigma, t, n))
                    .collect()
            };
            let (top, bottom) = (cells(top)?, cells(bottom)?);
            if top.len() != 2 || bottom.len() != 2 {
                return Err(parse_err(n, "a tile has two cells per row"));
            }
            tiles.push(Square::new(bottom[0], bottom[1], top[0], top[1]));
        } else {
            return Err(parse_err(n, format!("unrecognized line {l:?}")));
        }
    }
    let system = TilingSystem::new(states, sigma, tiles)?;
    Ok(TilingFile {
        system,
        accepting,
        provenance,
    })
}

pub fn write_tiling(f: &TilingFile) -> String {
    let ts = &f.system;
    let mut s = String::from("tiling-system v1\n");
    let _ = writeln!(s, "states: {}", ts.state_names().join(" "));
    let _ = writeln!(s, "alphabet: {}", ts.alphabet().names().join(" "));
    if let Some(acc) = &f.accepting {
        let names: Vec<&str> = acc.iter().map(|&q| ts.state_name(q)).collect();
        let _ = writeln!(s, "accepting: {}", names.join(" "));
    }
    if let Some(p) = &f.provenance {
        let _ = writeln!(s, "provenance: {p}");
    }
    for t in ts.tiles() {
        let _ = writeln!(s, "tile {}", ts.display_tile(t));
    }
    s
}

fn letter_rows<'a>(
    sigma: &Alphabet,
    it: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Vec<Vec<Letter>>> {
    it.map(|(n, l)| {
        l.split_whitespace()
            .map(|t| {
                sigma
                    .letter(t)
                    .filter(|l| !l.is_border())
                    .ok_or_else(|| parse_err(n, format!("unknown letter {t:?}")))
            })
            .collect()
    })
    .collect()
}

/// Parses a picture; rows are the interior rows, bottom to top.
pub fn parse_picture(text: &str, sigma: &Alphabet) -> Result<PictureWindow> {
    let mut it = lines(text);
    let (n0, head) = it
        .next()
        .ok_or_else(|| parse_err(0, "empty picture file"))?;
    let t: Vec<&str> = head.split_whitespace().collect();
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(n0, format!("bad size {s:?}")))
    };
    let rows = letter_rows(sigma, it)?;
    match t.as_slice() {
        ["picture", "finite", m, n] => PictureWindow::finite(num(m)?, num(n)?, &rows),
        ["picture", "omega-prefix", n] => PictureWindow::omega_prefix(num(n)?, &rows),
        _ => Err(parse_err(
            n0,
            "expected `picture finite m n` or `picture omega-prefix n`",
        )),
    }
}

pub fn write_picture(p: &PictureWindow, sigma: &Alphabet) -> String {
    let mut s = match p.kind() {
        WindowKind::Finite { m, n } => format!("picture finite {m} {n}\n"),
        WindowKind::OmegaPrefix { n } => format!("picture omega-prefix {n}\n"),
    };
    for row in p.interior_rows() {
        let names: Vec<&str> = row.iter().map(|&l| sigma.name(l)).collect();
        s.push_str(&names.join(" "));
        s.push('\n');
    }
    s
}

/// Parses a run over the full domain, state names resolved against `ts`.
pub fn parse_run(text: &str, ts: &TilingSystem) -> Result<RunAssignment> {
    let mut it = lines(text);
    let (n0, head) = it.next().ok_or_else(|| parse_err(0, "empty run file"))?;
    let t: Vec<&str> = head.split_whitespace().collect();
    let (cols, rows) = match t.as_slice() {
        ["run", c, r] => (
            c.parse::<usize>()
                .map_err(|_| parse_err(n0, "bad column count"))?,
            r.parse::<usize>()
                .map_err(|_| parse_err(n0, "bad row count"))?,
        ),
        _ => return Err(parse_err(n0, "expected `run cols rows`")),
    };
    let mut data = Vec::new();
    for (n, l) in it {
        let row: Vec<State> = l
            .split_whitespace()
            .map(|q| {
                ts.state(q)
                    .ok_or_else(|| parse_err(n, format!("unknown state {q:?}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(parse_err(
                n,
                format!("expected {cols} states, found {}", row.len()),
            ));
        }
        data.push(row);
    }
    if data.len() != rows {
        return Err(parse_err(
            n0,
            format!("expected {rows} rows, found {}", data.len()),
        ));
    }
    Ok(Grid::from_fn(cols, rows, |i, j| data[j][i]))
}

pub fn write_run(run: &RunAssignment, ts: &TilingSystem) -> String {
    let mut s = format!("run {} {}\n", run.cols(), run.rows());
    for j in 0..run.rows() {
        let names: Vec<&str> = run.row(j).iter().map(|&q| ts.state_name(q)).collect();
        s.push_str(&names.join(" "));
        s.push('\n');
    }
    s
}

/// A `p̄` or `ρ̄` stream with its header data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EncodingStream {
    /// Row-major letters of a depth-`depth` window, one line per row.
    Pbar {
        alphabet: Alphabet,
        depth: usize,
        letters: Vec<Letter>,
    },
    /// Run code of a depth-`depth` window, one line per cell.
    Rhobar {
        states: Vec<String>,
        depth: usize,
        code: RunCode,
    },
}

pub fn write_encoding(e: &EncodingStream) -> String {
    let mut s = String::from("encoding v1\n");
    match e {
        EncodingStream::Pbar {
            alphabet,
            depth,
            letters,
        } => {
            let _ = writeln!(s, "kind: pbar");
            let _ = writeln!(s, "alphabet: {}", alphabet.names().join(" "));
            let _ = writeln!(s, "depth: {depth}");
            for row in letters.chunks((*depth).max(1)) {
                let names: Vec<&str> = row.iter().map(|&l| alphabet.name(l)).collect();
                let _ = writeln!(s, "{}", names.join(" "));
            }
        }
        EncodingStream::Rhobar {
            states,
            depth,
            code,
        } => {
            let _ = writeln!(s, "kind: rhobar");
            let _ = writeln!(s, "states: {}", states.join(" "));
            let _ = writeln!(s, "width: {}", code.width);
            let _ = writeln!(s, "depth: {depth}");
            for chunk in code.bits.chunks(code.width as usize) {
                let bits: String = chunk.iter().map(|&b| if b { '1' } else { '0' }).collect();
                let _ = writeln!(s, "{bits}");
            }
        }
    }
    s
}

pub fn parse_encoding(text: &str) -> Result<EncodingStream> {
    let mut it = lines(text);
    header(&mut it, "encoding v1")?;
    let mut next = |key: &str| -> Result<(usize, String)> {
        let l = it
            .next()
            .ok_or_else(|| parse_err(0, format!("missing field {key}:")))?;
        Ok((l.0, field(l, key)?.to_string()))
    };
    let number = |(n, v): (usize, String)| {
        v.parse::<usize>()
            .map_err(|_| parse_err(n, format!("bad number {v:?}")))
    };
    let (kn, kind) = next("kind")?;
    match kind.as_str() {
        "pbar" => {
            let (_, names) = next("alphabet")?;
            let alphabet = Alphabet::new(words(&names))?;
            let depth = number(next("depth")?)?;
            let rows = letter_rows(&alphabet, it)?;
            if rows.len() != depth || rows.iter().any(|r| r.len() != depth) {
                return Err(parse_err(
                    kn,
                    format!("expected {depth} rows of {depth} letters"),
                ));
            }
            Ok(EncodingStream::Pbar {
                alphabet,
                depth,
                letters: rows.concat(),
            })
        }
        "rhobar" => {
            let (_, names) = next("states")?;
            let width = number(next("width")?)? as u32;
            let depth = number(next("depth")?)?;
            let mut bits = Vec::new();
            let mut cells = 0;
            for (n, l) in it {
                if l.len() != width as usize || !l.chars().all(|c| c == '0' || c == '1') {
                    return Err(parse_err(n, format!("expected {width} bits")));
                }
                bits.extend(l.chars().map(|c| c == '1'));
                cells += 1;
            }
            if cells != depth * (depth + 1) / 2 {
                return Err(parse_err(
                    kn,
                    format!(
                        "depth {depth} determines {} cells, found {cells}",
                        depth * (depth + 1) / 2
                    ),
                ));
            }
            Ok(EncodingStream::Rhobar {
                states: words(&names),
                depth,
                code: RunCode { bits, width },
            })
        }
        other => Err(parse_err(kn, format!("unknown encoding kind {other:?}"))),
    }
}
