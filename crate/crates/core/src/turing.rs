//! Nondeterministic Turing machines reading ω-words on a semi-infinite tape.
//!
//! Head positions are 1-based. Only a finite prefix of the input is ever
//! known, so a step that needs to read beyond it is reported as
//! [`Step::Exhausted`] rather than guessed.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::valid_token;
use crate::verdict::{BoundedVerdict, Outcome};

pub type StateId = usize;
pub type SymId = usize;

/// Default cap on the number of traces built by [`tm_run_bounded`].
pub const DEFAULT_TRACE_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    L,
    R,
    S,
}

impl Move {
    pub fn parse(s: &str) -> Option<Move> {
        match s {
            "L" => Some(Move::L),
            "R" => Some(Move::R),
            "S" => Some(Move::S),
            _ => None,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::R => "R",
            Move::S => "S",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action {
    pub to: StateId,
    pub write: SymId,
    pub mv: Move,
}

/// One line of a transition table, by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTransition {
    pub from: String,
    pub read: String,
    pub to: String,
    pub write: String,
    pub mv: Move,
}

impl NamedTransition {
    pub fn new(from: &str, read: &str, to: &str, write: &str, mv: Move) -> Self {
        NamedTransition {
            from: from.into(),
            read: read.into(),
            to: to.into(),
            write: write.into(),
            mv,
        }
    }
}

/// `(Q, Σ, Γ, δ, q₀)` together with the accepting set `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    pub name: String,
    states: Vec<String>,
    tape: Vec<String>,
    input: Vec<SymId>,
    delta: BTreeMap<(StateId, SymId), Vec<Action>>,
    initial: StateId,
    accepting: BTreeSet<StateId>,
}

fn check_names(kind: &str, names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !valid_token(n) {
            return Err(Error::Invariant(format!("invalid {kind} name {n:?}")));
        }
        if !seen.insert(n) {
            return Err(Error::Invariant(format!("duplicate {kind} {n}")));
        }
    }
    Ok(())
}

impl TuringMachine {
    pub fn new(
        name: &str,
        states: Vec<String>,
        input: Vec<String>,
        tape: Vec<String>,
        initial: &str,
        accepting: &[String],
        transitions: &[NamedTransition],
    ) -> Result<Self> {
        check_names("state", &states)?;
        check_names("tape symbol", &tape)?;
        check_names("input symbol", &input)?;
        if input.is_empty() {
            return Err(Error::Invariant("input alphabet must be nonempty".into()));
        }
        let st = |s: &str| {
            states
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::Invariant(format!("undeclared state {s}")))
        };
        let sy = |s: &str| {
            tape.iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::Invariant(format!("undeclared tape symbol {s}")))
        };
        let mut input_ids = Vec::new();
        for a in &input {
            input_ids.push(
                sy(a).map_err(|_| {
                    Error::Invariant(format!("input symbol {a} not in tape alphabet"))
                })?,
            );
        }
        let initial = st(initial)?;
        let accepting = accepting
            .iter()
            .map(|s| st(s))
            .collect::<Result<BTreeSet<_>>>()?;
        let mut delta: BTreeMap<_, Vec<Action>> = BTreeMap::new();
        for t in transitions {
            let action = Action {
                to: st(&t.to)?,
                write: sy(&t.write)?,
                mv: t.mv,
            };
            delta
                .entry((st(&t.from)?, sy(&t.read)?))
                .or_default()
                .push(action);
        }
        for v in delta.values_mut() {
            v.sort();
            v.dedup();
        }
        Ok(TuringMachine {
            name: name.to_string(),
            states,
            tape,
            input: input_ids,
            delta,
            initial,
            accepting,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn tape_symbols(&self) -> &[String] {
        &self.tape
    }

    /// Input symbols as tape-symbol ids, in declaration order.
    pub fn input(&self) -> &[SymId] {
        &self.input
    }

    pub fn input_names(&self) -> Vec<&str> {
        self.input.iter().map(|&s| self.tape[s].as_str()).collect()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting.contains(&q)
    }

    pub fn actions(&self, q: StateId, s: SymId) -> &[Action] {
        self.delta.get(&(q, s)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All transitions as `(from, read, action)`, in table order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, SymId, Action)> + '_ {
        self.delta
            .iter()
            .flat_map(|(&(q, s), acts)| acts.iter().map(move |&a| (q, s, a)))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.values().map(Vec::len).sum()
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymId> {
        self.tape.iter().position(|s| s == name)
    }

    /// Parses a word over the input alphabet: whitespace-separated names, or
    /// one character per letter when there is no whitespace.
    pub fn word(&self, text: &str) -> Result<Vec<SymId>> {
        let parts: Vec<String> = if text.contains(char::is_whitespace) {
            text.split_whitespace().map(str::to_string).collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        parts
            .iter()
            .map(|p| {
                self.symbol_id(p)
                    .filter(|s| self.input.contains(s))
                    .ok_or_else(|| Error::Invariant(format!("{p:?} is not an input letter")))
            })
            .collect()
    }

    pub fn word_string(&self, w: &[SymId]) -> String {
        w.iter()
            .map(|&s| self.tape[s].as_str())
            .collect::<Vec<_>>()
            .join("")
    }

    /// The machine with `F` replaced.
    pub fn with_accepting(&self, accepting: BTreeSet<StateId>) -> Self {
        TuringMachine {
            accepting,
            ..self.clone()
        }
    }
}

/// `(q, tape, head)`. The tape is the input with a finite mutated prefix
/// laid over it; trailing cells that agree with the input are trimmed, so
/// equal tapes compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub written: Vec<SymId>,
    pub head: usize,
}

impl Configuration {
    pub fn initial(m: &TuringMachine) -> Self {
        Configuration {
            state: m.initial(),
            written: Vec::new(),
            head: 1,
        }
    }

    /// Content of tape position `pos` (1-based), if known.
    pub fn tape_at(&self, pos: usize, input: &[SymId]) -> Option<SymId> {
        debug_assert!(pos >= 1);
        self.written
            .get(pos - 1)
            .or_else(|| input.get(pos - 1))
            .copied()
    }

    fn write(&mut self, pos: usize, sym: SymId, input: &[SymId]) {
        while self.written.len() < pos {
            let next = input[self.written.len()];
            self.written.push(next);
        }
        self.written[pos - 1] = sym;
        while let Some(&last) = self.written.last() {
            if input.get(self.written.len() - 1) == Some(&last) {
                self.written.pop();
            } else {
                break;
            }
        }
    }

    /// The configuration written as `u.q.v`, cut to `width` cells.
    pub fn render(&self, input: &[SymId], width: usize) -> Vec<ConfigCell> {
        let h = self.head - 1;
        (0..width)
            .map(|x| {
                let pos = match x.cmp(&h) {
                    std::cmp::Ordering::Less => x + 1,
                    std::cmp::Ordering::Equal => return ConfigCell::Head(self.state),
                    std::cmp::Ordering::Greater => x,
                };
                self.tape_at(pos, input)
                    .map_or(ConfigCell::Unknown, ConfigCell::Tape)
            })
            .collect()
    }
}

/// One cell of a rendered configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigCell {
    Tape(SymId),
    Head(StateId),
    Unknown,
}

pub fn render_cells(m: &TuringMachine, cells: &[ConfigCell]) -> String {
    cells
        .iter()
        .map(|c| match c {
            ConfigCell::Tape(s) => m.tape_symbols()[*s].clone(),
            ConfigCell::Head(q) => format!("[{}]", m.states()[*q]),
            ConfigCell::Unknown => "?".into(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Successors(Vec<Configuration>),
    /// The head sits beyond the known input prefix.
    Exhausted,
}

/// All configurations reachable in one step, sorted and deduplicated.
/// A left move from position 1 has no successor.
pub fn tm_step(m: &TuringMachine, c: &Configuration, input: &[SymId]) -> Step {
    let Some(read) = c.tape_at(c.head, input) else {
        return Step::Exhausted;
    };
    let mut out = Vec::new();
    for a in m.actions(c.state, read) {
        let head = match a.mv {
            Move::R => c.head + 1,
            Move::S => c.head,
            Move::L if c.head == 1 => continue,
            Move::L => c.head - 1,
        };
        let mut next = c.clone();
        next.write(c.head, a.write, input);
        next.state = a.to;
        next.head = head;
        out.push(next);
    }
    out.sort();
    out.dedup();
    Step::Successors(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TraceEnd {
    /// All requested steps were taken.
    Completed,
    /// No transition applies.
    Halted,
    /// The next step would read beyond the known input.
    PrefixExhausted,
}

/// A finite run prefix with the evidence that can be read off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvidence {
    pub steps: Vec<Configuration>,
    pub end: TraceEnd,
    /// Largest head position reached.
    pub complete_evidence: usize,
    /// Head position → number of configurations with the head there.
    pub oscillation_evidence: BTreeMap<usize, usize>,
    /// `q_i ∈ F` for each configuration.
    pub accepting_flags: Vec<bool>,
}

impl TraceEvidence {
    fn build(m: &TuringMachine, steps: Vec<Configuration>, end: TraceEnd) -> Self {
        let mut osc = BTreeMap::new();
        for c in &steps {
            *osc.entry(c.head).or_insert(0) += 1;
        }
        TraceEvidence {
            complete_evidence: steps.iter().map(|c| c.head).max().unwrap_or(1),
            oscillation_evidence: osc,
            accepting_flags: steps.iter().map(|c| m.is_accepting(c.state)).collect(),
            steps,
            end,
        }
    }

    /// Positions visited more than once.
    pub fn revisited(&self) -> BTreeMap<usize, usize> {
        self.oscillation_evidence
            .iter()
            .filter(|(_, &n)| n > 1)
            .map(|(&p, &n)| (p, n))
            .collect()
    }

    pub fn all_accepting(&self) -> bool {
        self.accepting_flags.iter().all(|&b| b)
    }

    pub fn last(&self) -> &Configuration {
        self.steps.last().expect("traces are nonempty")
    }
}

/// All traces of at most `k` steps from the initial configuration on `prefix`.
///
/// Exploration is breadth-first by step. Within a step, traces reaching the
/// same configuration with the same all-accepting history are merged, which
/// keeps the reachable set and the 1′ evidence exact.
pub fn tm_run_bounded(
    m: &TuringMachine,
    prefix: &[SymId],
    k: usize,
    budget: usize,
) -> Result<Vec<TraceEvidence>> {
    if k == 0 {
        return Err(Error::NonPositive);
    }
    let init = Configuration::initial(m);
    let acc0 = m.is_accepting(init.state);
    let mut frontier = vec![(vec![init], acc0)];
    let mut finished = Vec::new();
    let mut created = 1usize;
    for _ in 0..k {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for (trace, all_acc) in frontier {
            let last = trace.last().expect("nonempty");
            match tm_step(m, last, prefix) {
                Step::Exhausted => {
                    finished.push(TraceEvidence::build(m, trace, TraceEnd::PrefixExhausted))
                }
                Step::Successors(s) if s.is_empty() => {
                    finished.push(TraceEvidence::build(m, trace, TraceEnd::Halted))
                }
                Step::Successors(succ) => {
                    for c in succ {
                        let acc = all_acc && m.is_accepting(c.state);
                        if !seen.insert((c.clone(), acc)) {
                            continue;
                        }
                        created += 1;
                        if created > budget {
                            return Err(Error::Budget {
                                nodes: budget as u64,
                            });
                        }
                        let mut t = trace.clone();
                        t.push(c);
                        next.push((t, acc));
                    }
                }
            }
        }
        frontier = next;
    }
    finished.extend(
        frontier
            .into_iter()
            .map(|(t, _)| TraceEvidence::build(m, t, TraceEnd::Completed)),
    );
    finished.sort_by(|a, b| a.steps.cmp(&b.steps).then(a.end.cmp(&b.end)));
    Ok(finished)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TmAcceptance {
    /// Every state of the run lies in `F`.
    OnePrime,
    /// Infinitely many states of the run lie in `F`.
    Buchi,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceSummary {
    pub accepting_count: usize,
    pub configurations: usize,
    pub max_head: usize,
    pub revisited_positions: usize,
}

/// Acceptance evidence carried by a single trace.
pub fn tm_acceptance_evidence(
    t: &TraceEvidence,
    mode: TmAcceptance,
    f: &BTreeSet<StateId>,
) -> BoundedVerdict<TraceSummary> {
    let depth = t.steps.len() - 1;
    let summary = TraceSummary {
        accepting_count: t.steps.iter().filter(|c| f.contains(&c.state)).count(),
        configurations: t.steps.len(),
        max_head: t.complete_evidence,
        revisited_positions: t.revisited().len(),
    };
    let mut notes = Vec::new();
    let outcome = match mode {
        TmAcceptance::OnePrime => match t.steps.iter().position(|c| !f.contains(&c.state)) {
            Some(i) => {
                notes.push(format!("state outside F at step {i}"));
                Outcome::CertifiedNo
            }
            None => {
                notes.push("all states accepting so far".into());
                Outcome::Unknown { depth }
            }
        },
        TmAcceptance::Buchi => {
            notes.push(format!(
                "{} accepting configurations",
                summary.accepting_count
            ));
            Outcome::Unknown { depth }
        }
    };
    notes.push(format!(
        "completeness and non-oscillation are evidence only: max head {}, {} revisited positions",
        summary.max_head, summary.revisited_positions
    ));
    if t.end == TraceEnd::Halted {
        notes.push("trace halted".into());
    }
    BoundedVerdict {
        outcome,
        evidence: summary,
        notes,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MachineEvidence {
    /// Traces that are neither halted nor refuted by a state outside `F`.
    pub viable: usize,
    pub traces: usize,
    pub first_viable: Option<TraceEvidence>,
}

/// 1′ acceptance of the machine as a whole after `k` steps: `CertifiedNo`
/// when every trace either leaves `F` or halts, which refutes every run.
pub fn bounded_one_prime(
    m: &TuringMachine,
    prefix: &[SymId],
    k: usize,
    budget: usize,
) -> Result<BoundedVerdict<MachineEvidence>> {
    let traces = tm_run_bounded(m, prefix, k, budget)?;
    let mut viable = traces
        .iter()
        .filter(|t| t.end != TraceEnd::Halted && t.all_accepting());
    let first = viable.next().cloned();
    let count = usize::from(first.is_some()) + viable.count();
    let outcome = if first.is_some() {
        Outcome::Unknown { depth: k }
    } else {
        Outcome::CertifiedNo
    };
    let notes = vec![format!(
        "{count} of {} traces viable after {k} steps",
        traces.len()
    )];
    Ok(BoundedVerdict {
        outcome,
        evidence: MachineEvidence {
            viable: count,
            traces: traces.len(),
            first_viable: first,
        },
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::verdict::Category;

    #[test]
    fn right_mover_single_step() {
        let m = corpus::m_right();
        let input = m.word("aaaa").unwrap();
        let c = Configuration::initial(&m);
        let Step::Successors(s) = tm_step(&m, &c, &input) else {
            panic!()
        };
        assert_eq!(
            s,
            vec![Configuration {
                state: 0,
                written: vec![],
                head: 2
            }]
        );
    }

    #[test]
    fn halting_step_is_empty() {
        let m = corpus::m_a();
        let input = m.word("b").unwrap();
        assert_eq!(
            tm_step(&m, &Configuration::initial(&m), &input),
            Step::Successors(vec![])
        );
    }

    #[test]
    fn two_choices() {
        let m = corpus::m_guess();
        let input = m.word("ab").unwrap();
        let Step::Successors(s) = tm_step(&m, &Configuration::initial(&m), &input) else {
            panic!()
        };
        let p = m.state_id("p").unwrap();
        let q = m.state_id("q").unwrap();
        let b = m.symbol_id("b").unwrap();
        // p a -> p a R and p a -> q b R
        let mut expected = vec![
            Configuration {
                state: p,
                written: vec![],
                head: 2,
            },
            Configuration {
                state: q,
                written: vec![b],
                head: 2,
            },
        ];
        expected.sort();
        assert_eq!(s, expected);
    }

    #[test]
    fn left_from_first_cell_falls_off() {
        let m = corpus::m_bounce();
        let input = m.word("ba").unwrap();
        assert_eq!(
            tm_step(&m, &Configuration::initial(&m), &input),
            Step::Successors(vec![])
        );
    }

    #[test]
    fn right_mover_trace() {
        let m = corpus::m_right();
        let t = tm_run_bounded(&m, &m.word("aaaaa").unwrap(), 4, DEFAULT_TRACE_BUDGET).unwrap();
        assert_eq!(t.len(), 1);
        let heads: Vec<usize> = t[0].steps.iter().map(|c| c.head).collect();
        assert_eq!(heads, vec![1, 2, 3, 4, 5]);
        assert_eq!(t[0].end, TraceEnd::Completed);
        assert_eq!(t[0].complete_evidence, 5);
        assert!(t[0].revisited().is_empty());
    }

    #[test]
    fn m_a_halts_on_b() {
        let m = corpus::m_a();
        let t = tm_run_bounded(&m, &m.word("ab").unwrap(), 3, DEFAULT_TRACE_BUDGET).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].steps.len(), 2);
        assert_eq!(t[0].end, TraceEnd::Halted);
    }

    #[test]
    fn one_step_from_initial() {
        let m = corpus::m_right();
        let t = tm_run_bounded(&m, &m.word("ab").unwrap(), 1, DEFAULT_TRACE_BUDGET).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].steps[0], Configuration::initial(&m));
        assert!(tm_run_bounded(&m, &[], 0, 10).is_err());
    }

    #[test]
    fn prefix_exhaustion_recorded() {
        let m = corpus::m_right();
        let t = tm_run_bounded(&m, &m.word("ab").unwrap(), 5, DEFAULT_TRACE_BUDGET).unwrap();
        assert_eq!(t[0].end, TraceEnd::PrefixExhausted);
        assert_eq!(t[0].steps.len(), 3);
    }

    #[test]
    fn acceptance_evidence() {
        let m = corpus::m_right();
        let t =
            &tm_run_bounded(&m, &m.word("aaaaaaaa").unwrap(), 7, DEFAULT_TRACE_BUDGET).unwrap()[0];
        let all: BTreeSet<_> = [0].into();
        let v = tm_acceptance_evidence(t, TmAcceptance::OnePrime, &all);
        assert_eq!(v.category(), Category::Unknown);
        assert_eq!(v.notes[0], "all states accepting so far");
        let b = tm_acceptance_evidence(t, TmAcceptance::Buchi, &all);
        assert_eq!(b.evidence.accepting_count, 8);
        assert_eq!(b.category(), Category::Unknown);
        let none = BTreeSet::new();
        assert_eq!(
            tm_acceptance_evidence(t, TmAcceptance::OnePrime, &none).outcome,
            Outcome::CertifiedNo
        );
    }

    #[test]
    fn written_cells_trimmed() {
        let m = corpus::m_stay();
        let input = m.word("aa").unwrap();
        let mut c = Configuration::initial(&m);
        c.write(1, input[0], &input);
        assert!(c.written.is_empty());
    }

    #[test]
    fn render_shifts_tape_around_head() {
        let m = corpus::m_right();
        let input = m.word("ab").unwrap();
        let c = Configuration {
            state: 0,
            written: vec![],
            head: 2,
        };
        let a = m.symbol_id("a").unwrap();
        let b = m.symbol_id("b").unwrap();
        assert_eq!(
            c.render(&input, 4),
            vec![
                ConfigCell::Tape(a),
                ConfigCell::Head(0),
                ConfigCell::Tape(b),
                ConfigCell::Unknown
            ]
        );
    }

    #[test]
    fn machine_level_verdicts() {
        let m = corpus::m_a();
        let v = bounded_one_prime(&m, &m.word("abaa").unwrap(), 3, DEFAULT_TRACE_BUDGET).unwrap();
        assert_eq!(v.outcome, Outcome::CertifiedNo);
        let v = bounded_one_prime(&m, &m.word("aaaa").unwrap(), 3, DEFAULT_TRACE_BUDGET).unwrap();
        assert_eq!(v.category(), Category::Unknown);
    }
}
