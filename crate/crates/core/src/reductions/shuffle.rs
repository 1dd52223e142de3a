//! Interleaving of ω-words and the machine that accepts `L ⊗ Σ^ω ∪ Σ^ω ⊗ L'`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::turing::{Move, NamedTransition, TuringMachine};

/// `(x ⊗ x′)(2n−1) = x(n)`, `(x ⊗ x′)(2n) = x′(n)`.
pub fn shuffle_words<T: Clone>(x: &[T], y: &[T]) -> Result<Vec<T>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(x.iter()
        .zip(y)
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect())
}

/// Splits a word into its odd-position and even-position subwords.
pub fn deinterleave<T: Clone>(w: &[T]) -> (Vec<T>, Vec<T>) {
    let odd = w.iter().step_by(2).cloned().collect();
    let even = w.iter().skip(1).step_by(2).cloned().collect();
    (odd, even)
}

struct Branch<'a> {
    tag: &'static str,
    m: &'a TuringMachine,
}

impl Branch<'_> {
    fn state(&self, q: usize) -> String {
        format!("{}:{}", self.tag, self.m.states()[q])
    }

    fn mid(&self, q: usize, mv: Move) -> String {
        format!("{}:{}~{mv}", self.tag, self.m.states()[q])
    }

    fn symbol(&self, s: usize) -> String {
        let name = &self.m.tape_symbols()[s];
        if self.m.input().contains(&s) {
            name.clone()
        } else {
            format!("{}:{name}", self.tag)
        }
    }
}

/// The machine `θ(mL, mZ)`.
///
/// It first commits to one of the two subwords. The odd branch stays on
/// cell 1 and runs `mL` on cells 1, 3, 5, …; the even branch steps to cell 2
/// and runs `mZ` on cells 2, 4, 6, …. Every simulated move becomes two
/// moves through an intermediate state that rewrites the skipped cell
/// unchanged. The choice state and each intermediate state are accepting
/// exactly when the state they lead to is, so the 1′ condition carries over.
pub fn shuffle_machines(ml: &TuringMachine, mz: &TuringMachine) -> Result<TuringMachine> {
    let input: Vec<String> = ml.input_names().iter().map(|s| s.to_string()).collect();
    let lset: BTreeSet<&str> = ml.input_names().into_iter().collect();
    let zset: BTreeSet<&str> = mz.input_names().into_iter().collect();
    if lset != zset {
        return Err(Error::AlphabetMismatch(format!(
            "{{{}}} vs {{{}}}",
            ml.input_names().join(","),
            mz.input_names().join(",")
        )));
    }
    let branches = [Branch { tag: "L", m: ml }, Branch { tag: "Z", m: mz }];

    let mut tape = input.clone();
    for b in &branches {
        for s in 0..b.m.tape_symbols().len() {
            let name = b.symbol(s);
            if !tape.contains(&name) {
                tape.push(name);
            }
        }
    }

    let start = "start".to_string();
    let mut states = vec![start.clone()];
    let mut accepting = vec![start.clone()];
    let mut transitions = Vec::new();
    for b in &branches {
        for q in 0..b.m.states().len() {
            states.push(b.state(q));
            if b.m.is_accepting(q) {
                accepting.push(b.state(q));
            }
        }
    }
    let mut mids = BTreeSet::new();
    for b in &branches {
        for (q, y, a) in b.m.transitions() {
            let mid = b.mid(a.to, a.mv);
            transitions.push(NamedTransition::new(
                &b.state(q),
                &b.symbol(y),
                &mid,
                &b.symbol(a.write),
                a.mv,
            ));
            if mids.insert(mid.clone()) {
                states.push(mid.clone());
                if b.m.is_accepting(a.to) {
                    accepting.push(mid.clone());
                }
                for z in &tape {
                    transitions.push(NamedTransition::new(&mid, z, &b.state(a.to), z, a.mv));
                }
            }
        }
    }
    for x in &input {
        transitions.push(NamedTransition::new(
            &start,
            x,
            &branches[0].state(ml.initial()),
            x,
            Move::S,
        ));
        transitions.push(NamedTransition::new(
            &start,
            x,
            &branches[1].state(mz.initial()),
            x,
            Move::R,
        ));
    }
    TuringMachine::new(
        &format!("theta({},{})", ml.name, mz.name),
        states,
        input,
        tape,
        &start,
        &accepting,
        &transitions,
    )
}
