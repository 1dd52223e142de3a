use std::collections::BTreeSet;

use super::{compile_k, filler, machine_alphabet, shuffle_machines, CompiledSystem};
use crate::error::{Error, Result};
use crate::grid::{Alphabet, Letter, PictureWindow, Square, State, TilingSystem};
use crate::turing::TuringMachine;

const NONE: State = State(0);
const SEEN: State = State(1);

/// True when some cell at row 2 or higher carries a letter other than `a`.
pub fn first_row_witness(p: &PictureWindow, a: Letter) -> bool {
    let g = p.grid();
    (2..g.rows()).any(|j| (0..g.cols()).any(|i| !p.is_border(i, j) && p.get(i, j) != a))
}

/// A deterministic Büchi system for the pictures that are not of the form
/// `σ^a`.
///
/// Each cell records whether a non-`a` letter occurs at or below-left of it
/// in rows 2 and up. The flag is an OR over the cell's left and lower
/// neighbours, so once a witness appears every later anti-diagonal carries
/// the accepting state `seen`, and without a witness no cell does.
pub fn complement_first_row_ts(sigma: &Alphabet) -> CompiledSystem {
    let a = filler(sigma);
    let hat: Vec<Letter> = sigma.hat().collect();
    let mut tiles = Vec::new();
    for &lbl in &hat {
        for &lbr in &hat {
            for &ltl in &hat {
                for &ltr in &hat {
                    let letters = Square::new(lbl, lbr, ltl, ltr);
                    for qbl in [NONE, SEEN] {
                        for qbr in [NONE, SEEN] {
                            for qtl in [NONE, SEEN] {
                                let border_ok = [(lbl, qbl), (lbr, qbr), (ltl, qtl)]
                                    .iter()
                                    .all(|&(l, q)| !l.is_border() || q == NONE);
                                if !border_ok {
                                    continue;
                                }
                                let qtr = if ltr.is_border() {
                                    NONE
                                } else {
                                    let witness = !lbr.is_border() && ltr != a;
                                    if qtl == SEEN || qbr == SEEN || witness {
                                        SEEN
                                    } else {
                                        NONE
                                    }
                                };
                                tiles.push(Square::new(
                                    (letters.bl, qbl),
                                    (letters.br, qbr),
                                    (letters.tl, qtl),
                                    (letters.tr, qtr),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    let system = TilingSystem::new(vec!["none".into(), "seen".into()], sigma.clone(), tiles)
        .expect("two declared states");
    CompiledSystem::new(
        system,
        [SEEN].into(),
        format!("complement-first-row({})", sigma.names().join(",")),
    )
}

/// Disjoint union: states tagged `1|` and `2|`, no tile mixes the tags.
pub fn union_ts(t1: &CompiledSystem, t2: &CompiledSystem) -> Result<CompiledSystem> {
    let (s1, s2) = (&t1.system, &t2.system);
    if s1.alphabet() != s2.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{{{}}} vs {{{}}}",
            s1.alphabet().names().join(","),
            s2.alphabet().names().join(",")
        )));
    }
    let n1 = s1.num_states() as u16;
    let names = s1
        .state_names()
        .iter()
        .map(|n| format!("1|{n}"))
        .chain(s2.state_names().iter().map(|n| format!("2|{n}")))
        .collect();
    let shift1 = |q: State| q;
    let shift2 = |q: State| State(q.0 + n1);
    let retag =
        |t: &Square<(Letter, State)>, f: &dyn Fn(State) -> State| t.map(|&(l, q)| (l, f(q)));
    let tiles: Vec<_> = s1
        .tiles()
        .iter()
        .map(|t| retag(t, &shift1))
        .chain(s2.tiles().iter().map(|t| retag(t, &shift2)))
        .collect();
    let accepting: BTreeSet<State> = t1
        .accepting
        .iter()
        .map(|&q| shift1(q))
        .chain(t2.accepting.iter().map(|&q| shift2(q)))
        .collect();
    let system = TilingSystem::new(names, s1.alphabet().clone(), tiles)?;
    Ok(CompiledSystem::new(
        system,
        accepting,
        format!("union({}; {})", t1.provenance, t2.provenance),
    ))
}

/// `K(m) ∪ complement_first_row_ts(Σ)`.
pub fn compile_h(m: &TuringMachine) -> CompiledSystem {
    let k = compile_k(m);
    let c = complement_first_row_ts(&machine_alphabet(m));
    let mut h = union_ts(&k, &c).expect("both branches share the machine alphabet");
    h.provenance = format!("H({})", m.name);
    h
}

/// `H(θ(mL, mZ))`.
pub fn compile_h_theta(ml: &TuringMachine, mz: &TuringMachine) -> Result<CompiledSystem> {
    Ok(compile_h(&shuffle_machines(ml, mz)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acceptance::{bounded_run_search, SearchConfig};
    use crate::corpus;
    use crate::grid::{is_deterministic, validate_run, Grid};
    use crate::reductions::{lift_word, word_letters};
    use crate::verdict::Category;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn window(rows: &[&str]) -> PictureWindow {
        let rows: Vec<Vec<Letter>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| if c == 'a' { Letter(1) } else { Letter(2) })
                    .collect()
            })
            .collect();
        PictureWindow::omega_prefix(rows.len(), &rows).unwrap()
    }

    #[test]
    fn complement_on_lifted_word() {
        let c = complement_first_row_ts(&ab());
        assert!(is_deterministic(&c.system));
        let p = window(&["babb", "aaaa", "aaaa", "aaaa"]);
        let v = bounded_run_search(&c.system, &p, &c.condition(), SearchConfig::default()).unwrap();
        assert_eq!(v.category(), Category::Unknown);
        assert_eq!(v.evidence.accepting, 0);
    }

    #[test]
    fn complement_evidence_past_witness() {
        let c = complement_first_row_ts(&ab());
        // b at column 2, row 3
        let p = window(&["aaaaa", "aaaaa", "abaaa", "aaaaa", "aaaaa"]);
        let v = bounded_run_search(&c.system, &p, &c.condition(), SearchConfig::default()).unwrap();
        assert_eq!(v.category(), Category::WitnessYes);
        let run = v.evidence.witness.unwrap().run;
        for j in 1..=5 {
            for i in 1..=5 {
                assert_eq!(*run.get(i, j) == SEEN, i >= 2 && j >= 3, "({i},{j})");
            }
        }
    }

    #[test]
    fn depth_one_has_no_evidence() {
        let c = complement_first_row_ts(&ab());
        for p in [window(&["a"]), window(&["b"])] {
            let v =
                bounded_run_search(&c.system, &p, &c.condition(), SearchConfig::default()).unwrap();
            assert_eq!(v.evidence.accepting, 0);
        }
    }

    #[test]
    fn union_tags_are_disjoint() {
        let c = complement_first_row_ts(&ab());
        let u = union_ts(&c, &c).unwrap();
        assert_eq!(u.system.num_states(), 4);
        assert_eq!(u.system.tiles().len(), 2 * c.system.tiles().len());
        for t in u.system.tiles() {
            let tags: BTreeSet<bool> = t.entries().iter().map(|(_, q)| q.0 >= 2).collect();
            assert_eq!(tags.len(), 1);
        }
        let p = window(&["ab", "aa"]);
        let mixed = Grid::from_fn(3, 3, |i, _| State(if i == 0 { 0 } else { 2 }));
        assert!(!validate_run(&u.system, &p, &mixed).unwrap());
    }

    #[test]
    fn union_alphabet_mismatch() {
        let c1 = complement_first_row_ts(&ab());
        let c2 = complement_first_row_ts(&Alphabet::new(["a", "c"]).unwrap());
        assert!(matches!(
            union_ts(&c1, &c2),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn union_with_empty_behaves_as_first() {
        let c = complement_first_row_ts(&ab());
        let empty = CompiledSystem::new(c.system.with_tiles([]).unwrap(), BTreeSet::new(), "empty");
        let u = union_ts(&c, &empty).unwrap();
        for p in [window(&["ab", "ab"]), window(&["bb", "aa"])] {
            let a =
                bounded_run_search(&c.system, &p, &c.condition(), SearchConfig::default()).unwrap();
            let b =
                bounded_run_search(&u.system, &p, &u.condition(), SearchConfig::default()).unwrap();
            assert_eq!(a.category(), b.category());
        }
    }

    #[test]
    fn h_uses_complement_branch_off_first_row() {
        let m = corpus::m_a();
        let h = compile_h(&m);
        let p = window(&["bbb", "aba", "aaa"]);
        let v = bounded_run_search(&h.system, &p, &h.condition(), SearchConfig::default()).unwrap();
        assert_eq!(v.category(), Category::WitnessYes);
        // on a lifted word that m_a rejects only the complement branch is left, with no evidence
        let w = word_letters(&m, &m.word("abaa").unwrap()).unwrap();
        let lifted = lift_word(h.system.alphabet(), &w, 4).unwrap();
        let v = bounded_run_search(&h.system, &lifted, &h.condition(), SearchConfig::default())
            .unwrap();
        assert_eq!(v.category(), Category::Unknown);
        assert_eq!(v.evidence.accepting, 0);
    }

    #[test]
    fn h_of_right_mover_runs_everywhere() {
        let m = corpus::m_right();
        let h = compile_h(&m);
        for rows in [["aa", "aa"], ["ba", "aa"], ["ab", "ba"]] {
            let v = bounded_run_search(
                &h.system,
                &window(&rows),
                &h.condition(),
                SearchConfig::default(),
            )
            .unwrap();
            assert_eq!(v.category(), Category::WitnessYes);
        }
    }
}
