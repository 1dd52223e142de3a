//! Computable reductions between machines, words and tiling systems.

mod k;
mod shuffle;
mod union;

use std::collections::BTreeSet;

pub use k::{compile_k, decode_rows, machine_alphabet, word_letters};
pub use shuffle::{deinterleave, shuffle_machines, shuffle_words};
pub use union::{compile_h, compile_h_theta, complement_first_row_ts, first_row_witness, union_ts};

use crate::acceptance::AcceptanceCondition;
use crate::error::{Error, Result};
use crate::grid::{Alphabet, Letter, PictureWindow, State, TilingSystem};

/// A tiling system with a global Büchi condition and a record of where it
/// came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledSystem {
    pub system: TilingSystem,
    pub accepting: BTreeSet<State>,
    pub provenance: String,
}

impl CompiledSystem {
    pub fn new(
        system: TilingSystem,
        accepting: BTreeSet<State>,
        provenance: impl Into<String>,
    ) -> Self {
        CompiledSystem {
            system,
            accepting,
            provenance: provenance.into(),
        }
    }

    pub fn condition(&self) -> AcceptanceCondition {
        AcceptanceCondition::buchi(self.accepting.iter().copied())
    }
}

/// The letter filling rows 2 and up of `σ^a`: `a` when present, otherwise
/// the first letter.
pub fn filler(sigma: &Alphabet) -> Letter {
    sigma.letter("a").unwrap_or(Letter(1))
}

/// The depth-`n` corner of `σ^a`: row 1 is `σ`, every higher row is `a`.
pub fn lift_word(sigma: &Alphabet, prefix: &[Letter], n: usize) -> Result<PictureWindow> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    if prefix.len() < n {
        return Err(Error::PrefixTooShort {
            required: n,
            got: prefix.len(),
        });
    }
    let a = filler(sigma);
    let mut rows = vec![prefix[..n].to_vec()];
    rows.extend((1..n).map(|_| vec![a; n]));
    PictureWindow::omega_prefix(n, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifted_rows() {
        let sigma = Alphabet::new(["a", "b"]).unwrap();
        let (a, b) = (Letter(1), Letter(2));
        let p = lift_word(&sigma, &[b, a, b, b], 3).unwrap();
        assert_eq!(
            p.interior_rows(),
            vec![vec![b, a, b], vec![a; 3], vec![a; 3]]
        );
        assert_eq!(p.get(0, 2), Letter::BORDER);
        let all_a = lift_word(&sigma, &[a; 3], 3).unwrap();
        assert!(all_a.interior_rows().iter().flatten().all(|&l| l == a));
    }

    #[test]
    fn short_prefix_rejected() {
        let sigma = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(
            lift_word(&sigma, &[Letter(1)], 3),
            Err(Error::PrefixTooShort {
                required: 3,
                got: 1
            })
        );
        assert_eq!(lift_word(&sigma, &[], 0), Err(Error::NonPositive));
    }
}
