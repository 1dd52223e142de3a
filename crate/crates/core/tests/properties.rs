mod common;

use omegatile::acceptance::{bounded_run_search, AcceptanceCondition, SearchConfig};
use omegatile::corpus;
use omegatile::encodings::{
    decode_run, encode_run, pair, phi, phi_inverse, row_major_decode, row_major_stream, unpair,
    word_distance,
};
use omegatile::formats::{
    parse_machine, parse_picture, parse_tiling, write_machine, write_picture, write_tiling,
    TilingFile,
};
use omegatile::grid::{Grid, Letter, PictureWindow, State};
use omegatile::reductions::{deinterleave, shuffle_words};
use omegatile::turing::{tm_run_bounded, TraceEnd};
use omegatile::verdict::Category;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{ab, brute_force_runs, random_system, random_window};

fn window(n: usize) -> impl Strategy<Value = PictureWindow> {
    prop::collection::vec(1u16..=2, n * n).prop_map(move |v| {
        let rows: Vec<Vec<Letter>> = v
            .chunks(n)
            .map(|r| r.iter().map(|&l| Letter(l)).collect())
            .collect();
        PictureWindow::omega_prefix(n, &rows).unwrap()
    })
}

proptest! {
    #[test]
    fn pairing_is_a_bijection(i in 1u64..1_000_000, j in 1u64..1_000_000) {
        let k = pair(i, j).unwrap();
        prop_assert_eq!(unpair(k).unwrap(), (i, j));
    }

    #[test]
    fn row_major_round_trip(p in (1usize..=6).prop_flat_map(window)) {
        let n = p.depth().unwrap();
        prop_assert_eq!(row_major_decode(&row_major_stream(&p).unwrap(), n).unwrap(), p.clone());
        prop_assert_eq!(phi_inverse(&phi(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn run_code_round_trip(n in 1usize..=5, q in 1usize..=9, seed in any::<u64>()) {
        let mut x = seed;
        let run = Grid::from_fn(n + 1, n + 1, |_, _| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            State(((x >> 33) % q as u64) as u16)
        });
        let code = encode_run(&run, q, None).unwrap();
        for ((i, j), s) in decode_run(&code, q).unwrap() {
            prop_assert_eq!(*run.get(i, j), s);
        }
    }

    #[test]
    fn word_distance_is_symmetric(u in prop::collection::vec(0u8..3, 1..10), flip in 0usize..10) {
        let mut v = u.clone();
        let k = flip % u.len();
        v[k] = (v[k] + 1) % 3;
        let d = word_distance(&u, &v).unwrap();
        prop_assert_eq!(d, word_distance(&v, &u).unwrap());
        prop_assert_eq!(d.window, (-(k as f64)).exp2());
    }

    #[test]
    fn shuffle_then_split(x in prop::collection::vec("[ab]", 0..8)) {
        let y: Vec<String> = x.iter().rev().cloned().collect();
        let w = shuffle_words(&x, &y).unwrap();
        prop_assert_eq!(deinterleave(&w), (x, y));
    }

    #[test]
    fn picture_text_round_trip(p in (1usize..=5).prop_flat_map(window)) {
        let text = write_picture(&p, &ab());
        prop_assert_eq!(parse_picture(&text, &ab()).unwrap(), p);
    }

    #[test]
    fn search_finds_a_run_exactly_when_one_exists(seed in any::<u64>(), n in 1usize..=2, density in 0.5f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ts = random_system(&mut rng, 2, density);
        let p = random_window(&mut rng, n);
        let cond = AcceptanceCondition::e([State(0)]);
        let v = bounded_run_search(&ts, &p, &cond, SearchConfig::default()).unwrap();
        let runs = brute_force_runs(&ts, &p);
        prop_assert_eq!(v.category() == Category::CertifiedNo, runs.is_empty());
        if let Some(w) = &v.evidence.witness {
            prop_assert!(runs.contains(&w.run));
        }
    }

    #[test]
    fn tiling_text_round_trip(seed in any::<u64>(), density in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let file = TilingFile { system: random_system(&mut rng, 2, density), accepting: None, provenance: None };
        let text = write_tiling(&file);
        prop_assert_eq!(parse_tiling(&text).unwrap(), file);
    }

    #[test]
    fn traces_have_k_plus_one_configurations(word in "[ab]{1,8}", k in 1usize..=6) {
        for m in corpus::all() {
            let w = m.word(&word).unwrap();
            for t in tm_run_bounded(&m, &w, k, 100_000).unwrap() {
                if t.end == TraceEnd::Completed {
                    prop_assert_eq!(t.steps.len(), k + 1);
                } else {
                    prop_assert!(t.steps.len() <= k + 1);
                }
            }
        }
    }
}

#[test]
fn corpus_machines_survive_text_round_trip() {
    for m in corpus::all() {
        let again = parse_machine(&write_machine(&m)).unwrap();
        assert_eq!(write_machine(&again), write_machine(&m));
    }
}
