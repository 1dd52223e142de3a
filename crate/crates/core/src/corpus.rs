//! A small corpus of machines used by tests, benches and the command line.

use crate::formats::parse_machine;
use crate::turing::TuringMachine;

const SOURCES: [(&str, &str); 7] = [
    ("m_right", include_str!("../corpus/m_right.tm")),
    ("m_a", include_str!("../corpus/m_a.tm")),
    ("m_guess", include_str!("../corpus/m_guess.tm")),
    ("m_never", include_str!("../corpus/m_never.tm")),
    ("m_stay", include_str!("../corpus/m_stay.tm")),
    ("m_bounce", include_str!("../corpus/m_bounce.tm")),
    ("m_mark", include_str!("../corpus/m_mark.tm")),
];

fn load(key: &str) -> TuringMachine {
    let (_, src) = SOURCES.iter().find(|(k, _)| *k == key).expect("corpus key");
    parse_machine(src).expect("corpus machines parse")
}

/// Source text of a corpus machine by file stem.
pub fn source(key: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(k, _)| *k == key).map(|(_, s)| *s)
}

pub fn keys() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(k, _)| *k)
}

pub fn all() -> Vec<TuringMachine> {
    keys().map(load).collect()
}

pub fn m_right() -> TuringMachine {
    load("m_right")
}

pub fn m_a() -> TuringMachine {
    load("m_a")
}

pub fn m_guess() -> TuringMachine {
    load("m_guess")
}

pub fn m_never() -> TuringMachine {
    load("m_never")
}

pub fn m_stay() -> TuringMachine {
    load("m_stay")
}

pub fn m_bounce() -> TuringMachine {
    load("m_bounce")
}

pub fn m_mark() -> TuringMachine {
    load("m_mark")
}
