//! Definition-level oracles and corpus helpers shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::sync::Arc;

use lyndon_pbw::braiding::Braiding;
use lyndon_pbw::cli::corpus_entry;
use lyndon_pbw::groebner::GroebnerBasis;
use lyndon_pbw::presentation::{parse_presentation, Presentation};
use lyndon_pbw::words::Word;

pub fn word(s: &str) -> Word {
    Word::from_letters(&s.bytes().map(|c| c - b'a').collect::<Vec<_>>())
}

/// Every word of exactly length `n` over `k` letters, letters as plain vectors.
pub fn all_words(k: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// The pseudo-lexicographic order straight from its definition: compare at the first
/// difference, and otherwise a proper prefix is the larger word.
pub fn oracle_lex(u: &[u8], v: &[u8]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        if a != b {
            return a.cmp(b);
        }
    }
    v.len().cmp(&u.len())
}

/// Lyndon in the "larger than every proper suffix" sense, decided through the classical
/// rotation criterion on the reversed alphabet: strictly smaller than all proper rotations.
pub fn oracle_is_lyndon(u: &[u8]) -> bool {
    if u.is_empty() {
        return false;
    }
    let rev: Vec<u8> = u.iter().map(|&c| u8::MAX - c).collect();
    (1..rev.len()).all(|i| {
        let rot: Vec<u8> = rev[i..].iter().chain(&rev[..i]).copied().collect();
        rev < rot
    })
}

/// Split at the lex-largest proper suffix, found by scanning every suffix.
pub fn oracle_shirshov(u: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let mut best = 1;
    for i in 2..u.len() {
        if oracle_lex(&u[i..], &u[best..]) == Ordering::Greater {
            best = i;
        }
    }
    (u[..best].to_vec(), u[best..].to_vec())
}

/// All factorizations into Lyndon words that are nondecreasing in the lex order.
pub fn oracle_decompositions(u: &[u8]) -> Vec<Vec<Vec<u8>>> {
    fn go(rest: &[u8], prev: Option<&[u8]>, acc: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for cut in 1..=rest.len() {
            let piece = &rest[..cut];
            if !oracle_is_lyndon(piece) {
                continue;
            }
            if prev.is_some_and(|p| oracle_lex(p, piece) == Ordering::Greater) {
                continue;
            }
            acc.push(piece.to_vec());
            go(&rest[cut..], Some(piece), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(u, None, &mut Vec::new(), &mut out);
    out
}

pub struct Loaded {
    pub pres: Presentation,
    pub gb: Arc<GroebnerBasis>,
    pub braiding: Arc<Braiding>,
}

pub fn load_text(text: &str, max_degree: Option<u32>) -> Loaded {
    let mut pres = parse_presentation(text).expect("presentation parses");
    if let Some(d) = max_degree {
        pres = pres.with_max_degree(d).expect("degree override");
    }
    let gb = GroebnerBasis::complete(&pres.field, &pres.alphabet, &pres.relations, pres.max_degree).expect("completion");
    let braiding = Braiding::new(&pres.field, &pres.alphabet, pres.bicharacter.clone()).expect("braiding");
    Loaded {
        pres,
        gb: Arc::new(gb),
        braiding: Arc::new(braiding),
    }
}

pub fn load(name: &str, max_degree: Option<u32>) -> Loaded {
    load_text(corpus_entry(name).expect("corpus entry"), max_degree)
}

/// The corpus entries, each listed once.
pub const CORPUS_NAMES: &[&str] = &[
    "quantum_plane",
    "a2_serre_q2",
    "x_pow_3_zeta",
    "x_pow_5_zeta",
    "x3_q2_negative",
    "heisenberg",
    "free2",
    "x_pow_2_f2",
    "x_pow_3_f3",
];
