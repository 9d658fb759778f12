mod common;

use std::cmp::Ordering;

use common::*;
use lyndon_pbw::braiding::{qbinom, Bicharacter, BracketMode};
use lyndon_pbw::coalg::{biideal_check, Comultiplication};
use lyndon_pbw::groebner::{DegreeSelector, GroebnerBasis, WordSet};
use lyndon_pbw::oracle::quotient_dimension;
use lyndon_pbw::pbw::PbwData;
use lyndon_pbw::scalar::{Field, Scalar};
use lyndon_pbw::words::{
    degrees_up_to, enumerate, is_lyndon, lex_cmp, lyndon_decompose, shirshov, Alphabet, EnumerationMode, Word,
};
use std::sync::Arc;

#[test]
fn lex_order_matches_definition() {
    let words: Vec<Vec<u8>> = (0..=4).flat_map(|n| all_words(3, n)).collect();
    for u in &words {
        for v in &words {
            let got = lex_cmp(&Word::from_letters(u), &Word::from_letters(v));
            assert_eq!(got, oracle_lex(u, v), "{u:?} vs {v:?}");
        }
    }
}

#[test]
fn lyndon_engine_matches_brute_force() {
    for (k, max) in [(2u8, 8usize), (3, 5)] {
        for n in 1..=max {
            for u in all_words(k, n) {
                let w = Word::from_letters(&u);
                let lyndon = oracle_is_lyndon(&u);
                assert_eq!(is_lyndon(&w), lyndon, "{u:?}");
                if lyndon && n >= 2 {
                    let (l, r) = shirshov(&w).unwrap();
                    let (ol, or) = oracle_shirshov(&u);
                    assert_eq!((l.letters(), r.letters()), (&ol[..], &or[..]), "{u:?}");
                    assert!(oracle_is_lyndon(&ol) && oracle_is_lyndon(&or));
                }
                let decs = oracle_decompositions(&u);
                assert_eq!(decs.len(), 1, "{u:?} has {} Lyndon decompositions", decs.len());
                let got: Vec<Vec<u8>> = lyndon_decompose(&w).iter().map(|a| a.letters().to_vec()).collect();
                assert_eq!(got, decs[0], "{u:?}");
            }
        }
    }
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[test]
fn lyndon_counts_follow_necklace_formula() {
    for k in 1..=3usize {
        let names: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let alphabet = Alphabet::length_graded(&names);
        let lyndon = enumerate(&alphabet, EnumerationMode::LyndonWords, 8);
        for n in 1..=8u32 {
            let expected: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| mobius(d) * (k as i64).pow(n / d))
                .sum::<i64>()
                / n as i64;
            let got = lyndon.iter().filter(|w| w.len() == n as usize).count() as i64;
            assert_eq!(got, expected, "k={k} n={n}");
        }
    }
}

#[test]
fn irreducible_words_count_the_quotient() {
    for name in CORPUS_NAMES {
        let l = load(name, Some(5));
        let alphabet = &l.pres.alphabet;
        for d in degrees_up_to(alphabet, 5, alphabet.size()) {
            let irreducible = l
                .gb
                .irreducible_words(WordSet::All, &DegreeSelector::Exact(d.clone()))
                .unwrap()
                .len();
            let oracle = quotient_dimension(&l.pres.relations, &d, alphabet);
            assert_eq!(irreducible, oracle, "{name} at {d}");
        }
    }
}

/// Gaussian binomials from the q-Pascal rule C(n, i) = C(n-1, i-1) + q^i C(n-1, i).
fn gaussian_by_recursion(n: u32, i: u32, q: &Scalar, field: &Field) -> Scalar {
    let mut table = vec![vec![field.zero(); n as usize + 1]; n as usize + 1];
    for m in 0..=n as usize {
        table[m][0] = field.one();
        for j in 1..=m {
            let left = table[m - 1][j - 1].clone();
            let right = if j < m { table[m - 1][j].clone() } else { field.zero() };
            table[m][j] = left.try_add(&q.pow(j as i64).unwrap().try_mul(&right).unwrap()).unwrap();
        }
    }
    table[n as usize][i as usize].clone()
}

#[test]
fn qbinom_matches_pascal_recursion() {
    let fields = [Field::rationals(), Field::cyclotomic(5).unwrap(), Field::prime(7).unwrap()];
    for field in &fields {
        let qs = match field.zeta() {
            Some(z) => vec![z.clone(), z.pow(2).unwrap(), field.from_i64(-1), field.from_i64(3)],
            None => vec![field.from_i64(2), field.from_i64(-1), field.from_i64(1), field.from_i64(3)],
        };
        for q in &qs {
            for n in 0..=7 {
                for i in 0..=n {
                    assert_eq!(
                        qbinom(n, i, q, field).unwrap(),
                        gaussian_by_recursion(n, i, q, field),
                        "n={n} i={i} q={q}"
                    );
                }
            }
        }
    }
}

fn one_letter(field: &Field, q: Scalar, n: u32) -> (Arc<GroebnerBasis>, Comultiplication, PbwData) {
    let alphabet = Arc::new(Alphabet::length_graded(&["x"]));
    let chi = Bicharacter::new(field, vec![vec![q]]).unwrap();
    let rel = lyndon_pbw::freealg::Polynomial::word(field, &alphabet, Word::letter(0).pow(n as usize));
    let gb = Arc::new(GroebnerBasis::complete(field, &alphabet, &[rel], n + 3).unwrap());
    let braiding = Arc::new(lyndon_pbw::braiding::Braiding::new(field, &alphabet, chi.clone()).unwrap());
    let c = Comultiplication::standard(field, &alphabet, chi);
    let p = PbwData::new(gb.clone(), braiding, BracketMode::Tau).unwrap();
    (gb, c, p)
}

#[test]
fn one_letter_biideal_agrees_with_root_of_unity_check() {
    let mut cases: Vec<(Field, Scalar)> = Vec::new();
    let q = Field::rationals();
    for c in [2, -1, 3, 1] {
        cases.push((q.clone(), q.from_i64(c)));
    }
    for m in [3u32, 4, 5, 6] {
        let f = Field::cyclotomic(m).unwrap();
        let z = f.zeta().unwrap();
        for j in 1..m as i64 {
            cases.push((f.clone(), z.pow(j).unwrap()));
        }
    }
    for p in [2u64, 3, 5] {
        let f = Field::prime(p).unwrap();
        for c in 1..p as i64 {
            cases.push((f.clone(), f.from_i64(c)));
        }
    }
    let mut agreeing_passes = 0;
    for (field, q) in &cases {
        for n in 2..=6u32 {
            let (gb, c, p) = one_letter(field, q.clone(), n);
            let biideal = biideal_check(&c, &gb).unwrap().passed();
            let vanishing = (1..n).all(|i| qbinom(n, i, q, field).unwrap().is_zero());
            let roots = p.root_of_unity_check().passed();
            assert_eq!(biideal, vanishing, "{} q={q} n={n}", field.spec());
            assert_eq!(biideal, roots, "{} q={q} n={n}", field.spec());
            agreeing_passes += usize::from(biideal);
        }
    }
    assert!(agreeing_passes > 10);
}

#[test]
fn glex_refines_degree_then_lex() {
    let alphabet = Alphabet::standard(&["a", "b"]);
    let words: Vec<Vec<u8>> = (0..=4).flat_map(|n| all_words(2, n)).collect();
    for u in &words {
        for v in &words {
            let (wu, wv) = (Word::from_letters(u), Word::from_letters(v));
            let got = lyndon_pbw::words::glex_cmp(&alphabet, &wu, &wv);
            let (du, dv) = (alphabet.degree(&wu), alphabet.degree(&wv));
            let expected = du
                .total()
                .cmp(&dv.total())
                .then_with(|| du.components().cmp(dv.components()))
                .then_with(|| oracle_lex(u, v));
            assert_eq!(got, expected, "{u:?} vs {v:?}");
            if got == Ordering::Less {
                for x in 0..2u8 {
                    let l = Word::letter(x);
                    assert_eq!(lyndon_pbw::words::glex_cmp(&alphabet, &l.concat(&wu), &l.concat(&wv)), Ordering::Less);
                    assert_eq!(lyndon_pbw::words::glex_cmp(&alphabet, &wu.concat(&l), &wv.concat(&l)), Ordering::Less);
                }
            }
        }
    }
}
