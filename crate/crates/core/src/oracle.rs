//! Rank computations on ideals, independent of any Gröbner basis machinery.
//!
//! The homogeneous component I_γ of the ideal generated by a set of
//! homogeneous polynomials is spanned by the products w·g·w′ of degree γ; its
//! dimension is an exact rank in the word basis.

use std::collections::HashMap;

use crate::freealg::Polynomial;
use crate::linalg::Span;
use crate::words::{words_of_degree, Alphabet, Degree, Word};

/// Caches the words of each degree over a prefix of the alphabet.
pub struct WordTable<'a> {
    alphabet: &'a Alphabet,
    letters: usize,
    cache: HashMap<Degree, Vec<Word>>,
}

impl<'a> WordTable<'a> {
    pub fn new(alphabet: &'a Alphabet, letters: usize) -> WordTable<'a> {
        WordTable {
            alphabet,
            letters,
            cache: HashMap::new(),
        }
    }

    pub fn words(&mut self, degree: &Degree) -> &[Word] {
        let (alphabet, letters) = (self.alphabet, self.letters);
        self.cache
            .entry(degree.clone())
            .or_insert_with(|| words_of_degree(alphabet, degree, letters))
    }
}

/// All products w·g·w′ of degree γ with w, w′ over the first `letters` letters.
pub fn ideal_products(generators: &[Polynomial], degree: &Degree, table: &mut WordTable<'_>) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for g in generators {
        let Some(dg) = g.degree() else { continue };
        let Some(rest) = degree.checked_sub(&dg) else { continue };
        for v in table.words(&rest).to_vec() {
            for i in 0..=v.len() {
                out.push(g.sandwich(&v.slice(0, i), &v.slice(i, v.len())));
            }
        }
    }
    out
}

/// dim I_γ for the ideal of k⟨Y⟩ generated by `generators`, Y the first `letters` letters.
pub fn ideal_dimension(generators: &[Polynomial], degree: &Degree, alphabet: &Alphabet, letters: usize) -> usize {
    let mut table = WordTable::new(alphabet, letters);
    let mut span = Span::new();
    for row in ideal_products(generators, degree, &mut table) {
        span.insert(&row);
    }
    span.rank()
}

/// dim (k⟨X⟩/I)_γ.
pub fn quotient_dimension(generators: &[Polynomial], degree: &Degree, alphabet: &Alphabet) -> usize {
    let words = words_of_degree(alphabet, degree, alphabet.size()).len();
    words - ideal_dimension(generators, degree, alphabet, alphabet.size())
}

/// dim (I ∩ k⟨Y⟩)_γ for Y the first `letters` letters, by eliminating the
/// coordinates outside ⟨Y⟩: rank(I_γ) − rank(projection of I_γ away from ⟨Y⟩).
pub fn intersection_dimension(generators: &[Polynomial], degree: &Degree, alphabet: &Alphabet, letters: usize) -> usize {
    let mut table = WordTable::new(alphabet, alphabet.size());
    let rows = ideal_products(generators, degree, &mut table);
    let outside = |w: &Word| w.letters().iter().any(|&x| x as usize >= letters);
    let mut full = Span::new();
    let mut projected = Span::new();
    for row in &rows {
        full.insert(row);
        projected.insert(&row.filter_words(outside));
    }
    full.rank() - projected.rank()
}
