//! Exact row echelon forms over polynomials viewed as vectors in the word basis.

use std::collections::{BTreeMap, HashMap};

use crate::freealg::Polynomial;
use crate::scalar::Scalar;
use crate::words::Word;

/// A subspace spanned by inserted vectors, kept in echelon form keyed by leading word.
///
/// When provenance is tracked, every echelon row remembers how it combines the
/// originally inserted vectors, which makes [`Span::solve`] possible.
#[derive(Debug, Clone, Default)]
pub struct Span {
    rows: Vec<Polynomial>,
    pivots: HashMap<Word, usize>,
    provenance: Option<Vec<BTreeMap<usize, Scalar>>>,
    inserted: usize,
}

impl Span {
    pub fn new() -> Span {
        Span::default()
    }

    pub fn with_provenance() -> Span {
        Span {
            provenance: Some(Vec::new()),
            ..Span::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors passed to [`Span::insert`] so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// The monic echelon rows, in insertion order.
    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    pub fn pivot_words(&self) -> impl Iterator<Item = &Word> {
        self.pivots.keys()
    }

    /// Reduces `v` against the echelon rows; returns the remainder and, with
    /// provenance, the combination of inserted vectors that was subtracted.
    fn reduce_tracked(&self, v: &Polynomial) -> (Polynomial, BTreeMap<usize, Scalar>) {
        let mut work = v.clone();
        let mut rest = Polynomial::zero(v.field(), v.alphabet());
        let mut combo: BTreeMap<usize, Scalar> = BTreeMap::new();
        while let Some((w, c)) = work.pop_leading() {
            match self.pivots.get(&w) {
                Some(&i) => {
                    let row = &self.rows[i];
                    // Row is monic with leading word w; subtract c·row (its leading term is already gone).
                    let mut tail = row.clone();
                    tail.pop_leading();
                    work.add_scaled(&tail, &c.neg());
                    if let Some(prov) = &self.provenance {
                        for (k, x) in &prov[i] {
                            let add = x * &c;
                            let entry = combo.entry(*k).or_insert_with(|| c.zero_like());
                            *entry = &*entry + &add;
                        }
                    }
                }
                None => rest.add_term(w, c),
            }
        }
        combo.retain(|_, x| !x.is_zero());
        (rest, combo)
    }

    pub fn reduce(&self, v: &Polynomial) -> Polynomial {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &Polynomial) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &Polynomial) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (rest, combo) = self.reduce_tracked(v);
        if rest.is_zero() {
            return false;
        }
        let lead = rest.leading().expect("nonzero").1.inv().expect("nonzero leading coefficient");
        let row = rest.scale(&lead);
        if let Some(prov) = &mut self.provenance {
            // row = lead·(v − Σ combo_k v_k)
            let mut p: BTreeMap<usize, Scalar> = combo
                .into_iter()
                .map(|(k, x)| (k, (&x * &lead).neg()))
                .collect();
            p.insert(index, lead.clone());
            prov.push(p);
        }
        let w = row.leading_word().expect("nonzero").clone();
        self.pivots.insert(w, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Coefficients c_k with v = Σ c_k·(k-th inserted vector), if v lies in the span.
    ///
    /// Requires provenance tracking.
    pub fn solve(&self, v: &Polynomial) -> Option<BTreeMap<usize, Scalar>> {
        assert!(self.provenance.is_some(), "solve needs provenance tracking");
        let (rest, combo) = self.reduce_tracked(v);
        rest.is_zero().then_some(combo)
    }
}
