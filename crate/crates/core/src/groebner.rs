//! Degree-truncated Gröbner bases of homogeneous two-sided ideals with respect to glex.
//!
//! Completion runs layer by layer in total degree. The S-polynomials of one
//! layer only involve basis elements of strictly smaller degree, so each layer
//! is reduced against a finished lower part and then interreduced on its own.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::freealg::{PolyError, Polynomial};
use crate::linalg::Span;
use crate::oracle;
use crate::scalar::Field;
use crate::words::{
    degrees_up_to, glex_cmp, is_lyndon, lyndon_powers, words_of_degree, Alphabet, Degree, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),
    #[error("total degree {degree} exceeds the bound {bound}")]
    DegreeOverBound { degree: u32, bound: u32 },
    #[error("the basis is not reduced")]
    NotReduced,
    #[error("word {0} is not a Lyndon word")]
    NotLyndon(String),
    #[error("letter subset is not an initial segment of the alphabet")]
    NotClosed,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Height of an irreducible Lyndon word within the truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(u32),
    /// No power up to the bound is reducible; `at_least` is the first exponent beyond the bound.
    Unknown { at_least: u32 },
}

impl Height {
    pub fn finite(self) -> Option<u32> {
        match self {
            Height::Finite(n) => Some(n),
            Height::Unknown { .. } => None,
        }
    }

    /// Whether exponent r is admissible in a PBW monomial (r below a finite height).
    pub fn admits(self, r: u32) -> bool {
        match self {
            Height::Finite(n) => r < n,
            Height::Unknown { .. } => true,
        }
    }
}

impl std::fmt::Display for Height {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Height::Finite(n) => write!(f, "{n}"),
            Height::Unknown { at_least } => write!(f, "unknown(>={at_least})"),
        }
    }
}

/// Which irreducible words to list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordSet {
    /// Words avoiding every obstruction.
    All,
    /// Irreducible Lyndon words.
    Lyndon,
    /// Words whose grouped Lyndon decomposition w_1^{r_1}…w_m^{r_m} has every w_i^{r_i} irreducible.
    Restricted,
}

/// A single degree or all degrees up to a total-degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeSelector {
    Exact(Degree),
    UpTo(u32),
}

impl DegreeSelector {
    fn total(&self) -> u32 {
        match self {
            DegreeSelector::Exact(d) => d.total(),
            DegreeSelector::UpTo(n) => *n,
        }
    }
}

/// Irreducible Lyndon words, obstructions and heights up to the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LyndonData {
    pub irreducible_lyndon: Vec<Word>,
    pub obstructions: Vec<Word>,
    pub heights: Vec<(Word, Height)>,
}

/// A reduced, monic, homogeneous Gröbner basis certified complete up to total degree `bound`.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    field: Field,
    alphabet: Arc<Alphabet>,
    elements: Vec<Polynomial>,
    tails: Vec<Polynomial>,
    leading: HashMap<Word, usize>,
    lead_lengths: Vec<usize>,
    bound: u32,
    reduced: bool,
}

impl GroebnerBasis {
    /// Truncated Buchberger completion of homogeneous relations up to total degree `bound`.
    pub fn complete(
        field: &Field,
        alphabet: &Arc<Alphabet>,
        relations: &[Polynomial],
        bound: u32,
    ) -> Result<GroebnerBasis, GroebnerError> {
        let mut by_degree: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            if !r.is_homogeneous() {
                return Err(GroebnerError::InhomogeneousRelation(r.to_expr()));
            }
            let d = r.max_total_degree();
            if d > bound {
                return Err(GroebnerError::DegreeOverBound { degree: d, bound });
            }
            by_degree.entry(d).or_default().push(r.clone());
        }
        let mut gb = GroebnerBasis::from_parts(field, alphabet, Vec::new(), bound);
        for n in 0..=bound {
            let mut candidates: Vec<(Word, Polynomial)> = by_degree
                .remove(&n)
                .unwrap_or_default()
                .into_iter()
                .map(|r| (r.leading_word().expect("nonzero").clone(), r))
                .collect();
            candidates.extend(gb.overlaps_of_total_degree(n));
            candidates.sort_by(|x, y| glex_cmp(alphabet, &x.0, &y.0));
            let reduced: Vec<Polynomial> = candidates
                .par_iter()
                .map(|(_, c)| gb.reduce(c))
                .collect();
            let layer = interreduce_layer(&reduced);
            if !layer.is_empty() {
                let mut elements = gb.elements.clone();
                elements.extend(layer);
                gb = GroebnerBasis::from_parts(field, alphabet, elements, bound);
            }
        }
        gb.reduced = true;
        Ok(gb)
    }

    /// Wraps already computed elements; `reduced` is determined by inspection.
    pub fn from_elements(
        field: &Field,
        alphabet: &Arc<Alphabet>,
        elements: Vec<Polynomial>,
        bound: u32,
    ) -> GroebnerBasis {
        let mut gb = GroebnerBasis::from_parts(field, alphabet, elements, bound);
        gb.reduced = gb.check_reduced();
        gb
    }

    fn from_parts(field: &Field, alphabet: &Arc<Alphabet>, mut elements: Vec<Polynomial>, bound: u32) -> GroebnerBasis {
        elements.sort_by(|f, g| {
            glex_cmp(
                alphabet,
                f.leading_word().expect("nonzero"),
                g.leading_word().expect("nonzero"),
            )
        });
        let mut leading = HashMap::new();
        let mut tails = Vec::new();
        let mut lengths = BTreeSet::new();
        for (i, e) in elements.iter().enumerate() {
            let mut tail = e.monic();
            let (w, _) = tail.pop_leading().expect("nonzero");
            lengths.insert(w.len());
            leading.insert(w, i);
            tails.push(tail);
        }
        GroebnerBasis {
            field: field.clone(),
            alphabet: alphabet.clone(),
            elements,
            tails,
            leading,
            lead_lengths: lengths.into_iter().collect(),
            bound,
            reduced: false,
        }
    }

    fn check_reduced(&self) -> bool {
        let monic = self
            .elements
            .iter()
            .all(|e| e.leading().map(|(_, c)| c.is_one()).unwrap_or(false));
        let minimal = self.elements.iter().enumerate().all(|(i, e)| {
            let w = e.leading_word().expect("nonzero");
            self.factor_occurrence(w, Some(i)).is_none()
        });
        let tails_irreducible = self
            .tails
            .iter()
            .all(|t| t.words().all(|w| !self.is_reducible(w)));
        monic && minimal && tails_irreducible && self.leading.len() == self.elements.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Leading words of the elements, ascending in glex.
    pub fn leading_words(&self) -> Vec<Word> {
        self.elements
            .iter()
            .map(|e| e.leading_word().expect("nonzero").clone())
            .collect()
    }

    /// All overlap S-polynomials whose overlap word has total degree n.
    fn overlaps_of_total_degree(&self, n: u32) -> Vec<(Word, Polynomial)> {
        let mut out = Vec::new();
        let leads = self.leading_words();
        for (i, li) in leads.iter().enumerate() {
            for (j, lj) in leads.iter().enumerate() {
                for k in 1..li.len().min(lj.len()) {
                    if li.letters()[li.len() - k..] != lj.letters()[..k] {
                        continue;
                    }
                    let p = li.slice(0, li.len() - k);
                    let t = lj.slice(k, lj.len());
                    let w = li.concat(&t);
                    if self.alphabet.total_degree(&w) != n {
                        continue;
                    }
                    let gi = self.elements[i].sandwich(&Word::empty(), &t);
                    let gj = self.elements[j].sandwich(&p, &Word::empty());
                    out.push((w, &gi - &gj));
                }
            }
        }
        out
    }

    /// First occurrence of a leading word inside `w`, skipping element `skip` when
    /// it would match the whole word.
    fn factor_occurrence(&self, w: &Word, skip: Option<usize>) -> Option<(usize, usize)> {
        let letters = w.letters();
        for start in 0..letters.len() {
            for &l in &self.lead_lengths {
                if start + l > letters.len() {
                    break;
                }
                let factor = Word::from_letters(&letters[start..start + l]);
                if let Some(&i) = self.leading.get(&factor) {
                    if Some(i) == skip && l == letters.len() {
                        continue;
                    }
                    return Some((start, i));
                }
            }
        }
        None
    }

    /// Whether `w` contains a leading word as a factor.
    pub fn is_reducible(&self, w: &Word) -> bool {
        self.factor_occurrence(w, None).is_some()
    }

    /// Whether some leading word is a suffix of `w` (used when words grow letter by letter).
    fn has_leading_suffix(&self, w: &Word) -> bool {
        self.lead_lengths.iter().any(|&l| {
            l <= w.len() && self.leading.contains_key(&w.slice(w.len() - l, w.len()))
        })
    }

    /// Full reduction without the degree check.
    fn reduce(&self, f: &Polynomial) -> Polynomial {
        let mut work = f.clone();
        let mut out = Polynomial::zero(f.field(), f.alphabet());
        while let Some((w, c)) = work.pop_leading() {
            match self.factor_occurrence(&w, None) {
                Some((pos, i)) => {
                    let l = self.elements[i].leading_word().expect("nonzero").len();
                    let left = w.slice(0, pos);
                    let right = w.slice(pos + l, w.len());
                    work.add_scaled(&self.tails[i].sandwich(&left, &right), &c.neg());
                }
                None => out.add_term(w, c),
            }
        }
        out
    }

    /// The unique irreducible representative of f + I.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        let d = f.max_total_degree();
        if d > self.bound {
            return Err(GroebnerError::DegreeOverBound {
                degree: d,
                bound: self.bound,
            });
        }
        Ok(self.reduce(f))
    }

    /// Normal form of a single word.
    pub fn normal_form_word(&self, w: &Word) -> Result<Polynomial, GroebnerError> {
        self.normal_form(&Polynomial::word(&self.field, &self.alphabet, w.clone()))
    }

    fn check_selector(&self, sel: &DegreeSelector) -> Result<(), GroebnerError> {
        if sel.total() > self.bound {
            return Err(GroebnerError::DegreeOverBound {
                degree: sel.total(),
                bound: self.bound,
            });
        }
        Ok(())
    }

    /// Irreducible words of the requested kind over the first `letters` letters, ascending in glex.
    pub fn irreducible_words_over(
        &self,
        set: WordSet,
        selector: &DegreeSelector,
        letters: usize,
    ) -> Result<Vec<Word>, GroebnerError> {
        self.check_selector(selector)?;
        let mut out = match set {
            WordSet::All | WordSet::Lyndon => {
                let mut found = Vec::new();
                let mut stack = vec![(Word::empty(), Degree::zero(self.alphabet.theta()))];
                while let Some((w, d)) = stack.pop() {
                    let keep = match selector {
                        DegreeSelector::Exact(g) => d == *g,
                        DegreeSelector::UpTo(_) => true,
                    };
                    if keep && (set == WordSet::All || is_lyndon(&w)) {
                        found.push(w.clone());
                    }
                    for x in 0..letters as u8 {
                        let nd = d.add(self.alphabet.letter_degree(x));
                        let fits = match selector {
                            DegreeSelector::Exact(g) => nd.fits_in(g),
                            DegreeSelector::UpTo(n) => nd.total() <= *n,
                        };
                        if !fits {
                            continue;
                        }
                        let mut next = w.clone();
                        next.push(x);
                        if !self.has_leading_suffix(&next) {
                            stack.push((next, nd));
                        }
                    }
                }
                found
            }
            WordSet::Restricted => {
                let candidates = match selector {
                    DegreeSelector::Exact(g) => words_of_degree(&self.alphabet, g, letters),
                    DegreeSelector::UpTo(n) => degrees_up_to(&self.alphabet, *n, letters)
                        .iter()
                        .flat_map(|g| words_of_degree(&self.alphabet, g, letters))
                        .collect(),
                };
                candidates
                    .into_iter()
                    .filter(|w| {
                        lyndon_powers(w)
                            .iter()
                            .all(|(atom, r)| !self.is_reducible(&atom.pow(*r)))
                    })
                    .collect()
            }
        };
        out.sort_by(|u, v| glex_cmp(&self.alphabet, u, v));
        Ok(out)
    }

    pub fn irreducible_words(&self, set: WordSet, selector: &DegreeSelector) -> Result<Vec<Word>, GroebnerError> {
        self.irreducible_words_over(set, selector, self.alphabet.size())
    }

    /// The obstructions (leading words of the reduced basis), ascending in glex.
    pub fn obstructions(&self) -> Result<Vec<Word>, GroebnerError> {
        if !self.reduced {
            return Err(GroebnerError::NotReduced);
        }
        Ok(self.leading_words())
    }

    /// Least n with u^n reducible, or `Unknown` once powers leave the bound.
    pub fn height(&self, u: &Word) -> Result<Height, GroebnerError> {
        if !is_lyndon(u) {
            return Err(GroebnerError::NotLyndon(self.alphabet.format_word(u)));
        }
        let mut n = 1u32;
        loop {
            let p = u.pow(n as usize);
            if self.alphabet.total_degree(&p) > self.bound {
                return Ok(Height::Unknown { at_least: n });
            }
            if self.is_reducible(&p) {
                return Ok(Height::Finite(n));
            }
            n += 1;
        }
    }

    pub fn lyndon_data(&self) -> Result<LyndonData, GroebnerError> {
        let irreducible_lyndon = self.irreducible_words(WordSet::Lyndon, &DegreeSelector::UpTo(self.bound))?;
        let heights = irreducible_lyndon
            .iter()
            .map(|u| Ok((u.clone(), self.height(u)?)))
            .collect::<Result<Vec<_>, GroebnerError>>()?;
        Ok(LyndonData {
            obstructions: self.obstructions()?,
            irreducible_lyndon,
            heights,
        })
    }

    /// Elements supported in ⟨Y⟩ for Y the first `letters` letters, and whether
    /// they generate I ∩ k⟨Y⟩ in every degree up to the bound (by the rank oracle).
    pub fn intersect_subalgebra(&self, letters: usize) -> Result<(GroebnerBasis, bool), GroebnerError> {
        if letters > self.alphabet.size() {
            return Err(GroebnerError::NotClosed);
        }
        let inside = |p: &Polynomial| {
            p.words()
                .all(|w| w.letters().iter().all(|&x| (x as usize) < letters))
        };
        let candidate: Vec<Polynomial> = self.elements.iter().filter(|e| inside(e)).cloned().collect();
        let candidate = GroebnerBasis::from_elements(&self.field, &self.alphabet, candidate, self.bound);
        if letters == self.alphabet.size() {
            return Ok((candidate, true));
        }
        let degrees = degrees_up_to(&self.alphabet, self.bound, letters);
        let verified = degrees.par_iter().all(|g| {
            let lhs = oracle::ideal_dimension(&candidate.elements, g, &self.alphabet, letters);
            let rhs = oracle::intersection_dimension(&self.elements, g, &self.alphabet, letters);
            lhs == rhs
        });
        Ok((candidate, verified))
    }
}

/// Echelon form of one degree layer, then full interreduction so no pivot occurs in another row.
fn interreduce_layer(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut span = Span::new();
    for p in polys {
        span.insert(p);
    }
    let mut rows: Vec<Polynomial> = span.rows().to_vec();
    if rows.is_empty() {
        return rows;
    }
    let alphabet = rows[0].alphabet().clone();
    rows.sort_by(|f, g| {
        glex_cmp(
            &alphabet,
            f.leading_word().expect("nonzero"),
            g.leading_word().expect("nonzero"),
        )
    });
    let mut finished = Span::new();
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut tail = row.clone();
        let (w, c) = tail.pop_leading().expect("nonzero");
        let mut r = finished.reduce(&tail);
        r.add_term(w, c);
        finished.insert(&r);
        out.push(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use num_rational::BigRational;

    fn w(s: &str) -> Word {
        Word::from_letters(&s.bytes().map(|c| c - b'a').collect::<Vec<_>>())
    }

    fn poly(f: &Field, a: &Arc<Alphabet>, terms: &[(Scalar, &str)]) -> Polynomial {
        Polynomial::from_terms(f, a, terms.iter().map(|(c, s)| (w(s), c.clone())))
    }

    fn quantum_plane(q: i64, bound: u32) -> GroebnerBasis {
        let f = Field::rationals();
        let a = Arc::new(Alphabet::standard(&["a", "b"]));
        let rel = poly(&f, &a, &[(f.one(), "ba"), (f.from_i64(-q), "ab")]);
        GroebnerBasis::complete(&f, &a, &[rel], bound).unwrap()
    }

    #[test]
    fn quantum_plane_basis_is_its_relation() {
        let gb = quantum_plane(2, 10);
        assert_eq!(gb.elements().len(), 1);
        assert_eq!(gb.obstructions().unwrap(), vec![w("ba")]);
        let f = gb.field().clone();
        let nf = gb.normal_form_word(&w("ba")).unwrap();
        assert_eq!(nf.coefficient(&w("ab")), f.from_i64(2));
        let nf = gb.normal_form_word(&w("bba")).unwrap();
        assert_eq!(nf.coefficient(&w("abb")), f.from_i64(4));
        assert_eq!(nf.len(), 1);
        assert!(gb.normal_form(&gb.elements()[0]).unwrap().is_zero());
    }

    #[test]
    fn quantum_plane_words() {
        let gb = quantum_plane(2, 10);
        let a = gb.alphabet().clone();
        let deg2: Vec<String> = degrees_up_to(&a, 2, 2)
            .into_iter()
            .filter(|d| d.total() == 2)
            .flat_map(|d| gb.irreducible_words(WordSet::All, &DegreeSelector::Exact(d)).unwrap())
            .map(|x| a.show_word(&x))
            .collect();
        let mut sorted = deg2.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["aa", "ab", "bb"]);
        let ly = gb.irreducible_words(WordSet::Lyndon, &DegreeSelector::UpTo(4)).unwrap();
        assert_eq!(ly.len(), 2);
        assert_eq!(gb.height(&w("a")).unwrap(), Height::Unknown { at_least: 11 });
        assert!(gb.height(&w("ab")).is_err());
        assert_eq!(gb.height(&w("ba")).unwrap(), Height::Finite(1));
    }

    #[test]
    fn monomial_power() {
        let f = Field::rationals();
        let a = Arc::new(Alphabet::length_graded(&["x"]));
        let rel = poly(&f, &a, &[(f.one(), "aaa")]);
        let gb = GroebnerBasis::complete(&f, &a, &[rel], 10).unwrap();
        assert_eq!(gb.elements().len(), 1);
        assert_eq!(gb.height(&w("a")).unwrap(), Height::Finite(3));
        let r = gb.irreducible_words(WordSet::Restricted, &DegreeSelector::UpTo(3)).unwrap();
        assert_eq!(r, vec![w(""), w("a"), w("aa")]);
    }

    #[test]
    fn a2_serre_obstructions() {
        let f = Field::rationals();
        let a = Arc::new(Alphabet::standard(&["a", "b"]));
        let h = |n: i64, d: i64| Scalar::Rational(BigRational::new(n.into(), d.into()));
        let r1 = poly(&f, &a, &[(f.one(), "baa"), (h(-3, 2), "aba"), (h(1, 2), "aab")]);
        let r2 = poly(&f, &a, &[(f.one(), "bba"), (h(-3, 2), "bab"), (h(1, 2), "abb")]);
        let gb = GroebnerBasis::complete(&f, &a, &[r1, r2], 8).unwrap();
        assert_eq!(gb.obstructions().unwrap(), vec![w("bba"), w("baa")]);
        let (cand, ok) = gb.intersect_subalgebra(1).unwrap();
        assert!(cand.elements().is_empty());
        assert!(ok);
    }

    #[test]
    fn inhomogeneous_and_oversized_relations_fail() {
        let f = Field::rationals();
        let a = Arc::new(Alphabet::length_graded(&["a", "b"]));
        let bad = poly(&f, &a, &[(f.one(), "ba"), (f.one(), "a")]);
        assert!(matches!(
            GroebnerBasis::complete(&f, &a, &[bad], 5),
            Err(GroebnerError::InhomogeneousRelation(_))
        ));
        let big = poly(&f, &a, &[(f.one(), "bababa")]);
        assert!(matches!(
            GroebnerBasis::complete(&f, &a, &[big], 5),
            Err(GroebnerError::DegreeOverBound { .. })
        ));
    }
}
