//! Polynomials of the graded free algebra k⟨X⟩ and elements of its braided tensor square.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::braiding::Bicharacter;
use crate::scalar::{Field, Scalar, ScalarError};
use crate::words::{Alphabet, Degree, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("polynomials come from different alphabets")]
    AlphabetMismatch,
    #[error("the zero polynomial has no leading word")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
}

/// Storage key ordering terms ascending in glex: degree (admissible order), then ≺.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct TermKey {
    degree: Degree,
    word: Word,
}

/// A noncommutative polynomial; terms are kept sorted by glex, zero coefficients never stored.
#[derive(Debug, Clone)]
pub struct Polynomial {
    field: Field,
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<TermKey, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(field: &Field, alphabet: &Arc<Alphabet>) -> Polynomial {
        Polynomial {
            field: field.clone(),
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field, alphabet: &Arc<Alphabet>) -> Polynomial {
        Polynomial::word(field, alphabet, Word::empty())
    }

    pub fn word(field: &Field, alphabet: &Arc<Alphabet>, w: Word) -> Polynomial {
        Polynomial::monomial(field, alphabet, field.one(), w)
    }

    pub fn monomial(field: &Field, alphabet: &Arc<Alphabet>, c: Scalar, w: Word) -> Polynomial {
        let mut p = Polynomial::zero(field, alphabet);
        p.add_term(w, c);
        p
    }

    pub fn from_terms(
        field: &Field,
        alphabet: &Arc<Alphabet>,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(field, alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending glex order (leading term first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter().rev().map(|(k, c)| (&k.word, c))
    }

    /// Terms with their degrees, descending.
    pub fn graded_terms(&self) -> impl Iterator<Item = (&Degree, &Word, &Scalar)> {
        self.terms.iter().rev().map(|(k, c)| (&k.degree, &k.word, c))
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms().map(|(w, _)| w)
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        let key = self.key(w.clone());
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn key(&self, word: Word) -> TermKey {
        TermKey {
            degree: self.alphabet.degree(&word),
            word,
        }
    }

    /// Adds c·w in place.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = self.key(w);
        self.add_keyed(key, c);
    }

    fn add_keyed(&mut self, key: TermKey, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last().map(|(k, c)| (k.word, c))
    }

    pub fn leading(&self) -> Result<(&Word, &Scalar), PolyError> {
        self.terms
            .last_key_value()
            .map(|(k, c)| (&k.word, c))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.last_key_value().map(|(k, _)| &k.word)
    }

    /// The common degree of all terms, or `None` if inhomogeneous or zero.
    pub fn degree(&self) -> Option<Degree> {
        let first = self.terms.keys().next()?;
        let last = self.terms.keys().next_back()?;
        (first.degree == last.degree).then(|| first.degree.clone())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Largest total degree of a term (0 for the zero polynomial).
    pub fn max_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .next_back()
            .map_or(0, |k| k.degree.total())
    }

    /// Splits into homogeneous components, ascending by degree.
    pub fn components(&self) -> BTreeMap<Degree, Polynomial> {
        let mut out: BTreeMap<Degree, Polynomial> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.degree.clone())
                .or_insert_with(|| Polynomial::zero(&self.field, &self.alphabet))
                .terms
                .insert(k.clone(), c.clone());
        }
        out
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch(self.field.spec(), other.field.spec()).into());
        }
        if !Arc::ptr_eq(&self.alphabet, &other.alphabet) && self.alphabet != other.alphabet {
            return Err(PolyError::AlphabetMismatch);
        }
        Ok(())
    }

    /// self += c·other.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_keyed(k.clone(), x * c);
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one().neg());
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut out = Polynomial::zero(&self.field, &self.alphabet);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = TermKey {
                    degree: k1.degree.add(&k2.degree),
                    word: k1.word.concat(&k2.word),
                };
                out.add_keyed(key, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(&self.field, &self.alphabet);
        if c.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(k, x)| (k.clone(), x * c))
            .collect();
        out
    }

    /// left · self · right for words left and right.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Polynomial {
        let extra = self.alphabet.degree(left).add(&self.alphabet.degree(right));
        let mut out = Polynomial::zero(&self.field, &self.alphabet);
        out.terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                (
                    TermKey {
                        degree: k.degree.add(&extra),
                        word: left.concat(&k.word).concat(right),
                    },
                    c.clone(),
                )
            })
            .collect();
        out
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_words(&self, keep: impl Fn(&Word) -> bool) -> Polynomial {
        let mut out = Polynomial::zero(&self.field, &self.alphabet);
        out.terms = self
            .terms
            .iter()
            .filter(|(k, _)| keep(&k.word))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Ok((_, c)) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
            Err(_) => self.clone(),
        }
    }

    /// Formats in the expression grammar, leading term first.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let (neg, abs) = if c.is_negative_looking() && c.is_simple() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if abs.is_simple() {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            if w.is_empty() {
                s.push_str(&coeff);
            } else if abs.is_one() {
                s.push_str(&self.alphabet.format_word(w));
            } else {
                s.push_str(&coeff);
                s.push('*');
                s.push_str(&self.alphabet.format_word(w));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on mismatched fields or alphabets; use the `try_` variant otherwise.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial context mismatch")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

/// An element of k⟨X⟩ ⊗ k⟨X⟩, with the braided multiplication of [`TensorPolynomial::mul`].
#[derive(Debug, Clone)]
pub struct TensorPolynomial {
    field: Field,
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl PartialEq for TensorPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl Eq for TensorPolynomial {}

impl TensorPolynomial {
    pub fn zero(field: &Field, alphabet: &Arc<Alphabet>) -> TensorPolynomial {
        TensorPolynomial {
            field: field.clone(),
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field, alphabet: &Arc<Alphabet>) -> TensorPolynomial {
        let mut t = TensorPolynomial::zero(field, alphabet);
        t.add_term(Word::empty(), Word::empty(), field.one());
        t
    }

    /// f ⊗ g.
    pub fn tensor(f: &Polynomial, g: &Polynomial) -> TensorPolynomial {
        let mut t = TensorPolynomial::zero(f.field(), f.alphabet());
        for (u, a) in f.terms() {
            for (v, b) in g.terms() {
                t.add_term(u.clone(), v.clone(), a * b);
            }
        }
        t
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.terms.iter().map(|((u, v), c)| (u, v, c))
    }

    pub fn coefficient(&self, u: &Word, v: &Word) -> Scalar {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: Scalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, v)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// self += c·other.
    pub fn add_scaled(&mut self, other: &TensorPolynomial, c: &Scalar) {
        for ((u, v), x) in &other.terms {
            self.add_term(u.clone(), v.clone(), x * c);
        }
    }

    pub fn sub(&self, other: &TensorPolynomial) -> TensorPolynomial {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one().neg());
        out
    }

    pub fn scale(&self, c: &Scalar) -> TensorPolynomial {
        let mut out = TensorPolynomial::zero(&self.field, &self.alphabet);
        out.add_scaled(self, c);
        out
    }

    /// Braided product: (u1⊗v1)(u2⊗v2) = χ(deg v1, deg u2)·u1u2 ⊗ v1v2.
    pub fn try_mul(&self, other: &TensorPolynomial, chi: &Bicharacter) -> Result<TensorPolynomial, PolyError> {
        if self.field != other.field || self.field != *chi.field() {
            return Err(ScalarError::FieldMismatch(self.field.spec(), other.field.spec()).into());
        }
        let mut out = TensorPolynomial::zero(&self.field, &self.alphabet);
        for ((u1, v1), c1) in &self.terms {
            let dv1 = self.alphabet.degree(v1);
            for ((u2, v2), c2) in &other.terms {
                let braid = chi.eval(&dv1, &self.alphabet.degree(u2));
                out.add_term(u1.concat(u2), v1.concat(v2), &(c1 * c2) * &braid);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &TensorPolynomial, chi: &Bicharacter) -> TensorPolynomial {
        self.try_mul(other, chi).expect("tensor context mismatch")
    }

    /// Formats as a sum of `(left) ox (right)` terms in the expression grammar.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for ((u, v), c) in &self.terms {
            let left = Polynomial::monomial(&self.field, &self.alphabet, c.clone(), u.clone());
            let right = Polynomial::word(&self.field, &self.alphabet, v.clone());
            parts.push(format!("({}) ox ({})", left.to_expr(), right.to_expr()));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for TensorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn setup() -> (Field, Arc<Alphabet>) {
        (Field::rationals(), Arc::new(Alphabet::length_graded(&["a", "b", "c"])))
    }

    fn w(s: &str) -> Word {
        Word::from_letters(&s.bytes().map(|c| c - b'a').collect::<Vec<_>>())
    }

    fn p(f: &Field, a: &Arc<Alphabet>, terms: &[(i64, &str)]) -> Polynomial {
        Polynomial::from_terms(f, a, terms.iter().map(|(c, s)| (w(s), f.from_i64(*c))))
    }

    #[test]
    fn products_concatenate() {
        let (f, a) = setup();
        assert_eq!(&p(&f, &a, &[(1, "ba")]) * &p(&f, &a, &[(1, "a")]), p(&f, &a, &[(1, "baa")]));
        let lhs = &p(&f, &a, &[(1, "a"), (1, "b")]) * &p(&f, &a, &[(1, "a"), (-1, "b")]);
        assert_eq!(lhs, p(&f, &a, &[(1, "aa"), (-1, "ab"), (1, "ba"), (-1, "bb")]));
    }

    #[test]
    fn leading_words() {
        let (f, a) = setup();
        let g = p(&f, &a, &[(1, "ba"), (-2, "ab")]);
        assert_eq!(g.leading().unwrap().0, &w("ba"));
        let h = p(&f, &a, &[(1, "aab"), (-2, "aba"), (1, "baa")]);
        assert_eq!(h.leading().unwrap(), (&w("baa"), &f.one()));
        assert_eq!(Polynomial::zero(&f, &a).leading(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn expression_output() {
        let (f, a) = setup();
        let g = p(&f, &a, &[(1, "ba"), (-2, "ab"), (3, "")]);
        assert_eq!(g.to_expr(), "b*a - 2*a*b + 3");
    }

    #[test]
    fn braided_square_of_a_primitive() {
        let f = Field::rationals();
        let a = Arc::new(Alphabet::length_graded(&["x"]));
        let chi = Bicharacter::new(&f, vec![vec![f.from_i64(3)]]).unwrap();
        let x = Word::letter(0);
        let mut d = TensorPolynomial::zero(&f, &a);
        d.add_term(Word::empty(), x.clone(), f.one());
        d.add_term(x.clone(), Word::empty(), f.one());
        let sq = d.mul(&d, &chi);
        assert_eq!(sq.coefficient(&x, &x), f.from_i64(4));
        assert_eq!(sq.coefficient(&x.pow(2), &Word::empty()), f.one());
        assert_eq!(sq.len(), 3);
    }
}
