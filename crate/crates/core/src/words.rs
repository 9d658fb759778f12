//! Graded alphabets, words, the three word orders and the Lyndon-word engine.
//!
//! Lyndon words follow the "maximal among suffixes" convention: a word is
//! Lyndon when it is strictly larger, in the pseudo-lexicographic order, than
//! each of its proper suffixes. Under this order a proper prefix is *larger*
//! than its extensions, so `b >_lex bb` and `ba <_lex bba`.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word {0:?} is too short for a Shirshov factorization")]
    TooShort(Word),
    #[error("words or polynomials come from different alphabets")]
    AlphabetMismatch,
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter `{0}` has zero degree")]
    ZeroDegree(String),
    #[error("letter `{name}` has a degree with {got} components, expected {expected}")]
    DegreeLength {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("duplicate letter name `{0}`")]
    DuplicateLetter(String),
    #[error("an alphabet needs at least one letter and the grading dimension must be positive")]
    Empty,
    #[error("alphabets are limited to 255 letters")]
    TooManyLetters,
}

/// A multidegree in N^theta.
///
/// The ordering compares total degree first and breaks ties by comparing the
/// components from left to right, which is an admissible well order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Degree(pub SmallVec<[u32; 4]>);

impl Degree {
    pub fn zero(theta: usize) -> Degree {
        Degree(SmallVec::from_elem(0, theta))
    }

    pub fn from_slice(v: &[u32]) -> Degree {
        Degree(SmallVec::from_slice(v))
    }

    pub fn unit(theta: usize, i: usize) -> Degree {
        let mut d = Degree::zero(theta);
        d.0[i] = 1;
        d
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> Degree {
        Degree(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise difference, if `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(Degree)
    }

    /// Componentwise `self <= other`.
    pub fn fits_in(&self, other: &Degree) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A word, stored as 0-based letter indices.
///
/// The derived `Ord` is plain sequence order and only serves as a storage
/// order; use [`lex_cmp`], [`prec_cmp`] or [`glex_cmp`] for the word orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn letter(i: u8) -> Word {
        Word(SmallVec::from_slice(&[i]))
    }

    pub fn from_letters(v: &[u8]) -> Word {
        Word(SmallVec::from_slice(v))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut v = SmallVec::with_capacity(self.len() * n);
        for _ in 0..n {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word::from_letters(&self.0[from..to])
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.0.ends_with(&other.0)
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    /// First position where `factor` occurs, if any.
    pub fn find(&self, factor: &Word) -> Option<usize> {
        if factor.is_empty() {
            return Some(0);
        }
        self.0.windows(factor.len()).position(|w| w == &factor.0[..])
    }

    pub fn contains(&self, factor: &Word) -> bool {
        self.find(factor).is_some()
    }

    /// Largest letter index, if any.
    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }
}

/// An ordered, graded alphabet x_1 < x_2 < ... < x_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    degrees: Vec<Degree>,
    theta: usize,
}

impl Alphabet {
    pub fn new(names: Vec<String>, degrees: Vec<Degree>, theta: usize) -> Result<Alphabet, WordError> {
        if names.is_empty() || theta == 0 || names.len() != degrees.len() {
            return Err(WordError::Empty);
        }
        if names.len() > 255 {
            return Err(WordError::TooManyLetters);
        }
        for (i, (name, deg)) in names.iter().zip(&degrees).enumerate() {
            if names[..i].contains(name) {
                return Err(WordError::DuplicateLetter(name.clone()));
            }
            if deg.0.len() != theta {
                return Err(WordError::DegreeLength {
                    name: name.clone(),
                    got: deg.0.len(),
                    expected: theta,
                });
            }
            if deg.is_zero() {
                return Err(WordError::ZeroDegree(name.clone()));
            }
        }
        Ok(Alphabet {
            names,
            degrees,
            theta,
        })
    }

    /// Letters named by `names` with degrees e_1, ..., e_m.
    pub fn standard(names: &[&str]) -> Alphabet {
        let m = names.len();
        let degrees = (0..m).map(|i| Degree::unit(m, i)).collect();
        Alphabet::new(names.iter().map(|s| s.to_string()).collect(), degrees, m)
            .expect("standard alphabet is valid")
    }

    /// Letters named by `names`, all of degree 1 in a one-dimensional grading.
    pub fn length_graded(names: &[&str]) -> Alphabet {
        let degrees = names.iter().map(|_| Degree::from_slice(&[1])).collect();
        Alphabet::new(names.iter().map(|s| s.to_string()).collect(), degrees, 1)
            .expect("length-graded alphabet is valid")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: u8) -> &str {
        &self.names[letter as usize]
    }

    pub fn letter_degree(&self, letter: u8) -> &Degree {
        &self.degrees[letter as usize]
    }

    pub fn letter_degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn degree(&self, w: &Word) -> Degree {
        let mut d = Degree::zero(self.theta);
        for &x in w.letters() {
            for (acc, c) in d.0.iter_mut().zip(self.degrees[x as usize].0.iter()) {
                *acc += c;
            }
        }
        d
    }

    pub fn total_degree(&self, w: &Word) -> u32 {
        w.letters()
            .iter()
            .map(|&x| self.degrees[x as usize].total())
            .sum()
    }

    /// Whether all letter names are single characters, so words print without separators.
    fn single_char_names(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Formats a word in the literal grammar, e.g. `b*a^2`; the empty word is `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = self.name(letters[i]);
            if j - i == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }

    /// Compact display for reports: juxtaposed letters when names are single characters.
    pub fn show_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        if self.single_char_names() {
            w.letters().iter().map(|&x| self.name(x)).collect()
        } else {
            self.format_word(w)
        }
    }
}

/// The word orders understood by [`compare`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOrder {
    Prec,
    Lex,
    Glex,
}

/// Outcome of comparing two words; `Incomparable` only arises for `Prec`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl From<Ordering> for WordOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => WordOrdering::Less,
            Ordering::Equal => WordOrdering::Equal,
            Ordering::Greater => WordOrdering::Greater,
        }
    }
}

fn first_difference(u: &Word, v: &Word) -> Option<usize> {
    u.letters()
        .iter()
        .zip(v.letters())
        .position(|(a, b)| a != b)
}

/// u ≺ v: the first differing letter decides; prefix pairs are incomparable.
pub fn prec_cmp(u: &Word, v: &Word) -> Option<Ordering> {
    match first_difference(u, v) {
        Some(i) => Some(u.0[i].cmp(&v.0[i])),
        None if u.len() == v.len() => Some(Ordering::Equal),
        None => None,
    }
}

/// Pseudo-lexicographic order: a proper prefix is larger than its extensions.
pub fn lex_cmp(u: &Word, v: &Word) -> Ordering {
    match first_difference(u, v) {
        Some(i) => u.0[i].cmp(&v.0[i]),
        None => v.len().cmp(&u.len()),
    }
}

/// Graded lexicographic order: degree first, then ≺ (total on equal degrees).
pub fn glex_cmp(alphabet: &Alphabet, u: &Word, v: &Word) -> Ordering {
    alphabet
        .degree(u)
        .cmp(&alphabet.degree(v))
        .then_with(|| prec_cmp(u, v).unwrap_or_else(|| u.0.cmp(&v.0)))
}

pub fn compare(alphabet: &Alphabet, u: &Word, v: &Word, order: WordOrder) -> Result<WordOrdering, WordError> {
    let m = alphabet.size() as u8;
    if u.letters().iter().chain(v.letters()).any(|&x| x >= m) {
        return Err(WordError::AlphabetMismatch);
    }
    Ok(match order {
        WordOrder::Prec => prec_cmp(u, v).map_or(WordOrdering::Incomparable, Into::into),
        WordOrder::Lex => lex_cmp(u, v).into(),
        WordOrder::Glex => glex_cmp(alphabet, u, v).into(),
    })
}

/// Whether u is nonempty and strictly lex-greater than each proper suffix.
pub fn is_lyndon(u: &Word) -> bool {
    if u.is_empty() {
        return false;
    }
    (1..u.len()).all(|i| lex_cmp(u, &u.slice(i, u.len())) == Ordering::Greater)
}

/// Shirshov factorization u = u_L u_R with u_R the lex-largest proper suffix.
pub fn shirshov(u: &Word) -> Result<(Word, Word), WordError> {
    if u.len() < 2 {
        return Err(WordError::TooShort(u.clone()));
    }
    let mut best = 1;
    for i in 2..u.len() {
        let cand = &u.0[i..];
        let cur = &u.0[best..];
        if lex_cmp(&Word::from_letters(cand), &Word::from_letters(cur)) == Ordering::Greater {
            best = i;
        }
    }
    Ok((u.slice(0, best), u.slice(best, u.len())))
}

/// The Lyndon decomposition u = u_1 u_2 ... u_r with u_1 <=_lex ... <=_lex u_r.
///
/// A single Duval-style scan: in this convention a longer repetition wins
/// when the next letter is *smaller* than the letter it is compared with.
pub fn lyndon_decompose(u: &Word) -> Vec<Word> {
    let s = u.letters();
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] >= s[j] {
            if s[k] > s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(Word::from_letters(&s[i..i + j - k]));
            i += j - k;
        }
    }
    out
}

/// The Lyndon decomposition with equal consecutive atoms collected as powers.
pub fn lyndon_powers(u: &Word) -> Vec<(Word, usize)> {
    let mut out: Vec<(Word, usize)> = Vec::new();
    for atom in lyndon_decompose(u) {
        match out.last_mut() {
            Some((w, r)) if *w == atom => *r += 1,
            _ => out.push((atom, 1)),
        }
    }
    out
}

/// What [`enumerate`] lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    AllWords,
    LyndonWords,
}

/// All words (or Lyndon words) of total degree at most `bound`, ascending in glex.
pub fn enumerate(alphabet: &Alphabet, mode: EnumerationMode, bound: u32) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        let d = alphabet.total_degree(&w);
        for x in 0..alphabet.size() as u8 {
            if d + alphabet.letter_degree(x).total() <= bound {
                let mut next = w.clone();
                next.push(x);
                stack.push(next);
            }
        }
        if mode == EnumerationMode::AllWords || is_lyndon(&w) {
            out.push(w);
        }
    }
    out.sort_by(|u, v| glex_cmp(alphabet, u, v));
    out
}

/// All words with letters among the first `letters` letters and exact degree `degree`.
pub fn words_of_degree(alphabet: &Alphabet, degree: &Degree, letters: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack = vec![(Word::empty(), Degree::zero(alphabet.theta()))];
    while let Some((w, d)) = stack.pop() {
        if d == *degree {
            out.push(w);
            continue;
        }
        for x in 0..letters as u8 {
            let nd = d.add(alphabet.letter_degree(x));
            if nd.fits_in(degree) {
                let mut next = w.clone();
                next.push(x);
                stack.push((next, nd));
            }
        }
    }
    out.sort_by(|u, v| glex_cmp(alphabet, u, v));
    out
}

/// All degrees of words over the first `letters` letters with total degree at most `bound`.
pub fn degrees_up_to(alphabet: &Alphabet, bound: u32, letters: usize) -> Vec<Degree> {
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![Degree::zero(alphabet.theta())];
    while let Some(d) = stack.pop() {
        if !seen.insert(d.clone()) {
            continue;
        }
        for x in 0..letters as u8 {
            let nd = d.add(alphabet.letter_degree(x));
            if nd.total() <= bound {
                stack.push(nd);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_letters(&s.bytes().map(|c| c - b'a').collect::<Vec<_>>())
    }

    fn show(v: &[Word]) -> Vec<String> {
        let a = Alphabet::standard(&["a", "b", "c"]);
        v.iter().map(|x| a.show_word(x)).collect()
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_cmp(&w("bb"), &w("b")), Ordering::Less);
        assert_eq!(lex_cmp(&w("ba"), &w("bba")), Ordering::Less);
        assert_eq!(prec_cmp(&w("b"), &w("ba")), None);
    }

    #[test]
    fn lyndon_examples() {
        assert!(is_lyndon(&w("b")));
        assert!(is_lyndon(&w("ba")));
        assert!(!is_lyndon(&w("ab")));
        assert!(!is_lyndon(&Word::empty()));
    }

    #[test]
    fn shirshov_examples() {
        assert_eq!(shirshov(&w("bbaba")).unwrap(), (w("bba"), w("ba")));
        assert_eq!(shirshov(&w("ba")).unwrap(), (w("b"), w("a")));
        assert_eq!(shirshov(&w("bba")).unwrap(), (w("b"), w("ba")));
        assert!(shirshov(&w("a")).is_err());
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(show(&lyndon_decompose(&w("aa"))), vec!["a", "a"]);
        assert_eq!(show(&lyndon_decompose(&w("abba"))), vec!["a", "bba"]);
        assert_eq!(show(&lyndon_decompose(&w("bbaba"))), vec!["bbaba"]);
        assert!(lyndon_decompose(&Word::empty()).is_empty());
    }

    #[test]
    fn enumeration_examples() {
        let a = Alphabet::length_graded(&["a", "b"]);
        let ly = |n| {
            enumerate(&a, EnumerationMode::LyndonWords, n)
                .iter()
                .map(|x| a.show_word(x))
                .collect::<Vec<_>>()
        };
        assert_eq!(ly(2), vec!["a", "b", "ba"]);
        assert_eq!(ly(3), vec!["a", "b", "ba", "baa", "bba"]);
        assert!(ly(0).is_empty());
        assert_eq!(enumerate(&a, EnumerationMode::AllWords, 0), vec![Word::empty()]);
    }

    #[test]
    fn gamma_order_is_total_degree_first() {
        let d = |v: &[u32]| Degree::from_slice(v);
        assert!(d(&[0, 2]) > d(&[1, 0]));
        assert!(d(&[1, 0]) > d(&[0, 1]));
    }

    #[test]
    fn word_formatting() {
        let a = Alphabet::standard(&["x1", "x2"]);
        assert_eq!(a.format_word(&Word::from_letters(&[1, 0, 0])), "x2*x1^2");
        assert_eq!(a.format_word(&Word::empty()), "1");
    }

    #[test]
    fn alphabet_validation() {
        let bad = Alphabet::new(
            vec!["a".into()],
            vec![Degree::from_slice(&[0, 0])],
            2,
        );
        assert_eq!(bad, Err(WordError::ZeroDegree("a".into())));
    }
}
