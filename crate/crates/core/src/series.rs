//! Lyndon ideals: Hilbert series, GK dimension, Anick ambiguity chains and
//! homological bounds.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::groebner::{DegreeSelector, GroebnerBasis, GroebnerError, WordSet};
use crate::pbw::PbwData;
use crate::words::{degrees_up_to, enumerate, glex_cmp, is_lyndon, lex_cmp, Alphabet, Degree, EnumerationMode, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("the ideal is not a Lyndon ideal (obstruction {0} is not a Lyndon word)")]
    NotLyndonIdeal(String),
    #[error("{0} is a proper factor of {1}, so the set is not an antichain")]
    NotAntichain(String, String),
    #[error("{0} is not a Lyndon word")]
    NotAllLyndon(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Whether every obstruction up to the bound is a Lyndon word.
pub fn is_lyndon_ideal(gb: &GroebnerBasis) -> bool {
    first_non_lyndon_obstruction(gb).is_none()
}

fn first_non_lyndon_obstruction(gb: &GroebnerBasis) -> Option<Word> {
    gb.leading_words().into_iter().find(|w| !is_lyndon(w))
}

fn require_lyndon(gb: &GroebnerBasis) -> Result<(), SeriesError> {
    match first_non_lyndon_obstruction(gb) {
        Some(w) => Err(SeriesError::NotLyndonIdeal(gb.alphabet().show_word(&w))),
        None => Ok(()),
    }
}

/// A θ-variate power series with integer coefficients, truncated at a total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub bound: u32,
    pub coefficients: BTreeMap<Degree, u64>,
}

impl TruncatedSeries {
    pub fn one(theta: usize, bound: u32) -> TruncatedSeries {
        TruncatedSeries {
            bound,
            coefficients: BTreeMap::from([(Degree::zero(theta), 1)]),
        }
    }

    /// Multiplies by 1/(1 − t^d).
    pub fn divide_by_one_minus(&mut self, d: &Degree) {
        if d.is_zero() || d.total() > self.bound {
            return;
        }
        // Ascending degree order, so each coefficient already includes the smaller terms it depends on.
        let keys: Vec<Degree> = {
            let mut all: BTreeSet<Degree> = self.coefficients.keys().cloned().collect();
            let mut frontier: Vec<Degree> = all.iter().cloned().collect();
            while let Some(g) = frontier.pop() {
                let next = g.add(d);
                if next.total() <= self.bound && all.insert(next.clone()) {
                    frontier.push(next);
                }
            }
            all.into_iter().collect()
        };
        for g in keys {
            if let Some(prev) = g.checked_sub(d) {
                let add = self.coefficients.get(&prev).copied().unwrap_or(0);
                if add > 0 {
                    *self.coefficients.entry(g).or_insert(0) += add;
                }
            }
        }
    }

    pub fn coefficient(&self, d: &Degree) -> u64 {
        self.coefficients.get(d).copied().unwrap_or(0)
    }

    /// Coefficients collapsed to total degree 0..=bound.
    pub fn univariate(&self) -> Vec<u64> {
        let mut out = vec![0; self.bound as usize + 1];
        for (d, c) in &self.coefficients {
            out[d.total() as usize] += c;
        }
        out
    }
}

/// Predicted against counted dimension in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertComparison {
    pub degree: Degree,
    pub predicted: u64,
    pub counted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertReport {
    pub series: TruncatedSeries,
    /// Comparisons up to this total degree.
    pub compared_up_to: u32,
    pub comparisons: Vec<HilbertComparison>,
    pub lyndon_ideal: bool,
}

impl HilbertReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &HilbertComparison> {
        self.comparisons.iter().filter(|c| c.predicted != c.counted)
    }

    pub fn passed(&self) -> bool {
        self.lyndon_ideal && self.mismatches().next().is_none()
    }
}

/// The product over irreducible Lyndon words of 1/(1 − t^deg u), compared with word counts.
pub fn hilbert_series(p: &PbwData) -> Result<HilbertReport, SeriesError> {
    require_lyndon(p.gb())?;
    Ok(hilbert_series_unchecked(p))
}

/// As [`hilbert_series`], without requiring a Lyndon ideal; mismatches are reported, not raised.
pub fn hilbert_series_unchecked(p: &PbwData) -> HilbertReport {
    let gb = p.gb();
    let alphabet = gb.alphabet();
    let bound = gb.bound();
    let mut series = TruncatedSeries::one(alphabet.theta(), bound);
    for g in p.generators() {
        series.divide_by_one_minus(&g.degree);
    }
    let max_gen = p.generators().iter().map(|g| g.degree.total()).max().unwrap_or(0);
    let compared_up_to = bound.saturating_sub(max_gen);
    let comparisons = degrees_up_to(alphabet, compared_up_to, alphabet.size())
        .into_iter()
        .map(|d| {
            let counted = gb
                .irreducible_words(WordSet::All, &DegreeSelector::Exact(d.clone()))
                .map(|v| v.len() as u64)
                .unwrap_or(0);
            HilbertComparison {
                predicted: series.coefficient(&d),
                counted,
                degree: d,
            }
        })
        .collect();
    HilbertReport {
        series,
        compared_up_to,
        comparisons,
        lyndon_ideal: is_lyndon_ideal(gb),
    }
}

/// Lower end of the degree window whose emptiness certifies that a closed set
/// of Lyndon words has no member beyond the bound.
///
/// A Lyndon word of degree above D has a Shirshov factor of at least half its
/// degree, and that factor lies in the same closed set; following the larger
/// factor down lands in (D/2, D].
fn exhaustion_window_start(bound: u32, max_obstruction: u32) -> u32 {
    bound.saturating_sub(max_obstruction).min(bound / 2)
}

/// Whether no member of the closed set (given up to the bound) has total degree in the exhaustion window.
fn exhausted(alphabet: &Alphabet, words: &[Word], bound: u32, max_obstruction: u32) -> bool {
    let start = exhaustion_window_start(bound, max_obstruction);
    words.iter().all(|w| alphabet.total_degree(w) <= start)
}

fn irreducible_lyndon_exhausted(p: &PbwData) -> bool {
    let gb = p.gb();
    let max_obstruction = gb
        .leading_words()
        .iter()
        .map(|w| gb.alphabet().total_degree(w))
        .max()
        .unwrap_or(0);
    let words = p.generator_words();
    exhausted(gb.alphabet(), &words, gb.bound(), max_obstruction)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkReport {
    pub value: usize,
    /// True when `value` is the GK dimension; otherwise it is a lower bound.
    pub exact: bool,
}

/// GK dimension: #𝒩_I for a Lyndon ideal whose irreducible Lyndon words are
/// certified exhausted, otherwise the count of generators of unknown height as a lower bound.
pub fn gk_report(p: &PbwData) -> GkReport {
    if is_lyndon_ideal(p.gb()) && irreducible_lyndon_exhausted(p) {
        GkReport {
            value: p.generators().len(),
            exact: true,
        }
    } else {
        GkReport {
            value: p.gk_lower_bound(),
            exact: false,
        }
    }
}

/// The (n−1)-ambiguities 𝒜_n(V) of total degree at most some bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSet {
    pub n: usize,
    pub words: Vec<Word>,
}

fn check_antichain(alphabet: &Alphabet, v: &[Word]) -> Result<(), SeriesError> {
    for a in v {
        for b in v {
            if a != b && b.contains(a) {
                return Err(SeriesError::NotAntichain(alphabet.show_word(a), alphabet.show_word(b)));
            }
        }
    }
    Ok(())
}

fn has_factor_in(w: &Word, v: &[Word]) -> bool {
    v.iter().any(|x| w.contains(x))
}

/// Every 𝒜_n(V) for n ≥ 1 up to total degree `bound`, by direct search over piece decompositions.
///
/// Each new piece t comes from some o = s·t in V with s a nonempty suffix of the
/// previous piece, subject to the minimality condition of the definition.
pub fn ambiguity_search(alphabet: &Alphabet, v: &[Word], bound: u32) -> Result<BTreeMap<usize, Vec<Word>>, SeriesError> {
    check_antichain(alphabet, v)?;
    let mut found: BTreeMap<usize, BTreeSet<Word>> = BTreeMap::new();
    // (pieces so far, last piece, concatenation)
    let mut stack: Vec<(usize, Word, Word)> = Vec::new();
    for x in 0..alphabet.size() as u8 {
        let letter = Word::letter(x);
        if v.contains(&letter) || alphabet.total_degree(&letter) > bound {
            continue;
        }
        stack.push((1, letter.clone(), letter));
    }
    while let Some((count, last, whole)) = stack.pop() {
        found.entry(count).or_default().insert(whole.clone());
        let used = alphabet.total_degree(&whole);
        for o in v {
            for k in 1..o.len() {
                let (s, t) = (o.slice(0, k), o.slice(k, o.len()));
                if !last.ends_with(&s) || used + alphabet.total_degree(&t) > bound {
                    continue;
                }
                let minimal = (0..t.len()).all(|j| !has_factor_in(&last.concat(&t.slice(0, j)), v));
                if !minimal {
                    continue;
                }
                stack.push((count + 1, t.clone(), whole.concat(&t)));
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(n, set)| {
            let mut words: Vec<Word> = set.into_iter().collect();
            words.sort_by(|a, b| glex_cmp(alphabet, a, b));
            (n, words)
        })
        .collect())
}

/// 𝒜_n(V) up to total degree `bound`: closed forms for n ≤ 2, direct search beyond.
pub fn ambiguities(alphabet: &Alphabet, v: &[Word], n: usize, bound: u32) -> Result<ChainSet, SeriesError> {
    check_antichain(alphabet, v)?;
    let mut words: Vec<Word> = match n {
        0 => vec![Word::empty()],
        1 => (0..alphabet.size() as u8)
            .map(Word::letter)
            .filter(|x| !v.contains(x) && alphabet.total_degree(x) <= bound)
            .collect(),
        2 => v
            .iter()
            .filter(|w| w.len() >= 2 && alphabet.total_degree(w) <= bound)
            .cloned()
            .collect(),
        _ => ambiguity_search(alphabet, v, bound)?.remove(&n).unwrap_or_default(),
    };
    words.sort_by(|a, b| glex_cmp(alphabet, a, b));
    Ok(ChainSet { n, words })
}

/// Ψ_L(V): Lyndon words with no factor in V, up to total degree `bound`, ascending in <_lex.
pub fn psi_lyndon(alphabet: &Alphabet, v: &[Word], bound: u32) -> Vec<Word> {
    let mut u: Vec<Word> = enumerate(alphabet, EnumerationMode::LyndonWords, bound)
        .into_iter()
        .filter(|w| !w.is_empty() && !has_factor_in(w, v))
        .collect();
    u.sort_by(lex_cmp);
    u
}

/// Whether `w` splits as u_1⋯u_n with every u_i in `u` and u_1 >_lex ⋯ >_lex u_n.
fn splits_decreasing(w: &Word, n: usize, u: &BTreeSet<Word>, above: Option<&Word>) -> bool {
    if n == 0 {
        return w.is_empty();
    }
    (1..=w.len()).any(|k| {
        let head = w.slice(0, k);
        u.contains(&head)
            && above.is_none_or(|a| lex_cmp(a, &head).is_gt())
            && splits_decreasing(&w.slice(k, w.len()), n - 1, u, Some(&head))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    /// Ψ_L(V) up to the bound, ascending in <_lex.
    pub u: Vec<Word>,
    /// Whether Ψ_L(V) is certified to have no member beyond the bound.
    pub exhausted: bool,
    pub chains: BTreeMap<usize, Vec<Word>>,
    /// 𝒜_n(V) = ∅ for n > #(V∖X) + 1.
    pub emptiness: bool,
    /// 𝒜_n(V) consists of strictly decreasing products of n members of U.
    pub decreasing_products: bool,
    /// Products of consecutive decreasing chains in U lie in 𝒜_n(V); `None` when U is not exhausted.
    pub consecutive_chains: Option<bool>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.emptiness && self.decreasing_products && self.consecutive_chains != Some(false)
    }
}

/// Verifies the structure of ambiguity chains on a Lyndon antichain up to total degree `bound`.
pub fn chain_properties_check(alphabet: &Alphabet, v: &[Word], bound: u32) -> Result<ChainReport, SeriesError> {
    check_antichain(alphabet, v)?;
    if let Some(w) = v.iter().find(|w| !is_lyndon(w)) {
        return Err(SeriesError::NotAllLyndon(alphabet.show_word(w)));
    }
    let chains = ambiguity_search(alphabet, v, bound)?;
    let u = psi_lyndon(alphabet, v, bound);
    let max_v = v.iter().map(|w| alphabet.total_degree(w)).max().unwrap_or(0);
    let is_exhausted = exhausted(alphabet, &u, bound, max_v);
    let non_letters = v.iter().filter(|w| w.len() >= 2).count();
    let emptiness = chains
        .iter()
        .all(|(n, words)| *n <= non_letters + 1 || words.is_empty());
    let u_set: BTreeSet<Word> = u.iter().cloned().collect();
    let decreasing_products = chains
        .iter()
        .all(|(n, words)| words.iter().all(|w| splits_decreasing(w, *n, &u_set, None)));
    let consecutive_chains = is_exhausted.then(|| {
        // u is ascending in <_lex, so consecutive chains are runs read backwards.
        let chain_sets: BTreeMap<usize, BTreeSet<&Word>> =
            chains.iter().map(|(n, ws)| (*n, ws.iter().collect())).collect();
        (0..u.len()).all(|end| {
            let mut product = u[end].clone();
            let mut n = 1;
            let mut i = end;
            while i + 1 < u.len() {
                i += 1;
                product = u[i].concat(&product);
                n += 1;
                if alphabet.total_degree(&product) > bound {
                    break;
                }
                if !chain_sets.get(&n).is_some_and(|s| s.contains(&product)) {
                    return false;
                }
            }
            true
        })
    });
    Ok(ChainReport {
        u,
        exhausted: is_exhausted,
        chains,
        emptiness,
        decreasing_products,
        consecutive_chains,
    })
}

/// F_0 = F_1 = 1.
pub fn fibonacci(r: u32) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 0..r {
        (a, b) = (b, a + b);
    }
    a
}

/// The chain n ≤ d ≤ l ≤ F_{d−n+3} + n − 3 for length-graded algebras without linear relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibonacciCheck {
    pub letters: usize,
    pub gldim: usize,
    pub l: u32,
    pub fib_bound: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    /// min{#𝒩, #(𝒪∖X) + 1} over the words seen up to the bound.
    pub bound: usize,
    /// Whether 𝒩 and 𝒪 are certified complete, making the quantities below exact.
    pub certified: bool,
    pub gldim: Option<usize>,
    /// Σ deg(u) over 𝒩.
    pub gorenstein: Option<Degree>,
    pub fibonacci: Option<FibonacciCheck>,
    pub lyndon_ideal: bool,
    /// Finite heights are present, so polynomial-type conclusions do not apply.
    pub finite_heights: bool,
}

impl HomologyReport {
    pub fn passed(&self) -> bool {
        self.lyndon_ideal && self.fibonacci.as_ref().is_none_or(|f| f.holds)
    }
}

/// Global-dimension bound, Gorenstein parameter and the Fibonacci chain.
pub fn homology_bounds(p: &PbwData) -> Result<HomologyReport, SeriesError> {
    require_lyndon(p.gb())?;
    Ok(homology_bounds_unchecked(p))
}

/// As [`homology_bounds`], without requiring a Lyndon ideal.
pub fn homology_bounds_unchecked(p: &PbwData) -> HomologyReport {
    let gb = p.gb();
    let alphabet = gb.alphabet();
    let obstructions = gb.leading_words();
    let n_count = p.generators().len();
    let o_count = obstructions.iter().filter(|w| w.len() >= 2).count();
    let max_gen = p.generators().iter().map(|g| g.degree.total()).max().unwrap_or(0);
    let certified = irreducible_lyndon_exhausted(p) && 2 * max_gen <= gb.bound();
    let gorenstein = certified.then(|| {
        p.generators()
            .iter()
            .fold(Degree::zero(alphabet.theta()), |acc, g| acc.add(&g.degree))
    });
    let unit_letters = alphabet.letter_degrees().iter().all(|d| d.total() == 1);
    let no_linear = obstructions.iter().all(|w| w.len() >= 2);
    let fibonacci = match &gorenstein {
        Some(l) if unit_letters && no_linear => {
            let n = alphabet.size();
            let d = n_count;
            let l = l.total();
            let fib_bound = if d + 3 >= n {
                fibonacci((d + 3 - n) as u32) as i64 + n as i64 - 3
            } else {
                i64::MIN
            };
            Some(FibonacciCheck {
                letters: n,
                gldim: d,
                l,
                fib_bound,
                holds: n <= d && d as u64 <= l as u64 && (l as i64) <= fib_bound,
            })
        }
        _ => None,
    };
    HomologyReport {
        bound: n_count.min(o_count + 1),
        certified,
        gldim: certified.then_some(n_count),
        gorenstein,
        fibonacci,
        lyndon_ideal: is_lyndon_ideal(gb),
        finite_heights: p.generators().iter().any(|g| g.height.finite().is_some()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_letters(&s.bytes().map(|c| c - b'a').collect::<Vec<_>>())
    }

    #[test]
    fn fibonacci_indexing() {
        assert_eq!((0..6).map(fibonacci).collect::<Vec<_>>(), vec![1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn series_product() {
        let mut s = TruncatedSeries::one(1, 6);
        s.divide_by_one_minus(&Degree::from_slice(&[1]));
        s.divide_by_one_minus(&Degree::from_slice(&[1]));
        s.divide_by_one_minus(&Degree::from_slice(&[2]));
        assert_eq!(s.univariate(), vec![1, 2, 4, 6, 9, 12, 16]);
    }

    #[test]
    fn a2_chains() {
        let a = Alphabet::standard(&["a", "b"]);
        let v = vec![w("bba"), w("baa")];
        let c3 = ambiguities(&a, &v, 3, 8).unwrap();
        assert_eq!(c3.words, vec![w("bbaa")]);
        assert!(ambiguities(&a, &v, 4, 8).unwrap().words.is_empty());
        let r = chain_properties_check(&a, &v, 8).unwrap();
        assert_eq!(r.u, vec![w("a"), w("ba"), w("b")]);
        assert!(r.exhausted);
        assert!(r.passed());
        assert_eq!(r.consecutive_chains, Some(true));
    }

    #[test]
    fn closed_forms_match_search() {
        let a = Alphabet::standard(&["a", "b"]);
        let v = vec![w("ba")];
        let search = ambiguity_search(&a, &v, 8).unwrap();
        assert_eq!(search.get(&1).unwrap(), &ambiguities(&a, &v, 1, 8).unwrap().words);
        assert_eq!(search.get(&2).unwrap(), &ambiguities(&a, &v, 2, 8).unwrap().words);
        assert!(!search.contains_key(&3));
    }

    #[test]
    fn antichain_rejected() {
        let a = Alphabet::standard(&["a", "b"]);
        assert!(matches!(
            ambiguities(&a, &[w("ba"), w("bba")], 3, 6),
            Err(SeriesError::NotAntichain(..))
        ));
    }
}
