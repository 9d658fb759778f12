//! Bounded τ-comultiplications on the free algebra and the checks built on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use thiserror::Error;

use crate::braiding::{qbinom, Bicharacter, BracketMode, Braiding, BraidingError};
use crate::freealg::{Polynomial, TensorPolynomial};
use crate::groebner::{GroebnerBasis, GroebnerError};
use crate::linalg::Span;
use crate::pbw::{PbwData, PbwError};
use crate::scalar::Field;
use crate::words::{is_lyndon, lex_cmp, lyndon_decompose, Alphabet, Degree, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoalgError {
    #[error("image of letter {0} must contain 1 ox {0} and {0} ox 1 with coefficient 1 and no other term with an empty leg")]
    CounitViolation(String),
    #[error("image of letter {0} is not homogeneous of the letter's degree")]
    DegreeMismatch(String),
    #[error("expected {expected} letter images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error(transparent)]
    Pbw(#[from] PbwError),
}

/// Which side a boundedness condition or coideal property refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    /// The bracket mode the coproduct formula uses on this side.
    pub fn matching_mode(self) -> BracketMode {
        match self {
            Side::Left => BracketMode::TauInverse,
            Side::Right => BracketMode::Tau,
        }
    }

    /// The bracket mode under which the PBW filtration subalgebras are coideals on this side.
    /// A left coideal needs the right legs confined, which is the other side's formula.
    pub fn coideal_mode(self) -> BracketMode {
        match self {
            Side::Left => BracketMode::Tau,
            Side::Right => BracketMode::TauInverse,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An algebra map k⟨X⟩ → k⟨X⟩ ⊗^τ k⟨X⟩ given by its letter images.
#[derive(Debug)]
pub struct Comultiplication {
    field: Field,
    alphabet: Arc<Alphabet>,
    chi: Bicharacter,
    images: Vec<TensorPolynomial>,
    left: bool,
    right: bool,
    memo: Mutex<HashMap<Word, TensorPolynomial>>,
}

impl Clone for Comultiplication {
    fn clone(&self) -> Self {
        Comultiplication {
            field: self.field.clone(),
            alphabet: self.alphabet.clone(),
            chi: self.chi.clone(),
            images: self.images.clone(),
            left: self.left,
            right: self.right,
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl Comultiplication {
    /// Δ_s(x) = 1⊗x + x⊗1.
    pub fn standard(field: &Field, alphabet: &Arc<Alphabet>, chi: Bicharacter) -> Comultiplication {
        let images = (0..alphabet.size() as u8)
            .map(|x| {
                let mut t = TensorPolynomial::zero(field, alphabet);
                t.add_term(Word::empty(), Word::letter(x), field.one());
                t.add_term(Word::letter(x), Word::empty(), field.one());
                t
            })
            .collect();
        Comultiplication::make(field, alphabet, chi, images).expect("standard images are valid")
    }

    /// Validates the letter images and computes the boundedness flags.
    pub fn make(
        field: &Field,
        alphabet: &Arc<Alphabet>,
        chi: Bicharacter,
        images: Vec<TensorPolynomial>,
    ) -> Result<Comultiplication, CoalgError> {
        if images.len() != alphabet.size() {
            return Err(CoalgError::ImageCount {
                expected: alphabet.size(),
                got: images.len(),
            });
        }
        let mut left = true;
        let mut right = true;
        for (x, image) in images.iter().enumerate() {
            let x = x as u8;
            let name = alphabet.name(x).to_string();
            let dx = alphabet.letter_degree(x);
            let letter = Word::letter(x);
            for (u, v, _) in image.terms() {
                if alphabet.degree(u).add(&alphabet.degree(v)) != *dx {
                    return Err(CoalgError::DegreeMismatch(name));
                }
                let edge = u.is_empty() || v.is_empty();
                if edge && !((u.is_empty() && *v == letter) || (v.is_empty() && *u == letter)) {
                    return Err(CoalgError::CounitViolation(name));
                }
                if !edge {
                    left &= u.letters().iter().all(|&y| y < x);
                    right &= v.letters().iter().all(|&y| y < x);
                }
            }
            let unit = image.coefficient(&Word::empty(), &letter);
            let counit = image.coefficient(&letter, &Word::empty());
            if !unit.is_one() || !counit.is_one() {
                return Err(CoalgError::CounitViolation(name));
            }
        }
        Ok(Comultiplication {
            field: field.clone(),
            alphabet: alphabet.clone(),
            chi,
            images,
            left,
            right,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn images(&self) -> &[TensorPolynomial] {
        &self.images
    }

    pub fn chi(&self) -> &Bicharacter {
        &self.chi
    }

    pub fn is_left_bounded(&self) -> bool {
        self.left
    }

    pub fn is_right_bounded(&self) -> bool {
        self.right
    }

    pub fn is_bounded(&self, side: Side) -> bool {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    /// Whether every letter maps to 1⊗x + x⊗1.
    pub fn is_standard(&self) -> bool {
        self.images.iter().all(|t| t.len() == 2)
    }

    fn apply_word(&self, w: &Word) -> TensorPolynomial {
        if w.is_empty() {
            return TensorPolynomial::one(&self.field, &self.alphabet);
        }
        if w.len() == 1 {
            return self.images[w.letters()[0] as usize].clone();
        }
        if let Some(t) = self.memo.lock().expect("comultiplication memo poisoned").get(w) {
            return t.clone();
        }
        let head = self.apply_word(&w.slice(0, w.len() - 1));
        let last = &self.images[w.letters()[w.len() - 1] as usize];
        let value = head.mul(last, &self.chi);
        self.memo
            .lock()
            .expect("comultiplication memo poisoned")
            .insert(w.clone(), value.clone());
        value
    }

    /// The multiplicative extension Δ(f).
    pub fn apply(&self, f: &Polynomial) -> TensorPolynomial {
        let mut out = TensorPolynomial::zero(&self.field, &self.alphabet);
        for (w, c) in f.terms() {
            out.add_scaled(&self.apply_word(w), c);
        }
        out
    }
}

/// Σ c·nf(u)⊗nf(v); zero exactly when t lies in I⊗F + F⊗I.
pub fn reduce_legs(t: &TensorPolynomial, gb: &GroebnerBasis) -> Result<TensorPolynomial, GroebnerError> {
    let mut cache: HashMap<Word, Polynomial> = HashMap::new();
    let mut nf = |w: &Word| -> Result<Polynomial, GroebnerError> {
        if let Some(p) = cache.get(w) {
            return Ok(p.clone());
        }
        let p = gb.normal_form_word(w)?;
        cache.insert(w.clone(), p.clone());
        Ok(p)
    };
    let mut out = TensorPolynomial::zero(t.field(), t.alphabet());
    for (u, v, c) in t.terms() {
        let l = nf(u)?;
        if l.is_zero() {
            continue;
        }
        let r = nf(v)?;
        out.add_scaled(&TensorPolynomial::tensor(&l, &r), c);
    }
    Ok(out)
}

/// Residual of one basis element under the biideal check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiidealEntry {
    pub element: usize,
    pub residual: TensorPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiidealReport {
    pub entries: Vec<BiidealEntry>,
}

impl BiidealReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.residual.is_zero())
    }
}

/// Tests Δ(I) ⊆ I⊗F + F⊗I on the basis elements by reducing both legs.
pub fn biideal_check(c: &Comultiplication, gb: &GroebnerBasis) -> Result<BiidealReport, CoalgError> {
    let entries = gb
        .elements()
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            Ok(BiidealEntry {
                element: i,
                residual: reduce_legs(&c.apply(g), gb)?,
            })
        })
        .collect::<Result<Vec<_>, CoalgError>>()?;
    Ok(BiidealReport { entries })
}

/// Outcome of the coproduct formula check for [wu^n].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaReport {
    /// Δ([wu^n]) minus the displayed binomial terms.
    pub remainder: TensorPolynomial,
    /// Bracket words of the remainder's confined leg that fall outside the allowed family.
    pub offending: Vec<Word>,
    pub passed: bool,
}

/// Whether `v` has the form w′u^i with w′ nonempty, all atoms of w′ below u, and i ≤ n.
fn confined(v: &Word, u: &Word, n: usize) -> bool {
    let atoms = lyndon_decompose(v);
    let tail = atoms.iter().rev().take_while(|a| *a == u).count();
    let head = &atoms[..atoms.len() - tail];
    !head.is_empty() && tail <= n && head.iter().all(|a| lex_cmp(a, u).is_lt())
}

/// Verifies the coproduct formula for Δ([wu^n]) on the given side.
///
/// The basis, when given, only bounds the degree of wu^n.
#[allow(clippy::too_many_arguments)]
pub fn coproduct_formula_check(
    c: &Comultiplication,
    braiding: &Braiding,
    gb: Option<&GroebnerBasis>,
    w: &Word,
    u: &Word,
    n: usize,
    mode: BracketMode,
    side: Side,
) -> Result<FormulaReport, CoalgError> {
    let alphabet = braiding.alphabet().clone();
    let field = braiding.field().clone();
    if !is_lyndon(u) {
        return Err(CoalgError::PreconditionViolated(format!(
            "{} is not a Lyndon word",
            alphabet.format_word(u)
        )));
    }
    if !lyndon_decompose(w).iter().all(|a| lex_cmp(a, u).is_lt()) {
        return Err(CoalgError::PreconditionViolated(format!(
            "some Lyndon atom of {} is not below {}",
            alphabet.format_word(w),
            alphabet.format_word(u)
        )));
    }
    if !c.is_bounded(side) {
        return Err(CoalgError::PreconditionViolated(format!("comultiplication is not {side} bounded")));
    }
    if mode != side.matching_mode() {
        return Err(CoalgError::PreconditionViolated(format!(
            "the {side} version uses bracket mode {}",
            side.matching_mode().name()
        )));
    }
    let wun = w.concat(&u.pow(n));
    if let Some(gb) = gb {
        let d = alphabet.total_degree(&wun);
        if d > gb.bound() {
            return Err(GroebnerError::DegreeOverBound { degree: d, bound: gb.bound() }.into());
        }
    }
    let du = alphabet.degree(u);
    let dw = alphabet.degree(w);
    let q = c.chi().eval(&du, &du);
    let br = |v: &Word| braiding.bracket(v, mode);
    let one = Polynomial::one(&field, &alphabet);
    let mut remainder = c.apply(&br(&wun));
    for i in 0..=n {
        let mut coef = qbinom(n as u32, i as u32, &q, &field)?;
        let term = match side {
            Side::Left => {
                let t = c.chi().eval(&dw, &du).pow(i as i64).expect("nonzero");
                coef = &coef * &t;
                TensorPolynomial::tensor(&br(&u.pow(i)), &br(&w.concat(&u.pow(n - i))))
            }
            Side::Right => TensorPolynomial::tensor(&br(&w.concat(&u.pow(i))), &br(&u.pow(n - i))),
        };
        remainder.add_scaled(&term, &coef.neg());
    }
    if !w.is_empty() {
        let term = match side {
            Side::Left => TensorPolynomial::tensor(&br(&wun), &one),
            Side::Right => TensorPolynomial::tensor(&one, &br(&wun)),
        };
        remainder.add_scaled(&term, &field.one().neg());
    }
    // Group the remainder by its free leg and solve the confined leg in the bracket basis.
    let mut groups: BTreeMap<Word, Polynomial> = BTreeMap::new();
    let mut offending = Vec::new();
    for (l, r, x) in remainder.terms() {
        let (free, bound_leg) = match side {
            Side::Left => (r, l),
            Side::Right => (l, r),
        };
        if free.is_empty() || bound_leg.is_empty() {
            offending.push(bound_leg.clone());
            continue;
        }
        groups
            .entry(free.clone())
            .or_insert_with(|| Polynomial::zero(&field, &alphabet))
            .add_term(bound_leg.clone(), x.clone());
    }
    for poly in groups.values() {
        for part in poly.components().into_values() {
            for v in braiding.bracket_basis_solve(&part, mode)?.into_keys() {
                if !confined(&v, u, n) {
                    offending.push(v);
                }
            }
        }
    }
    offending.sort();
    offending.dedup();
    Ok(FormulaReport {
        passed: offending.is_empty(),
        remainder,
        offending,
    })
}

/// Coideal verdict for the subalgebra generated by generators up to one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoidealEntry {
    pub generator: usize,
    pub side: Side,
    pub failed_degrees: Vec<Degree>,
}

impl CoidealEntry {
    pub fn passed(&self) -> bool {
        self.failed_degrees.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoidealReport {
    pub entries: Vec<CoidealEntry>,
    /// Set when the bicharacter squares to the trivial one: whether each tested
    /// subalgebra is also a subcoalgebra (a coideal on both sides).
    pub subcoalgebra: Option<bool>,
}

impl CoidealReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(CoidealEntry::passed)
    }
}

/// Spans of the normal forms of monomials in generators 0..=xi, per degree.
fn subalgebra_spans(p: &PbwData, xi: usize) -> BTreeMap<Degree, (Vec<Polynomial>, Span)> {
    let order: Vec<usize> = (0..=xi).collect();
    let mut out: BTreeMap<Degree, (Vec<Polynomial>, Span)> = BTreeMap::new();
    for (_, d, poly) in p.monomials(&order) {
        let entry = out.entry(d).or_insert_with(|| (Vec::new(), Span::new()));
        entry.1.insert(&poly);
        entry.0.push(poly);
    }
    out
}

fn coideal_entry(
    c: &Comultiplication,
    gb: &GroebnerBasis,
    spans: &BTreeMap<Degree, (Vec<Polynomial>, Span)>,
    xi: usize,
    side: Side,
) -> Result<CoidealEntry, CoalgError> {
    let field = gb.field().clone();
    let alphabet = gb.alphabet().clone();
    let mut failed = Vec::new();
    for (d, (polys, _)) in spans {
        let mut ok = true;
        for poly in polys {
            let t = reduce_legs(&c.apply(poly), gb)?;
            let mut groups: BTreeMap<Word, Polynomial> = BTreeMap::new();
            for (l, r, x) in t.terms() {
                let (free, kept) = match side {
                    Side::Left => (l, r),
                    Side::Right => (r, l),
                };
                groups
                    .entry(free.clone())
                    .or_insert_with(|| Polynomial::zero(&field, &alphabet))
                    .add_term(kept.clone(), x.clone());
            }
            for leg in groups.values() {
                for (dd, part) in leg.components() {
                    let inside = spans.get(&dd).is_some_and(|(_, s)| s.contains(&part));
                    ok &= inside;
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            failed.push(d.clone());
        }
    }
    Ok(CoidealEntry {
        generator: xi,
        side,
        failed_degrees: failed,
    })
}

/// Checks that A^{⊴ξ} is a left (or right) coideal, for one generator index or all of them.
pub fn coideal_check(
    p: &PbwData,
    c: &Comultiplication,
    gb: &GroebnerBasis,
    xi: Option<usize>,
    side: Side,
) -> Result<CoidealReport, CoalgError> {
    let count = p.generators().len();
    let indices: Vec<usize> = match xi {
        Some(i) if i >= count => {
            return Err(CoalgError::PreconditionViolated(format!("no generator with index {i}")));
        }
        Some(i) => vec![i],
        None => (0..count).collect(),
    };
    let squares_trivial = c.chi().is_symmetric_braiding();
    let mut entries = Vec::new();
    let mut subcoalgebra = squares_trivial.then_some(true);
    let results = indices
        .par_iter()
        .map(|&i| {
            let spans = subalgebra_spans(p, i);
            let main = coideal_entry(c, gb, &spans, i, side)?;
            let other = if squares_trivial {
                let flip = match side {
                    Side::Left => Side::Right,
                    Side::Right => Side::Left,
                };
                Some(coideal_entry(c, gb, &spans, i, flip)?.passed())
            } else {
                None
            };
            Ok((main, other))
        })
        .collect::<Result<Vec<_>, CoalgError>>()?;
    for (main, other) in results {
        if let (Some(s), Some(o)) = (subcoalgebra.as_mut(), other) {
            *s &= o && main.passed();
        }
        entries.push(main);
    }
    Ok(CoidealReport { entries, subcoalgebra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use num_rational::BigRational;

    fn w(s: &str) -> Word {
        Word::from_letters(&s.bytes().map(|c| c - b'a').collect::<Vec<_>>())
    }

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    fn setup(matrix: [[i64; 2]; 2]) -> (Field, Arc<Alphabet>, Bicharacter) {
        let f = Field::rationals();
        let a = Arc::new(Alphabet::standard(&["a", "b"]));
        let chi = Bicharacter::new(
            &f,
            matrix
                .iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
        .unwrap();
        (f, a, chi)
    }

    #[test]
    fn standard_image_of_ba() {
        let (f, a, chi) = setup([[2, 3], [5, 7]]);
        let c = Comultiplication::standard(&f, &a, chi);
        assert!(c.is_left_bounded() && c.is_right_bounded());
        let t = c.apply(&Polynomial::word(&f, &a, w("ba")));
        assert!(t.coefficient(&Word::empty(), &w("ba")).is_one());
        assert!(t.coefficient(&w("ba"), &Word::empty()).is_one());
        assert!(t.coefficient(&w("b"), &w("a")).is_one());
        assert_eq!(t.coefficient(&w("a"), &w("b")), rat(5, 1));
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn validation_and_flags() {
        let f = Field::rationals();
        let a = Arc::new(Alphabet::new(
            vec!["a".into(), "b".into()],
            vec![Degree::from_slice(&[1]), Degree::from_slice(&[2])],
            1,
        )
        .unwrap());
        let chi = Bicharacter::trivial(&f, 1);
        let std = Comultiplication::standard(&f, &a, chi.clone());
        let mut img_b = std.images()[1].clone();
        img_b.add_term(w("a"), w("a"), f.one());
        let c = Comultiplication::make(&f, &a, chi.clone(), vec![std.images()[0].clone(), img_b]).unwrap();
        assert!(c.is_left_bounded());
        let mut bad = std.images()[1].clone();
        bad.add_term(w("a"), Word::empty(), f.one());
        assert!(matches!(
            Comultiplication::make(&f, &a, chi.clone(), vec![std.images()[0].clone(), bad]),
            Err(CoalgError::DegreeMismatch(_))
        ));
        let mut bad = std.images()[1].clone();
        bad.add_term(Word::empty(), w("b"), f.one());
        assert!(matches!(
            Comultiplication::make(&f, &a, chi, vec![std.images()[0].clone(), bad]),
            Err(CoalgError::CounitViolation(_))
        ));
    }

    #[test]
    fn quantum_plane_biideal() {
        let f = Field::rationals();
        let a = Arc::new(Alphabet::standard(&["a", "b"]));
        let rel = Polynomial::from_terms(&f, &a, [(w("ba"), f.one()), (w("ab"), f.from_i64(-2))]);
        let gb = GroebnerBasis::complete(&f, &a, &[rel], 6).unwrap();
        let good = Bicharacter::new(&f, vec![vec![rat(1, 1), rat(1, 2)], vec![rat(2, 1), rat(1, 1)]]).unwrap();
        let c = Comultiplication::standard(&f, &a, good);
        assert!(biideal_check(&c, &gb).unwrap().passed());
        let c = Comultiplication::standard(&f, &a, Bicharacter::trivial(&f, 2));
        assert!(!biideal_check(&c, &gb).unwrap().passed());
    }

    #[test]
    fn formula_for_ba() {
        let (f, a, chi) = setup([[2, 3], [5, 7]]);
        let br = Braiding::new(&f, &a, chi.clone()).unwrap();
        let c = Comultiplication::standard(&f, &a, chi);
        let r = coproduct_formula_check(&c, &br, None, &Word::empty(), &w("ba"), 1, BracketMode::TauInverse, Side::Left)
            .unwrap();
        assert!(r.passed, "{:?}", r.offending);
        let r = coproduct_formula_check(&c, &br, None, &w("a"), &w("b"), 1, BracketMode::Tau, Side::Right).unwrap();
        assert!(r.passed, "{:?}", r.offending);
        assert!(coproduct_formula_check(&c, &br, None, &w("b"), &w("a"), 1, BracketMode::Tau, Side::Right).is_err());
        assert!(coproduct_formula_check(&c, &br, None, &Word::empty(), &w("a"), 1, BracketMode::Tau, Side::Left).is_err());
    }
}
