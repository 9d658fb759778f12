//! PBW generators from irreducible Lyndon words, basis verification, PBW
//! normal forms, relative PBW bases, filtration and root-of-unity checks, and
//! Ore towers.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::braiding::{BracketMode, Braiding, BraidingError};
use crate::freealg::Polynomial;
use crate::groebner::{DegreeSelector, GroebnerBasis, GroebnerError, Height, WordSet};
use crate::linalg::Span;
use crate::scalar::{q_integer, RootOrder, Scalar, ScalarError};
use crate::words::{degrees_up_to, Alphabet, Degree, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("PBW monomials of degree {0} were not verified to form a basis")]
    BasisNotVerified(Degree),
    #[error("letter subsets must be initial segments with Y1 inside Y2")]
    NotClosed,
    #[error("the ideal intersection with a letter subset could not be verified")]
    SubalgebraNotVerified,
    #[error("Ore towers need the trivial bicharacter")]
    NontrivialBicharacter,
    #[error("Ore towers need every height to be unknown (no finite heights)")]
    FiniteHeightPresent,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A PBW generator z_u attached to an irreducible Lyndon word u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub word: Word,
    /// Normal form of the bracket [u].
    pub z: Polynomial,
    pub degree: Degree,
    pub height: Height,
}

/// A product z_{g_1}^{r_1}⋯z_{g_m}^{r_m}, as (generator index, exponent) in product order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial(pub Vec<(usize, u32)>);

impl PbwMonomial {
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Generator indices occurring in the monomial.
    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|(g, _)| *g)
    }

    /// Renders as `z_ba^2*z_b` using the generator words.
    pub fn show(&self, alphabet: &Alphabet, words: &[Word]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|(g, r)| {
                let name = format!("z_{}", alphabet.show_word(&words[*g]));
                if *r == 1 {
                    name
                } else {
                    format!("{name}^{r}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// An expansion over PBW monomials.
pub type PbwExpansion = Vec<(PbwMonomial, Scalar)>;

/// Renders an expansion as a sum of scalar multiples of monomials.
pub fn show_expansion(e: &PbwExpansion, alphabet: &Alphabet, words: &[Word]) -> String {
    if e.is_empty() {
        return "0".to_string();
    }
    e.iter()
        .map(|(m, c)| {
            let mono = m.show(alphabet, words);
            if c.is_one() {
                mono
            } else if m.is_one() {
                format!("({c})")
            } else {
                format!("({c})*{mono}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A generator as seen by the monomial enumerator.
struct GenView<'a> {
    index: usize,
    z: &'a Polynomial,
    degree: &'a Degree,
    height: Height,
}

/// Every admissible monomial in the given generators (taken in the listed
/// order) with total degree at most `bound`, together with its degree and normal form.
fn enumerate_monomials(gb: &GroebnerBasis, gens: &[GenView<'_>], bound: u32) -> Vec<(PbwMonomial, Degree, Polynomial)> {
    let mut out = Vec::new();
    let one = Polynomial::one(gb.field(), gb.alphabet());
    let zero_degree = Degree::zero(gb.alphabet().theta());
    let mut stack: Vec<(usize, PbwMonomial, Degree, Polynomial)> =
        vec![(0, PbwMonomial::default(), zero_degree, one)];
    while let Some((pos, mono, deg, poly)) = stack.pop() {
        if pos == gens.len() {
            out.push((mono, deg, poly));
            continue;
        }
        let g = &gens[pos];
        stack.push((pos + 1, mono.clone(), deg.clone(), poly.clone()));
        let mut r = 1u32;
        let mut cur = poly;
        let mut cur_deg = deg;
        loop {
            if !g.height.admits(r) {
                break;
            }
            let next_deg = cur_deg.add(g.degree);
            if next_deg.total() > bound || g.degree.is_zero() {
                break;
            }
            cur = gb
                .normal_form(&(&cur * g.z))
                .expect("products stay within the bound");
            cur_deg = next_deg;
            let mut m = mono.clone();
            m.0.push((g.index, r));
            stack.push((pos + 1, m, cur_deg.clone(), cur.clone()));
            r += 1;
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Monomials of one degree with their span, for solving against the lex-ordered basis.
#[derive(Debug)]
struct DegreeBasis {
    monomials: Vec<PbwMonomial>,
    span: Span,
    verified: bool,
}

/// Verdict for one degree under one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: Degree,
    pub monomials: usize,
    pub dimension: usize,
    pub rank: usize,
    pub passed: bool,
}

/// Verification results for one total order on the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    /// Generator indices from smallest to largest under this order.
    pub order: Vec<usize>,
    pub degrees: Vec<DegreeVerdict>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwVerification {
    pub orders: Vec<OrderReport>,
}

impl PbwVerification {
    pub fn passed(&self) -> bool {
        self.orders.iter().all(OrderReport::passed)
    }
}

/// PBW generators {z_u : u ∈ 𝒩_I} sorted ascending by <_lex, with the data needed to use them.
#[derive(Debug)]
pub struct PbwData {
    gb: Arc<GroebnerBasis>,
    braiding: Arc<Braiding>,
    mode: BracketMode,
    generators: Vec<Generator>,
    lex_bases: OnceLock<BTreeMap<Degree, DegreeBasis>>,
}

impl PbwData {
    pub fn new(gb: Arc<GroebnerBasis>, braiding: Arc<Braiding>, mode: BracketMode) -> Result<PbwData, PbwError> {
        let mut words = gb.irreducible_words(WordSet::Lyndon, &DegreeSelector::UpTo(gb.bound()))?;
        words.sort_by(crate::words::lex_cmp);
        let generators = words
            .into_iter()
            .map(|u| {
                let z = gb.normal_form(&braiding.bracket(&u, mode))?;
                Ok(Generator {
                    degree: gb.alphabet().degree(&u),
                    height: gb.height(&u)?,
                    word: u,
                    z,
                })
            })
            .collect::<Result<Vec<_>, PbwError>>()?;
        Ok(PbwData {
            gb,
            braiding,
            mode,
            generators,
            lex_bases: OnceLock::new(),
        })
    }

    pub fn gb(&self) -> &Arc<GroebnerBasis> {
        &self.gb
    }

    pub fn braiding(&self) -> &Arc<Braiding> {
        &self.braiding
    }

    pub fn mode(&self) -> BracketMode {
        self.mode
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_words(&self) -> Vec<Word> {
        self.generators.iter().map(|g| g.word.clone()).collect()
    }

    pub fn bound(&self) -> u32 {
        self.gb.bound()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.gb.alphabet()
    }

    fn views(&self, order: &[usize]) -> Vec<GenView<'_>> {
        order
            .iter()
            .map(|&i| GenView {
                index: i,
                z: &self.generators[i].z,
                degree: &self.generators[i].degree,
                height: self.generators[i].height,
            })
            .collect()
    }

    /// The lex order followed by `random` seeded shuffles.
    pub fn default_orders(&self, random: usize, seed: u64) -> Vec<Vec<usize>> {
        let lex: Vec<usize> = (0..self.generators.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut orders = vec![lex.clone()];
        for _ in 0..random {
            let mut o = lex.clone();
            o.shuffle(&mut rng);
            orders.push(o);
        }
        orders
    }

    /// Monomials under `order` (smallest generator first in each product), with degree and normal form.
    pub fn monomials(&self, order: &[usize]) -> Vec<(PbwMonomial, Degree, Polynomial)> {
        enumerate_monomials(&self.gb, &self.views(order), self.bound())
    }

    /// Checks, per degree up to the bound, that the ordered monomials form a basis of the quotient.
    pub fn verify(&self, orders: &[Vec<usize>]) -> PbwVerification {
        let alphabet = self.alphabet().clone();
        let degrees = degrees_up_to(&alphabet, self.bound(), alphabet.size());
        let reports = orders
            .iter()
            .map(|order| {
                let mut by_degree: BTreeMap<Degree, Vec<Polynomial>> = BTreeMap::new();
                for (_, d, p) in self.monomials(order) {
                    by_degree.entry(d).or_default().push(p);
                }
                let verdicts = degrees
                    .par_iter()
                    .map(|d| {
                        let polys = by_degree.get(d).map(Vec::as_slice).unwrap_or(&[]);
                        self.degree_verdict(d, polys)
                    })
                    .collect();
                OrderReport {
                    order: order.clone(),
                    degrees: verdicts,
                }
            })
            .collect();
        PbwVerification { orders: reports }
    }

    fn degree_verdict(&self, d: &Degree, polys: &[Polynomial]) -> DegreeVerdict {
        let dimension = self
            .gb
            .irreducible_words(WordSet::All, &DegreeSelector::Exact(d.clone()))
            .map(|v| v.len())
            .unwrap_or(0);
        let mut span = Span::new();
        for p in polys {
            span.insert(p);
        }
        let rank = span.rank();
        DegreeVerdict {
            degree: d.clone(),
            monomials: polys.len(),
            dimension,
            rank,
            passed: polys.len() == dimension && rank == dimension,
        }
    }

    fn lex_bases(&self) -> &BTreeMap<Degree, DegreeBasis> {
        self.lex_bases.get_or_init(|| {
            let lex: Vec<usize> = (0..self.generators.len()).collect();
            let mut grouped: BTreeMap<Degree, Vec<(PbwMonomial, Polynomial)>> = BTreeMap::new();
            for (m, d, p) in self.monomials(&lex) {
                grouped.entry(d).or_default().push((m, p));
            }
            grouped
                .into_iter()
                .map(|(d, items)| {
                    let mut span = Span::with_provenance();
                    for (_, p) in &items {
                        span.insert(p);
                    }
                    let dimension = self
                        .gb
                        .irreducible_words(WordSet::All, &DegreeSelector::Exact(d.clone()))
                        .map(|v| v.len())
                        .unwrap_or(0);
                    let verified = span.rank() == items.len() && items.len() == dimension;
                    let basis = DegreeBasis {
                        monomials: items.into_iter().map(|(m, _)| m).collect(),
                        span,
                        verified,
                    };
                    (d, basis)
                })
                .collect()
        })
    }

    /// Expansion of f + I over the lex-ordered PBW monomials.
    pub fn to_pbw_normal_form(&self, f: &Polynomial) -> Result<PbwExpansion, PbwError> {
        let nf = self.gb.normal_form(f)?;
        let mut out = Vec::new();
        for (d, part) in nf.components() {
            let basis = self
                .lex_bases()
                .get(&d)
                .filter(|b| b.verified)
                .ok_or_else(|| PbwError::BasisNotVerified(d.clone()))?;
            let coeffs = basis
                .span
                .solve(&part)
                .ok_or_else(|| PbwError::BasisNotVerified(d.clone()))?;
            for (k, c) in coeffs {
                out.push((basis.monomials[k].clone(), c));
            }
        }
        Ok(out)
    }

    /// Normal form of z_i·z_j − ρ·z_j·z_i (ρ = 1 for the plain commutator).
    fn commutator_nf(&self, i: usize, j: usize, braided: bool) -> Result<Polynomial, PbwError> {
        let zi = &self.generators[i].z;
        let zj = &self.generators[j].z;
        let c = if braided {
            self.braiding.commutator(zi, zj, self.mode)?
        } else {
            &(zi * zj) - &(zj * zi)
        };
        Ok(self.gb.normal_form(&c)?)
    }

    /// Confirms the power and commutator filtration properties of the generators.
    pub fn filtration_check(&self) -> FiltrationReport {
        let mut entries = Vec::new();
        let bound = self.bound();
        for (i, g) in self.generators.iter().enumerate() {
            let Some(h) = g.height.finite() else { continue };
            if g.degree.total() * h > bound {
                continue;
            }
            let zero = Polynomial::one(self.gb.field(), self.alphabet());
            let power = (0..h).fold(zero, |acc, _| &acc * &g.z);
            entries.push(self.filtration_entry(FiltrationKind::Power { generator: i, exponent: h }, i, &power));
        }
        for i in 0..self.generators.len() {
            for j in 0..i {
                let d = self.generators[i].degree.add(&self.generators[j].degree);
                if d.total() > bound {
                    continue;
                }
                let c = self
                    .braiding
                    .commutator(&self.generators[i].z, &self.generators[j].z, self.mode)
                    .expect("generators are homogeneous");
                entries.push(self.filtration_entry(FiltrationKind::Commutator { xi: i, eta: j }, i, &c));
            }
        }
        FiltrationReport { entries }
    }

    fn filtration_entry(&self, kind: FiltrationKind, below: usize, f: &Polynomial) -> FiltrationEntry {
        match self.to_pbw_normal_form(f) {
            Ok(expansion) => {
                let passed = expansion.iter().all(|(m, _)| m.generators().all(|g| g < below));
                FiltrationEntry {
                    kind,
                    expansion: Some(expansion),
                    passed,
                }
            }
            Err(_) => FiltrationEntry {
                kind,
                expansion: None,
                passed: false,
            },
        }
    }

    /// For finite heights n: (n)_q = 0 and q = χ(deg u, deg u) has the order the height forces.
    pub fn root_of_unity_check(&self) -> RootOfUnityReport {
        let field = self.gb.field();
        let p = field.characteristic();
        let entries = self
            .generators
            .iter()
            .enumerate()
            .filter_map(|(i, g)| {
                let n = g.height.finite()?;
                let q = self.braiding.chi().eval(&g.degree, &g.degree);
                let qn = q_integer(n, &q);
                let order = q
                    .root_of_unity_order(field, n as u64)
                    .unwrap_or(RootOrder::NotRootWithin(n as u64));
                let order_ok = match order {
                    RootOrder::Order(t) if p == 0 => t == n as u64,
                    RootOrder::Order(t) => {
                        let mut m = n as u64;
                        while m > t && m.is_multiple_of(p) {
                            m /= p;
                        }
                        m == t
                    }
                    RootOrder::NotRootWithin(_) => false,
                };
                Some(RootEntry {
                    generator: i,
                    height: n,
                    passed: qn.is_zero() && order_ok,
                    q,
                    q_integer: qn,
                    order,
                })
            })
            .collect();
        RootOfUnityReport { entries }
    }

    /// Lower bound for the GK dimension: generators whose height is unknown within the bound.
    pub fn gk_lower_bound(&self) -> usize {
        self.generators
            .iter()
            .filter(|g| g.height.finite().is_none())
            .count()
    }

    /// The Ore tower k ⊂ K_1 ⊂ … of derivation type, with the derivation tables.
    pub fn ore_tower(&self) -> Result<OreTower, PbwError> {
        if !self.braiding.chi().is_trivial() {
            return Err(PbwError::NontrivialBicharacter);
        }
        if self.generators.iter().any(|g| g.height.finite().is_some()) {
            return Err(PbwError::FiniteHeightPresent);
        }
        let bound = self.bound();
        let mut steps = Vec::new();
        for i in 0..self.generators.len() {
            let mut derivations = Vec::new();
            let mut certified = true;
            for j in 0..i {
                let d = self.generators[i].degree.add(&self.generators[j].degree);
                if d.total() > bound {
                    continue;
                }
                let c = self.commutator_nf(i, j, false)?;
                match self.to_pbw_normal_form(&c) {
                    Ok(e) => {
                        if !e.iter().all(|(m, _)| m.generators().all(|g| g < i)) {
                            certified = false;
                        }
                        derivations.push((j, Some(e)));
                    }
                    Err(_) => {
                        certified = false;
                        derivations.push((j, None));
                    }
                }
            }
            steps.push(OreStep {
                generator: i,
                derivations,
                certified,
            });
        }
        Ok(OreTower { steps })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiltrationKind {
    /// z_ξ^{h(ξ)} for a finite height.
    Power { generator: usize, exponent: u32 },
    /// [z_ξ, z_η]_ρ for η <_lex ξ.
    Commutator { xi: usize, eta: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationEntry {
    pub kind: FiltrationKind,
    /// `None` when the expansion could not be computed (unverified degree).
    pub expansion: Option<PbwExpansion>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationReport {
    pub entries: Vec<FiltrationEntry>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEntry {
    pub generator: usize,
    pub height: u32,
    pub q: Scalar,
    pub q_integer: Scalar,
    pub order: RootOrder,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnityReport {
    pub entries: Vec<RootEntry>,
}

impl RootOfUnityReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreStep {
    pub generator: usize,
    /// δ(z_j) for each earlier generator j within the bound.
    pub derivations: Vec<(usize, Option<PbwExpansion>)>,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreTower {
    pub steps: Vec<OreStep>,
}

impl OreTower {
    pub fn certified(&self) -> bool {
        self.steps.iter().all(|s| s.certified)
    }
}

/// Per-degree verdict of the relative PBW check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeVerdict {
    pub degree: Degree,
    pub dimension: usize,
    pub expected: usize,
    pub left_rank: usize,
    pub right_rank: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeReport {
    pub xi: Vec<Word>,
    pub degrees: Vec<RelativeVerdict>,
}

impl RelativeReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.passed)
    }
}

/// Checks that the Ξ-monomials form a free left and right basis of A_{Y2} over B = A_{Y1},
/// where Y1 and Y2 are the first `y1` and `y2` letters.
pub fn relative_pbw(
    gb: &GroebnerBasis,
    braiding: &Braiding,
    y1: usize,
    y2: usize,
    mode: BracketMode,
) -> Result<RelativeReport, PbwError> {
    let alphabet = gb.alphabet().clone();
    if y1 > y2 || y2 > alphabet.size() {
        return Err(PbwError::NotClosed);
    }
    let (_, ok1) = gb.intersect_subalgebra(y1)?;
    let (_, ok2) = gb.intersect_subalgebra(y2)?;
    if !ok1 || !ok2 {
        return Err(PbwError::SubalgebraNotVerified);
    }
    let bound = gb.bound();
    let mut xi = gb.irreducible_words_over(WordSet::Lyndon, &DegreeSelector::UpTo(bound), y2)?;
    xi.retain(|w| w.letters().iter().any(|&x| x as usize >= y1));
    xi.sort_by(crate::words::lex_cmp);
    let gens: Vec<(Polynomial, Degree, Height)> = xi
        .iter()
        .map(|u| {
            Ok((
                gb.normal_form(&braiding.bracket(u, mode))?,
                alphabet.degree(u),
                gb.height(u)?,
            ))
        })
        .collect::<Result<_, PbwError>>()?;
    let views: Vec<GenView<'_>> = gens
        .iter()
        .enumerate()
        .map(|(i, (z, d, h))| GenView {
            index: i,
            z,
            degree: d,
            height: *h,
        })
        .collect();
    let monomials = enumerate_monomials(gb, &views, bound);
    let mut b_words: HashMap<Degree, Vec<Word>> = HashMap::new();
    for d in degrees_up_to(&alphabet, bound, y1) {
        let ws = gb.irreducible_words_over(WordSet::All, &DegreeSelector::Exact(d.clone()), y1)?;
        b_words.insert(d, ws);
    }
    let degrees = degrees_up_to(&alphabet, bound, y2);
    let verdicts = degrees
        .par_iter()
        .map(|g| {
            let dimension = gb
                .irreducible_words_over(WordSet::All, &DegreeSelector::Exact(g.clone()), y2)
                .map(|v| v.len())
                .unwrap_or(0);
            let mut expected = 0;
            let mut left = Span::new();
            let mut right = Span::new();
            for (_, dm, zm) in &monomials {
                let Some(rest) = g.checked_sub(dm) else { continue };
                let Some(bs) = b_words.get(&rest) else { continue };
                for b in bs {
                    expected += 1;
                    let bp = Polynomial::word(gb.field(), &alphabet, b.clone());
                    left.insert(&gb.normal_form(&(&bp * zm)).expect("within bound"));
                    right.insert(&gb.normal_form(&(zm * &bp)).expect("within bound"));
                }
            }
            RelativeVerdict {
                degree: g.clone(),
                dimension,
                expected,
                left_rank: left.rank(),
                right_rank: right.rank(),
                passed: dimension == expected && left.rank() == expected && right.rank() == expected,
            }
        })
        .collect();
    Ok(RelativeReport {
        xi,
        degrees: verdicts,
    })
}
