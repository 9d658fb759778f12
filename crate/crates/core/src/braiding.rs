//! Bicharacters, diagonal braiding scalars, q-binomials, braided commutators and bracketing.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::freealg::{PolyError, Polynomial};
use crate::scalar::{Field, Scalar, ScalarError};
use crate::words::{glex_cmp, is_lyndon, lyndon_decompose, shirshov, Alphabet, Degree, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidingError {
    #[error("q-binomial index {i} out of range for n = {n}")]
    IndexOutOfRange { n: u32, i: u32 },
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("bicharacter matrix must be square of size {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("bicharacter entries must be nonzero")]
    ZeroEntry,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which braiding the bracket uses: ρ = τ or ρ = τ⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketMode {
    Tau,
    TauInverse,
}

impl BracketMode {
    pub fn name(self) -> &'static str {
        match self {
            BracketMode::Tau => "tau",
            BracketMode::TauInverse => "tau-inverse",
        }
    }
}

/// A bicharacter χ on N^θ given by the matrix Q_ij = χ(e_i, e_j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    field: Field,
    matrix: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    pub fn new(field: &Field, matrix: Vec<Vec<Scalar>>) -> Result<Bicharacter, BraidingError> {
        let n = matrix.len();
        for row in &matrix {
            if row.len() != n {
                return Err(BraidingError::Shape {
                    expected: n,
                    got: row.len(),
                });
            }
            for x in row {
                if x.field_spec() != field.spec() {
                    return Err(ScalarError::FieldMismatch(field.spec(), x.field_spec()).into());
                }
                if x.is_zero() {
                    return Err(BraidingError::ZeroEntry);
                }
            }
        }
        Ok(Bicharacter {
            field: field.clone(),
            matrix,
        })
    }

    /// The all-ones bicharacter.
    pub fn trivial(field: &Field, theta: usize) -> Bicharacter {
        Bicharacter {
            field: field.clone(),
            matrix: vec![vec![field.one(); theta]; theta],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn theta(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn is_trivial(&self) -> bool {
        self.matrix.iter().flatten().all(Scalar::is_one)
    }

    /// Whether Q_ij·Q_ji = 1 for all i, j (so the braiding squares to the identity).
    pub fn is_symmetric_braiding(&self) -> bool {
        let n = self.theta();
        (0..n).all(|i| (0..n).all(|j| (&self.matrix[i][j] * &self.matrix[j][i]).is_one()))
    }

    /// χ(α, β) = Π Q_ij^{α_i β_j}.
    pub fn eval(&self, alpha: &Degree, beta: &Degree) -> Scalar {
        let mut acc = self.field.one();
        for (i, &a) in alpha.components().iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in beta.components().iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let e = (a as i64) * (b as i64);
                acc = &acc * &self.matrix[i][j].pow(e).expect("nonnegative power");
            }
        }
        acc
    }

    /// The braiding scalar ρ_{α,β}: χ(α,β) for τ, and χ(β,α)⁻¹ for τ⁻¹.
    ///
    /// τ(u⊗v) = χ(deg u, deg v)·v⊗u, so τ⁻¹(u⊗v) = χ(deg v, deg u)⁻¹·v⊗u.
    pub fn rho(&self, mode: BracketMode, alpha: &Degree, beta: &Degree) -> Scalar {
        match mode {
            BracketMode::Tau => self.eval(alpha, beta),
            BracketMode::TauInverse => self
                .eval(beta, alpha)
                .inv()
                .expect("bicharacter values are nonzero"),
        }
    }
}

/// Gaussian binomial coefficient by the division-free q-Pascal recurrence.
pub fn qbinom(n: u32, i: u32, q: &Scalar, field: &Field) -> Result<Scalar, BraidingError> {
    if i > n {
        return Err(BraidingError::IndexOutOfRange { n, i });
    }
    // row[k] holds C(m, k)_q for the current m.
    let mut row = vec![field.one()];
    for m in 1..=n {
        let mut next = vec![field.zero(); m as usize + 1];
        for k in 0..=m as usize {
            let mut v = field.zero();
            if k >= 1 {
                v = &v + &row[k - 1];
            }
            if k < m as usize {
                v = &v + &(&q.pow(k as i64)? * &row[k]);
            }
            next[k] = v;
        }
        row = next;
    }
    Ok(row[i as usize].clone())
}

/// Bicharacter together with a memo of bracket values, shared by all computations over one alphabet.
#[derive(Debug)]
pub struct Braiding {
    field: Field,
    alphabet: Arc<Alphabet>,
    chi: Bicharacter,
    memo: Mutex<HashMap<(Word, BracketMode), Polynomial>>,
}

impl Braiding {
    pub fn new(field: &Field, alphabet: &Arc<Alphabet>, chi: Bicharacter) -> Result<Braiding, BraidingError> {
        if chi.theta() != alphabet.theta() {
            return Err(BraidingError::Shape {
                expected: alphabet.theta(),
                got: chi.theta(),
            });
        }
        Ok(Braiding {
            field: field.clone(),
            alphabet: alphabet.clone(),
            chi,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn chi(&self) -> &Bicharacter {
        &self.chi
    }

    /// ρ_{u,v} for words.
    pub fn rho_words(&self, mode: BracketMode, u: &Word, v: &Word) -> Scalar {
        self.chi
            .rho(mode, &self.alphabet.degree(u), &self.alphabet.degree(v))
    }

    /// [f, g]_ρ = fg − ρ_{deg f, deg g}·gf.
    pub fn commutator(&self, f: &Polynomial, g: &Polynomial, mode: BracketMode) -> Result<Polynomial, BraidingError> {
        if f.is_zero() || g.is_zero() {
            return Ok(Polynomial::zero(&self.field, &self.alphabet));
        }
        let df = f.degree().ok_or(BraidingError::Inhomogeneous)?;
        let dg = g.degree().ok_or(BraidingError::Inhomogeneous)?;
        let r = self.chi.rho(mode, &df, &dg);
        let mut out = f.try_mul(g)?;
        out.add_scaled(&g.try_mul(f)?, &r.neg());
        Ok(out)
    }

    /// The bracket [u]_ρ: letters stay, Lyndon words bracket their Shirshov
    /// parts, other words multiply the brackets of their Lyndon atoms.
    pub fn bracket(&self, u: &Word, mode: BracketMode) -> Polynomial {
        if u.len() <= 1 {
            return Polynomial::word(&self.field, &self.alphabet, u.clone());
        }
        let key = (u.clone(), mode);
        if let Some(p) = self.memo.lock().expect("bracket memo poisoned").get(&key) {
            return p.clone();
        }
        let value = if is_lyndon(u) {
            let (l, r) = shirshov(u).expect("length at least 2");
            self.commutator(&self.bracket(&l, mode), &self.bracket(&r, mode), mode)
                .expect("brackets of words are homogeneous")
        } else {
            let mut acc = Polynomial::one(&self.field, &self.alphabet);
            for atom in lyndon_decompose(u) {
                acc = &acc * &self.bracket(&atom, mode);
            }
            acc
        };
        self.memo
            .lock()
            .expect("bracket memo poisoned")
            .insert(key, value.clone());
        value
    }

    /// Coefficients c_w with f = Σ c_w [w]_ρ, by back-substitution on leading words.
    pub fn bracket_basis_solve(&self, f: &Polynomial, mode: BracketMode) -> Result<BTreeMap<Word, Scalar>, BraidingError> {
        if !f.is_homogeneous() {
            return Err(BraidingError::Inhomogeneous);
        }
        let mut rest = f.clone();
        let mut out = BTreeMap::new();
        while let Ok((w, c)) = rest.leading() {
            let (w, c) = (w.clone(), c.clone());
            rest.add_scaled(&self.bracket(&w, mode), &c.neg());
            out.insert(w, c);
        }
        Ok(out)
    }

    /// Sorts words descending in glex (leading-first) for reports.
    pub fn sort_desc(&self, words: &mut [Word]) {
        words.sort_by(|u, v| glex_cmp(&self.alphabet, v, u));
    }
}
