//! Exact coefficient fields: the rationals, prime fields and cyclotomic fields.
//!
//! A [`Field`] is a cheap handle (the cyclotomic modulus is shared behind an
//! `Arc`); a [`Scalar`] is always kept in canonical form so that structural
//! equality is field equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("scalars belong to different fields ({0} vs {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroScalar,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic order must be at least 1")]
    BadCyclotomicOrder,
    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),
}

/// Which exact field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    Cyclotomic(u32),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::PrimeField(p) => write!(f, "Fp p={p}"),
            FieldSpec::Cyclotomic(n) => write!(f, "cyclotomic n={n}"),
        }
    }
}

/// The n-th cyclotomic polynomial, monic with integer coefficients (lowest degree first).
#[derive(Debug)]
pub struct CyclotomicModulus {
    order: u32,
    phi: Vec<BigInt>,
}

impl CyclotomicModulus {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the modulus, i.e. Euler's totient of the order.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.phi
    }
}

fn cyclotomic_cache() -> &'static Mutex<std::collections::HashMap<u32, Arc<CyclotomicModulus>>> {
    static CACHE: OnceLock<Mutex<std::collections::HashMap<u32, Arc<CyclotomicModulus>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()))
}

/// Exact division of integer polynomials (lowest degree first) by a monic divisor.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "cyclotomic division left a remainder");
    quot
}

fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_exact_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn cyclotomic_modulus(n: u32) -> Arc<CyclotomicModulus> {
    let mut cache = cyclotomic_cache().lock().expect("cyclotomic cache poisoned");
    cache
        .entry(n)
        .or_insert_with(|| {
            Arc::new(CyclotomicModulus {
                order: n,
                phi: cyclotomic_polynomial(n),
            })
        })
        .clone()
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// A concrete coefficient field.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    modulus: Option<Arc<CyclotomicModulus>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn rationals() -> Field {
        Field {
            spec: FieldSpec::Rationals,
            modulus: None,
        }
    }

    /// The prime field F_p; primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if p >= 1 << 32 {
            return Err(ScalarError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Field {
            spec: FieldSpec::PrimeField(p),
            modulus: None,
        })
    }

    /// The cyclotomic field Q[t]/Phi_n(t).
    pub fn cyclotomic(n: u32) -> Result<Field, ScalarError> {
        if n == 0 {
            return Err(ScalarError::BadCyclotomicOrder);
        }
        Ok(Field {
            spec: FieldSpec::Cyclotomic(n),
            modulus: Some(cyclotomic_modulus(n)),
        })
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Field, ScalarError> {
        match spec {
            FieldSpec::Rationals => Ok(Field::rationals()),
            FieldSpec::PrimeField(p) => Field::prime(p),
            FieldSpec::Cyclotomic(n) => Field::cyclotomic(n),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// 0 for characteristic zero fields, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self.spec {
            FieldSpec::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        self.from_rational(&BigRational::from_integer(n.clone()))
            .expect("integers embed in every field")
    }

    /// Embeds a rational number; fails in F_p when p divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar, ScalarError> {
        match self.spec {
            FieldSpec::Rationals => Ok(Scalar::Rational(r.clone())),
            FieldSpec::PrimeField(p) => {
                let num = residue(r.numer(), p);
                let den = residue(r.denom(), p);
                if den == 0 {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Scalar::Modular {
                    residue: mul_mod(num, inv_mod(den, p), p),
                    modulus: p,
                })
            }
            FieldSpec::Cyclotomic(_) => {
                let modulus = self.modulus.clone().expect("cyclotomic field carries its modulus");
                Ok(Scalar::cyclotomic(modulus, vec![r.clone()]))
            }
        }
    }

    /// The distinguished primitive root of unity z (only in cyclotomic fields).
    pub fn zeta(&self) -> Option<Scalar> {
        let modulus = self.modulus.clone()?;
        let coeffs = vec![BigRational::zero(), BigRational::one()];
        Some(Scalar::cyclotomic(modulus, coeffs))
    }

    /// Candidate multiplicative orders of roots of unity in this field, ascending.
    fn root_orders(&self) -> Vec<u64> {
        match self.spec {
            FieldSpec::Rationals => vec![1, 2],
            FieldSpec::PrimeField(p) => divisors(p - 1),
            FieldSpec::Cyclotomic(n) => {
                let n = n as u64;
                divisors(n.lcm(&2))
            }
        }
    }
}

fn residue(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Result of [`Scalar::root_of_unity_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootOrder {
    Order(u64),
    NotRootWithin(u64),
}

/// An exact field element in canonical form.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rational(BigRational),
    Modular {
        residue: u64,
        modulus: u64,
    },
    /// Coefficients of a residue polynomial in z, lowest degree first, with no
    /// trailing zeros and degree below phi(n).
    Cyclotomic {
        modulus: Arc<CyclotomicModulus>,
        coeffs: Vec<BigRational>,
    },
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (
                Scalar::Modular {
                    residue: a,
                    modulus: p,
                },
                Scalar::Modular {
                    residue: b,
                    modulus: q,
                },
            ) => a == b && p == q,
            (
                Scalar::Cyclotomic {
                    modulus: m1,
                    coeffs: a,
                },
                Scalar::Cyclotomic {
                    modulus: m2,
                    coeffs: b,
                },
            ) => m1.order == m2.order && a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rational(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            Scalar::Modular { residue, modulus } => {
                1u8.hash(state);
                residue.hash(state);
                modulus.hash(state);
            }
            Scalar::Cyclotomic { modulus, coeffs } => {
                2u8.hash(state);
                modulus.order.hash(state);
                coeffs.hash(state);
            }
        }
    }
}

fn trim(coeffs: &mut Vec<BigRational>) {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
}

/// Reduces a rational polynomial modulo the (monic, integral) cyclotomic polynomial.
fn reduce_mod(mut coeffs: Vec<BigRational>, phi: &[BigInt]) -> Vec<BigRational> {
    let d = phi.len() - 1;
    while coeffs.len() > d {
        let top = coeffs.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = coeffs.len() - d;
        for (j, c) in phi[..d].iter().enumerate() {
            coeffs[shift + j] -= &top * BigRational::from_integer(c.clone());
        }
    }
    trim(&mut coeffs);
    coeffs
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Polynomial division with remainder over Q (lowest degree first, trimmed inputs).
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonempty") / &lead;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    (quot, rem)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

/// Inverse of a nonzero residue modulo an irreducible polynomial, by extended Euclid.
fn poly_inverse_mod(a: &[BigRational], phi: &[BigInt]) -> Vec<BigRational> {
    let m: Vec<BigRational> = phi
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let (mut r0, mut r1) = (m.clone(), a.to_vec());
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
        (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant since phi is irreducible and a is nonzero.
    let c = r0[0].clone();
    let scaled: Vec<BigRational> = s0.into_iter().map(|x| x / &c).collect();
    reduce_mod(scaled, phi)
}

impl Scalar {
    fn cyclotomic(modulus: Arc<CyclotomicModulus>, coeffs: Vec<BigRational>) -> Scalar {
        let coeffs = reduce_mod(coeffs, &modulus.phi);
        Scalar::Cyclotomic { modulus, coeffs }
    }

    pub fn field_spec(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
            Scalar::Cyclotomic { modulus, .. } => FieldSpec::Cyclotomic(modulus.order),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { residue, .. } => *residue == 0,
            Scalar::Cyclotomic { coeffs, .. } => coeffs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { residue, .. } => *residue == 1,
            Scalar::Cyclotomic { coeffs, .. } => coeffs.len() == 1 && coeffs[0].is_one(),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::zero()),
            Scalar::Modular { modulus, .. } => Scalar::Modular {
                residue: 0,
                modulus: *modulus,
            },
            Scalar::Cyclotomic { modulus, .. } => Scalar::Cyclotomic {
                modulus: modulus.clone(),
                coeffs: Vec::new(),
            },
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Modular { modulus, .. } => Scalar::Modular {
                residue: 1 % *modulus,
                modulus: *modulus,
            },
            Scalar::Cyclotomic { modulus, .. } => Scalar::Cyclotomic {
                modulus: modulus.clone(),
                coeffs: vec![BigRational::one()],
            },
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field_spec() == other.field_spec() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(
                self.field_spec(),
                other.field_spec(),
            ))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { residue: a, modulus }, Scalar::Modular { residue: b, .. }) => {
                Scalar::Modular {
                    residue: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            (Scalar::Cyclotomic { modulus, coeffs: a }, Scalar::Cyclotomic { coeffs: b, .. }) => {
                let n = a.len().max(b.len());
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                    let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                    out.push(x + y);
                }
                trim(&mut out);
                Scalar::Cyclotomic {
                    modulus: modulus.clone(),
                    coeffs: out,
                }
            }
            _ => unreachable!("field equality checked above"),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { residue: a, modulus }, Scalar::Modular { residue: b, .. }) => {
                Scalar::Modular {
                    residue: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            (Scalar::Cyclotomic { modulus, coeffs: a }, Scalar::Cyclotomic { coeffs: b, .. }) => {
                Scalar::cyclotomic(modulus.clone(), poly_mul(a, b))
            }
            _ => unreachable!("field equality checked above"),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
            Scalar::Cyclotomic { modulus, coeffs } => Scalar::Cyclotomic {
                modulus: modulus.clone(),
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: inv_mod(*residue, *modulus),
                modulus: *modulus,
            },
            Scalar::Cyclotomic { modulus, coeffs } => Scalar::Cyclotomic {
                modulus: modulus.clone(),
                coeffs: poly_inverse_mod(coeffs, &modulus.phi),
            },
        })
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Smallest m <= bound with self^m = 1, searched over the orders a root of
    /// unity can have in the ambient field.
    pub fn root_of_unity_order(&self, field: &Field, bound: u64) -> Result<RootOrder, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroScalar);
        }
        for m in field.root_orders() {
            if m > bound {
                break;
            }
            if self.pow(m as i64)?.is_one() {
                return Ok(RootOrder::Order(m));
            }
        }
        Ok(RootOrder::NotRootWithin(bound))
    }

    /// Whether printing this scalar yields a single signed monomial (so it can
    /// be juxtaposed with a word without parentheses).
    pub fn is_simple(&self) -> bool {
        match self {
            Scalar::Cyclotomic { coeffs, .. } => {
                coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
            }
            _ => true,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative_looking(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular { .. } => false,
            Scalar::Cyclotomic { coeffs, .. } => coeffs
                .iter()
                .rev()
                .find(|c| !c.is_zero())
                .is_some_and(|c| c.is_negative()),
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Modular { residue, .. } => write!(f, "{residue}"),
            Scalar::Cyclotomic { coeffs, .. } => {
                if coeffs.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (k, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let abs = c.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { "-" } else { "+" })?;
                    }
                    first = false;
                    let power = match k {
                        0 => String::new(),
                        1 => "z".to_string(),
                        _ => format!("z^{k}"),
                    };
                    if k == 0 {
                        write!(f, "{}", fmt_rational(&abs))?;
                    } else if abs.is_one() {
                        write!(f, "{power}")?;
                    } else {
                        write!(f, "{}*{power}", fmt_rational(&abs))?;
                    }
                }
                Ok(())
            }
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics when the operands live in different fields; use the
            /// `try_` variant for unvalidated input.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).expect("scalar field mismatch")
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on a zero divisor or mismatched fields.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.try_div(rhs).expect("invalid scalar division")
    }
}

/// (n)_q = 1 + q + ... + q^{n-1}.
pub fn q_integer(n: u32, q: &Scalar) -> Scalar {
    let mut acc = q.zero_like();
    let mut power = q.one_like();
    for _ in 0..n {
        acc = &acc + &power;
        power = &power * q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn fraction_and_modular_arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(&f5.from_i64(3) * &f5.from_i64(4), f5.from_i64(2));
        assert_eq!(f5.from_i64(-1).to_string(), "4");
    }

    #[test]
    fn zeta_squared_in_gaussian_field() {
        let f = Field::cyclotomic(4).unwrap();
        let z = f.zeta().unwrap();
        assert_eq!(&z * &z, f.from_i64(-1));
    }

    #[test]
    fn cyclotomic_polynomials() {
        let phi = |n| {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(phi(1), vec![-1, 1]);
        assert_eq!(phi(3), vec![1, 1, 1]);
        assert_eq!(phi(4), vec![1, 0, 1]);
        assert_eq!(phi(6), vec![1, -1, 1]);
        assert_eq!(phi(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in 2..=12u32 {
            let f = Field::cyclotomic(n).unwrap();
            let z = f.zeta().unwrap();
            assert!(z.pow(n as i64).unwrap().is_one(), "n = {n}");
            assert_eq!(
                z.root_of_unity_order(&f, 100).unwrap(),
                RootOrder::Order(n as u64)
            );
        }
    }

    #[test]
    fn root_orders_over_rationals() {
        let f = Field::rationals();
        assert_eq!(f.one().root_of_unity_order(&f, 5).unwrap(), RootOrder::Order(1));
        assert_eq!(f.from_i64(-1).root_of_unity_order(&f, 5).unwrap(), RootOrder::Order(2));
        assert_eq!(
            f.from_i64(2).root_of_unity_order(&f, 100).unwrap(),
            RootOrder::NotRootWithin(100)
        );
        assert_eq!(
            f.zero().root_of_unity_order(&f, 3),
            Err(ScalarError::ZeroScalar)
        );
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(
            q(1, 2).try_add(&f5.one()),
            Err(ScalarError::FieldMismatch(..))
        ));
        assert_eq!(f5.zero().inv(), Err(ScalarError::DivisionByZero));
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn cyclotomic_inverse() {
        let f = Field::cyclotomic(5).unwrap();
        let z = f.zeta().unwrap();
        let a = &(&z * &z) + &f.from_i64(3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn printing() {
        let f = Field::cyclotomic(7).unwrap();
        let z = f.zeta().unwrap();
        let x = &(&(&z * &z) * &q_cyc(&f, 1, 2)) - &(&(&z * &f.from_i64(3)) - &f.one());
        assert_eq!(x.to_string(), "1/2*z^2 - 3*z + 1");
        assert_eq!((-&z).to_string(), "-z");
        assert_eq!(q(-3, 4).to_string(), "-3/4");
    }

    fn q_cyc(f: &Field, n: i64, d: i64) -> Scalar {
        f.from_rational(&BigRational::new(n.into(), d.into())).unwrap()
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(3, &q(2, 1)), q(7, 1));
        let f3 = Field::prime(3).unwrap();
        assert!(q_integer(3, &f3.one()).is_zero());
    }
}
