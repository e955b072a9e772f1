//! Exact scalars: rational numbers and elements of cyclotomic fields `Q(ζ_e)`.
//!
//! A [`FieldElement`] is either a rational number or the residue of a
//! rational polynomial modulo the cyclotomic polynomial `Φ_e`. Elements that
//! happen to lie in `Q` are always stored in the rational variant, so
//! structural equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest cyclotomic order accepted for root-of-unity parameters.
pub const MAX_CYCLOTOMIC_ORDER: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u32, u32),
    #[error("invalid q: {0}")]
    InvalidQ(String),
}

/// Rational polynomial helpers used for the cyclotomic representation.
/// Coefficient vectors are indexed by degree and kept without trailing zeros.
mod qpoly {
    use super::*;

    pub fn trim(v: &mut Vec<BigRational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out: Vec<BigRational> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                match b.get(i) {
                    Some(y) => x - y,
                    None => x,
                }
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn scale(a: &[BigRational], c: &BigRational) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = a.iter().map(|x| x * c).collect();
        trim(&mut out);
        out
    }

    /// Division with remainder by a nonzero divisor.
    pub fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        let lead_inv = b[db].recip();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quo = vec![BigRational::zero(); rem.len() - db];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = rem.last().unwrap() * &lead_inv;
            for (i, bc) in b.iter().enumerate() {
                rem[shift + i] -= &c * bc;
            }
            quo[shift] = c;
            rem.pop();
            trim(&mut rem);
        }
        trim(&mut quo);
        (quo, rem)
    }

    /// Inverse of `a` modulo `m`, assuming `gcd(a, m) = 1`.
    pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
        // Extended Euclid tracking only the coefficient of `a`.
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        let (mut t0, mut t1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let t2 = sub(&t0, &mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.len() != 1 {
            return None;
        }
        let inv = r0[0].recip();
        let (_, out) = divmod(&scale(&t0, &inv), m);
        Some(out)
    }
}

/// The cyclotomic field `Q(ζ_e)` for `e ≥ 3`, presented as `Q[z]/(Φ_e)`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    modulus: Vec<BigRational>,
}

impl CyclotomicField {
    /// Returns the shared field instance of the given order (`3 ≤ e ≤ MAX_CYCLOTOMIC_ORDER`).
    pub fn get(order: u32) -> Arc<CyclotomicField> {
        assert!(
            (3..=MAX_CYCLOTOMIC_ORDER).contains(&order),
            "cyclotomic order {order} out of range"
        );
        static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let mut map = FIELDS.get_or_init(Default::default).lock().unwrap();
        map.entry(order)
            .or_insert_with(|| {
                Arc::new(CyclotomicField {
                    order,
                    modulus: cyclotomic_polynomial(order)
                        .into_iter()
                        .map(BigRational::from_integer)
                        .collect(),
                })
            })
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of `Φ_e`, i.e. `φ(e)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Integer coefficients of `Φ_e`, lowest degree first.
    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        qpoly::trim(&mut v);
        if v.len() >= self.modulus.len() {
            v = qpoly::divmod(&v, &self.modulus).1;
        }
        v
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
///
/// Computed by dividing `x^n - 1` by `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    let to_q = |v: &[BigInt]| v.iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>();
    let mut num: Vec<BigRational> = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = qpoly::divmod(&num, &to_q(&cyclotomic_polynomial(d)));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num.into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// An exact scalar of characteristic zero.
#[derive(Clone)]
pub enum FieldElement {
    Rational(BigRational),
    /// Representative of degree `1 ≤ deg < φ(e)` modulo `Φ_e`.
    Cyclotomic(Arc<CyclotomicField>, Vec<BigRational>),
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a == b,
            (FieldElement::Cyclotomic(f, a), FieldElement::Cyclotomic(g, b)) => {
                f.order == g.order && a == b
            }
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(v: BigRational) -> Self {
        FieldElement::Rational(v)
    }

    /// The distinguished primitive root `ζ_e`; `e = 2` gives `-1`.
    pub fn root_of_unity(e: u32) -> Self {
        match e {
            1 => Self::one(),
            2 => Self::from_int(-1),
            _ => {
                let field = CyclotomicField::get(e);
                let v = vec![BigRational::zero(), BigRational::one()];
                Self::from_representative(field, v)
            }
        }
    }

    /// Builds the residue of `coeffs` (lowest degree first) in `Q(ζ_e)`.
    pub fn from_representative(field: Arc<CyclotomicField>, coeffs: Vec<BigRational>) -> Self {
        let v = field.reduce(coeffs);
        match v.len() {
            0 => Self::zero(),
            1 => FieldElement::Rational(v.into_iter().next().unwrap()),
            _ => FieldElement::Cyclotomic(field, v),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Cyclotomic(..) => None,
        }
    }

    /// Cyclotomic order of the field this element lives in, if not in `Q`.
    pub fn field_order(&self) -> Option<u32> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Cyclotomic(f, _) => Some(f.order),
        }
    }

    /// Coefficient vector over `Q` (length at least one).
    fn coeffs(&self) -> Vec<BigRational> {
        match self {
            FieldElement::Rational(r) => vec![r.clone()],
            FieldElement::Cyclotomic(_, v) => v.clone(),
        }
    }

    fn common_field(&self, other: &Self) -> Result<Option<Arc<CyclotomicField>>, ScalarError> {
        match (self, other) {
            (FieldElement::Cyclotomic(f, _), FieldElement::Cyclotomic(g, _)) => {
                if f.order != g.order {
                    Err(ScalarError::FieldMismatch(f.order, g.order))
                } else {
                    Ok(Some(f.clone()))
                }
            }
            (FieldElement::Cyclotomic(f, _), _) | (_, FieldElement::Cyclotomic(f, _)) => {
                Ok(Some(f.clone()))
            }
            _ => Ok(None),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        if let (FieldElement::Rational(a), FieldElement::Rational(b)) = (self, other) {
            return Ok(FieldElement::Rational(a + b));
        }
        let field = self.common_field(other)?.unwrap();
        let (a, b) = (self.coeffs(), other.coeffs());
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                match b.get(i) {
                    Some(y) => x + y,
                    None => x,
                }
            })
            .collect();
        Ok(Self::from_representative(field, v))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                Ok(FieldElement::Rational(a * b))
            }
            (FieldElement::Rational(a), FieldElement::Cyclotomic(f, v))
            | (FieldElement::Cyclotomic(f, v), FieldElement::Rational(a)) => {
                Ok(Self::from_representative(f.clone(), qpoly::scale(v, a)))
            }
            (FieldElement::Cyclotomic(..), FieldElement::Cyclotomic(..)) => {
                let field = self.common_field(other)?.unwrap();
                let v = qpoly::mul(&self.coeffs(), &other.coeffs());
                Ok(Self::from_representative(field, v))
            }
        }
    }

    pub fn checked_inv(&self) -> Result<Self, ScalarError> {
        match self {
            FieldElement::Rational(r) => {
                if r.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(FieldElement::Rational(r.recip()))
                }
            }
            FieldElement::Cyclotomic(f, v) => {
                // Φ_e is irreducible, so any nonzero residue is coprime to it.
                let inv = qpoly::inverse_mod(v, &f.modulus).expect("Φ_e is irreducible");
                Ok(Self::from_representative(f.clone(), inv))
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    /// `self^n`, negative exponents allowed for nonzero `self`.
    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().pow(-n);
        }
        if let FieldElement::Rational(r) = self {
            return FieldElement::Rational(num_traits::pow(r.clone(), n as usize));
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Bit-size measure used to rank pivot candidates.
    pub fn height(&self) -> u64 {
        let h = |r: &BigRational| r.numer().bits() + r.denom().bits();
        match self {
            FieldElement::Rational(r) => h(r),
            FieldElement::Cyclotomic(_, v) => v.iter().map(h).sum(),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => write!(f, "{}", fmt_rational(r)),
            FieldElement::Cyclotomic(field, v) => {
                let z = format!("zeta{}", field.order);
                let mut parts = Vec::new();
                for (i, c) in v.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => z.clone(),
                        _ => format!("{z}^{i}"),
                    };
                    let mag = c.abs();
                    let body = if i == 0 {
                        fmt_rational(&mag)
                    } else if mag.is_one() {
                        mono
                    } else {
                        format!("{}*{}", fmt_rational(&mag), mono)
                    };
                    parts.push((c.is_negative(), body));
                }
                let mut s = String::new();
                for (k, (neg, body)) in parts.into_iter().enumerate() {
                    match (k, neg) {
                        (0, true) => s.push('-'),
                        (0, false) => {}
                        (_, true) => s.push_str(" - "),
                        (_, false) => s.push_str(" + "),
                    }
                    s.push_str(&body);
                }
                write!(f, "({s})")
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(-r),
            FieldElement::Cyclotomic(f, v) => {
                FieldElement::Cyclotomic(f.clone(), v.iter().map(|c| -c).collect())
            }
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

/// The quantum parameter `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum QSpec {
    /// A rational `q ∉ {0, 1, -1}`.
    Rational(BigRational),
    /// `q = ζ_e`, the distinguished primitive `e`-th root of unity.
    RootOfUnity(u32),
}

impl QSpec {
    /// Validates and canonicalizes a rational value (`-1` becomes `RootOfUnity(2)`).
    pub fn rational(v: BigRational) -> Result<Self, ScalarError> {
        if v.is_zero() || v.is_one() {
            return Err(ScalarError::InvalidQ(format!("q = {} is excluded", fmt_rational(&v))));
        }
        if v == -BigRational::one() {
            return Ok(QSpec::RootOfUnity(2));
        }
        Ok(QSpec::Rational(v))
    }

    pub fn root_of_unity(e: u32) -> Result<Self, ScalarError> {
        if !(2..=MAX_CYCLOTOMIC_ORDER).contains(&e) {
            return Err(ScalarError::InvalidQ(format!(
                "root-of-unity order must lie in 2..={MAX_CYCLOTOMIC_ORDER}, got {e}"
            )));
        }
        Ok(QSpec::RootOfUnity(e))
    }

    pub fn from_int(n: i64) -> Result<Self, ScalarError> {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The value of `q` as a field element.
    pub fn value(&self) -> FieldElement {
        match self {
            QSpec::Rational(v) => FieldElement::Rational(v.clone()),
            QSpec::RootOfUnity(e) => FieldElement::root_of_unity(*e),
        }
    }
}

/// Multiplicative order `e` of `q`, with `e = 0` when `q` is not a root of unity.
pub fn order_of_unity(q: &QSpec) -> u32 {
    match q {
        QSpec::Rational(v) if *v == -BigRational::one() => 2,
        QSpec::Rational(_) => 0,
        QSpec::RootOfUnity(e) => *e,
    }
}

/// `q^n` for any integer `n`.
pub fn q_power(q: &QSpec, n: i64) -> FieldElement {
    match q {
        QSpec::RootOfUnity(e) => {
            let e = *e as i64;
            FieldElement::root_of_unity(e as u32).pow(n.mod_floor(&e))
        }
        QSpec::Rational(_) => q.value().pow(n),
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSpec::Rational(v) => write!(f, "{}", fmt_rational(v)),
            QSpec::RootOfUnity(2) => write!(f, "-1"),
            QSpec::RootOfUnity(e) => write!(f, "zeta:{e}"),
        }
    }
}

impl From<QSpec> for String {
    fn from(q: QSpec) -> String {
        q.to_string()
    }
}

impl TryFrom<String> for QSpec {
    type Error = ScalarError;
    fn try_from(s: String) -> Result<Self, ScalarError> {
        s.parse()
    }
}

/// Parses `"2"`, `"-1"`, `"3/2"` or `"zeta:5"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for QSpec {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("zeta:") {
            let e: u32 = rest
                .trim()
                .parse()
                .map_err(|_| ScalarError::InvalidQ(format!("bad root-of-unity order in {s:?}")))?;
            return QSpec::root_of_unity(e);
        }
        let v = parse_rational(s).ok_or_else(|| ScalarError::InvalidQ(format!("cannot parse {s:?}")))?;
        QSpec::rational(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> QSpec {
        s.parse().unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        let a = FieldElement::from_ratio(1, 2);
        let b = FieldElement::from_ratio(1, 3);
        assert_eq!(&a + &b, FieldElement::from_ratio(5, 6));
        assert_eq!(
            FieldElement::one().checked_div(&FieldElement::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn roots_of_unity() {
        let z2 = FieldElement::root_of_unity(2);
        assert_eq!(&z2 * &z2, FieldElement::one());
        let z3 = FieldElement::root_of_unity(3);
        assert!((z3.pow(2) + &z3 + FieldElement::one()).is_zero());
    }

    #[test]
    fn primitive_order() {
        for e in 2..=12u32 {
            let z = FieldElement::root_of_unity(e);
            assert!(z.pow(e as i64).is_one(), "zeta_{e}^{e}");
            for j in 1..e {
                assert!(!z.pow(j as i64).is_one(), "zeta_{e}^{j}");
            }
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        let ints = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(15).len(), 9);
    }

    #[test]
    fn field_mismatch() {
        let a = FieldElement::root_of_unity(3);
        let b = FieldElement::root_of_unity(5);
        assert_eq!(a.checked_add(&b), Err(ScalarError::FieldMismatch(3, 5)));
        assert_eq!(a.checked_mul(&b), Err(ScalarError::FieldMismatch(3, 5)));
        // Rationals embed into every cyclotomic field.
        assert!(a.checked_mul(&FieldElement::from_int(2)).is_ok());
    }

    #[test]
    fn order_and_powers() {
        assert_eq!(order_of_unity(&q("2")), 0);
        assert_eq!(order_of_unity(&q("-1")), 2);
        assert_eq!(order_of_unity(&q("zeta:5")), 5);
        assert_eq!(q_power(&q("2"), -2), FieldElement::from_ratio(1, 4));
        assert!(q_power(&q("zeta:3"), 3).is_one());
        assert_eq!(q_power(&q("-1"), 7), FieldElement::from_int(-1));
    }

    #[test]
    fn q_parsing() {
        assert_eq!(q("-1"), QSpec::RootOfUnity(2));
        assert_eq!(q("zeta:2"), QSpec::RootOfUnity(2));
        assert_eq!(q("3/2"), QSpec::Rational(BigRational::new(3.into(), 2.into())));
        assert!("1".parse::<QSpec>().is_err());
        assert!("0".parse::<QSpec>().is_err());
        assert!("zeta:1".parse::<QSpec>().is_err());
        assert!("zeta:65".parse::<QSpec>().is_err());
        assert!("abc".parse::<QSpec>().is_err());
        for s in ["2", "-1", "3/2", "zeta:5"] {
            assert_eq!(q(&q(s).to_string()), q(s));
        }
    }

    fn random_element(rng: &mut ChaCha8Rng, e: u32) -> FieldElement {
        let field = CyclotomicField::get(e);
        let v = (0..field.degree())
            .map(|_| BigRational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into()))
            .collect();
        FieldElement::from_representative(field, v)
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..1200 {
            let e = [3, 4, 5, 7, 8, 12][trial % 6];
            let (a, b, c) = (
                random_element(&mut rng, e),
                random_element(&mut rng, e),
                random_element(&mut rng, e),
            );
            assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            if !a.is_zero() {
                assert!((&a * &a.inv()).is_one());
            }
        }
    }
}
