//! The polynomial ring `k[h]` with the automorphism `σ(h) = qh`.
//!
//! Besides dense polynomial arithmetic this module provides the operators
//! built on top of `σ`: q-integers, the orbit lcm `N(f)`, the quotient
//! `f̄ = N(f)/f`, the defect `η(f)`, membership in `h^l·k[h^e]`, and the
//! truncated rank computations behind the dimension counts of
//! `π(h^l S)` and `coker ψ_{f,l}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::linalg::ExactMatrix;
use crate::scalars::{order_of_unity, parse_rational, FieldElement, QSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    ZeroGcd,
    #[error("lcm with a zero entry")]
    ZeroLcm,
    #[error("operation requires q to be a root of unity (e > 0)")]
    NotRootOfUnity,
    #[error("operation requires f(0) != 0")]
    VanishesAtZero,
    #[error("non-exact division")]
    InexactDivision,
    #[error("truncation bound {bound} below required {required}")]
    TruncationTooSmall { bound: i64, required: i64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Degree of a polynomial with `deg 0 = -∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A dense univariate polynomial with exact coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| FieldElement::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    /// `c·h^d`.
    pub fn monomial(c: FieldElement, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![FieldElement::zero(); d + 1];
        coeffs[d] = c;
        Polynomial { coeffs }
    }

    /// `h^d`.
    pub fn h_pow(d: usize) -> Self {
        Self::monomial(FieldElement::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn deg(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as a signed integer, `-1` for the zero polynomial.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `h^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![FieldElement::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::zero(), |acc, c| &acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &FieldElement::from_int(i as i64))
                .collect(),
        )
    }

    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        let db = match divisor.deg() {
            Degree::NegInfinity => return Err(PolyError::DivisionByZero),
            Degree::Finite(d) => d,
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let lead_inv = divisor.coeffs[db].inv();
        let mut quo = vec![FieldElement::zero(); rem.len() - db];
        while rem.len() > db {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            if !c.is_zero() {
                let shift = top - db;
                for (i, b) in divisor.coeffs.iter().enumerate() {
                    if !b.is_zero() {
                        rem[shift + i] = &rem[shift + i] - &(&c * b);
                    }
                }
                quo[shift] = c;
            }
            rem.pop();
        }
        Ok((Polynomial::new(quo), Polynomial::new(rem)))
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        let (q, r) = self.divmod(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// `σ^power(self)`: coefficient `i` is multiplied by `q^{i·power}`.
    pub fn sigma(&self, ctx: &RingContext, power: i64) -> Polynomial {
        if power == 0 || self.is_zero() {
            return self.clone();
        }
        let step = ctx.q_pow(power);
        let mut factor = FieldElement::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &factor);
            factor = &factor * &step;
        }
        Polynomial::new(out)
    }

    /// `self(c·h)`.
    pub fn substitute_scaled(&self, c: &FieldElement) -> Polynomial {
        let mut factor = FieldElement::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x * &factor);
            factor = &factor * c;
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Renders the polynomial in the variable `var`, e.g. `h^4 - 2/3*h + 1`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match c.as_rational() {
                Some(r) if r < &num_rational::BigRational::from_integer(0.into()) => (true, -c),
                _ => (false, c.clone()),
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("h"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        Polynomial::new(coeffs)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// The ground ring data: the value of `q`, its inverse and its order `e`.
#[derive(Debug, Clone)]
pub struct RingContext {
    q: FieldElement,
    q_inv: FieldElement,
    e: u32,
    /// `q^0..q^{e-1}` when `e > 0`.
    powers: Vec<FieldElement>,
}

impl RingContext {
    pub fn new(q: &QSpec) -> Self {
        Self::from_value(q.value(), order_of_unity(q))
    }

    fn from_value(q: FieldElement, e: u32) -> Self {
        assert!(e != 1, "q = 1 is excluded");
        let powers = if e > 0 {
            let mut v = vec![FieldElement::one()];
            for _ in 1..e {
                let next = v.last().unwrap() * &q;
                v.push(next);
            }
            v
        } else {
            Vec::new()
        };
        let q_inv = q.inv();
        RingContext { q, q_inv, e, powers }
    }

    /// Context for `q^{-1}` (same order `e`).
    pub fn inverse(&self) -> Self {
        Self::from_value(self.q_inv.clone(), self.e)
    }

    pub fn q(&self) -> &FieldElement {
        &self.q
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q_pow(&self, n: i64) -> FieldElement {
        if self.e > 0 {
            self.powers[n.mod_floor(&(self.e as i64)) as usize].clone()
        } else if n >= 0 {
            self.q.pow(n)
        } else {
            self.q_inv.pow(-n)
        }
    }

    fn require_root(&self) -> Result<usize, PolyError> {
        if self.e == 0 {
            Err(PolyError::NotRootOfUnity)
        } else {
            Ok(self.e as usize)
        }
    }
}

/// The q-integer `(n)_λ = 1 + λ + ⋯ + λ^{n-1}`.
pub fn q_integer(n: u32, lambda: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero();
    let mut p = FieldElement::one();
    for _ in 0..n {
        acc = &acc + &p;
        p = &p * lambda;
    }
    acc
}

pub fn apply_sigma(p: &Polynomial, ctx: &RingContext, power: i64) -> Polynomial {
    p.sigma(ctx, power)
}

pub fn derivative(p: &Polynomial) -> Polynomial {
    p.derivative()
}

/// Monic gcd by the Euclidean algorithm.
pub fn gcd(p: &Polynomial, t: &Polynomial) -> Result<Polynomial, PolyError> {
    if p.is_zero() && t.is_zero() {
        return Err(PolyError::ZeroGcd);
    }
    let (mut a, mut b) = (p.clone(), t.clone());
    while !b.is_zero() {
        let r = a.divmod(&b)?.1;
        a = std::mem::replace(&mut b, r.monic());
    }
    Ok(a.monic())
}

/// Monic lcm of a nonempty list of nonzero polynomials.
pub fn lcm_list(ps: &[Polynomial]) -> Result<Polynomial, PolyError> {
    let mut acc = Polynomial::one();
    for p in ps {
        if p.is_zero() {
            return Err(PolyError::ZeroLcm);
        }
        let g = gcd(&acc, p)?;
        acc = (&acc * &p.exact_div(&g)?).monic();
    }
    Ok(acc)
}

fn check_orbit_input(f: &Polynomial, ctx: &RingContext) -> Result<usize, PolyError> {
    let e = ctx.require_root()?;
    if f.coeff(0).is_zero() {
        return Err(PolyError::VanishesAtZero);
    }
    Ok(e)
}

/// `N(f) = lcm(f, σf, …, σ^{e-1}f)`, normalized monic.
pub fn n_operator(f: &Polynomial, ctx: &RingContext) -> Result<Polynomial, PolyError> {
    let e = check_orbit_input(f, ctx)?;
    let orbit: Vec<Polynomial> = (0..e).map(|i| f.sigma(ctx, i as i64).monic()).collect();
    lcm_list(&orbit)
}

/// `f̄ = N(f)/f`, normalized monic.
pub fn f_bar(f: &Polynomial, ctx: &RingContext) -> Result<Polynomial, PolyError> {
    let n = n_operator(f, ctx)?;
    Ok(n.exact_div(f)?.monic())
}

/// `η(f) = deg f − deg N(f)/e`.
pub fn eta(f: &Polynomial, ctx: &RingContext) -> Result<u32, PolyError> {
    let e = check_orbit_input(f, ctx)?;
    let n_deg = n_operator(f, ctx)?.degree_i64() as usize;
    if n_deg % e != 0 {
        return Err(PolyError::InexactDivision);
    }
    let d = f.degree_i64() as usize;
    Ok((d - n_deg / e) as u32)
}

/// Whether `p ∈ h^l·k[h^e]`.
pub fn is_in_s(p: &Polynomial, ctx: &RingContext, l: u32) -> Result<bool, PolyError> {
    let e = ctx.require_root()?;
    let l = l as usize;
    Ok(p
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_zero() || (i >= l && (i - l) % e == 0)))
}

/// Dimension of the image of `{h^{l+je} : l+je ≤ bound}` in `k[h]/(f)`.
pub fn pi_hls_dim(f: &Polynomial, ctx: &RingContext, l: u32, bound: i64) -> Result<usize, PolyError> {
    let e = check_orbit_input(f, ctx)?;
    let n_deg = n_operator(f, ctx)?.degree_i64();
    if bound < n_deg {
        return Err(PolyError::TruncationTooSmall { bound, required: n_deg });
    }
    let df = f.degree_i64() as usize;
    let mut m = ExactMatrix::new(df);
    let mut k = l as i64;
    while k <= bound {
        let r = Polynomial::h_pow(k as usize).divmod(f)?.1;
        m.push_column(
            r.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        );
        k += e as i64;
    }
    Ok(m.rank())
}

/// Dimension of the cokernel of `ψ_{f,l}: p ↦ (σ − q^l)(f·p)` restricted to
/// `deg p ≤ bound`, with codomain `deg ≤ bound + deg f`.
pub fn coker_psi_dim(f: &Polynomial, ctx: &RingContext, l: u32, bound: i64) -> Result<usize, PolyError> {
    check_orbit_input(f, ctx)?;
    if bound < 0 {
        return Err(PolyError::TruncationTooSmall { bound, required: 0 });
    }
    let df = f.degree_i64();
    let rows = (bound + df + 1) as usize;
    let ql = ctx.q_pow(l as i64);
    let mut m = ExactMatrix::new(rows);
    for j in 0..=bound as usize {
        let fp = f.shift(j);
        let img = &fp.sigma(ctx, 1) - &fp.scale(&ql);
        m.push_column(
            img.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        );
    }
    Ok(rows - m.rank())
}

impl FromStr for Polynomial {
    type Err = PolyError;

    /// Parses expressions in `h` over `Q`: `+ - * ^`, parentheses, rational
    /// literals (`2/3`) and implicit multiplication (`2h^2`).
    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse::parse(s, 'h')
    }
}

impl Polynomial {
    /// Parses with a custom variable letter.
    pub fn parse_in(s: &str, var: char) -> Result<Self, PolyError> {
        parse::parse(s, var)
    }
}

mod parse {
    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Num(String),
        Var,
        Plus,
        Minus,
        Star,
        Caret,
        LParen,
        RParen,
    }

    fn lex(s: &str, var: char) -> Result<Vec<Tok>, PolyError> {
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' => {}
                '+' => out.push(Tok::Plus),
                '-' => out.push(Tok::Minus),
                '*' => out.push(Tok::Star),
                '^' => out.push(Tok::Caret),
                '(' => out.push(Tok::LParen),
                ')' => out.push(Tok::RParen),
                c if c == var => out.push(Tok::Var),
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '/') {
                        i += 1;
                    }
                    out.push(Tok::Num(chars[start..=i].iter().collect()));
                }
                other => return Err(PolyError::Parse(format!("unexpected character {other:?}"))),
            }
            i += 1;
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<Tok>,
        pos: usize,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }

        fn next(&mut self) -> Option<Tok> {
            let t = self.toks.get(self.pos).cloned();
            self.pos += 1;
            t
        }

        fn expr(&mut self) -> Result<Polynomial, PolyError> {
            let mut acc = self.term()?;
            loop {
                match self.peek() {
                    Some(Tok::Plus) => {
                        self.pos += 1;
                        acc = &acc + &self.term()?;
                    }
                    Some(Tok::Minus) => {
                        self.pos += 1;
                        acc = &acc - &self.term()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn term(&mut self) -> Result<Polynomial, PolyError> {
            let mut acc = self.unary()?;
            loop {
                match self.peek() {
                    Some(Tok::Star) => {
                        self.pos += 1;
                        acc = &acc * &self.unary()?;
                    }
                    Some(Tok::Num(_)) | Some(Tok::Var) | Some(Tok::LParen) => {
                        acc = &acc * &self.power()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn unary(&mut self) -> Result<Polynomial, PolyError> {
            if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                return Ok(-self.unary()?);
            }
            if self.peek() == Some(&Tok::Plus) {
                self.pos += 1;
                return self.unary();
            }
            self.power()
        }

        fn power(&mut self) -> Result<Polynomial, PolyError> {
            let base = self.atom()?;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                match self.next() {
                    Some(Tok::Num(n)) => {
                        let k: u32 = n
                            .parse()
                            .map_err(|_| PolyError::Parse(format!("bad exponent {n:?}")))?;
                        return Ok(base.pow(k));
                    }
                    other => return Err(PolyError::Parse(format!("expected exponent, got {other:?}"))),
                }
            }
            Ok(base)
        }

        fn atom(&mut self) -> Result<Polynomial, PolyError> {
            match self.next() {
                Some(Tok::Num(n)) => {
                    let v = parse_rational(&n).ok_or_else(|| PolyError::Parse(format!("bad number {n:?}")))?;
                    Ok(Polynomial::constant(FieldElement::from_rational(v)))
                }
                Some(Tok::Var) => Ok(Polynomial::h_pow(1)),
                Some(Tok::LParen) => {
                    let p = self.expr()?;
                    match self.next() {
                        Some(Tok::RParen) => Ok(p),
                        _ => Err(PolyError::Parse("unbalanced parenthesis".into())),
                    }
                }
                other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
            }
        }
    }

    pub fn parse(s: &str, var: char) -> Result<Polynomial, PolyError> {
        let toks = lex(s, var)?;
        if toks.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(PolyError::Parse(format!("trailing input at token {}", p.pos)));
        }
        Ok(out)
    }
}
