//! Normal-form arithmetic in `A(a,q)`, the Smith algebra `B_l` and its
//! graded version `B̄`, together with `Ω`, the projection `π: B → A` and
//! the isomorphism `Φ: A(a,q) → A(σ(a), q⁻¹)`.
//!
//! Elements of `A` are stored by weight: weight `r ≥ 0` holds `p` for
//! `y^r p(h)`, weight `r < 0` holds `p` for `p(h) x^{-r}`. Elements of `B`
//! are stored as `(i, k) ↦ p` for `Y^i p(H) X^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::polyring::{PolyError, Polynomial, RingContext};
use crate::scalars::{FieldElement, QSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("a must have degree at least 2, got {0}")]
    DegreeTooSmall(i64),
    #[error("a must be monic")]
    NotMonic,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `∫_i f(s,t) = Σ_{s+t+1=i, s,t ≥ 0} f(s,t)`.
pub fn integral<T>(i: usize, mut f: impl FnMut(usize, usize) -> T) -> Vec<T> {
    (0..i).map(|s| f(s, i - 1 - s)).collect()
}

/// The defining data `(a, q)` with `l = σ(a) − a`.
#[derive(Debug, Clone)]
pub struct AlgebraContext {
    a: Polynomial,
    l: Polynomial,
    ctx: RingContext,
}

impl AlgebraContext {
    /// Requires `a` monic of degree at least 2.
    pub fn new(a: Polynomial, q: &QSpec) -> Result<Self, AlgebraError> {
        if a.leading_coeff().is_some_and(|c| !c.is_one()) {
            return Err(AlgebraError::NotMonic);
        }
        Self::with_ring(a, RingContext::new(q))
    }

    /// Accepts any `a` of degree at least 2; used for targets of `Φ`.
    pub fn with_ring(a: Polynomial, ctx: RingContext) -> Result<Self, AlgebraError> {
        if a.degree_i64() < 2 {
            return Err(AlgebraError::DegreeTooSmall(a.degree_i64()));
        }
        let l = &a.sigma(&ctx, 1) - &a;
        Ok(AlgebraContext { a, l, ctx })
    }

    pub fn a(&self) -> &Polynomial {
        &self.a
    }

    pub fn l(&self) -> &Polynomial {
        &self.l
    }

    pub fn ring(&self) -> &RingContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.a.degree_i64() as usize
    }

    pub fn e(&self) -> u32 {
        self.ctx.e()
    }

    pub fn q(&self) -> &FieldElement {
        self.ctx.q()
    }

    pub fn q_pow(&self, n: i64) -> FieldElement {
        self.ctx.q_pow(n)
    }

    pub fn sigma(&self, p: &Polynomial, power: i64) -> Polynomial {
        p.sigma(&self.ctx, power)
    }

    /// Coefficient `α_i` of `a`.
    pub fn alpha(&self, i: usize) -> FieldElement {
        self.a.coeff(i)
    }

    /// `λ_i = (q^i − 1) α_i`, the coefficients of `l`.
    pub fn lambda(&self, i: usize) -> FieldElement {
        self.l.coeff(i)
    }

    /// Context of the target of `Φ`, namely `A(σ(a), q⁻¹)`.
    pub fn phi_target(&self) -> AlgebraContext {
        AlgebraContext::with_ring(self.a.sigma(&self.ctx, 1), self.ctx.inverse())
            .expect("σ(a) has the same degree as a")
    }

    /// `y^l f x^l = σ^{-l}(f)·Π_{i<l} σ^{-i}(a)`.
    fn y_conj(&self, f: &Polynomial, l: usize) -> Polynomial {
        let mut out = self.sigma(f, -(l as i64));
        for i in 0..l {
            out = &out * &self.sigma(&self.a, -(i as i64));
        }
        out
    }

    /// `x^l y^l = Π_{i=1..l} σ^i(a)`.
    fn x_conj_one(&self, l: usize) -> Polynomial {
        let mut out = Polynomial::one();
        for i in 1..=l {
            out = &out * &self.sigma(&self.a, i as i64);
        }
        out
    }

    /// Product of homogeneous pieces of weights `r` and `s`.
    fn mul_homogeneous(&self, r: i64, p: &Polynomial, s: i64, q: &Polynomial) -> (i64, Polynomial) {
        let w = r + s;
        let out = if r >= 0 && s >= 0 {
            &self.sigma(p, s) * q
        } else if r < 0 && s < 0 {
            p * &self.sigma(q, -r)
        } else if r >= 0 {
            let l = (-s) as usize;
            let f = p * q;
            let r = r as usize;
            self.y_conj(&f, r.min(l))
        } else {
            let k = (-r) as usize;
            let s = s as usize;
            if k >= s {
                p * &self.sigma(&(&self.x_conj_one(s) * q), (k - s) as i64)
            } else {
                &self.sigma(&(p * &self.x_conj_one(k)), (s - k) as i64) * q
            }
        };
        (w, out)
    }
}

/// An element of `A(a,q)` in the basis `y^i h^j`, `h^j x^k`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GwaElement {
    terms: BTreeMap<i64, Polynomial>,
}

impl GwaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::poly(Polynomial::one())
    }

    /// `p(h)`.
    pub fn poly(p: Polynomial) -> Self {
        Self::component(0, p)
    }

    /// `y^r p(h)` for `r ≥ 0`, `p(h) x^{-r}` for `r < 0`.
    pub fn component(r: i64, p: Polynomial) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(r, p);
        }
        GwaElement { terms }
    }

    pub fn y() -> Self {
        Self::component(1, Polynomial::one())
    }

    pub fn h() -> Self {
        Self::poly(Polynomial::h_pow(1))
    }

    pub fn x() -> Self {
        Self::component(-1, Polynomial::one())
    }

    /// `y^i h^j`.
    pub fn y_h(i: u32, j: u32) -> Self {
        Self::component(i as i64, Polynomial::h_pow(j as usize))
    }

    /// `h^j x^k`.
    pub fn h_x(j: u32, k: u32) -> Self {
        Self::component(-(k as i64), Polynomial::h_pow(j as usize))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, Polynomial> {
        &self.terms
    }

    /// Coordinate polynomial of the weight-`r` component.
    pub fn coord(&self, r: i64) -> Polynomial {
        self.terms.get(&r).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn weight_decompose(&self) -> BTreeMap<i64, GwaElement> {
        self.terms.iter().map(|(r, p)| (*r, GwaElement::component(*r, p.clone()))).collect()
    }

    /// Weight and coordinate of a homogeneous element (`None` for 0).
    pub fn homogeneous_coords(&self) -> Result<Option<(i64, Polynomial)>, AlgebraError> {
        match self.terms.len() {
            0 => Ok(None),
            1 => Ok(self.terms.iter().next().map(|(r, p)| (*r, p.clone()))),
            _ => Err(AlgebraError::NotHomogeneous),
        }
    }

    pub fn weight(&self) -> Option<i64> {
        match self.terms.len() {
            1 => self.terms.keys().next().copied(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        self.map(|p| p.scale(c))
    }

    fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        GwaElement {
            terms: self
                .terms
                .iter()
                .map(|(r, p)| (*r, f(p)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    fn add_component(&mut self, r: i64, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(r).or_insert_with(Polynomial::zero);
        *entry = &*entry + p;
        if entry.is_zero() {
            self.terms.remove(&r);
        }
    }

    /// Terms `(c, i, j, k)` meaning `c·y^i h^j x^k`, one of `i, k` zero.
    pub fn monomials(&self) -> Vec<(FieldElement, u32, u32, u32)> {
        let mut out = Vec::new();
        for (r, p) in &self.terms {
            for (j, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, k) = if *r >= 0 { (*r as u32, 0) } else { (0, (-r) as u32) };
                out.push((c.clone(), i, j as u32, k));
            }
        }
        out
    }
}

impl Add<&GwaElement> for &GwaElement {
    type Output = GwaElement;
    fn add(self, rhs: &GwaElement) -> GwaElement {
        let mut out = self.clone();
        for (r, p) in &rhs.terms {
            out.add_component(*r, p);
        }
        out
    }
}

impl Sub<&GwaElement> for &GwaElement {
    type Output = GwaElement;
    fn sub(self, rhs: &GwaElement) -> GwaElement {
        self + &(-rhs)
    }
}

impl Neg for &GwaElement {
    type Output = GwaElement;
    fn neg(self) -> GwaElement {
        self.map(|p| -p)
    }
}

fn fmt_monomial(c: &FieldElement, factors: &[(&str, u32)], out: &mut String, first: bool) {
    let neg = c.as_rational().is_some_and(|r| r < &num_rational::BigRational::from_integer(0.into()));
    let mag = if neg { -c } else { c.clone() };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mut parts: Vec<String> = Vec::new();
    for (v, e) in factors {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        out.push_str(&mag.to_string());
    } else {
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&parts.join("*"));
    }
}

impl fmt::Display for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (c, i, j, k) in self.monomials().into_iter().rev() {
            let first = s.is_empty();
            fmt_monomial(&c, &[("y", i), ("h", j), ("x", k)], &mut s, first);
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GwaElement({self})")
    }
}

/// Bracket conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommutatorMode {
    /// `uv − vu`
    Plain,
    /// `uv − q·vu`
    QLeft,
    /// `q·uv − vu`
    QRight,
}

/// Exponents `[i, j, k]` of `y^i h^j x^k` (or `Y^i H^j X^k`).
pub type Mono = [u32; 3];

/// Common interface to the algebras used in bimodule computations.
pub trait Algebra: Sync + Send {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem;
    fn scale(&self, u: &Self::Elem, c: &FieldElement) -> Self::Elem;
    fn mul(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, u: &Self::Elem) -> bool;
    /// `y^i p(h) x^k`, with generators named according to the algebra.
    fn monomial(&self, i: u32, p: &Polynomial, k: u32) -> Self::Elem;
    fn context(&self) -> &AlgebraContext;
    /// Expansion into `(c, [i, j, k])` meaning `c·y^i h^j x^k`.
    fn monomials_of(&self, u: &Self::Elem) -> Vec<(FieldElement, Mono)>;

    /// Coefficient `λ_i` of `l` as seen by the algebra (zero for `B̄`).
    fn lambda(&self, i: usize) -> FieldElement {
        self.context().lambda(i)
    }

    fn mono(&self, m: Mono) -> Self::Elem {
        self.monomial(m[0], &Polynomial::h_pow(m[1] as usize), m[2])
    }

    fn sub(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem {
        self.add(u, &self.scale(v, &FieldElement::from_int(-1)))
    }

    fn poly(&self, p: &Polynomial) -> Self::Elem {
        self.monomial(0, p, 0)
    }

    fn gen_y(&self) -> Self::Elem {
        self.monomial(1, &Polynomial::one(), 0)
    }

    fn gen_h(&self) -> Self::Elem {
        self.monomial(0, &Polynomial::h_pow(1), 0)
    }

    fn gen_x(&self) -> Self::Elem {
        self.monomial(0, &Polynomial::one(), 1)
    }

    fn mul3(&self, u: &Self::Elem, v: &Self::Elem, w: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(u, v), w)
    }

    fn commutator(&self, u: &Self::Elem, v: &Self::Elem, mode: CommutatorMode) -> Self::Elem {
        let uv = self.mul(u, v);
        let vu = self.mul(v, u);
        let q = self.context().q().clone();
        match mode {
            CommutatorMode::Plain => self.sub(&uv, &vu),
            CommutatorMode::QLeft => self.sub(&uv, &self.scale(&vu, &q)),
            CommutatorMode::QRight => self.sub(&self.scale(&uv, &q), &vu),
        }
    }
}

/// The algebra `A(a,q)`.
#[derive(Debug, Clone)]
pub struct GwaAlgebra {
    actx: AlgebraContext,
}

impl GwaAlgebra {
    pub fn new(actx: AlgebraContext) -> Self {
        GwaAlgebra { actx }
    }

    /// `Φ(u)` in `A(σ(a), q⁻¹)`: weight `r` with coordinate `p` goes to
    /// weight `−r` with coordinate `σ^{−|r|}(p)`.
    pub fn phi(&self, u: &GwaElement) -> GwaElement {
        let mut out = GwaElement::zero();
        for (r, p) in &u.terms {
            out.add_component(-r, &self.actx.sigma(p, -r.abs()));
        }
        out
    }

    pub fn phi_target(&self) -> GwaAlgebra {
        GwaAlgebra::new(self.actx.phi_target())
    }

    /// `r·u` for `r ∈ k[h]`.
    pub fn left_poly(&self, r: &Polynomial, u: &GwaElement) -> GwaElement {
        self.mul(&GwaElement::poly(r.clone()), u)
    }
}

impl Algebra for GwaAlgebra {
    type Elem = GwaElement;

    fn zero(&self) -> GwaElement {
        GwaElement::zero()
    }

    fn one(&self) -> GwaElement {
        GwaElement::one()
    }

    fn add(&self, u: &GwaElement, v: &GwaElement) -> GwaElement {
        u + v
    }

    fn scale(&self, u: &GwaElement, c: &FieldElement) -> GwaElement {
        u.scale(c)
    }

    fn mul(&self, u: &GwaElement, v: &GwaElement) -> GwaElement {
        let mut out = GwaElement::zero();
        for (r, p) in &u.terms {
            for (s, q) in &v.terms {
                let (w, c) = self.actx.mul_homogeneous(*r, p, *s, q);
                out.add_component(w, &c);
            }
        }
        out
    }

    fn is_zero(&self, u: &GwaElement) -> bool {
        u.is_zero()
    }

    fn monomial(&self, i: u32, p: &Polynomial, k: u32) -> GwaElement {
        let left = GwaElement::component(i as i64, p.clone());
        if k == 0 {
            left
        } else {
            self.mul(&left, &GwaElement::component(-(k as i64), Polynomial::one()))
        }
    }

    fn context(&self) -> &AlgebraContext {
        &self.actx
    }

    fn monomials_of(&self, u: &GwaElement) -> Vec<(FieldElement, Mono)> {
        u.monomials().into_iter().map(|(c, i, j, k)| (c, [i, j, k])).collect()
    }
}

/// An element of `B_l` or `B̄` in the basis `Y^i H^j X^k`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SmithElement {
    terms: BTreeMap<(u32, u32), Polynomial>,
}

impl SmithElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Y^i p(H) X^k`.
    pub fn term(i: u32, p: Polynomial, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert((i, k), p);
        }
        SmithElement { terms }
    }

    /// `Y^i H^j X^k`.
    pub fn mono(i: u32, j: u32, k: u32) -> Self {
        Self::term(i, Polynomial::h_pow(j as usize), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Polynomial> {
        &self.terms
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        SmithElement {
            terms: self
                .terms
                .iter()
                .map(|(key, p)| (*key, p.scale(c)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    fn add_term(&mut self, key: (u32, u32), p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Polynomial::zero);
        *entry = &*entry + p;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Terms `(c, i, j, k)` meaning `c·Y^i H^j X^k`.
    pub fn monomials(&self) -> Vec<(FieldElement, u32, u32, u32)> {
        let mut out = Vec::new();
        for ((i, k), p) in &self.terms {
            for (j, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((c.clone(), *i, j as u32, *k));
                }
            }
        }
        out
    }

    pub fn weight_decompose(&self) -> BTreeMap<i64, SmithElement> {
        let mut out: BTreeMap<i64, SmithElement> = BTreeMap::new();
        for ((i, k), p) in &self.terms {
            out.entry(*i as i64 - *k as i64).or_default().add_term((*i, *k), p);
        }
        out
    }
}

impl Add<&SmithElement> for &SmithElement {
    type Output = SmithElement;
    fn add(self, rhs: &SmithElement) -> SmithElement {
        let mut out = self.clone();
        for (key, p) in &rhs.terms {
            out.add_term(*key, p);
        }
        out
    }
}

impl Neg for &SmithElement {
    type Output = SmithElement;
    fn neg(self) -> SmithElement {
        self.scale(&FieldElement::from_int(-1))
    }
}

impl Sub<&SmithElement> for &SmithElement {
    type Output = SmithElement;
    fn sub(self, rhs: &SmithElement) -> SmithElement {
        self + &(-rhs)
    }
}

impl fmt::Display for SmithElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (c, i, j, k) in self.monomials().into_iter().rev() {
            let first = s.is_empty();
            fmt_monomial(&c, &[("Y", i), ("H", j), ("X", k)], &mut s, first);
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for SmithElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmithElement({self})")
    }
}

/// The Smith algebra `B_l`, or `B̄` (where `[X,Y] = 0`) when `graded`.
#[derive(Debug, Clone)]
pub struct SmithAlgebra {
    actx: AlgebraContext,
    graded: bool,
    /// `L_k = Σ_{t<k} σ^t(l)`, grown on demand.
    l_sums: std::sync::Arc<std::sync::Mutex<Vec<Polynomial>>>,
}

impl SmithAlgebra {
    pub fn new(actx: AlgebraContext, graded: bool) -> Self {
        SmithAlgebra { actx, graded, l_sums: Default::default() }
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    fn l_sum(&self, k: u32) -> Polynomial {
        let mut cache = self.l_sums.lock().unwrap();
        if cache.is_empty() {
            cache.push(Polynomial::zero());
        }
        while cache.len() <= k as usize {
            let t = cache.len() - 1;
            let next = &cache[t] + &self.actx.sigma(&self.actx.l, t as i64);
            cache.push(next);
        }
        cache[k as usize].clone()
    }

    /// `m·Y` for `m = Y^i p(H) X^k`.
    fn times_y(&self, i: u32, p: &Polynomial, k: u32, out: &mut SmithElement) {
        // X^k Y = Y X^k + L_k(H) X^{k-1} and p(H) Y = Y σ(p)(H)
        out.add_term((i + 1, k), &self.actx.sigma(p, 1));
        if k > 0 && !self.graded {
            out.add_term((i, k - 1), &(p * &self.l_sum(k)));
        }
    }

    /// `Ω = YX − a(H)`.
    pub fn omega(&self) -> SmithElement {
        &SmithElement::mono(1, 0, 1) - &SmithElement::term(0, self.actx.a.clone(), 0)
    }

    /// The canonical projection `π: B → A`.
    pub fn project_pi(&self, u: &SmithElement) -> GwaElement {
        let a = GwaAlgebra::new(self.actx.clone());
        let mut out = GwaElement::zero();
        for ((i, k), p) in &u.terms {
            out = &out + &a.monomial(*i, p, *k);
        }
        out
    }

    pub fn is_central(&self, u: &SmithElement) -> bool {
        [self.gen_y(), self.gen_h(), self.gen_x()]
            .iter()
            .all(|g| self.commutator(u, g, CommutatorMode::Plain).is_zero())
    }
}

impl Algebra for SmithAlgebra {
    type Elem = SmithElement;

    fn zero(&self) -> SmithElement {
        SmithElement::zero()
    }

    fn one(&self) -> SmithElement {
        SmithElement::mono(0, 0, 0)
    }

    fn add(&self, u: &SmithElement, v: &SmithElement) -> SmithElement {
        u + v
    }

    fn scale(&self, u: &SmithElement, c: &FieldElement) -> SmithElement {
        u.scale(c)
    }

    fn mul(&self, u: &SmithElement, v: &SmithElement) -> SmithElement {
        let mut out = SmithElement::zero();
        for ((i2, k2), p2) in &v.terms {
            // u · Y^{i2}
            let mut cur = u.clone();
            for _ in 0..*i2 {
                let mut next = SmithElement::zero();
                for ((i, k), p) in &cur.terms {
                    self.times_y(*i, p, *k, &mut next);
                }
                cur = next;
            }
            // · p2(H) X^{k2}, using X^k f(H) = σ^k(f)(H) X^k
            for ((i, k), p) in &cur.terms {
                out.add_term((*i, k + k2), &(p * &self.actx.sigma(p2, *k as i64)));
            }
        }
        out
    }

    fn is_zero(&self, u: &SmithElement) -> bool {
        u.is_zero()
    }

    fn monomial(&self, i: u32, p: &Polynomial, k: u32) -> SmithElement {
        SmithElement::term(i, p.clone(), k)
    }

    fn context(&self) -> &AlgebraContext {
        &self.actx
    }

    fn monomials_of(&self, u: &SmithElement) -> Vec<(FieldElement, Mono)> {
        u.monomials().into_iter().map(|(c, i, j, k)| (c, [i, j, k])).collect()
    }

    fn lambda(&self, i: usize) -> FieldElement {
        if self.graded {
            FieldElement::zero()
        } else {
            self.actx.lambda(i)
        }
    }
}

/// `y^r p(h)` (`r ≥ 0`) or `p(h) x^{-r}` (`r < 0`).
pub fn weight_component_coords(r: i64, p: &Polynomial) -> GwaElement {
    GwaElement::component(r, p.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn actx(a: &str, q: &str) -> AlgebraContext {
        AlgebraContext::new(poly(a), &q.parse().unwrap()).unwrap()
    }

    #[test]
    fn relations_in_a() {
        for q in ["2", "-1", "zeta:3", "3/2"] {
            let c = actx("h^2-1", q);
            let alg = GwaAlgebra::new(c.clone());
            let (x, y, h) = (GwaElement::x(), GwaElement::y(), GwaElement::h());
            let qq = c.q().clone();
            assert_eq!(alg.mul(&x, &h), alg.mul(&h, &x).scale(&qq));
            assert_eq!(alg.mul(&h, &y), alg.mul(&y, &h).scale(&qq));
            assert_eq!(alg.mul(&y, &x), GwaElement::poly(c.a().clone()));
            assert_eq!(alg.mul(&x, &y), GwaElement::poly(c.sigma(c.a(), 1)));
        }
    }

    #[test]
    fn spec_examples_in_a() {
        let c = actx("h^2-1", "2");
        let alg = GwaAlgebra::new(c);
        let yh2x = alg.mul3(&GwaElement::y(), &GwaElement::y_h(0, 2), &GwaElement::x());
        let expected = poly("h^2-1").scale(&FieldElement::from_ratio(1, 4));
        assert_eq!(yh2x, GwaElement::poly(&poly("h^2") * &expected));
        let br = alg.commutator(&GwaElement::h(), &GwaElement::y(), CommutatorMode::Plain);
        assert_eq!(br, GwaElement::y_h(1, 1));
        let u = GwaElement::y_h(2, 3);
        assert!(alg.commutator(&u, &u, CommutatorMode::Plain).is_zero());
        assert!(alg.commutator(&GwaElement::x(), &GwaElement::h(), CommutatorMode::QLeft).is_zero());
    }

    #[test]
    fn spec_examples_in_b() {
        let c = actx("h^2-1", "2");
        let b = SmithAlgebra::new(c.clone(), false);
        let (x, y) = (b.gen_x(), b.gen_y());
        assert_eq!(b.commutator(&x, &y, CommutatorMode::Plain), SmithElement::term(0, c.l().clone(), 0));
        let bbar = SmithAlgebra::new(c.clone(), true);
        assert!(bbar.commutator(&x, &y, CommutatorMode::Plain).is_zero());
        let om = b.omega();
        assert!(b.is_central(&om));
        let alt = &b.mul(&x, &y) - &SmithElement::term(0, c.sigma(c.a(), 1), 0);
        assert_eq!(om, alt);
        assert!(b.project_pi(&om).is_zero());
        assert_eq!(b.project_pi(&SmithElement::mono(1, 0, 1)), GwaElement::poly(c.a().clone()));
        assert_eq!(b.project_pi(&SmithElement::mono(1, 1, 0)), GwaElement::y_h(1, 1));
    }

    #[test]
    fn weight_helpers() {
        let u = &GwaElement::y_h(2, 1) + &GwaElement::h_x(1, 1);
        let parts = u.weight_decompose();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&2], GwaElement::y_h(2, 1));
        assert_eq!(parts[&-1], GwaElement::h_x(1, 1));
        assert!(GwaElement::zero().weight_decompose().is_empty());
        assert_eq!(GwaElement::y_h(0, 3).weight_decompose()[&0], GwaElement::y_h(0, 3));
        let w = weight_component_coords(2, &poly("h+1"));
        assert_eq!(w, &GwaElement::y_h(2, 1) + &GwaElement::y_h(2, 0));
        assert_eq!(weight_component_coords(-1, &poly("h")), GwaElement::h_x(1, 1));
        assert_eq!(weight_component_coords(0, &Polynomial::one()), GwaElement::one());
        assert_eq!(w.homogeneous_coords().unwrap(), Some((2, poly("h+1"))));
        assert!(u.homogeneous_coords().is_err());
    }

    #[test]
    fn display_format() {
        let u = &GwaElement::y_h(2, 1).scale(&FieldElement::from_int(3))
            - &GwaElement::h_x(1, 3).scale(&FieldElement::from_ratio(1, 2));
        assert_eq!(u.to_string(), "3*y^2*h - 1/2*h*x^3");
        assert_eq!(SmithElement::mono(1, 2, 1).to_string(), "Y*H^2*X");
    }

    #[test]
    fn phi_examples() {
        let c = actx("h^2+h+3", "2");
        let alg = GwaAlgebra::new(c.clone());
        let tgt = alg.phi_target();
        assert_eq!(alg.phi(&GwaElement::y()), GwaElement::x());
        assert_eq!(alg.phi(&GwaElement::x()), GwaElement::y());
        assert_eq!(alg.phi(&GwaElement::h()), GwaElement::h());
        // Φ(y²h) = x²h = q'^2 h x² with q' = 1/2
        let img = alg.phi(&GwaElement::y_h(2, 1));
        assert_eq!(img, GwaElement::h_x(1, 2).scale(&FieldElement::from_ratio(1, 4)));
        assert_eq!(img, tgt.mul(&tgt.mul(&GwaElement::x(), &GwaElement::x()), &GwaElement::h()));
    }

    #[test]
    fn non_monic_rejected() {
        assert_eq!(
            AlgebraContext::new(poly("2h^2+1"), &"2".parse().unwrap()).unwrap_err(),
            AlgebraError::NotMonic
        );
        assert!(AlgebraContext::new(poly("h+1"), &"2".parse().unwrap()).is_err());
    }

    fn arb_case() -> impl Strategy<Value = (&'static str, &'static str)> {
        prop_oneof![
            Just(("h^2-1", "2")),
            Just(("h^3 + 2h + 1", "-1")),
            Just(("h^2 + h + 1", "zeta:3")),
            Just(("h^2 - 3", "3/2")),
        ]
    }

    fn arb_a_mono() -> impl Strategy<Value = GwaElement> {
        (0u32..=5, 0u32..=5, 0u32..=5, any::<bool>()).prop_map(|(i, j, k, left)| {
            if left {
                GwaElement::y_h(i, j)
            } else {
                GwaElement::h_x(j, k)
            }
        })
    }

    fn arb_b_mono() -> impl Strategy<Value = SmithElement> {
        (0u32..=5, 0u32..=5, 0u32..=5).prop_map(|(i, j, k)| SmithElement::mono(i, j, k))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn a_associative(case in arb_case(), u in arb_a_mono(), v in arb_a_mono(), w in arb_a_mono()) {
            let alg = GwaAlgebra::new(actx(case.0, case.1));
            let lhs = alg.mul(&alg.mul(&u, &v), &w);
            prop_assert_eq!(&lhs, &alg.mul(&u, &alg.mul(&v, &w)));
            prop_assert_eq!(lhs.weight(), Some(u.weight().unwrap() + v.weight().unwrap() + w.weight().unwrap()));
            for (_, i, _, k) in lhs.monomials() {
                prop_assert!(i == 0 || k == 0);
            }
        }

        #[test]
        fn b_associative(case in arb_case(), graded in any::<bool>(), u in arb_b_mono(), v in arb_b_mono(), w in arb_b_mono()) {
            let b = SmithAlgebra::new(actx(case.0, case.1), graded);
            prop_assert_eq!(b.mul(&b.mul(&u, &v), &w), b.mul(&u, &b.mul(&v, &w)));
        }

        #[test]
        fn phi_is_homomorphism(case in arb_case(), u in arb_a_mono(), v in arb_a_mono()) {
            let alg = GwaAlgebra::new(actx(case.0, case.1));
            let tgt = alg.phi_target();
            let uv = alg.mul(&u, &v);
            prop_assert_eq!(alg.phi(&uv), tgt.mul(&alg.phi(&u), &alg.phi(&v)));
            prop_assert_eq!(alg.phi(&u).weight(), u.weight().map(|r| -r));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn pi_is_homomorphism_killing_omega(case in arb_case(), u in arb_b_mono(), v in arb_b_mono()) {
            let c = actx(case.0, case.1);
            let b = SmithAlgebra::new(c.clone(), false);
            let a = GwaAlgebra::new(c);
            prop_assert_eq!(b.project_pi(&b.mul(&u, &v)), a.mul(&b.project_pi(&u), &b.project_pi(&v)));
            prop_assert!(b.project_pi(&b.mul(&b.omega(), &u)).is_zero());
            prop_assert!(b.commutator(&b.omega(), &u, CommutatorMode::Plain).is_zero());
        }
    }
}
