//! The complexes: the bimodule resolution of `A` built from the Smith
//! algebra, its graded contraction over `B̄`, the comparison maps, and the
//! weight-graded Hochschild chain and cochain complexes.
//!
//! In the total resolution the component `X_{p,q}` is `A|∧^{p-q}V|A`, so a
//! pair `(q, ω)` sits in total degree `|ω| + 2q`. The horizontal `d` keeps
//! the row `q`; the vertical `δ` moves between rows `q` and `q − 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    Algebra, AlgebraContext, CommutatorMode, GwaAlgebra, GwaElement, Mono, SmithAlgebra,
    SmithElement,
};
use crate::polyring::{gcd, Polynomial};
use crate::scalars::FieldElement;

/// A wedge monomial in `{Y, H, X}` (or in the dual basis), as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Wedge(u8);

impl Wedge {
    pub const EMPTY: Wedge = Wedge(0);
    pub const Y: Wedge = Wedge(1);
    pub const H: Wedge = Wedge(2);
    pub const X: Wedge = Wedge(4);
    pub const YH: Wedge = Wedge(3);
    pub const YX: Wedge = Wedge(5);
    pub const HX: Wedge = Wedge(6);
    pub const YHX: Wedge = Wedge(7);

    pub const ALL: [Wedge; 8] = [
        Wedge::EMPTY,
        Wedge::Y,
        Wedge::H,
        Wedge::X,
        Wedge::YH,
        Wedge::YX,
        Wedge::HX,
        Wedge::YHX,
    ];

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// `#Y − #X`.
    pub fn weight(self) -> i64 {
        (self.0 & 1) as i64 - ((self.0 >> 2) & 1) as i64
    }

    pub fn of_degree(m: usize) -> impl Iterator<Item = Wedge> {
        Wedge::ALL.into_iter().filter(move |w| w.degree() == m)
    }

    pub fn label(self, dual: bool) -> String {
        if self.0 == 0 {
            return "1".into();
        }
        let names: &[&str] = if dual { &["Ŷ", "Ĥ", "X̂"] } else { &["Y", "H", "X"] };
        (0..3)
            .filter(|b| self.0 & (1 << b) != 0)
            .map(|b| names[b])
            .collect::<Vec<_>>()
            .join("∧")
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label(false))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "hom")]
    Homology,
    #[serde(rename = "coh")]
    Cohomology,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Homology => write!(f, "hom"),
            Direction::Cohomology => write!(f, "coh"),
        }
    }
}

/// A component `(q, ω)` of the total complex.
pub type Component = (u32, Wedge);

/// Components `(q, ω)` with `|ω| + 2q = n`, ordered by row then wedge.
pub fn components(n: usize) -> Vec<Component> {
    let mut out = Vec::new();
    for q in 0..=n / 2 {
        let m = n - 2 * q;
        if m <= 3 {
            out.extend(Wedge::of_degree(m).map(|w| (q as u32, w)));
        }
    }
    out
}

/// Number of components in total degree `n`: 1, 3, 4, 4, …
pub fn total_rank(n: usize) -> usize {
    components(n).len()
}

/// A weight-homogeneous chain (or cochain) in coordinates: component
/// `(q, ω)` holds `p` for `u|ω` with `u` the weight-appropriate element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVector {
    pub weight: i64,
    pub degree: usize,
    coords: BTreeMap<Component, Polynomial>,
}

impl ChainVector {
    pub fn zero(weight: i64, degree: usize) -> Self {
        ChainVector { weight, degree, coords: BTreeMap::new() }
    }

    pub fn basis(weight: i64, degree: usize, comp: Component, p: Polynomial) -> Self {
        let mut v = Self::zero(weight, degree);
        v.add(comp, &p);
        v
    }

    pub fn add(&mut self, comp: Component, p: &Polynomial) {
        debug_assert_eq!(comp.1.degree() + 2 * comp.0 as usize, self.degree);
        if p.is_zero() {
            return;
        }
        let entry = self.coords.entry(comp).or_insert_with(Polynomial::zero);
        *entry = &*entry + p;
        if entry.is_zero() {
            self.coords.remove(&comp);
        }
    }

    pub fn add_vector(&mut self, other: &ChainVector) {
        for (c, p) in &other.coords {
            self.add(*c, p);
        }
    }

    pub fn get(&self, comp: Component) -> Polynomial {
        self.coords.get(&comp).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn coords(&self) -> &BTreeMap<Component, Polynomial> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, c: &FieldElement) -> ChainVector {
        let mut out = ChainVector::zero(self.weight, self.degree);
        for (k, p) in &self.coords {
            out.add(*k, &p.scale(c));
        }
        out
    }
}

/// Which part of the total differential to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Horizontal,
    Vertical,
    Total,
}

/// `Σ_i c_i ∫_i coef(i,s,t)·h^{left} u h^{right}` with the exponents chosen
/// by `exps(s, t)`.
fn sandwich_sum(
    alg: &GwaAlgebra,
    u: &GwaElement,
    coeffs: impl Fn(usize) -> FieldElement,
    weight: impl Fn(usize, usize, usize) -> FieldElement,
    exps: impl Fn(usize, usize) -> (usize, usize),
) -> GwaElement {
    let n = alg.context().n();
    let mut out = GwaElement::zero();
    for i in 1..=n {
        let c = coeffs(i);
        if c.is_zero() {
            continue;
        }
        for s in 0..i {
            let t = i - 1 - s;
            let (l, r) = exps(s, t);
            let term = alg.mul3(&GwaElement::y_h(0, l as u32), u, &GwaElement::y_h(0, r as u32));
            out = &out + &term.scale(&(&c * &weight(i, s, t)));
        }
    }
    out
}

/// The weight-`r` part of the Hochschild chain or cochain complex of `A`.
#[derive(Debug, Clone)]
pub struct ComplexHandle {
    pub direction: Direction,
    pub weight: i64,
    pub n_max: usize,
    alg: GwaAlgebra,
}

pub fn build_hochschild_complex(actx: &AlgebraContext, r: i64, n_max: usize, direction: Direction) -> ComplexHandle {
    ComplexHandle { direction, weight: r, n_max, alg: GwaAlgebra::new(actx.clone()) }
}

impl ComplexHandle {
    pub fn algebra(&self) -> &GwaAlgebra {
        &self.alg
    }

    pub fn context(&self) -> &AlgebraContext {
        self.alg.context()
    }

    /// Weight of the coefficient `u` at a component with wedge `ω`.
    pub fn coeff_weight(&self, w: Wedge) -> i64 {
        match self.direction {
            Direction::Homology => self.weight - w.weight(),
            Direction::Cohomology => self.weight + w.weight(),
        }
    }

    pub fn element(&self, w: Wedge, p: &Polynomial) -> GwaElement {
        GwaElement::component(self.coeff_weight(w), p.clone())
    }

    /// Target row of `δ` from row `q`, if any.
    fn delta_row(&self, q: u32) -> Option<u32> {
        match self.direction {
            Direction::Homology => q.checked_sub(1),
            Direction::Cohomology => Some(q + 1),
        }
    }

    pub fn target_degree(&self, n: usize) -> Option<usize> {
        match self.direction {
            Direction::Homology => n.checked_sub(1),
            Direction::Cohomology => Some(n + 1),
        }
    }

    /// Horizontal differential on `u|ω` from the explicit formulas.
    pub fn d_element(&self, w: Wedge, u: &GwaElement) -> Vec<(Wedge, GwaElement)> {
        let a = &self.alg;
        let c = a.context();
        let (y, h, x) = (GwaElement::y(), GwaElement::h(), GwaElement::x());
        let br = |s: &GwaElement, t: &GwaElement| a.commutator(s, t, CommutatorMode::Plain);
        let bq = |s: &GwaElement, t: &GwaElement| a.commutator(s, t, CommutatorMode::QLeft);
        let one = |_: usize, _: usize, _: usize| FieldElement::one();
        let q = c.q().clone();
        match self.direction {
            Direction::Homology => match w {
                Wedge::Y => vec![(Wedge::EMPTY, br(&y, u))],
                Wedge::H => vec![(Wedge::EMPTY, br(&h, u))],
                Wedge::X => vec![(Wedge::EMPTY, br(&x, u))],
                Wedge::YH => vec![(Wedge::H, bq(&y, u)), (Wedge::Y, bq(u, &h))],
                Wedge::YX => vec![
                    (Wedge::X, br(&y, u)),
                    (Wedge::Y, br(u, &x)),
                    (Wedge::H, -&sandwich_sum(a, u, |i| c.lambda(i), one, |s, t| (t, s))),
                ],
                Wedge::HX => vec![(Wedge::X, bq(&h, u)), (Wedge::H, bq(u, &x))],
                Wedge::YHX => vec![
                    (Wedge::HX, bq(&y, u)),
                    (Wedge::YX, br(u, &h).scale(&q)),
                    (Wedge::YH, -&bq(u, &x)),
                ],
                _ => vec![],
            },
            Direction::Cohomology => match w {
                Wedge::EMPTY => vec![(Wedge::Y, br(u, &y)), (Wedge::H, br(u, &h)), (Wedge::X, br(u, &x))],
                Wedge::Y => vec![(Wedge::YH, bq(&h, u)), (Wedge::YX, -&br(u, &x))],
                Wedge::H => vec![
                    (Wedge::HX, bq(&x, u)),
                    (Wedge::YX, -&sandwich_sum(a, u, |i| c.lambda(i), one, |s, t| (s, t))),
                    (Wedge::YH, bq(u, &y)),
                ],
                Wedge::X => vec![(Wedge::HX, bq(u, &h)), (Wedge::YX, br(u, &y))],
                Wedge::YH => vec![(Wedge::YHX, -&bq(&x, u))],
                Wedge::YX => vec![(Wedge::YHX, br(&h, u).scale(&q))],
                Wedge::HX => vec![(Wedge::YHX, bq(u, &y))],
                _ => vec![],
            },
        }
    }

    /// Vertical differential on `u|ω` from the explicit formulas.
    pub fn delta_element(&self, w: Wedge, u: &GwaElement) -> Vec<(Wedge, GwaElement)> {
        let a = &self.alg;
        let c = a.context();
        let (y, x) = (GwaElement::y(), GwaElement::x());
        let alpha = |i: usize| c.alpha(i);
        let one = |_: usize, _: usize, _: usize| FieldElement::one();
        let q_t = |_: usize, _: usize, t: usize| c.q_pow(t as i64);
        let q_s = |_: usize, s: usize, _: usize| c.q_pow(s as i64);
        let q_i = |i: usize, _: usize, _: usize| c.q_pow(i as i64 - 1);
        let uy = a.mul(u, &y);
        let xu = a.mul(&x, u);
        let ux = a.mul(u, &x);
        let yu = a.mul(&y, u);
        match self.direction {
            Direction::Homology => {
                let ts = |s: usize, t: usize| (t, s);
                match w {
                    Wedge::EMPTY => vec![
                        (Wedge::X, uy),
                        (Wedge::Y, xu),
                        (Wedge::H, -&sandwich_sum(a, u, alpha, one, ts)),
                    ],
                    Wedge::Y => vec![(Wedge::YX, -&uy), (Wedge::YH, sandwich_sum(a, u, alpha, q_t, ts))],
                    Wedge::H => vec![(Wedge::YH, xu), (Wedge::HX, -&uy)],
                    Wedge::X => vec![(Wedge::YX, xu), (Wedge::HX, -&sandwich_sum(a, u, alpha, q_s, ts))],
                    Wedge::YH => vec![(Wedge::YHX, uy)],
                    Wedge::YX => vec![(Wedge::YHX, sandwich_sum(a, u, alpha, q_i, ts))],
                    Wedge::HX => vec![(Wedge::YHX, xu)],
                    _ => vec![],
                }
            }
            Direction::Cohomology => {
                let st = |s: usize, t: usize| (s, t);
                match w {
                    Wedge::Y => vec![(Wedge::EMPTY, ux)],
                    Wedge::H => vec![(Wedge::EMPTY, -&sandwich_sum(a, u, alpha, one, st))],
                    Wedge::X => vec![(Wedge::EMPTY, yu)],
                    Wedge::YH => vec![(Wedge::Y, sandwich_sum(a, u, alpha, q_t, st)), (Wedge::H, ux)],
                    Wedge::YX => vec![(Wedge::X, ux), (Wedge::Y, -&yu)],
                    Wedge::HX => vec![(Wedge::H, -&yu), (Wedge::X, -&sandwich_sum(a, u, alpha, q_s, st))],
                    Wedge::YHX => vec![
                        (Wedge::HX, ux),
                        (Wedge::YX, sandwich_sum(a, u, alpha, q_i, st)),
                        (Wedge::YH, yu),
                    ],
                    _ => vec![],
                }
            }
        }
    }

    /// Horizontal differential derived from the bimodule resolution.
    pub fn d_element_derived(&self, w: Wedge, u: &GwaElement) -> Vec<(Wedge, GwaElement)> {
        let a = &self.alg;
        match self.direction {
            Direction::Homology => collapse_chain(a, u, &bimod_d(a, a, w)),
            Direction::Cohomology => collapse_cochain(a, u, w, w.degree() + 1, |t| bimod_d(a, a, t)),
        }
    }

    /// Vertical differential derived from the bimodule resolution.
    pub fn delta_element_derived(&self, w: Wedge, u: &GwaElement) -> Vec<(Wedge, GwaElement)> {
        let a = &self.alg;
        match self.direction {
            Direction::Homology => collapse_chain(a, u, &bimod_delta(a, a, w)),
            Direction::Cohomology => match w.degree() {
                0 => vec![],
                m => collapse_cochain(a, u, w, m - 1, |t| bimod_delta(a, a, t)),
            },
        }
    }

    fn apply_with(
        &self,
        v: &ChainVector,
        part: Part,
        d: impl Fn(Wedge, &GwaElement) -> Vec<(Wedge, GwaElement)>,
        delta: impl Fn(Wedge, &GwaElement) -> Vec<(Wedge, GwaElement)>,
    ) -> ChainVector {
        let out_degree = self.target_degree(v.degree).unwrap_or(0);
        let mut out = ChainVector::zero(v.weight, out_degree);
        if self.target_degree(v.degree).is_none() {
            return out;
        }
        for (&(q, w), p) in &v.coords {
            let u = self.element(w, p);
            if part != Part::Vertical {
                for (w2, img) in d(w, &u) {
                    out.add((q, w2), &img.coord(self.coeff_weight(w2)));
                    debug_assert!(img.terms().len() <= 1);
                }
            }
            if part != Part::Horizontal {
                if let Some(q2) = self.delta_row(q) {
                    for (w2, img) in delta(w, &u) {
                        out.add((q2, w2), &img.coord(self.coeff_weight(w2)));
                        debug_assert!(img.terms().len() <= 1);
                    }
                }
            }
        }
        out
    }

    /// `d`, `δ` or `D = d + δ` from the explicit formulas.
    pub fn apply(&self, v: &ChainVector, part: Part) -> ChainVector {
        self.apply_with(v, part, |w, u| self.d_element(w, u), |w, u| self.delta_element(w, u))
    }

    /// Same as [`apply`](Self::apply) through the bimodule resolution.
    pub fn apply_derived(&self, v: &ChainVector, part: Part) -> ChainVector {
        self.apply_with(v, part, |w, u| self.d_element_derived(w, u), |w, u| self.delta_element_derived(w, u))
    }

    /// Whether every output coefficient of `D` on `v` has the expected weight.
    pub fn preserves_weight(&self, v: &ChainVector) -> bool {
        for (&(_, w), p) in &v.coords {
            let u = self.element(w, p);
            for (w2, img) in self.d_element(w, &u).into_iter().chain(self.delta_element(w, &u)) {
                if img.terms().keys().any(|r| *r != self.coeff_weight(w2)) {
                    return false;
                }
            }
        }
        true
    }
}

/// `Σ c·R·u·L|ω'` over the terms `c·L|ω'|R`.
fn collapse_chain(a: &GwaAlgebra, u: &GwaElement, terms: &[BimodTerm<GwaAlgebra, GwaAlgebra>]) -> Vec<(Wedge, GwaElement)> {
    let mut acc: BTreeMap<Wedge, GwaElement> = BTreeMap::new();
    for (c, l, w, r) in terms {
        let val = a.mul3(r, u, l).scale(c);
        let e = acc.entry(*w).or_default();
        *e = &*e + &val;
    }
    acc.into_iter().collect()
}

/// `(dφ)(ω') = Σ c·L·u·R` over the terms `c·L|ω|R` of the image of `1|ω'|1`.
fn collapse_cochain(
    a: &GwaAlgebra,
    u: &GwaElement,
    w: Wedge,
    target_degree: usize,
    diff: impl Fn(Wedge) -> Vec<BimodTerm<GwaAlgebra, GwaAlgebra>>,
) -> Vec<(Wedge, GwaElement)> {
    let mut out = Vec::new();
    for t in Wedge::of_degree(target_degree) {
        let mut val = GwaElement::zero();
        for (c, l, w2, r) in diff(t) {
            if w2 == w {
                val = &val + &a.mul3(&l, u, &r).scale(&c);
            }
        }
        out.push((t, val));
    }
    out
}

/// A term `c·L|ω|R` of a bimodule chain.
pub type BimodTerm<L, R> = (FieldElement, <L as Algebra>::Elem, Wedge, <R as Algebra>::Elem);

/// `d(1|ω|1)` in `L|∧V|R`; the degree-0 map (the augmentation) is omitted.
pub fn bimod_d<L: Algebra, R: Algebra>(l: &L, r: &R, w: Wedge) -> Vec<BimodTerm<L, R>> {
    let q = l.context().q().clone();
    let mq = -&q;
    let one = FieldElement::one();
    let m1 = -&one;
    let (l1, ly, lh, lx) = (l.one(), l.gen_y(), l.gen_h(), l.gen_x());
    let (r1, ry, rh, rx) = (r.one(), r.gen_y(), r.gen_h(), r.gen_x());
    let e = Wedge::EMPTY;
    match w {
        Wedge::Y => vec![(one, l1.clone(), e, ry), (m1, ly, e, r1)],
        Wedge::H => vec![(one, l1.clone(), e, rh), (m1, lh, e, r1)],
        Wedge::X => vec![(one, l1.clone(), e, rx), (m1, lx, e, r1)],
        Wedge::HX => vec![
            (one.clone(), l1.clone(), Wedge::X, rh),
            (mq.clone(), lh, Wedge::X, r1.clone()),
            (mq, l1, Wedge::H, rx),
            (one, lx, Wedge::H, r1),
        ],
        Wedge::YX => {
            let mut v = vec![
                (one.clone(), l1.clone(), Wedge::X, ry),
                (m1.clone(), ly, Wedge::X, r1.clone()),
                (m1, l1, Wedge::Y, rx),
                (one, lx, Wedge::Y, r1),
            ];
            let n = l.context().n();
            for i in 1..=n {
                let lam = l.lambda(i);
                if lam.is_zero() {
                    continue;
                }
                for s in 0..i {
                    let t = i - 1 - s;
                    v.push((-&lam, l.mono([0, s as u32, 0]), Wedge::H, r.mono([0, t as u32, 0])));
                }
            }
            v
        }
        Wedge::YH => vec![
            (one.clone(), l1.clone(), Wedge::H, ry),
            (mq.clone(), ly, Wedge::H, r1.clone()),
            (mq, l1, Wedge::Y, rh),
            (one, lh, Wedge::Y, r1),
        ],
        Wedge::YHX => vec![
            (one.clone(), l1.clone(), Wedge::HX, ry),
            (mq.clone(), ly, Wedge::HX, r1.clone()),
            (mq, l1.clone(), Wedge::YX, rh),
            (q.clone(), lh, Wedge::YX, r1.clone()),
            (q, l1, Wedge::YH, rx),
            (m1, lx, Wedge::YH, r1),
        ],
        _ => vec![],
    }
}

/// `δ(1|ω|1)`, from row `q` to row `q − 1`.
pub fn bimod_delta<L: Algebra, R: Algebra>(l: &L, r: &R, w: Wedge) -> Vec<BimodTerm<L, R>> {
    let c = l.context();
    let one = FieldElement::one();
    let m1 = -&one;
    let (l1, ly) = (l.one(), l.gen_y());
    let (r1, rx) = (r.one(), r.gen_x());
    // Σ_i α_i ∫_i f(i,s,t)·h^s|ω|h^t
    let integral = |target: Wedge, sign: &FieldElement, f: &dyn Fn(usize, usize, usize) -> FieldElement| {
        let mut v = Vec::new();
        for i in 1..=c.n() {
            let al = c.alpha(i);
            if al.is_zero() {
                continue;
            }
            for s in 0..i {
                let t = i - 1 - s;
                v.push((&(sign * &al) * &f(i, s, t), l.mono([0, s as u32, 0]), target, r.mono([0, t as u32, 0])));
            }
        }
        v
    };
    let unit = |_: usize, _: usize, _: usize| FieldElement::one();
    match w {
        Wedge::EMPTY => {
            let mut v = vec![(one.clone(), ly, Wedge::X, r1.clone()), (one, l1, Wedge::Y, rx)];
            v.extend(integral(Wedge::H, &m1, &unit));
            v
        }
        Wedge::Y => {
            let mut v = vec![(m1, ly, Wedge::YX, r1)];
            v.extend(integral(Wedge::YH, &one, &|_, _, t| c.q_pow(t as i64)));
            v
        }
        Wedge::H => vec![(one, l1, Wedge::YH, rx), (m1, ly, Wedge::HX, r1)],
        Wedge::X => {
            let mut v = vec![(one, l1, Wedge::YX, rx)];
            v.extend(integral(Wedge::HX, &m1, &|_, s, _| c.q_pow(s as i64)));
            v
        }
        Wedge::YH => vec![(one, ly, Wedge::YHX, r1)],
        Wedge::YX => integral(Wedge::YHX, &one, &|i, _, _| c.q_pow(i as i64 - 1)),
        Wedge::HX => vec![(one, l1, Wedge::YHX, rx)],
        _ => vec![],
    }
}

/// Key of a bimodule monomial `L|ω|R`.
pub type BimodKey = (Mono, Wedge, Mono);

/// A chain in `L|∧V|R`, in the monomial basis of `L ⊗ ∧V ⊗ R`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BimoduleChain {
    terms: BTreeMap<BimodKey, FieldElement>,
}

impl BimoduleChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<BimodKey, FieldElement> {
        &self.terms
    }

    pub fn add_mono(&mut self, key: BimodKey, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(FieldElement::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds `c·L|ω|R`.
    pub fn add_tensor<L: Algebra, R: Algebra>(
        &mut self,
        la: &L,
        ra: &R,
        c: &FieldElement,
        l: &L::Elem,
        w: Wedge,
        r: &R::Elem,
    ) {
        let lm = la.monomials_of(l);
        let rm = ra.monomials_of(r);
        for (cl, ml) in &lm {
            let cl = c * cl;
            for (cr, mr) in &rm {
                self.add_mono((*ml, w, *mr), &(&cl * cr));
            }
        }
    }

    pub fn add_chain(&mut self, other: &BimoduleChain, c: &FieldElement) {
        for (k, v) in &other.terms {
            self.add_mono(*k, &(c * v));
        }
    }

    pub fn generator(w: Wedge) -> Self {
        let mut z = Self::new();
        z.add_mono(([0, 0, 0], w, [0, 0, 0]), &FieldElement::one());
        z
    }

    pub fn from_terms<L: Algebra, R: Algebra>(la: &L, ra: &R, terms: &[BimodTerm<L, R>]) -> Self {
        let mut z = Self::new();
        for (c, l, w, r) in terms {
            z.add_tensor(la, ra, c, l, *w, r);
        }
        z
    }

    /// Applies the bimodule map determined by `f(ω) = image of 1|ω|1`.
    pub fn apply_bimodule<L: Algebra, R: Algebra>(
        &self,
        la: &L,
        ra: &R,
        f: impl Fn(Wedge) -> Vec<BimodTerm<L, R>>,
    ) -> BimoduleChain {
        let mut cache: BTreeMap<Wedge, Vec<BimodTerm<L, R>>> = BTreeMap::new();
        let mut out = BimoduleChain::new();
        for ((ml, w, mr), c) in &self.terms {
            let img = cache.entry(*w).or_insert_with(|| f(*w));
            let lel = la.mono(*ml);
            let rel = ra.mono(*mr);
            for (c2, l2, w2, r2) in img.iter() {
                out.add_tensor(la, ra, &(c * c2), &la.mul(&lel, l2), *w2, &ra.mul(r2, &rel));
            }
        }
        out
    }

    /// `μ(L|R) = L·R` on the `∧⁰` part, for algebras with a common target.
    pub fn multiply_out<L: Algebra>(&self, la: &L) -> L::Elem {
        let mut acc = la.zero();
        for ((ml, w, mr), c) in &self.terms {
            if *w == Wedge::EMPTY {
                acc = la.add(&acc, &la.scale(&la.mul(&la.mono(*ml), &la.mono(*mr)), c));
            }
        }
        acc
    }
}

impl fmt::Display for BimoduleChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, w, r), c)| format!("{c}*[{},{},{}]|{w}|[{},{},{}]", l[0], l[1], l[2], r[0], r[1], r[2]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Result of a validation run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>) -> Self {
        IdentityReport { name: name.into(), checks: 0, failures: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 50 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.checks += other.checks;
        for f in other.failures {
            if self.failures.len() < 50 {
                self.failures.push(format!("{}: {f}", other.name));
            }
        }
    }
}

/// The bimodule resolution `A|∧V|A` with its two differentials.
#[derive(Debug, Clone)]
pub struct BimoduleTotal {
    alg: GwaAlgebra,
}

pub fn build_bimodule_total(actx: &AlgebraContext) -> BimoduleTotal {
    BimoduleTotal { alg: GwaAlgebra::new(actx.clone()) }
}

impl BimoduleTotal {
    pub fn d(&self, z: &BimoduleChain) -> BimoduleChain {
        z.apply_bimodule(&self.alg, &self.alg, |w| bimod_d(&self.alg, &self.alg, w))
    }

    pub fn delta(&self, z: &BimoduleChain) -> BimoduleChain {
        z.apply_bimodule(&self.alg, &self.alg, |w| bimod_delta(&self.alg, &self.alg, w))
    }

    pub fn algebra(&self) -> &GwaAlgebra {
        &self.alg
    }

    /// `ω = δ(1|1)`, the generator of the first page in odd rows.
    pub fn omega_chain(&self) -> BimoduleChain {
        self.delta(&BimoduleChain::generator(Wedge::EMPTY))
    }

    /// `d² = 0`, `δ² = 0`, `dδ + δd = 0` and `μd = 0` on `L|ω|R` for `L`, `R`
    /// running over `monos` (pairs with one side trivial plus the diagonal).
    pub fn validate(&self, monos: &[Mono]) -> IdentityReport {
        let a = &self.alg;
        let mut rep = IdentityReport::new("bimodule resolution");
        let mut pairs: Vec<(Mono, Mono)> = Vec::new();
        for m in monos {
            pairs.push((*m, [0, 0, 0]));
            pairs.push(([0, 0, 0], *m));
        }
        for (i, m) in monos.iter().enumerate() {
            pairs.push((*m, monos[(i * 7 + 3) % monos.len()]));
        }
        for w in Wedge::ALL {
            for (ml, mr) in &pairs {
                let mut z = BimoduleChain::new();
                z.add_mono((*ml, w, *mr), &FieldElement::one());
                let dz = self.d(&z);
                let tz = self.delta(&z);
                let dd = self.d(&dz);
                rep.check(dd.is_zero(), || format!("d² ≠ 0 on {z}"));
                rep.check(self.delta(&tz).is_zero(), || format!("δ² ≠ 0 on {z}"));
                let mut anti = self.d(&tz);
                anti.add_chain(&self.delta(&dz), &FieldElement::one());
                rep.check(anti.is_zero(), || format!("dδ + δd ≠ 0 on {z}: {anti}"));
                if w.degree() == 1 {
                    rep.check(a.is_zero(&dz.multiply_out(a)), || format!("μd ≠ 0 on {z}"));
                }
            }
        }
        rep
    }
}

/// The graded Smith complex `B̄|∧V̄|B̄` with its left-linear contraction.
#[derive(Debug, Clone)]
pub struct SmithGraded {
    alg: SmithAlgebra,
}

pub fn build_smith_graded_complex(actx: &AlgebraContext) -> SmithGraded {
    SmithGraded { alg: SmithAlgebra::new(actx.clone(), true) }
}

impl SmithGraded {
    pub fn algebra(&self) -> &SmithAlgebra {
        &self.alg
    }

    pub fn d(&self, z: &BimoduleChain) -> BimoduleChain {
        z.apply_bimodule(&self.alg, &self.alg, |w| bimod_d(&self.alg, &self.alg, w))
    }

    /// `s(1|ω|Y^i H^j X^k)`.
    fn s_generator(&self, w: Wedge, m: Mono) -> BimoduleChain {
        let [i, j, k] = m;
        let q = |n: u32| self.alg.context().q_pow(n as i64);
        let mut z = BimoduleChain::new();
        let one = FieldElement::one();
        match w {
            Wedge::EMPTY => {
                for s in 0..i {
                    z.add_mono(([s, 0, 0], Wedge::Y, [i - 1 - s, j, k]), &one);
                }
                for s in 0..j {
                    z.add_mono(([i, s, 0], Wedge::H, [0, j - 1 - s, k]), &one);
                }
                for s in 0..k {
                    let lead = SmithElement::mono(i, j, s);
                    z.add_tensor(&self.alg, &self.alg, &one, &lead, Wedge::X, &SmithElement::mono(0, 0, k - 1 - s));
                }
            }
            Wedge::H => {
                for s in 0..i {
                    z.add_mono(([s, 0, 0], Wedge::YH, [i - 1 - s, j, k]), &q(s));
                }
            }
            Wedge::X => {
                for s in 0..i {
                    z.add_mono(([s, 0, 0], Wedge::YX, [i - 1 - s, j, k]), &one);
                }
                for s in 0..j {
                    z.add_mono(([i, s, 0], Wedge::HX, [0, j - 1 - s, k]), &q(s));
                }
            }
            Wedge::HX => {
                for s in 0..i {
                    z.add_mono(([s, 0, 0], Wedge::YHX, [i - 1 - s, j, k]), &q(s));
                }
            }
            _ => {}
        }
        z
    }

    /// The contraction `s`, extended left `B̄`-linearly.
    pub fn s(&self, z: &BimoduleChain) -> BimoduleChain {
        let mut out = BimoduleChain::new();
        for ((ml, w, mr), c) in z.terms() {
            let img = self.s_generator(*w, *mr);
            let left = self.alg.mono(*ml);
            for ((l2, w2, r2), c2) in img.terms() {
                let prod = self.alg.mul(&left, &self.alg.mono(*l2));
                out.add_tensor(&self.alg, &self.alg, &(c * c2), &prod, *w2, &self.alg.mono(*r2));
            }
        }
        out
    }

    /// `s₋₁(b) = b|1`.
    pub fn s_minus_one(&self, b: &SmithElement) -> BimoduleChain {
        let mut z = BimoduleChain::new();
        z.add_tensor(&self.alg, &self.alg, &FieldElement::one(), b, Wedge::EMPTY, &self.alg.one());
        z
    }

    /// Contraction identities on `1|ω|m` for all `m` with exponents ≤ `bound`,
    /// plus `d² = 0`.
    pub fn validate(&self, bound: u32) -> IdentityReport {
        let mut rep = IdentityReport::new("graded Smith contraction");
        let b = &self.alg;
        for i in 0..=bound {
            for j in 0..=bound {
                for k in 0..=bound {
                    let m = [i, j, k];
                    let bm = b.mono(m);
                    // μ s₋₁ = id
                    let back = self.s_minus_one(&bm).multiply_out(b);
                    rep.check(back == bm, || format!("μs₋₁ ≠ id on {bm}"));
                    for w in Wedge::ALL {
                        let mut z = BimoduleChain::new();
                        z.add_mono(([0, 0, 0], w, m), &FieldElement::one());
                        let mut lhs = self.d(&self.s(&z));
                        if w == Wedge::EMPTY {
                            lhs.add_chain(&self.s_minus_one(&z.multiply_out(b)), &FieldElement::one());
                        } else {
                            lhs.add_chain(&self.s(&self.d(&z)), &FieldElement::one());
                        }
                        rep.check(lhs == z, || format!("ds + sd ≠ id on 1|{w}|{bm}"));
                        if w.degree() >= 2 {
                            rep.check(self.d(&self.d(&z)).is_zero(), || format!("d² ≠ 0 on 1|{w}|{bm}"));
                        }
                        if w == Wedge::Y || w == Wedge::YX || w == Wedge::YH || w == Wedge::YHX {
                            rep.check(self.s(&z).is_zero(), || format!("s ≠ 0 on 1|{w}|{bm}"));
                        }
                    }
                }
            }
        }
        rep
    }
}

/// Comparison maps between `0 → B →Ω B → A` and `B|∧V|A → A`.
#[derive(Debug, Clone)]
pub struct ComparisonMaps {
    b: SmithAlgebra,
    a: GwaAlgebra,
}

impl ComparisonMaps {
    pub fn new(actx: &AlgebraContext) -> Self {
        ComparisonMaps { b: SmithAlgebra::new(actx.clone(), false), a: GwaAlgebra::new(actx.clone()) }
    }

    /// `f₀(b) = b|1`.
    pub fn f0(&self, b: &SmithElement) -> BimoduleChain {
        let mut z = BimoduleChain::new();
        z.add_tensor(&self.b, &self.a, &FieldElement::one(), b, Wedge::EMPTY, &GwaElement::one());
        z
    }

    /// `f₁(b) = b·(−Y|X|1 − 1|Y|x + Σ_i α_i ∫_i H^s|H|h^t)`.
    pub fn f1(&self, b: &SmithElement) -> BimoduleChain {
        let c = self.b.context();
        let m1 = FieldElement::from_int(-1);
        let mut z = BimoduleChain::new();
        z.add_tensor(&self.b, &self.a, &m1, &self.b.mul(b, &self.b.gen_y()), Wedge::X, &GwaElement::one());
        z.add_tensor(&self.b, &self.a, &m1, b, Wedge::Y, &GwaElement::x());
        for i in 1..=c.n() {
            for s in 0..i {
                let t = (i - 1 - s) as u32;
                let left = self.b.mul(b, &SmithElement::mono(0, s as u32, 0));
                z.add_tensor(&self.b, &self.a, &c.alpha(i), &left, Wedge::H, &GwaElement::y_h(0, t));
            }
        }
        z
    }

    /// The section `A → B` on monomials: `y^i h^j ↦ Y^i H^j`, `h^j x^k ↦ H^j X^k`.
    pub fn section(&self, u: &GwaElement) -> SmithElement {
        let mut out = SmithElement::zero();
        for (c, i, j, k) in u.monomials() {
            out = &out + &SmithElement::mono(i, j, k).scale(&c);
        }
        out
    }

    /// `g₀(b|m) = b·section(m)`.
    pub fn g0(&self, z: &BimoduleChain) -> SmithElement {
        let mut out = SmithElement::zero();
        for ((ml, w, mr), c) in z.terms() {
            if *w == Wedge::EMPTY {
                let v = self.b.mul(&self.b.mono(*ml), &self.section(&self.a.mono(*mr)));
                out = &out + &v.scale(c);
            }
        }
        out
    }

    /// `g₁` on `b|v|m`.
    pub fn g1(&self, z: &BimoduleChain) -> SmithElement {
        let q = self.b.context();
        let mut out = SmithElement::zero();
        for ((ml, w, mr), c) in z.terms() {
            let [i, j, k] = *mr;
            let val = match *w {
                Wedge::Y if i == 0 && k >= 1 => {
                    SmithElement::mono(0, j, k - 1).scale(&(-&q.q_pow(-(j as i64))))
                }
                Wedge::X if k == 0 && i >= 1 => SmithElement::mono(i - 1, j, 0).scale(&FieldElement::from_int(-1)),
                _ => SmithElement::zero(),
            };
            out = &out + &self.b.mul(&self.b.mono(*ml), &val).scale(c);
        }
        out
    }

    /// `d` on `B|∧V|A`.
    pub fn d(&self, z: &BimoduleChain) -> BimoduleChain {
        z.apply_bimodule(&self.b, &self.a, |w| bimod_d(&self.b, &self.a, w))
    }

    /// `μ(b|m) = π(b)·m`.
    pub fn mu(&self, z: &BimoduleChain) -> GwaElement {
        let mut out = GwaElement::zero();
        for ((ml, w, mr), c) in z.terms() {
            if *w == Wedge::EMPTY {
                let v = self.a.mul(&self.b.project_pi(&self.b.mono(*ml)), &self.a.mono(*mr));
                out = &out + &v.scale(c);
            }
        }
        out
    }
}

fn a_monomials(bound: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for i in 0..=bound {
        for j in 0..=bound {
            out.push([i, j, 0]);
            if i >= 1 {
                out.push([0, j, i]);
            }
        }
    }
    out
}

/// Checks `μf₀ = π`, `d f₁ = f₀(·Ω)`, `π g₀ = μ` and `g₀ d = (·Ω) g₁` on
/// monomials with exponents ≤ `bound`.
pub fn validate_comparison_maps(actx: &AlgebraContext, bound: u32) -> IdentityReport {
    let maps = ComparisonMaps::new(actx);
    let (b, a) = (&maps.b, &maps.a);
    let omega = b.omega();
    let mut rep = IdentityReport::new("comparison maps");
    for i in 0..=bound {
        for j in 0..=bound {
            for k in 0..=bound {
                let bm = SmithElement::mono(i, j, k);
                rep.check(maps.mu(&maps.f0(&bm)) == b.project_pi(&bm), || format!("μf₀ ≠ π on {bm}"));
                if i + j + k <= bound {
                    let lhs = maps.d(&maps.f1(&bm));
                    let rhs = maps.f0(&b.mul(&bm, &omega));
                    rep.check(lhs == rhs, || format!("d f₁ ≠ f₀Ω on {bm}"));
                }
            }
        }
    }
    for m in a_monomials(bound) {
        let am = a.mono(m);
        let mut z = BimoduleChain::new();
        z.add_mono(([0, 0, 0], Wedge::EMPTY, m), &FieldElement::one());
        rep.check(b.project_pi(&maps.g0(&z)) == maps.mu(&z), || format!("πg₀ ≠ μ on 1|{am}"));
        for w in [Wedge::Y, Wedge::H, Wedge::X] {
            let mut z = BimoduleChain::new();
            z.add_mono(([0, 0, 0], w, m), &FieldElement::one());
            let lhs = maps.g0(&maps.d(&z));
            let rhs = b.mul(&maps.g1(&z), &omega);
            rep.check(lhs == rhs, || format!("g₀d ≠ Ωg₁ on 1|{w}|{am}: {lhs} vs {rhs}"));
        }
    }
    rep
}

/// d², δ², dδ + δd, D² and weight preservation on all coordinate basis
/// chains of degree ≤ `handle.n_max` with `h`-degree ≤ `h_deg_bound`, and
/// agreement of the explicit formulas with the bimodule-derived ones.
pub fn validate_identities(handle: &ComplexHandle, h_deg_bound: usize) -> IdentityReport {
    let mut rep = IdentityReport::new(format!(
        "{} complex, weight {}",
        match handle.direction {
            Direction::Homology => "chain",
            Direction::Cohomology => "cochain",
        },
        handle.weight
    ));
    for n in 0..=handle.n_max {
        for comp in components(n) {
            for j in 0..=h_deg_bound {
                let v = ChainVector::basis(handle.weight, n, comp, Polynomial::h_pow(j));
                let dv = handle.apply(&v, Part::Horizontal);
                let tv = handle.apply(&v, Part::Vertical);
                let total = handle.apply(&v, Part::Total);
                let label = || format!("n={n} (q={}, {}) h^{j}", comp.0, comp.1);
                rep.check(handle.apply(&dv, Part::Horizontal).is_zero(), || format!("d² ≠ 0 at {}", label()));
                rep.check(handle.apply(&tv, Part::Vertical).is_zero(), || format!("δ² ≠ 0 at {}", label()));
                let mut anti = handle.apply(&tv, Part::Horizontal);
                anti.add_vector(&handle.apply(&dv, Part::Vertical));
                rep.check(anti.is_zero(), || format!("dδ + δd ≠ 0 at {}", label()));
                rep.check(handle.apply(&total, Part::Total).is_zero(), || format!("D² ≠ 0 at {}", label()));
                rep.check(handle.preserves_weight(&v), || format!("weight not preserved at {}", label()));
                rep.check(handle.apply_derived(&v, Part::Horizontal) == dv, || {
                    format!("explicit d differs from derived d at {}", label())
                });
                rep.check(handle.apply_derived(&v, Part::Vertical) == tv, || {
                    format!("explicit δ differs from derived δ at {}", label())
                });
            }
        }
    }
    rep
}

/// Bounds for [`identity_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteBounds {
    pub h_degree: usize,
    pub n_max: usize,
    pub r_max: i64,
    pub mono_bound: u32,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds { h_degree: 8, n_max: 5, r_max: 4, mono_bound: 6 }
    }
}

/// All symbolic checks for one algebra: chain and cochain complexes at
/// every weight `|r| ≤ r_max`, the bimodule resolution, the graded Smith
/// contraction and the comparison maps.
pub fn identity_suite(actx: &AlgebraContext, bounds: SuiteBounds) -> Vec<IdentityReport> {
    use rayon::prelude::*;
    let mut jobs: Vec<Option<(Direction, i64)>> = vec![None, None, None];
    for dir in [Direction::Homology, Direction::Cohomology] {
        jobs.extend((-bounds.r_max..=bounds.r_max).map(|r| Some((dir, r))));
    }
    jobs.into_par_iter()
        .enumerate()
        .map(|(i, job)| match (i, job) {
            (_, Some((dir, r))) => {
                validate_identities(&build_hochschild_complex(actx, r, bounds.n_max, dir), bounds.h_degree)
            }
            (0, None) => build_bimodule_total(actx).validate(&a_monomials(bounds.mono_bound)),
            (1, None) => build_smith_graded_complex(actx).validate(bounds.mono_bound),
            _ => validate_comparison_maps(actx, bounds.mono_bound),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Hom,
    Coh,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepresentativeError {
    #[error("no explicit representatives for this (side, degree, weight)")]
    Unsupported,
    #[error("a listed representative is not a δ-cycle")]
    NotACycle,
}

/// Explicit first-page representatives, each checked to be a column cycle.
///
/// * homology, `p = 2`, `r = 0`: `σ(a/c)·h^j|Y∧X − y·h^j·σ(a′/c)|H∧X`, `j < M`;
/// * cohomology, `p = 1`, `r = 0`: `(a/c)h^j|Ĥ + σ((a′/c)h^j)x|X̂`, `j < M`.
///
/// The homology chains sit in row 1 and the cochains in row 0.
pub fn first_page_representatives(
    actx: &AlgebraContext,
    side: Side,
    p: usize,
    r: i64,
) -> Result<Vec<ChainVector>, RepresentativeError> {
    let a = actx.a();
    let c = gcd(a, &a.derivative()).expect("a is nonzero");
    let a_c = a.exact_div(&c).expect("c divides a");
    let ap_c = a.derivative().exact_div(&c).expect("c divides a'");
    let m = c.degree_i64() as usize;
    let (handle, reps) = match (side, p, r) {
        (Side::Hom, 2, 0) => {
            let hd = build_hochschild_complex(actx, 0, 4, Direction::Homology);
            let reps = (0..m)
                .map(|j| {
                    let rj = Polynomial::h_pow(j);
                    let mut v = ChainVector::zero(0, 4);
                    v.add((1, Wedge::YX), &(&actx.sigma(&a_c, 1) * &rj));
                    // y·(rσ(a'/c)) has coordinate rσ(a'/c) at weight 1
                    v.add((1, Wedge::HX), &-(&rj * &actx.sigma(&ap_c, 1)));
                    v
                })
                .collect::<Vec<_>>();
            (hd, reps)
        }
        (Side::Coh, 1, 0) => {
            let hd = build_hochschild_complex(actx, 0, 3, Direction::Cohomology);
            let reps = (0..m)
                .map(|j| {
                    let rj = Polynomial::h_pow(j);
                    let mut v = ChainVector::zero(0, 1);
                    v.add((0, Wedge::H), &(&a_c * &rj));
                    v.add((0, Wedge::X), &actx.sigma(&(&ap_c * &rj), 1));
                    v
                })
                .collect::<Vec<_>>();
            (hd, reps)
        }
        _ => return Err(RepresentativeError::Unsupported),
    };
    for v in &reps {
        if !handle.apply(v, Part::Vertical).is_zero() {
            return Err(RepresentativeError::NotACycle);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QSpec;

    fn actx(a: &str, q: &str) -> AlgebraContext {
        AlgebraContext::new(a.parse().unwrap(), &q.parse::<QSpec>().unwrap()).unwrap()
    }

    #[test]
    fn component_counts() {
        assert_eq!(total_rank(0), 1);
        assert_eq!(total_rank(1), 3);
        assert_eq!(total_rank(2), 4);
        assert_eq!(total_rank(5), 4);
        for n in 0..8 {
            assert!(components(n).iter().all(|(q, w)| w.degree() + 2 * *q as usize == n));
        }
        assert_eq!(Wedge::YX.weight(), 0);
        assert_eq!(Wedge::HX.weight(), -1);
        assert_eq!(Wedge::YH.label(true), "Ŷ∧Ĥ");
    }

    #[test]
    fn delta_of_one() {
        let c = actx("h^2-1", "2");
        let hd = build_hochschild_complex(&c, 0, 3, Direction::Homology);
        let v = ChainVector::basis(0, 2, (1, Wedge::EMPTY), Polynomial::one());
        let out = hd.apply(&v, Part::Total);
        // uy|X + xu|Y − a'u|H at u = 1: y·1 = y (weight 1 at X), x (weight −1 at Y)
        assert_eq!(out.get((0, Wedge::X)), Polynomial::one());
        assert_eq!(out.get((0, Wedge::Y)), Polynomial::one());
        assert_eq!(out.get((0, Wedge::H)), -c.a().derivative());
        let v0 = ChainVector::basis(0, 0, (0, Wedge::EMPTY), Polynomial::one());
        assert!(hd.apply(&v0, Part::Total).is_zero());
    }

    #[test]
    fn cohomology_d_of_power() {
        let c = actx("h^2-1", "2");
        let hd = build_hochschild_complex(&c, 0, 3, Direction::Cohomology);
        for l in 0..5 {
            let v = ChainVector::basis(0, 0, (0, Wedge::EMPTY), Polynomial::h_pow(l));
            let out = hd.apply(&v, Part::Total);
            let ql1 = &c.q_pow(l as i64) - &FieldElement::one();
            assert_eq!(out.get((0, Wedge::Y)), Polynomial::h_pow(l).scale(&ql1));
            assert_eq!(out.get((0, Wedge::X)), Polynomial::h_pow(l).scale(&-&ql1));
            assert!(out.get((0, Wedge::H)).is_zero());
        }
    }

    #[test]
    fn identities_small() {
        for (a, q) in [("h^2-1", "2"), ("h^2+1", "-1")] {
            let c = actx(a, q);
            for dir in [Direction::Homology, Direction::Cohomology] {
                for r in -2..=2 {
                    let rep = validate_identities(&build_hochschild_complex(&c, r, 4, dir), 4);
                    assert!(rep.passed(), "{a} {q} {dir} {r}: {:?}", rep.failures);
                }
            }
        }
    }

    #[test]
    fn flipped_bracket_fails() {
        // With [u,v]_q read as q·uv − vu the horizontal differential no longer squares to zero.
        let c = actx("h^2-1", "2");
        let a = GwaAlgebra::new(c.clone());
        let u = GwaElement::y_h(1, 2);
        let flip = |s: &GwaElement, t: &GwaElement| a.commutator(s, t, CommutatorMode::QRight);
        let plain = |s: &GwaElement, t: &GwaElement| a.commutator(s, t, CommutatorMode::Plain);
        let (y, h) = (GwaElement::y(), GwaElement::h());
        // d(u|Y∧H) = [y,u]_q|H + [u,h]_q|Y, then d again
        let d2 = &plain(&h, &flip(&y, &u)) + &plain(&y, &flip(&u, &h));
        assert!(!d2.is_zero());
        let good = |s: &GwaElement, t: &GwaElement| a.commutator(s, t, CommutatorMode::QLeft);
        let d2 = &plain(&h, &good(&y, &u)) + &plain(&y, &good(&u, &h));
        assert!(d2.is_zero());
    }

    #[test]
    fn bimodule_identities() {
        let c = actx("h^2-1", "2");
        let tot = build_bimodule_total(&c);
        let rep = tot.validate(&a_monomials(2));
        assert!(rep.passed(), "{:?}", rep.failures);
        // δ(1|1) at a = h² − 1: y|X|1 + 1|Y|x − (1|H|h + h|H|1)
        let om = tot.omega_chain();
        let mut expected = BimoduleChain::new();
        let one = FieldElement::one();
        expected.add_mono(([1, 0, 0], Wedge::X, [0, 0, 0]), &one);
        expected.add_mono(([0, 0, 0], Wedge::Y, [0, 0, 1]), &one);
        expected.add_mono(([0, 0, 0], Wedge::H, [0, 1, 0]), &-&one);
        expected.add_mono(([0, 1, 0], Wedge::H, [0, 0, 0]), &-&one);
        assert_eq!(om, expected);
        assert!(tot.d(&om).is_zero());
    }

    #[test]
    fn contraction_small() {
        let g = build_smith_graded_complex(&actx("h^3+h+1", "2"));
        let rep = g.validate(3);
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn comparison_small() {
        let rep = validate_comparison_maps(&actx("h^2+h+3", "2"), 3);
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn representatives() {
        let c = actx("(h^2+1)^2", "-1");
        let reps = first_page_representatives(&c, Side::Hom, 2, 0).unwrap();
        assert_eq!(reps.len(), 2);
        let reps = first_page_representatives(&c, Side::Coh, 1, 0).unwrap();
        assert_eq!(reps.len(), 2);
        let c = actx("(h-1)^2*(h+2)", "2");
        assert_eq!(first_page_representatives(&c, Side::Hom, 2, 0).unwrap().len(), 1);
        assert_eq!(first_page_representatives(&c, Side::Hom, 3, 1), Err(RepresentativeError::Unsupported));
    }
}
