//! Closed-form predictions for `HH_•(A)^{(r)}` and `HH^•(A)^{(r)}`, the
//! global dimension criterion, and comparison with truncated computations.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraContext;
use crate::complexes::Direction;
use crate::engine::DimProfile;
use crate::polyring::{eta, gcd, n_operator, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum ClosedFormError {
    #[error("closed forms unavailable: a(0) = 0")]
    VanishesAtZero,
    #[error("deg a must be at least 2")]
    DegreeTooSmall,
    #[error("polynomial arithmetic failed: {0}")]
    Poly(String),
}

impl From<PolyError> for ClosedFormError {
    fn from(e: PolyError) -> Self {
        ClosedFormError::Poly(e.to_string())
    }
}

/// Numerical data of `a` entering the closed forms. The `η` and `N(·)`
/// fields are present only when `q` is a root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub n: usize,
    pub c: String,
    pub m: usize,
    pub e: u32,
    pub eta_a: Option<u32>,
    pub eta_c: Option<u32>,
    pub eta_a_over_c: Option<u32>,
    pub norm_a: Option<String>,
    pub norm_c: Option<String>,
    pub norm_a_over_c: Option<String>,
}

/// `c = (a : a')`, monic.
pub fn c_of(actx: &AlgebraContext) -> Polynomial {
    gcd(actx.a(), &actx.a().derivative()).expect("a is nonzero")
}

pub fn compute_invariants(actx: &AlgebraContext) -> Result<Invariants, ClosedFormError> {
    let a = actx.a();
    let n = a.degree_i64();
    if n < 2 {
        return Err(ClosedFormError::DegreeTooSmall);
    }
    let c = c_of(actx);
    let a_c = a.exact_div(&c)?;
    let e = actx.e();
    let mut inv = Invariants {
        n: n as usize,
        c: c.to_string(),
        m: c.degree_i64() as usize,
        e,
        eta_a: None,
        eta_c: None,
        eta_a_over_c: None,
        norm_a: None,
        norm_c: None,
        norm_a_over_c: None,
    };
    if e > 0 {
        if a.coeff(0).is_zero() {
            return Err(ClosedFormError::VanishesAtZero);
        }
        let ring = actx.ring();
        inv.eta_a = Some(eta(a, ring)?);
        inv.eta_c = Some(eta(&c, ring)?);
        inv.eta_a_over_c = Some(eta(&a_c, ring)?);
        inv.norm_a = Some(n_operator(a, ring)?.to_string());
        inv.norm_c = Some(n_operator(&c, ring)?.to_string());
        inv.norm_a_over_c = Some(n_operator(&a_c, ring)?.to_string());
    }
    Ok(inv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightClass {
    Regular,
    Singular,
}

/// Singular iff `e | r` (with `e > 0`), or `r = 0` when `e = 0`.
pub fn classify_weight(r: i64, e: u32) -> WeightClass {
    let singular = if e == 0 { r == 0 } else { r.rem_euclid(e as i64) == 0 };
    if singular {
        WeightClass::Singular
    } else {
        WeightClass::Regular
    }
}

/// `k^finite ⊕ S^{#summands} ⊕ (torsion of the listed k-dimensions)`.
/// A summand's shift is the `h`-degree of its generator when known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionSpec {
    pub e: u32,
    pub finite_dim: usize,
    pub s_summands: Vec<Option<u32>>,
    pub torsion: Vec<usize>,
}

impl DimensionSpec {
    fn new(e: u32) -> Self {
        DimensionSpec { e, finite_dim: 0, s_summands: Vec::new(), torsion: Vec::new() }
    }

    fn k(mut self, d: usize) -> Self {
        self.finite_dim += d;
        self
    }

    fn s(mut self, count: usize) -> Self {
        self.s_summands.extend(std::iter::repeat(None).take(count));
        self
    }

    fn tors(mut self, d: usize) -> Self {
        if d > 0 {
            self.torsion.push(d);
        }
        self
    }

    pub fn free_rank(&self) -> usize {
        self.s_summands.len()
    }

    /// `k`-dimension of the finite part (plain and torsion together).
    pub fn finite_total(&self) -> usize {
        self.finite_dim + self.torsion.iter().sum::<usize>()
    }

    pub fn is_zero(&self) -> bool {
        self.finite_total() == 0 && self.s_summands.is_empty()
    }
}

impl fmt::Display for DimensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.finite_dim > 0 {
            parts.push(self.finite_dim.to_string());
        }
        if !self.s_summands.is_empty() {
            parts.push(format!("{}·S", self.s_summands.len()));
        }
        for t in &self.torsion {
            parts.push(format!("T{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

pub fn predict_homology(actx: &AlgebraContext, p: usize, r: i64) -> Result<DimensionSpec, ClosedFormError> {
    let inv = compute_invariants(actx)?;
    let e = inv.e;
    let spec = DimensionSpec::new(e);
    if e == 0 {
        return Ok(match (p, r == 0) {
            (0, true) => spec.k(inv.n),
            (0, false) | (1, false) => spec.k(1),
            (_, true) => spec.k(inv.m),
            (_, false) => spec,
        });
    }
    let eta_a = inv.eta_a.unwrap() as usize;
    let eta_c = inv.eta_c.unwrap() as usize;
    let class = classify_weight(r, e);
    Ok(match (p, r == 0, class) {
        (0, true, _) => spec.k(eta_a),
        (0, false, _) => spec.s(1),
        (1, true, _) => spec.s(2).k(eta_c),
        (1, false, WeightClass::Singular) => spec.s(2),
        (1, false, WeightClass::Regular) => spec.k(1),
        (2, true, _) => spec.s(1).tors(inv.m),
        (2, false, WeightClass::Singular) => spec.s(1),
        (2, false, WeightClass::Regular) => spec,
        (_, true, _) => spec.tors(inv.m),
        (_, false, _) => spec,
    })
}

pub fn predict_cohomology(actx: &AlgebraContext, p: usize, r: i64) -> Result<DimensionSpec, ClosedFormError> {
    let inv = compute_invariants(actx)?;
    let e = inv.e;
    let spec = DimensionSpec::new(e);
    if e == 0 {
        if r != 0 {
            return Ok(spec);
        }
        return Ok(match p {
            0 | 1 => spec.k(1),
            2 => {
                if actx.a().coeff(0).is_zero() {
                    return Err(ClosedFormError::VanishesAtZero);
                }
                spec.k(inv.n)
            }
            _ => spec.k(inv.m),
        });
    }
    let eta_ac = inv.eta_a_over_c.unwrap() as usize;
    Ok(match (classify_weight(r, e), r == 0, p) {
        (WeightClass::Regular, _, _) => spec,
        (_, _, 0) => spec.s(1),
        (_, _, 1) => spec.s(2),
        (_, true, 2) => spec.s(1).k(eta_ac).tors(inv.m),
        (_, false, 2) => spec.s(1),
        (_, true, _) => spec.tors(inv.m),
        (_, false, _) => spec,
    })
}

pub fn predict(actx: &AlgebraContext, direction: Direction, p: usize, r: i64) -> Result<DimensionSpec, ClosedFormError> {
    match direction {
        Direction::Homology => predict_homology(actx, p, r),
        Direction::Cohomology => predict_cohomology(actx, p, r),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlDim {
    Finite2,
    Infinite,
}

impl fmt::Display for GlDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlDim::Finite2 => write!(f, "finite_2"),
            GlDim::Infinite => write!(f, "infinite"),
        }
    }
}

/// Global dimension is finite (and then equal to 2) iff `(a : a') = 1`.
pub fn gldim(actx: &AlgebraContext) -> GlDim {
    if c_of(actx).is_one() {
        GlDim::Finite2
    } else {
        GlDim::Infinite
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruncatedDim {
    Exact(usize),
    Interval(usize, usize),
}

impl TruncatedDim {
    pub fn contains(&self, v: usize) -> bool {
        match *self {
            TruncatedDim::Exact(x) => v == x,
            TruncatedDim::Interval(lo, hi) => lo <= v && v <= hi,
        }
    }
}

impl fmt::Display for TruncatedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncatedDim::Exact(x) => write!(f, "{x}"),
            TruncatedDim::Interval(lo, hi) => write!(f, "[{lo},{hi}]"),
        }
    }
}

fn summand_dim(d: i64, shift: i64, e: i64) -> usize {
    if d < shift {
        0
    } else {
        ((d - shift).div_euclid(e) + 1) as usize
    }
}

/// Predicted dimension of the degree-`≤ D` part. Each `S`-summand with an
/// unknown shift contributes anything between shift `e − 1` and shift 0.
pub fn truncated_dim(spec: &DimensionSpec, d: usize) -> TruncatedDim {
    let base = spec.finite_total();
    if spec.e == 0 || spec.s_summands.is_empty() {
        return TruncatedDim::Exact(base);
    }
    let (e, d) = (spec.e as i64, d as i64);
    let (mut lo, mut hi) = (base, base);
    for s in &spec.s_summands {
        match s {
            Some(s) => {
                let v = summand_dim(d, *s as i64, e);
                lo += v;
                hi += v;
            }
            None => {
                lo += summand_dim(d, e - 1, e);
                hi += summand_dim(d, 0, e);
            }
        }
    }
    if lo == hi {
        TruncatedDim::Exact(lo)
    } else {
        TruncatedDim::Interval(lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match => write!(f, "match"),
            Verdict::Mismatch => write!(f, "mismatch"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// `match` needs stabilization, the predicted slope, and agreement with
/// [`truncated_dim`] at every sample.
pub fn verdict(spec: &DimensionSpec, profile: &DimProfile) -> Verdict {
    if !profile.stabilized {
        return Verdict::Inconclusive;
    }
    let slope_ok = spec.e == 0 || profile.slope == Ratio::from_integer(spec.free_rank() as i64);
    let samples_ok = profile.samples.iter().all(|(d, v)| truncated_dim(spec, *d).contains(*v));
    if slope_ok && samples_ok {
        Verdict::Match
    } else {
        Verdict::Mismatch
    }
}
