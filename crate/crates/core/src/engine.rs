//! Exact homology of the weight-graded complexes.
//!
//! Coordinates are truncated by `h`-degree. The truncated dimension at
//! level `D` is the dimension of the image of degree-`≤ D` cycles in
//! homology, estimated as `dim Z(≤ D) − dim(B' ∩ C(≤ D))` where `B'` is
//! spanned by boundaries of chains of degree `≤ D + margin`. In the root of
//! unity case the complexes are complexes of free `S = k[h^e]`-modules and
//! their invariants are computed exactly by Smith normal form over `k[t]`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraContext;
use crate::complexes::{build_hochschild_complex, components, ChainVector, Component, ComplexHandle, Direction, Part};
use crate::linalg::{smith_normal_form, Echelon, ExactMatrix, SparseVec};
use crate::polyring::Polynomial;
use crate::scalars::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum EngineError {
    #[error("codomain bound {got} is below the required {needed}")]
    MarginViolated { needed: usize, got: usize },
    #[error("insufficient truncation: weight {r} exceeds level {d}")]
    InsufficientTruncation { r: i64, d: usize },
    #[error("truncation level {d} is below 2·deg a = {needed}")]
    TruncationTooSmall { d: usize, needed: usize },
    #[error("S-module invariants need q to be a root of unity")]
    NotRootCase,
    #[error("truncation levels must be nonempty and ascending")]
    BadLevels,
}

/// Extra `h`-degree of sources used to generate boundaries.
pub fn image_margin(actx: &AlgebraContext) -> usize {
    2 * actx.n() + 2 * (actx.e().max(1) as usize) + 2
}

/// Degree of the complex that maps into degree `n` (if any).
fn source_degree(handle: &ComplexHandle, n: usize) -> Option<usize> {
    match handle.direction {
        Direction::Homology => Some(n + 1),
        Direction::Cohomology => n.checked_sub(1),
    }
}

/// Images under `D` of the basis chains `h^j` at each component of degree
/// `n`, for `j ≤ max_deg`, in order of increasing `j`.
fn basis_images(handle: &ComplexHandle, n: usize, max_deg: usize) -> Vec<(usize, Component, ChainVector)> {
    let mut out = Vec::new();
    if handle.target_degree(n).is_none() {
        return out;
    }
    for j in 0..=max_deg {
        for comp in components(n) {
            let v = ChainVector::basis(handle.weight, n, comp, Polynomial::h_pow(j));
            out.push((j, comp, handle.apply(&v, Part::Total)));
        }
    }
    out
}

/// Row index `deg·#components + position`, independent of any truncation.
fn to_sparse(v: &ChainVector, index: &BTreeMap<Component, usize>) -> SparseVec {
    let k = index.len();
    let mut entries = Vec::new();
    for (comp, p) in v.coords() {
        let pos = index[comp];
        for (d, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                entries.push((d * k + pos, c.clone()));
            }
        }
    }
    SparseVec::from_entries(entries)
}

fn component_index(n: usize) -> BTreeMap<Component, usize> {
    components(n).into_iter().enumerate().map(|(i, c)| (c, i)).collect()
}

/// Matrix of the degree-`n` differential from chains with coordinates of
/// degree `≤ d_dom` into the `≤ d_cod` basis. Columns are ordered by
/// component then degree; rows likewise.
pub fn assemble(handle: &ComplexHandle, n: usize, d_dom: usize, d_cod: usize) -> Result<ExactMatrix, EngineError> {
    let needed = d_dom + handle.context().n();
    if d_cod < needed {
        return Err(EngineError::MarginViolated { needed, got: d_cod });
    }
    let target = match handle.target_degree(n) {
        Some(t) => components(t),
        None => Vec::new(),
    };
    let stride = d_cod + 1;
    let mut m = ExactMatrix::new(target.len() * stride);
    for comp in components(n) {
        for j in 0..=d_dom {
            let mut col = Vec::new();
            if !target.is_empty() {
                let v = ChainVector::basis(handle.weight, n, comp, Polynomial::h_pow(j));
                let img = handle.apply(&v, Part::Total);
                for (tc, p) in img.coords() {
                    let pos = target.iter().position(|c| c == tc).expect("valid component");
                    for (d, c) in p.coeffs().iter().enumerate() {
                        if d > d_cod {
                            return Err(EngineError::MarginViolated { needed: d, got: d_cod });
                        }
                        if !c.is_zero() {
                            col.push((pos * stride + d, c.clone()));
                        }
                    }
                }
            }
            m.push_column(col);
        }
    }
    Ok(m)
}

/// Truncated dimensions of `H_n` (or `H^n`) at every level in `levels`.
pub fn homology_dims(handle: &ComplexHandle, n: usize, levels: &[usize]) -> Result<Vec<usize>, EngineError> {
    homology_dims_with_margin(handle, n, levels, image_margin(handle.context()))
}

/// As [`homology_dims`], generating boundaries from chains of degree
/// `≤ D + margin`.
pub fn homology_dims_with_margin(
    handle: &ComplexHandle,
    n: usize,
    levels: &[usize],
    margin: usize,
) -> Result<Vec<usize>, EngineError> {
    if levels.is_empty() || levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EngineError::BadLevels);
    }
    let actx = handle.context();
    let needed = 2 * actx.n();
    for &d in levels {
        if d < needed {
            return Err(EngineError::TruncationTooSmall { d, needed });
        }
        if handle.weight.unsigned_abs() as usize > d {
            return Err(EngineError::InsufficientTruncation { r: handle.weight, d });
        }
    }
    let d_max = *levels.last().unwrap();
    let here = component_index(n);
    let k_here = here.len();

    // dim Z(≤ D)
    let out = basis_images(handle, n, d_max);
    let out_index = handle.target_degree(n).map(component_index).unwrap_or_default();
    let mut ker = Vec::with_capacity(levels.len());
    let mut ech = Echelon::new();
    let mut it = out.into_iter().peekable();
    for &d in levels {
        while let Some((j, _, _)) = it.peek() {
            if *j > d {
                break;
            }
            let (_, _, img) = it.next().unwrap();
            ech.insert(to_sparse(&img, &out_index));
        }
        ker.push(k_here * (d + 1) - ech.rank());
    }

    // dim(B' ∩ C(≤ D)) = rank(B') − rank(B' projected to degrees > D)
    let inc: Vec<(usize, SparseVec)> = match source_degree(handle, n) {
        Some(s) => basis_images(handle, s, d_max + margin)
            .into_iter()
            .map(|(j, _, img)| (j, to_sparse(&img, &here)))
            .collect(),
        None => Vec::new(),
    };
    let mut dims = Vec::with_capacity(levels.len());
    for (idx, &d) in levels.iter().enumerate() {
        let mut full = Echelon::new();
        let mut high = Echelon::new();
        for (j, v) in &inc {
            if *j > d + margin {
                break;
            }
            high.insert(v.filtered(|row| row / k_here > d));
            full.insert(v.clone());
        }
        let bound = full.rank() - high.rank();
        dims.push(ker[idx] - bound);
    }
    Ok(dims)
}

/// Truncated dimension at a single level `D`.
pub fn homology_dim(handle: &ComplexHandle, n: usize, d: usize) -> Result<usize, EngineError> {
    Ok(homology_dims(handle, n, &[d])?[0])
}

/// Sampled truncated dimensions with a fitted `dim ≈ slope·⌊D/e⌋ + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimProfile {
    pub samples: BTreeMap<usize, usize>,
    pub slope: Ratio<i64>,
    pub constant: Ratio<i64>,
    pub stabilized: bool,
}

impl DimProfile {
    /// Fits the profile of `samples` (ascending levels) for period `e`.
    pub fn fit(samples: BTreeMap<usize, usize>, e: u32) -> Self {
        let pts: Vec<(i64, i64)> = samples.iter().map(|(d, h)| (*d as i64, *h as i64)).collect();
        let zero = Ratio::from_integer(0);
        let Some(&(_, last)) = pts.last() else {
            return DimProfile { samples, slope: zero, constant: zero, stabilized: false };
        };
        if e == 0 {
            let stabilized = pts.len() >= 3 && pts[pts.len() - 3..].iter().all(|p| p.1 == last);
            return DimProfile { samples, slope: zero, constant: Ratio::from_integer(last), stabilized };
        }
        let e = e as i64;
        let windows: Vec<(Ratio<i64>, Ratio<i64>)> = pts
            .windows(2)
            .map(|w| {
                let slope = Ratio::new((w[1].1 - w[0].1) * e, w[1].0 - w[0].0);
                let constant = Ratio::from_integer(w[1].1) - slope * Ratio::from_integer(w[1].0.div_euclid(e));
                (slope, constant)
            })
            .collect();
        let stabilized = windows.len() >= 3 && windows[windows.len() - 3..].iter().all(|w| *w == windows[windows.len() - 1]);
        let (slope, constant) = windows.last().cloned().unwrap_or((zero, Ratio::from_integer(last)));
        DimProfile { samples, slope, constant, stabilized }
    }
}

pub fn dim_profile(handle: &ComplexHandle, n: usize, levels: &[usize]) -> Result<DimProfile, EngineError> {
    let dims = homology_dims(handle, n, levels)?;
    let samples = levels.iter().cloned().zip(dims).collect();
    Ok(DimProfile::fit(samples, handle.context().e()))
}

/// Structure of a finitely generated `S`-module: free rank and the
/// `k`-dimensions `deg_t d_i` of its cyclic torsion factors `S/(d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SModuleInvariants {
    pub free_rank: usize,
    pub torsion_dims: Vec<usize>,
}

impl SModuleInvariants {
    pub fn torsion_dim(&self) -> usize {
        self.torsion_dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion_dims.is_empty()
    }
}

/// Matrix over `k[t]`, `t = h^e`, of the degree-`n` differential in the
/// `S`-basis `h^ρ|(q, ω)`, `ρ < e`.
fn s_matrix(handle: &ComplexHandle, n: usize, e: usize) -> Option<Vec<Vec<Polynomial>>> {
    let t = handle.target_degree(n)?;
    let target = component_index(t);
    let source = components(n);
    let mut m = vec![vec![Polynomial::zero(); source.len() * e]; target.len() * e];
    for (si, comp) in source.iter().enumerate() {
        for rho in 0..e {
            let v = ChainVector::basis(handle.weight, n, *comp, Polynomial::h_pow(rho));
            let img = handle.apply(&v, Part::Total);
            for (tc, p) in img.coords() {
                let ti = target[tc];
                let mut split: Vec<Vec<FieldElement>> = vec![Vec::new(); e];
                for (d, c) in p.coeffs().iter().enumerate() {
                    let slot = &mut split[d % e];
                    let m_deg = d / e;
                    if slot.len() <= m_deg {
                        slot.resize(m_deg + 1, FieldElement::zero());
                    }
                    slot[m_deg] = c.clone();
                }
                for (r2, coeffs) in split.into_iter().enumerate() {
                    m[ti * e + r2][si * e + rho] = Polynomial::new(coeffs);
                }
            }
        }
    }
    Some(m)
}

/// `S`-module invariants of `H_n` (or `H^n`) by Smith normal form over `k[t]`.
pub fn smodule_invariants(handle: &ComplexHandle, n: usize) -> Result<SModuleInvariants, EngineError> {
    let e = handle.context().e() as usize;
    if e == 0 {
        return Err(EngineError::NotRootCase);
    }
    let rank_here = components(n).len() * e;
    let out_rank = s_matrix(handle, n, e).map_or(0, |m| smith_normal_form(&m).rank);
    let (in_rank, torsion_dims) = match source_degree(handle, n).and_then(|s| s_matrix(handle, s, e)) {
        Some(m) => {
            let snf = smith_normal_form(&m);
            let tors = snf
                .torsion()
                .iter()
                .map(|d| d.degree_i64() as usize)
                .filter(|d| *d > 0)
                .collect();
            (snf.rank, tors)
        }
        None => (0, Vec::new()),
    };
    Ok(SModuleInvariants { free_rank: rank_here - out_rank - in_rank, torsion_dims })
}

/// One `(r, p)` cell of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub r: i64,
    pub p: usize,
    pub direction: Direction,
    pub profile: Result<DimProfile, EngineError>,
}

/// Dimension profiles for all `r` in `r_range` and `p ≤ p_max`, computed in
/// parallel. Cells come back ordered by `(r, p)`.
pub fn hochschild_table(
    actx: &AlgebraContext,
    r_range: std::ops::RangeInclusive<i64>,
    p_max: usize,
    levels: &[usize],
    direction: Direction,
) -> Vec<TableCell> {
    let cells: Vec<(i64, usize)> = r_range.flat_map(|r| (0..=p_max).map(move |p| (r, p))).collect();
    cells
        .into_par_iter()
        .map(|(r, p)| {
            let handle = build_hochschild_complex(actx, r, p + 1, direction);
            TableCell { r, p, direction, profile: dim_profile(&handle, p, levels) }
        })
        .collect()
}
