//! Exact sparse linear algebra over the coefficient field and Smith normal
//! form over a univariate polynomial ring.

use std::collections::BTreeMap;

use crate::polyring::{gcd, Polynomial};
use crate::scalars::FieldElement;

/// A sparse vector, entries sorted by index with no explicit zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, FieldElement)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted entries, summing duplicates.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, FieldElement)>) -> Self {
        let mut map: BTreeMap<usize, FieldElement> = BTreeMap::new();
        for (i, c) in entries {
            if c.is_zero() {
                continue;
            }
            let slot = map.entry(i).or_insert_with(FieldElement::zero);
            *slot = &*slot + &c;
        }
        SparseVec { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, FieldElement)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> FieldElement {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => FieldElement::zero(),
        }
    }

    pub fn first(&self) -> Option<&(usize, FieldElement)> {
        self.entries.first()
    }

    /// Keeps only the entries whose index satisfies `keep`.
    pub fn filtered(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        SparseVec { entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect() }
    }

    pub fn scale(&self, c: &FieldElement) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self − c·other`.
    pub fn sub_scaled(&self, c: &FieldElement, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, -(c * y)));
                }
                (Some((i, _)), Some((j, _))) => {
                    if i < j {
                        out.push(a.next().unwrap().clone());
                    } else if j < i {
                        let (j, y) = b.next().unwrap();
                        out.push((*j, -(c * y)));
                    } else {
                        let (i, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        let v = x - &(c * y);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                    }
                }
            }
        }
        SparseVec { entries: out }
    }
}

/// Incremental row echelon basis; each stored vector is normalized to have
/// leading coefficient 1 at its smallest index.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis until its leading index is not a pivot.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((i, c)) = v.first().cloned() {
            match self.pivots.get(&i) {
                Some(b) => v = v.sub_scaled(&c, b),
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        match v.first().cloned() {
            None => false,
            Some((i, c)) => {
                let v = if c.is_one() { v } else { v.scale(&c.inv()) };
                self.pivots.insert(i, v);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }
}

pub fn rank_of(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// A column-sparse matrix with exact entries.
#[derive(Debug, Clone)]
pub struct ExactMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn new(nrows: usize) -> Self {
        ExactMatrix { nrows, cols: Vec::new() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn push_column(&mut self, entries: Vec<(usize, FieldElement)>) {
        let v = SparseVec::from_entries(entries);
        debug_assert!(v.entries().iter().all(|(i, _)| *i < self.nrows));
        self.cols.push(v);
    }

    pub fn push_sparse(&mut self, v: SparseVec) {
        self.cols.push(v);
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn rank(&self) -> usize {
        rank_of(self.cols.iter().cloned())
    }

    pub fn kernel_dim(&self) -> usize {
        self.ncols() - self.rank()
    }

    pub fn from_dense(rows: &[Vec<FieldElement>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::new(nrows);
        for j in 0..ncols {
            m.push_column((0..nrows).map(|i| (i, rows[i][j].clone())).collect());
        }
        m
    }
}

/// Smith normal form data of a matrix over `k[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Monic invariant factors, each dividing the next; units included.
    pub invariant_factors: Vec<Polynomial>,
}

impl SmithForm {
    /// Nonunit invariant factors.
    pub fn torsion(&self) -> Vec<Polynomial> {
        self.invariant_factors.iter().filter(|d| d.degree_i64() > 0).cloned().collect()
    }

    /// `dim_k` of the torsion part of the cokernel.
    pub fn torsion_dim(&self) -> usize {
        self.invariant_factors.iter().map(|d| d.degree_i64().max(0) as usize).sum()
    }
}

/// Smith normal form of a dense matrix over `k[t]` (`rows × cols`).
pub fn smith_normal_form(matrix: &[Vec<Polynomial>]) -> SmithForm {
    let mut m: Vec<Vec<Polynomial>> = matrix.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut k = 0;
    while k < nrows.min(ncols) {
        // pivot of minimal degree in the remaining block
        let mut best: Option<(usize, usize, i64)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if !x.is_zero() && best.is_none_or(|(_, _, d)| x.degree_i64() < d) {
                    best = Some((i, j, x.degree_i64()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        let mut clean = true;
        let pivot = m[k][k].clone();
        for i in k + 1..nrows {
            if m[i][k].is_zero() {
                continue;
            }
            let (quo, rem) = m[i][k].divmod(&pivot).expect("nonzero pivot");
            for j in k..ncols {
                let t = &m[k][j] * &quo;
                m[i][j] = &m[i][j] - &t;
            }
            debug_assert_eq!(m[i][k], rem);
            if !rem.is_zero() {
                clean = false;
            }
        }
        for j in k + 1..ncols {
            if m[k][j].is_zero() {
                continue;
            }
            let (quo, rem) = m[k][j].divmod(&pivot).expect("nonzero pivot");
            for row in m.iter_mut().skip(k) {
                let t = &row[k] * &quo;
                row[j] = &row[j] - &t;
            }
            if !rem.is_zero() {
                clean = false;
            }
        }
        if clean {
            diag.push(m[k][k].monic());
            k += 1;
        }
    }
    let rank = diag.len();
    SmithForm { rank, invariant_factors: normalize_divisibility(diag) }
}

/// Rewrites a diagonal so each entry divides the next, using
/// `k[t]/(a) ⊕ k[t]/(b) ≅ k[t]/(gcd) ⊕ k[t]/(lcm)`.
fn normalize_divisibility(mut d: Vec<Polynomial>) -> Vec<Polynomial> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if d[i].divides(&d[j]) {
                continue;
            }
            let g = gcd(&d[i], &d[j]).expect("nonzero entries");
            let l = (&d[i] * &d[j]).exact_div(&g).expect("gcd divides product").monic();
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse_in(s, 't').unwrap()
    }

    #[test]
    fn rank_small() {
        let m = ExactMatrix::from_dense(&[
            vec![fe(1), fe(2), fe(3)],
            vec![fe(2), fe(4), fe(6)],
            vec![fe(0), fe(1), fe(1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_dim(), 1);
        let hilbert: Vec<Vec<FieldElement>> = (0..5)
            .map(|i| (0..5).map(|j| FieldElement::from_ratio(1, i + j + 1)).collect())
            .collect();
        assert_eq!(ExactMatrix::from_dense(&hilbert).rank(), 5);
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        let a = SparseVec::from_entries([(0, fe(1)), (3, fe(2))]);
        let b = SparseVec::from_entries([(0, fe(1)), (1, fe(1))]);
        assert!(e.insert(a.clone()));
        assert!(e.insert(b.clone()));
        assert!(e.contains(&a.sub_scaled(&fe(5), &b)));
        assert!(!e.contains(&SparseVec::from_entries([(3, fe(1))])));
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&[vec![p("t"), Polynomial::zero()], vec![Polynomial::zero(), p("t")]]);
        assert_eq!(s.invariant_factors, vec![p("t"), p("t")]);
        let s = smith_normal_form(&[vec![p("t-1"), Polynomial::zero()], vec![Polynomial::zero(), p("t+1")]]);
        assert_eq!(s.invariant_factors, vec![Polynomial::one(), p("t^2-1")]);
        assert_eq!(s.torsion_dim(), 2);
        let s = smith_normal_form(&[vec![p("t^2"), p("t")], vec![p("t^3"), p("t^2")]]);
        assert_eq!(s.rank, 1);
        assert_eq!(s.invariant_factors, vec![p("t")]);
        let s = smith_normal_form(&[vec![p("2"), p("t+1"), p("t^2")]]);
        assert_eq!(s.rank, 1);
        assert_eq!(s.torsion_dim(), 0);
    }

    #[test]
    fn smith_random_determinant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=3);
            let m: Vec<Vec<Polynomial>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let d = rng.gen_range(0..=2);
                            Polynomial::from_ints(&(0..=d).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>())
                        })
                        .collect()
                })
                .collect();
            let s = smith_normal_form(&m);
            let det = det(&m);
            if det.is_zero() {
                assert!(s.rank < n);
            } else {
                assert_eq!(s.rank, n);
                let prod = s.invariant_factors.iter().fold(Polynomial::one(), |a, b| &a * b);
                assert_eq!(prod, det.monic());
                for w in s.invariant_factors.windows(2) {
                    assert!(w[0].divides(&w[1]));
                }
            }
        }
    }

    fn det(m: &[Vec<Polynomial>]) -> Polynomial {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Polynomial::zero();
        for j in 0..n {
            let minor: Vec<Vec<Polynomial>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let t = &m[0][j] * &det(&minor);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
}
