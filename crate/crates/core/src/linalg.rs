//! Linear algebra over F_q and F_{q^m}: elimination, the blow-up map
//! `F_{q^m}^k -> F_q^{km}`, F_q-subspaces and their intersections with
//! F_{q^m}-subspaces, and enumeration of hyperplanes and subspaces.

use crate::combinat::gaussian_binomial_u128;
use crate::error::{Error, Result};
use crate::fields::{BaseField, FieldElement, FieldTower, FiniteField};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> E {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_block(&self, start: usize, end: usize) -> Self {
        Matrix {
            rows: self.rows,
            cols: end - start,
            data: (0..self.rows)
                .flat_map(|r| self.row(r)[start..end].to_vec())
                .collect(),
        }
    }
}

/// Reduces `rows` to reduced row echelon form in place, moving the nonzero
/// rows to the front and truncating the rest. Returns the pivot columns.
pub fn rref<F: FiniteField>(f: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !f.is_zero(rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(row[c]) {
                let s = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(s, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: FiniteField>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : rows * x^T = 0}` for vectors of length `ncols`.
pub fn kernel<F: FiniteField>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// Solves `x * rows = target` for a row vector x, if possible.
pub fn solve_left<F: FiniteField>(
    f: &F,
    rows: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    // columns of the augmented transpose: rows^T x^T = target^T
    let n = rows.len();
    let len = target.len();
    let aug: Vec<Vec<F::Elem>> = (0..len)
        .map(|c| {
            let mut r: Vec<F::Elem> = rows.iter().map(|row| row[c]).collect();
            r.push(target[c]);
            r
        })
        .collect();
    let mut m = aug;
    let pivots = rref(f, &mut m);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for (row, &pc) in m.iter().zip(&pivots) {
        x[pc] = row[n];
    }
    Some(x)
}

/// An F_q-subspace of F_q^len kept in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqSpace {
    len: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl FqSpace {
    pub fn zero(len: usize) -> Self {
        FqSpace {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(f: &BaseField, len: usize, vectors: &[Vec<u64>]) -> Self {
        let mut rows = vectors.to_vec();
        let pivots = rref(f, &mut rows);
        FqSpace { len, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Length of the ambient vectors.
    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn reduce(&self, f: &BaseField, v: &mut [u64]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let s = v[pc];
            if s != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(s, y));
                }
            }
        }
    }

    pub fn contains(&self, f: &BaseField, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// `dim(self + other)` without materialising the sum.
    pub fn sum_dim(&self, f: &BaseField, other: &FqSpace) -> usize {
        let (small, big) = if self.dim() <= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = big.clone();
        for r in &small.rows {
            acc.insert(f, r);
        }
        acc.dim()
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, f: &BaseField, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let s = row[pc];
            if s != 0 {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(s, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    pub fn intersection(&self, f: &BaseField, other: &FqSpace) -> FqSpace {
        // coefficient vectors (a, b) with a*self + b*other = 0 give a*self
        let stacked: Vec<Vec<u64>> = self.rows.iter().chain(&other.rows).cloned().collect();
        let transposed: Vec<Vec<u64>> = (0..self.len)
            .map(|c| stacked.iter().map(|r| r[c]).collect())
            .collect();
        let ker = kernel(f, &transposed, stacked.len());
        let vecs: Vec<Vec<u64>> = ker
            .iter()
            .map(|coef| {
                let mut v = vec![0u64; self.len];
                for (i, row) in self.rows.iter().enumerate() {
                    let c = coef[i];
                    if c != 0 {
                        for (x, &y) in v.iter_mut().zip(row) {
                            *x = f.add(*x, f.mul(c, y));
                        }
                    }
                }
                v
            })
            .collect();
        FqSpace::span(f, self.len, &vecs)
    }
}

/// Blows `v ∈ F_{q^m}^k` up to `F_q^{km}`: coordinate i occupies positions
/// `i*m .. (i+1)*m`, expressed over the tower's F_q-basis.
pub fn blow_up(t: &FieldTower, v: &[FieldElement]) -> Vec<u64> {
    v.iter().flat_map(|&x| t.fq_coords(x)).collect()
}

/// Inverse of [`blow_up`].
pub fn unblow(t: &FieldTower, w: &[u64]) -> Vec<FieldElement> {
    w.chunks(t.m() as usize)
        .map(|c| t.from_fq_coords(c))
        .collect()
}

/// Rank over F_q of the entries of `x`, i.e. the dimension of their F_q-span.
pub fn fq_rank(t: &FieldTower, x: &[FieldElement]) -> usize {
    if t.p() == 2 && t.e() == 1 {
        // entries are bit vectors already
        let mut basis: Vec<u64> = Vec::new();
        for &e in x {
            let mut v = e.0;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        return basis.len();
    }
    let mut s = FqSpace::zero(t.m() as usize);
    for &e in x {
        s.insert(t.base(), &t.fq_coords(e));
    }
    s.dim()
}

/// An F_q-subspace of `F_{q^m}^k`. The basis is kept both as vectors of
/// `F_{q^m}^k` and in blown-up echelon form.
#[derive(Debug, Clone)]
pub struct FqSubspace {
    tower: Arc<FieldTower>,
    k: usize,
    basis: Vec<Vec<FieldElement>>,
    blown: FqSpace,
}

impl PartialEq for FqSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.blown == other.blown
    }
}

impl FqSubspace {
    /// The F_q-span of `vectors`; dependent vectors are dropped.
    pub fn span(tower: &Arc<FieldTower>, k: usize, vectors: &[Vec<FieldElement>]) -> Result<Self> {
        let mut blown = FqSpace::zero(k * tower.m() as usize);
        let mut basis = Vec::new();
        for v in vectors {
            if v.len() != k {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in F^{k}",
                    v.len()
                )));
            }
            if blown.insert(tower.base(), &blow_up(tower, v)) {
                basis.push(v.clone());
            }
        }
        Ok(FqSubspace {
            tower: tower.clone(),
            k,
            basis,
            blown,
        })
    }

    /// Like [`Self::span`] but fails unless the vectors are F_q-independent.
    pub fn from_basis(
        tower: &Arc<FieldTower>,
        k: usize,
        vectors: &[Vec<FieldElement>],
    ) -> Result<Self> {
        let s = Self::span(tower, k, vectors)?;
        if s.dim() != vectors.len() {
            return Err(Error::InvalidParameter(format!(
                "{} vectors span only an F_q-space of dimension {}",
                vectors.len(),
                s.dim()
            )));
        }
        Ok(s)
    }

    pub fn from_blown(tower: &Arc<FieldTower>, k: usize, space: &FqSpace) -> Self {
        let basis = space.rows().iter().map(|r| unblow(tower, r)).collect();
        FqSubspace {
            tower: tower.clone(),
            k,
            basis,
            blown: space.clone(),
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    /// Ambient dimension over F_{q^m}.
    pub fn ambient(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    pub fn blown(&self) -> &FqSpace {
        &self.blown
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.blown
            .contains(self.tower.base(), &blow_up(&self.tower, v))
    }

    pub fn scaled(&self, lambda: FieldElement) -> FqSubspace {
        let t = &self.tower;
        let vecs: Vec<Vec<FieldElement>> = self
            .basis
            .iter()
            .map(|v| v.iter().map(|&x| t.mul(lambda, x)).collect())
            .collect();
        FqSubspace::span(t, self.k, &vecs).expect("same ambient")
    }

    pub fn intersection(&self, other: &FqSubspace) -> FqSubspace {
        let s = self.blown.intersection(self.tower.base(), &other.blown);
        FqSubspace::from_blown(&self.tower, self.k, &s)
    }

    /// Calls `f` once for each nonzero vector whose first nonzero F_q
    /// coordinate (w.r.t. the stored basis) is 1.
    pub fn for_each_projective_vector(&self, mut f: impl FnMut(&[FieldElement])) {
        let t = &*self.tower;
        let n = self.dim();
        let q = t.q();
        let scaled: Vec<Vec<Vec<FieldElement>>> = self
            .basis
            .iter()
            .map(|b| {
                (0..q)
                    .map(|c| b.iter().map(|&x| t.scale_base(c, x)).collect())
                    .collect()
            })
            .collect();
        for lead in 0..n {
            let start = scaled[lead][1].clone();
            rec(t, &scaled, lead + 1, start, &mut f);
        }
        fn rec(
            t: &FieldTower,
            scaled: &[Vec<Vec<FieldElement>>],
            j: usize,
            cur: Vec<FieldElement>,
            f: &mut impl FnMut(&[FieldElement]),
        ) {
            if j == scaled.len() {
                f(&cur);
                return;
            }
            for mult in &scaled[j] {
                let next: Vec<FieldElement> =
                    cur.iter().zip(mult).map(|(&a, &b)| t.add(a, b)).collect();
                rec(t, scaled, j + 1, next, f);
            }
        }
    }
}

/// The F_q-blow-up of an F_{q^m}-subspace given by any spanning set.
pub fn blow_up_fqm_span(t: &FieldTower, k: usize, vectors: &[Vec<FieldElement>]) -> FqSpace {
    let mut s = FqSpace::zero(k * t.m() as usize);
    for v in vectors {
        for &b in t.fq_basis() {
            let w: Vec<FieldElement> = v.iter().map(|&x| t.mul(b, x)).collect();
            s.insert(t.base(), &blow_up(t, &w));
        }
    }
    s
}

/// `dim_{F_q}(U ∩ W)` for an F_q-subspace U and an F_{q^m}-subspace W,
/// computed in F_q^{km} as `dim U + dim W - dim(U + W)`.
pub fn intersect_dim(u: &FqSubspace, w_blown: &FqSpace) -> usize {
    u.dim() + w_blown.dim() - u.blown.sum_dim(u.tower.base(), w_blown)
}

/// Scales `v` so that its first nonzero entry is 1; None for the zero vector.
pub fn normalize_projective(t: &FieldTower, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = t.inv(*lead);
    Some(v.iter().map(|&x| t.mul(inv, x)).collect())
}

/// Number of points (equivalently hyperplanes) of PG(k-1, Q).
pub fn projective_count(qm: u64, k: usize) -> u128 {
    gaussian_binomial_u128(k as u64, 1, qm)
}

/// The `index`-th leading-one vector of F_{q^m}^k: vectors are grouped by the
/// position of their leading 1, earliest position first, and within a group
/// the trailing coordinates run through canonical integers in little-endian
/// order.
pub fn leading_one_vector(t: &FieldTower, k: usize, mut index: u128) -> Vec<FieldElement> {
    let qm = t.order() as u128;
    for lead in 0..k {
        let block = qm.pow((k - 1 - lead) as u32);
        if index < block {
            let mut v = vec![FieldElement::ZERO; k];
            v[lead] = FieldElement::ONE;
            for x in v.iter_mut().skip(lead + 1) {
                *x = FieldElement((index % qm) as u64);
                index /= qm;
            }
            return v;
        }
        index -= block;
    }
    panic!("index out of range");
}

/// A basis of the hyperplane `{x : sum v_i x_i = 0}` for a nonzero normal v.
pub fn hyperplane_basis(t: &FieldTower, v: &[FieldElement]) -> Vec<Vec<FieldElement>> {
    let k = v.len();
    let lead = v.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    let inv = t.inv(v[lead]);
    (0..k)
        .filter(|&j| j != lead)
        .map(|j| {
            let mut b = vec![FieldElement::ZERO; k];
            b[j] = FieldElement::ONE;
            b[lead] = t.neg(t.mul(v[j], inv));
            b
        })
        .collect()
}

pub fn dot(t: &FieldTower, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| t.add(acc, t.mul(x, y)))
}

/// Enumerates h-dimensional F_{q^m}-subspaces of F_{q^m}^k through their
/// reduced row echelon bases, with random access by index.
#[derive(Debug, Clone)]
pub struct SubspaceEnumerator {
    k: usize,
    h: usize,
    qm: u128,
    /// (pivot columns, free positions, number of subspaces with these pivots)
    classes: Vec<(Vec<usize>, Vec<(usize, usize)>, u128)>,
    total: u128,
}

impl SubspaceEnumerator {
    pub fn new(t: &FieldTower, k: usize, h: usize) -> Self {
        Self::with_size(t.order(), k, h)
    }

    /// Enumerator over a field of `size` elements indexed `0..size`; used
    /// with base field indices for F_q-subspaces of F_q^k.
    pub fn with_size(size: u64, k: usize, h: usize) -> Self {
        let qm = size as u128;
        let mut classes = Vec::new();
        let mut total: u128 = 0;
        for piv in combinations(k, h) {
            let mut free = Vec::new();
            for (r, &pc) in piv.iter().enumerate() {
                for c in pc + 1..k {
                    if !piv.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let count = qm.checked_pow(free.len() as u32).unwrap_or(u128::MAX);
            total = total.saturating_add(count);
            classes.push((piv, free, count));
        }
        SubspaceEnumerator {
            k,
            h,
            qm,
            classes,
            total,
        }
    }

    pub fn count(&self) -> u128 {
        self.total
    }

    pub fn dim(&self) -> usize {
        self.h
    }

    pub fn basis(&self, index: u128) -> Vec<Vec<FieldElement>> {
        self.basis_indices(index)
            .into_iter()
            .map(|r| r.into_iter().map(FieldElement).collect())
            .collect()
    }

    /// The reduced basis of the `index`-th subspace as raw element indices.
    pub fn basis_indices(&self, mut index: u128) -> Vec<Vec<u64>> {
        for (piv, free, count) in &self.classes {
            if index < *count {
                let mut rows = vec![vec![0u64; self.k]; self.h];
                for (r, &pc) in piv.iter().enumerate() {
                    rows[r][pc] = 1;
                }
                for &(r, c) in free {
                    rows[r][c] = (index % self.qm) as u64;
                    index /= self.qm;
                }
                return rows;
            }
            index -= count;
        }
        panic!("subspace index out of range");
    }
}

/// All h-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, h: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(h);
    fn rec(start: usize, n: usize, h: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < h - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, h, cur, out);
            cur.pop();
        }
    }
    rec(0, n, h, &mut cur, &mut out);
    out
}
