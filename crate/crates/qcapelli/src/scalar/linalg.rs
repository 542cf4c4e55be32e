//! Exact linear algebra over ℚ(q).
//!
//! Everything runs through [`Echelon`], an incrementally maintained reduced
//! row echelon form on sparse rows with arbitrary ordered column keys. The
//! pivot of a row is its smallest key.

use std::collections::BTreeMap;

use super::RatFunc;

pub type SparseVec<K> = BTreeMap<K, RatFunc>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &RatFunc, x: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let t = a * v;
        match y.get_mut(k) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                y.insert(k.clone(), t);
            }
        }
    }
}

pub fn scale_vec<K: Ord + Clone>(x: &SparseVec<K>, a: &RatFunc) -> SparseVec<K> {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(k, v)| (k.clone(), v * a)).collect()
}

#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows keyed by pivot; every pivot entry is 1 and no other row has an
    /// entry in a pivot column.
    pub fn rows(&self) -> &BTreeMap<K, SparseVec<K>> {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Remainder of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut r = v.clone();
        // eliminating a pivot only introduces non-pivot columns, so one pass
        // over the pivots present in r suffices
        let hits: Vec<K> = r.keys().filter(|k| self.rows.contains_key(*k)).cloned().collect();
        for k in hits {
            if let Some(c) = r.get(&k).cloned() {
                axpy(&mut r, &(-c), &self.rows[&k]);
            }
        }
        r
    }

    /// Adds `v` to the row space; returns false if it was dependent.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, r: SparseVec<K>) -> bool {
        let Some((p, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let r = scale_vec(&r, &c.inv().expect("nonzero pivot"));
        for row in self.rows.values_mut() {
            if let Some(a) = row.get(&p).cloned() {
                axpy(row, &(-a), &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Column key for solving: original coordinates sort before tag coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Aug<K> {
    Main(K),
    Tag(usize),
}

/// Solves Σ c_m v_m = target for c. Returns None when target is outside the
/// span. When the v_m are dependent an arbitrary solution is returned.
pub fn solve_combination<K: Ord + Clone>(vs: &[SparseVec<K>], target: &SparseVec<K>) -> Option<Vec<RatFunc>> {
    let mut ech: Echelon<Aug<K>> = Echelon::new();
    for (m, v) in vs.iter().enumerate() {
        let mut row: SparseVec<Aug<K>> = v.iter().map(|(k, c)| (Aug::Main(k.clone()), c.clone())).collect();
        row.insert(Aug::Tag(m), RatFunc::one());
        ech.insert(&row);
    }
    let t: SparseVec<Aug<K>> = target.iter().map(|(k, c)| (Aug::Main(k.clone()), c.clone())).collect();
    let r = ech.reduce(&t);
    let mut out = vec![RatFunc::zero(); vs.len()];
    for (k, c) in r {
        match k {
            Aug::Main(_) => return None,
            Aug::Tag(m) => out[m] = -c,
        }
    }
    Some(out)
}

/// Dense matrix over ℚ(q), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<RatFunc>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![RatFunc::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = RatFunc::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<RatFunc>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Matrix { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i][j]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k][j];
                    if !b.is_zero() {
                        m.data[i][j] += &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i][j] -= &o.data[i][j];
            }
        }
        m
    }

    pub fn scale(&self, a: &RatFunc) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.iter().map(|x| x * a).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    fn row_sparse(&self, i: usize) -> SparseVec<usize> {
        self.data[i].iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect()
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for i in 0..self.rows {
            e.insert(&self.row_sparse(i));
        }
        e.rank()
    }

    /// Basis of {v : M v = 0}.
    pub fn nullspace(&self) -> Vec<Vec<RatFunc>> {
        let mut e = Echelon::new();
        for i in 0..self.rows {
            e.insert(&self.row_sparse(i));
        }
        let pivots: Vec<usize> = e.pivots().cloned().collect();
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![RatFunc::zero(); self.cols];
            v[f] = RatFunc::one();
            for (p, row) in e.rows() {
                if let Some(c) = row.get(&f) {
                    v[*p] = -c;
                }
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut e: Echelon<Aug<usize>> = Echelon::new();
        for i in 0..n {
            let mut row: SparseVec<Aug<usize>> = self.row_sparse(i).into_iter().map(|(j, x)| (Aug::Main(j), x)).collect();
            row.insert(Aug::Tag(i), RatFunc::one());
            e.insert(&row);
        }
        let mut inv = Matrix::zeros(n, n);
        for (p, row) in e.rows() {
            let Aug::Main(i) = p else { return None };
            for (k, c) in row {
                if let Aug::Tag(j) = k {
                    inv.data[*i][*j] = c.clone();
                }
            }
        }
        if e.rank() != n {
            return None;
        }
        Some(inv)
    }

    pub fn apply(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        (0..self.rows)
            .map(|i| {
                let mut acc = RatFunc::zero();
                for (a, b) in self.data[i].iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Rank over 𝔽_p after the specialization q ↦ x. Entries whose denominator
/// vanishes make the specialization invalid and yield None.
pub fn rank_mod_p(rows: &[Vec<RatFunc>], x: u64, p: u64) -> Option<usize> {
    use super::ratfunc::{inv_mod, mul_mod};
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
    for r in rows {
        let mut v = Vec::with_capacity(r.len());
        for c in r {
            v.push(c.eval_mod(x, p)?);
        }
        m.push(v);
    }
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, pr);
        let iv = inv_mod(m[rank][c], p)?;
        for j in c..cols {
            m[rank][j] = mul_mod(m[rank][j], iv, p);
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..cols {
                    let s = mul_mod(f, m[rank][j], p);
                    m[i][j] = (m[i][j] + p - s) % p;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}
