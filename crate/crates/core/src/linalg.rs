//! Exact linear algebra over [`Scalar`]: sparse vectors, dense elimination,
//! rank, determinants, solving and LU factorization.

use std::collections::BTreeMap;

use crate::field::Scalar;

/// Sparse vector: `(index, coefficient)` pairs sorted by index, no zeros.
pub type SVec = Vec<(u32, Scalar)>;

/// Accumulator for sparse linear combinations.
#[derive(Default)]
pub struct Accum {
    map: BTreeMap<u32, Scalar>,
}

impl Accum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => *x += c,
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, v: &[(u32, Scalar)], c: &Scalar) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            for (i, x) in v {
                self.add(*i, x);
            }
        } else {
            for (i, x) in v {
                self.add(*i, &(x * c));
            }
        }
    }

    pub fn finish(self) -> SVec {
        self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

pub fn sv_scale(v: &[(u32, Scalar)], c: &Scalar) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// `a + c*b`.
pub fn sv_axpy(a: &[(u32, Scalar)], c: &Scalar, b: &[(u32, Scalar)]) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let x = &b[j].1 * c;
            if !x.is_zero() {
                out.push((b[j].0, x));
            }
            j += 1;
        } else {
            let x = &a[i].1 + &(&b[j].1 * c);
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sv_get(v: &[(u32, Scalar)], i: u32) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |(k, _)| *k)
        .ok()
        .map(|p| &v[p].1)
}

pub fn to_dense(v: &[(u32, Scalar)], n: usize, zero: &Scalar) -> Vec<Scalar> {
    let mut out = vec![zero.clone(); n];
    for (i, x) in v {
        out[*i as usize] = x.clone();
    }
    out
}

pub fn to_sparse(v: &[Scalar]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, zero: &Scalar) -> Self {
        Self {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
        }
    }

    pub fn identity(n: usize, zero: &Scalar) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m.data[i * n + i] = zero.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, zero: &Scalar) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c, zero);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.into_iter().enumerate() {
                m.data[i * c + j] = x;
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let zero = self.data.first().or(o.data.first()).map(|x| x.zero_like());
        let Some(zero) = zero else {
            return Matrix {
                rows: self.rows,
                cols: o.cols,
                data: Vec::new(),
            };
        };
        let mut out = Matrix::zeros(self.rows, o.cols, &zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Determinant; `one` fixes the field for the empty matrix.
    pub fn det(&self, one: &Scalar) -> Scalar {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = one.clone();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return one.zero_like();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                let f = f * &inv;
                for j in c..n {
                    let t = m.get(c, j);
                    if !t.is_zero() {
                        let v = m.get(i, j) - &(&f * t);
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    /// Reduces to reduced row echelon form in place; returns pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let t = self.get(r, j);
                    if !t.is_zero() {
                        let v = self.get(i, j) - &(&f * t);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let Some(zero) = self.data.first().map(|x| x.zero_like()) else {
            return Vec::new();
        };
        let one = zero.one_like();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(k, free);
            }
            out.push(v);
        }
        out
    }
}

/// Incremental row-echelon basis of sparse vectors; used for span and
/// independence tests.
#[derive(Clone)]
pub struct Echelon {
    /// Rows keyed by pivot index; each row has leading coefficient 1 at the pivot.
    rows: BTreeMap<u32, SVec>,
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

impl Echelon {
    pub fn new() -> Self {
        Self {
            rows: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &[(u32, Scalar)]) -> SVec {
        let mut v: SVec = v.to_vec();
        let mut from = 0u32;
        loop {
            let Some(pos) = v
                .iter()
                .position(|(i, _)| *i >= from && self.rows.contains_key(i))
            else {
                return v;
            };
            let (i, c) = v[pos].clone();
            v = sv_axpy(&v, &-c, &self.rows[&i]);
            from = i + 1;
        }
    }

    /// Inserts `v` if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &[(u32, Scalar)]) -> bool {
        let r = self.reduce(v);
        let Some((p, c)) = r.first().cloned() else {
            return false;
        };
        let r = sv_scale(&r, &c.inv().expect("nonzero"));
        self.rows.insert(p, r);
        true
    }
}

/// LU factorization with row pivoting of a square matrix, for repeated
/// solves.
pub struct Lu {
    n: usize,
    lu: Matrix,
    perm: Vec<usize>,
}

impl Lu {
    /// Factors `m`; `None` if singular.
    pub fn new(m: &Matrix) -> Option<Lu> {
        assert_eq!(m.rows, m.cols);
        let n = m.rows;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !lu.get(i, c).is_zero())?;
            if p != c {
                for j in 0..n {
                    lu.data.swap(p * n + j, c * n + j);
                }
                perm.swap(p, c);
            }
            let inv = lu.get(c, c).inv().expect("nonzero pivot");
            for i in c + 1..n {
                if lu.get(i, c).is_zero() {
                    continue;
                }
                let f = lu.get(i, c) * &inv;
                for j in c + 1..n {
                    let t = lu.get(c, j);
                    if !t.is_zero() {
                        let v = lu.get(i, j) - &(&f * t);
                        lu.set(i, j, v);
                    }
                }
                lu.set(i, c, f);
            }
        }
        Some(Lu { n, lu, perm })
    }

    /// Determinant of the factored matrix.
    pub fn det(&self) -> Scalar {
        let mut d = self.lu.get(0, 0).one_like();
        for i in 0..self.n {
            d = &d * self.lu.get(i, i);
        }
        // sign of the row permutation
        let mut seen = vec![false; self.n];
        let mut odd = false;
        for i in 0..self.n {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            odd ^= len % 2 == 0;
        }
        if odd {
            -d
        } else {
            d
        }
    }

    /// Solves `M x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Vec<Scalar> {
        let n = self.n;
        let mut y: Vec<Scalar> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu.get(i, j);
                if !l.is_zero() && !y[j].is_zero() {
                    y[i] = &y[i] - &(l * &y[j]);
                }
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu.get(i, j);
                if !u.is_zero() && !y[j].is_zero() {
                    y[i] = &y[i] - &(u * &y[j]);
                }
            }
            y[i] = &y[i] / self.lu.get(i, i);
        }
        y
    }
}
