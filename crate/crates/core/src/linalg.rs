//! Exact integer matrices: Smith and Hermite normal forms, kernels, solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(), cols)
    }

    pub fn from_rows(data: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Mat { rows: data.len(), cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += a * &other.data[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.data.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "dimension mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        Mat { rows: self.rows, cols: self.cols + other.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[a] -= q · row[b]
    fn sub_row(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let src = self.data[b].clone();
        for (x, y) in self.data[a].iter_mut().zip(&src) {
            *x -= q * y;
        }
    }

    /// col[a] -= q · col[b]
    fn sub_col(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in &mut self.data {
            let y = r[b].clone();
            r[a] -= q * y;
        }
    }

    fn neg_row(&mut self, a: usize) {
        for x in &mut self.data[a] {
            *x = -x.clone();
        }
    }
}

/// Smith normal form `u · a · v = d` with `u`, `v` unimodular and the
/// nonnegative diagonal of `d` ordered by divisibility.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Mat,
    pub d: Mat,
    pub v: Mat,
    pub rank: usize,
}

impl Smith {
    /// The nonzero diagonal entries.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.data[i][i].clone()).collect()
    }
}

fn min_nonzero(d: &Mat, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, j) in cells {
        let x = &d.data[i][j];
        if x.is_zero() {
            continue;
        }
        if best.is_none_or(|(bi, bj)| x.abs() < d.data[bi][bj].abs()) {
            best = Some((i, j));
        }
    }
    best
}

pub fn smith(a: &Mat) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Mat::identity(m);
    let mut v = Mat::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_nonzero(&d, (t..m).flat_map(|i| (t..n).map(move |j| (i, j)))) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !d.data[i][t].is_zero() {
                    let q = d.data[i][t].div_floor(&d.data[t][t]);
                    d.sub_row(i, t, &q);
                    u.sub_row(i, t, &q);
                    clean &= d.data[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !d.data[t][j].is_zero() {
                    let q = d.data[t][j].div_floor(&d.data[t][t]);
                    d.sub_col(j, t, &q);
                    v.sub_col(j, t, &q);
                    clean &= d.data[t][j].is_zero();
                }
            }
            if !clean {
                let cells = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                let (pi, pj) = min_nonzero(&d, cells).expect("pivot is nonzero");
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let p = d.data[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.data[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.neg_row(t);
            u.neg_row(t);
        }
        t += 1;
    }
    Smith { u, d, v, rank: t }
}

/// Row Hermite normal form `u · a = h`: echelon form with positive pivots,
/// entries above each pivot reduced into `[0, pivot)`, zero rows last.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: Mat,
    pub u: Mat,
    pub pivots: Vec<usize>,
}

pub fn hermite(a: &Mat) -> Hermite {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = Mat::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let Some((pi, _)) = min_nonzero(&h, (r..m).map(|i| (i, col))) else {
                break;
            };
            h.swap_rows(r, pi);
            u.swap_rows(r, pi);
            let mut clean = true;
            for i in r + 1..m {
                if !h.data[i][col].is_zero() {
                    let q = h.data[i][col].div_floor(&h.data[r][col]);
                    h.sub_row(i, r, &q);
                    u.sub_row(i, r, &q);
                    clean &= h.data[i][col].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if h.data[r][col].is_zero() {
            continue;
        }
        if h.data[r][col].is_negative() {
            h.neg_row(r);
            u.neg_row(r);
        }
        for i in 0..r {
            let q = h.data[i][col].div_floor(&h.data[r][col]);
            h.sub_row(i, r, &q);
            u.sub_row(i, r, &q);
        }
        pivots.push(col);
        r += 1;
    }
    Hermite { h, u, pivots }
}

pub fn rank(a: &Mat) -> usize {
    hermite(a).pivots.len()
}

/// A basis of `{x : a·x = 0}` as the rows of the returned matrix, in
/// Hermite normal form.
pub fn kernel(a: &Mat) -> Mat {
    let n = a.cols;
    let aug = a.transpose().hcat(&Mat::identity(n));
    let hf = hermite(&aug);
    let r = hf.pivots.iter().filter(|&&p| p < a.rows).count();
    let data: Vec<Vec<BigInt>> = hf.h.data[r..].iter().map(|row| row[a.rows..].to_vec()).collect();
    let k = Mat::from_rows(data, n);
    lattice_basis(&k)
}

/// Canonical basis (nonzero Hermite rows) of the lattice spanned by the rows.
pub fn lattice_basis(rows: &Mat) -> Mat {
    let hf = hermite(rows);
    let k = hf.pivots.len();
    Mat::from_rows(hf.h.data[..k].to_vec(), rows.cols)
}

/// The lattice spanned by the columns of `a`, canonically.
pub fn image_lattice(a: &Mat) -> Mat {
    lattice_basis(&a.transpose())
}

/// Solves `a · x = b` over the integers.
pub fn solve(a: &Mat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, val) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = val.div_rem(&s.d.data[i][i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Determinant by fraction-free elimination.
pub fn det(a: &Mat) -> BigInt {
    assert_eq!(a.rows, a.cols, "square matrix required");
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.data.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn is_unimodular(a: &Mat) -> bool {
    a.rows == a.cols && det(a).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn smith_of_a_small_matrix() {
        let a = Mat::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.invariants(), vec![b(2), b(6), b(12)]);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
    }

    #[test]
    fn hermite_and_kernel() {
        let a = Mat::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let hf = hermite(&a);
        assert_eq!(hf.u.mul(&a), hf.h);
        assert_eq!(hf.pivots, vec![0]);
        let k = kernel(&a);
        assert_eq!(k.rows, 2);
        for r in &k.data {
            assert!(a.mul_vec(r).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solving() {
        let a = Mat::from_i64(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve(&a, &[b(4), b(9)]), Some(vec![b(2), b(3)]));
        assert_eq!(solve(&a, &[b(1), b(0)]), None);
        assert_eq!(det(&a), b(6));
    }

    #[test]
    fn empty_shapes() {
        let a = Mat::zeros(0, 3);
        assert_eq!(kernel(&a).rows, 3);
        let a = Mat::zeros(2, 0);
        assert_eq!(smith(&a).rank, 0);
        assert_eq!(kernel(&a).rows, 0);
    }
}
