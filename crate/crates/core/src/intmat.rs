//! Exact integer linear algebra: fraction-free determinants, Smith normal
//! form with column bookkeeping, inertia of symmetric forms and ranks over
//! GF(2). Everything is checked `i128` arithmetic; overflow is an error,
//! never a silent wrap.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows<R: AsRef<[i128]>>(rows: &[R]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(n_rows, n_cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), n_cols, "ragged rows");
            m.data[i * n_cols..(i + 1) * n_cols].copy_from_slice(r);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Drops row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut out = Self::zeros(self.rows - 1, self.cols - 1);
        let mut k = 0;
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                out.data[k] = self[(i, j)];
                k += 1;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).try_fold(0i128, |acc, j| {
                    self[(i, j)]
                        .checked_mul(v[j])
                        .and_then(|x| acc.checked_add(x))
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for j in 0..self.cols {
            let v = checked_axpy(self[(dst, j)], k, self[(src, j)])?;
            self[(dst, j)] = v;
        }
        Ok(())
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for i in 0..self.rows {
            let v = checked_axpy(self[(i, dst)], k, self[(i, src)])?;
            self[(i, dst)] = v;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }

    /// Determinant by Bareiss fraction-free elimination. The empty matrix has
    /// determinant 1.
    pub fn determinant(&self) -> Result<i128> {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[(k, k)] == 0 {
                match (k + 1..n).find(|&i| a[(i, k)] != 0) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)]
                        .checked_mul(a[(k, k)])
                        .zip(a[(i, k)].checked_mul(a[(k, j)]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(Error::Overflow)?;
                    debug_assert_eq!(num % prev, 0);
                    a[(i, j)] = num / prev;
                }
                a[(i, k)] = 0;
            }
            prev = a[(k, k)];
        }
        Ok(sign * a[(n - 1, n - 1)])
    }

    /// Smith normal form `D = U * self * V` with `U`, `V` unimodular. Only
    /// `V` is tracked since callers solve `self * x = 0 (mod n)` through the
    /// substitution `x = V y`.
    pub fn smith(&self) -> Result<Smith> {
        let mut a = self.clone();
        let mut v = IntMatrix::identity(self.cols);
        let (m, n) = (self.rows, self.cols);
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero entry in the trailing block becomes the pivot
            let Some((pi, pj)) = a.min_abs_entry(t) else {
                break;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            loop {
                let p = a[(t, t)];
                let mut dirty = false;
                for i in t + 1..m {
                    let q = a[(i, t)].div_euclid(p);
                    if q != 0 {
                        a.add_row(i, t, -q)?;
                    }
                    dirty |= a[(i, t)] != 0;
                }
                for j in t + 1..n {
                    let q = a[(t, j)].div_euclid(p);
                    if q != 0 {
                        a.add_col(j, t, -q)?;
                        v.add_col(j, t, -q)?;
                    }
                    dirty |= a[(t, j)] != 0;
                }
                if !dirty {
                    // divisibility condition on the trailing block
                    let bad = (t + 1..m)
                        .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| a[(i, j)] % p != 0);
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            a.add_row(t, i, 1)?;
                            continue;
                        }
                    }
                }
                let (pi, pj) = a.min_abs_in_cross(t);
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
            if a[(t, t)] < 0 {
                a.negate_row(t);
            }
            t += 1;
        }
        let diag = (0..m.min(n)).map(|i| a[(i, i)]).collect();
        Ok(Smith {
            diagonal: diag,
            right: v,
        })
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i128, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self[(i, j)].abs();
                if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Smallest nonzero entry in row `t` / column `t` from `t` onwards.
    fn min_abs_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (self[(t, t)].abs(), t, t);
        for i in t + 1..self.rows {
            let x = self[(i, t)].abs();
            if x != 0 && (best.0 == 0 || x < best.0) {
                best = (x, i, t);
            }
        }
        for j in t + 1..self.cols {
            let x = self[(t, j)].abs();
            if x != 0 && (best.0 == 0 || x < best.0) {
                best = (x, t, j);
            }
        }
        (best.1, best.2)
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix, computed
    /// by exact rational congruence diagonalization.
    pub fn inertia(&self) -> Result<Inertia> {
        assert!(self.is_symmetric(), "inertia of a non-symmetric matrix");
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from(self[(i, j)])).collect())
            .collect();
        let mut out = Inertia::default();
        let mut live: Vec<usize> = (0..n).collect();
        while !live.is_empty() {
            let pivot = live.iter().position(|&i| !a[i][i].is_zero());
            let p = match pivot {
                Some(p) => live[p],
                None => {
                    // all diagonal entries vanish; fold an off-diagonal pair
                    let pair = live.iter().enumerate().find_map(|(x, &i)| {
                        live[x + 1..]
                            .iter()
                            .find(|&&j| !a[i][j].is_zero())
                            .map(|&j| (i, j))
                    });
                    let Some((i, j)) = pair else {
                        out.zero += live.len();
                        break;
                    };
                    // row_i += row_j, col_i += col_j
                    for &k in &live {
                        let v = a[i][k].add(a[j][k])?;
                        a[i][k] = v;
                    }
                    for &k in &live {
                        let v = a[k][i].add(a[k][j])?;
                        a[k][i] = v;
                    }
                    i
                }
            };
            let d = a[p][p];
            if d.num > 0 {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            live.retain(|&i| i != p);
            for &i in &live {
                let f = a[i][p].div(d)?;
                if f.is_zero() {
                    continue;
                }
                for &j in &live {
                    let v = a[i][j].sub(f.mul(a[p][j])?)?;
                    a[i][j] = v;
                }
            }
        }
        Ok(out)
    }

    /// Rank over GF(2).
    pub fn rank_mod2(&self) -> usize {
        let mut rows: Vec<Vec<bool>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] & 1 == 1).collect())
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][c]) else {
                continue;
            };
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i][c] {
                    let pivot = rows[rank].clone();
                    for (x, b) in rows[i].iter_mut().zip(pivot).skip(c) {
                        *x ^= b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

fn checked_axpy(y: i128, k: i128, x: i128) -> Result<i128> {
    k.checked_mul(x)
        .and_then(|kx| y.checked_add(kx))
        .ok_or(Error::Overflow)
}

#[derive(Debug, Clone)]
pub struct Smith {
    /// Nonnegative invariant factors, `min(rows, cols)` of them, each
    /// dividing the next (zeros last).
    pub diagonal: Vec<i128>,
    /// Unimodular column transform `V`.
    pub right: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Rational {
    num: i128,
    den: i128,
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }
}

impl Rational {
    fn new(num: i128, den: i128) -> Self {
        let g = gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Rational {
            num: s * num / g,
            den: s * den / g,
        }
    }

    fn is_zero(&self) -> bool {
        self.num == 0
    }

    fn add(self, o: Self) -> Result<Self> {
        let num = self
            .num
            .checked_mul(o.den)
            .zip(o.num.checked_mul(self.den))
            .and_then(|(a, b)| a.checked_add(b))
            .ok_or(Error::Overflow)?;
        let den = self.den.checked_mul(o.den).ok_or(Error::Overflow)?;
        Ok(Rational::new(num, den))
    }

    fn sub(self, o: Self) -> Result<Self> {
        self.add(Rational {
            num: -o.num,
            den: o.den,
        })
    }

    fn mul(self, o: Self) -> Result<Self> {
        let num = self.num.checked_mul(o.num).ok_or(Error::Overflow)?;
        let den = self.den.checked_mul(o.den).ok_or(Error::Overflow)?;
        Ok(Rational::new(num, den))
    }

    fn div(self, o: Self) -> Result<Self> {
        self.mul(Rational::new(o.den, o.num))
    }
}
