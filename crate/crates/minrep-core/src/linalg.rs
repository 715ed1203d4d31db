//! Exact linear algebra over the Gaussian rationals.
//!
//! Small dense matrices with fraction-free-enough Gaussian elimination; used
//! for rank stabilization when spanning translate spaces, for membership
//! tests, and for operator matrices on graded monomial bases.

use crate::scalar::GaussRational;

/// Dense matrix of Gaussian rationals, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GaussRational>,
}

impl QiMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QiMatrix {
            rows,
            cols,
            data: vec![GaussRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QiMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == ncols));
        QiMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &GaussRational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut GaussRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[GaussRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &QiMatrix) -> QiMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = QiMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * rhs.at(k, j);
                    *out.at_mut(i, j) = out.at(i, j) + &prod;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussRational::zero();
                for (j, vj) in v.iter().enumerate() {
                    if !vj.is_zero() {
                        acc = &acc + &(self.at(i, j) * vj);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut basis = RowBasis::new(self.cols);
        for i in 0..self.rows {
            basis.insert(self.row(i).to_vec());
        }
        basis.rank()
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<QiMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug: Vec<Vec<GaussRational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                for j in 0..n {
                    row.push(if i == j {
                        GaussRational::one()
                    } else {
                        GaussRational::zero()
                    });
                }
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let inv = aug[col][col].inv().unwrap();
            for x in aug[col].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    let delta = &factor * p;
                    *x = &*x - &delta;
                }
            }
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(QiMatrix::from_rows(rows))
    }
}

/// Incrementally maintained reduced row basis of a subspace of `Q(i)^n`.
///
/// Rows are kept in reduced echelon form with pivot 1, so membership tests
/// reduce a candidate vector and check for zero.
#[derive(Debug, Clone)]
pub struct RowBasis {
    cols: usize,
    rows: Vec<Vec<GaussRational>>,
    pivots: Vec<usize>,
}

impl RowBasis {
    pub fn new(cols: usize) -> Self {
        RowBasis {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<GaussRational>] {
        &self.rows
    }

    fn reduce(&self, v: &mut [GaussRational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for j in p..self.cols {
                let delta = &factor * &row[j];
                v[j] = &v[j] - &delta;
            }
        }
    }

    /// Insert a vector; returns `true` if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<GaussRational>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().unwrap();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        // back-eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (rj, vj) in row.iter_mut().zip(&v) {
                let delta = &factor * vj;
                *rj = &*rj - &delta;
            }
        }
        // keep rows sorted by pivot column
        let insert_at = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.pivots.len());
        self.rows.insert(insert_at, v);
        self.pivots.insert(insert_at, pivot);
        true
    }

    /// Does the span contain `v`?
    pub fn contains(&self, v: &[GaussRational]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }
}

/// Row basis over `GF(p)` with `p = 2^61 - 1`, used as a fast rank shadow:
/// `rank_p <= rank_Q` always, so matching an exactly computed upper bound
/// certifies the exact rank.
#[derive(Debug, Clone)]
pub struct ModRowBasis {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

pub const RANK_SHADOW_PRIME: u64 = (1 << 61) - 1;

fn mod_mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % RANK_SHADOW_PRIME as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base);
        }
        base = mod_mul(base, base);
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64) -> u64 {
    mod_pow(a, RANK_SHADOW_PRIME - 2)
}

/// Reduce a rational to `GF(p)`; panics if the denominator vanishes mod p
/// (cannot happen for the small denominators this crate produces).
pub fn rational_mod_p(q: &crate::scalar::Rational) -> u64 {
    let p = num_bigint::BigInt::from(RANK_SHADOW_PRIME);
    let num = ((q.numer() % &p) + &p) % &p;
    let den = ((q.denom() % &p) + &p) % &p;
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    assert!(den != 0, "denominator divisible by the shadow prime");
    mod_mul(num, mod_inv(den))
}

impl ModRowBasis {
    pub fn new(cols: usize) -> Self {
        ModRowBasis {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] == 0 {
                continue;
            }
            let factor = v[p];
            for j in p..self.cols {
                if row[j] != 0 {
                    let delta = mod_mul(factor, row[j]);
                    v[j] = (v[j] + RANK_SHADOW_PRIME - delta) % RANK_SHADOW_PRIME;
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inv(v[pivot]);
        for x in v.iter_mut() {
            *x = mod_mul(*x, inv);
        }
        self.rows.push(v);
        self.pivots.push(pivot);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn g(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn rank_and_membership() {
        let mut basis = RowBasis::new(3);
        assert!(basis.insert(vec![g(1), g(2), g(3)]));
        assert!(basis.insert(vec![g(0), g(1), g(1)]));
        assert!(!basis.insert(vec![g(1), g(3), g(4)])); // dependent
        assert_eq!(basis.rank(), 2);
        assert!(basis.contains(&[g(2), g(5), g(7)]));
        assert!(!basis.contains(&[g(0), g(0), g(1)]));
    }

    #[test]
    fn shadow_rank_matches_exact_rank() {
        let vectors: Vec<Vec<i64>> = vec![
            vec![1, 2, 3, 4],
            vec![0, 1, 1, 0],
            vec![1, 3, 4, 4],
            vec![2, 0, 0, -1],
        ];
        let mut exact = RowBasis::new(4);
        let mut shadow = ModRowBasis::new(4);
        for v in &vectors {
            let gv: Vec<GaussRational> = v.iter().map(|&x| g(x)).collect();
            let mv: Vec<u64> = v
                .iter()
                .map(|&x| rational_mod_p(&rat_int(x)))
                .collect();
            assert_eq!(exact.insert(gv), shadow.insert(mv));
        }
        assert_eq!(exact.rank(), shadow.rank());
        assert_eq!(exact.rank(), 3);
    }

    #[test]
    fn inverse_round_trip() {
        let m = QiMatrix::from_rows(vec![
            vec![g(2), g(1)],
            vec![GaussRational::new(rat_int(1), rat_int(1)), g(1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QiMatrix::identity(2));
        let singular = QiMatrix::from_rows(vec![vec![g(1), g(2)], vec![g(2), g(4)]]);
        assert!(singular.inverse().is_none());
    }
}
