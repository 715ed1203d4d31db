//! Concrete complex Jordan algebra arithmetic.
//!
//! Full arithmetic is provided for the rank-1 algebra `C` and for
//! `Sym(r, C)` with the product `x∘y = (xy + yx)/2`; the remaining rows of
//! the classification table are lookup-only.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::QiMatrix;
use crate::scalar::{GaussRational, Scalar};

/// Errors from Jordan-algebra operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum JordanError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("element is singular (determinant zero)")]
    Singular,
    #[error("family {0:?} has no arithmetic support (classification lookup only)")]
    LookupOnly(JordanFamily),
    #[error("invalid parameter {1} for family {0:?}")]
    BadParameter(JordanFamily, usize),
}

/// Families with full arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlgebraFamily {
    Rank1,
    SymMatrices,
}

/// A concrete algebra: family plus rank, with `dim = r(r+1)/2` for
/// symmetric matrices and 1 for the rank-1 algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlgebraDescriptor {
    pub family: AlgebraFamily,
    pub rank: usize,
    pub dim: usize,
}

impl AlgebraDescriptor {
    pub fn rank1() -> Self {
        AlgebraDescriptor {
            family: AlgebraFamily::Rank1,
            rank: 1,
            dim: 1,
        }
    }

    pub fn sym(r: usize) -> Self {
        assert!(r >= 1);
        AlgebraDescriptor {
            family: AlgebraFamily::SymMatrices,
            rank: r,
            dim: r * (r + 1) / 2,
        }
    }

    /// Coordinate index of the matrix entry `(i, j)` with `i <= j`.
    /// Coordinates enumerate the upper triangle row by row.
    pub fn entry_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let r = self.rank;
        assert!(j < r);
        // row i starts after r + (r-1) + ... + (r-i+1) previous entries
        i * r - i * (i + 1) / 2 + i + (j - i)
    }

    pub fn unit(&self) -> JordanElement {
        let mut entries = vec![GaussRational::zero(); self.dim];
        match self.family {
            AlgebraFamily::Rank1 => entries[0] = GaussRational::one(),
            AlgebraFamily::SymMatrices => {
                for i in 0..self.rank {
                    entries[self.entry_index(i, i)] = GaussRational::one();
                }
            }
        }
        JordanElement {
            algebra: *self,
            entries,
        }
    }

    /// The frame of orthogonal primitive idempotents `c_1..c_r`.
    pub fn frame(&self) -> Vec<JordanElement> {
        match self.family {
            AlgebraFamily::Rank1 => vec![self.unit()],
            AlgebraFamily::SymMatrices => (0..self.rank)
                .map(|i| {
                    let mut entries = vec![GaussRational::zero(); self.dim];
                    entries[self.entry_index(i, i)] = GaussRational::one();
                    JordanElement {
                        algebra: *self,
                        entries,
                    }
                })
                .collect(),
        }
    }

    /// Diagonal element `sum_i a_i c_i`.
    pub fn diagonal(&self, coords: &[GaussRational]) -> JordanElement {
        assert_eq!(coords.len(), self.rank);
        let mut entries = vec![GaussRational::zero(); self.dim];
        match self.family {
            AlgebraFamily::Rank1 => entries[0] = coords[0].clone(),
            AlgebraFamily::SymMatrices => {
                for (i, a) in coords.iter().enumerate() {
                    entries[self.entry_index(i, i)] = a.clone();
                }
            }
        }
        JordanElement {
            algebra: *self,
            entries,
        }
    }

    pub fn from_entries(&self, entries: Vec<GaussRational>) -> JordanElement {
        assert_eq!(entries.len(), self.dim);
        JordanElement {
            algebra: *self,
            entries,
        }
    }

    pub fn zero(&self) -> JordanElement {
        JordanElement {
            algebra: *self,
            entries: vec![GaussRational::zero(); self.dim],
        }
    }
}

/// Element of a concrete algebra. For `Sym(r, C)` the entries are the upper
/// triangle of the symmetric matrix, row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanElement {
    pub algebra: AlgebraDescriptor,
    entries: Vec<GaussRational>,
}

impl JordanElement {
    pub fn entries(&self) -> &[GaussRational] {
        &self.entries
    }

    /// Matrix entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.entries[self.algebra.entry_index(i, j)]
    }

    fn full_matrix(&self) -> Vec<Vec<GaussRational>> {
        let r = self.algebra.rank;
        (0..r)
            .map(|i| (0..r).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    fn from_full_matrix(algebra: AlgebraDescriptor, m: &[Vec<GaussRational>]) -> JordanElement {
        let r = algebra.rank;
        let mut entries = vec![GaussRational::zero(); algebra.dim];
        for i in 0..r {
            for j in i..r {
                entries[algebra.entry_index(i, j)] = m[i][j].clone();
            }
        }
        JordanElement { algebra, entries }
    }

    pub fn add(&self, rhs: &JordanElement) -> Result<JordanElement, JordanError> {
        if self.algebra != rhs.algebra {
            return Err(JordanError::AlgebraMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(JordanElement {
            algebra: self.algebra,
            entries,
        })
    }

    pub fn scale(&self, c: &GaussRational) -> JordanElement {
        JordanElement {
            algebra: self.algebra,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Trace form `tau`.
    pub fn trace(&self) -> GaussRational {
        let mut acc = GaussRational::zero();
        for i in 0..self.algebra.rank {
            acc = &acc + self.get(i, i);
        }
        acc
    }
}

fn assoc_mul(a: &[Vec<GaussRational>], b: &[Vec<GaussRational>]) -> Vec<Vec<GaussRational>> {
    let r = a.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let mut acc = GaussRational::zero();
                    for k in 0..r {
                        acc = &acc + &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Jordan product `x∘y = (xy + yx)/2`.
pub fn jordan_mul(x: &JordanElement, y: &JordanElement) -> Result<JordanElement, JordanError> {
    if x.algebra != y.algebra {
        return Err(JordanError::AlgebraMismatch);
    }
    match x.algebra.family {
        AlgebraFamily::Rank1 => Ok(JordanElement {
            algebra: x.algebra,
            entries: vec![&x.entries[0] * &y.entries[0]],
        }),
        AlgebraFamily::SymMatrices => {
            let (xm, ym) = (x.full_matrix(), y.full_matrix());
            let xy = assoc_mul(&xm, &ym);
            let yx = assoc_mul(&ym, &xm);
            let r = x.algebra.rank;
            let half = crate::scalar::rat(1, 2);
            let sym: Vec<Vec<GaussRational>> = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| (&xy[i][j] + &yx[i][j]).mul_rational(&half))
                        .collect()
                })
                .collect();
            Ok(JordanElement::from_full_matrix(x.algebra, &sym))
        }
    }
}

fn det(m: &[Vec<GaussRational>]) -> GaussRational {
    let n = m.len();
    match n {
        0 => GaussRational::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = GaussRational::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<GaussRational>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&k| k != j)
                            .map(|k| m[i][k].clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &det(&minor);
                if j % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }
    }
}

/// Jordan determinant `Delta` (the matrix determinant for `Sym(r, C)`).
pub fn det_delta(x: &JordanElement) -> Scalar {
    Scalar::from_gauss(det_delta_gauss(x))
}

pub fn det_delta_gauss(x: &JordanElement) -> GaussRational {
    det(&x.full_matrix())
}

/// Adjugate matrix, satisfying `x * adj(x) = Delta(x) * e`.
pub fn adjugate(x: &JordanElement) -> JordanElement {
    let m = x.full_matrix();
    let r = x.algebra.rank;
    if r == 1 {
        return x.algebra.unit();
    }
    let mut out = vec![vec![GaussRational::zero(); r]; r];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let minor: Vec<Vec<GaussRational>> = (0..r)
                .filter(|&a| a != j)
                .map(|a| {
                    (0..r)
                        .filter(|&b| b != i)
                        .map(|b| m[a][b].clone())
                        .collect()
                })
                .collect();
            let c = det(&minor);
            *slot = if (i + j) % 2 == 0 { c } else { -&c };
        }
    }
    JordanElement::from_full_matrix(x.algebra, &out)
}

/// Jordan inverse `x^{-1} = adj(x) / Delta(x)`.
pub fn inverse(x: &JordanElement) -> Result<JordanElement, JordanError> {
    let d = det_delta_gauss(x);
    let d_inv = d.inv().ok_or(JordanError::Singular)?;
    Ok(adjugate(x).scale(&d_inv))
}

/// Quadratic representation `P(a) = 2 L(a)^2 - L(a^2)` as an exact matrix on
/// the coordinate basis of the algebra.
pub fn quad_rep(a: &JordanElement) -> QiMatrix {
    let alg = a.algebra;
    let a_sq = jordan_mul(a, a).expect("same algebra");
    let mut cols: Vec<Vec<GaussRational>> = Vec::with_capacity(alg.dim);
    for k in 0..alg.dim {
        let mut entries = vec![GaussRational::zero(); alg.dim];
        entries[k] = GaussRational::one();
        let x = alg.from_entries(entries);
        let ax = jordan_mul(a, &x).unwrap();
        let aax = jordan_mul(a, &ax).unwrap();
        let sqx = jordan_mul(&a_sq, &x).unwrap();
        let two = GaussRational::from_int(2);
        let image = aax.scale(&two).add(&sqx.scale(&-&GaussRational::one())).unwrap();
        cols.push(image.entries);
    }
    // columns were computed; transpose into row-major storage
    let mut m = QiMatrix::zeros(alg.dim, alg.dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            *m.at_mut(i, j) = v.clone();
        }
    }
    m
}

/// Apply `P(a)` to an element.
pub fn quad_rep_apply(a: &JordanElement, x: &JordanElement) -> Result<JordanElement, JordanError> {
    if a.algebra != x.algebra {
        return Err(JordanError::AlgebraMismatch);
    }
    let ax = jordan_mul(a, x)?;
    let aax = jordan_mul(a, &ax)?;
    let a_sq = jordan_mul(a, a)?;
    let sqx = jordan_mul(&a_sq, x)?;
    let two = GaussRational::from_int(2);
    aax.scale(&two).add(&sqx.scale(&-&GaussRational::one()))
}

/// Rows of the classification table of `(V, Q, l, g, g~_R, l_R, g_R)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum JordanFamily {
    Rank1C,
    SpinFactor,
    SymMatrices,
    FullMatrices,
    SkewMatrices,
    HermOctonion,
}

/// One row of the classification table, as printed strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub v: String,
    pub q: String,
    pub l: String,
    pub g: String,
    pub g_r_real_form: String,
    pub l_r: String,
    pub g_r: String,
}

/// The classification table with symbolic parameters (`r`, `n`).
pub fn classification_table() -> Vec<ClassificationRow> {
    vec![
        ClassificationRow {
            v: "C".into(),
            q: "z^2".into(),
            l: "C".into(),
            g: "sl(2,C)".into(),
            g_r_real_form: "sl(2,R)".into(),
            l_r: "iR".into(),
            g_r: "su(1,1)".into(),
        },
        ClassificationRow {
            v: "C^n".into(),
            q: "Delta(z)^2".into(),
            l: "so(n,C)+C".into(),
            g: "sl(n+2,C)".into(),
            g_r_real_form: "sl(n+2,R)".into(),
            l_r: "so(n)+iR".into(),
            g_r: "so(n,2)".into(),
        },
        ClassificationRow {
            v: "Sym(r,C)".into(),
            q: "det(z)^2".into(),
            l: "sl(r,C)+C".into(),
            g: "sp(r,C)".into(),
            g_r_real_form: "sp(r,R)".into(),
            l_r: "su(r)+iR".into(),
            g_r: "sp(r,R)".into(),
        },
        ClassificationRow {
            v: "M(r,C)".into(),
            q: "det(z)^2".into(),
            l: "sl(r,C)^2+C".into(),
            g: "sl(2r,C)".into(),
            g_r_real_form: "sl(2r,R)".into(),
            l_r: "su(r)^2+iR".into(),
            g_r: "su(r,r)".into(),
        },
        ClassificationRow {
            v: "Skew(2r,C)".into(),
            q: "det(z)".into(),
            l: "sl(2r,C)+C".into(),
            g: "so(4r,C)".into(),
            g_r_real_form: "so(4r)".into(),
            l_r: "so(2r)+iR".into(),
            g_r: "so*(4r)".into(),
        },
        ClassificationRow {
            v: "Herm(3,O)".into(),
            q: "det(z)^2".into(),
            l: "e6(C)+C".into(),
            g: "e7(C)".into(),
            g_r_real_form: "e7(R)".into(),
            l_r: "e6(R)+iR".into(),
            g_r: "e7(-25)".into(),
        },
    ]
}

/// Table lookup with the parameter substituted. For `SpinFactor` the
/// parameter is the dimension `n >= 3`; otherwise it is the rank `r`.
pub fn classify(family: JordanFamily, param: usize) -> Result<ClassificationRow, JordanError> {
    let table = classification_table();
    match family {
        JordanFamily::Rank1C => {
            if param != 1 {
                return Err(JordanError::BadParameter(family, param));
            }
            Ok(table[0].clone())
        }
        JordanFamily::SpinFactor => {
            if param < 3 {
                return Err(JordanError::BadParameter(family, param));
            }
            Ok(ClassificationRow {
                v: format!("C^{}", param),
                q: "Delta(z)^2".into(),
                l: format!("so({},C)+C", param),
                g: format!("sl({},C)", param + 2),
                g_r_real_form: format!("sl({},R)", param + 2),
                l_r: format!("so({})+iR", param),
                g_r: format!("so({},2)", param),
            })
        }
        JordanFamily::SymMatrices => {
            if param < 1 {
                return Err(JordanError::BadParameter(family, param));
            }
            Ok(ClassificationRow {
                v: format!("Sym({},C)", param),
                q: "det(z)^2".into(),
                l: format!("sl({},C)+C", param),
                g: format!("sp({},C)", param),
                g_r_real_form: format!("sp({},R)", param),
                l_r: format!("su({})+iR", param),
                g_r: format!("sp({},R)", param),
            })
        }
        JordanFamily::FullMatrices => {
            if param < 1 {
                return Err(JordanError::BadParameter(family, param));
            }
            Ok(ClassificationRow {
                v: format!("M({},C)", param),
                q: "det(z)^2".into(),
                l: format!("sl({},C)^2+C", param),
                g: format!("sl({},C)", 2 * param),
                g_r_real_form: format!("sl({},R)", 2 * param),
                l_r: format!("su({})^2+iR", param),
                g_r: format!("su({0},{0})", param),
            })
        }
        JordanFamily::SkewMatrices => {
            if param < 1 {
                return Err(JordanError::BadParameter(family, param));
            }
            let row = &table[4];
            Ok(ClassificationRow {
                v: format!("Skew({},C)", 2 * param),
                q: row.q.clone(),
                l: format!("sl({},C)+C", 2 * param),
                g: format!("so({},C)", 4 * param),
                g_r_real_form: format!("so({})", 4 * param),
                l_r: format!("so({})+iR", 2 * param),
                g_r: format!("so*({})", 4 * param),
            })
        }
        JordanFamily::HermOctonion => {
            if param != 3 {
                return Err(JordanError::BadParameter(family, param));
            }
            Ok(table[5].clone())
        }
    }
}
