//! Sparse multivariate polynomials and Laurent polynomials over [`Scalar`].
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors, so equality is
//! structural and iteration order is canonical. The differential operators
//! used by the model operators (`euler`, `laplace`, multiplication by
//! `tau(z^2)`) live here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{GaussRational, Rational, Scalar};

/// Errors from polynomial operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("negative exponent in polynomial term")]
    NegativeExponent,
    #[error("inexact division: remainder has leading term not divisible by divisor")]
    InexactDivision,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("point has {0} coordinates, polynomial has {1} variables")]
    PointMismatch(usize, usize),
    #[error("coefficient is not Gaussian-rational: {0}")]
    NonRationalCoefficient(String),
    #[error("scalar arithmetic: {0}")]
    Scalar(#[from] crate::scalar::ScalarError),
}

fn check_nvars(a: usize, b: usize) -> Result<(), PolyError> {
    if a == b {
        Ok(())
    } else {
        Err(PolyError::VarMismatch(a, b))
    }
}

/// Sparse polynomial in `nvars` variables with non-negative exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MultiPoly { nvars, terms }
    }

    /// The variable `z_{idx}` (zero-based).
    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut expts = vec![0; nvars];
        expts[idx] = 1;
        MultiPoly::monomial(nvars, expts, Scalar::one())
    }

    pub fn monomial(nvars: usize, expts: Vec<i64>, coeff: Scalar) -> Self {
        assert_eq!(expts.len(), nvars);
        assert!(expts.iter().all(|&e| e >= 0), "negative exponent");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(expts, coeff);
        }
        MultiPoly { nvars, terms }
    }

    pub(crate) fn from_terms(nvars: usize, terms: BTreeMap<Vec<i64>, Scalar>) -> Self {
        let mut p = MultiPoly { nvars, terms };
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, expts: &[i64]) -> Scalar {
        self.terms.get(expts).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(terms: &mut BTreeMap<Vec<i64>, Scalar>, expts: Vec<i64>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(expts) {
            Entry::Occupied(mut o) => {
                let v = o.get() + &c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v * c))
            .collect();
        MultiPoly::from_terms(self.nvars, terms)
    }

    pub fn scale_rational(&self, q: &Rational) -> MultiPoly {
        self.scale(&Scalar::from_rational(q.clone()))
    }

    /// Conjugate every coefficient (`i -> -i`; `pi`, `s` fixed).
    pub fn conj_coeffs(&self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v.conj()))
            .collect();
        MultiPoly::from_terms(self.nvars, terms)
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` iff nonzero and every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i64>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Split into homogeneous components keyed by total degree.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, MultiPoly> {
        let mut out: BTreeMap<i64, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: i64 = e.iter().sum();
            let comp = out.entry(d).or_insert_with(|| MultiPoly::zero(self.nvars));
            comp.terms.insert(e.clone(), c.clone());
        }
        out
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn partial(&self, idx: usize) -> MultiPoly {
        assert!(idx < self.nvars);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            MultiPoly::add_term(&mut terms, e2, c.mul_rational(&Rational::from_integer(e[idx].into())));
        }
        MultiPoly::from_terms(self.nvars, terms)
    }

    /// Euler operator `sum_i z_i d/dz_i`: scales each monomial by its total
    /// degree.
    pub fn euler(&self) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: i64 = e.iter().sum();
            if d == 0 {
                continue;
            }
            terms.insert(e.clone(), c.mul_rational(&Rational::from_integer(d.into())));
        }
        MultiPoly::from_terms(self.nvars, terms)
    }

    /// `sum_i d^2/dz_i^2`.
    pub fn laplace(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.nvars);
        for i in 0..self.nvars {
            acc = &acc + &self.partial(i).partial(i);
        }
        acc
    }

    /// Multiplication by `sum_i z_i^2`.
    pub fn rsq_mul(&self) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for i in 0..self.nvars {
            for (e, c) in &self.terms {
                let mut e2 = e.clone();
                e2[i] += 2;
                MultiPoly::add_term(&mut terms, e2, c.clone());
            }
        }
        MultiPoly::from_terms(self.nvars, terms)
    }

    /// Evaluate at a point of scalars.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointMismatch(point.len(), self.nvars));
        }
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                term = &term * &point[i].pow(exp as u32);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn eval_gauss(&self, point: &[GaussRational]) -> Result<Scalar, PolyError> {
        let pt: Vec<Scalar> = point.iter().map(|g| Scalar::from_gauss(g.clone())).collect();
        self.eval(&pt)
    }

    /// Substitute `z_i -> z_i - a_i`.
    pub fn shift(&self, a: &[GaussRational]) -> Result<MultiPoly, PolyError> {
        if a.len() != self.nvars {
            return Err(PolyError::PointMismatch(a.len(), self.nvars));
        }
        let subs: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                &MultiPoly::var(self.nvars, i)
                    - &MultiPoly::constant(self.nvars, Scalar::from_gauss(a[i].clone()))
            })
            .collect();
        self.compose(&subs)
    }

    /// Substitute `z_i -> lambda * z_i`.
    pub fn dilate(&self, lambda: &Scalar) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: i64 = e.iter().sum();
            terms.insert(e.clone(), c * &lambda.pow(d as u32));
        }
        MultiPoly::from_terms(self.nvars, terms)
    }

    /// Substitute each variable by a polynomial.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if subs.len() != self.nvars {
            return Err(PolyError::PointMismatch(subs.len(), self.nvars));
        }
        let out_vars = subs.first().map(|p| p.nvars).unwrap_or(0);
        for s in subs {
            check_nvars(s.nvars, out_vars)?;
        }
        let mut acc = MultiPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(out_vars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = &term * &subs[i].pow(exp as u32);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Leading term in graded-lex order (highest total degree, then highest
    /// exponent vector).
    fn leading_term(&self) -> Option<(&Vec<i64>, &Scalar)> {
        self.terms
            .iter()
            .max_by(|(ea, _), (eb, _)| {
                let da: i64 = ea.iter().sum();
                let db: i64 = eb.iter().sum();
                da.cmp(&db).then_with(|| ea.cmp(eb))
            })
    }

    /// Exact division; errors if `self` is not a polynomial multiple of `d`.
    pub fn try_div_exact(&self, d: &MultiPoly) -> Result<MultiPoly, PolyError> {
        check_nvars(self.nvars, d.nvars)?;
        let (d_lead_e, d_lead_c) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
        let d_lead_e = d_lead_e.clone();
        let d_lead_inv = d_lead_c.try_inv()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((r_e, r_c)) = rem.leading_term() {
            let mut q_e = r_e.clone();
            for (q, de) in q_e.iter_mut().zip(&d_lead_e) {
                *q -= de;
                if *q < 0 {
                    return Err(PolyError::InexactDivision);
                }
            }
            let q_c = r_c * &d_lead_inv;
            let t = MultiPoly::monomial(self.nvars, q_e, q_c);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    /// Coefficient vector with respect to an indexed monomial list; fails if
    /// a coefficient is not Gaussian-rational.
    pub fn to_gauss_vector(
        &self,
        index: &BTreeMap<Vec<i64>, usize>,
    ) -> Result<Vec<GaussRational>, PolyError> {
        let mut v = vec![GaussRational::zero(); index.len()];
        for (e, c) in &self.terms {
            let g = c
                .as_gauss()
                .ok_or_else(|| PolyError::NonRationalCoefficient(c.to_string()))?;
            let slot = index
                .get(e)
                .unwrap_or_else(|| panic!("monomial {:?} outside index space", e));
            v[*slot] = g;
        }
        Ok(v)
    }

    pub fn from_gauss_vector(
        nvars: usize,
        index_rev: &[Vec<i64>],
        v: &[GaussRational],
    ) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (slot, g) in v.iter().enumerate() {
            if !g.is_zero() {
                terms.insert(index_rev[slot].clone(), Scalar::from_gauss(g.clone()));
            }
        }
        MultiPoly::from_terms(nvars, terms)
    }

    /// Render with a variable prefix (`z1`, `z2`, ... by default).
    pub fn to_text(&self, prefix: &str) -> String {
        crate::textfmt::poly_to_text(self, prefix)
    }

    pub fn parse(input: &str, nvars: usize, prefix: &str) -> Result<MultiPoly, PolyError> {
        crate::textfmt::parse_poly(input, nvars, prefix)
            .map_err(|e| PolyError::NonRationalCoefficient(e.to_string()))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            MultiPoly::add_term(&mut terms, e.clone(), c.clone());
        }
        MultiPoly::from_terms(self.nvars, terms)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        MultiPoly::from_terms(self.nvars, terms)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                MultiPoly::add_term(&mut terms, e, ca * cb);
            }
        }
        MultiPoly::from_terms(self.nvars, terms)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("z"))
    }
}

/// Sparse Laurent polynomial: exponents may be negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(nvars: usize, expts: Vec<i64>, coeff: Scalar) -> Self {
        assert_eq!(expts.len(), nvars);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(expts, coeff);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn from_multipoly(p: &MultiPoly) -> Self {
        LaurentPoly {
            nvars: p.nvars(),
            terms: p.terms().map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    /// Substitute `z_i -> z_i^(-1)`: negate every exponent.
    pub fn substitute_inverse(&self) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        let mut terms: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
        for (e, v) in &self.terms {
            let w = v * c;
            if !w.is_zero() {
                terms.insert(e.clone(), w);
            }
        }
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Scalar::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn zvar(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn euler_scales_by_degree() {
        // z1^2 -> 2 z1^2
        let p = zvar(2, 0).pow(2);
        assert_eq!(p.euler(), p.scale_rational(&rat_int(2)));
        // constants are annihilated
        assert_eq!(MultiPoly::one(2).euler(), MultiPoly::zero(2));
        // z1 z2^3 + 5 -> 4 z1 z2^3
        let q = &(&zvar(2, 0) * &zvar(2, 1).pow(3)) + &MultiPoly::constant(2, Scalar::from_int(5));
        let expected = (&zvar(2, 0) * &zvar(2, 1).pow(3)).scale_rational(&rat_int(4));
        assert_eq!(q.euler(), expected);
    }

    #[test]
    fn laplace_basics() {
        assert_eq!(zvar(1, 0).pow(2).laplace(), MultiPoly::constant(1, Scalar::from_int(2)));
        let mixed = &zvar(2, 0) * &zvar(2, 1);
        assert_eq!(mixed.laplace(), MultiPoly::zero(2));
        // (z1^2 + z2^2)^2 -> 16(z1^2 + z2^2), fixed by expansion
        let rsq = &zvar(2, 0).pow(2) + &zvar(2, 1).pow(2);
        let p = &rsq * &rsq;
        assert_eq!(p.laplace(), rsq.scale_rational(&rat_int(16)));
    }

    #[test]
    fn rsq_mul_and_composition() {
        // 1 -> z1^2 + z2^2
        let one = MultiPoly::one(2);
        let expected = &zvar(2, 0).pow(2) + &zvar(2, 1).pow(2);
        assert_eq!(one.rsq_mul(), expected);
        // z1 -> z1^3 + z1 z2^2 for r = 2
        let z1 = zvar(2, 0);
        let expected = &zvar(2, 0).pow(3) + &(&zvar(2, 0) * &zvar(2, 1).pow(2));
        assert_eq!(z1.rsq_mul(), expected);
        // laplace(rsq_mul(1)) = 2r
        for r in 1..=4 {
            let got = MultiPoly::one(r).rsq_mul().laplace();
            assert_eq!(got, MultiPoly::constant(r, Scalar::from_int(2 * r as i64)));
        }
    }

    #[test]
    fn laplace_rsq_commutator_identity() {
        // tau(z^2) tau(d^2) phi - tau(d^2)(tau(z^2) phi) = (-2r - 4E) phi
        // on the full monomial basis of degree <= 8.
        for r in 1..=3usize {
            for mono in crate::fock::monomials_of_max_degree(r, 8) {
                let phi = MultiPoly::monomial(r, mono, Scalar::one());
                let lhs = &phi.laplace().rsq_mul() - &phi.rsq_mul().laplace();
                let rhs = &phi.scale_rational(&rat_int(2 * r as i64))
                    + &phi.euler().scale_rational(&rat_int(4));
                assert_eq!(lhs, -&rhs, "identity failed for r={} mono={}", r, phi);
            }
        }
    }

    #[test]
    fn shift_and_eval() {
        // (z1 - 1)^2 evaluated at 3 gives 4
        let p = zvar(1, 0).pow(2);
        let shifted = p.shift(&[GaussRational::from_int(1)]).unwrap();
        let v = shifted.eval_gauss(&[GaussRational::from_int(3)]).unwrap();
        assert_eq!(v, Scalar::from_int(4));
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let d = &zvar(n, 0) * &zvar(n, 1); // z1 z2
        let q = &zvar(n, 0).pow(2) + &MultiPoly::one(n);
        let prod = &d * &q;
        assert_eq!(prod.try_div_exact(&d).unwrap(), q);
        let bad = &prod + &MultiPoly::one(n);
        assert!(matches!(bad.try_div_exact(&d), Err(PolyError::InexactDivision)));
    }

    #[test]
    fn laurent_inverse_is_involutive() {
        let m = LaurentPoly::monomial(2, vec![3, -1], Scalar::one());
        assert_eq!(m.substitute_inverse().substitute_inverse(), m);
        let p = &LaurentPoly::monomial(2, vec![1, 0], Scalar::one())
            + &LaurentPoly::monomial(2, vec![0, 1], Scalar::one());
        let inv = p.substitute_inverse();
        let expected = &LaurentPoly::monomial(2, vec![-1, 0], Scalar::one())
            + &LaurentPoly::monomial(2, vec![0, -1], Scalar::one());
        assert_eq!(inv, expected);
    }

    #[test]
    fn homogeneous_components_split() {
        let p = &zvar(2, 0).pow(3) + &(&zvar(2, 1) + &MultiPoly::one(2));
        let comps = p.homogeneous_components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[&0], MultiPoly::one(2));
        assert_eq!(comps[&1], zvar(2, 1));
        assert_eq!(comps[&3], zvar(2, 0).pow(3));
    }
}
