//! Exact scalar arithmetic.
//!
//! Every coefficient in this crate lives in the ring
//! `Q(i)[pi^(1/2), pi^(-1/2), s]` with the single relation `s^2 = t` for a
//! fixed non-negative rational `t` (`t = r - 1` when `s` stands for the
//! square root attached to a rank-`r` model). Powers of `pi` are tracked as
//! half-integer exponents, so quantities like `pi^r`, `sqrt(pi)` and
//! `i*sqrt(r-1)/2` are all represented exactly and compared structurally.
//!
//! When `t` is a perfect square of a rational the symbol `s` collapses to
//! that rational during normalization (`s = 1` for `t = 1`, `s = 0` for
//! `t = 0`), so identities that hold "up to `s^2 = t`" reduce to plain
//! structural equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational numbers used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Errors from scalar arithmetic.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    /// Inversion was requested for a scalar that is not a unit we can invert
    /// (zero, or a sum of several terms).
    #[error("scalar is not invertible: {0}")]
    NotInvertible(String),
    /// The symbol `s` would need a negative square.
    #[error("s^2 = {0} must be non-negative")]
    NegativeSymbolSquare(String),
}

/// Convenience constructor for rationals from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// A Gaussian rational `re + im*i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn zero() -> Self {
        GaussRational::default()
    }

    pub fn one() -> Self {
        GaussRational::new(Rational::one(), Rational::zero())
    }

    pub fn i() -> Self {
        GaussRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussRational::new(re, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRational::from_rational(rat_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        GaussRational::new(&self.re * q, &self.im * q)
    }

    /// Display sign used when rendering sums: negative iff the leading
    /// nonzero part is negative.
    pub(crate) fn is_display_negative(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        let im_abs = self.im.abs();
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "({}{}{}i)", self.re, sign, im_abs)
    }
}

/// Exact square root of a non-negative rational, if it exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let num = q.numer();
    let den = q.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Term key: exponent of `pi` in half-integer units, and exponent of `s`
/// (already reduced modulo `s^2 = t`, so always 0 or 1).
type Key = (i64, u8);

/// Element of `Q(i)[pi^(±1/2), s]/(s^2 - t)`.
///
/// `s_sq` records `t`. Scalars that contain no `s` term normalize `s_sq`
/// to zero, so plain Gaussian-rational scalars mix freely with any context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    terms: BTreeMap<Key, GaussRational>,
    s_sq: Rational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            terms: BTreeMap::new(),
            s_sq: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(GaussRational::one())
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRational::i())
    }

    pub fn from_gauss(g: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert((0, 0), g);
        }
        Scalar {
            terms,
            s_sq: Rational::zero(),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar::from_gauss(GaussRational::from_rational(q))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(rat_int(n))
    }

    /// `pi` raised to `half/2`.
    pub fn pi_pow_half(half: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((half, 0), GaussRational::one());
        Scalar {
            terms,
            s_sq: Rational::zero(),
        }
    }

    pub fn pi() -> Self {
        Scalar::pi_pow_half(2)
    }

    pub fn sqrt_pi() -> Self {
        Scalar::pi_pow_half(1)
    }

    /// The symbol `s` with `s^2 = t`. Collapses to the rational root when
    /// `t` is a perfect square (in particular `s = 0` when `t = 0`).
    pub fn s_symbol(t: &Rational) -> Result<Self, ScalarError> {
        if t.is_negative() {
            return Err(ScalarError::NegativeSymbolSquare(t.to_string()));
        }
        if let Some(root) = rational_sqrt(t) {
            return Ok(Scalar::from_rational(root));
        }
        let mut terms = BTreeMap::new();
        terms.insert((0, 1), GaussRational::one());
        Ok(Scalar {
            terms,
            s_sq: t.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|g| g.is_one())
                .unwrap_or(false)
    }

    fn has_s(&self) -> bool {
        self.terms.keys().any(|&(_, e)| e == 1)
    }

    /// The `s^2` context shared by two operands. Mixing two different
    /// symbolic contexts is a programming error.
    fn unified_ctx(&self, rhs: &Scalar) -> Rational {
        match (self.has_s(), rhs.has_s()) {
            (true, true) => {
                assert_eq!(
                    self.s_sq, rhs.s_sq,
                    "mixing scalars with different s^2 contexts"
                );
                self.s_sq.clone()
            }
            (true, false) => self.s_sq.clone(),
            (false, true) => rhs.s_sq.clone(),
            (false, false) => Rational::zero(),
        }
    }

    fn normalized(mut terms: BTreeMap<Key, GaussRational>, s_sq: Rational) -> Scalar {
        terms.retain(|_, g| !g.is_zero());
        let s_sq = if terms.keys().any(|&(_, e)| e == 1) {
            s_sq
        } else {
            Rational::zero()
        };
        Scalar { terms, s_sq }
    }

    fn add_term(terms: &mut BTreeMap<Key, GaussRational>, key: Key, g: GaussRational) {
        let entry = terms.entry(key).or_insert_with(GaussRational::zero);
        *entry = &*entry + &g;
        if entry.is_zero() {
            terms.remove(&key);
        }
    }

    pub fn conj(&self) -> Scalar {
        let terms = self
            .terms
            .iter()
            .map(|(k, g)| (*k, g.conj()))
            .collect::<BTreeMap<_, _>>();
        Scalar {
            terms,
            s_sq: self.s_sq.clone(),
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, g)| (*k, g.mul_rational(q)))
            .collect();
        Scalar::normalized(terms, self.s_sq.clone())
    }

    pub fn mul_gauss(&self, g: &GaussRational) -> Scalar {
        if g.is_zero() {
            return Scalar::zero();
        }
        let terms = self.terms.iter().map(|(k, c)| (*k, c * g)).collect();
        Scalar::normalized(terms, self.s_sq.clone())
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Plain Gaussian-rational value, when the scalar has no `pi` or `s`
    /// content.
    pub fn as_gauss(&self) -> Option<GaussRational> {
        if self.is_zero() {
            return Some(GaussRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(g) = self.terms.get(&(0, 0)) {
                return Some(g.clone());
            }
        }
        None
    }

    /// Plain rational value, when applicable.
    pub fn as_rational(&self) -> Option<Rational> {
        let g = self.as_gauss()?;
        g.im.is_zero().then_some(g.re)
    }

    /// Inverse of a single-term scalar `g * pi^(k/2) * s^e`.
    pub fn try_inv(&self) -> Result<Scalar, ScalarError> {
        if self.terms.len() != 1 {
            return Err(ScalarError::NotInvertible(self.to_string()));
        }
        let ((pi_half, s_exp), g) = self.terms.iter().next().unwrap();
        let g_inv = g
            .inv()
            .ok_or_else(|| ScalarError::NotInvertible(self.to_string()))?;
        let mut terms = BTreeMap::new();
        if *s_exp == 1 {
            // 1/s = s/t
            if self.s_sq.is_zero() {
                return Err(ScalarError::NotInvertible(self.to_string()));
            }
            let coeff = g_inv.mul_rational(&(Rational::one() / &self.s_sq));
            terms.insert((-pi_half, 1), coeff);
        } else {
            terms.insert((-pi_half, 0), g_inv);
        }
        Ok(Scalar::normalized(terms, self.s_sq.clone()))
    }

    /// Iterate over `(pi_half_exponent, s_exponent, coefficient)` terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u8, &GaussRational)> {
        self.terms.iter().map(|(&(p, s), g)| (p, s, g))
    }

    /// The sole `(pi_half, s_exp, coeff)` term, if there is exactly one.
    pub(crate) fn single_term(&self) -> Option<(i64, u8, &GaussRational)> {
        if self.terms.len() == 1 {
            let ((p, s), g) = self.terms.iter().next().unwrap();
            Some((*p, *s, g))
        } else {
            None
        }
    }

    /// Floating-point value, substituting `pi = 3.14...` and `s = sqrt(t)`.
    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for (&(pi_half, s_exp), g) in &self.terms {
            let mut v = rational_to_f64(&g.re);
            v *= std::f64::consts::PI.powf(pi_half as f64 / 2.0);
            if s_exp == 1 {
                v *= rational_to_f64(&self.s_sq).sqrt();
            }
            // Imaginary parts have no place in a float oracle.
            debug_assert!(g.im.is_zero(), "to_f64 on a non-real scalar");
            acc += v;
        }
        acc
    }
}

/// Lossy conversion used only by floating-point oracles.
pub fn rational_to_f64(q: &Rational) -> f64 {
    let num = q.numer();
    let den = q.denom();
    // Good enough for oracle comparisons at 1% tolerance.
    let fnum: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let fden: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    fnum / fden
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let ctx = self.unified_ctx(rhs);
        let mut terms = self.terms.clone();
        for (k, g) in &rhs.terms {
            Scalar::add_term(&mut terms, *k, g.clone());
        }
        Scalar::normalized(terms, ctx)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let terms = self.terms.iter().map(|(k, g)| (*k, -g)).collect();
        Scalar::normalized(terms, self.s_sq.clone())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let ctx = self.unified_ctx(rhs);
        let mut terms: BTreeMap<Key, GaussRational> = BTreeMap::new();
        for (&(p1, s1), g1) in &self.terms {
            for (&(p2, s2), g2) in &rhs.terms {
                let mut coeff = g1 * g2;
                let mut s = s1 + s2;
                if s == 2 {
                    coeff = coeff.mul_rational(&ctx);
                    s = 0;
                }
                Scalar::add_term(&mut terms, (p1 + p2, s), coeff);
            }
        }
        Scalar::normalized(terms, ctx)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(pi_half, s_exp), g) in &self.terms {
            let neg = g.is_display_negative();
            let mag = if neg { -g } else { g.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", term_string(&mag, pi_half, s_exp))?;
        }
        Ok(())
    }
}

/// Render one scalar term `g * pi^(k/2) * s^e` with a non-negative-leading
/// coefficient `g`.
pub(crate) fn term_string(g: &GaussRational, pi_half: i64, s_exp: u8) -> String {
    let mut factors: Vec<String> = Vec::new();
    let has_symbolic = pi_half != 0 || s_exp == 1;
    if !(g.is_one() && has_symbolic) {
        factors.push(g.to_string());
    }
    if pi_half != 0 {
        factors.push(pi_string(pi_half));
    }
    if s_exp == 1 {
        factors.push("s".to_string());
    }
    factors.join("*")
}

fn pi_string(pi_half: i64) -> String {
    if pi_half == 2 {
        "pi".to_string()
    } else if pi_half % 2 == 0 {
        let e = pi_half / 2;
        if e >= 0 {
            format!("pi^{}", e)
        } else {
            format!("pi^({})", e)
        }
    } else {
        format!("pi^({}/2)", pi_half)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rational_inverse() {
        let g = GaussRational::new(rat(3, 2), rat(-1, 2));
        let inv = g.inv().unwrap();
        assert!((&g * &inv).is_one());
        assert!(GaussRational::zero().inv().is_none());
    }

    #[test]
    fn s_symbol_squares_to_context() {
        let t = rat_int(2);
        let s = Scalar::s_symbol(&t).unwrap();
        assert_eq!(&s * &s, Scalar::from_int(2));
        // 1/s = s/2
        let inv = s.try_inv().unwrap();
        assert_eq!(&s * &inv, Scalar::one());
    }

    #[test]
    fn s_symbol_collapses_on_perfect_squares() {
        assert_eq!(Scalar::s_symbol(&rat_int(1)).unwrap(), Scalar::one());
        assert_eq!(Scalar::s_symbol(&rat_int(0)).unwrap(), Scalar::zero());
        assert_eq!(
            Scalar::s_symbol(&rat(9, 4)).unwrap(),
            Scalar::from_rational(rat(3, 2))
        );
        assert!(Scalar::s_symbol(&rat_int(-1)).is_err());
    }

    #[test]
    fn pi_powers_combine() {
        let a = Scalar::sqrt_pi();
        assert_eq!(&a * &a, Scalar::pi());
        let inv = Scalar::pi().try_inv().unwrap();
        assert_eq!(&Scalar::pi() * &inv, Scalar::one());
    }

    #[test]
    fn plain_scalar_behaves_as_gauss_rational() {
        let a = Scalar::from_gauss(GaussRational::new(rat(1, 3), rat(2, 5)));
        let g = a.as_gauss().unwrap();
        assert_eq!(g, GaussRational::new(rat(1, 3), rat(2, 5)));
        assert!(Scalar::sqrt_pi().as_gauss().is_none());
    }

    #[test]
    fn conjugation_fixes_pi_and_s() {
        let t = rat_int(2);
        let z = &(&Scalar::i() * &Scalar::sqrt_pi()) * &Scalar::s_symbol(&t).unwrap();
        let c = z.conj();
        assert_eq!(&z + &c, Scalar::zero());
    }

    #[test]
    fn display_is_canonical() {
        let z = &Scalar::from_rational(rat(3, 2))
            + &(&Scalar::i() * &Scalar::pi_pow_half(1)).mul_rational(&rat(1, 2));
        assert_eq!(z.to_string(), "3/2 + 1/2i*pi^(1/2)");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((-&Scalar::pi()).to_string(), "-pi");
    }
}
