//! Exact moment engines for the weighted-Bergman and Gaussian inner
//! products, the norm constants `a_m`, the unitarity recursion for `c_m`,
//! reproducing-kernel checks and skew-adjointness.
//!
//! Every integral in this module is an identity between rationals times
//! `pi^r` and is evaluated in closed form; numerical quadrature exists only
//! as a seeded Monte-Carlo oracle.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::fock::{monomials_of_degree, rho_e, rho_f, ModelParams};
use crate::poly::MultiPoly;
use crate::scalar::{GaussRational, Rational, Scalar};

/// Errors from the moment engines.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NormsError {
    #[error("divergent moment: weight exponent {n_weight} must exceed {needed}")]
    Divergent { n_weight: i64, needed: i64 },
    #[error("norm recursion mismatch at {index}: computed {computed}, closed form {expected}")]
    RecursionMismatch {
        index: String,
        computed: String,
        expected: String,
    },
    #[error("scalar arithmetic: {0}")]
    Scalar(#[from] crate::scalar::ScalarError),
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// `int_{C^r} prod |z_i|^(2 k_i) (1 + sum |z_j|^2)^(-N) m(dz)`
/// `= pi^r * prod k_i! / ((N-1)(N-2)...(N-r-|k|))`.
pub fn bergman_moment(k: &[u64], n_weight: i64, r: usize) -> Result<Scalar, NormsError> {
    assert_eq!(k.len(), r);
    let total: u64 = k.iter().sum();
    let needed = r as i64 + total as i64;
    if n_weight <= needed {
        return Err(NormsError::Divergent { n_weight, needed });
    }
    let mut num = BigInt::one();
    for &ki in k {
        num *= factorial(ki);
    }
    let mut den = BigInt::one();
    for j in (n_weight - needed)..=(n_weight - 1) {
        den *= BigInt::from(j);
    }
    let q = Rational::new(num, den);
    Ok(&Scalar::pi_pow_half(2 * r as i64) * &Scalar::from_rational(q))
}

/// `int z^a conj(z)^b (1 + sum |z|^2)^(-N) m(dz)`: zero unless `a = b` by
/// phase symmetry, otherwise [`bergman_moment`].
pub fn bergman_pair_moment(a: &[u64], b: &[u64], n_weight: i64) -> Result<Scalar, NormsError> {
    if a != b {
        return Ok(Scalar::zero());
    }
    bergman_moment(a, n_weight, a.len())
}

/// `int z^a conj(z)^b e^{-sum |z|^2} m(dz) = pi^r * prod a_i! * [a = b]`.
pub fn gauss_moment(a: &[u64], b: &[u64]) -> Scalar {
    assert_eq!(a.len(), b.len());
    if a != b {
        return Scalar::zero();
    }
    let mut num = BigInt::one();
    for &ai in a {
        num *= factorial(ai);
    }
    let r = a.len() as i64;
    &Scalar::pi_pow_half(2 * r) * &Scalar::from_rational(Rational::from_integer(num))
}

/// Seeded Monte-Carlo estimate of [`bergman_moment`] (floating point
/// oracle). Uses the substitution `u = t/(1-t)` per coordinate.
pub fn bergman_moment_mc(k: &[u64], n_weight: i64, r: usize, samples: u64, seed: u64) -> f64 {
    assert_eq!(k.len(), r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0.0f64;
    for _ in 0..samples {
        let mut weight = 1.0f64;
        let mut sum_u = 0.0f64;
        for &ki in k {
            let t: f64 = rng.gen_range(0.0..1.0);
            let one_minus = 1.0 - t;
            let u = t / one_minus;
            weight *= u.powi(ki as i32) / (one_minus * one_minus);
            sum_u += u;
        }
        acc += weight * (1.0 + sum_u).powi(-(n_weight as i32));
    }
    std::f64::consts::PI.powi(r as i32) * acc / samples as f64
}

/// Closed form `a_m = pi^r (2m)!/(2m+r)!`.
pub fn a_even_closed_form(m: u64, r: usize) -> Scalar {
    let q = Rational::new(factorial(2 * m), factorial(2 * m + r as u64));
    &Scalar::pi_pow_half(2 * r as i64) * &Scalar::from_rational(q)
}

/// Closed form `a_{m+1/2} = pi^r (2m+1)!/(2m+r+1)!`.
pub fn a_odd_closed_form(m: u64, r: usize) -> Scalar {
    let q = Rational::new(factorial(2 * m + 1), factorial(2 * m + 1 + r as u64));
    &Scalar::pi_pow_half(2 * r as i64) * &Scalar::from_rational(q)
}

/// The solved norm sequence: `a`-constants from the moment engine and
/// `c`-constants from the invariance recursion, certified against the
/// closed forms `1/(2m)!` and `1/(2m+1)!`.
#[derive(Debug, Clone, Serialize)]
pub struct NormSequence {
    pub r: usize,
    pub m_max: u64,
    /// `a_m` for `0 <= m <= m_max + 1`, as canonical scalar strings.
    pub a_even: Vec<String>,
    pub a_odd: Vec<String>,
    /// `c_m` and `c_{m+1/2}` for `0 <= m <= m_max`.
    pub c_even: Vec<String>,
    pub c_odd: Vec<String>,
    #[serde(skip)]
    c_even_vals: Vec<Rational>,
    #[serde(skip)]
    c_odd_vals: Vec<Rational>,
}

impl NormSequence {
    /// `c_d` for total degree `d` (`c_m` for `d = 2m`, `c_{m+1/2}` for
    /// `d = 2m+1`).
    pub fn c_for_degree(&self, d: u64) -> &Rational {
        if d.is_multiple_of(2) {
            &self.c_even_vals[(d / 2) as usize]
        } else {
            &self.c_odd_vals[(d / 2) as usize]
        }
    }
}

/// Weight exponent of the degree-`d` component norm:
/// `H(z)^{-d} m_0(dz) = H(z)^{-(d+r+1)} m(dz)`.
fn weight_exponent(d: u64, r: usize) -> i64 {
    d as i64 + r as i64 + 1
}

/// `a`-constant for the degree-`d` component, from the moment engine.
pub fn a_for_degree(d: u64, r: usize) -> Result<Scalar, NormsError> {
    bergman_moment(&vec![0; r], weight_exponent(d, r), r)
}

/// Run the invariance recursion `1/(c_{m+1} a_{m+1}) = (2m+r+1)(2m+r+2) /
/// (c_m a_m)` (and the odd analogue) with `c_0 = c_{1/2} = 1`, asserting
/// exact agreement with `c_m = 1/(2m)!`, `c_{m+1/2} = 1/(2m+1)!`.
pub fn solve_c_sequence(r: usize, m_max: u64) -> Result<NormSequence, NormsError> {
    assert!(m_max >= 1);
    let mut a_even = Vec::new();
    let mut a_odd = Vec::new();
    for m in 0..=(m_max + 1) {
        a_even.push(a_for_degree(2 * m, r)?);
        a_odd.push(a_for_degree(2 * m + 1, r)?);
    }
    let ratio = |num: &Scalar, den: &Scalar| -> Rational {
        // a_m/a_{m+1} is a plain rational; pi^r cancels.
        (num * &den.try_inv().expect("a-constants are invertible"))
            .as_rational()
            .expect("pi powers cancel in a-ratios")
    };
    // 1/(c_{m+1} a_{m+1}) = (2m+r+1)(2m+r+2)/(c_m a_m), so
    // c_{m+1} = c_m (a_m/a_{m+1}) / ((2m+r+1)(2m+r+2)); similarly for the
    // odd chain with factors (2m+r+2)(2m+r+3).
    let mut c_even_vals = vec![Rational::one()];
    let mut c_odd_vals = vec![Rational::one()];
    for m in 0..m_max {
        let k = 2 * m as i64;
        let factor = Rational::from_integer(BigInt::from((k + r as i64 + 1) * (k + r as i64 + 2)));
        let next = &c_even_vals[m as usize]
            * ratio(&a_even[m as usize], &a_even[m as usize + 1])
            / factor;
        c_even_vals.push(next);
        let factor_odd =
            Rational::from_integer(BigInt::from((k + r as i64 + 2) * (k + r as i64 + 3)));
        let next_odd = &c_odd_vals[m as usize]
            * ratio(&a_odd[m as usize], &a_odd[m as usize + 1])
            / factor_odd;
        c_odd_vals.push(next_odd);
    }
    for (m, c) in c_even_vals.iter().enumerate() {
        let expected = Rational::new(BigInt::one(), factorial(2 * m as u64));
        if c != &expected {
            return Err(NormsError::RecursionMismatch {
                index: format!("c_{}", m),
                computed: c.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    for (m, c) in c_odd_vals.iter().enumerate() {
        let expected = Rational::new(BigInt::one(), factorial(2 * m as u64 + 1));
        if c != &expected {
            return Err(NormsError::RecursionMismatch {
                index: format!("c_{}+1/2", m),
                computed: c.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    Ok(NormSequence {
        r,
        m_max,
        a_even: a_even.iter().map(|a| a.to_string()).collect(),
        a_odd: a_odd.iter().map(|a| a.to_string()).collect(),
        c_even: c_even_vals.iter().map(|c| c.to_string()).collect(),
        c_odd: c_odd_vals.iter().map(|c| c.to_string()).collect(),
        c_even_vals,
        c_odd_vals,
    })
}

fn exponents_u64(e: &[i64]) -> Vec<u64> {
    e.iter().map(|&x| x as u64).collect()
}

/// Sesquilinear Bergman pairing `int f conj(g) H^{-N} m(dz)` expanded
/// term-by-term with exact moments (the second argument is conjugated).
pub fn bergman_inner(f: &MultiPoly, g: &MultiPoly, n_weight: i64) -> Result<Scalar, NormsError> {
    let mut acc = Scalar::zero();
    for (ef, cf) in f.terms() {
        for (eg, cg) in g.terms() {
            if ef != eg {
                continue;
            }
            let moment = bergman_moment(&exponents_u64(ef), n_weight, f.nvars())?;
            acc = &acc + &(&(cf * &cg.conj()) * &moment);
        }
    }
    Ok(acc)
}

/// Normalized inner product `(f|g)_d` of the degree-`d` component space.
pub fn component_inner(
    f: &MultiPoly,
    g: &MultiPoly,
    d: u64,
    r: usize,
) -> Result<Scalar, NormsError> {
    let n = weight_exponent(d, r);
    let a = a_for_degree(d, r)?;
    let raw = bergman_inner(f, g, n)?;
    Ok(&raw * &a.try_inv()?)
}

/// One record of a norm-engine check, in the module's JSON shape.
#[derive(Debug, Clone, Serialize)]
pub struct NormCheckRecord {
    pub check: String,
    pub r: usize,
    pub m: String,
    pub parity: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// Verify the displayed pairing identity behind `rho(F)^* = -rho(E)`:
/// `(1/c_{m+1}) (rho(E) phi | phi') = -(1/c_m) (phi | rho(F) phi')` on all
/// monomial pairs of the degree-`d`/`d+2` component spaces.
pub fn check_skew_adjoint(
    params: &ModelParams,
    seq: &NormSequence,
    m: u64,
    parity: u8,
) -> Result<Vec<NormCheckRecord>, NormsError> {
    assert!(parity < 2);
    let r = params.r;
    let d = 2 * m + parity as u64;
    let c_cur = seq.c_for_degree(d).clone();
    let c_next = seq.c_for_degree(d + 2).clone();
    let mut records = Vec::new();
    let parity_name = if parity == 0 { "even" } else { "odd" };
    for alpha in monomials_of_degree(r, d as i64) {
        let phi = MultiPoly::monomial(r, alpha.clone(), Scalar::one());
        for beta in monomials_of_degree(r, d as i64 + 2) {
            let phi2 = MultiPoly::monomial(r, beta.clone(), Scalar::one());
            let lhs = component_inner(&rho_e(params, &phi), &phi2, d + 2, r)?
                .mul_rational(&(Rational::one() / &c_next));
            let rhs = component_inner(&phi, &rho_f(params, &phi2), d, r)?
                .mul_rational(&(Rational::one() / &c_cur));
            let residual = &lhs + &rhs;
            let pass = residual.is_zero();
            records.push(NormCheckRecord {
                check: format!("skew[{} | {}]", phi, phi2),
                r,
                m: m.to_string(),
                parity: parity_name.to_string(),
                expected: format!("-({})", rhs),
                computed: lhs.to_string(),
                pass,
            });
        }
    }
    Ok(records)
}

/// Check `<f, H(., w)^d>_d = f(w)` for every monomial `f` of degree `d`
/// (`d = 2m + parity`) at the rational point `w`.
pub fn kernel_reproduce(
    r: usize,
    m: u64,
    parity: u8,
    w: &[GaussRational],
) -> Result<Vec<NormCheckRecord>, NormsError> {
    assert!(parity < 2);
    assert_eq!(w.len(), r);
    let d = 2 * m + parity as u64;
    // K_w(z) = (1 + sum z_i conj(w_i))^d
    let mut kernel = MultiPoly::one(r);
    for (i, wi) in w.iter().enumerate() {
        let term = MultiPoly::var(r, i).scale(&Scalar::from_gauss(wi.conj()));
        kernel = &kernel + &term;
    }
    let kernel = kernel.pow(d as u32);
    let parity_name = if parity == 0 { "even" } else { "odd" };
    let mut records = Vec::new();
    for alpha in monomials_of_degree(r, d as i64) {
        let f = MultiPoly::monomial(r, alpha.clone(), Scalar::one());
        let pairing = component_inner(&f, &kernel, d, r)?;
        let expected = f.eval_gauss(w).expect("dimension checked");
        records.push(NormCheckRecord {
            check: format!("kernel[{} at w]", f),
            r,
            m: m.to_string(),
            parity: parity_name.to_string(),
            expected: expected.to_string(),
            computed: pairing.to_string(),
            pass: pairing == expected,
        });
    }
    Ok(records)
}

/// Result of the Fock-weight ratio measurement.
#[derive(Debug, Clone, Serialize)]
pub struct RatioReport {
    pub r: usize,
    pub degree_cap: u64,
    /// Ratio (Gaussian norm)/(c-weighted Bergman norm) per monomial.
    pub ratios: Vec<String>,
    pub constant: bool,
    pub ratio: Option<String>,
}

/// Compute the ratio of the Gaussian (Fock-weight) squared norm to the
/// `c`-weighted Bergman squared norm on every monomial of degree <= cap.
/// Constancy across the basis is the structural content of the
/// weighted-Bergman identification; the value is reported as a
/// normalization finding.
pub fn fock_norm_ratio(
    r: usize,
    degree_cap: u64,
    seq: &NormSequence,
) -> Result<RatioReport, NormsError> {
    let mut ratios = Vec::new();
    let mut values: Vec<Scalar> = Vec::new();
    for d in 0..=degree_cap {
        for alpha in monomials_of_degree(r, d as i64) {
            let k = exponents_u64(&alpha);
            let gaussian = gauss_moment(&k, &k);
            let component = bergman_moment(&k, weight_exponent(d, r), r)?;
            let a = a_for_degree(d, r)?;
            let bergman_c = (&component * &a.try_inv()?)
                .mul_rational(&(Rational::one() / seq.c_for_degree(d)));
            let ratio = &gaussian * &bergman_c.try_inv()?;
            ratios.push(format!("z^{:?}: {}", alpha, ratio));
            values.push(ratio);
        }
    }
    let constant = values.windows(2).all(|w| w[0] == w[1]);
    Ok(RatioReport {
        r,
        degree_cap,
        ratios,
        constant,
        ratio: values.first().map(|v| v.to_string()),
    })
}

/// `H(z) = 1 + sum |z_i|^2` at an exact point.
pub fn h_value(z: &[GaussRational]) -> Rational {
    let mut acc = Rational::one();
    for zi in z {
        acc += zi.norm_sq();
    }
    acc
}

/// Relative error helper for the Monte-Carlo oracle tests.
pub fn relative_error(exact: &Scalar, estimate: f64) -> f64 {
    let e = exact.to_f64();
    if e == 0.0 {
        estimate.abs()
    } else {
        ((estimate - e) / e).abs()
    }
}

/// True when the rational is positive (integrability guards in callers).
pub fn is_positive(q: &Rational) -> bool {
    q.is_positive() && q.to_f64().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::CConvention;
    use crate::scalar::rat;

    #[test]
    fn rank1_a_constants_match_closed_forms() {
        // a_m = pi/(2m+1), a_{m+1/2} = pi/(2m+2)
        for m in 0..=6u64 {
            let a = a_for_degree(2 * m, 1).unwrap();
            let expected = &Scalar::pi() * &Scalar::from_rational(rat(1, 2 * m as i64 + 1));
            assert_eq!(a, expected);
            let a_half = a_for_degree(2 * m + 1, 1).unwrap();
            let expected = &Scalar::pi() * &Scalar::from_rational(rat(1, 2 * m as i64 + 2));
            assert_eq!(a_half, expected);
        }
    }

    #[test]
    fn closed_forms_match_engine() {
        for r in 1..=4usize {
            for m in 0..=6u64 {
                assert_eq!(a_for_degree(2 * m, r).unwrap(), a_even_closed_form(m, r));
                assert_eq!(a_for_degree(2 * m + 1, r).unwrap(), a_odd_closed_form(m, r));
            }
        }
    }

    #[test]
    fn moment_examples() {
        // k=(2m), N=2m+2, r=1 -> pi (2m)!/(2m+1)! = pi/(2m+1)
        for m in 1..=3u64 {
            let got = bergman_moment(&[2 * m], 2 * m as i64 + 2, 1).unwrap();
            let expected = &Scalar::pi() * &Scalar::from_rational(rat(1, 2 * m as i64 + 1));
            assert_eq!(got, expected);
        }
        // divergence guard
        assert!(matches!(
            bergman_moment(&[3], 4, 1),
            Err(NormsError::Divergent { .. })
        ));
        // cross moments vanish
        assert_eq!(
            bergman_pair_moment(&[1, 0], &[0, 1], 9).unwrap(),
            Scalar::zero()
        );
    }

    #[test]
    fn gauss_moment_examples() {
        assert_eq!(gauss_moment(&[0], &[0]), Scalar::pi());
        assert_eq!(gauss_moment(&[1], &[1]), Scalar::pi());
        assert_eq!(gauss_moment(&[1], &[2]), Scalar::zero());
        let got = gauss_moment(&[2, 1], &[2, 1]);
        let expected = &Scalar::pi_pow_half(4) * &Scalar::from_int(2);
        assert_eq!(got, expected);
    }

    #[test]
    fn monte_carlo_oracle_agrees() {
        let cases: [(&[u64], i64, usize); 4] = [
            (&[0], 2, 1),
            (&[2], 6, 1),
            (&[1, 1], 8, 2),
            (&[0, 1, 2], 9, 3),
        ];
        for (k, n, r) in cases {
            let exact = bergman_moment(k, n, r).unwrap();
            let est = bergman_moment_mc(k, n, r, 400_000, 7);
            let err = relative_error(&exact, est);
            assert!(err < 0.01, "MC error {} for k={:?} N={} r={}", err, k, n, r);
        }
        // the k = (2m), N = 2m+2 family at rank 1, m <= 3
        for m in 1..=3u64 {
            let exact = bergman_moment(&[2 * m], 2 * m as i64 + 2, 1).unwrap();
            let est = bergman_moment_mc(&[2 * m], 2 * m as i64 + 2, 1, 400_000, 7);
            assert!(relative_error(&exact, est) < 0.01, "m={}", m);
        }
    }

    #[test]
    fn c_sequence_solves_to_inverse_factorials() {
        for r in 1..=3usize {
            let seq = solve_c_sequence(r, 5).unwrap();
            assert_eq!(seq.c_for_degree(2), &rat(1, 2));
            assert_eq!(seq.c_for_degree(3), &rat(1, 6));
            assert_eq!(
                seq.c_for_degree(10),
                &Rational::new(1.into(), factorial(10))
            );
        }
    }

    #[test]
    fn skew_adjoint_rank1_example() {
        // r=1, phi=1, phi'=z^2: both sides equal i exactly.
        let params = ModelParams::new(1);
        let seq = solve_c_sequence(1, 3).unwrap();
        let phi = MultiPoly::one(1);
        let phi2 = MultiPoly::var(1, 0).pow(2);
        let lhs = component_inner(&rho_e(&params, &phi), &phi2, 2, 1)
            .unwrap()
            .mul_rational(&(Rational::one() / seq.c_for_degree(2)));
        assert_eq!(lhs, Scalar::i());
        let rhs = component_inner(&phi, &rho_f(&params, &phi2), 0, 1)
            .unwrap()
            .mul_rational(&(Rational::one() / seq.c_for_degree(0)));
        assert_eq!(&lhs + &rhs, Scalar::zero());
    }

    #[test]
    fn skew_adjoint_all_pairs_small() {
        // The displayed pairing identity holds with the unitary-normalized
        // constant (purely imaginary prefactor). Rank 1 already is.
        for r in [1usize, 2] {
            let params = ModelParams::with_convention(r, CConvention::UnitaryNormalized);
            let seq = solve_c_sequence(r, 4).unwrap();
            for parity in [0u8, 1] {
                for m in 0..=1u64 {
                    let records = check_skew_adjoint(&params, &seq, m, parity).unwrap();
                    assert!(
                        records.iter().all(|c| c.pass),
                        "r={} m={} parity={}",
                        r,
                        m,
                        parity
                    );
                }
            }
        }
    }

    #[test]
    fn skew_adjoint_sign_flips_with_bracket_constants() {
        // With c = i*sqrt(r-1)/2 the prefactor is real and the identity
        // acquires a plus sign: rho(F)^* = +rho(E). Recorded as a finding.
        let params = ModelParams::new(2);
        let seq = solve_c_sequence(2, 3).unwrap();
        let records = check_skew_adjoint(&params, &seq, 0, 0).unwrap();
        // every pairing that is nonzero fails the minus-sign identity...
        assert!(records
            .iter()
            .any(|c| !c.pass && c.computed != "0"));
        // ...but the plus-sign identity holds: lhs == rhs exactly.
        let phi = MultiPoly::one(2);
        let phi2 = MultiPoly::var(2, 0).pow(2);
        let lhs = component_inner(&rho_e(&params, &phi), &phi2, 2, 2)
            .unwrap()
            .mul_rational(&(Rational::one() / seq.c_for_degree(2)));
        let rhs = component_inner(&phi, &rho_f(&params, &phi2), 0, 2)
            .unwrap()
            .mul_rational(&(Rational::one() / seq.c_for_degree(0)));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Scalar::from_rational(rat(-1, 2)));
    }

    #[test]
    fn kernel_reproduces_point_values() {
        // r=1, m=1, f=z^2, w=1/2 -> 1/4
        let w = vec![GaussRational::from_rational(rat(1, 2))];
        let records = kernel_reproduce(1, 1, 0, &w).unwrap();
        assert!(records.iter().all(|c| c.pass));
        let f_z2 = records.iter().find(|c| c.check.contains("z1^2")).unwrap();
        assert_eq!(f_z2.computed, "1/4");
        // r=2, m=1, f=z1 z2, w=(1,1) -> 1
        let w = vec![GaussRational::from_int(1), GaussRational::from_int(1)];
        let records = kernel_reproduce(2, 1, 0, &w).unwrap();
        assert!(records.iter().all(|c| c.pass));
        // complex rational points exercise the conjugations
        let w = vec![GaussRational::new(rat(3, 5), rat(4, 5))];
        let records = kernel_reproduce(1, 2, 1, &w).unwrap();
        assert!(records.iter().all(|c| c.pass));
    }

    #[test]
    fn fock_weight_ratio_is_pi_to_r() {
        for r in [1usize, 2] {
            let seq = solve_c_sequence(r, 4).unwrap();
            let report = fock_norm_ratio(r, 6, &seq).unwrap();
            assert!(report.constant);
            let expected = Scalar::pi_pow_half(2 * r as i64);
            assert_eq!(report.ratio.as_deref(), Some(expected.to_string().as_str()));
        }
    }

    #[test]
    fn h_is_phase_invariant() {
        let z = vec![
            GaussRational::new(rat(1, 2), rat(1, 3)),
            GaussRational::new(rat(-2, 5), rat(0, 1)),
        ];
        let phases = [
            GaussRational::i(),
            GaussRational::new(rat(3, 5), rat(4, 5)),
            GaussRational::new(rat(-5, 13), rat(12, 13)),
        ];
        let h0 = h_value(&z);
        for p in phases {
            assert_eq!(p.norm_sq(), Rational::one(), "phase must be unit modulus");
            let rotated: Vec<GaussRational> = z.iter().map(|zi| &p * zi).collect();
            assert_eq!(h_value(&rotated), h0);
        }
    }
}
