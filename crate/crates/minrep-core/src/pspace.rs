//! The module `p` spanned by the translates `Q(z - a)` of `Q = Delta^2`,
//! its grading by polynomial degree, and the inversion action
//! `kappa(sigma) p (z) = Q(z) p(-z^{-1})`.
//!
//! The basis is grown from translates at seeded small-integer points until
//! the rank stabilizes; `kappa(sigma)` is computed symbolically through the
//! adjugate, with exact cancellation of all `Delta` denominators (an
//! inexact division is a hard error, signalling `p` outside the module).

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::fock::monomials_of_max_degree;
use crate::jordan::{AlgebraDescriptor, AlgebraFamily};
use crate::linalg::{rational_mod_p, ModRowBasis, RowBasis};
use crate::poly::{LaurentPoly, MultiPoly, PolyError};
use crate::scalar::{GaussRational, Rational};


/// Errors from module construction and the inversion action.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PSpaceError {
    #[error("rank failed to stabilize within {0} samples")]
    RankNotStabilized(usize),
    #[error("algebra not supported for module construction (need Rank1 or Sym(r<=3))")]
    UnsupportedAlgebra,
    #[error("denominator failed to cancel: polynomial is outside the module")]
    DenominatorNotCancelled,
    #[error("dilation parameter must be nonzero")]
    ZeroDilation,
    #[error("graded rank does not certify the span rank: translate span is not graded")]
    GradingInconsistent,
    #[error("polynomial arithmetic: {0}")]
    Poly(#[from] PolyError),
}

/// Symbolic entry matrix of the algebra in its coordinates.
fn symbolic_matrix(algebra: &AlgebraDescriptor) -> Vec<Vec<MultiPoly>> {
    let n = algebra.dim;
    let r = algebra.rank;
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| MultiPoly::var(n, algebra.entry_index(i, j)))
                .collect()
        })
        .collect()
}

fn poly_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let nvars = m[0][0].nvars();
    match n {
        1 => m[0][0].clone(),
        _ => {
            let mut acc = MultiPoly::zero(nvars);
            for j in 0..n {
                let minor: Vec<Vec<MultiPoly>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&k| k != j)
                            .map(|k| m[i][k].clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &poly_det(&minor);
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

/// The Jordan determinant `Delta(z)` as a polynomial in the coordinates.
pub fn delta_poly(algebra: &AlgebraDescriptor) -> MultiPoly {
    match algebra.family {
        AlgebraFamily::Rank1 => MultiPoly::var(1, 0),
        AlgebraFamily::SymMatrices => poly_det(&symbolic_matrix(algebra)),
    }
}

/// `Q(z) = Delta(z)^2`, homogeneous of degree `2r`.
pub fn q_poly(algebra: &AlgebraDescriptor) -> MultiPoly {
    let d = delta_poly(algebra);
    &d * &d
}

/// The trace form `tau(z)` as a polynomial.
pub fn trace_poly(algebra: &AlgebraDescriptor) -> MultiPoly {
    let n = algebra.dim;
    let mut acc = MultiPoly::zero(n);
    for i in 0..algebra.rank {
        acc = &acc + &MultiPoly::var(n, algebra.entry_index(i, i));
    }
    acc
}

/// Adjugate entries as coordinate polynomials: `adj(z)_k` for each
/// coordinate `k`, satisfying `z * adj(z) = Delta(z) e`.
pub fn adjugate_polys(algebra: &AlgebraDescriptor) -> Vec<MultiPoly> {
    match algebra.family {
        AlgebraFamily::Rank1 => vec![MultiPoly::one(1)],
        AlgebraFamily::SymMatrices => {
            let m = symbolic_matrix(algebra);
            let r = algebra.rank;
            let n = algebra.dim;
            let mut out = vec![MultiPoly::zero(n); n];
            for i in 0..r {
                for j in i..r {
                    let minor: Vec<Vec<MultiPoly>> = (0..r)
                        .filter(|&a| a != j)
                        .map(|a| {
                            (0..r)
                                .filter(|&b| b != i)
                                .map(|b| m[a][b].clone())
                                .collect()
                        })
                        .collect();
                    let cof = if minor.is_empty() {
                        MultiPoly::one(n)
                    } else {
                        poly_det(&minor)
                    };
                    let signed = if (i + j) % 2 == 0 { cof } else { -&cof };
                    out[algebra.entry_index(i, j)] = signed;
                }
            }
            out
        }
    }
}

/// The module `p`: full basis plus its grading by total degree.
#[derive(Debug, Clone)]
pub struct PSpace {
    pub algebra: AlgebraDescriptor,
    pub seed: u64,
    pub basis: Vec<MultiPoly>,
    pub grading: BTreeMap<i64, Vec<MultiPoly>>,
    graded_rows: BTreeMap<i64, (BTreeMap<Vec<i64>, usize>, RowBasis)>,
}

/// Serializable envelope: basis in the text format, grading dims, seed.
#[derive(Debug, Clone, Serialize)]
pub struct PSpaceEnvelope {
    pub algebra: AlgebraDescriptor,
    pub seed: u64,
    pub dimension: usize,
    pub grading_dims: BTreeMap<i64, usize>,
    pub basis: Vec<String>,
}

const STABILIZATION_WINDOW: usize = 5;
const DEFAULT_SAMPLE_BUDGET: usize = 400;

/// Build the span of `{Q(z - a)}` over seeded small-integer points `a`,
/// growing until the rank is stable for five consecutive samples.
pub fn build_pspace(algebra: &AlgebraDescriptor, seed: u64) -> Result<PSpace, PSpaceError> {
    build_pspace_with(algebra, seed, DEFAULT_SAMPLE_BUDGET)
}

/// Mod-p coefficient vector of a polynomial with rational coefficients.
fn poly_mod_vector(
    p: &MultiPoly,
    index: &BTreeMap<Vec<i64>, usize>,
) -> Result<Vec<u64>, PSpaceError> {
    let mut out = vec![0u64; index.len()];
    for (e, c) in p.terms() {
        let g = c
            .as_gauss()
            .filter(|g| g.im.is_zero())
            .ok_or_else(|| PolyError::NonRationalCoefficient(c.to_string()))?;
        out[*index.get(e).expect("monomial in index space")] = rational_mod_p(&g.re);
    }
    Ok(out)
}

pub fn build_pspace_with(
    algebra: &AlgebraDescriptor,
    seed: u64,
    sample_budget: usize,
) -> Result<PSpace, PSpaceError> {
    if algebra.family == AlgebraFamily::SymMatrices && algebra.rank > 3 {
        return Err(PSpaceError::UnsupportedAlgebra);
    }
    let n = algebra.dim;
    let deg_cap = 2 * algebra.rank as i64;
    // Elimination runs per degree block (the module is graded); a mod-p
    // shadow over the whole coefficient space certifies afterwards that the
    // graded span has the same rank as the raw translate span.
    let full_monos = monomials_of_max_degree(n, deg_cap);
    let full_index: BTreeMap<Vec<i64>, usize> = full_monos
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let mut degree_monos: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    let mut graded_rows: BTreeMap<i64, (BTreeMap<Vec<i64>, usize>, RowBasis)> = BTreeMap::new();
    for d in 0..=deg_cap {
        let monos = crate::fock::monomials_of_degree(n, d);
        let index: BTreeMap<Vec<i64>, usize> = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let cols = index.len();
        graded_rows.insert(d, (index, RowBasis::new(cols)));
        degree_monos.insert(d, monos);
    }
    let q = q_poly(algebra);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shadow = ModRowBasis::new(full_index.len());
    let mut stale = 0usize;
    let mut samples = 0usize;
    let insert_translate = |shifted: &MultiPoly,
                                graded: &mut BTreeMap<i64, (BTreeMap<Vec<i64>, usize>, RowBasis)>,
                                shadow: &mut ModRowBasis|
     -> Result<bool, PSpaceError> {
        shadow.insert(poly_mod_vector(shifted, &full_index)?);
        let mut grew = false;
        for (d, comp) in shifted.homogeneous_components() {
            let (index, rows) = graded.get_mut(&d).expect("degree within cap");
            let vec = comp.to_gauss_vector(index)?;
            if rows.insert(vec) {
                grew = true;
            }
        }
        Ok(grew)
    };
    // Q itself is the a = 0 translate.
    insert_translate(&q, &mut graded_rows, &mut shadow)?;
    // Sample until the graded rank is stable for the window AND the raw
    // translate span (tracked mod p) has caught up with it: the graded
    // basis fills from few translates, the raw span needs one translate
    // per dimension.
    loop {
        let graded_rank: usize = graded_rows.values().map(|(_, rows)| rows.rank()).sum();
        if stale >= STABILIZATION_WINDOW && shadow.rank() == graded_rank {
            break;
        }
        if samples >= sample_budget {
            return Err(if stale >= STABILIZATION_WINDOW {
                PSpaceError::GradingInconsistent
            } else {
                PSpaceError::RankNotStabilized(sample_budget)
            });
        }
        samples += 1;
        let a: Vec<GaussRational> = (0..n)
            .map(|_| GaussRational::from_int(rng.gen_range(-3i64..=3)))
            .collect();
        let shifted = q.shift(&a)?;
        if insert_translate(&shifted, &mut graded_rows, &mut shadow)? {
            stale = 0;
        } else {
            stale += 1;
        }
    }
    // rank_p(raw span) <= rank(raw span) <= sum of graded ranks; equality
    // of the outer two certifies both numbers exactly and proves the raw
    // span graded.
    let graded_rank: usize = graded_rows.values().map(|(_, rows)| rows.rank()).sum();
    if shadow.rank() != graded_rank {
        return Err(PSpaceError::GradingInconsistent);
    }
    let mut grading: BTreeMap<i64, Vec<MultiPoly>> = BTreeMap::new();
    for (d, (_, rows)) in &graded_rows {
        if rows.rank() == 0 {
            continue;
        }
        let monos = &degree_monos[d];
        let polys: Vec<MultiPoly> = rows
            .rows()
            .iter()
            .map(|row| MultiPoly::from_gauss_vector(n, monos, row))
            .collect();
        grading.insert(*d, polys);
    }
    let basis: Vec<MultiPoly> = grading.values().flatten().cloned().collect();
    Ok(PSpace {
        algebra: *algebra,
        seed,
        basis,
        grading,
        graded_rows,
    })
}

impl PSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn grading_dims(&self) -> BTreeMap<i64, usize> {
        self.grading
            .iter()
            .map(|(d, polys)| (*d, polys.len()))
            .collect()
    }

    /// Exact membership test, component by component.
    pub fn contains(&self, p: &MultiPoly) -> Result<bool, PSpaceError> {
        if p.total_degree().unwrap_or(0) > 2 * self.algebra.rank as i64 {
            return Ok(false);
        }
        for (d, comp) in p.homogeneous_components() {
            let Some((index, rows)) = self.graded_rows.get(&d) else {
                return Ok(false);
            };
            let vec = comp.to_gauss_vector(index)?;
            if !rows.contains(&vec) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn envelope(&self) -> PSpaceEnvelope {
        PSpaceEnvelope {
            algebra: self.algebra,
            seed: self.seed,
            dimension: self.dimension(),
            grading_dims: self.grading_dims(),
            basis: self.basis.iter().map(|p| p.to_text("z")).collect(),
        }
    }
}

/// `kappa(sigma) p (z) = Delta(z)^2 p(-z^{-1})`, computed symbolically via
/// the adjugate with exact denominator cancellation.
pub fn kappa_sigma(p: &MultiPoly, algebra: &AlgebraDescriptor) -> Result<MultiPoly, PSpaceError> {
    let n = algebra.dim;
    assert_eq!(p.nvars(), n, "polynomial lives on the wrong algebra");
    if p.is_zero() {
        return Ok(MultiPoly::zero(n));
    }
    let delta = delta_poly(algebra);
    let neg_adj: Vec<MultiPoly> = adjugate_polys(algebra).iter().map(|a| -a).collect();
    let d_max = p.total_degree().expect("nonzero");
    // numerator of p(-z^{-1}) over the common denominator Delta^{d_max}
    let mut numerator = MultiPoly::zero(n);
    for (expts, coeff) in p.terms() {
        let d: i64 = expts.iter().sum();
        let mut term = MultiPoly::constant(n, coeff.clone());
        for (i, &e) in expts.iter().enumerate() {
            if e > 0 {
                term = &term * &neg_adj[i].pow(e as u32);
            }
        }
        term = &term * &delta.pow((d_max - d) as u32);
        numerator = &numerator + &term;
    }
    // kappa(sigma) p = Delta^2 * numerator / Delta^{d_max}
    if d_max <= 2 {
        Ok(&numerator * &delta.pow((2 - d_max) as u32))
    } else {
        let mut out = numerator;
        for _ in 0..(d_max - 2) {
            out = out
                .try_div_exact(&delta)
                .map_err(|_| PSpaceError::DenominatorNotCancelled)?;
        }
        Ok(out)
    }
}

fn rational_pow(q: &Rational, e: i64) -> Rational {
    let one = Rational::from_integer(1.into());
    let base = if e >= 0 { q.clone() } else { one.clone() / q.clone() };
    let mut acc = one;
    for _ in 0..e.unsigned_abs() {
        acc *= base.clone();
    }
    acc
}

/// Dilation action `kappa(l_lambda) p (z) = lambda^r p(lambda^{-1} z)`:
/// a monomial of degree `d` scales by `lambda^{r-d}`.
pub fn kappa_dilation(
    algebra: &AlgebraDescriptor,
    lambda: &Rational,
    p: &MultiPoly,
) -> Result<MultiPoly, PSpaceError> {
    if lambda.is_zero() {
        return Err(PSpaceError::ZeroDilation);
    }
    let r = algebra.rank as i64;
    let mut acc = MultiPoly::zero(p.nvars());
    for (d, comp) in p.homogeneous_components() {
        let factor = rational_pow(lambda, r - d);
        acc = &acc + &comp.scale_rational(&factor);
    }
    Ok(acc)
}

/// Coordinate inversion on functions of `X`: substitute `a_i -> a_i^{-1}`.
pub fn pi_sigma(phi: &LaurentPoly) -> LaurentPoly {
    phi.substitute_inverse()
}

/// Outcome of the intertwining check for `pi(sigma)` against the dilation
/// actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiSigmaIntertwine {
    pub lambda_exponent_via_pi_alpha: Rational,
    pub lambda_exponent_via_sigma: Rational,
    pub monomials_match: bool,
}

impl PiSigmaIntertwine {
    pub fn pass(&self) -> bool {
        self.monomials_match && self.lambda_exponent_via_pi_alpha == self.lambda_exponent_via_sigma
    }
}

/// Compare `pi_sigma . pi_alpha(l_lambda)` with `pi_alpha^sigma(l_lambda)
/// . pi_sigma` on the monomial `a^k`. The dilation scales `a^k` by
/// `lambda^{r alpha + (r-1) deg/2}` on the plain side and by
/// `lambda^{r alpha - (r-1) deg/2}` on the sigma side, so both composites
/// send `a^k` to `a^{-k}` with the same prefactor.
pub fn check_pi_sigma_intertwine(k: &[i64], r: usize, alpha: &Rational) -> PiSigmaIntertwine {
    let total: i64 = k.iter().sum();
    let r_alpha = Rational::from_integer((r as i64).into()) * alpha.clone();
    let half_shift = Rational::new((r as i64 - 1).into(), 2.into());
    // route 1: dilate a^k (degree `total`), then invert
    let e1 = &r_alpha + &(&half_shift * Rational::from_integer(total.into()));
    let m1: Vec<i64> = k.iter().map(|x| -x).collect();
    // route 2: invert to a^{-k} (degree `-total`), then dilate sigma-side
    let e2 = &r_alpha - &(&half_shift * Rational::from_integer((-total).into()));
    let m2: Vec<i64> = k.iter().map(|x| -x).collect();
    PiSigmaIntertwine {
        lambda_exponent_via_pi_alpha: e1,
        lambda_exponent_via_sigma: e2,
        monomials_match: m1 == m2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, Scalar};

    #[test]
    fn rank1_module_is_degree_two() {
        let alg = AlgebraDescriptor::rank1();
        let ps = build_pspace(&alg, 11).unwrap();
        assert_eq!(ps.dimension(), 3);
        let dims = ps.grading_dims();
        assert_eq!(dims[&0], 1);
        assert_eq!(dims[&1], 1);
        assert_eq!(dims[&2], 1);
    }

    #[test]
    fn sym2_grading_dimensions() {
        let alg = AlgebraDescriptor::sym(2);
        let ps = build_pspace(&alg, 11).unwrap();
        let dims = ps.grading_dims();
        assert_eq!(dims[&0], 1);
        assert_eq!(dims[&1], 3);
        assert_eq!(dims[&3], 3);
        assert_eq!(dims[&4], 1);
        // interior dimension is computed, not asserted against a source
        assert_eq!(ps.dimension(), dims.values().sum::<usize>());
    }

    #[test]
    fn kappa_sigma_rank1_tau() {
        // kappa(sigma) tau (z) = z^2 (-1/z) = -z
        let alg = AlgebraDescriptor::rank1();
        let tau = trace_poly(&alg);
        let img = kappa_sigma(&tau, &alg).unwrap();
        assert_eq!(img, -&tau);
    }

    #[test]
    fn kappa_sigma_sym2_tau() {
        // kappa(sigma) tau = -Delta(z) (z11 + z22), degree 3
        let alg = AlgebraDescriptor::sym(2);
        let tau = trace_poly(&alg);
        let img = kappa_sigma(&tau, &alg).unwrap();
        let delta = delta_poly(&alg);
        let expected = -&(&delta * &tau);
        assert_eq!(img, expected);
        assert_eq!(img.homogeneous_degree(), Some(3));
    }

    #[test]
    fn kappa_sigma_swaps_one_and_q() {
        for alg in [AlgebraDescriptor::rank1(), AlgebraDescriptor::sym(2)] {
            let one = MultiPoly::one(alg.dim);
            let q = q_poly(&alg);
            assert_eq!(kappa_sigma(&one, &alg).unwrap(), q);
            assert_eq!(kappa_sigma(&q, &alg).unwrap(), one);
        }
    }

    #[test]
    fn kappa_sigma_rejects_non_module_polynomials() {
        // z11^3 inverts to -adj11^3/Delta^3, which does not cancel
        let alg = AlgebraDescriptor::sym(2);
        let z11_cubed = MultiPoly::var(3, 0).pow(3);
        assert_eq!(
            kappa_sigma(&z11_cubed, &alg),
            Err(PSpaceError::DenominatorNotCancelled)
        );
    }

    #[test]
    fn kappa_sigma_is_involutive_and_swaps_degrees() {
        for alg in [AlgebraDescriptor::rank1(), AlgebraDescriptor::sym(2)] {
            let ps = build_pspace(&alg, 5).unwrap();
            let two_r = 2 * alg.rank as i64;
            for (d, polys) in &ps.grading {
                for p in polys {
                    let img = kappa_sigma(p, &alg).unwrap();
                    assert_eq!(img.homogeneous_degree(), Some(two_r - d));
                    assert!(ps.contains(&img).unwrap(), "image must stay in the module");
                    let back = kappa_sigma(&img, &alg).unwrap();
                    assert_eq!(&back, p);
                }
            }
        }
    }

    #[test]
    fn dilation_eigenvalues() {
        let alg = AlgebraDescriptor::sym(2);
        let lambda = rat(3, 2);
        let q = q_poly(&alg);
        // degree 2r scales by lambda^{-r}
        assert_eq!(
            kappa_dilation(&alg, &lambda, &q).unwrap(),
            q.scale_rational(&rational_pow(&lambda, -2))
        );
        let one = MultiPoly::one(alg.dim);
        assert_eq!(
            kappa_dilation(&alg, &lambda, &one).unwrap(),
            one.scale_rational(&rational_pow(&lambda, 2))
        );
        let tau = trace_poly(&alg);
        assert_eq!(
            kappa_dilation(&alg, &lambda, &tau).unwrap(),
            tau.scale_rational(&lambda)
        );
        assert_eq!(
            kappa_dilation(&alg, &Rational::zero(), &tau),
            Err(PSpaceError::ZeroDilation)
        );
    }

    #[test]
    fn inversion_conjugates_dilations() {
        // kappa(sigma) kappa(l_lambda) kappa(sigma) = kappa(l_{1/lambda})
        let alg = AlgebraDescriptor::sym(2);
        let ps = build_pspace(&alg, 5).unwrap();
        let lambda = rat_int(2);
        let inv_lambda = rat(1, 2);
        for p in &ps.basis {
            let lhs = kappa_sigma(
                &kappa_dilation(&alg, &lambda, &kappa_sigma(p, &alg).unwrap()).unwrap(),
                &alg,
            )
            .unwrap();
            let rhs = kappa_dilation(&alg, &inv_lambda, p).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn module_closed_under_translation() {
        let alg = AlgebraDescriptor::sym(2);
        let ps = build_pspace(&alg, 5).unwrap();
        let shifts = [
            vec![
                GaussRational::from_int(1),
                GaussRational::from_int(-2),
                GaussRational::from_int(3),
            ],
            vec![
                GaussRational::from_rational(rat(1, 2)),
                GaussRational::from_rational(rat(-1, 3)),
                GaussRational::from_int(0),
            ],
        ];
        for p in &ps.basis {
            for a in &shifts {
                let shifted = p.shift(a).unwrap();
                assert!(ps.contains(&shifted).unwrap());
            }
        }
    }

    #[test]
    fn pi_sigma_examples() {
        let m = LaurentPoly::monomial(2, vec![2, 2], Scalar::one());
        let inv = pi_sigma(&m);
        assert_eq!(inv, LaurentPoly::monomial(2, vec![-2, -2], Scalar::one()));
        assert_eq!(pi_sigma(&pi_sigma(&m)), m);
        for k in [vec![2i64, 0], vec![1, 3], vec![0, 0]] {
            let check = check_pi_sigma_intertwine(&k, 2, &rat(1, 4));
            assert!(check.pass(), "{:?}", check);
        }
    }

    #[test]
    fn sym3_grading_endpoints() {
        let alg = AlgebraDescriptor::sym(3);
        let ps = build_pspace(&alg, 11).unwrap();
        let dims = ps.grading_dims();
        assert_eq!(dims[&0], 1);
        assert_eq!(dims[&1], 6);
        assert_eq!(dims[&5], 6);
        assert_eq!(dims[&6], 1);
    }

    #[test]
    fn rank4_is_rejected() {
        let alg = AlgebraDescriptor::sym(4);
        assert_eq!(
            build_pspace(&alg, 1).unwrap_err(),
            PSpaceError::UnsupportedAlgebra
        );
    }

    #[test]
    fn envelope_serializes_and_round_trips_basis() {
        let alg = AlgebraDescriptor::sym(2);
        let ps = build_pspace(&alg, 11).unwrap();
        let env = ps.envelope();
        assert_eq!(env.dimension, ps.dimension());
        let json = serde_json::to_string(&env).unwrap();
        assert!(json.contains("grading_dims"));
        for (text, poly) in env.basis.iter().zip(&ps.basis) {
            let parsed = MultiPoly::parse(text, alg.dim, "z").unwrap();
            assert_eq!(&parsed, poly);
        }
    }
}
