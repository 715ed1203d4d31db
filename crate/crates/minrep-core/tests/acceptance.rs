//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; a failing criterion fails its test.
//!
//! All tolerances are exact (structural equality in the scalar ring) except
//! where a Monte-Carlo oracle is specified (1% relative) and the two wall
//! clock budgets (5 s for the bracket identities, 10 s for the Bargmann
//! solver).

use std::time::Instant;

use minrep_core::fock::{self, CConvention, ModelParams};
use minrep_core::jordan::{self, AlgebraDescriptor};
use minrep_core::norms;
use minrep_core::poly::MultiPoly;
use minrep_core::pspace;
use minrep_core::report::SuiteConfig;
use minrep_core::scalar::{rat, rat_int, GaussRational, Rational, Scalar};
use minrep_core::schrodinger;
use minrep_core::suites::{run_suite, Suite};
use num_traits::One;

struct Criterion {
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion {
            name,
            failures: Vec::new(),
        }
    }

    fn require(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            eprintln!("{}: PASS", self.name);
        } else {
            eprintln!("{}: FAIL ({})", self.name, self.failures.join("; "));
            panic!("{} failed: {:?}", self.name, self.failures);
        }
    }
}

#[test]
fn criterion_1_sl2_identities() {
    let mut c = Criterion::new("criterion 1 (sl2 bracket identities)");
    let started = Instant::now();
    for r in [2usize, 3, 4] {
        let params = ModelParams::new(r);
        // alpha = (r-1)/4 and c = i sqrt(r-1)/2 by construction
        c.require(format!("alpha for r={}", r), params.alpha == rat(r as i64 - 1, 4));
        let c_sq = &params.c * &params.c;
        c.require(
            format!("c^2 = -(r-1)/4 for r={}", r),
            c_sq == Scalar::from_rational(rat(-(r as i64 - 1), 4)),
        );
        let report = fock::verify_sl2(&params, 6);
        c.require(
            format!("six exact operator identities at rank {}", r),
            report.pass && report.identities.len() == 6,
        );
        for id in &report.identities {
            c.require(
                format!("zero residual for `{}` at rank {}", id.identity, r),
                id.residual_terms.is_empty(),
            );
        }
    }
    let elapsed = started.elapsed();
    c.require(
        format!("runtime {:?} < 5 s", elapsed),
        elapsed.as_secs_f64() < 5.0,
    );
    c.finish();
}

#[test]
fn criterion_2_norm_constants() {
    let mut c = Criterion::new("criterion 2 (norm constants a_m, Monte-Carlo oracle)");
    for r in 1..=4usize {
        for m in 0..=6u64 {
            c.require(
                format!("a_m closed form r={} m={}", r, m),
                norms::a_for_degree(2 * m, r).unwrap() == norms::a_even_closed_form(m, r),
            );
            c.require(
                format!("a_(m+1/2) closed form r={} m={}", r, m),
                norms::a_for_degree(2 * m + 1, r).unwrap() == norms::a_odd_closed_form(m, r),
            );
        }
    }
    let grid: [(&[u64], i64, usize); 5] = [
        (&[0], 3, 1),
        (&[2], 6, 1),
        (&[1, 1], 8, 2),
        (&[3, 0], 9, 2),
        (&[0, 1, 2], 10, 3),
    ];
    for (k, n, r) in grid {
        let exact = norms::bergman_moment(k, n, r).unwrap();
        let est = norms::bergman_moment_mc(k, n, r, 400_000, 7);
        let err = norms::relative_error(&exact, est);
        c.require(
            format!("MC within 1% for k={:?} N={} r={} (err {:.5})", k, n, r, err),
            err < 0.01,
        );
    }
    c.finish();
}

#[test]
fn criterion_3_unitarity_recursion_and_skew_adjointness() {
    let mut c = Criterion::new("criterion 3 (c_m recursion, skew-adjoint pairing)");
    for r in 1..=3usize {
        match norms::solve_c_sequence(r, 5) {
            Ok(seq) => {
                // solve_c_sequence already certifies c_m = 1/(2m)! and
                // c_(m+1/2) = 1/(2m+1)!; spot-pin two of them
                c.require(
                    format!("c_1 = 1/2 at rank {}", r),
                    seq.c_for_degree(2) == &rat(1, 2),
                );
                c.require(
                    format!("c_(2+1/2) = 1/120 at rank {}", r),
                    seq.c_for_degree(5) == &rat(1, 120),
                );
            }
            Err(e) => c.require(format!("c-sequence at rank {}: {}", r, e), false),
        }
        // the displayed pairing identity, on all monomial pairs of degree
        // <= 8, with the constants that make the unitarity computation hold
        let params = ModelParams::with_convention(r, CConvention::UnitaryNormalized);
        let seq = norms::solve_c_sequence(r, 4).unwrap();
        for parity in [0u8, 1] {
            let mut m = 0u64;
            while 2 * m + parity as u64 + 2 <= 8 {
                let records = norms::check_skew_adjoint(&params, &seq, m, parity).unwrap();
                c.require(
                    format!(
                        "skew pairing r={} m={} parity={} ({} pairs)",
                        r,
                        m,
                        parity,
                        records.len()
                    ),
                    records.iter().all(|rec| rec.pass),
                );
                m += 1;
            }
        }
    }
    // documented finding: with the bracket-normalized constant the same
    // identity verifies with a plus sign instead
    let params = ModelParams::new(2);
    let seq = norms::solve_c_sequence(2, 3).unwrap();
    let phi = MultiPoly::one(2);
    let phi2 = MultiPoly::var(2, 0).pow(2);
    let lhs = norms::component_inner(&fock::rho_e(&params, &phi), &phi2, 2, 2)
        .unwrap()
        .mul_rational(&(Rational::one() / seq.c_for_degree(2)));
    let rhs = norms::component_inner(&phi, &fock::rho_f(&params, &phi2), 0, 2)
        .unwrap()
        .mul_rational(&(Rational::one() / seq.c_for_degree(0)));
    c.require(
        "bracket-constant pairing flips to rho(F)^* = +rho(E) (finding)",
        lhs == rhs && !lhs.is_zero(),
    );
    c.finish();
}

#[test]
fn criterion_4_reproducing_kernels() {
    let mut c = Criterion::new("criterion 4 (reproducing kernels H(.,w)^d)");
    for r in [1usize, 2] {
        let points: Vec<Vec<GaussRational>> = vec![
            (0..r).map(|_| GaussRational::from_rational(rat(1, 2))).collect(),
            (0..r).map(|i| GaussRational::from_int(i as i64 + 1)).collect(),
            (0..r)
                .map(|i| GaussRational::from_rational(rat(-1, 3 + i as i64)))
                .collect(),
        ];
        for parity in [0u8, 1] {
            let mut m = 0u64;
            while 2 * m + parity as u64 <= 6 {
                for (idx, w) in points.iter().enumerate() {
                    let records = norms::kernel_reproduce(r, m, parity, w).unwrap();
                    c.require(
                        format!(
                            "kernel r={} m={} parity={} point #{} ({} monomials)",
                            r,
                            m,
                            parity,
                            idx + 1,
                            records.len()
                        ),
                        records.iter().all(|rec| rec.pass),
                    );
                }
                m += 1;
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_5_fock_weight_ratio() {
    let mut c = Criterion::new("criterion 5 (Fock weight: constant norm ratio)");
    for r in [1usize, 2] {
        let seq = norms::solve_c_sequence(r, 4).unwrap();
        let report = norms::fock_norm_ratio(r, 6, &seq).unwrap();
        c.require(format!("ratio constant at rank {}", r), report.constant);
        // the constant itself is documentation: record that it is pi^r
        let expected = Scalar::pi_pow_half(2 * r as i64).to_string();
        eprintln!(
            "criterion 5 note: rank {} ratio = {} (expected {})",
            r,
            report.ratio.as_deref().unwrap_or("-"),
            expected
        );
        c.require(
            format!("ratio reported at rank {}", r),
            report.ratio.is_some(),
        );
    }
    c.finish();
}

#[test]
fn criterion_6_module_structure() {
    let mut c = Criterion::new("criterion 6 (module of translates: grading, inversion)");
    for alg in [AlgebraDescriptor::rank1(), AlgebraDescriptor::sym(2)] {
        let r = alg.rank;
        let n = alg.dim;
        let two_r = 2 * r as i64;
        let ps = pspace::build_pspace(&alg, 7).unwrap();
        let dims = ps.grading_dims();
        for (d, expected) in [(0i64, 1usize), (1, n), (two_r - 1, n), (two_r, 1)] {
            c.require(
                format!("rank {}: dim at degree {} is {}", r, d, expected),
                dims.get(&d) == Some(&expected),
            );
        }
        for (d, polys) in &ps.grading {
            for p in polys {
                let img = pspace::kappa_sigma(p, &alg).unwrap();
                c.require(
                    format!("rank {}: kappa(sigma) sends degree {} to {}", r, d, two_r - d),
                    img.homogeneous_degree() == Some(two_r - d),
                );
                c.require(
                    format!("rank {}: involution at degree {}", r, d),
                    pspace::kappa_sigma(&img, &alg).unwrap() == *p,
                );
            }
        }
        // kappa(sigma) tau against the adjugate expansion and the
        // independent Jordan-inverse oracle
        let tau = pspace::trace_poly(&alg);
        let img = pspace::kappa_sigma(&tau, &alg).unwrap();
        let delta = pspace::delta_poly(&alg);
        let adj = pspace::adjugate_polys(&alg);
        let mut tr_adj = MultiPoly::zero(n);
        for i in 0..r {
            tr_adj = &tr_adj + &adj[alg.entry_index(i, i)];
        }
        c.require(
            format!("rank {}: kappa(sigma) tau = -Delta tr(adj)", r),
            img == -&(&delta * &tr_adj),
        );
        let point: Vec<GaussRational> = (0..n)
            .map(|k| GaussRational::from_int(if k < r { k as i64 + 2 } else { 1 }))
            .collect();
        let elem = alg.from_entries(point.clone());
        let det = jordan::det_delta_gauss(&elem);
        if !det.is_zero() {
            let inv = jordan::inverse(&elem).unwrap();
            let expected = Scalar::from_gauss(&(&det * &det) * &-&inv.trace());
            c.require(
                format!("rank {}: numeric oracle through the Jordan inverse", r),
                img.eval_gauss(&point).unwrap() == expected,
            );
        }
    }
    c.finish();
}

#[test]
fn criterion_7_schrodinger_model() {
    let mut c = Criterion::new("criterion 7 (Schrödinger model: sl2 relations, L2 skewness)");
    // (a) the sl(2) relations with the bracket-normalized constants
    for r in [1usize, 2] {
        let params = ModelParams::new(r);
        for (name, pass) in schrodinger::check_schrodinger_sl2(&params, 6) {
            c.require(format!("rank {}: {}", r, name), pass);
        }
    }
    // (b) both displayed skew-symmetry relations.
    // Rank 1: exact with its own constants.
    let params1 = ModelParams::new(1);
    let records = schrodinger::check_l2_skew(&params1, 6);
    c.require(
        format!("rank 1: skew relations on {} pairs", records.len()),
        records.iter().all(|rec| rec.pass),
    );
    // Rank 2: exact with the unitary-normalized constant; with the
    // bracket-normalized constant the relations provably fail (a real
    // multiplication operator cannot be L2-skew) and that is the recorded
    // finding, not a gated check.
    let unitary = ModelParams::with_convention(2, CConvention::UnitaryNormalized);
    let records = schrodinger::check_l2_skew(&unitary, 4);
    c.require(
        format!(
            "rank 2 (c = sqrt(r-1)/2): skew relations on {} pairs",
            records.len()
        ),
        records.iter().all(|rec| rec.pass),
    );
    let bracket = ModelParams::new(2);
    let records = schrodinger::check_l2_skew(&bracket, 2);
    c.require(
        "rank 2 (c = i sqrt(r-1)/2): skew relations fail as printed (finding)",
        records.iter().any(|rec| !rec.pass),
    );
    c.finish();
}

#[test]
fn criterion_8_bargmann_intertwining() {
    let mut c = Criterion::new("criterion 8 (Bargmann intertwining: verdict and solver)");
    let started = Instant::now();
    let params = ModelParams::new(1);
    let report = schrodinger::solve_intertwine(&params, 8).unwrap();
    // definite verdict for the printed constants at basis cap 8
    c.require(
        "printed kernel residuals computed for H, E, F at cap 8",
        report.printed_kernel.basis_cap == 8 && report.printed_kernel.residuals.len() == 3,
    );
    eprintln!(
        "criterion 8 note: printed kernel (0, 1, -1/2) intertwines as printed: {}",
        report.printed_kernel.pass
    );
    // the solver either confirms the constants or outputs a solved kernel
    // with zero residual for all three operators simultaneously
    c.require(
        "solver confirms the printed constants or solves",
        report.printed_kernel.pass || !report.solutions.is_empty(),
    );
    for sol in &report.solutions {
        eprintln!(
            "criterion 8 note: solved kernel a={} b=+/-{} c0={} lambda={} (variant {:?})",
            sol.a, sol.b, sol.c0, sol.lambda, sol.variant
        );
        c.require("solution verified at cap 8", sol.verified_cap == 8);
    }
    let elapsed = started.elapsed();
    c.require(
        format!("runtime {:?} < 10 s", elapsed),
        elapsed.as_secs_f64() < 10.0,
    );
    c.finish();
}

#[test]
fn criterion_9_rank1_golden_suite() {
    let mut c = Criterion::new("criterion 9 (rank-1 golden suite)");
    // the golden suite gates every printed rank-1 formula
    let cfg = SuiteConfig {
        suite: "sl2-golden".to_string(),
        rank: 1,
        ..SuiteConfig::default()
    };
    let report = run_suite(Suite::Sl2Golden, &cfg).unwrap();
    for check in &report.checks {
        c.require(format!("golden: {}", check.name), check.pass);
    }
    for id in ["fock-weight-pi-normalization", "rank1-bridge-formulas"] {
        c.require(
            format!("finding `{}` recorded", id),
            report.findings.iter().any(|f| f.id == id),
        );
    }
    // pin the headline values here as well
    for m in 0..=5i64 {
        c.require(
            format!("a_m = pi/(2m+1), m={}", m),
            norms::a_for_degree(2 * m as u64, 1).unwrap()
                == &Scalar::pi() * &Scalar::from_rational(rat(1, 2 * m + 1)),
        );
        c.require(
            format!("a_(m+1/2) = pi/(2m+2), m={}", m),
            norms::a_for_degree(2 * m as u64 + 1, 1).unwrap()
                == &Scalar::pi() * &Scalar::from_rational(rat(1, 2 * m + 2)),
        );
    }
    let seq = norms::solve_c_sequence(1, 5).unwrap();
    c.require(
        "c_(m+1/2) = 1/(2m+1)! at m=2",
        seq.c_for_degree(5) == &rat_int(120).recip(),
    );
    c.finish();
}
