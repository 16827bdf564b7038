//! Acceptance gate: eleven numbered criteria, one printed verdict line each.
//!
//! Run with `cargo test -p jacobi-core --test acceptance -- --nocapture` to
//! see the per-criterion lines; every criterion states its own tolerance and
//! instance budget inline.

use std::time::{Duration, Instant};

use jacobi_core::chebyshev::{
    cheb_direct, cheb_recurrence, enumerate_multi_indices, ChebSequencePair,
};
use jacobi_core::instances::{stream_seed, InstanceRng};
use jacobi_core::inverse::{
    self, invert, invert_constant_interior, invert_sym_toeplitz, invert_toeplitz,
    ConstantInteriorSpec, ToeplitzSpec,
};
use jacobi_core::oracle::{dense_det, dense_invert, residual_inf_norm};
use jacobi_core::schrodinger::{apply, solve_ivp, wronskian, IvpSpec};
use jacobi_core::sturm_liouville::{boundary_first, boundary_second, resolvent_kernel};
use jacobi_core::{DenseMatrix, Error, GridFunction, JacobiCoefficients, DEFAULT_SINGULARITY_TOL};

fn report(criterion: u32, ok: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion:02} {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion:02}: {detail}");
}

/// Smallest wall time over `reps` runs; contention on sibling test threads
/// only ever inflates a single run.
fn best_of<R>(reps: usize, mut f: impl FnMut() -> R) -> (Duration, R) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..reps {
        let t0 = Instant::now();
        let r = f();
        best = best.min(t0.elapsed());
        out = Some(r);
    }
    (best, out.unwrap())
}

fn instance_of_size(seed: u64, m: usize, t: usize) -> JacobiCoefficients {
    InstanceRng::new(stream_seed(seed, m, t)).instance(m)
}

fn regular_instance(seed: u64, m: usize, t0: usize, filter_tol: f64) -> JacobiCoefficients {
    let mut t = t0;
    loop {
        let j = instance_of_size(seed, m, t);
        if inverse::regularity_scaled(&j, filter_tol).regular {
            return j;
        }
        t += 1;
    }
}

#[test]
fn criterion_01_golden_inverse() {
    let j = JacobiCoefficients::constant(1.0, 2.0, 1.0, 3).unwrap();
    let want = [[3.0, 2.0, 1.0], [2.0, 4.0, 2.0], [1.0, 2.0, 3.0]];
    let (elapsed, (inv, det)) = best_of(5, || {
        (
            invert(&j, DEFAULT_SINGULARITY_TOL).unwrap(),
            inverse::determinant(&j).to_f64().unwrap(),
        )
    });
    let mut worst = 0.0f64;
    for k in 0..3 {
        for s in 0..3 {
            worst = worst.max((inv.entries.get(k, s) - want[k][s] / 4.0).abs());
        }
    }
    let det_err = (det - 4.0).abs();
    // Independent routes to the same numbers.
    let oracle_inv = dense_invert(&j.to_dense()).unwrap();
    let sym = invert_sym_toeplitz(1.0, 2.0, 3, DEFAULT_SINGULARITY_TOL).unwrap();
    for k in 0..3 {
        for s in 0..3 {
            worst = worst.max((oracle_inv.get(k, s) - want[k][s] / 4.0).abs());
            worst = worst.max((sym.entries.get(k, s) - want[k][s] / 4.0).abs());
        }
    }
    let ok = worst <= 1e-12 && det_err <= 1e-12 && elapsed < Duration::from_millis(1);
    report(
        1,
        ok,
        &format!(
            "golden 3x3: entry err {worst:.2e}, det err {det_err:.2e}, {:.0} us",
            elapsed.as_secs_f64() * 1e6
        ),
    );
}

#[test]
fn criterion_02_sym_toeplitz_family() {
    let mut worst = 0.0f64;
    let (elapsed, _) = best_of(3, || {
        worst = 0.0;
        for m in 2..=10usize {
            let inv = invert_sym_toeplitz(1.0, 2.0, m, DEFAULT_SINGULARITY_TOL).unwrap();
            for k in 0..m {
                for s in 0..m {
                    let want = ((k.min(s) + 1) * (m - k.max(s))) as f64 / (m as f64 + 1.0);
                    worst = worst.max((inv.entries.get(k, s) - want).abs());
                }
            }
        }
    });
    let ok = worst <= 1e-10 && elapsed < Duration::from_millis(10);
    report(
        2,
        ok,
        &format!(
            "orders 2..10 closed form: entry err {worst:.2e}, {:.1} us total",
            elapsed.as_secs_f64() * 1e6
        ),
    );
}

#[test]
fn criterion_03_random_residuals() {
    const SEED: u64 = 0xC3;
    let start = Instant::now();
    let mut rng = InstanceRng::new(stream_seed(SEED, 0, 0));
    let mut tested = 0usize;
    let mut skipped = 0usize;
    let mut worst = 0.0f64;
    let mut trial = 0usize;
    while tested < 500 {
        let m = 2 + ((rng.uniform() * 63.0) as usize).min(62);
        let j = instance_of_size(SEED, m, trial);
        trial += 1;
        if !inverse::regularity_scaled(&j, 1e-6).regular {
            skipped += 1;
            continue;
        }
        tested += 1;
        let inv = invert(&j, DEFAULT_SINGULARITY_TOL).unwrap();
        let dense = j.to_dense();
        let left = residual_inf_norm(&dense, &inv.entries).unwrap();
        let right = residual_inf_norm(&inv.entries, &dense).unwrap();
        worst = worst.max(left).max(right);
    }
    let elapsed = start.elapsed();
    let ok = worst <= 1e-8 && elapsed < Duration::from_secs(30);
    report(
        3,
        ok,
        &format!(
            "500 regular instances (orders 2..64, {skipped} singular draws skipped): \
             worst residual {worst:.2e}, {:.2} s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_04_determinant_identity() {
    const SEED: u64 = 0xC4;
    let mut worst_rel = 0.0f64;
    let mut worst_pair = 0.0f64;
    let mut sign_matches = 0usize;
    let mut tested = 0usize;
    let mut trial = 0usize;
    let mut rng = InstanceRng::new(stream_seed(SEED, 0, 0));
    while tested < 200 {
        let m = 2 + ((rng.uniform() * 15.0) as usize).min(14);
        let j = instance_of_size(SEED, m, trial);
        trial += 1;
        if !inverse::regularity_scaled(&j, 1e-6).regular {
            continue;
        }
        tested += 1;
        let closed = inverse::determinant(&j).to_f64().unwrap();
        let dense = dense_det(&j.to_dense());
        worst_rel = worst_rel.max((closed - dense).abs() / dense.abs());
        if closed.signum() == dense.signum() {
            sign_matches += 1;
        }
        let inv = invert(&j, DEFAULT_SINGULARITY_TOL).unwrap();
        worst_pair = worst_pair.max((inv.det_inverse * dense - 1.0).abs());
    }
    let ok = worst_rel <= 1e-8 && worst_pair <= 1e-8 && sign_matches == tested;
    report(
        4,
        ok,
        &format!(
            "200 instances (orders 2..16): closed-form det vs oracle rel err {worst_rel:.2e}; \
             det(inverse)*det(matrix)-1 err {worst_pair:.2e}; sign finding: closed form carries \
             the sign of det itself on {sign_matches}/{tested}, so det(inverse) = +1/det, \
             not -1/det"
        ),
    );
}

#[test]
fn criterion_05_chebyshev_equivalence() {
    const SEED: u64 = 0xC5;
    fn binom(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        let mut out = 1u128;
        for i in 0..k.min(n - k) {
            out = out * (n - i) as u128 / (i + 1) as u128;
        }
        out
    }
    let mut counts_ok = true;
    for p in 1..=16usize {
        for m in 0..=p / 2 {
            let got = enumerate_multi_indices(p, m).unwrap().len() as u128;
            counts_ok &= got == binom((p - m) as u64, m as u64);
        }
    }
    let mut worst = 0.0f64;
    let mut rng = InstanceRng::new(stream_seed(SEED, 0, 0));
    for _ in 0..200 {
        let x: Vec<f64> = (0..13).map(|_| rng.in_range(-2.0, 2.0)).collect();
        let y: Vec<f64> = (0..13).map(|_| rng.in_range(-2.0, 2.0)).collect();
        let seqs = ChebSequencePair::new(&x, &y);
        for k in 1..=12i64 {
            let direct = cheb_direct(k, &seqs).unwrap();
            let rec = cheb_recurrence(k, &seqs).unwrap().to_f64().unwrap();
            worst = worst.max((rec - direct).abs() / direct.abs().max(1.0));
        }
    }
    let ok = counts_ok && worst <= 1e-12;
    report(
        5,
        ok,
        &format!(
            "multi-index counts match binomials through order 16: {counts_ok}; \
             direct sum vs recurrence on 200 pairs, k<=12: rel err {worst:.2e}"
        ),
    );
}

#[test]
fn criterion_06_resolvent_defining_equations() {
    const SEED: u64 = 0xC6;
    let mut worst = 0.0f64;
    for n in 0..=16usize {
        for t in 0..4 {
            // Well-conditioned draws keep the kernel O(1) so the absolute
            // residual bound is meaningful.
            let j = regular_instance(SEED, n + 2, 10 * t, 1e-2);
            let kernel = resolvent_kernel(&j, DEFAULT_SINGULARITY_TOL).unwrap();
            for s in 0..=n + 1 {
                let col =
                    GridFunction::new(n, (0..n + 2).map(|k| kernel.entry(k, s)).collect()).unwrap();
                let lcol = apply(&j, &col).unwrap();
                let target = GridFunction::dirac(s, n).unwrap();
                for k in 1..=n {
                    worst = worst.max((lcol[k] - target[k]).abs());
                }
                worst = worst.max((boundary_first(&j, &col) - target[0]).abs());
                worst = worst.max((boundary_second(&j, &col) - target[n + 1]).abs());
            }
        }
    }
    let ok = worst <= 1e-10;
    report(
        6,
        ok,
        &format!("kernel columns vs unit data, orders 2..18: residual {worst:.2e}"),
    );
}

#[test]
fn criterion_07_weighted_wronskian_constancy() {
    const SEED: u64 = 0xC7;
    let mut worst = 0.0f64;
    let mut dependent_exact = true;
    for t in 0..200 {
        let mut rng = InstanceRng::new(stream_seed(SEED, 0, t));
        let m = 2 + ((rng.uniform() * 31.0) as usize).min(30);
        let j = rng.instance(m);
        let n = j.n();
        let solution = |alpha: f64, beta: f64| {
            solve_ivp(
                &j,
                &IvpSpec {
                    m: 0,
                    alpha,
                    beta,
                    data: GridFunction::zeros(n),
                },
            )
            .unwrap()
        };
        let u = solution(rng.in_range(-2.0, 2.0), rng.in_range(-2.0, 2.0));
        let v = solution(rng.in_range(-2.0, 2.0), rng.in_range(-2.0, 2.0));
        let w = wronskian(&u, &v).unwrap();
        let rho_a: Vec<f64> = (0..=n + 1)
            .map(|k| j.companion_rho(k).unwrap().to_f64().unwrap() * j.a(k))
            .collect();
        let constant = rho_a[0] * w[0];
        // Deviation is relative to the products the Wronskian subtracts.
        let scale = (0..=n + 1)
            .map(|k| {
                let p = k.min(n);
                rho_a[k].abs() * (u[p] * v[p + 1]).abs().max((v[p] * u[p + 1]).abs())
            })
            .fold(0.0f64, f64::max)
            .max(1e-300);
        for k in 0..=n + 1 {
            worst = worst.max((rho_a[k] * w[k] - constant).abs() / scale);
        }
        // Doubling is exact, so a dependent pair must cancel to exact zeros.
        let dep = GridFunction::new(n, u.values().iter().map(|x| 2.0 * x).collect()).unwrap();
        let wd = wronskian(&u, &dep).unwrap();
        dependent_exact &= wd.values().iter().all(|x| *x == 0.0);
    }
    let ok = worst <= 1e-10 && dependent_exact;
    report(
        7,
        ok,
        &format!(
            "200 solution pairs, orders 2..32: worst constancy deviation {worst:.2e} \
             (relative to the subtracted products); dependent pairs exactly zero: {dependent_exact}"
        ),
    );
}

#[test]
fn criterion_08_singularity_grid() {
    let mut zeros_total = 0usize;
    let mut zeros_flagged = 0usize;
    let mut perturbed_regular = 0usize;
    for m in 3..=12usize {
        let n = m - 2;
        for k in 1..=n + 2 {
            let beta = 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 3.0)).cos();
            zeros_total += 1;
            let spec = ToeplitzSpec::new(1.0, beta, 1.0, m).unwrap();
            if let Err(Error::SingularMatrix(_)) = invert_toeplitz(&spec, DEFAULT_SINGULARITY_TOL) {
                zeros_flagged += 1;
            }
            let spec = ToeplitzSpec::new(1.0, beta + 1e-3, 1.0, m).unwrap();
            if invert_toeplitz(&spec, DEFAULT_SINGULARITY_TOL).is_ok() {
                perturbed_regular += 1;
            }
        }
    }
    let ok = zeros_flagged == zeros_total && perturbed_regular == zeros_total;
    report(
        8,
        ok,
        &format!(
            "orders 3..12: {zeros_flagged}/{zeros_total} spectrum points flagged singular, \
             {perturbed_regular}/{zeros_total} 1e-3 perturbations flagged regular"
        ),
    );
}

#[test]
fn criterion_09_cross_path_agreement() {
    const SEED: u64 = 0xC9;
    let mut rng = InstanceRng::new(stream_seed(SEED, 0, 0));
    let mut compared = 0usize;
    let mut worst = 0.0f64;
    let diff = |a: &DenseMatrix, b: &DenseMatrix| {
        let scale = a.max_abs().max(1e-300);
        let mut w = 0.0f64;
        for k in 0..a.order() {
            for s in 0..a.order() {
                w = w.max((a.get(k, s) - b.get(k, s)).abs() / scale);
            }
        }
        w
    };

    // Constant instances: closed form vs general recurrence, both signs of
    // the off-diagonal product.
    for t in 0..40 {
        let m = 3 + (t % 8);
        let alpha = rng.signed_magnitude(0.5, 2.0);
        let gamma = rng.signed_magnitude(0.5, 2.0);
        let beta = rng.in_range(-4.0, 4.0);
        let Ok(spec) = ToeplitzSpec::new(alpha, beta, gamma, m) else {
            continue;
        };
        let j = spec.to_coefficients();
        if !inverse::regularity_scaled(&j, 1e-6).regular {
            continue;
        }
        let fast = invert_toeplitz(&spec, DEFAULT_SINGULARITY_TOL).unwrap();
        let general = invert(&j, DEFAULT_SINGULARITY_TOL).unwrap();
        worst = worst.max(diff(&fast.entries, &general.entries));
        compared += 1;
        if (alpha - gamma).abs() < f64::EPSILON {
            let sym = invert_sym_toeplitz(alpha, beta, m, DEFAULT_SINGULARITY_TOL).unwrap();
            worst = worst.max(diff(&sym.entries, &general.entries));
            compared += 1;
        }
    }
    // Symmetric closed form against the general path.
    for t in 0..30 {
        let m = 2 + (t % 9);
        let alpha = rng.signed_magnitude(0.5, 2.0);
        let beta = rng.in_range(-4.0, 4.0);
        let j = JacobiCoefficients::constant(alpha, beta, alpha, m).unwrap();
        if !inverse::regularity_scaled(&j, 1e-6).regular {
            continue;
        }
        let sym = invert_sym_toeplitz(alpha, beta, m, DEFAULT_SINGULARITY_TOL).unwrap();
        let general = invert(&j, DEFAULT_SINGULARITY_TOL).unwrap();
        worst = worst.max(diff(&sym.entries, &general.entries));
        compared += 1;
    }
    // Free boundary rows over a constant interior.
    for t in 0..40 {
        let m = 3 + (t % 10);
        let spec = ConstantInteriorSpec::new(
            rng.signed_magnitude(0.5, 2.0),
            rng.in_range(-4.0, 4.0),
            rng.in_range(-4.0, 4.0),
            rng.signed_magnitude(0.5, 2.0),
            rng.signed_magnitude(0.5, 2.0),
            rng.in_range(-4.0, 4.0),
            rng.signed_magnitude(0.5, 2.0),
            m,
        )
        .unwrap();
        let j = spec.to_coefficients();
        if !inverse::regularity_scaled(&j, 1e-6).regular {
            continue;
        }
        let fast = invert_constant_interior(&spec, DEFAULT_SINGULARITY_TOL).unwrap();
        let general = invert(&j, DEFAULT_SINGULARITY_TOL).unwrap();
        worst = worst.max(diff(&fast.entries, &general.entries));
        compared += 1;
    }
    // General instances: explicit inverse vs the recurrence-built kernel.
    for t in 0..40 {
        let m = 2 + (t % 20);
        let j = regular_instance(SEED, m, 1000 + t, 1e-6);
        let explicit = invert(&j, DEFAULT_SINGULARITY_TOL).unwrap();
        let kernel = resolvent_kernel(&j, DEFAULT_SINGULARITY_TOL).unwrap();
        worst = worst.max(diff(&explicit.entries, kernel.entries()));
        compared += 1;
    }
    let ok = compared >= 100 && worst <= 1e-9;
    report(
        9,
        ok,
        &format!("{compared} overlapping-path comparisons: worst rel deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_10_scaling_robustness() {
    const SEED: u64 = 0xCA;
    // 2^332 and 2^-332 are within a half percent of 10^100 and 10^-100 and
    // scale every coefficient exactly, so the scaled run must reproduce the
    // base run bit-for-bit up to the final conversion. The literal decimal
    // factors are exercised alongside with a loose bound (their rounding
    // perturbs each coefficient independently).
    let exact_up = 2.0f64.powi(332);
    let exact_down = 2.0f64.powi(-332);
    let mut worst_exact = 0.0f64;
    let mut worst_decimal = 0.0f64;
    let mut all_finite = true;
    for (t, m) in [(0usize, 8usize), (1, 17), (2, 33), (3, 64), (4, 51)] {
        let j = regular_instance(SEED, m, 10 * t, 1e-6);
        let base = invert(&j, DEFAULT_SINGULARITY_TOL).unwrap();
        for factor in [exact_up, exact_down, 1e100, 1e-100] {
            let n = j.n();
            let a: Vec<f64> = (0..=n).map(|k| j.a(k) * factor).collect();
            let b: Vec<f64> = (0..=n + 1).map(|k| j.b(k) * factor).collect();
            let c: Vec<f64> = (0..=n).map(|k| j.c(k) * factor).collect();
            let scaled = JacobiCoefficients::new(n, &a, &b, &c).unwrap();
            let inv = invert(&scaled, DEFAULT_SINGULARITY_TOL).unwrap();
            let exact = factor == exact_up || factor == exact_down;
            for k in 0..j.size() {
                for s in 0..j.size() {
                    let got = inv.entries.get(k, s) * factor;
                    all_finite &= inv.entries.get(k, s).is_finite();
                    let want = base.entries.get(k, s);
                    let rel = (got - want).abs() / want.abs().max(1e-300);
                    if exact {
                        worst_exact = worst_exact.max(rel);
                    } else {
                        worst_decimal = worst_decimal.max(rel);
                    }
                }
            }
            // The scaled determinant leaves the plain range without hurting
            // the pipeline.
            assert!(!inv.d_j.is_zero());
        }
    }
    let ok = all_finite && worst_exact <= 1e-12 && worst_decimal <= 1e-6;
    report(
        10,
        ok,
        &format!(
            "orders 8..64 scaled by 2^(+-332) and 10^(+-100): all entries finite; \
             exact-factor deviation {worst_exact:.2e}, decimal-factor deviation {worst_decimal:.2e}"
        ),
    );
}

#[test]
fn criterion_11_performance_sanity() {
    const SEED: u64 = 0xCB;
    let big = regular_instance(SEED, 2048, 0, 1e-6);
    let (precompute, seqs) = best_of(5, || inverse::fundamental_seq_j(&big));
    assert_eq!(seqs.phi.len(), 2048);
    let (det_time, _) = best_of(5, || inverse::determinant(&big));
    let mut rng = InstanceRng::new(stream_seed(SEED, 0, 99));
    let f = GridFunction::new(2046, (0..2048).map(|_| rng.in_range(-1.0, 1.0)).collect()).unwrap();
    let (solve_time, solved) = best_of(5, || inverse::solve(&big, &f, DEFAULT_SINGULARITY_TOL));
    solved.unwrap();

    let mid = regular_instance(SEED, 512, 50, 1e-6);
    let (explicit_time, _) = best_of(3, || invert(&mid, DEFAULT_SINGULARITY_TOL).unwrap());
    let dense = mid.to_dense();
    let (oracle_time, _) = best_of(3, || dense_invert(&dense).unwrap());
    let speedup = oracle_time.as_secs_f64() / explicit_time.as_secs_f64();

    let bound = Duration::from_millis(50);
    let ok = precompute < bound && det_time < bound && solve_time < bound && speedup >= 10.0;
    report(
        11,
        ok,
        &format!(
            "order 2048: precompute {:.2} ms, det {:.2} ms, solve {:.2} ms (all linear-pass, \
             no inverse formed); order 512 explicit inverse {:.2} ms vs dense oracle {:.1} ms \
             ({speedup:.0}x)",
            precompute.as_secs_f64() * 1e3,
            det_time.as_secs_f64() * 1e3,
            solve_time.as_secs_f64() * 1e3,
            explicit_time.as_secs_f64() * 1e3,
            oracle_time.as_secs_f64() * 1e3
        ),
    );
}
