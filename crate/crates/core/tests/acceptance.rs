//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use foldy_core::closedform::{cal_hfw_closed, classical_comparison};
use foldy_core::coeffs::{verify_identity, Identity};
use foldy_core::golden;
use foldy_core::kutzelnigg::{
    assemble_cal_hfw, assemble_hfw, dirac_series, lower_block, lower_block_direct, pauli_series,
    theorem_closed_form, Theorem,
};
use foldy_core::linalg::{frobenius2, scalar2, sigma_dot};
use foldy_core::matrixlab::{
    case1_trials, case2_trials, charge_conjugate_block, gaussian_invsqrt, massless_case,
    series_vs_closed_sweep, spectral_invsqrt, SweepLine,
};
use foldy_core::{FieldPoint, PhysicalParams};
use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SERIES_REL: f64 = 1e-9;
const BLOCK_REL: f64 = 1e-10;
const MASSLESS_ABS: f64 = 1e-14;
const CLASSICAL_REL: f64 = 1e-9;
const QUADRATURE_ABS: f64 = 1e-8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn params(mu_prime: f64) -> PhysicalParams {
    PhysicalParams {
        m: 1.3,
        c: 2.1,
        q: 0.9,
        hbar: 0.7,
        mu_prime,
    }
}

fn weak_line() -> SweepLine {
    SweepLine {
        direction: Vector3::new(0.3, -0.5, 0.8),
        e: Vector3::new(1e-3, 2e-3, -1.5e-3),
        b: Vector3::new(-2e-3, 1e-3, 3e-3),
        phi: 0.2,
    }
}

fn golden_tables() -> Outcome {
    let g = golden::tables();
    let dirac = dirac_series(g.dirac.max_order).unwrap();
    let pauli = pauli_series(&dirac, g.pauli.max_order).unwrap();
    let (md, mp) = (g.dirac.mismatches(&dirac), g.pauli.mismatches(&pauli));
    outcome(
        md.is_empty() && mp.is_empty(),
        format!("X_1..X_{} mismatches {md:?}, X'_3..X'_{} mismatches {mp:?}", g.dirac.max_order, g.pauli.max_order),
    )
}

fn theorem1() -> Outcome {
    let n_max = 31;
    let x = dirac_series(n_max).unwrap();
    let bad: Vec<usize> = (0..=n_max)
        .filter(|&n| x.entry(n) != &theorem_closed_form(Theorem::T1, n).unwrap())
        .collect();
    outcome(bad.is_empty(), format!("n <= {n_max}, failing orders {bad:?}"))
}

fn theorem2() -> Outcome {
    let n_max = 30;
    let x = dirac_series(n_max).unwrap();
    let xp = pauli_series(&x, n_max).unwrap();
    let mut bad: Vec<usize> = (2..=n_max)
        .filter(|&n| xp.entry(n) != &theorem_closed_form(Theorem::T2, n).unwrap())
        .collect();
    if !xp.entry(0).is_zero() || !xp.entry(1).is_zero() {
        bad.insert(0, 0);
    }
    outcome(bad.is_empty(), format!("n <= {n_max}, failing orders {bad:?}"))
}

fn identities() -> Outcome {
    let j_max = 200;
    let failures: Vec<String> = Identity::ALL
        .iter()
        .map(|&id| verify_identity(id, j_max))
        .filter_map(|r| r.first_failure().map(|f| format!("{}@{}", f.identity, f.j)))
        .collect();
    outcome(failures.is_empty(), format!("A-F for j <= {j_max}, first failures {failures:?}"))
}

fn hermiticity() -> Outcome {
    let h = assemble_hfw(30).unwrap().antihermitian_orders();
    let cal = assemble_cal_hfw(30).unwrap().antihermitian_orders();
    outcome(
        h.is_empty() && cal.is_empty(),
        format!("orders <= 30 with antihermitian terms: H_FW {h:?}, Dirac-Pauli {cal:?}"),
    )
}

fn resummation() -> Outcome {
    let line = weak_line();
    let mut worst = 0.0f64;
    let mut diverges = true;
    let mut finite = true;
    for (h, p) in [
        (assemble_hfw(30).unwrap(), params(0.0)),
        (assemble_cal_hfw(30).unwrap(), params(0.35)),
    ] {
        for r in series_vs_closed_sweep(&p, &h, &line, &[0.2, 0.4, 0.6], &[30]).unwrap() {
            worst = worst.max(r.errors[0].1);
        }
        let r = &series_vs_closed_sweep(&p, &h, &line, &[1.2], &[10, 20, 30]).unwrap()[0];
        let e: Vec<f64> = r.errors.iter().map(|x| x.1).collect();
        diverges &= e[2] > e[1] && e[1] > e[0];
        finite &= r.closed_plus.is_finite() && r.closed_minus.is_finite();
    }
    outcome(
        worst <= SERIES_REL && diverges && finite,
        format!("max rel error at order 30 {worst:.2e} (tol {SERIES_REL:.0e}); diverges at 1.2: {diverges}"),
    )
}

fn case1() -> Outcome {
    let s = case1_trials(&params(0.0), 100, 7).unwrap();
    let m = scalar2(1.5) + sigma_dot(&Vector3::new(0.2, 0.3, -0.4));
    let (_, dev) = massless_case(&params(0.0), &m).unwrap();
    outcome(
        s.pass && s.max_offdiag <= BLOCK_REL && s.max_upper <= BLOCK_REL && dev <= MASSLESS_ABS,
        format!(
            "{} trials: offdiag {:.2e}, upper {:.2e}, unitarity {:.2e}; massless |U - W| {dev:.1e} (tol {MASSLESS_ABS:.0e})",
            s.trials, s.max_offdiag, s.max_upper, s.max_unitarity
        ),
    )
}

fn case2() -> Outcome {
    let p = PhysicalParams {
        q: 0.0,
        ..params(0.35)
    };
    let s = case2_trials(&p, 100, 11).unwrap();
    outcome(
        s.pass && s.max_offdiag <= BLOCK_REL && s.max_upper <= BLOCK_REL,
        format!(
            "{} trials: offdiag {:.2e}, upper {:.2e}, unitarity {:.2e}",
            s.trials, s.max_offdiag, s.max_upper, s.max_unitarity
        ),
    )
}

fn unit(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)).normalize()
}

fn random_point(rng: &mut ChaCha8Rng, p: &PhysicalParams, max_x: f64, field: f64) -> FieldPoint {
    let dir = unit(rng);
    let pi = dir * (max_x * p.m * p.c * rng.gen_range(0.0..1.0));
    FieldPoint {
        pi,
        e: unit(rng) * field,
        b: unit(rng) * field,
        phi: rng.gen_range(-1.0..1.0),
    }
}

fn classical() -> Outcome {
    let p = params(0.35);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let worst = (0..500)
        .map(|_| {
            let pt = random_point(&mut rng, &p, 2.0, 1e-3);
            classical_comparison(&p, &pt).unwrap().rel_diff
        })
        .fold(0.0, f64::max);
    outcome(
        worst <= CLASSICAL_REL,
        format!("500 points: max rel diff {worst:.2e} (tol {CLASSICAL_REL:.0e})"),
    )
}

fn conjugation() -> Outcome {
    let n = 30;
    let cal = assemble_cal_hfw(n).unwrap();
    let direct = lower_block_direct(n).unwrap();
    let from_c = lower_block(&cal);
    let symbolic = from_c.rest_sign == direct.rest_sign && from_c.orders.entries() == direct.orders.entries();

    let p = params(0.35);
    let flipped = PhysicalParams {
        q: -p.q,
        mu_prime: -p.mu_prime,
        ..p
    };
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let pt = random_point(&mut rng, &p, 0.5, 1e-3);
        let lower = direct.evaluate(&p, &pt, n);
        let mirror = cal.evaluate(&flipped, &pt.with_pi_reversed(), n);
        worst = worst.max(frobenius2(&(lower - charge_conjugate_block(&mirror))) / frobenius2(&lower));
        let closed = cal_hfw_closed(&flipped, &pt.with_pi_reversed()).unwrap();
        worst = worst.max(frobenius2(&(lower - charge_conjugate_block(&closed))) / frobenius2(&lower));
    }
    let q0 = PhysicalParams { q: 0.0, ..p };
    let exact = case2_trials(&q0, 100, 5).unwrap().max_conjugation;
    worst = worst.max(exact);
    outcome(
        symbolic && worst <= BLOCK_REL,
        format!("symbolic (order <= {n}): {symbolic}; numeric max rel {worst:.2e} (tol {BLOCK_REL:.0e})"),
    )
}

fn gaussian() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut cases = vec![scalar2(0.0), scalar2(3.0), scalar2(1.5) + sigma_dot(&Vector3::new(0.0, 1.5, 0.0))];
    for _ in 0..100 {
        let lam = [rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0)];
        let dir = unit(&mut rng);
        cases.push(scalar2(0.5 * (lam[0] + lam[1])) + sigma_dot(&(dir * (0.5 * (lam[0] - lam[1])))));
    }
    let worst = cases
        .iter()
        .map(|a| frobenius2(&(gaussian_invsqrt(a, 241, 6.0).unwrap() - spectral_invsqrt(a).unwrap())))
        .fold(0.0, f64::max);
    outcome(
        worst <= QUADRATURE_ABS,
        format!("{} matrices with spectra in [0, 3]: max error {worst:.2e} (tol {QUADRATURE_ABS:.0e})", cases.len()),
    )
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Option<Duration>, Check); 11] = [
        ("golden tables", Some(Duration::from_secs(5)), golden_tables),
        ("X_n closed form to n = 31", Some(Duration::from_secs(60)), theorem1),
        ("X'_n closed form to n = 30", Some(Duration::from_secs(60)), theorem2),
        ("coefficient identities A-F", Some(Duration::from_secs(5)), identities),
        ("hermiticity of H_FW", None, hermiticity),
        ("resummation", None, resummation),
        ("special case I", None, case1),
        ("special case II", None, case2),
        ("classical correspondence", None, classical),
        ("charge conjugation", None, conjugation),
        ("Gaussian inverse square root", None, gaussian),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let t = start.elapsed();
        let in_time = limit.is_none_or(|l| t <= l);
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
        println!(
            "criterion {:>2} {}: {name}: {} [{:.2}s{budget}]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            t.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
