//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Expected values are closed forms evaluated here, not taken from
//! the library.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logcoef::bounds::{
    bound_delta, g_lower_minimizer, m_lower_large, m_lower_small, u_lower_large, u_lower_small,
};
use logcoef::catalog::{self, AnalyticFunction};
use logcoef::classes::{
    asserted_class, e11_slack, eq10_slack, g_schwarz_map, m_schwarz_map, membership_test,
    u_aux_check, ClassSpec, SchwarzPoint, DEFAULT_ANGULAR, DEFAULT_RADII,
};
use logcoef::functional::{delta, gamma_from_a, log_pair};
use logcoef::search::{body_search, bound_violation_scan};
use logcoef::series::TruncatedSeries;
use logcoef::Execution;

const SQRT3: f64 = 1.732_050_807_568_877_2;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
        }
    }

    fn close(&mut self, what: impl AsRef<str>, got: f64, want: f64, tol: f64) {
        // false for NaN, so a NaN is a failure
        let ok = (got - want).abs() <= tol;
        if !ok {
            self.failures.push(format!(
                "{}: got {got:.15e}, want {want:.15e} (tol {tol:e})",
                what.as_ref()
            ));
        }
    }

    fn holds(&mut self, what: impl AsRef<str>, ok: bool) {
        if !ok {
            self.failures.push(what.as_ref().to_string());
        }
    }

    fn finish(self, summary: String) -> Outcome {
        if self.failures.is_empty() {
            Ok(summary)
        } else {
            Err(self.failures.join("; "))
        }
    }
}

fn d(f: &AnalyticFunction) -> f64 {
    delta(f).expect("delta of a catalog entry")
}

fn golden_delta_table() -> Outcome {
    let tol = 1e-10;
    let mut c = Checks::new();
    c.close("koebe(0)", d(&catalog::koebe(0.0, 32).unwrap()), -0.5, tol);
    c.close(
        "f1(0)",
        d(&catalog::f1(0.0, 32).unwrap()),
        -FRAC_1_SQRT_2,
        tol,
    );
    c.close("f2(0)", d(&catalog::f2(0.0, 32).unwrap()), 0.5, tol);
    for l in [0.1, 0.5, 1.0] {
        c.close(
            format!("f3({l})"),
            d(&catalog::f3(l, 0.0, 32).unwrap()),
            l / 2.0,
            tol,
        );
    }
    for l in [0.5, 0.75, 1.0] {
        c.close(
            format!("f4({l})"),
            d(&catalog::f4(l, 32).unwrap()),
            -(2.0 * l).sqrt() / 2.0,
            tol,
        );
    }
    for l in [0.1, 0.25, 0.5] {
        c.close(
            format!("f5({l})"),
            d(&catalog::f5(l, 32).unwrap()),
            -(2.0 * l + 1.0) / 4.0,
            tol,
        );
    }
    c.close(
        "g_quadratic",
        d(&catalog::g_quadratic(32).unwrap()),
        -0.1875,
        tol,
    );
    c.finish("15 closed-form values within 1e-10".into())
}

fn series_built_extremals() -> Outcome {
    let tol = 1e-6;
    let mut c = Checks::new();
    for a in [0.0, 0.5, 1.0, 2.0] {
        let f = catalog::m_alpha_upper(a, 64).unwrap();
        c.close(
            format!("m_alpha_upper({a})"),
            d(&f),
            1.0 / (2.0 * (1.0 + 2.0 * a)),
            tol,
        );
    }
    for a in [0.25, 0.5, 1.0] {
        let f = catalog::g_alpha_upper(a, 64).unwrap();
        c.close(format!("g_alpha_upper({a})"), d(&f), a / 12.0, tol);
    }
    for a in [0.5, 1.0, 2.0, 5.0] {
        let f = catalog::k_theta_alpha(0.0, a, 64).unwrap();
        let a2 = f.a(2);
        c.close(
            format!("k_theta_alpha(0,{a}) re a2"),
            a2.re,
            2.0 / (1.0 + a),
            tol,
        );
        c.close(format!("k_theta_alpha(0,{a}) im a2"), a2.im, 0.0, tol);
    }
    c.finish("11 order-64 series values within 1e-6".into())
}

fn bound_identities() -> Outcome {
    let tol = 1e-12;
    let mut c = Checks::new();
    c.close("U lower small branch at 1/2", u_lower_small(0.5), -0.5, tol);
    c.close("U lower large branch at 1/2", u_lower_large(0.5), -0.5, tol);
    let bp = (1.0 + SQRT3) / 2.0;
    c.close(
        "M lower small branch at breakpoint",
        m_lower_small(bp),
        SQRT3 - 2.0,
        tol,
    );
    c.close(
        "M lower large branch at breakpoint",
        m_lower_large(bp),
        SQRT3 - 2.0,
        tol,
    );
    let b = bound_delta(&ClassSpec::m(bp).unwrap()).unwrap();
    c.close("M breakpoint bound", b.lower, SQRT3 - 2.0, tol);
    let m0 = bound_delta(&ClassSpec::m(0.0).unwrap()).unwrap();
    let s = bound_delta(&ClassSpec::S).unwrap();
    c.close("M(0) lower", m0.lower, -FRAC_1_SQRT_2, tol);
    c.close("M(0) upper", m0.upper, 0.5, tol);
    c.close("S lower", s.lower, -FRAC_1_SQRT_2, tol);
    c.close("S upper", s.upper, 0.5, tol);
    let m1 = bound_delta(&ClassSpec::m(1.0).unwrap()).unwrap();
    c.close("M(1) lower", m1.lower, -1.0 / 10f64.sqrt(), tol);
    c.close("M(1) upper", m1.upper, 1.0 / 6.0, tol);
    let g1 = bound_delta(&ClassSpec::g(1.0).unwrap()).unwrap();
    c.close("G(1) lower", g1.lower, -4.0 / 21.0, tol);
    c.close("G(1) upper", g1.upper, 1.0 / 12.0, tol);
    c.finish("branch agreement and named class values within 1e-12".into())
}

fn membership_suite() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut entries = catalog::default_roster();
    // a few non-default rotations on top of the fixed roster
    entries.push(catalog::koebe(1.3, 32).unwrap());
    entries.push(catalog::f1(2.0, 32).unwrap());
    entries.push(catalog::f2(0.7, 32).unwrap());
    entries.push(catalog::f3(0.6, 2.5, 32).unwrap());
    entries.push(catalog::k_theta_alpha(0.9, 1.0, 64).unwrap());
    let mut worst = f64::INFINITY;
    for f in &entries {
        let spec = asserted_class(f).expect("catalog entry with an asserted class");
        match membership_test(
            f,
            &spec,
            &DEFAULT_RADII,
            DEFAULT_ANGULAR,
            Execution::Parallel,
        ) {
            Ok(rep) => {
                c.holds(
                    format!(
                        "{} in {spec}: worst margin {:e}",
                        f.describe(),
                        rep.worst_margin
                    ),
                    rep.pass && rep.worst_margin > 0.0,
                );
                worst = worst.min(rep.worst_margin);
            }
            Err(e) => c.holds(format!("{} in {spec}: {e}", f.describe()), false),
        }
    }
    let koebe = catalog::koebe(0.0, 32).unwrap();
    let rep = membership_test(
        &koebe,
        &ClassSpec::g(1.0).unwrap(),
        &DEFAULT_RADII,
        DEFAULT_ANGULAR,
        Execution::Parallel,
    )
    .map_err(|e| e.to_string())?;
    c.holds(
        "koebe(0) must fail G(1)",
        !rep.pass && rep.worst_margin < 0.0,
    );
    c.holds(
        format!("koebe(0) witness radius {}", rep.witness.norm()),
        (rep.witness.norm() - 0.99).abs() < 1e-12,
    );
    let elapsed = start.elapsed();
    c.holds(
        format!("runtime {elapsed:?} over 5 s"),
        elapsed < Duration::from_secs(5),
    );
    c.finish(format!(
        "{} entries pass, smallest margin {worst:.3e}; koebe(0) fails G(1) at |z| = 0.99; {:.2} s",
        entries.len(),
        elapsed.as_secs_f64()
    ))
}

fn instances() -> Vec<ClassSpec> {
    let mut v = Vec::new();
    for l in [0.1, 0.25, 0.5, 0.75, 1.0] {
        v.push(ClassSpec::u(l).unwrap());
    }
    for a in [0.0, 0.5, 1.0, (1.0 + SQRT3) / 2.0, 2.0, 5.0] {
        v.push(ClassSpec::m(a).unwrap());
    }
    for a in [0.25, 0.5, 0.75, 1.0] {
        v.push(ClassSpec::g(a).unwrap());
    }
    v
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut gap: f64 = 0.0;
    for spec in instances() {
        let b = bound_delta(&spec).unwrap();
        let r = body_search(&spec, 200, Execution::Parallel).map_err(|e| e.to_string())?;
        c.close(format!("{spec} search min"), r.min_delta, b.lower, 2e-3);
        c.close(format!("{spec} search max"), r.max_delta, b.upper, 2e-3);
        gap = gap
            .max((r.min_delta - b.lower).abs())
            .max((r.max_delta - b.upper).abs());
    }
    let elapsed = start.elapsed();
    c.holds(
        format!("runtime {elapsed:?} over 30 s"),
        elapsed < Duration::from_secs(30),
    );
    c.finish(format!(
        "15 instances at resolution 200, largest gap {gap:.2e}; {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn zero_violation_scans() -> Outcome {
    let mut c = Checks::new();
    for (i, spec) in instances().into_iter().enumerate() {
        let rep =
            bound_violation_scan(&spec, 100_000, 20_240 + i as u64).map_err(|e| e.to_string())?;
        c.holds(
            format!("{spec}: {} violations", rep.violations),
            rep.violations == 0,
        );
    }
    c.finish("15 instances x 1e5 samples, 0 violations".into())
}

fn schwarz_samples(n: usize, seed: u64) -> Vec<SchwarzPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let c1 = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen::<f64>() * 2.0 * PI);
            let room = 1.0 - c1.norm_sqr();
            let c2 = Complex64::from_polar(room * rng.gen::<f64>(), rng.gen::<f64>() * 2.0 * PI);
            SchwarzPoint::new(c1, c2).unwrap()
        })
        .collect()
}

fn boundary_samples(n: usize, seed: u64) -> Vec<SchwarzPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let c1 = Complex64::from_polar(rng.gen::<f64>(), rng.gen::<f64>() * 2.0 * PI);
            let c2 = Complex64::from_polar(1.0 - c1.norm_sqr(), rng.gen::<f64>() * 2.0 * PI);
            SchwarzPoint::new(c1, c2).unwrap()
        })
        .collect()
}

fn intermediate_inequalities() -> Outcome {
    let mut c = Checks::new();
    let interior = schwarz_samples(10_000, 11);
    let boundary = boundary_samples(1_000, 12);
    let mut min_slack = f64::INFINITY;
    for alpha in [0.0, 1.0, 3.0] {
        for p in &interior {
            let (a2, a3) = m_schwarz_map(p, alpha).unwrap();
            let s = eq10_slack(a2, a3, alpha);
            min_slack = min_slack.min(s);
            c.holds(format!("eq10 slack {s:e} at alpha {alpha}"), s >= -1e-12);
        }
        for p in &boundary {
            let (a2, a3) = m_schwarz_map(p, alpha).unwrap();
            c.close(
                format!("eq10 equality case at alpha {alpha}"),
                eq10_slack(a2, a3, alpha),
                0.0,
                1e-12,
            );
        }
    }
    for alpha in [0.5, 1.0] {
        for p in &interior {
            let (a2, a3) = g_schwarz_map(p, alpha).unwrap();
            let s = e11_slack(a2, a3, alpha);
            min_slack = min_slack.min(s);
            c.holds(format!("e11 slack {s:e} at alpha {alpha}"), s >= -1e-12);
        }
        for p in &boundary {
            let (a2, a3) = g_schwarz_map(p, alpha).unwrap();
            c.close(
                format!("e11 equality case at alpha {alpha}"),
                e11_slack(a2, a3, alpha),
                0.0,
                1e-12,
            );
        }
    }
    for l in [0.1, 0.5, 1.0] {
        let (s, t) = u_aux_check(&catalog::f3(l, 0.0, 16).unwrap(), l);
        c.holds(format!("f3({l}) aux slack {s:e}"), s == 0.0 && t >= 0.0);
    }
    for l in [0.5, 0.75, 1.0] {
        let (s, t) = u_aux_check(&catalog::f4(l, 16).unwrap(), l);
        c.close(format!("f4({l}) aux slack"), s, 0.0, 1e-15);
        c.holds(format!("f4({l}) second aux slack {t:e}"), t >= 0.0);
    }
    c.finish(format!(
        "5 x 1e4 interior points (min slack {min_slack:.2e}), boundary equality within 1e-12, f3/f4 aux slacks 0"
    ))
}

fn random_series(rng: &mut ChaCha8Rng, order: usize, scale: f64) -> Vec<Complex64> {
    (0..order)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale)
        .collect()
}

fn property_suite() -> Outcome {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let order = 16;
    for _ in 0..100 {
        let mut v = random_series(&mut rng, order, 0.5);
        v[0] = Complex64::new(0.0, 0.0);
        let s = TruncatedSeries::new(&v, order).unwrap();
        let back = s.exp().unwrap().log_unit().unwrap();
        c.close("log(exp(s)) - s", back.max_abs_diff(&s), 0.0, 1e-12);
        v[0] = Complex64::new(1.0, 0.0);
        let u = TruncatedSeries::new(&v, order).unwrap();
        let back = u.log_unit().unwrap().exp().unwrap();
        c.close("exp(log(u)) - u", back.max_abs_diff(&u), 0.0, 1e-12);
        let beta = rng.gen_range(0.2..5.0);
        let back = u.pow_real(beta).unwrap().pow_real(1.0 / beta).unwrap();
        c.close(
            format!("pow round trip beta {beta}"),
            back.max_abs_diff(&u),
            0.0,
            1e-10,
        );
    }

    let mut families = catalog::default_roster();
    families.push(catalog::identity(32).unwrap());
    for f in &families {
        let base = d(f);
        for _ in 0..16 {
            let theta = rng.gen_range(-PI..PI);
            c.close(
                format!("{} rotated by {theta}", f.describe()),
                d(&f.rotate(theta)),
                base,
                1e-12,
            );
        }
        let via_log = log_pair(f).unwrap();
        let direct = gamma_from_a(f.a(2), f.a(3));
        c.close(
            format!("{} gamma1", f.describe()),
            (via_log.gamma1 - direct.gamma1).norm(),
            0.0,
            1e-12,
        );
        c.close(
            format!("{} gamma2", f.describe()),
            (via_log.gamma2 - direct.gamma2).norm(),
            0.0,
            1e-12,
        );
    }
    for _ in 0..16 {
        let theta = rng.gen_range(-PI..PI);
        c.close(
            "koebe(theta)",
            d(&catalog::koebe(theta, 32).unwrap()),
            -0.5,
            1e-12,
        );
        c.close(
            "f1(theta)",
            d(&catalog::f1(theta, 32).unwrap()),
            -FRAC_1_SQRT_2,
            1e-12,
        );
        c.close("f2(theta)", d(&catalog::f2(theta, 32).unwrap()), 0.5, 1e-12);
        c.close(
            "f3(0.4, theta)",
            d(&catalog::f3(0.4, theta, 32).unwrap()),
            0.2,
            1e-12,
        );
        let k0 = d(&catalog::k_theta_alpha(0.0, 2.0, 64).unwrap());
        c.close(
            "k_theta_alpha(theta, 2)",
            d(&catalog::k_theta_alpha(theta, 2.0, 64).unwrap()),
            k0,
            1e-12,
        );
    }

    let f4 = catalog::f4(1.0, 32).unwrap();
    let f1 = catalog::f1(0.0, 32).unwrap();
    let diff = f4.series().series().max_abs_diff(f1.series().series());
    c.close("f4(1) vs f1(0)", diff, 0.0, 1e-12);

    for i in 1..=100 {
        let alpha = i as f64 / 100.0;
        let t0 = g_lower_minimizer(alpha).unwrap();
        c.holds(
            format!("g_lower_minimizer({alpha}) = {t0}"),
            t0 < alpha / 2.0,
        );
    }
    c.finish(format!(
        "series round trips, rotation invariance on {} families, direct vs log route, f4(1) = f1(0), 100 minimizers",
        families.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden delta table", golden_delta_table),
        ("series-built extremals", series_built_extremals),
        ("bound-formula identities", bound_identities),
        ("membership suite", membership_suite),
        ("relaxation-oracle agreement", oracle_agreement),
        ("zero-violation scans", zero_violation_scans),
        ("intermediate inequalities", intermediate_inequalities),
        ("invariant properties", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
