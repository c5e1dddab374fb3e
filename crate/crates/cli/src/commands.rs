use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use logcoef::bounds::{bound_delta, witness, BoundPair, Side, M_BREAKPOINT};
use logcoef::catalog::{self, AnalyticFunction, LabelParams};
use logcoef::classes::{asserted_class, membership_test, ClassSpec, MembershipReport};
use logcoef::functional::{delta, log_pair};
use logcoef::search::{
    body_search, bound_violation_scan, family_sweep, sweep_parameter, ScanReport, SearchResult,
};
use logcoef::Error;

use crate::report::{exact, exact_opt, six, six_c, Report, Table};
use crate::{
    BoundsArgs, ClassKind, FunctionSel, GammaArgs, MembershipArgs, Params, SearchArgs, SweepArgs,
    VerifyArgs,
};

/// Slack allowed between a computed `Δ` and a closed-form bound.
const BOUND_SLACK: f64 = 1e-9;

type Outcome = Result<Report, String>;

fn usage(e: Error) -> String {
    match e {
        Error::UnknownLabel(label) => format!(
            "unknown function `{label}`; known labels: {}",
            catalog::LABELS.join(", ")
        ),
        other => other.to_string(),
    }
}

fn class_spec(
    kind: ClassKind,
    lambda: Option<f64>,
    alpha: Option<f64>,
) -> Result<ClassSpec, String> {
    match kind {
        ClassKind::S => Ok(ClassSpec::S),
        ClassKind::U => ClassSpec::u(lambda.ok_or("class U needs --lambda")?).map_err(usage),
        ClassKind::M => ClassSpec::m(alpha.ok_or("class M needs --alpha")?).map_err(usage),
        ClassKind::G => ClassSpec::g(alpha.ok_or("class G needs --alpha")?).map_err(usage),
    }
}

fn function(
    label: &str,
    params: &Params,
    theta: f64,
    order: usize,
) -> Result<AnalyticFunction, String> {
    let p = LabelParams {
        lambda: params.lambda,
        alpha: params.alpha,
        theta,
    };
    catalog::by_label(label, &p, order).map_err(usage)
}

fn selected(sel: &FunctionSel, params: &Params) -> Result<AnalyticFunction, String> {
    function(&sel.function, params, sel.theta, sel.order)
}

fn within(d: f64, b: &BoundPair) -> bool {
    d >= b.lower - BOUND_SLACK && d <= b.upper + BOUND_SLACK
}

fn ok(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn gamma(a: &GammaArgs) -> Outcome {
    let f = selected(&a.function, &a.params)?;
    let pair = log_pair(&f).map_err(usage)?;

    #[derive(Serialize)]
    struct GammaReport {
        function: String,
        label: &'static str,
        params: BTreeMap<&'static str, f64>,
        order: usize,
        gamma1: Complex64,
        gamma2: Complex64,
        delta: f64,
    }
    let r = GammaReport {
        function: f.describe(),
        label: f.label(),
        params: f.params().into_iter().collect(),
        order: f.order(),
        gamma1: pair.gamma1,
        gamma2: pair.gamma2,
        delta: pair.delta,
    };
    let mut table = Table::new(&[
        "function",
        "gamma1_re",
        "gamma1_im",
        "gamma2_re",
        "gamma2_im",
        "delta",
    ]);
    table.push(vec![
        r.function.clone(),
        exact(r.gamma1.re),
        exact(r.gamma1.im),
        exact(r.gamma2.re),
        exact(r.gamma2.im),
        exact(r.delta),
    ]);
    let text = format!(
        "function: {}\ngamma1: {}\ngamma2: {}\ndelta: {}\n",
        r.function,
        six_c(r.gamma1),
        six_c(r.gamma2),
        six(r.delta)
    );
    Ok(Report::new(&r, table, text, true))
}

pub fn bounds(a: &BoundsArgs) -> Outcome {
    let spec = class_spec(a.class, a.params.lambda, a.params.alpha)?;
    let b = bound_delta(&spec).map_err(usage)?;

    #[derive(Serialize)]
    struct BoundsReport {
        class: String,
        param: Option<f64>,
        #[serde(flatten)]
        bounds: BoundPair,
    }
    let r = BoundsReport {
        class: spec.kind().to_string(),
        param: spec.param(),
        bounds: b,
    };
    let b = &r.bounds;
    let mut table = Table::new(&[
        "class",
        "param",
        "lower",
        "upper",
        "lower_sharp",
        "upper_sharp",
        "lower_witness",
        "upper_witness",
    ]);
    table.push(vec![
        r.class.clone(),
        exact_opt(r.param),
        exact(b.lower),
        exact(b.upper),
        b.lower_sharp.to_string(),
        b.upper_sharp.to_string(),
        b.lower_witness.clone().unwrap_or_default(),
        b.upper_witness.clone().unwrap_or_default(),
    ]);
    let mut text = format!(
        "class: {spec}\nlower: {}\nupper: {}\nlower_sharp={}\nupper_sharp={}\n",
        six(b.lower),
        six(b.upper),
        b.lower_sharp,
        b.upper_sharp
    );
    for (side, w) in [("lower", &b.lower_witness), ("upper", &b.upper_witness)] {
        if let Some(w) = w {
            text.push_str(&format!("{side}_witness: {w}\n"));
        }
    }
    if let Some(note) = &b.note {
        text.push_str(&format!("note: {note}\n"));
    }
    Ok(Report::new(&r, table, text, true))
}

#[derive(Serialize)]
struct VerifyRow {
    function: String,
    class: String,
    delta: f64,
    lower: f64,
    upper: f64,
    within_bounds: bool,
    worst_margin: f64,
    membership_pass: bool,
    pass: bool,
}

#[derive(Serialize)]
struct WitnessRow {
    class: String,
    side: &'static str,
    function: String,
    delta: f64,
    bound: f64,
    pass: bool,
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    let exec = a.output.execution();
    let entries = match (&a.function, a.all) {
        (_, true) => catalog::roster(a.order).map_err(usage)?,
        (Some(label), false) => vec![function(label, &a.params, a.theta, a.order)?],
        (None, false) => return Err("verify needs --all or --function".into()),
    };

    let mut rows = Vec::new();
    let mut specs: Vec<ClassSpec> = Vec::new();
    for f in &entries {
        let spec =
            asserted_class(f).ok_or_else(|| format!("`{}` has no known class", f.describe()))?;
        let b = bound_delta(&spec).map_err(usage)?;
        let d = delta(f).map_err(usage)?;
        let m = membership_test(f, &spec, &a.grid.radii, a.grid.angular, exec).map_err(usage)?;
        let within_bounds = within(d, &b);
        rows.push(VerifyRow {
            function: f.describe(),
            class: spec.to_string(),
            delta: d,
            lower: b.lower,
            upper: b.upper,
            within_bounds,
            worst_margin: m.worst_margin,
            membership_pass: m.pass,
            pass: within_bounds && m.pass,
        });
        if !specs.contains(&spec) {
            specs.push(spec);
        }
    }

    let mut witnesses = Vec::new();
    for spec in &specs {
        let b = bound_delta(spec).map_err(usage)?;
        for (side, name, bound) in [
            (Side::Lower, "lower", b.lower),
            (Side::Upper, "upper", b.upper),
        ] {
            let Some(w) = witness(spec, side, a.order).map_err(usage)? else {
                continue;
            };
            // the α-dependent extremals are built from truncated power series
            let tol = if w.evaluator().is_some()
                && !matches!(w.label(), "m_alpha_upper" | "g_alpha_upper")
            {
                1e-10
            } else {
                1e-6
            };
            let d = delta(&w).map_err(usage)?;
            witnesses.push(WitnessRow {
                class: spec.to_string(),
                side: name,
                function: w.describe(),
                delta: d,
                bound,
                pass: (d - bound).abs() <= tol,
            });
        }
    }

    let pass = rows.iter().all(|r| r.pass) && witnesses.iter().all(|w| w.pass);

    let mut table = Table::new(&[
        "function",
        "class",
        "delta",
        "lower",
        "upper",
        "within_bounds",
        "worst_margin",
        "membership_pass",
    ]);
    let width = rows
        .iter()
        .map(|r| r.function.len())
        .max()
        .unwrap_or(8)
        .max(8);
    let mut text = format!(
        "{:<width$}  {:<8}  {:>10}  {:>10}  {:>10}  {:>6}  {:>12}  {:>6}\n",
        "function", "class", "delta", "lower", "upper", "bounds", "worst_margin", "member"
    );
    for r in &rows {
        table.push(vec![
            r.function.clone(),
            r.class.clone(),
            exact(r.delta),
            exact(r.lower),
            exact(r.upper),
            r.within_bounds.to_string(),
            exact(r.worst_margin),
            r.membership_pass.to_string(),
        ]);
        text.push_str(&format!(
            "{:<width$}  {:<8}  {:>10}  {:>10}  {:>10}  {:>6}  {:>12.6e}  {:>6}\n",
            r.function,
            r.class,
            six(r.delta),
            six(r.lower),
            six(r.upper),
            ok(r.within_bounds),
            r.worst_margin,
            ok(r.membership_pass)
        ));
    }
    text.push_str("\nsharp bounds against their extremal functions\n");
    for w in &witnesses {
        text.push_str(&format!(
            "{} {}: {} has delta {}, bound {} {}\n",
            w.class,
            w.side,
            w.function,
            six(w.delta),
            six(w.bound),
            ok(w.pass)
        ));
    }
    let failures =
        rows.iter().filter(|r| !r.pass).count() + witnesses.iter().filter(|w| !w.pass).count();
    text.push_str(&format!(
        "\nverify: {} functions, {} witness checks, {failures} failures\n",
        rows.len(),
        witnesses.len()
    ));

    #[derive(Serialize)]
    struct VerifyReport {
        radii: Vec<f64>,
        angular: usize,
        entries: Vec<VerifyRow>,
        witnesses: Vec<WitnessRow>,
        pass: bool,
    }
    let r = VerifyReport {
        radii: a.grid.radii.clone(),
        angular: a.grid.angular,
        entries: rows,
        witnesses,
        pass,
    };
    Ok(Report::new(&r, table, text, pass))
}

pub fn search(a: &SearchArgs) -> Outcome {
    let spec = class_spec(a.class, a.params.lambda, a.params.alpha)?;
    let r = body_search(&spec, a.resolution, a.output.execution()).map_err(usage)?;
    let b = bound_delta(&spec).map_err(usage)?;
    let scan = if a.samples > 0 {
        Some(bound_violation_scan(&spec, a.samples, a.seed).map_err(usage)?)
    } else {
        None
    };
    let pass = r.min_delta >= b.lower - BOUND_SLACK
        && r.max_delta <= b.upper + BOUND_SLACK
        && scan.as_ref().is_none_or(|s| s.violations == 0);

    #[derive(Serialize)]
    struct SearchReport {
        search: SearchResult,
        bound_lower: f64,
        bound_upper: f64,
        scan: Option<ScanReport>,
        pass: bool,
    }
    let mut table = Table::new(&[
        "class",
        "param",
        "resolution",
        "search_min",
        "search_max",
        "bound_lower",
        "bound_upper",
        "samples",
        "seed",
        "violations",
    ]);
    table.push(vec![
        spec.kind().to_string(),
        exact_opt(spec.param()),
        a.resolution.to_string(),
        exact(r.min_delta),
        exact(r.max_delta),
        exact(b.lower),
        exact(b.upper),
        scan.as_ref()
            .map(|s| s.samples.to_string())
            .unwrap_or_default(),
        scan.as_ref()
            .map(|s| s.seed.to_string())
            .unwrap_or_default(),
        scan.as_ref()
            .map(|s| s.violations.to_string())
            .unwrap_or_default(),
    ]);
    let point = |p: &logcoef::search::BodyPoint| {
        format!(
            "first {}, fraction {}, phase {}; a2 = {}, a3 = {}",
            six(p.first),
            six(p.fraction),
            six(p.phase),
            six_c(p.a2),
            six_c(p.a3)
        )
    };
    let mut text = format!(
        "class: {spec} (proof relaxation body, resolution {})\nsearch min: {} at {}\nsearch max: {} at {}\nbounds: [{}, {}]\n",
        a.resolution,
        six(r.min_delta),
        point(&r.argmin),
        six(r.max_delta),
        point(&r.argmax),
        six(b.lower),
        six(b.upper)
    );
    if let Some(s) = &scan {
        text.push_str(&format!(
            "scan: {} samples, seed {}, {} violations, sampled delta in [{}, {}]\n",
            s.samples,
            s.seed,
            s.violations,
            six(s.min_delta),
            six(s.max_delta)
        ));
    }
    text.push_str(&format!("result: {}\n", if pass { "pass" } else { "FAIL" }));
    let report = SearchReport {
        search: r,
        bound_lower: b.lower,
        bound_upper: b.upper,
        scan,
        pass,
    };
    Ok(Report::new(&report, table, text, pass))
}

/// Rounds away the drift of `i · step` so grid values print cleanly.
fn snap(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// `i · step` for the `i` with `lo < i·step ≤ hi` (or `lo ≤` when `closed`).
fn param_grid(lo: f64, hi: f64, closed: bool, step: f64) -> Vec<f64> {
    let n = (hi / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|i| snap(i as f64 * step))
        .filter(|&p| {
            if closed {
                p >= lo - 1e-12
            } else {
                p > lo + 1e-12
            }
        })
        .map(|p| p.max(lo).min(hi))
        .collect()
}

#[derive(Serialize)]
struct ClassSweepRow {
    param: f64,
    bound_lower: f64,
    bound_upper: f64,
    search_min: f64,
    search_max: f64,
}

#[derive(Serialize)]
struct FamilySweepRow {
    param: f64,
    delta_min: f64,
    delta_max: f64,
    bound_lower: f64,
    bound_upper: f64,
}

pub fn sweep(a: &SweepArgs) -> Outcome {
    if !(a.step > 0.0 && a.step.is_finite()) {
        return Err(format!("--step must be positive, got {}", a.step));
    }
    if !(a.max >= 0.0 && a.max.is_finite()) {
        return Err(format!("--max must be nonnegative, got {}", a.max));
    }
    match (&a.class, &a.function) {
        (Some(kind), _) => class_sweep(*kind, a),
        (None, Some(label)) => function_sweep(label, a),
        (None, None) => Err("sweep needs --class or --function".into()),
    }
}

fn class_sweep(kind: ClassKind, a: &SweepArgs) -> Outcome {
    let params = match kind {
        ClassKind::S => return Err("class S has no parameter to sweep".into()),
        ClassKind::U | ClassKind::G => param_grid(0.0, 1.0, false, a.step),
        ClassKind::M => {
            let mut grid = param_grid(0.0, a.max, true, a.step);
            if M_BREAKPOINT <= a.max && grid.iter().all(|p| (p - M_BREAKPOINT).abs() > 1e-12) {
                grid.push(M_BREAKPOINT);
                grid.sort_by(f64::total_cmp);
            }
            grid
        }
    };
    let exec = a.output.execution();
    let mut rows = Vec::with_capacity(params.len());
    for &p in &params {
        let spec = class_spec(kind, Some(p), Some(p))?;
        let b = bound_delta(&spec).map_err(usage)?;
        let r = body_search(&spec, a.resolution, exec).map_err(usage)?;
        rows.push(ClassSweepRow {
            param: p,
            bound_lower: b.lower,
            bound_upper: b.upper,
            search_min: r.min_delta,
            search_max: r.max_delta,
        });
    }
    let pass = rows.iter().all(|r| {
        r.search_min >= r.bound_lower - BOUND_SLACK && r.search_max <= r.bound_upper + BOUND_SLACK
    });

    let mut table = Table::new(&[
        "param",
        "bound_lower",
        "bound_upper",
        "search_min",
        "search_max",
    ]);
    let mut text = format!(
        "{:>10}  {:>11}  {:>11}  {:>10}  {:>10}\n",
        "param", "bound_lower", "bound_upper", "search_min", "search_max"
    );
    for r in &rows {
        table.push(vec![
            exact(r.param),
            exact(r.bound_lower),
            exact(r.bound_upper),
            exact(r.search_min),
            exact(r.search_max),
        ]);
        text.push_str(&format!(
            "{:>10}  {:>11}  {:>11}  {:>10}  {:>10}\n",
            six(r.param),
            six(r.bound_lower),
            six(r.bound_upper),
            six(r.search_min),
            six(r.search_max)
        ));
    }

    #[derive(Serialize)]
    struct ClassSweep {
        class: String,
        step: f64,
        resolution: usize,
        rows: Vec<ClassSweepRow>,
        pass: bool,
    }
    let r = ClassSweep {
        class: class_spec(kind, Some(1.0), Some(1.0))?.kind().to_string(),
        step: a.step,
        resolution: a.resolution,
        rows,
        pass,
    };
    Ok(Report::new(&r, table, text, pass))
}

fn function_sweep(label: &str, a: &SweepArgs) -> Outcome {
    if sweep_parameter(label).is_none() {
        return Err(usage(
            family_sweep(label, &[], &[0.0])
                .err()
                .unwrap_or(Error::UnknownLabel(label.into())),
        ));
    }
    let (lo, hi, closed, kind) = match label {
        "f3" => (0.0, 1.0, false, ClassKind::U),
        "f4" => (0.5, 1.0, true, ClassKind::U),
        "f5" => (0.0, 0.5, false, ClassKind::U),
        "g_alpha_upper" => (0.0, 1.0, false, ClassKind::G),
        _ => (0.0, a.max, true, ClassKind::M),
    };
    if a.angular == 0 {
        return Err("--angular must be positive".into());
    }
    let params = param_grid(lo, hi, closed, a.step);
    let thetas: Vec<f64> = (0..a.angular)
        .map(|k| 2.0 * PI * k as f64 / a.angular as f64)
        .collect();
    let sweep = family_sweep(label, &params, &thetas).map_err(usage)?;
    let mut rows = Vec::with_capacity(sweep.len());
    for s in sweep {
        let b = bound_delta(&class_spec(kind, Some(s.param), Some(s.param))?).map_err(usage)?;
        rows.push(FamilySweepRow {
            param: s.param,
            delta_min: s.min_delta,
            delta_max: s.max_delta,
            bound_lower: b.lower,
            bound_upper: b.upper,
        });
    }
    let pass = rows.iter().all(|r| {
        r.delta_min >= r.bound_lower - BOUND_SLACK && r.delta_max <= r.bound_upper + BOUND_SLACK
    });

    let mut table = Table::new(&[
        "param",
        "delta_min",
        "delta_max",
        "bound_lower",
        "bound_upper",
    ]);
    let mut text = format!(
        "{:>10}  {:>10}  {:>10}  {:>11}  {:>11}\n",
        "param", "delta_min", "delta_max", "bound_lower", "bound_upper"
    );
    for r in &rows {
        table.push(vec![
            exact(r.param),
            exact(r.delta_min),
            exact(r.delta_max),
            exact(r.bound_lower),
            exact(r.bound_upper),
        ]);
        text.push_str(&format!(
            "{:>10}  {:>10}  {:>10}  {:>11}  {:>11}\n",
            six(r.param),
            six(r.delta_min),
            six(r.delta_max),
            six(r.bound_lower),
            six(r.bound_upper)
        ));
    }

    #[derive(Serialize)]
    struct FamilySweep<'a> {
        function: &'a str,
        step: f64,
        thetas: Vec<f64>,
        rows: Vec<FamilySweepRow>,
        pass: bool,
    }
    let r = FamilySweep {
        function: label,
        step: a.step,
        thetas,
        rows,
        pass,
    };
    Ok(Report::new(&r, table, text, pass))
}

pub fn membership(a: &MembershipArgs) -> Outcome {
    let f = selected(&a.function, &a.params)?;
    let spec = match a.class {
        Some(kind) => {
            let lambda = a.class_param.or(a.params.lambda);
            let alpha = a.class_param.or(a.params.alpha);
            class_spec(kind, lambda, alpha)?
        }
        None => asserted_class(&f)
            .ok_or_else(|| format!("`{}` has no known class; pass --class", f.describe()))?,
    };
    let rep = membership_test(
        &f,
        &spec,
        &a.grid.radii,
        a.grid.angular,
        a.output.execution(),
    )
    .map_err(usage)?;

    #[derive(Serialize)]
    struct Membership {
        function: String,
        #[serde(flatten)]
        report: MembershipReport,
    }
    let mut table = Table::new(&["radius", "min_margin"]);
    let mut text = format!(
        "function: {}\nclass: {spec}\nangular samples: {}\n",
        f.describe(),
        rep.angular
    );
    for r in &rep.per_radius {
        table.push(vec![exact(r.radius), exact(r.min_margin)]);
        text.push_str(&format!(
            "radius {}: min margin {:.6e}\n",
            six(r.radius),
            r.min_margin
        ));
    }
    text.push_str(&format!(
        "worst margin: {:.6e} at z = {}\nskipped: {}\nresult: {}\n",
        rep.worst_margin,
        six_c(rep.witness),
        rep.skipped,
        if rep.pass { "pass" } else { "FAIL" }
    ));
    let pass = rep.pass;
    let r = Membership {
        function: f.describe(),
        report: rep,
    };
    Ok(Report::new(&r, table, text, pass))
}
