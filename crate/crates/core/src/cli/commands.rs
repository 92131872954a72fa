use std::f64::consts::FRAC_PI_4;

use super::config::{CommandKind, FigureId, RunConfig};
use super::output::{slug_number, Cell, Table};
use crate::analytics::{analytic_series, bosonic_coefficients, local_expansion, LocalExpansion};
use crate::classical::region::H1_OVER_J;
use crate::classical::{
    classify_region, effective_potential, find_fixed_points, fit_max_lyapunov_line, h2_over_j,
    lyapunov_exponent, lyapunov_map, max_lyapunov, primary_hyperbolic_point, separatrix, LyapunovMap,
    RidgeFit,
};
use crate::numerics::linspace;
use crate::quantum::{
    evolve, fit_growth_rate, gain_curve, husimi, hyperbolic_initial_state, infidelity_curve,
    matched_lambda_along, AlphaPolicy, GainCurve, HusimiGrid, Propagator,
};
use crate::{Error, ModelParams, Result};

/// Series label, e.g. `quartic_h3.265_J1_K1.5_N500`.
pub fn label(p: &ModelParams) -> String {
    format!(
        "{}_h{}_J{}_K{}_N{}",
        if p.k == 0.0 { "lmg" } else { "quartic" },
        slug_number(p.h),
        slug_number(p.j),
        slug_number(p.k),
        p.n
    )
}

fn caption(p: &ModelParams) -> String {
    format!("series: h/J={} K/J={} N={} J={}", p.h / p.j, p.k / p.j, p.n, p.j)
}

pub fn execute(config: &RunConfig) -> Result<Vec<Table>> {
    let tables = match config.command {
        CommandKind::PhaseMap => {
            let map = lyapunov_map(&config.map)?;
            vec![phase_map_table(&map), boundary_table(&config.map.k_values())]
        }
        CommandKind::Potential => config.params.iter().map(|p| potential_table(p, config)).collect(),
        CommandKind::FixedPoints => vec![fixed_point_table(&config.params)?],
        CommandKind::Lyapunov => vec![lyapunov_table(&config.params)?],
        CommandKind::Gain => gain_tables(&config.params, config, config.alpha)?,
        CommandKind::Infidelity => infidelity_tables(&config.params, config)?,
        CommandKind::Husimi => husimi_tables(config)?,
        CommandKind::Covariance => covariance_tables(&config.params, config)?,
        CommandKind::MatchedLambda => matched_tables(config)?,
        CommandKind::FitMaxline => {
            let map = lyapunov_map(&config.map)?;
            ridge_tables(&fit_max_lyapunov_line(&map)?)
        }
        CommandKind::Figure => {
            let id = config
                .figure
                .ok_or_else(|| Error::Config("`figure` needs a figure id".into()))?;
            figure_tables(id, config)?
        }
    };
    check_invariants(&tables)?;
    Ok(tables)
}

fn figure_tables(id: FigureId, config: &RunConfig) -> Result<Vec<Table>> {
    let mut tables = match id {
        FigureId::Fig1 => {
            let map = lyapunov_map(&config.map)?;
            vec![phase_map_table(&map), boundary_table(&config.map.k_values())]
        }
        FigureId::Fig2b => gain_tables(&config.params, config, AlphaPolicy::Optimal)?,
        FigureId::Fig2c => infidelity_tables(&config.params, config)?,
        FigureId::Fig3 => matched_tables(config)?,
        FigureId::FigS2 => {
            let map = lyapunov_map(&config.map)?;
            let mut t = vec![phase_map_table(&map)];
            t.extend(ridge_tables(&fit_max_lyapunov_line(&map)?));
            t
        }
        FigureId::FigS3 => {
            let mut t = gain_tables(&config.params, config, AlphaPolicy::Optimal)?;
            let fixed = gain_tables(&config.params, config, AlphaPolicy::Fixed(FRAC_PI_4))?;
            t.extend(fixed.into_iter().map(|mut tb| {
                tb.name = tb.name.replacen("gain", "gain_fixed", 1);
                tb
            }));
            t.extend(covariance_tables(&config.params, config)?);
            t
        }
    };
    for t in &mut tables {
        t.name = format!("{id}_{}", t.name);
    }
    Ok(tables)
}

fn phase_map_table(map: &LyapunovMap) -> Table {
    let mut t = Table::new(
        "phase_map",
        &[
            ("h_over_J", "1"),
            ("K_over_J", "1"),
            ("lambda", "J"),
            ("region", "-"),
        ],
    )
    .note("rows: K/J slow, h/J fast; lambda = 0 in region III");
    for c in &map.cells {
        t.push(vec![
            c.h_over_j.into(),
            c.k_over_j.into(),
            c.lambda.into(),
            c.region.to_string().into(),
        ]);
    }
    t
}

fn boundary_table(k_values: &[f64]) -> Table {
    let mut t = Table::new(
        "boundaries",
        &[("K_over_J", "1"), ("h1_over_J", "1"), ("h2_over_J", "1")],
    )
    .note("h2 is a region boundary only for K/J > 1/4");
    for &k in k_values {
        t.push(vec![k.into(), H1_OVER_J.into(), h2_over_j(k).into()]);
    }
    t
}

fn ridge_tables(fit: &RidgeFit) -> Vec<Table> {
    let mut line = Table::new(
        "maxline",
        &[
            ("slope", "1"),
            ("intercept", "1"),
            ("rms", "1"),
            ("points", "count"),
        ],
    )
    .note("K_opt/J = slope * h/J + intercept");
    line.push(vec![
        fit.slope.into(),
        fit.intercept.into(),
        fit.rms.into(),
        fit.ridge.len().into(),
    ]);
    let mut ridge = Table::new("ridge", &[("h_over_J", "1"), ("K_over_J", "1")]);
    for &(h, k) in &fit.ridge {
        ridge.push(vec![h.into(), k.into()]);
    }
    vec![line, ridge]
}

fn potential_table(p: &ModelParams, config: &RunConfig) -> Table {
    let mut t = Table::new(format!("potential_{}", label(p)), &[("Q", "1"), ("V", "J")]).note(caption(p));
    for q in linspace(-2.0, 2.0, config.potential.q_steps) {
        t.push(vec![q.into(), effective_potential(q, p).into()]);
    }
    t
}

fn fixed_point_table(sets: &[ModelParams]) -> Result<Table> {
    let mut t = Table::new(
        "fixed_points",
        &[
            ("series", "-"),
            ("Q", "1"),
            ("P", "1"),
            ("theta", "rad"),
            ("phi", "rad"),
            ("stability", "-"),
            ("lambda", "J"),
        ],
    );
    for p in sets {
        for fp in find_fixed_points(p)? {
            t.push(vec![
                label(p).into(),
                fp.location.q.into(),
                fp.location.p.into(),
                fp.bloch_theta.into(),
                fp.bloch_phi.into(),
                fp.stability.as_str().into(),
                lyapunov_exponent(&fp, p).into(),
            ]);
        }
    }
    Ok(t)
}

fn lyapunov_table(sets: &[ModelParams]) -> Result<Table> {
    let mut t = Table::new(
        "lyapunov",
        &[
            ("series", "-"),
            ("h_over_J", "1"),
            ("K_over_J", "1"),
            ("region", "-"),
            ("h2_over_J", "1"),
            ("Q_hyp", "1"),
            ("lambda", "J"),
            ("kappa_over_lambda", "1"),
        ],
    );
    for p in sets {
        let info = classify_region(p)?;
        let fp = primary_hyperbolic_point(p).ok();
        let exp = fp.as_ref().and_then(|f| local_expansion(p, f).ok());
        t.push(vec![
            label(p).into(),
            (p.h / p.j).into(),
            (p.k / p.j).into(),
            info.label.to_string().into(),
            info.h2_over_j.into(),
            fp.map(|f| f.q()).into(),
            fp.map(|_| max_lyapunov(p)).transpose()?.into(),
            exp.map(|e| e.kappa_over_lambda()).into(),
        ]);
    }
    Ok(t)
}

/// Physical times for a grid in `Jt`.
fn physical_times(p: &ModelParams, jt: &[f64]) -> Vec<f64> {
    jt.iter().map(|x| x / p.j).collect()
}

fn gain_table(p: &ModelParams, name: String, curve: &GainCurve) -> Table {
    let policy = match curve.alpha_policy {
        AlphaPolicy::Optimal => "alpha: optimal".to_string(),
        AlphaPolicy::Fixed(a) => format!("alpha: fixed {a}"),
    };
    let mut t = Table::new(name, &[("Jt", "1"), ("ln_G2", "1"), ("alpha_max", "rad")])
        .note(caption(p))
        .note(policy);
    for ((tt, g), a) in curve.times.iter().zip(curve.ln_gain_sq()).zip(&curve.alpha) {
        t.push(vec![(tt * p.j).into(), g.into(), (*a).into()]);
    }
    t
}

fn gain_tables(sets: &[ModelParams], config: &RunConfig, policy: AlphaPolicy) -> Result<Vec<Table>> {
    let jt = config.time.values();
    let mut tables = Vec::with_capacity(sets.len() + 1);
    let mut rates = Table::new(
        "growth",
        &[
            ("series", "-"),
            ("lambda", "J"),
            ("two_lambda_over_J", "1"),
            ("fit_slope", "1"),
            ("fit_intercept", "1"),
            ("fit_Jt_start", "1"),
            ("fit_Jt_end", "1"),
        ],
    )
    .note("fit: least squares of ln_G2 against Jt over 1 <= ln_G2 <= ln(N)/2");
    for p in sets {
        let curve = gain_curve(p, &physical_times(p, &jt), policy)?;
        let lambda = max_lyapunov(p)?;
        let fit = fit_growth_rate(&curve, p.n).ok();
        rates.push(vec![
            label(p).into(),
            lambda.into(),
            (2.0 * lambda / p.j).into(),
            fit.map(|f| f.slope / p.j).into(),
            fit.map(|f| f.intercept).into(),
            fit.map(|f| f.t_start * p.j).into(),
            fit.map(|f| f.t_end * p.j).into(),
        ]);
        tables.push(gain_table(p, format!("gain_{}", label(p)), &curve));
    }
    tables.push(rates);
    Ok(tables)
}

fn infidelity_tables(sets: &[ModelParams], config: &RunConfig) -> Result<Vec<Table>> {
    let deltas = config.echo.delta_phis();
    sets.iter()
        .map(|p| {
            let curve = infidelity_curve(p, config.echo.t / p.j, &deltas, config.alpha)?;
            let mut t = Table::new(
                format!("infidelity_{}", label(p)),
                &[("delta_phi", "rad"), ("one_minus_F", "1")],
            )
            .note(caption(p))
            .note(format!("Jt: {}", config.echo.t))
            .note(format!("alpha: {}", curve.alpha));
            for (d, v) in curve.delta_phi.iter().zip(&curve.one_minus_f) {
                t.push(vec![(*d).into(), (*v).into()]);
            }
            Ok(t)
        })
        .collect()
}

fn husimi_tables(config: &RunConfig) -> Result<Vec<Table>> {
    let hs = &config.husimi;
    let grid = HusimiGrid::Disk {
        q_steps: hs.q_steps,
        p_steps: hs.p_steps,
    };
    let mut tables = Vec::new();
    for p in &config.params {
        let (psi0, fp) = hyperbolic_initial_state(p)?;
        let prop = Propagator::cached(p)?;
        for (i, &jt) in hs.times.iter().enumerate() {
            let field = husimi(&evolve(&psi0, &prop, jt / p.j)?, grid)?;
            let mut t = Table::new(
                format!("husimi_{}_t{i}", label(p)),
                &[("Q", "1"), ("P", "1"), ("value", "1")],
            )
            .note(caption(p))
            .note(format!("Jt: {jt}"))
            .note(format!("quadrature: {}", field.quadrature()));
            for n in &field.nodes {
                t.push(vec![n.x.into(), n.y.into(), n.value.into()]);
            }
            tables.push(t);
        }
        let mut sep = Table::new(
            format!("separatrix_{}", label(p)),
            &[("branch", "index"), ("Q", "1"), ("P", "1")],
        )
        .note(caption(p))
        .note(format!("hyperbolic point: Q={} P=0", fp.q()));
        for (b, line) in separatrix(p, hs.separatrix_resolution)?.iter().enumerate() {
            for pt in &line.points {
                sep.push(vec![b.into(), pt.q.into(), pt.p.into()]);
            }
            if line.closed {
                if let Some(pt) = line.points.first() {
                    sep.push(vec![b.into(), pt.q.into(), pt.p.into()]);
                }
            }
        }
        tables.push(sep);
    }
    Ok(tables)
}

fn expansion_row(p: &ModelParams, e: &LocalExpansion) -> Vec<Cell> {
    let b = bosonic_coefficients(e);
    vec![
        label(p).into(),
        e.q_hyp.into(),
        e.h0.into(),
        e.mu.into(),
        e.nu.into(),
        e.gamma.into(),
        e.eta.into(),
        e.kappa.into(),
        e.lambda.into(),
        b.number.into(),
        b.squeezing.into(),
        b.cubic_pure.into(),
        b.cubic_mixed.into(),
    ]
}

fn covariance_tables(sets: &[ModelParams], config: &RunConfig) -> Result<Vec<Table>> {
    let jt = config.time.values();
    let mut tables = Vec::with_capacity(sets.len() + 1);
    let mut coeffs = Table::new(
        "expansion",
        &[
            ("series", "-"),
            ("Q_hyp", "1"),
            ("H0", "J"),
            ("mu", "J"),
            ("nu", "J"),
            ("gamma", "J"),
            ("eta", "J"),
            ("kappa", "J"),
            ("lambda", "J"),
            ("boson_number", "J"),
            ("boson_squeezing", "J"),
            ("boson_cubic_pure", "J"),
            ("boson_cubic_mixed", "J"),
        ],
    );
    for p in sets {
        let e = local_expansion(p, &primary_hyperbolic_point(p)?)?;
        coeffs.push(expansion_row(p, &e));
        let mut t = Table::new(
            format!("covariance_{}", label(p)),
            &[
                ("Jt", "1"),
                ("xi_c_sq", "1"),
                ("ln_xi_c_sq", "1"),
                ("alpha_max", "rad"),
            ],
        )
        .note(caption(p));
        for s in analytic_series(&e, &physical_times(p, &jt)) {
            t.push(vec![
                (s.t * p.j).into(),
                s.xi_c_sq.into(),
                s.ln_xi_c_sq.into(),
                s.alpha_max.into(),
            ]);
        }
        tables.push(t);
    }
    tables.push(coeffs);
    Ok(tables)
}

fn matched_tables(config: &RunConfig) -> Result<Vec<Table>> {
    let m = &config.matched;
    let base = config.params[0];
    let pair = matched_lambda_along(m.lambda * base.j, base.j, m.k_over_j * base.j, base.n)?;
    let mut summary = Table::new(
        "matched",
        &[
            ("series", "-"),
            ("h_over_J", "1"),
            ("K_over_J", "1"),
            ("lambda", "J"),
            ("lambda_target", "J"),
        ],
    );
    for (p, lam) in [(pair.lmg, pair.lambda_lmg), (pair.quartic, pair.lambda_quartic)] {
        summary.push(vec![
            label(&p).into(),
            (p.h / p.j).into(),
            (p.k / p.j).into(),
            lam.into(),
            pair.lambda_target.into(),
        ]);
    }
    let sets = [pair.lmg, pair.quartic];
    let mut tables = vec![summary];
    tables.extend(gain_tables(&sets, config, config.alpha)?);
    tables.extend(covariance_tables(&sets, config)?);
    tables.extend(infidelity_tables(&sets, config)?);
    Ok(tables)
}

/// Cheap sanity checks on emitted data; a failure is a numerical error.
fn check_invariants(tables: &[Table]) -> Result<()> {
    let nums = |t: &Table, col: &str| -> Vec<f64> {
        let Some(i) = t.column(col) else { return Vec::new() };
        t.rows
            .iter()
            .filter_map(|r| match r[i] {
                Cell::Num(v) => Some(v),
                _ => None,
            })
            .collect()
    };
    let fail = |t: &Table, what: String| Err(Error::Numerical(format!("{}: {what}", t.name)));
    for t in tables {
        if let Some(v) = nums(t, "lambda").iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return fail(t, format!("Lyapunov exponent {v}"));
        }
        if let Some(v) = nums(t, "one_minus_F")
            .iter()
            .find(|v| !(-1e-12..=1.0 + 1e-12).contains(*v))
        {
            return fail(t, format!("infidelity {v} outside [0, 1]"));
        }
        if t.name.contains("husimi_") {
            if let Some(v) = nums(t, "value")
                .iter()
                .find(|v| !(-1e-12..=1.0 + 1e-12).contains(*v))
            {
                return fail(t, format!("Husimi value {v} outside [0, 1]"));
            }
        }
        let (jt, g) = (nums(t, "Jt"), nums(t, "ln_G2"));
        if jt.first() == Some(&0.0) && g.first().is_some_and(|g0| g0.abs() > 1e-8) {
            return fail(t, format!("ln G²(0) = {} instead of 0", g[0]));
        }
        if let Some(v) = g.iter().chain(&nums(t, "ln_xi_c_sq")).find(|v| !v.is_finite()) {
            return fail(t, format!("non-finite growth value {v}"));
        }
    }
    Ok(())
}
