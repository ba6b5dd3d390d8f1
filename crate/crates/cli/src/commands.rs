use std::path::Path;

use dirspace::dirichlet::{
    estimate_abscissae, euler_product_bound, translation_numbers, Abscissa, CoefficientFamily, CoefficientRule,
    DirichletPolynomial,
};
use dirspace::io::{read_nodes, read_series, NodeFile};
use dirspace::linalg::{is_psd, CMatrix};
use dirspace::plancherel::{verify_plancherel, AverageSchedule};
use dirspace::rkhs::factorizations::{ordered_factorizations, verify_pick_identity};
use dirspace::rkhs::gram::conjecture_report;
use dirspace::rkhs::{
    build_interpolating_sequence, carleson_ratio, gram_matrix, multiplier_norm_estimate, pick_matrix,
    realization_evaluate, realization_random, sup_norm_estimate, PickProblem, SpaceHandle, SupGrid,
};
use dirspace::specialfn::{solve_rho, zeta_complex, zeta_euler_maclaurin, zeta_real};
use dirspace::weights::{verify_slow_decay, WeightSequence};
use dirspace::{Complex64, ComplexPoint, Error, Result};

use crate::args::{Command, Point, SpaceArgs};
use crate::report::{float, Cell, Report, Table};

/// A finished report plus a nonzero exit code when the run hit an
/// iteration cap but still produced its best iterate.
pub struct Outcome {
    pub report: Report,
    pub exit: Option<i32>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, exit: None }
    }
}

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn point(p: Point) -> Result<ComplexPoint> {
    ComplexPoint::new(p.sigma, p.t)
}

fn weights(args: &SpaceArgs, default: &str) -> Result<WeightSequence> {
    args.weights.as_deref().unwrap_or(default).parse()
}

fn space(args: &SpaceArgs, default: &str) -> Result<SpaceHandle> {
    let mut s = SpaceHandle::new(weights(args, default)?).with_kernel_truncation(args.truncation)?;
    if let Some(n0) = args.n0 {
        s = s.with_n0(n0)?;
    }
    Ok(s)
}

fn series(path: &Path) -> Result<DirichletPolynomial> {
    read_series(path)
}

fn nodes_with_targets(path: &Path) -> Result<(Vec<ComplexPoint>, Vec<Complex64>)> {
    let NodeFile { nodes, targets } = read_nodes(path)?;
    let targets = targets.ok_or_else(|| domain(format!("{} has no target columns", path.display())))?;
    Ok((nodes, targets))
}

fn complex_table(m: &CMatrix) -> Table {
    let mut t = Table::new(&["i", "j", "re", "im"]);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            t.push(vec![i.into(), j.into(), m[(i, j)].re.into(), m[(i, j)].im.into()]);
        }
    }
    t
}

fn hs_offdiag_normalized(m: &CMatrix) -> Option<f64> {
    let d: Vec<f64> = (0..m.nrows()).map(|i| m[(i, i)].re).collect();
    if d.iter().any(|&x| x.is_nan() || x <= 0.0) {
        return None;
    }
    let mut acc = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                acc += m[(i, j)].norm_sqr() / (d[i] * d[j]);
            }
        }
    }
    Some(acc.sqrt())
}

fn abscissa(a: Abscissa) -> serde_json::Value {
    float(a.value())
}

pub fn run(command: &Command) -> Result<Outcome> {
    let outcome = match command {
        Command::Zeta { s } => {
            let z = point(*s)?.to_complex();
            let v = zeta_complex(z)?;
            let mut r = Report::new();
            r.set_f64("sigma", s.sigma).set_f64("t", s.t).set_f64("re", v.re).set_f64("im", v.im);
            if z.re > 0.0 {
                let em = zeta_euler_maclaurin(z)?;
                r.set_f64("path_gap", (em - v).norm());
            }
            r.into()
        }
        Command::Rho { tol } => {
            let rho = solve_rho(*tol)?;
            let mut r = Report::new();
            r.set_f64("rho", rho).set_f64("residual", (zeta_real(2.0 * rho)? - 2.0).abs()).set_f64("tol", *tol);
            r.into()
        }
        Command::Weights { weights, from, to, slow_decay_eps, slow_decay_n_max } => {
            let w: WeightSequence = weights.parse()?;
            if from > to {
                return Err(domain("--from exceeds --to"));
            }
            let mut t = Table::new(&["n", "w"]);
            for n in *from..=*to {
                t.push(vec![n.into(), w.weight(n)?.into()]);
            }
            let mut r = Report::new();
            r.set("weights", w.to_string());
            if let Some(eps) = slow_decay_eps {
                r.set_f64("slow_decay_eps", *eps)
                    .set_f64("slow_decay_constant", verify_slow_decay(&w, *eps, *slow_decay_n_max)?);
            }
            r.with_table("rows", t).into()
        }
        Command::Norm { space: sa, series: path, other } => {
            let h = space(sa, "log-power:0")?;
            let f = series(path)?;
            let mut r = Report::new();
            r.set("weights", h.weights().to_string()).set("n0", h.n0()).set_f64("norm", h.norm(&f)?);
            if let Some(other) = other {
                let ip = h.inner_product(&f, &series(other)?)?;
                r.set_f64("inner_re", ip.re).set_f64("inner_im", ip.im);
            }
            r.into()
        }
        Command::Kernel { space: sa, s, u, nodes } => {
            let h = space(sa, "log-power:0")?;
            if let Some(path) = nodes {
                let pts = read_nodes(path)?.nodes;
                let k = h.kernel_matrix(&pts)?;
                return Ok(Report::new().with_table("entries", complex_table(&k)).into());
            }
            let (s, u) = match (s, u) {
                (Some(s), Some(u)) => (point(*s)?, point(*u)?),
                _ => return Err(domain("kernel needs --s and --u, or --nodes")),
            };
            let k = h.kernel(s, u)?;
            let mut r = Report::new();
            r.set_f64("re", k.value().re)
                .set_f64("im", k.value().im)
                .set_f64("truncated_re", k.truncated.re)
                .set_f64("truncated_im", k.truncated.im)
                .set_f64("tail_bound", k.tail_bound)
                .set("closed_form", k.closed_form.is_some())
                .set("warning", k.warning);
            r.into()
        }
        Command::Factorizations { from, to } => {
            if from > to || *from == 0 {
                return Err(domain("need 1 ≤ --from ≤ --to"));
            }
            let mut t = Table::new(&["n", "F"]);
            for n in *from..=*to {
                t.push(vec![n.into(), ordered_factorizations(n)?.into()]);
            }
            Report::new().with_table("rows", t).into()
        }
        Command::Identity { sigma, big_n } => {
            let rep = verify_pick_identity(*sigma, *big_n)?;
            let mut r = Report::new();
            r.set_f64("sigma", rep.sigma)
                .set("N", rep.n)
                .set_f64("lhs", rep.lhs)
                .set_f64("rhs", rep.rhs)
                .set_f64("gap", rep.gap);
            r.into()
        }
        Command::Plancherel { series: path, measure, t_ladder, c, trapezoid, t_step } => {
            let f = series(path)?;
            let mu = match measure.parse::<WeightSequence>()? {
                WeightSequence::Moment { measure } => measure,
                other => return Err(domain(format!("--measure must be a moment: string, got {other}"))),
            };
            let schedule = AverageSchedule::new(t_ladder.clone(), c.clone(), *t_step, !trapezoid)?;
            let rep = verify_plancherel(&f, &mu, &schedule)?;
            let mut t = Table::new(&["T", "c", "value", "target", "abs_error"]);
            for row in &rep.rows {
                t.push(vec![
                    row.t_horizon.into(),
                    row.c.into(),
                    row.value.into(),
                    row.target.into(),
                    row.abs_error.into(),
                ]);
            }
            let mut r = Report::new();
            r.set_f64("target", rep.target)
                .set("extrapolated", rep.extrapolated.map(float).unwrap_or(serde_json::Value::Null))
                .set("trend_ok", rep.trend_ok);
            r.with_table("rows", t).into()
        }
        Command::PickCheck { space: sa, nodes, tol } => {
            let h = space(sa, "pick")?;
            let (pts, targets) = nodes_with_targets(nodes)?;
            let p = pick_matrix(&PickProblem::new(pts, targets)?, &h)?;
            let psd = is_psd(&p, *tol)?;
            let mut r = Report::new();
            r.set_f64("lambda_min", psd.lambda_min)
                .set_f64("lambda_max", psd.lambda_max)
                .set("hs_offdiag", hs_offdiag_normalized(&p).map(float).unwrap_or(serde_json::Value::Null))
                .set("psd", psd.psd)
                .set_f64("tol", psd.tol);
            matrix_or_report(r, &p)
        }
        Command::Gram { space: sa, nodes, tol } => {
            let h = space(sa, "pick")?;
            let pts = read_nodes(nodes)?.nodes;
            let g = gram_matrix(&pts, &h)?;
            let conj = conjecture_report(&g);
            let d = g.diagnostics;
            let mut r = Report::new();
            r.set_f64("lambda_min", d.lambda_min)
                .set_f64("lambda_max", d.lambda_max)
                .set_f64("hs_offdiag", d.hs_offdiag)
                .set("psd", d.lambda_min >= -tol * d.lambda_max.max(1.0))
                .set_f64("tol", *tol)
                .set_f64("separation_constant", conj.separation_constant)
                .set_f64("gram_upper_bound", conj.gram_upper_bound);
            matrix_or_report(r, &g.entries)
        }
        Command::InterpBuild { count, seed, nodes_out } => {
            let h = SpaceHandle::new(WeightSequence::PickReciprocal);
            let seq = build_interpolating_sequence(&h, *count, *seed)?;
            if let Some(path) = nodes_out {
                let text: String = seq.nodes.iter().map(|p| format!("{:.16e} {:.16e}\n", p.sigma, p.t)).collect();
                std::fs::write(path, text)?;
            }
            let mut t = Table::new(&["index", "sigma", "t", "trials"]);
            for (i, (p, trials)) in seq.nodes.iter().zip(&seq.trials).enumerate() {
                t.push(vec![(i + 1).into(), p.sigma.into(), p.t.into(), (*trials).into()]);
            }
            let d = seq.gram.diagnostics;
            let mut r = Report::new();
            r.set("seed", *seed)
                .set_f64("lambda_min", d.lambda_min)
                .set_f64("lambda_max", d.lambda_max)
                .set_f64("hs_offdiag", d.hs_offdiag);
            r.with_table("nodes", t).into()
        }
        Command::Realize { seed, n_e, d, s, nodes } => {
            let model = realization_random(*seed, *n_e, *d)?;
            let pts: Vec<ComplexPoint> = match nodes {
                Some(path) => read_nodes(path)?.nodes,
                None => s.iter().map(|p| point(*p)).collect::<Result<_>>()?,
            };
            let mut t = Table::new(&["sigma", "t", "re", "im", "abs"]);
            for p in pts {
                let v = realization_evaluate(&model, p)?;
                t.push(vec![p.sigma.into(), p.t.into(), v.re.into(), v.im.into(), v.norm().into()]);
            }
            let mut r = Report::new();
            r.set("seed", *seed)
                .set("N_E", *n_e as u64)
                .set("d", *d as u64)
                .set_f64("unitarity_defect", model.unitarity_defect);
            r.with_table("values", t).into()
        }
        Command::MultNorm { space: sa, series: path, trunc } => {
            let phi = series(path)?;
            // Multipliers act on the whole space; start at 1 where the weights allow it.
            let n0 = sa.n0.unwrap_or(weights(sa, "log-power:0")?.min_index());
            let h = space(&SpaceArgs { n0: Some(n0), ..sa.clone() }, "log-power:0")?;
            let est = multiplier_norm_estimate(&phi, &h, *trunc)?;
            let mut r = Report::new();
            r.set("weights", h.weights().to_string())
                .set("n0", h.n0())
                .set("trunc", *trunc)
                .set_f64("value", est.value)
                .set("iterations", est.iterations as u64)
                .set("converged", est.converged);
            Outcome { report: r, exit: (!est.converged).then_some(3) }
        }
        Command::SupNorm { series: path, sigmas, t_max, t_points } => {
            let phi = series(path)?;
            let grid = SupGrid { sigmas: sigmas.clone(), t_max: *t_max, t_points: *t_points };
            let mut r = Report::new();
            r.set_f64("sup", sup_norm_estimate(&phi, &grid)?);
            r.into()
        }
        Command::Carleson { series: path, alpha, tests, t_horizon } => {
            let phi = series(path)?;
            let tests: Vec<DirichletPolynomial> = tests.iter().map(|p| series(p)).collect::<Result<_>>()?;
            let mut r = Report::new();
            r.set_f64("alpha", *alpha)
                .set_f64("T", *t_horizon)
                .set_f64("ratio", carleson_ratio(&phi, *alpha, &tests, *t_horizon)?);
            r.into()
        }
        Command::Abscissae { family, eps, series: path, horizon } => {
            let family = match family.as_str() {
                "zeta" => CoefficientFamily::Zeta,
                "shifted-zeta" => CoefficientFamily::ShiftedZeta { eps: *eps },
                "table" => {
                    let path = path.as_ref().ok_or_else(|| domain("--family table needs --series"))?;
                    CoefficientFamily::Table(series(path)?)
                }
                other => return Err(domain(format!("unknown family `{other}`"))),
            };
            let rep = estimate_abscissae(&CoefficientRule { family, horizon: *horizon })?;
            let mut r = Report::new();
            r.set("sigma_c", abscissa(rep.sigma_c))
                .set("sigma_a", abscissa(rep.sigma_a))
                .set("sigma_b", abscissa(rep.sigma_b))
                .set("horizon", rep.horizon)
                .set_f64("residual", rep.residual);
            r.into()
        }
        Command::Translations { series: path, sigma0, eps, window, step } => {
            let f = series(path)?;
            if window.len() != 2 {
                return Err(Error::Domain("--window takes two values, START,END".into()));
            }
            let rep = translation_numbers(&f, *sigma0, *eps, (window[0], window[1]), *step)?;
            let mut t = Table::new(&["tau"]);
            for tau in &rep.taus {
                t.push(vec![Cell::Float(*tau)]);
            }
            let mut r = Report::new();
            r.set("count", rep.taus.len() as u64).set_f64("min_discrepancy", rep.min_discrepancy);
            r.with_table("taus", t).into()
        }
        Command::SmoothProject { series: path, primes, sigma } => {
            let f = series(path)?;
            let p = f.project_smooth(*primes);
            let mut t = Table::new(&["n", "re", "im"]);
            for (n, a) in p.terms() {
                t.push(vec![n.into(), a.re.into(), a.im.into()]);
            }
            let mut r = Report::new();
            r.set("primes", *primes as u64).set("terms", p.len() as u64);
            if let Some(sigma) = sigma {
                r.set_f64("sigma", *sigma).set_f64("euler_product_bound", euler_product_bound(*primes, *sigma));
            }
            r.with_table("coefficients", t).into()
        }
    };
    Ok(outcome)
}

/// JSON carries the diagnostics; CSV carries the matrix.
fn matrix_or_report(r: Report, m: &CMatrix) -> Outcome {
    r.with_csv_table(complex_table(m)).into()
}
