use akr_core::asymptotics::{
    extrapolate, limit_target, residual_series_with_workers, ConvergenceSeries, ExtrapolationResult,
};
use akr_core::parallel::ordered_map;
use akr_core::verification::{relative_error, run_all};
use akr_core::{
    akr_apply, bernstein_apply, decomposition, lemma_sum, lookup, tensor_akr_apply,
    tensor_bernstein_apply, CatalogEntry, DerivativePolicy, NodeTable, OperatorKind, SquarePoint,
    Subject,
};

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::report::{Cell, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Unasserted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unasserted => "UNASSERTED",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub verdict: Verdict,
}

/// Executes a validated config.
pub fn run(config: &RunConfig, workers: usize) -> Result<Outcome, CliError> {
    match config.command {
        Command::Nodes => nodes(config),
        Command::Eval => eval(config),
        Command::Residual | Command::Lemma => residual(config, workers),
        Command::Decompose => decompose(config, workers),
        Command::Verify => verify(config, workers),
    }
}

fn entry(config: &RunConfig) -> Result<Option<CatalogEntry>, CliError> {
    config.fn_name.as_deref().map(lookup).transpose().map_err(CliError::from)
}

fn square(point: &[f64]) -> Result<SquarePoint, CliError> {
    Ok(SquarePoint::new(point[0], point[1])?)
}

fn nodes(config: &RunConfig) -> Result<Outcome, CliError> {
    let n = config.n.expect("nodes requires n");
    let table = NodeTable::new(n, config.j)?;
    let mut report = Report::new(config.clone(), &["k", "t"]);
    for (k, &t) in table.nodes().iter().enumerate() {
        report.push_row(vec![k.into(), t.into()]);
    }
    Ok(Outcome { report, verdict: Verdict::Unasserted })
}

fn eval(config: &RunConfig) -> Result<Outcome, CliError> {
    let n = config.n.expect("eval requires n");
    let kind = config.kind.expect("eval always has a kind");
    let entry = entry(config)?;
    let j = config.j;
    let value = match kind {
        OperatorKind::LemmaSum => lemma_sum(n, config.point[0])?,
        OperatorKind::Bernstein1d => {
            bernstein_apply(entry.as_ref().unwrap().as_1d()?, n, config.point[0])?
        }
        OperatorKind::Akr1d => akr_apply(entry.as_ref().unwrap().as_1d()?, n, j, config.point[0])?,
        OperatorKind::Bernstein2d | OperatorKind::Akr2d | OperatorKind::AkrMinusBernstein2d => {
            let f = entry.as_ref().unwrap().as_2d()?;
            let p = square(&config.point)?;
            match kind {
                OperatorKind::Bernstein2d => tensor_bernstein_apply(f, n, p)?,
                OperatorKind::Akr2d => tensor_akr_apply(f, n, j, p)?,
                _ => tensor_akr_apply(f, n, j, p)? - tensor_bernstein_apply(f, n, p)?,
            }
        }
    };
    let mut report = Report::new(config.clone(), &["n", "value"]);
    report.push_row(vec![n.into(), value.into()]);
    report.summarize("kind", kind.as_str());
    Ok(Outcome { report, verdict: Verdict::Unasserted })
}

fn residual(config: &RunConfig, workers: usize) -> Result<Outcome, CliError> {
    let kind = config.kind.expect("residual and lemma always have a kind");
    let entry = entry(config)?;
    let subject = match (kind, &entry) {
        (OperatorKind::LemmaSum, _) => Subject::Point(config.point[0]),
        (k, Some(e)) if k.is_2d() => Subject::Square(e.as_2d()?, square(&config.point)?),
        (_, Some(e)) => Subject::Line(e.as_1d()?, config.point[0]),
        (_, None) => unreachable!("config resolution supplies a function"),
    };
    let series = residual_series_with_workers(kind, config.j, subject, config.schedule(), workers)?;
    let ext = extrapolate(&series)?;
    let target = limit_target(kind, config.j, &subject, DerivativePolicy::AllowFiniteDifference)?;
    let mut report = Report::new(config.clone(), &["n", "value", "diff", "rate_estimate"]);
    push_series(&mut report, &series);
    let verdict = summarize_limit(&mut report, &ext, target, config.tolerance);
    Ok(Outcome { report, verdict })
}

fn push_series(report: &mut Report, series: &ConvergenceSeries) {
    let diffs = series.differences();
    let rates = series.local_rates();
    for ((e, d), r) in series.entries().iter().zip(diffs).zip(rates) {
        report.push_row(vec![e.n.into(), e.value.into(), d.into(), r.into()]);
    }
}

fn summarize_limit(
    report: &mut Report,
    ext: &ExtrapolationResult,
    target: Option<f64>,
    tolerance: f64,
) -> Verdict {
    let err = target.map(|t| relative_error(ext.limit_estimate, t));
    let verdict = match err {
        Some(e) => Verdict::from_bool(e <= tolerance),
        None => Verdict::Unasserted,
    };
    report.summarize("limit_estimate", ext.limit_estimate);
    report.summarize("rate_estimate", ext.rate_estimate);
    report.summarize("residual_tail", ext.residual_tail);
    report.summarize("monotone_tail", ext.monotone_tail);
    report.summarize("target", target);
    report.summarize("relative_error", err);
    report.summarize("tolerance", tolerance);
    report.summarize("verdict", verdict.as_str());
    verdict
}

fn decompose(config: &RunConfig, workers: usize) -> Result<Outcome, CliError> {
    let entry = entry(config)?.expect("decompose always has a function");
    let f = entry.as_2d()?;
    let p = square(&config.point)?;
    let degrees = config.schedule().degrees();
    let rows = ordered_map(&degrees, workers, |&n| decomposition(f, n, p))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new(
        config.clone(),
        &["n", "e_term", "f_term", "g_residual", "total", "g_bound"],
    );
    let mut bounded = true;
    let mut any_bound = false;
    let mut worst_ratio: f64 = 0.0;
    for d in &rows {
        let bound = d.g_bound(f);
        if let Some(b) = bound {
            any_bound = true;
            bounded &= d.g_residual.abs() <= b;
            if b > 0.0 {
                worst_ratio = worst_ratio.max(d.g_residual.abs() / b);
            }
        }
        report.push_row(vec![
            d.n.into(),
            d.e_term.into(),
            d.f_term.into(),
            d.g_residual.into(),
            d.total.into(),
            bound.into(),
        ]);
    }
    let verdict = if any_bound { Verdict::from_bool(bounded) } else { Verdict::Unasserted };
    report.summarize("worst_g_over_bound", if any_bound { Cell::Float(worst_ratio) } else { Cell::Empty });
    report.summarize("verdict", verdict.as_str());
    Ok(Outcome { report, verdict })
}

fn verify(config: &RunConfig, workers: usize) -> Result<Outcome, CliError> {
    let outcomes = run_all(workers);
    let mut report = Report::new(
        config.clone(),
        &["id", "criterion", "passed", "elapsed_s", "budget_s", "detail"],
    );
    let mut all = true;
    for o in &outcomes {
        let ok = o.passed && o.within_budget();
        all &= ok;
        report.push_row(vec![
            Cell::Int(o.id.into()),
            o.title.as_str().into(),
            ok.into(),
            o.elapsed.as_secs_f64().into(),
            o.budget.as_secs_f64().into(),
            o.detail.as_str().into(),
        ]);
    }
    let passed = outcomes.iter().filter(|o| o.passed && o.within_budget()).count();
    report.summarize("passed", passed);
    report.summarize("total", outcomes.len());
    let verdict = Verdict::from_bool(all);
    report.summarize("verdict", verdict.as_str());
    Ok(Outcome { report, verdict })
}
