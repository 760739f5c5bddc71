//! Subcommand implementations.

use crate::args::PsiArg;
use crate::emit::{report_field_kind, write_table, FieldKind, Format};
use crate::CliError;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use trigapprox::{
    build_witness, remez_trig, BetaSequence, BoundsReport, Error, KernelSpec, PeriodicFunction,
    ReportStatus, TrigPolynomial, VerifyOptions, WitnessSpec,
};

pub struct OutputTarget {
    pub format: Format,
    pub path: Option<PathBuf>,
}

impl OutputTarget {
    pub fn write(&self, emit: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), CliError> {
        match &self.path {
            Some(path) => {
                let file = std::fs::File::create(path)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
                let mut buffered = std::io::BufWriter::new(file);
                emit(&mut buffered).map_err(|e| CliError::Io(e.to_string()))?;
                buffered.flush().map_err(|e| CliError::Io(e.to_string()))
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                emit(&mut lock).map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

/// `kernel`: evaluate Ψ on a uniform grid over [0, 2π).
pub fn run_kernel(
    psi: PsiArg,
    beta: BetaSequence,
    points: usize,
    tail_eps: f64,
    target: OutputTarget,
) -> Result<(), CliError> {
    let psi = psi.sequence(1).map_err(CliError::from)?;
    let spec = KernelSpec::new(psi, beta, tail_eps).map_err(CliError::from)?;
    let truncation = spec.truncation_order().map_err(|e| match e {
        Error::ToleranceNotMet { requested, achieved } => CliError::Invariant(format!(
            "kernel truncation cannot certify tail <= {requested:e} (best {achieved:e}); raise --tail-eps"
        )),
        other => CliError::from(other),
    })?;
    if truncation > 100_000 {
        eprintln!("note: kernel needs {truncation} terms per evaluation at this tolerance");
    }
    let points = points.max(2);
    let mut rows = Vec::with_capacity(points);
    for j in 0..points {
        let t = 2.0 * PI * j as f64 / points as f64;
        let v = spec.eval(t).map_err(CliError::from)?;
        rows.push(vec![format!("{t}"), format!("{v}")]);
    }
    target.write(|out| {
        write_table(
            out,
            target.format,
            &["t", "value"],
            &|_| FieldKind::Float,
            &rows,
        )
    })
}

/// `bounds`: one full verification report for a single parameter point.
pub fn run_bounds(
    n: usize,
    p: f64,
    psi: PsiArg,
    beta: BetaSequence,
    delta: Option<f64>,
    tol: Option<f64>,
    target: OutputTarget,
) -> Result<(), CliError> {
    let opts = verify_options(tol);
    let report = point_report(n, p, &psi, &beta, delta, &opts);
    let failed = matches!(report.status, ReportStatus::Failed(_));
    let reason = report.status.reason().to_string();
    let rows = vec![report.to_fields().into_iter().map(|(_, v)| v).collect()];
    target.write(|out| {
        write_table(
            out,
            target.format,
            BoundsReport::field_names(),
            &|name| report_field_kind(name),
            &rows,
        )
    })?;
    if failed {
        return Err(CliError::Invariant(reason));
    }
    Ok(())
}

/// `witness`: sample f = F₁ + F₂ and emit the alternation data.
pub fn run_witness(
    n: usize,
    p: f64,
    psi: PsiArg,
    beta: BetaSequence,
    delta: Option<f64>,
    points: usize,
    target: OutputTarget,
) -> Result<(), CliError> {
    let psi = psi.sequence(n).map_err(CliError::from)?;
    let spec = WitnessSpec::new(n, p, delta, psi, beta).map_err(CliError::from)?;
    let witness = build_witness(&spec).map_err(CliError::from)?;
    let points = points.max(8);
    let mut rows = Vec::with_capacity(points + 2 * n);
    for j in 0..points {
        let t = 2.0 * PI * j as f64 / points as f64;
        rows.push(vec![
            "sample".to_string(),
            j.to_string(),
            format!("{t}"),
            format!("{}", witness.f.eval(t)),
            String::new(),
        ]);
    }
    for (m, &x) in witness.points.iter().enumerate() {
        let v = witness.f.eval(x);
        let sign_ok = if m % 2 == 0 { v > 0.0 } else { v < 0.0 };
        rows.push(vec![
            "alternation".to_string(),
            m.to_string(),
            format!("{x}"),
            format!("{v}"),
            sign_ok.to_string(),
        ]);
    }
    target.write(|out| {
        write_table(
            out,
            target.format,
            &["kind", "index", "t", "f", "sign_ok"],
            &|name| match name {
                "kind" => FieldKind::Text,
                "index" => FieldKind::Int,
                "sign_ok" => FieldKind::Bool,
                _ => FieldKind::Float,
            },
            &rows,
        )
    })
}

/// `remez`: best-approximate a uniformly sampled function file.
pub fn run_remez(
    input: PathBuf,
    n: usize,
    tol: Option<f64>,
    target: OutputTarget,
) -> Result<(), CliError> {
    let samples = read_samples(&input)?;
    let f = interpolant_from_samples(&samples)?;
    let opts = verify_options(tol);
    let result =
        remez_trig(&f, n, opts.remez_tol, opts.remez_max_iter).map_err(CliError::from)?;

    let empty = String::new;
    let mut rows = Vec::new();
    rows.push(vec![
        "summary".to_string(),
        empty(),
        empty(),
        format!("{}", result.value),
        empty(),
        empty(),
        result.certified.to_string(),
        result.iterations.to_string(),
        format!("{}", result.leveled_error),
    ]);
    for (k, &a) in result.best.a.iter().enumerate() {
        let b = if k == 0 {
            0.0
        } else {
            result.best.b[k - 1]
        };
        rows.push(vec![
            "coefficient".to_string(),
            k.to_string(),
            empty(),
            empty(),
            format!("{a}"),
            format!("{b}"),
            empty(),
            empty(),
            empty(),
        ]);
    }
    for (i, &x) in result.extrema.iter().enumerate() {
        rows.push(vec![
            "extremum".to_string(),
            i.to_string(),
            format!("{x}"),
            format!("{}", f.eval(x) - result.best.eval(x)),
            empty(),
            empty(),
            empty(),
            empty(),
            empty(),
        ]);
    }
    target.write(|out| {
        write_table(
            out,
            target.format,
            &[
                "kind",
                "index",
                "x",
                "value",
                "a",
                "b",
                "certified",
                "iterations",
                "level",
            ],
            &|name| match name {
                "kind" => FieldKind::Text,
                "index" | "iterations" => FieldKind::Int,
                "certified" => FieldKind::Bool,
                _ => FieldKind::Float,
            },
            &rows,
        )
    })?;
    if !result.certified {
        return Err(CliError::Invariant(format!(
            "exchange not certified after {} iterations",
            result.iterations
        )));
    }
    Ok(())
}

fn read_samples(path: &PathBuf) -> Result<Vec<(f64, f64)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut samples = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
        let (Some(t), Some(y)) = (parts.next(), parts.next()) else {
            return Err(CliError::Usage(format!(
                "{}:{}: expected `t value`",
                path.display(),
                lineno + 1
            )));
        };
        let (Ok(t), Ok(y)) = (t.parse::<f64>(), y.parse::<f64>()) else {
            if lineno == 0 {
                continue; // header line
            }
            return Err(CliError::Usage(format!(
                "{}:{}: expected numbers, got `{line}`",
                path.display(),
                lineno + 1
            )));
        };
        samples.push((t, y));
    }
    if samples.len() < 4 {
        return Err(CliError::Usage("need at least 4 samples".into()));
    }
    Ok(samples)
}

/// Band-limited interpolant through uniform samples over [0, 2π).
fn interpolant_from_samples(samples: &[(f64, f64)]) -> Result<PeriodicFunction, CliError> {
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let m = sorted.len();
    let h = 2.0 * PI / m as f64;
    for (j, &(t, _)) in sorted.iter().enumerate() {
        if (t - j as f64 * h).abs() > 1e-6 {
            return Err(CliError::Usage(format!(
                "samples must be uniform over [0, 2pi) starting at 0; sample {j} at t={t}, expected {}",
                j as f64 * h
            )));
        }
    }
    let order = (m - 1) / 2;
    let mut poly = TrigPolynomial::zero(order);
    for k in 0..=order {
        let (mut sc, mut ss) = (0.0, 0.0);
        for (j, &(_, y)) in sorted.iter().enumerate() {
            let (s, c) = (k as f64 * j as f64 * h).sin_cos();
            sc += y * c;
            ss += y * s;
        }
        poly.a[k] = 2.0 * sc / m as f64;
        if k >= 1 {
            poly.b[k - 1] = 2.0 * ss / m as f64;
        }
    }
    Ok(poly.to_periodic())
}

fn verify_options(tol: Option<f64>) -> VerifyOptions {
    let mut opts = VerifyOptions::default();
    if let Some(t) = tol {
        opts.remez_tol = t;
    }
    opts
}

fn point_report(
    n: usize,
    p: f64,
    psi: &PsiArg,
    beta: &BetaSequence,
    delta: Option<f64>,
    opts: &VerifyOptions,
) -> BoundsReport {
    let sequence = match psi.sequence(n) {
        Ok(s) => s,
        Err(e) => {
            let placeholder = trigapprox::PsiSequence::table(vec![0.0]).unwrap();
            let mut rep = BoundsReport::for_params(n, p, &placeholder, beta);
            rep.status = ReportStatus::Skipped(format!("psi invalid at n={n}: {e}"));
            return rep;
        }
    };
    match trigapprox::verify_point(n, p, &sequence, beta, delta, opts) {
        Ok(rep) => rep,
        Err(e) => {
            let mut rep = BoundsReport::for_params(n, p, &sequence, beta);
            rep.status = ReportStatus::Failed(e.to_string());
            rep
        }
    }
}

pub struct SweepPlan {
    pub psi: PsiArg,
    pub beta: BetaSequence,
    pub n_set: Vec<usize>,
    pub p_set: Vec<f64>,
    pub delta: Option<f64>,
    pub tol: Option<f64>,
    pub jobs: usize,
    pub target: OutputTarget,
}

/// `sweep` and `verify` share the grid runner; `verify` additionally
/// summarizes and fails on certified-invariant violations.
pub fn run_sweep(plan: SweepPlan, verify: bool) -> Result<(), CliError> {
    let mut p_set = plan.p_set.clone();
    p_set.sort_by(|a, b| a.partial_cmp(b).unwrap());
    p_set.dedup();
    // lexicographic parameter order: n ascending, then p ascending
    let points: Vec<(usize, f64)> = plan
        .n_set
        .iter()
        .flat_map(|&n| p_set.iter().map(move |&p| (n, p)))
        .collect();
    let opts = verify_options(plan.tol);
    let reports = compute_reports(&points, &plan.psi, &plan.beta, plan.delta, &opts, plan.jobs);

    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| r.to_fields().into_iter().map(|(_, v)| v).collect())
        .collect();
    plan.target.write(|out| {
        write_table(
            out,
            plan.target.format,
            BoundsReport::field_names(),
            &|name| report_field_kind(name),
            &rows,
        )
    })?;

    if verify {
        let ok = reports
            .iter()
            .filter(|r| matches!(r.status, ReportStatus::Ok))
            .count();
        let skipped: Vec<&BoundsReport> = reports
            .iter()
            .filter(|r| matches!(r.status, ReportStatus::Skipped(_)))
            .collect();
        let failed: Vec<&BoundsReport> = reports
            .iter()
            .filter(|r| matches!(r.status, ReportStatus::Failed(_)))
            .collect();
        for rep in &skipped {
            eprintln!(
                "skipped n={} p={}: {}",
                rep.n,
                fmt_p(rep.p),
                rep.status.reason()
            );
        }
        for rep in &failed {
            eprintln!(
                "FAILED n={} p={}: {}",
                rep.n,
                fmt_p(rep.p),
                rep.status.reason()
            );
        }
        eprintln!(
            "verify: {} ok, {} skipped, {} failed of {} points",
            ok,
            skipped.len(),
            failed.len(),
            reports.len()
        );
        if !failed.is_empty() {
            return Err(CliError::Invariant(format!(
                "{} verification point(s) failed",
                failed.len()
            )));
        }
    }
    Ok(())
}

fn fmt_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".to_string()
    } else {
        format!("{p}")
    }
}

/// Execute points on `jobs` workers; results land in submission order, so
/// emission is byte-identical regardless of parallelism.
fn compute_reports(
    points: &[(usize, f64)],
    psi: &PsiArg,
    beta: &BetaSequence,
    delta: Option<f64>,
    opts: &VerifyOptions,
    jobs: usize,
) -> Vec<BoundsReport> {
    let jobs = jobs.max(1).min(points.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<BoundsReport>>> =
        points.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= points.len() {
                    break;
                }
                let (n, p) = points[i];
                let report = point_report(n, p, psi, beta, delta, opts);
                *slots[i].lock().unwrap() = Some(report);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("worker filled slot"))
        .collect()
}

pub fn resolve_format(s: Option<&str>) -> Result<Format, CliError> {
    match s {
        None | Some("csv") => Ok(Format::Csv),
        Some("jsonl") => Ok(Format::Jsonl),
        Some(other) => Err(CliError::Usage(format!(
            "unknown format `{other}` (csv|jsonl)"
        ))),
    }
}

