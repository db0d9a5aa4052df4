use crate::config::{parse_real, Common, ConfigError, Defaults, Format, RunConfig, SetKind, DEFAULTS};
use crate::emit::{self, dec, Provenance, PROVENANCE_COLUMNS};
use complex_chebyshev::chebyshev::{chebyshev, ChebyshevOptions, ChebyshevRecord};
use complex_chebyshev::faber::{check_levels, faber_reference, fit_slope, log_spaced, loglog_slope, sweep_point, SweepFamily, SweepPoint};
use complex_chebyshev::geometry::BoundaryCurve;
use complex_chebyshev::zeros::{polynomial_zeros, zero_measure_summary};
use complex_chebyshev::{Error, Real};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

pub enum Failure {
    /// Exit 3.
    Config(String),
    /// Exit 2, with a diagnostic document.
    Solver(serde_json::Value),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn diagnostic(cfg: &RunConfig, context: &str, e: &Error) -> serde_json::Value {
    let mut d = json!({
        "status": "error",
        "context": context,
        "error": e.to_string(),
        "version": emit::VERSION,
        "digits": cfg.ctx.digits(),
        "threshold": cfg.threshold_text,
    });
    if let Error::MaxIterations(best) = e {
        d["best"] = json!({
            "lower_bound": dec(&best.lower_bound),
            "upper_bound": dec(&best.upper_bound),
            "rel_error": dec(&best.rel_error),
            "iterations": best.iterations,
        });
    }
    d
}

fn provenance(cfg: &RunConfig) -> Provenance {
    Provenance { version: emit::VERSION, digits: cfg.ctx.digits(), threshold: cfg.threshold_text.clone() }
}

fn options(cfg: &RunConfig) -> ChebyshevOptions {
    let mut o = ChebyshevOptions::new(cfg.threshold.clone()).symmetry(cfg.symmetry);
    o.grid = cfg.grid;
    if let Some(n) = cfg.raw.max_iter {
        o.max_iter = n;
    }
    o
}

fn pool(cfg: &RunConfig) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| Failure::Io(e.to_string()))
}

fn emit(cfg: &RunConfig, text: &str) -> Outcome {
    emit::write(cfg.out.as_deref(), text)?;
    Ok(())
}

fn resolve(raw: Common, defaults: &Defaults) -> Result<RunConfig, Failure> {
    Ok(RunConfig::resolve(raw.merged()?, defaults)?)
}

#[derive(Serialize)]
struct Coefficient {
    exponent: usize,
    re: String,
    im: String,
}

#[derive(Serialize)]
struct ChebyshevDoc {
    label: String,
    degree: usize,
    /// `a_0..a_{N-1}`; the polynomial is monic.
    coefficients: Vec<Coefficient>,
    sup_norm: String,
    capacity: String,
    widom: String,
    rel_error: String,
    lower_bound: String,
    iterations: usize,
    #[serde(flatten)]
    provenance: Provenance,
}

fn chebyshev_doc(cfg: &RunConfig, rec: &ChebyshevRecord) -> ChebyshevDoc {
    let coefficients = (0..rec.degree)
        .map(|k| {
            let a = rec.polynomial.coeff(&cfg.ctx, k);
            Coefficient { exponent: k, re: dec(&a.re), im: dec(&a.im) }
        })
        .collect();
    ChebyshevDoc {
        label: rec.label.clone(),
        degree: rec.degree,
        coefficients,
        sup_norm: dec(&rec.sup_norm),
        capacity: dec(&rec.capacity),
        widom: dec(&rec.widom),
        rel_error: dec(&rec.rel_error),
        lower_bound: dec(&rec.lower_bound),
        iterations: rec.iterations,
        provenance: provenance(cfg),
    }
}

fn solve_one(cfg: &RunConfig, curve: &BoundaryCurve, degree: usize) -> Result<ChebyshevRecord, Failure> {
    chebyshev(curve, degree, &options(cfg)).map_err(|e| Failure::Solver(diagnostic(cfg, &format!("{} degree {degree}", curve.label()), &e)))
}

pub fn cheb(raw: Common) -> Outcome {
    let cfg = resolve(raw, &DEFAULTS)?;
    let curve = cfg.curve()?;
    let rec = solve_one(&cfg, &curve, cfg.degree()?)?;
    let doc = chebyshev_doc(&cfg, &rec);
    match cfg.format {
        Format::Json => emit(&cfg, &emit::json(&doc)),
        Format::Csv => {
            let header = ["exponent", "re", "im", PROVENANCE_COLUMNS[0], PROVENANCE_COLUMNS[1], PROVENANCE_COLUMNS[2]];
            let p = doc.provenance.columns();
            let rows: Vec<Vec<String>> = doc
                .coefficients
                .iter()
                .map(|c| [vec![c.exponent.to_string(), c.re.clone(), c.im.clone()], p.to_vec()].concat())
                .collect();
            emit(&cfg, &emit::csv(&header, &rows))
        }
        Format::Svg => Err(Failure::Config("cheb writes json or csv".into())),
    }
}

pub fn widom_table(raw: Common) -> Outcome {
    let cfg = resolve(raw, &DEFAULTS)?;
    let curve = cfg.curve()?;
    let degrees = cfg.degrees()?;
    let opts = options(&cfg);
    let results: Vec<_> = pool(&cfg)?.install(|| degrees.par_iter().map(|&n| chebyshev(&curve, n, &opts)).collect());
    let p = provenance(&cfg);
    let any_failed = results.iter().any(Result::is_err);
    let fit = match &cfg.raw.fit_limit {
        Some(l) => {
            let limit = parse_real(&cfg.ctx, l, "fit-limit")?;
            let xy: Vec<(f64, f64)> = degrees
                .iter()
                .zip(&results)
                .filter_map(|(&n, r)| r.as_ref().ok().map(|rec| (n as f64, (&rec.widom - &limit).abs().to_f64())))
                .collect();
            Some(json!({ "limit": l, "slope": loglog_slope(&xy) }))
        }
        None => None,
    };
    match cfg.format {
        Format::Csv => {
            let header = ["degree", "widom", "rel_error", "error", PROVENANCE_COLUMNS[0], PROVENANCE_COLUMNS[1], PROVENANCE_COLUMNS[2]];
            let rows: Vec<Vec<String>> = degrees
                .iter()
                .zip(&results)
                .map(|(n, r)| {
                    let head = match r {
                        Ok(rec) => vec![n.to_string(), dec(&rec.widom), dec(&rec.rel_error), String::new()],
                        Err(e) => vec![n.to_string(), String::new(), String::new(), e.to_string()],
                    };
                    [head, p.columns().to_vec()].concat()
                })
                .collect();
            emit(&cfg, &emit::csv(&header, &rows))?;
            if let Some(fit) = &fit {
                let doc = json!({ "label": curve.label(), "fit": fit, "provenance": p });
                match &cfg.out {
                    Some(out) => emit::write(Some(&out.with_extension("json")), &emit::json(&doc))?,
                    None => eprint!("{}", emit::json(&doc)),
                }
            }
        }
        Format::Json => {
            let records: Vec<serde_json::Value> = degrees
                .iter()
                .zip(&results)
                .map(|(n, r)| match r {
                    Ok(rec) => serde_json::to_value(chebyshev_doc(&cfg, rec)).expect("serializable"),
                    Err(e) => json!({ "degree": n, "error": e.to_string() }),
                })
                .collect();
            emit(&cfg, &emit::json(&json!({ "label": curve.label(), "records": records, "fit": fit, "provenance": p })))?;
        }
        Format::Svg => return Err(Failure::Config("widom-table writes csv or json".into())),
    }
    if any_failed {
        let failed: Vec<String> = degrees.iter().zip(&results).filter_map(|(n, r)| r.as_ref().err().map(|e| format!("degree {n}: {e}"))).collect();
        return Err(Failure::Solver(json!({ "status": "error", "context": curve.label(), "failures": failed, "version": emit::VERSION })));
    }
    Ok(())
}

const FABER_DEFAULTS: Defaults = Defaults { threshold: "1e-40", digits: 70, format: Format::Csv };
const DEFAULT_R_GRID: &str = "1.25:4:16";
const DEFAULT_FABER_DEGREE: usize = 11;

fn sweep_family(cfg: &RunConfig) -> Result<SweepFamily, Failure> {
    match cfg.set()? {
        SetKind::PowerLemniscate if cfg.raw.m.unwrap_or(2) == 2 => Ok(SweepFamily::Lemniscate),
        SetKind::Hypocycloid => Ok(SweepFamily::Hypocycloid(cfg.m()?)),
        SetKind::Lune => {
            let alpha = parse_real(&cfg.ctx, cfg.raw.alpha.as_deref().unwrap_or("1/2"), "alpha")?;
            if alpha == cfg.ctx.ratio(1, 2) {
                Ok(SweepFamily::LuneHalf)
            } else {
                Err(Failure::Config("faber-compare supports the lune with alpha = 1/2 only".into()))
            }
        }
        _ => Err(Failure::Config("faber-compare supports power-lemniscate (m = 2), hypocycloid and lune (alpha = 1/2)".into())),
    }
}

fn r_grid(cfg: &RunConfig) -> Result<Vec<Real>, Failure> {
    let spec = cfg.raw.r_grid.as_deref().unwrap_or(DEFAULT_R_GRID);
    let ctx = &cfg.ctx;
    let grid = match spec.split(':').collect::<Vec<_>>()[..] {
        [lo, hi, n] => {
            let n: usize = n.trim().parse().map_err(|_| Failure::Config(format!("r-grid: bad count '{n}'")))?;
            if n == 0 {
                return Err(Failure::Config("r-grid needs at least one point".into()));
            }
            log_spaced(ctx, &parse_real(ctx, lo, "r-grid")?, &parse_real(ctx, hi, "r-grid")?, n)
        }
        [_] => spec.split(',').map(|s| parse_real(ctx, s, "r-grid")).collect::<Result<_, _>>()?,
        _ => return Err(Failure::Config(format!("r-grid: expected lo:hi:n or a comma list, got '{spec}'"))),
    };
    check_levels(&grid).map_err(|e| Failure::Config(e.to_string()))?;
    Ok(grid)
}

pub fn faber_compare(raw: Common) -> Outcome {
    let cfg = resolve(raw, &FABER_DEFAULTS)?;
    let family = sweep_family(&cfg)?;
    let grid = r_grid(&cfg)?;
    let degree = match cfg.raw.degree {
        Some(0) => return Err(Failure::Config("degree must be at least 1".into())),
        Some(n) => n,
        None => DEFAULT_FABER_DEGREE,
    };
    let faber = faber_reference(&cfg.ctx, &family, degree).map_err(|e| Failure::Solver(diagnostic(&cfg, "faber polynomial", &e)))?;
    let opts = options(&cfg);
    let points: Vec<SweepPoint> = pool(&cfg)?.install(|| grid.par_iter().map(|r| sweep_point(&cfg.ctx, &family, &faber, r, &opts)).collect());
    let slope = fit_slope(&points);
    let p = provenance(&cfg);
    let summary = json!({
        "family": family.name(),
        "degree": degree,
        "slope": slope,
        "points": points.iter().map(|pt| json!({
            "r": dec(&pt.r),
            "distance": pt.distance.as_ref().ok().map(dec),
            "censored": pt.censored,
            "error": pt.distance.as_ref().err(),
        })).collect::<Vec<_>>(),
        "provenance": p,
    });
    match cfg.format {
        Format::Json => emit(&cfg, &emit::json(&summary))?,
        Format::Csv => {
            let header = ["r", "distance", "censored", PROVENANCE_COLUMNS[0], PROVENANCE_COLUMNS[1], PROVENANCE_COLUMNS[2]];
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|pt| {
                    let d = pt.distance.as_ref().map(dec).unwrap_or_default();
                    [vec![dec(&pt.r), d, pt.censored.to_string()], p.columns().to_vec()].concat()
                })
                .collect();
            emit(&cfg, &emit::csv(&header, &rows))?;
            // slope sidecar next to the CSV
            if let Some(out) = &cfg.out {
                emit::write(Some(&out.with_extension("json")), &emit::json(&summary))?;
            }
        }
        Format::Svg => return Err(Failure::Config("faber-compare writes csv or json".into())),
    }
    Ok(())
}

pub fn zeros(raw: Common) -> Outcome {
    let cfg = resolve(raw, &Defaults { format: Format::Csv, ..DEFAULTS })?;
    let curve = cfg.curve()?;
    let degree = cfg.degree()?;
    let rec = solve_one(&cfg, &curve, degree)?;
    let zs = polynomial_zeros(&cfg.ctx, &rec.polynomial).map_err(|e| Failure::Solver(diagnostic(&cfg, "zeros", &e)))?;
    let p = provenance(&cfg);
    match cfg.format {
        Format::Csv => {
            let header = ["re", "im", "residual", PROVENANCE_COLUMNS[0], PROVENANCE_COLUMNS[1], PROVENANCE_COLUMNS[2]];
            let rows: Vec<Vec<String>> = zs
                .zeros
                .iter()
                .zip(&zs.residuals)
                .map(|(z, res)| [vec![dec(&z.re), dec(&z.im), dec(res)], p.columns().to_vec()].concat())
                .collect();
            emit(&cfg, &emit::csv(&header, &rows))?;
            if let Some(out) = &cfg.out {
                emit::write(Some(&out.with_extension("svg")), &zeros_svg(&curve, &zs.zeros, degree, &p))?;
            }
            Ok(())
        }
        Format::Json => {
            let summary = zero_measure_summary(&zs, &curve);
            let doc = json!({
                "label": curve.label(),
                "degree": degree,
                "zeros": zs.zeros.iter().zip(&zs.residuals).map(|(z, res)| json!({"re": dec(&z.re), "im": dec(&z.im), "residual": dec(res)})).collect::<Vec<_>>(),
                "summary": {
                    "interior_fractions": summary.interior_fractions.iter().map(|(s, f)| json!({"shrink": s, "fraction": f})).collect::<Vec<_>>(),
                    "min_distance": summary.min_distance,
                    "diameter": summary.diameter,
                },
                "provenance": p,
            });
            emit(&cfg, &emit::json(&doc))
        }
        Format::Svg => emit(&cfg, &zeros_svg(&curve, &zs.zeros, degree, &p)),
    }
}

fn zeros_svg(curve: &BoundaryCurve, zeros: &[complex_chebyshev::Complex], degree: usize, p: &Provenance) -> String {
    let pts: Vec<(f64, f64)> = zeros.iter().map(|z| z.to_f64_pair()).collect();
    let title = format!("zeros of T_{degree} on {} ({} digits, threshold {}, v{})", curve.label(), p.digits, p.threshold, p.version);
    emit::svg_scatter(&curve.sample_f64(1024), &pts, &title)
}

const DEFAULT_SAMPLES: usize = 256;

pub fn curve_dump(raw: Common) -> Outcome {
    let cfg = resolve(raw, &Defaults { format: Format::Csv, ..DEFAULTS })?;
    let curve = cfg.curve()?;
    let n = cfg.raw.samples.unwrap_or(DEFAULT_SAMPLES);
    if n == 0 {
        return Err(Failure::Config("samples must be at least 1".into()));
    }
    let ctx = &cfg.ctx;
    let p = provenance(&cfg);
    let rows: Vec<(Real, complex_chebyshev::Complex)> = (0..n)
        .map(|i| {
            let t = ctx.ratio(i as i64, n as i64);
            let z = curve.eval(&t);
            (t, z)
        })
        .collect();
    match cfg.format {
        Format::Csv => {
            let header = ["t", "re", "im", PROVENANCE_COLUMNS[0], PROVENANCE_COLUMNS[1], PROVENANCE_COLUMNS[2]];
            let body: Vec<Vec<String>> = rows.iter().map(|(t, z)| [vec![dec(t), dec(&z.re), dec(&z.im)], p.columns().to_vec()].concat()).collect();
            emit(&cfg, &emit::csv(&header, &body))
        }
        Format::Json => {
            let pts: Vec<_> = rows.iter().map(|(t, z)| json!({"t": dec(t), "re": dec(&z.re), "im": dec(&z.im)})).collect();
            emit(&cfg, &emit::json(&json!({ "label": curve.label(), "points": pts, "provenance": p })))
        }
        Format::Svg => {
            let pts: Vec<(f64, f64)> = rows.iter().map(|(_, z)| z.to_f64_pair()).collect();
            emit(&cfg, &emit::svg_scatter(&pts, &[], curve.label()))
        }
    }
}
