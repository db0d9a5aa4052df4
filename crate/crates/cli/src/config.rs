//! Run configuration: command-line flags merged over an optional TOML file.

use clap::{Args, ValueEnum};
use complex_chebyshev::basis::SymmetryMode;
use complex_chebyshev::geometry::BoundaryCurve;
use complex_chebyshev::{Complex, Context, Real};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Polygon,
    Hypocycloid,
    Lune,
    PowerLemniscate,
    PolynomialLemniscate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// Use every symmetry the set has.
    Auto,
    /// Conjugation symmetry only.
    Conjugation,
    /// Full complex basis, no reduction.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Flags shared by every subcommand. Each may also come from `--config`.
#[derive(Args, Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Common {
    /// Set family.
    #[arg(long, value_enum)]
    pub set: Option<SetKind>,
    /// Number of sides, cusps or lemniscate lobes.
    #[arg(long)]
    pub m: Option<usize>,
    /// Lune vertex parameter, decimal or fraction such as 3/2.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Level of the curve (r >= 1).
    #[arg(long)]
    pub r: Option<String>,
    /// Real coefficients a_0,...,a_d of a lemniscate polynomial.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<String>>,
    /// Level rho of |P(z)| = rho.
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(long)]
    pub degree: Option<usize>,
    /// Comma-separated degrees.
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<usize>>,
    /// Relative duality-gap threshold.
    #[arg(long)]
    pub threshold: Option<String>,
    /// Working precision in decimal digits.
    #[arg(long)]
    pub digits: Option<u32>,
    #[arg(long, value_enum)]
    pub symmetry: Option<Symmetry>,
    /// Search grid size override.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Remez iteration cap.
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Worker threads for independent solves.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Sample count for curve-dump.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Faber sweep levels: either lo:hi:n (log-spaced) or a comma list.
    #[arg(long)]
    pub r_grid: Option<String>,
    /// widom-table: fit log|W_n - limit| against log n and report the slope.
    #[arg(long)]
    pub fit_limit: Option<String>,
    /// TOML file with any of the keys above; flags win.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

macro_rules! merge_fields {
    ($flags:expr, $file:expr, $($f:ident),*) => {
        Common { $($f: $flags.$f.or($file.$f),)* config: None }
    };
}

impl Common {
    /// Flags over the config file named by `--config`, if any.
    pub fn merged(self) -> Result<Common, ConfigError> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        let file = load_file(&path)?;
        Ok(merge_fields!(self, file, set, m, alpha, r, coeffs, rho, degree, degrees, threshold, digits, symmetry, grid, max_iter, jobs, out, format, samples, r_grid, fit_limit))
    }
}

fn load_file(path: &Path) -> Result<Common, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

/// Per-command defaults that differ from the global ones.
pub struct Defaults {
    pub threshold: &'static str,
    pub digits: u32,
    pub format: Format,
}

pub const DEFAULTS: Defaults = Defaults { threshold: "1e-10", digits: 60, format: Format::Json };

/// Validated configuration.
pub struct RunConfig {
    pub ctx: Context,
    pub threshold: Real,
    pub threshold_text: String,
    pub symmetry: SymmetryMode,
    pub grid: Option<usize>,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub raw: Common,
}

impl RunConfig {
    pub fn resolve(raw: Common, defaults: &Defaults) -> Result<RunConfig, ConfigError> {
        let digits = raw.digits.unwrap_or(defaults.digits);
        if digits < 15 {
            return Err(bad(format!("digits must be at least 15, got {digits}")));
        }
        let ctx = Context::new(digits).map_err(|e| bad(e.to_string()))?;
        let threshold_text = raw.threshold.clone().unwrap_or_else(|| defaults.threshold.to_string());
        let threshold = parse_real(&ctx, &threshold_text, "threshold")?;
        let floor = ctx.pow10(-(digits as i32 - 20));
        if !(threshold > floor && threshold < 1) {
            return Err(bad(format!("threshold must lie in (1e-{}, 1) at {digits} digits", digits - 20)));
        }
        let symmetry = match raw.symmetry.unwrap_or(Symmetry::Auto) {
            Symmetry::Auto => SymmetryMode::Full,
            Symmetry::Conjugation => SymmetryMode::ConjugationOnly,
            Symmetry::None => SymmetryMode::None,
        };
        if raw.max_iter == Some(0) {
            return Err(bad("max-iter must be at least 1"));
        }
        if raw.jobs == Some(0) {
            return Err(bad("jobs must be at least 1"));
        }
        Ok(RunConfig {
            ctx,
            threshold,
            threshold_text,
            symmetry,
            grid: raw.grid,
            jobs: raw.jobs.unwrap_or(1),
            out: raw.out.clone(),
            format: raw.format.unwrap_or(defaults.format),
            raw,
        })
    }

    pub fn set(&self) -> Result<SetKind, ConfigError> {
        self.raw.set.ok_or_else(|| bad("--set is required"))
    }

    pub fn m(&self) -> Result<usize, ConfigError> {
        self.raw.m.ok_or_else(|| bad("--m is required for this set"))
    }

    pub fn level(&self) -> Result<Real, ConfigError> {
        match &self.raw.r {
            Some(s) => parse_real(&self.ctx, s, "r"),
            None => Ok(self.ctx.one()),
        }
    }

    pub fn degree(&self) -> Result<usize, ConfigError> {
        match self.raw.degree {
            Some(0) => Err(bad("degree must be at least 1")),
            Some(n) => Ok(n),
            None => Err(bad("--degree is required")),
        }
    }

    pub fn degrees(&self) -> Result<Vec<usize>, ConfigError> {
        let list = match (&self.raw.degrees, self.raw.degree) {
            (Some(d), _) => d.clone(),
            (None, Some(n)) => vec![n],
            (None, None) => return Err(bad("--degrees is required")),
        };
        if list.is_empty() || list.contains(&0) {
            return Err(bad("degrees must be a nonempty list of positive integers"));
        }
        Ok(list)
    }

    /// Builds the boundary curve named by the set flags.
    pub fn curve(&self) -> Result<BoundaryCurve, ConfigError> {
        let ctx = &self.ctx;
        let built = match self.set()? {
            SetKind::Polygon => BoundaryCurve::polygon(ctx, self.m()?),
            SetKind::Hypocycloid => BoundaryCurve::hypocycloid(ctx, self.m()?, self.level()?),
            SetKind::PowerLemniscate => BoundaryCurve::power_lemniscate(ctx, self.m()?, self.level()?),
            SetKind::Lune => {
                let alpha = self.raw.alpha.as_deref().ok_or_else(|| bad("--alpha is required for lunes"))?;
                BoundaryCurve::lune(ctx, parse_real(ctx, alpha, "alpha")?, self.level()?)
            }
            SetKind::PolynomialLemniscate => {
                let coeffs = self.raw.coeffs.as_ref().ok_or_else(|| bad("--coeffs is required for polynomial lemniscates"))?;
                let coeffs = coeffs.iter().map(|c| parse_real(ctx, c, "coeffs").map(Complex::from_real)).collect::<Result<Vec<_>, _>>()?;
                let rho = self.raw.rho.as_deref().ok_or_else(|| bad("--rho is required for polynomial lemniscates"))?;
                BoundaryCurve::polynomial_lemniscate(ctx, coeffs, parse_real(ctx, rho, "rho")?, None)
            }
        };
        built.map_err(|e| bad(e.to_string()))
    }
}

/// Decimal (`1.5`, `1e-10`) or fraction (`3/2`).
pub fn parse_real(ctx: &Context, s: &str, what: &str) -> Result<Real, ConfigError> {
    let s = s.trim();
    let fail = || bad(format!("{what}: cannot parse '{s}'"));
    if let Some((num, den)) = s.split_once('/') {
        let num = ctx.parse(num.trim()).map_err(|_| fail())?;
        let den = ctx.parse(den.trim()).map_err(|_| fail())?;
        if den.is_zero() {
            return Err(fail());
        }
        return Ok(num / den);
    }
    ctx.parse(s).map_err(|_| fail())
}
