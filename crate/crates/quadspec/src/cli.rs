//! Command-line front end: argument definitions and command execution.
//!
//! The `quadspec` binary only parses arguments, calls [`execute`] and maps
//! errors to exit codes via [`exit_code`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::Fixture;
use crate::io::{fmt_real, to_json};
use crate::matcore::{self, c64, CMatrix, Tolerance};
use crate::multiindex::{self, MultiIndex};
use crate::normalform::{self, NormalFormResult};
use crate::resolvent::{self, SweepRow};
use crate::spectral::{self, GrowthRate, LatticePoint, ProjectionNormReport, ReportOptions};
use crate::symplectic::{self, Classification, QuadraticForm};
use crate::weights::QuadraticWeight;

#[derive(Debug, Parser)]
#[command(name = "quadspec", version, about = "Spectral analysis of quadratic differential operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format (default: csv for `resolvent`, json otherwise).
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Where the symbol comes from.
#[derive(Debug, Clone, Default, Args)]
pub struct Source {
    /// Catalog fixture: davies, kfp, jordan, harmonic.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Quadratic form as JSON `{ "n": .., "Q": [[[re, im], ..], ..] }`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Rotation angle for `davies`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Perturbation for `jordan`.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    /// Frequencies for `harmonic`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<f64>>,
    /// Relative rank tolerance for kernels and singular spaces.
    #[arg(long)]
    pub tol_rank: Option<f64>,
    /// Eigenvalues closer than this (relative) are treated as equal.
    #[arg(long)]
    pub tol_cluster: Option<f64>,
    /// Accepted asymmetry of `Q` before symmetrizing.
    #[arg(long)]
    pub tol_sym: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classification and Hamilton map.
    Analyze(#[command(flatten)] Source),
    /// Normal form reduction.
    Reduce {
        #[command(flatten)]
        source: Source,
        /// Replace `G` by `gauge·G` after unit-eigenvector normalization.
        #[arg(long)]
        gauge: Option<f64>,
    },
    /// Eigenvalues `μ_α` with `|μ_α| ≤ radius`.
    Spectrum {
        #[command(flatten)]
        source: Source,
        /// Largest `|μ_α|` listed.
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        /// Semiclassical parameter.
        #[arg(long, default_value_t = 1.0)]
        h: f64,
    },
    /// Norms of spectral projections.
    Projnorm {
        #[command(flatten)]
        source: Source,
        /// Multi-index, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "all_upto")]
        alpha: Option<Vec<u32>>,
        /// Every eigenvalue with some `|α| ≤ d`.
        #[arg(long)]
        all_upto: Option<u32>,
        /// Weight JSON, or the output of `reduce`.
        #[arg(long)]
        weight_file: Option<PathBuf>,
        /// Rescale `G` by this factor before computing the weight.
        #[arg(long)]
        gauge: Option<f64>,
        /// Also evaluate the brute-force oracle for simple eigenvalues.
        #[arg(long)]
        oracle: bool,
        /// Also report the growth rate along `α/|α|`.
        #[arg(long)]
        growth: bool,
    },
    /// Exponential growth rates of projection norms.
    Growth {
        #[command(flatten)]
        source: Source,
        /// Direction on the simplex, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "sweep")]
        beta: Option<Vec<f64>>,
        /// All `β = k/steps` on the simplex.
        #[arg(long)]
        sweep: Option<u32>,
        /// Weight JSON, or the output of `reduce`.
        #[arg(long)]
        weight_file: Option<PathBuf>,
    },
    /// Restricted resolvent norms on energy shells.
    Resolvent {
        #[command(flatten)]
        source: Source,
        /// Spectral parameter `re,im`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<f64>,
        /// Semiclassical parameters, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025")]
        h: Vec<f64>,
        /// Sweep shells `m = 0..=m_max` instead of an energy window.
        #[arg(long, conflicts_with = "energy_max")]
        m_max: Option<u32>,
        /// Sweep `m ≤ energy_max / h` for each `h`.
        #[arg(long)]
        energy_max: Option<f64>,
        /// Also write long-format plot data (h, energy, series, value).
        #[arg(long)]
        plot_data: Option<PathBuf>,
    },
    /// The fixture catalog.
    Fixtures,
}

/// 0 on success, 2 for input errors, 3 for numerical failures.
pub fn exit_code(result: &Result<()>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(e) if e.is_input_error() => 2,
        Err(_) => 3,
    }
}

/// Run one command and write its output.
pub fn execute(cli: &Cli) -> Result<()> {
    let text = render(cli)?;
    match &cli.output {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(p: &Path, text: &str) -> Result<()> {
    std::fs::write(p, text).map_err(|e| Error::Input(format!("{}: {e}", p.display())))
}

/// The command's output as text.
pub fn render(cli: &Cli) -> Result<String> {
    let fmt = cli.format.unwrap_or(match cli.command {
        Command::Resolvent { .. } => Format::Csv,
        _ => Format::Json,
    });
    match &cli.command {
        Command::Analyze(src) => {
            let q = src.form()?;
            let tol = src.tolerance()?;
            json_only(fmt, &analyze(&q, &tol)?)
        }
        Command::Reduce { source, gauge } => {
            let tol = source.tolerance()?;
            json_only(fmt, &reduced(source, *gauge, &tol)?)
        }
        Command::Spectrum { source, radius, h } => {
            let tol = source.tolerance()?;
            let nf = normalform::reduce(&source.form()?, &tol)?;
            let pts = spectral::enumerate_lattice(&nf.lambdas, *radius, *h, spectral::COLLISION_TOL)?;
            match fmt {
                Format::Json => to_json(&pts),
                Format::Csv => lattice_csv(&pts),
            }
        }
        Command::Projnorm { source, alpha, all_upto, weight_file, gauge, oracle, growth } => {
            let tol = source.tolerance()?;
            let (lambdas, phi) = weight_and_spectrum(source, weight_file.as_deref(), *gauge, &tol)?;
            let pts = select_points(&lambdas, alpha.as_deref(), *all_upto)?;
            let opts = ReportOptions { oracle: *oracle, growth: *growth, ..ReportOptions::default() };
            let reports =
                pts.iter().map(|p| spectral::projection_report(&phi, p, &opts, &tol)).collect::<Result<Vec<_>>>()?;
            match fmt {
                Format::Json => to_json(&reports),
                Format::Csv => reports_csv(&reports),
            }
        }
        Command::Growth { source, beta, sweep, weight_file } => {
            let tol = source.tolerance()?;
            let (phi, g) = growth_weight(source, weight_file.as_deref(), &tol)?;
            let betas = directions(phi.n, beta.as_deref(), *sweep)?;
            let rates = betas.iter().map(|b| spectral::growth_rate(&phi, b, &tol)).collect::<Result<Vec<_>>>()?;
            let report = GrowthReport { log_condition: g.map(|g| matcore::condition_number(&g).ln()), rates };
            match fmt {
                Format::Json => to_json(&report),
                Format::Csv => growth_csv(&report.rates),
            }
        }
        Command::Resolvent { source, z, h, m_max, energy_max, plot_data } => {
            let tol = source.tolerance()?;
            let nf = normalform::reduce(&source.form()?, &tol)?;
            let z = match z.as_slice() {
                [re, im] => c64(*re, *im),
                _ => return Err(Error::Input("--z takes re,im".into())),
            };
            let rows = match (m_max, energy_max) {
                (Some(m), None) => resolvent::resolvent_sweep(&nf.m1, z, h, *m)?,
                (None, Some(e)) => resolvent::resolvent_sweep_energy(&nf.m1, z, h, *e)?,
                (None, None) => resolvent::resolvent_sweep_energy(&nf.m1, z, h, 10.0)?,
                (Some(_), Some(_)) => return Err(Error::Input("give --m-max or --energy-max, not both".into())),
            };
            if let Some(p) = plot_data {
                let mut buf = Vec::new();
                resolvent::write_plot_data(&rows, &mut buf)?;
                write_file(p, &String::from_utf8_lossy(&buf))?;
            }
            match fmt {
                Format::Json => to_json(&rows),
                Format::Csv => sweep_csv(&rows),
            }
        }
        Command::Fixtures => {
            let entries: Vec<FixtureEntry> =
                Fixture::catalog().into_iter().map(|f| FixtureEntry { form: f.form(), fixture: f }).collect();
            json_only(fmt, &entries)
        }
    }
}

impl Source {
    pub fn tolerance(&self) -> Result<Tolerance> {
        let d = Tolerance::default();
        Tolerance::new(
            self.tol_rank.unwrap_or(d.rank_tol),
            self.tol_cluster.unwrap_or(d.cluster_tol),
            self.tol_sym.unwrap_or(d.sym_tol),
        )
    }

    /// The fixture named by `--fixture` with its parameters.
    pub fn fixture(&self) -> Result<Option<Fixture>> {
        let Some(name) = self.fixture.as_deref() else {
            if self.theta.is_some() || self.eps.is_some() || self.r.is_some() {
                return Err(Error::Input("--theta/--eps/--r need --fixture".into()));
            }
            return Ok(None);
        };
        let unused = |flag: &str, given: bool| -> Result<()> {
            if given {
                Err(Error::Input(format!("{flag} does not apply to fixture {name}")))
            } else {
                Ok(())
            }
        };
        let defaults = Fixture::catalog();
        let f = match name {
            "davies" => {
                unused("--eps", self.eps.is_some())?;
                unused("--r", self.r.is_some())?;
                Fixture::Davies { theta: self.theta.unwrap_or(std::f64::consts::FRAC_PI_8) }
            }
            "kfp" => {
                unused("--theta", self.theta.is_some())?;
                unused("--eps", self.eps.is_some())?;
                unused("--r", self.r.is_some())?;
                Fixture::Kfp
            }
            "jordan" => {
                unused("--theta", self.theta.is_some())?;
                unused("--r", self.r.is_some())?;
                Fixture::Jordan { eps: self.eps.unwrap_or(0.0) }
            }
            "harmonic" => {
                unused("--theta", self.theta.is_some())?;
                unused("--eps", self.eps.is_some())?;
                match &self.r {
                    Some(r) if r.is_empty() || r.iter().any(|x| !(*x > 0.0 && x.is_finite())) => {
                        return Err(Error::Input("--r must be positive frequencies".into()))
                    }
                    Some(r) => Fixture::Harmonic { r: r.clone() },
                    None => defaults[3].clone(),
                }
            }
            other => return Err(Error::Input(format!("unknown fixture {other:?} (try `quadspec fixtures`)"))),
        };
        for p in [self.theta, self.eps].into_iter().flatten() {
            if !p.is_finite() {
                return Err(Error::Input("fixture parameters must be finite".into()));
            }
        }
        Ok(Some(f))
    }

    /// The symbol from `--fixture` or `--input` (exactly one).
    pub fn form(&self) -> Result<QuadraticForm> {
        match (self.fixture()?, &self.input) {
            (Some(f), None) => Ok(f.form()),
            (None, Some(p)) => read_form(p, &self.tolerance()?),
            (Some(_), Some(_)) => Err(Error::Input("give --fixture or --input, not both".into())),
            (None, None) => Err(Error::Input("no symbol: give --fixture or --input".into())),
        }
    }

    fn has_symbol(&self) -> bool {
        self.fixture.is_some() || self.input.is_some()
    }
}

fn read_text(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(p: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{}: {e}", p.display())))
}

/// Load and validate a quadratic form.
pub fn read_form(p: &Path, tol: &Tolerance) -> Result<QuadraticForm> {
    let raw: QuadraticForm = parse_json(p, &read_text(p)?)?;
    let q = QuadraticForm::new(raw.q, tol)?;
    if q.n != raw.n {
        return Err(Error::Dimension(format!("n = {} but Q is {}x{}", raw.n, 2 * q.n, 2 * q.n)));
    }
    Ok(q)
}

/// `{ "lambdas": .., "Phi2": .. }` as written by `reduce`.
#[derive(Deserialize)]
struct ReducedWeight {
    #[serde(with = "crate::io::cvec")]
    lambdas: Vec<Complex64>,
    #[serde(rename = "Phi2")]
    phi2: QuadraticWeight,
}

/// Weight from a file: either a bare weight or `reduce` output; the
/// eigenvalues come with the latter.
pub fn read_weight(p: &Path, tol: &Tolerance) -> Result<(QuadraticWeight, Option<Vec<Complex64>>)> {
    let text = read_text(p)?;
    let v: serde_json::Value = parse_json(p, &text)?;
    let (raw, lambdas) = if v.get("Phi2").is_some() {
        let r: ReducedWeight = parse_json(p, &text)?;
        (r.phi2, Some(r.lambdas))
    } else {
        (parse_json::<QuadraticWeight>(p, &text)?, None)
    };
    let phi = QuadraticWeight::new(raw.pxx, raw.pxbx, tol)?;
    if phi.n != raw.n {
        return Err(Error::Dimension(format!("n = {} but the weight matrices are {}x{}", raw.n, phi.n, phi.n)));
    }
    if let Some(l) = &lambdas {
        if l.len() != phi.n {
            return Err(Error::Dimension("lambdas and Phi2 disagree in dimension".into()));
        }
    }
    phi.require_convex()?;
    Ok((phi, lambdas))
}

fn reduced(source: &Source, gauge: Option<f64>, tol: &Tolerance) -> Result<NormalFormResult> {
    let nf = normalform::reduce(&source.form()?, tol)?;
    match gauge {
        None => Ok(nf),
        Some(r) if r > 0.0 && r.is_finite() => Ok(nf.regauged(r)),
        Some(r) => Err(Error::Input(format!("--gauge {r} must be positive"))),
    }
}

fn weight_and_spectrum(
    source: &Source,
    weight_file: Option<&Path>,
    gauge: Option<f64>,
    tol: &Tolerance,
) -> Result<(Vec<Complex64>, QuadraticWeight)> {
    match weight_file {
        None => {
            let nf = reduced(source, gauge, tol)?;
            Ok((nf.lambdas, nf.phi2))
        }
        Some(p) => {
            let (phi, lambdas) = read_weight(p, tol)?;
            let lambdas = match lambdas {
                Some(l) => l,
                None if source.has_symbol() => normalform::reduce(&source.form()?, tol)?.lambdas,
                None => {
                    return Err(Error::Input("a bare weight file needs --fixture or --input for the spectrum".into()))
                }
            };
            if lambdas.len() != phi.n {
                return Err(Error::Dimension("weight and symbol dimensions differ".into()));
            }
            Ok((lambdas, phi))
        }
    }
}

fn growth_weight(source: &Source, weight_file: Option<&Path>, tol: &Tolerance) -> Result<(QuadraticWeight, Option<CMatrix>)> {
    match weight_file {
        Some(p) => Ok((read_weight(p, tol)?.0, None)),
        None => {
            let nf = reduced(source, None, tol)?;
            Ok((nf.phi2, Some(nf.g)))
        }
    }
}

/// The lattice points containing `alpha`, or every point with some
/// `|α| ≤ d`.
pub fn select_points(lambdas: &[Complex64], alpha: Option<&[u32]>, all_upto: Option<u32>) -> Result<Vec<LatticePoint>> {
    let n = lambdas.len();
    let wanted: Vec<MultiIndex> = match (alpha, all_upto) {
        (Some(a), None) if a.len() == n => vec![a.to_vec()],
        (Some(a), None) => return Err(Error::Input(format!("--alpha has {} entries, expected {n}", a.len()))),
        (None, Some(d)) => multiindex::graded(n, d),
        _ => return Err(Error::Input("give --alpha or --all-upto".into())),
    };
    let r = wanted.iter().map(|a| spectral::mu(lambdas, a, 1.0).norm()).fold(0.0, f64::max);
    let pts = spectral::enumerate_lattice(lambdas, r * (1.0 + 1e-8) + 1e-12, 1.0, spectral::COLLISION_TOL)?;
    Ok(pts.into_iter().filter(|p| p.alphas.iter().any(|a| wanted.contains(a))).collect())
}

/// `--beta` as given, or the simplex grid `k/steps`.
pub fn directions(n: usize, beta: Option<&[f64]>, sweep: Option<u32>) -> Result<Vec<Vec<f64>>> {
    match (beta, sweep) {
        (Some(b), None) => Ok(vec![b.to_vec()]),
        (None, Some(s)) if s > 0 => {
            let grid = multiindex::homogeneous(n, s);
            Ok(grid.into_iter().map(|k| k.iter().map(|&x| x as f64 / s as f64).collect()).collect())
        }
        (None, None) if n == 1 => Ok(vec![vec![1.0]]),
        _ => Err(Error::Input("give --beta or --sweep STEPS (≥ 1)".into())),
    }
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub n: usize,
    pub classification: Classification,
    #[serde(rename = "F", with = "crate::io::cmat")]
    pub f: CMatrix,
    /// Eigenvalues of `F`, sorted by `(Re, Im)`.
    #[serde(with = "crate::io::cvec")]
    pub eigenvalues: Vec<Complex64>,
    pub antisymmetry_residual: f64,
}

pub fn analyze(q: &QuadraticForm, _tol: &Tolerance) -> Result<Analysis> {
    let f = symplectic::hamilton_map(q);
    let mut eigenvalues = matcore::eigenvalues(&f.f)?;
    eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(Analysis {
        n: q.n,
        classification: symplectic::classify(q, _tol),
        antisymmetry_residual: symplectic::antisymmetry_residual(&f.f),
        f: f.f,
        eigenvalues,
    })
}

#[derive(Debug, Serialize)]
pub struct GrowthReport {
    /// `log(‖G‖·‖G^{−1}‖)` for the normal-form `G`, when known.
    pub log_condition: Option<f64>,
    pub rates: Vec<GrowthRate>,
}

#[derive(Debug, Serialize)]
struct FixtureEntry {
    fixture: Fixture,
    form: QuadraticForm,
}

fn json_only<T: Serialize>(fmt: Format, v: &T) -> Result<String> {
    match fmt {
        Format::Json => to_json(v),
        Format::Csv => Err(Error::Input("this command only writes JSON".into())),
    }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Input(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Input(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn alphas_field(alphas: &[MultiIndex]) -> String {
    alphas
        .iter()
        .map(|a| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(";")
}

fn opt_real(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

fn lattice_csv(pts: &[LatticePoint]) -> Result<String> {
    csv_text(
        &["mu_re", "mu_im", "multiplicity", "alphas"],
        pts.iter().map(|p| vec![fmt_real(p.mu.re), fmt_real(p.mu.im), p.multiplicity().to_string(), alphas_field(&p.alphas)]),
    )
}

fn reports_csv(reports: &[ProjectionNormReport]) -> Result<String> {
    csv_text(
        &["mu_re", "mu_im", "alphas", "simple", "norm", "oracle", "tau_bound", "exact_bound", "growth_rate"],
        reports.iter().map(|r| {
            vec![
                fmt_real(r.mu.re),
                fmt_real(r.mu.im),
                alphas_field(&r.alphas),
                r.simple.to_string(),
                fmt_real(r.norm),
                opt_real(r.oracle),
                fmt_real(r.bounds.tau),
                opt_real(r.bounds.exact),
                opt_real(r.growth_rate),
            ]
        }),
    )
}

fn growth_csv(rates: &[GrowthRate]) -> Result<String> {
    csv_text(
        &["beta", "g", "log_sup", "log_sup_dual", "entropy"],
        rates.iter().map(|r| {
            vec![
                r.beta.iter().map(|b| fmt_real(*b)).collect::<Vec<_>>().join(" "),
                fmt_real(r.g),
                fmt_real(r.log_sup),
                fmt_real(r.log_sup_dual),
                fmt_real(r.entropy),
            ]
        }),
    )
}

fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    resolvent::write_csv(rows, &mut buf)?;
    Ok(String::from_utf8_lossy(&buf).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("quadspec").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn analyze_fixtures() {
        let out = render(&cli(&["analyze", "--fixture", "davies", "--theta", "0.3"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["classification"]["kind"], "Elliptic");
        assert_eq!(v["classification"]["k0"], 0);
        let out = render(&cli(&["analyze", "--fixture", "kfp"])).unwrap();
        assert!(out.contains("\"PartiallyElliptic\""));
    }

    #[test]
    fn source_errors_are_input_errors() {
        for args in [
            &["analyze"][..],
            &["analyze", "--fixture", "nope"],
            &["analyze", "--fixture", "kfp", "--theta", "1"],
            &["analyze", "--theta", "1"],
            &["analyze", "--fixture", "harmonic", "--r", "1,-2"],
            &["analyze", "--fixture", "kfp", "--tol-rank", "0"],
            &["reduce", "--fixture", "kfp", "--format", "csv"],
            &["projnorm", "--fixture", "kfp", "--alpha", "1,2,3"],
        ] {
            let e = render(&cli(args)).unwrap_err();
            assert!(e.is_input_error(), "{args:?}: {e}");
        }
    }

    #[test]
    fn harmonic_projection_is_one() {
        let out = render(&cli(&["projnorm", "--fixture", "harmonic", "--alpha", "3,2"])).unwrap();
        let v: Vec<ProjectionNormReport> = serde_json::from_str(&out).unwrap();
        assert_eq!(v.len(), 1);
        assert!((v[0].norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn selects_points() {
        let l = [c64(0.0, 1.0), c64(0.0, 1.0)];
        let p = select_points(&l, Some(&[1, 0]), None).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].alphas, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(select_points(&l, None, Some(2)).unwrap().len(), 3);
        let d = directions(2, None, Some(4)).unwrap();
        assert_eq!(d.len(), 5);
        assert_eq!(d[0], vec![0.0, 1.0]);
        assert!(d.iter().all(|b| (b.iter().sum::<f64>() - 1.0).abs() < 1e-15));
    }
}
