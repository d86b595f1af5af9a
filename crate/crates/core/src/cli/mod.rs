//! Batch front end: `chainlab <subcommand> [flags]`.
//!
//! Exit codes: 0 report written, 1 computation error (a JSON error object
//! `{"error": {"kind", "message"}}` goes to stdout) or failed selfcheck,
//! 2 usage error. Without `--output`, reports go to
//! `$CHAINLAB_OUT_DIR/<subcommand>.<ext>` when that variable is set, else stdout.

mod selfcheck;

use std::ffi::OsString;
use std::fmt::{Debug, Display, Write as _};
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::groupalg::Group;
use crate::groupalg::{
    fr_exactness_report, fr_group_homology, singular_value_experiment, ExactnessReport, GroupHomology, SingularValueRow,
};
use crate::growth::{
    check_combing_compatibility, continued_fraction, is_submultiplicative, matrix_rep_growth, parse_matrix,
    small_divisor_growth, small_divisor_series, CombingReport, ContinuedFraction, DivisorVerdict, RepGrowth,
    SubmultReport, Weight, WeightCombination,
};
use crate::qtorus::{check_resolution, hochschild_homology, identify_ll, l_complex, l_kernel};
use crate::scalar::Variant;
use crate::theta::{Deformation, ThetaSpec};

pub use selfcheck::{selfcheck, SelfcheckReport};

/// Environment variable naming the default output directory.
pub const OUT_DIR_VAR: &str = "CHAINLAB_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "chainlab", version, about = "Exact chain-complex workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "txt",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ThetaBox {
    /// `formal`, `p/N`, `cf:a0,a1,…` or `float:x`.
    #[arg(long, default_value = "formal")]
    pub theta: ThetaSpec,
    /// Box radius `N`: monomials `U^m V^n` with `|m|, |n| ≤ N`.
    #[arg(long = "box", default_value_t = 5)]
    pub radius: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hochschild homology of the quantum torus on a box.
    Hh(ThetaBox),
    /// Exactness of the truncated Koszul resolution.
    Resolve(ThetaBox),
    /// The complex `L` and its kernel modes.
    Lcomplex(ThetaBox),
    /// The isomorphism between the commutator complex and `L ⊗ L`.
    IdentifyLl {
        #[command(flatten)]
        args: ThetaBox,
        /// Also compute the homology of both sides.
        #[arg(long)]
        homology: bool,
    },
    /// Pair complex of the free group: exactness on balls and group homology.
    Freegroup {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        rank: u32,
        #[arg(long, default_value_t = 5)]
        radius: u32,
        /// Also tabulate smallest singular values with weight exponent `k`.
        #[arg(long)]
        singular_values: Option<i32>,
    },
    /// Small divisors `|1 - e^{2πiθm}|⁻¹` and their growth class.
    Growth {
        #[arg(long)]
        theta: ThetaSpec,
        #[arg(long, default_value_t = 100_000)]
        range: u64,
    },
    /// Norm growth of a representation of `ℤⁿ` given by commuting matrices.
    RepGrowth {
        /// One generator, as JSON rows, e.g. `[[1,1],[0,1]]`; repeat per factor.
        #[arg(long = "matrix", required = true)]
        matrices: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        range: u64,
    },
    /// Submultiplicativity and combing compatibility of weights on `ℤⁿ`.
    Weights {
        /// Lattice dimension `n`.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        rank: u32,
        #[arg(long, default_value_t = 8)]
        radius: u64,
        #[arg(long, default_value_t = 16)]
        steps: u64,
        #[arg(long = "case", value_enum, default_value_t = WeightCase::Homomorphism)]
        case: WeightCase,
        /// Degree `k` for the polynomial cases.
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Randomized invariant suite plus small fixed checks.
    Selfcheck {
        #[arg(long, default_value_t = 200)]
        cases: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightCase {
    /// `exp(a·x)` for the coordinate vectors and their negatives, `w̄ = w`.
    Homomorphism,
    /// `(ℓ+1)^k` with `w̄ = (ℓ+1)^{2k}`.
    Polynomial,
    /// `(ℓ+1)^k` with `w̄ = w`, expected to fail.
    Identity,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Hh(_) => "hh",
            Command::Resolve(_) => "resolve",
            Command::Lcomplex(_) => "lcomplex",
            Command::IdentifyLl { .. } => "identify-ll",
            Command::Freegroup { .. } => "freegroup",
            Command::Growth { .. } => "growth",
            Command::RepGrowth { .. } => "rep-growth",
            Command::Weights { .. } => "weights",
            Command::Selfcheck { .. } => "selfcheck",
        }
    }
}

/// A computation error with its variant name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    fn from_err<E: Debug + Display>(e: E) -> Self {
        CliError {
            kind: error_kind(&format!("{e:?}")),
            message: e.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let v = json!({"error": {"kind": self.kind, "message": self.message}});
        serde_json::to_string_pretty(&v).expect("plain json") + "\n"
    }
}

/// Innermost variant name of a nested error's `Debug` form:
/// `Chain(PoleAtTarget { .. })` gives `PoleAtTarget`.
fn error_kind(debug: &str) -> String {
    let mut rest = debug;
    loop {
        let end = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        let name = &rest[..end];
        let tail = &rest[end..];
        match tail.strip_prefix('(') {
            Some(inner) if inner.starts_with(|c: char| c.is_ascii_uppercase()) => rest = inner,
            _ => return name.to_string(),
        }
    }
}

/// A finished report in all three renderings.
pub struct Rendered {
    pub json: String,
    pub csv: String,
    pub pretty: String,
    /// A selfcheck ran and found failures.
    pub failed: bool,
}

impl Rendered {
    fn new<T: Serialize>(report: &T, csv: String, pretty: String) -> Self {
        Rendered {
            json: serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
            csv,
            pretty,
            failed: false,
        }
    }

    fn pick(&self, format: Format) -> &str {
        match format {
            Format::Json => &self.json,
            Format::Csv => &self.csv,
            Format::Pretty => &self.pretty,
        }
    }
}

fn csv<I: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: I) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn dims_rows(dims: &std::collections::BTreeMap<String, usize>) -> Vec<Vec<String>> {
    let mut rows: Vec<(i64, usize)> = dims.iter().map(|(k, v)| (k.parse().unwrap_or(0), *v)).collect();
    rows.sort();
    rows.into_iter()
        .map(|(k, v)| vec![k.to_string(), v.to_string()])
        .collect()
}

fn deformation(theta: &ThetaSpec) -> Result<Deformation, CliError> {
    Deformation::from_theta(theta).map_err(CliError::from_err)
}

#[derive(Serialize)]
struct LComplexReport {
    theta: String,
    #[serde(rename = "box")]
    radius: i64,
    dims: Vec<usize>,
    #[serde(rename = "H")]
    homology: std::collections::BTreeMap<String, usize>,
    /// `m` with `1 - q^m = 0`: the kernel of `L₁ → L₀`.
    kernel_modes: Vec<i64>,
    complex: crate::chain::ComplexDoc,
}

#[derive(Serialize)]
struct FreeGroupReport {
    rank: u32,
    radius: u32,
    exactness: ExactnessReport,
    homology: GroupHomology,
    #[serde(skip_serializing_if = "Option::is_none")]
    singular_values: Option<Vec<SingularValueRow>>,
}

#[derive(Serialize)]
struct GrowthReport {
    verdict: DivisorVerdict,
    continued_fraction: Option<ContinuedFraction>,
}

#[derive(Serialize)]
struct WeightsReport {
    case: &'static str,
    dim: u32,
    submultiplicative: Vec<SubmultReport>,
    combing: CombingReport,
}

/// Runs a parsed command and renders its report.
pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Hh(a) => {
            let r = hochschild_homology(a.radius as i64, deformation(&a.theta)?).map_err(CliError::from_err)?;
            let mut pretty = format!("HH of the quantum torus, θ = {}, box {}\n", r.theta, r.radius);
            for (k, v) in &r.dims {
                let _ = writeln!(pretty, "  H_{k} = {v}");
            }
            let modes: Vec<String> = r.modes.iter().map(|c| format!("({},{})", c.m, c.n)).collect();
            let _ = writeln!(pretty, "  contributing modes: {}", modes.join(" "));
            let rows = r.modes.iter().map(|c| {
                [c.m, c.n]
                    .iter()
                    .map(|x| x.to_string())
                    .chain(c.dims.iter().map(|d| d.to_string()))
                    .collect()
            });
            let csv = csv(&["m", "n", "h0", "h1", "h2"], rows);
            Ok(Rendered::new(&r, csv, pretty))
        }
        Command::Resolve(a) => {
            let r = check_resolution(a.radius as i64, deformation(&a.theta)?).map_err(CliError::from_err)?;
            let pretty = format!(
                "Koszul resolution, θ = {}, box {}: {}\n  inner homology {:?}\n  augmentation onto: {}\n  rim classes {:?}\n",
                r.theta, r.radius, r.status, r.inner_homology, r.augmentation_onto, r.rim_classes
            );
            let csv = csv(
                &["degree", "inner_classes", "rim_classes"],
                r.inner_homology.iter().map(|(k, v)| {
                    vec![
                        k.clone(),
                        v.to_string(),
                        r.rim_classes.get(k).copied().unwrap_or(0).to_string(),
                    ]
                }),
            );
            Ok(Rendered::new(&r, csv, pretty))
        }
        Command::Lcomplex(a) => {
            let d = deformation(&a.theta)?;
            let n = a.radius as i64;
            let c = l_complex(n, d);
            let homology = c
                .homology_dims()
                .map_err(CliError::from_err)?
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            let r = LComplexReport {
                theta: d.describe(),
                radius: n,
                dims: c.dims(),
                homology,
                kernel_modes: l_kernel(n, d),
                complex: c.to_doc(),
            };
            let pretty = format!(
                "L complex, θ = {}, box {}: dims {:?}, H {:?}, kernel modes {:?}\n",
                r.theta, n, r.dims, r.homology, r.kernel_modes
            );
            let csv = csv(&["degree", "dim"], dims_rows(&r.homology));
            Ok(Rendered::new(&r, csv, pretty))
        }
        Command::IdentifyLl { args, homology } => {
            let r =
                identify_ll(args.radius as i64, deformation(&args.theta)?, *homology).map_err(CliError::from_err)?;
            let pretty = format!(
                "commutator complex ≅ L⊗L, θ = {}, box {}: dims {:?}, boundary match {}, homology {:?} / {:?}\n",
                r.theta, r.radius, r.dims, r.matrix_match, r.homology_commutator, r.homology_tensor
            );
            let rows = r.bijection.iter().enumerate().flat_map(|(deg, list)| {
                list.iter()
                    .map(move |c| vec![deg.to_string(), c.commutator.clone(), c.tensor.clone(), c.unit.clone()])
            });
            let csv = csv(&["degree", "commutator", "tensor", "unit"], rows);
            Ok(Rendered::new(&r, csv, pretty))
        }
        Command::Freegroup {
            rank,
            radius,
            singular_values,
        } => {
            let exactness =
                fr_exactness_report(*rank, *radius as usize, Variant::Rational).map_err(CliError::from_err)?;
            let homology = fr_group_homology(*rank, *radius as usize, Variant::Rational).map_err(CliError::from_err)?;
            let singular_values = singular_values.map(|k| singular_value_experiment(*rank, *radius as usize, k));
            let pretty = format!(
                "F{rank}, radius {radius}: pair complex {} on the inner range (ρ = {}), {} products\n  inner classes {:?}\n  H {:?}\n",
                exactness.status, exactness.inner_radius, exactness.products_checked, exactness.inner_classes, homology.dims
            );
            let csv = csv(&["degree", "group_homology"], dims_rows(&homology.dims));
            let r = FreeGroupReport {
                rank: *rank,
                radius: *radius,
                exactness,
                homology,
                singular_values,
            };
            Ok(Rendered::new(&r, csv, pretty))
        }
        Command::Growth { theta, range } => {
            let verdict = small_divisor_growth(theta, *range).map_err(CliError::from_err)?;
            let cf = match theta {
                ThetaSpec::Rational(_) | ThetaSpec::ContinuedFraction(_) => {
                    let terms = verdict.records.len().max(1) + 2;
                    Some(continued_fraction(theta, terms).map_err(CliError::from_err)?)
                }
                _ => None,
            };
            let series = small_divisor_series(theta, *range).map_err(CliError::from_err)?;
            let csv = csv(
                &["m", "g"],
                series
                    .iter()
                    .enumerate()
                    .map(|(i, g)| vec![(i + 1).to_string(), g.to_string()]),
            );
            let fit = match &verdict.fit {
                Some(f) => format!(
                    "log-log slope {:.4}, residual {:.2e}, {} records from m = {}",
                    f.slope, f.residual, f.points, f.from
                ),
                None => "no fit".to_string(),
            };
            let pretty = format!(
                "θ = {}: {} ({}), flags [{}]\n  {fit}\n  {}\n",
                verdict.theta,
                verdict.class,
                verdict.mode,
                verdict.flags.join(", "),
                verdict.note
            );
            let r = GrowthReport {
                verdict,
                continued_fraction: cf,
            };
            Ok(Rendered::new(&r, csv, pretty))
        }
        Command::RepGrowth { matrices, range } => {
            let gens = matrices
                .iter()
                .map(|m| parse_matrix(m))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::from_err)?;
            let r: RepGrowth = matrix_rep_growth(&gens, *range).map_err(CliError::from_err)?;
            let csv = csv(
                &["n", "log_norm"],
                r.series.iter().map(|(n, v)| vec![n.to_string(), v.to_string()]),
            );
            let pretty = format!(
                "{} generator(s), n ≤ {}: exponent {:.4}, {}\n",
                r.generators, r.range, r.exponent, r.verdict
            );
            Ok(Rendered::new(&r, csv, pretty))
        }
        Command::Weights {
            rank,
            radius,
            steps,
            case,
            k,
        } => {
            let pairs = weight_case(*case, *rank, *k);
            let group = Group::Lattice { dim: *rank };
            let submultiplicative = pairs
                .iter()
                .map(|(w, _)| is_submultiplicative(w, group, *radius))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::from_err)?;
            let combing = check_combing_compatibility(*rank, &pairs, *radius, *steps).map_err(CliError::from_err)?;
            let case_name = match case {
                WeightCase::Homomorphism => "homomorphism",
                WeightCase::Polynomial => "polynomial",
                WeightCase::Identity => "identity",
            };
            let pretty = format!(
                "weights on Z^{rank} ({case_name}), radius {radius}, steps {steps}: passed {}, equality {}, witness {:?}\n",
                combing.passed, combing.equality_everywhere, combing.witness
            );
            let csv = csv(
                &["weight", "pairs_checked", "submultiplicative", "equality_everywhere"],
                submultiplicative.iter().map(|s| {
                    vec![
                        s.weight.clone(),
                        s.pairs_checked.to_string(),
                        s.passed.to_string(),
                        s.equality_everywhere.to_string(),
                    ]
                }),
            );
            let r = WeightsReport {
                case: case_name,
                dim: *rank,
                submultiplicative,
                combing,
            };
            Ok(Rendered::new(&r, csv, pretty))
        }
        Command::Selfcheck { cases } => {
            let r = selfcheck(cli.seed, *cases);
            let mut pretty = format!(
                "selfcheck seed {} cases {}: {}\n",
                r.seed,
                r.cases,
                if r.passed { "ok" } else { "FAILED" }
            );
            for c in &r.checks {
                let _ = writeln!(pretty, "  {:<28} {:>5} run, {} failed", c.name, c.runs, c.failures);
            }
            let csv = csv(
                &["check", "runs", "failures"],
                r.checks
                    .iter()
                    .map(|c| vec![c.name.clone(), c.runs.to_string(), c.failures.to_string()]),
            );
            let mut out = Rendered::new(&r, csv, pretty);
            out.failed = !r.passed;
            Ok(out)
        }
    }
}

fn weight_case(case: WeightCase, dim: u32, k: u32) -> Vec<(Weight, WeightCombination)> {
    match case {
        WeightCase::Homomorphism => (0..dim as usize)
            .flat_map(|i| [1i64, -1].map(move |s| (i, s)))
            .map(|(i, s)| {
                let mut a = vec![0i64; dim as usize];
                a[i] = s;
                let w = Weight::exponential(&a);
                (w.clone(), WeightCombination::single(w))
            })
            .collect(),
        WeightCase::Polynomial => vec![(
            Weight::polynomial(k),
            WeightCombination::single(Weight::polynomial(2 * k)),
        )],
        WeightCase::Identity => vec![(Weight::polynomial(k), WeightCombination::single(Weight::polynomial(k)))],
    }
}

fn destination(cli: &Cli) -> Option<PathBuf> {
    cli.output.clone().or_else(|| {
        std::env::var_os(OUT_DIR_VAR)
            .map(|dir| PathBuf::from(dir).join(format!("{}.{}", cli.command.name(), cli.format.extension())))
    })
}

/// Parses `args` (program name first), runs, and writes to the given streams.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n as usize).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError::from_err(e)),
        },
        None => execute(&cli),
    };
    let rendered = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = stdout.write_all(e.to_json().as_bytes());
            let _ = writeln!(stderr, "error: {}", e.message);
            return 1;
        }
    };
    let text = rendered.pick(cli.format);
    match destination(&cli) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                let err = CliError {
                    kind: "Io".into(),
                    message: format!("{}: {e}", path.display()),
                };
                let _ = stdout.write_all(err.to_json().as_bytes());
                return 1;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    i32::from(rendered.failed)
}

/// [`run_with`] on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (out, err) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut out.lock(), &mut err.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert_eq!(error_kind("Chain(PoleAtTarget { degree: 1 })"), "PoleAtTarget");
        assert_eq!(error_kind("BadMatrix(\"x\")"), "BadMatrix");
        assert_eq!(error_kind("NotNumeric"), "NotNumeric");
        assert_eq!(error_kind("Io(IoError(\"x\"))"), "IoError");
    }
}
