mod render;
mod suites;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use umbra::associated::{self, Kind};
use umbra::eulerian;
use umbra::families::family;
use umbra::kernel::parse_rational;
use umbra::numbers::{self, Params, CLASSICAL_NAMES};
use umbra::report::Status;
use umbra::{Rational, Triangle};

use render::{Format, Meta};
use suites::Suite;

#[derive(Parser)]
#[command(
    name = "umbra",
    version,
    about = "Exact Stirling and Eulerian numbers associated with polynomial sequences"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true, value_name = "P/Q")]
    lambda: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, value_name = "P/Q")]
    r: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, value_name = "P/Q")]
    s: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, value_name = "P/Q")]
    a: Option<Rational>,
}

impl ParamArgs {
    fn params(&self) -> Params {
        [
            ("lambda", &self.lambda),
            ("r", &self.r),
            ("s", &self.s),
            ("a", &self.a),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
        .collect()
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a number triangle for rows 0..=max-n.
    Triangle {
        #[arg(long, conflicts_with = "classical")]
        family: Option<String>,
        /// s1, s2, eulerian or classical:<name>
        #[arg(long)]
        kind: Option<String>,
        /// A classical triangle, e.g. stirling2 or eulerian.
        #[arg(long)]
        classical: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run identity suites and print JSON reports.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// A family id, or `all`.
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[command(flatten)]
        params: ParamArgs,
        /// Seed for the random vectors of the inverse-relation checks.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Dump generating-function coefficients (times n!).
    Gf {
        #[arg(long)]
        family: String,
        #[arg(long, value_enum)]
        kind: GfKind,
        /// Column index; required for s1 and s2.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GfKind {
    S1,
    S2,
    Eulerian,
}

enum Failure {
    Usage(String),
    Identities,
}

impl From<umbra::Error> for Failure {
    fn from(e: umbra::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err((out, Failure::Identities)) => {
            emit(&out);
            ExitCode::from(1)
        }
        Err((_, Failure::Usage(msg))) => {
            eprintln!("umbra: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(s: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(s.as_bytes());
}

fn run(cmd: Cmd) -> Result<String, (String, Failure)> {
    match cmd {
        Cmd::Triangle {
            family,
            kind,
            classical,
            max_n,
            params,
            format,
        } => triangle(family, kind, classical, max_n, &params.params(), format)
            .map_err(|e| (String::new(), e)),
        Cmd::Verify {
            suite,
            family,
            max_n,
            params,
            seed,
        } => {
            let fams =
                suites::select(&family, &params.params()).map_err(|e| (String::new(), e.into()))?;
            let reports = suites::run(suite, &fams, family == "all", max_n, seed);
            let mut out = serde_json::to_string_pretty(&reports).expect("serializable");
            out.push('\n');
            let checks: Vec<_> = reports.iter().flat_map(|r| &r.checks).collect();
            let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
            let skipped = checks
                .iter()
                .filter(|c| matches!(c.status, Status::Skipped(_)))
                .count();
            eprintln!(
                "{} checks: {} failed, {} skipped",
                checks.len(),
                failed,
                skipped
            );
            if failed > 0 {
                Err((out, Failure::Identities))
            } else {
                Ok(out)
            }
        }
        Cmd::Gf {
            family,
            kind,
            k,
            order,
            params,
            format,
        } => gf(&family, kind, k, order, &params.params(), format).map_err(|e| (String::new(), e)),
    }
}

fn triangle(
    family_id: Option<String>,
    kind: Option<String>,
    classical: Option<String>,
    max_n: usize,
    params: &Params,
    format: Format,
) -> Result<String, Failure> {
    let classical = match (
        &classical,
        kind.as_deref().and_then(|k| k.strip_prefix("classical:")),
    ) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(
                "give --classical or --kind classical:<name>, not both".into(),
            ))
        }
        (Some(name), None) => Some(name.clone()),
        (None, Some(name)) => Some(name.to_string()),
        (None, None) => None,
    };
    let (t, meta) = if let Some(name) = classical {
        if family_id.is_some() {
            return Err(Failure::Usage(
                "a classical triangle takes no --family".into(),
            ));
        }
        let t = classical_triangle(&name, params, max_n)?;
        let meta = Meta {
            family: "classical".into(),
            kind: format!("classical:{name}"),
            params: render::params_meta(params),
            max_n,
            k: None,
        };
        (t, meta)
    } else {
        let id = family_id.ok_or_else(|| Failure::Usage("need --family or --classical".into()))?;
        let kind = kind.ok_or_else(|| Failure::Usage("need --kind s1|s2|eulerian".into()))?;
        let fam = family(&id, params)?;
        let t = match kind.as_str() {
            "s1" => associated::triangle(&fam, Kind::First, max_n)?,
            "s2" => associated::triangle(&fam, Kind::Second, max_n)?,
            "eulerian" => eulerian::assoc_triangle(&fam, max_n)?,
            other => return Err(Failure::Usage(format!("unknown kind `{other}`"))),
        };
        let meta = Meta {
            family: id,
            kind,
            params: render::params_meta(&fam.params),
            max_n,
            k: None,
        };
        (t, meta)
    };
    Ok(render::triangle(&t, &meta, format))
}

fn classical_triangle(name: &str, params: &Params, max_n: usize) -> Result<Triangle, Failure> {
    if name == "eulerian" {
        return Ok(eulerian::classical_recurrence(max_n));
    }
    if !CLASSICAL_NAMES.contains(&name) {
        return Err(Failure::Usage(format!(
            "unknown classical triangle `{name}` (expected eulerian or one of {})",
            CLASSICAL_NAMES.join(", ")
        )));
    }
    Ok((*numbers::classical(name, params, max_n)?).clone())
}

fn gf(
    id: &str,
    kind: GfKind,
    k: Option<usize>,
    order: usize,
    params: &Params,
    format: Format,
) -> Result<String, Failure> {
    let fam = family(id, params)?;
    let meta = |kind: &str| Meta {
        family: id.to_string(),
        kind: kind.to_string(),
        params: render::params_meta(&fam.params),
        max_n: order,
        k,
    };
    let column = |kind: &str| k.ok_or_else(|| Failure::Usage(format!("--kind {kind} needs --k")));
    let series = match kind {
        GfKind::S2 => associated::s2_assoc_gf(&fam, column("s2")?, order)?,
        GfKind::S1 => associated::s1_assoc_gf(&fam, column("s1")?, order)?,
        GfKind::Eulerian => {
            let polys = eulerian::eulerian_gf_assoc(&fam, order)?;
            let t = Triangle::from_fn(format!("{id}:eulerian_gf"), order, |n, j| {
                Ok(polys[n].coeff(j))
            })?;
            return Ok(render::triangle(&t, &meta("eulerian"), format));
        }
    };
    let tag = if matches!(kind, GfKind::S2) {
        "s2"
    } else {
        "s1"
    };
    let values: Vec<Rational> = (0..=order).map(|n| series.egf_coeff(n)).collect();
    Ok(render::series(&values, &meta(tag), format))
}
