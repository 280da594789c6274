use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use agtrace::curve::Curve;
use agtrace::divisor::Divisor;
use agtrace::poly::Poly;
use agtrace::sweep::{
    bombieri_study, goppa_polynomials, parse_tower, render_bombieri, render_reports, Format,
    Summary, SweepConfig,
};
use agtrace::theorem::{goppa_case, goppa_divisor, verify_with, TheoremReport};
use agtrace::{build_tower, Error, FieldTower};

#[derive(Parser)]
#[command(
    name = "agtrace",
    version,
    about = "Dimensions of trace codes of AG codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the dimension formula for one curve and divisor.
    Verify {
        /// Field tower as p,r,m (q = p^r, big field F_{q^m}).
        #[arg(long)]
        tower: String,
        /// `p1` or `weierstrass:a1,a3,a2,a4,a6`.
        #[arg(long, default_value = "p1")]
        curve: String,
        /// e.g. `2*inf`, `3*x=1-1*inf`, `1*poly=2,1,1-1*inf`, or `0`.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        /// Leave the points of Supp(G-) out of D.
        #[arg(long)]
        drop_zero_columns: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run a batch of verifications described by a key=value config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `format` from the config.
        #[arg(long)]
        format: Option<String>,
        /// Overrides `seed` from the config.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        include_failing: bool,
    },
    /// Verify Goppa divisors (g)_0 - P_inf on the projective line.
    Goppa {
        #[arg(long)]
        tower: String,
        /// A single Goppa polynomial, coefficient indices low degree first.
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 2)]
        max_factors: usize,
        #[arg(long)]
        include_failing: bool,
        #[arg(long)]
        drop_zero_columns: bool,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Check Bombieri's character-sum bound on random polynomials.
    Bombieri {
        #[arg(long)]
        tower: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "csv")]
        format: String,
    },
}

/// Bad input (exit 2) versus a failed check (exit 1).
enum Failure {
    Input(Error),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn tower(s: &str) -> Result<Arc<FieldTower>, Error> {
    let (p, r, m) = parse_tower(s)?;
    Ok(Arc::new(build_tower(p, r, m)?))
}

fn parse_poly(s: &str, f: &FieldTower) -> Result<Poly, Error> {
    let coeffs = s
        .split(',')
        .map(|c| {
            let idx = c
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            f.element(idx)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Poly::new(coeffs))
}

fn emit_reports(reports: &[TheoremReport], format: Format, summary: bool) -> Result<(), Failure> {
    print!("{}", render_reports(reports, format)?);
    let s = Summary::of(reports);
    if summary {
        eprintln!("{s}");
    }
    if s.success(reports) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            tower: t,
            curve,
            divisor,
            drop_zero_columns,
            format,
        } => {
            let format: Format = format.parse()?;
            let curve = Curve::parse(&curve, tower(&t)?)?;
            let g = Divisor::parse(&divisor, &curve)?;
            let report = verify_with(&curve, &g, drop_zero_columns)?;
            emit_reports(&[report], format, false)
        }
        Command::Sweep {
            config,
            format,
            seed,
            include_failing,
        } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Config(format!("{}: {e}", config.display())))?;
            let mut cfg = SweepConfig::parse(&text)?;
            if let Some(f) = format {
                cfg.format = f.parse()?;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            cfg.include_failing |= include_failing;
            let reports = agtrace::sweep::run_sweep(&cfg)?;
            emit_reports(&reports, cfg.format, true)
        }
        Command::Goppa {
            tower: t,
            poly,
            count,
            seed,
            min_degree,
            max_degree,
            max_factors,
            include_failing,
            drop_zero_columns,
            format,
        } => {
            let format: Format = format.parse()?;
            let f = tower(&t)?;
            let curve = Curve::projective_line(f.clone());
            let polys = match poly {
                Some(s) => vec![parse_poly(&s, &f)?],
                None => {
                    if min_degree < 2 || max_degree < min_degree || max_factors == 0 {
                        return Err(
                            Error::Config("need 2 <= min-degree <= max-degree".into()).into()
                        );
                    }
                    goppa_polynomials(
                        &f,
                        count,
                        min_degree,
                        max_degree,
                        max_factors,
                        include_failing,
                        seed,
                    )?
                }
            };
            let mut reports = Vec::with_capacity(polys.len());
            for g in &polys {
                let case = goppa_case(g, &f)?;
                if format == Format::Text {
                    println!(
                        "goppa      g=[{}] r1={} r2={} s={} valid={} predicted={}",
                        g.to_index_list(),
                        case.r1,
                        case.r2,
                        case.s,
                        case.valid,
                        case.predicted
                    );
                }
                let report = verify_with(&curve, &goppa_divisor(g, &f)?, drop_zero_columns)?;
                if case.valid && report.hypotheses.all() && report.computed as i64 != case.predicted
                {
                    eprintln!("goppa formula mismatch for g=[{}]", g.to_index_list());
                    return Err(Failure::Check);
                }
                reports.push(report);
            }
            emit_reports(&reports, format, true)
        }
        Command::Bombieri {
            tower: t,
            count,
            max_degree,
            seed,
            format,
        } => {
            let format: Format = format.parse()?;
            if max_degree == 0 {
                return Err(Error::Config("max-degree must be positive".into()).into());
            }
            let rows = bombieri_study(parse_tower(&t)?, count, max_degree, seed)?;
            print!("{}", render_bombieri(&rows, format)?);
            let failed = rows.iter().filter(|r| !r.pass).count();
            eprintln!("samples={} failed={failed}", rows.len());
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
