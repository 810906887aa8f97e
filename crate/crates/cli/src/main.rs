mod error;
mod input;
mod report;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lortho::certificates::{lo_certificate, slo_certificate};
use lortho::criteria::is_strongly_left_orthogonal_with_cap;
use lortho::hodge::{hodge_admissible, inertia, positive_structure_check};
use lortho::models::{enumerate_catalog_with_cap, random_tree, standard_chain, SweepBounds};
use lortho::{CurveConfiguration, Divisor, Error, DEFAULT_ENUMERATION_CAP};

use error::CliError;
use report::{
    certificate_json, check_pretty, config_json, genus_pretty, hodge_pretty, int,
    row_divisor_map, violations_json, CheckReport, GenusReport, HodgeReport, LoJson, RowJson,
    SloJson, Witness,
};

/// Exact checks for left-orthogonality of effective divisors on surfaces,
/// from combinatorial curve configurations.
#[derive(Debug, Parser)]
#[command(name = "lortho", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Cap on the subdivisor candidate space.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertificateModeArg {
    Lo,
    Slo,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide LO and SLO with a witness, plus Hodge admissibility.
    Check {
        /// Input file; stdin when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// Arithmetic genus by Riemann-Roch, the componentwise closed form, and
    /// the zero-genus identity.
    Genus {
        input: Option<PathBuf>,
    },
    /// Elimination certificate for the divisor, replay-verified.
    Certificate {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: CertificateModeArg,
    },
    /// Inertia of the intersection form and the positivity structure report.
    Hodge {
        input: Option<PathBuf>,
    },
    /// Exhaustive classified sweep over weighted trees, as JSON lines.
    Enumerate {
        #[arg(long)]
        max_components: usize,
        #[arg(long, default_value_t = 3)]
        k_max: u64,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        r_min: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        r_max: i64,
        #[arg(long)]
        include_multiedges: bool,
    },
    /// Emit input documents for the standard generators.
    Gen {
        #[command(subcommand)]
        generator: Generator,
    },
}

#[derive(Debug, Subcommand)]
enum Generator {
    /// Chain of rational curves with the given self-intersections.
    Chain {
        /// Comma-separated self-intersections, e.g. `-2,-2,-2`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        self_intersections: Vec<i64>,
    },
    /// Uniformly random labeled tree, deterministic per seed.
    RandomTree {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        components: usize,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        r_min: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        r_max: i64,
        #[arg(long, default_value_t = 1)]
        k_min: u64,
        #[arg(long, default_value_t = 1)]
        k_max: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(u8::try_from(e.code).unwrap_or(1))
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError {
            message: e.to_string(),
            code: 1,
        }),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Check { input } => {
            let (cfg, d) = input::parse_input(&read_input(input)?)?;
            let report = check_report(&cfg, &d, cli.cap, None)?;
            match cli.output {
                OutputFormat::Json => emit(&format!(
                    "{}\n",
                    serde_json::to_string(&report).expect("report serializes")
                )),
                OutputFormat::Pretty => emit(&check_pretty(&report)),
            }
        }
        Command::Certificate { input, mode } => {
            let (cfg, d) = input::parse_input(&read_input(input)?)?;
            let report = check_report(&cfg, &d, cli.cap, Some(*mode))?;
            match cli.output {
                OutputFormat::Json => emit(&format!(
                    "{}\n",
                    serde_json::to_string(&report).expect("report serializes")
                )),
                OutputFormat::Pretty => emit(&check_pretty(&report)),
            }
        }
        Command::Genus { input } => {
            let (cfg, d) = input::parse_input(&read_input(input)?)?;
            let p_a = cfg.arithmetic_genus(&d)?;
            let closed = match cfg.genus_closed_form(&d) {
                Ok(v) => Some(int(&v)),
                Err(Error::NotSimpleConfiguration(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let magic = match cfg.magic_formula_holds(&d) {
                Ok(v) => Some(v),
                Err(Error::NotSimpleConfiguration(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let report = GenusReport {
                p_a: int(&p_a),
                genus_closed_form: closed,
                magic_formula_holds: magic,
            };
            match cli.output {
                OutputFormat::Json => emit(&format!(
                    "{}\n",
                    serde_json::to_string(&report).expect("report serializes")
                )),
                OutputFormat::Pretty => emit(&genus_pretty(&report)),
            }
        }
        Command::Hodge { input } => {
            let (cfg, d) = input::parse_input(&read_input(input)?)?;
            let signature = inertia(&cfg.gram_matrix())?;
            let structure = positive_structure_check(&cfg, &d)?;
            let report = HodgeReport {
                inertia: signature.into(),
                hodge_admissible: signature.n_pos <= 1,
                structure_violations: violations_json(&structure),
            };
            match cli.output {
                OutputFormat::Json => emit(&format!(
                    "{}\n",
                    serde_json::to_string(&report).expect("report serializes")
                )),
                OutputFormat::Pretty => emit(&hodge_pretty(&report)),
            }
        }
        Command::Enumerate {
            max_components,
            k_max,
            r_min,
            r_max,
            include_multiedges,
        } => {
            let bounds = SweepBounds {
                max_components: *max_components,
                multiplicity_max: *k_max,
                r_min: *r_min,
                r_max: *r_max,
                include_multiedges: *include_multiedges,
            };
            let mut lines = String::new();
            for record in enumerate_catalog_with_cap(&bounds, cli.cap)? {
                let row = RowJson {
                    config: config_json(&record.config),
                    divisor: row_divisor_map(&record.config, &record.divisor),
                    lo: LoJson {
                        is_lo: record.lo.is_lo(),
                        witness: record
                            .lo
                            .witness
                            .as_ref()
                            .map(|w| Witness::from_lo(&record.config, w)),
                    },
                    slo: SloJson {
                        is_slo: record.slo.is_slo(),
                        witness: record
                            .slo
                            .witness
                            .as_ref()
                            .map(|w| Witness::from_slo(&record.config, w)),
                    },
                    hodge_admissible: record.hodge_admissible,
                    structure_violations: violations_json(&record.structure),
                };
                lines.push_str(&serde_json::to_string(&row).expect("row serializes"));
                lines.push('\n');
                if lines.len() > 1 << 16 {
                    emit(&lines)?;
                    lines.clear();
                }
            }
            emit(&lines)
        }
        Command::Gen { generator } => {
            let (cfg, d) = match generator {
                Generator::Chain { self_intersections } => standard_chain(self_intersections),
                Generator::RandomTree {
                    seed,
                    components,
                    r_min,
                    r_max,
                    k_min,
                    k_max,
                } => {
                    if *components < 1 {
                        return Err(CliError::input("components must be at least 1"));
                    }
                    if r_min > r_max || k_min > k_max || *k_min < 1 {
                        return Err(CliError::input("empty r or k range"));
                    }
                    random_tree(*seed, *components, *r_min..=*r_max, *k_min..=*k_max)
                }
            };
            let doc = input::render_document(&cfg, &d);
            let text = match cli.output {
                OutputFormat::Json => serde_json::to_string(&doc).expect("document serializes"),
                OutputFormat::Pretty => {
                    serde_json::to_string_pretty(&doc).expect("document serializes")
                }
            };
            emit(&format!("{text}\n"))
        }
    }
}

fn check_report(
    cfg: &CurveConfiguration,
    d: &Divisor,
    cap: u64,
    certificate_mode: Option<CertificateModeArg>,
) -> Result<CheckReport, CliError> {
    let p_a = cfg.arithmetic_genus(d)?;
    let slo = is_strongly_left_orthogonal_with_cap(cfg, d, cap)?;
    let witness = match (&slo.lo.witness, &slo.witness) {
        (Some(f), _) => Some(Witness::from_lo(cfg, f)),
        (None, Some(w)) => Some(Witness::from_slo(cfg, w)),
        (None, None) => None,
    };
    // A support that is not a tree of lines has no certificate by
    // definition; report that as `null` instead of failing the process.
    let certificate = match certificate_mode {
        None => None,
        Some(mode) => {
            let built = match mode {
                CertificateModeArg::Lo => lo_certificate(cfg, d),
                CertificateModeArg::Slo => slo_certificate(cfg, d),
            };
            match built {
                Ok(c) => Some(c.map(|c| certificate_json(&c))),
                Err(Error::NotTreeOfLines(_)) => Some(None),
                Err(e) => return Err(e.into()),
            }
        }
    };
    Ok(CheckReport {
        lo: slo.lo.is_lo(),
        slo: slo.is_slo(),
        p_a: int(&p_a),
        witness,
        certificate,
        hodge_admissible: hodge_admissible(cfg),
    })
}
