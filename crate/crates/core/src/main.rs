use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tilegraph::dynamics::{self, SimplicityReport};
use tilegraph::graph::Skeleton;
use tilegraph::shift::{count_blocks_checked, entropy_sequence, DEFAULT_BRUTE_FORCE_MAX_D};
use tilegraph::verify::verify_axioms;
use tilegraph::{io, Error, Limits, Point, Result};

#[derive(Parser)]
#[command(name = "tilegraph", version, about = "2-graphs from tiles and bijections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Caps {
    /// Largest accepted tile.
    #[arg(long, default_value_t = Limits::default().max_tile_cells)]
    max_tile_cells: usize,
    /// Largest vertex set that will be enumerated.
    #[arg(long, default_value_t = Limits::default().max_vertices)]
    max_vertices: u64,
    /// Largest number of paths any single enumeration may produce.
    #[arg(long, default_value_t = Limits::default().max_paths)]
    max_paths: u64,
}

impl Caps {
    fn limits(self) -> Result<Limits> {
        if self.max_tile_cells == 0 || self.max_vertices == 0 || self.max_paths == 0 {
            return Err(Error::Precondition("size caps must be positive".into()));
        }
        Ok(Limits {
            max_tile_cells: self.max_tile_cells,
            max_vertices: self.max_vertices,
            max_paths: self.max_paths,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate basic data and report the vertex count.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        caps: Caps,
    },
    /// Print the bicoloured skeleton.
    Skeleton {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[command(flatten)]
        caps: Caps,
    },
    /// Aperiodicity certificate, strong connectivity and the simplicity report.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also search for aperiodicity witnesses of degree up to this bound, e.g. 3,3.
        #[arg(long, value_parser = parse_point)]
        witness_bound: Option<Point>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Convert weight parameters to basic data.
    ImportPrw {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: Caps,
    },
    /// Block counts and the entropy sequence.
    Entropy {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        dmax: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        caps: Caps,
    },
    /// Brute-force check of the category axioms.
    Verify {
        file: PathBuf,
        /// Largest path degree checked, e.g. 2,2.
        #[arg(long, value_parser = parse_point, default_value = "2,2")]
        degree: Point,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        caps: Caps,
    },
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok(Point::new(a, b))
}

fn unsupported(format: Format) -> Error {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Error::Precondition(format!("output format {name} is not available for this command"))
}

#[derive(Serialize)]
struct ValidateReport {
    vertices: usize,
    patterns: usize,
    alphabet: usize,
    reduced_cells: usize,
    vertex_formula_holds: bool,
}

#[derive(Serialize)]
struct WitnessSummary {
    bound: [u32; 2],
    searched: u64,
    found: u64,
    missing: Vec<String>,
}

#[derive(Serialize)]
struct AnalyzeOutput {
    #[serde(flatten)]
    report: SimplicityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_search: Option<WitnessSummary>,
}

fn witness_summary(
    bd: &tilegraph::BasicData,
    sk: &Skeleton,
    bound: Point,
    limits: &Limits,
) -> Result<WitnessSummary> {
    let mut summary = WitnessSummary {
        bound: [bound.x, bound.y],
        searched: 0,
        found: 0,
        missing: Vec::new(),
    };
    let mut pairs = Vec::new();
    for m in bound.box_below() {
        for n in bound.box_below() {
            if m != n && m.meet(n) == Point::ZERO && m < n {
                pairs.push((m, n));
            }
        }
    }
    for v in sk.ids() {
        for &(m, n) in &pairs {
            summary.searched += 1;
            match dynamics::periodicity_witness_search(bd, sk, v, m, n, bound, limits)? {
                Some(_) => summary.found += 1,
                None => summary.missing.push(format!("{v} m={m} n={n}")),
            }
        }
    }
    Ok(summary)
}

fn run(cli: Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Validate { file, format, caps } => {
            let limits = caps.limits()?;
            let bd = io::read_basic_data(&file, &limits)?;
            let sk = Skeleton::build(&bd, &limits)?;
            let arity = bd.tile().reduced().len();
            let expected = if bd.is_degenerate() {
                1
            } else {
                bd.alphabet().len().pow(arity as u32 + 1)
            };
            let report = ValidateReport {
                vertices: sk.vertex_count(),
                patterns: bd.pattern_count(),
                alphabet: bd.alphabet().len(),
                reduced_cells: arity,
                vertex_formula_holds: sk.vertex_count() == expected,
            };
            let ok = report.vertex_formula_holds;
            match format {
                Format::Json => Ok((io::to_json(&report)?, ok)),
                Format::Text => Ok((
                    format!("{} vertices, {}\n", report.vertices, if ok { "OK" } else { "MISMATCH" }),
                    ok,
                )),
                other => Err(unsupported(other)),
            }
        }
        Command::Skeleton { file, format, caps } => {
            let limits = caps.limits()?;
            let bd = io::read_basic_data(&file, &limits)?;
            let sk = Skeleton::build(&bd, &limits)?;
            match format {
                Format::Dot => Ok((io::skeleton_dot(&bd, &sk), true)),
                Format::Text => {
                    let mut out = format!("{} vertices\n", sk.vertex_count());
                    for c in tilegraph::Colour::ALL {
                        out.push_str(&format!("{} edges: {}\n", c.name(), sk.edge_total(c)));
                    }
                    Ok((out, true))
                }
                other => Err(unsupported(other)),
            }
        }
        Command::Analyze {
            file,
            format,
            witness_bound,
            caps,
        } => {
            let limits = caps.limits()?;
            let bd = io::read_basic_data(&file, &limits)?;
            let sk = Skeleton::build(&bd, &limits)?;
            let report = dynamics::simplicity_report(&bd, &sk, &limits);
            let witness_search = witness_bound
                .map(|b| witness_summary(&bd, &sk, b, &limits))
                .transpose()?;
            let out = AnalyzeOutput {
                report,
                witness_search,
            };
            match format {
                Format::Json => Ok((io::to_json(&out)?, true)),
                Format::Text => {
                    let r = &out.report;
                    let mut text = format!("verdict: {:?}\n", r.verdict);
                    if let Some(c) = &r.certificate {
                        text.push_str(&format!(
                            "certificate: {} {}-breaking {:?} through {}\n",
                            c.colour.name(),
                            c.symbol,
                            c.kind,
                            c.vertices.join(", ")
                        ));
                    }
                    text.push_str(&format!(
                        "strongly connected: {} (k = {})\n",
                        r.strongly_connected, r.k
                    ));
                    Ok((text, true))
                }
                other => Err(unsupported(other)),
            }
        }
        Command::ImportPrw { file, format, caps } => {
            let limits = caps.limits()?;
            let params = io::read_prw(&file, &limits)?;
            let (_, report) = io::import_report(&params, &limits)?;
            let ok = report.trace_identity && report.vertex_sets_equal != Some(false);
            match format {
                Format::Json => Ok((io::to_json(&report)?, ok)),
                other => Err(unsupported(other)),
            }
        }
        Command::Entropy {
            file,
            dmax,
            format,
            caps,
        } => {
            let limits = caps.limits()?;
            let bd = io::read_basic_data(&file, &limits)?;
            let mut rows = entropy_sequence(&bd, dmax)?;
            for row in rows.iter_mut().take(DEFAULT_BRUTE_FORCE_MAX_D as usize) {
                *row = count_blocks_checked(&bd, row.d, DEFAULT_BRUTE_FORCE_MAX_D, &limits)?;
            }
            match format {
                Format::Csv => Ok((io::census_csv(&rows), true)),
                Format::Json => Ok((io::to_json(&rows)?, true)),
                other => Err(unsupported(other)),
            }
        }
        Command::Verify {
            file,
            degree,
            format,
            caps,
        } => {
            let limits = caps.limits()?;
            let bd = io::read_basic_data_lenient(&file, &limits)?;
            let report = verify_axioms(&bd, degree, &limits)?;
            let ok = report.passed();
            match format {
                Format::Json => Ok((io::to_json(&report)?, ok)),
                Format::Text => {
                    let mut text = String::new();
                    for c in &report.checks {
                        text.push_str(&format!(
                            "{} {} ({} checked)\n",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.name,
                            c.checked
                        ));
                        if let Some(ce) = &c.counterexample {
                            text.push_str(&format!("  counterexample: {ce}\n"));
                        }
                    }
                    Ok((text, ok))
                }
                other => Err(unsupported(other)),
            }
        }
    }
}

#[derive(Serialize)]
struct Diagnostic {
    error: &'static str,
    message: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            let diag = Diagnostic {
                error: e.kind(),
                message: e.to_string(),
            };
            eprintln!("{}", serde_json::to_string(&diag).unwrap_or_else(|_| e.to_string()));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
