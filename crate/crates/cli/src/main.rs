mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use skewline_core::configs::{self, BuiltinName, MarkedParameterSets};
use skewline_core::verify::{self, VerifyOptions};
use skewline_core::{enumerate_generators, stabilizer, Configuration, Error, Field, FieldDescriptor, ProjPoint};

use output::Render;

#[derive(Parser)]
#[command(name = "skewline", version, about = "Projection groupoids of skew line configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// List group elements even above 60 of them.
    #[arg(long, global = true)]
    elements: bool,

    /// Largest group or orbit explored before giving up.
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Components, auxiliary counts and vertex groups of a configuration.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Base line; defaults to the lowest index of each component.
        #[arg(long)]
        base: Option<usize>,
    },
    /// Orbit of a point of one line under all projections.
    Orbit {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        line: usize,
        /// Parameter on the line, such as `1,0` or `t,1`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Subgroup of PGL(2) permuting a finite set of points of P^1.
    Stabilizer(StabilizerArgs),
    /// Runs every acceptance check.
    Verify {
        /// Perturb the last line of a built-in before checking.
        #[arg(long)]
        corrupt: Option<BuiltinName>,
        /// Criteria to run, such as `1,4,12`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        #[arg(long, default_value_t = VerifyOptions::new().seed)]
        seed: u64,
        /// Random instances per property and field.
        #[arg(long, default_value_t = VerifyOptions::new().instances)]
        instances: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    builtin: Option<BuiltinName>,
    /// JSON configuration document.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct StabilizerArgs {
    /// Points separated by `;` or newlines, inline or in a file.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "set", conflicts_with = "set")]
    points: Option<String>,
    /// A named parameter set: X, Y, Xquasi, Yquasi, Xtilde, Ytilde or E.
    #[arg(long)]
    set: Option<String>,
    /// Field of the points: rationals, eisenstein, gaussian, cyclotomic5, or
    /// minimal polynomial coefficients lowest degree first such as `1,1,1`.
    #[arg(long, default_value = "eisenstein")]
    field: String,
}

enum Failure {
    Verify,
    Parse(Error),
    Precondition(Error),
    Io(PathBuf, std::io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Parse(_) | Failure::Io(..) => 3,
            Failure::Precondition(_) => 4,
        }
    }
}

fn precondition(e: Error) -> Failure {
    Failure::Precondition(e)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verify => {}
                Failure::Parse(e) | Failure::Precondition(e) => eprintln!("error: {e}"),
                Failure::Io(p, e) => eprintln!("error: cannot read {}: {e}", p.display()),
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let render = Render {
        json: cli.json,
        elements: cli.elements,
    };
    let started = Instant::now();
    match &cli.command {
        Command::Analyze { source, base } => {
            let config = load(source)?;
            let analysis = enumerate_generators(&config).map_err(precondition)?;
            if let Some(b) = base {
                if *b >= config.len() {
                    return Err(precondition(Error::InvalidIndex {
                        index: *b,
                        len: config.len(),
                    }));
                }
            }
            let mut components = Vec::new();
            for comp in &analysis.components {
                let b = base.filter(|b| comp.contains(b)).unwrap_or(comp[0]);
                let group = analysis.vertex_group(b, cli.cap).map_err(precondition)?;
                components.push((comp.clone(), b, group));
            }
            let invariance = match config.marked() {
                Some(_) => Some(analysis.marked_invariance(&config).map_err(precondition)?),
                None => None,
            };
            render.analyze(&config, &analysis, &components, invariance.as_ref(), started.elapsed());
            Ok(())
        }
        Command::Orbit {
            source,
            line,
            point,
        } => {
            let config = load(source)?;
            let p = configs::parse_point(config.field(), point).map_err(Failure::Parse)?;
            let analysis = enumerate_generators(&config).map_err(precondition)?;
            let orbit = analysis.orbit(*line, &p, cli.cap).map_err(precondition)?;
            render.orbit(&config, *line, &p, &orbit, started.elapsed());
            Ok(())
        }
        Command::Stabilizer(args) => {
            let (label, points) = stabilizer_points(args)?;
            let group = stabilizer(&points).map_err(precondition)?;
            render.stabilizer(&label, &points, &group, started.elapsed());
            Ok(())
        }
        Command::Verify {
            corrupt,
            only,
            seed,
            instances,
        } => {
            let options = VerifyOptions {
                corrupt: *corrupt,
                only: only.clone(),
                seed: *seed,
                instances: *instances,
            };
            let report = verify::run(&options).map_err(precondition)?;
            render.verify(&report, started.elapsed());
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load(source: &Source) -> Result<Configuration, Failure> {
    match (&source.builtin, &source.config) {
        (Some(name), _) => configs::builtin(*name).map_err(precondition),
        (None, Some(path)) => configs::parse_config(&read(path)?).map_err(Failure::Parse),
        (None, None) => unreachable!("clap requires a source"),
    }
}

fn parse_field(text: &str) -> Result<Field, Failure> {
    match text {
        "rationals" | "Q" => Ok(FieldDescriptor::rationals()),
        "eisenstein" => Ok(FieldDescriptor::eisenstein()),
        "gaussian" => Ok(FieldDescriptor::gaussian()),
        "cyclotomic5" => Ok(FieldDescriptor::cyclotomic5()),
        other => {
            let coeffs = other
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| {
                    Failure::Parse(Error::Parse {
                        location: "--field".into(),
                        message: format!("unknown field `{other}`"),
                    })
                })?;
            FieldDescriptor::from_i64(&coeffs).map_err(Failure::Parse)
        }
    }
}

fn stabilizer_points(args: &StabilizerArgs) -> Result<(String, Vec<ProjPoint>), Failure> {
    if let Some(name) = &args.set {
        let points = match name.as_str() {
            "X" => MarkedParameterSets::x(),
            "Y" => MarkedParameterSets::y(),
            "Xquasi" => MarkedParameterSets::x_quasi(),
            "Yquasi" => MarkedParameterSets::y_quasi(),
            "Xtilde" => MarkedParameterSets::x_tilde(),
            "Ytilde" => MarkedParameterSets::y_tilde(),
            "E" => MarkedParameterSets::e(),
            other => {
                return Err(Failure::Parse(Error::Parse {
                    location: "--set".into(),
                    message: format!("unknown parameter set `{other}`"),
                }))
            }
        };
        return Ok((name.clone(), points));
    }
    let field = parse_field(&args.field)?;
    let input = args.points.as_deref().expect("clap requires an input");
    let path = Path::new(input);
    let text = if path.is_file() { read(path)? } else { input.to_string() };
    let points = text
        .split([';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .map(|s| configs::parse_point(&field, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::Parse)?;
    Ok(("points".to_string(), points))
}
