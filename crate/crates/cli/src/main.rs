use clap::{Args, Parser, Subcommand};
use sbx_cli::config::{FormulaName, OutputFormat};
use sbx_cli::{output, plot, verify, CliError, Config};
use sbx_core::gbessel::{gbessel, gbessel_quad};
use sbx_core::scan::{envelope_with, k_sweep, partial, EnvelopeOptions, NRange, TAIL_CUT};
use sbx_core::xsection::elastic_born;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sbx", version, about = "Multiphoton stimulated bremsstrahlung cross sections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON scenario file.
    #[arg(long)]
    config: PathBuf,
    /// Override the field strength with this K (replaces the intensity).
    #[arg(long = "K")]
    k: Option<f64>,
    #[arg(long, value_enum)]
    formula: Option<FormulaName>,
    #[arg(long, allow_negative_numbers = true)]
    deflection_mrad: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output file; defaults to the config's output_path, else stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// One partial cross section.
    Partial {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        n: i32,
    },
    /// Partial cross sections over a range of photon numbers.
    Envelope {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        n_min: Option<i32>,
        #[arg(long, allow_negative_numbers = true)]
        n_max: Option<i32>,
        #[arg(long)]
        tail_cut: Option<f64>,
    },
    /// Sum over all photon numbers.
    Total {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        tail_cut: Option<f64>,
    },
    /// Totals over a grid of K values.
    Ksweep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated ascending K values in (0, 1.5].
        #[arg(long, value_delimiter = ',')]
        k_grid: Option<Vec<f64>>,
    },
    /// Field-free screened Mott-Born value.
    Elastic {
        #[command(flatten)]
        common: Common,
    },
    /// Generalized Bessel function from the series and from quadrature.
    Gbessel {
        #[arg(long, allow_negative_numbers = true)]
        n: i32,
        #[arg(long, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        delta: f64,
    },
    /// Spinor-sum oracle against the closed form on a random grid.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render an envelope or K-sweep CSV to SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value = "")]
        title: String,
    },
}

struct Loaded {
    config: Config,
    base: PathBuf,
    format: OutputFormat,
    output: Option<PathBuf>,
}

impl Common {
    fn load(&self) -> Result<Loaded, CliError> {
        let mut config = Config::load(&self.config)?;
        if let Some(k) = self.k {
            config.set_k(k);
        }
        if let Some(f) = self.formula {
            config.run.formula = f;
        }
        if let Some(d) = self.deflection_mrad {
            config.geometry.deflection_mrad = d;
        }
        if let Some(f) = self.format {
            config.run.output_format = f;
        }
        if let Some(o) = &self.output {
            config.run.output_path = Some(o.clone());
        }
        config.validate()?;
        let base = self.config.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(Loaded { format: config.run.output_format, output: config.run.output_path.clone(), config, base })
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn default_k_grid() -> Vec<f64> {
    (1..=20).map(|i| i as f64 * 0.05).collect()
}

fn options(config: &Config, tail_cut: Option<f64>) -> EnvelopeOptions {
    EnvelopeOptions { tail_cut: tail_cut.or(config.run.tail_cut).unwrap_or(TAIL_CUT), ..EnvelopeOptions::default() }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Partial { common, n } => {
            let l = common.load()?;
            let s = l.config.scenario(&l.base)?;
            let x = partial(&s, n)?;
            let text = match l.format {
                OutputFormat::Csv => output::partials_csv(&l.config, &[x]),
                OutputFormat::Json => output::partial_json_doc(&l.config, &x),
            };
            emit(&text, l.output.as_deref())
        }
        Command::Envelope { common, n_min, n_max, tail_cut } => {
            let mut l = common.load()?;
            if n_min.is_some() || n_max.is_some() {
                l.config.run.n_min = n_min.or(l.config.run.n_min);
                l.config.run.n_max = n_max.or(l.config.run.n_max);
            }
            if tail_cut.is_some() {
                l.config.run.tail_cut = tail_cut;
            }
            l.config.validate()?;
            let s = l.config.scenario(&l.base)?;
            let env = envelope_with(&s, l.config.n_range(), options(&l.config, None))?;
            let text = match l.format {
                OutputFormat::Csv => output::partials_csv(&l.config, &env.entries),
                OutputFormat::Json => output::envelope_json(&l.config, &env),
            };
            emit(&text, l.output.as_deref())
        }
        Command::Total { common, tail_cut } => {
            let mut l = common.load()?;
            if tail_cut.is_some() {
                l.config.run.tail_cut = tail_cut;
            }
            l.config.validate()?;
            let s = l.config.scenario(&l.base)?;
            let total = envelope_with(&s, NRange::Auto, options(&l.config, None))?.total;
            let text = match l.format {
                OutputFormat::Csv => format!("{}\n", output::num(total)),
                OutputFormat::Json => output::scalar_json(&l.config, "total_au", total),
            };
            emit(&text, l.output.as_deref())
        }
        Command::Ksweep { common, k_grid } => {
            let mut l = common.load()?;
            if k_grid.is_some() {
                l.config.run.k_grid = k_grid;
            }
            let grid = l.config.run.k_grid.clone().unwrap_or_else(default_k_grid);
            let s = l.config.scenario(&l.base)?;
            let points = k_sweep(&s, &grid)?;
            for p in &points {
                if let Err(e) = &p.total {
                    eprintln!("sbx: K = {}: {e}", output::num(p.k));
                }
            }
            let text = match l.format {
                OutputFormat::Csv => output::ksweep_csv(&l.config, &points),
                OutputFormat::Json => output::ksweep_json(&l.config, &points),
            };
            emit(&text, l.output.as_deref())
        }
        Command::Elastic { common } => {
            let l = common.load()?;
            let s = l.config.scenario(&l.base)?;
            let value = elastic_born(&s)?;
            let text = match l.format {
                OutputFormat::Csv => format!("{}\n", output::num(value)),
                OutputFormat::Json => output::scalar_json(&l.config, "elastic_au", value),
            };
            emit(&text, l.output.as_deref())
        }
        Command::Gbessel { n, u, v, delta } => {
            let series = gbessel(n, u, v, delta)?;
            let quad = gbessel_quad(n, u, v, delta)?;
            let text = format!(
                "n,u,v,delta,series_re,series_im,quad_re,quad_im,abs_diff\n{n},{},{},{},{},{},{},{},{}\n",
                output::num(u),
                output::num(v),
                output::num(delta),
                output::num(series.re),
                output::num(series.im),
                output::num(quad.re),
                output::num(quad.im),
                output::num((series - quad).norm())
            );
            emit(&text, None)
        }
        Command::Verify { seed, count, output: path } => {
            let report = verify::run(seed, count)?;
            emit(&report.render(), path.as_deref())?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Verify(format!("max relative deviation {:e}", report.max_deviation())))
            }
        }
        Command::Plot { input, output: path, title } => {
            let text = std::fs::read_to_string(&input).map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?;
            let series = plot::parse_csv(&text)?;
            emit(&plot::render(&series, &title), Some(&path))
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SBX_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| CliError::Config(format!("SBX_THREADS = `{raw}` is not a count")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sbx: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
