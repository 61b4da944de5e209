//! `polyomino`: counting, sampling, enumeration and verification from the
//! command line. Flag errors exit with status 2, failed verifications and
//! runtime errors with status 1.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use convex_polyominoes::bijection::{untangle_marks, StepFunctionPair};
use convex_polyominoes::counting::{binomial_pair_sum, count, count_perimeter, moment};
use convex_polyominoes::oracle::{
    brute_moments, enumerate_polyominoes, enumerate_swalks, Budget,
};
use convex_polyominoes::polyomino::RenderFormat;
use convex_polyominoes::sampler::{
    efficiency, perimeter_efficiency, ratio_to_f64, sample_convex_observed, sample_path_pair,
    sample_perimeter_observed, SeededRng,
};
use convex_polyominoes::swalk::{decode, to_polyomino};
use convex_polyominoes::{bijection, CountClass, ConvexPolyomino, SWalkCode};

#[derive(Parser)]
#[command(name = "polyomino", version, about = "Exact counting and uniform sampling of convex polyominoes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form count of a class.
    Count {
        #[arg(long, value_parser = parse_class)]
        class: CountClass,
        #[command(flatten)]
        size: Size,
    },
    /// Print Σ|U∩V|^order over all pairs of paths (0,0) → (width,height).
    Moments {
        /// 1 or 2.
        #[arg(long, required_unless_present = "binomial_pair_sum")]
        order: Option<u32>,
        #[arg(long)]
        width: u64,
        #[arg(long)]
        height: u64,
        /// Print Σ C(|U∩V|+1, 2) instead.
        #[arg(long, conflicts_with = "order")]
        binomial_pair_sum: bool,
    },
    /// Draw uniform random polyominoes.
    Sample(SampleArgs),
    /// Enumerate a class by brute force.
    Enumerate {
        #[arg(long, value_parser = parse_class)]
        class: CountClass,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        /// Print every polyomino as a JSON line instead of the count.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare every closed form with brute-force enumeration.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_semiperimeter: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Exact and empirical acceptance rate of the rejection samplers.
    Bench {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Draw a polyomino given as JSON or as an S-walk code.
    Render {
        /// JSON file with {"width", "height", "columns"}; `-` reads stdin.
        #[arg(long, conflicts_with = "code", required_unless_present = "code")]
        input: Option<PathBuf>,
        /// S-walk code such as "w=2 h=2 a=1 VHH".
        #[arg(long)]
        code: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
}

#[derive(Args)]
struct Size {
    #[arg(long, requires = "height", conflicts_with = "perimeter")]
    width: Option<u64>,
    #[arg(long, requires = "width")]
    height: Option<u64>,
    /// Full perimeter 2s; must be even.
    #[arg(long, required_unless_present = "width")]
    perimeter: Option<u64>,
}

#[derive(Clone, Copy)]
enum Shape {
    Box(u64, u64),
    SemiPerimeter(u64),
}

impl Size {
    fn shape(&self) -> Shape {
        match (self.width, self.height, self.perimeter) {
            (Some(w), Some(h), _) => Shape::Box(w, h),
            (_, _, Some(p)) if p % 2 == 0 => Shape::SemiPerimeter(p / 2),
            (_, _, Some(p)) => usage(ErrorKind::InvalidValue, &format!("--perimeter must be even, got {p}")),
            _ => usage(ErrorKind::MissingRequiredArgument, "give --width and --height, or --perimeter"),
        }
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest semi-perimeter brute-force enumeration may attempt.
    #[arg(long, env = "POLYOMINO_BUDGET", default_value_t = Budget::DEFAULT_SEMI_PERIMETER)]
    budget: usize,
}

impl BudgetArgs {
    fn get(&self) -> Budget {
        Budget::with_semi_perimeter(self.budget)
    }
}

#[derive(Args)]
struct SampleArgs {
    /// convex or directed.
    #[arg(long, value_parser = parse_class, default_value = "convex")]
    class: CountClass,
    #[command(flatten)]
    size: Size,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory for `--format svg`, one file per sample.
    #[arg(long, required_if_eq("format", "svg"))]
    out_dir: Option<PathBuf>,
    /// Worker threads; worker k draws samples k, k+jobs, ... from stream k.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Report every proposal (convex) or untangling mark (directed) on stderr.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

fn parse_class(s: &str) -> Result<CountClass, String> {
    s.parse().map_err(|e: convex_polyominoes::counting::CountError| e.to_string())
}

fn usage(kind: ErrorKind, message: &str) -> ! {
    Cli::command().error(kind, message).exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match command {
        Command::Count { class, size } => {
            let n = match size.shape() {
                Shape::Box(w, h) => count(class, w, h),
                Shape::SemiPerimeter(s) => count_perimeter(class, s),
            }?;
            writeln!(out, "{n}")?;
        }
        Command::Moments { order, width, height, binomial_pair_sum: pairs } => {
            let n = match order {
                Some(order) if !pairs => moment(order, width, height)?,
                _ => binomial_pair_sum(width, height),
            };
            writeln!(out, "{n}")?;
        }
        Command::Sample(args) => sample(args, &mut out)?,
        Command::Enumerate { class, width, height, list, format, budget } => {
            enumerate(class, width, height, list, format, &budget.get(), &mut out)?
        }
        Command::Verify { max_semiperimeter, budget } => {
            if !verify(max_semiperimeter, &budget.get(), &mut out)? {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Bench { size, trials, seed, format } => {
            let mut rng = SeededRng::new(seed);
            let stats = match size.shape() {
                Shape::Box(w, h) => efficiency(w as usize, h as usize, trials, &mut rng),
                Shape::SemiPerimeter(s) => perimeter_efficiency(s as usize, trials, &mut rng),
            }?;
            match format {
                TextOrJson::Json => writeln!(out, "{}", serde_json::to_string(&stats)?)?,
                TextOrJson::Text => {
                    writeln!(out, "exact      {} = {:.6}", stats.exact, ratio_to_f64(&stats.exact))?;
                    match stats.empirical() {
                        Some(e) => writeln!(out, "empirical  {}/{} = {e:.6}", stats.accepted, stats.trials)?,
                        None => writeln!(out, "empirical  no trials")?,
                    }
                }
            }
        }
        Command::Render { input, code, format } => {
            let p = match (input, code) {
                (Some(path), _) => read_polyomino(&path)?,
                (None, Some(code)) => {
                    let code: SWalkCode = code.parse()?;
                    to_polyomino(&decode(&code)?)?
                }
                (None, None) => unreachable!("clap requires one of --input and --code"),
            };
            let rendered = match format {
                Format::Ascii => p.render(RenderFormat::Ascii),
                Format::Svg => p.render(RenderFormat::Svg),
                Format::Json => serde_json::to_string(&p)?,
            };
            writeln!(out, "{}", rendered.trim_end())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_polyomino(path: &PathBuf) -> Result<ConvexPolyomino> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).context("parsing polyomino JSON")
}

#[derive(Serialize)]
struct SampleLine {
    index: usize,
    class: CountClass,
    seed: u64,
    stream: u64,
    attempts: u64,
    polyomino: ConvexPolyomino,
}

struct Drawn {
    line: SampleLine,
    trace: String,
}

fn sample(args: SampleArgs, out: &mut impl Write) -> Result<()> {
    let shape = args.size.shape();
    match (args.class, &shape) {
        (CountClass::Convex, _) | (CountClass::Directed, Shape::Box(..)) => {}
        (CountClass::Directed, Shape::SemiPerimeter(_)) => {
            usage(ErrorKind::ArgumentConflict, "directed sampling needs --width and --height")
        }
        (other, _) => usage(ErrorKind::InvalidValue, &format!("cannot sample class `{other}`; use convex or directed")),
    }
    if let Shape::SemiPerimeter(s) = shape {
        if s < 4 {
            usage(ErrorKind::InvalidValue, "perimeter sampling needs --perimeter at least 8");
        }
    }
    if let Shape::Box(0, _) | Shape::Box(_, 0) = shape {
        usage(ErrorKind::InvalidValue, "--width and --height must be at least 1");
    }
    let jobs = args.jobs as usize;
    let workers: Vec<Result<Vec<Drawn>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|k| {
                let (args, shape) = (&args, &shape);
                scope.spawn(move || {
                    let mut rng = SeededRng::with_stream(args.seed, k as u64);
                    (k..args.n).step_by(jobs).map(|i| draw(i, args, shape, &mut rng)).collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling thread panicked")).collect()
    });
    let mut drawn: Vec<Drawn> = Vec::with_capacity(args.n);
    for w in workers {
        drawn.extend(w?);
    }
    drawn.sort_by_key(|d| d.line.index);
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut err = io::stderr().lock();
    for d in drawn {
        err.write_all(d.trace.as_bytes())?;
        let SampleLine { index, attempts, ref polyomino, .. } = d.line;
        match args.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(&d.line)?)?,
            Format::Ascii => writeln!(out, "# sample {index} attempts={attempts}\n{}\n", polyomino.render_ascii())?,
            Format::Svg => {
                let dir = args.out_dir.as_ref().expect("clap requires --out-dir with svg");
                let path = dir.join(format!("sample-{index:04}.svg"));
                std::fs::write(&path, polyomino.render_svg()).with_context(|| format!("writing {}", path.display()))?;
                writeln!(out, "{}", path.display())?;
            }
        }
    }
    Ok(())
}

fn draw(index: usize, args: &SampleArgs, shape: &Shape, rng: &mut SeededRng) -> Result<Drawn> {
    let mut trace = String::new();
    let mut observe = |code: &SWalkCode, accepted: bool| {
        if args.trace {
            let verdict = if accepted { "accepted" } else { "rejected" };
            let _ = writeln!(trace, "sample {index}: proposal {code} {verdict}");
        }
    };
    let (polyomino, attempts) = match (args.class, *shape) {
        (CountClass::Directed, Shape::Box(w, h)) => {
            let (w, h) = (w as usize, h as usize);
            let (u, v) = sample_path_pair(w, h, rng)?;
            if args.trace {
                let _ = writeln!(trace, "sample {index}: paths {u} {v}");
                for z in untangle_marks(&StepFunctionPair::from_paths(&u, &v)?) {
                    let _ = writeln!(trace, "sample {index}: mark z={z}");
                }
            }
            (bijection::pair_to_directed(&u, &v, w, h)?, 1)
        }
        (_, Shape::Box(w, h)) => {
            let r = sample_convex_observed(w as usize, h as usize, rng, &mut observe)?;
            (r.polyomino, r.attempts)
        }
        (_, Shape::SemiPerimeter(s)) => {
            let r = sample_perimeter_observed(s as usize, rng, &mut observe)?;
            (r.polyomino, r.attempts)
        }
    };
    let line = SampleLine { index, class: args.class, seed: rng.seed(), stream: rng.stream(), attempts, polyomino };
    Ok(Drawn { line, trace })
}

fn enumerate(
    class: CountClass,
    w: usize,
    h: usize,
    list: bool,
    format: TextOrJson,
    budget: &Budget,
    out: &mut impl Write,
) -> Result<()> {
    match class {
        CountClass::Convex | CountClass::Directed | CountClass::Parallelogram => {
            let report = enumerate_polyominoes(class, w, h, budget, list)?;
            if let Some(objects) = &report.objects {
                for p in objects {
                    writeln!(out, "{}", serde_json::to_string(p)?)?;
                }
            } else if format == TextOrJson::Json {
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            } else {
                writeln!(out, "{}", report.count)?;
            }
        }
        CountClass::SWalk | CountClass::SelfIntersectingSWalk => {
            let tally = enumerate_swalks(w, h, budget, list)?;
            if let Some(codes) = &tally.codes {
                for c in codes {
                    writeln!(out, "{c}")?;
                }
            } else if format == TextOrJson::Json {
                writeln!(out, "{}", serde_json::to_string(&tally)?)?;
            } else if class == CountClass::SWalk {
                writeln!(out, "{}", tally.total)?;
            } else {
                writeln!(out, "{}", tally.rising)?;
            }
        }
        CountClass::WeakDirectedSWalk => bail!("no brute-force enumeration for class `{class}`"),
    }
    Ok(())
}

fn verify(max_s: usize, budget: &Budget, out: &mut impl Write) -> Result<bool> {
    let mut all_match = true;
    let mut row = |out: &mut dyn Write, class: &str, w: usize, h: usize, formula: String, oracle: String, ok: bool| {
        all_match &= ok;
        writeln!(out, "{class:<18} {w:>3} {h:>3} {formula:>14} {oracle:>14} {}", if ok { "ok" } else { "MISMATCH" })
    };
    writeln!(out, "{:<18} {:>3} {:>3} {:>14} {:>14} match", "class", "w", "h", "formula", "oracle")?;
    for s in 2..=max_s {
        for w in 1..s {
            let h = s - w;
            for class in [CountClass::Convex, CountClass::Directed, CountClass::Parallelogram] {
                let formula = count(class, w as u64, h as u64)?;
                let oracle = enumerate_polyominoes(class, w, h, budget, false)?.count;
                row(out, class.name(), w, h, formula.to_string(), oracle.to_string(), formula == oracle)?;
            }
            let tally = enumerate_swalks(w, h, budget, false)?;
            let formula = count(CountClass::SWalk, w as u64, h as u64)?;
            row(out, "swalk", w, h, formula.to_string(), tally.total.to_string(), formula == tally.total.into())?;
            let formula = count(CountClass::SelfIntersectingSWalk, w as u64, h as u64)?;
            let ok = formula == tally.rising.into() && formula == tally.falling.into() && tally.mixed == 0;
            row(out, "self-intersecting", w, h, formula.to_string(), tally.rising.to_string(), ok)?;
        }
    }
    for s in 2..=max_s {
        for w in 1..s {
            let h = s - w;
            for order in [1, 2] {
                let formula = moment(order, w as u64, h as u64)?;
                let oracle = brute_moments(w, h, order, budget)?;
                row(out, &format!("moment{order}"), w, h, formula.to_string(), oracle.to_string(), formula == oracle)?;
            }
        }
    }
    writeln!(out, "{}", if all_match { "all match" } else { "MISMATCH found" })?;
    Ok(all_match)
}
