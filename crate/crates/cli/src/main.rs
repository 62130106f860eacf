use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use omega_core::colim::{self, check_cartesian, check_cocartesian, colim_zigzag};
use omega_core::gray::{self, Side};
use omega_core::theta::{self, classify, enumerate_hom, factor_alg_glob, factor_reedy, lambda_gs, parse_gs};
use omega_core::verify::{self, CheckReport, SuiteConfig};
use omega_core::{io, twodim, BasedADC, Error, ThetaMorphism, Verdict};

#[derive(Parser)]
#[command(name = "omegac", version, about = "Exact computations with strict ω-categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a complex file is a valid based complex.
    Validate(Input),
    /// Loop-freeness, unitarity and the strong Steiner condition.
    Predicates {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Gray tensor product of two complexes.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    Cylinder(Unary),
    Cone(Unary),
    Cocone(Unary),
    Suspend(Unary),
    Wedge {
        #[command(flatten)]
        op: Unary,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// The whiskering map from the suspension into a wedge.
    Whisker {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Enumerate cells of a given dimension.
    Cells {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
    /// Morphisms of globular sums.
    Theta {
        #[command(subcommand)]
        cmd: ThetaCmd,
    },
    /// Decompose a 2-cell into whiskered generators.
    Decompose {
        #[arg(long)]
        adc: PathBuf,
        #[arg(long)]
        cell: PathBuf,
        /// Index into the list of orderings.
        #[arg(long, default_value_t = 0)]
        ordering: usize,
        #[arg(long)]
        json: bool,
    },
    /// Colimit of a zigzag.
    Colim {
        #[arg(long)]
        zigzag: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Isomorphisms between two complexes.
    Isos {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        json: bool,
    },
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum ThetaCmd {
    Hom {
        a: String,
        b: String,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    Factor {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: FactorMode,
    },
    Classify {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    Square {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: SquareMode,
        #[arg(long, default_value_t = verify::SQUARE_BOUND)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
    Cylinder(GsCheck),
    Star(GsCheck),
    Squares(GsCheck),
    Globe {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    Theta {
        #[command(flatten)]
        gs: GsCheck,
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run the verification battery.
    Suite {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Add wall times to the reports.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
struct Input {
    /// A complex file.
    file: Option<PathBuf>,
    /// A globular sum, e.g. `[[*],*]`.
    #[arg(long)]
    gs: Option<String>,
}

#[derive(Args)]
struct Output {
    #[arg(short = 'o')]
    out: Option<PathBuf>,
    /// Print a generator table instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct Unary {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct GsCheck {
    #[arg(long)]
    gs: String,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FactorMode {
    Alg,
    Reedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum SquareMode {
    Co,
    Cart,
}

enum Failure {
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Invalid(String),
    /// Exit 3.
    Unsupported(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoBasisFound { .. } | Error::TorsionInColimit { .. } | Error::BudgetExceeded(_) => {
                Failure::Unsupported(e.to_string())
            }
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Res = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("invalid input: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Unsupported(m)) => {
            eprintln!("unsupported: {m}");
            ExitCode::from(3)
        }
    }
}

fn load(input: &Input) -> Result<BasedADC, Failure> {
    match (&input.file, &input.gs) {
        (Some(p), None) => Ok(io::read_adc(p)?),
        (None, Some(g)) => Ok(lambda_gs(&parse_gs(g)?)),
        _ => Err(Failure::Invalid("give exactly one of a file or --gs".into())),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Res {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn pretty_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn table(k: &BasedADC) -> String {
    let mut lines = Vec::new();
    for b in k.basis() {
        let line = match omega_core::atom(k, &b.id) {
            Ok(a) if b.deg > 0 => {
                let (s, t) = (a.row(b.deg - 1, omega_core::Sign::Minus), a.row(b.deg - 1, omega_core::Sign::Plus));
                format!("{:<3} {:<16} {s} → {t}", b.deg, b.id)
            }
            _ => format!("{:<3} {:<16} e = {}", b.deg, b.id, k.aug_of(&b.id).unwrap_or(0)),
        };
        lines.push(line);
    }
    lines.join("\n")
}

fn emit_adc(k: &BasedADC, out: &Output) -> Res {
    let text = if out.pretty { table(k) } else { pretty_json(&io::adc_to_value(k)) };
    emit(&text, out.out.as_deref())
}

fn verdict_text(v: &Verdict) -> (bool, Value) {
    match v {
        Verdict::Holds => (true, Value::Null),
        Verdict::Cycle(c) => (false, json!(c)),
        Verdict::Witness(w) => (false, json!(w)),
    }
}

fn reports(rs: &[CheckReport], json: bool) -> Res {
    for r in rs {
        if json {
            println!("{}", r.to_json());
        } else {
            println!("{r}");
        }
    }
    if !json {
        println!("{}", verify::summary(rs));
    }
    match verify::exit_code(rs) {
        0 => Ok(()),
        1 => Err(Failure::Check(format!("{} failed", rs.iter().filter(|r| r.outcome == verify::Outcome::Fail).count()))),
        _ => Err(Failure::Unsupported("a check exceeded a size cap".into())),
    }
}

fn read_theta(path: &Path) -> Result<ThetaMorphism, Failure> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?).map_err(|e| Failure::Invalid(e.to_string()))?;
    Ok(ThetaMorphism::from_json(&v)?)
}

fn run(cmd: Cmd) -> Res {
    match cmd {
        Cmd::Validate(input) => {
            let k = load(&input)?;
            println!("ok: {} generators, degree counts {:?}", k.len(), k.degree_counts());
            Ok(())
        }
        Cmd::Predicates { input, json } => {
            let k = load(&input)?;
            let (lf, lw) = verdict_text(&omega_core::is_loopfree(&k));
            let (un, uw) = verdict_text(&omega_core::is_unitary(&k));
            let ss = omega_core::is_strong_steiner(&k);
            if json {
                println!(
                    "{}",
                    json!({"loop_free": lf, "loop_witness": lw, "unitary": un, "unitary_witness": uw, "strong_steiner": ss})
                );
            } else {
                println!("loop-free:      {lf}{}", if lw.is_null() { String::new() } else { format!(" ({lw})") });
                println!("unitary:        {un}{}", if uw.is_null() { String::new() } else { format!(" ({uw})") });
                println!("strong Steiner: {ss}");
            }
            Ok(())
        }
        Cmd::Tensor { left, right, out } => {
            let k = gray::tensor(&io::read_adc(&left)?, &io::read_adc(&right)?);
            emit_adc(&k, &out)
        }
        Cmd::Cylinder(u) => emit_adc(&gray::cylinder(&load(&u.input)?), &u.out),
        Cmd::Cone(u) => emit_adc(&gray::cone(&load(&u.input)?).complex, &u.out),
        Cmd::Cocone(u) => emit_adc(&gray::cocone(&load(&u.input)?).complex, &u.out),
        Cmd::Suspend(u) => emit_adc(&gray::suspend(&load(&u.input)?).complex, &u.out),
        Cmd::Wedge { op, side } => emit_adc(&gray::wedge(&load(&op.input)?, side.into()).complex, &op.out),
        Cmd::Whisker { input, side, out } => {
            let f = gray::whisker(&load(&input)?, side.into());
            emit(&pretty_json(&io::morphism_to_value(&f)), out.as_deref())
        }
        Cmd::Cells { input, n, bound, json } => {
            let k = load(&input)?;
            let cells = omega_core::omega::enumerate_cells(&k, n, bound);
            if json {
                println!("{}", Value::Array(cells.iter().map(io::cell_to_value).collect()));
            } else {
                for c in &cells {
                    println!("{c}");
                }
                println!("{} cells", cells.len());
            }
            Ok(())
        }
        Cmd::Theta { cmd } => theta_cmd(cmd),
        Cmd::Decompose { adc, cell, ordering, json } => {
            let k = io::read_adc(&adc)?;
            let v = io::read_cell(&cell)?;
            let all = twodim::orderings(&k, &v)?;
            let ord = all
                .get(ordering)
                .ok_or_else(|| Failure::Invalid(format!("ordering {ordering} out of range ({} orderings)", all.len())))?;
            let blocks = twodim::decompose(&k, &v, ord)?;
            let recomposed = blocks.is_empty() || twodim::recompose(&blocks)? == v;
            if json {
                println!(
                    "{}",
                    json!({
                        "ordering": ord,
                        "blocks": blocks.iter().map(io::cell_to_value).collect::<Vec<_>>(),
                        "recomposes": recomposed,
                    })
                );
            } else {
                println!("ordering: {}", ord.join(", "));
                for (g, b) in twodim::block_generators(&blocks).iter().zip(&blocks) {
                    println!("{g}: {b}");
                }
                println!("recomposes: {recomposed}");
            }
            if recomposed {
                Ok(())
            } else {
                Err(Failure::Check("blocks do not recompose".into()))
            }
        }
        Cmd::Colim { zigzag, out } => {
            let z = io::read_zigzag(&zigzag)?;
            let k = colim_zigzag(&z)?;
            emit(&pretty_json(&io::adc_to_value(&k)), out.as_deref())
        }
        Cmd::Isos { left, right, json } => {
            let fs = colim::isos(&io::read_adc(&left)?, &io::read_adc(&right)?)?;
            if json {
                println!("{}", Value::Array(fs.iter().map(|f| json!(f.map_table())).collect()));
            } else {
                for f in &fs {
                    let pairs: Vec<String> = f.table().iter().map(|(a, b)| format!("{a} ↦ {b}")).collect();
                    println!("{}", pairs.join(", "));
                }
                println!("{} isomorphisms", fs.len());
            }
            Ok(())
        }
        Cmd::Check { cmd } => check_cmd(cmd),
        Cmd::Verify { cmd: VerifyCmd::Suite { config, json, timings } } => {
            let cfg = match config {
                Some(p) => SuiteConfig::from_json(&std::fs::read_to_string(&p)?)?,
                None => SuiteConfig::standard(),
            };
            let rs = if timings {
                verify::run_suite_timed(&cfg)
            } else {
                verify::run_suite(&cfg)
            };
            reports(&rs, json)
        }
    }
}

fn theta_cmd(cmd: ThetaCmd) -> Res {
    match cmd {
        ThetaCmd::Hom { a, b, count, json } => {
            let hs = enumerate_hom(&parse_gs(&a)?, &parse_gs(&b)?);
            if count {
                println!("{}", hs.len());
            } else if json {
                println!("{}", Value::Array(hs.iter().map(ThetaMorphism::to_json).collect()));
            } else {
                for h in &hs {
                    println!("{h}");
                }
            }
            Ok(())
        }
        ThetaCmd::Factor { file, mode } => {
            let f = read_theta(&file)?;
            let (first, second, names) = match mode {
                FactorMode::Alg => {
                    let (a, g) = factor_alg_glob(&f);
                    (a, g, ["algebraic", "globular"])
                }
                FactorMode::Reedy => {
                    let (d, m) = factor_reedy(&f);
                    (d, m, ["degenerate", "mono"])
                }
            };
            println!("{}", pretty_json(&json!({ names[0]: first.to_json(), names[1]: second.to_json() })));
            if theta::compose_tm(&second, &first)? != f {
                return Err(Failure::Check("factors do not recompose".into()));
            }
            Ok(())
        }
        ThetaCmd::Classify { file } => {
            let fl = classify(&read_theta(&file)?);
            println!(
                "{}",
                json!({
                    "globular": fl.globular,
                    "degenerate": fl.degenerate,
                    "mono": fl.mono,
                    "algebraic": fl.algebraic,
                    "conduche": fl.conduche,
                })
            );
            Ok(())
        }
    }
}

fn check_cmd(cmd: CheckCmd) -> Res {
    let gs = |s: &str| parse_gs(s).map_err(Failure::from);
    match cmd {
        CheckCmd::Square { file, mode, bound, json } => {
            let sq = io::read_square(&file)?;
            let (name, r) = match mode {
                SquareMode::Co => ("cocartesian", check_cocartesian(&sq)),
                SquareMode::Cart => ("cartesian", check_cartesian(&sq, bound)),
            };
            if json {
                println!("{}", json!({ "property": name, "holds": r.holds(), "witness": r.failure }));
            } else {
                println!("{name}: {}", r.holds());
                if let Some(w) = &r.failure {
                    println!("{w}");
                }
            }
            if r.holds() {
                Ok(())
            } else {
                Err(Failure::Check(format!("square is not {name}")))
            }
        }
        CheckCmd::Cylinder(c) => reports(&[verify::check_cylinder_formula(&gs(&c.gs)?)], c.json),
        CheckCmd::Star(c) => reports(&[verify::check_star_formulas(&gs(&c.gs)?)], c.json),
        CheckCmd::Squares(c) => reports(&[verify::check_squares(&gs(&c.gs)?)], c.json),
        CheckCmd::Globe { n, json } => reports(&[verify::check_globe_cylinder(n)], json),
        CheckCmd::Theta { gs: c, n } => reports(&[verify::check_theta_counts(&gs(&c.gs)?, n)], c.json),
    }
}
