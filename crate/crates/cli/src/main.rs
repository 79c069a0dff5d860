use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use affnc::coxeter::CoxeterElement;
use affnc::diagram::{render_svg, AnnularDiagram, SvgOptions};
use affnc::interval;
use affnc::notation::{parse_cycles, print_signed};
use affnc::typec::{self, OrbifoldDiagram, Signing};
use affnc::verify::{self, Config, Suite};
use affnc::PeriodicPermutation;

const WINDING_ENV: &str = "AFFNC_WINDING_BOUND";

#[derive(Parser)]
#[command(name = "affnc", version, about = "Affine noncrossing partitions as periodic permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a Coxeter element and its projection table.
    Coxeter(CoxeterArgs),
    /// Query the interval below a Coxeter element.
    Interval(IntervalArgs),
    /// Run seeded verification suites.
    Verify(VerifyArgs),
    /// Write the block diagram of a member as SVG.
    Render(RenderArgs),
}

#[derive(Args, Clone)]
struct CoxeterSpec {
    /// Rank parameter: period n for type A, period 2n for type C.
    #[arg(long)]
    n: usize,
    /// Comma-separated word in the simple reflections.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    word: Option<Vec<usize>>,
    /// Comma-separated outer points (type A).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "word")]
    outer: Option<Vec<i64>>,
    /// Comma-separated signed elements, or a JSON signing (type C).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "outer")]
    signing: Option<String>,
    /// Read `--word` as a type C word in `s_0, …, s_{n-1}`.
    #[arg(long = "type", value_enum, default_value_t = Kind::A)]
    kind: Kind,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    A,
    C,
}

enum Element {
    A(CoxeterElement),
    C(Signing),
}

#[derive(Args)]
struct CoxeterArgs {
    #[command(flatten)]
    spec: CoxeterSpec,
    /// First index of the projection table.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    from: i64,
    /// Last index of the projection table.
    #[arg(long, allow_hyphen_values = true)]
    to: Option<i64>,
    /// Print the projection table as TSV instead of JSON.
    #[arg(long)]
    tsv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Verb {
    Member,
    Leq,
    Rank,
    Meet,
    Join,
    Krew,
    Covers,
}

#[derive(Args)]
struct IntervalArgs {
    #[arg(value_enum)]
    verb: Verb,
    #[command(flatten)]
    spec: CoxeterSpec,
    /// Elements in cycle notation, inline JSON, or `@file.json`.
    #[arg(allow_hyphen_values = true)]
    operands: Vec<String>,
    #[arg(long, env = WINDING_ENV, default_value_t = 2)]
    winding_bound: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// projection, lattice, kreweras, folding, factored, circfail, length or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = WINDING_ENV, default_value_t = 2)]
    winding_bound: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 20)]
    oracle_samples: usize,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    spec: CoxeterSpec,
    /// The element; defaults to the Coxeter element itself.
    #[arg(allow_hyphen_values = true)]
    element: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Suite,
}

type Outcome = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn emit(v: Value) {
    println!("{v}");
}

impl CoxeterSpec {
    fn resolve(&self) -> Result<Element, Failure> {
        if let Some(text) = &self.signing {
            return parse_signing(self.n, text).map(Element::C);
        }
        match (&self.word, &self.outer, self.kind) {
            (Some(w), None, Kind::A) => CoxeterElement::from_word(self.n, w).map(Element::A).map_err(usage),
            (Some(w), None, Kind::C) => Signing::from_word(self.n, w).map(Element::C).map_err(usage),
            (None, Some(o), Kind::A) => CoxeterElement::new(self.n, o).map(Element::A).map_err(usage),
            _ => Err(usage("give one of --word, --outer (type A) or --signing (type C)")),
        }
    }

    fn type_a(&self) -> Result<CoxeterElement, Failure> {
        match self.resolve()? {
            Element::A(c) => Ok(c),
            Element::C(_) => Err(usage("this command needs a type A Coxeter element")),
        }
    }
}

/// Either `-6,-4,1` or `{"n": 7, "signs": {"1": 1, ...}}`.
fn parse_signing(n: usize, text: &str) -> Result<Signing, Failure> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(usage)?;
        let n = v["n"].as_u64().map(|x| x as usize).unwrap_or(n);
        let signs = v["signs"].as_object().ok_or_else(|| usage("signing JSON needs a \"signs\" object"))?;
        let s: Result<Vec<i64>, Failure> = (1..n)
            .map(|i| signs.get(&i.to_string()).and_then(Value::as_i64).ok_or_else(|| usage(format!("missing sign of {i}"))))
            .collect();
        return Signing::new(n, &s?).map_err(usage);
    }
    let elems: Result<Vec<i64>, _> = text.split(',').map(|x| x.trim().parse::<i64>()).collect();
    Signing::from_elements(n, &elems.map_err(usage)?).map_err(usage)
}

/// Cycle notation, inline JSON `{"n": .., "window": [..]}`, or `@path` to such JSON.
fn parse_element(text: &str, period: usize) -> Result<PeriodicPermutation, Failure> {
    let body = match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
        None => text.to_string(),
    };
    if body.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&body).map_err(usage)?;
        let n = v["n"].as_u64().ok_or_else(|| usage("element JSON needs \"n\""))? as usize;
        let window: Option<Vec<i64>> = v["window"].as_array().map(|a| a.iter().filter_map(Value::as_i64).collect());
        let window = window.ok_or_else(|| usage("element JSON needs \"window\""))?;
        if n != period {
            return Err(usage(format!("element has period {n}, expected {period}")));
        }
        return PeriodicPermutation::new(n, window).map_err(usage);
    }
    parse_cycles(&body, period).map_err(usage)
}

fn strings(v: &[PeriodicPermutation]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

fn cmd_coxeter(args: &CoxeterArgs) -> Outcome {
    match args.spec.resolve()? {
        Element::A(c) => {
            let n = c.n() as i64;
            let to = args.to.unwrap_or(args.from + n - 1);
            if args.tsv {
                print!("{}", c.projection_table(args.from..=to));
                return Ok(());
            }
            let table: Vec<Value> = (args.from..=to)
                .map(|j| {
                    let (x, y) = c.project(j);
                    json!([j, x.to_string(), y.to_string()])
                })
                .collect();
            emit(json!({
                "type": "A",
                "n": c.n(),
                "outer": c.outer_points(),
                "inner": c.inner_points(),
                "word": c.word(),
                "cycles": c.to_permutation().to_string(),
                "projection": table,
            }));
        }
        Element::C(s) => {
            let f = s.folded();
            emit(json!({
                "type": "C",
                "n": s.n(),
                "signing": s.elements(),
                "word": s.word(),
                "cycles": print_signed(&s.coxeter()),
                "folded_outer": f.outer_points(),
            }));
        }
    }
    Ok(())
}

fn require_member(p: &PeriodicPermutation, c: &CoxeterElement) -> Outcome {
    if interval::is_member(p, c, false) {
        Ok(())
    } else {
        Err(usage(format!("{p} is not in the interval below {}", c.to_permutation())))
    }
}

fn cmd_interval(args: &IntervalArgs) -> Outcome {
    let arity = match args.verb {
        Verb::Leq | Verb::Meet | Verb::Join => 2,
        _ => 1,
    };
    if args.operands.len() != arity {
        return Err(usage(format!("expected {arity} operand(s), got {}", args.operands.len())));
    }
    if let Element::C(s) = args.spec.resolve()? {
        return interval_c(args, &s);
    }
    let c = args.spec.type_a()?;
    let ops: Vec<PeriodicPermutation> =
        args.operands.iter().map(|t| parse_element(t, c.n())).collect::<Result<_, _>>()?;
    let p = &ops[0];
    let out = match args.verb {
        Verb::Member => json!({
            "element": p.to_string(),
            "full": interval::is_member(p, &c, false),
            "restricted": interval::is_member(p, &c, true),
        }),
        Verb::Rank => {
            require_member(p, &c)?;
            let d = AnnularDiagram::decode(p, &c).map_err(usage)?;
            json!({"element": p.to_string(), "rank": d.rank(), "diagram": serde_json::from_str::<Value>(&d.to_json()).unwrap_or(Value::Null)})
        }
        Verb::Krew => {
            require_member(p, &c)?;
            json!({"element": p.to_string(), "kreweras": interval::kreweras(p, &c).to_string()})
        }
        Verb::Covers => {
            require_member(p, &c)?;
            let down = interval::covers_down(p, &c, args.winding_bound).map_err(usage)?;
            let up = interval::covers_up(p, &c, args.winding_bound).map_err(usage)?;
            json!({"element": p.to_string(), "winding_bound": args.winding_bound, "down": strings(&down), "up": strings(&up)})
        }
        Verb::Leq | Verb::Meet | Verb::Join => {
            let w = &ops[1];
            require_member(p, &c)?;
            require_member(w, &c)?;
            let (key, value) = match args.verb {
                Verb::Leq => ("leq", json!(interval::leq(p, w, &c).map_err(usage)?)),
                Verb::Meet => ("meet", json!(interval::meet(p, w, &c).map_err(usage)?.to_string())),
                _ => ("join", json!(interval::join(p, w, &c).map_err(usage)?.to_string())),
            };
            json!({"left": p.to_string(), "right": w.to_string(), key: value})
        }
    };
    emit(out);
    Ok(())
}

fn interval_c(args: &IntervalArgs, s: &Signing) -> Outcome {
    let p = parse_element(&args.operands[0], 2 * s.n())?;
    let member = typec::is_member_c(&p, s);
    let out = match args.verb {
        Verb::Member => json!({"element": print_signed(&p), "member": member}),
        Verb::Rank | Verb::Krew if !member => return Err(usage(format!("{p} is not in the interval"))),
        Verb::Rank => {
            let d = OrbifoldDiagram::decode(&p, s).map_err(usage)?;
            let blocks: Vec<Value> = d
                .blocks()
                .iter()
                .map(|b| json!({"points": b.points(s.n()), "orbifold_points": b.orbifold_points}))
                .collect();
            json!({"element": print_signed(&p), "rank": d.rank(), "blocks": blocks})
        }
        Verb::Krew => json!({"element": print_signed(&p), "kreweras": print_signed(&typec::kreweras_c(&p, s))}),
        _ => return Err(usage("type C supports member, rank and krew")),
    };
    emit(out);
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let suites = Suite::parse(&args.suite).ok_or_else(|| usage(format!("unknown suite {}", args.suite)))?;
    let cfg = Config {
        n: args.n,
        seed: args.seed,
        winding_bound: args.winding_bound,
        samples: args.samples,
        oracle_samples: args.oracle_samples,
    };
    let mut failed = 0;
    for suite in suites {
        let mut local = cfg.clone();
        if suite == Suite::Circfail {
            local.n = 4;
        }
        if suite == Suite::Folding && local.n < 3 {
            eprintln!("{suite}: skipped, needs n >= 3");
            continue;
        }
        let report = verify::run(suite, &local);
        emit(serde_json::to_value(&report).map_err(usage)?);
        let tag = if report.passed { "pass" } else { "FAIL" };
        eprintln!("{suite}: {tag} ({} checks)", report.checks);
        if let Some(ce) = &report.counterexample {
            eprintln!("  counterexample: {ce}");
        }
        failed += usize::from(!report.passed);
    }
    if failed > 0 {
        Err(Failure::Suite)
    } else {
        Ok(())
    }
}

fn cmd_render(args: &RenderArgs) -> Outcome {
    let svg = match args.spec.resolve()? {
        Element::A(c) => {
            let p = match &args.element {
                Some(t) => parse_element(t, c.n())?,
                None => c.to_permutation(),
            };
            require_member(&p, &c)?;
            render_svg(&AnnularDiagram::decode(&p, &c).map_err(usage)?, &SvgOptions::default())
        }
        Element::C(s) => {
            let p = match &args.element {
                Some(t) => parse_element(t, 2 * s.n())?,
                None => s.coxeter(),
            };
            let d = OrbifoldDiagram::decode(&p, &s).map_err(usage)?;
            render_svg(&d.unfold().map_err(usage)?, &SvgOptions::default())
        }
    };
    fs::write(&args.out, &svg).map_err(|e| usage(format!("{}: {e}", args.out.display())))?;
    emit(json!({"out": args.out.display().to_string(), "bytes": svg.len()}));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Coxeter(a) => cmd_coxeter(a),
        Command::Interval(a) => cmd_interval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Render(a) => cmd_render(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suite) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
