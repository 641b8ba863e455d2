use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use ncgeom::algebra::{DimensionVector, Quiver};
use ncgeom::dder::{is_bisymplectic, BisymplecticReport, Verdict};
use ncgeom::forms::{canonical_omega, dr_project};
use ncgeom::rep::{invariance_check, kr_verify, rep_setup, trace_fn, KrOptions, RepSetup};
use ncgeom::syntax::{parse_expr, parse_quiver, Parsed};
use ncgeom::{fmt_rational, Rational};
use serde_json::json;

const EXIT_NO: u8 = 1;
const EXIT_UNDETERMINED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 66;

/// Noncommutative differential geometry on quiver path algebras.
#[derive(Parser)]
#[command(name = "ncgeom", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled evaluation points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the double quiver.
    Double { quiver: PathBuf },
    /// Decide whether a 2-form is bi-symplectic.
    Bisymp {
        quiver: PathBuf,
        /// 2-form, e.g. "d(x)*d(x~)".
        #[arg(long)]
        form: String,
    },
    /// List the coordinates of the representation space.
    Rep {
        quiver: PathBuf,
        #[command(flatten)]
        dim: Dim,
    },
    /// Trace polynomial of an algebra element.
    Trace {
        quiver: PathBuf,
        #[command(flatten)]
        dim: Dim,
        #[arg(long)]
        elem: String,
    },
    /// Check that a 2-form induces a symplectic form on the representation space.
    Kr {
        quiver: PathBuf,
        #[command(flatten)]
        dim: Dim,
        #[arg(long, conflicts_with = "canonical", required_unless_present = "canonical")]
        form: Option<String>,
        /// Use the canonical form Σ da·da* of a double quiver.
        #[arg(long)]
        canonical: bool,
        /// Evaluation point for non-constant forms, comma separated rationals.
        #[arg(long, value_delimiter = ',')]
        point: Option<Vec<String>>,
    },
}

#[derive(Args)]
struct Dim {
    /// Dimension vector in vertex order, e.g. 2,3.
    #[arg(long, value_delimiter = ',', required = true)]
    dim: Vec<usize>,
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Data(String),
}

type Outcome = Result<u8, Failure>;

fn data(e: impl ToString) -> Failure {
    Failure::Data(e.to_string())
}

fn load(path: &Path) -> Result<Arc<Quiver>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_quiver(&text)
        .map(Arc::new)
        .map_err(|e| Failure::Data(format!("{}:{e}", path.display())))
}

fn setup(q: &Arc<Quiver>, dim: &Dim) -> Result<RepSetup, Failure> {
    let v = DimensionVector::new(q, dim.dim.clone()).map_err(data)?;
    rep_setup(q, v).map_err(data)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Yes => 0,
        Verdict::No => EXIT_NO,
        Verdict::Undetermined => EXIT_UNDETERMINED,
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn double(cli: &Cli, path: &Path) -> Outcome {
    let q = load(path)?;
    let q = if q.is_double() {
        q
    } else {
        Arc::new(ncgeom::algebra::double_quiver(&q).map_err(data)?)
    };
    if cli.json {
        let arrows: Vec<_> = q
            .arrows()
            .iter()
            .map(|a| json!({"name": a.name, "tail": q.vertices()[a.tail], "head": q.vertices()[a.head]}))
            .collect();
        let star: Vec<_> = (0..q.num_original_arrows())
            .map(|a| json!([q.arrow(a).name, q.arrow(q.star_of(a).expect("double")).name]))
            .collect();
        print_json(&json!({"vertices": q.vertices(), "arrows": arrows, "star": star}));
    } else {
        print!("{q}");
        for a in q.arrows() {
            println!("# {}: {} -> {}", a.name, q.vertices()[a.tail], q.vertices()[a.head]);
        }
    }
    Ok(0)
}

fn print_certificate(r: &BisymplecticReport) {
    println!("closed: {}", if r.closed { "yes" } else { "no" });
    for s in &r.sectors {
        println!("sector ({}, {}): rows [{}], columns [{}]", s.sector.0, s.sector.1, s.rows.join(", "), s.cols.join(", "));
        for row in &s.matrix {
            let cells: Vec<String> = row.iter().map(fmt_rational).collect();
            println!("  [{}]", cells.join(", "));
        }
        match &s.determinant {
            Some(d) => println!("  determinant {}", fmt_rational(d)),
            None => println!("  not square"),
        }
    }
    println!("reason: {}", r.reason);
}

fn bisymp(cli: &Cli, path: &Path, form: &str) -> Outcome {
    let q = load(path)?;
    let u = match parse_expr(form, &q).map_err(data)? {
        Parsed::Form(u) => u,
        Parsed::Element(_) => return Err(Failure::Data("--form must be a 2-form, got an algebra element".into())),
    };
    let omega = dr_project(&u).map_err(data)?;
    if omega.degree() != 2 {
        return Err(Failure::Data(format!("--form must be a 2-form, got degree {}", omega.degree())));
    }
    let r = is_bisymplectic(&omega);
    if cli.json {
        print_json(&json!({"form": omega.to_string(), "report": r}));
    } else {
        println!("form: {omega}");
        print_certificate(&r);
        println!("verdict: {}", r.verdict);
    }
    Ok(verdict_code(r.verdict))
}

fn rep(cli: &Cli, path: &Path, dim: &Dim) -> Outcome {
    let q = load(path)?;
    let s = setup(&q, dim)?;
    let names = s.ring().names();
    if cli.json {
        let blocks: serde_json::Map<_, _> = q
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, name)| (name.clone(), json!([s.block(v).start + 1, s.block(v).end])))
            .collect();
        let arrows: serde_json::Map<_, _> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| (arrow.name.clone(), json!(names[s.arrow_vars(a)])))
            .collect();
        print_json(&json!({
            "dims": dim.dim,
            "size": s.size(),
            "num_vars": s.num_vars(),
            "blocks": blocks,
            "variables": arrows,
        }));
    } else {
        println!("N = {}, {} variables", s.size(), s.num_vars());
        for (v, name) in q.vertices().iter().enumerate() {
            let b = s.block(v);
            println!("block {name}: rows {}..{}", b.start + 1, b.end);
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            println!("{}: {}", arrow.name, names[s.arrow_vars(a)].join(" "));
        }
    }
    Ok(0)
}

fn trace(cli: &Cli, path: &Path, dim: &Dim, elem: &str) -> Outcome {
    let q = load(path)?;
    let s = setup(&q, dim)?;
    let x = match parse_expr(elem, &q).map_err(data)? {
        Parsed::Element(x) => x,
        Parsed::Form(_) => return Err(Failure::Data("--elem must be an algebra element, got a form".into())),
    };
    let t = trace_fn(&s, &x).map_err(data)?;
    let shown = t.display(Some(s.ring()));
    let invariant = invariance_check(&s, &t);
    if cli.json {
        print_json(&json!({"element": x.to_string(), "trace": shown, "invariant": invariant}));
    } else {
        println!("{shown}");
    }
    Ok(0)
}

fn parse_point(raw: &[String]) -> Result<Vec<Rational>, Failure> {
    raw.iter()
        .map(|s| s.trim().parse::<Rational>().map_err(|_| Failure::Data(format!("malformed rational `{s}` in --point"))))
        .collect()
}

fn kr(cli: &Cli, path: &Path, dim: &Dim, form: Option<&str>, point: Option<&[String]>) -> Outcome {
    let q = load(path)?;
    let s = setup(&q, dim)?;
    let omega = match form {
        Some(f) => {
            let u = parse_expr(f, &q).map_err(data)?.into_form();
            dr_project(&u).map_err(data)?
        }
        None if q.is_double() => canonical_omega(&q).map_err(data)?,
        None => {
            return Err(Failure::Data(format!(
                "--canonical needs a double quiver; add `double: true` to {}",
                path.display()
            )))
        }
    };
    if omega.degree() != 2 {
        return Err(Failure::Data(format!("--form must be a 2-form, got degree {}", omega.degree())));
    }
    let opts = KrOptions {
        seed: cli.seed,
        point: point.map(parse_point).transpose()?,
        check_canonical: form.is_none(),
    };
    let r = kr_verify(&s, &omega, &opts).map_err(data)?;
    if cli.json {
        print_json(&serde_json::to_value(&r).expect("serializable"));
    } else {
        println!("{r}");
    }
    Ok(verdict_code(r.verdict))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Double { quiver } => double(cli, quiver),
        Command::Bisymp { quiver, form } => bisymp(cli, quiver, form),
        Command::Rep { quiver, dim } => rep(cli, quiver, dim),
        Command::Trace { quiver, dim, elem } => trace(cli, quiver, dim, elem),
        Command::Kr {
            quiver,
            dim,
            form,
            point,
            ..
        } => kr(cli, quiver, dim, form.as_deref(), point.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Data(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
