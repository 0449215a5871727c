use std::io::Read;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fms_core::flow::{flow, invariance_residual, FlowMethod, FlowSpec};
use fms_core::hard_sphere::{kernel_matrix, kr_weights, mayer_bond, step_hat, step_profile};
use fms_core::verify::{errata_report, run_suite, Suite};
use fms_core::{generator, Basis, BasisKind, GeneratorId, Mat4, StructureTable, TableKind};

mod output;

use output::{g6, matrix_text, render_json};

#[derive(Parser)]
#[command(name = "fms", version, about = "Structure tables, flows and hard-sphere identities of the fundamental-measure algebra")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenSet {
    Isometric,
    Metamorphic,
    Jeffrey,
    /// One followed by the 15 generators
    Basis,
}

impl GenSet {
    fn ids(self) -> &'static [GeneratorId] {
        match self {
            GenSet::Isometric => &GeneratorId::ISOMETRIC,
            GenSet::Metamorphic => &GeneratorId::METAMORPHIC,
            GenSet::Jeffrey => &GeneratorId::JEFFREY,
            GenSet::Basis => &GeneratorId::BASIS,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Full,
    Jeffrey,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate a structure table
    Tables {
        #[arg(long, default_value = "half_commutator")]
        kind: TableKind,
        /// Row generators (and columns unless --cols is given)
        #[arg(long, value_enum, default_value_t = GenSet::Isometric)]
        set: GenSet,
        #[arg(long, value_enum)]
        cols: Option<GenSet>,
        /// Expansion basis; defaults to jeffrey when rows and columns are both t0..t3
        #[arg(long, value_enum)]
        basis: Option<BasisArg>,
    },
    /// Run verification suites; exits 1 if any check fails
    Verify {
        /// tables, symmetry, metric, lie, flows, fmt, jeffrey or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Also list published entries that disagree with the generators
        #[arg(long)]
        errata: bool,
    },
    /// Evaluate the flow exp(param * X(q))
    Eval {
        #[arg(long)]
        gen: GeneratorId,
        #[arg(long, allow_negative_numbers = true)]
        param: f64,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        /// closed or series
        #[arg(long, default_value = "closed")]
        method: FlowMethod,
    },
    /// Expand a matrix in the basis One + 15 generators
    Decompose {
        /// Exact matrix as {"rows": ...} JSON, or - to read it from stdin
        #[arg(long, conflicts_with_all = ["x", "y"])]
        matrix: Option<String>,
        #[arg(long, requires = "y")]
        x: Option<GeneratorId>,
        #[arg(long, requires = "x")]
        y: Option<GeneratorId>,
        /// Operation applied to X and Y
        #[arg(long, default_value = "half_commutator")]
        op: TableKind,
    },
    /// Hard-sphere weights w0..w3
    Weights {
        #[arg(long = "R", allow_negative_numbers = true)]
        r: f64,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
    },
    /// Bilinear form of two weight vectors and the step transform it equals
    Mayer {
        #[arg(long = "Ra", allow_negative_numbers = true)]
        ra: f64,
        #[arg(long = "Rb", allow_negative_numbers = true)]
        rb: f64,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
    },
    /// The kernel K_R = exp(R t1)
    Kernel {
        #[arg(long = "R", allow_negative_numbers = true)]
        r: f64,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
    },
    /// Real-space profile of the unit step of range R, as r,f(r) rows
    Profile {
        #[arg(long = "R", allow_negative_numbers = true)]
        r: f64,
        #[arg(long, allow_negative_numbers = true)]
        rmax: f64,
        #[arg(long, default_value_t = 41)]
        points: usize,
    },
    /// All generator matrices as JSON
    DumpGenerators,
}

struct Output {
    text: String,
    json: Value,
    success: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, success: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text.trim_end()),
                Format::Json => println!("{}", render_json(&out.json)),
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> anyhow::Result<Output> {
    match command {
        Command::Tables { kind, set, cols, basis } => tables(kind, set, cols.unwrap_or(set), basis),
        Command::Verify { suite, errata } => verify(&suite, errata),
        Command::Eval { gen, param, q, method } => eval(gen, param, q, method),
        Command::Decompose { matrix, x, y, op } => decompose(matrix, x.zip(y), op),
        Command::Weights { r, q } => {
            let w = kr_weights(r, q)?;
            let text = format!("w0 = {}\nw1 = {}\nw2 = {}\nw3 = {}", g6(w.w0), g6(w.w1), g6(w.w2), g6(w.w3));
            Ok(Output::ok(text, json!({"R": r, "q": q, "w": [w.w0, w.w1, w.w2, w.w3]})))
        }
        Command::Mayer { ra, rb, q } => {
            let m = mayer_bond(ra, rb, q)?;
            let s = step_hat(ra + rb, q)?;
            let text = format!("mayer_bond = {}\nstep_hat(Ra+Rb) = {}", g6(m), g6(s));
            Ok(Output::ok(text, json!({"Ra": ra, "Rb": rb, "q": q, "mayer_bond": m, "step_hat": s})))
        }
        Command::Kernel { r, q } => {
            let k = kernel_matrix(r, q)?;
            Ok(Output::ok(matrix_text(&k.0), json!({"R": r, "q": q, "matrix": k.0})))
        }
        Command::Profile { r, rmax, points } => {
            let rows = step_profile(r, rmax, points)?;
            let mut text = String::from("r,f\n");
            for (x, f) in &rows {
                text.push_str(&format!("{},{}\n", g6(*x), g6(*f)));
            }
            let json = json!({"R": r, "rows": rows.iter().map(|(x, f)| json!([x, f])).collect::<Vec<_>>()});
            Ok(Output::ok(text, json))
        }
        Command::DumpGenerators => {
            let mut text = String::new();
            let mut map = serde_json::Map::new();
            for id in GeneratorId::ALL {
                text.push_str(&format!("{}:\n{}\n\n", id.name(), generator(id)));
                map.insert(id.name().to_string(), serde_json::to_value(generator(id))?);
            }
            Ok(Output::ok(text, Value::Object(map)))
        }
    }
}

fn tables(kind: TableKind, rows: GenSet, cols: GenSet, basis: Option<BasisArg>) -> anyhow::Result<Output> {
    let basis = match basis {
        Some(BasisArg::Full) => BasisKind::Full,
        Some(BasisArg::Jeffrey) => BasisKind::Jeffrey,
        None if matches!((rows, cols), (GenSet::Jeffrey, GenSet::Jeffrey)) => BasisKind::Jeffrey,
        None => BasisKind::Full,
    };
    let table = StructureTable::build(basis, kind, rows.ids(), cols.ids())?;
    Ok(Output::ok(table.to_text(), serde_json::to_value(&table)?))
}

fn verify(suite: &str, with_errata: bool) -> anyhow::Result<Output> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(anyhow::Error::msg)?]
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut total = 0;
    let mut passed = 0;
    for s in &suites {
        let report = run_suite(*s)?;
        text.push_str(&format!("{report}\n"));
        for m in &report.mismatches {
            text.push_str(&format!("  {m}\n"));
        }
        total += report.mismatches.len();
        passed += usize::from(report.passed());
        let mut v = serde_json::to_value(&report)?;
        v["passed"] = json!(report.passed());
        reports.push(v);
    }
    text.push_str(&format!("{} of {} suites passed, {} mismatches\n", passed, suites.len(), total));
    let mut json = json!({"suites": reports, "passed": total == 0, "mismatches": total});
    if with_errata {
        let errata = errata_report()?;
        text.push_str(&format!("\nerrata\n{errata}"));
        json["errata"] = serde_json::to_value(&errata)?;
    }
    Ok(Output { text, json, success: total == 0 })
}

fn eval(gen: GeneratorId, param: f64, q: f64, method: FlowMethod) -> anyhow::Result<Output> {
    let result = flow(&FlowSpec::new(gen, param, q), method)?;
    let residual = invariance_residual(&result.matrix);
    let method_name = serde_json::to_value(result.method)?;
    let text = format!(
        "exp({} * {}) at q = {} ({})\n{}\ninvariance_residual = {}",
        g6(param),
        gen.name(),
        g6(q),
        method_name.as_str().unwrap_or_default(),
        matrix_text(&result.matrix.0),
        g6(residual)
    );
    let json = json!({
        "gen": gen.name(),
        "param": param,
        "q": q,
        "method": method_name,
        "matrix": result.matrix.0,
        "invariance_residual": residual,
    });
    Ok(Output::ok(text, json))
}

fn decompose(matrix: Option<String>, pair: Option<(GeneratorId, GeneratorId)>, op: TableKind) -> anyhow::Result<Output> {
    let (label, target) = match (matrix, pair) {
        (Some(src), _) => {
            let raw = if src == "-" {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf).context("reading matrix from stdin")?;
                buf
            } else {
                src
            };
            let m: Mat4 = serde_json::from_str(&raw).context("parsing matrix JSON")?;
            ("matrix".to_string(), m)
        }
        (None, Some((x, y))) => {
            let label = format!("{} with X = {}, Y = {}", op.header(), x.display_name(), y.display_name());
            (label, op.apply(generator(x), generator(y)))
        }
        (None, None) => bail!("give either --matrix or both --x and --y"),
    };
    let d = Basis::full().decompose(&target)?;
    let text = format!("{label}\n= {d}");
    Ok(Output::ok(text, serde_json::to_value(&d)?))
}
