use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use camina_cli::report::ReportDocument;
use camina_core::chars::{dixon_table_with, gagola_characters, gagola_consistency, TableLimits};
use camina_core::constructions::{
    build_group, structural_checks, theorem_pipeline, write_dump, CharsMode, GroupKind,
    PipelineOptions,
};
use camina_core::gf::FieldSpec;
use camina_core::group::{is_prime_power, set_max_enumeration, DEFAULT_MAX_ENUM};
use camina_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "camina", version, about = "Camina pairs from Heisenberg groups over finite fields")]
struct Cli {
    /// Worker threads (default: all cores). Never changes report contents.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Cap on the size of any enumerated group.
    #[arg(long, global = true, env = "CAMINA_MAX_ENUM", default_value_t = DEFAULT_MAX_ENUM)]
    max_enum: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the structural checks and the candidate search over GF(p^p).
    Verify {
        #[arg(long)]
        p: u32,
        /// Field degree; the search needs n = p.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = CharsArg::Auto)]
        chars: CharsArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Write the elements of H(F), K(F) or G(F) in dump format.
    Construct {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        group: GroupArg,
        /// Output file (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Character degrees, class sizes and Gagola characters of a small group.
    Chars {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        group: GroupArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CharsArg {
    Auto,
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    H,
    K,
    G,
}

impl From<GroupArg> for GroupKind {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::H => GroupKind::H,
            GroupArg::K => GroupKind::K,
            GroupArg::G => GroupKind::G,
        }
    }
}

/// Usage, capacity and scale problems.
const EXIT_USAGE: u8 = 2;
const EXIT_FAILED: u8 = 1;

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::Internal(_) => ExitCode::from(EXIT_FAILED),
        _ => ExitCode::from(EXIT_USAGE),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_max_enumeration(cli.max_enum);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    pool.install(|| match cli.command {
        Command::Verify {
            p,
            n,
            chars,
            format,
            no_timestamp,
        } => verify(p, n.unwrap_or(p), chars, format, no_timestamp),
        Command::Construct { p, n, group, out } => construct(p, n, group.into(), out),
        Command::Chars { p, n, group } => chars_cmd(p, n, group.into()),
    })
}

fn verify(p: u32, n: u32, chars: CharsArg, format: Format, no_timestamp: bool) -> ExitCode {
    if n != p {
        eprintln!("error: the candidate search needs n = p (got p = {p}, n = {n})");
        return ExitCode::from(EXIT_USAGE);
    }
    let options = PipelineOptions {
        chars: match chars {
            CharsArg::Auto => CharsMode::Auto,
            CharsArg::On => CharsMode::On,
            CharsArg::Off => CharsMode::Off,
        },
        ..Default::default()
    };
    let result = match theorem_pipeline(p, &options) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let structural = match structural_checks(&result.bundle) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let timestamp = (!no_timestamp).then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    let doc = match ReportDocument::build(&result, &structural, timestamp) {
        Ok(d) => d,
        Err(e) => return fail(&e),
    };
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => doc.to_text(),
    };
    print!("{body}");
    if doc.verified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}

fn construct(p: u32, n: u32, kind: GroupKind, out: Option<PathBuf>) -> ExitCode {
    let group = match FieldSpec::new(p, n).and_then(|f| build_group(&f, kind)) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let written = match out {
        Some(path) => File::create(&path).and_then(|f| {
            let mut w = BufWriter::new(f);
            write_dump(&mut w, &group)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write_dump(&mut w, &group).and_then(|_| w.flush())
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn chars_cmd(p: u32, n: u32, kind: GroupKind) -> ExitCode {
    let limits = TableLimits::default();
    let order = kind.order(p, n);
    if order > limits.max_order as u128 {
        eprintln!(
            "error: order {order} exceeds the character table cap {}",
            limits.max_order
        );
        return ExitCode::from(EXIT_USAGE);
    }
    let run = || -> camina_core::Result<String> {
        let field = FieldSpec::new(p, n)?;
        let g = build_group(&field, kind)?;
        let table = dixon_table_with(&g, limits)?;
        let mut s = String::new();
        let join = |v: Vec<String>| v.join(" ");
        s += &format!("order: {}\n", g.order());
        s += &format!("classes: {}\n", table.classes().len());
        s += &format!("class sizes: {}\n", join(table.classes().sizes.iter().map(|x| x.to_string()).collect()));
        s += &format!("degrees: {}\n", join(table.degrees().iter().map(|x| x.to_string()).collect()));
        let reports = gagola_characters(&g, &table)?;
        s += &format!("gagola characters: {}\n", reports.len());
        for r in &reports {
            let n_order = r.normal_subgroup.order();
            s += &format!(
                "  character {}: degree {}, N of order {n_order}, normal {}, elementary abelian {}, minimal normal {}\n",
                r.character, r.degree, r.is_normal, r.is_elementary_abelian, r.is_minimal_normal
            );
            if let Some(q) = is_prime_power(n_order as u64) {
                if r.is_normal && r.is_elementary_abelian {
                    let c = gagola_consistency(&g, r, q)?;
                    s += &format!(
                        "    p = {q}: transitive on N: {}, transitive on Irr(N): {}, stabilizer Sylow: {}, order identity: {}, e: {}, degree identity: {}, vanishes off N: {}\n",
                        c.transitive_on_kernel,
                        c.transitive_on_linear_characters,
                        c.stabilizer_is_sylow,
                        c.order_identity,
                        c.ramification.map_or("n/a".into(), |e| e.to_string()),
                        c.degree_identity,
                        c.vanishes_off_kernel
                    );
                }
            }
        }
        Ok(s)
    };
    match run() {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
