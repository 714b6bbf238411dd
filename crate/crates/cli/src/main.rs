use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grscodes::codes::{GrsSpec, LinearCode, MIN_DISTANCE_BUDGET};
use grscodes::constructions::{self, ConstructionRecord, Family};
use grscodes::families::{
    emgrs_generator, mgrs_generator, roth_lempel_generator, tgrs_generator, EmgrsParams, Hook, MgrsParams,
    RothLempelParams, TgrsParams,
};
use grscodes::format::{parse_matrix, write_matrix, write_spec};
use grscodes::gf::{FieldSpec, Fq, ProjElem};
use grscodes::grs_id::{bench_recover, cauchy_failure, is_grs, GrsVerdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "grscodes", version, about = "Exact tools for GRS, modified GRS and related MDS codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the field realized for the given parameters
    Field(FieldArgs),
    /// Build a code from a named family
    Construct(ConstructArgs),
    /// Run a test on a matrix file
    Check {
        kind: CheckKind,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Recover points and multipliers of a GRS code
    Recover {
        #[arg(long = "in")]
        input: PathBuf,
        /// where to write the spec file when the code is GRS
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dual, puncture or shorten a code
    Transform {
        op: TransformOp,
        /// 1-based positions, comma separated
        #[arg(long, value_delimiter = ',')]
        pos: Vec<usize>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of non-GRS MDS constructions for one field
    Table1 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Time and count field operations of the recovery
    Bench {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        /// code lengths, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 21)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Clone)]
struct FieldArgs {
    #[arg(long, conflicts_with_all = ["p", "s", "modulus"])]
    q: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    /// modulus coefficients, constant term first
    #[arg(long = "mod", value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    family: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    eta: Option<u32>,
    #[arg(long)]
    lambda: Option<u32>,
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Mds,
    MinDist,
    IsGrs,
    Cauchy,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformOp {
    Dual,
    Puncture,
    Shorten,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

type Res<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Input(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Cmd) -> Res<String> {
    match cmd {
        Cmd::Field(args) => {
            let f = field(&args)?;
            Ok(format!("{}\nq={}\nprimitive={}\n", grscodes::format::field_header(&f), f.q(), f.primitive()))
        }
        Cmd::Construct(args) => construct(&args),
        Cmd::Check { kind, input: path } => check(kind, &read_matrix(&path)?),
        Cmd::Recover { input: path, out } => recover(&read_matrix(&path)?, out.as_deref()),
        Cmd::Transform { op, pos, input: path, out } => transform(op, &pos, &read_matrix(&path)?, out.as_deref()),
        Cmd::Table1 { field: args, format } => table1(&field(&args)?, format),
        Cmd::Bench { field: args, k, n, trials, seed } => {
            let f = field(&args)?;
            let rows = bench_recover(&f, k, &n, trials, seed).map_err(usage)?;
            let mut out = format!("# q={} k={k} trials={trials} seed={seed}\n", f.q());
            for r in rows {
                writeln!(out, "{r}").unwrap();
            }
            Ok(out)
        }
    }
}

fn field(a: &FieldArgs) -> Res<Arc<FieldSpec>> {
    let f = match (a.q, a.p) {
        (Some(q), _) => FieldSpec::with_order(q),
        (None, Some(p)) => FieldSpec::new(p, a.s.unwrap_or(1), a.modulus.as_deref()),
        (None, None) => return Err(usage("give --q or --p")),
    };
    f.map(Arc::new).map_err(usage)
}

fn read_matrix(path: &Path) -> Res<LinearCode> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let m = parse_matrix(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    LinearCode::new(m).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Res<String> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text.to_string()),
    }
}

fn elem(f: &FieldSpec, e: Option<u32>, default: Fq) -> Res<Fq> {
    match e {
        Some(e) => f.elem(e).map_err(usage),
        None => Ok(default),
    }
}

fn construct(a: &ConstructArgs) -> Res<String> {
    let f = field(&a.field)?;
    if let Some(fam) = Family::from_label(&a.family).or(match a.family.as_str() {
        "ngrs-q2-3-dual" => Some(Family::NgrsQ2),
        _ => None,
    }) {
        let rec = named(&f, fam, a)?;
        return match a.format {
            Format::Kv => write_out(a.out.as_deref(), &rec.kv_block()),
            Format::Text => write_out(a.out.as_deref(), &write_matrix(rec.code.generator())),
        };
    }
    let q = f.q() as usize;
    let n = a.n.ok_or_else(|| usage("--n is required for this family"))?;
    let pts = |count: usize| -> Res<Vec<Fq>> {
        if count > q {
            return Err(usage(format!("{count} distinct points do not exist in GF({q})")));
        }
        Ok(f.elements().take(count).collect())
    };
    let t = a.t.unwrap_or(1);
    let (code, spec) = match a.family.as_str() {
        "grs" | "egrs" => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let spec = GrsSpec::random(&f, n, a.k, a.family == "egrs", &mut rng).map_err(usage)?;
            (spec.generator(&f).map_err(usage)?, Some(spec))
        }
        "mgrs" => {
            let alpha = pts(n.saturating_sub(1))?;
            let eta = elem(&f, a.eta, Fq::ONE)?;
            let p = MgrsParams { v: vec![Fq::ONE; n], alpha, eta, t, k: a.k };
            (mgrs_generator(&f, &p).map_err(usage)?, None)
        }
        "emgrs" => {
            let alpha = pts(n.saturating_sub(2))?;
            let eta = elem(&f, a.eta, Fq::ONE)?;
            let mgrs = MgrsParams { v: vec![Fq::ONE; n - 1], alpha, eta, t, k: a.k };
            (emgrs_generator(&f, &EmgrsParams { mgrs, v_inf: Fq::ONE }).map_err(usage)?, None)
        }
        "tgrs" => {
            let hook = match a.t {
                None | Some(0) => Hook::Zero,
                Some(t) if t + 1 == a.k => Hook::TopDegree,
                Some(t) => return Err(usage(format!("twisted GRS hooks are t=0 or t=k-1, got t={t}"))),
            };
            let lambda = elem(&f, a.lambda, Fq::ONE)?;
            let p = TgrsParams { alpha: pts(n)?, v: vec![Fq::ONE; n], lambda, k: a.k, hook };
            (tgrs_generator(&f, &p).map_err(usage)?, None)
        }
        "roth-lempel" => {
            let delta = elem(&f, a.delta, Fq::ZERO)?;
            let p = RothLempelParams { a: pts(n.saturating_sub(2))?, delta, k: a.k };
            (roth_lempel_generator(&f, &p).map_err(usage)?, None)
        }
        other => return Err(usage(format!("unknown family {other:?}"))),
    };
    let text = match a.format {
        Format::Text => write_matrix(code.generator()),
        Format::Kv => {
            let mut s = format!("family={}\nq={q}\nk={}\nn={}\n", a.family, code.k(), code.n());
            if let Some(spec) = &spec {
                let alpha: Vec<String> = spec.alpha().iter().map(ProjElem::to_string).collect();
                let v: Vec<String> = spec.v().iter().map(Fq::to_string).collect();
                writeln!(s, "alpha={}\nv={}", alpha.join(","), v.join(",")).unwrap();
            }
            for (i, row) in code.generator().to_encodings().iter().enumerate() {
                let row: Vec<String> = row.iter().map(u32::to_string).collect();
                writeln!(s, "row{}={}", i + 1, row.join(" ")).unwrap();
            }
            s
        }
    };
    if let (Some(out), Some(spec)) = (&a.out, &spec) {
        let mut path = out.clone().into_os_string();
        path.push(".spec");
        fs::write(&path, write_spec(&f, spec)).map_err(usage)?;
    }
    write_out(a.out.as_deref(), &text)
}

fn named(f: &Arc<FieldSpec>, fam: Family, a: &ConstructArgs) -> Res<ConstructionRecord> {
    let k = a.k;
    let r = match fam {
        Family::Star => constructions::star_modified(f, k),
        Family::OddK3 => constructions::odd_k3(f, k),
        Family::Plus => constructions::plus_modified(f, k, false),
        Family::PlusExtended => constructions::plus_modified(f, k, true),
        Family::Char2K4 => constructions::char2_k4(f, k),
        Family::NgrsQ2 => match k {
            3 => constructions::ngrs_q2_3(f, false),
            k if k + 1 == f.q() as usize => constructions::ngrs_q2_3(f, true),
            _ => return Err(usage("ngrs-q2-3 has k=3, or k=q-1 for its dual")),
        },
        Family::TgrsPunctured => constructions::tgrs_punctured(f, k),
    };
    r.map_err(usage)
}

fn check(kind: CheckKind, code: &LinearCode) -> Res<String> {
    Ok(match kind {
        CheckKind::Mds => format!("mds={}\n", code.is_mds()),
        CheckKind::MinDist => {
            let d = code.min_distance(MIN_DISTANCE_BUDGET).map_err(usage)?;
            format!("min_distance={d}\n")
        }
        CheckKind::IsGrs => format!("{}\n", is_grs(code.generator()).map_err(usage)?),
        CheckKind::Cauchy => match cauchy_failure(code.generator()).map_err(usage)? {
            None => "cauchy=true reason=none\n".to_string(),
            Some(r) => format!("cauchy=false reason={r}\n"),
        },
    })
}

fn recover(code: &LinearCode, out: Option<&Path>) -> Res<String> {
    let verdict = is_grs(code.generator()).map_err(usage)?;
    let mut text = format!("{verdict}\n");
    if let GrsVerdict::IsGrs(spec) = &verdict {
        let spec_text = write_spec(code.field(), spec);
        match out {
            Some(p) => {
                fs::write(p, spec_text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            }
            None => text.push_str(&spec_text),
        }
    }
    Ok(text)
}

fn transform(op: TransformOp, pos: &[usize], code: &LinearCode, out: Option<&Path>) -> Res<String> {
    if pos.iter().any(|&p| p == 0 || p > code.n()) {
        return Err(usage(format!("positions are 1..={}", code.n())));
    }
    let zero_based: Vec<usize> = pos.iter().map(|p| p - 1).collect();
    let result = match op {
        TransformOp::Dual if !pos.is_empty() => return Err(usage("dual takes no positions")),
        TransformOp::Dual => code.dual(),
        TransformOp::Puncture => code.puncture(&zero_based),
        TransformOp::Shorten => code.shorten(&zero_based),
    }
    .map_err(usage)?;
    write_out(out, &write_matrix(result.generator()))
}

fn table1(f: &Arc<FieldSpec>, format: Format) -> Res<String> {
    let t = constructions::table1(f).map_err(usage)?;
    let mut out = String::new();
    for r in &t.records {
        match format {
            Format::Text => writeln!(out, "{}", r.report_line()).unwrap(),
            Format::Kv => writeln!(out, "{}", r.kv_block()).unwrap(),
        }
    }
    for note in &t.notes {
        writeln!(out, "# {note}").unwrap();
    }
    Ok(out)
}
