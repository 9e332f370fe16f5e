//! The `signotope` command line.
//!
//! Exit codes: 0 success, 1 a domain "no" (invalid signotope, no
//! extension, failed witness), 2 usage or input errors, 3 solver failures.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{input, Error, Result};
use crate::extend::{one_extend, two_extend, verify_extension, ExtensionCertificate};
use crate::order::{partition_pivot, Comparison, PartialOrder, Pivot};
use crate::sat::dimacs::{parse_dimacs, write_model, write_vars};
use crate::sat::{add_structural, encode_enumeration, encode_extendability, EnumOptions, SatSolver, Verdict};
use crate::search::{
    check_2_extendability, count_signotopes, for_each_signotope, gen_lower_bound_family, verify_witness, Method, Pairs,
};
use crate::signotope::{Sign, Signotope};
use crate::subset::Subset;
use crate::text::{parse_records, read_sign_map, read_signotope};

#[derive(Parser, Debug)]
#[command(name = "signotope", version, about = "Compute with rank-r signotopes")]
struct Cli {
    /// Write results here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// External SAT solver (overrides $SOLVER).
    #[arg(long, global = true)]
    solver: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the packet condition; lists violating packets.
    Validate { file: PathBuf },
    /// List all fliples.
    Fliples { file: PathBuf },
    /// Rotate clockwise k times (negative: counterclockwise).
    Rotate {
        file: PathBuf,
        #[arg(short, long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
    },
    /// Negate every sign.
    Reverse { file: PathBuf },
    /// Delete an element.
    Delete {
        file: PathBuf,
        #[arg(short, long)]
        element: usize,
    },
    /// Contract an element (rank drops by one).
    Contract {
        file: PathBuf,
        #[arg(short, long)]
        element: usize,
    },
    /// The induced partial order on (r-1)-subsets.
    Order(OrderArgs),
    /// Extend at the last position with one prescribed fliple.
    Extend1 {
        file: PathBuf,
        #[arg(long)]
        set: Subset,
    },
    /// Extend with two prescribed fliples.
    Extend2 {
        file: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        pair: (Subset, Subset),
    },
    /// Re-check an extension certificate written by extend1/extend2.
    Verify {
        original: PathBuf,
        certificate: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(Subset, Subset)>,
        #[arg(long)]
        set: Option<Subset>,
    },
    /// Write every r-signotope on [n].
    Enumerate {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Sat)]
        method: MethodArg,
    },
    /// Count r-signotopes on [n].
    Count {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Oracle)]
        method: MethodArg,
    },
    /// Test 2-extendability over all disjoint pairs or one pair.
    Check2ext {
        file: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(Subset, Subset)>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check the even-rank witness properties and non-extendability.
    VerifyWitness {
        file: PathBuf,
        /// Rank r-2 witness for property (f).
        #[arg(long)]
        lower: Option<PathBuf>,
    },
    /// A member of the lower-bound family on [r*m].
    GenFamily {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        m: usize,
        /// One `+`/`-` per free position; all `+` when omitted.
        #[arg(long)]
        free: Option<String>,
    },
    /// Write a CNF model as DIMACS (plus `<output>.vars` when -o is given).
    Encode(EncodeArgs),
    /// Solve a DIMACS file with the embedded solver (exit 10 sat, 20 unsat).
    Solve { file: PathBuf },
}

#[derive(Args, Debug)]
struct OrderArgs {
    file: PathBuf,
    /// Emit the cover relation as DOT.
    #[arg(long)]
    dot: bool,
    /// Compare two subsets `I:J`.
    #[arg(long, value_parser = parse_pair)]
    compare: Option<(Subset, Subset)>,
    /// Print the H/U/D partition for a pivot.
    #[arg(long, value_enum)]
    pivot: Option<PivotArg>,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[arg(short, requires = "n")]
    r: Option<usize>,
    #[arg(short)]
    n: Option<usize>,
    /// Extendability of this signotope at the last position (needs --pair).
    #[arg(long, conflicts_with_all = ["r", "n"], requires = "pair")]
    extend: Option<PathBuf>,
    #[arg(long, value_parser = parse_pair)]
    pair: Option<(Subset, Subset)>,
    /// Use pattern variables for packets.
    #[arg(long)]
    packet_types: bool,
    /// Add fliple variables.
    #[arg(long)]
    fliples: bool,
    #[arg(long)]
    fliple_count: Option<usize>,
    /// Force a subset to be a fliple (repeatable).
    #[arg(long)]
    require: Vec<Subset>,
    /// Add the witness rules (a)-(e), and (f) with --lower.
    #[arg(long)]
    structural: bool,
    #[arg(long, requires = "structural")]
    lower: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Oracle,
    Sat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PivotArg {
    First,
    Last,
}

fn parse_pair(s: &str) -> Result<(Subset, Subset), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected I:J, got {s:?}"))?;
    Ok((a.parse().map_err(|e: Error| e.to_string())?, b.parse().map_err(|e: Error| e.to_string())?))
}

/// Outcome of a verb: text to emit and whether the answer was "yes".
struct Outcome {
    text: String,
    yes: bool,
}

impl Outcome {
    fn yes(text: impl Into<String>) -> Self {
        Outcome { text: text.into(), yes: true }
    }

    fn answer(text: impl Into<String>, yes: bool) -> Self {
        Outcome { text: text.into(), yes }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotSignotope { .. } => 1,
        Error::Input(_) | Error::UnsupportedParity(_) | Error::Io(_) => 2,
        Error::Internal(_) | Error::Protocol(_) | Error::Resource(_) => 3,
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Command::Solve { file } = &cli.command {
        return solve_dimacs(file);
    }
    let solver = SatSolver::from_config(cli.solver.as_deref());
    match dispatch(cli.command, &solver, cli.output.as_deref())
        .and_then(|out| emit(cli.output.as_deref(), &out.text).map(|_| out.yes))
    {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::NotSignotope { violations } = &e {
                for y in violations.iter().take(20) {
                    eprintln!("  violating packet ({y})");
                }
            }
            exit_code(&e)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn lines<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| format!("{x}\n")).collect()
}

fn cert_text(c: &ExtensionCertificate) -> String {
    let names = ["I*", "J*"];
    let fl: Vec<String> = c.fliples.iter().zip(names).map(|(f, name)| format!("{name}={f}")).collect();
    format!("# k={} {} rot={}\n{}", c.k, fl.join(" "), c.rotations, c.extended.to_text())
}

fn dispatch(command: Command, solver: &SatSolver, output: Option<&Path>) -> Result<Outcome> {
    match command {
        Command::Validate { file } => {
            let map = read_sign_map(file)?;
            let bad = map.validate();
            if bad.is_empty() {
                Ok(Outcome::yes("valid\n"))
            } else {
                Ok(Outcome::answer(
                    format!("invalid\n{}", lines(bad.iter().map(|y| format!("violating packet ({y})")))),
                    false,
                ))
            }
        }
        Command::Fliples { file } => Ok(Outcome::yes(lines(read_signotope(file)?.fliples()))),
        Command::Rotate { file, k } => Ok(Outcome::yes(read_signotope(file)?.rotate_k(k).to_text())),
        Command::Reverse { file } => Ok(Outcome::yes(read_signotope(file)?.reverse().to_text())),
        Command::Delete { file, element } => Ok(Outcome::yes(read_signotope(file)?.delete(element)?.to_text())),
        Command::Contract { file, element } => Ok(Outcome::yes(read_signotope(file)?.contract(element)?.to_text())),
        Command::Order(args) => order(args),
        Command::Extend1 { file, set } => Ok(Outcome::yes(cert_text(&one_extend(&read_signotope(file)?, set)?))),
        Command::Extend2 { file, pair } => {
            Ok(Outcome::yes(cert_text(&two_extend(&read_signotope(file)?, pair.0, pair.1)?)))
        }
        Command::Verify { original, certificate, pair, set } => verify(&original, &certificate, pair, set),
        Command::Enumerate { r, n, method } => {
            let mut text = String::new();
            for_each_signotope(r, n, method.into(), solver, |s| {
                text += &s.to_text();
                true
            })?;
            Ok(Outcome::yes(text))
        }
        Command::Count { r, n, method } => {
            Ok(Outcome::yes(format!("{}\n", count_signotopes(r, n, method.into(), solver)?)))
        }
        Command::Check2ext { file, pair, jobs } => {
            let s = read_signotope(file)?;
            let pairs = pair.map_or(Pairs::AllDisjoint, |(i, j)| Pairs::Single(i, j));
            let report = check_2_extendability(&s, pairs, solver, jobs)?;
            Ok(Outcome::answer(report.to_text(), report.is_extendable()))
        }
        Command::VerifyWitness { file, lower } => {
            let s = read_signotope(file)?;
            let lower = lower.map(read_signotope).transpose()?;
            let report = verify_witness(&s, lower.as_ref(), solver)?;
            Ok(Outcome::answer(report.to_text(), report.pass))
        }
        Command::GenFamily { r, m, free } => {
            let k = crate::search::free_positions(r, m)?.len();
            let signs = match free {
                None => vec![Sign::Plus; k],
                Some(f) => f
                    .chars()
                    .map(|c| Sign::from_char(c).ok_or_else(|| Error::Input(format!("bad sign {c:?} in --free"))))
                    .collect::<Result<_>>()?,
            };
            Ok(Outcome::yes(gen_lower_bound_family(r, m, &signs)?.to_text()))
        }
        Command::Encode(args) => encode(args, output),
        Command::Solve { .. } => unreachable!("handled before dispatch"),
    }
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Sat => Method::Sat,
        }
    }
}

fn order(args: OrderArgs) -> Result<Outcome> {
    let s = read_signotope(&args.file)?;
    let p = PartialOrder::new(&s)?;
    if let Some((i, j)) = args.compare {
        let word = match p.compare(i, j)? {
            Comparison::Less => "less",
            Comparison::Greater => "greater",
            Comparison::Equal => "equal",
            Comparison::Incomparable => "incomparable",
        };
        return Ok(Outcome::yes(format!("{word}\n")));
    }
    if let Some(pivot) = args.pivot {
        let part = partition_pivot(&s, if matches!(pivot, PivotArg::First) { Pivot::First } else { Pivot::Last });
        let show = |set: &std::collections::BTreeSet<Subset>| {
            set.iter().map(|x| format!("({x})")).collect::<Vec<_>>().join(" ")
        };
        return Ok(Outcome::yes(format!("H: {}\nU: {}\nD: {}\n", show(&part.h), show(&part.u), show(&part.d))));
    }
    if args.dot {
        return Ok(Outcome::yes(p.to_dot()));
    }
    Ok(Outcome::yes(lines(p.cover_edges().map(|(a, b)| format!("{a} < {b}")))))
}

/// Reads `# k=.. I*=.. J*=.. rot=..` back from a certificate file.
fn parse_certificate(text: &str) -> Result<ExtensionCertificate> {
    let mut records = parse_records(text)?;
    if records.len() != 1 {
        return input("certificate file must hold exactly one signotope");
    }
    let rec = records.pop().unwrap();
    let header = rec
        .comments
        .iter()
        .rev()
        .find(|c| c.contains("k="))
        .ok_or_else(|| Error::Input("missing `# k=` header".into()))?;
    let (mut k, mut fliples, mut rotations) = (None, Vec::new(), 0);
    for field in header.trim_start_matches('#').split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| Error::Input(format!("bad header field {field:?}")))?;
        match key {
            "k" => k = Some(value.parse().map_err(|_| Error::Input(format!("bad k {value:?}")))?),
            "I*" | "J*" => fliples.push(value.parse()?),
            "rot" => rotations = value.parse().map_err(|_| Error::Input(format!("bad rot {value:?}")))?,
            _ => return input(format!("unknown header field {key:?}")),
        }
    }
    let k = k.ok_or_else(|| Error::Input("header lacks k".into()))?;
    Ok(ExtensionCertificate { extended: Signotope::new(rec.map)?, k, fliples, rotations })
}

fn verify(original: &Path, certificate: &Path, pair: Option<(Subset, Subset)>, set: Option<Subset>) -> Result<Outcome> {
    let s = read_signotope(original)?;
    let cert = parse_certificate(&fs::read_to_string(certificate)?)?;
    let prescribed = match (pair, set) {
        (Some((i, j)), None) => vec![i, j],
        (None, Some(i)) => vec![i],
        (None, None) => cert.fliples.iter().map(|f| f.delete(cert.k)).collect(),
        (Some(_), Some(_)) => return input("give either --pair or --set"),
    };
    let check = verify_extension(&s, &prescribed, &cert);
    if check.ok() {
        Ok(Outcome::yes("ok\n"))
    } else {
        Ok(Outcome::answer(lines(check.reasons.iter().map(|r| format!("fail: {r}"))), false))
    }
}

fn encode(args: EncodeArgs, output: Option<&Path>) -> Result<Outcome> {
    let model = if let Some(file) = &args.extend {
        let (i, j) = args.pair.expect("clap enforces --pair");
        encode_extendability(&read_signotope(file)?, i, j)?
    } else {
        let (Some(r), Some(n)) = (args.r, args.n) else {
            return input("encode needs -r and -n, or --extend with --pair");
        };
        let opts = EnumOptions {
            packet_types: args.packet_types,
            fliple_vars: args.fliples,
            fliple_count: args.fliple_count,
            required_fliples: args.require.clone(),
        };
        let mut m = encode_enumeration(r, n, &opts)?;
        if args.structural {
            let lower = args.lower.as_ref().map(read_signotope).transpose()?;
            add_structural(&mut m, lower.as_ref())?;
        }
        m
    };
    let mut text = Vec::new();
    write_model(&mut text, &model)?;
    if let Some(out) = output {
        let mut vars = Vec::new();
        write_vars(&mut vars, &model)?;
        let mut path = out.as_os_str().to_owned();
        path.push(".vars");
        fs::write(path, vars)?;
    }
    Ok(Outcome::yes(String::from_utf8(text).expect("DIMACS is ASCII")))
}

fn solve_dimacs(file: &Path) -> i32 {
    let parsed = fs::read_to_string(file).map_err(Error::from).and_then(|t| parse_dimacs(&t));
    let (num_vars, clauses) = match parsed {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    match SatSolver::embedded().solve_clauses(num_vars, &clauses) {
        Ok(Verdict::Sat(a)) => {
            let mut out = String::from("s SATISFIABLE\nv");
            for (v, &b) in a.iter().enumerate().skip(1) {
                out += &format!(" {}", if b { v as i64 } else { -(v as i64) });
            }
            out += " 0\n";
            print!("{out}");
            10
        }
        Ok(Verdict::Unsat) => {
            println!("s UNSATISFIABLE");
            20
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
