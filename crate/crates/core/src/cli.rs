use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vandlrc::codec::{Code, ReceivedWord, RepairPath};
use vandlrc::format::{parse_family, parse_matrix, parse_word, write_codeword, write_family, write_matrix, write_word};
use vandlrc::gf::FieldContext;
use vandlrc::lrc::{
    build_parity_check, code_params_from_family, exact_min_distance, optimality_check, DistanceCheck, DEFAULT_BUDGET,
};
use vandlrc::setfam::{
    derandomized_family_with_target, family_size_upper_bound, greedy_family, random_family_with_target, rng_for,
    sample_subset, target_family_size, SetFamily,
};
use vandlrc::Error;

#[derive(Parser, Debug)]
#[command(
    name = "vandlrc",
    version,
    about = "Locally recoverable codes from Vandermonde parity-check matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a set family satisfying the union condition for distance d.
    GenFamily(GenArgs),
    /// Check a family's union condition; with --full, also the code's distance and optimality.
    Verify(VerifyArgs),
    /// Write the parity-check matrix of the code built from a family.
    BuildCode(BuildArgs),
    /// Exact minimum distance of the code with a given parity-check matrix.
    Distance(DistanceArgs),
    /// Encode a message (given or random) into a codeword.
    Encode(EncodeArgs),
    /// Erase positions of a codeword.
    Erase(EraseArgs),
    /// Fill erasures, locally when every repair group has at most one.
    Repair(CodeIoArgs),
    /// Fill erasures by solving the parity-check system.
    Decode(CodeIoArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Random,
    Greedy,
    Derandomized,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    r: usize,
    /// Design distance; the family is checked at depth t = floor((d-1)/2).
    #[arg(long)]
    d: usize,
    /// Code length; asks for n/(r+1) sets instead of the default target.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "random")]
    method: Method,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Attempts for random, candidate draws for greedy.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Family file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Design distance; defaults to 2t + 1 for the family's t.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    full: bool,
    /// Subset budget for the exact distance computation.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    budget: u64,
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// Family file.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DistanceArgs {
    /// Matrix file.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    budget: u64,
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Family file defining the code.
    #[arg(long)]
    code: PathBuf,
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Message symbols separated by spaces or commas; random from --seed if absent.
    #[arg(long)]
    msg: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EraseArgs {
    /// Word file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Positions to erase (0-based), separated by commas.
    #[arg(long, value_delimiter = ',', conflicts_with = "count")]
    at: Vec<usize>,
    /// Number of uniformly random positions to erase.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CodeIoArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Received word file.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments: exit 2.
    Usage(String),
    /// Verification failure, unrecoverable or inconsistent input: exit 1.
    Check(String),
    /// Generation failure: exit 3.
    Generation(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Generation(_) => 3,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Check(m) | Failure::Generation(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GenerationFailed { .. } => Failure::Generation(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

pub fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::GenFamily(a) => gen_family(a),
        Command::Verify(a) => verify(a),
        Command::BuildCode(a) => build_code(a),
        Command::Distance(a) => distance(a),
        Command::Encode(a) => encode(a),
        Command::Erase(a) => erase(a),
        Command::Repair(a) => repair(a),
        Command::Decode(a) => decode(a),
    }
}

/// Writes `content` to `out`, or to stdout when absent. Reports go to
/// stdout when a file is written and to stderr otherwise.
struct Sink {
    out: Option<PathBuf>,
}

impl Sink {
    fn emit(&self, content: &str) -> CliResult<()> {
        match &self.out {
            Some(p) => fs::write(p, content).map_err(|e| Failure::Check(format!("{}: {e}", p.display()))),
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }

    fn report(&self, line: &str) {
        if self.out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))
}

fn depth_for(d: usize) -> CliResult<usize> {
    let t = d.saturating_sub(1) / 2;
    if t < 2 {
        return Err(Failure::Usage(format!(
            "d = {d} gives t = floor((d-1)/2) = {t}; need t >= 2 (d >= 5)"
        )));
    }
    Ok(t)
}

fn field_for(q: u32) -> CliResult<Arc<FieldContext>> {
    FieldContext::new(q as u64)
        .map(Arc::new)
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn gen_family(a: GenArgs) -> CliResult<ExitCode> {
    let t = depth_for(a.d)?;
    field_for(a.q)?;
    if a.r + 2 < a.d {
        return Err(Failure::Usage(format!(
            "locality r = {} must be at least d - 2 = {}",
            a.r,
            a.d - 2
        )));
    }
    if a.r == 0 || a.r + 1 > a.q as usize {
        return Err(Failure::Usage(format!(
            "need 1 <= r and r + 1 <= q, got q = {}, r = {}",
            a.q, a.r
        )));
    }
    let requested = match a.n {
        Some(n) if n == 0 || n % (a.r + 1) != 0 => {
            return Err(Failure::Usage(format!("r + 1 = {} must divide n = {n}", a.r + 1)));
        }
        Some(n) => Some(n / (a.r + 1)),
        None => None,
    };
    let target = if t >= 3 {
        Some(target_family_size(a.q as u64, a.r as u64, t as u64)?)
    } else {
        None
    };
    let bound = family_size_upper_bound(a.q as u64, a.r as u64, t as u64)?;
    let start = Instant::now();
    let family = match a.method {
        Method::Random => {
            let m = requested
                .or(target.map(|m| m as usize))
                .ok_or_else(|| Failure::Usage("random construction needs t >= 3 (d >= 7) or an explicit --n".into()))?;
            let attempts =
                u32::try_from(a.budget.unwrap_or(10)).map_err(|_| Failure::Usage("budget too large".into()))?;
            random_family_with_target(a.q, a.r, t, m, a.seed, attempts)?
        }
        Method::Greedy => {
            let f = greedy_family(a.q, a.r, t, a.budget.unwrap_or(20_000), a.seed)?;
            match requested {
                Some(m) if f.m() < m => {
                    return Err(Failure::Generation(format!(
                        "greedy search kept {} of the requested {m} sets",
                        f.m()
                    )));
                }
                Some(m) => f.subfamily(&(0..m).collect::<Vec<_>>()),
                None => f,
            }
        }
        Method::Derandomized => {
            let m = match requested {
                Some(m) => m,
                None => vandlrc::setfam::derandomized_target(a.q, a.r, t)?,
            };
            let (f, report) = derandomized_family_with_target(a.q, a.r, t, m).map_err(|e| match e {
                Error::InvalidParameters(m) => Failure::Usage(m),
                other => other.into(),
            })?;
            if f.m() < m {
                return Err(Failure::Generation(format!(
                    "{} of the requested {m} sets survived violation removal (estimate {:.4})",
                    f.m(),
                    report.final_estimate
                )));
            }
            f
        }
    };
    let elapsed = start.elapsed();
    if !family.passes() {
        return Err(Failure::Generation("generated family fails the union condition".into()));
    }
    let sink = Sink { out: a.out };
    sink.emit(&write_family(&family))?;
    sink.report(&format!("m = {}", family.m()));
    match target {
        Some(m) => sink.report(&format!("target = {m}")),
        None => sink.report("target = n/a (t < 3)"),
    }
    sink.report(&format!("upper bound = {bound}"));
    sink.report(&format!("method = {:?}", a.method).to_lowercase());
    sink.report(&format!("seed = {}", a.seed));
    sink.report(&format!("wall time = {:.3} s", elapsed.as_secs_f64()));
    Ok(ExitCode::SUCCESS)
}

fn load_family(path: &Path, d: Option<usize>) -> CliResult<(SetFamily, usize)> {
    let family = parse_family(&read(path)?).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))?;
    let d = d.unwrap_or(2 * family.t() + 1);
    let t = depth_for(d)?;
    let family = family.with_t(t)?;
    Ok((family, d))
}

fn verify(a: VerifyArgs) -> CliResult<ExitCode> {
    let (family, d) = load_family(&a.input, a.d)?;
    let violations = family.verify_union_condition();
    if let Some(first) = violations.first() {
        println!(
            "FAIL union condition (t = {}): {} violation(s)",
            family.t(),
            violations.len()
        );
        println!("violation {first}");
        return Ok(ExitCode::from(1));
    }
    println!("PASS union condition (t = {}, m = {})", family.t(), family.m());
    if !a.full {
        return Ok(ExitCode::SUCCESS);
    }
    let field = field_for(family.q())?;
    let h = build_parity_check(field.clone(), &family, d)?;
    match h.verify_distance_at_least(d) {
        DistanceCheck::Pass => println!("PASS every {} columns independent", d - 1),
        DistanceCheck::Dependent(w) => {
            println!("FAIL dependent columns {}", join(&w));
            return Ok(ExitCode::from(1));
        }
    }
    let params = code_params_from_family(field.clone(), &family, d)?;
    println!("n = {}, k = {}, r = {}, d >= {}", params.n, params.k, params.r, d);
    let actual = match exact_min_distance(&field, h.matrix(), a.budget as u128) {
        Ok(md) => {
            println!("minimum distance = {} (witness {})", md.distance, join(&md.witness));
            md.distance
        }
        Err(Error::BudgetExceeded { required, .. }) => {
            // d <= bound always, so a bound equal to d pins the distance
            let v = optimality_check(&params, d)?;
            if v.bound_value != d as i64 {
                println!("minimum distance undetermined: {required} subsets exceed the budget");
                return Ok(ExitCode::from(1));
            }
            println!("minimum distance = {d} (lower bound meets the upper bound)");
            d
        }
        Err(e) => return Err(e.into()),
    };
    let verdict = optimality_check(&params, actual)?;
    println!("{verdict}");
    Ok(if verdict.is_optimal() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn build_code(a: BuildArgs) -> CliResult<ExitCode> {
    let (family, d) = load_family(&a.input, a.d)?;
    let field = field_for(family.q())?;
    let code = Code::from_family(field, &family, d)?;
    let sink = Sink { out: a.out };
    sink.emit(&write_matrix(code.parity_check().matrix(), family.q()))?;
    let p = code.params();
    sink.report(&format!(
        "n = {}, k = {}, r = {}, d = {}, rows = {}",
        p.n,
        p.k,
        p.r,
        p.d,
        p.m + p.d - 2
    ));
    Ok(ExitCode::SUCCESS)
}

fn distance(a: DistanceArgs) -> CliResult<ExitCode> {
    let (q, h) = parse_matrix(&read(&a.input)?).map_err(|e| Failure::Check(format!("{}: {e}", a.input.display())))?;
    let field = field_for(q)?;
    let md = exact_min_distance(&field, &h, a.budget as u128)?;
    println!("d = {}", md.distance);
    println!("witness = {}", join(&md.witness));
    Ok(ExitCode::SUCCESS)
}

fn load_code(a: &CodeArgs) -> CliResult<Code> {
    let (family, d) = load_family(&a.code, a.d)?;
    let field = field_for(family.q())?;
    Ok(Code::from_family(field, &family, d)?)
}

fn encode(a: EncodeArgs) -> CliResult<ExitCode> {
    let code = load_code(&a.code)?;
    let field = code.field().clone();
    let message = match &a.msg {
        Some(text) => {
            let vals = text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u64>()
                        .map_err(|_| Failure::Usage(format!("invalid message symbol `{s}`")))
                })
                .collect::<CliResult<Vec<u64>>>()?;
            if vals.len() != code.k() {
                return Err(Failure::Usage(format!(
                    "message has {} symbols, the code needs k = {}",
                    vals.len(),
                    code.k()
                )));
            }
            vals.into_iter()
                .map(|v| field.elem(v).map_err(|e| Failure::Usage(e.to_string())))
                .collect::<CliResult<Vec<_>>>()?
        }
        None => {
            use rand::Rng;
            let mut rng = rng_for(a.seed, 0);
            (0..code.k())
                .map(|_| field.elem(rng.gen_range(0..field.order() as u64)).expect("below q"))
                .collect()
        }
    };
    let cw = code.encode(&message)?;
    let sink = Sink { out: a.out };
    sink.emit(&write_codeword(&cw, field.order()))?;
    sink.report(&format!("encoded k = {} symbols into n = {}", code.k(), code.n()));
    Ok(ExitCode::SUCCESS)
}

fn erase(a: EraseArgs) -> CliResult<ExitCode> {
    let (q, mut word) =
        parse_word(&read(&a.input)?).map_err(|e| Failure::Check(format!("{}: {e}", a.input.display())))?;
    let positions: Vec<usize> = match a.count {
        Some(c) if c > word.len() => {
            return Err(Failure::Usage(format!("cannot erase {c} of {} positions", word.len())));
        }
        Some(c) => sample_subset(&mut rng_for(a.seed, 0), word.len() as u32, c)
            .into_iter()
            .map(|p| p as usize)
            .collect(),
        None => a.at.clone(),
    };
    if let Some(&p) = positions.iter().find(|&&p| p >= word.len()) {
        return Err(Failure::Usage(format!(
            "position {p} is out of range for length {}",
            word.len()
        )));
    }
    word.erase(&positions)?;
    let sink = Sink { out: a.out };
    sink.emit(&write_word(&word, q))?;
    sink.report(&format!("erased {}", join(&word.erasures())));
    Ok(ExitCode::SUCCESS)
}

fn load_word(code: &Code, path: &Path) -> CliResult<ReceivedWord> {
    let (q, word) = parse_word(&read(path)?).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))?;
    if q != code.field().order() {
        return Err(Error::FieldMismatch {
            expected: code.field().order(),
            actual: q,
        }
        .into());
    }
    Ok(word)
}

fn repair(a: CodeIoArgs) -> CliResult<ExitCode> {
    let code = load_code(&a.code)?;
    let word = load_word(&code, &a.input)?;
    let outcome = code.repair(&word).map_err(unrecoverable)?;
    let sink = Sink { out: a.out };
    sink.emit(&write_codeword(&outcome.codeword, code.field().order()))?;
    let path = match outcome.path {
        RepairPath::None => "none",
        RepairPath::Local => "local",
        RepairPath::Global => "global",
    };
    sink.report(&format!("path = {path}, read {} symbols", outcome.symbols_read));
    Ok(ExitCode::SUCCESS)
}

fn decode(a: CodeIoArgs) -> CliResult<ExitCode> {
    let code = load_code(&a.code)?;
    let word = load_word(&code, &a.input)?;
    let cw = code.erasure_decode(&word).map_err(unrecoverable)?;
    let sink = Sink { out: a.out };
    sink.emit(&write_codeword(&cw, code.field().order()))?;
    sink.report(&format!("decoded {} erasures", word.erasures().len()));
    Ok(ExitCode::SUCCESS)
}

fn unrecoverable(e: Error) -> Failure {
    match e {
        Error::Unrecoverable { erasures } => {
            Failure::Check(format!("unrecoverable: {erasures} erasures admit several completions"))
        }
        Error::Inconsistent => Failure::Check("inconsistent: the received symbols fit no codeword".into()),
        other => other.into(),
    }
}

fn join(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn depth_rejects_small_d() {
        assert!(matches!(depth_for(4), Err(Failure::Usage(_))));
        assert_eq!(depth_for(5).unwrap(), 2);
        assert_eq!(depth_for(8).unwrap(), 3);
    }

    #[test]
    fn erase_positions_parse_with_commas() {
        let cli = Cli::try_parse_from(["vandlrc", "erase", "--in", "w.txt", "--at", "1,4,9"]).unwrap();
        match cli.command {
            Command::Erase(a) => assert_eq!(a.at, vec![1, 4, 9]),
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from(["vandlrc", "erase", "--in", "w", "--at", "1", "--count", "2"]).is_err());
    }

    #[test]
    fn failures_map_to_exit_codes() {
        let gen: Failure = Error::GenerationFailed {
            attempts: 1,
            reason: "x".into(),
        }
        .into();
        assert!(matches!(gen, Failure::Generation(_)));
        assert!(matches!(Failure::from(Error::Inconsistent), Failure::Check(_)));
        assert_eq!(join(&[0, 3]), "{0,3}");
    }
}
