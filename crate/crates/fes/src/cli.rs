//! Command-line interface: evaluation, word products, relation export,
//! dimension tables, and prime-sweep verification.

use crate::evaluator::{catalog, eval_symbol, ZetaSymbol};
use crate::linalg;
use crate::modring::{first_primes, primes_in, MAX_PRIME};
use crate::relations::{self, Family, Relation};
use crate::sigcomp::parse_composition;
use crate::verify::{self, Status};
use crate::words::{shuffle, stuffle, x_to_y, y_to_x};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::io::Write;

/// Weight caps keeping the generation pipelines tractable.
const MAX_WEIGHT_POSITIVE: u32 = 12;
const MAX_WEIGHT_SIGNED: u32 = 8;

#[derive(Parser)]
#[command(
    name = "fes",
    version,
    about = "Finite Euler sums: exact evaluation, relations, dimensions, verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads for prime sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a (star) sum at primes, alongside any cataloged closed form
    Eval(EvalArgs),
    /// Stuffle product of two compositions
    Stuffle(PairArgs),
    /// Shuffle product of two compositions in the x-alphabet
    Shuffle(PairArgs),
    /// Generate and export relation families at one weight
    Relations(RelationsArgs),
    /// Dimension upper bounds for every weight up to a maximum
    Dim(DimArgs),
    /// Verify relations from a JSON export over a prime range
    Verify(VerifyArgs),
    /// Sweep a named value table over a prime range
    Table(TableArgs),
}

#[derive(Args)]
struct PrimeRangeArgs {
    /// Inclusive prime range "lo..hi"
    #[arg(long)]
    primes: Option<String>,
    /// Use the first N primes instead of a range
    #[arg(long, conflicts_with = "primes")]
    first: Option<usize>,
}

impl PrimeRangeArgs {
    fn resolve(&self) -> Result<Vec<u64>> {
        if let Some(n) = self.first {
            return Ok(first_primes(n));
        }
        match &self.primes {
            None => Ok(first_primes(20)),
            Some(text) => {
                let (lo, hi) = text
                    .split_once("..")
                    .ok_or_else(|| Error::BadArgument(format!("bad prime range {text:?}")))?;
                let lo: u64 = lo
                    .parse()
                    .map_err(|_| Error::BadArgument(format!("bad prime range {text:?}")))?;
                let hi: u64 = hi
                    .parse()
                    .map_err(|_| Error::BadArgument(format!("bad prime range {text:?}")))?;
                if hi >= MAX_PRIME {
                    return Err(Error::BadArgument(format!(
                        "primes above {MAX_PRIME} are unsupported"
                    )));
                }
                Ok(primes_in(lo, hi))
            }
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Composition, e.g. "2,1" or "2,-1,3" (negative parts are barred)
    #[arg(allow_hyphen_values = true)]
    comp: String,
    /// Evaluate the star variant
    #[arg(long)]
    star: bool,
    /// Superbity l: residues are taken mod p^l
    #[arg(long, default_value_t = 1)]
    superbity: u32,
    /// Multiply by p^j (the symbol p^j zeta)
    #[arg(long, default_value_t = 0)]
    p_power: u32,
    #[command(flatten)]
    range: PrimeRangeArgs,
}

#[derive(Args)]
struct PairArgs {
    #[arg(allow_hyphen_values = true)]
    left: String,
    #[arg(allow_hyphen_values = true)]
    right: String,
}

#[derive(Args)]
struct RelationsArgs {
    /// Weight (grade) of the generated relations
    #[arg(long)]
    weight: u32,
    #[arg(long, default_value_t = 1)]
    superbity: u32,
    /// Include barred indices (finite Euler sums rather than finite
    /// multiple zeta values)
    #[arg(long)]
    signed: bool,
    /// Comma-separated families (default: all applicable)
    #[arg(long)]
    families: Option<String>,
    /// Write the JSON export to this file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct DimArgs {
    #[arg(long)]
    max_weight: u32,
    #[arg(long, default_value_t = 1)]
    superbity: u32,
    #[arg(long)]
    signed: bool,
    #[arg(long)]
    families: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON file holding an array of relations (see `fes relations`)
    #[arg(long)]
    relation_file: std::path::PathBuf,
    #[command(flatten)]
    range: PrimeRangeArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Table name (see --list)
    #[arg(long, required_unless_present = "list")]
    name: Option<String>,
    /// List the available table names
    #[arg(long)]
    list: bool,
    /// Check the rows exactly as printed in the source tables; rows whose
    /// stored form is corrected are then expected to fail
    #[arg(long)]
    as_printed: bool,
    #[command(flatten)]
    range: PrimeRangeArgs,
}

/// Parse arguments from the process environment and run. Returns the
/// process exit code: 0 on success, 1 when a sweep refuted something, 2 on
/// usage or I/O errors.
pub fn run() -> i32 {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // may fail if a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn parse_families(text: &Option<String>, ell: u32) -> Result<Vec<Family>> {
    match text {
        None => Ok(Family::ALL.into_iter().filter(|f| f.supports(ell)).collect()),
        Some(t) => t.split(',').map(|s| Family::parse(s.trim())).collect(),
    }
}

fn check_weight_cap(w: u32, signed: bool) -> Result<()> {
    let cap = if signed { MAX_WEIGHT_SIGNED } else { MAX_WEIGHT_POSITIVE };
    if w == 0 || w > cap {
        return Err(Error::BadArgument(format!(
            "weight must be in 1..={cap} for {} mode",
            if signed { "signed" } else { "positive" }
        )));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Eval(args) => cmd_eval(args, cli.json),
        Cmd::Stuffle(args) => cmd_stuffle(args, cli.json),
        Cmd::Shuffle(args) => cmd_shuffle(args, cli.json),
        Cmd::Relations(args) => cmd_relations(args, cli.json),
        Cmd::Dim(args) => cmd_dim(args, cli.json),
        Cmd::Verify(args) => cmd_verify(args, cli.json),
        Cmd::Table(args) => cmd_table(args, cli.json),
    }
}

#[derive(Serialize)]
struct EvalOut {
    symbol: String,
    closed_form: Option<String>,
    values: Vec<EvalValue>,
}

#[derive(Serialize)]
struct EvalValue {
    p: u64,
    value: u64,
    closed_form_value: Option<u64>,
}

fn cmd_eval(args: &EvalArgs, json: bool) -> Result<bool> {
    let comp = parse_composition(&args.comp)?;
    let z = ZetaSymbol::new(comp, args.star, args.superbity, args.p_power)?;
    let cf = catalog::lookup(&z);
    let mut values = Vec::new();
    for p in args.range.resolve()? {
        if p < z.min_prime() {
            continue;
        }
        let value = eval_symbol(&z, p)?;
        let closed_form_value = match &cf {
            Some(cf) => Some(crate::evaluator::eval_closed_form(cf, p, z.ell)?),
            None => None,
        };
        values.push(EvalValue { p, value, closed_form_value });
    }
    let out = EvalOut {
        symbol: z.to_string(),
        closed_form: cf.as_ref().map(|c| c.to_string()),
        values,
    };
    if json {
        println!("{}", serde_json::to_string(&out)?);
    } else {
        match &out.closed_form {
            Some(cf) => println!("{}  [closed form: {cf}]", out.symbol),
            None => println!("{}  [no cataloged closed form]", out.symbol),
        }
        for v in &out.values {
            match v.closed_form_value {
                Some(cfv) => println!("p={:<6} {:<12} closed form: {}", v.p, v.value, cfv),
                None => println!("p={:<6} {}", v.p, v.value),
            }
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct ProductOut {
    left: String,
    right: String,
    terms: Vec<ProductTerm>,
}

#[derive(Serialize)]
struct ProductTerm {
    coeff: String,
    comp: Vec<i64>,
}

fn print_product(out: &ProductOut, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string(out)?);
    } else {
        for t in &out.terms {
            let comp = t
                .comp
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",");
            println!("{:>6} * ({comp})", t.coeff);
        }
    }
    Ok(())
}

fn cmd_stuffle(args: &PairArgs, json: bool) -> Result<bool> {
    let u = parse_composition(&args.left)?;
    let v = parse_composition(&args.right)?;
    let terms = stuffle(&u, &v)
        .iter()
        .map(|(w, c)| ProductTerm { coeff: c.to_string(), comp: w.as_i64s() })
        .collect();
    print_product(
        &ProductOut { left: u.to_string(), right: v.to_string(), terms },
        json,
    )?;
    Ok(true)
}

fn cmd_shuffle(args: &PairArgs, json: bool) -> Result<bool> {
    let u = parse_composition(&args.left)?;
    let v = parse_composition(&args.right)?;
    let mut terms = Vec::new();
    for (word, c) in shuffle(&y_to_x(&u), &y_to_x(&v)).iter() {
        terms.push(ProductTerm {
            coeff: c.to_string(),
            comp: x_to_y(word)?.as_i64s(),
        });
    }
    print_product(
        &ProductOut { left: u.to_string(), right: v.to_string(), terms },
        json,
    )?;
    Ok(true)
}

fn cmd_relations(args: &RelationsArgs, json: bool) -> Result<bool> {
    check_weight_cap(args.weight, args.signed)?;
    let families = parse_families(&args.families, args.superbity)?;
    let rels = relations::pipeline(args.weight, args.superbity, args.signed, &families)?;
    let text = serde_json::to_string_pretty(&rels)?;
    match &args.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
            f.write_all(b"\n")?;
            eprintln!("{} relations written to {}", rels.len(), path.display());
        }
        None => {
            if json {
                println!("{text}");
            } else {
                for r in &rels {
                    println!("{r}   [{}]", r.provenance);
                }
            }
        }
    }
    Ok(true)
}

fn cmd_dim(args: &DimArgs, json: bool) -> Result<bool> {
    check_weight_cap(args.max_weight.max(1), args.signed)?;
    let families = parse_families(&args.families, args.superbity)?;
    let dims = linalg::dimension_table(args.max_weight, args.superbity, args.signed, &families)?;
    if json {
        println!("{}", serde_json::to_string(&dims)?);
    } else {
        println!("weight  dim<=");
        for (w, d) in dims.iter().enumerate() {
            println!("{w:<7} {d}");
        }
    }
    Ok(true)
}

fn status_line(provenance: &str, status: Status, checked: usize, skipped: usize) -> String {
    let word = match status {
        Status::Verified => "verified",
        Status::Refuted => "REFUTED",
        Status::Vacuous => "vacuous",
    };
    format!("{word:<9} checked={checked:<5} skipped={skipped:<5} {provenance}")
}

fn cmd_verify(args: &VerifyArgs, json: bool) -> Result<bool> {
    let text = std::fs::read_to_string(&args.relation_file)?;
    let rels: Vec<Relation> = serde_json::from_str(&text)?;
    let primes = args.range.resolve()?;
    let reports = verify::verify_relations(&rels, &primes);
    let ok = reports.iter().all(|r| r.status != Status::Refuted);
    if json {
        println!("{}", serde_json::to_string(&reports)?);
    } else {
        for r in &reports {
            println!(
                "{}",
                status_line(&r.provenance, r.status, r.primes_checked.len(), r.primes_skipped.len())
            );
            for ce in &r.counterexamples {
                println!("    p={}: lhs={} rhs={}", ce.p, ce.lhs, ce.rhs);
            }
        }
    }
    Ok(ok)
}

fn cmd_table(args: &TableArgs, json: bool) -> Result<bool> {
    if args.list {
        for name in catalog::table_names() {
            println!("{name}");
        }
        return Ok(true);
    }
    let name = args.name.as_deref().expect("required_unless_present");
    let primes = args.range.resolve()?;
    let reports = verify::verify_table(name, &primes, !args.as_printed)?;
    let ok = reports.iter().all(|r| r.report.status != Status::Refuted);
    if json {
        println!("{}", serde_json::to_string(&reports)?);
    } else {
        for r in &reports {
            let mut flags = String::new();
            if r.corrected {
                flags.push_str(" [corrected]");
            }
            if r.conjectural {
                flags.push_str(" [conjectural]");
            }
            println!(
                "{}{flags}",
                status_line(
                    &r.label,
                    r.report.status,
                    r.report.primes_checked.len(),
                    r.report.primes_skipped.len()
                )
            );
        }
    }
    Ok(ok)
}
