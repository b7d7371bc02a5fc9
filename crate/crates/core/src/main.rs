use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lashlab::braidkit::{decompose_two_bridge, BraidWord, DEFAULT_ALPHA_PRIME};
use lashlab::contfrac::{cf_eval, cf_expand, montesinos_triple, montesinos_triple_cf, ExpansionStyle};
use lashlab::family::{self, FamilyParams, Format, Grid, TableEntry};
use lashlab::surgdesc::{h1_group, h1_order, Variant};
use lashlab::traintrack::{genus_formula_printed, lambda_alt, strand_count_model, switch_condition, weights};
use lashlab::twistcalc::{intersection_profile, stability_threshold, twist_family_slope, twist_matrix, twist_slope};
use lashlab::{
    ContinuedFraction, CurveClass, Error, Int, LashingParams, RationalSurgeryDiagram, Result, Slope, TwistWord,
};

#[derive(Parser)]
#[command(name = "lashlab", version, about = "Exact invariants of lashing families of knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Continued-fraction expansions and Montesinos forms of a slope, or evaluation of a coefficient list.
    Slope(SlopeArgs),
    /// Intersection numbers of K + nL with the three basis slopes.
    Profile(ProfileArgs),
    /// Least n from which the profile of K + nL stays distinct and non-zero.
    Threshold(ThresholdArgs),
    /// Train-track weights and the slope and genus polynomials built from them.
    Weights(WeightsArgs),
    /// Homology of a family surgery diagram, or of a diagram file.
    Surgery(SurgeryArgs),
    /// Split an alternating 3-braid into a two-bridge product.
    Decompose(DecomposeArgs),
    /// All invariants of one family member.
    Row(RowArgs),
    /// Invariants over a parameter grid.
    Table(TableArgs),
    /// Run the built-in fixture suite.
    Check(CheckArgs),
    /// Write a family surgery diagram to a file.
    Export(ExportArgs),
}

#[derive(Args)]
struct SlopeArgs {
    /// Slope `p/q`, an integer, or `inf`.
    #[arg(allow_hyphen_values = true, required_unless_present_any = ["cf", "twist"])]
    slope: Option<String>,
    /// Evaluate a comma-separated continued fraction instead.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["slope", "twist"])]
    cf: Option<String>,
    /// Evaluate a comma-separated twist word instead.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "slope")]
    twist: Option<String>,
}

#[derive(Args)]
struct PairArgs {
    /// Class of K as `mu,lambda`.
    #[arg(long = "K", allow_hyphen_values = true)]
    k: String,
    /// Class of L as `mu,lambda`.
    #[arg(long = "L", allow_hyphen_values = true)]
    l: String,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Largest n scanned.
    #[arg(long, default_value_t = 1000)]
    bound: u64,
}

#[derive(Args)]
struct WeightsArgs {
    /// Comma-separated twist parameters a_1,...,a_n.
    #[arg(long)]
    a: String,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, default_value_t = 1)]
    a1: u32,
    #[arg(long, default_value_t = 1)]
    a2: u32,
    #[arg(long, default_value_t = 1)]
    a3: u32,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    b1: u32,
    #[arg(long, default_value_t = 0)]
    b2: u32,
    /// Use the S1xS2 family instead of the S3 one.
    #[arg(long)]
    s1xs2: bool,
}

impl FamilyArgs {
    fn params(&self) -> FamilyParams {
        let variant = if self.s1xs2 { Variant::S1xS2 } else { Variant::S3 };
        FamilyParams {
            a1: self.a1,
            a2: self.a2,
            a3: self.a3,
            m: self.m,
            b1: self.b1,
            b2: self.b2,
            variant,
        }
    }
}

#[derive(Args)]
struct SurgeryArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Surgery coefficient on the lashing.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    r: String,
    /// Read the diagram from a file instead of building a family member.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Also write the diagram to this path.
    #[arg(long)]
    export: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Space-separated signed generator indices, e.g. `1 1 -2 1`.
    #[arg(long, allow_hyphen_values = true)]
    xi: String,
    /// Comma-separated positive entries of α′ (at least three).
    #[arg(long)]
    aprime: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Tsv,
    Kv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Tsv => Format::Tsv,
            OutFormat::Kv => Format::Kv,
        }
    }
}

#[derive(Args)]
struct RowArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value = "kv")]
    format: OutFormat,
}

#[derive(Args)]
struct TableArgs {
    /// Grid such as `a1=0..2;m=1,2;b1=1..5`, or `table1` / `table2`.
    #[arg(long, default_value = "table1")]
    grid: String,
    /// Default variant for grid points.
    #[arg(long)]
    s1xs2: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    format: OutFormat,
    /// Write to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Also list the fixture names being run.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    r: String,
    #[arg(long)]
    out: PathBuf,
}

fn parse_list<T: std::str::FromStr>(s: &str, sep: char) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(sep)
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

fn parse_class(s: &str) -> Result<CurveClass> {
    match parse_list::<Int>(s, ',')?.as_slice() {
        [mu, lambda] => CurveClass::new(mu.clone(), lambda.clone()),
        _ => Err(Error::Parse(format!("expected `mu,lambda`, got {s:?}"))),
    }
}

fn run_slope(args: &SlopeArgs) -> Result<String> {
    if let Some(cf) = &args.cf {
        let cf = ContinuedFraction::new(parse_list(cf, ',')?)?;
        return Ok(format!("cf: {cf}\nslope: {}\n", cf_eval(&cf)));
    }
    if let Some(t) = &args.twist {
        let w = TwistWord::new(parse_list(t, ',')?);
        let m = twist_matrix(&w);
        let [[a, b], [c, d]] = &m.0;
        return Ok(format!(
            "word: {}\nmatrix: [[{a}, {b}], [{c}, {d}]]\nslope: {}\n",
            w.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
            twist_slope(&w)
        ));
    }
    let s: Slope = args.slope.as_deref().unwrap_or_default().parse()?;
    let mut out = format!("slope: {s}\n");
    for (name, style) in [
        ("alternating", ExpansionStyle::AlternatingNonnegative),
        ("odd_length", ExpansionStyle::OddLength),
    ] {
        match cf_expand(&s, style) {
            Ok(cf) => out.push_str(&format!("{name}: {cf}\n")),
            Err(e) => out.push_str(&format!("{name}: n/a ({e})\n")),
        }
    }
    if let (Ok(t), Ok(c)) = (montesinos_triple(&s), montesinos_triple_cf(&s)) {
        out.push_str(&format!(
            "montesinos_nu: {}\nmontesinos_mu: {}\nmontesinos_lambda: {}\n",
            t.nu, t.mu, t.lambda
        ));
        out.push_str(&format!(
            "montesinos_mu_cf: {}\nmontesinos_lambda_cf: {}\n",
            c.neg_q, c.neg_p
        ));
    }
    Ok(out)
}

fn run_profile(args: &ProfileArgs) -> Result<String> {
    let (k, l) = (parse_class(&args.pair.k)?, parse_class(&args.pair.l)?);
    let n = Int::from(args.n);
    let p = intersection_profile(&k, &l, &n)?;
    let twisted = twist_family_slope(&k, &l, &n)?;
    Ok(format!(
        "class: {twisted}\nmu: {}\nlambda: {}\nnu: {}\ndistinct_nonzero: {}\nodd_entry: {}\n",
        p.mu,
        p.lambda,
        p.nu,
        p.is_distinct_nonzero(),
        p.has_odd_entry()
    ))
}

fn run_threshold(args: &ThresholdArgs) -> Result<String> {
    let (k, l) = (parse_class(&args.pair.k)?, parse_class(&args.pair.l)?);
    Ok(format!("threshold: {}\n", stability_threshold(&k, &l, args.bound)?))
}

fn run_weights(args: &WeightsArgs) -> Result<String> {
    let a: Vec<Int> = parse_list(&args.a, ',')?;
    let lp = LashingParams::new(a, args.m.into(), args.p.into(), args.q.into())?;
    let w = weights(&lp);
    let join = |v: &[Int]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let sw = switch_condition(&lp);
    let strands = strand_count_model(&lp).map_or_else(|| "n/a".into(), |s| s.to_string());
    Ok(format!(
        "x: {}\ny: {}\nx_n: {}\ny_n: {}\nlambda_alt: {}\ngenus_printed: {}\nswitch_holds: {}\nswitch_equality: {}\nstrand_model: {strands}\n",
        join(&w.xs),
        join(&w.ys),
        w.x_n(),
        w.y_n(),
        lambda_alt(&lp),
        genus_formula_printed(&lp),
        sw.holds,
        sw.equality
    ))
}

fn run_surgery(args: &SurgeryArgs) -> Result<String> {
    let r: Slope = args.r.parse()?;
    let diagram = match &args.file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            RationalSurgeryDiagram::from_text(&text)?
        }
        None => {
            let p = args.family.params();
            p.validate()?;
            p.diagram(&r)?
        }
    };
    if let Some(path) = &args.export {
        if args.file.is_some() {
            fs::write(path, diagram.to_text()).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
        } else {
            family::export(&args.family.params(), &r, path)?;
        }
    }
    Ok(format!(
        "components: {}\nh1_group: {}\nh1_order: {}\n",
        diagram.len(),
        h1_group(&diagram),
        h1_order(&diagram)
    ))
}

fn run_decompose(args: &DecomposeArgs) -> Result<String> {
    let xi = BraidWord::parse(3, &args.xi)?;
    let a_prime = match &args.aprime {
        Some(s) => parse_list(s, ',')?,
        None => DEFAULT_ALPHA_PRIME.to_vec(),
    };
    let d = decompose_two_bridge(&xi, &a_prime)?;
    let c = &d.certificate;
    let coeffs = |v: &Option<Vec<u32>>| {
        v.as_ref().map_or_else(
            || "n/a".into(),
            |v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
        )
    };
    Ok(format!(
        "xi: {xi}\ncase: {:?}\nalpha: {}\nomega: {}\nalpha_coeffs: {}\nomega_coeffs: {}\nidentity_holds: {}\nvalid: {}\n",
        c.case,
        d.alpha,
        d.omega,
        coeffs(&c.alpha_coeffs),
        coeffs(&c.omega_coeffs),
        c.identity_holds,
        c.is_valid()
    ))
}

fn run_row(args: &RowArgs) -> Result<String> {
    let r = family::row(&args.family.params())?;
    Ok(family::render(&[TableEntry::Row(r)], args.format.into()))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<String> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(text.to_string()),
    }
}

fn run_table(args: &TableArgs) -> Result<String> {
    let variant = if args.s1xs2 { Variant::S1xS2 } else { Variant::S3 };
    let grid = Grid::parse(&args.grid, variant)?;
    emit(&family::render(&family::table(&grid), args.format.into()), &args.out)
}

fn run_export(args: &ExportArgs) -> Result<String> {
    family::export(&args.family.params(), &args.r.parse()?, &args.out)?;
    Ok(format!("wrote {}\n", args.out.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Check(args) = &cli.command {
        let report = family::check();
        if args.verbose {
            let names: Vec<_> = report.fixtures.iter().map(|f| f.name).collect();
            println!("fixtures: {}", names.join(", "));
        }
        println!("{report}");
        return if report.passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        };
    }
    let result = match &cli.command {
        Command::Slope(a) => run_slope(a),
        Command::Profile(a) => run_profile(a),
        Command::Threshold(a) => run_threshold(a),
        Command::Weights(a) => run_weights(a),
        Command::Surgery(a) => run_surgery(a),
        Command::Decompose(a) => run_decompose(a),
        Command::Row(a) => run_row(a),
        Command::Table(a) => run_table(a),
        Command::Export(a) => run_export(a),
        Command::Check(_) => unreachable!("handled above"),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
