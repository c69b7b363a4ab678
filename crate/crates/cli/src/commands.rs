use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fewnomial_core::cyclofactor::three_part_split_with;
use fewnomial_core::mahler::{lehmer_gate_cofactor, mahler_bivariate, mahler_univariate, LehmerVerdict};
use fewnomial_core::teichmuller::{
    build_gt, ct_classes, enumerate_script_t, exponent_system_match, fmv_closure, fmv_seed,
    multiplicity_witness, script_t_from_classification, DEFAULT_CLOSURE_CAP,
};
use fewnomial_core::whitehead::{
    build_fw, n_threshold_whitehead, trace_poly, x2p1_structure, FillingSlope,
};
use fewnomial_core::zfactor::{is_irreducible_z, pattern_certificate, Certificate};
use fewnomial_core::{cyclotomic_part, factor_z, Error, FactorConfig, IntPoly, MahlerEstimate, MahlerMethod};
use rayon::prelude::*;
use serde::Serialize;

use crate::parse::{parse_bivar, parse_poly, ParseError};
use crate::report::*;

/// Primes tried for a degree-pattern certificate when lifting is out of reach.
const PATTERN_PRIMES: usize = 40;

#[derive(Parser, Debug)]
#[command(name = "fewnomial", version, about = "Exact tools for sparse integer polynomial families")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "FEWNOMIAL_THREADS")]
    pub threads: Option<usize>,
    /// Largest subset size tried during factor recombination.
    #[arg(long, global = true, env = "FEWNOMIAL_RECOMB_BUDGET")]
    pub recomb_budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// F^W_{m,n}, its x^2+1 structure and the trace polynomial T_{m,n}.
    Whitehead {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// G^T_{a,b}: predicted and observed cyclotomic part, witnesses, Lehmer gate.
    Teich {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Three-part split and full factorization over the integers.
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Mahler measure of a polynomial in x, or in x and y with --bivariate.
    Mahler {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        bivariate: bool,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Modification closure of the built-in factored seed.
    FmvClosure,
    /// Parameter sweeps.
    Sweep {
        #[command(subcommand)]
        family: SweepFamily,
    },
    /// The finite set of exceptional triples (a0, b0, n0).
    ScriptT,
}

#[derive(Subcommand, Debug)]
pub enum SweepFamily {
    Whitehead(SweepWhitehead),
}

#[derive(Args, Debug)]
pub struct SweepWhitehead {
    /// Comma-separated odd values of m.
    #[arg(long, value_delimiter = ',', required = true)]
    pub m_list: Vec<u64>,
    #[arg(long)]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    pub format: SweepFormat,
    /// Leave the `ms` column empty so output is byte-for-byte reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Json,
}

/// Failure of a subcommand before a report could be produced.
#[derive(Debug)]
pub enum Failure {
    Parse(ParseError),
    Core(Error),
    Io(std::io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Core(e) => match e {
                Error::PreconditionViolation(_)
                | Error::ZeroInput
                | Error::ZeroPolynomial
                | Error::MalformedCandidate(_) => 2,
                Error::RecombinationOverflow { .. }
                | Error::ConvergenceFailure(_)
                | Error::SingularGrid
                | Error::ClosureBudgetExceeded(_) => 3,
                Error::StructureViolation(_) => 4,
                _ => 1,
            },
            Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(e) => e.fmt(f),
            Failure::Core(e) => e.fmt(f),
            Failure::Io(e) => e.fmt(f),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome<T> = Result<(Status, T), Failure>;

pub fn config(cli: &Cli) -> FactorConfig {
    let mut cfg = FactorConfig::default();
    if let Some(b) = cli.recomb_budget {
        cfg.max_subset = b;
    }
    cfg
}

fn measure_json(m: &MahlerEstimate) -> MeasureJson {
    MeasureJson {
        value: m.value,
        error_bound: m.error_bound,
        method: match m.method {
            MahlerMethod::Roots => "roots",
            MahlerMethod::TorusQuadrature => "torus_quadrature",
            MahlerMethod::Cyclotomic => "cyclotomic",
        }
        .into(),
    }
}

fn irreducibility(p: &IntPoly, cfg: &FactorConfig) -> IrreducibilityJson {
    let status = |s: &str, m: &str, primes: Vec<u64>| IrreducibilityJson {
        status: s.into(),
        method: m.into(),
        primes,
    };
    if p.degree().unwrap_or(0) > cfg.max_lift_degree {
        return match pattern_certificate(p, PATTERN_PRIMES) {
            Some(primes) => status("irreducible", "degree_patterns", primes),
            None => status("incomplete", "degree_patterns", Vec::new()),
        };
    }
    match is_irreducible_z(p, cfg) {
        Ok(r) => {
            let verdict = if r.irreducible { "irreducible" } else { "reducible" };
            match r.certificate {
                Certificate::Trivial => status(verdict, "trivial", Vec::new()),
                Certificate::IrreducibleModPrime(q) => status(verdict, "irreducible_mod_prime", vec![q]),
                Certificate::DegreePatterns(qs) => status(verdict, "degree_patterns", qs),
                Certificate::FullFactorization => status(verdict, "full_factorization", Vec::new()),
            }
        }
        Err(Error::RecombinationOverflow { .. }) => status("incomplete", "recombination_overflow", Vec::new()),
        Err(e) => status("incomplete", &e.to_string(), Vec::new()),
    }
}

fn irreducibility_status(j: &IrreducibilityJson) -> Status {
    match j.status.as_str() {
        "incomplete" => Status::Incomplete,
        _ => Status::Ok,
    }
}

pub fn whitehead(m: u64, n: u64, cfg: &FactorConfig) -> Outcome<WhiteheadOut> {
    let slope = FillingSlope::new(m, n);
    if !slope.is_admissible() {
        return Err(Error::PreconditionViolation(format!(
            "slope {m}/{n} needs m odd and gcd(m, n) = 1"
        ))
        .into());
    }
    let fw = build_fw(m, n);
    let (cyclo, _) = cyclotomic_part(&fw);
    let mult = cyclo.iter().find(|(i, _)| *i == 4).map_or(0, |&(_, k)| k);
    let (quotient, witness, mut violation) = match x2p1_structure(m, n) {
        Ok((q, w)) => (q, Some((w.re.to_string(), w.im.to_string())), None),
        Err(Error::StructureViolation(msg)) => {
            let q = fw.divrem(&IntPoly::from_i64(&[1, 0, 1]))?.0;
            (q, None, Some(msg))
        }
        Err(e) => return Err(e.into()),
    };
    let t = trace_poly(m, n);
    let expected = (2 * n + m - 1) as usize;
    if t.degree() != Some(expected) && violation.is_none() {
        violation = Some(format!("deg T_{{{m},{n}}} is {:?}, expected {expected}", t.degree()));
    }
    let irr = irreducibility(&quotient, cfg);
    if irr.status == "reducible" && violation.is_none() {
        violation = Some(format!("F^W_{{{m},{n}}}/(x^2+1) is reducible"));
    }
    let status = if violation.is_some() {
        Status::StructureViolation
    } else {
        irreducibility_status(&irr)
    };
    Ok((
        status,
        WhiteheadOut {
            m,
            n,
            k: 4 * n + m,
            fw: (&fw).into(),
            cyclotomic: cyclo,
            x2p1_multiplicity: mult,
            quotient: (&quotient).into(),
            witness,
            trace_poly: (&t).into(),
            trace_field_degree: expected,
            quotient_irreducibility: irr,
            n_threshold: n_threshold_whitehead(m).to_string(),
            violation,
        },
    ))
}

pub fn teich(a: u64, b: u64, cfg: &FactorConfig) -> Outcome<TeichOut> {
    if a == 0 || b == 0 {
        return Err(Error::PreconditionViolation("a and b must be positive".into()).into());
    }
    let gt = build_gt(a, b);
    let predicted: Vec<PredictedJson> = ct_classes(a, b)
        .iter()
        .map(|c| PredictedJson {
            case: format!("{:?}", c.case),
            modulus: c.modulus,
            d: c.d,
            index: c.index(),
        })
        .collect();
    let (observed, cofactor) = cyclotomic_part(&gt);
    let mut want: Vec<u64> = predicted.iter().map(|p| p.index).collect();
    want.sort_unstable();
    want.dedup();
    let got: Vec<u64> = observed.iter().map(|o| o.0).collect();
    let matches = want == got && observed.iter().all(|o| o.1 == 1);
    let witnesses = observed
        .iter()
        .map(|&(n, _)| {
            let r = multiplicity_witness(a, b, n)?;
            Ok(WitnessJson { n, nonzero: !r.is_zero(), remainder: (&r).into() })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let reciprocal = cofactor.is_reciprocal()?;
    let cyclotomic_free = cyclotomic_part(&cofactor).0.is_empty();
    let irr = irreducibility(&cofactor, cfg);
    let gate = lehmer_gate_cofactor(&cofactor)?;
    let mut violation = None;
    if !matches {
        violation = Some(format!("observed cyclotomic part {observed:?} differs from prediction {want:?}"));
    } else if a != b && !reciprocal {
        violation = Some("non-cyclotomic cofactor is not reciprocal".into());
    } else if witnesses.iter().any(|w| !w.nonzero) {
        violation = Some("a cyclotomic factor is repeated".into());
    }
    let status = if violation.is_some() {
        Status::StructureViolation
    } else {
        irreducibility_status(&irr)
    };
    Ok((
        status,
        TeichOut {
            a,
            b,
            gt: (&gt).into(),
            predicted,
            observed,
            matches_prediction: matches,
            witnesses,
            cofactor: (&cofactor).into(),
            cofactor_reciprocal: reciprocal,
            cofactor_cyclotomic_free: cyclotomic_free,
            cofactor_irreducibility: irr,
            lehmer: LehmerJson {
                measure: measure_json(&gate.measure),
                threshold: gate.threshold,
                verdict: match gate.verdict {
                    LehmerVerdict::ConditionallyIrreducible => "conditionally_irreducible",
                    LehmerVerdict::Inconclusive => "inconclusive",
                }
                .into(),
            },
            violation,
        },
    ))
}

pub fn factor(text: &str, cfg: &FactorConfig) -> Outcome<FactorOut> {
    let p = parse_poly(text)?;
    let parts = three_part_split_with(&p, cfg)?;
    let mut fz = factor_z(&p, cfg)?;
    fz.factors.sort_by(|x, y| x.0.canonical_cmp(&y.0));
    Ok((
        Status::Ok,
        FactorOut {
            poly: (&p).into(),
            unit: parts.unit,
            content: parts.content.to_string(),
            cyclotomic: parts.cyclotomic.clone(),
            reciprocal_noncyclotomic: parts
                .reciprocal_noncyclotomic
                .iter()
                .map(|(f, k)| (f.into(), *k))
                .collect(),
            nonreciprocal_part: (&parts.nonreciprocal_part).into(),
            factors: fz.factors.iter().map(|(f, k)| (f.into(), *k)).collect(),
        },
    ))
}

pub fn mahler(text: &str, bivariate: bool, grid: usize, tol: f64) -> Outcome<MahlerOut> {
    let (m, grid) = if bivariate {
        (mahler_bivariate(&parse_bivar(text)?, grid)?, Some(grid))
    } else {
        (mahler_univariate(&parse_poly(text)?, tol)?, None)
    };
    Ok((Status::Ok, MahlerOut { bivariate, measure: measure_json(&m), grid }))
}

pub fn fmv() -> Outcome<FmvOut> {
    let closure = fmv_closure(&fmv_seed(), DEFAULT_CLOSURE_CAP)?;
    let mut members = Vec::new();
    for s in &closure.members {
        if s.poly.len() != 5 || s.poly.positive_count() != 2 || s.poly.negative_count() != 3 {
            continue;
        }
        let rep = exponent_system_match(&s.poly)?;
        members.push(PatternMemberJson {
            poly: (&s.poly).into(),
            factor_pair: ((&s.factor_pair.0).into(), (&s.factor_pair.1).into()),
            systems: rep.systems.len(),
            nonzero_ab: rep.has_nonzero_solution(),
        });
    }
    let status = if members.iter().any(|m| m.nonzero_ab) {
        Status::StructureViolation
    } else {
        Status::Ok
    };
    Ok((
        status,
        FmvOut {
            j: closure.j,
            size: closure.members.len(),
            sizes: closure.sizes.clone(),
            pattern_members: members,
        },
    ))
}

pub fn script_t() -> Outcome<ScriptTOut> {
    let triples = enumerate_script_t();
    let matches = triples == script_t_from_classification();
    let status = if matches { Status::Ok } else { Status::StructureViolation };
    Ok((status, ScriptTOut { triples, matches_classification: matches }))
}

fn sweep_row(m: u64, n: u64, cfg: &FactorConfig, timing: bool) -> SweepRow {
    let start = Instant::now();
    let (deg, cyclotomic, verdict) = match whitehead(m, n, cfg) {
        Ok((status, out)) => {
            let cyc = out
                .cyclotomic
                .iter()
                .map(|&(i, k)| if k == 1 { i.to_string() } else { format!("{i}^{k}") })
                .collect::<Vec<_>>()
                .join(";");
            let verdict = match status {
                Status::StructureViolation => "structure_violation".to_string(),
                _ => out.quotient_irreducibility.status,
            };
            (out.fw.degree.unwrap_or(0), cyc, verdict)
        }
        Err(e) => (0, String::new(), format!("error: {e}")),
    };
    let ms = timing.then(|| start.elapsed().as_millis() as u64);
    SweepRow { m, n, deg, cyclotomic, verdict, ms }
}

/// Admissible `(m, n)` pairs in input order, each row computed in parallel.
pub fn sweep_whitehead(args: &SweepWhitehead, cfg: &FactorConfig) -> Outcome<SweepOut> {
    let pairs: Vec<(u64, u64)> = args
        .m_list
        .iter()
        .flat_map(|&m| (1..=args.n_max).map(move |n| (m, n)))
        .filter(|&(m, n)| FillingSlope::new(m, n).is_admissible())
        .collect();
    let rows: Vec<SweepRow> = pairs
        .par_iter()
        .map(|&(m, n)| sweep_row(m, n, cfg, !args.no_timing))
        .collect();
    let status = rows.iter().fold(Status::Ok, |s, r| {
        s.worst(match r.verdict.as_str() {
            "structure_violation" | "reducible" => Status::StructureViolation,
            "irreducible" => Status::Ok,
            _ => Status::Incomplete,
        })
    });
    Ok((status, SweepOut { rows }))
}

pub fn write_csv(rows: &[SweepRow], out: &mut dyn Write) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["m", "n", "deg", "cyclotomic", "verdict", "ms"])
        .map_err(|e| Failure::Io(e.into()))?;
    for r in rows {
        w.write_record([
            r.m.to_string(),
            r.n.to_string(),
            r.deg.to_string(),
            r.cyclotomic.clone(),
            r.verdict.clone(),
            r.ms.map(|t| t.to_string()).unwrap_or_default(),
        ])
        .map_err(|e| Failure::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    command: &str,
    argv: &[String],
    inputs: serde_json::Value,
    (status, outputs): (Status, T),
    elapsed_ms: Option<u64>,
) -> Result<Status, Failure> {
    let report = RunReport { command: command.into(), argv: argv.to_vec(), inputs, status, outputs, elapsed_ms };
    serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(status)
}

fn poly_list(v: &[(PolyJson, impl std::fmt::Display)]) -> String {
    v.iter().map(|(p, k)| format!("({})^{k}", p.text)).collect::<Vec<_>>().join(" ")
}

fn text_report(out: &mut dyn Write, status: Status, body: &[(&str, String)]) -> Result<Status, Failure> {
    for (k, v) in body {
        writeln!(out, "{k}: {v}")?;
    }
    writeln!(out, "status: {}", serde_json::to_value(status).unwrap().as_str().unwrap_or(""))?;
    Ok(status)
}

fn execute(cli: &Cli, argv: &[String], out: &mut dyn Write) -> Result<Status, Failure> {
    let cfg = config(cli);
    let start = Instant::now();
    let ms = || Some(start.elapsed().as_millis() as u64);
    match &cli.command {
        Command::Whitehead { m, n } => {
            let r = whitehead(*m, *n, &cfg)?;
            if cli.json {
                return emit(out, "whitehead", argv, serde_json::json!({"m": m, "n": n}), r, ms());
            }
            let (s, o) = r;
            let body = [
                ("F^W", o.fw.text.clone()),
                ("multiplicity of x^2+1", o.x2p1_multiplicity.to_string()),
                ("quotient", o.quotient.text.clone()),
                ("witness", o.witness.as_ref().map_or("-".into(), |(re, im)| format!("{re}+{im}i"))),
                ("T", o.trace_poly.text.clone()),
                ("trace field degree", o.trace_field_degree.to_string()),
                ("quotient irreducibility", o.quotient_irreducibility.status.clone()),
                ("N(m)", o.n_threshold.clone()),
                ("violation", o.violation.clone().unwrap_or_else(|| "none".into())),
            ];
            text_report(out, s, &body)
        }
        Command::Teich { a, b } => {
            let r = teich(*a, *b, &cfg)?;
            if cli.json {
                return emit(out, "teich", argv, serde_json::json!({"a": a, "b": b}), r, ms());
            }
            let (s, o) = r;
            let pred: Vec<String> = o.predicted.iter().map(|p| format!("Phi_{} ({})", p.index, p.case)).collect();
            let obs: Vec<String> = o.observed.iter().map(|(n, k)| format!("Phi_{n}^{k}")).collect();
            let body = [
                ("G^T", if o.gt.coeffs.len() > 200 { format!("degree {}", o.gt.degree.unwrap_or(0)) } else { o.gt.text.clone() }),
                ("predicted C^T", pred.join(" ")),
                ("observed", obs.join(" ")),
                ("matches prediction", o.matches_prediction.to_string()),
                ("cofactor degree", o.cofactor.degree.unwrap_or(0).to_string()),
                ("cofactor reciprocal", o.cofactor_reciprocal.to_string()),
                ("cofactor cyclotomic-free", o.cofactor_cyclotomic_free.to_string()),
                ("cofactor", format!("{} via {} {:?}", o.cofactor_irreducibility.status, o.cofactor_irreducibility.method, o.cofactor_irreducibility.primes)),
                ("Mahler measure", format!("{:.10} ± {:.1e}", o.lehmer.measure.value, o.lehmer.measure.error_bound)),
                ("Lehmer gate", o.lehmer.verdict.clone()),
                ("violation", o.violation.clone().unwrap_or_else(|| "none".into())),
            ];
            text_report(out, s, &body)
        }
        Command::Factor { poly } => {
            let r = factor(poly, &cfg)?;
            if cli.json {
                return emit(out, "factor", argv, serde_json::json!({"poly": poly}), r, ms());
            }
            let (s, o) = r;
            let cyc: Vec<String> = o.cyclotomic.iter().map(|(n, k)| format!("Phi_{n}^{k}")).collect();
            let body = [
                ("poly", o.poly.text.clone()),
                ("unit", o.unit.to_string()),
                ("content", o.content.clone()),
                ("cyclotomic", cyc.join(" ")),
                ("reciprocal non-cyclotomic", poly_list(&o.reciprocal_noncyclotomic)),
                ("non-reciprocal part", o.nonreciprocal_part.text.clone()),
                ("factors", poly_list(&o.factors)),
            ];
            text_report(out, s, &body)
        }
        Command::Mahler { poly, bivariate, grid, tol } => {
            let r = mahler(poly, *bivariate, *grid, *tol)?;
            if cli.json {
                let inputs = serde_json::json!({"poly": poly, "bivariate": bivariate, "grid": grid, "tol": tol});
                return emit(out, "mahler", argv, inputs, r, ms());
            }
            let (s, o) = r;
            let body = [
                ("M", format!("{:.12}", o.measure.value)),
                ("error bound", format!("{:.3e}", o.measure.error_bound)),
                ("method", o.measure.method.clone()),
            ];
            text_report(out, s, &body)
        }
        Command::FmvClosure => {
            let r = fmv()?;
            if cli.json {
                return emit(out, "fmv-closure", argv, serde_json::json!({}), r, ms());
            }
            let (s, o) = r;
            let mut body = vec![
                ("J", o.j.to_string()),
                ("|S_J|", o.size.to_string()),
                ("sizes", format!("{:?}", o.sizes)),
            ];
            for m in &o.pattern_members {
                body.push(("member", format!("{}  nonzero (a,b): {}", m.poly.text, m.nonzero_ab)));
            }
            text_report(out, s, &body)
        }
        Command::ScriptT => {
            let r = script_t()?;
            if cli.json {
                return emit(out, "script-t", argv, serde_json::json!({}), r, ms());
            }
            let (s, o) = r;
            for (a, b, n) in &o.triples {
                writeln!(out, "{a} {b} {n}")?;
            }
            text_report(out, s, &[("matches classification", o.matches_classification.to_string())])
        }
        Command::Sweep { family: SweepFamily::Whitehead(args) } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cli.threads.unwrap_or(0))
                .build()
                .map_err(|e| Failure::Io(std::io::Error::other(e)))?;
            let r = pool.install(|| sweep_whitehead(args, &cfg))?;
            if cli.json || args.format == SweepFormat::Json {
                let inputs = serde_json::json!({"m_list": args.m_list, "n_max": args.n_max});
                let elapsed = if args.no_timing { None } else { ms() };
                return emit(out, "sweep-whitehead", argv, inputs, r, elapsed);
            }
            write_csv(&r.1.rows, out)?;
            Ok(r.0)
        }
    }
}

/// Runs the command line `argv` (program name first), writing the report to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli, &argv[1..], out) {
        Ok(s) => s.exit_code(),
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}
