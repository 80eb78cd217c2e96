//! The `motivecalc` command line.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use motivecalc_core::algebra::{LaurentPolynomial, RationalMatrix};
use motivecalc_core::geometry::{CellularVariety, Corr, KTheory, Theory};
use motivecalc_core::ktheory::grr_transform;
use motivecalc_core::measure::{
    class_of_chow, collapse, evaluate, ledger_check, mod_q_minus_1_check, Measure, VarLedger,
};
use motivecalc_core::motive::{nc_of, realize, realize_morphism, ChowMotive, OrbitMotive};
use motivecalc_core::schur::{is_schur_finite, kimura_witness, schur_cut, Partition, SchurFiniteness};
use motivecalc_core::zeta::{closed_form_check, zeta_equality_check, zeta_kapranov, EQUALITY_ORDER};

use crate::eval::{Category, Evaluator, Value};
use crate::expr::parse_expression;
use crate::report::{render_failure, Citation, Failure, Report};

const DEFAULT_BOUND: u32 = 4;
const FIELD_SIZES: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Parser, Debug)]
#[command(name = "motivecalc", version, about = "Exact computations with Chow and noncommutative motives of cellular varieties")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation order for zeta series.
    #[arg(long, global = true, value_name = "N")]
    order: Option<usize>,
    /// Search bound for partition sizes and finiteness witnesses.
    #[arg(long, global = true, value_name = "N")]
    bound: Option<u32>,
    /// JSON ledger of extra symbols and relations, merged with the built-ins.
    #[arg(long, global = true, value_name = "FILE")]
    ledger: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression such as `hom(M(P(1)), M(P(1)), orbit)`.
    Eval { expr: String },
    /// Dimension of a Hom space between two motives.
    Hom {
        source: String,
        target: String,
        #[arg(long, value_enum)]
        category: Option<CategoryArg>,
    },
    /// Compose orbit-category basis morphisms X -> Y -> Z and compare with
    /// the composite of their noncommutative realizations.
    Compose {
        x: String,
        y: String,
        z: String,
        /// Index of the basis morphism of Hom(X, Y); all if omitted.
        #[arg(long)]
        first: Option<usize>,
        /// Index of the basis morphism of Hom(Y, Z); all if omitted.
        #[arg(long)]
        second: Option<usize>,
    },
    /// Schur functors of motives.
    #[command(subcommand)]
    Schur(SchurCommand),
    /// Search for an even finite-dimensionality witness.
    Kimura { expr: String },
    /// Motivic measures of ledger symbols.
    #[command(subcommand)]
    Measure(MeasureCommand),
    /// Kapranov zeta function of a ledger symbol, optionally checked.
    Zeta(ZetaArgs),
    /// Inspect or verify the scissor-relation ledger.
    #[command(subcommand)]
    Ledger(LedgerCommand),
    /// The point-count measure does not factor through the noncommutative one.
    #[command(subcommand)]
    Nonfactor(NonfactorCommand),
    /// Run a built-in verification.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
    },
}

#[derive(Subcommand, Debug)]
enum SchurCommand {
    /// Apply S_λ to a motive; for a Chow motive, compare with its realization.
    Test { partition: String, expr: String },
}

#[derive(Subcommand, Debug)]
enum MeasureCommand {
    /// Evaluate measures on a symbol (all four by default).
    Eval {
        symbol: String,
        /// gs, nc, chi or sharp:Q; repeatable.
        #[arg(long = "measure")]
        measures: Vec<String>,
        /// Field size for the default point-count measure.
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
}

#[derive(Args, Debug)]
struct ZetaArgs {
    #[arg(long)]
    object: String,
    #[arg(long, default_value = "nc")]
    measure: String,
    #[arg(long, value_enum)]
    check: Option<ZetaCheck>,
}

#[derive(Subcommand, Debug)]
enum LedgerCommand {
    /// Print the ledger.
    Show,
    /// Check every relation under every measure.
    Check {
        /// Field sizes for the point-count measure; repeatable.
        #[arg(long)]
        q: Vec<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum NonfactorCommand {
    /// Compare point counts with the noncommutative class modulo q - 1.
    Demo {
        #[arg(long, default_value = "P1")]
        symbol: String,
        #[arg(long)]
        q: Vec<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CategoryArg {
    Chow,
    Orbit,
    Nc,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ZetaCheck {
    ZetaEquality,
    #[value(alias = "closedform")]
    ClosedForm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Grr,
    Comparison,
    SchurTransfer,
    ZetaEquality,
    Nonexample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let as_json = cli.json;
    match execute(&cli) {
        Ok(report) if report.failed => Outcome { code: 4, stdout: report.render(as_json), stderr: String::new() },
        Ok(report) => Outcome { code: 0, stdout: report.render(as_json), stderr: String::new() },
        Err(f) if as_json => Outcome { code: f.exit_code(), stdout: render_failure(&f, true), stderr: String::new() },
        Err(f) => Outcome { code: f.exit_code(), stdout: String::new(), stderr: render_failure(&f, false) },
    }
}

fn load_ledger(cli: &Cli) -> Result<VarLedger, Failure> {
    match &cli.ledger {
        None => Ok(VarLedger::builtin()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Precondition(format!("cannot read {}: {e}", path.display())))?;
            Ok(VarLedger::from_json_with_builtins(&text)?)
        }
    }
}

fn parse(text: &str) -> Result<crate::expr::Expr, Failure> {
    parse_expression(text).map_err(|e| Failure::Parse(format!("{e} in `{text}`")))
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let ledger = load_ledger(cli)?;
    let order = cli.order;
    let bound = cli.bound.unwrap_or(DEFAULT_BOUND);
    match &cli.command {
        Command::Eval { expr } => {
            let e = parse(expr)?;
            let mut ev = Evaluator::new(&ledger, order);
            let v = ev.eval(&e)?;
            let result = json!({ "expression": e.to_string(), "value": v.to_json() });
            Ok(Report::new("eval", result, format!("{e} = {v}")).cite(ev.citations()))
        }
        Command::Hom { source, target, category } => {
            let mut ev = Evaluator::new(&ledger, order);
            let a = ev.eval(&parse(source)?)?;
            let b = ev.eval(&parse(target)?)?;
            let category = category.map(|c| match c {
                CategoryArg::Chow => Category::Chow,
                CategoryArg::Orbit => Category::Orbit,
                CategoryArg::Nc => Category::NC,
            });
            let h = ev.hom(a, b, category)?;
            let v = Value::Hom(h);
            Ok(Report::new("hom", v.to_json(), format!("dim Hom = {v}")).cite(ev.citations()))
        }
        Command::Compose { x, y, z, first, second } => compose(&ledger, [x, y, z], *first, *second),
        Command::Schur(SchurCommand::Test { partition, expr }) => schur_test(&ledger, partition, expr),
        Command::Kimura { expr } => kimura(&ledger, expr, cli.bound.unwrap_or(6)),
        Command::Measure(MeasureCommand::Eval { symbol, measures, q }) => {
            let ms: Vec<Measure> = if measures.is_empty() {
                Measure::all(*q).to_vec()
            } else {
                measures.iter().map(|m| m.parse()).collect::<Result<_, _>>()?
            };
            let mut values = serde_json::Map::new();
            let mut lines = Vec::new();
            for m in &ms {
                let v = evaluate(&ledger, m, symbol)?;
                lines.push(format!("{m}({symbol}) = {v}"));
                values.insert(m.name(), serde_json::to_value(&v).expect("values serialize"));
            }
            let result = json!({ "symbol": symbol, "values": values });
            Ok(Report::new("measure eval", result, lines.join("\n")).cite([Citation::MotivicMeasure]))
        }
        Command::Zeta(args) => zeta(&ledger, args, order.unwrap_or(EQUALITY_ORDER)),
        Command::Ledger(LedgerCommand::Show) => {
            let result: Json = serde_json::from_str(&ledger.to_json()).expect("ledger JSON parses");
            let mut lines: Vec<String> = vec![format!("symbols: {}", ledger.symbols().collect::<Vec<_>>().join(", "))];
            lines.extend(ledger.relations().iter().map(|r| r.to_string()));
            Ok(Report::new("ledger show", result, lines.join("\n")).cite([Citation::LedgerRelations]))
        }
        Command::Ledger(LedgerCommand::Check { q }) => {
            let qs = if q.is_empty() { FIELD_SIZES.to_vec() } else { q.clone() };
            let mut measures = vec![Measure::GilletSoule, Measure::Noncommutative, Measure::HochschildEuler];
            for &q in &qs {
                if q < 2 {
                    return Err(Failure::Precondition(format!("field size {q} is below 2")));
                }
                measures.push(Measure::PointCount { q });
            }
            let mut checks = Vec::new();
            let mut lines = Vec::new();
            let mut failed = false;
            for m in &measures {
                let c = ledger_check(&ledger, m)?;
                failed |= !c.holds();
                lines.push(format!(
                    "{m}: {} relations, {}",
                    c.relations_checked,
                    if c.holds() { "all hold".to_string() } else { format!("{} fail", c.failures.len()) }
                ));
                for f in &c.failures {
                    lines.push(format!("  {}: {} != {}", f.relation, f.lhs, f.rhs));
                }
                checks.push(serde_json::to_value(&c).expect("checks serialize"));
            }
            let result = json!({ "holds": !failed, "checks": checks });
            Ok(Report::new("ledger check", result, lines.join("\n"))
                .cite([Citation::LedgerRelations, Citation::MotivicMeasure])
                .failed_if(failed))
        }
        Command::Nonfactor(NonfactorCommand::Demo { symbol, q }) => {
            let qs = if q.is_empty() { FIELD_SIZES.to_vec() } else { q.clone() };
            let mut verdicts = Vec::new();
            let mut lines = Vec::new();
            for q in qs {
                let v = mod_q_minus_1_check(&ledger, symbol, q)?;
                lines.push(format!(
                    "q = {q}: #{symbol}(F_q) = {}, [NC({symbol})] = {}, congruent mod {}: {}, equal: {}",
                    v.point_count, v.nc, v.modulus, v.congruent, v.equal
                ));
                verdicts.push(v);
            }
            let witness = verdicts.iter().any(|v| v.non_factoring_witness);
            lines.push(if witness {
                "point counts are congruent to the noncommutative class but not equal to it".to_string()
            } else {
                "no witness of non-factoring among these field sizes".to_string()
            });
            let result = json!({ "symbol": symbol, "verdicts": verdicts, "non_factoring_witness": witness });
            Ok(Report::new("nonfactor demo", result, lines.join("\n")).cite([Citation::NonFactoring, Citation::MotivicMeasure]))
        }
        Command::Check { which } => check(&ledger, *which, bound),
    }
}

fn variety_arg(ledger: &VarLedger, text: &str) -> Result<CellularVariety, Failure> {
    match Evaluator::new(ledger, None).eval(&parse(text)?)? {
        Value::Variety(x) => Ok(x),
        Value::Chow(m) if m.twist() == 0 && m.rank() == m.variety().rank() => Ok(m.variety().clone()),
        other => Err(Failure::Precondition(format!("`{text}` is {}, expected a variety", kind_of(&other)))),
    }
}

fn kind_of(v: &Value) -> String {
    match v {
        Value::Integer(_) => "an integer".into(),
        Value::Symbol(s) => format!("the ledger symbol `{s}` without a cellular model"),
        other => format!("`{other}`"),
    }
}

fn compose(ledger: &VarLedger, names: [&String; 3], first: Option<usize>, second: Option<usize>) -> Result<Report, Failure> {
    let [x, y, z] = names.map(|n| variety_arg(ledger, n));
    let (x, y, z) = (OrbitMotive::of(&x?), OrbitMotive::of(&y?), OrbitMotive::of(&z?));
    let fs = x.hom(&y)?.basis;
    let gs = y.hom(&z)?.basis;
    let pick = |n: usize, i: Option<usize>, what: &str| -> Result<Vec<usize>, Failure> {
        match i {
            None => Ok((0..n).collect()),
            Some(i) if i < n => Ok(vec![i]),
            Some(i) => Err(Failure::Precondition(format!("{what} index {i} is out of range; the Hom space has dimension {n}"))),
        }
    };
    let (is, js) = (pick(fs.len(), first, "--first")?, pick(gs.len(), second, "--second")?);
    let mut mismatches = Vec::new();
    let mut pairs = 0usize;
    for &i in &is {
        for &j in &js {
            pairs += 1;
            let lhs = realize_morphism(&fs[i].then(&gs[j])?);
            let rhs = realize_morphism(&fs[i]).then(&realize_morphism(&gs[j]))?;
            if lhs != rhs {
                mismatches.push(json!([i, j]));
            }
        }
    }
    let mut result = json!({
        "hom_xy": fs.len(),
        "hom_yz": gs.len(),
        "pairs_checked": pairs,
        "mismatches": mismatches,
    });
    let mut text = format!(
        "dim Hom(X, Y) = {}, dim Hom(Y, Z) = {}; realization preserves composition on {pairs} pair(s)",
        fs.len(),
        gs.len()
    );
    if let (&[i], &[j]) = (is.as_slice(), js.as_slice()) {
        let composite = fs[i].then(&gs[j])?;
        let coords: Vec<String> = realize_morphism(&composite).class().class().coordinates().iter().map(ToString::to_string).collect();
        result["degrees"] = json!(composite.degrees());
        result["realized_coordinates"] = json!(coords);
        text = format!("{text}\ncomposite degrees {:?}, realized coordinates [{}]", composite.degrees(), coords.join(", "));
    }
    let failed = !mismatches.is_empty();
    if failed {
        text.push_str(&format!("\n{} pair(s) disagree", mismatches.len()));
    }
    Ok(Report::new("compose", result, text).cite([Citation::OrbitHom, Citation::ComparisonFunctor]).failed_if(failed))
}

fn schur_test(ledger: &VarLedger, partition: &str, expr: &str) -> Result<Report, Failure> {
    let lambda: Partition = partition.parse()?;
    let v = Evaluator::new(ledger, None).eval(&parse(expr)?)?;
    let zero_note = |zero: bool| if zero { " (vanishes)" } else { "" };
    let (result, text, failed) = match v {
        Value::Chow(m) => {
            let chow = schur_cut(&lambda, &m)?;
            let nc = schur_cut(&lambda, &realize(&OrbitMotive::from_chow(&m)))?;
            let agree = chow.is_zero() == nc.is_zero();
            let result = json!({
                "partition": lambda.to_string(),
                "vanishes": chow.is_zero(),
                "rank": chow.rank(),
                "realization": { "vanishes": nc.is_zero(), "rank": nc.rank() },
                "vanishing_agrees": agree,
            });
            let text = format!(
                "S_{lambda}({m}): rank {}{}; on the realization: rank {}{}",
                chow.rank(),
                zero_note(chow.is_zero()),
                nc.rank(),
                zero_note(nc.is_zero())
            );
            (result, text, !agree)
        }
        Value::NC(n) => {
            let cut = schur_cut(&lambda, &n)?;
            let result = json!({ "partition": lambda.to_string(), "vanishes": cut.is_zero(), "rank": cut.rank() });
            (result, format!("S_{lambda}: rank {}{}", cut.rank(), zero_note(cut.is_zero())), false)
        }
        other => return Err(Failure::Precondition(format!("schur test needs a motive, got {}", kind_of(&other)))),
    };
    Ok(Report::new("schur test", result, text).cite([Citation::SchurFunctor, Citation::ComparisonFunctor]).failed_if(failed))
}

fn kimura(ledger: &VarLedger, expr: &str, bound: u32) -> Result<Report, Failure> {
    let v = Evaluator::new(ledger, None).eval(&parse(expr)?)?;
    let (k, s) = match &v {
        Value::Chow(m) => (kimura_witness(m, bound)?, is_schur_finite(m, bound)?),
        Value::NC(n) => (kimura_witness(n, bound)?, is_schur_finite(n, bound)?),
        other => return Err(Failure::Precondition(format!("kimura needs a motive, got {}", kind_of(other)))),
    };
    let schur_text = match &s {
        SchurFiniteness::Finite { witness } => format!("Schur-finite, killed by S_{witness}"),
        SchurFiniteness::UnknownUpToBound { bound } => format!("no Schur witness with |λ| <= {bound}"),
    };
    let kimura_text = match &k {
        motivecalc_core::schur::KimuraVerdict::EvenlyFinite { dimension, .. } => format!("evenly finite-dimensional of dimension {dimension}"),
        motivecalc_core::schur::KimuraVerdict::UnknownUpToBound { bound } => format!("no even witness up to dimension {bound}"),
    };
    let result = json!({ "kimura": k, "schur": s });
    Ok(Report::new("kimura", result, format!("{kimura_text}; {schur_text}"))
        .cite([Citation::KimuraFiniteness, Citation::SchurFunctor]))
}

fn zeta(ledger: &VarLedger, args: &ZetaArgs, order: usize) -> Result<Report, Failure> {
    let symbol = &args.object;
    let base = [Citation::KapranovZeta, Citation::IntrinsicZeta, Citation::MotivicMeasure];
    match args.check {
        None => {
            let m: Measure = args.measure.parse()?;
            let z = zeta_kapranov(ledger, symbol, &m, order)?;
            let (value, text) = match m {
                Measure::GilletSoule => (serde_json::to_value(&z).expect("series serialize"), z.to_string()),
                _ => {
                    let c = z.collapse();
                    (serde_json::to_value(&c).expect("series serialize"), c.to_string())
                }
            };
            let result = json!({ "symbol": symbol, "measure": m, "zeta": value });
            Ok(Report::new("zeta", result, format!("Z_{m}({symbol}; t) = {text}")).cite([Citation::KapranovZeta, Citation::MotivicMeasure]))
        }
        Some(ZetaCheck::ZetaEquality) => {
            let v = zeta_equality_check(ledger, symbol, order)?;
            let text = format!(
                "intrinsic and Kapranov zeta of {symbol} to order {order}: {}\n  noncommutative: {}\n  Chow: {}",
                if v.holds() { "equal" } else { "DIFFERENT" },
                v.intrinsic_nc,
                v.intrinsic_chow
            );
            let failed = !v.holds();
            Ok(Report::new("zeta check", serde_json::to_value(&v).expect("verdicts serialize"), text).cite(base).failed_if(failed))
        }
        Some(ZetaCheck::ClosedForm) => {
            let v = closed_form_check(ledger, symbol, order)?;
            let text = format!(
                "(1 - t)^-{} = {} ({})",
                v.chi_c,
                v.closed_form,
                if v.holds() { "matches both zeta functions" } else { "MISMATCH" }
            );
            let failed = !v.holds();
            Ok(Report::new("zeta check", serde_json::to_value(&v).expect("verdicts serialize"), text).cite(base).failed_if(failed))
        }
    }
}

fn universe() -> Vec<CellularVariety> {
    vec![
        CellularVariety::point(),
        CellularVariety::projective(1),
        CellularVariety::projective(2),
        CellularVariety::product_of_projective(&[1, 1]),
    ]
}

fn coordinates_rank<T: Theory>(cs: &[Corr<T>]) -> Result<usize, Failure> {
    if cs.is_empty() {
        return Ok(0);
    }
    let rows = cs.iter().map(|c| c.class().coordinates()).collect();
    Ok(RationalMatrix::from_rows(rows)?.rank())
}

fn check(ledger: &VarLedger, which: CheckKind, bound: u32) -> Result<Report, Failure> {
    let mut cases = 0usize;
    let mut failure: Option<String> = None;
    let (name, citations): (&str, Vec<Citation>) = match which {
        CheckKind::Grr => {
            let u = universe();
            'outer: for x in &u {
                for y in &u {
                    let fs = Corr::<KTheory>::basis(x, y);
                    for z in &u {
                        for g in Corr::<KTheory>::basis(y, z) {
                            for f in &fs {
                                cases += 1;
                                if grr_transform(&f.then(&g)?) != grr_transform(f).then(&grr_transform(&g))? {
                                    failure = Some(format!("transform is not functorial on {x} -> {y} -> {z}"));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            ("grr", vec![Citation::RiemannRoch])
        }
        CheckKind::Comparison => {
            let u = universe();
            'outer: for x in &u {
                for y in &u {
                    cases += 1;
                    let hom = OrbitMotive::of(x).hom(&OrbitMotive::of(y))?;
                    let nc = nc_of(x).hom_dimension(&nc_of(y));
                    let images: Vec<_> = hom.basis.iter().map(|f| realize_morphism(f).class().clone()).collect();
                    if hom.dimension() != nc || coordinates_rank(&images)? != nc {
                        failure = Some(format!("Hom({x}, {y}): orbit {}, noncommutative {nc}", hom.dimension()));
                        break 'outer;
                    }
                }
            }
            ("comparison", vec![Citation::OrbitHom, Citation::ComparisonFunctor])
        }
        CheckKind::SchurTransfer => {
            'outer: for x in universe() {
                for size in 1..=bound {
                    for lambda in Partition::all(size) {
                        cases += 1;
                        let chow = schur_cut(&lambda, &ChowMotive::of(&x))?.is_zero();
                        let nc = schur_cut(&lambda, &nc_of(&x))?.is_zero();
                        if chow != nc {
                            failure = Some(format!("S_{lambda} on {x}: Chow zero {chow}, noncommutative zero {nc}"));
                            break 'outer;
                        }
                    }
                }
            }
            ("schur-transfer", vec![Citation::SchurFunctor, Citation::ComparisonFunctor])
        }
        CheckKind::ZetaEquality => {
            for symbol in ["pt", "P1", "P2", "P1xP1"] {
                cases += 1;
                let v = zeta_equality_check(ledger, symbol, EQUALITY_ORDER)?;
                if !v.holds() {
                    failure = Some(format!("{symbol}: {:?} {:?}", v.nc_mismatch, v.chow_mismatch));
                    break;
                }
            }
            ("zeta-equality", vec![Citation::IntrinsicZeta, Citation::KapranovZeta])
        }
        CheckKind::Nonexample => {
            let gs = class_of_chow(&ChowMotive::of(&CellularVariety::projective(1)));
            cases += 1;
            if gs != LaurentPolynomial::geometric(1) || collapse(&gs) != BigInt::from(2) {
                failure = Some(format!("[M(P1)] = {gs}"));
            }
            for q in FIELD_SIZES {
                cases += 1;
                let v = mod_q_minus_1_check(ledger, "P1", q)?;
                if !(v.congruent && v.non_factoring_witness) {
                    failure = Some(format!("q = {q}: #P1 = {}, [NC(P1)] = {}", v.point_count, v.nc));
                    break;
                }
            }
            ("nonexample", vec![Citation::NonFactoring, Citation::ChowGrothendieckRing, Citation::NoncommutativeClass])
        }
    };
    let holds = failure.is_none();
    let result = json!({ "check": name, "holds": holds, "cases": cases, "failure": failure });
    let text = match &failure {
        None => format!("PASS {name}: {cases} case(s)"),
        Some(why) => format!("FAIL {name}: {why}"),
    };
    Ok(Report::new("check", result, text).cite(citations).failed_if(!holds))
}
