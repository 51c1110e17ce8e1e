use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hsl_core::antipode::{antipode_to_json, closed_form_antipode, self_adjoint_at, takeuchi_antipode, Method};
use hsl_core::error::DEFAULT_BUDGET;
use hsl_core::families::{Graphs, Hypergraphs, Partitions, SimplicialComplexes};
use hsl_core::label::LabelSet;
use hsl_core::linear::{adjunction_report, duality_pairing_check, vector_to_json, Adjunction, FreeVector};
use hsl_core::order::FamilyPoset;
use hsl_core::poset::check_partial_order;
use hsl_core::species::{verify_axioms, AdjunctionSpec, OrderSpec, Product, Species};
use hsl_core::symfunc::{partition_char_poly_check, power_sum_identity_check};
use hsl_core::Error;

const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "hsl",
    version,
    about = "Antipodes, primitives and checks for Hopf monoids in species"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Largest carrier any enumeration may build.
    #[arg(long, env = "HSL_BUDGET", default_value_t = DEFAULT_BUDGET, global = true,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    budget: usize,

    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Antipode of a single structure.
    Antipode {
        #[arg(long, value_enum)]
        family: Family,
        /// Structure in the family's encoding, e.g. "G:n=2;E=0-1".
        #[arg(long)]
        object: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Basis of primitives on `{0, ..., n-1}` from the primary adjunction.
    Primitives {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Axioms, adjunctions, duality and reassembly-order checks up to `n`.
    Verify {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Power-sum and characteristic-polynomial report in degree `n`.
    Fock {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Graphs,
    Hypergraphs,
    Simplicial,
    Partitions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Takeuchi,
    Closed,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// A rendered result plus whether every check in it passed.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::LabelMismatch { .. } | Error::LabelOverlap { .. } => EXIT_PARSE,
        Error::CarrierOverflow { .. } => EXIT_BUDGET,
        Error::AdjunctionUnverified(_) | Error::NotSelfAdjoint { .. } | Error::NonUniqueFactorization(_) => EXIT_VERIFY,
        _ => 1,
    }
}

fn term_lines<F: Species>(fam: &F, v: &FreeVector<F::Obj>, out: &mut String) {
    if v.is_zero() {
        out.push_str("  0\n");
    }
    for (x, c) in v.terms() {
        let _ = writeln!(out, "  {c:>6}  {}", fam.encode(x));
    }
}

fn cmd_antipode<F: Species>(fam: &F, object: &str, method: MethodArg) -> Result<Output, Error> {
    let x = fam.parse(object)?;
    let mut text = format!("antipode of {} in {}\n", fam.encode(&x), fam.name());
    let mut json = json!({ "family": fam.name(), "object": fam.encode(&x) });
    let takeuchi = match method {
        MethodArg::Takeuchi | MethodArg::Both => Some(takeuchi_antipode(fam, &x)?),
        MethodArg::Closed => None,
    };
    let closed = match method {
        MethodArg::Closed | MethodArg::Both => {
            self_adjoint_at(fam, &x)?;
            Some(closed_form_antipode(fam, &x)?.upper)
        }
        MethodArg::Takeuchi => None,
    };
    if let Some(v) = &takeuchi {
        json["takeuchi"] = antipode_to_json(fam, &x, v, Method::Takeuchi);
        text.push_str("takeuchi:\n");
        term_lines(fam, v, &mut text);
    }
    if let Some(v) = &closed {
        json["closed"] = antipode_to_json(fam, &x, v, Method::ClosedUpper);
        text.push_str("closed form:\n");
        term_lines(fam, v, &mut text);
    }
    let mut ok = true;
    if let (Some(a), Some(b)) = (&takeuchi, &closed) {
        ok = a == b;
        json["agree"] = Value::Bool(ok);
        let _ = writeln!(text, "agree: {ok}");
    }
    Ok(Output { json, text, ok })
}

fn cmd_primitives<F: Species>(fam: &F, n: usize) -> Result<Output, Error> {
    let spec = fam.primary_adjunction();
    let adj = Adjunction::verify(fam, spec, n)?;
    let labels = LabelSet::range(n);
    let basis = adj.primitives_basis(labels)?;
    let mut text = format!(
        "primitives of {} on {n} labels via {spec}: dimension {}\n",
        fam.name(),
        basis.len()
    );
    let mut list = Vec::new();
    for (x, omega) in &basis {
        let _ = writeln!(text, "ω[{}] =", fam.encode(x));
        term_lines(fam, omega, &mut text);
        list.push(json!({ "indecomposable": fam.encode(x), "vector": vector_to_json(fam, labels, omega) }));
    }
    let json = json!({
        "family": fam.name(),
        "n": n,
        "adjunction": spec.to_string(),
        "dimension": basis.len(),
        "basis": list,
    });
    Ok(Output { json, text, ok: true })
}

/// Adjunctions each family is expected to satisfy.
fn declared_adjunctions(family: Family) -> Vec<AdjunctionSpec> {
    let spec = |order, product| AdjunctionSpec { order, product };
    match family {
        Family::Graphs => vec![
            spec(OrderSpec::NATIVE, Product::Free),
            spec(OrderSpec::REASSEMBLY, Product::Mult),
        ],
        Family::Hypergraphs => vec![spec(OrderSpec::NATIVE, Product::Free)],
        Family::Partitions => vec![spec(OrderSpec::NATIVE, Product::Mult)],
        Family::Simplicial => vec![spec(OrderSpec::NATIVE.reversed(), Product::Mult)],
    }
}

fn cmd_verify<F: Species>(fam: &F, family: Family, n: usize) -> Result<Output, Error> {
    let axioms = verify_axioms(fam, n)?;
    let mut ok = axioms.passed();
    let mut text = axioms.to_string();
    let axiom_json: Vec<Value> = axioms
        .results
        .iter()
        .map(|r| json!({ "axiom": r.axiom.name(), "checked": r.outcome.checked, "witness": r.outcome.witness }))
        .collect();

    let mut adjunctions = Vec::new();
    for spec in declared_adjunctions(family) {
        let r = adjunction_report(fam, spec, n, false)?;
        ok &= r.holds();
        let failure = r.first_failure();
        let status = if r.holds() { "pass" } else { "FAIL" };
        let _ = writeln!(
            text,
            "  {status} adjunction {spec}{}",
            failure.as_ref().map(|f| format!(": {f}")).unwrap_or_default()
        );
        adjunctions.push(json!({ "adjunction": spec.to_string(), "holds": r.holds(), "failure": failure }));
    }

    let duality = duality_pairing_check(fam, fam.primary_adjunction(), n)?;
    ok &= duality.passed();
    let _ = writeln!(
        text,
        "  {} duality pairing ({} cases)",
        if duality.passed() { "pass" } else { "FAIL" },
        duality.checked
    );

    let mut order_failure = None;
    for k in 0..=n {
        let p = FamilyPoset::new(fam, LabelSet::range(k), OrderSpec::REASSEMBLY);
        if let Some(v) = check_partial_order(&p)? {
            order_failure = Some(format!("{k} labels: {v}"));
            break;
        }
    }
    ok &= order_failure.is_none();
    let _ = writeln!(
        text,
        "  {} reassembly order is a partial order{}",
        if order_failure.is_none() { "pass" } else { "FAIL" },
        order_failure.as_ref().map(|f| format!(": {f}")).unwrap_or_default()
    );
    let _ = writeln!(text, "all pass: {ok}");

    let json = json!({
        "family": fam.name(),
        "n": n,
        "carrier_sizes": (0..=n).map(|k| fam.carrier_size(LabelSet::range(k)).to_string()).collect::<Vec<_>>(),
        "axioms": axiom_json,
        "adjunctions": adjunctions,
        "duality": { "checked": duality.checked, "witness": duality.witness },
        "reassembly_partial_order": { "holds": order_failure.is_none(), "witness": order_failure },
        "passed": ok,
    });
    Ok(Output { json, text, ok })
}

fn cmd_fock(n: u32) -> Result<Output, Error> {
    if n == 0 || n > 6 {
        return Err(Error::Unsupported(format!(
            "fock report in degree {n} (supported: 1..=6)"
        )));
    }
    let power = power_sum_identity_check(n)?;
    let chars = partition_char_poly_check(n as usize)?;
    let ok = power.newton_consistent && chars.passed();
    let scalar = power.scalar.as_ref().map(|c| c.to_string());
    let mut text = format!("degree {n}\n");
    let _ = writeln!(text, "  image of ω[one block]: {}", power.image_monomial);
    let _ = writeln!(text, "  scalar against p_{n}: {}", scalar.as_deref().unwrap_or("none"));
    let _ = writeln!(text, "  Newton oracle consistent: {}", power.newton_consistent);
    let _ = writeln!(
        text,
        "  printed expression, refinement order: {}",
        power.doubilet.refinement_order
    );
    let _ = writeln!(
        text,
        "  printed expression, coarsening order: {}",
        power.doubilet.coarsening_order
    );
    let _ = writeln!(
        text,
        "  printed expression, bridged: {}",
        power.doubilet.refinement_order_bridged
    );
    for c in &chars.matching {
        let _ = writeln!(text, "  falling factorial from {c}");
    }
    let _ = writeln!(
        text,
        "  characteristic polynomial check: {}",
        if chars.passed() { "pass" } else { "FAIL" }
    );
    let json = json!({
        "n": n,
        "power_sum": power.to_json(),
        "char_poly": chars.to_json(),
        "passed": ok,
    });
    Ok(Output { json, text, ok })
}

fn with_family<R>(family: Family, budget: usize, run: impl FnOnce(&dyn FamilyRunner) -> R) -> R {
    match family {
        Family::Graphs => run(&Graphs { budget }),
        Family::Hypergraphs => run(&Hypergraphs { budget }),
        Family::Simplicial => run(&SimplicialComplexes { budget }),
        Family::Partitions => run(&Partitions { budget }),
    }
}

/// Object-safe entry points, so dispatch happens once.
trait FamilyRunner {
    fn antipode(&self, object: &str, method: MethodArg) -> Result<Output, Error>;
    fn primitives(&self, n: usize) -> Result<Output, Error>;
    fn verify(&self, family: Family, n: usize) -> Result<Output, Error>;
}

impl<F: Species> FamilyRunner for F {
    fn antipode(&self, object: &str, method: MethodArg) -> Result<Output, Error> {
        cmd_antipode(self, object, method)
    }
    fn primitives(&self, n: usize) -> Result<Output, Error> {
        cmd_primitives(self, n)
    }
    fn verify(&self, family: Family, n: usize) -> Result<Output, Error> {
        cmd_verify(self, family, n)
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Antipode { family, object, method } => {
            with_family(*family, cli.budget, |f| f.antipode(object, *method))
        }
        Command::Primitives { family, n } => with_family(*family, cli.budget, |f| f.primitives(*n)),
        Command::Verify { family, n } => with_family(*family, cli.budget, |f| f.verify(*family, *n)),
        Command::Fock { n } => cmd_fock(*n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("hsl: cannot configure {jobs} workers: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(e) => {
            eprintln!("hsl: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
