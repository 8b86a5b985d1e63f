mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use selfsim::conjugacy::{is_conj_in_g, DEFAULT_ORBIT_BUDGET};
use selfsim::dynamics::{
    classify_orbit, identify_groups, postcritical_orbit, witness_full_group, ClassifyOptions,
    GroupIdentification, OrbitCase, ProjPoint, QuadraticMorphism, DEFAULT_BOUND,
    DEFAULT_DIGIT_BUDGET,
};
use selfsim::group::{
    enumerate_level, is_member, order_log2, standard_generators, DEFAULT_MAX_ELEMENTS,
};
use selfsim::inclusions::{inclusion_report, refute_reverse};
use selfsim::normalizer::normalizer_report;
use selfsim::tree::{conj_in_w, Portrait};

use output::{envelope, render, Format};
use verify::{Params, Suite};

#[derive(Parser)]
#[command(
    name = "selfsim",
    version,
    about = "Self-similar groups G(r) on the binary tree and quadratic map orbits"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Largest group enumerated explicitly.
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS, global = true)]
    max_elements: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites on G(r) truncated at a depth.
    Verify {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Extra element (hex portrait) that must pass the membership suite.
        #[arg(long)]
        inject: Option<String>,
    },
    /// Classify the postcritical orbit of (t1 x^2 + t2 x + t3) / (t4 x^2 + t5 x + t6).
    Classify {
        /// Six rationals, e.g. "1,0,-2,1,0,2".
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u32,
        #[arg(long, default_value_t = DEFAULT_DIGIT_BUDGET)]
        digit_budget: u64,
        /// Print the computed iterates.
        #[arg(long)]
        orbit: bool,
    },
    /// Test membership of a hex portrait in G(r).
    Member {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        hex: String,
    },
    /// Decide W_n- and G_n-conjugacy of two hex portraits.
    Conjugate {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        /// Orbit search budget.
        #[arg(long, default_value_t = DEFAULT_ORBIT_BUDGET)]
        budget: usize,
    },
    /// log2 of |G_n|, optionally checked by enumeration.
    Order {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        enumerate: bool,
    },
    /// Hex portraits of the generators a_1 … a_n, b_1 … b_r.
    Gens {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        depth: u32,
    },
    /// Normalizer checks for w_1 … w_{i_max} and w~.
    Normalizer {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = 5)]
        i_max: u32,
    },
    /// Check G(from), N(from) ⊂ G(to) on generators.
    Inclusion {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long)]
        depth: u32,
    },
    /// Sign tables and closures for the witness family of an orbit type.
    Witness {
        /// One of A, B, Bp, C.
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
    },
}

/// An error that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Report body and whether the command's checks all passed.
type Outcome = Result<(Value, bool), UsageError>;

fn parse_portrait(hex: &str, depth: u32) -> Result<Portrait, UsageError> {
    Ok(Portrait::from_hex(hex, depth)?)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify {
            r,
            depth,
            suite,
            inject,
        } => {
            let inject = inject
                .as_deref()
                .map(|h| parse_portrait(h, *depth))
                .transpose()?;
            let params = Params {
                r: *r,
                depth: *depth,
                max_elements: cli.max_elements,
                inject,
            };
            Ok(verify::run(*suite, &params)?)
        }
        Command::Classify {
            coeffs,
            bound,
            digit_budget,
            orbit,
        } => classify(coeffs, *bound, *digit_budget, *orbit),
        Command::Member { r, depth, hex } => {
            let g = parse_portrait(hex, *depth)?;
            Ok((
                json!({"r": r, "depth": depth, "hex": g.to_hex(), "member": is_member(&g, *r)}),
                true,
            ))
        }
        Command::Conjugate {
            r,
            depth,
            g,
            h,
            budget,
        } => {
            let g = parse_portrait(g, *depth)?;
            let h = parse_portrait(h, *depth)?;
            let gens = standard_generators(*r, *depth)?;
            let in_w = conj_in_w(&g, &h)?;
            let witness = is_conj_in_g(&g, &h, *r, *budget)?;
            let body = json!({
                "r": r,
                "depth": depth,
                "conjugate_in_w": in_w,
                "conjugate_in_g": witness.is_some(),
                "witness": witness.as_ref().map(|w| w.0.iter().map(ToString::to_string).collect::<Vec<_>>()),
                "witness_hex": witness.as_ref().map(|w| w.element(&gens).to_hex()),
            });
            Ok((body, true))
        }
        Command::Order {
            r,
            depth,
            enumerate,
        } => {
            standard_generators(*r, *depth)?;
            let log2 = order_log2(*r, *depth);
            let mut body = json!({"r": r, "depth": depth, "log2_order": log2});
            let mut ok = true;
            if *enumerate {
                let level = enumerate_level(*r, *depth, cli.max_elements)?;
                ok = level.log2_order() == Some(log2);
                body["enumerated"] = json!(level.len());
                body["matches_formula"] = json!(ok);
            }
            Ok((body, ok))
        }
        Command::Gens { r, depth } => {
            let gens = standard_generators(*r, *depth)?;
            let list: Vec<Value> = gens
                .labelled()
                .into_iter()
                .map(|(g, p)| json!({"name": g.to_string(), "hex": p.to_hex()}))
                .collect();
            Ok((json!({"r": r, "depth": depth, "generators": list}), true))
        }
        Command::Normalizer { r, depth, i_max } => {
            let rep = normalizer_report(*r, *depth, *i_max)?;
            let ok = rep.passed();
            let mut body = serde_json::to_value(&rep)?;
            body["passed"] = json!(ok);
            Ok((body, ok))
        }
        Command::Inclusion { from, to, depth } => {
            if from >= to {
                return Err(UsageError(format!(
                    "--from ({from}) must be smaller than --to ({to})"
                )));
            }
            let rep = inclusion_report(*from, *to, *depth)?;
            let ok = rep.passed();
            let mut body = serde_json::to_value(&rep)?;
            body["passed"] = json!(ok);
            body["reverse_refutation"] = serde_json::to_value(refute_reverse(*from, *to))?;
            Ok((body, ok))
        }
        Command::Witness { case, r, s, n_max } => {
            let (r, s) = (*r, *s);
            let case = match case.as_str() {
                "A" | "a" => OrbitCase::CaseA,
                "B" | "b" => OrbitCase::CaseB { r, s },
                "Bp" | "bp" | "B'" => OrbitCase::CaseBPrime { r, s },
                "C" | "c" => OrbitCase::CaseC { r, s },
                other => {
                    return Err(UsageError(format!(
                        "unknown case {other:?}; expected A, B, Bp or C"
                    )))
                }
            };
            let rep = witness_full_group(&case, *n_max, cli.max_elements)?;
            let ok = rep.passed();
            let mut body = serde_json::to_value(&rep)?;
            body["passed"] = json!(ok);
            Ok((body, ok))
        }
    }
}

fn classify(coeffs: &str, bound: u32, digit_budget: u64, show_orbit: bool) -> Outcome {
    let f: QuadraticMorphism = coeffs.parse()?;
    let orbit = postcritical_orbit(
        &f,
        ClassifyOptions {
            bound,
            digit_budget,
        },
    )?;
    let c = classify_orbit(&orbit, bound);
    let (r, s) = match &c.case {
        OrbitCase::CaseB { r, s } | OrbitCase::CaseBPrime { r, s } | OrbitCase::CaseC { r, s } => {
            (Some(*r), Some(*s))
        }
        OrbitCase::FiniteOrbit(data) => (data.collision_level, None),
        _ => (None, None),
    };
    let (geometric, arithmetic, statement) = match identify_groups(&c) {
        Ok(GroupIdentification::Identified {
            geometric,
            arithmetic,
        }) => (
            Some(geometric.to_string()),
            Some(arithmetic.to_string()),
            None,
        ),
        Ok(GroupIdentification::NotApplicableFiniteOrbit { statement }) => (
            None,
            None,
            Some(statement.unwrap_or_else(|| "finite postcritical orbit".into())),
        ),
        Err(_) => (None, None, None),
    };
    let mut body = json!({
        "map": f.to_string(),
        "critical_points": [orbit.critical.p0.to_string(), orbit.critical.q0.to_string()],
        "d": orbit.critical.d.to_string(),
        "rational": c.critical_points_rational,
        "case": c.case.code(),
        "case_detail": serde_json::to_value(&c.case)?,
        "r": r,
        "s": s,
        "geometric_group": geometric,
        "arithmetic_group": arithmetic,
        "finite_orbit_statement": statement,
        "certification_bound": c.bound,
        "iterations": c.iterations,
    });
    if show_orbit {
        let show = |xs: &[ProjPoint]| xs.iter().map(ToString::to_string).collect::<Vec<_>>();
        body["orbit"] = json!({"p": show(&orbit.p), "q": show(&orbit.q)});
    }
    Ok((body, true))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Classify { .. } => "classify",
        Command::Member { .. } => "member",
        Command::Conjugate { .. } => "conjugate",
        Command::Order { .. } => "order",
        Command::Gens { .. } => "gens",
        Command::Normalizer { .. } => "normalizer",
        Command::Inclusion { .. } => "inclusion",
        Command::Witness { .. } => "witness",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((body, passed)) => {
            println!(
                "{}",
                render(&envelope(command_name(&cli.command), body), cli.format)
            );
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
