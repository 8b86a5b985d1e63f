use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use selfsim::conjugacy::{dichotomy_holds, is_conj_in_g, DEFAULT_ORBIT_BUDGET};
use selfsim::group::{
    check_transitivity, enumerate_level, generator_signs, is_member, order_log2,
    standard_generators, verify_product_relation, GroupError,
};
use selfsim::inclusions::inclusion_report;
use selfsim::normalizer::normalizer_report;
use selfsim::tree::{conj_in_w, Portrait};

const RANDOM_WORDS: usize = 200;
const WORD_LENGTH: usize = 16;
const SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Product,
    Signs,
    Orders,
    Transitivity,
    Membership,
    Conjugacy,
    Normalizer,
    Inclusion,
    All,
}

impl Suite {
    fn expand(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![
                Product,
                Signs,
                Orders,
                Transitivity,
                Membership,
                Conjugacy,
                Normalizer,
                Inclusion,
            ],
            s => vec![s],
        }
    }
}

pub struct Params {
    pub r: u32,
    pub depth: u32,
    pub max_elements: u64,
    pub inject: Option<Portrait>,
}

/// One line of the report. `passed` is `None` when the check was skipped.
struct Check {
    suite: &'static str,
    label: String,
    params: Value,
    passed: Option<bool>,
    detail: Value,
}

impl Check {
    fn new(
        suite: &'static str,
        label: impl Into<String>,
        params: Value,
        passed: Option<bool>,
        detail: Value,
    ) -> Self {
        Check {
            suite,
            label: label.into(),
            params,
            passed,
            detail,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "label": self.label,
            "params": self.params,
            "status": match self.passed {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "skipped",
            },
            "detail": self.detail,
        })
    }
}

/// Runs the suites and returns the report body and whether every check passed.
pub fn run(suite: Suite, p: &Params) -> Result<(Value, bool), GroupError> {
    let mut checks = Vec::new();
    for s in suite.expand() {
        match s {
            Suite::Product => product(p, &mut checks)?,
            Suite::Signs => signs(p, &mut checks)?,
            Suite::Orders => orders(p, &mut checks)?,
            Suite::Transitivity => transitivity(p, &mut checks)?,
            Suite::Membership => membership(p, &mut checks)?,
            Suite::Conjugacy => conjugacy(p, &mut checks)?,
            Suite::Normalizer => normalizer(p, &mut checks)?,
            Suite::Inclusion => inclusion(p, &mut checks)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    let passed = checks.iter().all(|c| c.passed != Some(false));
    let body = json!({
        "r": p.r,
        "depth": p.depth,
        "passed": passed,
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
    });
    Ok((body, passed))
}

fn product(p: &Params, out: &mut Vec<Check>) -> Result<(), GroupError> {
    for n in 1..=p.depth {
        let ok = verify_product_relation(p.r, n)?;
        out.push(Check::new(
            "product",
            "b_1...b_r = a_1 a_2 ...",
            json!({"r": p.r, "n": n}),
            Some(ok),
            Value::Null,
        ));
    }
    Ok(())
}

fn signs(p: &Params, out: &mut Vec<Check>) -> Result<(), GroupError> {
    let table = generator_signs(p.r, p.depth)?;
    let mismatches: Vec<String> = table
        .mismatches()
        .iter()
        .map(|(g, m, s)| format!("sgn_{m}({g}) = {s}"))
        .collect();
    out.push(Check::new(
        "signs",
        "generator sign table",
        json!({"r": p.r, "n": p.depth}),
        Some(mismatches.is_empty()),
        json!({"mismatches": mismatches}),
    ));
    Ok(())
}

fn orders(p: &Params, out: &mut Vec<Check>) -> Result<(), GroupError> {
    for n in 1..=p.depth {
        let formula = order_log2(p.r, n);
        let params = json!({"r": p.r, "n": n});
        match enumerate_level(p.r, n, p.max_elements) {
            Ok(level) => {
                let found = level.log2_order();
                out.push(Check::new(
                    "orders",
                    "enumerated order",
                    params,
                    Some(found == Some(formula)),
                    json!({"log2_order": formula, "enumerated": level.len()}),
                ));
            }
            Err(GroupError::BudgetExceeded { .. }) => out.push(Check::new(
                "orders",
                "enumerated order",
                params,
                None,
                json!({"log2_order": formula, "reason": "exceeds --max-elements"}),
            )),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn transitivity(p: &Params, out: &mut Vec<Check>) -> Result<(), GroupError> {
    let ok = check_transitivity(p.r, p.depth)?;
    out.push(Check::new(
        "transitivity",
        "transitive on level n",
        json!({"r": p.r, "n": p.depth}),
        Some(ok),
        Value::Null,
    ));
    Ok(())
}

fn membership(p: &Params, out: &mut Vec<Check>) -> Result<(), GroupError> {
    let n = p.depth;
    let gens = standard_generators(p.r, n)?.nontrivial();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    for _ in 0..RANDOM_WORDS {
        let word = (0..WORD_LENGTH).fold(Portrait::identity(n), |acc, _| {
            if gens.is_empty() {
                acc
            } else {
                &acc * &gens[rng.gen_range(0..gens.len())]
            }
        });
        failures += usize::from(!is_member(&word, p.r));
    }
    out.push(Check::new(
        "membership",
        "random generator words are members",
        json!({"r": p.r, "n": n, "words": RANDOM_WORDS}),
        Some(failures == 0),
        json!({"failures": failures}),
    ));
    if n <= 4 {
        match enumerate_level(p.r, n, p.max_elements) {
            Ok(level) => {
                let disagreements = Portrait::all(n)
                    .filter(|g| is_member(g, p.r) != level.contains(g))
                    .count();
                out.push(Check::new(
                    "membership",
                    "membership agrees with enumeration",
                    json!({"r": p.r, "n": n}),
                    Some(disagreements == 0),
                    json!({"disagreements": disagreements}),
                ));
            }
            Err(GroupError::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if let Some(g) = &p.inject {
        out.push(Check::new(
            "membership",
            "injected element is a member",
            json!({"r": p.r, "n": n, "hex": g.to_hex()}),
            Some(is_member(g, p.r)),
            Value::Null,
        ));
    }
    Ok(())
}

fn conjugacy(p: &Params, out: &mut Vec<Check>) -> Result<(), GroupError> {
    let n = p.depth;
    let gens = standard_generators(p.r, n)?;
    for i in 1..=p.r.min(n) {
        let w = conj_in_w(&gens.a(i), gens.b(i))?;
        out.push(Check::new(
            "conjugacy",
            format!("a{i} and b{i} conjugate in W_n"),
            json!({"r": p.r, "n": n, "i": i}),
            Some(w),
            Value::Null,
        ));
        let g_conj = match is_conj_in_g(&gens.a(i), gens.b(i), p.r, DEFAULT_ORBIT_BUDGET) {
            Ok(found) => json!(found.is_some()),
            Err(_) => Value::Null,
        };
        let dichotomy = if order_log2(p.r, n) as f64 <= (p.max_elements as f64).log2() {
            dichotomy_holds(i, p.r, n, p.max_elements).ok()
        } else {
            None
        };
        out.push(Check::new(
            "conjugacy",
            format!("W-conjugates of a{i} split into the G_n-classes of a{i} and b{i}"),
            json!({"r": p.r, "n": n, "i": i}),
            dichotomy,
            json!({"a_b_conjugate_in_g": g_conj}),
        ));
    }
    Ok(())
}

fn normalizer(p: &Params, out: &mut Vec<Check>) -> Result<(), GroupError> {
    let i_max = p.depth.clamp(1, 5);
    let rep = normalizer_report(p.r, p.depth, i_max)?;
    let detail = serde_json::to_value(&rep).expect("report serializes");
    out.push(Check::new(
        "normalizer",
        "w_i and w~ normalize G_n",
        json!({"r": p.r, "n": p.depth, "i_max": i_max}),
        Some(rep.passed()),
        detail,
    ));
    Ok(())
}

fn inclusion(p: &Params, out: &mut Vec<Check>) -> Result<(), GroupError> {
    for r_small in 1..p.r {
        let rep = inclusion_report(r_small, p.r, p.depth)?;
        out.push(Check::new(
            "inclusion",
            format!("G({r_small}) and N({r_small}) inside G({})", p.r),
            json!({"from": r_small, "to": p.r, "n": p.depth}),
            Some(rep.passed()),
            json!({"elements_checked": rep.elements_checked, "failures": rep.failures}),
        ));
    }
    Ok(())
}
