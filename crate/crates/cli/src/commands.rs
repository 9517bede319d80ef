use std::fmt::Write as _;

use puiseux::arith::padic_valuation;
use puiseux::goldbach::{cross_check_formula_vs_enumeration, l3_report, verify_goldbach_theorem, verify_weak_goldbach};
use puiseux::realization::{realize, verify_realization};
use puiseux::staged::{build_full_ssl, build_non_two, witness_length_two};
use puiseux::{
    ExtValuation, FGPuiseux, IntSubmonoid, LengthSet, Limits, PrimePool, Rational, StagedMonoid,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::{CliError, Command, Construction, Report};

type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Report> {
    let limits = cfg.limits();
    match cmd {
        Command::Lengths { monoid, element } => lengths(monoid, element, &limits),
        Command::Factorize { monoid, element } => factorize(monoid, element, &limits),
        Command::Atoms { gens } => atoms(gens, &limits),
        Command::Scale { monoid, by } => scale(monoid, by, &limits),
        Command::Iso { m1, m2 } => iso(m1, m2, &limits),
        Command::Construct {
            kind,
            stages,
            prime_pool,
            dump,
        } => construct(*kind, *stages, prime_pool, dump.as_deref(), cfg),
        Command::WitnessTwo { monoid } => witness_two(monoid, &limits),
        Command::Realize { set } => realize_set(set, cfg),
        Command::Goldbach { bound, check_l3, weak } => goldbach(*bound, *check_l3, *weak),
        Command::Verify {
            kind,
            stages,
            prime_pool,
        } => verify(*kind, *stages, prime_pool, cfg),
        Command::TruncatedLengths {
            kind,
            stages,
            element,
            prime_pool,
        } => truncated_lengths(*kind, *stages, element, prime_pool, cfg),
        Command::CrossCheck { n, stage } => cross_check(*n, *stage, &limits),
        Command::Valuation { prime, value } => valuation(*prime, value),
    }
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational> {
    s.trim()
        .parse()
        .map_err(|e: puiseux::Error| CliError::Usage(format!("--{flag}: '{}': {e}", s.trim())))
}

fn parse_rationals(flag: &str, s: &str) -> Result<Vec<Rational>> {
    let out: Vec<Rational> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_rational(flag, t))
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(CliError::Usage(format!("--{flag}: empty list")));
    }
    Ok(out)
}

fn as_u64s(values: &[Rational]) -> Option<Vec<u64>> {
    values.iter().map(Rational::to_u64).collect()
}

fn pool(s: &str) -> Result<PrimePool> {
    s.parse()
        .map_err(|e: puiseux::Error| CliError::Usage(format!("--prime-pool: {e}")))
}

fn rationals_json(values: &[Rational]) -> Value {
    json!(values)
}

fn joined<T: std::fmt::Display>(values: impl IntoIterator<Item = T>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn ok(text: String, json: Value) -> Result<Report> {
    Ok(Report { text, json, ok: true })
}

/// Generators as the numerical-monoid path sees them, when every one is an
/// integer that fits in 64 bits.
enum Parsed {
    Numerical(IntSubmonoid),
    Puiseux(FGPuiseux),
}

fn parse_monoid(flag: &str, s: &str, limits: &Limits) -> Result<Parsed> {
    let gens = parse_rationals(flag, s)?;
    Ok(match as_u64s(&gens) {
        Some(ints) => Parsed::Numerical(IntSubmonoid::minimalize(&ints)?),
        None => Parsed::Puiseux(FGPuiseux::normalize(&gens, limits)?),
    })
}

fn lengths(monoid: &str, element: &str, limits: &Limits) -> Result<Report> {
    let x = parse_rational("element", element)?;
    let (path, atoms, x_json, set) = match parse_monoid("monoid", monoid, limits)? {
        Parsed::Numerical(n) => {
            let set = match x.to_u64() {
                Some(v) => n.length_set(v, limits)?,
                None if x.is_integer() => {
                    return Err(CliError::Usage("--element: integer does not fit in 64 bits".into()))
                }
                None => LengthSet::empty(),
            };
            let x_json = x.to_u64().map_or_else(|| json!(x), |v| json!(v));
            ("numerical", json!(n.atoms()), x_json, set)
        }
        Parsed::Puiseux(m) => {
            let set = m.length_set(&x, limits)?;
            ("puiseux", rationals_json(m.atoms()), json!(x), set)
        }
    };
    ok(
        format!("{set}\n"),
        json!({"path": path, "atoms": atoms, "element": x_json, "lengths": set}),
    )
}

fn factorize(monoid: &str, element: &str, limits: &Limits) -> Result<Report> {
    let x = parse_rational("element", element)?;
    let (path, atoms_text, atoms, x_json, zs) = match parse_monoid("monoid", monoid, limits)? {
        Parsed::Numerical(n) => {
            let zs = match x.to_u64() {
                Some(v) => n.factorizations(v, limits)?,
                None => Vec::new(),
            };
            let x_json = x.to_u64().map_or_else(|| json!(x), |v| json!(v));
            ("numerical", joined(n.atoms()), json!(n.atoms()), x_json, zs)
        }
        Parsed::Puiseux(m) => {
            let zs = m.factorizations(&x, limits)?;
            ("puiseux", joined(m.atoms()), rationals_json(m.atoms()), json!(x), zs)
        }
    };
    let mut text = format!("atoms: {atoms_text}\n");
    for z in &zs {
        let _ = writeln!(text, "({})  length {}", joined(z.exponents()), z.length());
    }
    let list: Vec<Value> = zs
        .iter()
        .map(|z| json!({"exponents": z.exponents(), "length": z.length()}))
        .collect();
    ok(
        text,
        json!({"path": path, "atoms": atoms, "element": x_json, "count": zs.len(), "factorizations": list}),
    )
}

fn atoms(gens: &str, limits: &Limits) -> Result<Report> {
    let parsed = parse_rationals("gens", gens)?;
    match as_u64s(&parsed) {
        Some(ints) => {
            let n = IntSubmonoid::minimalize(&ints)?;
            ok(
                format!("{}\n", joined(n.atoms())),
                json!({"generators": ints, "atoms": n.atoms()}),
            )
        }
        None => {
            let m = FGPuiseux::normalize(&parsed, limits)?;
            ok(
                format!("{}\n", joined(m.atoms())),
                json!({"generators": parsed, "atoms": m.atoms()}),
            )
        }
    }
}

fn scale(monoid: &str, by: &str, limits: &Limits) -> Result<Report> {
    let gens = parse_rationals("monoid", monoid)?;
    let q = parse_rational("by", by)?;
    let m = FGPuiseux::normalize(&gens, limits)?;
    let scaled = m.scale(&q)?;
    ok(
        format!("{}\n", joined(scaled.atoms())),
        json!({"atoms": m.atoms(), "factor": q, "scaled": scaled.atoms()}),
    )
}

fn iso(m1: &str, m2: &str, limits: &Limits) -> Result<Report> {
    let a = FGPuiseux::normalize(&parse_rationals("m1", m1)?, limits)?;
    let b = FGPuiseux::normalize(&parse_rationals("m2", m2)?, limits)?;
    let factor = a.isomorphism_factor(&b);
    let text = match &factor {
        Some(q) => format!("{q}\n"),
        None => "none\n".to_string(),
    };
    ok(
        text,
        json!({"m1": a.atoms(), "m2": b.atoms(), "factor": factor}),
    )
}

fn staged(kind: Construction, stages: usize, prime_pool: &str, cfg: &RunConfig) -> Result<StagedMonoid> {
    let pool = pool(prime_pool)?;
    match kind {
        Construction::FullSsl => Ok(build_full_ssl(pool, stages, cfg.bounds, cfg.limits())?),
        Construction::NonTwo => {
            if pool != PrimePool::All {
                return Err(CliError::Usage(
                    "--prime-pool applies to full-ssl only".into(),
                ));
            }
            Ok(build_non_two(stages, cfg.limits())?)
        }
    }
}

fn kind_name(kind: Construction) -> &'static str {
    match kind {
        Construction::FullSsl => "full-ssl",
        Construction::NonTwo => "non-two",
    }
}

/// One JSON object per stage, one per line.
pub(crate) fn stage_lines(m: &StagedMonoid) -> String {
    m.stages()
        .iter()
        .map(|s| serde_json::to_string(s).expect("serializable") + "\n")
        .collect()
}

fn construct(
    kind: Construction,
    stages: usize,
    prime_pool: &str,
    dump: Option<&std::path::Path>,
    cfg: &RunConfig,
) -> Result<Report> {
    let m = staged(kind, stages, prime_pool, cfg)?;
    let lines = stage_lines(&m);
    if let Some(path) = dump {
        std::fs::write(path, &lines).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    ok(
        lines,
        json!({"kind": kind_name(kind), "prime_pool": m.pool(), "stages": m.stages()}),
    )
}

fn witness_two(monoid: &str, limits: &Limits) -> Result<Report> {
    let m = FGPuiseux::normalize(&parse_rationals("monoid", monoid)?, limits)?;
    let w = witness_length_two(&m, limits)?;
    ok(
        format!("x = {}, L(x) = {}\n", w.x, w.lengths),
        json!({"atoms": m.atoms(), "x": w.x, "lengths": w.lengths}),
    )
}

fn realize_set(set: &str, cfg: &RunConfig) -> Result<Report> {
    let values = parse_rationals("set", set)?;
    let target: LengthSet = as_u64s(&values)
        .ok_or_else(|| CliError::Usage("--set: lengths must be nonnegative integers".into()))?
        .into_iter()
        .collect();
    let limits = cfg.limits();
    let r = realize(&target, &cfg.bounds, &limits)?;
    if !verify_realization(&r, &target, &limits) {
        return Err(puiseux::Error::Internal(format!("realization of {target} failed to re-verify")).into());
    }
    ok(
        format!("{} at {}: {}\n", r.monoid, r.element, r.verified_set),
        json!(r),
    )
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn goldbach(bound: u64, check_l3: bool, weak: bool) -> Result<Report> {
    let report = verify_goldbach_theorem(bound)?;
    let mut ok_all = report.discrepancies.is_empty();
    let (lo, hi) = report.agreement_window;
    let mut text = format!(
        "window: [{lo}, {hi}]\ngoldbach: [{}]\nformula L(2): [{}]\ndiscrepancies: {}\n",
        joined(report.goldbach_set.iter()),
        joined(report.computed_l2.iter()),
        if report.discrepancies.is_empty() {
            "none".to_string()
        } else {
            joined(&report.discrepancies)
        }
    );
    let mut json = to_value(&report);
    if check_l3 {
        let l3 = l3_report(bound)?;
        ok_all &= l3.claimed_range_included;
        let _ = writeln!(
            text,
            "L(3) flagged against Z≥{}: {}\nL(3) contains [{}, {}]: {}",
            l3.claimed_min,
            if l3.flagged.is_empty() { "none".to_string() } else { joined(&l3.flagged) },
            l3.claimed_min,
            bound,
            if l3.claimed_range_included { "yes" } else { "no" }
        );
        json["l3"] = to_value(&l3);
    }
    if weak {
        let w = verify_weak_goldbach(bound)?;
        ok_all &= w.ok;
        let _ = writeln!(
            text,
            "odd values in [7, {bound}] as three primes: {} checked, {} failures",
            w.checked,
            w.failures.len()
        );
        json["weak"] = to_value(&w);
    }
    Ok(Report { text, json, ok: ok_all })
}

fn verify(kind: Construction, stages: usize, prime_pool: &str, cfg: &RunConfig) -> Result<Report> {
    let m = staged(kind, stages, prime_pool, cfg)?;
    let report = m.audit()?;
    let mut text = String::new();
    for c in report.failures() {
        let _ = writeln!(text, "FAILED stage {} {}: {}", c.stage, c.name, c.detail);
    }
    let failed = report.failures().count();
    let _ = writeln!(
        text,
        "{}: {} stages, {} checks, {}",
        kind_name(kind),
        report.stages,
        report.checks.len(),
        if failed == 0 { "all passed".to_string() } else { format!("{failed} failed") }
    );
    Ok(Report {
        text,
        ok: report.ok,
        json: to_value(&report),
    })
}

fn truncated_lengths(
    kind: Construction,
    stages: usize,
    element: &str,
    prime_pool: &str,
    cfg: &RunConfig,
) -> Result<Report> {
    let x = parse_rational("element", element)?;
    let m = staged(kind, stages, prime_pool, cfg)?;
    let set = m.truncated_length_set(&x, stages)?;
    ok(
        format!("{set}\n"),
        json!({"kind": kind_name(kind), "stages": stages, "element": x, "lengths": set}),
    )
}

fn cross_check(n: u64, stage: usize, limits: &Limits) -> Result<Report> {
    let c = cross_check_formula_vs_enumeration(n, stage, limits)?;
    let text = format!(
        "L({n}) over primes ≤ {}\nenumerated: {}\nformula:    {}\n{}\n",
        c.prime_bound,
        c.enumerated,
        c.formula,
        if c.agree { "agree" } else { "DISAGREE" }
    );
    Ok(Report {
        text,
        ok: c.agree,
        json: to_value(&c),
    })
}

fn valuation(prime: u64, value: &str) -> Result<Report> {
    let r = parse_rational("value", value)?;
    let v = padic_valuation(prime, &r)?;
    let v_json = match v {
        ExtValuation::Finite(k) => json!(k),
        ExtValuation::Infinity => json!("infinity"),
    };
    ok(
        format!("{v}\n"),
        json!({"prime": prime, "value": r, "valuation": v_json}),
    )
}
