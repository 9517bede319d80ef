//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `harness = false`. The process fails when a criterion fails,
//! except for those listed in `KNOWN_RED`, which are printed as FAIL with the
//! reason and do not change the exit status.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use puiseux::realization::{realize_many, verify_realization};
use puiseux::staged::{build_full_ssl, build_non_two, subset_enumeration, witness_length_two};
use puiseux::{
    arith::{padic_valuation, ExtValuation},
    goldbach::{cross_check_formula_vs_enumeration, verify_weak_goldbach},
    solver::{self, Strategy},
    Error, FGPuiseux, IntSubmonoid, LengthSet, Limits, PrimePool, Rational, SearchBounds,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Criteria that cannot hold as stated, with the reason printed next to FAIL.
const KNOWN_RED: &[(u32, &str)] = &[(
    10,
    "one-atom monoids are all isomorphic, so the two stage-1 truncations ⟨4/5⟩ and ⟨6/7⟩ differ by the factor 14/15",
)];

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn pass(detail: impl Into<String>) -> Self {
        Verdict { ok: true, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Verdict { ok: false, detail: detail.into() }
    }

    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Verdict { ok, detail: detail.into() }
    }
}

type Outcome = Result<Verdict, String>;

fn lib<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut argv = vec!["puiseux"];
    argv.extend_from_slice(args);
    argv.extend(["--output", "json"]);
    let out = puiseux_cli::run(argv);
    if out.code != 0 {
        return Err(format!("{args:?} exited {}: {}", out.code, out.stderr.trim()));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn u64s(v: &Value) -> Vec<u64> {
    v.as_array()
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default()
}

fn q(s: &str) -> Rational {
    s.parse().expect("valid rational")
}

fn sieve(n: usize) -> Vec<bool> {
    let mut is = vec![true; n + 1];
    is[0] = false;
    if n >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is
}

/// `L(v)` for every `v ≤ target` over integer atoms, by the recurrence
/// `L(v) = ⋃ₐ (L(v − a) + 1)`.
fn length_table(atoms: &[u64], target: u64) -> Vec<BTreeSet<u64>> {
    let mut reach: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); target as usize + 1];
    reach[0].insert(0);
    for v in 1..=target as usize {
        let mut acc = BTreeSet::new();
        for &a in atoms {
            if a as usize <= v {
                acc.extend(reach[v - a as usize].iter().map(|l| l + 1));
            }
        }
        reach[v] = acc;
    }
    reach
}

fn oracle_lengths(atoms: &[u64], x: u64) -> LengthSet {
    length_table(atoms, x)[x as usize].iter().copied().collect()
}

/// Exhaustive lengths over rational atoms.
fn brute_lengths(atoms: &[Rational], x: &Rational) -> LengthSet {
    fn go(atoms: &[Rational], rest: &Rational, len: u64, out: &mut BTreeSet<u64>) {
        if rest.is_zero() {
            out.insert(len);
            return;
        }
        let Some((a, tail)) = atoms.split_first() else { return };
        let mut r = rest.clone();
        let mut c = 0;
        loop {
            go(tail, &r, len + c, out);
            match r.checked_sub(a) {
                Some(next) => r = next,
                None => break,
            }
            c += 1;
        }
    }
    let mut out = BTreeSet::new();
    go(atoms, x, 0, &mut out);
    out.into_iter().collect()
}

fn goldbach_window() -> Outcome {
    let v = cli_json(&["goldbach", "--bound", "1000"])?;
    let r = &v["result"];
    let discrepancies = u64s(&r["discrepancies"]);
    let primes = sieve(1000);
    let expected: Vec<u64> = (4..=1000u64)
        .filter(|&n| (2..=n / 2).any(|p| primes[p as usize] && primes[(n - p) as usize]))
        .collect();
    let goldbach = u64s(&r["goldbach"]);
    let formula = u64s(&r["formula_L2"]);
    Ok(Verdict::check(
        discrepancies.is_empty() && goldbach == expected && formula == expected,
        format!(
            "{} discrepancies; {} Goldbach numbers in [4, 1000], sieve oracle {}, formula {}",
            discrepancies.len(),
            goldbach.len(),
            if goldbach == expected { "agrees" } else { "disagrees" },
            if formula == expected { "agrees" } else { "disagrees" },
        ),
    ))
}

fn formula_vs_enumeration() -> Outcome {
    // Integer image of ⟨1/2, 1/3, 1/5, 1/7, 1/11⟩ scaled by 2310.
    const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
    let atoms: Vec<u64> = PRIMES.iter().map(|p| 2310 / p).collect();
    let table = length_table(&atoms, 4 * 2310);
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 1..=4u64 {
        let c = lib(cross_check_formula_vs_enumeration(n, 5, &Limits::default()))?;
        let oracle: LengthSet = table[(n * 2310) as usize].iter().copied().collect();
        let good = c.agree && c.enumerated == oracle && c.formula == oracle;
        ok &= good;
        notes.push(format!("n={n}: |L|={}{}", oracle.len(), if good { "" } else { " MISMATCH" }));
    }
    Ok(Verdict::check(ok, notes.join(", ")))
}

fn l3_discrepancy() -> Outcome {
    let v = cli_json(&["goldbach", "--bound", "100", "--check-l3"])?;
    let l3 = &v["result"]["l3"];
    let flagged = u64s(&l3["flagged"]);
    let members: BTreeSet<u64> = l3["membership"]
        .as_array()
        .ok_or("missing membership")?
        .iter()
        .filter(|m| m["in_formula_set"] == true)
        .filter_map(|m| m["n"].as_u64())
        .collect();
    let included = (7..=100).all(|n| members.contains(&n));
    // 3 = 6·(1/2): in ⟨1/2, 1/3, 1/5⟩ scaled by 30, 6 is a length of 90.
    let six_direct = oracle_lengths(&[15, 10, 6], 90).contains(6);
    Ok(Verdict::check(
        flagged.contains(&6) && members.contains(&6) && six_direct && included && l3["claimed_range_included"] == true,
        format!("flagged {flagged:?} against Z≥7; [7, 100] included: {included}"),
    ))
}

fn weak_goldbach() -> Outcome {
    const BOUND: u64 = 100_000;
    let r = lib(verify_weak_goldbach(BOUND))?;
    let is = sieve(BOUND as usize);
    let primes: Vec<u64> = (2..=BOUND).filter(|&n| is[n as usize]).collect();
    let mut missing = Vec::new();
    for n in (7..=BOUND).step_by(2) {
        let found = primes.iter().take_while(|&&p| 3 * p <= n).any(|&p| {
            primes
                .iter()
                .take_while(|&&q| q <= (n - p) / 2)
                .any(|&q| q >= p && is[(n - p - q) as usize])
        });
        if !found {
            missing.push(n);
        }
    }
    Ok(Verdict::check(
        r.ok && missing.is_empty() && r.checked == (BOUND - 7) / 2 + 1,
        format!("{} odd values checked, {} library failures, {} oracle failures", r.checked, r.failures.len(), missing.len()),
    ))
}

fn scaling_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    let limits = Limits::default();
    let mut members = 0;
    for i in 0..500 {
        let k = rng.gen_range(1..=4);
        let gens: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=30)).collect();
        let x: u64 = rng.gen_range(0..=300);
        let (a, b) = loop {
            let a: u64 = rng.gen_range(1..=20);
            let b: u64 = rng.gen_range(1..=20);
            if a <= 20 * b {
                break (a, b);
            }
        };
        let qr = lib(Rational::new(a, b))?;
        let n = lib(IntSubmonoid::minimalize(&gens))?;
        let direct = lib(n.length_set(x, &limits))?;
        let scaled_gens: Vec<Rational> = gens.iter().map(|&g| Rational::from(g) * qr.clone()).collect();
        let qx = Rational::from(x) * qr.clone();
        let scaled = lib(FGPuiseux::normalize(&scaled_gens, &limits))?;
        let via_image = lib(scaled.length_set(&qx, &limits))?;
        let via_solver = lib(solver::length_set(scaled.atoms(), &qx, Strategy::Direct, &limits))?;
        let oracle = oracle_lengths(n.atoms(), x);
        if direct != via_image || direct != via_solver || direct != oracle {
            return Ok(Verdict::fail(format!(
                "instance {i}: N = {n}, q = {qr}, x = {x}: {direct} vs {via_image} vs {via_solver} vs oracle {oracle}"
            )));
        }
        if !direct.is_empty() {
            members += 1;
        }
    }
    Ok(Verdict::pass(format!("500 instances equal ({members} with x ∈ N)")))
}

fn full_ssl() -> Outcome {
    const N: usize = 12;
    let v = cli_json(&["construct", "full-ssl", "--stages", "12"])?;
    let stages = v["result"]["stages"].as_array().ok_or("missing stages")?;
    if stages.len() != N {
        return Ok(Verdict::fail(format!("{} stages built", stages.len())));
    }
    let m = lib(build_full_ssl(PrimePool::All, N, SearchBounds::default(), Limits::default()))?;
    let mut bad = Vec::new();
    let mut pairs = 0;
    for (l, stage) in stages.iter().enumerate() {
        let l = l + 1;
        let x = q(stage["witness"]["x"].as_str().ok_or("missing witness")?);
        let expected = lib(subset_enumeration(l))?;
        for t in l..=N {
            pairs += 1;
            let got = lib(m.truncated_length_set(&x, t))?;
            if got != expected {
                bad.push(format!("x_{l} at t={t}: {got} ≠ {expected}"));
            }
        }
    }
    let report = lib(m.audit())?;
    const CONDITIONS: [&str; 4] = ["witness", "denominators", "prime-bound", "ascending"];
    let mut missing = Vec::new();
    for s in 1..=N {
        for name in CONDITIONS {
            let present = report.checks.iter().any(|c| c.stage == s && c.name == name && c.ok);
            // The first stage has nothing below it.
            if !present && !(s == 1 && name == "ascending") {
                missing.push(format!("stage {s} {name}"));
            }
        }
    }
    let verify = puiseux_cli::run(["puiseux", "verify", "full-ssl", "--stages", "12"]);
    bad.extend(missing);
    if verify.code != 0 {
        bad.push(format!("verify exited {}", verify.code));
    }
    if !report.ok {
        bad.extend(report.failures().map(|c| format!("audit stage {} {}", c.stage, c.name)));
    }
    Ok(Verdict::check(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{pairs} (ℓ, t) pairs stable, {} audit checks pass", report.checks.len())
        } else {
            bad.join("; ")
        },
    ))
}

fn non_two() -> Outcome {
    let v = cli_json(&["construct", "non-two", "--stages", "4"])?;
    let stages = v["result"]["stages"].as_array().ok_or("missing stages")?;
    let cumulative: usize = stages.iter().map(|s| s["atoms"].as_array().map_or(0, Vec::len)).sum();
    let limits = Limits::default();
    let m = lib(build_non_two(4, limits))?;
    let mut bad = Vec::new();
    if cumulative != 20 {
        bad.push(format!("k_4 = {cumulative}"));
    }
    for t in 1..=4 {
        let atoms = lib(m.cumulative_atoms(t))?;
        let mut sorted = atoms.clone();
        sorted.sort();
        let normalized = lib(FGPuiseux::normalize(&atoms, &limits))?;
        if normalized.atoms() != sorted.as_slice() {
            bad.push(format!("stage {t} atoms not minimal"));
        }
    }
    let first = lib(m.cumulative_atoms(3))?;
    if first.len() != 5 {
        bad.push(format!("k_3 = {}", first.len()));
    }
    let mut checked = 0;
    for i in 0..first.len() {
        for j in i..first.len() {
            let x = first[i].clone() + &first[j];
            let l = lib(m.truncated_length_set(&x, 4))?;
            checked += 1;
            let odd = l.iter().any(|n| n > 2 && n % 2 == 1);
            if !l.contains(2) || !odd {
                bad.push(format!("a_{} + a_{} = {x}: L = {l}", i + 1, j + 1));
            }
        }
    }
    Ok(Verdict::check(
        bad.is_empty(),
        if bad.is_empty() {
            format!("k_4 = 20, 4 cumulative sets minimal, {checked} pair sums have 2 and an odd length > 2")
        } else {
            bad.join("; ")
        },
    ))
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn realization_coverage() -> Outcome {
    let bounds = SearchBounds::default();
    let limits = Limits::default();
    let mut targets = Vec::new();
    for mask in 1u32..(1 << 7) {
        if mask.count_ones() <= 3 {
            targets.push((0..7).filter(|i| mask >> i & 1 == 1).map(|i| i as u64 + 2).collect::<LengthSet>());
        }
    }
    targets.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    let results = lib(realize_many(&targets, &bounds, &limits))?;
    let mut golden = String::new();
    let mut problems = Vec::new();
    let (mut found, mut not_found) = (0, 0);
    for (target, r) in targets.iter().zip(&results) {
        match r {
            Ok(r) => {
                found += 1;
                let oracle = oracle_lengths(r.monoid.atoms(), r.element);
                if !verify_realization(r, target, &limits) || oracle != *target || r.element > bounds.max_element {
                    problems.push(format!("{target}: unverified {} at {}", r.monoid, r.element));
                }
                let _ = writeln!(golden, "{}", serde_json::json!({"set": target, "result": r}));
            }
            Err(Error::NotFound { bounds: b, .. }) if *b == bounds => {
                not_found += 1;
                if target.len() <= 2 {
                    problems.push(format!("{target}: expected a realization"));
                }
                let _ = writeln!(golden, "{}", serde_json::json!({"set": target, "not_found": b}));
            }
            Err(e) => problems.push(format!("{target}: {e}")),
        }
    }
    let path = golden_path("realize_2_8.jsonl");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &golden).map_err(|e| e.to_string())?;
    } else {
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        if expected != golden {
            problems.push("results differ from golden file".to_string());
        }
    }
    Ok(Verdict::check(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} targets: {found} realized and verified, {not_found} NotFound naming the bounds", targets.len())
        } else {
            problems.join("; ")
        },
    ))
}

fn witness_two() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2_2222);
    let limits = Limits::default();
    for i in 0..50 {
        let k = rng.gen_range(1..=4);
        let gens: Vec<Rational> = (0..k)
            .map(|_| Rational::new(rng.gen_range(1..=30u64), rng.gen_range(1..=10u64)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let m = lib(FGPuiseux::normalize(&gens, &limits))?;
        if *m.min_atom() < q("1/10") {
            return Ok(Verdict::fail(format!("instance {i}: generator below 1/10")));
        }
        let w = lib(witness_length_two(&m, &limits))?;
        let brute = brute_lengths(m.atoms(), &w.x);
        if brute.as_slice() != [2] {
            return Ok(Verdict::fail(format!("instance {i}: ⟨{:?}⟩, x = {}: brute force {brute}", m.atoms(), w.x)));
        }
    }
    Ok(Verdict::pass("50 monoids, brute-force L(x) = {2} each time"))
}

fn two_pools() -> Outcome {
    const N: usize = 8;
    let build = |pool: &str| build_full_ssl(pool.parse().expect("pool"), N, SearchBounds::default(), Limits::default());
    let a = lib(build("1mod4"))?;
    let b = lib(build("3mod4"))?;
    let mut bad = Vec::new();
    for t in 1..=N {
        let (sa, sb) = (&a.stages()[t - 1], &b.stages()[t - 1]);
        let (wa, wb) = (sa.witness.as_ref().ok_or("witness")?, sb.witness.as_ref().ok_or("witness")?);
        let la = lib(a.truncated_length_set(&wa.x, t))?;
        let lb = lib(b.truncated_length_set(&wb.x, t))?;
        if wa.target != wb.target || la != wa.target || lb != wb.target {
            bad.push(format!("stage {t}: targets {} / {}, realized {la} / {lb}", wa.target, wb.target));
        }
        if sa.primes.iter().any(|p| p % 4 != 1) || sb.primes.iter().any(|p| p % 4 != 3) {
            bad.push(format!("stage {t}: prime outside its pool"));
        }
    }
    let ta: Vec<FGPuiseux> = (1..=N).map(|t| lib(a.truncation(t))).collect::<Result<_, _>>()?;
    let tb: Vec<FGPuiseux> = (1..=N).map(|t| lib(b.truncation(t))).collect::<Result<_, _>>()?;
    let mut isomorphic = Vec::new();
    for (s, x) in ta.iter().enumerate() {
        for (t, y) in tb.iter().enumerate() {
            if let Some(r) = x.isomorphism_factor(y) {
                isomorphic.push(format!("({}, {}) by {r}", s + 1, t + 1));
            }
            if y.isomorphism_factor(x).is_some() != x.isomorphism_factor(y).is_some() {
                bad.push(format!("asymmetric answer at ({}, {})", s + 1, t + 1));
            }
        }
    }
    let detail = format!(
        "targets equal at all {N} stages: {}; {} of {} truncation pairs isomorphic{}",
        bad.is_empty(),
        isomorphic.len(),
        N * N,
        if isomorphic.is_empty() { String::new() } else { format!(": {}", isomorphic.join(", ")) }
    );
    if !bad.is_empty() {
        return Ok(Verdict::fail(format!("{detail}; {}", bad.join("; "))));
    }
    Ok(Verdict::check(isomorphic.is_empty(), detail))
}

fn oracle_valuation(p: u64, n: u64, d: u64) -> ExtValuation {
    if n == 0 {
        return ExtValuation::Infinity;
    }
    let count = |mut m: u64| {
        let mut e = 0i64;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        e
    };
    ExtValuation::Finite(count(n) - count(d))
}

fn valuation_axioms() -> Outcome {
    const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 97, 1_000_003];
    let mut rng = ChaCha8Rng::seed_from_u64(0x0_7a1);
    let draw = |rng: &mut ChaCha8Rng| -> (u64, u64) {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        // Bias towards multiples of p and towards zero so both sides are exercised.
        let mut n: u64 = if rng.gen_bool(0.05) { 0 } else { rng.gen_range(1..=1000) };
        let mut d: u64 = rng.gen_range(1..=1000);
        for _ in 0..rng.gen_range(0..4) {
            if rng.gen_bool(0.5) {
                n = n.saturating_mul(p).min(1 << 40);
            } else {
                d = d.saturating_mul(p).min(1 << 40);
            }
        }
        (n, d)
    };
    for i in 0..10_000 {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        let (rn, rd) = draw(&mut rng);
        let (sn, sd) = draw(&mut rng);
        let r = lib(Rational::new(rn, rd))?;
        let s = lib(Rational::new(sn, sd))?;
        let vr = lib(padic_valuation(p, &r))?;
        let vs = lib(padic_valuation(p, &s))?;
        let vprod = lib(padic_valuation(p, &(r.clone() * s.clone())))?;
        let vsum = lib(padic_valuation(p, &(r.clone() + &s)))?;
        let exact = vr == oracle_valuation(p, rn, rd) && vs == oracle_valuation(p, sn, sd);
        if !exact || vprod != vr + vs || vsum < vr.min(vs) {
            return Ok(Verdict::fail(format!(
                "triple {i}: p = {p}, r = {r}, s = {s}: v(r) = {vr}, v(s) = {vs}, v(rs) = {vprod}, v(r+s) = {vsum}"
            )));
        }
    }
    Ok(Verdict::pass("10000 triples: v(rs) = v(r) + v(s) and v(r+s) ≥ min(v(r), v(s))"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "L(2) equals the Goldbach numbers on [4, 1000]", limit: Some(secs(5)), run: goldbach_window },
        Criterion { id: 2, name: "length formula matches enumeration, n = 1..4, t = 5", limit: Some(secs(60)), run: formula_vs_enumeration },
        Criterion { id: 3, name: "L(3) report flags 6 and contains [7, 100]", limit: None, run: l3_discrepancy },
        Criterion { id: 4, name: "odd n in [7, 10^5] are sums of three primes", limit: Some(secs(30)), run: weak_goldbach },
        Criterion { id: 5, name: "L_N(x) = L_qN(qx) on 500 random instances", limit: None, run: scaling_invariance },
        Criterion { id: 6, name: "full-SSL through 12 stages", limit: Some(secs(300)), run: full_ssl },
        Criterion { id: 7, name: "non-two through 4 stages", limit: Some(secs(120)), run: non_two },
        Criterion { id: 8, name: "realization of every S ⊆ {2..8}, |S| ≤ 3", limit: None, run: realization_coverage },
        Criterion { id: 9, name: "length-two witnesses on 50 random monoids", limit: None, run: witness_two },
        Criterion { id: 10, name: "two prime pools: equal targets, no isomorphic truncations", limit: None, run: two_pools },
        Criterion { id: 11, name: "valuation identities on 10^4 random triples", limit: None, run: valuation_axioms },
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut unexpected = 0;
    for c in criteria.iter().filter(|c| filter.is_none_or(|f| f == c.id)) {
        let start = Instant::now();
        let verdict = (c.run)().unwrap_or_else(|e| Verdict::fail(format!("error: {e}")));
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let ok = verdict.ok && in_time;
        let mut detail = verdict.detail;
        if !in_time {
            let _ = write!(detail, "; took {:.1?}, limit {:?}", elapsed, c.limit.unwrap());
        }
        let known = KNOWN_RED.iter().find(|(id, _)| *id == c.id);
        if !ok {
            if let Some((_, why)) = known {
                let _ = write!(detail, " [known: {why}]");
            } else {
                unexpected += 1;
            }
        }
        println!(
            "{} criterion {:>2}: {} ({:.2}s) {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            detail
        );
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
