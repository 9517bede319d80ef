use serde::Serialize;

use super::non_two::{is_minimal, non_two_stage_size};
use super::{subset_enumeration, Stage, StagedKind, StagedMonoid};
use crate::arith::nth_prime;
use crate::puiseux::denominator_primes;
use crate::{FGPuiseux, Limits, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub stage: usize,
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub kind: StagedKind,
    pub stages: usize,
    pub ok: bool,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

fn check(stage: usize, name: &str, ok: bool, detail: impl Into<String>) -> AuditCheck {
    AuditCheck {
        stage,
        name: name.to_string(),
        ok,
        detail: detail.into(),
    }
}

fn list(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// The four per-stage conditions of the full-SSL construction: the witness
/// has the target set of lengths in the stage-local monoid, every atom has
/// denominator `p`, `p` exceeds twice the witness and every atom, and the
/// stage sits entirely above the previous one.
pub(super) fn full_ssl_conditions(stage: &Stage, prev: Option<&Stage>, limits: &Limits) -> Result<Vec<AuditCheck>> {
    let n = stage.index;
    let mut out = Vec::new();
    let Some(w) = &stage.witness else {
        out.push(check(n, "witness", false, "stage has no witness"));
        return Ok(out);
    };
    let [p] = stage.primes[..] else {
        out.push(check(n, "denominators", false, "expected exactly one stage prime"));
        return Ok(out);
    };

    let local = FGPuiseux::normalize(&stage.atoms, limits)?;
    let mut sorted = stage.atoms.clone();
    sorted.sort();
    let lengths = local.length_set(&w.x, limits)?;
    out.push(check(
        n,
        "witness",
        local.atoms() == sorted.as_slice() && lengths == w.target,
        format!("L({}) = {} in ⟨{}⟩, target {}", w.x, lengths, list(&stage.atoms), w.target),
    ));

    let bad: Vec<Rational> = stage
        .atoms
        .iter()
        .filter(|a| a.denom() != &p.into())
        .cloned()
        .collect();
    out.push(check(
        n,
        "denominators",
        bad.is_empty(),
        if bad.is_empty() {
            format!("all atoms have denominator {p}")
        } else {
            format!("denominator differs from {p}: {}", list(&bad))
        },
    ));

    let pr = Rational::from(p);
    let two = Rational::from(2u64);
    let top = stage.atoms.iter().max().expect("nonempty");
    let biggest = std::cmp::max(&two * &w.x, &two * top);
    out.push(check(
        n,
        "prime-bound",
        pr > biggest,
        format!("p = {p}, max(2x, 2a) = {biggest}"),
    ));

    if let Some(prev) = prev {
        let prev_max = prev.atoms.iter().max().expect("nonempty");
        let min = stage.atoms.iter().min().expect("nonempty");
        out.push(check(
            n,
            "ascending",
            prev_max < min,
            format!("max A_{} = {prev_max}, min A_{n} = {min}", n - 1),
        ));
    }
    Ok(out)
}

pub(super) fn audit(m: &StagedMonoid) -> Result<AuditReport> {
    let total = m.materialized();
    let mut checks = Vec::new();
    let limits = &m.limits;

    for (i, stage) in m.stages.iter().enumerate() {
        let n = stage.index;
        let earlier = m.cumulative_atoms(n - 1).unwrap_or_default();
        let fresh = !stage.atoms.is_empty() && stage.atoms.iter().all(|a| !earlier.contains(a));
        checks.push(check(
            n,
            "nested",
            fresh && n == i + 1,
            format!("{} new atoms, {} before", stage.atoms.len(), earlier.len()),
        ));
        let cumulative = m.cumulative_atoms(n)?;
        checks.push(check(
            n,
            "minimal",
            is_minimal(&cumulative, limits)?,
            format!("{} cumulative atoms", cumulative.len()),
        ));

        match m.kind {
            StagedKind::Elementary => {
                let p = nth_prime(n).expect("n ≥ 1");
                let ok = stage.atoms == [Rational::new(1u64, p)?] && stage.primes == [p];
                checks.push(check(n, "atom", ok, format!("expected 1/{p}")));
            }
            StagedKind::FullSsl => {
                let prev = i.checked_sub(1).map(|j| &m.stages[j]);
                checks.extend(full_ssl_conditions(stage, prev, limits)?);
                let expected = subset_enumeration(n)?;
                if let Some(w) = &stage.witness {
                    checks.push(check(
                        n,
                        "target",
                        w.target == expected,
                        format!("target {}, enumeration {expected}", w.target),
                    ));
                    let mut bad = Vec::new();
                    for t in n..=total {
                        let l = m.truncated_length_set(&w.x, t)?;
                        if l != expected {
                            bad.push(format!("t={t}: {l}"));
                        }
                    }
                    checks.push(check(
                        n,
                        "stabilization",
                        bad.is_empty(),
                        if bad.is_empty() {
                            format!("L(x_{n}) = {expected} at every t in [{n}, {total}]")
                        } else {
                            bad.join("; ")
                        },
                    ));
                }
            }
            StagedKind::NonTwo => {
                let k = non_two_stage_size(n);
                checks.push(check(
                    n,
                    "size",
                    k == Some(cumulative.len() as u64),
                    format!("k_{n} = {}", cumulative.len()),
                ));
                if n >= 3 {
                    checks.push(non_two_pairs(m, n, &earlier)?);
                }
            }
        }
    }

    if m.kind == StagedKind::NonTwo && total >= 3 {
        checks.extend(non_two_lengths(m, total)?);
    }

    let ok = checks.iter().all(|c| c.ok);
    Ok(AuditReport {
        kind: m.kind,
        stages: total,
        ok,
        checks,
    })
}

/// Stage `n` primes are distinct, odd, new, coprime to the pair sums, and
/// each new atom is the pair sum divided by its prime.
fn non_two_pairs(m: &StagedMonoid, n: usize, earlier: &[Rational]) -> Result<AuditCheck> {
    let dp = denominator_primes(earlier)?;
    let stage = &m.stages[n - 1];
    let records: Vec<_> = m.pairs.iter().filter(|r| r.stage == n).collect();
    let mut problems = Vec::new();
    let mut seen = Vec::new();
    let k = earlier.len();
    if records.len() != k * (k + 1) / 2 || stage.atoms.len() != records.len() {
        problems.push(format!("{} pairs for {k} atoms", records.len()));
    }
    for (r, atom) in records.iter().zip(&stage.atoms) {
        let sum = &earlier[r.left] + &earlier[r.right];
        let p = r.prime;
        if p % 2 == 0 || dp.contains(p) || seen.contains(&p) {
            problems.push(format!("prime {p} for ({}, {}) is even, old or repeated", r.left, r.right));
        }
        if (sum.numer() % num_bigint::BigUint::from(p)) == num_bigint::BigUint::from(0u32) {
            problems.push(format!("{p} divides the numerator of {sum}"));
        }
        if *atom != &sum / Rational::from(p) {
            problems.push(format!("atom {atom} is not ({sum})/{p}"));
        }
        seen.push(p);
    }
    Ok(check(
        n,
        "pair-primes",
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} pairs, primes {:?}", records.len(), seen)
        } else {
            problems.join("; ")
        },
    ))
}

/// For every pair over `A_{t-1}`: `L(a_i + a_j)` in `M_t` contains 2, an odd
/// length above 2, and every length produced by the escalation chain, whose
/// lengths strictly increase.
fn non_two_lengths(m: &StagedMonoid, t: usize) -> Result<Vec<AuditCheck>> {
    let base = m.cumulative_atoms(t - 1)?;
    let mut two_problems = Vec::new();
    let mut esc_problems = Vec::new();
    let mut pairs = 0;
    for i in 0..base.len() {
        for j in i..base.len() {
            pairs += 1;
            let x = &base[i] + &base[j];
            let l = m.truncated_length_set(&x, t)?;
            let odd_long = l.iter().any(|v| v > 2 && v % 2 == 1);
            if !l.contains(2) || !odd_long || l.len() < 2 {
                two_problems.push(format!("L({x}) = {l}"));
            }
            let chain: Vec<u64> = m.escalation(i, j)?.iter().map(|f| f.length).collect();
            let increasing = chain.windows(2).all(|w| w[0] < w[1]);
            if chain.is_empty() || !increasing || !chain.iter().all(|&c| l.contains(c)) {
                esc_problems.push(format!("({i}, {j}): chain {chain:?}, L = {l}"));
            }
        }
    }
    let summary = |problems: Vec<String>, ok_text: String| {
        if problems.is_empty() {
            ok_text
        } else {
            problems.join("; ")
        }
    };
    Ok(vec![
        check(
            t,
            "two-implies-more",
            two_problems.is_empty(),
            summary(two_problems, format!("{pairs} pair sums over A_{}", t - 1)),
        ),
        check(
            t,
            "escalation",
            esc_problems.is_empty(),
            summary(esc_problems, format!("{pairs} pair chains strictly increasing")),
        ),
    ])
}
