use num_bigint::BigUint;
use num_traits::Zero;

use super::{subset_enumeration, Stage, StagedMonoid, Witness};
use crate::realization::realize;
use crate::{Error, Rational, Result};

/// Build stage `index` on top of the stages already in `m`.
///
/// The realized pair `(N, x)` is first multiplied by the smallest positive
/// integer `c` with `c·min N > max A_{index-1}`. The prime `p` is then the
/// smallest admitted odd prime, unused by earlier stages and dividing no
/// shifted atom, such that
///
/// * stage 1: `p > 2x` and `p > 2a` for every atom `a` of `N`;
/// * later stages: `p > 2·(p-1)/p·x`, `p > 2·(p-1)/p·a`, and
///   `max A_{index-1} < (p-1)/p·c·min N`.
///
/// The stage atoms are `(p-1)/p·c·N` and the witness is `(p-1)/p·c·x`.
pub(super) fn next_stage(m: &StagedMonoid, index: usize) -> Result<Stage> {
    let target = subset_enumeration(index)?;
    let realized = realize(&target, &m.bounds, &m.limits)?;

    let base_min = Rational::from(realized.monoid.atoms()[0]);
    let prev_max = m.stages.iter().flat_map(|s| s.atoms.iter()).max().cloned();
    let c = match &prev_max {
        None => BigUint::from(1u32),
        Some(pm) => (pm / &base_min).floor() + 1u32,
    };
    let c = Rational::from(c);
    let shifted: Vec<Rational> = realized
        .monoid
        .atoms()
        .iter()
        .map(|&a| Rational::from(a) * &c)
        .collect();
    let x_shifted = Rational::from(realized.element) * &c;
    let shifted_max = shifted.last().expect("nonempty").clone();
    let shifted_min = shifted[0].clone();

    let used: Vec<u64> = m.stages.iter().flat_map(|s| s.primes.iter().copied()).collect();
    let two = Rational::from(2u64);
    let p = m.pool.smallest(3, m.limits.prime_search_cap, |p| {
        if p == 2 || used.contains(&p) {
            return false;
        }
        let pb = BigUint::from(p);
        if shifted.iter().any(|a| (a.numer() % &pb).is_zero()) {
            return false;
        }
        let pr = Rational::from(p);
        match &prev_max {
            None => pr > &two * &x_shifted && pr > &two * &shifted_max,
            Some(pm) => {
                let f = Rational::new(p - 1, p).expect("p > 0");
                pr > &two * &f * &x_shifted
                    && pr > &two * &f * &shifted_max
                    && *pm < &f * &shifted_min
            }
        }
    })?;

    let f = Rational::new(p - 1, p)?;
    let atoms: Vec<Rational> = shifted.iter().map(|a| a * &f).collect();
    let x = &x_shifted * &f;
    let stage = Stage {
        index,
        atoms,
        primes: vec![p],
        witness: Some(Witness { x, target }),
    };
    let failures = super::audit::full_ssl_conditions(&stage, m.stages.last(), &m.limits)?;
    if let Some(c) = failures.into_iter().find(|c| !c.ok) {
        return Err(Error::Internal(format!(
            "stage {index} violates {}: {}",
            c.name, c.detail
        )));
    }
    Ok(stage)
}

#[cfg(test)]
mod tests {
    use crate::staged::build_full_ssl;
    use crate::{Limits, PrimePool, Rational, SearchBounds};

    fn build(pool: &str, n: usize) -> crate::StagedMonoid {
        build_full_ssl(pool.parse().unwrap(), n, SearchBounds::default(), Limits::default()).unwrap()
    }

    fn primes(m: &crate::StagedMonoid) -> Vec<u64> {
        m.stages().iter().map(|s| s.primes[0]).collect()
    }

    #[test]
    fn first_stages() {
        let m = build("all", 3);
        assert_eq!(primes(&m), vec![5, 7, 11]);
        let s1 = &m.stages()[0];
        assert_eq!(s1.atoms, vec!["4/5".parse::<Rational>().unwrap()]);
        let w = s1.witness.as_ref().unwrap();
        assert_eq!(w.x, "8/5".parse().unwrap());
        assert_eq!(w.target.as_slice(), &[2]);
    }

    #[test]
    fn residue_pools_stay_in_their_class() {
        let m = build("1mod4", 4);
        assert!(primes(&m).iter().all(|p| p % 4 == 1));
        let m = build("3mod4", 4);
        assert!(primes(&m).iter().all(|p| p % 4 == 3));
    }

    #[test]
    fn exhausted_finite_pool() {
        let err = build_full_ssl("5,7".parse::<PrimePool>().unwrap(), 3, SearchBounds::default(), Limits::default())
            .unwrap_err();
        assert_eq!(err.kind(), crate::ErrorKind::Resource);
        assert!(matches!(err, crate::Error::AtStage { stage: 3, .. }));
    }
}
