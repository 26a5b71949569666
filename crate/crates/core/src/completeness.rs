//! Residue completeness and uniform distribution per modulus, the candidate
//! primes of complete moduli, and the lifting rules that carry completeness
//! from `m` to `p*m`.
//!
//! Verdicts here are exact: one full period is generated and tallied.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, is_prime, prime_divisors, reduce};
use crate::error::{Error, Result};
use crate::order::{order_composite, order_lifted};
use crate::recurrence::{
    check_modulus, cycle_from_seed, generate, invariant_gcd, invariant_residue, InvariantClass,
    RecurrenceSpec, Variant,
};

/// Lifting conclusions are re-checked by brute force when the target modulus
/// is at most this value.
pub const VERIFICATION_CEILING: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompletenessReport {
    pub modulus: u64,
    pub complete: bool,
    pub period_length: u64,
    /// Occurrences of each residue within one period; residues that never
    /// occur are listed in `missing` instead.
    pub histogram: BTreeMap<u64, u64>,
    pub missing: Vec<u64>,
    pub uniform: bool,
    pub invariant_class: InvariantClass,
    pub gcd_invariant: u64,
}

fn check_seed(spec: &RecurrenceSpec, m: u64) -> Result<()> {
    check_modulus(m)?;
    if m > 1 && spec.is_trivial_mod(m) {
        return Err(Error::TrivialSeed { modulus: m });
    }
    Ok(())
}

pub fn completeness_report(spec: &RecurrenceSpec, m: u64) -> Result<CompletenessReport> {
    check_seed(spec, m)?;
    let cycle = cycle_from_seed(spec, m)?;
    let mut counts = vec![0u64; m as usize];
    for &x in &cycle {
        counts[x as usize] += 1;
    }
    let missing: Vec<u64> = (0..m).filter(|&r| counts[r as usize] == 0).collect();
    let first = counts[0];
    let uniform = counts.iter().all(|&c| c == first);
    let histogram = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(r, &c)| (r as u64, c))
        .collect();
    Ok(CompletenessReport {
        modulus: m,
        complete: missing.is_empty(),
        period_length: cycle.len() as u64,
        histogram,
        missing,
        uniform,
        invariant_class: InvariantClass::new(invariant_residue(spec, m), m),
        gcd_invariant: invariant_gcd(spec, m),
    })
}

/// Completeness alone: walks one period marking residues, no histogram.
pub fn is_complete(spec: &RecurrenceSpec, m: u64) -> Result<bool> {
    check_seed(spec, m)?;
    if m == 1 {
        return Ok(true);
    }
    let step = spec.stepper(m);
    let seed = spec.seed_mod(m);
    let mut seen = vec![false; m as usize];
    let mut remaining = m;
    let (mut x, mut y) = seed;
    loop {
        if !seen[x as usize] {
            seen[x as usize] = true;
            remaining -= 1;
            if remaining == 0 {
                return Ok(true);
            }
        }
        let z = step.next(x, y);
        x = y;
        y = z;
        if (x, y) == seed {
            return Ok(false);
        }
    }
}

/// `{2, 3, 5, 7}` together with the primes of `q^2 + 4` (or `q^2 - 4` for the
/// `U` variant, where the fixed part is empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CandidatePrimeSet {
    pub delta: Vec<u64>,
    pub omega: Vec<u64>,
    pub union: Vec<u64>,
}

impl CandidatePrimeSet {
    pub fn contains(&self, p: u64) -> bool {
        self.union.binary_search(&p).is_ok()
    }

    /// Whether every prime factor of `m` is a candidate.
    pub fn admits(&self, m: u64) -> Result<bool> {
        Ok(factorize(m as u128)?.iter().all(|&(p, _)| self.contains(p)))
    }
}

pub fn discriminant(q: i64, variant: Variant) -> i128 {
    let q = q as i128;
    match variant {
        Variant::W => q * q + 4,
        Variant::U => q * q - 4,
    }
}

pub fn candidate_primes(q: i64, variant: Variant) -> Result<CandidatePrimeSet> {
    if q == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let disc = discriminant(q, variant);
    if disc == 0 {
        return Err(Error::DegenerateDiscriminant { q });
    }
    let omega = prime_divisors(disc.unsigned_abs())?;
    let delta = match variant {
        Variant::W => vec![2, 3, 5, 7],
        Variant::U => Vec::new(),
    };
    let mut union: Vec<u64> = delta.iter().chain(omega.iter()).copied().collect();
    union.sort_unstable();
    union.dedup();
    Ok(CandidatePrimeSet {
        delta,
        omega,
        union,
    })
}

/// `d` with `period(spec) = d * period(0, 1, q)` up to rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UnitSeedReduction {
    pub multiplier: u64,
    pub base: RecurrenceSpec,
}

/// Finds the smallest unit `d` such that the period of `spec` modulo `m` is
/// `d` times the period of the seed `(0, 1)`.
///
/// A period through the state `(0, d)` is exactly `d` times the period through
/// `(0, 1)`, so the candidates are the successors of zeros in the period.
pub fn reduce_to_unit_seed(spec: &RecurrenceSpec, m: u64) -> Result<Option<UnitSeedReduction>> {
    check_seed(spec, m)?;
    let cycle = cycle_from_seed(spec, m)?;
    let n = cycle.len();
    let multiplier = (0..n)
        .filter(|&i| cycle[i] == 0)
        .map(|i| cycle[(i + 1) % n])
        .filter(|&d| gcd(d, m) == 1)
        .min();
    let found = multiplier.map(|d| UnitSeedReduction {
        multiplier: d,
        base: spec.unit_seed(),
    });
    if found.is_none() && covers_all(&cycle, m) {
        return Err(Error::LawViolation(format!(
            "{spec} is complete modulo {m} but is not a unit multiple of the (0, 1) period"
        )));
    }
    Ok(found)
}

fn covers_all(cycle: &[u64], m: u64) -> bool {
    let mut seen = vec![false; m as usize];
    cycle.iter().for_each(|&x| seen[x as usize] = true);
    seen.into_iter().all(|s| s)
}

/// Which lifting rule a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftRule {
    /// odd `p | q^2 + 4` already dividing `m`
    SharedPrime,
    /// odd `p | q^2 + 4` coprime to `m`
    CoprimePrime,
    /// `p = 5` with `5 ∤ q(q^2 + 4)` and `D ≡ ±1 (mod 5)`, `5 | m`
    Five,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LiftVerdict {
    pub rule: LiftRule,
    pub prime: u64,
    pub modulus: u64,
    pub target: u64,
    pub order_base: u64,
    pub order_target: u64,
    /// The computed hypotheses hold: `k(pm) = p*k(m)`, completeness mod `m`
    /// and `gcd(D, pm) = 1`.
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_hypothesis: Option<String>,
    /// Brute-force verdict modulo `p*m` when the target is under the ceiling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<bool>,
}

impl LiftVerdict {
    /// The rule concludes completeness modulo `p*m`.
    pub fn concludes_complete(&self) -> bool {
        self.applicable
    }

    /// `false` only when an applicable conclusion was contradicted by brute force.
    pub fn agrees(&self) -> bool {
        !self.applicable || self.brute_force != Some(false)
    }
}

fn require(cond: bool, what: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::HypothesisViolation(what.into()))
    }
}

fn require_w(spec: &RecurrenceSpec) -> Result<()> {
    require(
        spec.variant == Variant::W,
        "lifting rules apply to the w-variant only",
    )
}

fn divides_disc(p: u64, q: i64) -> bool {
    discriminant(q, Variant::W).rem_euclid(p as i128) == 0
}

fn evaluate_lift(
    spec: &RecurrenceSpec,
    rule: LiftRule,
    p: u64,
    m: u64,
    ceiling: u64,
) -> Result<LiftVerdict> {
    let target = p.checked_mul(m).ok_or(Error::ModulusTooLarge {
        modulus: u64::MAX,
        limit: u64::MAX,
    })?;
    let order_base = order_composite(spec.q, spec.variant, m)?.order;
    let order_target = order_composite(spec.q, spec.variant, target)?.order;
    let mut failed = None;
    if order_target != p * order_base {
        failed = Some(format!(
            "k({target}) = {order_target} differs from {p}*k({m}) = {}",
            p * order_base
        ));
    } else if !is_complete(spec, m)? {
        failed = Some(format!("not residue complete modulo {m}"));
    } else if invariant_gcd(spec, target) != 1 {
        // Implied by completeness mod m unless p is coprime to m; without it
        // the sequence is not a unit multiple of (0, 1) modulo p*m.
        failed = Some(format!("gcd(D, {target}) > 1"));
    }
    let applicable = failed.is_none();
    let brute_force = if applicable && target <= ceiling {
        Some(is_complete(spec, target)?)
    } else {
        None
    };
    Ok(LiftVerdict {
        rule,
        prime: p,
        modulus: m,
        target,
        order_base,
        order_target,
        applicable,
        failed_hypothesis: failed,
        brute_force,
    })
}

/// Odd `p` dividing both `q^2 + 4` and `m`: completeness modulo `m` together
/// with `k(pm) = p*k(m)` gives completeness modulo `p*m`.
pub fn lift_shared_prime(
    spec: &RecurrenceSpec,
    p: u64,
    m: u64,
    ceiling: u64,
) -> Result<LiftVerdict> {
    require_w(spec)?;
    check_seed(spec, m)?;
    require(p > 2 && is_prime(p), format!("{p} is not an odd prime"))?;
    require(
        divides_disc(p, spec.q),
        format!(
            "{p} does not divide q^2 + 4 = {}",
            discriminant(spec.q, Variant::W)
        ),
    )?;
    require(m.is_multiple_of(p), format!("{p} does not divide m = {m}"))?;
    evaluate_lift(spec, LiftRule::SharedPrime, p, m, ceiling)
}

/// Odd `p | q^2 + 4` coprime to `m`; same computed hypotheses as the shared case.
pub fn lift_coprime_prime(
    spec: &RecurrenceSpec,
    p: u64,
    m: u64,
    ceiling: u64,
) -> Result<LiftVerdict> {
    require_w(spec)?;
    check_seed(spec, m)?;
    require(p > 2 && is_prime(p), format!("{p} is not an odd prime"))?;
    require(
        divides_disc(p, spec.q),
        format!(
            "{p} does not divide q^2 + 4 = {}",
            discriminant(spec.q, Variant::W)
        ),
    )?;
    require(!m.is_multiple_of(p), format!("{p} divides m = {m}"))?;
    evaluate_lift(spec, LiftRule::CoprimePrime, p, m, ceiling)
}

/// The prime 5 when it divides neither `q` nor `q^2 + 4`, `5 | m`, and the
/// invariant is `±1` modulo 5.
pub fn lift_five(spec: &RecurrenceSpec, m: u64, ceiling: u64) -> Result<LiftVerdict> {
    require_w(spec)?;
    check_seed(spec, m)?;
    require(reduce(spec.q, 5) != 0, "5 divides q")?;
    require(!divides_disc(5, spec.q), "5 divides q^2 + 4")?;
    require(m.is_multiple_of(5), format!("5 does not divide m = {m}"))?;
    let d = invariant_residue(spec, 5);
    require(
        d == 1 || d == 4,
        format!("invariant is {d} modulo 5, not ±1"),
    )?;
    evaluate_lift(spec, LiftRule::Five, 5, m, ceiling)
}

/// Upper bound on the exponent of a prime in a complete modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind", content = "value")]
pub enum ExponentBound {
    Finite(u32),
    /// Brute force reached this exponent without finding a failure, and no
    /// rule decides the higher powers.
    AtLeast(u32),
    Unbounded,
}

impl ExponentBound {
    pub fn allows(&self, e: u32) -> bool {
        match *self {
            ExponentBound::Finite(max) => e <= max,
            ExponentBound::AtLeast(_) | ExponentBound::Unbounded => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimePowerRule {
    pub prime: u64,
    pub max_exponent: ExponentBound,
    pub condition: String,
}

/// Depth to which the order-growth hypothesis is confirmed before a prime is
/// reported as unbounded.
const LIFT_CHECK_DEPTH: u32 = 6;

/// Exponent rule for `p ∈ {2, 3, 5, 7}` and the seed `(0, 1, q)`.
pub fn prime_power_rule(q: i64, p: u64) -> Result<PrimePowerRule> {
    if q == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let rule = |max_exponent, condition: String| PrimePowerRule {
        prime: p,
        max_exponent,
        condition,
    };
    Ok(match p {
        2 => {
            if q.rem_euclid(2) == 1 {
                rule(
                    ExponentBound::Finite(2),
                    "q odd: complete modulo 4, never modulo 8".into(),
                )
            } else {
                rule(
                    ExponentBound::Finite(1),
                    "q even: complete modulo 2, never modulo 4".into(),
                )
            }
        }
        3 => match q.rem_euclid(9) {
            r if r % 3 == 0 => rule(
                ExponentBound::Finite(0),
                "3 | q: never complete modulo 3".into(),
            ),
            4 | 5 => rule(
                ExponentBound::Finite(1),
                "q ≡ 4, 5 (mod 9): complete modulo 3 only".into(),
            ),
            _ => rule(
                ExponentBound::Unbounded,
                "gcd(q, 3) = 1, q ≢ 4, 5 (mod 9): complete modulo every 3^n".into(),
            ),
        },
        7 => {
            if matches!(q.rem_euclid(7), 1 | 3 | 4 | 6) {
                rule(
                    ExponentBound::Finite(1),
                    "q ≡ 1, 3, 4, 6 (mod 7): complete modulo 7, never modulo 49".into(),
                )
            } else {
                rule(
                    ExponentBound::Finite(0),
                    "q ≢ 1, 3, 4, 6 (mod 7): never complete modulo 7".into(),
                )
            }
        }
        5 => five_rule(q)?,
        _ => {
            return Err(Error::HypothesisViolation(format!(
                "prime-power rules cover 2, 3, 5 and 7 only, not {p}"
            )))
        }
    })
}

fn five_rule(q: i64) -> Result<PrimePowerRule> {
    let spec = RecurrenceSpec::w(0, 1, q);
    let rule = |max_exponent, condition: String| PrimePowerRule {
        prime: 5,
        max_exponent,
        condition,
    };
    let lifts_cleanly = || -> Result<bool> {
        let r = order_lifted(q, Variant::W, 5, LIFT_CHECK_DEPTH)?;
        Ok(r.stabilization == Some(1) && !r.fallback)
    };
    let base = reduce(q, 5) != 0 && is_complete(&spec, 5)?;
    if base && lifts_cleanly()? {
        let condition = if divides_disc(5, q) {
            "5 | q^2 + 4: complete modulo 5, lifted through odd divisors of q^2 + 4"
        } else {
            "5 ∤ q(q^2 + 4): complete modulo 5, lifted by the order-growth rule for 5"
        };
        return Ok(rule(
            ExponentBound::Unbounded,
            format!(
                "{condition}; k(5^(j+1)) = 5k(5^j) confirmed through j = {}",
                LIFT_CHECK_DEPTH - 1
            ),
        ));
    }
    let mut e = 0;
    while e < 3 && is_complete(&spec, 5u64.pow(e + 1))? {
        e += 1;
    }
    let bound = if e == 3 {
        ExponentBound::AtLeast(3)
    } else {
        ExponentBound::Finite(e)
    };
    Ok(rule(bound, "decided by brute force up to 5^3".into()))
}

/// Value sets of `F_{4n+j} mod p` over `n ∈ [0, p)` for `j = 0..4`, where
/// `F = w(0, 1, q)` and `p` is an odd prime dividing `q^2 + 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SubsequenceClasses {
    pub prime: u64,
    pub classes: [Vec<u64>; 4],
    /// `L_4 mod p` for `L = w(2, q, q)`.
    pub l4: u64,
    /// `F_{4n} ≡ -2nq (mod p)` for every `n ∈ [0, p)`.
    pub stride_four_linear: bool,
}

impl SubsequenceClasses {
    pub fn all_complete(&self) -> bool {
        self.classes.iter().all(|c| c.len() as u64 == self.prime)
    }

    pub fn holds(&self) -> bool {
        self.all_complete() && self.l4 == 2 % self.prime && self.stride_four_linear
    }
}

pub fn subsequence_classes(q: i64, p: u64) -> Result<SubsequenceClasses> {
    if q == 0 {
        return Err(Error::ZeroCoefficient);
    }
    require(p > 2 && is_prime(p), format!("{p} is not an odd prime"))?;
    require(
        divides_disc(p, q),
        format!(
            "{p} does not divide q^2 + 4 = {}",
            discriminant(q, Variant::W)
        ),
    )?;
    let terms = generate(&RecurrenceSpec::w(0, 1, q), p, 4 * p as usize)?;
    let classes: [Vec<u64>; 4] = std::array::from_fn(|j| {
        let mut set: Vec<u64> = (0..p as usize).map(|n| terms[4 * n + j]).collect();
        set.sort_unstable();
        set.dedup();
        set
    });
    let l4 = generate(&RecurrenceSpec::w(2, q, q), p, 5)?[4];
    let qm = reduce(q, p);
    let stride_four_linear = (0..p).all(|n| {
        let expected = (p - (2 * n % p) * qm % p) % p;
        terms[4 * n as usize] == expected
    });
    Ok(SubsequenceClasses {
        prime: p,
        classes,
        l4,
        stride_four_linear,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{find_period, Period};

    #[test]
    fn pell_examples() {
        let pell = RecurrenceSpec::w(0, 1, 2);
        assert!(completeness_report(&pell, 5).unwrap().complete);
        let r7 = completeness_report(&pell, 7).unwrap();
        assert!(!r7.complete);
        assert!(!r7.missing.is_empty());
        assert!(!completeness_report(&pell, 6).unwrap().complete);
    }

    #[test]
    fn report_invariants() {
        for m in 2..80 {
            let r = completeness_report(&RecurrenceSpec::w(1, 4, 3), m).unwrap();
            assert_eq!(r.complete, r.missing.is_empty());
            assert_eq!(r.histogram.values().sum::<u64>(), r.period_length);
            if r.uniform {
                assert!(r.complete && r.period_length.is_multiple_of(m));
            }
            assert_eq!(
                r.complete,
                is_complete(&RecurrenceSpec::w(1, 4, 3), m).unwrap()
            );
        }
    }

    #[test]
    fn trivial_seed_is_rejected() {
        assert_eq!(
            completeness_report(&RecurrenceSpec::w(0, 0, 2), 5),
            Err(Error::TrivialSeed { modulus: 5 })
        );
    }

    #[test]
    fn candidate_examples() {
        let c = candidate_primes(3, Variant::W).unwrap();
        assert_eq!(c.union, vec![2, 3, 5, 7, 13]);
        assert_eq!(
            candidate_primes(2, Variant::W).unwrap().union,
            vec![2, 3, 5, 7]
        );
        let u = candidate_primes(6, Variant::U).unwrap();
        assert_eq!((u.omega.clone(), u.delta.is_empty()), (vec![2], true));
        assert_eq!(
            candidate_primes(2, Variant::U),
            Err(Error::DegenerateDiscriminant { q: 2 })
        );
        assert_eq!(
            candidate_primes(-2, Variant::U),
            Err(Error::DegenerateDiscriminant { q: -2 })
        );
        for q in -200..=200 {
            if q != 0 {
                let w = candidate_primes(q, Variant::W).unwrap();
                assert!(!w.omega.contains(&3) && !w.omega.contains(&7));
            }
        }
    }

    /// Oracle: try every unit multiplier against canonical rotations.
    fn unit_multiplier_oracle(spec: &RecurrenceSpec, m: u64) -> Option<u64> {
        let target = find_period(spec, m).unwrap();
        let base: Period = find_period(&spec.unit_seed(), m).unwrap();
        (1..m)
            .filter(|&d| gcd(d, m) == 1)
            .find(|&d| base.scaled(d).residues == target.residues)
    }

    #[test]
    fn unit_seed_examples() {
        let r = reduce_to_unit_seed(&RecurrenceSpec::w(0, 2, 3), 13)
            .unwrap()
            .unwrap();
        assert_eq!(r.multiplier, 2);
        for m in 2..40 {
            assert_eq!(
                reduce_to_unit_seed(&RecurrenceSpec::w(0, 1, 5), m)
                    .unwrap()
                    .unwrap()
                    .multiplier,
                1
            );
        }
        assert_eq!(
            reduce_to_unit_seed(&RecurrenceSpec::w(2, 2, 2), 4).unwrap(),
            None
        );
    }

    #[test]
    fn unit_seed_matches_oracle() {
        for (a, b, q) in [(1, 1, 1), (2, 2, 2), (3, 1, 2), (1, 4, 3), (5, 2, -3)] {
            let spec = RecurrenceSpec::w(a, b, q);
            for m in 2..60 {
                if spec.is_trivial_mod(m) {
                    continue;
                }
                let found = reduce_to_unit_seed(&spec, m).unwrap();
                assert_eq!(
                    found.is_some(),
                    unit_multiplier_oracle(&spec, m).is_some(),
                    "{spec} m={m}"
                );
                if let Some(r) = found {
                    assert_eq!(
                        find_period(&spec.unit_seed(), m)
                            .unwrap()
                            .scaled(r.multiplier)
                            .residues,
                        find_period(&spec, m).unwrap().residues
                    );
                }
                if is_complete(&spec, m).unwrap() {
                    assert!(found.is_some());
                    assert_eq!(invariant_gcd(&spec, m), 1);
                    assert!(is_complete(&spec.unit_seed(), m).unwrap());
                }
            }
        }
    }

    #[test]
    fn shared_prime_examples() {
        let v =
            lift_shared_prime(&RecurrenceSpec::w(0, 1, 3), 13, 13, VERIFICATION_CEILING).unwrap();
        assert!(v.applicable && v.agrees());
        assert_eq!((v.target, v.brute_force), (169, Some(true)));

        let v = lift_shared_prime(&RecurrenceSpec::w(0, 1, 1), 5, 5, VERIFICATION_CEILING).unwrap();
        assert!(v.applicable && v.brute_force == Some(true));

        assert!(matches!(
            lift_shared_prime(&RecurrenceSpec::w(0, 1, 3), 5, 13, VERIFICATION_CEILING),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn coprime_prime_examples() {
        let v =
            lift_coprime_prime(&RecurrenceSpec::w(0, 1, 3), 13, 14, VERIFICATION_CEILING).unwrap();
        assert!(v.applicable);
        assert_eq!((v.target, v.brute_force), (182, Some(true)));

        let v =
            lift_coprime_prime(&RecurrenceSpec::w(0, 1, 3), 13, 10, VERIFICATION_CEILING).unwrap();
        assert!(!v.applicable);
        assert!(v
            .failed_hypothesis
            .unwrap()
            .contains("not residue complete"));

        // k(20) = 60 while 5*k(4) = 30: the order hypothesis fails even though
        // Fibonacci numbers are complete modulo 20.
        let v =
            lift_coprime_prime(&RecurrenceSpec::w(0, 1, 1), 5, 4, VERIFICATION_CEILING).unwrap();
        assert!(!v.applicable);
        assert_eq!((v.order_base, v.order_target), (6, 60));
        assert!(is_complete(&RecurrenceSpec::w(0, 1, 1), 20).unwrap());
    }

    #[test]
    fn five_examples() {
        let v = lift_five(&RecurrenceSpec::w(0, 1, 2), 5, VERIFICATION_CEILING).unwrap();
        assert!(v.applicable && v.brute_force == Some(true));
        let v = lift_five(&RecurrenceSpec::w(0, 1, 3), 5, VERIFICATION_CEILING).unwrap();
        assert!(v.applicable && v.brute_force == Some(true));
        for m in [5, 10, 25] {
            assert!(matches!(
                lift_five(&RecurrenceSpec::w(0, 1, 5), m, VERIFICATION_CEILING),
                Err(Error::HypothesisViolation(_))
            ));
        }
    }

    #[test]
    fn ceiling_limits_brute_force() {
        let v = lift_shared_prime(&RecurrenceSpec::w(0, 1, 3), 13, 13, 100).unwrap();
        assert!(v.applicable);
        assert_eq!(v.brute_force, None);
    }

    #[test]
    fn prime_power_rule_examples() {
        assert_eq!(
            prime_power_rule(2, 2).unwrap().max_exponent,
            ExponentBound::Finite(1)
        );
        assert_eq!(
            prime_power_rule(3, 2).unwrap().max_exponent,
            ExponentBound::Finite(2)
        );
        assert_eq!(
            prime_power_rule(4, 3).unwrap().max_exponent,
            ExponentBound::Finite(1)
        );
        assert_eq!(
            prime_power_rule(3, 3).unwrap().max_exponent,
            ExponentBound::Finite(0)
        );
        assert_eq!(
            prime_power_rule(2, 3).unwrap().max_exponent,
            ExponentBound::Unbounded
        );
        assert_eq!(
            prime_power_rule(3, 7).unwrap().max_exponent,
            ExponentBound::Finite(1)
        );
        assert_eq!(
            prime_power_rule(2, 7).unwrap().max_exponent,
            ExponentBound::Finite(0)
        );
        assert_eq!(
            prime_power_rule(2, 5).unwrap().max_exponent,
            ExponentBound::Unbounded
        );
        assert_eq!(
            prime_power_rule(1, 5).unwrap().max_exponent,
            ExponentBound::Unbounded
        );
        assert_eq!(
            prime_power_rule(5, 5).unwrap().max_exponent,
            ExponentBound::Finite(0)
        );
        assert!(prime_power_rule(3, 13).is_err());
    }

    #[test]
    fn prime_power_rules_match_brute_force() {
        for q in -30i64..=30 {
            if q == 0 {
                continue;
            }
            let spec = RecurrenceSpec::w(0, 1, q);
            for p in [2u64, 3, 5, 7] {
                let rule = prime_power_rule(q, p).unwrap();
                for e in 1..=4u32 {
                    let m = p.pow(e);
                    if m > 2500 {
                        break;
                    }
                    let brute = is_complete(&spec, m).unwrap();
                    match rule.max_exponent {
                        ExponentBound::Finite(max) => {
                            assert_eq!(brute, e <= max, "q={q} p={p} e={e}")
                        }
                        ExponentBound::Unbounded => assert!(brute, "q={q} p={p} e={e}"),
                        ExponentBound::AtLeast(n) if e <= n => assert!(brute),
                        ExponentBound::AtLeast(_) => {}
                    }
                }
            }
        }
    }

    /// For gcd(q, 3) = 1 and every `a` modulo `3^n`, the form
    /// `a^2 + q*a*x - x^2` reaches `1` or `-1` for some `x`. With `a = 0` only
    /// `-1` is reachable; for `3 | q` it fails outright (q = 3, a = 2, m = 9).
    #[test]
    fn three_power_form_is_solvable() {
        for q in (1i64..=20).filter(|q| q % 3 != 0) {
            for n in 1..=4u32 {
                let m = 3u64.pow(n);
                for a in 0..m {
                    let hit = (0..m).any(|x| {
                        let v = (a * a + (q as u64 % m) * a % m * x) as i128 - (x * x) as i128;
                        let v = v.rem_euclid(m as i128) as u64;
                        v == 1 || v == m - 1
                    });
                    assert!(hit, "q={q} m={m} a={a}");
                }
            }
        }
    }

    #[test]
    fn subsequence_examples() {
        let s = subsequence_classes(1, 5).unwrap();
        assert!(s.holds());
        assert_eq!(s.classes[0], vec![0, 1, 2, 3, 4]);
        assert!(subsequence_classes(3, 13).unwrap().holds());
        assert!(matches!(
            subsequence_classes(2, 3),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
