//! The `u`-recurrence `u_n = q*u_{n-1} - u_{n-2}`: splitting type of
//! `x^2 - qx + 1` modulo `p`, period divisibility by `p - 1` or `p + 1`, and
//! rule-based completeness and uniform distribution checked against the
//! period histogram.
//!
//! Uniform distribution modulo `p^h` holds iff `p | q^2 - 4`, the seed is
//! coprime to `p` in the invariant sense, and for `h > 1` one of `p > 3`,
//! `p = 3 with q^2 ≢ 1 (mod 9)`, `p = 2 with q ≡ 2 (mod 4)` holds. Uniform
//! distribution is multiplicative over prime powers.
//!
//! Completeness agrees with uniform distribution at every prime power except
//! two small cases that are complete without being uniform:
//! `p = 2` with `q` odd (the cycle is `0, 1, 1`) and `p = 3` with `3 | q`
//! (the cycle is `a, b, -a, -b`). When such a component is present,
//! completeness is no longer multiplicative (`q = -7`, seed `(0, 1)` is
//! complete modulo 2 and 3 but not 6), and the verdict is decided by pairing
//! the component sequences index by index.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, is_prime, legendre, reduce_i128};
use crate::completeness::completeness_report;
use crate::error::{Error, Result};
use crate::recurrence::{
    cycle_from_seed, invariant_residue, period_length, RecurrenceSpec, Variant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplittingKind {
    /// Two distinct roots modulo `p`.
    Split,
    Irreducible,
    /// `p | q^2 - 4`.
    Repeated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SplittingType {
    pub prime: u64,
    /// `q^2 - 4 mod p`.
    pub discriminant: u64,
    pub kind: SplittingKind,
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::HypothesisViolation(format!(
            "{p} is not an odd prime"
        )))
    }
}

fn disc_u(q: i64) -> i128 {
    let q = q as i128;
    q * q - 4
}

pub fn splitting_type(q: i64, p: u64) -> Result<SplittingType> {
    require_odd_prime(p)?;
    let discriminant = reduce_i128(disc_u(q), p);
    let kind = match legendre(discriminant, p) {
        0 => SplittingKind::Repeated,
        1 => SplittingKind::Split,
        _ => SplittingKind::Irreducible,
    };
    Ok(SplittingType {
        prime: p,
        discriminant,
        kind,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderDivisibility {
    pub spec: RecurrenceSpec,
    pub splitting: SplittingType,
    pub period_length: u64,
    /// `p - 1` when split, `p + 1` when irreducible, none when repeated.
    pub claimed_divisor: Option<u64>,
    pub divides_p_minus_1: bool,
    pub divides_p_plus_1: bool,
}

impl OrderDivisibility {
    pub fn holds(&self) -> bool {
        self.claimed_divisor
            .is_none_or(|d| d % self.period_length == 0)
    }
}

/// Period length of `u(a, b, q)` modulo an odd prime `p` against `p - 1`
/// (split) or `p + 1` (irreducible). No claim is made for a repeated root.
pub fn check_order_divisibility(q: i64, p: u64, a: i64, b: i64) -> Result<OrderDivisibility> {
    let spec = RecurrenceSpec::new(a, b, q, Variant::U)?;
    let splitting = splitting_type(q, p)?;
    if invariant_residue(&spec, p) == 0 {
        return Err(Error::HypothesisViolation(format!(
            "{p} divides the invariant -a^2 + qab - b^2"
        )));
    }
    let len = period_length(&spec, p)?;
    let claimed_divisor = match splitting.kind {
        SplittingKind::Split => Some(p - 1),
        SplittingKind::Irreducible => Some(p + 1),
        SplittingKind::Repeated => None,
    };
    let report = OrderDivisibility {
        spec,
        splitting,
        period_length: len,
        claimed_divisor,
        divides_p_minus_1: (p - 1).is_multiple_of(len),
        divides_p_plus_1: (p + 1).is_multiple_of(len),
    };
    if !report.holds() {
        return Err(Error::LawViolation(format!(
            "period {len} modulo {p} does not divide {}",
            claimed_divisor.unwrap_or(0)
        )));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimePowerComponent {
    pub prime: u64,
    pub exponent: u32,
    /// `p | q^2 - 4` and the seed condition holds modulo `p`.
    pub prime_condition: bool,
    /// Exponent condition for `h > 1` (always true for `h = 1`).
    pub power_condition: bool,
    pub uniform: bool,
    /// Complete modulo `p^h` without being uniform.
    pub exceptional: bool,
}

impl PrimePowerComponent {
    pub fn complete(&self) -> bool {
        self.uniform || self.exceptional
    }
}

/// Seed condition at `p`: `gcd(p, -a^2 + qab - b^2) = 1`, or for `q = ±2`
/// (where that invariant is a square up to sign) `gcd(p, b - (q/2)a) = 1`.
fn seed_condition(spec: &RecurrenceSpec, p: u64) -> bool {
    if spec.q.abs() == 2 {
        let half = spec.q / 2;
        let v = spec.b as i128 - half as i128 * spec.a as i128;
        reduce_i128(v, p) != 0
    } else {
        invariant_residue(spec, p) != 0
    }
}

fn power_condition(q: i64, p: u64, h: u32) -> bool {
    h == 1
        || p > 3
        || (p == 3 && reduce_i128(q as i128 * q as i128, 9) != 1)
        || (p == 2 && q.rem_euclid(4) == 2)
}

fn component(spec: &RecurrenceSpec, p: u64, h: u32) -> PrimePowerComponent {
    let prime_condition = reduce_i128(disc_u(spec.q), p) == 0 && seed_condition(spec, p);
    let power_condition = power_condition(spec.q, p, h);
    let uniform = prime_condition && power_condition;
    let (a, b) = spec.seed_mod(p);
    let exceptional = !uniform
        && h == 1
        && match p {
            // Mod 2 the recurrence is u_n = u_{n-1} + u_{n-2}: every nonzero
            // seed runs through 0, 1, 1.
            2 => spec.q.rem_euclid(2) == 1 && (a, b) != (0, 0),
            // Mod 3 with 3 | q the cycle is a, b, -a, -b.
            3 => spec.q.rem_euclid(3) == 0 && ((a == 0) != (b == 0)),
            _ => false,
        };
    PrimePowerComponent {
        prime: p,
        exponent: h,
        prime_condition,
        power_condition,
        uniform,
        exceptional,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UVerdictRoute {
    /// Every prime-power component is uniform.
    AllUniform,
    /// Some prime-power component is incomplete (or not uniform).
    FailingComponent,
    /// Complete components, at least one exceptional: decided by pairing the
    /// component sequences index by index.
    IndexPairing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UVerdict {
    pub spec: RecurrenceSpec,
    pub modulus: u64,
    pub components: Vec<PrimePowerComponent>,
    pub route: UVerdictRoute,
    pub verdict: bool,
    /// The prime-power criterion read as multiplicative for completeness
    /// too, without the exceptional cases.
    pub multiplicative_reading: bool,
    /// Histogram verdict, present when `modulus <= ceiling`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<bool>,
}

fn check_u(spec: &RecurrenceSpec, m: u64) -> Result<()> {
    if spec.variant != Variant::U {
        return Err(Error::HypothesisViolation("expected a u-recurrence".into()));
    }
    if spec.q == 0 {
        return Err(Error::ZeroCoefficient);
    }
    if m < 2 {
        return Err(Error::InvalidModulus {
            modulus: m,
            reason: "modulus must be at least 2",
        });
    }
    Ok(())
}

fn components(spec: &RecurrenceSpec, m: u64) -> Result<Vec<PrimePowerComponent>> {
    Ok(factorize(m as u128)?
        .into_iter()
        .map(|(p, h)| component(spec, p, h))
        .collect())
}

fn histogram_verdict(spec: &RecurrenceSpec, m: u64) -> Result<(bool, bool)> {
    if spec.is_trivial_mod(m) {
        return Ok((false, false));
    }
    let r = completeness_report(spec, m)?;
    Ok((r.complete, r.uniform))
}

/// Whether every residue pair modulo `m1 * m2` occurs, given coprime `m1`,
/// `m2`. Index `i` of the full sequence pairs `(i mod P1, i mod P2)`, and
/// those pairs are exactly the ones agreeing modulo `g = gcd(P1, P2)`.
fn complete_by_index_pairing(spec: &RecurrenceSpec, m1: u64, m2: u64) -> Result<bool> {
    let c1 = cycle_from_seed(spec, m1)?;
    let c2 = cycle_from_seed(spec, m2)?;
    let g = gcd(c1.len() as u64, c2.len() as u64) as usize;
    let (n1, n2) = (m1 as usize, m2 as usize);
    let mut covered = vec![false; n1 * n2];
    for j in 0..g {
        let mut r1 = vec![false; n1];
        for &x in c1.iter().skip(j).step_by(g) {
            r1[x as usize] = true;
        }
        let mut r2 = vec![false; n2];
        for &y in c2.iter().skip(j).step_by(g) {
            r2[y as usize] = true;
        }
        for x in (0..n1).filter(|&x| r1[x]) {
            for y in (0..n2).filter(|&y| r2[y]) {
                covered[x * n2 + y] = true;
            }
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

fn decide(spec: &RecurrenceSpec, m: u64, ceiling: u64, uniform_only: bool) -> Result<UVerdict> {
    check_u(spec, m)?;
    let components = components(spec, m)?;
    let multiplicative_reading = components.iter().all(|c| c.uniform);
    let (route, verdict) = if multiplicative_reading {
        (UVerdictRoute::AllUniform, true)
    } else if uniform_only || !components.iter().all(PrimePowerComponent::complete) {
        (UVerdictRoute::FailingComponent, false)
    } else {
        let exceptional: u64 = components
            .iter()
            .filter(|c| c.exceptional)
            .map(|c| c.prime)
            .product();
        let verdict = match (exceptional, m / exceptional) {
            (2 | 3, 1) => true,
            (6, 1) => complete_by_index_pairing(spec, 2, 3)?,
            (e, rest) => complete_by_index_pairing(spec, e, rest)?,
        };
        (UVerdictRoute::IndexPairing, verdict)
    };
    let brute_force = if m <= ceiling {
        let (complete, uniform) = histogram_verdict(spec, m)?;
        let observed = if uniform_only { uniform } else { complete };
        if observed != verdict {
            return Err(Error::Disagreement {
                modulus: m,
                predicted: verdict,
                observed,
            });
        }
        Some(observed)
    } else {
        None
    };
    Ok(UVerdict {
        spec: *spec,
        modulus: m,
        components,
        route,
        verdict,
        multiplicative_reading,
        brute_force,
    })
}

/// Residue completeness of a `u`-recurrence modulo `m`, cross-checked
/// against the histogram when `m <= ceiling`.
pub fn residue_complete_u(spec: &RecurrenceSpec, m: u64, ceiling: u64) -> Result<UVerdict> {
    decide(spec, m, ceiling, false)
}

/// Uniform distribution of a `u`-recurrence modulo `m`, cross-checked
/// against the histogram when `m <= ceiling`.
pub fn uniform_distribution(spec: &RecurrenceSpec, m: u64, ceiling: u64) -> Result<UVerdict> {
    decide(spec, m, ceiling, true)
}

/// `F_{n+4} = L_4 F_n - F_{n-4}` for `4 <= n <= n_max`, with
/// `F = w(0, 1, q)` and `L = w(2, q, q)`, in exact integers.
pub fn stride_four_identity(q: i64, n_max: usize) -> Result<bool> {
    if q == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let qb = BigInt::from(q);
    let terms = |a: i64, b: i64, len: usize| {
        let mut v = vec![BigInt::from(a), BigInt::from(b)];
        while v.len() < len {
            let n = v.len();
            let next = &qb * &v[n - 1] + &v[n - 2];
            v.push(next);
        }
        v
    };
    let f = terms(0, 1, n_max + 5);
    let l4 = &terms(2, q, 5)[4];
    Ok((4..=n_max).all(|n| f[n + 4] == l4 * &f[n] - &f[n - 4]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::VERIFICATION_CEILING;
    use proptest::prelude::*;

    const C: u64 = VERIFICATION_CEILING;

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_type(3, 5).unwrap().kind, SplittingKind::Repeated);
        assert_eq!(splitting_type(3, 11).unwrap().kind, SplittingKind::Split);
        let t = splitting_type(1, 5).unwrap();
        assert_eq!((t.kind, t.discriminant), (SplittingKind::Irreducible, 2));
        assert!(splitting_type(3, 2).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let r = check_order_divisibility(3, 11, 0, 1).unwrap();
        assert_eq!(r.claimed_divisor, Some(10));
        assert_eq!(10 % r.period_length, 0);
        let r = check_order_divisibility(1, 5, 0, 1).unwrap();
        assert_eq!(r.claimed_divisor, Some(6));
        assert!(r.divides_p_plus_1);
        let r = check_order_divisibility(4, 3, 0, 1).unwrap();
        assert_eq!(
            (r.splitting.kind, r.claimed_divisor),
            (SplittingKind::Repeated, None)
        );
        // D = -1 + 3*1*1 - 1 = 1 for (1, 1, 3); (1, 2, 5): -1 + 10 - 4 = 5.
        assert!(matches!(
            check_order_divisibility(5, 5, 1, 2),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn completeness_examples() {
        let v = residue_complete_u(&RecurrenceSpec::u(0, 1, 6), 16, C).unwrap();
        assert!(v.verdict && v.brute_force == Some(true));
        assert!(
            residue_complete_u(&RecurrenceSpec::u(0, 1, 5), 27, C)
                .unwrap()
                .verdict
        );
        assert!(
            residue_complete_u(&RecurrenceSpec::u(0, 1, 4), 9, C)
                .unwrap()
                .verdict
        );
        assert!(
            !residue_complete_u(&RecurrenceSpec::u(0, 1, 8), 9, C)
                .unwrap()
                .verdict
        );
        assert!(
            uniform_distribution(&RecurrenceSpec::u(0, 1, 6), 8, C)
                .unwrap()
                .verdict
        );
        assert!(
            uniform_distribution(&RecurrenceSpec::u(0, 1, 5), 3, C)
                .unwrap()
                .verdict
        );
        assert!(
            !uniform_distribution(&RecurrenceSpec::u(0, 1, 3), 7, C)
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn exceptional_components() {
        // q odd: complete but not uniform modulo 2.
        let v = residue_complete_u(&RecurrenceSpec::u(0, 1, 3), 2, C).unwrap();
        assert!(v.verdict && !v.multiplicative_reading);
        assert!(
            !uniform_distribution(&RecurrenceSpec::u(0, 1, 3), 2, C)
                .unwrap()
                .verdict
        );
        // Complete modulo 2 and 3 but not modulo 6.
        let s = RecurrenceSpec::u(0, 1, -7);
        assert!(residue_complete_u(&s, 2, C).unwrap().verdict);
        assert!(residue_complete_u(&s, 3, C).unwrap().verdict);
        let v = residue_complete_u(&s, 6, C).unwrap();
        assert_eq!((v.route, v.verdict), (UVerdictRoute::IndexPairing, false));
    }

    #[test]
    fn degenerate_q() {
        // q = 2: arithmetic progression a + n(b - a).
        assert!(
            residue_complete_u(&RecurrenceSpec::u(1, 2, 2), 12, C)
                .unwrap()
                .verdict
        );
        assert!(
            !residue_complete_u(&RecurrenceSpec::u(1, 3, 2), 12, C)
                .unwrap()
                .verdict
        );
        assert!(
            residue_complete_u(&RecurrenceSpec::u(1, 1, -2), 35, C)
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn rejects_w_variant() {
        assert!(residue_complete_u(&RecurrenceSpec::w(0, 1, 3), 5, C).is_err());
    }

    #[test]
    fn stride_four() {
        for q in 1..=10 {
            assert!(stride_four_identity(q, 100).unwrap());
        }
    }

    proptest! {
        #[test]
        fn verdicts_match_histogram(q in -8i64..=8, a in -3i64..=3, b in -3i64..=3, m in 2u64..300) {
            prop_assume!(q != 0);
            let s = RecurrenceSpec::u(a, b, q);
            prop_assert!(residue_complete_u(&s, m, C).is_ok());
            prop_assert!(uniform_distribution(&s, m, C).is_ok());
        }

        #[test]
        fn uniformity_is_multiplicative(q in -8i64..=8, a in -3i64..=3, b in -3i64..=3, m in 2u64..300) {
            prop_assume!(q != 0);
            let s = RecurrenceSpec::u(a, b, q);
            let whole = histogram_verdict(&s, m).unwrap().1;
            let parts = factorize(m as u128).unwrap().iter()
                .all(|&(p, h)| histogram_verdict(&s, p.pow(h)).unwrap().1);
            prop_assert_eq!(whole, parts);
        }
    }
}
