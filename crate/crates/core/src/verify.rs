//! Self-check suite: every structural law the crate relies on, re-checked
//! over a parameter grid against direct computation.
//!
//! [`Scale::Quick`] shrinks the grids for interactive use; [`Scale::Full`]
//! runs the sizes the laws are documented with.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, gcd, is_prime, primes_up_to, reduce};
use crate::classifier::{brute_force_members, classify};
use crate::completeness::{
    candidate_primes, completeness_report, is_complete, lift_coprime_prime, lift_five,
    lift_shared_prime, reduce_to_unit_seed, subsequence_classes, VERIFICATION_CEILING,
};
use crate::error::Error;
use crate::fundamental::{
    enumerate_fs, pairs_partitioned, scaled_classes_distinct, verify_fs_decomposition_3power,
};
use crate::order::{order_composite, order_direct};
use crate::recurrence::{
    find_period, generate, invariant_residue, pair_invariant_class, period_length, CompanionMatrix,
    Period, RecurrenceSpec, Variant,
};
use crate::variant_u::{check_order_divisibility, residue_complete_u, uniform_distribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Quick,
    Full,
}

impl Scale {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyOutcome {
    pub module: String,
    pub name: String,
    pub cases: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// `Ok(cases)` or `Err(first counterexample)`.
type Check = std::result::Result<u64, String>;

struct Property {
    module: &'static str,
    name: &'static str,
    run: fn(Scale) -> Check,
}

const SEEDS: [(i64, i64); 3] = [(0, 1), (1, 1), (2, 2)];

fn nonzero(range: std::ops::RangeInclusive<i64>) -> impl Iterator<Item = i64> {
    range.filter(|&q| q != 0)
}

fn both_variants() -> [Variant; 2] {
    [Variant::W, Variant::U]
}

fn fail<T: std::fmt::Debug>(what: &str, at: T) -> String {
    format!("{what} at {at:?}")
}

fn generate_consistency(scale: Scale) -> Check {
    let mut cases = 0;
    for variant in both_variants() {
        for q in nonzero(-5..=5) {
            for &(a, b) in &SEEDS {
                let spec = RecurrenceSpec::new(a, b, q, variant).map_err(|e| e.to_string())?;
                for m in 2..=scale.pick(30, 80) {
                    if spec.is_trivial_mod(m) {
                        continue;
                    }
                    let k = find_period(&spec, m).map_err(|e| e.to_string())?.length;
                    let terms = generate(&spec, m, 2 * k).map_err(|e| e.to_string())?;
                    if terms[..k] != terms[k..] {
                        return Err(fail("second period differs", (spec, m)));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

fn matrix_agreement(scale: Scale) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut cases = 0;
    for variant in both_variants() {
        for q in nonzero(-10..=10) {
            for m in (2..=50).step_by(scale.pick(7, 1)) {
                let (a, b) = (rng.gen_range(-100..100), rng.gen_range(-100..100));
                let spec = RecurrenceSpec::new(a, b, q, variant).map_err(|e| e.to_string())?;
                let n_max = scale.pick(60, 200);
                let w = generate(&spec, m, n_max + 3).map_err(|e| e.to_string())?;
                let start = CompanionMatrix {
                    entries: [[w[2], w[1]], [w[1], w[0]]],
                    modulus: m,
                };
                let sigma = CompanionMatrix::new(q, variant, m);
                let mut cur = start;
                for n in 0..=n_max {
                    if cur.entries != [[w[n + 2], w[n + 1]], [w[n + 1], w[n]]] {
                        return Err(fail(
                            "matrix power disagrees with the sequence",
                            (spec, m, n),
                        ));
                    }
                    cur = cur.mul(&sigma);
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

/// `w_{n+2} w_n - w_{n+1}^2 = sign(n) * D (mod m)`, `sign = (-1)^n` for `w`
/// and `+1` for `u`.
pub fn determinant_identity_holds(spec: &RecurrenceSpec, m: u64, n: usize) -> bool {
    let w = generate(spec, m, n + 3).expect("positive modulus");
    let mm = m as i128;
    let lhs =
        (w[n + 2] as i128 * w[n] as i128 - w[n + 1] as i128 * w[n + 1] as i128).rem_euclid(mm);
    let d = invariant_residue(spec, m) as i128;
    let sign = match spec.variant {
        Variant::W if n % 2 == 1 => -1,
        _ => 1,
    };
    lhs == (sign * d).rem_euclid(mm)
}

fn determinant_identity(scale: Scale) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let count = scale.pick(2_000, 10_000);
    for i in 0..count {
        let variant = if i % 2 == 0 { Variant::W } else { Variant::U };
        let q = loop {
            let q = rng.gen_range(-50i64..=50);
            if q != 0 {
                break q;
            }
        };
        let spec = RecurrenceSpec::new(
            rng.gen_range(-1000..1000),
            rng.gen_range(-1000..1000),
            q,
            variant,
        )
        .map_err(|e| e.to_string())?;
        let m = rng.gen_range(2..10_000u64);
        let n = rng.gen_range(0..300usize);
        if !determinant_identity_holds(&spec, m, n) {
            return Err(fail("determinant identity", (spec, m, n)));
        }
    }
    Ok(count)
}

fn period_bound(scale: Scale) -> Check {
    let mut cases = 0;
    for variant in both_variants() {
        for q in nonzero(-6..=6) {
            for m in 2..=scale.pick(40, 120) {
                for &(a, b) in &SEEDS {
                    let spec = RecurrenceSpec::new(a, b, q, variant).map_err(|e| e.to_string())?;
                    if spec.is_trivial_mod(m) {
                        continue;
                    }
                    let len = period_length(&spec, m).map_err(|e| e.to_string())?;
                    if len as u128 >= (m as u128) * (m as u128) {
                        return Err(fail("period reaches m^2", (spec, m)));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

fn canonicalization(scale: Scale) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let count = scale.pick(300, 2000);
    for _ in 0..count {
        let spec = RecurrenceSpec::w(
            rng.gen_range(0..50),
            rng.gen_range(1..50),
            rng.gen_range(1..20),
        );
        let m = rng.gen_range(2..200u64);
        if spec.is_trivial_mod(m) {
            continue;
        }
        let p = find_period(&spec, m).map_err(|e| e.to_string())?;
        let mut shifted = p.in_generation_order();
        let r = rng.gen_range(0..shifted.len());
        shifted.rotate_left(r);
        if Period::from_cycle(m, shifted).residues != p.residues {
            return Err(fail("rotation changed canonical form", (spec, m, r)));
        }
    }
    Ok(count)
}

fn composite_order(scale: Scale) -> Check {
    let bound = scale.pick(150, 400);
    let grid: Vec<(Variant, i64, u64)> = both_variants()
        .into_iter()
        .flat_map(|v| nonzero(-8..=8).flat_map(move |q| (2..=bound).map(move |m| (v, q, m))))
        .collect();
    grid.par_iter()
        .map(|&(v, q, m)| {
            let c = order_composite(q, v, m).map_err(|e| e.to_string())?.order;
            let d = order_direct(q, v, m).map_err(|e| e.to_string())?.order;
            if c == d {
                Ok(1)
            } else {
                Err(fail("composite order differs from direct", (v, q, m, c, d)))
            }
        })
        .sum()
}

fn k(q: i64, m: u64) -> std::result::Result<u64, String> {
    order_direct(q, Variant::W, m)
        .map(|r| r.order)
        .map_err(|e| e.to_string())
}

fn order_mod_five(_: Scale) -> Check {
    let mut cases = 0;
    for q in 1..=100i64 {
        let expected = match q.rem_euclid(5) {
            1 | 4 => 20,
            2 | 3 => 12,
            _ => continue,
        };
        if k(q, 5)? != expected {
            return Err(fail("k(5)", q));
        }
        cases += 1;
    }
    Ok(cases)
}

fn order_three_powers(scale: Scale) -> Check {
    let mut cases = 0;
    for q in 1..=50i64 {
        if q % 3 == 0 || matches!(q.rem_euclid(9), 4 | 5) {
            continue;
        }
        for n in 1..=scale.pick(4, 5) {
            if k(q, 3u64.pow(n))? != 8 * 3u64.pow(n - 1) {
                return Err(fail("k(3^n) = 8*3^(n-1)", (q, n)));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn order_five_powers(scale: Scale) -> Check {
    let mut cases = 0;
    for q in 1..=scale.pick(25, 50i64) {
        if q % 5 == 0 || matches!(q.rem_euclid(25), 7 | 18) {
            continue;
        }
        for n in 1..=scale.pick(3, 4) {
            if k(q, 5u64.pow(n + 1))? != 5 * k(q, 5u64.pow(n))? {
                return Err(fail("k(5^(n+1)) = 5k(5^n)", (q, n)));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn odd_primes_of_disc(q: i64, limit: u64) -> Vec<u64> {
    let disc = q as i128 * q as i128 + 4;
    primes_up_to(limit)
        .into_iter()
        .filter(|&p| p > 2 && disc % p as i128 == 0)
        .collect()
}

fn ab_grid(scale: Scale) -> Vec<(i64, i64)> {
    let r = scale.pick(3, 6);
    (-r..=r)
        .flat_map(|a| (-r..=r).map(move |b| (a, b)))
        .filter(|&ab| ab != (0, 0))
        .collect()
}

fn period_four_p(scale: Scale) -> Check {
    let mut cases = 0;
    for q in 1..=50 {
        for p in odd_primes_of_disc(q, 100) {
            for &(a, b) in &ab_grid(scale) {
                let spec = RecurrenceSpec::w(a, b, q);
                if invariant_residue(&spec, p) == 0 {
                    continue;
                }
                if period_length(&spec, p).map_err(|e| e.to_string())? != 4 * p {
                    return Err(fail("period modulo p is not 4p", (spec, p)));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn prime_completeness(scale: Scale) -> Check {
    let mut cases = 0;
    for q in 1..=50i64 {
        let disc = q as i128 * q as i128 + 4;
        for p in primes_up_to(100)
            .into_iter()
            .filter(|&p| disc % p as i128 == 0)
        {
            for &(a, b) in &ab_grid(scale) {
                let spec = RecurrenceSpec::w(a, b, q);
                let coprime = invariant_residue(&spec, p) != 0;
                let complete =
                    !spec.is_trivial_mod(p) && is_complete(&spec, p).map_err(|e| e.to_string())?;
                if complete != coprime {
                    return Err(fail("complete mod p iff gcd(D, p) = 1", (spec, p)));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn u_order_divisibility(scale: Scale) -> Check {
    let mut cases = 0;
    for q in 1..=12 {
        for p in primes_up_to(200).into_iter().filter(|&p| p > 2) {
            for &(a, b) in &ab_grid(scale) {
                match check_order_divisibility(q, p, a, b) {
                    Ok(_) => cases += 1,
                    Err(Error::HypothesisViolation(_)) => {}
                    Err(e) => return Err(fail(&e.to_string(), (q, p, a, b))),
                }
            }
        }
    }
    Ok(cases)
}

fn spec_grid() -> Vec<RecurrenceSpec> {
    nonzero(-6..=6)
        .flat_map(|q| SEEDS.iter().map(move |&(a, b)| RecurrenceSpec::w(a, b, q)))
        .chain([RecurrenceSpec::w(1, 3, 1), RecurrenceSpec::w(2, 5, 3)])
        .collect()
}

fn complete_map(spec: &RecurrenceSpec, bound: u64) -> std::result::Result<Vec<bool>, String> {
    (0..=bound)
        .map(|m| match m {
            0 => Ok(false),
            1 => Ok(true),
            _ if spec.is_trivial_mod(m) => Ok(false),
            _ => is_complete(spec, m).map_err(|e| e.to_string()),
        })
        .collect()
}

fn divisor_closure(scale: Scale) -> Check {
    let bound = scale.pick(200, 600);
    spec_grid()
        .par_iter()
        .map(|spec| {
            let complete = complete_map(spec, bound)?;
            let mut cases = 0;
            for m in 2..=bound {
                if complete[m as usize] {
                    if let Some(r) = divisors(m).into_iter().find(|&r| !complete[r as usize]) {
                        return Err(fail(
                            "complete modulo m but not modulo divisor",
                            (spec, m, r),
                        ));
                    }
                    cases += 1;
                }
            }
            Ok(cases)
        })
        .sum()
}

fn candidate_soundness(scale: Scale) -> Check {
    let bound = scale.pick(200, 600);
    let mut cases = 0;
    for q in nonzero(-8..=8) {
        let spec = RecurrenceSpec::w(0, 1, q);
        let union = candidate_primes(q, Variant::W).map_err(|e| e.to_string())?;
        let complete = complete_map(&spec, bound)?;
        for m in 2..=bound {
            if complete[m as usize] {
                if !union.admits(m).map_err(|e| e.to_string())? {
                    return Err(fail("complete modulus with a non-candidate prime", (q, m)));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn unit_multiples(scale: Scale) -> Check {
    let mut cases = 0;
    for spec in spec_grid() {
        for m in 2..=scale.pick(120, 300) {
            if spec.is_trivial_mod(m) || !is_complete(&spec, m).map_err(|e| e.to_string())? {
                continue;
            }
            let reduced = reduce_to_unit_seed(&spec, m).map_err(|e| e.to_string())?;
            if reduced.is_none() || !is_complete(&spec.unit_seed(), m).map_err(|e| e.to_string())? {
                return Err(fail(
                    "complete seed is not a unit multiple of (0, 1)",
                    (spec, m),
                ));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// Every applicable lifting conclusion with target under the ceiling, over
/// `q ∈ [1, 8]`, the seed grid and `m <= bound`. Returns
/// `(applicable, agreeing)`.
pub fn lifting_instances(bound: u64, ceiling: u64) -> crate::Result<(u64, u64)> {
    let mut applicable = 0;
    let mut agreeing = 0;
    for q in 1..=8i64 {
        let odd: Vec<u64> = odd_primes_of_disc(q, 1000);
        for &(a, b) in &[(0, 1), (1, 1), (2, 2), (1, 3), (2, 1)] {
            let spec = RecurrenceSpec::w(a, b, q);
            for m in 2..=bound {
                if spec.is_trivial_mod(m) {
                    continue;
                }
                let mut verdicts = Vec::new();
                for &p in &odd {
                    let v = if m % p == 0 {
                        lift_shared_prime(&spec, p, m, ceiling)
                    } else {
                        lift_coprime_prime(&spec, p, m, ceiling)
                    };
                    verdicts.push(v?);
                }
                match lift_five(&spec, m, ceiling) {
                    Ok(v) => verdicts.push(v),
                    Err(Error::HypothesisViolation(_)) => {}
                    Err(e) => return Err(e),
                }
                for v in verdicts
                    .into_iter()
                    .filter(|v| v.applicable && v.brute_force.is_some())
                {
                    applicable += 1;
                    agreeing += u64::from(v.agrees());
                }
            }
        }
    }
    Ok((applicable, agreeing))
}

fn lifting_soundness(scale: Scale) -> Check {
    let (applicable, agreeing) =
        lifting_instances(scale.pick(100, 300), VERIFICATION_CEILING).map_err(|e| e.to_string())?;
    if applicable < 50 {
        return Err(format!("only {applicable} applicable lifting instances"));
    }
    if agreeing != applicable {
        return Err(format!(
            "{} of {applicable} lifting conclusions contradicted",
            applicable - agreeing
        ));
    }
    Ok(applicable)
}

fn subsequence(_: Scale) -> Check {
    let mut cases = 0;
    for q in 1..=50 {
        for p in odd_primes_of_disc(q, 100) {
            let s = subsequence_classes(q, p).map_err(|e| e.to_string())?;
            if !s.holds() {
                return Err(fail("stride-four classes", (q, p)));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn classify_round_trip(scale: Scale) -> Check {
    let bound = scale.pick(300, 1000);
    let specs: Vec<RecurrenceSpec> = nonzero(-6..=6)
        .flat_map(|q| SEEDS.iter().map(move |&(a, b)| RecurrenceSpec::w(a, b, q)))
        .collect();
    specs
        .par_iter()
        .map(|spec| {
            let r = classify(spec, bound).map_err(|e| fail(&e.to_string(), spec))?;
            let oracle = brute_force_members(spec, bound).map_err(|e| e.to_string())?;
            if r.members != oracle {
                return Err(fail("members differ from brute force", spec));
            }
            Ok(1)
        })
        .sum()
}

fn fibonacci_cross_check(scale: Scale) -> Check {
    let bound = scale.pick(600, 2000);
    let spec = RecurrenceSpec::w(0, 1, 1);
    let r = classify(&spec, bound).map_err(|e| e.to_string())?;
    let oracle = brute_force_members(&spec, bound).map_err(|e| e.to_string())?;
    if r.members != oracle {
        return Err("Fibonacci members differ from brute force".into());
    }
    Ok(r.members.len() as u64)
}

fn member_divisor_closure(scale: Scale) -> Check {
    let bound = scale.pick(300, 1000);
    let mut cases = 0;
    for spec in [
        RecurrenceSpec::w(0, 1, 1),
        RecurrenceSpec::w(0, 1, 3),
        RecurrenceSpec::w(0, 1, 2),
    ] {
        let r = classify(&spec, bound).map_err(|e| e.to_string())?;
        for &m in &r.members {
            if let Some(d) = divisors(m).into_iter().find(|&d| d >= 2 && !r.is_member(d)) {
                return Err(fail("member with a non-member divisor", (spec, m, d)));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn fs_partition(scale: Scale) -> Check {
    let mut cases = 0;
    for q in 1..=10i64 {
        for m in 2..=scale.pick(20, 40) {
            if gcd(q as u64, m) != 1 {
                continue;
            }
            let fs = enumerate_fs(q, m).map_err(|e| e.to_string())?;
            if !pairs_partitioned(&fs) || fs.total_terms != m * m - 1 {
                return Err(fail("adjacent pairs are not partitioned", (q, m)));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn fs_min_length(scale: Scale) -> Check {
    let mut cases = 0;
    for q in 1..=10i64 {
        for m in 2..=scale.pick(20, 40) {
            if gcd(q as u64, m) != 1 {
                continue;
            }
            let fs = enumerate_fs(q, m).map_err(|e| e.to_string())?;
            if let Some(p) = fs.periods.iter().find(|p| p.length < 3) {
                return Err(fail("period shorter than 3", (q, m, &p.residues)));
            }
            cases += fs.periods.len() as u64;
        }
    }
    Ok(cases)
}

fn fs_three_power(scale: Scale) -> Check {
    let mut cases = 0;
    for q in [1i64, 2, 7, 8] {
        for n in 1..=scale.pick(2, 3) {
            let r = verify_fs_decomposition_3power(q, n).map_err(|e| e.to_string())?;
            if !r.holds() {
                return Err(fail("3-power decomposition", (q, n)));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn invariant_separation(scale: Scale) -> Check {
    let mut cases = 0;
    for q in [1i64, 2, 7, 8] {
        for n in 1..=scale.pick(2, 3) {
            let m = 3u64.pow(n);
            let multipliers: Vec<u64> = (1..=m / 2).filter(|r| r % 3 != 0).collect();
            if !scaled_classes_distinct(m, &multipliers) {
                return Err(fail("±r^2 classes collide", (q, n)));
            }
            let base = find_period(&RecurrenceSpec::w(0, 1, q), m).map_err(|e| e.to_string())?;
            for &r in &multipliers {
                let (x, y) = base.scaled(r).adjacent_pairs().next().expect("nonempty");
                let class = pair_invariant_class(x, y, q, Variant::W, m);
                if !class.contains(r * r % m) {
                    return Err(fail("scaled period lacks class ±r^2", (q, n, r)));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn u_oracle(scale: Scale) -> Check {
    let bound = scale.pick(150, 500);
    let grid: Vec<(i64, (i64, i64))> = nonzero(-8..=8)
        .flat_map(|q| SEEDS.iter().map(move |&s| (q, s)))
        .collect();
    grid.par_iter()
        .map(|&(q, (a, b))| {
            let spec = RecurrenceSpec::u(a, b, q);
            for m in 2..=bound {
                residue_complete_u(&spec, m, u64::MAX)
                    .map_err(|e| fail(&e.to_string(), (spec, m)))?;
                uniform_distribution(&spec, m, u64::MAX)
                    .map_err(|e| fail(&e.to_string(), (spec, m)))?;
            }
            Ok(2 * (bound - 1))
        })
        .sum()
}

/// Uniform distribution is multiplicative over maximal prime powers;
/// completeness is too whenever no prime-power component is complete without
/// being uniform, and every failure of completeness multiplicativity has
/// such a component.
fn u_multiplicativity(scale: Scale) -> Check {
    let bound = scale.pick(150, 500);
    let mut cases = 0;
    for q in nonzero(-8..=8) {
        for &(a, b) in &SEEDS {
            let spec = RecurrenceSpec::u(a, b, q);
            let verdicts: Vec<(bool, bool)> = (0..=bound)
                .map(|m| {
                    if m < 2 || spec.is_trivial_mod(m) {
                        return Ok((m == 1, m == 1));
                    }
                    completeness_report(&spec, m)
                        .map(|r| (r.complete, r.uniform))
                        .map_err(|e| e.to_string())
                })
                .collect::<std::result::Result<_, _>>()?;
            for m in 2..=bound {
                let parts: Vec<u64> = factorize(m as u128)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|&(p, h)| p.pow(h))
                    .collect();
                let (complete, uniform) = verdicts[m as usize];
                if uniform != parts.iter().all(|&pp| verdicts[pp as usize].1) {
                    return Err(fail(
                        "uniform distribution is not multiplicative",
                        (spec, m),
                    ));
                }
                let exceptional = parts.iter().any(|&pp| {
                    let (c, u) = verdicts[pp as usize];
                    c && !u
                });
                let multiplicative = complete == parts.iter().all(|&pp| verdicts[pp as usize].0);
                if !multiplicative && !exceptional {
                    return Err(fail(
                        "completeness fails multiplicativity without an exceptional part",
                        (spec, m),
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn stride_four(_: Scale) -> Check {
    for q in 1..=10 {
        if !crate::variant_u::stride_four_identity(q, 100).map_err(|e| e.to_string())? {
            return Err(fail("F_{n+4} = L_4 F_n - F_{n-4}", q));
        }
    }
    Ok(10)
}

fn prime_helpers(_: Scale) -> Check {
    let primes = primes_up_to(1000);
    if primes.iter().any(|&p| !is_prime(p))
        || (2..1000u64).filter(|&n| is_prime(n)).count() != primes.len()
    {
        return Err("sieve and trial division disagree".into());
    }
    if reduce(-7, 5) != 3 {
        return Err("signed reduction".into());
    }
    Ok(primes.len() as u64)
}

fn properties() -> Vec<Property> {
    vec![
        Property {
            module: "modular-core",
            name: "generate repeats after one period",
            run: generate_consistency,
        },
        Property {
            module: "modular-core",
            name: "matrix powers reproduce the sequence",
            run: matrix_agreement,
        },
        Property {
            module: "modular-core",
            name: "determinant identity",
            run: determinant_identity,
        },
        Property {
            module: "modular-core",
            name: "period length below m^2",
            run: period_bound,
        },
        Property {
            module: "modular-core",
            name: "canonical rotation is shift invariant",
            run: canonicalization,
        },
        Property {
            module: "modular-core",
            name: "sieve agrees with trial division",
            run: prime_helpers,
        },
        Property {
            module: "order-analysis",
            name: "composite order equals direct order",
            run: composite_order,
        },
        Property {
            module: "order-analysis",
            name: "k(5) is 20 or 12",
            run: order_mod_five,
        },
        Property {
            module: "order-analysis",
            name: "k(3^n) = 8*3^(n-1)",
            run: order_three_powers,
        },
        Property {
            module: "order-analysis",
            name: "k(5^(n+1)) = 5k(5^n)",
            run: order_five_powers,
        },
        Property {
            module: "order-analysis",
            name: "period 4p for p | q^2+4",
            run: period_four_p,
        },
        Property {
            module: "order-analysis",
            name: "u-period divides p-1 or p+1",
            run: u_order_divisibility,
        },
        Property {
            module: "completeness",
            name: "divisor closure",
            run: divisor_closure,
        },
        Property {
            module: "completeness",
            name: "candidate-prime soundness",
            run: candidate_soundness,
        },
        Property {
            module: "completeness",
            name: "complete mod p iff gcd(D, p) = 1",
            run: prime_completeness,
        },
        Property {
            module: "completeness",
            name: "complete seeds are unit multiples",
            run: unit_multiples,
        },
        Property {
            module: "completeness",
            name: "lifting conclusions agree with brute force",
            run: lifting_soundness,
        },
        Property {
            module: "completeness",
            name: "stride-four subsequence classes",
            run: subsequence,
        },
        Property {
            module: "classifier",
            name: "members equal brute force",
            run: classify_round_trip,
        },
        Property {
            module: "classifier",
            name: "Fibonacci members equal brute force",
            run: fibonacci_cross_check,
        },
        Property {
            module: "classifier",
            name: "members closed under divisors",
            run: member_divisor_closure,
        },
        Property {
            module: "fundamental-system",
            name: "adjacent pairs partitioned",
            run: fs_partition,
        },
        Property {
            module: "fundamental-system",
            name: "periods have length at least 3",
            run: fs_min_length,
        },
        Property {
            module: "fundamental-system",
            name: "3-power decomposition",
            run: fs_three_power,
        },
        Property {
            module: "fundamental-system",
            name: "scaled periods separated by invariant",
            run: invariant_separation,
        },
        Property {
            module: "variant-u",
            name: "rule verdicts equal histograms",
            run: u_oracle,
        },
        Property {
            module: "variant-u",
            name: "multiplicativity over prime powers",
            run: u_multiplicativity,
        },
        Property {
            module: "variant-u",
            name: "stride-four identity",
            run: stride_four,
        },
    ]
}

/// Runs every property; outcomes are returned in a fixed order.
pub fn run_suite(scale: Scale) -> Vec<PropertyOutcome> {
    properties()
        .par_iter()
        .map(|p| {
            let result = (p.run)(scale);
            PropertyOutcome {
                module: p.module.to_string(),
                name: p.name.to_string(),
                cases: *result.as_ref().unwrap_or(&0),
                passed: result.is_ok(),
                detail: result.err(),
            }
        })
        .collect()
}

pub fn all_passed(outcomes: &[PropertyOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}
