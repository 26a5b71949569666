//! Classification of the moduli over which a `w`-recurrence is residue
//! complete.
//!
//! Moduli up to the bound are decided from small to large. Each candidate
//! modulus is first tested against the exclusion rules (invariant gcd,
//! prime-power caps, incomplete divisors), then against the lifting rules
//! from a complete divisor `m/p`, and only otherwise brute-forced. The
//! resulting prediction is then compared with an exhaustive sweep of every
//! `m` in `[2, bound]`; any difference is a [`Error::Disagreement`].
//!
//! Members are grouped into families `base * prod p^e` whose lift primes `p`
//! are backed by checked lifting steps.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, reduce};
use crate::completeness::{
    candidate_primes, discriminant, is_complete, prime_power_rule, CandidatePrimeSet,
    ExponentBound, PrimePowerRule,
};
use crate::error::{Error, Result};
use crate::order::order_composite;
use crate::recurrence::{invariant_gcd, invariant_residue, RecurrenceSpec, Variant};

/// Where a verdict for one modulus came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictSource {
    #[serde(rename = "bruteforce")]
    BruteForce,
    /// Lift by an odd prime of `q^2 + 4` already dividing the smaller modulus.
    LiftSharedPrime,
    /// Lift by an odd prime of `q^2 + 4` coprime to the smaller modulus.
    LiftCoprimePrime,
    /// Lift by 5 when `5 ∤ q(q^2 + 4)` and the invariant is `±1 (mod 5)`.
    LiftFive,
    /// Powers of 2: at most 4 (q odd) or 2 (q even).
    TwoPowerRule,
    /// Powers of 3: none if `3 | q`, only 3 if `q ≡ 4, 5 (mod 9)`, all otherwise.
    ThreePowerRule,
    /// Powers of 5 decided by brute force on the seed `(0, 1)`.
    FivePowerRule,
    /// Powers of 7: only 7, and only if `q ≡ 1, 3, 4, 6 (mod 7)`.
    SevenPowerRule,
    /// A proper divisor is already incomplete.
    DivisorClosure,
    /// `gcd(D, m) > 1`.
    InvariantGcd,
    /// Some prime factor lies outside the candidate primes.
    CandidatePrimes,
}

impl VerdictSource {
    pub fn is_lift(self) -> bool {
        matches!(
            self,
            VerdictSource::LiftSharedPrime
                | VerdictSource::LiftCoprimePrime
                | VerdictSource::LiftFive
        )
    }

    pub fn tag(self) -> &'static str {
        match self {
            VerdictSource::BruteForce => "bruteforce",
            VerdictSource::LiftSharedPrime => "lift-shared-prime",
            VerdictSource::LiftCoprimePrime => "lift-coprime-prime",
            VerdictSource::LiftFive => "lift-five",
            VerdictSource::TwoPowerRule => "two-power-rule",
            VerdictSource::ThreePowerRule => "three-power-rule",
            VerdictSource::FivePowerRule => "five-power-rule",
            VerdictSource::SevenPowerRule => "seven-power-rule",
            VerdictSource::DivisorClosure => "divisor-closure",
            VerdictSource::InvariantGcd => "invariant-gcd",
            VerdictSource::CandidatePrimes => "candidate-primes",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Evidence {
    pub modulus: u64,
    pub complete: bool,
    pub source: VerdictSource,
    /// The smaller modulus this verdict was derived from.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parent: Option<u64>,
    /// The prime by which the parent was multiplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyDescriptor {
    pub base_modulus: u64,
    /// Primes whose exponent may grow without bound on top of the base.
    pub lift_primes: Vec<u64>,
    pub conditions: String,
    /// The family is only known through brute force up to the bound.
    pub bounded_evidence_only: bool,
}

impl FamilyDescriptor {
    /// `m = base * prod p^e` with `p` ranging over the lift primes.
    pub fn exponents_of(&self, m: u64) -> Option<Vec<(u64, u32)>> {
        if !m.is_multiple_of(self.base_modulus) {
            return None;
        }
        let mut rest = m / self.base_modulus;
        let mut out = Vec::new();
        for &p in &self.lift_primes {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        (rest == 1).then_some(out)
    }

    /// All members of the family in `[2, bound]`.
    pub fn expand(&self, bound: u64) -> Vec<u64> {
        let mut out = vec![self.base_modulus];
        for &p in &self.lift_primes {
            let mut grown = Vec::new();
            for &x in &out {
                let mut y = x;
                while let Some(z) = y.checked_mul(p).filter(|&z| z <= bound) {
                    grown.push(z);
                    y = z;
                }
            }
            out.extend(grown);
        }
        out.retain(|&m| (2..=bound).contains(&m));
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationResult {
    pub spec: RecurrenceSpec,
    pub bound: u64,
    pub candidate_primes: CandidatePrimeSet,
    pub prime_rules: Vec<PrimePowerRule>,
    pub members: Vec<u64>,
    pub structure: Vec<FamilyDescriptor>,
    /// Verdicts for every modulus in `[2, bound]` built from candidate primes.
    pub evidence: Vec<Evidence>,
}

impl ClassificationResult {
    pub fn evidence_for(&self, m: u64) -> Option<&Evidence> {
        self.evidence
            .binary_search_by_key(&m, |e| e.modulus)
            .ok()
            .map(|i| &self.evidence[i])
    }

    pub fn is_member(&self, m: u64) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    /// Union of every family's expansion within the bound.
    pub fn structural_members(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self
            .structure
            .iter()
            .flat_map(|f| f.expand(self.bound))
            .collect();
        set.into_iter().collect()
    }
}

/// Brute-force verdict that treats a trivial seed (all zeros) as incomplete.
pub fn brute_force_complete(spec: &RecurrenceSpec, m: u64) -> Result<bool> {
    if m > 1 && spec.is_trivial_mod(m) {
        return Ok(false);
    }
    is_complete(spec, m)
}

/// Every `m` in `[2, bound]` with a complete sequence, by exhaustive sweep.
pub fn brute_force_members(spec: &RecurrenceSpec, bound: u64) -> Result<Vec<u64>> {
    let verdicts: Vec<(u64, bool)> = (2..=bound)
        .into_par_iter()
        .map(|m| brute_force_complete(spec, m).map(|c| (m, c)))
        .collect::<Result<_>>()?;
    Ok(verdicts
        .into_iter()
        .filter(|&(_, c)| c)
        .map(|(m, _)| m)
        .collect())
}

struct Classifier<'a> {
    spec: &'a RecurrenceSpec,
    omega_odd: Vec<u64>,
    five_lifts: bool,
    caps: BTreeMap<u64, (u32, VerdictSource)>,
    three_unbounded: bool,
    orders: BTreeMap<u64, u64>,
    verdicts: BTreeMap<u64, Evidence>,
}

impl<'a> Classifier<'a> {
    fn order(&mut self, m: u64) -> Result<u64> {
        if let Some(&k) = self.orders.get(&m) {
            return Ok(k);
        }
        let k = order_composite(self.spec.q, Variant::W, m)?.order;
        self.orders.insert(m, k);
        Ok(k)
    }

    fn complete(&self, m: u64) -> Option<bool> {
        self.verdicts.get(&m).map(|e| e.complete)
    }

    fn decide(&mut self, m: u64, factors: &[(u64, u32)]) -> Result<Evidence> {
        let verdict = |complete, source, parent: Option<u64>, prime: Option<u64>| Evidence {
            modulus: m,
            complete,
            source,
            parent,
            prime,
        };

        if invariant_gcd(self.spec, m) != 1 {
            return Ok(verdict(false, VerdictSource::InvariantGcd, None, None));
        }
        for &(p, e) in factors {
            if let Some(&(cap, source)) = self.caps.get(&p) {
                if e > cap {
                    return Ok(verdict(false, source, None, Some(p)));
                }
            }
        }
        for &(p, _) in factors {
            let parent = m / p;
            if parent >= 2 && self.complete(parent) == Some(false) {
                return Ok(verdict(
                    false,
                    VerdictSource::DivisorClosure,
                    Some(parent),
                    Some(p),
                ));
            }
        }
        if let [(3, e)] = factors {
            if self.three_unbounded {
                let parent = (*e > 1).then_some(m / 3);
                return Ok(verdict(
                    true,
                    VerdictSource::ThreePowerRule,
                    parent,
                    Some(3),
                ));
            }
        }
        for &(p, _) in factors {
            let parent = m / p;
            if parent < 2 || self.complete(parent) != Some(true) {
                continue;
            }
            let source = if self.omega_odd.contains(&p) {
                if parent.is_multiple_of(p) {
                    VerdictSource::LiftSharedPrime
                } else {
                    VerdictSource::LiftCoprimePrime
                }
            } else if p == 5 && self.five_lifts && parent.is_multiple_of(5) {
                VerdictSource::LiftFive
            } else {
                continue;
            };
            if self.order(m)? == p * self.order(parent)? {
                return Ok(verdict(true, source, Some(parent), Some(p)));
            }
        }
        let complete = brute_force_complete(self.spec, m)?;
        Ok(verdict(complete, VerdictSource::BruteForce, None, None))
    }
}

fn cap_source(p: u64) -> VerdictSource {
    match p {
        2 => VerdictSource::TwoPowerRule,
        3 => VerdictSource::ThreePowerRule,
        5 => VerdictSource::FivePowerRule,
        _ => VerdictSource::SevenPowerRule,
    }
}

/// Classifies every modulus in `[2, bound]` and derives the family structure.
///
/// `m = 1` is never a member.
pub fn classify(spec: &RecurrenceSpec, bound: u64) -> Result<ClassificationResult> {
    if spec.variant != Variant::W {
        return Err(Error::HypothesisViolation(
            "classification covers the w-variant; use the u-variant rules instead".into(),
        ));
    }
    if spec.q == 0 {
        return Err(Error::ZeroCoefficient);
    }
    if (spec.a, spec.b) == (0, 0) {
        return Err(Error::TrivialSeed { modulus: 0 });
    }
    if bound < 2 {
        return Err(Error::InvalidModulus {
            modulus: bound,
            reason: "bound must be at least 2",
        });
    }

    let candidates = candidate_primes(spec.q, Variant::W)?;
    let prime_rules: Vec<PrimePowerRule> = [2u64, 3, 5, 7]
        .iter()
        .map(|&p| prime_power_rule(spec.q, p))
        .collect::<Result<_>>()?;
    let omega_odd: Vec<u64> = candidates
        .omega
        .iter()
        .copied()
        .filter(|&p| p > 2)
        .collect();

    let d5 = invariant_residue(spec, 5);
    let five_lifts = reduce(spec.q, 5) != 0
        && discriminant(spec.q, Variant::W).rem_euclid(5) != 0
        && (d5 == 1 || d5 == 4);

    let mut caps = BTreeMap::new();
    let mut three_unbounded = false;
    for rule in &prime_rules {
        match rule.max_exponent {
            ExponentBound::Finite(cap) => {
                caps.insert(rule.prime, (cap, cap_source(rule.prime)));
            }
            ExponentBound::Unbounded if rule.prime == 3 => three_unbounded = true,
            _ => {}
        }
    }

    let mut classifier = Classifier {
        spec,
        omega_odd,
        five_lifts,
        caps,
        three_unbounded,
        orders: BTreeMap::new(),
        verdicts: BTreeMap::new(),
    };

    for m in 2..=bound {
        let factors = factorize(m as u128)?;
        if !factors.iter().all(|&(p, _)| candidates.contains(p)) {
            continue;
        }
        let ev = classifier.decide(m, &factors)?;
        classifier.verdicts.insert(m, ev);
    }

    let predicted: Vec<u64> = classifier
        .verdicts
        .values()
        .filter(|e| e.complete)
        .map(|e| e.modulus)
        .collect();
    let observed = brute_force_members(spec, bound)?;
    if predicted != observed {
        let p: BTreeSet<u64> = predicted.iter().copied().collect();
        let o: BTreeSet<u64> = observed.iter().copied().collect();
        let witness = *p.symmetric_difference(&o).next().expect("sets differ");
        return Err(Error::Disagreement {
            modulus: witness,
            predicted: p.contains(&witness),
            observed: o.contains(&witness),
        });
    }

    let evidence: Vec<Evidence> = classifier.verdicts.into_values().collect();
    let structure = families(&evidence, &predicted, bound);
    let result = ClassificationResult {
        spec: *spec,
        bound,
        candidate_primes: candidates,
        prime_rules,
        members: predicted,
        structure,
        evidence,
    };
    if result.structural_members() != result.members {
        return Err(Error::LawViolation(
            "family expansion does not reproduce the member list".into(),
        ));
    }
    Ok(result)
}

fn is_derived(e: &Evidence) -> bool {
    e.complete
        && e.parent.is_some()
        && (e.source.is_lift() || e.source == VerdictSource::ThreePowerRule)
}

fn families(evidence: &[Evidence], members: &[u64], bound: u64) -> Vec<FamilyDescriptor> {
    let by_modulus: BTreeMap<u64, &Evidence> = evidence.iter().map(|e| (e.modulus, e)).collect();
    let mut roots: BTreeMap<u64, (BTreeSet<u64>, Vec<u64>)> = BTreeMap::new();
    for &m in members {
        let mut cur = by_modulus[&m];
        let mut primes = BTreeSet::new();
        while is_derived(cur) {
            primes.insert(cur.prime.expect("derived verdicts record their prime"));
            cur = by_modulus[&cur.parent.expect("derived verdicts record their parent")];
        }
        let entry = roots.entry(cur.modulus).or_default();
        entry.0.extend(primes);
        entry.1.push(m);
    }

    let mut out = Vec::new();
    for (root, (primes, chain_members)) in roots {
        let family = FamilyDescriptor {
            base_modulus: root,
            lift_primes: primes.iter().copied().collect(),
            conditions: String::new(),
            bounded_evidence_only: false,
        };
        let rectangle_ok = family
            .expand(bound)
            .iter()
            .all(|&m| m == root || by_modulus.get(&m).is_some_and(|e| is_derived(e)));
        if rectangle_ok {
            let conditions = if family.lift_primes.is_empty() {
                "single modulus decided directly".to_string()
            } else if family.lift_primes == [3] && root == 3 {
                "pure powers of 3: gcd(q, 3) = gcd(D, 3) = 1 and q ≢ 4, 5 (mod 9)".to_string()
            } else {
                format!(
                    "exponents of {:?} grow by lifting; each step requires k(p*m) = p*k(m), \
                     checked for every member up to {bound}",
                    family.lift_primes
                )
            };
            out.push(FamilyDescriptor {
                conditions,
                ..family
            });
        } else {
            for m in chain_members {
                out.push(FamilyDescriptor {
                    base_modulus: m,
                    lift_primes: Vec::new(),
                    conditions: format!(
                        "bounded evidence only: brute force and checked lifts up to {bound}"
                    ),
                    bounded_evidence_only: true,
                });
            }
        }
    }
    out.sort_by_key(|f| f.base_modulus);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Member,
    NonMember,
    /// A lifting hypothesis failed beyond the bound.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceStep {
    pub modulus: u64,
    pub complete: Option<bool>,
    pub source: VerdictSource,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Derivation {
    pub modulus: u64,
    pub conclusion: Conclusion,
    /// From the base case to `modulus`.
    pub steps: Vec<TraceStep>,
}

fn describe(e: &Evidence) -> String {
    match (e.source, e.parent, e.prime) {
        (VerdictSource::BruteForce, ..) => format!(
            "one full period modulo {} {} every residue",
            e.modulus,
            if e.complete { "covers" } else { "misses" }
        ),
        (VerdictSource::InvariantGcd, ..) => format!("gcd(D, {}) > 1", e.modulus),
        (VerdictSource::DivisorClosure, Some(parent), _) => {
            format!("divisor {parent} is not residue complete")
        }
        (VerdictSource::ThreePowerRule, _, _) if e.complete => {
            "pure power of 3 under the 3-power rule".into()
        }
        (s, _, Some(p)) if s.is_lift() => format!(
            "lift by {p} from {}: k({}) = {p}*k({}) checked",
            e.parent.unwrap_or(1),
            e.modulus,
            e.parent.unwrap_or(1)
        ),
        (s, _, Some(p)) => format!("exponent of {p} exceeds the {} cap", s.tag()),
        (s, ..) => s.tag().to_string(),
    }
}

fn step_of(e: &Evidence) -> TraceStep {
    TraceStep {
        modulus: e.modulus,
        complete: Some(e.complete),
        source: e.source,
        detail: describe(e),
    }
}

/// The chain of verdicts that decides membership of `m`.
pub fn explain(result: &ClassificationResult, m: u64) -> Result<Derivation> {
    if m < 2 {
        return Err(Error::OutOfScope { modulus: m });
    }
    if m <= result.bound {
        return Ok(explain_within(result, m));
    }
    explain_beyond(result, m)
}

fn explain_within(result: &ClassificationResult, m: u64) -> Derivation {
    let Some(mut cur) = result.evidence_for(m) else {
        let outside = factorize(m as u128)
            .map(|f| {
                f.into_iter()
                    .map(|(p, _)| p)
                    .find(|&p| !result.candidate_primes.contains(p))
            })
            .ok()
            .flatten();
        return Derivation {
            modulus: m,
            conclusion: Conclusion::NonMember,
            steps: vec![TraceStep {
                modulus: m,
                complete: Some(false),
                source: VerdictSource::CandidatePrimes,
                detail: match outside {
                    Some(p) => format!("prime factor {p} is not a candidate prime"),
                    None => "prime factor outside the candidate primes".into(),
                },
            }],
        };
    };
    let mut steps = vec![step_of(cur)];
    let follow = |e: &Evidence| is_derived(e) || e.source == VerdictSource::DivisorClosure;
    while follow(cur) {
        cur = result
            .evidence_for(cur.parent.expect("followed verdicts have parents"))
            .expect("parents lie within the bound");
        steps.push(step_of(cur));
    }
    steps.reverse();
    Derivation {
        modulus: m,
        conclusion: if result.is_member(m) {
            Conclusion::Member
        } else {
            Conclusion::NonMember
        },
        steps,
    }
}

fn explain_beyond(result: &ClassificationResult, m: u64) -> Result<Derivation> {
    // Necessary conditions first: every prime factor must be a candidate and
    // every divisor within the bound must itself be a member.
    let primes: Vec<u64> = factorize(m as u128)?.into_iter().map(|(p, _)| p).collect();
    if let Some(&p) = primes
        .iter()
        .find(|&&p| !result.candidate_primes.contains(p))
    {
        return Ok(Derivation {
            modulus: m,
            conclusion: Conclusion::NonMember,
            steps: vec![TraceStep {
                modulus: m,
                complete: Some(false),
                source: VerdictSource::CandidatePrimes,
                detail: format!("prime factor {p} is not a candidate prime"),
            }],
        });
    }
    if let Some(d) = divisors(m)
        .into_iter()
        .filter(|&d| d >= 2 && d <= result.bound)
        .find(|&d| !result.is_member(d))
    {
        let mut trace = explain_within(result, d);
        trace.steps.push(TraceStep {
            modulus: m,
            complete: Some(false),
            source: VerdictSource::DivisorClosure,
            detail: format!("divisor {d} is not complete"),
        });
        trace.modulus = m;
        trace.conclusion = Conclusion::NonMember;
        return Ok(trace);
    }
    let (family, exponents) = result
        .structure
        .iter()
        .filter(|f| !f.bounded_evidence_only && !f.lift_primes.is_empty())
        .find_map(|f| f.exponents_of(m).map(|e| (f, e)))
        .ok_or(Error::OutOfScope { modulus: m })?;

    let spec = &result.spec;
    let omega: Vec<u64> = result
        .candidate_primes
        .omega
        .iter()
        .copied()
        .filter(|&p| p > 2)
        .collect();
    let mut trace = explain_within(result, family.base_modulus);
    let mut cur = family.base_modulus;
    for (p, e) in exponents {
        for _ in 0..e {
            let next = cur * p;
            if next <= result.bound {
                trace = explain_within(result, next);
                cur = next;
                continue;
            }
            let source = if omega.contains(&p) {
                if cur % p == 0 {
                    VerdictSource::LiftSharedPrime
                } else {
                    VerdictSource::LiftCoprimePrime
                }
            } else if p == 5 && cur % 5 == 0 {
                VerdictSource::LiftFive
            } else if p == 3 && factorize(cur as u128)?.len() == 1 {
                VerdictSource::ThreePowerRule
            } else {
                trace.steps.push(TraceStep {
                    modulus: next,
                    complete: None,
                    source: VerdictSource::CandidatePrimes,
                    detail: format!("no lifting rule applies to {p} on {cur}"),
                });
                trace.conclusion = Conclusion::Undetermined;
                trace.modulus = m;
                return Ok(trace);
            };
            if source == VerdictSource::ThreePowerRule {
                trace.steps.push(TraceStep {
                    modulus: next,
                    complete: Some(true),
                    source,
                    detail: "pure power of 3 under the 3-power rule".into(),
                });
                cur = next;
                continue;
            }
            let k_cur = order_composite(spec.q, Variant::W, cur)?.order;
            let k_next = order_composite(spec.q, Variant::W, next)?.order;
            if invariant_gcd(spec, next) != 1 {
                trace.steps.push(TraceStep {
                    modulus: next,
                    complete: Some(false),
                    source: VerdictSource::InvariantGcd,
                    detail: format!("gcd(D, {next}) > 1"),
                });
                trace.conclusion = Conclusion::NonMember;
                trace.modulus = m;
                return Ok(trace);
            }
            if k_next != p * k_cur {
                trace.steps.push(TraceStep {
                    modulus: next,
                    complete: None,
                    source,
                    detail: format!(
                        "k({next}) = {k_next} differs from {p}*k({cur}) = {}",
                        p * k_cur
                    ),
                });
                trace.conclusion = Conclusion::Undetermined;
                trace.modulus = m;
                return Ok(trace);
            }
            trace.steps.push(TraceStep {
                modulus: next,
                complete: Some(true),
                source,
                detail: format!(
                    "lift by {p} from {cur}: k({next}) = {k_next} = {p}*k({cur}) checked"
                ),
            });
            cur = next;
        }
    }
    trace.modulus = m;
    trace.conclusion = Conclusion::Member;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pows(p: u64, bound: u64) -> impl Iterator<Item = u64> {
        std::iter::successors(Some(p), move |&x| Some(x * p)).take_while(move |&x| x <= bound)
    }

    #[test]
    fn pell_members() {
        let r = classify(&RecurrenceSpec::w(0, 1, 2), 2000).unwrap();
        let mut expected: Vec<u64> = std::iter::once(2)
            .chain(pows(3, 2000))
            .chain(pows(5, 2000))
            .collect();
        expected.sort_unstable();
        assert_eq!(r.members, expected);
    }

    #[test]
    fn pell_lucas_members() {
        let r = classify(&RecurrenceSpec::w(2, 2, 2), 2000).unwrap();
        assert_eq!(r.members, pows(3, 2000).collect::<Vec<_>>());
    }

    #[test]
    fn q3_members_and_structure() {
        let r = classify(&RecurrenceSpec::w(0, 1, 3), 2000).unwrap();
        let mut expected = BTreeSet::new();
        for t in pows(13, 2000).chain(std::iter::once(1)) {
            for base in [1u64, 2, 4, 7, 14] {
                expected.insert(base * t);
            }
            for f in pows(5, 2000).chain(std::iter::once(1)) {
                expected.insert(f * t);
            }
        }
        let expected: Vec<u64> = expected
            .into_iter()
            .filter(|&m| (2..=2000).contains(&m))
            .collect();
        assert_eq!(r.members, expected);
        let five = r.structure.iter().find(|f| f.base_modulus == 5).unwrap();
        assert_eq!(five.lift_primes, vec![5, 13]);
        assert!(r.structure.iter().all(|f| !f.bounded_evidence_only));
    }

    #[test]
    fn explain_examples() {
        let r = classify(&RecurrenceSpec::w(0, 1, 3), 2000).unwrap();
        let d = explain(&r, 52).unwrap();
        assert_eq!(d.conclusion, Conclusion::Member);
        assert_eq!(d.steps.len(), 1);
        assert_eq!(d.steps[0].source, VerdictSource::BruteForce);

        let d = explain(&r, 10).unwrap();
        assert_eq!(d.conclusion, Conclusion::NonMember);
        assert_eq!(d.steps.last().unwrap().source, VerdictSource::BruteForce);

        let d = explain(&r, 2197).unwrap();
        assert_eq!(d.conclusion, Conclusion::Member);
        let moduli: Vec<u64> = d.steps.iter().map(|s| s.modulus).collect();
        assert_eq!(moduli, vec![13, 169, 2197]);
        assert_eq!(d.steps[1].source, VerdictSource::LiftSharedPrime);
        assert_eq!(d.steps[2].source, VerdictSource::LiftSharedPrime);

        let d = explain(&r, 11).unwrap();
        assert_eq!(d.steps[0].source, VerdictSource::CandidatePrimes);

        let d = explain(&r, 6000).unwrap();
        assert_eq!(d.conclusion, Conclusion::NonMember);
        assert_eq!(
            d.steps.last().unwrap().source,
            VerdictSource::DivisorClosure
        );
        let d = explain(&r, 11 * 2000).unwrap();
        assert_eq!(d.steps[0].source, VerdictSource::CandidatePrimes);
        assert_eq!(explain(&r, 1), Err(Error::OutOfScope { modulus: 1 }));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(classify(&RecurrenceSpec::w(0, 0, 2), 100).is_err());
        assert!(classify(&RecurrenceSpec::u(0, 1, 3), 100).is_err());
        assert!(classify(&RecurrenceSpec::w(0, 1, 3), 1).is_err());
    }
}
