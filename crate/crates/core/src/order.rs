//! The order `k(m)` of the companion matrix modulo `m`.
//!
//! Three routes compute the same number: walking the pair state of the seed
//! `(0, 1)` ([`order_direct`]), lifting from a prime to its powers
//! ([`order_lifted`]), and combining prime-power orders by `lcm` over the
//! factorization of `m` ([`order_composite`]).

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, lcm};
use crate::error::{Error, Result};
use crate::recurrence::{
    check_modulus, invariant_gcd, period_length, CompanionMatrix, RecurrenceSpec, Variant,
};

/// Largest stabilization exponent searched for before falling back to direct
/// iteration on every power.
pub const STABILIZATION_CAP: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderMethod {
    Direct,
    Multiplicative,
    Lifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimePowerOrder {
    pub prime: u64,
    pub exponent: u32,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderResult {
    pub modulus: u64,
    pub order: u64,
    pub method: OrderMethod,
    pub factors: Vec<PrimePowerOrder>,
    /// For a lifted order: the largest `c` with `k(p^c) = k(p)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilization: Option<u32>,
    /// Set when the lifting law could not be confirmed and some power was
    /// computed by direct iteration instead.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub fallback: bool,
}

fn check_q(q: i64) -> Result<()> {
    if q == 0 {
        Err(Error::ZeroCoefficient)
    } else {
        Ok(())
    }
}

fn is_identity_power(q: i64, variant: Variant, e: u64, m: u64) -> bool {
    CompanionMatrix::new(q, variant, m).pow(e).is_identity()
}

/// Smallest `k >= 1` with `sigma^k = I (mod m)`, found as the period length of
/// the seed `(0, 1)`, whose form value `-1` is a unit for every `m`.
/// `m = 1` yields order 1.
pub fn order_direct(q: i64, variant: Variant, m: u64) -> Result<OrderResult> {
    check_q(q)?;
    check_modulus(m)?;
    let order = if m == 1 {
        1
    } else {
        period_length(
            &RecurrenceSpec {
                a: 0,
                b: 1,
                q,
                variant,
            },
            m,
        )?
    };
    Ok(OrderResult {
        modulus: m,
        order,
        method: OrderMethod::Direct,
        factors: Vec::new(),
        stabilization: None,
        fallback: false,
    })
}

/// `k(p^e)` from `k(p)`: the order stays at `k(p)` up to the stabilization
/// exponent `c`, then gains one factor `p` per further power.
///
/// Every step past `c` is confirmed by an identity check; a failed check
/// switches to direct iteration for the remaining powers.
pub fn order_lifted(q: i64, variant: Variant, p: u64, e: u32) -> Result<OrderResult> {
    check_q(q)?;
    if !is_prime(p) {
        return Err(Error::HypothesisViolation(format!("{p} is not prime")));
    }
    if e == 0 {
        return Err(Error::HypothesisViolation(
            "exponent must be at least 1".into(),
        ));
    }
    let modulus = p.checked_pow(e).ok_or(Error::ModulusTooLarge {
        modulus: u64::MAX,
        limit: u64::MAX,
    })?;
    let base = order_direct(q, variant, p)?.order;
    let power = |j: u32| p.checked_pow(j);

    let mut c = 1u32;
    let mut capped = false;
    while let Some(next) = power(c + 1) {
        if !is_identity_power(q, variant, base, next) {
            break;
        }
        if c == STABILIZATION_CAP {
            capped = true;
            break;
        }
        c += 1;
    }

    let mut order = base;
    let mut fallback = false;
    for j in 2..=e {
        let pj = power(j).expect("p^j <= p^e");
        if fallback || capped {
            fallback = true;
            order = order_direct(q, variant, pj)?.order;
            continue;
        }
        if j <= c {
            continue;
        }
        let grows = !is_identity_power(q, variant, order, pj);
        let next = order * p;
        if grows && is_identity_power(q, variant, next, pj) {
            order = next;
        } else {
            fallback = true;
            order = order_direct(q, variant, pj)?.order;
        }
    }

    Ok(OrderResult {
        modulus,
        order,
        method: OrderMethod::Lifted,
        factors: vec![PrimePowerOrder {
            prime: p,
            exponent: e,
            order,
        }],
        stabilization: Some(c),
        fallback,
    })
}

/// Factorizes `m`, lifts each prime-power order and combines coprime parts by
/// `k(mn) = k(m)k(n)/gcd(k(m), k(n))`.
pub fn order_composite(q: i64, variant: Variant, m: u64) -> Result<OrderResult> {
    check_q(q)?;
    check_modulus(m)?;
    let mut order = 1u64;
    let mut factors = Vec::new();
    let mut fallback = false;
    for (p, e) in factorize(m as u128)? {
        let part = order_lifted(q, variant, p, e)?;
        fallback |= part.fallback;
        order = lcm(order, part.order);
        factors.push(PrimePowerOrder {
            prime: p,
            exponent: e,
            order: part.order,
        });
    }
    Ok(OrderResult {
        modulus: m,
        order,
        method: OrderMethod::Multiplicative,
        factors,
        stabilization: None,
        fallback,
    })
}

/// Period length of a seed against `k(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PeriodOrderRelation {
    pub period_length: u64,
    pub order: u64,
    /// `period_length | order`
    pub divides: bool,
    /// `gcd(D, m) = 1`, in which case the two must be equal.
    pub invariant_coprime: bool,
}

impl PeriodOrderRelation {
    pub fn holds(&self) -> bool {
        self.divides && (!self.invariant_coprime || self.period_length == self.order)
    }
}

pub fn period_length_divides(spec: &RecurrenceSpec, m: u64) -> Result<PeriodOrderRelation> {
    let period = period_length(spec, m)?;
    let order = order_direct(spec.q, spec.variant, m)?.order;
    let rel = PeriodOrderRelation {
        period_length: period,
        order,
        divides: order % period == 0,
        invariant_coprime: invariant_gcd(spec, m) == 1,
    };
    if !rel.holds() {
        return Err(Error::LawViolation(format!(
            "period {period} and order {order} modulo {m} violate the divisibility relation"
        )));
    }
    Ok(rel)
}
