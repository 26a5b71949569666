//! Recurrence definitions, term generation, companion matrices, the conserved
//! quadratic form and period detection.
//!
//! Two variants share all of the machinery here:
//!
//! * `W`: `w_n = q*w_{n-1} + w_{n-2}`, companion matrix `(q 1; 1 0)`;
//! * `U`: `u_n = q*u_{n-1} - u_{n-2}`, companion matrix `(q 1; -1 0)`.
//!
//! Inputs `a`, `b`, `q` may be arbitrary integers. Every stored residue lies
//! in `[0, m)`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{add_mod, gcd, mul_mod, reduce, sub_mod};
use crate::error::{Error, Result};

/// Which second-order recurrence is meant; fixes the sign on `x_{n-2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `+x_{n-2}`
    W,
    /// `-x_{n-2}`
    U,
}

impl Variant {
    pub fn sign(self) -> i64 {
        match self {
            Variant::W => 1,
            Variant::U => -1,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::W => "w",
            Variant::U => "u",
        })
    }
}

/// `x_0 = a`, `x_1 = b`, `x_n = q*x_{n-1} + sign*x_{n-2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    pub a: i64,
    pub b: i64,
    pub q: i64,
    pub variant: Variant,
}

impl RecurrenceSpec {
    pub fn new(a: i64, b: i64, q: i64, variant: Variant) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroCoefficient);
        }
        Ok(Self { a, b, q, variant })
    }

    /// Shorthand for the `W` variant. Panics if `q == 0`.
    pub fn w(a: i64, b: i64, q: i64) -> Self {
        Self::new(a, b, q, Variant::W).expect("q must be nonzero")
    }

    /// Shorthand for the `U` variant. Panics if `q == 0`.
    pub fn u(a: i64, b: i64, q: i64) -> Self {
        Self::new(a, b, q, Variant::U).expect("q must be nonzero")
    }

    /// The seed `(0, 1)` with the same `q` and variant.
    pub fn unit_seed(&self) -> Self {
        Self {
            a: 0,
            b: 1,
            ..*self
        }
    }

    pub fn seed_mod(&self, m: u64) -> (u64, u64) {
        (reduce(self.a, m), reduce(self.b, m))
    }

    pub fn is_trivial_mod(&self, m: u64) -> bool {
        self.seed_mod(m) == (0, 0)
    }

    pub(crate) fn stepper(&self, m: u64) -> Stepper {
        Stepper {
            q: reduce(self.q, m),
            variant: self.variant,
            m,
        }
    }
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {}, q={})", self.variant, self.a, self.b, self.q)
    }
}

/// One step of the pair-state map `(x, y) -> (y, q*y + sign*x)` modulo `m`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Stepper {
    q: u64,
    variant: Variant,
    m: u64,
}

impl Stepper {
    #[inline]
    pub(crate) fn next(&self, x: u64, y: u64) -> u64 {
        let qy = mul_mod(self.q, y, self.m);
        match self.variant {
            Variant::W => add_mod(qy, x, self.m),
            Variant::U => sub_mod(qy, x, self.m),
        }
    }
}

pub(crate) fn check_modulus(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidModulus {
            modulus: 0,
            reason: "modulus must be positive",
        });
    }
    Ok(())
}

/// The first `n` terms reduced modulo `m`. The all-zero seed is allowed here.
pub fn generate(spec: &RecurrenceSpec, m: u64, n: usize) -> Result<Vec<u64>> {
    check_modulus(m)?;
    let step = spec.stepper(m);
    let (mut x, mut y) = spec.seed_mod(m);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(x);
        let z = step.next(x, y);
        x = y;
        y = z;
    }
    Ok(out)
}

/// A 2x2 matrix over `Z_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionMatrix {
    pub entries: [[u64; 2]; 2],
    pub modulus: u64,
}

impl CompanionMatrix {
    /// `(q 1; 1 0)` for `W`, `(q 1; -1 0)` for `U`, reduced modulo `m`.
    pub fn new(q: i64, variant: Variant, m: u64) -> Self {
        let lower = reduce(variant.sign(), m);
        Self {
            entries: [[reduce(q, m), 1 % m], [lower, 0]],
            modulus: m,
        }
    }

    pub fn identity(m: u64) -> Self {
        Self {
            entries: [[1 % m, 0], [0, 1 % m]],
            modulus: m,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let m = self.modulus;
        let (l, r) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| {
            add_mod(
                mul_mod(l[i][0], r[0][j], m),
                mul_mod(l[i][1], r[1][j], m),
                m,
            )
        };
        Self {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
            modulus: m,
        }
    }

    /// Square-and-multiply; `O(log e)` products.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.modulus);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn determinant(&self) -> u64 {
        let m = self.modulus;
        let e = &self.entries;
        sub_mod(
            mul_mod(e[0][0], e[1][1], m),
            mul_mod(e[0][1], e[1][0], m),
            m,
        )
    }
}

/// The companion matrix of `spec` raised to `e`, modulo `m`.
pub fn companion_power(spec: &RecurrenceSpec, e: u64, m: u64) -> Result<CompanionMatrix> {
    check_modulus(m)?;
    Ok(CompanionMatrix::new(spec.q, spec.variant, m).pow(e))
}

/// The quadratic form conserved (up to sign for `W`) along the sequence.
///
/// For `W` this is `a^2 + q*a*b - b^2` and `w_{n+2}w_n - w_{n+1}^2 = (-1)^n * raw`.
/// For `U` it is `-a^2 + q*a*b - b^2` and `u_{n+2}u_n - u_{n+1}^2 = raw` for every `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariant {
    pub raw: BigInt,
    pub modulus: u64,
    pub class: InvariantClass,
}

/// The pair `{+D mod m, -D mod m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantClass {
    pub plus: u64,
    pub minus: u64,
}

impl InvariantClass {
    pub fn new(d: u64, m: u64) -> Self {
        let plus = d % m;
        Self {
            plus,
            minus: sub_mod(0, plus, m),
        }
    }

    /// Order-independent key: the smaller of the two residues.
    pub fn key(&self) -> u64 {
        self.plus.min(self.minus)
    }

    pub fn contains(&self, r: u64) -> bool {
        self.plus == r || self.minus == r
    }
}

const SMALL_INPUT: u64 = 1 << 20;

fn raw_invariant(spec: &RecurrenceSpec) -> BigInt {
    let lead: i64 = match spec.variant {
        Variant::W => 1,
        Variant::U => -1,
    };
    let small = [spec.a, spec.b, spec.q]
        .iter()
        .all(|x| x.unsigned_abs() <= SMALL_INPUT);
    if small {
        let (a, b, q) = (spec.a as i128, spec.b as i128, spec.q as i128);
        BigInt::from(lead as i128 * a * a + q * a * b - b * b)
    } else {
        let (a, b, q) = (
            BigInt::from(spec.a),
            BigInt::from(spec.b),
            BigInt::from(spec.q),
        );
        BigInt::from(lead) * &a * &a + &q * &a * &b - &b * &b
    }
}

/// The invariant reduced modulo `m`, computed entirely in `Z_m`.
pub fn invariant_residue(spec: &RecurrenceSpec, m: u64) -> u64 {
    let (a, b) = spec.seed_mod(m);
    form_mod(a, b, reduce(spec.q, m), spec.variant, m)
}

/// `gcd(D, m)` with `gcd(0, m) = m`.
pub fn invariant_gcd(spec: &RecurrenceSpec, m: u64) -> u64 {
    gcd(invariant_residue(spec, m), m)
}

pub fn invariant_of(spec: &RecurrenceSpec, m: u64) -> Result<Invariant> {
    check_modulus(m)?;
    let raw = raw_invariant(spec);
    let residue = {
        let r = &raw % BigInt::from(m);
        let r = if r < BigInt::from(0) {
            r + BigInt::from(m)
        } else {
            r
        };
        u64::try_from(r).expect("residue below a u64 modulus")
    };
    debug_assert_eq!(residue, invariant_residue(spec, m));
    Ok(Invariant {
        raw,
        modulus: m,
        class: InvariantClass::new(residue, m),
    })
}

/// Invariant class of an adjacent pair `(x, y)` of residues modulo `m`.
pub fn pair_invariant_class(x: u64, y: u64, q: i64, variant: Variant, m: u64) -> InvariantClass {
    InvariantClass::new(form_mod(x % m, y % m, reduce(q, m), variant, m), m)
}

fn form_mod(a: u64, b: u64, q: u64, variant: Variant, m: u64) -> u64 {
    let qab = mul_mod(mul_mod(q, a, m), b, m);
    let a2 = mul_mod(a, a, m);
    let b2 = mul_mod(b, b, m);
    match variant {
        Variant::W => sub_mod(add_mod(a2, qab, m), b2, m),
        Variant::U => sub_mod(sub_mod(qab, a2, m), b2, m),
    }
}

/// One cycle of the sequence modulo `m`, stored in canonical rotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Period {
    pub modulus: u64,
    /// Lexicographically smallest cyclic shift of the cycle.
    pub residues: Vec<u64>,
    pub length: usize,
    /// Index `i` of the generated sequence at which `residues` begins.
    pub rotation: usize,
}

impl Period {
    /// Canonicalizes an arbitrary cycle of residues modulo `m`.
    pub fn from_cycle(modulus: u64, cycle: Vec<u64>) -> Self {
        let rotation = least_rotation(&cycle);
        let length = cycle.len();
        let mut residues = cycle;
        residues.rotate_left(rotation);
        Self {
            modulus,
            residues,
            length,
            rotation,
        }
    }

    /// The cycle in generation order, starting at the seed.
    pub fn in_generation_order(&self) -> Vec<u64> {
        let mut v = self.residues.clone();
        v.rotate_right(self.rotation);
        v
    }

    pub fn scaled(&self, d: u64) -> Self {
        let m = self.modulus;
        Self::from_cycle(m, self.residues.iter().map(|&x| mul_mod(x, d, m)).collect())
    }

    /// Adjacent pairs `(c_i, c_{i+1})`, including the wrap-around pair.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let n = self.residues.len();
        (0..n).map(move |i| (self.residues[i], self.residues[(i + 1) % n]))
    }
}

/// Start index of the lexicographically least rotation (two-pointer method, `O(n)`).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (x, y) = (&s[(i + k) % n], &s[(j + k) % n]);
        if x == y {
            k += 1;
            continue;
        }
        if x > y {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Walks the pair state from the seed until it recurs and returns the cycle.
///
/// The state map on `Z_m x Z_m` is a bijection, so the seed itself recurs
/// after at most `m^2 - 1` steps.
pub fn find_period(spec: &RecurrenceSpec, m: u64) -> Result<Period> {
    check_modulus(m)?;
    if m > 1 && spec.is_trivial_mod(m) {
        return Err(Error::TrivialSeed { modulus: m });
    }
    let cycle = cycle_from_seed(spec, m)?;
    Ok(Period::from_cycle(m, cycle))
}

pub(crate) fn cycle_from_seed(spec: &RecurrenceSpec, m: u64) -> Result<Vec<u64>> {
    let step = spec.stepper(m);
    let seed = spec.seed_mod(m);
    let limit = (m as u128) * (m as u128);
    let (mut x, mut y) = seed;
    let mut cycle = Vec::new();
    loop {
        cycle.push(x);
        let z = step.next(x, y);
        x = y;
        y = z;
        if (x, y) == seed {
            break;
        }
        if cycle.len() as u128 >= limit {
            return Err(Error::LawViolation(format!(
                "no return to the seed within m^2 = {limit} steps"
            )));
        }
    }
    Ok(cycle)
}

/// Period length alone, without storing residues.
pub fn period_length(spec: &RecurrenceSpec, m: u64) -> Result<u64> {
    check_modulus(m)?;
    if m > 1 && spec.is_trivial_mod(m) {
        return Err(Error::TrivialSeed { modulus: m });
    }
    let step = spec.stepper(m);
    let seed = spec.seed_mod(m);
    let limit = (m as u128) * (m as u128);
    let (mut x, mut y) = seed;
    let mut len: u64 = 0;
    loop {
        let z = step.next(x, y);
        x = y;
        y = z;
        len += 1;
        if (x, y) == seed {
            return Ok(len);
        }
        if len as u128 >= limit {
            return Err(Error::LawViolation(format!(
                "no return to the seed within m^2 = {limit} steps"
            )));
        }
    }
}
