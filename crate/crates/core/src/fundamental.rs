//! Fundamental systems: one representative period for every orbit of the
//! pair-state map on the nonzero pairs of `Z_m x Z_m`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, gcd, mul_mod};
use crate::error::{Error, Result};
use crate::recurrence::{find_period, pair_invariant_class, Period, RecurrenceSpec, Variant};

/// Largest modulus for which the `m^2` pair states are enumerated.
pub const FS_MODULUS_LIMIT: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FundamentalSystem {
    pub modulus: u64,
    pub q: i64,
    /// Canonical rotations sorted by `(length, residues)`.
    pub periods: Vec<Period>,
    pub total_terms: u64,
}

impl FundamentalSystem {
    /// Header line followed by one comma-separated period per line.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "# m={} q={} totalTerms={}\n",
            self.modulus, self.q, self.total_terms
        );
        for p in &self.periods {
            let line: Vec<String> = p.residues.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn canonical_set(&self) -> BTreeSet<Vec<u64>> {
        self.periods.iter().map(|p| p.residues.clone()).collect()
    }
}

fn sort_periods(periods: &mut [Period]) {
    periods.sort_by(|a, b| (a.length, &a.residues).cmp(&(b.length, &b.residues)));
}

/// Groups every nonzero pair into its orbit under `(x, y) -> (y, q*y + x)`.
pub fn enumerate_fs(q: i64, m: u64) -> Result<FundamentalSystem> {
    if q == 0 {
        return Err(Error::ZeroCoefficient);
    }
    if m < 2 {
        return Err(Error::InvalidModulus {
            modulus: m,
            reason: "fundamental systems need m >= 2",
        });
    }
    if m > FS_MODULUS_LIMIT {
        return Err(Error::ModulusTooLarge {
            modulus: m,
            limit: FS_MODULUS_LIMIT,
        });
    }
    let n = m as usize;
    let mut visited = vec![false; n * n];
    visited[0] = true;
    let mut periods = Vec::new();
    for start in 1..n * n {
        if visited[start] {
            continue;
        }
        let spec = RecurrenceSpec::w((start / n) as i64, (start % n) as i64, q);
        let period = find_period(&spec, m)?;
        for (x, y) in period.adjacent_pairs() {
            visited[x as usize * n + y as usize] = true;
        }
        periods.push(period);
    }
    sort_periods(&mut periods);
    for p in &mut periods {
        p.rotation = 0;
    }
    let total_terms = periods.iter().map(|p| p.length as u64).sum();
    Ok(FundamentalSystem {
        modulus: m,
        q,
        periods,
        total_terms,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionReport {
    pub q: i64,
    pub exponent: u32,
    pub modulus: u64,
    /// Length of the period of `(0, 1)`.
    pub base_length: usize,
    /// Multipliers `r` coprime to 3 with `r <= 3^n / 2`.
    pub multipliers: Vec<u64>,
    pub scaled_count: usize,
    pub inherited_count: usize,
    pub pairwise_inequivalent: bool,
    pub total_terms: u64,
    /// `8 * 3^(n-1) * phi(3^n)/2 + 3^(2(n-1)) - 1`.
    pub expected_terms: u64,
    pub matches_enumeration: bool,
    /// The period of `(0, 1)` is the only one whose invariant class is `±1`.
    pub unit_class_unique: bool,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.pairwise_inequivalent
            && self.total_terms == self.expected_terms
            && self.expected_terms == self.modulus * self.modulus - 1
            && self.matches_enumeration
            && self.unit_class_unique
    }
}

/// Rebuilds the fundamental system modulo `3^n` from the scaled periods
/// `r * C` and the tripled system modulo `3^(n-1)`, and compares with direct
/// enumeration.
pub fn verify_fs_decomposition_3power(q: i64, n: u32) -> Result<DecompositionReport> {
    if q == 0 {
        return Err(Error::ZeroCoefficient);
    }
    if n == 0 {
        return Err(Error::HypothesisViolation(
            "exponent must be at least 1".into(),
        ));
    }
    match q.rem_euclid(9) {
        r if r % 3 == 0 => {
            return Err(Error::HypothesisViolation(format!("3 divides q = {q}")));
        }
        4 | 5 => {
            return Err(Error::HypothesisViolation(format!(
                "q = {q} is 4 or 5 modulo 9"
            )));
        }
        _ => {}
    }
    let modulus = 3u64
        .checked_pow(n)
        .filter(|&m| m <= FS_MODULUS_LIMIT)
        .ok_or(Error::ModulusTooLarge {
            modulus: 3u64.saturating_pow(n),
            limit: FS_MODULUS_LIMIT,
        })?;

    let base = find_period(&RecurrenceSpec::w(0, 1, q), modulus)?;
    let multipliers: Vec<u64> = (1..=modulus / 2).filter(|r| r % 3 != 0).collect();
    let mut union: Vec<Period> = multipliers.iter().map(|&r| base.scaled(r)).collect();
    let scaled_count = union.len();

    let inherited: Vec<Period> = if n == 1 {
        Vec::new()
    } else {
        enumerate_fs(q, modulus / 3)?
            .periods
            .iter()
            .map(|d| Period::from_cycle(modulus, d.residues.iter().map(|&x| 3 * x).collect()))
            .collect()
    };
    let inherited_count = inherited.len();
    union.extend(inherited);

    let canonical: BTreeSet<Vec<u64>> = union.iter().map(|p| p.residues.clone()).collect();
    let pairwise_inequivalent = canonical.len() == union.len();
    let total_terms: u64 = union.iter().map(|p| p.length as u64).sum();
    let prev = modulus / 3;
    let expected_terms = 8 * prev * euler_phi(modulus) / 2 + prev * prev - 1;
    let matches_enumeration = enumerate_fs(q, modulus)?.canonical_set() == canonical;

    let unit_class: Vec<&Period> = union
        .iter()
        .filter(|p| {
            let (x, y) = p.adjacent_pairs().next().expect("periods are nonempty");
            pair_invariant_class(x, y, q, Variant::W, modulus).contains(1)
        })
        .collect();
    let unit_class_unique = unit_class.len() == 1 && unit_class[0].residues == base.residues;

    Ok(DecompositionReport {
        q,
        exponent: n,
        modulus,
        base_length: base.length,
        multipliers,
        scaled_count,
        inherited_count,
        pairwise_inequivalent,
        total_terms,
        expected_terms,
        matches_enumeration,
        unit_class_unique,
    })
}

/// Every nonzero pair occurs exactly once as an adjacent pair across the
/// system.
pub fn pairs_partitioned(fs: &FundamentalSystem) -> bool {
    let n = fs.modulus as usize;
    let mut seen = vec![0u32; n * n];
    for p in &fs.periods {
        for (x, y) in p.adjacent_pairs() {
            seen[x as usize * n + y as usize] += 1;
        }
    }
    seen[0] == 0 && seen[1..].iter().all(|&c| c == 1)
}

/// `±r^2` classes of the scaled periods, which must be distinct for
/// distinct multipliers.
pub fn scaled_classes_distinct(modulus: u64, multipliers: &[u64]) -> bool {
    let keys: BTreeSet<u64> = multipliers
        .iter()
        .map(|&r| crate::recurrence::InvariantClass::new(mul_mod(r, r, modulus), modulus).key())
        .collect();
    keys.len() == multipliers.len() && multipliers.iter().all(|&r| gcd(r, modulus) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_systems() {
        let fs = enumerate_fs(1, 2).unwrap();
        assert_eq!(fs.periods.len(), 1);
        assert_eq!(fs.periods[0].residues, vec![0, 1, 1]);
        assert_eq!(fs.total_terms, 3);
        assert_eq!(enumerate_fs(1, 3).unwrap().total_terms, 8);
    }

    #[test]
    fn thirteen_contains_known_period() {
        let fs = enumerate_fs(3, 13).unwrap();
        assert_eq!(fs.total_terms, 168);
        let c = find_period(&RecurrenceSpec::w(0, 1, 3), 13).unwrap();
        assert_eq!(c.length, 52);
        assert!(fs.canonical_set().contains(&c.residues));
    }

    #[test]
    fn dump_format() {
        let text = enumerate_fs(1, 2).unwrap().dump();
        assert_eq!(text, "# m=2 q=1 totalTerms=3\n0,1,1\n");
    }

    #[test]
    fn rejects_large_and_small() {
        assert_eq!(
            enumerate_fs(1, 2001),
            Err(Error::ModulusTooLarge {
                modulus: 2001,
                limit: 2000
            })
        );
        assert!(enumerate_fs(1, 1).is_err());
        assert_eq!(enumerate_fs(0, 5), Err(Error::ZeroCoefficient));
    }

    #[test]
    fn decomposition_examples() {
        let r = verify_fs_decomposition_3power(1, 1).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.base_length, 8);
        let r = verify_fs_decomposition_3power(2, 2).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.base_length, 24);
        assert!(matches!(
            verify_fs_decomposition_3power(4, 1),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            verify_fs_decomposition_3power(3, 1),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn decomposition_deeper() {
        for q in [1, 2, -1, 7, 10] {
            for n in 1..=4 {
                let r = verify_fs_decomposition_3power(q, n).unwrap();
                assert!(r.holds(), "q={q} n={n}: {r:?}");
                assert!(scaled_classes_distinct(r.modulus, &r.multipliers));
            }
        }
    }

    #[test]
    fn non_coprime_q_still_enumerates() {
        let fs = enumerate_fs(2, 4).unwrap();
        assert!(pairs_partitioned(&fs));
    }

    proptest! {
        #[test]
        fn pair_partition_and_count(q in -9i64..=9, m in 2u64..=40) {
            prop_assume!(q != 0 && gcd(q.unsigned_abs(), m) == 1);
            let fs = enumerate_fs(q, m).unwrap();
            prop_assert!(pairs_partitioned(&fs));
            prop_assert_eq!(fs.total_terms, m * m - 1);
            prop_assert!(fs.periods.iter().all(|p| p.length >= 3));
            prop_assert_eq!(fs.canonical_set().len(), fs.periods.len());
        }
    }
}
