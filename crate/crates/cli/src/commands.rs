use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use rescomp::classifier::{classify, explain, ClassificationResult, Derivation};
use rescomp::completeness::{completeness_report, subsequence_classes, CompletenessReport};
use rescomp::fundamental::{enumerate_fs, verify_fs_decomposition_3power};
use rescomp::order::{order_composite, order_direct};
use rescomp::report::{classification_rows, to_csv, to_json, CompletenessRow, UVerdictRow};
use rescomp::variant_u::{
    check_order_divisibility, residue_complete_u, splitting_type, uniform_distribution, UVerdict,
};
use rescomp::verify::{all_passed, run_suite, Scale};
use rescomp::{find_period, Error, RecurrenceSpec, Result, Variant};

use crate::args::{Cli, Command, Format};

/// Exit code for a completed run whose checked law did not hold.
pub const EXIT_LAW: i32 = 3;

pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }

    fn checked(stdout: String, holds: bool) -> Self {
        Self {
            stdout,
            code: if holds { 0 } else { EXIT_LAW },
        }
    }
}

fn render<T: Serialize>(
    format: Format,
    kind: &str,
    variant: Variant,
    data: &T,
    text: impl FnOnce() -> String,
    csv: impl FnOnce() -> Result<String>,
) -> Result<String> {
    match format {
        Format::Text => Ok(text()),
        Format::Json => to_json(kind, variant, data).map(|s| s + "\n"),
        Format::Csv => csv(),
    }
}

fn joined(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Period { spec, modulus } => {
            let spec = spec.spec()?;
            let period = find_period(&spec, *modulus)?;
            let out = render(
                format,
                "period",
                spec.variant,
                &period,
                || {
                    format!(
                        "{spec} mod {}: period length {}\n{}\n",
                        period.modulus,
                        period.length,
                        joined(&period.residues)
                    )
                },
                || {
                    #[derive(Serialize)]
                    struct Row {
                        index: usize,
                        residue: u64,
                    }
                    let rows: Vec<Row> = period
                        .residues
                        .iter()
                        .enumerate()
                        .map(|(index, &residue)| Row { index, residue })
                        .collect();
                    to_csv(&rows)
                },
            )?;
            Ok(Output::ok(out))
        }

        Command::Order {
            q,
            variant,
            modulus,
        } => {
            let variant: Variant = (*variant).into();
            let direct = order_direct(*q, variant, *modulus)?;
            let composite = order_composite(*q, variant, *modulus)?;
            if direct.order != composite.order {
                return Err(Error::LawViolation(format!(
                    "k({modulus}) is {} directly but {} by factorization",
                    direct.order, composite.order
                )));
            }
            let data = json!({ "direct": direct, "composite": composite });
            let out = render(
                format,
                "order",
                variant,
                &data,
                || {
                    let parts: Vec<String> = composite
                        .factors
                        .iter()
                        .map(|f| format!("k({}^{}) = {}", f.prime, f.exponent, f.order))
                        .collect();
                    format!("k({modulus}) = {}\n{}\n", direct.order, parts.join(", "))
                },
                || {
                    #[derive(Serialize)]
                    struct Row {
                        modulus: u64,
                        order: u64,
                    }
                    to_csv(&[Row {
                        modulus: *modulus,
                        order: direct.order,
                    }])
                },
            )?;
            Ok(Output::ok(out))
        }

        Command::Complete {
            spec,
            modulus,
            bound,
        } => {
            let spec = spec.spec()?;
            let moduli: Vec<u64> = match (modulus, bound) {
                (Some(m), _) => vec![*m],
                (None, Some(b)) => (2..=*b).collect(),
                (None, None) => unreachable!("clap requires one of --mod and --bound"),
            };
            let reports: Vec<CompletenessReport> = moduli
                .par_iter()
                .filter(|&&m| !spec.is_trivial_mod(m) || moduli.len() == 1)
                .map(|&m| completeness_report(&spec, m))
                .collect::<Result<_>>()?;
            let out = render(
                format,
                "complete",
                spec.variant,
                &reports,
                || {
                    let mut s = String::new();
                    for r in &reports {
                        let _ = writeln!(
                            s,
                            "{spec} mod {}: {}{}, period {}, gcd(D, m) = {}",
                            r.modulus,
                            if r.complete { "complete" } else { "incomplete" },
                            if r.uniform { " and uniform" } else { "" },
                            r.period_length,
                            r.gcd_invariant
                        );
                        if !r.complete && moduli.len() == 1 {
                            let _ = writeln!(s, "missing: {}", joined(&r.missing));
                        }
                    }
                    s
                },
                || {
                    to_csv(
                        &reports
                            .iter()
                            .map(|r| CompletenessRow::new(&spec, r))
                            .collect::<Vec<_>>(),
                    )
                },
            )?;
            Ok(Output::ok(out))
        }

        Command::Classify {
            spec,
            bound,
            explain: targets,
        } => {
            let spec = spec.spec()?;
            let result = classify(&spec, *bound)?;
            let derivations: Vec<Derivation> = targets
                .iter()
                .map(|&m| explain(&result, m))
                .collect::<Result<_>>()?;
            let data = json!({ "classification": result, "explanations": derivations });
            let out = render(
                format,
                "classify",
                spec.variant,
                &data,
                || classification_text(&result, &derivations),
                || to_csv(&classification_rows(&result)),
            )?;
            Ok(Output::ok(out))
        }

        Command::Fs {
            q,
            modulus,
            three_power,
        } => {
            if let Some(n) = three_power {
                let r = verify_fs_decomposition_3power(*q, *n)?;
                let holds = r.holds();
                let out = render(
                    format,
                    "fs-decomposition",
                    Variant::W,
                    &r,
                    || {
                        format!(
                            "FS(3^{n}) for q = {q}: {} scaled + {} inherited periods, {} terms (expected {}), \
                             inequivalent {}, matches enumeration {}, unique ±1 class {}\n{}\n",
                            r.scaled_count,
                            r.inherited_count,
                            r.total_terms,
                            r.expected_terms,
                            r.pairwise_inequivalent,
                            r.matches_enumeration,
                            r.unit_class_unique,
                            if holds { "decomposition holds" } else { "DECOMPOSITION FAILS" }
                        )
                    },
                    || to_csv(&[&r]).or_else(|_| Ok(String::new())),
                )?;
                return Ok(Output::checked(out, holds));
            }
            let m = modulus.expect("clap requires one of --mod and --three-power");
            let fs = enumerate_fs(*q, m)?;
            let out = render(
                format,
                "fs",
                Variant::W,
                &fs,
                || fs.dump(),
                || {
                    #[derive(Serialize)]
                    struct Row {
                        length: usize,
                        residues: String,
                    }
                    let rows: Vec<Row> = fs
                        .periods
                        .iter()
                        .map(|p| Row {
                            length: p.length,
                            residues: joined(&p.residues),
                        })
                        .collect();
                    to_csv(&rows)
                },
            )?;
            Ok(Output::ok(out))
        }

        Command::Subseq { q, prime } => {
            let s = subsequence_classes(*q, *prime)?;
            let holds = s.holds();
            let out = render(
                format,
                "subseq",
                Variant::W,
                &s,
                || {
                    let mut t = String::new();
                    for (j, class) in s.classes.iter().enumerate() {
                        let _ = writeln!(
                            t,
                            "F(4n+{j}) mod {prime}: {} of {} residues",
                            class.len(),
                            prime
                        );
                    }
                    let _ = writeln!(
                        t,
                        "L4 mod {prime} = {}; F(4n) = -2nq: {}",
                        s.l4, s.stride_four_linear
                    );
                    t
                },
                || {
                    #[derive(Serialize)]
                    struct Row {
                        offset: usize,
                        distinct: usize,
                    }
                    let rows: Vec<Row> = s
                        .classes
                        .iter()
                        .enumerate()
                        .map(|(offset, c)| Row {
                            offset,
                            distinct: c.len(),
                        })
                        .collect();
                    to_csv(&rows)
                },
            )?;
            Ok(Output::checked(out, holds))
        }

        Command::VariantU {
            q,
            a,
            b,
            modulus,
            prime,
            bound,
        } => {
            let spec = RecurrenceSpec::new(*a, *b, *q, Variant::U)?;
            if let Some(p) = prime {
                let split = splitting_type(*q, *p)?;
                let div = check_order_divisibility(*q, *p, *a, *b)?;
                let data = json!({ "splitting": split, "divisibility": div });
                let out = render(
                    format,
                    "variant-u-prime",
                    Variant::U,
                    &data,
                    || {
                        format!(
                            "x^2 - {q}x + 1 mod {p}: {:?} (q^2 - 4 = {} mod {p})\nperiod length {}{}\n",
                            split.kind,
                            split.discriminant,
                            div.period_length,
                            match div.claimed_divisor {
                                Some(d) => format!(" divides {d}"),
                                None => ", no divisibility claim for a repeated root".into(),
                            }
                        )
                    },
                    || to_csv(&[div.splitting]),
                )?;
                return Ok(Output::ok(out));
            }
            let moduli: Vec<u64> = match (modulus, bound) {
                (Some(m), _) => vec![*m],
                (None, Some(b)) => (2..=*b).collect(),
                _ => unreachable!("clap requires a target"),
            };
            let verdicts: Vec<(UVerdict, UVerdict)> = moduli
                .par_iter()
                .map(|&m| {
                    Ok((
                        residue_complete_u(&spec, m, cli.ceiling)?,
                        uniform_distribution(&spec, m, cli.ceiling)?,
                    ))
                })
                .collect::<Result<_>>()?;
            let data: Vec<_> = verdicts
                .iter()
                .map(|(c, u)| json!({ "modulus": c.modulus, "complete": c, "uniform": u }))
                .collect();
            let out = render(
                format,
                "variant-u",
                Variant::U,
                &data,
                || {
                    let mut s = String::new();
                    for (c, u) in &verdicts {
                        let _ = writeln!(
                            s,
                            "{spec} mod {}: {}, {}",
                            c.modulus,
                            if c.verdict { "complete" } else { "incomplete" },
                            if u.verdict { "uniform" } else { "not uniform" }
                        );
                    }
                    s
                },
                || {
                    to_csv(
                        &verdicts
                            .iter()
                            .map(|(c, _)| UVerdictRow::from(c))
                            .collect::<Vec<_>>(),
                    )
                },
            )?;
            Ok(Output::ok(out))
        }

        Command::Verify { full } => {
            let scale = if *full { Scale::Full } else { Scale::Quick };
            let outcomes = run_suite(scale);
            let passed = all_passed(&outcomes);
            let out = render(
                format,
                "verify",
                Variant::W,
                &outcomes,
                || {
                    let mut s = String::new();
                    for o in &outcomes {
                        let _ = writeln!(
                            s,
                            "{:<4} {:<20} {:<48} {:>8}{}",
                            if o.passed { "PASS" } else { "FAIL" },
                            o.module,
                            o.name,
                            o.cases,
                            o.detail
                                .as_ref()
                                .map(|d| format!("  {d}"))
                                .unwrap_or_default()
                        );
                    }
                    let failed = outcomes.iter().filter(|o| !o.passed).count();
                    let _ = writeln!(s, "{} properties, {failed} failed", outcomes.len());
                    s
                },
                || to_csv(&outcomes),
            )?;
            Ok(Output::checked(out, passed))
        }
    }
}

fn classification_text(result: &ClassificationResult, derivations: &[Derivation]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} for m in [2, {}]", result.spec, result.bound);
    let _ = writeln!(
        s,
        "candidate primes: {}",
        joined(&result.candidate_primes.union)
    );
    let _ = writeln!(
        s,
        "members ({}): {}",
        result.members.len(),
        joined(&result.members)
    );
    let _ = writeln!(s, "families:");
    for f in &result.structure {
        let _ = writeln!(
            s,
            "  {:>6}  lift primes [{}]  {}",
            f.base_modulus,
            joined(&f.lift_primes),
            f.conditions
        );
    }
    for d in derivations {
        let _ = writeln!(s, "m = {}: {:?}", d.modulus, d.conclusion);
        for step in &d.steps {
            let _ = writeln!(
                s,
                "  {:>8}  {:<20} {}",
                step.modulus,
                step.source.tag(),
                step.detail
            );
        }
    }
    s
}
