//! The end-to-end verification suite behind `kl verify-all`.
//!
//! Reports carry no timings, so identical runs serialize to identical bytes.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::MultiplicativeCharacter;
use crate::config::RunConfig;
use crate::equidist::{self, monodromy_target, parse_target, DEFAULT_BINS};
use crate::error::Result;
use crate::eulerchar::{adjoint_census, g2_census, qm_census};
use crate::field::FieldElement;
use crate::poly;
use crate::repweights::{principal_strings, weyl_dimension, WeightMultiset};
use crate::rootsys::{all_types, CartanType, Family, RootSystem};
use crate::sums::{table_convolution, table_naive, weil_report, KloostermanSpec, SumTable};
use crate::wildmono::{self, good_primes, pgl2_swan_bound};

pub const CHECK_NAMES: [&str; 9] = [
    "sum oracle equivalence",
    "Weil bound",
    "Sato-Tate for Kl2",
    "G2 detection for Kl7 in characteristic 2",
    "SU(3) mixed moments for Kl3",
    "quasi-minuscule string lemma",
    "Euler characteristic censuses",
    "simple wild parameter",
    "principal PGL2 exclusion",
];

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckResult {
    pub id: usize,
    pub name: String,
    pub pass: bool,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub tolerance_a: f64,
    pub tolerance_b: f64,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub struct VerifyOutcome {
    pub report: VerifyReport,
    pub timings: Vec<(usize, Duration)>,
}

#[derive(Default)]
struct WeilLog {
    tables: usize,
    worst: f64,
    failures: Vec<String>,
}

impl WeilLog {
    fn record(&mut self, t: &SumTable) {
        let w = weil_report(t);
        self.tables += 1;
        let rel = w.max_ratio / t.spec.n as f64;
        if rel > self.worst {
            self.worst = rel;
        }
        if !w.pass {
            self.failures.push(describe(&t.spec));
        }
    }
}

fn describe(spec: &KloostermanSpec) -> String {
    let chi: Vec<u64> = spec.chars.iter().map(|c| c.exponent()).collect();
    let coeffs: Vec<i32> = spec.coeffs.iter().map(|c| c.log).collect();
    format!("q={} n={} coeff_logs={coeffs:?} chi={chi:?}", spec.field.q, spec.n)
}

fn check(id: usize, pass: bool, details: Value) -> CheckResult {
    CheckResult { id, name: CHECK_NAMES[id - 1].to_string(), pass, details }
}

pub fn prime_powers_up_to(limit: u64) -> Vec<(u64, u32)> {
    (2..=limit)
        .filter_map(|q| {
            let f = poly::prime_factors(q);
            if f.len() != 1 {
                return None;
            }
            let p = f[0];
            let mut k = 0;
            let mut r = q;
            while r > 1 {
                r /= p;
                k += 1;
            }
            Some((p, k))
        })
        .collect()
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| poly::is_prime(p)).collect()
}

/// Seeded random spec: unit coefficients and arbitrary character exponents.
pub fn random_spec(cfg: &RunConfig, p: u64, k: u32, n: usize, index: u64) -> Result<KloostermanSpec> {
    let field = cfg.field(p, k)?;
    let m = field.order() as u64;
    let seed = cfg.seed ^ (field.q << 20) ^ ((n as u64) << 12) ^ index;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..n).map(|_| FieldElement::from_log(rng.gen_range(0..m) as usize)).collect();
    let chars = (0..n)
        .map(|_| MultiplicativeCharacter::new(field.clone(), rng.gen_range(0..m)))
        .collect();
    KloostermanSpec::new(field, coeffs, chars)
}

fn check_oracles(cfg: &RunConfig, log: &mut WeilLog) -> Result<CheckResult> {
    let mut jobs = Vec::new();
    for (p, k) in prime_powers_up_to(64) {
        for n in 1..=4 {
            for i in 0..20 {
                jobs.push((p, k, n, i));
            }
        }
    }
    let results: Vec<(SumTable, f64)> = jobs
        .par_iter()
        .map(|&(p, k, n, i)| {
            let spec = random_spec(cfg, p, k, n, i)?;
            let naive = table_naive(&spec, cfg.budget)?;
            let conv = table_convolution(&spec);
            let scale = 1e-9 * spec.weight_scale();
            let err = naive.raw.iter().zip(&conv.raw).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            Ok((naive, err / scale))
        })
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for (t, ratio) in &results {
        log.record(t);
        worst = worst.max(*ratio);
        if *ratio > 1.0 {
            failures.push(describe(&t.spec));
        }
    }
    Ok(check(
        1,
        failures.is_empty(),
        json!({
            "specs": results.len(),
            "worst_error_over_tolerance": worst,
            "failures": failures,
        }),
    ))
}

fn check_weil(cfg: &RunConfig, log: &mut WeilLog) -> Result<CheckResult> {
    for p in primes_up_to(200) {
        let spec = KloostermanSpec::classical(cfg.field(p, 1)?, 2)?;
        log.record(&table_naive(&spec, cfg.budget)?);
    }
    for p in primes_up_to(50) {
        let spec = KloostermanSpec::classical(cfg.field(p, 1)?, 3)?;
        log.record(&table_naive(&spec, cfg.budget)?);
    }
    Ok(check(
        2,
        log.failures.is_empty(),
        json!({
            "tables": log.tables,
            "worst_ratio_over_n": log.worst,
            "failures": log.failures,
        }),
    ))
}

fn moment_json(r: &[equidist::MomentReport]) -> Value {
    serde_json::to_value(r).expect("moments serialize")
}

fn check_sato_tate(cfg: &RunConfig, log: &mut WeilLog) -> Result<CheckResult> {
    let p = 10007;
    let spec = KloostermanSpec::classical(cfg.field(p, 1)?, 2)?;
    let table = table_naive(&spec, cfg.budget)?;
    log.record(&table);
    let stats = equidist::angle_statistics(&table, DEFAULT_BINS, cfg.tolerance_b)?;
    let moments = equidist::compare(&table, &monodromy_target(2, p)?, 8, cfg.tolerance_a)?;
    let expected = [0u128, 1, 0, 2, 0, 5, 0, 14];
    let theory_ok = moments.iter().map(|m| m.theoretical).eq(expected);
    let pass = stats.pass && theory_ok && moments.iter().all(|m| m.pass);
    Ok(check(
        3,
        pass,
        json!({
            "q": p,
            "ks_statistic": stats.ks_statistic,
            "ks_threshold": stats.threshold,
            "histogram": stats.histogram,
            "moments": moment_json(&moments),
        }),
    ))
}

fn check_g2(cfg: &RunConfig, log: &mut WeilLog) -> Result<CheckResult> {
    let spec = KloostermanSpec::classical(cfg.field(2, 13)?, 7)?;
    let table = table_convolution(&spec);
    log.record(&table);
    let target = monodromy_target(7, 2)?;
    let g2 = equidist::compare(&table, &target, 4, cfg.tolerance_a)?;
    let so7 = equidist::compare(&table, &parse_target("SO7")?, 4, cfg.tolerance_a)?;
    let m4 = &so7[3];
    let emp = Complex64::new(m4.empirical_re, m4.empirical_im);
    let so7_margin = (emp - m4.theoretical as f64).norm() - m4.tolerance;
    let theory_ok = g2[1..].iter().map(|m| m.theoretical).eq([1u128, 1, 4]) && m4.theoretical == 3;
    let pass = theory_ok && g2[1..].iter().all(|m| m.pass) && so7_margin > 0.5;
    Ok(check(
        4,
        pass,
        json!({
            "q": spec.field.q,
            "target": target.label,
            "g2_moments": moment_json(&g2),
            "so7_m4": moment_json(std::slice::from_ref(m4)),
            "so7_margin_beyond_tolerance": so7_margin,
        }),
    ))
}

fn check_su3(cfg: &RunConfig, log: &mut WeilLog) -> Result<CheckResult> {
    let spec = KloostermanSpec::classical(cfg.field(5, 4)?, 3)?;
    let table = table_convolution(&spec);
    log.record(&table);
    let target = monodromy_target(3, 5)?;
    let reps = equidist::compare_mixed(&table, &target, &[(1, 1), (3, 0), (2, 1)], cfg.tolerance_a)?;
    let theory_ok = reps.iter().map(|m| m.theoretical).eq([1u128, 1, 0]);
    Ok(check(
        5,
        theory_ok && reps.iter().all(|m| m.pass),
        json!({ "q": spec.field.q, "target": target.label, "moments": moment_json(&reps) }),
    ))
}

fn check_strings() -> Result<CheckResult> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for t in all_types(8) {
        let rs = RootSystem::build(t);
        let short = rs.short_roots().count() as i64;
        let gamma_weight = rs.to_weight(&rs.roots[rs.gamma]);
        let dim = weyl_dimension(&rs, &gamma_weight);
        let zero = i64::try_from(dim - BigInt::from(short)).expect("small dimension");
        let mut v = WeightMultiset::quasi_minuscule(&rs);
        v.weights.insert(vec![0; rs.rank()], zero as u64);
        v.dim = v.weights.values().sum();
        let strings = principal_strings(&v)?;
        let h = rs.h as i64;
        let quantities = [zero, strings.len() as i64, rs.r_s as i64, short / h];
        let sum_l: i64 = strings.iter().map(|&l| l as i64).sum();
        let ok = quantities.iter().all(|&x| x == quantities[0])
            && short % h == 0
            && 2 * sum_l == h * rs.r_s as i64
            && rs.roots.len() == rs.rank() * rs.h;
        if !ok {
            failures.push(t.to_string());
        }
        rows.push(json!({
            "type": t.to_string(),
            "zero_weight_dim": zero,
            "strings": strings,
            "r_s": rs.r_s,
            "short_over_h": short / h,
            "h": h,
        }));
    }
    Ok(check(6, failures.is_empty(), json!({ "types": rows, "failures": failures })))
}

fn check_censuses() -> Result<CheckResult> {
    let mut failures = Vec::new();
    let mut qm = Vec::new();
    for t in all_types(8) {
        let rs = RootSystem::build(t);
        let r = qm_census(&rs)?;
        if !r.matches_theorem || r.predicted_minus_chi != rs.r_l as i64 {
            failures.push(format!("qm {t}"));
        }
        qm.push(json!({ "type": t.to_string(), "minus_chi": r.predicted_minus_chi, "r_l": rs.r_l }));
    }
    let mut adjoint = Vec::new();
    let mut types: Vec<CartanType> = Vec::new();
    for r in 2..=8 {
        types.push(CartanType::new(Family::B, r)?);
    }
    for r in 2..=8 {
        types.push(CartanType::new(Family::C, r)?);
    }
    types.push(CartanType::new(Family::F, 4)?);
    for t in types {
        let rs = RootSystem::build(t);
        let r = adjoint_census(&rs)?;
        if !r.matches_theorem || r.predicted_minus_chi != rs.rank() as i64 {
            failures.push(format!("adjoint {t}"));
        }
        adjoint.push(json!({ "type": t.to_string(), "minus_chi": r.predicted_minus_chi, "counts": r.case_counts }));
    }
    let g2 = g2_census()?;
    let c = &g2.case_counts;
    let g2_ok = g2.matches_theorem
        && c["step1_short_roots_without_simple"] == 3
        && c["step2_long_roots_without_simple"] == 1
        && c["step1_chi_G_mod_P_gamma"] == 6
        && c["fiber_chi_P1"] == 2
        && c["fiber_chi_cone"] == 3
        && g2.predicted_minus_chi == 2;
    if !g2_ok {
        failures.push("adjoint G2".into());
    }
    Ok(check(
        7,
        failures.is_empty(),
        json!({ "qm": qm, "adjoint": adjoint, "g2": g2, "failures": failures }),
    ))
}

fn check_wild() -> Result<CheckResult> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for t in all_types(8) {
        let rs = RootSystem::build(t);
        for p in good_primes(&rs, 3) {
            let outcome = wildmono::report(&rs, p);
            let ok = match &outcome {
                Ok(r) => {
                    let d = poly::mult_order(p % rs.h as u64, rs.h as u64) as usize;
                    r.d == d
                        && r.t_zeta_basis.len() == d
                        && r.cox_stable
                        && r.roots_nontrivial
                        && r.swan_equals_rank
                        && r.swan_all_factors_agree
                        && r.invariants_dim_wild == rs.rank()
                        && r.cox_tame_no_invariants
                }
                Err(_) => false,
            };
            if !ok {
                failures.push(format!("{t} p={p}"));
            }
            rows.push(match outcome {
                Ok(r) => json!({ "type": t.to_string(), "p": p, "d": r.d, "swan": r.swan }),
                Err(e) => json!({ "type": t.to_string(), "p": p, "error": e.to_string() }),
            });
        }
    }
    Ok(check(8, failures.is_empty(), json!({ "cases": rows, "failures": failures })))
}

fn check_pgl2() -> Result<CheckResult> {
    let a2 = pgl2_swan_bound(&RootSystem::from_label("A2")?, 3)?;
    let mut failures = Vec::new();
    if !(a2.bound == 3 && a2.r_s == 2 && a2.excluded) {
        failures.push("A2 p=3".to_string());
    }
    let mut cases = 0;
    for t in all_types(8) {
        let rs = RootSystem::build(t);
        if rs.rank() < 2 {
            continue;
        }
        for p in [5, 7] {
            cases += 1;
            if !pgl2_swan_bound(&rs, p)?.excluded {
                failures.push(format!("{t} p={p}"));
            }
        }
    }
    Ok(check(9, failures.is_empty(), json!({ "a2_p3": a2, "cases": cases, "failures": failures })))
}

/// Runs every check in order. Checks that error out are reported as failures.
pub fn run_all(cfg: &RunConfig) -> VerifyOutcome {
    let mut log = WeilLog::default();
    let mut results: Vec<Option<CheckResult>> = vec![None; 9];
    let mut timings = Vec::new();
    // the Weil check consumes tables from the other sum checks, so it runs last
    for id in [1, 3, 4, 5, 6, 7, 8, 9, 2] {
        let start = Instant::now();
        let r = match id {
            1 => check_oracles(cfg, &mut log),
            2 => check_weil(cfg, &mut log),
            3 => check_sato_tate(cfg, &mut log),
            4 => check_g2(cfg, &mut log),
            5 => check_su3(cfg, &mut log),
            6 => check_strings(),
            7 => check_censuses(),
            8 => check_wild(),
            _ => check_pgl2(),
        };
        timings.push((id, start.elapsed()));
        results[id - 1] = Some(r.unwrap_or_else(|e| check(id, false, json!({ "error": e.to_string() }))));
    }
    timings.sort();
    let checks: Vec<CheckResult> = results.into_iter().flatten().collect();
    let all_pass = checks.iter().all(|c| c.pass);
    VerifyOutcome {
        report: VerifyReport {
            seed: cfg.seed,
            tolerance_a: cfg.tolerance_a,
            tolerance_b: cfg.tolerance_b,
            checks,
            all_pass,
        },
        timings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_list() {
        let q: Vec<u64> = prime_powers_up_to(16).iter().map(|&(p, k)| p.pow(k)).collect();
        assert_eq!(q, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
        assert_eq!(prime_powers_up_to(64).len(), 27);
    }

    #[test]
    fn random_specs_are_seeded() {
        let cfg = RunConfig::default();
        let a = random_spec(&cfg, 7, 1, 3, 4).unwrap();
        let b = random_spec(&cfg, 7, 1, 3, 4).unwrap();
        assert_eq!(describe(&a), describe(&b));
        assert!(a.coeffs.iter().all(|c| !c.is_zero()));
    }

    #[test]
    fn exact_checks_pass() {
        for c in [check_strings(), check_censuses(), check_wild(), check_pgl2()] {
            let c = c.unwrap();
            assert!(c.pass, "{}: {}", c.name, c.details);
        }
    }
}
