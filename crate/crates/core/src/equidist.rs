//! Empirical moments and angle statistics of normalized Kloosterman sums,
//! compared with Haar moments of the geometric monodromy group.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{KlError, Result};
use crate::repweights::{invariant_moment, mixed_moment, WeightMultiset};
use crate::rootsys::{CartanType, Family, RootSystem};
use crate::sums::{angle, SumTable};

pub const DEFAULT_TOLERANCE_A: f64 = 10.0;
pub const DEFAULT_TOLERANCE_B: f64 = 3.0;
pub const DEFAULT_BINS: usize = 40;

const MOMENT_CHUNKS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TargetGroup {
    Sp(usize),
    SL(usize),
    SO(usize),
    G2,
    /// Geometric monodromy of the Kloosterman sheaf attached to a dual type.
    Geom(CartanType),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonodromyTarget {
    pub label: String,
    pub rep: String,
    pub source: String,
    #[serde(skip)]
    pub group: TargetGroup,
}

impl MonodromyTarget {
    pub fn new(group: TargetGroup, source: &str) -> Self {
        let (label, rep) = match group {
            TargetGroup::Sp(n) => (format!("Sp{n}"), "standard".to_string()),
            TargetGroup::SL(n) => (format!("SU{n}"), "standard".to_string()),
            TargetGroup::SO(n) => (format!("SO{n}"), "vector".to_string()),
            TargetGroup::G2 => ("G2".to_string(), "V7".to_string()),
            TargetGroup::Geom(t) => (t.to_string(), "adjoint".to_string()),
        };
        MonodromyTarget { label, rep, source: source.to_string(), group }
    }

    /// Weights of the representation whose trace the sums sample.
    pub fn representation(&self) -> Result<WeightMultiset> {
        let rs = |f: Family, r: usize| -> Result<RootSystem> { Ok(RootSystem::build(CartanType::new(f, r)?)) };
        match self.group {
            TargetGroup::Sp(2) | TargetGroup::SL(2) => Ok(WeightMultiset::standard(&rs(Family::A, 1)?)),
            TargetGroup::SL(1) | TargetGroup::SO(1) => Ok(WeightMultiset::trivial(&rs(Family::A, 1)?)),
            TargetGroup::Sp(n) if n % 2 == 0 => Ok(WeightMultiset::standard(&rs(Family::C, n / 2)?)),
            TargetGroup::SL(n) => Ok(WeightMultiset::standard(&rs(Family::A, n - 1)?)),
            TargetGroup::SO(n) if n % 2 == 1 && n >= 5 => Ok(WeightMultiset::quasi_minuscule(&rs(Family::B, n / 2)?)),
            TargetGroup::G2 => Ok(WeightMultiset::quasi_minuscule(&rs(Family::G, 2)?)),
            TargetGroup::Geom(t) => Ok(WeightMultiset::adjoint(&RootSystem::build(t))),
            _ => Err(KlError::Unlisted(self.label.clone())),
        }
    }

    pub fn is_self_dual(&self) -> bool {
        !matches!(self.group, TargetGroup::SL(n) if n > 2)
    }
}

/// Geometric monodromy of `Kl_n` in characteristic `p`.
pub fn monodromy_target(n: usize, p: u64) -> Result<MonodromyTarget> {
    let group = if n == 0 {
        return Err(KlError::Unlisted(format!("n = 0, p = {p}")));
    } else if n % 2 == 0 {
        TargetGroup::Sp(n)
    } else if p != 2 {
        TargetGroup::SL(n)
    } else if n == 7 {
        TargetGroup::G2
    } else if n != 3 {
        TargetGroup::SO(n)
    } else {
        return Err(KlError::Unlisted(format!("n = {n}, p = {p}")));
    };
    Ok(MonodromyTarget::new(group, "Kl_n"))
}

/// Geometric monodromy of the Kloosterman sheaf of a simple adjoint dual group.
pub fn monodromy_target_dual(t: CartanType) -> Result<MonodromyTarget> {
    use Family::*;
    let r = t.rank;
    let geom = match t.family {
        A if r % 2 == 0 => t,
        A if r == 1 => t,
        A => CartanType::new(C, r.div_ceil(2))?,
        C => t,
        B if r == 2 => CartanType::new(C, 2)?,
        B if r == 3 => CartanType::new(G, 2)?,
        B => t,
        D if r == 4 => CartanType::new(G, 2)?,
        D => CartanType::new(B, r - 1)?,
        E if r == 6 => CartanType::new(F, 4)?,
        E => t,
        F => t,
        G => t,
    };
    Ok(MonodromyTarget::new(TargetGroup::Geom(geom), "Kl_dual"))
}

/// Parses `Sp2`, `SU3`, `SL3`, `SO7`, `G2`.
pub fn parse_target(s: &str) -> Result<MonodromyTarget> {
    let bad = || KlError::Unlisted(s.to_string());
    let num = |prefix: &str| s[prefix.len()..].parse::<usize>().map_err(|_| bad());
    let group = if s.eq_ignore_ascii_case("G2") {
        TargetGroup::G2
    } else if s.starts_with("Sp") {
        TargetGroup::Sp(num("Sp")?)
    } else if s.starts_with("SU") || s.starts_with("SL") {
        TargetGroup::SL(num("SU")?)
    } else if s.starts_with("SO") {
        TargetGroup::SO(num("SO")?)
    } else {
        return Err(bad());
    };
    let t = MonodromyTarget::new(group, "explicit");
    t.representation()?;
    Ok(t)
}

fn chunked_mean(t: &[Complex64], f: impl Fn(Complex64) -> Complex64 + Sync) -> Complex64 {
    let chunk = t.len().div_ceil(MOMENT_CHUNKS).max(1);
    let parts: Vec<Complex64> = t.par_chunks(chunk).map(|c| c.iter().map(|&x| f(x)).sum()).collect();
    parts.into_iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b) / t.len() as f64
}

fn ipow(z: Complex64, k: usize) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, _| acc * z)
}

/// `m_k = mean of t(a)^k` for `k` in `0..=kmax`, `t` the normalized table.
pub fn empirical_moments(table: &SumTable, kmax: usize) -> Vec<Complex64> {
    let t = table.normalized_values();
    (0..=kmax)
        .map(|k| if k == 0 { Complex64::new(1.0, 0.0) } else { chunked_mean(&t, |x| ipow(x, k)) })
        .collect()
}

/// `m_{a,b} = mean of t^a conj(t)^b`.
pub fn empirical_mixed(table: &SumTable, a: usize, b: usize) -> Complex64 {
    if a == 0 && b == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let t = table.normalized_values();
    chunked_mean(&t, |x| ipow(x, a) * ipow(x.conj(), b))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub k: Option<usize>,
    pub mixed: Option<(usize, usize)>,
    pub empirical_re: f64,
    pub empirical_im: f64,
    pub theoretical: u128,
    pub q: u64,
    pub tolerance: f64,
    pub pass: bool,
}

fn tolerance(table: &SumTable, order: usize, a: f64) -> f64 {
    let q = table.spec.field.q as f64;
    let n = table.spec.n as f64;
    a / q.sqrt() + 1e-9 * n.powi(order as i32)
}

fn report(table: &SumTable, k: Option<usize>, mixed: Option<(usize, usize)>, emp: Complex64, theo: u128, a: f64) -> MomentReport {
    let order = k.unwrap_or_else(|| mixed.map_or(0, |(x, y)| x + y));
    let tol = tolerance(table, order, a);
    MomentReport {
        k,
        mixed,
        empirical_re: emp.re,
        empirical_im: emp.im,
        theoretical: theo,
        q: table.spec.field.q,
        tolerance: tol,
        pass: (emp - Complex64::new(theo as f64, 0.0)).norm() <= tol,
    }
}

/// Moments `m_1 .. m_kmax` against the Haar moments of `target`.
pub fn compare(table: &SumTable, target: &MonodromyTarget, kmax: usize, a: f64) -> Result<Vec<MomentReport>> {
    let v = target.representation()?;
    let emp = empirical_moments(table, kmax);
    (1..=kmax)
        .map(|k| Ok(report(table, Some(k), None, emp[k], invariant_moment(&v, k)?, a)))
        .collect()
}

pub fn compare_mixed(
    table: &SumTable,
    target: &MonodromyTarget,
    pairs: &[(usize, usize)],
    a: f64,
) -> Result<Vec<MomentReport>> {
    let v = target.representation()?;
    pairs
        .iter()
        .map(|&(x, y)| {
            let emp = empirical_mixed(table, x, y);
            Ok(report(table, None, Some((x, y)), emp, mixed_moment(&v, x, y)?, a))
        })
        .collect()
}

/// Sato-Tate CDF on `[0, pi]`.
pub fn sato_tate_cdf(theta: f64) -> f64 {
    (2.0 / PI) * (theta / 2.0 - (2.0 * theta).sin() / 4.0)
}

/// Kolmogorov-Smirnov distance between the sample and the Sato-Tate law.
pub fn ks_statistic(angles: &[f64]) -> f64 {
    let mut xs = angles.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = sato_tate_cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

pub fn histogram(angles: &[f64], bins: usize) -> Vec<u64> {
    let mut h = vec![0u64; bins];
    for &x in angles {
        let b = ((x / PI) * bins as f64).floor() as usize;
        h[b.min(bins - 1)] += 1;
    }
    h
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleStats {
    pub q: u64,
    pub count: usize,
    pub bins: usize,
    pub histogram: Vec<u64>,
    pub ks_statistic: f64,
    pub threshold: f64,
    pub pass: bool,
}

pub fn stats_of_angles(angles: &[f64], q: u64, bins: usize, b: f64) -> AngleStats {
    let ks = ks_statistic(angles);
    let threshold = b / (angles.len() as f64).sqrt();
    AngleStats {
        q,
        count: angles.len(),
        bins,
        histogram: histogram(angles, bins),
        ks_statistic: ks,
        threshold,
        pass: ks <= threshold,
    }
}

/// Angles of a `Kl_2` table with histogram and KS verdict against `B / sqrt(q - 1)`.
pub fn angle_statistics(table: &SumTable, bins: usize, b: f64) -> Result<AngleStats> {
    let angles: Vec<f64> = (0..table.len()).map(|j| angle(table, j)).collect::<Result<_>>()?;
    Ok(stats_of_angles(&angles, table.spec.field.q, bins, b))
}
