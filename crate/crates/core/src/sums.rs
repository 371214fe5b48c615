//! Kloosterman sums
//!
//! `Kl(a) = (-1)^(n-1) * sum_{x_1 ... x_n = a} prod chi_i(x_i) * psi(sum c_i x_i)`
//!
//! over `x_i` in F_q^×. Tables over all `a` are built either by brute force
//! over `(F_q^×)^n` or as an n-fold cyclic convolution over `Z/(q-1)`
//! (discrete logs) evaluated with FFTs.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::characters::{roots_of_unity, AdditiveCharacter, MultiplicativeCharacter};
use crate::error::{KlError, Result};
use crate::field::{FieldElement, FieldSpec};

/// Default cap on brute-force multiply-adds.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Fixed number of partial-sum chunks; independent of the thread count.
const REDUCTION_CHUNKS: usize = 64;

#[derive(Clone, Debug)]
pub struct KloostermanSpec {
    pub n: usize,
    pub field: Arc<FieldSpec>,
    pub coeffs: Vec<FieldElement>,
    pub chars: Vec<MultiplicativeCharacter>,
}

impl KloostermanSpec {
    pub fn new(
        field: Arc<FieldSpec>,
        coeffs: Vec<FieldElement>,
        chars: Vec<MultiplicativeCharacter>,
    ) -> Result<Self> {
        let n = coeffs.len();
        if n == 0 {
            return Err(KlError::InvalidSpec("n must be at least 1".into()));
        }
        if chars.len() != n {
            return Err(KlError::InvalidSpec(format!(
                "{} coefficients but {} characters",
                n,
                chars.len()
            )));
        }
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(KlError::InvalidSpec("linear form coefficients must be nonzero".into()));
        }
        Ok(KloostermanSpec { n, field, coeffs, chars })
    }

    /// Classical `Kl_n`: all coefficients 1, trivial characters.
    pub fn classical(field: Arc<FieldSpec>, n: usize) -> Result<Self> {
        let coeffs = vec![FieldElement::ONE; n];
        let chars = (0..n).map(|_| MultiplicativeCharacter::trivial(field.clone())).collect();
        Self::new(field, coeffs, chars)
    }

    /// Spec from integer-encoded coefficients and character exponents.
    pub fn from_ints(field: Arc<FieldSpec>, coeffs: &[u64], chi: &[u64]) -> Result<Self> {
        let coeffs = coeffs.iter().map(|&c| field.from_int(c)).collect::<Result<Vec<_>>>()?;
        let chars = chi
            .iter()
            .map(|&m| MultiplicativeCharacter::new(field.clone(), m))
            .collect();
        Self::new(field, coeffs, chars)
    }

    pub fn trivial_chars(&self) -> bool {
        self.chars.iter().all(|c| c.is_trivial())
    }

    fn sign(&self) -> f64 {
        if self.n % 2 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    /// `q^((n-1)/2)`
    pub fn weight_scale(&self) -> f64 {
        (self.field.q as f64).powf((self.n as f64 - 1.0) / 2.0)
    }

    /// Factor functions `f_i(g^j) = chi_i(g^j) psi(c_i g^j)`, indexed by `j`.
    fn factor_tables(&self) -> Vec<Vec<Complex64>> {
        let psi = AdditiveCharacter::new(self.field.clone());
        let roots = roots_of_unity(self.field.order());
        self.coeffs
            .iter()
            .zip(&self.chars)
            .map(|(&c, chi)| {
                let add = psi.table_scaled(c);
                if chi.is_trivial() {
                    add
                } else {
                    chi.table(&roots).iter().zip(add).map(|(a, b)| a * b).collect()
                }
            })
            .collect()
    }
}

/// Single value `Kl(a)`, summing over `x_1..x_{n-1}` and solving for `x_n`.
pub fn kloosterman(spec: &KloostermanSpec, a: FieldElement) -> Result<Complex64> {
    if a.is_zero() {
        return Err(KlError::ZeroArgument);
    }
    let m = spec.field.order();
    let f = spec.factor_tables();
    let n = spec.n;
    let mut total = Complex64::new(0.0, 0.0);
    // odometer over logs of x_1..x_{n-1}
    let mut idx = vec![0usize; n - 1];
    loop {
        let mut term = Complex64::new(1.0, 0.0);
        let mut s = 0usize;
        for (i, &j) in idx.iter().enumerate() {
            term *= f[i][j];
            s += j;
        }
        let last = (a.log as usize + m * n - s % m) % m;
        total += term * f[n - 1][last];
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(total * spec.sign());
            }
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct SumTable {
    pub spec: KloostermanSpec,
    /// Unnormalized `Kl(g^j)` indexed by the discrete log `j`.
    pub raw: Vec<Complex64>,
    pub normalized: bool,
}

impl SumTable {
    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn with_normalized(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }

    /// Value at log `j`, divided by `q^((n-1)/2)` when the table is normalized.
    pub fn value(&self, j: usize) -> Complex64 {
        if self.normalized {
            self.raw[j] / self.spec.weight_scale()
        } else {
            self.raw[j]
        }
    }

    pub fn values(&self) -> Vec<Complex64> {
        (0..self.len()).map(|j| self.value(j)).collect()
    }

    /// `Kl(x) / q^((n-1)/2)` regardless of the flag.
    pub fn normalized_values(&self) -> Vec<Complex64> {
        let s = self.spec.weight_scale();
        self.raw.iter().map(|v| v / s).collect()
    }

    pub fn to_json(&self) -> TableJson {
        let field = &self.spec.field;
        TableJson {
            p: field.p,
            k: field.k,
            n: self.spec.n,
            coeffs: self.spec.coeffs.iter().map(|&c| field.to_int(c)).collect(),
            chi: self.spec.chars.iter().map(|c| c.exponent()).collect(),
            normalized: self.normalized,
            values: (0..self.len())
                .map(|j| {
                    let v = self.value(j);
                    TableEntry { a: j, re: v.re, im: v.im }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TableEntry {
    pub a: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TableJson {
    pub p: u64,
    pub k: u32,
    pub n: usize,
    pub coeffs: Vec<u64>,
    pub chi: Vec<u64>,
    pub normalized: bool,
    pub values: Vec<TableEntry>,
}

fn naive_cost(spec: &KloostermanSpec) -> u128 {
    (spec.field.order() as u128).saturating_pow(spec.n as u32)
}

/// Brute force over `(F_q^×)^n`, bucketing each term by the log of the product.
///
/// The `x_1` axis is split into a fixed number of chunks; chunk partial tables
/// are added in chunk order, so the result does not depend on scheduling.
pub fn table_naive(spec: &KloostermanSpec, budget: u128) -> Result<SumTable> {
    let needed = naive_cost(spec);
    if needed > budget {
        return Err(KlError::BudgetExceeded { needed, budget });
    }
    let m = spec.field.order();
    let f = spec.factor_tables();
    let n = spec.n;
    let chunk = m.div_ceil(REDUCTION_CHUNKS);
    let starts: Vec<usize> = (0..m).step_by(chunk).collect();
    let partials: Vec<Vec<Complex64>> = starts
        .par_iter()
        .map(|&start| {
            let mut acc = vec![Complex64::new(0.0, 0.0); m];
            for x1 in start..(start + chunk).min(m) {
                if n == 1 {
                    acc[x1] += f[0][x1];
                } else {
                    accumulate(&f, 1, f[0][x1], x1, m, &mut acc);
                }
            }
            acc
        })
        .collect();
    let mut raw = vec![Complex64::new(0.0, 0.0); m];
    for part in &partials {
        for (r, v) in raw.iter_mut().zip(part) {
            *r += v;
        }
    }
    let sign = spec.sign();
    raw.iter_mut().for_each(|v| *v *= sign);
    Ok(SumTable { spec: spec.clone(), raw, normalized: false })
}

fn accumulate(f: &[Vec<Complex64>], depth: usize, prefix: Complex64, s: usize, m: usize, acc: &mut [Complex64]) {
    let last = depth == f.len() - 1;
    let fd = &f[depth];
    if last {
        // acc[(s + j) mod m] += prefix * f[j], split to avoid the modulus
        let (head, tail) = fd.split_at(m - s);
        for (a, v) in acc[s..].iter_mut().zip(head) {
            *a += prefix * v;
        }
        for (a, v) in acc[..s].iter_mut().zip(tail) {
            *a += prefix * v;
        }
    } else {
        for (j, v) in fd.iter().enumerate() {
            let t = (s + j) % m;
            accumulate(f, depth + 1, prefix * v, t, m, acc);
        }
    }
}

/// Cyclic convolution of the factor functions via FFT over `Z/(q-1)`.
pub fn table_convolution(spec: &KloostermanSpec) -> SumTable {
    let m = spec.field.order();
    let f = spec.factor_tables();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);
    let spectra: Vec<Vec<Complex64>> = f
        .into_par_iter()
        .map(|mut buf| {
            fwd.process(&mut buf);
            buf
        })
        .collect();
    let mut prod = spectra[0].clone();
    for s in &spectra[1..] {
        for (a, b) in prod.iter_mut().zip(s) {
            *a *= b;
        }
    }
    inv.process(&mut prod);
    let scale = spec.sign() / m as f64;
    prod.iter_mut().for_each(|v| *v *= scale);
    SumTable { spec: spec.clone(), raw: prod, normalized: false }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WeilReport {
    pub max_ratio: f64,
    pub pass: bool,
}

/// `max |Kl(a)| / q^((n-1)/2)` against the bound `n`.
pub fn weil_report(table: &SumTable) -> WeilReport {
    let s = table.spec.weight_scale();
    let max_ratio = table.raw.iter().map(|v| v.norm() / s).fold(0.0, f64::max);
    WeilReport { max_ratio, pass: max_ratio <= table.spec.n as f64 + 1e-6 }
}

/// Angle `theta(a)` in `[0, pi]` with `2 cos(theta) = Kl_2(a) / sqrt(q)`.
pub fn angle(table: &SumTable, j: usize) -> Result<f64> {
    if table.spec.n != 2 || !table.spec.trivial_chars() {
        return Err(KlError::InvalidSpec("angles need n = 2 and trivial characters".into()));
    }
    let v = table.raw[j] / table.spec.weight_scale();
    if v.im.abs() > 1e-8 {
        return Err(KlError::NotReal { log: j, imag: v.im });
    }
    Ok(angle_of(v.re))
}

/// `arccos(t / 2)` with `t` clamped into `[-2, 2]`.
pub fn angle_of(t: f64) -> f64 {
    (t / 2.0).clamp(-1.0, 1.0).acos()
}

/// `conj(Kl(a)) = Kl((-1)^n a)` for every `a`, trivial characters only.
pub fn conj_symmetry_check(table: &SumTable) -> Result<bool> {
    if !table.spec.trivial_chars() {
        return Err(KlError::InvalidSpec("conjugation symmetry needs trivial characters".into()));
    }
    let field = &table.spec.field;
    let tol = 1e-9 * table.spec.weight_scale();
    let sign_unit = if table.spec.n % 2 == 0 {
        FieldElement::ONE
    } else {
        field.neg(FieldElement::ONE)
    };
    Ok(field.units().all(|a| {
        let b = field.mul(sign_unit, a);
        (table.raw[a.log as usize].conj() - table.raw[b.log as usize]).norm() <= tol
    }))
}

/// `Kl_{c,chi}(a) = (prod chi_i(c_i))^(-1) Kl_{1,chi}(a prod c_i)`.
pub fn coeff_covariance_check(spec: &KloostermanSpec, a: FieldElement) -> Result<bool> {
    let field = &spec.field;
    let unit = KloostermanSpec::new(field.clone(), vec![FieldElement::ONE; spec.n], spec.chars.clone())?;
    let lhs = kloosterman(spec, a)?;
    let c_prod = spec.coeffs.iter().fold(FieldElement::ONE, |acc, &c| field.mul(acc, c));
    let chi_prod: Complex64 = spec
        .coeffs
        .iter()
        .zip(&spec.chars)
        .map(|(&c, chi)| chi.eval(c))
        .product();
    let rhs = kloosterman(&unit, field.mul(a, c_prod))? / chi_prod;
    Ok((lhs - rhs).norm() <= 1e-9 * spec.weight_scale().max(1.0))
}

/// Direct `exp(2 pi i t)` helper shared by test oracles.
pub fn e(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * t)
}
