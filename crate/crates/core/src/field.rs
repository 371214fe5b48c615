//! Finite fields F_{p^k} in discrete-log representation.
//!
//! Every nonzero element is stored as its discrete log with respect to a
//! fixed generator `g` (the class of `X` in `F_p[X]/(modulus)`). Products are
//! sums of logs; sums go through the Zech table `Z` with `g^Z(j) = 1 + g^j`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{KlError, Result};
use crate::poly;

/// Largest field size for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

/// An element of F_q: `log = -1` encodes zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement {
    pub log: i32,
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { log: -1 };
    pub const ONE: FieldElement = FieldElement { log: 0 };

    pub fn from_log(log: usize) -> Self {
        FieldElement { log: log as i32 }
    }

    pub fn is_zero(self) -> bool {
        self.log < 0
    }
}

#[derive(Debug)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    /// Monic modulus, low degree first, length `k + 1`.
    pub modulus: Vec<u64>,
    /// Always 1: the generator is `X` itself.
    pub generator_index: u32,
    /// log -> element encoded as `sum c_i p^i`.
    exp: Vec<u32>,
    /// encoded element -> log, `-1` for zero.
    logs: Vec<i32>,
    /// Zech logarithms, `-1` where `1 + g^j = 0`.
    zech: Vec<i32>,
    /// log -> absolute trace in `0..p`.
    trace_by_log: Vec<u32>,
}

fn check_params(p: u64, k: u32) -> Result<u64> {
    if !poly::is_prime(p) {
        return Err(KlError::NotPrime(p));
    }
    if k == 0 {
        return Err(KlError::ZeroDegree);
    }
    let mut q: u64 = 1;
    for _ in 0..k {
        q = q.saturating_mul(p);
        if q > MAX_FIELD_SIZE {
            return Err(KlError::TableTooLarge { p, k });
        }
    }
    Ok(q)
}

/// Whether the class of `X` generates `(F_p[X]/f)^×`, given `f` irreducible.
fn x_is_primitive(f: &[u64], p: u64, q: u64) -> bool {
    let x = poly::monomial(1);
    poly::prime_factors(q - 1).into_iter().all(|r| {
        let y = poly::powmod(&x, ((q - 1) / r) as u128, f, p);
        y != vec![1]
    })
}

/// Deterministic modulus choice.
///
/// For `k = 1` the modulus is `X - g` with `g` the smallest primitive root.
/// For `k >= 2` it is the smallest monic irreducible (coefficients compared
/// from the constant term upward) whose root generates the multiplicative group.
fn choose_modulus(p: u64, k: u32, q: u64) -> Vec<u64> {
    let k = k as usize;
    if k == 1 {
        let g = (1..p)
            .find(|&g| {
                poly::prime_factors(p - 1)
                    .into_iter()
                    .all(|r| p == 2 || poly::pow_mod(g, (p - 1) / r, p) != 1)
            })
            .expect("prime field has a primitive root");
        return vec![(p - g) % p, 1];
    }
    // index enumerates (c_0, ..., c_{k-1}) with c_0 most significant
    let total = q;
    for idx in 0..total {
        let mut coeffs = vec![0u64; k + 1];
        let mut rest = idx;
        for i in (0..k).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[k] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        if poly::is_irreducible(&coeffs, p) && x_is_primitive(&coeffs, p, q) {
            return coeffs;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

impl FieldSpec {
    /// Build F_{p^k} from scratch.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let q = check_params(p, k)?;
        let modulus = choose_modulus(p, k, q);
        Ok(Self::from_modulus(p, k, q, modulus, None))
    }

    /// Build F_{p^k}, reading and writing the table cache in `dir`.
    pub fn cached(p: u64, k: u32, dir: &Path) -> Result<Self> {
        let q = check_params(p, k)?;
        let path = cache_path(dir, p, k);
        if let Ok(bytes) = fs::read(&path) {
            if let Some((modulus, zech)) = decode_cache(&bytes, p, k, q) {
                return Ok(Self::from_modulus(p, k, q, modulus, Some(zech)));
            }
        }
        let field = Self::new(p, k)?;
        field.write_cache(dir)?;
        Ok(field)
    }

    /// Cache directory from `KL_CACHE_DIR`, default `.kl-cache`.
    pub fn default_cache_dir() -> PathBuf {
        std::env::var_os("KL_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".kl-cache"))
    }

    fn from_modulus(p: u64, k: u32, q: u64, modulus: Vec<u64>, zech: Option<Vec<i32>>) -> Self {
        let m = (q - 1) as usize;
        let kk = k as usize;
        let mut exp = vec![0u32; m];
        let mut logs = vec![-1i32; q as usize];
        let mut cur = vec![0u64; kk];
        cur[0] = 1;
        for (j, slot) in exp.iter_mut().enumerate() {
            let idx = encode(&cur, p);
            *slot = idx;
            logs[idx as usize] = j as i32;
            // multiply by X modulo the monic modulus
            let top = cur[kk - 1];
            for i in (1..kk).rev() {
                cur[i] = (cur[i - 1] + p - top * modulus[i] % p) % p;
            }
            cur[0] = (p - top * modulus[0] % p) % p;
        }
        let zech = zech.unwrap_or_else(|| {
            (0..m)
                .map(|j| {
                    let idx = exp[j] as u64;
                    let c0 = idx % p;
                    let succ = idx - c0 + (c0 + 1) % p;
                    logs[succ as usize]
                })
                .collect()
        });
        // trace of the basis monomials X^i, then extend linearly
        let basis_trace: Vec<u64> = (0..kk)
            .map(|i| {
                let mut acc = 0u64;
                let mut e = i as u64 % m as u64;
                for _ in 0..kk {
                    acc = (acc + exp[e as usize] as u64 % p) % p;
                    e = e * p % m as u64;
                }
                acc
            })
            .collect();
        let trace_by_log = exp
            .iter()
            .map(|&idx| {
                let mut rest = idx as u64;
                let mut t = 0u64;
                for bt in &basis_trace {
                    t = (t + (rest % p) * bt) % p;
                    rest /= p;
                }
                t as u32
            })
            .collect();
        FieldSpec {
            p,
            k,
            q,
            modulus,
            generator_index: 1,
            exp,
            logs,
            zech,
            trace_by_log,
        }
    }

    pub fn write_cache(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| KlError::Cache(e.to_string()))?;
        let mut buf = Vec::with_capacity(4 * (self.modulus.len() + self.zech.len()));
        for &c in &self.modulus {
            buf.extend_from_slice(&(c as u32).to_le_bytes());
        }
        for &z in &self.zech {
            buf.extend_from_slice(&z.to_le_bytes());
        }
        let path = cache_path(dir, self.p, self.k);
        let tmp = path.with_extension("tbl.tmp");
        let mut file = fs::File::create(&tmp).map_err(|e| KlError::Cache(e.to_string()))?;
        file.write_all(&buf).map_err(|e| KlError::Cache(e.to_string()))?;
        fs::rename(&tmp, &path).map_err(|e| KlError::Cache(e.to_string()))
    }

    /// Order of the multiplicative group.
    pub fn order(&self) -> usize {
        (self.q - 1) as usize
    }

    pub fn zech_table(&self) -> &[i32] {
        &self.zech
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement::from_log(1 % self.order())
    }

    /// Element from its integer encoding `sum c_i p^i` (for `k = 1`, the residue).
    pub fn from_int(&self, n: u64) -> Result<FieldElement> {
        if n >= self.q {
            return Err(KlError::InvalidSpec(format!("element code {n} out of range for q = {}", self.q)));
        }
        Ok(FieldElement { log: self.logs[n as usize] })
    }

    pub fn to_int(&self, x: FieldElement) -> u64 {
        if x.is_zero() {
            0
        } else {
            self.exp[x.log as usize] as u64
        }
    }

    /// Coefficient vector of `x` in the polynomial basis, length `k`.
    pub fn coefficients(&self, x: FieldElement) -> Vec<u64> {
        let mut rest = self.to_int(x);
        (0..self.k)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    /// Iterator over all nonzero elements in discrete-log order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(FieldElement::from_log)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        std::iter::once(FieldElement::ZERO).chain(self.units())
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let m = self.order() as i64;
        FieldElement { log: ((x.log as i64 + y.log as i64) % m) as i32 }
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        let m = self.order() as i64;
        // x + y = x (1 + y/x)
        let d = (y.log as i64 - x.log as i64).rem_euclid(m) as usize;
        let z = self.zech[d];
        if z < 0 {
            FieldElement::ZERO
        } else {
            FieldElement { log: ((x.log as i64 + z as i64) % m) as i32 }
        }
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if x.is_zero() || self.p == 2 {
            return x;
        }
        let m = self.order() as i64;
        FieldElement { log: ((x.log as i64 + m / 2) % m) as i32 }
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(KlError::DivisionByZero);
        }
        let m = self.order() as i64;
        Ok(FieldElement { log: ((m - x.log as i64) % m) as i32 })
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e` for any integer exponent; negative exponents need `x != 0`.
    pub fn pow(&self, x: FieldElement, e: i64) -> Result<FieldElement> {
        if x.is_zero() {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(KlError::DivisionByZero),
            };
        }
        let m = self.order() as i128;
        let l = (x.log as i128 * e as i128).rem_euclid(m);
        Ok(FieldElement { log: l as i32 })
    }

    /// Absolute trace `sum_i x^(p^i)` as an integer in `0..p`.
    pub fn trace(&self, x: FieldElement) -> u64 {
        if x.is_zero() {
            0
        } else {
            self.trace_by_log[x.log as usize] as u64
        }
    }

    pub(crate) fn trace_table(&self) -> &[u32] {
        &self.trace_by_log
    }
}

fn encode(coeffs: &[u64], p: u64) -> u32 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
}

pub fn cache_path(dir: &Path, p: u64, k: u32) -> PathBuf {
    dir.join(format!("field_p{p}_k{k}.tbl"))
}

fn decode_cache(bytes: &[u8], p: u64, k: u32, q: u64) -> Option<(Vec<u64>, Vec<i32>)> {
    let words: Vec<u32> = bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    let kk = k as usize;
    if bytes.len() % 4 != 0 || words.len() != kk + 1 + (q - 1) as usize {
        return None;
    }
    let modulus: Vec<u64> = words[..=kk].iter().map(|&w| w as u64).collect();
    if modulus[kk] != 1 || modulus.iter().any(|&c| c >= p) {
        return None;
    }
    let zech = words[kk + 1..].iter().map(|&w| w as i32).collect();
    Some((modulus, zech))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f7_generator_is_smallest_primitive_root() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f.to_int(f.generator()), 3);
        assert_eq!(f.generator_index, 1);
    }

    #[test]
    fn f2_and_f4() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.q, 2);
        assert_eq!(f2.to_int(f2.generator()), 1);
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.modulus, vec![1, 1, 1]);
        let w = f4.generator();
        let w2 = f4.mul(w, w);
        assert_eq!(f4.add(w, w2), FieldElement::ONE);
        assert_eq!(f4.trace(w), 1);
    }

    #[test]
    fn inverse_in_f7() {
        let f = FieldSpec::new(7, 1).unwrap();
        let three = f.from_int(3).unwrap();
        assert_eq!(f.to_int(f.inv(three).unwrap()), 5);
        assert_eq!(f.inv(FieldElement::ZERO), Err(KlError::DivisionByZero));
    }

    #[test]
    fn rejects_bad_params() {
        assert_eq!(FieldSpec::new(9, 1).unwrap_err(), KlError::NotPrime(9));
        assert!(matches!(FieldSpec::new(2, 25), Err(KlError::TableTooLarge { .. })));
        assert!(matches!(FieldSpec::new(5, 0), Err(KlError::ZeroDegree)));
    }

    #[test]
    fn trace_of_one_is_k() {
        for (p, k) in [(3, 4), (5, 2), (2, 5), (7, 3)] {
            let f = FieldSpec::new(p, k).unwrap();
            assert_eq!(f.trace(FieldElement::ONE), k as u64 % p);
            assert_eq!(f.trace(FieldElement::ZERO), 0);
        }
    }

    #[test]
    fn trace_is_additive_and_frobenius_invariant() {
        for (p, k) in [(2, 6), (3, 3), (5, 2), (7, 2)] {
            let f = FieldSpec::new(p, k).unwrap();
            for x in f.elements() {
                let xp = f.pow(x, p as i64).unwrap();
                assert_eq!(f.trace(xp), f.trace(x));
                for y in f.elements().step_by(3) {
                    assert_eq!(f.trace(f.add(x, y)), (f.trace(x) + f.trace(y)) % p);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        let mut q_seen = Vec::new();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            let mut k = 1;
            while p.pow(k) <= 64 {
                let f = FieldSpec::new(p, k).unwrap();
                q_seen.push(f.q);
                let els: Vec<_> = f.elements().collect();
                for &x in &els {
                    assert!(f.add(x, f.neg(x)).is_zero());
                    for &y in &els {
                        assert_eq!(f.add(x, y), f.add(y, x));
                        for &z in &els {
                            assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                            assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                            assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                        }
                    }
                }
                k += 1;
            }
        }
        assert!(q_seen.contains(&64) && q_seen.contains(&49));
    }

    #[test]
    fn modulus_is_primitive_irreducible() {
        for (p, k) in [(2, 8), (3, 5), (5, 4), (2, 13)] {
            let f = FieldSpec::new(p, k).unwrap();
            assert!(poly::is_irreducible(&f.modulus, p));
            // exp table is a bijection onto the nonzero elements
            let mut seen = vec![false; f.q as usize];
            for x in f.units() {
                let i = f.to_int(x) as usize;
                assert!(!seen[i]);
                seen[i] = true;
            }
        }
    }

    #[test]
    fn cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let a = FieldSpec::cached(3, 4, dir.path()).unwrap();
        assert!(cache_path(dir.path(), 3, 4).exists());
        let b = FieldSpec::cached(3, 4, dir.path()).unwrap();
        assert_eq!(a.modulus, b.modulus);
        assert_eq!(a.zech_table(), b.zech_table());
        let bytes = fs::read(cache_path(dir.path(), 3, 4)).unwrap();
        assert_eq!(bytes.len(), 4 * (5 + 80));
    }
}
