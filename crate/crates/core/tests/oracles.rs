//! Independent oracles: sums in the polynomial basis without log tables, and
//! Haar moments by numerical Weyl integration over a maximal torus.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use kl_core::field::FieldSpec;
use kl_core::poly;
use kl_core::repweights::{invariant_moment, mixed_moment, WeightMultiset};
use kl_core::rootsys::RootSystem;
use kl_core::sums::{kloosterman, KloostermanSpec};

fn encode(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn decode(mut n: u64, p: u64, k: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (0..k)
        .map(|_| {
            let c = n % p;
            n /= p;
            c
        })
        .collect();
    poly::trim(&mut v);
    v
}

/// Classical `Kl_n(a)` by polynomial arithmetic modulo the field's modulus.
fn kl_polynomial_oracle(f: &FieldSpec, n: usize, a_code: u64) -> Complex64 {
    let (p, k, q) = (f.p, f.k as usize, f.q);
    let m = &f.modulus;
    let trace = |x: &[u64]| -> u64 {
        let mut acc: Vec<u64> = Vec::new();
        let mut y = x.to_vec();
        for _ in 0..k {
            acc = poly::add(&acc, &y, p);
            y = poly::powmod(&y, p as u128, m, p);
        }
        acc.first().copied().unwrap_or(0)
    };
    let a = decode(a_code, p, k);
    let units: Vec<Vec<u64>> = (1..q).map(|c| decode(c, p, k)).collect();
    let mut total = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; n - 1];
    loop {
        let mut prod = vec![1u64];
        let mut sum: Vec<u64> = Vec::new();
        for &i in &idx {
            prod = poly::mulmod(&prod, &units[i], m, p);
            sum = poly::add(&sum, &units[i], p);
        }
        let last = poly::mulmod(&a, &poly::powmod(&prod, (q - 2) as u128, m, p), m, p);
        sum = poly::add(&sum, &last, p);
        total += Complex64::from_polar(1.0, 2.0 * PI * trace(&sum) as f64 / p as f64);
        let mut pos = 0;
        while pos < idx.len() {
            idx[pos] += 1;
            if idx[pos] < units.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == idx.len() {
            break;
        }
    }
    if n % 2 == 0 {
        -total
    } else {
        total
    }
}

#[test]
fn sums_match_polynomial_basis_oracle() {
    for (p, k, n) in [(2u64, 2u32, 2usize), (2, 3, 3), (3, 2, 2), (5, 2, 3), (7, 1, 3), (2, 4, 2), (3, 3, 2)] {
        let f = Arc::new(FieldSpec::new(p, k).unwrap());
        let spec = KloostermanSpec::classical(f.clone(), n).unwrap();
        for code in 1..f.q {
            let lhs = kloosterman(&spec, f.from_int(code).unwrap()).unwrap();
            let rhs = kl_polynomial_oracle(&f, n, code);
            assert!((lhs - rhs).norm() < 1e-9, "q={} n={n} a={code}: {lhs} vs {rhs}", f.q);
        }
    }
}

#[test]
fn encoding_roundtrip() {
    let f = FieldSpec::new(3, 3).unwrap();
    for x in f.elements() {
        let c = f.coefficients(x);
        assert_eq!(encode(&c, 3), f.to_int(x));
    }
}

/// `(1/|W|) int_T f |Delta|^2` on an `N^r` grid, exact for trigonometric
/// polynomials of degree below `N` in each coordinate.
fn weyl_integral(rs: &RootSystem, grid: usize, f: impl Fn(&[f64]) -> Complex64) -> Complex64 {
    let r = rs.rank();
    let roots: Vec<Vec<i64>> = rs.roots.iter().map(|c| rs.to_weight(c)).collect();
    let w = rs.cartan_type.weyl_order() as f64;
    let mut x = vec![0usize; r];
    let mut total = Complex64::new(0.0, 0.0);
    let points = (grid as f64).powi(r as i32);
    loop {
        let t: Vec<f64> = x.iter().map(|&i| i as f64 / grid as f64).collect();
        let mut density = 1.0;
        for a in &roots {
            let phase: f64 = a.iter().zip(&t).map(|(&ai, &ti)| ai as f64 * ti).sum();
            density *= (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, 2.0 * PI * phase)).norm();
        }
        total += f(&t) * density;
        let mut pos = 0;
        while pos < r {
            x[pos] += 1;
            if x[pos] < grid {
                break;
            }
            x[pos] = 0;
            pos += 1;
        }
        if pos == r {
            break;
        }
    }
    total / (points * w)
}

fn character(weights: &[(Vec<i64>, u64)], t: &[f64]) -> Complex64 {
    weights
        .iter()
        .map(|(w, m)| {
            let phase: f64 = w.iter().zip(t).map(|(&a, &b)| a as f64 * b).sum();
            Complex64::from_polar(*m as f64, 2.0 * PI * phase)
        })
        .sum()
}

/// Zero weight with multiplicity `r_s` plus the short roots, written out directly.
fn qm_character(rs: &RootSystem) -> Vec<(Vec<i64>, u64)> {
    let mut w: Vec<(Vec<i64>, u64)> = rs.short_roots().map(|i| (rs.to_weight(&rs.roots[i]), 1)).collect();
    w.push((vec![0; rs.rank()], rs.r_s as u64));
    w
}

#[test]
fn g2_v7_moments_by_integration() {
    let rs = RootSystem::from_label("G2").unwrap();
    let chi = qm_character(&rs);
    let v = WeightMultiset::quasi_minuscule(&rs);
    for (k, expected) in [(1usize, 0u128), (2, 1), (3, 1), (4, 4)] {
        let m = weyl_integral(&rs, 48, |t| character(&chi, t).powu(k as u32));
        assert!((m.re - expected as f64).abs() < 1e-8 && m.im.abs() < 1e-8, "k={k}: {m}");
        assert_eq!(invariant_moment(&v, k).unwrap(), expected);
    }
}

#[test]
fn so7_fourth_moment_by_integration() {
    let rs = RootSystem::from_label("B3").unwrap();
    let chi = qm_character(&rs);
    let m = weyl_integral(&rs, 24, |t| character(&chi, t).powu(4));
    assert!((m.re - 3.0).abs() < 1e-8, "{m}");
    assert_eq!(invariant_moment(&WeightMultiset::quasi_minuscule(&rs), 4).unwrap(), 3);
}

#[test]
fn su3_mixed_moments_by_integration() {
    let rs = RootSystem::from_label("A2").unwrap();
    let v = WeightMultiset::standard(&rs);
    let chi: Vec<(Vec<i64>, u64)> = v.weights.iter().map(|(w, &m)| (w.clone(), m)).collect();
    for ((a, b), expected) in [((1, 1), 1u128), ((3, 0), 1), ((2, 1), 0), ((2, 2), 2)] {
        let m = weyl_integral(&rs, 32, |t| {
            let c = character(&chi, t);
            c.powu(a) * c.conj().powu(b)
        });
        assert!((m - Complex64::new(expected as f64, 0.0)).norm() < 1e-8, "({a},{b}): {m}");
        assert_eq!(mixed_moment(&v, a as usize, b as usize).unwrap(), expected);
    }
}

#[test]
fn su2_catalan_by_integration() {
    let rs = RootSystem::from_label("A1").unwrap();
    let chi = vec![(vec![1], 1), (vec![-1], 1)];
    let catalan = [1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0, 0.0, 14.0];
    for (k, &c) in catalan.iter().enumerate() {
        let m = weyl_integral(&rs, 64, |t| character(&chi, t).powu(k as u32));
        assert!((m.re - c).abs() < 1e-9, "k={k}");
    }
}
