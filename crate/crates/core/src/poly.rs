//! Dense univariate polynomials over a prime field F_p.
//!
//! Coefficients are stored low degree first and kept trimmed, so the zero
//! polynomial is the empty vector. The prime is passed explicitly to every
//! operation; callers keep `p < 2^32` so products fit in a `u64`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Poly = Vec<u64>;

pub fn trim(f: &mut Poly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn degree(f: &[u64]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn monomial(deg: usize) -> Poly {
    let mut f = vec![0; deg + 1];
    f[deg] = 1;
    f
}

pub fn add(f: &[u64], g: &[u64], p: u64) -> Poly {
    let n = f.len().max(g.len());
    let mut out: Poly = (0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn sub(f: &[u64], g: &[u64], p: u64) -> Poly {
    let n = f.len().max(g.len());
    let mut out: Poly = (0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + p - g.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn scale(f: &[u64], c: u64, p: u64) -> Poly {
    let mut out: Poly = f.iter().map(|&a| a * (c % p) % p).collect();
    trim(&mut out);
    out
}

pub fn mul(f: &[u64], g: &[u64], p: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(f: &[u64], g: &[u64], p: u64) -> (Poly, Poly) {
    let dg = degree(g).expect("polynomial division by zero");
    let mut r: Poly = f.to_vec();
    trim(&mut r);
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod(g[dg], p);
    let mut q = vec![0u64; r.len() - dg];
    while r.len() > dg {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        let shift = dr - dg;
        q[shift] = c;
        for (j, &b) in g.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * b % p) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &[u64], g: &[u64], p: u64) -> Poly {
    divrem(f, g, p).1
}

pub fn make_monic(f: &[u64], p: u64) -> Poly {
    match f.last() {
        None => Vec::new(),
        Some(&lead) => scale(f, inv_mod(lead, p), p),
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &[u64], g: &[u64], p: u64) -> Poly {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    make_monic(&a, p)
}

pub fn mulmod(f: &[u64], g: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(f, g, p), m, p)
}

pub fn powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Poly {
    let mut result = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

pub fn derivative(f: &[u64], p: u64) -> Poly {
    let mut out: Poly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim(&mut out);
    out
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// `x^(p^d) mod m` by repeated Frobenius.
fn frobenius_power(x: &[u64], d: usize, m: &[u64], p: u64) -> Poly {
    let mut y = rem(x, m, p);
    for _ in 0..d {
        y = powmod(&y, p as u128, m, p);
    }
    y
}

/// Irreducibility over F_p: no factor of degree `d <= deg/2`, checked by
/// `gcd(X^(p^d) - X, f) = 1` for each such `d`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let x = monomial(1);
    let mut xp = rem(&x, f, p);
    for _ in 1..=n / 2 {
        xp = powmod(&xp, p as u128, f, p);
        let g = gcd(&sub(&xp, &x, p), f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Square-free decomposition: pairs `(g, e)` with `f = lead * prod g^e`,
/// each `g` monic and square-free.
pub fn squarefree_decomposition(f: &[u64], p: u64) -> Vec<(Poly, usize)> {
    let f = make_monic(f, p);
    let mut out = Vec::new();
    sqf_rec(&f, p, 1, &mut out);
    out.sort();
    // merge equal factors produced at different recursion levels
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (g, e) in out {
        if let Some(last) = merged.iter_mut().find(|(h, _)| *h == g) {
            last.1 += e;
        } else {
            merged.push((g, e));
        }
    }
    merged
}

fn sqf_rec(f: &[u64], p: u64, mult: usize, out: &mut Vec<(Poly, usize)>) {
    if f.len() <= 1 {
        return;
    }
    let df = derivative(f, p);
    if df.is_empty() {
        // f is a p-th power
        let root = pth_root(f, p);
        sqf_rec(&root, p, mult * p as usize, out);
        return;
    }
    let mut c = gcd(f, &df, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((make_monic(&z, p), i * mult));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        let root = pth_root(&c, p);
        sqf_rec(&root, p, mult * p as usize, out);
    }
}

fn pth_root(f: &[u64], p: u64) -> Poly {
    // coefficients of a polynomial in X^p; a^(1/p) = a over F_p
    let mut out: Poly = f.iter().step_by(p as usize).copied().collect();
    trim(&mut out);
    out
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// pairs `(g_d, d)` where `g_d` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = make_monic(f, p);
    let x = monomial(1);
    let mut xp = rem(&x, &rest, p);
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            let deg = rest.len() - 1;
            out.push((rest.clone(), deg));
            break;
        }
        xp = powmod(&xp, p as u128, &rest, p);
        let g = gcd(&sub(&xp, &x, p), &rest, p);
        if g.len() > 1 {
            rest = divrem(&rest, &g, p).0;
            xp = rem(&xp, &rest, p);
            out.push((g, d));
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.len() - 1;
    if n == d {
        return vec![make_monic(f, p)];
    }
    loop {
        let a: Poly = {
            let mut a: Poly = (0..n).map(|_| rng.gen_range(0..p)).collect();
            trim(&mut a);
            a
        };
        if a.len() <= 1 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace to F_2: a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = mulmod(&t, &t, f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = prod_j (a^((p-1)/2))^(p^j)
            let base = powmod(&a, ((p - 1) / 2) as u128, f, p);
            let mut acc = rem(&[1], f, p);
            let mut t = base;
            for j in 0..d {
                acc = mulmod(&acc, &t, f, p);
                if j + 1 < d {
                    t = frobenius_power(&t, 1, f, p);
                }
            }
            sub(&acc, &[1], p)
        };
        let g = gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, p).0;
            let mut parts = equal_degree(&g, d, p, rng);
            parts.extend(equal_degree(&make_monic(&h, p), d, p, rng));
            return parts;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients low degree first).
pub fn factor(f: &[u64], p: u64, seed: u64) -> Vec<(Poly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (sqf, e) in squarefree_decomposition(f, p) {
        for (g, d) in distinct_degree(&sqf, p) {
            for h in equal_degree(&g, d, p, &mut rng) {
                out.push((h, e));
            }
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`).
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * (a % m) % m;
        k += 1;
    }
    k
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
