//! Small dense linear algebra over Z and F_p.

use crate::poly::{self, inv_mod, Poly};

pub type Matrix = Vec<Vec<i64>>;

/// Characteristic polynomial `det(X - M)` over Z by the Berkowitz algorithm,
/// low degree first.
pub fn charpoly(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    // coefficients high degree first while building
    let mut c: Vec<i128> = vec![1];
    for k in 0..n {
        // leading principal block of size k, column and row next to it
        let col: Vec<i128> = (0..k).map(|i| a[i][k]).collect();
        let row: Vec<i128> = (0..k).map(|j| a[k][j]).collect();
        let mut t = vec![1i128, -a[k][k]];
        let mut v = col.clone();
        for _ in 0..k {
            t.push(-row.iter().zip(&v).map(|(x, y)| x * y).sum::<i128>());
            v = (0..k).map(|i| (0..k).map(|j| a[i][j] * v[j]).sum()).collect();
        }
        let mut next = vec![0i128; c.len() + 1];
        for (i, ti) in t.iter().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i + j < next.len() {
                    next[i + j] += ti * cj;
                }
            }
        }
        c = next;
    }
    c.reverse();
    c
}

/// Determinant over Z by fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn reduce(m: &[Vec<i64>], p: u64) -> Vec<Vec<u64>> {
    m.iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect()
}

pub fn reduce_poly(f: &[i128], p: u64) -> Poly {
    let mut g: Poly = f.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect();
    poly::trim(&mut g);
    g
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut c = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
            }
        }
    }
    c
}

/// Characteristic polynomial over F_p via reduction to upper Hessenberg form.
pub fn charpoly_mod(m: &[Vec<u64>], p: u64) -> Poly {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| a[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            a.swap(piv, k + 1);
            for row in a.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = inv_mod(a[k + 1][k], p);
        for i in k + 2..n {
            let f = a[i][k] * inv % p;
            if f == 0 {
                continue;
            }
            for j in 0..n {
                a[i][j] = (a[i][j] + p - f * a[k + 1][j] % p) % p;
            }
            for row in a.iter_mut() {
                row[k + 1] = (row[k + 1] + f * row[i]) % p;
            }
        }
    }
    // Hessenberg recurrence
    let mut polys: Vec<Poly> = vec![vec![1]];
    for k in 0..n {
        let mut next = poly::mul(&[(p - a[k][k]) % p, 1], &polys[k], p);
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * a[i + 1][i] % p;
            let c = prod * a[i][k] % p;
            next = poly::sub(&next, &poly::scale(&polys[i], c, p), p);
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// `f(M)` over F_p by Horner's rule.
pub fn eval_at_matrix(f: &[u64], m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut acc = vec![vec![0u64; n]; n];
    for &c in f.iter().rev() {
        acc = mat_mul_mod(&acc, m, p);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = (row[i] + c) % p;
        }
    }
    acc
}

/// Basis of the right kernel of `m` over F_p, in reduced form.
pub fn nullspace_mod(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, r);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][fc]) % p;
            }
            v
        })
        .collect()
}

pub fn mat_vec_mod(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |s, (a, b)| (s + a * b) % p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small() {
        // [[2,1],[1,2]]: X^2 - 4X + 3
        assert_eq!(charpoly(&[vec![2, 1], vec![1, 2]]), vec![3, -4, 1]);
        assert_eq!(charpoly(&[vec![-1]]), vec![1, 1]);
        let m = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        assert_eq!(charpoly(&m), vec![-1, 0, 0, 1]);
    }

    #[test]
    fn det_and_charpoly_agree() {
        let m = vec![vec![3, -1, 4, 1], vec![5, 9, -2, 6], vec![5, 3, 5, -8], vec![9, 7, 9, 3]];
        let c = charpoly(&m);
        let d = det(&m);
        // constant term is (-1)^n det
        assert_eq!(c[0], d);
        for p in [2u64, 3, 7, 101] {
            assert_eq!(charpoly_mod(&reduce(&m, p), p), reduce_poly(&c, p));
        }
    }

    #[test]
    fn cayley_hamilton_mod_p() {
        let m = vec![vec![1, 2, 0], vec![0, 3, 4], vec![5, 0, 6]];
        let p = 11;
        let mp = reduce(&m, p);
        let f = charpoly_mod(&mp, p);
        let z = eval_at_matrix(&f, &mp, p);
        assert!(z.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn nullspace() {
        let p = 7;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace_mod(&m, p);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec_mod(&m, v, p).iter().all(|&x| x == 0));
        }
    }
}
