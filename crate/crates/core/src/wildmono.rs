//! The simple wild parameter: the Coxeter element acting on `T[p]`, the
//! submodule `T(zeta)` cut out by a primitive `h`-th root of unity, and the
//! Swan conductors it forces.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{KlError, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{self, Poly};
use crate::repweights::{principal_strings, WeightMultiset};
use crate::rootsys::RootSystem;

pub const FACTOR_SEED: u64 = 0;

#[derive(Clone, Debug)]
pub struct WildParameter {
    pub rs: RootSystem,
    pub p: u64,
    pub cox: Matrix,
    pub cox_mod_p: Vec<Vec<u64>>,
    pub charpoly_mod_p: Poly,
    pub factors: Vec<(Poly, usize)>,
    pub d: usize,
    /// Every irreducible factor whose roots have exact order `h`.
    pub qualifying: Vec<Poly>,
    pub zeta_minpoly: Poly,
    pub t_zeta_basis: Vec<Vec<u64>>,
}

/// Roots as linear functionals on the coroot lattice, in the simple-coroot basis.
pub fn root_functionals(rs: &RootSystem) -> Vec<Vec<i64>> {
    let r = rs.rank();
    rs.roots
        .iter()
        .map(|c| (0..r).map(|j| (0..r).map(|i| rs.cartan[j][i] * c[i]).sum()).collect())
        .collect()
}

fn has_exact_order(f: &[u64], h: u64, p: u64) -> bool {
    let x = poly::monomial(1);
    if poly::powmod(&x, h as u128, f, p) != vec![1] {
        return false;
    }
    poly::prime_factors(h)
        .into_iter()
        .all(|l| poly::powmod(&x, (h / l) as u128, f, p) != vec![1])
}

fn kernel_of_factor(cox_mod_p: &[Vec<u64>], f: &[u64], p: u64) -> Vec<Vec<u64>> {
    linalg::nullspace_mod(&linalg::eval_at_matrix(f, cox_mod_p, p), p)
}

/// Bad primes of a simple type: 2 outside type A, 3 for the exceptional
/// types, 5 for E8.
pub fn is_good_prime(rs: &RootSystem, p: u64) -> bool {
    use crate::rootsys::Family::*;
    let bad: &[u64] = match (rs.cartan_type.family, rs.cartan_type.rank) {
        (A, _) => &[],
        (B | C | D, _) => &[2],
        (E, 8) => &[2, 3, 5],
        _ => &[2, 3],
    };
    !bad.contains(&p)
}

/// Requires `p` prime to `#W`.
pub fn construct(rs: &RootSystem, p: u64) -> Result<WildParameter> {
    let order = rs.cartan_type.weyl_order();
    if !poly::is_prime(p) {
        return Err(KlError::NotPrime(p));
    }
    if order % p as u128 != 0 {
        return build(rs, p);
    }
    Err(KlError::BadPrime { p, order })
}

/// Requires only that `p` be good; the uniqueness and dimension checks
/// still apply and report any failure.
pub fn construct_good(rs: &RootSystem, p: u64) -> Result<WildParameter> {
    if !poly::is_prime(p) {
        return Err(KlError::NotPrime(p));
    }
    if !is_good_prime(rs, p) {
        return Err(KlError::BadPrime { p, order: rs.cartan_type.weyl_order() });
    }
    build(rs, p)
}

fn build(rs: &RootSystem, p: u64) -> Result<WildParameter> {
    let cox = rs.coxeter_matrix();
    let cox_mod_p = linalg::reduce(&cox, p);
    let charpoly_mod_p = linalg::charpoly_mod(&cox_mod_p, p);
    let integral = linalg::reduce_poly(&linalg::charpoly(&cox), p);
    if integral != charpoly_mod_p {
        return Err(KlError::CensusFailure(format!(
            "{}: charpoly mod {p} disagrees with the reduced integer charpoly",
            rs.cartan_type
        )));
    }
    let h = rs.h as u64;
    let d = poly::mult_order(p % h, h) as usize;
    let factors = poly::factor(&charpoly_mod_p, p, FACTOR_SEED);
    let qualifying: Vec<(Poly, usize)> = factors
        .iter()
        .filter(|(f, _)| poly::degree(f) == Some(d) && has_exact_order(f, h, p))
        .cloned()
        .collect();
    let Some((zeta_minpoly, mult)) = qualifying.first().cloned() else {
        return Err(KlError::CensusFailure(format!(
            "{}: no factor of degree {d} with roots of order {h} mod {p}",
            rs.cartan_type
        )));
    };
    if mult != 1 {
        return Err(KlError::NonUniqueSubmodule { factor: zeta_minpoly, multiplicity: mult });
    }
    let t_zeta_basis = kernel_of_factor(&cox_mod_p, &zeta_minpoly, p);
    if t_zeta_basis.len() != d {
        return Err(KlError::NonUniqueSubmodule { factor: zeta_minpoly, multiplicity: t_zeta_basis.len() / d.max(1) });
    }
    Ok(WildParameter {
        rs: rs.clone(),
        p,
        cox,
        cox_mod_p,
        charpoly_mod_p,
        factors,
        d,
        qualifying: qualifying.into_iter().map(|(f, _)| f).collect(),
        zeta_minpoly,
        t_zeta_basis,
    })
}

impl WildParameter {
    pub fn h(&self) -> usize {
        self.rs.h
    }

    /// `T(zeta)` is stable under the Coxeter element.
    pub fn is_cox_stable(&self) -> bool {
        let p = self.p;
        let basis = &self.t_zeta_basis;
        basis.iter().all(|v| {
            let w = linalg::mat_vec_mod(&self.cox_mod_p, v, p);
            let mut rows = basis.clone();
            rows.push(w);
            rank_mod(&rows, p) == basis.len()
        })
    }

    fn trivial_roots_on(&self, basis: &[Vec<u64>]) -> usize {
        let p = self.p as i64;
        root_functionals(&self.rs)
            .iter()
            .filter(|f| {
                basis.iter().all(|v| {
                    f.iter().zip(v).map(|(a, b)| a * *b as i64).sum::<i64>().rem_euclid(p) == 0
                })
            })
            .count()
    }

    pub fn trivial_root_count(&self) -> usize {
        self.trivial_roots_on(&self.t_zeta_basis)
    }

    /// Swan counts for every qualifying factor, in order.
    pub fn swan_per_factor(&self) -> Vec<Result<usize>> {
        self.qualifying
            .iter()
            .map(|f| {
                let basis = kernel_of_factor(&self.cox_mod_p, f, self.p);
                swan_count(self.rs.roots.len() - self.trivial_roots_on(&basis), self.h())
            })
            .collect()
    }
}

fn rank_mod(rows: &[Vec<u64>], p: u64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let transposed: Vec<Vec<u64>> = (0..cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    rows.len() - linalg::nullspace_mod(&transposed, p).len()
}

fn swan_count(nontrivial: usize, h: usize) -> Result<usize> {
    if nontrivial % h != 0 {
        return Err(KlError::NonIntegerSwan { count: nontrivial, h });
    }
    Ok(nontrivial / h)
}

pub fn roots_nontrivial_on_tzeta(wp: &WildParameter) -> bool {
    wp.trivial_root_count() == 0
}

/// Swan conductor of the adjoint representation from breaks `1/h`, and
/// `dim g^{I+}`.
pub fn swan_from_breaks(wp: &WildParameter) -> Result<(usize, usize)> {
    let trivial = wp.trivial_root_count();
    let swan = swan_count(wp.rs.roots.len() - trivial, wp.h())?;
    Ok((swan, wp.rs.rank() + trivial))
}

/// `det(Cox - 1) != 0` on the cocharacter lattice tensor Q.
pub fn cox_tame_no_invariants(rs: &RootSystem) -> bool {
    let mut m = rs.coxeter_matrix();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= 1;
    }
    linalg::det(&m) != 0
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Pgl2Bound {
    pub type_label: String,
    pub p: u64,
    pub strings: Vec<u32>,
    pub bound: i64,
    /// `(1 - 1/p) h r_s / 2`
    pub coarse_bound: String,
    pub r_s: usize,
    pub applicable: bool,
    pub excluded: bool,
}

pub fn pgl2_swan_bound(rs: &RootSystem, p: u64) -> Result<Pgl2Bound> {
    let qm = WeightMultiset::quasi_minuscule(rs);
    let strings = principal_strings(&qm)?;
    let bound: i64 = strings.iter().map(|&l| l as i64 - (l as u64 / p) as i64).sum();
    let coarse = Ratio::new((p as i64 - 1) * (rs.h * rs.r_s) as i64, 2 * p as i64);
    let applicable = rs.rank() >= 2;
    Ok(Pgl2Bound {
        type_label: rs.cartan_type.to_string(),
        p,
        strings,
        bound,
        coarse_bound: coarse.to_string(),
        r_s: rs.r_s,
        applicable,
        excluded: applicable && bound > rs.r_s as i64,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WildReport {
    pub type_label: String,
    pub p: u64,
    /// `true` when `p` divides `#W` and only goodness of `p` was required.
    pub p_divides_weyl_order: bool,
    pub h: usize,
    pub weyl_order: String,
    pub charpoly: Vec<u64>,
    pub factors: Vec<(Vec<u64>, usize)>,
    pub d: usize,
    pub zeta_minpoly: Vec<u64>,
    pub t_zeta_basis: Vec<Vec<u64>>,
    pub cox_stable: bool,
    pub roots_nontrivial: bool,
    pub swan: usize,
    pub swan_all_factors_agree: bool,
    pub invariants_dim_wild: usize,
    pub cox_tame_no_invariants: bool,
    pub swan_equals_rank: bool,
}

/// Strict when `p` is prime to `#W`, otherwise falls back to good primes.
pub fn report(rs: &RootSystem, p: u64) -> Result<WildReport> {
    let divides = rs.cartan_type.weyl_order() % p as u128 == 0;
    let wp = if divides { construct_good(rs, p)? } else { construct(rs, p)? };
    let (swan, inv) = swan_from_breaks(&wp)?;
    let per: Vec<usize> = wp.swan_per_factor().into_iter().collect::<Result<_>>()?;
    Ok(WildReport {
        type_label: rs.cartan_type.to_string(),
        p,
        p_divides_weyl_order: divides,
        h: rs.h,
        weyl_order: rs.cartan_type.weyl_order().to_string(),
        charpoly: wp.charpoly_mod_p.clone(),
        factors: wp.factors.clone(),
        d: wp.d,
        zeta_minpoly: wp.zeta_minpoly.clone(),
        t_zeta_basis: wp.t_zeta_basis.clone(),
        cox_stable: wp.is_cox_stable(),
        roots_nontrivial: roots_nontrivial_on_tzeta(&wp),
        swan,
        swan_all_factors_agree: per.iter().all(|&s| s == swan),
        invariants_dim_wild: inv,
        cox_tame_no_invariants: cox_tame_no_invariants(rs),
        swan_equals_rank: swan == rs.rank(),
    })
}

/// The first `count` primes not dividing `#W`.
pub fn good_primes(rs: &RootSystem, count: usize) -> Vec<u64> {
    let order = rs.cartan_type.weyl_order();
    (2u64..)
        .filter(|&p| poly::is_prime(p) && order % p as u128 != 0)
        .take(count)
        .collect()
}
