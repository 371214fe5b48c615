//! Weight multisets of representations of the dual group, Brauer-Klimyk
//! tensor decomposition, invariant counts and principal sl2 strings.
//!
//! All weights are Dynkin labels with respect to the root system they are
//! attached to.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{KlError, Result};
use crate::rootsys::{Family, RootSystem, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct WeightMultiset {
    pub rs: RootSystem,
    pub weights: BTreeMap<Vector, u64>,
    /// Highest weight when the multiset is an irreducible representation.
    pub highest: Option<Vector>,
    pub dim: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepLabel {
    /// Quasi-minuscule: highest weight the dominant short root.
    Qm,
    Adjoint,
    /// Standard / vector representation of a classical group, `V_7` of `G2`,
    /// the smallest nontrivial representation otherwise.
    Standard,
}

impl std::str::FromStr for RepLabel {
    type Err = KlError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qm" | "quasi-minuscule" => Ok(RepLabel::Qm),
            "ad" | "adj" | "adjoint" => Ok(RepLabel::Adjoint),
            "std" | "standard" | "vector" => Ok(RepLabel::Standard),
            other => Err(KlError::UnsupportedRep(other.to_string())),
        }
    }
}

impl WeightMultiset {
    fn from_map(rs: &RootSystem, weights: BTreeMap<Vector, u64>, highest: Option<Vector>) -> Self {
        let dim = weights.values().sum();
        WeightMultiset { rs: rs.clone(), weights, highest, dim }
    }

    pub fn trivial(rs: &RootSystem) -> Self {
        let zero = vec![0; rs.rank()];
        Self::from_map(rs, [(zero.clone(), 1)].into_iter().collect(), Some(zero))
    }

    /// Short roots with multiplicity 1 and the zero weight with multiplicity `r_s`.
    pub fn quasi_minuscule(rs_dual: &RootSystem) -> Self {
        let mut w: BTreeMap<Vector, u64> = rs_dual
            .short_roots()
            .map(|i| (rs_dual.to_weight(&rs_dual.roots[i]), 1))
            .collect();
        w.insert(vec![0; rs_dual.rank()], rs_dual.r_s as u64);
        let hw = rs_dual.to_weight(&rs_dual.roots[rs_dual.gamma]);
        Self::from_map(rs_dual, w, Some(hw))
    }

    pub fn adjoint(rs_dual: &RootSystem) -> Self {
        let mut w: BTreeMap<Vector, u64> = rs_dual
            .roots
            .iter()
            .map(|r| (rs_dual.to_weight(r), 1))
            .collect();
        w.insert(vec![0; rs_dual.rank()], rs_dual.rank() as u64);
        let hw = rs_dual.to_weight(&rs_dual.roots[rs_dual.theta]);
        Self::from_map(rs_dual, w, Some(hw))
    }

    /// Minuscule representation: the Weyl orbit of `highest`, multiplicity 1.
    pub fn minuscule(rs: &RootSystem, highest: &[i64]) -> Self {
        let w = rs.weyl_orbit(highest).into_iter().map(|v| (v, 1)).collect();
        Self::from_map(rs, w, Some(highest.to_vec()))
    }

    pub fn standard(rs: &RootSystem) -> Self {
        let r = rs.rank();
        let fundamental = |i: usize| -> Vector {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        };
        let t = rs.cartan_type;
        match t.family {
            Family::A | Family::C | Family::D => Self::minuscule(rs, &fundamental(0)),
            Family::E if t.rank == 6 => Self::minuscule(rs, &fundamental(0)),
            Family::E if t.rank == 7 => Self::minuscule(rs, &fundamental(6)),
            Family::E => Self::adjoint(rs),
            Family::B | Family::F | Family::G => Self::quasi_minuscule(rs),
        }
    }

    pub fn of_label(rs: &RootSystem, label: RepLabel) -> Self {
        match label {
            RepLabel::Qm => Self::quasi_minuscule(rs),
            RepLabel::Adjoint => Self::adjoint(rs),
            RepLabel::Standard => Self::standard(rs),
        }
    }

    /// Contragredient: negated weights.
    pub fn dual(&self) -> Self {
        let w = self
            .weights
            .iter()
            .map(|(v, &m)| (v.iter().map(|x| -x).collect::<Vector>(), m))
            .collect();
        let hw = self.highest.as_ref().map(|h| {
            let neg: Vector = h.iter().map(|x| -x).collect();
            dominant_representative(&self.rs, &neg)
        });
        Self::from_map(&self.rs, w, hw)
    }

    pub fn is_self_dual(&self) -> bool {
        self.weights
            .iter()
            .all(|(v, m)| self.weights.get(&v.iter().map(|x| -x).collect::<Vector>()) == Some(m))
    }

    /// Multiplicities are constant on Weyl orbits.
    pub fn is_weyl_stable(&self) -> bool {
        self.weights.iter().all(|(v, &m)| {
            (0..self.rs.rank()).all(|i| self.weights.get(&self.rs.reflect_weight(i, v)) == Some(&m))
        })
    }
}

fn dominant_representative(rs: &RootSystem, w: &[i64]) -> Vector {
    let mut v = w.to_vec();
    while let Some(i) = (0..rs.rank()).find(|&i| v[i] < 0) {
        v = rs.reflect_weight(i, &v);
    }
    v
}

/// Weyl dimension formula in exact rational arithmetic.
pub fn weyl_dimension(rs: &RootSystem, highest: &[i64]) -> BigInt {
    let mut acc = BigRational::one();
    for i in rs.positive_roots() {
        let cor = &rs.coroots[i];
        let rho: i64 = cor.iter().sum();
        let lam: i64 = cor.iter().zip(highest).map(|(c, l)| c * l).sum();
        acc *= BigRational::new(BigInt::from(lam + rho), BigInt::from(rho));
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
}

/// Brauer-Klimyk: `V(lambda) ⊗ W` as dominant highest weight -> multiplicity.
fn brauer_klimyk(rs: &RootSystem, lambda: &[i64], weights: &BTreeMap<Vector, u64>, out: &mut BTreeMap<Vector, i128>, scale: i128) {
    let r = rs.rank();
    for (mu, &m) in weights {
        // lambda + mu + rho, reflected into the dominant chamber
        let mut v: Vector = (0..r).map(|i| lambda[i] + mu[i] + 1).collect();
        let mut sign = 1i128;
        let mut singular = false;
        loop {
            if v.contains(&0) {
                singular = true;
                break;
            }
            match (0..r).find(|&i| v[i] < 0) {
                Some(i) => {
                    v = rs.reflect_weight(i, &v);
                    sign = -sign;
                }
                None => break,
            }
        }
        if singular {
            continue;
        }
        let key: Vector = v.iter().map(|x| x - 1).collect();
        *out.entry(key).or_insert(0) += sign * scale * m as i128;
    }
}

fn finish(acc: BTreeMap<Vector, i128>) -> Result<BTreeMap<Vector, u128>> {
    let mut out = BTreeMap::new();
    for (k, v) in acc {
        if v < 0 {
            return Err(KlError::NotIrreducible);
        }
        if v > 0 {
            out.insert(k, v as u128);
        }
    }
    Ok(out)
}

/// Decompose `V ⊗ W` where `V` is irreducible with a recorded highest weight.
pub fn tensor_decompose(v: &WeightMultiset, w: &WeightMultiset) -> Result<BTreeMap<Vector, u128>> {
    let lambda = v.highest.as_ref().ok_or(KlError::NotIrreducible)?;
    if lambda.iter().any(|&x| x < 0) || weyl_dimension(&v.rs, lambda) != BigInt::from(v.dim) {
        return Err(KlError::NotIrreducible);
    }
    let mut acc = BTreeMap::new();
    brauer_klimyk(&v.rs, lambda, &w.weights, &mut acc, 1);
    finish(acc)
}

/// Tensor a decomposed representation with `W`.
pub fn tensor_with(
    rs: &RootSystem,
    decomposition: &BTreeMap<Vector, u128>,
    w: &WeightMultiset,
) -> Result<BTreeMap<Vector, u128>> {
    let mut acc = BTreeMap::new();
    for (lambda, &m) in decomposition {
        brauer_klimyk(rs, lambda, &w.weights, &mut acc, m as i128);
    }
    finish(acc)
}

/// Dimension of invariants in `V^{⊗a} ⊗ (V*)^{⊗b}`.
pub fn mixed_moment(v: &WeightMultiset, a: usize, b: usize) -> Result<u128> {
    let rs = &v.rs;
    let zero = vec![0; rs.rank()];
    let mut dec: BTreeMap<Vector, u128> = [(zero.clone(), 1)].into_iter().collect();
    let vd = v.dual();
    for _ in 0..a {
        dec = tensor_with(rs, &dec, v)?;
    }
    for _ in 0..b {
        dec = tensor_with(rs, &dec, &vd)?;
    }
    Ok(dec.get(&zero).copied().unwrap_or(0))
}

pub fn invariant_moment(v: &WeightMultiset, k: usize) -> Result<u128> {
    mixed_moment(v, k, 0)
}

/// `dim (V^{⊗k})^G` for `k = 0..=kmax`, sharing the iterated decomposition.
pub fn invariant_moments(v: &WeightMultiset, kmax: usize) -> Result<Vec<u128>> {
    let rs = &v.rs;
    let zero = vec![0; rs.rank()];
    let mut dec: BTreeMap<Vector, u128> = [(zero.clone(), 1)].into_iter().collect();
    let mut out = vec![1];
    for _ in 0..kmax {
        dec = tensor_with(rs, &dec, v)?;
        out.push(dec.get(&zero).copied().unwrap_or(0));
    }
    Ok(out)
}

/// Principal sl2 decomposition `V = ⊕ Sym^{2 l_i}`, returned as the `l_i`
/// in decreasing order. Weights are graded by `<2 rho^vee, mu>`.
pub fn principal_strings(v: &WeightMultiset) -> Result<Vec<u32>> {
    let two_rho = v.rs.two_rho_vee();
    let mut levels: BTreeMap<i64, i64> = BTreeMap::new();
    for (mu, &m) in &v.weights {
        let n: i64 = two_rho.iter().zip(mu).map(|(a, b)| a * b).sum();
        *levels.entry(n).or_insert(0) += m as i64;
    }
    if levels.keys().any(|n| n % 2 != 0) {
        return Err(KlError::UnsupportedRep("odd principal grading".into()));
    }
    for (&n, &c) in &levels {
        if levels.get(&-n).copied().unwrap_or(0) != c {
            return Err(KlError::NotSL2Decomposable(format!("grading not symmetric at level {n}")));
        }
    }
    let top = levels.keys().next_back().copied().unwrap_or(0);
    let mut out = Vec::new();
    let mut n = top;
    while n >= 0 {
        let here = levels.get(&n).copied().unwrap_or(0);
        let above = levels.get(&(n + 2)).copied().unwrap_or(0);
        let strings = here - above;
        if strings < 0 {
            return Err(KlError::NotSL2Decomposable(format!(
                "negative string count {strings} at level {n}"
            )));
        }
        out.extend(std::iter::repeat_n((n / 2) as u32, strings as usize));
        n -= 2;
    }
    Ok(out)
}

/// Dimension of an irreducible as `u64`, for reporting.
pub fn dim_u64(rs: &RootSystem, highest: &[i64]) -> u64 {
    weyl_dimension(rs, highest).to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::all_types;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    #[test]
    fn qm_and_adjoint_dims() {
        assert_eq!(WeightMultiset::quasi_minuscule(&rs("G2")).dim, 7);
        assert_eq!(WeightMultiset::quasi_minuscule(&rs("A1")).dim, 3);
        assert_eq!(WeightMultiset::quasi_minuscule(&rs("C2")).dim, 5);
        assert_eq!(WeightMultiset::adjoint(&rs("G2")).dim, 14);
        assert_eq!(WeightMultiset::adjoint(&rs("A1")).dim, 3);
        assert_eq!(WeightMultiset::adjoint(&rs("E8")).dim, 248);
    }

    #[test]
    fn standard_dims() {
        for (l, d) in [("A3", 4), ("B3", 7), ("C2", 4), ("D4", 8), ("E6", 27), ("E7", 56), ("F4", 26), ("G2", 7)] {
            let r = rs(l);
            let v = WeightMultiset::standard(&r);
            assert_eq!(v.dim, d, "{l}");
            assert_eq!(weyl_dimension(&r, v.highest.as_ref().unwrap()), BigInt::from(d), "{l}");
            assert!(v.is_weyl_stable());
        }
    }

    #[test]
    fn clebsch_gordan() {
        let a1 = rs("A1");
        let std = WeightMultiset::standard(&a1);
        let dec = tensor_decompose(&std, &std).unwrap();
        let expect: BTreeMap<Vector, u128> = [(vec![0], 1), (vec![2], 1)].into_iter().collect();
        assert_eq!(dec, expect);
        let triv = WeightMultiset::trivial(&a1);
        let dec = tensor_decompose(&std, &triv).unwrap();
        assert_eq!(dec, [(vec![1], 1)].into_iter().collect());
    }

    #[test]
    fn g2_v7_squared() {
        let g2 = rs("G2");
        let v7 = WeightMultiset::quasi_minuscule(&g2);
        let dec = tensor_decompose(&v7, &v7).unwrap();
        let mut dims: Vec<u64> = dec
            .iter()
            .flat_map(|(l, &m)| std::iter::repeat(dim_u64(&g2, l)).take(m as usize))
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 7, 14, 27]);
    }

    #[test]
    fn non_irreducible_rejected() {
        let g2 = rs("G2");
        let mut v = WeightMultiset::adjoint(&g2);
        v.highest = None;
        assert_eq!(tensor_decompose(&v, &v), Err(KlError::NotIrreducible));
        let mut w = WeightMultiset::adjoint(&g2);
        w.highest = Some(vec![1, 0]);
        assert_eq!(tensor_decompose(&w, &v), Err(KlError::NotIrreducible));
    }

    #[test]
    fn dimension_is_conserved() {
        for l in ["A2", "B3", "C3", "G2", "F4", "D4"] {
            let r = rs(l);
            for v in [WeightMultiset::quasi_minuscule(&r), WeightMultiset::standard(&r)] {
                for w in [WeightMultiset::adjoint(&r), WeightMultiset::standard(&r)] {
                    let dec = tensor_decompose(&v, &w).unwrap();
                    let total: BigInt = dec.iter().map(|(l, &m)| weyl_dimension(&r, l) * BigInt::from(m)).sum();
                    assert_eq!(total, BigInt::from(v.dim * w.dim), "{l}");
                }
            }
        }
        let e8 = rs("E8");
        let ad = WeightMultiset::adjoint(&e8);
        let dec = tensor_decompose(&ad, &ad).unwrap();
        let total: BigInt = dec.iter().map(|(l, &m)| weyl_dimension(&e8, l) * BigInt::from(m)).sum();
        assert_eq!(total, BigInt::from(248u64 * 248));
    }

    #[test]
    fn moments() {
        let a1 = rs("A1");
        let std = WeightMultiset::standard(&a1);
        assert_eq!(invariant_moments(&std, 8).unwrap(), vec![1, 0, 1, 0, 2, 0, 5, 0, 14]);
        let v7 = WeightMultiset::quasi_minuscule(&rs("G2"));
        let m = invariant_moments(&v7, 4).unwrap();
        assert_eq!(&m[2..], &[1, 1, 4]);
        let so7 = WeightMultiset::standard(&rs("B3"));
        assert_eq!(invariant_moment(&so7, 4).unwrap(), 3);
        assert_eq!(invariant_moment(&so7, 0).unwrap(), 1);
        // SU(3): determinant gives an invariant in V^3
        let sl3 = WeightMultiset::standard(&rs("A2"));
        assert!(!sl3.is_self_dual());
        assert_eq!(mixed_moment(&sl3, 1, 1).unwrap(), 1);
        assert_eq!(mixed_moment(&sl3, 3, 0).unwrap(), 1);
        assert_eq!(mixed_moment(&sl3, 2, 1).unwrap(), 0);
        assert_eq!(mixed_moment(&sl3, 2, 0).unwrap(), 0);
        // self-dual: counts agree for V and V*
        for k in 0..5 {
            assert_eq!(mixed_moment(&v7, k, 0).unwrap(), mixed_moment(&v7, 0, k).unwrap());
        }
    }

    #[test]
    fn principal_string_examples() {
        assert_eq!(principal_strings(&WeightMultiset::adjoint(&rs("A1"))).unwrap(), vec![1]);
        assert_eq!(principal_strings(&WeightMultiset::quasi_minuscule(&rs("G2"))).unwrap(), vec![3]);
        assert_eq!(principal_strings(&WeightMultiset::quasi_minuscule(&rs("A2"))).unwrap(), vec![2, 1]);
        // adjoint strings are the exponents
        assert_eq!(
            principal_strings(&WeightMultiset::adjoint(&rs("E8"))).unwrap(),
            vec![29, 23, 19, 17, 13, 11, 7, 1]
        );
        assert!(principal_strings(&WeightMultiset::standard(&rs("C2"))).is_err());
    }

    #[test]
    fn same_number_lemma_all_types() {
        for t in all_types(8) {
            let r = RootSystem::build(t);
            let v = WeightMultiset::quasi_minuscule(&r);
            let zero = v.weights[&vec![0; r.rank()]] as usize;
            let strings = principal_strings(&v).unwrap();
            assert_eq!(zero, r.r_s, "{t}");
            assert_eq!(strings.len(), r.r_s, "{t}");
            assert_eq!(r.short_roots().count() / r.h, r.r_s, "{t}");
            let total: u32 = strings.iter().sum();
            assert_eq!(2 * total as usize, r.h * r.r_s, "{t}");
            let dim: u32 = strings.iter().map(|l| 2 * l + 1).sum();
            assert_eq!(dim as u64, v.dim);
            assert!(v.is_weyl_stable());
        }
    }
}
