//! Root systems of the simple types, in integer coordinates.
//!
//! Roots are stored in the simple-root basis and coroots in the simple-coroot
//! basis. Weights are Dynkin labels (coordinates in the fundamental-weight
//! basis). The Cartan matrix follows `a_ij = <alpha_i^vee, alpha_j>` with
//! Bourbaki numbering. Weyl groups are never enumerated: orbits are computed
//! by closing under the simple reflections.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{KlError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(KlError::InvalidType(format!("{family:?}{rank}")))
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Degrees of the fundamental invariants; their product is `#W`, the largest is `h`.
    pub fn degrees(self) -> Vec<u64> {
        let n = self.rank as u64;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        }
    }

    pub fn weyl_order(self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    pub fn dual(self) -> CartanType {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        CartanType { family, rank: self.rank }
    }

    /// Half squared lengths of the simple roots (short roots have 1) and the
    /// symmetric Gram matrix `(alpha_i, alpha_j)`.
    fn form(self) -> (Vec<i64>, Vec<Vec<i64>>) {
        let r = self.rank;
        let mut eps = vec![1i64; r];
        let mut gram = vec![vec![0i64; r]; r];
        let edge = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            Family::A => (0..r - 1).for_each(|i| edge(&mut gram, i, i + 1, -1)),
            Family::B => {
                (0..r - 1).for_each(|i| eps[i] = 2);
                (0..r - 1).for_each(|i| edge(&mut gram, i, i + 1, -2));
            }
            Family::C => {
                eps[r - 1] = 2;
                (0..r - 2).for_each(|i| edge(&mut gram, i, i + 1, -1));
                edge(&mut gram, r - 2, r - 1, -2);
            }
            Family::D => {
                (0..r - 2).for_each(|i| edge(&mut gram, i, i + 1, -1));
                edge(&mut gram, r - 3, r - 1, -1);
            }
            Family::E => {
                edge(&mut gram, 0, 2, -1);
                edge(&mut gram, 1, 3, -1);
                (2..r - 1).for_each(|i| edge(&mut gram, i, i + 1, -1));
            }
            Family::F => {
                eps = vec![2, 2, 1, 1];
                edge(&mut gram, 0, 1, -2);
                edge(&mut gram, 1, 2, -2);
                edge(&mut gram, 2, 3, -1);
            }
            Family::G => {
                eps = vec![1, 3];
                edge(&mut gram, 0, 1, -3);
            }
        }
        for i in 0..r {
            gram[i][i] = 2 * eps[i];
        }
        (eps, gram)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = KlError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(KlError::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| KlError::InvalidType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Every simple type of rank at most `max_rank`, each isomorphism class once
/// (`B2 = C2` listed as `B2`).
pub fn all_types(max_rank: usize) -> Vec<CartanType> {
    let mut out = Vec::new();
    let mut push = |f, r| {
        if let Ok(t) = CartanType::new(f, r) {
            if r <= max_rank {
                out.push(t);
            }
        }
    };
    for r in 1..=max_rank {
        push(Family::A, r);
    }
    for r in 2..=max_rank {
        push(Family::B, r);
    }
    for r in 3..=max_rank {
        push(Family::C, r);
    }
    for r in 4..=max_rank {
        push(Family::D, r);
    }
    for r in 6..=8 {
        push(Family::E, r);
    }
    push(Family::F, 4);
    push(Family::G, 2);
    out
}

pub type Vector = Vec<i64>;

#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths of the simple roots.
    pub simple_eps: Vec<i64>,
    gram: Vec<Vec<i64>>,
    /// Roots in the simple-root basis, ordered by height then lexicographically.
    pub roots: Vec<Vector>,
    /// Coroots in the simple-coroot basis, aligned with `roots`.
    pub coroots: Vec<Vector>,
    /// Long-root flag; every root is long in a simply-laced system.
    pub long: Vec<bool>,
    pub theta: usize,
    pub gamma: usize,
    pub h: usize,
    pub r_s: usize,
    pub r_l: usize,
}

impl RootSystem {
    pub fn build(cartan_type: CartanType) -> Self {
        let (eps, gram) = cartan_type.form();
        Self::from_form(cartan_type, eps, gram)
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::build(label.parse()?))
    }

    fn from_form(cartan_type: CartanType, eps: Vec<i64>, gram: Vec<Vec<i64>>) -> Self {
        let r = eps.len();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| gram[i][j] / eps[i]).collect())
            .collect();
        // close the simple roots under simple reflections
        let mut seen: BTreeSet<Vector> = BTreeSet::new();
        let mut queue: VecDeque<Vector> = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..r {
                let w = reflect_root(&cartan, i, &v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut roots: Vec<Vector> = seen.into_iter().collect();
        roots.sort_by(|a, b| (height(a), a).cmp(&(height(b), b)));

        let norm = |v: &Vector| -> i64 {
            let mut s = 0;
            for i in 0..r {
                for j in 0..r {
                    s += v[i] * gram[i][j] * v[j];
                }
            }
            s / 2
        };
        let root_eps: Vec<i64> = roots.iter().map(norm).collect();
        let max_eps = *eps.iter().max().unwrap();
        let simply_laced = eps.iter().all(|&e| e == max_eps);
        let long: Vec<bool> = root_eps.iter().map(|&e| e == max_eps).collect();
        let coroots: Vec<Vector> = roots
            .iter()
            .zip(&root_eps)
            .map(|(c, &ea)| (0..r).map(|j| c[j] * eps[j] / ea).collect())
            .collect();
        let theta = roots.len() - 1;
        let dynkin = |c: &Vector| -> Vector {
            (0..r).map(|i| (0..r).map(|j| cartan[i][j] * c[j]).sum()).collect()
        };
        let gamma = (0..roots.len())
            .filter(|&i| simply_laced || !long[i])
            .find(|&i| dynkin(&roots[i]).iter().all(|&x| x >= 0) && height(&roots[i]) > 0)
            .expect("a dominant short root exists");
        let (r_s, r_l) = if simply_laced {
            (r, r)
        } else {
            let l = eps.iter().filter(|&&e| e == max_eps).count();
            (r - l, l)
        };
        let h = roots.len() / r;
        RootSystem {
            cartan_type,
            cartan,
            simple_eps: eps,
            gram,
            roots,
            coroots,
            long,
            theta,
            gamma,
            h,
            r_s,
            r_l,
        }
    }

    pub fn rank(&self) -> usize {
        self.simple_eps.len()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.cartan_type.is_simply_laced()
    }

    /// Short in the sense used for quasi-minuscule weights: every root of a
    /// simply-laced system counts.
    pub fn is_short(&self, i: usize) -> bool {
        self.is_simply_laced() || !self.long[i]
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.long[i]
    }

    pub fn short_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(move |&i| self.is_short(i))
    }

    pub fn long_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(move |&i| self.long[i])
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(move |&i| height(&self.roots[i]) > 0)
    }

    pub fn height(&self, i: usize) -> i64 {
        height(&self.roots[i])
    }

    pub fn index_of(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == root)
    }

    /// Index of the simple root `alpha_i`.
    pub fn simple(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.index_of(&e).unwrap()
    }

    pub fn simple_index(&self, root: usize) -> Option<usize> {
        let v = &self.roots[root];
        if height(v) == 1 {
            v.iter().position(|&x| x == 1)
        } else {
            None
        }
    }

    pub fn is_simple(&self, root: usize) -> bool {
        self.simple_index(root).is_some()
    }

    pub fn negate(&self, root: usize) -> usize {
        let v: Vector = self.roots[root].iter().map(|x| -x).collect();
        self.index_of(&v).unwrap()
    }

    /// `<alpha, beta^vee>` for a root in root coordinates and a coroot in
    /// coroot coordinates.
    pub fn pairing(&self, alpha: &[i64], beta_vee: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += beta_vee[i] * self.cartan[i][j] * alpha[j];
            }
        }
        s
    }

    /// `<roots[a], coroots[b]^vee>` by index.
    pub fn pair(&self, a: usize, b: usize) -> i64 {
        self.pairing(&self.roots[a], &self.coroots[b])
    }

    /// `Phi^beta_n = { alpha : <alpha, beta^vee> = n }`.
    pub fn phi_level(&self, beta: usize, n: i64) -> Vec<usize> {
        (0..self.roots.len()).filter(|&a| self.pair(a, beta) == n).collect()
    }

    /// Dynkin labels `<alpha_i^vee, v>` of a vector in root coordinates.
    pub fn to_weight(&self, root_coords: &[i64]) -> Vector {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| self.cartan[i][j] * root_coords[j]).sum())
            .collect()
    }

    /// Simple reflection on Dynkin labels.
    pub fn reflect_weight(&self, i: usize, w: &[i64]) -> Vector {
        let c = w[i];
        (0..self.rank()).map(|j| w[j] - c * self.cartan[j][i]).collect()
    }

    /// Weyl orbit of a weight (Dynkin labels) by breadth-first closure.
    pub fn weyl_orbit(&self, weight: &[i64]) -> BTreeSet<Vector> {
        self.orbit_under(weight, &(0..self.rank()).collect::<Vec<_>>())
    }

    /// Orbit under the subgroup generated by the listed simple reflections.
    pub fn orbit_under(&self, weight: &[i64], gens: &[usize]) -> BTreeSet<Vector> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(weight.to_vec());
        queue.push_back(weight.to_vec());
        while let Some(v) = queue.pop_front() {
            for &i in gens {
                let w = self.reflect_weight(i, &v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// `#(W_theta / W_theta ∩ W_gamma)`: the size of the orbit of `gamma`
    /// under the stabilizer of `theta`, generated by the `s_i` fixing `theta`.
    pub fn parabolic_orbit_index(&self) -> usize {
        let theta_w = self.to_weight(&self.roots[self.theta]);
        let gens: Vec<usize> = (0..self.rank()).filter(|&i| theta_w[i] == 0).collect();
        let gamma_w = self.to_weight(&self.roots[self.gamma]);
        self.orbit_under(&gamma_w, &gens).len()
    }

    /// Coxeter element `s_1 s_2 ... s_r` on the coroot lattice, simple-coroot basis.
    pub fn coxeter_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut m = identity(r);
        for i in 0..r {
            // s_i(alpha_j^vee) = alpha_j^vee - <alpha_i, alpha_j^vee> alpha_i^vee
            let mut s = identity(r);
            for j in 0..r {
                s[i][j] -= self.cartan[j][i];
            }
            m = mat_mul(&m, &s);
        }
        m
    }

    /// The Langlands dual root system: roots and coroots exchanged.
    pub fn dual(&self) -> RootSystem {
        let r = self.rank();
        let emax = *self.simple_eps.iter().max().unwrap();
        let eps: Vec<i64> = self.simple_eps.iter().map(|&e| emax / e).collect();
        let gram: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| emax * self.gram[i][j] / (self.simple_eps[i] * self.simple_eps[j]))
                    .collect()
            })
            .collect();
        RootSystem::from_form(self.cartan_type.dual(), eps, gram)
    }

    /// Sum of the positive coroots, in simple-coroot coordinates.
    pub fn two_rho_vee(&self) -> Vector {
        let r = self.rank();
        let mut out = vec![0; r];
        for i in self.positive_roots() {
            for (o, c) in out.iter_mut().zip(&self.coroots[i]) {
                *o += c;
            }
        }
        out
    }

    pub fn report(&self) -> RootsReport {
        RootsReport {
            type_label: self.cartan_type.to_string(),
            rank: self.rank(),
            cartan: self.cartan.clone(),
            roots: self
                .roots
                .iter()
                .enumerate()
                .map(|(i, v)| RootEntry {
                    coords: v.clone(),
                    coroot: self.coroots[i].clone(),
                    long: self.long[i],
                })
                .collect(),
            theta: self.roots[self.theta].clone(),
            gamma: self.roots[self.gamma].clone(),
            h: self.h,
            r_s: self.r_s,
            r_l: self.r_l,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootEntry {
    pub coords: Vector,
    pub coroot: Vector,
    pub long: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootsReport {
    pub type_label: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<RootEntry>,
    pub theta: Vector,
    pub gamma: Vector,
    pub h: usize,
    pub r_s: usize,
    pub r_l: usize,
}

pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

fn reflect_root(cartan: &[Vec<i64>], i: usize, v: &[i64]) -> Vector {
    let c: i64 = (0..v.len()).map(|j| cartan[i][j] * v[j]).sum();
    let mut w = v.to_vec();
    w[i] -= c;
    w
}

pub fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    #[test]
    fn small_examples() {
        let g2 = rs("G2");
        assert_eq!((g2.roots.len(), g2.h, g2.r_s, g2.r_l), (12, 6, 1, 1));
        let a2 = rs("A2");
        assert_eq!(a2.roots.len(), 6);
        assert_eq!(a2.roots[a2.theta], vec![1, 1]);
        assert_eq!(a2.h, 3);
        let a1 = rs("A1");
        assert_eq!((a1.roots.len(), a1.h), (2, 2));
    }

    #[test]
    fn invalid_types() {
        assert!(matches!("B1".parse::<CartanType>(), Err(KlError::InvalidType(_))));
        assert!(matches!("E9".parse::<CartanType>(), Err(KlError::InvalidType(_))));
        assert!(matches!("X3".parse::<CartanType>(), Err(KlError::InvalidType(_))));
        assert!(matches!("D3".parse::<CartanType>(), Err(KlError::InvalidType(_))));
    }

    #[test]
    fn counts_for_all_types() {
        let types = all_types(8);
        assert_eq!(types.len(), 31);
        for t in types {
            let r = RootSystem::build(t);
            let n = r.roots.len();
            assert_eq!(n, r.rank() * r.h, "{t}");
            assert_eq!(r.short_roots().count(), r.h * r.r_s, "{t}");
            assert_eq!(r.long_roots().count(), r.h * r.r_l, "{t}");
            assert_eq!(r.h as u64, *t.degrees().last().unwrap(), "{t}");
            for i in 0..n {
                assert_eq!(r.pair(i, i), 2);
            }
            // theta is the unique root of maximal height, gamma the unique dominant short root
            assert!(r.height(r.theta) > r.height(r.theta - 1));
            let dominant_short: Vec<usize> = r
                .short_roots()
                .filter(|&i| r.to_weight(&r.roots[i]).iter().all(|&x| x >= 0))
                .collect();
            assert_eq!(dominant_short, vec![r.gamma], "{t}");
            if r.is_simply_laced() {
                assert_eq!(r.gamma, r.theta);
            }
        }
    }

    #[test]
    fn pairing_examples() {
        for t in all_types(8) {
            let r = RootSystem::build(t);
            assert_eq!(r.pair(r.theta, r.theta), 2);
            for i in 0..r.rank() {
                let a = r.simple(i);
                if a != r.theta {
                    assert!([0, 1].contains(&r.pair(a, r.theta)), "{t}");
                }
            }
            for a in 0..r.roots.len() {
                if a != r.theta && a != r.negate(r.theta) {
                    assert!(r.pair(a, r.theta).abs() <= 1);
                }
            }
        }
        let g2 = rs("G2");
        let vals: BTreeSet<i64> = (0..12).map(|a| g2.pair(a, g2.gamma)).collect();
        assert_eq!(vals, [-3, -2, -1, 0, 1, 2, 3].into_iter().collect());
    }

    #[test]
    fn phi_levels_partition() {
        for t in all_types(8) {
            let r = RootSystem::build(t);
            assert_eq!(r.phi_level(r.theta, 2), vec![r.theta]);
            assert!(r.phi_level(r.theta, 5).is_empty());
            for b in 0..r.roots.len() {
                let total: usize = (-3..=3).map(|n| r.phi_level(b, n).len()).sum();
                assert_eq!(total, r.roots.len());
                if r.long[b] {
                    assert_eq!(r.phi_level(b, 2), vec![b]);
                    assert_eq!(r.phi_level(b, -2), vec![r.negate(b)]);
                }
            }
        }
        let a2 = rs("A2");
        let lvl: Vec<Vector> = a2.phi_level(a2.theta, 1).iter().map(|&i| a2.roots[i].clone()).collect();
        assert_eq!(lvl, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn orbits() {
        let g2 = rs("G2");
        let g2d = g2.dual();
        // theta^vee of G2 is the dominant short root of the dual system
        let theta_vee = g2d.index_of(&g2.coroots[g2.theta]).unwrap();
        assert_eq!(theta_vee, g2d.gamma);
        assert_eq!(g2d.weyl_orbit(&g2d.to_weight(&g2d.roots[theta_vee])).len(), 6);
        assert_eq!(g2.weyl_orbit(&[0, 0]).len(), 1);
        for n in 1..=6 {
            let a = RootSystem::build(CartanType::new(Family::A, n).unwrap());
            let orb = a.weyl_orbit(&a.to_weight(&a.roots[a.theta]));
            assert_eq!(orb.len(), n * (n + 1));
        }
        for t in all_types(8) {
            let r = RootSystem::build(t);
            let orb = r.weyl_orbit(&r.to_weight(&r.roots[r.gamma]));
            assert_eq!(orb.len(), r.short_roots().count(), "{t}");
            let orb = r.weyl_orbit(&r.to_weight(&r.roots[r.theta]));
            assert_eq!(orb.len(), r.long_roots().count(), "{t}");
        }
    }

    #[test]
    fn parabolic_index() {
        assert_eq!(rs("G2").parabolic_orbit_index(), 2);
        assert_eq!(rs("B2").parabolic_orbit_index(), 2);
        for t in all_types(8).into_iter().filter(|t| t.is_simply_laced()) {
            assert_eq!(RootSystem::build(t).parabolic_orbit_index(), 1);
        }
    }

    #[test]
    fn coxeter_orders() {
        assert_eq!(rs("A1").coxeter_matrix(), vec![vec![-1]]);
        for t in all_types(8) {
            let r = RootSystem::build(t);
            let c = r.coxeter_matrix();
            let id = identity(r.rank());
            let mut p = c.clone();
            let mut order = 1;
            while p != id {
                p = mat_mul(&p, &c);
                order += 1;
            }
            assert_eq!(order, r.h, "{t}");
        }
    }

    #[test]
    fn duality() {
        let b3 = rs("B3");
        let c3 = b3.dual();
        assert_eq!(c3.cartan_type.to_string(), "C3");
        assert_eq!(c3.cartan, rs("C3").cartan);
        for t in all_types(8) {
            let r = RootSystem::build(t);
            let d = r.dual();
            let transpose: Vec<Vec<i64>> = (0..r.rank()).map(|i| (0..r.rank()).map(|j| r.cartan[j][i]).collect()).collect();
            assert_eq!(d.cartan, transpose);
            assert_eq!(d.dual(), r);
            // the dual roots are the coroots
            let mut a: Vec<Vector> = d.roots.clone();
            let mut b: Vec<Vector> = r.coroots.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
        assert_eq!(rs("G2").dual().cartan_type.to_string(), "G2");
    }
}
