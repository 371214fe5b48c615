//! Root censuses behind the Euler characteristics of the quasi-minuscule and
//! adjoint Kloosterman local systems, and the Swan conductors they imply.
//!
//! Every census runs on the root system of `G`; the Swan predictions are
//! stated for the dual group and cross-checked against the census of its dual.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{KlError, Result};
use crate::repweights::RepLabel;
use crate::rootsys::{Family, RootSystem};

/// Euler characteristic of `P^1`.
pub const CHI_P1: i64 = 2;
/// Euler characteristic of the projective cone over `P^1` (a point plus a line bundle over `P^1`).
pub const CHI_CONE_P1: i64 = 3;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CensusReport {
    pub type_label: String,
    pub rep: String,
    pub case_counts: BTreeMap<String, i64>,
    pub predicted_minus_chi: i64,
    pub matches_theorem: bool,
    /// The adjoint statement is only claimed in good characteristic.
    pub good_char_required: bool,
}

fn root_name(rs: &RootSystem, i: usize) -> String {
    format!("{:?}", rs.roots[i])
}

/// Quasi-minuscule census: each long root `beta != -theta` contributes `-1`
/// exactly when it is a simple root.
pub fn qm_census(rs: &RootSystem) -> Result<CensusReport> {
    let neg_theta = rs.negate(rs.theta);
    let (mut case1, mut case2, mut case3) = (0i64, 0i64, 0i64);
    let mut contribution = 0i64;
    for beta in rs.long_roots().filter(|&b| b != neg_theta) {
        let ht = rs.height(beta);
        if ht > 0 && !rs.is_simple(beta) {
            case1 += 1;
        } else if rs.is_simple(beta) {
            case2 += 1;
            contribution -= 1;
        } else {
            // a simple alpha_i with beta - alpha_i a root, and alpha = alpha_i - beta
            // positive with <alpha, beta^vee> < 0
            let witness = (0..rs.rank()).find(|&i| {
                let ai = &rs.roots[rs.simple(i)];
                let diff: Vec<i64> = rs.roots[beta].iter().zip(ai).map(|(b, a)| b - a).collect();
                let alpha: Vec<i64> = diff.iter().map(|x| -x).collect();
                rs.index_of(&diff).is_some()
                    && rs.index_of(&alpha).is_some_and(|a| rs.height(a) > 0 && rs.pair(a, beta) < 0)
            });
            if witness.is_none() {
                return Err(KlError::CensusFailure(format!(
                    "{}: negative long root {} has no simple root to peel",
                    rs.cartan_type,
                    root_name(rs, beta)
                )));
            }
            case3 += 1;
        }
    }
    let minus_chi = -contribution;
    let case_counts = [
        ("case_I_positive_nonsimple".to_string(), case1),
        ("case_II_simple_long".to_string(), case2),
        ("case_III_negative".to_string(), case3),
    ]
    .into_iter()
    .collect();
    Ok(CensusReport {
        type_label: rs.cartan_type.to_string(),
        rep: "quasi-minuscule".into(),
        case_counts,
        predicted_minus_chi: minus_chi,
        matches_theorem: case2 == rs.r_l as i64 && minus_chi == rs.r_l as i64,
        good_char_required: false,
    })
}

/// `Phi^beta_2` with the structure checks: totally ordered by dominance,
/// stable under `beta' -> 2 beta - beta'`, and long apart from `beta`.
pub fn phi_beta_two(rs: &RootSystem, beta: usize) -> Result<Vec<usize>> {
    let mut set = rs.phi_level(beta, 2);
    set.sort_by_key(|&i| rs.height(i));
    let fail = |msg: &str| {
        Err(KlError::CensusFailure(format!(
            "{}: Phi^beta_2 for beta = {} {msg}",
            rs.cartan_type,
            root_name(rs, beta)
        )))
    };
    for w in set.windows(2) {
        let diff: Vec<i64> = rs.roots[w[1]].iter().zip(&rs.roots[w[0]]).map(|(a, b)| a - b).collect();
        if diff.iter().any(|&x| x < 0) || diff.iter().all(|&x| x == 0) {
            return fail("is not totally ordered");
        }
    }
    for &b in &set {
        let refl: Vec<i64> = rs.roots[beta].iter().zip(&rs.roots[b]).map(|(x, y)| 2 * x - y).collect();
        match rs.index_of(&refl) {
            Some(i) if set.contains(&i) => {}
            _ => return fail("is not stable under the involution"),
        }
        if b != beta && !rs.is_long(b) {
            return fail("contains a short root other than beta");
        }
    }
    if !set.contains(&beta) {
        return fail("does not contain beta");
    }
    Ok(set)
}

/// Adjoint census for types B, C and F4.
pub fn adjoint_census(rs: &RootSystem) -> Result<CensusReport> {
    let t = rs.cartan_type;
    if !matches!(t.family, Family::B | Family::C | Family::F) {
        return Err(KlError::WrongType(t.to_string()));
    }
    let short: Vec<usize> = rs.short_roots().collect();
    let mut with_simple = 0i64;
    let mut n_s = 0i64;
    let mut n_l = 0i64;
    let mut n_theta = 0i64;
    for &beta in &short {
        let set = phi_beta_two(rs, beta)?;
        let simples: Vec<usize> = set.iter().copied().filter(|&i| rs.is_simple(i)).collect();
        if simples.len() > 1 {
            return Err(KlError::CensusFailure(format!(
                "{t}: Phi^beta_2 for beta = {} holds {} simple roots",
                root_name(rs, beta),
                simples.len()
            )));
        }
        if let Some(&s) = simples.first() {
            with_simple += 1;
            if rs.is_long(s) {
                n_l += 1;
            } else {
                n_s += 1;
            }
        }
        if set.contains(&rs.theta) {
            n_theta += 1;
        }
    }
    let index = rs.parabolic_orbit_index() as i64;
    let r_s = rs.r_s as i64;
    let r_l = rs.r_l as i64;
    let gamma_part = with_simple - r_l * index;
    let minus_chi = r_l + gamma_part;
    let case_counts = [
        ("short_roots".to_string(), short.len() as i64),
        ("short_with_simple_in_phi2".to_string(), with_simple),
        ("N_s".to_string(), n_s),
        ("N_l".to_string(), n_l),
        ("N_theta".to_string(), n_theta),
        ("parabolic_index".to_string(), index),
        ("minus_chi_gamma_stratum".to_string(), gamma_part),
        ("minus_chi_theta_stratum".to_string(), r_l),
    ]
    .into_iter()
    .collect();
    let matches = n_s == r_s
        && n_theta == index
        && n_l == r_l * index
        && gamma_part == r_s
        && minus_chi == rs.rank() as i64;
    Ok(CensusReport {
        type_label: t.to_string(),
        rep: "adjoint".into(),
        case_counts,
        predicted_minus_chi: minus_chi,
        matches_theorem: matches,
        good_char_required: true,
    })
}

fn has_simple_at_or_above(rs: &RootSystem, beta: usize, level: i64) -> bool {
    (0..rs.roots.len()).any(|a| rs.pair(a, beta) >= level && rs.is_simple(a))
}

/// The G2 adjoint computation, solved from the two resolution identities.
pub fn g2_census() -> Result<CensusReport> {
    let rs = RootSystem::from_label("G2")?;
    let qm = qm_census(&rs)?;
    let chi_theta_stratum = -qm.predicted_minus_chi;

    // Step I: short roots with no simple root in Phi^beta_{>=2}
    let step1_count = rs
        .short_roots()
        .filter(|&b| !has_simple_at_or_above(&rs, b, 2))
        .count() as i64;
    let chi_g_mod_p_gamma = rs.short_roots().count() as i64;
    let chi_gamma_orbit = step1_count - chi_g_mod_p_gamma - CHI_P1 * chi_theta_stratum;

    // Step II: long roots with no simple root in Phi^alpha_{>=1}
    let step2_roots: Vec<usize> = rs
        .long_roots()
        .filter(|&a| !has_simple_at_or_above(&rs, a, 1))
        .collect();
    let step2_count = step2_roots.len() as i64;
    let chi_g_mod_p_theta = rs.long_roots().count() as i64;
    let chi_subregular = step2_count
        - chi_g_mod_p_theta
        - CHI_P1 * chi_gamma_orbit
        - CHI_CONE_P1 * chi_theta_stratum;

    let minus_chi_gamma = -(chi_gamma_orbit + chi_subregular);
    let minus_chi = qm.predicted_minus_chi + minus_chi_gamma;
    let only_neg_theta = step2_roots == vec![rs.negate(rs.theta)];
    let case_counts = [
        ("step1_short_roots_without_simple".to_string(), step1_count),
        ("step1_chi_G_mod_P_gamma".to_string(), chi_g_mod_p_gamma),
        ("step1_chi_gamma_orbit".to_string(), chi_gamma_orbit),
        ("step2_long_roots_without_simple".to_string(), step2_count),
        ("step2_chi_G_mod_P_theta".to_string(), chi_g_mod_p_theta),
        ("step2_chi_subregular".to_string(), chi_subregular),
        ("fiber_chi_P1".to_string(), CHI_P1),
        ("fiber_chi_cone".to_string(), CHI_CONE_P1),
        ("minus_chi_gamma_stratum".to_string(), minus_chi_gamma),
        ("minus_chi_theta_stratum".to_string(), qm.predicted_minus_chi),
    ]
    .into_iter()
    .collect();
    Ok(CensusReport {
        type_label: "G2".into(),
        rep: "adjoint".into(),
        case_counts,
        predicted_minus_chi: minus_chi,
        matches_theorem: step1_count == 3
            && only_neg_theta
            && chi_gamma_orbit == -1
            && chi_subregular == 0
            && minus_chi_gamma == rs.r_s as i64
            && minus_chi == 2,
        good_char_required: true,
    })
}

/// Census of `G` for the given representation of its dual.
pub fn census(rs: &RootSystem, rep: RepLabel) -> Result<CensusReport> {
    match rep {
        RepLabel::Qm => qm_census(rs),
        RepLabel::Adjoint => match rs.cartan_type.family {
            Family::A | Family::D | Family::E => {
                let mut r = qm_census(rs)?;
                r.rep = "adjoint".into();
                r.matches_theorem &= r.predicted_minus_chi == rs.rank() as i64;
                Ok(r)
            }
            Family::G => g2_census(),
            _ => adjoint_census(rs),
        },
        RepLabel::Standard => Err(KlError::UnsupportedRep("census covers qm and adjoint only".into())),
    }
}

/// Swan conductor at infinity: `r_s(dual)` for the quasi-minuscule
/// representation and `rank(dual)` for the adjoint, cross-checked against the
/// census of the group dual to `rs_dual`.
pub fn swan_prediction(rs_dual: &RootSystem, rep: RepLabel) -> Result<i64> {
    let predicted = match rep {
        RepLabel::Qm => rs_dual.r_s as i64,
        RepLabel::Adjoint => rs_dual.rank() as i64,
        RepLabel::Standard => return Err(KlError::UnsupportedRep("standard".into())),
    };
    let g = rs_dual.dual();
    let report = census(&g, rep)?;
    if !report.matches_theorem || report.predicted_minus_chi != predicted {
        return Err(KlError::CensusFailure(format!(
            "{}: census gives -chi = {}, expected Swan {predicted}",
            g.cartan_type, report.predicted_minus_chi
        )));
    }
    Ok(predicted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::all_types;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    #[test]
    fn qm_examples() {
        let r = qm_census(&rs("G2")).unwrap();
        assert_eq!(r.case_counts["case_II_simple_long"], 1);
        assert_eq!(r.predicted_minus_chi, 1);
        for n in 1..=8 {
            let r = qm_census(&rs(&format!("A{n}"))).unwrap();
            assert_eq!(r.predicted_minus_chi, n as i64);
            assert!(r.matches_theorem);
        }
        let r = qm_census(&rs("B2")).unwrap();
        assert_eq!(r.case_counts["case_II_simple_long"], 1);
        assert_eq!(r.predicted_minus_chi, 1);
        let r = qm_census(&rs("E8")).unwrap();
        assert_eq!(r.predicted_minus_chi, 8);
    }

    #[test]
    fn qm_all_types() {
        for t in all_types(8) {
            let r = RootSystem::build(t);
            let c = qm_census(&r).unwrap();
            assert!(c.matches_theorem, "{t}");
            assert_eq!(c.predicted_minus_chi, r.r_l as i64);
            let total: i64 = c.case_counts.values().sum();
            assert_eq!(total as usize, r.long_roots().count() - 1);
        }
    }

    #[test]
    fn adjoint_examples() {
        let b2 = adjoint_census(&rs("B2")).unwrap();
        assert_eq!(b2.case_counts["parabolic_index"], 2);
        assert_eq!(b2.predicted_minus_chi, 2);
        assert!(b2.matches_theorem);
        let f4 = adjoint_census(&rs("F4")).unwrap();
        assert_eq!(f4.predicted_minus_chi, 4);
        assert!(f4.matches_theorem);
        let c3 = adjoint_census(&rs("C3")).unwrap();
        assert_eq!(c3.case_counts["N_s"], 2);
        assert_eq!(c3.case_counts["N_s"], rs("C3").r_s as i64);
        assert!(matches!(adjoint_census(&rs("G2")), Err(KlError::WrongType(_))));
        assert!(matches!(adjoint_census(&rs("D4")), Err(KlError::WrongType(_))));
    }

    #[test]
    fn adjoint_b_c_series() {
        for n in 2..=8 {
            for fam in ["B", "C"] {
                let r = rs(&format!("{fam}{n}"));
                let c = adjoint_census(&r).unwrap();
                assert!(c.matches_theorem, "{fam}{n}: {:?}", c.case_counts);
                assert_eq!(c.predicted_minus_chi, n as i64);
            }
        }
    }

    #[test]
    fn phi_beta_two_structure() {
        for l in ["B3", "C4", "F4", "G2"] {
            let r = rs(l);
            for b in r.short_roots() {
                let set = phi_beta_two(&r, b).unwrap();
                let heights: Vec<i64> = set.iter().map(|&i| r.height(i)).collect();
                assert!(heights.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn g2_resolution_counts() {
        let r = g2_census().unwrap();
        assert_eq!(r.case_counts["step1_short_roots_without_simple"], 3);
        assert_eq!(r.case_counts["step2_long_roots_without_simple"], 1);
        assert_eq!(r.case_counts["step1_chi_G_mod_P_gamma"], 6);
        assert_eq!(r.case_counts["step2_chi_G_mod_P_theta"], 6);
        assert_eq!(r.case_counts["step1_chi_gamma_orbit"], -1);
        assert_eq!(r.case_counts["step2_chi_subregular"], 0);
        assert_eq!(r.case_counts["minus_chi_gamma_stratum"], 1);
        assert_eq!(r.predicted_minus_chi, 2);
        assert!(r.matches_theorem);
    }

    #[test]
    fn swan_predictions() {
        assert_eq!(swan_prediction(&rs("G2"), RepLabel::Qm).unwrap(), 1);
        assert_eq!(swan_prediction(&rs("E8"), RepLabel::Adjoint).unwrap(), 8);
        assert_eq!(swan_prediction(&rs("A1"), RepLabel::Qm).unwrap(), 1);
        for t in all_types(8) {
            let r = RootSystem::build(t);
            assert_eq!(swan_prediction(&r, RepLabel::Qm).unwrap(), r.r_s as i64, "{t}");
            assert_eq!(swan_prediction(&r, RepLabel::Adjoint).unwrap(), r.rank() as i64, "{t}");
        }
    }
}
