use std::collections::BTreeSet;

use num_integer::binomial;
use semigroup_census::closed::*;
use semigroup_census::tree::{self, TreeConfig};
use semigroup_census::Semigroup;

fn genus_members(g: u32) -> Vec<Semigroup> {
    let mut v = Vec::new();
    tree::enumerate(g, &TreeConfig::default(), |s| v.push(s.clone())).unwrap();
    v
}

/// Every choice of `γ` odd numbers in `[2γ + 1, 6γ − 1]`, kept when the
/// assembled set passes the generic closure check.
fn brute_force_fiber(t: &Semigroup) -> BTreeSet<Vec<u32>> {
    let gamma = t.genus();
    let odds: Vec<u32> = (2 * gamma + 1..6 * gamma).step_by(2).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << odds.len() {
        if mask.count_ones() != gamma {
            continue;
        }
        let chosen: Vec<u32> =
            odds.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &o)| o).collect();
        let gaps = (1..6 * gamma).filter(|&x| {
            if x % 2 == 0 { !t.contains(x / 2) } else { !chosen.contains(&x) }
        });
        if Semigroup::from_gap_set(gaps).is_ok() {
            out.insert(chosen);
        }
    }
    out
}

#[test]
fn closed_set_maximum_bound() {
    for gamma in 0..=10 {
        for t in genus_members(gamma) {
            for b in closed_sets(&t, gamma + 1).unwrap() {
                assert!(b.max() <= 2 * gamma, "{b:?}");
                assert!(closure_failure(b.elements(), &t).is_none());
            }
        }
    }
}

#[test]
fn fiber_enumerator_matches_brute_force() {
    for gamma in 0..=6 {
        for t in genus_members(gamma) {
            let fast: BTreeSet<Vec<u32>> = fiber_odd_sets(&t).unwrap().into_iter().collect();
            let slow = brute_force_fiber(&t);
            assert_eq!(fast, slow, "{t:?}");
            for odd in &slow {
                assert!(odd_part_valid(&t, odd));
            }
        }
    }
}

#[test]
fn validator_matches_closure_on_all_choices() {
    for gamma in 1..=5 {
        let odds: Vec<u32> = (2 * gamma + 1..6 * gamma).step_by(2).collect();
        for t in genus_members(gamma) {
            for mask in 0u32..1 << odds.len() {
                if mask.count_ones() != gamma {
                    continue;
                }
                let chosen: Vec<u32> = odds
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &o)| o)
                    .collect();
                let s = assemble_fiber_element(&t, &chosen);
                let generic = Semigroup::from_gap_set(s.gaps()).is_ok();
                assert_eq!(odd_part_valid(&t, &chosen), generic, "{t:?} {chosen:?}");
            }
        }
    }
}

#[test]
fn fiber_reports_respect_binomial_bounds() {
    for gamma in 0..=8 {
        for t in genus_members(gamma) {
            let r = fiber_report(&t).unwrap();
            assert_eq!(r.total, r.per_i.iter().sum::<u64>());
            assert_eq!(r.per_i[0], 1);
            assert_eq!(r.per_i[gamma as usize], 1);
            for (i, &n) in r.per_i.iter().enumerate() {
                assert!(1 <= n && n <= binomial(gamma as u64, i as u64), "{t:?} i {i}");
            }
            if gamma <= 6 {
                assert_eq!(fiber_report_via_closed_sets(&t).unwrap(), r);
            }
        }
    }
}

#[test]
fn bijection_roundtrips() {
    for gamma in 0..=6 {
        for t in genus_members(gamma) {
            let sets = closed_sets(&t, gamma + 1).unwrap();
            let mut images = BTreeSet::new();
            for b in &sets {
                let s = semigroup_from_closed_set(b).unwrap();
                assert_eq!((s.genus(), s.gamma()), (3 * gamma, gamma));
                assert_eq!(&closed_set_from_fiber(&t, &s).unwrap(), b);
                images.insert(s);
            }
            let fiber: BTreeSet<Semigroup> = fiber(&t).unwrap().into_iter().collect();
            assert_eq!(images, fiber);
        }
    }
}

#[test]
fn tk_closed_forms_match_fibers() {
    for gamma in 1..=10 {
        let mut sum = 0;
        for k in 0..gamma {
            let r = fiber_report(&t_k(gamma, k).unwrap()).unwrap();
            assert_eq!(r.total, tk_fiber_closed_form(gamma, k), "gamma {gamma} k {k}");
            let per: Vec<u64> = (0..=gamma).map(|i| tk_fiber_per_i(gamma, k, i)).collect();
            assert_eq!(r.per_i, per, "gamma {gamma} k {k}");
            sum += r.total;
        }
        assert_eq!(sum, m_gamma(gamma));
    }
}

#[test]
fn three_routes_agree() {
    let caps = RouteCaps::default();
    let cfg = TreeConfig::default();
    for gamma in 0..=8 {
        let a = f_gamma_by_closed_sets(gamma, &caps, &cfg).unwrap();
        let b = f_gamma_by_direct_census(gamma, &caps, &cfg).unwrap();
        let c = f_gamma_by_fibers(gamma, &caps, &cfg).unwrap();
        assert_eq!((a, a), (b, c), "gamma {gamma}");
        let bd = bounds(gamma, &cfg).unwrap();
        assert!(bd.contains(a));
        assert!(bd.simple_lower <= bd.c1 && bd.c2 <= bd.simple_upper);
    }
}

#[test]
fn route_caps_are_configurable() {
    let cfg = TreeConfig::default();
    let tight = RouteCaps { direct: 2, closed_sets: 2, fibers: 2 };
    assert!(f_gamma_by_closed_sets(3, &tight, &cfg).is_err());
    assert!(f_gamma_by_fibers(3, &tight, &cfg).is_err());
    assert_eq!(f_gamma_by_direct_census(2, &tight, &cfg).unwrap(), 7);
}
