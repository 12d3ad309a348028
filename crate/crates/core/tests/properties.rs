use proptest::prelude::*;
use semigroup_census::strata::{translate, HalfDecomposition};
use semigroup_census::tree::{self, TreeConfig};
use semigroup_census::Semigroup;

fn semigroup() -> impl Strategy<Value = Semigroup> {
    prop::collection::vec(2u32..40, 1..5).prop_filter_map("gcd 1", |mut g| {
        g.push(g[0] + 1);
        Semigroup::from_generators(&g).ok()
    })
}

/// A random element of 𝒮_γ(g) with g ≥ 3γ.
fn stable_stratum_member() -> impl Strategy<Value = Semigroup> {
    (1u32..=3, 0u32..=5).prop_flat_map(|(gamma, extra)| {
        let all = tree::stratum(3 * gamma + extra, gamma, &TreeConfig::default()).unwrap();
        prop::sample::select(all)
    })
}

proptest! {
    #[test]
    fn closed_under_addition(s in semigroup(), a in 0u32..200, b in 0u32..200) {
        let f = s.frobenius().max(0) as u32;
        let (a, b) = (a % (2 * f + 1), b % (2 * f + 1));
        if s.contains(a) && s.contains(b) {
            prop_assert!(s.contains(a + b));
        }
    }

    #[test]
    fn gap_set_roundtrip(s in semigroup()) {
        prop_assert_eq!(Semigroup::from_gap_set(s.gaps()).unwrap(), s.clone());
        prop_assert_eq!(HalfDecomposition::new(&s).reassemble().unwrap(), s);
    }

    #[test]
    fn translation_roundtrip(s in stable_stratum_member()) {
        let (g, gamma) = (s.genus() as i64, s.gamma() as i64);
        let t = 2 * g - 6 * gamma;
        let img = translate(&s, t).unwrap();
        prop_assert_eq!(img.genus() as i64, 3 * gamma);
        prop_assert_eq!(img.gamma() as i64, gamma);
        prop_assert_eq!(translate(&img, -t).unwrap(), s);
    }
}
