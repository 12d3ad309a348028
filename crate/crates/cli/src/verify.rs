//! Exhaustive invariant checks over everything enumerable at the requested
//! sizes.

use num_integer::binomial;
use semigroup_census::closed::{
    assemble_fiber_element, bounds_from_count, closed_sets, f_gamma_by_closed_sets,
    f_gamma_by_direct_census, f_gamma_by_fibers, fiber_odd_sets, fiber_report, m_gamma,
    odd_part_valid, t_k, tk_fiber_closed_form, tk_fiber_per_i, RouteCaps,
};
use semigroup_census::strata::{
    canonical_fiber_bijection_check, double_with_tail, one_half, stohr_symmetric, HalfDecomposition,
};
use semigroup_census::tree::{self, monotonicity_report, TreeConfig};
use semigroup_census::{Error, Semigroup, StratumRow};

use crate::golden;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    /// First failure found, with a witness when one exists.
    pub failure: Option<String>,
    pub note: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn witness(s: &Semigroup) -> String {
    format!("{} = {}", s, HalfDecomposition::new(s))
}

type Check = (&'static str, fn(&Semigroup) -> bool);

/// Per-semigroup properties, checked on every semigroup of each genus.
const SEMIGROUP_CHECKS: &[Check] = &[
    ("large members", |s| {
        let g = s.genus();
        (2 * g..2 * g + 8).all(|x| s.contains(x)) && (g == 0 || s.frobenius() < 2 * g as i32)
    }),
    ("gap parity counts", |s| {
        let g = s.genus();
        let p = s.even_gap_profile();
        let odd_members = (1..=2 * g).filter(|&x| x % 2 == 1 && s.contains(x)).count() as u32;
        let even_gaps = s.gaps().iter().filter(|&&x| x % 2 == 0).count() as u32;
        odd_members == p.gamma && even_gaps == p.gamma && p.odd_nongaps.len() as u32 == p.gamma
    }),
    ("odd nongap positions", |s| {
        let g = s.genus() as i64;
        let p = s.even_gap_profile();
        p.odd_nongaps.iter().enumerate().all(|(i, &o)| o as i64 <= 2 * g - 2 * (i as i64 + 1) + 1)
    }),
    ("largest even gap", |s| {
        let (g, p) = (s.genus() as i64, s.even_gap_profile());
        let gamma = p.gamma as i64;
        p.even_gaps.last().is_none_or(|&e| e as i64 <= (4 * gamma - 2).min(4 * g - 4 * gamma))
    }),
    ("smallest odd nongap", |s| {
        let (g, p) = (s.genus() as i64, s.even_gap_profile());
        let gamma = p.gamma as i64;
        match p.smallest_odd_nongap {
            None => gamma == 0,
            Some(o) => o as i64 >= ((2 * g - 4 * gamma).abs() + 1).max(3),
        }
    }),
    ("strata width", |s| 2 * s.genus() >= 3 * s.gamma()),
    ("no even gaps means hyperelliptic", |s| {
        if s.gamma() != 0 {
            return true;
        }
        match s.genus() {
            0 => *s == Semigroup::naturals(),
            g => Semigroup::from_generators(&[2, 2 * g + 1]).is_ok_and(|h| h == *s),
        }
    }),
    ("half has genus gamma", |s| one_half(s).genus() == s.gamma()),
    ("odd-part reassembly", |s| HalfDecomposition::new(s).reassemble().is_ok_and(|r| r == *s)),
];

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut bad: impl FnMut(&T) -> Option<String>) -> Option<String> {
    items.into_iter().find_map(|x| bad(&x))
}

fn members(gamma: u32, config: &TreeConfig) -> Result<Vec<Semigroup>, Error> {
    let mut v = Vec::new();
    tree::enumerate(gamma, config, |s| v.push(s.clone()))?;
    Ok(v)
}

pub struct Verifier<'a> {
    pub max_genus: u32,
    pub max_gamma: u32,
    pub config: &'a TreeConfig,
    pub caps: &'a RouteCaps,
    /// Census rows `0..=max(max_genus, 3 * max_gamma)`.
    pub rows: &'a [StratumRow],
}

impl Verifier<'_> {
    pub fn run(&self) -> Result<Vec<Outcome>, Error> {
        let mut out = self.semigroup_checks()?;
        out.push(self.outcome("census rows", Self::census_rows));
        out.push(self.reference_table());
        out.push(self.outcome("column stabilization", Self::stabilization));
        out.push(self.outcome("small strata families", Self::families));
        out.push(self.outcome("growth window", Self::growth));
        out.push(self.fallible("translation bijection", Self::translation)?);
        out.push(self.fallible("doubling", Self::doubling)?);
        out.push(self.fallible("symmetric construction", Self::symmetric)?);
        out.push(self.fallible("closed-set maximum", Self::closed_max)?);
        out.push(self.fallible("fiber bucket bounds", Self::fiber_bounds)?);
        out.push(self.fallible("odd-set validator", Self::validator)?);
        out.push(self.fallible("T_k fiber counts", Self::tk)?);
        out.push(self.fallible("three routes agree", Self::routes)?);
        Ok(out)
    }

    fn outcome(&self, name: &'static str, f: fn(&Self) -> Option<String>) -> Outcome {
        Outcome { name, failure: f(self), note: None }
    }

    fn fallible(&self, name: &'static str, f: fn(&Self) -> Result<Option<String>, Error>) -> Result<Outcome, Error> {
        match f(self) {
            Ok(failure) => Ok(Outcome { name, failure, note: None }),
            Err(e @ (Error::BudgetExceeded { .. } | Error::RouteCapExceeded { .. })) => Err(e),
            Err(e) => Ok(Outcome { name, failure: Some(e.to_string()), note: None }),
        }
    }

    fn semigroup_checks(&self) -> Result<Vec<Outcome>, Error> {
        let mut failures: Vec<Option<String>> = vec![None; SEMIGROUP_CHECKS.len()];
        for g in 0..=self.max_genus {
            tree::enumerate(g, self.config, |s| {
                for (slot, (_, check)) in failures.iter_mut().zip(SEMIGROUP_CHECKS) {
                    if slot.is_none() && !check(s) {
                        *slot = Some(witness(s));
                    }
                }
            })?;
        }
        Ok(SEMIGROUP_CHECKS.iter().zip(failures).map(|(&(name, _), failure)| Outcome { name, failure, note: None }).collect())
    }

    fn row(&self, g: u32) -> &StratumRow {
        &self.rows[g as usize]
    }

    fn census_rows(&self) -> Option<String> {
        first_failure(&self.rows[..=self.max_genus as usize], |r| {
            let g = r.genus as u64;
            let dyck = binomial(2 * g, g) / (g + 1);
            if r.counts.iter().sum::<u64>() != r.total || r.counts.len() as u64 != 2 * g / 3 + 1 {
                Some(format!("row {g} is inconsistent"))
            } else if r.total > dyck {
                Some(format!("n_{g} = {} exceeds the Catalan bound {dyck}", r.total))
            } else {
                None
            }
        })
    }

    /// Cell-by-cell comparison with the published table. A differing cell in
    /// a published row that contradicts its own total, where the computed row
    /// matches that total, is reported as a misprint rather than a failure.
    fn reference_table(&self) -> Outcome {
        let mut failure = None;
        let mut notes = Vec::new();
        for r in golden::strata().iter().take(self.max_genus as usize + 1) {
            let ours = self.row(r.genus);
            if ours.total != r.total || ours.counts.len() != r.counts.len() {
                failure = Some(format!("genus {}: computed {:?}, reference {:?}", r.genus, ours.counts, r.counts));
                break;
            }
            let misprint = r.counts.iter().sum::<u64>() != r.total;
            for (gamma, (&a, &b)) in ours.counts.iter().zip(&r.counts).enumerate() {
                if a == b {
                    continue;
                }
                let text = format!("N_{gamma}({}) computed {a}, published {b}", r.genus);
                if misprint {
                    notes.push(format!("{text}; the published row sums to {} but its total is {}", r.counts.iter().sum::<u64>(), r.total));
                } else {
                    failure.get_or_insert(text);
                }
            }
        }
        let note = (!notes.is_empty()).then(|| notes.join("; "));
        Outcome { name: "reference table", failure, note }
    }

    fn stabilization(&self) -> Option<String> {
        let top = self.rows.len() as u32 - 1;
        first_failure(1..=top / 3, |&gamma| {
            let stable = self.row(3 * gamma).count(gamma);
            first_failure((3 * gamma).div_ceil(2)..=top, |&g| {
                let n = self.row(g).count(gamma);
                let ok = if g >= 3 * gamma { n == stable } else { n < stable };
                (!ok).then(|| format!("N_{gamma}({g}) = {n} against N_{gamma}({}) = {stable}", 3 * gamma))
            })
        })
    }

    fn families(&self) -> Option<String> {
        let top = self.rows.len() as u32 - 1;
        let expect = |gamma: u32, g: u32| -> Option<u64> {
            match (gamma, g) {
                (1, 2) => Some(1),
                (1, _) if g >= 3 => Some(2),
                (2, 4) => Some(4),
                (2, 5) => Some(6),
                (2, _) if g >= 6 => Some(7),
                _ if gamma >= 2 && g == (3 * gamma).div_ceil(2) => {
                    Some(if gamma % 2 == 0 { 1 } else { (gamma as u64).div_ceil(2) + 1 })
                }
                _ => None,
            }
        };
        first_failure((0..=top).flat_map(|g| (1..=2 * g / 3).map(move |c| (c, g))), |&(gamma, g)| {
            let n = self.row(g).count(gamma);
            expect(gamma, g).filter(|&e| e != n).map(|e| format!("N_{gamma}({g}) = {n}, expected {e}"))
        })
    }

    fn growth(&self) -> Option<String> {
        let steps = monotonicity_report(&self.rows[..=self.max_genus as usize]);
        first_failure(steps.iter().skip(1), |s| {
            (!s.increasing() || !s.window_holds()).then(|| format!("genus {}: {:?}", s.genus, s.window))
        })
    }

    fn translation(&self) -> Result<Option<String>, Error> {
        for gamma in 1..=self.max_gamma {
            for g in (3 * gamma).div_ceil(2)..=3 * gamma + 2 {
                let r = canonical_fiber_bijection_check(gamma, g, self.config)?;
                let expected = g >= 3 * gamma;
                if !r.injective || r.bijective != expected || (!expected && r.witness.is_none()) {
                    let at = r.counterexample.as_ref().map(witness).unwrap_or_default();
                    return Ok(Some(format!("gamma {gamma}, genus {g}: {at}")));
                }
            }
        }
        Ok(None)
    }

    fn doubling(&self) -> Result<Option<String>, Error> {
        for gamma in 0..=self.max_gamma {
            for t in members(gamma, self.config)? {
                let s = double_with_tail(&t, 3 * gamma)?;
                if one_half(&s) != t || s.genus() != 3 * gamma {
                    return Ok(Some(witness(&s)));
                }
            }
        }
        Ok(None)
    }

    fn symmetric(&self) -> Result<Option<String>, Error> {
        for gamma in 0..=self.max_gamma {
            for t in members(gamma, self.config)? {
                for g in [3 * gamma, 3 * gamma + 1] {
                    let s = stohr_symmetric(&t, g)?;
                    if !s.is_symmetric() || s.gamma() != gamma || one_half(&s) != t {
                        return Ok(Some(witness(&s)));
                    }
                }
            }
        }
        Ok(None)
    }

    fn closed_max(&self) -> Result<Option<String>, Error> {
        for gamma in 0..=self.max_gamma {
            for t in members(gamma, self.config)? {
                if let Some(b) = closed_sets(&t, gamma + 1)?.into_iter().find(|b| b.max() > 2 * gamma) {
                    return Ok(Some(format!("{b:?}")));
                }
            }
        }
        Ok(None)
    }

    fn fiber_bounds(&self) -> Result<Option<String>, Error> {
        for gamma in 0..=self.max_gamma {
            for t in members(gamma, self.config)? {
                let r = fiber_report(&t)?;
                let g = gamma as usize;
                let within = r.per_i.iter().enumerate().all(|(i, &n)| n >= 1 && n <= binomial(g as u64, i as u64));
                if !within || r.per_i[0] != 1 || r.per_i[g] != 1 {
                    return Ok(Some(format!("{}: {:?}", witness(&t), r.per_i)));
                }
            }
        }
        Ok(None)
    }

    fn validator(&self) -> Result<Option<String>, Error> {
        for gamma in 1..=self.max_gamma {
            let odds: Vec<u32> = (2 * gamma + 1..6 * gamma).step_by(2).collect();
            for t in members(gamma, self.config)? {
                let mut found = fiber_odd_sets(&t)?;
                found.sort();
                let mut brute = Vec::new();
                for mask in 0u32..1 << odds.len() {
                    if mask.count_ones() != gamma {
                        continue;
                    }
                    let chosen: Vec<u32> =
                        odds.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &o)| o).collect();
                    let s = assemble_fiber_element(&t, &chosen);
                    let generic = Semigroup::from_gap_set(s.gaps()).is_ok();
                    if generic != odd_part_valid(&t, &chosen) {
                        return Ok(Some(format!("{} with odd part {chosen:?}", witness(&t))));
                    }
                    if generic {
                        brute.push(chosen);
                    }
                }
                brute.sort();
                if brute != found {
                    return Ok(Some(format!("{}: enumerator missed or added odd parts", witness(&t))));
                }
            }
        }
        Ok(None)
    }

    fn tk(&self) -> Result<Option<String>, Error> {
        for gamma in 1..=self.max_gamma {
            let mut sum = 0;
            for k in 0..gamma {
                let r = fiber_report(&t_k(gamma, k)?)?;
                let per: Vec<u64> = (0..=gamma).map(|i| tk_fiber_per_i(gamma, k, i)).collect();
                if r.total != tk_fiber_closed_form(gamma, k) || r.per_i != per {
                    return Ok(Some(format!("gamma {gamma}, k {k}: {:?} against {per:?}", r.per_i)));
                }
                sum += r.total;
            }
            if sum != m_gamma(gamma) {
                return Ok(Some(format!("gamma {gamma}: fibers sum to {sum}, expected {}", m_gamma(gamma))));
            }
        }
        Ok(None)
    }

    fn routes(&self) -> Result<Option<String>, Error> {
        for gamma in 0..=self.max_gamma {
            let a = f_gamma_by_closed_sets(gamma, self.caps, self.config)?;
            let b = f_gamma_by_direct_census(gamma, self.caps, self.config)?;
            let c = f_gamma_by_fibers(gamma, self.caps, self.config)?;
            if a != b || b != c {
                return Ok(Some(format!("gamma {gamma}: closed sets {a}, census {b}, fibers {c}")));
            }
            let bd = bounds_from_count(gamma, self.row(gamma).total)?;
            if !bd.contains(a) || bd.c1 < bd.simple_lower || bd.c2 > bd.simple_upper {
                return Ok(Some(format!("gamma {gamma}: f = {a} against {bd:?}")));
            }
        }
        Ok(None)
    }
}
