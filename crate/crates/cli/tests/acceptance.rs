//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use semigroup_census::closed::{
    bounds_from_count, f_gamma_by_closed_sets, f_gamma_by_direct_census, f_gamma_by_fibers,
    assemble_fiber_element, fiber_odd_sets, fiber_report, odd_part_valid, t_k, tk_fiber_closed_form,
    RouteCaps,
};
use semigroup_census::strata::{canonical_fiber_bijection_check, translate};
use semigroup_census::tree::{self, TreeConfig};
use semigroup_census::{Semigroup, StratumRow};
use sgcensus::golden;
use sgcensus::ratios::{ratio_rows, two_decimals};

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn config() -> TreeConfig {
    TreeConfig::default()
}

fn check(cond: bool, what: String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(what) }
}

fn members(g: u32) -> Vec<Semigroup> {
    let mut v = Vec::new();
    tree::enumerate(g, &config(), |s| v.push(s.clone())).unwrap();
    v
}

fn census() -> Vec<StratumRow> {
    tree::stratum_rows(28, &config()).unwrap()
}

fn n_g_table(rows: &[StratumRow]) -> Verdict {
    let reference = golden::strata();
    for r in &reference {
        let ours = rows[r.genus as usize].total;
        check(ours == r.total, format!("n_{} = {ours}, published {}", r.genus, r.total))?;
    }
    Ok(format!("n_0..n_27 exact, n_27 = {}", rows[27].total))
}

fn strata_table(rows: &[StratumRow]) -> Verdict {
    let mut bad = Vec::new();
    let mut cells = 0;
    for r in golden::strata() {
        let ours = &rows[r.genus as usize];
        check(ours.counts.len() == r.counts.len(), format!("genus {} width differs", r.genus))?;
        for (gamma, (&a, &b)) in ours.counts.iter().zip(&r.counts).enumerate() {
            cells += 1;
            if a != b {
                let printed_sum: u64 = r.counts.iter().sum();
                bad.push(format!(
                    "N_{gamma}({}) computed {a}, published {b} (published row sums to {printed_sum}, published n = {}, computed row sums to {})",
                    r.genus, r.total, ours.total
                ));
            }
        }
    }
    for gamma in 1..=9u32 {
        let stable = rows[3 * gamma as usize].count(gamma);
        for g in 3 * gamma..=27 {
            check(rows[g as usize].count(gamma) == stable, format!("column {gamma} not stable at {g}"))?;
        }
    }
    if bad.is_empty() {
        Ok(format!("{cells} cells exact, columns stable from 3*gamma"))
    } else {
        Err(format!("{} of {cells} cells differ: {}", bad.len(), bad.join("; ")))
    }
}

fn triple_agreement() -> Verdict {
    let caps = RouteCaps::default();
    let cfg = config();
    let reference: Vec<u64> = golden::bounds().iter().map(|b| b.f).collect();
    for gamma in 0..=14u32 {
        let closed = f_gamma_by_closed_sets(gamma, &caps, &cfg).map_err(|e| e.to_string())?;
        let expected = reference[gamma as usize];
        check(closed == expected, format!("closed sets f_{gamma} = {closed}, published {expected}"))?;
        if gamma <= 9 {
            let direct = f_gamma_by_direct_census(gamma, &caps, &cfg).map_err(|e| e.to_string())?;
            let fibers = f_gamma_by_fibers(gamma, &caps, &cfg).map_err(|e| e.to_string())?;
            check(direct == closed && fibers == closed, format!("gamma {gamma}: {direct} / {closed} / {fibers}"))?;
        }
    }
    Ok(format!("f_0..f_14 exact, f_14 = {}", reference[14]))
}

fn bounds_table(rows: &[StratumRow]) -> Verdict {
    let caps = RouteCaps::default();
    let mut c2_bad = Vec::new();
    for r in golden::bounds() {
        let b = bounds_from_count(r.gamma, rows[r.gamma as usize].total).map_err(|e| e.to_string())?;
        check(b.c1 == r.c1, format!("c1({}) = {}, published {}", r.gamma, b.c1, r.c1))?;
        let f = f_gamma_by_closed_sets(r.gamma, &caps, &config()).map_err(|e| e.to_string())?;
        check(b.contains(f), format!("f_{} = {f} outside [{}, {}]", r.gamma, b.c1, b.c2))?;
        if b.c2 != r.c2 {
            c2_bad.push(format!("c2({}) = {}, published {}", r.gamma, b.c2, r.c2));
        }
    }
    if c2_bad.is_empty() {
        Ok("c1, c2 exact for gamma <= 14; c1 <= f <= c2".into())
    } else {
        Err(format!("c1 exact and c1 <= f <= c2 hold, but {}", c2_bad.join("; ")))
    }
}

fn example_fiber() -> Verdict {
    let t = Semigroup::from_gap_set([1, 2, 3, 6]).map_err(|e| e.to_string())?;
    let r = fiber_report(&t).map_err(|e| e.to_string())?;
    check(r.per_i == [1, 2, 3, 3, 1] && r.total == 10, format!("{:?}", r.per_i))?;
    for gamma in 1..=10u32 {
        for k in 0..gamma {
            let got = fiber_report(&t_k(gamma, k).unwrap()).unwrap().total;
            let want = tk_fiber_closed_form(gamma, k);
            check(got == want, format!("gamma {gamma}, k {k}: {got} against {want}"))?;
        }
    }
    Ok("(1,2,3,3,1) total 10; T_k closed form for gamma <= 10".into())
}

fn translation_bijection() -> Verdict {
    let cfg = config();
    for gamma in 1..=6u32 {
        let full = tree::stratum(3 * gamma, gamma, &cfg).unwrap();
        let top: HashSet<Semigroup> = full.iter().cloned().collect();
        for g in 3 * gamma..=3 * gamma + 4 {
            let t = 2 * g as i64 - 6 * gamma as i64;
            let domain = tree::stratum(g, gamma, &cfg).unwrap();
            check(domain.len() == full.len(), format!("N_{gamma}({g}) = {}", domain.len()))?;
            for s in &domain {
                let img = translate(s, t).map_err(|e| e.to_string())?;
                check(top.contains(&img), format!("image of {s} outside the top stratum"))?;
                check(translate(&img, -t).ok().as_ref() == Some(s), format!("roundtrip fails at {s}"))?;
            }
        }
        for g in (3 * gamma).div_ceil(2)..3 * gamma {
            let t = 2 * g as i64 - 6 * gamma as i64;
            let w = Semigroup::from_generators(&[4, 2 * gamma + 1]).unwrap();
            check(top.contains(&w), format!("<4,{}> not in the top stratum", 2 * gamma + 1))?;
            let domain: HashSet<Semigroup> = tree::stratum(g, gamma, &cfg).unwrap().into_iter().collect();
            let preimage = translate(&w, -t).ok().filter(|p| domain.contains(p));
            check(preimage.is_none(), format!("gamma {gamma}, genus {g}: witness has a preimage"))?;
            check(domain.len() < top.len(), format!("N_{gamma}({g}) not below N_{gamma}({})", 3 * gamma))?;
            let r = canonical_fiber_bijection_check(gamma, g, &cfg).unwrap();
            check(r.injective && !r.bijective && r.witness == Some(w), format!("check disagrees at {gamma}, {g}"))?;
        }
    }
    Ok("roundtrip on 3g..3g+4, witnesses below 3g, gamma <= 6".into())
}

/// Gap sets of size `g` inside `[1, 2g - 1]` with additively closed complement.
fn brute_gap_sets(g: u32) -> BTreeSet<Vec<u32>> {
    if g == 0 {
        return [Vec::new()].into();
    }
    let top = 2 * g - 1;
    (0u32..1 << top)
        .filter(|m| m.count_ones() == g)
        .filter_map(|m| {
            let member = |x: u32| x == 0 || x > top || m >> (x - 1) & 1 == 0;
            let ok = (1..=top).all(|a| !member(a) || (a..=top - a).all(|b| !member(b) || member(a + b)));
            ok.then(|| (1..=top).filter(|&x| !member(x)).collect())
        })
        .collect()
}

fn property_suite(rows: &[StratumRow]) -> Verdict {
    for g in 0..=9 {
        let ours: BTreeSet<Vec<u32>> = members(g).iter().map(Semigroup::gaps).collect();
        check(ours == brute_gap_sets(g), format!("genus {g} differs from brute force"))?;
    }
    for gamma in 1..=6u32 {
        let odds: Vec<u32> = (2 * gamma + 1..6 * gamma).step_by(2).collect();
        for t in members(gamma) {
            let found: BTreeSet<Vec<u32>> = fiber_odd_sets(&t).unwrap().into_iter().collect();
            let mut valid = BTreeSet::new();
            for m in (0u32..1 << odds.len()).filter(|m| m.count_ones() == gamma) {
                let chosen: Vec<u32> = (0..odds.len()).filter(|i| m >> i & 1 == 1).map(|i| odds[i]).collect();
                let generic = Semigroup::from_gap_set(assemble_fiber_element(&t, &chosen).gaps()).is_ok();
                check(generic == odd_part_valid(&t, &chosen), format!("validator differs on {t} {chosen:?}"))?;
                if generic {
                    valid.insert(chosen);
                }
            }
            check(found == valid, format!("fiber enumerator differs on {t}"))?;
        }
    }
    for g in 0..=12 {
        for s in members(g) {
            let p = s.even_gap_profile();
            let (gi, c) = (g as i64, p.gamma as i64);
            check(p.odd_nongaps.len() as i64 == c, format!("{s}: odd nongap count"))?;
            for (i, &o) in p.odd_nongaps.iter().enumerate() {
                check(o as i64 <= 2 * gi - 2 * (i as i64 + 1) + 1, format!("{s}: o_{} = {o}", i + 1))?;
            }
            if c >= 1 {
                let e = *p.even_gaps.last().unwrap() as i64;
                check(e <= (4 * c - 2).min(4 * gi - 4 * c), format!("{s}: largest even gap {e}"))?;
                let o = p.smallest_odd_nongap.unwrap() as i64;
                check(o >= ((2 * gi - 4 * c).abs() + 1).max(3), format!("{s}: smallest odd nongap {o}"))?;
            }
        }
    }
    let n = |gamma: u32, g: u32| rows[g as usize].count(gamma);
    check(n(1, 2) == 1 && (3..=27).all(|g| n(1, g) == 2), "one even gap family".into())?;
    check(n(2, 4) == 4 && n(2, 5) == 6 && (6..=27).all(|g| n(2, g) == 7), "two even gap families".into())?;
    for gamma in 2..=18u32 {
        let g = (3 * gamma).div_ceil(2);
        let want = if gamma % 2 == 0 { 1 } else { (gamma as u64).div_ceil(2) + 1 };
        check(n(gamma, g) == want, format!("N_{gamma}({g}) = {}, expected {want}", n(gamma, g)))?;
    }
    Ok("tree = brute force (g <= 9); validator = closure (gamma <= 6); bounds (g <= 12); families".into())
}

fn ratio_table(rows: &[StratumRow]) -> Verdict {
    let reference = golden::ratios();
    let caps = RouteCaps::default();
    let f: Vec<u64> = (0..=14).map(|g| f_gamma_by_closed_sets(g, &caps, &config()).unwrap()).collect();
    let n2g: Vec<u64> = (0..=14).map(|g| rows[2 * g].total).collect();
    let text = |r: Option<_>| r.map(two_decimals).unwrap_or_default();
    for (ours, (gamma, pf, pn, printed)) in ratio_rows(&f, &n2g).iter().zip(&reference) {
        check(ours.f == *pf && ours.n2g == *pn, format!("gamma {gamma}: f or n_2gamma differs"))?;
        let mine = [text(ours.ratio_prev), two_decimals(ours.ratio_n), text(ours.ratio_partial_sum)];
        check(&mine == printed, format!("gamma {gamma}: {mine:?} against {printed:?}"))?;
    }
    Ok("all ratio columns match to 2 decimals, gamma <= 14".into())
}

fn main() {
    let start = Instant::now();
    let rows = census();
    let criteria: Vec<Criterion> = vec![
        ("1 n_g for g <= 27", Box::new(|| n_g_table(&rows))),
        ("2 N_gamma(g) matrix for g <= 27", Box::new(|| strata_table(&rows))),
        ("3 f_gamma by three routes", Box::new(triple_agreement)),
        ("4 bounds c1, c2", Box::new(|| bounds_table(&rows))),
        ("5 example fiber and T_k closed form", Box::new(example_fiber)),
        ("6 translation bijection", Box::new(translation_bijection)),
        ("7 oracle equivalence and property suite", Box::new(|| property_suite(&rows))),
        ("8 ratio diagnostics", Box::new(|| ratio_table(&rows))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let verdict = run();
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS [{name}] {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{name}] {detail} ({secs:.2}s)");
            }
        }
    }
    println!("EXCLUDED [9 asymptotic limits] not computable at finite size; see criterion 8");
    println!("acceptance: {} passed, {failed} failed ({:.1}s)", criteria.len() - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
