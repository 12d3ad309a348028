//! Closed sets and the sequence `f_γ`.
//!
//! A finite `B ⊆ ℕ₀` is `S`-closed when `b + s ∈ B` or `b + s > max(B)` for
//! all `b ∈ B`, `s ∈ S`. `f_γ` sums the number of such sets of size `γ + 1`
//! containing 0 over all semigroups of genus `γ`, and equals `N_γ(3γ)`. It is
//! computed here three ways:
//!
//! 1. closed-set counting over every `T` of genus `γ`;
//! 2. the census `N_γ(3γ)` from the semigroup tree;
//! 3. fibers: for each `T`, the sets `2T ∪ 𝒪 ∪ {6γ, 6γ + 1, …}` with `𝒪` a
//!    set of `γ` odd numbers in `[2γ + 1, 6γ − 1]` such that `2t + o` is in
//!    `𝒪` or above `6γ` for every `t ∈ T`, `o ∈ 𝒪`.
//!
//! Both search routines walk positions upward and keep a "reach" mask of the
//! positions forced by what has been chosen so far. Excluding a reached
//! position is only possible when nothing larger is chosen afterwards.

use std::fmt;

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;
use crate::strata::one_half;
use crate::tree::{self, map_tasks, TreeConfig};

const WINDOW: u32 = 128;

/// An `S`-closed set containing 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClosedSet<'s> {
    elements: Vec<u32>,
    ambient: &'s Semigroup,
}

impl<'s> ClosedSet<'s> {
    pub fn new(mut elements: Vec<u32>, ambient: &'s Semigroup) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::MissingZero);
        }
        if let Some((element, step)) = closure_failure(&elements, ambient) {
            return Err(Error::NotClosed { elements, element, step });
        }
        Ok(ClosedSet { elements, ambient })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn max(&self) -> u32 {
        *self.elements.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ambient(&self) -> &'s Semigroup {
        self.ambient
    }

    fn from_mask(mask: u128, ambient: &'s Semigroup) -> Self {
        let elements = (0..WINDOW).filter(|&x| mask >> x & 1 == 1).collect();
        ClosedSet { elements, ambient }
    }
}

impl fmt::Debug for ClosedSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {}", self.elements, self.ambient)
    }
}

/// A pair `(b, s)` with `b ∈ B`, `s ∈ S`, `b + s ≤ max(B)` and `b + s ∉ B`.
pub fn closure_failure(elements: &[u32], s: &Semigroup) -> Option<(u32, u32)> {
    let top = *elements.iter().max()?;
    elements.iter().find_map(|&b| {
        (0..=top - b)
            .filter(|&step| s.contains(step))
            .find(|&step| !elements.contains(&(b + step)))
            .map(|step| (b, step))
    })
}

fn mask_of(s: &Semigroup, bound: u32) -> u128 {
    (0..=bound).filter(|&x| s.contains(x)).fold(0, |m, x| m | 1 << x)
}

fn window(bound: u32) -> u128 {
    if bound >= WINDOW - 1 { u128::MAX } else { (1u128 << (bound + 1)) - 1 }
}

/// Search state shared by both walks.
struct Walk {
    step: u128,
    window: u128,
    bound: u32,
    size: u32,
    /// Fixed-window mode: a completed set must contain everything it reaches.
    fixed: bool,
}

impl Walk {
    fn run(&self, pos: u32, count: u32, chosen: u128, reach: u128, emit: &mut impl FnMut(u128)) {
        if count == self.size {
            if !self.fixed || reach & !chosen == 0 {
                emit(chosen);
            }
            return;
        }
        if pos > self.bound || self.bound - pos + 1 < self.size - count {
            return;
        }
        let bit = 1u128 << pos;
        let grown = reach | ((self.step << pos) & self.window);
        self.run(pos + 1, count + 1, chosen | bit, grown, emit);
        if reach & bit == 0 {
            self.run(pos + 1, count, chosen, reach, emit);
        }
    }
}

/// Upper bound on `max(B)` for `B ∈ C(S, size)`: B contains every member of
/// `S` up to its maximum, so `max(B) + 1 − g ≤ size`.
fn closed_set_bound(s: &Semigroup, size: u32) -> Result<u32> {
    let bound = size + s.genus() - 1;
    if bound >= WINDOW {
        return Err(Error::RangeTooLarge(bound));
    }
    Ok(bound)
}

fn walk_closed_sets(s: &Semigroup, size: u32, emit: &mut impl FnMut(u128)) -> Result<()> {
    if size == 0 {
        return Err(Error::InvalidArgument("closed sets contain 0, so size must be positive"));
    }
    let bound = closed_set_bound(s, size)?;
    let step = mask_of(s, bound);
    let walk = Walk { step, window: window(bound), bound, size, fixed: false };
    walk.run(1, 1, 1, step, emit);
    Ok(())
}

/// `C(S, size)`: all `S`-closed sets of the given size containing 0, in
/// lexicographic order of their membership masks' bit sequences.
pub fn closed_sets(s: &Semigroup, size: u32) -> Result<Vec<ClosedSet<'_>>> {
    let mut out = Vec::new();
    walk_closed_sets(s, size, &mut |mask| out.push(ClosedSet::from_mask(mask, s)))?;
    Ok(out)
}

/// `#C(S, size)` without materializing the sets.
pub fn count_closed_sets(s: &Semigroup, size: u32) -> Result<u64> {
    let mut n = 0u64;
    walk_closed_sets(s, size, &mut |_| n += 1)?;
    Ok(n)
}

/// Largest `γ` each `f_γ` route accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouteCaps {
    pub direct: u32,
    pub closed_sets: u32,
    pub fibers: u32,
}

impl Default for RouteCaps {
    fn default() -> Self {
        RouteCaps { direct: 9, closed_sets: 14, fibers: 9 }
    }
}

fn check_cap(route: &'static str, gamma: u32, cap: u32) -> Result<()> {
    if gamma > cap {
        return Err(Error::RouteCapExceeded { route, gamma, cap });
    }
    Ok(())
}

fn genus_members(gamma: u32, config: &TreeConfig) -> Result<Vec<Semigroup>> {
    let mut all = Vec::new();
    tree::enumerate(gamma, config, |s| all.push(s.clone()))?;
    Ok(all)
}

fn checked_total(parts: Vec<u64>) -> Result<u64> {
    parts.into_iter().try_fold(0u64, |a, b| a.checked_add(b)).ok_or(Error::CountOverflow)
}

/// `f_γ = Σ_{T ∈ 𝒮_γ} #C(T, γ + 1)`.
pub fn f_gamma_by_closed_sets(gamma: u32, caps: &RouteCaps, config: &TreeConfig) -> Result<u64> {
    check_cap("closed-sets", gamma, caps.closed_sets)?;
    let halves = genus_members(gamma, config)?;
    checked_total(map_tasks(config.workers, halves, |t| count_closed_sets(&t, gamma + 1))?)
}

/// `f_γ = N_γ(3γ)`, counted on the semigroup tree.
pub fn f_gamma_by_direct_census(gamma: u32, caps: &RouteCaps, config: &TreeConfig) -> Result<u64> {
    check_cap("direct", gamma, caps.direct)?;
    tree::stratum_count(3 * gamma, gamma, config)
}

/// `f_γ = Σ_{T ∈ 𝒮_γ} #𝐱⁻¹(T)`, with fibers enumerated by odd sets.
pub fn f_gamma_by_fibers(gamma: u32, caps: &RouteCaps, config: &TreeConfig) -> Result<u64> {
    check_cap("fibers", gamma, caps.fibers)?;
    let halves = genus_members(gamma, config)?;
    checked_total(map_tasks(config.workers, halves, |t| Ok(fiber_report(&t)?.total))?)
}

/// The bijection `C(T, γ + 1) → 𝐱⁻¹(T)`:
/// `B ↦ 2T ∪ {2b − 2max(B) + 6γ + 1 : b ∈ B} ∪ {6γ, 6γ + 1, …}`.
pub fn semigroup_from_closed_set(b: &ClosedSet<'_>) -> Result<Semigroup> {
    let t = b.ambient();
    let gamma = t.genus();
    if b.len() != gamma as usize + 1 {
        return Err(Error::InvalidArgument("closed set size must be one more than the genus of its base"));
    }
    let top = b.max();
    if top > 2 * gamma {
        return Err(Error::InvalidArgument("closed set maximum exceeds twice the genus"));
    }
    let lowest = 6 * gamma + 1 - 2 * top;
    let s = Semigroup::from_predicate(6 * gamma, |x| {
        if x % 2 == 0 {
            t.contains(x / 2)
        } else {
            x >= lowest && b.elements().binary_search(&((x - lowest) / 2)).is_ok()
        }
    });
    s.closure_witness().map_or(Ok(s), |(a, c)| Err(Error::NotASemigroup { a, b: c }))
}

/// Inverse of [`semigroup_from_closed_set`]: `b_i = (o_i − o_γ)/2` with
/// `o_0 = 6γ + 1`.
pub fn closed_set_from_fiber<'t>(t: &'t Semigroup, s: &Semigroup) -> Result<ClosedSet<'t>> {
    let gamma = t.genus();
    if s.genus() != 3 * gamma || one_half(s) != *t {
        return Err(Error::NotInFiber);
    }
    let mut odd: Vec<u32> = (1..6 * gamma).step_by(2).filter(|&x| s.contains(x)).collect();
    odd.push(6 * gamma + 1);
    let lowest = odd[0];
    ClosedSet::new(odd.into_iter().map(|o| (o - lowest) / 2).collect(), t)
}

/// Whether `2T ∪ odd ∪ {6γ, …}` is a semigroup: for `t ∈ T` and `o` in
/// `odd`, `2t + o` is in `odd` or exceeds `6γ`.
pub fn odd_part_valid(t: &Semigroup, odd: &[u32]) -> bool {
    let limit = 6 * t.genus();
    odd.iter().all(|&o| {
        (0..=limit.saturating_sub(o) / 2)
            .filter(|&x| t.contains(x))
            .all(|x| 2 * x + o > limit || odd.contains(&(2 * x + o)))
    })
}

/// `2T ∪ odd ∪ {6γ, 6γ + 1, …}` without any check.
pub fn assemble_fiber_element(t: &Semigroup, odd: &[u32]) -> Semigroup {
    Semigroup::from_predicate(6 * t.genus(), |x| {
        if x % 2 == 0 { t.contains(x / 2) } else { odd.contains(&x) }
    })
}

/// Every valid odd part over `T`: `γ` odd numbers in `[2γ + 1, 6γ − 1]`,
/// increasing.
pub fn fiber_odd_sets(t: &Semigroup) -> Result<Vec<Vec<u32>>> {
    let gamma = t.genus();
    if gamma == 0 {
        return Ok(vec![Vec::new()]);
    }
    // Odd o = 2γ + 1 + 2u with u in [0, 2γ − 1]; 2t + o > 6γ iff u + t ≥ 2γ.
    let bound = 2 * gamma - 1;
    if bound >= WINDOW {
        return Err(Error::RangeTooLarge(bound));
    }
    let walk = Walk { step: mask_of(t, bound), window: window(bound), bound, size: gamma, fixed: true };
    let mut out = Vec::new();
    walk.run(0, 0, 0, 0, &mut |mask| {
        out.push((0..=bound).filter(|&u| mask >> u & 1 == 1).map(|u| 2 * gamma + 1 + 2 * u).collect());
    });
    Ok(out)
}

/// `𝐱⁻¹(T) ⊆ 𝒮_γ(3γ)`: all semigroups of genus `3γ` whose half is `T`.
pub fn fiber(t: &Semigroup) -> Result<Vec<Semigroup>> {
    Ok(fiber_odd_sets(t)?.iter().map(|odd| assemble_fiber_element(t, odd)).collect())
}

/// Sizes of `𝐱⁻¹(Tⁱ)` (smallest odd member `2γ + 2i + 1`) for `i = 0..=γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub base: Semigroup,
    pub per_i: Vec<u64>,
    pub total: u64,
}

impl FiberReport {
    fn from_buckets(base: &Semigroup, buckets: impl Iterator<Item = u32>) -> Self {
        let gamma = base.genus();
        let mut per_i = vec![0u64; gamma as usize + 1];
        let mut total = 0;
        for i in buckets {
            per_i[i as usize] += 1;
            total += 1;
        }
        FiberReport { base: base.clone(), per_i, total }
    }
}

/// Buckets the fiber over `T` by smallest odd member, from the odd-set
/// enumeration.
pub fn fiber_report(t: &Semigroup) -> Result<FiberReport> {
    let gamma = t.genus();
    let sets = fiber_odd_sets(t)?;
    let buckets = sets.iter().map(|odd| odd.first().map_or(0, |&o| (o - 2 * gamma - 1) / 2));
    Ok(FiberReport::from_buckets(t, buckets))
}

/// The same buckets obtained through the closed-set bijection: the image of
/// `B` has smallest odd member `6γ + 1 − 2max(B)`, so `i = 2γ − max(B)`.
pub fn fiber_report_via_closed_sets(t: &Semigroup) -> Result<FiberReport> {
    let gamma = t.genus();
    let sets = closed_sets(t, gamma + 1)?;
    let buckets = sets.iter().map(|b| 2 * gamma - b.max());
    Ok(FiberReport::from_buckets(t, buckets))
}

/// `T_k = ℕ₀ \ {1, …, γ − 1, γ + k}` for `0 ≤ k ≤ γ − 1`.
pub fn t_k(gamma: u32, k: u32) -> Result<Semigroup> {
    if gamma == 0 || k >= gamma {
        return Err(Error::InvalidArgument("T_k needs 0 <= k < gamma"));
    }
    Semigroup::from_gap_set((1..gamma).chain([gamma + k]))
}

/// `#𝐱⁻¹(T_kⁱ)`: `C(γ, i)` for `k = 0`; otherwise
/// `C(γ−k−1, i) + C(γ−1, i−1)` when `i + k ≤ γ − 1` and `C(γ−1, i−1)` when
/// `i + k ≥ γ`.
pub fn tk_fiber_per_i(gamma: u32, k: u32, i: u32) -> u64 {
    let c = |n: u32, r: i64| if r < 0 || r > n as i64 { 0 } else { binomial(n as u64, r as u64) };
    let i = i as i64;
    if k == 0 {
        c(gamma, i)
    } else if i + (k as i64) < gamma as i64 {
        c(gamma - k - 1, i) + c(gamma - 1, i - 1)
    } else {
        c(gamma - 1, i - 1)
    }
}

/// `#𝐱⁻¹(T_k) = 2^{γ−1−k}(2^k + 1)`.
pub fn tk_fiber_closed_form(gamma: u32, k: u32) -> u64 {
    assert!(k < gamma, "need 0 <= k < gamma");
    (1u64 << (gamma - 1 - k)) * ((1u64 << k) + 1)
}

/// `M_γ = Σ_k #𝐱⁻¹(T_k) = 2^{γ−1}(γ + 2) − 1`, for `γ ≥ 1`.
pub fn m_gamma(gamma: u32) -> u64 {
    assert!(gamma >= 1, "M_gamma needs gamma >= 1");
    (1u64 << (gamma - 1)) * (gamma as u64 + 2) - 1
}

/// Bounds on `f_γ` in terms of `n_γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub gamma: u32,
    /// `n_γ (γ + 1)`.
    pub simple_lower: u64,
    /// `n_γ 2^γ`.
    pub simple_upper: u64,
    /// `n_γ (γ + 1) + M_γ − γ(γ + 1)`.
    pub c1: u64,
    /// `n_γ 2^γ − (γ 2^γ − M_γ)`.
    pub c2: u64,
}

impl Bounds {
    pub fn contains(&self, f: u64) -> bool {
        self.c1 <= f && f <= self.c2
    }
}

/// Exact bounds from a known `n_γ`.
pub fn bounds_from_count(gamma: u32, n_gamma: u64) -> Result<Bounds> {
    if gamma == 0 {
        return Ok(Bounds { gamma, simple_lower: 1, simple_upper: 1, c1: 1, c2: 1 });
    }
    let ov = || Error::CountOverflow;
    let g = gamma as u64;
    let pow = 1u64.checked_shl(gamma).filter(|_| gamma < 64).ok_or_else(ov)?;
    let m = m_gamma(gamma);
    let simple_lower = n_gamma.checked_mul(g + 1).ok_or_else(ov)?;
    let simple_upper = n_gamma.checked_mul(pow).ok_or_else(ov)?;
    let c1 = (simple_lower + m).checked_sub(g * (g + 1)).ok_or_else(ov)?;
    let c2 = simple_upper.checked_sub(g * pow - m).ok_or_else(ov)?;
    Ok(Bounds { gamma, simple_lower, simple_upper, c1, c2 })
}

/// Bounds with `n_γ` counted on the semigroup tree.
pub fn bounds(gamma: u32, config: &TreeConfig) -> Result<Bounds> {
    bounds_from_count(gamma, tree::stratum_row(gamma, config)?.total)
}
