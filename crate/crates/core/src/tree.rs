//! Exhaustive enumeration of numerical semigroups by genus.
//!
//! The semigroup tree is rooted at `ℕ₀`; the children of `S` are `S \ {x}`
//! for every minimal generator `x > F(S)`, so depth equals genus and every
//! numerical semigroup appears exactly once. The walk is depth-first with an
//! explicit stack and visits children in increasing order of the removed
//! generator.
//!
//! Internally each node carries decomposition numbers: `decs[y]` is the number
//! of unordered pairs `{a, b}` of members with `a + b = y`. A member `y` is a
//! minimal generator iff `decs[y] == 1`, and removing a generator only needs
//! one pass of decrements. Since a child's even-gap count is its parent's plus
//! one exactly when the removed generator is even, strata are counted without
//! materializing any semigroup.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Largest genus the enumerator accepts.
pub const MAX_GENUS: u32 = 40;

const CAP: usize = 3 * MAX_GENUS as usize + 8;

/// How the enumeration is carried out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeConfig {
    /// Worker threads; 0 means the machine's available parallelism.
    pub workers: usize,
    /// Genus at which the tree is cut into independent subtree tasks.
    pub split_genus: u32,
    /// Maximum number of tree nodes to visit (all genera up to the target).
    pub budget: Option<u64>,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig { workers: 0, split_genus: 7, budget: None }
    }
}

impl TreeConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }
}

/// Per-genus census: `counts[γ] = N_γ(g)` for `γ = 0..=⌊2g/3⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StratumRow {
    pub genus: u32,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl StratumRow {
    fn from_counts(genus: u32, mut counts: Vec<u64>) -> Result<Self> {
        let width = (2 * genus / 3) as usize + 1;
        if counts[width..].iter().any(|&c| c != 0) {
            // Would contradict 2g >= 3γ; only a broken enumerator gets here.
            panic!("genus {genus} has a stratum beyond gamma {}", width - 1);
        }
        counts.truncate(width);
        counts.resize(width, 0);
        let total = checked_sum(counts.iter().copied())?;
        Ok(StratumRow { genus, counts, total })
    }

    /// `N_γ(g)`, zero outside the stored range.
    pub fn count(&self, gamma: u32) -> u64 {
        self.counts.get(gamma as usize).copied().unwrap_or(0)
    }
}

/// A semigroup together with the generators whose removal yields its
/// children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub semigroup: Semigroup,
    /// Minimal generators strictly greater than the Frobenius number.
    pub effective_generators: Vec<u32>,
}

impl TreeNode {
    pub fn root() -> Self {
        Self::new(Semigroup::naturals())
    }

    pub fn new(semigroup: Semigroup) -> Self {
        let f = semigroup.frobenius() as i64;
        let effective_generators =
            semigroup.minimal_generators().into_iter().filter(|&x| x as i64 > f).collect();
        TreeNode { semigroup, effective_generators }
    }

    /// Children in increasing order of the removed generator.
    pub fn children(&self) -> Vec<TreeNode> {
        self.effective_generators
            .iter()
            .map(|&x| TreeNode::new(self.semigroup.remove_generator(x).expect("effective generator")))
            .collect()
    }
}

#[derive(Clone)]
struct Node {
    decs: [u8; CAP],
    conductor: u32,
    multiplicity: u32,
    genus: u32,
    gamma: u32,
}

impl Node {
    fn root() -> Self {
        let mut decs = [0u8; CAP];
        for (y, d) in decs.iter_mut().enumerate() {
            *d = (y / 2 + 1) as u8;
        }
        // ℕ₀ has conductor 0, but its only effective generator 1 lies in [1, 2).
        Node { decs, conductor: 1, multiplicity: 1, genus: 0, gamma: 0 }
    }

    #[inline]
    fn generators(&self) -> impl DoubleEndedIterator<Item = u32> + '_ {
        (self.conductor..self.conductor + self.multiplicity).filter(|&y| self.decs[y as usize] == 1)
    }

    fn child(&self, generator: u32) -> Node {
        let g = generator as usize;
        let mut decs = self.decs;
        for t in g..CAP {
            if self.decs[t - g] > 0 {
                decs[t] -= 1;
            }
        }
        Node {
            decs,
            conductor: generator + 1,
            multiplicity: if generator == self.multiplicity { generator + 1 } else { self.multiplicity },
            genus: self.genus + 1,
            gamma: self.gamma + (generator % 2 == 0) as u32,
        }
    }

    fn to_semigroup(&self) -> Semigroup {
        Semigroup::from_predicate(self.conductor, |y| self.decs[y as usize] > 0)
    }
}

/// Shared node counter enforcing [`TreeConfig::budget`].
struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
}

impl Budget {
    fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    fn charge(&self, nodes: u64) -> Result<()> {
        let Some(limit) = self.limit else { return Ok(()) };
        let used = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if used > limit {
            Err(Error::BudgetExceeded { budget: limit })
        } else {
            Ok(())
        }
    }
}

/// Local tally that flushes into the shared budget in batches.
struct Meter<'a> {
    budget: &'a Budget,
    pending: u64,
}

impl<'a> Meter<'a> {
    const BATCH: u64 = 1 << 12;

    fn new(budget: &'a Budget) -> Self {
        Meter { budget, pending: 0 }
    }

    #[inline]
    fn tick(&mut self, nodes: u64) -> Result<()> {
        self.pending += nodes;
        if self.pending >= Self::BATCH {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let n = std::mem::take(&mut self.pending);
        self.budget.charge(n)
    }
}

fn check_genus(genus: u32) -> Result<()> {
    if genus > MAX_GENUS {
        return Err(Error::GenusTooLarge { genus, max: MAX_GENUS });
    }
    Ok(())
}

fn checked_sum(mut values: impl Iterator<Item = u64>) -> Result<u64> {
    values.try_fold(0u64, |acc, v| acc.checked_add(v)).ok_or(Error::CountOverflow)
}

fn bump(slot: &mut u64, by: u64) -> Result<()> {
    *slot = slot.checked_add(by).ok_or(Error::CountOverflow)?;
    Ok(())
}

/// Walks from the root down to `depth`, returning the nodes found there in
/// lexicographic order. Shallower nodes are passed to `shallow`.
fn frontier(
    depth: u32,
    gamma_cap: u32,
    meter: &mut Meter<'_>,
    mut shallow: impl FnMut(&Node) -> Result<()>,
) -> Result<Vec<Node>> {
    let mut out = Vec::new();
    let mut stack = vec![Node::root()];
    while let Some(node) = stack.pop() {
        if node.genus == depth {
            out.push(node);
            continue;
        }
        meter.tick(1)?;
        shallow(&node)?;
        for g in node.generators().rev() {
            if node.gamma + (g % 2 == 0) as u32 <= gamma_cap {
                stack.push(node.child(g));
            }
        }
    }
    Ok(out)
}

/// Counts every node of genus `root.genus..=max_genus` below `root` with at
/// most `gamma_cap` even gaps; `table[h][γ]` receives the tallies.
fn count_subtree(
    root: Node,
    max_genus: u32,
    gamma_cap: u32,
    meter: &mut Meter<'_>,
    table: &mut [Vec<u64>],
) -> Result<()> {
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        let h = node.genus as usize;
        bump(&mut table[h][node.gamma as usize], 1)?;
        meter.tick(1)?;
        if node.genus == max_genus {
            continue;
        }
        // The last level is tallied by generator parity without building it.
        let last = node.genus + 1 == max_genus;
        let (mut odd, mut even) = (0u64, 0u64);
        for g in node.generators().rev() {
            let gamma = node.gamma + (g % 2 == 0) as u32;
            if gamma > gamma_cap {
                continue;
            }
            if last {
                if g % 2 == 0 { even += 1 } else { odd += 1 }
            } else {
                stack.push(node.child(g));
            }
        }
        if last {
            let row = &mut table[h + 1];
            bump(&mut row[node.gamma as usize], odd)?;
            if even > 0 {
                bump(&mut row[node.gamma as usize + 1], even)?;
            }
            meter.tick(odd + even)?;
        }
    }
    Ok(())
}

fn resolve_workers(workers: usize) -> usize {
    if workers > 0 {
        return workers;
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Maps `f` over `items` on `workers` threads, keeping the input order.
pub(crate) fn map_tasks<I, T, F>(workers: usize, items: Vec<I>, f: F) -> Result<Vec<T>>
where
    I: Send,
    T: Send,
    F: Fn(I) -> Result<T> + Sync + Send,
{
    let workers = resolve_workers(workers);
    #[cfg(feature = "parallel")]
    if workers > 1 && items.len() > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        return pool.install(|| items.into_par_iter().map(f).collect());
    }
    let _ = workers;
    items.into_iter().map(f).collect()
}

/// Tallies `N_γ(h)` for every `h <= max_genus` and `γ <= gamma_cap`.
fn census_table(max_genus: u32, gamma_cap: u32, config: &TreeConfig) -> Result<Vec<Vec<u64>>> {
    check_genus(max_genus)?;
    let width = |h: u32| (2 * h / 3) as usize + 2;
    let empty = || (0..=max_genus).map(|h| vec![0u64; width(h)]).collect::<Vec<_>>();
    let budget = Budget::new(config.budget);
    let mut table = empty();
    let depth = config.split_genus.min(max_genus);
    let mut meter = Meter::new(&budget);
    let tasks = frontier(depth, gamma_cap, &mut meter, |node| {
        bump(&mut table[node.genus as usize][node.gamma as usize], 1)
    })?;
    meter.flush()?;
    let partials = map_tasks(config.workers, tasks, |node| {
        let mut local = empty();
        let mut meter = Meter::new(&budget);
        count_subtree(node, max_genus, gamma_cap, &mut meter, &mut local)?;
        meter.flush()?;
        Ok(local)
    })?;
    for local in partials {
        for (row, part) in table.iter_mut().zip(local) {
            for (cell, v) in row.iter_mut().zip(part) {
                bump(cell, v)?;
            }
        }
    }
    Ok(table)
}

/// Stratified census rows for every genus `0..=max_genus`, from one walk.
pub fn stratum_rows(max_genus: u32, config: &TreeConfig) -> Result<Vec<StratumRow>> {
    census_table(max_genus, u32::MAX, config)?
        .into_iter()
        .enumerate()
        .map(|(h, counts)| StratumRow::from_counts(h as u32, counts))
        .collect()
}

/// The row `(N_0(g), …, N_{⌊2g/3⌋}(g))` with `n_g`.
pub fn stratum_row(genus: u32, config: &TreeConfig) -> Result<StratumRow> {
    Ok(stratum_rows(genus, config)?.pop().unwrap())
}

/// `N_γ(g)` alone. Subtrees whose even-gap count already exceeds `γ` are
/// pruned, which is valid because the count never decreases along the tree.
pub fn stratum_count(genus: u32, gamma: u32, config: &TreeConfig) -> Result<u64> {
    if 3 * gamma > 2 * genus {
        check_genus(genus)?;
        return Ok(0);
    }
    let table = census_table(genus, gamma, config)?;
    Ok(table[genus as usize][gamma as usize])
}

/// Calls `visitor` once for every semigroup of genus `genus` with even-gap
/// count in `gammas`, serially and in lexicographic order of the removed
/// generator sequence.
fn visit_serial(
    genus: u32,
    gamma_cap: u32,
    keep: impl Fn(u32) -> bool,
    config: &TreeConfig,
    mut visitor: impl FnMut(&Semigroup),
) -> Result<u64> {
    check_genus(genus)?;
    let budget = Budget::new(config.budget);
    let mut meter = Meter::new(&budget);
    let mut stack = vec![Node::root()];
    let mut visited = 0u64;
    while let Some(node) = stack.pop() {
        meter.tick(1)?;
        if node.genus == genus {
            if keep(node.gamma) {
                visitor(&node.to_semigroup());
                bump(&mut visited, 1)?;
            }
            continue;
        }
        for g in node.generators().rev() {
            if node.gamma + (g % 2 == 0) as u32 <= gamma_cap {
                stack.push(node.child(g));
            }
        }
    }
    meter.flush()?;
    Ok(visited)
}

/// Visits every semigroup of genus `genus` exactly once, serially, in
/// lexicographic order of the removed-generator sequence. Returns `n_g`.
///
/// This is the serialized mode: the visitor may hold mutable state. See
/// [`enumerate_concurrent`] for the parallel mode.
pub fn enumerate(genus: u32, config: &TreeConfig, visitor: impl FnMut(&Semigroup)) -> Result<u64> {
    visit_serial(genus, u32::MAX, |_| true, config, visitor)
}

/// Like [`enumerate`] restricted to `𝒮_γ(g)`, pruning subtrees with more than
/// `gamma` even gaps.
pub fn enumerate_stratum(
    genus: u32,
    gamma: u32,
    config: &TreeConfig,
    visitor: impl FnMut(&Semigroup),
) -> Result<u64> {
    visit_serial(genus, gamma, |c| c == gamma, config, visitor)
}

/// All members of `𝒮_γ(g)` in enumeration order.
pub fn stratum(genus: u32, gamma: u32, config: &TreeConfig) -> Result<Vec<Semigroup>> {
    let mut out = Vec::new();
    enumerate_stratum(genus, gamma, config, |s| out.push(s.clone()))?;
    Ok(out)
}

/// Concurrent mode: subtree tasks run on `config.workers` threads and the
/// visitor may be called from several of them at once, in no particular
/// order. The returned count does not depend on the worker count.
pub fn enumerate_concurrent(
    genus: u32,
    config: &TreeConfig,
    visitor: impl Fn(&Semigroup) + Sync,
) -> Result<u64> {
    check_genus(genus)?;
    let budget = Budget::new(config.budget);
    let mut meter = Meter::new(&budget);
    let tasks = frontier(config.split_genus.min(genus), u32::MAX, &mut meter, |_| Ok(()))?;
    meter.flush()?;
    let counts = map_tasks(config.workers, tasks, |root| {
        let mut meter = Meter::new(&budget);
        let mut stack = vec![root];
        let mut visited = 0u64;
        while let Some(node) = stack.pop() {
            meter.tick(1)?;
            if node.genus == genus {
                visitor(&node.to_semigroup());
                bump(&mut visited, 1)?;
                continue;
            }
            for g in node.generators().rev() {
                stack.push(node.child(g));
            }
        }
        meter.flush()?;
        Ok(visited)
    })?;
    checked_sum(counts.into_iter())
}

/// One step of the question whether `n_{g+1} > n_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityStep {
    pub genus: u32,
    /// `n_{g+1} - n_g`.
    pub total_difference: i64,
    /// `(γ, N_γ(g+1) - N_γ(g))` for `γ ∈ [⌊g/3⌋ + 1, ⌊2g/3⌋]`.
    pub window: Vec<(u32, i64)>,
}

impl MonotonicityStep {
    /// Every difference in the window is positive.
    pub fn window_holds(&self) -> bool {
        self.window.iter().all(|&(_, d)| d > 0)
    }

    pub fn increasing(&self) -> bool {
        self.total_difference > 0
    }
}

/// Steps `g = 0..rows.len() - 1` computed from consecutive census rows.
pub fn monotonicity_report(rows: &[StratumRow]) -> Vec<MonotonicityStep> {
    rows.windows(2)
        .map(|pair| {
            let (cur, next) = (&pair[0], &pair[1]);
            let g = cur.genus;
            let window = (g / 3 + 1..=2 * g / 3)
                .map(|c| (c, next.count(c) as i64 - cur.count(c) as i64))
                .collect();
            MonotonicityStep { genus: g, total_difference: next.total as i64 - cur.total as i64, window }
        })
        .collect()
}

/// [`monotonicity_report`] for genera up to `max_genus`.
pub fn monotonicity_up_to(max_genus: u32, config: &TreeConfig) -> Result<Vec<MonotonicityStep>> {
    Ok(monotonicity_report(&stratum_rows(max_genus, config)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn serial() -> TreeConfig {
        TreeConfig::default().with_workers(1)
    }

    #[test]
    fn small_counts() {
        let rows = stratum_rows(10, &serial()).unwrap();
        let totals: Vec<u64> = rows.iter().map(|r| r.total).collect();
        assert_eq!(totals, vec![1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204]);
        assert_eq!(rows[4].counts, vec![1, 2, 4]);
        assert_eq!(rows[3].counts, vec![1, 2, 1]);
        assert_eq!(rows[10].counts, vec![1, 2, 7, 23, 62, 91, 18]);
        assert_eq!(rows[0].counts, vec![1]);
    }

    #[test]
    fn genus_three_two_even_gaps_is_three_five_seven() {
        let s = stratum(3, 2, &serial()).unwrap();
        assert_eq!(s, vec![Semigroup::from_generators(&[3, 5, 7]).unwrap()]);
    }

    #[test]
    fn fast_nodes_match_tree_nodes() {
        // The slow TreeNode expansion and the decomposition-number walk
        // produce the same sequence.
        let mut slow = Vec::new();
        let mut stack = vec![TreeNode::root()];
        while let Some(n) = stack.pop() {
            if n.semigroup.genus() == 8 {
                slow.push(n.semigroup);
                continue;
            }
            stack.extend(n.children().into_iter().rev());
        }
        let mut fast = Vec::new();
        enumerate(8, &serial(), |s| fast.push(s.clone())).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn visitor_order_is_lexicographic() {
        let mut seen = Vec::new();
        enumerate(2, &serial(), |s| seen.push(s.gaps())).unwrap();
        // Paths 1,2 / 1,3 from <2,3>; the ordinary path goes through 1 then 2.
        assert_eq!(seen, vec![vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = serial().with_budget(10);
        assert_eq!(stratum_rows(6, &cfg), Err(Error::BudgetExceeded { budget: 10 }));
        // Exactly the number of nodes up to genus 4 fits.
        let cfg = serial().with_budget(1 + 1 + 2 + 4 + 7);
        assert!(stratum_rows(4, &cfg).is_ok());
        assert!(enumerate(4, &cfg, |_| {}).is_ok());
        let cfg = serial().with_budget(14);
        assert!(enumerate(4, &cfg, |_| {}).is_err());
    }

    #[test]
    fn genus_cap() {
        assert!(matches!(stratum_row(MAX_GENUS + 1, &serial()), Err(Error::GenusTooLarge { .. })));
    }

    #[test]
    fn stratum_count_prunes() {
        let cfg = serial();
        assert_eq!(stratum_count(10, 4, &cfg).unwrap(), 62);
        assert_eq!(stratum_count(12, 4, &cfg).unwrap(), 68);
        assert_eq!(stratum_count(5, 4, &cfg).unwrap(), 0);
    }

    #[test]
    fn monotonicity_window_at_nine() {
        let steps = monotonicity_up_to(10, &serial()).unwrap();
        let nine = &steps[9];
        assert_eq!(nine.window, vec![(4, 11), (5, 58), (6, 17)]);
        assert!(nine.window_holds());
        assert!(steps[1].window.is_empty());
        assert_eq!(steps[1].total_difference, 1);
        // n_1 = n_0 = 1.
        assert!(!steps[0].increasing());
    }
}
