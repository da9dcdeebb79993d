//! Brute-force ground truth for small orders.
//!
//! Labeled `d`-regular loop graphs on `n <= 11` vertices are generated by
//! backtracking: vertex `v` picks its remaining neighbors among higher-indexed
//! vertices with spare degree, in lexicographic combination order. Each
//! labeled graph appears exactly once. By symmetry the happy set can be fixed
//! to `{0, .., h-1}`, since all labelings of the graph are enumerated too.
//!
//! Configurations are evaluated here on packed `u32` closed neighborhoods,
//! without going through the `voting` module.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::classifier::ClassStatus;
use crate::error::{Error, Result};
use crate::graph::{check_order_degree, Configuration, LoopGraph};

pub const DEFAULT_CAP: usize = 9;
pub const MAX_CAP: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first configuration that settles the question.
    FindWitness,
    /// Visit every graph.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_graphs: Option<u64>,
    pub time_limit: Option<Duration>,
    pub mode: SearchMode,
}

impl EnumerationBudget {
    pub fn exhaustive() -> Self {
        EnumerationBudget {
            max_graphs: None,
            time_limit: None,
            mode: SearchMode::Exhaustive,
        }
    }

    pub fn find_witness() -> Self {
        EnumerationBudget {
            mode: SearchMode::FindWitness,
            ..Self::exhaustive()
        }
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self::exhaustive()
    }
}

/// Shared graph counter and stop flag for one enumeration run.
struct Meter<'a> {
    budget: &'a EnumerationBudget,
    start: Instant,
    visited: AtomicU64,
    exhausted: AtomicBool,
    stop: AtomicBool,
}

impl<'a> Meter<'a> {
    fn new(budget: &'a EnumerationBudget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            visited: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            stop: AtomicBool::new(false),
        }
    }

    /// Accounts for one more graph; false means the run must end.
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.visited.fetch_add(1, Ordering::Relaxed) + 1;
        let over_count = self.budget.max_graphs.is_some_and(|m| count > m);
        let over_time = count % 1024 == 0
            && self
                .budget
                .time_limit
                .is_some_and(|t| self.start.elapsed() > t);
        if over_count || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn halt(&self) {
        self.stop.store(true, Ordering::Relaxed);
    }

    fn graphs(&self) -> u64 {
        let v = self.visited.load(Ordering::Relaxed);
        match self.budget.max_graphs {
            Some(m) => v.min(m),
            None => v,
        }
    }

    fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

/// Closed neighborhoods as bitmasks; bit `v` of `rows[v]` is the loop.
type Rows = [u32; MAX_CAP];

struct Search {
    n: usize,
    rows: Rows,
    spare: [usize; MAX_CAP],
}

impl Search {
    fn new(n: usize, d: usize) -> Self {
        let mut rows = [0; MAX_CAP];
        for (v, row) in rows.iter_mut().enumerate().take(n) {
            *row = 1 << v;
        }
        let mut spare = [0; MAX_CAP];
        spare[..n].fill(d - 1);
        Search { n, rows, spare }
    }

    fn link(&mut self, u: usize, w: usize) {
        self.rows[u] |= 1 << w;
        self.rows[w] |= 1 << u;
        self.spare[u] -= 1;
        self.spare[w] -= 1;
    }

    fn unlink(&mut self, u: usize, w: usize) {
        self.rows[u] &= !(1 << w);
        self.rows[w] &= !(1 << u);
        self.spare[u] += 1;
        self.spare[w] += 1;
    }

    fn candidates(&self, v: usize) -> ([usize; MAX_CAP], usize) {
        let mut c = [0; MAX_CAP];
        let mut len = 0;
        for w in v + 1..self.n {
            if self.spare[w] > 0 {
                c[len] = w;
                len += 1;
            }
        }
        (c, len)
    }

    fn vertex<F>(&mut self, v: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if v == self.n {
            return visit(&self.rows[..self.n]);
        }
        let need = self.spare[v];
        if need == 0 {
            return self.vertex(v + 1, visit);
        }
        let (cands, len) = self.candidates(v);
        if len < need {
            return ControlFlow::Continue(());
        }
        self.choose(v, &cands[..len], 0, need, visit)
    }

    fn choose<F>(
        &mut self,
        v: usize,
        cands: &[usize],
        from: usize,
        left: usize,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if left == 0 {
            return self.vertex(v + 1, visit);
        }
        for i in from..=cands.len() - left {
            let w = cands[i];
            self.link(v, w);
            let flow = self.choose(v, cands, i + 1, left - 1, visit);
            self.unlink(v, w);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Neighbor sets of vertex 0 (loop excluded), in lexicographic order. Each
/// one roots an independent subtree of the search.
fn partitions(n: usize, d: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let need = Search::new(n, d).spare[0];
    let cands: Vec<usize> = (1..n).collect();
    if need > cands.len() {
        return out;
    }
    fn rec(cands: &[usize], from: usize, left: usize, acc: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in from..=cands.len() - left {
            rec(cands, i + 1, left - 1, acc | 1 << cands[i], out);
        }
    }
    rec(&cands, 0, need, 0, &mut out);
    out
}

fn run_partition<F>(n: usize, d: usize, first: u32, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let mut s = Search::new(n, d);
    for w in 1..n {
        if first >> w & 1 == 1 {
            s.link(0, w);
        }
    }
    s.vertex(1, visit)
}

fn check_domain(n: usize, d: usize, cap: usize) -> Result<()> {
    check_order_degree(n as u64, d as u64)?;
    let cap = cap.min(MAX_CAP);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

fn rows_to_graph(rows: &[u32]) -> LoopGraph {
    let n = rows.len();
    let edges = (0..n).flat_map(|u| {
        (u + 1..n)
            .filter(move |&w| rows[u] >> w & 1 == 1)
            .map(move |w| (u, w))
    });
    LoopGraph::from_edges(n, edges).expect("rows index only existing vertices")
}

/// Whether happy set `{0..h}` makes the graph approving.
fn approves(rows: &[u32], h: usize) -> bool {
    let n = rows.len();
    let happy = (1u32 << h) - 1;
    let need = (rows[0].count_ones() + 1) / 2;
    let p = rows
        .iter()
        .filter(|r| (*r & happy).count_ones() >= need)
        .count();
    2 * p > n
}

/// Visits every labeled `d`-regular loop graph on `n` vertices in
/// lexicographic order; returns the number visited.
pub fn enumerate_regular<F>(n: usize, d: usize, cap: usize, mut visit: F) -> Result<u64>
where
    F: FnMut(&LoopGraph) -> ControlFlow<()>,
{
    check_domain(n, d, cap)?;
    let mut count = 0u64;
    for first in partitions(n, d) {
        let flow = run_partition(n, d, first, &mut |rows: &[u32]| {
            count += 1;
            visit(&rows_to_graph(rows))
        });
        if flow.is_break() {
            break;
        }
    }
    Ok(count)
}

pub fn count_regular(n: usize, d: usize, cap: usize) -> Result<u64> {
    check_domain(n, d, cap)?;
    Ok(partitions(n, d)
        .into_par_iter()
        .map(|first| {
            let mut c = 0u64;
            let _ = run_partition(n, d, first, &mut |_: &[u32]| {
                c += 1;
                ControlFlow::Continue(())
            });
            c
        })
        .sum())
}

/// First approving member of `G(n|d|h)` (happy set `{0..h}`) in enumeration
/// order. Sequential, so the answer is deterministic.
pub fn find_approving_witness(
    n: usize,
    d: usize,
    h: usize,
    budget: &EnumerationBudget,
) -> Result<Option<Configuration>> {
    check_domain(n, d, MAX_CAP)?;
    if h > n {
        return Err(Error::invalid(format!("h = {h} exceeds n = {n}")));
    }
    let meter = Meter::new(budget);
    let mut found = None;
    for first in partitions(n, d) {
        let flow = run_partition(n, d, first, &mut |rows: &[u32]| {
            if !meter.tick() {
                return ControlFlow::Break(());
            }
            if approves(rows, h) {
                found = Some(rows_to_graph(rows));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            break;
        }
    }
    match found {
        Some(g) => Ok(Some(Configuration::with_happy_prefix(g, h)?)),
        None if meter.exhausted() => Err(Error::BudgetExhausted {
            graphs: meter.graphs(),
        }),
        None => Ok(None),
    }
}

/// Which happy counts admit approving and disapproving members of `G(n|d|·)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSurvey {
    pub n: usize,
    pub d: usize,
    pub graphs: u64,
    /// `approving[h]`: some member of `G(n|d|h)` is approving.
    pub approving: Vec<bool>,
    /// `disapproving[h]`: some member of `G(n|d|h)` is disapproving.
    pub disapproving: Vec<bool>,
}

impl ClassSurvey {
    pub fn status(&self, h: usize) -> ClassStatus {
        match (self.approving[h], self.disapproving[h]) {
            (true, true) => ClassStatus::Mixed,
            (true, false) => ClassStatus::UniformlyApproving,
            (false, true) => ClassStatus::UniformlyDisapproving,
            (false, false) => unreachable!("every feasible class is non-empty"),
        }
    }

    pub fn hmin(&self) -> usize {
        self.approving
            .iter()
            .position(|&a| a)
            .expect("all-happy approves")
    }

    pub fn hmax(&self) -> usize {
        self.disapproving
            .iter()
            .rposition(|&a| a)
            .expect("all-sad disapproves")
    }
}

/// Brute-force decision procedures over labeled enumeration.
#[derive(Debug, Clone)]
pub struct Oracle {
    cap: usize,
    budget: EnumerationBudget,
    jobs: Option<usize>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap: DEFAULT_CAP,
            budget: EnumerationBudget::find_witness(),
            jobs: None,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(mut self, cap: usize) -> Result<Self> {
        if cap > MAX_CAP {
            return Err(Error::invalid(format!(
                "enumeration cap {cap} exceeds the supported maximum {MAX_CAP}"
            )));
        }
        self.cap = cap;
        Ok(self)
    }

    pub fn with_budget(mut self, budget: EnumerationBudget) -> Self {
        self.budget = budget;
        self
    }

    /// Worker threads; `None` uses the global rayon pool.
    pub fn with_jobs(mut self, jobs: Option<usize>) -> Self {
        self.jobs = jobs;
        self
    }

    fn in_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.jobs {
            None => Ok(f()),
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map(|pool| pool.install(f))
                .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}"))),
        }
    }

    /// Exhaustive pass over `G(n|d)` deciding every `h` at once.
    pub fn survey(&self, n: usize, d: usize) -> Result<ClassSurvey> {
        check_domain(n, d, self.cap)?;
        let budget = EnumerationBudget {
            mode: SearchMode::Exhaustive,
            ..self.budget.clone()
        };
        let meter = Meter::new(&budget);
        let (approving, disapproving) = self.in_pool(|| {
            partitions(n, d)
                .into_par_iter()
                .map(|first| {
                    let (mut yes, mut no) = (0u32, 0u32);
                    let _ = run_partition(n, d, first, &mut |rows: &[u32]| {
                        if !meter.tick() {
                            return ControlFlow::Break(());
                        }
                        for h in 0..=n {
                            if approves(rows, h) {
                                yes |= 1 << h;
                            } else {
                                no |= 1 << h;
                            }
                        }
                        ControlFlow::Continue(())
                    });
                    (yes, no)
                })
                .reduce(|| (0, 0), |a, b| (a.0 | b.0, a.1 | b.1))
        })?;
        if meter.exhausted() {
            return Err(Error::BudgetExhausted {
                graphs: meter.graphs(),
            });
        }
        Ok(ClassSurvey {
            n,
            d,
            graphs: meter.graphs(),
            approving: (0..=n).map(|h| approving >> h & 1 == 1).collect(),
            disapproving: (0..=n).map(|h| disapproving >> h & 1 == 1).collect(),
        })
    }

    /// Searches `G(n|d|h)` for a member whose approval equals `want`.
    fn exists(&self, n: usize, d: usize, h: usize, want: bool) -> Result<bool> {
        check_domain(n, d, self.cap)?;
        if h > n {
            return Err(Error::invalid(format!("h = {h} exceeds n = {n}")));
        }
        let meter = Meter::new(&self.budget);
        let short_circuit = self.budget.mode == SearchMode::FindWitness;
        let found = self.in_pool(|| {
            partitions(n, d)
                .into_par_iter()
                .map(|first| {
                    let mut hit = false;
                    let _ = run_partition(n, d, first, &mut |rows: &[u32]| {
                        if !meter.tick() {
                            return ControlFlow::Break(());
                        }
                        if approves(rows, h) == want {
                            hit = true;
                            if short_circuit {
                                meter.halt();
                                return ControlFlow::Break(());
                            }
                        }
                        ControlFlow::Continue(())
                    });
                    hit
                })
                .reduce(|| false, |a, b| a || b)
        })?;
        if !found && meter.exhausted() {
            return Err(Error::BudgetExhausted {
                graphs: meter.graphs(),
            });
        }
        Ok(found)
    }

    pub fn class_contains_approving(&self, n: usize, d: usize, h: usize) -> Result<bool> {
        self.exists(n, d, h, true)
    }

    /// Searched directly (happy set `{0..h}`), not derived through negation.
    pub fn class_contains_disapproving(&self, n: usize, d: usize, h: usize) -> Result<bool> {
        self.exists(n, d, h, false)
    }

    pub fn hmin_bruteforce(&self, n: usize, d: usize) -> Result<usize> {
        Ok(self.survey(n, d)?.hmin())
    }

    pub fn hmax_bruteforce(&self, n: usize, d: usize) -> Result<usize> {
        Ok(self.survey(n, d)?.hmax())
    }

    pub fn classify_bruteforce(&self, n: usize, d: usize, h: usize) -> Result<ClassStatus> {
        let approving = self.class_contains_approving(n, d, h)?;
        let disapproving = self.class_contains_disapproving(n, d, h)?;
        Ok(match (approving, disapproving) {
            (true, true) => ClassStatus::Mixed,
            (true, false) => ClassStatus::UniformlyApproving,
            (false, _) => ClassStatus::UniformlyDisapproving,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_small_classes() {
        // labeled 5-cycles: (5-1)!/2
        assert_eq!(count_regular(5, 3, 9).unwrap(), 12);
        assert_eq!(count_regular(1, 1, 9).unwrap(), 1);
        assert_eq!(count_regular(3, 3, 9).unwrap(), 1);
        assert_eq!(count_regular(5, 5, 9).unwrap(), 1);
        assert_eq!(count_regular(7, 1, 9).unwrap(), 1);
        // labeled 2-regular graphs on 7 vertices: 360 heptagons + 105 triangle/square pairs
        assert_eq!(count_regular(7, 3, 9).unwrap(), 465);
    }

    #[test]
    fn enumeration_is_sequentially_consistent() {
        let mut seen = std::collections::HashSet::new();
        let count = enumerate_regular(7, 3, 9, |g| {
            assert_eq!(g.regular_degree(), Some(3));
            assert!(seen.insert(g.clone()));
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(count, 465);
        assert_eq!(seen.len(), 465);
    }

    #[test]
    fn domain_checks() {
        assert!(matches!(
            count_regular(11, 3, 9),
            Err(Error::CapExceeded { n: 11, cap: 9 })
        ));
        assert!(count_regular(6, 3, 9).is_err());
        assert!(count_regular(5, 4, 9).is_err());
        assert!(Oracle::new().with_cap(12).is_err());
    }

    #[test]
    fn existence_examples() {
        let o = Oracle::new();
        assert!(!o.class_contains_approving(5, 3, 2).unwrap());
        assert!(!o.class_contains_approving(9, 5, 3).unwrap());
        assert!(o.class_contains_approving(9, 5, 4).unwrap());
        assert!(!o.class_contains_disapproving(5, 3, 3).unwrap());
        assert!(o.class_contains_disapproving(9, 5, 5).unwrap());
        assert!(o.class_contains_disapproving(7, 3, 0).unwrap());
    }

    #[test]
    fn bruteforce_thresholds() {
        let o = Oracle::new();
        assert_eq!(o.hmin_bruteforce(5, 3).unwrap(), 3);
        assert_eq!(o.hmin_bruteforce(7, 3).unwrap(), 3);
        assert_eq!(o.hmax_bruteforce(7, 3).unwrap(), 4);
        assert_eq!(
            o.classify_bruteforce(5, 3, 2).unwrap(),
            ClassStatus::UniformlyDisapproving
        );
        assert_eq!(
            o.classify_bruteforce(5, 3, 5).unwrap(),
            ClassStatus::UniformlyApproving
        );
        assert_eq!(o.classify_bruteforce(7, 3, 3).unwrap(), ClassStatus::Mixed);
    }

    #[test]
    fn witness_search_is_deterministic() {
        let b = EnumerationBudget::find_witness();
        let a = find_approving_witness(7, 3, 3, &b).unwrap().unwrap();
        let again = find_approving_witness(7, 3, 3, &b).unwrap().unwrap();
        assert_eq!(a, again);
        assert!(find_approving_witness(5, 3, 2, &b).unwrap().is_none());
    }

    #[test]
    fn budget_limits() {
        let tight = EnumerationBudget {
            max_graphs: Some(3),
            ..EnumerationBudget::exhaustive()
        };
        let o = Oracle::new().with_budget(tight.clone());
        assert!(matches!(
            o.survey(5, 3),
            Err(Error::BudgetExhausted { graphs: 3 })
        ));
        assert!(matches!(
            find_approving_witness(5, 3, 2, &tight),
            Err(Error::BudgetExhausted { .. })
        ));
        let exact = EnumerationBudget {
            max_graphs: Some(12),
            ..EnumerationBudget::exhaustive()
        };
        assert_eq!(
            Oracle::new()
                .with_budget(exact)
                .survey(5, 3)
                .unwrap()
                .graphs,
            12
        );
    }

    #[test]
    fn explicit_worker_count() {
        let o = Oracle::new().with_jobs(Some(2));
        let s = o.survey(7, 5).unwrap();
        assert_eq!(s.hmin(), 3);
    }
}
