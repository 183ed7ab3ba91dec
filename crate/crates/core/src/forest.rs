//! Shrub forests and the brute-force enumerator.
//!
//! The enumerator is the ground truth for every count in this crate: it
//! places labels position by position (shrubs left to right, root then
//! leaves), tries candidate labels in increasing order, and prunes as soon
//! as the newest label completes an occurrence of a forbidden pattern.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::par;
use crate::perm::{IncrementalMatcher, PatternSet, Permutation, PrefixState};

/// A forest of `n` shrubs, each a root with `k` leaves.
///
/// `labels` lists each shrub root first, then its leaves left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShrubForest {
    arity: usize,
    labels: Vec<u32>,
}

impl ShrubForest {
    pub fn new(arity: usize, labels: Vec<u32>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::invalid(format!("arity must be at least 2, got {arity}")));
        }
        let pi = Permutation::new(labels)?;
        forest_of_pi(&pi, arity)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of shrubs.
    pub fn shrubs(&self) -> usize {
        self.labels.len() / (self.arity + 1)
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn shrub(&self, i: usize) -> &[u32] {
        let w = self.arity + 1;
        &self.labels[i * w..(i + 1) * w]
    }

    pub fn root(&self, i: usize) -> u32 {
        self.labels[i * (self.arity + 1)]
    }

    pub fn leaves(&self, i: usize) -> &[u32] {
        &self.shrub(i)[1..]
    }

    pub fn roots(&self) -> impl Iterator<Item = u32> + '_ {
        self.labels.iter().step_by(self.arity + 1).copied()
    }

    pub fn permutation(&self) -> Permutation {
        pi_of_forest(self)
    }

    /// One-line wire form: the space-separated permutation.
    pub fn to_line(&self) -> String {
        self.permutation().to_spaced()
    }
}

impl fmt::Display for ShrubForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.shrubs() {
            if i > 0 {
                f.write_str(" ")?;
            }
            for &v in self.shrub(i) {
                if v >= 10 {
                    write!(f, "({v})")?;
                } else {
                    write!(f, "{v}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn pi_of_forest(f: &ShrubForest) -> Permutation {
    Permutation::from_vec_unchecked(f.labels.clone())
}

/// Splits `pi` into shrubs of `k + 1` labels, checking the heap condition.
pub fn forest_of_pi(pi: &Permutation, k: usize) -> Result<ShrubForest> {
    if k < 2 {
        return Err(Error::invalid(format!("arity must be at least 2, got {k}")));
    }
    let w = k + 1;
    if !pi.len().is_multiple_of(w) {
        return Err(Error::invalid(format!(
            "length {} is not a multiple of {w}",
            pi.len()
        )));
    }
    for (block, chunk) in pi.values().chunks(w).enumerate() {
        if chunk[1..].iter().any(|&leaf| leaf < chunk[0]) {
            return Err(Error::NotAShrubWord { block });
        }
    }
    Ok(ShrubForest { arity: k, labels: pi.values().to_vec() })
}

/// A labeled rooted tree, read out in breadth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heap {
    pub label: u32,
    pub children: Vec<Heap>,
}

impl Heap {
    pub fn leaf(label: u32) -> Self {
        Heap { label, children: Vec::new() }
    }

    pub fn node(label: u32, children: Vec<Heap>) -> Self {
        Heap { label, children }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Heap::size).sum::<usize>()
    }

    pub fn breadth_first(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.size());
        let mut level = vec![self];
        while !level.is_empty() {
            out.extend(level.iter().map(|h| h.label));
            level = level.iter().flat_map(|h| h.children.iter()).collect();
        }
        out
    }

    fn heap_ordered(&self) -> bool {
        self.children
            .iter()
            .all(|c| c.label > self.label && c.heap_ordered())
    }
}

/// An ordered collection of heaps of arbitrary shape and arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeapForest {
    pub heaps: Vec<Heap>,
}

impl HeapForest {
    /// Concatenated breadth-first readouts; fails unless the labels form a
    /// permutation and every child exceeds its parent.
    pub fn permutation(&self) -> Result<Permutation> {
        if let Some(i) = self.heaps.iter().position(|h| !h.heap_ordered()) {
            return Err(Error::NotAShrubWord { block: i });
        }
        Permutation::new(self.heaps.iter().flat_map(Heap::breadth_first).collect())
    }
}

/// Default cap on visited search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Shared node counter; workers report in batches.
struct Budget {
    limit: u64,
    used: AtomicU64,
    exhausted: AtomicBool,
}

const BATCH: u64 = 4096;

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0), exhausted: AtomicBool::new(false) }
    }

    fn charge(&self, pending: &mut u64) -> Result<()> {
        *pending += 1;
        if *pending >= BATCH {
            self.flush(pending)?;
        }
        Ok(())
    }

    fn flush(&self, pending: &mut u64) -> Result<()> {
        let total = self.used.fetch_add(*pending, Ordering::Relaxed) + *pending;
        *pending = 0;
        if total > self.limit || self.exhausted.load(Ordering::Relaxed) {
            self.exhausted.store(true, Ordering::Relaxed);
            return Err(Error::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

/// Brute-force search over labelings of `shrubs` shrubs of the given arity
/// whose readout avoids every pattern in `patterns`.
#[derive(Clone, Debug)]
pub struct Enumerator {
    arity: usize,
    shrubs: usize,
    patterns: Option<PatternSet>,
    node_budget: u64,
}

impl Enumerator {
    pub fn new(arity: usize, shrubs: usize, patterns: Option<PatternSet>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::invalid(format!("arity must be at least 2, got {arity}")));
        }
        let len = (arity + 1) * shrubs;
        if len > PrefixState::MAX_VALUE as usize {
            return Err(Error::invalid(format!(
                "forests of {len} labels are beyond brute-force reach"
            )));
        }
        Ok(Enumerator { arity, shrubs, patterns, node_budget: DEFAULT_NODE_BUDGET })
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn shrubs(&self) -> usize {
        self.shrubs
    }

    pub fn patterns(&self) -> Option<&PatternSet> {
        self.patterns.as_ref()
    }

    fn matchers(&self) -> Vec<IncrementalMatcher> {
        self.patterns
            .iter()
            .flat_map(|set| set.iter())
            .map(IncrementalMatcher::new)
            .collect()
    }

    /// Exact number of avoiding forests.
    pub fn count(&self) -> Result<BigUint> {
        let budget = Budget::new(self.node_budget);
        let counts = self.split(&budget, |search, pending| search.run(pending, &mut |_| ()))?;
        Ok(counts.into_iter().map(BigUint::from).sum())
    }

    /// All avoiding forests in generation order, independent of the number
    /// of workers.
    pub fn collect(&self) -> Result<Vec<ShrubForest>> {
        let budget = Budget::new(self.node_budget);
        let arity = self.arity;
        let chunks = self.split(&budget, |search, pending| {
            let mut found = Vec::new();
            search.run(pending, &mut |labels: &[u32]| {
                found.push(ShrubForest { arity, labels: labels.to_vec() })
            })?;
            Ok(found)
        })?;
        Ok(chunks.into_iter().flatten().collect())
    }

    /// Sequential streaming visit in generation order; returns the count.
    pub fn for_each(&self, mut visit: impl FnMut(&ShrubForest)) -> Result<u64> {
        let budget = Budget::new(self.node_budget);
        let mut search = Search::new(self, &budget);
        let mut pending = 0;
        let arity = self.arity;
        let count = search.run(&mut pending, &mut |labels: &[u32]| {
            visit(&ShrubForest { arity, labels: labels.to_vec() })
        })?;
        budget.flush(&mut pending)?;
        Ok(count)
    }

    /// Expands every valid labeling of the first shrub, then finishes the
    /// search below each in parallel. Results come back in prefix order.
    fn split<R, F>(&self, budget: &Budget, work: F) -> Result<Vec<R>>
    where
        R: Send,
        F: Fn(&mut Search<'_>, &mut u64) -> Result<R> + Sync + Send,
    {
        let mut seed = Search::new(self, budget);
        let depth = (self.arity + 1).min(seed.total);
        let mut prefixes = Vec::new();
        let mut pending = 0;
        seed.expand_to(depth, &mut pending, &mut prefixes)?;
        budget.flush(&mut pending)?;
        let results = par::map(prefixes, |prefix| {
            let mut search = Search::new(self, budget);
            for v in prefix {
                search.place(v);
            }
            let mut pending = 0;
            let out = work(&mut search, &mut pending)?;
            budget.flush(&mut pending)?;
            Ok(out)
        });
        results.into_iter().collect()
    }
}

struct Search<'a> {
    arity: usize,
    total: usize,
    matchers: Vec<IncrementalMatcher>,
    used: u128,
    state: PrefixState,
    budget: &'a Budget,
}

impl<'a> Search<'a> {
    fn new(e: &Enumerator, budget: &'a Budget) -> Self {
        Search {
            arity: e.arity,
            total: (e.arity + 1) * e.shrubs,
            matchers: e.matchers(),
            used: 0,
            state: PrefixState::new(),
            budget,
        }
    }

    fn place(&mut self, v: u32) {
        self.used |= 1u128 << v;
        self.state.push(v);
    }

    fn unplace(&mut self, v: u32) {
        self.used &= !(1u128 << v);
        self.state.pop();
    }

    /// Labels allowed at the next position, in increasing order.
    fn candidates(&self) -> Vec<u32> {
        let p = self.state.len();
        let w = self.arity + 1;
        let offset = p % w;
        let total = self.total as u32;
        // bits 1..=total that are still free
        let all = (if total >= 127 { u128::MAX } else { (1u128 << (total + 1)) - 1 }) & !1;
        let free = all & !self.used;
        let floor = if offset == 0 { 0 } else { self.state.values()[p - offset] };
        let mut out = Vec::new();
        let mut rest = free;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            if self.matchers.iter().any(|m| m.completes(&self.state, v)) {
                // every later position sees this prefix too, so `v` can never be placed
                return Vec::new();
            }
            if v <= floor || (offset == 0 && ((free >> v) >> 1).count_ones() < self.arity as u32) {
                continue;
            }
            out.push(v);
        }
        out
    }

    fn expand_to(&mut self, depth: usize, pending: &mut u64, out: &mut Vec<Vec<u32>>) -> Result<()> {
        if self.state.len() == depth {
            out.push(self.state.values().to_vec());
            return Ok(());
        }
        for v in self.candidates() {
            self.budget.charge(pending)?;
            self.place(v);
            self.expand_to(depth, pending, out)?;
            self.unplace(v);
        }
        Ok(())
    }

    fn run(&mut self, pending: &mut u64, visit: &mut dyn FnMut(&[u32])) -> Result<u64> {
        if self.state.len() == self.total {
            visit(self.state.values());
            return Ok(1);
        }
        let mut count = 0;
        for v in self.candidates() {
            self.budget.charge(pending)?;
            self.place(v);
            count += self.run(pending, visit)?;
            self.unplace(v);
        }
        Ok(count)
    }
}

/// Counts avoiding forests with the default node budget.
pub fn enumerate_forests(arity: usize, shrubs: usize, patterns: Option<&PatternSet>) -> Result<BigUint> {
    Enumerator::new(arity, shrubs, patterns.cloned())?.count()
}
