//! Permutations and classical pattern containment.
//!
//! Values are 1-based, so a permutation of length `n` holds each of
//! `1..=n` exactly once.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Checks that `values` is a permutation of `1..=values.len()`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let idx = v as usize;
            if v == 0 || idx > n {
                return Err(Error::invalid(format!("value {v} out of range 1..={n}")));
            }
            if seen[idx] {
                return Err(Error::invalid(format!("value {v} repeated")));
            }
            seen[idx] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n as u32).collect() }
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn is_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn contains(&self, rho: &Permutation) -> bool {
        contains(self, rho)
    }

    pub fn avoids(&self, rho: &Permutation) -> bool {
        !contains(self, rho)
    }

    /// Space-separated decimal form, e.g. `7 15 14 8`.
    pub fn to_spaced(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(u32::to_string).collect();
        parts.join(" ")
    }
}

/// Compact digit form: values of 10 and above are parenthesized, e.g.
/// `1(12)(11)2354687(10)9`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.values {
            if v >= 10 {
                write!(f, "({v})")?;
            } else {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Accepts either the space-separated form or the compact digit form.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values = if s.split_whitespace().nth(1).is_some() {
            s.split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| Error::invalid(format!("bad permutation entry {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            parse_compact(s)?
        };
        Permutation::new(values)
    }
}

fn parse_compact(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        match c {
            '0'..='9' => out.push(c as u32 - '0' as u32),
            '(' => {
                let mut digits = String::new();
                loop {
                    match chars.next() {
                        Some(')') => break,
                        Some(d) if d.is_ascii_digit() => digits.push(d),
                        _ => return Err(Error::invalid(format!("unterminated group in {s:?}"))),
                    }
                }
                let v = digits
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("empty group in {s:?}")))?;
                out.push(v);
            }
            _ => return Err(Error::invalid(format!("unexpected character {c:?} in permutation"))),
        }
    }
    Ok(out)
}

/// A nonempty list of distinct patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(patterns: Vec<Permutation>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::invalid("pattern set is empty"));
        }
        for (i, p) in patterns.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::invalid("patterns must have length at least 1"));
            }
            if patterns[..i].contains(p) {
                return Err(Error::invalid(format!("duplicate pattern {p}")));
            }
        }
        Ok(PatternSet { patterns })
    }

    pub fn single(rho: Permutation) -> Result<Self> {
        PatternSet::new(vec![rho])
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.patterns.iter()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.patterns.iter().map(|p| p.to_string()).collect()
    }
}

/// Comma-separated list, e.g. `213,312`.
impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let patterns = s
            .split(',')
            .map(|p| p.trim().parse::<Permutation>())
            .collect::<Result<Vec<_>>>()?;
        PatternSet::new(patterns)
    }
}

/// The permutation order-isomorphic to `window`.
pub fn reduce(window: &[u32]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..window.len()).collect();
    order.sort_by_key(|&i| window[i]);
    if order.windows(2).any(|w| window[w[0]] == window[w[1]]) {
        return Err(Error::invalid("window entries must be distinct"));
    }
    let mut values = vec![0u32; window.len()];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank as u32 + 1;
    }
    Ok(Permutation { values })
}

/// True iff some subsequence of `pi` is order-isomorphic to `rho`.
pub fn contains(pi: &Permutation, rho: &Permutation) -> bool {
    contains_in(pi.values(), rho.values())
}

pub fn avoids(pi: &Permutation, rho: &Permutation) -> bool {
    !contains(pi, rho)
}

pub fn avoids_all(pi: &Permutation, patterns: &PatternSet) -> bool {
    patterns.iter().all(|rho| !contains(pi, rho))
}

/// Containment on any sequence of distinct values.
pub fn contains_in(values: &[u32], rho: &[u32]) -> bool {
    if rho.len() > values.len() {
        return false;
    }
    let mut chosen = Vec::with_capacity(rho.len());
    extend_match(values, rho, 0, &mut chosen)
}

/// True iff some occurrence of `rho` in `values` uses the last entry of
/// `values` as its last entry.
pub fn contains_ending_at_last(values: &[u32], rho: &[u32]) -> bool {
    let Some((&last, head)) = values.split_last() else {
        return false;
    };
    let Some((&rho_last, rho_head)) = rho.split_last() else {
        return false;
    };
    if rho.len() > values.len() {
        return false;
    }
    let mut chosen = Vec::with_capacity(rho.len());
    extend_match_anchored(head, rho_head, 0, &mut chosen, last, rho_last)
}

fn consistent(values: &[u32], rho: &[u32], chosen: &[usize], candidate: u32) -> bool {
    let slot = chosen.len();
    chosen
        .iter()
        .enumerate()
        .all(|(s, &i)| (values[i] < candidate) == (rho[s] < rho[slot]))
}

fn extend_match(values: &[u32], rho: &[u32], start: usize, chosen: &mut Vec<usize>) -> bool {
    let slot = chosen.len();
    if slot == rho.len() {
        return true;
    }
    let remaining = rho.len() - slot;
    for i in start..=values.len() - remaining {
        if consistent(values, rho, chosen, values[i]) {
            chosen.push(i);
            if extend_match(values, rho, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn extend_match_anchored(
    values: &[u32],
    rho: &[u32],
    start: usize,
    chosen: &mut Vec<usize>,
    anchor: u32,
    rho_anchor: u32,
) -> bool {
    let slot = chosen.len();
    if slot == rho.len() {
        return true;
    }
    let remaining = rho.len() - slot;
    if values.len() < remaining {
        return false;
    }
    for i in start..=values.len() - remaining {
        let v = values[i];
        if (v < anchor) == (rho[slot] < rho_anchor) && consistent(values, rho, chosen, v) {
            chosen.push(i);
            if extend_match_anchored(values, rho, i + 1, chosen, anchor, rho_anchor) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Last inversion foot statistic.
///
/// For a permutation with an inversion this is `n - v`, where `v` is the
/// rightmost entry that is not a left-to-right maximum. Increasing
/// permutations give `n`, and the empty permutation gives 0.
pub fn lif(pi: &Permutation) -> usize {
    lif_of(pi.values())
}

pub(crate) fn lif_of(values: &[u32]) -> usize {
    let n = values.len();
    let mut max = 0;
    let mut foot = None;
    for &v in values {
        if v > max {
            max = v;
        } else {
            foot = Some(v);
        }
    }
    match foot {
        Some(v) => n - v as usize,
        None => n,
    }
}

/// Prefix of a sequence under construction, with the value-set of every
/// prefix kept as a bitmask so that length-3 patterns can be tested in
/// linear time.
#[derive(Clone, Debug, Default)]
pub struct PrefixState {
    values: Vec<u32>,
    // masks[j] holds the values at positions < j
    masks: Vec<u128>,
}

impl PrefixState {
    pub const MAX_VALUE: u32 = 127;

    pub fn new() -> Self {
        PrefixState { values: Vec::new(), masks: vec![0] }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn push(&mut self, v: u32) {
        debug_assert!(v <= Self::MAX_VALUE);
        let top = *self.masks.last().expect("mask stack is never empty");
        self.values.push(v);
        self.masks.push(top | (1u128 << v));
    }

    pub fn pop(&mut self) {
        self.values.pop();
        self.masks.pop();
    }
}

/// Mask of the values strictly between `lo` and `hi` (0 and 128 act as
/// open ends).
fn between(lo: u32, hi: u32) -> u128 {
    if hi <= lo + 1 {
        return 0;
    }
    let upper = if hi >= 128 { u128::MAX } else { (1u128 << hi) - 1 };
    let lower = (1u128 << (lo + 1)) - 1;
    upper & !lower
}

/// A pattern compiled for the question "does appending `v` complete an
/// occurrence?".
#[derive(Clone, Debug)]
pub struct IncrementalMatcher {
    pattern: Vec<u32>,
}

impl IncrementalMatcher {
    pub fn new(rho: &Permutation) -> Self {
        IncrementalMatcher { pattern: rho.values().to_vec() }
    }

    /// True iff `prefix` followed by `v` contains the pattern in an
    /// occurrence that ends at `v`.
    pub fn completes(&self, prefix: &PrefixState, v: u32) -> bool {
        let values = &prefix.values;
        match self.pattern.len() {
            0 => false,
            1 => true,
            2 => {
                let up = self.pattern[0] < self.pattern[1];
                values.iter().any(|&x| (x < v) == up)
            }
            3 => self.completes3(prefix, v),
            _ => {
                let mut seq = values.clone();
                seq.push(v);
                contains_ending_at_last(&seq, &self.pattern)
            }
        }
    }

    fn completes3(&self, prefix: &PrefixState, v: u32) -> bool {
        let [a, b, c] = [self.pattern[0], self.pattern[1], self.pattern[2]];
        let mid_below = b < c;
        prefix.values.iter().enumerate().any(|(j, &y)| {
            if (y < v) != mid_below {
                return false;
            }
            let (lo, hi) = if y < v { (y, v) } else { (v, y) };
            let window = if a < b.min(c) {
                between(0, lo)
            } else if a > b.max(c) {
                between(hi, 128)
            } else {
                between(lo, hi)
            };
            prefix.masks[j] & window != 0
        })
    }
}
