//! Constructive bijections between pattern-avoiding shrub forests and
//! lattice paths in a wedge.
//!
//! | pattern | paths                                                             |
//! |---------|-------------------------------------------------------------------|
//! | 123     | E/N from `(0,0)` to `(n, kn)` below `y = kx`                      |
//! | 132     | E/N from `(0,0)` to `(n, (k+1)n)` below `y = (k+1)x`              |
//! | 213     | `(1,3)`, `(2,2)`, `(1,-1)` from `(0,0)` to `(4n, 0)` above the axis |
//! | 312     | the same paths, by a left-to-right append construction            |
//! | 231     | E/N from `(0,0)` to `(3n, 2n)` below `y = 2x/3`                   |
//!
//! Every map validates its input eagerly, and every inverse re-runs the
//! forward map on its output as a self-check.

use crate::error::{Error, Result};
use crate::forest::{forest_of_pi, ShrubForest};
use crate::paths::{check_bound, LatticePath, StepAlphabet, WedgeBound};
use crate::perm::{contains, reduce, Permutation};

fn pattern(s: &str) -> Permutation {
    s.parse().expect("static pattern")
}

/// Checks that every step of `path` is one of `allowed` (by vector).
fn require_steps(path: &LatticePath, allowed: &[(i64, i64)]) -> Result<()> {
    match path.steps().find(|s| !allowed.contains(&(s.dx, s.dy))) {
        Some(s) => Err(Error::path(format!("unexpected step {} = ({}, {})", s.token, s.dx, s.dy))),
        None => Ok(()),
    }
}

fn en_path(tokens: String) -> LatticePath {
    LatticePath::parse(&StepAlphabet::east_north(), &tokens).expect("E/N tokens")
}

fn ud_path(tokens: String) -> LatticePath {
    LatticePath::parse(&StepAlphabet::up_down(), &tokens).expect("A/B/D tokens")
}

/// Counts of East and North steps.
fn east_north_counts(path: &LatticePath) -> (usize, usize) {
    path.steps().fold((0, 0), |(e, n), s| if s.dx == 1 { (e + 1, n) } else { (e, n + 1) })
}

fn require_avoids(pi: &Permutation, rho: &str) -> Result<()> {
    if contains(pi, &pattern(rho)) {
        return Err(Error::invalid(format!("{pi} contains {rho}")));
    }
    Ok(())
}

// ---------------------------------------------------------------- 123

/// Roots are the East-step positions in decreasing order; leaves take the
/// remaining labels in decreasing order.
pub fn bij123_path_to_forest(path: &LatticePath, k: usize) -> Result<ShrubForest> {
    require_steps(path, &[(1, 0), (0, 1)])?;
    let (n, _) = east_north_counts(path);
    if !check_bound(path, WedgeBound::below_slope(k as u64), (n as i64, (k * n) as i64)) {
        return Err(Error::path(format!("{path} is not an E/N path to ({n}, {}) below y = {k}x", k * n)));
    }
    let mut roots = Vec::new();
    let mut rest = Vec::new();
    for (j, s) in path.steps().enumerate() {
        let label = j as u32 + 1;
        if s.dx == 1 {
            roots.push(label);
        } else {
            rest.push(label);
        }
    }
    roots.reverse();
    rest.reverse();
    let mut rest = rest.into_iter();
    let mut labels = Vec::with_capacity((k + 1) * n);
    for root in roots {
        labels.push(root);
        labels.extend(rest.by_ref().take(k));
    }
    ShrubForest::new(k, labels).map_err(|e| Error::internal(format!("123 construction: {e}")))
}

pub fn bij123_forest_to_path(f: &ShrubForest) -> Result<LatticePath> {
    let pi = f.permutation();
    require_avoids(&pi, "123")?;
    let mut is_root = vec![false; pi.len() + 1];
    for r in f.roots() {
        is_root[r as usize] = true;
    }
    let tokens: String = (1..=pi.len()).map(|j| if is_root[j] { 'E' } else { 'N' }).collect();
    let path = en_path(tokens);
    if bij123_path_to_forest(&path, f.arity())? != *f {
        return Err(Error::internal("123 inverse failed to round trip"));
    }
    Ok(path)
}

// ---------------------------------------------------------------- 132

/// Heights of the East steps of an E/N path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightWord {
    heights: Vec<u64>,
}

impl HeightWord {
    pub fn new(heights: Vec<u64>) -> Result<Self> {
        if heights.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("east-step heights must be weakly increasing"));
        }
        Ok(HeightWord { heights })
    }

    pub fn from_path(path: &LatticePath) -> Result<Self> {
        require_steps(path, &[(1, 0), (0, 1)])?;
        let mut h = 0;
        let mut heights = Vec::new();
        for s in path.steps() {
            if s.dx == 1 {
                heights.push(h);
            } else {
                h += 1;
            }
        }
        Ok(HeightWord { heights })
    }

    pub fn heights(&self) -> &[u64] {
        &self.heights
    }

    /// `(w_n + 1)(w_{n-1} + 1)...(w_1 + 1)`.
    pub fn w_prime(&self) -> Vec<u64> {
        self.heights.iter().rev().map(|h| h + 1).collect()
    }

    /// The E/N path with these east-step heights, padded with North steps
    /// up to `top`.
    pub fn to_path(&self, top: u64) -> LatticePath {
        let mut tokens = String::new();
        let mut h = 0;
        for &w in &self.heights {
            while h < w {
                tokens.push('N');
                h += 1;
            }
            tokens.push('E');
        }
        while h < top {
            tokens.push('N');
            h += 1;
        }
        en_path(tokens)
    }
}

pub fn bij132_path_to_forest(path: &LatticePath, k: usize) -> Result<ShrubForest> {
    require_steps(path, &[(1, 0), (0, 1)])?;
    let (n, _) = east_north_counts(path);
    let w = k + 1;
    let total = w * n;
    if !check_bound(path, WedgeBound::below_slope(w as u64), (n as i64, total as i64)) {
        return Err(Error::path(format!("{path} is not an E/N path to ({n}, {total}) below y = {w}x")));
    }
    let wp = HeightWord::from_path(path)?.w_prime();
    let mut used = vec![false; total + 2];
    let fixed: Vec<Option<u32>> = (0..n)
        .map(|i| (i == 0 || wp[i] != wp[i - 1]).then_some(wp[i] as u32))
        .collect();
    for r in fixed.iter().flatten() {
        used[*r as usize] = true;
    }
    let smallest_above = |used: &[bool], floor: u32| -> Result<u32> {
        (floor + 1..=total as u32)
            .find(|&v| !used[v as usize])
            .ok_or_else(|| Error::internal(format!("132 construction: no free label above {floor}")))
    };
    let mut labels = Vec::with_capacity(total);
    let mut last_root = 0;
    for root in fixed {
        let root = match root {
            Some(r) => r,
            None => smallest_above(&used, last_root)?,
        };
        used[root as usize] = true;
        labels.push(root);
        for _ in 0..k {
            let leaf = smallest_above(&used, root)?;
            used[leaf as usize] = true;
            labels.push(leaf);
        }
        last_root = root;
    }
    let forest = ShrubForest::new(k, labels).map_err(|e| Error::internal(format!("132 construction: {e}")))?;
    check_132_leaves(&forest)?;
    Ok(forest)
}

/// Each shrub's leaves are the `k` smallest labels above its root that do
/// not occur further left.
fn check_132_leaves(f: &ShrubForest) -> Result<()> {
    let total = f.labels().len() as u32;
    let mut seen = vec![false; total as usize + 1];
    for i in 0..f.shrubs() {
        let root = f.root(i);
        seen[root as usize] = true;
        let expected: Vec<u32> = (root + 1..=total)
            .filter(|&v| !seen[v as usize])
            .take(f.arity())
            .collect();
        if expected != f.leaves(i) {
            return Err(Error::internal(format!("132 leaves of shrub {i} are not minimal")));
        }
        for &l in f.leaves(i) {
            seen[l as usize] = true;
        }
    }
    Ok(())
}

pub fn bij132_forest_to_path(f: &ShrubForest) -> Result<LatticePath> {
    let pi = f.permutation();
    require_avoids(&pi, "132")?;
    let w = f.arity() + 1;
    let n = f.shrubs();
    let mut y: Vec<u32> = Vec::with_capacity(n);
    for i in 0..n {
        let r = f.root(i);
        let descent = i > 0 && pi.values()[i * w - 1] > r;
        y.push(if i == 0 || descent { r } else { y[i - 1] });
    }
    let heights: Vec<u64> = y.iter().rev().map(|&v| v as u64 - 1).collect();
    let path = HeightWord::new(heights)?.to_path((w * n) as u64);
    if bij132_path_to_forest(&path, f.arity())? != *f {
        return Err(Error::internal("132 inverse failed to round trip"));
    }
    Ok(path)
}

// ---------------------------------------------------------------- 213

fn check_up_down_path(path: &LatticePath) -> Result<usize> {
    require_steps(path, &[(1, 3), (2, 2), (1, -1)])?;
    let (x, _) = path.endpoint();
    if !check_bound(path, WedgeBound::AboveAxis, (x, 0)) {
        return Err(Error::path(format!("{path} does not stay weakly above the axis and return to it")));
    }
    Ok(path.steps().filter(|s| s.dy > 0).count())
}

#[derive(Clone, Copy, Debug)]
enum Item {
    // an up-segment starting at this height
    Segment(i64),
    // the midpoint of a (2,2) step
    Midpoint,
}

/// Labels the vertical unit segments (and `(2,2)` midpoints) recursively:
/// the rightmost lowest segment gets the smallest label, everything to its
/// right takes the next block of labels and everything to its left the rest.
pub fn bij213_path_to_perm(path: &LatticePath) -> Result<Permutation> {
    check_up_down_path(path)?;
    let mut items = Vec::new();
    let mut y = 0;
    for s in path.steps() {
        match (s.dx, s.dy) {
            (1, 3) => items.extend([Item::Segment(y), Item::Segment(y + 1), Item::Segment(y + 2)]),
            (2, 2) => items.extend([Item::Segment(y), Item::Midpoint, Item::Segment(y + 1)]),
            _ => {}
        }
        y += s.dy;
    }
    let mut labels = vec![0u32; items.len()];
    label_segments(&items, &mut labels, 0, items.len(), 1)?;
    let pi = Permutation::new(labels).map_err(|e| Error::internal(format!("213 labels: {e}")))?;
    forest_of_pi(&pi, 2).map_err(|e| Error::internal(format!("213 construction: {e}")))?;
    Ok(pi)
}

fn label_segments(items: &[Item], labels: &mut [u32], lo: usize, hi: usize, base: u32) -> Result<()> {
    if lo == hi {
        return Ok(());
    }
    let lowest = items[lo..hi]
        .iter()
        .filter_map(|it| match it {
            Item::Segment(h) => Some(*h),
            Item::Midpoint => None,
        })
        .min();
    let Some(lowest) = lowest else {
        if hi - lo != 1 {
            return Err(Error::internal("213 construction: subpath without up-segments"));
        }
        labels[lo] = base;
        return Ok(());
    };
    let s = (lo..hi)
        .rev()
        .find(|&i| matches!(items[i], Item::Segment(h) if h == lowest))
        .expect("lowest segment exists");
    labels[s] = base;
    let right = (hi - s - 1) as u32;
    label_segments(items, labels, s + 1, hi, base + 1)?;
    label_segments(items, labels, lo, s, base + 1 + right)
}

fn shrub_word(pi: &Permutation) -> Result<usize> {
    let f = forest_of_pi(pi, 2)?;
    Ok(f.shrubs())
}

pub fn bij213_perm_to_path(pi: &Permutation) -> Result<LatticePath> {
    let n = shrub_word(pi)?;
    require_avoids(pi, "213")?;
    let v = pi.values();
    let mut marked = vec![false; v.len()];
    for i in 0..n {
        if v[3 * i + 1] > v[3 * i + 2] {
            marked[3 * i + 1] = true;
        }
    }
    let mut tokens = String::new();
    for i in 0..n {
        let root = v[3 * i];
        for j in 0..3 * i {
            if !marked[j] && v[j] > root {
                marked[j] = true;
                tokens.push('D');
            }
        }
        tokens.push(if v[3 * i + 1] < v[3 * i + 2] { 'A' } else { 'B' });
    }
    close_to_axis(&mut tokens)?;
    let path = ud_path(tokens);
    if bij213_path_to_perm(&path)? != *pi {
        return Err(Error::internal("213 inverse failed to round trip"));
    }
    Ok(path)
}

/// Appends the final run of `(1,-1)` steps, failing if the prefix dips
/// below the axis.
fn close_to_axis(tokens: &mut String) -> Result<()> {
    let mut y: i64 = 0;
    for c in tokens.chars() {
        y += match c {
            'A' => 3,
            'B' => 2,
            _ => -1,
        };
        if y < 0 {
            return Err(Error::invalid("input does not correspond to a path above the axis"));
        }
    }
    tokens.extend(std::iter::repeat_n('D', y as usize));
    Ok(())
}

// ---------------------------------------------------------------- 312

/// Root values that a shrub appended to `values` may take without creating
/// 312: those `i` for which no inversion `x ... y` has `y < i <= x`, i.e. the
/// first `i - 1` entries are exactly `1..i-1`. Listed highest first.
fn root_candidates_312(values: &[u32]) -> Vec<u32> {
    let mut out = vec![values.len() as u32 + 1];
    let mut prefix_max = 0;
    let mut ok = vec![true];
    for &v in values {
        prefix_max = prefix_max.max(v);
        ok.push(prefix_max as usize == ok.len());
    }
    // ok[t] says whether candidate t + 1 is allowed, for t < len
    for t in (0..values.len()).rev() {
        if ok[t] {
            out.push(t as u32 + 1);
        }
    }
    out
}

/// Upsteps as `(downsteps before it, increasing leaves?)`.
fn upsteps(path: &LatticePath) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    let mut downs = 0;
    for s in path.steps() {
        if s.dy < 0 {
            downs += 1;
        } else {
            out.push((downs, s.dy == 3));
            downs = 0;
        }
    }
    out
}

/// Builds the forest left to right: after each upstep preceded by `d`
/// downsteps, the new root takes the `(d+1)`st highest admissible value and
/// its leaves are the two new maxima.
pub fn bij312_path_to_perm(path: &LatticePath) -> Result<Permutation> {
    check_up_down_path(path)?;
    let mut values: Vec<u32> = Vec::new();
    for (t, (downs, increasing)) in upsteps(path).into_iter().enumerate() {
        let root = if t == 0 {
            1
        } else {
            let cands = root_candidates_312(&values);
            *cands.get(downs).ok_or_else(|| {
                Error::internal(format!("312 construction: {downs} downsteps but {} candidates", cands.len()))
            })?
        };
        for v in values.iter_mut() {
            if *v >= root {
                *v += 1;
            }
        }
        let top = values.len() as u32 + 3;
        values.push(root);
        if increasing {
            values.extend([top - 1, top]);
        } else {
            values.extend([top, top - 1]);
        }
    }
    let pi = Permutation::new(values).map_err(|e| Error::internal(format!("312 labels: {e}")))?;
    Ok(pi)
}

pub fn bij312_perm_to_path(pi: &Permutation) -> Result<LatticePath> {
    let n = shrub_word(pi)?;
    require_avoids(pi, "312")?;
    let v = pi.values();
    let mut tokens = String::new();
    for t in 0..n {
        let prefix = reduce(&v[..3 * t + 3])?;
        let shrub = &prefix.values()[3 * t..];
        let top = 3 * t as u32 + 3;
        if shrub[1].max(shrub[2]) != top || shrub[1].min(shrub[2]) != top - 1 {
            return Err(Error::invalid(format!("shrub {t} of {pi} does not carry the two largest labels")));
        }
        if t > 0 {
            let before = reduce(&v[..3 * t])?;
            let cands = root_candidates_312(before.values());
            let d = cands
                .iter()
                .position(|&c| c == shrub[0])
                .ok_or_else(|| Error::invalid(format!("root of shrub {t} of {pi} is not admissible")))?;
            tokens.extend(std::iter::repeat_n('D', d));
        }
        tokens.push(if shrub[1] < shrub[2] { 'A' } else { 'B' });
    }
    close_to_axis(&mut tokens)?;
    let path = ud_path(tokens);
    if bij312_path_to_perm(&path)? != *pi {
        return Err(Error::internal("312 inverse failed to round trip"));
    }
    Ok(path)
}

// ---------------------------------------------------------------- 231

/// An E/N path split into its maximal `E^k N` factors, given by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    blocks: Vec<usize>,
}

impl BlockDecomposition {
    pub fn from_path(path: &LatticePath) -> Result<Self> {
        require_steps(path, &[(1, 0), (0, 1)])?;
        let mut blocks = Vec::new();
        let mut run = 0;
        for s in path.steps() {
            if s.dx == 1 {
                run += 1;
            } else {
                blocks.push(run);
                run = 0;
            }
        }
        if run != 0 {
            return Err(Error::path(format!("{path} does not end with a North step")));
        }
        Ok(BlockDecomposition { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn to_path(&self) -> LatticePath {
        let mut tokens = String::new();
        for &k in &self.blocks {
            tokens.extend(std::iter::repeat_n('E', k));
            tokens.push('N');
        }
        en_path(tokens)
    }
}

/// A permutation with bars between some adjacent entries. `bars[j] = p`
/// means a bar sits immediately before index `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Barred {
    values: Vec<u32>,
    bars: Vec<usize>,
}

impl Barred {
    fn one() -> Self {
        Barred { values: vec![1], bars: Vec::new() }
    }

    /// `1 | (a)^{1+}`
    fn prepend_one(&mut self) {
        for v in self.values.iter_mut() {
            *v += 1;
        }
        self.values.insert(0, 1);
        for b in self.bars.iter_mut() {
            *b += 1;
        }
        self.bars.insert(0, 1);
    }

    /// `m (A_1 - A_k | A_{k+1} | ... )^{m+}` with `m = max(A_k) + 1`.
    fn merge_prefix(&mut self, k: usize) -> Result<()> {
        let blocks = self.bars.len() + 1;
        if k > blocks {
            return Err(Error::internal(format!("231 construction: exponent {k} exceeds {blocks} blocks")));
        }
        let end = self.bars.get(k - 1).copied().unwrap_or(self.values.len());
        let m = self.values[..end].iter().max().copied().expect("nonempty block") + 1;
        for v in self.values.iter_mut() {
            if *v >= m {
                *v += 1;
            }
        }
        self.values.insert(0, m);
        self.bars = self.bars[k - 1..].iter().map(|b| b + 1).collect();
        Ok(())
    }

    /// Bars placed before every left-to-right maximum except the first.
    fn derived_bars(&self) -> Vec<usize> {
        let mut max = 0;
        let mut out = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            if v > max {
                if i > 0 {
                    out.push(i);
                }
                max = v;
            }
        }
        out
    }
}

fn duchon_shape(path: &LatticePath) -> Result<usize> {
    let (e, nn) = east_north_counts(path);
    if e % 3 != 0 || nn * 3 != e * 2 {
        return Err(Error::path(format!("{path} needs 3n East and 2n North steps")));
    }
    let bound = WedgeBound::below_line(2, 3).expect("2/3");
    if !check_bound(path, bound, (e as i64, nn as i64)) {
        return Err(Error::path(format!("{path} rises above y = 2x/3")));
    }
    Ok(e / 3)
}

/// The map from Duchon paths to 231-avoiding shrub words, reading the
/// blocks from the last one down to the second.
pub fn bij231_path_to_perm(path: &LatticePath) -> Result<Permutation> {
    let n = duchon_shape(path)?;
    if n == 0 {
        return Ok(Permutation::empty());
    }
    let blocks = BlockDecomposition::from_path(path)?;
    let blocks = blocks.blocks();
    let mut a = Barred::one();
    let mut easts_read = 0;
    for i in (2..=2 * n).rev() {
        let k = blocks[i - 1];
        if k == 0 {
            a.prepend_one();
        } else {
            a.merge_prefix(k)?;
        }
        if i % 2 == 0 {
            a.prepend_one();
        }
        easts_read += k;
        let j = 2 * n - i + 1;
        let expected = (j + j.div_ceil(2)) as i64 - easts_read as i64;
        if a.bars.len() as i64 != expected {
            return Err(Error::internal(format!(
                "231 construction: {} bars after {j} blocks, expected {expected}",
                a.bars.len()
            )));
        }
        if a.bars != a.derived_bars() {
            return Err(Error::internal("231 construction: bars out of step with left-to-right maxima"));
        }
    }
    let pi = Permutation::new(a.values).map_err(|e| Error::internal(format!("231 labels: {e}")))?;
    forest_of_pi(&pi, 2).map_err(|e| Error::internal(format!("231 construction: {e}")))?;
    Ok(pi)
}

pub fn bij231_perm_to_path(a: &Permutation) -> Result<LatticePath> {
    let n = shrub_word(a)?;
    require_avoids(a, "231")?;
    if n == 0 {
        return Ok(en_path(String::new()));
    }
    let v = a.values();
    let len = v.len();
    // blocks collected right to left
    let mut blocks_rev: Vec<usize> = Vec::new();
    for i in (2..len).rev() {
        // 1-based i; entries a_i, a_{i+1} are v[i-1], v[i]
        if i % 3 == 1 {
            continue;
        }
        let (cur, next) = (v[i - 1], v[i]);
        if cur < next {
            blocks_rev.push(0);
        } else {
            let mut max = 0;
            let k = v[i..]
                .iter()
                .filter(|&&x| {
                    let is_max = x > max;
                    max = max.max(x);
                    is_max && x < cur
                })
                .count();
            blocks_rev.push(k);
        }
    }
    let easts: usize = blocks_rev.iter().sum();
    let first = (3 * n)
        .checked_sub(easts)
        .ok_or_else(|| Error::invalid(format!("{a} encodes too many East steps")))?;
    blocks_rev.push(first);
    blocks_rev.reverse();
    let path = BlockDecomposition { blocks: blocks_rev }.to_path();
    duchon_shape(&path)?;
    if bij231_path_to_perm(&path)? != *a {
        return Err(Error::internal("231 inverse failed to round trip"));
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn en(s: &str) -> LatticePath {
        LatticePath::parse(&StepAlphabet::east_north(), s).unwrap()
    }

    fn ud(s: &str) -> LatticePath {
        LatticePath::parse(&StepAlphabet::up_down(), s).unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn forest(s: &str) -> ShrubForest {
        forest_of_pi(&p(s), 2).unwrap()
    }

    const FIG5_PATH: &str = "BDABDDDDDDADDBDDD";

    #[test]
    fn figure5_path_shape() {
        let path = ud(FIG5_PATH);
        assert_eq!(path.endpoint(), (20, 0));
        assert!(check_bound(&path, WedgeBound::AboveAxis, (20, 0)));
    }

    #[test]
    fn av123_pairs() {
        for (path, word) in [("EENNNN", "265143"), ("ENENNN", "365142"), ("ENNENN", "465132")] {
            assert_eq!(bij123_path_to_forest(&en(path), 2).unwrap(), forest(word));
            assert_eq!(bij123_forest_to_path(&forest(word)).unwrap(), en(path));
        }
        assert!(bij123_forest_to_path(&forest("123")).is_err());
        assert!(bij123_path_to_forest(&en("NENNNE"), 2).is_err());
    }

    #[test]
    fn av132_pairs() {
        for (heights, word) in [(vec![0, 3, 4], "567489123"), (vec![0, 2, 2], "345678129")] {
            let path = HeightWord::new(heights.clone()).unwrap().to_path(9);
            assert_eq!(bij132_path_to_forest(&path, 2).unwrap(), forest(word));
            let back = bij132_forest_to_path(&forest(word)).unwrap();
            assert_eq!(HeightWord::from_path(&back).unwrap().heights(), &heights[..]);
        }
        let single = HeightWord::new(vec![0]).unwrap().to_path(3);
        assert_eq!(bij132_path_to_forest(&single, 2).unwrap(), forest("123"));
        let back = bij132_forest_to_path(&forest("123")).unwrap();
        assert_eq!(HeightWord::from_path(&back).unwrap().heights(), &[0]);
        assert!(bij132_forest_to_path(&forest("132")).is_err());
    }

    #[test]
    fn w_prime_matches_figure() {
        let w = HeightWord::new(vec![0, 3, 4]).unwrap();
        assert_eq!(w.w_prime(), vec![5, 4, 1]);
        assert!(HeightWord::new(vec![2, 1]).is_err());
    }

    #[test]
    fn av213_examples() {
        let fig = p("7 15 14 8 9 10 11 13 12 1 5 6 2 4 3");
        assert_eq!(bij213_path_to_perm(&ud(FIG5_PATH)).unwrap(), fig);
        assert_eq!(bij213_perm_to_path(&fig).unwrap(), ud(FIG5_PATH));
        assert_eq!(bij213_path_to_perm(&ud("ADDD")).unwrap(), p("123"));
        assert_eq!(bij213_path_to_perm(&ud("BDD")).unwrap(), p("132"));
        assert_eq!(bij213_perm_to_path(&p("132")).unwrap(), ud("BDD"));
        assert_eq!(bij213_perm_to_path(&p("123")).unwrap(), ud("ADDD"));
        assert_eq!(bij213_perm_to_path(&p("465132")).unwrap(), ud("BDDBDD"));
        assert!(bij213_path_to_perm(&ud("DA")).is_err());
    }

    #[test]
    fn av312_examples() {
        let fig = p("2 5 4 3 6 7 8 10 9 1 12 13 11 15 14");
        assert_eq!(bij312_path_to_perm(&ud(FIG5_PATH)).unwrap(), fig);
        assert_eq!(bij312_perm_to_path(&fig).unwrap(), ud(FIG5_PATH));
        assert_eq!(bij312_path_to_perm(&ud("ADDD")).unwrap(), p("123"));
        assert_eq!(bij312_path_to_perm(&ud("BDD")).unwrap(), p("132"));
    }

    #[test]
    fn candidate_lists_of_worked_example() {
        assert_eq!(root_candidates_312(&[1, 3, 2]), vec![4, 2, 1]);
        assert_eq!(root_candidates_312(&[1, 4, 3, 2, 5, 6]), vec![7, 6, 5, 2, 1]);
        assert_eq!(root_candidates_312(&[1, 4, 3, 2, 5, 6, 7, 9, 8]), vec![10, 8, 7, 6, 5, 2, 1]);
    }

    #[test]
    fn av231_examples() {
        let path = en("EENENEEEEEENNENNENEN");
        let word = p("1(12)(11)2354687(10)9");
        assert_eq!(bij231_path_to_perm(&path).unwrap(), word);
        assert_eq!(bij231_perm_to_path(&word).unwrap(), path);
        assert_eq!(bij231_path_to_perm(&en("")).unwrap(), Permutation::empty());
        assert_eq!(bij231_perm_to_path(&Permutation::empty()).unwrap(), en(""));
    }

    #[test]
    fn av231_single_shrub() {
        let a = bij231_path_to_perm(&en("EEENN")).unwrap();
        let b = bij231_path_to_perm(&en("EENEN")).unwrap();
        let mut got = vec![a.clone(), b.clone()];
        got.sort();
        assert_eq!(got, vec![p("123"), p("132")]);
        assert_eq!(a, p("123"));
        assert_eq!(bij231_perm_to_path(&a).unwrap(), en("EEENN"));
        assert_eq!(bij231_perm_to_path(&b).unwrap(), en("EENEN"));
        assert!(bij231_path_to_perm(&en("ENEEN")).is_err());
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        // 231 inside a shrub word
        assert!(bij231_perm_to_path(&p("231")).is_err());
        assert!(matches!(bij231_perm_to_path(&p("145236")), Err(Error::InvalidInput(_))));
        assert!(bij213_perm_to_path(&p("243156")).is_err());
        assert!(bij312_perm_to_path(&p("356124")).is_err());
        assert!(bij123_path_to_forest(&ud("ADDD"), 2).is_err());
    }

    #[test]
    fn block_decomposition_round_trips() {
        let path = en("EENENEEEEEENNENNENEN");
        let b = BlockDecomposition::from_path(&path).unwrap();
        assert_eq!(b.blocks(), &[2, 1, 6, 0, 1, 0, 1, 1]);
        assert_eq!(b.to_path(), path);
        assert!(BlockDecomposition::from_path(&en("NE")).is_err());
    }
}
