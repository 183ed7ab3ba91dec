//! Lattice paths over a declared step set, bounded by a line through the
//! origin or by the x-axis.
//!
//! All bound checks are exact integer comparisons: a point `(x, y)` lies
//! weakly below `y = (p/q) x` iff `q*y <= p*x`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::DEFAULT_NODE_BUDGET;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub token: char,
    pub dx: i64,
    pub dy: i64,
}

impl Step {
    pub const fn new(token: char, dx: i64, dy: i64) -> Self {
        Step { token, dx, dy }
    }
}

pub const EAST: Step = Step::new('E', 1, 0);
pub const NORTH: Step = Step::new('N', 0, 1);
pub const DIAGONAL: Step = Step::new('X', 1, 1);
pub const UP3: Step = Step::new('A', 1, 3);
pub const UP2: Step = Step::new('B', 2, 2);
pub const DOWN: Step = Step::new('D', 1, -1);

const CANONICAL: [Step; 6] = [EAST, NORTH, DIAGONAL, UP3, UP2, DOWN];

/// A set of steps with distinct one-letter tokens, kept sorted by token.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Step>", into = "Vec<Step>")]
pub struct StepAlphabet {
    steps: Vec<Step>,
}

impl StepAlphabet {
    pub fn new(mut steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::invalid("alphabet needs at least one step"));
        }
        steps.sort_by_key(|s| s.token);
        if steps.windows(2).any(|w| w[0].token == w[1].token) {
            return Err(Error::invalid("alphabet tokens must be distinct"));
        }
        for s in &steps {
            if s.dx < 0 {
                return Err(Error::invalid(format!("step {} has negative dx", s.token)));
            }
            if s.dx == 0 && s.dy == 0 {
                return Err(Error::invalid(format!("step {} is the zero step", s.token)));
            }
        }
        Ok(StepAlphabet { steps })
    }

    /// Unit East and North steps.
    pub fn east_north() -> Self {
        StepAlphabet::new(vec![EAST, NORTH]).unwrap()
    }

    /// East, North and the diagonal `(1,1)`.
    pub fn east_north_diagonal() -> Self {
        StepAlphabet::new(vec![EAST, NORTH, DIAGONAL]).unwrap()
    }

    /// `(1,3)`, `(2,2)` and `(1,-1)`.
    pub fn up_down() -> Self {
        StepAlphabet::new(vec![UP3, UP2, DOWN]).unwrap()
    }

    /// Builds an alphabet from canonical letters, e.g. `"EN"`.
    pub fn from_letters(letters: &str) -> Result<Self> {
        let steps = letters
            .chars()
            .map(|c| {
                CANONICAL
                    .iter()
                    .find(|s| s.token == c)
                    .copied()
                    .ok_or_else(|| Error::invalid(format!("no canonical step for {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        StepAlphabet::new(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn step(&self, token: char) -> Option<Step> {
        self.steps.iter().find(|s| s.token == token).copied()
    }
}

impl TryFrom<Vec<Step>> for StepAlphabet {
    type Error = Error;
    fn try_from(steps: Vec<Step>) -> Result<Self> {
        StepAlphabet::new(steps)
    }
}

impl From<StepAlphabet> for Vec<Step> {
    fn from(a: StepAlphabet) -> Self {
        a.steps
    }
}

/// A token sequence over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePath {
    alphabet: StepAlphabet,
    tokens: String,
}

impl LatticePath {
    pub fn parse(alphabet: &StepAlphabet, tokens: &str) -> Result<Self> {
        let tokens = tokens.trim();
        if let Some(c) = tokens.chars().find(|&c| alphabet.step(c).is_none()) {
            return Err(Error::path(format!("token {c:?} is not in the alphabet")));
        }
        Ok(LatticePath { alphabet: alphabet.clone(), tokens: tokens.to_string() })
    }

    pub fn empty(alphabet: &StepAlphabet) -> Self {
        LatticePath { alphabet: alphabet.clone(), tokens: String::new() }
    }

    pub fn alphabet(&self) -> &StepAlphabet {
        &self.alphabet
    }

    pub fn tokens(&self) -> &str {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        self.tokens.chars().map(|c| self.alphabet.step(c).expect("validated token"))
    }

    /// Every point visited after the origin.
    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.steps().scan((0, 0), |pos, s| {
            pos.0 += s.dx;
            pos.1 += s.dy;
            Some(*pos)
        })
    }

    pub fn endpoint(&self) -> (i64, i64) {
        self.points().last().unwrap_or((0, 0))
    }

    pub fn count(&self, token: char) -> usize {
        self.tokens.chars().filter(|&c| c == token).count()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens)
    }
}

/// Region a path must stay in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WedgeBound {
    /// Weakly below `y = (p/q) x`, with `p/q` reduced.
    BelowLine { p: u64, q: u64 },
    /// Weakly above the x-axis.
    AboveAxis,
}

impl WedgeBound {
    pub fn below_line(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::invalid("slope must be a positive fraction"));
        }
        let g = p.gcd(&q);
        Ok(WedgeBound::BelowLine { p: p / g, q: q / g })
    }

    pub fn below_slope(slope: u64) -> Self {
        WedgeBound::below_line(slope, 1).expect("positive integral slope")
    }

    pub fn admits(&self, x: i64, y: i64) -> bool {
        match *self {
            WedgeBound::BelowLine { p, q } => (q as i128) * (y as i128) <= (p as i128) * (x as i128),
            WedgeBound::AboveAxis => y >= 0,
        }
    }
}

/// True iff `path` ends at `endpoint` and every prefix point satisfies
/// `bound`.
pub fn check_bound(path: &LatticePath, bound: WedgeBound, endpoint: (i64, i64)) -> bool {
    let mut last = (0, 0);
    for pt in path.points() {
        if !bound.admits(pt.0, pt.1) {
            return false;
        }
        last = pt;
    }
    last == endpoint
}

/// Pruning data derived from the alphabet and the target.
struct Reach {
    target: (i64, i64),
    bound: WedgeBound,
    // y can never decrease
    monotone_y: bool,
    // largest drop per unit of x, as a fraction; None if unbounded
    max_drop: Option<(i64, i64)>,
}

impl Reach {
    fn new(alphabet: &StepAlphabet, bound: WedgeBound, target: (i64, i64)) -> Self {
        let monotone_y = alphabet.steps().iter().all(|s| s.dy >= 0);
        let mut max_drop = Some((0i64, 1i64));
        for s in alphabet.steps().iter().filter(|s| s.dy < 0) {
            if s.dx == 0 {
                max_drop = None;
                break;
            }
            if let Some((num, den)) = max_drop {
                if (-s.dy) * den > num * s.dx {
                    max_drop = Some((-s.dy, s.dx));
                }
            }
        }
        Reach { target, bound, monotone_y, max_drop }
    }

    fn viable(&self, x: i64, y: i64) -> bool {
        let (tx, ty) = self.target;
        if x > tx || !self.bound.admits(x, y) {
            return false;
        }
        if self.monotone_y && y > ty {
            return false;
        }
        match self.max_drop {
            Some((num, den)) => (y - ty) * den <= num * (tx - x),
            None => true,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GenerateOptions {
    pub node_budget: u64,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// Every path from the origin to `endpoint` that respects `bound`, in
/// lexicographic token order.
pub fn generate_paths(
    alphabet: &StepAlphabet,
    bound: WedgeBound,
    endpoint: (i64, i64),
    opts: GenerateOptions,
) -> Result<Vec<LatticePath>> {
    let tokens = walk(alphabet, bound, endpoint, opts)?;
    Ok(tokens
        .into_iter()
        .map(|t| LatticePath { alphabet: alphabet.clone(), tokens: t })
        .collect())
}

/// Number of paths [`generate_paths`] would yield, without storing them.
pub fn count_paths(
    alphabet: &StepAlphabet,
    bound: WedgeBound,
    endpoint: (i64, i64),
    opts: GenerateOptions,
) -> Result<BigUint> {
    let reach = Reach::new(alphabet, bound, endpoint);
    let first: Vec<Step> = alphabet.steps().to_vec();
    let per_branch = par::map(first, |s| {
        let mut nodes = 0;
        let mut count = 0u64;
        let (x, y) = (s.dx, s.dy);
        if reach.viable(x, y) {
            let mut buf = String::new();
            buf.push(s.token);
            dfs(alphabet, &reach, x, y, &mut buf, &mut nodes, opts.node_budget, &mut |_| count += 1)?;
        }
        Ok::<_, Error>(count)
    });
    let mut total = BigUint::from((endpoint == (0, 0)) as u32);
    for c in per_branch {
        total += c?;
    }
    Ok(total)
}

fn walk(
    alphabet: &StepAlphabet,
    bound: WedgeBound,
    endpoint: (i64, i64),
    opts: GenerateOptions,
) -> Result<Vec<String>> {
    let reach = Reach::new(alphabet, bound, endpoint);
    let mut out = Vec::new();
    if endpoint == (0, 0) {
        out.push(String::new());
    }
    let per_branch = par::map(alphabet.steps().to_vec(), |s| {
        let mut found = Vec::new();
        let mut nodes = 0;
        if reach.viable(s.dx, s.dy) {
            let mut buf = String::new();
            buf.push(s.token);
            dfs(alphabet, &reach, s.dx, s.dy, &mut buf, &mut nodes, opts.node_budget, &mut |t| {
                found.push(t.to_string())
            })?;
        }
        Ok::<_, Error>(found)
    });
    for branch in per_branch {
        out.extend(branch?);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    alphabet: &StepAlphabet,
    reach: &Reach,
    x: i64,
    y: i64,
    buf: &mut String,
    nodes: &mut u64,
    budget: u64,
    emit: &mut dyn FnMut(&str),
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    if (x, y) == reach.target {
        emit(buf);
    }
    for s in alphabet.steps() {
        let (nx, ny) = (x + s.dx, y + s.dy);
        if reach.viable(nx, ny) {
            buf.push(s.token);
            dfs(alphabet, reach, nx, ny, buf, nodes, budget, emit)?;
            buf.pop();
        }
    }
    Ok(())
}

/// The alphabet obtained by sending each step `(x, y)` to
/// `(x + y, l*x - y)`, together with the token map from old to new.
///
/// Images that coincide with a canonical step take its letter; any other
/// image keeps the source letter in lower case.
pub fn bw_alphabet(alphabet: &StepAlphabet, slope: u64) -> Result<(StepAlphabet, Vec<(char, char)>)> {
    let l = slope as i64;
    let mut images = Vec::new();
    let mut map = Vec::new();
    for s in alphabet.steps() {
        let (dx, dy) = (s.dx + s.dy, l * s.dx - s.dy);
        let token = CANONICAL
            .iter()
            .find(|c| c.dx == dx && c.dy == dy)
            .map(|c| c.token)
            .unwrap_or_else(|| s.token.to_ascii_lowercase());
        images.push(Step::new(token, dx, dy));
        map.push((s.token, token));
    }
    Ok((StepAlphabet::new(images)?, map))
}

/// Applies the affine step map to every step of `path`.
pub fn bw_transform(path: &LatticePath, slope: u64) -> Result<LatticePath> {
    let (alphabet, map) = bw_alphabet(path.alphabet(), slope)?;
    let tokens = path
        .tokens()
        .chars()
        .map(|c| map.iter().find(|(from, _)| *from == c).map(|(_, to)| *to).expect("validated token"))
        .collect();
    Ok(LatticePath { alphabet, tokens })
}
