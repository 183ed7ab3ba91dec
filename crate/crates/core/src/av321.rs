//! Series engine for 321-avoiding binary shrub forests.
//!
//! Forests are grown one shrub at a time while tracking the distribution of
//! the last-inversion-foot statistic, `counts[k] = #{forests with lif = k}`.
//! Appending a shrub acts on that distribution linearly, as four transition
//! operators on `u^k`:
//!
//! ```text
//! A: u^k -> u + ... + u^k        B: u^k -> u + ... + u^(k+1)
//! C: u^k -> u^(k+1)              D: u^k -> u + u^(k+1)
//! ```
//!
//! one shrub being `B B A + D C C`. The module also checks the series
//! against its degree-20 minimal polynomial and brackets the growth rate.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::par;

// ---------------------------------------------------------------- operators

/// Below this length suffix sums run sequentially.
const PAR_THRESHOLD: usize = 1024;
const SEGMENT: usize = 256;

/// `out[j] = v[j] + v[j+1] + ...` for `j in 0..=len` (so `out[len] = 0`).
pub fn suffix_sums(v: &[BigUint]) -> Vec<BigUint> {
    if v.len() < PAR_THRESHOLD {
        let mut out = vec![BigUint::zero(); v.len() + 1];
        for j in (0..v.len()).rev() {
            out[j] = &out[j + 1] + &v[j];
        }
        return out;
    }
    let segments: Vec<&[BigUint]> = v.chunks(SEGMENT).collect();
    let totals: Vec<BigUint> = par::map(segments.clone(), |s| s.iter().sum());
    // carry[i] = sum of all segments after i
    let mut carry = vec![BigUint::zero(); segments.len()];
    for i in (0..segments.len().saturating_sub(1)).rev() {
        carry[i] = &carry[i + 1] + &totals[i + 1];
    }
    let parts: Vec<Vec<BigUint>> = par::map(segments.into_iter().zip(carry).collect(), |(s, c)| {
        let mut out = vec![BigUint::zero(); s.len()];
        let mut acc = c;
        for j in (0..s.len()).rev() {
            acc += &s[j];
            out[j] = acc.clone();
        }
        out
    });
    let mut out: Vec<BigUint> = parts.into_iter().flatten().collect();
    out.push(BigUint::zero());
    out
}

/// `u^k -> u + ... + u^k`.
pub fn op_a(v: &[BigUint]) -> Vec<BigUint> {
    let s = suffix_sums(v);
    let mut out = s;
    out.pop();
    if let Some(first) = out.first_mut() {
        *first = BigUint::zero();
    }
    out
}

/// `u^k -> u + ... + u^(k+1)`.
pub fn op_b(v: &[BigUint]) -> Vec<BigUint> {
    let s = suffix_sums(v);
    let mut out = s;
    out.pop();
    out.insert(0, BigUint::zero());
    out
}

/// `u^k -> u^(k+1)`.
pub fn op_c(v: &[BigUint]) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(BigUint::zero());
    out.extend(v.iter().cloned());
    out
}

/// `u^k -> u + u^(k+1)`.
pub fn op_d(v: &[BigUint]) -> Vec<BigUint> {
    let mut out = op_c(v);
    if out.len() < 2 {
        out.resize(2, BigUint::zero());
    }
    out[1] += v.iter().sum::<BigUint>();
    out
}

fn add_into(acc: &mut Vec<BigUint>, other: Vec<BigUint>) {
    if acc.len() < other.len() {
        acc.resize(other.len(), BigUint::zero());
    }
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
}

/// One shrub: `B B A + D C C`, applied to a whole distribution.
pub fn combined_step(v: &[BigUint]) -> Vec<BigUint> {
    let mut out = op_b(&op_b(&op_a(v)));
    add_into(&mut out, op_d(&op_c(&op_c(v))));
    out.resize(v.len() + 3, BigUint::zero());
    out
}

/// The image of a single `u^k` under one shrub, as a dense row read off the
/// combined multiset rule rather than the operators:
/// `{1^C(k+2,2), 2^(C(k+2,2)-1), j^C(k+4-j,2) for 3 <= j <= k+2, (k+3)^1}`.
pub fn combined_row(k: usize) -> Vec<BigUint> {
    let c2 = |m: usize| BigUint::from(m * m.saturating_sub(1) / 2);
    let mut row = vec![BigUint::zero(); k + 4];
    row[1] += c2(k + 2);
    row[2] += c2(k + 2) - 1u32;
    for (j, slot) in row.iter_mut().enumerate().take(k + 3).skip(3) {
        *slot += c2(k + 4 - j);
    }
    row[k + 3] += 1u32;
    row
}

// ---------------------------------------------------------------- states

/// The lif distribution over 321-avoiding binary shrub forests on `n`
/// shrubs; `counts` has length `3n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LifStateVector {
    n: usize,
    counts: Vec<BigUint>,
}

impl LifStateVector {
    /// The empty forest, whose lif is 0.
    pub fn seed() -> Self {
        LifStateVector { n: 0, counts: vec![BigUint::one()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn step(&self) -> Self {
        LifStateVector { n: self.n + 1, counts: combined_step(&self.counts) }
    }
}

/// Distributions for `n = 0..=max_n`.
pub fn lif_histograms(max_n: usize) -> Vec<LifStateVector> {
    let mut out = vec![LifStateVector::seed()];
    for _ in 0..max_n {
        let next = out.last().expect("seeded").step();
        out.push(next);
    }
    out
}

/// `a_0, ..., a_{terms-1}` where `a_n` counts 321-avoiding binary shrub
/// forests on `n` shrubs.
pub fn series(terms: usize) -> Result<Vec<BigUint>> {
    if terms == 0 {
        return Err(Error::invalid("series needs at least one term"));
    }
    let mut state = LifStateVector::seed();
    let mut out = Vec::with_capacity(terms);
    out.push(state.total());
    for _ in 1..terms {
        state = state.step();
        out.push(state.total());
    }
    Ok(out)
}

// ---------------------------------------------------------------- minimal polynomial

const MINPOLY_DATA: &str = include_str!("../data/minpoly.txt");

/// A polynomial in `x` and `H`, stored as one `x`-polynomial per power of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    // (power of H, coefficients of x^0, x^1, ...)
    terms: Vec<(u32, Vec<BigInt>)>,
}

impl MinimalPolynomial {
    /// The polynomial annihilating the 321 series, from the bundled data file.
    pub fn bundled() -> Self {
        Self::parse(MINPOLY_DATA).expect("bundled minimal polynomial is well formed")
    }

    /// Parses `power: c0 c1 ...` lines and verifies every `check x h value` line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms: Vec<(u32, Vec<BigInt>)> = Vec::new();
        let mut checks = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |m: &str| Error::Parse { line: line_no, message: m.to_string() };
            let ints = |s: &str| -> Result<Vec<BigInt>> {
                s.split_whitespace()
                    .map(|t| t.parse::<BigInt>().map_err(|_| perr(&format!("bad integer {t:?}"))))
                    .collect()
            };
            if let Some(rest) = line.strip_prefix("check") {
                let v = ints(rest)?;
                if v.len() != 3 {
                    return Err(perr("check needs x, h and value"));
                }
                checks.push((line_no, v));
            } else if let Some((power, coeffs)) = line.split_once(':') {
                let power: u32 = power.trim().parse().map_err(|_| perr("bad power"))?;
                if terms.iter().any(|(p, _)| *p == power) {
                    return Err(perr("repeated power"));
                }
                terms.push((power, ints(coeffs)?));
            } else {
                return Err(perr("expected `power: coefficients` or `check x h value`"));
            }
        }
        terms.sort_by_key(|(p, _)| *p);
        let poly = MinimalPolynomial { terms };
        for (line, v) in checks {
            let got = poly.evaluate(&v[0], &v[1]);
            if got != v[2] {
                return Err(Error::Parse { line, message: format!("checksum mismatch: polynomial gives {got}") });
            }
        }
        Ok(poly)
    }

    pub fn from_terms(terms: Vec<(u32, Vec<BigInt>)>) -> Self {
        let mut terms = terms;
        terms.sort_by_key(|(p, _)| *p);
        MinimalPolynomial { terms }
    }

    pub fn terms(&self) -> &[(u32, Vec<BigInt>)] {
        &self.terms
    }

    pub fn degree_in_h(&self) -> u32 {
        self.terms
            .iter()
            .filter(|(_, c)| c.iter().any(|v| !v.is_zero()))
            .map(|(p, _)| *p)
            .max()
            .unwrap_or(0)
    }

    /// The polynomial at integer `x`, `h`.
    pub fn evaluate(&self, x: &BigInt, h: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (p, coeffs) in &self.terms {
            let mut cx = BigInt::zero();
            for c in coeffs.iter().rev() {
                cx = cx * x + c;
            }
            total += cx * h.pow(*p);
        }
        total
    }

    /// A copy with coefficient `[x^d H^p]` shifted by `delta`.
    pub fn perturbed(&self, power: u32, d: usize, delta: i64) -> Self {
        let mut out = self.clone();
        match out.terms.iter_mut().find(|(p, _)| *p == power) {
            Some((_, c)) => {
                if c.len() <= d {
                    c.resize(d + 1, BigInt::zero());
                }
                c[d] += delta;
            }
            None => {
                let mut c = vec![BigInt::zero(); d + 1];
                c[d] = BigInt::from(delta);
                out.terms.push((power, c));
                out.terms.sort_by_key(|(p, _)| *p);
            }
        }
        out
    }
}

/// Outcome of substituting a truncated series into a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPolyCheck {
    pub order: usize,
    /// Lowest order at which the substitution has a nonzero coefficient.
    pub first_failure: Option<usize>,
}

impl MinPolyCheck {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Substitutes `series` (as `H(x)`) into `poly` modulo `x^(order+1)`.
pub fn verify_min_poly(poly: &MinimalPolynomial, series: &[BigUint], order: usize) -> Result<MinPolyCheck> {
    if series.len() < order + 1 {
        return Err(Error::invalid(format!(
            "order {order} needs {} series terms, got {}",
            order + 1,
            series.len()
        )));
    }
    let len = order + 1;
    let h: Vec<BigInt> = series[..len].iter().map(|v| BigInt::from(v.clone())).collect();
    let top = poly.terms.iter().map(|(p, _)| *p).max().unwrap_or(0);
    let mut powers = vec![{
        let mut one = vec![BigInt::zero(); len];
        one[0] = BigInt::one();
        one
    }];
    for _ in 0..top {
        let next = mul_trunc(powers.last().expect("nonempty"), &h, len);
        powers.push(next);
    }
    let powers = &powers;
    let products = par::map(poly.terms.clone(), |(p, coeffs)| mul_trunc(&coeffs, &powers[p as usize], len));
    let mut sum = vec![BigInt::zero(); len];
    for prod in products {
        for (s, v) in sum.iter_mut().zip(prod) {
            *s += v;
        }
    }
    Ok(MinPolyCheck { order, first_failure: sum.iter().position(|c| !c.is_zero()) })
}

// ---------------------------------------------------------------- growth rate

/// The quartic whose greatest real root is the growth rate, constant term first.
pub const GROWTH_QUARTIC: [i64; 5] = [621, -25758, -15505, -28674, 729];

type RPoly = Vec<BigRational>;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn trim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[BigRational]) -> RPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
}

fn rem(a: &[BigRational], b: &[BigRational]) -> RPoly {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn sturm_chain(p: &[BigRational]) -> Vec<RPoly> {
    let mut chain = vec![trim(p.to_vec()), derivative(p)];
    while !chain.last().expect("nonempty").is_empty() {
        let n = chain.len();
        let r: RPoly = rem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain.retain(|q| !q.is_empty());
    chain
}

fn sign_changes(chain: &[RPoly], x: &BigRational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|q| eval(q, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// A real root bracketed by an exact rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRate {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Decimal digits after the point in `decimal`.
    pub digits: u32,
    /// The root rounded to `digits` decimal places; every point of `[lo, hi]`
    /// rounds to this value.
    pub decimal: String,
}

impl GrowthRate {
    pub fn value(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / rat(2);
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

/// Disjoint intervals `(lo, hi]` each holding exactly one real root of `p`,
/// in increasing order.
pub fn isolate_real_roots(p: &[BigRational]) -> Vec<(BigRational, BigRational)> {
    let p = trim(p.to_vec());
    if p.len() < 2 {
        return Vec::new();
    }
    let chain = sturm_chain(&p);
    let lead = p.last().expect("nonempty").abs();
    let bound = p[..p.len() - 1].iter().map(|c| c.abs() / &lead).fold(BigRational::one(), |m, c| {
        if c > m {
            c
        } else {
            m
        }
    }) + rat(1);
    let count = |a: &BigRational, b: &BigRational| sign_changes(&chain, a) - sign_changes(&chain, b);
    let mut stack = vec![(-bound.clone(), bound)];
    let mut out = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match count(&a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let m = (&a + &b) / rat(2);
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    out.sort();
    out
}

fn round_scaled(x: &BigRational, scale: &BigInt) -> BigInt {
    let scaled = x * BigRational::from_integer(scale.clone()) + BigRational::new(BigInt::one(), BigInt::from(2));
    scaled.numer().div_floor(scaled.denom())
}

fn render(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    let d = digits as usize;
    if d > 0 {
        if s.len() <= d {
            s = format!("{}{s}", "0".repeat(d + 1 - s.len()));
        }
        s.insert(s.len() - d, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

/// Brackets the greatest real root of `p` until its rounding to `digits`
/// decimal places is determined.
pub fn greatest_root(p: &[BigRational], digits: u32) -> Result<GrowthRate> {
    let roots = isolate_real_roots(p);
    let (mut lo, mut hi) = roots.last().cloned().ok_or_else(|| Error::invalid("polynomial has no real root"))?;
    let p = trim(p.to_vec());
    let scale = BigInt::from(10u32).pow(digits);
    if eval(&p, &hi).is_zero() {
        lo = hi.clone();
    }
    let sign_hi = eval(&p, &hi).is_positive();
    loop {
        let (a, b) = (round_scaled(&lo, &scale), round_scaled(&hi, &scale));
        if a == b {
            return Ok(GrowthRate { lo, hi, digits, decimal: render(&a, digits) });
        }
        let m = (&lo + &hi) / rat(2);
        let v = eval(&p, &m);
        if v.is_zero() {
            return Ok(GrowthRate { decimal: render(&round_scaled(&m, &scale), digits), lo: m.clone(), hi: m, digits });
        }
        if v.is_positive() == sign_hi {
            hi = m;
        } else {
            lo = m;
        }
    }
}

/// The growth rate of 321-avoiding binary shrub forests.
pub fn growth_rate(digits: u32) -> Result<GrowthRate> {
    if digits == 0 {
        return Err(Error::invalid("precision must be at least one digit"));
    }
    let q: RPoly = GROWTH_QUARTIC.iter().map(|&c| rat(c)).collect();
    greatest_root(&q, digits)
}
