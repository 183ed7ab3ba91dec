//! OEIS b-files: parsing, emission, a local cache and cross-checking.
//!
//! A b-file is ASCII text with one `index value` pair per line; blank lines
//! and `#` comments are ignored. Vendored prefixes of the sequences this
//! crate reproduces are compiled in, so checks run offline.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// A contiguous run of terms `a(offset), a(offset+1), ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    id: String,
    offset: i64,
    terms: Vec<BigInt>,
}

impl Sequence {
    pub fn new(id: impl Into<String>, offset: i64, terms: Vec<BigInt>) -> Self {
        Sequence { id: id.into(), offset, terms }
    }

    /// Builds a sequence from anything convertible to `BigInt`.
    pub fn from_values<T: Into<BigInt>>(id: impl Into<String>, offset: i64, terms: impl IntoIterator<Item = T>) -> Self {
        Sequence::new(id, offset, terms.into_iter().map(Into::into).collect())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The term at `index`, if present.
    pub fn get(&self, index: i64) -> Option<&BigInt> {
        let i = index.checked_sub(self.offset)?;
        usize::try_from(i).ok().and_then(|i| self.terms.get(i))
    }

    /// At most the first `n` terms.
    pub fn truncated(&self, n: usize) -> Sequence {
        Sequence::new(self.id.clone(), self.offset, self.terms.iter().take(n).cloned().collect())
    }

    /// `(index, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().enumerate().map(move |(i, v)| (self.offset + i as i64, v))
    }
}

/// Parses b-file text. Indices must be contiguous and increasing.
pub fn parse_bfile(id: &str, text: &str) -> Result<Sequence> {
    let mut offset = None;
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let mut fields = body.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected `index value`, got {body:?}")));
        };
        let index: i64 = index.parse().map_err(|_| err(format!("bad index {index:?}")))?;
        let value: BigInt = value.parse().map_err(|_| err(format!("bad value {value:?}")))?;
        let expected = *offset.get_or_insert(index) + terms.len() as i64;
        if index != expected {
            return Err(err(format!("index {index} out of sequence, expected {expected}")));
        }
        terms.push(value);
    }
    Ok(Sequence::new(id, offset.unwrap_or(0), terms))
}

/// Canonical b-file text: `index value\n` per term, nothing else.
pub fn emit_bfile(seq: &Sequence) -> String {
    let mut out = String::new();
    for (i, v) in seq.iter() {
        writeln!(out, "{i} {v}").expect("writing to a String");
    }
    out
}

/// How two sequences were lined up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alignment {
    /// Equal indices compared.
    ByIndex,
    /// Offsets differed; `computed[i]` was compared with `reference[i + shift]`,
    /// the shift chosen by matching runs of values.
    ByValueRun { shift: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Index in the computed sequence.
    pub index: i64,
    pub computed: BigInt,
    pub reference: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub alignment: Alignment,
    /// Number of aligned pairs.
    pub overlap: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl Comparison {
    /// True when the overlap is nonempty and every aligned pair agrees.
    pub fn agrees(&self) -> bool {
        self.overlap > 0 && self.first_mismatch.is_none()
    }

    /// Set when there was nothing to compare.
    pub fn warning(&self) -> Option<&'static str> {
        (self.overlap == 0).then_some("sequences do not overlap")
    }
}

fn compare_shifted(computed: &Sequence, reference: &Sequence, shift: i64) -> (usize, Option<Mismatch>) {
    let mut overlap = 0;
    for (i, c) in computed.iter() {
        if let Some(r) = reference.get(i + shift) {
            overlap += 1;
            if c != r {
                return (overlap, Some(Mismatch { index: i, computed: c.clone(), reference: r.clone() }));
            }
        }
    }
    (overlap, None)
}

/// Lines up `computed` against `reference` and reports the first mismatch.
///
/// With equal offsets the sequences are compared index by index. Otherwise
/// the shift whose overlap agrees completely and is longest wins (ties go to
/// the smaller `|shift|`, then the smaller shift); if no shift agrees, the
/// sequences are compared by index.
pub fn compare(computed: &Sequence, reference: &Sequence) -> Comparison {
    let by_index = || {
        let (overlap, first_mismatch) = compare_shifted(computed, reference, 0);
        Comparison { alignment: Alignment::ByIndex, overlap, first_mismatch }
    };
    if computed.offset == reference.offset || computed.is_empty() || reference.is_empty() {
        return by_index();
    }
    let lo = reference.offset - (computed.offset + computed.len() as i64 - 1);
    let hi = reference.offset + reference.len() as i64 - 1 - computed.offset;
    let mut best: Option<(usize, i64)> = None;
    for shift in lo..=hi {
        let (overlap, mismatch) = compare_shifted(computed, reference, shift);
        if mismatch.is_some() || overlap == 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((o, s)) => overlap > o || (overlap == o && (shift.abs(), shift) < (s.abs(), s)),
        };
        if better {
            best = Some((overlap, shift));
        }
    }
    match best {
        Some((overlap, shift)) => Comparison { alignment: Alignment::ByValueRun { shift }, overlap, first_mismatch: None },
        None => by_index(),
    }
}

// ---------------------------------------------------------------- vendored data

/// A-numbers with a compiled-in prefix.
pub const VENDORED: [&str; 6] = ["A001764", "A002293", "A060941", "A144097", "A210277", "A257995"];

fn vendored_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "A001764" => include_str!("../data/oeis/A001764.txt"),
        "A002293" => include_str!("../data/oeis/A002293.txt"),
        "A060941" => include_str!("../data/oeis/A060941.txt"),
        "A144097" => include_str!("../data/oeis/A144097.txt"),
        "A210277" => include_str!("../data/oeis/A210277.txt"),
        "A257995" => include_str!("../data/oeis/A257995.txt"),
        _ => return None,
    })
}

/// The compiled-in prefix of `id`, if there is one.
pub fn vendored(id: &str) -> Option<Sequence> {
    vendored_text(id).map(|t| parse_bfile(id, t).expect("vendored b-files are well formed"))
}

// ---------------------------------------------------------------- cache and fetch

/// Checks the `A` + six digits form.
pub fn validate_id(id: &str) -> Result<()> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("{id:?} is not an A-number")))
    }
}

/// A directory of b-files named `<A-number>.txt`.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.txt"))
    }

    pub fn load(&self, id: &str) -> Result<Option<Sequence>> {
        validate_id(id)?;
        match std::fs::read_to_string(self.path(id)) {
            Ok(text) => parse_bfile(id, &text).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes through a temporary file and a rename, so readers never see a
    /// partial b-file.
    pub fn store(&self, seq: &Sequence) -> Result<()> {
        validate_id(seq.id())?;
        std::fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{}.tmp", seq.id()));
        std::fs::write(&tmp, emit_bfile(seq))?;
        std::fs::rename(tmp, self.path(seq.id()))?;
        Ok(())
    }
}

static FETCH_LOCK: Mutex<()> = Mutex::new(());

/// Returns the cached b-file for `id`, downloading it first when `network`
/// is allowed and the cache is cold.
pub fn fetch(cache: &Cache, id: &str, network: bool) -> Result<Sequence> {
    validate_id(id)?;
    let _guard = FETCH_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(seq) = cache.load(id)? {
        return Ok(seq);
    }
    let path = cache.path(id);
    if !network {
        return Err(Error::Offline { id: id.to_string(), path });
    }
    let text = download(id).map_err(|message| Error::Fetch { id: id.to_string(), path: path.clone(), message })?;
    let seq = parse_bfile(id, &text)?;
    cache.store(&seq)?;
    Ok(seq)
}

#[cfg(feature = "fetch")]
fn download(id: &str) -> std::result::Result<String, String> {
    let url = format!("https://oeis.org/{id}/b{}.txt", &id[1..]);
    let mut response = ureq::get(&url).call().map_err(|e| e.to_string())?;
    response.body_mut().read_to_string().map_err(|e| e.to_string())
}

#[cfg(not(feature = "fetch"))]
fn download(_id: &str) -> std::result::Result<String, String> {
    Err("built without the `fetch` feature".to_string())
}
