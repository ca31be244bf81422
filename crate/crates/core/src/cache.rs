//! On-disk cache of enumerated element sets, one file per rank.
//!
//! ```text
//! kiselman-cache v1 n=2 count=5
//!
//! 1
//! 2
//! 1 2
//! 2 1
//! ```
//!
//! The header is followed by exactly `count` lines, one canonical word per
//! line in textual form (the unit is the empty line), in length-lexicographic
//! order.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::algebra::Element;
use crate::enumerate::EnumerationResult;
use crate::error::{Error, Result};
use crate::words::{check_rank, is_canonical, Word};

const MAGIC: &str = "kiselman-cache v1";

/// File name used for rank `n` inside a cache directory.
pub fn cache_file_name(rank: usize) -> String {
    format!("k{rank}.txt")
}

pub fn cache_path(dir: &Path, rank: usize) -> PathBuf {
    dir.join(cache_file_name(rank))
}

/// Serialises an enumeration into the cache format.
pub fn encode_cache(res: &EnumerationResult) -> String {
    let mut out = format!("{MAGIC} n={} count={}\n", res.rank(), res.cardinality());
    for x in res.iter() {
        out.push_str(&x.word().to_string());
        out.push('\n');
    }
    out
}

fn header_field<'a>(token: Option<&'a str>, key: &str) -> Result<&'a str> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::Cache(format!("header is missing `{key}=`")))
}

fn header_number(text: &str, key: &str) -> Result<usize> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Cache(format!("`{key}` is not a decimal number")));
    }
    text.parse()
        .map_err(|_| Error::Cache(format!("`{key}` is out of range")))
}

/// Parses the header line, returning `(rank, count)`.
fn parse_header(line: &str) -> Result<(usize, usize)> {
    let rest = line
        .strip_prefix(MAGIC)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| Error::Cache(format!("expected header starting with `{MAGIC}`")))?;
    let mut tokens = rest.split(' ');
    let rank = header_number(header_field(tokens.next(), "n")?, "n")?;
    let count = header_number(header_field(tokens.next(), "count")?, "count")?;
    if tokens.next().is_some() {
        return Err(Error::Cache("trailing data after header".into()));
    }
    Ok((rank, count))
}

/// Parses and validates cache text.
///
/// Validation covers the header, the declared count, canonicality of every
/// line, exact textual form, strict ordering (hence no duplicates) and, when
/// `expected_rank` is given, the rank.
pub fn decode_cache(text: &str, expected_rank: Option<usize>) -> Result<BTreeSet<Element>> {
    let (header, body) = text
        .split_once('\n')
        .ok_or_else(|| Error::Cache("missing newline after header".into()))?;
    let (rank, count) = parse_header(header)?;
    check_rank(rank).map_err(|e| Error::Cache(e.to_string()))?;
    if let Some(expected) = expected_rank {
        if expected != rank {
            return Err(Error::Cache(format!(
                "file holds rank {rank}, expected rank {expected}"
            )));
        }
    }
    if !body.is_empty() && !body.ends_with('\n') {
        return Err(Error::Cache("last line is not newline-terminated".into()));
    }
    let lines: Vec<&str> = body.split_terminator('\n').collect();
    if lines.len() != count {
        return Err(Error::Cache(format!(
            "header declares {count} words but the file holds {}",
            lines.len()
        )));
    }
    let mut elements = BTreeSet::new();
    let mut previous: Option<Word> = None;
    for (k, line) in lines.iter().enumerate() {
        let lineno = k + 2;
        let word = Word::parse(line, rank)
            .map_err(|e| Error::Cache(format!("line {lineno}: {e}")))?;
        if word.to_string() != *line {
            return Err(Error::Cache(format!("line {lineno}: not in normalised form")));
        }
        if !is_canonical(&word) {
            return Err(Error::Cache(format!("line {lineno}: `{line}` is not canonical")));
        }
        if let Some(prev) = &previous {
            if *prev >= word {
                return Err(Error::Cache(format!(
                    "line {lineno}: words are not in strictly increasing order"
                )));
            }
        }
        previous = Some(word.clone());
        elements.insert(Element::from_canonical_unchecked(word));
    }
    Ok(elements)
}

/// Writes the cache file for `res` into `dir`, creating the directory.
pub fn write_cache(dir: &Path, res: &EnumerationResult) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, res.rank());
    let tmp = path.with_extension("txt.tmp");
    fs::write(&tmp, encode_cache(res))?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Reads the cache file for `rank`, if present, and validates it as a full
/// element set of `K_n`.
pub fn read_cache(dir: &Path, rank: usize) -> Result<Option<EnumerationResult>> {
    let path = cache_path(dir, rank);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let elements = decode_cache(&text, Some(rank))
        .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    EnumerationResult::from_elements(rank, elements)
        .map(Some)
        .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
}

/// Loads rank `n` from the cache, or enumerates it and stores the result.
pub fn load_or_enumerate(dir: Option<&Path>, rank: usize, limit: usize) -> Result<EnumerationResult> {
    if let Some(dir) = dir {
        if let Some(res) = read_cache(dir, rank)? {
            if res.cardinality() > limit {
                return Err(Error::LimitExceeded {
                    rank: rank as u8,
                    limit,
                });
            }
            return Ok(res);
        }
    }
    let res = crate::enumerate::enumerate_elements(rank, limit)?;
    if let Some(dir) = dir {
        write_cache(dir, &res)?;
    }
    Ok(res)
}
