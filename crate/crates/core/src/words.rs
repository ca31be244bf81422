//! Words over the generator alphabet `{1, …, n}`.
//!
//! Letters are stored as their 1-based generator subscripts, so the letter `3`
//! stands for `a_3`. Every [`Word`] carries the rank it lives in and operations
//! across ranks fail instead of reinterpreting letters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest rank supported; [`LetterSet`] is a 64-bit mask.
pub const MAX_RANK: usize = 64;

pub(crate) fn check_rank(rank: usize) -> Result<u8> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::InvalidRank {
            rank,
            max: MAX_RANK,
        });
    }
    Ok(rank as u8)
}

fn same_rank(left: u8, right: u8) -> Result<()> {
    if left != right {
        return Err(Error::RankMismatch { left, right });
    }
    Ok(())
}

/// A finite word over `{1, …, rank}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u8,
    letters: Vec<u8>,
}

impl Word {
    /// Builds a word from generator indices, validating each against `rank`.
    pub fn from_indices<I>(indices: I, rank: usize) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<u64>,
    {
        let rank = check_rank(rank)?;
        let mut letters = Vec::new();
        for (position, index) in indices.into_iter().enumerate() {
            let index = index.into();
            if index == 0 || index > u64::from(rank) {
                return Err(Error::IndexOutOfRange {
                    position,
                    index,
                    rank,
                });
            }
            letters.push(index as u8);
        }
        Ok(Word { rank, letters })
    }

    /// Parses the textual form: whitespace-separated decimal indices, the empty
    /// string being the empty word.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let rank_u8 = check_rank(rank)?;
        let mut letters = Vec::new();
        for (position, token) in text.split_ascii_whitespace().enumerate() {
            if !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse {
                    position,
                    token: token.to_owned(),
                });
            }
            // all digits, so only overflow can fail
            let index: u64 = token.parse().unwrap_or(u64::MAX);
            if index == 0 || index > u64::from(rank_u8) {
                return Err(Error::IndexOutOfRange {
                    position,
                    index,
                    rank: rank_u8,
                });
            }
            letters.push(index as u8);
        }
        Ok(Word {
            rank: rank_u8,
            letters,
        })
    }

    pub fn empty(rank: usize) -> Result<Self> {
        Ok(Word {
            rank: check_rank(rank)?,
            letters: Vec::new(),
        })
    }

    /// Caller guarantees every letter lies in `1..=rank`.
    pub(crate) fn from_raw(rank: u8, letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&l| l >= 1 && l <= rank));
        Word { rank, letters }
    }

    pub fn rank(&self) -> usize {
        usize::from(self.rank)
    }

    pub(crate) fn rank_u8(&self) -> u8 {
        self.rank
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains_letter(&self, letter: u8) -> bool {
        self.letters.contains(&letter)
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        same_rank(self.rank, other.rank)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    /// The word read backwards.
    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// Contiguous factor `letters[start..end]`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters[start..end].to_vec(),
        }
    }

    /// The same letters viewed in a different rank. Fails if a letter would
    /// fall outside the new alphabet.
    pub fn with_rank(&self, rank: usize) -> Result<Word> {
        Word::from_indices(self.letters.iter().map(|&l| u64::from(l)), rank)
    }

    /// Adds `offset` to every letter, moving the word into `rank`.
    pub fn shifted(&self, offset: u8, rank: usize) -> Result<Word> {
        Word::from_indices(
            self.letters.iter().map(|&l| u64::from(l) + u64::from(offset)),
            rank,
        )
    }

    /// The set of letters occurring in the word.
    pub fn letter_set(&self) -> LetterSet {
        let mut set = LetterSet::empty_unchecked(self.rank);
        for &l in &self.letters {
            set.bits |= 1u64 << (l - 1);
        }
        set
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}, n={})", self.to_string(), self.rank)
    }
}

/// Length-lexicographic order (rank first, then length, then letters).
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A subset of `{1, …, rank}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterSet {
    rank: u8,
    bits: u64,
}

impl LetterSet {
    fn empty_unchecked(rank: u8) -> Self {
        LetterSet { rank, bits: 0 }
    }

    fn mask(rank: u8) -> u64 {
        if rank as usize == MAX_RANK {
            u64::MAX
        } else {
            (1u64 << rank) - 1
        }
    }

    pub fn empty(rank: usize) -> Result<Self> {
        Ok(Self::empty_unchecked(check_rank(rank)?))
    }

    /// `{1, …, rank}`.
    pub fn full(rank: usize) -> Result<Self> {
        let rank = check_rank(rank)?;
        Ok(LetterSet {
            rank,
            bits: Self::mask(rank),
        })
    }

    /// `{lo, lo+1, …, hi}`, empty when `hi < lo`. Bounds are clamped to the
    /// alphabet.
    pub fn range(lo: usize, hi: usize, rank: usize) -> Result<Self> {
        let mut set = Self::empty(rank)?;
        for i in lo.max(1)..=hi.min(rank) {
            set.bits |= 1u64 << (i - 1);
        }
        Ok(set)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I, rank: usize) -> Result<Self> {
        let mut set = Self::empty(rank)?;
        for (position, i) in indices.into_iter().enumerate() {
            if i == 0 || i > rank {
                return Err(Error::IndexOutOfRange {
                    position,
                    index: i as u64,
                    rank: set.rank,
                });
            }
            set.bits |= 1u64 << (i - 1);
        }
        Ok(set)
    }

    /// Every subset of `{1, …, rank}`, ordered by bitmask.
    pub fn all_subsets(rank: usize) -> Result<impl Iterator<Item = LetterSet>> {
        let rank = check_rank(rank)?;
        if rank > 20 {
            return Err(Error::Domain(format!(
                "refusing to list the 2^{rank} subsets of a rank-{rank} alphabet"
            )));
        }
        Ok((0..(1u64 << rank)).map(move |bits| LetterSet { rank, bits }))
    }

    pub fn rank(&self) -> usize {
        usize::from(self.rank)
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.rank() && self.bits & (1u64 << (i - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn union(&self, other: &LetterSet) -> Result<LetterSet> {
        same_rank(self.rank, other.rank)?;
        Ok(LetterSet {
            rank: self.rank,
            bits: self.bits | other.bits,
        })
    }

    pub fn is_subset(&self, other: &LetterSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.rank()).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LetterSet({self}, n={})", self.rank)
    }
}

/// Whether `u` occurs as a contiguous block of `w`.
pub fn is_subword(u: &Word, w: &Word) -> Result<bool> {
    same_rank(u.rank, w.rank)?;
    if u.is_empty() {
        return Ok(true);
    }
    Ok(w.letters.windows(u.len()).any(|win| win == u.letters.as_slice()))
}

/// Whether `v` is a (not necessarily contiguous) subsequence of `w`.
pub fn is_quasi_subword(v: &Word, w: &Word) -> Result<bool> {
    same_rank(v.rank, w.rank)?;
    let mut rest = w.letters.iter();
    Ok(v.letters.iter().all(|l| rest.any(|m| m == l)))
}

/// Whether the pair formed by the last letter and its previous occurrence
/// breaks canonicality. Any new violation after appending a letter involves
/// exactly this pair.
pub(crate) fn last_letter_violates(letters: &[u8]) -> bool {
    let Some((&last, init)) = letters.split_last() else {
        return false;
    };
    match init.iter().rposition(|&l| l == last) {
        Some(p) => !gap_is_mixed(&init[p + 1..], last),
        None => false,
    }
}

/// The gap holds both a larger and a smaller letter than `i`.
fn gap_is_mixed(gap: &[u8], i: u8) -> bool {
    gap.iter().any(|&l| l > i) && gap.iter().any(|&l| l < i)
}

/// Canonicality: every factor `a_i u a_i` has letters both larger and smaller
/// than `i` inside `u`. Only consecutive occurrences of a letter need checking,
/// since an inner `a_i` contributes neither.
pub fn is_canonical(w: &Word) -> bool {
    let mut last_seen = [usize::MAX; MAX_RANK + 1];
    for (q, &l) in w.letters.iter().enumerate() {
        let p = last_seen[l as usize];
        if p != usize::MAX && !gap_is_mixed(&w.letters[p + 1..q], l) {
            return false;
        }
        last_seen[l as usize] = q;
    }
    true
}

/// The letter-wise flip `i ↦ n − i + 1`; order is preserved.
pub fn mirror(w: &Word) -> Word {
    let n = w.rank;
    Word {
        rank: n,
        letters: w.letters.iter().map(|&l| n - l + 1).collect(),
    }
}

/// The strictly decreasing word of the members of `set`.
pub fn idempotent_word(set: &LetterSet) -> Word {
    let mut letters: Vec<u8> = set.iter().map(|i| i as u8).collect();
    letters.reverse();
    Word {
        rank: set.rank,
        letters,
    }
}

/// Multiplicity of every letter `1..=rank`, absent letters mapping to zero.
pub fn occurrence_counts(w: &Word) -> BTreeMap<usize, usize> {
    let mut counts: BTreeMap<usize, usize> = (1..=w.rank()).map(|i| (i, 0)).collect();
    for &l in &w.letters {
        *counts.entry(usize::from(l)).or_default() += 1;
    }
    counts
}

/// Upper bound on the occurrences of letter `i` in a canonical word of rank
/// `n`: `2^(i−1)` on the lower half of the alphabet, `2^(n−i)` on the upper.
pub fn occurrence_bound(i: usize, n: usize) -> u64 {
    let low = 1u64 << (i - 1).min(63);
    let high = 1u64 << (n - i).min(63);
    let lower_half = i <= n.div_ceil(2);
    let upper_half = i >= (n + 1).div_ceil(2);
    match (lower_half, upper_half) {
        (true, true) => low.min(high),
        (true, false) => low,
        _ => high,
    }
}
