//! Exhaustive construction of `K_n` and the parity decomposition.
//!
//! Two independent routes produce the element set:
//!
//! * [`enumerate_elements`] closes `{e}` under right multiplication by the
//!   generators, canonicalising every product;
//! * [`enumerate_canonical_words`] lists canonical words directly by
//!   backtracking, pruned by the per-letter occurrence bounds.
//!
//! They share only the canonicality predicate and the rewriting engine is not
//! used by the second, so agreement between them is meaningful.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::words::{check_rank, last_letter_violates, mirror, occurrence_bound, LetterSet, Word};

/// Default safety cap on the number of elements an enumeration may produce.
pub const DEFAULT_ELEMENT_LIMIT: usize = 10_000_000;

/// Ranks above this are refused unless explicitly allowed.
pub const DEFAULT_MAX_RANK: usize = 6;

/// Refuses ranks above [`DEFAULT_MAX_RANK`] unless `allow_large` is set.
pub fn check_rank_policy(rank: usize, allow_large: bool) -> Result<()> {
    check_rank(rank)?;
    if rank > DEFAULT_MAX_RANK && !allow_large {
        return Err(Error::RankRefused {
            rank,
            max: DEFAULT_MAX_RANK,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GenerationStats {
    pub frontier_rounds: usize,
    pub multiplications: usize,
}

/// The elements of `K_n` in length-lexicographic order.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    rank: usize,
    elements: BTreeSet<Element>,
    pub stats: GenerationStats,
}

impl EnumerationResult {
    /// Wraps an externally obtained element set (e.g. a cache file). The set
    /// is checked to contain `e`, every generator and `f`, and to be closed
    /// under right multiplication by generators.
    pub fn from_elements(rank: usize, elements: BTreeSet<Element>) -> Result<Self> {
        check_rank(rank)?;
        if let Some(bad) = elements.iter().find(|x| x.rank() != rank) {
            return Err(Error::RankMismatch {
                left: rank as u8,
                right: bad.rank() as u8,
            });
        }
        let mut required = vec![Element::identity(rank)?, Element::zero(rank)?];
        for i in 1..=rank {
            required.push(Element::generator(i, rank)?);
        }
        if let Some(missing) = required.iter().find(|x| !elements.contains(*x)) {
            return Err(Error::Domain(format!(
                "element set for K_{rank} is missing {missing}"
            )));
        }
        for x in &elements {
            for i in 1..=rank as u8 {
                let y = x.times_generator(i);
                if !elements.contains(&y) {
                    return Err(Error::Domain(format!(
                        "element set for K_{rank} is not closed: {x} · a_{i} = {y} is missing"
                    )));
                }
            }
        }
        Ok(EnumerationResult {
            rank,
            elements,
            stats: GenerationStats::default(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cardinality(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &BTreeSet<Element> {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.elements.iter()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.elements.contains(x)
    }

    /// Elements with `required ⊆ c(x) ⊆ allowed`.
    pub fn filter_by_content(
        &self,
        required: &LetterSet,
        allowed: &LetterSet,
    ) -> Result<BTreeSet<Element>> {
        if required.rank() != self.rank || allowed.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank as u8,
                right: if required.rank() != self.rank {
                    required.rank() as u8
                } else {
                    allowed.rank() as u8
                },
            });
        }
        if !required.is_subset(allowed) {
            return Err(Error::Domain(format!(
                "required letters {required} are not a subset of allowed letters {allowed}"
            )));
        }
        Ok(self
            .elements
            .iter()
            .filter(|x| {
                let c = x.content();
                required.is_subset(&c) && c.is_subset(allowed)
            })
            .cloned()
            .collect())
    }
}

/// Free-function form of [`EnumerationResult::filter_by_content`].
pub fn filter_by_content(
    res: &EnumerationResult,
    required: &LetterSet,
    allowed: &LetterSet,
) -> Result<BTreeSet<Element>> {
    res.filter_by_content(required, allowed)
}

/// Breadth-first closure of `{e}` under right multiplication by generators.
pub fn enumerate_elements(rank: usize, limit: usize) -> Result<EnumerationResult> {
    closure(rank, limit, false)
}

/// As [`enumerate_elements`], expanding each frontier in parallel.
pub fn enumerate_elements_parallel(rank: usize, limit: usize) -> Result<EnumerationResult> {
    closure(rank, limit, true)
}

fn closure(rank: usize, limit: usize, parallel: bool) -> Result<EnumerationResult> {
    let n = check_rank(rank)?;
    if limit == 0 {
        return Err(Error::Domain("element limit must be at least 1".into()));
    }
    let mut seen: HashSet<Element> = HashSet::new();
    let identity = Element::identity(rank)?;
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    let mut stats = GenerationStats::default();
    while !frontier.is_empty() {
        stats.frontier_rounds += 1;
        stats.multiplications += frontier.len() * rank;
        let products: Vec<Element> = if parallel {
            frontier
                .par_iter()
                .flat_map_iter(|x| (1..=n).map(move |i| x.times_generator(i)))
                .collect()
        } else {
            frontier
                .iter()
                .flat_map(|x| (1..=n).map(move |i| x.times_generator(i)))
                .collect()
        };
        let mut next = Vec::new();
        for y in products {
            if !seen.contains(&y) {
                if seen.len() >= limit {
                    return Err(Error::LimitExceeded { rank: n, limit });
                }
                seen.insert(y.clone());
                next.push(y);
            }
        }
        frontier = next;
    }
    Ok(EnumerationResult {
        rank,
        elements: seen.into_iter().collect(),
        stats,
    })
}

/// All canonical words over `{1, …, rank}`, by backtracking.
///
/// Each appended letter is checked only against its previous occurrence, and
/// letter counts are capped by [`occurrence_bound`].
pub fn enumerate_canonical_words(rank: usize, limit: usize) -> Result<BTreeSet<Word>> {
    let n = check_rank(rank)?;
    let bounds: Vec<u64> = std::iter::once(0)
        .chain((1..=rank).map(|i| occurrence_bound(i, rank)))
        .collect();
    let mut out = BTreeSet::new();
    let mut current: Vec<u8> = Vec::new();
    let mut counts = vec![0u64; rank + 1];
    extend(n, &bounds, &mut current, &mut counts, &mut out, limit)?;
    Ok(out)
}

fn extend(
    n: u8,
    bounds: &[u64],
    current: &mut Vec<u8>,
    counts: &mut [u64],
    out: &mut BTreeSet<Word>,
    limit: usize,
) -> Result<()> {
    if out.len() >= limit {
        return Err(Error::LimitExceeded { rank: n, limit });
    }
    out.insert(Word::from_raw(n, current.clone()));
    for l in 1..=n {
        if counts[l as usize] >= bounds[l as usize] {
            continue;
        }
        current.push(l);
        if !last_letter_violates(current) {
            counts[l as usize] += 1;
            extend(n, bounds, current, counts, out, limit)?;
            counts[l as usize] -= 1;
        }
        current.pop();
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: usize) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Counting data behind `|K_n| ≡ |K_{n−2}| (mod 2)`.
///
/// `V` is the set of canonical words containing both `1` and `n`; `V₁` holds
/// those where `1` precedes `n`, `V₂` the rest. For ranks 1 and 2 the same
/// identity is evaluated with `|K_0| = 1` and `|K_{−1}| = 0`; at rank 1 the
/// letters `1` and `n` coincide and `V` is taken to be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub rank: usize,
    pub card_n: usize,
    pub card_n1: usize,
    pub card_n2: usize,
    pub v1_count: usize,
    pub v2_count: usize,
    /// Every word of `V` has exactly one `1` and one `n`.
    pub v_letters_once: bool,
    /// The mirror map sends `V₁` bijectively onto `V₂`.
    pub mirror_bijective: bool,
    /// The four content classes partition `K_n` with the expected sizes.
    pub partition_holds: bool,
    pub identity_holds: bool,
    pub parity: Parity,
    /// Parity predicted from the rank: odd ranks even, even ranks odd.
    pub expected_parity: Parity,
    pub base_case: bool,
}

impl ParityReport {
    pub fn passed(&self) -> bool {
        self.identity_holds
            && self.v1_count == self.v2_count
            && self.v_letters_once
            && self.mirror_bijective
            && self.partition_holds
            && self.parity == self.expected_parity
    }
}

fn card(rank: usize, limit: usize) -> Result<usize> {
    match rank {
        0 => Ok(1),
        _ => Ok(enumerate_elements(rank, limit)?.cardinality()),
    }
}

/// Builds the parity decomposition of `K_n` and checks each of its claims.
pub fn parity_report(rank: usize, limit: usize) -> Result<ParityReport> {
    let kn = enumerate_elements(rank, limit)?;
    parity_report_for(&kn, limit)
}

/// As [`parity_report`], reusing an existing enumeration of `K_n`.
pub fn parity_report_for(kn: &EnumerationResult, limit: usize) -> Result<ParityReport> {
    let rank = kn.rank();
    let card_n = kn.cardinality();
    let card_n1 = card(rank - 1, limit)?;
    let card_n2 = if rank >= 2 { card(rank - 2, limit)? } else { 0 };
    let expected_parity = if rank % 2 == 1 {
        Parity::Even
    } else {
        Parity::Odd
    };

    let n = rank as u8;
    let mut v1: BTreeSet<Word> = BTreeSet::new();
    let mut v2: BTreeSet<Word> = BTreeSet::new();
    let mut v_letters_once = true;
    if rank >= 2 {
        for x in kn.iter() {
            let w = x.word();
            let ls = w.letters();
            let ones = ls.iter().filter(|&&l| l == 1).count();
            let tops = ls.iter().filter(|&&l| l == n).count();
            if ones == 0 || tops == 0 {
                continue;
            }
            if ones != 1 || tops != 1 {
                v_letters_once = false;
                continue;
            }
            let p1 = ls.iter().position(|&l| l == 1);
            let pn = ls.iter().position(|&l| l == n);
            if p1 < pn {
                v1.insert(w.clone());
            } else {
                v2.insert(w.clone());
            }
        }
    }
    let mirrored: BTreeSet<Word> = v1.iter().map(mirror).collect();
    let mirror_bijective = mirrored == v2;

    let partition_holds = if rank >= 2 {
        let full = LetterSet::full(rank)?;
        let inner = LetterSet::range(2, rank - 1, rank)?;
        let no_top = LetterSet::range(1, rank - 1, rank)?;
        let no_bottom = LetterSet::range(2, rank, rank)?;
        let bottom = LetterSet::from_indices([1], rank)?;
        let top = LetterSet::from_indices([rank], rank)?;
        let both = bottom.union(&top)?;
        let none = LetterSet::empty(rank)?;
        let parts = [
            kn.filter_by_content(&none, &inner)?,
            kn.filter_by_content(&bottom, &no_top)?,
            kn.filter_by_content(&top, &no_bottom)?,
            kn.filter_by_content(&both, &full)?,
        ];
        let total: usize = parts.iter().map(BTreeSet::len).sum();
        let union: BTreeSet<&Element> = parts.iter().flatten().collect();
        let side = card_n1.checked_sub(card_n2);
        total == card_n
            && union.len() == card_n
            && parts[0].len() == card_n2
            && Some(parts[1].len()) == side
            && Some(parts[2].len()) == side
            && parts[3].len() == v1.len() + v2.len()
    } else {
        true
    };

    let identity_holds = match card_n1.checked_sub(card_n2) {
        Some(d) => card_n == card_n2 + 2 * d + 2 * v1.len(),
        None => false,
    };
    Ok(ParityReport {
        rank,
        card_n,
        card_n1,
        card_n2,
        v1_count: v1.len(),
        v2_count: v2.len(),
        v_letters_once,
        mirror_bijective,
        partition_holds,
        identity_holds,
        parity: Parity::of(card_n),
        expected_parity,
        base_case: rank < 3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::is_canonical;

    const LIMIT: usize = DEFAULT_ELEMENT_LIMIT;

    fn words(res: &EnumerationResult) -> Vec<String> {
        res.iter().map(|x| x.word().to_string()).collect()
    }

    #[test]
    fn small_ranks() {
        let k1 = enumerate_elements(1, LIMIT).unwrap();
        assert_eq!(k1.cardinality(), 2);
        assert_eq!(words(&k1), vec!["", "1"]);
        let k2 = enumerate_elements(2, LIMIT).unwrap();
        assert_eq!(k2.cardinality(), 5);
        assert_eq!(words(&k2), vec!["", "1", "2", "1 2", "2 1"]);
    }

    #[test]
    fn canonical_word_search_small() {
        let c1: Vec<String> = enumerate_canonical_words(1, LIMIT)
            .unwrap()
            .iter()
            .map(Word::to_string)
            .collect();
        assert_eq!(c1, vec!["", "1"]);
        let c2: Vec<String> = enumerate_canonical_words(2, LIMIT)
            .unwrap()
            .iter()
            .map(Word::to_string)
            .collect();
        assert_eq!(c2, vec!["", "1", "2", "1 2", "2 1"]);
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(
            enumerate_elements(3, 5),
            Err(Error::LimitExceeded { rank: 3, limit: 5 })
        ));
        assert!(matches!(
            enumerate_canonical_words(3, 5),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(enumerate_elements(3, 0).is_err());
        assert!(matches!(
            enumerate_elements(0, LIMIT),
            Err(Error::InvalidRank { .. })
        ));
    }

    #[test]
    fn exact_limit_is_allowed() {
        assert_eq!(enumerate_elements(2, 5).unwrap().cardinality(), 5);
    }

    #[test]
    fn rank_policy() {
        assert!(check_rank_policy(6, false).is_ok());
        assert!(matches!(
            check_rank_policy(9, false),
            Err(Error::RankRefused { rank: 9, .. })
        ));
        assert!(check_rank_policy(9, true).is_ok());
        assert!(check_rank_policy(0, true).is_err());
    }

    #[test]
    fn routes_agree_and_parallel_matches() {
        for n in 1..=4 {
            let closure = enumerate_elements(n, LIMIT).unwrap();
            let par = enumerate_elements_parallel(n, LIMIT).unwrap();
            assert_eq!(closure.elements(), par.elements());
            let words = enumerate_canonical_words(n, LIMIT).unwrap();
            let from_words: BTreeSet<Element> = words.iter().map(Element::from_word).collect();
            assert_eq!(&from_words, closure.elements(), "n = {n}");
            assert!(words.iter().all(is_canonical));
            assert_eq!(words.len(), closure.cardinality());
        }
    }

    #[test]
    fn content_filters() {
        for n in 2..=4 {
            let kn = enumerate_elements(n, LIMIT).unwrap();
            let kn1 = enumerate_elements(n - 1, LIMIT).unwrap();
            let full = LetterSet::full(n).unwrap();
            let one = LetterSet::from_indices([1], n).unwrap();
            let upper = LetterSet::range(2, n, n).unwrap();
            let none = LetterSet::empty(n).unwrap();
            let with_one = kn.filter_by_content(&one, &full).unwrap();
            assert_eq!(with_one.len(), kn.cardinality() - kn1.cardinality());
            let sub = kn.filter_by_content(&none, &upper).unwrap();
            assert_eq!(sub.len(), kn1.cardinality());
            let dense = kn.filter_by_content(&full, &full).unwrap();
            assert!(dense.contains(&Element::zero(n).unwrap()));
        }
        let k2 = enumerate_elements(2, LIMIT).unwrap();
        let one = LetterSet::from_indices([1], 2).unwrap();
        let none = LetterSet::empty(2).unwrap();
        assert!(filter_by_content(&k2, &one, &none).is_err());
    }

    #[test]
    fn from_elements_validates() {
        let k2 = enumerate_elements(2, LIMIT).unwrap();
        assert!(EnumerationResult::from_elements(2, k2.elements().clone()).is_ok());
        let mut partial = k2.elements().clone();
        partial.remove(&Element::parse("1 2", 2).unwrap());
        assert!(EnumerationResult::from_elements(2, partial).is_err());
    }

    #[test]
    fn parity_small_ranks() {
        for n in 1..=4 {
            let r = parity_report(n, LIMIT).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.v1_count, r.v2_count);
        }
        let r3 = parity_report(3, LIMIT).unwrap();
        assert_eq!(r3.parity, Parity::Even);
        assert!(!r3.base_case);
        let r4 = parity_report(4, LIMIT).unwrap();
        assert_eq!(r4.parity, Parity::Odd);
        let r1 = parity_report(1, LIMIT).unwrap();
        assert!(r1.base_case && r1.card_n == 2 && r1.v1_count == 0);
    }
}
