//! The deletion rewriting relation and canonical forms.
//!
//! A word `w₁ a_i s a_i w₂` rewrites by
//!
//! * a *right deletion* to `w₁ a_i s w₂` when every letter of `s` is below `i`;
//! * a *left deletion* to `w₁ s a_i w₂` when every letter of `s` is above `i`.
//!
//! The relation is terminating (each step drops a letter) and confluent, and
//! its irreducible words are exactly the canonical words. Positions reported in
//! [`Reduction`] are 0-based indices into the source word.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Word, MAX_RANK};

/// Default number of distinct words [`all_normal_forms`] may visit.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionKind {
    RightDeletion,
    LeftDeletion,
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionKind::RightDeletion => "RightDeletion",
            ReductionKind::LeftDeletion => "LeftDeletion",
        })
    }
}

/// One rewriting step: which occurrence of `letter` survives and which goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reduction {
    pub kind: ReductionKind,
    pub letter: u8,
    pub kept_position: usize,
    pub removed_position: usize,
}

impl Reduction {
    /// Applies the deletion to `w`.
    pub fn apply(&self, w: &Word) -> Word {
        let mut letters = w.letters().to_vec();
        letters.remove(self.removed_position);
        Word::from_raw(w.rank_u8(), letters)
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} letter={} keep={} remove={}",
            self.kind, self.letter, self.kept_position, self.removed_position
        )
    }
}

/// Deletions available on the pair of consecutive occurrences at `p < q`.
fn pair_reductions(letters: &[u8], p: usize, q: usize) -> impl Iterator<Item = Reduction> {
    let i = letters[p];
    let gap = &letters[p + 1..q];
    let right = gap.iter().all(|&l| l < i);
    let left = gap.iter().all(|&l| l > i);
    let r = right.then_some(Reduction {
        kind: ReductionKind::RightDeletion,
        letter: i,
        kept_position: p,
        removed_position: q,
    });
    let l = left.then_some(Reduction {
        kind: ReductionKind::LeftDeletion,
        letter: i,
        kept_position: q,
        removed_position: p,
    });
    r.into_iter().chain(l)
}

/// Every reduction applicable to `w`, ordered by the position of the right
/// occurrence and right deletions first. Pairs with another copy of the same
/// letter between them can never reduce, so only consecutive occurrences are
/// considered.
fn reductions(letters: &[u8]) -> Vec<Reduction> {
    let mut out = Vec::new();
    let mut last_seen = [usize::MAX; MAX_RANK + 1];
    for (q, &l) in letters.iter().enumerate() {
        let p = last_seen[l as usize];
        if p != usize::MAX {
            out.extend(pair_reductions(letters, p, q));
        }
        last_seen[l as usize] = q;
    }
    out
}

fn first_reduction(letters: &[u8]) -> Option<Reduction> {
    let mut last_seen = [usize::MAX; MAX_RANK + 1];
    for (q, &l) in letters.iter().enumerate() {
        let p = last_seen[l as usize];
        if p != usize::MAX {
            if let Some(r) = pair_reductions(letters, p, q).next() {
                return Some(r);
            }
        }
        last_seen[l as usize] = q;
    }
    None
}

/// All `(r, w′)` with `w → w′` witnessed by `r`. Empty iff `w` is canonical.
pub fn one_step_reductions(w: &Word) -> Vec<(Reduction, Word)> {
    reductions(w.letters())
        .into_iter()
        .map(|r| {
            let next = r.apply(w);
            (r, next)
        })
        .collect()
}

/// The canonical form `can(w)`: the unique shortest word representing the
/// same element as `w`.
pub fn canonical_form(w: &Word) -> Word {
    let mut letters = w.letters().to_vec();
    canonicalize_in_place(&mut letters);
    Word::from_raw(w.rank_u8(), letters)
}

/// Deterministic normalisation: always apply the first reduction in the
/// order of [`one_step_reductions`].
pub(crate) fn canonicalize_in_place(letters: &mut Vec<u8>) {
    while let Some(r) = first_reduction(letters) {
        letters.remove(r.removed_position);
    }
}

/// Canonical letters of `prefix · suffix`.
pub(crate) fn canonical_concat(prefix: &[u8], suffix: &[u8]) -> Vec<u8> {
    let mut letters = Vec::with_capacity(prefix.len() + suffix.len());
    letters.extend_from_slice(prefix);
    letters.extend_from_slice(suffix);
    canonicalize_in_place(&mut letters);
    letters
}

/// A reduction sequence from `source` down to its canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub source: Word,
    pub steps: Vec<(Reduction, Word)>,
}

impl ReductionTrace {
    pub fn result(&self) -> &Word {
        self.steps.last().map_or(&self.source, |(_, w)| w)
    }
}

/// The chain of steps taken by [`canonical_form`].
pub fn reduction_trace(w: &Word) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut current = w.clone();
    while let Some(r) = first_reduction(current.letters()) {
        current = r.apply(&current);
        steps.push((r, current.clone()));
    }
    ReductionTrace {
        source: w.clone(),
        steps,
    }
}

/// Explores every reduction sequence from `w` and collects the irreducible
/// words reached. Confluence means the result is always a singleton.
pub fn all_normal_forms(w: &Word, node_budget: usize) -> Result<BTreeSet<Word>> {
    if node_budget == 0 {
        return Err(Error::Domain("node budget must be at least 1".into()));
    }
    let mut visited: HashSet<Word> = HashSet::new();
    let mut stack = vec![w.clone()];
    visited.insert(w.clone());
    let mut normal_forms = BTreeSet::new();
    while let Some(current) = stack.pop() {
        let next = one_step_reductions(&current);
        if next.is_empty() {
            normal_forms.insert(current);
            continue;
        }
        for (_, v) in next {
            if visited.insert(v.clone()) {
                if visited.len() > node_budget {
                    return Err(Error::BudgetExhausted {
                        budget: node_budget,
                    });
                }
                stack.push(v);
            }
        }
    }
    Ok(normal_forms)
}
