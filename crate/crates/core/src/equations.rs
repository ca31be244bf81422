//! Equations over the zero element `f`.
//!
//! Brute-force solvers scan an enumerated `K_n`. The solution set `R` of
//! `x · a₁ = f` is also built constructively from the submonoid `⟨a₂, …, a_n⟩`
//! (a shifted copy of `K_{n−1}`), without enumerating `K_n`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{product, Element};
use crate::enumerate::{enumerate_elements, EnumerationResult};
use crate::error::{Error, Result};
use crate::words::{LetterSet, Word};

/// The split `R = {e_{2..n}} ∪ T` of the solutions of `x · a₁ = f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RDecomposition {
    pub special: Element,
    pub t_part: BTreeSet<Element>,
}

/// Solutions `x` of `x · y = f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSolutionSet {
    pub rank: usize,
    pub y: Element,
    pub solutions: BTreeSet<Element>,
    /// Present exactly when `y = a₁`.
    pub decomposition: Option<RDecomposition>,
}

impl ZeroSolutionSet {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }
}

fn check_same_rank(kn: &EnumerationResult, x: &Element) -> Result<()> {
    if kn.rank() != x.rank() {
        return Err(Error::RankMismatch {
            left: kn.rank() as u8,
            right: x.rank() as u8,
        });
    }
    Ok(())
}

fn breach(msg: String) -> Error {
    Error::InvariantBreach(msg)
}

/// `e_{2..n}`.
pub fn special_solution(rank: usize) -> Result<Element> {
    Ok(Element::idempotent(&LetterSet::range(2, rank, rank)?))
}

/// All `x ∈ K_n` with `x · y = f`.
///
/// When `c(y) ⊆ {2..n}` the answer must be `{f}`, and when `1 ∈ c(y)` it must
/// be strictly larger; either failure is reported as an invariant breach.
pub fn solve_right_zero(y: &Element, kn: &EnumerationResult) -> Result<ZeroSolutionSet> {
    check_same_rank(kn, y)?;
    let n = kn.rank();
    let zero = Element::zero(n)?;
    let solutions: BTreeSet<Element> = kn
        .iter()
        .filter(|x| x.multiply(y).map(|p| p == zero).unwrap_or(false))
        .cloned()
        .collect();

    let only_zero = solutions.len() == 1 && solutions.contains(&zero);
    if y.in_submonoid(&LetterSet::range(2, n, n)?) {
        if !only_zero {
            return Err(breach(format!(
                "x·{y} = f has non-zero solutions although c({y}) avoids 1"
            )));
        }
    } else if !solutions.contains(&zero) || only_zero {
        return Err(breach(format!(
            "x·{y} = f should have a non-trivial solution since 1 ∈ c({y})"
        )));
    }

    let decomposition = if *y == Element::generator(1, n)? {
        let special = special_solution(n)?;
        if !solutions.contains(&special) {
            return Err(breach(format!("e_{{2..n}} = {special} does not solve x·a₁ = f")));
        }
        let t_part: BTreeSet<Element> = solutions
            .iter()
            .filter(|x| x.content().contains(1))
            .cloned()
            .collect();
        if t_part.len() + 1 != solutions.len() || t_part.contains(&special) {
            return Err(breach(
                "solutions of x·a₁ = f are not e_{2..n} plus elements containing 1".into(),
            ));
        }
        Some(RDecomposition { special, t_part })
    } else {
        None
    };

    Ok(ZeroSolutionSet {
        rank: n,
        y: y.clone(),
        solutions,
        decomposition,
    })
}

/// All `y ∈ K_n` with `x · y = f`. When `c(x) ⊆ {1..n−1}` the answer must be
/// `{f}`.
pub fn solve_left_zero(x: &Element, kn: &EnumerationResult) -> Result<BTreeSet<Element>> {
    check_same_rank(kn, x)?;
    let n = kn.rank();
    let zero = Element::zero(n)?;
    let solutions: BTreeSet<Element> = kn
        .iter()
        .filter(|y| x.multiply(y).map(|p| p == zero).unwrap_or(false))
        .cloned()
        .collect();
    if x.in_submonoid(&LetterSet::range(1, n - 1, n)?)
        && !(solutions.len() == 1 && solutions.contains(&zero))
    {
        return Err(breach(format!(
            "{x}·y = f has non-zero solutions although c({x}) avoids {n}"
        )));
    }
    Ok(solutions)
}

/// The submonoid `⟨a₂, …, a_n⟩` of `K_n`, built from `K_{n−1}` by shifting
/// every letter up by one.
pub fn upper_submonoid(rank: usize, limit: usize) -> Result<BTreeSet<Element>> {
    if rank == 1 {
        return Ok(BTreeSet::from([Element::identity(1)?]));
    }
    let lower = enumerate_elements(rank - 1, limit)?;
    lower
        .iter()
        .map(|x| Ok(Element::from_word(&x.word().shifted(1, rank)?)))
        .collect()
}

/// `x · a₁ · e_{2..m(x)}` for `x ∈ ⟨a₂, …, a_n⟩`.
pub fn t_element(x: &Element) -> Result<Element> {
    let n = x.rank();
    let tail = Element::idempotent(&LetterSet::range(2, x.m_value(), n)?);
    product(n, [x, &Element::generator(1, n)?, &tail])
}

/// Builds `R` as `{e_{2..n}} ∪ {x a₁ e_{2..m(x)} : x ∈ ⟨a₂, …, a_n⟩}`.
///
/// Only `K_{n−1}` is enumerated. Fails with an invariant breach if two
/// submonoid elements give the same member of `T`.
pub fn construct_r(rank: usize, limit: usize) -> Result<ZeroSolutionSet> {
    let submonoid = upper_submonoid(rank, limit)?;
    let special = special_solution(rank)?;
    let t_part: BTreeSet<Element> = submonoid
        .iter()
        .map(t_element)
        .collect::<Result<_>>()?;
    if t_part.len() != submonoid.len() {
        return Err(breach(format!(
            "|T| = {} but |K_{}| = {}",
            t_part.len(),
            rank - 1,
            submonoid.len()
        )));
    }
    if t_part.contains(&special) {
        return Err(breach("e_{2..n} found inside T".into()));
    }
    let mut solutions = t_part.clone();
    solutions.insert(special.clone());
    Ok(ZeroSolutionSet {
        rank,
        y: Element::generator(1, rank)?,
        solutions,
        decomposition: Some(RDecomposition { special, t_part }),
    })
}

/// Compares the constructive `R` with the brute-force solutions of
/// `x · a₁ = f` element for element.
pub fn cross_check_r(constructed: &ZeroSolutionSet, kn: &EnumerationResult) -> Result<()> {
    let brute = solve_right_zero(&Element::generator(1, kn.rank())?, kn)?;
    if brute.solutions != constructed.solutions || brute.decomposition != constructed.decomposition
    {
        let extra: Vec<String> = constructed
            .solutions
            .symmetric_difference(&brute.solutions)
            .map(|x| x.to_string())
            .collect();
        return Err(breach(format!(
            "constructed R differs from brute force on [{}]",
            extra.join(", ")
        )));
    }
    Ok(())
}

/// `ζ(x) · 1 · ē_{2..m(x)}` for `x` with `c(x) ⊆ {2..n}`, checked to equal
/// the canonical form of the corresponding element of `T`.
pub fn canonical_form_of_t_element(x: &Element) -> Result<Word> {
    let n = x.rank();
    if !x.in_submonoid(&LetterSet::range(2, n, n)?) {
        return Err(Error::Domain(format!(
            "{x} is not in ⟨a₂, …, a_n⟩: its content {} contains 1",
            x.content()
        )));
    }
    let m = x.m_value();
    let tail = Element::idempotent(&LetterSet::range(2, m, n)?);
    let concat = x
        .word()
        .concat(&Word::from_indices([1u8], n)?)?
        .concat(tail.word())?;
    let computed = t_element(x)?;
    if computed.word() != &concat {
        return Err(breach(format!(
            "ζ({x}·a₁·e_{{2..{m}}}) = {} but the concatenation is {}",
            computed.word(),
            concat
        )));
    }
    Ok(concat)
}

/// Multiplication inside `R` by its case table, checked against the generic
/// product.
pub fn r_multiply(x: &Element, y: &Element, r: &ZeroSolutionSet) -> Result<Element> {
    let Some(dec) = &r.decomposition else {
        return Err(Error::Domain(
            "r_multiply needs the solution set of x·a₁ = f".into(),
        ));
    };
    for z in [x, y] {
        if !r.solutions.contains(z) {
            return Err(Error::Domain(format!("{z} is not in R")));
        }
    }
    let by_table = if dec.t_part.contains(y) {
        Element::zero(r.rank)?
    } else if dec.t_part.contains(x) {
        x.clone()
    } else {
        dec.special.clone()
    };
    let generic = x.multiply(y)?;
    if generic != by_table {
        return Err(breach(format!(
            "R case table gives {x}·{y} = {by_table}, multiplication gives {generic}"
        )));
    }
    Ok(by_table)
}

/// Whether `π` maps `t_part` injectively onto `submonoid`.
pub fn pi_is_bijection(t_part: &BTreeSet<Element>, submonoid: &BTreeSet<Element>) -> Result<bool> {
    let images: BTreeSet<Element> = t_part.iter().map(Element::pi).collect::<Result<_>>()?;
    Ok(images.len() == t_part.len() && &images == submonoid)
}

/// Which statement a counterexample contradicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CancellationClause {
    /// `xy = f`, `c(y) ⊆ {2..n}` ⇒ `x = f`.
    RightContent,
    /// `xy = f`, `c(x) ⊆ {1..n−1}` ⇒ `y = f`.
    LeftContent,
    /// `x a_k = f` (k ≥ 2) or `a_l x = f` (l ≤ n−1) ⇒ `x = f`.
    Generator,
    /// `xyz = f`, `c(x) ⊆ {1..n−1}`, `c(z) ⊆ {2..n}` ⇒ `y = f`.
    ThreeFactor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: CancellationClause,
    pub factors: Vec<Element>,
}

/// Result of the exhaustive zero-cancellation scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationReport {
    pub rank: usize,
    pub checked_pairs: usize,
    pub checked_triples: usize,
    pub triples_exhaustive: bool,
    pub violations: Vec<Violation>,
}

impl CancellationReport {
    pub fn verified(&self) -> bool {
        self.violations.is_empty()
    }
}

fn pair_violations(
    x: &Element,
    y: &Element,
    zero: &Element,
    no_one: &LetterSet,
    no_top: &LetterSet,
) -> Vec<Violation> {
    let mut found = Vec::new();
    if x.multiply(y).expect("same rank") != *zero {
        return found;
    }
    if y.in_submonoid(no_one) && x != zero {
        found.push(Violation {
            clause: CancellationClause::RightContent,
            factors: vec![x.clone(), y.clone()],
        });
    }
    if x.in_submonoid(no_top) && y != zero {
        found.push(Violation {
            clause: CancellationClause::LeftContent,
            factors: vec![x.clone(), y.clone()],
        });
    }
    found
}

/// Scans every pair of `K_n` for both cancellation clauses, every generator
/// product for the corollary, and triples for the three-factor form. Triples
/// are exhaustive when there are at most `triple_budget` of them and sampled
/// (`triple_budget` draws, seeded) otherwise.
pub fn verify_zero_cancellation(
    kn: &EnumerationResult,
    triple_budget: usize,
    seed: u64,
) -> Result<CancellationReport> {
    cancellation_scan(kn, None, triple_budget, seed)
}

/// As [`verify_zero_cancellation`] but with `pair_samples` random pairs in
/// place of the exhaustive pair scan.
pub fn verify_zero_cancellation_sampled(
    kn: &EnumerationResult,
    pair_samples: usize,
    triple_budget: usize,
    seed: u64,
) -> Result<CancellationReport> {
    cancellation_scan(kn, Some(pair_samples), triple_budget, seed)
}

fn cancellation_scan(
    kn: &EnumerationResult,
    pair_samples: Option<usize>,
    triple_budget: usize,
    seed: u64,
) -> Result<CancellationReport> {
    let n = kn.rank();
    let zero = Element::zero(n)?;
    let no_one = LetterSet::range(2, n, n)?;
    let no_top = LetterSet::range(1, n - 1, n)?;
    let elements: Vec<&Element> = kn.iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (mut violations, checked_pairs): (Vec<Violation>, usize) = match pair_samples {
        None => {
            let v = elements
                .par_iter()
                .flat_map_iter(|&x| {
                    let (zero, no_one, no_top) = (&zero, &no_one, &no_top);
                    elements
                        .iter()
                        .flat_map(move |&y| pair_violations(x, y, zero, no_one, no_top))
                })
                .collect();
            (v, elements.len() * elements.len())
        }
        Some(k) => {
            let pairs: Vec<(&Element, &Element)> = (0..k)
                .map(|_| {
                    (
                        *elements.choose(&mut rng).expect("non-empty"),
                        *elements.choose(&mut rng).expect("non-empty"),
                    )
                })
                .collect();
            let v = pairs
                .par_iter()
                .flat_map_iter(|&(x, y)| pair_violations(x, y, &zero, &no_one, &no_top))
                .collect();
            (v, k)
        }
    };

    for x in kn.iter().filter(|x| **x != zero) {
        for k in 1..=n {
            let a = Element::generator(k, n)?;
            if k >= 2 && x.multiply(&a)? == zero {
                violations.push(Violation {
                    clause: CancellationClause::Generator,
                    factors: vec![x.clone(), a.clone()],
                });
            }
            if k < n && a.multiply(x)? == zero {
                violations.push(Violation {
                    clause: CancellationClause::Generator,
                    factors: vec![a, x.clone()],
                });
            }
        }
    }

    let lefts: Vec<&Element> = elements.iter().copied().filter(|x| x.in_submonoid(&no_top)).collect();
    let rights: Vec<&Element> = elements.iter().copied().filter(|z| z.in_submonoid(&no_one)).collect();
    let total = lefts.len().saturating_mul(elements.len()).saturating_mul(rights.len());
    let triples_exhaustive = total <= triple_budget;
    let triples: Vec<(&Element, &Element, &Element)> = if triples_exhaustive {
        let (elements, rights) = (&elements, &rights);
        lefts
            .iter()
            .flat_map(|&x| {
                elements
                    .iter()
                    .flat_map(move |&y| rights.iter().map(move |&z| (x, y, z)))
            })
            .collect()
    } else {
        (0..triple_budget)
            .map(|_| {
                (
                    *lefts.choose(&mut rng).expect("e avoids n"),
                    *elements.choose(&mut rng).expect("non-empty"),
                    *rights.choose(&mut rng).expect("e avoids 1"),
                )
            })
            .collect()
    };
    let checked_triples = triples.len();
    violations.extend(triples.into_par_iter().filter_map(|(x, y, z)| {
        let xyz = product(n, [x, y, z]).expect("same rank");
        (xyz == zero && *y != zero).then(|| Violation {
            clause: CancellationClause::ThreeFactor,
            factors: vec![x.clone(), y.clone(), z.clone()],
        })
    }).collect::<Vec<_>>());

    Ok(CancellationReport {
        rank: n,
        checked_pairs,
        checked_triples,
        triples_exhaustive,
        violations,
    })
}

/// Whether `x · a_k = f` for some `k ∈ {2..n}`; this holds exactly for `x = f`.
pub fn characterize_zero(x: &Element) -> Result<bool> {
    let n = x.rank();
    if n < 2 {
        return Err(Error::Domain(
            "zero characterisation needs rank ≥ 2: no generator a_k with k ≥ 2".into(),
        ));
    }
    let zero = Element::zero(n)?;
    for k in 2..=n {
        if x.multiply(&Element::generator(k, n)?)? == zero {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_ELEMENT_LIMIT as LIMIT;
    use crate::words::is_canonical;

    fn el(text: &str, n: usize) -> Element {
        Element::parse(text, n).unwrap()
    }

    fn kn(n: usize) -> EnumerationResult {
        enumerate_elements(n, LIMIT).unwrap()
    }

    fn set(words: &[&str], n: usize) -> BTreeSet<Element> {
        words.iter().map(|w| el(w, n)).collect()
    }

    #[test]
    fn right_zero_examples() {
        let k2 = kn(2);
        let r = solve_right_zero(&el("2", 2), &k2).unwrap();
        assert_eq!(r.solutions, set(&["2 1"], 2));
        assert!(r.decomposition.is_none());

        let r = solve_right_zero(&el("1", 2), &k2).unwrap();
        assert_eq!(r.solutions, set(&["2", "1 2", "2 1"], 2));
        assert_eq!(r.count(), 3);
        let dec = r.decomposition.unwrap();
        assert_eq!(dec.special, el("2", 2));
        assert_eq!(dec.t_part, set(&["1 2", "2 1"], 2));

        for n in 1..=3 {
            let k = kn(n);
            let r = solve_right_zero(&Element::zero(n).unwrap(), &k).unwrap();
            assert_eq!(&r.solutions, k.elements());
        }
        assert!(solve_right_zero(&el("1", 3), &k2).is_err());
    }

    #[test]
    fn left_zero_examples() {
        for n in 2..=3 {
            let k = kn(n);
            let a1 = Element::generator(1, n).unwrap();
            assert_eq!(
                solve_left_zero(&a1, &k).unwrap(),
                BTreeSet::from([Element::zero(n).unwrap()])
            );
            let f = Element::zero(n).unwrap();
            assert_eq!(&solve_left_zero(&f, &k).unwrap(), k.elements());
        }
        let k2 = kn(2);
        let left = solve_left_zero(&el("2", 2), &k2).unwrap();
        let right = solve_right_zero(&el("1", 2), &k2).unwrap();
        let tau: BTreeSet<Element> = right.solutions.iter().map(Element::antiautomorphism).collect();
        assert_eq!(left, tau);
        assert_eq!(left.len(), 3);
    }

    #[test]
    fn construct_r_examples() {
        let r2 = construct_r(2, LIMIT).unwrap();
        let dec = r2.decomposition.as_ref().unwrap();
        assert_eq!(dec.special, el("2", 2));
        assert_eq!(dec.t_part, set(&["1 2", "2 1"], 2));

        let r3 = construct_r(3, LIMIT).unwrap();
        assert_eq!(r3.count(), 6);

        for n in 1..=4 {
            let r = construct_r(n, LIMIT).unwrap();
            let dec = r.decomposition.as_ref().unwrap();
            assert!(dec.t_part.contains(&Element::zero(n).unwrap()));
            cross_check_r(&r, &kn(n)).unwrap();
        }
        // rank 1: R = {e, a₁}
        let r1 = construct_r(1, LIMIT).unwrap();
        assert_eq!(r1.solutions, set(&["", "1"], 1));
    }

    #[test]
    fn t_canonical_forms() {
        let n = 3;
        let e2n = special_solution(n).unwrap();
        assert_eq!(canonical_form_of_t_element(&e2n).unwrap().to_string(), "3 2 1");
        assert_eq!(
            canonical_form_of_t_element(&Element::identity(2).unwrap())
                .unwrap()
                .to_string(),
            "1 2"
        );
        for n in 1..=4 {
            for x in upper_submonoid(n, LIMIT).unwrap() {
                let w = canonical_form_of_t_element(&x).unwrap();
                assert!(is_canonical(&w));
            }
        }
        let err = canonical_form_of_t_element(&el("1", 3)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn r_multiplication_rule() {
        for n in 1..=4 {
            let r = construct_r(n, LIMIT).unwrap();
            let dec = r.decomposition.clone().unwrap();
            let s = &dec.special;
            assert_eq!(r_multiply(s, s, &r).unwrap(), *s);
            for x in &dec.t_part {
                assert_eq!(r_multiply(x, s, &r).unwrap(), *x);
            }
            for x in &r.solutions {
                for y in &dec.t_part {
                    assert!(r_multiply(x, y, &r).unwrap().is_zero());
                }
            }
        }
        let r = construct_r(3, LIMIT).unwrap();
        let err = r_multiply(&el("3", 3), &el("2", 3), &r).unwrap_err();
        assert!(err.to_string().contains("not in R"));
    }

    #[test]
    fn pi_on_t() {
        for n in 1..=4 {
            let r = construct_r(n, LIMIT).unwrap();
            let sub = upper_submonoid(n, LIMIT).unwrap();
            assert!(pi_is_bijection(&r.decomposition.unwrap().t_part, &sub).unwrap());
        }
    }

    #[test]
    fn zero_cancellation_small() {
        let rep = verify_zero_cancellation(&kn(2), 100_000, 0).unwrap();
        assert_eq!(rep.checked_pairs, 25);
        assert!(rep.verified() && rep.triples_exhaustive);
        let rep = verify_zero_cancellation(&kn(3), 100_000, 0).unwrap();
        assert!(rep.verified());
        let rep = verify_zero_cancellation(&kn(3), 10, 7).unwrap();
        assert!(!rep.triples_exhaustive && rep.checked_triples == 10);
    }

    #[test]
    fn zero_characterisation() {
        for n in 2..=4 {
            let k = kn(n);
            assert!(characterize_zero(&Element::zero(n).unwrap()).unwrap());
            assert!(!characterize_zero(&special_solution(n).unwrap()).unwrap());
            for x in k.iter() {
                assert_eq!(characterize_zero(x).unwrap(), x.is_zero());
            }
        }
        assert!(matches!(
            characterize_zero(&Element::zero(1).unwrap()),
            Err(Error::Domain(_))
        ));
    }
}
