//! Cross-module properties exercised through the public API only.

use kiselman::algebra::Element;
use kiselman::enumerate::{enumerate_elements, DEFAULT_ELEMENT_LIMIT};
use kiselman::rewrite::canonical_form;
use kiselman::words::{is_quasi_subword, is_subword, occurrence_counts};
use kiselman::{LetterSet, Word};
use proptest::prelude::*;

fn word(max_rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    (1..=max_rank).prop_flat_map(move |n| {
        prop::collection::vec(1..=n as u8, 0..=max_len)
            .prop_map(move |ls| Word::from_indices(ls, n).unwrap())
    })
}

/// Canonical word of rank `n` (avoiding 1 when `upper_only`) together with a
/// word over `{2..n}`.
fn canonical_and_tail(n: usize, upper_only: bool) -> impl Strategy<Value = (Word, Word)> {
    let kn: Vec<Word> = enumerate_elements(n, DEFAULT_ELEMENT_LIMIT)
        .unwrap()
        .iter()
        .map(|x| x.word().clone())
        .filter(|w| !upper_only || !w.contains_letter(1))
        .collect();
    (
        prop::sample::select(kn),
        prop::collection::vec(2..=n as u8, 0..=10),
    )
        .prop_map(move |(w, u)| (w, Word::from_indices(u, n).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn canonical_form_is_a_quasi_subword(w in word(5, 14)) {
        let c = canonical_form(&w);
        prop_assert!(is_quasi_subword(&c, &w).unwrap());
        let (cw, cc) = (occurrence_counts(&w), occurrence_counts(&c));
        for (i, k) in cc {
            prop_assert!(k <= cw[&i]);
        }
    }

    #[test]
    fn factors_and_subsequences(w in word(4, 10), mask in any::<u16>(), a in 0..=10usize, b in 0..=10usize) {
        let (a, b) = (a.min(w.len()), b.min(w.len()));
        let f = w.factor(a.min(b), a.max(b));
        prop_assert!(is_subword(&f, &w).unwrap());
        prop_assert!(is_quasi_subword(&f, &w).unwrap());
        let kept: Vec<u8> = w
            .letters()
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &l)| l)
            .collect();
        let u = Word::from_indices(kept, w.rank()).unwrap();
        prop_assert!(is_quasi_subword(&u, &w).unwrap());
    }

    #[test]
    fn prefix_up_to_first_letter_is_stable(
        (w, u) in (2..=4usize).prop_flat_map(|n| canonical_and_tail(n, true))
    ) {
        let n = w.rank();
        let one = Word::from_indices([1u8], n).unwrap();
        let wa = w.concat(&one).unwrap();
        let whole = canonical_form(&wa.concat(&u).unwrap());
        prop_assert_eq!(whole.factor(0, wa.len()), wa.clone());
        let rest = whole.factor(wa.len(), whole.len());
        prop_assert!(is_quasi_subword(&rest, &u).unwrap());
    }

    #[test]
    fn prefix_through_first_letter_is_recovered(
        (w, u) in (2..=4usize).prop_flat_map(|n| canonical_and_tail(n, false))
    ) {
        let c = canonical_form(&w.concat(&u).unwrap());
        if let Some(p) = c.letters().iter().position(|&l| l == 1) {
            prop_assert_eq!(&w.letters()[..=p], &c.letters()[..=p]);
        }
    }
}

#[test]
fn m_value_marks_the_start_of_absorption() {
    for n in 1..=4 {
        let kn = enumerate_elements(n, DEFAULT_ELEMENT_LIMIT).unwrap();
        for x in kn.iter() {
            let m = x.m_value();
            for i in 0..=n {
                let e = Element::idempotent(&LetterSet::range(1, i, n).unwrap());
                assert_eq!(x.multiply(&e).unwrap().is_zero(), i >= m, "x = {x}, i = {i}");
            }
        }
    }
}

#[test]
fn content_filters_count_as_expected() {
    let mut previous = 1;
    for n in 1..=4 {
        let kn = enumerate_elements(n, DEFAULT_ELEMENT_LIMIT).unwrap();
        let full = LetterSet::full(n).unwrap();
        let with_one = kn
            .filter_by_content(&LetterSet::from_indices([1], n).unwrap(), &full)
            .unwrap();
        assert_eq!(with_one.len(), kn.cardinality() - previous);
        let upper = kn
            .filter_by_content(&LetterSet::empty(n).unwrap(), &LetterSet::range(2, n, n).unwrap())
            .unwrap();
        assert_eq!(upper.len(), previous);
        let full_content = kn.filter_by_content(&full, &full).unwrap();
        assert!(full_content.contains(&Element::zero(n).unwrap()));
        previous = kn.cardinality();
    }
}
