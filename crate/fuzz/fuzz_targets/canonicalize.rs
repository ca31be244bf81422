#![no_main]

use kiselman::algebra::Element;
use kiselman::rewrite::{all_normal_forms, canonical_form, reduction_trace};
use kiselman::words::{is_canonical, is_quasi_subword};
use kiselman::Word;
use libfuzzer_sys::fuzz_target;

// First byte picks a rank in 1..=8, each further byte one letter.
fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else {
        return;
    };
    let rank = usize::from(r % 8) + 1;
    let letters = rest.iter().take(64).map(|&b| b % rank as u8 + 1);
    let w = Word::from_indices(letters, rank).expect("letters in range");

    let c = canonical_form(&w);
    assert!(is_canonical(&c));
    assert_eq!(canonical_form(&c), c);
    assert!(is_quasi_subword(&c, &w).unwrap());
    assert_eq!(reduction_trace(&w).result(), &c);
    assert_eq!(Element::from_word(&w).word(), &c);

    if w.len() <= 12 {
        let forms = all_normal_forms(&w, 1_000_000).expect("short words fit the budget");
        assert_eq!(forms.len(), 1);
        assert!(forms.contains(&c));
    }
});
