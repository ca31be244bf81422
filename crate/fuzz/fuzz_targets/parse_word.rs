#![no_main]

use kiselman::Word;
use libfuzzer_sys::fuzz_target;

// First byte picks the rank, the rest is word text.
fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let rank = usize::from(r % 66);
    if let Ok(w) = Word::parse(text, rank) {
        let again = Word::parse(&w.to_string(), rank).expect("printed words parse");
        assert_eq!(again, w);
        assert!(w.letters().iter().all(|&l| (1..=rank).contains(&usize::from(l))));
    }
});
