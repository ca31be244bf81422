//! Replays the checked-in fuzz seeds so they stay meaningful without a
//! fuzzing toolchain.

use std::fs;
use std::path::PathBuf;

use kiselman::cache::decode_cache;
use kiselman::rewrite::{all_normal_forms, canonical_form};
use kiselman::words::is_canonical;
use kiselman::Word;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_word_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("parse_word") {
        let (&r, rest) = data.split_first().expect("seed has a rank byte");
        let rank = usize::from(r % 66);
        if let Ok(w) = Word::parse(std::str::from_utf8(rest).unwrap(), rank) {
            assert_eq!(Word::parse(&w.to_string(), rank).unwrap(), w, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}

#[test]
fn decode_cache_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("decode_cache") {
        let text = std::str::from_utf8(&data).unwrap();
        if let Ok(elements) = decode_cache(text, None) {
            let body: String = elements.iter().map(|x| format!("{}\n", x.word())).collect();
            assert!(text.ends_with(&body), "{name}");
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}

#[test]
fn canonicalize_seeds() {
    for (name, data) in seeds("canonicalize") {
        let (&r, rest) = data.split_first().expect("seed has a rank byte");
        let rank = usize::from(r % 8) + 1;
        let w = Word::from_indices(rest.iter().map(|&b| b % rank as u8 + 1), rank).unwrap();
        let c = canonical_form(&w);
        assert!(is_canonical(&c), "{name}");
        let forms = all_normal_forms(&w, 1_000_000).unwrap();
        assert_eq!(forms.into_iter().collect::<Vec<_>>(), vec![c], "{name}");
    }
}
