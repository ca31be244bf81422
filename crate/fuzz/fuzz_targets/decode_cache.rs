#![no_main]

use kiselman::cache::decode_cache;
use kiselman::words::is_canonical;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(elements) = decode_cache(text, None) {
        // Accepted files re-encode to exactly the input body.
        let body: String = elements.iter().map(|x| format!("{}\n", x.word())).collect();
        assert!(text.ends_with(&body));
        assert!(elements.iter().all(|x| is_canonical(x.word())));
    }
});
