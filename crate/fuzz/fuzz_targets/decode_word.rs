#![no_main]

use libfuzzer_sys::fuzz_target;
use projline::{eval_word, reduce_word, EWord};

fuzz_target!(|data: &[u8]| {
    if let Ok(w) = serde_json::from_slice::<EWord>(data) {
        let again: EWord = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(again, w);
        if w.len() > 64 {
            return;
        }
        // overflow is reported, never a panic
        if let (Ok(m), Ok(r)) = (eval_word(&w), reduce_word(&w)) {
            if let Ok(n) = eval_word(&r) {
                assert_eq!(m, n);
            }
        }
    }
});
