#![no_main]

use libfuzzer_sys::fuzz_target;
use projline::{is_distant, Path};

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = serde_json::from_slice::<Path>(data) {
        assert!(p.vertices().windows(2).all(|w| is_distant(w[0], w[1])));
        let again: Path = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(again, p);
    }
});
