#![no_main]

use libfuzzer_sys::fuzz_target;
use projline::{is_distant, Cycle};

fuzz_target!(|data: &[u8]| {
    if let Ok(c) = serde_json::from_slice::<Cycle>(data) {
        let v = c.vertices();
        assert!(v.len() >= 3);
        assert!((0..v.len()).all(|i| is_distant(v[i], v[(i + 1) % v.len()])));
        let again: Cycle = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(again, c);
    }
});
