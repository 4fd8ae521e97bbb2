#![no_main]

use libfuzzer_sys::fuzz_target;
use projline::ProjPoint;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = s.parse::<ProjPoint>() {
        assert!(p.b() > 0 || (p.b() == 0 && p.a() == 1));
        assert_eq!(p.to_string().parse::<ProjPoint>().unwrap(), p);
    }
});
