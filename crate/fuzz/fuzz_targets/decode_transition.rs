#![no_main]

use libfuzzer_sys::fuzz_target;
use projline::transition;
use projline::transition::TransitionDoc;

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = serde_json::from_slice::<TransitionDoc>(data) else {
        return;
    };
    let again: TransitionDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(again, doc);
    if doc.validate().is_err() {
        return;
    }
    // the algorithm's own document for the same pair always validates
    if let Ok(td) = transition(doc.x, doc.y) {
        if td.e_len() + td.f_len() <= 10_000 {
            let own = td.to_doc().unwrap();
            own.validate().unwrap();
            assert_eq!((own.a.len(), own.b.len()), (own.r, own.l));
        }
    }
});
