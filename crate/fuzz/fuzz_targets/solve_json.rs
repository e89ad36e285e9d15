#![no_main]

use conic_cubics::report::SolveDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = SolveDocument::from_json(text) {
        let again = SolveDocument::from_json(&doc.to_json()).expect("printed document parses");
        assert_eq!(again, doc);
        let _ = doc.report().expanded();
    }
});
