#![no_main]

use conic_cubics::parse::parse_coefficient_line;
use conic_cubics::{classify, solve_khayyam, CurvePair, DEFAULT_TOL};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(k) = parse_coefficient_line(line) else {
        return;
    };
    assert!(k.iter().all(|v| v.is_finite()));
    if let Ok(form) = classify(k[0], k[1], k[2], k[3]) {
        let report = solve_khayyam(&form, CurvePair::OneTwo, DEFAULT_TOL);
        assert!(report.roots.iter().all(|r| r.value > 0.0));
    }
});
