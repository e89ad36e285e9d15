#![no_main]

//! Four little-endian f64 coefficients, highest degree first.

use conic_cubics::khayyam::{construction_plan, solve_plan};
use conic_cubics::{classify, CurvePair, DEFAULT_TOL};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 32 {
        return;
    }
    let k: [f64; 4] =
        std::array::from_fn(|i| f64::from_le_bytes(data[8 * i..8 * i + 8].try_into().unwrap()));
    let Ok(form) = classify(k[0], k[1], k[2], k[3]) else {
        return;
    };
    let plan = construction_plan(&form, data.len() > 32 && data[32] & 1 == 1);
    for pair in CurvePair::ALL {
        let _ = solve_plan(&plan, pair, DEFAULT_TOL);
    }
});
