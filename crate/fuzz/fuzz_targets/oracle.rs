#![no_main]

use conic_cubics::oracle::{solve_cubic_oracle, solve_quartic_oracle};
use conic_cubics::{Cubic, Quartic};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 32 {
        return;
    }
    let k: Vec<f64> = data
        .chunks_exact(8)
        .take(5)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if let Ok(cubic) = Cubic::new(k[0], k[1], k[2], k[3]) {
        assert!(solve_cubic_oracle(&cubic).total_multiplicity() <= 3);
    }
    if k.len() == 5 {
        if let Ok(quartic) = Quartic::new(k[0], k[1], k[2], k[3], k[4]) {
            assert!(solve_quartic_oracle(&quartic).total_multiplicity() <= 4);
        }
    }
});
