#![no_main]

use conic_cubics::{intersect_conics, Conic, DEFAULT_TOL};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 96 {
        return;
    }
    let k: [f64; 12] =
        std::array::from_fn(|i| f64::from_le_bytes(data[8 * i..8 * i + 8].try_into().unwrap()));
    let (Ok(c1), Ok(c2)) = (
        Conic::from_coefficients(k[..6].try_into().unwrap()),
        Conic::from_coefficients(k[6..].try_into().unwrap()),
    ) else {
        return;
    };
    if let Ok(points) = intersect_conics(&c1, &c2, DEFAULT_TOL) {
        assert!(points.len() <= 4);
        assert!(points.iter().all(|p| p.x.is_finite() && p.y.is_finite()));
    }
});
