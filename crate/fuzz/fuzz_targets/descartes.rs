#![no_main]

use conic_cubics::descartes::solve_descartes;
use conic_cubics::{DepressedForm, DEFAULT_TOL};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 25 {
        return;
    }
    let [p, q, r]: [f64; 3] =
        std::array::from_fn(|i| f64::from_le_bytes(data[8 * i..8 * i + 8].try_into().unwrap()));
    let form = if data[24] & 1 == 0 {
        DepressedForm::cubic(p, q)
    } else {
        DepressedForm::quartic(p, q, r)
    };
    if !form.is_finite() {
        return;
    }
    let report = solve_descartes(&form, DEFAULT_TOL);
    assert!(report.total_multiplicity() <= form.degree_value());
});
