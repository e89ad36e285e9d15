use conic_cubics::oracle::{solve_cubic_oracle, solve_quartic_oracle};
use conic_cubics::{Cubic, Quartic};
use proptest::prelude::*;

fn spread_out(roots: &[f64]) -> bool {
    // The merge radius would join closer pairs, by design.
    roots.iter().enumerate().all(|(i, a)| {
        roots[i + 1..]
            .iter()
            .all(|b| (a - b).abs() > 1e-3 * a.abs().max(b.abs()).max(1.0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn cubic_roots_are_recovered(mut r in prop::array::uniform3(-10.0f64..10.0), lead in 0.5f64..4.0) {
        prop_assume!(spread_out(&r));
        r.sort_by(f64::total_cmp);
        let k = Cubic::from_roots(r).coefficients().map(|v| v * lead);
        let report = solve_cubic_oracle(&Cubic::new(k[0], k[1], k[2], k[3]).unwrap());
        let got = report.expanded();
        prop_assert_eq!(got.len(), 3, "{:?}", report);
        for (g, w) in got.iter().zip(&r) {
            prop_assert!((g - w).abs() <= 1e-10 * w.abs().max(1.0), "{:?} vs {:?}", got, r);
        }
    }

    #[test]
    fn quartic_roots_are_recovered(mut r in prop::array::uniform4(-5.0f64..5.0)) {
        prop_assume!(spread_out(&r));
        r.sort_by(f64::total_cmp);
        let c3 = -(r[0] + r[1] + r[2] + r[3]);
        let c2 = r[0] * r[1] + r[0] * r[2] + r[0] * r[3] + r[1] * r[2] + r[1] * r[3] + r[2] * r[3];
        let c1 = -(r[0] * r[1] * r[2] + r[0] * r[1] * r[3] + r[0] * r[2] * r[3] + r[1] * r[2] * r[3]);
        let c0 = r[0] * r[1] * r[2] * r[3];
        let report = solve_quartic_oracle(&Quartic::new(1.0, c3, c2, c1, c0).unwrap());
        let got = report.expanded();
        prop_assert_eq!(got.len(), 4, "{:?}", report);
        for (g, w) in got.iter().zip(&r) {
            prop_assert!((g - w).abs() <= 1e-8 * w.abs().max(1.0), "{:?} vs {:?}", got, r);
        }
    }
}

#[test]
fn repeated_roots_carry_multiplicity() {
    let double = solve_cubic_oracle(&Cubic::from_roots([2.0, -1.0, -1.0]));
    assert_eq!(double.roots.len(), 2);
    assert_eq!(double.roots[0].multiplicity, 2);
    assert_eq!(double.total_multiplicity(), 3);

    let triple = solve_cubic_oracle(&Cubic::from_roots([1.5, 1.5, 1.5]));
    assert_eq!(triple.roots.len(), 1);
    assert_eq!(triple.roots[0].multiplicity, 3);
    assert!((triple.roots[0].value - 1.5).abs() < 1e-9);
}
