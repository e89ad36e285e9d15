use conic_cubics::report::SolveDocument;
use conic_cubics::verify::{run_verification, VerifyConfig, VerifySummary};
use conic_cubics::{solve_khayyam, CurvePair, KhayyamForm, KhayyamType, DEFAULT_TOL};

#[test]
fn solve_document_round_trips() {
    for (kind, b, c) in [
        (KhayyamType::T13, 1.0, 10.0),
        (KhayyamType::T14, 3.0, 2.0),
        (KhayyamType::T14, 1.0, 1.0),
        (KhayyamType::T19, 0.7, 2.5),
    ] {
        let form = KhayyamForm::with_magnitudes(kind, 1.0, b, c).unwrap();
        let report = solve_khayyam(&form, CurvePair::OneTwo, DEFAULT_TOL);
        let doc = SolveDocument::new(&report, Some(form.type_id()));
        for text in [doc.to_json(), doc.to_json_pretty()] {
            let back = SolveDocument::from_json(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.report(), report);
        }
    }
}

#[test]
fn malformed_json_is_an_error() {
    assert!(SolveDocument::from_json("{").is_err());
    assert!(SolveDocument::from_json(r#"{"method":"nope"}"#).is_err());
}

#[test]
fn verify_summary_round_trips() {
    let summary = run_verification(&VerifyConfig::new(4, 8, DEFAULT_TOL));
    let back: VerifySummary = serde_json::from_str(&summary.to_json()).unwrap();
    assert_eq!(back, summary);
}
