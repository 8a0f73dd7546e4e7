use skewline_core::configs::BuiltinName;
use skewline_core::verify::{run, VerifyOptions};

fn run_corrupted(name: BuiltinName, only: &[u8]) -> Vec<u8> {
    let options = VerifyOptions {
        corrupt: Some(name),
        only: only.to_vec(),
        ..VerifyOptions::new()
    };
    let report = run(&options).expect("verification runs");
    assert_eq!(report.corrupted.as_deref(), Some(name.as_str()));
    report.failed_ids()
}

#[test]
fn corrupted_quadric_fails_only_its_criterion() {
    // every criterion except the randomized suite, which ignores built-ins
    let ids: Vec<u8> = (1..=12).collect();
    assert_eq!(run_corrupted(BuiltinName::Quadric4, &ids), vec![4]);
}

#[test]
fn corrupted_klein_is_detected() {
    assert_eq!(run_corrupted(BuiltinName::Klein, &[9, 10]), vec![9, 10]);
}

#[test]
fn corrupted_d4_is_detected() {
    assert!(run_corrupted(BuiltinName::D4, &[1, 3]).contains(&1));
}

#[test]
fn uncorrupted_subset_passes() {
    let report = run(&VerifyOptions {
        only: vec![4, 5],
        ..VerifyOptions::new()
    })
    .unwrap();
    assert!(report.all_passed());
    assert_eq!(report.criteria.len(), 2);
}
