use tpr_core::casebook::admissibility_cases;

#[test]
fn every_constructed_case_gets_its_expected_verdict() {
    let cases = admissibility_cases();
    for c in &cases {
        println!("{:<62} expected {:?} observed {:?}: {}", c.name, c.expected, c.observed, c.detail);
    }
    let wrong: Vec<_> = cases.iter().filter(|c| !c.matches()).map(|c| c.name).collect();
    assert!(wrong.is_empty(), "mismatched cases: {wrong:?}");
}
