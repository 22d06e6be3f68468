use sha2::{Digest, Sha256};
use tpr_cli::{presets, CliError, Construction, Problem};

const FIXTURE_SHA256: [(&str, &str); 6] = [
    ("RP1", "6d4121516997dbe67ef2237ac46074256ece7beab4f75c46e0dc109eaffba8a5"),
    ("RP2", "8c1ecd9e77bc1c5d93b18772c1bb6f6be7fe4b75e88943b566084368ff9094c9"),
    ("RP3", "f8c668ec8c77a1b4b5fa1e931d4933e19a82d106f4a96775222f28931ea355d6"),
    ("RP4", "9725aa7a89f7327ed29a5c853d71d9d4a8a21be2b5889d058ba93dbb61afa8b7"),
    ("RP5", "d03a3c21ed7b389eaed35e6277004ac3322ae3c11ed22dffc44b7601d037bba8"),
    ("RP6", "063362ce6af5be0ebf722bbf02071fab9a4a0b0e4cf4041e24f1eb29111a246e"),
];

#[test]
fn fixtures_are_unchanged() {
    for (name, want) in FIXTURE_SHA256 {
        let text = presets::text(name).expect("preset exists");
        let got: String = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(got, want, "{name} fixture edited");
    }
}

#[test]
fn every_preset_resolves_and_constructs() {
    for name in presets::NAMES {
        let p = Problem::resolve(&name.to_lowercase()).expect(name);
        assert_eq!(p.name, name);
        let sol = p.exact_solution().expect(name);
        let (l, r) = sol.initial_data();
        // Velocities at rest are compared on the unit sound-speed scale.
        assert!(l.max_rel_diff(&p.left, 1.0) < 1e-12, "{name} left state");
        assert!(r.max_rel_diff(&p.right, 1.0) < 1e-12, "{name} right state");
    }
}

#[test]
fn inverse_and_forward_presets() {
    for name in ["RP1", "RP2", "RP3", "RP4"] {
        assert!(matches!(Problem::resolve(name).unwrap().construction, Construction::Inverse { .. }), "{name}");
    }
    for name in ["RP5", "RP6"] {
        let p = Problem::resolve(name).unwrap();
        assert!(matches!(p.construction, Construction::Forward { .. }), "{name}");
        assert!(p.eos_note.is_some(), "{name} carries an assumed EOS");
    }
    assert!(Problem::resolve("RP3").unwrap().eos_note.is_none());
}

const MINIMAL: &str = "
name = tube
phase1.scale = 1
phase1.exponent = 1.4
phase1.rho_ref = 1
phase1.offset = 0
phase2.scale = 1
phase2.exponent = 2
phase2.rho_ref = 1
phase2.offset = 0
grid.x_min = 0
grid.x_max = 1
grid.x_split = 0.5
grid.full_cells = 100
grid.cfl = 0.5
grid.t_end = 0.1
left = 0.5 1 1 0 0
right = 0.5 0.5 0.5 0 0
";

fn parse_err(text: &str) -> String {
    match Problem::parse(text) {
        Err(CliError::Problem(m)) => m,
        other => panic!("expected a problem error, got {other:?}"),
    }
}

#[test]
fn minimal_file_parses_without_construction() {
    let p = Problem::parse(MINIMAL).unwrap();
    assert_eq!(p.construction, Construction::None);
    assert!(p.table.is_empty());
    assert!(p.exact_solution().is_err());
    assert_eq!(p.riemann_data().x_split, 0.5);
}

#[test]
fn forward_pattern_solves_a_fresh_problem() {
    let text = format!(
        "{MINIMAL}pattern.0.left = fan 1-; fan 2-\npattern.0.right = shock 2+; shock 1+\n\
         pattern.1.left = fan 2-; fan 1-\npattern.1.right = shock 1+; shock 2+\n\
         pattern.2.left = fan 1-; fan 2-\npattern.2.right = shock 1+; shock 2+\n\
         pattern.3.left = fan 2-; fan 1-\npattern.3.right = shock 2+; shock 1+\n"
    );
    let p = Problem::parse(&text).unwrap();
    let sol = p.exact_solution().unwrap();
    let (l, r) = sol.initial_data();
    assert!(l.max_rel_diff(&p.left, 1e-3) < 1e-10);
    assert!(r.max_rel_diff(&p.right, 1e-3) < 1e-10);
}

#[test]
fn malformed_files_are_refused() {
    assert!(parse_err(&MINIMAL.replace("grid.cfl = 0.5", "grid.cfl = fast")).contains("grid.cfl"));
    assert!(parse_err(&MINIMAL.replace("name = tube\n", "")).contains("name"));
    assert!(parse_err(&format!("{MINIMAL}name = again\n")).contains("duplicate"));
    assert!(parse_err(&MINIMAL.replace("left = 0.5 1 1 0 0", "left = 0.5 1 1 0")).contains("five components"));
    assert!(parse_err(&MINIMAL.replace("left = 0.5 1 1 0 0", "left = 1.5 1 1 0 0")).contains("left"));
    assert!(parse_err(&MINIMAL.replace("grid.x_split = 0.5", "grid.x_split = 2")).contains("split"));
    assert!(parse_err(&format!("{MINIMAL}just words\n")).contains("key = value"));
    assert!(parse_err(&format!("{MINIMAL}pattern.0.left = fan 3-\npattern.0.right = fan 1+\n")).contains("family"));
}

#[test]
fn phase_mode_is_optional_metadata() {
    use tpr_core::Regime;
    let p = Problem::parse(&format!("{MINIMAL}phase2.mode = isothermal\n")).unwrap();
    assert_eq!(p.eos.phase2().regime(), Regime::Isothermal);
    assert_eq!(p.eos.phase1().regime(), Regime::Isentropic);
    assert_eq!(p.eos.phase2().sound_speed(2.0), Problem::parse(MINIMAL).unwrap().eos.phase2().sound_speed(2.0));
    assert!(parse_err(&format!("{MINIMAL}phase1.mode = adiabatic\n")).contains("phase1.mode"));
    let commented = MINIMAL.replace("grid.cfl = 0.5", "grid.cfl = 0.4   # Courant number");
    assert_eq!(Problem::parse(&commented).unwrap().cfl, 0.4);
}

#[test]
fn missing_file_is_an_io_error() {
    let e = Problem::resolve("/nonexistent/problem.tpr").unwrap_err();
    assert!(matches!(e, CliError::Io(_)));
    assert_eq!(e.exit_code(), 1);
}
