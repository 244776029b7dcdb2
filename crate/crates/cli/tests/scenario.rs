use prym_cli::Scenario;
use prym_core::constructions::{jacobian_presentation, product_presentation, Family, FamilySpec};
use prym_core::prym::EngineOptions;

fn round_trip(spec: &FamilySpec) {
    let input = product_presentation(spec).unwrap();
    let text = Scenario::from_input(&input, Some(spec.describe())).to_toml();
    let parsed = Scenario::parse(&text).unwrap();
    let again = parsed.to_input(&text, EngineOptions::default()).unwrap();
    assert_eq!(again, input, "{}", spec.describe());
    assert_eq!(Scenario::from_input(&again, Some(spec.describe())).to_toml(), text);
}

#[test]
fn family_presentations_round_trip() {
    for spec in [
        FamilySpec::new(Family::SymmetricSimple, 3, vec![2]).unwrap(),
        FamilySpec::new(Family::SymmetricSimple, 3, vec![2, 2]).unwrap(),
        FamilySpec::new(Family::SymmetricSimple, 2, vec![2, 3, 2]).unwrap(),
        FamilySpec::new(Family::AlternatingThreeCycle, 7, vec![3, 3]).unwrap(),
        FamilySpec::mixed(
            7,
            vec![3, 3],
            vec![Family::AlternatingDoubleTransposition, Family::AlternatingThreeCycle],
        )
        .unwrap(),
    ] {
        round_trip(&spec);
    }
}

#[test]
fn shipped_scenario_matches_builder() {
    let source = include_str!("../scenarios/s3_jacobian.toml");
    let input = Scenario::parse(source)
        .unwrap()
        .to_input(source, EngineOptions::default())
        .unwrap();
    assert_eq!(input, jacobian_presentation(3, 2).unwrap());

    let source = include_str!("../scenarios/s3_squared.toml");
    let input = Scenario::parse(source)
        .unwrap()
        .to_input(source, EngineOptions::default())
        .unwrap();
    let spec = FamilySpec::new(Family::SymmetricSimple, 3, vec![2, 2]).unwrap();
    assert_eq!(input, product_presentation(&spec).unwrap());
}

#[test]
fn numbers_accept_strings_and_fractions() {
    let source = r#"
[group]
kind = "symmetric"
n = 3

[subgroup]
kind = "point_stabilizer"
point = 3

[[representation]]
kind = "class_function"
values = ["2", 0, "-2/2"]

[signature]
genus = "0"

[[signature.branch]]
element = "(1 2)"
count = "8"
"#;
    let input = Scenario::parse(source)
        .unwrap()
        .to_input(source, EngineOptions::default())
        .unwrap();
    assert_eq!(input.signature().branches[0].count, 8u32.into());
}

#[test]
fn diagnostics_point_at_the_source() {
    let source = "[group]\nkind = \"symmetric\"\nn = 3\n[subgroup]\nkind = \"whole\"\n[[representation]]\nkind = \"standard\"\nn = 3\n[signature]\n[[signature.branch]]\nelement = \"(1 5)\"\ncount = 2\n";
    let d = Scenario::parse(source)
        .unwrap()
        .to_input(source, EngineOptions::default())
        .unwrap_err();
    assert_eq!(d.line, Some(11));
    assert!(d.message.contains("5"), "{d}");

    let d = Scenario::parse("[group]\nkind = \"cyclic\"\nn = 3\n").unwrap_err();
    assert_eq!(d.line, Some(2));

    let source = "[group]\nkind = \"symmetric\"\nn = 3\n[subgroup]\nkind = \"whole\"\n[[representation]]\nkind = \"class_function\"\nvalues = [\"1/0\"]\n[signature]\n";
    let d = Scenario::parse(source)
        .unwrap()
        .to_input(source, EngineOptions::default())
        .unwrap_err();
    assert_eq!(d.line, Some(8));
}
