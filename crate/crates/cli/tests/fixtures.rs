use cke::fixture::{load_platform, parse_platform, FixtureError, BUILTIN_FIXTURES, SMALL_FIXTURES};
use cke::report::{hirsch_shortfall, platform_report};
use cke_core::pc::build_presentation;
use cke_core::platform::PlatformError;
use cke_core::FieldError;

#[test]
fn every_builtin_fixture_validates_with_expected_hirsch_length() {
    let expected = [3, 7, 10, 14, 16, 22, 30];
    assert_eq!(BUILTIN_FIXTURES.len(), expected.len());
    for ((name, text), h) in BUILTIN_FIXTURES.iter().zip(expected) {
        let p = parse_platform(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(p.name(), *name);
        assert_eq!(p.hirsch_length(), h, "{name}");
        assert_eq!(p.expected_hirsch_length(), Some(h));
        assert_eq!(hirsch_shortfall(&p), None);
        // free rank equals s + t - 1
        let (s, t) = p.signature().unwrap();
        assert_eq!(p.unit_count() - 1, (s + t - 1) as usize, "{name}");
    }
}

#[test]
fn small_fixtures_are_the_five_of_degree_at_most_eleven() {
    let degrees: Vec<usize> = SMALL_FIXTURES
        .iter()
        .map(|n| load_platform(n).unwrap().degree())
        .collect();
    assert_eq!(degrees, vec![2, 5, 7, 9, 11]);
}

#[test]
fn golden_alias_resolves() {
    let p = load_platform("golden").unwrap();
    assert_eq!(p.name(), "x2-x-1");
    assert_eq!(p.unit_count(), 2);
    assert_eq!(p.torsion_order(), 2);
}

#[test]
fn unknown_fixture_is_named() {
    let err = load_platform("no-such-platform").unwrap_err();
    assert!(matches!(err, FixtureError::NotFound(ref n) if n == "no-such-platform"));
    assert!(err.to_string().contains("no-such-platform"));
}

#[test]
fn non_unit_generator_rejected() {
    // θ has norm ±2 in x^15 - x - 2.
    let mut theta = vec![0i64; 15];
    theta[1] = 1;
    let text = format!(
        "name = \"bad\"\npolynomial = [-2, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]\nunits = [{:?}]\ntorsion_order = 1\n",
        theta
    );
    let err = parse_platform(&text).unwrap_err();
    assert!(
        matches!(
            err,
            FixtureError::Platform(PlatformError::NonUnitGenerator { index: 1, .. })
        ),
        "{err}"
    );
}

#[test]
fn dependent_basis_rejected() {
    let text = r#"
name = "dep"
polynomial = [-1, -1, 1]
basis = [[1, 0], [2, 0]]
units = [[-1, 0]]
torsion_order = 2
"#;
    let err = parse_platform(text).unwrap_err();
    assert!(
        matches!(
            err,
            FixtureError::Platform(PlatformError::DependentBasis { rank: 1, degree: 2 })
        ),
        "{err}"
    );
}

#[test]
fn rational_entries_and_custom_basis() {
    // {1, 1 + θ} spans Z[θ]; {1, (1 + θ)/2} is not closed under multiplication.
    let text = r#"
name = "shifted"
polynomial = [-1, -1, 1]
basis = [[1, 0], ["1", "1/1"]]
units = [[-1, 0], [0, 1]]
torsion_order = 2
expected_hirsch_length = 3
"#;
    let p = parse_platform(text).unwrap();
    assert_eq!(p.hirsch_length(), 3);
    let half = r#"
name = "half"
polynomial = [-1, -1, 1]
basis = [[1, 0], ["1/2", "1/2"]]
units = [[-1, 0], [0, 1]]
torsion_order = 2
"#;
    assert!(matches!(
        parse_platform(half),
        Err(FixtureError::Platform(_))
    ));
}

#[test]
fn malformed_documents_rejected() {
    assert!(matches!(
        parse_platform("name = "),
        Err(FixtureError::Syntax(_))
    ));
    let not_monic =
        "name = \"x\"\npolynomial = [-1, -1, 2]\nunits = [[-1, 0]]\ntorsion_order = 2\n";
    assert!(matches!(
        parse_platform(not_monic),
        Err(FixtureError::NotMonic(_))
    ));
    let bad_rat =
        "name = \"x\"\npolynomial = [-1, -1, 1]\nunits = [[\"1/0\", 0]]\ntorsion_order = 2\n";
    assert!(matches!(
        parse_platform(bad_rat),
        Err(FixtureError::Rational(_))
    ));
    let rational_root =
        "name = \"x\"\npolynomial = [-1, 0, 1]\nunits = [[-1, 0]]\ntorsion_order = 2\n";
    assert!(matches!(
        parse_platform(rational_root),
        Err(FixtureError::Platform(PlatformError::Field(
            FieldError::RationalRoot(_)
        )))
    ));
    let unknown_key =
        "name = \"x\"\npolynomial = [-1, -1, 1]\nunits = [[-1, 0]]\ntorsion_order = 2\nfoo = 1\n";
    assert!(matches!(
        parse_platform(unknown_key),
        Err(FixtureError::Syntax(_))
    ));
}

#[test]
fn torsion_only_fixture_is_flagged() {
    let text = r#"
name = "x5-torsion-only"
polynomial = [-1, 0, 0, -1, 0, 1]
units = [[-1, 0, 0, 0, 0]]
torsion_order = 2
expected_hirsch_length = 7
"#;
    let p = parse_platform(text).unwrap();
    assert_eq!(p.hirsch_length(), p.degree());
    assert_eq!(hirsch_shortfall(&p), Some(7));
    let report = platform_report(&p, &build_presentation(&p).unwrap());
    assert!(report.contains("h(G) computed: 5"));
    assert!(report.contains("WARNING"));
}

#[test]
fn golden_report_lists_relations() {
    let p = load_platform("golden").unwrap();
    let report = platform_report(&p, &build_presentation(&p).unwrap());
    for needle in [
        "degree n: 2",
        "unit generators m: 2",
        "torsion order k: 2",
        "h(G) computed: 3",
        "h(G) expected: 3",
        "g1^2 = e",
        "g3^g2 = g4",
        "g4^g2 = g3 g4",
    ] {
        assert!(report.contains(needle), "missing `{needle}` in\n{report}");
    }
    assert!(!report.contains("WARNING"));
}
