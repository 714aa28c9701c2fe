use cycles_core::catalog::{self, BUILTIN_NAMES};
use cycles_core::dataio::{emit_certificate, parse_certificate};
use cycles_core::engine::{Engine, Nimber};
use cycles_core::games::{BoundaryKind, RuleSet, SegmentGame};
use cycles_core::periodicity::{
    certify, check_base_window, check_condition1, check_pattern_faithfulness, nimber_at,
    InvalidPattern, MismatchKind, PeriodicityError, Side,
};

#[test]
fn condition1_on_builtins() {
    assert!(check_condition1(&catalog::builtin("variant-line").unwrap()).pass);
    assert!(check_condition1(&catalog::builtin("standard-cycle").unwrap()).pass);
    // s - T = 0 leaves no room for length-0 patterns.
    assert!(!check_condition1(&catalog::builtin("standard-line").unwrap()).pass);

    let mut spec = catalog::builtin("variant-line").unwrap();
    spec.invalid_patterns.push(InvalidPattern::new(1, 2, 3, Side::Left, 26));
    assert!(!check_condition1(&spec).pass);
}

#[test]
fn faithfulness_on_builtins() {
    for name in BUILTIN_NAMES {
        let spec = catalog::builtin(name).unwrap();
        let v = check_pattern_faithfulness(&spec, spec.default_faithfulness_bound());
        assert!(v.pass, "{name}: {}", v.detail);
    }
    let spec = catalog::builtin("standard-cycle").unwrap();
    assert!(check_pattern_faithfulness(&spec, 8).pass);
}

#[test]
fn omitted_pattern_is_caught() {
    let mut spec = catalog::builtin("variant-line").unwrap();
    spec.invalid_patterns.retain(|p| *p != InvalidPattern::new(2, 5, 3, Side::Left, 0));
    let v = check_pattern_faithfulness(&spec, 2 * spec.window + 1);
    assert!(!v.pass);
    let c = v.counterexample.unwrap();
    assert_eq!(c.family_type, 2);
    assert_eq!(c.kind, MismatchKind::Missing);
    // The move (5,3,0,n-1) is unplayable from n = 1 on.
    assert_eq!(c.n, 1);
}

#[test]
fn spurious_pattern_is_caught() {
    let mut spec = catalog::builtin("standard-cycle").unwrap();
    spec.invalid_patterns.push(InvalidPattern::new(1, 1, 1, Side::Left, 0));
    let v = check_pattern_faithfulness(&spec, 8);
    let c = v.counterexample.unwrap();
    assert_eq!((c.family_type, c.n, c.kind), (1, 1, MismatchKind::Unexpected));
}

#[test]
fn window_checks() {
    let engine = Engine::new();
    assert!(check_base_window(&catalog::builtin("variant-line").unwrap(), &engine).pass);
    assert!(check_base_window(&catalog::builtin("standard-cycle").unwrap(), &engine).pass);
    let mut spec = catalog::builtin("variant-line").unwrap();
    spec.period = 16;
    assert!(!check_base_window(&spec, &engine).pass);
}

#[test]
fn certify_variant_line_and_look_up() {
    let engine = Engine::new();
    let spec = catalog::builtin("variant-line").unwrap();
    let cert = certify(&spec, &engine);
    assert!(cert.pass, "{:#?}", cert.verdicts);
    assert_eq!(cert.sequences.len(), 6);
    assert!(cert.sequences.iter().all(|s| s.values.len() == 87));

    assert_eq!(nimber_at(&cert, 1, 19).unwrap(), Nimber(1));
    assert_eq!(nimber_at(&cert, 1, 35).unwrap(), Nimber(8));
    assert_eq!(nimber_at(&cert, 1, 19 + 17 * 1_000_000).unwrap(), Nimber(1));
    assert_eq!(nimber_at(&cert, 7, 3), Err(PeriodicityError::TypeOutOfRange { index: 7, k: 6 }));
    assert!(nimber_at(&cert, 1, 0).is_err());

    for i in 1..=6 {
        let values = engine.sequence(spec.types[i - 1], spec.rules, 0, 4 * spec.window);
        for (n, &v) in values.iter().enumerate().skip(1) {
            assert_eq!(nimber_at(&cert, i, n).unwrap(), v, "g{i}({n})");
        }
        for n in spec.window + 1..400 {
            assert_eq!(nimber_at(&cert, i, n), nimber_at(&cert, i, n + spec.period));
        }
    }
}

#[test]
fn variant_cycle_certificate() {
    let engine = Engine::new();
    let cert = certify(&catalog::builtin("variant-cycle").unwrap(), &engine);
    assert!(cert.pass);
    assert_eq!(cert.k, 1);
    for n in 2..=400 {
        assert_eq!(nimber_at(&cert, 1, n).unwrap(), Nimber(0));
    }
    assert_eq!(nimber_at(&cert, 1, 1), Err(PeriodicityError::LengthOutOfRange { n: 1, min: 2 }));
}

#[test]
fn standard_line_is_not_periodic() {
    // The (in, open) and (out, open) types grow as n - 1.
    let engine = Engine::new();
    let cert = certify(&catalog::builtin("standard-line").unwrap(), &engine);
    assert!(!cert.pass);
    assert!(!cert.verdicts.window.pass);
    assert!(matches!(nimber_at(&cert, 1, 3), Err(PeriodicityError::NotCertified(_))));
}

#[test]
fn certificate_is_deterministic_and_parses() {
    let spec = catalog::builtin("standard-cycle").unwrap();
    let a = emit_certificate(&certify(&spec, &Engine::new()));
    let b = emit_certificate(&certify(&spec, &Engine::new()));
    assert_eq!(a, b);
    assert!(a.contains("\"schema\": \"cycles-cert/1\""));
    let parsed = parse_certificate(&a).unwrap();
    assert!(parsed.pass);
    let engine = Engine::new();
    for i in 1..=3 {
        for n in 1..=4 * spec.window {
            let direct = engine.grundy_segment(
                SegmentGame::with_boundaries(spec.types[i - 1], n),
                RuleSet::Standard,
            );
            assert_eq!(nimber_at(&parsed, i, n).unwrap(), direct);
        }
    }
}

#[test]
fn faithfulness_is_monotone_in_bound() {
    let spec = catalog::builtin("standard-cycle").unwrap();
    for bound in 7..=30 {
        assert!(check_pattern_faithfulness(&spec, bound).pass);
    }
}

#[test]
fn heuristic_recovers_variant_line_period() {
    let engine = Engine::new();
    let values = engine.sequence(
        cycles_core::games::Boundaries::new(BoundaryKind::Open, BoundaryKind::Open),
        RuleSet::SourcesAllowed,
        1,
        200,
    );
    let (t, s) = cycles_core::periodicity::suggest_period(&values, 40).unwrap();
    assert_eq!(t, 17);
    assert!(s <= 43);
}
