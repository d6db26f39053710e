//! Curves on surfaces and twisted characters of central extensions.

use num_rational::BigRational;
use rand::Rng;

use sl2char::curves::{curve_char, graphical_rule, parse_curve_file, random_site, to_char, CurveSpec};
use sl2char::gen;
use sl2char::twisted::CentralExtSpec;
use sl2char::{sample_rep, sample_sl2, CharAlgebra, CharPoly, MarkedPoint, Rep, OracleConfig, PrimeField, SurfaceSpec, Word};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn reversing_a_curve_fixes_loops_and_negates_arcs() {
    let surface = SurfaceSpec::new(1, 1, 2);
    let alg = surface.algebra();
    let mut rng = OracleConfig::new(1, 3).rng(0);
    for _ in 0..40 {
        let g = gen::nonempty_word(&mut rng, surface.rank(), 5);
        let c = CurveSpec::Loop(g);
        assert_eq!(curve_char(&surface, &alg, &c.reversed()).unwrap(), curve_char(&surface, &alg, &c).unwrap());
        let (p, q) = (gen::point(&mut rng, surface.rank(), 2, 3), gen::point(&mut rng, surface.rank(), 2, 3));
        let a = CurveSpec::Arc(p, q);
        let ch = curve_char(&surface, &alg, &a).unwrap();
        assert_eq!(curve_char(&surface, &alg, &a.reversed()).unwrap(), ch.neg());
    }
}

#[test]
fn collections_multiply() {
    let surface = SurfaceSpec::new(0, 3, 1);
    let alg = surface.algebra();
    let mut rng = OracleConfig::new(1, 4).rng(0);
    for _ in 0..20 {
        let curves: Vec<CurveSpec> =
            (0..3).map(|_| CurveSpec::Loop(gen::nonempty_word(&mut rng, surface.rank(), 3))).collect();
        let whole = to_char(&surface, &alg, &curves).unwrap();
        let split = to_char(&surface, &alg, &curves[..1])
            .unwrap()
            .mul(&to_char(&surface, &alg, &curves[1..]).unwrap());
        assert_eq!(whole, split);
    }
    assert_eq!(to_char(&surface, &alg, &[]).unwrap(), CharPoly::int(1));
}

#[test]
fn closed_surface_rules_hold_on_relator_respecting_reps() {
    let f = PrimeField::default();
    let surface = SurfaceSpec::new(2, 0, 0);
    assert!(!surface.is_free());
    let alg = surface.algebra();
    let cfg = OracleConfig::new(12, 6);
    // Powers of one matrix commute, so [a1,b1][a2,b2] = Id holds.
    let library: Vec<Rep<_>> = (0..12)
        .map(|i| {
            let mut rng = cfg.rng(i);
            let m = sample_sl2(&f, &mut rng).unwrap();
            let pows = [1, 2, -1, 3].map(|k| {
                let w = Word::gen(1).pow(k);
                Rep::new(vec![m.clone()], vec![]).eval_word(&f, &w).unwrap()
            });
            Rep::new(pows.to_vec(), vec![])
        })
        .collect();
    assert!(library.iter().all(|r| r.validate(&f, alg.presentation()).is_valid()));
    let mut rng = cfg.rng(99);
    for rule in [1, 3, 5] {
        for _ in 0..6 {
            let site = random_site(&mut rng, &surface, rule, 3).unwrap();
            let (l, r) = graphical_rule(&surface, &alg, &site).unwrap();
            assert!(alg.equal(&l, &r, &f, &library, &cfg).unwrap().is_equal(), "{site:?}");
        }
    }
    // A non-relation is refuted on the same library.
    let a1 = alg.loop_(&surface.parse_word("a1").unwrap());
    assert!(!alg.equal(&a1, &CharPoly::int(2), &f, &library, &cfg).unwrap().is_equal());
}

#[test]
fn every_rule_holds_under_the_oracle() {
    let f = PrimeField::default();
    let cfg = OracleConfig::new(8, 77);
    for surface in [SurfaceSpec::new(0, 2, 2), SurfaceSpec::new(1, 1, 3)] {
        let alg = surface.algebra();
        let mut rng = cfg.rng(1);
        for rule in 1..=7 {
            for _ in 0..6 {
                let site = random_site(&mut rng, &surface, rule, 3).unwrap();
                assert_eq!(site.rule(), rule);
                let (l, r) = graphical_rule(&surface, &alg, &site).unwrap();
                assert!(alg.equal(&l, &r, &f, &[], &cfg).unwrap().is_equal(), "{site:?}");
            }
        }
    }
}

#[test]
fn curve_files() {
    let (s, curves) = parse_curve_file(
        r#"{"genus": 1, "boundary": 1, "marked": 2,
            "curves": [{"loop": "a1 b1"}, {"arc": {"from": ["", 1], "to": ["a1", 2]}}]}"#,
    )
    .unwrap();
    assert_eq!((s.rank(), curves.len()), (2, 2));
    assert_eq!(curves[0], CurveSpec::Loop(Word::parse("g1 g2").unwrap()));
    assert_eq!(curves[1], CurveSpec::Arc(MarkedPoint::base(1), MarkedPoint::new(Word::gen(1), 2)));
    assert!(parse_curve_file(r#"{"genus": 0, "boundary": 2, "marked": 1, "curves": [{"arc": {"from": ["", 2], "to": ["", 1]}}]}"#).is_err());
    assert!(parse_curve_file(r#"{"genus": 0, "boundary": 2, "marked": 1, "curves": [{"loop": "a1"}]}"#).is_err());
}

fn ext(signs: &[i8]) -> CentralExtSpec {
    let central: Vec<String> = signs
        .iter()
        .enumerate()
        .map(|(i, s)| format!(r#"{{"name": "z{i}", "order": 2, "sign": {s}}}"#))
        .collect();
    CentralExtSpec::from_json(sl2char::Presentation::free(2, 2), &format!(r#"{{"central": [{}]}}"#, central.join(",")))
        .unwrap()
}

fn random_poly(rng: &mut rand_chacha::ChaCha8Rng, alg: &CharAlgebra) -> CharPoly {
    (0..3).fold(CharPoly::zero(), |acc, _| {
        let d = rng.gen_range(0..=2);
        let m = gen::monomial(rng, alg, d, 4);
        acc.add(&CharPoly::term(m, rat(rng.gen_range(-3..=3))))
    })
}

#[test]
fn normalization_is_an_idempotent_algebra_map() {
    let e = ext(&[-1, 1]);
    let base = CharAlgebra::free(2, 2);
    let big = CharAlgebra::new(e.extended_presentation());
    let mut rng = OracleConfig::new(1, 8).rng(0);
    for _ in 0..30 {
        let (a, b) = (random_poly(&mut rng, &big), random_poly(&mut rng, &big));
        let (na, nb) = (e.twist_normalize(&base, &a), e.twist_normalize(&base, &b));
        assert_eq!(e.twist_normalize(&base, &na), na);
        assert_eq!(e.twist_normalize(&base, &a.mul(&b)), na.mul(&nb));
        assert_eq!(e.twist_normalize(&base, &a.add(&b)), na.add(&nb));
    }
}

#[test]
fn normalization_agrees_with_twisted_evaluation() {
    let f = PrimeField::default();
    let e = ext(&[-1, -1]);
    let base = CharAlgebra::free(2, 2);
    let big = CharAlgebra::new(e.extended_presentation());
    let cfg = OracleConfig::new(1, 9);
    let mut rng = cfg.rng(0);
    for i in 0..30 {
        let a = random_poly(&mut rng, &big);
        let twisted = e.sample_twisted_rep(&f, &mut cfg.rng(100 + i)).unwrap();
        let plain = sample_rep(&f, &e.base, &[], &mut cfg.rng(100 + i)).unwrap();
        assert!(twisted.validate(&f, &e.extended_presentation()).is_valid());
        assert_eq!(a.eval(&f, &twisted).unwrap(), e.twist_normalize(&base, &a).eval(&f, &plain).unwrap(), "{a}");
    }
}

#[test]
fn trivial_signs_erase_central_letters() {
    let e = ext(&[1]);
    let base = CharAlgebra::free(2, 2);
    let big = CharAlgebra::new(e.extended_presentation());
    let z = e.parse_word("z0").unwrap();
    let g = Word::parse("g1 g2^-1").unwrap();
    let twisted = big.loop_(&z.mul(&g)).mul(&big.arc(&MarkedPoint::new(z.clone(), 1), &MarkedPoint::base(2)));
    let expected = base.loop_(&g).mul(&base.arc(&MarkedPoint::base(1), &MarkedPoint::base(2)));
    assert_eq!(e.twist_normalize(&base, &twisted), expected);
    let neg = ext(&[-1]);
    assert_eq!(neg.twist_normalize(&base, &big.loop_(&z.mul(&g))), base.loop_(&g).neg());
}

#[test]
fn kernel_pairs_are_equal_over_twisted_reps() {
    let f = PrimeField::default();
    let cfg = OracleConfig::new(8, 10);
    for s in [-1, 1] {
        let e = ext(&[s]);
        let big = CharAlgebra::new(e.extended_presentation());
        let (l, r) = e.loop_kernel(&big, 0, &Word::parse("g1 g2").unwrap());
        assert!(e.equal(&l, &r, &f, &cfg).unwrap().is_equal());
        let (l, r) = e.arc_kernel(&big, 0, &MarkedPoint::base(1), &MarkedPoint::new(Word::gen(2), 2));
        assert!(e.equal(&l, &r, &f, &cfg).unwrap().is_equal());
        // The opposite sign is refuted.
        let (l, r) = e.loop_kernel(&big, 0, &Word::gen(1));
        assert!(!e.equal(&l, &r.neg(), &f, &cfg).unwrap().is_equal());
    }
}

#[test]
fn invalid_extensions_are_rejected() {
    let base = sl2char::Presentation::free(1, 0);
    assert!(CentralExtSpec::from_json(base.clone(), r#"{"central": [{"name": "z", "order": 3, "sign": -1}]}"#).is_err());
    assert!(CentralExtSpec::from_json(base.clone(), r#"{"central": [{"name": "z", "sign": 2}]}"#).is_err());
    assert!(CentralExtSpec::from_json(base.clone(), r#"{"central": [{"name": "g1", "sign": 1}]}"#).is_err());
    assert!(CentralExtSpec::from_json(base, r#"{"central": [{"name": "z", "sign": 1}, {"name": "z", "sign": -1}]}"#).is_err());
}
