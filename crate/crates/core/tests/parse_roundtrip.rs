use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use sl2char::gen;
use sl2char::parse::{parse_char, parse_con, parse_inv};
use sl2char::tracealg::{ConExpr, InvExpr};
use sl2char::{CharAlgebra, CharPoly, OracleConfig};

fn rat(rng: &mut impl Rng) -> BigRational {
    let d: i64 = rng.gen_range(1..=5);
    BigRational::new(rng.gen_range(-9i64..=9).into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn characters_round_trip(seed in any::<u64>()) {
        let alg = CharAlgebra::free(2, 2);
        let mut rng = OracleConfig::new(1, seed).rng(0);
        let f = (0..4).fold(CharPoly::zero(), |acc, _| {
            let d = rng.gen_range(0..=3);
            let m = gen::monomial(&mut rng, &alg, d, 4);
            acc.add(&CharPoly::term(m, rat(&mut rng)))
        });
        let text = f.to_string();
        prop_assert_eq!(parse_char(&text, &alg).unwrap(), f, "{}", text);
    }

    #[test]
    fn trace_expressions_round_trip(seed in any::<u64>()) {
        let mut rng = OracleConfig::new(1, seed).rng(0);
        let alphabet = gen::trace_alphabet(2, 2, true);
        let mut inv = InvExpr::constant(rat(&mut rng));
        let mut con = ConExpr::zero();
        for _ in 0..3 {
            let len = rng.gen_range(1..=4);
            let w = gen::trace_word(&mut rng, &alphabet, len);
            inv = inv.add(&InvExpr::tr(&w).scale(&rat(&mut rng)));
            con = con.add(&ConExpr::word(w).scale(&inv));
        }
        let (ti, tc) = (inv.to_string(), con.to_string());
        prop_assert_eq!(parse_inv(&ti).unwrap(), inv, "{}", ti);
        prop_assert_eq!(parse_con(&tc).unwrap(), con, "{}", tc);
    }

    #[test]
    fn garbage_never_panics(s in "[a-z0-9()*+^./, -]{0,24}") {
        let alg = CharAlgebra::free(2, 2);
        let _ = parse_char(&s, &alg);
        let _ = parse_con(&s);
    }
}

#[test]
fn errors_point_at_the_offending_byte() {
    let alg = CharAlgebra::free(2, 1);
    let err = |s: &str| match parse_char(s, &alg) {
        Err(sl2char::Error::Parse(e)) => e.pos,
        other => panic!("expected a parse error, got {other:?}"),
    };
    assert_eq!(err("loop(g1) +"), 10);
    assert_eq!(err("loop(g1))"), 8);
    assert_eq!(err("arc(e.p1 e.p1)"), 9);
}
