//! Directed rewrites R4, R5, R6, POW and a terminating greedy reducer.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::{chebyshev, CharAlgebra, CharPoly, Monomial, Symbol};
use crate::error::Error;
use crate::groupact::act;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `[g][h] → [gh] + [g⁻¹h]`
    R4,
    /// `[g][p,q] → [gp,q] + [g⁻¹p,q]`
    R5,
    /// `[p,q][p′,q′] → [p,q′][p′,q] + [p,p′][q,q′]`
    R6,
    /// `[uᵏ] → 2T_k([u]/2)`
    Pow,
}

impl FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "R4" => Ok(Rule::R4),
            "R5" => Ok(Rule::R5),
            "R6" => Ok(Rule::R6),
            "POW" => Ok(Rule::Pow),
            _ => Err(Error::Invalid(format!("unknown rule {s:?} (R4, R5, R6, POW)"))),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::Pow => "POW",
        };
        f.write_str(s)
    }
}

/// Where to apply a rule: the `term`-th monomial (in display order) and
/// one or two symbol positions within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Site {
    pub term: usize,
    pub first: usize,
    pub second: Option<usize>,
}

impl Site {
    pub fn pair(term: usize, first: usize, second: usize) -> Self {
        Site { term, first, second: Some(second) }
    }

    pub fn single(term: usize, first: usize) -> Self {
        Site { term, first, second: None }
    }
}

/// The site does not match the rule's left-hand side; the input is
/// left unchanged.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("site mismatch: {0}")]
pub struct SiteMismatch(pub String);

fn mismatch(msg: impl Into<String>) -> SiteMismatch {
    SiteMismatch(msg.into())
}

/// Right-hand side of `rule` applied to the given symbols.
pub fn rule_rhs(
    alg: &CharAlgebra,
    rule: Rule,
    s1: &Symbol,
    s2: Option<&Symbol>,
) -> Result<CharPoly, SiteMismatch> {
    match (rule, s1, s2) {
        (Rule::R4, Symbol::Loop(g), Some(Symbol::Loop(h))) => {
            Ok(alg.loop_(&g.mul(h)).add(&alg.loop_(&g.inverse().mul(h))))
        }
        (Rule::R5, Symbol::Loop(g), Some(Symbol::Arc(p, q)))
        | (Rule::R5, Symbol::Arc(p, q), Some(Symbol::Loop(g))) => {
            Ok(alg.arc(&act(g, p), q).add(&alg.arc(&act(&g.inverse(), p), q)))
        }
        (Rule::R6, Symbol::Arc(p, q), Some(Symbol::Arc(p2, q2))) => Ok(alg
            .arc(p, q2)
            .mul(&alg.arc(p2, q))
            .add(&alg.arc(p, p2).mul(&alg.arc(q, q2)))),
        (Rule::Pow, Symbol::Loop(w), None) => match w.primitive_root() {
            Some((u, k)) => Ok(chebyshev(k, &alg.loop_(&u))),
            None => Err(mismatch(format!("loop({w}) is not a proper power"))),
        },
        (Rule::Pow, _, _) => Err(mismatch("POW needs a single loop symbol")),
        (rule, _, _) => Err(mismatch(format!("{rule} does not match the selected symbols"))),
    }
}

/// Apply one rewrite at `site`.
pub fn rewrite_step(
    alg: &CharAlgebra,
    f: &CharPoly,
    rule: Rule,
    site: Site,
) -> Result<CharPoly, SiteMismatch> {
    let (m, c) = f
        .terms()
        .nth(site.term)
        .ok_or_else(|| mismatch(format!("no term #{} (polynomial has {})", site.term, f.len())))?;
    let syms = m.symbols();
    let get = |i: usize| {
        syms.get(i)
            .ok_or_else(|| mismatch(format!("no symbol #{i} in term #{} ({m})", site.term)))
    };
    let s1 = get(site.first)?;
    let s2 = match site.second {
        Some(j) if j == site.first => return Err(mismatch("the two positions coincide")),
        Some(j) => Some(get(j)?),
        None => None,
    };
    let rhs = rule_rhs(alg, rule, s1, s2)?;
    let positions: Vec<usize> = std::iter::once(site.first).chain(site.second).collect();
    let rest = CharPoly::term(m.without(&positions), c.clone());
    Ok(f.sub(&CharPoly::term(m.clone(), c.clone())).add(&rest.mul(&rhs)))
}

/// Contract pairs of loop symbols with R4 until every monomial holds at
/// most one loop symbol. Each step strictly lowers the number of loop
/// symbols in the monomial it touches, so this terminates; POW would raise
/// that count and is never chosen.
pub fn reduce_heuristic(alg: &CharAlgebra, f: &CharPoly) -> CharPoly {
    let mut out = CharPoly::zero();
    let mut work: Vec<(Monomial, BigRational)> =
        f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    while let Some((m, c)) = work.pop() {
        let loops: Vec<usize> = m
            .symbols()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_loop())
            .map(|(i, _)| i)
            .take(2)
            .collect();
        if loops.len() < 2 {
            out.add_term(m, c);
            continue;
        }
        let syms = m.symbols();
        let rhs = rule_rhs(alg, Rule::R4, &syms[loops[0]], Some(&syms[loops[1]]))
            .expect("two loop symbols match R4");
        let rest = CharPoly::term(m.without(&loops), c);
        work.extend(rest.mul(&rhs).terms().map(|(m, c)| (m.clone(), c.clone())));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groupact::{MarkedPoint, Word};
    use crate::oracle::OracleConfig;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn r4_on_a_square() {
        let alg = CharAlgebra::free(2, 0);
        let g = alg.loop_(&w("g1"));
        let f = g.mul(&g);
        let out = rewrite_step(&alg, &f, Rule::R4, Site::pair(0, 0, 1)).unwrap();
        assert_eq!(out, alg.loop_(&w("g1 g1")).add(&CharPoly::int(2)));
        assert_eq!(reduce_heuristic(&alg, &f), out);
    }

    #[test]
    fn r5_and_r6_examples() {
        let alg = CharAlgebra::free(2, 2);
        let g = w("g2");
        let (p, q) = (MarkedPoint::base(1), MarkedPoint::new(w("g1"), 2));
        let f = alg.loop_(&g).mul(&alg.arc(&p, &q));
        let out = rewrite_step(&alg, &f, Rule::R5, Site::pair(0, 0, 1)).unwrap();
        let expected = alg.arc(&act(&g, &p), &q).add(&alg.arc(&act(&g.inverse(), &p), &q));
        assert_eq!(out, expected);

        let (p2, q2) = (MarkedPoint::new(w("g2"), 1), MarkedPoint::new(w("g1 g2"), 2));
        let f = alg.arc(&p, &q).mul(&alg.arc(&p2, &q2));
        let out = rewrite_step(&alg, &f, Rule::R6, Site::pair(0, 0, 1)).unwrap();
        let cfg = OracleConfig::new(16, 11);
        let field = PrimeField::default();
        assert!(alg.equal(&f, &out, &field, &[], &cfg).unwrap().is_equal());
    }

    #[test]
    fn pow_and_mismatches() {
        let alg = CharAlgebra::free(2, 1);
        let f = alg.loop_(&w("g1 g2 g1 g2 g1 g2"));
        let out = rewrite_step(&alg, &f, Rule::Pow, Site::single(0, 0)).unwrap();
        let x = alg.loop_(&w("g1 g2"));
        assert_eq!(out, x.pow(3).sub(&x.scale(&BigRational::from_integer(3.into()))));
        assert!(rewrite_step(&alg, &x, Rule::Pow, Site::single(0, 0)).is_err());
        assert!(rewrite_step(&alg, &x, Rule::R4, Site::pair(0, 0, 1)).is_err());
        assert!(rewrite_step(&alg, &x, Rule::R4, Site::pair(3, 0, 1)).is_err());
        let two = x.mul(&x);
        assert!(rewrite_step(&alg, &two, Rule::R6, Site::pair(0, 0, 1)).is_err());
        assert!(rewrite_step(&alg, &two, Rule::R4, Site::pair(0, 1, 1)).is_err());
    }

    #[test]
    fn reducer_examples() {
        let alg = CharAlgebra::free(2, 1);
        let (g, h) = (w("g1"), w("g2"));
        let f = alg.loop_(&g).mul(&alg.loop_(&h));
        assert_eq!(
            reduce_heuristic(&alg, &f),
            alg.loop_(&g.mul(&h)).add(&alg.loop_(&g.inverse().mul(&h)))
        );
        let single = alg.loop_(&w("g1 g2^-1 g2^-1")).add(&alg.arc(&MarkedPoint::base(1), &MarkedPoint::new(h, 1)));
        assert_eq!(reduce_heuristic(&alg, &single), single);
    }
}
