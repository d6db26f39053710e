//! Twisted characters of a central extension `G′ = G × ⟨z₁,…,z_r⟩` with a
//! sign character `s`: representations send each `z_i` to `s(z_i)·Id`.
//!
//! Words over `G′` use indices `1..=m` for the base generators and
//! `m+i` for `z_i`.

use num_rational::BigRational;
use rand::Rng;
use serde::Deserialize;

use crate::charalg::{CharAlgebra, CharPoly, Symbol};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groupact::{default_generator_name, GenSym, MarkedPoint, Presentation, Word};
use crate::linalg2::Mat2;
use crate::oracle::{self, OracleConfig, Verdict};
use crate::rep::{sample_rep, Rep};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct CentralGen {
    pub name: String,
    /// `z^order = e`; `None` or `0` for infinite order.
    #[serde(default)]
    pub order: Option<u32>,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralExtSpec {
    pub base: Presentation,
    pub central: Vec<CentralGen>,
}

#[derive(Deserialize)]
struct ExtFile {
    central: Vec<CentralGen>,
}

impl CentralExtSpec {
    pub fn new(base: Presentation, central: Vec<CentralGen>) -> Result<Self> {
        if !base.is_free() {
            return Err(Error::Unsupported("twisted characters need a free base presentation".into()));
        }
        for (i, z) in central.iter().enumerate() {
            if z.sign != 1 && z.sign != -1 {
                return Err(Error::Invalid(format!("sign of {} must be ±1", z.name)));
            }
            if let Some(k) = z.order.filter(|&k| k > 0) {
                if z.sign == -1 && k % 2 == 1 {
                    return Err(Error::Invalid(format!(
                        "{}^{k} = e is incompatible with s({}) = −1",
                        z.name, z.name
                    )));
                }
            }
            if default_generator_name(&z.name).is_some()
                || central[..i].iter().any(|o| o.name == z.name)
            {
                return Err(Error::Invalid(format!("central generator name {:?} is taken", z.name)));
            }
        }
        Ok(CentralExtSpec { base, central })
    }

    pub fn from_json(base: Presentation, s: &str) -> Result<Self> {
        let file: ExtFile = serde_json::from_str(s)?;
        CentralExtSpec::new(base, file.central)
    }

    fn m(&self) -> u32 {
        self.base.generators
    }

    fn central_index(&self, g: GenSym) -> Option<usize> {
        (g.index > self.m()).then(|| (g.index - self.m() - 1) as usize)
    }

    /// `gK` for base generators, declared names for central ones.
    pub fn generator(&self, name: &str) -> Option<u32> {
        if let Some(k) = default_generator_name(name) {
            return (k <= self.m()).then_some(k);
        }
        let i = self.central.iter().position(|z| z.name == name)?;
        Some(self.m() + 1 + i as u32)
    }

    pub fn parse_word(&self, s: &str) -> std::result::Result<Word, crate::error::ParseError> {
        Word::parse_with(s, 0, &|n| self.generator(n))
    }

    /// `G′` as a presentation: base generators, central letters, the order
    /// relators and the commutators making them central.
    pub fn extended_presentation(&self) -> Presentation {
        let m = self.m();
        let r = self.central.len() as u32;
        let mut relators = Vec::new();
        for (i, z) in self.central.iter().enumerate() {
            let zi = Word::gen(m + 1 + i as u32);
            if let Some(k) = z.order.filter(|&k| k > 0) {
                relators.push(zi.pow(k as i64));
            }
            for j in 1..=m + r {
                if j != m + 1 + i as u32 {
                    let g = Word::gen(j);
                    relators.push(zi.mul(&g).mul(&zi.inverse()).mul(&g.inverse()));
                }
            }
        }
        Presentation::new(m + r, relators, self.base.orbits, vec![])
            .expect("extension relators are well formed")
    }

    /// Strip central letters from `w`, returning the base word and the
    /// product of their signs.
    pub fn split_word(&self, w: &Word) -> (Word, i8) {
        let mut sign = 1i8;
        let base = Word::from_letters(w.letters().iter().copied().filter(|&g| {
            match self.central_index(g) {
                Some(i) => {
                    sign *= self.central[i].sign;
                    false
                }
                None => true,
            }
        }));
        (base, sign)
    }

    /// Replace every central letter by its sign, in loops and in arc
    /// prefixes, producing a polynomial over the base algebra.
    pub fn twist_normalize(&self, base: &CharAlgebra, f: &CharPoly) -> CharPoly {
        let mut out = CharPoly::zero();
        for (mono, c) in f.terms() {
            let mut t = CharPoly::constant(c.clone());
            for s in mono.symbols() {
                let (sym, sign) = match s {
                    Symbol::Loop(w) => {
                        let (b, sg) = self.split_word(w);
                        (base.loop_(&b), sg)
                    }
                    Symbol::Arc(p, q) => {
                        let (bp, sp) = self.split_word(&p.prefix);
                        let (bq, sq) = self.split_word(&q.prefix);
                        let arc = base.arc(
                            &MarkedPoint::new(bp, p.orbit),
                            &MarkedPoint::new(bq, q.orbit),
                        );
                        (arc, sp * sq)
                    }
                };
                t = t.mul(&sym).scale(&BigRational::from_integer(sign.into()));
            }
            out = out.add(&t);
        }
        out
    }

    /// A representation of `G′` sending `z_i ↦ s(z_i)·Id`. The base part
    /// consumes the random source exactly as [`sample_rep`] does.
    pub fn sample_twisted_rep<F: Field, R: Rng + ?Sized>(
        &self,
        f: &F,
        rng: &mut R,
    ) -> Result<Rep<F::Elem>> {
        let mut rep = sample_rep(f, &self.base, &[], rng)?;
        for z in &self.central {
            rep.matrices.push(Mat2::scalar(f.from_i64(z.sign as i64), f));
        }
        Ok(rep)
    }

    /// Oracle equality over twisted representations. Both sides are
    /// polynomials over `G′` (stored verbatim).
    pub fn equal<F: Field>(
        &self,
        f: &CharPoly,
        h: &CharPoly,
        field: &F,
        cfg: &OracleConfig,
    ) -> Result<Verdict<Rep<F::Elem>, F::Elem>> {
        let ext = CharAlgebra::new(self.extended_presentation());
        ext.check(f)?;
        ext.check(h)?;
        let degree = 2 * f.degree().max(h.degree()).max(1);
        let bound = oracle::sz_bound(cfg.samples, degree, field.sample_set_size());
        oracle::compare(
            cfg,
            degree,
            Some(bound),
            |_, rng| self.sample_twisted_rep(field, rng),
            |rep| Ok((vec![f.eval(field, rep)?], vec![h.eval(field, rep)?])),
        )
    }

    /// `[z·g] − s(z)[g]` as a pair over `G′`.
    pub fn loop_kernel(&self, ext: &CharAlgebra, z: usize, g: &Word) -> (CharPoly, CharPoly) {
        let zw = Word::gen(self.m() + 1 + z as u32);
        let s = BigRational::from_integer(self.central[z].sign.into());
        (ext.loop_(&zw.mul(g)), ext.loop_(g).scale(&s))
    }

    /// `[z·p, q] − s(z)[p, q]` as a pair over `G′`.
    pub fn arc_kernel(
        &self,
        ext: &CharAlgebra,
        z: usize,
        p: &MarkedPoint,
        q: &MarkedPoint,
    ) -> (CharPoly, CharPoly) {
        let zw = Word::gen(self.m() + 1 + z as u32);
        let s = BigRational::from_integer(self.central[z].sign.into());
        (ext.arc(&crate::groupact::act(&zw, p), q), ext.arc(p, q).scale(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn spec(sign: i8) -> CentralExtSpec {
        CentralExtSpec::from_json(
            Presentation::free(2, 2),
            &format!(r#"{{"central": [{{"name": "z", "order": 2, "sign": {sign}}}]}}"#),
        )
        .unwrap()
    }

    #[test]
    fn normalize_examples() {
        let s = spec(-1);
        let base = CharAlgebra::new(s.base.clone());
        let ext = CharAlgebra::new(s.extended_presentation());
        let w = |t: &str| s.parse_word(t).unwrap();
        let f = ext.loop_(&w("z g1"));
        assert_eq!(s.twist_normalize(&base, &f), base.loop_(&w("g1")).neg());
        let (p, q) = (MarkedPoint::new(w("z g2"), 1), MarkedPoint::base(2));
        let expected = base.arc(&MarkedPoint::new(w("g2"), 1), &q).neg();
        assert_eq!(s.twist_normalize(&base, &ext.arc(&p, &q)), expected);
        assert_eq!(
            s.twist_normalize(&base, &ext.loop_(&w("z z g1"))),
            base.loop_(&w("g1"))
        );
    }

    #[test]
    fn twisted_reps_and_validation() {
        let f = PrimeField::default();
        let s = spec(-1);
        let mut rng = OracleConfig::new(1, 5).rng(0);
        let rep = s.sample_twisted_rep(&f, &mut rng).unwrap();
        assert_eq!(rep.matrices[2], Mat2::scalar(f.from_i64(-1), &f));
        assert!(rep.validate(&f, &s.extended_presentation()).is_valid());
        let bad = CentralExtSpec::from_json(
            Presentation::free(1, 0),
            r#"{"central": [{"name": "z", "order": 3, "sign": -1}]}"#,
        );
        assert!(bad.is_err());
    }
}
