//! Concrete representations (G, M) → (SL₂, V): validation, sampling and
//! evaluation of elementary characters.

use std::fmt;

use num_rational::BigRational;
use rand::Rng;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Rationals};
use crate::groupact::{MarkedPoint, Presentation, Word};
use crate::linalg2::{omega, sample_sl2, Mat2, Vec2};

/// Generator matrices and orbit decorations. The presentation is passed to
/// the operations that need it rather than stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep<E> {
    pub matrices: Vec<Mat2<E>>,
    pub decorations: Vec<Vec2<E>>,
}

/// One violated defining relation of the representation scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape { expected: (usize, usize), found: (usize, usize) },
    Determinant { generator: u32 },
    Relator { index: usize, word: Word },
    Stabilizer { orbit: u32, word: Word },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { expected, found } => write!(
                f,
                "expected {} matrices and {} decorations, found {} and {}",
                expected.0, expected.1, found.0, found.1
            ),
            Violation::Determinant { generator } => write!(f, "det(g{generator}) != 1"),
            Violation::Relator { index, word } => {
                write!(f, "relator #{} ({word}) does not evaluate to Id", index + 1)
            }
            Violation::Stabilizer { orbit, word } => {
                write!(f, "stabilizer {word} of orbit p{orbit} moves its decoration")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<E: crate::field::Scalar> Rep<E> {
    pub fn new(matrices: Vec<Mat2<E>>, decorations: Vec<Vec2<E>>) -> Self {
        Rep { matrices, decorations }
    }

    fn matrix(&self, index: u32) -> Result<&Mat2<E>> {
        self.matrices.get(index as usize - 1).ok_or_else(|| {
            Error::Dimension(format!(
                "g{index} used but representation has {} matrices",
                self.matrices.len()
            ))
        })
    }

    /// Product of generator matrices along `w`; inverse letters use the
    /// adjoint, which is the inverse on SL₂.
    pub fn eval_word<F: Field<Elem = E>>(&self, f: &F, w: &Word) -> Result<Mat2<E>> {
        let mut acc: Option<Mat2<E>> = None;
        for s in w.letters() {
            let m = self.matrix(s.index)?;
            let m = if s.inverse { m.iota() } else { m.clone() };
            acc = Some(match acc {
                None => m,
                Some(a) => a.mul(&m),
            });
        }
        Ok(acc.unwrap_or_else(|| Mat2::identity(f)))
    }

    pub fn point<F: Field<Elem = E>>(&self, f: &F, p: &MarkedPoint) -> Result<Vec2<E>> {
        let d = self.decorations.get(p.orbit as usize - 1).ok_or_else(|| {
            Error::Dimension(format!(
                "orbit p{} used but representation has {} decorations",
                p.orbit,
                self.decorations.len()
            ))
        })?;
        Ok(self.eval_word(f, &p.prefix)?.apply(d))
    }

    pub fn chi_loop<F: Field<Elem = E>>(&self, f: &F, w: &Word) -> Result<E> {
        Ok(self.eval_word(f, w)?.trace())
    }

    pub fn chi_arc<F: Field<Elem = E>>(&self, f: &F, p: &MarkedPoint, q: &MarkedPoint) -> Result<E> {
        Ok(omega(&self.point(f, p)?, &self.point(f, q)?))
    }

    /// Checks determinants, relators and stabilizer conditions.
    pub fn validate<F: Field<Elem = E>>(&self, f: &F, pres: &Presentation) -> ValidationReport {
        let mut violations = Vec::new();
        let expected = (pres.generators as usize, pres.orbits as usize);
        let found = (self.matrices.len(), self.decorations.len());
        if expected != found {
            violations.push(Violation::Shape { expected, found });
            return ValidationReport { violations };
        }
        for (i, m) in self.matrices.iter().enumerate() {
            if !m.is_sl2(f) {
                violations.push(Violation::Determinant { generator: i as u32 + 1 });
            }
        }
        let id = Mat2::identity(f);
        for (index, r) in pres.relators.iter().enumerate() {
            if self.eval_word(f, r).map_or(true, |m| m != id) {
                violations.push(Violation::Relator { index, word: r.clone() });
            }
        }
        for (j, stab) in pres.stabilizers.iter().enumerate() {
            let d = &self.decorations[j];
            for s in stab {
                if self.eval_word(f, s).map_or(true, |m| m.apply(d) != *d) {
                    violations.push(Violation::Stabilizer { orbit: j as u32 + 1, word: s.clone() });
                }
            }
        }
        ValidationReport { violations }
    }

    /// `a·ρ`: matrices conjugated by `a`, decorations translated by `a`.
    /// `a` must lie in SL₂.
    pub fn conjugate(&self, a: &Mat2<E>) -> Rep<E> {
        let ai = a.iota();
        Rep {
            matrices: self.matrices.iter().map(|m| a.mul(m).mul(&ai)).collect(),
            decorations: self.decorations.iter().map(|d| a.apply(d)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &E| Value::String(x.to_string());
        serde_json::json!({
            "matrices": self.matrices.iter()
                .map(|m| vec![vec![s(&m.a), s(&m.b)], vec![s(&m.c), s(&m.d)]])
                .collect::<Vec<_>>(),
            "decorations": self.decorations.iter()
                .map(|d| vec![s(&d.x), s(&d.y)])
                .collect::<Vec<_>>(),
        })
    }
}

impl Rep<BigRational> {
    /// Re-embed rational entries into another field.
    pub fn to_field<F: Field>(&self, f: &F) -> Result<Rep<F::Elem>> {
        let m = |m: &Mat2<BigRational>| -> Result<Mat2<F::Elem>> {
            Ok(Mat2::new(
                f.from_rational(&m.a)?,
                f.from_rational(&m.b)?,
                f.from_rational(&m.c)?,
                f.from_rational(&m.d)?,
            ))
        };
        let v = |v: &Vec2<BigRational>| -> Result<Vec2<F::Elem>> {
            Ok(Vec2::new(f.from_rational(&v.x)?, f.from_rational(&v.y)?))
        };
        Ok(Rep {
            matrices: self.matrices.iter().map(m).collect::<Result<_>>()?,
            decorations: self.decorations.iter().map(v).collect::<Result<_>>()?,
        })
    }
}

/// Free presentations: independent SL₂ samples and uniform decorations.
/// Otherwise a uniform draw from `library`.
pub fn sample_rep<F: Field, R: Rng + ?Sized>(
    f: &F,
    pres: &Presentation,
    library: &[Rep<F::Elem>],
    rng: &mut R,
) -> Result<Rep<F::Elem>> {
    if pres.is_free() {
        let matrices = (0..pres.generators)
            .map(|_| sample_sl2(f, rng))
            .collect::<Result<Vec<_>>>()?;
        let decorations = (0..pres.orbits).map(|_| Vec2::random(f, rng)).collect();
        return Ok(Rep { matrices, decorations });
    }
    if library.is_empty() {
        return Err(Error::Unsupported(
            "non-free presentation without provided representations".into(),
        ));
    }
    Ok(library[rng.gen_range(0..library.len())].clone())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RepFileShape {
    One(RepFile),
    Many(Vec<RepFile>),
}

#[derive(Deserialize)]
struct RepFile {
    matrices: Vec<[[Value; 2]; 2]>,
    #[serde(default)]
    decorations: Vec<[Value; 2]>,
}

fn scalar(v: &Value) -> Result<BigRational> {
    let q = Rationals::default();
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(q.from_i64(i)),
            None => parse_rational(&n.to_string()),
        },
        Value::String(s) => parse_rational(s),
        other => Err(Error::Invalid(format!("expected a scalar, found {other}"))),
    }
}

impl RepFile {
    fn into_rep(self) -> Result<Rep<BigRational>> {
        let matrices = self
            .matrices
            .iter()
            .map(|[[a, b], [c, d]]| Ok(Mat2::new(scalar(a)?, scalar(b)?, scalar(c)?, scalar(d)?)))
            .collect::<Result<_>>()?;
        let decorations = self
            .decorations
            .iter()
            .map(|[x, y]| Ok(Vec2::new(scalar(x)?, scalar(y)?)))
            .collect::<Result<_>>()?;
        Ok(Rep { matrices, decorations })
    }
}

/// Parse a representation file: one object or an array of objects.
pub fn parse_rep_library(s: &str) -> Result<Vec<Rep<BigRational>>> {
    match serde_json::from_str::<RepFileShape>(s)? {
        RepFileShape::One(r) => Ok(vec![r.into_rep()?]),
        RepFileShape::Many(rs) => rs.into_iter().map(RepFile::into_rep).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn z_two_points() -> Presentation {
        Presentation::new(1, vec![], 2, vec![vec![w("g1")], vec![w("g1")]]).unwrap()
    }

    #[test]
    fn free_samples_validate() {
        let f = PrimeField::default();
        let pres = Presentation::free(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = sample_rep(&f, &pres, &[], &mut rng).unwrap();
        assert!(r.validate(&f, &pres).is_valid());
        let again = sample_rep(&f, &pres, &[], &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn stabilizer_violation_is_reported() {
        let q = Rationals::default();
        let lib = parse_rep_library(
            r#"{"matrices": [[[1,1],[0,1]]], "decorations": [[1,0],[0,1]]}"#,
        )
        .unwrap();
        let report = lib[0].validate(&q, &z_two_points());
        assert_eq!(
            report.violations,
            vec![Violation::Stabilizer { orbit: 2, word: w("g1") }]
        );
        let ok = parse_rep_library(
            r#"[{"matrices": [[[1,0],[0,1]]], "decorations": [["3/2",7],[0,"-1/5"]]}]"#,
        )
        .unwrap();
        assert!(ok[0].validate(&q, &z_two_points()).is_valid());
    }

    #[test]
    fn non_free_needs_library() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            sample_rep(&f, &z_two_points(), &[], &mut rng),
            Err(Error::Unsupported(_))
        ));
        let lib = parse_rep_library(r#"{"matrices": [[[1,0],[0,1]]], "decorations": [[1,2],[3,4]]}"#)
            .unwrap()[0]
            .to_field(&f)
            .unwrap();
        let r = sample_rep(&f, &z_two_points(), std::slice::from_ref(&lib), &mut rng).unwrap();
        assert_eq!(r, lib);
    }

    #[test]
    fn elementary_characters() {
        let f = PrimeField::default();
        let pres = Presentation::free(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = sample_rep(&f, &pres, &[], &mut rng).unwrap();
        let p = MarkedPoint::new(w("g1 g2"), 1);
        let q = MarkedPoint::new(w("g2^-1"), 2);
        assert_eq!(r.chi_loop(&f, &Word::identity()).unwrap(), f.from_i64(2));
        assert_eq!(r.chi_arc(&f, &p, &p).unwrap(), f.zero());
        assert_eq!(r.chi_arc(&f, &p, &q).unwrap(), -r.chi_arc(&f, &q, &p).unwrap());
        let x = w("g1 g2 g1^-1");
        assert!(r.eval_word(&f, &x.mul(&x.inverse())).unwrap() == Mat2::identity(&f));
        let a = sample_sl2(&f, &mut rng).unwrap();
        let ra = r.conjugate(&a);
        assert_eq!(ra.chi_loop(&f, &x).unwrap(), r.chi_loop(&f, &x).unwrap());
        assert_eq!(ra.chi_arc(&f, &p, &q).unwrap(), r.chi_arc(&f, &p, &q).unwrap());
    }

    #[test]
    fn out_of_range_is_an_error() {
        let f = PrimeField::default();
        let r: Rep<_> = Rep::new(vec![Mat2::identity(&f)], vec![]);
        assert!(r.eval_word(&f, &w("g2")).is_err());
        assert!(r.point(&f, &MarkedPoint::base(1)).is_err());
        let report = r.validate(&f, &Presentation::free(2, 0));
        assert!(matches!(report.violations[0], Violation::Shape { .. }));
    }
}
