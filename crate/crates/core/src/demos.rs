//! Worked examples, each run end to end with a printable transcript.

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::charalg::{chebyshev, CharAlgebra, CharPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gen;
use crate::groupact::{MarkedPoint, Presentation, Word};
use crate::linalg2::{omega, sample_sl2, Mat2, Vec2};
use crate::oracle::{OracleConfig, Verdict};
use crate::rep::Rep;
use crate::tracealg::verify_tau_chi;

pub const DEMOS: [&str; 4] = ["gr2n", "z-two-points", "chebyshev", "tau-chi"];

#[derive(Debug, Clone)]
pub struct DemoReport {
    pub name: String,
    pub lines: Vec<String>,
    pub passed: bool,
    pub data: Value,
}

impl DemoReport {
    fn new(name: &str) -> Self {
        DemoReport { name: name.into(), lines: Vec::new(), passed: true, data: json!({}) }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.line(format!("[{}] {what}", if ok { "ok" } else { "FAIL" }));
        self.passed &= ok;
    }

    pub fn to_json(&self) -> Value {
        json!({ "demo": self.name, "passed": self.passed, "transcript": self.lines, "data": self.data })
    }
}

pub fn run_demo<F: Field>(name: &str, field: &F, cfg: &OracleConfig) -> Result<DemoReport> {
    let mut r = match name {
        "gr2n" => gr2n(field, cfg)?,
        "z-two-points" => z_two_points(field, cfg)?,
        "chebyshev" => chebyshev_demo(field, cfg)?,
        "tau-chi" => tau_chi(cfg, 20)?,
        _ => {
            return Err(Error::Invalid(format!(
                "unknown demo {name:?} (available: {})",
                DEMOS.join(", ")
            )))
        }
    };
    r.lines.insert(0, format!("demo {name}: field {}, {} samples, seed {}", field.name(), cfg.samples, cfg.seed));
    Ok(r)
}

fn verdict_line<S, E>(v: &Verdict<S, E>) -> String {
    match v {
        Verdict::Equal { samples, error_bound: Some(b), .. } => {
            format!("equal on {samples} samples (error bound {b:.3e})")
        }
        Verdict::Equal { samples, error_bound: None, .. } => {
            format!("equal on {samples} samples (refutation-only, no bound)")
        }
        Verdict::Unequal { sample, .. } => format!("unequal, witness at sample {sample}"),
    }
}

/// Plücker relation for `Gr(2, 4)`: no generators, four decorated points.
pub fn gr2n<F: Field>(field: &F, cfg: &OracleConfig) -> Result<DemoReport> {
    let mut r = DemoReport::new("gr2n");
    let alg = CharAlgebra::free(0, 4);
    let p: Vec<MarkedPoint> = (1..=4).map(MarkedPoint::base).collect();
    let v = |x: i64, y: i64| Vec2::new(field.from_i64(x), field.from_i64(y));
    let vecs = vec![v(1, 0), v(0, 1), v(1, 1), v(1, 2)];
    let rep = Rep::new(Vec::new(), vecs.clone());
    let rel = alg.r6(&p[0], &p[1], &p[2], &p[3]);
    let w = |i: usize, j: usize| omega(&vecs[i], &vecs[j]);
    let (l, r1, r2) = (w(0, 1) * w(2, 3), w(0, 3) * w(2, 1), w(0, 2) * w(1, 3));
    r.line("vectors v1=(1,0) v2=(0,1) v3=(1,1) v4=(1,2)");
    r.line(format!(
        "[1,2][3,4] = [1,4][3,2] + [1,3][2,4]:  {}·{} = {}·{} + {}·{}",
        w(0, 1), w(2, 3), w(0, 3), w(2, 1), w(0, 2), w(1, 3)
    ));
    let direct = l.clone() == r1.clone() + r2.clone();
    r.check(direct, format!("{l} = {r1} + {r2} by direct determinants"));
    let sym = rel.sum().eval(field, &rep)?;
    r.check(field.is_zero(&sym), "R6 evaluates to 0 on the stated vectors");
    let v = alg.equal(&rel.terms[0], &rel.sides().1, field, &[], cfg)?;
    r.check(v.is_equal(), format!("Plücker relation on random decorations: {}", verdict_line(&v)));
    r.data = json!({ "lhs": l.to_string(), "rhs": [r1.to_string(), r2.to_string()] });
    Ok(r)
}

/// `G = ℤ` acting trivially on two points `a, b`.
pub fn z_two_points_presentation() -> Presentation {
    let t = Word::gen(1);
    Presentation::new(1, vec![], 2, vec![vec![t.clone()], vec![t]]).expect("valid")
}

/// Family 1: `ρ(t) = Id`, arbitrary decorations. Family 2: decorations
/// linearly dependent (both zero with generic `ρ(t)`, or on the fixed
/// line of a unipotent `ρ(t)`).
pub fn z_two_points_family<F: Field>(
    field: &F,
    family: u8,
    rng: &mut ChaCha8Rng,
) -> Result<Rep<F::Elem>> {
    Ok(match family {
        1 => Rep::new(
            vec![Mat2::identity(field)],
            vec![Vec2::random(field, rng), Vec2::random(field, rng)],
        ),
        _ => {
            if rng.gen_bool(0.5) {
                Rep::new(vec![sample_sl2(field, rng)?], vec![Vec2::zero(field); 2])
            } else {
                let (x, a, b) = (field.random(rng), field.random(rng), field.random(rng));
                let u = Mat2::new(field.one(), x, field.zero(), field.one());
                Rep::new(vec![u], vec![Vec2::new(a, field.zero()), Vec2::new(b, field.zero())])
            }
        }
    })
}

pub fn z_two_points<F: Field>(field: &F, cfg: &OracleConfig) -> Result<DemoReport> {
    let mut r = DemoReport::new("z-two-points");
    let pres = z_two_points_presentation();
    let alg = CharAlgebra::new(pres.clone());
    let t = alg.loop_(&Word::gen(1));
    let ab = alg.arc(&MarkedPoint::base(1), &MarkedPoint::base(2));
    let derived = t.sub(&CharPoly::int(2)).mul(&ab);
    let variant = t.add(&CharPoly::int(2)).mul(&ab);
    r.line("G = Z = <t> fixing both points a = p1 and b = p2");
    let mut all_ok = true;
    let mut per_family = Vec::new();
    for family in [1u8, 2] {
        let lib_cfg = cfg.derived(family as u64);
        let library = (0..cfg.samples.max(1))
            .map(|i| z_two_points_family(field, family, &mut lib_cfg.rng(i)))
            .collect::<Result<Vec<_>>>()?;
        let valid = library.iter().all(|rep| rep.validate(field, &pres).is_valid());
        r.check(valid, format!("family {family}: {} representations satisfy the stabilizer condition", library.len()));
        let v = alg.equal(&derived, &CharPoly::zero(), field, &library, cfg)?;
        r.check(v.is_equal(), format!("family {family}: (chi_t - 2)*chi_(a,b) = 0: {}", verdict_line(&v)));
        let vp = alg.equal(&variant, &CharPoly::zero(), field, &library, cfg)?;
        r.line(format!("family {family}: sign variant (chi_t + 2)*chi_(a,b) = 0: {}", verdict_line(&vp)));
        all_ok &= v.is_equal();
        per_family.push(json!({ "family": family, "derived_equal": v.is_equal(), "variant_equal": vp.is_equal() }));
    }
    let variant_fails = per_family.iter().any(|f| f["variant_equal"] == json!(false));
    r.check(
        all_ok && variant_fails,
        "sign discrepancy flagged: the relation holds with -2, the +2 variant is refuted",
    );
    r.data = json!({ "families": per_family, "sign_variant_flagged": variant_fails });
    Ok(r)
}

/// `2Tᵢ(y)` with `y = x/2`, from the classical recurrence
/// `T₀ = 1, T₁ = y, Tᵢ₊₁ = 2yTᵢ − Tᵢ₋₁`.
fn twice_chebyshev_t(i: usize, x: &CharPoly) -> CharPoly {
    let half = BigRational::new(1.into(), 2.into());
    let y = x.scale(&half);
    let two = BigRational::from_integer(2.into());
    let (mut prev, mut cur) = (CharPoly::constant(BigRational::one()), y.clone());
    if i == 0 {
        return prev.scale(&two);
    }
    for _ in 1..i {
        let next = y.scale(&two).mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur.scale(&two)
}

pub fn chebyshev_demo<F: Field>(field: &F, cfg: &OracleConfig) -> Result<DemoReport> {
    let mut r = DemoReport::new("chebyshev");
    let alg = CharAlgebra::free(2, 0);
    let g = Word::parse("g1 g2^-1").expect("word");
    let x = alg.loop_(&g);
    let mut polys = Vec::new();
    for i in 0..=8 {
        let c = chebyshev(i, &x);
        let t = twice_chebyshev_t(i, &x);
        let same = c == t;
        let v = alg.equal(&alg.loop_(&g.pow(i as i64)), &c, field, &[], cfg)?;
        r.check(
            same && v.is_equal(),
            format!("i={i}: chi_(g^{i}) = {c}   [{}]", verdict_line(&v)),
        );
        polys.push(c.to_string());
    }
    r.data = json!({ "word": g.to_string(), "polynomials": polys });
    Ok(r)
}

/// `τχ = 2·id` on random monomials of degree ≤ 3 and word length ≤ 4.
pub fn tau_chi(cfg: &OracleConfig, count: usize) -> Result<DemoReport> {
    let mut r = DemoReport::new("tau-chi");
    let alg = CharAlgebra::free(2, 2);
    let mut rng = cfg.derived(0x7a).rng(0);
    let mut holds = 0;
    for _ in 0..count {
        let d = rng.gen_range(1..=3);
        let m = gen::monomial(&mut rng, &alg, d, 4);
        let f = CharPoly::term(m, BigRational::one());
        let check = verify_tau_chi(&alg, &f);
        let terms = check.tau_chi.len();
        r.line(format!(
            "{} {f}: tau(chi) has {terms} terms, certificate has {} terms",
            if check.holds { "ok  " } else { "FAIL" },
            check.certificate.len()
        ));
        holds += check.holds as usize;
    }
    r.check(holds == count, format!("tau(chi(m)) = 2m modulo relations for {holds}/{count} monomials"));
    r.data = json!({ "checked": count, "holds": holds });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn chebyshev_recurrences_agree() {
        let alg = CharAlgebra::free(1, 0);
        let x = alg.loop_(&Word::gen(1));
        for i in 0..=8 {
            assert_eq!(chebyshev(i, &x), twice_chebyshev_t(i, &x), "i = {i}");
        }
    }

    #[test]
    fn unknown_demo() {
        let f = PrimeField::default();
        assert!(run_demo("nope", &f, &OracleConfig::default()).is_err());
    }
}
