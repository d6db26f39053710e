//! Oriented loops and arcs on marked surfaces, their characters, and the
//! seven graphical rules as identities of character polynomials.
//!
//! Curves are homotopy data: a loop is a word in π₁, an arc is a pair of
//! lifted endpoints. A smoothing site is given as an explicit factorization
//! of the words involved (see [`Site`]).

use rand::Rng;
use serde::Deserialize;

use crate::charalg::{CharAlgebra, CharPoly};
use crate::error::{Error, ParseError, Result};
use crate::gen;
use crate::groupact::{act, MarkedPoint, Presentation, Word};

/// A surface of genus `genus` with `boundary` boundary components and
/// `marked` contractible marked regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub boundary: u32,
    pub marked: u32,
}

impl SurfaceSpec {
    pub fn new(genus: u32, boundary: u32, marked: u32) -> Self {
        SurfaceSpec { genus, boundary, marked }
    }

    /// Rank of π₁: `2g + b − 1` with boundary, `2g` for closed surfaces.
    pub fn rank(&self) -> u32 {
        2 * self.genus + self.boundary.saturating_sub(1)
    }

    pub fn is_free(&self) -> bool {
        self.boundary >= 1
    }

    /// Free for surfaces with boundary; closed surfaces carry the single
    /// relator `[a1,b1]⋯[ag,bg]`.
    pub fn presentation(&self) -> Presentation {
        if self.is_free() {
            return Presentation::free(self.rank(), self.marked);
        }
        let mut rel = Word::identity();
        for i in 0..self.genus {
            let (a, b) = (Word::gen(2 * i + 1), Word::gen(2 * i + 2));
            rel = rel.mul(&a).mul(&b).mul(&a.inverse()).mul(&b.inverse());
        }
        let relators = if rel.is_identity() { vec![] } else { vec![rel] };
        Presentation::new(self.rank(), relators, self.marked, vec![])
            .expect("surface relator is well formed")
    }

    pub fn algebra(&self) -> CharAlgebra {
        CharAlgebra::new(self.presentation())
    }

    /// `a_i ↦ 2i−1`, `b_i ↦ 2i`, `c_k ↦ 2g+k` (boundary loops, `k < b`).
    /// The internal names `gK` are accepted as well.
    pub fn generator(&self, name: &str) -> Option<u32> {
        if let Some(k) = crate::groupact::default_generator_name(name) {
            return (k <= self.rank()).then_some(k);
        }
        let (kind, k) = name.split_at(1);
        let k: u32 = k.parse().ok().filter(|&k| k >= 1)?;
        match kind {
            "a" if k <= self.genus => Some(2 * k - 1),
            "b" if k <= self.genus => Some(2 * k),
            "c" if k < self.boundary => Some(2 * self.genus + k),
            _ => None,
        }
    }

    pub fn parse_word(&self, s: &str) -> std::result::Result<Word, ParseError> {
        Word::parse_with(s, 0, &|n| self.generator(n))
    }

    fn check_point(&self, p: &MarkedPoint) -> Result<()> {
        if p.orbit == 0 || p.orbit > self.marked {
            return Err(Error::Invalid(format!(
                "marked region {} does not exist (surface has {})",
                p.orbit, self.marked
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveSpec {
    Loop(Word),
    /// An arc from a lift of its source to a lift of its target.
    Arc(MarkedPoint, MarkedPoint),
}

impl CurveSpec {
    pub fn reversed(&self) -> CurveSpec {
        match self {
            CurveSpec::Loop(w) => CurveSpec::Loop(w.inverse()),
            CurveSpec::Arc(p, q) => CurveSpec::Arc(q.clone(), p.clone()),
        }
    }
}

/// The character of a single curve.
pub fn curve_char(surface: &SurfaceSpec, alg: &CharAlgebra, c: &CurveSpec) -> Result<CharPoly> {
    match c {
        CurveSpec::Loop(w) => Ok(alg.loop_(w)),
        CurveSpec::Arc(p, q) => {
            surface.check_point(p)?;
            surface.check_point(q)?;
            Ok(alg.arc(p, q))
        }
    }
}

/// The character of a collection: the product over its curves.
pub fn to_char(surface: &SurfaceSpec, alg: &CharAlgebra, curves: &[CurveSpec]) -> Result<CharPoly> {
    curves
        .iter()
        .try_fold(CharPoly::int(1), |acc, c| Ok(acc.mul(&curve_char(surface, alg, c)?)))
}

/// A loop presented at a site: the curve is `Loop(word)`; cutting it at
/// `cut` and conjugating by `path` moves the crossing to the basepoint,
/// giving `g = path · rotate(word, cut) · path⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopAtSite {
    pub word: Word,
    pub cut: usize,
    pub path: Word,
}

impl LoopAtSite {
    pub fn curve(&self) -> CurveSpec {
        CurveSpec::Loop(self.word.clone())
    }

    pub fn based(&self) -> Word {
        self.path.mul(&self.word.rotate(self.cut)).mul(&self.path.inverse())
    }
}

/// Data for one application of a graphical rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Site {
    /// Rule 1: a loop whose word `u·u⁻¹` is null-homotopic.
    ContractibleLoop { u: Word },
    /// Rule 2: an arc from `p` back to the same lift, travelling along `u`
    /// and back.
    ContractibleArc { p: MarkedPoint, u: Word },
    /// Rule 3.
    LoopReversal { g: Word },
    /// Rule 4.
    ArcReversal { p: MarkedPoint, q: MarkedPoint },
    /// Rule 5: two loops crossing once.
    LoopLoop { first: LoopAtSite, second: LoopAtSite },
    /// Rule 6: a loop crossing the arc `(p, q)`.
    LoopArc { lp: LoopAtSite, p: MarkedPoint, q: MarkedPoint },
    /// Rule 7: arcs `(p, q)` and `(p2, q2)`; the second is compared in the
    /// lift translated by `shift`.
    ArcArc { p: MarkedPoint, q: MarkedPoint, p2: MarkedPoint, q2: MarkedPoint, shift: Word },
}

impl Site {
    pub fn rule(&self) -> u8 {
        match self {
            Site::ContractibleLoop { .. } => 1,
            Site::ContractibleArc { .. } => 2,
            Site::LoopReversal { .. } => 3,
            Site::ArcReversal { .. } => 4,
            Site::LoopLoop { .. } => 5,
            Site::LoopArc { .. } => 6,
            Site::ArcArc { .. } => 7,
        }
    }

    /// The curves before the rule is applied.
    pub fn curves(&self) -> Vec<CurveSpec> {
        match self {
            Site::ContractibleLoop { u } => {
                vec![CurveSpec::Loop(Word::from_letters(
                    u.letters().iter().chain(u.inverse().letters()).copied(),
                ))]
            }
            Site::ContractibleArc { p, u } => {
                let back = act(&u.inverse(), &act(u, p));
                vec![CurveSpec::Arc(p.clone(), back)]
            }
            Site::LoopReversal { g } => vec![CurveSpec::Loop(g.clone())],
            Site::ArcReversal { p, q } => vec![CurveSpec::Arc(p.clone(), q.clone())],
            Site::LoopLoop { first, second } => vec![first.curve(), second.curve()],
            Site::LoopArc { lp, p, q } => vec![lp.curve(), CurveSpec::Arc(p.clone(), q.clone())],
            Site::ArcArc { p, q, p2, q2, .. } => vec![
                CurveSpec::Arc(p.clone(), q.clone()),
                CurveSpec::Arc(p2.clone(), q2.clone()),
            ],
        }
    }
}

/// `(LHS, RHS)` of the rule at `site`: the character of the curves, and
/// the character after the local move.
pub fn graphical_rule(
    surface: &SurfaceSpec,
    alg: &CharAlgebra,
    site: &Site,
) -> Result<(CharPoly, CharPoly)> {
    let lhs = to_char(surface, alg, &site.curves())?;
    let rhs = match site {
        Site::ContractibleLoop { .. } => CharPoly::int(2),
        Site::ContractibleArc { .. } => CharPoly::zero(),
        Site::LoopReversal { g } => alg.loop_(&g.inverse()),
        Site::ArcReversal { p, q } => alg.arc(q, p).neg(),
        Site::LoopLoop { first, second } => {
            let (g, h) = (first.based(), second.based());
            alg.loop_(&g.mul(&h)).add(&alg.loop_(&g.inverse().mul(&h)))
        }
        Site::LoopArc { lp, p, q } => {
            let g = lp.based();
            alg.arc(&act(&g, p), q).add(&alg.arc(&act(&g.inverse(), p), q))
        }
        Site::ArcArc { p, q, p2, q2, shift } => {
            let (p2, q2) = (act(shift, p2), act(shift, q2));
            alg.arc(p, &q2).mul(&alg.arc(&p2, q)).add(&alg.arc(p, &p2).mul(&alg.arc(q, &q2)))
        }
    };
    Ok((lhs, rhs))
}

/// A random site for `rule` with words of length at most `max_len`.
pub fn random_site<R: Rng + ?Sized>(
    rng: &mut R,
    surface: &SurfaceSpec,
    rule: u8,
    max_len: usize,
) -> Result<Site> {
    let (m, n) = (surface.rank(), surface.marked);
    let need_points = matches!(rule, 2 | 4 | 6 | 7);
    if need_points && n == 0 {
        return Err(Error::Invalid(format!("rule {rule} needs a marked region")));
    }
    let loop_at = |rng: &mut R| {
        let word = gen::nonempty_word(rng, m, max_len);
        let cut = rng.gen_range(0..=word.len());
        LoopAtSite { word, cut, path: gen::word(rng, m, max_len / 2) }
    };
    Ok(match rule {
        1 => Site::ContractibleLoop { u: gen::word(rng, m, max_len) },
        2 => Site::ContractibleArc {
            p: gen::point(rng, m, n, max_len),
            u: gen::word(rng, m, max_len),
        },
        3 => Site::LoopReversal { g: gen::nonempty_word(rng, m, max_len) },
        4 => {
            let k = if m == 0 { 2.min(n as usize) } else { 2 };
            let pts = gen::distinct_points(rng, m, n, max_len, k);
            Site::ArcReversal { p: pts[0].clone(), q: pts[k - 1].clone() }
        }
        5 => Site::LoopLoop { first: loop_at(rng), second: loop_at(rng) },
        6 => {
            let lp = loop_at(rng);
            Site::LoopArc { lp, p: gen::point(rng, m, n, max_len), q: gen::point(rng, m, n, max_len) }
        }
        7 => Site::ArcArc {
            p: gen::point(rng, m, n, max_len),
            q: gen::point(rng, m, n, max_len),
            p2: gen::point(rng, m, n, max_len),
            q2: gen::point(rng, m, n, max_len),
            shift: gen::word(rng, m, max_len),
        },
        _ => return Err(Error::Invalid(format!("no graphical rule {rule} (rules are 1..=7)"))),
    })
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum CurveJson {
    Loop(String),
    Arc { from: (String, u32), to: (String, u32) },
}

#[derive(Deserialize)]
struct CurveFile {
    genus: u32,
    boundary: u32,
    marked: u32,
    #[serde(default)]
    curves: Vec<CurveJson>,
}

/// Parse a surface description with its curve collection.
pub fn parse_curve_file(s: &str) -> Result<(SurfaceSpec, Vec<CurveSpec>)> {
    let file: CurveFile = serde_json::from_str(s)?;
    let surface = SurfaceSpec::new(file.genus, file.boundary, file.marked);
    let point = |(w, j): &(String, u32)| -> Result<MarkedPoint> {
        let p = MarkedPoint::new(surface.parse_word(w)?, *j);
        surface.check_point(&p)?;
        Ok(p)
    };
    let curves = file
        .curves
        .iter()
        .map(|c| match c {
            CurveJson::Loop(w) => Ok(CurveSpec::Loop(surface.parse_word(w)?)),
            CurveJson::Arc { from, to } => Ok(CurveSpec::Arc(point(from)?, point(to)?)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((surface, curves))
}
