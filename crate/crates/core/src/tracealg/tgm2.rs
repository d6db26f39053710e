//! The tensor algebra 𝒯_G M² over k[G]: words in `X_g` and `Θ_{pq}`, the
//! maps χ and τ, and an explicit certificate that τχ = 2·id.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::charalg::{CharAlgebra, CharPoly, Monomial, Symbol};
use crate::error::Result;
use crate::field::Field;
use crate::groupact::{act, MarkedPoint, Word};
use crate::linalg2::{outer, Mat2};
use crate::rep::Rep;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TgLetter {
    X(Word),
    Th(MarkedPoint, MarkedPoint),
}

impl fmt::Display for TgLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TgLetter::X(w) => write!(f, "X[{w}]"),
            TgLetter::Th(p, q) => write!(f, "Th[{p}, {q}]"),
        }
    }
}

/// A word with adjacent `X` letters merged and `X_e` dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TgWord(Vec<TgLetter>);

impl TgWord {
    pub fn identity() -> Self {
        TgWord(Vec::new())
    }

    pub fn x(w: Word) -> Self {
        TgWord::from_letters(vec![TgLetter::X(w)])
    }

    pub fn theta(p: MarkedPoint, q: MarkedPoint) -> Self {
        TgWord(vec![TgLetter::Th(p, q)])
    }

    pub fn from_letters(letters: Vec<TgLetter>) -> Self {
        let mut out: Vec<TgLetter> = Vec::with_capacity(letters.len());
        for l in letters {
            match (out.last_mut(), l) {
                (_, TgLetter::X(w)) if w.is_identity() => {}
                (Some(TgLetter::X(a)), TgLetter::X(b)) => {
                    *a = a.mul(&b);
                    if a.is_identity() {
                        out.pop();
                    }
                }
                (_, l) => out.push(l),
            }
        }
        TgWord(out)
    }

    pub fn letters(&self) -> &[TgLetter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &TgWord) -> TgWord {
        TgWord::from_letters(self.0.iter().chain(o.0.iter()).cloned().collect())
    }

    /// `ι`: reverse, `X_g ↦ X_{g⁻¹}`, `Θ_{pq} ↦ −Θ_{qp}`. Returns `(negated, word)`.
    pub fn iota(&self) -> (bool, TgWord) {
        let mut neg = false;
        let letters = self
            .0
            .iter()
            .rev()
            .map(|l| match l {
                TgLetter::X(w) => TgLetter::X(w.inverse()),
                TgLetter::Th(p, q) => {
                    neg = !neg;
                    TgLetter::Th(q.clone(), p.clone())
                }
            })
            .collect();
        (neg, TgWord(letters))
    }

    /// Push every `X` into a neighbouring `Θ` using `X_gΘ_{pq} = Θ_{gp,q}`
    /// and `Θ_{pq}X_g = Θ_{p,g⁻¹q}`. Words without `Θ` are returned as is.
    pub fn absorb(&self) -> TgWord {
        if !self.0.iter().any(|l| matches!(l, TgLetter::Th(..))) {
            return self.clone();
        }
        let mut out: Vec<(MarkedPoint, MarkedPoint)> = Vec::new();
        let mut lead = Word::identity();
        for l in &self.0 {
            match l {
                TgLetter::X(g) => match out.last_mut() {
                    Some((_, q)) => *q = act(&g.inverse(), q),
                    None => lead = lead.mul(g),
                },
                TgLetter::Th(p, q) => {
                    let p = if out.is_empty() { act(&lead, p) } else { p.clone() };
                    out.push((p, q.clone()));
                }
            }
        }
        TgWord(out.into_iter().map(|(p, q)| TgLetter::Th(p, q)).collect())
    }

    /// The `(p, q)` pairs of an absorbed word, or `None` for a pure `X` word.
    fn theta_pairs(&self) -> Option<Vec<(MarkedPoint, MarkedPoint)>> {
        let a = self.absorb();
        let pairs: Vec<_> = a
            .0
            .iter()
            .filter_map(|l| match l {
                TgLetter::Th(p, q) => Some((p.clone(), q.clone())),
                TgLetter::X(_) => None,
            })
            .collect();
        (!pairs.is_empty()).then_some(pairs)
    }

    /// Degree in the entries of a representation.
    pub fn degree(&self) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                TgLetter::X(w) => w.len(),
                TgLetter::Th(p, q) => p.prefix.len() + q.prefix.len() + 2,
            })
            .sum()
    }

    pub fn eval<F: Field>(&self, f: &F, rep: &Rep<F::Elem>) -> Result<Mat2<F::Elem>> {
        let mut acc = Mat2::identity(f);
        for l in &self.0 {
            let m = match l {
                TgLetter::X(w) => rep.eval_word(f, w)?,
                TgLetter::Th(p, q) => outer(&rep.point(f, p)?, &rep.point(f, q)?),
            };
            acc = acc.mul(&m);
        }
        Ok(acc)
    }
}

impl fmt::Display for TgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Id");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A rational linear combination of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TgExpr {
    terms: BTreeMap<TgWord, BigRational>,
}

impl TgExpr {
    pub fn zero() -> Self {
        TgExpr::default()
    }

    pub fn word(w: TgWord) -> Self {
        let mut e = TgExpr::zero();
        e.add_term(w, BigRational::one());
        e
    }

    pub fn identity() -> Self {
        TgExpr::word(TgWord::identity())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut e = TgExpr::zero();
        e.add_term(TgWord::identity(), c);
        e
    }

    fn add_term(&mut self, w: TgWord, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TgWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &TgExpr) -> TgExpr {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &BigRational) -> TgExpr {
        let mut r = TgExpr::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), c * s);
        }
        r
    }

    pub fn sub(&self, o: &TgExpr) -> TgExpr {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn mul(&self, o: &TgExpr) -> TgExpr {
        let mut r = TgExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(w1.mul(w2), c1 * c2);
            }
        }
        r
    }

    pub fn iota(&self) -> TgExpr {
        let mut r = TgExpr::zero();
        for (w, c) in &self.terms {
            let (neg, wi) = w.iota();
            r.add_term(wi, if neg { -c.clone() } else { c.clone() });
        }
        r
    }

    /// `tr(A) := A + A^ι`.
    pub fn tr(&self) -> TgExpr {
        self.add(&self.iota())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(TgWord::degree).max().unwrap_or(0)
    }

    /// Rewrite every word into absorbed form.
    pub fn absorb(&self) -> TgExpr {
        let mut r = TgExpr::zero();
        for (w, c) in &self.terms {
            r.add_term(w.absorb(), c.clone());
        }
        r
    }

    pub fn eval<F: Field>(&self, f: &F, rep: &Rep<F::Elem>) -> Result<Mat2<F::Elem>> {
        let mut total = Mat2::zero(f);
        for (w, c) in &self.terms {
            total = total.add(&w.eval(f, rep)?.scale(&f.from_rational(c)?));
        }
        Ok(total)
    }
}

impl fmt::Display for TgExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{w}", crate::field::format_rational(c))?;
        }
        Ok(())
    }
}

/// A polynomial in formal trace symbols `tr(w)` of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TgTracePoly {
    terms: BTreeMap<Vec<TgWord>, BigRational>,
}

impl TgTracePoly {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<TgWord>, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, mut m: Vec<TgWord>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        m.sort();
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn eval<F: Field>(&self, f: &F, rep: &Rep<F::Elem>) -> Result<F::Elem> {
        let mut total = f.zero();
        for (m, c) in &self.terms {
            let mut t = f.from_rational(c)?;
            for w in m {
                t = t * w.eval(f, rep)?.trace();
            }
            total = total + t;
        }
        Ok(total)
    }

    /// Replace each `tr(w)` by the matrix element `w + w^ι` and multiply out.
    pub fn expand(&self) -> TgExpr {
        let mut out = TgExpr::zero();
        for (m, c) in &self.terms {
            let t = m
                .iter()
                .fold(TgExpr::constant(c.clone()), |acc, w| acc.mul(&TgExpr::word(w.clone()).tr()));
            out = out.add(&t);
        }
        out
    }
}

/// The word whose trace is the symbol: `[g] ↦ X_g`, `[p,q] ↦ Θ_{qp}`.
pub fn symbol_word(s: &Symbol) -> TgWord {
    match s {
        Symbol::Loop(w) => TgWord::x(w.clone()),
        Symbol::Arc(p, q) => TgWord::theta(q.clone(), p.clone()),
    }
}

/// χ as a polynomial in formal traces.
pub fn chi_map(f: &CharPoly) -> TgTracePoly {
    let mut out = TgTracePoly::default();
    for (m, c) in f.terms() {
        out.add_term(m.symbols().iter().map(symbol_word).collect(), c.clone());
    }
    out
}

/// χ with each trace expanded to `A + A^ι` (matrix-valued).
pub fn chi_expand(f: &CharPoly) -> TgExpr {
    chi_map(f).expand()
}

fn chi_expand_monomial(syms: &[Symbol]) -> TgExpr {
    syms.iter().rev().fold(TgExpr::identity(), |acc, s| {
        TgExpr::word(symbol_word(s)).tr().mul(&acc)
    })
}

/// `τ(Θ_{p₁q₁}⋯Θ_{pₙqₙ}) = [q₁,p₂]⋯[qₙ,p₁]`, `τ(X_g) = [g]`, `τ(Id) = 2`.
pub fn tau_word(alg: &CharAlgebra, w: &TgWord) -> CharPoly {
    match w.theta_pairs() {
        None => match w.letters().first() {
            None => CharPoly::int(2),
            Some(TgLetter::X(g)) => alg.loop_(g),
            Some(TgLetter::Th(..)) => unreachable!("pure X word"),
        },
        Some(pairs) => {
            let n = pairs.len();
            (0..n).fold(CharPoly::int(1), |acc, i| {
                acc.mul(&alg.arc(&pairs[i].1, &pairs[(i + 1) % n].0))
            })
        }
    }
}

pub fn tau(alg: &CharAlgebra, e: &TgExpr) -> CharPoly {
    e.terms()
        .fold(CharPoly::zero(), |acc, (w, c)| acc.add(&tau_word(alg, w).scale(c)))
}

/// τ of a trace polynomial (each trace expanded first).
pub fn tau_trace(alg: &CharAlgebra, p: &TgTracePoly) -> CharPoly {
    tau(alg, &p.expand())
}

/// `Π_{i<k} [q_i, p_{i+1}]` over a run of pairs.
fn chain(alg: &CharAlgebra, pairs: &[(MarkedPoint, MarkedPoint)]) -> CharPoly {
    pairs
        .windows(2)
        .fold(CharPoly::int(1), |acc, w| acc.mul(&alg.arc(&w[0].1, &w[1].0)))
}

/// `τ(tr(A)B) − τ(A)τ(B)`, written as an explicit combination of
/// instances of R4, R5 and R6 with monomial multipliers.
pub fn tau_product_defect(alg: &CharAlgebra, a: &TgWord, b: &TgWord) -> CharPoly {
    if a.is_identity() || b.is_identity() {
        return CharPoly::zero();
    }
    let x_word = |w: &TgWord| match w.letters() {
        [TgLetter::X(g)] => g.clone(),
        _ => unreachable!("pure X words are merged into one letter"),
    };
    match (a.theta_pairs(), b.theta_pairs()) {
        (None, None) => alg.r4(&x_word(a), &x_word(b)).sum().neg(),
        (None, Some(pb)) => {
            let (p1, qn) = (&pb[0].0, &pb[pb.len() - 1].1);
            chain(alg, &pb).mul(&alg.r5(&x_word(a), qn, p1).sum()).neg()
        }
        (Some(pa), None) => {
            let (p1, qj) = (&pa[0].0, &pa[pa.len() - 1].1);
            chain(alg, &pa).mul(&alg.r5(&x_word(b), qj, p1).sum()).neg()
        }
        (Some(pa), Some(pb)) => {
            let (p1, qj) = (&pa[0].0, &pa[pa.len() - 1].1);
            let (pj1, qn) = (&pb[0].0, &pb[pb.len() - 1].1);
            chain(alg, &pa)
                .mul(&chain(alg, &pb))
                .mul(&alg.r6(qj, p1, qn, pj1).sum())
                .neg()
        }
    }
}

/// `τχ(m) − 2m` for a monomial, as a combination of relation instances.
pub fn tau_chi_certificate_monomial(alg: &CharAlgebra, m: &Monomial) -> CharPoly {
    let syms = m.symbols();
    let mut cert = CharPoly::zero();
    // Build from the right: m_k = s_k·m_{k+1}.
    for k in (0..syms.len()).rev() {
        let s = &syms[k];
        let a = symbol_word(s);
        let rest = chi_expand_monomial(&syms[k + 1..]);
        let mut defect = CharPoly::zero();
        for (b, c) in rest.terms() {
            defect = defect.add(&tau_product_defect(alg, &a, b).scale(c));
        }
        cert = alg.symbol(s).mul(&cert).add(&defect);
    }
    cert
}

pub fn tau_chi_certificate(alg: &CharAlgebra, f: &CharPoly) -> CharPoly {
    f.terms().fold(CharPoly::zero(), |acc, (m, c)| {
        acc.add(&tau_chi_certificate_monomial(alg, m).scale(c))
    })
}

/// Outcome of the symbolic τχ check.
#[derive(Debug, Clone)]
pub struct TauChiCheck {
    pub tau_chi: CharPoly,
    pub certificate: CharPoly,
    /// `τχ(f) = 2f + certificate` holds literally.
    pub holds: bool,
}

/// Compute τχ(f) by expansion and compare it literally with
/// `2f + certificate`, where the certificate lies in the relation ideal.
pub fn verify_tau_chi(alg: &CharAlgebra, f: &CharPoly) -> TauChiCheck {
    let tau_chi = tau(alg, &chi_expand(f));
    let certificate = tau_chi_certificate(alg, f);
    let two_f = f.scale(&BigRational::from_integer(2.into()));
    let holds = tau_chi == two_f.add(&certificate);
    TauChiCheck { tau_chi, certificate, holds }
}

/// `(tr(A)B, B·tr(A))`.
pub fn tr_central(a: &TgExpr, b: &TgExpr) -> (TgExpr, TgExpr) {
    let t = a.tr();
    (t.mul(b), b.mul(&t))
}

/// `(Θ_{pq}Θ_{p′q′}, tr(Θ_{p′q})·Θ_{pq′})`.
pub fn theta_contract(
    p: &MarkedPoint,
    q: &MarkedPoint,
    p2: &MarkedPoint,
    q2: &MarkedPoint,
) -> (TgExpr, TgExpr) {
    let th = |a: &MarkedPoint, b: &MarkedPoint| TgExpr::word(TgWord::theta(a.clone(), b.clone()));
    (th(p, q).mul(&th(p2, q2)), th(p2, q).tr().mul(&th(p, q2)))
}

/// `(X_s·Θ_{p_j, p′}, Θ_{p_j, p′})` for a stabilizer word `s` of orbit `j`;
/// the difference is `(X_s − Id)·Θ_{p_j, p′}`.
pub fn stabilizer_relation(s: &Word, orbit: u32, p2: &MarkedPoint) -> (TgExpr, TgExpr) {
    let x = TgExpr::word(TgWord::x(s.clone()));
    let th = TgExpr::word(TgWord::theta(MarkedPoint::base(orbit), p2.clone()));
    (x.mul(&th), th)
}
