//! Trace words, mixed invariants and concomitants, and their evaluation.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{format_rational, Field, Scalar};
use crate::linalg2::{outer, Mat2, Vec2};

/// A letter of a trace word: `X(i)`, its adjoint `Xi(i)`, or `Th(j,k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X(u32),
    Xi(u32),
    Th(u32, u32),
}

impl Letter {
    /// `ι` of the letter as `(negated, letter)`; `Θ(j,k)^ι = −Θ(k,j)`.
    pub fn iota(self) -> (bool, Letter) {
        match self {
            Letter::X(i) => (false, Letter::Xi(i)),
            Letter::Xi(i) => (false, Letter::X(i)),
            Letter::Th(j, k) => (true, Letter::Th(k, j)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(i) => write!(f, "X({i})"),
            Letter::Xi(i) => write!(f, "Xi({i})"),
            Letter::Th(j, k) => write!(f, "Th({j},{k})"),
        }
    }
}

/// A product of letters; the empty word is the identity matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TraceWord(pub Vec<Letter>);

impl TraceWord {
    pub fn identity() -> Self {
        TraceWord(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        TraceWord(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &TraceWord) -> TraceWord {
        TraceWord(self.0.iter().chain(o.0.iter()).copied().collect())
    }

    /// Reverse and apply ι letterwise; returns `(negated, word)`.
    pub fn iota(&self) -> (bool, TraceWord) {
        let mut neg = false;
        let letters = self
            .0
            .iter()
            .rev()
            .map(|l| {
                let (n, l) = l.iota();
                neg ^= n;
                l
            })
            .collect();
        (neg, TraceWord(letters))
    }

    /// Least cyclic rotation (the key of `tr(w)`).
    pub fn cyclic_canonical(&self) -> TraceWord {
        let n = self.0.len();
        (0..n)
            .map(|k| TraceWord(self.0[k..].iter().chain(self.0[..k].iter()).copied().collect()))
            .min()
            .unwrap_or_default()
    }

    /// Degree in matrix and vector entries: 1 per `X`, 2 per `Θ`.
    pub fn degree(&self) -> usize {
        self.len() + self.theta_count()
    }

    pub fn theta_count(&self) -> usize {
        self.0.iter().filter(|l| matches!(l, Letter::Th(..))).count()
    }

    /// `(max matrix index, max vector index)` used.
    pub fn arity(&self) -> (u32, u32) {
        self.0.iter().fold((0, 0), |(m, n), l| match *l {
            Letter::X(i) | Letter::Xi(i) => (m.max(i), n),
            Letter::Th(j, k) => (m, n.max(j).max(k)),
        })
    }

    pub fn eval<F: Field>(&self, f: &F, pt: &Point<F::Elem>) -> Result<Mat2<F::Elem>> {
        let mut acc: Option<Mat2<F::Elem>> = None;
        for l in &self.0 {
            let m = pt.letter(*l)?;
            acc = Some(match acc {
                None => m,
                Some(a) => a.mul(&m),
            });
        }
        Ok(acc.unwrap_or_else(|| Mat2::identity(f)))
    }
}

impl fmt::Display for TraceWord {
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

/// A point of End(V)^m ⊕ V^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point<E> {
    pub mats: Vec<Mat2<E>>,
    pub vecs: Vec<Vec2<E>>,
}

impl<E: Scalar> Point<E> {
    /// Independent uniform entries; matrices are general, not SL₂.
    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(f: &F, m: u32, n: u32, rng: &mut R) -> Self {
        Point {
            mats: (0..m).map(|_| Mat2::random(f, rng)).collect(),
            vecs: (0..n).map(|_| Vec2::random(f, rng)).collect(),
        }
    }

    pub fn letter(&self, l: Letter) -> Result<Mat2<E>> {
        let mat = |i: u32| {
            self.mats.get(i as usize - 1).ok_or_else(|| {
                Error::Dimension(format!("X({i}) used at a point with {} matrices", self.mats.len()))
            })
        };
        let vec = |j: u32| {
            self.vecs.get(j as usize - 1).ok_or_else(|| {
                Error::Dimension(format!("Th index {j} used at a point with {} vectors", self.vecs.len()))
            })
        };
        Ok(match l {
            Letter::X(i) => mat(i)?.clone(),
            Letter::Xi(i) => mat(i)?.iota(),
            Letter::Th(j, k) => outer(vec(j)?, vec(k)?),
        })
    }

    /// Conjugate every matrix by `g` and move every vector by `g` (g ∈ SL₂).
    pub fn conjugate(&self, g: &Mat2<E>) -> Self {
        let gi = g.iota();
        Point {
            mats: self.mats.iter().map(|a| g.mul(a).mul(&gi)).collect(),
            vecs: self.vecs.iter().map(|v| g.apply(v)).collect(),
        }
    }
}

/// A polynomial in formal symbols `tr(w)`, keyed by cyclic-canonical
/// nonempty words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct InvExpr {
    terms: BTreeMap<Vec<TraceWord>, BigRational>,
}

impl InvExpr {
    pub fn zero() -> Self {
        InvExpr::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut e = InvExpr::zero();
        e.add_term(Vec::new(), c);
        e
    }

    pub fn int(n: i64) -> Self {
        InvExpr::constant(BigRational::from_integer(n.into()))
    }

    /// `tr(w)`; `tr(Id) = 2`.
    pub fn tr(w: &TraceWord) -> Self {
        if w.is_empty() {
            return InvExpr::int(2);
        }
        let mut e = InvExpr::zero();
        e.add_term(vec![w.cyclic_canonical()], BigRational::one());
        e
    }

    fn add_term(&mut self, mut mono: Vec<TraceWord>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        mono.sort();
        match self.terms.entry(mono) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant if this expression has no trace symbols.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<TraceWord>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &InvExpr) -> InvExpr {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> InvExpr {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, o: &InvExpr) -> InvExpr {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &BigRational) -> InvExpr {
        let mut r = InvExpr::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * s);
        }
        r
    }

    pub fn mul(&self, o: &InvExpr) -> InvExpr {
        let mut r = InvExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.iter().chain(m2.iter()).cloned().collect(), c1 * c2);
            }
        }
        r
    }

    pub fn arity(&self) -> (u32, u32) {
        self.terms
            .keys()
            .flatten()
            .map(TraceWord::arity)
            .fold((0, 0), |(a, b), (c, d)| (a.max(c), b.max(d)))
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(TraceWord::degree).sum::<usize>())
            .max()
            .unwrap_or(0)
    }

    /// Degrees in the vector variables of each monomial. Every `Θ` letter
    /// is quadratic in the vectors, so these are all even.
    pub fn vector_degrees(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .map(|m| 2 * m.iter().map(TraceWord::theta_count).sum::<usize>())
            .collect()
    }

    pub fn is_even(&self) -> bool {
        self.vector_degrees().iter().all(|d| d % 2 == 0)
    }

    pub fn eval<F: Field>(&self, f: &F, pt: &Point<F::Elem>) -> Result<F::Elem> {
        let mut cache: HashMap<&TraceWord, F::Elem> = HashMap::new();
        let mut total = f.zero();
        for (m, c) in &self.terms {
            let mut t = f.from_rational(c)?;
            for w in m {
                let v = match cache.get(w) {
                    Some(v) => v.clone(),
                    None => {
                        let v = w.eval(f, pt)?.trace();
                        cache.insert(w, v.clone());
                        v
                    }
                };
                t = t * v;
            }
            total = total + t;
        }
        Ok(total)
    }
}

fn write_coeff_terms<K>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (K, BigRational)>,
    is_unit: impl Fn(&K) -> bool,
    body: impl Fn(&mut fmt::Formatter<'_>, &K) -> fmt::Result,
) -> fmt::Result {
    let mut any = false;
    for (i, (k, c)) in terms.enumerate() {
        any = true;
        let a = c.abs();
        match (i, c.is_negative()) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if is_unit(&k) {
            write!(f, "{}", format_rational(&a))?;
        } else {
            if !a.is_one() {
                write!(f, "{}*", format_rational(&a))?;
            }
            body(f, &k)?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for InvExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coeff_terms(
            f,
            self.terms.iter().map(|(m, c)| (m, c.clone())),
            |m| m.is_empty(),
            |f, m| {
                for (i, w) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "tr({w})")?;
                }
                Ok(())
            },
        )
    }
}

/// An `InvExpr`-linear combination of trace words (matrix-valued).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConExpr {
    terms: BTreeMap<TraceWord, InvExpr>,
}

impl ConExpr {
    pub fn zero() -> Self {
        ConExpr::default()
    }

    pub fn identity() -> Self {
        ConExpr::word(TraceWord::identity())
    }

    pub fn word(w: TraceWord) -> Self {
        ConExpr::scaled_word(w, InvExpr::int(1))
    }

    pub fn letter(l: Letter) -> Self {
        ConExpr::word(TraceWord::letter(l))
    }

    pub fn scaled_word(w: TraceWord, c: InvExpr) -> Self {
        let mut e = ConExpr::zero();
        e.add_term(w, c);
        e
    }

    /// `c·Id`.
    pub fn scalar(c: InvExpr) -> Self {
        ConExpr::scaled_word(TraceWord::identity(), c)
    }

    fn add_term(&mut self, w: TraceWord, c: InvExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TraceWord, &InvExpr)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar part if this is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<InvExpr> {
        match self.terms.len() {
            0 => Some(InvExpr::zero()),
            1 => self.terms.get(&TraceWord::identity()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &ConExpr) -> ConExpr {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> ConExpr {
        self.scale(&InvExpr::int(-1))
    }

    pub fn sub(&self, o: &ConExpr) -> ConExpr {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &InvExpr) -> ConExpr {
        let mut r = ConExpr::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), c.mul(s));
        }
        r
    }

    pub fn mul(&self, o: &ConExpr) -> ConExpr {
        let mut r = ConExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(w1.mul(w2), c1.mul(c2));
            }
        }
        r
    }

    /// The anti-involution ι, extended linearly.
    pub fn iota(&self) -> ConExpr {
        let mut r = ConExpr::zero();
        for (w, c) in &self.terms {
            let (neg, wi) = w.iota();
            r.add_term(wi, if neg { c.neg() } else { c.clone() });
        }
        r
    }

    /// The scalar trace.
    pub fn tr(&self) -> InvExpr {
        self.terms
            .iter()
            .fold(InvExpr::zero(), |acc, (w, c)| acc.add(&c.mul(&InvExpr::tr(w))))
    }

    pub fn arity(&self) -> (u32, u32) {
        self.terms.iter().fold((0, 0), |(a, b), (w, c)| {
            let (x, y) = w.arity();
            let (u, v) = c.arity();
            (a.max(x).max(u), b.max(y).max(v))
        })
    }

    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(w, c)| w.degree() + c.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn eval<F: Field>(&self, f: &F, pt: &Point<F::Elem>) -> Result<Mat2<F::Elem>> {
        let mut total = Mat2::zero(f);
        for (w, c) in &self.terms {
            total = total.add(&w.eval(f, pt)?.scale(&c.eval(f, pt)?));
        }
        Ok(total)
    }
}

impl fmt::Display for ConExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match c.as_constant() {
                Some(k) if k.is_one() => write!(f, "{w}")?,
                _ => write!(f, "({c})*{w}")?,
            }
        }
        Ok(())
    }
}

/// `tr(w)` for a bare word, as an invariant.
pub fn tr_word(w: &TraceWord) -> InvExpr {
    InvExpr::tr(w)
}

/// `ι(w)` as a concomitant (sign carried in the coefficient).
pub fn iota_word(w: &TraceWord) -> ConExpr {
    ConExpr::word(w.clone()).iota()
}
