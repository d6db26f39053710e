//! Symbols, monomials and polynomials of the character algebra.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::field::{format_rational, Field};
use crate::groupact::{MarkedPoint, Word};
use crate::rep::Rep;

/// A loop symbol `[g]` or an arc symbol `[p, q]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Loop(Word),
    Arc(MarkedPoint, MarkedPoint),
}

impl Symbol {
    /// Degree of the symbol as a polynomial in matrix and vector entries.
    pub fn degree(&self) -> usize {
        match self {
            Symbol::Loop(w) => w.len(),
            Symbol::Arc(p, q) => p.prefix.len() + q.prefix.len() + 2,
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, Symbol::Loop(_))
    }

    pub fn eval<F: Field>(&self, f: &F, rep: &Rep<F::Elem>) -> Result<F::Elem> {
        match self {
            Symbol::Loop(w) => rep.chi_loop(f, w),
            Symbol::Arc(p, q) => rep.chi_arc(f, p, q),
        }
    }

    fn max_generator(&self) -> u32 {
        match self {
            Symbol::Loop(w) => w.max_index(),
            Symbol::Arc(p, q) => p.prefix.max_index().max(q.prefix.max_index()),
        }
    }

    fn max_orbit(&self) -> u32 {
        match self {
            Symbol::Loop(_) => 0,
            Symbol::Arc(p, q) => p.orbit.max(q.orbit),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Loop(w) => write!(f, "loop({w})"),
            Symbol::Arc(p, q) => write!(f, "arc({p}, {q})"),
        }
    }
}

/// A commutative monomial: sorted multiset of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<Symbol>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_symbols(mut syms: Vec<Symbol>) -> Self {
        syms.sort();
        Monomial(syms)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            if self.0[i] <= o.0[j] {
                v.push(self.0[i].clone());
                i += 1;
            } else {
                v.push(o.0[j].clone());
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&o.0[j..]);
        Monomial(v)
    }

    /// The monomial with the symbols at the given positions removed.
    pub fn without(&self, positions: &[usize]) -> Monomial {
        Monomial(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| !positions.contains(i))
                .map(|(_, s)| s.clone())
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(Symbol::degree).sum()
    }

    pub fn loop_count(&self) -> usize {
        self.0.iter().filter(|s| s.is_loop()).count()
    }

    pub fn loop_length(&self) -> usize {
        self.0
            .iter()
            .map(|s| match s {
                Symbol::Loop(w) => w.len(),
                Symbol::Arc(..) => 0,
            })
            .sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let mut k = 1;
            while i + k < self.0.len() && self.0[i + k] == self.0[i] {
                k += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.0[i])?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
            i += k;
        }
        Ok(())
    }
}

/// A rational linear combination of monomials, zero coefficients pruned.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CharPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl CharPoly {
    pub fn zero() -> Self {
        CharPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        CharPoly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        CharPoly::constant(BigRational::from_integer(n.into()))
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = CharPoly::zero();
        p.add_term(m, c);
        p
    }

    /// A bare symbol with coefficient one. Callers are responsible for
    /// canonical form; see [`super::CharAlgebra`].
    pub fn symbol(s: Symbol) -> Self {
        CharPoly::term(Monomial(vec![s]), BigRational::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &CharPoly) -> CharPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &CharPoly) -> CharPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CharPoly {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, s: &BigRational) -> CharPoly {
        if s.is_zero() {
            return CharPoly::zero();
        }
        CharPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &CharPoly) -> CharPoly {
        let mut r = CharPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> CharPoly {
        (0..e).fold(CharPoly::int(1), |acc, _| acc.mul(self))
    }

    /// Maximum monomial degree in matrix/vector entries.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn max_generator(&self) -> u32 {
        self.symbols().map(Symbol::max_generator).max().unwrap_or(0)
    }

    pub fn max_orbit(&self) -> u32 {
        self.symbols().map(Symbol::max_orbit).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.keys().flat_map(|m| m.0.iter())
    }

    /// Evaluate on a representation.
    pub fn eval<F: Field>(&self, f: &F, rep: &Rep<F::Elem>) -> Result<F::Elem> {
        let mut cache: HashMap<&Symbol, F::Elem> = HashMap::new();
        let mut total = f.zero();
        for (m, c) in &self.terms {
            let mut t = f.from_rational(c)?;
            for s in &m.0 {
                let v = match cache.get(s) {
                    Some(v) => v.clone(),
                    None => {
                        let v = s.eval(f, rep)?;
                        cache.insert(s, v.clone());
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

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}
