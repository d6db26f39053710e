//! The character algebra H⁺(G, M): canonical symbols, polynomial
//! arithmetic, directed rewrites and oracle-backed equality.

mod poly;
pub mod relations;
pub mod rewrite;

pub use poly::{CharPoly, Monomial, Symbol};
pub use relations::{RelId, RelationInstance};
pub use rewrite::{reduce_heuristic, rewrite_step, Rule, Site, SiteMismatch};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groupact::{act, MarkedPoint, Presentation, Word};
use crate::oracle::{self, OracleConfig, Verdict};
use crate::rep::{sample_rep, Rep};

/// Symbol construction relative to a presentation. For free presentations
/// every symbol is put in canonical form; otherwise symbols are stored as
/// given (free-reduced) and equality must go through the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharAlgebra {
    pres: Presentation,
    canonical: bool,
}

impl CharAlgebra {
    pub fn new(pres: Presentation) -> Self {
        let canonical = pres.is_free();
        CharAlgebra { pres, canonical }
    }

    pub fn free(generators: u32, orbits: u32) -> Self {
        CharAlgebra::new(Presentation::free(generators, orbits))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// `[w]`; the empty loop is the constant 2.
    pub fn loop_(&self, w: &Word) -> CharPoly {
        if w.is_identity() {
            return CharPoly::int(2);
        }
        let w = if self.canonical { w.cyclic_canonical() } else { w.clone() };
        CharPoly::symbol(Symbol::Loop(w))
    }

    /// Canonical arc symbol and whether the orientation was flipped, or
    /// `None` when the symbol vanishes.
    pub fn canon_arc(&self, p: &MarkedPoint, q: &MarkedPoint) -> Option<(bool, Symbol)> {
        if p == q {
            return None;
        }
        if !self.canonical {
            return Some((false, Symbol::Arc(p.clone(), q.clone())));
        }
        let (u, v) = (p.prefix.inverse(), q.prefix.inverse());
        let fwd = (act(&u, p), act(&u, q));
        let rev = (act(&v, q), act(&v, p));
        Some(if fwd <= rev {
            (false, Symbol::Arc(fwd.0, fwd.1))
        } else {
            (true, Symbol::Arc(rev.0, rev.1))
        })
    }

    /// `[p, q]` with orientation sign absorbed into the coefficient.
    pub fn arc(&self, p: &MarkedPoint, q: &MarkedPoint) -> CharPoly {
        match self.canon_arc(p, q) {
            None => CharPoly::zero(),
            Some((false, s)) => CharPoly::symbol(s),
            Some((true, s)) => CharPoly::symbol(s).neg(),
        }
    }

    /// Re-canonicalize a symbol produced elsewhere.
    pub fn symbol(&self, s: &Symbol) -> CharPoly {
        match s {
            Symbol::Loop(w) => self.loop_(w),
            Symbol::Arc(p, q) => self.arc(p, q),
        }
    }

    /// Re-canonicalize every symbol of a polynomial.
    pub fn normalize(&self, f: &CharPoly) -> CharPoly {
        let mut out = CharPoly::zero();
        for (m, c) in f.terms() {
            let t = m
                .symbols()
                .iter()
                .fold(CharPoly::constant(c.clone()), |acc, s| acc.mul(&self.symbol(s)));
            out = out.add(&t);
        }
        out
    }

    /// Checks that every word and point in `f` fits the presentation.
    pub fn check(&self, f: &CharPoly) -> Result<()> {
        for s in f.symbols() {
            match s {
                Symbol::Loop(w) => self.pres.check_word(w)?,
                Symbol::Arc(p, q) => {
                    self.pres.check_point(p)?;
                    self.pres.check_point(q)?;
                }
            }
        }
        Ok(())
    }

    /// Oracle equality of two polynomials on `cfg.samples` representations.
    /// Free presentations are sampled; others use `library` and the verdict
    /// is refutation-only (no error bound).
    pub fn equal<F: Field>(
        &self,
        f: &CharPoly,
        h: &CharPoly,
        field: &F,
        library: &[Rep<F::Elem>],
        cfg: &OracleConfig,
    ) -> Result<Verdict<Rep<F::Elem>, F::Elem>> {
        self.check(f)?;
        self.check(h)?;
        let free = self.pres.is_free();
        if !free && library.is_empty() {
            return Err(Error::Unsupported(
                "non-free presentation without provided representations".into(),
            ));
        }
        let degree = 2 * f.degree().max(h.degree()).max(1);
        let bound = free.then(|| oracle::sz_bound(cfg.samples, degree, field.sample_set_size()));
        oracle::compare(
            cfg,
            degree,
            bound,
            |i, rng| {
                if free {
                    sample_rep(field, &self.pres, library, rng)
                } else {
                    Ok(library[i % library.len()].clone())
                }
            },
            |rep| Ok((vec![f.eval(field, rep)?], vec![h.eval(field, rep)?])),
        )
    }
}

/// `C_i(x) = 2·T_i(x/2)`: `C_0 = 2`, `C_1 = x`, `C_{i+1} = x·C_i − C_{i−1}`.
pub fn chebyshev(i: usize, x: &CharPoly) -> CharPoly {
    let (mut prev, mut cur) = (CharPoly::int(2), x.clone());
    if i == 0 {
        return prev;
    }
    for _ in 1..i {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}
