//! Instances of the defining relations R1–R6 and their consequences
//! C7–C10, each as a list of terms summing to zero.

use std::fmt;
use std::str::FromStr;

use super::{chebyshev, CharAlgebra, CharPoly};
use crate::error::Error;
use crate::groupact::{act, MarkedPoint, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    C7,
    C8,
    C9,
    C10,
}

impl RelId {
    pub const ALL: [RelId; 10] = [
        RelId::R1,
        RelId::R2,
        RelId::R3,
        RelId::R4,
        RelId::R5,
        RelId::R6,
        RelId::C7,
        RelId::C8,
        RelId::C9,
        RelId::C10,
    ];

    /// Relations that make sense with no generators (only points).
    pub fn needs_generators(self) -> bool {
        matches!(self, RelId::R3 | RelId::R4 | RelId::R5 | RelId::C8 | RelId::C9 | RelId::C10)
    }

    pub fn needs_points(self) -> bool {
        matches!(self, RelId::R2 | RelId::R3 | RelId::R5 | RelId::R6 | RelId::C7)
    }
}

impl fmt::Display for RelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for RelId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        RelId::ALL
            .into_iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(format!("unknown relation {s:?}")))
    }
}

/// A single injected corruption of a relation, for mutation testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Negate the last term.
    Sign,
    /// Remove the last term.
    Drop,
}

impl FromStr for Mutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sign" => Ok(Mutation::Sign),
            "drop" => Ok(Mutation::Drop),
            _ => Err(Error::Invalid(format!("unknown mutation {s:?} (sign or drop)"))),
        }
    }
}

/// Terms whose sum vanishes in H⁺(G, M).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub id: RelId,
    pub terms: Vec<CharPoly>,
    /// For single-term relations, the term a mutation swaps in.
    pub perturbed: Option<CharPoly>,
}

impl RelationInstance {
    fn new(id: RelId, terms: Vec<CharPoly>) -> Self {
        RelationInstance { id, terms, perturbed: None }
    }

    pub fn sum(&self) -> CharPoly {
        self.terms.iter().fold(CharPoly::zero(), |acc, t| acc.add(t))
    }

    /// The relation with one term corrupted.
    pub fn mutated(&self, m: Mutation) -> CharPoly {
        if let Some(p) = &self.perturbed {
            return p.clone();
        }
        let (last, init) = self.terms.split_last().expect("relations have terms");
        let base = init.iter().fold(CharPoly::zero(), |acc, t| acc.add(t));
        match m {
            Mutation::Sign => base.sub(last),
            Mutation::Drop => base,
        }
    }

    /// The term a mutation changes; the mutation is detectable iff this is
    /// a nonzero function.
    pub fn mutated_term(&self) -> &CharPoly {
        self.perturbed.as_ref().unwrap_or_else(|| self.terms.last().expect("nonempty"))
    }

    /// Left-hand side (first term) and right-hand side (negated rest).
    pub fn sides(&self) -> (CharPoly, CharPoly) {
        let (first, rest) = self.terms.split_first().expect("nonempty");
        (first.clone(), rest.iter().fold(CharPoly::zero(), |acc, t| acc.sub(t)))
    }
}

impl CharAlgebra {
    /// `[e] − 2`.
    pub fn r1(&self) -> RelationInstance {
        RelationInstance::new(RelId::R1, vec![self.loop_(&Word::identity()), CharPoly::int(-2)])
    }

    /// `[p,q] + [q,p]`.
    pub fn r2(&self, p: &MarkedPoint, q: &MarkedPoint) -> RelationInstance {
        RelationInstance::new(RelId::R2, vec![self.arc(p, q), self.arc(q, p)])
    }

    /// `[gp, gq] − [p, q]`.
    pub fn r3(&self, g: &Word, p: &MarkedPoint, q: &MarkedPoint) -> RelationInstance {
        RelationInstance::new(RelId::R3, vec![self.arc(&act(g, p), &act(g, q)), self.arc(p, q).neg()])
    }

    /// `[g][h] − [gh] − [g⁻¹h]`.
    pub fn r4(&self, g: &Word, h: &Word) -> RelationInstance {
        RelationInstance::new(
            RelId::R4,
            vec![
                self.loop_(g).mul(&self.loop_(h)),
                self.loop_(&g.mul(h)).neg(),
                self.loop_(&g.inverse().mul(h)).neg(),
            ],
        )
    }

    /// `[g][p,q] − [gp, q] − [g⁻¹p, q]`.
    pub fn r5(&self, g: &Word, p: &MarkedPoint, q: &MarkedPoint) -> RelationInstance {
        RelationInstance::new(
            RelId::R5,
            vec![
                self.loop_(g).mul(&self.arc(p, q)),
                self.arc(&act(g, p), q).neg(),
                self.arc(&act(&g.inverse(), p), q).neg(),
            ],
        )
    }

    /// `[p,q][p′,q′] − [p,q′][p′,q] − [p,p′][q,q′]`.
    pub fn r6(
        &self,
        p: &MarkedPoint,
        q: &MarkedPoint,
        p2: &MarkedPoint,
        q2: &MarkedPoint,
    ) -> RelationInstance {
        RelationInstance::new(
            RelId::R6,
            vec![
                self.arc(p, q).mul(&self.arc(p2, q2)),
                self.arc(p, q2).mul(&self.arc(p2, q)).neg(),
                self.arc(p, p2).mul(&self.arc(q, q2)).neg(),
            ],
        )
    }

    /// `[p,p]`; its mutation replaces the second point by `other`.
    pub fn c7(&self, p: &MarkedPoint, other: &MarkedPoint) -> RelationInstance {
        RelationInstance {
            id: RelId::C7,
            terms: vec![self.arc(p, p)],
            perturbed: Some(self.arc(p, other)),
        }
    }

    /// `[g⁻¹] − [g]`.
    pub fn c8(&self, g: &Word) -> RelationInstance {
        RelationInstance::new(RelId::C8, vec![self.loop_(&g.inverse()), self.loop_(g).neg()])
    }

    /// `[hgh⁻¹] − [g]`.
    pub fn c9(&self, g: &Word, h: &Word) -> RelationInstance {
        RelationInstance::new(RelId::C9, vec![self.loop_(&g.conjugate_by(h)), self.loop_(g).neg()])
    }

    /// `[gⁱ] − 2Tᵢ([g]/2)`.
    pub fn c10(&self, g: &Word, i: usize) -> RelationInstance {
        RelationInstance::new(
            RelId::C10,
            vec![self.loop_(&g.pow(i as i64)), chebyshev(i, &self.loop_(g)).neg()],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn canonical_forms_make_some_relations_literal() {
        let alg = CharAlgebra::free(2, 2);
        let (p, q) = (MarkedPoint::new(w("g1"), 1), MarkedPoint::new(w("g2^-1"), 2));
        let g = w("g1 g2 g2");
        assert!(alg.r1().sum().is_zero());
        assert!(alg.r2(&p, &q).sum().is_zero());
        assert!(alg.r3(&g, &p, &q).sum().is_zero());
        assert!(alg.c7(&p, &q).sum().is_zero());
        assert!(alg.c8(&g).sum().is_zero());
        assert!(alg.c9(&g, &w("g2 g1^-1")).sum().is_zero());
        assert!(!alg.c7(&p, &q).mutated(Mutation::Sign).is_zero());
        assert!(!alg.r2(&p, &q).mutated(Mutation::Sign).is_zero());
    }

    #[test]
    fn ids_parse() {
        assert_eq!("r6".parse::<RelId>().unwrap(), RelId::R6);
        assert_eq!("C10".parse::<RelId>().unwrap(), RelId::C10);
        assert!("R7".parse::<RelId>().is_err());
    }
}
