//! Relation schemas for mixed invariants and concomitants, and the
//! generators of the kernel of ν.

use std::fmt;
use std::str::FromStr;

use super::expr::{ConExpr, InvExpr, Letter, Point, TraceWord};
use super::nu;
use crate::charalg::relations::Mutation;
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaId {
    /// Procesi's F-relation.
    F,
    /// Procesi's G-relation.
    G,
    Inv2,
    Inv3,
    /// `(A + A^ι)B = B(A + A^ι)`.
    Con1,
    /// `tr(A)B = B tr(A)`.
    Con1Tr,
    /// `ΘᵢⱼAΘᵢ′ⱼ′ = AΘᵢ′ⱼΘᵢⱼ′ − Θⱼᵢ′A^ιΘᵢⱼ′`.
    Con2,
    /// `ΘᵢⱼAΘᵢ′ⱼ′ = tr(AΘᵢ′ⱼ)Θᵢⱼ′`.
    Con2Tr,
    /// `A + A^ι = tr(A)·Id`, tying the two CON1 packagings together.
    Con1Equiv,
    /// The right-hand sides of CON2 and CON2-TR agree.
    Con2Equiv,
    Ker1,
    Ker2,
    KerCon1,
    KerCon2,
    KerCon2Alt,
    Antisym,
    Plucker,
}

impl SchemaId {
    pub const ALL: [SchemaId; 17] = [
        SchemaId::F,
        SchemaId::G,
        SchemaId::Inv2,
        SchemaId::Inv3,
        SchemaId::Con1,
        SchemaId::Con1Tr,
        SchemaId::Con2,
        SchemaId::Con2Tr,
        SchemaId::Con1Equiv,
        SchemaId::Con2Equiv,
        SchemaId::Ker1,
        SchemaId::Ker2,
        SchemaId::KerCon1,
        SchemaId::KerCon2,
        SchemaId::KerCon2Alt,
        SchemaId::Antisym,
        SchemaId::Plucker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemaId::F => "F",
            SchemaId::G => "G",
            SchemaId::Inv2 => "INV2",
            SchemaId::Inv3 => "INV3",
            SchemaId::Con1 => "CON1",
            SchemaId::Con1Tr => "CON1-TR",
            SchemaId::Con2 => "CON2",
            SchemaId::Con2Tr => "CON2-TR",
            SchemaId::Con1Equiv => "CON1-EQUIV",
            SchemaId::Con2Equiv => "CON2-EQUIV",
            SchemaId::Ker1 => "KER1",
            SchemaId::Ker2 => "KER2",
            SchemaId::KerCon1 => "KERCON1",
            SchemaId::KerCon2 => "KERCON2",
            SchemaId::KerCon2Alt => "KERCON2-ALT",
            SchemaId::Antisym => "ANTISYM",
            SchemaId::Plucker => "PLUCKER",
        }
    }

    /// `(words, indices)` expected in [`SchemaArgs`].
    pub fn shape(self) -> (usize, usize) {
        match self {
            SchemaId::F => (3, 0),
            SchemaId::G | SchemaId::Con1 | SchemaId::Con1Tr => (2, 0),
            SchemaId::Con1Equiv => (1, 0),
            SchemaId::Inv2 | SchemaId::Ker1 => (1, 2),
            SchemaId::Inv3 | SchemaId::Ker2 => (2, 4),
            SchemaId::Con2 | SchemaId::Con2Tr | SchemaId::Con2Equiv => (1, 4),
            SchemaId::KerCon1 | SchemaId::Antisym => (0, 2),
            SchemaId::KerCon2 | SchemaId::KerCon2Alt => (1, 4),
            SchemaId::Plucker => (0, 4),
        }
    }

    /// Kernel generators live over `m + n²` matrix letters and vanish only
    /// after ν.
    pub fn is_kernel(self) -> bool {
        matches!(
            self,
            SchemaId::Ker1 | SchemaId::Ker2 | SchemaId::KerCon1 | SchemaId::KerCon2 | SchemaId::KerCon2Alt
        )
    }

    /// Whether the schema mentions vector indices.
    pub fn uses_vectors(self) -> bool {
        self.shape().1 > 0
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SchemaId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(format!("unknown schema {s:?}")))
    }
}

/// Arguments: words `A, B, C…`, indices `i, j, i′, j′`, and for kernel
/// schemas the grid shape `(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchemaArgs {
    pub words: Vec<TraceWord>,
    pub indices: Vec<u32>,
    pub grid: Option<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemaExpr {
    Inv(InvExpr),
    Con(ConExpr),
}

impl SchemaExpr {
    pub fn is_zero(&self) -> bool {
        match self {
            SchemaExpr::Inv(e) => e.is_zero(),
            SchemaExpr::Con(e) => e.is_zero(),
        }
    }

    pub fn neg(&self) -> SchemaExpr {
        match self {
            SchemaExpr::Inv(e) => SchemaExpr::Inv(e.neg()),
            SchemaExpr::Con(e) => SchemaExpr::Con(e.neg()),
        }
    }

    fn add(&self, o: &SchemaExpr) -> SchemaExpr {
        match (self, o) {
            (SchemaExpr::Inv(a), SchemaExpr::Inv(b)) => SchemaExpr::Inv(a.add(b)),
            (SchemaExpr::Con(a), SchemaExpr::Con(b)) => SchemaExpr::Con(a.add(b)),
            _ => panic!("mixed invariant and concomitant terms"),
        }
    }

    fn zero_like(&self) -> SchemaExpr {
        match self {
            SchemaExpr::Inv(_) => SchemaExpr::Inv(InvExpr::zero()),
            SchemaExpr::Con(_) => SchemaExpr::Con(ConExpr::zero()),
        }
    }

    /// Values at a point: one scalar, or the four matrix entries.
    pub fn eval<F: Field>(&self, f: &F, pt: &Point<F::Elem>) -> Result<Vec<F::Elem>> {
        Ok(match self {
            SchemaExpr::Inv(e) => vec![e.eval(f, pt)?],
            SchemaExpr::Con(e) => {
                let m = e.eval(f, pt)?;
                vec![m.a, m.b, m.c, m.d]
            }
        })
    }

    pub fn degree(&self) -> usize {
        match self {
            SchemaExpr::Inv(e) => e.degree(),
            SchemaExpr::Con(e) => e.degree(),
        }
    }

    pub fn arity(&self) -> (u32, u32) {
        match self {
            SchemaExpr::Inv(e) => e.arity(),
            SchemaExpr::Con(e) => e.arity(),
        }
    }

    /// Apply ν for grid shape `(m, n)`.
    pub fn nu(&self, m: u32, n: u32) -> Result<SchemaExpr> {
        Ok(match self {
            SchemaExpr::Inv(e) => SchemaExpr::Inv(nu::nu_inv(e, m, n)?),
            SchemaExpr::Con(e) => SchemaExpr::Con(nu::nu_con(e, m, n)?),
        })
    }
}

impl fmt::Display for SchemaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaExpr::Inv(e) => write!(f, "{e}"),
            SchemaExpr::Con(e) => write!(f, "{e}"),
        }
    }
}

/// Terms of one schema instance; they sum to an expression that must
/// vanish identically (for kernel schemas: after ν).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaInstance {
    pub id: SchemaId,
    pub terms: Vec<SchemaExpr>,
}

impl SchemaInstance {
    pub fn sum(&self) -> SchemaExpr {
        self.terms.iter().fold(self.terms[0].zero_like(), |acc, t| acc.add(t))
    }

    pub fn mutated(&self, m: Mutation) -> SchemaExpr {
        let (last, init) = self.terms.split_last().expect("schemas have terms");
        let base = init.iter().fold(last.zero_like(), |acc, t| acc.add(t));
        match m {
            Mutation::Sign => base.add(&last.neg()),
            Mutation::Drop => base,
        }
    }

    pub fn mutated_term(&self) -> &SchemaExpr {
        self.terms.last().expect("schemas have terms")
    }

    /// Apply ν to every term (kernel schemas).
    pub fn nu(&self, m: u32, n: u32) -> Result<SchemaInstance> {
        Ok(SchemaInstance {
            id: self.id,
            terms: self.terms.iter().map(|t| t.nu(m, n)).collect::<Result<_>>()?,
        })
    }
}

fn th(i: u32, j: u32) -> ConExpr {
    ConExpr::letter(Letter::Th(i, j))
}

fn tr(e: &ConExpr) -> InvExpr {
    e.tr()
}

/// Build the instance of `id` at `args`.
pub fn relation_schema(id: SchemaId, args: &SchemaArgs) -> Result<SchemaInstance> {
    let (nw, ni) = id.shape();
    if args.words.len() != nw || args.indices.len() != ni {
        return Err(Error::Shape(format!(
            "{id} takes {nw} words and {ni} indices, got {} and {}",
            args.words.len(),
            args.indices.len()
        )));
    }
    if args.indices.contains(&0) {
        return Err(Error::Shape("indices start at 1".into()));
    }
    let w: Vec<ConExpr> = args.words.iter().cloned().map(ConExpr::word).collect();
    let ix = &args.indices;
    let grid = || -> Result<(u32, u32)> {
        let (m, n) = args
            .grid
            .ok_or_else(|| Error::Shape(format!("{id} needs a grid shape (m, n)")))?;
        if ix.iter().any(|&i| i > n) {
            return Err(Error::Shape(format!("index out of range for n = {n}")));
        }
        Ok((m, n))
    };
    let t = |m: u32, n: u32, i: u32, j: u32| ConExpr::letter(Letter::X(m + (i - 1) * n + j));
    let ti = |m: u32, n: u32, i: u32, j: u32| ConExpr::letter(Letter::Xi(m + (i - 1) * n + j));
    let inv = SchemaExpr::Inv;
    let con = SchemaExpr::Con;
    let id_scaled = |e: InvExpr| ConExpr::scalar(e);

    let terms = match id {
        SchemaId::F => {
            let (a, b, c) = (&w[0], &w[1], &w[2]);
            vec![
                inv(tr(&a.mul(b).mul(c))),
                inv(tr(&c.mul(b).mul(a))),
                inv(tr(a).mul(&tr(b)).mul(&tr(c))),
                inv(tr(b).mul(&tr(&a.mul(c))).neg()),
                inv(tr(&a.mul(b)).mul(&tr(c)).neg()),
                inv(tr(a).mul(&tr(&b.mul(c))).neg()),
            ]
        }
        SchemaId::G => {
            let (a, b) = (&w[0], &w[1]);
            vec![
                con(a.mul(b)),
                con(b.mul(a)),
                con(b.scale(&tr(a)).neg()),
                con(a.scale(&tr(b)).neg()),
                con(id_scaled(tr(&a.mul(b))).neg()),
                con(id_scaled(tr(a).mul(&tr(b)))),
            ]
        }
        SchemaId::Inv2 => {
            let (a, i, j) = (&w[0], ix[0], ix[1]);
            vec![
                inv(tr(&a.mul(&th(i, j)))),
                inv(tr(&a.mul(&th(j, i))).neg()),
                inv(tr(a).mul(&tr(&th(j, i)))),
            ]
        }
        SchemaId::Inv3 => {
            let (a, b) = (&w[0], &w[1]);
            let (i, j, i2, j2) = (ix[0], ix[1], ix[2], ix[3]);
            vec![
                inv(tr(&a.mul(&th(i, j)).mul(b).mul(&th(i2, j2)))),
                inv(tr(&a.mul(&th(i, j2))).mul(&tr(&b.mul(&th(i2, j)))).neg()),
            ]
        }
        SchemaId::Con1 => {
            let (a, b) = (&w[0], &w[1]);
            let s = a.add(&a.iota());
            vec![con(s.mul(b)), con(b.mul(&s).neg())]
        }
        SchemaId::Con1Tr => {
            let (a, b) = (&w[0], &w[1]);
            let s = id_scaled(tr(a));
            vec![con(s.mul(b)), con(b.mul(&s).neg())]
        }
        SchemaId::Con1Equiv => {
            let a = &w[0];
            vec![con(a.clone()), con(a.iota()), con(id_scaled(tr(a)).neg())]
        }
        SchemaId::Con2 => {
            let a = &w[0];
            let (i, j, i2, j2) = (ix[0], ix[1], ix[2], ix[3]);
            vec![
                con(th(i, j).mul(a).mul(&th(i2, j2))),
                con(a.mul(&th(i2, j)).mul(&th(i, j2)).neg()),
                con(th(j, i2).mul(&a.iota()).mul(&th(i, j2))),
            ]
        }
        SchemaId::Con2Tr => {
            let a = &w[0];
            let (i, j, i2, j2) = (ix[0], ix[1], ix[2], ix[3]);
            vec![
                con(th(i, j).mul(a).mul(&th(i2, j2))),
                con(th(i, j2).scale(&tr(&a.mul(&th(i2, j)))).neg()),
            ]
        }
        SchemaId::Con2Equiv => {
            let a = &w[0];
            let (i, j, i2, j2) = (ix[0], ix[1], ix[2], ix[3]);
            vec![
                con(a.mul(&th(i2, j)).mul(&th(i, j2))),
                con(th(j, i2).mul(&a.iota()).mul(&th(i, j2)).neg()),
                con(th(i, j2).scale(&tr(&a.mul(&th(i2, j)))).neg()),
            ]
        }
        SchemaId::Ker1 => {
            let (m, n) = grid()?;
            let (a, i, j) = (&w[0], ix[0], ix[1]);
            vec![inv(tr(&a.mul(&t(m, n, i, j)))), inv(tr(&a.mul(&ti(m, n, j, i))))]
        }
        SchemaId::Ker2 => {
            let (m, n) = grid()?;
            let (a, b) = (&w[0], &w[1]);
            let (i, j, i2, j2) = (ix[0], ix[1], ix[2], ix[3]);
            vec![
                inv(tr(&a.mul(&t(m, n, i, j)).mul(b).mul(&t(m, n, i2, j2)))),
                inv(tr(&a.mul(&t(m, n, i, j2))).mul(&tr(&b.mul(&t(m, n, i2, j)))).neg()),
            ]
        }
        SchemaId::KerCon1 => {
            let (m, n) = grid()?;
            let (i, j) = (ix[0], ix[1]);
            vec![con(t(m, n, i, j)), con(ti(m, n, j, i))]
        }
        SchemaId::KerCon2 => {
            let (m, n) = grid()?;
            let b = &w[0];
            let (i, j, i2, j2) = (ix[0], ix[1], ix[2], ix[3]);
            vec![
                con(t(m, n, i, j).mul(b).mul(&t(m, n, i2, j2))),
                con(t(m, n, i, j2).scale(&tr(&b.mul(&t(m, n, i2, j)))).neg()),
            ]
        }
        SchemaId::KerCon2Alt => {
            let (m, n) = grid()?;
            let b = &w[0];
            let (i, j, i2, j2) = (ix[0], ix[1], ix[2], ix[3]);
            vec![
                con(t(m, n, i, j).mul(b).mul(&t(m, n, i2, j2))),
                con(b.mul(&t(m, n, i2, j)).mul(&t(m, n, i, j2)).neg()),
                con(ti(m, n, i2, j).mul(&b.iota()).mul(&t(m, n, i, j2)).neg()),
            ]
        }
        SchemaId::Antisym => {
            let (i, j) = (ix[0], ix[1]);
            vec![inv(tr(&th(i, j))), inv(tr(&th(j, i)))]
        }
        SchemaId::Plucker => {
            let (i, j, i2, j2) = (ix[0], ix[1], ix[2], ix[3]);
            let p = |a, b, c, d| tr(&th(a, b)).mul(&tr(&th(c, d)));
            vec![inv(p(i, j, i2, j2)), inv(p(i, j2, i2, j).neg()), inv(p(i, i2, j, j2).neg())]
        }
    };
    Ok(SchemaInstance { id, terms })
}
