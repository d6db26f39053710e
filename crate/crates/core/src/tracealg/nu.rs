//! The substitution ν: the last `n²` matrix letters go to the grid of
//! outer products `Θ(j, k)`.

use super::expr::{ConExpr, InvExpr, Letter, Point, TraceWord};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg2::outer;

/// Image of one letter as `(negated, letter)`.
pub fn nu_letter(l: Letter, m: u32, n: u32) -> Result<(bool, Letter)> {
    let grid = |i: u32| -> Result<(u32, u32)> {
        let r = i - m - 1;
        if r >= n * n {
            return Err(Error::Dimension(format!(
                "letter index {i} exceeds source arity {} = {m} + {n}^2",
                m + n * n
            )));
        }
        Ok((r / n + 1, r % n + 1))
    };
    match l {
        Letter::X(i) if i <= m => Ok((false, l)),
        Letter::Xi(i) if i <= m => Ok((false, l)),
        Letter::X(i) => {
            let (j, k) = grid(i)?;
            Ok((false, Letter::Th(j, k)))
        }
        Letter::Xi(i) => {
            let (j, k) = grid(i)?;
            Ok((true, Letter::Th(k, j)))
        }
        Letter::Th(..) => Err(Error::Dimension(
            "ν is defined on matrix letters only; found an outer-product letter".into(),
        )),
    }
}

pub fn nu_word(w: &TraceWord, m: u32, n: u32) -> Result<(bool, TraceWord)> {
    let mut neg = false;
    let letters = w
        .letters()
        .iter()
        .map(|&l| {
            let (s, l) = nu_letter(l, m, n)?;
            neg ^= s;
            Ok(l)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((neg, TraceWord(letters)))
}

pub fn nu_inv(e: &InvExpr, m: u32, n: u32) -> Result<InvExpr> {
    let mut out = InvExpr::zero();
    for (mono, c) in e.terms() {
        let mut t = InvExpr::constant(c.clone());
        for w in mono {
            let (neg, w2) = nu_word(w, m, n)?;
            let s = InvExpr::tr(&w2);
            t = t.mul(&if neg { s.neg() } else { s });
        }
        out = out.add(&t);
    }
    Ok(out)
}

pub fn nu_con(e: &ConExpr, m: u32, n: u32) -> Result<ConExpr> {
    let mut out = ConExpr::zero();
    for (w, c) in e.terms() {
        let (neg, w2) = nu_word(w, m, n)?;
        let c2 = nu_inv(c, m, n)?;
        out = out.add(&ConExpr::scaled_word(w2, if neg { c2.neg() } else { c2 }));
    }
    Ok(out)
}

/// `(A, v) ↦ (A, [Θ(v_j, v_k)]_{j,k})`, the point at which the source
/// expression is evaluated in the naturality square.
pub fn grid_point<E: Scalar>(pt: &Point<E>) -> Point<E> {
    let mut mats = pt.mats.clone();
    for vj in &pt.vecs {
        for vk in &pt.vecs {
            mats.push(outer(vj, vk));
        }
    }
    Point { mats, vecs: Vec::new() }
}
