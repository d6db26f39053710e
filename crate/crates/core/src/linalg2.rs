//! Exact 2×2 linear algebra: ω, Θ, ι and SL₂ sampling.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Vec2<E> {
    pub x: E,
    pub y: E,
}

impl<E: Scalar> Vec2<E> {
    pub fn new(x: E, y: E) -> Self {
        Vec2 { x, y }
    }

    pub fn zero<F: Field<Elem = E>>(f: &F) -> Self {
        Vec2::new(f.zero(), f.zero())
    }

    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(f: &F, rng: &mut R) -> Self {
        let x = f.random(rng);
        Vec2::new(x, f.random(rng))
    }

    pub fn scale(&self, s: &E) -> Self {
        Vec2::new(s.clone() * self.x.clone(), s.clone() * self.y.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Vec2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }
}

impl<E: fmt::Display> fmt::Display for Vec2<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E: Scalar> Mat2<E> {
    pub fn new(a: E, b: E, c: E, d: E) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F) -> Self {
        Mat2::scalar(f.one(), f)
    }

    pub fn zero<F: Field<Elem = E>>(f: &F) -> Self {
        Mat2::new(f.zero(), f.zero(), f.zero(), f.zero())
    }

    pub fn scalar<F: Field<Elem = E>>(s: E, f: &F) -> Self {
        Mat2::new(s.clone(), f.zero(), f.zero(), s)
    }

    /// Four independent uniform entries (a general element of End(V)).
    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(f: &F, rng: &mut R) -> Self {
        let a = f.random(rng);
        let b = f.random(rng);
        let c = f.random(rng);
        Mat2::new(a, b, c, f.random(rng))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Mat2::new(
            a.clone() * o.a.clone() + b.clone() * o.c.clone(),
            a.clone() * o.b.clone() + b.clone() * o.d.clone(),
            c.clone() * o.a.clone() + d.clone() * o.c.clone(),
            c.clone() * o.b.clone() + d.clone() * o.d.clone(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2::new(
            self.a.clone() + o.a.clone(),
            self.b.clone() + o.b.clone(),
            self.c.clone() + o.c.clone(),
            self.d.clone() + o.d.clone(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Mat2::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn scale(&self, s: &E) -> Self {
        Mat2::new(
            s.clone() * self.a.clone(),
            s.clone() * self.b.clone(),
            s.clone() * self.c.clone(),
            s.clone() * self.d.clone(),
        )
    }

    pub fn apply(&self, v: &Vec2<E>) -> Vec2<E> {
        Vec2::new(
            self.a.clone() * v.x.clone() + self.b.clone() * v.y.clone(),
            self.c.clone() * v.x.clone() + self.d.clone() * v.y.clone(),
        )
    }

    pub fn trace(&self) -> E {
        self.a.clone() + self.d.clone()
    }

    pub fn det(&self) -> E {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// The adjoint `[[d, -b], [-c, a]]`; equals the inverse on SL₂.
    pub fn iota(&self) -> Self {
        Mat2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Result<Self> {
        let det = self.det();
        let inv = f.inv(&det)?;
        Ok(self.iota().scale(&inv))
    }

    pub fn is_sl2<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.det() == f.one()
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|x| f.is_zero(x))
    }
}

impl<E: fmt::Display> fmt::Display for Mat2<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// ω(u, v) = x_u·y_v − x_v·y_u.
pub fn omega<E: Scalar>(u: &Vec2<E>, v: &Vec2<E>) -> E {
    u.x.clone() * v.y.clone() - v.x.clone() * u.y.clone()
}

/// Θ(v, w) = v·ω(w, −), the rank ≤ 1 matrix with trace −ω(v, w).
pub fn outer<E: Scalar>(v: &Vec2<E>, w: &Vec2<E>) -> Mat2<E> {
    let (nyw, xw) = (-w.y.clone(), w.x.clone());
    Mat2::new(
        v.x.clone() * nyw.clone(),
        v.x.clone() * xw.clone(),
        v.y.clone() * nyw,
        v.y.clone() * xw,
    )
}

/// Uniform-ish element of SL₂: `a, b, c` uniform with `a ≠ 0`, `d = (1 + bc)/a`.
pub fn sample_sl2<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R) -> Result<Mat2<F::Elem>> {
    if !f.supports_sampling() {
        return Err(Error::Config(format!(
            "field {} is too small for SL2 sampling",
            f.name()
        )));
    }
    let a = loop {
        let a = f.random(rng);
        if !f.is_zero(&a) {
            break a;
        }
    };
    let b = f.random(rng);
    let c = f.random(rng);
    let d = f.div(&(f.one() + b.clone() * c.clone()), &a)?;
    Ok(Mat2::new(a, b, c, d))
}
