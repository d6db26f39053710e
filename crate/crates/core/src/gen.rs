//! Random words, points, monomials and trace words for test batteries.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::charalg::{CharAlgebra, Monomial, Symbol};
use crate::groupact::{GenSym, MarkedPoint, Word};
use crate::tracealg::{Letter, TgLetter, TgWord, TraceWord};

/// A reduced word of length exactly `len` (no cancelling neighbours).
pub fn word_of_len<R: Rng + ?Sized>(rng: &mut R, m: u32, len: usize) -> Word {
    if m == 0 {
        return Word::identity();
    }
    let mut letters: Vec<GenSym> = Vec::with_capacity(len);
    while letters.len() < len {
        let s = GenSym::new(rng.gen_range(1..=m), rng.gen_bool(0.5));
        if letters.last().map_or(true, |&l| l != s.inv()) {
            letters.push(s);
        }
    }
    Word::from_letters(letters)
}

/// A reduced word of length uniform in `0..=max_len`.
pub fn word<R: Rng + ?Sized>(rng: &mut R, m: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    word_of_len(rng, m, len)
}

/// A reduced word of length uniform in `1..=max_len` (identity if `m = 0`).
pub fn nonempty_word<R: Rng + ?Sized>(rng: &mut R, m: u32, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len.max(1));
    word_of_len(rng, m, len)
}

pub fn point<R: Rng + ?Sized>(rng: &mut R, m: u32, n: u32, max_len: usize) -> MarkedPoint {
    MarkedPoint::new(word(rng, m, max_len), rng.gen_range(1..=n))
}

/// `k` pairwise distinct points. With `m = 0` there are only `n` points,
/// so `k` must not exceed `n` there.
pub fn distinct_points<R: Rng + ?Sized>(
    rng: &mut R,
    m: u32,
    n: u32,
    max_len: usize,
    k: usize,
) -> Vec<MarkedPoint> {
    assert!(m > 0 || k <= n as usize, "not enough points");
    let mut out: Vec<MarkedPoint> = Vec::with_capacity(k);
    while out.len() < k {
        let p = point(rng, m, n, max_len);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// A random loop or arc symbol (canonical for free algebras). Returns
/// `None` for symbols that collapse to constants.
pub fn symbol<R: Rng + ?Sized>(
    rng: &mut R,
    alg: &CharAlgebra,
    max_len: usize,
) -> Option<Symbol> {
    let (m, n) = (alg.presentation().generators, alg.presentation().orbits);
    let want_loop = n == 0 || (m > 0 && rng.gen_bool(0.5));
    let poly = if want_loop {
        alg.loop_(&nonempty_word(rng, m, max_len))
    } else {
        if m == 0 && n < 2 {
            return None;
        }
        let pts = distinct_points(rng, m, n, max_len, 2);
        alg.arc(&pts[0], &pts[1])
    };
    let (mono, _) = poly.terms().next()?;
    (mono.len() == 1).then(|| mono.symbols()[0].clone())
}

/// A monomial with exactly `degree` nonconstant symbols.
pub fn monomial<R: Rng + ?Sized>(
    rng: &mut R,
    alg: &CharAlgebra,
    degree: usize,
    max_len: usize,
) -> Monomial {
    let mut syms = Vec::with_capacity(degree);
    while syms.len() < degree {
        if let Some(s) = symbol(rng, alg, max_len) {
            syms.push(s);
        }
    }
    Monomial::from_symbols(syms)
}

/// A word in `X_g` and `Θ_{pq}` with `len` letters.
pub fn tg_word<R: Rng + ?Sized>(rng: &mut R, m: u32, n: u32, len: usize, max_len: usize) -> TgWord {
    let letters = (0..len)
        .map(|_| {
            if n == 0 || (m > 0 && rng.gen_bool(0.5)) {
                TgLetter::X(nonempty_word(rng, m, max_len))
            } else {
                TgLetter::Th(point(rng, m, n, max_len), point(rng, m, n, max_len))
            }
        })
        .collect();
    TgWord::from_letters(letters)
}

/// All letters available at arity `(m, n)`.
pub fn trace_alphabet(m: u32, n: u32, adjoints: bool) -> Vec<Letter> {
    let mut out: Vec<Letter> = (1..=m).map(Letter::X).collect();
    if adjoints {
        out.extend((1..=m).map(Letter::Xi));
    }
    for j in 1..=n {
        out.extend((1..=n).map(|k| Letter::Th(j, k)));
    }
    out
}

/// A trace word of length `len` over `alphabet`.
pub fn trace_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &[Letter], len: usize) -> TraceWord {
    TraceWord((0..len).map(|_| *alphabet.choose(rng).expect("nonempty alphabet")).collect())
}
