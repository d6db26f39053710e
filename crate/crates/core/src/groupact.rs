//! Finitely generated group actions: words, free and cyclic reduction,
//! canonical loop labels, marked points and presentations.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// A generator `g_index` or its formal inverse. Ordered `g1 < g1⁻¹ < g2 < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSym {
    pub index: u32,
    pub inverse: bool,
}

impl GenSym {
    pub fn new(index: u32, inverse: bool) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        GenSym { index, inverse }
    }

    pub fn inv(self) -> Self {
        GenSym { index: self.index, inverse: !self.inverse }
    }

    fn cancels(self, o: GenSym) -> bool {
        self.index == o.index && self.inverse != o.inverse
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.index)
        } else {
            write!(f, "g{}", self.index)
        }
    }
}

/// A free-reduced word. Ordered by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<GenSym>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(index: u32) -> Self {
        Word(vec![GenSym::new(index, false)])
    }

    /// Free-reduce an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = GenSym>>(letters: I) -> Self {
        let mut out: Vec<GenSym> = Vec::new();
        for s in letters {
            match out.last() {
                Some(&t) if t.cancels(s) => {
                    out.pop();
                }
                _ => out.push(s),
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[GenSym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|s| s.index).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.inv()).collect())
    }

    pub fn mul(&self, o: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(o.0.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Conjugate `u·self·u⁻¹`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.inverse())
    }

    /// Strip matching first/last letters until cyclically reduced.
    pub fn cyclic_reduce(&self) -> Word {
        let s = &self.0;
        let (mut i, mut j) = (0, s.len());
        while j >= i + 2 && s[i].cancels(s[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// Rotate left by `k` positions (the word is treated cyclically; the
    /// result is free-reduced, so rotations of a non-cyclically-reduced
    /// word may shorten).
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        Word::from_letters(self.0[k..].iter().chain(self.0[..k].iter()).copied())
    }

    /// Least cyclic rotation of this word or its inverse, after cyclic
    /// reduction. Two words are conjugate-or-inverse in a free group iff
    /// these agree.
    pub fn cyclic_canonical(&self) -> Word {
        let c = self.cyclic_reduce();
        if c.is_empty() {
            return c;
        }
        let ci = c.inverse();
        let n = c.len();
        (0..n)
            .flat_map(|k| [c.rotate(k), ci.rotate(k)])
            .min()
            .expect("nonempty word has rotations")
    }

    /// If this word is `u^k` with `k ≥ 2` (as a literal letter sequence),
    /// return the shortest such `(u, k)`.
    pub fn primitive_root(&self) -> Option<(Word, usize)> {
        let n = self.0.len();
        (1..n)
            .filter(|d| n % d == 0)
            .find(|&d| (d..n).all(|i| self.0[i] == self.0[i - d]))
            .map(|d| (Word(self.0[..d].to_vec()), n / d))
    }

    pub fn parse(s: &str) -> std::result::Result<Word, ParseError> {
        Word::parse_with(s, 0, &default_generator_name)
    }

    /// Parse whitespace-separated tokens `NAME`, `NAME^-1`, `NAME^k`, or `e`.
    /// `offset` shifts reported positions (for embedding in larger inputs).
    pub fn parse_with(
        s: &str,
        offset: usize,
        resolve: &dyn Fn(&str) -> Option<u32>,
    ) -> std::result::Result<Word, ParseError> {
        let mut letters = Vec::new();
        let mut pos = 0;
        for tok in s.split_whitespace() {
            let start = offset + pos + s[pos..].find(tok).unwrap_or(0);
            pos = start - offset + tok.len();
            if tok == "e" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| {
                        ParseError::new(start + n.len() + 1, format!("bad exponent in {tok:?}"))
                    })?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let index = resolve(name)
                .ok_or_else(|| ParseError::new(start, format!("unknown generator {name:?}")))?;
            let sym = GenSym::new(index, exp < 0);
            letters.extend(std::iter::repeat(sym).take(exp.unsigned_abs() as usize));
        }
        Ok(Word::from_letters(letters))
    }
}

/// Resolves `gK` (K ≥ 1) to K.
pub fn default_generator_name(name: &str) -> Option<u32> {
    let k: u32 = name.strip_prefix('g')?.parse().ok()?;
    (k >= 1).then_some(k)
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The point `prefix · p_orbit`. Ordered by orbit, then prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPoint {
    pub prefix: Word,
    pub orbit: u32,
}

impl MarkedPoint {
    pub fn new(prefix: Word, orbit: u32) -> Self {
        assert!(orbit >= 1, "orbit indices start at 1");
        MarkedPoint { prefix, orbit }
    }

    pub fn base(orbit: u32) -> Self {
        MarkedPoint::new(Word::identity(), orbit)
    }
}

impl Ord for MarkedPoint {
    fn cmp(&self, o: &Self) -> Ordering {
        self.orbit.cmp(&o.orbit).then_with(|| self.prefix.cmp(&o.prefix))
    }
}

impl PartialOrd for MarkedPoint {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for MarkedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.p{}", self.prefix, self.orbit)
    }
}

/// `g · p`.
pub fn act(g: &Word, p: &MarkedPoint) -> MarkedPoint {
    MarkedPoint { prefix: g.mul(&p.prefix), orbit: p.orbit }
}

/// A presentation of a finitely generated group action (G, M).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: u32,
    pub relators: Vec<Word>,
    pub orbits: u32,
    /// One list per orbit (index 0 is orbit 1).
    pub stabilizers: Vec<Vec<Word>>,
}

impl Presentation {
    /// The free action of the free group of rank `m` on `n` free orbits.
    pub fn free(generators: u32, orbits: u32) -> Self {
        Presentation {
            generators,
            relators: Vec::new(),
            orbits,
            stabilizers: vec![Vec::new(); orbits as usize],
        }
    }

    pub fn new(
        generators: u32,
        relators: Vec<Word>,
        orbits: u32,
        stabilizers: Vec<Vec<Word>>,
    ) -> Result<Self> {
        let stabilizers = if stabilizers.is_empty() {
            vec![Vec::new(); orbits as usize]
        } else {
            stabilizers
        };
        if stabilizers.len() != orbits as usize {
            return Err(Error::Invalid(format!(
                "{} stabilizer lists for {} orbits",
                stabilizers.len(),
                orbits
            )));
        }
        let p = Presentation { generators, relators, orbits, stabilizers };
        for r in &p.relators {
            if r.is_identity() {
                return Err(Error::Invalid("relator reduces to the empty word".into()));
            }
            p.check_word(r)?;
        }
        for w in p.stabilizers.iter().flatten() {
            p.check_word(w)?;
        }
        Ok(p)
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty() && self.stabilizers.iter().all(Vec::is_empty)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|s| s.index > self.generators) {
            Some(s) => Err(Error::Invalid(format!(
                "generator g{} out of range (presentation has {})",
                s.index, self.generators
            ))),
            None => Ok(()),
        }
    }

    pub fn check_point(&self, p: &MarkedPoint) -> Result<()> {
        if p.orbit > self.orbits {
            return Err(Error::Invalid(format!(
                "orbit p{} out of range (presentation has {})",
                p.orbit, self.orbits
            )));
        }
        self.check_word(&p.prefix)
    }

    /// Canonical representative of the conjugacy-and-inversion class of `w`.
    pub fn loop_canon(&self, w: &Word) -> Result<Word> {
        if !self.is_free() {
            return Err(Error::Unsupported(
                "canonical loop forms need a free presentation; use oracle equality".into(),
            ));
        }
        Ok(w.cyclic_canonical())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(s)?;
        file.into_presentation()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let words = |ws: &[Word]| ws.iter().map(Word::to_string).collect::<Vec<_>>();
        serde_json::json!({
            "generators": self.generators,
            "relators": words(&self.relators),
            "orbits": self.orbits,
            "stabilizers": self.stabilizers.iter().map(|s| words(s)).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PresentationFile {
    generators: u32,
    #[serde(default)]
    relators: Vec<String>,
    #[serde(default)]
    orbits: u32,
    #[serde(default)]
    stabilizers: Vec<Vec<String>>,
}

impl PresentationFile {
    fn into_presentation(self) -> Result<Presentation> {
        let parse = |s: &String| Word::parse(s).map_err(Error::from);
        let relators = self.relators.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let stabilizers = self
            .stabilizers
            .iter()
            .map(|ws| ws.iter().map(parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(self.generators, relators, self.orbits, stabilizers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("g1 g2 g2^-1"), w("g1"));
        assert_eq!(w("e"), Word::identity());
        assert_eq!(w("g1^-1 g1 g1"), w("g1"));
        assert_eq!(w("g1^3").len(), 3);
    }

    #[test]
    fn loop_canon_examples() {
        let pres = Presentation::free(2, 0);
        assert_eq!(pres.loop_canon(&w("g2^-1 g1 g2")).unwrap(), w("g1"));
        assert_eq!(pres.loop_canon(&w("g1^-1")).unwrap(), w("g1"));
        assert_eq!(pres.loop_canon(&w("g2 g1")).unwrap(), w("g1 g2"));
        let nonfree = Presentation::new(1, vec![w("g1^2")], 0, vec![]).unwrap();
        assert!(nonfree.loop_canon(&w("g1")).is_err());
    }

    #[test]
    fn act_examples() {
        let p = MarkedPoint::base(1);
        assert_eq!(act(&w("g1"), &p), MarkedPoint::new(w("g1"), 1));
        assert_eq!(act(&w("g1^-1"), &MarkedPoint::new(w("g1"), 2)), MarkedPoint::base(2));
        assert_eq!(act(&Word::identity(), &p), p);
    }

    #[test]
    fn order_and_display() {
        assert!(GenSym::new(1, false) < GenSym::new(1, true));
        assert!(GenSym::new(1, true) < GenSym::new(2, false));
        assert!(w("g2") < w("g1 g1"));
        assert_eq!(w("g1 g2^-1").to_string(), "g1 g2^-1");
        assert_eq!(MarkedPoint::new(w("g1"), 2).to_string(), "g1.p2");
    }

    #[test]
    fn parse_errors_report_positions() {
        let err = Word::parse("g1 h2").unwrap_err();
        assert_eq!(err.pos, 3);
        let err = Word::parse("g1 g2^x").unwrap_err();
        assert_eq!(err.pos, 6);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(w("g1 g2 g1 g2").primitive_root(), Some((w("g1 g2"), 2)));
        assert_eq!(w("g1 g1 g1").primitive_root(), Some((w("g1"), 3)));
        assert_eq!(w("g1 g2 g1").primitive_root(), None);
    }

    #[test]
    fn presentation_json() {
        let p = Presentation::from_json(
            r#"{"generators": 2, "relators": ["g1 g2 g1^-1 g2^-1"], "orbits": 2, "stabilizers": [["g1"], []]}"#,
        )
        .unwrap();
        assert!(!p.is_free());
        assert_eq!(p.stabilizers[0], vec![w("g1")]);
        assert_eq!(Presentation::from_json(&p.to_json().to_string()).unwrap(), p);
        assert!(Presentation::from_json(r#"{"generators": 1, "relators": ["g3"]}"#).is_err());
        assert!(Presentation::from_json(r#"{"generators": 1, "orbits": 2, "stabilizers": [[]]}"#).is_err());
        assert!(Presentation::from_json(r#"{"generators": 2, "orbits": 1}"#).unwrap().is_free());
    }

    fn arb_word(m: u32, len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((1..=m, any::<bool>()), 0..=len)
            .prop_map(|v| Word::from_letters(v.into_iter().map(|(i, b)| GenSym::new(i, b))))
    }

    proptest! {
        #[test]
        fn reduce_is_a_homomorphism(u in arb_word(3, 8), v in arb_word(3, 8)) {
            let raw: Vec<GenSym> = u.letters().iter().chain(v.letters()).copied().collect();
            let r = Word::from_letters(raw);
            prop_assert_eq!(Word::from_letters(r.letters().to_vec()), r.clone());
            prop_assert_eq!(r, u.mul(&v));
            prop_assert!(u.mul(&u.inverse()).is_identity());
        }

        #[test]
        fn loop_canon_invariance(x in arb_word(3, 8), u in arb_word(3, 6)) {
            let c = x.cyclic_canonical();
            prop_assert_eq!(x.inverse().cyclic_canonical(), c.clone());
            prop_assert_eq!(x.conjugate_by(&u).cyclic_canonical(), c.clone());
            prop_assert!(c.len() <= x.len());
        }

        #[test]
        fn action_is_associative(g in arb_word(2, 5), h in arb_word(2, 5), u in arb_word(2, 5)) {
            let p = MarkedPoint::new(u, 1);
            prop_assert_eq!(act(&g, &act(&h, &p)), act(&g.mul(&h), &p));
        }
    }
}
