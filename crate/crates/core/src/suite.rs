//! The relation battery behind `check-presentation`: every relation of the
//! character algebra, every trace-algebra schema and the ideal generators
//! of the matrix-valued algebra, instantiated with random arguments and
//! checked by the oracle. Optionally one family is corrupted on purpose.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::charalg::relations::{Mutation, RelId, RelationInstance};
use crate::charalg::{CharAlgebra, CharPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gen;
use crate::groupact::{MarkedPoint, Word};
use crate::oracle::{self, OracleConfig, Verdict};
use crate::rep::{sample_rep, Rep};
use crate::tracealg::tgm2::{stabilizer_relation, theta_contract, tr_central};
use crate::tracealg::{relation_schema, Point, SchemaArgs, SchemaExpr, SchemaId, TgExpr, TraceWord};

/// Ideal generators of the matrix-valued character algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TgRel {
    TrCentral,
    ThetaContract,
    Stab,
}

impl TgRel {
    pub const ALL: [TgRel; 3] = [TgRel::TrCentral, TgRel::ThetaContract, TgRel::Stab];

    pub fn name(self) -> &'static str {
        match self {
            TgRel::TrCentral => "TR-CENTRAL",
            TgRel::ThetaContract => "THETA-CONTRACT",
            TgRel::Stab => "STAB",
        }
    }
}

/// One family of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Rel(RelId),
    Schema(SchemaId),
    Tg(TgRel),
}

impl Target {
    pub fn all() -> Vec<Target> {
        RelId::ALL
            .into_iter()
            .map(Target::Rel)
            .chain(SchemaId::ALL.into_iter().map(Target::Schema))
            .chain(TgRel::ALL.into_iter().map(Target::Tg))
            .collect()
    }

    pub fn family(self) -> &'static str {
        match self {
            Target::Rel(_) => "charalg",
            Target::Schema(_) => "tracealg",
            Target::Tg(_) => "tgm2",
        }
    }

    fn salt(self) -> u64 {
        self.to_string()
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Rel(r) => write!(f, "{r}"),
            Target::Schema(s) => write!(f, "{s}"),
            Target::Tg(t) => write!(f, "{}", t.name()),
        }
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(r) = s.parse::<RelId>() {
            return Ok(Target::Rel(r));
        }
        if let Ok(x) = s.parse::<SchemaId>() {
            return Ok(Target::Schema(x));
        }
        TgRel::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .map(Target::Tg)
            .ok_or_else(|| Error::Invalid(format!("unknown relation family {s:?}")))
    }
}

/// A corruption request such as `R6-sign` or `CON1-TR-drop`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MutationSpec {
    pub target: Target,
    pub kind: Mutation,
}

impl FromStr for MutationSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (t, k) = s
            .rsplit_once('-')
            .ok_or_else(|| Error::Invalid(format!("expected FAMILY-sign or FAMILY-drop, got {s:?}")))?;
        Ok(MutationSpec { target: t.parse()?, kind: k.to_ascii_lowercase().parse()? })
    }
}

impl fmt::Display for MutationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Mutation::Sign => "sign",
            Mutation::Drop => "drop",
        };
        write!(f, "{}-{k}", self.target)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub oracle: OracleConfig,
    pub max_word_len: usize,
    /// Random instances per family.
    pub instances: usize,
    pub mutate: Option<MutationSpec>,
    /// Restrict the run to one family.
    pub only: Option<Target>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            oracle: OracleConfig::default(),
            max_word_len: 4,
            instances: 4,
            mutate: None,
            only: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub instance: String,
    pub sample: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub target: Target,
    pub instances: usize,
    pub mutated: bool,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
    pub field: String,
    pub samples: usize,
    pub seed: u64,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.results.iter().map(|r| r.failures.len()).sum()
    }

    pub fn instances(&self) -> usize {
        self.results.iter().map(|r| r.instances).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "samples": self.samples,
            "seed": self.seed,
            "instances": self.instances(),
            "failures": self.failures(),
            "families": self.results.iter().map(|r| json!({
                "family": r.target.family(),
                "name": r.target.to_string(),
                "instances": r.instances,
                "mutated": r.mutated,
                "failures": r.failures.iter().map(|f| json!({
                    "instance": f.instance,
                    "sample": f.sample,
                    "lhs": f.lhs,
                    "rhs": f.rhs,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}, {} samples, seed {}", self.field, self.samples, self.seed)?;
        for r in &self.results {
            let status = if r.failures.is_empty() { "ok" } else { "FAIL" };
            let tag = if r.mutated { " (mutated)" } else { "" };
            writeln!(
                f,
                "  {:<8} {:<14} {:>3} instances  {}{tag}",
                r.target.family(),
                r.target.to_string(),
                r.instances,
                status
            )?;
            for x in &r.failures {
                writeln!(f, "    witness at sample {}: {}", x.sample, x.instance)?;
                writeln!(f, "      lhs = {}, rhs = {}", x.lhs, x.rhs)?;
            }
        }
        let fams = self.results.len();
        if self.failures() == 0 {
            write!(f, "all {fams} families pass ({} instances), 0 failures", self.instances())
        } else {
            write!(f, "{} failures across {fams} families", self.failures())
        }
    }
}

/// Draws used to reject vacuous mutations (a corrupted term that is the
/// zero function cannot be detected).
const PROBE_TRIES: usize = 32;

fn joined<E: fmt::Display>(v: &[E]) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        format!("[{}]", v.iter().map(E::to_string).collect::<Vec<_>>().join(", "))
    }
}

fn record<S, E: fmt::Display>(
    v: Verdict<S, E>,
    instance: impl FnOnce() -> String,
    out: &mut Vec<Failure>,
) {
    if let Verdict::Unequal { sample, lhs, rhs, .. } = v {
        out.push(Failure { instance: instance(), sample, lhs: joined(&lhs), rhs: joined(&rhs) });
    }
}

/// Run the battery. Character-algebra and 𝒯-relations are evaluated on
/// representations of `alg` (sampled when free, else drawn from
/// `library`); trace schemas on points of End(V)^m ⊕ V^n with `m, n`
/// capped at 3. Sessions with no generators run only the relations that
/// make sense there (the Plücker suite).
pub fn check_presentation<F: Field>(
    field: &F,
    alg: &CharAlgebra,
    library: &[Rep<F::Elem>],
    cfg: &SuiteConfig,
) -> Result<SuiteReport> {
    let pres = alg.presentation();
    if !pres.is_free() && library.is_empty() {
        return Err(Error::Unsupported(
            "non-free presentation without provided representations".into(),
        ));
    }
    let (m, n) = (pres.generators, pres.orbits);
    let mut results = Vec::new();
    for target in Target::all() {
        if cfg.only.is_some_and(|o| o != target) || !applicable(target, alg) {
            continue;
        }
        let mutate = cfg.mutate.filter(|s| s.target == target).map(|s| s.kind);
        let fam = cfg.oracle.derived(target.salt());
        let mut failures = Vec::new();
        for i in 0..cfg.instances {
            let mut rng = fam.rng(i);
            let ocfg = fam.derived(i as u64 + 1);
            match target {
                Target::Rel(id) => {
                    let inst = pick(mutate, &mut rng, |rng| rel_instance(alg, id, rng, cfg.max_word_len), |r, probe| {
                        let term = r.mutated_term();
                        rep_probe(field, alg, library, probe)
                            .and_then(|rep| term.eval(field, &rep).ok())
                            .is_some_and(|v| !field.is_zero(&v))
                    })?;
                    let expr = match mutate {
                        Some(k) => inst.mutated(k),
                        None => inst.sum(),
                    };
                    let v = alg.equal(&expr, &CharPoly::zero(), field, library, &ocfg)?;
                    record(v, || describe_rel(&inst), &mut failures);
                }
                Target::Schema(id) => {
                    let (pm, pn) = (m.min(3), n.min(3));
                    let inst = pick(mutate, &mut rng, |rng| schema_instance(id, rng, pm, pn, 4), |s, probe| {
                        let pt = Point::random(field, pm, pn, probe);
                        s.mutated_term().eval(field, &pt).is_ok_and(|v| v.iter().any(|x| !field.is_zero(x)))
                    })?;
                    let expr = match mutate {
                        Some(k) => inst.mutated(k),
                        None => inst.sum(),
                    };
                    let v = check_schema_expr(field, &expr, pm, pn, &ocfg)?;
                    record(v, || format!("{id}: {}", inst.terms.iter().map(|t| format!("({t})")).collect::<Vec<_>>().join(" + ")), &mut failures);
                }
                Target::Tg(t) => {
                    let terms = pick(mutate, &mut rng, |rng| tg_instance(alg, t, rng, cfg.max_word_len), |terms, probe| {
                        rep_probe(field, alg, library, probe)
                            .and_then(|rep| terms.last()?.eval(field, &rep).ok())
                            .is_some_and(|v| !v.is_zero(field))
                    })?;
                    let expr = match mutate {
                        Some(Mutation::Sign) => terms[0].sub(&terms[1]),
                        Some(Mutation::Drop) => terms[0].clone(),
                        None => terms[0].add(&terms[1]),
                    };
                    let v = check_tg_expr(field, alg, library, &expr, &ocfg)?;
                    record(v, || format!("{}: ({}) + ({})", t.name(), terms[0], terms[1]), &mut failures);
                }
            }
        }
        results.push(CheckResult { target, instances: cfg.instances, mutated: mutate.is_some(), failures });
    }
    Ok(SuiteReport {
        results,
        field: field.name(),
        samples: cfg.oracle.samples,
        seed: cfg.oracle.seed,
    })
}

fn applicable(target: Target, alg: &CharAlgebra) -> bool {
    let pres = alg.presentation();
    let (m, n) = (pres.generators, pres.orbits);
    match target {
        Target::Rel(id) => !(id.needs_generators() && m == 0 || id.needs_points() && n == 0),
        Target::Schema(id) => {
            if matches!(id, SchemaId::Antisym | SchemaId::Plucker) {
                n > 0
            } else if m == 0 {
                false
            } else {
                !id.uses_vectors() || n > 0
            }
        }
        Target::Tg(TgRel::TrCentral) => m > 0 || n > 0,
        Target::Tg(TgRel::ThetaContract) => n > 0,
        Target::Tg(TgRel::Stab) => n > 0 && pres.stabilizers.iter().any(|s| !s.is_empty()),
    }
}

/// Draw an instance; when mutating, redraw until the corrupted term is
/// visibly nonzero on a probe (bounded number of attempts).
fn pick<T>(
    mutate: Option<Mutation>,
    rng: &mut ChaCha8Rng,
    mut build: impl FnMut(&mut ChaCha8Rng) -> Result<T>,
    nonvacuous: impl Fn(&T, &mut ChaCha8Rng) -> bool,
) -> Result<T> {
    let mut inst = build(rng)?;
    if mutate.is_none() {
        return Ok(inst);
    }
    for _ in 0..PROBE_TRIES {
        if nonvacuous(&inst, rng) {
            break;
        }
        inst = build(rng)?;
    }
    Ok(inst)
}

fn rep_probe<F: Field>(
    field: &F,
    alg: &CharAlgebra,
    library: &[Rep<F::Elem>],
    rng: &mut ChaCha8Rng,
) -> Option<Rep<F::Elem>> {
    sample_rep(field, alg.presentation(), library, rng).ok()
}

fn describe_rel(r: &RelationInstance) -> String {
    let terms: Vec<String> = r.terms.iter().map(|t| format!("({t})")).collect();
    format!("{}: {}", r.id, terms.join(" + "))
}

/// Points for a relation, pairwise distinct when the action allows it.
fn points(rng: &mut ChaCha8Rng, m: u32, n: u32, len: usize, k: usize) -> Vec<MarkedPoint> {
    let avail = if m == 0 { k.min(n as usize) } else { k };
    let mut pts = gen::distinct_points(rng, m, n, len, avail);
    while pts.len() < k {
        let i = rng.gen_range(0..avail);
        pts.push(pts[i].clone());
    }
    pts
}

fn rel_instance(alg: &CharAlgebra, id: RelId, rng: &mut ChaCha8Rng, len: usize) -> Result<RelationInstance> {
    let pres = alg.presentation();
    let (m, n) = (pres.generators, pres.orbits);
    let word = |rng: &mut ChaCha8Rng| gen::nonempty_word(rng, m, len);
    Ok(match id {
        RelId::R1 => alg.r1(),
        RelId::R2 => {
            let p = points(rng, m, n, len, 2);
            alg.r2(&p[0], &p[1])
        }
        RelId::R3 => {
            let p = points(rng, m, n, len, 2);
            alg.r3(&word(rng), &p[0], &p[1])
        }
        RelId::R4 => alg.r4(&word(rng), &word(rng)),
        RelId::R5 => {
            let g = word(rng);
            let p = points(rng, m, n, len, 2);
            alg.r5(&g, &p[0], &p[1])
        }
        RelId::R6 => {
            let p = points(rng, m, n, len, 4);
            alg.r6(&p[0], &p[1], &p[2], &p[3])
        }
        RelId::C7 => {
            let p = points(rng, m, n, len, 2);
            alg.c7(&p[0], &p[1])
        }
        RelId::C8 => alg.c8(&word(rng)),
        RelId::C9 => alg.c9(&word(rng), &gen::word(rng, m, len)),
        RelId::C10 => {
            let i = rng.gen_range(0..=8usize);
            let g = gen::nonempty_word(rng, m, (len / i.max(1)).max(1));
            alg.c10(&g, i)
        }
    })
}

/// A random instance of a trace schema at arity `(m, n)`, words of length
/// at most `len`. Kernel schemas use `m + n²` matrix letters.
pub fn schema_instance(
    id: SchemaId,
    rng: &mut ChaCha8Rng,
    m: u32,
    n: u32,
    len: usize,
) -> Result<crate::tracealg::SchemaInstance> {
    let (nw, ni) = id.shape();
    let alphabet = if id.is_kernel() {
        gen::trace_alphabet(m + n * n, 0, true)
    } else {
        gen::trace_alphabet(m, n, true)
    };
    let words: Vec<TraceWord> = (0..nw)
        .map(|_| {
            if alphabet.is_empty() {
                TraceWord::identity()
            } else {
                let l = rng.gen_range(0..=len);
                gen::trace_word(rng, &alphabet, l)
            }
        })
        .collect();
    let indices = (0..ni).map(|_| rng.gen_range(1..=n.max(1))).collect();
    let args = SchemaArgs { words, indices, grid: id.is_kernel().then_some((m, n)) };
    let inst = relation_schema(id, &args)?;
    if id.is_kernel() {
        inst.nu(m, n)
    } else {
        Ok(inst)
    }
}

/// Oracle check that a (post-ν) schema expression vanishes on random
/// points of End(V)^m ⊕ V^n.
pub fn check_schema_expr<F: Field>(
    field: &F,
    expr: &SchemaExpr,
    m: u32,
    n: u32,
    cfg: &OracleConfig,
) -> Result<Verdict<Point<F::Elem>, F::Elem>> {
    let degree = expr.degree().max(1);
    let bound = oracle::sz_bound(cfg.samples, degree, field.sample_set_size());
    oracle::compare(
        cfg,
        degree,
        Some(bound),
        |_, rng| Ok(Point::random(field, m, n, rng)),
        |pt| {
            let v = expr.eval(field, pt)?;
            let zeros = vec![field.zero(); v.len()];
            Ok((v, zeros))
        },
    )
}

fn tg_instance(alg: &CharAlgebra, t: TgRel, rng: &mut ChaCha8Rng, len: usize) -> Result<Vec<TgExpr>> {
    let pres = alg.presentation();
    let (m, n) = (pres.generators, pres.orbits);
    let word = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(1..=3);
        TgExpr::word(gen::tg_word(rng, m, n, k, len))
    };
    let (lhs, rhs) = match t {
        TgRel::TrCentral => tr_central(&word(rng), &word(rng)),
        TgRel::ThetaContract => {
            let p = points(rng, m, n, len, 4);
            theta_contract(&p[0], &p[1], &p[2], &p[3])
        }
        TgRel::Stab => {
            let with_stab: Vec<(usize, &Vec<Word>)> = pres
                .stabilizers
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_empty())
                .collect();
            let (j, stabs) = with_stab[rng.gen_range(0..with_stab.len())];
            let s = &stabs[rng.gen_range(0..stabs.len())];
            stabilizer_relation(s, j as u32 + 1, &gen::point(rng, m, n, len))
        }
    };
    Ok(vec![lhs, rhs.scale(&(-num_rational::BigRational::from_integer(1.into())))])
}

fn check_tg_expr<F: Field>(
    field: &F,
    alg: &CharAlgebra,
    library: &[Rep<F::Elem>],
    expr: &TgExpr,
    cfg: &OracleConfig,
) -> Result<Verdict<Rep<F::Elem>, F::Elem>> {
    let free = alg.presentation().is_free();
    let degree = expr.degree().max(1);
    let bound = free.then(|| oracle::sz_bound(cfg.samples, degree, field.sample_set_size()));
    oracle::compare(
        cfg,
        degree,
        bound,
        |i, rng| {
            if free {
                sample_rep(field, alg.presentation(), library, rng)
            } else {
                Ok(library[i % library.len()].clone())
            }
        },
        |rep| {
            let v = expr.eval(field, rep)?;
            Ok((vec![v.a, v.b, v.c, v.d], vec![field.zero(); 4]))
        },
    )
}

/// Outcome of corrupting one family.
#[derive(Debug, Clone)]
pub struct MutationOutcome {
    pub spec: MutationSpec,
    pub detected: bool,
}

/// Corrupt each applicable family in turn (both kinds) and record whether
/// the oracle flags every corrupted instance.
pub fn mutation_battery<F: Field>(
    field: &F,
    alg: &CharAlgebra,
    library: &[Rep<F::Elem>],
    base: &SuiteConfig,
) -> Result<Vec<MutationOutcome>> {
    let mut out = Vec::new();
    for target in Target::all() {
        if !applicable(target, alg) {
            continue;
        }
        for kind in [Mutation::Sign, Mutation::Drop] {
            let spec = MutationSpec { target, kind };
            let cfg = SuiteConfig { mutate: Some(spec), only: Some(target), ..base.clone() };
            let report = check_presentation(field, alg, library, &cfg)?;
            let detected = report.failures() == report.instances();
            out.push(MutationOutcome { spec, detected });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn mutation_specs_parse() {
        let s: MutationSpec = "R6-sign".parse().unwrap();
        assert_eq!(s.target, Target::Rel(RelId::R6));
        assert_eq!(s.kind, Mutation::Sign);
        let s: MutationSpec = "CON1-TR-drop".parse().unwrap();
        assert_eq!(s.target, Target::Schema(SchemaId::Con1Tr));
        assert_eq!(s.to_string(), "CON1-TR-drop");
        assert!("R6".parse::<MutationSpec>().is_err());
        assert!("THETA-CONTRACT-sign".parse::<MutationSpec>().is_ok());
    }

    #[test]
    fn small_run_passes_and_mutation_is_caught() {
        let f = PrimeField::default();
        let alg = CharAlgebra::free(2, 2);
        let cfg = SuiteConfig { instances: 1, oracle: OracleConfig::new(8, 11), ..Default::default() };
        let report = check_presentation(&f, &alg, &[], &cfg).unwrap();
        assert_eq!(report.failures(), 0, "{report}");
        let cfg = SuiteConfig { mutate: Some("R6-sign".parse().unwrap()), ..cfg };
        let report = check_presentation(&f, &alg, &[], &cfg).unwrap();
        assert_eq!(report.failures(), 1, "{report}");
    }

    #[test]
    fn plucker_only_without_generators() {
        let f = PrimeField::default();
        let alg = CharAlgebra::free(0, 4);
        let cfg = SuiteConfig { instances: 1, oracle: OracleConfig::new(4, 1), ..Default::default() };
        let report = check_presentation(&f, &alg, &[], &cfg).unwrap();
        let schemas: Vec<String> = report
            .results
            .iter()
            .filter(|r| r.target.family() == "tracealg")
            .map(|r| r.target.to_string())
            .collect();
        assert_eq!(schemas, ["ANTISYM", "PLUCKER"]);
        assert_eq!(report.failures(), 0);
    }
}
