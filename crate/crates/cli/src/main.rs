//! `sl2char`: check identities in decorated SL₂ character algebras by
//! exact evaluation on sampled representations.
//!
//! Exit status: 0 when the checked identity holds, 1 when it is refuted,
//! 2 on any error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sl2char::charalg::rewrite::{reduce_heuristic, rewrite_step, Rule, Site};
use sl2char::curves::{parse_curve_file, to_char};
use sl2char::parse::{parse_ast, parse_ast_with, parse_con, Ast};
use sl2char::suite::{check_presentation, check_schema_expr, MutationSpec, SuiteConfig, Target};
use sl2char::tracealg::SchemaExpr;
use sl2char::twisted::CentralExtSpec;
use sl2char::{
    demos, CharAlgebra, CharPoly, Field, FieldChoice, OracleConfig, Presentation, PrimeField,
    Rationals, Rep, Verdict,
};

#[derive(Parser, Debug)]
#[command(name = "sl2char", version, about = "Decorated SL2 character algebra identity checker")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Presentation of (G, M) as JSON.
    #[arg(long, global = true, value_name = "FILE")]
    presentation: Option<PathBuf>,
    /// Free presentation with M generators and N orbits, e.g. `2,2`.
    #[arg(long, global = true, value_name = "M,N", conflicts_with = "presentation")]
    free: Option<String>,
    /// Representation library (JSON), needed for non-free presentations.
    #[arg(long, global = true, value_name = "FILE")]
    reps: Option<PathBuf>,
    /// `q` or `fp:PRIME`.
    #[arg(long, global = true, default_value = "fp:4611686018427387847")]
    field: String,
    #[arg(long, global = true, default_value_t = 16)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 4)]
    max_word_len: usize,
    /// Print a JSON transcript instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether two character expressions are equal.
    Eq {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Run the relation suite on the session presentation.
    CheckPresentation {
        /// Corrupt one family, e.g. `R6-sign` or `CON1-TR-drop`.
        #[arg(long)]
        mutate: Option<String>,
        /// Restrict to one family, e.g. `R5` or `PLUCKER`.
        #[arg(long)]
        only: Option<String>,
        /// Random instances per family.
        #[arg(long, default_value_t = 4)]
        instances: usize,
    },
    /// Run a worked example: gr2n, z-two-points, chebyshev, tau-chi.
    Demo { name: String },
    /// Contract loop products with R4 and confirm the result with the oracle.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply one rule at a chosen site.
    Rewrite {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// R4, R5, R6 or POW.
        #[arg(long)]
        rule: String,
        /// Index of the term, in display order.
        #[arg(long, default_value_t = 0)]
        term: usize,
        /// Symbol positions in the term, e.g. `0,1`.
        #[arg(long)]
        at: String,
    },
    /// Check that every representation in --reps satisfies the presentation.
    Validate,
    /// Decide equality of two mixed invariants or concomitants.
    InvEq {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Character of a curve collection on a surface.
    Curve {
        file: PathBuf,
        /// Compare the character with this expression.
        #[arg(long)]
        eq: Option<String>,
    },
    /// Twisted equality over a central extension.
    Twist {
        #[arg(long, value_name = "FILE")]
        ext: PathBuf,
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
}

/// What a command prints and how it exits.
struct Outcome {
    code: u8,
    text: Vec<String>,
    json: Value,
}

impl Outcome {
    fn new(ok: bool, text: Vec<String>, json: Value) -> Self {
        Outcome { code: if ok { 0 } else { 1 }, text, json }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("serializable"));
            } else {
                for l in &o.text {
                    println!("{l}");
                }
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match FieldChoice::parse(&cli.global.field)? {
        FieldChoice::Rationals => Session::new(&cli.global, Rationals::default())?.dispatch(&cli.command),
        FieldChoice::Prime(p) => Session::new(&cli.global, PrimeField::new(p)?)?.dispatch(&cli.command),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Turn a positioned parse error into a caret diagram of `input`.
fn with_caret<T>(input: &str, r: sl2char::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| match e {
        sl2char::Error::Parse(p) => anyhow!("{}", p.render(input)),
        other => anyhow!(other),
    })
}

struct Session<'a, F: Field> {
    g: &'a Global,
    field: F,
    cfg: OracleConfig,
    pres: Option<Presentation>,
    library: Vec<Rep<F::Elem>>,
}

impl<'a, F: Field> Session<'a, F> {
    fn new(g: &'a Global, field: F) -> anyhow::Result<Self> {
        if g.samples == 0 {
            bail!("--samples must be positive");
        }
        let pres = match (&g.presentation, &g.free) {
            (Some(p), _) => Some(Presentation::from_json(&read(p)?)?),
            (None, Some(s)) => {
                let (m, n) = s.split_once(',').ok_or_else(|| anyhow!("--free expects M,N"))?;
                Some(Presentation::free(m.trim().parse()?, n.trim().parse()?))
            }
            (None, None) => None,
        };
        let library = match &g.reps {
            Some(p) => sl2char::parse_rep_library(&read(p)?)?
                .iter()
                .map(|r| r.to_field(&field))
                .collect::<sl2char::Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        Ok(Session { g, field, cfg: OracleConfig::new(g.samples, g.seed), pres, library })
    }

    fn header(&self) -> String {
        format!("field {}, {} samples, seed {}", self.field.name(), self.cfg.samples, self.cfg.seed)
    }

    fn header_json(&self) -> Value {
        json!({ "field": self.field.name(), "samples": self.cfg.samples, "seed": self.cfg.seed })
    }

    /// The session presentation, or the free one of the given arity.
    fn presentation(&self, arity: (u32, u32)) -> Presentation {
        self.pres.clone().unwrap_or_else(|| Presentation::free(arity.0, arity.1))
    }

    /// Representations for a non-free presentation, checked against it.
    fn library_for(&self, pres: &Presentation) -> anyhow::Result<&[Rep<F::Elem>]> {
        if pres.is_free() {
            return Ok(&[]);
        }
        if self.library.is_empty() {
            bail!("the presentation is not free; supply representations with --reps");
        }
        for (i, r) in self.library.iter().enumerate() {
            let report = r.validate(&self.field, pres);
            if let Some(v) = report.violations.first() {
                bail!("representation #{} does not satisfy the presentation: {v}", i + 1);
            }
        }
        Ok(&self.library)
    }

    fn dispatch(&self, cmd: &Command) -> anyhow::Result<Outcome> {
        match cmd {
            Command::Eq { lhs, rhs } => self.eq(lhs, rhs),
            Command::CheckPresentation { mutate, only, instances } => {
                self.check(mutate.as_deref(), only.as_deref(), *instances)
            }
            Command::Demo { name } => self.demo(name),
            Command::Reduce { expr } => self.reduce(expr),
            Command::Rewrite { expr, rule, term, at } => self.rewrite(expr, rule, *term, at),
            Command::Validate => self.validate(),
            Command::InvEq { lhs, rhs } => self.inv_eq(lhs, rhs),
            Command::Curve { file, eq } => self.curve(file, eq.as_deref()),
            Command::Twist { ext, lhs, rhs } => self.twist(ext, lhs, rhs),
        }
    }

    fn parse_pair(&self, a: &str, b: &str) -> anyhow::Result<(CharAlgebra, CharPoly, CharPoly)> {
        let (x, y) = (with_caret(a, parse_ast(a).map_err(Into::into))?, with_caret(b, parse_ast(b).map_err(Into::into))?);
        let (ax, ay) = (x.arity(), y.arity());
        let alg = CharAlgebra::new(self.presentation((ax.0.max(ay.0), ax.1.max(ay.1))));
        Ok((alg.clone(), x.to_char(&alg)?, y.to_char(&alg)?))
    }

    fn parse_one(&self, s: &str) -> anyhow::Result<(CharAlgebra, CharPoly)> {
        let ast = with_caret(s, parse_ast(s).map_err(Into::into))?;
        let alg = CharAlgebra::new(self.presentation(ast.arity()));
        let f = ast.to_char(&alg)?;
        Ok((alg, f))
    }

    fn verdict(&self, v: &Verdict<Rep<F::Elem>, F::Elem>, what: &str) -> (bool, Vec<String>, Value) {
        verdict_report(v, what, |r| r.to_json())
    }

    fn eq(&self, a: &str, b: &str) -> anyhow::Result<Outcome> {
        let (alg, f, h) = self.parse_pair(a, b)?;
        let lib = self.library_for(alg.presentation())?;
        let v = alg.equal(&f, &h, &self.field, lib, &self.cfg)?;
        let (ok, mut text, mut j) = self.verdict(&v, &format!("{f}  vs  {h}"));
        text.insert(0, self.header());
        j["lhs"] = json!(f.to_string());
        j["rhs"] = json!(h.to_string());
        j["oracle"] = self.header_json();
        Ok(Outcome::new(ok, text, j))
    }

    fn check(&self, mutate: Option<&str>, only: Option<&str>, instances: usize) -> anyhow::Result<Outcome> {
        let pres = self.presentation((2, 2));
        let lib = self.library_for(&pres)?;
        let cfg = SuiteConfig {
            oracle: self.cfg.clone(),
            max_word_len: self.g.max_word_len,
            instances,
            mutate: mutate.map(str::parse::<MutationSpec>).transpose()?,
            only: only.map(str::parse::<Target>).transpose()?,
        };
        let alg = CharAlgebra::new(pres);
        let report = check_presentation(&self.field, &alg, lib, &cfg)?;
        let text = report.to_string().lines().map(str::to_owned).collect();
        Ok(Outcome::new(report.failures() == 0, text, report.to_json()))
    }

    fn demo(&self, name: &str) -> anyhow::Result<Outcome> {
        let r = demos::run_demo(name, &self.field, &self.cfg)?;
        Ok(Outcome::new(r.passed, r.lines.clone(), r.to_json()))
    }

    /// Report the reduced form and confirm it with the oracle.
    fn confirm(&self, alg: &CharAlgebra, before: &CharPoly, after: &CharPoly, label: &str) -> anyhow::Result<Outcome> {
        let lib = self.library_for(alg.presentation())?;
        let v = alg.equal(before, after, &self.field, lib, &self.cfg)?;
        let (ok, vt, vj) = self.verdict(&v, "oracle check");
        let mut text = vec![self.header(), format!("{label}: {after}")];
        text.extend(vt);
        let j = json!({ "input": before.to_string(), "result": after.to_string(), "check": vj, "oracle": self.header_json() });
        Ok(Outcome::new(ok, text, j))
    }

    fn reduce(&self, s: &str) -> anyhow::Result<Outcome> {
        let (alg, f) = self.parse_one(s)?;
        let r = reduce_heuristic(&alg, &f);
        self.confirm(&alg, &f, &r, "reduced")
    }

    fn rewrite(&self, s: &str, rule: &str, term: usize, at: &str) -> anyhow::Result<Outcome> {
        let (alg, f) = self.parse_one(s)?;
        let rule: Rule = rule.parse()?;
        let pos: Vec<usize> = at
            .split(',')
            .map(|x| x.trim().parse::<usize>().with_context(|| format!("bad position {x:?}")))
            .collect::<anyhow::Result<_>>()?;
        let site = match pos[..] {
            [i] => Site::single(term, i),
            [i, j] => Site::pair(term, i, j),
            _ => bail!("--at takes one or two positions"),
        };
        let r = rewrite_step(&alg, &f, rule, site)?;
        self.confirm(&alg, &f, &r, &format!("{rule} at term {term}"))
    }

    fn validate(&self) -> anyhow::Result<Outcome> {
        if self.g.reps.is_none() {
            bail!("validate needs --reps");
        }
        let first = self.library.first().ok_or_else(|| anyhow!("the representation file is empty"))?;
        let pres = self.presentation((first.matrices.len() as u32, first.decorations.len() as u32));
        let mut text = vec![format!("field {}, {} representations", self.field.name(), self.library.len())];
        let mut items = Vec::new();
        let mut all = true;
        for (i, r) in self.library.iter().enumerate() {
            let report = r.validate(&self.field, &pres);
            let msgs: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
            all &= msgs.is_empty();
            text.push(match msgs.is_empty() {
                true => format!("#{}: ok", i + 1),
                false => format!("#{}: {}", i + 1, msgs.join("; ")),
            });
            items.push(json!({ "index": i + 1, "valid": msgs.is_empty(), "violations": msgs }));
        }
        Ok(Outcome::new(all, text, json!({ "field": self.field.name(), "representations": items })))
    }

    fn inv_eq(&self, a: &str, b: &str) -> anyhow::Result<Outcome> {
        let (x, y) = (with_caret(a, parse_con(a))?, with_caret(b, parse_con(b))?);
        let diff = x.sub(&y);
        let (ax, ay) = (x.arity(), y.arity());
        let (m, n) = (ax.0.max(ay.0), ax.1.max(ay.1));
        // Scalar expressions compare as invariants; anything else as matrices.
        let expr = match diff.as_scalar() {
            Some(s) => SchemaExpr::Inv(s),
            None => SchemaExpr::Con(diff),
        };
        let v = check_schema_expr(&self.field, &expr, m, n, &self.cfg)?;
        let (ok, mut text, mut j) = verdict_report(&v, &format!("{x}  vs  {y}"), |pt| {
            let s = |e: &F::Elem| e.to_string();
            json!({
                "matrices": pt.mats.iter().map(|m| [[s(&m.a), s(&m.b)], [s(&m.c), s(&m.d)]]).collect::<Vec<_>>(),
                "vectors": pt.vecs.iter().map(|v| [s(&v.x), s(&v.y)]).collect::<Vec<_>>(),
            })
        });
        text.insert(0, format!("{}, End(V)^{m} + V^{n}", self.header()));
        j["oracle"] = self.header_json();
        Ok(Outcome::new(ok, text, j))
    }

    fn curve(&self, file: &Path, eq: Option<&str>) -> anyhow::Result<Outcome> {
        let (surface, curves) = parse_curve_file(&read(file)?)?;
        let alg = surface.algebra();
        let ch = to_char(&surface, &alg, &curves)?;
        let mut text = vec![
            format!("surface genus {}, {} boundary, {} marked; rank {}", surface.genus, surface.boundary, surface.marked, surface.rank()),
            format!("character: {ch}"),
        ];
        let mut j = json!({ "rank": surface.rank(), "curves": curves.len(), "character": ch.to_string() });
        let Some(e) = eq else {
            return Ok(Outcome::new(true, text, j));
        };
        let ast = with_caret(e, parse_ast_with(e, &|n| surface.generator(n)).map_err(Into::into))?;
        let other = ast.to_char(&alg)?;
        let lib = self.library_for(alg.presentation())?;
        let v = alg.equal(&ch, &other, &self.field, lib, &self.cfg)?;
        let (ok, vt, vj) = self.verdict(&v, "character vs expression");
        text.insert(0, self.header());
        text.extend(vt);
        j["check"] = vj;
        j["oracle"] = self.header_json();
        Ok(Outcome::new(ok, text, j))
    }

    fn twist(&self, ext_file: &Path, a: &str, b: &str) -> anyhow::Result<Outcome> {
        let base = self
            .pres
            .clone()
            .ok_or_else(|| anyhow!("twist needs the base group: pass --presentation or --free"))?;
        let ext = CentralExtSpec::from_json(base.clone(), &read(ext_file)?)?;
        let big = CharAlgebra::new(ext.extended_presentation());
        let parse = |s: &str| -> anyhow::Result<CharPoly> {
            let ast: Ast = with_caret(s, parse_ast_with(s, &|n| ext.generator(n)).map_err(Into::into))?;
            Ok(ast.to_char(&big)?)
        };
        let (f, h) = (parse(a)?, parse(b)?);
        let base_alg = CharAlgebra::new(base);
        let (nf, nh) = (ext.twist_normalize(&base_alg, &f), ext.twist_normalize(&base_alg, &h));
        let v = ext.equal(&f, &h, &self.field, &self.cfg)?;
        let (ok, vt, vj) = self.verdict(&v, "twisted equality");
        let mut text = vec![self.header(), format!("normalized lhs: {nf}"), format!("normalized rhs: {nh}")];
        text.extend(vt);
        let j = json!({
            "normalized": [nf.to_string(), nh.to_string()],
            "check": vj,
            "oracle": self.header_json(),
        });
        Ok(Outcome::new(ok, text, j))
    }
}

fn verdict_report<S, E: std::fmt::Display>(
    v: &Verdict<S, E>,
    what: &str,
    witness_json: impl Fn(&S) -> Value,
) -> (bool, Vec<String>, Value) {
    match v {
        Verdict::Equal { samples, seed, degree, error_bound } => {
            let bound = match error_bound {
                Some(b) => format!("error bound {b:.3e}"),
                None => "refutation-only, no error bound".into(),
            };
            (
                true,
                vec![format!("{what}: EQUAL on {samples} samples (degree {degree}, {bound}, seed {seed})")],
                json!({ "verdict": "equal", "samples": samples, "seed": seed, "degree": degree, "error_bound": error_bound }),
            )
        }
        Verdict::Unequal { sample, seed, witness, lhs, rhs } => {
            let show = |xs: &[E]| xs.iter().map(ToString::to_string).collect::<Vec<_>>();
            (
                false,
                vec![
                    format!("{what}: UNEQUAL at sample {sample} (seed {seed})"),
                    format!("  lhs = {}", show(lhs).join(", ")),
                    format!("  rhs = {}", show(rhs).join(", ")),
                    format!("  witness = {}", witness_json(witness)),
                ],
                json!({ "verdict": "unequal", "sample": sample, "seed": seed, "lhs": show(lhs), "rhs": show(rhs), "witness": witness_json(witness) }),
            )
        }
    }
}
