//! Command execution behind the `fgsr` binary: every subcommand turns into a
//! JSON (or plain text) report and an exit status.
//!
//! Exit statuses: 0 success, 1 counterexample found, 2 parse error,
//! 3 precondition violated.

pub mod syntax;

use num_traits::ToPrimitive;
use rand::Rng;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::autom::{make_automorphism, Automorphism};
use crate::preimage::FullSetSolver;
use crate::random::{random_cyclic, random_uword, rng_from_seed};
use crate::rep::{distinguish, probe_words, verify_identities, Mode, Representation};
use crate::word::{hom_count_cyclic, Dir, Letter, Orientation, WordError};
use crate::zmodule::{apply_difference, kernel_and_coker, lift, pi_cyclic, pi_segment, pi_zc, VectorK, ZCElement};
use syntax::{letter_char, parse_cyclic, parse_moves, parse_orientation, parse_uword, SyntaxError};

/// Largest level accepted unless raised explicitly.
pub const DEFAULT_K_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub k_cap: usize,
    /// Comma-separated preferred spellings, e.g. `yx,Yx`.
    pub sigma_override: Option<String>,
    pub output: OutputFormat,
}

impl Default for Config {
    fn default() -> Config {
        Config { n: 2, seed: 0, trials: 100, k_cap: DEFAULT_K_CAP, sigma_override: None, output: OutputFormat::Json }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Counting,
    Defining,
    Tower,
    Composition,
    Kernel,
}

/// A subcommand with its raw arguments; parsing happens in [`run_command`].
#[derive(Clone, Debug)]
pub enum CommandSpec {
    Pi {
        word: String,
        k: usize,
        cyclic: bool,
    },
    FullSet {
        word: String,
        moves: String,
        cyclic: bool,
    },
    Matrix {
        moves: String,
        k: usize,
    },
    Rank {
        k: usize,
    },
    Verify {
        moves: Option<String>,
        moves2: Option<String>,
        mode: VerifyMode,
        k: usize,
    },
    Distinguish {
        moves: String,
        moves2: String,
        k: usize,
        cyclic: bool,
    },
    /// `vector` is the JSON text of a word → coefficient object.
    Lift {
        vector: String,
        k: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Word(#[from] WordError),
    #[error("bad vector: {0}")]
    Json(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) | CliError::Word(_) | CliError::Json(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn pre(msg: impl Into<String>) -> CliError {
    CliError::Precondition(msg.into())
}

fn check_k(k: usize, cfg: &Config) -> Result<(), CliError> {
    if k == 0 {
        return Err(pre("k must be at least 1"));
    }
    if k > cfg.k_cap {
        return Err(pre(format!("k = {k} exceeds the cap {}", cfg.k_cap)));
    }
    Ok(())
}

fn automorphism(moves: &str, n: usize) -> Result<Automorphism, CliError> {
    let ms = parse_moves(moves, n)?;
    make_automorphism(n, &ms).map_err(|e| pre(e.to_string()))
}

fn vector_json(v: &VectorK) -> Value {
    let mut m = Map::new();
    for (u, c) in v.iter() {
        m.insert(u.to_string(), json!(c));
    }
    Value::Object(m)
}

fn zc_json(z: &ZCElement) -> Value {
    let mut m = Map::new();
    for (w, c) in z.iter() {
        m.insert(w.to_string(), json!(c));
    }
    Value::Object(m)
}

fn dir_name(d: Dir) -> &'static str {
    match d {
        Dir::Forward => "forward",
        Dir::Backward => "backward",
    }
}

/// Parses a word → coefficient object into a level-k vector.
pub fn parse_vector(text: &str, k: usize, n: usize) -> Result<VectorK, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| CliError::Json("expected an object".into()))?;
    let mut pairs = Vec::with_capacity(obj.len());
    for (key, c) in obj {
        let c = c.as_i64().ok_or_else(|| CliError::Json(format!("coefficient of {key} is not an integer")))?;
        let u = parse_uword(key, n)?;
        if u.len() != k {
            return Err(CliError::Json(format!("{key} does not have length {k}")));
        }
        pairs.push((u, c));
    }
    VectorK::from_pairs(k, pairs).map_err(|e| CliError::Json(e.to_string()))
}

fn sigma(cfg: &Config) -> Result<Orientation, CliError> {
    match &cfg.sigma_override {
        Some(s) => Ok(parse_orientation(s, cfg.n)?),
        None => Ok(Orientation::lex_min()),
    }
}

/// Runs one subcommand; the report goes to `stdout`, diagnostics to `stderr`.
pub fn run_command(spec: &CommandSpec, cfg: &Config) -> Outcome {
    match execute(spec, cfg) {
        Ok((code, value)) => {
            let stdout = render(&value, cfg.output);
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn render(v: &Value, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => format!("{v}\n"),
        OutputFormat::Text => {
            let mut out = String::new();
            text_lines(v, "", &mut out);
            out
        }
    }
}

fn text_lines(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (key, x) in m {
                let p = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                text_lines(x, &p, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                text_lines(x, &format!("{prefix}[{i}]"), out);
            }
        }
        _ => out.push_str(&format!("{prefix} {v}\n")),
    }
}

fn execute(spec: &CommandSpec, cfg: &Config) -> Result<(i32, Value), CliError> {
    let n = cfg.n;
    if n == 0 || n > syntax::MAX_RANK {
        return Err(CliError::Syntax(SyntaxError::BadRank(n)));
    }
    match spec {
        CommandSpec::Pi { word, k, cyclic } => {
            check_k(*k, cfg)?;
            let v =
                if *cyclic { pi_cyclic(&parse_cyclic(word, n)?, *k) } else { pi_segment(&parse_uword(word, n)?, *k) };
            Ok((0, vector_json(&v)))
        }
        CommandSpec::FullSet { word, moves, cyclic } => {
            if *cyclic {
                return Err(pre("full sets are defined for segment words"));
            }
            let u = parse_uword(word, n)?;
            let phi = automorphism(moves, n)?;
            let s = FullSetSolver::new(&phi).full_set(&u);
            let entries: Vec<Value> = s
                .grouped()
                .into_iter()
                .map(|(e, mult)| {
                    json!({
                        "base": e.base.to_string(),
                        "host": e.emb.host.to_string(),
                        "start": e.emb.occ.start,
                        "dir": dir_name(e.emb.occ.dir),
                        "multiplicity": mult,
                    })
                })
                .collect();
            Ok((0, json!({ "u": u.to_string(), "size": s.len(), "entries": entries })))
        }
        CommandSpec::Matrix { moves, k } => {
            check_k(*k, cfg)?;
            let phi = automorphism(moves, n)?;
            let rep = Representation::with_orientation(&phi, sigma(cfg)?);
            let r = rep.matrix(*k);
            let dense = r.to_int_matrix(200_000).map_err(|e| pre(e.to_string()))?;
            let rows: Vec<String> = dense.rows().iter().map(|u| u.to_string()).collect();
            let cols: Vec<String> = dense.cols().iter().map(|u| u.to_string()).collect();
            let entries: Vec<Value> = dense.entries().into_iter().map(|(i, j, v)| json!([i, j, v])).collect();
            Ok((0, json!({ "k": k, "m_k": r.m, "raw_m_k": r.raw_m, "rows": rows, "cols": cols, "entries": entries })))
        }
        CommandSpec::Rank { k } => {
            check_k(*k, cfg)?;
            if *k < 2 {
                return Err(pre("the affix maps start at k = 2"));
            }
            let r = kernel_and_coker(n, *k, &sigma(cfg)?).map_err(|e| pre(e.to_string()))?;
            let inv: Vec<u64> = r.invariants.iter().map(|d| d.to_u64().expect("small invariant factor")).collect();
            Ok((0, json!({ "rank": r.rank(), "invariants": inv })))
        }
        CommandSpec::Verify { moves, moves2, mode, k } => verify(cfg, moves.as_deref(), moves2.as_deref(), *mode, *k),
        CommandSpec::Distinguish { moves, moves2, k, cyclic } => {
            check_k(*k, cfg)?;
            if !*cyclic {
                return Err(pre("distinguish compares cyclic words"));
            }
            let phi = automorphism(moves, n)?;
            let psi = automorphism(moves2, n)?;
            Ok((
                0,
                match distinguish(&phi, &psi, *k) {
                    Some((level, g)) => json!({ "level": level, "witness": letter_char(Letter::gen(g)).to_string() }),
                    None => json!({ "level": null, "witness": null }),
                },
            ))
        }
        CommandSpec::Lift { vector, k } => {
            check_k(*k, cfg)?;
            let v = parse_vector(vector, *k, n)?;
            let s = sigma(cfg)?;
            let z = lift(&v, &s, n).map_err(|e| pre(e.to_string()))?;
            Ok((0, zc_json(&z)))
        }
    }
}

fn verify(
    cfg: &Config,
    moves: Option<&str>,
    moves2: Option<&str>,
    mode: VerifyMode,
    k: usize,
) -> Result<(i32, Value), CliError> {
    let n = cfg.n;
    check_k(k, cfg)?;
    let sig = sigma(cfg)?;
    let report = |name: &str, fail: Option<Value>| {
        let passed = fail.is_none();
        let mut out = json!({ "mode": name, "k": k, "trials": cfg.trials, "seed": cfg.seed, "passed": passed });
        if let Some(f) = fail {
            out["counterexample"] = f;
        }
        (if passed { 0 } else { 1 }, out)
    };
    match mode {
        VerifyMode::Counting => {
            let phi = automorphism(moves.ok_or_else(|| pre("this mode needs --moves"))?, n)?;
            let solver = FullSetSolver::new(&phi);
            let mut rng = rng_from_seed(cfg.seed);
            let mut fail = None;
            for _ in 0..cfg.trials {
                let ul = rng.gen_range(1..=k);
                let u = random_uword(&mut rng, n, ul);
                let wl = rng.gen_range(1..=40);
                let w = random_cyclic(&mut rng, n, wl);
                let direct = hom_count_cyclic(&u, &phi.apply_cyclic(&w));
                let weighted = solver.full_set(&u).weighted_count(&w);
                if direct != weighted {
                    fail = Some(
                        json!({ "u": u.to_string(), "word": w.to_string(), "direct": direct, "weighted": weighted }),
                    );
                    break;
                }
            }
            Ok(report("counting", fail))
        }
        VerifyMode::Defining | VerifyMode::Tower | VerifyMode::Composition => {
            let m = match mode {
                VerifyMode::Defining => Mode::Defining,
                VerifyMode::Tower => Mode::Tower,
                _ => Mode::Composition,
            };
            let phi = automorphism(moves.ok_or_else(|| pre("this mode needs --moves"))?, n)?;
            let a = Representation::with_orientation(&phi, sig.clone());
            let b = match (m, moves2) {
                (Mode::Composition, Some(s)) => Some(Representation::with_orientation(&automorphism(s, n)?, sig)),
                (Mode::Composition, None) => return Err(pre("composition needs --moves2")),
                _ => None,
            };
            let words = probe_words(n, cfg.trials, 16, cfg.seed);
            let r = verify_identities(&a, b.as_ref(), k, m, &words).map_err(|e| pre(e.to_string()))?;
            let fail = r
                .counterexample
                .map(|c| json!({ "word": c.word.to_string(), "lhs": vector_json(&c.lhs), "rhs": vector_json(&c.rhs) }));
            Ok(report(m.name(), fail))
        }
        VerifyMode::Kernel => {
            if k < 2 {
                return Err(pre("the kernel mode needs k >= 2"));
            }
            let r = kernel_and_coker(n, k, &sig).map_err(|e| pre(e.to_string()))?;
            let mut fail = None;
            for v in &r.basis {
                let z = lift(v, &sig, n).map_err(|e| pre(e.to_string()))?;
                if pi_zc(&z, k) != *v {
                    fail = Some(json!({ "vector": vector_json(v), "lift": zc_json(&z) }));
                    break;
                }
            }
            if fail.is_none() {
                for w in probe_words(n, cfg.trials, 20, cfg.seed) {
                    if !apply_difference(&pi_cyclic(&w, k), &sig).is_zero() {
                        fail = Some(json!({ "word": w.to_string() }));
                        break;
                    }
                }
            }
            Ok(report("kernel", fail))
        }
    }
}
