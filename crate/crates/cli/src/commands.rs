//! Command-line dispatch. Every path ends in exit code 0, 1 or 2.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use quadmap_core::autnorm::{
    check_sff, cm_kernel_solve, normalize, random_stilde, CmConsistency, NormalForm,
};
use quadmap_core::exactalg::{
    BiholoPoly, GaussianRational, HermPoly, HoloPoly, Matrix, Rational, VariableSpace,
};
use quadmap_core::lemmas::{
    divisibility_check, isometry_decompose, random_divisibility_instance, signature_gap_check,
    DivisibilityReport, DivisibilityVerdict, InstanceShape, IsometryResult, Layer, LemmaInstance,
    SignatureGapReport, SignatureGapVerdict,
};
use quadmap_core::qmap::{
    locus_from, multiplier, segre_containment, span_dimension, transversality, vanishing_check,
    MultiplierCertificate, QuadricMap, VanishingOutcome,
};
use quadmap_core::quadric::{cayley_pullback, flip_map, Hyperquadric};
use quadmap_core::Error;

use crate::corpus::{gen_corpus, CorpusSpec};
use crate::mapfile::{gallery_map, load_map, save_map, MapFile, GALLERY};
use crate::parse::{parse_expression, parse_herm, parse_list, parse_point, ParseError};

pub const SEED_ENV: &str = "QUADMAP_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "quadmap",
    version,
    about = "Exact checks for holomorphic maps between real hyperquadrics"
)]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice (default: $QUADMAP_SEED, then 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify ρ'∘F = A·ρ.
    Verify { map: String },
    /// Print the multiplier A.
    Multiplier { map: String },
    /// Transversality and side behaviour at a source point.
    Transversal {
        map: String,
        /// Comma-separated coordinates z1,...,w.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// The set where the map fails to be transversal.
    Locus { map: String },
    /// Normalize by target automorphisms on a weighted jet.
    Normalize {
        map: String,
        #[arg(long, default_value_t = 6)]
        order: u32,
    },
    /// Dimension of the smallest affine subspace containing the image.
    Span { map: String },
    /// Segre-family containment at a source point.
    Segre {
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Divisibility lemmas and isometry recovery.
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// The linearized operator and its kernel.
    #[command(subcommand)]
    Cm(CmCmd),
    /// Check the Cayley pullback identity.
    Cayley {
        #[arg(long)]
        n: usize,
        /// Defaults to every ℓ ≤ (n−1)/2.
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Print the map exchanging the two sides of a quadric.
    Flip {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Generate a seeded corpus of conjugated normal forms.
    Gen(GenArgs),
    /// Print a gallery map, or list the gallery.
    Examples {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub ell: usize,
    /// Comma-separated expressions in z1..z_{n-1}.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub b: String,
    /// JSON instance file (overrides the flags).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum LemmaCmd {
    /// Σ a_i·conj(b_i) divisible by ⟨z,ξ̄⟩_ℓ.
    Huang {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Run this many seeded random instances instead.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Layered form: --layer "a1,a2|b1,b2" once per power of ⟨z,ξ̄⟩_ℓ.
    Layers {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        ell: usize,
        #[arg(long = "layer", allow_hyphen_values = true)]
        layers: Vec<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// −Σ|a_i|² + Σ|b_j|² divisible by |z|²_ℓ, then isometry recovery.
    Two {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Run this many seeded isometric pairs (k = 1, m = 3) instead.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Recover U with b = a·U from Σ|a_i|² = Σ|b_j|².
    Dangelo {
        #[command(flatten)]
        fam: FamilyArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CmCmd {
    /// Solve 𝓛(p,q) = A at weight s.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        s: u32,
        /// Right-hand side, e.g. "z1^2*conj(z2)^2 + z2^2*conj(z1)^2"; omitted means 0.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Instead of --a, draw a random element of S̃_k.
        #[arg(long)]
        random_stilde: Option<usize>,
    },
    /// Kernel dimension of 𝓛 at weight s.
    Kernel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        s: u32,
    },
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub ell: usize,
    #[arg(long = "big-n", default_value_t = 7)]
    pub big_n: usize,
    #[arg(long = "ell-target", default_value_t = 3)]
    pub ell_target: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long = "psi-degree", default_value_t = 4)]
    pub psi_degree: u32,
    #[arg(long, default_value_t = 2)]
    pub height: i64,
    #[arg(long)]
    pub zero_psi: bool,
    #[arg(long)]
    pub identity_gamma: bool,
    /// Write one file per entry into this directory instead of JSON lines on stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command's report: exit code, JSON body and human text.
struct Report {
    code: i32,
    json: Value,
    text: String,
}

impl Report {
    fn new(code: i32, json: Value, text: impl Into<String>) -> Self {
        Report {
            code,
            json,
            text: text.into(),
        }
    }
}

/// A failure before a report exists.
struct Fail {
    code: i32,
    kind: &'static str,
    msg: String,
}

impl Fail {
    fn input(msg: impl Into<String>) -> Self {
        Fail {
            code: 2,
            kind: "invalid_input",
            msg: msg.into(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::Unverified => (1, "unverified"),
            Error::NonTransversal => (1, "non_transversal"),
            _ => (2, "invalid_input"),
        };
        Fail {
            code,
            kind,
            msg: e.to_string(),
        }
    }
}

impl From<ParseError> for Fail {
    fn from(e: ParseError) -> Self {
        Fail::input(format!("parse error {e}"))
    }
}

type CmdResult = std::result::Result<Report, Fail>;

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let seed = cli
        .seed
        .or_else(|| std::env::var(SEED_ENV).ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0);
    let json = cli.json;
    match dispatch(cli.command, seed) {
        Ok(r) => {
            let stdout = if json {
                serde_json::to_string_pretty(&r.json).expect("json") + "\n"
            } else {
                let mut t = r.text;
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => {
            let body = json!({"status": "error", "kind": f.kind, "message": f.msg});
            if json {
                Outcome {
                    code: f.code,
                    stdout: serde_json::to_string_pretty(&body).expect("json") + "\n",
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: f.code,
                    stdout: String::new(),
                    stderr: format!("error: {}\n", f.msg),
                }
            }
        }
    }
}

fn dispatch(cmd: Command, seed: u64) -> CmdResult {
    match cmd {
        Command::Verify { map } => verify(&map, false),
        Command::Multiplier { map } => verify(&map, true),
        Command::Transversal { map, point } => transversal(&map, &point),
        Command::Locus { map } => locus(&map),
        Command::Normalize { map, order } => normalize_cmd(&map, order),
        Command::Span { map } => span(&map),
        Command::Segre { map, at } => segre(&map, &at),
        Command::Lemma(l) => lemma(l, seed),
        Command::Cm(c) => cm(c, seed),
        Command::Cayley { n, ell } => cayley(n, ell),
        Command::Flip { n, ell } => flip(n, ell),
        Command::Gen(g) => gen(g, seed),
        Command::Examples { name, out } => examples(name, out),
    }
}

fn load(spec: &str) -> std::result::Result<(MapFile, QuadricMap), Fail> {
    load_map(spec).map_err(|e| Fail::input(e.to_string()))
}

fn gq_strings(v: &[GaussianRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn cert_json(cert: &MultiplierCertificate) -> Value {
    json!({
        "status": cert.status,
        "multiplier": cert.multiplier.as_ref().map(|a| a.to_string()),
        "denominator_sq": cert.denom_sq.as_ref().map(|a| a.to_string()),
        "remainder": cert.remainder.as_ref().map(|r| r.to_string()),
        "witness": cert.witness.as_ref().map(|w| gq_strings(w)),
        "witness_value": cert.witness_value.as_ref().map(|v| v.to_string()),
    })
}

fn verify(spec: &str, only_a: bool) -> CmdResult {
    let (_, map) = load(spec)?;
    let cert = multiplier(&map)?;
    let mut body = cert_json(&cert);
    body["command"] = json!(if only_a { "multiplier" } else { "verify" });
    if !cert.is_verified() {
        let text = format!(
            "refuted: rho'(F(p)) = {} at p = ({})",
            cert.witness_value
                .as_ref()
                .map(|v| v.to_string())
                .unwrap_or_default(),
            cert.witness
                .as_deref()
                .map(gq_strings)
                .unwrap_or_default()
                .join(", ")
        );
        return Ok(Report::new(1, body, text));
    }
    let a = cert.multiplier.as_ref().expect("verified").to_string();
    let mut text = if only_a {
        a
    } else {
        format!("verified: A = {a}")
    };
    if let Some(d) = &cert.denom_sq {
        let _ = write!(text, "\n|D|^2 = {d}");
    }
    Ok(Report::new(0, body, text))
}

fn transversal(spec: &str, point: &str) -> CmdResult {
    let (_, map) = load(spec)?;
    let p = parse_point(point)?;
    let r = transversality(&map, &p)?;
    let body = json!({"command": "transversal", "report": r});
    let text = format!(
        "A(p) = {}\nverdict: {}",
        r.a_value,
        serde_json::to_value(r.verdict).unwrap().as_str().unwrap()
    );
    Ok(Report::new(0, body, text))
}

fn locus(spec: &str) -> CmdResult {
    let (_, map) = load(spec)?;
    let cert = multiplier(&map)?;
    if !cert.is_verified() {
        return Err(Error::Unverified.into());
    }
    let l = locus_from(&map, &cert)?;
    let t2 = vanishing_check(&map)?;
    let code = if t2.outcome == VanishingOutcome::Inconsistent {
        1
    } else {
        0
    };
    let body = json!({
        "command": "locus",
        "locus": l.describe(),
        "chart_polynomial": l.chart.to_string(),
        "g_identically_zero": map.g.is_zero(),
        "vanishing_check": t2,
    });
    Ok(Report::new(code, body, l.describe()))
}

fn normalize_cmd(spec: &str, order: u32) -> CmdResult {
    let (_, map) = load(spec)?;
    let out = normalize(&map, order)?;
    let sff = check_sff(&out.normalized)?;
    let psi: Vec<String> = out.psi.iter().map(|p| p.to_string()).collect();
    let jet = out.normalized.jet.to_map()?;
    let status = match &out.normal_form {
        NormalForm::Reached { .. } => "reached",
        NormalForm::NotAttempted(_) => "not_attempted",
        NormalForm::Failed(_) => "failed",
    };
    let code = if sff && !matches!(out.normal_form, NormalForm::Failed(_)) {
        0
    } else {
        1
    };
    let body = json!({
        "command": "normalize",
        "order": order,
        "flipped": out.flipped,
        "steps": out.steps,
        "normal_form": out.normal_form,
        "psi": psi,
        "sff": sff,
        "a1": out.normalized.a1.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "jet": MapFile::from_map(&jet),
    });
    let mut text = format!(
        "normal form: {status}\nsecond fundamental form check: {sff}\nflipped: {}",
        out.flipped
    );
    if let NormalForm::NotAttempted(why) | NormalForm::Failed(why) = &out.normal_form {
        let _ = write!(text, "\nreason: {why}");
    }
    for (k, p) in psi.iter().enumerate() {
        let _ = write!(text, "\npsi[{k}] = {p}");
    }
    Ok(Report::new(code, body, text))
}

fn span(spec: &str) -> CmdResult {
    let (_, map) = load(spec)?;
    let d = span_dimension(&map);
    Ok(Report::new(
        0,
        json!({"command": "span", "span_dimension": d, "target_dimension": map.target.n()}),
        d.to_string(),
    ))
}

fn segre(spec: &str, at: &str) -> CmdResult {
    let (_, map) = load(spec)?;
    let q = parse_point(at)?;
    let s = segre_containment(&map, &q)?;
    let body = json!({
        "command": "segre",
        "holds": s.holds,
        "residual": s.residual.to_string(),
        "image": gq_strings(&s.image),
    });
    let text = if s.holds {
        "holds".to_string()
    } else {
        format!("fails: residual {}", s.residual)
    };
    Ok(Report::new(if s.holds { 0 } else { 1 }, body, text))
}

#[derive(Deserialize)]
struct LayerFile {
    #[serde(default)]
    a: Vec<String>,
    #[serde(default)]
    b: Vec<String>,
}

#[derive(Deserialize)]
struct LemmaFile {
    n: usize,
    #[serde(default)]
    ell: usize,
    #[serde(default)]
    a: Vec<String>,
    #[serde(default)]
    b: Vec<String>,
    #[serde(default)]
    layers: Option<Vec<LayerFile>>,
}

fn read_lemma_file(path: &PathBuf) -> std::result::Result<LemmaFile, Fail> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
}

fn parse_family(
    items: &[String],
    space: VariableSpace,
    label: &str,
) -> std::result::Result<Vec<HoloPoly>, Fail> {
    items
        .iter()
        .enumerate()
        .map(|(k, t)| {
            parse_expression(t, space).map_err(|e| Fail::input(format!("{label}[{k}]: {e}")))
        })
        .collect()
}

/// `(n, ell, layers)` from flags or a file.
fn families(fam: &FamilyArgs) -> std::result::Result<(usize, usize, Vec<Layer>), Fail> {
    if let Some(path) = &fam.file {
        let f = read_lemma_file(path)?;
        let space = VariableSpace::new(f.n)?;
        let layers = match f.layers {
            Some(ls) => ls
                .iter()
                .enumerate()
                .map(|(j, l)| {
                    Ok(Layer::new(
                        parse_family(&l.a, space, &format!("layers[{j}].a"))?,
                        parse_family(&l.b, space, &format!("layers[{j}].b"))?,
                    ))
                })
                .collect::<std::result::Result<Vec<_>, Fail>>()?,
            None => vec![Layer::new(
                parse_family(&f.a, space, "a")?,
                parse_family(&f.b, space, "b")?,
            )],
        };
        return Ok((f.n, f.ell, layers));
    }
    let n = fam
        .n
        .ok_or_else(|| Fail::input("--n is required without --file"))?;
    let space = VariableSpace::new(n)?;
    Ok((
        n,
        fam.ell,
        vec![Layer::new(
            parse_list(&fam.a, space)?,
            parse_list(&fam.b, space)?,
        )],
    ))
}

fn witness_json(
    w: &Option<(
        Vec<GaussianRational>,
        Vec<GaussianRational>,
        GaussianRational,
    )>,
) -> Value {
    match w {
        Some((z, xb, v)) => {
            json!({"z": gq_strings(z), "xibar": gq_strings(xb), "value": v.to_string()})
        }
        None => Value::Null,
    }
}

fn divisibility_verdict_str(v: DivisibilityVerdict) -> &'static str {
    match v {
        DivisibilityVerdict::Confirmed => "confirmed",
        DivisibilityVerdict::NotDivisible => "not_divisible",
        DivisibilityVerdict::HypothesisViolated => "hypothesis_violated",
        DivisibilityVerdict::Counterexample => "counterexample",
    }
}

fn divisibility_json(r: &DivisibilityReport) -> Value {
    json!({
        "n": r.n,
        "ell": r.ell,
        "counts": r.counts,
        "hypotheses": r.hypotheses,
        "divisible": r.divisible(),
        "quotient": r.quotient.as_ref().map(BiholoPoly::to_string),
        "witness": witness_json(&r.witness),
        "layer_zero": r.layer_zero,
        "verdict": divisibility_verdict_str(r.verdict),
    })
}

fn divisibility_text(r: &DivisibilityReport) -> String {
    let mut t = format!("verdict: {}", divisibility_verdict_str(r.verdict));
    match (&r.quotient, &r.witness) {
        (Some(a), _) => {
            let _ = write!(t, "\nA = {a}");
        }
        (None, Some((z, xb, v))) => {
            let _ = write!(
                t,
                "\nnot divisible: value {v} at z = ({}), xibar = ({})",
                gq_strings(z).join(", "),
                gq_strings(xb).join(", ")
            );
        }
        _ => {}
    }
    t
}

fn divisibility_code(v: DivisibilityVerdict) -> i32 {
    if v == DivisibilityVerdict::Counterexample {
        1
    } else {
        0
    }
}

fn signature_gap_verdict_str(v: SignatureGapVerdict) -> &'static str {
    match v {
        SignatureGapVerdict::Confirmed => "confirmed",
        SignatureGapVerdict::Certified => "certified",
        SignatureGapVerdict::NotDivisible => "not_divisible",
        SignatureGapVerdict::HypothesisViolated => "hypothesis_violated",
        SignatureGapVerdict::Counterexample => "counterexample",
    }
}

fn matrix_json(u: &Matrix) -> Value {
    json!(u
        .to_rows()
        .iter()
        .map(|r| gq_strings(r))
        .collect::<Vec<_>>())
}

fn isometry_json(d: &IsometryResult) -> Value {
    match d {
        IsometryResult::Exact { u } => json!({"status": "exact", "u": matrix_json(u)}),
        IsometryResult::Certificate { rank, reason } => {
            json!({"status": "certificate", "rank": rank, "reason": reason})
        }
        IsometryResult::Refuted { z, difference } => {
            json!({"status": "refuted", "z": gq_strings(z), "difference": difference.to_string()})
        }
    }
}

fn signature_gap_json(r: &SignatureGapReport) -> Value {
    json!({
        "n": r.n,
        "ell": r.ell,
        "k": r.k,
        "m": r.m,
        "hypotheses": r.hypotheses,
        "quotient": r.quotient.as_ref().map(BiholoPoly::to_string),
        "witness": witness_json(&r.witness),
        "decomposition": r.decomposition.as_ref().map(isometry_json),
        "verdict": signature_gap_verdict_str(r.verdict),
    })
}

fn lemma(cmd: LemmaCmd, seed: u64) -> CmdResult {
    match cmd {
        LemmaCmd::Huang {
            random: Some(count),
            fam,
        } => {
            let n = fam.n.unwrap_or(4);
            let ell = fam.ell;
            let mut lines = String::new();
            let mut bad = 0;
            let mut records = Vec::new();
            for k in 0..count {
                let s = seed.wrapping_add(k as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let shape = [
                    InstanceShape::Generic,
                    InstanceShape::Cancelling,
                    InstanceShape::NearMiss,
                ][rng.gen_range(0..3)];
                let inst = random_divisibility_instance(n, ell, shape, &mut rng);
                let r = divisibility_check(&inst);
                bad += usize::from(r.verdict == DivisibilityVerdict::Counterexample);
                let mut rec = divisibility_json(&r);
                rec["seed"] = json!(s);
                let _ = writeln!(lines, "{}", serde_json::to_string(&rec).unwrap());
                records.push(rec);
            }
            let body =
                json!({"command": "lemma huang", "instances": records, "counterexamples": bad});
            let _ = write!(lines, "{count} instances, {bad} counterexamples");
            Ok(Report::new(if bad > 0 { 1 } else { 0 }, body, lines))
        }
        LemmaCmd::Huang { fam, random: None } => {
            let (n, ell, layers) = families(&fam)?;
            let inst = LemmaInstance::layered(n, ell, layers)?;
            let r = divisibility_check(&inst);
            Ok(Report::new(
                divisibility_code(r.verdict),
                divisibility_json(&r),
                divisibility_text(&r),
            ))
        }
        LemmaCmd::Layers {
            n,
            ell,
            layers,
            file,
        } => {
            let (n, ell, layers) = match file {
                Some(path) => families(&FamilyArgs {
                    n: None,
                    ell: 0,
                    a: String::new(),
                    b: String::new(),
                    file: Some(path),
                })?,
                None => {
                    let n = n.ok_or_else(|| Fail::input("--n is required without --file"))?;
                    let space = VariableSpace::new(n)?;
                    let mut out = Vec::new();
                    for spec in &layers {
                        let (a, b) = spec.split_once('|').ok_or_else(|| {
                            Fail::input(format!("layer '{spec}' must look like \"a1,a2|b1,b2\""))
                        })?;
                        out.push(Layer::new(parse_list(a, space)?, parse_list(b, space)?));
                    }
                    (n, ell, out)
                }
            };
            let inst = LemmaInstance::layered(n, ell, layers)?;
            let r = divisibility_check(&inst);
            Ok(Report::new(
                divisibility_code(r.verdict),
                divisibility_json(&r),
                divisibility_text(&r),
            ))
        }
        LemmaCmd::Two {
            random: Some(count),
            fam,
        } => {
            let n = fam.n.unwrap_or(5);
            let ell = if fam.ell == 0 { 2 } else { fam.ell };
            let space = VariableSpace::new(n)?;
            let mut lines = String::new();
            let mut bad = 0;
            let mut records = Vec::new();
            for k in 0..count {
                let s = seed.wrapping_add(k as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let (a, b, _) = quadmap_core::lemmas::random_isometric_pair(space, 1, 3, &mut rng);
                let r = signature_gap_check(n, ell, &a, &b)?;
                bad += usize::from(r.verdict == SignatureGapVerdict::Counterexample);
                let mut rec = signature_gap_json(&r);
                rec["seed"] = json!(s);
                let _ = writeln!(lines, "{}", serde_json::to_string(&rec).unwrap());
                records.push(rec);
            }
            let body =
                json!({"command": "lemma two", "instances": records, "counterexamples": bad});
            let _ = write!(lines, "{count} instances, {bad} counterexamples");
            Ok(Report::new(if bad > 0 { 1 } else { 0 }, body, lines))
        }
        LemmaCmd::Two { fam, random: None } => {
            let (n, ell, mut layers) = families(&fam)?;
            let l = layers.remove(0);
            let r = signature_gap_check(n, ell, &l.a, &l.b)?;
            let mut text = format!("verdict: {}", signature_gap_verdict_str(r.verdict));
            if let Some(a) = &r.quotient {
                let _ = write!(text, "\nA = {a}");
            }
            if let Some(IsometryResult::Exact { u }) = &r.decomposition {
                let _ = write!(text, "\nU = {}", matrix_json(u));
            }
            let code = if r.verdict == SignatureGapVerdict::Counterexample {
                1
            } else {
                0
            };
            Ok(Report::new(code, signature_gap_json(&r), text))
        }
        LemmaCmd::Dangelo { fam } => {
            let (n, _, mut layers) = families(&fam)?;
            let l = layers.remove(0);
            let space = VariableSpace::new(n)?;
            let d = isometry_decompose(space, &l.a, &l.b);
            let (code, text) = match &d {
                IsometryResult::Exact { u } => (0, format!("exact: U = {}", matrix_json(u))),
                IsometryResult::Certificate { reason, .. } => {
                    (0, format!("certificate only: {reason}"))
                }
                IsometryResult::Refuted { z, difference } => (
                    1,
                    format!(
                        "refuted: sums differ by {difference} at z = ({})",
                        gq_strings(z).join(", ")
                    ),
                ),
            };
            let mut body = isometry_json(&d);
            body["command"] = json!("lemma dangelo");
            Ok(Report::new(code, body, text))
        }
    }
}

fn consistency_str(c: CmConsistency) -> String {
    serde_json::to_value(c)
        .unwrap()
        .as_str()
        .map(str::to_string)
        .unwrap_or_else(|| format!("{c:?}"))
}

fn cm(cmd: CmCmd, seed: u64) -> CmdResult {
    let (n, ell, s, a) = match cmd {
        CmCmd::Kernel { n, ell, s } => (n, ell, s, None),
        CmCmd::Solve {
            n,
            ell,
            s,
            a,
            random_stilde: k,
        } => {
            let space = VariableSpace::new(n)?;
            let a = match (a, k) {
                (Some(text), _) => Some(parse_herm(&text, space)?),
                (None, Some(_)) if s < 5 => {
                    return Err(Fail::input("--random-stilde needs s >= 5"))
                }
                (None, Some(k)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    Some(random_stilde(space, s, k, 2, &mut rng))
                }
                (None, None) => None,
            };
            (n, ell, s, a)
        }
    };
    let sol = cm_kernel_solve(n, ell, s, a.as_ref())?;
    let code = if sol.consistency == CmConsistency::Inconsistent {
        1
    } else {
        0
    };
    let body = json!({
        "command": "cm",
        "n": n, "ell": ell, "s": s,
        "rhs": a.as_ref().map(HermPoly::to_string),
        "unknowns": sol.unknowns,
        "equations": sol.equations,
        "rank": sol.rank,
        "kernel_dim": sol.kernel_dim,
        "solvable": sol.solvable,
        "particular": sol.particular.as_ref().map(|(p, q)| json!({
            "p": p.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "q": q.to_string(),
        })),
        "in_stilde": sol.in_stilde,
        "consistency": consistency_str(sol.consistency),
    });
    let text = format!(
        "kernel dimension: {}\nsolvable: {}\nconsistency: {}",
        sol.kernel_dim,
        sol.solvable,
        consistency_str(sol.consistency)
    );
    Ok(Report::new(code, body, text))
}

fn cayley(n: usize, ell: Option<usize>) -> CmdResult {
    if n < 2 {
        return Err(Fail::input("n must be at least 2"));
    }
    let ells: Vec<usize> = match ell {
        Some(l) => vec![l],
        None => (0..=(n - 1) / 2).collect(),
    };
    let mut rows = Vec::new();
    let mut all = true;
    let mut text = String::new();
    for l in ells {
        let q = Hyperquadric::standard(n, l)?;
        let holds = cayley_pullback(q.space(), l) == q.defining_poly().scale(&Rational::from(4));
        all &= holds;
        rows.push(json!({"n": n, "ell": l, "holds": holds}));
        let _ = writeln!(
            text,
            "n = {n}, ell = {l}: {}",
            if holds { "holds" } else { "fails" }
        );
    }
    Ok(Report::new(
        if all { 0 } else { 1 },
        json!({"command": "cayley", "checks": rows}),
        text,
    ))
}

fn flip(n: usize, ell: usize) -> CmdResult {
    let map = flip_map(n, ell)?;
    let cert = multiplier(&map)?;
    let file = MapFile::from_map(&map).with_name(&format!("flip-{n}-{ell}"));
    let body = json!({"command": "flip", "map": file, "certificate": cert_json(&cert)});
    let code = if cert.is_verified() { 0 } else { 1 };
    Ok(Report::new(code, body, file.to_json()))
}

fn gen(g: GenArgs, seed: u64) -> CmdResult {
    let spec = CorpusSpec {
        n: g.n,
        ell: g.ell,
        big_n: g.big_n,
        ell_target: g.ell_target,
        psi_degree: g.psi_degree,
        height: g.height,
        count: g.count,
        seed,
        zero_psi: g.zero_psi,
        identity_gamma: g.identity_gamma,
    };
    let entries = gen_corpus(&spec)?;
    let mut text = String::new();
    if let Some(dir) = &g.out {
        std::fs::create_dir_all(dir).map_err(|e| Fail::input(format!("{}: {e}", dir.display())))?;
        for (k, e) in entries.iter().enumerate() {
            let path = dir.join(format!("map-{k:04}.json"));
            save_map(&e.file, &path)
                .map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
            let _ = writeln!(text, "{}", path.display());
        }
    } else {
        for e in &entries {
            let _ = writeln!(text, "{}", serde_json::to_string(&e.file).unwrap());
        }
    }
    let body = json!({
        "command": "gen",
        "spec": spec,
        "regime_a": spec.regime_a(),
        "maps": entries.iter().map(|e| &e.file).collect::<Vec<_>>(),
    });
    Ok(Report::new(0, body, text))
}

fn examples(name: Option<String>, out: Option<PathBuf>) -> CmdResult {
    let Some(name) = name else {
        return Ok(Report::new(
            0,
            json!({"command": "examples", "gallery": GALLERY}),
            GALLERY.join("\n"),
        ));
    };
    let map = gallery_map(&name).ok_or_else(|| {
        Fail::input(format!(
            "unknown example '{name}'; available: {}",
            GALLERY.join(", ")
        ))
    })?;
    let file = MapFile::from_map(&map).with_name(&name);
    if let Some(path) = &out {
        save_map(&file, path).map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
    }
    Ok(Report::new(
        0,
        json!({"command": "examples", "map": file}),
        file.to_json(),
    ))
}
