//! Command-line front end. Every command produces one JSON value plus a pass flag;
//! `run` renders it and maps the outcome to an exit status.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::brstlab::{self, BrstSpace, DjCoefficient, PhiSpec};
use crate::ccalc::{self, CcContext};
use crate::decomp;
use crate::error::{Error, Result};
use crate::fusionring;
use crate::grading::{explicit_grading, partition_grading, principal_grading, GoodGrading};
use crate::liecore::{RootSystem, SystemId, Weight};
use crate::manifest;
use crate::qchar::{self, QSeries};
use crate::rational::{self, int, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "urodlab",
    version,
    about = "Exact checks for Urod algebras, W-algebra decompositions and fusion rings"
)]
pub struct Cli {
    /// Run the full acceptance suite and emit one aggregated JSON document.
    #[arg(long, global = true)]
    pub manifest: bool,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Args)]
pub struct Params {
    #[arg(long, default_value = "A1")]
    pub sys: String,
    /// `principal`, `partition=a,b,...` (type A) or `x0=c1,c2,...` in fundamental coordinates.
    #[arg(long, default_value = "principal")]
    pub grading: String,
    /// `t = k + h^vee`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long)]
    pub ell: Option<i64>,
    /// Weight in fundamental coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub cutoff: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CharKind {
    /// Level-one lattice character in the Urod grading.
    Urod,
    /// Weyl–Kac character of `L_k(lambda)` with `k = --ell`.
    Affine,
    /// Virasoro minimal model `(p, q) = t`, label `(r, s)`.
    Minimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyWhat {
    Urod,
    Verma,
    Freefield,
    Adm,
    CcIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BrstWhat {
    Dims,
    Cohomology,
    Intertwine,
    Virasoro,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FusionWhat {
    Table,
    Transport,
    Integrality,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Central charges.
    Cc {
        #[command(flatten)]
        p: Params,
    },
    /// q-expansions of characters.
    Char {
        #[arg(long, value_enum, default_value_t = CharKind::Urod)]
        kind: CharKind,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, default_value_t = 1)]
        s: i64,
        #[command(flatten)]
        p: Params,
    },
    /// Character identities.
    Verify {
        #[arg(value_enum)]
        what: VerifyWhat,
        /// Negative control: perturb one coefficient before comparing.
        #[arg(long)]
        perturb: bool,
        #[command(flatten)]
        p: Params,
    },
    /// The BRST complex for `sl2`, principal nilpotent, level one.
    Brst {
        #[arg(value_enum)]
        what: BrstWhat,
        /// Coefficient of `dJ` in the image of `f2`: `consistent`, `displayed`, or a rational.
        #[arg(long, default_value = "consistent", allow_hyphen_values = true)]
        dj: String,
        /// Drop the quartic term of the image of `f2`.
        #[arg(long)]
        no_quartic: bool,
        #[command(flatten)]
        p: Params,
    },
    /// Fusion rings.
    Fusion {
        #[arg(value_enum)]
        what: FusionWhat,
        #[arg(long, default_value_t = 2)]
        n: i64,
        #[arg(long, default_value = "50")]
        radius: String,
        #[command(flatten)]
        p: Params,
    },
}

/// Rendered report and exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

fn system(p: &Params) -> Result<RootSystem> {
    RootSystem::from_id(p.sys.parse::<SystemId>()?)
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(rational::parse).collect()
}

fn weight(sys: &RootSystem, s: Option<&str>) -> Result<Weight> {
    let Some(s) = s else { return Ok(sys.zero()) };
    let coeffs = parse_list(s)?;
    if coeffs.len() != sys.rank() {
        return Err(Error::Parse(format!(
            "weight {s:?} needs {} coordinates",
            sys.rank()
        )));
    }
    Ok(Weight::new(sys.id, coeffs))
}

fn grading(sys: &RootSystem, s: &str) -> Result<GoodGrading> {
    if s == "principal" {
        return Ok(principal_grading(sys));
    }
    if let Some(rest) = s.strip_prefix("partition=") {
        let parts: Vec<usize> = rest
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad partition {rest:?}")))
            })
            .collect::<Result<_>>()?;
        return partition_grading(sys, &parts);
    }
    if let Some(rest) = s.strip_prefix("x0=") {
        return explicit_grading(sys, weight(sys, Some(rest))?);
    }
    Err(Error::Parse(format!("unknown grading {s:?}")))
}

fn level_t(sys: &RootSystem, p: &Params) -> Result<Rational> {
    match (&p.t, &p.k) {
        (Some(t), _) => rational::parse(t),
        (None, Some(k)) => Ok(rational::parse(k)? + int(sys.h_dual)),
        (None, None) => Err(Error::Parse("missing --t (or --k)".into())),
    }
}

fn order(p: &Params, default: i64) -> Result<Rational> {
    p.order
        .as_deref()
        .map(rational::parse)
        .unwrap_or(Ok(int(default)))
}

fn series_json(s: &QSeries) -> Value {
    Value::Array(
        s.terms()
            .map(|(e, c)| json!({"exp": e.to_string(), "coeff": c.to_string()}))
            .collect(),
    )
}

fn cmd_cc(p: &Params) -> Result<(bool, Value)> {
    let sys = system(p)?;
    let g = grading(&sys, &p.grading)?;
    let t = level_t(&sys, p)?;
    let ctx = CcContext::new(&sys, &g, t.clone())?;
    let mut v = json!({
        "system": sys.id.to_string(),
        "grading": p.grading,
        "t": t.to_string(),
        "k": (&t - int(sys.h_dual)).to_string(),
        "c": ccalc::w_cc(&ctx)?.to_string(),
    });
    if let Some(ell) = p.ell {
        let ell_t = int(ell + sys.h_dual);
        v["ell"] = json!(ell);
        v["total_c"] = json!(ccalc::total_cc(&ctx, &ell_t)?.to_string());
        v["urod_c"] = json!(ccalc::urod_cc(&ctx, &ell_t)?.to_string());
    }
    Ok((true, v))
}

fn cmd_char(kind: CharKind, r: i64, s: i64, p: &Params) -> Result<(bool, Value)> {
    let sys = system(p)?;
    let ord = order(p, 10)?;
    let (series, mut v) = match kind {
        CharKind::Urod => {
            let nu = weight(&sys, p.nu.as_deref())?;
            let g = grading(&sys, &p.grading)?;
            let ch = qchar::level1_urod_character(&sys, &nu, &g.x0, &ord)?;
            (ch, json!({"nu": nu.to_string(), "x0": g.x0.to_string()}))
        }
        CharKind::Affine => {
            let lambda = weight(&sys, p.nu.as_deref())?;
            let k = p.ell.unwrap_or(1);
            (
                qchar::weyl_kac_character(&sys, &lambda, k, &ord)?,
                json!({"lambda": lambda.to_string(), "level": k}),
            )
        }
        CharKind::Minimal => {
            let t = level_t(&sys, p)?;
            let (pp, qq) = rational::parts(&t);
            (
                qchar::virasoro_minimal_character(pp, qq, r, s, &ord)?,
                json!({"t": t.to_string(), "r": r, "s": s}),
            )
        }
    };
    v["system"] = json!(sys.id.to_string());
    v["kind"] = json!(format!("{kind:?}").to_lowercase());
    v["order"] = json!(ord.to_string());
    v["series"] = series_json(&series);
    Ok((true, v))
}

fn mu_of(p: &Params) -> Result<Rational> {
    p.mu.as_deref().map(rational::parse).unwrap_or(Ok(int(0)))
}

fn cmd_verify(what: VerifyWhat, perturb: bool, p: &Params) -> Result<(bool, Value)> {
    if perturb && what != VerifyWhat::Urod {
        return Err(Error::Parse(
            "--perturb applies to `verify urod` only".into(),
        ));
    }
    let sys = system(p)?;
    let rep = match what {
        VerifyWhat::Urod => decomp::verify_urod_decomposition(
            &weight(&sys, p.nu.as_deref())?,
            &order(p, 30)?,
            perturb,
        )?,
        VerifyWhat::Verma => decomp::verify_verma_decomposition(
            &level_t(&sys, p)?,
            &mu_of(p)?,
            &weight(&sys, p.nu.as_deref())?,
            &order(p, 20)?,
            None,
        )?,
        VerifyWhat::Freefield => {
            decomp::verify_freefield_decomposition(
                &level_t(&sys, p)?,
                &mu_of(p)?,
                &weight(&sys, p.nu.as_deref())?,
                &order(p, 10)?,
            )?
            .0
        }
        VerifyWhat::Adm => decomp::verify_admissible_decomposition(
            &weight(&sys, p.nu.as_deref())?,
            &order(p, 30)?,
        )?,
        VerifyWhat::CcIdentity => {
            let g = grading(&sys, &p.grading)?;
            let samples = match &p.t {
                Some(t) => parse_list(t)?,
                None => manifest::level_samples()
                    .into_iter()
                    .map(|k| k + int(sys.h_dual))
                    .collect(),
            };
            let rows = decomp::cc_identity_suite(&sys, &[(p.grading.clone(), g)], &samples)?;
            return Ok((
                rows.iter().all(decomp::CcRow::pass),
                decomp::cc_rows_json(&sys, &rows),
            ));
        }
    };
    Ok((rep.equal, rep.to_json()))
}

fn phi_spec(dj: &str, no_quartic: bool) -> Result<PhiSpec> {
    let dj = match dj {
        "consistent" => DjCoefficient::Consistent,
        "displayed" => DjCoefficient::Displayed,
        other => DjCoefficient::Custom(rational::parse(other)?),
    };
    Ok(PhiSpec {
        dj,
        quartic_term: !no_quartic,
    })
}

fn brst_k(p: &Params) -> Result<Rational> {
    p.k.as_deref()
        .map(rational::parse)
        .unwrap_or(Ok(rational::q(7, 5)))
}

/// For BRST commands `--t` is the deformation parameter of `Q_t`, default 1.
fn deformation(p: &Params) -> Result<Rational> {
    p.t.as_deref().map(rational::parse).unwrap_or(Ok(int(1)))
}

fn cmd_brst(
    what: BrstWhat,
    dj: &str,
    no_quartic: bool,
    p: &Params,
) -> Result<(bool, Value, Option<String>)> {
    let k = brst_k(p)?;
    let n = p.cutoff.unwrap_or(4);
    if what == BrstWhat::Virasoro {
        let r = brstlab::urod_virasoro_check(&k, n)?;
        let pass = r.central_charge == int(-5) && r.bracket_ok && r.l0_matches_grading;
        let v = json!({
            "k": k.to_string(), "N": n, "c": r.central_charge.to_string(),
            "bracket_ok": r.bracket_ok, "l0_matches_grading": r.l0_matches_grading, "states": r.states_checked,
        });
        return Ok((pass, v, None));
    }
    let space = BrstSpace::build(k.clone(), n)?;
    let t = deformation(p)?;
    match what {
        BrstWhat::Dims => {
            let mut blocks = Vec::new();
            for w in 0..n {
                for i in 0..=n {
                    if space.dim(w, i) > 0 {
                        blocks.push(json!({"w": w, "i": i, "dimC": space.dim(w, i)}));
                    }
                }
            }
            Ok((
                true,
                json!({"k": k.to_string(), "N": n, "blocks": blocks}),
                None,
            ))
        }
        BrstWhat::Cohomology => {
            let spec = phi_spec(dj, no_quartic)?;
            let v = brstlab::summary_json(&space, &t, &spec)?;
            let pass = v["checks"]["nilpotent"] == json!(true);
            Ok((pass, v, Some(space.blocks_csv(&t)?.replace(',', "\t"))))
        }
        BrstWhat::Intertwine => {
            let spec = phi_spec(dj, no_quartic)?;
            let r = space.check_intertwining(&t, &spec)?;
            let v = json!({
                "k": k.to_string(), "t": t.to_string(), "N": n, "pass": r.pass,
                "blocks_checked": r.blocks_checked,
                "failures": r.failures.iter().map(|(w, i)| json!({"w": w, "i": i})).collect::<Vec<_>>(),
            });
            Ok((r.pass, v, None))
        }
        BrstWhat::Virasoro => unreachable!(),
    }
}

fn cmd_fusion(
    what: FusionWhat,
    n: i64,
    radius: &str,
    p: &Params,
) -> Result<(bool, Value, Option<String>)> {
    let sys = system(p)?;
    match what {
        FusionWhat::Table | FusionWhat::Transport => {
            let ring = if what == FusionWhat::Table {
                fusionring::wzw_fusion(&sys, p.ell.unwrap_or(1))?
            } else {
                fusionring::transport(&sys, &level_t(&sys, p)?)?
            };
            let pass = ring.is_unital() && ring.is_commutative() && ring.is_associative();
            Ok((pass, ring.to_json(), Some(ring.to_tsv())))
        }
        FusionWhat::Integrality => {
            let rep = fusionring::integrality_scan(&sys, n, &rational::parse(radius)?)?;
            Ok((rep.pass, rep.to_json(), None))
        }
    }
}

fn execute(cli: &Cli) -> Result<(bool, Value, Option<String>)> {
    if cli.manifest {
        let v = manifest::run_manifest();
        return Ok((v["pass"] == json!(true), v, None));
    }
    let Some(cmd) = &cli.command else {
        return Err(Error::Parse("no command given (see --help)".into()));
    };
    let plain = |r: Result<(bool, Value)>| r.map(|(ok, v)| (ok, v, None));
    match cmd {
        Command::Cc { p } => plain(cmd_cc(p)),
        Command::Char { kind, r, s, p } => plain(cmd_char(*kind, *r, *s, p)),
        Command::Verify { what, perturb, p } => plain(cmd_verify(*what, *perturb, p)),
        Command::Brst {
            what,
            dj,
            no_quartic,
            p,
        } => cmd_brst(*what, dj, *no_quartic, p),
        Command::Fusion { what, n, radius, p } => cmd_fusion(*what, *n, radius, p),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push_str(&format!("{prefix}\t{s}\n")),
        other => out.push_str(&format!("{prefix}\t{other}\n")),
    }
}

/// Renders a report: pretty JSON, or one `path<TAB>value` line per leaf.
pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Tsv => {
            let mut out = String::new();
            flatten("", v, &mut out);
            out
        }
    }
}

/// Runs a parsed command line. Output files are written here; stdout/stderr are returned.
pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Err(e) => Outcome {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Ok((pass, v, table)) => {
            let text = match (cli.format, table) {
                (Format::Tsv, Some(t)) => t,
                (f, _) => render(&v, f),
            };
            let status = if pass { EXIT_OK } else { EXIT_MISMATCH };
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome {
                        status,
                        stdout: String::new(),
                        stderr: String::new(),
                    },
                    Err(e) => Outcome {
                        status: EXIT_USAGE,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
                None => Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                },
            }
        }
    }
}

/// Applies `URODLAB_THREADS` to the global rayon pool.
pub fn configure_threads() {
    if let Some(n) = std::env::var("URODLAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}
