//! Command-line front end: JSON in, JSON verdicts with certificates out.
//!
//! Exit codes: 0 decided, 1 usage/input error, 2 inconclusive or unsupported
//! query (e.g. exact anti-coproximinality in an ℓ_p space).

use bjorth::coapprox::{self, DEFAULT_SELECTION_CAP};
use bjorth::faces;
use bjorth::jsonio;
use bjorth::orthogonality::{self, Epsilon, GridConfig};
use bjorth::samples;
use bjorth::spaces::{PolyhedralSpace, Space, SpaceSpec, DEFAULT_CAP};
use bjorth::{operators, Rat};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bjorth", about = "Birkhoff-James orthogonality and coapproximation deciders")]
struct Cli {
    /// Include wall-clock timing in reports (off by default so output is
    /// byte-identical across runs).
    #[arg(long, global = true)]
    timing: bool,
    /// Facet-enumeration dimension cap.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Norm of a vector.
    Norm(SpaceVec),
    /// Supporting-functional set J(x).
    Support(SpaceVec),
    /// Facet list of a polyhedral ball.
    Faces {
        #[arg(long)]
        space: String,
    },
    /// Point orthogonality x ⊥_B^ε y.
    Orth(OrthArgs),
    /// Subspace orthogonality Y ⊥_B^ε z.
    Suborth {
        #[arg(long)]
        space: String,
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Best-coapproximation queries.
    Coapprox {
        #[command(subcommand)]
        cmd: CoapproxCmd,
    },
    /// Anti-coproximinality deciders.
    Decide {
        #[command(subcommand)]
        cmd: DecideCmd,
    },
    /// Coordinate dominance in a sup-norm ambient space.
    Dominance {
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        all: bool,
    },
    /// Block-diagonal lift into a sup-norm product.
    Lift {
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        copies: usize,
    },
    /// Operator-level queries.
    Op {
        #[command(subcommand)]
        cmd: OpCmd,
    },
    /// Definition-based λ-grid oracle.
    Oracle(OracleArgs),
    /// Re-check an emitted certificate.
    VerifyCertificate {
        #[arg(long)]
        space: String,
        #[arg(long)]
        verdict: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        subspace: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Regenerate the worked-example fixture corpus.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        out: String,
    },
}

#[derive(Args)]
struct SpaceVec {
    #[arg(long)]
    space: String,
    #[arg(long)]
    x: String,
}

#[derive(Args)]
struct OrthArgs {
    #[arg(long)]
    space: String,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long)]
    eps: Option<String>,
    /// Use the λ-grid oracle instead of the exact decider.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    grid_points: Option<usize>,
    #[arg(long)]
    grid_range: Option<f64>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    space: String,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    grid_points: Option<usize>,
    #[arg(long)]
    grid_range: Option<f64>,
}

#[derive(Subcommand)]
enum CoapproxCmd {
    /// Is y0 a best coapproximation to x out of Y?
    Verify(CoapproxVerify),
    /// ε-best-coapproximation variant.
    EpsVerify(CoapproxVerify),
    /// Search for a nonzero z with Y ⊥_B z.
    FindDirection {
        #[arg(long)]
        space: String,
        #[arg(long)]
        subspace: String,
    },
    /// Coapproximation defect δ(Y).
    Defect {
        #[arg(long)]
        space: String,
        #[arg(long)]
        subspace: String,
    },
}

#[derive(Args)]
struct CoapproxVerify {
    #[arg(long)]
    space: String,
    #[arg(long)]
    subspace: String,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y0: String,
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Subcommand)]
enum DecideCmd {
    Anti {
        #[arg(long)]
        space: String,
        #[arg(long)]
        subspace: String,
    },
    StrongAnti {
        #[arg(long)]
        space: String,
        #[arg(long)]
        subspace: String,
    },
    /// Necessary-condition battery.
    Report {
        #[arg(long)]
        space: String,
        #[arg(long)]
        subspace: String,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    Norm {
        #[arg(long)]
        t: String,
        #[arg(long)]
        domain: Option<String>,
        #[arg(long)]
        codomain: Option<String>,
    },
    Attain {
        #[arg(long)]
        t: String,
    },
    Ase {
        #[arg(long)]
        t: String,
    },
    Orth {
        #[arg(long)]
        t: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        eps: Option<String>,
    },
    Bs {
        #[arg(long)]
        t: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        eps: Option<String>,
    },
    Rank1 {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    ZspaceStrongAnti {
        /// JSON array of basis matrices.
        #[arg(long)]
        basis: String,
        #[arg(long)]
        domain: String,
        #[arg(long)]
        codomain: String,
    },
}

enum Failure {
    Input(String),
    Inconclusive(String),
}

impl From<bjorth::Error> for Failure {
    fn from(e: bjorth::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<Value, Failure>;

fn load(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[', '"']) || arg.chars().next().map_or(false, |c| c.is_ascii_digit() || c == '-') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed JSON in {arg}: {e}")))
}

fn cap_from(cli_cap: Option<usize>) -> usize {
    cli_cap.unwrap_or(DEFAULT_CAP)
}

fn selection_cap() -> usize {
    std::env::var("COAPPROX_LP_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SELECTION_CAP)
}

fn parse_eps(arg: &Option<String>) -> Result<Epsilon, Failure> {
    match arg {
        None => Ok(Epsilon::zero()),
        Some(s) => {
            let s = s.trim();
            if let Ok(r) = <Rat as std::str::FromStr>::from_str(s) {
                return Ok(Epsilon::new(r)?);
            }
            if let Ok(f) = s.parse::<f64>() {
                return Ok(Epsilon::from_f64(f)?);
            }
            let v = load(s)?;
            if let Ok(r) = jsonio::parse_rat(&v) {
                return Ok(Epsilon::new(r)?);
            }
            Ok(Epsilon::from_f64(jsonio::parse_f64(&v)?)?)
        }
    }
}

fn build_space(arg: &str, cap: usize) -> Result<(SpaceSpec, Space), Failure> {
    let spec = jsonio::parse_space_spec(&load(arg)?)?;
    let space = spec.build(cap)?;
    Ok((spec, space))
}

fn polyhedral<'a>(space: &'a Space) -> Result<&'a PolyhedralSpace, Failure> {
    Ok(space.as_polyhedral()?)
}

fn grid_config(points: Option<usize>, range: Option<f64>) -> GridConfig {
    let mut cfg = GridConfig::default();
    if let Some(p) = points {
        cfg.points = p;
    }
    if let Some(r) = range {
        cfg.range_factor = r;
    }
    cfg
}

fn run(cli: &Cli) -> CliResult {
    let cap = cap_from(cli.cap);
    match &cli.command {
        Cmd::Norm(a) => {
            let (_, space) = build_space(&a.space, cap)?;
            match &space {
                Space::Polyhedral(p) => {
                    let x = jsonio::parse_rat_vec(&load(&a.x)?)?;
                    Ok(json!({"command": "norm", "value": jsonio::rat_json(&p.norm(&x)?)}))
                }
                Space::Lp(l) => {
                    let x = jsonio::parse_f64_vec(&load(&a.x)?)?;
                    Ok(json!({"command": "norm", "value": l.norm(&x)?}))
                }
            }
        }
        Cmd::Support(a) => {
            let (_, space) = build_space(&a.space, cap)?;
            match &space {
                Space::Polyhedral(p) => {
                    let x = jsonio::parse_rat_vec(&load(&a.x)?)?;
                    let hull = p.support_hull(&x)?;
                    Ok(json!({
                        "command": "support",
                        "variant": "hull",
                        "functionals": hull.iter().map(|f| jsonio::rat_vec_json(f)).collect::<Vec<_>>(),
                        "smooth": hull.len() == 1,
                    }))
                }
                Space::Lp(l) => {
                    let x = jsonio::parse_f64_vec(&load(&a.x)?)?;
                    Ok(json!({
                        "command": "support",
                        "variant": "singleton",
                        "functional": l.support_functional(&x)?,
                        "smooth": true,
                    }))
                }
            }
        }
        Cmd::Faces { space } => {
            let (_, space) = build_space(space, cap)?;
            let p = polyhedral(&space)?;
            Ok(json!({"command": "faces", "facets": jsonio::faces_json(&faces::enumerate_facets(p))}))
        }
        Cmd::Orth(a) => {
            let (_, space) = build_space(&a.space, cap)?;
            let eps = parse_eps(&a.eps)?;
            if a.oracle {
                let x = jsonio::parse_f64_vec(&load(&a.x)?)?;
                let y = jsonio::parse_f64_vec(&load(&a.y)?)?;
                let cfg = grid_config(a.grid_points, a.grid_range);
                let v = orthogonality::oracle_eps_orthogonal(&space, &x, &y, eps.as_f64(), &cfg)?;
                return Ok(json!({"command": "orth", "verdict": jsonio::verdict_json_f64(&v)}));
            }
            match &space {
                Space::Polyhedral(p) => {
                    let x = jsonio::parse_rat_vec(&load(&a.x)?)?;
                    let y = jsonio::parse_rat_vec(&load(&a.y)?)?;
                    let v = orthogonality::eps_orthogonal(p, &x, &y, &eps)?;
                    let iv = orthogonality::support_interval(p, &x, &y)?;
                    Ok(json!({
                        "command": "orth",
                        "interval": jsonio::interval_json_rat(&iv),
                        "verdict": jsonio::verdict_json_rat(&v),
                    }))
                }
                Space::Lp(l) => {
                    let x = jsonio::parse_f64_vec(&load(&a.x)?)?;
                    let y = jsonio::parse_f64_vec(&load(&a.y)?)?;
                    let v = orthogonality::lp_eps_orthogonal(l, &x, &y, eps.as_f64())?;
                    let iv = orthogonality::lp_support_interval(l, &x, &y)?;
                    Ok(json!({
                        "command": "orth",
                        "interval": jsonio::interval_json_f64(&iv),
                        "verdict": jsonio::verdict_json_f64(&v),
                    }))
                }
            }
        }
        Cmd::Suborth { space, subspace, z, eps } => {
            let (_, space) = build_space(space, cap)?;
            let p = polyhedral(&space)?;
            let y = jsonio::parse_subspace(&load(subspace)?)?;
            let z = jsonio::parse_rat_vec(&load(z)?)?;
            let eps = parse_eps(eps)?;
            let v = orthogonality::subspace_eps_orthogonal(p, &y, &z, &eps)?;
            Ok(json!({"command": "suborth", "verdict": jsonio::verdict_json_rat(&v)}))
        }
        Cmd::Coapprox { cmd } => coapprox_cmd(cmd, cap),
        Cmd::Decide { cmd } => decide_cmd(cmd, cap),
        Cmd::Dominance { subspace, r, all } => {
            let y = jsonio::parse_subspace(&load(subspace)?)?;
            let v = match (r, all) {
                (Some(r), false) => coapprox::coordinate_dominance(&y, *r)?,
                (None, true) => coapprox::coordinate_dominance_all(&y)?,
                _ => return Err(Failure::Input("pass exactly one of --r or --all".into())),
            };
            Ok(json!({"command": "dominance", "verdict": jsonio::verdict_json_rat(&v)}))
        }
        Cmd::Lift { subspace, copies } => {
            let y = jsonio::parse_subspace(&load(subspace)?)?;
            let lifted = coapprox::lift_sup_product(&y, *copies)?;
            Ok(json!({"command": "lift", "subspace": jsonio::subspace_json(&lifted)}))
        }
        Cmd::Op { cmd } => op_cmd(cmd, cap),
        Cmd::Oracle(a) => {
            let (_, space) = build_space(&a.space, cap)?;
            let x = jsonio::parse_f64_vec(&load(&a.x)?)?;
            let y = jsonio::parse_f64_vec(&load(&a.y)?)?;
            let eps = parse_eps(&a.eps)?;
            let cfg = grid_config(a.grid_points, a.grid_range);
            let v = orthogonality::oracle_eps_orthogonal(&space, &x, &y, eps.as_f64(), &cfg)?;
            Ok(json!({"command": "oracle", "verdict": jsonio::verdict_json_f64(&v)}))
        }
        Cmd::VerifyCertificate { space, verdict, x, y, subspace, eps } => {
            verify_certificate(space, verdict, x, y, subspace, eps, cap)
        }
        Cmd::Fixtures { out } => write_fixtures(out),
    }
}

fn coapprox_cmd(cmd: &CoapproxCmd, cap: usize) -> CliResult {
    match cmd {
        CoapproxCmd::Verify(a) | CoapproxCmd::EpsVerify(a) => {
            let (_, space) = build_space(&a.space, cap)?;
            let p = polyhedral(&space)?;
            let y = jsonio::parse_subspace(&load(&a.subspace)?)?;
            let x = jsonio::parse_rat_vec(&load(&a.x)?)?;
            let y0 = jsonio::parse_rat_vec(&load(&a.y0)?)?;
            let eps = parse_eps(&a.eps)?;
            let v = coapprox::verify_eps_best_coapprox(p, &y, &x, &y0, &eps)?;
            Ok(json!({"command": "coapprox-verify", "verdict": jsonio::verdict_json_rat(&v)}))
        }
        CoapproxCmd::FindDirection { space, subspace } => {
            let (_, space) = build_space(space, cap)?;
            let p = polyhedral(&space)?;
            let y = jsonio::parse_subspace(&load(subspace)?)?;
            let z = coapprox::exists_orthogonal_direction(p, &y, selection_cap())?;
            Ok(json!({
                "command": "coapprox-find-direction",
                "found": z.is_some(),
                "direction": z.map(|z| jsonio::rat_vec_json(&z)),
            }))
        }
        CoapproxCmd::Defect { space, subspace } => {
            let (_, space) = build_space(space, cap)?;
            let p = polyhedral(&space)?;
            let y = jsonio::parse_subspace(&load(subspace)?)?;
            let rep = coapprox::coapprox_defect(p, &y, selection_cap())?;
            Ok(json!({"command": "coapprox-defect", "report": jsonio::defect_json(&rep)}))
        }
    }
}

fn decide_cmd(cmd: &DecideCmd, cap: usize) -> CliResult {
    match cmd {
        DecideCmd::Anti { space, subspace } => {
            let (_, space) = build_space(space, cap)?;
            let y = jsonio::parse_subspace(&load(subspace)?)?;
            match &space {
                Space::Polyhedral(p) => {
                    let v = coapprox::decide_anti(p, &y, selection_cap())?;
                    Ok(json!({"command": "decide-anti", "verdict": jsonio::verdict_json_rat(&v)}))
                }
                Space::Lp(_) => Err(Failure::Inconclusive(
                    "exact anti-coproximinality is not decided for ell_p spaces; \
                     use the smooth-span certificate or the oracle"
                        .into(),
                )),
            }
        }
        DecideCmd::StrongAnti { space, subspace } => {
            let (_, space) = build_space(space, cap)?;
            let y = jsonio::parse_subspace(&load(subspace)?)?;
            match &space {
                Space::Polyhedral(p) => {
                    let v = coapprox::decide_strong_anti(p, &y, selection_cap())?;
                    Ok(json!({"command": "decide-strong-anti", "verdict": jsonio::verdict_json_rat(&v)}))
                }
                Space::Lp(l) => {
                    // Strictly convex ambient: no proper closed subspace is
                    // strongly anti-coproximinal.
                    if y.ambient_dim() != l.n {
                        return Err(Failure::Input("subspace/space dimension mismatch".into()));
                    }
                    y.require_proper().map_err(|e| Failure::Input(e.to_string()))?;
                    Ok(json!({
                        "command": "decide-strong-anti",
                        "verdict": {
                            "decision": false,
                            "certificate": null,
                            "method": "formula",
                            "detail": "strict-convexity short-circuit",
                        },
                    }))
                }
            }
        }
        DecideCmd::Report { space, subspace } => {
            let (_, space) = build_space(space, cap)?;
            let y = jsonio::parse_subspace(&load(subspace)?)?;
            match &space {
                Space::Polyhedral(p) => {
                    let rep = coapprox::necessary_checks(p, &y)?;
                    let strong = coapprox::decide_strong_anti(p, &y, selection_cap())?;
                    if !rep.failed.is_empty() {
                        assert!(!strong.decision, "failed necessary condition must force false");
                    }
                    Ok(json!({
                        "command": "decide-report",
                        "necessary": jsonio::necessary_json(&rep),
                        "strong_anti": jsonio::verdict_json_rat(&strong),
                    }))
                }
                Space::Lp(_) => Ok(json!({
                    "command": "decide-report",
                    "necessary": {
                        "rotund_check": "fails: strictly convex ambient space has rotund \
                                         points outside every proper closed subspace",
                        "failed": ["rotund-point detection"],
                    },
                    "strong_anti": {
                        "decision": false,
                        "certificate": null,
                        "method": "formula",
                        "detail": "strict-convexity short-circuit",
                    },
                })),
            }
        }
    }
}

fn op_cmd(cmd: &OpCmd, cap: usize) -> CliResult {
    match cmd {
        OpCmd::Norm { t, domain, codomain } => {
            let t = jsonio::parse_matrix(&load(t)?)?;
            let value = match (domain, codomain) {
                (Some(d), Some(c)) => {
                    let (_, d) = build_space(d, cap)?;
                    let (_, c) = build_space(c, cap)?;
                    operators::operator_norm(
                        &t,
                        &operators::OpNorm::Polyhedral {
                            domain: polyhedral(&d)?,
                            codomain: polyhedral(&c)?,
                        },
                    )
                }
                (None, None) => operators::operator_norm(&t, &operators::OpNorm::Spectral),
                _ => return Err(Failure::Input("pass both --domain and --codomain or neither".into())),
            };
            Ok(json!({"command": "op-norm", "value": value}))
        }
        OpCmd::Attain { t } => {
            let t = jsonio::parse_matrix(&load(t)?)?;
            let att = operators::attainment(&t)?;
            Ok(json!({
                "command": "op-attain",
                "sigma1": att.sigma1,
                "multiplicity": att.multiplicity,
                "top_subspace_basis": jsonio::matrix_json(&att.top_subspace_basis),
                "tolerance": "relative 1e-8 on the singular-value gap",
            }))
        }
        OpCmd::Ase { t } => {
            let t = jsonio::parse_matrix(&load(t)?)?;
            Ok(json!({
                "command": "op-ase",
                "decision": operators::is_ase(&t)?,
                "note": "ASE decided as: top singular value simple (relative tol 1e-8)",
            }))
        }
        OpCmd::Orth { t, a, eps } => {
            let t = jsonio::parse_matrix(&load(t)?)?;
            let a = jsonio::parse_matrix(&load(a)?)?;
            let eps = parse_eps(eps)?;
            let v = operators::op_eps_orthogonal(&t, &a, eps.as_f64())?;
            let iv = operators::omega_interval(&t, &a)?;
            Ok(json!({
                "command": "op-orth",
                "omega_interval": jsonio::interval_json_f64(&iv),
                "verdict": jsonio::verdict_json_f64(&v),
            }))
        }
        OpCmd::Bs { t, a, eps } => {
            let t = jsonio::parse_matrix(&load(t)?)?;
            let a = jsonio::parse_matrix(&load(a)?)?;
            let eps = parse_eps(eps)?;
            let v = operators::bs_reduce(&t, &a, eps.as_f64())?;
            Ok(json!({"command": "op-bs", "verdict": jsonio::verdict_json_f64(&v)}))
        }
        OpCmd::Rank1 { x, y } => {
            let x = jsonio::parse_f64_vec(&load(x)?)?;
            let y = jsonio::parse_f64_vec(&load(y)?)?;
            let a = operators::rank_one_through(&x, &y)?;
            Ok(json!({"command": "op-rank1", "matrix": jsonio::matrix_json(&a)}))
        }
        OpCmd::ZspaceStrongAnti { basis, domain, codomain } => {
            let mats = load(basis)?
                .as_array()
                .ok_or_else(|| Failure::Input("basis must be an array of matrices".into()))?
                .iter()
                .map(jsonio::parse_matrix)
                .collect::<Result<Vec<_>, _>>()?;
            let (_, d) = build_space(domain, cap)?;
            let (_, c) = build_space(codomain, cap)?;
            let v = operators::polyhedral_opspace_strong_anti(&mats, polyhedral(&d)?, polyhedral(&c)?)?;
            Ok(json!({"command": "op-zspace-strong-anti", "verdict": jsonio::verdict_json_rat(&v)}))
        }
    }
}

fn verify_certificate(
    space: &str,
    verdict: &str,
    x: &Option<String>,
    y: &Option<String>,
    subspace: &Option<String>,
    eps: &Option<String>,
    cap: usize,
) -> CliResult {
    let (_, space) = build_space(space, cap)?;
    let p = polyhedral(&space)?;
    let v = load(verdict)?;
    let cert = v
        .get("verdict")
        .and_then(|w| w.get("certificate"))
        .or_else(|| v.get("certificate"))
        .ok_or_else(|| Failure::Input("no certificate found in verdict JSON".into()))?;
    let kind = cert.get("kind").and_then(Value::as_str);
    let eps = parse_eps(eps)?;
    let ok = match kind {
        Some("supporting_functional") => {
            let f = jsonio::parse_rat_vec(
                cert.get("functional").ok_or_else(|| Failure::Input("functional missing".into()))?,
            )?;
            let x = jsonio::parse_rat_vec(&load(
                x.as_deref().ok_or_else(|| Failure::Input("--x required".into()))?,
            )?)?;
            let y = jsonio::parse_rat_vec(&load(
                y.as_deref().ok_or_else(|| Failure::Input("--y required".into()))?,
            )?)?;
            // f ∈ J(x): dual norm ≤ 1 (f ≤ 1 on all vertices) and f(x) = ‖x‖;
            // and |f(y)| ≤ ε‖y‖.
            let dual_ok = p
                .vertices()
                .iter()
                .all(|v| bjorth::linalg::dot(&f, v) <= Rat::from_integer(1.into()));
            let attains = bjorth::linalg::dot(&f, &x) == p.norm(&x)?;
            let fy = bjorth::linalg::dot(&f, &y);
            let bound = eps.value().clone() * p.norm(&y)?;
            let small = fy.clone() <= bound && -fy <= bound;
            dual_ok && attains && small
        }
        Some("direction") => {
            let z = jsonio::parse_rat_vec(
                cert.get("vector").ok_or_else(|| Failure::Input("vector missing".into()))?,
            )?;
            let ysub = jsonio::parse_subspace(&load(
                subspace.as_deref().ok_or_else(|| Failure::Input("--subspace required".into()))?,
            )?)?;
            orthogonality::subspace_eps_orthogonal(p, &ysub, &z, &eps)?.decision
        }
        other => {
            return Err(Failure::Inconclusive(format!(
                "certificate kind {other:?} has no independent verifier"
            )))
        }
    };
    Ok(json!({"command": "verify-certificate", "recheck": ok}))
}

fn write_fixtures(out: &str) -> CliResult {
    use std::fs;
    let dir = std::path::Path::new(out);
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("cannot create {out}: {e}")))?;
    let items: Vec<(&str, Value)> = vec![
        ("linf3.json", jsonio::space_spec_json(&samples::linf3_spec())),
        ("l13.json", jsonio::space_spec_json(&samples::l13_spec())),
        ("lp33.json", jsonio::space_spec_json(&SpaceSpec::lp(3, 3.0))),
        ("lp43.json", jsonio::space_spec_json(&SpaceSpec::lp(4, 3.0))),
        (
            "prism_pyramid.json",
            jsonio::space_spec_json(&SpaceSpec::polyhedral(samples::prism_pyramid_vertices())),
        ),
        ("flagship_y.json", jsonio::subspace_json(&samples::flagship_subspace())),
        ("l1_plane_y.json", jsonio::subspace_json(&samples::l1_plane_subspace())),
        ("c0_trunc6_y.json", jsonio::subspace_json(&samples::c0_truncation_subspace(6))),
        ("trig4_y.json", jsonio::subspace_json(&samples::trig_subspace(4))),
        (
            "l1_remark_query.json",
            json!({
                "space": jsonio::space_spec_json(&samples::l13_spec()),
                "subspace": jsonio::subspace_json(&samples::l1_plane_subspace()),
                "x": ["3/10", "-7/10", "1/2"],
                "y0": ["3/10", "-7/10", "0"],
            }),
        ),
    ];
    let mut written = Vec::new();
    for (name, value) in items {
        let path = dir.join(name);
        let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
        fs::write(&path, text).map_err(|e| Failure::Input(format!("cannot write {name}: {e}")))?;
        written.push(name.to_string());
    }
    Ok(json!({"command": "fixtures", "written": written, "dir": out}))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    match run(&cli) {
        Ok(mut value) => {
            if cli.timing {
                if let Some(obj) = value.as_object_mut() {
                    obj.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
                }
            }
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            println!("{}", serde_json::to_string_pretty(&json!({"decision": null, "reason": msg})).expect("serializable"));
            ExitCode::from(2)
        }
    }
}
