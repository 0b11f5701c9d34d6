//! Command line front end: machine-readable JSON on stdout, a short
//! human summary on stderr. Exit code 0 on success, 1 when a check
//! fails, 2 on usage errors.

mod descriptors;
mod fixtures;

use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use chevalley_core::algebra::Chevalley;
use chevalley_core::aut::{self, RingAut, StandardAutomorphism, TorusKind};
use chevalley_core::bruhat;
use chevalley_core::group::{Group, GroupElement, TorusCharacter};
use chevalley_core::relations;
use chevalley_core::ring::RingOps;
use chevalley_core::roots::SignedRoot;
use chevalley_core::sample::{self, Rng};
use chevalley_core::units;

use descriptors::{
    format_element, int_matrix_rows, parse_element, parse_root, CoeffsJson, MatrixJson,
    RingDescriptor,
};

#[derive(Parser)]
#[command(
    name = "chevalley",
    about = "Exact computations in adjoint Chevalley groups of type B_l over local rings with 1/2",
    long_about = None,
    after_help = "Basis labels: a1..am / -a1..-am for the weight vectors in the fixed \
positive-root order, h1..hl for the Cartan block (see docs/basis.md). Ring descriptors \
are JSON, e.g. '{\"kind\":\"zmod\",\"p\":3,\"k\":2}'."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the roots of B_l in the fixed order.
    Roots {
        #[arg(long)]
        rank: usize,
    },
    /// Print a generator matrix: x/w/h over a ring, or the integral ad matrix.
    Gens(GensArgs),
    /// Run a verification suite and print a pass/fail table.
    Verify(VerifyArgs),
    /// Compose lambda * torus * positive * negative unipotents from coefficients.
    Compose(ComposeArgs),
    /// Reconstruct the coefficients of a radical-congruent product.
    Reconstruct(ReconstructArgs),
    /// Generate and certify all n^2 matrix units.
    MatrixUnits(MatrixUnitsArgs),
    /// Apply a standard automorphism to a named generator.
    Aut(AutArgs),
    /// Check the embedded rank-3 fixtures against the generated matrices.
    Fixtures {
        /// Run the checks (the only mode).
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
struct GensArgs {
    #[arg(long)]
    rank: usize,
    /// Ring descriptor JSON; not needed for --what ad.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, value_enum)]
    what: What,
    /// Root: a label like a4/-a4 or coordinates like e1-e2.
    #[arg(long)]
    root: String,
    /// Parameter literal (default 1); must be a unit for w and h.
    #[arg(long, default_value = "1")]
    param: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    X,
    W,
    H,
    Ad,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    ring: String,
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Sampled parameters per relation family.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0xB3)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Suite {
    Steinberg,
    Con,
    Weyl,
    All,
}

#[derive(Args)]
struct ComposeArgs {
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    ring: String,
    /// Coefficient JSON {"lambda": ..., "s": [...], "t": [...], "u": [...]};
    /// inline JSON, or - to read stdin.
    #[arg(long)]
    coeffs: String,
}

#[derive(Args)]
struct ReconstructArgs {
    #[arg(long)]
    rank: usize,
    /// Ring descriptor; defaults to the one embedded in the matrix JSON.
    #[arg(long)]
    ring: Option<String>,
    /// Matrix JSON as printed by compose; inline, or - to read stdin (default).
    #[arg(long, default_value = "-")]
    matrix: String,
}

#[derive(Args)]
struct MatrixUnitsArgs {
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    ring: String,
    /// Print the recipe for one unit, as "row,col" basis positions or
    /// "label,label" (e.g. "a1,-a1").
    #[arg(long)]
    show: Option<String>,
}

#[derive(Args)]
struct AutArgs {
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    ring: String,
    #[arg(long, value_enum)]
    kind: AutKind,
    /// Ring-automorphism selector for --kind ring.
    #[arg(long, value_enum, default_value = "identity")]
    sigma: SigmaKind,
    /// Unit literal u for --sigma eps-scale.
    #[arg(long)]
    u: Option<String>,
    /// Conjugator for --kind inner: which generator family.
    #[arg(long, value_enum, default_value = "h")]
    inner: InnerKind,
    /// Conjugator root for --kind inner.
    #[arg(long)]
    inner_root: Option<String>,
    /// Conjugator parameter for --kind inner.
    #[arg(long, default_value = "1")]
    inner_param: String,
    /// Which torus lift for --kind lift.
    #[arg(long, value_enum, default_value = "first")]
    which: WhichLift,
    /// Base-ring unit r for --kind lift.
    #[arg(long)]
    r: Option<String>,
    /// Generator the automorphism is applied to.
    #[arg(long, value_enum, default_value = "x")]
    apply_to: InnerKind,
    #[arg(long)]
    target_root: String,
    #[arg(long, default_value = "1")]
    target_param: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutKind {
    Ring,
    Inner,
    Lift,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaKind {
    Identity,
    EpsScale,
    Frobenius,
}

#[derive(Clone, Copy, ValueEnum)]
enum InnerKind {
    X,
    W,
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichLift {
    First,
    Last,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn chevalley(rank: usize) -> Result<Arc<Chevalley>> {
    Ok(Arc::new(Chevalley::new(rank)?))
}

fn group(rank: usize, ring_json: &str) -> Result<Group> {
    let ring = RingDescriptor::parse(ring_json)?.to_ring()?;
    Ok(Group::new(chevalley(rank)?, ring))
}

fn read_arg_or_stdin(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(arg.to_string())
    }
}

fn element_of(gp: &Group, kind: InnerKind, root: SignedRoot, param: &str) -> Result<GroupElement> {
    let t = parse_element(&gp.ring, param)?;
    Ok(match kind {
        InnerKind::X => gp.x_elem(root, &t),
        InnerKind::W => gp.w_elem(root, &t)?,
        InnerKind::H => gp.h_elem(root, &t)?,
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Roots { rank } => {
            let ch = chevalley(rank)?;
            let rs = ch.rs();
            let roots: Vec<_> = (0..rs.num_positive())
                .flat_map(|i| [SignedRoot::pos(i), SignedRoot::negv(i)])
                .map(|s| {
                    let r = rs.root_of(s);
                    json!({
                        "index": if s.neg { -((s.idx + 1) as i64) } else { (s.idx + 1) as i64 },
                        "label": rs.label(s),
                        "coords": r.coords(),
                        "display": r.to_string(),
                        "length": if r.is_long() { "long" } else { "short" },
                        "simple": !s.neg && rs.coeffs_of(s).iter().sum::<i32>() == 1,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "rank": rank,
                    "positive_count": rs.num_positive(),
                    "total_count": 2 * rs.num_positive(),
                    "adjoint_dim": rs.adjoint_dim(),
                    "roots": roots,
                }))?
            );
            eprintln!(
                "B_{rank}: {} roots, {} positive, adjoint dimension {}",
                2 * rs.num_positive(),
                rs.num_positive(),
                rs.adjoint_dim()
            );
            Ok(true)
        }

        Command::Gens(a) => {
            let ch = chevalley(a.rank)?;
            let root = parse_root(ch.rs(), &a.root)?;
            match a.what {
                What::Ad => {
                    let m = ch.ad_matrix(root);
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "rank": a.rank,
                            "root": ch.rs().label(root),
                            "what": "ad",
                            "rows": int_matrix_rows(m),
                        }))?
                    );
                    eprintln!("ad matrix of {} over the integers", ch.rs().label(root));
                }
                w => {
                    let ring_json = a
                        .ring
                        .ok_or_else(|| anyhow!("--ring is required for x/w/h generators"))?;
                    let gp = group(a.rank, &ring_json)?;
                    let t = parse_element(&gp.ring, &a.param)?;
                    let g = match w {
                        What::X => gp.x_elem(root, &t),
                        What::W => gp.w_elem(root, &t)?,
                        What::H => gp.h_elem(root, &t)?,
                        What::Ad => unreachable!(),
                    };
                    let out = MatrixJson::from_mat(a.rank, &g.mat);
                    println!("{}", serde_json::to_string_pretty(&out)?);
                    eprintln!(
                        "{}_{}({}) over {}",
                        match w {
                            What::X => "x",
                            What::W => "w",
                            _ => "h",
                        },
                        gp.ch.rs().label(root),
                        format_element(&t),
                        descriptors::ring_name(&gp.ring),
                    );
                }
            }
            Ok(true)
        }

        Command::Verify(a) => {
            let gp = group(a.rank, &a.ring)?;
            let mut rng = Rng::new(a.seed);
            let mut table: Vec<(String, bool)> = Vec::new();
            if matches!(a.suite, Suite::Steinberg | Suite::All) {
                table.push(("additivity".into(), verify_additivity(&gp, &mut rng, a.samples)?));
                table
                    .push(("torus-conjugation".into(), verify_torus(&gp, &mut rng, a.samples)?));
                table.push((
                    "commutator-formula".into(),
                    verify_commutators(&gp, &mut rng, a.samples)?,
                ));
            }
            if matches!(a.suite, Suite::Weyl | Suite::All) {
                table.push(("weyl-conjugation".into(), verify_weyl(&gp, &mut rng, a.samples)?));
                table.push(("involution-commuting".into(), verify_involutions(&gp)?));
            }
            if matches!(a.suite, Suite::Con | Suite::All) && a.rank == 3 {
                let gens = relations::ConGenerators::canonical(&gp)?;
                for (name, ok) in relations::check_con_suite(&gp, &gens)? {
                    table.push((name.to_string(), ok));
                }
            } else if matches!(a.suite, Suite::Con) && a.rank != 3 {
                bail!("the condition suite is defined for rank 3");
            }
            let all = table.iter().all(|(_, ok)| *ok);
            for (name, ok) in &table {
                eprintln!("{} {}", if *ok { "PASS" } else { "FAIL" }, name);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "rank": a.rank,
                    "seed": a.seed,
                    "samples": a.samples,
                    "results": table
                        .iter()
                        .map(|(n, ok)| json!({"check": n, "pass": ok}))
                        .collect::<Vec<_>>(),
                    "all_passed": all,
                }))?
            );
            Ok(all)
        }

        Command::Compose(a) => {
            let gp = group(a.rank, &a.ring)?;
            let text = read_arg_or_stdin(&a.coeffs)?;
            let cj: CoeffsJson = serde_json::from_str(&text).context("coefficient JSON")?;
            let c = cj.to_coeffs(&gp.ring)?;
            let x = bruhat::compose(&gp, &c)?;
            println!("{}", serde_json::to_string_pretty(&MatrixJson::from_mat(a.rank, &x))?);
            eprintln!("composed {}x{} matrix", x.n(), x.n());
            Ok(true)
        }

        Command::Reconstruct(a) => {
            let text = read_arg_or_stdin(&a.matrix)?;
            let mj: MatrixJson = serde_json::from_str(&text).context("matrix JSON")?;
            let (ring, mat) = mj.to_mat()?;
            let ring = match a.ring {
                Some(r) => RingDescriptor::parse(&r)?.to_ring()?,
                None => ring,
            };
            let gp = Group::new(chevalley(a.rank)?, ring);
            let c = bruhat::reconstruct(&gp, &mat)?;
            println!("{}", serde_json::to_string_pretty(&CoeffsJson::from_coeffs(&c))?);
            let positions = bruhat::designated_positions(&gp.ch);
            eprintln!(
                "reconstructed {} coefficients from {} designated positions",
                1 + c.s.len() + c.t.len() + c.u.len(),
                positions.len()
            );
            Ok(true)
        }

        Command::MatrixUnits(a) => {
            let gp = group(a.rank, &a.ring)?;
            let table = units::generate_all(&gp)?;
            if let Some(show) = a.show {
                let (r, c) = parse_unit_ref(&gp, &show)?;
                let recipe = table
                    .recipe_for(r, c)
                    .ok_or_else(|| anyhow!("no recipe for ({r}, {c})"))?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "row": r,
                        "col": c,
                        "row_label": gp.ch.basis.label(r),
                        "col_label": gp.ch.basis.label(c),
                        "step": recipe.step,
                        "recipe": recipe.node.to_string(),
                        "intermediates": table
                            .intermediates
                            .iter()
                            .map(|(n, node)| json!({"name": n, "expr": node.to_string()}))
                            .collect::<Vec<_>>(),
                    }))?
                );
                eprintln!("recipe for E[{}, {}]", gp.ch.basis.label(r), gp.ch.basis.label(c));
            } else {
                let n = gp.dim();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "rank": a.rank,
                        "dimension": n,
                        "certified": table.recipes.len(),
                        "expected": n * n,
                        "steps": step_histogram(&table),
                    }))?
                );
                eprintln!("certified {} of {} matrix units", table.recipes.len(), n * n);
            }
            Ok(true)
        }

        Command::Aut(a) => {
            let gp = group(a.rank, &a.ring)?;
            let target_root = parse_root(gp.ch.rs(), &a.target_root)?;
            let before = element_of(&gp, a.apply_to, target_root, &a.target_param)?;
            let (after, acting_gp) = match a.kind {
                AutKind::Ring => {
                    let sigma = match a.sigma {
                        SigmaKind::Identity => RingAut::Identity,
                        SigmaKind::Frobenius => RingAut::Frobenius,
                        SigmaKind::EpsScale => {
                            let u = a.u.ok_or_else(|| anyhow!("--u required for eps-scale"))?;
                            RingAut::DualRescale(parse_element(&gp.ring, &u)?)
                        }
                    };
                    (StandardAutomorphism::Ring(sigma).apply(&gp, &before)?, gp.clone())
                }
                AutKind::Inner => {
                    let root = a
                        .inner_root
                        .ok_or_else(|| anyhow!("--inner-root required for inner"))?;
                    let root = parse_root(gp.ch.rs(), &root)?;
                    let g = element_of(&gp, a.inner, root, &a.inner_param)?;
                    let aut = StandardAutomorphism::inner(&gp, g)?;
                    (aut.apply(&gp, &before)?, gp.clone())
                }
                AutKind::Lift => {
                    let r = a.r.ok_or_else(|| anyhow!("--r required for lift"))?;
                    let r = parse_element(&gp.ring, &r)?;
                    let kind = match a.which {
                        WhichLift::First => TorusKind::First,
                        WhichLift::Last => TorusKind::Last,
                    };
                    let (egp, t) = aut::lift_torus(&gp, kind, &r)?;
                    let lifted = aut::embed_element(&egp, &before)?;
                    (egp.conj(&t, &lifted)?, egp)
                }
            };
            let before_json = MatrixJson::from_mat(a.rank, &before.mat);
            let after_json = MatrixJson::from_mat(a.rank, &after.mat);
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "before": before_json,
                    "after": after_json,
                    "central_after": aut::is_central(&acting_gp, &after)?,
                }))?
            );
            eprintln!("applied automorphism to {}", gp.ch.rs().label(target_root));
            Ok(true)
        }

        Command::Fixtures { check: _ } => {
            let reports = fixtures::check_all()?;
            let all = reports.iter().all(|r| r.matches);
            for r in &reports {
                eprintln!(
                    "{} {} ({} corrections)",
                    if r.matches { "PASS" } else { "FAIL" },
                    r.name,
                    r.corrections_applied
                );
                for d in &r.verbatim_deviations {
                    eprintln!("    {d}");
                }
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "fixtures": reports,
                    "all_matched": all,
                }))?
            );
            Ok(all)
        }
    }
}

fn parse_unit_ref(gp: &Group, s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(',').ok_or_else(|| anyhow!("--show takes row,col"))?;
    let parse_one = |x: &str| -> Result<usize> {
        let x = x.trim();
        if let Ok(n) = x.parse::<usize>() {
            if n < gp.dim() {
                return Ok(n);
            }
            bail!("index {n} out of range");
        }
        gp.ch
            .basis
            .parse_label(x)
            .ok_or_else(|| anyhow!("unknown basis label {x:?}"))
    };
    Ok((parse_one(a)?, parse_one(b)?))
}

fn step_histogram(table: &units::UnitTable) -> serde_json::Value {
    let mut counts: std::collections::BTreeMap<&str, usize> = Default::default();
    for r in &table.recipes {
        *counts.entry(r.step).or_default() += 1;
    }
    json!(counts)
}

// --- verification families ----------------------------------------------

fn verify_additivity(gp: &Group, rng: &mut Rng, samples: usize) -> Result<bool> {
    for _ in 0..samples {
        let s = random_signed(gp, rng);
        let t = sample::element(&gp.ring, rng);
        let u = sample::element(&gp.ring, rng);
        let lhs = gp.mul(&gp.x_elem(s, &t), &gp.x_elem(s, &u))?;
        if lhs != gp.x_elem(s, &t.add(&u)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_torus(gp: &Group, rng: &mut Rng, samples: usize) -> Result<bool> {
    for _ in 0..samples {
        let chi = TorusCharacter::new(
            (0..gp.ch.rank()).map(|_| sample::unit(&gp.ring, rng)).collect(),
        )?;
        let beta = random_signed(gp, rng);
        let xi = sample::element(&gp.ring, rng);
        if !relations::check_torus_conjugation(gp, &chi, beta, &xi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_commutators(gp: &Group, rng: &mut Rng, samples: usize) -> Result<bool> {
    let mut done = 0;
    while done < samples {
        let a = random_signed(gp, rng);
        let b = random_signed(gp, rng);
        if gp.ch.rs().root_of(a).add(&gp.ch.rs().root_of(b)).is_zero() {
            continue;
        }
        let t = sample::element(&gp.ring, rng);
        let u = sample::element(&gp.ring, rng);
        if !relations::check_commutator(gp, a, b, &t, &u)? {
            return Ok(false);
        }
        done += 1;
    }
    // the short-short identity with its constant pinned to +-2
    let rs = gp.ch.rs();
    for i in 0..rs.rank() {
        for j in 0..rs.rank() {
            if i == j {
                continue;
            }
            let ei = short_root(gp, i + 1);
            let ej = short_root(gp, j + 1);
            for b in [ej, ej.opposite()] {
                let table = relations::commutator_table(&gp.ch, ei, b)?;
                if table.len() != 1 || table[0].c.abs() != 2 {
                    return Ok(false);
                }
                let t = sample::element(&gp.ring, rng);
                if !relations::check_commutator(gp, ei, b, &t, &gp.ring.one())? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn verify_weyl(gp: &Group, rng: &mut Rng, samples: usize) -> Result<bool> {
    for _ in 0..samples {
        let a = random_signed(gp, rng);
        let b = random_signed(gp, rng);
        let t = sample::element(&gp.ring, rng);
        if !relations::check_weyl_conjugation(gp, a, b, &t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_involutions(gp: &Group) -> Result<bool> {
    let l = gp.ch.rank();
    for i in 1..=l {
        for j in 1..=l {
            if i == j {
                continue;
            }
            let (commute, containments) = relations::check_involution_commuting(&gp.ch, i, j)?;
            if commute != containments {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn random_signed(gp: &Group, rng: &mut Rng) -> SignedRoot {
    let m = gp.ch.basis.m;
    let k = rng.below(2 * m as u64) as usize;
    SignedRoot { idx: k / 2, neg: k % 2 == 1 }
}

fn short_root(gp: &Group, i: usize) -> SignedRoot {
    let mut c = vec![0i32; gp.ch.rank()];
    c[i - 1] = 1;
    gp.ch
        .rs()
        .signed_index_of(&chevalley_core::roots::Root::new(c))
        .expect("e_i is a root")
}
