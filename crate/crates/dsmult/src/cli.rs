//! Command-line entry point: catalog validation, table generation,
//! character evaluation, packet checks, multiplicity and Lefschetz totals,
//! and the full verification battery.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::assembly::{
    lefschetz_checked, multiplicity, packet_sum_crosscheck, pseudo_coefficient_transfer,
    stable_distribution_sgm, AssemblyContext,
};
use crate::catalog::{validate_document, Catalog};
use crate::cbar::{build_cbar_table_cached, solve_cbar_by_axioms};
use crate::characters::{averaged_character_phim_traced, weyl_integration_check, HCParameter};
use crate::endoscopy::{check_coefficient_relation, load_endo_group};
use crate::error::{Error, Result};
use crate::exact::{parse_q, RatVec};
use crate::packets::{build_packet_from_raw, random_packet, verify_adjoint_relations, TestRng};
use crate::rootsys::{build_root_datum, TorusPoint};
use crate::value::ValueRecord;

pub const CACHE_ENV: &str = "DSMULT_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "dsmult",
    about = "Exact kernel for discrete-series multiplicities and Lefschetz totals",
    version
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args)]
pub struct ConfigArgs {
    /// Cache directory for derived tables (overrides DSMULT_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Numeric tolerance for floating comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Emit line-delimited structured records instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Random seed for the property suites.
    #[arg(long, global = true, default_value_t = 17)]
    pub seed: u64,
    /// Worker threads for term evaluation (evaluation is deterministic
    /// regardless).
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

impl ConfigArgs {
    pub fn cache_dir(&self) -> Option<PathBuf> {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var(CACHE_ENV).ok().map(PathBuf::from))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance <= 1e-3) {
            return Err(Error::InvalidInput(
                "tolerance must lie in (0, 1e-3]".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate a catalog document of any supported schema.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Positive-system pair tables.
    Cbar {
        #[command(subcommand)]
        action: CbarAction,
    },
    /// Character evaluation.
    Char {
        #[command(subcommand)]
        action: CharAction,
    },
    /// Packet verification.
    Packet {
        #[command(subcommand)]
        action: PacketAction,
    },
    /// Multiplicity of one discrete-series member.
    Multiplicity {
        #[arg(long)]
        group: String,
        #[arg(long)]
        weight: i64,
        #[arg(long)]
        level: String,
        #[arg(long)]
        member: Option<String>,
        #[arg(long)]
        emit_terms: bool,
    },
    /// Stable Lefschetz total.
    Lefschetz {
        #[arg(long)]
        group: String,
        #[arg(long)]
        weight: i64,
        #[arg(long)]
        level: String,
        #[arg(long)]
        emit_terms: bool,
    },
    /// Verification battery.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
}

#[derive(Subcommand)]
pub enum CatalogAction {
    /// Validate one document; exit code 0 iff fully valid.
    Validate { path: PathBuf },
}

#[derive(Subcommand)]
pub enum CbarAction {
    /// Emit the full table for a Cartan type.
    Table {
        #[arg(long = "type")]
        cartan_type: String,
    },
}

#[derive(Subcommand)]
pub enum CharAction {
    /// Evaluate the averaged character at a torus point.
    Eval {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "G")]
        levi: String,
        /// Fundamental-weight coefficients, comma separated.
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "triv")]
        zeta: String,
        /// Point spec: `z=<label>;pi=<q,...>;re=<x,...>[;offlocus]`.
        #[arg(long)]
        gamma: String,
        /// Include every Weyl summand in the output.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Subcommand)]
pub enum PacketAction {
    /// Verify the adjoint relations and structural invariants.
    Check {
        #[arg(long)]
        entry: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum VerifyAction {
    /// Run every verification across the shipped catalogs.
    All,
}

fn parse_lambda(s: &str) -> Result<RatVec> {
    s.split(',').map(parse_q).collect()
}

fn parse_gamma(s: &str, rank: usize) -> Result<TorusPoint> {
    let mut z = "1".to_string();
    let mut pi: RatVec = vec![crate::exact::qi(0); rank];
    let mut re = vec![0.0f64; rank];
    let mut locus = true;
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if part == "offlocus" {
            locus = false;
            continue;
        }
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("bad point component `{part}`")))?;
        match key.trim() {
            "z" => z = val.trim().to_string(),
            "pi" => {
                pi = val.split(',').map(parse_q).collect::<Result<_>>()?;
            }
            "re" => {
                re = val
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::InvalidInput(format!("bad real part `{t}`")))
                    })
                    .collect::<Result<_>>()?;
            }
            other => return Err(Error::InvalidInput(format!("unknown point key `{other}`"))),
        }
    }
    if pi.len() != rank || re.len() != rank {
        return Err(Error::InvalidInput("point rank mismatch".into()));
    }
    let mut point = TorusPoint::exact(&z, pi).with_real(re);
    point.in_elliptic_locus = locus;
    Ok(point)
}

#[derive(Serialize)]
struct CheckLine {
    check: String,
    status: String,
    detail: String,
}

fn emit_check(json: bool, name: &str, result: &Result<String>) {
    match (json, result) {
        (true, Ok(detail)) => {
            let line = CheckLine {
                check: name.to_string(),
                status: "pass".into(),
                detail: detail.clone(),
            };
            println!("{}", serde_json::to_string(&line).unwrap());
        }
        (true, Err(e)) => {
            let line = CheckLine {
                check: name.to_string(),
                status: "fail".into(),
                detail: e.to_string(),
            };
            println!("{}", serde_json::to_string(&line).unwrap());
        }
        (false, Ok(detail)) => println!("pass  {name}: {detail}"),
        (false, Err(e)) => println!("FAIL  {name}: {e}"),
    }
}

/// Run the full verification battery; Ok(true) when everything passed.
pub fn verify_all(config: &ConfigArgs) -> Result<bool> {
    let cat = Catalog::shipped()?;
    let mut all_ok = true;
    let mut run = |name: &str, result: Result<String>| {
        if result.is_err() {
            all_ok = false;
        }
        emit_check(config.json, name, &result);
    };

    for label in ["A1", "A1xA1", "B2", "G2"] {
        run(
            &format!("pair-table-oracle-{label}"),
            (|| {
                let d = build_root_datum(label)?;
                let built = match config.cache_dir() {
                    Some(dir) => build_cbar_table_cached(&d, &dir)?,
                    None => crate::cbar::build_cbar_table(&d)?,
                };
                let solved = solve_cbar_by_axioms(&d)?;
                if built.values != solved.values {
                    return Err(Error::InternalAxiomConflict(format!(
                        "construction and solver disagree on {label}"
                    )));
                }
                Ok(format!(
                    "{} entries, axioms hold, solver unique",
                    built.values.len() * built.values.len()
                ))
            })(),
        );
    }

    for p in &cat.raw_packets.packets {
        run(
            &format!("packet-{}", p.name),
            (|| {
                let packet = build_packet_from_raw(p)?;
                let rep = verify_adjoint_relations(&packet)?;
                Ok(format!(
                    "{} parameter and {} character identities",
                    rep.parameter_identities, rep.character_identities
                ))
            })(),
        );
    }

    run(
        "packet-randomized",
        (|| {
            let mut rng = TestRng::new(config.seed);
            for _ in 0..200 {
                let p = random_packet(&mut rng);
                verify_adjoint_relations(&p)?;
            }
            Ok("200 synthetic packets".into())
        })(),
    );

    run(
        "coefficient-relation",
        (|| {
            let mut checked = 0usize;
            for eg_raw in &cat.raw_endo.groups {
                let group = cat.group(&eg_raw.group)?;
                let eg = load_endo_group(eg_raw, group.datum.rank)?;
                for (packet_name, gprime, s_prime) in &eg.linked_pairs {
                    let packet = build_packet_from_raw(cat.raw_packet(packet_name)?)?;
                    let g = eg.principal()?;
                    let gp = eg.datum(gprime)?;
                    check_coefficient_relation(g, gp, packet.space_size() as u64, *s_prime)?;
                    checked += 1;
                }
            }
            Ok(format!("{checked} linked pairs"))
        })(),
    );

    run(
        "dual-route-stable-distribution",
        (|| {
            let ctx = AssemblyContext::new(&cat, "SL2", "1", config.cache_dir().as_deref())?;
            let mut checked = 0usize;
            for k in [12i64, 14, 18, 24] {
                let param = ctx.param_for_weight(k)?;
                for class in &ctx.dataset.stable_classes {
                    let desc = pseudo_coefficient_transfer(&ctx, 0, &class.endo)?;
                    let v = stable_distribution_sgm(&ctx, &param, class, &desc)?;
                    if class.unipotent && !v.is_zero() {
                        return Err(Error::RouteMismatch(
                            "unipotent class not annihilated".into(),
                        ));
                    }
                    checked += 1;
                }
            }
            Ok(format!("{checked} class evaluations"))
        })(),
    );

    run(
        "multiplicity-integrality",
        (|| {
            let ctx = AssemblyContext::new(&cat, "SL2", "1", config.cache_dir().as_deref())?;
            let mut out = Vec::new();
            for k in [12i64, 14, 16, 18, 20, 22, 24, 26] {
                let param = ctx.param_for_weight(k)?;
                let (m, _) = multiplicity(&ctx, &param, 0)?;
                out.push(format!("{k}:{m}"));
            }
            Ok(out.join(" "))
        })(),
    );

    run(
        "stabilization-crosscheck",
        (|| {
            let ctx = AssemblyContext::new(&cat, "SL2", "1", config.cache_dir().as_deref())?;
            for k in [12i64, 14, 16, 18, 20, 22, 24, 26] {
                let param = ctx.param_for_weight(k)?;
                packet_sum_crosscheck(&ctx, &param)?;
            }
            Ok("8 weights".into())
        })(),
    );

    run(
        "lefschetz-identity",
        (|| {
            let ctx = AssemblyContext::new(&cat, "SL2", "1", config.cache_dir().as_deref())?;
            for k in [12i64, 14, 16, 18, 20, 22, 24, 26] {
                lefschetz_checked(&ctx, k, None, None)?;
            }
            Ok("8 weights".into())
        })(),
    );

    run(
        "weyl-integration-residual",
        (|| {
            let su2 = cat.group("SU2")?;
            let lam = vec![crate::exact::qi(1)];
            let r = weyl_integration_check(su2, &lam, &lam, 1.0, 64)?;
            if r >= 1e-6 {
                return Err(Error::RouteMismatch(format!("residual {r}")));
            }
            Ok(format!("residual {r:.3e}"))
        })(),
    );

    Ok(all_ok)
}

/// Run the parsed command; the error, if any, carries the exit code.
pub fn run(cli: Cli) -> Result<i32> {
    cli.config.validate()?;
    match cli.command {
        Command::Catalog {
            action: CatalogAction::Validate { path },
        } => {
            let schema = validate_document(&path)?;
            println!("valid ({schema})");
            Ok(0)
        }
        Command::Cbar {
            action: CbarAction::Table { cartan_type },
        } => {
            let datum = build_root_datum(&cartan_type)?;
            let table = match cli.config.cache_dir() {
                Some(dir) => build_cbar_table_cached(&datum, &dir)?,
                None => crate::cbar::build_cbar_table(&datum)?,
            };
            #[derive(Serialize)]
            struct Row<'a> {
                q: &'a [usize],
                r: &'a [usize],
                value: i64,
            }
            for (qi, qs) in table.systems.iter().enumerate() {
                for (ri, rs) in table.systems.iter().enumerate() {
                    if cli.config.json {
                        let row = Row {
                            q: &qs.positive,
                            r: &rs.positive,
                            value: table.values[qi][ri],
                        };
                        println!("{}", serde_json::to_string(&row)?);
                    } else {
                        println!(
                            "{:?} {:?} {}",
                            qs.positive, rs.positive, table.values[qi][ri]
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Char {
            action:
                CharAction::Eval {
                    group,
                    levi,
                    lambda,
                    zeta,
                    gamma,
                    trace,
                },
        } => {
            let cat = Catalog::shipped()?;
            let entry = cat.group(&group)?;
            let coeffs = parse_lambda(&lambda)?;
            let param = HCParameter::from_fundamental(entry, &coeffs, &zeta)?;
            let point = parse_gamma(&gamma, entry.datum.rank)?;
            let table = if crate::rootsys::contains_minus_one(&entry.datum) {
                Some(match cli.config.cache_dir() {
                    Some(dir) => build_cbar_table_cached(&entry.datum, &dir)?,
                    None => crate::cbar::build_cbar_table(&entry.datum)?,
                })
            } else {
                None
            };
            let (value, summands) =
                averaged_character_phim_traced(&param, &levi, &point, table.as_ref())?;
            #[derive(Serialize)]
            struct Out {
                group: String,
                levi: String,
                value: ValueRecord,
                #[serde(skip_serializing_if = "Option::is_none")]
                summands: Option<Vec<crate::characters::WeylSummand>>,
            }
            let out = Out {
                group,
                levi,
                value: ValueRecord::from(&value),
                summands: if trace { Some(summands) } else { None },
            };
            if cli.config.json {
                println!("{}", serde_json::to_string(&out)?);
            } else {
                println!("value = {}", value.display());
                if let Some(s) = out.summands {
                    for w in s {
                        println!(
                            "  word {:?} sign {} table {} -> {:?}",
                            w.word, w.sign, w.cbar, w.value
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Packet {
            action: PacketAction::Check { entry },
        } => {
            let cat = Catalog::shipped()?;
            let mut ok = true;
            for raw in &cat.raw_packets.packets {
                if let Some(ref want) = entry {
                    if &raw.name != want {
                        continue;
                    }
                }
                let result = build_packet_from_raw(raw).and_then(|p| {
                    verify_adjoint_relations(&p).map(|rep| {
                        format!(
                            "{} parameter, {} character, {} scaling identities",
                            rep.parameter_identities,
                            rep.character_identities,
                            rep.scaling_identities
                        )
                    })
                });
                if result.is_err() {
                    ok = false;
                }
                emit_check(cli.config.json, &format!("packet-{}", raw.name), &result);
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Multiplicity {
            group,
            weight,
            level,
            member,
            emit_terms,
        } => {
            let cat = Catalog::shipped()?;
            let ctx =
                AssemblyContext::new(&cat, &group, &level, cli.config.cache_dir().as_deref())?;
            let param = ctx.param_for_weight(weight)?;
            let member_idx = match member {
                Some(m) => ctx.member_index(&m)?,
                None => 0,
            };
            let (m, report) = multiplicity(&ctx, &param, member_idx)?;
            if emit_terms {
                for t in &report.terms {
                    if cli.config.json {
                        println!("{}", serde_json::to_string(t)?);
                    } else {
                        println!(
                            "term {}/{}/{}: sign {} weyl {} product {:?}",
                            t.endo, t.levi, t.class, t.sign, t.weyl_quotient, t.product
                        );
                    }
                }
            }
            if cli.config.json {
                #[derive(Serialize)]
                struct Out {
                    group: String,
                    weight: i64,
                    level: String,
                    member: String,
                    multiplicity: i64,
                    exact: bool,
                    fingerprint: String,
                }
                let out = Out {
                    group,
                    weight,
                    level,
                    member: ctx.packet.members[member_idx].label.clone(),
                    multiplicity: m,
                    exact: report.exact,
                    fingerprint: report.fingerprint,
                };
                println!("{}", serde_json::to_string(&out)?);
            } else {
                println!("{m}");
            }
            Ok(0)
        }
        Command::Lefschetz {
            group,
            weight,
            level,
            emit_terms,
        } => {
            let cat = Catalog::shipped()?;
            let ctx =
                AssemblyContext::new(&cat, &group, &level, cli.config.cache_dir().as_deref())?;
            let report = lefschetz_checked(&ctx, weight, None, None)?;
            if emit_terms {
                for t in &report.terms {
                    if cli.config.json {
                        println!("{}", serde_json::to_string(t)?);
                    } else {
                        println!(
                            "term {}/{}/{}: sign {} weyl {} product {:?}",
                            t.endo, t.levi, t.class, t.sign, t.weyl_quotient, t.product
                        );
                    }
                }
            }
            if cli.config.json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                println!(
                    "{}",
                    report
                        .total
                        .exact
                        .clone()
                        .unwrap_or_else(|| format!("{:.9}", report.total.re))
                );
            }
            Ok(0)
        }
        Command::Verify {
            action: VerifyAction::All,
        } => {
            let ok = verify_all(&cli.config)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}
