//! `kacstab`: analyze stability data of an acyclic quiver from the shell.
//!
//! Exit codes: 0 success, 1 parse/validation errors, 2 window failures
//! after all retries, 3 exhausted enumeration budgets.

mod svg;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use kacstab::analyze::{analyze, RunConfig};
use kacstab::charge::CentralCharge;
use kacstab::cone::{build_a_sigma, heart_simples, imaginary_cone, phase_gap};
use kacstab::exceptional::{extract_sigma_exceptional, verify_exceptional};
use kacstab::homext::HomExtTable;
use kacstab::json as kjson;
use kacstab::quiver::{classify_type, forms, Quiver};
use kacstab::repr::bgp_reflect;
use kacstab::roots::{fundamental_set_k, imaginary_roots_up_to, real_roots_up_to};
use kacstab::stability::{semistable_classes_up_to, support_constant};
use kacstab::tilt::{tilt_heart, HeartSMC, TiltDirection};
use kacstab::{Error, Int};

#[derive(Parser)]
#[command(name = "kacstab", version, about = "Exact stability data for acyclic quivers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Args)]
struct Common {
    /// Quiver file (text format or JSON mirror)
    #[arg(long)]
    quiver: String,
    /// Height bound for root enumeration
    #[arg(long, short = 'H', default_value_t = 8)]
    height: usize,
    /// Element budget for reflection closures (env KACSTAB_BUDGET overrides)
    #[arg(long)]
    budget: Option<usize>,
    /// Bound doublings after a window failure
    #[arg(long, default_value_t = 3)]
    retries: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed recorded in the output (reserved for randomized front ends)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full pipeline: forms, type, roots, semistables, cone, gap, heart,
    /// exceptional collection, global-dimension data
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Charge spec: `-1+1i,1+1i`, `charge ...`, or JSON `[[xn,xd,yn,yd],...]`
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
    /// Root enumeration only
    Roots {
        #[command(flatten)]
        common: Common,
    },
    /// Phase gap and heart certificate (use `--format svg` for a diagram)
    Gap {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
    /// Tilt a heart at one simple
    Tilt {
        #[command(flatten)]
        common: Common,
        /// `std` or a JSON heart file
        #[arg(long, default_value = "std")]
        heart: String,
        /// 1-based index of the simple to tilt at
        #[arg(long)]
        at: usize,
        /// left or right
        #[arg(long)]
        dir: String,
    },
    /// Apply the reflection functor at a sink or source
    Reflect {
        #[command(flatten)]
        common: Common,
        /// Representation JSON file
        #[arg(long)]
        rep: String,
        /// 1-based vertex
        #[arg(long)]
        at: usize,
    },
    /// Extract and verify the exceptional collection of the certified heart
    Exceptional {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
}

fn budget_of(common: &Common) -> Result<usize, Error> {
    let fallback = match std::env::var("KACSTAB_BUDGET") {
        Ok(v) => v
            .parse()
            .map_err(|_| Error::Parse(format!("bad KACSTAB_BUDGET value `{v}`")))?,
        Err(_) => 1_000_000,
    };
    let b = common.budget.unwrap_or(fallback);
    if b < 1000 {
        return Err(Error::Validation("budget must be at least 1000".into()));
    }
    Ok(b)
}

fn config_of(common: &Common) -> Result<RunConfig, Error> {
    Ok(RunConfig {
        height: common.height.max(1),
        budget: budget_of(common)?,
        retries: common.retries,
        slack: 3,
        seed: common.seed,
    })
}

fn load_quiver(path: &str) -> Result<Quiver, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read quiver file `{path}`: {e}")))?;
    Quiver::parse(&text)
}

fn load_charge(spec: &str, n: usize) -> Result<CentralCharge<Int>, Error> {
    let z = CentralCharge::parse(spec)?;
    if z.n() != n {
        return Err(Error::Validation(format!(
            "charge has {} values for {} vertices",
            z.n(),
            n
        )));
    }
    Ok(z)
}

fn emit(value: &serde_json::Value, format: Format) {
    match format {
        Format::Json => println!("{}", kjson::to_compact(value)),
        _ => println!("{}", kjson::to_pretty(value)),
    }
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze { common, charge } => {
            let q = load_quiver(&common.quiver)?;
            let z = load_charge(&charge, q.n())?;
            let cfg = config_of(&common)?;
            let bundle = analyze::<Int>(&q, &z, &cfg)?;
            emit(&kjson::bundle_value(&bundle), common.format);
            Ok(())
        }
        Cmd::Roots { common } => {
            let q = load_quiver(&common.quiver)?;
            let cfg = config_of(&common)?;
            let f = forms::<Int>(&q);
            let opts = cfg.root_options();
            let real = real_roots_up_to(&f, cfg.height, &opts)?;
            let imaginary = imaginary_roots_up_to(&f, &q, cfg.height, &opts)?;
            let fundamental = fundamental_set_k(&f, &q, cfg.height);
            let value = json!({
                "schema_version": kjson::SCHEMA_VERSION,
                "height": cfg.height,
                "quiver_type": kjson::quiver_type_value(&classify_type(&f)?),
                "real": kjson::root_set_value(real.iter()),
                "imaginary": kjson::root_set_value(imaginary.iter()),
                "fundamental": kjson::root_set_value(fundamental.iter()),
            });
            emit(&value, common.format);
            Ok(())
        }
        Cmd::Gap { common, charge } => {
            let q = load_quiver(&common.quiver)?;
            let z = load_charge(&charge, q.n())?;
            let cfg = config_of(&common)?;
            let bundle = analyze::<Int>(&q, &z, &cfg)?;
            if common.format == Format::Svg {
                println!("{}", svg::phase_circle(&bundle));
            } else {
                let value = kjson::gap_bundle_value(&bundle.gap, &bundle.components, &bundle.heart);
                emit(&value, common.format);
            }
            Ok(())
        }
        Cmd::Tilt {
            common,
            heart,
            at,
            dir,
        } => {
            let q = load_quiver(&common.quiver)?;
            let cfg = config_of(&common)?;
            let table = HomExtTable::new(forms::<Int>(&q), cfg.height.max(12));
            let h: HeartSMC<Int> = if heart == "std" {
                HeartSMC::standard(q.n())
            } else {
                let text = fs::read_to_string(&heart)
                    .map_err(|e| Error::Parse(format!("cannot read heart file `{heart}`: {e}")))?;
                kjson::parse_heart_smc(&text)?
            };
            if at == 0 || at > h.simples.len() {
                return Err(Error::Index(at, h.simples.len()));
            }
            let dir = match dir.as_str() {
                "left" => TiltDirection::Left,
                "right" => TiltDirection::Right,
                other => return Err(Error::Parse(format!("bad direction `{other}`"))),
            };
            let tilted = tilt_heart(&h, at - 1, dir, &table)?;
            emit(&kjson::heart_smc_value(&tilted), common.format);
            Ok(())
        }
        Cmd::Reflect { common, rep, at } => {
            let q = load_quiver(&common.quiver)?;
            let text = fs::read_to_string(&rep)
                .map_err(|e| Error::Parse(format!("cannot read representation file `{rep}`: {e}")))?;
            let m = kjson::parse_representation::<Int>(&q, &text)?;
            if at == 0 {
                return Err(Error::Index(at, q.n()));
            }
            let (rq, rm) = bgp_reflect(&q, at - 1, &m)?;
            emit(&kjson::representation_value(&rq, &rm), common.format);
            Ok(())
        }
        Cmd::Exceptional { common, charge } => {
            let q = load_quiver(&common.quiver)?;
            let z = load_charge(&charge, q.n())?;
            let cfg = config_of(&common)?;
            // Single pass at the configured height plus the retry ladder,
            // reusing the pipeline stages directly.
            let f = forms::<Int>(&q);
            let opts = cfg.root_options();
            let mut h = cfg.height.max(1);
            let mut last: Option<Error> = None;
            for _ in 0..=cfg.retries {
                let table = HomExtTable::new(f.clone(), h.max(12));
                let step = (|| {
                    let ss = semistable_classes_up_to(&z, &table, &q, h, &opts)?;
                    let sc = support_constant(&z, &ss)?;
                    let ty = classify_type(&f)?;
                    let im = imaginary_roots_up_to(&f, &q, h, &opts)?;
                    let cone = imaginary_cone(&ty, &im, h)?;
                    let comps = build_a_sigma(&cone, &z, &sc.min_f_sq, &sc.z_norm_sq);
                    let gap = phase_gap(&comps, &ss)?;
                    let heart = heart_simples(&gap, &ss, &f)?;
                    let coll = extract_sigma_exceptional(&heart, &table)?;
                    let report = verify_exceptional(&coll, &table)?;
                    let value = json!({
                        "schema_version": kjson::SCHEMA_VERSION,
                        "theta": kjson::phase_value(&coll.theta),
                        "entries": kjson::collection_value(&coll)["entries"].clone(),
                        "report": kjson::report_value(&report),
                    });
                    Ok::<_, Error>(value)
                })();
                match step {
                    Ok(value) => {
                        emit(&value, common.format);
                        return Ok(());
                    }
                    Err(e @ (Error::NotABasis(_) | Error::WindowOverflow { .. })) => {
                        last = Some(e);
                        h *= 2;
                    }
                    Err(e) => return Err(e),
                }
            }
            Err(last.expect("at least one attempt"))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = json!({
                "schema_version": kjson::SCHEMA_VERSION,
                "error": e.to_string(),
                "kind": error_kind(&e),
            });
            eprintln!("{payload}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "ParseError",
        Error::Validation(_) => "ValidationError",
        Error::Internal(_) => "InternalError",
        Error::Index(_, _) => "IndexError",
        Error::BudgetExceeded { .. } => "BudgetExceeded",
        Error::NotAStabilityFunction(_) => "NotAStabilityFunction",
        Error::ZeroCharge => "ZeroCharge",
        Error::ZeroVector => "ZeroVector",
        Error::BoundExceeded { .. } => "BoundExceeded",
        Error::NotBelow => "NotBelow",
        Error::EmptySet => "EmptySet",
        Error::NotUnit => "NotUnit",
        Error::InconsistentType(_) => "InconsistentType",
        Error::NoGap(_) => "NoGap",
        Error::NotABasis(_) => "NotABasis",
        Error::WindowOverflow { .. } => "WindowOverflow",
        Error::NotSinkOrSource(_) => "NotSinkOrSource",
        Error::NotARootResult(_) => "NotARootResult",
        Error::NoAdmissibleOrder => "NoAdmissibleOrder",
    }
}
