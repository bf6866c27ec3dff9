//! `gwt`: reports on Goodwillie-Weiss spectral sequences of long knots.

mod cache;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gwtower::abelian::cokernel;
use gwtower::collapse::{
    collapse_region_with, thm_a_report, thm_b_vanishes_with, thm_c_assembly, ConstantVariant,
};
use gwtower::diagrams::{enumerate_trees, relation_data_version, relation_rows, RelationSet};
use gwtower::homology::compute_page;
use gwtower::homotopy::{e1_local_page, e1_rational_page_in, Tower};
use gwtower::page::Ring;
use gwtower::GwError;
use serde_json::{json, Value};

use cache::{cache_key, Cache};

#[derive(Parser)]
#[command(name = "gwt", version, about = "Spectral sequence pages, tree diagram groups and vanishing certificates for towers of long knots")]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit an aligned text table.
    #[arg(long, global = true)]
    table: bool,
    /// Result cache directory.
    #[arg(long, global = true, env = "GWT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Skip the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Report cache hits and timings on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// First pages.
    E1 {
        #[command(subcommand)]
        which: E1Cmd,
    },
    /// Higher pages.
    Page {
        #[command(subcommand)]
        which: PageCmd,
    },
    /// Tree generators and the group they span modulo relations.
    Diagrams {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value = "as,ihx,stu2", value_parser = parse_relations)]
        relations: RelationSet,
        /// List generator codes.
        #[arg(long)]
        generators: bool,
    },
    /// Vanishing certificate for d_r, or the collapse region of T_n.
    Collapse {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u32,
        #[arg(long, required_unless_present = "region", requires_all = ["s", "t"], conflicts_with = "region")]
        r: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, requires = "n")]
        region: bool,
        #[arg(long, requires = "region")]
        n: Option<u32>,
        /// Use d-1 in place of d-2 in the bound and modulus.
        #[arg(long)]
        corollary_constant: bool,
    },
    /// Low homotopy groups of T_n assembled from E² bidegrees.
    Assembly {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
    },
    /// Components of T_{n+1} for knots in ℝ³, localized at p.
    Pi0 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum E1Cmd {
    Homotopy {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        smax: u32,
        #[arg(long)]
        tmax: u32,
        #[arg(long, value_enum, default_value_t = TowerArg::Standard)]
        tower: TowerArg,
        /// Attach torsion-free certificates at this prime.
        #[arg(long)]
        p: Option<u64>,
    },
    Homology {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        smax: u32,
        #[arg(long)]
        qmax: u32,
        #[arg(long, value_parser = parse_ring)]
        ring: Ring,
    },
}

#[derive(Subcommand)]
enum PageCmd {
    Homology {
        #[arg(long)]
        d: u32,
        #[arg(long, value_parser = parse_ring)]
        ring: Ring,
        #[arg(long)]
        rmax: u32,
        #[arg(long)]
        smax: u32,
        #[arg(long)]
        qmax: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TowerArg {
    Standard,
    Reduced,
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    s.parse().map_err(|e: GwError| e.to_string())
}

fn parse_relations(s: &str) -> Result<RelationSet, String> {
    s.parse().map_err(|e: GwError| e.to_string())
}

/// A command name, its parameters and the computation producing its result.
struct Job {
    command: &'static str,
    params: Value,
    run: Box<dyn FnOnce() -> gwtower::Result<Value>>,
}

macro_rules! to_value {
    ($x:expr) => {
        serde_json::to_value($x).expect("results serialize")
    };
}

fn job(cmd: Cmd) -> Job {
    match cmd {
        Cmd::E1 { which: E1Cmd::Homotopy { d, smax, tmax, tower, p } } => {
            let tower_name = match tower {
                TowerArg::Standard => "standard",
                TowerArg::Reduced => "reduced",
            };
            Job {
                command: "e1 homotopy",
                params: json!({ "d": d, "smax": smax, "tmax": tmax, "tower": tower_name, "p": p }),
                run: Box::new(move || {
                    let page = match (p, tower) {
                        (Some(p), TowerArg::Standard) => e1_local_page(d, smax, tmax, p)?,
                        (Some(_), TowerArg::Reduced) => {
                            return Err(GwError::Unsupported("--p applies to the standard tower".into()))
                        }
                        (None, TowerArg::Standard) => e1_rational_page_in(Tower::Standard, d, smax, tmax)?,
                        (None, TowerArg::Reduced) => e1_rational_page_in(Tower::Reduced, d, smax, tmax)?,
                    };
                    Ok(to_value!(&page))
                }),
            }
        }
        Cmd::E1 { which: E1Cmd::Homology { d, smax, qmax, ring } } => Job {
            command: "e1 homology",
            params: json!({ "d": d, "smax": smax, "qmax": qmax, "ring": ring }),
            run: Box::new(move || Ok(to_value!(compute_page(d, ring, 1, smax, qmax)?.page(1)))),
        },
        Cmd::Page { which: PageCmd::Homology { d, ring, rmax, smax, qmax } } => Job {
            command: "page homology",
            params: json!({ "d": d, "ring": ring, "rmax": rmax, "smax": smax, "qmax": qmax }),
            run: Box::new(move || {
                if !ring.is_field() {
                    return Err(GwError::Unsupported(format!("higher pages need a field (Q or Fp:P), got {ring}")));
                }
                let ss = compute_page(d, ring, rmax, smax, qmax)?;
                Ok(json!({ "pages": ss.pages }))
            }),
        },
        Cmd::Diagrams { degree, relations, generators } => Job {
            command: "diagrams",
            params: json!({ "degree": degree, "relations": relations.to_string(), "generators": generators }),
            run: Box::new(move || {
                let gens = enumerate_trees(degree)?;
                let m = relation_rows(degree, &relations)?;
                let group = cokernel(&m.transpose());
                let mut out = json!({
                    "degree": degree,
                    "relations": relations.to_string(),
                    "relation_data_version": relation_data_version()?,
                    "generator_count": gens.len(),
                    "relation_rows": m.rows(),
                    "rational_rank": group.free_rank,
                    "group": group,
                });
                if generators {
                    out["generators"] = gens.iter().map(|t| t.canonical_code()).collect();
                }
                Ok(out)
            }),
        },
        Cmd::Collapse { p, d, r, s, t, region, n, corollary_constant } => {
            let variant = if corollary_constant { ConstantVariant::Corollary } else { ConstantVariant::Conservative };
            if region {
                let n = n.expect("clap requires --n with --region");
                Job {
                    command: "collapse region",
                    params: json!({ "p": p, "d": d, "n": n, "variant": variant }),
                    run: Box::new(move || Ok(to_value!(&collapse_region_with(variant, p, d, n)?))),
                }
            } else {
                let (r, s, t) = (r.unwrap(), s.unwrap(), t.unwrap());
                Job {
                    command: "collapse",
                    params: json!({ "p": p, "d": d, "r": r, "s": s, "t": t, "variant": variant }),
                    run: Box::new(move || Ok(to_value!(&thm_b_vanishes_with(variant, p, d, r, s, t)?))),
                }
            }
        }
        Cmd::Assembly { p, d, n, i } => Job {
            command: "assembly",
            params: json!({ "p": p, "d": d, "n": n, "i": i }),
            run: Box::new(move || Ok(to_value!(&thm_c_assembly(p, d, n, i)?))),
        },
        Cmd::Pi0 { p, n } => Job {
            command: "pi0",
            params: json!({ "p": p, "n": n }),
            run: Box::new(move || Ok(to_value!(&thm_a_report(p, n)?))),
        },
    }
}

enum Failure {
    Invalid(String),
    Bound(String),
    Internal(String),
}

fn classify(e: GwError) -> Failure {
    match e {
        GwError::OutOfRange { .. } => Failure::Bound(e.to_string()),
        GwError::RelationData(_) => Failure::Internal(e.to_string()),
        _ => Failure::Invalid(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = job(cli.cmd);
    let data_version = match relation_data_version() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let key = cache_key(job.command, &job.params, gwtower::VERSION, &data_version);
    let dir = if cli.no_cache { None } else { cli.cache_dir };
    let cache = Cache::new(dir, cli.verbose);
    let command = job.command;
    let params = job.params.clone();
    let run = job.run;
    let mut failure = None;
    let computed = cache.get_or_compute(&key, || {
        let start = std::time::Instant::now();
        let result = run().map_err(|e| {
            let msg = e.to_string();
            failure = Some(classify(e));
            anyhow::anyhow!(msg)
        })?;
        if cli.verbose {
            eprintln!("computed {command} in {:.3?}", start.elapsed());
        }
        let envelope = json!({ "command": command, "params": params, "result": result });
        Ok(serde_json::to_string_pretty(&envelope)? + "\n")
    });
    let payload = match computed {
        Ok((payload, _)) => payload,
        Err(e) => {
            return match failure {
                Some(Failure::Invalid(m)) => {
                    eprintln!("error: {m}");
                    ExitCode::from(2)
                }
                Some(Failure::Bound(m)) => {
                    eprintln!("bound violated: {m}");
                    ExitCode::from(3)
                }
                Some(Failure::Internal(m)) => {
                    eprintln!("error: {m}");
                    ExitCode::from(1)
                }
                None => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    let envelope: Value = match serde_json::from_str(&payload) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: cached payload is not JSON: {e}");
            return ExitCode::from(1);
        }
    };
    if cli.table {
        print!("{}", render::table(&envelope));
    } else {
        print!("{payload}");
    }
    let result = &envelope["result"];
    if result.get("valid") == Some(&Value::Bool(false)) {
        let bound = result.get("violated").and_then(Value::as_str).unwrap_or("stated bound");
        eprintln!("bound violated: {bound}");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
