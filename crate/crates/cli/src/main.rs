//! grouplab: catalog inspection, per-subgroup property verdicts,
//! theorem verification suites and property separation over small
//! permutation groups.
//!
//! Exit codes: 0 success / no violations, 1 suite violation present,
//! 2 usage or parse error, 3 cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use grouplab_core::catalog::{catalog_find, load_catalog, CatalogEntry};
use grouplab_core::config::Config;
use grouplab_core::harness::{self, SuiteId, SuiteReport};
use grouplab_core::lattice::all_subgroups;
use grouplab_core::props::{self, PropertyId};
use grouplab_core::report::{subgroup_value, write_reports};
use grouplab_core::structure::{self, Formation};
use grouplab_core::{Error, Permutation, Subgroup};

#[derive(Parser)]
#[command(
    name = "grouplab",
    version,
    about = "finite-group computation laboratory"
)]
struct Cli {
    #[command(flatten)]
    common: CommonOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Catalog file (JSON array of group specs); default, or the
    /// GROUPLAB_CATALOG environment variable, is the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2000)]
    max_group_order: usize,
    #[arg(long, global = true, default_value_t = 400)]
    max_lattice_order: usize,
    #[arg(long, global = true, default_value_t = 100)]
    max_ccp_order: usize,
    /// Worker threads for suite evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog inspection.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Structural summary of one group.
    Structure {
        #[arg(long)]
        group: String,
    },
    /// Embedding-property verdicts for subgroups of one group.
    Props {
        #[arg(long)]
        group: String,
        /// "all" or a JSON array of generator image arrays.
        #[arg(long, default_value = "all")]
        subgroup: String,
        /// Comma-separated property ids.
        #[arg(long)]
        properties: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        /// Comma-separated suite ids, or "all".
        #[arg(long)]
        suite: String,
        /// Restrict Theorem A / corollary suites to one formation.
        #[arg(long)]
        formation: Option<String>,
        /// Only catalog groups of order <= N.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List subgroups with property a but not property b.
    Distinguish {
        #[arg(long)]
        prop_a: String,
        #[arg(long)]
        prop_b: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print every catalog entry.
    List,
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    // Die quietly when stdout is closed early (e.g. piping into head).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let mut config = Config {
        max_group_order: cli.common.max_group_order,
        max_lattice_order: cli.common.max_lattice_order,
        max_ccp_order: cli.common.max_ccp_order,
        jobs: cli.common.jobs,
        catalog: cli.common.catalog.clone(),
        ..Config::default()
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build_global();

    match run(cli.command, &mut config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn run(command: Command, config: &mut Config) -> grouplab_core::Result<u8> {
    match command {
        Command::Catalog { action } => {
            let catalog = load_catalog(config)?;
            match action {
                CatalogAction::List => {
                    for entry in &catalog {
                        println!(
                            "{:10} order {:4} degree {}",
                            entry.name,
                            entry.group.order(),
                            entry.group.degree()
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Structure { group } => {
            let catalog = load_catalog(config)?;
            let entry = catalog_find(&catalog, &group)?;
            print_structure(entry)?;
            Ok(0)
        }
        Command::Props {
            group,
            subgroup,
            properties,
            out,
        } => {
            let catalog = load_catalog(config)?;
            let entry = catalog_find(&catalog, &group)?;
            let props_list: Vec<PropertyId> = properties
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse())
                .collect::<grouplab_core::Result<_>>()?;
            let subgroups = select_subgroups(entry, &subgroup)?;
            let mut rows = Vec::new();
            for h in &subgroups {
                for prop in &props_list {
                    let verdict = props::check_property(&entry.group, h, prop)?;
                    println!(
                        "{} subgroup(order {:3}) {:30} {}",
                        entry.name,
                        h.order(),
                        prop.to_string(),
                        verdict.holds
                    );
                    rows.push(json!({
                        "group": entry.name,
                        "subgroup": subgroup_value(h),
                        "property": prop.to_string(),
                        "holds": verdict.holds,
                    }));
                }
            }
            if let Some(path) = out {
                let doc = json!({ "group": entry.name, "verdicts": rows });
                std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap())
                    .map_err(|e| Error::Io(e.to_string()))?;
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            formation,
            max_order,
            out,
        } => {
            if let Some(f) = formation {
                let f: Formation = f.parse()?;
                config.formations = vec![f];
            }
            config.max_order = max_order;
            let catalog = load_catalog(config)?;
            let suites: Vec<SuiteId> = if suite == "all" {
                SuiteId::all()
            } else {
                suite
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.trim().parse())
                    .collect::<grouplab_core::Result<_>>()?
            };
            let mut reports: Vec<SuiteReport> = Vec::new();
            for id in suites {
                let report = harness::run_suite(id, &catalog, config)?;
                println!(
                    "suite {:14} records {:5}  confirmed {:5}  vacuous {:5}  violations {}",
                    report.suite,
                    report.records.len(),
                    report.tallies.confirmed,
                    report.tallies.vacuous,
                    report.tallies.violation
                );
                reports.push(report);
            }
            let any_violation = reports.iter().any(|r| r.tallies.violation > 0);
            if let Some(path) = out {
                write_reports(&reports, &path)?;
            }
            Ok(if any_violation { 1 } else { 0 })
        }
        Command::Distinguish { prop_a, prop_b } => {
            let a: PropertyId = prop_a.parse()?;
            let b: PropertyId = prop_b.parse()?;
            let catalog = load_catalog(config)?;
            let report = harness::distinguish(&a, &b, &catalog, config)?;
            for w in &report.witnesses {
                println!(
                    "{} subgroup order {} generators {}",
                    w["group"].as_str().unwrap_or("?"),
                    w["subgroup"]["order"],
                    w["subgroup"]["generators"]
                );
            }
            if report.witnesses.is_empty() {
                println!("no separating subgroup found in the catalog");
            }
            for name in &report.skipped_groups {
                eprintln!("skipped {name} (cap)");
            }
            Ok(0)
        }
    }
}

fn select_subgroups(entry: &CatalogEntry, spec: &str) -> grouplab_core::Result<Vec<Subgroup>> {
    if spec == "all" {
        let lat = all_subgroups(&entry.group)?;
        return Ok(lat.iter().collect());
    }
    let arrays: Vec<Vec<usize>> =
        serde_json::from_str(spec).map_err(|e| Error::Parse(format!("--subgroup: {e}")))?;
    let gens: Vec<Permutation> = arrays
        .into_iter()
        .map(Permutation::from_images)
        .collect::<grouplab_core::Result<_>>()?;
    Ok(vec![Subgroup::from_generators(&entry.group, &gens)?])
}

fn print_structure(entry: &CatalogEntry) -> grouplab_core::Result<()> {
    let g = &entry.group;
    println!(
        "{} : order {}, degree {}",
        entry.name,
        g.order(),
        g.degree()
    );
    let lat = all_subgroups(g)?;
    println!("  subgroups: {}", lat.len());
    let normal_orders: Vec<usize> = lat.normals().map(|n| n.order()).collect();
    println!("  normal subgroup orders: {normal_orders:?}");
    let chief: Vec<String> = lat
        .chief_factor_pairs()
        .iter()
        .map(|cf| {
            format!(
                "{}<{} (order {}{})",
                cf.k.order(),
                cf.l.order(),
                cf.factor_order,
                if cf.is_abelian { ", abelian" } else { "" }
            )
        })
        .collect();
    println!("  chief factor pairs: {}", chief.join("; "));
    let series: Vec<usize> = lat.chief_series().iter().map(|s| s.order()).collect();
    println!("  chief series orders: {series:?}");
    println!("  frattini order: {}", lat.frattini().order());
    println!("  fitting order: {}", structure::fitting(g)?.order());
    println!(
        "  generalized fitting order: {}",
        structure::generalized_fitting(g)?.order()
    );
    println!(
        "  Z_U order: {}",
        structure::hypercentre(g, Formation::Supersoluble)?.order()
    );
    println!(
        "  Z_S order: {}",
        structure::hypercentre(g, Formation::Soluble)?.order()
    );
    for p in structure::primes_of(g.order() as u64) {
        let sylows = lat.sylow_subgroups(p);
        println!(
            "  sylow {p}: count {} order {}",
            sylows.len(),
            sylows[0].order()
        );
    }
    let flags: Vec<(&str, bool)> = vec![
        ("abelian", structure::is_abelian(g)),
        ("cyclic", structure::is_cyclic(g)),
        ("nilpotent", structure::is_nilpotent(g)?),
        ("soluble", structure::is_soluble(g)?),
        ("supersoluble", structure::is_supersoluble(g)?),
        ("quasinilpotent", structure::is_quasinilpotent(g)?),
    ];
    let rendered: Vec<String> = flags
        .iter()
        .map(|(name, v)| format!("{name}={v}"))
        .collect();
    println!("  classes: {}", rendered.join(" "));
    Ok(())
}
