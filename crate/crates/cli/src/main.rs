//! `hsc-lab`: verification pipelines for coset partitions of finite
//! groups and harmonic integer tuples.
//!
//! Output is deterministic: repeated runs, at any `--jobs` setting,
//! produce byte-identical text.

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use hsc_core::egyptian::{gcd_class, theorem_a_report};
use hsc_core::gharm::{
    find_harmonic_tuple, hsc_verify_with_cap, lemma_harness, HscVerdict, PartitionCert,
};
use hsc_core::group::{catalog_group_with_cap, parse_group, Group, DEFAULT_ORDER_CAP};
use hsc_core::zharm::{is_z_harmonic_with_cap, ZVerdict};
use hsc_core::{Error, Result};
use std::fmt::Write as _;
use std::path::PathBuf;

const RECORD_HELP: &str = "\
Machine-readable records (--format records, and always for --out) are one
record per line with tab-separated fields; the first field is the tag:

  ORDER        <N> <gcd-class> <stage1-count> <eliminated> <unresolved>
  STAGE1_GCD2  <comma-separated orders whose stage-1 candidates have even gcd>
  STAGE1_GCD3  <same for gcd divisible by 3>
  SURVIVORS    <comma-separated surviving orders, empty when none>
  ZVERDICT     HARMONIC <residues> | NOT_HARMONIC <reason>
  CONFIG       <comma-separated reps> | NONE
  SUBGROUP     <slot> <index> <comma-separated member ids>
  HSC          HOLDS <stage> | COUNTEREXAMPLE
  COSET        <rep> <index> <comma-separated member ids>
  LEMMA        <tag> <group> <instances> <vacuous> <OK|FAIL>
  VIOLATION    <tag> <description>

Exit codes: 0 found/holds, 1 negative result, 2 usage error, 3 resource cap.
The group-order cap defaults to 360 and can be set with --cap or the
HSC_LAB_CAP environment variable.";

#[derive(Parser)]
#[command(name = "hsc-lab", version, about = "Coset-partition and harmonic-tuple verifier", after_long_help = RECORD_HELP)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads; output is identical at any setting.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Console output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also write the machine-readable records to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Group-order cap (overrides HSC_LAB_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    /// Egyptian-fraction enumeration with the gcd filter only.
    #[value(name = "1")]
    One,
    /// Apply the pattern filters as well.
    Full,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate admissible index tuples for every order below --max and
    /// report which orders survive the filters.
    TheoremA {
        #[arg(long, default_value_t = 1440)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Stage::Full)]
        stage: Stage,
    },
    /// Decide whether the given moduli admit pairwise disjoint
    /// arithmetic progressions.
    Zharmonic {
        #[arg(required = true)]
        entries: Vec<u64>,
        /// Length cap for the exhaustive residue search.
        #[arg(long, default_value_t = 8)]
        tuple_cap: usize,
    },
    /// Search a group for subgroups of the given indices with pairwise
    /// disjoint cosets.
    #[command(group = ArgGroup::new("source").required(true).args(["catalog", "file"]))]
    Gharmonic {
        /// Built-in group name, e.g. S3, C60, D12, C2xA4.
        #[arg(long)]
        catalog: Option<String>,
        /// Group file (degree line, name line, one generator per line).
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(required = true)]
        entries: Vec<u64>,
    },
    /// Verify that a group admits no non-trivial coset partition with
    /// pairwise distinct indices.
    #[command(group = ArgGroup::new("source").required(true).args(["catalog", "file"]))]
    Hsc {
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Run the structural lemma checks against all matching subgroup
    /// families of a group.
    #[command(group = ArgGroup::new("source").required(true).args(["catalog", "file"]))]
    Lemmas {
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

/// Table lines, record lines, and the exit code of one command run.
struct Output {
    table: Vec<String>,
    records: Vec<String>,
    code: i32,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Domain(_) | Error::Usage(_) => 2,
                Error::Resource(_) => 3,
            }
        }
    });
}

fn run(cli: Cli) -> Result<i32> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("cannot build worker pool: {e}")))?;
    let cap = resolve_cap(cli.cap)?;
    let out = pool.install(|| dispatch(&cli.cmd, cap))?;
    let shown = match cli.format {
        Format::Table => &out.table,
        Format::Records => &out.records,
    };
    let mut stdout = String::new();
    for line in shown {
        writeln!(stdout, "{line}").unwrap();
    }
    print!("{stdout}");
    if let Some(path) = &cli.out {
        let mut text = String::new();
        for line in &out.records {
            writeln!(text, "{line}").unwrap();
        }
        std::fs::write(path, text)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(out.code)
}

fn resolve_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(c) = flag {
        if c == 0 {
            return Err(Error::Usage("--cap must be positive".into()));
        }
        return Ok(c);
    }
    match std::env::var("HSC_LAB_CAP") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::Usage(format!("invalid HSC_LAB_CAP value `{v}`"))),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn dispatch(cmd: &Cmd, cap: usize) -> Result<Output> {
    match cmd {
        Cmd::TheoremA { max, stage } => cmd_theorem_a(*max, *stage),
        Cmd::Zharmonic { entries, tuple_cap } => cmd_zharmonic(entries, *tuple_cap),
        Cmd::Gharmonic {
            catalog,
            file,
            entries,
        } => cmd_gharmonic(&load_group(catalog, file, cap)?, entries),
        Cmd::Hsc { catalog, file } => cmd_hsc(&load_group(catalog, file, cap)?, cap),
        Cmd::Lemmas { catalog, file } => cmd_lemmas(&load_group(catalog, file, cap)?),
    }
}

fn load_group(catalog: &Option<String>, file: &Option<PathBuf>, cap: usize) -> Result<Group> {
    match (catalog, file) {
        (Some(name), None) => catalog_group_with_cap(name, cap),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            parse_group(&text, cap)
        }
        _ => Err(Error::Usage("give exactly one of --catalog or --file".into())),
    }
}

fn list(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("[{}]", inner.join(", "))
}

fn csv<T: ToString>(values: impl IntoIterator<Item = T>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_theorem_a(max: u64, stage: Stage) -> Result<Output> {
    let reports = theorem_a_report(max)?;
    let mut table = Vec::new();
    let mut records = Vec::new();
    for r in reports.iter().filter(|r| !r.stage1_candidates.is_empty()) {
        let eliminated = r.eliminations.iter().filter(|e| e.is_some()).count();
        let unresolved = r.stage1_candidates.len() - eliminated;
        table.push(format!(
            "order={} gcd={} stage1={} eliminated={} unresolved={}",
            r.order,
            r.gcd_class,
            r.stage1_candidates.len(),
            eliminated,
            unresolved
        ));
        records.push(format!(
            "ORDER\t{}\t{}\t{}\t{}\t{}",
            r.order,
            r.gcd_class,
            r.stage1_candidates.len(),
            eliminated,
            unresolved
        ));
    }
    let gcd2: Vec<u64> = reports
        .iter()
        .filter(|r| r.stage1_candidates.iter().any(|t| gcd_class(t).has_two()))
        .map(|r| r.order)
        .collect();
    let gcd3: Vec<u64> = reports
        .iter()
        .filter(|r| r.stage1_candidates.iter().any(|t| gcd_class(t).has_three()))
        .map(|r| r.order)
        .collect();
    let survivors: Vec<u64> = reports
        .iter()
        .filter(|r| match stage {
            Stage::One => !r.stage1_candidates.is_empty(),
            Stage::Full => r.survives,
        })
        .map(|r| r.order)
        .collect();
    table.push(format!("STAGE1_GCD2: {}", list(&gcd2)));
    table.push(format!("STAGE1_GCD3: {}", list(&gcd3)));
    table.push(format!("SURVIVORS: {}", list(&survivors)));
    records.push(format!("STAGE1_GCD2\t{}", csv(gcd2)));
    records.push(format!("STAGE1_GCD3\t{}", csv(gcd3)));
    records.push(format!("SURVIVORS\t{}", csv(survivors.iter())));
    Ok(Output {
        table,
        records,
        code: i32::from(!survivors.is_empty()),
    })
}

fn cmd_zharmonic(entries: &[u64], tuple_cap: usize) -> Result<Output> {
    match is_z_harmonic_with_cap(entries, tuple_cap)? {
        ZVerdict::Harmonic(w) => Ok(Output {
            table: vec![format!("HARMONIC witness={w}")],
            records: vec![format!("ZVERDICT\tHARMONIC\t{w}")],
            code: 0,
        }),
        ZVerdict::NotHarmonic(reason) => Ok(Output {
            table: vec![format!("NOT_HARMONIC reason={reason}")],
            records: vec![format!("ZVERDICT\tNOT_HARMONIC\t{reason}")],
            code: 1,
        }),
    }
}

fn cmd_gharmonic(g: &Group, entries: &[u64]) -> Result<Output> {
    match find_harmonic_tuple(g, entries)? {
        Some(cfg) => {
            let reps = csv(cfg.reps.iter());
            let mut table = vec![format!("FOUND reps={reps}")];
            let mut records = vec![format!("CONFIG\t{reps}")];
            for (slot, sub) in cfg.subgroups.iter().enumerate() {
                let members = csv(sub.members().iter());
                table.push(format!(
                    "subgroup {}: index={} order={} members={{{members}}}",
                    slot + 1,
                    sub.index(),
                    sub.order()
                ));
                records.push(format!("SUBGROUP\t{}\t{}\t{members}", slot + 1, sub.index()));
            }
            Ok(Output {
                table,
                records,
                code: 0,
            })
        }
        None => Ok(Output {
            table: vec!["NONE".into()],
            records: vec!["CONFIG\tNONE".into()],
            code: 1,
        }),
    }
}

fn partition_lines(cert: &PartitionCert, table: &mut Vec<String>, records: &mut Vec<String>) {
    for (rep, sub) in &cert.cosets {
        let members = csv(sub.members().iter());
        table.push(format!(
            "coset rep={rep} index={} members={{{members}}}",
            sub.index()
        ));
        records.push(format!("COSET\t{rep}\t{}\t{members}", sub.index()));
    }
}

fn cmd_hsc(g: &Group, cap: usize) -> Result<Output> {
    match hsc_verify_with_cap(g, cap)? {
        HscVerdict::Holds(stage) => Ok(Output {
            table: vec![format!("HOLDS stage={stage}")],
            records: vec![format!("HSC\tHOLDS\t{stage}")],
            code: 0,
        }),
        HscVerdict::Counterexample(cert) => {
            let mut table = vec![format!(
                "COUNTEREXAMPLE indices={}",
                list(&cert.index_multiset)
            )];
            let mut records = vec!["HSC\tCOUNTEREXAMPLE".to_string()];
            partition_lines(&cert, &mut table, &mut records);
            Ok(Output {
                table,
                records,
                code: 1,
            })
        }
    }
}

fn cmd_lemmas(g: &Group) -> Result<Output> {
    let reports = lemma_harness(g)?;
    let mut table = Vec::new();
    let mut records = Vec::new();
    let mut failed = false;
    for r in &reports {
        for v in &r.violations {
            table.push(format!("{} group={} VIOLATION {v}", r.lemma, r.group));
            records.push(format!("VIOLATION\t{}\t{v}", r.lemma));
        }
        let status = if r.violations.is_empty() { "OK" } else { "FAIL" };
        failed |= !r.violations.is_empty();
        table.push(format!(
            "{} group={} instances={} vacuous={} {status}",
            r.lemma, r.group, r.instances, r.vacuous
        ));
        records.push(format!(
            "LEMMA\t{}\t{}\t{}\t{}\t{status}",
            r.lemma, r.group, r.instances, r.vacuous
        ));
    }
    Ok(Output {
        table,
        records,
        code: i32::from(failed),
    })
}
