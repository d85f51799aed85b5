//! Command-line front end over the library: enumeration, blowup/projection
//! utilities, canonical forms, dihedral constructions, and table
//! reproduction, with text, JSON, and CSV emitters.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::json;

use sedf_tools::dihedral::{
    cghk_construction, equivalence_witness, hjn_construction, near_factorizations_equivalent,
    verify_near_factorization, DihedralSubsetPair,
};
use sedf_tools::enumeration::{
    annotate_alpha_coverage, enumerate_sedfs, pair_indices, EnumerationReport,
};
use sedf_tools::sedf::Sedf;
use sedf_tools::valuation::{parse_sequence, render_sequence, BlowupKind, StructureReport, Valuation};

#[derive(Parser)]
#[command(
    name = "sedf-tools",
    version,
    about = "alpha-valuations of K_{a,b} and the (a^2+1,2,a,1)-SEDFs they induce"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// suppress timing fields so identical runs emit identical bytes
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all inequivalent (a^2+1,2,a,1)-SEDFs in Z_{a^2+1}
    Enumerate {
        #[arg(long)]
        a: u64,
        /// worker threads (0 = default pool); output is identical regardless
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Compose a blowup sequence (e.g. "II:2,I:4,II:2" or "(2,4,2)") into a valuation
    Blowup {
        #[arg(long)]
        sequence: String,
    },
    /// Remove one maximal blowup step from a valuation read from stdin
    Project,
    /// Verify a valuation from stdin and report its structural type and decomposition
    Classify,
    /// Canonical form and witness of an SEDF read from stdin
    Canonical,
    /// Decide affine equivalence of two SEDFs read from stdin as a JSON array
    Equivalent,
    /// Verify an SEDF (or valuation) read from stdin
    Verify,
    /// Dihedral-group near-factorization and SEDF constructions
    Dihedral {
        /// block size k (odd)
        #[arg(long)]
        k: u64,
        /// group order parameter for the tile construction (default (k^2+1)/2)
        #[arg(long)]
        n: Option<u64>,
        /// verify the explicit equivalence between the two constructions
        #[arg(long)]
        check_equivalence: bool,
    },
    /// Reproduce the published tables of classes and blowup sequences
    Tables {
        #[arg(long, value_enum)]
        which: Table,
        #[arg(long, default_value_t = 12)]
        a_max: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Table1,
    Table2,
}

/// exit status 1: structurally invalid or unparseable input objects
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let result = match &cli.output {
                Some(path) => std::fs::write(path, out.as_bytes()).map_err(|e| e.to_string()),
                None => {
                    println!("{}", out.trim_end_matches('\n'));
                    Ok(())
                }
            };
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read_stdin_json<T: DeserializeOwned>() -> Result<T, InputError> {
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf)?;
    Ok(serde_json::from_str(&buf)?)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_unsupported(sub: &str) -> InputError {
    InputError(format!("csv output is not defined for `{sub}`"))
}

/// `{P_0,P_1}` notation for a symmetric residue set.
fn pair_notation(set: &sedf_tools::zmod::ResidueSet) -> String {
    let body: Vec<String> = pair_indices(set).iter().map(|x| format!("P_{x}")).collect();
    format!("{{{}}}", body.join(","))
}

fn symmetric_notation(s: &Sedf) -> String {
    format!("{},{}", pair_notation(s.set_a()), pair_notation(s.set_b()))
}

fn witness_text(w: &sedf_tools::sedf::EquivalenceWitness) -> String {
    if w.swapped {
        format!("{}, swap", w.map)
    } else {
        w.map.to_string()
    }
}

fn fmt_labels(labels: &[u64]) -> String {
    let body: Vec<String> = labels.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", body.join(","))
}

fn valuation_text(v: &Valuation) -> String {
    format!(
        "K_{{{},{}}}: small={} large={}",
        v.a(),
        v.b(),
        fmt_labels(v.small()),
        fmt_labels(v.large())
    )
}

fn structure_text(s: &StructureReport) -> String {
    match s {
        StructureReport::Trivial => "trivial".to_string(),
        StructureReport::TypeI { ell } => format!("type I (ell = {ell})"),
        StructureReport::TypeII { ell } => format!("type II (ell = {ell})"),
    }
}

fn report_json(report: &EnumerationReport, no_timing: bool) -> serde_json::Value {
    let classes: Vec<serde_json::Value> = report
        .classes
        .iter()
        .map(|c| {
            json!({
                "canonical": c.canonical,
                "symmetric": c.symmetric,
                "map": c.witness,
                "blowup_sequence": c.blowup_sequence,
            })
        })
        .collect();
    let mut value = json!({
        "a": report.a,
        "count": report.classes.len(),
        "classes": classes,
        "candidates_scanned": report.candidates_scanned,
    });
    if !no_timing {
        value["elapsed_ms"] = json!(report.elapsed.as_millis() as u64);
    }
    value
}

fn report_rows(report: &EnumerationReport) -> Vec<[String; 5]> {
    report
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            [
                format!("{}.{}", report.a, i + 1),
                symmetric_notation(&c.symmetric),
                format!("({})", c.canonical),
                witness_text(&c.witness),
                c.blowup_sequence.clone().unwrap_or_else(|| "NOT-alpha".to_string()),
            ]
        })
        .collect()
}

fn run(cli: &Cli) -> Result<String, InputError> {
    match &cli.command {
        Command::Enumerate { a, workers } => {
            if *a == 0 {
                return Err(InputError("a must be at least 1".to_string()));
            }
            let mut report = enumerate_sedfs(*a, *workers);
            annotate_alpha_coverage(&mut report);
            match cli.format {
                Format::Json => Ok(serde_json::to_string_pretty(&report_json(
                    &report,
                    cli.no_timing,
                ))?),
                Format::Csv => {
                    let mut out =
                        String::from("number,symmetric,canonical,mapping,blowup_sequence\n");
                    for row in report_rows(&report) {
                        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                        out.push_str(&fields.join(","));
                        out.push('\n');
                    }
                    Ok(out)
                }
                Format::Text => {
                    let mut out = format!(
                        "a = {}: {} classes, {} candidates scanned",
                        report.a,
                        report.classes.len(),
                        report.candidates_scanned
                    );
                    if !cli.no_timing {
                        out.push_str(&format!(", {} ms", report.elapsed.as_millis()));
                    }
                    out.push('\n');
                    for row in report_rows(&report) {
                        out.push_str(&format!(
                            "{}  {}  {}  {}  {}\n",
                            row[0], row[1], row[2], row[3], row[4]
                        ));
                    }
                    Ok(out)
                }
            }
        }
        Command::Blowup { sequence } => {
            let steps = parse_sequence(sequence).map_err(InputError)?;
            let v = Valuation::compose(&steps);
            match cli.format {
                Format::Json => Ok(serde_json::to_string_pretty(&v)?),
                Format::Csv => Err(csv_unsupported("blowup")),
                Format::Text => Ok(format!(
                    "{}\nsequence: {}\n",
                    valuation_text(&v),
                    render_sequence(&steps)
                )),
            }
        }
        Command::Project => {
            let v: Valuation = read_stdin_json()?;
            let kind = match v.detect_structure()? {
                StructureReport::Trivial => {
                    return Err(InputError(
                        "the trivial valuation admits no projection".to_string(),
                    ))
                }
                StructureReport::TypeI { .. } => BlowupKind::I,
                StructureReport::TypeII { .. } => BlowupKind::II,
            };
            let (projected, ell) = v.project(kind)?;
            match cli.format {
                Format::Json => Ok(serde_json::to_string_pretty(&json!({
                    "kind": format!("{kind:?}"),
                    "ell": ell,
                    "valuation": projected,
                }))?),
                Format::Csv => Err(csv_unsupported("project")),
                Format::Text => Ok(format!(
                    "step: {kind:?}:{ell}\n{}\n",
                    valuation_text(&projected)
                )),
            }
        }
        Command::Classify => {
            let v: Valuation = read_stdin_json()?;
            let check = v.verify();
            let structure = v.detect_structure()?;
            let sequence = render_sequence(&v.decompose()?);
            match cli.format {
                Format::Json => Ok(serde_json::to_string_pretty(&json!({
                    "valid": check.is_valid(),
                    "structure": structure,
                    "sequence": sequence,
                }))?),
                Format::Csv => Err(csv_unsupported("classify")),
                Format::Text => Ok(format!(
                    "{}\nstructure: {}\nsequence: {}\n",
                    if check.is_valid() { "valid" } else { "invalid" },
                    structure_text(&structure),
                    sequence
                )),
            }
        }
        Command::Canonical => {
            let s: Sedf = read_stdin_json()?;
            let (canonical, witness) = s.canonical_form();
            match cli.format {
                Format::Json => Ok(serde_json::to_string_pretty(&json!({
                    "canonical": canonical,
                    "map": witness,
                }))?),
                Format::Csv => Err(csv_unsupported("canonical")),
                Format::Text => Ok(format!(
                    "canonical: ({canonical})\nmapping: {}\n",
                    witness_text(&witness)
                )),
            }
        }
        Command::Equivalent => {
            let pair: Vec<Sedf> = read_stdin_json()?;
            let [s1, s2]: &[Sedf; 2] = pair
                .as_slice()
                .try_into()
                .map_err(|_| InputError("expected a JSON array of exactly two SEDFs".to_string()))?;
            let witness = s1.equivalent(s2)?;
            match cli.format {
                Format::Json => Ok(serde_json::to_string_pretty(&json!({
                    "equivalent": witness.is_some(),
                    "witness": witness,
                }))?),
                Format::Csv => Err(csv_unsupported("equivalent")),
                Format::Text => Ok(match witness {
                    Some(w) => format!("equivalent\nwitness: {}\n", witness_text(&w)),
                    None => "inequivalent\n".to_string(),
                }),
            }
        }
        Command::Verify => {
            let value: serde_json::Value = read_stdin_json()?;
            let (valid, detail) = if value.get("n").is_some() {
                let s: Sedf = serde_json::from_value(value)?;
                let check = s.verify();
                (check.is_valid(), format!("{check:?}"))
            } else {
                let v: Valuation = serde_json::from_value(value)?;
                let check = v.verify();
                (check.is_valid(), format!("{check:?}"))
            };
            match cli.format {
                Format::Json => Ok(serde_json::to_string_pretty(&json!({
                    "valid": valid,
                    "detail": detail,
                }))?),
                Format::Csv => Err(csv_unsupported("verify")),
                Format::Text => Ok(if valid {
                    "valid\n".to_string()
                } else {
                    format!("invalid: {detail}\n")
                }),
            }
        }
        Command::Dihedral {
            k,
            n,
            check_equivalence,
        } => run_dihedral(cli, *k, *n, *check_equivalence),
        Command::Tables {
            which,
            a_max,
            workers,
        } => run_tables(cli, *which, *a_max, *workers),
    }
}

fn run_dihedral(
    cli: &Cli,
    k: u64,
    n: Option<u64>,
    check_equivalence: bool,
) -> Result<String, InputError> {
    let sedf = hjn_construction(k)?;
    let n = n.unwrap_or(sedf.n);
    let tile: DihedralSubsetPair = cghk_construction(n, k)?;
    let transcript = if check_equivalence {
        let t = equivalence_witness(k)?;
        let nf = sedf.to_near_factorization();
        let equivalent = near_factorizations_equivalent(&t.tile_pair, &nf).is_some();
        Some((t, equivalent))
    } else {
        None
    };
    match cli.format {
        Format::Csv => Err(csv_unsupported("dihedral")),
        Format::Json => {
            let mut value = json!({
                "k": k,
                "tile": tile,
                "sedf": {"n": sedf.n, "A1": sedf.a1, "A2": sedf.a2},
            });
            if let Some((t, equivalent)) = transcript {
                value["h"] = serde_json::to_value(t.h)?;
                value["equivalent"] = json!(equivalent);
            }
            Ok(serde_json::to_string_pretty(&value)?)
        }
        Format::Text => {
            let mut out = format!(
                "tile construction   {}\nsedf construction   {}\n",
                tile, sedf
            );
            debug_assert!(verify_near_factorization(&tile).is_valid());
            if let Some((t, equivalent)) = transcript {
                out.push_str(&format!("{t}\n"));
                out.push_str(if equivalent {
                    "equivalent\n"
                } else {
                    "inequivalent\n"
                });
            }
            Ok(out)
        }
    }
}

fn run_tables(cli: &Cli, which: Table, a_max: u64, workers: usize) -> Result<String, InputError> {
    if a_max == 0 {
        return Err(InputError("a-max must be at least 1".to_string()));
    }
    if a_max > 14 {
        eprintln!("warning: a > 14 may take a very long time");
    }
    let mut reports = Vec::new();
    for a in 1..=a_max {
        let mut report = enumerate_sedfs(a, workers);
        annotate_alpha_coverage(&mut report);
        reports.push(report);
    }
    match (which, cli.format) {
        (Table::Table1, Format::Csv) => {
            let mut out = String::from("number,symmetric,canonical,mapping\n");
            for report in &reports {
                for row in report_rows(report) {
                    let fields: Vec<String> =
                        row[..4].iter().map(|f| csv_field(f)).collect();
                    out.push_str(&fields.join(","));
                    out.push('\n');
                }
            }
            Ok(out)
        }
        (Table::Table1, Format::Json) => {
            let rows: Vec<serde_json::Value> = reports
                .iter()
                .flat_map(|report| {
                    report.classes.iter().enumerate().map(|(i, c)| {
                        json!({
                            "number": format!("{}.{}", report.a, i + 1),
                            "symmetric": c.symmetric,
                            "canonical": c.canonical,
                            "map": c.witness,
                        })
                    })
                })
                .collect();
            Ok(serde_json::to_string_pretty(&json!({
                "table": "table1",
                "rows": rows,
            }))?)
        }
        (Table::Table1, Format::Text) => {
            let mut out = String::new();
            for report in &reports {
                for row in report_rows(report) {
                    out.push_str(&format!(
                        "{}  {}  {}  {}\n",
                        row[0], row[1], row[2], row[3]
                    ));
                }
            }
            Ok(out)
        }
        (Table::Table2, Format::Csv) => {
            let mut out = String::from("number,blowup_sequence\n");
            for report in &reports {
                for row in report_rows(report) {
                    out.push_str(&format!(
                        "{},{}\n",
                        csv_field(&row[0]),
                        csv_field(&row[4])
                    ));
                }
            }
            Ok(out)
        }
        (Table::Table2, Format::Json) => {
            let rows: Vec<serde_json::Value> = reports
                .iter()
                .flat_map(|report| {
                    report.classes.iter().enumerate().map(|(i, c)| {
                        json!({
                            "number": format!("{}.{}", report.a, i + 1),
                            "blowup_sequence": c.blowup_sequence,
                        })
                    })
                })
                .collect();
            Ok(serde_json::to_string_pretty(&json!({
                "table": "table2",
                "rows": rows,
            }))?)
        }
        (Table::Table2, Format::Text) => {
            let mut out = String::new();
            for report in &reports {
                for row in report_rows(report) {
                    out.push_str(&format!("{}  {}\n", row[0], row[4]));
                }
            }
            Ok(out)
        }
    }
}
