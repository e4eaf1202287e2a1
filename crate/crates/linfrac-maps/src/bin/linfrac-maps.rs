use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use linfrac_maps::enumerate::{admissible_orders, census, census_fields, CensusRow};
use linfrac_maps::field::FieldCtx;
use linfrac_maps::oracle::diff_against_enumerate;
use linfrac_maps::report::{render_census, render_diff, render_listing, Format, MapRecord};
use linfrac_maps::symmetry::analyze;
use linfrac_maps::triples::construct;
use linfrac_maps::Error;

/// Regular maps on PSL(2,q) and PGL(2,q) from explicit 2x2 generators:
/// census tables, per-map symmetry classification, and a brute-force
/// cross-check.
#[derive(Parser)]
#[command(name = "linfrac-maps", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write output here instead of stdout. Relative paths resolve under
    /// LINFRAC_MAPS_OUT_DIR when that variable is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cross-check every symmetry flag against an explicit witness search
    #[arg(long, global = true)]
    validate: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Census of map classes for every admissible field up to a bound
    Table {
        #[arg(long, default_value_t = 81)]
        qmax: u32,
    },
    /// List the map classes of one field, optionally filtered by type
    Classify {
        #[arg(long)]
        q: u32,
        /// Keep only classes with this vertex order
        #[arg(long)]
        k: Option<u32>,
        /// Keep only classes with this face order
        #[arg(long)]
        l: Option<u32>,
        /// Attach duality and Petrie witnesses (JSON output only)
        #[arg(long)]
        witnesses: bool,
    },
    /// Recount one field by brute force inside PGL(2,q) and diff
    Oracle {
        #[arg(long)]
        q: u32,
        /// Largest field the brute-force path will attempt
        #[arg(long, default_value_t = 13)]
        oracle_cap: u32,
    },
    /// Field tower summary for one q
    Field {
        #[arg(long)]
        q: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Md,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Md => Format::Markdown,
        }
    }
}

#[derive(Serialize)]
struct FieldSummary {
    q: u32,
    p: u32,
    e: u32,
    q2: u32,
    generator_code: u32,
    alpha: String,
    chi_minus_one: i32,
    admissible_orders: Vec<u32>,
}

fn field_summary(f: &FieldCtx) -> FieldSummary {
    FieldSummary {
        q: f.q(),
        p: f.p(),
        e: f.e(),
        q2: f.q2(),
        generator_code: f.generator_code(),
        alpha: f.alpha().to_string(),
        chi_minus_one: f.chi_q(f.neg(f.one())),
        admissible_orders: admissible_orders(f),
    }
}

fn render_field(s: &FieldSummary, format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string(s).expect("plain struct");
            out.push('\n');
            out
        }
        Format::Csv => format!(
            "q,p,e,q2,generator_code,alpha,chi_minus_one,admissible_orders\n{},{},{},{},{},{},{},{}\n",
            s.q,
            s.p,
            s.e,
            s.q2,
            s.generator_code,
            s.alpha,
            s.chi_minus_one,
            s.admissible_orders
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
        Format::Markdown => format!(
            "| q | p | e | q2 | generator | alpha | chi(-1) | orders |\n\
             |---|---|---|----|-----------|-------|---------|--------|\n\
             | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            s.q,
            s.p,
            s.e,
            s.q2,
            s.generator_code,
            s.alpha,
            s.chi_minus_one,
            s.admissible_orders
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let resolved = match std::env::var_os("LINFRAC_MAPS_OUT_DIR") {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            if let Some(parent) = resolved.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(&resolved, text)?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let format: Format = cli.format.into();
    match cli.cmd {
        Cmd::Table { qmax } => {
            if qmax > 81 {
                eprintln!("warning: fields beyond q = 81 are outside the verified range");
            }
            let mut rows: Vec<CensusRow> = Vec::new();
            for q in census_fields(qmax) {
                let f = FieldCtx::for_q(q)?;
                rows.push(census(&f, cli.validate)?.row);
            }
            emit(&cli.out, &render_census(&rows, format))?;
            Ok(0)
        }
        Cmd::Classify { q, k, l, witnesses } => {
            let f = FieldCtx::for_q(q)?;
            let c = census(&f, cli.validate)?;
            let mut records = Vec::new();
            for class in &c.classes {
                if k.is_some_and(|k| class.sig.k != k) || l.is_some_and(|l| class.sig.l != l) {
                    continue;
                }
                let mut rec = MapRecord::from_class(q, class);
                if witnesses {
                    let t = construct(&f, &class.sig)?;
                    rec = rec.with_witnesses(&analyze(&f, &t)?);
                }
                records.push(rec);
            }
            emit(&cli.out, &render_listing(&records, format))?;
            Ok(0)
        }
        Cmd::Oracle { q, oracle_cap } => {
            let f = FieldCtx::for_q(q)?;
            let diff = diff_against_enumerate(&f, oracle_cap)?;
            let ok = diff.ok;
            emit(&cli.out, &render_diff(&diff, format))?;
            Ok(if ok { 0 } else { 2 })
        }
        Cmd::Field { q } => {
            let f = FieldCtx::for_q(q)?;
            emit(&cli.out, &render_field(&field_summary(&f), format))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ (Error::ConditionWitnessMismatch(_) | Error::BucketViolation(_))) => {
            eprintln!("validation failed: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
