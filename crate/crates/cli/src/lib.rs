//! Command-line front end for `taukit-core`: subcommand routing, output rendering,
//! run manifests and the acceptance suite.

pub mod args;
pub mod commands;
pub mod criteria;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use args::{Cli, Format};
use commands::{execute, CmdError, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parse `argv`, run the command and write the rendered result to `out`.
/// Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };

    let start = Instant::now();
    let result = match cli.threads {
        Some(0) => Err(CmdError::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(CmdError::Usage(format!("thread pool: {e}"))),
        },
        None => execute(&cli.command),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };

    let bytes = match render(&report, cli.format) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let wall = start.elapsed().as_secs_f64();
    if out.write_all(&bytes).is_err() {
        return EXIT_USAGE;
    }
    let code = if report.ok { EXIT_OK } else { EXIT_VERIFY };
    if !report.ok {
        let _ = writeln!(err, "verification failed");
    }

    if let Some(path) = &cli.manifest {
        let m = manifest(&argv, cli.threads, cli.format, wall, &bytes, code);
        let text = serde_json::to_string_pretty(&m).unwrap_or_default() + "\n";
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(err, "error: writing manifest {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    code
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn manifest(argv: &[OsString], threads: Option<usize>, format: Format, wall: f64, output: &[u8], code: i32) -> Value {
    json!({
        "tool": "taukit",
        "version": env!("CARGO_PKG_VERSION"),
        "argv": argv.iter().map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>(),
        "threads": threads,
        "format": format!("{format:?}").to_lowercase(),
        "exit_code": code,
        "wall_seconds": wall,
        "output_sha256": digest(output),
        "output_bytes": output.len(),
    })
}

/// Render a report. JSON is pretty-printed with sorted keys; CSV uses the report's
/// table or, failing that, flattened `path,value` rows.
pub fn render(report: &Report, format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.value).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let e = |e: csv::Error| e.to_string();
            match &report.table {
                Some((header, rows)) => {
                    w.write_record(header).map_err(e)?;
                    for r in rows {
                        w.write_record(r).map_err(e)?;
                    }
                }
                None => {
                    w.write_record(["path", "value"]).map_err(e)?;
                    let mut flat = Vec::new();
                    flatten("", &report.value, &mut flat);
                    for (k, v) in flat {
                        w.write_record([k, v]).map_err(e)?;
                    }
                }
            }
            w.into_inner().map_err(|e| e.to_string())
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
