mod commands;
mod config;
mod parse;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use weylchar_core::Error;

use config::{Cli, RunConfig};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Config(_) => 2,
        Error::Capacity { .. } => 3,
        _ => 4,
    }
}

fn error_code(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Config(_) => "config",
        Error::Capacity { .. } => "capacity",
        Error::Structural(_) => "structural",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::Domain(_) => "domain",
        Error::SingularPoint { .. } => "singular_point",
        Error::SnapFailed(_) => "snap_failed",
    }
}

fn fail(e: &Error) -> ExitCode {
    let field = match e {
        Error::Parse { field, .. } => Some(field.clone()),
        _ => None,
    };
    emit_error(error_code(e), &e.to_string(), field);
    ExitCode::from(exit_code(e))
}

fn emit_error(code: &str, message: &str, field: Option<String>) {
    let doc = json!({ "error": { "code": code, "message": message, "field": field } });
    let text = serde_json::to_string_pretty(&doc).expect("serializable");
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn load_config(path: &std::path::Path) -> Result<RunConfig, Error> {
    let bad = |m: String| Error::Parse {
        field: "config".into(),
        message: m,
    };
    let text =
        std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if let Some(inner) = value.get_mut("config") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| bad(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = e.print();
                return ExitCode::from(2);
            }
            let field = e
                .get(clap::error::ContextKind::InvalidArg)
                .map(|v| v.to_string());
            emit_error(
                "parse",
                e.to_string().lines().next().unwrap_or("invalid arguments"),
                field,
            );
            return ExitCode::from(2);
        }
    };
    let cfg = match (&cli.config, &cli.command) {
        (Some(_), Some(_)) => Err(Error::Parse {
            field: "config".into(),
            message: "--config replaces the subcommand; give one or the other".into(),
        }),
        (Some(path), None) => load_config(path),
        (None, Some(sub)) => cli.to_config(sub),
        (None, None) => Err(Error::Parse {
            field: "subcommand".into(),
            message: "a subcommand or --config is required".into(),
        }),
    };
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let run = || commands::run(&cfg);
    let out = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::Config(format!("thread pool: {e}"))),
        },
        None => run(),
    };
    match out {
        Ok(out) => {
            let _ = std::io::stdout().write_all(render::render(&cfg, &out).as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
