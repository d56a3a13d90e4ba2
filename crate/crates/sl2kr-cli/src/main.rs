mod args;
mod report;

use std::io::Read;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use serde_json::{json, Value};
use sl2kr::complex::{invariance_suite, LinkDiagram, Outcome};
use sl2kr::Error;

use args::{Args, Report};

const EXIT_COMPUTATION: u8 = 1;
const EXIT_PARSE: u8 = 2;

/// One requested diagram as written by the user.
enum Input {
    Pd(String),
    Braid(String),
}

impl Input {
    fn text(&self) -> &str {
        match self {
            Input::Pd(s) | Input::Braid(s) => s,
        }
    }

    fn parse(&self) -> Result<LinkDiagram, Error> {
        match self {
            Input::Pd(s) => LinkDiagram::from_pd(s),
            Input::Braid(s) => {
                let word = LinkDiagram::parse_braid_word(s)?;
                let strands = word.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
                LinkDiagram::from_braid(strands, &word)
            }
        }
    }
}

fn read_inputs(args: &Args) -> anyhow::Result<Vec<Input>> {
    let mut inputs = Vec::new();
    if let Some(path) = &args.pd {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        inputs.extend(
            text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(|l| Input::Pd(l.to_string())),
        );
    }
    inputs.extend(args.braid.iter().map(|b| Input::Braid(b.clone())));
    Ok(inputs)
}

fn error_entry(kind: &str, e: &Error) -> Value {
    json!({ "kind": kind, "message": e.to_string() })
}

fn run(args: &Args) -> anyhow::Result<u8> {
    let config = match args.config() {
        Ok(c) => c,
        Err(m) => {
            eprintln!("error: {m}");
            return Ok(EXIT_PARSE);
        }
    };
    let inputs = read_inputs(args)?;
    let mut code = 0u8;
    let results = sl2kr::exec::map(&inputs, |inp| match inp.parse() {
        Err(e) => (EXIT_PARSE, json!({ "input": inp.text(), "error": error_entry("parse", &e) })),
        Ok(d) => match report::item(&d, &config) {
            Ok(Value::Object(mut m)) => {
                m.insert("input".into(), json!(inp.text()));
                (0, Value::Object(m))
            }
            Ok(v) => (0, v),
            Err(e) => (EXIT_COMPUTATION, json!({ "input": inp.text(), "error": error_entry("computation", &e) })),
        },
    });
    let mut items = Vec::with_capacity(results.len());
    for (c, v) in results {
        code = code.max(c);
        items.push(v);
    }
    let mut out = json!({ "schema": report::SCHEMA, "config": report::config(&config), "items": items });
    if config.reports.contains(&Report::InvarianceSuite) {
        let window = config.window.unwrap_or_else(|| report::default_suite_window(config.opts.n));
        let results = invariance_suite(&config.opts, window)?;
        if results.iter().any(|r| matches!(r.outcome, Outcome::Fail(_))) {
            code = code.max(EXIT_COMPUTATION);
        }
        out["invariance_suite"] = report::suite(&results);
    }
    let text = serde_json::to_string_pretty(&out)? + "\n";
    match &args.json {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_COMPUTATION)
        }
    }
}
