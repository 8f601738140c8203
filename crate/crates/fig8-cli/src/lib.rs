//! Command-line front end: regime classification, evaluation of the colored
//! Jones function, convergence studies against the predicted asymptotics,
//! CSV grid export for contour figures, and an invariant self-test.
//!
//! Exit codes: 0 success, 1 usage or I/O, 2 domain error, 3 numerical failure.

mod commands;
mod literal;
mod selftest;

use std::collections::BTreeMap;
use std::sync::Once;

pub use literal::{parse_complex, parse_config_file, Tolerances};

pub(crate) const SCHEMA_VERSION: &str = "1";

const GLOBAL_HELP: &str = "\
fig8: colored Jones function of the figure-eight knot at q = exp(xi/N)

Usage: fig8 <command> [flags]

Commands:
  classify   label a cusp parameter with its asymptotic regime
  jones      evaluate J_N, directly or through the potential-function route
  study      exact-versus-predicted convergence table over a list of N
  predict    leading asymptotic term, growth rate, and torsion factor
  cs         Chern-Simons invariant of the geometric representation
  grid       sample Re F, regime labels, or half-plane membership to CSV
  selftest   run the cross-module invariant suite

Common flags: --xi a+bi (complex literal; a bare i means 1i),
              --config FILE (key=value lines: quad_tol, zero_tol)

`fig8 <command> --help` prints the command's flags.
Exit codes: 0 ok, 1 usage/IO, 2 domain, 3 numerical.";

/// Error carrying the process exit code.
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
        }
    }
}

pub(crate) fn core_failure(e: fig8_core::Error) -> Failure {
    let code = match e {
        fig8_core::Error::QuadratureStall { .. } => 3,
        _ => 2,
    };
    Failure {
        code,
        msg: e.to_string(),
    }
}

/// Caps the rayon pool at FIG8_THREADS before any parallel region spawns.
fn ensure_pool() -> Result<(), Failure> {
    static INIT: Once = Once::new();
    let mut bad: Option<String> = None;
    INIT.call_once(|| {
        let Ok(raw) = std::env::var("FIG8_THREADS") else {
            return;
        };
        match raw.parse::<usize>() {
            Ok(n) if n >= 1 => {
                // a second global build can only race another in-process
                // caller; the pool that won is equally valid
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => bad = Some(format!("FIG8_THREADS must be a positive integer, got `{raw}`")),
        }
    });
    match bad {
        Some(msg) => Err(Failure::usage(msg)),
        None => Ok(()),
    }
}

/// Parsed `--key value` / `--key=value` flags. `parse` returns None when
/// --help was consumed (already printed, exit 0).
pub(crate) struct Flags {
    map: BTreeMap<String, String>,
}

impl Flags {
    pub(crate) fn parse(
        args: &[String],
        allowed: &[&str],
        help: &str,
    ) -> Result<Option<Flags>, Failure> {
        if args.iter().any(|a| a == "--help" || a == "-h") {
            println!("{help}");
            return Ok(None);
        }
        let mut map = BTreeMap::new();
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            let Some(body) = arg.strip_prefix("--") else {
                return Err(Failure::usage(format!(
                    "unexpected positional argument `{arg}`\n\n{help}"
                )));
            };
            let (key, value) = match body.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let Some(v) = it.next() else {
                        return Err(Failure::usage(format!("flag --{body} needs a value")));
                    };
                    (body.to_string(), v.clone())
                }
            };
            if !allowed.contains(&key.as_str()) {
                return Err(Failure::usage(format!(
                    "unknown flag --{key}\n\n{help}"
                )));
            }
            if map.insert(key.clone(), value).is_some() {
                return Err(Failure::usage(format!("flag --{key} given twice")));
            }
        }
        Ok(Some(Flags { map }))
    }

    pub(crate) fn require(&self, key: &str) -> Result<&str, Failure> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Failure::usage(format!("missing required flag --{key}")))
    }

    pub(crate) fn optional(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }
}

pub fn run(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(()) => 0,
        Err(f) => {
            if !f.msg.is_empty() {
                eprintln!("{}", f.msg);
            }
            f.code
        }
    }
}

fn dispatch(args: &[String]) -> Result<(), Failure> {
    let Some(cmd) = args.first() else {
        return Err(Failure::usage(GLOBAL_HELP));
    };
    let rest = &args[1..];
    match cmd.as_str() {
        "--help" | "-h" | "help" => {
            println!("{GLOBAL_HELP}");
            Ok(())
        }
        "classify" => commands::classify(rest),
        "jones" => commands::jones(rest),
        "study" => commands::study(rest),
        "predict" => commands::predict_cmd(rest),
        "cs" => commands::cs(rest),
        "grid" => commands::grid(rest),
        "selftest" => commands::selftest_cmd(rest),
        other => Err(Failure::usage(format!(
            "unknown command `{other}`\n\n{GLOBAL_HELP}"
        ))),
    }
}
