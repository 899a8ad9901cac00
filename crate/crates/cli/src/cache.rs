//! Rendered outputs keyed by a SHA-256 of the canonical input.

use crate::commands;
use crate::{Cli, Command, Failure};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::Path;

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn key(cli: &Cli, inputs: &[(String, Vec<u8>)]) -> String {
    let g = &cli.global;
    let mut h = Sha256::new();
    h.update(format!(
        "v{VERSION}\n{:?}\n{:?}\n{:?}\n{:?}\n{}\n",
        cli.command, g.format, g.max_order, g.budget, g.seed
    ));
    for (path, bytes) in inputs {
        h.update(format!("{path}\n{}\n", bytes.len()));
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

fn cacheable(cmd: &Command) -> bool {
    !matches!(cmd, Command::Pair { out: Some(_) })
}

pub fn run(cli: &Cli) -> Result<String, Failure> {
    let inputs = commands::input_files(&cli.command)?;
    let use_cache = !cli.global.no_cache && cacheable(&cli.command);
    let path = cli.global.cache.join(format!("{}.out", key(cli, &inputs)));
    if use_cache {
        if let Ok(text) = fs::read_to_string(&path) {
            return Ok(text);
        }
    }
    let text = commands::execute(cli)?.render(cli.global.format);
    if use_cache {
        store(&path, &text);
    }
    Ok(text)
}

/// Best effort: an unwritable cache never fails a run.
fn store(path: &Path, text: &str) {
    let Some(dir) = path.parent() else { return };
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, path).is_err() {
        let _ = fs::remove_file(&tmp);
    }
}
