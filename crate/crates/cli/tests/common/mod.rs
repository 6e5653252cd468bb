#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('|').expect("name | args");
            Case {
                name: name.trim().to_string(),
                args: args.split_whitespace().map(String::from).collect(),
            }
        })
        .collect()
}

/// Exit code, stdout and stderr in one comparable transcript.
pub fn transcript(case: &Case) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_ncx"))
        .args(&case.args)
        .current_dir(golden_dir())
        .output()
        .expect("run ncx");
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

/// Compares every case with its `.out` file. Set `UPDATE_GOLDEN=1` to rewrite them.
pub fn check_goldens() -> Vec<(String, Result<(), String>)> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    cases()
        .into_iter()
        .map(|case| {
            let path = golden_dir().join(format!("{}.out", case.name));
            let got = transcript(&case);
            if update {
                std::fs::write(&path, &got).expect("write golden");
            }
            let outcome = match std::fs::read_to_string(&path) {
                Ok(want) if want == got => Ok(()),
                Ok(want) => Err(format!("expected\n{want}\ngot\n{got}")),
                Err(e) => Err(format!("{}: {e}", path.display())),
            };
            (case.name, outcome)
        })
        .collect()
}
