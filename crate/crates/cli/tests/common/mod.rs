#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// One committed CLI example: arguments and the exit code it must produce.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

macro_rules! case {
    ($name:literal, $code:literal, [$($arg:literal),* $(,)?]) => {
        GoldenCase { name: $name, args: &[$($arg),*], code: $code }
    };
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    case!("catchup_half_json", 0, ["catchup", "--x0", "1", "--sa", "2", "--st", "1", "--json"]),
    case!("catchup_tenth", 0, ["catchup", "--x0", "1", "--sa", "10", "--st", "1"]),
    case!("catchup_equal_speeds", 3, ["catchup", "--x0", "1", "--sa", "1", "--st", "1"]),
    case!("steps_half_csv", 0, ["steps", "--x0", "1", "--sa", "2", "--st", "1", "--n", "3", "--format", "csv"]),
    case!("steps_stationary", 0, ["steps", "--x0", "1", "--sa", "2", "--st", "0", "--n", "2"]),
    case!("steps_divergent", 0, ["steps", "--x0", "1", "--sa", "1", "--st", "2", "--n", "3"]),
    case!("steps_n_out_of_range", 2, ["steps", "--x0", "1", "--sa", "2", "--st", "1", "--n", "10001"]),
    case!("within_tenth", 0, ["within", "--x0", "1", "--sa", "2", "--st", "1", "--eps", "1/10"]),
    case!("within_two", 0, ["within", "--x0", "1", "--sa", "2", "--st", "1", "--eps", "2"]),
    case!("within_divergent", 3, ["within", "--x0", "1", "--sa", "1", "--st", "1", "--eps", "1/10"]),
    case!("process_half", 0, ["process", "--first", "1/2", "--ratio", "1/2", "--k", "2"]),
    case!("process_single", 0, ["process", "--first", "1", "--ratio", "0", "--k", "0"]),
    case!("process_unit_ratio", 0, ["process", "--first", "1", "--ratio", "1", "--k", "2"]),
    case!("process_limit_divergent", 3, ["process", "--first", "1", "--ratio", "1"]),
    case!("dichotomy_unit", 0, ["dichotomy", "--length", "1", "--speed", "1", "--n", "2"]),
    case!("bounce_half", 0, ["bounce", "--first", "1", "--ratio", "1/2"]),
    case!("bounce_dead", 0, ["bounce", "--first", "1", "--ratio", "0"]),
    case!("floaterr_dyadic", 0, ["floaterr", "--x0", "1", "--sa", "2", "--st", "1", "--nmax", "4"]),
    case!("floaterr_tenth", 0, ["floaterr", "--x0", "1", "--sa", "10", "--st", "1", "--nmax", "4"]),
    case!("floaterr_divergent", 3, ["floaterr", "--x0", "1", "--sa", "1", "--st", "2", "--nmax", "4"]),
    case!("catchup_bad_rational", 2, ["catchup", "--x0", "1/0", "--sa", "2", "--st", "1"]),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_zeno"))
        .args(args)
        .output()
        .expect("spawn zeno");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// The committed transcript format: exit code, then stdout, then stderr.
pub fn transcript(run: &Run) -> String {
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        run.code, run.stdout, run.stderr
    )
}

/// `Ok(())` when the case reproduces its golden file byte for byte.
pub fn check_golden(case: &GoldenCase) -> Result<(), String> {
    let run = run_cli(case.args);
    if run.code != case.code {
        return Err(format!("{}: exit {} (expected {})", case.name, run.code, case.code));
    }
    let path = golden_dir().join(format!("{}.txt", case.name));
    let actual = transcript(&run);
    if std::env::var_os("ZENO_BLESS").is_some() {
        std::fs::write(&path, &actual).expect("write golden");
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: cannot read {}: {e}", case.name, path.display()))?;
    if expected != actual {
        return Err(format!(
            "{}: output differs from {}\n--- expected\n{expected}--- actual\n{actual}",
            case.name,
            path.display()
        ));
    }
    Ok(())
}
