#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// One invocation: name of its golden files, arguments, expected exit
/// status and the file it writes (relative to the working directory).
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub code: i32,
    pub writes: Option<String>,
}

fn case(name: &str, args: &[&str], code: i32, writes: Option<&str>) -> Case {
    Case {
        name: name.to_string(),
        args: args.iter().map(|s| s.to_string()).collect(),
        code,
        writes: writes.map(str::to_string),
    }
}

pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for r in ["pair", "rank4", "type22", "type31", "chain"] {
        let file = corpus(&format!("{r}.ring"));
        let file = file.to_str().unwrap();
        out.push(case(&format!("check_{r}"), &["ring", "check", file, "--trials", "200"], 0, None));
        let dot = format!("{r}.dot");
        out.push(case(&format!("brspec_{r}"), &["ring", "brspec", file, "--dot", &dot], 0, Some(&dot)));
    }
    for p in ["vee", "rank4", "chain3", "n"] {
        let file = corpus(&format!("{p}.poset"));
        let file = file.to_str().unwrap();
        let code = if p == "n" { 1 } else { 0 };
        out.push(case(&format!("poset_{p}"), &["poset", "check", file], code, None));
        let ring = format!("{p}.ring");
        let writes = (code == 0).then_some(ring.as_str());
        out.push(case(
            &format!("realize_{p}"),
            &["realize", file, "-o", &ring, "--trials", "100"],
            code,
            writes,
        ));
    }
    out.push(case("embed_case1", &["embed", "case1", "--dim", "2", "--samples", "100"], 0, None));
    out.push(case("embed_case2", &["embed", "case2", "--dim", "1", "--samples", "100"], 0, None));
    out.push(case("boolprod", &["boolprod", "--points", "4", "--samples", "200"], 0, None));
    out
}

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub written: Option<String>,
}

pub fn run(args: &[String], dir: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_svring"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn svring");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
        written: None,
    }
}

pub fn run_case(c: &Case) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let mut r = run(&c.args, dir.path());
    r.written = c.writes.as_ref().map(|f| fs::read_to_string(dir.path().join(f)).unwrap());
    r
}

/// Differences between a run and the stored golden files. With
/// `SVRING_BLESS=1` the golden files are rewritten instead.
pub fn golden_mismatches(c: &Case, r: &Run) -> Vec<String> {
    let dir = golden_dir();
    let mut files = vec![(format!("{}.out", c.name), r.stdout.clone())];
    if let (Some(f), Some(text)) = (&c.writes, &r.written) {
        let ext = Path::new(f).extension().unwrap().to_str().unwrap();
        files.push((format!("{}.{ext}", c.name), text.clone()));
    }
    let bless = std::env::var("SVRING_BLESS").is_ok_and(|v| v == "1");
    let mut bad = Vec::new();
    for (name, text) in files {
        let path = dir.join(&name);
        if bless {
            fs::write(&path, &text).unwrap();
        } else if fs::read_to_string(&path).ok().as_deref() != Some(text.as_str()) {
            bad.push(name);
        }
    }
    bad
}
