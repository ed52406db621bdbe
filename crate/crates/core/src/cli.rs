//! Competition-style command line front end.
//!
//! `-p <TASK> -f <FILE> -fo <FORMAT> [-a <ARG>]` solves one task and prints
//! exactly one line on stdout; `--problems` and `--formats` print the
//! supported task and format lists. Every error is a diagnostic on stderr
//! with exit code 1 and nothing on stdout.

use std::fs;
use std::io::Write;
use std::str::FromStr;

use crate::af::{Af, Format};
use crate::reasoner::{self, Answer, Problem, Semantics, TaskSpec};

const PROBLEMS: &str = "[DC-CO,DC-GR,DC-ID,DC-PR,DC-ST,DS-CO,DS-GR,DS-ID,DS-PR,DS-ST,\
     SE-CO,SE-GR,SE-ID,SE-PR,SE-ST,CE-CO,CE-GR,CE-ID,CE-PR,CE-ST]";
const FORMATS: &str = "[tgf,apx]";

const USAGE: &str = "usage: afsat -p <TASK> -f <FILE> -fo <FORMAT> [-a <ARG>] \
     [--dimacs-dump <PATH>] | afsat --problems | afsat --formats";

#[derive(Default)]
struct Invocation {
    problem: Option<String>,
    file: Option<String>,
    format: Option<String>,
    query: Option<String>,
    dimacs_dump: Option<String>,
    list_problems: bool,
    list_formats: bool,
}

fn parse_args(args: &[String]) -> Result<Invocation, String> {
    let mut inv = Invocation::default();
    let mut i = 0;
    while i < args.len() {
        let flag = args[i].as_str();
        let mut value_for = |slot: &mut Option<String>| -> Result<(), String> {
            if slot.is_some() {
                return Err(format!("duplicate flag `{flag}`"));
            }
            i += 1;
            match args.get(i) {
                Some(v) => {
                    *slot = Some(v.clone());
                    Ok(())
                }
                None => Err(format!("missing value after `{flag}`")),
            }
        };
        match flag {
            "--problems" => inv.list_problems = true,
            "--formats" => inv.list_formats = true,
            "-p" => value_for(&mut inv.problem)?,
            "-f" => value_for(&mut inv.file)?,
            "-fo" => value_for(&mut inv.format)?,
            "-a" => value_for(&mut inv.query)?,
            "--dimacs-dump" => value_for(&mut inv.dimacs_dump)?,
            other => return Err(format!("unknown flag `{other}`")),
        }
        i += 1;
    }
    Ok(inv)
}

fn parse_task(task: &str, query: Option<String>) -> Result<TaskSpec, String> {
    let (problem, semantics) = task
        .split_once('-')
        .ok_or_else(|| format!("unsupported task `{task}`"))?;
    let problem =
        Problem::from_str(problem).map_err(|_| format!("unsupported task `{task}`"))?;
    let semantics =
        Semantics::from_str(semantics).map_err(|_| format!("unsupported task `{task}`"))?;
    TaskSpec::new(problem, semantics, query).map_err(|e| e.to_string())
}

fn render(af: &Af, answer: &Answer) -> String {
    match answer {
        Answer::Extension(s) => af.format_extension(s),
        Answer::NoExtension => "NO".to_string(),
        Answer::Count(c) => c.to_string(),
        Answer::Verdict(true) => "YES".to_string(),
        Answer::Verdict(false) => "NO".to_string(),
    }
}

fn solve(inv: &Invocation, out: &mut dyn Write) -> Result<(), String> {
    let task_name = inv.problem.as_ref().ok_or(USAGE)?;
    let file = inv.file.as_ref().ok_or(USAGE)?;
    let format_name = inv.format.as_ref().ok_or(USAGE)?;
    let format = Format::from_str(format_name)
        .map_err(|_| format!("unsupported format `{format_name}` (supported: {FORMATS})"))?;
    let task = parse_task(task_name, inv.query.clone())?;
    let text = fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
    let af = Af::parse(&text, format).map_err(|e| format!("{file}: {e}"))?;
    if let Some(path) = &inv.dimacs_dump {
        let cnf = reasoner::base_encoding(&af, &task).map_err(|e| e.to_string())?;
        if let Some(cnf) = cnf {
            let mut f = fs::File::create(path).map_err(|e| format!("{path}: {e}"))?;
            cnf.write_dimacs(&mut f).map_err(|e| format!("{path}: {e}"))?;
        }
    }
    let answer = reasoner::answer(&af, &task).map_err(|e| e.to_string())?;
    writeln!(out, "{}", render(&af, &answer)).map_err(|e| e.to_string())
}

/// Runs one invocation; returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let inv = match parse_args(args) {
        Ok(inv) => inv,
        Err(msg) => {
            let _ = writeln!(err, "{msg}");
            return 1;
        }
    };
    let mode_flags = usize::from(inv.list_problems) + usize::from(inv.list_formats);
    let has_task_flags = inv.problem.is_some()
        || inv.file.is_some()
        || inv.format.is_some()
        || inv.query.is_some()
        || inv.dimacs_dump.is_some();
    if mode_flags > 1 || (mode_flags == 1 && has_task_flags) {
        let _ = writeln!(err, "{USAGE}");
        return 1;
    }
    if inv.list_problems {
        let _ = writeln!(out, "{PROBLEMS}");
        return 0;
    }
    if inv.list_formats {
        let _ = writeln!(out, "{FORMATS}");
        return 0;
    }
    match solve(&inv, out) {
        Ok(()) => 0,
        Err(msg) => {
            let _ = writeln!(err, "{msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Outcome {
        code: i32,
        stdout: String,
        stderr: String,
    }

    fn run_cli(args: &[&str]) -> Outcome {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&args, &mut out, &mut err);
        Outcome {
            code,
            stdout: String::from_utf8(out).unwrap(),
            stderr: String::from_utf8(err).unwrap(),
        }
    }

    fn temp_af(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    const AF1_TGF: &str = "a\nb\nc\n#\na b\nb c\n";
    const AF2_APX: &str = "arg(a).\narg(b).\natt(a,b).\natt(b,a).\n";
    const AF3_TGF: &str = "a\nb\nc\n#\na b\nb c\nc a\n";
    const AF4_TGF: &str = "a\nb\nc\nd\n#\nb c\nc b\nb d\nc d\nd a\n";

    #[test]
    fn se_st_prints_extension() {
        let f = temp_af(AF1_TGF);
        let r = run_cli(&["-p", "SE-ST", "-f", f.path().to_str().unwrap(), "-fo", "tgf"]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "[a,c]\n");
        assert_eq!(r.stderr, "");
    }

    #[test]
    fn ds_pr_prints_yes() {
        let f = temp_af(AF4_TGF);
        let r = run_cli(&[
            "-p",
            "DS-PR",
            "-f",
            f.path().to_str().unwrap(),
            "-fo",
            "tgf",
            "-a",
            "a",
        ]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "YES\n");
    }

    #[test]
    fn ce_co_prints_count() {
        let f = temp_af(AF2_APX);
        let r = run_cli(&["-p", "CE-CO", "-f", f.path().to_str().unwrap(), "-fo", "apx"]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "3\n");
    }

    #[test]
    fn se_st_without_stable_extension_prints_no() {
        let f = temp_af(AF3_TGF);
        let r = run_cli(&["-p", "SE-ST", "-f", f.path().to_str().unwrap(), "-fo", "tgf"]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "NO\n");
    }

    #[test]
    fn se_with_empty_extension_prints_brackets() {
        let f = temp_af("a\nb\n#\na b\nb a\n");
        let r = run_cli(&["-p", "SE-GR", "-f", f.path().to_str().unwrap(), "-fo", "tgf"]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "[]\n");
    }

    #[test]
    fn lists_formats() {
        let r = run_cli(&["--formats"]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "[tgf,apx]\n");
    }

    #[test]
    fn lists_problems() {
        let r = run_cli(&["--problems"]);
        assert_eq!(r.code, 0);
        assert_eq!(
            r.stdout,
            "[DC-CO,DC-GR,DC-ID,DC-PR,DC-ST,DS-CO,DS-GR,DS-ID,DS-PR,DS-ST,\
             SE-CO,SE-GR,SE-ID,SE-PR,SE-ST,CE-CO,CE-GR,CE-ID,CE-PR,CE-ST]\n"
        );
    }

    #[test]
    fn all_twenty_task_strings_are_accepted() {
        let f = temp_af(AF1_TGF);
        let path = f.path().to_str().unwrap();
        for problem in ["DC", "DS", "SE", "CE"] {
            for sem in ["CO", "GR", "ID", "PR", "ST"] {
                let task = format!("{problem}-{sem}");
                let needs_query = problem == "DC" || problem == "DS";
                let mut args = vec!["-p", task.as_str(), "-f", path, "-fo", "tgf"];
                if needs_query {
                    args.extend(["-a", "a"]);
                }
                let r = run_cli(&args);
                assert_eq!(r.code, 0, "task {task} failed: {}", r.stderr);
                assert!(r.stdout.ends_with('\n'));
                assert_eq!(r.stdout.lines().count(), 1);
            }
        }
    }

    #[test]
    fn usage_errors_exit_one_with_empty_stdout() {
        let f = temp_af(AF1_TGF);
        let path = f.path().to_str().unwrap();
        let cases: Vec<Vec<&str>> = vec![
            vec![],
            vec!["--problems", "--formats"],
            vec!["--problems", "-p", "SE-ST", "-f", path, "-fo", "tgf"],
            vec!["-p", "SE-ST", "-fo", "tgf"],
            vec!["-p", "SE-XX", "-f", path, "-fo", "tgf"],
            vec!["-p", "SE-ST", "-f", path, "-fo", "xml"],
            vec!["-p", "SE-ST", "-f", path, "-fo", "tgf", "-a", "a"],
            vec!["-p", "DS-PR", "-f", path, "-fo", "tgf"],
            vec!["-p", "SE-ST", "-f", path, "-fo"],
            vec!["-x", "nope"],
            vec!["-p", "SE-ST", "-p", "SE-ST", "-f", path, "-fo", "tgf"],
        ];
        for args in cases {
            let r = run_cli(&args);
            assert_eq!(r.code, 1, "args {args:?}");
            assert_eq!(r.stdout, "", "args {args:?}");
            assert!(!r.stderr.is_empty(), "args {args:?}");
        }
    }

    #[test]
    fn file_errors_are_diagnosed() {
        let r = run_cli(&["-p", "SE-ST", "-f", "/nonexistent.tgf", "-fo", "tgf"]);
        assert_eq!(r.code, 1);
        assert_eq!(r.stdout, "");
        assert!(r.stderr.contains("/nonexistent.tgf"));

        let bad = temp_af("a\n#\na b\n");
        let r = run_cli(&["-p", "SE-ST", "-f", bad.path().to_str().unwrap(), "-fo", "tgf"]);
        assert_eq!(r.code, 1);
        assert_eq!(r.stdout, "");
        assert!(r.stderr.contains("line 3"), "{}", r.stderr);
        assert!(r.stderr.contains("undeclared argument b"), "{}", r.stderr);
    }

    #[test]
    fn unknown_query_argument_is_diagnosed() {
        let f = temp_af(AF1_TGF);
        let r = run_cli(&[
            "-p",
            "DC-PR",
            "-f",
            f.path().to_str().unwrap(),
            "-fo",
            "tgf",
            "-a",
            "zz",
        ]);
        assert_eq!(r.code, 1);
        assert_eq!(r.stdout, "");
        assert!(r.stderr.contains("unknown argument"), "{}", r.stderr);
    }

    #[test]
    fn dc_gr_is_answered_via_normalization() {
        let f = temp_af(AF1_TGF);
        let r = run_cli(&[
            "-p",
            "DC-GR",
            "-f",
            f.path().to_str().unwrap(),
            "-fo",
            "tgf",
            "-a",
            "c",
        ]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "YES\n");
    }

    #[test]
    fn dimacs_dump_writes_base_encoding() {
        let f = temp_af(AF1_TGF);
        let dir = tempfile::tempdir().unwrap();
        let dump = dir.path().join("enc.cnf");
        let r = run_cli(&[
            "-p",
            "SE-ST",
            "-f",
            f.path().to_str().unwrap(),
            "-fo",
            "tgf",
            "--dimacs-dump",
            dump.to_str().unwrap(),
        ]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "[a,c]\n");
        let dumped = std::fs::read_to_string(&dump).unwrap();
        assert!(dumped.starts_with("p cnf 3 "), "{dumped}");
        assert!(dumped.ends_with("0\n"));
    }

    #[test]
    fn dimacs_dump_skipped_for_fixpoint_only_tasks() {
        let f = temp_af(AF1_TGF);
        let dir = tempfile::tempdir().unwrap();
        let dump = dir.path().join("enc.cnf");
        let r = run_cli(&[
            "-p",
            "SE-GR",
            "-f",
            f.path().to_str().unwrap(),
            "-fo",
            "tgf",
            "--dimacs-dump",
            dump.to_str().unwrap(),
        ]);
        assert_eq!(r.code, 0);
        assert!(!dump.exists());
    }
}
