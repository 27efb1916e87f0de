#![allow(dead_code)]

use std::path::{Path, PathBuf};

use assert_cmd::Command;

/// Golden cases: name and arguments, run from the workspace root.
pub const CASES: &[(&str, &[&str])] = &[
    ("validate_corpus", &["validate", "fixtures/corpus"]),
    (
        "validate_corpus_profile",
        &[
            "validate",
            "fixtures/corpus",
            "--profile",
            "fixtures/profile/pervasive.xml",
            "--strict",
        ],
    ),
    ("validate_invalid", &["validate", "fixtures/invalid"]),
    ("validate_warnings", &["validate", "fixtures/warnings"]),
    (
        "validate_warnings_strict",
        &["validate", "fixtures/warnings", "--strict"],
    ),
    ("validate_missing", &["validate", "fixtures/no-such-dir"]),
    (
        "annotate_text",
        &[
            "annotate",
            "--text",
            "So happy and proud, I got goose bumps!",
        ],
    ),
    (
        "annotate_joy",
        &["annotate", "--text", "joyful, happy, radiant"],
    ),
    (
        "annotate_nothing",
        &["annotate", "--text", "the table is brown"],
    ),
    (
        "classify_voice_anger",
        &[
            "classify",
            "--voice",
            "fixtures/scenario/jack/voice.features",
        ],
    ),
    (
        "classify_movement_anger",
        &[
            "classify",
            "--movement",
            "fixtures/scenario/jack/movement.features",
        ],
    ),
    (
        "classify_voice_sadness",
        &[
            "classify",
            "--voice",
            "fixtures/scenario/jack-sad/voice.features",
        ],
    ),
    ("classify_no_input", &["classify"]),
    (
        "classify_bad_file",
        &["classify", "--voice", "fixtures/fusion.cfg"],
    ),
    (
        "fuse_jack",
        &["fuse", "--evidence", "fixtures/scenario/jack/stream.ev"],
    ),
    (
        "fuse_sad_config",
        &[
            "fuse",
            "--evidence",
            "fixtures/scenario/jack-sad/stream.ev",
            "--config",
            "fixtures/fusion.cfg",
            "--at",
            "2",
        ],
    ),
    (
        "fuse_faded",
        &[
            "fuse",
            "--evidence",
            "fixtures/scenario/jack/stream.ev",
            "--at",
            "30",
        ],
    ),
    (
        "fuse_time_regression",
        &[
            "fuse",
            "--evidence",
            "fixtures/scenario/jack/stream.ev",
            "--at",
            "0.1",
        ],
    ),
    (
        "fuse_bad_stream",
        &["fuse", "--evidence", "fixtures/scenario/jack/policy.txt"],
    ),
    (
        "decide_jack",
        &[
            "decide",
            "--evidence",
            "fixtures/scenario/jack/stream.ev",
            "--resource",
            "hazardous-tool",
            "--policy",
            "fixtures/scenario/jack/policy.txt",
        ],
    ),
    (
        "decide_jack_other_resource",
        &[
            "decide",
            "--evidence",
            "fixtures/scenario/jack/stream.ev",
            "--resource",
            "bread",
            "--policy",
            "fixtures/scenario/jack/policy.txt",
        ],
    ),
    (
        "decide_sad",
        &[
            "decide",
            "--evidence",
            "fixtures/scenario/jack-sad/stream.ev",
            "--resource",
            "hazardous-tool",
            "--policy",
            "fixtures/scenario/jack-sad/policy.txt",
        ],
    ),
    ("stats_corpus", &["stats", "fixtures/corpus"]),
    ("stats_corpus_json", &["stats", "fixtures/corpus", "--json"]),
    ("stats_invalid", &["stats", "fixtures/invalid"]),
    ("unknown_subcommand", &["frobnicate"]),
];

/// Subcommand and exit status pairs the golden set must exercise.
pub const REQUIRED_EXITS: &[(&str, i32)] = &[
    ("validate", 0),
    ("validate", 2),
    ("annotate", 0),
    ("classify", 0),
    ("classify", 1),
    ("classify", 2),
    ("fuse", 0),
    ("fuse", 1),
    ("fuse", 2),
    ("decide", 0),
    ("decide", 3),
    ("stats", 0),
];

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.out"))
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn render(&self) -> String {
        format!(
            "exit: {}\n--- stdout\n{}--- stderr\n{}",
            self.code, self.stdout, self.stderr
        )
    }
}

pub fn run(args: &[&str]) -> Run {
    let out = Command::cargo_bin("earl")
        .unwrap()
        .current_dir(workspace_root())
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Compares one case against its golden file; `UPDATE_GOLDEN=1` rewrites it.
pub fn check_golden(name: &str, args: &[&str]) -> Result<Run, String> {
    let got = run(args);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, got.render()).unwrap();
        return Ok(got);
    }
    let want = std::fs::read_to_string(&path)
        .map_err(|e| format!("{name}: cannot read {}: {e}", path.display()))?;
    if got.render() == want {
        Ok(got)
    } else {
        Err(format!(
            "{name}: output differs\n--- want\n{want}--- got\n{}",
            got.render()
        ))
    }
}
