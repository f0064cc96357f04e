//! End-to-end tests that drive the compiled `dappled` binary: every
//! subcommand, the documented exit codes, and the full
//! generate -> dapple -> wang -> render pipeline across many seeds.

use dappled::{is_dappled, validate_wang, Condition, ConditionSet, TileSet, Tiling, WangTiling};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scratch_dir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    if dir.exists() {
        fs::remove_dir_all(&dir).expect("clear scratch dir");
    }
    fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}

fn run_cli(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dappled"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("launch dappled binary")
}

fn assert_success(out: &Output, context: &str) {
    assert!(
        out.status.success(),
        "{context} failed with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn write_file(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).expect("write test input");
    path
}

/// Standard two-tile condition JSON: horizontal bound on "0", vertical on
/// "1", both equal to `bound`.
fn conditions_json(cyclic: bool, bound: u32) -> String {
    format!(
        r#"{{
  "tiles": ["0", "1"],
  "cyclic": {cyclic},
  "conditions": [
    {{ "tile": "0", "axis": "H", "bound": {bound} }},
    {{ "tile": "1", "axis": "V", "bound": {bound} }}
  ]
}}"#
    )
}

const PALETTE_JSON: &str = r##"{ "0": "#f5f0e6", "1": "#1c4b82" }"##;

fn binary_tiles() -> TileSet {
    TileSet::new(["0", "1"]).expect("two-symbol alphabet")
}

fn standard_plain_set(bound: u32) -> ConditionSet {
    ConditionSet::plain([
        Condition::horizontal(0, bound),
        Condition::vertical(1, bound),
    ])
    .expect("standard set")
}

#[test]
fn version_names_the_generator() {
    let dir = scratch_dir("cli_version");
    let out = run_cli(&dir, &["--version"]);
    assert_success(&out, "--version");
    let text = stdout_text(&out);
    assert!(
        text.contains("dappled") && text.contains("(rng chacha8)"),
        "version line should name the binary and the generator, got {text:?}"
    );
}

#[test]
fn generate_writes_a_seeded_header_and_falls_back_to_stdout() {
    let dir = scratch_dir("cli_generate");
    let out_path = dir.join("g.txt");
    let out = run_cli(
        &dir,
        &[
            "generate", "--m", "5", "--n", "4", "--seed", "11", "--out", "g.txt",
        ],
    );
    assert_success(&out, "generate to file");
    let text = fs::read_to_string(&out_path).expect("generated file");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# dappled seed=11 rng=chacha8"));
    assert_eq!(lines.next(), Some("5 4"));
    assert_eq!(lines.clone().count(), 4, "one line per row");
    assert!(lines.all(|row| row.split_whitespace().count() == 5));

    let to_stdout = run_cli(&dir, &["generate", "--m", "5", "--n", "4", "--seed", "11"]);
    assert_success(&to_stdout, "generate to stdout");
    assert_eq!(
        stdout_text(&to_stdout),
        text,
        "stdout fallback emits the same bytes"
    );
}

#[test]
fn generate_draughtboard_mode_is_already_dappled() {
    let dir = scratch_dir("cli_generate_draughtboard");
    for seed in 0..20u64 {
        let out = run_cli(
            &dir,
            &[
                "generate",
                "--m",
                "9",
                "--n",
                "7",
                "--mode",
                "draughtboard",
                "--seed",
                &seed.to_string(),
            ],
        );
        assert_success(&out, "generate draughtboard");
        let (_, tiling) = Tiling::parse(&stdout_text(&out)).expect("parse draughtboard");
        assert!(
            is_dappled(&tiling, &standard_plain_set(2)),
            "draughtboard seed {seed} must satisfy the bound-2 set"
        );
    }
}

#[test]
fn dapple_repairs_and_emits_trace_and_repetition() {
    let dir = scratch_dir("cli_dapple");
    write_file(&dir, "conds.json", &conditions_json(false, 2));
    let gen = run_cli(
        &dir,
        &[
            "generate", "--m", "10", "--n", "6", "--seed", "3", "--out", "f.txt",
        ],
    );
    assert_success(&gen, "generate");
    let out = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "f.txt",
            "--conditions",
            "conds.json",
            "--out",
            "g.txt",
            "--trace",
            "trace.json",
            "--repeat",
            "2x2",
            "--repeat-out",
            "rep.txt",
        ],
    );
    assert_success(&out, "dapple");

    let repaired_text = fs::read_to_string(dir.join("g.txt")).expect("repaired file");
    assert!(repaired_text.starts_with("# dappled\n10 6\n"));
    let (_, repaired) = Tiling::parse(&repaired_text).expect("parse repaired");
    assert!(is_dappled(&repaired, &standard_plain_set(2)));

    let trace = fs::read_to_string(dir.join("trace.json")).expect("trace file");
    assert!(trace.contains("\"steps\""), "trace JSON records its steps");

    let rep_text = fs::read_to_string(dir.join("rep.txt")).expect("repetition file");
    assert!(rep_text.starts_with("# dappled repeat=2x2\n20 12\n"));
    let (_, repeated) = Tiling::parse(&rep_text).expect("parse repetition");
    let tiles = binary_tiles();
    assert_eq!(
        repeated,
        repaired.repeat(2, 2).expect("library repetition"),
        "CLI repetition matches the library for {}",
        repaired.to_text(&tiles)
    );
}

#[test]
fn cyclic_flag_matches_a_cyclic_conditions_file() {
    let dir = scratch_dir("cli_cyclic_flag");
    write_file(&dir, "plain.json", &conditions_json(false, 3));
    write_file(&dir, "cyclic.json", &conditions_json(true, 3));
    let gen = run_cli(
        &dir,
        &[
            "generate", "--m", "10", "--n", "6", "--seed", "9", "--out", "f.txt",
        ],
    );
    assert_success(&gen, "generate");

    let flagged = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "f.txt",
            "--conditions",
            "plain.json",
            "--cyclic",
            "--out",
            "a.txt",
        ],
    );
    assert_success(&flagged, "dapple --cyclic");
    let from_file = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "f.txt",
            "--conditions",
            "cyclic.json",
            "--out",
            "b.txt",
        ],
    );
    assert_success(&from_file, "dapple with cyclic file");
    assert_eq!(
        fs::read(dir.join("a.txt")).expect("a"),
        fs::read(dir.join("b.txt")).expect("b"),
        "the --cyclic override and a cyclic conditions file agree"
    );
}

#[test]
fn count_reports_the_block_structure() {
    let dir = scratch_dir("cli_count");
    write_file(&dir, "conds.json", &conditions_json(false, 2));
    let out = run_cli(
        &dir,
        &[
            "count",
            "--m",
            "3",
            "--n",
            "3",
            "--conditions",
            "conds.json",
        ],
    );
    assert_success(&out, "count 3x3");
    assert_eq!(
        stdout_text(&out),
        "count 174\nblocks 4\nfull_blocks 1\ndraughtboards 16\n"
    );

    let listed = run_cli(
        &dir,
        &[
            "count",
            "--m",
            "2",
            "--n",
            "2",
            "--conditions",
            "conds.json",
            "--list",
        ],
    );
    assert_success(&listed, "count --list");
    let text = stdout_text(&listed);
    assert!(text.starts_with("count 16\n"));
    let tilings = text.matches("2 2\n").count();
    assert_eq!(tilings, 16, "--list prints each of the 16 tilings");
}

#[test]
fn count_refuses_oversized_grids_without_the_override() {
    let dir = scratch_dir("cli_count_guard");
    write_file(&dir, "conds.json", &conditions_json(false, 2));
    let refused = run_cli(
        &dir,
        &[
            "count",
            "--m",
            "7",
            "--n",
            "7",
            "--conditions",
            "conds.json",
        ],
    );
    assert_eq!(
        exit_code(&refused),
        4,
        "49-cell two-tile search is over the guard"
    );
    assert!(
        stderr_text(&refused).contains("large"),
        "refusal names the size guard: {}",
        stderr_text(&refused)
    );

    let small_plain = run_cli(
        &dir,
        &[
            "count",
            "--m",
            "3",
            "--n",
            "3",
            "--conditions",
            "conds.json",
        ],
    );
    let small_forced = run_cli(
        &dir,
        &[
            "count",
            "--m",
            "3",
            "--n",
            "3",
            "--conditions",
            "conds.json",
            "--allow-large",
        ],
    );
    assert_success(&small_forced, "count --allow-large");
    assert_eq!(
        stdout_text(&small_plain),
        stdout_text(&small_forced),
        "--allow-large only lifts the guard, it does not change results"
    );
}

#[test]
fn wang_flow_and_render_produce_their_documented_formats() {
    let dir = scratch_dir("cli_formats");
    write_file(&dir, "conds.json", &conditions_json(false, 2));
    write_file(&dir, "palette.json", PALETTE_JSON);
    let gen = run_cli(
        &dir,
        &[
            "generate", "--m", "10", "--n", "6", "--seed", "21", "--out", "f.txt",
        ],
    );
    assert_success(&gen, "generate");
    let fixed = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "f.txt",
            "--conditions",
            "conds.json",
            "--out",
            "g.txt",
        ],
    );
    assert_success(&fixed, "dapple");

    let wang = run_cli(
        &dir,
        &[
            "wang", "--tiling", "g.txt", "--colors", "3", "--seed", "5", "--out", "w.json",
            "--svg", "w.svg",
        ],
    );
    assert_success(&wang, "wang");
    let wang_json = fs::read_to_string(dir.join("w.json")).expect("wang json");
    let parsed = WangTiling::from_json(&wang_json).expect("wang parses");
    assert!(validate_wang(&parsed).is_valid());
    assert!(fs::read_to_string(dir.join("w.svg"))
        .expect("wang svg")
        .starts_with("<svg "));

    let flow = run_cli(
        &dir,
        &[
            "flow",
            "--tiling",
            "g.txt",
            "--particles",
            "4",
            "--steps",
            "12",
            "--seed",
            "2",
            "--out",
            "t.csv",
        ],
    );
    assert_success(&flow, "flow");
    let csv = fs::read_to_string(dir.join("t.csv")).expect("flow csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "step,particle_id,x,y,heading");
    assert_eq!(
        lines.len(),
        1 + 4 * 13,
        "header plus one row per particle per state"
    );

    let wrapped = run_cli(
        &dir,
        &[
            "flow",
            "--tiling",
            "g.txt",
            "--particles",
            "4",
            "--steps",
            "12",
            "--seed",
            "2",
            "--wrap",
            "--out",
            "tw.csv",
        ],
    );
    assert_success(&wrapped, "flow --wrap");
    let wrapped_csv = fs::read_to_string(dir.join("tw.csv")).expect("wrapped csv");
    assert_eq!(wrapped_csv.lines().count(), 1 + 4 * 13);

    let render = run_cli(
        &dir,
        &[
            "render",
            "--tiling",
            "g.txt",
            "--palette",
            "palette.json",
            "--out",
            "g.svg",
            "--ppm",
            "g.ppm",
        ],
    );
    assert_success(&render, "render --tiling");
    assert!(fs::read_to_string(dir.join("g.svg"))
        .expect("tiling svg")
        .starts_with("<svg "));
    let ppm = fs::read(dir.join("g.ppm")).expect("ppm bytes");
    let header = b"P6\n320 192\n255\n";
    assert_eq!(&ppm[..header.len()], header, "10x6 cells at 32 units each");
    assert_eq!(ppm.len(), header.len() + 320 * 192 * 3);

    let render_wang = run_cli(&dir, &["render", "--wang", "w.json", "--out", "w2.svg"]);
    assert_success(&render_wang, "render --wang");
    assert!(fs::read_to_string(dir.join("w2.svg"))
        .expect("wang svg")
        .starts_with("<svg "));
}

#[test]
fn pipeline_succeeds_and_validates_for_a_hundred_seeds() {
    let dir = scratch_dir("cli_pipeline");
    write_file(&dir, "conds.json", &conditions_json(false, 2));
    write_file(&dir, "palette.json", PALETTE_JSON);
    let set = standard_plain_set(2);
    for seed in 0..100u64 {
        let seed_text = seed.to_string();
        let gen = run_cli(
            &dir,
            &[
                "generate", "--m", "10", "--n", "6", "--seed", &seed_text, "--out", "f.txt",
            ],
        );
        assert_success(&gen, "generate");
        let raw = fs::read_to_string(dir.join("f.txt")).expect("generated");
        assert!(raw.starts_with(&format!("# dappled seed={seed} rng=chacha8\n")));

        let fixed = run_cli(
            &dir,
            &[
                "dapple",
                "--tiling",
                "f.txt",
                "--conditions",
                "conds.json",
                "--out",
                "g.txt",
            ],
        );
        assert_success(&fixed, "dapple");
        let (_, repaired) =
            Tiling::parse(&fs::read_to_string(dir.join("g.txt")).expect("repaired"))
                .expect("parse repaired");
        assert!(
            is_dappled(&repaired, &set),
            "seed {seed} repair must be dappled"
        );

        let wang = run_cli(
            &dir,
            &[
                "wang", "--tiling", "g.txt", "--colors", "3", "--seed", &seed_text, "--out",
                "w.json",
            ],
        );
        assert_success(&wang, "wang");
        let parsed = WangTiling::from_json(&fs::read_to_string(dir.join("w.json")).expect("wang"))
            .expect("wang parses");
        let report = validate_wang(&parsed);
        assert!(report.is_valid(), "seed {seed} wang tiling must validate");

        let render = run_cli(
            &dir,
            &[
                "render",
                "--tiling",
                "g.txt",
                "--palette",
                "palette.json",
                "--out",
                "g.svg",
            ],
        );
        assert_success(&render, "render --tiling");
        assert!(
            fs::read_to_string(dir.join("g.svg"))
                .expect("svg")
                .starts_with("<svg "),
            "seed {seed} render must emit SVG"
        );

        let render_wang = run_cli(&dir, &["render", "--wang", "w.json", "--out", "w.svg"]);
        assert_success(&render_wang, "render --wang");
    }
}

#[test]
fn condition_errors_exit_with_code_two() {
    let dir = scratch_dir("cli_exit_two");
    let gen = run_cli(
        &dir,
        &[
            "generate", "--m", "10", "--n", "6", "--seed", "0", "--out", "f.txt",
        ],
    );
    assert_success(&gen, "generate");

    write_file(
        &dir,
        "low.json",
        r#"{
  "tiles": ["0", "1"],
  "conditions": [
    { "tile": "0", "axis": "H", "bound": 1 },
    { "tile": "1", "axis": "V", "bound": 2 }
  ]
}"#,
    );
    let low = run_cli(
        &dir,
        &["dapple", "--tiling", "f.txt", "--conditions", "low.json"],
    );
    assert_eq!(exit_code(&low), 2, "bounds below 2 are invalid conditions");
    assert!(stderr_text(&low).contains("bound"));

    write_file(&dir, "cyclic2.json", &conditions_json(true, 2));
    let odd = run_cli(
        &dir,
        &[
            "generate", "--m", "9", "--n", "6", "--seed", "0", "--out", "odd.txt",
        ],
    );
    assert_success(&odd, "generate odd");
    let odd_repair = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "odd.txt",
            "--conditions",
            "cyclic2.json",
        ],
    );
    assert_eq!(
        exit_code(&odd_repair),
        2,
        "bound-2 cyclic repair needs even extents"
    );

    write_file(&dir, "cyclic3.json", &conditions_json(true, 3));
    let tiny = run_cli(
        &dir,
        &[
            "generate", "--m", "3", "--n", "6", "--seed", "0", "--out", "tiny.txt",
        ],
    );
    assert_success(&tiny, "generate tiny");
    let tiny_repair = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "tiny.txt",
            "--conditions",
            "cyclic3.json",
        ],
    );
    assert_eq!(
        exit_code(&tiny_repair),
        2,
        "cyclic repair needs every extent above its bound"
    );

    write_file(&dir, "conds.json", &conditions_json(false, 2));
    let bad_repeat = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "f.txt",
            "--conditions",
            "conds.json",
            "--repeat",
            "2x0",
        ],
    );
    assert_eq!(
        exit_code(&bad_repeat),
        2,
        "--repeat factors must be positive"
    );
    assert!(stderr_text(&bad_repeat).contains("--repeat"));

    let no_mode = run_cli(&dir, &["render", "--out", "x.svg"]);
    assert_eq!(exit_code(&no_mode), 2, "render needs --tiling or --wang");

    write_file(&dir, "palette.json", PALETTE_JSON);
    let wang_json = {
        let fixed = run_cli(
            &dir,
            &[
                "dapple",
                "--tiling",
                "f.txt",
                "--conditions",
                "conds.json",
                "--out",
                "g.txt",
            ],
        );
        assert_success(&fixed, "dapple");
        let wang = run_cli(
            &dir,
            &[
                "wang", "--tiling", "g.txt", "--colors", "3", "--out", "w.json",
            ],
        );
        assert_success(&wang, "wang");
        dir.join("w.json")
    };
    let ppm_with_wang = run_cli(
        &dir,
        &[
            "render",
            "--wang",
            wang_json.to_str().expect("utf-8 path"),
            "--ppm",
            "x.ppm",
        ],
    );
    assert_eq!(
        exit_code(&ppm_with_wang),
        2,
        "--ppm applies only to --tiling"
    );
}

#[test]
fn input_errors_exit_with_code_three() {
    let dir = scratch_dir("cli_exit_three");
    write_file(&dir, "conds.json", &conditions_json(false, 2));

    let missing = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "absent.txt",
            "--conditions",
            "conds.json",
        ],
    );
    assert_eq!(exit_code(&missing), 3, "missing tiling file");

    write_file(&dir, "ragged.txt", "3 2\n0 1 0\n1 0\n");
    let ragged = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "ragged.txt",
            "--conditions",
            "conds.json",
        ],
    );
    assert_eq!(exit_code(&ragged), 3, "ragged tiling text");

    let gen = run_cli(
        &dir,
        &[
            "generate", "--m", "6", "--n", "4", "--seed", "0", "--out", "f.txt",
        ],
    );
    assert_success(&gen, "generate");
    write_file(&dir, "broken.json", "{ not json");
    let bad_conditions = run_cli(
        &dir,
        &["dapple", "--tiling", "f.txt", "--conditions", "broken.json"],
    );
    assert_eq!(exit_code(&bad_conditions), 3, "malformed conditions JSON");

    write_file(&dir, "narrow_palette.json", r##"{ "0": "#ffffff" }"##);
    let fixed = run_cli(
        &dir,
        &[
            "dapple",
            "--tiling",
            "f.txt",
            "--conditions",
            "conds.json",
            "--out",
            "g.txt",
        ],
    );
    assert_success(&fixed, "dapple");
    let palette_gap = run_cli(
        &dir,
        &[
            "render",
            "--tiling",
            "g.txt",
            "--palette",
            "narrow_palette.json",
        ],
    );
    assert_eq!(
        exit_code(&palette_gap),
        3,
        "palette must cover every symbol"
    );

    write_file(&dir, "bad_wang.json", r#"{ "m": 1, "n": 1 }"#);
    let bad_wang = run_cli(&dir, &["render", "--wang", "bad_wang.json"]);
    assert_eq!(exit_code(&bad_wang), 3, "malformed wang JSON");
}
