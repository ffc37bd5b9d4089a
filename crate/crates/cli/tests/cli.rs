use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use habc_core::parse_dimacs;

fn habc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_habc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";

#[test]
fn gen_complete_tripartite() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = path(dir.path(), "k222.col");
    let out = habc(&[
        "gen", "--family", "equipartite", "--n", "6", "--p", "1.0", "--seed", "1", "--out", &out_path,
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("n=6 m=12 family=equipartite"));
    let g = parse_dimacs(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!((g.n(), g.m()), (6, 12));
}

#[test]
fn gen_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = path(dir.path(), "g.col");
    let out = habc(&[
        "gen", "--family", "uniform", "--n", "500", "--p", "0.016", "--seed", "1", "--out", &out_path,
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&out_path).unwrap();
    let g = parse_dimacs(&text).unwrap();
    assert_eq!(g.n(), 500);
    assert_eq!(habc_core::write_dimacs(&g), text);
    assert!(stdout(&out).contains(&format!("m={}", g.m())));
}

#[test]
fn gen_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = path(dir.path(), "g.col");
    let missing_p = habc(&["gen", "--family", "uniform", "--n", "10", "--seed", "1", "--out", &out_path]);
    assert_eq!(code(&missing_p), 2);
    assert!(stderr(&missing_p).contains("--p"));

    let bad_family = habc(&["gen", "--family", "dense", "--n", "10", "--p", "0.1", "--seed", "1", "--out", &out_path]);
    assert_eq!(code(&bad_family), 2);

    let bad_p = habc(&["gen", "--family", "flat", "--n", "10", "--p", "1.5", "--seed", "1", "--out", &out_path]);
    assert_eq!(code(&bad_p), 2);
    assert!(!Path::new(&out_path).exists());
}

#[test]
fn gen_io_error() {
    let out = habc(&[
        "gen", "--family", "uniform", "--n", "10", "--p", "0.1", "--seed", "1", "--out", "/nonexistent/dir/g.col",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn solve_edgeless() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "empty.col");
    fs::write(&graph, "c no edges\np edge 5 0\n").unwrap();
    let coloring = path(dir.path(), "colors.txt");
    let out = habc(&["solve", "--graph", &graph, "--variant", "rwde", "--seed", "1", "--coloring-out", &coloring]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("success: true"));
    assert!(text.contains("best_fitness: 0"));
    assert_eq!(fs::read_to_string(&coloring).unwrap(), "1\n1\n1\n1\n1\n");
}

#[test]
fn solve_k4_exhausts_budget() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "k4.col");
    fs::write(&graph, K4).unwrap();
    let out = habc(&["solve", "--graph", &graph, "--variant", "random", "--seed", "7", "--max-fes", "5000"]);
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    assert!(text.contains("success: false"));
    assert!(text.contains("best_fitness: 2"));
    assert!(text.contains("evals_used: 5000"));
}

#[test]
fn solve_echoes_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "k4.col");
    fs::write(&graph, K4).unwrap();
    let out = habc(&["solve", "--graph", &graph, "--variant", "rwde", "--seed", "1", "--max-fes", "200"]);
    let text = stdout(&out);
    assert!(text.contains("np=100 limit=1000"), "{text}");
    let out = habc(&["solve", "--graph", &graph, "--variant", "rwde", "--seed", "1", "--max-fes", "300000", "--limit", "1"]);
    assert!(stdout(&out).contains("max-fes=300000"));
    // lambda follows the bounds unless given
    let out = habc(&["solve", "--graph", &graph, "--variant", "rwde", "--seed", "1", "--max-fes", "200", "--ub", "3"]);
    assert!(stdout(&out).contains("lambda=0.30000000000000004") || stdout(&out).contains("lambda=0.3"));
}

#[test]
fn solve_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = habc(&["solve", "--graph", &path(dir.path(), "none.col"), "--variant", "rwde", "--seed", "1"]);
    assert_eq!(code(&missing), 1);

    let bad = path(dir.path(), "bad.col");
    fs::write(&bad, "p edge 3 1\ne 1 9\n").unwrap();
    let invalid = habc(&["solve", "--graph", &bad, "--variant", "rwde", "--seed", "1"]);
    assert_eq!(code(&invalid), 1);
    assert!(stderr(&invalid).contains("line 2"), "{}", stderr(&invalid));

    let good = path(dir.path(), "k4.col");
    fs::write(&good, K4).unwrap();
    let bad_variant = habc(&["solve", "--graph", &good, "--variant", "greedy", "--seed", "1"]);
    assert_eq!(code(&bad_variant), 2);
    let bad_np = habc(&["solve", "--graph", &good, "--variant", "rwde", "--seed", "1", "--np", "1"]);
    assert_eq!(code(&bad_np), 2);
    let bad_bounds = habc(&["solve", "--graph", &good, "--variant", "rwde", "--seed", "1", "--lb", "1", "--ub", "0"]);
    assert_eq!(code(&bad_bounds), 2);
}

fn bench_args<'a>(out: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut args = vec![
        "bench", "--families", "uniform,equipartite", "--n", "40", "--p-from", "0.08", "--p-to", "0.1",
        "--p-step", "0.01", "--seeds", "1..1", "--runs", "1", "--variants", "random,rwde", "--max-fes",
        "3000", "--out", out,
    ];
    args.extend_from_slice(extra);
    args
}

#[test]
fn bench_minimal_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let records = path(dir.path(), "records.csv");
    let agg = path(dir.path(), "agg.csv");
    let out = habc(&bench_args(&records, &["--aggregate-out", &agg, "--threads", "2"]));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&records).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(
        lines[0],
        "family,n,p,instance_seed,variant,run,success,evals_to_solution,best_fitness,evals_used,wall_time_ms"
    );
    // 2 families x 3 p values x 2 variants
    assert_eq!(lines.len() - 1, 12);
    assert!(!text.contains('\r'));
    let agg = fs::read_to_string(&agg).unwrap();
    assert!(agg.starts_with("family,n,p,variant,sr,aes\n"));
    assert_eq!(agg.lines().count(), 13);
    assert!(agg.lines().nth(1).unwrap().split(',').nth(4).unwrap().len() == 8);
}

#[test]
fn bench_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.csv");
    let b = path(dir.path(), "b.csv");
    assert_eq!(code(&habc(&bench_args(&a, &["--no-timing", "--threads", "1"]))), 0);
    assert_eq!(code(&habc(&bench_args(&b, &["--no-timing", "--threads", "3"]))), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn bench_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "r.csv");
    let mut args = bench_args(&out, &[]);
    let i = args.iter().position(|&a| a == "--p-from").unwrap();
    args[i + 1] = "0.2";
    assert_eq!(code(&habc(&args)), 2, "empty sweep");

    let mut args = bench_args(&out, &[]);
    let i = args.iter().position(|&a| a == "--seeds").unwrap();
    args[i + 1] = "5..2";
    assert_eq!(code(&habc(&args)), 2, "empty seed range");

    let mut args = bench_args(&out, &[]);
    let i = args.iter().position(|&a| a == "--runs").unwrap();
    args[i + 1] = "0";
    assert_eq!(code(&habc(&args)), 2, "zero runs");

    assert_eq!(code(&habc(&bench_args(&out, &["--threads", "0"]))), 2);
    assert!(!Path::new(&out).exists());
}

const HEADER: &str =
    "family,n,p,instance_seed,variant,run,success,evals_to_solution,best_fitness,evals_used,wall_time_ms\n";

fn synthetic_records(cells: &[(&str, f64, &str, usize, usize)]) -> String {
    let mut text = HEADER.to_string();
    for &(family, p, variant, wins, runs) in cells {
        for run in 0..runs {
            if run < wins {
                text += &format!("{family},500,{p},1,{variant},{run},true,1000,0,1000,0\n");
            } else {
                text += &format!("{family},500,{p},1,{variant},{run},false,,3,300000,0\n");
            }
        }
    }
    text
}

#[test]
fn report_known_success_rates() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "records.csv");
    let table = path(dir.path(), "table.csv");
    fs::write(
        &input,
        synthetic_records(&[
            ("uniform", 0.013, "random", 1, 4),
            ("uniform", 0.013, "rwde", 3, 4),
            ("uniform", 0.014, "random", 1, 4),
            ("uniform", 0.014, "rwde", 1, 4),
        ]),
    )
    .unwrap();
    let out = habc(&["report", "--in", &input, "--out", &table]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(&table).unwrap(),
        "family,n,p,sr_random,sr_rwde,improvement_pct\n\
         uniform,500,0.013,0.250000,0.750000,\n\
         uniform,500,0.014,0.250000,0.250000,\n\
         uniform,500,avg,0.250,0.500,100.00\n\
         all,,avg,,,100.00\n"
    );
}

#[test]
fn report_rounds_averages_before_comparing() {
    // five p values, 1000 runs per cell; the improvement uses the rounded averages
    let random = [0.816, 0.112, 0.060, 0.180, 0.328];
    let hybrid = [0.848, 0.404, 0.248, 0.528, 0.856];
    let mut cells = Vec::new();
    for (i, p) in [0.013, 0.014, 0.015, 0.016, 0.017].into_iter().enumerate() {
        cells.push(("uniform", p, "random", (random[i] * 1000.0f64).round() as usize, 1000));
        cells.push(("uniform", p, "rwde", (hybrid[i] * 1000.0f64).round() as usize, 1000));
    }
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "records.csv");
    let table = path(dir.path(), "table.csv");
    fs::write(&input, synthetic_records(&cells)).unwrap();
    let out = habc(&["report", "--in", &input, "--out", &table]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&table).unwrap();
    assert!(text.contains("uniform,500,avg,0.299,0.577,92.98\n"), "{text}");
}

#[test]
fn report_errors() {
    let dir = tempfile::tempdir().unwrap();
    let table = path(dir.path(), "table.csv");

    let one_variant = path(dir.path(), "one.csv");
    fs::write(&one_variant, synthetic_records(&[("flat", 0.02, "rwde", 1, 3)])).unwrap();
    let out = habc(&["report", "--in", &one_variant, "--out", &table]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("missing variant"), "{}", stderr(&out));

    let malformed = path(dir.path(), "bad.csv");
    let mut text = synthetic_records(&[("flat", 0.02, "rwde", 1, 3)]);
    text += "flat,500,0.02,1,rwde,3,maybe,,3,300000,0\n";
    fs::write(&malformed, text).unwrap();
    let out = habc(&["report", "--in", &malformed, "--out", &table]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("row 5"), "{}", stderr(&out));

    let missing = habc(&["report", "--in", &path(dir.path(), "none.csv"), "--out", &table]);
    assert_eq!(code(&missing), 1);
}

#[test]
fn help_and_unknown_subcommand() {
    assert_eq!(code(&habc(&["--help"])), 0);
    assert_eq!(code(&habc(&["frobnicate"])), 2);
    assert_eq!(code(&habc(&[])), 2);
}
