use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use loqc_cli::config::{coerce, parse_value, validate};
use loqc_cli::*;
use proptest::prelude::*;

const NAMES: [&str; 15] = [
    "hom",
    "distribution",
    "loop-loss",
    "loop-similarity",
    "loop-mismatch",
    "qufti",
    "qufti-conjecture",
    "sources",
    "fusion-rate",
    "cat-hom",
    "spacs",
    "passv",
    "integral-check",
    "walk",
    "gkp",
];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_loqc"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("loqc-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_config(name: &str, text: &str) -> PathBuf {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run_file(config: &Path, out: &Path, extra: &[&str]) -> (i32, String) {
    let o = bin().arg("run").arg(config).arg("--out").arg(out).args(extra).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stderr).unwrap())
}

fn run_text(text: &str) -> RunOutput {
    execute(&parse(text).unwrap()).unwrap()
}

fn float(c: &Cell) -> f64 {
    match c {
        Cell::Float(x) => *x,
        Cell::Int(i) => *i as f64,
        other => panic!("not numeric: {other:?}"),
    }
}

#[test]
fn hom_table() {
    let out = run_text("experiment = hom\n");
    let (o, p) = (out.column("output").unwrap(), out.column("probability").unwrap());
    let table: BTreeMap<String, f64> = out
        .rows
        .iter()
        .map(|r| match &r[o] {
            Cell::Str(s) => (s.clone(), float(&r[p])),
            c => panic!("{c:?}"),
        })
        .collect();
    assert_eq!(table.len(), 3);
    assert!((table["(2,0)"] - 0.5).abs() <= 1e-12);
    assert!((table["(0,2)"] - 0.5).abs() <= 1e-12);
    assert!(table["(1,1)"].abs() <= 1e-12);
}

#[test]
fn unbalanced_splitter_hom_dip() {
    // |1,1⟩ → coincidence amplitude r² − t² on a splitter of reflectivity η
    let out = run_text("experiment = hom\neta = 0.2\n");
    let (o, p) = (out.column("output").unwrap(), out.column("probability").unwrap());
    let row = out.rows.iter().find(|r| r[o] == Cell::Str("(1,1)".into())).unwrap();
    assert!((float(&row[p]) - (0.2f64 - 0.8).powi(2)).abs() < 1e-12);
}

#[test]
fn qufti_conjecture_column() {
    let out = run_text("experiment = qufti-conjecture\nn_min = 1\nn_max = 10\n");
    let (n, d) = (out.column("n").unwrap(), out.column("max_abs_diff").unwrap());
    let sizes: Vec<f64> = out.rows.iter().map(|r| float(&r[n])).collect();
    assert_eq!(sizes, (1..=10).map(f64::from).collect::<Vec<_>>());
    for r in &out.rows {
        assert!(float(&r[d]) <= 1e-9, "{r:?}");
    }
}

#[test]
fn walk_run_twice_is_identical() {
    let cfg = write_config("walk.cfg", "experiment = walk\nt_max = 12\np = 0.8\np_d = 0.1\ntrials = 20\n");
    for format in ["csv", "json-lines"] {
        let (a, b) = (scratch(&format!("walk-a.{format}")), scratch(&format!("walk-b.{format}")));
        assert_eq!(run_file(&cfg, &a, &["--seed", "11", "--format", format]).0, 0);
        assert_eq!(run_file(&cfg, &b, &["--seed", "11", "--format", format]).0, 0);
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert!(!x.is_empty());
        assert_eq!(x, y, "{format}");
    }
    let c = scratch("walk-c.csv");
    run_file(&cfg, &c, &["--seed", "12"]);
    assert_ne!(std::fs::read(&c).unwrap(), std::fs::read(scratch("walk-a.csv")).unwrap());
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let cfg = write_config("threads.cfg", "experiment = fusion-rate\nd = [4, 8]\nsteps = 20000\nchains = 6\n");
    let (a, b) = (scratch("threads-1.csv"), scratch("threads-3.csv"));
    assert_eq!(run_file(&cfg, &a, &["--threads", "1"]).0, 0);
    assert_eq!(run_file(&cfg, &b, &["--threads", "3"]).0, 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn every_experiment_renders_identically_twice() {
    for name in NAMES {
        let cfg = ExperimentConfig::defaults(name).unwrap();
        let a = render(&execute(&cfg).unwrap(), Format::Csv, None);
        let b = render(&execute(&cfg).unwrap(), Format::Csv, None);
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn unknown_key_is_a_config_error() {
    let cfg = write_config("unknown.cfg", "experiment = walk\n# fine\nt_max = 4\nwidth = 3\n");
    let (code, err) = run_file(&cfg, &scratch("unknown.csv"), &[]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4") && err.contains("`width`"), "{err}");
    assert!(!scratch("unknown.csv").exists());
}

#[test]
fn config_diagnostics() {
    let cases = [
        ("experiment = walk\np = high\n", Some(2), "p"),
        ("experiment = walk\np = 1.5\n", Some(2), "p"),
        ("experiment = walk\nt_max = 2.5\n", Some(2), "t_max"),
        ("experiment = walk\nt_max = 3\nt_max = 4\n", Some(3), "t_max"),
        ("experiment = teleport\n", Some(1), "experiment"),
        ("seed = 3\n", None, "experiment"),
        ("experiment = passv\nphotons = 6\n", Some(2), "photons"),
        ("experiment = hom\ninput = [1, 1, 1]\n", Some(2), "input"),
        ("experiment = qufti\nn = []\n", Some(2), "n"),
        ("experiment = fusion-rate\nstrategy = greedy\n", Some(2), "strategy"),
        ("experiment = walk\nformat = xml\n", Some(2), "format"),
        ("experiment = walk\nseed = -1\n", Some(2), "seed"),
    ];
    for (text, line, field) in cases {
        let err = parse(text).and_then(|c| execute(&c).map(|_| ())).unwrap_err();
        match &err {
            CliError::Config { line: l, field: f, .. } => {
                assert_eq!(*l, line, "{text}");
                assert_eq!(f.as_deref(), Some(field), "{text}");
            }
            other => panic!("{text}: {other}"),
        }
        assert_eq!(err.exit_code(), 2);
    }
    let err = parse("experiment = walk\nnot a pair\n").unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
}

#[test]
fn budget_gives_partial_flagged_output() {
    let full = run_text("experiment = qufti-conjecture\n");
    let partial = execute(&parse("experiment = qufti-conjecture\nbudget = 40000\n").unwrap()).unwrap();
    assert_eq!(partial.exit_code(), 3);
    assert!(matches!(partial.status, Status::BudgetExceeded { completed, total: 10 } if completed < 10));
    assert!(partial.work_units <= 40_000);
    assert_eq!(&full.rows[..partial.rows.len()], &partial.rows[..]);
    let text = render(&partial, Format::Csv, None);
    assert!(text.contains("# status=budget-exceeded"));

    let cfg = write_config("budget.cfg", "experiment = qufti-conjecture\nbudget = 40000\n");
    let out = scratch("budget.csv");
    assert_eq!(run_file(&cfg, &out, &[]).0, 3);
    assert_eq!(std::fs::read_to_string(out).unwrap(), text);
}

#[test]
fn budget_large_enough_is_complete() {
    let out = run_text("experiment = qufti-conjecture\nbudget = 100000000\n");
    assert_eq!(out.status, Status::Complete);
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn headers_carry_units_and_rows_fit() {
    for name in NAMES {
        let out = execute(&ExperimentConfig::defaults(name).unwrap()).unwrap();
        let text = render(&out, Format::Csv, None);
        let mut lines = text.lines().filter(|l| !l.starts_with('#'));
        let header = lines.next().unwrap();
        let cols: Vec<&str> = header.split(',').collect();
        assert_eq!(cols.len(), out.columns.len());
        for c in &cols {
            let (name, unit) = c.split_once('[').unwrap();
            assert!(!name.is_empty() && unit.ends_with(']') && unit.len() > 1, "{c}");
        }
        assert!(!out.rows.is_empty(), "{name}");
        for r in &out.rows {
            assert_eq!(r.len(), cols.len(), "{name}");
        }
    }
}

#[test]
fn provenance_in_header_rows_and_footer() {
    let out = run_text("experiment = spacs\nseed = 99\nn = [10, 20]\n");
    let csv = render(&out, Format::Csv, None);
    let first = csv.lines().next().unwrap();
    assert!(first.contains("seed=99") && first.contains(&out.config_hash));
    for key in ["# seed=99", "# version=v", "# config_hash=", "# status=complete"] {
        assert!(csv.contains(key), "{key}");
    }
    assert!(!csv.contains("wall_time"));
    assert!(render(&out, Format::Csv, Some(1.5)).contains("# wall_time_s=1.500"));

    let jl = render(&out, Format::JsonLines, None);
    let records: Vec<serde_json::Value> = jl.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), out.rows.len() + 2);
    for r in &records[..records.len() - 1] {
        assert_eq!(r["seed"], 99);
        assert_eq!(r["config_hash"], out.config_hash.as_str());
    }
    assert_eq!(records[1]["n[photons]"], 10);
    let footer = &records.last().unwrap()["footer"];
    assert_eq!(footer["seed"], 99);
    assert_eq!(footer["status"], "complete");
    assert_eq!(footer["version"], VERSION);
}

#[test]
fn hash_ignores_layout_and_seed() {
    let a = parse("experiment = walk\nt_max = 8\np = 0.5\n").unwrap();
    let b = parse("# same run\n  p=0.50   # live sites\n\nt_max = 8.0\nseed = 3\nexperiment=walk\n").unwrap();
    let c = parse("experiment = walk\nt_max = 9\np = 0.5\n").unwrap();
    let d = parse("experiment = walk\nt_max = 8\np = 0.5\nbudget = 10\n").unwrap();
    assert_eq!(a.hash(), b.hash());
    assert_eq!(a.hash().len(), 64);
    assert_ne!(a.hash(), c.hash());
    assert_ne!(a.hash(), d.hash());
    // explicit defaults hash like omitted ones
    assert_eq!(parse("experiment = walk\nt_b = 10\n").unwrap().hash(), ExperimentConfig::defaults("walk").unwrap().hash());
}

#[test]
fn config_file_output_options() {
    let target = scratch("from-config.jsonl");
    let cfg = write_config("options.cfg", &format!("experiment = loop-loss\nout = \"{}\"\nformat = json-lines\n", target.display()));
    let o = bin().arg("run").arg(&cfg).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.starts_with("{\"experiment\":\"loop-loss\""));
    // stdout when no path is configured
    let cfg = write_config("stdout.cfg", "experiment = loop-loss\nm = 2\n");
    let o = bin().arg("run").arg(&cfg).output().unwrap();
    assert!(String::from_utf8(o.stdout).unwrap().contains("i[bin],j[bin],factor[amplitude]"));
}

#[test]
fn catalog_lists_every_experiment() {
    assert!(catalog().len() >= 15);
    let names: Vec<&str> = catalog().iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, NAMES);
    let o = bin().arg("list").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let listed: Vec<ExperimentSchema> =
        String::from_utf8(o.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(listed, catalog());
}

#[test]
fn defaults_validate_against_their_schema() {
    for s in catalog() {
        let defaults: BTreeMap<String, Value> = s.params.iter().map(|p| (p.name.clone(), p.default.clone())).collect();
        validate(s, &defaults).unwrap_or_else(|e| panic!("{}: {e}", s.name));
        for p in &s.params {
            assert_eq!(coerce(&p.default, p).as_ref(), Ok(&p.default), "{}.{}", s.name, p.name);
            assert!(!p.unit.is_empty() && !p.help.is_empty());
        }
        assert_eq!(ExperimentConfig::defaults(&s.name).unwrap().params, defaults);
    }
}

#[test]
fn schemas_round_trip() {
    for s in catalog() {
        let text = serde_json::to_string(s).unwrap();
        let back: ExperimentSchema = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn validate_rejects_bad_maps() {
    let s = find("walk").unwrap();
    let mut m: BTreeMap<String, Value> = s.params.iter().map(|p| (p.name.clone(), p.default.clone())).collect();
    m.insert("p".into(), Value::Float(2.0));
    assert!(validate(s, &m).is_err());
    m.insert("p".into(), Value::Float(0.5));
    m.insert("extra".into(), Value::Int(1));
    assert!(validate(s, &m).is_err());
    m.remove("extra");
    m.remove("trials");
    assert!(validate(s, &m).is_err());
}

#[test]
fn bad_invocations() {
    let o = bin().arg("run").arg(scratch("missing.cfg")).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let cfg = write_config("fmt.cfg", "experiment = hom\n");
    let o = bin().arg("run").arg(&cfg).args(["--format", "xml"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().arg("run").arg(&cfg).args(["--threads", "0"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn set_overrides_like_the_file() {
    let mut a = ExperimentConfig::defaults("qufti").unwrap();
    a.set("n", Value::Int(4)).unwrap();
    let b = parse("experiment = qufti\nn = [4]\n").unwrap();
    assert_eq!(a.params, b.params);
    assert!(a.set("m", Value::Int(1)).is_err());
    assert!(a.set("phi", Value::Str("x".into())).is_err());
}

fn scalar() -> impl Strategy<Value = Value> {
    prop_oneof![
        any::<bool>().prop_map(Value::Bool),
        any::<i64>().prop_map(Value::Int),
        any::<f64>().prop_filter("finite", |x| x.is_finite()).prop_map(Value::Float),
        "[a-z][a-z0-9_-]{0,8}".prop_filter("keywords", |s| s != "true" && s != "false").prop_map(Value::Str),
        "[a-zA-Z ,#=]{0,10}".prop_map(Value::Str),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_text_parses_back(v in prop_oneof![scalar(), prop::collection::vec(scalar(), 0..5).prop_map(Value::List)]) {
        prop_assert_eq!(parse_value(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn key_order_does_not_change_the_hash(perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(), seed in any::<u64>()) {
        let lines = ["experiment = walk", "t_max = 6", "p = 0.7", "trials = 3"];
        let text: String = perm.iter().map(|&k| format!("{}\n", lines[k])).collect();
        let a = parse(&text).unwrap();
        let b = parse(&format!("{}seed = {seed}\n", lines.join("\n") + "\n")).unwrap();
        prop_assert_eq!(a.hash(), b.hash());
        prop_assert_eq!(b.seed, seed);
    }

    #[test]
    fn budget_prefix(budget in 1u64..200) {
        let text = format!("experiment = spacs\nn = [10, 20, 30, 40, 50]\nbudget = {budget}\n");
        let out = execute(&parse(&text).unwrap()).unwrap();
        prop_assert!(out.work_units <= budget);
        let done = out.rows.len();
        // tasks cost n each
        let fits = [10u64, 20, 30, 40, 50].iter().scan(0, |acc, c| { *acc += c; Some(*acc) }).take_while(|&s| s <= budget).count();
        prop_assert_eq!(done, fits);
        prop_assert_eq!(out.exit_code(), if fits == 5 { 0 } else { 3 });
    }
}
