use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn metdim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metdim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run metdim")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&o.stdout));
    })
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Work {
    dir: TempDir,
}

impl Work {
    fn new() -> Self {
        Work {
            dir: TempDir::new().unwrap(),
        }
    }

    fn run(&self, args: &[&str]) -> Output {
        metdim(args, self.dir.path())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.path(name)).unwrap()
    }

    fn write(&self, name: &str, text: &str) {
        std::fs::write(self.path(name), text).unwrap();
    }

    fn construct(&self, family: &str, n: &str, name: &str) {
        let o = self.run(&["construct", family, n, "-o", name]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
}

#[test]
fn construct_headers() {
    let w = Work::new();
    w.construct("pg", "2", "fano.sd");
    assert!(w.read("fano.sd").starts_with("SD 7 3 1\n"));
    w.construct("biaffine", "3", "pappus.std");
    assert!(w.read("pappus.std").starts_with("STD 3 3 1\n"));
    w.construct("hadamard-design", "12", "h12.sd");
    assert!(w.read("h12.sd").starts_with("SD 11 5 2\n"));
    w.construct("hadamard-std", "8", "h8.std");
    assert!(w.read("h8.std").starts_with("STD 2 8 4\n"));
}

#[test]
fn construct_errors() {
    let w = Work::new();
    let o = w.run(&["construct", "pg", "6"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not a prime power"));
    let o = w.run(&["construct", "hadamard-std", "6"]);
    assert_eq!(code(&o), 2);
    let o = w.run(&["construct"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn construct_input_revalidates() {
    let w = Work::new();
    w.construct("pg", "2", "fano.sd");
    let o = w.run(&["construct", "--input", "fano.sd"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout), w.read("fano.sd"));
    // two blocks sharing two points
    w.write("bad.sd", "SD 7 3 1\n0 1 2\n0 1 3\n0 4 5\n1 4 6\n2 3 4\n2 5 6\n3 5 6\n");
    let o = w.run(&["construct", "--input", "bad.sd"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stderr(&o).contains("invalid"));
}

#[test]
fn exact_semi_points_on_fano() {
    let w = Work::new();
    w.construct("pg", "2", "fano.sd");
    let o = w.run(&[
        "resolve", "--method", "exact", "--target", "semi-points", "fano.sd", "--witness", "w.rs",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["size"], 3);
    assert_eq!(r["verification"]["passed"], true);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["config"]["method"], "exact");
    assert_eq!(code(&w.run(&["verify", "fano.sd", "w.rs"])), 0);
}

#[test]
fn random_split_on_pg3_is_deterministic() {
    let w = Work::new();
    w.construct("pg", "3", "pg3.sd");
    let args = [
        "resolve", "--method", "random", "--target", "split", "--seed", "7", "pg3.sd", "--witness", "s.rs",
    ];
    let a = w.run(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    let witness = w.read("s.rs");
    let b = w.run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(witness, w.read("s.rs"));
    let r = json(&a);
    assert!(r["size"].as_u64().unwrap() <= 24);
    assert_eq!(r["paper_bound"], 24);
    assert_eq!(r["verification"]["passed"], true);
    assert_eq!(code(&w.run(&["verify", "pg3.sd", "s.rs"])), 0);
}

#[test]
fn full_dimension_of_pappus() {
    let w = Work::new();
    w.construct("biaffine", "3", "pappus.std");
    let o = w.run(&["resolve", "--target", "full-mdim", "pappus.std", "--witness", "f.rs"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["dimension"], 4);
    assert_eq!(r["optimal"], true);
    assert_eq!(code(&w.run(&["verify", "pappus.std", "f.rs"])), 0);

    let o = w.run(&["export", "pappus.std", "-o", "pappus.g"]);
    assert_eq!(code(&o), 0);
    assert!(w.read("pappus.g").starts_with("G 18 27 9\n"));
    assert_eq!(code(&w.run(&["verify", "pappus.g", "f.rs"])), 0);
    let o = w.run(&["resolve", "--target", "full-mdim", "pappus.g"]);
    assert_eq!(json(&o)["dimension"], 4);
}

#[test]
fn every_target_emits_verifiable_witnesses() {
    let w = Work::new();
    w.construct("pg", "3", "pg3.sd");
    w.construct("biaffine", "4", "b4.std");
    for design in ["pg3.sd", "b4.std"] {
        for target in ["semi-points", "semi-blocks", "split"] {
            for method in ["random", "greedy", "exact"] {
                let o = w.run(&[
                    "resolve", "--method", method, "--target", target, design, "--witness", "x.rs",
                ]);
                assert_eq!(code(&o), 0, "{design} {target} {method}: {}", stderr(&o));
                let v = w.run(&["verify", design, "x.rs"]);
                assert_eq!(code(&v), 0, "{design} {target} {method}");
            }
        }
    }
}

#[test]
fn excluded_std_needs_explicit_size() {
    let w = Work::new();
    w.construct("biaffine", "3", "pappus.std");
    let o = w.run(&["resolve", "--method", "random", "pappus.std"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--size"));
    let o = w.run(&["resolve", "--method", "random", "--size", "9", "pappus.std"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn exhausted_retries_exit_one() {
    let w = Work::new();
    w.construct("pg", "2", "fano.sd");
    let o = w.run(&["resolve", "--method", "random", "--size", "2", "--retries", "5", "fano.sd"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("5 trials"));
}

#[test]
fn bounds_from_parameters() {
    let w = Work::new();
    let o = w.run(&["bounds", "--v", "7", "--m", "4", "--s", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["e_exact"]["num"], "3");
    assert_eq!(r["e_exact"]["den"], "5");
    let o = w.run(&["bounds", "--v", "57", "--m", "14", "--s", "33"]);
    assert_eq!(json(&o)["chain"]["ok"], true);
    let o = w.run(&["bounds", "--v", "7", "--m", "4", "--s", "9"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bounds_from_design() {
    let w = Work::new();
    w.construct("pg", "2", "fano.sd");
    let o = w.run(&["bounds", "--design", "fano.sd", "--paper-s"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["s"], 7);
    assert_eq!(r["e_exact"]["num"], "0");
    assert_eq!(r["chain"]["skipped"], true);
    let o = w.run(&["bounds", "--design", "fano.sd", "--s", "3", "--mc-trials", "200", "--seed", "4"]);
    let r = json(&o);
    assert!((r["monte_carlo"]["markov_lower"].as_f64().unwrap() - 0.4).abs() < 1e-12);
}

#[test]
fn projective_sweep_csv() {
    let w = Work::new();
    let o = w.run(&["bounds", "--sweep", "pg", "--qmax", "11", "-o", "pg.csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = w.read("pg.csv");
    assert!(text.starts_with(&format!("# metdim {} bounds ", env!("CARGO_PKG_VERSION"))));
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        [
            "v", "k", "lambda", "g", "s", "E_exact_num", "E_exact_den", "E_float", "chain_ok", "mc_rate",
            "mc_trials", "seed"
        ]
    );
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let v: usize = rec[0].parse().unwrap();
        let k: usize = rec[1].parse().unwrap();
        let s: usize = rec[4].parse().unwrap();
        let m = 2 * (k - 1);
        if s <= v - m {
            assert_eq!(&rec[8], "true", "v = {v}");
        } else {
            assert_eq!(&rec[8], "", "v = {v}");
        }
        rows += 1;
    }
    assert_eq!(rows, 8);
}

#[test]
fn verify_failures() {
    let w = Work::new();
    w.construct("pg", "2", "fano.sd");
    w.write("empty.rs", "RS\nsemi-points\n");
    let o = w.run(&["verify", "fano.sd", "empty.rs"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("points 0 and 1"));

    let fano = w.read("fano.sd");
    let truncated: String = fano.lines().take(3).map(|l| format!("{l}\n")).collect();
    w.write("trunc.sd", &truncated);
    w.write("ok.rs", "RS\nsemi-points\n0 1 2 3 4 5 6\n");
    assert_eq!(code(&w.run(&["verify", "trunc.sd", "ok.rs"])), 2);
    w.write("bad.rs", "RS\nsemi\n1\n");
    assert_eq!(code(&w.run(&["verify", "fano.sd", "bad.rs"])), 2);
    w.write("range.rs", "RS\nsemi-points\n9\n");
    assert_eq!(code(&w.run(&["verify", "fano.sd", "range.rs"])), 2);
    assert_eq!(code(&w.run(&["verify", "missing.sd", "ok.rs"])), 2);
}

#[test]
fn classify_design_and_graph() {
    let w = Work::new();
    w.construct("pg", "2", "fano.sd");
    let o = w.run(&["classify", "fano.sd"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["intersection_array"], "{*,1,1,3; 0,0,0,0; 3,2,2,*}");
    assert_eq!(r["matches_expected"], true);
    assert_eq!(r["bipartite"], true);
    assert_eq!(r["girth"], 6);
    w.run(&["export", "fano.sd", "-o", "fano.g"]);
    let r = json(&w.run(&["classify", "fano.g"]));
    assert_eq!(r["vertices"], 14);
    assert_eq!(r["expected_array"], Value::Null);
}
