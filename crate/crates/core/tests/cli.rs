mod common;

use std::process::Command;

use common::CORPUS_NAMES;
use lyndon_pbw::cli::{corpus_entry, run_args};
use lyndon_pbw::presentation::parse_presentation;

fn run(args: &[&str]) -> (i32, String) {
    let o = run_args(args.iter().copied());
    (o.status, o.output)
}

#[test]
fn documented_examples_exit_as_expected() {
    let (status, out) = run(&["pbw", "quantum_plane", "--max-degree", "8"]);
    assert_eq!(status, 0, "{out}");
    assert!(out.contains("pbw.generator: a degree=(1,0)"));
    assert!(out.contains("pbw.generator: b degree=(0,1)"));

    let (status, out) = run(&["check-comult", "x3_q2"]);
    assert_eq!(status, 1, "{out}");
    assert!(out.contains("comult.biideal: FAIL"));

    let (status, out) = run(&["report-all", "heisenberg", "--max-degree", "6"]);
    assert_eq!(status, 0, "{out}");
    for key in ["gb.element", "pbw.order.0", "ore.certified", "hilbert.match", "chains.A3"] {
        assert!(out.contains(key), "missing {key}");
    }
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["pbw", "not_a_presentation"]).0, 2);
    assert_eq!(run(&["explode", "quantum_plane"]).0, 2);
    assert_eq!(run(&["pbw", "quantum_plane", "--orders", "many"]).0, 2);
    assert_eq!(run(&["rearrange", "a2_serre_q2"]).0, 2);
    assert_eq!(run(&["rearrange", "a2_serre_q2", "--expr", "a*q"]).0, 2);
    assert_eq!(run(&["pbw", "heisenberg", "--subalphabet", "b"]).0, 2);
    // relations of degree 3 cannot be truncated at degree 2
    assert_eq!(run(&["gb", "a2_serre_q2", "--max-degree", "2"]).0, 2);

    let dir = std::env::temp_dir().join(format!("lyndon-pbw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("zero.pres");
    std::fs::write(&bad, "field rationals\ngrading dim=1\nletter x degree=(0)\n").unwrap();
    let (status, out) = run(&["gb", bad.to_str().unwrap()]);
    assert_eq!(status, 2);
    assert!(out.starts_with("error:"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn machine_output_parses_back() {
    for name in CORPUS_NAMES {
        let (_, out) = run(&["report-all", name, "--machine"]);
        let original = parse_presentation(corpus_entry(name).unwrap()).unwrap();
        let reparsed = parse_presentation(&out).unwrap();
        assert_eq!(reparsed, original, "{name}");
        assert!(out.lines().last().unwrap().starts_with("report status "));
    }
}

#[test]
fn files_and_corpus_names_agree() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/quantum_plane.pres");
    assert_eq!(run(&["basis", path]), run(&["basis", "quantum_plane"]));
}

#[test]
fn rearrange_rewrites_into_pbw_monomials() {
    let (status, out) = run(&["rearrange", "quantum_plane", "--expr", "b*a"]);
    assert_eq!(status, 0);
    assert!(out.contains("rearrange.pbw: (2)*z_a*z_b"), "{out}");
}

#[test]
fn binary_exit_status_matches_library() {
    let bin = env!("CARGO_BIN_EXE_lyndon-pbw");
    for (args, code) in [
        (&["heights", "x_pow_3_zeta"][..], 0),
        (&["heights", "x3_q2_negative"][..], 1),
        (&["heights", "missing"][..], 2),
    ] {
        let out = Command::new(bin).args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(code), "{args:?}");
    }
}
