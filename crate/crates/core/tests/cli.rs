mod common;

use std::fs;
use std::process::{Command, Output};

use common::fixture_path;

use permshuffle::Dfa;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permshuffle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture_path(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_even_a() {
    let o = bin(&["validate", &fx("even_a.aut")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "permutation: yes\norder a=2 b=1\n");
}

#[test]
fn verify_concat_expression() {
    let o = bin(&["verify", &fx("e_concat_o.expr"), "--max-len", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS\n");
}

#[test]
fn verify_every_fixture_expression() {
    for f in [
        "e_shuffle_o.expr",
        "union_iter.expr",
        "nested_iter.expr",
        "z_shuffle_z.expr",
        "residual.expr",
    ] {
        let o = bin(&["verify", &fx(f), "--max-len", "7"]);
        assert_eq!(o.status.code(), Some(0), "{f}");
    }
}

#[test]
fn compile_then_member() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.aut");
    let out = out.to_str().unwrap();
    let o = bin(&["compile", &fx("e_concat_o.expr"), "-o", out]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(bin(&["member", out, "ba"]).status.code(), Some(0));
    assert_eq!(bin(&["member", out, "aa"]).status.code(), Some(1));
    assert_eq!(bin(&["member", out, ""]).status.code(), Some(1));
}

#[test]
fn written_automata_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["perm".into(), fx("s3.aut")],
        vec!["iterstar".into(), fx("odd_a.aut")],
        vec!["shuffleperm".into(), fx("even_a.aut"), fx("odd_a.aut")],
        vec!["perm".into(), fx("z3.aut"), "--no-minimize".into()],
        vec!["perm".into(), fx("s3.aut"), "--shrink-rays".into()],
        vec!["compile".into(), fx("nested_iter.expr")],
        vec!["compile".into(), fx("residual.expr"), "--fallback".into()],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.path().join(format!("{i}.aut"));
        let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
        full.extend(["-o", path.to_str().unwrap()]);
        let o = bin(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let bytes = fs::read_to_string(&path).unwrap();
        let parsed: Dfa = bytes.parse().unwrap();
        assert_eq!(parsed.to_text(), bytes, "{args:?}");
        assert_eq!(parsed.canonical(), parsed);
    }
}

#[test]
fn stdout_output_when_no_file_given() {
    let o = bin(&["perm", &fx("even_a.aut")]);
    assert_eq!(o.status.code(), Some(0));
    let d: Dfa = stdout(&o).parse().unwrap();
    assert_eq!(d.state_count(), 2);
}

#[test]
fn unminimized_output_has_grid_size() {
    let o = bin(&["perm", &fx("z3.aut"), "--no-minimize"]);
    let d: Dfa = stdout(&o).parse().unwrap();
    assert_eq!(d.state_count(), 9);
}

#[test]
fn enumerate_and_dot() {
    let o = bin(&["enumerate", &fx("even_a.aut"), "--max-len", "2"]);
    assert_eq!(stdout(&o), "ε\nb\naa\nbb\n");
    let o = bin(&["dot", &fx("even_a.aut")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("digraph dfa {"));
    assert!(text.contains("doublecircle"));
}

#[test]
fn stats_tsv_stays_within_bounds() {
    for f in [
        "e_concat_o.expr",
        "union_iter.expr",
        "nested_iter.expr",
        "residual.expr",
    ] {
        let o = bin(&["stats", &fx(f), "--format", "tsv"]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("construction\tgrid\tunminimized\tbound\tminimized")
        );
        let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
        assert_eq!(rows.last().unwrap()[0], "result");
        for r in &rows[..rows.len() - 1] {
            let unminimized: u128 = r[2].parse().unwrap();
            let bound: u128 = r[3].parse().unwrap();
            assert!(unminimized <= bound, "{f}: {r:?}");
        }
    }
    let o = bin(&["stats", &fx("e_concat_o.expr")]);
    assert!(stdout(&o).contains("bound"));
}

#[test]
fn atom_override() {
    // replacing O by EVEN_A makes E . O the even-a language
    let o = bin(&[
        "compile",
        &fx("e_concat_o.expr"),
        "--atom",
        &format!("O={}", fx("even_a.aut")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let d: Dfa = stdout(&o).parse().unwrap();
    assert!(d
        .equivalent(&permshuffle::automata::fixtures::even_a())
        .unwrap());
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.expr");
    fs::write(&bad, format!("atom A = {}\nexpr: A\n", fx("ab_star.aut"))).unwrap();
    let o = bin(&["compile", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a permutation"));

    fs::write(&bad, format!("atom A = {}\nexpr: A .\n", fx("even_a.aut"))).unwrap();
    assert_eq!(
        bin(&["compile", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );

    assert_eq!(
        bin(&["perm", &fx("z3.aut"), "--grid-cap", "2"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bin(&["verify", &fx("e_concat_o.expr"), "--max-len", "12"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["perm"]).status.code(), Some(2));
}
