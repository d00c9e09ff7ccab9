use std::path::{Path, PathBuf};
use std::process::Command;

use orthodual::format::{parse_digraph, parse_lattice, render_digraph, render_lattice, render_lattice_file};
use orthodual_core::bitset::BitSet;
use orthodual_core::digraph::Digraph;
use orthodual_core::dual::build_dual;
use orthodual_core::family::{closure_system_lattice, Family};
use orthodual_core::lattice::product;
use proptest::prelude::*;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str], dir: &Path) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_orthodual"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    Out {
        code: o.status.code().expect("exit code"),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const BROKEN: &str = "\
digraph broken
vertices: x y
edge: x x
edge: x y
edge: y x
edge: y y
";

const PLAIN: &str = "\
lattice n5
elements: 0 a b c 1
cover: 0 a
cover: a b
cover: b 1
cover: 0 c
cover: c 1
";

#[test]
fn validate_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "n5.lat", PLAIN);
    let r = cli(&["validate", good.to_str().unwrap()], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("ok: lattice n5 with 5 elements"));

    let bad = write(dir.path(), "bad.lat", "lattice x\nelements: 0 1\ncover: 0 z\n");
    let r = cli(&["validate", bad.to_str().unwrap()], dir.path());
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3, column 10: unknown label `z`"), "{}", r.stderr);

    let r = cli(&["validate", "missing.lat"], dir.path());
    assert_eq!(r.code, 2);
    assert_eq!(cli(&["frobnicate"], dir.path()).code, 2);
    assert_eq!(cli(&["--help"], dir.path()).code, 0);
}

#[test]
fn law_table_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let r = cli(&["gen", "benzene", "-o", "o6.lat"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = cli(&["laws", "o6.lat"], dir.path());
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("orthomodular  FAILS at (a, b)"), "{}", r.stdout);

    write(dir.path(), "n5.lat", PLAIN);
    let r = cli(&["laws", "n5.lat"], dir.path());
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("orthomodular  not checked"));
    assert!(r.stdout.contains("modular       FAILS"));
    let r = cli(&["laws", "n5.lat", "--law", "orthomodular"], dir.path());
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("ortho"), "{}", r.stderr);

    cli(&["gen", "boolean", "3", "-o", "b3.lat"], dir.path());
    assert_eq!(cli(&["laws", "b3.lat"], dir.path()).code, 0);
}

#[test]
fn roundtrip_on_fom2() {
    let dir = tempfile::tempdir().unwrap();
    let r = cli(&["gen", "mo", "2", "x", "boolean", "4", "-o", "fom2.lat"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = cli(&["roundtrip", "fom2.lat"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "|dual|=16, |MPMs|=96, primal iso OK, dual iso OK\n");
}

#[test]
fn broken_digraph_fails_separation() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "broken.gph", BROKEN);
    let r = cli(&["axioms", "broken.gph"], dir.path());
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("(S)                    FAILS at pair (x, y)"), "{}", r.stdout);
}

#[test]
fn generated_mo3_has_thirty_vertices() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cli(&["gen", "mo", "3", "-o", "mo3.lat"], dir.path()).code, 0);
    let r = cli(&["dual", "mo3.lat"], dir.path());
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("dual of mo3: 30 vertices"), "{}", r.stdout);
}

#[test]
fn gen_prints_to_stdout_and_rejects_bad_specs() {
    let dir = tempfile::tempdir().unwrap();
    let r = cli(&["gen", "mo", "2"], dir.path());
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("lattice mo2\n"));
    assert_eq!(cli(&["gen", "mo", "two"], dir.path()).code, 2);
    assert_eq!(cli(&["gen", "mo", "2", "x"], dir.path()).code, 2);
    assert_eq!(cli(&["gen", "cube"], dir.path()).code, 2);
}

#[test]
fn dot_output_is_stable_and_shows_isolated_loops() {
    let dir = tempfile::tempdir().unwrap();
    cli(&["gen", "mo", "2", "x", "boolean", "4", "-o", "fom2.lat"], dir.path());
    assert_eq!(cli(&["dual", "fom2.lat", "--dot", "a.dot"], dir.path()).code, 0);
    assert_eq!(cli(&["dual", "fom2.lat", "--dot", "b.dot"], dir.path()).code, 0);
    let a = std::fs::read_to_string(dir.path().join("a.dot")).unwrap();
    let b = std::fs::read_to_string(dir.path().join("b.dot")).unwrap();
    assert_eq!(a, b);

    let nodes: Vec<String> = a
        .lines()
        .filter(|l| l.contains("[label="))
        .map(|l| l.trim().split(' ').next().unwrap().to_string())
        .collect();
    assert_eq!(nodes.len(), 16);
    let solid: Vec<(&str, &str)> = a
        .lines()
        .filter(|l| l.contains("->") && !l.contains("dotted"))
        .map(|l| {
            let mut it = l.trim().trim_end_matches(';').split(" -> ");
            let x = it.next().unwrap();
            let y = it.next().unwrap().split(' ').next().unwrap();
            (x, y)
        })
        .collect();
    let isolated = nodes
        .iter()
        .filter(|v| {
            let mine: Vec<_> = solid.iter().filter(|(x, y)| x == v || y == v).collect();
            mine.len() == 1 && mine[0].0 == mine[0].1
        })
        .count();
    assert_eq!(isolated, 4);

    assert_eq!(cli(&["dual", "fom2.lat", "--dot", "c.dot", "--no-loops"], dir.path()).code, 0);
    let c = std::fs::read_to_string(dir.path().join("c.dot")).unwrap();
    assert!(c.lines().all(|l| !l.contains("->") || l.contains("dotted") || {
        let mut it = l.trim().trim_end_matches(';').split(" -> ");
        it.next() != it.next()
    }));
}

#[test]
fn edges_table_matches_benzene_rows() {
    let dir = tempfile::tempdir().unwrap();
    cli(&["gen", "benzene", "-o", "o6.lat"], dir.path());
    let r = cli(&["dual", "o6.lat", "--edges-table"], dir.path());
    let rows: Vec<Vec<&str>> = r
        .stdout
        .lines()
        .skip_while(|l| !l.starts_with('E'))
        .skip(1)
        .map(|l| l.split_whitespace().skip(1).collect())
        .collect();
    assert_eq!(
        rows,
        [["1", "0", "0", "1"], ["1", "1", "0", "1"], ["0", "1", "1", "0"], ["0", "1", "1", "1"]]
    );
}

#[test]
fn mpm_listing_agrees_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    cli(&["gen", "mo", "2", "-o", "mo2.lat"], dir.path());
    let a = cli(&["mpms", "mo2.lat"], dir.path());
    let b = cli(&["mpms", "mo2.lat", "--oracle"], dir.path());
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.starts_with("6 maximal partial maps\n"));
}

#[test]
fn reconstruct_recovers_the_source() {
    let dir = tempfile::tempdir().unwrap();
    cli(&["gen", "benzene", "-o", "o6.lat"], dir.path());
    let r = cli(&["reconstruct", "o6.lat"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let back = parse_lattice(&r.stdout).unwrap();
    let orig = Family::Benzene.generate();
    let ortho = back.ortho.as_ref().expect("g gives an orthocomplement");
    for a in orig.elements() {
        let x = back.lattice.index_of(orig.name(a)).unwrap();
        assert_eq!(back.lattice.name(ortho.ortho(x)), orig.name(orig.ortho(a)));
        for b in orig.elements() {
            let y = back.lattice.index_of(orig.name(b)).unwrap();
            assert_eq!(back.lattice.leq(x, y), orig.leq(a, b));
        }
    }

    write(dir.path(), "broken.gph", BROKEN);
    let r = cli(&["reconstruct", "broken.gph"], dir.path());
    assert_eq!(r.code, 0);
    assert!(parse_lattice(&r.stdout).unwrap().ortho.is_none());
}

#[test]
fn digraph_input_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let d = build_dual(&Family::Benzene.generate()).unwrap();
    write(dir.path(), "o6.gph", &render_digraph("o6", d.graph()));
    let r = cli(&["roundtrip", "o6.gph"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.stdout, "|X|=4, |MPMs|=6, dual iso OK\n");
    assert_eq!(cli(&["axioms", "o6.gph"], dir.path()).code, 0);

    write(dir.path(), "broken.gph", BROKEN);
    assert_eq!(cli(&["roundtrip", "broken.gph"], dir.path()).code, 1);
}

#[test]
fn fixture_files_round_trip() {
    let fixtures = [
        Family::TwoChain.generate(),
        Family::Boolean(2).generate(),
        Family::Boolean(4).generate(),
        Family::Mo(2).generate(),
        Family::Mo(3).generate(),
        Family::Benzene.generate(),
        product(&Family::Mo(2).generate(), &Family::Boolean(4).generate()),
    ];
    for ol in &fixtures {
        let text = render_lattice("f", ol.lattice(), Some(ol.ortho_map()));
        let f = parse_lattice(&text).unwrap();
        assert_eq!(&f.lattice, ol.lattice());
        assert_eq!(f.ortho.as_ref(), Some(ol));
        assert_eq!(render_lattice_file(&f), text);

        let g = build_dual(ol).unwrap().graph().clone();
        let back = parse_digraph(&render_digraph("d", &g)).unwrap();
        assert_eq!(back.graph, g);
    }
}

fn digraph_strategy() -> impl Strategy<Value = Digraph> {
    (1usize..=6).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n * n),
            prop::option::of(prop::collection::vec(0..n, n)),
        )
            .prop_map(move |(bits, g)| {
                let d = Digraph::from_fn((0..n).map(|i| format!("v{i}")).collect(), |x, y| bits[x * n + y]);
                match g {
                    Some(g) => d.with_g(g),
                    None => d,
                }
            })
    })
}

proptest! {
    #[test]
    fn lattice_files_round_trip(masks in prop::collection::vec(0u32..16, 0..6)) {
        let gens: Vec<BitSet> = masks.iter().map(|&m| BitSet::from_predicate(4, |i| m >> i & 1 == 1)).collect();
        let l = closure_system_lattice(4, &gens);
        let text = render_lattice("c", &l, None);
        let f = parse_lattice(&text).unwrap();
        prop_assert_eq!(&f.lattice, &l);
        prop_assert!(f.ortho.is_none());
        prop_assert_eq!(render_lattice_file(&f), text);
    }

    #[test]
    fn digraph_files_round_trip(g in digraph_strategy()) {
        let text = render_digraph("r", &g);
        let f = parse_digraph(&text).unwrap();
        prop_assert_eq!(&f.graph, &g);
        prop_assert_eq!(render_digraph(&f.name, &f.graph), text);
    }
}
