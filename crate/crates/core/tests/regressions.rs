use orthodual_core::axioms::{check_tirs, check_ted, Axiom, Subject};
use orthodual_core::digraph::{concept_pairs, Digraph, Topology};
use orthodual_core::dual::build_dual;
use orthodual_core::family::Family;
use orthodual_core::mpm::{enumerate_mpms, Method};

/// Off-diagonal cells in row-major order; the first is the most significant bit.
const OFF: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

fn reflexive3(mask: u32) -> Digraph {
    let mut g = Digraph::from_fn(vec!["x".into(), "y".into(), "z".into()], |x, y| x == y);
    for (k, &(x, y)) in OFF.iter().enumerate() {
        if mask >> (5 - k) & 1 == 1 {
            g.set_edge(x, y, true);
        }
    }
    g
}

fn ti_oracle(g: &Digraph) -> bool {
    g.edges().into_iter().all(|(x, y)| {
        g.vertices()
            .any(|z| g.out_set(z).is_subset(g.out_set(x)) && g.in_set(z).is_subset(g.in_set(y)))
    })
}

/// All maximal E-preserving partial maps, by listing the 27 partial maps.
fn mpm_oracle(g: &Digraph) -> Vec<[Option<bool>; 3]> {
    let vals = [None, Some(false), Some(true)];
    let mut preserving = Vec::new();
    for a in vals {
        for b in vals {
            for c in vals {
                let f = [a, b, c];
                if g.edges().into_iter().all(|(x, y)| !matches!((f[x], f[y]), (Some(true), Some(false)))) {
                    preserving.push(f);
                }
            }
        }
    }
    let extends = |f: &[Option<bool>; 3], h: &[Option<bool>; 3]| f != h && (0..3).all(|i| f[i].is_none() || f[i] == h[i]);
    preserving.iter().filter(|f| !preserving.iter().any(|h| extends(f, h))).copied().collect()
}

fn ted_oracle(g: &Digraph) -> bool {
    let ms = mpm_oracle(g);
    g.vertices()
        .all(|x| g.vertices().all(|y| g.has_edge(x, y) || ms.iter().any(|f| f[x] == Some(true) && f[y] == Some(false))))
}

#[test]
fn first_reflexive_triple_failing_ti() {
    let first = (0..64).find(|&m| !ti_oracle(&reflexive3(m)));
    assert_eq!(first, Some(0b011001));
    let g = reflexive3(0b011001);
    let mut off: Vec<_> = g.edges().into_iter().filter(|(x, y)| x != y).collect();
    off.sort();
    assert_eq!(off, [(0, 2), (1, 0), (2, 1)]);
    let r = check_tirs(&g);
    assert!(!r.get(Axiom::Ti).unwrap().holds());
    let t = Topology::Discrete;
    assert!(r.revalidate(&Subject::new(&g, &t)));
    for m in 0..64 {
        let g = reflexive3(m);
        assert_eq!(check_tirs(&g).get(Axiom::Ti).unwrap().holds(), ti_oracle(&g), "mask {m:06b}");
    }
}

#[test]
fn no_reflexive_triple_fails_ted() {
    assert_eq!((0..64).find(|&m| !ted_oracle(&reflexive3(m))), None);
    let t = Topology::Discrete;
    for m in 0..64 {
        let g = reflexive3(m);
        let ms = enumerate_mpms(&g, Method::Galois).unwrap();
        assert_eq!(ms.len(), mpm_oracle(&g).len(), "mask {m:06b}");
        let r = check_ted(&Subject::new(&g, &t).with_mpms(&ms));
        assert!(r.get(Axiom::Ted).unwrap().holds(), "mask {m:06b}");
    }
}

#[test]
fn benzene_dual_concept_count() {
    let d = build_dual(&Family::Benzene.generate()).unwrap();
    assert_eq!(concept_pairs(d.graph()).len(), 6);
}
