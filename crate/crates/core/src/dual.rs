//! The dual digraph space of a finite bounded (ortho)lattice.
//!
//! Points are maximal disjoint filter-ideal pairs. In a finite lattice every
//! filter is `↑f` and every ideal is `↓i`, so a pair is stored by its two
//! generators. `⟨↑f, ↓i⟩` is maximal exactly when `f ≰ i`, every lower cover
//! of `f` lies below `i`, and every upper cover of `i` lies above `f`: a
//! proper extension would have to add a lower cover of `f` to the filter or
//! an upper cover of `i` to the ideal.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::digraph::{Digraph, Topology};
use crate::lattice::{Lattice, OrthoLattice};

/// Largest lattice the subset-enumeration oracle accepts.
pub const ORACLE_MAX_ELEMENTS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualError {
    #[error("lattice has {0} elements; the subset oracle handles at most {ORACLE_MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("g sends ⟨↑{f},↓{i}⟩ to a pair that is not a maximal disjoint filter-ideal pair")]
    NotMdfipAfterG { f: String, i: String },
}

/// A maximal disjoint filter-ideal pair `⟨↑filter_gen, ↓ideal_gen⟩`.
///
/// Seen as a partial homomorphism into the two-element lattice it sends the
/// filter to 1 and the ideal to 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mdfip {
    pub filter_gen: usize,
    pub ideal_gen: usize,
}

impl Mdfip {
    pub fn new(filter_gen: usize, ideal_gen: usize) -> Self {
        Mdfip { filter_gen, ideal_gen }
    }

    /// Checks disjointness and both cover conditions.
    pub fn is_valid(&self, l: &Lattice) -> bool {
        let (f, i) = (self.filter_gen, self.ideal_gen);
        !l.leq(f, i) && l.lower_covers(f).iter().all(|&c| l.leq(c, i)) && l.upper_covers(i).iter().all(|&c| l.leq(f, c))
    }

    pub fn filter<'l>(&self, l: &'l Lattice) -> &'l BitSet {
        l.up_set(self.filter_gen)
    }

    pub fn ideal<'l>(&self, l: &'l Lattice) -> &'l BitSet {
        l.down_set(self.ideal_gen)
    }

    /// Label `f|i` built from the generator names.
    pub fn label(&self, l: &Lattice) -> String {
        format!("{}|{}", l.name(self.filter_gen), l.name(self.ideal_gen))
    }
}

/// All maximal disjoint filter-ideal pairs, sorted by `(filter_gen, ideal_gen)`.
pub fn enumerate_mdfips(l: &Lattice) -> Vec<Mdfip> {
    let mut out = Vec::new();
    for f in l.elements() {
        for i in l.elements() {
            let v = Mdfip::new(f, i);
            if v.is_valid(l) {
                out.push(v);
            }
        }
    }
    out
}

/// Brute-force enumeration straight from the definitions: every subset is
/// tested for being a filter or an ideal, disjoint pairs are formed, and a
/// pair is kept when no other disjoint pair contains it componentwise.
pub fn enumerate_mdfips_oracle(l: &Lattice) -> Result<Vec<Mdfip>, DualError> {
    let n = l.len();
    if n > ORACLE_MAX_ELEMENTS {
        return Err(DualError::TooLarge(n));
    }
    let mut filters = Vec::new();
    let mut ideals = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let s = BitSet::from_predicate(n, |i| mask >> i & 1 == 1);
        let members: Vec<usize> = s.iter().collect();
        let is_up = members.iter().all(|&a| l.elements().all(|b| !l.leq(a, b) || s.contains(b)));
        let is_down = members.iter().all(|&a| l.elements().all(|b| !l.leq(b, a) || s.contains(b)));
        let meet_closed = members.iter().all(|&a| members.iter().all(|&b| s.contains(l.meet(a, b))));
        let join_closed = members.iter().all(|&a| members.iter().all(|&b| s.contains(l.join(a, b))));
        if is_up && meet_closed {
            filters.push(s.clone());
        }
        if is_down && join_closed {
            ideals.push(s);
        }
    }
    let dfips: Vec<(&BitSet, &BitSet)> = filters
        .iter()
        .flat_map(|f| ideals.iter().map(move |i| (f, i)))
        .filter(|(f, i)| !f.intersects(i))
        .collect();
    let mut out: Vec<Mdfip> = dfips
        .iter()
        .filter(|(f, i)| {
            !dfips
                .iter()
                .any(|(g, j)| (g, j) != (f, i) && f.is_subset(g) && i.is_subset(j))
        })
        .map(|(f, i)| {
            // least element of a finite filter, greatest of a finite ideal
            let fg = f.iter().find(|&a| f.iter().all(|b| l.leq(a, b))).expect("filter has a least element");
            let ig = i.iter().find(|&a| i.iter().all(|b| l.leq(b, a))).expect("ideal has a greatest element");
            Mdfip::new(fg, ig)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Value of the partial homomorphism of `v` at `a`: `Some(true)` on the
/// filter, `Some(false)` on the ideal, `None` elsewhere.
pub fn mph_eval(l: &Lattice, v: Mdfip, a: usize) -> Option<bool> {
    if l.leq(v.filter_gen, a) {
        Some(true)
    } else if l.leq(a, v.ideal_gen) {
        Some(false)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeMode {
    /// `⟨F,I⟩ E ⟨G,J⟩ ⟺ F ∩ J = ∅`, i.e. `f ≰ j`.
    FilterIdeal,
    /// `f E g ⟺ f(x) ≤ g(x)` wherever both are defined; a full scan.
    PointwiseOracle,
}

pub fn edge(l: &Lattice, v: Mdfip, w: Mdfip, mode: EdgeMode) -> bool {
    match mode {
        EdgeMode::FilterIdeal => !l.leq(v.filter_gen, w.ideal_gen),
        EdgeMode::PointwiseOracle => l.elements().all(|x| match (mph_eval(l, v, x), mph_eval(l, w, x)) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        }),
    }
}

/// `g(⟨F, I⟩) = ⟨I′, F′⟩`, i.e. `⟨↑i′, ↓f′⟩` on generators.
pub fn apply_g(l: &Lattice, ortho: &[usize], v: Mdfip) -> Result<Mdfip, DualError> {
    let w = Mdfip::new(ortho[v.ideal_gen], ortho[v.filter_gen]);
    if w.is_valid(l) {
        Ok(w)
    } else {
        Err(DualError::NotMdfipAfterG {
            f: l.name(v.filter_gen).to_string(),
            i: l.name(v.ideal_gen).to_string(),
        })
    }
}

/// The dual space of a finite lattice, with `g` when the lattice carries an
/// orthocomplement.
///
/// The closed subbasis is `V_a = { v : a ∈ I_v }` and `W_a = { v : a ∈ F_v }`
/// for every element `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSpace {
    lattice: Lattice,
    ortho: Option<Vec<usize>>,
    vertices: Vec<Mdfip>,
    graph: Digraph,
    v_sets: Vec<BitSet>,
    w_sets: Vec<BitSet>,
}

impl DualSpace {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ortho(&self) -> Option<&[usize]> {
        self.ortho.as_deref()
    }

    pub fn vertices(&self) -> &[Mdfip] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The edge relation with `g`, labelled `f|i`.
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn vertex_index(&self, v: Mdfip) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// `V_a`: vertices whose ideal contains `a`.
    pub fn v_set(&self, a: usize) -> &BitSet {
        &self.v_sets[a]
    }

    /// `W_a`: vertices whose filter contains `a`.
    pub fn w_set(&self, a: usize) -> &BitSet {
        &self.w_sets[a]
    }

    /// Closed subbasis `V_0, …, V_{n-1}, W_0, …, W_{n-1}`.
    pub fn topology(&self) -> Topology {
        Topology::ClosedSubbasis(self.v_sets.iter().chain(&self.w_sets).cloned().collect())
    }

    /// Vertices whose only in- and out-edge is the loop.
    pub fn isolated_loops(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&x| {
                let me = BitSet::singleton(n, x);
                self.graph.out_set(x) == &me && self.graph.in_set(x) == &me
            })
            .collect()
    }
}

fn build(lattice: Lattice, ortho: Option<Vec<usize>>) -> Result<DualSpace, DualError> {
    let l = &lattice;
    let vertices = enumerate_mdfips(l);
    let nv = vertices.len();
    let labels = vertices.iter().map(|v| v.label(l)).collect();
    let mut graph = Digraph::from_fn(labels, |x, y| edge(l, vertices[x], vertices[y], EdgeMode::FilterIdeal));
    if let Some(o) = &ortho {
        let mut g = Vec::with_capacity(nv);
        for &v in &vertices {
            let w = apply_g(l, o, v)?;
            g.push(vertices.binary_search(&w).expect("g lands on an enumerated vertex"));
        }
        debug_assert!((0..nv).all(|x| g[g[x]] == x));
        graph = graph.with_g(g);
    }
    let v_sets = l
        .elements()
        .map(|a| BitSet::from_predicate(nv, |x| l.leq(a, vertices[x].ideal_gen)))
        .collect();
    let w_sets = l
        .elements()
        .map(|a| BitSet::from_predicate(nv, |x| l.leq(vertices[x].filter_gen, a)))
        .collect();
    Ok(DualSpace {
        lattice,
        ortho,
        vertices,
        graph,
        v_sets,
        w_sets,
    })
}

/// Dual of an ortholattice: the dual of its lattice reduct plus `g`.
pub fn build_dual(ol: &OrthoLattice) -> Result<DualSpace, DualError> {
    build(ol.lattice().clone(), Some(ol.ortho_map().to_vec()))
}

/// Dual of a plain bounded lattice (no `g`).
pub fn build_lattice_dual(l: &Lattice) -> DualSpace {
    build(l.clone(), None).expect("no g, nothing to fail")
}
