//! Finite digraphs with an optional `g`-map, the polar Galois connection of
//! the complement context, and finite topologies given by closed subbases.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;

/// A finite digraph `(V, E)`, optionally carrying a self-map `g`.
///
/// Both `xE` (out-neighbourhoods) and `Ex` (in-neighbourhoods) are kept so
/// every neighbourhood comparison is a single bitset operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    out: Vec<BitSet>,
    inn: Vec<BitSet>,
    g: Option<Vec<usize>>,
}

impl Digraph {
    /// Edgeless digraph on the given vertex labels.
    pub fn new(labels: Vec<String>) -> Self {
        let n = labels.len();
        Digraph {
            labels,
            out: (0..n).map(|_| BitSet::new(n)).collect(),
            inn: (0..n).map(|_| BitSet::new(n)).collect(),
            g: None,
        }
    }

    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let mut d = Self::new(labels);
        for &(x, y) in edges {
            d.set_edge(x, y, true);
        }
        d
    }

    /// Builds a digraph from a relation predicate `(x, y) ∈ E`.
    pub fn from_fn(labels: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let out: Vec<BitSet> = (0..n).map(|x| BitSet::from_predicate(n, |y| rel(x, y))).collect();
        let inn = (0..n).map(|y| BitSet::from_predicate(n, |x| out[x].contains(y))).collect();
        Digraph { labels, out, inn, g: None }
    }

    /// Attaches a total self-map `g`. It need not be a permutation; the
    /// axiom checks report that.
    pub fn with_g(mut self, g: Vec<usize>) -> Self {
        assert_eq!(g.len(), self.len(), "g must be total");
        assert!(g.iter().all(|&y| y < self.len()), "g maps outside the vertex set");
        self.g = Some(g);
        self
    }

    pub fn without_g(mut self) -> Self {
        self.g = None;
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> core::ops::Range<usize> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.out[x].contains(y)
    }

    pub fn set_edge(&mut self, x: usize, y: usize, present: bool) {
        self.out[x].set(y, present);
        self.inn[y].set(x, present);
    }

    /// `xE = { y : (x, y) ∈ E }`
    pub fn out_set(&self, x: usize) -> &BitSet {
        &self.out[x]
    }

    /// `Ex = { y : (y, x) ∈ E }`
    pub fn in_set(&self, x: usize) -> &BitSet {
        &self.inn[x]
    }

    pub fn g(&self) -> Option<&[usize]> {
        self.g.as_deref()
    }

    pub fn set_g(&mut self, x: usize, y: usize) {
        let g = self.g.as_mut().expect("digraph has no g-map");
        g[x] = y;
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BitSet::count).sum()
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices()
            .flat_map(|x| self.out[x].iter().map(move |y| (x, y)))
            .collect()
    }

    pub fn is_reflexive(&self) -> bool {
        self.vertices().all(|x| self.has_edge(x, x))
    }

    /// The same digraph with every loop added; `g` is kept.
    pub fn reflexive_closure(&self) -> Digraph {
        let mut d = self.clone();
        for x in self.vertices() {
            d.set_edge(x, x, true);
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `E∁▷(Y) = { x : ∀y ∈ Y, (y, x) ∉ E }`
    Right,
    /// `E∁◁(Y) = { z : ∀y ∈ Y, (z, y) ∉ E }`
    Left,
}

/// Polar of `y` in the context `(V, V, E∁)`.
pub fn polar(g: &Digraph, y: &BitSet, side: Side) -> BitSet {
    let mut hit = BitSet::new(g.len());
    for v in y {
        hit.union_with(match side {
            Side::Right => g.out_set(v),
            Side::Left => g.in_set(v),
        });
    }
    hit.complement()
}

pub fn polar_right(g: &Digraph, y: &BitSet) -> BitSet {
    polar(g, y, Side::Right)
}

pub fn polar_left(g: &Digraph, y: &BitSet) -> BitSet {
    polar(g, y, Side::Left)
}

/// A Galois-closed pair: `intent = E∁▷(extent)`, `extent = E∁◁(intent)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConceptPair {
    pub extent: BitSet,
    pub intent: BitSet,
}

/// All concepts of the complement context, ordered by extent size and then
/// by extent bit-string.
///
/// Extents are exactly the intersections of the single-vertex extents
/// `E∁◁({v})`, so the family is grown by closing under intersection.
pub fn concept_pairs(g: &Digraph) -> Vec<ConceptPair> {
    let n = g.len();
    let mut extents: BTreeSet<BitSet> = BTreeSet::new();
    extents.insert(BitSet::full(n));
    for v in g.vertices() {
        let col = polar_left(g, &BitSet::singleton(n, v));
        let fresh: Vec<BitSet> = extents
            .iter()
            .map(|e| e.intersection(&col))
            .filter(|e| !extents.contains(e))
            .collect();
        extents.extend(fresh);
    }
    let mut out: Vec<ConceptPair> = extents
        .into_iter()
        .map(|extent| {
            let intent = polar_right(g, &extent);
            ConceptPair { extent, intent }
        })
        .collect();
    out.sort_by(|a, b| (a.extent.count(), &a.extent).cmp(&(b.extent.count(), &b.extent)));
    out
}

/// A topology on a finite vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Topology {
    /// Every subset is closed. The default for abstract digraph input.
    Discrete,
    /// Topology whose closed sets are generated by the given subbasis
    /// (finite unions, then arbitrary intersections).
    ClosedSubbasis(Vec<BitSet>),
}

impl Topology {
    /// Closedness in a finite space: `c` is closed iff every outside point
    /// `z` can be separated from every inside point `x` by a subbasic closed
    /// set containing `x` and missing `z`.
    pub fn is_closed(&self, c: &BitSet) -> bool {
        match self {
            Topology::Discrete => true,
            Topology::ClosedSubbasis(sub) => is_closed_in(sub, c),
        }
    }

    /// The subbasis, with singletons standing in for the discrete case.
    pub fn subbasis(&self, n: usize) -> Vec<BitSet> {
        match self {
            Topology::Discrete => (0..n).map(|x| BitSet::singleton(n, x)).collect(),
            Topology::ClosedSubbasis(sub) => sub.clone(),
        }
    }
}

/// `c` closed in the topology generated by the closed subbasis `sub`.
pub fn is_closed_in(sub: &[BitSet], c: &BitSet) -> bool {
    let outside = c.complement();
    c.iter().all(|x| {
        // subbasics through x; their intersection must avoid every outside z
        let mut meet = BitSet::full(c.universe());
        for s in sub.iter().filter(|s| s.contains(x)) {
            meet.intersect_with(s);
        }
        !meet.intersects(&outside)
    })
}
