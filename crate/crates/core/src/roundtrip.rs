//! Evaluation maps and certificates for both representation theorems.
//!
//! Primal: a lattice `L` goes to its dual and back, and `a ↦ e_a` is checked
//! to be an isomorphism onto the lattice of MPMs. Dual: a digraph `X` goes to
//! its MPM lattice and back, and `x ↦ ε_x` is checked to be an isomorphism
//! onto the dual of that lattice. The candidate map is always the canonical
//! one; no isomorphism search is done.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::digraph::{Digraph, Topology};
use crate::dual::{build_dual, build_lattice_dual, DualError, DualSpace, Mdfip};
use crate::lattice::{Lattice, LatticeError, OrthoLattice};
use crate::mpm::{enumerate_mpms, is_mpm, lattice_of, neg_map, Method, MpmError, MpmLattice, PartialTwoMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RoundtripError {
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Mpm(#[from] MpmError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("evaluation at vertex {vertex} is not a maximal partial homomorphism of the MPM lattice")]
    NotMph { vertex: usize },
    #[error("isomorphism check `{check}` fails at {witness:?}")]
    IsoFails { check: &'static str, witness: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// elements to MPMs
    Primal,
    /// vertices to points of the reconstructed dual
    Dual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCertificate {
    pub direction: Direction,
    /// Primal: element index to canonical MPM index. Dual: vertex index to
    /// vertex index of the reconstructed dual.
    pub mapping: Vec<usize>,
    /// Names of the checks that passed, in the order they ran.
    pub verified: Vec<&'static str>,
}

fn fail<T>(check: &'static str, witness: Vec<usize>) -> Result<T, RoundtripError> {
    Err(RoundtripError::IsoFails { check, witness })
}

/// `e_a`: 1 on `W_a`, 0 on `V_a`, undefined elsewhere.
pub fn evaluation_map(d: &DualSpace, a: usize) -> PartialTwoMap {
    PartialTwoMap::new(d.w_set(a).clone(), d.v_set(a).clone())
}

/// Everything the primal checks look at.
struct Primal {
    dual: DualSpace,
    ml: MpmLattice,
    neg: Option<Vec<usize>>,
}

fn primal_setup(l: &Lattice, ortho: Option<&[usize]>) -> Result<Primal, RoundtripError> {
    let dual = match ortho {
        Some(o) => build_dual(&OrthoLattice::new(l.clone(), o.to_vec())?)?,
        None => build_lattice_dual(l),
    };
    let ml = lattice_of(enumerate_mpms(dual.graph(), Method::Galois)?)?;
    let neg = match ortho {
        Some(_) => Some(neg_map(dual.graph(), &ml)?),
        None => None,
    };
    Ok(Primal { dual, ml, neg })
}

fn primal_mapping(p: &Primal) -> Result<Vec<usize>, RoundtripError> {
    p.dual
        .lattice()
        .elements()
        .map(|a| {
            let e = evaluation_map(&p.dual, a);
            if is_mpm(p.dual.graph(), &e).is_err() {
                return fail("e_a is an MPM", vec![a]);
            }
            Ok(p.ml.index_of(&e).expect("MPMs are enumerated exhaustively"))
        })
        .collect()
}

fn verify_primal(l: &Lattice, ortho: Option<&[usize]>, p: &Primal, m: &[usize]) -> Result<Vec<&'static str>, RoundtripError> {
    let ml = p.ml.lattice();
    let n = l.len();
    let mut done = Vec::new();
    if m.len() != n {
        return fail("total", vec![m.len()]);
    }
    for a in 0..n {
        if !is_mpm(p.dual.graph(), &evaluation_map(&p.dual, a)).is_ok() {
            return fail("e_a is an MPM", vec![a]);
        }
    }
    done.push("e_a is an MPM");
    for a in 0..n {
        for b in a + 1..n {
            if m[a] == m[b] {
                return fail("injective", vec![a, b]);
            }
        }
    }
    done.push("injective");
    let hit = BitSet::from_indices(ml.len(), m.iter().copied());
    if let Some(x) = hit.complement().first() {
        return fail("surjective", vec![x]);
    }
    done.push("surjective");
    for a in 0..n {
        for b in 0..n {
            if l.leq(a, b) != ml.leq(m[a], m[b]) {
                return fail("order", vec![a, b]);
            }
            if m[l.meet(a, b)] != ml.meet(m[a], m[b]) {
                return fail("meet", vec![a, b]);
            }
            if m[l.join(a, b)] != ml.join(m[a], m[b]) {
                return fail("join", vec![a, b]);
            }
        }
    }
    done.extend(["order", "meet", "join"]);
    if m[l.bottom()] != ml.bottom() {
        return fail("bottom", vec![l.bottom()]);
    }
    if m[l.top()] != ml.top() {
        return fail("top", vec![l.top()]);
    }
    done.extend(["bottom", "top"]);
    if let (Some(o), Some(neg)) = (ortho, &p.neg) {
        if let Some(a) = (0..n).find(|&a| m[o[a]] != neg[m[a]]) {
            return fail("ortho", vec![a]);
        }
        done.push("ortho");
    }
    Ok(done)
}

fn primal(l: &Lattice, ortho: Option<&[usize]>) -> Result<IsoCertificate, RoundtripError> {
    let p = primal_setup(l, ortho)?;
    let mapping = primal_mapping(&p)?;
    let verified = verify_primal(l, ortho, &p, &mapping)?;
    Ok(IsoCertificate {
        direction: Direction::Primal,
        mapping,
        verified,
    })
}

/// `a ↦ e_a` onto the MPMs of the dual, preserving order, meets, joins,
/// bounds and the orthocomplement.
pub fn check_primal_iso(ol: &OrthoLattice) -> Result<IsoCertificate, RoundtripError> {
    primal(ol.lattice(), Some(ol.ortho_map()))
}

/// The same without an orthocomplement.
pub fn check_lattice_primal_iso(l: &Lattice) -> Result<IsoCertificate, RoundtripError> {
    primal(l, None)
}

/// `ε_x: φ ↦ φ(x)` as a filter-ideal pair of the MPM lattice.
///
/// The 1-preimage must be a principal filter and the 0-preimage a principal
/// ideal, and together they must be maximal disjoint.
pub fn epsilon_map(ml: &MpmLattice, x: usize) -> Result<Mdfip, RoundtripError> {
    let l = ml.lattice();
    let n = l.len();
    let ones = BitSet::from_predicate(n, |i| ml.mpms()[i].one.contains(x));
    let zeros = BitSet::from_predicate(n, |i| ml.mpms()[i].zero.contains(x));
    let not_mph = RoundtripError::NotMph { vertex: x };
    let f = ones.iter().reduce(|a, b| l.meet(a, b)).ok_or(not_mph.clone())?;
    let i = zeros.iter().reduce(|a, b| l.join(a, b)).ok_or(not_mph.clone())?;
    let v = Mdfip::new(f, i);
    if l.up_set(f) != &ones || l.down_set(i) != &zeros || !v.is_valid(l) {
        return Err(not_mph);
    }
    Ok(v)
}

struct DualSide {
    ml: MpmLattice,
    back: DualSpace,
}

fn dual_setup(g: &Digraph) -> Result<DualSide, RoundtripError> {
    let ml = lattice_of(enumerate_mpms(g, Method::Galois)?)?;
    let back = match g.g() {
        Some(_) => {
            let neg = neg_map(g, &ml)?;
            build_dual(&OrthoLattice::new(ml.lattice().clone(), neg)?)?
        }
        None => build_lattice_dual(ml.lattice()),
    };
    Ok(DualSide { ml, back })
}

fn dual_mapping(g: &Digraph, d: &DualSide) -> Result<Vec<usize>, RoundtripError> {
    g.vertices()
        .map(|x| {
            let v = epsilon_map(&d.ml, x)?;
            Ok(d.back.vertex_index(v).expect("valid pairs are enumerated exhaustively"))
        })
        .collect()
}

fn is_discrete(t: &Topology, n: usize) -> Option<usize> {
    (0..n).find(|&x| !t.is_closed(&BitSet::singleton(n, x).complement()))
}

fn verify_dual(g: &Digraph, t: &Topology, d: &DualSide, m: &[usize]) -> Result<Vec<&'static str>, RoundtripError> {
    let n = g.len();
    let h = d.back.graph();
    let mut done = Vec::new();
    if m.len() != n {
        return fail("total", vec![m.len()]);
    }
    for x in 0..n {
        for y in x + 1..n {
            if m[x] == m[y] {
                return fail("injective", vec![x, y]);
            }
        }
    }
    done.push("injective");
    let hit = BitSet::from_indices(h.len(), m.iter().copied());
    if let Some(v) = hit.complement().first() {
        return fail("surjective", vec![v]);
    }
    done.push("surjective");
    for x in 0..n {
        for y in 0..n {
            if g.has_edge(x, y) != h.has_edge(m[x], m[y]) {
                return fail("edges", vec![x, y]);
            }
        }
    }
    done.push("edges");
    if let Some(x) = is_discrete(t, n) {
        return fail("topology", vec![x]);
    }
    if let Some(v) = is_discrete(&d.back.topology(), h.len()) {
        return fail("topology", vec![v]);
    }
    // ϑ⁻¹(W_φ) = φ⁻¹(1) and ϑ⁻¹(V_φ) = φ⁻¹(0)
    for (i, p) in d.ml.mpms().iter().enumerate() {
        if d.back.w_set(i).preimage(n, |x| m[x]) != p.one || d.back.v_set(i).preimage(n, |x| m[x]) != p.zero {
            return fail("topology", vec![i]);
        }
    }
    done.push("topology");
    if let (Some(gx), Some(gy)) = (g.g(), h.g()) {
        if let Some(x) = (0..n).find(|&x| m[gx[x]] != gy[m[x]]) {
            return fail("g-equivariance", vec![x]);
        }
        done.push("g-equivariance");
    }
    Ok(done)
}

/// `x ↦ ε_x` onto the dual of the MPM lattice: a bijection that preserves
/// and reflects edges, matches the topologies and commutes with `g`.
///
/// At finite scale the homeomorphism part is certified by both topologies
/// being discrete, plus the subbasis correspondence.
pub fn check_dual_iso(g: &Digraph, t: &Topology) -> Result<IsoCertificate, RoundtripError> {
    let d = dual_setup(g)?;
    let mapping = dual_mapping(g, &d)?;
    let verified = verify_dual(g, t, &d, &mapping)?;
    Ok(IsoCertificate {
        direction: Direction::Dual,
        mapping,
        verified,
    })
}

impl IsoCertificate {
    /// Re-runs the primal checks on the stored mapping.
    pub fn recheck_primal(&self, l: &Lattice, ortho: Option<&[usize]>) -> bool {
        self.direction == Direction::Primal
            && primal_setup(l, ortho)
                .and_then(|p| verify_primal(l, ortho, &p, &self.mapping))
                .is_ok_and(|v| v == self.verified)
    }

    /// Re-runs the dual checks on the stored mapping.
    pub fn recheck_dual(&self, g: &Digraph, t: &Topology) -> bool {
        self.direction == Direction::Dual
            && dual_setup(g)
                .and_then(|d| verify_dual(g, t, &d, &self.mapping))
                .is_ok_and(|v| v == self.verified)
    }
}
