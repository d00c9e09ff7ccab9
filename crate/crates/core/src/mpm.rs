//! Maximal partial `E`-preserving maps into the two-element chain.
//!
//! Every abstract digraph is taken with the discrete topology here, so any
//! domain is closed and continuity is automatic. On duals of finite lattices
//! this is no restriction: those spaces are finite and T1.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::bitset::BitSet;
use crate::digraph::{concept_pairs, Digraph};
use crate::lattice::{Lattice, LatticeError, OrthoLattice};

/// Largest digraph the `3^n` brute-force scan accepts.
pub const BRUTE_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MpmError {
    #[error("digraph has {0} vertices; the brute-force scan handles at most {BRUTE_MAX_VERTICES}")]
    TooLarge(usize),
    #[error("maximal partial maps do not form a lattice: {0}")]
    Lattice(#[from] LatticeError),
    #[error("digraph has no g-map")]
    MissingG,
    #[error("¬ of map {index} is not a maximal partial map: {reason}")]
    NegNotMpm { index: usize, reason: MpmFailure },
}

/// A partial map into `{0, 1}` stored as its two preimages.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialTwoMap {
    pub one: BitSet,
    pub zero: BitSet,
}

impl PartialTwoMap {
    pub fn new(one: BitSet, zero: BitSet) -> Self {
        PartialTwoMap { one, zero }
    }

    pub fn value(&self, x: usize) -> Option<bool> {
        if self.one.contains(x) {
            Some(true)
        } else if self.zero.contains(x) {
            Some(false)
        } else {
            None
        }
    }

    pub fn domain(&self) -> BitSet {
        self.one.union(&self.zero)
    }

    fn key(&self) -> (usize, &BitSet) {
        (self.one.count(), &self.one)
    }

    /// Canonical order: by `|one|`, then by the bit-string of `one`.
    pub fn canonical_cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.key().cmp(&other.key()).then_with(|| self.zero.cmp(&other.zero))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MpmFailure {
    #[error("vertex {0} is sent to both 0 and 1")]
    Overlap(usize),
    #[error("edge ({0}, {1}) goes from 1 to 0")]
    NotPreserving(usize, usize),
    #[error("undefined vertex {vertex} can be sent to {}", u8::from(*value))]
    Extendable { vertex: usize, value: bool },
}

/// `x ↦ 1` would break preservation: some edge leaves `x` into the 0-set.
fn one_blocked(g: &Digraph, p: &PartialTwoMap, x: usize) -> bool {
    g.out_set(x).intersects(&p.zero)
}

/// `x ↦ 0` would break preservation: some edge enters `x` from the 1-set.
fn zero_blocked(g: &Digraph, p: &PartialTwoMap, x: usize) -> bool {
    g.in_set(x).intersects(&p.one)
}

/// Checks that `p` preserves `E` and that no single undefined vertex can be
/// added. Extending by one vertex at a time is enough: any preserving
/// extension restricts to a preserving one-vertex extension.
pub fn is_mpm(g: &Digraph, p: &PartialTwoMap) -> Result<(), MpmFailure> {
    if let Some(x) = p.one.intersection(&p.zero).first() {
        return Err(MpmFailure::Overlap(x));
    }
    for x in &p.one {
        if let Some(y) = g.out_set(x).intersection(&p.zero).first() {
            return Err(MpmFailure::NotPreserving(x, y));
        }
    }
    for z in p.domain().complement().iter() {
        if !one_blocked(g, p, z) {
            return Err(MpmFailure::Extendable { vertex: z, value: true });
        }
        if !zero_blocked(g, p, z) {
            return Err(MpmFailure::Extendable { vertex: z, value: false });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Candidates from the closed extents of the complement context,
    /// filtered by [`is_mpm`].
    Galois,
    /// Every partial map, filtered by [`is_mpm`].
    Brute,
}

/// All MPMs of `g` in canonical order.
pub fn enumerate_mpms(g: &Digraph, method: Method) -> Result<Vec<PartialTwoMap>, MpmError> {
    let mut out = match method {
        Method::Galois => galois_candidates(g).into_iter().filter(|p| is_mpm(g, p).is_ok()).collect(),
        Method::Brute => brute(g)?,
    };
    out.sort_by(PartialTwoMap::canonical_cmp);
    Ok(out)
}

/// Concept pairs read as maps: extent to 1, intent to 0.
///
/// On a reflexive digraph every MPM has this shape, since its 0-set is the
/// right polar of its 1-set and vice versa. Loops neither break preservation
/// nor block an extension, so a digraph has the same MPMs as its reflexive
/// closure, and the concepts are taken there.
pub fn galois_candidates(g: &Digraph) -> Vec<PartialTwoMap> {
    let closed;
    let g = if g.is_reflexive() {
        g
    } else {
        closed = g.reflexive_closure();
        &closed
    };
    concept_pairs(g)
        .into_iter()
        .map(|c| PartialTwoMap::new(c.extent, c.intent))
        .collect()
}

fn brute(g: &Digraph) -> Result<Vec<PartialTwoMap>, MpmError> {
    let n = g.len();
    if n > BRUTE_MAX_VERTICES {
        return Err(MpmError::TooLarge(n));
    }
    let mut out = Vec::new();
    // base-3 digits: 0 undefined, 1 maps to 1, 2 maps to 0
    let mut digits = vec![0u8; n];
    loop {
        let p = PartialTwoMap::new(
            BitSet::from_predicate(n, |i| digits[i] == 1),
            BitSet::from_predicate(n, |i| digits[i] == 2),
        );
        if is_mpm(g, &p).is_ok() {
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// `¬φ(x) = 1` iff `φ(g(x)) = 0`, and `¬φ(x) = 0` iff `φ(g(x)) = 1`.
pub fn neg(gmap: &[usize], p: &PartialTwoMap) -> PartialTwoMap {
    let n = gmap.len();
    PartialTwoMap::new(p.zero.preimage(n, |x| gmap[x]), p.one.preimage(n, |x| gmap[x]))
}

/// MPMs ordered by inclusion of their 1-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpmLattice {
    mpms: Vec<PartialTwoMap>,
    lattice: Lattice,
}

impl MpmLattice {
    pub fn mpms(&self) -> &[PartialTwoMap] {
        &self.mpms
    }

    /// Elements are named `m0, m1, …` in canonical order.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    /// Index of a map in canonical order.
    pub fn index_of(&self, p: &PartialTwoMap) -> Option<usize> {
        self.mpms.binary_search_by(|q| q.canonical_cmp(p)).ok()
    }
}

/// Builds the bounded lattice of MPMs. Meets and joins come from the order;
/// a missing one means the digraph is not the dual of a lattice.
pub fn mpm_lattice(g: &Digraph) -> Result<MpmLattice, MpmError> {
    let mpms = enumerate_mpms(g, Method::Galois)?;
    lattice_of(mpms)
}

pub fn lattice_of(mpms: Vec<PartialTwoMap>) -> Result<MpmLattice, MpmError> {
    let n = mpms.len();
    let names: Vec<String> = (0..n).map(|i| format!("m{i}")).collect();
    let up = (0..n)
        .map(|i| BitSet::from_predicate(n, |j| mpms[i].one.is_subset(&mpms[j].one)))
        .collect();
    let lattice = Lattice::from_up_sets(names, up)?;
    Ok(MpmLattice { mpms, lattice })
}

/// `¬` as a permutation of the canonical MPM indices.
pub fn neg_map(g: &Digraph, ml: &MpmLattice) -> Result<Vec<usize>, MpmError> {
    let gmap = g.g().ok_or(MpmError::MissingG)?;
    ml.mpms()
        .iter()
        .enumerate()
        .map(|(index, p)| {
            let q = neg(gmap, p);
            is_mpm(g, &q).map_err(|reason| MpmError::NegNotMpm { index, reason })?;
            Ok(ml.index_of(&q).expect("every MPM is enumerated"))
        })
        .collect()
}

/// The ortholattice of MPMs with `¬`, validated as an ortholattice.
pub fn dual_ortholattice(g: &Digraph) -> Result<(MpmLattice, OrthoLattice), MpmError> {
    let ml = mpm_lattice(g)?;
    let negs = neg_map(g, &ml)?;
    let ol = OrthoLattice::new(ml.lattice().clone(), negs)?;
    Ok((ml, ol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::build_dual;
    use crate::family::Family;
    use crate::lattice::product;
    use alloc::string::ToString;

    fn loop1() -> Digraph {
        Digraph::from_edges(vec!["v".to_string()], &[(0, 0)]).with_g(vec![0])
    }

    #[test]
    fn single_loop() {
        let g = loop1();
        assert_eq!(
            is_mpm(&g, &PartialTwoMap::new(BitSet::new(1), BitSet::new(1))),
            Err(MpmFailure::Extendable { vertex: 0, value: true })
        );
        assert!(is_mpm(&g, &PartialTwoMap::new(BitSet::full(1), BitSet::new(1))).is_ok());
        let ms = enumerate_mpms(&g, Method::Galois).unwrap();
        assert_eq!(
            ms,
            vec![
                PartialTwoMap::new(BitSet::new(1), BitSet::full(1)),
                PartialTwoMap::new(BitSet::full(1), BitSet::new(1)),
            ]
        );
        assert_eq!(enumerate_mpms(&g, Method::Brute).unwrap(), ms);
        let (_, ol) = dual_ortholattice(&g).unwrap();
        assert_eq!(ol.len(), 2);
        assert_eq!(ol.ortho(ol.bottom()), ol.top());
    }

    #[test]
    fn neg_swaps_on_a_loop() {
        let p = PartialTwoMap::new(BitSet::full(1), BitSet::new(1));
        assert_eq!(neg(&[0], &p), PartialTwoMap::new(BitSet::new(1), BitSet::full(1)));
    }

    #[test]
    fn boolean_square_dual() {
        let d = build_dual(&Family::Boolean(2).generate()).unwrap();
        let ms = enumerate_mpms(d.graph(), Method::Brute).unwrap();
        assert_eq!(ms.len(), 4);
        assert!(ms.iter().all(|p| p.domain().is_full()));
        assert_eq!(enumerate_mpms(d.graph(), Method::Galois).unwrap(), ms);
        let p = PartialTwoMap::new(BitSet::singleton(2, 0), BitSet::singleton(2, 1));
        assert_eq!(neg(d.graph().g().unwrap(), &p), PartialTwoMap::new(BitSet::singleton(2, 1), BitSet::singleton(2, 0)));
    }

    #[test]
    fn counts_match_lattice_sizes() {
        for ol in [Family::Benzene.generate(), Family::Mo(2).generate(), Family::Mo(3).generate()] {
            let d = build_dual(&ol).unwrap();
            let (ml, dual) = dual_ortholattice(d.graph()).unwrap();
            assert_eq!(ml.mpms().len(), ol.len());
            assert_eq!(dual.len(), ol.len());
        }
    }

    #[test]
    fn fom2_has_96_mpms() {
        let fom2 = product(&Family::Mo(2).generate(), &Family::Boolean(4).generate());
        let d = build_dual(&fom2).unwrap();
        assert_eq!(enumerate_mpms(d.graph(), Method::Galois).unwrap().len(), 96);
    }

    #[test]
    fn brute_refuses_large_graphs() {
        let g = Digraph::from_fn((0..13).map(|i| i.to_string()).collect(), |x, y| x == y);
        assert_eq!(enumerate_mpms(&g, Method::Brute), Err(MpmError::TooLarge(13)));
    }

    #[test]
    fn missing_g() {
        let g = Digraph::from_edges(vec!["v".to_string()], &[(0, 0)]);
        assert_eq!(dual_ortholattice(&g).unwrap_err(), MpmError::MissingG);
    }

    #[test]
    fn broken_g_is_rejected() {
        // a three-element chain of maps; the constant g collapses two of them under ¬
        let g = Digraph::from_edges(vec!["x".into(), "y".into()], &[(0, 0), (1, 1), (0, 1)]).with_g(vec![0, 0]);
        assert!(matches!(dual_ortholattice(&g), Err(MpmError::Lattice(LatticeError::NotInvolutive(_)))));
    }
}
