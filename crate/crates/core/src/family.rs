//! Named ortholattice families used as fixtures and by `gen`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::lattice::{Lattice, OrthoLattice};

/// Largest `k` accepted for `boolean k` (2^k elements).
pub const MAX_BOOLEAN_RANK: usize = 10;
/// Largest `k` accepted for `mo k` (2k + 2 elements).
pub const MAX_MO_RANK: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("unknown lattice family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters for `{family}`: {reason}")]
    BadParams { family: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Boolean algebra `2^k` with set complement.
    Boolean(usize),
    /// Height-two lattice with `2k` atoms `±1..±k`, `z′ = −z`.
    Mo(usize),
    /// The six-element non-orthomodular ortholattice
    /// `0 < a < b < 1`, `0 < b′ < a′ < 1`.
    Benzene,
    /// The two-element chain.
    TwoChain,
}

impl Family {
    /// Parses a family name with its numeric parameters, e.g.
    /// `("mo", [3])` or `("benzene", [])`.
    pub fn parse(name: &str, params: &[usize]) -> Result<Family, FamilyError> {
        let bad = |reason: &str| FamilyError::BadParams {
            family: name.to_string(),
            reason: reason.to_string(),
        };
        let rank = |max: usize| match params {
            [k] if (1..=max).contains(k) => Ok(*k),
            [_] => Err(bad(&format!("rank must lie in 1..={max}"))),
            _ => Err(bad("expects exactly one rank parameter")),
        };
        match name {
            "boolean" => rank(MAX_BOOLEAN_RANK).map(Family::Boolean),
            "mo" => rank(MAX_MO_RANK).map(Family::Mo),
            "benzene" | "o6" | "two_chain" | "2" if !params.is_empty() => Err(bad("takes no parameters")),
            "benzene" | "o6" => Ok(Family::Benzene),
            "two_chain" | "2" => Ok(Family::TwoChain),
            other => Err(FamilyError::UnknownFamily(other.to_string())),
        }
    }

    pub fn generate(&self) -> OrthoLattice {
        match *self {
            Family::Boolean(k) => boolean(k),
            Family::Mo(k) => mo(k),
            Family::Benzene => benzene(),
            Family::TwoChain => {
                let l = Lattice::build(&["0", "1"], &[("0", "1")]).expect("chain");
                OrthoLattice::attach_indices(l, &[(0, 1)]).expect("chain ortho")
            }
        }
    }
}

fn boolean(k: usize) -> OrthoLattice {
    let n = 1usize << k;
    let full = n - 1;
    let names: Vec<String> = (0..n)
        .map(|m| match m {
            0 => "0".to_string(),
            m if m == full => "1".to_string(),
            m => (0..k).filter(|i| m >> i & 1 == 1).map(|i| format!("c{}", i + 1)).collect(),
        })
        .collect();
    let up = (0..n).map(|a| BitSet::from_predicate(n, |b| a & !b == 0)).collect();
    let l = Lattice::from_up_sets(names, up).expect("boolean lattice");
    OrthoLattice::new(l, (0..n).map(|m| full ^ m).collect()).expect("boolean complement")
}

fn mo(k: usize) -> OrthoLattice {
    let n = 2 * k + 2;
    let mut names = Vec::with_capacity(n);
    names.push("0".to_string());
    for j in 1..=k {
        names.push(format!("+{j}"));
        names.push(format!("-{j}"));
    }
    names.push("1".to_string());
    let covers: Vec<(usize, usize)> = (1..=2 * k).flat_map(|a| [(0, a), (a, n - 1)]).collect();
    let l = Lattice::from_index_covers(names, &covers).expect("mo lattice");
    let mut ortho: Vec<usize> = (0..n).collect();
    ortho.swap(0, n - 1);
    for j in 0..k {
        ortho.swap(2 * j + 1, 2 * j + 2);
    }
    OrthoLattice::new(l, ortho).expect("mo ortho")
}

fn benzene() -> OrthoLattice {
    let l = Lattice::build(
        &["0", "a", "b", "b'", "a'", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")],
    )
    .expect("benzene lattice");
    OrthoLattice::attach(l, &[("a", "a'"), ("b", "b'")]).expect("benzene ortho")
}

/// The lattice of an intersection-closed family of subsets of `0..universe`.
///
/// The generators are closed under intersection, and the empty and the full
/// set are added, so the result always has distinct bounds. Elements are
/// ordered by inclusion and listed by size, then bit-string; labels are the
/// members, e.g. `{0,2}`.
pub fn closure_system_lattice(universe: usize, generators: &[BitSet]) -> Lattice {
    let mut sets: Vec<BitSet> = vec![BitSet::new(universe), BitSet::full(universe)];
    for g in generators {
        let fresh: Vec<BitSet> = sets.iter().map(|s| s.intersection(g)).chain([g.clone()]).collect();
        for f in fresh {
            if !sets.contains(&f) {
                sets.push(f);
            }
        }
    }
    sets.sort_by(|a, b| (a.count(), a).cmp(&(b.count(), b)));
    let names = sets
        .iter()
        .map(|s| {
            let members: Vec<String> = s.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let up = sets.iter().map(|a| BitSet::from_predicate(sets.len(), |j| a.is_subset(&sets[j]))).collect();
    Lattice::from_up_sets(names, up).expect("intersection-closed families with bounds are lattices")
}
