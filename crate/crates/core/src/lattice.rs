//! Finite bounded lattices and ortholattices.
//!
//! Elements are dense indices `0..n` in the order the labels were given.
//! The order relation is stored as up-sets and down-sets; meet and join are
//! tabulated once at construction, so every query afterwards is O(1).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("not a partial order: `{a}` and `{b}` lie on a cycle of covers")]
    NotAPoset { a: String, b: String },
    #[error("not a lattice: `{a}` and `{b}` have no {kind}")]
    NotALattice { a: String, b: String, kind: BoundKind },
    #[error("missing bounds: {0}")]
    NoBounds(String),
    #[error("orthocomplement of `{0}` is not defined")]
    OrthoUndefined(String),
    #[error("orthocomplement is not an involution at `{0}`")]
    NotInvolutive(String),
    #[error("complement law fails at `{0}`")]
    ComplementLawFails(String),
    #[error("De Morgan law fails at (`{0}`, `{1}`)")]
    DeMorganFails(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl core::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            BoundKind::Meet => "greatest lower bound",
            BoundKind::Join => "least upper bound",
        })
    }
}

/// A finite bounded lattice with at least two elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    /// `up[a] = { b : a ≤ b }`
    up: Vec<BitSet>,
    /// `down[a] = { b : b ≤ a }`
    down: Vec<BitSet>,
    meet: Vec<usize>,
    join: Vec<usize>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Builds a lattice from labels and `(a, b)` pairs meaning `a < b`.
    ///
    /// The pairs need not be exact covers; the order is their
    /// reflexive-transitive closure.
    pub fn build<S: AsRef<str>>(names: &[S], covers: &[(S, S)]) -> Result<Self, LatticeError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(LatticeError::DuplicateLabel(a.clone()));
            }
        }
        let lookup = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| LatticeError::UnknownLabel(s.to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_index_covers(names, &pairs)
    }

    /// Same as [`Lattice::build`] with covers given as element indices.
    pub fn from_index_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = names.len();
        let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::singleton(n, i)).collect();
        for &(a, b) in covers {
            if a == b {
                return Err(LatticeError::NotAPoset {
                    a: names[a].clone(),
                    b: names[b].clone(),
                });
            }
            up[a].insert(b);
        }
        // Warshall closure on rows
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_sets(names, up)
    }

    /// Builds a lattice from a complete order given as up-sets
    /// (`up[a] = { b : a ≤ b }`), validating that it is a partial order.
    pub fn from_up_sets(names: Vec<String>, up: Vec<BitSet>) -> Result<Self, LatticeError> {
        let n = names.len();
        assert_eq!(up.len(), n, "one up-set per element");
        for (a, row) in up.iter().enumerate() {
            assert_eq!(row.universe(), n);
            if !row.contains(a) {
                return Err(LatticeError::NotAPoset {
                    a: names[a].clone(),
                    b: names[a].clone(),
                });
            }
            for b in row.iter() {
                if b != a && up[b].contains(a) {
                    return Err(LatticeError::NotAPoset {
                        a: names[a].clone(),
                        b: names[b].clone(),
                    });
                }
                if !up[b].is_subset(row) {
                    // not transitive: close it rather than guess intent
                    return Self::from_index_covers(names, &order_pairs(&up));
                }
            }
        }
        let down: Vec<BitSet> = (0..n)
            .map(|a| BitSet::from_predicate(n, |b| up[b].contains(a)))
            .collect();

        if n < 2 {
            return Err(LatticeError::NoBounds("a bounded lattice needs distinct 0 and 1".to_string()));
        }
        let bottom = (0..n)
            .find(|&a| up[a].is_full())
            .ok_or_else(|| LatticeError::NoBounds("no least element".to_string()))?;
        let top = (0..n)
            .find(|&a| down[a].is_full())
            .ok_or_else(|| LatticeError::NoBounds("no greatest element".to_string()))?;

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = down[a].intersection(&down[b]);
                let m = lower.iter().find(|&m| down[m] == lower).ok_or_else(|| LatticeError::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    kind: BoundKind::Meet,
                })?;
                let upper = up[a].intersection(&up[b]);
                let j = upper.iter().find(|&j| up[j] == upper).ok_or_else(|| LatticeError::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    kind: BoundKind::Join,
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }

        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in up[a].iter() {
                if a != b && up[a].intersection(&down[b]).count() == 2 {
                    upper_covers[a].push(b);
                    lower_covers[b].push(a);
                }
            }
        }

        Ok(Lattice {
            names,
            up,
            down,
            meet,
            join,
            lower_covers,
            upper_covers,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: a bounded lattice here has at least two elements.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `↑a`
    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    /// `↓a`
    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    /// All covering pairs `(a, b)` with `a ⋖ b`, ordered by `a` then `b`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.elements()
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.upper_covers[self.bottom].clone()
    }
}

fn order_pairs(up: &[BitSet]) -> Vec<(usize, usize)> {
    up.iter()
        .enumerate()
        .flat_map(|(a, row)| row.iter().filter(move |&b| b != a).map(move |b| (a, b)))
        .collect()
}

/// A lattice together with an orthocomplementation `a ↦ a′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoLattice {
    lattice: Lattice,
    ortho: Vec<usize>,
}

impl OrthoLattice {
    /// Validates `ortho` as an orthocomplementation of `lattice`.
    ///
    /// Checks involution, then `a ∧ a′ = 0` and `a ∨ a′ = 1` for every `a`,
    /// then both De Morgan laws, reporting the first failure in index order.
    pub fn new(lattice: Lattice, ortho: Vec<usize>) -> Result<Self, LatticeError> {
        let l = &lattice;
        assert_eq!(ortho.len(), l.len());
        for a in l.elements() {
            if ortho[ortho[a]] != a {
                return Err(LatticeError::NotInvolutive(l.name(a).to_string()));
            }
        }
        for a in l.elements() {
            if l.meet(a, ortho[a]) != l.bottom() || l.join(a, ortho[a]) != l.top() {
                return Err(LatticeError::ComplementLawFails(l.name(a).to_string()));
            }
        }
        for a in l.elements() {
            for b in l.elements() {
                if ortho[l.meet(a, b)] != l.join(ortho[a], ortho[b]) || ortho[l.join(a, b)] != l.meet(ortho[a], ortho[b]) {
                    return Err(LatticeError::DeMorganFails(l.name(a).to_string(), l.name(b).to_string()));
                }
            }
        }
        Ok(OrthoLattice { lattice, ortho })
    }

    /// Attaches an orthocomplement given as label pairs `(a, b)` meaning
    /// `a′ = b`. Each pair is applied in both directions. When the bounds
    /// are left out, `0′ = 1` and `1′ = 0` are filled in, as every
    /// ortholattice forces them.
    pub fn attach<S: AsRef<str>>(lattice: Lattice, pairs: &[(S, S)]) -> Result<Self, LatticeError> {
        let mut idx = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let find = |s: &str| lattice.index_of(s).ok_or_else(|| LatticeError::UnknownLabel(s.to_string()));
            idx.push((find(a.as_ref())?, find(b.as_ref())?));
        }
        Self::attach_indices(lattice, &idx)
    }

    pub fn attach_indices(lattice: Lattice, pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = lattice.len();
        let mut ortho: Vec<Option<usize>> = vec![None; n];
        let assign = |a: usize, b: usize, ortho: &mut Vec<Option<usize>>| match ortho[a] {
            Some(prev) if prev != b => Err(LatticeError::NotInvolutive(lattice.name(a).to_string())),
            _ => {
                ortho[a] = Some(b);
                Ok(())
            }
        };
        for &(a, b) in pairs {
            assign(a, b, &mut ortho)?;
            assign(b, a, &mut ortho)?;
        }
        let (bot, top) = (lattice.bottom(), lattice.top());
        if ortho[bot].is_none() && ortho[top].is_none() {
            ortho[bot] = Some(top);
            ortho[top] = Some(bot);
        }
        let ortho = ortho
            .iter()
            .enumerate()
            .map(|(a, o)| o.ok_or_else(|| LatticeError::OrthoUndefined(lattice.name(a).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(lattice, ortho)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    #[inline]
    pub fn ortho(&self, a: usize) -> usize {
        self.ortho[a]
    }

    pub fn ortho_map(&self) -> &[usize] {
        &self.ortho
    }

    /// Ortho pairs listed once each, `(a, a′)` with `a ≤ a′` by index.
    pub fn ortho_pairs(&self) -> Vec<(usize, usize)> {
        self.lattice
            .elements()
            .filter(|&a| a <= self.ortho[a])
            .map(|a| (a, self.ortho[a]))
            .collect()
    }
}

impl Deref for OrthoLattice {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        &self.lattice
    }
}

/// Cartesian product with componentwise order.
///
/// Element `(x, y)` gets index `x * |b| + y` and label `(x,y)`.
pub fn product_lattice(a: &Lattice, b: &Lattice) -> Lattice {
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let names = (0..n).map(|i| format!("({},{})", a.name(i / nb), b.name(i % nb))).collect();
    let up = (0..n)
        .map(|i| BitSet::from_predicate(n, |j| a.leq(i / nb, j / nb) && b.leq(i % nb, j % nb)))
        .collect();
    Lattice::from_up_sets(names, up).expect("product of lattices is a lattice")
}

pub fn product(a: &OrthoLattice, b: &OrthoLattice) -> OrthoLattice {
    let nb = b.len();
    let lattice = product_lattice(a, b);
    let ortho = lattice.elements().map(|i| a.ortho(i / nb) * nb + b.ortho(i % nb)).collect();
    OrthoLattice::new(lattice, ortho).expect("product of ortholattices is an ortholattice")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    /// `a ≤ b ⟹ b = a ∨ (b ∧ a′)`
    Orthomodular,
    /// `a ≤ c ⟹ a ∨ (b ∧ c) = (a ∨ b) ∧ c`
    Modular,
    /// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`
    Distributive,
}

impl Law {
    pub const ALL: [Law; 3] = [Law::Orthomodular, Law::Modular, Law::Distributive];

    pub fn name(self) -> &'static str {
        match self {
            Law::Orthomodular => "orthomodular",
            Law::Modular => "modular",
            Law::Distributive => "distributive",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Law::Orthomodular => 2,
            Law::Modular | Law::Distributive => 3,
        }
    }

    /// Evaluates the law at one tuple; `true` means the tuple violates it.
    ///
    /// Panics if `t` has the wrong arity, or if the orthomodular law is
    /// requested without an orthocomplement.
    pub fn violated_at(self, l: &Lattice, ortho: Option<&[usize]>, t: &[usize]) -> bool {
        assert_eq!(t.len(), self.arity());
        match self {
            Law::Orthomodular => {
                let o = ortho.expect("orthomodular law needs an orthocomplement");
                let (a, b) = (t[0], t[1]);
                l.leq(a, b) && l.join(a, l.meet(b, o[a])) != b
            }
            Law::Modular => {
                let (a, b, c) = (t[0], t[1], t[2]);
                l.leq(a, c) && l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c)
            }
            Law::Distributive => {
                let (a, b, c) = (t[0], t[1], t[2]);
                l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    pub holds: bool,
    /// First violating tuple in lexicographic index order.
    pub witness: Option<Vec<usize>>,
}

impl LawReport {
    /// Re-evaluates the law at the stored witness. A passing report
    /// revalidates trivially.
    pub fn revalidate(&self, l: &Lattice, ortho: Option<&[usize]>) -> bool {
        match &self.witness {
            None => self.holds,
            Some(w) => !self.holds && self.law.violated_at(l, ortho, w),
        }
    }
}

fn scan_law(l: &Lattice, ortho: Option<&[usize]>, law: Law) -> LawReport {
    let n = l.len();
    let witness = match law.arity() {
        2 => (0..n)
            .flat_map(|a| (0..n).map(move |b| vec![a, b]))
            .find(|t| law.violated_at(l, ortho, t)),
        _ => (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| vec![a, b, c])))
            .find(|t| law.violated_at(l, ortho, t)),
    };
    LawReport {
        law,
        holds: witness.is_none(),
        witness,
    }
}

/// Exhaustive check of `law` over all element tuples.
pub fn check_law(ol: &OrthoLattice, law: Law) -> LawReport {
    scan_law(ol.lattice(), Some(ol.ortho_map()), law)
}

/// Law check on a plain lattice; `None` for the orthomodular law, which
/// needs an orthocomplement.
pub fn check_lattice_law(l: &Lattice, law: Law) -> Option<LawReport> {
    (law != Law::Orthomodular).then(|| scan_law(l, None, law))
}
