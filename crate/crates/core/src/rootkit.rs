//! Root-system arithmetic for products of simple types.
//!
//! Every [`RootSystem`] is a concatenation of Bourbaki-numbered simple
//! components. Simple roots carry one global 0-based index; in text they are
//! written `a1 .. an`. Restricting to a subset of simple roots produces a new
//! standard system together with the map back to the parent indices.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{BitSet, MAX_INDEX};

pub type RootSet = BitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unknown Cartan type token `{0}`")]
    BadToken(String),
    #[error("type {kind}{rank} does not exist")]
    BadRank { kind: CartanType, rank: usize },
    #[error("root system of rank {0} exceeds the supported maximum of {MAX_INDEX}")]
    TooLarge(usize),
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("vector of length {got} does not match rank {rank}")]
    LengthMismatch { got: usize, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 4,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// One simple factor, occupying global indices `offset .. offset + rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub kind: CartanType,
    pub rank: usize,
    pub offset: usize,
}

impl Component {
    pub fn indices(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.rank
    }
}

/// An integer vector over the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn support(&self) -> RootSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// Nonzero `(index, coefficient)` terms in index order. Sorting vectors by
    /// this list is the canonical order used for spherical roots.
    pub fn terms(&self) -> Vec<(usize, i64)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect()
    }

    pub fn scaled(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Restrict to the given parent indices (`map[new] = old`).
    pub fn pull_back(&self, map: &[usize]) -> Self {
        LatticeVector(map.iter().map(|&old| self.0[old]).collect())
    }
}

/// Canonical comparison of spherical roots (see [`LatticeVector::terms`]).
pub fn canonical_cmp(a: &LatticeVector, b: &LatticeVector) -> std::cmp::Ordering {
    a.terms().cmp(&b.terms())
}

/// A Bourbaki reading of a connected set of simple roots: the recognised type
/// and the global indices listed in Bourbaki order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reading {
    pub kind: CartanType,
    pub rank: usize,
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystem {
    components: Vec<Component>,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    cartan: Vec<Vec<i64>>,
    /// Twice the Weyl-invariant inner product, short roots of squared length 1.
    gram2: Vec<Vec<i64>>,
    norms: Vec<i64>,
}

impl RootSystem {
    pub fn new(parts: &[(CartanType, usize)]) -> Result<Self, RootError> {
        let n: usize = parts.iter().map(|p| p.1).sum();
        if n > MAX_INDEX {
            return Err(RootError::TooLarge(n));
        }
        let mut components = Vec::with_capacity(parts.len());
        let mut norms = Vec::with_capacity(n);
        let mut gram2 = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for &(kind, rank) in parts {
            if !kind.valid_rank(rank) {
                return Err(RootError::BadRank { kind, rank });
            }
            let (local_norms, edges) = standard_data(kind, rank);
            for (i, &nm) in local_norms.iter().enumerate() {
                gram2[offset + i][offset + i] = 2 * nm;
            }
            for (i, j, g) in edges {
                gram2[offset + i][offset + j] = g;
                gram2[offset + j][offset + i] = g;
            }
            norms.extend(local_norms);
            components.push(Component { kind, rank, offset });
            offset += rank;
        }
        let cartan = (0..n)
            .map(|i| (0..n).map(|j| gram2[i][j] / norms[i]).collect())
            .collect();
        Ok(RootSystem {
            components,
            cartan,
            gram2,
            norms,
        })
    }

    /// The trivial root system with no simple roots.
    pub fn empty() -> Self {
        RootSystem::new(&[]).expect("empty system")
    }

    /// Parses `B4`, `A1 A3`, `C2xC3` and similar type strings.
    pub fn parse(text: &str) -> Result<Self, RootError> {
        let mut parts = Vec::new();
        for token in text
            .split(|c: char| c.is_whitespace() || c == 'x' || c == '×' || c == '*')
            .filter(|t| !t.is_empty())
        {
            let mut chars = token.chars();
            let kind = chars
                .next()
                .and_then(CartanType::from_char)
                .ok_or_else(|| RootError::BadToken(token.to_string()))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| RootError::BadToken(token.to_string()))?;
            parts.push((kind, rank));
        }
        RootSystem::new(&parts)
    }

    pub fn rank(&self) -> usize {
        self.norms.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn all(&self) -> RootSet {
        RootSet::full(self.rank())
    }

    pub fn component_of(&self, i: usize) -> &Component {
        self.components
            .iter()
            .find(|c| c.indices().contains(&i))
            .expect("index inside the root system")
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Squared length of `alpha_i` with short roots normalised to 1.
    pub fn norm(&self, i: usize) -> i64 {
        self.norms[i]
    }

    fn check(&self, i: usize, v: &LatticeVector) -> Result<(), RootError> {
        if i >= self.rank() {
            return Err(RootError::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        if v.len() != self.rank() {
            return Err(RootError::LengthMismatch {
                got: v.len(),
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// `<alpha_i^vee, v>`.
    pub fn pairing(&self, i: usize, v: &LatticeVector) -> Result<i64, RootError> {
        self.check(i, v)?;
        Ok(self.pair(i, v))
    }

    pub(crate) fn pair(&self, i: usize, v: &LatticeVector) -> i64 {
        self.cartan[i].iter().zip(&v.0).map(|(c, x)| c * x).sum()
    }

    /// Whether `(alpha_i, v) = 0` for the Weyl-invariant inner product.
    pub fn orthogonal(&self, i: usize, v: &LatticeVector) -> Result<bool, RootError> {
        self.check(i, v)?;
        Ok(self.inner2(i, v) == 0)
    }

    pub(crate) fn inner2(&self, i: usize, v: &LatticeVector) -> i64 {
        self.gram2[i].iter().zip(&v.0).map(|(g, x)| g * x).sum()
    }

    pub fn roots_orthogonal(&self, i: usize, j: usize) -> bool {
        self.gram2[i][j] == 0
    }

    pub fn neighbors(&self, i: usize) -> RootSet {
        (0..self.rank())
            .filter(|&j| j != i && self.cartan[i][j] != 0)
            .collect()
    }

    /// Simple roots in `set` split into connected components of the diagram.
    pub fn connected_components(&self, set: RootSet) -> Vec<RootSet> {
        let mut left = set;
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = RootSet::singleton(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v).intersection(set).iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, set: RootSet) -> bool {
        self.connected_components(set).len() == 1
    }

    /// The permutation of simple roots induced by `-w_0`.
    pub fn dynkin_involution(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        for c in &self.components {
            let o = c.offset;
            let n = c.rank;
            match c.kind {
                CartanType::A => {
                    for i in 0..n {
                        perm[o + i] = o + n - 1 - i;
                    }
                }
                CartanType::D if n % 2 == 1 => {
                    perm.swap(o + n - 2, o + n - 1);
                }
                CartanType::E if n == 6 => {
                    // Bourbaki E6: 1 <-> 6, 3 <-> 5.
                    perm[o] = o + 5;
                    perm[o + 5] = o;
                    perm[o + 2] = o + 4;
                    perm[o + 4] = o + 2;
                }
                _ => {}
            }
        }
        perm
    }

    /// Restricts to `subset`, returning the standard root system of the
    /// subdiagram and the map from its indices to ours.
    pub fn restrict(&self, subset: RootSet) -> (RootSystem, Vec<usize>) {
        let mut comps: Vec<Reading> = self
            .connected_components(subset)
            .into_iter()
            .map(|c| {
                self.readings(c)
                    .into_iter()
                    .min_by(|a, b| a.order.cmp(&b.order))
                    .expect("every subdiagram of a finite type diagram has a reading")
            })
            .collect();
        comps.sort_by_key(|r| *r.order.iter().min().unwrap());
        let parts: Vec<_> = comps.iter().map(|r| (r.kind, r.rank)).collect();
        let sub = RootSystem::new(&parts).expect("recognised components are valid");
        let map: Vec<usize> = comps.iter().flat_map(|r| r.order.iter().copied()).collect();
        for (a, &i) in map.iter().enumerate() {
            for (b, &j) in map.iter().enumerate() {
                debug_assert_eq!(sub.cartan[a][b], self.cartan[i][j]);
            }
        }
        (sub, map)
    }

    /// All Bourbaki readings of a connected set of simple roots. Diagram
    /// automorphisms give several readings; a double-bond pair reads both
    /// as `B2` and as `C2`.
    pub fn readings(&self, set: RootSet) -> Vec<Reading> {
        let nodes = set.to_vec();
        let n = nodes.len();
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![Reading {
                kind: CartanType::A,
                rank: 1,
                order: nodes,
            }];
        }
        let bond = |i: usize, j: usize| self.cartan[i][j] * self.cartan[j][i];
        let nbrs = |v: usize| self.neighbors(v).intersection(set);
        let mut multi = None;
        for (a, &i) in nodes.iter().enumerate() {
            for &j in &nodes[a + 1..] {
                if bond(i, j) > 1 {
                    multi = Some((i, j, bond(i, j)));
                }
            }
        }
        // Longer root of a multiple bond has the smaller Cartan entry in magnitude.
        let longer = |i: usize, j: usize| self.cartan[i][j].abs() < self.cartan[j][i].abs();
        let max_deg = nodes.iter().map(|&v| nbrs(v).len()).max().unwrap();

        if let Some((i, j, m)) = multi {
            let path = self.path_order(set);
            let Some(path) = path else { return Vec::new() };
            if m == 3 {
                let (short, long) = if longer(i, j) { (j, i) } else { (i, j) };
                return vec![Reading {
                    kind: CartanType::G,
                    rank: 2,
                    order: vec![short, long],
                }];
            }
            if n == 2 {
                let (long, short) = if longer(i, j) { (i, j) } else { (j, i) };
                return vec![
                    Reading {
                        kind: CartanType::B,
                        rank: 2,
                        order: vec![long, short],
                    },
                    Reading {
                        kind: CartanType::C,
                        rank: 2,
                        order: vec![short, long],
                    },
                ];
            }
            // Orient the path so the double bond is at the far end (B/C) or
            // in the middle with the long roots first (F4).
            let pos = |v: usize| path.iter().position(|&x| x == v).unwrap();
            let (pi, pj) = (pos(i).min(pos(j)), pos(i).max(pos(j)));
            let mut order = path.clone();
            if n == 4 && pi == 1 && pj == 2 {
                if !longer(path[1], path[2]) {
                    order.reverse();
                }
                return vec![Reading {
                    kind: CartanType::F,
                    rank: 4,
                    order,
                }];
            }
            if pi == 0 {
                order.reverse();
            } else if pj != n - 1 {
                return Vec::new();
            }
            let last = order[n - 1];
            let prev = order[n - 2];
            let kind = if longer(prev, last) {
                CartanType::B
            } else {
                CartanType::C
            };
            return vec![Reading {
                kind,
                rank: n,
                order,
            }];
        }

        if max_deg <= 2 {
            let Some(path) = self.path_order(set) else {
                return Vec::new();
            };
            let mut rev = path.clone();
            rev.reverse();
            return vec![
                Reading {
                    kind: CartanType::A,
                    rank: n,
                    order: path,
                },
                Reading {
                    kind: CartanType::A,
                    rank: n,
                    order: rev,
                },
            ];
        }

        // Simply laced with a branch node.
        let branch: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|&v| nbrs(v).len() == 3)
            .collect();
        if branch.len() != 1 || max_deg > 3 {
            return Vec::new();
        }
        let b = branch[0];
        let mut arms: Vec<Vec<usize>> = nbrs(b)
            .iter()
            .map(|start| {
                // Walk away from the branch node.
                let mut arm = vec![start];
                let mut prev = b;
                let mut cur = start;
                loop {
                    let next: Vec<usize> = nbrs(cur).iter().filter(|&w| w != prev).collect();
                    match next.as_slice() {
                        [] => break,
                        [w] => {
                            prev = cur;
                            cur = *w;
                            arm.push(cur);
                        }
                        _ => break,
                    }
                }
                arm
            })
            .collect();
        arms.sort_by_key(|a| a.len());
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        let mut out = Vec::new();
        match lens.as_slice() {
            [1, 1, _] => {
                // D_n: long arm from its far end, branch, then the two tips.
                let perms: Vec<[usize; 3]> = if lens[2] == 1 {
                    vec![
                        [0, 1, 2],
                        [0, 2, 1],
                        [1, 0, 2],
                        [1, 2, 0],
                        [2, 0, 1],
                        [2, 1, 0],
                    ]
                } else {
                    vec![[0, 1, 2], [1, 0, 2]]
                };
                for p in perms {
                    let mut order: Vec<usize> = arms[p[2]].iter().rev().copied().collect();
                    order.push(b);
                    order.push(arms[p[0]][0]);
                    order.push(arms[p[1]][0]);
                    out.push(Reading {
                        kind: CartanType::D,
                        rank: n,
                        order,
                    });
                }
            }
            [1, 2, k] if (2..=4).contains(k) => {
                // E_n: a1 - a3 - a4 - a5 - ..., a2 attached to a4.
                let mut choices = vec![(1usize, 2usize)];
                if *k == 2 {
                    choices.push((2, 1));
                }
                for (two, long) in choices {
                    let mut order = vec![arms[two][1], arms[0][0], arms[two][0], b];
                    order.extend(arms[long].iter().copied());
                    out.push(Reading {
                        kind: CartanType::E,
                        rank: n,
                        order,
                    });
                }
            }
            _ => {}
        }
        out
    }

    /// Orders a path-shaped set from its lower-indexed end.
    fn path_order(&self, set: RootSet) -> Option<Vec<usize>> {
        let nbrs = |v: usize| self.neighbors(v).intersection(set);
        let start = set.iter().find(|&v| nbrs(v).len() <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next: Vec<usize> = nbrs(cur).iter().filter(|&w| w != prev).collect();
            match next.as_slice() {
                [] => break,
                [w] => {
                    prev = cur;
                    cur = *w;
                    order.push(cur);
                }
                _ => return None,
            }
        }
        (order.len() == set.len()).then_some(order)
    }

    /// Simple-root name in text form.
    pub fn root_name(i: usize) -> String {
        format!("a{}", i + 1)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{}{}", c.kind, c.rank))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Norms (short = 1) and doubled inner products of bonded pairs for one
/// Bourbaki-numbered simple type.
fn standard_data(kind: CartanType, n: usize) -> (Vec<i64>, Vec<(usize, usize, i64)>) {
    let chain = |norms: &[i64]| -> Vec<(usize, usize, i64)> {
        (0..norms.len().saturating_sub(1))
            .map(|i| {
                (
                    i,
                    i + 1,
                    -norms[i].min(norms[i + 1]).max(1) * bond_factor(norms[i], norms[i + 1]),
                )
            })
            .collect()
    };
    match kind {
        CartanType::A => {
            let norms = vec![1; n];
            let e = chain(&norms);
            (norms, e)
        }
        CartanType::B => {
            let mut norms = vec![2; n];
            norms[n - 1] = 1;
            let e = chain(&norms);
            (norms, e)
        }
        CartanType::C => {
            let mut norms = vec![1; n];
            norms[n - 1] = 2;
            let e = chain(&norms);
            (norms, e)
        }
        CartanType::D => {
            let norms = vec![1; n];
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1, -1)).collect();
            e.push((n - 3, n - 1, -1));
            (norms, e)
        }
        CartanType::E => {
            let norms = vec![1; n];
            let mut e = vec![(0, 2, -1), (1, 3, -1)];
            e.extend((2..n - 1).map(|i| (i, i + 1, -1)));
            (norms, e)
        }
        CartanType::F => {
            let norms = vec![2, 2, 1, 1];
            let e = chain(&norms);
            (norms, e)
        }
        CartanType::G => (vec![1, 3], vec![(0, 1, -3)]),
    }
}

/// Doubled inner product magnitude for a bond between roots of the given norms,
/// divided by the smaller norm: single bond between equal lengths gives 1,
/// a long-short double bond (2, 1) gives 2.
fn bond_factor(a: i64, b: i64) -> i64 {
    if a == b {
        1
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    #[test]
    fn standard_cartan_matrices() {
        let b4 = RootSystem::parse("B4").unwrap();
        assert_eq!(b4.cartan(2, 3), -1);
        assert_eq!(b4.cartan(3, 2), -2);
        let c3 = RootSystem::parse("C3").unwrap();
        assert_eq!(c3.cartan(1, 2), -2);
        assert_eq!(c3.cartan(2, 1), -1);
        let g2 = RootSystem::parse("G2").unwrap();
        assert_eq!(g2.cartan_matrix(), &[vec![2, -3], vec![-1, 2]]);
        let f4 = RootSystem::parse("F4").unwrap();
        assert_eq!(f4.cartan(1, 2), -1);
        assert_eq!(f4.cartan(2, 1), -2);
        assert_eq!(f4.cartan(2, 3), -1);
        let d5 = RootSystem::parse("D5").unwrap();
        assert_eq!(d5.cartan(2, 4), -1);
        assert_eq!(d5.cartan(3, 4), 0);
        let e6 = RootSystem::parse("E6").unwrap();
        assert_eq!(e6.cartan(1, 3), -1);
        assert_eq!(e6.cartan(0, 2), -1);
        assert_eq!(e6.cartan(0, 1), 0);
        assert_eq!(e6.neighbors(3).len(), 3);
    }

    #[test]
    fn pairing_examples() {
        let b4 = RootSystem::parse("B4").unwrap();
        assert_eq!(b4.pairing(0, &v(&[1, 1, 0, 0])).unwrap(), 1);
        assert_eq!(b4.pairing(3, &v(&[0, 0, 1, 1])).unwrap(), 0);
        assert_eq!(b4.pairing(2, &LatticeVector::zero(4)).unwrap(), 0);
        assert!(matches!(
            b4.pairing(4, &LatticeVector::zero(4)),
            Err(RootError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            b4.pairing(0, &LatticeVector::zero(3)),
            Err(RootError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn orthogonal_examples() {
        let b4 = RootSystem::parse("B4").unwrap();
        assert!(b4.orthogonal(3, &v(&[0, 0, 1, 1])).unwrap());
        assert!(!b4.orthogonal(1, &v(&[0, 0, 1, 1])).unwrap());
        assert!(b4.orthogonal(1, &LatticeVector::zero(4)).unwrap());
        // a3 + 2 a4 in B4: <a3^vee, .> = 2 - 2 = 0.
        assert!(b4.orthogonal(2, &v(&[0, 0, 1, 2])).unwrap());
    }

    #[test]
    fn involutions() {
        let a3 = RootSystem::parse("A3").unwrap();
        assert_eq!(a3.dynkin_involution(), vec![2, 1, 0]);
        let b4 = RootSystem::parse("B4").unwrap();
        assert_eq!(b4.dynkin_involution(), vec![0, 1, 2, 3]);
        let a2a1 = RootSystem::parse("A2 A1").unwrap();
        assert_eq!(a2a1.dynkin_involution(), vec![1, 0, 2]);
        let d5 = RootSystem::parse("D5").unwrap();
        assert_eq!(d5.dynkin_involution(), vec![0, 1, 2, 4, 3]);
        let d4 = RootSystem::parse("D4").unwrap();
        assert_eq!(d4.dynkin_involution(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn parse_tokens() {
        assert_eq!(RootSystem::parse("A1 A3").unwrap().rank(), 4);
        assert_eq!(RootSystem::parse("C2xC3").unwrap().components().len(), 2);
        assert!(RootSystem::parse("B1").is_err());
        assert!(RootSystem::parse("Q3").is_err());
        assert_eq!(RootSystem::parse("A1 B2").unwrap().to_string(), "A1 B2");
    }

    #[test]
    fn restriction_reorders_into_bourbaki_form() {
        let b4 = RootSystem::parse("B4").unwrap();
        let (sub, map) = b4.restrict([0, 2, 3].into_iter().collect());
        assert_eq!(sub.to_string(), "A1 B2");
        assert_eq!(map, vec![0, 2, 3]);

        let c3 = RootSystem::parse("C3").unwrap();
        let (sub, map) = c3.restrict([1, 2].into_iter().collect());
        assert_eq!(sub.to_string(), "C2");
        assert_eq!(map, vec![1, 2]);

        let d5 = RootSystem::parse("D5").unwrap();
        let (sub, map) = d5.restrict([2, 3, 4].into_iter().collect());
        assert_eq!(sub.to_string(), "A3");
        assert_eq!(map, vec![3, 2, 4]);

        let (sub, map) = d5.restrict([1, 2, 3, 4].into_iter().collect());
        assert_eq!(sub.to_string(), "D4");
        assert_eq!(map.len(), 4);

        let e8 = RootSystem::parse("E8").unwrap();
        let (sub, _) = e8.restrict(RootSet::full(7));
        assert_eq!(sub.to_string(), "E7");
        let (sub, _) = e8.restrict(RootSet::full(6));
        assert_eq!(sub.to_string(), "E6");
        let (sub, _) = e8.restrict(RootSet::full(8).difference(RootSet::singleton(0)));
        assert_eq!(sub.to_string(), "D7");

        let f4 = RootSystem::parse("F4").unwrap();
        let (sub, _) = f4.restrict(RootSet::full(4));
        assert_eq!(sub.to_string(), "F4");
        let (sub, _) = f4.restrict([1, 2, 3].into_iter().collect());
        assert_eq!(sub.to_string(), "C3");
        let (sub, _) = f4.restrict([0, 1, 2].into_iter().collect());
        assert_eq!(sub.to_string(), "B3");
    }

    #[test]
    fn readings_of_small_shapes() {
        let b2 = RootSystem::parse("B2").unwrap();
        let r = b2.readings(b2.all());
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].kind, CartanType::B);
        assert_eq!(r[0].order, vec![0, 1]);
        assert_eq!(r[1].kind, CartanType::C);
        assert_eq!(r[1].order, vec![1, 0]);
        let d4 = RootSystem::parse("D4").unwrap();
        assert_eq!(d4.readings(d4.all()).len(), 6);
        let g2 = RootSystem::parse("G2").unwrap();
        assert_eq!(g2.readings(g2.all())[0].order, vec![0, 1]);
    }
}
