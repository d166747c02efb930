//! Spherical roots of rank-one wonderful varieties and the constraints each
//! one puts on `S^p`.
//!
//! Entries are stored against a Bourbaki reading of their support. An
//! embedded root is found by reading each connected subdiagram of the ambient
//! root system in every admissible Bourbaki order and placing the
//! coefficient pattern along it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootkit::{canonical_cmp, CartanType, LatticeVector, RootSet, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("spherical root candidate has a negative coefficient")]
    Negative,
    #[error("spherical root candidate is zero")]
    Zero,
    #[error("vector of length {got} does not match rank {rank}")]
    LengthMismatch { got: usize, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tag {
    A,
    TwoA,
    APair,
    AN(usize),
    B(usize),
    BPrime(usize),
    CStar(usize),
    D(usize),
    A3,
    B3,
    F4,
    G2Short,
    G2Mid,
    G2Double,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::A => write!(f, "a"),
            Tag::TwoA => write!(f, "2a"),
            Tag::APair => write!(f, "a+a'"),
            Tag::AN(n) => write!(f, "a({n})"),
            Tag::B(m) => write!(f, "b({m})"),
            Tag::BPrime(m) => write!(f, "b'({m})"),
            Tag::CStar(m) => write!(f, "c*({m})"),
            Tag::D(m) => write!(f, "d({m})"),
            Tag::A3 => write!(f, "a3"),
            Tag::B3 => write!(f, "b3"),
            Tag::F4 => write!(f, "f4"),
            Tag::G2Short => write!(f, "g2-short"),
            Tag::G2Mid => write!(f, "g2-mid"),
            Tag::G2Double => write!(f, "g2-double"),
        }
    }
}

/// Support shape of a catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Simple(CartanType, usize),
    /// Two orthogonal simple roots.
    OrthogonalPair,
}

/// One row of the table. Friend positions are 0-based along the reading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub tag: Tag,
    pub shape: Shape,
    pub coeffs: Vec<i64>,
    pub required: Vec<usize>,
    pub optional: Vec<usize>,
    /// Friend sets taken from the standard rank-one tables rather than
    /// derived from a general pattern; kept visible for audit.
    pub verify: bool,
}

fn entry(tag: Tag, kind: CartanType, coeffs: Vec<i64>, required: Vec<usize>) -> CatalogEntry {
    CatalogEntry {
        tag,
        shape: Shape::Simple(kind, coeffs.len()),
        coeffs,
        required,
        optional: Vec::new(),
        verify: false,
    }
}

/// Catalog entries whose support is the simple type `kind` of rank `n`.
pub fn entries_for(kind: CartanType, n: usize) -> Vec<CatalogEntry> {
    use CartanType::*;
    let mut out = Vec::new();
    match kind {
        A if n == 1 => {
            out.push(entry(Tag::A, A, vec![1], vec![]));
            out.push(entry(Tag::TwoA, A, vec![2], vec![]));
        }
        A => {
            out.push(entry(Tag::AN(n), A, vec![1; n], (1..n - 1).collect()));
            if n == 3 {
                let mut e = entry(Tag::A3, A, vec![1, 2, 1], vec![0, 2]);
                e.verify = true;
                out.push(e);
            }
        }
        B => {
            out.push(entry(Tag::B(n), B, vec![1; n], (1..n).collect()));
            out.push(entry(Tag::BPrime(n), B, vec![2; n], (1..n).collect()));
            if n == 3 {
                let mut e = entry(Tag::B3, B, vec![1, 2, 3], vec![0, 1]);
                e.verify = true;
                out.push(e);
            }
        }
        C => {
            let mut coeffs = vec![2; n];
            coeffs[0] = 1;
            coeffs[n - 1] = 1;
            let mut e = entry(Tag::CStar(n), C, coeffs, (2..n).collect());
            e.optional = vec![0];
            out.push(e);
        }
        D => {
            let mut coeffs = vec![2; n];
            coeffs[n - 2] = 1;
            coeffs[n - 1] = 1;
            out.push(entry(Tag::D(n), D, coeffs, (1..n).collect()));
        }
        F => {
            let mut e = entry(Tag::F4, F, vec![1, 2, 3, 2], vec![0, 1, 2]);
            e.verify = true;
            out.push(e);
        }
        G => {
            let mut short = entry(Tag::G2Short, G, vec![1, 1], vec![]);
            let mut mid = entry(Tag::G2Mid, G, vec![2, 1], vec![1]);
            let mut double = entry(Tag::G2Double, G, vec![4, 2], vec![1]);
            short.verify = true;
            mid.verify = true;
            double.verify = true;
            out.extend([short, mid, double]);
        }
        E => {}
    }
    out
}

fn pair_entry() -> CatalogEntry {
    CatalogEntry {
        tag: Tag::APair,
        shape: Shape::OrthogonalPair,
        coeffs: vec![1, 1],
        required: Vec::new(),
        optional: Vec::new(),
        verify: false,
    }
}

/// A catalog entry placed inside a concrete root system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub tag: Tag,
    pub gamma: LatticeVector,
    pub support: RootSet,
    pub required: RootSet,
    pub optional: RootSet,
    pub verify: bool,
}

impl Instance {
    /// Rules (b) and (c) of compatibility with `sp`.
    pub fn admits(&self, rs: &RootSystem, sp: RootSet) -> bool {
        let inside = sp.intersection(self.support);
        self.required.is_subset(inside)
            && inside.is_subset(self.required.union(self.optional))
            && sp.iter().all(|a| rs.pair(a, &self.gamma) == 0)
    }
}

fn place(rs: &RootSystem, e: &CatalogEntry, order: &[usize]) -> Instance {
    let mut gamma = LatticeVector::zero(rs.rank());
    for (pos, &i) in order.iter().enumerate() {
        gamma.0[i] = e.coeffs[pos];
    }
    Instance {
        tag: e.tag,
        gamma,
        support: order.iter().copied().collect(),
        required: e.required.iter().map(|&p| order[p]).collect(),
        optional: e.optional.iter().map(|&p| order[p]).collect(),
        verify: e.verify,
    }
}

/// All catalog instances whose support is exactly `support`.
fn instances_on(rs: &RootSystem, support: RootSet) -> Vec<Instance> {
    let mut out = Vec::new();
    if support.len() == 2 {
        let v = support.to_vec();
        if rs.roots_orthogonal(v[0], v[1]) {
            out.push(place(rs, &pair_entry(), &v));
            return out;
        }
    }
    for reading in rs.readings(support) {
        for e in entries_for(reading.kind, reading.rank) {
            out.push(place(rs, &e, &reading.order));
        }
    }
    out
}

/// Every connected subdiagram of `rs`.
pub fn connected_subsets(rs: &RootSystem) -> Vec<RootSet> {
    let mut seen = BTreeSet::new();
    let mut frontier: Vec<RootSet> = (0..rs.rank()).map(RootSet::singleton).collect();
    while let Some(s) = frontier.pop() {
        if !seen.insert(s.bits()) {
            continue;
        }
        for v in s.iter() {
            for w in rs.neighbors(v).difference(s).iter() {
                let t = s.with(w);
                if !seen.contains(&t.bits()) {
                    frontier.push(t);
                }
            }
        }
    }
    seen.into_iter().map(RootSet::from_bits).collect()
}

/// Every catalog instance in `rs`, in canonical order of the root.
pub fn all_instances(rs: &RootSystem) -> Vec<Instance> {
    let mut out = Vec::new();
    for s in connected_subsets(rs) {
        out.extend(instances_on(rs, s));
    }
    for i in 0..rs.rank() {
        for j in i + 1..rs.rank() {
            if rs.roots_orthogonal(i, j) {
                out.push(place(rs, &pair_entry(), &[i, j]));
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.gamma, &b.gamma).then(a.tag.cmp(&b.tag)));
    // Symmetric readings of one subdiagram place the same entry twice.
    let mut unique: Vec<Instance> = Vec::with_capacity(out.len());
    for inst in out {
        if !unique.contains(&inst) {
            unique.push(inst);
        }
    }
    unique
}

fn check_candidate(rs: &RootSystem, gamma: &LatticeVector) -> Result<(), CatalogError> {
    if gamma.len() != rs.rank() {
        return Err(CatalogError::LengthMismatch {
            got: gamma.len(),
            rank: rs.rank(),
        });
    }
    if !gamma.is_nonnegative() {
        return Err(CatalogError::Negative);
    }
    if gamma.is_zero() {
        return Err(CatalogError::Zero);
    }
    Ok(())
}

/// Catalog instances matching `gamma` exactly.
pub fn matching_instances(
    rs: &RootSystem,
    gamma: &LatticeVector,
) -> Result<Vec<Instance>, CatalogError> {
    check_candidate(rs, gamma)?;
    Ok(instances_on(rs, gamma.support())
        .into_iter()
        .filter(|inst| &inst.gamma == gamma)
        .collect())
}

pub fn is_compatible(
    rs: &RootSystem,
    gamma: &LatticeVector,
    sp: RootSet,
) -> Result<bool, CatalogError> {
    Ok(matching_instances(rs, gamma)?
        .iter()
        .any(|inst| inst.admits(rs, sp)))
}

/// All spherical roots compatible with `sp`, duplicate-free and in canonical order.
pub fn compatible_roots(rs: &RootSystem, sp: RootSet) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = Vec::new();
    for inst in all_instances(rs) {
        if inst.admits(rs, sp) && out.last() != Some(&inst.gamma) {
            out.push(inst.gamma);
        }
    }
    out
}

/// Tail patterns a spherical root can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TailShape {
    B(usize),
    BPrime(usize),
    D(usize),
    CStar(usize),
}

impl fmt::Display for TailShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailShape::B(m) => write!(f, "b({m})"),
            TailShape::BPrime(m) => write!(f, "b'({m})"),
            TailShape::D(m) => write!(f, "d({m})"),
            TailShape::CStar(m) => write!(f, "c*({m})"),
        }
    }
}

/// Whether `alpha` is the short simple root at the end of a B-type chain,
/// i.e. its only neighbour is longer and joined by a double bond.
fn short_end_of_b(rs: &RootSystem, alpha: usize) -> bool {
    let nb = rs.neighbors(alpha).to_vec();
    nb.len() == 1 && rs.cartan(alpha, nb[0]) == -2 && rs.cartan(nb[0], alpha) == -1
}

/// Pattern match of a spherical root against the tail shapes. This looks only
/// at coefficients, the support type and how the support is attached to the
/// rest of the diagram; `sp` is used solely to separate `b(2)` from `c*(2)`
/// on a double bond that can be read either way. The `b(1)` colour condition
/// needs the colour table and is checked by the caller.
pub fn classify_tail_shape(
    rs: &RootSystem,
    gamma: &LatticeVector,
    sp: RootSet,
) -> Option<TailShape> {
    if gamma.len() != rs.rank() || !gamma.is_nonnegative() || gamma.is_zero() {
        return None;
    }
    let supp = gamma.support();
    let terms = gamma.terms();
    if supp.len() == 1 {
        let (a, c) = terms[0];
        if short_end_of_b(rs, a) {
            return match c {
                1 => Some(TailShape::B(1)),
                2 => Some(TailShape::BPrime(1)),
                _ => None,
            };
        }
        return None;
    }
    if supp.len() == 2 {
        let v = supp.to_vec();
        if rs.roots_orthogonal(v[0], v[1]) {
            let n0 = rs.neighbors(v[0]);
            let n1 = rs.neighbors(v[1]);
            if terms.iter().all(|t| t.1 == 1) && !n0.is_empty() && n0 == n1 {
                return Some(TailShape::D(2));
            }
            return None;
        }
    }
    if !rs.is_connected(supp) {
        return None;
    }
    // The support may only touch the rest of S through its first root.
    let attached_at_head =
        |order: &[usize]| order[1..].iter().all(|&j| rs.neighbors(j).is_subset(supp));
    let coeff_along = |order: &[usize]| -> Vec<i64> { order.iter().map(|&i| gamma.0[i]).collect() };
    let mut found = Vec::new();
    for r in rs.readings(supp) {
        // A3 is checked through its middle-first reading below.
        let a3 = r.kind == CartanType::A && r.rank == 3;
        if !a3 && !attached_at_head(&r.order) {
            continue;
        }
        let c = coeff_along(&r.order);
        let m = r.rank;
        match r.kind {
            CartanType::B => {
                if c.iter().all(|&x| x == 1) {
                    found.push((TailShape::B(m), r.order.clone()));
                } else if c.iter().all(|&x| x == 2) {
                    found.push((TailShape::BPrime(m), r.order.clone()));
                }
            }
            CartanType::C => {
                let mut pat = vec![2; m];
                pat[0] = 1;
                pat[m - 1] = 1;
                if c == pat {
                    found.push((TailShape::CStar(m), r.order.clone()));
                }
            }
            CartanType::D => {
                let mut pat = vec![2; m];
                pat[m - 2] = 1;
                pat[m - 1] = 1;
                if c == pat {
                    found.push((TailShape::D(m), r.order.clone()));
                }
            }
            CartanType::A if m == 3 => {
                // D3 read as A3 with the middle node first.
                let mid = r.order[1];
                let d3 = [mid, r.order[0], r.order[2]];
                if attached_at_head(&d3) && coeff_along(&d3) == [2, 1, 1] {
                    found.push((TailShape::D(3), d3.to_vec()));
                }
            }
            _ => {}
        }
    }
    found.sort();
    found.dedup_by(|a, b| a.0 == b.0);
    match found.len() {
        0 => None,
        1 => Some(found[0].0),
        _ => {
            // Only a standalone double bond with all-one coefficients reads
            // both as b(2) and c*(2): b(2) keeps its short root in S^p.
            let b = found.iter().find(|f| matches!(f.0, TailShape::B(_)));
            match b {
                Some((shape, order)) if sp.contains(*order.last().unwrap()) => Some(*shape),
                _ => found
                    .iter()
                    .find(|f| matches!(f.0, TailShape::CStar(_)))
                    .or(found.first())
                    .map(|f| f.0),
            }
        }
    }
}

/// One printable line per catalog instance of `rs`.
pub fn describe(rs: &RootSystem) -> Vec<String> {
    all_instances(rs)
        .into_iter()
        .map(|inst| {
            let names = |s: RootSet| {
                if s.is_empty() {
                    "-".to_string()
                } else {
                    s.iter()
                        .map(RootSystem::root_name)
                        .collect::<Vec<_>>()
                        .join(",")
                }
            };
            format!(
                "{:<10} {:<24} required {:<12} optional {}{}",
                inst.tag.to_string(),
                crate::format::format_vector(&inst.gamma),
                names(inst.required),
                names(inst.optional),
                if inst.verify { "  [verify]" } else { "" }
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    fn set(v: &[usize]) -> RootSet {
        v.iter().copied().collect()
    }

    #[test]
    fn table_respects_its_own_friend_rule() {
        for (kind, n) in [
            (CartanType::A, 1),
            (CartanType::A, 2),
            (CartanType::A, 3),
            (CartanType::A, 5),
            (CartanType::B, 2),
            (CartanType::B, 3),
            (CartanType::B, 5),
            (CartanType::C, 2),
            (CartanType::C, 3),
            (CartanType::C, 5),
            (CartanType::D, 4),
            (CartanType::D, 6),
            (CartanType::F, 4),
            (CartanType::G, 2),
        ] {
            let rs = RootSystem::new(&[(kind, n)]).unwrap();
            for e in entries_for(kind, n) {
                let inst = place(&rs, &e, &(0..n).collect::<Vec<_>>());
                for a in inst.required.iter() {
                    assert_eq!(rs.pair(a, &inst.gamma), 0, "{} in {kind}{n}", e.tag);
                }
                assert!(inst.required.is_disjoint(inst.optional));
                assert!(inst.admits(&rs, inst.required), "{} in {kind}{n}", e.tag);
            }
        }
    }

    #[test]
    fn b_pattern_in_b4() {
        let b4 = RootSystem::parse("B4").unwrap();
        assert!(is_compatible(&b4, &v(&[0, 0, 1, 1]), set(&[3])).unwrap());
        assert!(!is_compatible(&b4, &v(&[0, 0, 1, 1]), set(&[2, 3])).unwrap());
        assert!(is_compatible(&b4, &v(&[1, 1, 0, 0]), set(&[3])).unwrap());
        assert!(matches!(
            is_compatible(&b4, &v(&[0, 0, -1, 1]), RootSet::EMPTY),
            Err(CatalogError::Negative)
        ));
        assert!(matches!(
            is_compatible(&b4, &LatticeVector::zero(4), RootSet::EMPTY),
            Err(CatalogError::Zero)
        ));
    }

    #[test]
    fn a2_sum() {
        let a2 = RootSystem::parse("A2").unwrap();
        assert!(is_compatible(&a2, &v(&[1, 1]), RootSet::EMPTY).unwrap());
    }

    #[test]
    fn rank_one_lists() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(
            compatible_roots(&a1, RootSet::EMPTY),
            vec![v(&[1]), v(&[2])]
        );
        assert!(compatible_roots(&a1, set(&[0])).is_empty());
    }

    #[test]
    fn compatible_roots_are_compatible() {
        for name in ["B2", "C3", "A3", "G2", "D4", "A1 A2"] {
            let rs = RootSystem::parse(name).unwrap();
            for sp in rs.all().subsets() {
                let roots = compatible_roots(&rs, sp);
                for g in &roots {
                    assert!(is_compatible(&rs, g, sp).unwrap());
                }
                let mut sorted = roots.clone();
                sorted.sort_by(canonical_cmp);
                sorted.dedup();
                assert_eq!(sorted, roots);
            }
        }
    }

    #[test]
    fn tail_shapes() {
        let b4 = RootSystem::parse("B4").unwrap();
        assert_eq!(
            classify_tail_shape(&b4, &v(&[0, 0, 1, 1]), set(&[3])),
            Some(TailShape::B(2))
        );
        assert_eq!(
            classify_tail_shape(&b4, &v(&[0, 0, 2, 2]), set(&[3])),
            Some(TailShape::BPrime(2))
        );
        assert_eq!(
            classify_tail_shape(&b4, &v(&[0, 0, 0, 1]), RootSet::EMPTY),
            Some(TailShape::B(1))
        );
        let c3 = RootSystem::parse("C3").unwrap();
        assert_eq!(
            classify_tail_shape(&c3, &v(&[1, 2, 1]), set(&[0])),
            Some(TailShape::CStar(3))
        );
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(classify_tail_shape(&a2, &v(&[1, 1]), RootSet::EMPTY), None);
        let d5 = RootSystem::parse("D5").unwrap();
        assert_eq!(
            classify_tail_shape(&d5, &v(&[0, 0, 0, 1, 1]), RootSet::EMPTY),
            Some(TailShape::D(2))
        );
        assert_eq!(
            classify_tail_shape(&d5, &v(&[0, 0, 2, 1, 1]), RootSet::EMPTY),
            Some(TailShape::D(3))
        );
        assert_eq!(
            classify_tail_shape(&d5, &v(&[0, 2, 2, 1, 1]), RootSet::EMPTY),
            Some(TailShape::D(4))
        );
        let b2 = RootSystem::parse("B2").unwrap();
        assert_eq!(
            classify_tail_shape(&b2, &v(&[1, 1]), set(&[1])),
            Some(TailShape::B(2))
        );
        assert_eq!(
            classify_tail_shape(&b2, &v(&[1, 1]), RootSet::EMPTY),
            Some(TailShape::CStar(2))
        );
    }
}
