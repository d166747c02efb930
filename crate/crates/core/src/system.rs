//! Spherical systems, their colors and the axioms they must satisfy.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::catalog;
use crate::quotient::lattice;
use crate::rootkit::{canonical_cmp, LatticeVector, RootSet, RootSystem};

/// Set of colors, indexing into a [`ColorTable`].
pub type ColorSet = BitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("spherical root {index} has length {got}, expected {rank}")]
    RootLength {
        index: usize,
        got: usize,
        rank: usize,
    },
    #[error("spherical root {0} is zero or has a negative coefficient")]
    BadRoot(usize),
    #[error("record `{name}` has {got} row values for {expected} spherical roots")]
    RowLength {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("simple root index {0} out of range")]
    RootIndex(usize),
    #[error("duplicate record name `{0}`")]
    DuplicateName(String),
    #[error("half-integral value for the color of a{alpha} on spherical root {gamma}")]
    HalfIntegral { alpha: usize, gamma: usize },
    #[error("colors a{alpha} and a{beta} are identified but have different rows")]
    InconsistentClass { alpha: usize, beta: usize },
    #[error("system is not valid: {0}")]
    Invalid(String),
}

/// An element of the A-part with its pairing row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ARecord {
    pub name: String,
    pub moved_by: RootSet,
    pub row: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphericalSystem {
    rs: RootSystem,
    sp: RootSet,
    sigma: Vec<LatticeVector>,
    apart: Vec<ARecord>,
}

impl SphericalSystem {
    /// Builds a system, bringing it to canonical order: spherical roots
    /// sorted, rows permuted to match, records ordered by their moving roots.
    pub fn new(
        rs: RootSystem,
        sp: RootSet,
        sigma: Vec<LatticeVector>,
        apart: Vec<ARecord>,
    ) -> Result<Self, SystemError> {
        let n = rs.rank();
        if let Some(i) = sp.iter().find(|&i| i >= n) {
            return Err(SystemError::RootIndex(i));
        }
        for (index, g) in sigma.iter().enumerate() {
            if g.len() != n {
                return Err(SystemError::RootLength {
                    index,
                    got: g.len(),
                    rank: n,
                });
            }
            if g.is_zero() || !g.is_nonnegative() {
                return Err(SystemError::BadRoot(index));
            }
        }
        let mut names = std::collections::BTreeSet::new();
        for rec in &apart {
            if rec.row.len() != sigma.len() {
                return Err(SystemError::RowLength {
                    name: rec.name.clone(),
                    got: rec.row.len(),
                    expected: sigma.len(),
                });
            }
            if let Some(i) = rec.moved_by.iter().find(|&i| i >= n) {
                return Err(SystemError::RootIndex(i));
            }
            if !names.insert(rec.name.clone()) {
                return Err(SystemError::DuplicateName(rec.name.clone()));
            }
        }
        let mut perm: Vec<usize> = (0..sigma.len()).collect();
        perm.sort_by(|&a, &b| canonical_cmp(&sigma[a], &sigma[b]));
        let sigma: Vec<LatticeVector> = perm.iter().map(|&i| sigma[i].clone()).collect();
        let mut apart: Vec<ARecord> = apart
            .into_iter()
            .map(|r| ARecord {
                row: perm.iter().map(|&i| r.row[i]).collect(),
                ..r
            })
            .collect();
        apart.sort_by(|a, b| {
            crate::bitset::lex_cmp(a.moved_by, b.moved_by).then_with(|| a.name.cmp(&b.name))
        });
        Ok(SphericalSystem {
            rs,
            sp,
            sigma,
            apart,
        })
    }

    /// The rank-zero system with the given `S^p`.
    pub fn rank_zero(rs: RootSystem, sp: RootSet) -> Self {
        SphericalSystem::new(rs, sp, Vec::new(), Vec::new()).expect("rank-zero system")
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn sp(&self) -> RootSet {
        self.sp
    }

    pub fn sigma(&self) -> &[LatticeVector] {
        &self.sigma
    }

    pub fn apart(&self) -> &[ARecord] {
        &self.apart
    }

    /// `card Σ`.
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// Index in Σ of the simple root `alpha`, if `alpha ∈ S ∩ Σ`.
    pub fn simple_index(&self, alpha: usize) -> Option<usize> {
        let e = LatticeVector::unit(self.rs.rank(), alpha);
        self.sigma.iter().position(|g| *g == e)
    }

    /// Index in Σ of `2 alpha`, if present.
    pub fn doubled_index(&self, alpha: usize) -> Option<usize> {
        let e = LatticeVector::unit(self.rs.rank(), alpha).scaled(2);
        self.sigma.iter().position(|g| *g == e)
    }

    /// `S ∩ Σ`.
    pub fn simple_in_sigma(&self) -> RootSet {
        (0..self.rs.rank())
            .filter(|&a| self.simple_index(a).is_some())
            .collect()
    }

    /// Union of the supports of the spherical roots.
    pub fn support(&self) -> RootSet {
        self.sigma
            .iter()
            .fold(RootSet::EMPTY, |acc, g| acc.union(g.support()))
    }

    /// `<alpha^vee, gamma>` for every spherical root.
    pub fn coroot_row(&self, alpha: usize) -> Vec<i64> {
        self.sigma.iter().map(|g| self.rs.pair(alpha, g)).collect()
    }

    /// `A(alpha)`: indices into `apart` of the records moved by `alpha`.
    pub fn a_of(&self, alpha: usize) -> Vec<usize> {
        (0..self.apart.len())
            .filter(|&i| self.apart[i].moved_by.contains(alpha))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ColorKind {
    A,
    APrime,
    B,
}

impl fmt::Display for ColorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorKind::A => "a",
            ColorKind::APrime => "a'",
            ColorKind::B => "b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Color {
    pub name: String,
    pub kind: ColorKind,
    pub moved_by: RootSet,
    pub row: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorTable {
    pub colors: Vec<Color>,
}

impl ColorTable {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn all(&self) -> ColorSet {
        ColorSet::full(self.colors.len())
    }

    /// The `card Δ × card Σ` pairing matrix.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.colors.iter().map(|c| c.row.clone()).collect()
    }

    pub fn rows(&self, set: ColorSet) -> Vec<Vec<i64>> {
        set.iter().map(|i| self.colors[i].row.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.colors.iter().position(|c| c.name == name)
    }

    /// Resolves a list of color names.
    pub fn lookup<'a, I: IntoIterator<Item = &'a str>>(
        &self,
        names: I,
    ) -> Result<ColorSet, String> {
        let mut set = ColorSet::EMPTY;
        for n in names {
            let n = n.trim();
            if n.is_empty() {
                continue;
            }
            let i = self
                .index_of(n)
                .ok_or_else(|| format!("unknown color `{n}`"))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn names(&self, set: ColorSet) -> Vec<String> {
        set.iter().map(|i| self.colors[i].name.clone()).collect()
    }

    /// `Δ(alpha)`: colors moved by `alpha`.
    pub fn moved_by(&self, alpha: usize) -> ColorSet {
        (0..self.colors.len())
            .filter(|&i| self.colors[i].moved_by.contains(alpha))
            .collect()
    }
}

fn union_find_root(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// The full color set `A ∪ Δ^{a'} ∪ Δ^b` with pairing rows.
pub fn build_colors(sys: &SphericalSystem) -> Result<ColorTable, SystemError> {
    let rs = &sys.rs;
    let n = rs.rank();
    let mut colors = Vec::new();
    for rec in &sys.apart {
        colors.push(Color {
            name: rec.name.clone(),
            kind: ColorKind::A,
            moved_by: rec.moved_by,
            row: rec.row.clone(),
        });
    }
    let mut b_roots = RootSet::EMPTY;
    for alpha in 0..n {
        if sys.sp.contains(alpha) || sys.simple_index(alpha).is_some() {
            continue;
        }
        if sys.doubled_index(alpha).is_some() {
            let full = sys.coroot_row(alpha);
            if let Some(gamma) = full.iter().position(|x| x % 2 != 0) {
                return Err(SystemError::HalfIntegral {
                    alpha: alpha + 1,
                    gamma,
                });
            }
            colors.push(Color {
                name: format!("D{}", alpha + 1),
                kind: ColorKind::APrime,
                moved_by: RootSet::singleton(alpha),
                row: full.iter().map(|x| x / 2).collect(),
            });
        } else {
            b_roots.insert(alpha);
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for a in b_roots.iter() {
        for b in b_roots.iter().filter(|&b| b > a) {
            if rs.roots_orthogonal(a, b) {
                let mut v = LatticeVector::unit(n, a);
                v.0[b] = 1;
                if sys.sigma.contains(&v) {
                    let (ra, rb) = (
                        union_find_root(&mut parent, a),
                        union_find_root(&mut parent, b),
                    );
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, RootSet> = BTreeMap::new();
    for a in b_roots.iter() {
        let r = union_find_root(&mut parent, a);
        classes.entry(r).or_default().insert(a);
    }
    for (rep, class) in classes {
        let row = sys.coroot_row(rep);
        for other in class.iter() {
            if sys.coroot_row(other) != row {
                return Err(SystemError::InconsistentClass {
                    alpha: rep + 1,
                    beta: other + 1,
                });
            }
        }
        colors.push(Color {
            name: format!("D{}", rep + 1),
            kind: ColorKind::B,
            moved_by: class,
            row,
        });
    }
    colors.sort_by(|a, b| {
        a.moved_by
            .first()
            .cmp(&b.moved_by.first())
            .then_with(|| a.name.cmp(&b.name))
    });
    Ok(ColorTable { colors })
}

/// One failed axiom. Root and record positions are 1-based in messages.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    #[error("spherical root #{gamma} is not compatible with S^p")]
    Incompatible { gamma: usize },
    #[error("spherical roots #{first} and #{second} coincide")]
    Duplicate { first: usize, second: usize },
    #[error("spherical roots are linearly dependent")]
    Dependent,
    #[error("record {record}: value {value} > 1 on spherical root #{gamma}")]
    ValueTooLarge {
        record: String,
        gamma: usize,
        value: i64,
    },
    #[error(
        "record {record}: value 1 on spherical root #{gamma} which is not a simple root moving it"
    )]
    Excess { record: String, gamma: usize },
    #[error("record {record}: moved by a{alpha}, which is not a simple spherical root")]
    MovedByNotInSigma { record: String, alpha: usize },
    #[error("record {record} is moved by no simple root")]
    Orphan { record: String },
    #[error("a{alpha} is a spherical root but moves {count} records instead of 2")]
    Coverage { alpha: usize, count: usize },
    #[error("records of a{alpha} do not sum to the coroot on spherical root #{gamma}")]
    SumRule { alpha: usize, gamma: usize },
    #[error("record {record}: value on its own root a{alpha} is not 1")]
    SelfValue { record: String, alpha: usize },
    #[error("2a{alpha} is a spherical root but half the coroot on #{gamma} is not a non-positive integer")]
    Sigma1 { alpha: usize, gamma: usize },
    #[error("a{alpha}+a{beta} is a spherical root but the coroots differ on #{gamma}")]
    Sigma2 {
        alpha: usize,
        beta: usize,
        gamma: usize,
    },
    #[error("color of a{alpha} has a half-integral value on spherical root #{gamma}")]
    APrimeIntegral { alpha: usize, gamma: usize },
}

/// Checks every axiom and returns the violations found, in a fixed order.
pub fn validate(sys: &SphericalSystem) -> Vec<Violation> {
    let rs = &sys.rs;
    let n = rs.rank();
    let mut out = Vec::new();

    for (i, g) in sys.sigma.iter().enumerate() {
        if !catalog::is_compatible(rs, g, sys.sp).unwrap_or(false) {
            out.push(Violation::Incompatible { gamma: i + 1 });
        }
    }

    let mut dup = false;
    for i in 0..sys.sigma.len() {
        for j in i + 1..sys.sigma.len() {
            if sys.sigma[i] == sys.sigma[j] {
                out.push(Violation::Duplicate {
                    first: i + 1,
                    second: j + 1,
                });
                dup = true;
            }
        }
    }
    if !dup {
        let rows: Vec<Vec<i64>> = sys.sigma.iter().map(|g| g.0.clone()).collect();
        if lattice::rank(&rows) < rows.len() {
            out.push(Violation::Dependent);
        }
    }

    let simple = sys.simple_in_sigma();
    for rec in &sys.apart {
        if rec.moved_by.is_empty() {
            out.push(Violation::Orphan {
                record: rec.name.clone(),
            });
        }
        for a in rec.moved_by.difference(simple).iter() {
            out.push(Violation::MovedByNotInSigma {
                record: rec.name.clone(),
                alpha: a + 1,
            });
        }
        for (j, &v) in rec.row.iter().enumerate() {
            if v > 1 {
                out.push(Violation::ValueTooLarge {
                    record: rec.name.clone(),
                    gamma: j + 1,
                    value: v,
                });
            } else if v == 1 {
                let ok = (0..n).any(|b| {
                    rec.moved_by.contains(b) && simple.contains(b) && sys.simple_index(b) == Some(j)
                });
                if !ok {
                    out.push(Violation::Excess {
                        record: rec.name.clone(),
                        gamma: j + 1,
                    });
                }
            }
        }
    }
    for alpha in simple.iter() {
        let recs = sys.a_of(alpha);
        if recs.len() != 2 {
            out.push(Violation::Coverage {
                alpha: alpha + 1,
                count: recs.len(),
            });
        } else {
            let coroot = sys.coroot_row(alpha);
            for (j, &c) in coroot.iter().enumerate() {
                if sys.apart[recs[0]].row[j] + sys.apart[recs[1]].row[j] != c {
                    out.push(Violation::SumRule {
                        alpha: alpha + 1,
                        gamma: j + 1,
                    });
                }
            }
        }
        let own = sys.simple_index(alpha).expect("simple root in sigma");
        for &r in &recs {
            if sys.apart[r].row[own] != 1 {
                out.push(Violation::SelfValue {
                    record: sys.apart[r].name.clone(),
                    alpha: alpha + 1,
                });
            }
        }
    }

    for alpha in 0..n {
        if let Some(k) = sys.doubled_index(alpha) {
            for (j, g) in sys.sigma.iter().enumerate() {
                if j == k {
                    continue;
                }
                let v = rs.pair(alpha, g);
                if v % 2 != 0 || v > 0 {
                    out.push(Violation::Sigma1 {
                        alpha: alpha + 1,
                        gamma: j + 1,
                    });
                }
            }
        }
    }

    for a in 0..n {
        for b in a + 1..n {
            if !rs.roots_orthogonal(a, b) {
                continue;
            }
            let mut v = LatticeVector::unit(n, a);
            v.0[b] = 1;
            if !sys.sigma.contains(&v) {
                continue;
            }
            for (j, g) in sys.sigma.iter().enumerate() {
                if rs.pair(a, g) != rs.pair(b, g) {
                    out.push(Violation::Sigma2 {
                        alpha: a + 1,
                        beta: b + 1,
                        gamma: j + 1,
                    });
                }
            }
        }
    }

    for alpha in 0..n {
        if sys.doubled_index(alpha).is_some() && !sys.sp.contains(alpha) {
            for (j, g) in sys.sigma.iter().enumerate() {
                if rs.pair(alpha, g) % 2 != 0 {
                    out.push(Violation::APrimeIntegral {
                        alpha: alpha + 1,
                        gamma: j + 1,
                    });
                }
            }
        }
    }
    out
}

pub fn is_valid(sys: &SphericalSystem) -> bool {
    validate(sys).is_empty()
}

/// Keeps the records moved by roots in `keep`, restricted to the columns in
/// `cols`, and drops every other record.
fn restrict_apart(
    sys: &SphericalSystem,
    keep: RootSet,
    cols: &[usize],
    map: Option<&[usize]>,
) -> Vec<ARecord> {
    sys.apart
        .iter()
        .filter(|r| !r.moved_by.intersection(keep).is_empty())
        .map(|r| {
            let moved = r.moved_by.intersection(keep);
            let moved_by = match map {
                Some(m) => moved
                    .iter()
                    .map(|old| {
                        m.iter()
                            .position(|&o| o == old)
                            .expect("kept root in restriction")
                    })
                    .collect(),
                None => moved,
            };
            ARecord {
                name: r.name.clone(),
                moved_by,
                row: cols.iter().map(|&j| r.row[j]).collect(),
            }
        })
        .collect()
}

/// Localization in a subset `s_prime` of simple roots. The result lives on the
/// root system of the subdiagram, renumbered in Bourbaki order.
pub fn localize_simple(sys: &SphericalSystem, s_prime: RootSet) -> SphericalSystem {
    let (sub, map) = sys.rs.restrict(s_prime);
    let cols: Vec<usize> = (0..sys.sigma.len())
        .filter(|&j| sys.sigma[j].support().is_subset(s_prime))
        .collect();
    let sigma = cols.iter().map(|&j| sys.sigma[j].pull_back(&map)).collect();
    let sp = map
        .iter()
        .enumerate()
        .filter(|(_, &old)| sys.sp.contains(old))
        .map(|(new, _)| new)
        .collect();
    let keep: RootSet = cols
        .iter()
        .filter_map(|&j| {
            let t = sys.sigma[j].terms();
            (t.len() == 1 && t[0].1 == 1).then_some(t[0].0)
        })
        .collect();
    let apart = restrict_apart(sys, keep, &cols, Some(&map));
    SphericalSystem::new(sub, sp, sigma, apart).expect("localization of a well-formed system")
}

/// Localization in a subset of the spherical roots, given by their indices.
pub fn localize_sigma(sys: &SphericalSystem, keep_roots: &[usize]) -> SphericalSystem {
    let mut cols: Vec<usize> = keep_roots.to_vec();
    cols.sort_unstable();
    cols.dedup();
    let sigma = cols.iter().map(|&j| sys.sigma[j].clone()).collect();
    let keep: RootSet = cols
        .iter()
        .filter_map(|&j| {
            let t = sys.sigma[j].terms();
            (t.len() == 1 && t[0].1 == 1).then_some(t[0].0)
        })
        .collect();
    let apart = restrict_apart(sys, keep, &cols, None);
    SphericalSystem::new(sys.rs.clone(), sys.sp, sigma, apart)
        .expect("localization of a well-formed system")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    fn fix_b4() -> SphericalSystem {
        SphericalSystem::new(
            RootSystem::parse("B4").unwrap(),
            RootSet::singleton(3),
            vec![v(&[1, 1, 0, 0]), v(&[0, 0, 1, 1])],
            vec![],
        )
        .unwrap()
    }

    fn a1_full() -> SphericalSystem {
        SphericalSystem::new(
            RootSystem::parse("A1").unwrap(),
            RootSet::EMPTY,
            vec![v(&[1])],
            vec![
                ARecord {
                    name: "d+".into(),
                    moved_by: RootSet::singleton(0),
                    row: vec![1],
                },
                ARecord {
                    name: "d-".into(),
                    moved_by: RootSet::singleton(0),
                    row: vec![1],
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn fix_b4_colors() {
        let t = build_colors(&fix_b4()).unwrap();
        let names: Vec<_> = t.colors.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["D1", "D2", "D3"]);
        assert!(t.colors.iter().all(|c| c.kind == ColorKind::B));
        assert_eq!(t.matrix(), vec![vec![1, 0], vec![1, -1], vec![-1, 1]]);
        assert!(validate(&fix_b4()).is_empty());
    }

    #[test]
    fn doubled_root_color() {
        let s = SphericalSystem::new(
            RootSystem::parse("A1").unwrap(),
            RootSet::EMPTY,
            vec![v(&[2])],
            vec![],
        )
        .unwrap();
        let t = build_colors(&s).unwrap();
        assert_eq!(t.colors.len(), 1);
        assert_eq!(t.colors[0].kind, ColorKind::APrime);
        assert_eq!(t.colors[0].row, vec![2]);
    }

    #[test]
    fn trivial_table() {
        let s = SphericalSystem::rank_zero(RootSystem::parse("B4").unwrap(), RootSet::full(4));
        assert!(build_colors(&s).unwrap().is_empty());
        assert!(validate(&s).is_empty());
    }

    #[test]
    fn a1_with_pair() {
        assert!(validate(&a1_full()).is_empty());
        let mut bad = a1_full();
        bad.apart[0].row = vec![0];
        assert!(validate(&bad)
            .iter()
            .any(|x| matches!(x, Violation::SumRule { .. })));
    }

    #[test]
    fn wrong_sp_is_reported() {
        let s = SphericalSystem::new(
            RootSystem::parse("B4").unwrap(),
            [2, 3].into_iter().collect(),
            vec![v(&[1, 1, 0, 0]), v(&[0, 0, 1, 1])],
            vec![],
        )
        .unwrap();
        let viol = validate(&s);
        assert!(viol.contains(&Violation::Incompatible { gamma: 2 }));
    }

    #[test]
    fn localizations() {
        let s = fix_b4();
        let l = localize_simple(&s, [0, 1].into_iter().collect());
        assert_eq!(l.root_system().to_string(), "A2");
        assert_eq!(l.sigma(), &[v(&[1, 1])]);
        assert!(l.sp().is_empty());
        assert_eq!(localize_simple(&s, s.root_system().all()), s);
        let l = localize_simple(&s, RootSet::singleton(3));
        assert_eq!(l.root_system().to_string(), "A1");
        assert_eq!(l.sp(), RootSet::singleton(0));
        assert!(l.sigma().is_empty());

        let l = localize_sigma(&s, &[0]);
        assert_eq!(l.sigma(), &[v(&[1, 1, 0, 0])]);
        assert_eq!(l.sp(), RootSet::singleton(3));
        assert_eq!(localize_sigma(&s, &[0, 1]), s);
        assert_eq!(localize_sigma(&s, &[]).rank(), 0);
    }
}
