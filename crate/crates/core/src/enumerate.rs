//! Exhaustive generation of the spherical systems of a root system.
//!
//! The search runs over `S^p`, then over sets of compatible spherical roots
//! grown one root at a time (every axiom that involves only the roots is
//! inherited by subsets, so a failing partial set is pruned), then over the
//! rows of the A-part. Work is spread over the `S^p` candidates and the
//! results are merged back in candidate order.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::lex_cmp;
use crate::catalog::compatible_roots;
use crate::par;
use crate::quotient::{self, all_reports};
use crate::rootkit::{LatticeVector, RootSet, RootSystem};
use crate::structure;
use crate::system::{validate, ARecord, ColorSet, SphericalSystem, Violation};

/// Root systems above this rank are refused unless the caller raises the cap.
pub const DEFAULT_RANK_CAP: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("root system of rank {rank} exceeds the enumeration cap {cap}")]
    RankCap { rank: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationQuery {
    pub rs: RootSystem,
    pub max_rank: Option<usize>,
    pub cuspidal: bool,
    pub primitive: bool,
    pub reductive: bool,
    pub defect: Option<i64>,
    /// Stop after this many systems and report truncation.
    pub limit: Option<usize>,
    pub rank_cap: usize,
}

impl EnumerationQuery {
    pub fn new(rs: RootSystem) -> Self {
        EnumerationQuery {
            rs,
            max_rank: None,
            cuspidal: false,
            primitive: false,
            reductive: false,
            defect: None,
            limit: None,
            rank_cap: DEFAULT_RANK_CAP,
        }
    }

    fn accepts(&self, sys: &SphericalSystem) -> bool {
        if self.cuspidal && !structure::is_cuspidal(sys) {
            return false;
        }
        if let Some(d) = self.defect {
            if quotient::defect(sys).ok() != Some(d) {
                return false;
            }
        }
        if self.reductive && !matches!(quotient::is_reductive(sys), Ok(Some(_))) {
            return false;
        }
        if self.primitive && !structure::is_primitive(sys).is_ok_and(|r| r.primitive) {
            return false;
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub systems: Vec<SphericalSystem>,
    pub truncated: bool,
}

fn root_violation(v: &Violation) -> bool {
    matches!(
        v,
        Violation::Incompatible { .. }
            | Violation::Duplicate { .. }
            | Violation::Dependent
            | Violation::Sigma1 { .. }
            | Violation::Sigma2 { .. }
            | Violation::APrimeIntegral { .. }
    )
}

fn roots_ok(rs: &RootSystem, sp: RootSet, sigma: &[LatticeVector]) -> bool {
    let sys = SphericalSystem::new(rs.clone(), sp, sigma.to_vec(), Vec::new())
        .expect("well-formed roots");
    !validate(&sys).iter().any(root_violation)
}

/// Admissible sets of spherical roots for a fixed `S^p`, in lexicographic
/// order of their positions among the compatible roots.
fn sigma_sets(rs: &RootSystem, sp: RootSet, max_rank: usize) -> Vec<Vec<LatticeVector>> {
    let cands = compatible_roots(rs, sp);
    let mut out = Vec::new();
    collect_sets(rs, sp, &cands, max_rank, &mut Vec::new(), 0, &mut out);
    out
}

fn collect_sets(
    rs: &RootSystem,
    sp: RootSet,
    cands: &[LatticeVector],
    max_rank: usize,
    chosen: &mut Vec<LatticeVector>,
    next: usize,
    out: &mut Vec<Vec<LatticeVector>>,
) {
    out.push(chosen.clone());
    if chosen.len() >= max_rank {
        return;
    }
    for i in next..cands.len() {
        chosen.push(cands[i].clone());
        if roots_ok(rs, sp, chosen) {
            collect_sets(rs, sp, cands, max_rank, chosen, i + 1, out);
        }
        chosen.pop();
    }
}

/// Unordered pairs of rows `(r+, r-)` for the simple spherical root `alpha`:
/// both are 1 on `alpha`, they sum to the coroot row and neither exceeds 1,
/// which confines every entry to `[<alpha^vee, gamma> - 1, 1]`.
fn row_pairs(coroot: &[i64], own: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    let mut r = vec![0i64; coroot.len()];
    fn go(
        j: usize,
        r: &mut Vec<i64>,
        coroot: &[i64],
        own: usize,
        out: &mut Vec<(Vec<i64>, Vec<i64>)>,
    ) {
        if j == r.len() {
            let s: Vec<i64> = coroot.iter().zip(r.iter()).map(|(c, x)| c - x).collect();
            if *r >= s {
                out.push((r.clone(), s));
            }
            return;
        }
        let range: Vec<i64> = if j == own {
            vec![1]
        } else {
            (coroot[j] - 1..=1).rev().collect()
        };
        for v in range {
            r[j] = v;
            go(j + 1, r, coroot, own, out);
        }
    }
    go(0, &mut r, coroot, own, &mut out);
    out
}

/// Assembles the A-part from one row pair per simple spherical root. A record
/// with value 1 on another simple spherical root is the same color as the
/// record of that root with the same row; returns `None` when the choice is
/// inconsistent.
fn assemble(simple: &[(usize, usize)], choice: &[&(Vec<i64>, Vec<i64>)]) -> Option<Vec<ARecord>> {
    let ones = |row: &[i64]| -> RootSet {
        simple
            .iter()
            .filter(|&&(_, j)| row[j] == 1)
            .map(|&(a, _)| a)
            .collect()
    };
    let mut recs: Vec<ARecord> = Vec::new();
    for (&(alpha, _), pair) in simple.iter().zip(choice) {
        for (sign, row) in [('+', &pair.0), ('-', &pair.1)] {
            let m = ones(row);
            let earlier = m.iter().find(|&b| b < alpha);
            match earlier {
                None => recs.push(ARecord {
                    name: format!("d{}{}", alpha + 1, sign),
                    moved_by: RootSet::singleton(alpha),
                    row: row.clone(),
                }),
                Some(b) => {
                    let r = recs.iter_mut().find(|r| {
                        r.moved_by.contains(b) && !r.moved_by.contains(alpha) && r.row == *row
                    })?;
                    r.moved_by.insert(alpha);
                }
            }
        }
    }
    recs.iter()
        .all(|r| r.moved_by == ones(&r.row))
        .then_some(recs)
}

fn systems_for_roots(
    rs: &RootSystem,
    sp: RootSet,
    sigma: Vec<LatticeVector>,
) -> Vec<SphericalSystem> {
    let base = SphericalSystem::new(rs.clone(), sp, sigma, Vec::new()).expect("well-formed roots");
    let simple: Vec<(usize, usize)> = base
        .simple_in_sigma()
        .iter()
        .map(|a| (a, base.simple_index(a).unwrap()))
        .collect();
    let options: Vec<Vec<(Vec<i64>, Vec<i64>)>> = simple
        .iter()
        .map(|&(a, j)| row_pairs(&base.coroot_row(a), j))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; options.len()];
    if options.iter().any(|o| o.is_empty()) {
        return out;
    }
    loop {
        let choice: Vec<&(Vec<i64>, Vec<i64>)> =
            idx.iter().zip(&options).map(|(&i, o)| &o[i]).collect();
        if let Some(apart) = assemble(&simple, &choice) {
            let sys = SphericalSystem::new(rs.clone(), sp, base.sigma().to_vec(), apart)
                .expect("well-formed records");
            if validate(&sys).is_empty() {
                out.push(sys);
            }
        }
        // Odometer, last position fastest.
        let mut p = idx.len();
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < options[p].len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// All `S^p` in lexicographic order.
fn sp_candidates(rs: &RootSystem) -> Vec<RootSet> {
    let mut v: Vec<RootSet> = rs.all().subsets().collect();
    v.sort_by(|a, b| lex_cmp(*a, *b));
    v
}

fn systems_for_sp(q: &EnumerationQuery, sp: RootSet) -> Vec<SphericalSystem> {
    let max_rank = q.max_rank.unwrap_or(q.rs.rank()).min(q.rs.rank());
    let sets = sigma_sets(&q.rs, sp, max_rank);
    par::flat_map(sets, |sigma| {
        systems_for_roots(&q.rs, sp, sigma)
            .into_iter()
            .filter(|s| q.accepts(s))
            .collect()
    })
}

/// Streams the systems matching `q` to `emit` in deterministic order, one
/// `S^p` at a time. `emit` returns `false` to stop early. Returns whether the
/// output was truncated by the query limit.
pub fn enumerate_each(
    q: &EnumerationQuery,
    mut emit: impl FnMut(SphericalSystem) -> bool,
) -> Result<bool, EnumerateError> {
    if q.rs.rank() > q.rank_cap {
        return Err(EnumerateError::RankCap {
            rank: q.rs.rank(),
            cap: q.rank_cap,
        });
    }
    let mut seen: HashSet<SphericalSystem> = HashSet::new();
    let mut count = 0usize;
    for sp in sp_candidates(&q.rs) {
        for sys in systems_for_sp(q, sp) {
            if !seen.insert(sys.clone()) {
                continue;
            }
            if q.limit.is_some_and(|l| count >= l) {
                return Ok(true);
            }
            count += 1;
            if !emit(sys) {
                return Ok(false);
            }
        }
    }
    Ok(false)
}

pub fn enumerate(q: &EnumerationQuery) -> Result<Enumeration, EnumerateError> {
    let mut systems = Vec::new();
    let truncated = enumerate_each(q, |s| {
        systems.push(s);
        true
    })?;
    Ok(Enumeration { systems, truncated })
}

/// Distinguished subsets that are not (*)-distinguished, over every system
/// matching `q`.
pub fn probe_distinguished_not_star(
    q: &EnumerationQuery,
) -> Result<Vec<(SphericalSystem, ColorSet)>, EnumerateError> {
    let systems = enumerate(q)?.systems;
    let hits = par::flat_map(systems, |sys| {
        let reports = all_reports(&sys).expect("enumerated systems have colors");
        reports
            .into_iter()
            .filter(|r| r.distinguished && !r.star)
            .map(|r| (sys.clone(), r.delta_prime))
            .collect()
    });
    Ok(hits)
}

/// Whether some color is moved by two or more simple roots.
pub fn has_shared_colors(sys: &SphericalSystem) -> bool {
    sys.apart().iter().any(|r| r.moved_by.len() > 1)
}

/// Renames the A-part as the enumerator does: `d<i>+` / `d<i>-` after the
/// least simple root moving the record, `+` for the larger row.
pub fn rename_records(sys: &SphericalSystem) -> SphericalSystem {
    let mut recs: Vec<ARecord> = sys.apart().to_vec();
    recs.sort_by(|a, b| lex_cmp(a.moved_by, b.moved_by).then_with(|| b.row.cmp(&a.row)));
    let mut out = Vec::with_capacity(recs.len());
    let mut last: Option<usize> = None;
    for r in recs {
        let first = r.moved_by.first().unwrap_or(0);
        let sign = if last == Some(first) { '-' } else { '+' };
        last = Some(first);
        out.push(ARecord {
            name: format!("d{}{}", first + 1, sign),
            ..r
        });
    }
    SphericalSystem::new(
        sys.root_system().clone(),
        sys.sp(),
        sys.sigma().to_vec(),
        out,
    )
    .expect("renaming keeps the system well-formed")
}

/// Image of the system under the diagram automorphism `perm` of its root
/// system, with records renamed canonically.
pub fn apply_automorphism(sys: &SphericalSystem, perm: &[usize]) -> SphericalSystem {
    let map_set = |s: RootSet| -> RootSet { s.iter().map(|i| perm[i]).collect() };
    let sigma = sys
        .sigma()
        .iter()
        .map(|g| {
            let mut v = vec![0; g.len()];
            for (i, &c) in g.coeffs().iter().enumerate() {
                v[perm[i]] = c;
            }
            LatticeVector(v)
        })
        .collect();
    let apart = sys
        .apart()
        .iter()
        .map(|r| ARecord {
            moved_by: map_set(r.moved_by),
            ..r.clone()
        })
        .collect();
    let image = SphericalSystem::new(sys.root_system().clone(), map_set(sys.sp()), sigma, apart)
        .expect("automorphic image is well-formed");
    rename_records(&image)
}

/// Representative of the orbit under the Dynkin involution: the one whose
/// canonical text comes first.
pub fn canonical_mod_aut(sys: &SphericalSystem) -> SphericalSystem {
    let own = rename_records(sys);
    let perm = sys.root_system().dynkin_involution();
    let image = apply_automorphism(sys, &perm);
    let a = crate::format::print_system(&own);
    let b = crate::format::print_system(&image);
    if b < a {
        image
    } else {
        own
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(token: &str) -> usize {
        let q = EnumerationQuery::new(RootSystem::parse(token).unwrap());
        enumerate(&q).unwrap().systems.len()
    }

    #[test]
    fn a1_has_four_systems() {
        let q = EnumerationQuery::new(RootSystem::parse("A1").unwrap());
        let e = enumerate(&q).unwrap();
        assert!(!e.truncated);
        assert_eq!(e.systems.len(), 4);
        let full = e.systems.iter().find(|s| s.apart().len() == 2).unwrap();
        assert_eq!(full.apart()[0].row, vec![1]);
        assert_eq!(full.apart()[1].row, vec![1]);
    }

    #[test]
    fn rank_zero_only() {
        let mut q = EnumerationQuery::new(RootSystem::parse("B3").unwrap());
        q.max_rank = Some(0);
        assert_eq!(enumerate(&q).unwrap().systems.len(), 8);
    }

    #[test]
    fn deterministic_and_valid() {
        let q = EnumerationQuery::new(RootSystem::parse("A2").unwrap());
        let a = enumerate(&q).unwrap();
        let b = enumerate(&q).unwrap();
        assert_eq!(a, b);
        assert!(a.systems.iter().all(|s| validate(s).is_empty()));
        assert!(count("B2") > 4);
    }

    #[test]
    fn limit_truncates() {
        let mut q = EnumerationQuery::new(RootSystem::parse("A2").unwrap());
        q.limit = Some(3);
        let e = enumerate(&q).unwrap();
        assert_eq!(e.systems.len(), 3);
        assert!(e.truncated);
    }

    #[test]
    fn rank_cap() {
        let mut q = EnumerationQuery::new(RootSystem::parse("A3").unwrap());
        q.rank_cap = 2;
        assert!(matches!(enumerate(&q), Err(EnumerateError::RankCap { .. })));
    }

    #[test]
    fn row_pairs_window() {
        // Coroot row (2, -1): the free entry ranges over [-2, 1].
        let p = row_pairs(&[2, -1], 0);
        assert_eq!(
            p,
            vec![(vec![1, 1], vec![1, -2]), (vec![1, 0], vec![1, -1])]
        );
        let p = row_pairs(&[2, -2], 0);
        assert_eq!(p.len(), 3);
        assert_eq!(p[2], (vec![1, -1], vec![1, -1]));
    }
}
