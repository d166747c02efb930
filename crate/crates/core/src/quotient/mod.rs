//! Distinguished subsets of colors, quotient systems and the numerical data
//! attached to them (defect, reductivity, center weights, weight monoids).

pub mod feasibility;
pub mod hilbert;
pub mod lattice;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par;
use crate::rootkit::{LatticeVector, RootSet};
use crate::system::{
    build_colors, localize_sigma, ARecord, ColorKind, ColorSet, ColorTable, SphericalSystem,
    SystemError,
};

pub use hilbert::Mode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("the colors are not distinguished")]
    NotDistinguished,
    #[error("the quotient roots do not form a basis of the kernel lattice {kernel:?}")]
    NotStar { kernel: Vec<Vec<i64>> },
    #[error("{0}")]
    Precondition(String),
}

/// Combinations of the spherical roots, in Σ-coordinates, turned into vectors
/// over the simple roots.
pub fn to_simple_coords(sys: &SphericalSystem, coords: &[i64]) -> LatticeVector {
    let mut v = LatticeVector::zero(sys.root_system().rank());
    for (g, &c) in sys.sigma().iter().zip(coords) {
        v = v.add(&g.scaled(c));
    }
    v
}

/// Minimal generators of the monoid cut out by `rows`, as vectors over Σ.
pub fn hilbert_basis(rows: &[Vec<i64>], k: usize, mode: Mode) -> Vec<LatticeVector> {
    hilbert::hilbert_basis(rows, k, mode)
        .into_iter()
        .map(LatticeVector)
        .collect()
}

/// Everything known about one subset of colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub delta_prime: ColorSet,
    pub names: Vec<String>,
    /// Integer positive coefficients on `delta_prime`, in color order.
    pub witness: Option<Vec<i64>>,
    pub distinguished: bool,
    pub star: bool,
    pub smooth: bool,
    pub homogeneous: bool,
    /// Generators of the kernel monoid in Σ-coordinates.
    pub kernel_generators: Vec<Vec<i64>>,
    pub quotient: Option<SphericalSystem>,
}

/// Positive-combination certificate, if `set` is distinguished. The empty
/// set is never distinguished.
pub fn distinguished_witness(table: &ColorTable, set: ColorSet, k: usize) -> Option<Vec<i64>> {
    if set.is_empty() {
        return None;
    }
    feasibility::positive_combination(&table.rows(set), k)
}

pub fn is_distinguished(
    sys: &SphericalSystem,
    set: ColorSet,
) -> Result<Option<Vec<i64>>, QuotientError> {
    let table = build_colors(sys)?;
    Ok(distinguished_witness(&table, set, sys.rank()))
}

/// The quotient by `set` assuming the kernel generators are already known.
fn assemble_quotient(
    sys: &SphericalSystem,
    table: &ColorTable,
    set: ColorSet,
    gens: &[Vec<i64>],
) -> SphericalSystem {
    let rs = sys.root_system();
    let sp: RootSet = (0..rs.rank())
        .filter(|&a| table.moved_by(a).is_subset(set))
        .collect();
    let sigma: Vec<LatticeVector> = gens.iter().map(|g| to_simple_coords(sys, g)).collect();
    let simple: RootSet = sigma
        .iter()
        .filter_map(|g| {
            let t = g.terms();
            (t.len() == 1 && t[0].1 == 1).then_some(t[0].0)
        })
        .collect();
    let apart: Vec<ARecord> = sys
        .apart()
        .iter()
        .filter(|r| !r.moved_by.is_disjoint(simple))
        .map(|r| ARecord {
            name: r.name.clone(),
            moved_by: r.moved_by.intersection(simple),
            row: gens
                .iter()
                .map(|g| r.row.iter().zip(g).map(|(a, b)| a * b).sum())
                .collect(),
        })
        .collect();
    SphericalSystem::new(rs.clone(), sp, sigma, apart).expect("quotient of a well-formed system")
}

/// Full analysis of one color subset.
pub fn report_with(sys: &SphericalSystem, table: &ColorTable, set: ColorSet) -> QuotientReport {
    let k = sys.rank();
    let witness = distinguished_witness(table, set, k);
    let rows = table.rows(set);
    let gens = hilbert::hilbert_basis(&rows, k, Mode::Kernel);
    let distinguished = witness.is_some();
    let star = distinguished && lattice::same_lattice(&gens, &lattice::kernel_basis(&rows, k));
    let quotient = star.then(|| assemble_quotient(sys, table, set, &gens));
    let smooth = star
        && gens
            .iter()
            .all(|g| g.iter().filter(|&&x| x != 0).count() == 1 && g.iter().sum::<i64>() == 1);
    QuotientReport {
        delta_prime: set,
        names: table.names(set),
        witness,
        distinguished,
        star,
        smooth,
        homogeneous: star && gens.is_empty(),
        kernel_generators: gens,
        quotient,
    }
}

pub fn report(sys: &SphericalSystem, set: ColorSet) -> Result<QuotientReport, QuotientError> {
    let table = build_colors(sys)?;
    Ok(report_with(sys, &table, set))
}

/// Reports for every non-empty subset of colors, in subset-lexicographic order.
pub fn all_reports(sys: &SphericalSystem) -> Result<Vec<QuotientReport>, QuotientError> {
    let table = build_colors(sys)?;
    Ok(all_reports_with(sys, &table))
}

pub fn all_reports_with(sys: &SphericalSystem, table: &ColorTable) -> Vec<QuotientReport> {
    let mut subsets: Vec<ColorSet> = table.all().subsets().filter(|s| !s.is_empty()).collect();
    subsets.sort_by(|a, b| crate::bitset::lex_cmp(*a, *b));
    par::map(subsets, |s| report_with(sys, table, s))
}

/// The quotient system. The empty set gives back the system itself.
pub fn quotient(sys: &SphericalSystem, set: ColorSet) -> Result<SphericalSystem, QuotientError> {
    if set.is_empty() {
        return Ok(sys.clone());
    }
    let table = build_colors(sys)?;
    if set.iter().any(|i| i >= table.len()) {
        return Err(QuotientError::Precondition(
            "color index out of range".into(),
        ));
    }
    let r = report_with(sys, &table, set);
    if !r.distinguished {
        return Err(QuotientError::NotDistinguished);
    }
    r.quotient.ok_or_else(|| QuotientError::NotStar {
        kernel: lattice::kernel_basis(&table.rows(set), sys.rank()),
    })
}

/// `card Δ − card Σ`.
pub fn defect(sys: &SphericalSystem) -> Result<i64, QuotientError> {
    Ok(build_colors(sys)?.len() as i64 - sys.rank() as i64)
}

/// Reductivity with a non-negative integer combination of spherical roots on
/// which every color is positive. A system without colors is reductive.
pub fn is_reductive(sys: &SphericalSystem) -> Result<Option<Vec<i64>>, QuotientError> {
    let table = build_colors(sys)?;
    Ok(feasibility::strictly_positive_point(
        &table.matrix(),
        sys.rank(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubsetKind {
    Distinguished,
    Star,
    Homogeneous,
}

fn has_kind(r: &QuotientReport, kind: SubsetKind) -> bool {
    match kind {
        SubsetKind::Distinguished => r.distinguished,
        SubsetKind::Star => r.star,
        SubsetKind::Homogeneous => r.homogeneous,
    }
}

/// Inclusion-minimal subsets of the requested kind, in subset-lexicographic order.
pub fn minimal_subsets(
    sys: &SphericalSystem,
    kind: SubsetKind,
) -> Result<Vec<ColorSet>, QuotientError> {
    let table = build_colors(sys)?;
    Ok(minimal_subsets_with(sys, &table, kind))
}

pub fn minimal_subsets_with(
    sys: &SphericalSystem,
    table: &ColorTable,
    kind: SubsetKind,
) -> Vec<ColorSet> {
    let hits: Vec<ColorSet> = all_reports_with(sys, table)
        .into_iter()
        .filter(|r| has_kind(r, kind))
        .map(|r| r.delta_prime)
        .collect();
    minimal_of(&hits)
}

fn minimal_of(sets: &[ColorSet]) -> Vec<ColorSet> {
    let mut out: Vec<ColorSet> = sets
        .iter()
        .copied()
        .filter(|s| !sets.iter().any(|t| t != s && t.is_subset(*s)))
        .collect();
    out.sort_by(|a, b| crate::bitset::lex_cmp(*a, *b));
    out
}

/// Whether `set` is (*)-distinguished and no proper non-empty subset is.
fn is_minimal_star(sys: &SphericalSystem, table: &ColorTable, set: ColorSet) -> bool {
    !set.is_empty()
        && report_with(sys, table, set).star
        && set
            .subsets()
            .filter(|s| !s.is_empty() && *s != set)
            .all(|s| !report_with(sys, table, s).star)
}

fn quotient_defect(q: &SphericalSystem) -> i64 {
    defect(q).expect("quotient of a valid system has a color table")
}

/// Minimal (*)-distinguished subsets whose quotient has larger defect, with the jump.
pub fn higher_defect_quotients(
    sys: &SphericalSystem,
) -> Result<Vec<(ColorSet, i64)>, QuotientError> {
    let table = build_colors(sys)?;
    let d = table.len() as i64 - sys.rank() as i64;
    let reports = all_reports_with(sys, &table);
    let stars: Vec<ColorSet> = reports
        .iter()
        .filter(|r| r.star)
        .map(|r| r.delta_prime)
        .collect();
    let minimal = minimal_of(&stars);
    Ok(minimal
        .into_iter()
        .filter_map(|s| {
            let r = reports
                .iter()
                .find(|r| r.delta_prime == s)
                .expect("report present");
            let jump = quotient_defect(r.quotient.as_ref().expect("star has a quotient")) - d;
            (jump > 0).then_some((s, jump))
        })
        .collect())
}

/// Evaluation of one spherical root against the conditions that single out
/// the roots carrying a defect jump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub gamma: usize,
    pub restricted: Vec<String>,
    pub minimal_star: bool,
    pub jump_ok: bool,
    pub not_cuspidal: bool,
}

impl WitnessCheck {
    pub fn holds(&self) -> bool {
        self.minimal_star && self.jump_ok && self.not_cuspidal
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub jump: i64,
    pub checks: Vec<WitnessCheck>,
    /// Indices into Σ of the roots meeting all conditions.
    pub witnesses: Vec<usize>,
    /// Whether exactly `jump + 1` witnesses were found.
    pub count_matches: bool,
}

/// Colors of `local` corresponding to `set` ⊆ colors of the parent: an A
/// color that survives is itself, any other color is included when it is
/// moved by a simple root moving a color of `set`.
fn restrict_colors(parent: &ColorTable, set: ColorSet, local: &ColorTable) -> ColorSet {
    let roots: RootSet = set.iter().fold(RootSet::EMPTY, |acc, i| {
        acc.union(parent.colors[i].moved_by)
    });
    let a_names: Vec<&str> = set
        .iter()
        .filter(|&i| parent.colors[i].kind == ColorKind::A)
        .map(|i| parent.colors[i].name.as_str())
        .collect();
    (0..local.len())
        .filter(|&j| {
            let c = &local.colors[j];
            match c.kind {
                ColorKind::A => a_names.contains(&c.name.as_str()),
                _ => !c.moved_by.is_disjoint(roots),
            }
        })
        .collect()
}

pub fn higher_defect_witnesses(
    sys: &SphericalSystem,
    set: ColorSet,
) -> Result<WitnessReport, QuotientError> {
    let table = build_colors(sys)?;
    if !is_minimal_star(sys, &table, set) {
        return Err(QuotientError::Precondition(
            "the colors are not a minimal (*)-distinguished subset".into(),
        ));
    }
    let r = report_with(sys, &table, set);
    let d = table.len() as i64 - sys.rank() as i64;
    let jump = quotient_defect(r.quotient.as_ref().expect("star")) - d;
    if jump < 1 {
        return Err(QuotientError::Precondition(format!(
            "the quotient does not raise the defect (jump {jump})"
        )));
    }
    let all = sys.root_system().all();
    let checks: Vec<WitnessCheck> = (0..sys.rank())
        .map(|g| {
            let rest: Vec<usize> = (0..sys.rank()).filter(|&j| j != g).collect();
            let local = localize_sigma(sys, &rest);
            let lt = build_colors(&local).expect("localization of a valid system");
            let sub = restrict_colors(&table, set, &lt);
            let minimal_star = is_minimal_star(&local, &lt, sub);
            let jump_ok = minimal_star && {
                let lq = report_with(&local, &lt, sub).quotient.expect("star");
                let ld = lt.len() as i64 - local.rank() as i64;
                quotient_defect(&lq) - ld == jump - 1
            };
            WitnessCheck {
                gamma: g,
                restricted: lt.names(sub),
                minimal_star,
                jump_ok,
                not_cuspidal: local.support() != all,
            }
        })
        .collect();
    let witnesses: Vec<usize> = checks
        .iter()
        .filter(|c| c.holds())
        .map(|c| c.gamma)
        .collect();
    Ok(WitnessReport {
        jump,
        count_matches: witnesses.len() as i64 == jump + 1,
        checks,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterData {
    pub q_colors: ColorSet,
    /// ℤ-basis of the lattice cut out by the chosen colors, in Σ-coordinates.
    pub n_basis: Vec<Vec<i64>>,
    /// For each basis vector, the weight `Σ c(D,γ) λ*_D` over the remaining
    /// colors, in fundamental-weight coordinates.
    pub lambda_weights: Vec<Vec<i64>>,
    pub dim_c: i64,
}

/// Homogeneity including the empty set, which is homogeneous exactly when
/// there are no spherical roots.
fn homogeneous(sys: &SphericalSystem, table: &ColorTable, set: ColorSet) -> bool {
    if set.is_empty() {
        sys.rank() == 0
    } else {
        report_with(sys, table, set).homogeneous
    }
}

pub fn center_data(sys: &SphericalSystem, q: ColorSet) -> Result<CenterData, QuotientError> {
    let table = build_colors(sys)?;
    if !homogeneous(sys, &table, q) {
        return Err(QuotientError::Precondition(
            "the colors are not homogeneous".into(),
        ));
    }
    if q.subsets().any(|s| s != q && homogeneous(sys, &table, s)) {
        return Err(QuotientError::Precondition(
            "the homogeneous subset is not minimal".into(),
        ));
    }
    let rs = sys.root_system();
    let n = rs.rank();
    let k = sys.rank();
    let n_basis = lattice::kernel_basis(&table.rows(q), k);
    let iota = rs.dynkin_involution();
    let lambda_weights: Vec<Vec<i64>> = n_basis
        .iter()
        .map(|v| {
            let mut w = vec![0i64; n];
            for (i, c) in table.colors.iter().enumerate() {
                if q.contains(i) {
                    continue;
                }
                let val: i64 = c.row.iter().zip(v).map(|(a, b)| a * b).sum();
                for a in c.moved_by.iter() {
                    w[iota[a]] += val;
                }
            }
            w
        })
        .collect();
    let s_q: RootSet = (0..n).filter(|&a| table.moved_by(a).is_subset(q)).collect();
    // Roots of the Levi factor in fundamental-weight coordinates.
    let levi: Vec<Vec<i64>> = s_q
        .iter()
        .map(|j| (0..n).map(|i| rs.cartan(i, j)).collect())
        .collect();
    let mut both = levi.clone();
    both.extend(lambda_weights.iter().cloned());
    let rank_mod = lattice::rank(&both) - lattice::rank(&levi);
    Ok(CenterData {
        q_colors: q,
        n_basis,
        lambda_weights,
        dim_c: (n - s_q.len()) as i64 - rank_mod as i64,
    })
}

/// Generators of `{γ ∈ ℕΣ : c(D,γ) >= 0 for D in q}`, over the simple roots.
pub fn weight_monoid(
    sys: &SphericalSystem,
    q: ColorSet,
) -> Result<Vec<LatticeVector>, QuotientError> {
    let table = build_colors(sys)?;
    if !homogeneous(sys, &table, q) {
        return Err(QuotientError::Precondition(
            "the colors are not homogeneous".into(),
        ));
    }
    let mut out: Vec<LatticeVector> =
        hilbert::hilbert_basis(&table.rows(q), sys.rank(), Mode::Halfspace)
            .iter()
            .map(|g| to_simple_coords(sys, g))
            .collect();
    out.sort_by(crate::rootkit::canonical_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootkit::RootSystem;

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

    fn cs(v: &[usize]) -> ColorSet {
        v.iter().copied().collect()
    }

    #[test]
    fn fix_b4_distinguished() {
        let s = fix_b4();
        assert_eq!(is_distinguished(&s, cs(&[0])).unwrap(), Some(vec![1]));
        assert_eq!(is_distinguished(&s, cs(&[1])).unwrap(), None);
        assert_eq!(is_distinguished(&s, cs(&[0, 1])).unwrap(), None);
        assert_eq!(is_distinguished(&s, ColorSet::EMPTY).unwrap(), None);
    }

    #[test]
    fn fix_b4_quotients() {
        let s = fix_b4();
        let q1 = quotient(&s, cs(&[0])).unwrap();
        assert_eq!(q1.sp(), [0, 3].into_iter().collect());
        assert_eq!(q1.sigma(), &[v(&[0, 0, 1, 1])]);
        let r = report(&s, cs(&[1, 2])).unwrap();
        assert!(r.star && !r.smooth);
        assert_eq!(r.quotient.unwrap().sigma(), &[v(&[1, 1, 1, 1])]);
        let r = report(&s, cs(&[0, 1, 2])).unwrap();
        assert!(r.homogeneous);
        assert_eq!(r.quotient.unwrap().sp(), RootSet::full(4));
        assert_eq!(quotient(&s, ColorSet::EMPTY).unwrap(), s);
        assert!(matches!(
            quotient(&s, cs(&[1])),
            Err(QuotientError::NotDistinguished)
        ));
    }

    #[test]
    fn fix_b4_numbers() {
        let s = fix_b4();
        assert_eq!(defect(&s).unwrap(), 1);
        assert_eq!(is_reductive(&s).unwrap(), None);
        assert_eq!(
            minimal_subsets(&s, SubsetKind::Homogeneous).unwrap(),
            vec![cs(&[0, 2])]
        );
        assert_eq!(
            minimal_subsets(&s, SubsetKind::Star).unwrap(),
            vec![cs(&[0]), cs(&[1, 2])]
        );
        assert!(higher_defect_quotients(&s).unwrap().is_empty());
        let c = center_data(&s, cs(&[0, 2])).unwrap();
        assert!(c.n_basis.is_empty());
        assert_eq!(c.dim_c, 1);
        assert!(center_data(&s, cs(&[0, 1, 2])).is_err());
        assert_eq!(
            weight_monoid(&s, cs(&[0, 2])).unwrap(),
            vec![v(&[1, 1, 1, 1]), v(&[0, 0, 1, 1])]
        );
        assert_eq!(
            weight_monoid(&s, cs(&[0, 1, 2])).unwrap(),
            vec![v(&[1, 1, 1, 1])]
        );
        assert!(higher_defect_witnesses(&s, cs(&[0])).is_err());
    }

    #[test]
    fn rank_zero_numbers() {
        let s = SphericalSystem::rank_zero(RootSystem::parse("B2").unwrap(), RootSet::full(2));
        assert_eq!(defect(&s).unwrap(), 0);
        assert_eq!(is_reductive(&s).unwrap(), Some(vec![]));
        assert!(minimal_subsets(&s, SubsetKind::Homogeneous)
            .unwrap()
            .is_empty());
        assert_eq!(center_data(&s, ColorSet::EMPTY).unwrap().dim_c, 0);
    }
}
