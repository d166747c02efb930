//! Projective colors, decompositions, primitivity, tails and the reduction
//! procedure that breaks a spherical system into primitive pieces.

use serde::{Deserialize, Serialize};

use crate::bitset::lex_cmp;
use crate::catalog::{classify_tail_shape, TailShape};
use crate::quotient::{self, all_reports_with, QuotientError, QuotientReport};
use crate::rootkit::{LatticeVector, RootSet};
use crate::system::{
    build_colors, localize_simple, ColorKind, ColorSet, ColorTable, SphericalSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveColor {
    pub index: usize,
    pub name: String,
    /// Simple roots moving the color.
    pub support: RootSet,
    /// Whether the support meets the support of the non-simple spherical roots.
    pub meets_non_simple: bool,
}

fn non_simple_support(sys: &SphericalSystem) -> RootSet {
    sys.sigma()
        .iter()
        .filter(|g| {
            let t = g.terms();
            !(t.len() == 1 && t[0].1 == 1)
        })
        .fold(RootSet::EMPTY, |acc, g| acc.union(g.support()))
}

fn projective_with(sys: &SphericalSystem, table: &ColorTable) -> Vec<ProjectiveColor> {
    let other = non_simple_support(sys);
    table
        .colors
        .iter()
        .enumerate()
        .filter(|(_, c)| c.kind == ColorKind::A && c.row.iter().all(|&x| x >= 0))
        .map(|(index, c)| ProjectiveColor {
            index,
            name: c.name.clone(),
            support: c.moved_by,
            meets_non_simple: !c.moved_by.is_disjoint(other),
        })
        .collect()
}

pub fn projective_colors(sys: &SphericalSystem) -> Result<Vec<ProjectiveColor>, QuotientError> {
    let table = build_colors(sys)?;
    Ok(projective_with(sys, &table))
}

pub fn is_cuspidal(sys: &SphericalSystem) -> bool {
    sys.support() == sys.root_system().all()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    /// Verdicts for the five conditions, in order.
    pub conditions: [bool; 5],
    pub holds: bool,
}

fn find(reports: &[QuotientReport], set: ColorSet) -> Option<&QuotientReport> {
    reports.iter().find(|r| r.delta_prime == set)
}

fn decomposition_with(
    sys: &SphericalSystem,
    reports: &[QuotientReport],
    d1: ColorSet,
    d2: ColorSet,
) -> DecompositionReport {
    let rs = sys.root_system();
    let c1 = !d1.is_empty() && !d2.is_empty() && d1.is_disjoint(d2);
    let r1 = find(reports, d1);
    let r2 = find(reports, d2);
    let r3 = find(reports, d1.union(d2));
    let star = |r: Option<&QuotientReport>| r.is_some_and(|r| r.star);
    let c2 = c1 && star(r1) && star(r2) && star(r3);
    let (mut c3, mut c4, mut c5) = (false, false, false);
    if star(r1) && star(r2) {
        let (r1, r2) = (r1.unwrap(), r2.unwrap());
        let q1 = r1.quotient.as_ref().unwrap();
        let q2 = r2.quotient.as_ref().unwrap();
        let lost = |q: &SphericalSystem| -> Vec<LatticeVector> {
            sys.sigma()
                .iter()
                .filter(|g| !q.sigma().contains(g))
                .cloned()
                .collect()
        };
        let (l1, l2) = (lost(q1), lost(q2));
        c3 = !l1.iter().any(|g| l2.contains(g));
        let e1 = q1.sp().difference(sys.sp());
        let e2 = q2.sp().difference(sys.sp());
        c4 = e1
            .iter()
            .all(|a| e2.iter().all(|b| a != b && rs.roots_orthogonal(a, b)));
        c5 = r1.smooth || r2.smooth;
    }
    let conditions = [c1, c2, c3, c4, c5];
    DecompositionReport {
        conditions,
        holds: conditions.iter().all(|&c| c),
    }
}

pub fn is_decomposition(
    sys: &SphericalSystem,
    d1: ColorSet,
    d2: ColorSet,
) -> Result<DecompositionReport, QuotientError> {
    let table = build_colors(sys)?;
    let mut reports = Vec::new();
    for s in [d1, d2, d1.union(d2)] {
        if !s.is_empty() && s.iter().all(|i| i < table.len()) {
            reports.push(quotient::report_with(sys, &table, s));
        }
    }
    Ok(decomposition_with(sys, &reports, d1, d2))
}

/// The least decomposing pair `(Δ1, Δ2)` with `Δ1` before `Δ2`.
fn decomposing_pair(
    sys: &SphericalSystem,
    reports: &[QuotientReport],
) -> Option<(ColorSet, ColorSet)> {
    let stars: Vec<ColorSet> = reports
        .iter()
        .filter(|r| r.star)
        .map(|r| r.delta_prime)
        .collect();
    let mut pairs: Vec<(ColorSet, ColorSet)> = Vec::new();
    for &a in &stars {
        for &b in &stars {
            if a.is_disjoint(b) && lex_cmp(a, b).is_lt() {
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_by(|x, y| lex_cmp(x.0, y.0).then(lex_cmp(x.1, y.1)));
    pairs
        .into_iter()
        .find(|&(a, b)| decomposition_with(sys, reports, a, b).holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tail {
    /// Index into Σ.
    pub gamma: usize,
    pub root: LatticeVector,
    pub shape: TailShape,
    pub colors: ColorSet,
    pub names: Vec<String>,
    pub quotient: SphericalSystem,
}

/// Tail pattern of the spherical root with index `j`, including the colour
/// condition of the one-root `b(1)` case.
pub fn tail_shape(sys: &SphericalSystem, j: usize) -> Option<TailShape> {
    let rs = sys.root_system();
    let gamma = &sys.sigma()[j];
    let shape = classify_tail_shape(rs, gamma, sys.sp())?;
    if shape != TailShape::B(1) {
        return Some(shape);
    }
    let alpha = gamma.terms()[0].0;
    let others: Vec<usize> = (0..sys.rank())
        .filter(|&i| i != j && rs.inner2(alpha, &sys.sigma()[i]) != 0)
        .collect();
    let [other] = others.as_slice() else {
        return None;
    };
    let recs = sys.a_of(alpha);
    (recs.len() == 2 && recs.iter().all(|&r| sys.apart()[r].row[*other] == -1)).then_some(shape)
}

fn tails_with(sys: &SphericalSystem, table: &ColorTable, reports: &[QuotientReport]) -> Vec<Tail> {
    let rs = sys.root_system();
    let mut out = Vec::new();
    for j in 0..sys.rank() {
        let Some(shape) = tail_shape(sys, j) else {
            continue;
        };
        let gamma = &sys.sigma()[j];
        let perp: RootSet = (0..rs.rank())
            .filter(|&b| rs.inner2(b, gamma) == 0)
            .collect();
        let hit = reports.iter().find(|r| {
            r.quotient
                .as_ref()
                .is_some_and(|q| q.sigma() == std::slice::from_ref(gamma) && q.sp() == perp)
        });
        if let Some(r) = hit {
            out.push(Tail {
                gamma: j,
                root: gamma.clone(),
                shape,
                colors: r.delta_prime,
                names: table.names(r.delta_prime),
                quotient: r.quotient.clone().unwrap(),
            });
        }
    }
    out
}

pub fn detect_tails(sys: &SphericalSystem) -> Result<Vec<Tail>, QuotientError> {
    let table = build_colors(sys)?;
    let reports = all_reports_with(sys, &table);
    Ok(tails_with(sys, &table, &reports))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Marker {
    Tail {
        root: LatticeVector,
        shape: TailShape,
        colors: Vec<String>,
    },
    HigherDefect {
        colors: Vec<String>,
        jump: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityReport {
    pub primitive: bool,
    pub cuspidal: bool,
    pub projective: Vec<String>,
    pub decomposing_pair: Option<(Vec<String>, Vec<String>)>,
    pub markers: Vec<Marker>,
}

fn primitivity_with(
    sys: &SphericalSystem,
    table: &ColorTable,
    reports: &[QuotientReport],
) -> PrimitivityReport {
    let cuspidal = is_cuspidal(sys);
    let projective: Vec<String> = projective_with(sys, table)
        .into_iter()
        .map(|p| p.name)
        .collect();
    let pair = decomposing_pair(sys, reports).map(|(a, b)| (table.names(a), table.names(b)));
    let mut markers: Vec<Marker> = tails_with(sys, table, reports)
        .into_iter()
        .map(|t| Marker::Tail {
            root: t.root,
            shape: t.shape,
            colors: t.names,
        })
        .collect();
    let d = table.len() as i64 - sys.rank() as i64;
    let stars: Vec<ColorSet> = reports
        .iter()
        .filter(|r| r.star)
        .map(|r| r.delta_prime)
        .collect();
    for r in reports.iter().filter(|r| r.star) {
        let minimal = !stars
            .iter()
            .any(|&t| t != r.delta_prime && t.is_subset(r.delta_prime));
        if !minimal {
            continue;
        }
        let qd = quotient::defect(r.quotient.as_ref().unwrap()).expect("quotient colors");
        if qd > d {
            markers.push(Marker::HigherDefect {
                colors: r.names.clone(),
                jump: qd - d,
            });
        }
    }
    PrimitivityReport {
        primitive: cuspidal && projective.is_empty() && pair.is_none(),
        cuspidal,
        projective,
        decomposing_pair: pair,
        markers,
    }
}

pub fn is_primitive(sys: &SphericalSystem) -> Result<PrimitivityReport, QuotientError> {
    let table = build_colors(sys)?;
    let reports = all_reports_with(sys, &table);
    Ok(primitivity_with(sys, &table, &reports))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepTag {
    ParabolicInduction {
        s_prime: RootSet,
    },
    FiberProduct {
        d1: Vec<String>,
        d2: Vec<String>,
        d3: Vec<String>,
    },
    ProjectiveFibration {
        color: String,
    },
    Primitive {
        markers: Vec<Marker>,
    },
    /// Rank at most two: settled by the known classification.
    Closed,
    /// None of the reduction cases applies and the system is not primitive.
    Unreduced,
}

impl StepTag {
    pub fn label(&self) -> &'static str {
        match self {
            StepTag::ParabolicInduction { .. } => "parabolic-induction",
            StepTag::FiberProduct { .. } => "fiber-product",
            StepTag::ProjectiveFibration { .. } => "projective-fibration",
            StepTag::Primitive { .. } => "primitive",
            StepTag::Closed => "closed",
            StepTag::Unreduced => "unreduced",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub tag: StepTag,
    pub children: Vec<SphericalSystem>,
}

/// One step of the reduction: parabolic induction, then fiber product, then
/// projective fibration, in that order.
pub fn reduction_step(sys: &SphericalSystem) -> Result<ReductionStep, QuotientError> {
    let table = build_colors(sys)?;
    let all = sys.root_system().all();
    let s_prime = sys.support().union(sys.sp());
    if s_prime != all {
        return Ok(ReductionStep {
            tag: StepTag::ParabolicInduction { s_prime },
            children: vec![localize_simple(sys, s_prime)],
        });
    }
    let reports = all_reports_with(sys, &table);
    if let Some((a, b)) = decomposing_pair(sys, &reports) {
        let q = |s: ColorSet| {
            find(&reports, s)
                .and_then(|r| r.quotient.clone())
                .expect("star")
        };
        return Ok(ReductionStep {
            tag: StepTag::FiberProduct {
                d1: table.names(a),
                d2: table.names(b),
                d3: table.names(a.union(b)),
            },
            children: vec![q(a), q(b), q(a.union(b))],
        });
    }
    for p in projective_with(sys, &table) {
        if let Some(q) =
            find(&reports, ColorSet::singleton(p.index)).and_then(|r| r.quotient.clone())
        {
            return Ok(ReductionStep {
                tag: StepTag::ProjectiveFibration { color: p.name },
                children: vec![q],
            });
        }
    }
    let prim = primitivity_with(sys, &table, &reports);
    let tag = if prim.primitive {
        StepTag::Primitive {
            markers: prim.markers,
        }
    } else if sys.rank() <= 2 {
        StepTag::Closed
    } else {
        StepTag::Unreduced
    };
    Ok(ReductionStep {
        tag,
        children: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionNode {
    pub system: SphericalSystem,
    pub tag: StepTag,
    pub children: Vec<ReductionNode>,
}

impl ReductionNode {
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> Vec<&ReductionNode> {
        if self.children.is_empty() {
            vec![self]
        } else {
            self.children.iter().flat_map(|c| c.leaves()).collect()
        }
    }
}

const MAX_DEPTH: usize = 64;

/// Repeats [`reduction_step`] until every leaf is primitive or of rank at
/// most two. The root is always expanded.
pub fn reduction_tree(sys: &SphericalSystem) -> Result<ReductionNode, QuotientError> {
    expand(sys, 0)
}

fn expand(sys: &SphericalSystem, depth: usize) -> Result<ReductionNode, QuotientError> {
    if depth > MAX_DEPTH {
        return Err(QuotientError::Precondition(
            "reduction depth limit exceeded".into(),
        ));
    }
    let step = reduction_step(sys)?;
    let children = step
        .children
        .iter()
        .map(|c| {
            if c.rank() <= 2 {
                Ok(ReductionNode {
                    system: c.clone(),
                    tag: StepTag::Closed,
                    children: Vec::new(),
                })
            } else {
                expand(c, depth + 1)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ReductionNode {
        system: sys.clone(),
        tag: step.tag,
        children,
    })
}
