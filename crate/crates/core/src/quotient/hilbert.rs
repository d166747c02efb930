//! Hilbert bases of the monoids `{x ∈ ℕ^k : R x = 0}` and `{x ∈ ℕ^k : R x >= 0}`.
//!
//! Extreme rays come from the double-description method; every Hilbert
//! basis element then lies in the half-open parallelepiped spanned by some
//! linearly independent set of rays, which bounds its coordinate sum. Points
//! up to that bound are scanned by increasing degree and kept when no earlier
//! generator can be subtracted inside the monoid.

use serde::{Deserialize, Serialize};

use super::lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Kernel,
    Halfspace,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| lattice::gcd(g, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    v
}

#[derive(Clone)]
struct Ray {
    v: Vec<i64>,
    zeros: u128,
}

/// Constraints `c·x >= 0` describing the cone, excluding `x >= 0`.
fn constraints(rows: &[Vec<i64>], mode: Mode) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for r in rows {
        if r.iter().all(|&x| x == 0) {
            continue;
        }
        out.push(r.clone());
        if mode == Mode::Kernel {
            out.push(r.iter().map(|x| -x).collect());
        }
    }
    out
}

/// Primitive extreme rays of the cone `{x >= 0} ∩ (R x = 0 | R x >= 0)` in ℝ^k,
/// sorted lexicographically.
pub fn extreme_rays(rows: &[Vec<i64>], k: usize, mode: Mode) -> Vec<Vec<i64>> {
    let cons = constraints(rows, mode);
    assert!(
        k + cons.len() <= 128,
        "too many constraints for the ray enumerator"
    );
    let mut rays: Vec<Ray> = (0..k)
        .map(|j| {
            let mut v = vec![0; k];
            v[j] = 1;
            let zeros = (0..k).filter(|&i| i != j).fold(0u128, |z, i| z | (1 << i));
            Ray { v, zeros }
        })
        .collect();
    for (ci, c) in cons.iter().enumerate() {
        let bit = 1u128 << (k + ci);
        let vals: Vec<i64> = rays.iter().map(|r| dot(c, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, &val) in rays.iter().zip(&vals) {
            if val >= 0 {
                let mut r = r.clone();
                if val == 0 {
                    r.zeros |= bit;
                }
                next.push(r);
            }
        }
        for (p, &vp) in rays.iter().zip(&vals) {
            if vp <= 0 {
                continue;
            }
            for (n, &vn) in rays.iter().zip(&vals) {
                if vn >= 0 {
                    continue;
                }
                let common = p.zeros & n.zeros;
                let adjacent = rays
                    .iter()
                    .all(|t| std::ptr::eq(t, p) || std::ptr::eq(t, n) || common & !t.zeros != 0);
                if !adjacent {
                    continue;
                }
                let v: Vec<i64> = p.v.iter().zip(&n.v).map(|(a, b)| vp * b - vn * a).collect();
                next.push(Ray {
                    v: primitive(v),
                    zeros: common | bit,
                });
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<i64>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}

fn in_cone(rows: &[Vec<i64>], mode: Mode, x: &[i64]) -> bool {
    rows.iter().all(|r| {
        let v = dot(r, x);
        match mode {
            Mode::Kernel => v == 0,
            Mode::Halfspace => v >= 0,
        }
    })
}

/// Calls `f` on every vector of `len` non-negative entries summing to `deg`.
fn compositions(len: usize, deg: usize, f: &mut impl FnMut(&[i64])) {
    fn go(buf: &mut Vec<i64>, pos: usize, left: usize, f: &mut impl FnMut(&[i64])) {
        if pos + 1 == buf.len() {
            buf[pos] = left as i64;
            f(buf);
            return;
        }
        for v in (0..=left).rev() {
            buf[pos] = v as i64;
            go(buf, pos + 1, left - v, f);
        }
    }
    if len == 0 {
        return;
    }
    let mut buf = vec![0; len];
    go(&mut buf, 0, deg, f);
}

/// Coordinate-sum bound on Hilbert basis elements.
pub fn degree_bound(rays: &[Vec<i64>]) -> usize {
    if rays.is_empty() {
        return 0;
    }
    let d = lattice::rank(rays);
    let mut norms: Vec<i64> = rays.iter().map(|r| r.iter().sum()).collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    let top: i64 = norms.iter().take(d).sum();
    top.max(norms[0]) as usize
}

/// Sparse-term order used for canonical output.
pub fn term_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let ta = a
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x));
    let tb = b
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x));
    ta.cmp(tb)
}

/// The minimal generating set of the monoid, in canonical order.
pub fn hilbert_basis(rows: &[Vec<i64>], k: usize, mode: Mode) -> Vec<Vec<i64>> {
    let rays = extreme_rays(rows, k, mode);
    if rays.is_empty() {
        return Vec::new();
    }
    let support: Vec<usize> = (0..k).filter(|&j| rays.iter().any(|r| r[j] != 0)).collect();
    let bound = degree_bound(&rays);
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut x = vec![0i64; k];
    for deg in 1..=bound {
        let mut found = Vec::new();
        compositions(support.len(), deg, &mut |c| {
            for (&j, &v) in support.iter().zip(c) {
                x[j] = v;
            }
            if !in_cone(rows, mode, &x) {
                return;
            }
            let reducible = basis.iter().any(|h| {
                let y: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
                y.iter().all(|&v| v >= 0) && in_cone(rows, mode, &y)
            });
            if !reducible {
                found.push(x.clone());
            }
        });
        basis.extend(found);
    }
    basis.sort_by(|a, b| term_cmp(a, b));
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(
            hilbert_basis(&[vec![1, -1]], 2, Mode::Kernel),
            vec![vec![1, 1]]
        );
        assert_eq!(
            hilbert_basis(&[vec![1, 0]], 2, Mode::Kernel),
            vec![vec![0, 1]]
        );
        assert_eq!(
            hilbert_basis(&[vec![1, 0], vec![-1, 1]], 2, Mode::Halfspace),
            vec![vec![1, 1], vec![0, 1]]
        );
        assert!(hilbert_basis(&[vec![1, 0], vec![-1, 1]], 2, Mode::Kernel).is_empty());
        assert_eq!(
            hilbert_basis(&[], 3, Mode::Kernel),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn non_simplicial_monoid() {
        // 2x = y + z: generators (1,2,0), (1,1,1), (1,0,2).
        let hb = hilbert_basis(&[vec![2, -1, -1]], 3, Mode::Kernel);
        assert_eq!(hb, vec![vec![1, 1, 1], vec![1, 2, 0], vec![1, 0, 2]]);
    }

    #[test]
    fn rays_of_a_wedge() {
        let rays = extreme_rays(&[vec![1, -2]], 2, Mode::Halfspace);
        assert_eq!(rays, vec![vec![1, 0], vec![2, 1]]);
        let hb = hilbert_basis(&[vec![1, -2]], 2, Mode::Halfspace);
        assert_eq!(hb, vec![vec![1, 0], vec![2, 1]]);
    }
}
