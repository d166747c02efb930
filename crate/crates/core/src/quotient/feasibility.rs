//! Exact feasibility of `{ y >= 0, A y >= b }` by phase-one simplex over the
//! rationals, with Bland's rule so it always terminates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Finds a rational point of `{ y >= 0, A y >= b }`, or `None` if empty.
/// `a` has one row per constraint.
pub fn find_point(a: &[Vec<i64>], b: &[i64], nv: usize) -> Option<Vec<Q>> {
    let m = a.len();
    if m == 0 {
        return Some(vec![Q::zero(); nv]);
    }
    // Columns: y (nv), surplus s (m), artificial t (m).
    // Row i: sign_i * (a_i y - s_i) + t_i = sign_i * b_i, with rhs >= 0.
    let ncols = nv + 2 * m;
    let mut tab: Vec<Vec<Q>> = Vec::with_capacity(m);
    let mut rhs: Vec<Q> = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if b[i] < 0 { -1 } else { 1 };
        let mut row = vec![Q::zero(); ncols];
        for j in 0..nv {
            row[j] = q(sign * a[i][j]);
        }
        row[nv + i] = q(-sign);
        row[nv + m + i] = Q::one();
        tab.push(row);
        rhs.push(q(sign * b[i]));
    }
    let mut basis: Vec<usize> = (0..m).map(|i| nv + m + i).collect();
    // Objective: minimise the sum of artificials, i.e. maximise -sum t.
    // Reduced costs for non-basic columns: cost_j = -sum_i tab[i][j] (artificials basic).
    loop {
        let mut reduced = vec![Q::zero(); ncols];
        for (j, red) in reduced.iter_mut().enumerate() {
            let cj = if j >= nv + m { Q::one() } else { Q::zero() };
            let mut z = Q::zero();
            for i in 0..m {
                if basis[i] >= nv + m {
                    z += &tab[i][j];
                }
            }
            *red = cj - z;
        }
        // Bland: smallest index with negative reduced cost.
        let entering = (0..ncols).find(|&j| !basis.contains(&j) && reduced[j].is_negative());
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if tab[i][e].is_positive() {
                let ratio = &rhs[i] / &tab[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((l, _)) = leave else {
            // Unbounded descent cannot happen for a sum of non-negatives.
            unreachable!("phase-one objective is bounded below")
        };
        let piv = tab[l][e].clone();
        for x in tab[l].iter_mut() {
            *x /= &piv;
        }
        rhs[l] /= &piv;
        for i in 0..m {
            if i != l && !tab[i][e].is_zero() {
                let f = tab[i][e].clone();
                for j in 0..ncols {
                    let d = &f * &tab[l][j];
                    tab[i][j] -= d;
                }
                let d = &f * &rhs[l];
                rhs[i] -= d;
            }
        }
        basis[l] = e;
    }
    let infeas: Q = (0..m)
        .filter(|&i| basis[i] >= nv + m)
        .map(|i| rhs[i].clone())
        .fold(Q::zero(), |a, b| a + b);
    if infeas.is_positive() {
        return None;
    }
    let mut y = vec![Q::zero(); nv];
    for i in 0..m {
        if basis[i] < nv {
            y[basis[i]] = rhs[i].clone();
        }
    }
    Some(y)
}

/// Clears denominators, returning the smallest positive integer multiple.
pub fn to_integer_vector(v: &[Q]) -> Vec<i64> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(l.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter()
        .map(|x| {
            let x = if g.is_zero() { x } else { x / &g };
            i64::try_from(x).expect("certificate coefficient fits in i64")
        })
        .collect()
}

/// A positive combination `x > 0` of the given rows with non-negative
/// values everywhere (`x^T rows >= 0`), as integers; `None` if impossible.
pub fn positive_combination(rows: &[Vec<i64>], ncols: usize) -> Option<Vec<i64>> {
    if rows.is_empty() {
        return None;
    }
    // x = 1 + y, y >= 0:  sum_i y_i rows[i][j] >= -sum_i rows[i][j].
    let a: Vec<Vec<i64>> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect();
    let b: Vec<i64> = (0..ncols)
        .map(|j| -rows.iter().map(|r| r[j]).sum::<i64>())
        .collect();
    let y = find_point(&a, &b, rows.len())?;
    let x: Vec<Q> = y.into_iter().map(|v| v + Q::one()).collect();
    Some(to_integer_vector(&x))
}

/// A non-negative `y` with every row strictly positive on it (`rows * y > 0`),
/// as integers. No rows: the zero vector.
pub fn strictly_positive_point(rows: &[Vec<i64>], ncols: usize) -> Option<Vec<i64>> {
    if rows.is_empty() {
        return Some(vec![0; ncols]);
    }
    let b = vec![1; rows.len()];
    let y = find_point(rows, &b, ncols)?;
    Some(to_integer_vector(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_feasible_and_infeasible() {
        assert!(find_point(&[vec![1, -1], vec![-1, 1]], &[1, 1], 2).is_none());
        let p = find_point(&[vec![1, 0], vec![0, 1]], &[2, 3], 2).unwrap();
        assert!(p[0] >= q(2) && p[1] >= q(3));
        assert!(find_point(&[vec![1]], &[-5], 1).is_some());
    }

    #[test]
    fn combinations() {
        assert_eq!(positive_combination(&[vec![1, 0]], 2), Some(vec![1]));
        assert_eq!(positive_combination(&[vec![1, -1]], 2), None);
        assert_eq!(positive_combination(&[vec![1, 0], vec![1, -1]], 2), None);
        let w = positive_combination(&[vec![1, -1], vec![-1, 1]], 2).unwrap();
        assert_eq!(w, vec![1, 1]);
        assert_eq!(strictly_positive_point(&[vec![1]], 1), Some(vec![1]));
        assert_eq!(
            strictly_positive_point(&[vec![1, -1], vec![-1, 1]], 2),
            None
        );
        assert_eq!(strictly_positive_point(&[], 3), Some(vec![0, 0, 0]));
        assert_eq!(positive_combination(&[vec![], vec![]], 0), Some(vec![1, 1]));
    }
}
