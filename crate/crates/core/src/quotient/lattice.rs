//! Small-matrix integer linear algebra: rank, row Hermite normal form and
//! integer kernels. Matrices here are at most a few dozen entries wide, so
//! everything runs in `i128` with overflow checks.

fn gcd_ext(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, x, y) with a*x + b*y = g >= 0
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Rank over the rationals (fraction-free elimination).
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let g = gcd_ext(a, b).0;
                let (fa, fb) = (b / g, a / g);
                for j in 0..ncols {
                    m[i][j] = fb * m[i][j] - fa * m[r][j];
                }
                normalize_row(&mut m[i]);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn normalize_row(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |g, &x| gcd_ext(g, x).0);
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

/// Row Hermite normal form: the canonical echelon basis of the row lattice,
/// with positive pivots and entries above each pivot reduced into `[0, pivot)`.
/// Zero rows are dropped.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (h, _) = hermite_with_transform(rows);
    h.into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| r.into_iter().map(to_i64).collect())
        .collect()
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("lattice entry exceeds i64")
}

/// Returns `(H, U)` with `U * A = H`, `U` unimodular and `H` in row Hermite form
/// (zero rows at the bottom).
fn hermite_with_transform(rows: &[Vec<i64>]) -> (Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let n = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == n {
            break;
        }
        // Euclid down column c over rows r..n.
        for i in r + 1..n {
            if h[i][c] == 0 {
                continue;
            }
            let (a, b) = (h[r][c], h[i][c]);
            let (g, x, y) = gcd_ext(a, b);
            let (p, q) = (-b / g, a / g);
            // [x y; p q] has determinant x*q - y*p = (a x + b y)/g = 1.
            combine(&mut h, r, i, x, y, p, q);
            combine(&mut u, r, i, x, y, p, q);
        }
        if h[r][c] == 0 {
            continue;
        }
        if h[r][c] < 0 {
            for v in h[r].iter_mut() {
                *v = -*v;
            }
            for v in u[r].iter_mut() {
                *v = -*v;
            }
        }
        let piv = h[r][c];
        for i in 0..r {
            let q = h[i][c].div_euclid(piv);
            if q != 0 {
                for j in 0..ncols {
                    h[i][j] -= q * h[r][j];
                }
                for j in 0..n {
                    u[i][j] -= q * u[r][j];
                }
            }
        }
        r += 1;
    }
    (h, u)
}

fn combine(m: &mut [Vec<i128>], r: usize, i: usize, x: i128, y: i128, p: i128, q: i128) {
    for j in 0..m[r].len() {
        let (a, b) = (m[r][j], m[i][j]);
        m[r][j] = x * a + y * b;
        m[i][j] = p * a + q * b;
    }
}

/// A ℤ-basis of `{x ∈ ℤ^k : R x = 0}` for `R` with `k` columns, in Hermite form.
pub fn kernel_basis(r: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return Vec::new();
    }
    // Left kernel of R^T.
    let t: Vec<Vec<i64>> = (0..k)
        .map(|j| r.iter().map(|row| row[j]).collect())
        .collect();
    if r.is_empty() {
        return (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let (h, u) = hermite_with_transform(&t);
    let basis: Vec<Vec<i64>> = h
        .iter()
        .zip(&u)
        .filter(|(hr, _)| hr.iter().all(|&x| x == 0))
        .map(|(_, ur)| ur.iter().map(|&x| to_i64(x)).collect())
        .collect();
    hermite_rows(&basis)
}

/// Whether two families generate the same sublattice.
pub fn same_lattice(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    hermite_rows(a) == hermite_rows(b)
}
