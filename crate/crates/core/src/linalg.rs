//! Small exact linear algebra: 3×3 matrices over the field tower and dense
//! Gaussian elimination for the handful of linear solves the geometry and
//! stability modules need.

use crate::scalar::Scalar;

/// Row-major 3×3 matrix over the scalar field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat3 {
    pub m: [Scalar; 9],
}

impl std::fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]",
            self.m[0], self.m[1], self.m[2], self.m[3], self.m[4], self.m[5], self.m[6], self.m[7], self.m[8]
        )
    }
}

impl Mat3 {
    pub fn new(m: [Scalar; 9]) -> Mat3 {
        Mat3 { m }
    }

    pub fn from_rows(r0: [Scalar; 3], r1: [Scalar; 3], r2: [Scalar; 3]) -> Mat3 {
        let [a, b, c] = r0;
        let [d, e, f] = r1;
        let [g, h, i] = r2;
        Mat3::new([a, b, c, d, e, f, g, h, i])
    }

    pub fn from_columns(c0: [Scalar; 3], c1: [Scalar; 3], c2: [Scalar; 3]) -> Mat3 {
        Mat3::from_rows(
            [c0[0].clone(), c1[0].clone(), c2[0].clone()],
            [c0[1].clone(), c1[1].clone(), c2[1].clone()],
            [c0[2].clone(), c1[2].clone(), c2[2].clone()],
        )
    }

    pub fn identity() -> Mat3 {
        let o = Scalar::one;
        let z = Scalar::zero;
        Mat3::new([o(), z(), z(), z(), o(), z(), z(), z(), o()])
    }

    pub fn diag(d0: Scalar, d1: Scalar, d2: Scalar) -> Mat3 {
        let z = Scalar::zero;
        Mat3::new([d0, z(), z(), z(), d1, z(), z(), z(), d2])
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.m[3 * r + c]
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut out: Vec<Scalar> = Vec::with_capacity(9);
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = Scalar::zero();
                for k in 0..3 {
                    acc = &acc + &(self.at(r, k) * rhs.at(k, c));
                }
                out.push(acc);
            }
        }
        Mat3::new(out.try_into().unwrap())
    }

    pub fn transpose(&self) -> Mat3 {
        let mut out = self.m.clone();
        for r in 0..3 {
            for c in 0..3 {
                out[3 * r + c] = self.at(c, r).clone();
            }
        }
        Mat3::new(out)
    }

    pub fn det(&self) -> Scalar {
        let a = |r: usize, c: usize| self.at(r, c);
        let t0 = a(0, 0) * &(&(a(1, 1) * a(2, 2)) - &(a(1, 2) * a(2, 1)));
        let t1 = a(0, 1) * &(&(a(1, 0) * a(2, 2)) - &(a(1, 2) * a(2, 0)));
        let t2 = a(0, 2) * &(&(a(1, 0) * a(2, 1)) - &(a(1, 1) * a(2, 0)));
        &(&t0 - &t1) + &t2
    }

    /// Adjugate matrix: adj(M)·M = det(M)·I. Exact, no division.
    pub fn adjugate(&self) -> Mat3 {
        let a = |r: usize, c: usize| self.at(r, c);
        let cof = |r0: usize, c0: usize, r1: usize, c1: usize| &(a(r0, c0) * a(r1, c1)) - &(a(r0, c1) * a(r1, c0));
        // adj[r][c] = cofactor of (c, r)
        Mat3::from_rows(
            [cof(1, 1, 2, 2), -cof(0, 1, 2, 2), cof(0, 1, 1, 2)],
            [-cof(1, 0, 2, 2), cof(0, 0, 2, 2), -cof(0, 0, 1, 2)],
            [cof(1, 0, 2, 1), -cof(0, 0, 2, 1), cof(0, 0, 1, 1)],
        )
    }

    pub fn apply(&self, v: &[Scalar; 3]) -> [Scalar; 3] {
        let mut out = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for c in 0..3 {
                acc = &acc + &(self.at(r, c) * &v[c]);
            }
            *slot = acc;
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Mat3 {
        let mut out = self.m.clone();
        for e in out.iter_mut() {
            *e = &*e * s;
        }
        Mat3::new(out)
    }

    /// Canonical projective representative: first nonzero entry scaled to 1.
    pub fn canonical(&self) -> Mat3 {
        for e in self.m.iter() {
            if !e.is_zero() {
                return self.scale(&e.inv().unwrap());
            }
        }
        self.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(Scalar::is_zero)
    }
}

/// Solve A x = b by Gaussian elimination. A is given as rows; returns one
/// solution if the system is consistent, None otherwise. Free variables are
/// set to zero.
pub fn solve(rows: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let n_rows = rows.len();
    assert_eq!(n_rows, rhs.len());
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n_cols {
        let Some(p) = (row..n_rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][col].inv().unwrap();
        for c in col..=n_cols {
            aug[row][c] = &aug[row][c] * &inv;
        }
        for r in 0..n_rows {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=n_cols {
                    aug[r][c] = &aug[r][c] - &(&f * &aug[row][c]);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n_rows {
            break;
        }
    }
    // Inconsistency check.
    for r in row..n_rows {
        if !aug[r][n_cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Scalar::zero(); n_cols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug[r][n_cols].clone();
    }
    Some(x)
}

/// Kernel basis of the matrix given as rows.
pub fn kernel(rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n_cols];
    let mut row = 0;
    for col in 0..n_cols {
        let Some(p) = (row..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv().unwrap();
        for c in col..n_cols {
            a[row][c] = &a[row][c] * &inv;
        }
        for r in 0..n_rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n_cols {
                    a[r][c] = &a[r][c] - &(&f * &a[row][c]);
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == n_rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..n_cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(); n_cols];
        v[free] = Scalar::one();
        for col in 0..n_cols {
            if let Some(r) = pivot_of_col[col] {
                v[col] = -&a[r][free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of the matrix given as rows.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let n_cols = rows.first().map_or(0, Vec::len);
    n_cols - kernel(rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn adjugate_inverts() {
        let m = Mat3::from_rows([s(1), s(2), s(0)], [s(0), s(1), s(4)], [s(5), s(0), s(1)]);
        let adj = m.adjugate();
        let prod = adj.mul(&m);
        let d = m.det();
        assert_eq!(prod, Mat3::diag(d.clone(), d.clone(), d));
    }

    #[test]
    fn solve_simple() {
        let rows = vec![vec![s(1), s(1)], vec![s(1), s(-1)]];
        let x = solve(&rows, &[s(3), s(1)]).unwrap();
        assert_eq!(x, vec![s(2), s(1)]);
    }

    #[test]
    fn kernel_of_rank_two() {
        let rows = vec![vec![s(1), s(0), s(-1)], vec![s(0), s(1), s(-1)]];
        let k = kernel(&rows);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![s(1), s(1), s(1)]);
        assert_eq!(rank(&rows), 2);
    }
}
