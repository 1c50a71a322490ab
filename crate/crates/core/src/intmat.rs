//! Small dense integer matrices.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == i64::from(r == c)))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|r| self.row(r).iter().map(|&v| v as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }
    /// Nonzero invariant factors of the Smith normal form, in divisibility
    /// order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let mut a: Vec<Vec<i128>> = (0..self.rows).map(|r| self.row(r).iter().map(|&v| v as i128).collect()).collect();
        let (m, n) = (self.rows, self.cols);
        let mut out = Vec::new();
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero pivot in the remaining block
            let Some((pr, pc)) = (t..m)
                .flat_map(|r| (t..n).map(move |c| (r, c)))
                .filter(|&(r, c)| a[r][c] != 0)
                .min_by_key(|&(r, c)| a[r][c].abs())
            else {
                break;
            };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
            let mut clean = true;
            for r in t + 1..m {
                let q = a[r][t] / a[t][t];
                for c in t..n {
                    a[r][c] -= q * a[t][c];
                }
                clean &= a[r][t] == 0;
            }
            for c in t + 1..n {
                let q = a[t][c] / a[t][t];
                for row in a.iter_mut().skip(t) {
                    row[c] -= q * row[t];
                }
                clean &= a[t][c] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            if let Some(r) = (t + 1..m).find(|&r| (t + 1..n).any(|c| a[r][c] % a[t][t] != 0)) {
                for c in t..n {
                    a[t][c] += a[r][c];
                }
                continue;
            }
            out.push(a[t][t].abs() as i64);
            t += 1;
        }
        out
    }

    /// Rank over the integers.
    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn bilinear(v: &[i64], m: &IntMatrix, w: &[i64]) -> i64 {
    let mw = m.mul_vec(w);
    v.iter().zip(&mw).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.det(), 1);
        let z = IntMatrix::from_rows(&[vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]]);
        assert_eq!(z.det(), 0);
        let p = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(p.det(), -1);
    }

    #[test]
    fn mul_and_transpose() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let p = m.mul(&m.transpose());
        assert_eq!(p, IntMatrix::from_rows(&[vec![14, 32], vec![32, 77]]));
        assert_eq!(m.mul_vec(&[1, 0, -1]), vec![-2, -2]);
    }

    #[test]
    fn smith_factors() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(m.invariant_factors(), vec![2, 4]);
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(m.invariant_factors(), vec![1, 6]);
        let m = IntMatrix::from_rows(&[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(IntMatrix::zeros(2, 3).rank(), 0);
    }
}
