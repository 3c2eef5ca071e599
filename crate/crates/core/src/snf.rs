//! Smith normal form over the integers, with transform matrices.
//!
//! Sizes here are tiny (a handful of rows, at most a few dozen columns), so
//! the classic pivot-and-reduce algorithm with full bookkeeping is plenty.

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> IMat {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IMat {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> IMat {
        let mut m = IMat::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
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

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
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

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: i64) {
        for j in 0..self.cols {
            let v = self.get(a, j) + k * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: i64) {
        for i in 0..self.rows {
            let v = self.get(i, a) + k * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j);
            self.set(a, j, v);
        }
    }
}

impl std::fmt::Debug for IMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next.
pub struct Snf {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
}

impl Snf {
    /// Diagonal entries `d[t][t]` for `t < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i64> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|t| self.d.get(t, t)).collect()
    }
}

pub fn smith_normal_form(a: &IMat) -> Snf {
    let mut d = a.clone();
    let mut u = IMat::identity(a.rows());
    let mut v = IMat::identity(a.cols());
    let n = a.rows().min(a.cols());

    let mut t = 0;
    while t < n {
        // Pick the nonzero entry of smallest magnitude in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows() {
            for j in t..d.cols() {
                let x = d.get(i, j);
                if x != 0 && pivot.map_or(true, |(pi, pj)| x.abs() < d.get(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'reduce: loop {
            // Clear the pivot column.
            for i in t + 1..d.rows() {
                let x = d.get(i, t);
                if x != 0 {
                    let q = x.div_euclid(d.get(t, t));
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                    if d.get(i, t) != 0 {
                        // Remainder is strictly smaller; promote it to pivot.
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                        continue 'reduce;
                    }
                }
            }
            // Clear the pivot row.
            for j in t + 1..d.cols() {
                let x = d.get(t, j);
                if x != 0 {
                    let q = x.div_euclid(d.get(t, t));
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                    if d.get(t, j) != 0 {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                        continue 'reduce;
                    }
                }
            }
            // Enforce divisibility of the trailing block by the pivot.
            let p = d.get(t, t);
            for i in t + 1..d.rows() {
                for j in t + 1..d.cols() {
                    if d.get(i, j) % p != 0 {
                        d.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    debug_assert_eq!(u.mul(a).mul(&v), d, "snf transform identity violated");
    Snf { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: IMat) -> Vec<i64> {
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
        let diag = snf.diagonal();
        // Off-diagonal zero.
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert_eq!(snf.d.get(i, j), 0);
                }
            }
        }
        // Divisibility chain.
        for w in diag.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0].max(1), 0, "diagonal {:?} not a chain", diag);
            }
        }
        diag
    }

    #[test]
    fn diagonal_matrix() {
        let a = IMat::from_columns(2, &[vec![4, 0], vec![0, 6]]);
        assert_eq!(check(a), vec![2, 12]);
    }

    #[test]
    fn quotient_relation_matrix() {
        // Z^2 / <(4,0), (0,4), (2,2)> = Z/2 x Z/4.
        let a = IMat::from_columns(2, &[vec![4, 0], vec![0, 4], vec![2, 2]]);
        assert_eq!(check(a), vec![2, 4]);
    }

    #[test]
    fn negative_entries() {
        let a = IMat::from_columns(2, &[vec![-2, 4], vec![4, -6]]);
        let diag = check(a);
        assert!(diag.iter().all(|&x| x >= 0));
    }

    #[test]
    fn rank_deficient() {
        let a = IMat::from_columns(2, &[vec![2, 4], vec![1, 2]]);
        assert_eq!(check(a), vec![1, 0]);
    }
}
