use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix stored by rows; entries are sorted by column.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Adds `v` at (r, c).
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) => {
                row[i].1 += v;
                if row[i].1.is_zero() {
                    row.remove(i);
                }
            }
            Err(i) => {
                if v != 0 {
                    row.insert(i, (c, BigInt::from(v)));
                }
            }
        }
    }

    pub fn from_dense(m: &[Vec<i64>]) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut s = SparseMatrix::zeros(rows, cols);
        for (r, row) in m.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                s.add(r, c, v);
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// self · other
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, BigInt> = std::collections::BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(BigInt::zero) += a * b;
                }
            }
            out.data[r] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }
}

/// Smith normal form summary: the nonzero invariant factors (a divisibility
/// chain of positive integers) and hence the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// row_a -= q · row_b, on sorted sparse rows
fn axpy(a: &[(usize, BigInt)], q: &BigInt, b: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(q * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - q * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Invariant factors of an integer matrix, computed exactly.
///
/// Unit pivots are eliminated first on the sparse rows (the common case for
/// boundary matrices); whatever remains is reduced densely.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let mut rows: Vec<Vec<(usize, BigInt)>> = m.data.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut units = 0usize;
    loop {
        // sparsest row holding a unit entry
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if best.is_some_and(|(b, _)| rows[b].len() <= row.len()) {
                continue;
            }
            if let Some(pos) = row.iter().position(|(_, v)| v.abs().is_one()) {
                best = Some((r, pos));
            }
        }
        let Some((pr, pos)) = best else { break };
        let pivot_row = rows.swap_remove(pr);
        let (pc, pv) = pivot_row[pos].clone();
        for row in rows.iter_mut() {
            if let Ok(i) = row.binary_search_by_key(&pc, |e| e.0) {
                // pv is ±1, so the quotient is exact
                let q = &row[i].1 * &pv;
                *row = axpy(row, &q, &pivot_row);
            }
        }
        rows.retain(|r| !r.is_empty());
        units += 1;
    }
    let mut factors: Vec<BigInt> = vec![BigInt::one(); units];
    if !rows.is_empty() {
        // compact the remaining columns and go dense
        let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
        cols.sort_unstable();
        cols.dedup();
        let mut dense = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row {
                let j = cols.binary_search(c).expect("column present");
                dense[r][j] = v.clone();
            }
        }
        factors.extend(dense_diagonal(dense));
    }
    SmithForm { invariant_factors: normalize_chain(factors) }
}

/// Diagonalizes a dense matrix with unimodular row and column operations and
/// returns the absolute values of the nonzero diagonal entries.
fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..nr {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    for j in t..nc {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..nc {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    for row in a.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            // move a smaller remainder into the pivot slot
            let mut best = (t, t);
            for i in t..nr {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..nc {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Turns a list of nonzero diagonal entries into invariant factors d1 | d2 | ...
fn normalize_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(m: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&SparseMatrix::from_dense(m))
            .invariant_factors
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(&[vec![0, 2], vec![0, 0]]), vec![2]);
    }

    /// Determinantal divisors of a 2×2 matrix give its invariant factors directly.
    fn oracle_2x2(m: [[i64; 2]; 2]) -> Vec<i64> {
        let g1 = m.iter().flatten().fold(0i64, |a, &b| a.gcd(&b));
        let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
        match (g1, det) {
            (0, _) => vec![],
            (g, 0) => vec![g],
            (g, d) => vec![g, d / g],
        }
    }

    proptest! {
        #[test]
        fn two_by_two_matches_determinantal_divisors(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
            let m = [[a, b], [c, d]];
            prop_assert_eq!(factors(&[vec![a, b], vec![c, d]]), oracle_2x2(m));
        }

        #[test]
        fn factors_form_divisibility_chain(entries in proptest::collection::vec(-6i64..6, 12)) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            let f = factors(&m);
            for w in f.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
