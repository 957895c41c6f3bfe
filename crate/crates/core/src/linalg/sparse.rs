use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Sparse matrix with arbitrary-precision integer entries, stored by column
/// with rows sorted inside each column. There are never duplicate
/// positions or stored zeros, so structural equality is matrix equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<BigInt>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            col_ptr: vec![0; cols + 1],
            row_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(size: usize) -> Self {
        SparseIntMatrix {
            rows: size,
            cols: size,
            col_ptr: (0..=size).collect(),
            row_idx: (0..size).collect(),
            values: vec![BigInt::one(); size],
        }
    }

    /// Duplicate positions are summed; zero sums are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Domain(format!(
                    "entry ({r}, {c}) outside a {rows}×{cols} matrix"
                )));
            }
            columns[c].push((r, v));
        }
        Ok(Self::from_column_lists(rows, columns))
    }

    /// Columns given as `(row, value)` lists in any order.
    pub fn from_columns<V: Into<BigInt>>(
        rows: usize,
        columns: Vec<Vec<(usize, V)>>,
    ) -> Result<Self> {
        if let Some(r) = columns
            .iter()
            .flatten()
            .map(|(r, _)| *r)
            .find(|&r| r >= rows)
        {
            return Err(Error::Domain(format!(
                "row {r} outside a matrix with {rows} rows"
            )));
        }
        let columns = columns
            .into_iter()
            .map(|col| col.into_iter().map(|(r, v)| (r, v.into())).collect())
            .collect();
        Ok(Self::from_column_lists(rows, columns))
    }

    fn from_column_lists(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let cols = columns.len();
        let mut col_ptr = Vec::with_capacity(cols + 1);
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        col_ptr.push(0);
        for mut col in columns {
            col.sort_by_key(|(r, _)| *r);
            let mut iter = col.into_iter().peekable();
            while let Some((r, mut v)) = iter.next() {
                while let Some((_, w)) = iter.next_if(|(r2, _)| *r2 == r) {
                    v += w;
                }
                if !v.is_zero() {
                    row_idx.push(r);
                    values.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        SparseIntMatrix {
            rows,
            cols,
            col_ptr,
            row_idx,
            values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero entries of column `c` as `(row, value)`, rows increasing.
    pub fn column(&self, c: usize) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        let range = self.col_ptr[c]..self.col_ptr[c + 1];
        self.row_idx[range.clone()]
            .iter()
            .copied()
            .zip(&self.values[range])
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        let range = self.col_ptr[c]..self.col_ptr[c + 1];
        match self.row_idx[range.clone()].binary_search(&r) {
            Ok(pos) => self.values[range.start + pos].clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Entries in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, BigInt)> {
        (0..self.cols)
            .flat_map(|c| self.column(c).map(move |(r, v)| (r, c, v.clone())))
            .collect()
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.rows];
        for c in 0..self.cols {
            for (r, v) in self.column(c) {
                columns[r].push((c, v.clone()));
            }
        }
        SparseIntMatrix::from_column_lists(self.cols, columns)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Domain(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = (0..other.cols)
            .map(|c| {
                let mut acc: FxHashMap<usize, BigInt> = FxHashMap::default();
                for (k, w) in other.column(c) {
                    for (r, v) in self.column(k) {
                        *acc.entry(r).or_default() += v * w;
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        Ok(SparseIntMatrix::from_column_lists(self.rows, columns))
    }

    pub fn sub(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Domain(
                "subtracting matrices of different shapes".into(),
            ));
        }
        let columns = (0..self.cols)
            .map(|c| {
                self.column(c)
                    .map(|(r, v)| (r, v.clone()))
                    .chain(other.column(c).map(|(r, v)| (r, -v)))
                    .collect()
            })
            .collect();
        Ok(SparseIntMatrix::from_column_lists(self.rows, columns))
    }

    pub fn diagonal_sum(&self) -> BigInt {
        (0..self.cols.min(self.rows)).map(|c| self.get(c, c)).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut dense = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (c, w) in self.col_ptr.windows(2).enumerate() {
            for k in w[0]..w[1] {
                dense[self.row_idx[k]][c] = self.values[k].clone();
            }
        }
        dense
    }

    /// `%%MatrixMarket matrix coordinate integer general`, 1-based indices.
    pub fn to_matrix_market(&self) -> String {
        let mut out = String::from("%%MatrixMarket matrix coordinate integer general\n");
        writeln!(out, "{} {} {}", self.rows, self.cols, self.nnz()).unwrap();
        for (r, c, v) in self.triplets() {
            writeln!(out, "{} {} {}", r + 1, c + 1, v).unwrap();
        }
        out
    }

    pub fn from_matrix_market(text: &str) -> Result<SparseIntMatrix> {
        let bad = |msg: &str| Error::Domain(format!("matrix market: {msg}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        if !header.starts_with("%%MatrixMarket matrix coordinate integer general") {
            return Err(bad("unsupported header"));
        }
        let mut lines = lines.filter(|l| !l.starts_with('%'));
        let size = lines.next().ok_or_else(|| bad("missing size line"))?;
        let dims: Vec<usize> = size
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad size line")))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(bad("size line needs three numbers"));
        };
        let mut triplets = Vec::with_capacity(nnz);
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = fields[..] else {
                return Err(bad("entry needs three fields"));
            };
            let r: usize = r.parse().map_err(|_| bad("bad row"))?;
            let c: usize = c.parse().map_err(|_| bad("bad column"))?;
            let v: BigInt = v.parse().map_err(|_| bad("bad value"))?;
            if r == 0 || c == 0 {
                return Err(bad("indices are 1-based"));
            }
            triplets.push((r - 1, c - 1, v));
        }
        if triplets.len() != nnz {
            return Err(bad("entry count does not match header"));
        }
        SparseIntMatrix::from_triplets(rows, cols, triplets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, t: &[(usize, usize, i64)]) -> SparseIntMatrix {
        SparseIntMatrix::from_triplets(
            rows,
            cols,
            t.iter().map(|&(r, c, v)| (r, c, BigInt::from(v))),
        )
        .unwrap()
    }

    #[test]
    fn duplicates_are_summed_and_zeros_dropped() {
        let a = m(2, 2, &[(0, 0, 1), (0, 0, 2), (1, 1, 3), (1, 1, -3)]);
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(0, 0), BigInt::from(3));
        assert!(SparseIntMatrix::from_triplets(1, 1, [(1, 0, BigInt::one())]).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = m(2, 3, &[(0, 0, 1), (0, 2, 2), (1, 1, -1)]);
        let b = m(3, 1, &[(0, 0, 1), (1, 0, 1), (2, 0, 1)]);
        let p = a.mul(&b).unwrap();
        assert_eq!(
            p.to_dense(),
            vec![vec![BigInt::from(3)], vec![BigInt::from(-1)]]
        );
        assert_eq!(a.transpose().transpose(), a);
        assert!(b.mul(&b).is_err());
    }

    #[test]
    fn matrix_market_text() {
        let a = m(3, 2, &[(0, 0, 1), (2, 1, -7)]);
        let text = a.to_matrix_market();
        assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general\n3 2 2\n"));
        assert!(text.contains("3 2 -7"));
        assert_eq!(SparseIntMatrix::from_matrix_market(&text).unwrap(), a);
    }
}
