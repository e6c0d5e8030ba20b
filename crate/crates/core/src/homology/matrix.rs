//! Sparse integer matrices for boundary operators and chain maps, plus a
//! small dense matrix type used for unimodular transforms and homology
//! coordinates. Dense arithmetic is generic over the exact integer types of
//! [`super::smith::SnfInt`] so the fast machine-word path and the
//! arbitrary-precision fallback share one implementation.

use std::collections::BTreeMap;

use super::smith::{Overflow, SnfInt};

/// A sparse matrix over `i64`, stored column-major with sorted, duplicate-free
/// columns. Boundary and chain-map entries are tiny; `i64` is plenty here and
/// anything downstream that could grow goes through checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMat {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMat {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for j in 0..n {
            m.columns[j].push((j, 1));
        }
        m
    }

    /// Builds from triplets, accumulating duplicates and dropping zeros.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of bounds");
            let e = acc[c].entry(r).or_insert(0);
            *e = e.checked_add(v).expect("entry overflow while accumulating");
        }
        SparseIntMat {
            rows,
            cols,
            columns: acc
                .into_iter()
                .map(|m| m.into_iter().filter(|&(_, v)| v != 0).collect())
                .collect(),
        }
    }

    /// All-ones row, used as the augmentation of a degree-0 chain group.
    pub fn ones_row(cols: usize) -> Self {
        Self::from_triplets(1, cols, (0..cols).map(|j| (0usize, j, 1i64)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c]
            .binary_search_by_key(&r, |&(row, _)| row)
            .map(|k| self.columns[c][k].1)
            .unwrap_or(0)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    /// `self * other`, with `i128` accumulation to keep intermediate sums
    /// exact; entries must land back in `i64`.
    pub fn mul(&self, other: &SparseIntMat) -> SparseIntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Vec::with_capacity(other.cols);
        for j in 0..other.cols {
            let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
            for &(k, v) in &other.columns[j] {
                for &(r, w) in &self.columns[k] {
                    *acc.entry(r).or_insert(0) += v as i128 * w as i128;
                }
            }
            out.push(
                acc.into_iter()
                    .filter(|&(_, v)| v != 0)
                    .map(|(r, v)| (r, i64::try_from(v).expect("product entry overflow")))
                    .collect(),
            );
        }
        SparseIntMat {
            rows: self.rows,
            cols: other.cols,
            columns: out,
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &SparseIntMat) -> SparseIntMat {
        assert_eq!(self.rows, other.rows);
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseIntMat {
            rows: self.rows,
            cols: self.cols + other.cols,
            columns,
        }
    }

    /// Stacks matrices vertically; all must share the column count.
    pub fn vstack(mats: &[&SparseIntMat]) -> SparseIntMat {
        assert!(!mats.is_empty());
        let cols = mats[0].cols;
        let rows = mats.iter().map(|m| m.rows).sum();
        let mut out = SparseIntMat::zero(rows, cols);
        let mut offset = 0;
        for m in mats {
            assert_eq!(m.cols, cols);
            for (c, col) in m.columns.iter().enumerate() {
                out.columns[c].extend(col.iter().map(|&(r, v)| (r + offset, v)));
            }
            offset += m.rows;
        }
        for col in &mut out.columns {
            col.sort_by_key(|&(r, _)| r);
        }
        out
    }

    pub fn permute_rows(&self, perm: &[usize]) -> SparseIntMat {
        assert_eq!(perm.len(), self.rows);
        let mut out = self.clone();
        for col in &mut out.columns {
            for e in col.iter_mut() {
                e.0 = perm[e.0];
            }
            col.sort_by_key(|&(r, _)| r);
        }
        out
    }

    pub fn permute_cols(&self, perm: &[usize]) -> SparseIntMat {
        assert_eq!(perm.len(), self.cols);
        let mut columns = vec![Vec::new(); self.cols];
        for (c, col) in self.columns.iter().enumerate() {
            columns[perm[c]] = col.clone();
        }
        SparseIntMat {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }
}

/// Dense row-major matrix over an exact integer type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: SnfInt> DenseMat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        DenseMat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    /// Keeps the columns `range` of `self`.
    pub fn column_block(&self, start: usize, len: usize) -> DenseMat<T> {
        let mut out = DenseMat::zero(self.rows, len);
        for r in 0..self.rows {
            for (jo, j) in (start..start + len).enumerate() {
                *out.at_mut(r, jo) = self.at(r, j).clone();
            }
        }
        out
    }

    /// Keeps the rows `start..start+len` of `self`.
    pub fn row_block(&self, start: usize, len: usize) -> DenseMat<T> {
        let mut out = DenseMat::zero(len, self.cols);
        for (ro, r) in (start..start + len).enumerate() {
            for j in 0..self.cols {
                *out.at_mut(ro, j) = self.at(r, j).clone();
            }
        }
        out
    }

    pub fn mul_dense(&self, other: &DenseMat<T>) -> Result<DenseMat<T>, Overflow> {
        assert_eq!(self.cols, other.rows);
        let mut out = DenseMat::<T>::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.checked_mul(b)?;
                    let cur = out.at(r, c).checked_add(&prod)?;
                    *out.at_mut(r, c) = cur;
                }
            }
        }
        Ok(out)
    }

    /// `self * sparse`, exploiting sparsity of the right factor.
    pub fn mul_sparse(&self, other: &SparseIntMat) -> Result<DenseMat<T>, Overflow> {
        assert_eq!(self.cols, other.rows());
        let mut out = DenseMat::<T>::zero(self.rows, other.cols());
        for c in 0..other.cols() {
            for &(k, v) in other.column(c) {
                let v = T::from_i64(v);
                for r in 0..self.rows {
                    let a = self.at(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    let prod = a.checked_mul(&v)?;
                    let cur = out.at(r, c).checked_add(&prod)?;
                    *out.at_mut(r, c) = cur;
                }
            }
        }
        Ok(out)
    }

    /// `sparse * self`, exploiting sparsity of the left factor.
    pub fn mul_sparse_left(sparse: &SparseIntMat, dense: &DenseMat<T>) -> Result<DenseMat<T>, Overflow> {
        assert_eq!(sparse.cols(), dense.rows);
        let mut out = DenseMat::<T>::zero(sparse.rows(), dense.cols);
        for k in 0..sparse.cols() {
            for &(r, v) in sparse.column(k) {
                let v = T::from_i64(v);
                for c in 0..dense.cols {
                    let b = dense.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = v.checked_mul(b)?;
                    let cur = out.at(r, c).checked_add(&prod)?;
                    *out.at_mut(r, c) = cur;
                }
            }
        }
        Ok(out)
    }

    pub fn triplets(&self) -> Vec<(usize, usize, T)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.at(r, c);
                if !v.is_zero() {
                    out.push((r, c, v.clone()));
                }
            }
        }
        out
    }

    pub fn map<U: SnfInt>(&self, f: impl Fn(&T) -> U) -> DenseMat<U> {
        DenseMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_accumulates_and_multiplies() {
        let a = SparseIntMat::from_triplets(2, 2, vec![(0, 0, 1), (0, 0, 1), (1, 1, 3)]);
        assert_eq!(a.get(0, 0), 2);
        assert_eq!(a.nnz(), 2);
        let b = SparseIntMat::identity(2);
        assert_eq!(a.mul(&b), a);
        let c = SparseIntMat::from_triplets(2, 1, vec![(0, 0, 1), (1, 0, -1)]);
        let ac = a.mul(&c);
        assert_eq!(ac.get(0, 0), 2);
        assert_eq!(ac.get(1, 0), -3);
    }

    #[test]
    fn stack_and_permute() {
        let a = SparseIntMat::from_triplets(1, 2, vec![(0, 0, 1), (0, 1, 2)]);
        let b = SparseIntMat::from_triplets(1, 2, vec![(0, 0, 3)]);
        let v = SparseIntMat::vstack(&[&a, &b]);
        assert_eq!(v.get(1, 0), 3);
        let h = a.hstack(&b);
        assert_eq!(h.cols(), 4);
        assert_eq!(h.get(0, 2), 3);
        let p = v.permute_rows(&[1, 0]);
        assert_eq!(p.get(0, 0), 3);
    }

    #[test]
    fn dense_blocks() {
        let m = DenseMat::<i64>::identity(3);
        let b = m.column_block(1, 2);
        assert_eq!(b.cols(), 2);
        assert_eq!(*b.at(1, 0), 1);
        assert_eq!(*b.at(0, 0), 0);
        let r = m.row_block(2, 1);
        assert_eq!(*r.at(0, 2), 1);
    }
}
