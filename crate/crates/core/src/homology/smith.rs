//! Smith normal form over the integers by sparse elimination.
//!
//! Pivots are chosen Markowitz-style (least fill-in, ties broken by smallest
//! magnitude and then position) and reduced with gcd steps until each pivot
//! divides everything that remains, so the diagonal comes out as the chain
//! of invariant factors. Elimination runs over `i64` with checked arithmetic
//! and falls back to arbitrary precision when anything overflows.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{DenseMat, SparseIntMat};

/// Marker error: a checked machine-integer operation overflowed and the
/// computation should be retried with arbitrary precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

/// Exact integer arithmetic shared by the `i64` fast path and the `BigInt`
/// fallback.
pub trait SnfInt: Clone + Eq + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn checked_add(&self, o: &Self) -> Result<Self, Overflow>;
    fn checked_sub(&self, o: &Self) -> Result<Self, Overflow>;
    fn checked_mul(&self, o: &Self) -> Result<Self, Overflow>;
    fn checked_neg(&self) -> Result<Self, Overflow>;
    /// Truncated division with remainder; the divisor is nonzero.
    fn div_rem(&self, o: &Self) -> (Self, Self);
    fn abs_cmp(&self, o: &Self) -> Ordering;
    fn divides(&self, o: &Self) -> bool;
    fn magnitude(&self) -> BigUint;
    fn to_bigint(&self) -> BigInt;
}

impl SnfInt for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_add(&self, o: &Self) -> Result<Self, Overflow> {
        i64::checked_add(*self, *o).ok_or(Overflow)
    }
    fn checked_sub(&self, o: &Self) -> Result<Self, Overflow> {
        i64::checked_sub(*self, *o).ok_or(Overflow)
    }
    fn checked_mul(&self, o: &Self) -> Result<Self, Overflow> {
        i64::checked_mul(*self, *o).ok_or(Overflow)
    }
    fn checked_neg(&self) -> Result<Self, Overflow> {
        i64::checked_neg(*self).ok_or(Overflow)
    }
    fn div_rem(&self, o: &Self) -> (Self, Self) {
        (self / o, self % o)
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.unsigned_abs().cmp(&o.unsigned_abs())
    }
    fn divides(&self, o: &Self) -> bool {
        *self != 0 && o % self == 0
    }
    fn magnitude(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_negative(&self) -> bool {
        self.sign() == Sign::Minus
    }
    fn checked_add(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self + o)
    }
    fn checked_sub(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn checked_mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn checked_neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn div_rem(&self, o: &Self) -> (Self, Self) {
        Integer::div_rem(self, o)
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.abs().cmp(&o.abs())
    }
    fn divides(&self, o: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&(o % self))
    }
    fn magnitude(&self) -> BigUint {
        self.abs().to_biguint().expect("abs is nonnegative")
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Diagonal of a Smith normal form: nonzero invariant factors
/// `d_1 | d_2 | ... | d_rank`, reported as magnitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithResult {
    pub factors: Vec<BigUint>,
    pub rank: usize,
}

/// Smith normal form with the unimodular change-of-basis matrices:
/// `u * a * v = diag`, together with the inverses of both transforms.
pub struct SmithDecomp<T> {
    pub rank: usize,
    pub diag: Vec<T>,
    pub u: DenseMat<T>,
    pub uinv: DenseMat<T>,
    pub v: DenseMat<T>,
    pub vinv: DenseMat<T>,
}

struct Workspace<T> {
    rows: usize,
    cols: usize,
    row_data: Vec<BTreeMap<usize, T>>,
    col_rows: Vec<BTreeSet<usize>>,
    transforms: Option<Transforms<T>>,
}

struct Transforms<T> {
    u: DenseMat<T>,
    uinv: DenseMat<T>,
    v: DenseMat<T>,
    vinv: DenseMat<T>,
}

impl<T: SnfInt> Workspace<T> {
    fn new(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
        with_transforms: bool,
    ) -> Self {
        let mut row_data: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); rows];
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
        for (r, c, v) in triplets {
            if v.is_zero() {
                continue;
            }
            row_data[r].insert(c, v);
            col_rows[c].insert(r);
        }
        let transforms = with_transforms.then(|| Transforms {
            u: DenseMat::identity(rows),
            uinv: DenseMat::identity(rows),
            v: DenseMat::identity(cols),
            vinv: DenseMat::identity(cols),
        });
        Workspace {
            rows,
            cols,
            row_data,
            col_rows,
            transforms,
        }
    }

    fn get(&self, r: usize, c: usize) -> T {
        self.row_data[r].get(&c).cloned().unwrap_or_else(T::zero)
    }

    fn set(&mut self, r: usize, c: usize, v: T) {
        if v.is_zero() {
            self.row_data[r].remove(&c);
            self.col_rows[c].remove(&r);
        } else {
            self.row_data[r].insert(c, v);
            self.col_rows[c].insert(r);
        }
    }

    /// row_dst += coeff * row_src
    fn row_axpy(&mut self, dst: usize, src: usize, coeff: &T) -> Result<(), Overflow> {
        let src_entries: Vec<(usize, T)> =
            self.row_data[src].iter().map(|(c, v)| (*c, v.clone())).collect();
        for (c, v) in src_entries {
            let add = v.checked_mul(coeff)?;
            let cur = self.get(dst, c).checked_add(&add)?;
            self.set(dst, c, cur);
        }
        if let Some(t) = self.transforms.as_mut() {
            for j in 0..t.u.cols() {
                let add = t.u.at(src, j).checked_mul(coeff)?;
                let cur = t.u.at(dst, j).checked_add(&add)?;
                *t.u.at_mut(dst, j) = cur;
            }
            // uinv <- uinv * E^{-1}: col_src -= coeff * col_dst
            for i in 0..t.uinv.rows() {
                let sub = t.uinv.at(i, dst).checked_mul(coeff)?;
                let cur = t.uinv.at(i, src).checked_sub(&sub)?;
                *t.uinv.at_mut(i, src) = cur;
            }
        }
        Ok(())
    }

    /// col_dst += coeff * col_src
    fn col_axpy(&mut self, dst: usize, src: usize, coeff: &T) -> Result<(), Overflow> {
        let rows: Vec<usize> = self.col_rows[src].iter().copied().collect();
        for r in rows {
            let v = self.get(r, src);
            let add = v.checked_mul(coeff)?;
            let cur = self.get(r, dst).checked_add(&add)?;
            self.set(r, dst, cur);
        }
        if let Some(t) = self.transforms.as_mut() {
            for i in 0..t.v.rows() {
                let add = t.v.at(i, src).checked_mul(coeff)?;
                let cur = t.v.at(i, dst).checked_add(&add)?;
                *t.v.at_mut(i, dst) = cur;
            }
            // vinv <- E^{-1} * vinv: row_src -= coeff * row_dst
            for j in 0..t.vinv.cols() {
                let sub = t.vinv.at(dst, j).checked_mul(coeff)?;
                let cur = t.vinv.at(src, j).checked_sub(&sub)?;
                *t.vinv.at_mut(src, j) = cur;
            }
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.row_data.swap(a, b);
        let cols: BTreeSet<usize> = self.row_data[a]
            .keys()
            .chain(self.row_data[b].keys())
            .copied()
            .collect();
        for c in cols {
            let in_a = self.row_data[a].contains_key(&c);
            let in_b = self.row_data[b].contains_key(&c);
            if in_a {
                self.col_rows[c].insert(a);
            } else {
                self.col_rows[c].remove(&a);
            }
            if in_b {
                self.col_rows[c].insert(b);
            } else {
                self.col_rows[c].remove(&b);
            }
        }
        if let Some(t) = self.transforms.as_mut() {
            for j in 0..t.u.cols() {
                let tmp = t.u.at(a, j).clone();
                *t.u.at_mut(a, j) = t.u.at(b, j).clone();
                *t.u.at_mut(b, j) = tmp;
            }
            for i in 0..t.uinv.rows() {
                let tmp = t.uinv.at(i, a).clone();
                *t.uinv.at_mut(i, a) = t.uinv.at(i, b).clone();
                *t.uinv.at_mut(i, b) = tmp;
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let rows: Vec<usize> = self.col_rows[a].union(&self.col_rows[b]).copied().collect();
        for r in rows {
            let va = self.row_data[r].remove(&a);
            let vb = self.row_data[r].remove(&b);
            if let Some(v) = va {
                self.row_data[r].insert(b, v);
            }
            if let Some(v) = vb {
                self.row_data[r].insert(a, v);
            }
        }
        self.col_rows.swap(a, b);
        if let Some(t) = self.transforms.as_mut() {
            for i in 0..t.v.rows() {
                let tmp = t.v.at(i, a).clone();
                *t.v.at_mut(i, a) = t.v.at(i, b).clone();
                *t.v.at_mut(i, b) = tmp;
            }
            for j in 0..t.vinv.cols() {
                let tmp = t.vinv.at(a, j).clone();
                *t.vinv.at_mut(a, j) = t.vinv.at(b, j).clone();
                *t.vinv.at_mut(b, j) = tmp;
            }
        }
    }

    fn negate_row(&mut self, r: usize) -> Result<(), Overflow> {
        let entries: Vec<usize> = self.row_data[r].keys().copied().collect();
        for c in entries {
            let v = self.get(r, c).checked_neg()?;
            self.set(r, c, v);
        }
        if let Some(t) = self.transforms.as_mut() {
            for j in 0..t.u.cols() {
                let v = t.u.at(r, j).checked_neg()?;
                *t.u.at_mut(r, j) = v;
            }
            for i in 0..t.uinv.rows() {
                let v = t.uinv.at(i, r).checked_neg()?;
                *t.uinv.at_mut(i, r) = v;
            }
        }
        Ok(())
    }

    /// Markowitz pivot in the active region `(>= k, >= k)`: least
    /// `(row_nnz - 1) * (col_nnz - 1)`, then smallest magnitude, then
    /// position. Deterministic.
    fn choose_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize, T)> = None;
        for r in k..self.rows {
            if self.row_data[r].is_empty() {
                continue;
            }
            let rn = self.row_data[r].range(k..).count();
            if rn == 0 {
                continue;
            }
            for (&c, v) in self.row_data[r].range(k..) {
                let cn = self.col_rows[c].range(k..).count();
                let cost = (rn - 1) * (cn - 1);
                let better = match &best {
                    None => true,
                    Some((bcost, br, bc, bv)) => match cost.cmp(bcost) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => match v.abs_cmp(bv) {
                            Ordering::Less => true,
                            Ordering::Greater => false,
                            Ordering::Equal => (r, c) < (*br, *bc),
                        },
                    },
                };
                if better {
                    best = Some((cost, r, c, v.clone()));
                }
            }
        }
        best.map(|(_, r, c, _)| (r, c))
    }

    fn eliminate(&mut self) -> Result<Vec<T>, Overflow> {
        let mut diag = Vec::new();
        let mut k = 0;
        while k < self.rows.min(self.cols) {
            let Some((pr, pc)) = self.choose_pivot(k) else {
                break;
            };
            self.swap_rows(k, pr);
            self.swap_cols(k, pc);
            'reduce: loop {
                // clear column k with row operations
                let below: Vec<usize> = self.col_rows[k].iter().copied().filter(|&r| r != k).collect();
                for r in below {
                    let pivot = self.get(k, k);
                    let v = self.get(r, k);
                    if v.is_zero() {
                        continue;
                    }
                    let (q, rem) = v.div_rem(&pivot);
                    if !q.is_zero() {
                        let nq = q.checked_neg()?;
                        self.row_axpy(r, k, &nq)?;
                    }
                    if !rem.is_zero() {
                        self.swap_rows(k, r);
                        continue 'reduce;
                    }
                }
                // clear row k with column operations
                let right: Vec<usize> = self.row_data[k].keys().copied().filter(|&c| c != k).collect();
                for c in right {
                    let pivot = self.get(k, k);
                    let v = self.get(k, c);
                    if v.is_zero() {
                        continue;
                    }
                    let (q, rem) = v.div_rem(&pivot);
                    if !q.is_zero() {
                        let nq = q.checked_neg()?;
                        self.col_axpy(c, k, &nq)?;
                    }
                    if !rem.is_zero() {
                        self.swap_cols(k, c);
                        continue 'reduce;
                    }
                }
                if !self.col_rows[k].iter().all(|&r| r == k)
                    || !self.row_data[k].keys().all(|&c| c == k)
                {
                    continue 'reduce;
                }
                // make the pivot divide everything that remains
                let pivot = self.get(k, k);
                let mut non_multiple = None;
                'scan: for r in k + 1..self.rows {
                    for (&c, v) in self.row_data[r].range(k + 1..) {
                        if !pivot.divides(v) {
                            non_multiple = Some((r, c));
                            break 'scan;
                        }
                    }
                }
                match non_multiple {
                    Some((r, _)) => {
                        self.row_axpy(k, r, &T::one())?;
                        continue 'reduce;
                    }
                    None => break 'reduce,
                }
            }
            if self.get(k, k).is_negative() {
                self.negate_row(k)?;
            }
            diag.push(self.get(k, k));
            k += 1;
        }
        debug_assert!(diag.windows(2).all(|w| w[0].divides(&w[1])));
        Ok(diag)
    }
}

fn eliminate_t<T: SnfInt>(
    rows: usize,
    cols: usize,
    triplets: Vec<(usize, usize, T)>,
    with_transforms: bool,
) -> Result<(Vec<T>, Option<Transforms<T>>), Overflow> {
    let mut w = Workspace::new(rows, cols, triplets, with_transforms);
    let diag = w.eliminate()?;
    Ok((diag, w.transforms))
}

/// Invariant factors of an integer matrix, smallest first, including any
/// trailing factors equal to one. Exact; switches to arbitrary precision if
/// machine arithmetic overflows.
pub fn smith(m: &SparseIntMat) -> SmithResult {
    let tri: Vec<(usize, usize, i64)> = m.triplets().collect();
    match eliminate_t::<i64>(m.rows(), m.cols(), tri.clone(), false) {
        Ok((diag, _)) => SmithResult {
            rank: diag.len(),
            factors: diag.iter().map(SnfInt::magnitude).collect(),
        },
        Err(Overflow) => {
            let tri = tri
                .into_iter()
                .map(|(r, c, v)| (r, c, BigInt::from(v)))
                .collect();
            let (diag, _) = eliminate_t::<BigInt>(m.rows(), m.cols(), tri, false)
                .expect("arbitrary precision cannot overflow");
            SmithResult {
                rank: diag.len(),
                factors: diag.iter().map(SnfInt::magnitude).collect(),
            }
        }
    }
}

/// Smith normal form of an explicit triplet matrix over `T`, used when the
/// entries may already exceed machine range.
pub fn smith_of_triplets<T: SnfInt>(
    rows: usize,
    cols: usize,
    triplets: Vec<(usize, usize, T)>,
) -> SmithResult {
    let tri = triplets
        .into_iter()
        .map(|(r, c, v)| (r, c, v.to_bigint()))
        .collect();
    let (diag, _) = eliminate_t::<BigInt>(rows, cols, tri, false)
        .expect("arbitrary precision cannot overflow");
    SmithResult {
        rank: diag.len(),
        factors: diag.iter().map(SnfInt::magnitude).collect(),
    }
}

/// Full decomposition `u * m * v = diag` over the requested integer type.
pub fn smith_with_transforms<T: SnfInt>(m: &SparseIntMat) -> Result<SmithDecomp<T>, Overflow> {
    let tri: Vec<(usize, usize, T)> = m
        .triplets()
        .map(|(r, c, v)| (r, c, T::from_i64(v)))
        .collect();
    let (diag, transforms) = eliminate_t::<T>(m.rows(), m.cols(), tri, true)?;
    let t = transforms.expect("requested transforms");
    Ok(SmithDecomp {
        rank: diag.len(),
        diag,
        u: t.u,
        uinv: t.uinv,
        v: t.v,
        vinv: t.vinv,
    })
}

/// Full decomposition of a dense matrix already in `T` entries.
pub fn smith_dense_with_transforms<T: SnfInt>(
    m: &DenseMat<T>,
) -> Result<SmithDecomp<T>, Overflow> {
    let (diag, transforms) = eliminate_t::<T>(m.rows(), m.cols(), m.triplets(), true)?;
    let t = transforms.expect("requested transforms");
    Ok(SmithDecomp {
        rank: diag.len(),
        diag,
        u: t.u,
        uinv: t.uinv,
        v: t.v,
        vinv: t.vinv,
    })
}

/// Rank over the rationals, via fraction-free Bareiss elimination on a dense
/// arbitrary-precision copy. Slower than [`smith`]; used as an independent
/// cross-check.
pub fn rank_bareiss(m: &SparseIntMat) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::from(0); cols]; rows];
    for (r, c, v) in m.triplets() {
        a[r][c] = BigInt::from(v);
    }
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        // find a pivot in the active block
        let mut pivot = None;
        'outer: for r in rank..rows {
            for c in rank..cols {
                if a[r][c] != BigInt::from(0) {
                    pivot = Some((r, c));
                    break 'outer;
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        a.swap(rank, pr);
        for row in a.iter_mut() {
            row.swap(rank, pc);
        }
        for r in rank + 1..rows {
            for c in rank + 1..cols {
                let num = &a[r][c] * &a[rank][rank] - &a[r][rank] * &a[rank][c];
                a[r][c] = num / &prev;
            }
            a[r][rank] = BigInt::from(0);
        }
        prev = a[rank][rank].clone();
        rank += 1;
        let _ = k;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> SparseIntMat {
        SparseIntMat::from_triplets(rows, cols, entries.iter().copied())
    }

    #[test]
    fn scalar_and_identity() {
        let m = mat(1, 1, &[(0, 0, 2)]);
        let s = smith(&m);
        assert_eq!(s.factors, vec![BigUint::from(2u32)]);
        assert_eq!(s.rank, 1);

        let s = smith(&SparseIntMat::identity(3));
        assert_eq!(s.rank, 3);
        assert!(s.factors.iter().all(|f| *f == BigUint::from(1u32)));
    }

    #[test]
    fn divisibility_chain_on_small_matrix() {
        let m = mat(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 8)]);
        let s = smith(&m);
        assert_eq!(s.factors, vec![BigUint::from(2u32), BigUint::from(4u32)]);
    }

    #[test]
    fn known_four_by_four() {
        let m = mat(
            4,
            4,
            &[
                (0, 0, -6),
                (0, 1, 111),
                (0, 2, -36),
                (0, 3, 6),
                (1, 0, 5),
                (1, 1, -672),
                (1, 2, 210),
                (1, 3, 74),
                (2, 1, -255),
                (2, 2, 81),
                (2, 3, 24),
                (3, 0, -7),
                (3, 1, 255),
                (3, 2, -81),
                (3, 3, -10),
            ],
        );
        let s = smith(&m);
        assert_eq!(
            s.factors,
            vec![
                BigUint::from(1u32),
                BigUint::from(3u32),
                BigUint::from(21u32)
            ]
        );
        assert_eq!(s.rank, 3);
    }

    #[test]
    fn transforms_reconstruct_the_diagonal() {
        let m = mat(3, 4, &[(0, 0, 2), (0, 2, -4), (1, 1, 3), (2, 3, 9), (2, 0, 1)]);
        let d = smith_with_transforms::<i64>(&m).unwrap();
        // check u * m * v == diag as dense i64
        let dense = DenseMat::<i64>::mul_sparse_left(&m, &d.v).unwrap();
        let prod = d.u.mul_dense(&dense).unwrap();
        for r in 0..prod.rows() {
            for c in 0..prod.cols() {
                let expect = if r == c && r < d.rank { d.diag[r] } else { 0 };
                assert_eq!(*prod.at(r, c), expect, "at ({r},{c})");
            }
        }
        // inverses really invert
        let iu = d.u.mul_dense(&d.uinv).unwrap();
        assert!(iu.is_identity());
        let iv = d.v.mul_dense(&d.vinv).unwrap();
        assert!(iv.is_identity());
    }

    #[test]
    fn overflow_falls_back_to_bigints() {
        let big = 1i64 << 40;
        let m = mat(2, 2, &[(0, 0, big), (0, 1, 3), (1, 0, 5), (1, 1, big)]);
        let s = smith(&m);
        assert_eq!(s.rank, 2);
        assert_eq!(s.factors[0], BigUint::from(1u32));
        // |det| = 2^80 - 15
        let det = (BigUint::from(1u32) << 80) - BigUint::from(15u32);
        assert_eq!(&s.factors[0] * &s.factors[1], det);
    }

    #[test]
    fn rank_matches_bareiss_on_samples() {
        let samples = [
            mat(3, 3, &[(0, 0, 1), (1, 1, 2), (2, 2, 0)]),
            mat(3, 2, &[(0, 0, 1), (1, 0, 2), (2, 1, 5), (0, 1, 7)]),
            mat(2, 3, &[(0, 0, 3), (0, 1, 6), (0, 2, 9), (1, 0, 1), (1, 1, 2), (1, 2, 3)]),
        ];
        for m in &samples {
            assert_eq!(smith(m).rank, rank_bareiss(m));
        }
    }

    #[test]
    fn invariant_under_permutation() {
        let m = mat(3, 3, &[(0, 0, 2), (1, 1, 6), (2, 2, 12), (0, 1, 4)]);
        let p = m.permute_rows(&[2, 0, 1]).permute_cols(&[1, 2, 0]);
        assert_eq!(smith(&m), smith(&p));
    }
}
