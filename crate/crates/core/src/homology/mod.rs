//! Exact integer homology of finite chain complexes.
//!
//! Boundary matrices are sparse integer matrices validated against
//! `∂∂ = 0`; homology groups come out of Smith normal form as a Betti
//! number plus a divisibility chain of torsion coefficients per degree.
//! Induced maps are computed on explicit homology presentations so that
//! isomorphisms can be certified exactly: free ranks and torsion must match
//! and the map must be surjective, which for finitely generated abelian
//! groups of the same isomorphism type forces bijectivity.

pub mod chains;
pub mod matrix;
pub mod smith;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use matrix::{DenseMat, SparseIntMat};
use smith::{smith, SnfInt};
pub use smith::{Overflow, SmithResult};

/// Retries a generic exact-integer computation with arbitrary precision when
/// the machine-word path overflows.
macro_rules! with_int_fallback {
    ($f:ident ( $($args:expr),* $(,)? )) => {
        match $f::<i64>($($args),*) {
            Ok(v) => v,
            Err($crate::homology::smith::Overflow) => $f::<num_bigint::BigInt>($($args),*)
                .expect("arbitrary precision cannot overflow"),
        }
    };
}
pub(crate) use with_int_fallback;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("boundary {degree} has shape {got:?}, expected {expected:?}")]
    BadShape {
        degree: usize,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("∂∂ != 0 between degrees {degree} and {}", degree + 1)]
    NotAComplex { degree: usize },
    #[error("not a chain map at degree {degree}, witness basis element {witness}")]
    NotAChainMap { degree: usize, witness: String },
    #[error("chain map shape mismatch at degree {0}")]
    MapShape(usize),
}

/// A finite chain complex of free abelian groups in degrees `0..=top`.
///
/// `boundary(0)` is the augmentation (an all-ones row) for reduced
/// complexes and an empty matrix otherwise; `boundary(top + 1)` is the
/// trailing zero map. `∂∘∂ = 0` is checked on construction.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    sizes: Vec<usize>,
    labels: Vec<Vec<String>>,
    boundaries: Vec<SparseIntMat>,
    augmented: bool,
}

impl ChainComplex {
    pub fn new(
        sizes: Vec<usize>,
        labels: Vec<Vec<String>>,
        boundaries: Vec<SparseIntMat>,
        augmented: bool,
    ) -> Result<Self, HomologyError> {
        assert!(!sizes.is_empty(), "a chain complex needs degree 0");
        let top = sizes.len() - 1;
        assert_eq!(labels.len(), sizes.len());
        assert_eq!(boundaries.len(), top, "need one boundary per degree >= 1");
        let mut full = Vec::with_capacity(top + 2);
        full.push(if augmented {
            SparseIntMat::ones_row(sizes[0])
        } else {
            SparseIntMat::zero(0, sizes[0])
        });
        full.extend(boundaries);
        full.push(SparseIntMat::zero(sizes[top], 0));
        for d in 1..=top {
            let b = &full[d];
            if b.rows() != sizes[d - 1] || b.cols() != sizes[d] {
                return Err(HomologyError::BadShape {
                    degree: d,
                    got: (b.rows(), b.cols()),
                    expected: (sizes[d - 1], sizes[d]),
                });
            }
        }
        let complex = ChainComplex {
            sizes,
            labels,
            boundaries: full,
            augmented,
        };
        for d in 1..=top {
            if !complex
                .boundary(d - 1)
                .mul(complex.boundary(d))
                .is_zero()
            {
                return Err(HomologyError::NotAComplex { degree: d - 1 });
            }
        }
        Ok(complex)
    }

    pub fn top_degree(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, d: usize) -> usize {
        self.sizes.get(d).copied().unwrap_or(0)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn label(&self, d: usize, i: usize) -> &str {
        &self.labels[d][i]
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    /// `∂_d` for `0 <= d <= top + 1`.
    pub fn boundary(&self, d: usize) -> &SparseIntMat {
        &self.boundaries[d]
    }

    /// Euler characteristic from the chain group ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.sizes
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Homology of one degree: free rank plus torsion coefficients in a
/// divisibility chain. `reliable` is false above the range that the
/// truncation determines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_biguints")]
    pub torsion: Vec<BigUint>,
    pub reliable: bool,
}

fn serialize_biguints<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Rendered as `Z^b + Z/d1 + Z/d2 ...`, with `0` for the trivial group.
    pub fn group_string(&self) -> String {
        group_string(self.betti, &self.torsion)
    }
}

pub fn group_string(betti: usize, torsion: &[BigUint]) -> String {
    let mut parts = Vec::new();
    match betti {
        0 => {}
        1 => parts.push("Z".to_string()),
        b => parts.push(format!("Z^{b}")),
    }
    for t in torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for DegreeHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{} = {}", self.degree, self.group_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroups {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyGroups {
    pub fn degree(&self, d: usize) -> Option<&DegreeHomology> {
        self.degrees.get(d)
    }

    pub fn betti(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, d: usize) -> &[BigUint] {
        self.degrees.get(d).map_or(&[], |g| &g.torsion)
    }

    /// Alternating sum of Betti numbers over all degrees.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|g| {
                let b = g.betti as i64;
                if g.degree % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }
}

/// Homology of every degree of a complex. Degrees above `reliable_through`
/// are computed but flagged unreliable (their incoming boundaries may be cut
/// off by the truncation).
pub fn homology(c: &ChainComplex, reliable_through: Option<usize>) -> HomologyGroups {
    let top = c.top_degree();
    let smiths: Vec<SmithResult> = (0..=top + 1).map(|d| smith(c.boundary(d))).collect();
    let degrees = (0..=top)
        .map(|d| {
            let betti = c.size(d) - smiths[d].rank - smiths[d + 1].rank;
            let torsion = smiths[d + 1]
                .factors
                .iter()
                .filter(|f| **f > BigUint::one())
                .cloned()
                .collect();
            DegreeHomology {
                degree: d,
                betti,
                torsion,
                reliable: reliable_through.map_or(true, |b| d <= b),
            }
        })
        .collect();
    HomologyGroups { degrees }
}

/// A chain map given by one matrix per degree (target size × source size).
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub matrices: Vec<SparseIntMat>,
}

impl ChainMap {
    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            matrices: (0..=c.top_degree())
                .map(|d| SparseIntMat::identity(c.size(d)))
                .collect(),
        }
    }

    /// `self ∘ other` degreewise.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        ChainMap {
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }
}

/// Checks `∂ F = F ∂` in every positive degree, naming a witness basis
/// element on failure.
pub fn verify_chain_map(
    src: &ChainComplex,
    tgt: &ChainComplex,
    f: &ChainMap,
) -> Result<(), HomologyError> {
    let top = src.top_degree();
    if f.matrices.len() != top + 1 || tgt.top_degree() != top {
        return Err(HomologyError::MapShape(top));
    }
    for d in 0..=top {
        let m = &f.matrices[d];
        if m.rows() != tgt.size(d) || m.cols() != src.size(d) {
            return Err(HomologyError::MapShape(d));
        }
    }
    for d in 1..=top {
        let lhs = tgt.boundary(d).mul(&f.matrices[d]);
        let rhs = f.matrices[d - 1].mul(src.boundary(d));
        if lhs != rhs {
            let witness = (0..src.size(d))
                .find(|&j| lhs.column(j) != rhs.column(j))
                .map(|j| src.label(d, j).to_string())
                .unwrap_or_default();
            return Err(HomologyError::NotAChainMap { degree: d, witness });
        }
    }
    Ok(())
}

/// Presentation of one degree's homology: `z` generator coordinates subject
/// to relations `f_i * e_i = 0` for the first `s = factors.len()` of them
/// (factors equal to one kill their generator; the rest are free).
#[derive(Clone, Debug)]
pub(crate) struct DegreeData<T> {
    pub z: usize,
    pub factors: Vec<T>,
    /// z×n: kernel coordinates of a cycle.
    pub kernel_coord: DenseMat<T>,
    /// z×z: presentation coordinates of kernel coordinates.
    pub uprime: DenseMat<T>,
    /// n×z: cycle representatives of the presentation generators.
    pub gens: DenseMat<T>,
}

impl<T: SnfInt> DegreeData<T> {
    fn new(c: &ChainComplex, d: usize) -> Result<Self, Overflow> {
        let a = c.boundary(d);
        let dec = smith::smith_with_transforms::<T>(a)?;
        let z = a.cols() - dec.rank;
        let kernel_basis = dec.v.column_block(dec.rank, z);
        let kernel_coord = dec.vinv.row_block(dec.rank, z);
        let b = c.boundary(d + 1);
        if b.cols() == 0 || b.is_zero() {
            return Ok(DegreeData {
                z,
                factors: Vec::new(),
                gens: kernel_basis,
                kernel_coord,
                uprime: DenseMat::identity(z),
            });
        }
        let m = kernel_coord.mul_sparse(b)?;
        let mdec = smith::smith_dense_with_transforms(&m)?;
        let gens = kernel_basis.mul_dense(&mdec.uinv)?;
        Ok(DegreeData {
            z,
            factors: mdec.diag,
            kernel_coord,
            uprime: mdec.u,
            gens,
        })
    }

}

/// Homology presentations of every degree of one complex.
pub(crate) struct CtxData<T> {
    pub degrees: Vec<DegreeData<T>>,
}

impl<T: SnfInt> CtxData<T> {
    pub fn new(c: &ChainComplex) -> Result<Self, Overflow> {
        Ok(CtxData {
            degrees: (0..=c.top_degree())
                .map(|d| DegreeData::new(c, d))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// The matrix of an induced map on one degree's presentations.
pub(crate) fn induced_degree_matrix<T: SnfInt>(
    f_d: &SparseIntMat,
    src: &DegreeData<T>,
    tgt: &DegreeData<T>,
) -> Result<DenseMat<T>, Overflow> {
    let pushed = DenseMat::mul_sparse_left(f_d, &src.gens)?;
    let y = tgt.kernel_coord.mul_dense(&pushed)?;
    tgt.uprime.mul_dense(&y)
}

/// Summary of a homology presentation, with factors as reported magnitudes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresSummary {
    pub z: usize,
    #[serde(serialize_with = "serialize_biguints")]
    pub factors: Vec<BigUint>,
}

impl PresSummary {
    pub fn betti(&self) -> usize {
        self.z - self.factors.len()
    }

    pub fn torsion(&self) -> Vec<BigUint> {
        self.factors
            .iter()
            .filter(|f| **f > BigUint::one())
            .cloned()
            .collect()
    }
}

/// An induced map in homology, one presentation matrix per degree.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub degrees: Vec<InducedDegreeMap>,
}

#[derive(Clone, Debug)]
pub struct InducedDegreeMap {
    pub degree: usize,
    /// z_target × z_source presentation matrix.
    pub matrix: DenseMat<BigInt>,
    pub src: PresSummary,
    pub tgt: PresSummary,
}

impl InducedDegreeMap {
    /// Whether two maps into the same presentation agree as homology maps:
    /// torsion coordinates are compared modulo their factors.
    pub fn agrees_with(&self, other: &InducedDegreeMap) -> bool {
        if self.tgt != other.tgt || self.matrix.cols() != other.matrix.cols() {
            return false;
        }
        let s = self.tgt.factors.len();
        for i in 0..self.matrix.rows() {
            for j in 0..self.matrix.cols() {
                let diff = self.matrix.at(i, j) - other.matrix.at(i, j);
                let ok = if i < s {
                    let f = BigInt::from(self.tgt.factors[i].clone());
                    num_traits::Zero::is_zero(&(diff % f))
                } else {
                    num_traits::Zero::is_zero(&diff)
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Exact certification that a presentation matrix is an isomorphism of
/// finitely generated abelian groups.
#[derive(Clone, Debug, Serialize)]
pub struct IsoCertificate {
    pub degree: usize,
    pub betti_source: usize,
    pub betti_target: usize,
    pub torsion_source: Vec<String>,
    pub torsion_target: Vec<String>,
    pub well_defined: bool,
    pub surjective: bool,
    /// Free-part matrix has determinant ±1; only meaningful (Some) when both
    /// sides are torsion-free with equal rank.
    pub unimodular_free: Option<bool>,
    pub iso: bool,
}

/// A presentation by `z` generator coordinates with relations
/// `f * e_coord = 0` at the listed coordinates; the rest are free.
/// Direct sums concatenate coordinates, so relations need not sit in a
/// leading block.
#[derive(Clone, Debug)]
pub(crate) struct RelPres<T> {
    pub z: usize,
    pub relations: Vec<(usize, T)>,
}

impl<T: SnfInt> RelPres<T> {
    pub fn from_degree(d: &DegreeData<T>) -> Self {
        RelPres {
            z: d.z,
            relations: d.factors.iter().cloned().enumerate().collect(),
        }
    }

    pub fn betti(&self) -> usize {
        self.z - self.relations.len()
    }

    pub fn torsion_sorted(&self) -> Vec<BigUint> {
        let mut t: Vec<BigUint> = self
            .relations
            .iter()
            .filter(|(_, f)| !f.is_one())
            .map(|(_, f)| f.magnitude())
            .collect();
        t.sort();
        t
    }

    fn free_coords(&self) -> Vec<usize> {
        let bound: std::collections::BTreeSet<usize> =
            self.relations.iter().map(|&(i, _)| i).collect();
        (0..self.z).filter(|i| !bound.contains(i)).collect()
    }
}

pub(crate) fn certify_iso_t<T: SnfInt>(
    degree: usize,
    p: &DenseMat<T>,
    src: &RelPres<T>,
    tgt: &RelPres<T>,
) -> Result<IsoCertificate, Overflow> {
    let betti_source = src.betti();
    let betti_target = tgt.betti();
    let torsion_source = src.torsion_sorted();
    let torsion_target = tgt.torsion_sorted();
    let abstract_match = betti_source == betti_target && torsion_source == torsion_target;

    let tgt_rel: std::collections::BTreeMap<usize, &T> =
        tgt.relations.iter().map(|(i, f)| (*i, f)).collect();
    // relations must map into relations
    let mut well_defined = true;
    'wd: for (j, fj) in &src.relations {
        for i in 0..tgt.z {
            let v = p.at(i, *j).checked_mul(fj)?;
            let ok = match tgt_rel.get(&i) {
                Some(fi) => v.is_zero() || fi.divides(&v),
                None => v.is_zero(),
            };
            if !ok {
                well_defined = false;
                break 'wd;
            }
        }
    }

    // surjectivity: the columns of p together with the target relations span
    let mut triplets: Vec<(usize, usize, T)> = p.triplets();
    for (k, (i, f)) in tgt.relations.iter().enumerate() {
        triplets.push((*i, src.z + k, f.clone()));
    }
    let surj_smith = smith::smith_of_triplets(tgt.z, src.z + tgt.relations.len(), triplets);
    let surjective =
        surj_smith.rank == tgt.z && surj_smith.factors.iter().all(|f| *f == BigUint::one());

    let unimodular_free = if torsion_source.is_empty()
        && torsion_target.is_empty()
        && betti_source == betti_target
    {
        let rows = tgt.free_coords();
        let cols = src.free_coords();
        let triplets: Vec<(usize, usize, T)> = rows
            .iter()
            .enumerate()
            .flat_map(|(ri, &r)| {
                cols.iter().enumerate().filter_map(move |(ci, &c)| {
                    let v = p.at(r, c);
                    (!v.is_zero()).then(|| (ri, ci, v.clone()))
                })
            })
            .collect();
        let sm = smith::smith_of_triplets(rows.len(), cols.len(), triplets);
        Some(sm.rank == betti_target && sm.factors.iter().all(|f| *f == BigUint::one()))
    } else {
        None
    };

    // a surjection between abstractly isomorphic finitely generated abelian
    // groups is bijective, so these three checks certify the isomorphism
    let iso = abstract_match && well_defined && surjective;
    Ok(IsoCertificate {
        degree,
        betti_source,
        betti_target,
        torsion_source: torsion_source.iter().map(|t| t.to_string()).collect(),
        torsion_target: torsion_target.iter().map(|t| t.to_string()).collect(),
        well_defined,
        surjective,
        unimodular_free,
        iso,
    })
}

pub(crate) fn pres_summary<T: SnfInt>(d: &DegreeData<T>) -> PresSummary {
    PresSummary {
        z: d.z,
        factors: d.factors.iter().map(SnfInt::magnitude).collect(),
    }
}

/// The map induced in homology by a verified chain map.
pub fn induced_map(
    f: &ChainMap,
    src: &ChainComplex,
    tgt: &ChainComplex,
) -> Result<InducedMap, HomologyError> {
    verify_chain_map(src, tgt, f)?;
    fn build<T: SnfInt>(
        f: &ChainMap,
        src: &ChainComplex,
        tgt: &ChainComplex,
    ) -> Result<InducedMap, Overflow> {
        let sctx = CtxData::<T>::new(src)?;
        let tctx = CtxData::<T>::new(tgt)?;
        let degrees = (0..=src.top_degree())
            .map(|d| {
                let m = induced_degree_matrix(&f.matrices[d], &sctx.degrees[d], &tctx.degrees[d])?;
                Ok(InducedDegreeMap {
                    degree: d,
                    matrix: m.map(SnfInt::to_bigint),
                    src: pres_summary(&sctx.degrees[d]),
                    tgt: pres_summary(&tctx.degrees[d]),
                })
            })
            .collect::<Result<_, Overflow>>()?;
        Ok(InducedMap { degrees })
    }
    Ok(with_int_fallback!(build(f, src, tgt)))
}

/// Certified isomorphism check of a chain map in every degree up to
/// `through_degree`.
pub fn certify_quasi_iso(
    f: &ChainMap,
    src: &ChainComplex,
    tgt: &ChainComplex,
    through_degree: usize,
) -> Result<Vec<IsoCertificate>, HomologyError> {
    verify_chain_map(src, tgt, f)?;
    fn build<T: SnfInt>(
        f: &ChainMap,
        src: &ChainComplex,
        tgt: &ChainComplex,
        through: &usize,
    ) -> Result<Vec<IsoCertificate>, Overflow> {
        let sctx = CtxData::<T>::new(src)?;
        let tctx = CtxData::<T>::new(tgt)?;
        (0..=*through)
            .map(|d| {
                let m = induced_degree_matrix(&f.matrices[d], &sctx.degrees[d], &tctx.degrees[d])?;
                certify_iso_t(
                    d,
                    &m,
                    &RelPres::from_degree(&sctx.degrees[d]),
                    &RelPres::from_degree(&tctx.degrees[d]),
                )
            })
            .collect()
    }
    let through = through_degree.min(src.top_degree());
    Ok(with_int_fallback!(build(f, src, tgt, &through)))
}
