//! The total complex of the binormalized horizontal/vertical double complex
//! of a simplicial space, its column filtration, and the first page of the
//! associated spectral sequence.
//!
//! The basis in bidegree `(p, q)` consists of the level-`p` vertical
//! generators of vertical dimension `q` that are horizontally nondegenerate.
//! The differential is `∂^h + (-1)^p ∂^v`, with images that are degenerate
//! in either direction sent to zero. Quotients of consecutive column
//! filtration stages are read off as the column subcomplexes.

use serde::Serialize;

use crate::filtration::filtration_stage;
use crate::homology::chains::{relative_chains, BuiltComplex};
use crate::homology::matrix::SparseIntMat;
use crate::homology::{
    homology, verify_chain_map, ChainComplex, ChainMap, DegreeHomology, HomologyGroups,
    InducedMap,
};
use crate::simplicial::{GenId, SimplexRef, SubComplex};
use crate::space::SimplicialSpace;

/// Total complex of the binormalized double complex.
pub struct TotalComplex {
    pub complex: ChainComplex,
    /// Per total degree: the `(level, vertical dim, generator)` basis.
    pub basis: Vec<Vec<(usize, usize, usize)>>,
}

/// Homology of the total complex is exact for degrees up to this bound;
/// above it, truncation in either direction can cut off boundaries. For
/// discrete spaces only the horizontal truncation matters, since discrete
/// levels genuinely have nothing above vertical dimension zero.
pub fn reliable_total_degree(space: &SimplicialSpace) -> usize {
    if space.is_discrete() {
        space.horizontal_truncation().saturating_sub(1)
    } else {
        space
            .horizontal_truncation()
            .min(space.vertical_truncation())
            .saturating_sub(1)
    }
}

/// Builds the total complex; `reduced` adds the augmentation in degree 0.
pub fn total_complex(space: &SimplicialSpace, reduced: bool) -> TotalComplex {
    let nh = space.horizontal_truncation();
    let nv = space.vertical_truncation();
    // horizontally nondegenerate generators, with compressed per-bidegree indices
    let mut nd_list: Vec<Vec<Vec<usize>>> = Vec::with_capacity(nh + 1);
    let mut nd_pos: Vec<Vec<Vec<Option<usize>>>> = Vec::with_capacity(nh + 1);
    for p in 0..=nh {
        let table = space.degree_table(p);
        let mut lists = Vec::with_capacity(nv + 1);
        let mut poss = Vec::with_capacity(nv + 1);
        for q in 0..=nv {
            let mut list = Vec::new();
            let mut pos = vec![None; space.level(p).gen_count(q)];
            for idx in 0..space.level(p).gen_count(q) {
                if table.by_vdim[q][idx] == 0 {
                    pos[idx] = Some(list.len());
                    list.push(idx);
                }
            }
            lists.push(list);
            poss.push(pos);
        }
        nd_list.push(lists);
        nd_pos.push(poss);
    }
    let top = nh + nv;
    let mut basis: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(top + 1);
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(top + 1); // per degree, per level p: block start
    for m in 0..=top {
        let mut deg_basis = Vec::new();
        let mut offs = vec![usize::MAX; nh + 1];
        for p in 0..=nh.min(m) {
            let q = m - p;
            if q > nv {
                continue;
            }
            offs[p] = deg_basis.len();
            for &idx in &nd_list[p][q] {
                deg_basis.push((p, q, idx));
            }
        }
        basis.push(deg_basis);
        offsets.push(offs);
    }
    let sizes: Vec<usize> = basis.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = basis
        .iter()
        .map(|b| {
            b.iter()
                .map(|&(p, q, idx)| {
                    format!(
                        "L{p}:{}",
                        space.level(p).display_ref(&SimplexRef::nondegenerate(GenId::new(q, idx)))
                    )
                })
                .collect()
        })
        .collect();
    let mut boundaries = Vec::with_capacity(top);
    for m in 1..=top {
        let mut triplets: Vec<(usize, usize, i64)> = Vec::new();
        for (col, &(p, q, idx)) in basis[m].iter().enumerate() {
            let x = SimplexRef::nondegenerate(GenId::new(q, idx));
            if p >= 1 {
                for i in 0..=p {
                    let y = space.hface_eval(p, i, &x).expect("valid horizontal face");
                    if y.is_degenerate() {
                        continue;
                    }
                    let Some(row_in_block) = nd_pos[p - 1][q][y.gen.idx] else {
                        continue;
                    };
                    let row = offsets[m - 1][p - 1] + row_in_block;
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    triplets.push((row, col, sign));
                }
            }
            if q >= 1 {
                let vsign: i64 = if p % 2 == 0 { 1 } else { -1 };
                for i in 0..=q {
                    let y = space.level(p).face(&x, i).expect("valid face");
                    if y.is_degenerate() {
                        continue;
                    }
                    let Some(row_in_block) = nd_pos[p][q - 1][y.gen.idx] else {
                        continue;
                    };
                    let row = offsets[m - 1][p] + row_in_block;
                    let sign = if i % 2 == 0 { vsign } else { -vsign };
                    triplets.push((row, col, sign));
                }
            }
        }
        boundaries.push(SparseIntMat::from_triplets(sizes[m - 1], sizes[m], triplets));
    }
    let complex = ChainComplex::new(sizes, labels, boundaries, reduced)
        .expect("the total differential squares to zero");
    TotalComplex { complex, basis }
}

/// The quotient of consecutive column filtration stages `F_j / F_{j-1}` of
/// the total complex: the column-`j` subquotient, augmented for `j = 0` when
/// the total complex is reduced.
pub fn column_quotient(space: &SimplicialSpace, tot: &TotalComplex, j: usize) -> ChainComplex {
    let top = tot.complex.top_degree();
    let mut positions: Vec<Vec<Option<usize>>> = Vec::with_capacity(top + 1);
    let mut sizes = Vec::with_capacity(top + 1);
    let mut labels = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let mut pos = vec![None; tot.basis[m].len()];
        let mut count = 0;
        let mut labs = Vec::new();
        for (i, &(p, _, _)) in tot.basis[m].iter().enumerate() {
            if p == j {
                pos[i] = Some(count);
                labs.push(tot.complex.label(m, i).to_string());
                count += 1;
            }
        }
        positions.push(pos);
        sizes.push(count);
        labels.push(labs);
    }
    let mut boundaries = Vec::with_capacity(top);
    for m in 1..=top {
        let mut triplets = Vec::new();
        for (col_full, col) in positions[m].iter().enumerate() {
            let Some(col) = col else { continue };
            for &(row_full, v) in tot
                .complex
                .boundary(m)
                .column(col_full)
                .iter()
                .filter(|&&(r, _)| positions[m - 1][r].is_some())
            {
                triplets.push((positions[m - 1][row_full].unwrap(), *col, v));
            }
        }
        boundaries.push(SparseIntMat::from_triplets(sizes[m - 1], sizes[m], triplets));
    }
    let augmented = j == 0 && tot.complex.is_augmented();
    let _ = space;
    ChainComplex::new(sizes, labels, boundaries, augmented)
        .expect("a column of the total complex is a complex")
}

/// The reduced chains of the pointed quotient `X_j / S(X_j)`: basis the
/// horizontally nondegenerate vertical generators of level `j`.
pub fn column_chains(space: &SimplicialSpace, j: usize) -> BuiltComplex {
    let level = space.level(j);
    let numerator = SubComplex::full(level);
    let denominator = filtration_stage(space, j, 1)
        .expect("stage 1 exists at every level")
        .members;
    relative_chains(level, &numerator, &denominator, true)
}

/// The alternating horizontal face sum as a chain map between consecutive
/// column complexes.
pub fn d1_chain_map(
    space: &SimplicialSpace,
    j: usize,
    source: &BuiltComplex,
    target: &BuiltComplex,
) -> ChainMap {
    let nv = space.vertical_truncation();
    let mut matrices = Vec::with_capacity(nv + 1);
    for q in 0..=nv {
        let mut triplets = Vec::new();
        for (col, &src_idx) in source.basis_gens[q].iter().enumerate() {
            let x = SimplexRef::nondegenerate(GenId::new(q, src_idx));
            for i in 0..=j {
                let y = space.hface_eval(j, i, &x).expect("valid horizontal face");
                if y.is_degenerate() {
                    continue;
                }
                let Some(row) = target.pos[q][y.gen.idx] else {
                    continue;
                };
                let sign = if i % 2 == 0 { 1 } else { -1 };
                triplets.push((row, col, sign));
            }
        }
        matrices.push(SparseIntMat::from_triplets(
            target.complex.size(q),
            source.complex.size(q),
            triplets,
        ));
    }
    ChainMap { matrices }
}

/// The first page of the realization spectral sequence: columns are the
/// reduced homologies of `X_j / S(X_j)`, the differential is the
/// alternating horizontal face sum in homology.
#[derive(Serialize)]
pub struct E1Page {
    pub max_level: usize,
    /// Reduced homology of `X_j / S(X_j)` per column `j`.
    pub columns: Vec<HomologyGroups>,
    /// Rank of the free part of `d¹ : E¹_{j,k} → E¹_{j-1,k}`, per `j >= 1`
    /// and per vertical degree `k`.
    pub d1_ranks: Vec<Vec<usize>>,
    pub d1_chain_square_zero: bool,
    pub d1_homology_square_zero: bool,
    /// For discrete spaces: homology of the bottom row `(E¹_{*,0}, d¹)`,
    /// which computes the reduced homology of the realization. The degree
    /// flag is unreliable from the horizontal truncation on.
    pub row_homology: Option<Vec<DegreeHomology>>,
    /// `row_homology` with the degree-0 group restored to the unreduced
    /// convention (one extra free summand for a nonempty realization).
    pub realization_homology: Option<Vec<DegreeHomology>>,
    /// For discrete spaces: whether `row_homology` matches the reduced
    /// total-complex homology in the reliable range.
    pub tot_match: Option<bool>,
    #[serde(skip)]
    pub d1_induced: Vec<InducedMap>,
}

pub fn segal_e1(space: &SimplicialSpace) -> E1Page {
    let nh = space.horizontal_truncation();
    let nv = space.vertical_truncation();
    let built: Vec<BuiltComplex> = (0..=nh).map(|j| column_chains(space, j)).collect();
    let columns: Vec<HomologyGroups> = built
        .iter()
        .map(|b| homology(&b.complex, Some(nv.saturating_sub(1))))
        .collect();
    let d1: Vec<ChainMap> = (1..=nh)
        .map(|j| d1_chain_map(space, j, &built[j], &built[j - 1]))
        .collect();
    for (j, f) in d1.iter().enumerate() {
        verify_chain_map(&built[j + 1].complex, &built[j].complex, f)
            .expect("the alternating face sum is a chain map");
    }
    let d1_chain_square_zero = (1..d1.len())
        .all(|j| d1[j - 1].compose(&d1[j]).matrices.iter().all(SparseIntMat::is_zero));
    let d1_induced: Vec<InducedMap> = (1..=nh)
        .map(|j| {
            crate::homology::induced_map(&d1[j - 1], &built[j].complex, &built[j - 1].complex)
                .expect("verified chain map")
        })
        .collect();
    let d1_homology_square_zero = (1..d1.len()).all(|j| {
        let square = d1[j - 1].compose(&d1[j]);
        let ind =
            crate::homology::induced_map(&square, &built[j + 1].complex, &built[j - 1].complex)
                .expect("verified chain map");
        ind.degrees.iter().all(|dm| {
            let s = dm.tgt.factors.len();
            (0..dm.matrix.rows()).all(|r| {
                (0..dm.matrix.cols()).all(|c| {
                    let v = dm.matrix.at(r, c);
                    if r < s {
                        use num_traits::Zero;
                        let f = num_bigint::BigInt::from(dm.tgt.factors[r].clone());
                        (v % f).is_zero()
                    } else {
                        num_traits::Zero::is_zero(v)
                    }
                })
            })
        })
    });
    let d1_ranks: Vec<Vec<usize>> = d1_induced
        .iter()
        .map(|m| {
            m.degrees
                .iter()
                .map(|dm| {
                    let st = dm.tgt.factors.len();
                    let ss = dm.src.factors.len();
                    let triplets: Vec<(usize, usize, num_bigint::BigInt)> = (st..dm.matrix.rows())
                        .flat_map(|r| {
                            (ss..dm.matrix.cols()).filter_map(move |c| {
                                let v = dm.matrix.at(r, c);
                                (!num_traits::Zero::is_zero(v))
                                    .then(|| (r - st, c - ss, v.clone()))
                            })
                        })
                        .collect();
                    crate::homology::smith::smith_of_triplets(
                        dm.matrix.rows() - st,
                        dm.matrix.cols() - ss,
                        triplets,
                    )
                    .rank
                })
                .collect()
        })
        .collect();

    let (row_homology, realization_homology, tot_match) = if space.is_discrete() {
        let sizes: Vec<usize> = columns.iter().map(|h| h.betti(0)).collect();
        let boundaries: Vec<SparseIntMat> = (1..=nh)
            .map(|j| {
                let dm = &d1_induced[j - 1].degrees[0];
                // discrete columns are torsion-free, so the presentation
                // matrix is already the free matrix
                SparseIntMat::from_triplets(
                    sizes[j - 1],
                    sizes[j],
                    (0..dm.matrix.rows()).flat_map(|r| {
                        (0..dm.matrix.cols()).filter_map(move |c| {
                            let v = i64::try_from(dm.matrix.at(r, c))
                                .expect("row differential entry fits a machine word");
                            (v != 0).then_some((r, c, v))
                        })
                    }),
                )
            })
            .collect();
        let labels = sizes.iter().map(|&n| vec![String::new(); n]).collect();
        let row = ChainComplex::new(sizes, labels, boundaries, false)
            .expect("d¹ squares to zero on the bottom row");
        let row_h = homology(&row, Some(nh.saturating_sub(1)));
        let tot = total_complex(space, true);
        let tot_h = homology(&tot.complex, Some(reliable_total_degree(space)));
        let bound = nh.saturating_sub(1).min(reliable_total_degree(space));
        let matches = (0..=bound).all(|m| {
            row_h.betti(m) == tot_h.betti(m) && row_h.torsion(m) == tot_h.torsion(m)
        });
        let mut unreduced = row_h.degrees.clone();
        if let Some(d0) = unreduced.first_mut() {
            d0.betti += 1;
        }
        (Some(row_h.degrees), Some(unreduced), Some(matches))
    } else {
        (None, None, None)
    };

    E1Page {
        max_level: nh,
        columns,
        d1_ranks,
        d1_chain_square_zero,
        d1_homology_square_zero,
        row_homology,
        realization_homology,
        tot_match,
        d1_induced,
    }
}
