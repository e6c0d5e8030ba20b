//! Construction of the splitting maps in homology and the verifiers that
//! certify, level by level, that they induce isomorphisms.
//!
//! For a level `X_n` the block map assembles one component per admissible
//! sequence `J`: the composite that projects with `d_{χ(J)}`, includes back
//! with `s_J`, and collapses `s_J S(X_{n-r})`. In reduced homology these
//! components stack to a map
//! `H̃(X_n) → ⊕_r ⊕_J H̃(ŝ_J(X_{n-r}))`, which is certified to be an
//! isomorphism degree by degree: free ranks and torsion must agree and the
//! block matrix must be surjective over the integers. Chain-level
//! triangularity (identity diagonal blocks, vanishing below the stage) is
//! checked alongside.

pub mod realization;

use serde::Serialize;

use crate::calculus::{summand_ids, SummandId};
use crate::filtration::{filtration_stage, stage_quotient, summand_quotient, PointedQuotient};
use crate::homology::chains::{normalized_chains, relative_chains, BuiltComplex};
use crate::homology::matrix::{DenseMat, SparseIntMat};
use crate::homology::smith::{Overflow, SnfInt};
use crate::homology::{
    certify_iso_t, homology, induced_degree_matrix, verify_chain_map, with_int_fallback,
    ChainMap, CtxData, DegreeHomology, HomologyGroups, InducedDegreeMap, InducedMap,
    IsoCertificate, RelPres,
};
use crate::simplicial::{binomial, GenId, SimplexRef, SubComplex};
use crate::space::{SimplicialSpace, SpaceMap};
use crate::word::AdmissibleSeq;

pub use realization::{
    column_chains, column_quotient, reliable_total_degree, segal_e1, total_complex, E1Page,
    TotalComplex,
};

/// One component of the splitting map: the pointed level map
/// `X_n → ŝ_J(X_{n-r})` sending `x` to the class of `s_J(d_{χ(J)}(x))`.
pub struct HopfComponent {
    pub level: usize,
    pub seq: AdmissibleSeq,
    pub quotient: PointedQuotient,
    /// Values on vertical generators of the level: `None` means the image is
    /// killed (degenerate or collapsed to the basepoint).
    pub value_table: Vec<(String, Option<String>)>,
    pub chain: ChainMap,
}

/// Evaluates the component map on one vertical simplex: the class of
/// `s_J(d_{χ(J)}(x))`, or `None` if that class is the basepoint or dies
/// under normalization.
fn hopf_value(
    space: &SimplicialSpace,
    n: usize,
    seq: &AdmissibleSeq,
    quotient: &PointedQuotient,
    x: &SimplexRef,
) -> Option<SimplexRef> {
    let down = space
        .hface_seq_eval(n, &seq.chi(), x)
        .expect("valid composite face");
    let z = space
        .hdeg_seq_eval(n - seq.len(), seq, &down)
        .expect("valid composite degeneracy");
    if z.is_degenerate() {
        return None;
    }
    if quotient.denominator.contains_gen(z.gen) {
        return None;
    }
    Some(z)
}

fn lambda_chain_map(
    space: &SimplicialSpace,
    n: usize,
    seq: &AdmissibleSeq,
    quotient: &PointedQuotient,
    source: &BuiltComplex,
    target: &BuiltComplex,
) -> ChainMap {
    let level = space.level(n);
    let mut matrices = Vec::with_capacity(level.truncation() + 1);
    for q in 0..=level.truncation() {
        let mut triplets = Vec::new();
        for (col, &src_idx) in source.basis_gens[q].iter().enumerate() {
            let x = SimplexRef::nondegenerate(GenId::new(q, src_idx));
            if let Some(z) = hopf_value(space, n, seq, quotient, &x) {
                if let Some(row) = target.pos[q][z.gen.idx] {
                    triplets.push((row, col, 1));
                }
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

/// Builds the component map for one admissible sequence, with its value
/// table on generators.
pub fn hopf_component(
    space: &SimplicialSpace,
    n: usize,
    seq: &AdmissibleSeq,
) -> Result<HopfComponent, crate::simplicial::OpError> {
    let level = space.level(n);
    let quotient = summand_quotient(space, n, seq)?;
    let source = normalized_chains(level, true);
    let target = relative_chains(level, &quotient.numerator, &quotient.denominator, true);
    let chain = lambda_chain_map(space, n, seq, &quotient, &source, &target);
    let mut value_table = Vec::new();
    for q in 0..=level.truncation() {
        for g in level.gen_ids(q) {
            let x = SimplexRef::nondegenerate(g);
            let v = hopf_value(space, n, seq, &quotient, &x).map(|z| level.display_ref(&z));
            value_table.push((level.display_ref(&x), v));
        }
    }
    Ok(HopfComponent {
        level: n,
        seq: seq.clone(),
        quotient,
        value_table,
        chain,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub r: usize,
    pub seq: String,
    pub homology: HomologyGroups,
    /// Non-basepoint classes per vertical dimension.
    pub class_counts: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountingRow {
    pub degree: usize,
    pub source_betti: usize,
    pub summand_bettis: Vec<usize>,
    pub summand_total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockTriangularity {
    pub diagonal_identity: bool,
    pub lower_stage_vanishes: bool,
    pub same_stage_strictly_upper: bool,
    pub violations: Vec<String>,
}

impl BlockTriangularity {
    pub fn passed(&self) -> bool {
        self.diagonal_identity && self.lower_stage_vanishes && self.same_stage_strictly_upper
    }
}

/// Verdict for the splitting of one level: the block map is certified to be
/// an isomorphism in every reliable degree, the block structure is
/// triangular with identity diagonal at chain level, and the coarse
/// stagewise identity holds.
#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub level: usize,
    pub source_homology: HomologyGroups,
    pub summands: Vec<SummandReport>,
    /// Homology of `S^r / S^{r+1}` for `r = 0..=n`.
    pub stage_homologies: Vec<HomologyGroups>,
    pub degree_certs: Vec<IsoCertificate>,
    pub coarse_match: bool,
    pub triangularity: BlockTriangularity,
    pub counting: Vec<CountingRow>,
    /// The degree-0 block matrix, included when small enough to audit.
    pub block_matrix_h0: Option<Vec<Vec<String>>>,
    pub passed: bool,
}

fn reliable_level_bound(space: &SimplicialSpace, n: usize) -> Option<usize> {
    if space.level(n).is_discrete() {
        None
    } else {
        Some(space.vertical_truncation().saturating_sub(1))
    }
}

struct SummandCtx<T> {
    id: SummandId,
    quotient: PointedQuotient,
    built: BuiltComplex,
    chain: ChainMap,
    ctx: CtxData<T>,
}

fn build_summand_ctxs<T: SnfInt>(
    space: &SimplicialSpace,
    n: usize,
    source: &BuiltComplex,
) -> Result<Vec<SummandCtx<T>>, Overflow> {
    summand_ids(n)
        .into_iter()
        .map(|id| {
            let quotient =
                summand_quotient(space, n, &id.seq).expect("summand quotient is well formed");
            let built = relative_chains(
                space.level(n),
                &quotient.numerator,
                &quotient.denominator,
                true,
            );
            let chain = lambda_chain_map(space, n, &id.seq, &quotient, source, &built);
            verify_chain_map(&source.complex, &built.complex, &chain)
                .expect("component maps are chain maps");
            let ctx = CtxData::<T>::new(&built.complex)?;
            Ok(SummandCtx {
                id,
                quotient,
                built,
                chain,
                ctx,
            })
        })
        .collect()
}

/// Stacks the per-summand presentation matrices of one degree and returns
/// the block matrix together with the direct-sum presentation.
fn stacked_block<T: SnfInt>(
    source_ctx: &CtxData<T>,
    summands: &[SummandCtx<T>],
    d: usize,
) -> Result<(DenseMat<T>, RelPres<T>), Overflow> {
    let src = &source_ctx.degrees[d];
    let blocks: Vec<DenseMat<T>> = summands
        .iter()
        .map(|s| induced_degree_matrix(&s.chain.matrices[d], src, &s.ctx.degrees[d]))
        .collect::<Result<_, _>>()?;
    let z_total: usize = summands.iter().map(|s| s.ctx.degrees[d].z).sum();
    let mut p = DenseMat::zero(z_total, src.z);
    let mut relations = Vec::new();
    let mut offset = 0;
    for (s, b) in summands.iter().zip(&blocks) {
        let dd = &s.ctx.degrees[d];
        for r in 0..dd.z {
            for c in 0..src.z {
                *p.at_mut(offset + r, c) = b.at(r, c).clone();
            }
        }
        for (i, f) in dd.factors.iter().enumerate() {
            relations.push((offset + i, f.clone()));
        }
        offset += dd.z;
    }
    Ok((
        p,
        RelPres {
            z: z_total,
            relations,
        },
    ))
}

fn triangularity_chain_checks<T: SnfInt>(
    space: &SimplicialSpace,
    n: usize,
    source: &BuiltComplex,
    summands: &[SummandCtx<T>],
) -> BlockTriangularity {
    let level = space.level(n);
    let mut diagonal_identity = true;
    let mut lower_stage_vanishes = true;
    let mut same_stage_strictly_upper = true;
    let mut violations = Vec::new();
    for target in summands {
        for q in 0..=level.truncation() {
            for (tpos, &idx) in target.built.basis_gens[q].iter().enumerate() {
                let g = GenId::new(q, idx);
                let Some(col) = source.pos[q][idx] else {
                    continue;
                };
                // diagonal block acts as the identity on the summand classes
                let column = target.chain.matrices[q].column(col);
                if column != [(tpos, 1)] {
                    diagonal_identity = false;
                    violations.push(format!(
                        "component {} is not the identity on {}",
                        target.id.seq,
                        level.display_ref(&SimplexRef::nondegenerate(g))
                    ));
                }
                for other in summands {
                    if other.id.r == target.id.r && other.id.seq < target.id.seq {
                        if !other.chain.matrices[q].column(col).is_empty() {
                            same_stage_strictly_upper = false;
                            violations.push(format!(
                                "component {} does not vanish on the {} classes at {}",
                                other.id.seq,
                                target.id.seq,
                                level.display_ref(&SimplexRef::nondegenerate(g))
                            ));
                        }
                    }
                }
            }
        }
    }
    // components of length below the degeneracy degree kill the simplex
    let table = space.degree_table(n);
    for q in 0..=level.truncation() {
        for idx in 0..level.gen_count(q) {
            let t = table.by_vdim[q][idx];
            let Some(col) = source.pos[q][idx] else {
                continue;
            };
            for s in summands.iter().filter(|s| s.id.r < t) {
                if !s.chain.matrices[q].column(col).is_empty() {
                    lower_stage_vanishes = false;
                    violations.push(format!(
                        "component {} does not kill the degree-{t} simplex {}",
                        s.id.seq,
                        level.display_ref(&SimplexRef::nondegenerate(GenId::new(q, idx)))
                    ));
                }
            }
        }
    }
    BlockTriangularity {
        diagonal_identity,
        lower_stage_vanishes,
        same_stage_strictly_upper,
        violations,
    }
}

fn build_split_t<T: SnfInt>(space: &SimplicialSpace, n: &usize) -> Result<SplitReport, Overflow> {
    let n = *n;
    let level = space.level(n);
    let bound = reliable_level_bound(space, n);
    let top = level.truncation();
    let check_through = bound.unwrap_or(top).min(top);

    let source = normalized_chains(level, true);
    let source_ctx = CtxData::<T>::new(&source.complex)?;
    let source_homology = homology(&source.complex, bound);
    let summands = build_summand_ctxs::<T>(space, n, &source)?;

    let mut degree_certs = Vec::new();
    let mut block_matrix_h0 = None;
    for d in 0..=check_through {
        let (p, tgt_pres) = stacked_block(&source_ctx, &summands, d)?;
        let src_pres = RelPres::from_degree(&source_ctx.degrees[d]);
        if d == 0 && p.rows() <= 24 && p.cols() <= 24 {
            block_matrix_h0 = Some(
                (0..p.rows())
                    .map(|r| (0..p.cols()).map(|c| format!("{:?}", p.at(r, c))).collect())
                    .collect(),
            );
        }
        degree_certs.push(certify_iso_t(d, &p, &src_pres, &tgt_pres)?);
    }

    let summand_reports: Vec<SummandReport> = summands
        .iter()
        .map(|s| SummandReport {
            r: s.id.r,
            seq: s.id.seq.to_string(),
            homology: homology(&s.built.complex, bound),
            class_counts: s.quotient.class_counts(),
        })
        .collect();

    let stage_homologies: Vec<HomologyGroups> = (0..=n)
        .map(|r| {
            let q = stage_quotient(space, n, r).expect("stage in range");
            let built = relative_chains(level, &q.numerator, &q.denominator, true);
            homology(&built.complex, bound)
        })
        .collect();
    let coarse_match = (0..=check_through).all(|d| {
        let b: usize = stage_homologies.iter().map(|h| h.betti(d)).sum();
        let mut torsion: Vec<_> = stage_homologies
            .iter()
            .flat_map(|h| h.torsion(d).to_vec())
            .collect();
        torsion.sort();
        let mut src_t = source_homology.torsion(d).to_vec();
        src_t.sort();
        source_homology.betti(d) == b && src_t == torsion
    });

    let counting: Vec<CountingRow> = (0..=check_through)
        .map(|d| {
            let summand_bettis: Vec<usize> =
                summand_reports.iter().map(|s| s.homology.betti(d)).collect();
            CountingRow {
                degree: d,
                source_betti: source_homology.betti(d),
                summand_total: summand_bettis.iter().sum(),
                summand_bettis,
            }
        })
        .collect();

    let triangularity = triangularity_chain_checks(space, n, &source, &summands);
    let passed = degree_certs.iter().all(|c| c.iso) && coarse_match && triangularity.passed();
    Ok(SplitReport {
        level: n,
        source_homology,
        summands: summand_reports,
        stage_homologies,
        degree_certs,
        coarse_match,
        triangularity,
        counting,
        block_matrix_h0,
        passed,
    })
}

/// Certifies the splitting of level `n`.
pub fn verify_theorem_splitting(space: &SimplicialSpace, n: usize) -> SplitReport {
    with_int_fallback!(build_split_t(space, &n))
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub level: usize,
    pub stage: usize,
    /// Every component of length `< t` vanishes on `S^t(X_n)` at chain
    /// level.
    pub kills_lower: bool,
    pub degree_certs: Vec<IsoCertificate>,
    pub violations: Vec<String>,
    pub passed: bool,
}

fn build_restriction_t<T: SnfInt>(
    space: &SimplicialSpace,
    n: &usize,
    t: &usize,
) -> Result<RestrictionReport, Overflow> {
    let (n, t) = (*n, *t);
    let level = space.level(n);
    let bound = reliable_level_bound(space, n);
    let top = level.truncation();
    let check_through = bound.unwrap_or(top).min(top);

    let stage = filtration_stage(space, n, t).expect("stage in range");
    let empty = SubComplex::empty(level);
    let source = relative_chains(level, &stage.members, &empty, true);
    let source_ctx = CtxData::<T>::new(&source.complex)?;
    let summands = build_summand_ctxs::<T>(space, n, &source)?;

    let mut violations = Vec::new();
    let mut kills_lower = true;
    for s in summands.iter().filter(|s| s.id.r < t) {
        if s.chain.matrices.iter().any(|m| !m.is_zero()) {
            kills_lower = false;
            violations.push(format!(
                "component {} does not kill stage {t} at level {n}",
                s.id.seq
            ));
        }
    }

    let upper: Vec<&SummandCtx<T>> = summands.iter().filter(|s| s.id.r >= t).collect();
    let mut degree_certs = Vec::new();
    for d in 0..=check_through {
        let src = &source_ctx.degrees[d];
        let mut z_total = 0;
        let mut relations = Vec::new();
        let mut blocks = Vec::new();
        for s in &upper {
            let b = induced_degree_matrix(&s.chain.matrices[d], src, &s.ctx.degrees[d])?;
            for (i, f) in s.ctx.degrees[d].factors.iter().enumerate() {
                relations.push((z_total + i, f.clone()));
            }
            z_total += s.ctx.degrees[d].z;
            blocks.push(b);
        }
        let mut p = DenseMat::zero(z_total, src.z);
        let mut offset = 0;
        for b in &blocks {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    *p.at_mut(offset + r, c) = b.at(r, c).clone();
                }
            }
            offset += b.rows();
        }
        let tgt_pres = RelPres {
            z: z_total,
            relations,
        };
        degree_certs.push(certify_iso_t(
            d,
            &p,
            &RelPres::from_degree(src),
            &tgt_pres,
        )?);
    }
    let passed = kills_lower && degree_certs.iter().all(|c| c.iso);
    Ok(RestrictionReport {
        level: n,
        stage: t,
        kills_lower,
        degree_certs,
        violations,
        passed,
    })
}

/// Certifies the restricted splitting `H̃(S^t(X_n)) → ⊕_{r >= t} ...`.
pub fn verify_restriction(space: &SimplicialSpace, n: usize, t: usize) -> RestrictionReport {
    with_int_fallback!(build_restriction_t(space, &n, &t))
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub level: usize,
    /// `H̃_k(F_j/F_{j-1})` of the realization's column filtration.
    pub filtration_quotient: Vec<DegreeHomology>,
    /// `H̃_{k-j}(X_j/S(X_j))`, shifted for comparison.
    pub level_quotient: Vec<DegreeHomology>,
    pub compared_range: (usize, usize),
    pub passed: bool,
}

/// Checks `H̃_k(F_j/F_{j-1}) ≅ H̃_{k-j}(X_j/S(X_j))` degreewise.
pub fn verify_realization_quotients(space: &SimplicialSpace, j: usize) -> RealizationReport {
    let nv = space.vertical_truncation();
    let rel = if space.level(j).is_discrete() {
        nv
    } else {
        nv.saturating_sub(1)
    };
    let tot = total_complex(space, true);
    let cq = column_quotient(space, &tot, j);
    let lhs = homology(&cq, Some(j + rel));
    let built = column_chains(space, j);
    let rhs = homology(&built.complex, Some(rel));
    let (lo, hi) = (j, j + rel.min(nv));
    let passed = (lo..=hi).all(|k| {
        let l = lhs.degree(k);
        let r = rhs.degree(k - j);
        match (l, r) {
            (Some(l), Some(r)) => l.betti == r.betti && l.torsion == r.torsion,
            (None, Some(r)) => r.is_zero(),
            (Some(l), None) => l.is_zero(),
            (None, None) => true,
        }
    });
    RealizationReport {
        level: j,
        filtration_quotient: lhs.degrees,
        level_quotient: rhs.degrees,
        compared_range: (lo, hi),
        passed,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryRow {
    pub degree: usize,
    pub stage_quotient: String,
    pub shifted_filtration: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub level: usize,
    pub stage: usize,
    pub multiplicity: usize,
    pub rows: Vec<CorollaryRow>,
    pub passed: bool,
}

/// Checks `H̃_k(S^t/S^{t+1}) ≅ ⊕_{C(n,t)} H̃_{k+n-t}(F_{n-t}/F_{n-t-1})`.
pub fn verify_corollary_shift(space: &SimplicialSpace, n: usize, t: usize) -> CorollaryReport {
    let level = space.level(n);
    let multiplicity = binomial(n, t);
    let bound = reliable_level_bound(space, n);
    let top = level.truncation();
    let check_through = bound.unwrap_or(top).min(top);

    let q = stage_quotient(space, n, t).expect("stage in range");
    let built = relative_chains(level, &q.numerator, &q.denominator, true);
    let lhs = homology(&built.complex, bound);

    let j = n - t;
    let tot = total_complex(space, true);
    let cq = column_quotient(space, &tot, j);
    let rhs = homology(&cq, None);

    let mut rows = Vec::new();
    let mut passed = true;
    for k in 0..=check_through {
        let l = lhs.degree(k).cloned().unwrap_or(DegreeHomology {
            degree: k,
            betti: 0,
            torsion: vec![],
            reliable: true,
        });
        let shifted = rhs.degree(k + j).cloned().unwrap_or(DegreeHomology {
            degree: k + j,
            betti: 0,
            torsion: vec![],
            reliable: true,
        });
        let mut expected_torsion: Vec<_> = std::iter::repeat(shifted.torsion.clone())
            .take(multiplicity)
            .flatten()
            .collect();
        expected_torsion.sort();
        let mut lt = l.torsion.clone();
        lt.sort();
        let ok = l.betti == multiplicity * shifted.betti && lt == expected_torsion;
        passed &= ok;
        rows.push(CorollaryRow {
            degree: k,
            stage_quotient: l.group_string(),
            shifted_filtration: format!(
                "{} copies of {}",
                multiplicity,
                shifted.group_string()
            ),
            ok,
        });
    }
    CorollaryReport {
        level: n,
        stage: t,
        multiplicity,
        rows,
        passed,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NaturalitySquare {
    pub r: usize,
    pub seq: String,
    pub chain_equal: bool,
    pub homology_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NaturalityReport {
    pub level: usize,
    pub squares: Vec<NaturalitySquare>,
    pub passed: bool,
}

/// Level chain map of a morphism of simplicial spaces on normalized chains.
fn level_chain_map(
    f: &SpaceMap,
    src_space: &SimplicialSpace,
    tgt_space: &SimplicialSpace,
    n: usize,
    source: &BuiltComplex,
    target: &BuiltComplex,
) -> ChainMap {
    let src_level = src_space.level(n);
    let mut matrices = Vec::with_capacity(src_level.truncation() + 1);
    for q in 0..=src_level.truncation() {
        let mut triplets = Vec::new();
        for (col, &idx) in source.basis_gens[q].iter().enumerate() {
            let x = SimplexRef::nondegenerate(GenId::new(q, idx));
            let y = f.eval(tgt_space, n, &x).expect("valid image");
            if y.is_degenerate() {
                continue;
            }
            if let Some(row) = target.pos[q][y.gen.idx] {
                triplets.push((row, col, 1));
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

fn naturality_t<T: SnfInt>(
    f: &SpaceMap,
    src_space: &SimplicialSpace,
    tgt_space: &SimplicialSpace,
    n: &usize,
) -> Result<NaturalityReport, Overflow> {
    let n = *n;
    let src_level = src_space.level(n);
    let tgt_level = tgt_space.level(n);
    let x_source = normalized_chains(src_level, true);
    let y_source = normalized_chains(tgt_level, true);
    let f_chain = level_chain_map(f, src_space, tgt_space, n, &x_source, &y_source);
    verify_chain_map(&x_source.complex, &y_source.complex, &f_chain)
        .expect("space morphisms induce chain maps");
    let x_ctx = CtxData::<T>::new(&x_source.complex)?;

    let mut squares = Vec::new();
    let mut passed = true;
    for id in summand_ids(n) {
        let xq = summand_quotient(src_space, n, &id.seq).expect("well formed");
        let yq = summand_quotient(tgt_space, n, &id.seq).expect("well formed");
        let x_built = relative_chains(src_level, &xq.numerator, &xq.denominator, true);
        let y_built = relative_chains(tgt_level, &yq.numerator, &yq.denominator, true);
        let lam_x = lambda_chain_map(src_space, n, &id.seq, &xq, &x_source, &x_built);
        let lam_y = lambda_chain_map(tgt_space, n, &id.seq, &yq, &y_source, &y_built);
        // the induced map of summands: classes push forward along f
        let f_hat = {
            let mut matrices = Vec::new();
            for q in 0..=src_level.truncation() {
                let mut triplets = Vec::new();
                for (col, &idx) in x_built.basis_gens[q].iter().enumerate() {
                    let x = SimplexRef::nondegenerate(GenId::new(q, idx));
                    let y = f.eval(tgt_space, n, &x).expect("valid image");
                    if y.is_degenerate() {
                        continue;
                    }
                    if let Some(row) = y_built.pos[q][y.gen.idx] {
                        triplets.push((row, col, 1));
                    }
                }
                matrices.push(SparseIntMat::from_triplets(
                    y_built.complex.size(q),
                    x_built.complex.size(q),
                    triplets,
                ));
            }
            ChainMap { matrices }
        };
        let a = lam_y.compose(&f_chain);
        let b = f_hat.compose(&lam_x);
        let chain_equal = a
            .matrices
            .iter()
            .zip(&b.matrices)
            .all(|(x, y)| x == y);
        let homology_equal = if chain_equal {
            true
        } else {
            let y_ctx = CtxData::<T>::new(&y_built.complex)?;
            (0..=x_source.complex.top_degree()).try_fold(true, |acc, d| {
                let ma = induced_degree_matrix(&a.matrices[d], &x_ctx.degrees[d], &y_ctx.degrees[d])?;
                let mb = induced_degree_matrix(&b.matrices[d], &x_ctx.degrees[d], &y_ctx.degrees[d])?;
                let pres = pres_of(&y_ctx.degrees[d]);
                Ok::<bool, Overflow>(acc && matrices_agree_mod(&ma, &mb, &pres))
            })?
        };
        passed &= chain_equal || homology_equal;
        squares.push(NaturalitySquare {
            r: id.r,
            seq: id.seq.to_string(),
            chain_equal,
            homology_equal,
        });
    }
    Ok(NaturalityReport {
        level: n,
        squares,
        passed,
    })
}

fn pres_of<T: SnfInt>(d: &crate::homology::DegreeData<T>) -> RelPres<T> {
    RelPres::from_degree(d)
}

fn matrices_agree_mod<T: SnfInt>(a: &DenseMat<T>, b: &DenseMat<T>, pres: &RelPres<T>) -> bool {
    let rel: std::collections::BTreeMap<usize, &T> =
        pres.relations.iter().map(|(i, f)| (*i, f)).collect();
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let diff = match a.at(r, c).checked_sub(b.at(r, c)) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let ok = match rel.get(&r) {
                Some(f) => diff.is_zero() || f.divides(&diff),
                None => diff.is_zero(),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Checks that the splitting components commute with a morphism of
/// simplicial spaces, at chain level where possible and in homology
/// otherwise.
pub fn verify_naturality(
    f: &SpaceMap,
    src_space: &SimplicialSpace,
    tgt_space: &SimplicialSpace,
    n: usize,
) -> NaturalityReport {
    with_int_fallback!(naturality_t(f, src_space, tgt_space, &n))
}

/// The whole splitting map of one level as data: per-summand induced maps
/// on homology presentations.
pub fn build_block_map(space: &SimplicialSpace, n: usize) -> Vec<(SummandId, InducedMap)> {
    fn build_t<T: SnfInt>(
        space: &SimplicialSpace,
        n: &usize,
    ) -> Result<Vec<(SummandId, InducedMap)>, Overflow> {
        let n = *n;
        let source = normalized_chains(space.level(n), true);
        let source_ctx = CtxData::<T>::new(&source.complex)?;
        let summands = build_summand_ctxs::<T>(space, n, &source)?;
        summands
            .into_iter()
            .map(|s| {
                let degrees = (0..=space.level(n).truncation())
                    .map(|d| {
                        let m = induced_degree_matrix(
                            &s.chain.matrices[d],
                            &source_ctx.degrees[d],
                            &s.ctx.degrees[d],
                        )?;
                        Ok(InducedDegreeMap {
                            degree: d,
                            matrix: m.map(SnfInt::to_bigint),
                            src: crate::homology::pres_summary(&source_ctx.degrees[d]),
                            tgt: crate::homology::pres_summary(&s.ctx.degrees[d]),
                        })
                    })
                    .collect::<Result<Vec<_>, Overflow>>()?;
                Ok((s.id, InducedMap { degrees }))
            })
            .collect()
    }
    with_int_fallback!(build_t(space, &n))
}
