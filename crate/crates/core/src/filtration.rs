//! The decreasing degeneracy filtration `S^t(X_n)` of a level in a
//! simplicial space, its stage quotients, and the wedge decomposition of the
//! quotients by admissible degeneracy images.
//!
//! Stage membership is computed from the retraction criterion: a simplex
//! lies in `S^t(X_n)` iff `s_J(d_{χ(J)}(x)) = x` for some admissible `J` of
//! length `t`. Membership of an arbitrary vertical simplex reduces to its
//! nondegenerate core, so all set arithmetic happens on generators.

use serde::Serialize;

use crate::simplicial::{OpError, SimplexRef, SubComplex};
use crate::space::SimplicialSpace;
use crate::word::{enumerate_admissible, AdmissibleSeq};

/// The largest `t` such that `x` is a `t`-fold horizontal degeneracy.
pub fn degeneracy_degree(space: &SimplicialSpace, n: usize, x: &SimplexRef) -> usize {
    space.hdegree(n, x)
}

/// One stage `S^t(X_n)` of the filtration, as a vertical sub-simplicial-set
/// of level `n`.
#[derive(Clone, Debug)]
pub struct FiltrationStage {
    pub level: usize,
    pub stage: usize,
    pub members: SubComplex,
}

impl FiltrationStage {
    pub fn gen_counts(&self) -> Vec<usize> {
        self.members.gen_counts()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `S^t(X_n)` for `0 <= t <= n + 1`; `S^0` is the whole level and `S^{n+1}`
/// is empty.
pub fn filtration_stage(
    space: &SimplicialSpace,
    n: usize,
    t: usize,
) -> Result<FiltrationStage, OpError> {
    if n > space.horizontal_truncation() || t > n + 1 {
        return Err(OpError::MalformedRef(format!(
            "stage ({n},{t}) out of range"
        )));
    }
    let table = space.degree_table(n);
    let members = SubComplex::from_predicate(space.level(n), |g| table.by_vdim[g.dim][g.idx] >= t);
    Ok(FiltrationStage {
        level: n,
        stage: t,
        members,
    })
}

/// A (possibly unpointed) quotient of sub-simplicial-sets of one level.
/// When the denominator is empty the quotient is the numerator itself and
/// no basepoint is adjoined.
#[derive(Clone, Debug)]
pub struct PointedQuotient {
    pub level: usize,
    pub numerator: SubComplex,
    pub denominator: SubComplex,
}

impl PointedQuotient {
    pub fn pointed(&self) -> bool {
        !self.denominator.is_empty()
    }

    /// Generators of the numerator not in the denominator, per vertical
    /// dimension: the non-basepoint classes that survive normalization.
    pub fn class_counts(&self) -> Vec<usize> {
        self.numerator
            .gen_counts()
            .iter()
            .zip(self.denominator.gen_counts())
            .map(|(a, b)| a - b)
            .collect()
    }
}

/// The stage quotient `S^t(X_n) / S^{t+1}(X_n)`.
pub fn stage_quotient(
    space: &SimplicialSpace,
    n: usize,
    t: usize,
) -> Result<PointedQuotient, OpError> {
    let numerator = filtration_stage(space, n, t)?.members;
    let denominator = filtration_stage(space, n, t + 1)?.members;
    Ok(PointedQuotient {
        level: n,
        numerator,
        denominator,
    })
}

/// The wedge summand `ŝ_J(X_{n-r}) = s_J(X_{n-r}) / s_J S(X_{n-r})` as a
/// quotient of subcomplexes of level `n`. Membership in the image of `s_J`
/// is decided by the retraction test; the unique preimage of a member is
/// `d_{χ(J)}` of it.
pub fn summand_quotient(
    space: &SimplicialSpace,
    n: usize,
    seq: &AdmissibleSeq,
) -> Result<PointedQuotient, OpError> {
    let r = seq.len();
    assert!(r <= n && n <= space.horizontal_truncation());
    let level = space.level(n);
    let mut numerator = SubComplex::empty(level);
    let mut denominator = SubComplex::empty(level);
    for q in 0..=level.truncation() {
        for g in level.gen_ids(q) {
            let x = SimplexRef::nondegenerate(g);
            if !space.retracts_through(n, seq, &x) {
                continue;
            }
            numerator.insert(g);
            let pre = space.hface_seq_eval(n, &seq.chi(), &x)?;
            if space.hdegree(n - r, &pre) >= 1 {
                denominator.insert(g);
            }
        }
    }
    Ok(PointedQuotient {
        level: n,
        numerator,
        denominator,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WedgeSummandWitness {
    pub seq: String,
    /// Non-basepoint classes contributed per vertical dimension.
    pub class_counts: Vec<usize>,
}

/// Witness data for the wedge decomposition of `S^r(X_n)/S^{r+1}(X_n)`:
/// the summand injections cover the quotient, meet pairwise only in the
/// basepoint, and are disjoint from it away from their own basepoints.
#[derive(Clone, Debug, Serialize)]
pub struct WedgeWitness {
    pub level: usize,
    pub r: usize,
    pub summands: Vec<WedgeSummandWitness>,
    /// Simplices of degree exactly `r`, per vertical dimension.
    pub quotient_class_counts: Vec<usize>,
    pub cover_ok: bool,
    pub disjoint_ok: bool,
    pub counts_ok: bool,
    pub counterexample: Option<String>,
}

impl WedgeWitness {
    pub fn passed(&self) -> bool {
        self.cover_ok && self.disjoint_ok && self.counts_ok
    }
}

/// Checks that the summand inclusions assemble to a bijection
/// `∨_J ŝ_J(X_{n-r}) → S^r(X_n)/S^{r+1}(X_n)`.
///
/// For each generator `x` of level `n`, the number of summands containing
/// `x` away from their basepoint must be one if `x` has degree exactly `r`
/// and zero otherwise.
pub fn wedge_decomposition(
    space: &SimplicialSpace,
    n: usize,
    r: usize,
) -> Result<WedgeWitness, OpError> {
    assert!(r <= n && n <= space.horizontal_truncation());
    let level = space.level(n);
    let seqs = enumerate_admissible(n, r);
    let quotients: Vec<PointedQuotient> = seqs
        .iter()
        .map(|s| summand_quotient(space, n, s))
        .collect::<Result<_, _>>()?;

    let mut cover_ok = true;
    let mut disjoint_ok = true;
    let mut counterexample = None;
    for q in 0..=level.truncation() {
        for g in level.gen_ids(q) {
            let x = SimplexRef::nondegenerate(g);
            let degree = space.hdegree(n, &x);
            let hits = quotients
                .iter()
                .filter(|quot| quot.numerator.contains_gen(g) && !quot.denominator.contains_gen(g))
                .count();
            let expected = usize::from(degree == r);
            if hits != expected {
                if degree == r {
                    cover_ok = false;
                } else {
                    disjoint_ok = false;
                }
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "{} at level {n} has degree {degree} but {hits} summand hits",
                        level.display_ref(&x)
                    ));
                }
            }
        }
    }

    let table = space.degree_table(n);
    let quotient_class_counts: Vec<usize> = (0..=level.truncation())
        .map(|q| table.by_vdim[q].iter().filter(|&&d| d == r).count())
        .collect();
    let summands: Vec<WedgeSummandWitness> = seqs
        .iter()
        .zip(&quotients)
        .map(|(s, quot)| WedgeSummandWitness {
            seq: s.to_string(),
            class_counts: quot.class_counts(),
        })
        .collect();
    let totals: Vec<usize> = (0..=level.truncation())
        .map(|q| summands.iter().map(|s| s.class_counts[q]).sum())
        .collect();
    let counts_ok = totals == quotient_class_counts;

    Ok(WedgeWitness {
        level: n,
        r,
        summands,
        quotient_class_counts,
        cover_ok,
        disjoint_ok,
        counts_ok,
        counterexample,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub level: usize,
    pub r: usize,
    pub pairs_checked: usize,
    pub violations: Vec<String>,
}

impl IntersectionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies `s_I(X_{n-r}) ∩ s_J(X_{n-r}) ⊆ S^{r+1}(X_n)` for all pairs of
/// distinct admissible sequences of length `r`.
pub fn intersection_check(
    space: &SimplicialSpace,
    n: usize,
    r: usize,
) -> Result<IntersectionReport, OpError> {
    assert!(r <= n && n <= space.horizontal_truncation());
    let level = space.level(n);
    let seqs = enumerate_admissible(n, r);
    let mut violations = Vec::new();
    let mut pairs = 0;
    for (a, i_seq) in seqs.iter().enumerate() {
        for j_seq in seqs.iter().skip(a + 1) {
            pairs += 1;
            for q in 0..=level.truncation() {
                for g in level.gen_ids(q) {
                    let x = SimplexRef::nondegenerate(g);
                    if space.retracts_through(n, i_seq, &x)
                        && space.retracts_through(n, j_seq, &x)
                        && space.hdegree(n, &x) < r + 1
                    {
                        violations.push(format!(
                            "{} lies in im s_{i_seq} ∩ im s_{j_seq} with degree {}",
                            level.display_ref(&x),
                            space.hdegree(n, &x)
                        ));
                    }
                }
            }
        }
    }
    Ok(IntersectionReport {
        level: n,
        r,
        pairs_checked: pairs,
        violations,
    })
}
