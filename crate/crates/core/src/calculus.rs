//! Composite face and degeneracy operators indexed by admissible sequences,
//! and the exhaustive checks for their interaction with the degeneracy
//! filtration: the retraction `d_{χ(J)} s_J = id`, the triangularity of
//! `d_{χ(I)} s_J` for `I < J`, and the filtration behaviour of the
//! product-of-faces map `δ(r)`.

use serde::Serialize;

use crate::simplicial::{FiniteSimplicialSet, OpError, SimplexRef};
use crate::space::{SimplicialMap, SimplicialSpace};
use crate::word::{enumerate_admissible, AdmissibleSeq};

/// `s_J(x) = s_{j_r} ∘ ... ∘ s_{j_1}(x)` within one simplicial set.
pub fn composite_degeneracy(
    set: &FiniteSimplicialSet,
    x: &SimplexRef,
    seq: &AdmissibleSeq,
) -> Result<SimplexRef, OpError> {
    set.apply_word(&seq.word(), x)
}

/// The iterated face `d_{a_1} ∘ d_{a_2} ∘ ... ∘ d_{a_m}(x)`, rightmost
/// operator applied first.
pub fn composite_face(
    set: &FiniteSimplicialSet,
    x: &SimplexRef,
    seq: &[usize],
) -> Result<SimplexRef, OpError> {
    let mut cur = x.clone();
    for &a in seq.iter().rev() {
        cur = set.face(&cur, a)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangularityViolation {
    pub i_seq: String,
    pub j_seq: String,
    pub simplex: String,
    pub expected: String,
    pub got: String,
}

/// Result of checking `d_{χ(I)} s_J(x) = x` for `I = J` and
/// `d_{χ(I)} s_J(x)` horizontally degenerate for `I < J`, over every pair of
/// admissible sequences and every vertical simplex of level `n - r`.
#[derive(Clone, Debug, Serialize)]
pub struct TriangularityReport {
    pub level: usize,
    pub length: usize,
    pub pairs_checked: usize,
    pub simplices_checked: usize,
    pub violations: Vec<TriangularityViolation>,
}

impl TriangularityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively verifies the diagonal and sub-diagonal behaviour of the
/// composite operators on level `n`, for sequences of length `r`.
///
/// Checks run over vertical generators; both sides commute with vertical
/// degeneracies, so equality and degeneracy of the values on arbitrary
/// simplices reduce to the generator case.
pub fn triangularity_check(
    space: &SimplicialSpace,
    n: usize,
    r: usize,
) -> Result<TriangularityReport, OpError> {
    assert!(n <= space.horizontal_truncation() && r <= n);
    let seqs = enumerate_admissible(n, r);
    let source = space.level(n - r);
    let mut violations = Vec::new();
    let mut pairs = 0;
    let mut checked = 0;
    for i_seq in &seqs {
        for j_seq in &seqs {
            if i_seq > j_seq {
                continue;
            }
            pairs += 1;
            for q in 0..=source.truncation() {
                for g in source.gen_ids(q) {
                    let x = SimplexRef::nondegenerate(g);
                    checked += 1;
                    let up = space.hdeg_seq_eval(n - r, j_seq, &x)?;
                    let down = space.hface_seq_eval(n, &i_seq.chi(), &up)?;
                    if i_seq == j_seq {
                        if down != x {
                            violations.push(TriangularityViolation {
                                i_seq: i_seq.to_string(),
                                j_seq: j_seq.to_string(),
                                simplex: source.display_ref(&x),
                                expected: source.display_ref(&x),
                                got: source.display_ref(&down),
                            });
                        }
                    } else if space.hdegree(n - r, &down) == 0 {
                        violations.push(TriangularityViolation {
                            i_seq: i_seq.to_string(),
                            j_seq: j_seq.to_string(),
                            simplex: source.display_ref(&x),
                            expected: "a horizontally degenerate simplex".into(),
                            got: source.display_ref(&down),
                        });
                    }
                }
            }
        }
    }
    Ok(TriangularityReport {
        level: n,
        length: r,
        pairs_checked: pairs,
        simplices_checked: checked,
        violations,
    })
}

/// The components of `δ(r) : X_n → (X_{n-r})^{C(n,r)}`, ordered by the
/// sequence order; the component for `J` is the composite face `d_{χ(J)}`.
/// For `r = 0` the single component is the identity.
pub fn delta_components(
    space: &SimplicialSpace,
    n: usize,
    r: usize,
) -> Result<Vec<(AdmissibleSeq, SimplicialMap)>, OpError> {
    assert!(n <= space.horizontal_truncation() && r <= n);
    let mut out = Vec::new();
    for seq in enumerate_admissible(n, r) {
        let mut map = SimplicialMap::identity(space.level(n));
        let mut level = n;
        for &a in seq.chi().iter().rev() {
            map = space.hface_map(level, a).compose(space.level(level - 1), &map)?;
            level -= 1;
        }
        out.push((seq, map));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaFiltrationReport {
    pub level: usize,
    pub length: usize,
    pub components: usize,
    pub simplices_checked: usize,
    pub violations: Vec<TriangularityViolation>,
}

impl DeltaFiltrationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies that every component of `δ(r)` sends simplices of degeneracy
/// degree `>= r + 1` to degenerate simplices, i.e. that `δ(r)` restricts to
/// a map `S^{r+1}(X_n) → (S(X_{n-r}))^{C(n,r)}`.
pub fn delta_filtration_check(
    space: &SimplicialSpace,
    n: usize,
    r: usize,
) -> Result<DeltaFiltrationReport, OpError> {
    assert!(n <= space.horizontal_truncation() && r <= n);
    let seqs = enumerate_admissible(n, r);
    let level = space.level(n);
    let mut violations = Vec::new();
    let mut checked = 0;
    for q in 0..=level.truncation() {
        for g in level.gen_ids(q) {
            let x = SimplexRef::nondegenerate(g);
            if space.hdegree(n, &x) < r + 1 {
                continue;
            }
            for seq in &seqs {
                checked += 1;
                let down = space.hface_seq_eval(n, &seq.chi(), &x)?;
                if space.hdegree(n - r, &down) == 0 {
                    violations.push(TriangularityViolation {
                        i_seq: seq.to_string(),
                        j_seq: seq.to_string(),
                        simplex: level.display_ref(&x),
                        expected: "a horizontally degenerate image".into(),
                        got: space.level(n - r).display_ref(&down),
                    });
                }
            }
        }
    }
    Ok(DeltaFiltrationReport {
        level: n,
        length: r,
        components: seqs.len(),
        simplices_checked: checked,
        violations,
    })
}

/// Identifier of a wedge summand: a stage `r` together with an admissible
/// sequence of that length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SummandId {
    pub r: usize,
    pub seq: AdmissibleSeq,
}

/// All summand identifiers for level `n`, ordered by stage and then by the
/// sequence order. There are `C(n, r)` sequences for each `r`.
pub fn summand_ids(n: usize) -> Vec<SummandId> {
    (0..=n)
        .flat_map(|r| {
            enumerate_admissible(n, r)
                .into_iter()
                .map(move |seq| SummandId { r, seq })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{FiniteSimplicialSet, GenId};
    use crate::word::DegeneracyWord;

    #[test]
    fn composite_ops_round_trip() {
        let set = FiniteSimplicialSet::point(4);
        let v = SimplexRef::nondegenerate(GenId::new(0, 0));
        let j = AdmissibleSeq::new(vec![1, 0]).unwrap();
        let up = composite_degeneracy(&set, &v, &j).unwrap();
        assert_eq!(up.word.indices(), &[1, 0]);
        let back = composite_face(&set, &up, &j.chi()).unwrap();
        assert_eq!(back, v);

        // s_2 s_1 applied to s_0(v) normalizes to the full staircase
        let s0v = set.degeneracy(&v, 0).unwrap();
        let j = AdmissibleSeq::new(vec![2, 1]).unwrap();
        let up = composite_degeneracy(&set, &s0v, &j).unwrap();
        assert_eq!(up.word.indices(), &[2, 1, 0]);

        // identity chase on an edge: d_0 d_2 s_2 s_0 = id
        let mut b = FiniteSimplicialSet::builder(4);
        let w = b.add_generator(0, "w".into());
        let e = b.add_generator(1, "e".into());
        b.set_faces(
            e,
            vec![SimplexRef::nondegenerate(w), SimplexRef::nondegenerate(w)],
        );
        let set = b.build().unwrap();
        let eref = SimplexRef::nondegenerate(e);
        let s20 = set
            .apply_word(&DegeneracyWord::new(vec![2, 0]), &eref)
            .unwrap();
        assert_eq!(s20.word.indices(), &[2, 0]);
        let back = composite_face(&set, &s20, &[0, 2]).unwrap();
        assert_eq!(back, eref);
    }

    #[test]
    fn empty_sequence_is_identity() {
        let set = FiniteSimplicialSet::point(2);
        let v = SimplexRef::nondegenerate(GenId::new(0, 0));
        assert_eq!(
            composite_degeneracy(&set, &v, &AdmissibleSeq::empty()).unwrap(),
            v
        );
        assert_eq!(composite_face(&set, &v, &[]).unwrap(), v);
    }

    #[test]
    fn summand_ids_count_by_binomial() {
        let ids = summand_ids(3);
        assert_eq!(ids.len(), 1 + 3 + 3 + 1);
        assert_eq!(ids[0].r, 0);
        assert!(ids[0].seq.is_empty());
        assert_eq!(ids.last().unwrap().seq.indices(), &[2, 1, 0]);
    }
}
