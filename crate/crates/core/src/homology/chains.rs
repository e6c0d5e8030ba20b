//! Normalized chain complexes of finite simplicial sets and of quotients of
//! sub-simplicial-sets.
//!
//! The degree-`d` chain group is free on the nondegenerate `d`-simplices
//! (of the numerator, minus the denominator, in the relative case); the
//! boundary is the alternating face sum with degenerate faces and
//! denominator faces sent to zero. A quotient by an empty denominator is
//! the subobject itself: no basepoint is adjoined and the `reduced` flag
//! decides whether the complex carries the augmentation.

use crate::simplicial::{FiniteSimplicialSet, GenId, SimplexRef, SubComplex};

use super::matrix::SparseIntMat;
use super::ChainComplex;

/// A chain complex together with the translation between ambient generator
/// indices and basis positions.
#[derive(Clone, Debug)]
pub struct BuiltComplex {
    pub complex: ChainComplex,
    /// basis position → ambient generator index, per degree
    pub basis_gens: Vec<Vec<usize>>,
    /// ambient generator index → basis position, per degree
    pub pos: Vec<Vec<Option<usize>>>,
}

impl BuiltComplex {
    pub fn class_index(&self, g: GenId) -> Option<usize> {
        self.pos.get(g.dim).and_then(|v| v.get(g.idx).copied())?
    }

    pub fn basis_gen(&self, degree: usize, i: usize) -> GenId {
        GenId {
            dim: degree,
            idx: self.basis_gens[degree][i],
        }
    }
}

/// Normalized chains of a whole simplicial set; `reduced` adds the
/// augmentation in degree 0.
pub fn normalized_chains(set: &FiniteSimplicialSet, reduced: bool) -> BuiltComplex {
    let full = SubComplex::full(set);
    let empty = SubComplex::empty(set);
    relative_chains(set, &full, &empty, reduced)
}

/// Normalized chains of `numerator / denominator` inside `set`.
///
/// With a nonempty denominator the result is the relative complex, which is
/// the reduced complex of the pointed quotient, and the `reduced` flag is
/// ignored. With an empty denominator the quotient is the numerator itself
/// and `reduced` applies.
pub fn relative_chains(
    set: &FiniteSimplicialSet,
    numerator: &SubComplex,
    denominator: &SubComplex,
    reduced: bool,
) -> BuiltComplex {
    debug_assert!(denominator.is_subset_of(numerator));
    debug_assert!(numerator.validate_closed(set).is_ok());
    debug_assert!(denominator.validate_closed(set).is_ok());
    let top = set.truncation();
    let mut basis_gens: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    let mut pos: Vec<Vec<Option<usize>>> = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let mut per = vec![None; set.gen_count(d)];
        let mut gens = Vec::new();
        for idx in numerator.gen_indices(d) {
            if !denominator.contains_gen(GenId { dim: d, idx }) {
                per[idx] = Some(gens.len());
                gens.push(idx);
            }
        }
        basis_gens.push(gens);
        pos.push(per);
    }
    let sizes: Vec<usize> = basis_gens.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = (0..=top)
        .map(|d| {
            basis_gens[d]
                .iter()
                .map(|&idx| set.label(GenId { dim: d, idx }).to_string())
                .collect()
        })
        .collect();
    let mut boundaries = Vec::with_capacity(top);
    for d in 1..=top {
        let mut triplets = Vec::new();
        for (col, &idx) in basis_gens[d].iter().enumerate() {
            let x = SimplexRef::nondegenerate(GenId { dim: d, idx });
            for i in 0..=d {
                let f = set.face(&x, i).expect("valid face within truncation");
                if f.is_degenerate() {
                    continue;
                }
                let Some(row) = pos[d - 1][f.gen.idx] else {
                    continue; // face lands in the denominator
                };
                let sign = if i % 2 == 0 { 1 } else { -1 };
                triplets.push((row, col, sign));
            }
        }
        boundaries.push(SparseIntMat::from_triplets(sizes[d - 1], sizes[d], triplets));
    }
    let augmented = reduced && denominator.is_empty();
    let complex = ChainComplex::new(sizes, labels, boundaries, augmented)
        .expect("normalized chains satisfy ∂∂ = 0");
    BuiltComplex {
        complex,
        basis_gens,
        pos,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::simplicial::FiniteSimplicialSet;

    #[test]
    fn reduced_point_is_acyclic() {
        let pt = FiniteSimplicialSet::point(2);
        let c = normalized_chains(&pt, true);
        let h = homology(&c.complex, None);
        assert!(h.degrees.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn discrete_points_have_free_reduced_h0() {
        let x = FiniteSimplicialSet::discrete(
            &["a".into(), "b".into(), "c".into(), "d".into()],
            2,
        );
        let c = normalized_chains(&x, true);
        let h = homology(&c.complex, None);
        assert_eq!(h.betti(0), 3);
        assert_eq!(h.betti(1), 0);
    }

    #[test]
    fn circle_has_one_loop() {
        let mut b = FiniteSimplicialSet::builder(2);
        let v = b.add_generator(0, "v".into());
        let e = b.add_generator(1, "e".into());
        b.set_faces(
            e,
            vec![SimplexRef::nondegenerate(v), SimplexRef::nondegenerate(v)],
        );
        let s1 = b.build().unwrap();
        let c = normalized_chains(&s1, true);
        let h = homology(&c.complex, Some(1));
        assert_eq!(h.betti(0), 0);
        assert_eq!(h.betti(1), 1);
        assert!(h.torsion(1).is_empty());
    }
}
