mod common;

use common::{complex_chains, complex_homology};
use num_bigint::BigUint;
use suspsplit_core::constructions::{
    commuting_nerve, order_complex, AbstractSimplicialComplex, FiniteGroup,
};
use suspsplit_core::homology::chains::normalized_chains;
use suspsplit_core::homology::matrix::SparseIntMat;
use suspsplit_core::homology::smith::{rank_bareiss, smith};
use suspsplit_core::homology::{
    certify_quasi_iso, group_string, homology, induced_map, verify_chain_map, ChainMap,
    HomologyError,
};
use suspsplit_core::simplicial::{FiniteSimplicialSet, GenId, SimplexRef};

fn assert_groups(
    h: &suspsplit_core::homology::HomologyGroups,
    expect: &[(usize, &str)],
) {
    for &(d, s) in expect {
        assert_eq!(
            h.degree(d).map(|g| g.group_string()).as_deref(),
            Some(s),
            "degree {d}"
        );
    }
}

#[test]
fn order_complex_homology_matches_the_complex_oracle() {
    let samples = [
        AbstractSimplicialComplex::boundary_of_simplex(2),
        AbstractSimplicialComplex::boundary_of_simplex(3),
        AbstractSimplicialComplex::rp2_six(),
        AbstractSimplicialComplex::full_simplex(3),
        AbstractSimplicialComplex::disjoint_union(
            &AbstractSimplicialComplex::boundary_of_simplex(2),
            &AbstractSimplicialComplex::full_simplex(0),
        ),
    ];
    for k in &samples {
        let set = order_complex(k, k.dim() + 1);
        let via_sets = homology(&normalized_chains(&set, true).complex, None);
        let via_oracle = complex_homology(k, true);
        for d in 0..=k.dim() {
            assert_eq!(
                via_sets.betti(d),
                via_oracle.betti(d),
                "betti {d} of {:?}",
                k.facets()
            );
            assert_eq!(via_sets.torsion(d), via_oracle.torsion(d), "torsion {d}");
        }
    }
}

#[test]
fn projective_plane_homology() {
    let k = AbstractSimplicialComplex::rp2_six();
    let set = order_complex(&k, 3);
    let reduced = homology(&normalized_chains(&set, true).complex, Some(2));
    assert_groups(&reduced, &[(0, "0"), (1, "Z/2"), (2, "0")]);
    assert!(reduced.degree(2).unwrap().reliable);
    let unreduced = homology(&normalized_chains(&set, false).complex, Some(2));
    assert_groups(&unreduced, &[(0, "Z"), (1, "Z/2"), (2, "0")]);
}

#[test]
fn sphere_and_circle_homology() {
    let circle = order_complex(&AbstractSimplicialComplex::boundary_of_simplex(2), 2);
    let h = homology(&normalized_chains(&circle, true).complex, Some(1));
    assert_groups(&h, &[(0, "0"), (1, "Z")]);

    let sphere = order_complex(&AbstractSimplicialComplex::boundary_of_simplex(3), 3);
    let h = homology(&normalized_chains(&sphere, true).complex, Some(2));
    assert_groups(&h, &[(0, "0"), (1, "0"), (2, "Z")]);
}

#[test]
fn discrete_points_reduced_rank() {
    for k in 1..=5 {
        let labels: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
        let x = FiniteSimplicialSet::discrete(&labels, 1);
        let h = homology(&normalized_chains(&x, true).complex, None);
        assert_eq!(h.betti(0), k - 1);
    }
}

#[test]
fn smith_spec_examples() {
    let m = SparseIntMat::from_triplets(1, 1, vec![(0, 0, 2)]);
    assert_eq!(smith(&m).factors, vec![BigUint::from(2u32)]);

    let id3 = SparseIntMat::identity(3);
    assert_eq!(smith(&id3).factors, vec![BigUint::from(1u32); 3]);
}

#[test]
fn projective_plane_boundary_has_exactly_one_torsion_factor() {
    let k = AbstractSimplicialComplex::rp2_six();
    let c = complex_chains(&k, false);
    let d2 = c.boundary(2);
    assert_eq!((d2.rows(), d2.cols()), (15, 10));
    let s = smith(d2);
    assert_eq!(s.rank, 10);
    let twos: Vec<&BigUint> = s
        .factors
        .iter()
        .filter(|f| **f != BigUint::from(1u32))
        .collect();
    assert_eq!(twos, vec![&BigUint::from(2u32)]);
    assert_eq!(s.rank, rank_bareiss(d2));
}

#[test]
fn rank_nullity_and_euler_consistency() {
    let sets = [
        order_complex(&AbstractSimplicialComplex::rp2_six(), 3),
        order_complex(&AbstractSimplicialComplex::boundary_of_simplex(3), 3),
    ];
    for set in &sets {
        let built = normalized_chains(set, false);
        let c = &built.complex;
        let h = homology(c, None);
        for d in 0..=c.top_degree() {
            let rank_d = smith(c.boundary(d)).rank;
            let rank_d1 = smith(c.boundary(d + 1)).rank;
            assert_eq!(h.betti(d) + rank_d + rank_d1, c.size(d), "degree {d}");
        }
        assert_eq!(c.euler_characteristic(), h.euler_characteristic());
    }
}

#[test]
fn homology_is_invariant_under_basis_permutation() {
    let k = AbstractSimplicialComplex::rp2_six();
    let c = complex_chains(&k, true);
    let h = homology(&c, None);
    // permute each degree's basis with a fixed shuffle and rebuild
    let perms: Vec<Vec<usize>> = c
        .sizes()
        .iter()
        .map(|&n| {
            let mut p: Vec<usize> = (0..n).collect();
            p.rotate_left(n / 3 + 1);
            p
        })
        .collect();
    let boundaries: Vec<SparseIntMat> = (1..=c.top_degree())
        .map(|d| {
            c.boundary(d)
                .permute_rows(&perms[d - 1])
                .permute_cols(&perms[d])
        })
        .collect();
    let labels = c.sizes().iter().map(|&n| vec![String::new(); n]).collect();
    let permuted = suspsplit_core::homology::ChainComplex::new(
        c.sizes().to_vec(),
        labels,
        boundaries,
        c.is_augmented(),
    )
    .unwrap();
    let hp = homology(&permuted, None);
    assert_eq!(h, hp);
}

#[test]
fn identity_map_induces_identity() {
    let set = order_complex(&AbstractSimplicialComplex::rp2_six(), 3);
    let built = normalized_chains(&set, true);
    let f = ChainMap::identity(&built.complex);
    let certs = certify_quasi_iso(&f, &built.complex, &built.complex, 2).unwrap();
    assert!(certs.iter().all(|c| c.iso));
    let ind = induced_map(&f, &built.complex, &built.complex).unwrap();
    for dm in &ind.degrees {
        for r in 0..dm.matrix.rows() {
            for c in 0..dm.matrix.cols() {
                let expect = if r == c { 1 } else { 0 };
                assert_eq!(dm.matrix.at(r, c), &num_bigint::BigInt::from(expect));
            }
        }
    }
}

#[test]
fn collapse_onto_quotient_is_surjective_for_discrete_levels() {
    use suspsplit_core::filtration::stage_quotient;
    use suspsplit_core::homology::chains::relative_chains;
    let space = commuting_nerve(&FiniteGroup::symmetric_3(), 2, 1).unwrap();
    let level = space.level(2);
    let q = stage_quotient(&space, 2, 0).unwrap();
    let source = normalized_chains(level, true);
    let target = relative_chains(level, &q.numerator, &q.denominator, true);
    // the collapse sends a generator to its own class, or to zero
    let mut triplets = Vec::new();
    for idx in 0..level.gen_count(0) {
        if let Some(row) = target.pos[0][idx] {
            triplets.push((row, idx, 1i64));
        }
    }
    let mut matrices = vec![SparseIntMat::from_triplets(
        target.complex.size(0),
        source.complex.size(0),
        triplets,
    )];
    for d in 1..=level.truncation() {
        matrices.push(SparseIntMat::zero(
            target.complex.size(d),
            source.complex.size(d),
        ));
    }
    let f = ChainMap { matrices };
    let ind = induced_map(&f, &source.complex, &target.complex).unwrap();
    let dm = &ind.degrees[0];
    // surjective: H̃_0(X) = Z^17 onto H̃_0(X/S) = Z^7
    assert_eq!(dm.src.betti(), 17);
    assert_eq!(dm.tgt.betti(), 7);
    let triplets: Vec<(usize, usize, num_bigint::BigInt)> = (0..dm.matrix.rows())
        .flat_map(|r| {
            (0..dm.matrix.cols()).filter_map(move |c| {
                let v = dm.matrix.at(r, c);
                (!num_traits::Zero::is_zero(v)).then(|| (r, c, v.clone()))
            })
        })
        .collect();
    let s = suspsplit_core::homology::smith::smith_of_triplets(
        dm.matrix.rows(),
        dm.matrix.cols(),
        triplets,
    );
    assert_eq!(s.rank, 7, "full rank onto the quotient");
}

#[test]
fn horizontal_face_induces_all_ones_on_unreduced_h0() {
    let space = commuting_nerve(&FiniteGroup::cyclic(2), 1, 1).unwrap();
    let l1 = normalized_chains(space.level(1), false);
    let l0 = normalized_chains(space.level(0), false);
    // d_0 : level 1 → level 0 collapses both points
    let mut triplets = Vec::new();
    for idx in 0..space.level(1).gen_count(0) {
        let x = SimplexRef::nondegenerate(GenId::new(0, idx));
        let y = space.hface_eval(1, 0, &x).unwrap();
        triplets.push((y.gen.idx, idx, 1i64));
    }
    let mut matrices = vec![SparseIntMat::from_triplets(1, 2, triplets)];
    for d in 1..=space.level(1).truncation() {
        matrices.push(SparseIntMat::zero(l0.complex.size(d), l1.complex.size(d)));
    }
    let f = ChainMap { matrices };
    let ind = induced_map(&f, &l1.complex, &l0.complex).unwrap();
    let dm = &ind.degrees[0];
    assert_eq!((dm.matrix.rows(), dm.matrix.cols()), (1, 2));
    for c in 0..2 {
        assert_eq!(dm.matrix.at(0, c), &num_bigint::BigInt::from(1));
    }
}

#[test]
fn non_commuting_candidate_is_rejected_with_witness() {
    let circle = order_complex(&AbstractSimplicialComplex::boundary_of_simplex(2), 2);
    let built = normalized_chains(&circle, true);
    // swap the two vertices in degree 0 but keep edges fixed: not a chain map
    let mut matrices = vec![SparseIntMat::from_triplets(
        3,
        3,
        vec![(1, 0, 1), (0, 1, 1), (2, 2, 1)],
    )];
    matrices.push(SparseIntMat::identity(3));
    matrices.push(SparseIntMat::zero(0, 0));
    let f = ChainMap { matrices };
    match verify_chain_map(&built.complex, &built.complex, &f) {
        Err(HomologyError::NotAChainMap { degree, witness }) => {
            assert_eq!(degree, 1);
            assert!(!witness.is_empty());
        }
        other => panic!("expected chain-map rejection, got {other:?}"),
    }
}

#[test]
fn group_strings_render() {
    assert_eq!(group_string(0, &[]), "0");
    assert_eq!(group_string(1, &[]), "Z");
    assert_eq!(group_string(2, &[BigUint::from(2u32)]), "Z^2 + Z/2");
}
