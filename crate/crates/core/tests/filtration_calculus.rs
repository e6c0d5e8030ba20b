mod common;

use suspsplit_core::calculus::{
    delta_components, delta_filtration_check, triangularity_check,
};
use suspsplit_core::constructions::{
    cech_nerve, commuting_nerve, discrete_space, order_complex, rep_nerve, simplicial_circle,
    AbstractSimplicialComplex, FiniteGroup,
};
use suspsplit_core::filtration::{
    degeneracy_degree, filtration_stage, intersection_check, stage_quotient, wedge_decomposition,
};
use suspsplit_core::simplicial::{binomial, GenId, SimplexRef};
use suspsplit_core::space::SimplicialSpace;
use suspsplit_core::word::AdmissibleSeq;

fn z2_nerve(max_level: usize) -> SimplicialSpace {
    commuting_nerve(&FiniteGroup::cyclic(2), max_level, 1).unwrap()
}

fn s3_nerve(max_level: usize) -> SimplicialSpace {
    commuting_nerve(&FiniteGroup::symmetric_3(), max_level, 1).unwrap()
}

fn point_of(space: &SimplicialSpace, n: usize, label: &str) -> SimplexRef {
    let level = space.level(n);
    let idx = (0..level.gen_count(0))
        .find(|&i| level.label(GenId::new(0, i)) == label)
        .unwrap_or_else(|| panic!("no point labelled {label} at level {n}"));
    SimplexRef::nondegenerate(GenId::new(0, idx))
}

#[test]
fn degrees_count_identity_entries_in_nerves() {
    let space = s3_nerve(3);
    for n in 0..=3 {
        let level = space.level(n);
        for g in level.gen_ids(0) {
            let x = SimplexRef::nondegenerate(g);
            let label = level.label(g);
            let identity_entries = label.split(',').filter(|part| {
                part.trim_matches(|c| c == '(' || c == ')') == "e"
            }).count();
            let expected = if n == 0 { 0 } else { identity_entries };
            assert_eq!(
                degeneracy_degree(&space, n, &x),
                expected,
                "degree of {label} at level {n}"
            );
        }
    }
}

#[test]
fn degree_increases_under_degeneracies() {
    let space = z2_nerve(4);
    for n in 0..4 {
        let level = space.level(n);
        for g in level.gen_ids(0) {
            let x = SimplexRef::nondegenerate(g);
            let d = degeneracy_degree(&space, n, &x);
            for i in 0..=n {
                let sx = space.hdeg_eval(n, i, &x).unwrap();
                assert_eq!(degeneracy_degree(&space, n + 1, &sx), d + 1);
            }
        }
    }
}

#[test]
fn stages_of_the_klein_nerve_are_nested_and_bounded() {
    let space = z2_nerve(3);
    for n in 0..=3 {
        let full = filtration_stage(&space, n, 0).unwrap();
        assert_eq!(
            full.members.gen_counts()[0],
            space.level(n).gen_count(0),
            "S^0 is everything"
        );
        let empty = filtration_stage(&space, n, n + 1).unwrap();
        assert!(empty.is_empty(), "S^{} is empty", n + 1);
        for t in 0..=n {
            let outer = filtration_stage(&space, n, t).unwrap();
            let inner = filtration_stage(&space, n, t + 1).unwrap();
            assert!(inner.members.is_subset_of(&outer.members));
        }
    }
}

#[test]
fn stage_one_of_level_two_z2() {
    let space = z2_nerve(2);
    let s1 = filtration_stage(&space, 2, 1).unwrap();
    assert_eq!(s1.members.gen_counts()[0], 3); // (e,e), (e,g), (g,e)
    assert!(s1.members.contains(&point_of(&space, 2, "(e,e)")));
    assert!(s1.members.contains(&point_of(&space, 2, "(e,g1)")));
    assert!(s1.members.contains(&point_of(&space, 2, "(g1,e)")));
    assert!(!s1.members.contains(&point_of(&space, 2, "(g1,g1)")));
}

#[test]
fn stage_quotients_of_level_two_z2() {
    let space = z2_nerve(2);
    let q0 = stage_quotient(&space, 2, 0).unwrap();
    assert!(q0.pointed());
    assert_eq!(q0.class_counts()[0], 1); // only (g,g) survives
    let q2 = stage_quotient(&space, 2, 2).unwrap();
    assert!(!q2.pointed(), "top stage has an empty denominator");
    assert_eq!(q2.class_counts()[0], 1); // s_0 s_0 of the empty tuple
}

#[test]
fn stage_members_have_degree_exactly_r_in_quotients() {
    let space = s3_nerve(3);
    for n in 0..=3 {
        for t in 0..=n {
            let q = stage_quotient(&space, n, t).unwrap();
            let level = space.level(n);
            for idx in 0..level.gen_count(0) {
                let g = GenId::new(0, idx);
                let x = SimplexRef::nondegenerate(g);
                let in_classes =
                    q.numerator.contains_gen(g) && !q.denominator.contains_gen(g);
                assert_eq!(
                    in_classes,
                    degeneracy_degree(&space, n, &x) == t,
                    "level {n} stage {t}"
                );
            }
        }
    }
}

#[test]
fn wedge_decomposition_of_s3_level_two() {
    let space = s3_nerve(2);
    let w = wedge_decomposition(&space, 2, 1).unwrap();
    assert!(w.passed(), "{:?}", w.counterexample);
    assert_eq!(w.summands.len(), 2);
    assert_eq!(w.summands[0].class_counts[0], 5);
    assert_eq!(w.summands[1].class_counts[0], 5);
    assert_eq!(w.quotient_class_counts[0], 10);
    // |S^1| - |S^2| = 11 - 1 = 10
    let s1 = filtration_stage(&space, 2, 1).unwrap();
    let s2 = filtration_stage(&space, 2, 2).unwrap();
    assert_eq!(s1.members.gen_counts()[0] - s2.members.gen_counts()[0], 10);
}

#[test]
fn wedge_multiplicities_are_binomial() {
    let spaces: Vec<SimplicialSpace> = vec![
        z2_nerve(4),
        s3_nerve(4),
        cech_nerve(&simplicial_circle(3), 3).unwrap(),
    ];
    for space in &spaces {
        for n in 0..=space.horizontal_truncation() {
            for r in 0..=n.saturating_sub(1) {
                let w = wedge_decomposition(space, n, r).unwrap();
                assert!(w.passed(), "n={n} r={r}: {:?}", w.counterexample);
                assert_eq!(w.summands.len(), binomial(n, r));
            }
            if n >= 1 {
                let w = wedge_decomposition(space, n, n - 1).unwrap();
                assert_eq!(w.summands.len(), n);
            }
        }
    }
}

#[test]
fn intersections_sit_in_the_next_stage() {
    let space = z2_nerve(2);
    // im s_0 ∩ im s_1 at level 2 is exactly (e,e), which has degree 2
    let r = intersection_check(&space, 2, 1).unwrap();
    assert!(r.passed());
    assert_eq!(r.pairs_checked, 1);
    let s0 = AdmissibleSeq::new(vec![0]).unwrap();
    let s1 = AdmissibleSeq::new(vec![1]).unwrap();
    let ee = point_of(&space, 2, "(e,e)");
    assert!(space.retracts_through(2, &s0, &ee));
    assert!(space.retracts_through(2, &s1, &ee));
    assert_eq!(degeneracy_degree(&space, 2, &ee), 2);

    // single summand at level 1: vacuous
    let r = intersection_check(&space, 1, 1).unwrap();
    assert_eq!(r.pairs_checked, 0);
    assert!(r.passed());
}

#[test]
fn intersections_in_the_cech_nerve() {
    let space = cech_nerve(&simplicial_circle(3), 3).unwrap();
    for n in 0..=3usize {
        for r in 0..=n.saturating_sub(1) {
            let report = intersection_check(&space, n, r).unwrap();
            assert!(report.passed(), "n={n} r={r}: {:?}", report.violations);
        }
    }
}

#[test]
fn triangularity_identity_and_degeneracy_cases() {
    let space = z2_nerve(3);
    // I = J = (0): d_0 s_0 = id, and I = (0) < J = (1): d_0 s_1 lands in
    // the image of s_0; both cases are inside the exhaustive check
    for n in 1..=3 {
        for r in 0..=n {
            let report = triangularity_check(&space, n, r).unwrap();
            assert!(report.passed(), "n={n} r={r}: {:?}", report.violations);
        }
    }
}

#[test]
fn triangularity_exhaustive_on_builtins() {
    let spaces: Vec<SimplicialSpace> = vec![
        s3_nerve(3),
        rep_nerve(&FiniteGroup::symmetric_3(), 3, 1).unwrap(),
        cech_nerve(&simplicial_circle(2), 3).unwrap(),
        discrete_space(
            &order_complex(&AbstractSimplicialComplex::boundary_of_simplex(2), 3),
            3,
            1,
        )
        .unwrap(),
    ];
    for space in &spaces {
        for n in 0..=3 {
            for r in 0..=n {
                let report = triangularity_check(space, n, r).unwrap();
                assert!(report.passed(), "n={n} r={r}: {:?}", report.violations);
            }
        }
    }
}

#[test]
fn delta_components_are_ordered_and_retract() {
    let space = s3_nerve(3);
    let comps = delta_components(&space, 2, 1).unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0].0.indices(), &[0]);
    assert_eq!(comps[1].0.indices(), &[1]);

    let comps = delta_components(&space, 2, 2).unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].0.indices(), &[1, 0]);
    // d_{χ(J)} s_J = id for the unique length-2 sequence
    let level0 = space.level(0);
    let (seq, map) = &comps[0];
    for g in level0.gen_ids(0) {
        let x = SimplexRef::nondegenerate(g);
        let up = space.hdeg_seq_eval(0, seq, &x).unwrap();
        assert_eq!(map.eval(level0, &up).unwrap(), x);
    }

    let comps = delta_components(&space, 1, 0).unwrap();
    assert_eq!(comps.len(), 1);
    assert!(comps[0].0.is_empty(), "δ(0) is the identity");
}

#[test]
fn delta_restriction_on_builtins() {
    let spaces: Vec<SimplicialSpace> = vec![
        z2_nerve(3),
        s3_nerve(3),
        cech_nerve(&simplicial_circle(2), 3).unwrap(),
    ];
    for space in &spaces {
        for n in 0..=3 {
            for r in 0..=n {
                let report = delta_filtration_check(space, n, r).unwrap();
                assert!(report.passed(), "n={n} r={r}: {:?}", report.violations);
            }
        }
    }
}

#[test]
fn eilenberg_zilber_counting_per_level() {
    // |level n| = Σ_r C(n,r) · (horizontally nondegenerate at level n-r)
    let space = s3_nerve(4);
    let nondeg: Vec<usize> = (0..=4)
        .map(|n| {
            let t = space.degree_table(n);
            t.by_vdim[0].iter().filter(|&&d| d == 0).count()
        })
        .collect();
    for n in 0..=4usize {
        let total: usize = (0..=n).map(|r| binomial(n, r) * nondeg[n - r]).sum();
        assert_eq!(space.level(n).gen_count(0), total);
    }
}
