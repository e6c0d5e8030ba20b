//! Independent oracles shared by the integration tests. Everything here is
//! deliberately written against raw combinatorics (tuples, Cayley tables,
//! facet lists) rather than the library's simplicial machinery, so the two
//! sides of each comparison travel different code paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use suspsplit_core::constructions::{AbstractSimplicialComplex, FiniteGroup};
use suspsplit_core::homology::matrix::SparseIntMat;
use suspsplit_core::homology::{homology, ChainComplex, HomologyGroups};
use suspsplit_core::simplicial::{FiniteSimplicialSet, SimplexRef};

/// The order complex modelled directly on weakly increasing vertex tuples:
/// faces delete a position, degeneracies repeat one.
pub struct TupleModel {
    pub faces_by_dim: Vec<Vec<Vec<usize>>>,
}

impl TupleModel {
    pub fn new(k: &AbstractSimplicialComplex) -> Self {
        TupleModel {
            faces_by_dim: k.faces_by_dim(),
        }
    }

    /// Decodes a normal-form reference of the order complex into its tuple.
    pub fn decode(&self, x: &SimplexRef) -> Vec<usize> {
        let mut tuple = self.faces_by_dim[x.gen.dim][x.gen.idx].clone();
        for &i in x.word.indices().iter().rev() {
            tuple.insert(i, tuple[i]);
        }
        tuple
    }

    pub fn face(tuple: &[usize], i: usize) -> Vec<usize> {
        let mut t = tuple.to_vec();
        t.remove(i);
        t
    }

    pub fn degeneracy(tuple: &[usize], i: usize) -> Vec<usize> {
        let mut t = tuple.to_vec();
        t.insert(i, t[i]);
        t
    }

    /// All weakly increasing `(n+1)`-tuples supported on a face of the
    /// complex.
    pub fn simplices(&self, n: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for faces in &self.faces_by_dim {
            for face in faces {
                extend_weakly_increasing(face, n + 1, &mut Vec::new(), &mut out);
            }
        }
        out
    }
}

fn extend_weakly_increasing(
    support: &[usize],
    len: usize,
    cur: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
) {
    if cur.len() == len {
        // only tuples whose support is exactly this face are new, but
        // over-collecting into the set is harmless
        let used: BTreeSet<usize> = cur.iter().copied().collect();
        if used == support.iter().copied().collect() {
            out.insert(cur.clone());
        }
        return;
    }
    let lo = cur.last().copied();
    for &v in support {
        if lo.map_or(true, |l| v >= l) {
            cur.push(v);
            extend_weakly_increasing(support, len, cur, out);
            cur.pop();
        }
    }
}

/// Chain complex of an abstract simplicial complex built straight from the
/// facet combinatorics (ordered-simplex boundary with alternating signs).
pub fn complex_chains(k: &AbstractSimplicialComplex, reduced: bool) -> ChainComplex {
    let faces = k.faces_by_dim();
    let sizes: Vec<usize> = faces.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = faces
        .iter()
        .map(|fs| fs.iter().map(|f| format!("{f:?}")).collect())
        .collect();
    let mut boundaries = Vec::new();
    for d in 1..faces.len() {
        let index: std::collections::BTreeMap<&[usize], usize> = faces[d - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let mut triplets = Vec::new();
        for (col, f) in faces[d].iter().enumerate() {
            for i in 0..=d {
                let mut sub = f.clone();
                sub.remove(i);
                let row = index[sub.as_slice()];
                triplets.push((row, col, if i % 2 == 0 { 1i64 } else { -1 }));
            }
        }
        boundaries.push(SparseIntMat::from_triplets(sizes[d - 1], sizes[d], triplets));
    }
    ChainComplex::new(sizes, labels, boundaries, reduced).expect("oracle complex is valid")
}

/// Homology of an abstract simplicial complex by the direct oracle.
pub fn complex_homology(k: &AbstractSimplicialComplex, reduced: bool) -> HomologyGroups {
    homology(&complex_chains(k, reduced), None)
}

/// Pairwise-commuting `n`-tuples counted by filtering the full product,
/// independately of the recursive enumeration used by the builders.
pub fn commuting_tuple_count(g: &FiniteGroup, n: usize) -> usize {
    let m = g.order();
    let mut count = 0;
    let mut tuple = vec![0usize; n];
    loop {
        let commutes = (0..n).all(|i| (i + 1..n).all(|j| g.commute(tuple[i], tuple[j])));
        if commutes {
            count += 1;
        }
        // odometer
        let mut pos = n;
        while pos > 0 {
            tuple[pos - 1] += 1;
            if tuple[pos - 1] < m {
                break;
            }
            tuple[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
    if n == 0 {
        1
    } else {
        count
    }
}

/// Identity-free pairwise-commuting tuples, for the top wedge summand rank.
pub fn identity_free_commuting_count(g: &FiniteGroup, n: usize) -> usize {
    let m = g.order();
    if n == 0 {
        return 1;
    }
    let mut count = 0;
    let mut tuple = vec![1usize; n];
    loop {
        let commutes = (0..n).all(|i| (i + 1..n).all(|j| g.commute(tuple[i], tuple[j])));
        if commutes {
            count += 1;
        }
        let mut pos = n;
        while pos > 0 {
            tuple[pos - 1] += 1;
            if tuple[pos - 1] < m {
                break;
            }
            tuple[pos - 1] = 1;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
    count
}

/// Orbit count of commuting tuples under simultaneous conjugation, by the
/// averaging formula: (1/|G|) Σ_x |Fix(x)|.
pub fn burnside_orbit_count(g: &FiniteGroup, n: usize) -> usize {
    let m = g.order();
    let tuples = all_commuting_tuples(g, n);
    let mut total = 0usize;
    for x in 0..m {
        total += tuples
            .iter()
            .filter(|t| t.iter().all(|&a| g.conjugate(x, a) == a))
            .count();
    }
    assert_eq!(total % m, 0, "orbit counting must divide evenly");
    total / m
}

fn all_commuting_tuples(g: &FiniteGroup, n: usize) -> Vec<Vec<usize>> {
    let m = g.order();
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut tuple = vec![0usize; n];
    loop {
        if (0..n).all(|i| (i + 1..n).all(|j| g.commute(tuple[i], tuple[j]))) {
            out.push(tuple.clone());
        }
        let mut pos = n;
        while pos > 0 {
            tuple[pos - 1] += 1;
            if tuple[pos - 1] < m {
                break;
            }
            tuple[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
    out
}

/// Integral group homology from the normalized bar complex: degree-`n`
/// basis the `n`-tuples of nonidentity elements, with the standard
/// alternating boundary (terms that produce an identity entry vanish).
pub fn bar_group_homology(g: &FiniteGroup, through_degree: usize) -> HomologyGroups {
    let m = g.order();
    let nonid: Vec<usize> = (1..m).collect();
    let mut bases: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    for n in 1..=through_degree + 1 {
        let mut level = Vec::new();
        if !nonid.is_empty() {
            let mut tuple = vec![0usize; n]; // indices into nonid
            loop {
                level.push(tuple.iter().map(|&i| nonid[i]).collect());
                let mut pos = n;
                while pos > 0 {
                    tuple[pos - 1] += 1;
                    if tuple[pos - 1] < nonid.len() {
                        break;
                    }
                    tuple[pos - 1] = 0;
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
            }
        }
        bases.push(level);
    }
    let sizes: Vec<usize> = bases.iter().map(Vec::len).collect();
    let labels = bases
        .iter()
        .map(|b| b.iter().map(|t| format!("{t:?}")).collect())
        .collect();
    let mut boundaries = Vec::new();
    for n in 1..bases.len() {
        let index: std::collections::BTreeMap<&[usize], usize> = bases[n - 1]
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i))
            .collect();
        let mut triplets = Vec::new();
        for (col, t) in bases[n].iter().enumerate() {
            let mut push = |tuple: Vec<usize>, sign: i64| {
                if tuple.iter().any(|&a| a == 0) {
                    return;
                }
                triplets.push((index[tuple.as_slice()], col, sign));
            };
            push(t[1..].to_vec(), 1);
            for i in 1..n {
                let mut inner = Vec::with_capacity(n - 1);
                inner.extend_from_slice(&t[..i - 1]);
                inner.push(g.mul(t[i - 1], t[i]));
                inner.extend_from_slice(&t[i + 1..]);
                push(inner, if i % 2 == 0 { 1 } else { -1 });
            }
            push(
                t[..n - 1].to_vec(),
                if n % 2 == 0 { 1 } else { -1 },
            );
        }
        boundaries.push(SparseIntMat::from_triplets(sizes[n - 1], sizes[n], triplets));
    }
    let complex = ChainComplex::new(sizes, labels, boundaries, false)
        .expect("the bar complex is a complex");
    homology(&complex, Some(through_degree))
}

/// Discrete simplicial sets on labelled points used by several tests.
pub fn discrete(labels: &[&str], truncation: usize) -> FiniteSimplicialSet {
    let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    FiniteSimplicialSet::discrete(&owned, truncation)
}
