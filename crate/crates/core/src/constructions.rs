//! Builders for the example simplicial sets and spaces: order complexes of
//! abstract simplicial complexes, commuting nerves of finite groups and
//! their conjugation quotients, degreewise products, and Čech nerves.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use thiserror::Error;

use crate::simplicial::{FiniteSimplicialSet, GenId, SimplexRef};
use crate::space::{SimplicialMap, SimplicialSpace, SpaceError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid group table: {0}")]
    Group(String),
    #[error("invalid simplicial complex: {0}")]
    Complex(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// An abstract simplicial complex on positive integer vertex labels, stored
/// by its facets (the downward closure is implicit).
#[derive(Clone, Debug)]
pub struct AbstractSimplicialComplex {
    vertices: Vec<usize>,
    facets: Vec<Vec<usize>>,
}

impl AbstractSimplicialComplex {
    pub fn new(facets: Vec<Vec<usize>>) -> Result<Self, InputError> {
        if facets.is_empty() {
            return Err(InputError::Complex("no facets".into()));
        }
        let mut cleaned = Vec::with_capacity(facets.len());
        for f in facets {
            if f.is_empty() {
                return Err(InputError::Complex("empty facet".into()));
            }
            if f.iter().any(|&v| v == 0) {
                return Err(InputError::Complex("vertex labels must be positive".into()));
            }
            let mut f = f;
            f.sort_unstable();
            f.dedup();
            cleaned.push(f);
        }
        cleaned.sort();
        cleaned.dedup();
        let vertices: Vec<usize> = cleaned
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(AbstractSimplicialComplex {
            vertices,
            facets: cleaned,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.facets.iter().map(|f| f.len() - 1).max().unwrap_or(0)
    }

    /// Downward closure: all faces grouped by dimension.
    pub fn faces_by_dim(&self) -> Vec<Vec<Vec<usize>>> {
        let dim = self.dim();
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for f in &self.facets {
            for k in 1..=f.len() {
                for sub in f.iter().copied().combinations(k) {
                    sets[k - 1].insert(sub);
                }
            }
        }
        sets.into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }

    /// Boundary of the `n`-simplex: all `n`-element subsets of `n + 1`
    /// vertices.
    pub fn boundary_of_simplex(n: usize) -> Self {
        assert!(n >= 1);
        let facets = (1..=n + 1).combinations(n).collect();
        Self::new(facets).expect("well formed")
    }

    /// The full `n`-simplex as a single facet.
    pub fn full_simplex(n: usize) -> Self {
        Self::new(vec![(1..=n + 1).collect()]).expect("well formed")
    }

    /// The six-vertex triangulation of the real projective plane (antipodal
    /// quotient of the icosahedron).
    pub fn rp2_six() -> Self {
        let facets = vec![
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![1, 4, 5],
            vec![1, 5, 6],
            vec![1, 2, 6],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![2, 4, 5],
            vec![3, 5, 6],
            vec![2, 4, 6],
        ];
        Self::new(facets).expect("well formed")
    }

    /// Disjoint union, relabelling the second complex above the first.
    pub fn disjoint_union(a: &Self, b: &Self) -> Self {
        let offset = a.vertices.iter().max().copied().unwrap_or(0);
        let mut facets = a.facets.clone();
        facets.extend(
            b.facets
                .iter()
                .map(|f| f.iter().map(|v| v + offset).collect()),
        );
        Self::new(facets).expect("well formed")
    }
}

/// Parses the facet-per-line format: whitespace-separated positive integer
/// labels, `#` starts a comment line.
pub fn parse_simplicial_complex(text: &str) -> Result<AbstractSimplicialComplex, InputError> {
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut facet = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| InputError::Parse {
                line: i + 1,
                msg: format!("expected a positive integer vertex label, found `{tok}`"),
            })?;
            if v == 0 {
                return Err(InputError::Parse {
                    line: i + 1,
                    msg: "vertex labels start at 1".into(),
                });
            }
            facet.push(v);
        }
        facets.push(facet);
    }
    if facets.is_empty() {
        return Err(InputError::Complex("no facets in input".into()));
    }
    AbstractSimplicialComplex::new(facets)
}

/// The simplicial set of weakly increasing vertex tuples supported on the
/// simplices of `k`, truncated at `n`. Its nondegenerate simplices are the
/// strictly increasing tuples, i.e. the faces of `k` themselves.
pub fn order_complex(k: &AbstractSimplicialComplex, n: usize) -> FiniteSimplicialSet {
    let faces = k.faces_by_dim();
    let top = k.dim().min(n);
    let mut b = FiniteSimplicialSet::builder(n);
    let mut index: Vec<BTreeMap<&[usize], GenId>> = vec![BTreeMap::new(); top + 1];
    for (d, list) in faces.iter().enumerate().take(top + 1) {
        for tuple in list {
            let label = tuple.iter().map(|v| v.to_string()).join(".");
            let id = b.add_generator(d, label);
            index[d].insert(tuple.as_slice(), id);
        }
    }
    for (d, list) in faces.iter().enumerate().take(top + 1).skip(1) {
        for tuple in list {
            let g = index[d][tuple.as_slice()];
            let mut fs = Vec::with_capacity(d + 1);
            for i in 0..=d {
                let mut sub = tuple.clone();
                sub.remove(i);
                fs.push(SimplexRef::nondegenerate(index[d - 1][sub.as_slice()]));
            }
            b.set_faces(g, fs);
        }
    }
    b.build().expect("order complexes are well formed")
}

/// One vertex and one loop edge, the minimal model of the circle.
pub fn simplicial_circle(truncation: usize) -> FiniteSimplicialSet {
    assert!(truncation >= 1);
    let mut b = FiniteSimplicialSet::builder(truncation);
    let v = b.add_generator(0, "v".into());
    let e = b.add_generator(1, "e".into());
    b.set_faces(
        e,
        vec![SimplexRef::nondegenerate(v), SimplexRef::nondegenerate(v)],
    );
    b.build().expect("well formed")
}

/// A finite group given by its Cayley table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, InputError> {
        let g = FiniteGroup { table };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), InputError> {
        let m = self.table.len();
        if m == 0 {
            return Err(InputError::Group("empty table".into()));
        }
        for (a, row) in self.table.iter().enumerate() {
            if row.len() != m {
                return Err(InputError::Group(format!("row {a} has {} entries", row.len())));
            }
            if row.iter().any(|&v| v >= m) {
                return Err(InputError::Group(format!("row {a} has an entry out of range")));
            }
        }
        for a in 0..m {
            if self.table[0][a] != a || self.table[a][0] != a {
                return Err(InputError::Group("element 0 is not an identity".into()));
            }
            if !self.table[a].contains(&0) {
                return Err(InputError::Group(format!("element {a} has no inverse")));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(InputError::Group(format!(
                            "associativity fails on ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == 0)
            .expect("validated group has inverses")
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| (0..m).all(|b| self.commute(a, b)))
    }

    pub fn conjugate(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inverse(x))
    }

    pub fn element_label(&self, a: usize) -> String {
        if a == 0 {
            "e".to_string()
        } else {
            format!("g{a}")
        }
    }

    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        FiniteGroup { table }
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let (ma, mb) = (a.order(), b.order());
        let table = (0..ma * mb)
            .map(|x| {
                (0..ma * mb)
                    .map(|y| {
                        let (xa, xb) = (x / mb, x % mb);
                        let (ya, yb) = (y / mb, y % mb);
                        a.mul(xa, ya) * mb + b.mul(xb, yb)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { table }
    }

    pub fn klein_four() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// The symmetric group on three letters, elements ordered as the
    /// permutations of `[0,1,2]` in lexicographic order.
    pub fn symmetric_3() -> Self {
        let perms: Vec<Vec<usize>> = (0..3usize).permutations(3).collect();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // a ∘ b: apply b first
                        let comp: Vec<usize> = (0..3).map(|x| a[b[x]]).collect();
                        index(&comp)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { table }
    }

    /// The quaternion group of order eight: `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion_8() -> Self {
        // unit multiplication: (sign, unit) with units 1,i,j,k
        let unit_mul = |u: usize, v: usize| -> (bool, usize) {
            match (u, v) {
                (0, x) => (false, x),
                (x, 0) => (false, x),
                (1, 1) | (2, 2) | (3, 3) => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let idx = |neg: bool, u: usize| 2 * u + usize::from(neg);
        let table = (0..8usize)
            .map(|x| {
                (0..8usize)
                    .map(|y| {
                        let (xu, xn) = (x / 2, x % 2 == 1);
                        let (yu, yn) = (y / 2, y % 2 == 1);
                        let (pn, pu) = unit_mul(xu, yu);
                        idx(pn ^ xn ^ yn, pu)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { table }
    }
}

/// Parses the Cayley-table format: a header line `order,m` followed by `m`
/// rows of `m` comma-separated entries in `0..m`.
pub fn parse_group_csv(text: &str) -> Result<FiniteGroup, InputError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(InputError::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let mut parts = header.split(',').map(str::trim);
    let key = parts.next().unwrap_or("");
    let m: usize = match (key, parts.next()) {
        ("order", Some(v)) => v.parse().map_err(|_| InputError::Parse {
            line: hline,
            msg: format!("bad order `{v}`"),
        })?,
        _ => {
            return Err(InputError::Parse {
                line: hline,
                msg: "expected header `order,m`".into(),
            })
        }
    };
    let mut table = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, line) = lines.next().ok_or(InputError::Parse {
            line: hline,
            msg: format!("expected {m} table rows"),
        })?;
        let row: Vec<usize> = line
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| InputError::Parse {
                    line: lno,
                    msg: format!("bad entry `{}`", t.trim()),
                })
            })
            .collect::<Result<_, _>>()?;
        if row.len() != m {
            return Err(InputError::Parse {
                line: lno,
                msg: format!("expected {m} entries, found {}", row.len()),
            });
        }
        table.push(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(InputError::Parse {
            line: lno,
            msg: "trailing content after table".into(),
        });
    }
    FiniteGroup::new(table)
}

fn tuple_label(g: &FiniteGroup, t: &[usize]) -> String {
    format!("({})", t.iter().map(|&a| g.element_label(a)).join(","))
}

/// All pairwise-commuting `n`-tuples, lexicographically ordered.
pub fn commuting_tuples(g: &FiniteGroup, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn extend(g: &FiniteGroup, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for a in 0..g.order() {
            if cur.iter().all(|&b| g.commute(a, b)) {
                cur.push(a);
                extend(g, n, cur, out);
                cur.pop();
            }
        }
    }
    extend(g, n, &mut cur, &mut out);
    out
}

fn nerve_face(g: &FiniteGroup, t: &[usize], i: usize) -> Vec<usize> {
    let n = t.len();
    if i == 0 {
        t[1..].to_vec()
    } else if i == n {
        t[..n - 1].to_vec()
    } else {
        let mut out = Vec::with_capacity(n - 1);
        out.extend_from_slice(&t[..i - 1]);
        out.push(g.mul(t[i - 1], t[i]));
        out.extend_from_slice(&t[i + 1..]);
        out
    }
}

fn nerve_degeneracy(t: &[usize], i: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(t.len() + 1);
    out.extend_from_slice(&t[..i]);
    out.push(0);
    out.extend_from_slice(&t[i..]);
    out
}

/// The simplicial space of pairwise-commuting tuples inside the nerve of
/// `g`: level `n` is the discrete set of commuting `n`-tuples, inner faces
/// multiply adjacent entries and degeneracies insert the identity.
pub fn commuting_nerve(
    g: &FiniteGroup,
    max_level: usize,
    max_dim: usize,
) -> Result<SimplicialSpace, SpaceError> {
    let tuples: Vec<Vec<Vec<usize>>> = (0..=max_level).map(|n| commuting_tuples(g, n)).collect();
    let index: Vec<BTreeMap<&[usize], usize>> = tuples
        .iter()
        .map(|ts| {
            ts.iter()
                .enumerate()
                .map(|(i, t)| (t.as_slice(), i))
                .collect()
        })
        .collect();
    let levels: Vec<FiniteSimplicialSet> = tuples
        .iter()
        .map(|ts| {
            let labels: Vec<String> = ts.iter().map(|t| tuple_label(g, t)).collect();
            FiniteSimplicialSet::discrete(&labels, max_dim)
        })
        .collect();
    let point = |n: usize, t: &[usize]| SimplexRef::nondegenerate(GenId::new(0, index[n][t]));
    let mut hface = vec![Vec::new()];
    for n in 1..=max_level {
        hface.push(
            (0..=n)
                .map(|i| {
                    SimplicialMap::new(vec![tuples[n]
                        .iter()
                        .map(|t| point(n - 1, &nerve_face(g, t, i)))
                        .collect()])
                })
                .collect(),
        );
    }
    let mut hdeg = Vec::new();
    for n in 0..max_level {
        hdeg.push(
            (0..=n)
                .map(|i| {
                    SimplicialMap::new(vec![tuples[n]
                        .iter()
                        .map(|t| point(n + 1, &nerve_degeneracy(t, i)))
                        .collect()])
                })
                .collect(),
        );
    }
    SimplicialSpace::new(levels, hface, hdeg)
}

/// The conjugation quotient of the commuting nerve: level `n` is the set of
/// orbits of commuting `n`-tuples under simultaneous conjugation. That the
/// horizontal operators descend to orbits is verified, not assumed.
pub fn rep_nerve(
    g: &FiniteGroup,
    max_level: usize,
    max_dim: usize,
) -> Result<SimplicialSpace, InputError> {
    let canon = |t: &[usize]| -> Vec<usize> {
        (0..g.order())
            .map(|x| t.iter().map(|&a| g.conjugate(x, a)).collect::<Vec<usize>>())
            .min()
            .expect("group is nonempty")
    };
    let orbits: Vec<Vec<Vec<usize>>> = (0..=max_level)
        .map(|n| {
            commuting_tuples(g, n)
                .iter()
                .map(|t| canon(t))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    // each horizontal operator must be constant on orbits
    for n in 0..=max_level {
        for t in &orbits[n] {
            for x in 0..g.order() {
                let conj: Vec<usize> = t.iter().map(|&a| g.conjugate(x, a)).collect();
                if n >= 1 {
                    for i in 0..=n {
                        if canon(&nerve_face(g, &conj, i)) != canon(&nerve_face(g, t, i)) {
                            return Err(InputError::Group(format!(
                                "face d{i} is not constant on the orbit of {t:?} at level {n}"
                            )));
                        }
                    }
                }
                if n < max_level {
                    for i in 0..=n {
                        if canon(&nerve_degeneracy(&conj, i)) != canon(&nerve_degeneracy(t, i)) {
                            return Err(InputError::Group(format!(
                                "degeneracy s{i} is not constant on the orbit of {t:?} at level {n}"
                            )));
                        }
                    }
                }
            }
        }
    }
    let index: Vec<BTreeMap<&[usize], usize>> = orbits
        .iter()
        .map(|ts| {
            ts.iter()
                .enumerate()
                .map(|(i, t)| (t.as_slice(), i))
                .collect()
        })
        .collect();
    let levels: Vec<FiniteSimplicialSet> = orbits
        .iter()
        .map(|ts| {
            let labels: Vec<String> = ts.iter().map(|t| format!("[{}]", tuple_label(g, t))).collect();
            FiniteSimplicialSet::discrete(&labels, max_dim)
        })
        .collect();
    let point =
        |n: usize, t: &[usize]| SimplexRef::nondegenerate(GenId::new(0, index[n][&canon(t)[..]]));
    let mut hface = vec![Vec::new()];
    for n in 1..=max_level {
        hface.push(
            (0..=n)
                .map(|i| {
                    SimplicialMap::new(vec![orbits[n]
                        .iter()
                        .map(|t| point(n - 1, &nerve_face(g, t, i)))
                        .collect()])
                })
                .collect(),
        );
    }
    let mut hdeg = Vec::new();
    for n in 0..max_level {
        hdeg.push(
            (0..=n)
                .map(|i| {
                    SimplicialMap::new(vec![orbits[n]
                        .iter()
                        .map(|t| point(n + 1, &nerve_degeneracy(t, i)))
                        .collect()])
                })
                .collect(),
        );
    }
    Ok(SimplicialSpace::new(levels, hface, hdeg)?)
}

/// A degreewise product of simplicial sets, with the tuple decoding needed
/// to push coordinatewise operations back into generator references.
pub struct TupleProduct {
    pub set: FiniteSimplicialSet,
    tuples: Vec<Vec<Vec<SimplexRef>>>,
    lookup: BTreeMap<Vec<SimplexRef>, GenId>,
}

impl TupleProduct {
    /// Builds the product of the given factors, which must share one
    /// truncation.
    pub fn new(factors: &[&FiniteSimplicialSet]) -> Self {
        assert!(!factors.is_empty());
        let n = factors[0].truncation();
        assert!(
            factors.iter().all(|f| f.truncation() == n),
            "factors must share a truncation"
        );
        let mut b = FiniteSimplicialSet::builder(n);
        let mut tuples: Vec<Vec<Vec<SimplexRef>>> = Vec::with_capacity(n + 1);
        let mut lookup = BTreeMap::new();
        for d in 0..=n {
            let per_factor: Vec<Vec<SimplexRef>> = factors
                .iter()
                .map(|f| f.simplices(d).expect("within truncation"))
                .collect();
            let mut nondeg: Vec<Vec<SimplexRef>> = per_factor
                .iter()
                .map(|v| v.iter().cloned())
                .multi_cartesian_product()
                .filter(|tuple| shared_degeneracy(factors, tuple).is_none())
                .collect();
            nondeg.sort();
            let mut dim_tuples = Vec::with_capacity(nondeg.len());
            for tuple in nondeg {
                let label = format!(
                    "({})",
                    tuple
                        .iter()
                        .zip(factors)
                        .map(|(x, f)| f.display_ref(x))
                        .join("|")
                );
                let id = b.add_generator(d, label);
                lookup.insert(tuple.clone(), id);
                dim_tuples.push(tuple);
            }
            tuples.push(dim_tuples);
        }
        for d in 1..=n {
            for (idx, tuple) in tuples[d].iter().enumerate() {
                let mut fs = Vec::with_capacity(d + 1);
                for i in 0..=d {
                    let face_tuple: Vec<SimplexRef> = tuple
                        .iter()
                        .zip(factors)
                        .map(|(x, f)| f.face(x, i).expect("valid face"))
                        .collect();
                    fs.push(classify(factors, &lookup, face_tuple));
                }
                b.set_faces(GenId { dim: d, idx }, fs);
            }
        }
        let set = b.build().expect("products of valid sets are valid");
        TupleProduct {
            set,
            tuples,
            lookup,
        }
    }

    pub fn tuple_of(&self, gen: GenId) -> &[SimplexRef] {
        &self.tuples[gen.dim][gen.idx]
    }

    /// Normal form of an arbitrary coordinate tuple in the product.
    pub fn classify(
        &self,
        factors: &[&FiniteSimplicialSet],
        tuple: Vec<SimplexRef>,
    ) -> SimplexRef {
        classify(factors, &self.lookup, tuple)
    }
}

/// The index of a degeneracy shared by every coordinate, if one exists.
fn shared_degeneracy(factors: &[&FiniteSimplicialSet], tuple: &[SimplexRef]) -> Option<usize> {
    let d = tuple[0].dim();
    if d == 0 {
        return None;
    }
    (0..d).rev().find(|&i| {
        tuple.iter().zip(factors).all(|(x, f)| {
            if x.word.indices().is_empty() {
                return false;
            }
            let down = f.face(x, i).expect("valid face");
            f.degeneracy(&down, i).expect("within truncation") == *x
        })
    })
}

/// Strips shared degeneracies from a coordinate tuple until it is
/// nondegenerate, then looks up the generator and reapplies the word.
fn classify(
    factors: &[&FiniteSimplicialSet],
    lookup: &BTreeMap<Vec<SimplexRef>, GenId>,
    mut tuple: Vec<SimplexRef>,
) -> SimplexRef {
    let mut word = Vec::new();
    while let Some(i) = shared_degeneracy(factors, &tuple) {
        tuple = tuple
            .iter()
            .zip(factors)
            .map(|(x, f)| f.face(x, i).expect("valid face"))
            .collect();
        word.push(i);
    }
    let gen = *lookup
        .get(&tuple)
        .expect("nondegenerate tuples are generators of the product");
    SimplexRef::new(gen, crate::word::DegeneracyWord::new(word).normal_form())
}

/// Degreewise product of two simplicial sets with a common truncation.
pub fn product(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> FiniteSimplicialSet {
    TupleProduct::new(&[x, y]).set
}

/// The Čech nerve of `z`: level `n` is the `(n+1)`-fold product, faces
/// delete a coordinate and degeneracies repeat one.
pub fn cech_nerve(z: &FiniteSimplicialSet, max_level: usize) -> Result<SimplicialSpace, SpaceError> {
    let products: Vec<TupleProduct> = (0..=max_level)
        .map(|n| TupleProduct::new(&vec![z; n + 1]))
        .collect();
    let factor_list = |n: usize| vec![z; n + 1];
    let mut hface = vec![Vec::new()];
    for n in 1..=max_level {
        let mut ops = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let images: Vec<Vec<SimplexRef>> = (0..=z.truncation())
                .map(|d| {
                    (0..products[n].set.gen_count(d))
                        .map(|idx| {
                            let tuple = products[n].tuple_of(GenId { dim: d, idx });
                            let mut smaller = tuple.to_vec();
                            smaller.remove(i);
                            products[n - 1].classify(&factor_list(n - 1), smaller)
                        })
                        .collect()
                })
                .collect();
            ops.push(SimplicialMap::new(images));
        }
        hface.push(ops);
    }
    let mut hdeg = Vec::new();
    for n in 0..max_level {
        let mut ops = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let images: Vec<Vec<SimplexRef>> = (0..=z.truncation())
                .map(|d| {
                    (0..products[n].set.gen_count(d))
                        .map(|idx| {
                            let tuple = products[n].tuple_of(GenId { dim: d, idx });
                            let mut larger = tuple.to_vec();
                            larger.insert(i, tuple[i].clone());
                            products[n + 1].classify(&factor_list(n + 1), larger)
                        })
                        .collect()
                })
                .collect();
            ops.push(SimplicialMap::new(images));
        }
        hdeg.push(ops);
    }
    let levels = products.into_iter().map(|p| p.set).collect();
    SimplicialSpace::new(levels, hface, hdeg)
}

/// A simplicial set regarded as a simplicial space with discrete levels:
/// level `n` is the set of all `n`-simplices with the set's own operators.
pub fn discrete_space(
    x: &FiniteSimplicialSet,
    max_level: usize,
    max_dim: usize,
) -> Result<SimplicialSpace, SpaceError> {
    assert!(max_level <= x.truncation(), "levels need simplices of x");
    let simplices: Vec<Vec<SimplexRef>> = (0..=max_level)
        .map(|n| x.simplices(n).expect("within truncation"))
        .collect();
    let index: Vec<BTreeMap<&SimplexRef, usize>> = simplices
        .iter()
        .map(|ss| ss.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let levels: Vec<FiniteSimplicialSet> = simplices
        .iter()
        .map(|ss| {
            let labels: Vec<String> = ss.iter().map(|s| x.display_ref(s)).collect();
            FiniteSimplicialSet::discrete(&labels, max_dim)
        })
        .collect();
    let point = |n: usize, s: &SimplexRef| SimplexRef::nondegenerate(GenId::new(0, index[n][s]));
    let mut hface = vec![Vec::new()];
    for n in 1..=max_level {
        hface.push(
            (0..=n)
                .map(|i| {
                    SimplicialMap::new(vec![simplices[n]
                        .iter()
                        .map(|s| point(n - 1, &x.face(s, i).expect("valid")))
                        .collect()])
                })
                .collect(),
        );
    }
    let mut hdeg = Vec::new();
    for n in 0..max_level {
        hdeg.push(
            (0..=n)
                .map(|i| {
                    SimplicialMap::new(vec![simplices[n]
                        .iter()
                        .map(|s| point(n + 1, &x.degeneracy(s, i).expect("valid")))
                        .collect()])
                })
                .collect(),
        );
    }
    SimplicialSpace::new(levels, hface, hdeg)
}
