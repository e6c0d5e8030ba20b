//! Simplicial maps, horizontally truncated simplicial spaces, and morphisms
//! of simplicial spaces.
//!
//! A simplicial space is a horizontal simplicial diagram whose levels are
//! [`FiniteSimplicialSet`]s; discrete levels model plain simplicial sets.
//! Horizontal operators are simplicial maps between the levels and satisfy
//! the simplicial identities, which the constructor verifies on generators.

use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::simplicial::{FiniteSimplicialSet, GenId, OpError, SimplexRef};
use crate::word::{enumerate_admissible, AdmissibleSeq};

/// A map of simplicial sets, stored by generator images (dimension
/// preserving, possibly degenerate). Values on degenerate simplices follow
/// by naturality: `f(s_W x) = s_W f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    images: Vec<Vec<SimplexRef>>,
}

#[derive(Debug, Error)]
pub enum MapError {
    #[error("image of generator ({dim},{idx}) has dimension {got}, expected {dim}")]
    DimensionMismatch { dim: usize, idx: usize, got: usize },
    #[error("map does not commute with d{face} on generator ({dim},{idx})")]
    FaceMismatch { dim: usize, idx: usize, face: usize },
    #[error("missing image for generator ({dim},{idx})")]
    MissingImage { dim: usize, idx: usize },
    #[error(transparent)]
    Op(#[from] OpError),
}

impl SimplicialMap {
    pub fn new(images: Vec<Vec<SimplexRef>>) -> Self {
        SimplicialMap { images }
    }

    /// Builds the map from a function on generators and validates it.
    pub fn from_fn(
        source: &FiniteSimplicialSet,
        target: &FiniteSimplicialSet,
        mut f: impl FnMut(GenId) -> SimplexRef,
    ) -> Result<Self, MapError> {
        let images = (0..=source.truncation())
            .map(|d| source.gen_ids(d).map(&mut f).collect())
            .collect();
        let map = SimplicialMap { images };
        map.validate(source, target)?;
        Ok(map)
    }

    pub fn identity(set: &FiniteSimplicialSet) -> Self {
        SimplicialMap {
            images: (0..=set.truncation())
                .map(|d| set.gen_ids(d).map(SimplexRef::nondegenerate).collect())
                .collect(),
        }
    }

    pub fn image_of_gen(&self, gen: GenId) -> &SimplexRef {
        &self.images[gen.dim][gen.idx]
    }

    /// Evaluates the map on an arbitrary simplex of the source.
    pub fn eval(
        &self,
        target: &FiniteSimplicialSet,
        x: &SimplexRef,
    ) -> Result<SimplexRef, OpError> {
        let img = self
            .images
            .get(x.gen.dim)
            .and_then(|v| v.get(x.gen.idx))
            .ok_or(OpError::UnknownGenerator {
                dim: x.gen.dim,
                idx: x.gen.idx,
            })?;
        target.apply_word(&x.word, img)
    }

    /// `self ∘ other`, where `other` is applied first.
    pub fn compose(
        &self,
        target: &FiniteSimplicialSet,
        other: &SimplicialMap,
    ) -> Result<SimplicialMap, OpError> {
        let images = other
            .images
            .iter()
            .map(|per_dim| {
                per_dim
                    .iter()
                    .map(|x| self.eval(target, x))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SimplicialMap { images })
    }

    /// Checks dimensions and commutation with every face operator on
    /// generators; compatibility with degeneracies then holds by naturality
    /// of the evaluation.
    pub fn validate(
        &self,
        source: &FiniteSimplicialSet,
        target: &FiniteSimplicialSet,
    ) -> Result<(), MapError> {
        for d in 0..=source.truncation() {
            for idx in 0..source.gen_count(d) {
                let img = self
                    .images
                    .get(d)
                    .and_then(|v| v.get(idx))
                    .ok_or(MapError::MissingImage { dim: d, idx })?;
                if img.dim() != d {
                    return Err(MapError::DimensionMismatch {
                        dim: d,
                        idx,
                        got: img.dim(),
                    });
                }
                if d >= 1 {
                    let g = GenId { dim: d, idx };
                    for i in 0..=d {
                        let lhs = target.face(img, i)?;
                        let rhs = self.eval(target, source.generator_face(g, i))?;
                        if lhs != rhs {
                            return Err(MapError::FaceMismatch { dim: d, idx, face: i });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("level {0} missing horizontal operator d{1}")]
    MissingFaceOp(usize, usize),
    #[error("level {0} missing horizontal operator s{1}")]
    MissingDegOp(usize, usize),
    #[error("levels must share one vertical truncation (level {0} differs)")]
    MixedTruncation(usize),
    #[error("horizontal operator invalid at level {level}: {source}")]
    BadOperator { level: usize, source: MapError },
    #[error("horizontal identity {identity} fails at level {level} on generator ({dim},{idx})")]
    IdentityFailure {
        identity: String,
        level: usize,
        dim: usize,
        idx: usize,
    },
    #[error("level {0} out of range")]
    LevelOutOfRange(usize),
    #[error(transparent)]
    Op(#[from] OpError),
}

/// Degeneracy degrees of one level's generators, indexed by vertical
/// dimension then generator index.
#[derive(Debug)]
pub struct DegreeTable {
    pub by_vdim: Vec<Vec<usize>>,
}

/// A simplicial space truncated horizontally at `N_h`, with one
/// [`FiniteSimplicialSet`] per level and validated horizontal operators.
///
/// Immutable after construction. The per-level degeneracy-degree tables are
/// computed lazily behind a mutex, so a space can be shared across threads.
pub struct SimplicialSpace {
    levels: Vec<FiniteSimplicialSet>,
    /// `hface[n][i]`: level `n` → level `n - 1`, defined for `n >= 1`.
    hface: Vec<Vec<SimplicialMap>>,
    /// `hdeg[n][i]`: level `n` → level `n + 1`, defined for `n < N_h`.
    hdeg: Vec<Vec<SimplicialMap>>,
    discrete: bool,
    degree_tables: Vec<Mutex<Option<Arc<DegreeTable>>>>,
}

impl std::fmt::Debug for SimplicialSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimplicialSpace")
            .field("levels", &self.levels.len())
            .field("discrete", &self.discrete)
            .finish()
    }
}

impl SimplicialSpace {
    /// Builds and validates a simplicial space. `hface[n]` must hold the
    /// `n + 1` face operators out of level `n` (for `n >= 1`), and `hdeg[n]`
    /// the `n + 1` degeneracy operators out of level `n` (for `n < N_h`).
    pub fn new(
        levels: Vec<FiniteSimplicialSet>,
        hface: Vec<Vec<SimplicialMap>>,
        hdeg: Vec<Vec<SimplicialMap>>,
    ) -> Result<Self, SpaceError> {
        assert!(!levels.is_empty(), "a simplicial space needs level 0");
        let nh = levels.len() - 1;
        let vt = levels[0].truncation();
        for (n, l) in levels.iter().enumerate() {
            if l.truncation() != vt {
                return Err(SpaceError::MixedTruncation(n));
            }
        }
        for n in 1..=nh {
            let ops = hface.get(n).map_or(0, |v| v.len());
            if ops != n + 1 {
                return Err(SpaceError::MissingFaceOp(n, ops));
            }
            for op in hface[n].iter() {
                op.validate(&levels[n], &levels[n - 1])
                    .map_err(|source| SpaceError::BadOperator { level: n, source })?;
            }
        }
        for n in 0..nh {
            let ops = hdeg.get(n).map_or(0, |v| v.len());
            if ops != n + 1 {
                return Err(SpaceError::MissingDegOp(n, ops));
            }
            for op in hdeg[n].iter() {
                op.validate(&levels[n], &levels[n + 1])
                    .map_err(|source| SpaceError::BadOperator { level: n, source })?;
            }
        }
        let discrete = levels.iter().all(|l| l.is_discrete());
        let degree_tables = (0..=nh).map(|_| Mutex::new(None)).collect();
        let space = SimplicialSpace {
            levels,
            hface,
            hdeg,
            discrete,
            degree_tables,
        };
        space.check_horizontal_identities()?;
        Ok(space)
    }

    pub fn horizontal_truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn vertical_truncation(&self) -> usize {
        self.levels[0].truncation()
    }

    pub fn level(&self, n: usize) -> &FiniteSimplicialSet {
        &self.levels[n]
    }

    pub fn is_discrete(&self) -> bool {
        self.discrete
    }

    pub fn hface_map(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.hface[n][i]
    }

    pub fn hdeg_map(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.hdeg[n][i]
    }

    /// `d_i : X_n → X_{n-1}` applied to a vertical simplex of level `n`.
    pub fn hface_eval(&self, n: usize, i: usize, x: &SimplexRef) -> Result<SimplexRef, OpError> {
        self.hface[n][i].eval(&self.levels[n - 1], x)
    }

    /// `s_i : X_n → X_{n+1}` applied to a vertical simplex of level `n`.
    pub fn hdeg_eval(&self, n: usize, i: usize, x: &SimplexRef) -> Result<SimplexRef, OpError> {
        self.hdeg[n][i].eval(&self.levels[n + 1], x)
    }

    /// Applies the composite `d_{a_1} ∘ ... ∘ d_{a_m}` (rightmost first)
    /// starting at level `n`, landing at level `n - m`.
    pub fn hface_seq_eval(
        &self,
        n: usize,
        seq: &[usize],
        x: &SimplexRef,
    ) -> Result<SimplexRef, OpError> {
        let mut cur = x.clone();
        let mut level = n;
        for &a in seq.iter().rev() {
            cur = self.hface_eval(level, a, &cur)?;
            level -= 1;
        }
        Ok(cur)
    }

    /// Applies the composite `s_{j_r} ∘ ... ∘ s_{j_1}` (rightmost first)
    /// starting at level `n`, landing at level `n + |J|`.
    pub fn hdeg_seq_eval(
        &self,
        n: usize,
        seq: &AdmissibleSeq,
        x: &SimplexRef,
    ) -> Result<SimplexRef, OpError> {
        let mut cur = x.clone();
        let mut level = n;
        for &j in seq.indices().iter().rev() {
            cur = self.hdeg_eval(level, j, &cur)?;
            level += 1;
        }
        Ok(cur)
    }

    /// The degeneracy-degree table for level `n`, computed once and cached.
    pub fn degree_table(&self, n: usize) -> Arc<DegreeTable> {
        let mut slot = self.degree_tables[n].lock().expect("poisoned cache");
        if let Some(t) = slot.as_ref() {
            return Arc::clone(t);
        }
        let table = Arc::new(self.compute_degree_table(n));
        *slot = Some(Arc::clone(&table));
        table
    }

    fn compute_degree_table(&self, n: usize) -> DegreeTable {
        let level = &self.levels[n];
        let by_vdim = (0..=level.truncation())
            .map(|q| {
                (0..level.gen_count(q))
                    .map(|idx| {
                        let x = SimplexRef::nondegenerate(GenId { dim: q, idx });
                        self.degree_of_simplex(n, &x)
                    })
                    .collect()
            })
            .collect();
        DegreeTable { by_vdim }
    }

    fn degree_of_simplex(&self, n: usize, x: &SimplexRef) -> usize {
        for t in (1..=n).rev() {
            for seq in enumerate_admissible(n, t) {
                if self.retracts_through(n, &seq, x) {
                    return t;
                }
            }
        }
        0
    }

    /// Whether `x` lies in the image of `s_J`, tested with the retraction
    /// `d_{χ(J)}`: membership holds iff `s_J(d_{χ(J)}(x)) = x`.
    pub fn retracts_through(&self, n: usize, seq: &AdmissibleSeq, x: &SimplexRef) -> bool {
        let down = match self.hface_seq_eval(n, &seq.chi(), x) {
            Ok(v) => v,
            Err(_) => return false,
        };
        match self.hdeg_seq_eval(n - seq.len(), seq, &down) {
            Ok(v) => v == *x,
            Err(_) => false,
        }
    }

    /// Horizontal degeneracy degree of an arbitrary vertical simplex of
    /// level `n`: the degree of its nondegenerate core (the two agree since
    /// horizontal and vertical operators commute).
    pub fn hdegree(&self, n: usize, x: &SimplexRef) -> usize {
        self.degree_table(n).by_vdim[x.gen.dim][x.gen.idx]
    }

    fn check_horizontal_identities(&self) -> Result<(), SpaceError> {
        let nh = self.horizontal_truncation();
        let fail = |identity: String, level: usize, g: GenId| SpaceError::IdentityFailure {
            identity,
            level,
            dim: g.dim,
            idx: g.idx,
        };
        let gens = |n: usize| {
            let l = &self.levels[n];
            (0..=l.truncation())
                .flat_map(move |d| l.gen_ids(d))
                .collect::<Vec<_>>()
        };
        // d_i d_j = d_{j-1} d_i for i < j
        for n in 2..=nh {
            for g in gens(n) {
                let x = SimplexRef::nondegenerate(g);
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.hface_eval(n - 1, i, &self.hface_eval(n, j, &x)?)?;
                        let rhs = self.hface_eval(n - 1, j - 1, &self.hface_eval(n, i, &x)?)?;
                        if lhs != rhs {
                            return Err(fail(format!("d{i} d{j}"), n, g));
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        for n in 0..nh.saturating_sub(1) {
            for g in gens(n) {
                let x = SimplexRef::nondegenerate(g);
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = self.hdeg_eval(n + 1, i, &self.hdeg_eval(n, j, &x)?)?;
                        let rhs = self.hdeg_eval(n + 1, j + 1, &self.hdeg_eval(n, i, &x)?)?;
                        if lhs != rhs {
                            return Err(fail(format!("s{i} s{j}"), n, g));
                        }
                    }
                }
            }
        }
        // d_i s_j relations
        for n in 0..nh {
            for g in gens(n) {
                let x = SimplexRef::nondegenerate(g);
                for j in 0..=n {
                    let sx = self.hdeg_eval(n, j, &x)?;
                    for i in 0..=n + 1 {
                        let lhs = self.hface_eval(n + 1, i, &sx)?;
                        let rhs = if i == j || i == j + 1 {
                            x.clone()
                        } else if i < j {
                            self.hdeg_eval(n - 1, j - 1, &self.hface_eval(n, i, &x)?)?
                        } else {
                            self.hdeg_eval(n - 1, j, &self.hface_eval(n, i - 1, &x)?)?
                        };
                        if lhs != rhs {
                            return Err(fail(format!("d{i} s{j}"), n, g));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A morphism of simplicial spaces: one simplicial map per level, commuting
/// with all horizontal operators.
pub struct SpaceMap {
    pub level_maps: Vec<SimplicialMap>,
}

impl SpaceMap {
    pub fn new(
        source: &SimplicialSpace,
        target: &SimplicialSpace,
        level_maps: Vec<SimplicialMap>,
    ) -> Result<Self, SpaceError> {
        let nh = source.horizontal_truncation();
        assert_eq!(
            nh,
            target.horizontal_truncation(),
            "source and target must share the horizontal truncation"
        );
        assert_eq!(level_maps.len(), nh + 1);
        for (n, f) in level_maps.iter().enumerate() {
            f.validate(source.level(n), target.level(n))
                .map_err(|source| SpaceError::BadOperator { level: n, source })?;
        }
        let map = SpaceMap { level_maps };
        // commutation with horizontal operators, checked on generators
        for n in 1..=nh {
            for d in 0..=source.level(n).truncation() {
                for g in source.level(n).gen_ids(d) {
                    let x = SimplexRef::nondegenerate(g);
                    let fx = map.level_maps[n].eval(target.level(n), &x)?;
                    for i in 0..=n {
                        let lhs = target.hface_eval(n, i, &fx)?;
                        let rhs = map.level_maps[n - 1]
                            .eval(target.level(n - 1), &source.hface_eval(n, i, &x)?)?;
                        if lhs != rhs {
                            return Err(SpaceError::IdentityFailure {
                                identity: format!("f d{i} = d{i} f"),
                                level: n,
                                dim: g.dim,
                                idx: g.idx,
                            });
                        }
                    }
                }
            }
        }
        for n in 0..nh {
            for d in 0..=source.level(n).truncation() {
                for g in source.level(n).gen_ids(d) {
                    let x = SimplexRef::nondegenerate(g);
                    let fx = map.level_maps[n].eval(target.level(n), &x)?;
                    for i in 0..=n {
                        let lhs = target.hdeg_eval(n, i, &fx)?;
                        let rhs = map.level_maps[n + 1]
                            .eval(target.level(n + 1), &source.hdeg_eval(n, i, &x)?)?;
                        if lhs != rhs {
                            return Err(SpaceError::IdentityFailure {
                                identity: format!("f s{i} = s{i} f"),
                                level: n,
                                dim: g.dim,
                                idx: g.idx,
                            });
                        }
                    }
                }
            }
        }
        Ok(map)
    }

    pub fn eval(
        &self,
        target: &SimplicialSpace,
        n: usize,
        x: &SimplexRef,
    ) -> Result<SimplexRef, OpError> {
        self.level_maps[n].eval(target.level(n), x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::FiniteSimplicialSet;

    /// Two-level space: level 0 a point, level 1 two points (one the image
    /// of s_0), with bar-style operators.
    fn tiny_space() -> SimplicialSpace {
        let l0 = FiniteSimplicialSet::discrete(&["()".into()], 2);
        let l1 = FiniteSimplicialSet::discrete(&["(e)".into(), "(g)".into()], 2);
        let pt = |idx| SimplexRef::nondegenerate(GenId::new(0, idx));
        let d0 = SimplicialMap::from_fn(&l1, &l0, |_| pt(0)).unwrap();
        let d1 = SimplicialMap::from_fn(&l1, &l0, |_| pt(0)).unwrap();
        let s0 = SimplicialMap::from_fn(&l0, &l1, |_| pt(0)).unwrap();
        SimplicialSpace::new(vec![l0, l1], vec![vec![], vec![d0, d1]], vec![vec![s0]]).unwrap()
    }

    #[test]
    fn degree_table_marks_degenerate_points() {
        let space = tiny_space();
        assert!(space.is_discrete());
        let t = space.degree_table(1);
        assert_eq!(t.by_vdim[0], vec![1, 0]); // (e) = s_0(()), (g) fresh
        let e = SimplexRef::nondegenerate(GenId::new(0, 0));
        let g = SimplexRef::nondegenerate(GenId::new(0, 1));
        assert_eq!(space.hdegree(1, &e), 1);
        assert_eq!(space.hdegree(1, &g), 0);
    }

    #[test]
    fn degree_of_vertical_degeneracies_matches_core() {
        let space = tiny_space();
        let e = SimplexRef::nondegenerate(GenId::new(0, 0));
        let se = space.level(1).degeneracy(&e, 0).unwrap();
        assert_eq!(space.hdegree(1, &se), 1);
    }

    #[test]
    fn bad_operator_is_rejected() {
        let l0 = FiniteSimplicialSet::discrete(&["a".into(), "b".into()], 1);
        let l1 = FiniteSimplicialSet::discrete(&["x".into(), "y".into()], 1);
        let pt = |idx| SimplexRef::nondegenerate(GenId::new(0, idx));
        // d_0 swaps while d_1 and s_0 preserve the labels: d_0 s_0 != id
        let d0 = SimplicialMap::from_fn(&l1, &l0, |g| pt(1 - g.idx)).unwrap();
        let d1 = SimplicialMap::from_fn(&l1, &l0, |g| pt(g.idx)).unwrap();
        let s0 = SimplicialMap::from_fn(&l0, &l1, |g| pt(g.idx)).unwrap();
        let r = SimplicialSpace::new(vec![l0, l1], vec![vec![], vec![d0, d1]], vec![vec![s0]]);
        assert!(matches!(r, Err(SpaceError::IdentityFailure { .. })));
    }
}
