//! Smooth rational fans and their simplicial combinatorics.
//!
//! A [`Fan`] is given by its rays (primitive integer vectors, order
//! significant) and its maximal cones (sets of ray indices). Every face is
//! derived from the maximal cones and cached at construction.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice;
use crate::lp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("malformed fan document: {0}")]
    Json(String),
    #[error("ray {ray} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        ray: usize,
        expected: usize,
        found: usize,
    },
    #[error("ray {ray} {coords:?} is not a primitive nonzero lattice vector")]
    NonPrimitiveRay { ray: usize, coords: Vec<i64> },
    #[error("rays {first} and {second} are equal")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone} refers to ray {index}, which does not exist")]
    IndexOutOfRange { cone: usize, index: usize },
    #[error("cone {cone} lists ray {index} more than once")]
    RepeatedIndex { cone: usize, index: usize },
    #[error("cone {cone} {rays:?} has linearly dependent rays")]
    DependentRaysInCone { cone: usize, rays: Vec<usize> },
    #[error(
        "cones {first} {first_rays:?} and {second} {second_rays:?} meet outside their common face"
    )]
    NotIntersectionClosed {
        first: usize,
        first_rays: Vec<usize>,
        second: usize,
        second_rays: Vec<usize>,
    },
    #[error("ray {ray} lies in no cone")]
    OrphanRay { ray: usize },
    #[error("{0} is not a cone of the fan")]
    ConeNotInFan(Cone),
}

/// Primitive integer vector spanning a ray of the fan.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayVector(Vec<i64>);

impl RayVector {
    /// Accepts only primitive nonzero vectors.
    pub fn new(coords: Vec<i64>) -> Option<Self> {
        (lattice::gcd_of(&coords) == 1).then_some(RayVector(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Strictly increasing list of ray indices; the empty cone is `{0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains_ray(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains_ray(*r))
    }

    /// All faces, including the zero cone and the cone itself.
    pub fn faces(&self) -> impl Iterator<Item = Cone> + '_ {
        let k = self.0.len();
        (0u64..1 << k).map(move |mask| {
            Cone(
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    fn intersect(&self, other: &Cone) -> Cone {
        Cone(
            self.0
                .iter()
                .copied()
                .filter(|r| other.contains_ray(*r))
                .collect(),
        )
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("{0}");
        }
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

impl From<Vec<usize>> for Cone {
    fn from(rays: Vec<usize>) -> Self {
        Cone::new(rays)
    }
}

/// On-disk fan description: `{"dim": n, "rays": [[...]], "max_cones": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// First maximal cone whose rays do not extend to a lattice basis.
    Singular(Cone),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    Incomplete,
}

/// Minimal set of rays that spans no cone although every proper subset does.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitiveCollection(Vec<usize>);

impl PrimitiveCollection {
    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Simplicial complex on the rays: one simplex per nonzero cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: Vec<usize>,
    pub faces: BTreeSet<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<RayVector>,
    max_cones: Vec<Cone>,
    faces: BTreeSet<Cone>,
}

impl Fan {
    /// Validates and builds a fan from rays and a list of (maximal) cones.
    /// Listed cones contained in other listed cones are absorbed.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        let fan = Self::build(dim, rays, cones)?;
        fan.check_intersections()?;
        Ok(fan)
    }

    /// Parses a JSON fan document.
    pub fn parse(document: &str) -> Result<Fan, FanError> {
        let doc: FanDocument =
            serde_json::from_str(document).map_err(|e| FanError::Json(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn from_document(doc: FanDocument) -> Result<Fan, FanError> {
        Self::new(doc.dim, doc.rays, doc.max_cones)
    }

    pub fn to_document(&self) -> FanDocument {
        FanDocument {
            dim: self.dim,
            rays: self.rays.iter().map(|r| r.0.clone()).collect(),
            max_cones: self.max_cones.iter().map(|c| c.0.clone()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("fan documents always serialize")
    }

    /// Everything except the pairwise intersection check. Used for fans that
    /// are valid by construction (subdivisions, quotients, products).
    pub(crate) fn build(
        dim: usize,
        rays: Vec<Vec<i64>>,
        cones: Vec<Vec<usize>>,
    ) -> Result<Fan, FanError> {
        let mut checked = Vec::with_capacity(rays.len());
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        for (i, r) in rays.into_iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::DimensionMismatch {
                    ray: i,
                    expected: dim,
                    found: r.len(),
                });
            }
            if let Some(&first) = seen.get(&r) {
                return Err(FanError::DuplicateRay { first, second: i });
            }
            seen.insert(r.clone(), i);
            match RayVector::new(r.clone()) {
                Some(v) => checked.push(v),
                None => return Err(FanError::NonPrimitiveRay { ray: i, coords: r }),
            }
        }

        let mut listed = Vec::with_capacity(cones.len());
        for (c, cone) in cones.into_iter().enumerate() {
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(FanError::RepeatedIndex {
                        cone: c,
                        index: w[0],
                    });
                }
            }
            if let Some(&bad) = sorted.iter().find(|&&r| r >= checked.len()) {
                return Err(FanError::IndexOutOfRange {
                    cone: c,
                    index: bad,
                });
            }
            let vecs: Vec<&[i64]> = sorted.iter().map(|&r| checked[r].coords()).collect();
            if lattice::rank(dim, &vecs) != vecs.len() {
                return Err(FanError::DependentRaysInCone {
                    cone: c,
                    rays: sorted,
                });
            }
            listed.push(Cone(sorted));
        }

        let mut by_ray: Vec<Vec<usize>> = vec![Vec::new(); checked.len()];
        for (j, o) in listed.iter().enumerate() {
            for &r in &o.0 {
                by_ray[r].push(j);
            }
        }
        let everything: Vec<usize> = (0..listed.len()).collect();
        let mut max_cones: Vec<Cone> = Vec::new();
        for (i, c) in listed.iter().enumerate() {
            let candidates = match c.0.iter().min_by_key(|&&r| by_ray[r].len()) {
                Some(&r) => &by_ray[r],
                None => &everything,
            };
            let absorbed = candidates.iter().any(|&j| {
                let o = &listed[j];
                j != i && c.is_face_of(o) && (c.dim() < o.dim() || j < i)
            });
            if !absorbed {
                max_cones.push(c.clone());
            }
        }
        if max_cones.is_empty() {
            max_cones.push(Cone::zero());
        }
        max_cones.sort();

        let mut faces = BTreeSet::new();
        for c in &max_cones {
            faces.extend(c.faces());
        }
        for r in 0..checked.len() {
            if !faces.contains(&Cone(vec![r])) {
                return Err(FanError::OrphanRay { ray: r });
            }
        }
        Ok(Fan {
            dim,
            rays: checked,
            max_cones,
            faces,
        })
    }

    /// Two maximal cones must meet exactly in the cone on their common rays.
    fn check_intersections(&self) -> Result<(), FanError> {
        for i in 0..self.max_cones.len() {
            for j in i + 1..self.max_cones.len() {
                let a = &self.max_cones[i];
                let b = &self.max_cones[j];
                if !self.meet_properly(a, b) {
                    return Err(FanError::NotIntersectionClosed {
                        first: i,
                        first_rays: a.0.clone(),
                        second: j,
                        second_rays: b.0.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn meet_properly(&self, a: &Cone, b: &Cone) -> bool {
        let common = a.intersect(b);
        let only_a: Vec<usize> =
            a.0.iter()
                .copied()
                .filter(|r| !common.contains_ray(*r))
                .collect();
        let only_b: Vec<usize> =
            b.0.iter()
                .copied()
                .filter(|r| !common.contains_ray(*r))
                .collect();
        if only_a.is_empty() || only_b.is_empty() {
            return true;
        }
        let union: Vec<&[i64]> = common
            .0
            .iter()
            .chain(&only_a)
            .chain(&only_b)
            .map(|&r| self.rays[r].coords())
            .collect();
        if lattice::rank(self.dim, &union) == union.len() {
            return true;
        }
        // Is there x = sum(l_i a_i) = sum(m_k b_k), l, m >= 0, with weight
        // outside the common face? Variables: a-rays then b-rays.
        let avars: Vec<usize> = a.0.clone();
        let bvars: Vec<usize> = b.0.clone();
        let nv = avars.len() + bvars.len();
        let mut rows = Vec::with_capacity(self.dim + 1);
        let mut rhs = Vec::with_capacity(self.dim + 1);
        for coord in 0..self.dim {
            let mut row = Vec::with_capacity(nv);
            row.extend(avars.iter().map(|&r| self.rays[r].0[coord]));
            row.extend(bvars.iter().map(|&r| -self.rays[r].0[coord]));
            rows.push(row);
            rhs.push(0);
        }
        let mut norm = Vec::with_capacity(nv);
        norm.extend(avars.iter().map(|r| i64::from(!common.contains_ray(*r))));
        norm.extend(bvars.iter().map(|r| i64::from(!common.contains_ray(*r))));
        rows.push(norm);
        rhs.push(1);
        !lp::feasible(&rows, &rhs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[RayVector] {
        &self.rays
    }

    pub fn ray(&self, index: usize) -> &RayVector {
        &self.rays[index]
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Every cone of the fan, zero cone included, in lexicographic order.
    pub fn faces(&self) -> &BTreeSet<Cone> {
        &self.faces
    }

    pub fn contains(&self, cone: &Cone) -> bool {
        self.faces.contains(cone)
    }

    /// Whether the given rays span a cone of the fan.
    pub fn spans_cone(&self, rays: &[usize]) -> bool {
        self.faces.contains(&Cone::new(rays.to_vec()))
    }

    pub fn cones_of_dim(&self, k: usize) -> impl Iterator<Item = &Cone> {
        self.faces.iter().filter(move |c| c.dim() == k)
    }

    pub fn simplicial_complex(&self) -> SimplicialComplex {
        SimplicialComplex {
            vertices: (0..self.rays.len()).collect(),
            faces: self
                .faces
                .iter()
                .filter(|c| c.dim() > 0)
                .map(|c| c.0.clone())
                .collect(),
        }
    }

    /// Every cone's rays must extend to a basis of the lattice.
    pub fn check_smooth(&self) -> Smoothness {
        for c in &self.max_cones {
            let vecs: Vec<&[i64]> = c.0.iter().map(|&r| self.rays[r].coords()).collect();
            if !lattice::is_unimodular_family(self.dim, &vecs) {
                return Smoothness::Singular(c.clone());
            }
        }
        Smoothness::Smooth
    }

    pub fn is_smooth(&self) -> bool {
        self.check_smooth() == Smoothness::Smooth
    }

    /// Completeness of the support.
    ///
    /// Dimensions 1 and 2 use an exact angular test. From dimension 3 on the
    /// fan counts as complete iff all maximal cones are full dimensional,
    /// every wall (codimension-one cone) lies in exactly two of them and the
    /// wall adjacency graph of maximal cones is connected. That wall test is
    /// the working definition here; it is not cross-checked against an exact
    /// support computation.
    pub fn check_complete(&self) -> Completeness {
        let complete = match self.dim {
            0 => true,
            1 => self.rays.iter().any(|r| r.0 == [1]) && self.rays.iter().any(|r| r.0 == [-1]),
            2 => self.complete_plane(),
            _ => self.complete_by_walls(),
        };
        if complete {
            Completeness::Complete
        } else {
            Completeness::Incomplete
        }
    }

    pub fn is_complete(&self) -> bool {
        self.check_complete() == Completeness::Complete
    }

    fn complete_plane(&self) -> bool {
        if self.rays.len() < 3 {
            return false;
        }
        let half = |v: &[i64]| u8::from(!(v[1] > 0 || (v[1] == 0 && v[0] > 0)));
        let cross =
            |a: &[i64], b: &[i64]| a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128;
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (self.rays[i].coords(), self.rays[j].coords());
            half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
        });
        (0..order.len()).all(|k| {
            let i = order[k];
            let j = order[(k + 1) % order.len()];
            cross(self.rays[i].coords(), self.rays[j].coords()) > 0 && self.spans_cone(&[i, j])
        })
    }

    fn complete_by_walls(&self) -> bool {
        let n = self.dim;
        if self.max_cones.iter().any(|c| c.dim() != n) {
            return false;
        }
        let mut walls: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.max_cones.iter().enumerate() {
            for skip in 0..c.dim() {
                let mut w = c.0.clone();
                w.remove(skip);
                walls.entry(Cone(w)).or_default().push(i);
            }
        }
        if walls.values().any(|owners| owners.len() != 2) {
            return false;
        }
        let mut adj = vec![Vec::new(); self.max_cones.len()];
        for owners in walls.values() {
            adj[owners[0]].push(owners[1]);
            adj[owners[1]].push(owners[0]);
        }
        let mut seen = vec![false; self.max_cones.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &o in &adj[c] {
                if !seen[o] {
                    seen[o] = true;
                    queue.push_back(o);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Minimal non-faces of the simplicial complex, lexicographically sorted.
    pub fn primitive_collections(&self) -> Vec<PrimitiveCollection> {
        let d = self.rays.len();
        let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); d];
        for (a, b) in self.two_cones() {
            neighbors[a].insert(b);
            neighbors[b].insert(a);
        }
        let mut out = Vec::new();
        // A minimal non-face S splits as (S minus its largest ray) ∪ {largest}.
        // Beyond size two, the largest ray spans a 2-cone with every other.
        for face in &self.faces {
            let start = face.0.last().map_or(0, |&m| m + 1);
            let candidates: Vec<usize> = if face.0.len() < 2 {
                (start..d).collect()
            } else {
                neighbors[face.0[0]]
                    .range(start..)
                    .copied()
                    .filter(|v| face.0[1..].iter().all(|u| neighbors[*u].contains(v)))
                    .collect()
            };
            for v in candidates {
                let mut candidate = face.0.clone();
                candidate.push(v);
                let cone = Cone(candidate);
                if self.faces.contains(&cone) {
                    continue;
                }
                let minimal = (0..cone.0.len() - 1).all(|skip| {
                    let mut sub = cone.0.clone();
                    sub.remove(skip);
                    self.faces.contains(&Cone(sub))
                });
                if minimal {
                    out.push(PrimitiveCollection(cone.0));
                }
            }
        }
        out.sort();
        out
    }

    /// Every set of pairwise cone-spanning rays spans a cone.
    pub fn is_flag_like(&self) -> bool {
        self.primitive_collections().iter().all(|p| p.len() == 2)
    }

    /// The fan `Star(τ)` in the quotient lattice `N / N_τ`.
    pub fn star(&self, tau: &Cone) -> Result<Fan, FanError> {
        if !self.faces.contains(tau) {
            return Err(FanError::ConeNotInFan(tau.clone()));
        }
        let tau_vecs: Vec<&[i64]> = tau.0.iter().map(|&r| self.rays[r].coords()).collect();
        let projection = lattice::quotient_projection(self.dim, &tau_vecs);
        let qdim = self.dim - tau.dim();

        let containing: Vec<&Cone> = self
            .max_cones
            .iter()
            .filter(|c| tau.is_face_of(c))
            .collect();
        let mut involved: BTreeSet<usize> = BTreeSet::new();
        for c in &containing {
            involved.extend(c.0.iter().copied().filter(|r| !tau.contains_ray(*r)));
        }
        let mut rays: Vec<Vec<i64>> = Vec::new();
        let mut index_of: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut new_index: HashMap<usize, usize> = HashMap::new();
        for r in involved {
            let image = lattice::primitive(&lattice::mat_vec(&projection, self.rays[r].coords()));
            let next = rays.len();
            let idx = *index_of.entry(image.clone()).or_insert_with(|| {
                rays.push(image);
                next
            });
            new_index.insert(r, idx);
        }
        let cones: Vec<Vec<usize>> = containing
            .iter()
            .map(|c| {
                c.0.iter()
                    .filter(|r| !tau.contains_ray(**r))
                    .map(|r| new_index[r])
                    .collect()
            })
            .collect();
        Fan::build(qdim, rays, cones)
    }

    /// Subdivision into cones over the barycentric subdivision of the
    /// simplicial complex. Rays are indexed by the cones they bisect, in
    /// (dimension, lexicographic) order, so the original rays keep their
    /// indices.
    pub fn barycentric_refine(&self) -> Fan {
        let mut cones: Vec<&Cone> = self.faces.iter().filter(|c| c.dim() > 0).collect();
        cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        let index_of: HashMap<&Cone, usize> =
            cones.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let rays: Vec<Vec<i64>> = cones
            .iter()
            .map(|c| {
                let mut sum = vec![0i64; self.dim];
                for &r in &c.0 {
                    for (s, x) in sum.iter_mut().zip(self.rays[r].coords()) {
                        *s += x;
                    }
                }
                lattice::primitive(&sum)
            })
            .collect();

        let mut chains: BTreeSet<Vec<usize>> = BTreeSet::new();
        for m in &self.max_cones {
            for perm in permutations(&m.0) {
                let mut chain: Vec<usize> = (1..=perm.len())
                    .map(|k| index_of[&Cone::new(perm[..k].to_vec())])
                    .collect();
                chain.sort_unstable();
                chains.insert(chain);
            }
        }
        Fan::build(self.dim, rays, chains.into_iter().collect())
            .expect("barycentric subdivision of a valid fan is valid")
    }

    /// Pairs `{i, j}` (with `i < j`) spanning a two-dimensional cone.
    pub fn two_cones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cones_of_dim(2).map(|c| (c.0[0], c.0[1]))
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Total order on cones by dimension first, then lexicographically.
pub fn cone_order(a: &Cone, b: &Cone) -> Ordering {
    a.dim().cmp(&b.dim()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn cones(list: &[&[usize]]) -> Vec<PrimitiveCollection> {
        list.iter()
            .map(|c| PrimitiveCollection(c.to_vec()))
            .collect()
    }

    #[test]
    fn parse_projective_plane() {
        let fan =
            Fan::parse(r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#)
                .unwrap();
        assert_eq!(fan.faces().len(), 7);
        assert_eq!(fan.ray(2).coords(), &[-1, -1]);
    }

    #[test]
    fn parse_rejects_non_primitive() {
        let err = Fan::parse(r#"{"dim":2,"rays":[[1,0],[2,4]],"max_cones":[[0,1]]}"#).unwrap_err();
        assert_eq!(
            err,
            FanError::NonPrimitiveRay {
                ray: 1,
                coords: vec![2, 4]
            }
        );
        let err = Fan::parse(r#"{"dim":2,"rays":[[0,0]],"max_cones":[[0]]}"#).unwrap_err();
        assert!(matches!(err, FanError::NonPrimitiveRay { ray: 0, .. }));
    }

    #[test]
    fn parse_error_paths() {
        assert!(matches!(
            Fan::parse(r#"{"dim":2,"rays":[[1,0],[1,0]],"max_cones":[[0]]}"#),
            Err(FanError::DuplicateRay {
                first: 0,
                second: 1
            })
        ));
        assert!(matches!(
            Fan::parse(r#"{"dim":2,"rays":[[1,0]],"max_cones":[[0,3]]}"#),
            Err(FanError::IndexOutOfRange { cone: 0, index: 3 })
        ));
        assert!(matches!(
            Fan::parse(r#"{"dim":2,"rays":[[1,0],[-1,0]],"max_cones":[[0,1]]}"#),
            Err(FanError::DependentRaysInCone { cone: 0, .. })
        ));
        assert!(matches!(
            Fan::parse(r#"{"dim":2,"rays":[[1,0],[0,1]],"max_cones":[[0]]}"#),
            Err(FanError::OrphanRay { ray: 1 })
        ));
        assert!(matches!(Fan::parse("{\"dim\":2}"), Err(FanError::Json(_))));
    }

    #[test]
    fn overlapping_cones_rejected() {
        // <e1, e2> and <e1+e2, -e1+2e2> overlap in their interiors
        let err = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 2]],
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            FanError::NotIntersectionClosed {
                first: 0,
                second: 1,
                ..
            }
        ));
        // <e1, e2> and <e2, e1+e2> share the ray e2 but overlap beyond it
        let err = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap_err();
        assert!(matches!(err, FanError::NotIntersectionClosed { .. }));
    }

    #[test]
    fn circle_fan_is_valid() {
        let fan = Fan::parse(r#"{"dim":1,"rays":[[1],[-1]],"max_cones":[[0],[1]]}"#).unwrap();
        assert_eq!(fan.faces().len(), 3);
        assert!(fan.is_complete());
    }

    #[test]
    fn smoothness() {
        assert!(catalog::projective_space(2).is_smooth());
        let singular = Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1]]).unwrap();
        assert_eq!(
            singular.check_smooth(),
            Smoothness::Singular(Cone::new(vec![0, 1]))
        );
        assert!(catalog::connected_non_basis_example().is_smooth());
    }

    #[test]
    fn completeness() {
        assert!(catalog::projective_space(2).is_complete());
        assert!(catalog::projective_space(3).is_complete());
        assert!(!catalog::disconnected_example().is_complete());
        assert!(!catalog::orthant(3).is_complete());
        assert!(!catalog::orthant(2).is_complete());
        // three rays whose 2-cones leave a gap
        let gap = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(!gap.is_complete());
        // an octahedron missing one facet
        let oct = catalog::product(
            &catalog::product(&catalog::projective_space(1), &catalog::projective_space(1)),
            &catalog::projective_space(1),
        );
        assert!(oct.is_complete());
        let mut doc = oct.to_document();
        doc.max_cones.pop();
        assert!(!Fan::from_document(doc).unwrap().is_complete());
    }

    #[test]
    fn primitive_collection_examples() {
        assert_eq!(
            catalog::projective_space(2).primitive_collections(),
            cones(&[&[0, 1, 2]])
        );
        assert_eq!(
            catalog::p1_x_p1().primitive_collections(),
            cones(&[&[0, 2], &[1, 3]])
        );
        assert!(catalog::orthant(3).primitive_collections().is_empty());
    }

    #[test]
    fn flag_examples() {
        assert!(catalog::p1_x_p1().is_flag_like());
        assert!(!catalog::projective_space(2).is_flag_like());
        assert!(!catalog::orthant_star_subdivision().is_flag_like());
    }

    #[test]
    fn star_examples() {
        let p2 = catalog::projective_space(2);
        let same = p2.star(&Cone::zero()).unwrap();
        assert_eq!(same, p2);

        let line = p2.star(&Cone::new(vec![0])).unwrap();
        assert_eq!(line.dim(), 1);
        let mut coords: Vec<Vec<i64>> = line.rays().iter().map(|r| r.coords().to_vec()).collect();
        coords.sort();
        assert_eq!(coords, vec![vec![-1], vec![1]]);
        assert!(line.is_complete());

        let point = p2.star(&Cone::new(vec![0, 1])).unwrap();
        assert_eq!(point.dim(), 0);
        assert_eq!(point.ray_count(), 0);
        assert_eq!(point.faces().len(), 1);

        assert_eq!(
            p2.star(&Cone::new(vec![0, 1, 2])),
            Err(FanError::ConeNotInFan(Cone::new(vec![0, 1, 2])))
        );
    }

    #[test]
    fn barycentric_examples() {
        let p2 = catalog::projective_space(2);
        let refined = p2.barycentric_refine();
        assert_eq!(refined.ray_count(), 6);
        assert_eq!(refined.max_cones().len(), 6);
        assert_eq!(&refined.rays()[..3], p2.rays());
        assert!(refined.is_flag_like());
        assert!(refined.is_smooth());
        assert!(refined.is_complete());
        // the cheap constructor agrees with full validation
        assert!(Fan::from_document(refined.to_document()).is_ok());

        let circle = catalog::projective_space(1);
        assert_eq!(circle.barycentric_refine(), circle);
    }

    #[test]
    fn closure_is_union_of_face_sets() {
        let fan = catalog::hirzebruch(1);
        let mut direct = BTreeSet::new();
        for c in fan.max_cones() {
            for f in c.faces() {
                direct.insert(f);
            }
        }
        assert_eq!(&direct, fan.faces());
        let again = Fan::new(
            fan.dim(),
            fan.to_document().rays,
            fan.faces().iter().map(|c| c.rays().to_vec()).collect(),
        )
        .unwrap();
        assert_eq!(again.faces(), fan.faces());
    }
}
