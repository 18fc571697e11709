//! Asphericity of `X(Δ)` and the real coordinate subspace arrangement
//! attached to the primitive collections of `Δ`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::fan::{Completeness, Cone, Fan, Smoothness};
use crate::lattice;
use crate::pi1;
use crate::racg::{CommutationGraph, NormalForm, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("fan is not smooth at cone {0}")]
    NotSmooth(Cone),
    #[error("fan is not complete and its rays do not contain a basis mod 2")]
    IncompleteFanWithoutBasis,
    #[error("no n rays of the fan form a lattice basis")]
    NoIntegralBasisAmongRays,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subspace {
    /// Coordinates that vanish on the subspace.
    pub zero_coordinates: Vec<usize>,
    pub codimension: usize,
}

/// Union of coordinate subspaces of `R^d`, one per primitive collection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceArrangement {
    pub ambient_dim: usize,
    pub subspaces: Vec<Subspace>,
    /// Set when the fan is not complete but was admitted because its rays
    /// contain a basis mod 2.
    pub incomplete_fan: bool,
}

impl SubspaceArrangement {
    pub fn is_k_pi_1(&self) -> bool {
        self.subspaces.iter().all(|s| s.codimension == 2)
    }
}

/// Generating data for `π₁` of the arrangement complement, which is the
/// commutator subgroup `[W, W]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementPi1 {
    pub graph: CommutationGraph,
    /// `[s_p, s_q]` for every pair of rays spanning no cone; these generate
    /// `[W, W]` as a normal subgroup.
    pub normal_generators: Vec<Word>,
    /// Rank of `[W, W]` when it is (free) abelian.
    pub free_rank: Option<usize>,
}

impl ArrangementPi1 {
    pub fn contains(&self, w: &Word) -> bool {
        self.graph.in_commutator_subgroup(w)
    }
}

/// Lattice maps `Z^d → Z^n` (`g`, columns `v_j`) and `Z^(d-n) → Z^d` (`f`)
/// forming an exact sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientData {
    /// Rays forming a lattice basis, ascending.
    pub basis: Vec<usize>,
    /// `n x d`.
    pub g_matrix: Vec<Vec<i64>>,
    /// `d x (d - n)`, one column per non-basis ray in ascending order.
    pub f_matrix: Vec<Vec<i64>>,
}

pub fn is_aspherical(fan: &Fan) -> bool {
    fan.is_flag_like()
}

fn require_smooth(fan: &Fan) -> Result<(), TopologyError> {
    match fan.check_smooth() {
        Smoothness::Smooth => Ok(()),
        Smoothness::Singular(c) => Err(TopologyError::NotSmooth(c)),
    }
}

pub fn arrangement(fan: &Fan) -> Result<SubspaceArrangement, TopologyError> {
    require_smooth(fan)?;
    let incomplete = matches!(fan.check_complete(), Completeness::Incomplete);
    if incomplete && !pi1::connectedness(fan).connected {
        return Err(TopologyError::IncompleteFanWithoutBasis);
    }
    let subspaces = fan
        .primitive_collections()
        .into_iter()
        .map(|p| Subspace {
            codimension: p.len(),
            zero_coordinates: p.rays().to_vec(),
        })
        .collect();
    Ok(SubspaceArrangement {
        ambient_dim: fan.ray_count(),
        subspaces,
        incomplete_fan: incomplete,
    })
}

pub fn is_arrangement_k_pi_1(fan: &Fan) -> Result<bool, TopologyError> {
    arrangement(fan).map(|a| a.is_k_pi_1())
}

pub fn pi1_arrangement(fan: &Fan) -> Result<ArrangementPi1, TopologyError> {
    arrangement(fan)?;
    let graph = CommutationGraph::from_fan(fan);
    let non_edges = graph.non_edges();
    let normal_generators = non_edges
        .iter()
        .map(|&(p, q)| Word::new(vec![p, q, p, q]))
        .collect();
    let free_rank = graph.commutator_abelian().then_some(non_edges.len());
    Ok(ArrangementPi1 {
        graph,
        normal_generators,
        free_rank,
    })
}

/// Fan in `Z^d` with rays `e_1, ..., e_d` and the same cones as `fan`.
pub fn arrangement_fan(fan: &Fan) -> Fan {
    let d = fan.ray_count();
    let rays = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    let cones = fan.max_cones().iter().map(|c| c.rays().to_vec()).collect();
    Fan::build(d, rays, cones).expect("coordinate cones form a fan")
}

fn integral_basis(fan: &Fan) -> Option<Vec<usize>> {
    let n = fan.dim();
    let is_basis = |rays: &[usize]| {
        let vecs: Vec<&[i64]> = rays.iter().map(|&r| fan.ray(r).coords()).collect();
        lattice::is_unimodular_family(n, &vecs)
    };
    let mut cones: Vec<&Cone> = fan.max_cones().iter().filter(|c| c.dim() == n).collect();
    cones.sort();
    if let Some(c) = cones.into_iter().find(|c| is_basis(c.rays())) {
        return Some(c.rays().to_vec());
    }
    let d = fan.ray_count();
    if n > d {
        return None;
    }
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        if is_basis(&subset) {
            return Some(subset);
        }
        // next n-subset in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if subset[i] < d - n + i {
                break;
            }
        }
        subset[i] += 1;
        for k in i + 1..n {
            subset[k] = subset[k - 1] + 1;
        }
    }
}

pub fn quotient_data(fan: &Fan) -> Result<QuotientData, TopologyError> {
    require_smooth(fan)?;
    let n = fan.dim();
    let d = fan.ray_count();
    let basis = integral_basis(fan).ok_or(TopologyError::NoIntegralBasisAmongRays)?;
    let vecs: Vec<&[i64]> = basis.iter().map(|&r| fan.ray(r).coords()).collect();
    // rows of the inverse are the dual basis u_i
    let dual = lattice::unimodular_inverse(n, &vecs).expect("basis is unimodular");

    let g_matrix: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..d).map(|j| fan.ray(j).coords()[i]).collect())
        .collect();
    let others: Vec<usize> = (0..d).filter(|j| !basis.contains(j)).collect();
    let mut f_matrix = vec![vec![0i64; others.len()]; d];
    for (col, &j) in others.iter().enumerate() {
        f_matrix[j][col] = 1;
        let coords = lattice::mat_vec(&dual, fan.ray(j).coords());
        for (i, &b) in basis.iter().enumerate() {
            f_matrix[b][col] -= coords[i];
        }
    }
    for row in &g_matrix {
        for col in 0..others.len() {
            let s: i64 = row.iter().zip(&f_matrix).map(|(g, f)| g * f[col]).sum();
            assert_eq!(s, 0, "g . f must vanish");
        }
    }
    Ok(QuotientData {
        basis,
        g_matrix,
        f_matrix,
    })
}

/// Bounded search for a clique word (a non-trivial product of distinct
/// pairwise commuting generators) in the normal closure of `w`, among
/// products of at most `max_factors` conjugates `g w^{±1} g⁻¹` with
/// `|g| ≤ conjugator_radius`. Returns the first one found. `None` says
/// nothing beyond the searched range.
pub fn find_clique_word_in_normal_closure(
    graph: &CommutationGraph,
    w: &Word,
    max_factors: usize,
    conjugator_radius: usize,
) -> Option<NormalForm> {
    let ball = graph
        .enumerate_ball_with_cap(conjugator_radius, conjugator_radius)
        .expect("radius within its own cap");
    let mut conjugates: BTreeSet<NormalForm> = BTreeSet::new();
    for g in &ball {
        for x in [w.clone(), w.inverse()] {
            let c = g.word().concat(&x).concat(&g.word().inverse());
            conjugates.insert(graph.reduce(&c));
        }
    }
    let is_clique = |nf: &NormalForm| {
        let l = nf.letters();
        !l.is_empty()
            && l.iter()
                .enumerate()
                .all(|(p, &a)| l[p + 1..].iter().all(|&b| a != b && graph.commutes(a, b)))
    };
    let mut level: BTreeSet<NormalForm> = BTreeSet::new();
    level.insert(NormalForm::default());
    for _ in 0..max_factors {
        let mut next = BTreeSet::new();
        for x in &level {
            for c in &conjugates {
                let p = graph.multiply(x.word(), c.word());
                if is_clique(&p) {
                    return Some(p);
                }
                next.insert(p);
            }
        }
        level = next;
    }
    None
}
