//! Fundamental group of the real toric variety `X(Δ)`.
//!
//! `π₁(X)` is the kernel of `φ̂: W(Δ) → Z₂ⁿ`, `s_j ↦ v_j mod 2`. Everything
//! here is computed from a choice of rays whose mod-2 images form a basis;
//! those rays are renumbered to come first (the *permuted* numbering used in
//! generator names and in [`CharMatrixGF2`]). Words in `W` always use the
//! original ray indices.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::fan::Fan;
use crate::gf2::{gf2_rank, Gf2Echelon, Gf2Vector};
use crate::present::{AbelianInvariants, Letter, Presentation, Relator};
use crate::racg::{CommutationGraph, Order, Word};

/// Presentations have `d · 2ⁿ` generators; beyond this dimension they are
/// refused.
pub const MAX_PRESENTATION_DIM: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("ray images do not span the lattice mod 2; X has {} components", component_label(*.deficiency))]
    EdgesDoNotSpanMod2 { deficiency: usize },
    #[error("X is disconnected ({} components); presentations need a connected variety", component_label(*.deficiency))]
    DisconnectedFan { deficiency: usize },
    #[error("the selected basis rays {0:?} do not pairwise span cones")]
    BasisNotPairwiseConical(Vec<usize>),
    #[error("the fundamental group is not abelian")]
    NotAbelian,
    #[error("word is not in the fundamental group (φ̂ = {0})")]
    NotInPi1(Gf2Vector),
    #[error("dimension {0} is too large for an explicit presentation")]
    DimensionTooLarge(usize),
}

fn component_label(deficiency: usize) -> String {
    match 1u64.checked_shl(deficiency as u32) {
        Some(c) if deficiency < 64 => c.to_string(),
        _ => format!("2^{deficiency}"),
    }
}

/// Rays whose mod-2 images form a basis of `Z₂ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisSelection {
    /// Basis rays in ascending order.
    pub basis_ray_indices: Vec<usize>,
    /// `permutation[p]` is the original index of the ray at position `p`:
    /// basis rays first, then the others in index order.
    pub permutation: Vec<usize>,
    pub basis_is_pairwise_conical: bool,
}

impl BasisSelection {
    pub fn rank(&self) -> usize {
        self.basis_ray_indices.len()
    }

    /// Position of an original ray in the permuted numbering.
    pub fn position(&self, ray: usize) -> usize {
        self.permutation
            .iter()
            .position(|&r| r == ray)
            .expect("ray index in range")
    }
}

/// Characteristic matrix: row `j` (permuted numbering) holds the coordinates
/// of ray `j` mod 2 in the selected basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharMatrixGF2 {
    permutation: Vec<usize>,
    rows: Vec<Gf2Vector>,
    by_ray: Vec<usize>,
}

impl CharMatrixGF2 {
    fn new(permutation: Vec<usize>, rows: Vec<Gf2Vector>) -> Self {
        let mut by_ray = vec![0; permutation.len()];
        for (p, &r) in permutation.iter().enumerate() {
            by_ray[r] = p;
        }
        CharMatrixGF2 {
            permutation,
            rows,
            by_ray,
        }
    }

    /// Number of rays `d`.
    pub fn ray_count(&self) -> usize {
        self.rows.len()
    }

    /// Lattice dimension `n`.
    pub fn rank(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Row `a_j` in permuted numbering.
    pub fn row(&self, j: usize) -> &Gf2Vector {
        &self.rows[j]
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    /// Row of an original ray index.
    pub fn row_of_ray(&self, ray: usize) -> &Gf2Vector {
        &self.rows[self.by_ray[ray]]
    }

    pub fn entry(&self, j: usize, i: usize) -> bool {
        self.rows[j].get(i)
    }

    /// Copy with entry `(j, i)` flipped.
    pub fn with_flipped(&self, j: usize, i: usize) -> CharMatrixGF2 {
        let mut out = self.clone();
        out.rows[j].flip(i);
        out
    }

    fn ray(&self, j: usize) -> usize {
        self.permutation[j]
    }

    /// `T(t) = s_{b_1}^{t_1} ⋯ s_{b_n}^{t_n}` as a word in original indices.
    fn transversal(&self, t: &Gf2Vector) -> Vec<usize> {
        t.ones().map(|i| self.permutation[i]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Connectedness {
    pub connected: bool,
    /// `n - k` where `k` is the mod-2 rank of the rays; there are
    /// `2^deficiency` components.
    pub deficiency: usize,
}

impl Connectedness {
    /// `None` if the count does not fit in a `u64`.
    pub fn component_count(&self) -> Option<u64> {
        (self.deficiency < 64).then(|| 1u64 << self.deficiency)
    }
}

/// Why the abelianness criterion fails. Ray indices are original indices;
/// `step` numbers follow the order in which the conditions are checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step")]
pub enum NonAbelianWitness {
    /// A ray fails to span a cone with two different rays, so `[W, W]` is
    /// already non-abelian.
    #[serde(rename = "1")]
    TwoNonPartners {
        ray: usize,
        partners: (usize, usize),
    },
    /// A non-basis ray's non-conical partner is not a basis ray.
    #[serde(rename = "3")]
    PartnerOutsideBasis { ray: usize, partner: usize },
    /// Another non-basis ray has a nonzero coordinate at the partner.
    #[serde(rename = "4")]
    SharedPartnerCoordinate {
        ray: usize,
        partner: usize,
        other: usize,
    },
    /// The ray's own coordinate at its partner vanishes.
    #[serde(rename = "5")]
    EvenPairing { ray: usize, partner: usize },
}

impl NonAbelianWitness {
    pub fn step(&self) -> u8 {
        match self {
            NonAbelianWitness::TwoNonPartners { .. } => 1,
            NonAbelianWitness::PartnerOutsideBasis { .. } => 3,
            NonAbelianWitness::SharedPartnerCoordinate { .. } => 4,
            NonAbelianWitness::EvenPairing { .. } => 5,
        }
    }
}

impl fmt::Display for NonAbelianWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonAbelianWitness::TwoNonPartners { ray, partners } => write!(
                f,
                "step 1: ray {ray} spans no cone with rays {} and {}",
                partners.0, partners.1
            ),
            NonAbelianWitness::PartnerOutsideBasis { ray, partner } => {
                write!(f, "step 3: partner {partner} of ray {ray} is not a basis ray")
            }
            NonAbelianWitness::SharedPartnerCoordinate { ray, partner, other } => write!(
                f,
                "step 4: ray {other} has coordinate 1 at basis ray {partner}, the partner of ray {ray}"
            ),
            NonAbelianWitness::EvenPairing { ray, partner } => {
                write!(f, "step 5: ray {ray} has coordinate 0 at its partner {partner}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum AbelianVerdict {
    /// Every pair of rays spans a cone.
    CaseI,
    /// Each non-basis ray has at most one non-conical partner, a basis ray
    /// with the required coordinates.
    CaseIi,
    NonAbelian {
        witness: NonAbelianWitness,
    },
}

impl AbelianVerdict {
    pub fn is_abelian(&self) -> bool {
        !matches!(self, AbelianVerdict::NonAbelian { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            AbelianVerdict::CaseI => "case_i",
            AbelianVerdict::CaseIi => "case_ii",
            AbelianVerdict::NonAbelian { .. } => "non_abelian",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Which {
    Full,
    Simplified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationFailure {
    RelatorNotTrivial {
        index: usize,
        relator: String,
        image: Word,
    },
    GeneratorNotInKernel {
        generator: String,
        image: Word,
    },
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationFailure::RelatorNotTrivial {
                index,
                relator,
                image,
            } => write!(
                f,
                "relator #{index} ({relator}) maps to the non-trivial element [{image}]"
            ),
            VerificationFailure::GeneratorNotInKernel { generator, image } => {
                write!(
                    f,
                    "generator {generator} maps to [{image}], outside the kernel of φ̂"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub relators_checked: usize,
    pub generators_checked: usize,
    pub failure: Option<VerificationFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Everything this module can say about one fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Report {
    pub connectedness: Connectedness,
    pub basis: Option<BasisSelection>,
    pub abelian: Option<AbelianVerdict>,
    pub structure: Option<AbelianInvariants>,
    pub presentation_full: Option<Presentation>,
    pub presentation_simplified: Option<Presentation>,
}

fn mod2_images(fan: &Fan) -> Vec<Gf2Vector> {
    fan.rays()
        .iter()
        .map(|r| Gf2Vector::from_ints(r.coords()))
        .collect()
}

pub fn connectedness(fan: &Fan) -> Connectedness {
    let k = gf2_rank(fan.dim(), &mod2_images(fan));
    Connectedness {
        connected: k == fan.dim(),
        deficiency: fan.dim() - k,
    }
}

pub fn choose_basis(fan: &Fan) -> Result<BasisSelection, Pi1Error> {
    let n = fan.dim();
    let images = mod2_images(fan);
    let conn = connectedness(fan);
    if !conn.connected {
        return Err(Pi1Error::EdgesDoNotSpanMod2 {
            deficiency: conn.deficiency,
        });
    }
    let from_cone = fan
        .max_cones()
        .iter()
        .filter(|c| c.dim() == n)
        .filter(|c| {
            let vs: Vec<Gf2Vector> = c.rays().iter().map(|&r| images[r].clone()).collect();
            gf2_rank(n, &vs) == n
        })
        .min()
        .map(|c| c.rays().to_vec());
    let basis = from_cone.unwrap_or_else(|| {
        let mut e = Gf2Echelon::new(n, images.len());
        (0..images.len())
            .filter(|&r| e.insert(&images[r]))
            .collect()
    });
    let pairwise = basis
        .iter()
        .enumerate()
        .all(|(p, &a)| basis[p + 1..].iter().all(|&b| fan.spans_cone(&[a, b])));
    let mut permutation = basis.clone();
    permutation.extend((0..fan.ray_count()).filter(|r| !basis.contains(r)));
    Ok(BasisSelection {
        basis_ray_indices: basis,
        permutation,
        basis_is_pairwise_conical: pairwise,
    })
}

pub fn char_matrix(fan: &Fan, basis: &BasisSelection) -> CharMatrixGF2 {
    let n = fan.dim();
    let images = mod2_images(fan);
    let mut e = Gf2Echelon::new(n, n);
    for &b in &basis.basis_ray_indices {
        e.insert(&images[b]);
    }
    let rows = basis
        .permutation
        .iter()
        .map(|&r| e.solve(&images[r]).expect("basis spans the mod-2 images"))
        .collect();
    CharMatrixGF2::new(basis.permutation.clone(), rows)
}

/// `φ̂(w) = Σ a_{letter}` for a word in original ray indices.
pub fn phi_hat(matrix: &CharMatrixGF2, w: &Word) -> Gf2Vector {
    let mut v = Gf2Vector::zero(matrix.rank());
    for &l in w.letters() {
        v += matrix.row_of_ray(l);
    }
    v
}

pub fn in_pi1(matrix: &CharMatrixGF2, w: &Word) -> bool {
    phi_hat(matrix, w).is_zero()
}

fn connected_matrix(fan: &Fan) -> Result<(BasisSelection, CharMatrixGF2), Pi1Error> {
    let basis = choose_basis(fan).map_err(|e| match e {
        Pi1Error::EdgesDoNotSpanMod2 { deficiency } => Pi1Error::DisconnectedFan { deficiency },
        other => other,
    })?;
    let matrix = char_matrix(fan, &basis);
    Ok((basis, matrix))
}

fn conical_basis_matrix(fan: &Fan) -> Result<(BasisSelection, CharMatrixGF2), Pi1Error> {
    let (basis, matrix) = connected_matrix(fan)?;
    if !basis.basis_is_pairwise_conical {
        return Err(Pi1Error::BasisNotPairwiseConical(basis.basis_ray_indices));
    }
    Ok((basis, matrix))
}

fn check_dim(n: usize) -> Result<(), Pi1Error> {
    if n > MAX_PRESENTATION_DIM {
        Err(Pi1Error::DimensionTooLarge(n))
    } else {
        Ok(())
    }
}

/// Cone-spanning pairs `(p, q)`, `p < q`, in permuted numbering.
fn conical_pairs(fan: &Fan, matrix: &CharMatrixGF2) -> Vec<(usize, usize)> {
    let d = matrix.ray_count();
    let mut out = Vec::new();
    for p in 0..d {
        for q in p + 1..d {
            if fan.spans_cone(&[matrix.ray(p), matrix.ray(q)]) {
                out.push((p, q));
            }
        }
    }
    out
}

fn generator_name(j: usize, t: &Gf2Vector) -> String {
    format!("y_{}_{}", j + 1, t.bitstring())
}

fn cosets(n: usize) -> impl Iterator<Item = Gf2Vector> {
    (0..1u64 << n).map(move |i| Gf2Vector::from_index(n, i))
}

/// Reidemeister–Schreier relators for `t ∈ Z₂ⁿ`, in terms of a generator
/// indexer `y(j, t)` that may return `None` for generators set to 1.
fn rs_relators<F>(fan: &Fan, matrix: &CharMatrixGF2, y: F, with_transversal: bool) -> Vec<Relator>
where
    F: Fn(usize, &Gf2Vector) -> Option<usize>,
{
    let n = matrix.rank();
    let d = matrix.ray_count();
    let word = |parts: &[(usize, &Gf2Vector)]| -> Relator {
        parts
            .iter()
            .filter_map(|&(j, t)| y(j, t))
            .map(Letter::pos)
            .collect()
    };
    let mut relators = Vec::new();
    if with_transversal {
        for t in cosets(n).skip(1) {
            let mut coset = Gf2Vector::zero(n);
            let mut r = Relator::new();
            for i in t.ones() {
                if let Some(g) = y(i, &coset) {
                    r.push(Letter::pos(g));
                }
                coset.flip(i);
            }
            relators.push(r);
        }
    }
    let pairs = conical_pairs(fan, matrix);
    for t in cosets(n) {
        for j in 0..d {
            let next = &t + matrix.row(j);
            relators.push(word(&[(j, &t), (j, &next)]));
        }
        for &(p, q) in &pairs {
            let tp = &t + matrix.row(p);
            let tq = &t + matrix.row(q);
            let tpq = &tp + matrix.row(q);
            relators.push(word(&[(p, &t), (q, &tp), (p, &tpq), (q, &tq)]));
        }
    }
    relators
}

fn rs_presentation_inner(fan: &Fan, matrix: &CharMatrixGF2) -> Presentation {
    let n = matrix.rank();
    let d = matrix.ray_count();
    let size = 1usize << n;
    let generators = (0..d)
        .flat_map(|j| cosets(n).map(move |t| generator_name(j, &t)))
        .collect();
    let relators = rs_relators(
        fan,
        matrix,
        |j, t| Some(j * size + t.to_index() as usize),
        true,
    );
    Presentation::new(generators, relators)
        .expect("indices in range")
        .drop_trivial_relators()
}

/// Full Reidemeister–Schreier presentation with `d · 2ⁿ` generators
/// `y_{j,t}`.
pub fn rs_presentation(fan: &Fan) -> Result<Presentation, Pi1Error> {
    check_dim(fan.dim())?;
    let (_, matrix) = connected_matrix(fan)?;
    Ok(rs_presentation_inner(fan, &matrix))
}

/// As [`rs_presentation`] but with an explicit characteristic matrix, which
/// need not belong to the fan.
pub fn rs_presentation_with(fan: &Fan, matrix: &CharMatrixGF2) -> Presentation {
    rs_presentation_inner(fan, matrix)
}

fn simplified_inner(fan: &Fan, matrix: &CharMatrixGF2) -> Presentation {
    let n = matrix.rank();
    let d = matrix.ray_count();
    let size = 1usize << n;
    let generators = (n..d)
        .flat_map(|j| cosets(n).map(move |t| generator_name(j, &t)))
        .collect();
    let index = |j: usize, t: &Gf2Vector| (j >= n).then(|| (j - n) * size + t.to_index() as usize);
    let relators = rs_relators(fan, matrix, index, false);
    Presentation::new(generators, relators)
        .expect("indices in range")
        .drop_trivial_relators()
}

/// Presentation on the `(d - n) · 2ⁿ` generators `y_{j,t}`, `j > n`; the
/// basis generators are trivial once the basis rays pairwise span cones.
pub fn simplified_presentation(fan: &Fan) -> Result<Presentation, Pi1Error> {
    check_dim(fan.dim())?;
    let (_, matrix) = conical_basis_matrix(fan)?;
    Ok(simplified_inner(fan, &matrix))
}

pub fn simplified_presentation_with(fan: &Fan, matrix: &CharMatrixGF2) -> Presentation {
    simplified_inner(fan, matrix)
}

/// Image of `y_{j,t}` in `W`: `T(t) · s_j · T(t + a_j)⁻¹`.
fn generator_word(matrix: &CharMatrixGF2, j: usize, t: &Gf2Vector) -> Word {
    let mut w = matrix.transversal(t);
    w.push(matrix.ray(j));
    let mut back = matrix.transversal(&(t + matrix.row(j)));
    back.reverse();
    w.extend(back);
    Word::new(w)
}

/// Generators of `π₁(X)` inside `W`: `T(t) · S_j · T(t)⁻¹` with
/// `S_j = s_j · T(a_j)`, for non-basis `j` and all `t`, in reduced form.
pub fn pi1_generators_in_w(fan: &Fan) -> Result<Vec<Word>, Pi1Error> {
    check_dim(fan.dim())?;
    let (_, matrix) = conical_basis_matrix(fan)?;
    let graph = CommutationGraph::from_fan(fan);
    let n = matrix.rank();
    let mut out = Vec::new();
    for j in n..matrix.ray_count() {
        let mut s_j = vec![matrix.ray(j)];
        s_j.extend(matrix.transversal(matrix.row(j)));
        for t in cosets(n) {
            let tw = Word::new(matrix.transversal(&t));
            let w = tw.concat(&Word::new(s_j.clone())).concat(&tw.inverse());
            out.push(graph.reduce(&w).into_word());
        }
    }
    Ok(out)
}

pub fn is_pi1_abelian(fan: &Fan) -> Result<AbelianVerdict, Pi1Error> {
    let (basis, matrix) = conical_basis_matrix(fan)?;
    Ok(abelian_verdict(fan, &basis, &matrix))
}

fn abelian_verdict(fan: &Fan, basis: &BasisSelection, matrix: &CharMatrixGF2) -> AbelianVerdict {
    let n = basis.rank();
    let d = fan.ray_count();
    let graph = CommutationGraph::from_fan(fan);
    let non_partners = |r: usize| -> Vec<usize> {
        (0..d)
            .filter(|&x| x != r && !graph.commutes(r, x))
            .collect()
    };
    let non_abelian = |witness| AbelianVerdict::NonAbelian { witness };

    for r in 0..d {
        if let [a, b, ..] = non_partners(r)[..] {
            return non_abelian(NonAbelianWitness::TwoNonPartners {
                ray: r,
                partners: (a, b),
            });
        }
    }
    if graph.non_edges().is_empty() {
        return AbelianVerdict::CaseI;
    }
    for j in n..d {
        let ray = matrix.ray(j);
        let Some(&partner) = non_partners(ray).first() else {
            continue;
        };
        let i = basis.position(partner);
        if i >= n {
            return non_abelian(NonAbelianWitness::PartnerOutsideBasis { ray, partner });
        }
        if let Some(k) = (n..d).find(|&k| k != j && matrix.entry(k, i)) {
            return non_abelian(NonAbelianWitness::SharedPartnerCoordinate {
                ray,
                partner,
                other: matrix.ray(k),
            });
        }
        if !matrix.entry(j, i) {
            return non_abelian(NonAbelianWitness::EvenPairing { ray, partner });
        }
    }
    AbelianVerdict::CaseIi
}

/// `π₁(X) ≅ Z^r ⊕ Z₂^(d-n-r)` where `r` counts non-basis rays with a
/// non-conical partner.
pub fn abelian_structure(fan: &Fan) -> Result<AbelianInvariants, Pi1Error> {
    let (basis, matrix) = conical_basis_matrix(fan)?;
    if !abelian_verdict(fan, &basis, &matrix).is_abelian() {
        return Err(Pi1Error::NotAbelian);
    }
    Ok(structure_of(fan, &basis, &matrix))
}

fn structure_of(fan: &Fan, basis: &BasisSelection, matrix: &CharMatrixGF2) -> AbelianInvariants {
    let n = basis.rank();
    let d = fan.ray_count();
    let graph = CommutationGraph::from_fan(fan);
    let r = (n..d)
        .map(|j| matrix.ray(j))
        .filter(|&ray| (0..d).any(|x| x != ray && !graph.commutes(ray, x)))
        .count();
    AbelianInvariants::free_plus_two_torsion(r, d - n - r)
}

/// Order of an element of `π₁(X) ⊂ W`; always 1, 2 or infinite.
pub fn torsion_of_pi1_element(fan: &Fan, w: &Word) -> Result<Order, Pi1Error> {
    let (_, matrix) = connected_matrix(fan)?;
    let image = phi_hat(&matrix, w);
    if !image.is_zero() {
        return Err(Pi1Error::NotInPi1(image));
    }
    Ok(CommutationGraph::from_fan(fan).order(w))
}

/// Maps every generator of the chosen presentation into `W` and checks that
/// each relator becomes trivial and each generator lies in `ker φ̂`.
pub fn verify_presentation(fan: &Fan, which: Which) -> Result<VerificationReport, Pi1Error> {
    check_dim(fan.dim())?;
    let (_, matrix) = match which {
        Which::Full => connected_matrix(fan)?,
        Which::Simplified => conical_basis_matrix(fan)?,
    };
    Ok(verify_with_matrix(fan, which, &matrix))
}

/// Builds the presentation from `matrix` (possibly corrupted) but measures
/// kernel membership with the fan's own characteristic matrix.
pub fn verify_with_matrix(fan: &Fan, which: Which, matrix: &CharMatrixGF2) -> VerificationReport {
    let n = matrix.rank();
    let true_matrix = char_matrix(
        fan,
        &BasisSelection {
            basis_ray_indices: matrix.permutation[..n].to_vec(),
            permutation: matrix.permutation.clone(),
            basis_is_pairwise_conical: true,
        },
    );
    let graph = CommutationGraph::from_fan(fan);
    let (presentation, first) = match which {
        Which::Full => (rs_presentation_inner(fan, matrix), 0),
        Which::Simplified => (simplified_inner(fan, matrix), n),
    };
    let size = 1usize << n;
    let images: Vec<Word> = (0..presentation.generators().len())
        .map(|g| {
            let j = first + g / size;
            let t = Gf2Vector::from_index(n, (g % size) as u64);
            generator_word(matrix, j, &t)
        })
        .collect();

    let mut report = VerificationReport {
        relators_checked: 0,
        generators_checked: 0,
        failure: None,
    };
    for (g, image) in images.iter().enumerate() {
        report.generators_checked += 1;
        if !in_pi1(&true_matrix, image) {
            report.failure = Some(VerificationFailure::GeneratorNotInKernel {
                generator: presentation.generators()[g].clone(),
                image: graph.reduce(image).into_word(),
            });
            return report;
        }
    }
    for (index, rel) in presentation.relators().iter().enumerate() {
        report.relators_checked += 1;
        let mut w = Word::identity();
        for l in rel {
            let img = &images[l.generator];
            w = w.concat(&if l.exponent > 0 {
                img.clone()
            } else {
                img.inverse()
            });
        }
        let nf = graph.reduce(&w);
        if !nf.is_identity() {
            let single = Presentation::new(presentation.generators().to_vec(), vec![rel.clone()])
                .expect("relator of a valid presentation");
            let text = single.export(crate::present::ExportFormat::Plain);
            let relator = text
                .split_once("| ")
                .map(|(_, r)| r.trim_end_matches(" >").to_string())
                .unwrap_or_default();
            report.failure = Some(VerificationFailure::RelatorNotTrivial {
                index,
                relator,
                image: nf.into_word(),
            });
            return report;
        }
    }
    report
}

/// Runs everything that applies to `fan`. Presentations are included when
/// `with_presentations` is set and the dimension allows it.
pub fn analyze(fan: &Fan, with_presentations: bool) -> Pi1Report {
    let conn = connectedness(fan);
    let mut report = Pi1Report {
        connectedness: conn,
        basis: None,
        abelian: None,
        structure: None,
        presentation_full: None,
        presentation_simplified: None,
    };
    if !conn.connected {
        return report;
    }
    let (basis, matrix) = connected_matrix(fan).expect("connected");
    let presentable = with_presentations && check_dim(fan.dim()).is_ok();
    if presentable {
        report.presentation_full = Some(rs_presentation_inner(fan, &matrix));
    }
    if basis.basis_is_pairwise_conical {
        let verdict = abelian_verdict(fan, &basis, &matrix);
        if verdict.is_abelian() {
            report.structure = Some(structure_of(fan, &basis, &matrix));
        }
        report.abelian = Some(verdict);
        if presentable {
            report.presentation_simplified = Some(simplified_inner(fan, &matrix));
        }
    }
    report.basis = Some(basis);
    report
}
