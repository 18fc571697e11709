//! Cross-checks of library results against independent computations:
//! determinants and minors, exhaustive subset enumeration, and brute-force
//! group computations in `W`.

mod common;

use std::collections::BTreeSet;

use common::{clique_complex_oracle, corpus, det, minor_gcd, small_corpus, subsets, surfaces};
use torfan::fan::Smoothness;
use torfan::pi1::{self, AbelianVerdict, NonAbelianWitness, Which};
use torfan::racg::CommutationGraph;
use torfan::{catalog, topology, AbelianInvariants, Cone, Fan, Gf2Vector, Word};

fn ray_matrix(fan: &Fan, rays: &[usize]) -> Vec<Vec<i64>> {
    // rows are coordinates, columns are rays
    (0..fan.dim())
        .map(|i| rays.iter().map(|&r| fan.ray(r).coords()[i]).collect())
        .collect()
}

#[test]
fn smoothness_matches_gcd_of_maximal_minors() {
    let mut fans: Vec<Fan> = corpus().into_iter().map(|n| n.fan).collect();
    fans.push(Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1]]).unwrap());
    fans.push(
        Fan::new(
            3,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]],
            vec![vec![0, 1, 2]],
        )
        .unwrap(),
    );
    fans.push(Fan::new(3, vec![vec![1, 1, 0], vec![1, -1, 0]], vec![vec![0, 1]]).unwrap());
    let mut singular = 0;
    for fan in &fans {
        let oracle = fan
            .max_cones()
            .iter()
            .find(|c| minor_gcd(&ray_matrix(fan, c.rays()), c.dim()) != 1);
        match (fan.check_smooth(), oracle) {
            (Smoothness::Smooth, None) => {}
            (Smoothness::Singular(c), Some(o)) => {
                assert_eq!(&c, o);
                singular += 1;
            }
            (got, want) => panic!("{got:?} vs {want:?}"),
        }
    }
    assert_eq!(singular, 3);
}

#[test]
fn primitive_collections_match_exhaustive_search() {
    for n in corpus().into_iter().filter(|n| n.fan.ray_count() <= 12) {
        let fan = &n.fan;
        let d = fan.ray_count();
        let mut expected = Vec::new();
        for size in 1..=d {
            for s in subsets(d, size) {
                if fan.spans_cone(&s) {
                    continue;
                }
                let minimal = (0..s.len()).all(|skip| {
                    let mut sub = s.clone();
                    sub.remove(skip);
                    fan.spans_cone(&sub)
                });
                if minimal {
                    expected.push(s);
                }
            }
        }
        expected.sort();
        let got: Vec<Vec<usize>> = fan
            .primitive_collections()
            .iter()
            .map(|p| p.rays().to_vec())
            .collect();
        assert_eq!(got, expected, "{}", n.name);
    }
}

#[test]
fn flag_like_matches_clique_complex() {
    let mut seen = (0, 0);
    for n in corpus().into_iter().filter(|n| n.fan.ray_count() <= 12) {
        let oracle = clique_complex_oracle(&n.fan);
        assert_eq!(n.fan.is_flag_like(), oracle, "{}", n.name);
        assert_eq!(topology::is_aspherical(&n.fan), oracle, "{}", n.name);
        if oracle {
            seen.0 += 1;
        } else {
            seen.1 += 1;
        }
    }
    assert!(seen.0 > 10 && seen.1 > 3, "{seen:?}");
}

#[test]
fn stars_of_flag_like_fans_are_flag_like() {
    let mut checked = 0;
    for n in corpus()
        .into_iter()
        .filter(|n| n.fan.is_smooth() && n.fan.is_flag_like())
    {
        for tau in n.fan.faces() {
            let star = n.fan.star(tau).unwrap();
            assert!(star.is_flag_like(), "{} at {tau}", n.name);
            assert!(star.is_smooth(), "{} at {tau}", n.name);
            if n.fan.is_complete() {
                assert!(star.is_complete(), "{} at {tau}", n.name);
            }
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn barycentric_refinements_are_valid_and_flag_like() {
    for n in small_corpus()
        .into_iter()
        .filter(|n| n.fan.ray_count() <= 8)
    {
        let refined = n.fan.barycentric_refine();
        if n.fan.dim() <= 3 {
            assert!(
                Fan::from_document(refined.to_document()).is_ok(),
                "{}",
                n.name
            );
        }
        assert!(refined.is_flag_like(), "{}", n.name);
        assert_eq!(refined.is_complete(), n.fan.is_complete(), "{}", n.name);
        assert_eq!(refined.is_smooth(), n.fan.is_smooth(), "{}", n.name);
    }
}

#[test]
fn component_count_matches_image_size() {
    for n in corpus().into_iter().filter(|n| n.fan.ray_count() <= 12) {
        let fan = &n.fan;
        let d = fan.ray_count();
        let mut image = BTreeSet::new();
        for mask in 0..1u64 << d {
            let mut v = Gf2Vector::zero(fan.dim());
            for r in 0..d {
                if mask >> r & 1 == 1 {
                    v += &Gf2Vector::from_ints(fan.ray(r).coords());
                }
            }
            image.insert(v);
        }
        let c = pi1::connectedness(fan);
        assert_eq!(
            c.component_count().unwrap() * image.len() as u64,
            1 << fan.dim(),
            "{}",
            n.name
        );
        assert_eq!(c.connected, image.len() == 1 << fan.dim(), "{}", n.name);
    }
}

/// Integer inverse of a unimodular matrix by cofactors.
fn inverse(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let dt = det(m);
    assert!(dt == 1 || dt == -1);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                        .collect();
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    (sign * det(&minor) * dt) as i64
                })
                .collect()
        })
        .collect()
}

#[test]
fn characteristic_matrix_is_dual_pairing_mod_2() {
    for n in corpus()
        .into_iter()
        .filter(|n| n.fan.is_smooth() && n.fan.is_complete())
    {
        let fan = &n.fan;
        let basis = pi1::choose_basis(fan).unwrap();
        let matrix = pi1::char_matrix(fan, &basis);
        let u = inverse(&ray_matrix(fan, &basis.basis_ray_indices));
        for (j, &ray) in basis.permutation.iter().enumerate() {
            let v = fan.ray(ray).coords();
            for (i, u_i) in u.iter().enumerate() {
                let pairing: i64 = u_i.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(matrix.entry(j, i), pairing.rem_euclid(2) == 1, "{}", n.name);
            }
        }
    }
}

fn commute(g: &CommutationGraph, a: &Word, b: &Word) -> bool {
    g.equal(&a.concat(b), &b.concat(a))
}

#[test]
fn abelian_verdict_matches_brute_force_commutativity() {
    let mut counts = [0usize; 2];
    for n in corpus() {
        let fan = &n.fan;
        let d = fan.ray_count();
        let Ok(basis) = pi1::choose_basis(fan) else {
            continue;
        };
        if !basis.basis_is_pairwise_conical || fan.dim() > 3 || d - fan.dim() > 4 {
            continue;
        }
        let verdict = pi1::is_pi1_abelian(fan).unwrap();
        let gens = pi1::pi1_generators_in_w(fan).unwrap();
        let graph = CommutationGraph::from_fan(fan);
        let brute = gens
            .iter()
            .enumerate()
            .all(|(p, a)| gens[p + 1..].iter().all(|b| commute(&graph, a, b)));
        assert_eq!(verdict.is_abelian(), brute, "{}: {verdict:?}", n.name);
        counts[brute as usize] += 1;
    }
    assert!(counts[0] > 5 && counts[1] > 3, "{counts:?}");
}

#[test]
fn abelian_groups_have_few_rays() {
    for n in corpus() {
        if let Ok(v) = pi1::is_pi1_abelian(&n.fan) {
            if v.is_abelian() {
                assert!(n.fan.ray_count() <= 2 * n.fan.dim(), "{}", n.name);
            }
        }
    }
}

#[test]
fn complete_fans_never_fail_at_the_last_step() {
    let mut complete = 0;
    for n in corpus()
        .into_iter()
        .filter(|n| n.fan.is_complete() && n.fan.is_smooth())
    {
        if let Ok(AbelianVerdict::NonAbelian { witness }) = pi1::is_pi1_abelian(&n.fan) {
            assert_ne!(witness.step(), 5, "{}", n.name);
        }
        complete += 1;
    }
    assert!(complete > 100);
    let v = pi1::is_pi1_abelian(&catalog::even_pairing_example()).unwrap();
    assert!(matches!(
        v,
        AbelianVerdict::NonAbelian {
            witness: NonAbelianWitness::EvenPairing { .. }
        }
    ));
}

#[test]
fn plane_with_isolated_ray_fails_at_the_first_step() {
    let v = pi1::is_pi1_abelian(&common::plane_with_isolated_ray()).unwrap();
    let AbelianVerdict::NonAbelian { witness } = v else {
        panic!("{v:?}")
    };
    assert_eq!(witness.step(), 1);
}

/// `S_j = s_j · s_{b_1}^{a_{j,1}} ⋯ s_{b_n}^{a_{j,n}}` in original indices.
fn s_word(perm: &[usize], n: usize, row: &Gf2Vector, ray: usize) -> Word {
    let mut w = vec![ray];
    w.extend(row.ones().map(|i| perm[i]));
    assert!(row.len() == n);
    Word::new(w)
}

/// When a second non-basis ray `k` has coordinate 1 at the partner `i_j` of
/// `j`, the commutator `[S_k, S_j]` is one of `[s_{i_j}, s_j]` or
/// `[s_{i_j}, s_j] · [s_k, s_{i_k}]` (up to inversion), hence non-trivial.
#[test]
fn shared_partner_commutators() {
    let mut instances = 0;
    for n in corpus().into_iter().chain(surfaces(8)) {
        let fan = &n.fan;
        let Ok(basis) = pi1::choose_basis(fan) else {
            continue;
        };
        if !basis.basis_is_pairwise_conical {
            continue;
        }
        let graph = CommutationGraph::from_fan(fan);
        if !graph.commutator_abelian() {
            continue;
        }
        let m = pi1::char_matrix(fan, &basis);
        let dim = fan.dim();
        let d = fan.ray_count();
        let perm = &basis.permutation;
        let partner = |ray: usize| (0..d).find(|&x| x != ray && !graph.commutes(ray, x));
        let in_basis = |ray: usize| basis.position(ray) < dim;
        for j in dim..d {
            let ray_j = perm[j];
            let Some(i_j) = partner(ray_j) else { continue };
            if !in_basis(i_j) {
                continue;
            }
            let pos_ij = basis.position(i_j);
            for k in (dim..d).filter(|&k| k != j && m.entry(k, pos_ij)) {
                let ray_k = perm[k];
                let s_j = s_word(perm, dim, m.row(j), ray_j);
                let s_k = s_word(perm, dim, m.row(k), ray_k);
                let w = Word::commutator(&s_k, &s_j);
                assert!(!graph.reduce(&w).is_identity(), "{}", n.name);
                let c1 = Word::commutator(&Word::new(vec![i_j]), &Word::new(vec![ray_j]));
                let mut candidates = vec![c1.clone()];
                if let Some(i_k) = partner(ray_k) {
                    let c2 = Word::commutator(&Word::new(vec![ray_k]), &Word::new(vec![i_k]));
                    candidates.push(c1.concat(&c2));
                    candidates.push(c1.concat(&c2.inverse()));
                }
                let matched = candidates
                    .iter()
                    .any(|c| graph.equal(&w, c) || graph.equal(&w, &c.inverse()));
                assert!(matched, "{}: j={ray_j} k={ray_k}", n.name);
                instances += 1;
            }
        }
    }
    assert!(instances >= 10, "{instances}");
}

#[test]
fn kernel_of_phi_hat_on_balls() {
    for fan in [
        catalog::projective_space(2),
        catalog::p1_x_p1(),
        catalog::hirzebruch(1),
        catalog::projective_space(1),
    ] {
        let basis = pi1::choose_basis(&fan).unwrap();
        let m = pi1::char_matrix(&fan, &basis);
        let graph = CommutationGraph::from_fan(&fan);
        let ball = graph.enumerate_ball(5).unwrap();
        let mut images = BTreeSet::new();
        for w in &ball {
            let image = pi1::phi_hat(&m, w.word());
            let direct = w
                .letters()
                .iter()
                .fold(Gf2Vector::zero(fan.dim()), |mut acc, &r| {
                    acc += &Gf2Vector::from_ints(fan.ray(r).coords());
                    acc
                });
            // phi_hat in basis coordinates vanishes iff the direct sum of rays does
            assert_eq!(image.is_zero(), direct.is_zero());
            assert_eq!(pi1::in_pi1(&m, w.word()), image.is_zero());
            images.insert(image);
        }
        assert_eq!(images.len(), 1 << fan.dim());
    }
}

/// Same rays and 2-cones; maximal cones replaced by the 2-cones.
fn two_skeleton(fan: &Fan) -> Fan {
    let mut cones: Vec<Vec<usize>> = fan.cones_of_dim(2).map(|c| c.rays().to_vec()).collect();
    for r in 0..fan.ray_count() {
        if !cones.iter().any(|c| c.contains(&r)) {
            cones.push(vec![r]);
        }
    }
    Fan::new(
        fan.dim(),
        fan.rays().iter().map(|r| r.coords().to_vec()).collect(),
        cones,
    )
    .unwrap()
}

#[test]
fn presentations_depend_only_on_two_skeleton() {
    let mut compared = 0;
    for n in corpus()
        .into_iter()
        .filter(|n| n.fan.dim() >= 3 && n.fan.ray_count() <= 10)
    {
        let skeleton = two_skeleton(&n.fan);
        if skeleton == n.fan {
            continue;
        }
        let Ok(basis) = pi1::choose_basis(&n.fan) else {
            continue;
        };
        let m = pi1::char_matrix(&n.fan, &basis);
        assert_eq!(
            pi1::rs_presentation_with(&n.fan, &m),
            pi1::rs_presentation_with(&skeleton, &m),
            "{}",
            n.name
        );
        compared += 1;
    }
    assert!(compared >= 5, "{compared}");
}

#[test]
fn full_and_simplified_presentations_agree_on_homology() {
    for n in corpus().into_iter().filter(|n| n.fan.dim() <= 4) {
        let (Ok(full), Ok(simple)) = (
            pi1::rs_presentation(&n.fan),
            pi1::simplified_presentation(&n.fan),
        ) else {
            continue;
        };
        assert_eq!(full.abelianize(), simple.abelianize(), "{}", n.name);
        let once = full.drop_trivial_relators();
        assert_eq!(once.abelianize(), full.abelianize());
        assert_eq!(once, full.drop_trivial_relators().drop_trivial_relators());
    }
}

#[test]
fn abelian_structure_matches_homology() {
    for n in corpus().into_iter().filter(|n| n.fan.dim() <= 4) {
        if let (Ok(s), Ok(p)) = (pi1::abelian_structure(&n.fan), pi1::rs_presentation(&n.fan)) {
            assert_eq!(p.abelianize(), s, "{}", n.name);
        }
    }
}

#[test]
fn presentations_verify_across_corpus() {
    for n in corpus().into_iter().filter(|n| n.fan.dim() <= 4) {
        for which in [Which::Full, Which::Simplified] {
            if let Ok(report) = pi1::verify_presentation(&n.fan, which.clone()) {
                assert!(
                    report.passed(),
                    "{} {which:?}: {:?}",
                    n.name,
                    report.failure
                );
            }
        }
    }
}

#[test]
fn arrangement_fans_present_the_commutator_subgroup() {
    for fan in [
        catalog::projective_space(1),
        catalog::projective_space(2),
        catalog::p1_x_p1(),
        catalog::hirzebruch(1),
        catalog::hirzebruch(2),
    ] {
        let prime = topology::arrangement_fan(&fan);
        assert!(Fan::from_document(prime.to_document()).is_ok());
        assert!(prime.is_smooth());
        assert!(pi1::connectedness(&prime).connected);
        assert_eq!(
            CommutationGraph::from_fan(&prime),
            CommutationGraph::from_fan(&fan)
        );
        let group = topology::pi1_arrangement(&fan).unwrap();
        let rank = group
            .free_rank
            .expect("commutator subgroup is abelian here");
        let h1 = pi1::rs_presentation(&prime).unwrap().abelianize();
        assert_eq!(h1, AbelianInvariants::new(rank, &[]));
        assert!(group.normal_generators.iter().all(|w| group.contains(w)));
    }
}

#[test]
fn quotient_maps_form_exact_sequences() {
    for n in corpus()
        .into_iter()
        .filter(|n| n.fan.is_smooth() && n.fan.ray_count() <= 9)
    {
        let Ok(q) = topology::quotient_data(&n.fan) else {
            continue;
        };
        let d = n.fan.ray_count();
        let dim = n.fan.dim();
        assert_eq!(q.g_matrix.len(), dim);
        assert_eq!(q.f_matrix.len(), d);
        // g is onto: its maximal minors have gcd 1
        assert_eq!(minor_gcd(&q.g_matrix, dim), 1, "{}", n.name);
        // f is injective with saturated image
        if d > dim {
            assert_eq!(minor_gcd(&q.f_matrix, d - dim), 1, "{}", n.name);
        }
        for row in &q.g_matrix {
            for c in 0..d - dim {
                assert_eq!((0..d).map(|j| row[j] * q.f_matrix[j][c]).sum::<i64>(), 0);
            }
        }
    }
}

#[test]
fn clique_words_avoid_small_normal_closures() {
    // [s_0, s_2] in the torus and in F1; products of up to three conjugates
    for fan in [catalog::p1_x_p1(), catalog::hirzebruch(1)] {
        let graph = CommutationGraph::from_fan(&fan);
        let w = Word::new(vec![0, 2, 0, 2]);
        assert_eq!(
            topology::find_clique_word_in_normal_closure(&graph, &w, 3, 4),
            None
        );
    }
}

#[test]
fn refined_fans_keep_original_rays_first() {
    for n in small_corpus()
        .into_iter()
        .filter(|n| n.fan.ray_count() <= 8)
    {
        let refined = n.fan.barycentric_refine();
        for r in 0..n.fan.ray_count() {
            assert_eq!(refined.ray(r), n.fan.ray(r));
        }
        assert_eq!(
            refined.ray_count(),
            n.fan.faces().iter().filter(|c: &&Cone| c.dim() > 0).count()
        );
    }
}
