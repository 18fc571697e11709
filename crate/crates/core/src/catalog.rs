//! Named fans and constructions used throughout the tests, the CLI and the
//! demo page.

use std::collections::BTreeSet;

use crate::fan::{Cone, Fan, FanError};
use crate::lattice;

/// Complete fan of projective `n`-space: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`,
/// maximal cones all `n`-subsets.
pub fn projective_space(n: usize) -> Fan {
    assert!(n >= 1);
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    rays.push(vec![-1; n]);
    let cones = (0..=n)
        .map(|skip| (0..=n).filter(|&r| r != skip).collect())
        .collect();
    Fan::build(n, rays, cones).expect("projective fan")
}

/// `P^1 x P^1` with rays `e1, e2, -e1, -e2` in that order.
pub fn p1_x_p1() -> Fan {
    hirzebruch(0)
}

/// Hirzebruch surface `F_a`: rays `e1, e2, -e1 + a e2, -e2`.
pub fn hirzebruch(a: i64) -> Fan {
    Fan::build(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
    .expect("hirzebruch fan")
}

/// All faces of the positive orthant cone in `Z^n`.
pub fn orthant(n: usize) -> Fan {
    let rays = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    Fan::build(n, rays, vec![(0..n).collect()]).expect("orthant")
}

/// The orthant in `Z^3` subdivided by the ray `e1 + e2 + e3`.
pub fn orthant_star_subdivision() -> Fan {
    blow_up(&orthant(3), &Cone::new(vec![0, 1, 2])).expect("orthant blow-up")
}

/// `{<e1>, <-e1>, {0}}` in `Z^2`: two components.
pub fn disconnected_example() -> Fan {
    Fan::build(
        2,
        vec![vec![1, 0], vec![-1, 0]],
        vec![vec![0], vec![1], vec![]],
    )
    .expect("fan")
}

/// `{<2e1 + 3e2>, <e1>, {0}}` in `Z^2`: connected although the rays are not
/// a lattice basis.
pub fn connected_non_basis_example() -> Fan {
    Fan::build(
        2,
        vec![vec![2, 3], vec![1, 0]],
        vec![vec![0], vec![1], vec![]],
    )
    .expect("fan")
}

/// Orthant cone in `Z^3` plus the 2-cones `<e2, v>`, `<e3, v>` with
/// `v = (2, -1, -1)`: smooth, not complete, and `v` pairs evenly with `e1`,
/// its only non-conical partner.
pub fn even_pairing_example() -> Fan {
    Fan::build(
        3,
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![2, -1, -1]],
        vec![vec![0, 1, 2], vec![1, 3], vec![2, 3]],
    )
    .expect("fan")
}

/// Product fan in `Z^(a+b)`; rays of `first` come first.
pub fn product(first: &Fan, second: &Fan) -> Fan {
    let (m, n) = (first.dim(), second.dim());
    let mut rays = Vec::with_capacity(first.ray_count() + second.ray_count());
    for r in first.rays() {
        let mut v = r.coords().to_vec();
        v.resize(m + n, 0);
        rays.push(v);
    }
    for r in second.rays() {
        let mut v = vec![0; m];
        v.extend_from_slice(r.coords());
        rays.push(v);
    }
    let shift = first.ray_count();
    let mut cones = Vec::new();
    for a in first.max_cones() {
        for b in second.max_cones() {
            let mut c = a.rays().to_vec();
            c.extend(b.rays().iter().map(|r| r + shift));
            cones.push(c);
        }
    }
    Fan::build(m + n, rays, cones).expect("product of fans")
}

/// Stellar subdivision at `cone`: adds the ray through the sum of the
/// cone's rays (as the last ray) and splits every maximal cone containing it.
pub fn blow_up(fan: &Fan, cone: &Cone) -> Result<Fan, FanError> {
    if !fan.contains(cone) || cone.dim() < 2 {
        return Err(FanError::ConeNotInFan(cone.clone()));
    }
    let mut sum = vec![0i64; fan.dim()];
    for &r in cone.rays() {
        for (s, x) in sum.iter_mut().zip(fan.ray(r).coords()) {
            *s += x;
        }
    }
    let new_ray = fan.ray_count();
    let mut rays: Vec<Vec<i64>> = fan.rays().iter().map(|r| r.coords().to_vec()).collect();
    rays.push(lattice::primitive(&sum));
    let mut cones = Vec::new();
    for m in fan.max_cones() {
        if cone.is_face_of(m) {
            for &drop in cone.rays() {
                let mut c: Vec<usize> = m.rays().iter().copied().filter(|&r| r != drop).collect();
                c.push(new_ray);
                cones.push(c);
            }
        } else {
            cones.push(m.rays().to_vec());
        }
    }
    Fan::build(fan.dim(), rays, cones)
}

/// Smooth complete 2-fans with at most `max_rays` rays obtained from the
/// projective plane and from `P^1 x P^1` by repeated blow-ups at
/// two-dimensional cones. Fans with identical ray sets are listed once.
pub fn surface_corpus(max_rays: usize) -> Vec<Fan> {
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut level = vec![projective_space(2), p1_x_p1()];
    let mut out = Vec::new();
    while !level.is_empty() {
        let mut next = Vec::new();
        for fan in level {
            let mut key: Vec<Vec<i64>> = fan.rays().iter().map(|r| r.coords().to_vec()).collect();
            key.sort();
            if !seen.insert(key) {
                continue;
            }
            if fan.ray_count() < max_rays {
                for c in fan.max_cones() {
                    next.push(blow_up(&fan, c).expect("2-cones can be blown up"));
                }
            }
            out.push(fan);
        }
        level = next;
    }
    out
}

/// Fans reachable by name from the command line and the demo page.
pub fn by_name(name: &str) -> Option<Fan> {
    let fan = match name {
        "circle" | "p1" => projective_space(1),
        "rp2" | "p2" => projective_space(2),
        "rp3" | "p3" => projective_space(3),
        "p1xp1" | "torus" => p1_x_p1(),
        "f1" | "klein" => hirzebruch(1),
        "f2" => hirzebruch(2),
        "rp2xrp2" => product(&projective_space(2), &projective_space(2)),
        "orthant3" => orthant(3),
        "orthant3-star" => orthant_star_subdivision(),
        "disconnected" => disconnected_example(),
        "connected-non-basis" => connected_non_basis_example(),
        _ => return None,
    };
    Some(fan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_fans_pass_full_validation() {
        for name in [
            "circle",
            "rp2",
            "rp3",
            "p1xp1",
            "f1",
            "f2",
            "rp2xrp2",
            "orthant3",
            "orthant3-star",
            "disconnected",
            "connected-non-basis",
        ] {
            let fan = by_name(name).unwrap();
            let doc = fan.to_document();
            assert!(Fan::from_document(doc).is_ok(), "{name}");
        }
        assert!(Fan::from_document(even_pairing_example().to_document()).is_ok());
    }

    #[test]
    fn surface_corpus_is_smooth_and_complete() {
        let corpus = surface_corpus(6);
        assert!(corpus.iter().any(|f| f.ray_count() == 6));
        for f in &corpus {
            assert!(f.is_smooth());
            assert!(f.is_complete());
            assert!(Fan::from_document(f.to_document()).is_ok());
        }
    }

    #[test]
    fn blow_up_of_plane_is_f1() {
        let f = blow_up(&projective_space(2), &Cone::new(vec![0, 1])).unwrap();
        assert_eq!(f.ray_count(), 4);
        assert_eq!(f.ray(3).coords(), &[1, 1]);
        assert!(f.is_smooth() && f.is_complete());
    }
}
