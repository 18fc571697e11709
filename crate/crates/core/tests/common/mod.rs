#![allow(dead_code)]

use torfan::catalog::{self, blow_up, product, projective_space};
use torfan::{topology, Cone, Fan};

pub struct Named {
    pub name: String,
    pub fan: Fan,
}

fn named(name: &str, fan: Fan) -> Named {
    Named {
        name: name.to_string(),
        fan,
    }
}

/// `{<e1, e2>, <-2e1 + e2>}` in `Z^2`.
pub fn plane_with_isolated_ray() -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-2, 1]],
        vec![vec![0, 1], vec![2]],
    )
    .unwrap()
}

/// Products of real projective spaces, each factor of dimension at least 2.
pub fn projective_products() -> Vec<Named> {
    let p2 = projective_space(2);
    let p3 = projective_space(3);
    vec![
        named("P2", p2.clone()),
        named("P3", p3.clone()),
        named("P4", projective_space(4)),
        named("P2xP2", product(&p2, &p2)),
        named("P2xP3", product(&p2, &p3)),
        named("P2xP2xP2", product(&product(&p2, &p2), &p2)),
    ]
}

/// Hand-picked fans in dimensions 1 to 4, complete and not, connected and
/// not.
pub fn small_corpus() -> Vec<Named> {
    let p1 = projective_space(1);
    let p2 = projective_space(2);
    let p3 = projective_space(3);
    let torus = catalog::p1_x_p1();
    let mut out = vec![
        named("P1", p1.clone()),
        named("F0", torus.clone()),
        named("F1", catalog::hirzebruch(1)),
        named("F2", catalog::hirzebruch(2)),
        named("F3", catalog::hirzebruch(3)),
        named("P1xP2", product(&p1, &p2)),
        named("P1xP1xP1", product(&torus, &p1)),
        named("P1xF1", product(&p1, &catalog::hirzebruch(1))),
        named(
            "P3 blown up along a line",
            blow_up(&p3, &Cone::new(vec![0, 1])).unwrap(),
        ),
        named(
            "P3 blown up at a point",
            blow_up(&p3, &Cone::new(vec![0, 1, 2])).unwrap(),
        ),
        named("orthant2", catalog::orthant(2)),
        named("orthant3", catalog::orthant(3)),
        named("orthant3 star", catalog::orthant_star_subdivision()),
        named("disconnected", catalog::disconnected_example()),
        named("connected non-basis", catalog::connected_non_basis_example()),
        named("even pairing", catalog::even_pairing_example()),
        named("plane with isolated ray", plane_with_isolated_ray()),
        named("arrangement fan of P2", topology::arrangement_fan(&p2)),
        named(
            "arrangement fan of F1",
            topology::arrangement_fan(&catalog::hirzebruch(1)),
        ),
    ];
    out.extend(projective_products());
    out
}

/// Complete smooth surfaces from iterated blow-ups.
pub fn surfaces(max_rays: usize) -> Vec<Named> {
    catalog::surface_corpus(max_rays)
        .into_iter()
        .enumerate()
        .map(|(i, f)| named(&format!("surface #{i} (d={})", f.ray_count()), f))
        .collect()
}

/// Everything: the hand-picked fans, surfaces with up to 7 rays, and the
/// barycentric refinements of the small complete ones.
pub fn corpus() -> Vec<Named> {
    let mut out = small_corpus();
    out.extend(surfaces(7));
    let refined: Vec<Named> = out
        .iter()
        .filter(|n| n.fan.is_complete() && n.fan.dim() <= 3 && n.fan.ray_count() <= 6)
        .map(|n| named(&format!("refined {}", n.name), n.fan.barycentric_refine()))
        .collect();
    out.extend(refined);
    out
}

/// Subsets of `0..d` of the given size, in lexicographic order.
pub fn subsets(d: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(i + 1, d, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, size, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for c in 0..n {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] as i128 * det(&minor);
    }
    total
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all k x k minors of `m`.
pub fn minor_gcd(m: &[Vec<i64>], k: usize) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut g = 0;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i64>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                .collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

/// Flag-like means: every clique of the graph of 2-cones spans a cone.
pub fn clique_complex_oracle(fan: &Fan) -> bool {
    let d = fan.ray_count();
    (1..=d).all(|size| {
        subsets(d, size).into_iter().all(|s| {
            let clique = s
                .iter()
                .enumerate()
                .all(|(p, &a)| s[p + 1..].iter().all(|&b| fan.spans_cone(&[a, b])));
            !clique || fan.spans_cone(&s)
        })
    })
}
