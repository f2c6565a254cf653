//! Structural facts about pull-backs, fibrewise bijective maps, and the
//! algebra maps, checked over the catalog pool.

use std::sync::Arc;

use etale::functors::{transformation_groupoid, universal_groupoid};
use etale::groupoid::{open_bisections, pullback, CoupleMorphism, GroupoidHom, TopGroupoid};
use etale::laws::{catalog, enumerate_inverse_semigroups, Pool};
use etale::semigroup::spectral_action;
use etale::star_algebra::{cstar_on_couple, pi_psi, sigma_phi, Scalar};
use etale::topology::FiniteSpace;
use etale::PointSet;

fn pool() -> Pool {
    Pool::from_catalog(&catalog(), 0).unwrap()
}

/// Composable couple pairs `(c1, c2)`, `c1: G → H`, `c2: H → L`.
fn composable(pool: &Pool) -> Vec<(&CoupleMorphism, &CoupleMorphism)> {
    let mut out = Vec::new();
    for (i, c1) in pool.couples.iter().enumerate() {
        for (j, c2) in pool.couples.iter().enumerate() {
            if pool.couple_ends[i].1 == pool.couple_ends[j].0 {
                out.push((c1, c2));
            }
        }
    }
    out
}

fn subsets(n: usize) -> impl Iterator<Item = PointSet> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

#[test]
fn pullback_preimage_of_image() {
    let pool = pool();
    let mut checked = 0;
    for (c1, c2) in composable(&pool).into_iter().step_by(7) {
        let (psi1, phi2) = (c1.psi(), c2.phi());
        let pb = pullback(psi1, phi2).unwrap();
        for u in subsets(c1.k().len()) {
            let lhs = phi2.preimage(&psi1.image(&u));
            let rhs = pb.psi_tilde.image(&pb.phi_tilde.preimage(&u));
            assert_eq!(lhs, rhs);
        }
        checked += 1;
    }
    assert!(checked >= 100, "{checked}");
}

/// `x ↦ the unique a ∈ dom with f(a) = target(x)`, or `None`; panics if
/// more than one `a` qualifies.
fn solve(dom: &PointSet, f: &GroupoidHom, want: usize) -> Option<usize> {
    let hits: Vec<usize> = dom.iter().filter(|&a| f.apply(a) == want).collect();
    assert!(hits.len() <= 1, "not injective on the bisection");
    hits.first().copied()
}

#[test]
fn pullback_bisection_transport() {
    let pool = pool();
    let mut checked = 0;
    for (c1, c2) in composable(&pool).into_iter().step_by(7) {
        let (psi1, phi2) = (c1.psi(), c2.phi());
        let pb = pullback(psi1, phi2).unwrap();
        let k1 = c1.k();
        for u in open_bisections(k1).unwrap().sets {
            let pre = pb.phi_tilde.preimage(&u);
            for x in 0..c2.k().len() {
                let lhs = solve(&u, psi1, phi2.apply(x));
                let rhs = solve(&pre, &pb.psi_tilde, x).map(|k| pb.phi_tilde.apply(k));
                assert_eq!(lhs, rhs);
            }
        }
        checked += 1;
    }
    assert!(checked >= 100, "{checked}");
}

#[test]
fn interchange_of_sigma_and_pi() {
    let pool = pool();
    let mut checked = 0;
    for (c1, c2) in composable(&pool) {
        if !c1.is_proper() || !c2.is_proper() || checked >= 150 {
            continue;
        }
        let (psi1, phi2) = (c1.psi(), c2.phi());
        let pb = pullback(psi1, phi2).unwrap();
        let lhs = sigma_phi(&pb.phi_tilde).unwrap().then(&pi_psi(&pb.psi_tilde).unwrap()).unwrap();
        let rhs = pi_psi(psi1).unwrap().then(&sigma_phi(phi2).unwrap()).unwrap();
        assert_eq!(lhs.matrix, rhs.matrix);
        checked += 1;
    }
    assert!(checked >= 100, "{checked}");
}

fn indicator(n: usize, set: &PointSet) -> Vec<Scalar> {
    (0..n).map(|i| if set.contains(i) { Scalar::one() } else { Scalar::zero() }).collect()
}

#[test]
fn cstar_sends_bisection_indicators_to_indicators() {
    let pool = pool();
    let mut checked = 0;
    for c in pool.couples.iter().filter(|c| c.is_proper()) {
        let m = cstar_on_couple(c).unwrap().matrix;
        let (g, h) = (c.source(), c.target());
        for u in open_bisections(g).unwrap().sets {
            let image = c.psi().image(&c.phi().preimage(&u));
            assert_eq!(m.apply(&indicator(g.len(), &u)), indicator(h.len(), &image));
            checked += 1;
        }
    }
    assert!(checked >= 500, "{checked}");
}

#[test]
fn fibrewise_bijective_preimages_respect_structure() {
    let pool = pool();
    let mut checked = 0;
    for phi in pool.couples.iter().map(CoupleMorphism::phi) {
        assert!(phi.is_fibrewise_bijective());
        let (k, g) = (phi.source(), phi.target());
        assert_eq!(phi.preimage(&g.unit_set()), k.unit_set());
        let bis = open_bisections(g).unwrap().sets;
        for u in &bis {
            let pu = phi.preimage(u);
            assert!(k.is_bisection(&pu));
            assert!(k.topology().is_open(&pu));
            assert_eq!(phi.preimage(&g.d_set(u)), k.d_set(&pu));
            for v in &bis {
                assert_eq!(phi.preimage(&g.product_set(u, v)), k.product_set(&pu, &phi.preimage(v)));
            }
        }
        checked += 1;
    }
    assert!(checked >= 100, "{checked}");
}

#[test]
fn unit_spaces_are_open() {
    let pool = pool();
    let ks = pool.couples.iter().map(|c| c.k().clone());
    for g in pool.groupoids.iter().cloned().chain(ks) {
        assert!(g.topology().is_open(&g.unit_set()));
        assert!(g.is_etale());
    }
}

#[test]
fn transformation_groupoids_are_etale() {
    let mut groupoids: Vec<Arc<TopGroupoid>> = Vec::new();
    for (_, a) in catalog().actions() {
        groupoids.push(transformation_groupoid(a).unwrap().groupoid);
    }
    for n in 1..=4 {
        for s in enumerate_inverse_semigroups(n).unwrap() {
            let s = Arc::new(s);
            groupoids.push(transformation_groupoid(&spectral_action(&s).unwrap()).unwrap().groupoid);
            groupoids.push(universal_groupoid(&s).unwrap().groupoid);
        }
    }
    assert!(groupoids.len() > 40);
    for g in groupoids {
        assert!(g.is_etale());
        assert!(g.topology().is_open(&g.unit_set()));
    }
}

#[test]
fn finite_hausdorff_spaces_are_discrete() {
    let mut seen = 0;
    let mut hausdorff = 0;
    for n in 1..=3usize {
        // Every assignment of a neighbourhood containing the point itself.
        let choices: Vec<Vec<PointSet>> =
            (0..n).map(|x| subsets(n).filter(|s| s.contains(x)).collect()).collect();
        let total: usize = choices.iter().map(Vec::len).product();
        for mut code in 0..total {
            let nbhd: Vec<PointSet> = choices
                .iter()
                .map(|c| {
                    let s = c[code % c.len()].clone();
                    code /= c.len();
                    s
                })
                .collect();
            if let Ok(x) = FiniteSpace::from_neighbourhoods(nbhd) {
                seen += 1;
                if x.is_hausdorff() {
                    hausdorff += 1;
                    assert!(x.is_discrete());
                }
            }
        }
    }
    // Topologies on 1, 2, 3 labelled points: 1 + 4 + 29.
    assert_eq!(seen, 34);
    assert_eq!(hausdorff, 3);
}

#[test]
fn character_spaces_are_discrete() {
    for n in 1..=4 {
        for s in enumerate_inverse_semigroups(n).unwrap() {
            assert!(etale::semigroup::characters(&s).space.is_discrete());
        }
    }
    for (_, s) in catalog().semigroups() {
        assert!(etale::semigroup::characters(s).space.is_discrete());
    }
}

#[test]
fn catalog_groupoids_have_discrete_arrow_spaces() {
    for (name, g) in catalog().groupoids() {
        assert!(g.unit_space().is_hausdorff(), "{name}");
        assert!(g.topology().is_discrete(), "{name}");
    }
}
