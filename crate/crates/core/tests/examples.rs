//! Worked examples with hand-derived expected values.

use std::sync::Arc;

use etale::functors::{
    check_triangle_left, check_triangle_right, check_unit_naturality, counit, gu_on_hom, restricted_action,
    tg_on_morphism, universal_groupoid,
};
use etale::groupoid::{
    couples_equivalent, open_bisections, pullback, sa_on_couple, CoupleMorphism, GroupoidData, GroupoidHom,
    TopGroupoid,
};
use etale::json::{parse_document, Document};
use etale::laws::catalog;
use etale::semigroup::{
    characters, compose_action_morphisms, enumerate_homs, idempotent_subsemigroup, ox_morphism, sp_hom,
    spectral_action, Action, ActionMorphism, InverseSemigroup, SemigroupHom,
};
use etale::star_algebra::{cstar_on_couple, sigma_phi, sigma_theta, Matrix, Scalar};
use etale::topology::{compose, one_point_compactification, partial_homeos, FiniteSpace, PartialMap};
use etale::{Error, PointSet};

fn set(v: &[usize]) -> PointSet {
    v.iter().copied().collect()
}

fn z2() -> Arc<InverseSemigroup> {
    Arc::new(InverseSemigroup::cyclic_group(2))
}

fn e2() -> Arc<InverseSemigroup> {
    Arc::new(InverseSemigroup::chain(2))
}

fn gz2() -> Arc<TopGroupoid> {
    Arc::new(TopGroupoid::from_group(&InverseSemigroup::cyclic_group(2)).unwrap())
}

fn pair2() -> Arc<TopGroupoid> {
    Arc::new(TopGroupoid::pair(2))
}

/// PAIR2 → GZ2 sending both units to the unit and both cross arrows to `a`.
fn collapse() -> GroupoidHom {
    GroupoidHom::new(pair2(), gz2(), vec![0, 0, 1, 1]).unwrap()
}

fn swap_action() -> Arc<Action> {
    catalog().action("SWAP").unwrap()
}

fn hom(s: &Arc<InverseSemigroup>, t: &Arc<InverseSemigroup>, map: &[usize]) -> SemigroupHom {
    SemigroupHom::new(s.clone(), t.clone(), map.to_vec()).unwrap()
}

fn column(m: &Matrix, j: usize) -> Vec<i64> {
    m.column(j)
        .iter()
        .map(|s| {
            assert!(s.im == Scalar::zero().im && s.re.is_integer());
            s.re.to_integer().try_into().unwrap()
        })
        .collect()
}

#[test]
fn empty_map_composes_to_empty() {
    let x = Arc::new(FiniteSpace::discrete(2));
    let f = PartialMap::empty(x.clone(), x.clone());
    let g = PartialMap::from_pairs(x.clone(), x.clone(), &[(0, 1), (1, 0)]).unwrap();
    assert!(compose(&g, &f).unwrap().domain().is_empty());
}

#[test]
fn every_subset_of_a_small_space_is_compact() {
    for x in [FiniteSpace::discrete(3), FiniteSpace::sierpinski(), FiniteSpace::indiscrete(3), FiniteSpace::discrete(4)] {
        let opens = x.opens().unwrap();
        let n = x.len();
        for kmask in 0u32..1 << n {
            let k: PointSet = (0..n).filter(|&i| kmask >> i & 1 == 1).collect();
            assert!(x.is_compact(&k));
            for fam in 0u64..1 << opens.len() {
                let cover: Vec<PointSet> =
                    (0..opens.len()).filter(|&i| fam >> i & 1 == 1).map(|i| opens[i].clone()).collect();
                let union = cover.iter().fold(PointSet::new(), |a, u| a.union(u));
                if k.is_subset(&union) {
                    let sub = x.finite_subcover(&k, &cover).expect("finite subcover");
                    let u = sub.iter().fold(PointSet::new(), |a, &i| a.union(&cover[i]));
                    assert!(k.is_subset(&u));
                }
            }
        }
    }
}

#[test]
fn maps_between_finite_spaces_are_proper() {
    let x = Arc::new(FiniteSpace::discrete(2));
    assert!(PartialMap::identity(x.clone()).is_proper());
    assert!(PartialMap::empty(x.clone(), x.clone()).is_proper());
    let s = Arc::new(FiniteSpace::sierpinski());
    for f in partial_homeos(&s).unwrap() {
        assert!(f.is_proper());
    }
}

#[test]
fn hausdorff_examples() {
    assert!(FiniteSpace::discrete(2).is_hausdorff());
    assert!(FiniteSpace::discrete(1).is_hausdorff());
    assert!(!FiniteSpace::sierpinski().is_hausdorff());
}

#[test]
fn one_point_compactifications() {
    let c = one_point_compactification(&FiniteSpace::discrete(0)).unwrap();
    assert_eq!(c.space.len(), 1);
    let c = one_point_compactification(&FiniteSpace::discrete(2)).unwrap();
    assert_eq!(*c.space, FiniteSpace::discrete(3));
    assert_eq!(c.infinity, 2);
}

#[test]
fn partial_homeomorphism_counts() {
    let count = |x: FiniteSpace| partial_homeos(&Arc::new(x)).unwrap().len();
    assert_eq!(count(FiniteSpace::discrete(1)), 2);
    assert_eq!(count(FiniteSpace::discrete(2)), 7);
    assert_eq!(count(FiniteSpace::sierpinski()), 3);
}

#[test]
fn semigroup_validation_examples() {
    let z = InverseSemigroup::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!((0..2).map(|a| z.star(a)).collect::<Vec<_>>(), vec![0, 1]);
    let e = InverseSemigroup::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
    assert_eq!((0..2).map(|a| e.star(a)).collect::<Vec<_>>(), vec![0, 1]);
    let left_zero = InverseSemigroup::from_rows(&[vec![0, 0], vec![1, 1]]);
    assert!(matches!(left_zero, Err(Error::NoUniqueInverse { count: 2, .. })));
}

#[test]
fn characters_of_e2() {
    let c = characters(&InverseSemigroup::chain(2));
    let mut supports: Vec<Vec<usize>> = c.chars.iter().map(PointSet::to_vec).collect();
    supports.sort();
    assert_eq!(supports, vec![vec![0], vec![0, 1]]);
}

#[test]
fn collapse_e2_to_z2_pulls_back_to_the_full_filter() {
    let m = sp_hom(&hom(&e2(), &z2(), &[0, 0])).unwrap();
    let cs = characters(&e2());
    let full = cs.position(&set(&[0, 1])).unwrap();
    assert_eq!(m.xi().values(), &[Some(full)]);
}

#[test]
fn idempotent_inclusion_into_i2_is_bijective_on_characters() {
    let i2 = catalog().semigroup("I2").unwrap();
    let (_, inc) = idempotent_subsemigroup(&i2).unwrap();
    let m = sp_hom(&inc).unwrap();
    assert_eq!(m.xi().domain().len(), 4);
    assert!(m.xi().is_total() && m.xi().is_injective());
}

#[test]
fn ox_of_empty_map_sends_everything_to_empty() {
    let x = Arc::new(FiniteSpace::discrete(2));
    let y = Arc::new(FiniteSpace::discrete(3));
    let m = ox_morphism(&PartialMap::empty(y, x)).unwrap();
    let opens_y = m.target().semigroup().clone();
    let empty = (0..opens_y.order()).find(|&u| m.target().domain(u).is_empty()).unwrap();
    assert!(m.theta().map().iter().all(|&u| u == empty));
}

#[test]
fn ox_morphisms_compose_like_their_maps() {
    let spaces: Vec<Arc<FiniteSpace>> = (1..=3).map(|n| Arc::new(FiniteSpace::discrete(n))).collect();
    let all_maps = |y: &Arc<FiniteSpace>, x: &Arc<FiniteSpace>| -> Vec<PartialMap> {
        let (ny, nx) = (y.len(), x.len());
        (0..(nx + 1).pow(ny as u32))
            .map(|mut code| {
                let values = (0..ny)
                    .map(|_| {
                        let v = code % (nx + 1);
                        code /= nx + 1;
                        (v < nx).then_some(v)
                    })
                    .collect();
                PartialMap::new(y.clone(), x.clone(), values).unwrap()
            })
            .collect()
    };
    let mut checked = 0;
    for x in &spaces {
        for y in &spaces {
            for z in &spaces {
                for xi1 in all_maps(y, x) {
                    let m1 = ox_morphism(&xi1).unwrap();
                    for xi2 in all_maps(z, y) {
                        let m2 = ox_morphism(&xi2).unwrap();
                        let direct = ox_morphism(&compose(&xi1, &xi2).unwrap()).unwrap();
                        assert_eq!(compose_action_morphisms(&m2, &m1).unwrap(), direct);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn groupoid_examples_are_etale() {
    assert!(gz2().is_etale());
    assert!(TopGroupoid::from_space(FiniteSpace::sierpinski()).is_etale());
    let p = pair2();
    assert!(p.is_etale());
    assert_eq!((p.len(), p.units().len()), (4, 2));
}

#[test]
fn collapse_is_fibrewise_bijective_with_non_injective_unit_part() {
    let c = collapse();
    assert!(c.is_fibrewise_bijective());
    assert!(!c.unit_part().is_injective());
    let id = GroupoidHom::identity(pair2());
    assert!(id.is_fibrewise_bijective());
    let u = id.unit_part();
    assert!(u.is_injective() && u.is_open_map() && u.is_proper());
}

#[test]
fn unit_inclusion_into_pair2_is_not_fibrewise_bijective() {
    let one = Arc::new(TopGroupoid::from_space(FiniteSpace::discrete(1)));
    let inc = GroupoidHom::new(one, pair2(), vec![0]).unwrap();
    assert!(!inc.is_fibrewise_bijective());
}

#[test]
fn identity_and_swap_couples_on_pair2_differ() {
    let p = pair2();
    let id = CoupleMorphism::identity(p.clone()).unwrap();
    let swap = GroupoidHom::new(p.clone(), p.clone(), vec![1, 0, 3, 2]).unwrap();
    let c = CoupleMorphism::new(GroupoidHom::identity(p.clone()), swap).unwrap();
    assert!(couples_equivalent(&id, &id).unwrap());
    assert!(!couples_equivalent(&id, &c).unwrap());
}

#[test]
fn pullback_of_collapse_with_itself() {
    let c = collapse();
    let pb = pullback(&c, &c).unwrap();
    assert_eq!(pb.k.len(), 8);
    let units: Vec<(usize, usize)> = pb.k.units().iter().map(|&u| pb.pairs[u]).collect();
    assert_eq!(units, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
}

#[test]
fn pullback_with_empty_groupoid_is_empty() {
    let empty = Arc::new(
        TopGroupoid::new(GroupoidData {
            arrows: 0,
            units: vec![],
            d: vec![],
            r: vec![],
            inv: vec![],
            mult: vec![],
            topology: FiniteSpace::discrete(0),
        })
        .unwrap(),
    );
    let into = GroupoidHom::new(empty, gz2(), vec![]).unwrap();
    let pb = pullback(&collapse(), &into).unwrap();
    assert!(pb.k.is_empty());
}

#[test]
fn slice_action_of_collapse_couple() {
    let c = CoupleMorphism::new(collapse(), GroupoidHom::identity(pair2())).unwrap();
    let m = sa_on_couple(&c).unwrap();
    let bg = open_bisections(&gz2()).unwrap();
    let bh = open_bisections(&pair2()).unwrap();
    let a = bg.position(&set(&[1])).unwrap();
    assert_eq!(bh.sets[m.theta().apply(a)], set(&[2, 3]));
}

#[test]
fn identity_couple_gives_identity_action_morphism() {
    let g = pair2();
    let m = sa_on_couple(&CoupleMorphism::identity(g.clone()).unwrap()).unwrap();
    assert_eq!(m, ActionMorphism::identity(m.source().clone()));
}

#[test]
fn restricted_action_of_identity_is_the_action() {
    let a = swap_action();
    let ra = restricted_action(&ActionMorphism::identity(a.clone())).unwrap();
    assert_eq!(ra.action, *a);
    assert_eq!(ra.points, vec![0, 1]);
}

#[test]
fn restricted_spectral_action_along_idempotent_inclusion() {
    let i2 = catalog().semigroup("I2").unwrap();
    let e = e2();
    let id_i2 = (0..i2.order()).find(|&u| (0..i2.order()).all(|s| i2.mul(u, s) == s)).unwrap();
    let theta = enumerate_homs(&e, &i2)
        .unwrap()
        .into_iter()
        .find(|h| h.apply(0) == id_i2 && h.apply(1) != id_i2)
        .unwrap();
    let m = sp_hom(&theta).unwrap();
    let ra = restricted_action(&m).unwrap();
    let beta = spectral_action(&i2).unwrap();
    for s in 0..e.order() {
        let expected: PointSet = ra
            .points
            .iter()
            .enumerate()
            .filter(|&(_, &y)| beta.domain(theta.apply(e.mul(e.star(s), s))).contains(y))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(ra.action.domain(s), expected);
    }
}

#[test]
fn swap_on_swap_action_gives_pair2_automorphism() {
    let a = swap_action();
    let x = a.space().clone();
    let xi = PartialMap::from_pairs(x.clone(), x, &[(0, 1), (1, 0)]).unwrap();
    let m = ActionMorphism::new(a.clone(), a.clone(), SemigroupHom::identity(a.semigroup().clone()), xi).unwrap();
    let c = tg_on_morphism(&m).unwrap();
    assert_eq!(c.source().len(), 4);
    assert!(c.is_isomorphism());
    assert_ne!(c, CoupleMorphism::identity(c.source().clone()).unwrap());
    assert!(check_unit_naturality(&m).unwrap().is_none());
    let id = tg_on_morphism(&ActionMorphism::identity(a)).unwrap();
    assert_eq!(id, CoupleMorphism::identity(id.source().clone()).unwrap());
}

#[test]
fn universal_groupoid_along_e2_into_i2() {
    let i2 = catalog().semigroup("I2").unwrap();
    let theta = enumerate_homs(&e2(), &i2).unwrap().into_iter().last().unwrap();
    let c = gu_on_hom(&theta).unwrap();
    assert_eq!(c.source().len(), 2);
    assert_eq!(c.source().units().len(), 2);
    assert_eq!(c.target().len(), 7);
    assert_eq!(universal_groupoid(&i2).unwrap().groupoid.len(), i2.order());
}

#[test]
fn triangles_on_small_examples() {
    assert!(check_triangle_left(&swap_action()).unwrap().is_none());
    assert!(check_triangle_right(&pair2()).unwrap().is_none());
    assert!(check_triangle_left(&catalog().action("TRIVIAL_Z2").unwrap()).unwrap().is_none());
    let point = Arc::new(TopGroupoid::from_space(FiniteSpace::discrete(1)));
    assert!(check_triangle_right(&point).unwrap().is_none());
}

#[test]
fn sigma_theta_examples() {
    assert_eq!(sigma_theta(&SemigroupHom::identity(z2())).unwrap().matrix, Matrix::identity(2));
    let collapse = sigma_theta(&hom(&e2(), &z2(), &[0, 0])).unwrap().matrix;
    assert_eq!((column(&collapse, 0), column(&collapse, 1)), (vec![1, 0], vec![1, 0]));
    let constant = sigma_theta(&hom(&z2(), &z2(), &[0, 0])).unwrap().matrix;
    assert_eq!(column(&constant, 1), vec![1, 0]);
}

#[test]
fn sigma_phi_of_collapse() {
    let m = sigma_phi(&collapse()).unwrap().matrix;
    assert_eq!(column(&m, 1), vec![0, 0, 1, 1]);
    assert_eq!(column(&m, 0), vec![1, 1, 0, 0]);
    assert_eq!(sigma_phi(&GroupoidHom::identity(pair2())).unwrap().matrix, Matrix::identity(4));
}

#[test]
fn cstar_examples() {
    let p = pair2();
    assert_eq!(cstar_on_couple(&CoupleMorphism::identity(p.clone()).unwrap()).unwrap().matrix, Matrix::identity(4));
    assert!(cstar_on_couple(&counit(&p).unwrap()).unwrap().is_isomorphism());
}

#[test]
fn catalog_documents_round_trip() {
    for (name, item) in catalog().entries() {
        let v = item.to_document().to_json().unwrap();
        let back = parse_document(&v, None).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(back.to_json().unwrap().to_string(), v.to_string(), "{name}");
        assert_eq!(back.kind(), item.kind());
        if let Document::Semigroup(s) = back {
            assert_eq!(s.order(), catalog().semigroup(name).unwrap().order());
        }
    }
}
