//! The transformation groupoid functor `TG: ISA → EG`, the universal groupoid
//! `Gu = TG ∘ SP`, and the unit and counit of the adjunction `TG ⊣ SA`.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::json;

use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::fault::Faults;
use crate::groupoid::{
    compose_couples_with, open_bisections, sa_on_couple_with, slice_action_with, CoupleMorphism,
    GroupoidData, GroupoidHom, TopGroupoid,
};
use crate::guards::Guards;
use crate::json::{couple_summary, morphism_summary};
use crate::laws::Counterexample;
use crate::semigroup::{
    compose_action_morphisms_with, sp_hom_with, spectral_action_with, Action, ActionMorphism,
    InverseSemigroup, SemigroupHom,
};
use crate::topology::{position_map, FiniteSpace, PartialMap};

/// `S ⋉_α X` together with the bookkeeping that names its arrows.
///
/// Arrow ids follow the lexicographic order of class representatives, each
/// representative being the least `(s, x)` in its class.
#[derive(Debug, Clone)]
pub struct TransformationGroupoid {
    pub groupoid: Arc<TopGroupoid>,
    pub action: Arc<Action>,
    /// All pairs `(s, x)` in each class, least first.
    pub members: Vec<Vec<(usize, usize)>>,
    class_index: HashMap<(usize, usize), usize>,
}

impl TransformationGroupoid {
    pub fn representative(&self, arrow: usize) -> (usize, usize) {
        self.members[arrow][0]
    }

    /// `[s, x]`, if `x ∈ D_s`.
    pub fn class_of(&self, s: usize, x: usize) -> Option<usize> {
        self.class_index.get(&(s, x)).copied()
    }

    /// `[s, U] = {[s, x] : x ∈ U}` for `U ⊆ D_s`.
    pub fn slice(&self, s: usize, u: &PointSet) -> Option<PointSet> {
        u.iter().map(|x| self.class_of(s, x)).collect()
    }

    /// The point `x` of the unit `[e, x]`.
    pub fn unit_point(&self, arrow: usize) -> Option<usize> {
        self.groupoid.is_unit(arrow).then(|| self.representative(arrow).1)
    }
}

pub fn transformation_groupoid(a: &Action) -> Result<TransformationGroupoid> {
    transformation_groupoid_with(a, &Faults::NONE)
}

pub(crate) fn transformation_groupoid_with(a: &Action, faults: &Faults) -> Result<TransformationGroupoid> {
    let s = a.semigroup();
    let x_len = a.space().len();
    let e = s.idempotents();
    let domains: Vec<PointSet> = (0..s.order()).map(|t| a.domain(t)).collect();
    // (s,x) ~ (t,x) iff x ∈ D_e and se = te for some idempotent e.
    let related = |p: usize, q: usize, x: usize| {
        e.iter().any(|&f| {
            (faults.classes_ignore_domain || domains[f].contains(x)) && s.mul(p, f) == s.mul(q, f)
        })
    };
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for x in 0..x_len {
        let mut here: Vec<Vec<(usize, usize)>> = Vec::new();
        for t in (0..s.order()).filter(|&t| domains[t].contains(x)) {
            match here.iter_mut().find(|c| related(c[0].0, t, x)) {
                Some(c) => c.push((t, x)),
                None => here.push(vec![(t, x)]),
            }
        }
        classes.extend(here);
    }
    classes.sort_by_key(|c| c[0]);
    let class_index: HashMap<(usize, usize), usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&p| (p, i)))
        .collect();
    let n = classes.len();
    let cls = |p: (usize, usize)| {
        class_index
            .get(&p)
            .copied()
            .ok_or_else(|| Error::InvalidAction(format!("pair {p:?} is not in the groupoid")))
    };
    // Every structure map is evaluated on every member, so a well-defined
    // answer is checked rather than assumed.
    let well_defined = |what: &str, vals: Vec<usize>| -> Result<usize> {
        match vals.split_first() {
            Some((&v, rest)) if rest.iter().all(|&w| w == v) => Ok(v),
            _ => Err(Error::InvalidAction(format!("{what} is not well defined on classes"))),
        }
    };
    let (mut d, mut r, mut inv) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    let mut units = PointSet::new();
    for c in &classes {
        let mut dv = Vec::new();
        let mut rv = Vec::new();
        let mut iv = Vec::new();
        for &(t, x) in c {
            let ts = s.star(t);
            let y = a.apply(t, x).expect("x ∈ D_t");
            dv.push(cls((s.mul(ts, t), x))?);
            rv.push(cls((s.mul(t, ts), y))?);
            iv.push(cls((ts, y))?);
        }
        d.push(well_defined("d", dv)?);
        r.push(well_defined("r", rv)?);
        inv.push(well_defined("inverse", iv)?);
    }
    for &f in e {
        for x in domains[f].iter() {
            units.insert(cls((f, x))?);
        }
    }
    let mut mult = Vec::new();
    for (ia, ca) in classes.iter().enumerate() {
        for (ib, cb) in classes.iter().enumerate() {
            if d[ia] != r[ib] {
                continue;
            }
            let mut vals = Vec::new();
            for &(t, y) in ca {
                for &(u, x) in cb {
                    if a.apply(u, x) == Some(y) {
                        vals.push(cls((s.mul(t, u), x))?);
                    }
                }
            }
            mult.push((ia, ib, well_defined("multiplication", vals)?));
        }
    }
    // Topology generated by [t, U_x] for x ∈ D_t; the minimal neighbourhood of
    // an arrow is the intersection of the generators through its members.
    let space = a.space();
    let mut nbhd = vec![PointSet::full(n); n];
    for (i, c) in classes.iter().enumerate() {
        for &(t, x) in c {
            let g: PointSet = space.minimal_open(x).iter().map(|y| cls((t, y))).collect::<Result<_>>()?;
            nbhd[i] = nbhd[i].intersection(&g);
        }
    }
    let groupoid = TopGroupoid::new(GroupoidData {
        arrows: n,
        units: units.to_vec(),
        d,
        r,
        inv,
        mult,
        topology: FiniteSpace::from_neighbourhoods(nbhd)?,
    })?;
    groupoid.check_etale()?;
    let tg = TransformationGroupoid {
        groupoid: Arc::new(groupoid),
        action: Arc::new(a.clone()),
        members: classes,
        class_index,
    };
    let xi = unit_to_space(&tg)?;
    if !(xi.is_total() && xi.range() == space.points() && xi.is_partial_homeomorphism()) {
        return Err(Error::InvalidAction("unit space is not homeomorphic to the action space".into()));
    }
    Ok(tg)
}

/// `ξ_α: G^(0) → X`, `[e, x] ↦ x`.
fn unit_to_space(tg: &TransformationGroupoid) -> Result<PartialMap> {
    let g = &tg.groupoid;
    let values = g.units().iter().map(|&u| tg.unit_point(u)).collect();
    PartialMap::new(Arc::new(g.unit_space()), tg.action.space().clone(), values)
}

/// `(S, D_ξ, βθ)` for an action morphism `(θ, ξ): A → B`, with the points of
/// `D_ξ` numbered in increasing order.
#[derive(Debug, Clone)]
pub struct RestrictedAction {
    pub action: Action,
    /// `points[i]` is the point of `Y` numbered `i`.
    pub points: Vec<usize>,
}

pub fn restricted_action(m: &ActionMorphism) -> Result<RestrictedAction> {
    let b = m.target();
    let dom = m.xi().domain();
    let points = dom.to_vec();
    let pos = position_map(&points, b.space().len());
    let space = Arc::new(b.space().subspace(&dom));
    let maps = (0..m.source().semigroup().order())
        .map(|s| {
            let beta = b.map(m.theta().apply(s));
            let values = points
                .iter()
                .map(|&y| match beta.apply(y) {
                    None => Ok(None),
                    Some(z) => pos[z].map(Some).ok_or_else(|| {
                        Error::InvalidAction(format!("β_θ({s}) leaves the domain of ξ"))
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            PartialMap::new(space.clone(), space.clone(), values)
        })
        .collect::<Result<Vec<_>>>()?;
    let action = Action::new(m.source().semigroup().clone(), space, maps)?;
    Ok(RestrictedAction { action, points })
}

/// `TG(θ, ξ) = [φ_ξ, ψ_θ; S ⋉_{βθ} D_ξ]` with `φ_ξ[s,y] = [s, ξ(y)]` and
/// `ψ_θ[s,y] = [θ(s), y]`.
pub fn tg_on_morphism(m: &ActionMorphism) -> Result<CoupleMorphism> {
    tg_on_morphism_with(m, &Faults::NONE)
}

pub(crate) fn tg_on_morphism_with(m: &ActionMorphism, faults: &Faults) -> Result<CoupleMorphism> {
    let ta = transformation_groupoid_with(m.source(), faults)?;
    let tb = transformation_groupoid_with(m.target(), faults)?;
    let ra = restricted_action(m)?;
    let k = transformation_groupoid_with(&ra.action, faults)?;
    let mut phi = Vec::with_capacity(k.members.len());
    let mut psi = Vec::with_capacity(k.members.len());
    for c in &k.members {
        let mut pv = PointSet::new();
        let mut qv = PointSet::new();
        for &(s, p) in c {
            let y = ra.points[p];
            let x = m.xi().apply(y).expect("y ∈ D_ξ");
            pv.insert(ta.class_of(s, x).ok_or_else(|| Error::InvalidCouple("φ_ξ undefined".into()))?);
            qv.insert(tb.class_of(m.theta().apply(s), y).ok_or_else(|| Error::InvalidCouple("ψ_θ undefined".into()))?);
        }
        if pv.len() != 1 || qv.len() != 1 {
            return Err(Error::InvalidCouple("φ_ξ or ψ_θ is not well defined on classes".into()));
        }
        phi.push(pv.iter().next().expect("one value"));
        psi.push(qv.iter().next().expect("one value"));
    }
    let phi = GroupoidHom::new(k.groupoid.clone(), ta.groupoid.clone(), phi)?;
    let psi = GroupoidHom::new(k.groupoid.clone(), tb.groupoid.clone(), psi)?;
    CoupleMorphism::new(phi, psi)
}

/// `Gu(S) = S ⋉_β Ê(S)`.
pub fn universal_groupoid(s: &Arc<InverseSemigroup>) -> Result<TransformationGroupoid> {
    universal_groupoid_with(s, &Faults::NONE)
}

pub(crate) fn universal_groupoid_with(s: &Arc<InverseSemigroup>, faults: &Faults) -> Result<TransformationGroupoid> {
    transformation_groupoid_with(&spectral_action_with(s, faults)?, faults)
}

/// `Gu(θ) = TG(SP(θ))`.
pub fn gu_on_hom(theta: &SemigroupHom) -> Result<CoupleMorphism> {
    gu_on_hom_with(theta, &Faults::NONE)
}

pub(crate) fn gu_on_hom_with(theta: &SemigroupHom, faults: &Faults) -> Result<CoupleMorphism> {
    tg_on_morphism_with(&sp_hom_with(theta, faults)?, faults)
}

/// `η_A = (θ_α, ξ_α): A → SA(TG(A))` with `θ_α(s) = [s, D_s]` and
/// `ξ_α[e, x] = x`.
pub fn unit(a: &Action) -> Result<ActionMorphism> {
    unit_with(a, &Faults::NONE)
}

pub(crate) fn unit_with(a: &Action, faults: &Faults) -> Result<ActionMorphism> {
    let tg = transformation_groupoid_with(a, faults)?;
    let bis = open_bisections(&tg.groupoid)?;
    let sa = Arc::new(slice_action_with(&tg.groupoid, faults)?);
    let map = (0..a.semigroup().order())
        .map(|s| {
            let u = tg.slice(s, &a.domain(s)).expect("[s, D_s] is defined");
            bis.position(&u)
                .ok_or_else(|| Error::InvalidMorphism { condition: "unit".into(), witness: format!("[{s}, D_{s}] is not an open bisection") })
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = SemigroupHom::new(a.semigroup().clone(), sa.semigroup().clone(), map)?;
    let xi = unit_to_space(&tg)?;
    let xi = PartialMap::new(sa.space().clone(), a.space().clone(), xi.values().to_vec())?;
    ActionMorphism::new(Arc::new(a.clone()), sa, theta, xi)
}

/// `ε_G = [id, ω_G; Bis G ⋉ G^(0)]: TG(SA(G)) → G`, where `ω_G[U, u]` is the
/// unique arrow of `U` with domain `u`.
pub fn counit(g: &Arc<TopGroupoid>) -> Result<CoupleMorphism> {
    counit_with(g, &Faults::NONE)
}

pub(crate) fn counit_with(g: &Arc<TopGroupoid>, faults: &Faults) -> Result<CoupleMorphism> {
    let sa = slice_action_with(g, faults)?;
    let bis = open_bisections(g)?;
    let t = transformation_groupoid_with(&sa, faults)?;
    let omega = (0..t.groupoid.len())
        .map(|arrow| {
            let (u, p) = t.representative(arrow);
            let unit = g.units()[p];
            bis.sets[u]
                .iter()
                .find(|&a| if faults.counit_by_range { g.r(a) == unit } else { g.d(a) == unit })
                .ok_or_else(|| Error::InvalidCouple("ω_G undefined".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let omega = GroupoidHom::new(t.groupoid.clone(), g.clone(), omega)?;
    if !omega.is_homeomorphic_isomorphism() {
        return Err(Error::InvalidCouple("ω_G is not a homeomorphic isomorphism".into()));
    }
    CoupleMorphism::new(GroupoidHom::identity(t.groupoid.clone()), omega)
}

fn mismatch(check: &str, object: &str, lhs: serde_json::Value, rhs: serde_json::Value) -> Counterexample {
    Counterexample { check: check.into(), object: json!(object), lhs, rhs }
}

/// `ε_{TG(A)} ∘ TG(η_A) = id_{TG(A)}`.
pub fn check_triangle_left(a: &Action) -> Result<Option<Counterexample>> {
    check_triangle_left_with(a, &Faults::NONE)
}

pub(crate) fn check_triangle_left_with(a: &Action, faults: &Faults) -> Result<Option<Counterexample>> {
    let tg = transformation_groupoid_with(a, faults)?;
    guard_adjunction(tg.groupoid.len())?;
    let lhs = compose_couples_with(
        &counit_with(&tg.groupoid, faults)?,
        &tg_on_morphism_with(&unit_with(a, faults)?, faults)?,
        faults,
    )?;
    let rhs = CoupleMorphism::identity(tg.groupoid.clone())?;
    Ok((lhs != rhs).then(|| mismatch("triangle-left", "action", couple_summary(&lhs), couple_summary(&rhs))))
}

/// `SA(ε_G) ∘ η_{SA(G)} = id_{SA(G)}`.
pub fn check_triangle_right(g: &Arc<TopGroupoid>) -> Result<Option<Counterexample>> {
    check_triangle_right_with(g, &Faults::NONE)
}

pub(crate) fn check_triangle_right_with(g: &Arc<TopGroupoid>, faults: &Faults) -> Result<Option<Counterexample>> {
    guard_adjunction(g.len())?;
    let sa = slice_action_with(g, faults)?;
    let lhs = compose_action_morphisms_with(
        &sa_on_couple_with(&counit_with(g, faults)?, faults)?,
        &unit_with(&sa, faults)?,
        faults,
    )?;
    let rhs = ActionMorphism::identity(Arc::new(sa));
    Ok((lhs != rhs).then(|| mismatch("triangle-right", "groupoid", morphism_summary(&lhs), morphism_summary(&rhs))))
}

/// `SA(TG(m)) ∘ η_A = η_B ∘ m` for `m: A → B`.
pub fn check_unit_naturality(m: &ActionMorphism) -> Result<Option<Counterexample>> {
    check_unit_naturality_with(m, &Faults::NONE)
}

pub(crate) fn check_unit_naturality_with(m: &ActionMorphism, faults: &Faults) -> Result<Option<Counterexample>> {
    let lhs = compose_action_morphisms_with(
        &sa_on_couple_with(&tg_on_morphism_with(m, faults)?, faults)?,
        &unit_with(m.source(), faults)?,
        faults,
    )?;
    let rhs = compose_action_morphisms_with(&unit_with(m.target(), faults)?, m, faults)?;
    Ok((lhs != rhs).then(|| mismatch("unit-naturality", "action morphism", morphism_summary(&lhs), morphism_summary(&rhs))))
}

/// `κ ∘ ε_G = ε_H ∘ TG(SA(κ))` for `κ: G → H`.
pub fn check_counit_naturality(k: &CoupleMorphism) -> Result<Option<Counterexample>> {
    check_counit_naturality_with(k, &Faults::NONE)
}

pub(crate) fn check_counit_naturality_with(k: &CoupleMorphism, faults: &Faults) -> Result<Option<Counterexample>> {
    guard_adjunction(k.source().len().max(k.target().len()))?;
    let lhs = compose_couples_with(k, &counit_with(k.source(), faults)?, faults)?;
    let rhs = compose_couples_with(
        &counit_with(k.target(), faults)?,
        &tg_on_morphism_with(&sa_on_couple_with(k, faults)?, faults)?,
        faults,
    )?;
    Ok((lhs != rhs).then(|| mismatch("counit-naturality", "couple morphism", couple_summary(&lhs), couple_summary(&rhs))))
}

fn guard_adjunction(arrows: usize) -> Result<()> {
    let limit = Guards::current().max_adjunction_arrows;
    if arrows > limit {
        return Err(Error::guard("arrows for the adjunction checks", limit));
    }
    Ok(())
}
