use std::collections::HashMap;
use std::sync::Arc;

use super::{same_semigroup, InverseSemigroup, SemigroupHom};
use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::fault::Faults;
use crate::topology::{compose, partial_homeos, same_space, FiniteSpace, PartialMap};

/// A nondegenerate action `α` of an inverse semigroup by partial
/// homeomorphisms of a finite space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Action {
    semigroup: Arc<InverseSemigroup>,
    space: Arc<FiniteSpace>,
    maps: Vec<PartialMap>,
}

impl Action {
    pub fn new(
        semigroup: Arc<InverseSemigroup>,
        space: Arc<FiniteSpace>,
        maps: Vec<PartialMap>,
    ) -> Result<Self> {
        if maps.len() != semigroup.order() {
            return Err(Error::InvalidAction(format!(
                "{} maps for a semigroup of order {}",
                maps.len(),
                semigroup.order()
            )));
        }
        for (s, m) in maps.iter().enumerate() {
            if !same_space(m.source(), &space) || !same_space(m.target(), &space) {
                return Err(Error::InvalidAction(format!("map {s} is not on the action space")));
            }
            if !m.is_partial_homeomorphism() {
                return Err(Error::InvalidAction(format!("map {s} is not a partial homeomorphism")));
            }
        }
        let n = semigroup.order();
        for s in 0..n {
            for t in 0..n {
                if compose(&maps[s], &maps[t])?.values() != maps[semigroup.mul(s, t)].values() {
                    return Err(Error::InvalidAction(format!("α({s}·{t}) != α({s})∘α({t})")));
                }
            }
        }
        let covered = maps.iter().fold(PointSet::new(), |acc, m| acc.union(&m.domain()));
        if covered != space.points() {
            return Err(Error::InvalidAction("action is degenerate".into()));
        }
        Ok(Self { semigroup, space, maps })
    }

    pub fn semigroup(&self) -> &Arc<InverseSemigroup> {
        &self.semigroup
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn map(&self, s: usize) -> &PartialMap {
        &self.maps[s]
    }

    pub fn maps(&self) -> &[PartialMap] {
        &self.maps
    }

    pub fn domain(&self, s: usize) -> PointSet {
        self.maps[s].domain()
    }

    pub fn apply(&self, s: usize, x: usize) -> Option<usize> {
        self.maps[s].apply(x)
    }
}

pub(crate) fn same_action(a: &Arc<Action>, b: &Arc<Action>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A morphism `(θ, ξ): (S, X, α) → (T, Y, β)`.
///
/// `θ: S → T` is a homomorphism and `ξ: Y ⇀ X` a continuous partial map in
/// the opposite direction, with `ξ⁻¹(D_s) = D_{θ(s)}` and
/// `α_s(ξ(y)) = ξ(β_{θ(s)}(y))` on `D_{θ(s)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionMorphism {
    source: Arc<Action>,
    target: Arc<Action>,
    theta: SemigroupHom,
    xi: PartialMap,
}

impl ActionMorphism {
    pub fn new(
        source: Arc<Action>,
        target: Arc<Action>,
        theta: SemigroupHom,
        xi: PartialMap,
    ) -> Result<Self> {
        if !same_semigroup(theta.source(), &source.semigroup)
            || !same_semigroup(theta.target(), &target.semigroup)
        {
            return Err(Error::EndpointMismatch("θ does not match the action semigroups".into()));
        }
        if !same_space(xi.source(), &target.space) || !same_space(xi.target(), &source.space) {
            return Err(Error::EndpointMismatch("ξ does not run from target to source space".into()));
        }
        for s in 0..source.semigroup.order() {
            let ts = theta.apply(s);
            let pre = xi.preimage(&source.domain(s));
            let dt = target.domain(ts);
            if pre != dt {
                return Err(Error::InvalidMorphism {
                    condition: "domain".into(),
                    witness: format!("s={s}: ξ⁻¹(D_s)={pre:?}, D_θ(s)={dt:?}"),
                });
            }
            for y in dt.iter() {
                let lhs = xi.apply(y).and_then(|x| source.apply(s, x));
                let rhs = target.apply(ts, y).and_then(|y2| xi.apply(y2));
                if lhs != rhs {
                    return Err(Error::InvalidMorphism {
                        condition: "equivariance".into(),
                        witness: format!("s={s}, y={y}: {lhs:?} != {rhs:?}"),
                    });
                }
            }
        }
        Ok(Self { source, target, theta, xi })
    }

    pub fn identity(a: Arc<Action>) -> Self {
        Self {
            theta: SemigroupHom::identity(a.semigroup.clone()),
            xi: PartialMap::identity(a.space.clone()),
            source: a.clone(),
            target: a,
        }
    }

    pub fn source(&self) -> &Arc<Action> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Action> {
        &self.target
    }

    pub fn theta(&self) -> &SemigroupHom {
        &self.theta
    }

    pub fn xi(&self) -> &PartialMap {
        &self.xi
    }
}

/// `m2 ∘ m1 = (θ₂∘θ₁, ξ₁∘ξ₂)`.
pub fn compose_action_morphisms(m2: &ActionMorphism, m1: &ActionMorphism) -> Result<ActionMorphism> {
    compose_action_morphisms_with(m2, m1, &Faults::NONE)
}

pub(crate) fn compose_action_morphisms_with(
    m2: &ActionMorphism,
    m1: &ActionMorphism,
    faults: &Faults,
) -> Result<ActionMorphism> {
    if !same_action(&m1.target, &m2.source) {
        return Err(Error::EndpointMismatch("action morphism composition".into()));
    }
    let theta = m1.theta.then(&m2.theta)?;
    let xi = if faults.isa_reversed_xi {
        compose(&m2.xi, &m1.xi)?
    } else {
        compose(&m1.xi, &m2.xi)?
    };
    ActionMorphism::new(m1.source.clone(), m2.target.clone(), theta, xi)
}

/// The inverse semigroup `I(X)` of partial homeomorphisms between open
/// subsets, with the partial map behind each element.
#[derive(Debug, Clone)]
pub struct PartialHomeos {
    pub semigroup: Arc<InverseSemigroup>,
    pub maps: Vec<PartialMap>,
}

pub fn i_of(x: &Arc<FiniteSpace>) -> Result<PartialHomeos> {
    let maps = partial_homeos(x)?;
    let index: HashMap<&[Option<usize>], usize> =
        maps.iter().enumerate().map(|(i, m)| (m.values(), i)).collect();
    let n = maps.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &maps {
        for b in &maps {
            let c = compose(a, b)?;
            table.push(*index.get(c.values()).ok_or_else(|| {
                Error::InvalidAction("partial homeomorphisms not closed under composition".into())
            })?);
        }
    }
    Ok(PartialHomeos { semigroup: Arc::new(InverseSemigroup::from_flat(n, table)?), maps })
}

/// `I(X)` acting on `X` by its elements.
pub fn natural_action(x: &Arc<FiniteSpace>) -> Result<Action> {
    let ph = i_of(x)?;
    Action::new(ph.semigroup, x.clone(), ph.maps)
}

/// The semilattice `(𝒪(X), ∩)` with the open set behind each element.
pub fn open_semigroup(x: &FiniteSpace) -> Result<(Arc<InverseSemigroup>, Vec<PointSet>)> {
    let opens = x.opens()?;
    let index: HashMap<&PointSet, usize> = opens.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let n = opens.len();
    let table = (0..n * n).map(|i| index[&opens[i / n].intersection(&opens[i % n])]).collect();
    Ok((Arc::new(InverseSemigroup::from_flat(n, table)?), opens))
}

/// `𝒪(X)` acting on `X` by `α_U = id_U`. `X` must be discrete.
pub fn ox_action(x: &Arc<FiniteSpace>) -> Result<Action> {
    if !x.is_locally_compact_hausdorff() {
        return Err(Error::NonDiscreteSpace);
    }
    let (s, opens) = open_semigroup(x)?;
    let maps = opens
        .iter()
        .map(|u| PartialMap::restricted_identity(x.clone(), u))
        .collect::<Result<_>>()?;
    Action::new(s, x.clone(), maps)
}

/// The morphism `(U ↦ ξ⁻¹(U), ξ): 𝒪X → 𝒪Y` induced by a proper partial map
/// `ξ: Y ⇀ X`.
pub fn ox_morphism(xi: &PartialMap) -> Result<ActionMorphism> {
    if !xi.is_proper() {
        return Err(Error::InvalidPartialMap("map is not proper".into()));
    }
    let ax = Arc::new(ox_action(xi.target())?);
    let ay = Arc::new(ox_action(xi.source())?);
    let (_, opens_x) = open_semigroup(xi.target())?;
    let (_, opens_y) = open_semigroup(xi.source())?;
    let index: HashMap<&PointSet, usize> = opens_y.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let map = opens_x
        .iter()
        .map(|u| {
            index.get(&xi.preimage(u)).copied().ok_or(Error::NotContinuous { point: 0 })
        })
        .collect::<Result<_>>()?;
    let theta = SemigroupHom::new(ax.semigroup.clone(), ay.semigroup.clone(), map)?;
    ActionMorphism::new(ax, ay, theta, xi.clone())
}
