use std::collections::HashMap;
use std::sync::Arc;

use super::{CoupleMorphism, TopGroupoid};
use crate::bits::{canonical_sort, PointSet};
use crate::error::{Error, Result};
use crate::fault::Faults;
use crate::guards::Guards;
use crate::semigroup::{Action, ActionMorphism, InverseSemigroup, SemigroupHom};
use crate::topology::PartialMap;

/// `Bis G`: the inverse semigroup of open bisections, with the arrow set
/// behind each element. The empty bisection is included and is the zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bisections {
    pub semigroup: Arc<InverseSemigroup>,
    pub sets: Vec<PointSet>,
    index: HashMap<PointSet, usize>,
}

impl Bisections {
    pub fn position(&self, u: &PointSet) -> Option<usize> {
        self.index.get(u).copied()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Enumerates open bisections by walking the units and choosing at most one
/// arrow out of each with a range not used so far, then keeping open sets.
pub fn open_bisections(g: &TopGroupoid) -> Result<Bisections> {
    let guards = Guards::current();
    if g.len() > guards.max_bisection_arrows {
        return Err(Error::guard("arrows for bisection enumeration", guards.max_bisection_arrows));
    }
    g.check_etale()?;
    let fibres: Vec<Vec<usize>> = g.units().iter().map(|&u| g.fibre(u).to_vec()).collect();
    let mut sets = Vec::new();
    let mut chosen = PointSet::new();
    let mut ranges = PointSet::new();
    matchings(g, &fibres, 0, &mut chosen, &mut ranges, &mut sets, guards.max_items)?;
    canonical_sort(&mut sets);
    let index: HashMap<PointSet, usize> = sets.iter().enumerate().map(|(i, u)| (u.clone(), i)).collect();
    let n = sets.len();
    let mut table = Vec::with_capacity(n * n);
    for u in &sets {
        for v in &sets {
            let uv = g.product_set(u, v);
            table.push(*index.get(&uv).ok_or_else(|| {
                Error::InvalidTable("open bisections not closed under products".into())
            })?);
        }
    }
    let semigroup = Arc::new(InverseSemigroup::from_flat(n, table)?);
    Ok(Bisections { semigroup, sets, index })
}

fn matchings(
    g: &TopGroupoid,
    fibres: &[Vec<usize>],
    i: usize,
    chosen: &mut PointSet,
    ranges: &mut PointSet,
    out: &mut Vec<PointSet>,
    limit: usize,
) -> Result<()> {
    if i == fibres.len() {
        if g.topology().is_open(chosen) {
            if out.len() >= limit {
                return Err(Error::guard("open bisections", limit));
            }
            out.push(chosen.clone());
        }
        return Ok(());
    }
    matchings(g, fibres, i + 1, chosen, ranges, out, limit)?;
    for &a in &fibres[i] {
        let r = g.r(a);
        if !ranges.contains(r) {
            chosen.insert(a);
            ranges.insert(r);
            matchings(g, fibres, i + 1, chosen, ranges, out, limit)?;
            chosen.remove(a);
            ranges.remove(r);
        }
    }
    Ok(())
}

/// The slice action `γ` of `Bis G` on `G^(0)`: `γ_U = r|_U ∘ (d|_U)⁻¹` on
/// `d(U)`.
pub fn slice_action(g: &TopGroupoid) -> Result<Action> {
    slice_action_with(g, &Faults::NONE)
}

pub(crate) fn slice_action_with(g: &TopGroupoid, faults: &Faults) -> Result<Action> {
    let bis = open_bisections(g)?;
    let space = Arc::new(g.unit_space());
    let pos = |u: usize| g.unit_position(u).expect("unit");
    let maps = bis
        .sets
        .iter()
        .map(|u| {
            let pairs: Vec<(usize, usize)> = u
                .iter()
                .map(|a| {
                    if faults.slice_inverse_direction {
                        (pos(g.r(a)), pos(g.d(a)))
                    } else {
                        (pos(g.d(a)), pos(g.r(a)))
                    }
                })
                .collect();
            PartialMap::from_pairs(space.clone(), space.clone(), &pairs)
        })
        .collect::<Result<_>>()?;
    Action::new(bis.semigroup, space, maps)
}

/// `SA[φ, ψ; K] = (U ↦ ψ(φ⁻¹(U)), φ^(0) ∘ (ψ^(0))⁻¹)`.
pub fn sa_on_couple(c: &CoupleMorphism) -> Result<ActionMorphism> {
    sa_on_couple_with(c, &Faults::NONE)
}

pub(crate) fn sa_on_couple_with(c: &CoupleMorphism, faults: &Faults) -> Result<ActionMorphism> {
    let (g, h, k) = (c.source(), c.target(), c.k());
    let bg = open_bisections(g)?;
    let bh = open_bisections(h)?;
    let map = bg
        .sets
        .iter()
        .map(|u| {
            let img = c.psi().image(&c.phi().preimage(u));
            bh.position(&img)
                .ok_or_else(|| Error::InvalidCouple(format!("ψ(φ⁻¹({u:?})) is not an open bisection")))
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = SemigroupHom::new(bg.semigroup.clone(), bh.semigroup.clone(), map)?;
    let a = Arc::new(slice_action_with(g, faults)?);
    let b = Arc::new(slice_action_with(h, faults)?);
    let mut values = vec![None; h.units().len()];
    for &ku in k.units() {
        let hu = h.unit_position(c.psi().apply(ku)).expect("unit");
        values[hu] = g.unit_position(c.phi().apply(ku));
    }
    let xi = PartialMap::new(b.space().clone(), a.space().clone(), values)?;
    ActionMorphism::new(a, b, theta, xi)
}
