use std::collections::HashMap;
use std::sync::Arc;

use super::{Action, ActionMorphism, InverseSemigroup, SemigroupHom};
use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::fault::Faults;
use crate::topology::{FiniteSpace, PartialMap};

/// The characters of `E(S)`: nonzero multiplicative maps `E(S) → {0,1}`.
///
/// A character is stored as its support, a set of idempotents of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characters {
    pub chars: Vec<PointSet>,
    pub space: Arc<FiniteSpace>,
    index: HashMap<PointSet, usize>,
}

impl Characters {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn position(&self, support: &PointSet) -> Option<usize> {
        self.index.get(support).copied()
    }

    /// `U_e = {ζ : ζ(e) = 1}`.
    pub fn basic_open(&self, e: usize) -> PointSet {
        self.chars.iter().enumerate().filter(|(_, z)| z.contains(e)).map(|(i, _)| i).collect()
    }
}

/// Characters of `E(S)` with the topology of pointwise convergence.
///
/// The support of a character is a filter of `E(S)`, and on a finite
/// semilattice every filter is principal, generated by the product of its
/// members. So the characters are the up-sets `{f : ef = e}`, one per
/// idempotent `e`, listed in the order of `S.idempotents()`.
pub fn characters(s: &InverseSemigroup) -> Characters {
    let e = s.idempotents();
    let chars: Vec<PointSet> = e
        .iter()
        .map(|&a| e.iter().copied().filter(|&f| s.mul(a, f) == a).collect())
        .collect();
    let index = chars.iter().enumerate().map(|(i, z)| (z.clone(), i)).collect();
    // Subbasis of the product topology on {0,1}^E: ζ(e) = 1 and ζ(e) = 0.
    let n = chars.len();
    let mut gens = Vec::with_capacity(2 * e.len());
    for &f in e {
        let on: PointSet = (0..n).filter(|&i| chars[i].contains(f)).collect();
        gens.push(PointSet::full(n).difference(&on));
        gens.push(on);
    }
    let space = Arc::new(FiniteSpace::generated(n, &gens));
    Characters { chars, space, index }
}

/// The spectral action `β` of `S` on `Ê(S)`: `β_s` is defined on
/// `U_{s*s}` and sends `ζ` to `e ↦ ζ(s* e s)`.
pub fn spectral_action(s: &Arc<InverseSemigroup>) -> Result<Action> {
    spectral_action_with(s, &Faults::NONE)
}

pub(crate) fn spectral_action_with(s: &Arc<InverseSemigroup>, faults: &Faults) -> Result<Action> {
    let ch = characters(s);
    let e = s.idempotents();
    let mut maps = Vec::with_capacity(s.order());
    for t in 0..s.order() {
        let ts = s.star(t);
        let mut values = vec![None; ch.len()];
        for (i, z) in ch.chars.iter().enumerate() {
            if !z.contains(s.mul(ts, t)) {
                continue;
            }
            let moved: PointSet = e
                .iter()
                .copied()
                .filter(|&f| {
                    let c = if faults.spectral_conjugation_reversed {
                        s.mul(s.mul(t, f), ts)
                    } else {
                        s.mul(s.mul(ts, f), t)
                    };
                    z.contains(c)
                })
                .collect();
            values[i] = Some(ch.position(&moved).ok_or_else(|| {
                Error::InvalidAction(format!("β_{t} does not send character {i} to a character"))
            })?);
        }
        maps.push(PartialMap::new(ch.space.clone(), ch.space.clone(), values)?);
    }
    Action::new(s.clone(), ch.space.clone(), maps)
}

/// `SP(θ) = (θ, θ̂)` with `θ̂(ζ) = ζ∘θ`, defined where `ζ∘θ` is nonzero.
pub fn sp_hom(theta: &SemigroupHom) -> Result<ActionMorphism> {
    sp_hom_with(theta, &Faults::NONE)
}

pub(crate) fn sp_hom_with(theta: &SemigroupHom, faults: &Faults) -> Result<ActionMorphism> {
    let s = theta.source();
    let t = theta.target();
    let cs = characters(s);
    let ct = characters(t);
    let values = ct
        .chars
        .iter()
        .map(|z| {
            let pulled: PointSet =
                s.idempotents().iter().copied().filter(|&e| z.contains(theta.apply(e))).collect();
            if pulled.is_empty() {
                Ok(None)
            } else {
                cs.position(&pulled)
                    .map(Some)
                    .ok_or_else(|| Error::InvalidPartialMap("ζ∘θ is not a character".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let xi = PartialMap::new(ct.space.clone(), cs.space.clone(), values)?;
    let a = Arc::new(spectral_action_with(s, faults)?);
    let b = Arc::new(spectral_action_with(t, faults)?);
    ActionMorphism::new(a, b, theta.clone(), xi)
}
