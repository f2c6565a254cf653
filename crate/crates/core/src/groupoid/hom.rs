use std::sync::Arc;

use super::{same_groupoid, TopGroupoid};
use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::topology::PartialMap;

/// A continuous groupoid homomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupoidHom {
    source: Arc<TopGroupoid>,
    target: Arc<TopGroupoid>,
    map: Vec<usize>,
}

impl GroupoidHom {
    pub fn new(source: Arc<TopGroupoid>, target: Arc<TopGroupoid>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&v| v >= target.len()) {
            return Err(Error::InvalidGroupoidHom("map has the wrong shape".into()));
        }
        for (a, b) in source.composable_pairs() {
            let ab = source.mul(a, b).expect("composable");
            if target.mul(map[a], map[b]) != Some(map[ab]) {
                return Err(Error::InvalidGroupoidHom(format!("not multiplicative at ({a},{b})")));
            }
        }
        let h = Self { source, target, map };
        if let Some(g) = h.continuity_witness() {
            return Err(Error::NotContinuous { point: g });
        }
        Ok(h)
    }

    fn continuity_witness(&self) -> Option<usize> {
        let (s, t) = (self.source.topology(), self.target.topology());
        (0..self.map.len()).find(|&g| {
            let u = t.minimal_open(self.map[g]);
            s.minimal_open(g).iter().any(|h| !u.contains(self.map[h]))
        })
    }

    pub fn identity(g: Arc<TopGroupoid>) -> Self {
        Self { map: (0..g.len()).collect(), source: g.clone(), target: g }
    }

    pub fn source(&self) -> &Arc<TopGroupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TopGroupoid> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &GroupoidHom) -> Result<GroupoidHom> {
        if !same_groupoid(&self.target, &g.source) {
            return Err(Error::EndpointMismatch("groupoid homomorphism composition".into()));
        }
        Ok(GroupoidHom {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.iter().map(|&a| g.map[a]).collect(),
        })
    }

    pub fn image(&self, a: &PointSet) -> PointSet {
        a.iter().map(|g| self.map[g]).collect()
    }

    pub fn preimage(&self, b: &PointSet) -> PointSet {
        (0..self.map.len()).filter(|&g| b.contains(self.map[g])).collect()
    }

    /// `φ^(0)` as a total map between unit spaces.
    pub fn unit_part(&self) -> PartialMap {
        let values = self
            .source
            .units()
            .iter()
            .map(|&u| self.target.unit_position(self.map[u]))
            .collect();
        PartialMap::new(
            Arc::new(self.source.unit_space()),
            Arc::new(self.target.unit_space()),
            values,
        )
        .expect("unit part of a continuous homomorphism")
    }

    /// Each `φ_u: K_u → G_{φ(u)}` is bijective.
    pub fn is_fibrewise_bijective(&self) -> bool {
        self.source.units().iter().all(|&u| {
            let fibre = self.source.fibre(u);
            let img = self.image(&fibre);
            img.len() == fibre.len() && img == self.target.fibre(self.map[u])
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.map.len() == self.target.len() && self.image(&PointSet::full(self.map.len())).len() == self.map.len()
    }

    /// Bijective with a continuous inverse.
    pub fn is_homeomorphic_isomorphism(&self) -> bool {
        if !self.is_bijective() {
            return false;
        }
        let mut back = vec![0; self.map.len()];
        for (g, &h) in self.map.iter().enumerate() {
            back[h] = g;
        }
        GroupoidHom::new(self.target.clone(), self.source.clone(), back).is_ok()
    }

    /// The inverse of a homeomorphic isomorphism.
    pub fn inverse(&self) -> Result<GroupoidHom> {
        if !self.is_bijective() {
            return Err(Error::InvalidGroupoidHom("not bijective".into()));
        }
        let mut back = vec![0; self.map.len()];
        for (g, &h) in self.map.iter().enumerate() {
            back[h] = g;
        }
        GroupoidHom::new(self.target.clone(), self.source.clone(), back)
    }

    /// Every continuous homomorphism `source → target`, by backtracking with
    /// multiplicativity and continuity pruning.
    pub fn enumerate(source: &Arc<TopGroupoid>, target: &Arc<TopGroupoid>) -> Result<Vec<GroupoidHom>> {
        let limit = Guards::current().max_items;
        let n = source.len();
        let mut map = vec![usize::MAX; n];
        let mut out = Vec::new();
        enumerate_from(source, target, &mut map, 0, &mut out, limit)?;
        Ok(out)
    }
}

fn consistent(s: &TopGroupoid, t: &TopGroupoid, map: &[usize], k: usize) -> bool {
    let (ts, tt) = (s.topology(), t.topology());
    for x in 0..=k {
        for y in 0..=k {
            if let Some(p) = s.mul(x, y) {
                if (x == k || y == k || p == k) && p <= k && t.mul(map[x], map[y]) != Some(map[p]) {
                    return false;
                }
            }
        }
    }
    for a in 0..=k {
        // Continuity between k and earlier arrows, both directions.
        if ts.minimal_open(k).contains(a) && !tt.minimal_open(map[k]).contains(map[a]) {
            return false;
        }
        if ts.minimal_open(a).contains(k) && !tt.minimal_open(map[a]).contains(map[k]) {
            return false;
        }
    }
    true
}

fn enumerate_from(
    s: &Arc<TopGroupoid>,
    t: &Arc<TopGroupoid>,
    map: &mut Vec<usize>,
    k: usize,
    out: &mut Vec<GroupoidHom>,
    limit: usize,
) -> Result<()> {
    if k == map.len() {
        if out.len() >= limit {
            return Err(Error::guard("groupoid homomorphisms", limit));
        }
        out.push(GroupoidHom::new(s.clone(), t.clone(), map.clone())?);
        return Ok(());
    }
    for v in 0..t.len() {
        map[k] = v;
        if consistent(s, t, map, k) {
            enumerate_from(s, t, map, k + 1, out, limit)?;
        }
    }
    map[k] = usize::MAX;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::InverseSemigroup;

    fn collapse() -> GroupoidHom {
        let p = Arc::new(TopGroupoid::pair(2));
        let z2 = Arc::new(TopGroupoid::from_group(&InverseSemigroup::cyclic_group(2)).unwrap());
        GroupoidHom::new(p, z2, vec![0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn collapse_is_fibrewise_bijective_with_non_injective_units() {
        let c = collapse();
        assert!(c.is_fibrewise_bijective());
        assert!(!c.unit_part().is_injective());
    }

    #[test]
    fn unit_inclusion_is_not_fibrewise_bijective() {
        let p = Arc::new(TopGroupoid::pair(2));
        let pt = Arc::new(TopGroupoid::from_space(crate::topology::FiniteSpace::discrete(1)));
        let inc = GroupoidHom::new(pt, p, vec![0]).unwrap();
        assert!(!inc.is_fibrewise_bijective());
    }

    #[test]
    fn enumeration_finds_automorphisms_of_pair2() {
        let p = Arc::new(TopGroupoid::pair(2));
        let homs = GroupoidHom::enumerate(&p, &p).unwrap();
        let isos = homs.iter().filter(|h| h.is_homeomorphic_isomorphism()).count();
        assert_eq!(isos, 2);
    }
}
