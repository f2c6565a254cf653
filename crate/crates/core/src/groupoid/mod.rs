//! Finite topological groupoids, open bisections, couple morphisms and the
//! slice action.

mod bisection;
mod couple;
mod dot;
mod hom;

pub use bisection::{open_bisections, sa_on_couple, slice_action, Bisections};
pub(crate) use bisection::{sa_on_couple_with, slice_action_with};
pub use couple::{
    compose_couples, couples_equivalent, find_equivalence, pullback, CoupleMorphism, Pullback,
};
pub(crate) use couple::compose_couples_with;
pub use dot::to_dot;
pub use hom::GroupoidHom;

use std::sync::Arc;

use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::semigroup::InverseSemigroup;
use crate::topology::{position_map, FiniteSpace};

/// Raw groupoid data before validation. `mult` lists triples `(g', g, g'g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidData {
    pub arrows: usize,
    pub units: Vec<usize>,
    pub d: Vec<usize>,
    pub r: Vec<usize>,
    pub inv: Vec<usize>,
    pub mult: Vec<(usize, usize, usize)>,
    pub topology: FiniteSpace,
}

/// A validated finite topological groupoid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TopGroupoid {
    d: Vec<usize>,
    r: Vec<usize>,
    inv: Vec<usize>,
    mult: Vec<Option<usize>>,
    units: Vec<usize>,
    unit_pos: Vec<Option<usize>>,
    topology: Arc<FiniteSpace>,
}

impl std::fmt::Debug for TopGroupoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TopGroupoid")
            .field("arrows", &self.len())
            .field("units", &self.units)
            .field("d", &self.d)
            .field("r", &self.r)
            .finish()
    }
}

fn axiom(id: &str, witness: String) -> Error {
    Error::GroupoidAxiom { axiom: id.into(), witness }
}

impl TopGroupoid {
    pub fn new(data: GroupoidData) -> Result<Self> {
        let n = data.arrows;
        let shape_ok = data.d.len() == n
            && data.r.len() == n
            && data.inv.len() == n
            && data.topology.len() == n
            && data.units.iter().all(|&u| u < n)
            && data.d.iter().chain(&data.r).chain(&data.inv).all(|&g| g < n);
        if !shape_ok {
            return Err(axiom("shape", "array lengths or indices out of range".into()));
        }
        let unit_set: PointSet = data.units.iter().copied().collect();
        let units = unit_set.to_vec();
        let d = data.d;
        let r = data.r;
        let inv = data.inv;
        if let Some(g) = (0..n).find(|&g| !unit_set.contains(d[g]) || !unit_set.contains(r[g])) {
            return Err(axiom("i", format!("d or r of arrow {g} is not a unit")));
        }
        if let Some(&u) = units.iter().find(|&&u| d[u] != u || r[u] != u) {
            return Err(axiom("i", format!("unit {u} is not fixed by d and r")));
        }
        let mut mult = vec![None; n * n];
        for &(a, b, c) in &data.mult {
            if a >= n || b >= n || c >= n {
                return Err(axiom("shape", format!("product ({a},{b}) out of range")));
            }
            if d[a] != r[b] {
                return Err(axiom("composable", format!("product given for non-composable ({a},{b})")));
            }
            if mult[a * n + b].is_some_and(|old| old != c) {
                return Err(axiom("composable", format!("two products given for ({a},{b})")));
            }
            mult[a * n + b] = Some(c);
        }
        for a in 0..n {
            for b in 0..n {
                if d[a] == r[b] && mult[a * n + b].is_none() {
                    return Err(axiom("composable", format!("missing product for ({a},{b})")));
                }
            }
        }
        let g = TopGroupoid {
            unit_pos: position_map(&units, n),
            d,
            r,
            inv,
            mult,
            units,
            topology: Arc::new(data.topology),
        };
        g.check_axioms()?;
        g.check_continuity()?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for g in 0..n {
            if self.mul(self.r[g], g) != Some(g) || self.mul(g, self.d[g]) != Some(g) {
                return Err(axiom("ii", format!("unit laws fail at {g}")));
            }
        }
        for (a, b) in self.composable_pairs() {
            let c = self.mul(a, b).expect("composable");
            if self.r[c] != self.r[a] || self.d[c] != self.d[b] {
                return Err(axiom("iii", format!("d/r of the product ({a},{b})")));
            }
        }
        for (a, b) in self.composable_pairs() {
            for c in (0..n).filter(|&c| self.d[b] == self.r[c]) {
                let left = self.mul(self.mul(a, b).expect("composable"), c);
                let right = self.mul(a, self.mul(b, c).expect("composable"));
                if left != right {
                    return Err(axiom("iv", format!("associativity at ({a},{b},{c})")));
                }
            }
        }
        for g in 0..n {
            let gi = self.inv[g];
            if self.d[gi] != self.r[g] || self.r[gi] != self.d[g] {
                return Err(axiom("v", format!("d/r of the inverse of {g}")));
            }
            if self.mul(g, gi) != Some(self.r[g]) || self.mul(gi, g) != Some(self.d[g]) {
                return Err(axiom("vi", format!("inverse products at {g}")));
            }
        }
        Ok(())
    }

    /// Continuity of inverse and multiplication. On finite spaces a map is
    /// continuous iff it sends the minimal neighbourhood of each point into
    /// the minimal neighbourhood of its image. The minimal neighbourhood of
    /// `(a, b)` in `G^(2)` is `(U_a × U_b) ∩ G^(2)`.
    fn check_continuity(&self) -> Result<()> {
        let t = &self.topology;
        for g in 0..self.len() {
            let target = t.minimal_open(self.inv[g]);
            if t.minimal_open(g).iter().any(|h| !target.contains(self.inv[h])) {
                return Err(Error::NotContinuous { point: g });
            }
        }
        for (a, b) in self.composable_pairs() {
            let target = t.minimal_open(self.mul(a, b).expect("composable"));
            for a2 in t.minimal_open(a).iter() {
                for b2 in t.minimal_open(b).iter() {
                    if let Some(c) = self.mul(a2, b2) {
                        if !target.contains(c) {
                            return Err(Error::NotContinuous { point: a * self.len() + b });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A space viewed as a groupoid of units.
    pub fn from_space(x: FiniteSpace) -> Self {
        let n = x.len();
        let id: Vec<usize> = (0..n).collect();
        Self::new(GroupoidData {
            arrows: n,
            units: id.clone(),
            d: id.clone(),
            r: id.clone(),
            inv: id,
            mult: (0..n).map(|u| (u, u, u)).collect(),
            topology: x,
        })
        .expect("space groupoid")
    }

    /// A finite group with the discrete topology. Requires `s.is_group()`.
    pub fn from_group(s: &InverseSemigroup) -> Result<Self> {
        if !s.is_group() {
            return Err(axiom("i", "semigroup is not a group".into()));
        }
        let n = s.order();
        let e = s.idempotents()[0];
        let mult = (0..n).flat_map(|a| (0..n).map(move |b| (a, b, s.mul(a, b)))).collect();
        Self::new(GroupoidData {
            arrows: n,
            units: vec![e],
            d: vec![e; n],
            r: vec![e; n],
            inv: (0..n).map(|a| s.star(a)).collect(),
            mult,
            topology: FiniteSpace::discrete(n),
        })
    }

    /// The pair groupoid on `k` points with the discrete topology. Arrows
    /// `0..k` are the units; the others are the pairs `(i, j)`, `i ≠ j`, in
    /// lexicographic order, with range `i` and domain `j`.
    pub fn pair(k: usize) -> Self {
        let mut pairs: Vec<(usize, usize)> = (0..k).map(|i| (i, i)).collect();
        for i in 0..k {
            for j in (0..k).filter(|&j| j != i) {
                pairs.push((i, j));
            }
        }
        let idx = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("pair");
        let n = pairs.len();
        let mut mult = Vec::new();
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(j2, l)) in pairs.iter().enumerate() {
                if j == j2 {
                    mult.push((a, b, idx((i, l))));
                }
            }
        }
        Self::new(GroupoidData {
            arrows: n,
            units: (0..k).collect(),
            d: pairs.iter().map(|&(_, j)| j).collect(),
            r: pairs.iter().map(|&(i, _)| i).collect(),
            inv: pairs.iter().map(|&(i, j)| idx((j, i))).collect(),
            mult,
            topology: FiniteSpace::discrete(n),
        })
        .expect("pair groupoid")
    }

    /// The same groupoid with arrow `g` renamed `perm[g]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut back = vec![0; n];
        for (g, &p) in perm.iter().enumerate() {
            back[p] = g;
        }
        let nbhd = (0..n)
            .map(|p| self.topology.minimal_open(back[p]).iter().map(|h| perm[h]).collect())
            .collect();
        Self::new(GroupoidData {
            arrows: n,
            units: self.units.iter().map(|&u| perm[u]).collect(),
            d: (0..n).map(|p| perm[self.d[back[p]]]).collect(),
            r: (0..n).map(|p| perm[self.r[back[p]]]).collect(),
            inv: (0..n).map(|p| perm[self.inv[back[p]]]).collect(),
            mult: self
                .composable_pairs()
                .map(|(a, b)| (perm[a], perm[b], perm[self.mul(a, b).expect("composable")]))
                .collect(),
            topology: FiniteSpace::from_neighbourhoods(nbhd)?,
        })
    }

    pub fn data(&self) -> GroupoidData {
        GroupoidData {
            arrows: self.len(),
            units: self.units.clone(),
            d: self.d.clone(),
            r: self.r.clone(),
            inv: self.inv.clone(),
            mult: self
                .composable_pairs()
                .map(|(a, b)| (a, b, self.mul(a, b).expect("composable")))
                .collect(),
            topology: (*self.topology).clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn d(&self, g: usize) -> usize {
        self.d[g]
    }

    pub fn r(&self, g: usize) -> usize {
        self.r[g]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// `a·b`, defined iff `d(a) = r(b)`.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.mult[a * self.len() + b]
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.d[a] == self.r[b]).map(move |b| (a, b)))
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn unit_set(&self) -> PointSet {
        self.units.iter().copied().collect()
    }

    pub fn is_unit(&self, g: usize) -> bool {
        self.unit_pos[g].is_some()
    }

    /// Position of a unit arrow in `units()`, which is also its point in
    /// [`TopGroupoid::unit_space`].
    pub fn unit_position(&self, g: usize) -> Option<usize> {
        self.unit_pos[g]
    }

    pub fn topology(&self) -> &Arc<FiniteSpace> {
        &self.topology
    }

    /// `G^(0)` with the subspace topology, points numbered as in `units()`.
    pub fn unit_space(&self) -> FiniteSpace {
        self.topology.subspace(&self.unit_set())
    }

    /// Arrows with domain `u`.
    pub fn fibre(&self, u: usize) -> PointSet {
        (0..self.len()).filter(|&g| self.d[g] == u).collect()
    }

    pub fn is_bisection(&self, u: &PointSet) -> bool {
        let ds: PointSet = u.iter().map(|g| self.d[g]).collect();
        let rs: PointSet = u.iter().map(|g| self.r[g]).collect();
        ds.len() == u.len() && rs.len() == u.len()
    }

    pub fn product_set(&self, u: &PointSet, v: &PointSet) -> PointSet {
        u.iter().flat_map(|a| v.iter().filter_map(move |b| self.mul(a, b))).collect()
    }

    pub fn inverse_set(&self, u: &PointSet) -> PointSet {
        u.iter().map(|g| self.inv[g]).collect()
    }

    pub fn d_set(&self, u: &PointSet) -> PointSet {
        u.iter().map(|g| self.d[g]).collect()
    }

    pub fn r_set(&self, u: &PointSet) -> PointSet {
        u.iter().map(|g| self.r[g]).collect()
    }

    /// `d` is a local homeomorphism onto `G^(0)`.
    ///
    /// If some open `V ∋ g` works then so does the minimal neighbourhood
    /// `U_g ⊆ V`: `d|_{U_g}` is a restriction of a homeomorphism onto an open
    /// set, and `d(U_g)` is open in `d(V)`. So the search over open
    /// neighbourhoods of `g` stops at `U_g`.
    pub fn is_etale(&self) -> bool {
        self.etale_witness().is_none()
    }

    /// First arrow at which `d` fails to be a local homeomorphism.
    pub fn etale_witness(&self) -> Option<usize> {
        let t = &self.topology;
        let units = self.unit_set();
        let open_in_units = |a: &PointSet| a.iter().all(|u| t.minimal_open(u).intersection(&units).is_subset(a));
        (0..self.len()).find(|&g| {
            let v = t.minimal_open(g);
            let dv = self.d_set(v);
            if dv.len() != v.len() || !open_in_units(&dv) {
                return true;
            }
            // Continuity of d|_V and of its inverse, pointwise on V.
            v.iter().any(|a| {
                let ua = t.minimal_open(a).intersection(v);
                let uda = t.minimal_open(self.d[a]).intersection(&units);
                !self.d_set(&ua).is_subset(&uda) || v.iter().any(|b| uda.contains(self.d[b]) && !ua.contains(b))
            })
        })
    }

    pub fn check_etale(&self) -> Result<()> {
        match self.etale_witness() {
            Some(arrow) => Err(Error::NotEtale { arrow }),
            None => Ok(()),
        }
    }
}

pub(crate) fn same_groupoid(a: &Arc<TopGroupoid>, b: &Arc<TopGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groupoids_validate() {
        let z2 = TopGroupoid::from_group(&InverseSemigroup::cyclic_group(2)).unwrap();
        assert!(z2.is_etale());
        assert_eq!(z2.units(), &[0]);
        let p = TopGroupoid::pair(2);
        assert!(p.is_etale());
        assert_eq!(p.len(), 4);
        assert_eq!(p.units(), &[0, 1]);
        let s = TopGroupoid::from_space(FiniteSpace::sierpinski());
        assert!(s.is_etale());
    }

    #[test]
    fn product_for_non_composable_pair_is_rejected() {
        let mut data = TopGroupoid::pair(2).data();
        // Arrow 2 has domain 1, arrow 0 has range 0.
        data.mult.push((2, 0, 2));
        assert!(matches!(TopGroupoid::new(data), Err(Error::GroupoidAxiom { .. })));
    }

    #[test]
    fn broken_inverse_names_axiom() {
        let mut data = TopGroupoid::pair(2).data();
        data.inv.swap(2, 3);
        match TopGroupoid::new(data) {
            Err(Error::GroupoidAxiom { axiom, .. }) => assert_eq!(axiom, "v"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn indiscrete_group_is_not_etale() {
        let mut data = TopGroupoid::from_group(&InverseSemigroup::cyclic_group(2)).unwrap().data();
        data.topology = FiniteSpace::indiscrete(2);
        let g = TopGroupoid::new(data).unwrap();
        assert!(!g.is_etale());
    }

    #[test]
    fn relabel_preserves_structure() {
        let p = TopGroupoid::pair(2);
        let q = p.relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(q.units(), &[2, 3]);
        assert!(q.is_etale());
    }
}
