use std::collections::HashMap;
use std::sync::Arc;

use super::{same_groupoid, GroupoidData, GroupoidHom, TopGroupoid};
use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::fault::Faults;
use crate::topology::FiniteSpace;

/// A couple morphism `[φ, ψ; K]: G → H`.
///
/// `φ: K → G` is continuous and fibrewise bijective; `ψ: K → H` is continuous
/// with `ψ^(0)` injective and open. Two couples are equivalent iff
/// `φ×ψ` has the same image in `G × H`, so that image (`canon`) is the
/// identity of the morphism: equality and hashing only look at the
/// endpoints and `canon`.
#[derive(Debug, Clone)]
pub struct CoupleMorphism {
    phi: GroupoidHom,
    psi: GroupoidHom,
    canon: Vec<(usize, usize)>,
}

impl PartialEq for CoupleMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.canon == other.canon
            && same_groupoid(self.source(), other.source())
            && same_groupoid(self.target(), other.target())
    }
}

impl Eq for CoupleMorphism {}

impl std::hash::Hash for CoupleMorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canon.hash(state);
    }
}

impl CoupleMorphism {
    pub fn new(phi: GroupoidHom, psi: GroupoidHom) -> Result<Self> {
        if !same_groupoid(phi.source(), psi.source()) {
            return Err(Error::InvalidCouple("φ and ψ have different sources".into()));
        }
        for g in [phi.source(), phi.target(), psi.target()] {
            g.check_etale()?;
        }
        if !phi.is_fibrewise_bijective() {
            return Err(Error::InvalidCouple("φ is not fibrewise bijective".into()));
        }
        let psi0 = psi.unit_part();
        if !psi0.is_injective() {
            return Err(Error::InvalidCouple("ψ^(0) is not injective".into()));
        }
        if !psi0.is_open_map() {
            return Err(Error::InvalidCouple("ψ^(0) is not open".into()));
        }
        let mut canon: Vec<(usize, usize)> =
            (0..phi.source().len()).map(|k| (phi.apply(k), psi.apply(k))).collect();
        canon.sort_unstable();
        canon.dedup();
        Ok(Self { phi, psi, canon })
    }

    pub fn identity(g: Arc<TopGroupoid>) -> Result<Self> {
        let id = GroupoidHom::identity(g);
        Self::new(id.clone(), id)
    }

    pub fn source(&self) -> &Arc<TopGroupoid> {
        self.phi.target()
    }

    pub fn target(&self) -> &Arc<TopGroupoid> {
        self.psi.target()
    }

    pub fn k(&self) -> &Arc<TopGroupoid> {
        self.phi.source()
    }

    pub fn phi(&self) -> &GroupoidHom {
        &self.phi
    }

    pub fn psi(&self) -> &GroupoidHom {
        &self.psi
    }

    /// Image of `φ×ψ`, sorted.
    pub fn canon(&self) -> &[(usize, usize)] {
        &self.canon
    }

    /// `φ^(0)` is proper.
    pub fn is_proper(&self) -> bool {
        self.phi.unit_part().is_proper()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.phi.is_homeomorphic_isomorphism() && self.psi.is_homeomorphic_isomorphism()
    }

    /// `[ψ, φ; K]`, the inverse when both legs are homeomorphic isomorphisms.
    pub fn reversed(&self) -> Result<Self> {
        Self::new(self.psi.clone(), self.phi.clone())
    }

    /// `canon` is closed under the operations of `G × H`.
    pub fn canon_is_subgroupoid(&self) -> bool {
        let (g, h) = (self.source(), self.target());
        let set: std::collections::HashSet<(usize, usize)> = self.canon.iter().copied().collect();
        self.canon.iter().all(|&(a, b)| {
            set.contains(&(g.inv(a), h.inv(b)))
                && set.contains(&(g.d(a), h.d(b)))
                && self.canon.iter().all(|&(a2, b2)| match (g.mul(a, a2), h.mul(b, b2)) {
                    (Some(x), Some(y)) => set.contains(&(x, y)),
                    _ => true,
                })
        })
    }

    /// `φ×ψ` is injective, and the subspace topology of `canon` in `G × H`
    /// agrees with the topology of `K`.
    pub fn canon_is_homeomorphic(&self) -> bool {
        let k = self.k();
        if self.canon.len() != k.len() {
            return false;
        }
        let (tg, th) = (self.source().topology(), self.target().topology());
        let pair = |x: usize| (self.phi.apply(x), self.psi.apply(x));
        (0..k.len()).all(|x| {
            let (a, b) = pair(x);
            let induced: PointSet = (0..k.len())
                .filter(|&y| {
                    let (a2, b2) = pair(y);
                    tg.minimal_open(a).contains(a2) && th.minimal_open(b).contains(b2)
                })
                .collect();
            &induced == k.topology().minimal_open(x)
        })
    }
}

/// The pullback `K₁ ×_G K₂` of `ψ₁: K₁ → G` and `φ₂: K₂ → G`, with
/// projections `φ̃: K → K₁` and `ψ̃: K → K₂`. Arrow `i` of `K` is `pairs[i]`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub k: Arc<TopGroupoid>,
    pub phi_tilde: GroupoidHom,
    pub psi_tilde: GroupoidHom,
    pub pairs: Vec<(usize, usize)>,
}

pub fn pullback(psi1: &GroupoidHom, phi2: &GroupoidHom) -> Result<Pullback> {
    pullback_with(psi1, phi2, false)
}

fn pullback_with(psi1: &GroupoidHom, phi2: &GroupoidHom, ignore_matching: bool) -> Result<Pullback> {
    if !same_groupoid(psi1.target(), phi2.target()) {
        return Err(Error::EndpointMismatch("pullback over different groupoids".into()));
    }
    let (k1, k2) = (psi1.source().clone(), phi2.source().clone());
    let pairs: Vec<(usize, usize)> = (0..k1.len())
        .flat_map(|a| (0..k2.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| ignore_matching || psi1.apply(a) == phi2.apply(b))
        .collect();
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let at = |p: (usize, usize)| index.get(&p).copied();
    let n = pairs.len();
    let mut units = Vec::new();
    let (mut d, mut r, mut inv) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    let mut mult = Vec::new();
    let missing = || Error::InvalidCouple("pullback not closed under the structure maps".into());
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if k1.is_unit(a) && k2.is_unit(b) {
            units.push(i);
        }
        d.push(at((k1.d(a), k2.d(b))).ok_or_else(missing)?);
        r.push(at((k1.r(a), k2.r(b))).ok_or_else(missing)?);
        inv.push(at((k1.inv(a), k2.inv(b))).ok_or_else(missing)?);
        for (j, &(a2, b2)) in pairs.iter().enumerate() {
            if let (Some(x), Some(y)) = (k1.mul(a, a2), k2.mul(b, b2)) {
                mult.push((i, j, at((x, y)).ok_or_else(missing)?));
            }
        }
    }
    let (t1, t2) = (k1.topology(), k2.topology());
    let nbhd = pairs
        .iter()
        .map(|&(a, b)| {
            (0..n)
                .filter(|&j| t1.minimal_open(a).contains(pairs[j].0) && t2.minimal_open(b).contains(pairs[j].1))
                .collect()
        })
        .collect();
    let k = Arc::new(TopGroupoid::new(GroupoidData {
        arrows: n,
        units,
        d,
        r,
        inv,
        mult,
        topology: FiniteSpace::from_neighbourhoods(nbhd)?,
    })?);
    let phi_tilde = GroupoidHom::new(k.clone(), k1, pairs.iter().map(|p| p.0).collect())?;
    let psi_tilde = GroupoidHom::new(k.clone(), k2, pairs.iter().map(|p| p.1).collect())?;
    Ok(Pullback { k, phi_tilde, psi_tilde, pairs })
}

/// `c2 ∘ c1 = [φ₁∘φ̃₂, ψ₂∘ψ̃₁; K₁ ×_H K₂]` for `c1: G → H`, `c2: H → L`.
pub fn compose_couples(c2: &CoupleMorphism, c1: &CoupleMorphism) -> Result<CoupleMorphism> {
    compose_couples_with(c2, c1, &Faults::NONE)
}

pub(crate) fn compose_couples_with(
    c2: &CoupleMorphism,
    c1: &CoupleMorphism,
    faults: &Faults,
) -> Result<CoupleMorphism> {
    if !same_groupoid(c1.target(), c2.source()) {
        return Err(Error::EndpointMismatch("couple composition".into()));
    }
    let pb = pullback_with(&c1.psi, &c2.phi, faults.pullback_ignores_matching)?;
    CoupleMorphism::new(pb.phi_tilde.then(&c1.phi)?, pb.psi_tilde.then(&c2.psi)?)
}

/// Equivalence of couples with the same endpoints, decided by `canon`.
pub fn couples_equivalent(c1: &CoupleMorphism, c2: &CoupleMorphism) -> Result<bool> {
    if !same_groupoid(c1.source(), c2.source()) || !same_groupoid(c1.target(), c2.target()) {
        return Err(Error::EndpointMismatch("couples with different endpoints".into()));
    }
    Ok(c1.canon == c2.canon)
}

/// Searches all bijections `ι: K₁ → K₂` with `φ₂∘ι = φ₁` and `ψ₂∘ι = ψ₁`
/// for one that is a homeomorphic groupoid isomorphism.
pub fn find_equivalence(c1: &CoupleMorphism, c2: &CoupleMorphism) -> Option<GroupoidHom> {
    let (k1, k2) = (c1.k(), c2.k());
    if k1.len() != k2.len() {
        return None;
    }
    let mut iota = vec![usize::MAX; k1.len()];
    let mut used = vec![false; k2.len()];
    search(c1, c2, 0, &mut iota, &mut used)
}

fn search(
    c1: &CoupleMorphism,
    c2: &CoupleMorphism,
    i: usize,
    iota: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<GroupoidHom> {
    if i == iota.len() {
        let h = GroupoidHom::new(c1.k().clone(), c2.k().clone(), iota.clone()).ok()?;
        return h.is_homeomorphic_isomorphism().then_some(h);
    }
    for j in 0..used.len() {
        if used[j] || c2.phi.apply(j) != c1.phi.apply(i) || c2.psi.apply(j) != c1.psi.apply(i) {
            continue;
        }
        used[j] = true;
        iota[i] = j;
        if let Some(h) = search(c1, c2, i + 1, iota, used) {
            return Some(h);
        }
        used[j] = false;
    }
    iota[i] = usize::MAX;
    None
}
