//! Finite topological spaces and continuous partial maps.
//!
//! A topology on a finite set is determined by the minimal open neighbourhood
//! `U_x` of each point: a set is open iff it contains `U_x` for each of its
//! points. Spaces are stored in that form, which keeps products and subspaces
//! cheap. The full open family is available through [`FiniteSpace::opens`].

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::bits::{canonical_sort, PointSet};
use crate::error::{Error, Result};
use crate::guards::Guards;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    nbhd: Vec<PointSet>,
}

impl std::fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteSpace").field("nbhd", &self.nbhd).finish()
    }
}

impl FiniteSpace {
    /// Builds a space from minimal neighbourhoods, checking that they come from
    /// a topology: `x ∈ U_x` and `y ∈ U_x ⇒ U_y ⊆ U_x`.
    pub fn from_neighbourhoods(nbhd: Vec<PointSet>) -> Result<Self> {
        let n = nbhd.len();
        for (x, u) in nbhd.iter().enumerate() {
            if !u.contains(x) {
                return Err(Error::InvalidTopology(format!("point {x} not in its neighbourhood")));
            }
            if u.bound() > n {
                return Err(Error::InvalidTopology(format!("neighbourhood of {x} leaves the space")));
            }
            if let Some(y) = u.iter().find(|&y| !nbhd[y].is_subset(u)) {
                return Err(Error::InvalidTopology(format!(
                    "neighbourhood of {y} is not contained in that of {x}"
                )));
            }
        }
        Ok(Self { nbhd })
    }

    /// Builds a space from its complete family of open sets. The family must
    /// contain `∅` and the whole space and be closed under `∪` and `∩`.
    pub fn from_opens(n: usize, opens: &[PointSet]) -> Result<Self> {
        let full = PointSet::full(n);
        let family: HashSet<&PointSet> = opens.iter().collect();
        if let Some(bad) = opens.iter().find(|o| !o.is_subset(&full)) {
            return Err(Error::InvalidTopology(format!("open set {bad:?} leaves the space")));
        }
        if !family.contains(&PointSet::new()) {
            return Err(Error::InvalidTopology("empty set is not open".into()));
        }
        if !family.contains(&full) {
            return Err(Error::InvalidTopology("whole space is not open".into()));
        }
        for a in opens {
            for b in opens {
                for c in [a.union(b), a.intersection(b)] {
                    if !family.contains(&c) {
                        return Err(Error::InvalidTopology(format!(
                            "family not closed: {a:?}, {b:?} give {c:?}"
                        )));
                    }
                }
            }
        }
        Ok(Self::generated(n, opens))
    }

    /// The coarsest topology in which every generator is open.
    pub fn generated(n: usize, generators: &[PointSet]) -> Self {
        let full = PointSet::full(n);
        let mut nbhd = vec![full; n];
        for g in generators {
            for x in g.iter().filter(|&x| x < n) {
                nbhd[x] = nbhd[x].intersection(g);
            }
        }
        Self { nbhd }
    }

    pub fn discrete(n: usize) -> Self {
        Self { nbhd: (0..n).map(PointSet::singleton).collect() }
    }

    pub fn indiscrete(n: usize) -> Self {
        Self { nbhd: vec![PointSet::full(n); n] }
    }

    /// Two points, opens `∅, {1}, {0,1}`.
    pub fn sierpinski() -> Self {
        Self { nbhd: vec![PointSet::full(2), PointSet::singleton(1)] }
    }

    pub fn len(&self) -> usize {
        self.nbhd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nbhd.is_empty()
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn minimal_open(&self, x: usize) -> &PointSet {
        &self.nbhd[x]
    }

    pub fn neighbourhoods(&self) -> &[PointSet] {
        &self.nbhd
    }

    pub fn contains_set(&self, a: &PointSet) -> bool {
        a.bound() <= self.len()
    }

    pub fn is_open(&self, a: &PointSet) -> bool {
        self.contains_set(a) && a.iter().all(|x| self.nbhd[x].is_subset(a))
    }

    /// Smallest open set containing `a`.
    pub fn open_hull(&self, a: &PointSet) -> PointSet {
        a.iter().fold(PointSet::new(), |acc, x| acc.union(&self.nbhd[x]))
    }

    /// All open sets in canonical order.
    pub fn opens(&self) -> Result<Vec<PointSet>> {
        let limit = Guards::current().max_items;
        let mut family: BTreeSet<PointSet> = BTreeSet::from([PointSet::new()]);
        for u in &self.nbhd {
            let grown: Vec<PointSet> = family.iter().map(|a| a.union(u)).collect();
            family.extend(grown);
            if family.len() > limit {
                return Err(Error::guard("open sets of a space", limit));
            }
        }
        let mut out: Vec<PointSet> = family.into_iter().collect();
        canonical_sort(&mut out);
        Ok(out)
    }

    /// Subspace on `a`. Point `i` of the result is the `i`-th smallest
    /// element of `a`.
    pub fn subspace(&self, a: &PointSet) -> FiniteSpace {
        let pts = a.to_vec();
        let pos = position_map(&pts, self.len());
        let nbhd = pts
            .iter()
            .map(|&x| self.nbhd[x].iter().filter_map(|y| pos[y]).collect())
            .collect();
        FiniteSpace { nbhd }
    }

    /// Product space. Point `(i, j)` is numbered `i * other.len() + j`.
    pub fn product(&self, other: &FiniteSpace) -> FiniteSpace {
        let m = other.len();
        let mut nbhd = Vec::with_capacity(self.len() * m);
        for u in &self.nbhd {
            for v in &other.nbhd {
                nbhd.push(u.iter().flat_map(|i| v.iter().map(move |j| i * m + j)).collect());
            }
        }
        FiniteSpace { nbhd }
    }

    /// Extracts a finite subcover of `k` from `cover`, returning indices into
    /// `cover`. Returns `None` if `cover` does not consist of open sets
    /// covering `k`.
    pub fn finite_subcover(&self, k: &PointSet, cover: &[PointSet]) -> Option<Vec<usize>> {
        if !cover.iter().all(|c| self.is_open(c)) {
            return None;
        }
        let mut chosen = BTreeSet::new();
        for x in k.iter() {
            chosen.insert(cover.iter().position(|c| c.contains(x))?);
        }
        Some(chosen.into_iter().collect())
    }

    /// Compactness of `k`: the cover of `k` by minimal neighbourhoods refines
    /// every open cover, so `k` is compact iff that cover has a finite
    /// subcover.
    pub fn is_compact(&self, k: &PointSet) -> bool {
        if !self.contains_set(k) {
            return false;
        }
        let cover: Vec<PointSet> = k.iter().map(|x| self.nbhd[x].clone()).collect();
        self.finite_subcover(k, &cover).is_some()
    }

    /// Distinct points can be separated by disjoint open sets. It suffices to
    /// test minimal neighbourhoods.
    pub fn is_hausdorff(&self) -> bool {
        (0..self.len()).all(|x| (0..x).all(|y| self.nbhd[x].is_disjoint(&self.nbhd[y])))
    }

    pub fn is_discrete(&self) -> bool {
        self.nbhd.iter().enumerate().all(|(x, u)| u.len() == 1 && u.contains(x))
    }

    /// Every point of a finite space has a compact neighbourhood, so local
    /// compactness plus Hausdorff reduces to Hausdorff.
    pub fn is_locally_compact_hausdorff(&self) -> bool {
        self.is_hausdorff()
    }
}

pub(crate) fn position_map(pts: &[usize], n: usize) -> Vec<Option<usize>> {
    let mut pos = vec![None; n];
    for (i, &x) in pts.iter().enumerate() {
        pos[x] = Some(i);
    }
    pos
}

pub(crate) fn same_space(a: &Arc<FiniteSpace>, b: &Arc<FiniteSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A continuous map defined on an open subset of its source.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    source: Arc<FiniteSpace>,
    target: Arc<FiniteSpace>,
    values: Vec<Option<usize>>,
}

impl std::fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pairs: Vec<(usize, usize)> = self.pairs().collect();
        write!(f, "PartialMap{pairs:?}")
    }
}

impl PartialMap {
    /// Validates that the domain is open, values lie in the target and the map
    /// is continuous.
    pub fn new(
        source: Arc<FiniteSpace>,
        target: Arc<FiniteSpace>,
        values: Vec<Option<usize>>,
    ) -> Result<Self> {
        if values.len() != source.len() {
            return Err(Error::InvalidPartialMap(format!(
                "{} values for a source with {} points",
                values.len(),
                source.len()
            )));
        }
        if let Some(bad) = values.iter().flatten().find(|&&y| y >= target.len()) {
            return Err(Error::InvalidPartialMap(format!("value {bad} outside the target")));
        }
        let m = Self { source, target, values };
        if !m.source.is_open(&m.domain()) {
            return Err(Error::InvalidPartialMap("domain is not open".into()));
        }
        // Continuity on a finite space: f(U_x) ⊆ U_{f(x)} for every x in the
        // domain. The preimage of U_{f(x)} must be an open set containing x.
        for (x, y) in m.pairs() {
            let uy = m.target.minimal_open(y);
            if m.source.minimal_open(x).iter().any(|z| !m.values[z].is_some_and(|v| uy.contains(v))) {
                return Err(Error::NotContinuous { point: x });
            }
        }
        Ok(m)
    }

    pub fn from_pairs(
        source: Arc<FiniteSpace>,
        target: Arc<FiniteSpace>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let mut values = vec![None; source.len()];
        for &(x, y) in pairs {
            if x >= values.len() {
                return Err(Error::InvalidPartialMap(format!("point {x} outside the source")));
            }
            values[x] = Some(y);
        }
        Self::new(source, target, values)
    }

    pub fn identity(space: Arc<FiniteSpace>) -> Self {
        let values = (0..space.len()).map(Some).collect();
        Self { source: space.clone(), target: space, values }
    }

    pub fn empty(source: Arc<FiniteSpace>, target: Arc<FiniteSpace>) -> Self {
        let values = vec![None; source.len()];
        Self { source, target, values }
    }

    /// Identity restricted to an open set.
    pub fn restricted_identity(space: Arc<FiniteSpace>, open: &PointSet) -> Result<Self> {
        let values = (0..space.len()).map(|x| open.contains(x).then_some(x)).collect();
        Self::new(space.clone(), space, values)
    }

    pub fn source(&self) -> &Arc<FiniteSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSpace> {
        &self.target
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.values.get(x).copied().flatten()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.values.iter().enumerate().filter_map(|(x, v)| v.map(|y| (x, y)))
    }

    pub fn domain(&self) -> PointSet {
        self.pairs().map(|(x, _)| x).collect()
    }

    pub fn range(&self) -> PointSet {
        self.pairs().map(|(_, y)| y).collect()
    }

    pub fn image(&self, a: &PointSet) -> PointSet {
        a.iter().filter_map(|x| self.apply(x)).collect()
    }

    pub fn preimage(&self, b: &PointSet) -> PointSet {
        self.pairs().filter(|&(_, y)| b.contains(y)).map(|(x, _)| x).collect()
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = PointSet::new();
        for (_, y) in self.pairs() {
            if seen.contains(y) {
                return false;
            }
            seen.insert(y);
        }
        true
    }

    /// Images of open subsets of the domain are open.
    pub fn is_open_map(&self) -> bool {
        self.pairs().all(|(x, _)| self.target.is_open(&self.image(self.source.minimal_open(x))))
    }

    /// Injective, open range, continuous inverse.
    pub fn is_partial_homeomorphism(&self) -> bool {
        self.inverse().is_ok()
    }

    pub fn inverse(&self) -> Result<PartialMap> {
        if !self.is_injective() {
            return Err(Error::InvalidPartialMap("map is not injective".into()));
        }
        let mut values = vec![None; self.target.len()];
        for (x, y) in self.pairs() {
            values[y] = Some(x);
        }
        PartialMap::new(self.target.clone(), self.source.clone(), values)
    }

    /// Preimages of compact sets are compact.
    ///
    /// On finite spaces every subset is compact, so this is a formality; it is
    /// still computed by quantifying over subsets of the target. Above the
    /// subset guard only minimal neighbourhoods, singletons and the whole
    /// target are tried.
    pub fn is_proper(&self) -> bool {
        let n = self.target.len();
        let ok = |k: &PointSet| !self.target.is_compact(k) || self.source.is_compact(&self.preimage(k));
        if n <= Guards::current().max_subset_points {
            (0u64..1 << n).all(|mask| ok(&mask_to_set(mask)))
        } else {
            ok(&self.target.points())
                && (0..n).all(|y| ok(&PointSet::singleton(y)) && ok(self.target.minimal_open(y)))
        }
    }
}

pub(crate) fn mask_to_set(mask: u64) -> PointSet {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// `g ∘ f`, defined on `f⁻¹(D_g)`.
pub fn compose(g: &PartialMap, f: &PartialMap) -> Result<PartialMap> {
    if !same_space(&f.target, &g.source) {
        return Err(Error::EndpointMismatch("partial map composition".into()));
    }
    let values = f.values.iter().map(|v| v.and_then(|y| g.apply(y))).collect();
    Ok(PartialMap { source: f.source.clone(), target: g.target.clone(), values })
}

/// All partial homeomorphisms of `x` between open subsets, in canonical order:
/// by domain (canonical open order), then by value list.
pub fn partial_homeos(x: &Arc<FiniteSpace>) -> Result<Vec<PartialMap>> {
    let limit = Guards::current().max_items;
    let n = x.len();
    let mut out = Vec::new();
    for dom in x.opens()? {
        let pts = dom.to_vec();
        let mut vals: Vec<usize> = Vec::with_capacity(pts.len());
        let mut used = vec![false; n];
        let mut err = None;
        extend_injections(&pts, &mut vals, &mut used, &mut |vals| {
            let mut values = vec![None; n];
            for (&p, &v) in pts.iter().zip(vals) {
                values[p] = Some(v);
            }
            if let Ok(m) = PartialMap::new(x.clone(), x.clone(), values) {
                if m.target.is_open(&m.range()) && m.is_partial_homeomorphism() {
                    if out.len() >= limit {
                        err = Some(Error::guard("partial homeomorphisms", limit));
                        return false;
                    }
                    out.push(m);
                }
            }
            true
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(out)
}

fn extend_injections(
    pts: &[usize],
    vals: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if vals.len() == pts.len() {
        return visit(vals);
    }
    for y in 0..used.len() {
        if !used[y] {
            used[y] = true;
            vals.push(y);
            let go_on = extend_injections(pts, vals, used, visit);
            vals.pop();
            used[y] = false;
            if !go_on {
                return false;
            }
        }
    }
    true
}

/// `X ∪ {∞}` with `∞` numbered `X.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compactification {
    pub space: Arc<FiniteSpace>,
    pub infinity: usize,
}

/// One-point compactification of a locally compact Hausdorff space.
///
/// Opens are those of `X` together with `{∞} ∪ (X ∖ K)` for compact `K ⊆ X`.
pub fn one_point_compactification(x: &FiniteSpace) -> Result<Compactification> {
    if !x.is_locally_compact_hausdorff() {
        return Err(Error::NonDiscreteSpace);
    }
    let n = x.len();
    let guard = Guards::current().max_subset_points;
    if n > guard {
        return Err(Error::guard("one-point compactification", guard));
    }
    let mut gens: Vec<PointSet> = x.neighbourhoods().to_vec();
    for mask in 0u64..1 << n {
        let k = mask_to_set(mask);
        if x.is_compact(&k) {
            let mut g = PointSet::full(n).difference(&k);
            g.insert(n);
            gens.push(g);
        }
    }
    Ok(Compactification { space: Arc::new(FiniteSpace::generated(n + 1, &gens)), infinity: n })
}

/// Extends a proper partial map to a basepoint-preserving total map between
/// one-point compactifications, sending everything outside the domain to `∞`.
pub fn lift(f: &PartialMap) -> Result<PartialMap> {
    if !f.is_proper() {
        return Err(Error::InvalidPartialMap("map is not proper".into()));
    }
    let xt = one_point_compactification(&f.source)?;
    let yt = one_point_compactification(&f.target)?;
    let mut values: Vec<Option<usize>> =
        f.values.iter().map(|v| Some(v.unwrap_or(yt.infinity))).collect();
    values.push(Some(yt.infinity));
    PartialMap::new(xt.space, yt.space, values)
}

/// Inverse of [`lift`]: restricts a basepoint-preserving total map to the
/// points not sent to `∞`.
pub fn restrict(g: &PartialMap, xt: &Compactification, yt: &Compactification) -> Result<PartialMap> {
    if !same_space(&g.source, &xt.space) || !same_space(&g.target, &yt.space) {
        return Err(Error::EndpointMismatch("restriction of a based map".into()));
    }
    if !g.is_total() || g.apply(xt.infinity) != Some(yt.infinity) {
        return Err(Error::InvalidPartialMap("map is not total and basepoint-preserving".into()));
    }
    let x = xt.space.subspace(&PointSet::full(xt.infinity));
    let y = yt.space.subspace(&PointSet::full(yt.infinity));
    let values = g.values[..xt.infinity]
        .iter()
        .map(|v| v.filter(|&w| w != yt.infinity))
        .collect();
    PartialMap::new(Arc::new(x), Arc::new(y), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    #[test]
    fn sierpinski_opens() {
        let s = FiniteSpace::sierpinski();
        assert_eq!(s.opens().unwrap(), vec![set(&[]), set(&[1]), set(&[0, 1])]);
        assert!(!s.is_hausdorff());
        assert!(FiniteSpace::from_opens(2, &[set(&[]), set(&[0]), set(&[1])]).is_err());
    }

    #[test]
    fn from_opens_round_trips_through_neighbourhoods() {
        let opens = vec![set(&[]), set(&[0]), set(&[0, 1]), set(&[0, 2]), set(&[0, 1, 2])];
        let s = FiniteSpace::from_opens(3, &opens).unwrap();
        assert_eq!(s.opens().unwrap(), opens);
    }

    #[test]
    fn product_and_subspace() {
        let s = FiniteSpace::sierpinski();
        let p = s.product(&s);
        assert_eq!(p.opens().unwrap().len(), 6);
        let sub = p.subspace(&set(&[1, 2]));
        assert!(sub.is_discrete());
    }

    #[test]
    fn composition_domain_is_preimage() {
        let x = Arc::new(FiniteSpace::discrete(3));
        let f = PartialMap::from_pairs(x.clone(), x.clone(), &[(0, 1), (1, 2)]).unwrap();
        let g = PartialMap::from_pairs(x.clone(), x.clone(), &[(2, 0)]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.domain(), f.preimage(&g.domain()));
        assert_eq!(gf.apply(1), Some(0));
    }

    #[test]
    fn discontinuous_map_rejected() {
        let s = Arc::new(FiniteSpace::sierpinski());
        // Swapping the points sends the open {1} to the non-open {0}.
        let swap = PartialMap::from_pairs(s.clone(), s.clone(), &[(0, 1), (1, 0)]);
        assert!(matches!(swap, Err(Error::NotContinuous { .. })));
    }

    #[test]
    fn compactification_of_discrete_is_discrete() {
        let c = one_point_compactification(&FiniteSpace::discrete(3)).unwrap();
        assert!(c.space.is_discrete());
        assert_eq!(c.infinity, 3);
        assert!(one_point_compactification(&FiniteSpace::sierpinski()).is_err());
    }
}
