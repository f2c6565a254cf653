//! Finite inverse semigroups, their homomorphisms, actions on finite spaces,
//! and the spectral action on characters of the idempotent semilattice.

mod action;
mod spectral;

pub use action::{
    compose_action_morphisms, i_of, natural_action, open_semigroup, ox_action, ox_morphism,
    Action, ActionMorphism, PartialHomeos,
};
pub(crate) use action::compose_action_morphisms_with;
pub use spectral::{characters, sp_hom, spectral_action, Characters};
pub(crate) use spectral::{sp_hom_with, spectral_action_with};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::guards::Guards;

/// A finite inverse semigroup given by its Cayley table on `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InverseSemigroup {
    n: usize,
    table: Vec<usize>,
    star: Vec<usize>,
    idempotents: Vec<usize>,
}

impl std::fmt::Debug for InverseSemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InverseSemigroup")
            .field("order", &self.n)
            .field("table", &self.rows())
            .finish()
    }
}

impl InverseSemigroup {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, _)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidTable(format!("row {i} does not have {n} entries")));
        }
        Self::from_flat(n, rows.concat())
    }

    /// Validates associativity and unique inverses, reporting the first
    /// failing triple or element.
    pub fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySemigroup);
        }
        if table.len() != n * n {
            return Err(Error::InvalidTable(format!("expected {} entries", n * n)));
        }
        if let Some(bad) = table.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let m = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::NotAssociative { triple: (a, b, c) });
                    }
                }
            }
        }
        let mut star = Vec::with_capacity(n);
        for s in 0..n {
            let inv: Vec<usize> =
                (0..n).filter(|&t| m(m(s, t), s) == s && m(m(t, s), t) == t).collect();
            if inv.len() != 1 {
                return Err(Error::NoUniqueInverse { element: s, count: inv.len() });
            }
            star.push(inv[0]);
        }
        let idempotents = (0..n).filter(|&e| m(e, e) == e).collect();
        Ok(Self { n, table, star, idempotents })
    }

    /// The cyclic group `Z_n`, written additively.
    pub fn cyclic_group(n: usize) -> Self {
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat(n, table).expect("cyclic group")
    }

    /// The chain semilattice `0 > 1 > … > k-1` with product `max`.
    pub fn chain(k: usize) -> Self {
        let table = (0..k * k).map(|i| (i / k).max(i % k)).collect();
        Self::from_flat(k, table).expect("chain semilattice")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// The natural partial order: `s ≤ t` iff `s = t s* s`.
    pub fn leq(&self, s: usize, t: usize) -> bool {
        s == self.mul(t, self.mul(self.star(s), s))
    }

    pub fn is_group(&self) -> bool {
        self.idempotents.len() == 1
    }
}

pub(crate) fn same_semigroup(a: &Arc<InverseSemigroup>, b: &Arc<InverseSemigroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A semigroup homomorphism `θ: S → T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupHom {
    source: Arc<InverseSemigroup>,
    target: Arc<InverseSemigroup>,
    map: Vec<usize>,
}

impl SemigroupHom {
    pub fn new(
        source: Arc<InverseSemigroup>,
        target: Arc<InverseSemigroup>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&v| v >= target.order()) {
            return Err(Error::InvalidTable("homomorphism has the wrong shape".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotHomomorphism { pair: (a, b) });
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(s: Arc<InverseSemigroup>) -> Self {
        let map = (0..s.order()).collect();
        Self { source: s.clone(), target: s, map }
    }

    pub fn source(&self) -> &Arc<InverseSemigroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<InverseSemigroup> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SemigroupHom) -> Result<SemigroupHom> {
        if !same_semigroup(&self.target, &g.source) {
            return Err(Error::EndpointMismatch("semigroup homomorphism composition".into()));
        }
        let map = self.map.iter().map(|&s| g.map[s]).collect();
        Ok(SemigroupHom { source: self.source.clone(), target: g.target.clone(), map })
    }

    /// Homomorphisms of inverse semigroups preserve `*`.
    pub fn preserves_star(&self) -> bool {
        (0..self.source.order()).all(|s| self.map[self.source.star(s)] == self.target.star(self.map[s]))
    }
}

/// Every homomorphism `S → T`, found by backtracking over partial
/// assignments with multiplicativity pruning. Output is in lexicographic
/// order of the value lists.
pub fn enumerate_homs(
    s: &Arc<InverseSemigroup>,
    t: &Arc<InverseSemigroup>,
) -> Result<Vec<SemigroupHom>> {
    let limit = Guards::current().max_items;
    let n = s.order();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];

    fn consistent(s: &InverseSemigroup, t: &InverseSemigroup, map: &[usize], k: usize) -> bool {
        // Check every fully assigned product in which k is a factor or the
        // result.
        for x in 0..=k {
            for y in 0..=k {
                let p = s.mul(x, y);
                if (x == k || y == k || p == k) && p <= k && map[p] != t.mul(map[x], map[y]) {
                    return false;
                }
            }
        }
        true
    }

    fn go(
        s: &Arc<InverseSemigroup>,
        t: &Arc<InverseSemigroup>,
        map: &mut Vec<usize>,
        k: usize,
        out: &mut Vec<SemigroupHom>,
        limit: usize,
    ) -> Result<()> {
        if k == map.len() {
            if out.len() >= limit {
                return Err(Error::guard("semigroup homomorphisms", limit));
            }
            out.push(SemigroupHom::new(s.clone(), t.clone(), map.clone())?);
            return Ok(());
        }
        for v in 0..t.order() {
            map[k] = v;
            if consistent(s, t, map, k) {
                go(s, t, map, k + 1, out, limit)?;
            }
        }
        map[k] = usize::MAX;
        Ok(())
    }

    go(s, t, &mut map, 0, &mut out, limit)?;
    Ok(out)
}

/// The idempotent semilattice `E(S)` as a semigroup, with its inclusion into
/// `S`. Element `i` of `E(S)` is the `i`-th idempotent of `S`.
pub fn idempotent_subsemigroup(s: &Arc<InverseSemigroup>) -> Result<(Arc<InverseSemigroup>, SemigroupHom)> {
    let e = s.idempotents();
    let pos = |x: usize| e.iter().position(|&y| y == x).expect("idempotents are closed");
    let k = e.len();
    let table = (0..k * k).map(|i| pos(s.mul(e[i / k], e[i % k]))).collect();
    let es = Arc::new(InverseSemigroup::from_flat(k, table)?);
    let inc = SemigroupHom::new(es.clone(), s.clone(), e.to_vec())?;
    Ok((es, inc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_associative() {
        // Left-zero on {0,1} with one cell changed.
        let r = InverseSemigroup::from_rows(&[vec![0, 1], vec![0, 0]]);
        assert!(matches!(r, Err(Error::NotAssociative { .. }) | Err(Error::NoUniqueInverse { .. })));
        assert!(matches!(InverseSemigroup::from_rows(&[]), Err(Error::EmptySemigroup)));
    }

    #[test]
    fn left_zero_band_has_no_unique_inverses() {
        // xy = x is associative, but every element is an inverse of every other.
        let r = InverseSemigroup::from_rows(&[vec![0, 0], vec![1, 1]]);
        assert_eq!(r, Err(Error::NoUniqueInverse { element: 0, count: 2 }));
    }

    #[test]
    fn small_catalog_shapes() {
        let z3 = InverseSemigroup::cyclic_group(3);
        assert!(z3.is_group());
        assert_eq!(z3.star(1), 2);
        let c = InverseSemigroup::chain(3);
        assert_eq!(c.idempotents(), &[0, 1, 2]);
        assert!(c.leq(2, 0));
        assert!(!c.leq(0, 2));
    }

    #[test]
    fn homs_from_chain_to_group() {
        let e2 = Arc::new(InverseSemigroup::chain(2));
        let z2 = Arc::new(InverseSemigroup::cyclic_group(2));
        let homs = enumerate_homs(&e2, &z2).unwrap();
        // Both elements are idempotent, and Z2 has one idempotent.
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].map(), &[0, 0]);
    }
}
