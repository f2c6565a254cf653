use std::sync::Arc;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::catalog::Catalog;
use crate::error::Result;
use crate::groupoid::{CoupleMorphism, GroupoidHom, TopGroupoid};
use crate::semigroup::{enumerate_homs, Action, ActionMorphism, InverseSemigroup, SemigroupHom};
use crate::topology::{FiniteSpace, PartialMap};

/// Instances fed to the law checkers. Endpoints of every morphism are
/// recorded as positions in the object lists, so composable chains can be
/// found without structural comparisons.
#[derive(Debug, Clone)]
pub struct Pool {
    pub seed: u64,
    pub semigroups: Vec<Arc<InverseSemigroup>>,
    pub homs: Vec<SemigroupHom>,
    pub hom_ends: Vec<(usize, usize)>,
    pub actions: Vec<Arc<Action>>,
    pub morphisms: Vec<ActionMorphism>,
    pub morphism_ends: Vec<(usize, usize)>,
    pub groupoids: Vec<Arc<TopGroupoid>>,
    pub couples: Vec<CoupleMorphism>,
    pub couple_ends: Vec<(usize, usize)>,
}

/// Homomorphisms between semigroups of order at most this are kept
/// exhaustively; larger pairs are sampled.
const EXHAUSTIVE_ORDER: usize = 3;
const SAMPLED_PER_PAIR: usize = 8;
/// Largest `K` used when generating couples.
const MAX_COUPLE_K: usize = 6;
/// Couples kept per choice of `K`, source and target.
const COUPLES_PER_TRIPLE: usize = 4;

pub(crate) fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Keeps `cap` items chosen by `rng`, in their original order.
pub(crate) fn sample<T>(items: Vec<T>, cap: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    if items.len() <= cap {
        return items;
    }
    let mut keep = index::sample(rng, items.len(), cap).into_vec();
    keep.sort_unstable();
    let mut slots: Vec<Option<T>> = items.into_iter().map(Some).collect();
    keep.into_iter().map(|i| slots[i].take().expect("distinct indices")).collect()
}

/// Index chains `m_1, …, m_len` with `target(m_i) = source(m_{i+1})`.
pub fn chains(ends: &[(usize, usize)], len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_chain(ends, len, &|_| true, &mut |c| out.push(c.to_vec()));
    out
}

/// Visits every chain of length `len` through indices accepted by `keep`,
/// in lexicographic order.
pub(crate) fn for_each_chain(
    ends: &[(usize, usize)],
    len: usize,
    keep: &dyn Fn(usize) -> bool,
    visit: &mut dyn FnMut(&[usize]),
) {
    let mut by_source: Vec<Vec<usize>> = Vec::new();
    for (i, &(s, _)) in ends.iter().enumerate().filter(|&(i, _)| keep(i)) {
        if by_source.len() <= s {
            by_source.resize(s + 1, Vec::new());
        }
        by_source[s].push(i);
    }
    fn go(
        ends: &[(usize, usize)],
        by_source: &[Vec<usize>],
        len: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if cur.len() == len {
            visit(cur);
            return;
        }
        let last = ends[*cur.last().expect("non-empty")].1;
        for &j in by_source.get(last).map(Vec::as_slice).unwrap_or(&[]) {
            cur.push(j);
            go(ends, by_source, len, cur, visit);
            cur.pop();
        }
    }
    for i in (0..ends.len()).filter(|&i| keep(i)) {
        let mut cur = vec![i];
        go(ends, &by_source, len, &mut cur, visit);
    }
}

/// A uniform sample of at most `cap` chains, in lexicographic order, drawn
/// without materialising the full list.
pub(crate) fn sample_chains(
    ends: &[(usize, usize)],
    len: usize,
    keep: &dyn Fn(usize) -> bool,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<usize>> {
    let mut seen = 0usize;
    let mut reservoir: Vec<Vec<usize>> = Vec::with_capacity(cap);
    for_each_chain(ends, len, keep, &mut |c| {
        seen += 1;
        if reservoir.len() < cap {
            reservoir.push(c.to_vec());
        } else {
            let j = rng.gen_range(0..seen);
            if j < cap {
                reservoir[j] = c.to_vec();
            }
        }
    });
    reservoir.sort_unstable();
    reservoir
}

/// Every partial map `y ⇀ x` that is a valid `PartialMap`.
fn partial_maps(
    y: &Arc<FiniteSpace>,
    x: &Arc<FiniteSpace>,
) -> Vec<PartialMap> {
    let (ny, nx) = (y.len(), x.len());
    let total = (nx + 1).pow(ny as u32);
    (0..total)
        .filter_map(|mut code| {
            let values = (0..ny)
                .map(|_| {
                    let v = code % (nx + 1);
                    code /= nx + 1;
                    (v < nx).then_some(v)
                })
                .collect();
            PartialMap::new(y.clone(), x.clone(), values).ok()
        })
        .collect()
}

impl Pool {
    /// The default pool over the catalog. Generation is exhaustive for small
    /// instances and sampled with `seed` elsewhere.
    pub fn from_catalog(c: &Catalog, seed: u64) -> Result<Pool> {
        let mut r = rng(seed, 1);
        let semigroups: Vec<_> = c.semigroups().map(|(_, s)| s.clone()).collect();
        let mut homs = Vec::new();
        let mut hom_ends = Vec::new();
        for (i, s) in semigroups.iter().enumerate() {
            for (j, t) in semigroups.iter().enumerate() {
                let mut hs = enumerate_homs(s, t)?;
                if s.order().max(t.order()) > EXHAUSTIVE_ORDER {
                    hs = sample(hs, SAMPLED_PER_PAIR, &mut r);
                }
                hom_ends.extend(std::iter::repeat((i, j)).take(hs.len()));
                homs.extend(hs);
            }
        }

        let actions: Vec<_> = c.actions().map(|(_, a)| a.clone()).collect();
        let mut morphisms = Vec::new();
        let mut morphism_ends = Vec::new();
        for (i, a) in actions.iter().enumerate() {
            for (j, b) in actions.iter().enumerate() {
                let (s, t) = (a.semigroup(), b.semigroup());
                let mut thetas = enumerate_homs(s, t)?;
                if s.order().max(t.order()) > EXHAUSTIVE_ORDER {
                    thetas = sample(thetas, SAMPLED_PER_PAIR, &mut r);
                }
                let xis = partial_maps(b.space(), a.space());
                let mut found = Vec::new();
                for theta in &thetas {
                    for xi in &xis {
                        if let Ok(m) = ActionMorphism::new(a.clone(), b.clone(), theta.clone(), xi.clone()) {
                            found.push(m);
                        }
                    }
                }
                let found = sample(found, SAMPLED_PER_PAIR, &mut r);
                morphism_ends.extend(std::iter::repeat((i, j)).take(found.len()));
                morphisms.extend(found);
            }
        }

        let groupoids: Vec<_> = c.groupoids().map(|(_, g)| g.clone()).collect();
        let small: Vec<usize> = (0..groupoids.len()).filter(|&i| groupoids[i].len() <= MAX_COUPLE_K).collect();
        // Each small groupoid also appears as K under a seeded relabelling,
        // which yields couples equal to others up to equivalence only.
        let mut ks: Vec<Arc<TopGroupoid>> = small.iter().map(|&i| groupoids[i].clone()).collect();
        for &i in &small {
            let g = &groupoids[i];
            if g.len() > 1 {
                let perm = index::sample(&mut r, g.len(), g.len()).into_vec();
                ks.push(Arc::new(g.relabel(&perm)?));
            }
        }
        let mut couples = Vec::new();
        let mut couple_ends = Vec::new();
        for k in &ks {
            let legs: Vec<(Vec<GroupoidHom>, Vec<GroupoidHom>)> = small
                .iter()
                .map(|&i| {
                    let homs = GroupoidHom::enumerate(k, &groupoids[i])?;
                    let phis = homs.iter().filter(|h| h.is_fibrewise_bijective()).cloned().collect();
                    let psis = homs
                        .into_iter()
                        .filter(|h| {
                            let u = h.unit_part();
                            u.is_injective() && u.is_open_map()
                        })
                        .collect();
                    Ok((phis, psis))
                })
                .collect::<Result<_>>()?;
            for (gi, (phis, _)) in small.iter().zip(&legs) {
                for (hi, (_, psis)) in small.iter().zip(&legs) {
                    let found: Vec<CoupleMorphism> = phis
                        .iter()
                        .flat_map(|phi| psis.iter().map(move |psi| (phi, psi)))
                        .filter_map(|(phi, psi)| CoupleMorphism::new(phi.clone(), psi.clone()).ok())
                        .collect();
                    let found = sample(found, COUPLES_PER_TRIPLE, &mut r);
                    couple_ends.extend(std::iter::repeat((*gi, *hi)).take(found.len()));
                    couples.extend(found);
                }
            }
        }

        Ok(Pool {
            seed,
            semigroups,
            homs,
            hom_ends,
            actions,
            morphisms,
            morphism_ends,
            groupoids,
            couples,
            couple_ends,
        })
    }
}
