use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::semigroup::InverseSemigroup;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// The table of the semigroup obtained by renaming `a` to `p[a]`.
pub fn relabel_table(n: usize, table: &[usize], p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[p[a] * n + p[b]] = p[table[a * n + b]];
        }
    }
    out
}

/// Lexicographically least relabelling of a Cayley table, over all `n!`
/// permutations.
pub fn canonical_table(n: usize, table: &[usize]) -> Vec<usize> {
    permutations(n)
        .iter()
        .map(|p| relabel_table(n, table, p))
        .min()
        .expect("at least one permutation")
}

/// Every associative Cayley table on `0..n`, by filling cells in row-major
/// order and rejecting as soon as a fully determined triple fails.
fn associative_tables(n: usize) -> Vec<Vec<usize>> {
    const UNSET: usize = usize::MAX;

    fn ok(n: usize, t: &[usize]) -> bool {
        let m = |a: usize, b: usize| t[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let bc = m(b, c);
                    if bc == UNSET {
                        continue;
                    }
                    let (l, r) = (m(ab, c), m(a, bc));
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(n: usize, t: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == t.len() {
            out.push(t.clone());
            return;
        }
        for v in 0..n {
            t[k] = v;
            if ok(n, t) {
                go(n, t, k + 1, out);
            }
        }
        t[k] = UNSET;
    }

    let mut out = Vec::new();
    go(n, &mut vec![UNSET; n * n], 0, &mut out);
    out
}

/// Inverse semigroups of order `n` up to isomorphism, each given by its
/// canonical table, in increasing order of that table.
pub fn enumerate_inverse_semigroups(n: usize) -> Result<Vec<InverseSemigroup>> {
    let limit = Guards::current().max_enumeration_order;
    if n > limit {
        return Err(Error::guard("semigroup enumeration order", limit));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let canon: BTreeSet<Vec<usize>> = associative_tables(n)
        .into_iter()
        .filter(|t| InverseSemigroup::from_flat(n, t.clone()).is_ok())
        .map(|t| canonical_table(n, &t))
        .collect();
    canon.into_iter().map(|t| InverseSemigroup::from_flat(n, t)).collect()
}
