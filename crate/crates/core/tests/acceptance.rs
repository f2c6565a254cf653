//! The eight acceptance criteria, run in order with one line of output each.
//! Every comparison is exact; each criterion also has a wall-clock budget.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use etale::functors::{
    check_counit_naturality, check_triangle_left, check_triangle_right, check_unit_naturality, transformation_groupoid,
    universal_groupoid,
};
use etale::groupoid::{find_equivalence, open_bisections, pullback, CoupleMorphism, GroupoidHom, TopGroupoid};
use etale::laws::{
    catalog, check_adjunction, check_category, check_functor, enumerate_inverse_semigroups, Category, Functor,
    Mutation, Pool,
};
use etale::semigroup::{characters, enumerate_homs, idempotent_subsemigroup, InverseSemigroup, SemigroupHom};
use etale::star_algebra::{
    check_paterson_naturality, cstar_on_couple, faithfulness_experiment, groupoid_algebra, paterson_iso, pi_psi,
    sigma_phi, validate_star_hom, Scalar,
};
use etale::PointSet;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn paterson_isomorphism() -> Outcome {
    let c = catalog();
    for name in ["Z2", "Z3", "E2", "CHAIN3", "CHAIN4", "I2"] {
        let s = c.semigroup(name).map_err(|e| e.to_string())?;
        let (iota, gu) = paterson_iso(&s).map_err(|e| format!("{name}: {e}"))?;
        validate_star_hom(&iota.source, &iota.target, &iota.matrix).map_err(|e| format!("{name}: {e}"))?;
        let n = s.order();
        ensure(iota.matrix.rows() == n && iota.matrix.cols() == n, || format!("{name}: matrix is not {n}×{n}"))?;
        ensure(iota.matrix.rank() == n, || format!("{name}: rank {}", iota.matrix.rank()))?;
        let dim = groupoid_algebra(&gu.groupoid).map_err(|e| e.to_string())?.dim();
        ensure(dim == n, || format!("{name}: dim Q(Gu(S)) = {dim}, |S| = {n}"))?;
    }
    Ok("6 semigroups".into())
}

fn find_hom(s: &Arc<InverseSemigroup>, t: &Arc<InverseSemigroup>, map: &[usize]) -> Result<SemigroupHom, String> {
    SemigroupHom::new(s.clone(), t.clone(), map.to_vec()).map_err(|e| e.to_string())
}

fn paterson_naturality() -> Outcome {
    let c = catalog();
    let sg = |n: &str| c.semigroup(n).map_err(|e| e.to_string());
    let (z2, e2, i2) = (sg("Z2")?, sg("E2")?, sg("I2")?);
    let (_, inclusion) = idempotent_subsemigroup(&i2).map_err(|e| e.to_string())?;
    let identity_of_z2 = z2.idempotents()[0];
    let collapse = find_hom(&e2, &z2, &[identity_of_z2; 2])?;
    let mut homs = vec![inclusion, collapse];
    for a in ["Z2", "Z3", "E2", "CHAIN3", "I2"] {
        for b in ["Z2", "E2", "CHAIN3", "I2"] {
            homs.extend(enumerate_homs(&sg(a)?, &sg(b)?).map_err(|e| e.to_string())?);
        }
    }
    let mut distinct = BTreeSet::new();
    for theta in &homs {
        if let Some(cx) = check_paterson_naturality(theta).map_err(|e| e.to_string())? {
            return Err(format!("square fails: {}", serde_json::to_string(&cx).unwrap()));
        }
        distinct.insert((theta.source().table().to_vec(), theta.target().table().to_vec(), theta.map().to_vec()));
    }
    ensure(distinct.len() >= 5, || format!("only {} homs", distinct.len()))?;
    Ok(format!("{} homs incl. E(I2)→I2 and E2→Z2", distinct.len()))
}

fn adjunction() -> Outcome {
    let c = catalog();
    let pool = Pool::from_catalog(&c, 0).map_err(|e| e.to_string())?;
    let show = |cx: etale::laws::Counterexample| serde_json::to_string(&cx).unwrap();
    let mut actions = 0;
    for (name, a) in c.actions() {
        if let Some(cx) = check_triangle_left(a).map_err(|e| format!("{name}: {e}"))? {
            return Err(format!("{name}: {}", show(cx)));
        }
        actions += 1;
    }
    let mut groupoids = 0;
    for (name, g) in c.groupoids().filter(|(_, g)| g.len() <= 10) {
        if let Some(cx) = check_triangle_right(g).map_err(|e| format!("{name}: {e}"))? {
            return Err(format!("{name}: {}", show(cx)));
        }
        groupoids += 1;
    }
    for (i, m) in pool.morphisms.iter().enumerate() {
        if let Some(cx) = check_unit_naturality(m).map_err(|e| format!("morphism {i}: {e}"))? {
            return Err(format!("unit naturality, morphism {i}: {}", show(cx)));
        }
    }
    for (i, k) in pool.couples.iter().enumerate() {
        if let Some(cx) = check_counit_naturality(k).map_err(|e| format!("couple {i}: {e}"))? {
            return Err(format!("counit naturality, couple {i}: {}", show(cx)));
        }
    }
    let report = check_adjunction(&pool, None).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{} failures in the adjunction suite", report.failures.len()))?;
    Ok(format!(
        "{actions} actions, {groupoids} groupoids, {} morphisms, {} couples",
        pool.morphisms.len(),
        pool.couples.len()
    ))
}

fn category_and_functor_laws() -> Outcome {
    let pool = Pool::from_catalog(&catalog(), 0).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (cat, objects) in [(Category::Isa, pool.morphisms.len()), (Category::Eg, pool.couples.len())] {
        let r = check_category(cat, &pool, None).map_err(|e| e.to_string())?;
        let triples = r.instances - objects;
        ensure(r.passed(), || format!("{}: {} failures", r.check, r.failures.len()))?;
        ensure(triples >= 100, || format!("{}: {triples} triples", r.check))?;
        parts.push(format!("{} {triples} triples", r.check));
    }
    for (func, objects) in [
        (Functor::Sp, pool.semigroups.len()),
        (Functor::Tg, pool.actions.len()),
        (Functor::Sa, pool.groupoids.len()),
        (Functor::Cstar, pool.groupoids.len()),
        (Functor::Gu, pool.semigroups.len()),
    ] {
        let r = check_functor(func, &pool, None).map_err(|e| e.to_string())?;
        let pairs = r.instances - objects;
        ensure(r.passed(), || format!("{}: {} failures", r.check, r.failures.len()))?;
        ensure(pairs >= 50, || format!("{}: {pairs} pairs", r.check))?;
        parts.push(format!("{} {pairs}", r.check));
    }
    for m in Mutation::ALL {
        let r = m.target().run(&pool, Some(m)).map_err(|e| e.to_string())?;
        ensure(!r.passed(), || format!("mutation {} went undetected by {}", m.name(), r.check))?;
    }
    parts.push(format!("{} mutations detected", Mutation::ALL.len()));
    Ok(parts.join(", "))
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Exhaustive search for a structure-preserving homeomorphism `K₁ → K₂`
/// commuting with both legs.
fn isomorphic_couples(c1: &CoupleMorphism, c2: &CoupleMorphism) -> bool {
    let (k1, k2) = (c1.k(), c2.k());
    k1.len() == k2.len()
        && perms(k1.len()).iter().any(|p| {
            (0..k1.len()).all(|a| {
                c2.phi().apply(p[a]) == c1.phi().apply(a)
                    && c2.psi().apply(p[a]) == c1.psi().apply(a)
                    && k1.is_unit(a) == k2.is_unit(p[a])
                    && k2.topology().minimal_open(p[a]).iter().collect::<BTreeSet<_>>()
                        == k1.topology().minimal_open(a).iter().map(|x| p[x]).collect()
                    && (0..k1.len()).all(|b| k1.mul(a, b).map(|x| p[x]) == k2.mul(p[a], p[b]))
            })
        })
}

fn couple_equivalence() -> Outcome {
    let pool = Pool::from_catalog(&catalog(), 0).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for i in 0..pool.couples.len() {
        for j in i..pool.couples.len() {
            let (a, b) = (&pool.couples[i], &pool.couples[j]);
            if pool.couple_ends[i] != pool.couple_ends[j] || a.k().len() > 6 || b.k().len() > 6 {
                continue;
            }
            let canon = a.canon() == b.canon();
            ensure(canon == isomorphic_couples(a, b), || format!("couples {i}, {j}: canon says {canon}"))?;
            ensure(canon == find_equivalence(a, b).is_some(), || format!("couples {i}, {j}: search disagrees"))?;
            pairs += 1;
        }
    }
    ensure(pairs >= 100, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} pairs"))
}

/// Nonempty up-closed, meet-closed subsets of `E(S)`.
fn filters(s: &InverseSemigroup) -> BTreeSet<Vec<usize>> {
    let e = s.idempotents();
    (1u32..1 << e.len())
        .map(|m| (0..e.len()).filter(|&i| m >> i & 1 == 1).map(|i| e[i]).collect::<Vec<_>>())
        .filter(|f| {
            f.iter().all(|&a| e.iter().all(|&b| s.mul(a, b) != a || f.contains(&b)))
                && f.iter().all(|&a| f.iter().all(|&b| f.contains(&s.mul(a, b))))
        })
        .collect()
}

fn characters_vs_filters() -> Outcome {
    let mut all: Vec<InverseSemigroup> = Vec::new();
    for n in 1..=4 {
        all.extend(enumerate_inverse_semigroups(n).map_err(|e| e.to_string())?);
    }
    all.extend(catalog().semigroups().map(|(_, s)| (**s).clone()));
    let mut checked = 0;
    for s in all.iter().filter(|s| s.idempotents().len() <= 6) {
        let ch = characters(s);
        let supports: Vec<Vec<usize>> = ch.chars.iter().map(PointSet::to_vec).collect();
        let set: BTreeSet<Vec<usize>> = supports.iter().cloned().collect();
        ensure(set.len() == supports.len(), || format!("repeated character in {:?}", s.rows()))?;
        ensure(set == filters(s), || format!("characters differ from filters for {:?}", s.rows()))?;
        checked += 1;
    }
    Ok(format!("{checked} semigroups"))
}

/// All proper couples `G → H` over the small catalog groupoids, one per
/// equivalence class.
fn proper_couples(g: &Arc<TopGroupoid>, h: &Arc<TopGroupoid>) -> Result<Vec<CoupleMorphism>, String> {
    let mut out: Vec<CoupleMorphism> = Vec::new();
    for (_, k) in catalog().groupoids().filter(|(_, k)| k.len() <= 6) {
        let phis = GroupoidHom::enumerate(k, g).map_err(|e| e.to_string())?;
        let psis = GroupoidHom::enumerate(k, h).map_err(|e| e.to_string())?;
        for phi in phis.iter().filter(|p| p.is_fibrewise_bijective()) {
            for psi in &psis {
                if let Ok(c) = CoupleMorphism::new(phi.clone(), psi.clone()) {
                    if c.is_proper() && !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn faithfulness() -> Outcome {
    let c = catalog();
    let pair2 = c.groupoid("PAIR2").map_err(|e| e.to_string())?;
    let gz2 = c.groupoid("GZ2").map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (name, src) in [("PAIR2→PAIR2", &pair2), ("GZ2→PAIR2", &gz2)] {
        let couples = proper_couples(src, &pair2)?;
        ensure(!couples.is_empty(), || format!("{name}: no couples"))?;
        let clashes = faithfulness_experiment(&couples).map_err(|e| e.to_string())?;
        ensure(clashes.is_empty(), || {
            let (i, j) = clashes[0];
            format!("{name}: {:?} and {:?} share a matrix", couples[i].canon(), couples[j].canon())
        })?;
        parts.push(format!("{name} {}", couples.len()));
    }
    Ok(parts.join(", "))
}

fn indicator(n: usize, set: &PointSet) -> Vec<Scalar> {
    (0..n).map(|i| if set.contains(i) { Scalar::one() } else { Scalar::zero() }).collect()
}

fn structural_lemmas() -> Outcome {
    let c = catalog();
    let pool = Pool::from_catalog(&c, 0).map_err(|e| e.to_string())?;
    let err = |e: etale::Error| e.to_string();
    for g in pool.groupoids.iter().chain(pool.couples.iter().map(|k| k.k())) {
        ensure(g.topology().is_open(&g.unit_set()), || "G^(0) not open".into())?;
    }
    for (name, a) in c.actions() {
        ensure(transformation_groupoid(a).map_err(err)?.groupoid.is_etale(), || format!("{name}: TG not étale"))?;
    }
    for s in pool.semigroups.iter() {
        ensure(universal_groupoid(s).map_err(err)?.groupoid.is_etale(), || "Gu(S) not étale".into())?;
    }
    let mut pullbacks = 0;
    for (i, c1) in pool.couples.iter().enumerate() {
        for (j, c2) in pool.couples.iter().enumerate() {
            if pool.couple_ends[i].1 != pool.couple_ends[j].0 || (i * 31 + j) % 5 != 0 {
                continue;
            }
            let (psi1, phi2) = (c1.psi(), c2.phi());
            let pb = pullback(psi1, phi2).map_err(err)?;
            let k1 = c1.k();
            for m in 0u32..1 << k1.len() {
                let u: PointSet = (0..k1.len()).filter(|&x| m >> x & 1 == 1).collect();
                let lhs = phi2.preimage(&psi1.image(&u));
                let rhs = pb.psi_tilde.image(&pb.phi_tilde.preimage(&u));
                ensure(lhs == rhs, || format!("pull-back image identity, couples {i}, {j}"))?;
            }
            for u in open_bisections(k1).map_err(err)?.sets {
                let pre = pb.phi_tilde.preimage(&u);
                for x in 0..c2.k().len() {
                    let lhs: Vec<usize> = u.iter().filter(|&a| psi1.apply(a) == phi2.apply(x)).collect();
                    let rhs: Vec<usize> =
                        pre.iter().filter(|&k| pb.psi_tilde.apply(k) == x).map(|k| pb.phi_tilde.apply(k)).collect();
                    ensure(lhs.len() <= 1 && lhs == rhs, || format!("pull-back bisection identity, couples {i}, {j}"))?;
                }
            }
            if c1.is_proper() && c2.is_proper() {
                let lhs = sigma_phi(&pb.phi_tilde).and_then(|s| s.then(&pi_psi(&pb.psi_tilde)?)).map_err(err)?;
                let rhs = pi_psi(psi1).and_then(|p| p.then(&sigma_phi(phi2)?)).map_err(err)?;
                ensure(lhs.matrix == rhs.matrix, || format!("interchange, couples {i}, {j}"))?;
            }
            pullbacks += 1;
        }
    }
    let mut bisections = 0;
    for (i, k) in pool.couples.iter().enumerate().filter(|(_, k)| k.is_proper()) {
        let m = cstar_on_couple(k).map_err(err)?.matrix;
        let (g, h) = (k.source(), k.target());
        for u in open_bisections(g).map_err(err)?.sets {
            let image = k.psi().image(&k.phi().preimage(&u));
            ensure(m.apply(&indicator(g.len(), &u)) == indicator(h.len(), &image), || {
                format!("characteristic function identity, couple {i}, bisection {:?}", u.to_vec())
            })?;
            bisections += 1;
        }
    }
    ensure(pullbacks >= 100, || format!("only {pullbacks} pull-backs"))?;
    Ok(format!("{pullbacks} pull-backs, {bisections} bisection images"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Outcome); 8] = [
        ("paterson isomorphism", 5, paterson_isomorphism),
        ("paterson naturality", 5, paterson_naturality),
        ("adjunction", 10, adjunction),
        ("category and functor laws", 30, category_and_functor_laws),
        ("couple equivalence", 30, couple_equivalence),
        ("characters vs filters", 10, characters_vs_filters),
        ("C* faithfulness", 5, faithfulness),
        ("structural lemmas", 30, structural_lemmas),
    ];
    let mut failed = Vec::new();
    for (n, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("{detail}; over the {budget} s budget"))
            }
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("criterion {} {name}: {status} ({detail}; {:.2} s)", n + 1, elapsed.as_secs_f64());
        if outcome.is_err() {
            failed.push(n + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
