//! Law checking for the categories ISA and EG, the functors between them,
//! the adjunction `TG ⊣ SA` and Paterson naturality, plus the example
//! catalog and a small inverse semigroup enumerator.

mod catalog;
mod enumerate;
mod pool;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

pub use catalog::{catalog, try_catalog, Catalog, CatalogItem};
pub use enumerate::{canonical_table, enumerate_inverse_semigroups, permutations, relabel_table};
pub use pool::{chains, Pool};

use crate::error::Result;
use crate::fault::Faults;
use crate::functors::{
    check_counit_naturality_with, check_triangle_left_with, check_triangle_right_with,
    check_unit_naturality_with, gu_on_hom_with, tg_on_morphism_with, transformation_groupoid_with,
    universal_groupoid_with,
};
use crate::groupoid::{compose_couples_with, sa_on_couple_with, slice_action_with, CoupleMorphism};
use crate::json::{couple_summary, matrix_to_json, morphism_summary};
use crate::semigroup::{
    compose_action_morphisms_with, sp_hom_with, spectral_action_with, ActionMorphism, SemigroupHom,
};
use crate::star_algebra::{
    check_paterson_naturality_with, cstar_on_couple_with, groupoid_algebra, paterson_iso_with, Matrix,
};

/// A failed law instance. `object` locates the instance in the pool;
/// `lhs` and `rhs` are the two sides that should have agreed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub object: Value,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub seed: u64,
    pub instances: usize,
    pub failures: Vec<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Isa,
    Eg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functor {
    Sp,
    Tg,
    Sa,
    Cstar,
    Gu,
}

/// Structure mutations that each break one theorem. Used to show the
/// checkers are not vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Action morphism composition uses `ξ₂∘ξ₁`.
    IsaReversedXi,
    /// Couple composition uses the full product instead of the pullback.
    PullbackIgnoresMatching,
    /// The spectral action conjugates the wrong way round.
    SpectralConjugationReversed,
    /// Germ classes ignore the domain condition.
    ClassesIgnoreDomain,
    /// The slice action runs arrows backwards.
    SliceInverseDirection,
    /// `σ_φ` drops all but one preimage.
    SigmaFirstPreimageOnly,
    /// The counit picks arrows by range instead of domain.
    CounitByRange,
    /// The Paterson map uses the bisection of `s*`.
    PatersonInverseBisection,
}

impl Mutation {
    pub const ALL: [Mutation; 8] = [
        Mutation::IsaReversedXi,
        Mutation::PullbackIgnoresMatching,
        Mutation::SpectralConjugationReversed,
        Mutation::ClassesIgnoreDomain,
        Mutation::SliceInverseDirection,
        Mutation::SigmaFirstPreimageOnly,
        Mutation::CounitByRange,
        Mutation::PatersonInverseBisection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::IsaReversedXi => "isa-reversed-xi",
            Mutation::PullbackIgnoresMatching => "pullback-ignores-matching",
            Mutation::SpectralConjugationReversed => "spectral-conjugation-reversed",
            Mutation::ClassesIgnoreDomain => "classes-ignore-domain",
            Mutation::SliceInverseDirection => "slice-inverse-direction",
            Mutation::SigmaFirstPreimageOnly => "sigma-first-preimage-only",
            Mutation::CounitByRange => "counit-by-range",
            Mutation::PatersonInverseBisection => "paterson-inverse-bisection",
        }
    }

    /// The check this mutation is meant to break.
    pub fn target(self) -> Check {
        match self {
            Mutation::IsaReversedXi => Check::Category(Category::Isa),
            Mutation::PullbackIgnoresMatching => Check::Category(Category::Eg),
            Mutation::SpectralConjugationReversed => Check::Functor(Functor::Sp),
            Mutation::ClassesIgnoreDomain => Check::Functor(Functor::Tg),
            Mutation::SliceInverseDirection => Check::Functor(Functor::Sa),
            Mutation::SigmaFirstPreimageOnly => Check::Functor(Functor::Cstar),
            Mutation::CounitByRange => Check::Adjunction,
            Mutation::PatersonInverseBisection => Check::Paterson,
        }
    }

    pub(crate) fn faults(self) -> Faults {
        let mut f = Faults::NONE;
        match self {
            Mutation::IsaReversedXi => f.isa_reversed_xi = true,
            Mutation::PullbackIgnoresMatching => f.pullback_ignores_matching = true,
            Mutation::SpectralConjugationReversed => f.spectral_conjugation_reversed = true,
            Mutation::ClassesIgnoreDomain => f.classes_ignore_domain = true,
            Mutation::SliceInverseDirection => f.slice_inverse_direction = true,
            Mutation::SigmaFirstPreimageOnly => f.sigma_first_preimage_only = true,
            Mutation::CounitByRange => f.counit_by_range = true,
            Mutation::PatersonInverseBisection => f.paterson_inverse_bisection = true,
        }
        f
    }
}

/// A named check suite, as accepted by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Category(Category),
    Functor(Functor),
    Adjunction,
    Paterson,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Category(Category::Isa),
        Check::Category(Category::Eg),
        Check::Functor(Functor::Sp),
        Check::Functor(Functor::Tg),
        Check::Functor(Functor::Sa),
        Check::Functor(Functor::Cstar),
        Check::Functor(Functor::Gu),
        Check::Adjunction,
        Check::Paterson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Category(Category::Isa) => "category-isa",
            Check::Category(Category::Eg) => "category-eg",
            Check::Functor(Functor::Sp) => "functor-sp",
            Check::Functor(Functor::Tg) => "functor-tg",
            Check::Functor(Functor::Sa) => "functor-sa",
            Check::Functor(Functor::Cstar) => "functor-cstar",
            Check::Functor(Functor::Gu) => "functor-gu",
            Check::Adjunction => "adjunction",
            Check::Paterson => "paterson",
        }
    }

    pub fn run(self, pool: &Pool, mutation: Option<Mutation>) -> Result<CheckReport> {
        match self {
            Check::Category(c) => check_category(c, pool, mutation),
            Check::Functor(f) => check_functor(f, pool, mutation),
            Check::Adjunction => check_adjunction(pool, mutation),
            Check::Paterson => check_paterson(pool, mutation),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check \"{s}\""))
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Mutation::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown mutation \"{s}\""))
    }
}

/// Composable chains sampled per check.
const MAX_CHAINS: usize = 200;
/// Instances sampled for the naturality squares.
const MAX_NATURALITY: usize = 120;

/// Accumulates instances and failures. Construction errors other than guard
/// violations count as failures of the instance that raised them.
struct Run {
    check: &'static str,
    seed: u64,
    instances: usize,
    failures: Vec<Counterexample>,
}

impl Run {
    fn new(check: Check, pool: &Pool) -> Self {
        Run { check: check.name(), seed: pool.seed, instances: 0, failures: Vec::new() }
    }

    fn record(&mut self, object: Value, outcome: Result<Option<Counterexample>>) -> Result<()> {
        self.instances += 1;
        match outcome {
            Ok(None) => {}
            Ok(Some(mut c)) => {
                c.object = json!({"instance": object, "detail": c.object});
                self.failures.push(c);
            }
            Err(e) if e.is_guard() => return Err(e),
            Err(e) => self.failures.push(Counterexample {
                check: self.check.to_string(),
                object,
                lhs: json!({"error": e.to_string()}),
                rhs: Value::Null,
            }),
        }
        Ok(())
    }

    fn finish(mut self) -> CheckReport {
        self.failures.sort_by_cached_key(|c| serde_json::to_string(c).expect("serializes"));
        CheckReport { check: self.check.to_string(), seed: self.seed, instances: self.instances, failures: self.failures }
    }
}

fn compare<T: PartialEq>(law: &str, lhs: &T, rhs: &T, show: impl Fn(&T) -> Value) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample { check: law.to_string(), object: Value::Null, lhs: show(lhs), rhs: show(rhs) })
}

fn faults_of(m: Option<Mutation>) -> Faults {
    m.map(Mutation::faults).unwrap_or(Faults::NONE)
}

fn sampled_chains(ends: &[(usize, usize)], len: usize, pool: &Pool, salt: u64) -> Vec<Vec<usize>> {
    pool::sample_chains(ends, len, &|_| true, MAX_CHAINS, &mut pool::rng(pool.seed, salt))
}

/// Identity and associativity laws.
pub fn check_category(cat: Category, pool: &Pool, mutation: Option<Mutation>) -> Result<CheckReport> {
    let f = faults_of(mutation);
    let mut run = Run::new(Check::Category(cat), pool);
    match cat {
        Category::Isa => {
            let comp = |a: &ActionMorphism, b: &ActionMorphism| compose_action_morphisms_with(a, b, &f);
            for (i, m) in pool.morphisms.iter().enumerate() {
                let outcome = (|| {
                    let left = comp(&ActionMorphism::identity(m.target().clone()), m)?;
                    let right = comp(m, &ActionMorphism::identity(m.source().clone()))?;
                    Ok(compare("left-identity", &left, m, morphism_summary)
                        .or_else(|| compare("right-identity", &right, m, morphism_summary)))
                })();
                run.record(json!({"morphism": i}), outcome)?;
            }
            for c in sampled_chains(&pool.morphism_ends, 3, pool, 11) {
                let [m1, m2, m3] = [&pool.morphisms[c[0]], &pool.morphisms[c[1]], &pool.morphisms[c[2]]];
                let outcome = (|| {
                    let lhs = comp(m3, &comp(m2, m1)?)?;
                    let rhs = comp(&comp(m3, m2)?, m1)?;
                    Ok(compare("associativity", &lhs, &rhs, morphism_summary))
                })();
                run.record(json!({"morphisms": c}), outcome)?;
            }
        }
        Category::Eg => {
            let comp = |a: &CoupleMorphism, b: &CoupleMorphism| compose_couples_with(a, b, &f);
            for (i, k) in pool.couples.iter().enumerate() {
                let outcome = (|| {
                    let left = comp(&CoupleMorphism::identity(k.target().clone())?, k)?;
                    let right = comp(k, &CoupleMorphism::identity(k.source().clone())?)?;
                    Ok(compare("left-identity", &left, k, couple_summary)
                        .or_else(|| compare("right-identity", &right, k, couple_summary)))
                })();
                run.record(json!({"couple": i}), outcome)?;
            }
            for c in sampled_chains(&pool.couple_ends, 3, pool, 12) {
                let [k1, k2, k3] = [&pool.couples[c[0]], &pool.couples[c[1]], &pool.couples[c[2]]];
                let outcome = (|| {
                    let lhs = comp(k3, &comp(k2, k1)?)?;
                    let rhs = comp(&comp(k3, k2)?, k1)?;
                    Ok(compare("associativity", &lhs, &rhs, couple_summary))
                })();
                run.record(json!({"couples": c}), outcome)?;
            }
        }
    }
    Ok(run.finish())
}

/// Identity preservation on every object and composition preservation on
/// sampled composable pairs.
pub fn check_functor(func: Functor, pool: &Pool, mutation: Option<Mutation>) -> Result<CheckReport> {
    let f = &faults_of(mutation);
    let mut run = Run::new(Check::Functor(func), pool);
    let salt = 20 + func as u64;
    match func {
        Functor::Sp => {
            for (i, s) in pool.semigroups.iter().enumerate() {
                let outcome = (|| {
                    let lhs = sp_hom_with(&SemigroupHom::identity(s.clone()), f)?;
                    let rhs = ActionMorphism::identity(Arc::new(spectral_action_with(s, f)?));
                    Ok(compare("identity", &lhs, &rhs, morphism_summary))
                })();
                run.record(json!({"semigroup": i}), outcome)?;
            }
            for c in sampled_chains(&pool.hom_ends, 2, pool, salt) {
                let (t1, t2) = (&pool.homs[c[0]], &pool.homs[c[1]]);
                let outcome = (|| {
                    let lhs = sp_hom_with(&t1.then(t2)?, f)?;
                    let rhs = compose_action_morphisms_with(&sp_hom_with(t2, f)?, &sp_hom_with(t1, f)?, f)?;
                    Ok(compare("composition", &lhs, &rhs, morphism_summary))
                })();
                run.record(json!({"homs": c}), outcome)?;
            }
        }
        Functor::Gu => {
            for (i, s) in pool.semigroups.iter().enumerate() {
                let outcome = (|| {
                    let lhs = gu_on_hom_with(&SemigroupHom::identity(s.clone()), f)?;
                    let rhs = CoupleMorphism::identity(universal_groupoid_with(s, f)?.groupoid)?;
                    Ok(compare("identity", &lhs, &rhs, couple_summary))
                })();
                run.record(json!({"semigroup": i}), outcome)?;
            }
            for c in sampled_chains(&pool.hom_ends, 2, pool, salt) {
                let (t1, t2) = (&pool.homs[c[0]], &pool.homs[c[1]]);
                let outcome = (|| {
                    let lhs = gu_on_hom_with(&t1.then(t2)?, f)?;
                    let rhs = compose_couples_with(&gu_on_hom_with(t2, f)?, &gu_on_hom_with(t1, f)?, f)?;
                    Ok(compare("composition", &lhs, &rhs, couple_summary))
                })();
                run.record(json!({"homs": c}), outcome)?;
            }
        }
        Functor::Tg => {
            for (i, a) in pool.actions.iter().enumerate() {
                let outcome = (|| {
                    let lhs = tg_on_morphism_with(&ActionMorphism::identity(a.clone()), f)?;
                    let rhs = CoupleMorphism::identity(transformation_groupoid_with(a, f)?.groupoid)?;
                    Ok(compare("identity", &lhs, &rhs, couple_summary))
                })();
                run.record(json!({"action": i}), outcome)?;
            }
            for c in sampled_chains(&pool.morphism_ends, 2, pool, salt) {
                let (m1, m2) = (&pool.morphisms[c[0]], &pool.morphisms[c[1]]);
                let outcome = (|| {
                    let lhs = tg_on_morphism_with(&compose_action_morphisms_with(m2, m1, f)?, f)?;
                    let rhs = compose_couples_with(&tg_on_morphism_with(m2, f)?, &tg_on_morphism_with(m1, f)?, f)?;
                    Ok(compare("composition", &lhs, &rhs, couple_summary))
                })();
                run.record(json!({"morphisms": c}), outcome)?;
            }
        }
        Functor::Sa => {
            for (i, g) in pool.groupoids.iter().enumerate() {
                let outcome = (|| {
                    let lhs = sa_on_couple_with(&CoupleMorphism::identity(g.clone())?, f)?;
                    let rhs = ActionMorphism::identity(Arc::new(slice_action_with(g, f)?));
                    Ok(compare("identity", &lhs, &rhs, morphism_summary))
                })();
                run.record(json!({"groupoid": i}), outcome)?;
            }
            for c in sampled_chains(&pool.couple_ends, 2, pool, salt) {
                let (k1, k2) = (&pool.couples[c[0]], &pool.couples[c[1]]);
                let outcome = (|| {
                    let lhs = sa_on_couple_with(&compose_couples_with(k2, k1, f)?, f)?;
                    let rhs = compose_action_morphisms_with(&sa_on_couple_with(k2, f)?, &sa_on_couple_with(k1, f)?, f)?;
                    Ok(compare("composition", &lhs, &rhs, morphism_summary))
                })();
                run.record(json!({"couples": c}), outcome)?;
            }
        }
        Functor::Cstar => {
            let show = |m: &Matrix| matrix_to_json(m);
            for (i, g) in pool.groupoids.iter().enumerate() {
                let outcome = (|| {
                    let lhs = cstar_on_couple_with(&CoupleMorphism::identity(g.clone())?, f)?.matrix;
                    let rhs = Matrix::identity(groupoid_algebra(g)?.dim());
                    Ok(compare("identity", &lhs, &rhs, show))
                })();
                run.record(json!({"groupoid": i}), outcome)?;
            }
            let proper = |i: usize| pool.couples[i].is_proper();
            let mut r = pool::rng(pool.seed, salt);
            for c in pool::sample_chains(&pool.couple_ends, 2, &proper, MAX_CHAINS, &mut r) {
                let (k1, k2) = (&pool.couples[c[0]], &pool.couples[c[1]]);
                let outcome = (|| {
                    let lhs = cstar_on_couple_with(&compose_couples_with(k2, k1, f)?, f)?.matrix;
                    let rhs = cstar_on_couple_with(k1, f)?.then(&cstar_on_couple_with(k2, f)?)?.matrix;
                    Ok(compare("composition", &lhs, &rhs, show))
                })();
                run.record(json!({"couples": c}), outcome)?;
            }
        }
    }
    Ok(run.finish())
}

/// Both triangle identities on every pool action and groupoid, and both
/// naturality squares on sampled morphisms.
pub fn check_adjunction(pool: &Pool, mutation: Option<Mutation>) -> Result<CheckReport> {
    let f = &faults_of(mutation);
    let mut run = Run::new(Check::Adjunction, pool);
    for (i, a) in pool.actions.iter().enumerate() {
        run.record(json!({"action": i}), check_triangle_left_with(a, f))?;
    }
    for (i, g) in pool.groupoids.iter().enumerate() {
        run.record(json!({"groupoid": i}), check_triangle_right_with(g, f))?;
    }
    let mut r = pool::rng(pool.seed, 30);
    for i in pool::sample((0..pool.morphisms.len()).collect(), MAX_NATURALITY, &mut r) {
        run.record(json!({"morphism": i}), check_unit_naturality_with(&pool.morphisms[i], f))?;
    }
    for i in pool::sample((0..pool.couples.len()).collect(), MAX_NATURALITY, &mut r) {
        run.record(json!({"couple": i}), check_counit_naturality_with(&pool.couples[i], f))?;
    }
    Ok(run.finish())
}

/// `ι_S` is an invertible *-homomorphism with `dim Q(Gu(S)) = |S|` for every
/// pool semigroup, and the Paterson square commutes for every pool hom.
pub fn check_paterson(pool: &Pool, mutation: Option<Mutation>) -> Result<CheckReport> {
    let f = &faults_of(mutation);
    let mut run = Run::new(Check::Paterson, pool);
    for (i, s) in pool.semigroups.iter().enumerate() {
        let outcome = paterson_iso_with(s, f).map(|(iota, _)| {
            let dim = iota.matrix.rows();
            (dim != s.order()).then(|| Counterexample {
                check: "dimension".into(),
                object: Value::Null,
                lhs: json!(dim),
                rhs: json!(s.order()),
            })
        });
        run.record(json!({"semigroup": i}), outcome)?;
    }
    for (i, theta) in pool.homs.iter().enumerate() {
        run.record(json!({"hom": i}), check_paterson_naturality_with(theta, f))?;
    }
    Ok(run.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        for m in Mutation::ALL {
            assert_eq!(m.name().parse::<Mutation>().unwrap(), m);
        }
        assert!("category-xyz".parse::<Check>().is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = CheckReport { check: "adjunction".into(), seed: 7, instances: 3, failures: vec![] };
        assert_eq!(r.to_json(), json!({"check": "adjunction", "seed": 7, "instances": 3, "failures": []}));
    }
}
