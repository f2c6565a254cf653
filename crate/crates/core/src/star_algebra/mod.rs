//! Exact finite-dimensional *-algebras: the semigroup algebra `ℂ[S]`, the
//! convolution algebra `Q(G)` of a discrete groupoid, the *-homomorphisms
//! between them, and the Paterson isomorphism `ℂ[S] ≅ Q(Gu(S))`.

mod matrix;
mod scalar;

pub use matrix::Matrix;
pub use scalar::Scalar;

use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::fault::Faults;
use crate::functors::{gu_on_hom_with, universal_groupoid_with, TransformationGroupoid};
use crate::groupoid::{CoupleMorphism, GroupoidHom, TopGroupoid};
use crate::laws::Counterexample;
use crate::semigroup::{InverseSemigroup, SemigroupHom};

/// A *-algebra given by structure constants on a basis, with `*` a basis
/// permutation composed with conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarAlgebra {
    labels: Vec<String>,
    products: Vec<Vec<(usize, Scalar)>>,
    star: Vec<usize>,
}

impl StarAlgebra {
    /// `products[a * dim + b]` is `e_a e_b` as a sparse vector. Checks
    /// associativity on basis triples, and that `*` is an involution with
    /// `(e_a e_b)* = e_b* e_a*`.
    pub fn new(labels: Vec<String>, products: Vec<Vec<(usize, Scalar)>>, star: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if products.len() != n * n || star.len() != n {
            return Err(Error::InvalidAlgebra("structure constants have the wrong shape".into()));
        }
        if products.iter().flatten().any(|(i, _)| *i >= n) || star.iter().any(|&s| s >= n) {
            return Err(Error::InvalidAlgebra("basis index out of range".into()));
        }
        let alg = Self { labels, products, star };
        for a in 0..n {
            if alg.star[alg.star[a]] != a {
                return Err(Error::InvalidAlgebra(format!("* is not involutive at {a}")));
            }
            for b in 0..n {
                let ab = alg.mul(&alg.basis(a), &alg.basis(b));
                let lhs = alg.star_vec(&ab);
                let rhs = alg.mul(&alg.basis(alg.star[b]), &alg.basis(alg.star[a]));
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!("* is not anti-multiplicative at ({a},{b})")));
                }
                for c in 0..n {
                    let left = alg.mul(&ab, &alg.basis(c));
                    let right = alg.mul(&alg.basis(a), &alg.mul(&alg.basis(b), &alg.basis(c)));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (a, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (c, k) in &self.products[a * n + b] {
                    out[*c] += &(&xy * k);
                }
            }
        }
        out
    }

    pub fn star_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, x) in v.iter().enumerate() {
            out[self.star[i]] = x.conj();
        }
        out
    }
}

/// A linear map between *-algebras, given by its matrix in the bases, that
/// preserves products and `*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarHom {
    pub source: Arc<StarAlgebra>,
    pub target: Arc<StarAlgebra>,
    pub matrix: Matrix,
}

impl StarHom {
    pub fn new(source: Arc<StarAlgebra>, target: Arc<StarAlgebra>, matrix: Matrix) -> Result<Self> {
        validate_star_hom(&source, &target, &matrix)?;
        Ok(Self { source, target, matrix })
    }

    /// Square with full rank.
    pub fn is_isomorphism(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.rank() == self.matrix.rows()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &StarHom) -> Result<StarHom> {
        if self.target != g.source {
            return Err(Error::EndpointMismatch("*-homomorphism composition".into()));
        }
        Ok(StarHom { source: self.source.clone(), target: g.target.clone(), matrix: g.matrix.mul(&self.matrix) })
    }
}

/// Checks `M(e_a e_b) = M(e_a) M(e_b)` and `M(e_a*) = M(e_a)*` on all basis
/// elements, naming the first failing pair.
pub fn validate_star_hom(source: &StarAlgebra, target: &StarAlgebra, m: &Matrix) -> Result<()> {
    if m.rows() != target.dim() || m.cols() != source.dim() {
        return Err(Error::NotStarHom("matrix has the wrong shape".into()));
    }
    let images: Vec<Vec<Scalar>> = (0..source.dim()).map(|a| m.column(a)).collect();
    for a in 0..source.dim() {
        if m.apply(&source.star_vec(&source.basis(a))) != target.star_vec(&images[a]) {
            return Err(Error::NotStarHom(format!("* not preserved at basis element {a}")));
        }
        for b in 0..source.dim() {
            let lhs = m.apply(&source.mul(&source.basis(a), &source.basis(b)));
            if lhs != target.mul(&images[a], &images[b]) {
                return Err(Error::NotStarHom(format!("product not preserved at basis pair ({a},{b})")));
            }
        }
    }
    Ok(())
}

/// `ℂ[S]` with `δ_s δ_t = δ_{st}` and `δ_s* = δ_{s*}`.
pub fn semigroup_algebra(s: &InverseSemigroup) -> Result<StarAlgebra> {
    let n = s.order();
    let products = (0..n * n).map(|i| vec![(s.mul(i / n, i % n), Scalar::one())]).collect();
    StarAlgebra::new((0..n).map(|i| format!("δ{i}")).collect(), products, (0..n).map(|i| s.star(i)).collect())
}

/// `Q(G)`: point masses on arrows with convolution `δ_a δ_b = δ_{ab}` when
/// composable and `0` otherwise, and `δ_a* = δ_{a⁻¹}`. The arrow space must
/// be discrete.
pub fn groupoid_algebra(g: &TopGroupoid) -> Result<StarAlgebra> {
    if !g.topology().is_discrete() {
        return Err(Error::NonDiscreteGroupoid);
    }
    let n = g.len();
    let products = (0..n * n)
        .map(|i| g.mul(i / n, i % n).map(|c| vec![(c, Scalar::one())]).unwrap_or_default())
        .collect();
    StarAlgebra::new((0..n).map(|i| format!("δ{i}")).collect(), products, (0..n).map(|a| g.inv(a)).collect())
}

fn indicator(n: usize, ones: impl IntoIterator<Item = usize>) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    for i in ones {
        v[i] = &v[i] + &Scalar::one();
    }
    v
}

/// `σ_θ: ℂ[S] → ℂ[T]`, `δ_s ↦ δ_{θ(s)}`.
pub fn sigma_theta(theta: &SemigroupHom) -> Result<StarHom> {
    let a = Arc::new(semigroup_algebra(theta.source())?);
    let b = Arc::new(semigroup_algebra(theta.target())?);
    let cols: Vec<_> = theta.map().iter().map(|&t| indicator(b.dim(), [t])).collect();
    let rows = b.dim();
    StarHom::new(a, b, Matrix::from_columns(rows, &cols))
}

/// Matrix of `f ↦ f∘φ` on point masses: `δ_g ↦ Σ_{φ(k)=g} δ_k`, without
/// checking the hypotheses on `φ`.
pub fn sigma_phi_matrix(phi: &GroupoidHom) -> Matrix {
    sigma_phi_matrix_with(phi, &Faults::NONE)
}

fn sigma_phi_matrix_with(phi: &GroupoidHom, faults: &Faults) -> Matrix {
    let (k, g) = (phi.source(), phi.target());
    let cols: Vec<_> = (0..g.len())
        .map(|a| {
            let pre = phi.preimage(&std::iter::once(a).collect());
            if faults.sigma_first_preimage_only {
                indicator(k.len(), pre.iter().take(1))
            } else {
                indicator(k.len(), pre.iter())
            }
        })
        .collect();
    Matrix::from_columns(k.len(), &cols)
}

/// `σ_φ: Q(G) → Q(K)` for a fibrewise bijective `φ: K → G` with proper unit
/// part.
pub fn sigma_phi(phi: &GroupoidHom) -> Result<StarHom> {
    sigma_phi_with(phi, &Faults::NONE)
}

pub(crate) fn sigma_phi_with(phi: &GroupoidHom, faults: &Faults) -> Result<StarHom> {
    if !phi.is_fibrewise_bijective() {
        return Err(Error::InvalidGroupoidHom("φ is not fibrewise bijective".into()));
    }
    if !phi.unit_part().is_proper() {
        return Err(Error::InvalidGroupoidHom("φ^(0) is not proper".into()));
    }
    let a = Arc::new(groupoid_algebra(phi.target())?);
    let b = Arc::new(groupoid_algebra(phi.source())?);
    StarHom::new(a, b, sigma_phi_matrix_with(phi, faults))
}

/// `π_ψ: Q(K) → Q(H)`, `δ_k ↦ δ_{ψ(k)}`, for `ψ` with `ψ^(0)` open and
/// injective.
pub fn pi_psi(psi: &GroupoidHom) -> Result<StarHom> {
    let u = psi.unit_part();
    if !u.is_injective() || !u.is_open_map() {
        return Err(Error::InvalidGroupoidHom("ψ^(0) is not open and injective".into()));
    }
    let a = Arc::new(groupoid_algebra(psi.source())?);
    let b = Arc::new(groupoid_algebra(psi.target())?);
    let cols: Vec<_> = psi.map().iter().map(|&h| indicator(b.dim(), [h])).collect();
    StarHom::new(a, b.clone(), Matrix::from_columns(b.dim(), &cols))
}

/// `C*[φ, ψ; K] = π_ψ ∘ σ_φ: Q(G) → Q(H)` for a proper couple.
pub fn cstar_on_couple(c: &CoupleMorphism) -> Result<StarHom> {
    cstar_on_couple_with(c, &Faults::NONE)
}

pub(crate) fn cstar_on_couple_with(c: &CoupleMorphism, faults: &Faults) -> Result<StarHom> {
    if !c.is_proper() {
        return Err(Error::InvalidCouple("couple is not proper".into()));
    }
    sigma_phi_with(c.phi(), faults)?.then(&pi_psi(c.psi())?)
}

/// The Paterson map `ι_S: ℂ[S] → Q(Gu(S))`, `δ_s ↦ χ_{[s, U_{s*s}]}`,
/// returned with the universal groupoid it lands in. Fails unless `ι_S` is
/// an invertible *-homomorphism.
pub fn paterson_iso(s: &Arc<InverseSemigroup>) -> Result<(StarHom, TransformationGroupoid)> {
    paterson_iso_with(s, &Faults::NONE)
}

pub(crate) fn paterson_iso_with(
    s: &Arc<InverseSemigroup>,
    faults: &Faults,
) -> Result<(StarHom, TransformationGroupoid)> {
    let gu = universal_groupoid_with(s, faults)?;
    let a = Arc::new(semigroup_algebra(s)?);
    let b = Arc::new(groupoid_algebra(&gu.groupoid)?);
    let cols: Vec<_> = (0..s.order())
        .map(|t| {
            let t = if faults.paterson_inverse_bisection { s.star(t) } else { t };
            let slice = gu.slice(t, &gu.action.domain(t)).expect("[s, U_s] is defined");
            indicator(b.dim(), slice.iter())
        })
        .collect();
    let hom = StarHom::new(a, b.clone(), Matrix::from_columns(b.dim(), &cols))?;
    if !hom.is_isomorphism() {
        return Err(Error::NotStarHom(format!(
            "Paterson map is {}×{} of rank {}",
            hom.matrix.rows(),
            hom.matrix.cols(),
            hom.matrix.rank()
        )));
    }
    Ok((hom, gu))
}

/// `ι_T ∘ σ_θ = C*(Gu(θ)) ∘ ι_S` for `θ: S → T`.
pub fn check_paterson_naturality(theta: &SemigroupHom) -> Result<Option<Counterexample>> {
    check_paterson_naturality_with(theta, &Faults::NONE)
}

pub(crate) fn check_paterson_naturality_with(
    theta: &SemigroupHom,
    faults: &Faults,
) -> Result<Option<Counterexample>> {
    let (is, _) = paterson_iso_with(theta.source(), faults)?;
    let (it, _) = paterson_iso_with(theta.target(), faults)?;
    let lhs = sigma_theta(theta)?.then(&it)?;
    let rhs = is.then(&cstar_on_couple_with(&gu_on_hom_with(theta, faults)?, faults)?)?;
    Ok((lhs.matrix != rhs.matrix).then(|| Counterexample {
        check: "paterson-naturality".into(),
        object: json!({"theta": theta.map()}),
        lhs: crate::json::matrix_to_json(&lhs.matrix),
        rhs: crate::json::matrix_to_json(&rhs.matrix),
    }))
}

/// Pairs `(i, j)` of couples with different `canon` but equal `C*` matrices.
/// Empty means the pool witnesses faithfulness.
pub fn faithfulness_experiment(pool: &[CoupleMorphism]) -> Result<Vec<(usize, usize)>> {
    let mats = pool.iter().map(|c| cstar_on_couple(c).map(|h| h.matrix)).collect::<Result<Vec<_>>>()?;
    let mut bad = Vec::new();
    for i in 0..pool.len() {
        for j in (i + 1)..pool.len() {
            if pool[i] != pool[j] && mats[i] == mats[j] {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}
